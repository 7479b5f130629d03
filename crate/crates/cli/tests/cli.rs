use adelic_cli::{run, schema};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("adelic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn assert_valid(command: &str, doc: &Value) {
    let validator = jsonschema::validator_for(&schema::schema(schema::document_for(command))).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{command}: {errors:?}");
    assert!(jsonschema::validator_for(&schema::schema(None)).unwrap().is_valid(doc));
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

const INVOCATIONS: &[(&str, &[&str])] = &[
    ("trop", &["trop", "--poly", "3+x+y", "--vars", "x,y", "--place", "3", "--sign", "amoeba"]),
    ("trop", &["trop", "--poly", "z-2", "--vars", "x,y,z", "--place", "generic"]),
    ("trop", &["trop", "--poly", "5*x", "--vars", "x,y", "--place", "5"]),
    ("trop", &["trop", "--poly", "0", "--vars", "x,y", "--place", "2"]),
    ("components", &["components", "--poly", "x+y+x^-1*y^-1+1/4", "--vars", "x,y", "--place", "2"]),
    ("roots", &["roots", "--poly", "x^2 - 10/3*x + 1", "--vars", "x", "--place", "3"]),
    ("laurent", &["laurent", "--poly", "3+x+y", "--vars", "x,y", "--vertex", "0,0", "--bound", "4"]),
    ("adelic", &["adelic", "--poly", "3+x+y-1/2*x*y", "--vars", "x,y"]),
    ("ray", &["ray", "--poly", "3+x+y", "--vars", "x,y", "--dir", "1,1"]),
    ("ray", &["ray", "--poly", "3+x+y", "--vars", "x,y", "--dir", "-2,-1"]),
    ("ray", &["ray", "--poly", "1+x+y+x*y", "--vars", "x,y", "--dir", "1,-1/3"]),
    ("nonexp", &["nonexp", "--gens", "1+x+y;z-2", "--vars", "x,y,z"]),
    ("nonexp", &["nonexp", "--gens", "3+x+y", "--vars", "x,y", "--sigma"]),
];

#[test]
fn every_document_matches_the_schema() {
    for (command, args) in INVOCATIONS {
        assert_valid(command, &json(args));
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for (_, args) in INVOCATIONS {
        let (_, a, _) = call(args);
        let (_, b, _) = call(args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn trop_reproduces_the_three_adic_fan() {
    let doc = json(INVOCATIONS[0].1);
    let cells = doc["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 4);
    assert_eq!(cells[0]["dim"], 0);
    assert_eq!(strings(&cells[0]["vertices"][0]), ["-1/1", "-1/1"]);
    let mut rays: Vec<Vec<String>> = cells[1..]
        .iter()
        .map(|c| {
            assert_eq!(strings(&c["vertices"][0]), ["-1/1", "-1/1"]);
            strings(&c["rays"][0])
        })
        .collect();
    rays.sort();
    assert_eq!(rays, [["-1/1", "0/1"], ["0/1", "-1/1"], ["1/1", "1/1"]]);
}

#[test]
fn special_hypersurfaces() {
    assert_eq!(json(INVOCATIONS[2].1)["special"], "empty");
    let whole = json(INVOCATIONS[3].1);
    assert_eq!(whole["special"], "whole_space");
    assert!(whole["cells"].as_array().unwrap().is_empty());
}

#[test]
fn roots_and_laurent() {
    let roots = json(INVOCATIONS[5].1);
    assert_eq!(roots["valuations"], serde_json::json!({"+1": 1, "-1": 1}));
    let laurent = json(INVOCATIONS[6].1);
    let xy = laurent["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["exponent"] == serde_json::json!([1, 1]))
        .unwrap();
    assert_eq!(xy["value"], "2/27");
}

#[test]
fn ray_witnesses() {
    let diag = json(INVOCATIONS[8].1);
    assert_eq!(diag["hit"], true);
    let places: Vec<&str> = diag["witnesses"].as_array().unwrap().iter().map(|w| w["place"].as_str().unwrap()).collect();
    assert_eq!(places, ["3", "generic", "arch"]);
    let third = json(INVOCATIONS[9].1);
    assert_eq!(third["witnesses"].as_array().unwrap().len(), 1);
    assert_eq!(third["witnesses"][0]["place"], "3");
    assert_eq!(third["archimedean"]["status"], "miss");
}

#[test]
fn nonexp_metadata_and_parts() {
    let doc = json(INVOCATIONS[11].1);
    assert_eq!(doc["metadata"]["prevariety"], true);
    assert_eq!(doc["metadata"]["torsion_free_assumed"], true);
    let places: Vec<&str> = doc["parts"].as_array().unwrap().iter().map(|p| p["place"].as_str().unwrap()).collect();
    assert_eq!(places, ["2", "generic", "arch"]);
    assert_eq!(doc["parts"][2]["approx"], true);
    let sigma = json(INVOCATIONS[12].1);
    assert_eq!(sigma["kind"], "sigma");
    assert!(sigma["parts"].as_array().unwrap().iter().all(|p| p["place"] != "arch"));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["trop", "--poly", "3+*x", "--vars", "x", "--place", "3"]).0, 2);
    assert_eq!(call(&["trop", "--poly", "3+w", "--vars", "x", "--place", "3"]).0, 2);
    assert_eq!(call(&["trop", "--poly", "3+x", "--vars", "x,x", "--place", "3"]).0, 2);
    assert_eq!(call(&["trop", "--poly", "3+x"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["ray", "--poly", "3+x+y", "--vars", "x,y", "--dir", "1,a"]).0, 2);
    assert_eq!(call(&["trop", "--poly", "3+x", "--vars", "x", "--place", "6"]).0, 3);
    assert_eq!(call(&["trop", "--poly", "3+x", "--vars", "x", "--place", "arch"]).0, 3);
    assert_eq!(call(&["trop", "--poly", "3+x", "--vars", "x", "--place", "p"]).0, 3);
    assert_eq!(call(&["components", "--poly", "0", "--vars", "x", "--place", "3"]).0, 3);
    assert_eq!(call(&["ray", "--poly", "3+x+y", "--vars", "x,y", "--dir", "0,0"]).0, 3);
    assert_eq!(call(&["ray", "--poly", "3+x+y", "--vars", "x,y", "--dir", "1,1,1"]).0, 3);
    assert_eq!(call(&["roots", "--poly", "3+x+y", "--vars", "x,y", "--place", "3"]).0, 3);
    assert_eq!(call(&["laurent", "--poly", "3+x+y+x*y", "--vars", "x,y", "--vertex", "1,0", "--bound", "2"]).0, 0);
    assert_eq!(call(&["laurent", "--poly", "1+x+y+1/4*x*y", "--vars", "x,y", "--vertex", "3,3", "--bound", "2"]).0, 3);
    assert_eq!(call(&["nonexp", "--gens", "", "--vars", "x"]).0, 3);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("trop"));
}

#[test]
fn output_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trop.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["trop", "--poly", "1+x", "--vars", "x", "--place", "generic", "-o", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid("trop", &doc);
    assert_eq!(strings(&doc["cells"][0]["vertices"][0]), ["0/1"]);
}

fn parse_svg(path: &std::path::Path) -> String {
    let text = std::fs::read_to_string(path).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    text
}

#[test]
fn plots_are_well_formed_svg() {
    let dir = tempfile::tempdir().unwrap();
    let planar = dir.path().join("fig.svg");
    let args = [
        "plot", "--poly", "3+x+y", "--vars", "x,y", "--places", "3,generic,arch", "--window", "-4", "4", "-4", "4",
        "--samples", "40", "--out", planar.to_str().unwrap(),
    ];
    assert_eq!(call(&args).0, 0);
    let text = parse_svg(&planar);
    assert!(text.contains("#999999") && text.contains("#000000"));
    assert!(text.contains("log units"));
    assert_eq!(call(&args).0, 0);
    assert_eq!(text, parse_svg(&planar));

    let fan = dir.path().join("fan.svg");
    let args = ["plot", "--poly", "1+x+y+1/4*x*y", "--vars", "x,y", "--places", "2", "--out", fan.to_str().unwrap()];
    assert_eq!(call(&args).0, 0);
    assert!(parse_svg(&fan).contains("valuation units"));

    let sphere = dir.path().join("helmet.svg");
    let args = ["nonexp", "--gens", "1+x+y;z-2", "--vars", "x,y,z", "--svg", sphere.to_str().unwrap()];
    assert_eq!(call(&args).0, 0);
    assert!(parse_svg(&sphere).contains("hemisphere"));

    let circle = dir.path().join("circle.svg");
    let args = ["nonexp", "--gens", "3+x+y", "--vars", "x,y", "--sigma", "--svg", circle.to_str().unwrap()];
    assert_eq!(call(&args).0, 0);
    parse_svg(&circle);

    let bad = dir.path().join("bad.svg");
    assert_eq!(call(&["plot", "--poly", "1+x", "--vars", "x", "--out", bad.to_str().unwrap()]).0, 3);
    let args = ["plot", "--poly", "1+x+y", "--vars", "x,y", "--window", "1", "0", "0", "1", "--out", bad.to_str().unwrap()];
    assert_eq!(call(&args).0, 3);
}
