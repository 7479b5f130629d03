//! The JSON schema shipped with the tool.

use serde_json::Value;

pub const SCHEMA: &str = include_str!("../schema/output.schema.json");

/// Names of the document definitions, one per command family.
pub const DOCUMENTS: [&str; 7] = ["complex", "components", "roots", "laurent", "adelic", "ray", "spherical"];

/// The shipped schema, optionally narrowed to one document definition.
pub fn schema(document: Option<&str>) -> Value {
    let mut value: Value = serde_json::from_str(SCHEMA).expect("shipped schema is valid JSON");
    if let Some(name) = document {
        let obj = value.as_object_mut().expect("schema is an object");
        obj.remove("anyOf");
        obj.insert("$ref".into(), Value::String(format!("#/$defs/{name}")));
    }
    value
}

/// The document definition each command emits.
pub fn document_for(command: &str) -> Option<&'static str> {
    Some(match command {
        "trop" => "complex",
        "components" => "components",
        "roots" => "roots",
        "laurent" => "laurent",
        "adelic" => "adelic",
        "ray" => "ray",
        "nonexp" => "spherical",
        _ => return None,
    })
}
