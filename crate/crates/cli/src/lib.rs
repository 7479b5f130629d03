//! Command-line front end for `adelic-core`.
//!
//! Every command prints one JSON document. Exact quantities are rational
//! strings `"num/den"`; archimedean quantities are floats marked
//! `"approx": true`. Exit codes: 0 success, 2 parse error, 3 invalid input,
//! 4 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use adelic_core::adelic::{adelic_amoeba, ray_meets};
use adelic_core::dynamics::{nonexpansive_set, sigma_invariant};
use adelic_core::lift::newton_polygon_roots;
use adelic_core::poly::parse_laurent;
use adelic_core::tropical::{complement_components, laurent_coefficients, tropical_hypersurface};
use adelic_core::{ExpVec, IdealPresentation, LaurentPoly, Place, Rational};
use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

pub mod args;
pub mod doc;
pub mod schema;
pub mod svg;

use args::{Cli, Command, JsonOutput, PolyInput};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] adelic_core::Error),
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use adelic_core::Error as E;
        match self {
            CliError::Syntax(_) => 2,
            CliError::Core(
                E::Parse(_)
                | E::UnknownVariable { .. }
                | E::ExponentOverflow { .. }
                | E::DuplicateVariable(_)
                | E::InvalidVariable(_),
            ) => 2,
            CliError::Core(E::Invariant(_)) | CliError::Json(_) => 4,
            CliError::Core(_) | CliError::Invalid(_) | CliError::Io { .. } => 3,
        }
    }
}

fn var_refs(vars: &[String]) -> Vec<&str> {
    vars.iter().map(|v| v.trim()).collect()
}

fn parse_poly(input: &PolyInput) -> Result<LaurentPoly, CliError> {
    Ok(parse_laurent(&input.poly, &var_refs(&input.vars))?)
}

fn parse_place(s: &str) -> Result<Place, CliError> {
    Ok(s.parse()?)
}

pub fn parse_rational_vector(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<Rational>().map_err(|_| CliError::Syntax(format!("`{x}` is not a rational number"))))
        .collect()
}

fn parse_int_vector(s: &str) -> Result<ExpVec, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Syntax(format!("`{x}` is not an integer"))))
        .collect::<Result<Vec<_>, _>>()
        .map(ExpVec::new)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit<T: Serialize>(doc: &T, json: &JsonOutput, out: &mut dyn Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    match &json.output {
        Some(path) => write_file(path, &text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Trop { input, place, sign, json } => {
            let f = parse_poly(&input)?;
            let t = tropical_hypersurface(&f, parse_place(&place)?, sign.into())?;
            emit(&doc::ComplexDoc::new(&t), &json, out)
        }
        Command::Components { input, place, json } => {
            let f = parse_poly(&input)?;
            let place = parse_place(&place)?;
            let comps = complement_components(&f, place)?;
            emit(&doc::ComponentsDoc::new(place, f.dim(), &comps), &json, out)
        }
        Command::Roots { input, place, json } => {
            let f = parse_poly(&input)?;
            let place = parse_place(&place)?;
            emit(&doc::RootsDoc::new(place, &newton_polygon_roots(&f, place)?), &json, out)
        }
        Command::Laurent { input, vertex, bound, json } => {
            let f = parse_poly(&input)?;
            let n = parse_int_vector(&vertex)?;
            let coeffs = laurent_coefficients(&f, &n, bound)?;
            emit(&doc::LaurentDoc::new(&n, bound, &coeffs), &json, out)
        }
        Command::Adelic { input, json } => {
            let f = parse_poly(&input)?;
            emit(&doc::AdelicDoc::new(&adelic_amoeba(&f)?)?, &json, out)
        }
        Command::Ray { input, dir, json } => {
            let f = parse_poly(&input)?;
            let v = parse_rational_vector(&dir)?;
            emit(&doc::RayDoc::new(&ray_meets(&f, &v)?), &json, out)
        }
        Command::Nonexp { gens, vars, sigma, svg, json } => {
            let names = var_refs(&vars);
            let polys = gens
                .split(';')
                .filter(|g| !g.trim().is_empty())
                .map(|g| parse_laurent(g, &names))
                .collect::<Result<Vec<_>, _>>()?;
            let ideal = IdealPresentation::new(polys)?;
            let set = if sigma { sigma_invariant(&ideal)? } else { nonexpansive_set(&ideal)? };
            if let Some(path) = svg {
                let title = format!("{} of <{}>", set.metadata.kind, gens.trim());
                write_file(&path, &svg::plot_spherical(&set, &title)?)?;
            }
            emit(&doc::SphericalDoc::new(&set), &json, out)
        }
        Command::Plot { input, places, sign, window, samples, tol, out: path } => {
            let f = parse_poly(&input)?;
            let places = places.iter().map(|p| parse_place(p)).collect::<Result<Vec<_>, _>>()?;
            let window: [f64; 4] = window
                .try_into()
                .map_err(|_| CliError::Syntax("--window takes four numbers".into()))?;
            let names = var_refs(&input.vars);
            let title = f.display(&names).to_string();
            write_file(&path, &svg::plot_planar(&f, &places, sign.into(), window, samples, tol, &title)?)
        }
    }
}

/// Runs one invocation and returns its exit code. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
