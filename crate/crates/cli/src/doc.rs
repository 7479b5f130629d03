//! JSON documents. Exact rationals are strings `"num/den"`; floating point
//! values only appear next to `"approx": true`.

use std::collections::BTreeMap;

use adelic_core::adelic::{AdelicAmoeba, RayReport, WitnessKind};
use adelic_core::archimedean::{is_phase_free, ArchRay};
use adelic_core::dynamics::{PartKind, SphericalSet};
use adelic_core::lift::RootValuations;
use adelic_core::polyhedron::{Cell, ParamInterval};
use adelic_core::tropical::ComplementComponent;
use adelic_core::{ExpVec, HPolyhedron, Place, Rational, Relation, TropicalHypersurface};
use num_traits::{Signed, Zero};
use serde::Serialize;

pub fn q(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn qs(v: &[Rational]) -> Vec<String> {
    v.iter().map(q).collect()
}

fn exps(v: &ExpVec) -> Vec<i64> {
    v.as_slice().to_vec()
}

#[derive(Debug, Serialize)]
pub struct ConstraintDoc {
    pub coeffs: Vec<String>,
    pub rhs: String,
}

/// `eq`: `coeffs·u = rhs`; `ineq`: `coeffs·u >= rhs`; `strict_ineq`: `coeffs·u > rhs`.
#[derive(Debug, Default, Serialize)]
pub struct SystemDoc {
    pub eq: Vec<ConstraintDoc>,
    pub ineq: Vec<ConstraintDoc>,
    pub strict_ineq: Vec<ConstraintDoc>,
}

impl SystemDoc {
    pub fn new(p: &HPolyhedron) -> Self {
        let mut out = SystemDoc::default();
        for c in p.constraints() {
            let doc = ConstraintDoc { coeffs: qs(c.coeffs()), rhs: q(c.rhs()) };
            match c.relation() {
                Relation::Eq => out.eq.push(doc),
                Relation::Ge => out.ineq.push(doc),
                Relation::Gt => out.strict_ineq.push(doc),
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CellDoc {
    pub dim: usize,
    pub label: Vec<Vec<i64>>,
    #[serde(flatten)]
    pub system: SystemDoc,
    /// Present when the cell is pointed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<String>>>,
}

impl CellDoc {
    pub fn new(c: &Cell) -> Self {
        let vrep = c.polyhedron.vertices_and_rays();
        CellDoc {
            dim: c.dim,
            label: c.label.iter().map(exps).collect(),
            system: SystemDoc::new(&c.polyhedron),
            vertices: vrep.as_ref().map(|v| v.vertices.iter().map(|p| qs(p)).collect()),
            rays: vrep.as_ref().map(|v| v.rays.iter().map(|p| qs(p)).collect()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ComplexDoc {
    pub place: String,
    pub sign: String,
    pub units: &'static str,
    pub ambient_dim: usize,
    pub special: String,
    pub cells: Vec<CellDoc>,
}

impl ComplexDoc {
    pub fn new(t: &TropicalHypersurface) -> Self {
        ComplexDoc {
            place: t.place().to_string(),
            sign: t.sign().to_string(),
            units: "valuation",
            ambient_dim: t.dim(),
            special: t.special().to_string(),
            cells: t.cells().iter().map(CellDoc::new).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ComponentDoc {
    pub label: Vec<i64>,
    pub lift: String,
    pub bounded: bool,
    pub region: SystemDoc,
}

#[derive(Debug, Serialize)]
pub struct ComponentsDoc {
    pub place: String,
    pub sign: &'static str,
    pub ambient_dim: usize,
    pub components: Vec<ComponentDoc>,
}

impl ComponentsDoc {
    pub fn new(place: Place, dim: usize, comps: &[ComplementComponent]) -> Self {
        ComponentsDoc {
            place: place.to_string(),
            sign: "tropical",
            ambient_dim: dim,
            components: comps
                .iter()
                .map(|c| ComponentDoc {
                    label: exps(&c.label),
                    lift: q(&c.lift),
                    bounded: c.bounded,
                    region: SystemDoc::new(&c.region),
                })
                .collect(),
        }
    }
}

/// `+1`, `-1/2`, `0`: the sign is always written for non-zero values.
pub fn signed_key(r: &Rational) -> String {
    if r.is_zero() {
        "0".into()
    } else if r.is_negative() {
        format!("{r}")
    } else {
        format!("+{r}")
    }
}

#[derive(Debug, Serialize)]
pub struct RootsDoc {
    pub place: String,
    pub degree: u64,
    pub valuations: BTreeMap<String, u64>,
}

impl RootsDoc {
    pub fn new(place: Place, roots: &RootValuations) -> Self {
        RootsDoc {
            place: place.to_string(),
            degree: roots.total_multiplicity(),
            valuations: roots.entries.iter().map(|(v, m)| (signed_key(v), *m)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TermDoc {
    pub exponent: Vec<i64>,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct LaurentDoc {
    pub vertex: Vec<i64>,
    pub bound: u64,
    pub coefficients: Vec<TermDoc>,
}

impl LaurentDoc {
    pub fn new(vertex: &ExpVec, bound: u64, coeffs: &BTreeMap<ExpVec, Rational>) -> Self {
        LaurentDoc {
            vertex: exps(vertex),
            bound,
            coefficients: coeffs.iter().map(|(e, v)| TermDoc { exponent: exps(e), value: q(v) }).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ArchSummary {
    pub phase_free: bool,
}

#[derive(Debug, Serialize)]
pub struct AdelicDoc {
    pub ambient_dim: usize,
    pub relevant_primes: Vec<u64>,
    pub parts: Vec<ComplexDoc>,
    pub archimedean: ArchSummary,
}

impl AdelicDoc {
    pub fn new(a: &AdelicAmoeba) -> adelic_core::Result<Self> {
        let mut parts = Vec::new();
        for place in a.places() {
            parts.push(ComplexDoc::new(&a.part_at(place)?));
        }
        Ok(AdelicDoc {
            ambient_dim: a.poly().dim(),
            relevant_primes: a.relevant_primes().iter().map(|p| p.get()).collect(),
            parts,
            archimedean: ArchSummary { phase_free: is_phase_free(a.poly()) },
        })
    }
}

#[derive(Debug, Serialize)]
pub struct IntervalDoc {
    pub lower: String,
    pub lower_strict: bool,
    pub upper: Option<String>,
    pub upper_strict: bool,
}

impl IntervalDoc {
    fn new(iv: &ParamInterval) -> Self {
        IntervalDoc {
            lower: q(&iv.lower),
            lower_strict: iv.lower_strict,
            upper: iv.upper.as_ref().map(|(u, _)| q(u)),
            upper_strict: iv.upper.as_ref().is_some_and(|(_, s)| *s),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum WitnessDoc {
    Exact { place: String, intervals: Vec<IntervalDoc> },
    Approx { place: String, t: f64, exact: bool, approx: bool },
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ArchRayDoc {
    Hit { t: f64, exact: bool, approx: bool },
    Miss { certificate: Vec<i64> },
    Unknown,
}

#[derive(Debug, Serialize)]
pub struct RayDoc {
    pub direction: Vec<String>,
    pub hit: bool,
    pub hypothesis_holds: bool,
    pub origin_excluded_at: Vec<String>,
    pub witnesses: Vec<WitnessDoc>,
    pub archimedean: ArchRayDoc,
}

impl RayDoc {
    pub fn new(r: &RayReport) -> Self {
        RayDoc {
            direction: qs(&r.direction),
            hit: r.hit,
            hypothesis_holds: r.hypothesis_holds(),
            origin_excluded_at: r.origin_excluded_at.iter().map(|p| p.to_string()).collect(),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| match &w.kind {
                    WitnessKind::Exact(ivs) => WitnessDoc::Exact {
                        place: w.place.to_string(),
                        intervals: ivs.iter().map(IntervalDoc::new).collect(),
                    },
                    WitnessKind::Archimedean { t, exact } => {
                        WitnessDoc::Approx { place: w.place.to_string(), t: *t, exact: *exact, approx: true }
                    }
                })
                .collect(),
            archimedean: match &r.archimedean {
                ArchRay::Hit { exact, t } => ArchRayDoc::Hit { t: *t, exact: *exact, approx: true },
                ArchRay::Miss { certificate } => ArchRayDoc::Miss { certificate: exps(certificate) },
                ArchRay::Unknown => ArchRayDoc::Unknown,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SampleDoc {
    pub direction: Vec<String>,
    pub t: f64,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum PartDoc {
    Cells { place: String, sign: String, cells: Vec<CellDoc> },
    Sampled { place: String, sign: String, approx: bool, samples: Vec<SampleDoc> },
}

#[derive(Debug, Serialize)]
pub struct MetadataDoc {
    pub prevariety: bool,
    pub torsion_free_assumed: bool,
}

#[derive(Debug, Serialize)]
pub struct SphericalDoc {
    pub kind: String,
    pub ambient_dim: usize,
    pub metadata: MetadataDoc,
    pub parts: Vec<PartDoc>,
}

impl SphericalDoc {
    pub fn new(s: &SphericalSet) -> Self {
        SphericalDoc {
            kind: s.metadata.kind.clone(),
            ambient_dim: s.dim,
            metadata: MetadataDoc {
                prevariety: s.metadata.prevariety,
                torsion_free_assumed: s.metadata.torsion_free_assumed,
            },
            parts: s
                .parts
                .iter()
                .map(|p| match &p.kind {
                    PartKind::Cells(cells) => PartDoc::Cells {
                        place: p.place.to_string(),
                        sign: p.sign.to_string(),
                        cells: cells.iter().map(CellDoc::new).collect(),
                    },
                    PartKind::Archimedean { samples, .. } => PartDoc::Sampled {
                        place: p.place.to_string(),
                        sign: p.sign.to_string(),
                        approx: true,
                        samples: samples
                            .iter()
                            .map(|s| SampleDoc { direction: qs(&s.direction), t: s.t })
                            .collect(),
                    },
                })
                .collect(),
        }
    }
}
