//! Tropical prevarieties of ideals and the spherical sets built from them:
//! the nonexpansive set of an algebraic `Z^d`-action and the complement of
//! its Bieri–Strebel invariant.
//!
//! A spherical set is stored as cells in `R^d`; a direction `v` belongs to it
//! when the open ray `(0,∞)·v` meets some cell (radial projection).

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::adelic::ARCH_TOL;
use crate::archimedean::common_ray_parameters;
use crate::poly::{IdealPresentation, LaurentPoly};
use crate::polyhedron::{Cell, CellComplex};
use crate::rational::{int, relevant_primes, Place, Rational};
use crate::tropical::{tropical_hypersurface, Sign, Special};
use crate::{Error, Result};

/// The intersection of the generators' tropical hypersurfaces at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prevariety {
    pub place: Place,
    pub complex: CellComplex,
    /// True with two or more generators: the set may strictly contain the
    /// tropical variety unless the generators form a tropical basis.
    pub superset: bool,
}

/// Cellwise intersection of the generators' tropical hypersurfaces (tropical sign).
///
/// A single generator gives its hypersurface unchanged. With several,
/// non-empty pairwise intersections are kept up to equality, labelled by the
/// union of the input labels, and only inclusion-maximal cells remain.
pub fn tropical_prevariety(gens: &IdealPresentation, place: Place) -> Result<Prevariety> {
    place.require_non_archimedean()?;
    let dim = gens.dim();
    let mut hypersurfaces = Vec::new();
    for g in gens.generators() {
        let t = tropical_hypersurface(g, place, Sign::Tropical)?;
        if t.special() == Special::Empty {
            return Ok(Prevariety { place, complex: CellComplex::empty(dim), superset: gens.generators().len() > 1 });
        }
        hypersurfaces.push(t);
    }
    let mut iter = hypersurfaces.into_iter();
    let first = iter.next().expect("at least one generator");
    let mut cells: Vec<Cell> = first.cells().to_vec();
    let superset = gens.generators().len() > 1;
    for t in iter {
        let mut next: Vec<Cell> = Vec::new();
        for a in &cells {
            for b in t.cells() {
                let polyhedron = a.polyhedron.intersect(&b.polyhedron)?;
                let d = polyhedron.dimension();
                if d < 0 {
                    continue;
                }
                let label = a.label.union(&b.label).cloned().collect();
                match next.iter_mut().find(|c| c.polyhedron.same_set(&polyhedron)) {
                    Some(existing) => existing.label.extend(label),
                    None => next.push(Cell { polyhedron, label, dim: d as usize }),
                }
            }
        }
        cells = next;
    }
    if superset {
        let keep: Vec<bool> = (0..cells.len())
            .map(|i| {
                !(0..cells.len()).any(|j| {
                    j != i && cells[j].dim > cells[i].dim && cells[i].polyhedron.is_subset_of(&cells[j].polyhedron)
                })
            })
            .collect();
        cells = cells.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    }
    let mut complex = CellComplex::new(dim, cells)?;
    complex.sort_canonical();
    Ok(Prevariety { place, complex, superset })
}

/// A sampled archimedean direction with a parameter where the ray meets the amoeba.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchSample {
    pub direction: Vec<Rational>,
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PartKind {
    Cells(Vec<Cell>),
    /// Decided numerically from the generators; `samples` lists member directions
    /// found on a fixed grid.
    Archimedean { generators: Vec<LaurentPoly>, samples: Vec<ArchSample> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SphericalPart {
    pub place: Place,
    pub sign: Sign,
    pub kind: PartKind,
}

impl SphericalPart {
    /// Whether the open ray through `v` meets this part.
    pub fn hits(&self, v: &[Rational]) -> Result<bool> {
        match &self.kind {
            PartKind::Cells(cells) => {
                for c in cells {
                    if c.polyhedron.ray_hits(v)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            PartKind::Archimedean { generators, .. } => {
                Ok(!common_ray_parameters(generators, v, ARCH_TOL)?.is_empty())
            }
        }
    }

    pub fn cells(&self) -> &[Cell] {
        match &self.kind {
            PartKind::Cells(cells) => cells,
            PartKind::Archimedean { .. } => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalMetadata {
    /// `"nonexpansive"` or `"sigma"`.
    pub kind: String,
    /// The cells come from a prevariety of several generators.
    pub prevariety: bool,
    /// The module is assumed torsion-free; this is not checked.
    pub torsion_free_assumed: bool,
}

/// A subset of the unit sphere given as the radial projection of cells.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalSet {
    pub dim: usize,
    pub parts: Vec<SphericalPart>,
    pub metadata: SphericalMetadata,
}

impl SphericalSet {
    fn check(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroDirection);
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        self.check(v)?;
        for part in &self.parts {
            if part.hits(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn witnessing_places(&self, v: &[Rational]) -> Result<Vec<Place>> {
        self.check(v)?;
        let mut out = Vec::new();
        for part in &self.parts {
            if part.hits(v)? {
                out.push(part.place);
            }
        }
        Ok(out)
    }

    pub fn part(&self, place: Place) -> Option<&SphericalPart> {
        self.parts.iter().find(|p| p.place == place)
    }
}

/// Primitive integer vectors on the surface of the cube `[-k, k]^d`.
pub fn cube_directions(dim: usize, k: i64) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    let side = (2 * k + 1) as usize;
    let total = side.pow(dim as u32);
    for idx in 0..total {
        let mut rem = idx;
        let v: Vec<i64> = (0..dim)
            .map(|_| {
                let c = (rem % side) as i64 - k;
                rem /= side;
                c
            })
            .collect();
        if v.iter().all(|c| c.abs() != k) {
            continue;
        }
        if v.iter().fold(0i64, |g, c| g.gcd(c)) != 1 {
            continue;
        }
        out.push(v.into_iter().map(int).collect());
    }
    out
}

fn cell_parts(gens: &IdealPresentation, sign: Sign) -> Result<Vec<SphericalPart>> {
    let primes = relevant_primes(&gens.all_coefficients())?;
    let places: Vec<Place> = primes.into_iter().map(Place::Finite).chain([Place::Generic]).collect();
    let mut parts = Vec::new();
    for place in places {
        let pre = tropical_prevariety(gens, place)?;
        let cells = pre
            .complex
            .cells()
            .iter()
            .map(|c| match sign {
                Sign::Tropical => c.clone(),
                Sign::Amoeba => Cell { polyhedron: c.polyhedron.negated(), label: c.label.clone(), dim: c.dim },
            })
            .collect();
        parts.push(SphericalPart { place, sign, kind: PartKind::Cells(cells) });
    }
    Ok(parts)
}

/// Half-width of the direction grid used for archimedean samples.
fn sample_radius(dim: usize) -> i64 {
    match dim {
        1 => 1,
        2 => 24,
        3 => 6,
        _ => 3,
    }
}

/// The nonexpansive set: radial projection of the adelic amoeba of the ideal.
///
/// The module is assumed torsion-free. With several generators the
/// non-archimedean parts are prevarieties and the archimedean part intersects
/// the generators' amoebas along each ray.
pub fn nonexpansive_set(gens: &IdealPresentation) -> Result<SphericalSet> {
    let mut parts = cell_parts(gens, Sign::Amoeba)?;
    let generators = gens.generators().to_vec();
    let mut samples = Vec::new();
    if !generators.iter().any(LaurentPoly::is_monomial) {
        for v in cube_directions(gens.dim(), sample_radius(gens.dim())) {
            let params = common_ray_parameters(&generators, &v, ARCH_TOL)?;
            if let Some(&(lo, hi)) = params.first() {
                let t = if hi.is_infinite() { lo.max(0.0) + 1.0 } else if lo <= 0.0 { hi / 2.0 } else { 0.5 * (lo + hi) };
                samples.push(ArchSample { direction: v, t });
            }
        }
    }
    parts.push(SphericalPart {
        place: Place::Archimedean,
        sign: Sign::Amoeba,
        kind: PartKind::Archimedean { generators, samples },
    });
    Ok(SphericalSet {
        dim: gens.dim(),
        parts,
        metadata: SphericalMetadata {
            kind: "nonexpansive".into(),
            prevariety: gens.generators().len() > 1,
            torsion_free_assumed: true,
        },
    })
}

/// The complement of the Bieri–Strebel invariant: radial projection of the
/// tropical varieties at the finite places.
pub fn sigma_invariant(gens: &IdealPresentation) -> Result<SphericalSet> {
    Ok(SphericalSet {
        dim: gens.dim(),
        parts: cell_parts(gens, Sign::Tropical)?,
        metadata: SphericalMetadata {
            kind: "sigma".into(),
            prevariety: gens.generators().len() > 1,
            torsion_free_assumed: true,
        },
    })
}

/// Primitive directions of the one-dimensional cones among the cells, for parts
/// made of cones at the origin.
pub fn cone_directions(cells: &[Cell]) -> Vec<Vec<Rational>> {
    let origin_only = |c: &Cell| {
        c.polyhedron
            .vertices_and_rays()
            .map(|v| v.vertices.iter().all(|p| p.iter().all(Zero::is_zero)))
            .unwrap_or(false)
    };
    let mut out: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for c in cells.iter().filter(|c| c.dim == 1 && origin_only(c)) {
        if let Some(v) = c.polyhedron.vertices_and_rays() {
            out.extend(v.rays);
        }
    }
    out.into_iter().collect()
}
