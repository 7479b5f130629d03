//! Adelic amoebas: the union over all places of Q.
//!
//! Only the primes dividing some coefficient (numerator or denominator) give
//! an amoeba different from the generic one, so the union is finite: one
//! part per relevant prime, the generic part, and the archimedean amoeba,
//! which is queried on demand.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::archimedean::{arch_membership, arch_ray, ArchRay, ArchVerdict};
use crate::poly::LaurentPoly;
use crate::polyhedron::ParamInterval;
use crate::rational::{relevant_primes, Place, Prime, Rational};
use crate::tropical::{tropical_hypersurface, Sign, TropicalHypersurface};
use crate::{Error, Result};

/// Relative tolerance used for archimedean queries.
pub const ARCH_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdelicAmoeba {
    poly: LaurentPoly,
    relevant_primes: Vec<Prime>,
    finite_parts: BTreeMap<Prime, TropicalHypersurface>,
    generic_part: TropicalHypersurface,
}

impl AdelicAmoeba {
    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn relevant_primes(&self) -> &[Prime] {
        &self.relevant_primes
    }

    pub fn finite_parts(&self) -> &BTreeMap<Prime, TropicalHypersurface> {
        &self.finite_parts
    }

    pub fn generic_part(&self) -> &TropicalHypersurface {
        &self.generic_part
    }

    /// The amoeba at a non-archimedean place. Primes outside the relevant set
    /// share the generic part.
    pub fn part_at(&self, place: Place) -> Result<TropicalHypersurface> {
        match place {
            Place::Archimedean => Err(Error::ArchimedeanPlace),
            Place::Generic => Ok(self.generic_part.clone()),
            Place::Finite(p) => Ok(match self.finite_parts.get(&p) {
                Some(part) => part.clone(),
                None => self.generic_part.clone().at_place(place),
            }),
        }
    }

    /// The stored non-archimedean places: relevant primes, then generic.
    pub fn places(&self) -> Vec<Place> {
        self.relevant_primes.iter().map(|&p| Place::Finite(p)).chain([Place::Generic]).collect()
    }
}

pub fn adelic_amoeba(f: &LaurentPoly) -> Result<AdelicAmoeba> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let primes = relevant_primes(&f.coefficients())?;
    let mut finite_parts = BTreeMap::new();
    for &p in &primes {
        finite_parts.insert(p, tropical_hypersurface(f, Place::Finite(p), Sign::Amoeba)?);
    }
    Ok(AdelicAmoeba {
        poly: f.clone(),
        relevant_primes: primes,
        finite_parts,
        generic_part: tropical_hypersurface(f, Place::Generic, Sign::Amoeba)?,
    })
}

/// How a place meets the ray.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessKind {
    /// Exact parameter intervals, one per cell hit.
    Exact(Vec<ParamInterval>),
    /// A parameter from the archimedean test; `exact` is true when the hit was decided exactly.
    Archimedean { t: f64, exact: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub place: Place,
    pub kind: WitnessKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayReport {
    pub direction: Vec<Rational>,
    pub hit: bool,
    pub witnesses: Vec<Witness>,
    /// The archimedean outcome, including misses and unknowns.
    pub archimedean: ArchRay,
    /// Places whose amoeba does not contain the origin.
    pub origin_excluded_at: Vec<Place>,
}

impl RayReport {
    /// Whether the origin is outside the amoeba at some place.
    pub fn hypothesis_holds(&self) -> bool {
        !self.origin_excluded_at.is_empty()
    }

    pub fn witness_places(&self) -> Vec<Place> {
        self.witnesses.iter().map(|w| w.place).collect()
    }
}

/// Which places' amoebas meet the open ray `(0,∞)·v`.
pub fn ray_meets(f: &LaurentPoly, v: &[Rational]) -> Result<RayReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_monomial() {
        return Err(Error::Monomial);
    }
    if v.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: v.len() });
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroDirection);
    }
    let amoeba = adelic_amoeba(f)?;
    ray_meets_amoeba(&amoeba, v)
}

pub fn ray_meets_amoeba(amoeba: &AdelicAmoeba, v: &[Rational]) -> Result<RayReport> {
    let f = &amoeba.poly;
    let origin = alloc::vec![Rational::zero(); f.dim()];
    let mut witnesses = Vec::new();
    let mut origin_excluded_at = Vec::new();
    for place in amoeba.places() {
        let part = amoeba.part_at(place)?;
        if !part.contains(&origin) {
            origin_excluded_at.push(place);
        }
        let mut intervals = Vec::new();
        for cell in part.cells() {
            if let Some(iv) = cell.polyhedron.ray_interval(v)? {
                intervals.push(iv);
            }
        }
        if !intervals.is_empty() {
            witnesses.push(Witness { place, kind: WitnessKind::Exact(intervals) });
        }
    }
    if let ArchVerdict::NotInAmoeba { .. } = arch_membership(f, &alloc::vec![0.0; f.dim()], ARCH_TOL)? {
        origin_excluded_at.push(Place::Archimedean);
    }
    let archimedean = arch_ray(f, v, ARCH_TOL)?;
    if let ArchRay::Hit { t, exact } = archimedean {
        witnesses.push(Witness { place: Place::Archimedean, kind: WitnessKind::Archimedean { t, exact } });
    }
    Ok(RayReport { direction: v.to_vec(), hit: !witnesses.is_empty(), witnesses, archimedean, origin_excluded_at })
}
