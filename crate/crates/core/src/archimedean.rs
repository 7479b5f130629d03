//! The archimedean amoeba `Log|V(f)|`, in floating point.
//!
//! With `t_n = |a_n| e^{u·n}`, a point `u` is outside the amoeba whenever one
//! `t_n` exceeds the sum of the others (lopsidedness). When the differences
//! of the support are independent and span a saturated lattice the monomial
//! phases can be chosen freely, and then the converse holds too: `u` is in the
//! amoeba iff no term dominates. Along a ray this gives an exact rational
//! test, see [`arch_ray`].
//!
//! Nothing here feeds back into the exact modules.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::{Signed, Zero};

use crate::linalg::{rank, spans_saturated_lattice};
use crate::poly::{newton_polytope, ExpVec, LaurentPoly};
use crate::polyhedron::{HPolyhedron, LinearConstraint};
use crate::rational::{ln_abs, rational_to_f64, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArchVerdict {
    /// `exact` is false when the verdict rests on a numerically found zero.
    InAmoeba { exact: bool },
    /// The certificate term dominates all others at the point.
    NotInAmoeba { certificate: ExpVec },
    Unknown,
}

fn check_input(f: &LaurentPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_monomial() {
        return Err(Error::Monomial);
    }
    Ok(())
}

/// Whether the support differences are linearly independent and span a saturated lattice.
pub fn is_phase_free(f: &LaurentPoly) -> bool {
    let support = f.support();
    let Some(first) = support.first() else {
        return true;
    };
    let diffs: Vec<Vec<i64>> = support[1..]
        .iter()
        .map(|n| n.as_slice().iter().zip(first.as_slice()).map(|(a, b)| a - b).collect())
        .collect();
    let rows: Vec<Vec<Rational>> =
        diffs.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    rank(&rows, f.dim()) == diffs.len() && spans_saturated_lattice(&diffs, f.dim())
}

/// `ln t_n` for every term.
fn log_terms(f: &LaurentPoly, u: &[f64]) -> Vec<(ExpVec, f64)> {
    f.terms().map(|(n, a)| (n.clone(), ln_abs(a) + n.dot_f64(u))).collect()
}

/// Terms scaled so that the largest is 1.
fn normalized_terms(f: &LaurentPoly, u: &[f64]) -> Vec<(ExpVec, f64)> {
    let logs = log_terms(f, u);
    let max = logs.iter().map(|(_, l)| *l).fold(f64::NEG_INFINITY, f64::max);
    logs.into_iter().map(|(n, l)| (n, libm::exp(l - max))).collect()
}

/// The term exceeding the sum of the others by more than `margin` (relative to the largest term).
fn dominant(terms: &[(ExpVec, f64)], margin: f64) -> Option<ExpVec> {
    let total: f64 = terms.iter().map(|(_, t)| t).sum();
    terms.iter().find(|(_, t)| *t > (total - t) + margin).map(|(n, _)| n.clone())
}

/// `|f(z)|` divided by the largest term, for `z_j = e^{u_j + i θ_j}`.
fn relative_modulus(f: &LaurentPoly, u: &[f64], theta: &[f64]) -> f64 {
    let logs = log_terms(f, u);
    let max = logs.iter().map(|(_, l)| *l).fold(f64::NEG_INFINITY, f64::max);
    let (mut re, mut im) = (0.0, 0.0);
    for ((n, l), (_, a)) in logs.iter().zip(f.terms()) {
        let modulus = libm::exp(l - max);
        let phase = n.dot_f64(theta) + if a.is_negative() { PI } else { 0.0 };
        re += modulus * libm::cos(phase);
        im += modulus * libm::sin(phase);
    }
    libm::sqrt(re * re + im * im)
}

/// Searches the torus fibre over `u` for a point with small `|f|`.
fn torus_search(f: &LaurentPoly, u: &[f64]) -> (f64, Vec<f64>) {
    let d = f.dim();
    let per_axis: usize = match d {
        1 => 256,
        2 => 48,
        3 => 16,
        _ => 8,
    };
    let mut best = (f64::INFINITY, vec![0.0; d]);
    let mut idx = vec![0usize; d];
    'grid: loop {
        let theta: Vec<f64> = idx.iter().map(|&k| 2.0 * PI * k as f64 / per_axis as f64).collect();
        let m = relative_modulus(f, u, &theta);
        if m < best.0 {
            best = (m, theta);
        }
        for j in 0..d {
            idx[j] += 1;
            if idx[j] < per_axis {
                continue 'grid;
            }
            idx[j] = 0;
        }
        break;
    }
    // coordinate descent with a shrinking step
    let mut step = 2.0 * PI / per_axis as f64;
    while step > 1e-12 {
        let mut improved = false;
        for j in 0..d {
            for sgn in [1.0, -1.0] {
                let mut trial = best.1.clone();
                trial[j] += sgn * step;
                let m = relative_modulus(f, u, &trial);
                if m < best.0 {
                    best = (m, trial);
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Decides whether `u` lies in the archimedean amoeba of `f`.
///
/// `tol` is relative to the largest term `|a_n| e^{u·n}`.
pub fn arch_membership(f: &LaurentPoly, u: &[f64], tol: f64) -> Result<ArchVerdict> {
    check_input(f)?;
    if u.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: u.len() });
    }
    let terms = normalized_terms(f, u);
    if let Some(n) = dominant(&terms, tol) {
        return Ok(ArchVerdict::NotInAmoeba { certificate: n });
    }
    if is_phase_free(f) {
        return Ok(match dominant(&terms, 0.0) {
            Some(n) => ArchVerdict::NotInAmoeba { certificate: n },
            None => ArchVerdict::InAmoeba { exact: true },
        });
    }
    let (m, _) = torus_search(f, u);
    Ok(if m < tol { ArchVerdict::InAmoeba { exact: false } } else { ArchVerdict::Unknown })
}

/// The open normal cone `D_n = {u : u·n > u·w for all other support points w}` at
/// each vertex `n` of `N(f)`.
pub fn arch_tentacle_directions(f: &LaurentPoly) -> Result<Vec<(ExpVec, HPolyhedron)>> {
    check_input(f)?;
    let support = f.support();
    newton_polytope(f)?
        .into_iter()
        .map(|n| {
            let constraints = support
                .iter()
                .filter(|w| **w != n)
                .map(|w| {
                    let diff = n
                        .as_slice()
                        .iter()
                        .zip(w.as_slice())
                        .map(|(a, b)| Rational::from_integer((a - b).into()))
                        .collect();
                    LinearConstraint::gt(diff, Rational::zero())
                })
                .collect();
            Ok((n, HPolyhedron::new(f.dim(), constraints)?.remove_redundant()))
        })
        .collect()
}

/// Outcome of intersecting an open ray with the archimedean amoeba.
#[derive(Clone, Debug, PartialEq)]
pub enum ArchRay {
    /// `t` is a parameter at which `t·v` lies in the amoeba (up to rounding);
    /// `exact` means the hit itself is decided exactly.
    Hit { exact: bool, t: f64 },
    /// The certificate term dominates on the whole open ray.
    Miss { certificate: ExpVec },
    Unknown,
}

impl ArchRay {
    pub fn is_hit(&self) -> bool {
        matches!(self, ArchRay::Hit { .. })
    }
}

/// An exact rational certificate that the term `n` dominates for every `t > 0`.
///
/// This holds iff `v·(m - n) <= 0` for all `m` and either `Σ_{m≠n} |a_m| < |a_n|`,
/// or equality holds and some `v·(m - n) < 0`.
pub fn ray_miss_certificate(f: &LaurentPoly, v: &[Rational]) -> Option<ExpVec> {
    for (n, a_n) in f.terms() {
        let mut rest = Rational::zero();
        let mut strictly_decaying = false;
        let mut bounded = true;
        for (m, a_m) in f.terms() {
            if m == n {
                continue;
            }
            let slope: Rational = m
                .as_slice()
                .iter()
                .zip(n.as_slice())
                .zip(v)
                .map(|((a, b), x)| x * Rational::from_integer((a - b).into()))
                .sum();
            if slope.is_positive() {
                bounded = false;
                break;
            }
            strictly_decaying |= slope.is_negative();
            rest += a_m.abs();
        }
        if !bounded {
            continue;
        }
        let a = a_n.abs();
        if rest < a || (rest == a && strictly_decaying) {
            return Some(n.clone());
        }
    }
    None
}

/// `ln φ_n(t) = ln Σ_{m≠n} |a_m/a_n| e^{t·s_m}`; the term `n` dominates iff this is negative.
struct Dominance {
    offsets: Vec<f64>,
    slopes: Vec<f64>,
}

impl Dominance {
    fn eval(&self, t: f64) -> f64 {
        let vals: Vec<f64> = self.offsets.iter().zip(&self.slopes).map(|(o, s)| o + s * t).collect();
        let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        max + libm::log(vals.iter().map(|x| libm::exp(x - max)).sum::<f64>())
    }

    /// The open interval of `t ∈ (0, T]` where the term dominates, if any.
    /// Convexity of `ln φ_n` makes the set an interval.
    fn interval(&self, horizon: f64) -> Option<(f64, f64)> {
        let (mut a, mut b) = (0.0, horizon);
        let g = (libm::sqrt(5.0) - 1.0) / 2.0;
        for _ in 0..200 {
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            if self.eval(c) < self.eval(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let tmin = 0.5 * (a + b);
        let candidates = [0.0, tmin, horizon];
        let (tmin, fmin) = candidates
            .iter()
            .map(|&t| (t, self.eval(t)))
            .fold((0.0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        if fmin >= 0.0 {
            return None;
        }
        let root = |mut inside: f64, mut outside: f64| {
            for _ in 0..200 {
                let mid = 0.5 * (inside + outside);
                if self.eval(mid) < 0.0 {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            0.5 * (inside + outside)
        };
        let lo = if self.eval(0.0) < 0.0 { 0.0 } else { root(tmin, 0.0) };
        let hi = if self.eval(horizon) < 0.0 { f64::INFINITY } else { root(tmin, horizon) };
        Some((lo, hi))
    }
}

/// Parameter horizon for the numeric interval search along a ray.
const HORIZON: f64 = 1.0e4;

/// Closed sub-intervals of `(0, HORIZON]` where no term dominates along `t·v`.
///
/// The complement of finitely many disjoint open dominance intervals. A gap
/// that closes up to rounding is reported as a single point.
pub fn non_dominated_intervals(f: &LaurentPoly, v: &[Rational]) -> Result<Vec<(f64, f64)>> {
    check_input(f)?;
    if v.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: v.len() });
    }
    let vf: Vec<f64> = v.iter().map(rational_to_f64).collect();
    let terms: Vec<(&ExpVec, f64, f64)> = f.terms().map(|(n, a)| (n, ln_abs(a), n.dot_f64(&vf))).collect();
    let mut dominated: Vec<(f64, f64)> = Vec::new();
    for (i, (_, ln_a, s)) in terms.iter().enumerate() {
        let dom = Dominance {
            offsets: terms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, (_, b, _))| b - ln_a).collect(),
            slopes: terms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, (_, _, r))| r - s).collect(),
        };
        if let Some(iv) = dom.interval(HORIZON) {
            dominated.push(iv);
        }
    }
    dominated.sort_by(|a, b| a.0.total_cmp(&b.0));
    // The dominance intervals are open and pairwise disjoint; sweep their complement.
    let mut gaps = Vec::new();
    let mut cursor = 0.0f64;
    for (lo, hi) in dominated {
        if lo > cursor + 1e-12 {
            gaps.push((cursor, lo));
        } else if cursor > 0.0 {
            // touching up to rounding: the shared endpoint is not dominated
            gaps.push((cursor, cursor));
        }
        cursor = cursor.max(hi);
    }
    if cursor.is_finite() {
        gaps.push((cursor, f64::INFINITY));
    }
    Ok(gaps)
}

fn sample_point(lo: f64, hi: f64) -> f64 {
    if hi.is_infinite() {
        if lo <= 0.0 {
            1.0
        } else {
            lo + 1.0
        }
    } else if lo <= 0.0 {
        hi / 2.0
    } else {
        0.5 * (lo + hi)
    }
}

/// Intersects the open ray `(0,∞)·v` with the archimedean amoeba.
///
/// A miss is only reported with an exact dominance certificate. For phase-free
/// supports the absence of a certificate proves a hit.
pub fn arch_ray(f: &LaurentPoly, v: &[Rational], tol: f64) -> Result<ArchRay> {
    check_input(f)?;
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroDirection);
    }
    if let Some(n) = ray_miss_certificate(f, v) {
        return Ok(ArchRay::Miss { certificate: n });
    }
    let gaps = non_dominated_intervals(f, v)?;
    let vf: Vec<f64> = v.iter().map(rational_to_f64).collect();
    if is_phase_free(f) {
        let t = gaps.first().map(|(a, b)| sample_point(*a, *b)).unwrap_or(f64::NAN);
        return Ok(ArchRay::Hit { exact: true, t });
    }
    for (a, b) in gaps {
        let hi = if b.is_infinite() { a.max(1.0) * 4.0 } else { b };
        for k in 0..=8 {
            let t = if a == hi { a } else { a + (hi - a) * k as f64 / 8.0 };
            if t <= 0.0 {
                continue;
            }
            let u: Vec<f64> = vf.iter().map(|x| x * t).collect();
            if let ArchVerdict::InAmoeba { .. } = arch_membership(f, &u, tol)? {
                return Ok(ArchRay::Hit { exact: false, t });
            }
        }
    }
    Ok(ArchRay::Unknown)
}

/// Parameters `t` where the ray meets every generator's amoeba, up to `tol`.
///
/// Each generator contributes its non-dominated set; the result is their
/// intersection. This contains the ray's intersection with the amoeba of the
/// ideal and equals it for the product-type examples handled here.
pub fn common_ray_parameters(gens: &[LaurentPoly], v: &[Rational], tol: f64) -> Result<Vec<(f64, f64)>> {
    let mut current: Vec<(f64, f64)> = vec![(0.0, f64::INFINITY)];
    for g in gens {
        if g.is_monomial() {
            return Ok(Vec::new());
        }
        if ray_miss_certificate(g, v).is_some() {
            return Ok(Vec::new());
        }
        let gaps = non_dominated_intervals(g, v)?;
        let mut next = Vec::new();
        for (a, b) in &current {
            for (c, d) in &gaps {
                let lo = a.max(*c);
                let hi = b.min(*d);
                if lo <= hi + tol {
                    next.push((lo.min(hi), hi.max(lo)));
                }
            }
        }
        current = next;
        if current.is_empty() {
            break;
        }
    }
    current.retain(|(_, b)| *b > 0.0);
    Ok(current)
}
