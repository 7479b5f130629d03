//! Laurent polynomials with rational coefficients, their text syntax and
//! Newton polytopes.

mod parse;

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_traits::{One, Signed, Zero};

use crate::polyhedron::{HPolyhedron, LinearConstraint};
use crate::rational::{int, Rational};
use crate::{Error, Result};

pub use parse::{parse_laurent, validate_variables};

/// An exponent vector `n ∈ Z^d`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpVec(Vec<i64>);

impl ExpVec {
    pub fn new(entries: Vec<i64>) -> Self {
        ExpVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        ExpVec(alloc::vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn checked_add(&self, other: &ExpVec) -> Option<ExpVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExpVec)
    }

    pub fn checked_sub(&self, other: &ExpVec) -> Option<ExpVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExpVec)
    }

    pub fn checked_neg(&self) -> Option<ExpVec> {
        self.0.iter().map(|a| a.checked_neg()).collect::<Option<Vec<_>>>().map(ExpVec)
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|&a| int(a)).collect()
    }

    /// `u · n` for a rational vector `u`.
    pub fn dot(&self, u: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(u)
            .filter(|(a, _)| **a != 0)
            .fold(Rational::zero(), |acc, (a, x)| acc + x * int(*a))
    }

    pub fn dot_f64(&self, u: &[f64]) -> f64 {
        self.0.iter().zip(u).map(|(a, x)| *a as f64 * x).sum()
    }

    /// `‖n‖₁`, saturating.
    pub fn l1_norm(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, a| acc.saturating_add(a.unsigned_abs()))
    }
}

impl Index<usize> for ExpVec {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<Vec<i64>> for ExpVec {
    fn from(v: Vec<i64>) -> Self {
        ExpVec(v)
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// A Laurent polynomial `Σ a_n x^n` in `dim` variables.
///
/// No stored coefficient is zero; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<ExpVec, Rational>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly { dim, terms: BTreeMap::new() }
    }

    /// Builds a polynomial, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExpVec, Rational)>,
    {
        let mut p = LaurentPoly::zero(dim);
        for (n, c) in terms {
            if n.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: n.dim() });
            }
            p.add_term(n, c);
        }
        Ok(p)
    }

    pub fn monomial(coeff: Rational, exponent: ExpVec) -> Self {
        let dim = exponent.dim();
        let mut p = LaurentPoly::zero(dim);
        p.add_term(exponent, coeff);
        p
    }

    pub(crate) fn add_term(&mut self, n: ExpVec, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(n) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, n: &ExpVec) -> Option<&Rational> {
        self.terms.get(n)
    }

    pub fn support(&self) -> Vec<ExpVec> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        self.terms.values().cloned().collect()
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut out = LaurentPoly::zero(self.dim);
        for (n, a) in &self.terms {
            for (m, b) in &other.terms {
                let e = n.checked_add(m).ok_or(Error::ExponentOverflow { position: 0 })?;
                out.add_term(e, a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.dim);
        }
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(n, a)| (n.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by the monomial `x^m`.
    pub fn shift(&self, m: &ExpVec) -> Result<LaurentPoly> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: m.dim() });
        }
        let mut terms = BTreeMap::new();
        for (n, a) in &self.terms {
            let e = n.checked_add(m).ok_or(Error::ExponentOverflow { position: 0 })?;
            terms.insert(e, a.clone());
        }
        Ok(LaurentPoly { dim: self.dim, terms })
    }

    /// The substitution `x_i ↦ c_i · x_i`.
    pub fn scale_variables(&self, factors: &[Rational]) -> Result<LaurentPoly> {
        if factors.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: factors.len() });
        }
        if factors.iter().any(Zero::is_zero) {
            return Err(Error::ZeroValue);
        }
        let terms = self
            .terms
            .iter()
            .map(|(n, a)| {
                let mut c = a.clone();
                for (e, f) in n.as_slice().iter().zip(factors) {
                    let pow = num_traits::pow(f.clone(), e.unsigned_abs() as usize);
                    if *e >= 0 {
                        c *= pow;
                    } else {
                        c /= pow;
                    }
                }
                (n.clone(), c)
            })
            .collect();
        Ok(LaurentPoly { dim: self.dim, terms })
    }

    /// Renders the polynomial in the input syntax using the given variable names.
    pub fn display<'a>(&'a self, vars: &'a [&'a str]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }
}

/// See [`LaurentPoly::display`].
pub struct PolyDisplay<'a> {
    poly: &'a LaurentPoly,
    vars: &'a [&'a str],
}

fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (n, c)) in self.poly.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = n
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(k, e)| {
                    let name = self.vars.get(k).copied().unwrap_or("?");
                    if *e == 1 {
                        String::from(name)
                    } else {
                        alloc::format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                fmt_rational(&mag, f)?;
            } else {
                if !mag.is_one() {
                    fmt_rational(&mag, f)?;
                    f.write_str("*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Generators of an ideal of `Q[x^±1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    dim: usize,
    generators: Vec<LaurentPoly>,
}

impl IdealPresentation {
    pub fn new(generators: Vec<LaurentPoly>) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let dim = first.dim();
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
            }
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
        }
        Ok(IdealPresentation { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LaurentPoly] {
        &self.generators
    }

    pub fn all_coefficients(&self) -> Vec<Rational> {
        self.generators.iter().flat_map(|g| g.coefficients()).collect()
    }
}

/// Whether `n` is an extreme point of the finite set `points` (which contains `n`).
pub(crate) fn is_extreme_point(n: &ExpVec, points: &[ExpVec]) -> bool {
    separating_functional(n, points).is_some()
}

/// A rational `c` with `c · (m - n) >= 1` for all `m != n` in `points`, if `n` is a vertex.
pub(crate) fn separating_functional(n: &ExpVec, points: &[ExpVec]) -> Option<Vec<Rational>> {
    let dim = n.dim();
    let constraints: Vec<LinearConstraint> = points
        .iter()
        .filter(|m| *m != n)
        .map(|m| {
            let diff: Vec<Rational> = m.as_slice().iter().zip(n.as_slice()).map(|(a, b)| int(a - b)).collect();
            LinearConstraint::ge(diff, Rational::one())
        })
        .collect();
    HPolyhedron::new(dim, constraints).ok()?.witness()
}

/// Vertices of the Newton polytope `Conv(supp f)`.
///
/// In the plane they are listed counterclockwise starting from the smallest
/// polar angle about the centroid; otherwise lexicographically.
pub fn newton_polytope(f: &LaurentPoly) -> Result<Vec<ExpVec>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let support = f.support();
    let mut vertices: Vec<ExpVec> = support
        .iter()
        .filter(|n| is_extreme_point(n, &support))
        .cloned()
        .collect();
    if f.dim() == 2 && vertices.len() > 2 {
        sort_counterclockwise(&mut vertices);
    }
    Ok(vertices)
}

fn sort_counterclockwise(points: &mut [ExpVec]) {
    let k = points.len() as i64;
    // scale by k to keep the centroid integral
    let cx: i64 = points.iter().map(|p| p[0]).sum();
    let cy: i64 = points.iter().map(|p| p[1]).sum();
    let rel = |p: &ExpVec| (p[0] as i128 * k as i128 - cx as i128, p[1] as i128 * k as i128 - cy as i128);
    let half = |(x, y): (i128, i128)| if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    points.sort_by(|a, b| {
        let (pa, pb) = (rel(a), rel(b));
        half(pa).cmp(&half(pb)).then_with(|| {
            let cross = pa.0 * pb.1 - pa.1 * pb.0;
            0.cmp(&cross)
        })
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use alloc::vec;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn e(v: &[i64]) -> ExpVec {
        ExpVec::new(v.to_vec())
    }

    #[test]
    fn newton_polytope_examples() {
        let f = parse_laurent("3+x+y", &["x", "y"]).unwrap();
        assert_eq!(newton_polytope(&f).unwrap(), vec![e(&[0, 1]), e(&[0, 0]), e(&[1, 0])]);

        let g = parse_laurent("4-x-y-x^-1*y^-1", &["x", "y"]).unwrap();
        let v = newton_polytope(&g).unwrap();
        assert_eq!(v.len(), 3);
        assert!(!v.contains(&e(&[0, 0])));
        for n in [e(&[1, 0]), e(&[0, 1]), e(&[-1, -1])] {
            assert!(v.contains(&n));
        }

        let m = parse_laurent("5x^2y", &["x", "y"]).unwrap();
        assert_eq!(newton_polytope(&m).unwrap(), vec![e(&[2, 1])]);
        assert_eq!(newton_polytope(&LaurentPoly::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn newton_polytope_of_collinear_and_3d_supports() {
        let f = parse_laurent("1 + x + x^2 + x^3", &["x"]).unwrap();
        assert_eq!(newton_polytope(&f).unwrap(), vec![e(&[0]), e(&[3])]);
        let g = parse_laurent("1 + x + y + z + x*y*z", &["x", "y", "z"]).unwrap();
        assert_eq!(newton_polytope(&g).unwrap().len(), 5);
        let h = parse_laurent("1 + x*y + x^2*y^2 + z", &["x", "y", "z"]).unwrap();
        assert_eq!(
            newton_polytope(&h).unwrap(),
            vec![e(&[0, 0, 0]), e(&[0, 0, 1]), e(&[2, 2, 0])]
        );
    }

    #[test]
    fn display_uses_input_syntax() {
        let vars = ["x", "y"];
        let f = parse_laurent("4-x-y-x^-1*y^-1 + 1/4*x^2", &vars).unwrap();
        assert_eq!(f.display(&vars).to_string(), "-x^-1*y^-1 + 4 - y - x + 1/4*x^2");
        assert_eq!(LaurentPoly::zero(2).display(&vars).to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let vars = ["x", "y"];
        let f = parse_laurent("1+x", &vars).unwrap();
        let g = parse_laurent("1-x", &vars).unwrap();
        assert_eq!(f.mul(&g).unwrap(), parse_laurent("1 - x^2", &vars).unwrap());
        let s = f.scale_variables(&[frac(1, 3), int(1)]).unwrap();
        assert_eq!(s, parse_laurent("1 + 1/3*x", &vars).unwrap());
        assert!(IdealPresentation::new(vec![]).is_err());
        assert_eq!(
            IdealPresentation::new(vec![f.clone(), LaurentPoly::zero(2)]),
            Err(Error::ZeroPolynomial)
        );
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-3i64..=3, -3i64..=3), (-9i64..=9, 1i64..=4)), 1..7).prop_map(|ts| {
            LaurentPoly::from_terms(
                2,
                ts.into_iter().map(|((a, b), (n, d))| (ExpVec::new(vec![a, b]), frac(n, d))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(f in arb_poly()) {
            let vars = ["x", "y"];
            let text = f.display(&vars).to_string();
            prop_assert_eq!(parse_laurent(&text, &vars).unwrap(), f);
        }

        #[test]
        fn newton_polytope_scaling_and_translation(f in arb_poly(), c in 1i64..7, a in -3i64..3, b in -3i64..3) {
            prop_assume!(!f.is_zero());
            let base = newton_polytope(&f).unwrap();
            prop_assert_eq!(newton_polytope(&f.scale(&frac(-c, 2))).unwrap(), base.clone());
            let m = ExpVec::new(vec![a, b]);
            let mut shifted = newton_polytope(&f.shift(&m).unwrap()).unwrap();
            let mut expected: Vec<ExpVec> = base.iter().map(|n| n.checked_add(&m).unwrap()).collect();
            shifted.sort();
            expected.sort();
            prop_assert_eq!(shifted, expected);
        }
    }
}
