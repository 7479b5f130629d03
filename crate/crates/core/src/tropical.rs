//! Tropicalization, tropical hypersurfaces and their complements.
//!
//! `f^τ(u) = min_n (v(a_n) + u·n)`. The tropical hypersurface is the locus
//! where the minimum is attained at least twice; its cells are dual to the
//! faces of the lower hull with two or more points. The amoeba is the same
//! set with the sign of `u` flipped.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::lift::{extended_newton, lifted_support, newton_vertices, LiftedSupport, LowerHull};
use crate::poly::{separating_functional, ExpVec, LaurentPoly};
use crate::polyhedron::{Cell, CellComplex, HPolyhedron, LinearConstraint};
use crate::rational::{Place, Rational};
use crate::{Error, Result};

/// Sign convention: `Amoeba` is the pointwise negation of `Tropical`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Tropical,
    Amoeba,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Tropical => Sign::Amoeba,
            Sign::Amoeba => Sign::Tropical,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Tropical => "tropical",
            Sign::Amoeba => "amoeba",
        })
    }
}

impl core::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tropical" => Ok(Sign::Tropical),
            "amoeba" => Ok(Sign::Amoeba),
            other => Err(Error::Invariant(alloc::format!("unknown sign `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Special {
    Ordinary,
    /// `f` is a monomial.
    Empty,
    /// `f = 0`.
    WholeSpace,
}

impl fmt::Display for Special {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Special::Ordinary => "ordinary",
            Special::Empty => "empty",
            Special::WholeSpace => "whole_space",
        })
    }
}

/// A tropical hypersurface (or amoeba) at one non-archimedean place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalHypersurface {
    place: Place,
    sign: Sign,
    special: Special,
    complex: CellComplex,
}

impl TropicalHypersurface {
    pub(crate) fn from_parts(place: Place, sign: Sign, special: Special, complex: CellComplex) -> Self {
        TropicalHypersurface { place, sign, special, complex }
    }

    pub fn place(&self) -> Place {
        self.place
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn special(&self) -> Special {
        self.special
    }

    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn cells(&self) -> &[Cell] {
        self.complex.cells()
    }

    pub fn contains(&self, u: &[Rational]) -> bool {
        match self.special {
            Special::WholeSpace => true,
            Special::Empty => false,
            Special::Ordinary => self.complex.contains(u),
        }
    }

    /// The same set in the other sign convention.
    pub fn with_sign(&self, sign: Sign) -> TropicalHypersurface {
        if sign == self.sign {
            return self.clone();
        }
        let cells = self
            .complex
            .cells()
            .iter()
            .map(|c| Cell { polyhedron: c.polyhedron.negated(), label: c.label.clone(), dim: c.dim })
            .collect();
        let mut complex = CellComplex::new(self.dim(), cells).expect("same dimension");
        complex.sort_canonical();
        TropicalHypersurface { place: self.place, sign, special: self.special, complex }
    }

    /// Relabels the place; used when a generic computation stands for a specific prime.
    pub fn at_place(mut self, place: Place) -> Self {
        self.place = place;
        self
    }

    /// Whether the open ray `(0,∞)·v` meets the set.
    pub fn ray_hits(&self, v: &[Rational]) -> Result<bool> {
        match self.special {
            Special::WholeSpace => Ok(true),
            Special::Empty => Ok(false),
            Special::Ordinary => {
                for c in self.cells() {
                    if c.polyhedron.ray_hits(v)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Cells not contained in a cell of larger dimension.
    pub fn maximal_cells(&self) -> Vec<&Cell> {
        self.complex.maximal_cells().into_iter().map(|i| &self.complex.cells()[i]).collect()
    }
}

fn check_point(f: &LaurentPoly, u: &[Rational]) -> Result<()> {
    if u.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: u.len() });
    }
    Ok(())
}

/// `f^τ(u)` together with every support point attaining the minimum.
pub fn tropicalize_eval(f: &LaurentPoly, place: Place, u: &[Rational]) -> Result<(Rational, BTreeSet<ExpVec>)> {
    check_point(f, u)?;
    let support = lifted_support(f, place)?;
    Ok(argmin(&support, u))
}

fn argmin(support: &LiftedSupport, u: &[Rational]) -> (Rational, BTreeSet<ExpVec>) {
    let values = support.values_at(u);
    let min = values.iter().min().expect("non-empty support").clone();
    let set = support
        .points
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v == min)
        .map(|(p, _)| p.exponent.clone())
        .collect();
    (min, set)
}

/// Whether `u` lies on the tropical hypersurface (tropical sign).
pub fn membership(f: &LaurentPoly, place: Place, u: &[Rational]) -> Result<bool> {
    Ok(tropicalize_eval(f, place, u)?.1.len() >= 2)
}

fn difference(a: &ExpVec, b: &ExpVec) -> Vec<Rational> {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| Rational::from_integer((*x - *y).into())).collect()
}

/// The cell dual to a lower face: ties on the face, no smaller value elsewhere.
fn dual_cell(support: &LiftedSupport, face: &[usize]) -> Result<HPolyhedron> {
    let base = &support.points[face[0]];
    let mut constraints = Vec::new();
    for (i, p) in support.points.iter().enumerate() {
        if i == face[0] {
            continue;
        }
        let diff = difference(&p.exponent, &base.exponent);
        let rhs = &base.lift - &p.lift;
        constraints.push(if face.contains(&i) {
            LinearConstraint::eq(diff, rhs)
        } else {
            LinearConstraint::ge(diff, rhs)
        });
    }
    Ok(HPolyhedron::new(support.dim, constraints)?.remove_redundant())
}

fn hypersurface_from_hull(hull: &LowerHull, dim: usize, sign: Sign) -> Result<TropicalHypersurface> {
    let mut cells = Vec::new();
    for face in hull.faces.iter().filter(|f| f.points.len() >= 2) {
        let polyhedron = dual_cell(&hull.support, &face.points)?;
        let cell_dim = dim - face.dim;
        debug_assert_eq!(polyhedron.dimension(), cell_dim as isize);
        let polyhedron = match sign {
            Sign::Tropical => polyhedron,
            Sign::Amoeba => polyhedron.negated(),
        };
        cells.push(Cell { polyhedron, label: hull.face_exponents(face), dim: cell_dim });
    }
    let mut complex = CellComplex::new(dim, cells)?;
    complex.sort_canonical();
    Ok(TropicalHypersurface::from_parts(hull.support.place, sign, Special::Ordinary, complex))
}

/// The tropical hypersurface of `f` at a non-archimedean place, as a closed cell complex.
pub fn tropical_hypersurface(f: &LaurentPoly, place: Place, sign: Sign) -> Result<TropicalHypersurface> {
    place.require_non_archimedean()?;
    let dim = f.dim();
    if f.is_zero() {
        return Ok(TropicalHypersurface::from_parts(place, sign, Special::WholeSpace, CellComplex::empty(dim)));
    }
    if f.is_monomial() {
        return Ok(TropicalHypersurface::from_parts(place, sign, Special::Empty, CellComplex::empty(dim)));
    }
    let hull = extended_newton(f, place)?;
    hypersurface_from_hull(&hull, dim, sign)
}

/// A connected component of the complement (tropical sign).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementComponent {
    /// The support point that alone attains the minimum on the region.
    pub label: ExpVec,
    pub lift: Rational,
    /// Open region given by strict inequalities.
    pub region: HPolyhedron,
    pub bounded: bool,
}

/// One open component per vertex of the lower hull.
pub fn complement_components(f: &LaurentPoly, place: Place) -> Result<Vec<ComplementComponent>> {
    place.require_non_archimedean()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_monomial() {
        return Err(Error::Monomial);
    }
    let hull = extended_newton(f, place)?;
    let outer = newton_vertices(f)?;
    let support = &hull.support;
    let mut out = Vec::new();
    for i in hull.vertices() {
        let n = &support.points[i];
        let constraints = support
            .points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, m)| LinearConstraint::gt(difference(&m.exponent, &n.exponent), &n.lift - &m.lift))
            .collect();
        let region = HPolyhedron::new(f.dim(), constraints)?.remove_redundant();
        if !region.is_feasible() {
            return Err(Error::Invariant("empty complement component".into()));
        }
        out.push(ComplementComponent {
            label: n.exponent.clone(),
            lift: n.lift.clone(),
            region,
            bounded: !outer.contains(&n.exponent),
        });
    }
    Ok(out)
}

/// Coefficients of the Laurent expansion of `1/f` convergent in the component of
/// the vertex `n` of `N(f)`, for exponents `m` with `‖m + n‖₁ <= bound`.
///
/// Writing `f = a_n x^n (1 + g)`, the expansion is `a_n⁻¹ x⁻ⁿ Σ (-g)^k`, and each
/// coefficient is a finite sum because `n` is a vertex.
pub fn laurent_coefficients(f: &LaurentPoly, n: &ExpVec, bound: u64) -> Result<BTreeMap<ExpVec, Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: n.dim() });
    }
    let a_n = f.coeff(n).ok_or(Error::NotAVertex)?.clone();
    let shift = |e: &ExpVec| -> Result<ExpVec> {
        e.checked_sub(n).ok_or_else(|| Error::Invariant("exponent overflow".into()))
    };
    let mut out = BTreeMap::new();
    if f.is_monomial() {
        out.insert(shift(&ExpVec::zeros(f.dim()))?, a_n.recip());
        return Ok(out);
    }
    let support = f.support();
    let c = separating_functional(n, &support).ok_or(Error::NotAVertex)?;
    // ratios a_m / a_n on the differences d = m - n
    let diffs: Vec<(ExpVec, Rational, Rational)> = f
        .terms()
        .filter(|(m, _)| *m != n)
        .map(|(m, a)| {
            let d = m.checked_sub(n).expect("small exponents");
            let level = d.dot(&c);
            (d, a / &a_n, level)
        })
        .collect();
    let c_max = c.iter().map(|x| if x < &Rational::zero() { -x.clone() } else { x.clone() }).max().expect("d >= 1");
    let limit = c_max * Rational::from_integer(bound.into());

    // Every exponent reachable as a sum of differences with level <= limit.
    let zero = ExpVec::zeros(f.dim());
    let mut reachable: BTreeMap<ExpVec, Rational> = BTreeMap::new();
    reachable.insert(zero.clone(), Rational::zero());
    let mut frontier = alloc::vec![zero.clone()];
    while let Some(e) = frontier.pop() {
        let level = reachable[&e].clone();
        for (d, _, l) in &diffs {
            let next_level = &level + l;
            if next_level > limit {
                continue;
            }
            let next = e.checked_add(d).ok_or_else(|| Error::Invariant("exponent overflow".into()))?;
            if !reachable.contains_key(&next) {
                reachable.insert(next.clone(), next_level);
                frontier.push(next);
            }
        }
    }
    let mut order: Vec<(Rational, ExpVec)> = reachable.into_iter().map(|(e, l)| (l, e)).collect();
    order.sort();

    // coef(0) = 1 and coef(e) = -Σ_d (a_{n+d}/a_n) coef(e - d), in increasing level.
    let mut series: BTreeMap<ExpVec, Rational> = BTreeMap::new();
    for (_, e) in &order {
        let value = if *e == zero {
            Rational::one()
        } else {
            let mut acc = Rational::zero();
            for (d, ratio, _) in &diffs {
                if let Some(prev) = e.checked_sub(d).and_then(|p| series.get(&p)) {
                    acc -= ratio * prev;
                }
            }
            acc
        };
        series.insert(e.clone(), value);
    }
    let inv = a_n.recip();
    for (e, value) in series {
        if value.is_zero() || e.l1_norm() > bound {
            continue;
        }
        out.insert(shift(&e)?, value * &inv);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_laurent;
    use crate::polyhedron::connected_components;
    use crate::rational::{frac, int};
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn e(v: &[i64]) -> ExpVec {
        ExpVec::new(v.to_vec())
    }

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn p(n: u64) -> Place {
        Place::finite(n).unwrap()
    }

    fn xy(s: &str) -> LaurentPoly {
        parse_laurent(s, &["x", "y"]).unwrap()
    }

    /// The 0-cells and the ray directions of the 1-cells of a planar curve.
    fn vertices_and_directions(t: &TropicalHypersurface) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for c in t.cells() {
            let v = c.polyhedron.vertices_and_rays().unwrap();
            if c.dim == 0 {
                vertices.extend(v.vertices);
            } else {
                rays.extend(v.rays);
            }
        }
        vertices.sort();
        rays.sort();
        (vertices, rays)
    }

    #[test]
    fn evaluation_examples() {
        let f = xy("3+x+y");
        let (v, s) = tropicalize_eval(&f, p(3), &r(&[0, 0])).unwrap();
        assert_eq!(v, int(0));
        assert_eq!(s, [e(&[1, 0]), e(&[0, 1])].into_iter().collect());
        let (v, s) = tropicalize_eval(&f, p(3), &r(&[2, 2])).unwrap();
        assert_eq!((v, s.len()), (int(1), 1));
        let (v, s) = tropicalize_eval(&f, p(3), &r(&[1, 1])).unwrap();
        assert_eq!((v, s.len()), (int(1), 3));
        assert!(membership(&f, p(3), &r(&[1, 1])).unwrap());
        assert!(membership(&f, p(3), &r(&[0, 0])).unwrap());
        assert!(!membership(&f, p(3), &r(&[2, 3])).unwrap());
        assert_eq!(membership(&f, Place::Archimedean, &r(&[0, 0])), Err(Error::ArchimedeanPlace));
        assert!(tropicalize_eval(&f, p(3), &r(&[0])).is_err());
    }

    #[test]
    fn amoeba_of_three_plus_x_plus_y() {
        let t = tropical_hypersurface(&xy("3+x+y"), p(3), Sign::Amoeba).unwrap();
        let (vertices, rays) = vertices_and_directions(&t);
        assert_eq!(vertices, vec![r(&[-1, -1])]);
        assert_eq!(rays, vec![r(&[-1, 0]), r(&[0, -1]), r(&[1, 1])]);
        assert_eq!(t.cells().len(), 4);
        let g = tropical_hypersurface(&xy("3+x+y"), Place::Generic, Sign::Amoeba).unwrap();
        let (vertices, rays_g) = vertices_and_directions(&g);
        assert_eq!(vertices, vec![r(&[0, 0])]);
        assert_eq!(rays_g, rays);
        assert_eq!(t.with_sign(Sign::Tropical), tropical_hypersurface(&xy("3+x+y"), p(3), Sign::Tropical).unwrap());
    }

    #[test]
    fn special_cases() {
        let m = tropical_hypersurface(&xy("5x^2y"), p(5), Sign::Tropical).unwrap();
        assert_eq!(m.special(), Special::Empty);
        assert!(!m.contains(&r(&[0, 0])));
        let z = tropical_hypersurface(&LaurentPoly::zero(2), p(5), Sign::Tropical).unwrap();
        assert_eq!(z.special(), Special::WholeSpace);
        assert!(z.contains(&r(&[7, -3])));
        assert!(tropical_hypersurface(&xy("1+x"), Place::Archimedean, Sign::Tropical).is_err());
    }

    #[test]
    fn components_examples() {
        let comps = complement_components(&xy("3+x+y"), p(3)).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| !c.bounded));

        let f = xy("x+y+x^-1*y^-1+1/4");
        let comps = complement_components(&f, p(2)).unwrap();
        assert_eq!(comps.len(), 4);
        let inner: Vec<_> = comps.iter().filter(|c| c.bounded).collect();
        assert_eq!(inner.len(), 1);
        assert_eq!(inner[0].label, e(&[0, 0]));
        let triangle = HPolyhedron::new(
            2,
            vec![
                LinearConstraint::gt(r(&[1, 0]), int(-2)),
                LinearConstraint::gt(r(&[0, 1]), int(-2)),
                LinearConstraint::gt(r(&[-1, -1]), int(-2)),
            ],
        )
        .unwrap();
        assert!(inner[0].region.same_set(&triangle));
        assert!(inner[0].region.is_bounded());

        let generic = complement_components(&f, Place::Generic).unwrap();
        assert_eq!(generic.len(), 3);
        assert!(generic.iter().all(|c| !c.bounded && !c.region.is_bounded()));
        assert_eq!(complement_components(&xy("2x"), p(2)), Err(Error::Monomial));
    }

    #[test]
    fn laurent_examples() {
        let f = parse_laurent("1 - x", &["x"]).unwrap();
        let coeffs = laurent_coefficients(&f, &e(&[0]), 6).unwrap();
        assert_eq!(coeffs.len(), 7);
        assert!(coeffs.values().all(|c| *c == int(1)));

        let g = xy("3+x+y");
        let coeffs = laurent_coefficients(&g, &e(&[0, 0]), 8).unwrap();
        assert_eq!(coeffs[&e(&[1, 1])], frac(2, 27));
        assert_eq!(coeffs[&e(&[0, 0])], frac(1, 3));
        assert_eq!(coeffs[&e(&[3, 0])], frac(-1, 81));

        let h = parse_laurent("x - 5", &["x"]).unwrap();
        let coeffs = laurent_coefficients(&h, &e(&[1]), 5).unwrap();
        for k in 0..5 {
            assert_eq!(coeffs[&e(&[-k - 1])], Rational::from_integer(num_bigint::BigInt::from(5).pow(k as u32)));
        }

        let m = xy("4x^2y");
        let coeffs = laurent_coefficients(&m, &e(&[2, 1]), 3).unwrap();
        assert_eq!(coeffs.into_iter().collect::<Vec<_>>(), vec![(e(&[-2, -1]), frac(1, 4))]);

        let inner = xy("4-x-y-x^-1*y^-1");
        assert_eq!(laurent_coefficients(&inner, &e(&[0, 0]), 3), Err(Error::NotAVertex));
        assert_eq!(laurent_coefficients(&inner, &e(&[5, 5]), 3), Err(Error::NotAVertex));
    }

    #[test]
    fn laurent_truncation_matches_the_inverse() {
        for (f, n, bound) in [
            (xy("3+x+y"), e(&[0, 0]), 8u64),
            (xy("4-x-y-x^-1*y^-1"), e(&[1, 0]), 5),
            (xy("1+2x^2-y+1/3*x*y"), e(&[2, 0]), 6),
        ] {
            let r = laurent_coefficients(&f, &n, bound).unwrap();
            let series = LaurentPoly::from_terms(2, r).unwrap();
            let product = f.mul(&series).unwrap();
            let radius = f.support().iter().map(|m| m.checked_sub(&n).unwrap().l1_norm()).max().unwrap();
            for (m, c) in product.terms() {
                if *m == ExpVec::zeros(2) {
                    assert_eq!(*c, int(1));
                } else {
                    assert!(m.l1_norm() + radius > bound, "{m} -> {c}");
                }
            }
        }
    }

    #[test]
    fn catalog_is_connected() {
        let catalog = [
            (xy("3+x+y"), vec![p(3), Place::Generic]),
            (xy("1+x+y"), vec![Place::Generic]),
            (xy("x+y+x^-1*y^-1+1/4"), vec![p(2), Place::Generic]),
            (parse_laurent("z-2", &["x", "y", "z"]).unwrap(), vec![p(2), Place::Generic]),
        ];
        for (f, places) in catalog {
            for place in places {
                let t = tropical_hypersurface(&f, place, Sign::Amoeba).unwrap();
                assert_eq!(connected_components(t.complex()), 1);
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        let coeff = prop::sample::select(vec![
            int(1), int(-1), int(2), int(-2), int(3), int(-3), frac(1, 2), frac(-1, 2), frac(1, 3), frac(4, 9), int(12),
        ]);
        prop::collection::btree_map((-2i64..=2, -2i64..=2), coeff, 2..7).prop_map(|m| {
            LaurentPoly::from_terms(2, m.into_iter().map(|((a, b), c)| (e(&[a, b]), c))).unwrap()
        })
    }

    fn arb_point() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-35i64..=35, 1i64..=7), 2).prop_map(|v| v.into_iter().map(|(n, d)| frac(n, d)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn concavity(f in arb_poly(), u in arb_point(), w in arb_point(), k in 1i64..=9) {
            let lambda = frac(k, 10);
            let mix: Vec<Rational> = u.iter().zip(&w).map(|(a, b)| &lambda * a + (Rational::one() - &lambda) * b).collect();
            let (fu, _) = tropicalize_eval(&f, p(2), &u).unwrap();
            let (fw, _) = tropicalize_eval(&f, p(2), &w).unwrap();
            let (fm, _) = tropicalize_eval(&f, p(2), &mix).unwrap();
            prop_assert!(fm >= &lambda * fu + (Rational::one() - &lambda) * fw);
        }

        #[test]
        fn argmin_membership_matches_complex(f in arb_poly(), u in arb_point(), pi in 0usize..3) {
            let place = [p(2), p(3), Place::Generic][pi];
            let t = tropical_hypersurface(&f, place, Sign::Tropical).unwrap();
            prop_assert_eq!(membership(&f, place, &u).unwrap(), t.contains(&u));
            let neg: Vec<Rational> = u.iter().map(|x| -x.clone()).collect();
            prop_assert_eq!(t.contains(&u), t.with_sign(Sign::Amoeba).contains(&neg));
        }

        #[test]
        fn duality_counts_and_purity(f in arb_poly(), pi in 0usize..3) {
            let place = [p(2), p(3), Place::Generic][pi];
            let hull = extended_newton(&f, place).unwrap();
            let comps = complement_components(&f, place).unwrap();
            prop_assert_eq!(comps.len(), hull.vertices().len());
            let outer = newton_vertices(&f).unwrap();
            prop_assert_eq!(comps.iter().filter(|c| !c.bounded).count(), outer.len());
            let t = tropical_hypersurface(&f, place, Sign::Tropical).unwrap();
            for c in t.maximal_cells() {
                prop_assert_eq!(c.dim, 1);
                prop_assert_eq!(c.polyhedron.dimension(), 1);
            }
        }

        #[test]
        fn components_partition_the_complement(f in arb_poly(), u in arb_point()) {
            let comps = complement_components(&f, p(2)).unwrap();
            let (_, set) = tropicalize_eval(&f, p(2), &u).unwrap();
            let inside: Vec<_> = comps.iter().filter(|c| c.region.contains(&u)).collect();
            if set.len() >= 2 {
                prop_assert!(inside.is_empty());
            } else {
                prop_assert_eq!(inside.len(), 1);
                prop_assert!(set.contains(&inside[0].label));
            }
        }

        #[test]
        fn multiplicativity(f in arb_poly(), g in arb_poly(), u in arb_point()) {
            let fg = f.mul(&g).unwrap();
            let lhs = membership(&fg, p(3), &u).unwrap();
            let rhs = membership(&f, p(3), &u).unwrap() || membership(&g, p(3), &u).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn translation_equivariance(f in arb_poly(), k1 in -2i64..=2, k2 in -2i64..=2) {
            let prime = 3i64;
            let pow = |k: i64| if k >= 0 { Rational::from_integer(num_bigint::BigInt::from(prime).pow(k as u32)) } else { Rational::new(1.into(), num_bigint::BigInt::from(prime).pow((-k) as u32)) };
            let g = f.scale_variables(&[pow(k1), pow(k2)]).unwrap();
            let tf = tropical_hypersurface(&f, p(3), Sign::Tropical).unwrap();
            let tg = tropical_hypersurface(&g, p(3), Sign::Tropical).unwrap();
            let shift = vec![int(-k1), int(-k2)];
            prop_assert_eq!(tf.cells().len(), tg.cells().len());
            for a in tf.cells() {
                let b = tg.cells().iter().find(|b| b.label == a.label);
                prop_assert!(b.is_some());
                prop_assert!(a.polyhedron.translated(&shift).same_set(&b.unwrap().polyhedron));
            }
        }
    }
}
