//! Lifted supports, lower hulls and regular subdivisions.
//!
//! Each support point `n` of `f` is lifted to height `v(a_n)`. The faces of
//! the lower convex hull of the lifted points are dual to the cells of the
//! tropical hypersurface, and in one variable the slopes of the lower edges
//! are the valuations of the roots.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::linalg::{affine_rank, rref};
use crate::poly::{newton_polytope, ExpVec, LaurentPoly};
use crate::polyhedron::{hull_facets, HPolyhedron, LinearConstraint};
use crate::rational::{val_nonzero, Place, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPoint {
    pub exponent: ExpVec,
    pub lift: Rational,
}

/// The support of `f` with each point lifted to the valuation of its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSupport {
    pub place: Place,
    pub dim: usize,
    /// In the lexicographic order of exponents.
    pub points: Vec<LiftedPoint>,
}

pub fn lifted_support(f: &LaurentPoly, place: Place) -> Result<LiftedSupport> {
    place.require_non_archimedean()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points = f
        .terms()
        .map(|(n, a)| Ok(LiftedPoint { exponent: n.clone(), lift: val_nonzero(a, place)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftedSupport { place, dim: f.dim(), points })
}

impl LiftedSupport {
    /// `v(a_n) + u·n` for every support point.
    pub fn values_at(&self, u: &[Rational]) -> Vec<Rational> {
        self.points.iter().map(|p| &p.lift + p.exponent.dot(u)).collect()
    }

    /// Points as vectors `(n, lift)` in `Q^(d+1)`.
    fn lifted_vectors(&self) -> Vec<Vec<Rational>> {
        self.points
            .iter()
            .map(|p| {
                let mut v = p.exponent.to_rationals();
                v.push(p.lift.clone());
                v
            })
            .collect()
    }
}

/// A face of the lower hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerFace {
    /// Indices into the lifted support of every point on the face, sorted.
    pub points: Vec<usize>,
    /// Affine dimension of the face.
    pub dim: usize,
    /// A `u` at which `v(a_m) + u·m` is minimal exactly on this face.
    pub functional: Vec<Rational>,
    /// The minimum attained at `functional`.
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerHull {
    pub support: LiftedSupport,
    /// Every face, sorted by dimension and then by point set.
    pub faces: Vec<LowerFace>,
}

impl LowerHull {
    /// Indices of the lifted points that are vertices of the lower hull.
    pub fn vertices(&self) -> Vec<usize> {
        self.faces.iter().filter(|f| f.dim == 0).map(|f| f.points[0]).collect()
    }

    /// Faces not contained in another face.
    pub fn maximal_faces(&self) -> Vec<&LowerFace> {
        self.faces
            .iter()
            .filter(|f| {
                !self.faces.iter().any(|g| g.dim > f.dim && f.points.iter().all(|i| g.points.contains(i)))
            })
            .collect()
    }

    /// Faces of dimension one.
    pub fn edges(&self) -> Vec<&LowerFace> {
        self.faces.iter().filter(|f| f.dim == 1).collect()
    }

    pub fn face_exponents(&self, face: &LowerFace) -> BTreeSet<ExpVec> {
        face.points.iter().map(|&i| self.support.points[i].exponent.clone()).collect()
    }
}

/// Coordinates of the points in the chart spanned by their own affine hull.
fn chart(points: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let first = &points[0];
    let mut diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let pivots = rref(&mut diffs, first.len());
    points.iter().map(|p| pivots.iter().map(|&c| &p[c] - &first[c]).collect()).collect()
}

/// All faces (as sorted index sets into `all`) of the polytope spanned by `subset`.
fn faces_of(all: &[Vec<Rational>], subset: Vec<usize>, out: &mut BTreeMap<Vec<usize>, usize>) {
    if out.contains_key(&subset) {
        return;
    }
    let pts: Vec<Vec<Rational>> = subset.iter().map(|&i| all[i].clone()).collect();
    let dim = affine_rank(&pts) as usize;
    out.insert(subset.clone(), dim);
    if dim == 0 {
        return;
    }
    for (_, _, on) in hull_facets(&chart(&pts)) {
        faces_of(all, on.iter().map(|&k| subset[k]).collect(), out);
    }
}

/// The `u` for which the face is exactly the argmin set of `v(a_m) + u·m`.
fn face_functional(support: &LiftedSupport, face: &[usize]) -> Result<(Vec<Rational>, Rational)> {
    let d = support.dim;
    let base = &support.points[face[0]];
    let mut constraints = Vec::new();
    for (i, p) in support.points.iter().enumerate() {
        if i == face[0] {
            continue;
        }
        let diff: Vec<Rational> = p.exponent.to_rationals().iter().zip(base.exponent.to_rationals()).map(|(a, b)| a - b).collect();
        let rhs = &base.lift - &p.lift;
        constraints.push(if face.contains(&i) {
            LinearConstraint::eq(diff, rhs)
        } else {
            LinearConstraint::gt(diff, rhs)
        });
    }
    let u = HPolyhedron::new(d, constraints)?
        .witness()
        .ok_or_else(|| Error::Invariant("lower face without a supporting functional".into()))?;
    let value = &base.lift + base.exponent.dot(&u);
    Ok((u, value))
}

/// The lower hull of the lifted support, with all of its faces.
pub fn extended_newton(f: &LaurentPoly, place: Place) -> Result<LowerHull> {
    let support = lifted_support(f, place)?;
    let lifted = support.lifted_vectors();
    let exps: Vec<Vec<Rational>> = support.points.iter().map(|p| p.exponent.to_rationals()).collect();
    let r = affine_rank(&exps) as usize;

    // Chart for the exponents, then append the lift as the last coordinate.
    let base_chart = chart(&exps);
    let charted: Vec<Vec<Rational>> = base_chart
        .into_iter()
        .zip(&support.points)
        .map(|(mut c, p)| {
            c.push(p.lift.clone());
            c
        })
        .collect();
    let maximal: Vec<Vec<usize>> = if affine_rank(&charted) as usize == r {
        // lifts are affine on the support: one lower face
        alloc::vec![(0..lifted.len()).collect()]
    } else {
        hull_facets(&charted)
            .into_iter()
            .filter(|(h, _, _)| h[r].is_positive())
            .map(|(_, _, on)| on)
            .collect()
    };

    let mut found = BTreeMap::new();
    for m in maximal {
        faces_of(&lifted, m, &mut found);
    }
    let mut faces = Vec::with_capacity(found.len());
    for (points, dim) in found {
        let (functional, value) = face_functional(&support, &points)?;
        faces.push(LowerFace { points, dim, functional, value });
    }
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.points.cmp(&b.points)));
    Ok(LowerHull { support, faces })
}

/// A cell of the regular subdivision of `N(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCell {
    /// Support points on the corresponding lower face.
    pub label: BTreeSet<ExpVec>,
    pub dim: usize,
    /// The convex hull of the label.
    pub polytope: HPolyhedron,
}

/// The projections of all lower faces to `N(f)`, sorted by dimension.
pub fn regular_subdivision(f: &LaurentPoly, place: Place) -> Result<Vec<SubdivisionCell>> {
    let hull = extended_newton(f, place)?;
    hull.faces
        .iter()
        .map(|face| {
            let label = hull.face_exponents(face);
            let pts: Vec<Vec<Rational>> = label.iter().map(ExpVec::to_rationals).collect();
            Ok(SubdivisionCell { dim: face.dim, polytope: HPolyhedron::convex_hull(f.dim(), &pts)?, label })
        })
        .collect()
}

/// Valuations of the roots of a univariate polynomial with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootValuations {
    /// `(valuation, multiplicity)`, valuations strictly decreasing.
    pub entries: Vec<(Rational, u64)>,
}

impl RootValuations {
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Each valuation repeated by its multiplicity, sorted ascending.
    pub fn to_multiset(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .entries
            .iter()
            .flat_map(|(v, m)| core::iter::repeat_n(v.clone(), *m as usize))
            .collect();
        out.sort();
        out
    }
}

/// Root valuations from the lower edges of the Newton polygon.
pub fn newton_polygon_roots(f: &LaurentPoly, place: Place) -> Result<RootValuations> {
    if f.dim() != 1 {
        return Err(Error::NotUnivariate(f.dim()));
    }
    let hull = extended_newton(f, place)?;
    let mut entries = Vec::new();
    for edge in hull.edges() {
        let pts = &hull.support.points;
        let (a, b) = edge
            .points
            .iter()
            .map(|&i| &pts[i])
            .fold((None::<&LiftedPoint>, None::<&LiftedPoint>), |(lo, hi), p| {
                let lo = match lo {
                    Some(q) if q.exponent[0] <= p.exponent[0] => Some(q),
                    _ => Some(p),
                };
                let hi = match hi {
                    Some(q) if q.exponent[0] >= p.exponent[0] => Some(q),
                    _ => Some(p),
                };
                (lo, hi)
            });
        let (a, b) = (a.expect("edge has points"), b.expect("edge has points"));
        let width = b.exponent[0] - a.exponent[0];
        let slope = (&b.lift - &a.lift) / Rational::from_integer(BigInt::from(width));
        entries.push((-slope, width.to_u64().expect("positive width")));
    }
    entries.sort_by(|x, y| y.0.cmp(&x.0));
    debug_assert!(entries.windows(2).all(|w| w[0].0 > w[1].0));
    debug_assert!(entries.iter().all(|(_, m)| *m > 0));
    Ok(RootValuations { entries })
}

/// Vertices of the Newton polytope as a set.
pub(crate) fn newton_vertices(f: &LaurentPoly) -> Result<BTreeSet<ExpVec>> {
    Ok(newton_polytope(f)?.into_iter().collect())
}
