//! Exact H-representation polyhedra over Q.
//!
//! Feasibility, witnesses and implication checks all go through
//! Fourier–Motzkin elimination with equality substitution. The ambient
//! dimensions used in this crate are at most four, where that is cheap.
//! Strict inequalities are tracked through elimination, so open regions
//! (complement components, normal cones) are decided exactly too.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{combinations, nullspace, rank, rref};
use crate::poly::ExpVec;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        })
    }
}

/// `coeffs · u  (relation)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearConstraint {
    relation: Relation,
    coeffs: Vec<Rational>,
    rhs: Rational,
}

fn dot(a: &[Rational], u: &[Rational]) -> Rational {
    a.iter()
        .zip(u)
        .filter(|(x, _)| !x.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn small(q: &Rational) -> Option<(i128, i128)> {
    Some((q.numer().to_i64()? as i128, q.denom().to_i64()? as i128))
}

/// Compares `a·u` with `rhs` in machine integers; `None` on overflow or large entries.
fn small_dot_cmp(a: &[Rational], u: &[Rational], rhs: &Rational) -> Option<Ordering> {
    let (mut n, mut d) = (0i128, 1i128);
    for (x, y) in a.iter().zip(u) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let (xn, xd) = small(x)?;
        let (yn, yd) = small(y)?;
        let (tn, td) = (xn.checked_mul(yn)?, xd.checked_mul(yd)?);
        n = n.checked_mul(td)?.checked_add(tn.checked_mul(d)?)?;
        d = d.checked_mul(td)?;
        let g = gcd_i128(n, d);
        n /= g;
        d /= g;
    }
    let (rn, rd) = small(rhs)?;
    Some(n.checked_mul(rd)?.cmp(&rn.checked_mul(d)?))
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs().max(1)
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        LinearConstraint { relation, coeffs, rhs }
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn gt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Gt, rhs)
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    /// `coeffs · u <= rhs`.
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::ge(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn is_satisfied_by(&self, u: &[Rational]) -> bool {
        let ord = small_dot_cmp(&self.coeffs, u, &self.rhs).unwrap_or_else(|| dot(&self.coeffs, u).cmp(&self.rhs));
        match self.relation {
            Relation::Eq => ord == Ordering::Equal,
            Relation::Ge => ord != Ordering::Less,
            Relation::Gt => ord == Ordering::Greater,
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn constant_holds(&self) -> bool {
        let zero = Rational::zero();
        match self.relation {
            Relation::Eq => self.rhs == zero,
            Relation::Ge => zero >= self.rhs,
            Relation::Gt => zero > self.rhs,
        }
    }

    /// Scales to coprime integer coefficients (rhs stays rational); equalities
    /// get a positive leading coefficient. Constant constraints are returned unchanged.
    pub fn normalized(&self) -> LinearConstraint {
        if self.is_constant() {
            return self.clone();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut scale = Rational::new(lcm, g);
        if self.relation == Relation::Eq {
            let lead = self.coeffs.iter().find(|c| !c.is_zero()).expect("non-constant");
            if lead.is_negative() {
                scale = -scale;
            }
        }
        LinearConstraint {
            relation: self.relation,
            coeffs: self.coeffs.iter().map(|c| c * &scale).collect(),
            rhs: &self.rhs * &scale,
        }
    }

    /// The constraint on `-u`: `(-a) · u  rel  b`.
    pub fn negated_variables(&self) -> LinearConstraint {
        LinearConstraint {
            relation: self.relation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            rhs: self.rhs.clone(),
        }
        .normalized()
    }

    /// Complement of a single inequality (`None` for equalities).
    fn complement(&self) -> Option<LinearConstraint> {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        let rhs = -self.rhs.clone();
        match self.relation {
            Relation::Eq => None,
            Relation::Ge => Some(Self::gt(coeffs, rhs)),
            Relation::Gt => Some(Self::ge(coeffs, rhs)),
        }
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let m = c.abs();
            if !m.is_one() {
                write!(f, "{m}*")?;
            }
            write!(f, "u{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " {} {}", self.relation, self.rhs)
    }
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin core
// ---------------------------------------------------------------------------

/// `a · x >= b`, or `>` when strict.
#[derive(Clone, Debug)]
struct Ineq {
    a: Vec<Rational>,
    b: Rational,
    strict: bool,
}

impl Ineq {
    /// Normalizes the coefficient vector to primitive integers so parallel copies collide.
    fn normalize(mut self) -> Ineq {
        if self.a.iter().all(Zero::is_zero) {
            return self;
        }
        let c = LinearConstraint::ge(self.a, self.b).normalized();
        self.a = c.coeffs;
        self.b = c.rhs;
        self
    }
}

/// Keeps only the tightest of each family of parallel inequalities.
/// Returns `None` if a constant inequality is violated.
fn prune(ineqs: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
    for q in ineqs {
        let q = q.normalize();
        if q.a.iter().all(Zero::is_zero) {
            let zero = Rational::zero();
            let ok = if q.strict { zero > q.b } else { zero >= q.b };
            if !ok {
                return None;
            }
            continue;
        }
        match best.get_mut(&q.a) {
            Some((b, strict)) => {
                if q.b > *b {
                    *b = q.b;
                    *strict = q.strict;
                } else if q.b == *b {
                    *strict |= q.strict;
                }
            }
            None => {
                best.insert(q.a, (q.b, q.strict));
            }
        }
    }
    Some(best.into_iter().map(|(a, (b, strict))| Ineq { a, b, strict }).collect())
}

struct Substitution {
    var: usize,
    constant: Rational,
    /// `x_var = constant + Σ coeffs[k] x_k`
    coeffs: Vec<Rational>,
}

fn pick_value(lower: Option<(Rational, bool)>, upper: Option<(Rational, bool)>) -> Rational {
    let ok = |x: &Rational| {
        lower.as_ref().is_none_or(|(l, s)| if *s { x > l } else { x >= l })
            && upper.as_ref().is_none_or(|(u, s)| if *s { x < u } else { x <= u })
    };
    let zero = Rational::zero();
    if ok(&zero) {
        return zero;
    }
    let mut candidates = Vec::new();
    if let Some((l, s)) = &lower {
        let c = l.ceil();
        candidates.push(if *s && c == *l { c + Rational::one() } else { c });
    }
    if let Some((u, s)) = &upper {
        let c = u.floor();
        candidates.push(if *s && c == *u { c - Rational::one() } else { c });
    }
    if let Some((l, false)) = &lower {
        candidates.push(l.clone());
    }
    if let Some((u, false)) = &upper {
        candidates.push(u.clone());
    }
    if let (Some((l, _)), Some((u, _))) = (&lower, &upper) {
        candidates.push((l + u) / Rational::from_integer(2.into()));
    }
    candidates.into_iter().find(|c| ok(c)).expect("elimination guarantees a non-empty interval")
}

/// Decides feasibility of a constraint system and returns a witness point.
fn solve_system(dim: usize, constraints: &[LinearConstraint]) -> Option<Vec<Rational>> {
    let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for c in constraints {
        match c.relation {
            Relation::Eq => eqs.push((c.coeffs.clone(), c.rhs.clone())),
            Relation::Ge => ineqs.push(Ineq { a: c.coeffs.clone(), b: c.rhs.clone(), strict: false }),
            Relation::Gt => ineqs.push(Ineq { a: c.coeffs.clone(), b: c.rhs.clone(), strict: true }),
        }
    }

    // Gaussian substitution of the equalities.
    let mut subs: Vec<Substitution> = Vec::new();
    while let Some((a, b)) = eqs.pop() {
        let Some(j) = a.iter().position(|x| !x.is_zero()) else {
            if b.is_zero() {
                continue;
            }
            return None;
        };
        let inv = a[j].recip();
        let constant = &b * &inv;
        let mut coeffs: Vec<Rational> = a.iter().map(|x| -(x * &inv)).collect();
        coeffs[j] = Rational::zero();
        let apply = |row: &mut Vec<Rational>, rhs: &mut Rational| {
            if row[j].is_zero() {
                return;
            }
            let f = core::mem::replace(&mut row[j], Rational::zero());
            for (k, g) in coeffs.iter().enumerate() {
                if !g.is_zero() {
                    row[k] += &f * g;
                }
            }
            *rhs -= &f * &constant;
        };
        for (row, rhs) in eqs.iter_mut() {
            apply(row, rhs);
        }
        for q in ineqs.iter_mut() {
            apply(&mut q.a, &mut q.b);
        }
        subs.push(Substitution { var: j, constant, coeffs });
    }

    // Fourier–Motzkin on the remaining inequalities.
    let mut ineqs = prune(ineqs)?;
    let mut stages: Vec<(usize, Vec<Ineq>)> = Vec::new();
    loop {
        let candidate = (0..dim)
            .filter_map(|j| {
                let pos = ineqs.iter().filter(|q| q.a[j].is_positive()).count();
                let neg = ineqs.iter().filter(|q| q.a[j].is_negative()).count();
                (pos + neg > 0).then(|| (pos * neg, j))
            })
            .min();
        let Some((_, j)) = candidate else {
            break;
        };
        let (involved, rest): (Vec<Ineq>, Vec<Ineq>) = ineqs.into_iter().partition(|q| !q.a[j].is_zero());
        let mut next = rest;
        for p in involved.iter().filter(|q| q.a[j].is_positive()) {
            for n in involved.iter().filter(|q| q.a[j].is_negative()) {
                let wp = -n.a[j].clone();
                let wn = p.a[j].clone();
                let a = p.a.iter().zip(&n.a).map(|(x, y)| x * &wp + y * &wn).collect();
                let b = &p.b * &wp + &n.b * &wn;
                next.push(Ineq { a, b, strict: p.strict || n.strict });
            }
        }
        ineqs = prune(next)?;
        stages.push((j, involved));
    }

    // Back-substitution.
    let mut x = vec![Rational::zero(); dim];
    for (j, involved) in stages.iter().rev() {
        let mut lower: Option<(Rational, bool)> = None;
        let mut upper: Option<(Rational, bool)> = None;
        for q in involved {
            let rest: Rational = q
                .a
                .iter()
                .enumerate()
                .filter(|(k, c)| *k != *j && !c.is_zero())
                .fold(Rational::zero(), |acc, (k, c)| acc + c * &x[k]);
            let bound = (&q.b - rest) / &q.a[*j];
            if q.a[*j].is_positive() {
                let replace = match &lower {
                    None => true,
                    Some((l, s)) => bound > *l || (bound == *l && q.strict && !*s),
                };
                if replace {
                    lower = Some((bound, q.strict));
                }
            } else {
                let replace = match &upper {
                    None => true,
                    Some((u, s)) => bound < *u || (bound == *u && q.strict && !*s),
                };
                if replace {
                    upper = Some((bound, q.strict));
                }
            }
        }
        x[*j] = pick_value(lower, upper);
    }
    for s in subs.iter().rev() {
        let v = s.coeffs.iter().enumerate().fold(s.constant.clone(), |acc, (k, c)| {
            if c.is_zero() {
                acc
            } else {
                acc + c * &x[k]
            }
        });
        x[s.var] = v;
    }
    debug_assert!(constraints.iter().all(|c| c.is_satisfied_by(&x)));
    Some(x)
}

// ---------------------------------------------------------------------------
// Polyhedra
// ---------------------------------------------------------------------------

/// A half-open interval of the ray parameter `t > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamInterval {
    pub lower: Rational,
    pub lower_strict: bool,
    /// `None` means unbounded above.
    pub upper: Option<(Rational, bool)>,
}

impl ParamInterval {
    pub fn contains(&self, t: &Rational) -> bool {
        let lo = if self.lower_strict { *t > self.lower } else { *t >= self.lower };
        lo && self.upper.as_ref().is_none_or(|(u, s)| if *s { t < u } else { t <= u })
    }

    /// Some parameter inside the interval.
    pub fn sample(&self) -> Rational {
        pick_value(Some((self.lower.clone(), self.lower_strict)), self.upper.clone())
    }
}

impl fmt::Display for ParamInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}, ", if self.lower_strict { "(" } else { "[" }, self.lower)?;
        match &self.upper {
            None => f.write_str("inf)"),
            Some((u, s)) => write!(f, "{}{}", u, if *s { ")" } else { "]" }),
        }
    }
}

/// Vertices and extreme rays of a pointed polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<Vec<Rational>>,
    /// Primitive integer directions.
    pub rays: Vec<Vec<Rational>>,
}

/// `{u ∈ Q^d : every constraint holds}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPolyhedron {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

impl HPolyhedron {
    /// Normalizes, drops tautologies and duplicates, and sorts the constraints.
    pub fn new(dim: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        for c in &constraints {
            if c.coeffs.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.coeffs.len() });
            }
        }
        Ok(Self::from_normalized(dim, constraints))
    }

    fn from_normalized(dim: usize, constraints: Vec<LinearConstraint>) -> Self {
        let mut set = BTreeSet::new();
        for c in constraints {
            if c.is_constant() {
                if c.constant_holds() {
                    continue;
                }
                return Self::empty(dim);
            }
            set.insert(c.normalized());
        }
        HPolyhedron { dim, constraints: set.into_iter().collect() }
    }

    pub fn universe(dim: usize) -> Self {
        HPolyhedron { dim, constraints: Vec::new() }
    }

    /// The canonical empty polyhedron `{0 >= 1}`.
    pub fn empty(dim: usize) -> Self {
        HPolyhedron {
            dim,
            constraints: vec![LinearConstraint::ge(vec![Rational::zero(); dim], Rational::one())],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn has_strict(&self) -> bool {
        self.constraints.iter().any(|c| c.relation == Relation::Gt)
    }

    pub fn contains(&self, u: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied_by(u))
    }

    pub fn witness(&self) -> Option<Vec<Rational>> {
        solve_system(self.dim, &self.constraints)
    }

    pub fn is_feasible(&self) -> bool {
        self.witness().is_some()
    }

    pub fn with_constraint(&self, c: LinearConstraint) -> Result<Self> {
        let mut cs = self.constraints.clone();
        cs.push(c);
        Self::new(self.dim, cs)
    }

    fn feasible_with(&self, skip: Option<usize>, extra: &[LinearConstraint]) -> bool {
        let cs: Vec<LinearConstraint> = self
            .constraints
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, c)| c.clone())
            .chain(extra.iter().cloned())
            .collect();
        solve_system(self.dim, &cs).is_some()
    }

    /// Whether every point of `self` satisfies `c`.
    pub fn implies(&self, c: &LinearConstraint) -> bool {
        match c.complement() {
            Some(neg) => !self.feasible_with(None, &[neg]),
            None => {
                let ge = LinearConstraint::ge(c.coeffs.clone(), c.rhs.clone());
                let le = LinearConstraint::le(c.coeffs.clone(), c.rhs.clone());
                self.implies(&ge) && self.implies(&le)
            }
        }
    }

    pub fn is_subset_of(&self, other: &HPolyhedron) -> bool {
        !self.is_feasible() || other.constraints.iter().all(|c| self.implies(c))
    }

    pub fn same_set(&self, other: &HPolyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Affine hull equalities, explicit and implied, in reduced row echelon form.
    fn affine_hull_rows(&self) -> Vec<Vec<Rational>> {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for c in &self.constraints {
            let implicit = match c.relation {
                Relation::Eq => true,
                Relation::Ge => !self.feasible_with(None, &[LinearConstraint::gt(c.coeffs.clone(), c.rhs.clone())]),
                Relation::Gt => false,
            };
            if implicit {
                let mut row = c.coeffs.clone();
                row.push(c.rhs.clone());
                rows.push(row);
            }
        }
        rref(&mut rows, self.dim);
        rows
    }

    /// Affine dimension; -1 when empty.
    pub fn dimension(&self) -> isize {
        if !self.is_feasible() {
            return -1;
        }
        let rows = self.affine_hull_rows();
        self.dim as isize - rows.len() as isize
    }

    /// An equivalent irredundant system: implied equalities made explicit and
    /// reduced, inequalities reduced modulo the equalities, redundant ones removed.
    pub fn remove_redundant(&self) -> Self {
        if !self.is_feasible() {
            return Self::empty(self.dim);
        }
        let eq_rows = self.affine_hull_rows();
        let pivots: Vec<usize> = eq_rows
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("non-zero row"))
            .collect();
        let equalities: Vec<LinearConstraint> = eq_rows
            .iter()
            .map(|r| LinearConstraint::eq(r[..self.dim].to_vec(), r[self.dim].clone()).normalized())
            .collect();
        let mut inequalities: Vec<LinearConstraint> = Vec::new();
        for c in &self.constraints {
            if c.relation == Relation::Eq {
                continue;
            }
            let mut coeffs = c.coeffs.clone();
            let mut rhs = c.rhs.clone();
            for (row, &p) in eq_rows.iter().zip(&pivots) {
                if !coeffs[p].is_zero() {
                    let f = coeffs[p].clone();
                    for k in 0..self.dim {
                        coeffs[k] -= &f * &row[k];
                    }
                    rhs -= &f * &row[self.dim];
                }
            }
            let reduced = LinearConstraint::new(coeffs, c.relation, rhs);
            if reduced.is_constant() {
                // holds on the affine hull, since the polyhedron is non-empty
                continue;
            }
            inequalities.push(reduced.normalized());
        }
        let mut current = Self::from_normalized(self.dim, equalities.iter().cloned().chain(inequalities).collect());
        let mut i = 0;
        while i < current.constraints.len() {
            let c = current.constraints[i].clone();
            if c.relation != Relation::Eq {
                let neg = c.complement().expect("inequality");
                if !current.feasible_with(Some(i), &[neg]) {
                    current.constraints.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        current
    }

    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let cs = self.constraints.iter().chain(&other.constraints).cloned().collect();
        Ok(Self::from_normalized(self.dim, cs).remove_redundant())
    }

    /// `{-u : u ∈ self}`.
    pub fn negated(&self) -> Self {
        Self::from_normalized(self.dim, self.constraints.iter().map(|c| c.negated_variables()).collect())
    }

    /// `{u + t : u ∈ self}`.
    pub fn translated(&self, t: &[Rational]) -> Self {
        let cs = self
            .constraints
            .iter()
            .map(|c| LinearConstraint::new(c.coeffs.clone(), c.relation, &c.rhs + dot(&c.coeffs, t)))
            .collect();
        Self::from_normalized(self.dim, cs)
    }

    /// `{λu : u ∈ self}` for `λ > 0`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        assert!(lambda.is_positive(), "scale factor must be positive");
        let cs = self
            .constraints
            .iter()
            .map(|c| LinearConstraint::new(c.coeffs.clone(), c.relation, &c.rhs * lambda))
            .collect();
        Self::from_normalized(self.dim, cs)
    }

    /// Topological closure (strict inequalities relaxed), valid for non-empty sets.
    pub fn closure(&self) -> Self {
        let cs = self
            .constraints
            .iter()
            .map(|c| match c.relation {
                Relation::Gt => LinearConstraint::ge(c.coeffs.clone(), c.rhs.clone()),
                _ => c.clone(),
            })
            .collect();
        Self::from_normalized(self.dim, cs)
    }

    /// The set of `t > 0` with `t·v ∈ self`, or `None` if the open ray misses.
    pub fn ray_interval(&self, v: &[Rational]) -> Result<Option<ParamInterval>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroDirection);
        }
        let mut lower = (Rational::zero(), true);
        let mut upper: Option<(Rational, bool)> = None;
        let tighten_lower = |lower: &mut (Rational, bool), b: Rational, s: bool| {
            if b > lower.0 {
                *lower = (b, s);
            } else if b == lower.0 {
                lower.1 |= s;
            }
        };
        let tighten_upper = |upper: &mut Option<(Rational, bool)>, b: Rational, s: bool| match upper {
            Some((u, us)) if b > *u || (b == *u && !s) => {
                let _ = us;
            }
            Some((u, us)) if b == *u => *us |= s,
            _ => *upper = Some((b, s)),
        };
        for c in &self.constraints {
            let k = dot(&c.coeffs, v);
            if k.is_zero() {
                let zero = Rational::zero();
                let ok = match c.relation {
                    Relation::Eq => zero == c.rhs,
                    Relation::Ge => zero >= c.rhs,
                    Relation::Gt => zero > c.rhs,
                };
                if !ok {
                    return Ok(None);
                }
                continue;
            }
            let bound = &c.rhs / &k;
            match c.relation {
                Relation::Eq => {
                    tighten_lower(&mut lower, bound.clone(), false);
                    tighten_upper(&mut upper, bound, false);
                }
                rel => {
                    let strict = rel == Relation::Gt;
                    if k.is_positive() {
                        tighten_lower(&mut lower, bound, strict);
                    } else {
                        tighten_upper(&mut upper, bound, strict);
                    }
                }
            }
        }
        let nonempty = match &upper {
            None => true,
            Some((u, us)) => lower.0 < *u || (lower.0 == *u && !lower.1 && !*us),
        };
        Ok(nonempty.then_some(ParamInterval { lower: lower.0, lower_strict: lower.1, upper }))
    }

    /// Whether the open half-line `(0, ∞)·v` meets the polyhedron.
    pub fn ray_hits(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.ray_interval(v)?.is_some())
    }

    /// The recession cone of the closure.
    pub fn recession_cone(&self) -> Self {
        let cs = self
            .constraints
            .iter()
            .map(|c| {
                let rel = if c.relation == Relation::Eq { Relation::Eq } else { Relation::Ge };
                LinearConstraint::new(c.coeffs.clone(), rel, Rational::zero())
            })
            .collect();
        Self::from_normalized(self.dim, cs)
    }

    pub fn is_bounded(&self) -> bool {
        !self.is_feasible() || self.recession_cone().dimension() == 0
    }

    /// Vertices and extreme rays of the closure, when it is non-empty and pointed.
    pub fn vertices_and_rays(&self) -> Option<VRep> {
        let p = self.closure().remove_redundant();
        if !p.is_feasible() {
            return None;
        }
        let d = self.dim;
        let eqs: Vec<&LinearConstraint> = p.constraints.iter().filter(|c| c.relation == Relation::Eq).collect();
        let ineqs: Vec<&LinearConstraint> = p.constraints.iter().filter(|c| c.relation != Relation::Eq).collect();
        let normals: Vec<Vec<Rational>> = p.constraints.iter().map(|c| c.coeffs.clone()).collect();
        if rank(&normals, d) < d {
            return None;
        }
        let eq_rank = eqs.len();
        let k = d - eq_rank;

        let mut vertices: Vec<Vec<Rational>> = Vec::new();
        for subset in combinations(ineqs.len(), k) {
            let mut rows: Vec<Vec<Rational>> = eqs
                .iter()
                .chain(subset.iter().map(|&i| &ineqs[i]))
                .map(|c| {
                    let mut r = c.coeffs.clone();
                    r.push(c.rhs.clone());
                    r
                })
                .collect();
            let pivots = rref(&mut rows, d);
            if pivots.len() < d || pivots.len() != rows.len() {
                continue;
            }
            let x: Vec<Rational> = rows.iter().map(|r| r[d].clone()).collect();
            if p.contains(&x) && !vertices.contains(&x) {
                vertices.push(x);
            }
        }

        let mut rays: Vec<Vec<Rational>> = Vec::new();
        if k >= 1 {
            for subset in combinations(ineqs.len(), k - 1) {
                let rows: Vec<Vec<Rational>> = eqs
                    .iter()
                    .chain(subset.iter().map(|&i| &ineqs[i]))
                    .map(|c| c.coeffs.clone())
                    .collect();
                let ns = nullspace(&rows, d);
                if ns.len() != 1 {
                    continue;
                }
                for sign in [Rational::one(), -Rational::one()] {
                    let r: Vec<Rational> = ns[0].iter().map(|x| x * &sign).collect();
                    if ineqs.iter().all(|c| !dot(&c.coeffs, &r).is_negative()) {
                        let prim: Vec<Rational> = crate::linalg::primitive_integer(&r)
                            .into_iter()
                            .map(Rational::from_integer)
                            .collect();
                        if !rays.contains(&prim) {
                            rays.push(prim);
                        }
                    }
                }
            }
        }
        vertices.sort();
        rays.sort();
        Some(VRep { vertices, rays })
    }

    /// The convex hull of finitely many points.
    pub fn convex_hull(dim: usize, points: &[Vec<Rational>]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Ok(Self::empty(dim));
        };
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
        }
        let diffs: Vec<Vec<Rational>> = points.iter().map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
        let mut constraints: Vec<LinearConstraint> = nullspace(&diffs, dim)
            .into_iter()
            .map(|w| {
                let rhs = dot(&w, first);
                LinearConstraint::eq(w, rhs)
            })
            .collect();
        let mut basis = diffs.clone();
        let pivots = rref(&mut basis, dim);
        let chart: Vec<Vec<Rational>> = points.iter().map(|p| pivots.iter().map(|&c| &p[c] - &first[c]).collect()).collect();
        for (h, c, _) in hull_facets(&chart) {
            let mut coeffs = vec![Rational::zero(); dim];
            let mut rhs = c;
            for (hv, &pc) in h.iter().zip(&pivots) {
                coeffs[pc] = hv.clone();
                rhs += hv * &first[pc];
            }
            constraints.push(LinearConstraint::ge(coeffs, rhs));
        }
        Self::new(dim, constraints)
    }
}

impl fmt::Display for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.constraints.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// Facets of the convex hull of points whose affine hull is all of `Q^r`,
/// as `(h, c, points on the facet)` with `h·p >= c` for every point.
pub(crate) fn hull_facets(points: &[Vec<Rational>]) -> Vec<(Vec<Rational>, Rational, Vec<usize>)> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let r = first.len();
    if r == 0 {
        return Vec::new();
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for subset in combinations(points.len(), r) {
        let base = &points[subset[0]];
        let diffs: Vec<Vec<Rational>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let ns = nullspace(&diffs, r);
        if ns.len() != 1 {
            continue;
        }
        let mut h = ns.into_iter().next().expect("one vector");
        let mut c = dot(&h, base);
        let values: Vec<Rational> = points.iter().map(|p| dot(&h, p) - &c).collect();
        if values.iter().any(Signed::is_negative) {
            if values.iter().any(Signed::is_positive) {
                continue;
            }
            h = h.into_iter().map(|x| -x).collect();
            c = -c;
        }
        let on: Vec<usize> = values.iter().enumerate().filter(|(_, v)| v.is_zero()).map(|(i, _)| i).collect();
        if seen.insert(on.clone()) {
            out.push((h, c, on));
        }
    }
    out
}

/// A closed cell of a polyhedral complex with its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub polyhedron: HPolyhedron,
    /// For tropical complexes: the support points attaining the minimum on the cell.
    pub label: BTreeSet<ExpVec>,
    /// Affine dimension of the cell.
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    dim: usize,
    cells: Vec<Cell>,
}

impl CellComplex {
    pub fn new(dim: usize, cells: Vec<Cell>) -> Result<Self> {
        for c in &cells {
            if c.polyhedron.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.polyhedron.dim() });
            }
        }
        Ok(CellComplex { dim, cells })
    }

    pub fn empty(dim: usize) -> Self {
        CellComplex { dim, cells: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, u: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.polyhedron.contains(u))
    }

    /// Sorts cells by dimension, then by constraint list.
    pub fn sort_canonical(&mut self) {
        self.cells.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then_with(|| a.polyhedron.constraints().cmp(b.polyhedron.constraints()))
                .then_with(|| a.label.cmp(&b.label))
        });
    }

    /// Pairs of cells whose intersection is non-empty.
    pub fn adjacency(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.cells.len() {
            for j in i + 1..self.cells.len() {
                let a = &self.cells[i].polyhedron;
                let b = &self.cells[j].polyhedron;
                let cs: Vec<LinearConstraint> = a.constraints.iter().chain(&b.constraints).cloned().collect();
                if solve_system(self.dim, &cs).is_some() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Indices of cells not contained in another cell.
    pub fn maximal_cells(&self) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| {
                !(0..self.cells.len()).any(|j| {
                    j != i
                        && self.cells[j].dim > self.cells[i].dim
                        && self.cells[i].polyhedron.is_subset_of(&self.cells[j].polyhedron)
                })
            })
            .collect()
    }

    pub fn connected_components(&self) -> usize {
        connected_components(self)
    }
}

/// Number of connected components of the union of the cells.
pub fn connected_components(complex: &CellComplex) -> usize {
    let n = complex.cells.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, j) in complex.adjacency() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a] = b;
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}
