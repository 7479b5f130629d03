//! Rational numbers, the places of Q, and valuations.
//!
//! Non-archimedean quantities are kept in valuation units: the value at
//! `Finite(p)` is `ord_p`, and the `log p` scale is carried alongside
//! instead of being multiplied in. Only the archimedean place produces
//! floating point numbers.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A rational prime, checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `log p`, the factor converting valuation units to log-absolute-value units.
    pub fn ln(self) -> f64 {
        libm::log(self.0 as f64)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A place of Q.
///
/// `Generic` stands for every prime at which all coefficients under
/// consideration are units; all such primes give identical geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Prime),
    Generic,
    Archimedean,
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        Prime::new(p).map(Place::Finite)
    }

    pub fn is_archimedean(self) -> bool {
        matches!(self, Place::Archimedean)
    }

    pub(crate) fn require_non_archimedean(self) -> Result<()> {
        if self.is_archimedean() {
            Err(Error::ArchimedeanPlace)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Generic => f.write_str("generic"),
            Place::Archimedean => f.write_str("arch"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "generic" => Ok(Place::Generic),
            "arch" | "inf" | "infinity" => Ok(Place::Archimedean),
            other => {
                let p: u64 = other
                    .parse()
                    .map_err(|_| Error::InvalidPlace(other.into()))?;
                Place::finite(p)
            }
        }
    }
}

/// A value of a valuation: a rational or `+∞` (only for zero).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(Rational),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

/// `log|q|_place`. Finite places keep the answer as `coeff · log p`.
#[derive(Clone, Debug, PartialEq)]
pub enum AbsLog {
    /// `coeff · log p`; `prime` is `None` at the generic place, where `coeff` is always 0.
    Scaled { coeff: Rational, prime: Option<Prime> },
    Real(f64),
}

impl AbsLog {
    pub fn to_f64(&self) -> f64 {
        match self {
            AbsLog::Scaled { coeff, prime } => match prime {
                Some(p) => rational_to_f64(coeff) * p.ln(),
                None => 0.0,
            },
            AbsLog::Real(x) => *x,
        }
    }
}

/// Exponent of `p` in `n` (n > 0).
fn ord_biguint(n: &BigUint, p: u64) -> i64 {
    let p = BigUint::from(p);
    let mut m = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

/// `ord_p(q)` for `q != 0`.
pub fn ord_p(q: &Rational, p: Prime) -> i64 {
    debug_assert!(!q.is_zero());
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    ord_biguint(num, p.get()) - ord_biguint(den, p.get())
}

pub fn val(q: &Rational, place: Place) -> Result<Valuation> {
    match place {
        Place::Archimedean => Err(Error::ArchimedeanPlace),
        _ if q.is_zero() => Ok(Valuation::Infinite),
        Place::Generic => Ok(Valuation::Finite(Rational::zero())),
        Place::Finite(p) => Ok(Valuation::Finite(int(ord_p(q, p)))),
    }
}

/// Valuation of a coefficient that is known to be non-zero.
pub(crate) fn val_nonzero(q: &Rational, place: Place) -> Result<Rational> {
    match val(q, place)? {
        Valuation::Finite(v) => Ok(v),
        Valuation::Infinite => Err(Error::ZeroValue),
    }
}

pub fn abs_log(q: &Rational, place: Place) -> Result<AbsLog> {
    if q.is_zero() {
        return Err(Error::ZeroValue);
    }
    Ok(match place {
        Place::Finite(p) => AbsLog::Scaled {
            coeff: -int(ord_p(q, p)),
            prime: Some(p),
        },
        Place::Generic => AbsLog::Scaled {
            coeff: Rational::zero(),
            prime: None,
        },
        Place::Archimedean => AbsLog::Real(ln_abs(q)),
    })
}

fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        libm::log(n.to_f64().unwrap_or(f64::INFINITY))
    } else {
        let shift = bits - 64;
        let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
        libm::log(top) + shift as f64 * core::f64::consts::LN_2
    }
}

/// `ln|q|` for non-zero `q`, robust for numerators and denominators far outside f64 range.
pub fn ln_abs(q: &Rational) -> f64 {
    ln_biguint(q.numer().magnitude()) - ln_biguint(q.denom().magnitude())
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let mag = libm::exp(ln_abs(q));
        if q.is_negative() {
            -mag
        } else {
            mag
        }
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve prime bases are exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division. Fails only if a prime factor exceeds `u64`.
pub fn factorize(n: &BigUint) -> Result<Vec<(Prime, u32)>> {
    let mut out = Vec::new();
    if n.is_zero() {
        return Err(Error::ZeroValue);
    }
    let mut m = n.clone();
    let mut d: u64 = 2;
    loop {
        let dd = BigUint::from(d) * d;
        if dd > m {
            break;
        }
        let big_d = BigUint::from(d);
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&big_d);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((Prime(d), e));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if !m.is_one() {
        let p = m.to_u64().ok_or(Error::PrimeTooLarge)?;
        out.push((Prime(p), 1));
    }
    Ok(out)
}

/// Checks `|q|_∞ = ∏_p p^{ord_p(q)}` exactly, the logarithmic form of `∏_{v} |q|_v = 1`.
pub fn product_formula_check(q: &Rational) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ZeroValue);
    }
    let mut primes = relevant_primes(core::slice::from_ref(q))?;
    primes.dedup();
    let mut product = Rational::one();
    for p in primes {
        let k = ord_p(q, p);
        let base = Rational::from_integer(BigInt::from(p.get()));
        let pk = num_traits::pow(base, k.unsigned_abs() as usize);
        if k >= 0 {
            product *= pk;
        } else {
            product /= pk;
        }
    }
    Ok(product == q.abs())
}

/// Primes at which some coefficient is not a unit, sorted ascending.
pub fn relevant_primes(coeffs: &[Rational]) -> Result<Vec<Prime>> {
    let mut primes = Vec::new();
    for c in coeffs {
        if c.is_zero() {
            return Err(Error::ZeroValue);
        }
        for part in [c.numer().magnitude(), c.denom().magnitude()] {
            primes.extend(factorize(part)?.into_iter().map(|(p, _)| p));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn p(n: u64) -> Place {
        Place::finite(n).unwrap()
    }

    #[test]
    fn valuations_at_finite_places() {
        assert_eq!(val(&int(3), p(3)).unwrap(), Valuation::Finite(int(1)));
        assert_eq!(val(&int(0), p(2)).unwrap(), Valuation::Infinite);
        assert_eq!(val(&frac(7, 10), p(5)).unwrap(), Valuation::Finite(int(-1)));
        assert_eq!(val(&frac(7, 10), Place::Generic).unwrap(), Valuation::Finite(int(0)));
        assert_eq!(val(&int(3), Place::Archimedean), Err(Error::ArchimedeanPlace));
    }

    #[test]
    fn abs_logs() {
        assert_eq!(
            abs_log(&int(3), p(3)).unwrap(),
            AbsLog::Scaled { coeff: int(-1), prime: Some(Prime(3)) }
        );
        assert_eq!(abs_log(&int(1), Place::Archimedean).unwrap(), AbsLog::Real(0.0));
        let l = abs_log(&int(-2), Place::Archimedean).unwrap().to_f64();
        assert!((l - core::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(abs_log(&int(0), Place::Archimedean), Err(Error::ZeroValue));
    }

    #[test]
    fn huge_rationals_still_have_finite_logs() {
        let big = num_traits::pow(int(10), 400);
        let l = ln_abs(&big);
        assert!((l - 400.0 * libm::log(10.0)).abs() < 1e-9);
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(Place::finite(4).is_err());
        assert_eq!("generic".parse::<Place>().unwrap(), Place::Generic);
        assert_eq!("5".parse::<Place>().unwrap(), p(5));
        assert!("6".parse::<Place>().is_err());
    }

    #[test]
    fn product_formula_examples() {
        assert!(product_formula_check(&int(6)).unwrap());
        assert!(product_formula_check(&frac(-35, 4)).unwrap());
        assert!(product_formula_check(&int(1)).unwrap());
        assert!(product_formula_check(&int(0)).is_err());
    }

    #[test]
    fn relevant_prime_examples() {
        assert_eq!(relevant_primes(&[int(3), int(1), int(1)]).unwrap(), vec![Prime(3)]);
        assert_eq!(relevant_primes(&[int(1), int(1), int(1), int(4)]).unwrap(), vec![Prime(2)]);
        assert!(relevant_primes(&[int(1)]).unwrap().is_empty());
        assert_eq!(relevant_primes(&[int(0)]), Err(Error::ZeroValue));
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-5000i64..5000, 1i64..5000)
            .prop_filter("non-zero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn valuation_axioms(a in nonzero_rational(), b in nonzero_rational(), q in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
            let place = p(q);
            let va = val_nonzero(&a, place).unwrap();
            let vb = val_nonzero(&b, place).unwrap();
            prop_assert_eq!(val(&(&a * &b), place).unwrap(), Valuation::Finite(&va + &vb));
            let sum = &a + &b;
            if let Valuation::Finite(vs) = val(&sum, place).unwrap() {
                prop_assert!(vs >= va.clone().min(vb.clone()));
            }
        }

        #[test]
        fn product_formula_holds(a in nonzero_rational()) {
            prop_assert!(product_formula_check(&a).unwrap());
        }

        #[test]
        fn relevant_primes_monotone(cs in prop::collection::vec(nonzero_rational(), 1..6), k in 0usize..6) {
            let all = relevant_primes(&cs).unwrap();
            let sub = relevant_primes(&cs[..k.min(cs.len())]).unwrap();
            prop_assert!(sub.iter().all(|p| all.contains(p)));
        }
    }
}
