//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` of
//! `Q[x]/(Phi_N)`. Operands with different conductors are embedded into the
//! least common conductor before combining; results are never shrunk back.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Rational numbers, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("bad rational {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| gcd(k as u64, n as u64) == 1).count() as u32
}

/// Integer coefficients of the cyclotomic polynomial `Phi_n`, lowest degree
/// first. Results are memoized process-wide.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of index 0");
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let divisor = cyclotomic_polynomial(d);
        num = exact_monic_division(&num, &divisor);
    }
    let poly = Arc::new(num);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Reduce a raw coefficient vector modulo `Phi_n` in place and truncate to
/// `phi(n)` entries.
fn reduce_mod_phi(raw: &mut Vec<Rational>, n: u32) {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..raw.len()).rev() {
        if raw[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut raw[i], Rational::zero());
        for (j, &pj) in phi[..deg].iter().enumerate() {
            if pj != 0 {
                raw[i - deg + j] -= &c * Rational::from_integer(BigInt::from(pj));
            }
        }
    }
    raw.resize(deg, Rational::zero());
}

fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trimmed(out)
}

/// Quotient and remainder; `b` must be nonzero and trimmed.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trimmed(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().expect("nonzero divisor").recip();
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + b.len() - 1] * &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    rem.truncate(b.len() - 1);
    (trimmed(quot), trimmed(rem))
}

const SMALL: i64 = 1 << 40;

fn small_integers(coeffs: &[Rational]) -> Option<Vec<i64>> {
    coeffs
        .iter()
        .map(|c| {
            if !c.is_integer() {
                return None;
            }
            let v = num_traits::ToPrimitive::to_i64(c.numer())?;
            (v.abs() < SMALL).then_some(v)
        })
        .collect()
}

/// Product of two elements with small integer coefficients in machine
/// integers; `None` when an operand does not qualify or a step overflows.
fn small_integer_product(a: &Cyclo, b: &Cyclo) -> Option<Cyclo> {
    let x = small_integers(&a.coeffs)?;
    let y = small_integers(&b.coeffs)?;
    let deg = x.len();
    let mut raw = vec![0i128; (2 * deg).saturating_sub(1).max(1)];
    for (i, &u) in x.iter().enumerate() {
        if u == 0 {
            continue;
        }
        for (j, &v) in y.iter().enumerate() {
            raw[i + j] = raw[i + j].checked_add(u as i128 * v as i128)?;
        }
    }
    reduce_small(raw, a.conductor).map(|coeffs| Cyclo {
        conductor: a.conductor,
        coeffs,
    })
}

/// `reduce_mod_phi` in machine integers; `None` on overflow.
fn reduce_small(mut raw: Vec<i128>, n: u32) -> Option<Vec<Rational>> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..raw.len()).rev() {
        let c = std::mem::take(&mut raw[i]);
        if c == 0 {
            continue;
        }
        for (j, &pj) in phi[..deg].iter().enumerate() {
            if pj != 0 {
                let t = c.checked_mul(pj as i128)?;
                raw[i - deg + j] = raw[i - deg + j].checked_sub(t)?;
            }
        }
    }
    raw.resize(deg, 0);
    Some(
        raw.into_iter()
            .map(|v| Rational::from_integer(BigInt::from(v)))
            .collect(),
    )
}

/// An element of `Q(zeta_N)`.
#[derive(Clone)]
pub struct Cyclo {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclo {
    pub fn zero(conductor: u32) -> Self {
        let deg = cyclotomic_polynomial(conductor).len() - 1;
        Cyclo {
            conductor,
            coeffs: vec![Rational::zero(); deg],
        }
    }

    pub fn from_rational(value: Rational, conductor: u32) -> Self {
        let mut out = Self::zero(conductor);
        out.coeffs[0] = value;
        out
    }

    pub fn from_int(value: i64, conductor: u32) -> Self {
        Self::from_rational(int(value), conductor)
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_int(1, conductor)
    }

    /// `zeta_N^k`, any integer `k`.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        Self::from_exponents(conductor, [(k, int(1))])
    }

    /// Canonical element for `sum c * zeta_N^k` over the given terms.
    pub fn from_exponents<I>(conductor: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(conductor >= 1, "conductor must be positive");
        let n = conductor as usize;
        let terms: Vec<(i64, Rational)> = terms.into_iter().collect();
        let small = terms.iter().all(|(_, c)| {
            c.is_integer() && num_traits::ToPrimitive::to_i64(c.numer()).is_some_and(|v| v.abs() < SMALL)
        });
        if small {
            let mut raw = vec![0i128; n.max(1)];
            for (k, c) in &terms {
                let idx = k.rem_euclid(conductor as i64) as usize;
                raw[idx] += num_traits::ToPrimitive::to_i64(c.numer()).expect("checked") as i128;
            }
            if let Some(coeffs) = reduce_small(raw, conductor) {
                return Cyclo { conductor, coeffs };
            }
        }
        let mut raw = vec![Rational::zero(); n.max(1)];
        for (k, c) in terms {
            let idx = k.rem_euclid(conductor as i64) as usize;
            raw[idx] += c;
        }
        reduce_mod_phi(&mut raw, conductor);
        Cyclo {
            conductor,
            coeffs: raw,
        }
    }

    /// Build from power-basis coefficients, reducing if the vector is longer
    /// than `phi(N)`.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        let mut raw = coeffs;
        let deg = cyclotomic_polynomial(conductor).len() - 1;
        if raw.len() < deg {
            raw.resize(deg, Rational::zero());
        }
        reduce_mod_phi(&mut raw, conductor);
        Ok(Cyclo {
            conductor,
            coeffs: raw,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Represent the same field element at conductor `target` (a multiple of
    /// the current conductor).
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == 0 {
            return Err(Error::ZeroConductor);
        }
        if !target.is_multiple_of(self.conductor) {
            return Err(Error::NotAMultiple {
                from: self.conductor,
                to: target,
            });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as i64;
        Ok(Self::from_exponents(
            target,
            self.terms().map(|(k, c)| (k * step, c.clone())),
        ))
    }

    fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c))
    }

    fn aligned(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        let m = lcm(a.conductor, b.conductor);
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    /// Galois automorphism `zeta_N -> zeta_N^k`.
    pub fn conjugate(&self, k: i64) -> Result<Self> {
        let n = self.conductor as i64;
        if gcd(k.rem_euclid(n.max(1)) as u64, n as u64) != 1 && n > 1 {
            return Err(Error::NonCoprimeExponent {
                k,
                conductor: self.conductor,
            });
        }
        Ok(Self::from_exponents(
            self.conductor,
            self.terms().map(|(e, c)| (e * k, c.clone())),
        ))
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        self.conjugate(-1).expect("-1 is a unit mod every conductor")
    }

    pub fn as_rational(&self) -> Result<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational)
        }
    }

    /// Integer value, if the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let q = self.as_rational().ok()?;
        q.is_integer().then(|| q.to_integer())
    }

    pub fn scale(&self, by: &Rational) -> Self {
        if by.is_one() {
            return self.clone();
        }
        Cyclo {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| if c.is_zero() { Rational::zero() } else { c * by })
                .collect(),
        }
    }

    /// Power-basis coefficients as machine integers, if all are integers of
    /// moderate size.
    pub fn small_integer_coeffs(&self) -> Option<Vec<i64>> {
        small_integers(&self.coeffs)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo::one(self.conductor);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Units `k` in `[1, N)` coprime to the conductor; one per Galois
    /// automorphism.
    pub fn galois_exponents(conductor: u32) -> Vec<i64> {
        if conductor <= 2 {
            return vec![1];
        }
        (1..conductor as i64)
            .filter(|&k| gcd(k as u64, conductor as u64) == 1)
            .collect()
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> Rational {
        let mut acc = Cyclo::one(self.conductor);
        for k in Self::galois_exponents(self.conductor) {
            acc = &acc * &self.conjugate(k).unwrap();
        }
        acc.as_rational().expect("norm is rational")
    }

    /// Multiplicative inverse; `None` for zero. Extended Euclid against
    /// `Phi_N` in `Q[x]`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| int(c))
            .collect();
        // invariant: t_k * self = r_k (mod Phi_N)
        let (mut r0, mut r1) = (modulus, trimmed(self.coeffs.clone()));
        let (mut t0, mut t1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            (r0, r1) = (r1, r);
            (t0, t1) = (t1, t2);
        }
        let c = r1[0].recip();
        let mut coeffs: Vec<Rational> = t1.into_iter().map(|x| x * &c).collect();
        reduce_mod_phi(&mut coeffs, self.conductor);
        Some(Cyclo {
            conductor: self.conductor,
            coeffs,
        })
    }

    /// Stable text key, used for hashing elements at a fixed conductor.
    pub fn key(&self) -> String {
        let mut s = String::new();
        for c in &self.coeffs {
            s.push_str(&c.to_string());
            s.push(',');
        }
        s
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        (self - other).is_zero()
    }
}

impl Eq for Cyclo {}

impl PartialOrd for Cyclo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on power-basis coefficients at the common conductor.
impl Ord for Cyclo {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.conductor == other.conductor {
            return self.coeffs.cmp(&other.coeffs);
        }
        let (a, b) = Cyclo::aligned(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[{}]({})", self.conductor, self)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{k}", self.conductor)?,
                (_, false) => write!(f, "{mag}*z{}^{k}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        if self.conductor != rhs.conductor {
            let (a, b) = Cyclo::aligned(self, rhs);
            return &a + &b;
        }
        Cyclo {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        if self.conductor != rhs.conductor {
            let (a, b) = Cyclo::aligned(self, rhs);
            return &a - &b;
        }
        Cyclo {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if self.conductor != rhs.conductor {
            let (a, b) = Cyclo::aligned(self, rhs);
            return &a * &b;
        }
        if let Some(product) = small_integer_product(self, rhs) {
            return product;
        }
        let deg = self.coeffs.len();
        let mut raw = vec![Rational::zero(); (2 * deg).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        reduce_mod_phi(&mut raw, self.conductor);
        Cyclo {
            conductor: self.conductor,
            coeffs: raw,
        }
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloWire {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = CycloWire::deserialize(deserializer)?;
        if wire.conductor == 0 || wire.conductor > 100_000 {
            return Err(D::Error::custom("conductor out of range"));
        }
        if wire.coeffs.len() > wire.conductor as usize {
            return Err(D::Error::custom("too many coefficients"));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Cyclo::from_coeffs(wire.conductor, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclo {
        Cyclo::zeta_pow(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(60).len() - 1, 16);
        assert_eq!(cyclotomic_polynomial(105)[7], -2);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(z(4, 2), Cyclo::from_int(-1, 4));
        let s = Cyclo::from_exponents(5, (1..=4).map(|k| (k, int(1))));
        assert_eq!(s, Cyclo::from_int(-1, 5));
        assert_eq!(z(3, 1) + z(3, 2), Cyclo::from_int(-1, 3));
    }

    #[test]
    fn arith_examples() {
        let one = Cyclo::one(4);
        assert_eq!((&one + &z(4, 1)) * (&one - &z(4, 1)), Cyclo::from_int(2, 4));
        assert!((z(5, 1) * z(5, 4)).is_one());
        assert_eq!(z(8, 1) + Cyclo::zero(8), z(8, 1));
    }

    #[test]
    fn mixed_conductors_embed_into_lcm() {
        let s = z(3, 1) + z(4, 1);
        assert_eq!(s.conductor(), 12);
        assert_eq!(s, z(12, 4) + z(12, 3));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(z(8, 1).conjugate(-1).unwrap(), z(8, 7));
        let half = Cyclo::from_rational(rat(3, 2), 7);
        assert_eq!(half.conjugate(-1).unwrap(), half);
        let c = (z(5, 1) + z(5, -1)).conjugate(2).unwrap();
        assert_eq!(c, z(5, 2) + z(5, 3));
        assert!(matches!(
            z(6, 1).conjugate(3),
            Err(Error::NonCoprimeExponent { k: 3, conductor: 6 })
        ));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(z(2, 1).embed(4).unwrap().coeffs(), z(4, 2).coeffs());
        assert_eq!(z(3, 1).embed(12).unwrap().coeffs(), z(12, 4).coeffs());
        assert_eq!(
            Cyclo::from_int(7, 1).embed(60).unwrap().as_rational().unwrap(),
            int(7)
        );
        assert!(matches!(
            z(3, 1).embed(10),
            Err(Error::NotAMultiple { from: 3, to: 10 })
        ));
    }

    #[test]
    fn as_rational_examples() {
        let root2 = z(8, 1) + z(8, -1);
        assert_eq!((&root2 * &root2).as_rational().unwrap(), int(2));
        assert_eq!(Cyclo::from_int(-1, 9).as_rational().unwrap(), int(-1));
        assert_eq!(z(4, 1).as_rational(), Err(Error::NotRational));
    }

    #[test]
    fn inverse_and_norm() {
        let a = Cyclo::one(5) + z(5, 1).scale(&int(2));
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert!(Cyclo::zero(5).inverse().is_none());
        // sqrt(5) has norm 25 in Q(zeta_5) (two copies of -5).
        let sqrt5 = z(5, 1) - z(5, 2) - z(5, 3) + z(5, 4);
        assert_eq!((&sqrt5 * &sqrt5).as_rational().unwrap(), int(5));
        assert_eq!(sqrt5.norm(), int(25));
    }

    #[test]
    fn conductor_one_and_two() {
        let a = Cyclo::from_int(3, 1);
        assert_eq!(a.coeffs().len(), 1);
        assert_eq!(z(2, 1), Cyclo::from_int(-1, 2));
        assert_eq!(z(1, 5), Cyclo::one(1));
    }

    #[test]
    fn serde_round_trip() {
        let a = z(12, 1).scale(&rat(-3, 4)) + Cyclo::from_rational(rat(1, 2), 12);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"conductor":12,"coeffs":["1/2","-3/4","0","0"]}"#);
        let back: Cyclo = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn display() {
        let a = Cyclo::from_int(1, 5) - z(5, 2);
        assert_eq!(a.to_string(), "1 - z5^2");
        assert_eq!(Cyclo::zero(3).to_string(), "0");
    }
}
