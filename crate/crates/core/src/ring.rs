//! Coefficient rings.
//!
//! Every computation in the crate is carried out over one of four exact base
//! rings: the integers, the rationals, `Z/m` and prime fields. A [`Ring`] value
//! is a small context object (it carries the modulus for residue rings) and
//! all arithmetic goes through it.
//!
//! Besides ring arithmetic the trait exposes the extra structure Smith normal
//! form needs on a principal ideal ring: a Euclidean size, division with
//! remainder, annihilators and canonical associates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tag identifying a base ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    Integers,
    Rationals,
    IntegersMod(u64),
    PrimeField(u64),
}

impl BaseRing {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BaseRing::IntegersMod(m) if m < 2 => {
                Err(Error::InvalidInput(format!("Z/{m}: modulus must be at least 2")))
            }
            BaseRing::PrimeField(p) if !is_prime(p) => {
                Err(Error::InvalidInput(format!("GF({p}): {p} is not prime")))
            }
            _ => Ok(()),
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            BaseRing::Rationals | BaseRing::PrimeField(_) => true,
            BaseRing::IntegersMod(m) => is_prime(m),
            BaseRing::Integers => false,
        }
    }

    /// Number of elements, `None` for infinite rings.
    pub fn cardinality(&self) -> Option<u64> {
        match *self {
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => Some(m),
            _ => None,
        }
    }

    /// Homology is defined over fields, `Z`, and `Z/p^k`.
    pub fn supports_homology(&self) -> bool {
        match *self {
            BaseRing::IntegersMod(m) => prime_power(m).is_some(),
            _ => true,
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::IntegersMod(m) => write!(f, "Zmod:{m}"),
            BaseRing::PrimeField(p) => write!(f, "GF:{p}"),
        }
    }
}

impl FromStr for BaseRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let ring = match s {
            "Z" | "ZZ" | "integers" => BaseRing::Integers,
            "Q" | "QQ" | "rationals" => BaseRing::Rationals,
            _ => {
                let (tag, num) = s
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("unknown ring `{s}`")))?;
                let n: u64 = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad modulus in ring `{s}`")))?;
                match tag.trim() {
                    "Zmod" | "Z/" => BaseRing::IntegersMod(n),
                    "GF" | "F" => BaseRing::PrimeField(n),
                    _ => return Err(Error::Parse(format!("unknown ring `{s}`"))),
                }
            }
        };
        ring.validate()?;
        Ok(ring)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` when `m = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= m && m % p != 0 {
        p += 1;
    }
    if m % p != 0 {
        p = m;
    }
    let mut rest = m;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Runs `$body` with `$ring` bound to the concrete ring for a [`BaseRing`] tag.
/// The body is compiled once per ring type, so it may call generic code.
#[macro_export]
macro_rules! with_ring {
    ($tag:expr, $ring:ident => $body:expr) => {
        match $tag {
            $crate::ring::BaseRing::Integers => {
                let $ring = $crate::ring::Integers;
                $body
            }
            $crate::ring::BaseRing::Rationals => {
                let $ring = $crate::ring::Rationals;
                $body
            }
            tag @ ($crate::ring::BaseRing::IntegersMod(_) | $crate::ring::BaseRing::PrimeField(_)) => {
                let $ring = $crate::ring::ModRing::from_base(tag)?;
                $body
            }
        }
    };
}

/// Exact commutative coefficient ring.
///
/// Implementations must be principal ideal rings for the Smith-normal-form
/// entry points; [`ModRing`] with a modulus that is not a prime power only
/// supports the plain arithmetic.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn base(&self) -> BaseRing;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Multiplicative inverse if `a` is a unit.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.unit_inverse(a).is_some()
    }

    /// Compares Euclidean sizes of two nonzero elements.
    fn size_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// `(q, r)` with `a = q b + r` and either `r = 0` or `r` strictly smaller than `b`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// `q` with `q b = a`, if one exists.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Generator of the annihilator ideal `{x : x a = 0}`.
    fn annihilator(&self, a: &Self::Elem) -> Self::Elem;

    /// Unit `u` such that `u a` is the canonical associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    /// Canonical representative of `a` modulo the ideal generated by `d`.
    fn reduce_mod(&self, a: &Self::Elem, d: &Self::Elem) -> Self::Elem;

    /// All elements, for finite rings.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Additive order of the cyclic module `R/(d)` as an abelian group, `None` if infinite.
    fn quotient_order(&self, d: &Self::Elem) -> Option<BigInt>;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Embeds an integer given as a big integer.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// Uniform sampling helper: the element with "index" `n`, used by random
    /// test generators. Must be surjective on small ranges for finite rings.
    fn from_index(&self, n: i64) -> Self::Elem {
        self.from_i64(n)
    }

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// The ring of integers, with arbitrary precision entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn base(&self) -> BaseRing {
        BaseRing::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn size_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // Floor division keeps |r| < |b|.
        a.div_mod_floor(b)
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return a.is_zero().then(BigInt::zero);
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn annihilator(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn reduce_mod(&self, a: &BigInt, d: &BigInt) -> BigInt {
        if d.is_zero() {
            a.clone()
        } else {
            a.mod_floor(&d.abs())
        }
    }
    fn elements(&self) -> Option<Vec<BigInt>> {
        None
    }
    fn quotient_order(&self, d: &BigInt) -> Option<BigInt> {
        (!d.is_zero()).then(|| d.abs())
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("`{s}` is not an integer")))
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
}

/// The rational numbers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn base(&self) -> BaseRing {
        BaseRing::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn size_cmp(&self, _a: &BigRational, _b: &BigRational) -> Ordering {
        Ordering::Equal
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            a.is_zero().then(BigRational::zero)
        } else {
            Some(a / b)
        }
    }
    fn annihilator(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }
    fn normalizing_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
    fn reduce_mod(&self, a: &BigRational, d: &BigRational) -> BigRational {
        if d.is_zero() {
            a.clone()
        } else {
            BigRational::zero()
        }
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn quotient_order(&self, d: &BigRational) -> Option<BigInt> {
        (!d.is_zero()).then(BigInt::one)
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not a rational number"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
}

/// `Z/m`, with elements stored as reduced residues. When `m` is prime this is
/// the prime field and every nonzero element is a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModRing {
    modulus: u64,
    tag: BaseRing,
    /// `(p, k)` when the modulus is a prime power.
    pp: Option<(u64, u32)>,
}

impl ModRing {
    pub fn new(modulus: u64) -> Result<Self> {
        let tag = if is_prime(modulus) {
            BaseRing::PrimeField(modulus)
        } else {
            BaseRing::IntegersMod(modulus)
        };
        Self::with_tag(tag)
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        Self::with_tag(BaseRing::PrimeField(p))
    }

    fn with_tag(tag: BaseRing) -> Result<Self> {
        tag.validate()?;
        let modulus = match tag {
            BaseRing::IntegersMod(m) | BaseRing::PrimeField(m) => m,
            _ => return Err(Error::InvalidInput(format!("{tag} is not a residue ring"))),
        };
        Ok(ModRing { modulus, tag, pp: prime_power(modulus) })
    }

    pub fn from_base(tag: BaseRing) -> Result<Self> {
        Self::with_tag(tag)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn valuation(&self, a: u64) -> u32 {
        let (p, k) = self.pp.expect("valuation needs a prime-power modulus");
        if a == 0 {
            return k;
        }
        let mut v = 0;
        let mut a = a;
        while a % p == 0 {
            a /= p;
            v += 1;
        }
        v
    }

    fn pow_p(&self, v: u32) -> u64 {
        let (p, _) = self.pp.expect("prime-power modulus");
        p.pow(v)
    }

    fn inv_mod(&self, a: u64) -> Option<u64> {
        let (g, x, _) = ext_gcd(a as i128, self.modulus as i128);
        (g == 1).then(|| x.rem_euclid(self.modulus as i128) as u64)
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl Ring for ModRing {
    type Elem = u64;

    fn base(&self) -> BaseRing {
        self.tag
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        self.inv_mod(*a)
    }
    fn size_cmp(&self, a: &u64, b: &u64) -> Ordering {
        match self.pp {
            Some(_) => self.valuation(*a).cmp(&self.valuation(*b)),
            None => Ordering::Equal,
        }
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        match self.exact_div(a, b) {
            Some(q) => (q, 0),
            None => (0, *a),
        }
    }
    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        if *a == 0 {
            return Some(0);
        }
        if *b == 0 {
            return None;
        }
        if let Some(inv) = self.inv_mod(*b) {
            return Some(self.mul(a, &inv));
        }
        self.pp?;
        let vb = self.valuation(*b);
        if self.valuation(*a) < vb {
            return None;
        }
        let pv = self.pow_p(vb);
        let unit = self.inv_mod(b / pv)?;
        Some(self.mul(&(a / pv), &unit))
    }
    fn annihilator(&self, a: &u64) -> u64 {
        if *a == 0 {
            return self.one();
        }
        match self.pp {
            Some((_, k)) => {
                let v = self.valuation(*a);
                self.pow_p(k - v) % self.modulus
            }
            None => {
                let g = a.gcd(&self.modulus);
                (self.modulus / g) % self.modulus
            }
        }
    }
    fn normalizing_unit(&self, a: &u64) -> u64 {
        if *a == 0 {
            return self.one();
        }
        if let Some(inv) = self.inv_mod(*a) {
            return inv;
        }
        match self.pp {
            Some(_) => {
                let pv = self.pow_p(self.valuation(*a));
                self.inv_mod(a / pv).unwrap_or(1)
            }
            None => self.one(),
        }
    }
    fn reduce_mod(&self, a: &u64, d: &u64) -> u64 {
        if *d == 0 {
            return *a;
        }
        match self.pp {
            Some(_) => a % self.pow_p(self.valuation(*d)),
            None => {
                let g = d.gcd(&self.modulus);
                a % g
            }
        }
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.modulus).collect())
    }
    fn quotient_order(&self, d: &u64) -> Option<BigInt> {
        let g = if *d == 0 { self.modulus } else { d.gcd(&self.modulus) };
        Some(BigInt::from(g))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let n: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("`{s}` is not an integer residue")))?;
        Ok(self.from_bigint(&n))
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits in u64")
    }
}

/// Sum of `coeff * x` over sparse terms, dropping zeros.
pub fn axpy<R: Ring>(ring: &R, acc: &mut R::Elem, coeff: &R::Elem, x: &R::Elem) {
    if !ring.is_zero(coeff) && !ring.is_zero(x) {
        *acc = ring.add(acc, &ring.mul(coeff, x));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ring_tags() {
        assert_eq!("Z".parse::<BaseRing>().unwrap(), BaseRing::Integers);
        assert_eq!("GF:2".parse::<BaseRing>().unwrap(), BaseRing::PrimeField(2));
        assert_eq!("Zmod:4".parse::<BaseRing>().unwrap(), BaseRing::IntegersMod(4));
        assert!("GF:4".parse::<BaseRing>().is_err());
        assert!("Zmod:1".parse::<BaseRing>().is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert!(!BaseRing::IntegersMod(6).supports_homology());
    }

    #[test]
    fn mod_prime_power_division() {
        let r = ModRing::new(8).unwrap();
        assert_eq!(r.exact_div(&4, &2), Some(2 * r.unit_inverse(&1).unwrap()));
        assert_eq!(r.exact_div(&2, &4), None);
        assert_eq!(r.annihilator(&2), 4);
        assert_eq!(r.annihilator(&0), 1);
        assert_eq!(r.reduce_mod(&7, &6), 1);
        assert_eq!(r.normalizing_unit(&6), r.unit_inverse(&3).unwrap());
        assert_eq!(r.mul(&r.normalizing_unit(&6), &6), 2);
    }

    #[test]
    fn integer_division_keeps_remainder_small() {
        let z = Integers;
        let (q, r) = z.div_rem(&BigInt::from(-7), &BigInt::from(3));
        assert_eq!(q * 3 + &r, BigInt::from(-7));
        assert!(r.abs() < BigInt::from(3));
    }
}
