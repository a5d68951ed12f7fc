//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! A [`Scalar`] carries its field with it, so mixing elements of different
//! fields is caught at the first arithmetic operation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// The field all scalars of a computation live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawField")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawField {
    Rational,
    Prime { p: u64 },
}

impl TryFrom<RawField> for FieldSpec {
    type Error = Error;
    fn try_from(raw: RawField) -> Result<Self> {
        match raw {
            RawField::Rational => Ok(FieldSpec::Rational),
            RawField::Prime { p } => FieldSpec::prime(p),
        }
    }
}

/// Largest modulus accepted; keeps sums of two residues inside a `u64`.
pub const MAX_PRIME: u64 = 1 << 62;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime { p })
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime { p } => Some(*p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    /// Checks that the field is prime with modulus at least `min_p`.
    pub fn require_prime(&self, min_p: u64) -> Result<u64> {
        match self.modulus() {
            Some(p) if p >= min_p => Ok(p),
            _ => Err(Error::NeedsPrimeField(min_p)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime { p } => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;
    /// Accepts `q` or `p:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(rest) = s.strip_prefix("p:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus {rest:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::InvalidField(format!("expected q or p:<prime>, got {s:?}")))
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    /// Residue in `0..p` together with `p`.
    Mod(u64, u64),
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "residue {a} is not invertible mod {p}");
    s0.rem_euclid(p as i128) as u64
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime { p } => Scalar::Mod(0, p),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime { p } => Scalar::Mod((v as i128).rem_euclid(p as i128) as u64, p),
        }
    }

    pub fn from_bigint(field: FieldSpec, v: &BigInt) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            FieldSpec::Prime { p } => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod(r.to_u64().expect("residue fits"), p)
            }
        }
    }

    /// Maps a rational number into `field`; fails when the denominator vanishes mod p.
    pub fn from_rational(field: FieldSpec, q: &BigRational) -> Result<Self> {
        match field {
            FieldSpec::Rational => Ok(Scalar::Rat(q.clone())),
            FieldSpec::Prime { p } => {
                let num = Scalar::from_bigint(field, q.numer());
                let den = Scalar::from_bigint(field, q.denom());
                if den.is_zero() {
                    return Err(Error::Parse(format!("denominator of {q} vanishes mod {p}")));
                }
                Ok(num / den)
            }
        }
    }

    /// Parses `"-3"`, `"2/5"` or a decimal such as `"1.25"`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        Self::from_rational(field, &parse_rational(s)?)
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rational,
            Scalar::Mod(_, p) => FieldSpec::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(mod_inverse(*v, *p), *p),
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue as an integer (prime fields only).
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod(v, _) => Some(*v),
            Scalar::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Mod(..) => None,
        }
    }

    /// Uniform element over F_p; an integer in `[-10, 10]` over the rationals.
    pub fn random<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Self {
        match field {
            FieldSpec::Rational => Scalar::from_i64(field, rng.gen_range(-10..=10)),
            FieldSpec::Prime { p } => Scalar::Mod(rng.gen_range(0..p), p),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Self {
        loop {
            let s = Self::random(field, rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    fn check(&self, other: &Self) {
        if self.field() != other.field() {
            panic!("{}", Error::FieldMismatch(self.field(), other.field()));
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| bad())?;
        let den: BigInt = b.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if neg {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    let num: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(num))
}

impl fmt::Display for Scalar {
    /// Canonical text: `a` or `a/b` over the rationals, the residue in `0..p` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => {
                let s = a + b;
                Scalar::Mod(if s >= *p { s - p } else { s }, *p)
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => {
                Scalar::Mod(if a >= b { a - b } else { a + p - b }, *p)
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => {
                Scalar::Mod(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => unreachable!(),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(0, p) => Scalar::Mod(0, *p),
            Scalar::Mod(a, p) => Scalar::Mod(p - a, *p),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Exact sign-aware conversion used by report code.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    let n = q.numer();
    if n.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    n.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_strings() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("p:101".parse::<FieldSpec>().unwrap(), FieldSpec::Prime { p: 101 });
        assert!("p:100".parse::<FieldSpec>().is_err());
        assert!("p:1".parse::<FieldSpec>().is_err());
        let json = serde_json::to_string(&FieldSpec::Prime { p: 7 }).unwrap();
        assert_eq!(json, r#"{"kind":"prime","p":7}"#);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"kind":"prime","p":9}"#).is_err());
    }

    #[test]
    fn prime_arithmetic() {
        let f = FieldSpec::prime(101).unwrap();
        let a = Scalar::from_i64(f, -3);
        assert_eq!(a.residue(), Some(98));
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(Scalar::from_i64(f, 5).pow(100), Scalar::one(f));
    }

    #[test]
    fn rational_parsing() {
        let q = FieldSpec::Rational;
        assert_eq!(Scalar::parse(q, "1.25").unwrap(), Scalar::parse(q, "5/4").unwrap());
        assert_eq!(Scalar::parse(q, "-0.5").unwrap().to_string(), "-1/2");
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(Scalar::parse(f, "1/2").unwrap().residue(), Some(4));
        assert!(Scalar::parse(f, "1/7").is_err());
        assert!(Scalar::parse(q, "x").is_err());
    }
}
