//! Univariate polynomials over a [`FieldSpec`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Commutative ring elements that know their own zero and one.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn mul_r(&self, o: &Self) -> Self;
}

macro_rules! ring_via_ops {
    ($t:ty, $zero:expr, $one:expr, $is_zero:expr) => {
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                $zero(self)
            }
            fn one_like(&self) -> Self {
                $one(self)
            }
            fn is_zero_elem(&self) -> bool {
                $is_zero(self)
            }
            fn add_r(&self, o: &Self) -> Self {
                self + o
            }
            fn sub_r(&self, o: &Self) -> Self {
                self - o
            }
            fn mul_r(&self, o: &Self) -> Self {
                self * o
            }
        }
    };
}

ring_via_ops!(
    Scalar,
    |s: &Scalar| Scalar::zero(s.field()),
    |s: &Scalar| Scalar::one(s.field()),
    |s: &Scalar| s.is_zero()
);

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl UniPoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| Scalar::from_i64(field, c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        Self::new(field, vec![c])
    }

    /// `a + b t`.
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        let field = a.field();
        Self::new(field, vec![a, b])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Scalar::from_i64(self.field, i as i64))
            .collect();
        Self::new(self.field, coeffs)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.check(divisor)?;
        let d = divisor.degree().ok_or_else(|| Error::Zero("polynomial division by zero".into()))?;
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let mut quot = vec![Scalar::zero(self.field); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + d] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * dc);
            }
            quot[i] = c;
        }
        rem.truncate(d);
        Ok((UniPoly::new(self.field, quot), UniPoly::new(self.field, rem)))
    }

    /// Whether `divisor` divides `self` exactly.
    pub fn is_divisible_by(&self, divisor: &UniPoly) -> Result<bool> {
        if divisor.is_zero() {
            return Ok(self.is_zero());
        }
        Ok(self.div_rem(divisor)?.1.is_zero())
    }

    /// Part of `self` free of repeated factors (characteristic 0 or large p).
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(self.monic());
        }
        let g = poly_gcd(self, &self.derivative())?;
        Ok(self.div_rem(&g)?.0.monic())
    }

    /// All roots in F_p by exhaustive scan (prime fields only).
    pub fn roots_by_scan(&self) -> Result<Vec<Scalar>> {
        let p = self.field.require_prime(2)?;
        if self.is_zero() {
            return Err(Error::Zero("roots of the zero polynomial".into()));
        }
        Ok((0..p)
            .map(|v| Scalar::from_i64(self.field, v as i64))
            .filter(|t| self.eval(t).is_zero())
            .collect())
    }

    /// Lagrange interpolation through `(t_i, v_i)` with distinct `t_i`.
    pub fn interpolate(field: FieldSpec, points: &[(Scalar, Scalar)]) -> UniPoly {
        let mut acc = UniPoly::zero(field);
        for (i, (ti, vi)) in points.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let mut basis = UniPoly::constant(Scalar::one(field));
            let mut denom = Scalar::one(field);
            for (j, (tj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = &basis * &UniPoly::linear(-tj, Scalar::one(field));
                    denom = &denom * &(ti - tj);
                }
            }
            acc = &acc + &basis.scale(&(vi / &denom));
        }
        acc
    }
}

/// Monic greatest common divisor; zero when both inputs are zero.
pub fn poly_gcd(f: &UniPoly, g: &UniPoly) -> Result<UniPoly> {
    f.check(g)?;
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b)?.1;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Monic gcd of a list of polynomials.
pub fn poly_gcd_all<'a, I: IntoIterator<Item = &'a UniPoly>>(field: FieldSpec, polys: I) -> Result<UniPoly> {
    let mut g = UniPoly::zero(field);
    for p in polys {
        g = poly_gcd(&g, p)?;
    }
    Ok(g)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![Scalar::zero(self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

ring_via_ops!(
    UniPoly,
    |p: &UniPoly| UniPoly::zero(p.field),
    |p: &UniPoly| UniPoly::constant(Scalar::one(p.field)),
    |p: &UniPoly| p.is_zero()
);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        let q = FieldSpec::Rational;
        let f = UniPoly::from_i64(q, &[-1, 0, 1]);
        let g = UniPoly::from_i64(q, &[-1, 1]);
        assert_eq!(poly_gcd(&f, &g).unwrap(), g);
        let h = UniPoly::from_i64(q, &[4, 0, 2]);
        assert_eq!(poly_gcd(&h, &UniPoly::zero(q)).unwrap(), UniPoly::from_i64(q, &[2, 0, 1]));
        assert!(poly_gcd(&UniPoly::zero(q), &UniPoly::zero(q)).unwrap().is_zero());
        let p = UniPoly::from_i64(FieldSpec::prime(5).unwrap(), &[1]);
        assert!(poly_gcd(&f, &p).is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = FieldSpec::prime(101).unwrap();
        let poly = UniPoly::from_i64(f, &[3, -1, 0, 7]);
        let pts: Vec<_> = (0..4)
            .map(|i| {
                let t = Scalar::from_i64(f, i);
                let v = poly.eval(&t);
                (t, v)
            })
            .collect();
        assert_eq!(UniPoly::interpolate(f, &pts), poly);
    }

    #[test]
    fn squarefree_and_roots() {
        let f = FieldSpec::prime(101).unwrap();
        let a = UniPoly::from_i64(f, &[-2, 1]);
        let b = UniPoly::from_i64(f, &[5, 1]);
        let sq = &(&a * &a) * &b;
        assert_eq!(sq.squarefree_part().unwrap(), (&a * &b).monic());
        let roots = sq.roots_by_scan().unwrap();
        assert_eq!(roots, vec![Scalar::from_i64(f, 2), Scalar::from_i64(f, 96)]);
    }
}
