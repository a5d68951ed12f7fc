//! Degrees and multidegrees of the congruences, Chern classes of `Ω¹(3/2)`,
//! and degrees of the rank strata of `M_ω`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    /// Multidegrees of X_ω.
    A,
    /// Multidegrees of a general linear congruence B.
    B,
    /// Multidegrees of the residual congruence Y.
    C,
}

/// Row `r` has `r + 1` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreeTriangle {
    pub kind: TriangleKind,
    pub rows: Vec<Vec<BigInt>>,
}

impl MultidegreeTriangle {
    /// Entry `(i, j)`, zero outside the triangle.
    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        self.rows.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_default()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.last().unwrap().clone()).collect()
    }

    /// Anti-diagonal `(T(n-1-l, l))` for `l = 0..=(n-1)/2`.
    pub fn antidiagonal(&self, n: usize) -> Vec<BigInt> {
        (0..=(n - 1) / 2).map(|l| self.entry(n - 1 - l, l)).collect()
    }
}

fn recurse(depth: usize, first: impl Fn(usize) -> BigInt) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(depth);
    for i in 0..depth {
        let mut row = vec![first(i)];
        for j in 1..=i {
            let above = if j < i { rows[i - 1][j].clone() } else { BigInt::zero() };
            row.push(&row[j - 1] + above);
        }
        rows.push(row);
    }
    rows
}

/// Rows `0..depth` of the triangle; `c` is built by its own recursion and checked against `b - a`.
pub fn triangle(kind: TriangleKind, depth: usize) -> Result<MultidegreeTriangle> {
    if depth == 0 {
        return Err(Error::Precondition("triangle depth must be at least 1".into()));
    }
    let parity = |odd: bool| move |i: usize| BigInt::from(((i % 2 == 1) == odd) as u8);
    let rows = match kind {
        TriangleKind::A => recurse(depth, parity(false)),
        TriangleKind::B => recurse(depth, |_| BigInt::one()),
        TriangleKind::C => {
            let c = recurse(depth, parity(true));
            let a = recurse(depth, parity(false));
            let b = recurse(depth, |_| BigInt::one());
            let diff: Vec<Vec<BigInt>> =
                b.iter().zip(&a).map(|(rb, ra)| rb.iter().zip(ra).map(|(x, y)| x - y).collect()).collect();
            if diff != c {
                return Err(Error::Convention("c triangle differs from b - a".into()));
            }
            c
        }
    };
    Ok(MultidegreeTriangle { kind, rows })
}

pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multidegrees {
    pub n: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub x: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    pub b: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    pub y: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigint")]
    pub deg_x: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub deg_b: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub deg_y: BigInt,
}

/// `e_l(n) = C(n-2, l) - C(n-2, l-2)`.
pub fn linear_congruence_multidegree(n: usize) -> Vec<BigInt> {
    let n = n as i64;
    (0..=(n - 1) / 2).map(|l| binom(n - 2, l) - binom(n - 2, l - 2)).collect()
}

/// `C(2n-2, n) / (n-1)`.
pub fn linear_congruence_degree(n: usize) -> BigInt {
    let n = n as i64;
    binom(2 * n - 2, n) / BigInt::from(n - 1)
}

/// Multidegrees and degrees of X_ω, B and Y, each computed two ways.
pub fn multidegrees(n: usize) -> Result<Multidegrees> {
    if n < 3 {
        return Err(Error::Precondition("multidegrees need n >= 3".into()));
    }
    let a = triangle(TriangleKind::A, n)?;
    let b = triangle(TriangleKind::B, n)?;
    let c = triangle(TriangleKind::C, n)?;
    let x = a.antidiagonal(n);
    let bm = linear_congruence_multidegree(n);
    if bm != b.antidiagonal(n) {
        return Err(Error::Convention(format!("linear congruence multidegree mismatch at n = {n}")));
    }
    let y: Vec<BigInt> = bm.iter().zip(&x).map(|(p, q)| p - q).collect();
    if y != c.antidiagonal(n) {
        return Err(Error::Convention(format!("residual multidegree mismatch at n = {n}")));
    }
    let deg_b = b.entry(n - 1, n - 1);
    if deg_b != linear_congruence_degree(n) {
        return Err(Error::Convention(format!("linear congruence degree mismatch at n = {n}")));
    }
    Ok(Multidegrees {
        n,
        x,
        b: bm,
        y,
        deg_x: a.entry(n - 1, n - 1),
        deg_b,
        deg_y: c.entry(n - 1, n - 1),
    })
}

/// `c[i]` is the coefficient of `h^i` in `c_i(Ω¹_{P^n}(3/2))`, for `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernVector {
    pub n: usize,
    pub c: Vec<BigRational>,
}

impl ChernVector {
    /// `c_k`, zero outside `0..=n`.
    pub fn get(&self, k: i64) -> BigRational {
        if k < 0 {
            return BigRational::zero();
        }
        self.c.get(k as usize).cloned().unwrap_or_else(BigRational::zero)
    }
}

fn q(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Twist of the rank-n bundle with `c_t = (1 - ht)^{n+1}` by a formal line bundle of class `3h/2`.
pub fn chern(n: usize) -> ChernVector {
    let l = BigRational::new(3.into(), 2.into());
    let ni = n as i64;
    let c = (0..=ni)
        .map(|k| {
            let mut acc = BigRational::zero();
            for j in 0..=k {
                let e = q(binom(ni + 1, j) * if j % 2 == 0 { 1 } else { -1 });
                let pow = num_traits::pow(l.clone(), (k - j) as usize);
                acc += q(binom(ni - j, k - j)) * e * pow;
            }
            acc
        })
        .collect();
    ChernVector { n, c }
}

/// The same classes from the closed binomial sum.
pub fn chern_by_binomial_sum(n: usize) -> ChernVector {
    let ni = n as i64;
    let c = (0..=ni)
        .map(|i| {
            let mut acc = BigRational::zero();
            for k in 0..=i {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let num = BigInt::from(3).pow((i - k) as u32) * (1 + k) * sign * binom(i + 1, k + 1);
                let den = BigInt::from(2).pow((i - k) as u32) * (ni + 1 - k);
                acc += BigRational::new(num, den);
            }
            acc * q(binom(ni + 1, i + 1))
        })
        .collect();
    ChernVector { n, c }
}

/// Class of the locus where `rank M_ω <= r`, as a multiple of `h^{C(n-r, 2)}`.
///
/// With `s = n - r`, the determinant of the `(s-1) x (s-1)` matrix with entry
/// `(i, j) = c_{s - 2i + j}` (1-based).
pub fn stratum_class_degree(n: usize, r: usize) -> Result<BigRational> {
    if r % 2 == 1 || r >= n {
        return Err(Error::Precondition(format!("stratum rank r = {r} must be even and below n = {n}")));
    }
    let c = chern(n);
    let s = (n - r) as i64;
    let size = (s - 1) as usize;
    let m: Vec<Vec<BigRational>> =
        (1..=s - 1).map(|i| (1..=s - 1).map(|j| c.get(s - 2 * i + j)).collect()).collect();
    Ok(rational_det(m, size))
}

/// Integer degree of the stratum; errors if the class is not integral.
pub fn stratum_degree(n: usize, r: usize) -> Result<BigInt> {
    let d = stratum_class_degree(n, r)?;
    if !d.is_integer() {
        return Err(Error::Convention(format!("stratum class {d} is not integral")));
    }
    Ok(d.to_integer())
}

fn rational_det(mut m: Vec<Vec<BigRational>>, size: usize) -> BigRational {
    let mut det = BigRational::one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            for k in col..size {
                let t = &f * &m[col][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

/// `n(n-6)(n+1)(n+2)(n^2-9n+44) / 2880`.
pub fn closed_form_codim6(n: i64) -> BigRational {
    let n = BigInt::from(n);
    let num = &n * (&n - 6) * (&n + 1) * (&n + 2) * (&n * &n - &n * 9 + 44);
    BigRational::new(num, 2880.into())
}

/// `n(n-1)(n+1)^2(n+2)(n+3)(n^4-26n^3+311n^2-1966n+5400) / 4838400`.
pub fn closed_form_codim10(n: i64) -> BigRational {
    let n = BigInt::from(n);
    let quartic = n.pow(4) - n.pow(3) * 26 + n.pow(2) * 311 - &n * 1966 + 5400;
    let num = &n * (&n - 1) * (&n + 1) * (&n + 1) * (&n + 2) * (&n + 3) * quartic;
    BigRational::new(num, 4_838_400.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalDegrees {
    pub n: usize,
    /// Degree of F_ω.
    pub deg_f: i64,
    /// Odd n: degree of the hypersurface G.
    pub deg_g: Option<i64>,
    /// Even n: degree of the component G₀.
    pub deg_g0: Option<i64>,
    /// Even n: degree of `G₀ ∩ Π`.
    pub deg_g0_cap_pi: Option<i64>,
}

pub fn fundamental_locus_degrees(n: usize) -> Result<FundamentalDegrees> {
    if n < 3 {
        return Err(Error::Precondition("fundamental locus degrees need n >= 3".into()));
    }
    let ni = n as i64;
    let int = |b: BigInt| b.to_i64().unwrap();
    Ok(if n % 2 == 0 {
        let m = ni / 2;
        FundamentalDegrees {
            n,
            deg_f: m - 1,
            deg_g: None,
            deg_g0: Some(int(binom(m + 1, 3) * 2 - binom(m + 1, 2) + 2)),
            deg_g0_cap_pi: Some((m - 1) * (m - 2)),
        }
    } else {
        let c = binom(ni - 1, 3);
        let (quot, rem) = c.div_rem(&BigInt::from(4));
        debug_assert!(rem.abs().is_zero());
        FundamentalDegrees { n, deg_f: int(quot) + 1, deg_g: Some((ni - 1) / 2), deg_g0: None, deg_g0_cap_pi: None }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub n: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub multideg_x: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigint")]
    pub deg_x: BigInt,
    #[serde(serialize_with = "ser_bigints")]
    pub multideg_b: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigint")]
    pub deg_b: BigInt,
    #[serde(serialize_with = "ser_bigints")]
    pub multideg_y: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigint")]
    pub deg_y: BigInt,
    pub deg_f: i64,
    pub deg_g: Option<i64>,
    pub deg_g0: Option<i64>,
    pub deg_g0_cap_pi: Option<i64>,
}

/// One row per `n` in `3..=n_max`.
pub fn tables(n_max: usize) -> Result<Vec<TableRow>> {
    if n_max < 3 {
        return Err(Error::Precondition("tables need n_max >= 3".into()));
    }
    (3..=n_max)
        .map(|n| {
            let m = multidegrees(n)?;
            let f = fundamental_locus_degrees(n)?;
            Ok(TableRow {
                n,
                multideg_x: m.x,
                deg_x: m.deg_x,
                multideg_b: m.b,
                deg_b: m.deg_b,
                multideg_y: m.y,
                deg_y: m.deg_y,
                deg_f: f.deg_f,
                deg_g: f.deg_g,
                deg_g0: f.deg_g0,
                deg_g0_cap_pi: f.deg_g0_cap_pi,
            })
        })
        .collect()
}
