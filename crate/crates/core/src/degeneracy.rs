//! The skew matrix of linear forms `M_ω`, its rank strata, and the
//! fundamental locus.
//!
//! `M_ω(P)_{ij} = <ω, e_i ^ e_j ^ P>`, so `f ↦ M_ω(P) f` vanishes exactly when
//! `contract(ω, P ^ f) = 0`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{
    decompose_bivector, random_coords, shuffle_sign, AlternatingTensor, IndexSet, SpaceContext, Variance,
};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::pfaffian::pfaffian_generic;
use crate::poly::{poly_gcd_all, UniPoly};
use crate::projective::ProjectiveFp;
use crate::seeds::derive_seed;

/// A matrix whose entries are linear forms on V, each stored by its coordinates.
#[derive(Clone, Debug)]
pub struct LinearMatrix {
    ctx: SpaceContext,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Scalar>>,
}

impl LinearMatrix {
    pub fn zeros(ctx: SpaceContext, rows: usize, cols: usize) -> Self {
        LinearMatrix { ctx, rows, cols, entries: vec![vec![ctx.zero(); ctx.dim()]; rows * cols] }
    }

    pub fn ctx(&self) -> SpaceContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The linear form in entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &[Scalar] {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, form: Vec<Scalar>) {
        assert_eq!(form.len(), self.ctx.dim());
        self.entries[i * self.cols + j] = form;
    }

    pub fn eval(&self, point: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.ctx.field(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, dot(self.entry(i, j), point));
            }
        }
        m
    }

    /// Entries restricted to the line `p0 + t p1`.
    pub fn on_line(&self, p0: &[Scalar], p1: &[Scalar]) -> Vec<Vec<UniPoly>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| UniPoly::linear(dot(self.entry(i, j), p0), dot(self.entry(i, j), p1)))
                    .collect()
            })
            .collect()
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.entry(i, i).iter().all(Scalar::is_zero)
                    && (i + 1..self.cols)
                        .all(|j| self.entry(i, j).iter().zip(self.entry(j, i)).all(|(a, b)| (a + b).is_zero()))
            })
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero(a[0].field());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x * y;
        }
    }
    acc
}

/// A skew [`LinearMatrix`].
#[derive(Clone, Debug)]
pub struct SkewLinearMatrix(LinearMatrix);

impl SkewLinearMatrix {
    pub fn new(m: LinearMatrix) -> Result<Self> {
        if !m.is_skew() {
            return Err(Error::Convention("matrix of linear forms is not skew".into()));
        }
        Ok(SkewLinearMatrix(m))
    }

    pub fn inner(&self) -> &LinearMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }

    pub fn eval(&self, point: &[Scalar]) -> Matrix {
        self.0.eval(point)
    }

    pub fn on_line(&self, p0: &[Scalar], p1: &[Scalar]) -> Vec<Vec<UniPoly>> {
        self.0.on_line(p0, p1)
    }

    pub fn ctx(&self) -> SpaceContext {
        self.0.ctx
    }
}

fn check_three_form(omega: &AlternatingTensor) -> Result<()> {
    if omega.variance() != Variance::Form || omega.degree() != 3 {
        return Err(Error::Degree("expected a 3-form".into()));
    }
    Ok(())
}

/// `<ω, e_i ^ e_j ^ e_k>` for arbitrary (possibly unsorted) indices.
pub fn omega_value(omega: &AlternatingTensor, i: usize, j: usize, k: usize) -> Scalar {
    if i == j || j == k || i == k {
        return omega.ctx().zero();
    }
    let ij = IndexSet::pair(i, j);
    let kk = IndexSet::single(k);
    let mut positive = shuffle_sign(IndexSet::single(i), IndexSet::single(j));
    positive ^= !shuffle_sign(ij, kk);
    let c = omega.coeff(ij.union(kk));
    if positive {
        c
    } else {
        -c
    }
}

/// The matrix `M_ω` with entries `P ↦ <ω, e_i ^ e_j ^ P>`.
pub fn build_m(omega: &AlternatingTensor) -> Result<SkewLinearMatrix> {
    check_three_form(omega)?;
    let ctx = omega.ctx();
    let d = ctx.dim();
    let mut m = LinearMatrix::zeros(ctx, d, d);
    for i in 0..d {
        for j in 0..d {
            if i != j {
                m.set_entry(i, j, (0..d).map(|k| omega_value(omega, i, j, k)).collect());
            }
        }
    }
    SkewLinearMatrix::new(m)
}

pub fn rank_at(m: &SkewLinearMatrix, point: &[Scalar]) -> usize {
    m.eval(point).rank()
}

/// Rank of `M_ω` at a general point: `n` for even `n`, `n - 1` for odd `n`.
pub fn expected_generic_rank(n: usize) -> usize {
    if n % 2 == 0 {
        n
    } else {
        n - 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumReport {
    pub rank_histogram: BTreeMap<usize, usize>,
    pub generic_rank: usize,
    /// Points found on lower strata, keyed by rank.
    pub strata_hits: BTreeMap<usize, Vec<Vec<String>>>,
}

/// Rank statistics of `M_ω` at random points, plus witnesses on the
/// fundamental locus found on random lines (even n) or on sampled lines of
/// the congruence (odd n).
pub fn stratify(omega: &AlternatingTensor, samples: usize, seed: u64) -> Result<StratumReport> {
    omega.ctx().field().require_prime(2)?;
    let m = build_m(omega)?;
    let ctx = omega.ctx();
    let ranks: Vec<usize> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
            rank_at(&m, &random_coords(ctx, &mut rng))
        })
        .collect();
    let mut rank_histogram = BTreeMap::new();
    for r in ranks {
        *rank_histogram.entry(r).or_insert(0) += 1;
    }
    let generic_rank = rank_histogram.iter().max_by_key(|(r, c)| (**c, **r)).map(|(r, _)| *r).unwrap_or(0);
    let mut strata_hits: BTreeMap<usize, Vec<Vec<String>>> = BTreeMap::new();
    let mut record = |p: &[Scalar]| {
        let r = rank_at(&m, p);
        if r < generic_rank {
            let text = crate::exterior::normalize_point(p).iter().map(|c| c.to_string()).collect();
            strata_hits.entry(r).or_default().push(text);
        }
    };
    let n = ctx.n();
    for attempt in 0..4u64 {
        let s = derive_seed(seed ^ 0x5354_5241_5441, attempt);
        if n % 2 == 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let p0 = random_coords(ctx, &mut rng);
            let p1 = random_coords(ctx, &mut rng);
            let g = fundamental_poly_on_line(&m, &p0, &p1)?;
            if g.is_zero() {
                continue;
            }
            for t in g.roots_by_scan()? {
                record(&point_on_line(&p0, &p1, &t));
            }
        } else if let Ok(l) = crate::congruence::sample_line_on_x(omega, s) {
            if let Ok(pencil) = secant_pencil(omega, &l) {
                for p in pencil.root_points()? {
                    record(&p);
                }
            }
        }
    }
    Ok(StratumReport { rank_histogram, generic_rank, strata_hits })
}

pub(crate) fn point_on_line(p0: &[Scalar], p1: &[Scalar], t: &Scalar) -> Vec<Scalar> {
    p0.iter().zip(p1).map(|(a, b)| a + &(t * b)).collect()
}

/// Signed principal sub-Pfaffians of an odd-size skew polynomial matrix.
pub fn principal_subpfaffians(entries: &[Vec<UniPoly>]) -> Vec<UniPoly> {
    let d = entries.len();
    let field = entries[0][0].field();
    (0..d)
        .map(|skip| {
            let idx: Vec<usize> = (0..d).filter(|&i| i != skip).collect();
            let sub: Vec<Vec<UniPoly>> =
                idx.iter().map(|&i| idx.iter().map(|&j| entries[i][j].clone()).collect()).collect();
            pfaffian_generic(&sub, &UniPoly::zero(field))
        })
        .collect()
}

/// For even n: gcd of the principal size-n sub-Pfaffians of `M_ω` on the
/// line `p0 + t p1`; its roots are the points where the line meets F_ω.
pub fn fundamental_poly_on_line(m: &SkewLinearMatrix, p0: &[Scalar], p1: &[Scalar]) -> Result<UniPoly> {
    if m.size() % 2 == 0 {
        return Err(Error::Precondition("sub-Pfaffian gcd needs odd size".into()));
    }
    let subs = principal_subpfaffians(&m.on_line(p0, p1));
    poly_gcd_all(m.ctx().field(), &subs)
}

/// Degree of the hypersurface F_ω for even n, stable across three random lines.
pub fn hypersurface_degree(omega: &AlternatingTensor) -> Result<usize> {
    hypersurface_degree_seeded(omega, 0x4859_5045)
}

pub fn hypersurface_degree_seeded(omega: &AlternatingTensor, seed: u64) -> Result<usize> {
    let ctx = omega.ctx();
    let n = ctx.n();
    if n % 2 == 1 {
        return Err(Error::Precondition("hypersurface degree needs even n".into()));
    }
    let m = build_m(omega)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degrees = Vec::new();
    for _ in 0..60 {
        let p0 = random_coords(ctx, &mut rng);
        let p1 = random_coords(ctx, &mut rng);
        // An endpoint on F_ω would hide a root at t = 0 or t = infinity.
        if rank_at(&m, &p0) < n || rank_at(&m, &p1) < n {
            continue;
        }
        let g = fundamental_poly_on_line(&m, &p0, &p1)?;
        if g.is_zero() {
            continue;
        }
        degrees.push(g.degree().unwrap());
        if degrees.len() == 3 {
            if degrees.iter().all(|&d| d == degrees[0]) {
                return Ok(degrees[0]);
            }
            return Err(Error::NonGeneric(format!("gcd degrees {degrees:?} differ across lines")));
        }
    }
    Err(Error::NonGeneric("M_ω has rank below n on every sampled line".into()))
}

/// The Pfaffian of the pencil `s f_ω(e) + t f_ω(f)` induced on `V / <e, f>`.
#[derive(Clone, Debug)]
pub struct SecantPencil {
    pub e: Vec<Scalar>,
    pub f: Vec<Scalar>,
    /// Pfaffian in the chart s = 1, as a polynomial in t.
    pub poly: UniPoly,
    /// Multiplicity of the root s = 0 (the point f).
    pub infinity_multiplicity: usize,
    /// Degree of the binary form, `(n - 1) / 2` when nonzero.
    pub degree: usize,
    /// Number of distinct roots of the binary form over an algebraic closure.
    pub distinct_roots: usize,
}

impl SecantPencil {
    /// Points `e + t f` for the F_p-roots t, followed by `f` if s = 0 is a root.
    pub fn root_points(&self) -> Result<Vec<Vec<Scalar>>> {
        let mut out: Vec<Vec<Scalar>> =
            self.poly.roots_by_scan()?.iter().map(|t| point_on_line(&self.e, &self.f, t)).collect();
        if self.infinity_multiplicity > 0 {
            out.push(self.f.clone());
        }
        Ok(out)
    }

    /// Roots as projective parameters `[s:t]`, normalized.
    pub fn root_parameters(&self) -> Result<Vec<(Scalar, Scalar)>> {
        let field = self.poly.field();
        let mut out: Vec<(Scalar, Scalar)> =
            self.poly.roots_by_scan()?.into_iter().map(|t| (Scalar::one(field), t)).collect();
        if self.infinity_multiplicity > 0 {
            out.push((Scalar::zero(field), Scalar::one(field)));
        }
        Ok(out)
    }
}

/// Secant pencil of a line `L = e ^ f` of X_ω for odd n.
pub fn secant_pencil(omega: &AlternatingTensor, l: &AlternatingTensor) -> Result<SecantPencil> {
    let ctx = omega.ctx();
    let n = ctx.n();
    if n % 2 == 0 {
        return Err(Error::Precondition("secant pencil needs odd n".into()));
    }
    if !crate::congruence::member_x(omega, l)? {
        return Err(Error::Precondition("line is not in X_ω".into()));
    }
    let (e, f) = decompose_bivector(l)?;
    let m = build_m(omega)?;
    let be = m.eval(&e);
    let bf = m.eval(&f);
    for b in [&be, &bf] {
        if !b.mul_vec(&e).iter().chain(b.mul_vec(&f).iter()).all(Scalar::is_zero) {
            return Err(Error::Convention("pencil does not annihilate the line".into()));
        }
    }
    let field = ctx.field();
    let mut cols = vec![e.clone(), f.clone()];
    for i in 0..ctx.dim() {
        let mut v = vec![ctx.zero(); ctx.dim()];
        v[i] = ctx.one();
        cols.push(v);
    }
    let chosen = Matrix::from_columns(field, ctx.dim(), &cols).independent_columns();
    let w: Vec<usize> = chosen.iter().filter(|&&c| c >= 2).map(|&c| c - 2).collect();
    let entries: Vec<Vec<UniPoly>> = w
        .iter()
        .map(|&i| w.iter().map(|&j| UniPoly::linear(be.get(i, j).clone(), bf.get(i, j).clone())).collect())
        .collect();
    let poly = pfaffian_generic(&entries, &UniPoly::zero(field));
    if poly.is_zero() {
        return Err(Error::NonGeneric("secant pencil Pfaffian vanishes identically".into()));
    }
    let m_half = (n - 1) / 2;
    let deg = poly.degree().unwrap();
    let infinity_multiplicity = m_half - deg;
    let distinct_roots = poly.squarefree_part()?.degree().unwrap() + usize::from(infinity_multiplicity > 0);
    Ok(SecantPencil { e, f, poly, infinity_multiplicity, degree: m_half, distinct_roots })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExhaustiveStrata {
    pub p: u64,
    pub total_points: u64,
    pub rank_counts: BTreeMap<usize, u64>,
    /// Normalized points of every rank except the most frequent one.
    pub points: BTreeMap<usize, Vec<Vec<u64>>>,
}

/// Rank of `M_ω` at every point of P^n(F_p).
pub fn exhaustive_strata(omega: &AlternatingTensor) -> Result<ExhaustiveStrata> {
    let ctx = omega.ctx();
    let p = ctx.field().require_prime(2)?;
    let space = ProjectiveFp::new(ctx.dim(), p);
    let total = space.check_budget(1_000_000)?;
    let m = build_m(omega)?;
    let ranks: Vec<u8> = (0..total).into_par_iter().map(|k| rank_at(&m, &space.point_scalars(k)) as u8).collect();
    let mut rank_counts = BTreeMap::new();
    for &r in &ranks {
        *rank_counts.entry(r as usize).or_insert(0u64) += 1;
    }
    let generic = rank_counts.iter().max_by_key(|(_, c)| **c).map(|(r, _)| *r).unwrap_or(0);
    let mut points: BTreeMap<usize, Vec<Vec<u64>>> = BTreeMap::new();
    for (k, &r) in ranks.iter().enumerate() {
        if r as usize != generic {
            points.entry(r as usize).or_default().push(space.point(k as u64));
        }
    }
    Ok(ExhaustiveStrata { p, total_points: total, rank_counts, points })
}
