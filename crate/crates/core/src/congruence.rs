//! The congruence `X_ω = {[L] ∈ G(2, V) : ω(L) = 0}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::degeneracy::{build_m, expected_generic_rank, fundamental_poly_on_line, point_on_line, rank_at};
use crate::error::{Error, Result};
use crate::exterior::{
    binomial, contract, decompose_bivector, is_decomposable, k_subsets, random_coords, reduced_square,
    split_along_covector, AlternatingTensor, SpaceContext, Variance,
};
use crate::field::Scalar;
use crate::form_analysis::{lambda_omega, lambda_omega_x, lambda_x};
use crate::matrix::Matrix;
use crate::projective::ProjectiveFp;
use crate::seeds::derive_seed;
use crate::subspace::{Ambient, LinearSubspace};

/// A 3-form together with the linear span `Λ_ω` of its congruence.
#[derive(Clone, Debug)]
pub struct CongruenceHandle {
    pub omega: AlternatingTensor,
    pub span: LinearSubspace,
}

impl CongruenceHandle {
    pub fn new(omega: &AlternatingTensor) -> Result<Self> {
        Ok(CongruenceHandle { omega: omega.clone(), span: lambda_omega(omega)? })
    }

    pub fn ctx(&self) -> SpaceContext {
        self.omega.ctx()
    }
}

fn check_bivector(l: &AlternatingTensor) -> Result<()> {
    if l.variance() != Variance::Vector || l.degree() != 2 {
        return Err(Error::Degree("expected a bivector".into()));
    }
    Ok(())
}

/// `L` is a line (`L^[2] = 0`) and `ω(L) = 0`.
pub fn member_x(omega: &AlternatingTensor, l: &AlternatingTensor) -> Result<bool> {
    check_bivector(l)?;
    Ok(!l.is_zero() && is_decomposable(l)? && contract(omega, l)?.is_zero())
}

/// Lines of X_ω through a point.
#[derive(Clone, Debug)]
pub struct LineStar {
    pub point: Vec<Scalar>,
    /// Kernel of `M_ω(P)`; always contains `P`.
    pub kernel: LinearSubspace,
    /// A complement of `P` in the kernel: the directions `f` with `P ^ f ∈ X_ω`.
    pub directions: LinearSubspace,
}

impl LineStar {
    /// Projective dimension of the family of lines through the point.
    pub fn star_dim(&self) -> isize {
        self.directions.proj_dim()
    }
}

pub fn lines_through(omega: &AlternatingTensor, point: &[Scalar]) -> Result<LineStar> {
    let ctx = omega.ctx();
    if point.iter().all(Scalar::is_zero) {
        return Err(Error::Zero("point is zero".into()));
    }
    let k = build_m(omega)?.eval(point).kernel();
    let kernel = LinearSubspace::from_spanning(ctx, Ambient::POINTS, &k);
    // Put P first so the pivot columns after it form a complement.
    let with_p = Matrix::from_columns(ctx.field(), ctx.dim(), &[point.to_vec()]).hstack(&k);
    let chosen = with_p.independent_columns();
    debug_assert_eq!(chosen.first(), Some(&0), "P lies in the kernel of M_ω(P)");
    let rest: Vec<Vec<Scalar>> = chosen.iter().skip(1).map(|&c| with_p.column(c)).collect();
    let directions = LinearSubspace::from_vectors(ctx, Ambient::POINTS, &rest);
    Ok(LineStar { point: point.to_vec(), kernel, directions })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub order: usize,
    /// Points at which the line count took the generic value.
    pub agreeing: usize,
    /// Points drawn before `agreeing` was reached that lie on the rank-drop locus.
    pub exceptional: usize,
}

/// Number of lines through a general point.
///
/// The generic value is the one at maximal rank of `M_ω`; points where the rank
/// drops lie on a proper closed subset, which over F_p still carries about
/// `deg / p` of the points. Draws continue until `samples` points agree, with a
/// budget of `2 * samples` draws.
pub fn order(omega: &AlternatingTensor, samples: usize, seed: u64) -> Result<OrderReport> {
    let ctx = omega.ctx();
    ctx.field().require_prime(101)?;
    if samples == 0 {
        return Err(Error::Precondition("order needs at least one sample".into()));
    }
    let m = build_m(omega)?;
    let kernels: Vec<usize> = (0..2 * samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
            ctx.dim() - rank_at(&m, &random_coords(ctx, &mut rng))
        })
        .collect();
    let generic = *kernels.iter().min().unwrap();
    let mut agreeing = 0;
    let mut exceptional = 0;
    for &k in &kernels {
        if k == generic {
            agreeing += 1;
            if agreeing == samples {
                break;
            }
        } else {
            exceptional += 1;
        }
    }
    if agreeing < samples {
        return Err(Error::NonGeneric(format!(
            "only {agreeing} of {} sampled points have the generic line count",
            2 * samples
        )));
    }
    // P itself spans one kernel direction; the rest are lines through P.
    Ok(OrderReport { order: generic - 1, agreeing, exceptional })
}

/// Largest p for which roots are found by scanning all of F_p.
pub const ROOT_SCAN_LIMIT: u64 = 100_000;

/// A random line of X_ω, deterministic in `seed`.
///
/// For odd n the line through a random point is unique; for even n a point
/// of F_ω is found on a random line through the sub-Pfaffian gcd.
pub fn sample_line_on_x(omega: &AlternatingTensor, seed: u64) -> Result<AlternatingTensor> {
    let ctx = omega.ctx();
    let p = ctx.field().require_prime(2)?;
    let m = build_m(omega)?;
    let n = ctx.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let point = if n % 2 == 1 {
            random_coords(ctx, &mut rng)
        } else {
            if p > ROOT_SCAN_LIMIT {
                return Err(Error::Precondition(format!("root scan needs p <= {ROOT_SCAN_LIMIT}")));
            }
            let p0 = random_coords(ctx, &mut rng);
            let p1 = random_coords(ctx, &mut rng);
            let g = fundamental_poly_on_line(&m, &p0, &p1)?;
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            let roots = g.roots_by_scan()?;
            if roots.is_empty() {
                continue;
            }
            let t = &roots[rng.gen_range(0..roots.len())];
            point_on_line(&p0, &p1, t)
        };
        if point.iter().all(Scalar::is_zero) {
            continue;
        }
        let star = lines_through(omega, &point)?;
        if star.directions.dim() == 0 {
            continue;
        }
        let coeffs: Vec<Scalar> =
            (0..star.directions.dim()).map(|_| Scalar::random(ctx.field(), &mut rng)).collect();
        let f = star.directions.combine(&coeffs);
        let l = AlternatingTensor::from_coords(ctx, Variance::Vector, &point)
            .wedge(&AlternatingTensor::from_coords(ctx, Variance::Vector, &f))?;
        if l.is_zero() {
            continue;
        }
        debug_assert!(member_x(omega, &l)?);
        return Ok(l);
    }
    Err(Error::Budget("no line of X_ω found".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalCertificate {
    pub point: AlternatingTensor,
    pub on_x: bool,
    pub tangent_dim: usize,
    pub smooth_of_expected_dim: bool,
}

/// Span of `V ^ f + e ^ V` for a line `L = e ^ f`: the affine tangent space of G at L.
pub fn grassmannian_tangent(l: &AlternatingTensor) -> Result<LinearSubspace> {
    let ctx = l.ctx();
    let (e, f) = decompose_bivector(l)?;
    let e = AlternatingTensor::from_coords(ctx, Variance::Vector, &e);
    let f = AlternatingTensor::from_coords(ctx, Variance::Vector, &f);
    let mut gens = Vec::new();
    for i in 0..ctx.dim() {
        let v = AlternatingTensor::vector(ctx, &[i]);
        gens.push(v.wedge(&f)?.to_dense());
        gens.push(e.wedge(&v)?.to_dense());
    }
    Ok(LinearSubspace::from_vectors(ctx, Ambient::BIVECTORS, &gens))
}

/// Projective tangent dimension of X_ω at `L`, as `T_L G ∩ Λ_ω`.
pub fn tangent_certificate(omega: &AlternatingTensor, l: &AlternatingTensor) -> Result<LocalCertificate> {
    if !member_x(omega, l)? {
        return Err(Error::Precondition("line is not in X_ω".into()));
    }
    let span = lambda_omega(omega)?;
    tangent_in(l, &span, omega.ctx().n() - 1)
}

pub(crate) fn tangent_in(l: &AlternatingTensor, span: &LinearSubspace, expected: usize) -> Result<LocalCertificate> {
    let t = grassmannian_tangent(l)?.intersect(span)?;
    let tangent_dim = t.dim() - 1;
    Ok(LocalCertificate {
        point: l.clone(),
        on_x: true,
        tangent_dim,
        smooth_of_expected_dim: tangent_dim == expected,
    })
}

#[derive(Clone, Debug)]
pub struct QuadricsThroughSpan {
    pub dimension: usize,
    pub basis: Vec<AlternatingTensor>,
    pub matches_q_omega: bool,
}

/// 4-forms whose Plücker quadric contains the linear space `Λ_ω`.
pub fn quadrics_through_span(omega: &AlternatingTensor) -> Result<QuadricsThroughSpan> {
    let ctx = omega.ctx();
    let span = lambda_omega(omega)?;
    let b = span.basis_tensors();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let squares: Vec<AlternatingTensor> = b.iter().map(reduced_square).collect::<Result<_>>()?;
    for (i, bi) in b.iter().enumerate() {
        rows.push(squares[i].to_dense());
        for (j, bj) in b.iter().enumerate().skip(i + 1) {
            // Polarization, plus the mixed term itself for characteristic 2.
            let polar = reduced_square(&bi.add(bj)?)?.sub(&squares[i])?.sub(&squares[j])?;
            rows.push(polar.to_dense());
            rows.push(bi.wedge(bj)?.to_dense());
        }
    }
    let width = binomial(ctx.dim(), 4);
    let eqs = if rows.is_empty() { Matrix::zeros(ctx.field(), 0, width) } else { Matrix::from_rows(ctx.field(), rows) };
    let solutions = LinearSubspace::kernel_of(ctx, Ambient::Forms(4), &eqs);
    let q_omega: Vec<Vec<Scalar>> = (0..ctx.dim())
        .map(|k| Ok(omega.wedge(&AlternatingTensor::form(ctx, &[k]))?.to_dense()))
        .collect::<Result<_>>()?;
    let q_omega = LinearSubspace::from_vectors(ctx, Ambient::Forms(4), &q_omega);
    Ok(QuadricsThroughSpan {
        dimension: solutions.dim(),
        basis: solutions.basis_tensors(),
        matches_q_omega: solutions.equals(&q_omega)?,
    })
}

/// All 3-forms `ω'` with `ω'(L) = 0` for every `L` in `span`.
pub fn recover_forms(span: &LinearSubspace) -> Result<LinearSubspace> {
    let ctx = span.ctx();
    if span.ambient() != Ambient::BIVECTORS {
        return Err(Error::Precondition("recover_forms needs a space of bivectors".into()));
    }
    let mut rows = Vec::new();
    for b in span.basis_tensors() {
        for k in 0..ctx.dim() {
            rows.push(b.wedge(&AlternatingTensor::vector(ctx, &[k]))?.to_dense());
        }
    }
    if rows.is_empty() {
        return Ok(LinearSubspace::whole(ctx, Ambient::Forms(3)));
    }
    Ok(LinearSubspace::kernel_of(ctx, Ambient::Forms(3), &Matrix::from_rows(ctx.field(), rows)))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SectionReport {
    pub p: u64,
    pub span_points: u64,
    pub grassmannian_points: u64,
    pub only_x_omega: u64,
    pub only_x_omega_x: u64,
    pub both: u64,
    pub neither: u64,
    /// Points of both parts with `β_x(L) != 0`.
    pub overlap_violations: u64,
    /// Set when p is below the threshold used for randomized checks.
    pub heuristic_small_characteristic: bool,
}

/// Classifies the F_p-lines of `Λ_ω^x` as lying in X_ω, in X_{ω_x}, or both.
pub fn classify_linear_section(omega: &AlternatingTensor, x: &AlternatingTensor) -> Result<SectionReport> {
    classify_points_of(omega, x, &lambda_x(omega, x)?)
}

/// As [`classify_linear_section`] for an arbitrary bivector space.
pub fn classify_points_of(omega: &AlternatingTensor, x: &AlternatingTensor, space: &LinearSubspace) -> Result<SectionReport> {
    let ctx = omega.ctx();
    let p = ctx.field().require_prime(2)?;
    let pts = ProjectiveFp::new(space.dim(), p);
    let total = pts.check_budget(1_000_000)?;
    let split = split_along_covector(omega, x)?;
    let lx = lambda_omega_x(omega, x)?;
    let lx_eq = lx.equations();
    let empty = || SectionReport { p, heuristic_small_characteristic: p < 101, ..Default::default() };
    let report = (0..total)
        .into_par_iter()
        .fold(empty, |mut acc, k| {
            let dense = space.combine(&pts.point_scalars(k));
            let l = AlternatingTensor::from_dense(ctx, 2, Variance::Vector, &dense);
            acc.span_points += 1;
            if !is_decomposable(&l).unwrap() {
                return acc;
            }
            acc.grassmannian_points += 1;
            let in_x = contract(omega, &l).unwrap().is_zero();
            let in_xx = lx_eq.mul_vec(&dense).iter().all(Scalar::is_zero);
            match (in_x, in_xx) {
                (true, true) => {
                    acc.both += 1;
                    if !split.beta_x.pair(&l).unwrap().is_zero() {
                        acc.overlap_violations += 1;
                    }
                }
                (true, false) => acc.only_x_omega += 1,
                (false, true) => acc.only_x_omega_x += 1,
                (false, false) => acc.neither += 1,
            }
            acc
        })
        .reduce(empty, |a, b| SectionReport {
            p,
            span_points: a.span_points + b.span_points,
            grassmannian_points: a.grassmannian_points + b.grassmannian_points,
            only_x_omega: a.only_x_omega + b.only_x_omega,
            only_x_omega_x: a.only_x_omega_x + b.only_x_omega_x,
            both: a.both + b.both,
            neither: a.neither + b.neither,
            overlap_violations: a.overlap_violations + b.overlap_violations,
            heuristic_small_characteristic: p < 101,
        });
    Ok(report)
}

/// Bivectors `e_I` of basis order, as tensors (used by tests and suites).
pub fn basis_bivectors(ctx: SpaceContext) -> Vec<AlternatingTensor> {
    k_subsets(ctx.dim(), 2).iter().map(|s| AlternatingTensor::vector(ctx, &s.indices())).collect()
}

/// Expected projective dimension of the line star at a point of rank `r`.
pub fn star_dim_for_rank(n: usize, r: usize) -> isize {
    n as isize - r as isize - 1
}

/// Generic rank helper re-exported for callers of this module.
pub fn generic_rank(n: usize) -> usize {
    expected_generic_rank(n)
}
