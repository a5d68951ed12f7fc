//! Ranks of forms, the genericity conditions, the quadric of a 4-form, and
//! the lattice of linear spans attached to a 3-form.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::degeneracy::{build_m, rank_at};
use crate::error::{Error, Result};
use crate::exterior::{
    binomial, k_subsets, random_coords, reduced_square, shuffle_sign, subset_rank, AlternatingTensor,
    SpaceContext, Variance,
};
use crate::field::Scalar;
use crate::matrix::{rank_kernel, Matrix};
use crate::projective::ProjectiveFp;
use crate::seeds::derive_seed;
use crate::subspace::{Ambient, LinearSubspace};

/// Matrix of `Λ^j V → Λ^{i-j} V*`, `v ↦ contract(f, v)`, in basis order.
pub fn contraction_matrix(f: &AlternatingTensor, j: usize) -> Result<Matrix> {
    if f.variance() != Variance::Form {
        return Err(Error::Variance("j-rank of a vector".into()));
    }
    let i = f.degree();
    if j > i {
        return Err(Error::Degree(format!("j = {j} exceeds degree {i}")));
    }
    let ctx = f.ctx();
    let d = ctx.dim();
    let mut m = Matrix::zeros(ctx.field(), binomial(d, i - j), binomial(d, j));
    for (set, c) in f.terms() {
        for sub in k_subsets(d, j) {
            // sub is a j-subset of 0..d; keep only those inside `set`.
            if !sub.is_subset(*set) {
                continue;
            }
            let rest = set.minus(sub);
            let (r, col) = (subset_rank(d, rest), subset_rank(d, sub));
            let v = if shuffle_sign(sub, rest) { c.clone() } else { -c };
            let cur = m.get(r, col) + &v;
            m.set(r, col, cur);
        }
    }
    Ok(m)
}

/// Rank of the contraction map `Λ^j V → Λ^{i-j} V*`.
pub fn j_rank(f: &AlternatingTensor, j: usize) -> Result<usize> {
    Ok(contraction_matrix(f, j)?.rank())
}

/// Matrix of `x ↦ ω ^ x` from V* to `Λ^4 V*`.
pub fn wedge_map_matrix(omega: &AlternatingTensor) -> Result<Matrix> {
    let ctx = omega.ctx();
    let cols: Vec<Vec<Scalar>> = (0..ctx.dim())
        .map(|i| Ok(omega.wedge(&AlternatingTensor::form(ctx, &[i]))?.to_dense()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(ctx.field(), binomial(ctx.dim(), omega.degree() + 1), &cols))
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Gc3Status {
    /// A nonzero `v` with `rk contract(ω, v) ≤ 2`.
    Falsified { witness: Vec<Scalar>, rank: usize },
    /// No witness among `samples` random points; `exhaustive_p` is set when
    /// every point of P^n(F_p) was also checked.
    Unfalsified { samples: usize, exhaustive_p: Option<u64> },
}

impl Gc3Status {
    pub fn holds(&self) -> bool {
        matches!(self, Gc3Status::Unfalsified { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericityReport {
    pub rank_omega: usize,
    pub gc1: bool,
    pub gc2: bool,
    pub gc3: Gc3Status,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct GenericityOptions {
    pub samples: usize,
    /// Scan all of P^n(F_p) when it has at most 10^6 points.
    pub exhaustive: bool,
    pub seed: u64,
}

impl Default for GenericityOptions {
    fn default() -> Self {
        GenericityOptions { samples: 10_000, exhaustive: true, seed: 0 }
    }
}

pub const EXHAUSTIVE_BUDGET: u64 = 1_000_000;

pub fn genericity(omega: &AlternatingTensor, opts: GenericityOptions) -> Result<GenericityReport> {
    if omega.variance() != Variance::Form || omega.degree() != 3 {
        return Err(Error::Degree("genericity of a non-3-form".into()));
    }
    let ctx = omega.ctx();
    let rank_omega = j_rank(omega, 1)?;
    let gc2 = rank_omega == ctx.dim();
    let gc1 = wedge_map_matrix(omega)?.rank() == ctx.dim();
    let m = build_m(omega)?;
    let mut notes = Vec::new();

    let hit = (0..opts.samples).into_par_iter().find_map_first(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, i as u64));
        let v = random_coords(ctx, &mut rng);
        let r = rank_at(&m, &v);
        (r <= 2).then_some((v, r))
    });
    let mut gc3 = match hit {
        Some((witness, rank)) => Gc3Status::Falsified { witness, rank },
        None => Gc3Status::Unfalsified { samples: opts.samples, exhaustive_p: None },
    };
    if let (Gc3Status::Unfalsified { .. }, Some(p)) = (&gc3, ctx.field().modulus()) {
        let space = ProjectiveFp::new(ctx.dim(), p);
        match space.count() {
            Some(total) if opts.exhaustive && total <= EXHAUSTIVE_BUDGET => {
                let hit = (0..total).into_par_iter().find_map_first(|k| {
                    let v = space.point_scalars(k);
                    let r = rank_at(&m, &v);
                    (r <= 2).then_some((v, r))
                });
                gc3 = match hit {
                    Some((witness, rank)) => Gc3Status::Falsified { witness, rank },
                    None => Gc3Status::Unfalsified { samples: opts.samples, exhaustive_p: Some(p) },
                };
            }
            _ => notes.push("gc3: exhaustive scan not run".to_string()),
        }
    }
    if !gc2 {
        notes.push(format!("rank {rank_omega} < {}", ctx.dim()));
    }
    Ok(GenericityReport { rank_omega, gc1, gc2, gc3, notes })
}

/// The polarity `ρ_η` of a 4-form with its rank and singular locus.
#[derive(Clone, Debug)]
pub struct QuadricAnalysis {
    pub eta: AlternatingTensor,
    pub rho: Matrix,
    pub rank: usize,
    pub singular_locus: LinearSubspace,
    /// Whether `q_η(L) = ½ Lᵀ ρ L` was checked (skipped in characteristic 2).
    pub polarity_checked: bool,
}

/// `ρ_η[(ab), (cd)] = <η, e_ab ^ e_cd>`.
pub fn polarity_matrix(eta: &AlternatingTensor) -> Matrix {
    let ctx = eta.ctx();
    let pairs = k_subsets(ctx.dim(), 2);
    let mut rho = Matrix::zeros(ctx.field(), pairs.len(), pairs.len());
    for (r, a) in pairs.iter().enumerate() {
        for (c, b) in pairs.iter().enumerate() {
            if a.is_disjoint(*b) {
                let v = eta.coeff(a.union(*b));
                rho.set(r, c, if shuffle_sign(*a, *b) { v } else { -v });
            }
        }
    }
    rho
}

/// `q_η(L) = <η, L^[2]>`.
pub fn q_eta(eta: &AlternatingTensor, l: &AlternatingTensor) -> Result<Scalar> {
    eta.pair(&reduced_square(l)?)
}

pub fn quadric_of(eta: &AlternatingTensor) -> Result<QuadricAnalysis> {
    if eta.variance() != Variance::Form || eta.degree() != 4 {
        return Err(Error::Degree("quadric of a non-4-form".into()));
    }
    let ctx = eta.ctx();
    let rho = polarity_matrix(eta);
    let (rank, kernel) = rank_kernel(&rho);
    let singular_locus = LinearSubspace::from_spanning(ctx, Ambient::BIVECTORS, &kernel);
    let polarity_checked = ctx.field().characteristic() != 2;
    if polarity_checked {
        let half = ctx.scalar(2).inv().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x51_4554_41);
        for _ in 0..4 {
            let l = crate::exterior::random_tensor_with(ctx, 2, Variance::Vector, &mut rng);
            let dense = l.to_dense();
            let quad = crate::degeneracy::dot(&rho.mul_vec(&dense), &dense);
            if q_eta(eta, &l)? != &half * &quad {
                return Err(Error::Convention("q_η(L) differs from ½ Lᵀ ρ L".into()));
            }
        }
    }
    Ok(QuadricAnalysis { eta: eta.clone(), rho, rank, singular_locus, polarity_checked })
}

/// Kernel in `Λ²V` of the linear map sending a basis bivector `e_ab` to `image(e_ab)`.
pub fn bivector_kernel<F>(ctx: SpaceContext, image: F) -> Result<LinearSubspace>
where
    F: Fn(&AlternatingTensor) -> Result<Vec<Scalar>>,
{
    let cols: Vec<Vec<Scalar>> = k_subsets(ctx.dim(), 2)
        .iter()
        .map(|s| image(&AlternatingTensor::vector(ctx, &s.indices())))
        .collect::<Result<_>>()?;
    let rows = cols.first().map_or(0, |c| c.len());
    let m = Matrix::from_columns(ctx.field(), rows, &cols);
    Ok(LinearSubspace::kernel_of(ctx, Ambient::BIVECTORS, &m))
}

fn check_form(t: &AlternatingTensor, k: usize, what: &str) -> Result<()> {
    if t.variance() != Variance::Form || t.degree() != k {
        return Err(Error::Degree(format!("{what} must be a {k}-form")));
    }
    Ok(())
}

/// `Λ_ω = {L : ω(L) = 0}`.
pub fn lambda_omega(omega: &AlternatingTensor) -> Result<LinearSubspace> {
    check_form(omega, 3, "ω")?;
    bivector_kernel(omega.ctx(), |l| Ok(omega.interior(l)?.to_dense()))
}

/// `Λ_ω^x = {L : ω(L) ^ x = 0}`.
pub fn lambda_x(omega: &AlternatingTensor, x: &AlternatingTensor) -> Result<LinearSubspace> {
    check_form(x, 1, "x")?;
    bivector_kernel(omega.ctx(), |l| Ok(omega.interior(l)?.wedge(x)?.to_dense()))
}

/// `Λ_ω^{xy} = {L : ω(L) ^ x ^ y = 0}`.
pub fn lambda_xy(omega: &AlternatingTensor, x: &AlternatingTensor, y: &AlternatingTensor) -> Result<LinearSubspace> {
    let xy = x.wedge(y)?;
    bivector_kernel(omega.ctx(), |l| Ok(omega.interior(l)?.wedge(&xy)?.to_dense()))
}

/// `Λ_{ω_x} = {L : x(L) = 0, ω(L) ^ x = 0}`.
pub fn lambda_omega_x(omega: &AlternatingTensor, x: &AlternatingTensor) -> Result<LinearSubspace> {
    check_form(x, 1, "x")?;
    bivector_kernel(omega.ctx(), |l| {
        let mut v = l.interior(x)?.to_dense();
        v.extend(omega.interior(l)?.wedge(x)?.to_dense());
        Ok(v)
    })
}

/// `Λ_{ω,x∧y} = {L : (x^y)(L) = 0, ω(L) ^ x ^ y = 0}`.
pub fn lambda_omega_xy(omega: &AlternatingTensor, x: &AlternatingTensor, y: &AlternatingTensor) -> Result<LinearSubspace> {
    let xy = x.wedge(y)?;
    bivector_kernel(omega.ctx(), |l| {
        let mut v = vec![xy.pair(l)?];
        v.extend(omega.interior(l)?.wedge(&xy)?.to_dense());
        Ok(v)
    })
}

#[derive(Clone, Debug)]
pub struct SpanLattice {
    pub lambda_omega: LinearSubspace,
    pub lambda_x: LinearSubspace,
    pub lambda_xy: LinearSubspace,
    pub lambda_omega_x: LinearSubspace,
    pub lambda_omega_xy: LinearSubspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanCodims {
    pub lambda_omega: usize,
    pub lambda_x: usize,
    pub lambda_xy: usize,
    pub lambda_omega_x: usize,
    pub lambda_omega_xy: usize,
}

impl SpanLattice {
    pub fn codims(&self) -> SpanCodims {
        SpanCodims {
            lambda_omega: self.lambda_omega.codim(),
            lambda_x: self.lambda_x.codim(),
            lambda_xy: self.lambda_xy.codim(),
            lambda_omega_x: self.lambda_omega_x.codim(),
            lambda_omega_xy: self.lambda_omega_xy.codim(),
        }
    }

    /// `Λ_ω ⊆ Λ^x ⊆ Λ^{xy}`, `Λ_{ω_x} ⊆ Λ^x`, `Λ_{ω,x∧y} ⊆ Λ^{xy}`.
    pub fn containments_hold(&self) -> Result<bool> {
        Ok(self.lambda_x.contains(&self.lambda_omega)?
            && self.lambda_xy.contains(&self.lambda_x)?
            && self.lambda_x.contains(&self.lambda_omega_x)?
            && self.lambda_xy.contains(&self.lambda_omega_xy)?)
    }
}

pub fn span_lattice(omega: &AlternatingTensor, x: &AlternatingTensor, y: &AlternatingTensor) -> Result<SpanLattice> {
    check_form(omega, 3, "ω")?;
    check_form(x, 1, "x")?;
    check_form(y, 1, "y")?;
    if x.wedge(y)?.is_zero() {
        return Err(Error::Precondition("x and y are dependent".into()));
    }
    Ok(SpanLattice {
        lambda_omega: lambda_omega(omega)?,
        lambda_x: lambda_x(omega, x)?,
        lambda_xy: lambda_xy(omega, x, y)?,
        lambda_omega_x: lambda_omega_x(omega, x)?,
        lambda_omega_xy: lambda_omega_xy(omega, x, y)?,
    })
}

/// Rank of the restriction of a form to the hyperplane `ker x` (or to
/// `ker x ∩ ker y` when `y` is given), computed on an explicit basis.
pub fn restricted_rank(form: &AlternatingTensor, covectors: &[&AlternatingTensor]) -> Result<usize> {
    let ctx = form.ctx();
    let rows: Vec<Vec<Scalar>> = covectors.iter().map(|c| c.to_dense()).collect();
    let eqs = Matrix::from_rows(ctx.field(), rows);
    let basis = eqs.kernel().columns();
    if basis.len() < 2 {
        return Ok(0);
    }
    let sub = SpaceContext::of_dim(basis.len(), ctx.field());
    let pulled = crate::exterior::pullback(form, &basis, sub)?;
    j_rank(&pulled, 1)
}
