//! The residual congruence `Y = Y_{ω,x∧y}` of lines meeting `Π = {x = y = 0}`,
//! and its fundamental locus G, accessed through the line system `Φ_P`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{member_x, sample_line_on_x};
use crate::degeneracy::{build_m, point_on_line, secant_pencil, LinearMatrix};
use crate::error::{Error, Result};
use crate::exterior::{
    contract, is_decomposable, pullback, pushforward, random_coords, random_tensor_with, AlternatingTensor,
    SpaceContext, Variance,
};
use crate::field::Scalar;
use crate::form_analysis::{contraction_matrix, lambda_omega, lambda_omega_xy, q_eta};
use crate::matrix::Matrix;
use crate::poly::{poly_gcd_all, UniPoly};
use crate::projective::ProjectiveFp;
use crate::seeds::derive_seed;
use crate::subspace::{Ambient, LinearSubspace};

#[derive(Clone, Debug)]
pub struct ResidualHandle {
    pub omega: AlternatingTensor,
    pub x: AlternatingTensor,
    pub y: AlternatingTensor,
    /// `Λ_{ω,x∧y}`.
    pub span: LinearSubspace,
    /// `Π = {x = y = 0}` as a subspace of V.
    pub pi: LinearSubspace,
}

impl ResidualHandle {
    pub fn new(omega: &AlternatingTensor, x: &AlternatingTensor, y: &AlternatingTensor) -> Result<Self> {
        let ctx = omega.ctx();
        for c in [x, y] {
            if c.variance() != Variance::Form || c.degree() != 1 {
                return Err(Error::Degree("x and y must be 1-forms".into()));
            }
        }
        if x.wedge(y)?.is_zero() {
            return Err(Error::Precondition("x and y are dependent".into()));
        }
        // <x, y> must lie in the image of L ↦ ω(L).
        let image = LinearSubspace::from_spanning(ctx, Ambient::Forms(1), &contraction_matrix(omega, 2)?);
        if !image.contains_tensor(x) || !image.contains_tensor(y) {
            return Err(Error::Precondition("x, y not in the image of ω on bivectors".into()));
        }
        let eqs = Matrix::from_rows(ctx.field(), vec![x.to_dense(), y.to_dense()]);
        Ok(ResidualHandle {
            omega: omega.clone(),
            x: x.clone(),
            y: y.clone(),
            span: lambda_omega_xy(omega, x, y)?,
            pi: LinearSubspace::kernel_of(ctx, Ambient::POINTS, &eqs),
        })
    }

    /// Seeded random covectors.
    pub fn random(omega: &AlternatingTensor, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = omega.ctx();
        for _ in 0..16 {
            let x = random_tensor_with(ctx, 1, Variance::Form, &mut rng);
            let y = random_tensor_with(ctx, 1, Variance::Form, &mut rng);
            if let Ok(h) = Self::new(omega, &x, &y) {
                return Ok(h);
            }
        }
        Err(Error::Budget("no valid pair of covectors".into()))
    }

    pub fn ctx(&self) -> SpaceContext {
        self.omega.ctx()
    }

    /// Vectors of V on which `a x + b y` vanishes.
    pub fn hyperplane_basis(&self, a: &Scalar, b: &Scalar) -> Vec<Vec<Scalar>> {
        let z = self.x.scale(a).add(&self.y.scale(b)).unwrap();
        Matrix::from_rows(self.ctx().field(), vec![z.to_dense()]).kernel().columns()
    }
}

/// `L` is a line, `(x^y)(L) = 0` and `ω(L) ^ x ^ y = 0`.
pub fn member_y(h: &ResidualHandle, l: &AlternatingTensor) -> Result<bool> {
    if l.is_zero() || !is_decomposable(l)? {
        return Ok(false);
    }
    let xy = h.x.wedge(&h.y)?;
    Ok(xy.pair(l)?.is_zero() && contract(&h.omega, l)?.wedge(&xy)?.is_zero())
}

/// `Φ_P : f ↦ (<ω, P^f^v_k>)_k ⊕ (x^y)(P^f)` for a basis `v_k` of `V_{x∧y}`.
pub fn line_system_matrix(h: &ResidualHandle) -> Result<LinearMatrix> {
    let ctx = h.ctx();
    let d = ctx.dim();
    let vs = h.pi.basis_vectors();
    let mut phi = LinearMatrix::zeros(ctx, vs.len() + 1, d);
    for (k, v) in vs.iter().enumerate() {
        let vt = AlternatingTensor::from_coords(ctx, Variance::Vector, v);
        // Coefficient of P_i in entry (k, j) is <ω, e_i ^ e_j ^ v>.
        let c = contract(&h.omega, &vt)?;
        for j in 0..d {
            let form: Vec<Scalar> = (0..d).map(|i| skew_coeff(&c, i, j)).collect();
            phi.set_entry(k, j, form);
        }
    }
    let (xd, yd) = (h.x.to_dense(), h.y.to_dense());
    for j in 0..d {
        let form: Vec<Scalar> = (0..d).map(|i| &xd[i] * &yd[j] - &yd[i] * &xd[j]).collect();
        phi.set_entry(vs.len(), j, form);
    }
    Ok(phi)
}

fn skew_coeff(t: &AlternatingTensor, i: usize, j: usize) -> Scalar {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => t.coeff_of(&[i, j]),
        std::cmp::Ordering::Greater => -t.coeff_of(&[j, i]),
        std::cmp::Ordering::Equal => t.ctx().zero(),
    }
}

#[derive(Clone, Debug)]
pub struct LineSystem {
    pub point: Vec<Scalar>,
    pub matrix: Matrix,
}

pub fn line_system(h: &ResidualHandle, point: &[Scalar]) -> Result<LineSystem> {
    Ok(LineSystem { point: point.to_vec(), matrix: line_system_matrix(h)?.eval(point) })
}

#[derive(Clone, Debug, Serialize)]
pub struct GMembership {
    pub on_g: bool,
    pub kernel_dim: usize,
    /// `kernel_dim - 1`: the directions left after removing P itself.
    pub line_star_dim: usize,
}

pub fn g_membership(h: &ResidualHandle, point: &[Scalar]) -> Result<GMembership> {
    if point.iter().all(Scalar::is_zero) {
        return Err(Error::Zero("point is zero".into()));
    }
    Ok(membership_from(&line_system_matrix(h)?, point, h.ctx().n()))
}

fn membership_from(phi: &LinearMatrix, point: &[Scalar], n: usize) -> GMembership {
    let kernel_dim = phi.cols() - phi.eval(point).rank();
    let threshold = if n % 2 == 1 { 2 } else { 3 };
    GMembership { on_g: kernel_dim >= threshold, kernel_dim, line_star_dim: kernel_dim - 1 }
}

/// Histogram of `dim ker Φ_P` over random points.
pub fn phi_kernel_histogram(h: &ResidualHandle, samples: usize, seed: u64) -> Result<std::collections::BTreeMap<usize, usize>> {
    h.ctx().field().require_prime(101)?;
    let phi = line_system_matrix(h)?;
    let ctx = h.ctx();
    let dims: Vec<usize> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
            let p = random_coords(ctx, &mut rng);
            let m = phi.eval(&p);
            debug_assert!(m.mul_vec(&p).iter().all(Scalar::is_zero));
            phi.cols() - m.rank()
        })
        .collect();
    let mut hist = std::collections::BTreeMap::new();
    for d in dims {
        *hist.entry(d).or_insert(0) += 1;
    }
    Ok(hist)
}

/// A line of Y with the pencil member `[a:b]` whose hyperplane contains it.
#[derive(Clone, Debug)]
pub struct YSample {
    pub line: AlternatingTensor,
    pub a: Scalar,
    pub b: Scalar,
    /// Basis of `{a x + b y = 0}`.
    pub hyperplane: Vec<Vec<Scalar>>,
    /// ω restricted to the hyperplane, in the coordinates of `hyperplane`.
    pub local_form: AlternatingTensor,
    /// The line in the same coordinates.
    pub local_line: AlternatingTensor,
}

/// Samples `X_{ω|H}` for a random hyperplane `H = {a x + b y = 0}` of the pencil.
pub fn sample_line_on_y(h: &ResidualHandle, seed: u64) -> Result<YSample> {
    let ctx = h.ctx();
    let field = ctx.field();
    field.require_prime(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..32u64 {
        let (a, b) = if rng.gen_bool(0.5) {
            (Scalar::one(field), Scalar::random(field, &mut rng))
        } else {
            (Scalar::random(field, &mut rng), Scalar::one(field))
        };
        let basis = h.hyperplane_basis(&a, &b);
        let sub = SpaceContext::of_dim(basis.len(), field);
        let local_form = pullback(&h.omega, &basis, sub)?;
        let Ok(local_line) = sample_line_on_x(&local_form, derive_seed(seed, attempt)) else {
            continue;
        };
        let line = pushforward(&local_line, &basis, ctx)?;
        if member_y(h, &line)? {
            return Ok(YSample { line, a, b, hyperplane: basis, local_form, local_line });
        }
        return Err(Error::Convention("pushed-forward line is not in Y".into()));
    }
    Err(Error::Budget("no line of Y found".into()))
}

/// Whether random elements of `Λ_{ω,x∧y}` lie on every quadric `Q_{ω∧(cx+dy)}` tried.
pub fn span_in_pencil_quadrics(h: &ResidualHandle, samples: usize, seed: u64) -> Result<bool> {
    let ctx = h.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let coeffs: Vec<Scalar> = (0..h.span.dim()).map(|_| Scalar::random(ctx.field(), &mut rng)).collect();
        let l = AlternatingTensor::from_dense(ctx, 2, Variance::Vector, &h.span.combine(&coeffs));
        let c = Scalar::random(ctx.field(), &mut rng);
        let d = Scalar::random(ctx.field(), &mut rng);
        let z = h.x.scale(&c).add(&h.y.scale(&d))?;
        for cov in [&h.x, &h.y, &z] {
            if !q_eta(&h.omega.wedge(cov)?, &l)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct SingYReport {
    pub line: AlternatingTensor,
    /// Projective dimension of `T_L G(2, V_{x∧y}) ∩ Λ_ω`.
    pub dimension: usize,
    pub expected: isize,
    pub planes_tried: usize,
}

/// Finds a line of `X_ω ∩ G(2, V_{x∧y})` on a random plane of Π and
/// certifies the dimension of that locus by its tangent space there.
pub fn sing_y_dimension(h: &ResidualHandle, seed: u64) -> Result<SingYReport> {
    let ctx = h.ctx();
    let field = ctx.field();
    let p = field.require_prime(2)?;
    let n = ctx.n();
    if n < 5 {
        return Err(Error::Precondition("singular locus of Y needs n >= 5".into()));
    }
    let m = build_m(&h.omega)?;
    let vs = h.pi.basis_vectors();
    let b = Matrix::from_columns(field, ctx.dim(), &vs);
    let plane = ProjectiveFp::new(3, p);
    let total = plane.check_budget(1_000_000)?;
    let span = lambda_omega(&h.omega)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for tried in 1..=24 {
        let gens: Vec<Vec<Scalar>> = (0..3)
            .map(|_| {
                let c: Vec<Scalar> = (0..vs.len()).map(|_| Scalar::random(field, &mut rng)).collect();
                h.pi.combine(&c)
            })
            .collect();
        let g = Matrix::from_columns(field, ctx.dim(), &gens);
        if g.rank() < 3 {
            continue;
        }
        let hit = (0..total).into_par_iter().find_map_first(|k| {
            let u = g.mul_vec(&plane.point_scalars(k));
            let a = m.eval(&u).mul(&b).unwrap();
            let ker = a.kernel();
            (ker.cols() >= 2).then(|| (u, ker))
        });
        let Some((u, ker)) = hit else { continue };
        let f = (0..ker.cols())
            .map(|c| b.mul_vec(&ker.column(c)))
            .find(|f| {
                let ut = AlternatingTensor::from_coords(ctx, Variance::Vector, &u);
                !ut.wedge(&AlternatingTensor::from_coords(ctx, Variance::Vector, f)).unwrap().is_zero()
            })
            .ok_or_else(|| Error::Convention("kernel directions all proportional to u".into()))?;
        let ut = AlternatingTensor::from_coords(ctx, Variance::Vector, &u);
        let ft = AlternatingTensor::from_coords(ctx, Variance::Vector, &f);
        let line = ut.wedge(&ft)?;
        if !member_x(&h.omega, &line)? {
            return Err(Error::Convention("singular-locus candidate is not in X_ω".into()));
        }
        let mut gens = Vec::new();
        for v in &vs {
            let vt = AlternatingTensor::from_coords(ctx, Variance::Vector, v);
            gens.push(vt.wedge(&ft)?.to_dense());
            gens.push(ut.wedge(&vt)?.to_dense());
        }
        let tangent = LinearSubspace::from_vectors(ctx, Ambient::BIVECTORS, &gens).intersect(&span)?;
        return Ok(SingYReport {
            line,
            dimension: tangent.dim() - 1,
            expected: n as isize - 5,
            planes_tried: tried,
        });
    }
    Err(Error::Budget("no F_p-rational point of the singular locus found on sampled planes".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct GDegreeReport {
    /// Degree of the reduced hypersurface G.
    pub degree: usize,
    /// Degree of the gcd of the maximal minors of `Φ_P` along each line.
    pub minor_gcd_degrees: Vec<usize>,
    pub pi_points_on_g: usize,
    pub f_points_on_g: usize,
    pub points_checked: usize,
}

/// Maximal minors of `Φ` along `p0 + t p1`, by evaluation and interpolation.
fn minors_on_line(phi: &LinearMatrix, p0: &[Scalar], p1: &[Scalar]) -> Result<Vec<UniPoly>> {
    let field = p0[0].field();
    let rows = phi.rows();
    let ts: Vec<Scalar> = (0..=rows as i64).map(|t| Scalar::from_i64(field, t)).collect();
    let mut values: Vec<Vec<(Scalar, Scalar)>> = vec![Vec::new(); phi.cols()];
    for t in &ts {
        let m = phi.eval(&point_on_line(p0, p1, t));
        for (c, vals) in values.iter_mut().enumerate() {
            let keep: Vec<usize> = (0..phi.cols()).filter(|&j| j != c).collect();
            let all: Vec<usize> = (0..rows).collect();
            vals.push((t.clone(), m.submatrix(&all, &keep).determinant()?));
        }
    }
    Ok(values.iter().map(|v| UniPoly::interpolate(field, v)).collect())
}

/// Degree of the hypersurface G for odd n, from minor gcds on three random lines,
/// with spot checks that points of Π and of F_ω lie on G.
pub fn g_degree_odd(h: &ResidualHandle, seed: u64) -> Result<GDegreeReport> {
    let ctx = h.ctx();
    let n = ctx.n();
    if n % 2 == 0 {
        return Err(Error::Precondition("G is a hypersurface only for odd n".into()));
    }
    let p = ctx.field().require_prime(101)?;
    if p <= n as u64 + 1 {
        return Err(Error::NeedsPrimeField(n as u64 + 2));
    }
    let phi = line_system_matrix(h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::new();
    let mut reduced = Vec::new();
    for _ in 0..12 {
        let p0 = random_coords(ctx, &mut rng);
        let p1 = random_coords(ctx, &mut rng);
        let minors = minors_on_line(&phi, &p0, &p1)?;
        let g = poly_gcd_all(ctx.field(), minors.iter())?;
        if g.is_zero() {
            continue;
        }
        raw.push(g.degree().unwrap());
        reduced.push(g.squarefree_part()?.degree().unwrap());
        if raw.len() == 3 {
            break;
        }
    }
    if raw.len() < 3 {
        return Err(Error::NonGeneric("Φ_P drops rank along every sampled line".into()));
    }
    if reduced.iter().any(|&d| d != reduced[0]) || raw.iter().any(|&d| d != raw[0]) {
        return Err(Error::NonGeneric(format!("minor gcd degrees differ across lines: {raw:?}")));
    }
    let checks = 8;
    let mut pi_on = 0;
    for _ in 0..checks {
        let c: Vec<Scalar> = (0..h.pi.dim()).map(|_| Scalar::random(ctx.field(), &mut rng)).collect();
        let pt = h.pi.combine(&c);
        if !pt.iter().all(Scalar::is_zero) && membership_from(&phi, &pt, n).on_g {
            pi_on += 1;
        }
    }
    let mut f_on = 0;
    let mut f_checked = 0;
    for k in 0..8 * checks as u64 {
        if f_checked == checks {
            break;
        }
        let l = sample_line_on_x(&h.omega, derive_seed(seed ^ 0xF, k))?;
        if let Some(pt) = secant_pencil(&h.omega, &l)?.root_points()?.into_iter().next() {
            f_checked += 1;
            if membership_from(&phi, &pt, n).on_g {
                f_on += 1;
            }
        }
    }
    if f_checked != checks {
        return Err(Error::Budget("too few F_p-rational points of F_ω sampled".into()));
    }
    Ok(GDegreeReport {
        degree: reduced[0],
        minor_gcd_degrees: raw,
        pi_points_on_g: pi_on,
        f_points_on_g: f_on,
        points_checked: checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct YSecancy {
    pub secant_count: usize,
    pub meets_pi: bool,
    pub distinct_roots: usize,
}

/// Secant pencil of a sampled line of Y inside its hyperplane (of odd dimension n - 1).
pub fn y_secancy_even(h: &ResidualHandle, seed: u64) -> Result<YSecancy> {
    let n = h.ctx().n();
    if n % 2 == 1 {
        return Err(Error::Precondition("Y secancy is defined here for even n".into()));
    }
    let s = sample_line_on_y(h, seed)?;
    let meets_pi = h.x.wedge(&h.y)?.pair(&s.line)?.is_zero();
    let pencil = secant_pencil(&s.local_form, &s.local_line)?;
    Ok(YSecancy { secant_count: pencil.degree, meets_pi, distinct_roots: pencil.distinct_roots })
}
