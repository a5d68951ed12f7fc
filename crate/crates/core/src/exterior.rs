//! Exterior algebra of V and V* in coordinates.
//!
//! Index sets are bit masks over `0..=n`. Basis k-sets are ordered
//! lexicographically on their sorted index lists, so bivectors are ordered
//! `(0,1), (0,2), ..., (0,n), (1,2), ...`.
//!
//! The pairing is `<x_I, e_J> = delta_IJ` on sorted sets and contraction is
//! its adjoint: `<contract(f, v), w> = <f, v ^ w>`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

/// A coordinatized vector space V of dimension `n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceContext {
    n: usize,
    field: FieldSpec,
}

impl SpaceContext {
    pub fn new(n: usize, field: FieldSpec) -> Result<Self> {
        if n < 3 {
            return Err(Error::Precondition(format!("projective dimension {n} < 3")));
        }
        if n + 1 > 31 {
            return Err(Error::Precondition(format!("projective dimension {n} too large")));
        }
        Ok(SpaceContext { n, field })
    }

    /// A space of any dimension in `1..=31`, for restrictions to small subspaces.
    pub(crate) fn of_dim(dim: usize, field: FieldSpec) -> Self {
        assert!((1..=31).contains(&dim), "dimension {dim} out of range");
        SpaceContext { n: dim - 1, field }
    }

    /// Projective dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of V.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.field)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.field)
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        Scalar::from_i64(self.field, v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Vector,
    Form,
}

impl Variance {
    pub fn dual(self) -> Self {
        match self {
            Variance::Vector => Variance::Form,
            Variance::Form => Variance::Vector,
        }
    }
}

/// A set of indices stored as a bit mask, ordered by size and then
/// lexicographically on the sorted index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// Builds a set from strictly increasing indices.
    pub fn from_sorted(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for (pos, &i) in indices.iter().enumerate() {
            if i >= 31 || (pos > 0 && indices[pos - 1] >= i) {
                return Err(Error::IndexSet(indices.to_vec()));
            }
            mask |= 1 << i;
        }
        Ok(IndexSet(mask))
    }

    pub fn single(i: usize) -> Self {
        IndexSet(1 << i)
    }

    pub fn pair(i: usize, j: usize) -> Self {
        assert!(i != j, "repeated index");
        IndexSet((1 << i) | (1 << j))
    }

    pub fn mask(&self) -> u32 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset(&self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(&self, other: IndexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(&self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn minus(&self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & !other.0)
    }

    pub fn max_index(&self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign of `e_a ^ e_b` relative to `e_{a union b}`; the sets must be disjoint.
pub fn shuffle_sign(a: IndexSet, b: IndexSet) -> bool {
    debug_assert!(a.is_disjoint(b));
    let mut inversions = 0u32;
    let mut m = b.0;
    while m != 0 {
        let j = m.trailing_zeros();
        m &= m - 1;
        inversions += (a.0 >> (j + 1)).count_ones();
    }
    inversions % 2 == 0
}

/// All k-subsets of `0..dim` in basis order.
pub fn k_subsets(dim: usize, k: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    if k > dim {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(IndexSet::from_sorted(&idx).expect("increasing"));
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < dim - k + i) else {
            break;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of `set` in [`k_subsets`]`(dim, set.len())`.
pub fn subset_rank(dim: usize, set: IndexSet) -> usize {
    let idx = set.indices();
    let k = idx.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in idx.iter().enumerate() {
        for j in prev..c {
            rank += binomial(dim - 1 - j, k - 1 - i);
        }
        prev = c + 1;
    }
    rank
}

/// Projective normalization: first nonzero coordinate scaled to 1.
pub fn normalize_point(v: &[Scalar]) -> Vec<Scalar> {
    match v.iter().find(|c| !c.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.inv().unwrap();
            v.iter().map(|c| c * &inv).collect()
        }
    }
}

/// A k-vector or k-form, stored sparsely without zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct AlternatingTensor {
    ctx: SpaceContext,
    degree: usize,
    variance: Variance,
    coeffs: BTreeMap<IndexSet, Scalar>,
}

impl fmt::Debug for AlternatingTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlternatingTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.variance {
            Variance::Vector => 'e',
            Variance::Form => 'x',
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(set, c)| {
                let name = if set.is_empty() {
                    "1".to_string()
                } else {
                    set.indices().iter().map(|i| format!("{letter}{i}")).collect::<Vec<_>>().join("^")
                };
                if c.is_one() {
                    name
                } else {
                    format!("{c}*{name}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl AlternatingTensor {
    pub fn zero(ctx: SpaceContext, degree: usize, variance: Variance) -> Self {
        AlternatingTensor { ctx, degree, variance, coeffs: BTreeMap::new() }
    }

    /// Basis monomial for strictly increasing `indices`.
    pub fn monomial(ctx: SpaceContext, variance: Variance, indices: &[usize]) -> Result<Self> {
        let mut t = Self::zero(ctx, indices.len(), variance);
        let set = t.check_set(indices)?;
        t.coeffs.insert(set, ctx.one());
        Ok(t)
    }

    pub fn form(ctx: SpaceContext, indices: &[usize]) -> Self {
        Self::monomial(ctx, Variance::Form, indices).expect("valid index set")
    }

    pub fn vector(ctx: SpaceContext, indices: &[usize]) -> Self {
        Self::monomial(ctx, Variance::Vector, indices).expect("valid index set")
    }

    /// Sum of `coeff * monomial` terms; repeated sets accumulate.
    pub fn from_terms<I>(ctx: SpaceContext, degree: usize, variance: Variance, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut t = Self::zero(ctx, degree, variance);
        for (indices, c) in terms {
            if indices.len() != degree {
                return Err(Error::Degree(format!("term {indices:?} in a degree-{degree} tensor")));
            }
            if c.field() != ctx.field {
                return Err(Error::FieldMismatch(c.field(), ctx.field));
            }
            let set = t.check_set(&indices)?;
            t.add_term(set, c);
        }
        Ok(t)
    }

    /// Degree-1 tensor with the given coordinates.
    pub fn from_coords(ctx: SpaceContext, variance: Variance, coords: &[Scalar]) -> Self {
        Self::from_dense(ctx, 1, variance, coords)
    }

    /// Tensor from coefficients in basis order.
    pub fn from_dense(ctx: SpaceContext, degree: usize, variance: Variance, dense: &[Scalar]) -> Self {
        let basis = k_subsets(ctx.dim(), degree);
        assert_eq!(basis.len(), dense.len(), "dense length");
        let mut t = Self::zero(ctx, degree, variance);
        for (set, c) in basis.into_iter().zip(dense) {
            if !c.is_zero() {
                t.coeffs.insert(set, c.clone());
            }
        }
        t
    }

    /// Coefficients in basis order.
    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![self.ctx.zero(); binomial(self.ctx.dim(), self.degree)];
        for (set, c) in &self.coeffs {
            out[subset_rank(self.ctx.dim(), *set)] = c.clone();
        }
        out
    }

    fn check_set(&self, indices: &[usize]) -> Result<IndexSet> {
        if indices.iter().any(|&i| i > self.ctx.n) {
            return Err(Error::IndexSet(indices.to_vec()));
        }
        IndexSet::from_sorted(indices)
    }

    fn add_term(&mut self, set: IndexSet, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&set) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.coeffs.remove(&set);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(set, c);
            }
        }
    }

    pub fn ctx(&self) -> SpaceContext {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, set: IndexSet) -> Scalar {
        self.coeffs.get(&set).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn coeff_of(&self, indices: &[usize]) -> Scalar {
        match IndexSet::from_sorted(indices) {
            Ok(set) => self.coeff(set),
            Err(_) => self.ctx.zero(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut t = Self::zero(self.ctx, self.degree, self.variance);
        if c.is_zero() {
            return t;
        }
        for (set, v) in &self.coeffs {
            t.coeffs.insert(*set, v * c);
        }
        t
    }

    fn same_kind(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, other.ctx)));
        }
        if self.variance != other.variance {
            return Err(Error::Variance("adding a vector to a form".into()));
        }
        if self.degree != other.degree {
            return Err(Error::Degree(format!("{} vs {}", self.degree, other.degree)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_kind(other)?;
        let mut t = self.clone();
        for (set, c) in &other.coeffs {
            t.add_term(*set, c.clone());
        }
        Ok(t)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-self.ctx.one())
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("wedge".into()));
        }
        if self.variance != other.variance {
            return Err(Error::Variance("wedge of a vector with a form".into()));
        }
        let degree = self.degree + other.degree;
        if degree > self.ctx.dim() {
            return Err(Error::Degree(format!("wedge degree {degree} exceeds {}", self.ctx.dim())));
        }
        let mut t = Self::zero(self.ctx, degree, self.variance);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if !a.is_disjoint(*b) {
                    continue;
                }
                let c = ca * cb;
                t.add_term(a.union(*b), if shuffle_sign(*a, *b) { c } else { -c });
            }
        }
        Ok(t)
    }

    /// Interior product of `self` by a tensor of the opposite variance and
    /// no larger degree: `<contract(a, b), w> = <a, b ^ w>`.
    pub fn interior(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("contraction".into()));
        }
        if self.variance == other.variance {
            return Err(Error::Variance("contraction needs opposite variances".into()));
        }
        if other.degree > self.degree {
            return Err(Error::Degree(format!(
                "cannot contract degree {} by degree {}",
                self.degree, other.degree
            )));
        }
        let mut t = Self::zero(self.ctx, self.degree - other.degree, self.variance);
        for (i, ci) in &self.coeffs {
            for (j, cj) in &other.coeffs {
                if !j.is_subset(*i) {
                    continue;
                }
                let k = i.minus(*j);
                let c = ci * cj;
                t.add_term(k, if shuffle_sign(*j, k) { c } else { -c });
            }
        }
        Ok(t)
    }

    /// Determinant pairing of a form with a vector of equal degree.
    pub fn pair(&self, other: &Self) -> Result<Scalar> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("pairing".into()));
        }
        if self.variance == other.variance {
            return Err(Error::Variance("pairing needs a form and a vector".into()));
        }
        if self.degree != other.degree {
            return Err(Error::Degree(format!("pairing degrees {} and {}", self.degree, other.degree)));
        }
        let (small, big) =
            if self.coeffs.len() <= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut acc = self.ctx.zero();
        for (set, c) in &small.coeffs {
            if let Some(d) = big.coeffs.get(set) {
                acc = acc + c * d;
            }
        }
        Ok(acc)
    }

    /// Reassigns the underlying space (same dimension and field).
    pub fn with_ctx(&self, ctx: SpaceContext) -> Result<Self> {
        if ctx.dim() != self.ctx.dim() || ctx.field != self.ctx.field {
            return Err(Error::ContextMismatch("with_ctx".into()));
        }
        let mut t = self.clone();
        t.ctx = ctx;
        Ok(t)
    }

    /// Coordinates of a degree-1 tensor.
    pub fn coords(&self) -> Vec<Scalar> {
        assert_eq!(self.degree, 1, "coords of a degree-{} tensor", self.degree);
        self.to_dense()
    }
}

/// `<contract(f, v), w> = <f, v ^ w>` for a form `f` and a vector `v`.
pub fn contract(f: &AlternatingTensor, v: &AlternatingTensor) -> Result<AlternatingTensor> {
    if f.variance != Variance::Form || v.variance != Variance::Vector {
        return Err(Error::Variance("contract(form, vector)".into()));
    }
    f.interior(v)
}

pub fn wedge(a: &AlternatingTensor, b: &AlternatingTensor) -> Result<AlternatingTensor> {
    a.wedge(b)
}

pub fn pair(f: &AlternatingTensor, v: &AlternatingTensor) -> Result<Scalar> {
    if f.variance != Variance::Form {
        return Err(Error::Variance("pair(form, vector)".into()));
    }
    f.pair(v)
}

/// Principal 4x4 Pfaffians of a bivector; `L ^ L = 2 L^[2]`.
pub fn reduced_square(l: &AlternatingTensor) -> Result<AlternatingTensor> {
    if l.degree != 2 {
        return Err(Error::Degree("reduced square of a non-bivector".into()));
    }
    let ctx = l.ctx;
    let mut out = AlternatingTensor::zero(ctx, 4, l.variance);
    if ctx.dim() < 4 {
        return Ok(out);
    }
    let p = |a: usize, b: usize| l.coeff(IndexSet::pair(a, b));
    for set in k_subsets(ctx.dim(), 4) {
        let [i, j, h, k] = set.indices()[..] else { unreachable!() };
        let v = &(&p(i, j) * &p(h, k)) - &(&p(i, h) * &p(j, k)) + &p(i, k) * &p(j, h);
        out.add_term(set, v);
    }
    Ok(out)
}

pub fn is_decomposable(l: &AlternatingTensor) -> Result<bool> {
    Ok(reduced_square(l)?.is_zero())
}

/// The decomposition `omega = omega_x + beta_x ^ x` along a covector `x`.
#[derive(Clone, Debug)]
pub struct Split {
    pub omega_x: AlternatingTensor,
    pub beta_x: AlternatingTensor,
    /// Pivot vector `e` with `x(e) = 1`, killed by both parts.
    pub e: AlternatingTensor,
}

/// Uses the pivot `e = e_i / x_i` for the least `i` with `x_i != 0`.
pub fn split_along_covector(omega: &AlternatingTensor, x: &AlternatingTensor) -> Result<Split> {
    if x.variance != Variance::Form || x.degree != 1 || omega.variance != Variance::Form {
        return Err(Error::Variance("split needs a form and a covector".into()));
    }
    let Some((set, xi)) = x.coeffs.iter().next() else {
        return Err(Error::Zero("covector is zero".into()));
    };
    let i = set.indices()[0];
    let e = AlternatingTensor::vector(omega.ctx, &[i]).scale(&xi.inv().unwrap());
    let beta_x = contract(omega, &e)?;
    let omega_x = omega.sub(&beta_x.wedge(x)?)?;
    Ok(Split { omega_x, beta_x, e })
}

/// Deterministic random tensor: uniform over F_p, integers in `[-10, 10]` over the rationals.
pub fn random_tensor(ctx: SpaceContext, k: usize, variance: Variance, seed: u64) -> Result<AlternatingTensor> {
    if k > ctx.dim() {
        return Err(Error::Degree(format!("degree {k} exceeds {}", ctx.dim())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_tensor_with(ctx, k, variance, &mut rng))
}

pub fn random_tensor_with<R: rand::Rng + ?Sized>(
    ctx: SpaceContext,
    k: usize,
    variance: Variance,
    rng: &mut R,
) -> AlternatingTensor {
    let dense: Vec<Scalar> =
        (0..binomial(ctx.dim(), k)).map(|_| Scalar::random(ctx.field, rng)).collect();
    AlternatingTensor::from_dense(ctx, k, variance, &dense)
}

/// A nonzero random coordinate vector.
pub fn random_coords<R: rand::Rng + ?Sized>(ctx: SpaceContext, rng: &mut R) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..ctx.dim()).map(|_| Scalar::random(ctx.field, rng)).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// Matrix with columns `v_1, ..., v_m` (coordinates in V).
pub fn basis_matrix(ctx: SpaceContext, vectors: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_columns(ctx.field, ctx.dim(), vectors)
}

/// Restriction of a form to the span `W` of independent `basis` vectors,
/// written in the coordinates of that basis.
pub fn pullback(form: &AlternatingTensor, basis: &[Vec<Scalar>], sub: SpaceContext) -> Result<AlternatingTensor> {
    if form.variance != Variance::Form {
        return Err(Error::Variance("pullback of a vector".into()));
    }
    if basis.len() != sub.dim() || sub.field != form.ctx.field {
        return Err(Error::ContextMismatch("pullback basis size".into()));
    }
    let b = basis_matrix(form.ctx, basis);
    let k = form.degree;
    let mut out = AlternatingTensor::zero(sub, k, Variance::Form);
    for s in k_subsets(sub.dim(), k) {
        let cols = s.indices();
        let mut acc = form.ctx.zero();
        for (set, c) in &form.coeffs {
            let rows = set.indices();
            let d = b.submatrix(&rows, &cols).determinant()?;
            if !d.is_zero() {
                acc = acc + c * &d;
            }
        }
        out.add_term(s, acc);
    }
    Ok(out)
}

/// Image in V of a vector-type tensor on `W = span(basis)`.
pub fn pushforward(t: &AlternatingTensor, basis: &[Vec<Scalar>], ambient: SpaceContext) -> Result<AlternatingTensor> {
    if t.variance != Variance::Vector {
        return Err(Error::Variance("pushforward of a form".into()));
    }
    if basis.len() != t.ctx.dim() {
        return Err(Error::ContextMismatch("pushforward basis size".into()));
    }
    let vecs: Vec<AlternatingTensor> =
        basis.iter().map(|v| AlternatingTensor::from_coords(ambient, Variance::Vector, v)).collect();
    let mut out = AlternatingTensor::zero(ambient, t.degree, Variance::Vector);
    for (set, c) in &t.coeffs {
        let mut w = AlternatingTensor::zero(ambient, 0, Variance::Vector);
        w.coeffs.insert(IndexSet::EMPTY, ambient.one());
        for i in set.indices() {
            w = w.wedge(&vecs[i])?;
        }
        out = out.add(&w.scale(c))?;
    }
    Ok(out)
}

/// Two vectors spanning the plane of a nonzero decomposable bivector, with `u ^ w = L`.
pub fn decompose_bivector(l: &AlternatingTensor) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    if l.degree != 2 || l.variance != Variance::Vector {
        return Err(Error::Degree("decompose expects a bivector".into()));
    }
    if !is_decomposable(l)? {
        return Err(Error::Precondition("bivector is not decomposable".into()));
    }
    let Some((set, lab)) = l.coeffs.iter().next() else {
        return Err(Error::Zero("bivector is zero".into()));
    };
    let ij = set.indices();
    let ctx = l.ctx;
    let xa = AlternatingTensor::form(ctx, &[ij[0]]);
    let xb = AlternatingTensor::form(ctx, &[ij[1]]);
    let u = l.interior(&xa)?;
    let w = l.interior(&xb)?;
    let uw = u.wedge(&w)?;
    // u ^ w = c L with c = +-L_ab; rescale w so that u ^ w = L.
    let c = &uw.coeff(*set) / lab;
    let w = w.scale(&c.inv().ok_or_else(|| Error::Precondition("degenerate decomposition".into()))?);
    Ok((u.coords(), w.coords()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> SpaceContext {
        SpaceContext::new(5, FieldSpec::Rational).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let c = q5();
        let f = AlternatingTensor::form(c, &[0, 1]);
        assert!(f.pair(&AlternatingTensor::vector(c, &[0, 1])).unwrap().is_one());
        let e1 = AlternatingTensor::vector(c, &[1]);
        let e0 = AlternatingTensor::vector(c, &[0]);
        assert_eq!(f.pair(&e1.wedge(&e0).unwrap()).unwrap(), c.scalar(-1));
        let g = AlternatingTensor::form(c, &[0, 1, 2]);
        assert!(g.pair(&AlternatingTensor::vector(c, &[0, 1, 3])).unwrap().is_zero());
    }

    #[test]
    fn wedge_examples() {
        let c = q5();
        let x0 = AlternatingTensor::form(c, &[0]);
        let x1 = AlternatingTensor::form(c, &[1]);
        assert_eq!(x0.wedge(&x1).unwrap(), AlternatingTensor::form(c, &[0, 1]));
        let a = AlternatingTensor::form(c, &[0, 1]);
        let b = AlternatingTensor::form(c, &[0, 2]);
        assert!(a.wedge(&b).unwrap().is_zero());
        let omega = AlternatingTensor::form(c, &[0, 1, 2]).add(&AlternatingTensor::form(c, &[3, 4, 5])).unwrap();
        let w = omega.wedge(&x0).unwrap();
        assert_eq!(w, AlternatingTensor::form(c, &[0, 3, 4, 5]).neg());
        assert!(x0.wedge(&AlternatingTensor::vector(c, &[1])).is_err());
    }

    #[test]
    fn contraction_examples() {
        let c = q5();
        let e0 = AlternatingTensor::vector(c, &[0]);
        let f = AlternatingTensor::form(c, &[0, 1, 2]);
        assert_eq!(contract(&f, &e0).unwrap(), AlternatingTensor::form(c, &[1, 2]));
        let omega = f.add(&AlternatingTensor::form(c, &[3, 4, 5])).unwrap();
        let r = contract(&omega, &AlternatingTensor::vector(c, &[0, 1])).unwrap();
        assert_eq!(r, AlternatingTensor::form(c, &[2]));
        assert!(contract(&omega, &AlternatingTensor::vector(c, &[0, 3])).unwrap().is_zero());
        assert!(contract(&AlternatingTensor::form(c, &[0]), &AlternatingTensor::vector(c, &[0, 1])).is_err());
    }

    #[test]
    fn reduced_square_examples() {
        let c = q5();
        let l = AlternatingTensor::vector(c, &[0, 1]);
        assert!(reduced_square(&l).unwrap().is_zero());
        let l2 = l.add(&AlternatingTensor::vector(c, &[2, 3])).unwrap();
        assert_eq!(reduced_square(&l2).unwrap(), AlternatingTensor::vector(c, &[0, 1, 2, 3]));
    }

    #[test]
    fn split_examples() {
        let c = SpaceContext::new(3, FieldSpec::Rational).unwrap();
        let x0 = AlternatingTensor::form(c, &[0]);
        let w = AlternatingTensor::form(c, &[1, 2, 3]);
        let s = split_along_covector(&w, &x0).unwrap();
        assert_eq!(s.omega_x, w);
        assert!(s.beta_x.is_zero());
        assert_eq!(s.e, AlternatingTensor::vector(c, &[0]));
        let w = AlternatingTensor::form(c, &[0, 1, 2]);
        let s = split_along_covector(&w, &x0).unwrap();
        assert!(s.omega_x.is_zero());
        assert_eq!(s.beta_x, AlternatingTensor::form(c, &[1, 2]));
        assert!(split_along_covector(&w, &AlternatingTensor::zero(c, 1, Variance::Form)).is_err());
    }

    #[test]
    fn subset_ranks_follow_basis_order() {
        for dim in 4..8 {
            for k in 0..=dim {
                for (i, s) in k_subsets(dim, k).into_iter().enumerate() {
                    assert_eq!(subset_rank(dim, s), i);
                }
            }
        }
        let pairs: Vec<Vec<usize>> = k_subsets(4, 2).iter().map(|s| s.indices()).collect();
        assert_eq!(pairs, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn decomposition_reassembles() {
        let c = q5();
        let u = AlternatingTensor::from_coords(c, Variance::Vector, &[1, 2, 0, -1, 3, 0].map(|v| c.scalar(v)));
        let w = AlternatingTensor::from_coords(c, Variance::Vector, &[0, 1, 1, 4, 0, 2].map(|v| c.scalar(v)));
        let l = u.wedge(&w).unwrap();
        let (a, b) = decompose_bivector(&l).unwrap();
        let a = AlternatingTensor::from_coords(c, Variance::Vector, &a);
        let b = AlternatingTensor::from_coords(c, Variance::Vector, &b);
        assert_eq!(a.wedge(&b).unwrap(), l);
    }
}

#[derive(Serialize)]
struct TermOut {
    indices: Vec<usize>,
    coeff: String,
}

impl Serialize for AlternatingTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<TermOut> =
            self.coeffs.iter().map(|(set, c)| TermOut { indices: set.indices(), coeff: c.to_string() }).collect();
        let mut st = s.serialize_struct("AlternatingTensor", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("variance", &self.variance)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
