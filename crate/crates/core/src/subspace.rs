//! Linear subspaces of coordinatized spaces, stored by a column basis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{binomial, AlternatingTensor, SpaceContext, Variance};
use crate::field::Scalar;
use crate::matrix::Matrix;

/// The space a [`LinearSubspace`] lives in: `Λ^k V` or `Λ^k V*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Ambient {
    Vectors(usize),
    Forms(usize),
}

impl Ambient {
    /// Points of P(V).
    pub const POINTS: Ambient = Ambient::Vectors(1);
    /// Points of P(Λ²V).
    pub const BIVECTORS: Ambient = Ambient::Vectors(2);

    pub fn dim(&self, ctx: SpaceContext) -> usize {
        let (Ambient::Vectors(k) | Ambient::Forms(k)) = *self;
        binomial(ctx.dim(), k)
    }

    pub fn degree(&self) -> usize {
        let (Ambient::Vectors(k) | Ambient::Forms(k)) = *self;
        k
    }

    pub fn variance(&self) -> Variance {
        match self {
            Ambient::Vectors(_) => Variance::Vector,
            Ambient::Forms(_) => Variance::Form,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient: Ambient,
    ctx: SpaceContext,
    basis: Matrix,
}

impl LinearSubspace {
    /// Span of the columns of `spanning`.
    pub fn from_spanning(ctx: SpaceContext, ambient: Ambient, spanning: &Matrix) -> Self {
        assert_eq!(spanning.rows(), ambient.dim(ctx), "ambient dimension");
        let cols = spanning.independent_columns();
        let basis = spanning.submatrix(&(0..spanning.rows()).collect::<Vec<_>>(), &cols);
        LinearSubspace { ambient, ctx, basis }
    }

    pub fn from_vectors(ctx: SpaceContext, ambient: Ambient, vectors: &[Vec<Scalar>]) -> Self {
        let m = Matrix::from_columns(ctx.field(), ambient.dim(ctx), vectors);
        Self::from_spanning(ctx, ambient, &m)
    }

    pub fn from_tensors(ctx: SpaceContext, tensors: &[AlternatingTensor]) -> Result<Self> {
        let Some(first) = tensors.first() else {
            return Err(Error::Precondition("empty tensor list; use zero()".into()));
        };
        let ambient = match first.variance() {
            Variance::Vector => Ambient::Vectors(first.degree()),
            Variance::Form => Ambient::Forms(first.degree()),
        };
        let vecs: Vec<Vec<Scalar>> = tensors.iter().map(|t| t.to_dense()).collect();
        Ok(Self::from_vectors(ctx, ambient, &vecs))
    }

    /// Common zeros of the rows of `equations`.
    pub fn kernel_of(ctx: SpaceContext, ambient: Ambient, equations: &Matrix) -> Self {
        assert_eq!(equations.cols(), ambient.dim(ctx), "equation width");
        LinearSubspace { ambient, ctx, basis: equations.kernel() }
    }

    pub fn zero(ctx: SpaceContext, ambient: Ambient) -> Self {
        LinearSubspace { ambient, ctx, basis: Matrix::zeros(ctx.field(), ambient.dim(ctx), 0) }
    }

    pub fn whole(ctx: SpaceContext, ambient: Ambient) -> Self {
        LinearSubspace { ambient, ctx, basis: Matrix::identity(ctx.field(), ambient.dim(ctx)) }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn ctx(&self) -> SpaceContext {
        self.ctx
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    pub fn basis_tensors(&self) -> Vec<AlternatingTensor> {
        self.basis_vectors()
            .iter()
            .map(|v| AlternatingTensor::from_dense(self.ctx, self.ambient.degree(), self.ambient.variance(), v))
            .collect()
    }

    /// Dimension of the underlying linear space.
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Projective dimension; `-1` for the zero space.
    pub fn proj_dim(&self) -> isize {
        self.dim() as isize - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim(self.ctx)
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx || self.ambient != other.ambient {
            return Err(Error::ContextMismatch("subspaces of different spaces".into()));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        let col = Matrix::from_columns(self.ctx.field(), self.ambient_dim(), &[v.to_vec()]);
        self.basis.hstack(&col).rank() == self.dim()
    }

    pub fn contains_tensor(&self, t: &AlternatingTensor) -> bool {
        self.contains_vector(&t.to_dense())
    }

    /// Column-space containment `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.basis.hstack(&other.basis).rank() == self.dim())
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains(other)?)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let neg = Matrix::from_columns(
            self.ctx.field(),
            self.ambient_dim(),
            &other.basis_vectors().iter().map(|v| v.iter().map(|c| -c).collect()).collect::<Vec<_>>(),
        );
        let k = self.basis.hstack(&neg).kernel();
        let a = k.submatrix(&(0..self.dim()).collect::<Vec<_>>(), &(0..k.cols()).collect::<Vec<_>>());
        let spanning = self.basis.mul(&a)?;
        Ok(Self::from_spanning(self.ctx, self.ambient, &spanning))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self::from_spanning(self.ctx, self.ambient, &self.basis.hstack(&other.basis)))
    }

    /// Rows spanning the linear equations of the subspace.
    pub fn equations(&self) -> Matrix {
        self.basis.transpose().kernel().transpose()
    }

    /// The vector `sum_i c_i b_i`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        self.basis.mul_vec(coeffs)
    }
}
