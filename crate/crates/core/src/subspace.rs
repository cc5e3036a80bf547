//! Linear subspaces in canonical reduced row-echelon form.

use crate::error::{EpwError, Result};
use crate::field::Field;
use crate::matrix::Mat;

/// A subspace of `F^ambient`, stored as the RREF of a basis. Two subspaces
/// are equal exactly when their RREFs coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Mat<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(field, 0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Mat<F>) -> Self {
        let e = m.rref();
        Subspace {
            ambient: m.cols(),
            basis: e.matrix.truncate_rows(e.rank),
            pivots: e.pivots,
        }
    }

    pub fn span(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        Ok(Self::row_space(&Mat::from_rows(field, ambient, vectors.to_vec())?))
    }

    /// Span of coordinate vectors `e_i` for the listed indices.
    pub fn coordinate(field: &F, ambient: usize, indices: &[usize]) -> Self {
        let vecs: Vec<Vec<F::Elem>> = indices.iter().map(|&i| unit(field, ambient, i)).collect();
        Self::span(field, ambient, &vecs).expect("well-formed")
    }

    /// Right kernel of `m`.
    pub fn kernel(m: &Mat<F>) -> Self {
        let rows = m.kernel_rows();
        Self::span(m.field(), m.cols(), &rows).expect("well-formed")
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &Mat<F> {
        &self.basis
    }
    pub fn basis_vecs(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field() != other.field() {
            return Err(EpwError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(EpwError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Coefficients of `v` in the stored basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if v.len() != self.ambient {
            return Err(EpwError::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let f = self.field();
        let coeffs: Vec<F::Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (i, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !f.is_zero(b) {
                    rest[j] = f.sub(&rest[j], &f.mul(c, b));
                }
            }
        }
        Ok(if rest.iter().all(|x| f.is_zero(x)) { Some(coeffs) } else { None })
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        for r in 0..other.dim() {
            if !self.contains(other.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::row_space(&self.basis.stack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field();
        let (a, b) = (self.dim(), other.dim());
        // (c, d) with c*A = d*B, i.e. kernel of [A^T | -B^T]
        let m = Mat::from_fn(
            f,
            self.ambient,
            a + b,
            |r, c| {
                if c < a {
                    self.basis.get(c, r).clone()
                } else {
                    f.neg(other.basis.get(c - a, r))
                }
            },
        );
        let vecs: Vec<Vec<F::Elem>> = m.kernel_rows().into_iter().map(|k| combine(f, &self.basis, &k[..a])).collect();
        let out = Self::span(f, self.ambient, &vecs)?;
        let s = self.sum(other)?;
        assert_eq!(out.dim() + s.dim(), a + b, "Grassmann identity violated");
        Ok(out)
    }

    /// `{x : <x, s> = 0 for all s}` for the standard dot product.
    pub fn annihilator(&self) -> Self {
        if self.dim() == 0 {
            return Self::full(self.field(), self.ambient);
        }
        Self::kernel(&self.basis)
    }

    /// Standard basis vectors completing this subspace to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Image under `v -> m * v`.
    pub fn image(&self, m: &Mat<F>) -> Result<Self> {
        let vecs = (0..self.dim()).map(|r| m.apply(self.basis.row(r))).collect::<Result<Vec<_>>>()?;
        Self::span(self.field(), m.rows(), &vecs)
    }

    pub fn map_field<G: Field>(&self, target: &G, conv: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Subspace<G>> {
        Ok(Subspace::row_space(&self.basis.map_field(target, conv)?))
    }
}

pub fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// `sum_i coeffs[i] * rows[i]`.
pub fn combine<F: Field>(f: &F, rows: &Mat<F>, coeffs: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); rows.cols()];
    for (i, c) in coeffs.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        for (j, x) in rows.row(i).iter().enumerate() {
            out[j] = f.add(&out[j], &f.mul(c, x));
        }
    }
    out
}

/// Intersection of two subspaces (free-function form).
pub fn intersect<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.intersect(b)
}

/// Sum of two subspaces (free-function form).
pub fn sum<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.sum(b)
}

/// Right kernel of a matrix (free-function form).
pub fn kernel<F: Field>(m: &Mat<F>) -> Subspace<F> {
    Subspace::kernel(m)
}

pub fn contains<F: Field>(a: &Subspace<F>, v: &[F::Elem]) -> Result<bool> {
    a.contains(v)
}
