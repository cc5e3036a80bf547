//! Dense matrices over an exact field and reduced row-echelon forms.

use crate::error::{EpwError, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub matrix: Mat<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, f: impl Fn(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Build from explicit rows; `cols` is needed when there are no rows.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(EpwError::Ragged);
            }
            data.extend(row);
        }
        Ok(Mat {
            field: field.clone(),
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(EpwError::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(EpwError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.get(k, j));
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &t);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v` (v as a column).
    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(EpwError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(EpwError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f.mul(c, x)).collect(),
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(EpwError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// The unique reduced row-echelon form, with zero rows kept at the bottom.
    pub fn rref(&self) -> Echelon<F> {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i * cols + c])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&m[r * cols + c]).expect("nonzero pivot");
            for j in c..cols {
                m[r * cols + j] = f.mul(&m[r * cols + j], &inv);
            }
            for i in 0..rows {
                if i == r || f.is_zero(&m[i * cols + c]) {
                    continue;
                }
                let factor = m[i * cols + c].clone();
                for j in c..cols {
                    let t = f.mul(&factor, &m[r * cols + j]);
                    m[i * cols + j] = f.sub(&m[i * cols + j], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            matrix: Mat {
                field: f.clone(),
                rows,
                cols,
                data: m,
            },
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Keep only the first `n` rows.
    pub fn truncate_rows(&self, n: usize) -> Self {
        let n = n.min(self.rows);
        Mat {
            field: self.field.clone(),
            rows: n,
            cols: self.cols,
            data: self.data[..n * self.cols].to_vec(),
        }
    }

    /// Sub-matrix with the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn det(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(EpwError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.field.det(self.rows, &self.data))
    }

    pub fn inverse(&self) -> Result<Option<Self>> {
        if !self.is_square() {
            return Err(EpwError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Self::from_fn(f, n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                f.one()
            } else {
                f.zero()
            }
        });
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(Some(e.matrix.select(&rows, &cols)))
    }

    /// Basis (as rows) of the right kernel `{x : self * x = 0}`.
    pub fn kernel_rows(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in e.pivots.iter().enumerate() {
                    v[pc] = f.neg(e.matrix.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(EpwError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let f = &self.field;
        let n = self.cols;
        let aug = Self::from_fn(f, self.rows, n + 1, |r, c| if c < n { self.get(r, c).clone() } else { b[r].clone() });
        let e = aug.rref();
        if e.pivots.contains(&n) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); n];
        for (i, &p) in e.pivots.iter().enumerate() {
            x[p] = e.matrix.get(i, n).clone();
        }
        Ok(Some(x))
    }

    /// Convert entries into another field.
    pub fn map_field<G: Field>(&self, target: &G, conv: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Mat<G>> {
        let data = self.data.iter().map(conv).collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// `rref(m)` returning the echelon matrix and its rank.
pub fn rref<F: Field>(m: &Mat<F>) -> (Mat<F>, usize) {
    let e = m.rref();
    (e.matrix, e.rank)
}
