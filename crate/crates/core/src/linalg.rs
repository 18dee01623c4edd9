//! Dense exact matrices over a [`Field`] and the Gaussian-elimination
//! routines the rest of the crate is built on.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{GctkError, Result};
use crate::scalars::{ExactComplex, Field, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type RatMatrix = Matrix<BigRational>;
pub type ComplexMatrix = Matrix<ExactComplex>;

impl<F: Ring> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(GctkError::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>]) -> Result<Self> {
        let r = cols.first().map_or(0, Vec::len);
        for col in cols {
            if col.len() != r {
                return Err(GctkError::DimensionMismatch {
                    expected: r,
                    found: col.len(),
                });
            }
        }
        Ok(Self::from_fn(r, cols.len(), |i, j| cols[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(GctkError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg_ref)
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|a| a.mul_ref(s))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(GctkError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)].add_assign_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(GctkError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign_ref(&a.mul_ref(b));
                    }
                }
                acc
            })
            .collect())
    }

    /// Copy of the `h x w` block at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].inv().expect("pivot is nonzero");
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].mul_ref(&inv);
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if !m[(row, c)].is_zero() {
                        let t = f.mul_ref(&m[(row, c)]);
                        m[(r, c)] = m[(r, c)].sub_ref(&t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{ v : self * v = 0 }`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = reduced[(r, f)].neg_ref();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(GctkError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(n));
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return Err(GctkError::Singular);
        }
        Ok(e.reduced.block(0, n, n, n))
    }

    /// Some solution of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(GctkError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (r, v) in b.iter().enumerate() {
            aug[(r, self.cols)] = v.clone();
        }
        let e = aug.rref();
        if e.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in e.pivots.iter().enumerate() {
            x[p] = e.reduced[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Result<F> {
        if !self.is_square() {
            return Err(GctkError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = det.neg_ref();
            }
            let piv = m[(col, col)].clone();
            det = det.mul_ref(&piv);
            let inv = piv.inv()?;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].mul_ref(&inv);
                for c in col..n {
                    let t = f.mul_ref(&m[(col, c)]);
                    m[(r, c)] = m[(r, c)].sub_ref(&t);
                }
            }
        }
        Ok(det)
    }
}

/// Dimension of the span of the given vectors.
pub fn span_rank<F: Field>(vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).map_or(0, |m| m.rank())
}

/// Whether two families of vectors span the same subspace.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let joint: Vec<Vec<F>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(&joint) == ra
}

/// Inertia `(positive, negative, zero)` of a real symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl RatMatrix {
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    /// Exact inertia by symmetric (congruence) elimination.
    ///
    /// Pivots on a nonzero diagonal entry; if the remaining diagonal is zero
    /// but some `a_ij != 0`, adding row/column `j` to `i` makes `a_ii = 2 a_ij`.
    pub fn inertia(&self) -> Result<Inertia> {
        if !self.is_symmetric() {
            return Err(GctkError::Precondition("matrix is not symmetric".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut alive: Vec<usize> = (0..n).collect();
        let mut res = Inertia {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        while !alive.is_empty() {
            let pivot = alive.iter().copied().find(|&k| !m[(k, k)].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    let pair = alive.iter().find_map(|&i| {
                        alive
                            .iter()
                            .find(|&&j| j != i && !m[(i, j)].is_zero())
                            .map(|&j| (i, j))
                    });
                    let Some((i, j)) = pair else {
                        res.zero += alive.len();
                        break;
                    };
                    // row_i += row_j, col_i += col_j
                    for c in 0..n {
                        let t = m[(j, c)].clone();
                        m[(i, c)] += t;
                    }
                    for r in 0..n {
                        let t = m[(r, j)].clone();
                        m[(r, i)] += t;
                    }
                    i
                }
            };
            let d = m[(p, p)].clone();
            if d.is_positive() {
                res.positive += 1;
            } else {
                res.negative += 1;
            }
            alive.retain(|&k| k != p);
            for &r in &alive {
                if m[(r, p)].is_zero() {
                    continue;
                }
                let f = &m[(r, p)] / &d;
                for &c in &alive {
                    if !m[(p, c)].is_zero() {
                        let t = &f * &m[(p, c)];
                        m[(r, c)] -= t;
                    }
                }
            }
        }
        Ok(res)
    }

    pub fn to_float(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].to_f64().unwrap_or(f64::NAN)
        })
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        self.map(|r| ExactComplex::real(r.clone()))
    }
}

/// Signature from floating eigenvalues; only a cross-check of
/// [`RatMatrix::inertia`].
pub fn float_inertia(m: &RatMatrix, tol: f64) -> Inertia {
    let mut res = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for l in float_eigenvalues(m) {
        if l > tol {
            res.positive += 1;
        } else if l < -tol {
            res.negative += 1;
        } else {
            res.zero += 1;
        }
    }
    res
}

/// Eigenvalues of a symmetric matrix in floating point.
pub fn float_eigenvalues(m: &RatMatrix) -> Vec<f64> {
    nalgebra::SymmetricEigen::new(m.to_float())
        .eigenvalues
        .iter()
        .copied()
        .collect()
}

impl ComplexMatrix {
    pub fn conj(&self) -> Self {
        self.map(ExactComplex::conj)
    }

    pub fn real_part(&self) -> RatMatrix {
        self.map(|c| c.re.clone())
    }

    pub fn imag_part(&self) -> RatMatrix {
        self.map(|c| c.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(ExactComplex::is_real)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational(v, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn inverse_and_solve() {
        let a = rm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(3));
        assert_eq!(a.determinant().unwrap(), rational(18, 1));
        let b = vec![rational(1, 1), rational(2, 1), rational(3, 1)];
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
        let s = rm(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(GctkError::Singular));
        assert_eq!(s.rank(), 1);
        assert!(s
            .solve(&[rational(1, 1), rational(0, 1)])
            .unwrap()
            .is_none());
        let ns = s.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(s.mul_vec(&ns[0]).unwrap().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn inertia_cases() {
        let hyperbolic = rm(&[&[0, 1], &[1, 0]]);
        let i = hyperbolic.inertia().unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
        let m = rm(&[&[1, 2, 0], &[2, 1, 0], &[0, 0, 0]]);
        let i = m.inertia().unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 1));
        assert_eq!(float_inertia(&m, 1e-9), i);
        assert!(rm(&[&[0, 1], &[2, 0]]).inertia().is_err());
    }
}
