//! Dense exact matrices and the Gaussian-elimination kernels everything
//! else reduces to: rref, rank, nullspace, linear solve.
//!
//! `0 x n` and `n x 0` matrices are legal and behave as empty linear maps.
//! Pivoting is "first nonzero": arithmetic is exact, so there are no
//! numerical pivot heuristics.

use crate::field::{FieldTag, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldTag,
    data: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, field: FieldTag, data: Vec<Scalar>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length mismatch");
        debug_assert!(data.iter().all(|s| field.owns(s)), "mixed field tags");
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn zeros(rows: usize, cols: usize, field: FieldTag) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldTag) -> Self {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from integer entries, mapped into the field.
    pub fn from_i64(rows: usize, cols: usize, field: FieldTag, entries: &[i64]) -> Self {
        Matrix::new(
            rows,
            cols,
            field,
            entries.iter().map(|&n| field.from_i64(n)).collect(),
        )
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        assert_eq!(self.field, other.field, "matmul field mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(self.rows, other.cols, f);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.field, other.field);
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Matrix::new(self.rows, self.cols, f, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        Matrix::new(
            self.rows,
            self.cols,
            f,
            self.data.iter().map(|a| f.mul(a, s)).collect(),
        )
    }

    /// Stack `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.field, other.field);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(self.rows + other.rows, self.cols, self.field, data)
    }

    /// Place `self` left of `other`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.field, other.field);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Columns `sel` of `self`, in order.
    pub fn select_cols(&self, sel: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, sel.len(), self.field);
        for r in 0..self.rows {
            for (j, &c) in sel.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = f.add(&acc, &f.mul(a, &v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row-echelon form. Returns `(rank, rref, pivot columns)`.
    pub fn rref(&self) -> (usize, Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // first nonzero pivot in this column at or below `row`
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let a = m.get(row, c).clone();
                    let b = m.get(pr, c).clone();
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = f.inv(m.get(row, col));
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (pivots.len(), m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    /// Basis of `ker(self)` as column vectors; `cols - rank` of them.
    pub fn nullspace_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (_, r, pivots) = self.rref();
        let mut basis = Vec::new();
        let piv_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        for free in 0..self.cols {
            if piv_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![f.zero(); self.cols];
            vec[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                vec[p] = f.neg(r.get(i, free));
            }
            basis.push(vec);
        }
        basis
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len(), "solve dimension mismatch");
        let f = self.field;
        let mut bm = Matrix::zeros(self.rows, 1, f);
        for (r, v) in b.iter().enumerate() {
            bm.set(r, 0, v.clone());
        }
        let aug = self.hstack(&bm);
        let (_, r, pivots) = aug.rref();
        // inconsistent iff a pivot lands in the augmented column
        if pivots.iter().any(|&p| p == self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n, self.field));
        let (rank, r, _) = aug.rref();
        if rank < n {
            return None;
        }
        Some(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Flatten row-major into a vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, field: FieldTag, cols: &[Vec<Scalar>]) -> Matrix {
        let mut out = Matrix::zeros(rows, cols.len(), field);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    /// Characteristic polynomial coefficients `[c_0, ..., c_n]` of a square
    /// matrix, `det(tI - M) = sum c_i t^i`, via Hessenberg reduction.
    /// Valid over any field (only divides by nonzero pivots).
    pub fn char_poly(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = self.field;
        if n == 0 {
            return vec![f.one()];
        }
        // reduce to upper Hessenberg by similarity
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = ((c + 1)..n).find(|&r| !h.get(r, c).is_zero()) else {
                continue;
            };
            if pr != c + 1 {
                // swap rows and the matching columns
                for j in 0..n {
                    let a = h.get(c + 1, j).clone();
                    let b = h.get(pr, j).clone();
                    h.set(c + 1, j, b);
                    h.set(pr, j, a);
                }
                for i in 0..n {
                    let a = h.get(i, c + 1).clone();
                    let b = h.get(i, pr).clone();
                    h.set(i, c + 1, b);
                    h.set(i, pr, a);
                }
            }
            let inv = f.inv(h.get(c + 1, c));
            for r in (c + 2)..n {
                if h.get(r, c).is_zero() {
                    continue;
                }
                let factor = f.mul(h.get(r, c), &inv);
                for j in 0..n {
                    let v = f.sub(h.get(r, j), &f.mul(&factor, h.get(c + 1, j)));
                    h.set(r, j, v);
                }
                // column operation keeps similarity
                for i in 0..n {
                    let v = f.add(h.get(i, c + 1), &f.mul(&factor, h.get(i, r)));
                    h.set(i, c + 1, v);
                }
            }
        }
        // p_0 = 1; p_k = char poly of leading k x k Hessenberg block
        let mut polys: Vec<Vec<Scalar>> = vec![vec![f.one()]];
        for k in 1..=n {
            // p_k(t) = (t - h[k-1][k-1]) p_{k-1}(t)
            //          - sum_{i=1}^{k-1} h[k-1-i][k-1] (prod subdiag) p_{k-1-i}(t)
            let mut p = poly_mul_linear(&polys[k - 1], h.get(k - 1, k - 1), f);
            let mut subdiag = f.one();
            for i in 1..k {
                subdiag = f.mul(&subdiag, h.get(k - i, k - i - 1));
                if subdiag.is_zero() {
                    break;
                }
                let coef = f.mul(&subdiag, h.get(k - 1 - i, k - 1));
                if coef.is_zero() {
                    continue;
                }
                for (d, c) in polys[k - 1 - i].iter().enumerate() {
                    p[d] = f.sub(&p[d], &f.mul(&coef, c));
                }
            }
            polys.push(p);
        }
        polys.pop().unwrap()
    }
}

impl Matrix {
    /// Solve `self * X = B` columnwise; `None` when any column is
    /// inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let mut cols = Vec::with_capacity(b.cols);
        for c in 0..b.cols {
            cols.push(self.solve(&b.column(c))?);
        }
        Some(Matrix::from_columns(self.cols, self.field, &cols))
    }

    /// Independent columns of `self` (pivot columns), as a new matrix.
    pub fn column_space_basis(&self) -> Matrix {
        let (_, _, pivots) = self.rref();
        self.select_cols(&pivots)
    }
}

/// A quotient of `k^ambient` by a spanned subspace, with a chosen
/// projection and a section splitting it (`proj * section = id`).
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub ambient: usize,
    pub dim: usize,
    pub proj: Matrix,    // dim x ambient
    pub section: Matrix, // ambient x dim
}

impl QuotientSpace {
    pub fn from_span(ambient: usize, field: FieldTag, span: &[Vec<Scalar>]) -> QuotientSpace {
        // rows = generators of the subspace
        let gen = if span.is_empty() {
            Matrix::zeros(0, ambient, field)
        } else {
            let flat: Vec<Scalar> = span.iter().flatten().cloned().collect();
            Matrix::new(span.len(), ambient, field, flat)
        };
        let (rank, r, pivots) = gen.rref();
        let piv_of: Vec<Option<usize>> = {
            let mut v = vec![None; ambient];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let dim = ambient - rank;
        let mut proj = Matrix::zeros(dim, ambient, field);
        let mut section = Matrix::zeros(ambient, dim, field);
        let mut row = 0;
        for j in 0..ambient {
            if piv_of[j].is_some() {
                continue;
            }
            // coordinate j minus its correction through the pivot rows
            proj.set(row, j, field.one());
            for (i, &p) in pivots.iter().enumerate() {
                proj.set(row, p, field.neg(r.get(i, j)));
            }
            section.set(j, row, field.one());
            row += 1;
        }
        QuotientSpace {
            ambient,
            dim,
            proj,
            section,
        }
    }

    /// Induced map on quotients of a linear map that carries the source
    /// subspace into the target subspace.
    pub fn induced(&self, map: &Matrix, target: &QuotientSpace) -> Matrix {
        target.proj.mul(&map.mul(&self.section))
    }
}

/// `(t - a) * p`, returned with degree `deg p + 1`.
fn poly_mul_linear(p: &[Scalar], a: &Scalar, f: FieldTag) -> Vec<Scalar> {
    let mut out = vec![f.zero(); p.len() + 1];
    for (d, c) in p.iter().enumerate() {
        out[d + 1] = f.add(&out[d + 1], c);
        out[d] = f.sub(&out[d], &f.mul(a, c));
    }
    out
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldTag = FieldTag::Rational;
    const F2: FieldTag = FieldTag::Prime(2);

    #[test]
    fn rref_identity() {
        let m = Matrix::identity(3, Q);
        let (rank, r, pivots) = m.rref();
        assert_eq!(rank, 3);
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(r, m);
    }

    #[test]
    fn rref_zero() {
        let m = Matrix::zeros(2, 5, Q);
        let (rank, _, pivots) = m.rref();
        assert_eq!(rank, 0);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        // [[1,2],[2,4]] has rank 1 by hand row-reduction
        let m = Matrix::from_i64(2, 2, Q, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_idempotent() {
        let m = Matrix::from_i64(3, 4, Q, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0]);
        let (_, r1, _) = m.rref();
        let (_, r2, _) = r1.rref();
        assert_eq!(r1, r2);
    }

    #[test]
    fn nullspace_identity_empty() {
        assert!(Matrix::identity(4, Q).nullspace_basis().is_empty());
    }

    #[test]
    fn nullspace_zero_full() {
        assert_eq!(Matrix::zeros(3, 2, Q).nullspace_basis().len(), 2);
    }

    #[test]
    fn nullspace_f2() {
        // ker [[1,1]] over F_2 is spanned by (1,1); enumerate all four vectors
        let m = Matrix::from_i64(1, 2, F2, &[1, 1]);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 1);
        let mut in_kernel = Vec::new();
        for a in 0..2i64 {
            for b in 0..2i64 {
                let v = vec![F2.from_i64(a), F2.from_i64(b)];
                if m.apply(&v).iter().all(Scalar::is_zero) {
                    in_kernel.push((a, b));
                }
            }
        }
        assert_eq!(in_kernel, vec![(0, 0), (1, 1)]);
        assert!(m.apply(&basis[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_cases() {
        let id = Matrix::identity(2, Q);
        let b = vec![Q.from_i64(3), Q.from_i64(-7)];
        assert_eq!(id.solve(&b).unwrap(), b);

        let z = Matrix::zeros(2, 2, Q);
        assert!(z.solve(&b).is_none());

        let m = Matrix::from_i64(1, 1, Q, &[2]);
        assert_eq!(m.solve(&[Q.one()]).unwrap(), vec![Q.from_fraction(1, 2)]);
    }

    #[test]
    fn empty_shapes_behave() {
        let a = Matrix::zeros(0, 3, Q);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.nullspace_basis().len(), 3);
        let b = Matrix::zeros(3, 0, Q);
        assert_eq!(b.rank(), 0);
        assert!(b.nullspace_basis().is_empty());
        assert_eq!(b.solve(&[Q.zero(), Q.zero(), Q.zero()]).unwrap().len(), 0);
        let c = a.mul(&Matrix::zeros(3, 2, Q));
        assert_eq!((c.rows, c.cols), (0, 2));
    }

    #[test]
    fn char_poly_small() {
        // companion-style checks: diag(1,2) -> (t-1)(t-2) = t^2 - 3t + 2
        let m = Matrix::from_i64(2, 2, Q, &[1, 0, 0, 2]);
        let p = m.char_poly();
        assert_eq!(p, vec![Q.from_i64(2), Q.from_i64(-3), Q.one()]);
        // nilpotent [[0,1],[0,0]] -> t^2
        let n = Matrix::from_i64(2, 2, Q, &[0, 1, 0, 0]);
        assert_eq!(n.char_poly(), vec![Q.zero(), Q.zero(), Q.one()]);
        // over F2: [[1,1],[1,0]] -> t^2 + t + 1 (no roots in F2)
        let f = Matrix::from_i64(2, 2, F2, &[1, 1, 1, 0]);
        assert_eq!(f.char_poly(), vec![F2.one(), F2.one(), F2.one()]);
    }
}
