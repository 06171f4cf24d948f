//! Exact dense linear algebra over an arbitrary field.
//!
//! Everything downstream (cohomology groups, induced maps, exactness checks)
//! reduces to the operations here: reduced echelon forms, kernels, images,
//! sums and intersections of subspaces, and solving linear systems. Subspaces
//! are kept in a canonical reduced column-echelon basis so that equality and
//! containment of spaces are purely syntactic comparisons.
//!
//! Matrices are dense and row-major; ambient dimensions in this crate stay in
//! the low hundreds, so no sparse machinery is used.

use crate::scalar::FieldScalar;
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not invertible")]
    NotInvertible,
}

/// Dense matrix with entries in a field `F`, acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:?} ", self.entries[r * self.cols + c])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<F: FieldScalar> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Build from a row-major grid. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(ambient: usize, cols: &[Vec<F>]) -> Self {
        for v in cols {
            assert_eq!(v.len(), ambient, "column length mismatch");
        }
        Self::from_fn(ambient, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|a| -a.clone()).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let entries = self.entries.iter().map(|a| a.clone() * s.clone()).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "product shape mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let cur = out[(r, c)].clone();
                        out[(r, c)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc = acc + self[(r, c)].clone() * v[c].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        Self::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                other[(r - self.rows, c)].clone()
            }
        })
    }

    /// Reduce to reduced row-echelon form in place; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, pivot_row);
            let inv = F::one() / self[(row, col)].clone();
            for c in col..self.cols {
                let v = self[(row, c)].clone() * inv.clone();
                self[(row, c)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for c in col..self.cols {
                        let v = self[(r, c)].clone() - factor.clone() * self[(row, c)].clone();
                        self[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Inverse via Gauss-Jordan on `[self | I]`, if it exists.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotInvertible);
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(n));
        let pivots = aug.row_reduce();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(LinalgError::NotInvertible);
        }
        Ok(Self::from_fn(n, n, |r, c| aug[(r, n + c)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Solve `self * x = rhs` for one solution, if consistent.
    pub fn solve(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let rhs_col = Matrix::from_cols(self.rows, &[rhs.to_vec()]);
        let mut aug = self.hstack(&rhs_col);
        let pivots = aug.row_reduce();
        // Inconsistent iff the last column is a pivot.
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug[(i, self.cols)].clone();
        }
        Some(x)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

/// The unique reduced column-echelon form spanning the same column space.
///
/// Computed as the transposed reduced row-echelon form of the transpose; zero
/// columns are dropped, so the result has full column rank.
pub fn column_echelon<F: FieldScalar>(m: &Matrix<F>) -> Matrix<F> {
    let mut t = m.transpose();
    let pivots = t.row_reduce();
    let rank = pivots.len();
    Matrix::from_fn(m.rows(), rank, |r, c| t[(c, r)].clone())
}

/// Subspace of a coordinate space, stored as a canonical echelon basis.
///
/// Two subspaces are equal iff their basis matrices are entry-wise equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Matrix<F>,
}

impl<F: fmt::Debug> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(ambient {}, basis {:?})",
            self.ambient_dim, self.basis
        )
    }
}

impl<F: FieldScalar> Subspace<F> {
    /// Canonical subspace spanned by the columns of `m`.
    pub fn from_span(m: &Matrix<F>) -> Self {
        Subspace {
            ambient_dim: m.rows(),
            basis: column_echelon(m),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zero(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains_vec(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient mismatch");
        self.basis.solve(v).is_some()
    }

    pub fn contains(&self, other: &Subspace<F>) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..other.dim()).all(|j| self.contains_vec(&other.basis.col(j)))
    }

    /// Express `v` in this basis; `None` when `v` is outside the subspace.
    pub fn coordinates_of(&self, v: &[F]) -> Option<Vec<F>> {
        self.basis.solve(v)
    }

    /// Image of this subspace under a linear map.
    pub fn apply(&self, m: &Matrix<F>) -> Subspace<F> {
        Subspace::from_span(&m.mul(&self.basis))
    }
}

/// Kernel of a matrix as a canonical subspace of its domain.
pub fn kernel<F: FieldScalar>(m: &Matrix<F>) -> Subspace<F> {
    let mut r = m.clone();
    let pivots = r.row_reduce();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut cols = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![F::zero(); m.cols()];
        v[f] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, f)].clone();
        }
        cols.push(v);
    }
    Subspace::from_span(&Matrix::from_cols(m.cols(), &cols))
}

/// Column space of a matrix as a canonical subspace of its codomain.
pub fn image<F: FieldScalar>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::from_span(m)
}

/// Canonical sum of two subspaces of the same ambient space.
pub fn subspace_sum<F: FieldScalar>(
    a: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<Subspace<F>, LinalgError> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "sum of subspaces of ambient {} and {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    Ok(Subspace::from_span(&a.basis().hstack(b.basis())))
}

/// Canonical intersection, via the kernel of the stacked system
/// `[A | -B] (x; y) = 0` (the Zassenhaus construction in disguise).
pub fn subspace_intersect<F: FieldScalar>(
    a: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<Subspace<F>, LinalgError> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "intersection of subspaces of ambient {} and {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    let stacked = a.basis().hstack(&b.basis().neg());
    let pairs = kernel(&stacked);
    let ra = a.dim();
    // Each kernel column is (x; y) with A x = B y; the intersection is spanned
    // by the vectors A x.
    let xs = Matrix::from_fn(ra, pairs.dim(), |r, c| pairs.basis()[(r, c)].clone());
    Ok(Subspace::from_span(&a.basis().mul(&xs)))
}

/// One preimage of `target` under `m`, if any; exact whenever returned.
pub fn lift<F: FieldScalar>(m: &Matrix<F>, target: &[F]) -> Option<Vec<F>> {
    m.solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{from_int, from_ratio, gaussian, imaginary_unit, Scalar};

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<Scalar> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(from_int).collect())
                .collect(),
        )
    }

    #[test]
    fn echelon_identity_and_zero() {
        let id = Matrix::<Scalar>::identity(2);
        assert_eq!(column_echelon(&id), id);
        let z = Matrix::<Scalar>::zero(3, 2);
        let e = column_echelon(&z);
        assert_eq!((e.rows(), e.cols()), (3, 0));
    }

    #[test]
    fn echelon_gaussian_rank_one() {
        // [[1, i], [i, -1]]: second column is i times the first.
        let m = Matrix::from_rows(vec![
            vec![from_int(1), imaginary_unit()],
            vec![imaginary_unit(), from_int(-1)],
        ]);
        let e = column_echelon(&m);
        assert_eq!((e.rows(), e.cols()), (2, 1));
        assert_eq!(e[(0, 0)], from_int(1));
        assert_eq!(e[(1, 0)], imaginary_unit());
    }

    #[test]
    fn echelon_is_idempotent_and_span_preserving() {
        let m = mat(vec![vec![2, 4, 1], vec![0, 0, 3], vec![2, 4, 4]]);
        let e = column_echelon(&m);
        assert_eq!(column_echelon(&e), e);
        let s1 = Subspace::from_span(&m);
        let s2 = Subspace::from_span(&e);
        assert!(s1.contains(&s2) && s2.contains(&s1));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::<Scalar>::identity(3)).dim(), 0);
        assert_eq!(kernel(&Matrix::<Scalar>::zero(2, 3)).dim(), 3);
        // One relation among three columns.
        let m = mat(vec![vec![1, 2, 3], vec![0, 1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert!(m.mul(k.basis()).is_zero());
    }

    #[test]
    fn image_examples() {
        assert_eq!(image(&Matrix::<Scalar>::identity(3)), Subspace::full(3));
        assert_eq!(image(&Matrix::<Scalar>::zero(3, 2)), Subspace::zero(3));
        let m = mat(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(image(&m).dim(), 1);
    }

    #[test]
    fn rank_nullity() {
        let m = mat(vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 0, 1, 1]]);
        assert_eq!(m.rank() + kernel(&m).dim(), m.cols());
    }

    #[test]
    fn sum_and_intersection() {
        let s = Subspace::from_span(&mat(vec![vec![1, 0], vec![0, 1], vec![0, 0]]));
        assert_eq!(subspace_sum(&s, &s).unwrap(), s);
        assert_eq!(subspace_sum(&s, &Subspace::zero(3)).unwrap(), s);
        assert_eq!(subspace_intersect(&s, &s).unwrap(), s);
        assert_eq!(
            subspace_intersect(&s, &Subspace::zero(3)).unwrap(),
            Subspace::zero(3)
        );

        // Two distinct lines span a plane and meet in zero.
        let l1 = Subspace::from_span(&mat(vec![vec![1], vec![0], vec![1]]));
        let l2 = Subspace::from_span(&mat(vec![vec![0], vec![1], vec![1]]));
        assert_eq!(subspace_sum(&l1, &l2).unwrap().dim(), 2);
        assert_eq!(subspace_intersect(&l1, &l2).unwrap().dim(), 0);

        // Two generic planes in dimension 3 meet in a line.
        let p1 = Subspace::from_span(&mat(vec![vec![1, 0], vec![0, 1], vec![0, 0]]));
        let p2 = Subspace::from_span(&mat(vec![vec![0, 0], vec![1, 0], vec![0, 1]]));
        let meet = subspace_intersect(&p1, &p2).unwrap();
        assert_eq!(meet.dim(), 1);
        // Modular law.
        let join = subspace_sum(&p1, &p2).unwrap();
        assert_eq!(p1.dim() + p2.dim(), join.dim() + meet.dim());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::<Scalar>::zero(2);
        let b = Subspace::<Scalar>::zero(3);
        assert!(subspace_sum(&a, &b).is_err());
        assert!(subspace_intersect(&a, &b).is_err());
    }

    #[test]
    fn lift_examples() {
        let id = Matrix::<Scalar>::identity(3);
        let t = vec![from_int(1), from_ratio(5, 2), from_int(-1)];
        assert_eq!(lift(&id, &t).unwrap(), t);

        let z = Matrix::<Scalar>::zero(2, 2);
        assert!(lift(&z, &[from_int(1), from_int(0)]).is_none());

        let m = mat(vec![vec![1, 1], vec![2, 2]]);
        let x = lift(&m, &[from_int(3), from_int(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![from_int(3), from_int(6)]);
        assert!(lift(&m, &[from_int(1), from_int(0)]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![from_int(1), gaussian(0, 1, 1, 1)],
            vec![from_int(0), from_ratio(1, 2)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let singular = mat(vec![vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_err());
    }
}
