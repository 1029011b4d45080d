//! Dense real matrices and vectors.
//!
//! Everything is stored row-major in 64-bit floats. Constructors reject
//! empty shapes and non-finite entries, so every `Matrix` and `Vector` that
//! exists holds finite numbers.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Pivots with magnitude below this are treated as zero by the LU factorization.
pub const PIVOT_TOL: f64 = 1e-12;

/// Relative tolerance for the power-iteration spectral radius estimate.
pub const SPECTRAL_REL_TOL: f64 = 1e-9;

/// Iteration cap for the power-iteration spectral radius estimate.
pub const SPECTRAL_MAX_ITER: usize = 10_000;

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

#[derive(Clone, PartialEq)]
pub struct Vector(Vec<f64>);

fn check_finite(data: &[f64], cols: usize) -> Result<()> {
    match data.iter().position(|v| !v.is_finite()) {
        Some(idx) => Err(Error::NonFinite {
            row: idx / cols.max(1),
            col: idx % cols.max(1),
        }),
        None => Ok(()),
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        check_finite(&data, cols)?;
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a slice of rows; every row must have the same length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::new(nrows, ncols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    // Internal constructor for results of arithmetic on valid matrices.
    fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
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

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.get(i, j);
            }
        }
        Matrix::from_raw(self.cols, self.rows, out)
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(f64, f64) -> f64) -> Result<Matrix> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Matrix::from_raw(self.rows, self.cols, data))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: f64) -> Matrix {
        Matrix::from_raw(
            self.rows,
            self.cols,
            self.data.iter().map(|v| v * factor).collect(),
        )
    }

    /// `self - I`, for square matrices.
    pub fn minus_identity(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        let mut out = self.clone();
        for i in 0..n {
            out.data[i * n + i] -= 1.0;
        }
        Ok(out)
    }

    /// `I - self`, for square matrices.
    pub fn identity_minus(&self) -> Result<Matrix> {
        Ok(self.minus_identity()?.scale(-1.0))
    }

    /// Right-multiplication by a diagonal matrix: column `k` is scaled by `d[k]`.
    pub fn scale_columns(&self, d: &Vector) -> Result<Matrix> {
        if d.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "diagonal of length {} for a matrix with {} columns",
                d.len(),
                self.cols
            )));
        }
        let mut out = self.data.clone();
        for row in out.chunks_mut(self.cols) {
            for (v, s) in row.iter_mut().zip(d.as_slice()) {
                *v *= s;
            }
        }
        Ok(Matrix::from_raw(self.rows, self.cols, out))
    }

    /// Right-multiplication by the inverse of a diagonal matrix.
    pub fn divide_columns(&self, d: &Vector) -> Result<Matrix> {
        if let Some(k) = d.as_slice().iter().position(|&v| v == 0.0) {
            return Err(Error::Singular {
                col: k,
                pivot: 0.0,
                threshold: 0.0,
            });
        }
        self.scale_columns(&Vector::from_raw(
            d.as_slice().iter().map(|v| 1.0 / v).collect(),
        ))
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(Vector::from_raw(
            self.data
                .chunks(self.cols)
                .map(|row| row.iter().zip(v.as_slice()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    /// `M·𝟙`
    pub fn row_sums(&self) -> Vector {
        Vector::from_raw(self.data.chunks(self.cols).map(|r| r.iter().sum()).collect())
    }

    /// `M'·𝟙`
    pub fn col_sums(&self) -> Vector {
        let mut sums = vec![0.0; self.cols];
        for row in self.data.chunks(self.cols) {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        Vector::from_raw(sums)
    }

    pub fn diagonal(&self) -> Result<Vector> {
        let n = self.require_square()?;
        Ok(Vector::from_raw((0..n).map(|i| self.get(i, i)).collect()))
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.data
            .chunks(self.cols)
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest absolute entrywise difference; the shapes must agree.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// First negative entry, if any, as `(row, col, value)`.
    pub fn first_negative(&self) -> Option<(usize, usize, f64)> {
        self.data
            .iter()
            .position(|&v| v < 0.0)
            .map(|idx| (idx / self.cols, idx % self.cols, self.data[idx]))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Leading principal `k×k` submatrix.
    pub fn leading_block(&self, k: usize) -> Result<Matrix> {
        let n = self.require_square()?;
        if k == 0 || k > n {
            return Err(Error::DimensionMismatch(format!(
                "leading block of size {k} for an {n}x{n} matrix"
            )));
        }
        let data = (0..k).flat_map(|i| self.row(i)[..k].to_vec()).collect();
        Ok(Matrix::from_raw(k, k, data))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (row, col): (usize, usize)) -> &f64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        &self.data[row * self.cols + col]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.data.chunks(self.cols) {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl Vector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Empty);
        }
        check_finite(&data, data.len())?;
        Ok(Self(data))
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "vector length must be positive");
        Self(vec![0.0; len])
    }

    /// The all-ones vector 𝟙.
    pub fn ones(len: usize) -> Self {
        assert!(len > 0, "vector length must be positive");
        Self(vec![1.0; len])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = 1.0;
        v
    }

    pub(crate) fn from_raw(data: Vec<f64>) -> Self {
        Self(data)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.0.clone()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|v| v * factor).collect())
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Result<Vector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect(),
        ))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Vector) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector {:?}", self.0)
    }
}

/// Standard matrix product `a·b`.
pub fn multiply(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = vec![0.0; a.rows * b.cols];
    // i-k-j order keeps the inner loop on contiguous rows of `b`.
    for i in 0..a.rows {
        let out_row = &mut out[i * b.cols..(i + 1) * b.cols];
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik == 0.0 {
                continue;
            }
            for (o, bkj) in out_row.iter_mut().zip(b.row(k)) {
                *o += aik * bkj;
            }
        }
    }
    Ok(Matrix::from_raw(a.rows, b.cols, out))
}

/// LU factorization with partial pivoting, `P·M = L·U`, stored packed.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    packed: Vec<f64>,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    pub fn factor(m: &Matrix) -> Result<Lu> {
        let n = m.require_square()?;
        let mut a = m.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;

        for col in 0..n {
            let (pivot_row, pivot) = (col..n)
                .map(|r| (r, a[r * n + col]))
                .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
                .expect("non-empty pivot range");
            if pivot.abs() < PIVOT_TOL {
                return Err(Error::Singular {
                    col,
                    pivot: pivot.abs(),
                    threshold: PIVOT_TOL,
                });
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                perm.swap(col, pivot_row);
                swaps += 1;
            }
            for r in col + 1..n {
                let factor = a[r * n + col] / pivot;
                a[r * n + col] = factor;
                if factor != 0.0 {
                    for j in col + 1..n {
                        a[r * n + j] -= factor * a[col * n + j];
                    }
                }
            }
        }
        Ok(Lu {
            n,
            packed: a,
            perm,
            swaps,
        })
    }

    pub fn determinant(&self) -> f64 {
        let diag: f64 = (0..self.n).map(|i| self.packed[i * self.n + i]).product();
        if self.swaps.is_multiple_of(2) {
            diag
        } else {
            -diag
        }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        let permuted: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        b.copy_from_slice(&permuted);
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.packed[i * n + j] * b[j]).sum();
            b[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.packed[i * n + j] * b[j]).sum();
            b[i] = (b[i] - s) / self.packed[i * n + i];
        }
    }

    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        if b.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for an {}x{} system",
                b.len(),
                self.n,
                self.n
            )));
        }
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        Vector::new(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut inv = vec![0.0; n * n];
        let mut column = vec![0.0; n];
        for j in 0..n {
            column.iter_mut().for_each(|v| *v = 0.0);
            column[j] = 1.0;
            self.solve_in_place(&mut column);
            for i in 0..n {
                inv[i * n + j] = column[i];
            }
        }
        Matrix::new(n, n, inv)
    }
}

/// Inverse via LU with partial pivoting.
pub fn invert(m: &Matrix) -> Result<Matrix> {
    Lu::factor(m)?.inverse()
}

/// Diagonal matrix keeping `m`'s diagonal (the hat operator on a square matrix).
pub fn diag_of(m: &Matrix) -> Result<Matrix> {
    Ok(diag_from(&m.diagonal()?))
}

/// Diagonal matrix with `v` on the diagonal (the hat operator on a vector).
pub fn diag_from(v: &Vector) -> Matrix {
    let n = v.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &x) in v.as_slice().iter().enumerate() {
        m.data[i * n + i] = x;
    }
    m
}

/// Estimates the spectral radius of a nonnegative square matrix.
///
/// Power iteration runs on the shifted matrix `I + m`, whose Perron root
/// `1 + ρ(m)` strictly dominates every other eigenvalue in modulus even when
/// `m` is periodic (a pure cycle, say). The Collatz–Wielandt quotients
/// `min (Bv)ᵢ/vᵢ ≤ ρ(B) ≤ max (Bv)ᵢ/vᵢ` bracket the root at every step; the
/// iteration stops when the bracket or the norm-ratio estimate settles to
/// relative [`SPECTRAL_REL_TOL`], or after [`SPECTRAL_MAX_ITER`] steps.
pub fn spectral_radius_bound(m: &Matrix) -> Result<f64> {
    let n = m.require_square()?;
    if let Some((row, col, value)) = m.first_negative() {
        return Err(Error::Negative {
            what: "matrix",
            row,
            col,
            value,
        });
    }

    let mut v = vec![1.0; n];
    let mut prev = f64::NAN;
    let mut estimate = 1.0;
    for _ in 0..SPECTRAL_MAX_ITER {
        let w: Vec<f64> = (0..n)
            .map(|i| v[i] + m.row(i).iter().zip(&v).map(|(a, x)| a * x).sum::<f64>())
            .collect();
        let norm = w.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        if norm == 0.0 {
            return Ok(0.0);
        }

        let (mut lower, mut upper) = (f64::INFINITY, 0.0_f64);
        for (wi, vi) in w.iter().zip(&v) {
            if *vi > 0.0 {
                let q = wi / vi;
                lower = lower.min(q);
                upper = upper.max(q);
            }
        }

        // `v` is kept at unit max-norm, so `norm` is the growth ratio.
        estimate = norm;
        if upper - lower <= SPECTRAL_REL_TOL * upper {
            estimate = upper;
            break;
        }
        if (estimate - prev).abs() <= SPECTRAL_REL_TOL * estimate {
            break;
        }
        prev = estimate;
        v = w.iter().map(|x| x / norm).collect();
    }
    Ok((estimate - 1.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hypothetical_a() -> Matrix {
        Matrix::from_rows(&[[0.0, 0.1, 0.0], [0.0, 0.0, 0.2], [0.3, 0.0, 0.0]]).unwrap()
    }

    fn naive_product(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = vec![vec![0.0; b.cols()]; a.rows()];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for k in 0..a.cols() {
                    *cell += a[(i, k)] * b[(k, j)];
                }
            }
        }
        Matrix::from_rows(&out).unwrap()
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert_eq!(Matrix::new(0, 3, vec![]), Err(Error::Empty));
        assert!(matches!(
            Matrix::new(2, 2, vec![1.0; 3]),
            Err(Error::DimensionMismatch(_))
        ));
        assert_eq!(
            Matrix::new(2, 2, vec![1.0, 2.0, f64::NAN, 0.0]),
            Err(Error::NonFinite { row: 1, col: 0 })
        );
        assert!(matches!(
            Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]),
            Err(Error::DimensionMismatch(_))
        ));
        assert_eq!(Vector::new(vec![]), Err(Error::Empty));
        assert!(Vector::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn identity_product_is_noop() {
        let m = Matrix::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.5]]).unwrap();
        assert_eq!(multiply(&Matrix::identity(3), &m).unwrap(), m);
    }

    #[test]
    fn square_of_hypothetical_a() {
        let a = hypothetical_a();
        let a2 = multiply(&a, &a).unwrap();
        let expected =
            Matrix::from_rows(&[[0.0, 0.0, 0.02], [0.06, 0.0, 0.0], [0.0, 0.03, 0.0]]).unwrap();
        assert!(a2.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn product_matches_triple_loop() {
        // fixed pseudo-random 5x5 pair
        let gen = |seed: u64| {
            let mut s = seed;
            (0..25)
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((s >> 33) as f64 / (1u64 << 31) as f64) - 0.5
                })
                .collect::<Vec<_>>()
        };
        let a = Matrix::new(5, 5, gen(1)).unwrap();
        let b = Matrix::new(5, 5, gen(2)).unwrap();
        let fast = multiply(&a, &b).unwrap();
        assert!(fast.max_abs_diff(&naive_product(&a, &b)).unwrap() < 1e-14);
    }

    #[test]
    fn multiply_checks_dimensions() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(multiply(&a, &a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn invert_identity_and_leontief() {
        assert_eq!(invert(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
        let l = invert(&hypothetical_a().identity_minus().unwrap()).unwrap();
        assert!((l[(1, 2)] - 0.2012).abs() < 5e-5);
        assert!((l[(0, 0)] - 1.0060).abs() < 5e-5);
    }

    #[test]
    fn invert_diagonally_dominant_residual() {
        let n = 6;
        let mut rows = vec![vec![0.0; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = ((i * 7 + j * 3) % 5) as f64 * 0.3 - 0.6;
            }
            row[i] = 10.0 + i as f64;
        }
        let m = Matrix::from_rows(&rows).unwrap();
        let inv = invert(&m).unwrap();
        let residual = multiply(&m, &inv).unwrap().sub(&Matrix::identity(n)).unwrap();
        assert!(residual.norm_inf() < 1e-10);
    }

    #[test]
    fn invert_needs_pivoting() {
        let m = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(invert(&m).unwrap(), m);
    }

    #[test]
    fn singular_and_non_square() {
        let m = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(invert(&m), Err(Error::Singular { .. })));
        assert!(matches!(
            invert(&Matrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn determinant_sign_tracks_swaps() {
        let m = Matrix::from_rows(&[[0.0, 2.0], [3.0, 0.0]]).unwrap();
        assert!((Lu::factor(&m).unwrap().determinant() + 6.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_helpers() {
        let i3 = Matrix::identity(3);
        assert_eq!(diag_of(&i3).unwrap(), i3);
        assert_eq!(diag_from(&Vector::ones(3)), i3);
        let f = Vector::new(vec![10.0, 20.0, 30.0]).unwrap();
        let fhat = diag_from(&f);
        assert_eq!(fhat.diagonal().unwrap(), f);
        assert_eq!(fhat[(0, 1)], 0.0);
        assert_eq!(diag_of(&fhat).unwrap(), fhat);
        assert_eq!(diag_of(&hypothetical_a()).unwrap(), Matrix::zeros(3, 3));
        assert!(diag_of(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(spectral_radius_bound(&Matrix::zeros(3, 3)).unwrap(), 0.0);
        let rho = spectral_radius_bound(&hypothetical_a()).unwrap();
        assert!((rho - 0.006_f64.cbrt()).abs() < 1e-7, "{rho}");
        let d = diag_from(&Vector::new(vec![0.5, 0.2]).unwrap());
        assert!((spectral_radius_bound(&d).unwrap() - 0.5).abs() < 1e-9);
        assert!((spectral_radius_bound(&Matrix::identity(2)).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn spectral_radius_rejects_negative() {
        let m = Matrix::from_rows(&[[0.1, -0.2], [0.0, 0.1]]).unwrap();
        assert!(matches!(
            spectral_radius_bound(&m),
            Err(Error::Negative { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn column_scaling_and_sums() {
        let m = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let d = Vector::new(vec![2.0, 0.5]).unwrap();
        assert_eq!(
            m.scale_columns(&d).unwrap(),
            multiply(&m, &diag_from(&d)).unwrap()
        );
        assert_eq!(m.row_sums().as_slice(), &[3.0, 7.0]);
        assert_eq!(m.col_sums().as_slice(), &[4.0, 6.0]);
        assert_eq!(m.norm_inf(), 7.0);
        assert_eq!(m.transpose()[(0, 1)], 3.0);
        assert_eq!(m.leading_block(1).unwrap().as_slice(), &[1.0]);
    }
}
