//! Dense exact linear algebra over the rationals.
//!
//! Everything here works on [`Rat`] (arbitrary precision, always reduced) so
//! that the geometric layers above never round. Matrices are small (the
//! largest systems solved are about a dozen unknowns), so the storage is a
//! plain row-major `Vec`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Exact dot product. Panics on length mismatch.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sum(v: &[Rat]) -> Rat {
    v.iter().fold(Rat::zero(), |acc, x| acc + x)
}

/// Scale `v` so its first nonzero entry is 1. Zero vectors are returned as is.
pub fn normalize_leading(v: &[Rat]) -> Vec<Rat> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|x| x / &lead).collect()
        }
        None => v.to_vec(),
    }
}

/// True iff `a = c·b` for some rational `c` (any sign, `c` may be zero only if
/// `a` is zero).
pub fn proportional(a: &[Rat], b: &[Rat]) -> bool {
    proportionality_factor(a, b).is_some()
}

/// The `c` with `a = c·b`, if it exists. Both zero gives `Some(1)`.
pub fn proportionality_factor(a: &[Rat], b: &[Rat]) -> Option<Rat> {
    if a.len() != b.len() {
        return None;
    }
    let mut factor: Option<Rat> = None;
    for (x, y) in a.iter().zip(b) {
        if y.is_zero() {
            if !x.is_zero() {
                return None;
            }
            continue;
        }
        let c = x / y;
        match &factor {
            Some(f) if *f != c => return None,
            Some(_) => {}
            None => factor = Some(c),
        }
    }
    Some(factor.unwrap_or_else(Rat::one))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {op} needs {expected}, got {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Build from row vectors. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    op: "from_rows",
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n_rows,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LinAlgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().copied().map(rat).collect())
                .collect(),
        )
    }

    /// Outer product `a·bᵀ`.
    pub fn outer(a: &[Rat], b: &[Rat]) -> Self {
        let mut m = Self::zeros(a.len(), b.len());
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                m[(i, j)] = x * y;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                op: "mat_mul",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, LinAlgError> {
        if self.cols != v.len() {
            return Err(LinAlgError::DimensionMismatch {
                op: "mul_vec",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &RatMatrix,
        op: &'static str,
        f: impl Fn(&Rat, &Rat) -> Rat,
    ) -> Result<RatMatrix, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch {
                op,
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch {
                op: "vstack",
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
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
            m.swap_rows(row, p);
            let lead = m[(row, col)].clone();
            for j in col..m.cols {
                let v = &m[(row, j)] / &lead;
                m[(row, j)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in col..m.cols {
                    let v = &m[(row, j)] * &factor;
                    m[(r, j)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Gaussian elimination. Panics if not square.
    pub fn determinant(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let lead = m[(col, col)].clone();
            det *= &lead;
            for r in col + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &lead;
                for j in col..m.cols {
                    let v = &m[(col, j)] * &factor;
                    m[(r, j)] -= v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;

    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Basis of the right nullspace `{x : m·x = 0}`.
///
/// One vector per free column of the reduced echelon form; each is scaled so
/// its first nonzero entry is 1.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); m.cols()];
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            normalize_leading(&v)
        })
        .collect()
}

/// All solutions of `m·x = b`: `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub particular: Vec<Rat>,
    pub kernel: Vec<Vec<Rat>>,
}

impl AffineSolutionSet {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// `particular + Σ tᵢ·kernelᵢ`.
    pub fn point(&self, params: &[Rat]) -> Vec<Rat> {
        assert_eq!(params.len(), self.kernel.len());
        let mut x = self.particular.clone();
        for (t, k) in params.iter().zip(&self.kernel) {
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi += t * ki;
            }
        }
        x
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    Feasible(AffineSolutionSet),
    Infeasible,
}

impl AffineSolution {
    pub fn feasible(self) -> Option<AffineSolutionSet> {
        match self {
            AffineSolution::Feasible(s) => Some(s),
            AffineSolution::Infeasible => None,
        }
    }
}

/// Solve `m·x = b` exactly. The particular solution sets every free variable
/// to zero.
pub fn solve_affine(m: &RatMatrix, b: &[Rat]) -> Result<AffineSolution, LinAlgError> {
    if m.rows() != b.len() {
        return Err(LinAlgError::DimensionMismatch {
            op: "solve_affine",
            expected: m.rows(),
            found: b.len(),
        });
    }
    let cols = m.cols();
    let augmented = RatMatrix::from_rows(
        (0..m.rows())
            .map(|i| {
                let mut row = m.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect(),
    )?;
    let augmented = if m.rows() == 0 {
        RatMatrix::zeros(0, cols + 1)
    } else {
        augmented
    };
    let (r, pivots) = augmented.rref();
    if pivots.last() == Some(&cols) {
        return Ok(AffineSolution::Infeasible);
    }
    let mut particular = vec![Rat::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = r[(row, cols)].clone();
    }
    Ok(AffineSolution::Feasible(AffineSolutionSet {
        particular,
        kernel: kernel_basis(m),
    }))
}

/// Signed comparison helper used by geometric predicates.
pub fn sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_times_matrix() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(RatMatrix::identity(3).mul(&a).unwrap(), a);
    }

    #[test]
    fn swap_squares_to_identity() {
        let s = m(&[&[0, 1], &[1, 0]]);
        assert!(s.mul(&s).unwrap().is_identity());
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = RatMatrix::zeros(2, 3);
        assert!(matches!(
            a.mul(&a),
            Err(LinAlgError::DimensionMismatch { op: "mat_mul", .. })
        ));
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let k = kernel_basis(&RatMatrix::zeros(2, 2));
        assert_eq!(k, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
        assert!(kernel_basis(&RatMatrix::identity(2)).is_empty());
    }

    #[test]
    fn kernel_is_leading_one() {
        let a = m(&[&[2, 4, -2], &[1, 2, -1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().find(|x| !x.is_zero()), Some(&rat(1)));
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_identity() {
        let s = solve_affine(&RatMatrix::identity(2), &[rat(1), rat(2)])
            .unwrap()
            .feasible()
            .unwrap();
        assert_eq!(s.particular, vec![rat(1), rat(2)]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn solve_inconsistent() {
        let z = RatMatrix::zeros(1, 1);
        assert_eq!(
            solve_affine(&z, &[rat(1)]).unwrap(),
            AffineSolution::Infeasible
        );
    }

    #[test]
    fn solve_rank_one_family() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let s = solve_affine(&a, &[rat(3), rat(6)])
            .unwrap()
            .feasible()
            .unwrap();
        assert_eq!(s.particular, vec![rat(3), rat(0)]);
        // kernel is spanned by (-1, 1); leading-one scaling gives (1, -1)
        assert_eq!(s.kernel, vec![vec![rat(1), rat(-1)]]);
        for t in [-3, 0, 5] {
            let x = s.point(&[rat(t)]);
            assert_eq!(a.mul_vec(&x).unwrap(), vec![rat(3), rat(6)]);
        }
    }

    #[test]
    fn solve_rejects_bad_rhs() {
        assert!(solve_affine(&RatMatrix::identity(2), &[rat(1)]).is_err());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), rat(-1));
        assert_eq!(m(&[&[2, 1], &[1, 1]]).determinant(), rat(1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), rat(0));
    }

    #[test]
    fn proportional_vectors() {
        let a = vec![rat(2), rat(0), rat(-4)];
        let b = vec![ratio(1, 2), rat(0), rat(-1)];
        assert_eq!(proportionality_factor(&a, &b), Some(rat(4)));
        assert!(!proportional(&a, &[rat(1), rat(1), rat(-2)]));
    }
}
