//! Dense rational vectors and matrices: exact solving, inversion, LDL.

use num_traits::{One, Signed, Zero};

use super::rational::Rat;
use super::ExactError;

/// A dense rational vector.
pub type RVec = Vec<Rat>;

pub fn rvec_zero(n: usize) -> RVec {
    vec![Rat::zero(); n]
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn scale(v: &[Rat], s: &Rat) -> RVec {
    v.iter().map(|x| x * s).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> RVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(v: &[Rat]) -> RVec {
    v.iter().map(|x| -x).collect()
}

pub fn norm_sq(v: &[Rat]) -> Rat {
    dot(v, v)
}

pub fn cross3(a: &[Rat], b: &[Rat]) -> RVec {
    assert_eq!(a.len(), 3);
    assert_eq!(b.len(), 3);
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Row-major dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<RVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        RMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Rat>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
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
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows);
        RMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    pub fn matvec(&self, v: &[Rat]) -> RVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, s: &Rat) -> RMatrix {
        RMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * s)
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            let pivot = (rank..m.rows).find(|&i| !m[(i, col)].is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap_rows(rank, p);
            for i in rank + 1..m.rows {
                if !m[(i, col)].is_zero() {
                    let factor = &m[(i, col)] / &m[(rank, col)];
                    for j in col..m.cols {
                        let v = &m[(i, j)] - &factor * &m[(rank, j)];
                        m[(i, j)] = v;
                    }
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m[(i, k)].is_zero());
            let Some(p) = pivot else {
                return Rat::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            det *= m[(k, k)].clone();
            for i in k + 1..n {
                if !m[(i, k)].is_zero() {
                    let factor = &m[(i, k)] / &m[(k, k)];
                    for j in k..n {
                        let v = &m[(i, j)] - &factor * &m[(k, j)];
                        m[(i, j)] = v;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RMatrix, ExactError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = RMatrix::identity(n);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m[(i, k)].is_zero());
            let Some(p) = pivot else {
                return Err(ExactError::SingularMatrix);
            };
            m.swap_rows(p, k);
            inv.swap_rows(p, k);
            let inv_pivot = m[(k, k)].recip();
            for j in 0..n {
                m[(k, j)] *= inv_pivot.clone();
                inv[(k, j)] *= inv_pivot.clone();
            }
            for i in 0..n {
                if i != k && !m[(i, k)].is_zero() {
                    let factor = m[(i, k)].clone();
                    for j in 0..n {
                        let v = &m[(i, j)] - &factor * &m[(k, j)];
                        m[(i, j)] = v;
                        let v = &inv[(i, j)] - &factor * &inv[(k, j)];
                        inv[(i, j)] = v;
                    }
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solves `A x = b` exactly for square `A`, failing on rank deficiency.
pub fn solve_linear(a: &RMatrix, b: &[Rat]) -> Result<RVec, ExactError> {
    if !a.is_square() || a.rows() != b.len() {
        return Err(ExactError::DimensionMismatch);
    }
    let inv = a.inverse()?;
    Ok(inv.matvec(b))
}

/// Particular solution of a possibly rank-deficient consistent system `A x = b`
/// (free variables set to zero). Returns None if inconsistent.
pub fn solve_consistent(a: &RMatrix, b: &[Rat]) -> Option<RVec> {
    assert_eq!(a.rows(), b.len());
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = RMatrix::from_fn(rows, cols + 1, |i, j| {
        if j < cols {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv_pivot = m[(r, c)].recip();
        for j in c..=cols {
            m[(r, j)] *= inv_pivot.clone();
        }
        for i in 0..rows {
            if i != r && !m[(i, c)].is_zero() {
                let factor = m[(i, c)].clone();
                for j in c..=cols {
                    let v = &m[(i, j)] - &factor * &m[(r, j)];
                    m[(i, j)] = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for i in r..rows {
        if !m[(i, cols)].is_zero() {
            return None;
        }
    }
    let mut x = rvec_zero(cols);
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[(row, cols)].clone();
    }
    Some(x)
}

/// LDL^T factorization of a symmetric positive definite rational matrix:
/// `L * diag(D) * L^T = M` with `L` unit lower triangular and all `D[i] > 0`.
///
/// No pivoting: a non-positive pivot is reported as `NotPositiveDefinite`,
/// which is a meaningful failure signal for the certificate pipeline.
pub fn ldl_decompose(m: &RMatrix) -> Result<(RMatrix, RVec), ExactError> {
    if !m.is_symmetric() {
        return Err(ExactError::NotSymmetric);
    }
    let n = m.rows();
    let mut l = RMatrix::identity(n);
    let mut d = rvec_zero(n);
    for j in 0..n {
        let mut dj = m[(j, j)].clone();
        for k in 0..j {
            dj -= &l[(j, k)] * &l[(j, k)] * &d[k];
        }
        if !dj.is_positive() {
            return Err(ExactError::NotPositiveDefinite);
        }
        d[j] = dj;
        for i in j + 1..n {
            let mut v = m[(i, j)].clone();
            for k in 0..j {
                v -= &l[(i, k)] * &l[(j, k)] * &d[k];
            }
            l[(i, j)] = v / &d[j];
        }
    }
    Ok((l, d))
}
