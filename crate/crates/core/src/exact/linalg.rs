use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{lcm_of_denominators, Rational};
use crate::{Error, Result};

/// A vector with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVector(entries.iter().map(|&x| super::int(x)).collect())
    }

    /// The `i`-th standard basis vector of `ℚ^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, c: &Rational) -> QVector {
        QVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c·other`
    pub fn add_scaled(&self, c: &Rational, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", x)?;
        }
        f.write_str(")")
    }
}

/// A dense row-major matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::int(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vectors(vectors: &[QVector]) -> Self {
        Self::from_rows(vectors.iter().map(|v| v.entries().to_vec()).collect())
            .expect("vectors of unequal dimension")
    }

    /// The rank-one matrix `u·vᵀ`.
    pub fn outer(u: &QVector, v: &QVector) -> Self {
        let mut m = Self::zeros(u.dim(), v.dim());
        for i in 0..u.dim() {
            for j in 0..v.dim() {
                m[(i, j)] = &u[i] * &v[j];
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
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
        out
    }

    pub fn mul_vec(&self, v: &QVector) -> QVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        QVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.entries())
                        .filter(|(a, _)| !a.is_zero())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Determinant by Bareiss elimination on the denominator-cleared matrix.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let (row, s) = clear_denominators(self.row(i));
                scale *= s;
                row
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Rational::new(sign * &a[n - 1][n - 1], scale)
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| clear_denominators(self.row(i)).0)
            .collect();
        bareiss_forward(&mut a, self.cols).len()
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x)?;
            }
        }
        f.write_str("]")
    }
}

/// Multiplies a rational row by the lcm of its denominators.
fn clear_denominators(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = lcm_of_denominators(row);
    let ints = row
        .iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect();
    (ints, l)
}

/// Fraction-free forward elimination over the first `cols` columns; the first
/// nonzero entry at or below the current row is the pivot. Returns the pivot
/// columns. Rows beyond `cols` (augmented parts) are carried along.
fn bareiss_forward(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = &a[i][j] * &a[r][c] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact solution of `M·x = b` for square nonsingular `M`.
pub fn solve_linear(m: &QMatrix, b: &QVector) -> Result<QVector> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    if b.dim() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: b.dim(),
        });
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = m.row(i).to_vec();
            row.push(b[i].clone());
            clear_denominators(&row).0
        })
        .collect();
    let pivots = bareiss_forward(&mut a, n);
    if pivots.len() < n {
        return Err(Error::SingularSystem);
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    Ok(QVector::new(x))
}

pub fn gram_matrix(vectors: &[QVector]) -> QMatrix {
    let k = vectors.len();
    let mut g = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let d = vectors[i].dot(&vectors[j]);
            g[(j, i)] = d.clone();
            g[(i, j)] = d;
        }
    }
    g
}

/// Determinant of the Gram matrix of `vectors`, i.e. the squared covolume of
/// the lattice they span.
pub fn gram_det(vectors: &[QVector]) -> Result<Rational> {
    let d = gram_matrix(vectors).det();
    if d.is_zero() {
        Err(Error::DegenerateBasis)
    } else {
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn a2_coroots() -> Vec<QVector> {
        alloc::vec![
            QVector::from_ints(&[1, -1, 0]),
            QVector::from_ints(&[0, 1, -1]),
        ]
    }

    #[test]
    fn gram_det_examples() {
        assert_eq!(gram_det(&a2_coroots()[..1]).unwrap(), int(2));
        assert_eq!(gram_det(&a2_coroots()).unwrap(), int(3));
        assert_eq!(gram_det(&[]).unwrap(), int(1));
    }

    #[test]
    fn gram_det_rejects_dependent_vectors() {
        let v = QVector::from_ints(&[1, 2, 3]);
        let w = v.scale(&rat(-1, 2));
        assert_eq!(gram_det(&[v, w]), Err(Error::DegenerateBasis));
    }

    #[test]
    fn solve_examples() {
        let id = QMatrix::identity(3);
        let b = QVector::new(alloc::vec![rat(1, 2), int(-3), rat(7, 5)]);
        assert_eq!(solve_linear(&id, &b).unwrap(), b);

        let m = QMatrix::from_int_rows(&[&[2, -1], &[-1, 2]]);
        let x = solve_linear(&m, &QVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(x, QVector::new(alloc::vec![rat(2, 3), rat(1, 3)]));

        let s = QMatrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            solve_linear(&s, &QVector::from_ints(&[1, 2])),
            Err(Error::SingularSystem)
        );
    }

    #[test]
    fn solve_needs_row_swap() {
        let m = QMatrix::from_rows(alloc::vec![
            alloc::vec![int(0), rat(1, 2), int(1)],
            alloc::vec![rat(1, 3), int(0), int(2)],
            alloc::vec![int(1), int(1), int(0)],
        ])
        .unwrap();
        let x = QVector::new(alloc::vec![rat(3, 7), int(-2), rat(5, 11)]);
        let b = m.mul_vec(&x);
        assert_eq!(solve_linear(&m, &b).unwrap(), x);
    }

    #[test]
    fn det_and_rank() {
        let m = QMatrix::from_rows(alloc::vec![
            alloc::vec![rat(1, 2), int(3)],
            alloc::vec![int(4), rat(-1, 3)],
        ])
        .unwrap();
        assert_eq!(m.det(), rat(-1, 6) - int(12));
        assert_eq!(m.rank(), 2);
        let r = QMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(r.rank(), 2);
        assert_eq!(r.det(), int(0));
    }
}
