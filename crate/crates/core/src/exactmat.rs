//! Dense exact matrices over arbitrary-precision integers and rationals.
//!
//! Storage is row-major and every value is immutable once built.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};

/// Scalar ring usable as a matrix entry.
pub trait Scalar: Clone + Num + Neg<Output = Self> + fmt::Display {}
impl<T: Clone + Num + Neg<Output = T> + fmt::Display> Scalar for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} versus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Kronecker product; block `(i, j)` is `self[i][j] * rhs`.
    pub fn kronecker(&self, rhs: &Self) -> Self {
        let (p, q) = (rhs.rows, rhs.cols);
        Self::from_fn(self.rows * p, self.cols * q, |r, c| {
            self.get(r / p, c / q).clone() * rhs.get(r % p, c % q).clone()
        })
    }

    /// Binary exponentiation; `a^0 = I`.
    pub fn pow(&self, mut m: u64) -> Result<Self> {
        let n = self.require_square()?;
        let mut result = Self::identity(n);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = &result * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// True iff `self^n = 0` where `n` is the size.
    pub fn is_nilpotent(&self) -> bool {
        match self.pow(self.rows as u64) {
            Ok(p) => p.is_zero(),
            Err(_) => false,
        }
    }

    /// Upper triangular with ones on the diagonal.
    pub fn is_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| self.get(i, i).is_one() && (0..i).all(|j| self.get(i, j).is_zero()))
    }

    /// Simultaneously permutes rows and columns: result[i][j] = self[p[i]][p[j]].
    pub fn permute(&self, p: &[usize]) -> Self {
        Self::from_fn(p.len(), p.len(), |i, j| self.get(p[i], p[j]).clone())
    }
}

/// Panics on dimension mismatch; use [`Matrix::matmul`] for the checked form.
impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.matmul(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        self.try_add(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|a| -a.clone())
    }
}

impl<T: Scalar> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        -&self
    }
}

impl<const R: usize, const C: usize> From<[[i64; C]; R]> for IntMatrix {
    fn from(rows: [[i64; C]; R]) -> Self {
        Matrix::from_fn(R, C, |i, j| BigInt::from(rows[i][j]))
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|a| BigRational::from_integer(a.clone()))
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<BigInt> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    /// Exact inverse over the rationals.
    pub fn inverse_exact(&self) -> Result<RatMatrix> {
        self.to_rational().inverse()
    }

    /// Integer inverse of an upper unitriangular matrix via the finite
    /// geometric series `sum_k (I - a)^k`.
    pub fn inverse_unitriangular(&self) -> Result<IntMatrix> {
        if !self.is_unitriangular() {
            return Err(Error::NotUnitriangular);
        }
        let n = self.rows;
        let nil = &IntMatrix::identity(n) - self;
        let mut term = IntMatrix::identity(n);
        let mut sum = IntMatrix::identity(n);
        for _ in 1..n {
            term = &term * &nil;
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(sum)
    }

    /// Parses the plain-text matrix format: one row per line, whitespace
    /// separated integers, `#` comment lines ignored.
    pub fn parse(text: &str) -> Result<IntMatrix> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>()
                        .map_err(|_| Error::parse(lineno + 1, format!("bad integer `{tok}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::parse(
                        lineno + 1,
                        format!("row has {} entries, expected {}", row.len(), first.len()),
                    ));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::parse(0, "no matrix rows"));
        }
        Self::from_rows(rows)
    }

    /// Inverse of [`IntMatrix::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl RatMatrix {
    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.require_square()?;
        let mut a = self.to_rows();
        let mut inv = RatMatrix::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let da = &f * &a[col][j];
                    let di = &f * &inv[col][j];
                    a[r][j] -= da;
                    inv[r][j] -= di;
                }
            }
        }
        RatMatrix::from_rows(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            for r in rank + 1..rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &a[rank][col];
                for j in col..cols {
                    let d = &f * &a[rank][j];
                    a[r][j] -= d;
                }
            }
            rank += 1;
        }
        rank
    }

    /// The integer matrix with the same entries, if every denominator is 1.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.matmul(b)
}

pub fn inverse_exact(a: &IntMatrix) -> Result<RatMatrix> {
    a.inverse_exact()
}

pub fn inverse_unitriangular(a: &IntMatrix) -> Result<IntMatrix> {
    a.inverse_unitriangular()
}

pub fn kronecker<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    a.kronecker(b)
}

pub fn is_nilpotent<T: Scalar>(a: &Matrix<T>) -> bool {
    a.is_nilpotent()
}

pub fn matrix_power<T: Scalar>(a: &Matrix<T>, m: u64) -> Result<Matrix<T>> {
    a.pow(m)
}

/// Greatest common divisor of the entries, made positive; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Scales a nonzero rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = content(&ints);
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn multiplication_examples() {
        let i2 = IntMatrix::identity(2);
        assert_eq!(mat_mul(&i2, &i2).unwrap(), i2);
        let a = IntMatrix::from([[1, 1], [0, 1]]);
        let b = IntMatrix::from([[1, 0], [-1, 1]]);
        assert_eq!(mat_mul(&a, &b).unwrap(), IntMatrix::from([[0, 1], [-1, 1]]));
        let r1 = IntMatrix::from([[-1, 1], [0, 1]]);
        assert!(mat_mul(&r1, &r1).unwrap().is_identity());
    }

    #[test]
    fn multiplication_dimension_mismatch() {
        let a = IntMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn exact_inverse_examples() {
        let i3 = IntMatrix::identity(3);
        assert_eq!(inverse_exact(&i3).unwrap(), RatMatrix::identity(3));
        let a = IntMatrix::from([[1, 1], [0, 1]]);
        assert_eq!(
            inverse_exact(&a).unwrap().to_integer().unwrap(),
            IntMatrix::from([[1, -1], [0, 1]])
        );
        let b = IntMatrix::from([[2, 1], [1, 1]]);
        assert_eq!(
            inverse_exact(&b).unwrap().to_integer().unwrap(),
            IntMatrix::from([[1, -1], [-1, 2]])
        );
        let c = IntMatrix::from([[2, 0], [0, 1]]);
        let inv = inverse_exact(&c).unwrap();
        assert_eq!(inv.get(0, 0), &r(1, 2));
        assert!(inv.to_integer().is_none());
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let a = IntMatrix::from([[1, 2], [2, 4]]);
        assert_eq!(inverse_exact(&a), Err(Error::Singular));
        assert!(matches!(
            inverse_exact(&IntMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn unitriangular_inverse_examples() {
        assert_eq!(
            inverse_unitriangular(&IntMatrix::identity(4)).unwrap(),
            IntMatrix::identity(4)
        );
        assert_eq!(
            inverse_unitriangular(&IntMatrix::from([[1, 1], [0, 1]])).unwrap(),
            IntMatrix::from([[1, -1], [0, 1]])
        );
        let chain = IntMatrix::from([[1, 1, 1], [0, 1, 1], [0, 0, 1]]);
        let mu = inverse_unitriangular(&chain).unwrap();
        assert_eq!(mu, IntMatrix::from([[1, -1, 0], [0, 1, -1], [0, 0, 1]]));
        assert!((&chain * &mu).is_identity());
        assert_eq!(
            inverse_unitriangular(&IntMatrix::from([[1, 0], [1, 1]])),
            Err(Error::NotUnitriangular)
        );
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(
            kronecker(&IntMatrix::identity(2), &IntMatrix::identity(2)),
            IntMatrix::identity(4)
        );
        let a = IntMatrix::from([[1, 1], [0, 1]]);
        assert_eq!(kronecker(&a, &IntMatrix::from([[1]])), a);
        // (a ⊗ a)^2 = a^2 ⊗ a^2, so its trace is tr(a^2)^2 = (-1)^2.
        let phi = IntMatrix::from([[0, -1], [1, -1]]);
        let k = kronecker(&phi, &phi);
        assert_eq!(k.rows(), 4);
        assert_eq!((&k * &k).trace(), BigInt::from(1));
        assert_eq!((&phi * &phi).trace(), BigInt::from(-1));
    }

    #[test]
    fn kronecker_block_layout() {
        let a = IntMatrix::from([[1, 2], [3, 4]]);
        let b = IntMatrix::from([[0, 5], [6, 7]]);
        let k = a.kronecker(&b);
        assert_eq!(
            k,
            IntMatrix::from([
                [0, 5, 0, 10],
                [6, 7, 12, 14],
                [0, 15, 0, 20],
                [18, 21, 24, 28]
            ])
        );
    }

    #[test]
    fn nilpotency_examples() {
        assert!(is_nilpotent(&IntMatrix::from([[0, 1], [0, 0]])));
        assert!(!is_nilpotent(&IntMatrix::identity(2)));
        let phi = IntMatrix::from([[0, -1], [1, -1]]);
        let d = &matrix_power(&phi, 3).unwrap() - &IntMatrix::identity(2);
        assert!(d.is_zero());
        assert!(is_nilpotent(&d));
    }

    #[test]
    fn power_examples() {
        let a = IntMatrix::from([[3, 1], [4, 1]]);
        assert!(matrix_power(&a, 0).unwrap().is_identity());
        let phi = IntMatrix::from([[0, -1], [1, -1]]);
        assert_eq!(matrix_power(&phi, 3).unwrap(), IntMatrix::identity(2));
        assert_eq!(
            matrix_power(&IntMatrix::from([[2, 0], [0, 2]]), 5).unwrap(),
            IntMatrix::from([[32, 0], [0, 32]])
        );
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(
            IntMatrix::from([[2, 1], [1, 1]]).determinant().unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            IntMatrix::from([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
                .determinant()
                .unwrap(),
            BigInt::from(-2)
        );
        assert_eq!(
            IntMatrix::from([[1, 2], [2, 4]]).determinant().unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn text_format() {
        let m = IntMatrix::parse("# comment\n1 -1\n\n0   1\n").unwrap();
        assert_eq!(m, IntMatrix::from([[1, -1], [0, 1]]));
        assert_eq!(IntMatrix::parse(&m.to_text()).unwrap(), m);
        assert!(matches!(
            IntMatrix::parse("1 2\n3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            IntMatrix::parse("1 x\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            IntMatrix::parse("# only\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![r(1, 2), r(-3, 4), r(0, 1)];
        assert_eq!(
            primitive_integer_vector(&v),
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]
        );
    }

    #[test]
    fn rational_canonical_form() {
        let x = r(4, -6);
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
    }
}
