//! Integer polynomials: characteristic polynomials, squarefree parts,
//! cyclotomic detection and root counting.

mod cyclotomic;
mod numeric;
mod sturm;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;

pub use cyclotomic::{
    canonical_coxeter_charpoly, cyclotomic, cyclotomic_factorization, euler_totient,
    CyclotomicVerdict,
};
pub use numeric::numeric_roots;
pub use sturm::{
    real_roots_with_multiplicity, spectrum_in_circle_or_real, sturm_real_roots, unit_circle_roots,
    RealBound,
};

/// Integer polynomial, `coefficients[k]` multiplies `x^k`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`
    pub fn linear(root: i64) -> Self {
        Self::from_i64(&[-root, 1])
    }

    /// `c x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coefficients.len() == 1 && self.coefficients[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coefficients.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &IntMatrix) -> Result<IntMatrix> {
        let n = a.require_square()?;
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coefficients.iter().rev() {
            acc = &(&acc * a) + &IntMatrix::identity(n).scale(c);
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Coefficients reversed: `x^deg p(1/x)`.
    pub fn reciprocal(&self) -> Self {
        Self::new(self.coefficients.iter().rev().cloned().collect())
    }

    pub fn content(&self) -> BigInt {
        self.coefficients
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divided by its content, with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coefficients.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient in `Z[x]`, if `d` divides `self` there.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = div_rem_rational(&to_rational(self), &to_rational(d));
        if !r.is_empty() || !q.iter().all(BigRational::is_integer) {
            return None;
        }
        Some(Self::new(q.into_iter().map(|c| c.to_integer()).collect()))
    }

    /// Divides out `d` as many times as possible.
    pub fn multiplicity_of(&self, d: &Self) -> (usize, Self) {
        let mut k = 0;
        let mut rest = self.clone();
        if d.degree().unwrap_or(0) == 0 || self.is_zero() {
            return (0, rest);
        }
        while let Some(q) = rest.exact_div(d) {
            rest = q;
            k += 1;
        }
        (k, rest)
    }

    /// Remainder over the rationals, cleared to a primitive integer polynomial
    /// with the sign of the true remainder preserved.
    pub(crate) fn pseudo_remainder_signed(&self, d: &Self) -> Self {
        let (_, r) = div_rem_rational(&to_rational(self), &to_rational(d));
        from_rational_positive_scaling(&r)
    }
}

/// Greatest common divisor in `Q[x]`, returned primitive with positive leading coefficient.
pub fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let mut x = a.primitive();
    let mut y = b.primitive();
    while !y.is_zero() {
        let r = x.pseudo_remainder_signed(&y);
        x = y;
        y = r;
    }
    x.primitive()
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = gcd(p, &p.derivative());
    let q = p
        .primitive()
        .exact_div(&g)
        .ok_or_else(|| Error::Internal("gcd does not divide polynomial".into()))?;
    Ok(q.primitive())
}

/// Yun's squarefree decomposition: `p = c * prod s_i^i` with each `s_i`
/// squarefree, primitive and pairwise coprime. Factors equal to 1 are omitted.
pub fn squarefree_decomposition(p: &IntPolynomial) -> Result<Vec<(IntPolynomial, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = monic_rational(&to_rational(p));
    let df = derivative_rational(&f);
    let a0 = gcd_rational(&f, &df);
    let mut b = div_rem_rational(&f, &a0).0;
    let mut c = div_rem_rational(&df, &a0).0;
    let mut d = sub_rational(&c, &derivative_rational(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd_rational(&b, &d);
        if a.len() > 1 {
            out.push((from_rational_positive_scaling(&a).primitive(), i));
        }
        b = div_rem_rational(&b, &a).0;
        c = div_rem_rational(&d, &a).0;
        d = sub_rational(&c, &derivative_rational(&b));
        i += 1;
    }
    Ok(out)
}

fn monic_rational(a: &[BigRational]) -> Vec<BigRational> {
    match a.last() {
        Some(lead) if !lead.is_zero() => a.iter().map(|c| c / lead).collect(),
        _ => a.to_vec(),
    }
}

fn derivative_rational(a: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(k.into()))
        .collect()
}

fn sub_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut v: Vec<BigRational> = (0..n)
        .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
        .collect();
    trim(&mut v);
    v
}

/// Monic gcd in `Q[x]`; `[1]` when coprime.
fn gcd_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = div_rem_rational(&x, &y).1;
        x = y;
        y = r;
    }
    monic_rational(&x)
}

/// Monic characteristic polynomial `det(xI - a)` by Faddeev-LeVerrier; every
/// division is exact over the integers.
pub fn charpoly(a: &IntMatrix) -> Result<IntPolynomial> {
    let n = a.require_square()?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let id = IntMatrix::identity(n);
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &id.scale(&coeffs[n - k + 1]);
        let t = (a * &m).trace();
        let (q, r) = (-t).div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Internal("inexact Faddeev-LeVerrier step".into()));
        }
        coeffs[n - k] = q;
    }
    Ok(IntPolynomial::new(coeffs))
}

pub(crate) fn to_rational(p: &IntPolynomial) -> Vec<BigRational> {
    p.coefficients
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

/// Scales a rational polynomial by a positive constant to a primitive integer one.
pub(crate) fn from_rational_positive_scaling(r: &[BigRational]) -> IntPolynomial {
    let lcm = r.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints = IntPolynomial::new(r.iter().map(|c| (c * &lcm).to_integer()).collect());
    let g = ints.content();
    if g.is_zero() {
        return ints;
    }
    IntPolynomial::new(ints.coefficients.iter().map(|c| c / &g).collect())
}

pub(crate) fn div_rem_rational(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r: Vec<BigRational> = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (j, bj) in b.iter().enumerate() {
            let d = &c * bj;
            r[k + j] -= d;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new(
            (0..n)
                .map(|k| self.coefficient(k) + rhs.coefficient(k))
                .collect(),
        )
    }
}

impl std::ops::Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new(
            (0..n)
                .map(|k| self.coefficient(k) - rhs.coefficient(k))
                .collect(),
        )
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl std::ops::Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

/// `x^5 - 10x^4 + 36x^3 - 56x^2 + 34x - 4`
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}
