//! Integral bilinear forms `<x, y>_C = x^t C y` and their Coxeter matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{primitive_integer_vector, IntMatrix};
use crate::polynomials::{
    charpoly, cyclotomic_factorization, spectrum_in_circle_or_real, squarefree_part,
    CyclotomicVerdict, IntPolynomial,
};

/// Largest number of vectors [`find_nonnegative_witness`] will enumerate.
pub const ENUMERATION_CAP: u128 = 100_000_000;

/// A square integer matrix with names for its basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: IntMatrix,
    basis_labels: Vec<String>,
}

impl BilinearForm {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let n = matrix.require_square()?;
        Ok(BilinearForm {
            matrix,
            basis_labels: (1..=n).map(|i| i.to_string()).collect(),
        })
    }

    pub fn with_labels(matrix: IntMatrix, basis_labels: Vec<String>) -> Result<Self> {
        let n = matrix.require_square()?;
        if basis_labels.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for a form of rank {n}",
                basis_labels.len()
            )));
        }
        Ok(BilinearForm {
            matrix,
            basis_labels,
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn value(&self, v: &[BigInt], w: &[BigInt]) -> Result<BigInt> {
        form_value(&self.matrix, v, w)
    }

    pub fn analyze(&self) -> Result<FormAnalysis> {
        analyze(&self.matrix)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Positive,
    NonNegativeDegenerate,
    Indefinite,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Positive => "positive",
            Classification::NonNegativeDegenerate => "non-negative-degenerate",
            Classification::Indefinite => "indefinite",
        })
    }
}

/// Counts of positive, zero and negative squares after diagonalization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

/// An integer vector together with `v^t C v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vector: Vec<BigInt>,
    pub value: BigInt,
}

impl Witness {
    /// Whitespace-separated entries in basis order.
    pub fn vector_text(&self) -> String {
        self.vector
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClassification {
    pub classification: Classification,
    pub signature: Signature,
    pub witness_negative: Option<Witness>,
    pub radical_basis: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormAnalysis {
    pub coxeter: IntMatrix,
    pub charpoly_coxeter: IntPolynomial,
    pub cyclotomic: CyclotomicVerdict,
    pub periodic: bool,
    pub period: Option<u64>,
    pub weakly_periodic: bool,
    pub classification: Classification,
    pub signature: Signature,
    pub witness_negative: Option<Witness>,
    pub radical_basis: Vec<Vec<BigInt>>,
    pub spectrum_in_circle_or_real: bool,
    /// Characteristic polynomial of `C + C^t`.
    pub charpoly_symmetrized: IntPolynomial,
}

/// `-C^{-1} C^t`, rejected unless integral.
pub fn coxeter_matrix(c: &IntMatrix) -> Result<IntMatrix> {
    c.require_square()?;
    let inv = c.inverse_exact()?;
    let phi = -(&inv * &c.transpose().to_rational());
    phi.to_integer().ok_or(Error::NotIntegral)
}

/// `C + C^t`
pub fn symmetrize(c: &IntMatrix) -> Result<IntMatrix> {
    c.require_square()?;
    Ok(c + &c.transpose())
}

/// `v^t C w`
pub fn form_value(c: &IntMatrix, v: &[BigInt], w: &[BigInt]) -> Result<BigInt> {
    if v.len() != c.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a {}x{} form",
            v.len(),
            c.rows(),
            c.cols()
        )));
    }
    let cw = c.mul_vec(w)?;
    Ok(v.iter().zip(&cw).map(|(a, b)| a * b).sum())
}

/// Symmetric rational matrix under congruence `M = T^t S T`, with the
/// columns of `T` tracked alongside.
struct Congruence {
    m: Vec<Vec<BigRational>>,
    // t[c] is column c of T
    t: Vec<Vec<BigRational>>,
}

impl Congruence {
    fn new(s: &IntMatrix) -> Self {
        let n = s.rows();
        let m = s.to_rational().to_rows();
        let t = (0..n)
            .map(|c| {
                (0..n)
                    .map(|r| {
                        if r == c {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Congruence { m, t }
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap(i, j);
        for row in &mut self.m {
            row.swap(i, j);
        }
        self.t.swap(i, j);
    }

    /// Basis change `b_target += c * b_source`.
    fn add_multiple(&mut self, target: usize, source: usize, c: &BigRational) {
        let n = self.m.len();
        for r in 0..n {
            let d = &self.m[r][source] * c;
            self.m[r][target] += d;
        }
        for k in 0..n {
            let d = &self.m[source][k] * c;
            self.m[target][k] += d;
        }
        for r in 0..n {
            let d = &self.t[source][r] * c;
            self.t[target][r] += d;
        }
    }
}

/// Exact classification of `q(v) = v^t C v` by Lagrange reduction of `C + C^t`.
pub fn classify_form(c: &IntMatrix) -> Result<FormClassification> {
    let s = symmetrize(c)?;
    let n = s.rows();
    let mut red = Congruence::new(&s);
    let mut signature = Signature::default();
    let mut witness: Option<Vec<BigRational>> = None;
    let mut k = 0;
    while k < n {
        if let Some(j) = (k..n).find(|&j| !red.m[j][j].is_zero()) {
            red.swap(k, j);
        } else {
            let pair = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !red.m[i][j].is_zero());
            let Some((i, j)) = pair else {
                break;
            };
            // Hyperbolic plane: q(b_i + b_j) = 2b and q(b_i - b_j) = -2b.
            if witness.is_none() {
                let sign = if red.m[i][j].is_positive() {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                witness = Some(
                    red.t[i]
                        .iter()
                        .zip(&red.t[j])
                        .map(|(a, b)| a + b * &sign)
                        .collect(),
                );
            }
            red.add_multiple(i, j, &BigRational::one());
            red.swap(k, i);
        }
        let pivot = red.m[k][k].clone();
        if pivot.is_positive() {
            signature.n_plus += 1;
        } else {
            signature.n_minus += 1;
            if witness.is_none() {
                witness = Some(red.t[k].clone());
            }
        }
        for i in k + 1..n {
            if red.m[k][i].is_zero() {
                continue;
            }
            let f = -(&red.m[k][i] / &pivot);
            red.add_multiple(i, k, &f);
        }
        k += 1;
    }
    signature.n_zero = n - k;
    let radical_basis: Vec<Vec<BigInt>> = red.t[k..]
        .iter()
        .map(|col| primitive_integer_vector(col))
        .collect();
    let witness_negative = match witness {
        Some(v) => {
            let vector = primitive_integer_vector(&v);
            let value = form_value(c, &vector, &vector)?;
            if !value.is_negative() {
                return Err(Error::Internal(
                    "witness does not have negative value".into(),
                ));
            }
            Some(Witness { vector, value })
        }
        None => None,
    };
    let classification = if signature.n_minus > 0 {
        Classification::Indefinite
    } else if signature.n_zero > 0 {
        Classification::NonNegativeDegenerate
    } else {
        Classification::Positive
    };
    Ok(FormClassification {
        classification,
        signature,
        witness_negative,
        radical_basis,
    })
}

/// Coxeter matrix, periodicity verdicts, form classification and spectral
/// test in one record.
pub fn analyze(c: &IntMatrix) -> Result<FormAnalysis> {
    let coxeter = coxeter_matrix(c)?;
    let charpoly_coxeter = charpoly(&coxeter)?;
    let cyclotomic = cyclotomic_factorization(&charpoly_coxeter)?;
    let weakly_periodic = cyclotomic.is_product_of_cyclotomics;
    let periodic = weakly_periodic
        && squarefree_part(&charpoly_coxeter)?
            .eval_matrix(&coxeter)?
            .is_zero();
    let period = if periodic {
        let m = cyclotomic
            .period()
            .ok_or_else(|| Error::Internal("periodic without cyclotomic indices".into()))?;
        if !coxeter.pow(m)?.is_identity() {
            return Err(Error::Internal(format!("Phi^{m} is not the identity")));
        }
        Some(m)
    } else {
        None
    };
    let class = classify_form(c)?;
    Ok(FormAnalysis {
        spectrum_in_circle_or_real: spectrum_in_circle_or_real(&charpoly_coxeter),
        charpoly_symmetrized: charpoly(&symmetrize(c)?)?,
        coxeter,
        charpoly_coxeter,
        cyclotomic,
        periodic,
        period,
        weakly_periodic,
        classification: class.classification,
        signature: class.signature,
        witness_negative: match class.classification {
            Classification::Indefinite => short_witness(c).or(class.witness_negative),
            _ => None,
        },
        radical_basis: class.radical_basis,
    })
}

/// Largest size for which [`short_witness`] scans `{-1, 0, 1}^n`.
pub const SHORT_WITNESS_MAX: usize = 10;

/// Among vectors with entries in `{-1, 0, 1}` and first nonzero entry 1, the
/// first one with the negative value closest to zero. Coordinates run through
/// 0, 1, -1 in that order and the last coordinate moves fastest. `None` when
/// the box holds no negative value or `n > SHORT_WITNESS_MAX`.
pub fn short_witness(c: &IntMatrix) -> Option<Witness> {
    let n = c.rows();
    let rows = c.to_i64_rows()?;
    if n > SHORT_WITNESS_MAX || !c.is_square() {
        return None;
    }
    let digit = |d: u32| [0i64, 1, -1][d as usize];
    let mut v = vec![0u32; n];
    let mut best: Option<(i128, Vec<u32>)> = None;
    while odometer(&mut v, 2) {
        if v.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        let mut q: i128 = 0;
        for i in (0..n).filter(|&i| v[i] != 0) {
            let row: i128 = (0..n)
                .map(|j| rows[i][j] as i128 * digit(v[j]) as i128)
                .sum();
            q += row * digit(v[i]) as i128;
        }
        if q < 0 && best.as_ref().is_none_or(|(b, _)| q > *b) {
            best = Some((q, v.clone()));
            if q == -1 {
                break;
            }
        }
    }
    best.map(|(q, v)| Witness {
        vector: v.into_iter().map(|d| BigInt::from(digit(d))).collect(),
        value: BigInt::from(q),
    })
}

/// Lexicographically first minimizer of `v^t C v` over `v in {0..bound}^n \ {0}`,
/// returned only when that minimum is `<= 0`.
pub fn find_nonnegative_witness(c: &IntMatrix, bound: u32) -> Result<Option<Witness>> {
    let n = c.require_square()?;
    if n == 0 || bound == 0 {
        return Ok(None);
    }
    let count = (bound as u128 + 1)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if count > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            requested: count,
            cap: ENUMERATION_CAP,
        });
    }
    let best = match c.to_i64_rows() {
        Some(rows) => search_small(&rows, bound).or_else(|| search_big(c, bound)),
        None => search_big(c, bound),
    };
    Ok(best.and_then(|v| {
        let value = form_value(c, &v, &v).expect("square");
        (!value.is_positive()).then_some(Witness { vector: v, value })
    }))
}

/// Advances `v` to the next vector in lexicographic order; false on wrap-around.
fn odometer(v: &mut [u32], bound: u32) -> bool {
    for x in v.iter_mut().rev() {
        if *x < bound {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

// `None` on i128 overflow; the caller falls back to big integers.
fn search_small(rows: &[Vec<i64>], bound: u32) -> Option<Vec<BigInt>> {
    let n = rows.len();
    let mut v = vec![0u32; n];
    let mut best: Option<(i128, Vec<u32>)> = None;
    while odometer(&mut v, bound) {
        let mut q: i128 = 0;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                if v[j] != 0 && rows[i][j] != 0 {
                    row = row.checked_add((rows[i][j] as i128).checked_mul(v[j] as i128)?)?;
                }
            }
            q = q.checked_add(row.checked_mul(v[i] as i128)?)?;
        }
        if best.as_ref().is_none_or(|(b, _)| q < *b) {
            best = Some((q, v.clone()));
        }
    }
    best.map(|(_, v)| v.into_iter().map(BigInt::from).collect())
}

fn search_big(c: &IntMatrix, bound: u32) -> Option<Vec<BigInt>> {
    let n = c.rows();
    let mut v = vec![0u32; n];
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    while odometer(&mut v, bound) {
        let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let q = form_value(c, &vb, &vb).expect("square");
        if best.as_ref().is_none_or(|(b, _)| q < *b) {
            best = Some((q, vb));
        }
    }
    best.map(|(_, v)| v)
}
