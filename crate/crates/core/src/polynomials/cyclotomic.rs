use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::IntPolynomial;
use crate::error::{Error, Result};

/// Outcome of dividing a monic polynomial by every cyclotomic polynomial
/// that could possibly divide it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicVerdict {
    pub is_product_of_cyclotomics: bool,
    /// `m -> multiplicity of Phi_m`
    pub indices: BTreeMap<u64, usize>,
    /// Non-cyclotomic cofactor; 1 when the verdict is true.
    pub residual: IntPolynomial,
}

impl CyclotomicVerdict {
    /// Least common multiple of the indices; `None` unless the verdict is true.
    pub fn period(&self) -> Option<u64> {
        if !self.is_product_of_cyclotomics {
            return None;
        }
        Some(
            self.indices
                .keys()
                .fold(1u64, |l, &m| num_integer::lcm(l, m)),
        )
    }

    pub fn reconstruct(&self) -> IntPolynomial {
        self.indices
            .iter()
            .fold(self.residual.clone(), |acc, (&m, &k)| {
                &acc * &cyclotomic(m).pow(k as u32)
            })
    }
}

pub fn euler_totient(m: u64) -> u64 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The `m`-th cyclotomic polynomial, by dividing `x^m - 1` by `Phi_d` for every
/// proper divisor `d`.
///
/// # Panics
/// If `m == 0`.
pub fn cyclotomic(m: u64) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic index must be positive");
    let divs = divisors(m);
    let mut table: BTreeMap<u64, IntPolynomial> = BTreeMap::new();
    for &d in &divs {
        let mut poly = &IntPolynomial::monomial(BigInt::one(), d as usize) - &IntPolynomial::one();
        for (&e, phi_e) in &table {
            if d % e == 0 {
                poly = poly.exact_div(phi_e).expect("Phi_e divides x^d - 1");
            }
        }
        table.insert(d, poly);
    }
    table.remove(&m).expect("m divides itself")
}

/// Greedy cyclotomic extraction over every `m` with `phi(m) <= deg p`.
///
/// Candidates are bounded by `m <= 2 deg^2`, which follows from
/// `phi(m) >= sqrt(m / 2)`.
pub fn cyclotomic_factorization(p: &IntPolynomial) -> Result<CyclotomicVerdict> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let deg = p.degree().unwrap_or(0) as u64;
    let mut residual = p.clone();
    let mut indices = BTreeMap::new();
    let bound = (2 * deg * deg).max(2);
    for m in 1..=bound {
        let remaining = residual.degree().unwrap_or(0) as u64;
        if remaining == 0 {
            break;
        }
        if euler_totient(m) > remaining {
            continue;
        }
        let (k, rest) = residual.multiplicity_of(&cyclotomic(m));
        if k > 0 {
            indices.insert(m, k);
            residual = rest;
        }
    }
    Ok(CyclotomicVerdict {
        is_product_of_cyclotomics: residual.is_one(),
        indices,
        residual,
    })
}

/// `(T - 1)^2 prod_i (T^{p_i} - 1) / (T - 1)`
pub fn canonical_coxeter_charpoly(weights: &[i64]) -> Result<IntPolynomial> {
    if weights.is_empty() {
        return Err(Error::EmptyWeights);
    }
    let mut acc = IntPolynomial::linear(1).pow(2);
    for &p in weights {
        if p < 2 {
            return Err(Error::InvalidWeight(p));
        }
        let geometric = IntPolynomial::new(vec![BigInt::one(); p as usize]);
        acc = &acc * &geometric;
    }
    Ok(acc)
}
