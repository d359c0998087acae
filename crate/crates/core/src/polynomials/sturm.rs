//! Exact root counting on the real line and on the unit circle.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{gcd, squarefree_decomposition, squarefree_part, IntPolynomial};

/// End point of a counting interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealBound {
    NegInfinity,
    Value(BigRational),
    PosInfinity,
}

impl RealBound {
    pub fn int(v: i64) -> Self {
        RealBound::Value(BigRational::from_integer(v.into()))
    }

    fn cmp_bound(&self, other: &Self) -> Ordering {
        use RealBound::*;
        match (self, other) {
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (_, NegInfinity) | (PosInfinity, _) => Ordering::Greater,
            (Value(a), Value(b)) => a.cmp(b),
        }
    }
}

fn sign_at(p: &IntPolynomial, at: &RealBound) -> i8 {
    let lead = p.leading();
    let s = match at {
        RealBound::PosInfinity => lead.signum(),
        RealBound::NegInfinity => {
            if p.degree().unwrap_or(0).is_multiple_of(2) {
                lead.signum()
            } else {
                -lead.signum()
            }
        }
        RealBound::Value(x) => {
            let v = p.eval_rational(x);
            if v.is_zero() {
                return 0;
            } else if v.is_positive() {
                return 1;
            } else {
                return -1;
            }
        }
    };
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_chain(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let r = chain[n - 2].pseudo_remainder_signed(&chain[n - 1]);
        chain.push(-&r);
    }
    chain
}

fn sign_variations(chain: &[IntPolynomial], at: &RealBound) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|q| sign_at(q, at))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_real_roots(p: &IntPolynomial, lo: &RealBound, hi: &RealBound) -> usize {
    if p.degree().unwrap_or(0) == 0 || lo.cmp_bound(hi) != Ordering::Less {
        return 0;
    }
    let s = squarefree_part(p).expect("nonzero");
    let chain = sturm_chain(&s);
    sign_variations(&chain, lo).saturating_sub(sign_variations(&chain, hi))
}

/// Real roots counted with multiplicity.
pub fn real_roots_with_multiplicity(p: &IntPolynomial) -> usize {
    decomposition(p)
        .iter()
        .map(|(s, k)| k * sturm_real_roots(s, &RealBound::NegInfinity, &RealBound::PosInfinity))
        .sum()
}

fn decomposition(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    if p.is_zero() {
        return Vec::new();
    }
    squarefree_decomposition(p).expect("nonzero")
}

/// Distinct roots of a squarefree polynomial on the unit circle, plus how many
/// of them are `1` or `-1`.
fn circle_roots_squarefree(s: &IntPolynomial) -> (usize, usize) {
    let g = gcd(s, &s.reciprocal());
    let mut h = g;
    let mut real_units = 0;
    for root in [1, -1] {
        let (k, rest) = h.multiplicity_of(&IntPolynomial::linear(root));
        real_units += k;
        h = rest;
    }
    let deg = h.degree().unwrap_or(0);
    if deg == 0 {
        return (real_units, real_units);
    }
    let h = h.primitive();
    debug_assert_eq!(h, h.reciprocal().primitive());
    let q = reciprocal_to_trace_polynomial(&h);
    let inside = sturm_real_roots(&q, &RealBound::int(-2), &RealBound::int(2));
    (real_units + 2 * inside, real_units)
}

/// For a palindromic `h` of degree `2d`, the `q` with `h(x) = x^d q(x + 1/x)`.
fn reciprocal_to_trace_polynomial(h: &IntPolynomial) -> IntPolynomial {
    let d = h.degree().unwrap_or(0) / 2;
    // x^k + x^{-k} = D_k(t): D_0 = 2, D_1 = t, D_k = t D_{k-1} - D_{k-2}
    let t = IntPolynomial::from_i64(&[0, 1]);
    let mut prev = IntPolynomial::from_i64(&[2]);
    let mut cur = t.clone();
    let mut q = IntPolynomial::constant(h.coefficient(d));
    for k in 1..=d {
        if k > 1 {
            let next = &(&t * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        q = &q + &cur.scale(&h.coefficient(d + k));
    }
    q
}

/// Roots on the complex unit circle, counted with multiplicity.
pub fn unit_circle_roots(p: &IntPolynomial) -> usize {
    decomposition(p)
        .iter()
        .map(|(s, k)| k * circle_roots_squarefree(s).0)
        .sum()
}

/// True iff every complex root of `p` is real or has modulus one.
pub fn spectrum_in_circle_or_real(p: &IntPolynomial) -> bool {
    let Some(deg) = p.degree() else {
        return false;
    };
    let covered: usize = decomposition(p)
        .iter()
        .map(|(s, k)| {
            let real = sturm_real_roots(s, &RealBound::NegInfinity, &RealBound::PosInfinity);
            let (circle, units) = circle_roots_squarefree(s);
            k * (real + circle - units)
        })
        .sum();
    covered == deg
}
