//! Reflections defined by a matrix with 2 on the diagonal, their products in
//! any order, and the `-A_+^{-1} A_-^t` factorization of those products.
//!
//! Vectors are columns and a written product `r_1 r_2 ... r_n` is the matrix
//! product in that order, so `r_n` acts first. Indices are 0-based here; the
//! command line uses 1-based indices.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::polynomials::{charpoly, numeric_roots, squarefree_part};

/// Numeric tolerance of [`bipartite_spectral_check`].
pub const SPECTRAL_TOLERANCE: f64 = 1e-6;

/// A bijection of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// One-line notation with 1-based images, e.g. `3 1 2`.
    pub fn parse(text: &str) -> Result<Self> {
        let images = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(Error::InvalidPermutation(format!("bad entry `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `P e_i = e_{pi(i)}`
    pub fn matrix(&self) -> IntMatrix {
        let n = self.images.len();
        IntMatrix::from_fn(n, n, |r, c| {
            if self.images[c] == r {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A square integer matrix with every diagonal entry equal to 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionSystem {
    a: IntMatrix,
}

impl ReflectionSystem {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let two = BigInt::from(2);
        if let Some(i) = (0..n).find(|&i| *a.get(i, i) != two) {
            return Err(Error::DiagonalNotTwo {
                index: i,
                value: a.get(i, i).to_string(),
            });
        }
        Ok(ReflectionSystem { a })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn reflection(&self, i: usize) -> Result<IntMatrix> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        Ok(row_reflection(&self.a, i))
    }
}

/// Identity minus the `i`-th row of `a`: `r_i(e_j) = e_j - a_ij e_i`.
pub fn row_reflection(a: &IntMatrix, i: usize) -> IntMatrix {
    let n = a.rows();
    IntMatrix::from_fn(n, n, |r, c| {
        let id = if r == c {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        if r == i {
            id - a.get(i, c)
        } else {
            id
        }
    })
}

pub fn reflection(sys: &ReflectionSystem, i: usize) -> Result<IntMatrix> {
    sys.reflection(i)
}

fn ordered_product(a: &IntMatrix, pi: &Permutation) -> IntMatrix {
    (0..pi.len()).fold(IntMatrix::identity(a.rows()), |acc, k| {
        &acc * &row_reflection(a, pi.apply(k))
    })
}

fn check_len(sys_n: usize, pi: &Permutation) -> Result<()> {
    if pi.len() != sys_n {
        return Err(Error::DimensionMismatch(format!(
            "permutation of {} points for a {sys_n}x{sys_n} matrix",
            pi.len()
        )));
    }
    Ok(())
}

/// `r_{pi(1)} r_{pi(2)} ... r_{pi(n)}`
pub fn product_reflections(sys: &ReflectionSystem, pi: &Permutation) -> Result<IntMatrix> {
    check_len(sys.n(), pi)?;
    Ok(ordered_product(&sys.a, pi))
}

/// `(A_{pi,+}, A_{pi,-})` with the given diagonal for `A_{pi,-}`.
fn split(
    a: &IntMatrix,
    pi: &Permutation,
    minus_diagonal: impl Fn(usize) -> BigInt,
) -> (IntMatrix, IntMatrix) {
    let n = a.rows();
    let pos = pi.inverse();
    let before = |i: usize, j: usize| pos.apply(i) < pos.apply(j);
    let plus = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            BigInt::one()
        } else if before(i, j) {
            a.get(i, j).clone()
        } else {
            BigInt::zero()
        }
    });
    let minus = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            minus_diagonal(i)
        } else if before(i, j) {
            a.get(j, i).clone()
        } else {
            BigInt::zero()
        }
    });
    (plus, minus)
}

/// `(A_{pi,+}, A_{pi,-})`; `A = A_{pi,+} + A_{pi,-}^t`.
pub fn a_plus_minus(sys: &ReflectionSystem, pi: &Permutation) -> Result<(IntMatrix, IntMatrix)> {
    check_len(sys.n(), pi)?;
    Ok(split(&sys.a, pi, |_| BigInt::one()))
}

/// `-A_+^{-1} A_-^t`, required to be integral.
fn factorized(plus: &IntMatrix, minus: &IntMatrix) -> Result<IntMatrix> {
    let inv = plus
        .inverse_exact()
        .map_err(|_| Error::Internal("A_+ is singular".into()))?
        .to_integer()
        .ok_or_else(|| Error::Internal("A_+ is not unimodular".into()))?;
    Ok(-(&inv * &minus.transpose()))
}

/// Both sides of `r_{pi(1)} ... r_{pi(n)} = -A_{pi,+}^{-1} A_{pi,-}^t`.
pub fn factorization_sides(
    sys: &ReflectionSystem,
    pi: &Permutation,
) -> Result<(IntMatrix, IntMatrix)> {
    let product = product_reflections(sys, pi)?;
    let (plus, minus) = a_plus_minus(sys, pi)?;
    Ok((product, factorized(&plus, &minus)?))
}

pub fn factorization_check(sys: &ReflectionSystem, pi: &Permutation) -> Result<bool> {
    let (lhs, rhs) = factorization_sides(sys, pi)?;
    Ok(lhs == rhs)
}

/// The factorization without the diagonal condition: `A_-` gets diagonal
/// `a_ii - 1` and the `r_i` are no longer reflections. Returns the product
/// after checking it against the factorized form.
pub fn generalized_product(a: &IntMatrix, pi: &Permutation) -> Result<IntMatrix> {
    let n = a.require_square()?;
    check_len(n, pi)?;
    let (plus, minus) = split(a, pi, |i| a.get(i, i) - BigInt::one());
    let product = ordered_product(a, pi);
    let rhs = factorized(&plus, &minus)?;
    if product != rhs {
        return Err(Error::Internal(
            "product of r_i differs from -A_+^{-1} A_-^t".into(),
        ));
    }
    Ok(product)
}

/// `(A_{pi,+}, A_{pi,-})` under the arbitrary-diagonal convention.
pub fn a_plus_minus_general(a: &IntMatrix, pi: &Permutation) -> Result<(IntMatrix, IntMatrix)> {
    let n = a.require_square()?;
    check_len(n, pi)?;
    Ok(split(a, pi, |i| a.get(i, i) - BigInt::one()))
}

/// Undirected graph on `0..n` with adjacency sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![BTreeSet::new(); n],
        }
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adjacency[i].insert(j);
        self.adjacency[j].insert(i);
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.adjacency[i]
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|i| self.adjacency[i].range(i + 1..).map(move |&j| (i, j)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// 2-coloring by BFS; each component's smallest vertex goes to the first part.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.n();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].expect("colored");
                for &w in &self.adjacency[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let first = (0..n).filter(|&v| color[v] == Some(false)).collect();
        let second = (0..n).filter(|&v| color[v] == Some(true)).collect();
        Some((first, second))
    }
}

fn check_zero_pattern(a: &IntMatrix) -> Result<()> {
    let n = a.rows();
    for i in 0..n {
        for j in i + 1..n {
            if a.get(i, j).is_zero() != a.get(j, i).is_zero() {
                return Err(Error::AsymmetricZeroPattern(i, j));
            }
        }
    }
    Ok(())
}

/// Edge `i - j` whenever `a_ij != 0`; needs a symmetric zero pattern.
pub fn primitive_graph(sys: &ReflectionSystem) -> Result<Graph> {
    check_zero_pattern(&sys.a)?;
    let n = sys.n();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if !sys.a.get(i, j).is_zero() {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

pub fn is_indecomposable(sys: &ReflectionSystem) -> Result<bool> {
    Ok(primitive_graph(sys)?.is_connected())
}

/// Off-diagonal entries all `<= 0` (on top of the diagonal and zero-pattern conditions).
pub fn is_generalized_cartan(sys: &ReflectionSystem) -> Result<bool> {
    check_zero_pattern(&sys.a)?;
    let n = sys.n();
    Ok((0..n).all(|i| (0..n).all(|j| i == j || *sys.a.get(i, j) <= BigInt::zero())))
}

pub fn is_bipartite(sys: &ReflectionSystem) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    Ok(primitive_graph(sys)?.bipartition())
}

fn product_over(a: &IntMatrix, part: &[usize]) -> IntMatrix {
    part.iter().fold(IntMatrix::identity(a.rows()), |acc, &i| {
        &acc * &row_reflection(a, i)
    })
}

/// `R_1 R_2` where `R_k` is the product of the reflections in part `k`.
pub fn bipartite_coxeter(sys: &ReflectionSystem) -> Result<IntMatrix> {
    let (first, second) = is_bipartite(sys)?.ok_or(Error::NotBipartite)?;
    let r1 = product_over(&sys.a, &first);
    let r2 = product_over(&sys.a, &second);
    // Reflections inside one part commute, so the order within a part is irrelevant.
    let reversed: Vec<usize> = first.iter().rev().copied().collect();
    if product_over(&sys.a, &reversed) != r1 {
        return Err(Error::Internal(
            "reflections within a part do not commute".into(),
        ));
    }
    Ok(&r1 * &r2)
}

fn spectrum(m: &IntMatrix) -> Result<Vec<Complex64>> {
    let p = squarefree_part(&charpoly(m)?)?;
    numeric_roots(&p)
}

fn near_any(points: &[Complex64], z: Complex64) -> bool {
    points.iter().any(|p| (p - z).norm() < SPECTRAL_TOLERANCE)
}

/// Numeric check of `lambda^2 in spec(R_A) <=> lambda + 2 + 1/lambda in spec(A)`
/// in both directions.
pub fn bipartite_spectral_check(sys: &ReflectionSystem) -> Result<bool> {
    let coxeter = bipartite_coxeter(sys)?;
    let spec_r = spectrum(&coxeter)?;
    let spec_a = spectrum(&sys.a)?;
    // lambda = +-sqrt(mu) and its image lambda + 2 + 1/lambda
    let images: Vec<Vec<Complex64>> = spec_r
        .iter()
        .map(|&mu| {
            let lambda = mu.sqrt();
            vec![lambda + 2.0 + lambda.inv(), -lambda + 2.0 - lambda.inv()]
        })
        .collect();
    let forward = images
        .iter()
        .all(|im| im.iter().any(|&z| near_any(&spec_a, z)));
    // Solving for lambda given nu is ill-conditioned near nu = 0 and nu = 4,
    // so the converse is checked through the same forward map.
    let all_images: Vec<Complex64> = images.concat();
    let backward = spec_a.iter().all(|&nu| near_any(&all_images, nu));
    Ok(forward && backward)
}


#[cfg(test)]
mod identities {
    use super::*;
    use crate::forms::coxeter_matrix;
    use proptest::prelude::*;

    /// `(r_1 ... r_s)(e_t)` as a signed sum over increasing index chains.
    fn chain_sum(a: &IntMatrix, s: usize, t: usize) -> Vec<BigInt> {
        let n = a.rows();
        let mut out = vec![BigInt::zero(); n];
        out[t] += 1;
        // walk chains i_1 < ... < i_k <= s backwards from i_k
        fn extend(a: &IntMatrix, first: usize, weight: BigInt, sign: i64, out: &mut [BigInt]) {
            out[first] += &weight * sign;
            for prev in 0..first {
                extend(a, prev, a.get(prev, first) * &weight, -sign, out);
            }
        }
        for last in 0..s {
            extend(a, last, a.get(last, t).clone(), -1, &mut out);
        }
        out
    }

    fn diag_two(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            IntMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    2.into()
                } else {
                    v[i * n + j].into()
                }
            })
        })
    }

    fn system_and_perm() -> impl Strategy<Value = (ReflectionSystem, Permutation)> {
        (1usize..=5).prop_flat_map(|n| {
            (
                diag_two(n).prop_map(|a| ReflectionSystem::new(a).unwrap()),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
                .prop_map(|(s, p)| (s, Permutation::new(p).unwrap()))
        })
    }

    fn symmetric_sign_pattern() -> impl Strategy<Value = ReflectionSystem> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(-2i64..=0, n * n).prop_map(move |v| {
                let a = IntMatrix::from_fn(n, n, |i, j| {
                    if i == j {
                        2.into()
                    } else {
                        let (lo, hi) = (i.min(j), i.max(j));
                        v[lo * n + hi].into()
                    }
                });
                ReflectionSystem::new(a).unwrap()
            })
        })
    }

    #[test]
    fn chain_sum_on_a_fixed_matrix() {
        let a = IntMatrix::from([[2, 3, -1], [0, 2, 4], [-2, 1, 2]]);
        let sys = ReflectionSystem::new(a.clone()).unwrap();
        for s in 1..=3 {
            let prefix = (0..s).fold(IntMatrix::identity(3), |acc, i| {
                &acc * &sys.reflection(i).unwrap()
            });
            for t in 0..3 {
                assert_eq!(prefix.column(t), chain_sum(&a, s, t));
            }
        }
    }

    #[test]
    fn unitriangular_coxeter_is_the_identity_order_product() {
        let c = IntMatrix::from([[1, -1, 0, 2], [0, 1, -1, 0], [0, 0, 1, 3], [0, 0, 0, 1]]);
        let a = &c + &c.transpose();
        let sys = ReflectionSystem::new(a).unwrap();
        let (plus, minus) = a_plus_minus(&sys, &Permutation::identity(4)).unwrap();
        assert_eq!(plus, c);
        assert_eq!(minus, c);
        assert_eq!(
            product_reflections(&sys, &Permutation::identity(4)).unwrap(),
            coxeter_matrix(&c).unwrap()
        );
    }

    proptest! {
        #[test]
        fn reflections_are_involutions_of_determinant_minus_one((sys, _) in system_and_perm()) {
            for i in 0..sys.n() {
                let r = sys.reflection(i).unwrap();
                prop_assert!((&r * &r).is_identity());
                prop_assert_eq!(r.determinant().unwrap(), BigInt::from(-1));
            }
        }

        #[test]
        fn prefix_products_match_chain_sums((sys, _) in system_and_perm()) {
            let n = sys.n();
            let mut prefix = IntMatrix::identity(n);
            for s in 1..=n {
                prefix = &prefix * &sys.reflection(s - 1).unwrap();
                for t in 0..n {
                    prop_assert_eq!(prefix.column(t), chain_sum(sys.matrix(), s, t));
                }
            }
        }

        #[test]
        fn conjugated_reflections((sys, pi) in system_and_perm()) {
            let p = pi.matrix();
            let pt = p.transpose();
            let conj = ReflectionSystem::new(sys.matrix().permute(pi.images())).unwrap();
            prop_assert_eq!(&(&pt * sys.matrix()) * &p, conj.matrix().clone());
            for i in 0..sys.n() {
                let lhs = conj.reflection(i).unwrap();
                let rhs = &(&pt * &sys.reflection(pi.apply(i)).unwrap()) * &p;
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn split_identities((sys, pi) in system_and_perm()) {
            let (plus, minus) = a_plus_minus(&sys, &pi).unwrap();
            prop_assert_eq!(&plus + &minus.transpose(), sys.matrix().clone());
            let p = pi.matrix();
            let pt = p.transpose();
            let conj = ReflectionSystem::new(sys.matrix().permute(pi.images())).unwrap();
            let (cp, cm) = a_plus_minus(&conj, &Permutation::identity(sys.n())).unwrap();
            prop_assert_eq!(&(&p * &cp) * &pt, plus);
            prop_assert_eq!(&(&p * &cm) * &pt, minus);
        }

        #[test]
        fn product_factorizes((sys, pi) in system_and_perm()) {
            let (lhs, rhs) = factorization_sides(&sys, &pi).unwrap();
            let sign = if sys.n() % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(lhs.determinant().unwrap(), BigInt::from(sign));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn generalized_factorization_holds(
            (n, v, perm) in (1usize..=4).prop_flat_map(|n| (
                Just(n),
                proptest::collection::vec(-3i64..=3, n * n),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            ))
        ) {
            let a = IntMatrix::from_fn(n, n, |i, j| v[i * n + j].into());
            let pi = Permutation::new(perm).unwrap();
            prop_assert!(generalized_product(&a, &pi).is_ok());
        }

        #[test]
        fn symmetric_bipartite_spectra(sys in symmetric_sign_pattern()) {
            if is_bipartite(&sys).unwrap().is_some() {
                prop_assert!(bipartite_spectral_check(&sys).unwrap());
                let r = bipartite_coxeter(&sys).unwrap();
                prop_assert!(crate::polynomials::spectrum_in_circle_or_real(&charpoly(&r).unwrap()));
            }
        }
    }
}
