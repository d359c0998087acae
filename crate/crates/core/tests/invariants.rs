//! Randomized invariants across the exact linear algebra, polynomial, form
//! and quiver layers.

use coxform::exactmat::{
    inverse_exact, inverse_unitriangular, kronecker, matrix_power, IntMatrix, RatMatrix,
};
use coxform::fixtures::{self, FixtureSet};
use coxform::forms::{
    analyze, classify_form, coxeter_matrix, form_value, symmetrize, Classification,
};
use coxform::polynomials::{
    charpoly, cyclotomic, cyclotomic_factorization, numeric_roots, real_roots_with_multiplicity,
    spectrum_in_circle_or_real, sturm_real_roots, unit_circle_roots, IntPolynomial, RealBound,
};
use coxform::posets::euler_form_poset;
use coxform::quivers::{euler_form_quiver, Quiver};
use coxform::reflections::{is_generalized_cartan, ReflectionSystem};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn square(
    n: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = IntMatrix> {
    n.prop_flat_map(move |n| {
        prop::collection::vec(lo..=hi, n * n)
            .prop_map(move |v| IntMatrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j])))
    })
}

fn unitriangular(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * n).prop_map(move |v| {
            IntMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => BigInt::one(),
                std::cmp::Ordering::Less => BigInt::from(v[i * n + j]),
                std::cmp::Ordering::Greater => BigInt::zero(),
            })
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn eval(p: &IntPolynomial, z: Complex64) -> (Complex64, f64) {
    // value and the sum of |c_k| |z|^k, for a relative residual
    let (mut v, mut scale) = (Complex64::new(0.0, 0.0), 0.0);
    for c in p.coefficients().iter().rev() {
        let c = c.to_f64().unwrap();
        v = v * z + c;
        scale = scale * z.norm() + c.abs();
    }
    (v, scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_inverse(a in square(1..=5, -4, 4)) {
        prop_assume!(!a.determinant().unwrap().is_zero());
        let inv = inverse_exact(&a).unwrap();
        prop_assert_eq!(&a.to_rational() * &inv, RatMatrix::identity(a.rows()));
    }

    #[test]
    fn unitriangular_inverse_agrees(c in unitriangular(8, 5)) {
        let fast = inverse_unitriangular(&c).unwrap();
        prop_assert_eq!(fast.to_rational(), inverse_exact(&c).unwrap());
        prop_assert!((&c * &fast).is_identity());
    }

    #[test]
    fn kronecker_mixed_product(
        a in square(2..=3, -3, 3),
        b in square(2..=3, -3, 3),
        seed in any::<u64>(),
    ) {
        // c has a's shape and d has b's, from the same seed
        let f = |n: usize, k: u64| IntMatrix::from_fn(n, n, |i, j| BigInt::from((seed >> ((i * n + j + k as usize) % 60)) as i64 % 7 - 3));
        let (c, d) = (f(a.rows(), 1), f(b.rows(), 5));
        prop_assert_eq!(&kronecker(&a, &b) * &kronecker(&c, &d), kronecker(&(&a * &c), &(&b * &d)));
    }

    #[test]
    fn power_is_additive(a in square(1..=4, -2, 2), i in 0u64..6, j in 0u64..6) {
        prop_assert_eq!(matrix_power(&a, i + j).unwrap(), &matrix_power(&a, i).unwrap() * &matrix_power(&a, j).unwrap());
    }

    #[test]
    fn charpoly_is_a_similarity_invariant(
        (a, p) in square(1..=8, -4, 4).prop_flat_map(|a| { let n = a.rows(); (Just(a), permutation(n)) })
    ) {
        prop_assert_eq!(charpoly(&a.permute(&p)).unwrap(), charpoly(&a).unwrap());
    }

    #[test]
    fn kronecker_roots_are_products(a in square(2..=3, -3, 3), b in square(2..=3, -3, 3)) {
        let chi = charpoly(&kronecker(&a, &b)).unwrap();
        let ra = numeric_roots(&charpoly(&a).unwrap()).unwrap();
        let rb = numeric_roots(&charpoly(&b).unwrap()).unwrap();
        for l in &ra {
            for m in &rb {
                let (v, scale) = eval(&chi, l * m);
                prop_assert!(v.norm() <= 1e-6 * scale.max(1.0), "residual {} at {}", v.norm(), l * m);
            }
        }
    }

    #[test]
    fn circle_and_real_counts(coeffs in prop::collection::vec(-4i64..=4, 2..=9)) {
        let p = IntPolynomial::from_i64(&coeffs);
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let deg = p.degree().unwrap();
        let at_units: usize = [1, -1].iter().map(|&r| p.multiplicity_of(&IntPolynomial::linear(r)).0).sum();
        let covered = unit_circle_roots(&p) + real_roots_with_multiplicity(&p) - at_units;
        prop_assert!(covered <= deg);
        prop_assert_eq!(covered == deg, spectrum_in_circle_or_real(&p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sturm_matches_numeric_roots(
        real in prop::collection::btree_set(-5i64..=5, 0..=4),
        quads in prop::collection::vec((-3i64..=3, 1i64..=6), 0..=2),
    ) {
        let mut p = IntPolynomial::one();
        for &r in &real {
            p = &p * &IntPolynomial::linear(r);
        }
        for &(b, c) in &quads {
            // x^2 + bx + c with negative discriminant
            let c = c + b * b / 4 + 1;
            p = &p * &IntPolynomial::from_i64(&[c, b, 1]);
        }
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let numeric = numeric_roots(&p).unwrap().iter().filter(|z| z.im.abs() < 1e-9).count();
        let sturm = sturm_real_roots(&p, &RealBound::NegInfinity, &RealBound::PosInfinity);
        prop_assert_eq!(sturm, real.len());
        prop_assert_eq!(numeric, sturm);
    }

    #[test]
    fn cyclotomic_reconstruction(
        indices in prop::collection::vec(1u64..=30, 0..=4),
        b in -6i64..=6,
        c in -6i64..=6,
    ) {
        let disc = b * b - 4 * c;
        prop_assume!(disc < 0 || (disc as f64).sqrt().fract() != 0.0);
        let mut p = IntPolynomial::from_i64(&[c, b, 1]);
        let mut degree = 0;
        for &m in &indices {
            let phi = cyclotomic(m);
            degree += phi.degree().unwrap();
            if degree > 12 {
                break;
            }
            p = &p * &phi;
        }
        let verdict = cyclotomic_factorization(&p).unwrap();
        prop_assert_eq!(verdict.reconstruct(), p.clone());
        let quadratic_is_cyclotomic = [3u64, 4, 6].iter().any(|&m| cyclotomic(m) == IntPolynomial::from_i64(&[c, b, 1]));
        prop_assert_eq!(verdict.is_product_of_cyclotomics, quadratic_is_cyclotomic);
    }

    #[test]
    fn coxeter_defining_identity(c in unitriangular(8, 3), seed in any::<u64>()) {
        let n = c.rows();
        let phi = coxeter_matrix(&c).unwrap();
        let x: Vec<BigInt> = (0..n).map(|i| BigInt::from((seed >> (i * 3)) as i64 % 9 - 4)).collect();
        let y: Vec<BigInt> = (0..n).map(|i| BigInt::from((seed >> (i * 5 + 1)) as i64 % 7 - 3)).collect();
        let phi_x = phi.mul_vec(&x).unwrap();
        prop_assert_eq!(form_value(&c, &x, &y).unwrap(), -form_value(&c, &y, &phi_x).unwrap());
    }

    #[test]
    fn radical_is_the_fixed_space(c in unitriangular(6, 2), seed in any::<u64>()) {
        let n = c.rows();
        let s = symmetrize(&c).unwrap();
        let a = analyze(&c).unwrap();
        let fixed = |v: &[BigInt]| a.coxeter.mul_vec(v).unwrap() == v;
        let killed = |v: &[BigInt]| s.mul_vec(v).unwrap().iter().all(Zero::is_zero);
        for v in &a.radical_basis {
            prop_assert!(killed(v) && fixed(v));
        }
        for k in 0..20u64 {
            let v: Vec<BigInt> = (0..n)
                .map(|i| BigInt::from((seed.rotate_left((k * 7 + i as u64) as u32) % 5) as i64 - 2))
                .collect();
            prop_assert_eq!(killed(&v), fixed(&v));
        }
    }

    #[test]
    fn classification_agrees_with_brute_force(c in square(1..=5, -3, 3)) {
        let n = c.rows();
        let class = classify_form(&c).unwrap();
        let mut min: Option<BigInt> = None;
        let mut v = vec![-3i64; n];
        loop {
            if v.iter().any(|&x| x != 0) {
                let vb = ints(&v);
                let q = form_value(&c, &vb, &vb).unwrap();
                if min.as_ref().is_none_or(|m| &q < m) {
                    min = Some(q);
                }
            }
            let Some(k) = (0..n).rev().find(|&k| v[k] < 3) else { break };
            v[k] += 1;
            for x in &mut v[k + 1..] {
                *x = -3;
            }
        }
        let min = min.unwrap();
        match class.classification {
            Classification::Positive => prop_assert!(min.is_positive()),
            Classification::NonNegativeDegenerate => prop_assert!(!min.is_negative() && min.is_zero()),
            Classification::Indefinite => prop_assert!(class.witness_negative.is_some()),
        }
        if min.is_negative() {
            prop_assert_eq!(class.classification, Classification::Indefinite);
        }
        for w in class.witness_negative.iter().chain(analyze_witness(&c).iter()) {
            let g = w.vector.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            prop_assert!(g.is_one(), "witness {:?} is not primitive", w.vector);
            prop_assert!(w.value.is_negative());
            prop_assert_eq!(form_value(&c, &w.vector, &w.vector).unwrap(), w.value.clone());
        }
    }

    #[test]
    fn quiver_euler_forms((n, arrows, order) in (1usize..=7).prop_flat_map(|n| (
        Just(n),
        prop::collection::vec((0..n, 0..n, 0usize..=2), 0..=12),
        permutation(n),
    ))) {
        // arrows go up in a hidden order, then vertices are relabeled
        let mut list = Vec::new();
        for (i, j, k) in arrows {
            if i < j {
                list.extend(std::iter::repeat_n((order[i], order[j]), k));
            }
        }
        let q = Quiver::new((0..n).map(|i| format!("v{i}")).collect(), &list).unwrap();
        let c = euler_form_quiver(&q).unwrap();
        prop_assert!(c.is_unitriangular());
        let sys = ReflectionSystem::new(symmetrize(&c).unwrap()).unwrap();
        prop_assert!(is_generalized_cartan(&sys).unwrap());
    }
}

fn analyze_witness(c: &IntMatrix) -> Option<coxform::forms::Witness> {
    // `analyze` may only be called on unimodular forms
    let det = c.determinant().ok()?;
    if det.abs() != BigInt::one() {
        return None;
    }
    coxeter_matrix(c).ok()?;
    analyze(c).ok()?.witness_negative
}

#[test]
fn periodic_fixtures_are_weakly_periodic() {
    let set = FixtureSet::embedded();
    for name in fixtures::names().filter(|n| n.ends_with(".poset")) {
        let a = analyze(&euler_form_poset(&set.poset(name).unwrap())).unwrap();
        assert!(!a.periodic || a.weakly_periodic, "{name}");
    }
}
