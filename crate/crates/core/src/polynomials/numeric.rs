//! Floating-point roots, used only for numeric cross-checks.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::IntPolynomial;
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 2000;

/// All complex roots by Aberth-Ehrlich iteration.
pub fn numeric_roots(p: &IntPolynomial) -> Result<Vec<Complex64>> {
    match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(_) => {}
    }
    // zero roots are split off exactly; the relative residual cannot certify them
    let zeros = p.coefficients().iter().take_while(|c| c.is_zero()).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let rest = &p.coefficients()[zeros..];
    if rest.len() > 1 {
        roots.extend(aberth(rest)?);
    }
    Ok(roots)
}

fn aberth(c: &[BigInt]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n].to_f64().unwrap_or(f64::MAX);
    let coeffs: Vec<f64> = c
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::MAX) / lead)
        .collect();

    // Cauchy bound on root moduli.
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, angle)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut biggest_step: f64 = 0.0;
        for k in 0..n {
            let (value, slope) = horner(&coeffs, z[k]);
            if value == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = value / slope;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                biggest_step = biggest_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if biggest_step < 1e-15 {
            break;
        }
    }

    if z.iter().all(|&r| backward_error(&coeffs, r) < 1e-9) {
        Ok(z)
    } else {
        Err(Error::NoConvergence(MAX_ITERATIONS))
    }
}

fn horner(coeffs: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut slope = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        slope = slope * x + value;
        value = value * x + c;
    }
    (value, slope)
}

/// `|p(x)| / sum |a_i| |x|^i`
fn backward_error(coeffs: &[f64], x: Complex64) -> f64 {
    let (value, _) = horner(coeffs, x);
    let m = x.norm();
    let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * m + c.abs());
    value.norm() / scale.max(f64::MIN_POSITIVE)
}
