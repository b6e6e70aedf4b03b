//! Numeric complex roots of integer polynomials.
//!
//! Only used to guide weight separation and the advisory Riemann-hypothesis
//! check; every reported polynomial is re-verified exactly.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::poly::{IntPoly, QPoly};

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a polynomial with nonzero leading coefficient
/// (Aberth-Ehrlich iteration followed by Newton polishing).
pub fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![Complex64::new(-monic[0], 0.0)];
    }
    // Start on a circle sized by the geometric mean of the root moduli.
    let radius = monic[0].abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut largest_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            largest_step = largest_step.max(step.norm() / z[i].norm().max(1e-300));
        }
        if largest_step < 1e-16 {
            break;
        }
    }
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *root);
            if dp.norm() == 0.0 {
                break;
            }
            *root -= p / dp;
        }
    }
    z
}

fn q_to_f64(p: &QPoly) -> Vec<f64> {
    p.coeffs()
        .iter()
        .map(|c: &BigRational| c.to_f64().unwrap_or(f64::NAN))
        .collect()
}

/// Roots with multiplicities, computed on the squarefree factors so that
/// repeated roots stay well conditioned.
pub fn roots_with_multiplicity(p: &IntPoly) -> Vec<(Complex64, usize)> {
    QPoly::from_int(p)
        .squarefree_decomposition()
        .into_iter()
        .flat_map(|(factor, mult)| {
            complex_roots(&q_to_f64(&factor))
                .into_iter()
                .map(move |r| (r, mult))
        })
        .collect()
}
