//! Simultaneous root finding (Aberth–Ehrlich) in two stages: a double
//! precision warm start from Newton-polygon circles, then iteration at the
//! working precision and a final Newton polish.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::mpc::{horner_real, horner_with_derivative, log2_abs, pow2, Cx, Real};
use crate::polyengine::uni::squarefree_part;
use crate::polyengine::UniPoly;

/// Smallest precision that leaves room above the 2^-64 dedup threshold.
pub const MIN_PRECISION: usize = 96;
const WARM_ITERATIONS: usize = 200;
const MAX_ITERATIONS: usize = 120;
const ANGLE_OFFSET: f64 = 0.7;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("precision {0} bits is below the minimum {MIN_PRECISION}")]
    PrecisionTooLow(usize),
    #[error("no convergence after {iterations} iterations (degree {degree}, largest correction 2^{max_correction_log2:.1})")]
    NoConvergence { degree: usize, iterations: usize, max_correction_log2: f64 },
    #[error("leading or trailing coefficient vanishes")]
    DegenerateCoefficients,
}

/// All roots of the squarefree part of `p`, each to about `precision_bits`
/// relative bits, in canonical order.
pub fn complex_roots(p: &UniPoly, precision_bits: usize) -> Result<Vec<Cx>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let s = squarefree_part(p);
    let low = s.low_degree().unwrap_or(0);
    let core = s.shift_down(low);
    let work = precision_bits + 32;
    let coeffs: Vec<Cx> = core.coeffs().iter().map(|c| Cx::from_int(c, work)).collect();
    let mut roots = aberth(&coeffs, precision_bits)?;
    if low > 0 {
        roots.push(Cx::zero(work));
        roots.sort_by(|a, b| a.canonical_cmp(b));
    }
    Ok(roots)
}

/// Roots of a polynomial with complex coefficients (ascending order) whose
/// constant and leading coefficients are nonzero. Roots are assumed simple.
pub fn aberth(coeffs: &[Cx], precision_bits: usize) -> Result<Vec<Cx>, RootError> {
    if precision_bits < MIN_PRECISION {
        return Err(RootError::PrecisionTooLow(precision_bits));
    }
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    if coeffs[0].is_zero() || coeffs[n].is_zero() {
        return Err(RootError::DegenerateCoefficients);
    }
    let work = precision_bits + 32;
    let coeffs: Vec<Cx> = coeffs.iter().map(|c| c.with_precision(work)).collect();
    if n == 1 {
        return Ok(vec![&(-&coeffs[0]) / &coeffs[1]]);
    }
    let logs: Vec<f64> = coeffs.iter().map(|c| c.log2_abs()).collect();
    let start = initial_circles(&logs);
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max).floor() as i64;
    let scale = pow2(-top, 64);
    let scaled: Vec<Complex64> = coeffs.iter().map(|c| c.scale(&scale).to_c64()).collect();
    let warm = warm_start(&scaled, start);
    let mut z: Vec<Cx> = warm.iter().map(|w| Cx::from_c64(*w, work)).collect();
    refine(&coeffs, &mut z, precision_bits, work)?;
    for zk in z.iter_mut() {
        let (p, dp) = horner_with_derivative(&coeffs, zk, work);
        if !dp.is_zero() {
            *zk = &*zk - &(&p / &dp);
        }
    }
    let mut z: Vec<Cx> = z.into_iter().map(|c| c.with_precision(precision_bits)).collect();
    z.sort_by(|a, b| a.canonical_cmp(b));
    Ok(z)
}

/// Circles of the upper Newton polygon of (k, log2|a_k|), with the roots on
/// each circle spread evenly at a fixed angular offset.
fn initial_circles(logs: &[f64]) -> Vec<Complex64> {
    let n = logs.len() - 1;
    let pts: Vec<(usize, f64)> = logs.iter().cloned().enumerate().filter(|(_, l)| l.is_finite()).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    for (e, w) in hull.windows(2).enumerate() {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let cnt = j - i;
        let r = (2f64).powf(((li - lj) / cnt as f64).clamp(-1000.0, 1000.0));
        for t in 0..cnt {
            let theta = 2.0 * PI * t as f64 / cnt as f64 + 2.0 * PI * e as f64 / n as f64 + ANGLE_OFFSET;
            out.push(Complex64::from_polar(r, theta));
        }
    }
    out
}

/// p(z)/p'(z) in double precision, evaluating the reversed polynomial
/// outside the unit disc so that powers of z stay bounded.
fn newton_ratio(a: &[Complex64], z: Complex64) -> Complex64 {
    let n = a.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for c in a.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        p / dp
    } else {
        let w = z.inv();
        let (mut q, mut dq) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for c in a.iter() {
            dq = dq * w + q;
            q = q * w + c;
        }
        z * q / (q * n as f64 - w * dq)
    }
}

fn warm_start(a: &[Complex64], mut z: Vec<Complex64>) -> Vec<Complex64> {
    let n = z.len();
    for _ in 0..WARM_ITERATIONS {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let ratio = newton_ratio(a, z[k]);
            if !ratio.is_finite() {
                continue;
            }
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let delta = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if delta.is_finite() {
                z[k] -= delta;
                worst = worst.max(delta.norm() / z[k].norm().max(f64::MIN_POSITIVE));
            }
        }
        if worst < 1e-14 {
            break;
        }
    }
    z
}

fn refine(a: &[Cx], z: &mut [Cx], precision_bits: usize, work: usize) -> Result<(), RootError> {
    let n = z.len();
    let tol = -((precision_bits - 8) as f64);
    let noise = -(work as f64) + ((4 * a.len()) as f64).log2();
    let abs_coeffs: Vec<Real> = a.iter().map(|c| c.abs()).collect();
    let one = Cx::one(work);
    let mut done = vec![false; n];
    let mut shadow: Vec<Complex64> = z.iter().map(|w| w.to_c64()).collect();
    let mut worst = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        worst = f64::NEG_INFINITY;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner_with_derivative(a, &z[k], work);
            if p.is_zero() {
                done[k] = true;
                continue;
            }
            let ratio = &p / &dp;
            // The Aberth sum only perturbs the Newton step by a factor
            // 1 + O(ratio), so double precision suffices away from clusters.
            let mut s = Cx::zero(work);
            let mut s64 = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j == k {
                    continue;
                }
                let diff = shadow[k] - shadow[j];
                if diff.is_finite() && diff.norm() > 1e-10 * shadow[k].norm() {
                    s64 += diff.inv();
                } else {
                    s = &s + &(&one / &(&z[k] - &z[j]));
                }
            }
            let s = &s + &Cx::from_c64(s64, work);
            let delta = &ratio / &(&one - &(&ratio * &s));
            let rel = delta.log2_abs() - z[k].log2_abs();
            z[k] = &z[k] - &delta;
            shadow[k] = z[k].to_c64();
            if rel < tol {
                done[k] = true;
            } else {
                // stop once |p(z)| is at the rounding level of the evaluation
                let scale = horner_real(&abs_coeffs, &z[k].abs(), work);
                if p.log2_abs() < log2_abs(&scale) + noise {
                    done[k] = true;
                } else {
                    worst = worst.max(rel);
                }
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(());
        }
    }
    Err(RootError::NoConvergence { degree: n, iterations: MAX_ITERATIONS, max_correction_log2: worst })
}
