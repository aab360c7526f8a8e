//! Numeric root oracle: Aberth–Ehrlich simultaneous iteration.
//!
//! Double-precision only and used as an oracle (Bethe-equation residuals,
//! rational-root suggestions); nothing numeric ever feeds back into exact
//! data without an exact re-verification.

use super::poly::{Poly, Rat};
use crate::error::{Error, Result};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

const MAX_ITERATIONS: usize = 2000;

/// All deg(p) roots of a nonzero rational polynomial, to the requested
/// tolerance. Each returned root z satisfies
/// |p̂(z)|/(1+|z|)^deg ≤ tol, where p̂ is p scaled so its largest
/// coefficient has absolute value 1. Exact zero roots are split off
/// before iterating.
pub fn roots_numeric(p: &Poly, tol: &Rat) -> Result<Vec<Complex64>> {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let tol = tol.to_f64().unwrap_or(1e-12).max(1e-300);
    let deg = p.deg() as usize;
    if deg == 0 {
        return Ok(Vec::new());
    }

    // Exact roots at the origin.
    let val = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut roots = vec![Complex64::zero(); val];
    if val == deg {
        return Ok(roots);
    }
    let reduced = Poly::from_coeffs(p.coeffs()[val..].to_vec());

    // Scale so coefficients convert to f64 safely.
    let max_abs = reduced
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("nonzero");
    let scaled = reduced.scale(&(Rat::from_integer(1.into()) / max_abs));
    let coeffs: Vec<f64> = scaled
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(0.0))
        .collect();
    let d = coeffs.len() - 1;

    let eval = |cs: &[f64], z: Complex64| -> Complex64 {
        let mut acc = Complex64::zero();
        for &c in cs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect();

    // Initial guesses on a circle just outside the Cauchy bound.
    let lead = coeffs[d];
    let radius = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0_f64, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.41;
            Complex64::from_polar(radius * 0.8 + 0.1, angle)
        })
        .collect();

    let residual_ok = |z: &[Complex64]| {
        z.iter().all(|&zi| {
            let r = eval(&coeffs, zi).norm() / (1.0 + zi.norm()).powi(d as i32);
            r <= tol
        })
    };

    let mut converged = residual_ok(&z);
    let mut it = 0;
    while !converged && it < MAX_ITERATIONS {
        it += 1;
        let mut moved = 0.0_f64;
        for i in 0..d {
            let pz = eval(&coeffs, z[i]);
            if pz.norm() == 0.0 {
                continue;
            }
            let dpz = eval(&deriv, z[i]);
            let newton = if dpz.norm() > 1e-300 {
                pz / dpz
            } else {
                Complex64::new(1e-6, 1e-6)
            };
            let mut s = Complex64::zero();
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 1e-300 {
                        s += diff.inv();
                    }
                }
            }
            let denom = 1.0 - newton * s;
            let w = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        converged = residual_ok(&z);
        if !converged && moved < 1e-16 {
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence);
    }
    roots.extend(z);
    Ok(roots)
}

/// Continued-fraction rationalization of a float with bounded
/// denominator; used to turn numeric root suggestions into exact
/// candidates.
pub fn rational_from_f64(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if q1 as u64 > max_den {
            return None;
        }
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() < 1e-9 * (1.0 + x.abs()) {
            return Some(Rat::new((p1 as i64).into(), (q1 as i64).into()));
        }
        if frac.abs() < f64::EPSILON {
            break;
        }
        let r = 1.0 / frac;
        let a = r.floor();
        frac = r - a;
        let p2 = a as i128 * p1 + p0;
        let q2 = a as i128 * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if p1.abs() > i64::MAX as i128 / 4 || q1 > i64::MAX as i128 / 4 {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::{rat, ratio};

    fn tol() -> Rat {
        ratio(1, 1_000_000_000)
    }

    #[test]
    fn test_quadratic_pm_one() {
        let p = Poly::from_i64s(&[-1, 0, 1]);
        let mut rs = roots_numeric(&p, &tol()).unwrap();
        rs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((rs[0].re + 1.0).abs() < 1e-7 && rs[0].im.abs() < 1e-7);
        assert!((rs[1].re - 1.0).abs() < 1e-7 && rs[1].im.abs() < 1e-7);
    }

    #[test]
    fn test_triple_zero_root() {
        let p = Poly::from_i64s(&[0, 0, 0, 1]);
        let rs = roots_numeric(&p, &tol()).unwrap();
        assert_eq!(rs.len(), 3);
        assert!(rs.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn test_sqrt_two_against_bisection() {
        let p = Poly::from_i64s(&[-2, 0, 1]);
        let rs = roots_numeric(&p, &tol()).unwrap();
        // integer bisection oracle for sqrt(2) to 8 digits
        let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mid * mid < 2.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let sqrt2 = 0.5 * (lo + hi);
        let pos = rs.iter().find(|z| z.re > 0.0).unwrap();
        assert!((pos.re - sqrt2).abs() < 1e-8);
    }

    #[test]
    fn test_root_sum_matches_trace() {
        // sum of roots = -c_{d-1}/c_d within 10 tol
        let p = Poly::from_i64s(&[3, -7, 2, 5]);
        let rs = roots_numeric(&p, &tol()).unwrap();
        let sum: Complex64 = rs.iter().sum();
        let expected = -(ratio(2, 5).to_f64().unwrap());
        assert!((sum.re - expected).abs() < 1e-8);
        assert!(sum.im.abs() < 1e-8);
        let _ = rat(0);
    }

    #[test]
    fn test_rational_from_f64() {
        assert_eq!(rational_from_f64(0.5, 100).unwrap(), ratio(1, 2));
        assert_eq!(rational_from_f64(-2.0, 100).unwrap(), rat(-2));
        assert_eq!(rational_from_f64(1.0 / 3.0, 100).unwrap(), ratio(1, 3));
    }
}
