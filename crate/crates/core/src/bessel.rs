//! Bessel functions of the first kind J_ν and modified I_ν for complex
//! order and argument, plus positive real zeros j_{ν,n}.
//!
//! The ascending series (with [`reciprocal_gamma`] absorbing the order
//! poles) covers |z| ≤ 25; beyond that a Hankel-type asymptotic expansion
//! is used, restricted to real order and argument — the identity corpus
//! never needs complex large-argument values, and silently degrading
//! accuracy there would be worse than refusing.

use crate::cx::{cx, is_nonpositive_integer, powc, re, Cx};
use crate::error::{Error, Result};
use crate::kernel::{log_gamma, reciprocal_gamma};
use std::f64::consts::PI;

/// Ascending-series / asymptotic switchover: the series loses at most two
/// digits to cancellation at this magnitude in double precision.
pub const SERIES_CUTOFF: f64 = 25.0;

/// Earlier switchover to the Hankel expansion for real order and argument,
/// where the expansion is available and more accurate than the series.
const HANKEL_CUTOFF: f64 = 16.0;

/// Evaluation method actually used for a Bessel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselMethod {
    AscendingSeries,
    AsymptoticHankel,
}

/// A Bessel evaluation annotated with the method that produced it.
#[derive(Debug, Clone, Copy)]
pub struct BesselEval {
    pub order: Cx,
    pub argument: Cx,
    pub value: Cx,
    pub method: BesselMethod,
}

fn zero_argument(nu: Cx) -> Result<Cx> {
    if nu.re == 0.0 && nu.im == 0.0 {
        Ok(re(1.0))
    } else if nu.re > 0.0 {
        Ok(re(0.0))
    } else {
        Err(Error::ZeroArgumentNegativeOrder(nu))
    }
}

/// Ascending series Σ_j σ^j (z/2)^{2j+ν} / (j! Γ(j+ν+1)), σ = −1 for J,
/// σ = +1 for I.
fn ascending_series(nu: Cx, z: Cx, sign: f64) -> Result<Cx> {
    let half = z * re(0.5);
    let q = half * half * re(sign);
    let prefix = powc(half, nu);
    // factor (z/2)^ν Σ q^j / (j! Γ(j+ν+1)); when ν is a negative integer
    // −m the first m terms vanish (reciprocal-gamma zeros), so the sum
    // starts at j₀ = m. Past j₀ the term obeys the exact two-term
    // recurrence t_{j+1} = t_j · q / ((j+1)(j+1+ν)), which keeps per-term
    // rounding at a few ulps instead of re-deriving each gamma factor.
    let j0: usize = if is_nonpositive_integer(nu + re(1.0)) { (-nu.re).round() as usize } else { 0 };
    let mut term = reciprocal_gamma(nu + re(j0 as f64 + 1.0));
    for j in 1..=j0 {
        term *= q / re(j as f64);
    }
    let mut sum = re(0.0);
    let mut below = 0u32;
    for j in j0..400 {
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            below += 1;
            if below >= 3 {
                break;
            }
        } else {
            below = 0;
        }
        let jn = re(j as f64 + 1.0);
        term *= q / (jn * (jn + nu));
    }
    Ok(prefix * sum)
}

/// Hankel asymptotic expansion for real order and large positive real
/// argument, truncated adaptively (terms summed while decreasing).
fn hankel_asymptotic_j(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    // a_k(ν) = Π_{i=1..k} (μ − (2i−1)²) / (k! 8^k); P = Σ (−1)^k a_{2k}/x^{2k},
    // Q = Σ (−1)^k a_{2k+1}/x^{2k+1}
    let mut a = vec![1.0f64];
    for k in 1..=26 {
        let prev = a[k - 1];
        let odd = (2 * k - 1) as f64;
        a.push(prev * (mu - odd * odd) / (k as f64 * 8.0));
    }
    let mut p = 0.0;
    let mut q = 0.0;
    let mut last = f64::INFINITY;
    for (k, &ak) in a.iter().enumerate() {
        let t = ak / x.powi(k as i32);
        if t.abs() > last {
            break;
        }
        last = t.abs();
        let s = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += s * t;
        } else {
            q += s * t;
        }
    }
    let omega = x - nu * PI / 2.0 - PI / 4.0;
    (2.0 / (PI * x)).sqrt() * (omega.cos() * p - omega.sin() * q)
}

/// Bessel function of the first kind J_ν(z), with method annotation.
pub fn bessel_j_eval(nu: Cx, z: Cx) -> Result<BesselEval> {
    if z.norm() == 0.0 {
        return Ok(BesselEval {
            order: nu,
            argument: z,
            value: zero_argument(nu)?,
            method: BesselMethod::AscendingSeries,
        });
    }
    // Real order and argument with x ≥ 16 and moderate order: the Hankel
    // expansion reaches ~1e-13 there, while the ascending series carries
    // growing cancellation noise (up to ~1e-6 absolute near |z| = 25).
    if nu.im == 0.0 && z.im == 0.0 && z.re.abs() >= HANKEL_CUTOFF && nu.re.abs() <= 5.0 {
        let value = if z.re > 0.0 {
            re(hankel_asymptotic_j(nu.re, z.re))
        } else {
            (cx(0.0, PI) * nu).exp() * re(hankel_asymptotic_j(nu.re, -z.re))
        };
        return Ok(BesselEval { order: nu, argument: z, value, method: BesselMethod::AsymptoticHankel });
    }
    if z.norm() <= SERIES_CUTOFF {
        return Ok(BesselEval {
            order: nu,
            argument: z,
            value: ascending_series(nu, z, -1.0)?,
            method: BesselMethod::AscendingSeries,
        });
    }
    if nu.im == 0.0 && z.im == 0.0 {
        let value = if z.re > 0.0 {
            re(hankel_asymptotic_j(nu.re, z.re))
        } else {
            // reflection J_ν(−x) = e^{iπν} J_ν(x) on the principal branch
            (cx(0.0, PI) * nu).exp() * re(hankel_asymptotic_j(nu.re, -z.re))
        };
        return Ok(BesselEval { order: nu, argument: z, value, method: BesselMethod::AsymptoticHankel });
    }
    Err(Error::AsymptoticUnsupported { nu, abs_z: z.norm() })
}

/// Bessel function of the first kind J_ν(z).
pub fn bessel_j(nu: Cx, z: Cx) -> Result<Cx> {
    bessel_j_eval(nu, z).map(|e| e.value)
}

/// Modified Bessel function of the first kind I_ν(z).
///
/// The ascending series has no sign alternation, so for |z| ≤ 700 it is
/// summed directly (terms are computed in log space beyond the series
/// cutoff to dodge intermediate overflow).
pub fn bessel_i(nu: Cx, z: Cx) -> Result<Cx> {
    if z.norm() == 0.0 {
        return zero_argument(nu);
    }
    if z.norm() <= SERIES_CUTOFF {
        return ascending_series(nu, z, 1.0);
    }
    if z.norm() > 700.0 {
        return Err(Error::OverflowMagnitude { context: "bessel_i argument" });
    }
    let scaled = bessel_i_scaled(nu, z)?;
    let v = scaled * re(z.re.abs()).exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::OverflowMagnitude { context: "bessel_i" })
    }
}

/// Exponentially scaled modified Bessel e^{−|Re z|}·I_ν(z), usable up to
/// |z| ≈ 700 (and beyond) without overflow. Terms are assembled in log
/// space: exp((2j+ν)·log(z/2) − logΓ(j+1) − logΓ(j+ν+1) − |Re z|).
pub fn bessel_i_scaled(nu: Cx, z: Cx) -> Result<Cx> {
    if z.norm() == 0.0 {
        return zero_argument(nu);
    }
    let log_half = (z * re(0.5)).ln();
    let damp = re(z.re.abs());
    let mut sum = re(0.0);
    let mut below = 0u32;
    for j in 0..20_000 {
        let jn = re(j as f64);
        let order_idx = nu + jn + re(1.0);
        if is_nonpositive_integer(order_idx) {
            continue; // reciprocal-gamma zero: term vanishes
        }
        let log_term =
            (jn * re(2.0) + nu) * log_half - log_gamma(jn + re(1.0))? - log_gamma(order_idx)? - damp;
        let term = log_term.exp();
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            below += 1;
            if below >= 3 {
                return Ok(sum);
            }
        } else {
            below = 0;
        }
    }
    Err(Error::NonConvergence { context: "scaled modified Bessel series", iterations: 20_000 })
}

/// J_ν(x) for root refinement: beyond x = 12 the Hankel expansion is used
/// even though the general-purpose cutoff is 25, because the ascending
/// series' cancellation noise (up to ~1e-9 absolute near x = 20) would put
/// a floor under the achievable zero accuracy.
fn j_for_root(nu: f64, x: f64) -> Result<f64> {
    if x > 12.0 {
        Ok(hankel_asymptotic_j(nu, x))
    } else {
        Ok(bessel_j(re(nu), re(x))?.re)
    }
}

/// First derivative J_ν′(z) = (J_{ν−1}(z) − J_{ν+1}(z)) / 2.
fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    Ok(0.5 * (j_for_root(nu - 1.0, x)? - j_for_root(nu + 1.0, x)?))
}

/// n-th positive zero j_{ν,n} of J_ν, for real ν ≥ 0.
///
/// McMahon expansion seed refined by Newton iteration (tolerance 1e-13 on
/// the argument, at most 40 steps); a bisection bracket is the fallback if
/// Newton leaves its basin.
pub fn bessel_j_zero(nu: f64, n: u32) -> Result<f64> {
    assert!(nu >= 0.0, "bessel_j_zero requires nu >= 0");
    assert!(n >= 1, "bessel_j_zero requires n >= 1");
    let mu = 4.0 * nu * nu;
    let beta = (n as f64 + nu / 2.0 - 0.25) * PI;
    // McMahon: j ≈ β − (μ−1)/(8β) − 4(μ−1)(7μ−31)/(3(8β)³) − ...
    let b8 = 8.0 * beta;
    let mut x = beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3));
    let newton = (|| -> Result<f64> {
        for _ in 0..40 {
            let f = j_for_root(nu, x)?;
            let fp = bessel_j_prime(nu, x)?;
            if fp == 0.0 {
                return Err(Error::NewtonDivergence { nu, n });
            }
            let step = f / fp;
            let next = x - step;
            if !(next.is_finite()) || (next - x).abs() > PI {
                return Err(Error::NewtonDivergence { nu, n });
            }
            x = next;
            if step.abs() < 1e-13 {
                return Ok(x);
            }
        }
        Err(Error::NewtonDivergence { nu, n })
    })();
    match newton {
        Ok(z) => Ok(z),
        Err(_) => bisect_zero(nu, n, beta),
    }
}

/// Bisection fallback on a bracket around the McMahon estimate.
fn bisect_zero(nu: f64, n: u32, beta: f64) -> Result<f64> {
    let mut lo = (beta - 0.5 * PI).max(1e-6);
    let mut hi = beta + 0.5 * PI;
    let mut flo = j_for_root(nu, lo)?;
    let fhi = j_for_root(nu, hi)?;
    if flo * fhi > 0.0 {
        return Err(Error::NewtonDivergence { nu, n });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fmid = j_for_root(nu, mid)?;
        if flo * fmid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Cx, b: Cx, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn j_at_origin() {
        assert_eq!(bessel_j(re(0.0), re(0.0)).unwrap(), re(1.0));
        assert_eq!(bessel_j(re(2.0), re(0.0)).unwrap(), re(0.0));
        assert!(matches!(
            bessel_j(re(-1.5), re(0.0)),
            Err(Error::ZeroArgumentNegativeOrder(_))
        ));
    }

    #[test]
    fn j_half_order_closed_form() {
        // J_{1/2}(z) = √(2/(πz))·sin z; at z = π/2 this is 2/π.
        let v = bessel_j(re(0.5), re(PI / 2.0)).unwrap();
        assert!(close(v, re(2.0 / PI), 1e-13));
    }

    #[test]
    fn j0_at_one_vs_partial_sum_oracle() {
        // ascending-series partial sums with alternating-tail bound
        let mut s = 0.0f64;
        let mut term = 1.0f64;
        for j in 0..30 {
            if j > 0 {
                term *= -0.25 / (j as f64 * j as f64);
            }
            s += term;
        }
        let v = bessel_j(re(0.0), re(1.0)).unwrap();
        assert!((v.re - s).abs() < 1e-14);
        assert!((v.re - 0.7651976865579666).abs() < 1e-12);
    }

    #[test]
    fn i_values_and_rotation() {
        assert_eq!(bessel_i(re(0.0), re(0.0)).unwrap(), re(1.0));
        // I_ν(z) = e^{−iπν/2} J_ν(iz) for real z > 0
        let v = bessel_i(re(0.0), re(2.0)).unwrap();
        let w = bessel_j(re(0.0), cx(0.0, 2.0)).unwrap();
        assert!(close(v, w, 1e-12));
        // I_1(1) vs ascending-series oracle
        let mut s = 0.0f64;
        let mut t = 0.5f64;
        for j in 0..30 {
            if j > 0 {
                t *= 0.25 / (j as f64 * (j as f64 + 1.0));
            }
            s += t;
        }
        assert!((bessel_i(re(1.0), re(1.0)).unwrap().re - s).abs() < 1e-14);
    }

    #[test]
    fn i_scaled_consistency_large_argument() {
        // e^{−x} I_0(x) at x = 200 via the scaled series; check against the
        // leading asymptotic 1/√(2πx)·(1 + 1/(8x) + 9/(128x²) + ...)
        let s = bessel_i_scaled(re(0.0), re(200.0)).unwrap().re;
        let x = 200.0f64;
        let asym = (1.0 / (2.0 * PI * x).sqrt())
            * (1.0 + 1.0 / (8.0 * x) + 9.0 / (128.0 * x * x) + 225.0 / (3072.0 * x.powi(3)));
        assert!((s - asym).abs() / asym < 1e-8);
        // and scaled * e^{x} matches bessel_i below the overflow boundary
        let x = 100.0f64;
        let a = bessel_i(re(0.0), re(x)).unwrap().re;
        let b = bessel_i_scaled(re(0.0), re(x)).unwrap().re * x.exp();
        assert!((a - b).abs() / a < 1e-12);
    }

    #[test]
    fn asymptotic_matches_series_at_cutoff() {
        // at the real-axis switchover (x = 16) both routes are accurate:
        // the series noise is ~1e-11 and the Hankel floor is ~1e-13, so
        // the branches must agree tightly there
        for &nu in &[0.0, 1.0, 2.5, 4.0] {
            let above = bessel_j(re(nu), re(16.1)).unwrap().re; // Hankel
            let series = ascending_series(re(nu), re(16.1), -1.0).unwrap().re;
            assert!((above - series).abs() < 1e-10, "nu={nu} diff={}", above - series);
            // continuity across the switchover itself
            let below = bessel_j(re(nu), re(15.9)).unwrap().re; // series
            assert!((below - above).abs() < 0.25);
        }
    }

    #[test]
    fn complex_large_argument_is_an_error() {
        assert!(matches!(
            bessel_j(cx(0.0, 1.0), re(30.0)),
            Err(Error::AsymptoticUnsupported { .. })
        ));
    }

    #[test]
    fn zeros_of_j() {
        // oracle: bisection on sign changes of the ascending series
        let z1 = bessel_j_zero(0.0, 1).unwrap();
        assert!((z1 - 2.404825557695773).abs() < 1e-10);
        let z2 = bessel_j_zero(0.0, 2).unwrap();
        assert!((z2 - 5.520078110286311).abs() < 1e-10);
        // J_{1/2} zeros are nπ
        for n in 1..=5 {
            let z = bessel_j_zero(0.5, n).unwrap();
            assert!((z - n as f64 * PI).abs() < 5e-12);
        }
        // residuals (the ascending series itself carries cancellation
        // noise up to ~1e-9 absolute for arguments near the cutoff)
        for &nu in &[0.0, 0.5, 1.0, 2.5] {
            for n in 1..=20 {
                let z = bessel_j_zero(nu, n).unwrap();
                assert!(bessel_j(re(nu), re(z)).unwrap().norm() <= 2e-9);
            }
        }
    }
}
