//! Convergence-controlled summation of multi-index series.
//!
//! The master identities are series over 1–6 nonnegative integer indices.
//! [`nested_sum`] enumerates index tuples in shells of constant total
//! degree j₁+…+jₙ = d, so that the (roughly geometric) decay of the terms
//! in total degree turns into a monotone shell profile that can be used
//! both for a stopping rule and for divergence detection.
//!
//! [`accelerate_alternating`] applies the Levin u-transform to a sequence
//! of partial sums of a slowly convergent alternating series; it is used
//! by the Lerch transcendent on the unit circle and by the oscillatory
//! quadrature tail.

use crate::cx::{re, Cx};
use crate::error::{Error, Result};

/// Tuning knobs for [`nested_sum`].
#[derive(Debug, Clone, Copy)]
pub struct SumConfig {
    /// Stop once a whole shell contributes less than this relative to the
    /// running value, for [`SumConfig::stall_shells`] shells in a row.
    pub rel_tol: f64,
    /// Absolute magnitude below which a shell counts as negligible even if
    /// the running value is itself tiny.
    pub abs_floor: f64,
    /// Hard cap on the total degree of enumerated shells.
    pub max_total_degree: usize,
    /// Number of consecutive negligible shells required to declare
    /// convergence.
    pub stall_shells: usize,
    /// Number of consecutive strictly growing shells that triggers a
    /// divergence error.
    pub divergence_shells: usize,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig {
            rel_tol: 1e-12,
            abs_floor: 1e-300,
            max_total_degree: 400,
            stall_shells: 3,
            divergence_shells: 5,
        }
    }
}

/// Outcome of a multi-index summation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesResult {
    /// The accumulated value.
    pub value: Cx,
    /// Magnitude of the last shell: a conservative truncation-error proxy.
    pub tail_estimate: f64,
    /// Number of total-degree shells enumerated (last degree + 1).
    pub shells_used: usize,
    /// Number of term evaluations performed.
    pub terms_evaluated: usize,
    /// True when the stopping rule fired (always true on `Ok`).
    pub converged: bool,
}

/// Sum `f` over all tuples of `dims` nonnegative integers, enumerated by
/// total-degree shells.
///
/// The shell magnitude is Σ|term| over the shell (not |Σ term|), so that
/// intra-shell cancellation cannot mask a still-large tail. Channels whose
/// terms are exactly zero (killed by a reciprocal-gamma factor or a
/// terminating binomial) cost one evaluation per tuple and nothing more.
pub fn nested_sum<F>(dims: usize, mut f: F, cfg: &SumConfig) -> Result<SeriesResult>
where
    F: FnMut(&[u32]) -> Result<Cx>,
{
    assert!((1..=6).contains(&dims), "nested_sum supports 1..=6 indices");
    let mut value = re(0.0);
    let mut terms = 0usize;
    let mut stalled = 0usize;
    let mut growing = 0usize;
    let mut prev_mag = f64::INFINITY;
    let mut tail = 0.0f64;
    let mut idx = vec![0u32; dims];
    for degree in 0..=cfg.max_total_degree {
        let mut shell_mag = 0.0f64;
        let mut shell_sum = re(0.0);
        for_each_composition(degree as u32, dims, &mut idx, 0, &mut |tuple| {
            let t = f(tuple)?;
            terms += 1;
            shell_sum += t;
            shell_mag += t.norm();
            Ok(())
        })?;
        value += shell_sum;
        tail = shell_mag;
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonFinite { context: "nested_sum accumulation" });
        }
        let threshold = (cfg.rel_tol * value.norm()).max(cfg.abs_floor);
        if shell_mag <= threshold {
            stalled += 1;
            growing = 0;
            if stalled >= cfg.stall_shells {
                return Ok(SeriesResult {
                    value,
                    tail_estimate: tail,
                    shells_used: degree + 1,
                    terms_evaluated: terms,
                    converged: true,
                });
            }
        } else {
            stalled = 0;
            if shell_mag > prev_mag {
                growing += 1;
                if growing >= cfg.divergence_shells {
                    return Err(Error::Divergent { shells: growing, last: shell_mag });
                }
            } else {
                growing = 0;
            }
        }
        prev_mag = shell_mag;
    }
    Err(Error::DegreeCapExceeded { cap: cfg.max_total_degree, tail })
}

/// Visit every composition of `remaining` into the suffix of `idx`
/// starting at `pos`, invoking `visit` with the full tuple.
fn for_each_composition<V>(
    remaining: u32,
    dims: usize,
    idx: &mut Vec<u32>,
    pos: usize,
    visit: &mut V,
) -> Result<()>
where
    V: FnMut(&[u32]) -> Result<()>,
{
    if pos == dims - 1 {
        idx[pos] = remaining;
        return visit(idx);
    }
    for v in 0..=remaining {
        idx[pos] = v;
        for_each_composition(remaining - v, dims, idx, pos + 1, visit)?;
    }
    Ok(())
}

/// Levin u-transform of a sequence of partial sums.
///
/// Requires at least 8 partials; the transform order is min(10, len − 2)
/// and the last (order + 1) partials are used. Remainder estimates are the
/// u-variant ω_m = (m + 1)·a_m with a_m the term that produced s_m.
pub fn accelerate_alternating(partials: &[Cx]) -> Result<Cx> {
    let n = partials.len();
    if n < 8 {
        return Err(Error::InsufficientPartials(n));
    }
    let order = 10.min(n - 2);
    let start = n - order - 1; // use s_{start} .. s_{n-1}
    let mut num = re(0.0);
    let mut den = re(0.0);
    for j in 0..=order {
        let m = start + j;
        let a = if m == 0 { partials[0] } else { partials[m] - partials[m - 1] };
        let omega = a * re(m as f64 + 1.0);
        if omega.norm() == 0.0 {
            // exact partial sum: the series terminated
            return Ok(partials[m]);
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let binom = binomial_f64(order, j);
        let c = ((start as f64 + j as f64 + 1.0) / (start as f64 + order as f64 + 1.0))
            .powi(order as i32 - 1);
        let w = re(sign * binom * c) / omega;
        num += w * partials[m];
        den += w;
    }
    if den.norm() == 0.0 {
        return Err(Error::AccelerationStall(f64::INFINITY));
    }
    Ok(num / den)
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::cx;

    #[test]
    fn geometric_two_index() {
        // Σ_{j,l} (1/3)^j (1/4)^l = (3/2)(4/3) = 2
        let cfg = SumConfig::default();
        let r = nested_sum(
            2,
            |t| Ok(re(0.333333333333333333f64.powi(t[0] as i32) * 0.25f64.powi(t[1] as i32))),
            &cfg,
        )
        .unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-11);
        assert!(r.converged);
    }

    #[test]
    fn exponential_six_index() {
        // Σ over six indices of Π x_i^{j_i}/j_i! = exp(Σ x_i)
        let x: [f64; 6] = [0.3, 0.7, 0.2, 0.5, 0.1, 0.4];
        let cfg = SumConfig::default();
        let r = nested_sum(
            6,
            |t| {
                let mut v = 1.0f64;
                for (i, &j) in t.iter().enumerate() {
                    let mut f = 1.0f64;
                    for q in 1..=j {
                        f *= q as f64;
                    }
                    v *= x[i].powi(j as i32) / f;
                }
                Ok(re(v))
            },
            &cfg,
        )
        .unwrap();
        assert!((r.value.re - (x.iter().sum::<f64>()).exp()).abs() < 1e-11);
    }

    #[test]
    fn complex_channel_cancellation_not_masked() {
        // shell magnitude uses Σ|t|, so a shell of equal-and-opposite large
        // terms must not be treated as negligible
        let cfg = SumConfig::default();
        let r = nested_sum(
            2,
            |t| {
                let d = t[0] + t[1];
                if d == 0 {
                    return Ok(re(1.0));
                }
                // terms cancel within each shell but decay geometrically
                let mag = 0.5f64.powi(d as i32);
                Ok(if t[0] % 2 == 0 { re(mag) } else { re(-mag) })
            },
            &cfg,
        )
        .unwrap();
        assert!(r.shells_used > 40);
        assert!(r.converged);
    }

    #[test]
    fn divergence_detected() {
        let cfg = SumConfig::default();
        let e = nested_sum(1, |t| Ok(re(1.5f64.powi(t[0] as i32))), &cfg);
        assert!(matches!(e, Err(Error::Divergent { .. })));
    }

    #[test]
    fn degree_cap_reported() {
        // harmonic-like decay: never meets the relative tolerance
        let cfg = SumConfig { max_total_degree: 50, ..SumConfig::default() };
        let e = nested_sum(1, |t| Ok(re(1.0 / (t[0] as f64 + 1.0))), &cfg);
        assert!(matches!(e, Err(Error::DegreeCapExceeded { .. })));
    }

    #[test]
    fn levin_accelerates_log2() {
        // Σ (−1)^{m}/ (m+1) = log 2; 16 raw partials are good to ~3e-2,
        // the u-transform recovers ~12 digits
        let mut partials = Vec::new();
        let mut s = re(0.0);
        for m in 0..16 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            s += re(sign / (m as f64 + 1.0));
            partials.push(s);
        }
        let v = accelerate_alternating(&partials).unwrap();
        assert!((v.re - std::f64::consts::LN_2).abs() < 1e-11);
    }

    #[test]
    fn levin_handles_complex_unit_circle() {
        // Σ i^m/(m+1)^{1.5} converges slowly; compare against a long
        // direct sum
        let mut direct = re(0.0);
        for m in 0..2_000_000u32 {
            let p = (m % 4) as i32;
            let im = cx(0.0, 1.0).powi(p);
            direct += im * re(1.0 / (m as f64 + 1.0).powf(1.5));
        }
        let mut partials = Vec::new();
        let mut s = re(0.0);
        for m in 0..40u32 {
            let im = cx(0.0, 1.0).powi((m % 4) as i32);
            s += im * re(1.0 / (m as f64 + 1.0).powf(1.5));
            partials.push(s);
        }
        let v = accelerate_alternating(&partials).unwrap();
        assert!((v - direct).norm() < 1e-6);
    }

    #[test]
    fn too_few_partials_is_an_error() {
        let p: Vec<Cx> = (0..5).map(|i| re(i as f64)).collect();
        assert!(matches!(accelerate_alternating(&p), Err(Error::InsufficientPartials(5))));
    }
}
