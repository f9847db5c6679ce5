//! The universal numeric carrier: complex double precision.
//!
//! Every parameter in the master theorems is complex in general, so the
//! whole crate computes over [`Cx`]. This module adds the handful of
//! helpers the kernels share: pole detection, principal-branch powers, and
//! finite-ness checks.

use num_complex::Complex64;

/// Complex double-precision value, the universal numeric carrier.
pub type Cx = Complex64;

/// Construct a [`Cx`] from real and imaginary parts.
#[inline]
pub fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

/// Construct a purely real [`Cx`].
#[inline]
pub fn re(x: f64) -> Cx {
    Cx::new(x, 0.0)
}

/// Proximity threshold for treating a complex value as a nonpositive
/// integer (a gamma-family pole). Chosen below the double-precision
/// resolution of the theorems' parameter arithmetic.
pub const POLE_EPS: f64 = 1e-12;

/// True when `z` is within [`POLE_EPS`] of a nonpositive integer.
#[inline]
pub fn is_nonpositive_integer(z: Cx) -> bool {
    if z.im.abs() > POLE_EPS {
        return false;
    }
    let r = z.re.round();
    r <= 0.0 && (z.re - r).abs() <= POLE_EPS
}

/// True when `z` is within `tol` of some integer (any sign).
#[inline]
pub fn near_integer(z: Cx, tol: f64) -> bool {
    z.im.abs() <= tol && (z.re - z.re.round()).abs() <= tol
}

/// Principal-branch complex power z^w with the conventions 0^0 = 1 and
/// 0^w = 0 for Re(w) > 0.
#[inline]
pub fn powc(z: Cx, w: Cx) -> Cx {
    if z.re == 0.0 && z.im == 0.0 {
        if w.re == 0.0 && w.im == 0.0 {
            return Cx::new(1.0, 0.0);
        }
        return Cx::new(0.0, 0.0);
    }
    // exact small-integer exponents avoid the log/exp rounding of the
    // general branch (3^2 must be 9, not 9 + 2 ulp)
    if w.im == 0.0 && w.re == w.re.round() && w.re.abs() <= 64.0 {
        let n = w.re as i32;
        let p = powi(z, n.unsigned_abs());
        return if n >= 0 { p } else { p.finv() };
    }
    z.powc(w)
}

/// Nonnegative-integer power by binary exponentiation (exact index
/// arithmetic; avoids log/exp noise for the series' small index powers).
#[inline]
pub fn powi(z: Cx, mut n: u32) -> Cx {
    let mut base = z;
    let mut acc = Cx::new(1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

/// True when both components are finite.
#[inline]
pub fn is_finite(z: Cx) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Relative difference |a-b| / max(|a|, |b|, floor).
#[inline]
pub fn rel_diff(a: Cx, b: Cx, floor: f64) -> f64 {
    let scale = a.norm().max(b.norm()).max(floor);
    (a - b).norm() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonpositive_integer_detection() {
        assert!(is_nonpositive_integer(re(0.0)));
        assert!(is_nonpositive_integer(re(-3.0)));
        assert!(is_nonpositive_integer(cx(-5.0 + 1e-13, 0.0)));
        assert!(!is_nonpositive_integer(re(1.0)));
        assert!(!is_nonpositive_integer(re(-2.5)));
        assert!(!is_nonpositive_integer(cx(-2.0, 0.5)));
    }

    #[test]
    fn principal_power_conventions() {
        assert_eq!(powc(re(0.0), re(0.0)), re(1.0));
        assert_eq!(powc(re(0.0), re(2.0)), re(0.0));
        let z = powc(re(-1.0), re(0.5));
        assert!((z - cx(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn integer_power_matches_powc() {
        let z = cx(1.3, -0.7);
        assert!((powi(z, 7) - z.powi(7)).norm() < 1e-12);
        assert_eq!(powi(z, 0), re(1.0));
    }
}
