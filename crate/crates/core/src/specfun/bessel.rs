//! Modified Bessel functions `I_ν` and `K_ν` of real order.

use std::f64::consts::PI;

use super::gamma::ln_gamma_signed;
use super::pfq::eval_pfq;
use crate::error::{Error, Result};

/// Orders closer than this to an integer skip the reflection formula.
const INTEGER_GUARD: f64 = 1e-4;
/// Above this argument `I_{-ν} - I_ν` cancels too badly for the reflection route.
const REFLECTION_MAX_X: f64 = 2.0;

/// `I_ν(x) = (x/2)^ν / Γ(ν+1) · ₀F₁(; ν+1; x²/4)`.
///
/// `x = 0` returns the series limit. Negative integer orders use `I_{-n} = I_n`.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !nu.is_finite() || !x.is_finite() {
        return Err(Error::domain(format!("bessel_i needs finite x >= 0, got {x}")));
    }
    if nu < 0.0 && nu == nu.floor() {
        return bessel_i(-nu, x);
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    let lg = ln_gamma_signed(nu + 1.0);
    let series = eval_pfq(&[], &[nu + 1.0], 0.25 * x * x)?.value;
    Ok(lg.sign * series * (nu * (0.5 * x).ln() - lg.ln_abs).exp())
}

/// `K_ν(x) = π/2 · (I_{-ν}(x) - I_ν(x)) / sin(νπ)`, only for non-integer order.
pub fn bessel_k_reflection(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("bessel_k needs x > 0, got {x}")));
    }
    if (nu - nu.round()).abs() < INTEGER_GUARD {
        return Err(Error::domain(format!(
            "reflection formula for K is singular at integer order {nu}"
        )));
    }
    let diff = bessel_i(-nu, x)? - bessel_i(nu, x)?;
    Ok(0.5 * PI * diff / (nu * PI).sin())
}

/// `K_ν(x) = ∫_0^∞ exp(-x cosh t) cosh(νt) dt` by the trapezoid rule.
///
/// The integrand is entire and decays double-exponentially, so the trapezoid
/// sum converges geometrically as the step shrinks.
pub fn bessel_k_integral(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !nu.is_finite() || !x.is_finite() {
        return Err(Error::domain(format!("bessel_k needs finite x > 0, got {x}")));
    }
    let nu = nu.abs();
    let log_integrand = |t: f64| {
        let y = nu * t;
        // ln cosh y without overflow
        -x * t.cosh() + y + (0.5 * (1.0 + (-2.0 * y).exp())).ln()
    };

    // the exponent peaks where x sinh t = ν tanh(νt), at most at asinh(ν/x)
    let t_peak = (nu / x).asinh();
    let peak = log_integrand(t_peak).max(log_integrand(0.0));
    let mut t_end = t_peak.max(1.0);
    while log_integrand(t_end) > peak - 46.0 {
        t_end += 0.5;
    }

    let trapezoid = |h: f64| {
        let n = (t_end / h).ceil() as usize;
        let mut s = 0.5 * (log_integrand(0.0) - peak).exp();
        for k in 1..=n {
            s += (log_integrand(k as f64 * h) - peak).exp();
        }
        h * s
    };

    let mut h = 0.25;
    let mut prev = trapezoid(h);
    for _ in 0..10 {
        h *= 0.5;
        let next = trapezoid(h);
        if (next - prev).abs() <= 1e-15 * next.abs() {
            return Ok(next * peak.exp());
        }
        prev = next;
    }
    Err(Error::convergence("K_nu trapezoid did not settle", Some(prev * peak.exp())))
}

/// `K_ν(x)` by reflection for small `x` and non-integer order, otherwise by the integral.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("bessel_k needs x > 0, got {x}")));
    }
    if x <= REFLECTION_MAX_X && (nu - nu.round()).abs() >= INTEGER_GUARD {
        bessel_k_reflection(nu, x)
    } else {
        bessel_k_integral(nu, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::log_gamma;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn i0_at_zero_and_two() {
        assert_eq!(bessel_i(0.0, 0.0).unwrap(), 1.0);
        assert!(rel(bessel_i(0.0, 2.0).unwrap(), 2.279_585_302_336_067) < 1e-15);
    }

    #[test]
    fn half_integer_closed_forms() {
        // I_{1/2}(x) = sqrt(2/(πx)) sinh x, K_{1/2}(x) = sqrt(π/(2x)) e^{-x}
        for &x in &[0.3, 1.0, 4.0, 15.0] {
            let i = (2.0 / (PI * x)).sqrt() * x.sinh();
            let k = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!(rel(bessel_i(0.5, x).unwrap(), i) < 1e-13, "I x={x}");
            assert!(rel(bessel_k(0.5, x).unwrap(), k) < 1e-12, "K x={x}");
            assert!(rel(bessel_k_integral(0.5, x).unwrap(), k) < 1e-12);
        }
        assert!(rel(bessel_k(0.5, 1.0).unwrap(), 0.461_068_504_447_894) < 1e-12);
    }

    #[test]
    fn integer_order_k_matches_tabulated() {
        // K_0(1), K_1(1), K_2(2)
        assert!(rel(bessel_k(0.0, 1.0).unwrap(), 0.421_024_438_240_708_3) < 1e-12);
        assert!(rel(bessel_k(1.0, 1.0).unwrap(), 0.601_907_230_197_234_6) < 1e-12);
        assert!(rel(bessel_k(2.0, 2.0).unwrap(), 0.253_759_754_566_055_9) < 1e-12);
    }

    #[test]
    fn both_k_routes_agree() {
        for &nu in &[0.3, 1.7, 3.25, 6.5] {
            for &x in &[0.2, 0.9, 1.8] {
                let a = bessel_k_reflection(nu, x).unwrap();
                let b = bessel_k_integral(nu, x).unwrap();
                assert!(rel(a, b) < 1e-10, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn wronskian() {
        // I_ν K_{ν+1} + I_{ν+1} K_ν = 1/x
        for &nu in &[0.0, 1.5, 4.0, 8.5] {
            for &x in &[0.5, 3.0, 12.0] {
                let w = bessel_i(nu, x).unwrap() * bessel_k(nu + 1.0, x).unwrap()
                    + bessel_i(nu + 1.0, x).unwrap() * bessel_k(nu, x).unwrap();
                assert!(rel(w, 1.0 / x) < 1e-11, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn series_identity() {
        let (nu, x) = (2.3, 1.7);
        let direct = (0.5 * x as f64).powf(nu) / log_gamma(nu + 1.0).unwrap().exp()
            * eval_pfq(&[], &[nu + 1.0], x * x / 4.0).unwrap().value;
        assert!(rel(bessel_i(nu, x).unwrap(), direct) < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_i(1.0, -1.0).is_err());
        assert!(bessel_k(1.0, 0.0).is_err());
        assert!(bessel_k_reflection(2.0, 1.0).is_err());
    }
}
