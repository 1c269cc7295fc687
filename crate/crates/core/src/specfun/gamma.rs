//! Gamma-function family: real and complex log-Gamma, Pochhammer symbols.
//!
//! Real log-Gamma is delegated to `libm` (a port of the musl/fdlibm routine),
//! which is exact at the integers 1 and 2 and keeps relative error near 1 ulp
//! elsewhere. The complex version is a shifted Stirling series and is what
//! the Mellin–Barnes integrands are built from.

use num_complex::Complex64;

use super::LogValue;
use crate::error::{Error, Result};

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// `Γ(x)` as `(ln|Γ(x)|, sign)`. Poles (nonpositive integers) give `sign == 0`
/// and an infinite magnitude.
pub fn ln_gamma_signed(x: f64) -> LogValue {
    if x <= 0.0 && x == x.floor() {
        return LogValue {
            ln_abs: f64::INFINITY,
            sign: 0.0,
        };
    }
    let (ln_abs, sign) = libm::lgamma_r(x);
    LogValue {
        ln_abs,
        sign: if sign < 0 { -1.0 } else { 1.0 },
    }
}

/// `Γ(x)` for real `x`; infinite at the poles.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    libm::tgamma(x)
}

/// `1/Γ(x)`, zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    let g = ln_gamma_signed(x);
    if g.sign == 0.0 {
        0.0
    } else {
        g.sign * (-g.ln_abs).exp()
    }
}

/// Rising factorial `(a)_k = a (a+1) … (a+k-1)` in log form with sign.
/// A factor hitting zero yields `sign == 0`.
pub fn ln_pochhammer(a: f64, k: u32) -> LogValue {
    if k == 0 {
        return LogValue::ONE;
    }
    if a <= 0.0 && a == a.floor() && -a < f64::from(k) {
        return LogValue::ZERO;
    }
    if k <= 32 {
        let mut acc = LogValue::ONE;
        for j in 0..k {
            acc = acc.mul(LogValue::from_f64(a + f64::from(j)));
        }
        return acc;
    }
    // Γ(a+k)/Γ(a); a nonpositive-integer a with -a >= k would make both
    // sides poles, so use the reflection-free version of the product sign.
    if a <= 0.0 && a == a.floor() {
        // (-n)_k with k > n is zero (handled above); here k <= n.
        let n = -a;
        let ln_abs = libm::lgamma(n + 1.0) - libm::lgamma(n - f64::from(k) + 1.0);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        return LogValue { ln_abs, sign };
    }
    ln_gamma_signed(a + f64::from(k)).div(ln_gamma_signed(a))
}

/// Rising factorial as a plain float.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    if k <= 32 {
        return (0..k).map(|j| a + f64::from(j)).product();
    }
    ln_pochhammer(a, k).value()
}

// B_{2k} / (2k (2k-1)), k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `ln Γ(z)` for complex `z`, defined modulo `2πi` (only `exp` of it is
/// meaningful). Exact poles give an infinite real part.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut ln_shift = Complex64::new(0.0, 0.0);
    while w.re < 12.0 {
        prod *= w;
        if prod.norm_sqr() > 1e300 {
            ln_shift += prod.ln();
            prod = Complex64::new(1.0, 0.0);
        }
        w += 1.0;
    }
    if prod == Complex64::new(0.0, 0.0) {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    ln_shift += prod.ln();

    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_TWO_PI + series - ln_shift
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-15);
        let half = 0.5 * std::f64::consts::PI.ln();
        assert!((log_gamma(0.5).unwrap() - half).abs() < 1e-15 * half);
        assert!(matches!(log_gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(-1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn log_gamma_large_argument() {
        // ln Γ(171) overflows Γ itself but not its log
        let v = log_gamma(171.0).unwrap();
        let direct: f64 = (1..171).map(|k| (k as f64).ln()).sum();
        assert!((v - direct).abs() < 1e-12 * direct);
        assert!(gamma(172.0).is_infinite());
    }

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(3.0, 4), 360.0);
        assert_eq!(pochhammer(0.37, 0), 1.0);
        assert_eq!(pochhammer(-2.0, 4), 0.0);
        assert_eq!(pochhammer(-2.0, 2), 2.0);
        let big = pochhammer(1.5, 60);
        let reference = (libm::lgamma(61.5) - libm::lgamma(1.5)).exp();
        assert!((big / reference - 1.0).abs() < 1e-12);
        // (-40)_35 = (-1)^35 40!/5!
        let v = ln_pochhammer(-40.0, 35);
        assert_eq!(v.sign, -1.0);
        let expect = libm::lgamma(41.0) - libm::lgamma(6.0);
        assert!((v.ln_abs - expect).abs() < 1e-12);
    }

    #[test]
    fn complex_gamma_matches_real_axis() {
        for &x in &[0.1, 0.5, 1.0, 2.5, 7.25, 30.0, -0.5, -3.7] {
            let c = ln_gamma_complex(Complex64::new(x, 0.0));
            let r = ln_gamma_signed(x);
            assert!((c.re - r.ln_abs).abs() < 1e-13 * r.ln_abs.abs().max(1.0), "x={x}");
            // the imaginary part encodes the sign
            let sign = (c.im).cos().signum();
            assert_eq!(sign, r.sign, "x={x}");
        }
    }

    #[test]
    fn complex_gamma_reflection_and_recurrence() {
        let pi = std::f64::consts::PI;
        for &(x, y) in &[(0.3, 2.0), (-1.7, 0.4), (4.0, -9.0), (0.5, 30.0)] {
            let z = Complex64::new(x, y);
            // Γ(z+1) = z Γ(z)
            let lhs = ln_gamma_complex(z + 1.0).exp();
            let rhs = z * ln_gamma_complex(z).exp();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm(), "z={z}");
            // Γ(z) Γ(1-z) = π / sin(πz)
            let prod = (ln_gamma_complex(z) + ln_gamma_complex(1.0 - z)).exp();
            let expect = pi / (z * pi).sin();
            assert!((prod - expect).norm() < 1e-11 * expect.norm(), "z={z}");
        }
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        let y = 3.0;
        let v = ln_gamma_complex(Complex64::new(0.5, y)).re * 2.0;
        assert!((v - (pi / (pi * y).cosh()).ln()).abs() < 1e-12);
    }

    #[test]
    fn complex_gamma_pole_is_infinite() {
        let v = ln_gamma_complex(Complex64::new(-3.0, 0.0));
        assert!(v.re.is_infinite() && v.re > 0.0);
    }
}
