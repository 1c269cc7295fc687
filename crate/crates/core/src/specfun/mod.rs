//! Special functions consumed by the rest of the crate.
//!
//! | Function | Notes |
//! |----------|-------|
//! | [`log_gamma`], [`ln_gamma_complex`] | real and complex `ln Γ` |
//! | [`pochhammer`], [`ln_pochhammer`] | rising factorials, log domain when large |
//! | [`eval_pfq`], [`eval_pfq_complex`] | generalized hypergeometric series with a certified tail |
//! | [`bessel_i`], [`bessel_k`] | modified Bessel functions of real order |
//! | [`meijer_g`], [`mellin_moment`] | Meijer G by Mellin–Barnes quadrature and its closed Mellin transform |

mod bessel;
mod gamma;
mod meijer;
mod pfq;

pub use bessel::{bessel_i, bessel_k, bessel_k_integral, bessel_k_reflection};
pub use gamma::{
    gamma, ln_gamma_complex, ln_gamma_signed, ln_pochhammer, log_gamma, pochhammer, recip_gamma,
};
pub use meijer::{meijer_g, meijer_g_log, mellin_moment, GParams, MeijerValue};
pub use pfq::{eval_pfq, eval_pfq_complex, eval_pfq_tol, DEFAULT_PFQ_TOL};

/// Outcome of a truncated series or quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult<T> {
    pub value: T,
    /// Bound on `|value - exact|`, tail and rounding included.
    pub abs_error_estimate: f64,
    /// Summed terms, or integrand evaluations for quadratures.
    pub terms_used: usize,
}

/// A real number stored as `sign · exp(ln_abs)`. Zero is `sign == 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln_abs: f64,
    pub sign: f64,
}

impl LogValue {
    pub const ONE: LogValue = LogValue {
        ln_abs: 0.0,
        sign: 1.0,
    };
    pub const ZERO: LogValue = LogValue {
        ln_abs: f64::NEG_INFINITY,
        sign: 0.0,
    };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogValue {
                ln_abs: x.abs().ln(),
                sign: x.signum(),
            }
        }
    }

    pub fn value(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    pub fn mul(self, other: Self) -> Self {
        if self.sign == 0.0 || other.sign == 0.0 {
            return Self::ZERO;
        }
        LogValue {
            ln_abs: self.ln_abs + other.ln_abs,
            sign: self.sign * other.sign,
        }
    }

    /// Division; dividing by zero yields an infinite magnitude.
    pub fn div(self, other: Self) -> Self {
        if self.sign == 0.0 {
            return Self::ZERO;
        }
        LogValue {
            ln_abs: self.ln_abs - other.ln_abs,
            sign: self.sign * if other.sign == 0.0 { 1.0 } else { other.sign },
        }
    }

    pub fn powi(self, k: i32) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        if self.sign == 0.0 {
            return Self::ZERO;
        }
        LogValue {
            ln_abs: self.ln_abs * f64::from(k),
            sign: if k % 2 == 0 { 1.0 } else { self.sign },
        }
    }

    pub fn sqrt(self) -> Self {
        LogValue {
            ln_abs: 0.5 * self.ln_abs,
            sign: self.sign.abs(),
        }
    }
}
