//! Double-exponential quadrature on finite, half-infinite and infinite ranges.
//!
//! Every rule is a trapezoid sum in a transformed variable `t`. Levels halve
//! the step and reuse previous nodes; iteration stops when two successive
//! levels agree to the requested tolerance.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::SeriesResult;

/// Values a quadrature can accumulate.
pub trait QuadValue: Clone {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, w: f64, other: &Self);
    fn magnitude(&self) -> f64;
    fn distance(&self, other: &Self) -> f64;
}

impl QuadValue for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn add_scaled(&mut self, w: f64, other: &Self) {
        *self += w * other;
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}

impl QuadValue for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add_scaled(&mut self, w: f64, other: &Self) {
        *self += other * w;
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

impl QuadValue for Vec<f64> {
    fn zero_like(&self) -> Self {
        vec![0.0; self.len()]
    }
    fn add_scaled(&mut self, w: f64, other: &Self) {
        for (s, o) in self.iter_mut().zip(other) {
            *s += w * o;
        }
    }
    fn magnitude(&self) -> f64 {
        self.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
    fn distance(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl QuadValue for Vec<Complex64> {
    fn zero_like(&self) -> Self {
        vec![Complex64::new(0.0, 0.0); self.len()]
    }
    fn add_scaled(&mut self, w: f64, other: &Self) {
        for (s, o) in self.iter_mut().zip(other) {
            *s += o * w;
        }
    }
    fn magnitude(&self) -> f64 {
        self.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
    fn distance(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Integrand evaluations allowed before giving up.
    pub max_evals: usize,
    /// Levels always computed, so that agreement by accident is not trusted.
    pub min_levels: usize,
    pub max_levels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            max_evals: 1 << 20,
            min_levels: 3,
            max_levels: 12,
        }
    }
}

impl QuadOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadOptions {
            rel_tol,
            ..Self::default()
        }
    }
}

const T_CAP: f64 = 7.0;
const H0: f64 = 0.5;

/// Trapezoid over `t ∈ ℝ` of `map(t) = (x, dx/dt)` followed by `f(x)`.
fn de_core<T, F, M>(mut f: F, map: M, opts: &QuadOptions) -> Result<SeriesResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
    M: Fn(f64) -> Option<(f64, f64)>,
{
    let mut evals = 0usize;
    let (x0, w0) = map(0.0).ok_or_else(|| Error::domain("quadrature map undefined at origin"))?;
    let center = f(x0);
    evals += 1;
    let mut sum = center.zero_like();
    sum.add_scaled(w0, &center);
    let mut peak = center.magnitude() * w0.abs();

    let mut h = H0;
    // level 0 walks the integer multiples of h, later levels only the odd ones
    let mut level_sum = |step: f64,
                         first: usize,
                         stride: usize,
                         peak: &mut f64,
                         evals: &mut usize,
                         acc: &mut T|
     -> Result<()> {
        for dir in [1.0f64, -1.0] {
            let mut k = first;
            let mut quiet = 0;
            loop {
                let t = dir * k as f64 * step;
                if t.abs() > T_CAP {
                    break;
                }
                let Some((x, w)) = map(t) else { break };
                if w == 0.0 || !w.is_finite() || !x.is_finite() {
                    break;
                }
                let v = f(x);
                *evals += 1;
                let mag = v.magnitude() * w.abs();
                if !mag.is_finite() {
                    return Err(Error::convergence(
                        format!("non-finite integrand at node x = {x:e}"),
                        None,
                    ));
                }
                acc.add_scaled(w, &v);
                if mag > *peak {
                    *peak = mag;
                }
                if t.abs() > 1.0 && mag <= 1e-20 * *peak {
                    quiet += 1;
                    if quiet >= 3 {
                        break;
                    }
                } else {
                    quiet = 0;
                }
                k += stride;
            }
        }
        Ok(())
    };

    level_sum(h, 1, 1, &mut peak, &mut evals, &mut sum)?;
    let mut estimate = sum.clone();
    scale(&mut estimate, h);

    let mut last_diff = f64::INFINITY;
    for level in 1..=opts.max_levels {
        h *= 0.5;
        level_sum(h, 1, 2, &mut peak, &mut evals, &mut sum)?;
        let mut next = sum.clone();
        scale(&mut next, h);
        let diff = next.distance(&estimate);
        let target = opts.abs_tol.max(opts.rel_tol * next.magnitude());
        estimate = next;
        last_diff = diff;
        if level >= opts.min_levels && diff <= target {
            return Ok(SeriesResult {
                value: estimate,
                abs_error_estimate: diff,
                terms_used: evals,
            });
        }
        if evals > opts.max_evals {
            break;
        }
    }
    Err(Error::Convergence {
        what: format!("double-exponential quadrature stalled, last level change {last_diff:e}"),
        partial: Some(estimate.magnitude()),
    })
}

fn scale<T: QuadValue>(v: &mut T, h: f64) {
    let copy = v.clone();
    let mut out = v.zero_like();
    out.add_scaled(h, &copy);
    *v = out;
}

/// `∫_{-∞}^{∞} f(x) dx` with `x = scale·sinh(π/2·sinh t)`.
pub fn sinh_sinh<T, F>(f: F, scale: f64, opts: &QuadOptions) -> Result<SeriesResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    de_core(
        f,
        |t| {
            let u = FRAC_PI_2 * t.sinh();
            Some((scale * u.sinh(), scale * FRAC_PI_2 * t.cosh() * u.cosh()))
        },
        opts,
    )
}

/// `∫_0^∞ f(x) dx` with `x = scale·exp(π/2·sinh t)`.
pub fn exp_sinh<T, F>(f: F, scale: f64, opts: &QuadOptions) -> Result<SeriesResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    de_core(
        f,
        |t| {
            let u = FRAC_PI_2 * t.sinh();
            if u < -700.0 {
                return None;
            }
            let x = scale * u.exp();
            Some((x, FRAC_PI_2 * t.cosh() * x))
        },
        opts,
    )
}

/// `∫_a^b f(x) dx`; nodes never land on the endpoints.
pub fn tanh_sinh<T, F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<SeriesResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("tanh-sinh needs a finite a < b, got [{a}, {b}]")));
    }
    let len = b - a;
    de_core(
        f,
        move |t| {
            let u = FRAC_PI_2 * t.sinh();
            let c = u.cosh();
            let w = len * 0.5 * FRAC_PI_2 * t.cosh() / (c * c);
            // distance from the nearer endpoint, computed without cancellation
            let x = if u < 0.0 {
                a + len / (1.0 + (-2.0 * u).exp())
            } else {
                b - len / (1.0 + (2.0 * u).exp())
            };
            if x <= a || x >= b {
                return None;
            }
            Some((x, w))
        },
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_over_the_line() {
        let r: SeriesResult<f64> =
            sinh_sinh(|x| (-x * x).exp(), 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn exponential_moments() {
        // ∫ x^5 e^{-x} dx = 120
        let r: SeriesResult<f64> =
            exp_sinh(|x| x.powi(5) * (-x).exp(), 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value - 120.0).abs() < 1e-10);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let r: SeriesResult<f64> =
            tanh_sinh(|x| 1.0 / x.sqrt(), 0.0, 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn complex_and_vector_values() {
        let r: SeriesResult<Complex64> = sinh_sinh(
            |x| Complex64::new(0.0, x).exp() * (-x * x).exp(),
            1.0,
            &QuadOptions::default(),
        )
        .unwrap();
        let exact = std::f64::consts::PI.sqrt() * (-0.25f64).exp();
        assert!((r.value.re - exact).abs() < 1e-12);
        assert!(r.value.im.abs() < 1e-12);

        let r: SeriesResult<Vec<f64>> = exp_sinh(
            |x| vec![(-x).exp(), x * (-x).exp()],
            1.0,
            &QuadOptions::default(),
        )
        .unwrap();
        assert!((r.value[0] - 1.0).abs() < 1e-11 && (r.value[1] - 1.0).abs() < 1e-11);
    }

    #[test]
    fn rejects_reversed_interval() {
        assert!(tanh_sinh(|x: f64| x, 1.0, 0.0, &QuadOptions::default()).is_err());
    }
}
