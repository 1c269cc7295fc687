//! Meijer G-function of positive real argument, evaluated as a Mellin–Barnes
//! integral along a vertical line `Re s = s₀` that separates the two pole
//! families.
//!
//! ```text
//!                 1    ⌠  Π_{j<m} Γ(b_j+s) Π_{j<n} Γ(1-a_j-s)
//! G^{m,n}_{p,q} = ─── │  ──────────────────────────────────── x^{-s} ds
//!                 2πi ⌡  Π_{j≥m} Γ(1-b_j-s) Π_{j≥n} Γ(a_j+s)
//! ```
//!
//! `s₀` sits at the minimum of the integrand along the real axis inside the
//! separating window. That point is a saddle, so the integrand is largest at
//! `t = 0` on the vertical line and oscillates slowly, which keeps the
//! quadrature free of cancellation. The integrand is handled in log form so
//! Γ products far outside double range still work.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{ln_gamma_complex, ln_gamma_signed};
use super::{LogValue, SeriesResult};
use crate::error::{Error, Result};
use crate::quad::{sinh_sinh, QuadOptions};

/// Parameter lists and argument of `G^{m,n}_{p,q}(x | a; b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GParams {
    m: usize,
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    x: f64,
}

impl GParams {
    /// Validates the index signature, the separating window and decay of the
    /// integrand along vertical lines.
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>, x: f64) -> Result<Self> {
        if m > b.len() || n > a.len() {
            return Err(Error::domain(format!(
                "Meijer G indices need m <= q and n <= p, got m={m}, n={n}, p={}, q={}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::domain("Meijer G parameters must be finite"));
        }
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::domain(format!("Meijer G argument must be positive, got {x}")));
        }
        let g = GParams { m, n, a, b, x };
        let (lo, hi) = g.contour_window();
        if !(lo < hi) {
            return Err(Error::domain(format!(
                "pole families overlap: no vertical contour in ({lo}, {hi})"
            )));
        }
        if 2 * (m + n) <= g.a.len() + g.b.len() {
            return Err(Error::domain(
                "Mellin–Barnes integrand does not decay: need m + n > (p + q)/2",
            ));
        }
        Ok(g)
    }

    /// Same parameters at another argument.
    pub fn with_argument(&self, x: f64) -> Result<Self> {
        GParams::new(self.m, self.n, self.a.clone(), self.b.clone(), x)
    }

    /// Parameters of `x^α · G(x)`, i.e. every `a_j` and `b_j` shifted by `α`.
    pub fn shifted(&self, alpha: f64) -> Result<Self> {
        GParams::new(
            self.m,
            self.n,
            self.a.iter().map(|v| v + alpha).collect(),
            self.b.iter().map(|v| v + alpha).collect(),
            self.x,
        )
    }

    pub fn indices(&self) -> (usize, usize, usize, usize) {
        (self.m, self.n, self.a.len(), self.b.len())
    }

    pub fn a_params(&self) -> &[f64] {
        &self.a
    }

    pub fn b_params(&self) -> &[f64] {
        &self.b
    }

    pub fn argument(&self) -> f64 {
        self.x
    }

    /// Open interval `(max_{j<m} -b_j, min_{j<n} 1-a_j)` of admissible `Re s`.
    pub fn contour_window(&self) -> (f64, f64) {
        let lo = self.b[..self.m]
            .iter()
            .map(|b| -b)
            .fold(f64::NEG_INFINITY, f64::max);
        let hi = self.a[..self.n]
            .iter()
            .map(|a| 1.0 - a)
            .fold(f64::INFINITY, f64::min);
        (lo, hi)
    }

    /// `ln |M(s)|` and its sign for real `s`.
    fn ln_mellin_real(&self, s: f64) -> LogValue {
        let mut acc = LogValue::ONE;
        for (j, &b) in self.b.iter().enumerate() {
            let g = if j < self.m {
                ln_gamma_signed(b + s)
            } else {
                inverse(ln_gamma_signed(1.0 - b - s))
            };
            acc = acc.mul(g);
        }
        for (j, &a) in self.a.iter().enumerate() {
            let g = if j < self.n {
                ln_gamma_signed(1.0 - a - s)
            } else {
                inverse(ln_gamma_signed(a + s))
            };
            acc = acc.mul(g);
        }
        acc
    }

    /// Sum of `|ln Γ|` over all factors, the scale of rounding in `ln M`.
    fn ln_mellin_scale(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for (j, &b) in self.b.iter().enumerate() {
            let arg = if j < self.m { b + s } else { 1.0 - b - s };
            acc += ln_gamma_signed(arg).ln_abs.abs();
        }
        for (j, &a) in self.a.iter().enumerate() {
            let arg = if j < self.n { 1.0 - a - s } else { a + s };
            acc += ln_gamma_signed(arg).ln_abs.abs();
        }
        acc
    }

    fn ln_mellin_complex(&self, s: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &b) in self.b.iter().enumerate() {
            if j < self.m {
                acc += ln_gamma_complex(s + b);
            } else {
                acc -= ln_gamma_complex(one - b - s);
            }
        }
        for (j, &a) in self.a.iter().enumerate() {
            if j < self.n {
                acc += ln_gamma_complex(one - a - s);
            } else {
                acc -= ln_gamma_complex(s + a);
            }
        }
        acc
    }
}

/// `1/Γ` in log form; a pole of `Γ` gives an exact zero.
fn inverse(g: LogValue) -> LogValue {
    if g.ln_abs == f64::INFINITY {
        LogValue::ZERO
    } else {
        LogValue {
            ln_abs: -g.ln_abs,
            sign: g.sign,
        }
    }
}

/// Result of a Meijer G evaluation, kept in log form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerValue {
    pub ln_abs: f64,
    pub sign: f64,
    /// Relative error bound of the quadrature.
    pub rel_error_estimate: f64,
    /// Imaginary part of the contour integral relative to the real part.
    pub rel_imag_part: f64,
    pub contour: f64,
    pub evaluations: usize,
}

impl MeijerValue {
    pub fn value(&self) -> f64 {
        LogValue {
            ln_abs: self.ln_abs,
            sign: self.sign,
        }
        .value()
    }
}

/// Closed Γ-ratio Mellin transform `∫_0^∞ x^{s-1} G(x) dx`.
pub fn mellin_moment(params: &GParams, s: f64) -> Result<f64> {
    let (m, n) = (params.m, params.n);
    let pole = params.b[..m]
        .iter()
        .map(|b| b + s)
        .chain(params.a[..n].iter().map(|a| 1.0 - a - s))
        .find(|v| *v <= 0.0 && *v == v.floor());
    if let Some(v) = pole {
        return Err(Error::domain(format!(
            "Mellin transform has a Γ pole at s = {s} (argument {v})"
        )));
    }
    Ok(params.ln_mellin_real(s).value())
}

/// Location of the real-axis minimum of `ln M(s) - s ln x` inside the window,
/// or the window midpoint when `M` changes sign or is not finite there.
fn saddle(params: &GParams) -> f64 {
    let (lo, hi) = params.contour_window();
    let lnx = params.x.ln();
    let phi = |s: f64| {
        let v = params.ln_mellin_real(s);
        if v.sign > 0.0 && v.ln_abs.is_finite() {
            Some(v.ln_abs - s * lnx)
        } else {
            None
        }
    };

    let fallback = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => lo + 1.0,
        (false, true) => hi - 1.0,
        (false, false) => 0.0,
    };

    let grid: Vec<f64> = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => (1..200).map(|k| lo + (hi - lo) * k as f64 / 200.0).collect(),
        (true, false) => (0..=200)
            .map(|k| lo + 10f64.powf(-4.0 + 8.0 * k as f64 / 200.0))
            .collect(),
        (false, true) => (0..=200)
            .map(|k| hi - 10f64.powf(-4.0 + 8.0 * k as f64 / 200.0))
            .rev()
            .collect(),
        (false, false) => (0..=400).map(|k| -1e3 + 5.0 * k as f64).collect(),
    };
    let mut values = Vec::with_capacity(grid.len());
    for &s in &grid {
        match phi(s) {
            Some(v) => values.push(v),
            None => return fallback,
        }
    }
    let (imin, _) = values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, &v)| if v < best.1 { (i, v) } else { best });

    // golden-section refinement between the neighbours of the best node
    let mut a = if imin == 0 { 0.5 * (grid[0] + lo.max(grid[0] - 1.0)) } else { grid[imin - 1] };
    let mut b = if imin + 1 == grid.len() { grid[imin] } else { grid[imin + 1] };
    if !a.is_finite() {
        a = grid[imin] - 1.0;
    }
    if !(lo < a) {
        a = 0.5 * (lo + grid[imin]);
    }
    if !(b < hi) {
        b = 0.5 * (hi + grid[imin]);
    }
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let eval = |s: f64| phi(s).unwrap_or(f64::INFINITY);
    let (mut fc, mut fd) = (eval(c), eval(d));
    for _ in 0..60 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = eval(d);
        }
    }
    let s0 = 0.5 * (a + b);
    if s0 > lo && s0 < hi && phi(s0).is_some() {
        s0
    } else {
        fallback
    }
}

/// `G^{m,n}_{p,q}(x)` in log form with quadrature diagnostics.
pub fn meijer_g_log(params: &GParams) -> Result<MeijerValue> {
    let s0 = saddle(params);
    let lnx = params.x.ln();
    let (lo, hi) = params.contour_window();
    let l0 = params.ln_mellin_real(s0).ln_abs - s0 * lnx;

    // curvature along the real axis sets the width of the integrand in t
    let step = 1e-3f64.min(0.25 * (s0 - lo)).min(0.25 * (hi - s0));
    let curv = {
        let f = |s: f64| params.ln_mellin_real(s).ln_abs - s * lnx;
        (f(s0 + step) - 2.0 * f(s0) + f(s0 - step)) / (step * step)
    };
    let width = if curv.is_finite() && curv > 0.0 {
        (1.0 / curv.sqrt()).clamp(1e-6, 50.0)
    } else {
        1.0
    };

    // rounding in ln M grows with the size of the Γ logs once x is extreme
    let noise = 64.0 * f64::EPSILON * (params.ln_mellin_scale(s0) + (s0 * lnx).abs());
    let rel_tol = 1e-11f64.max(noise);
    let opts = QuadOptions {
        abs_tol: rel_tol * 1e-2 * width,
        rel_tol,
        max_evals: 1 << 20,
        min_levels: 3,
        max_levels: 14,
    };
    let integrand = |t: f64| {
        let s = Complex64::new(s0, t);
        (params.ln_mellin_complex(s) - s * lnx - l0).exp()
    };
    let r = sinh_sinh(integrand, width, &opts).map_err(|e| match e {
        Error::Convergence { what, partial } => Error::Convergence {
            what: format!("Meijer G contour quadrature: {what}"),
            partial: partial.map(|p| p * (l0 - (2.0 * PI).ln()).exp()),
        },
        other => other,
    })?;
    let re = r.value.re;
    if re == 0.0 {
        return Ok(MeijerValue {
            ln_abs: f64::NEG_INFINITY,
            sign: 0.0,
            rel_error_estimate: f64::INFINITY,
            rel_imag_part: r.value.im.abs(),
            contour: s0,
            evaluations: r.terms_used,
        });
    }
    Ok(MeijerValue {
        ln_abs: l0 - (2.0 * PI).ln() + re.abs().ln(),
        sign: re.signum(),
        rel_error_estimate: r.abs_error_estimate / re.abs(),
        rel_imag_part: r.value.im.abs() / re.abs(),
        contour: s0,
        evaluations: r.terms_used,
    })
}

/// `G^{m,n}_{p,q}(x)` with an absolute error estimate.
pub fn meijer_g(params: &GParams) -> Result<SeriesResult<f64>> {
    let v = meijer_g_log(params)?;
    let value = v.value();
    Ok(SeriesResult {
        value,
        abs_error_estimate: v.rel_error_estimate * value.abs(),
        terms_used: v.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::exp_sinh;
    use crate::specfun::bessel_k;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn exponential_instances() {
        for &x in &[0.05, 1.0, 3.0, 20.0] {
            let g1 = meijer_g(&GParams::new(1, 0, vec![], vec![0.0], x).unwrap()).unwrap();
            let g2 = meijer_g(&GParams::new(2, 0, vec![0.0], vec![0.0, 0.0], x).unwrap()).unwrap();
            assert!(rel(g1.value, (-x).exp()) < 1e-10, "x={x}");
            assert!(rel(g2.value, (-x).exp()) < 1e-10, "x={x}");
        }
        let g = meijer_g(&GParams::new(1, 0, vec![], vec![0.0], 1.0).unwrap()).unwrap();
        assert!(rel(g.value, 0.367_879_441_171_442_3) < 1e-10);
    }

    #[test]
    fn bessel_instance() {
        // G^{2,0}_{0,2}(x | ; ν/2, -ν/2) = 2 K_ν(2√x)
        for &nu in &[0.0, 1.0, 2.5] {
            for &x in &[0.1, 2.0, 9.0] {
                let g = meijer_g(&GParams::new(2, 0, vec![], vec![nu / 2.0, -nu / 2.0], x).unwrap())
                    .unwrap();
                let k = 2.0 * bessel_k(nu, 2.0 * x.sqrt()).unwrap();
                assert!(rel(g.value, k) < 1e-9, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn repeated_b_parameters() {
        // G^{2,0}_{1,2}(x | 0; -1, -1) has a double pole at s = 1; compare with its Mellin moments
        let base = GParams::new(2, 0, vec![0.0], vec![-1.0, -1.0], 1.0).unwrap();
        for &s in &[2.0, 3.5, 5.0] {
            let q = exp_sinh(
                |x| x.powf(s - 1.0) * meijer_g(&base.with_argument(x).unwrap()).unwrap().value,
                1.0,
                &QuadOptions::with_rel_tol(1e-9),
            )
            .unwrap();
            let exact = mellin_moment(&base, s).unwrap();
            assert!(rel(q.value, exact) < 1e-7, "s={s}: {} vs {exact}", q.value);
        }
    }

    #[test]
    fn mellin_of_exponential_kernel() {
        let p = GParams::new(1, 0, vec![], vec![0.0], 1.0).unwrap();
        assert!(rel(mellin_moment(&p, 2.0).unwrap(), 1.0) < 1e-15);
        let q = exp_sinh(
            |x| x * meijer_g(&p.with_argument(x).unwrap()).unwrap().value,
            1.0,
            &QuadOptions::with_rel_tol(1e-9),
        )
        .unwrap();
        assert!(rel(q.value, 1.0) < 1e-8);
    }

    #[test]
    fn mellin_gamma_arithmetic() {
        let herm = GParams::new(2, 0, vec![0.0], vec![-1.0, -1.0], 1.0).unwrap();
        assert!(rel(mellin_moment(&herm, 2.0).unwrap(), 1.0) < 1e-14);
        let jac = GParams::new(4, 0, vec![0.0, 3.0], vec![0.0, 0.0, 3.0, 3.0], 1.0).unwrap();
        assert!(rel(mellin_moment(&jac, 1.0).unwrap(), 6.0) < 1e-14);
        assert!(matches!(mellin_moment(&herm, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn multiplication_formula() {
        let p = GParams::new(2, 0, vec![0.5], vec![0.0, 1.0], 2.5).unwrap();
        let g = meijer_g(&p).unwrap().value;
        let shifted = meijer_g(&p.shifted(1.5).unwrap()).unwrap().value;
        assert!(rel(shifted, 2.5f64.powf(1.5) * g) < 1e-9);
    }

    #[test]
    fn imaginary_part_is_negligible() {
        let p = GParams::new(4, 0, vec![0.0, 4.0], vec![-1.0, -1.0, 3.0, 3.0], 3.0).unwrap();
        let v = meijer_g_log(&p).unwrap();
        assert!(v.rel_imag_part <= v.rel_error_estimate.max(1e-12));
        assert!(v.sign > 0.0);
    }

    #[test]
    fn constructor_errors() {
        assert!(GParams::new(3, 0, vec![], vec![0.0, 1.0], 1.0).is_err());
        assert!(GParams::new(1, 0, vec![], vec![0.0], -1.0).is_err());
        // poles of Γ(b+s) at s <= -b = 1 against Γ(1-a-s) with a = 1 at s >= 0
        assert!(GParams::new(1, 1, vec![1.0], vec![-1.0], 1.0).is_err());
        // m + n must exceed (p+q)/2
        assert!(GParams::new(1, 0, vec![0.0], vec![0.0], 1.0).is_err());
    }
}
