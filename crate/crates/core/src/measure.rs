//! Overcompleteness measure: the Stieltjes moment problem `∫ x^{n+p} g_p(x) dx = |K_n^p|²`,
//! its solution as a Meijer G-function and the weight `ω_p = x^p g_p / (π N_p²)`.
//!
//! | family | `h_p` | `h_p / g_p` |
//! |--------|-------|-------------|
//! | Hermite, Laguerre | `G^{2,0}_{1,2}(c²x \| 0; -p, -p)` | `\|c\|^{-2(p+1)}` |
//! | Jacobi, const `f` | `G^{4,0}_{2,4}(c²x \| 0, A-1; -p, -p, A-1-p, A-1-p)` | `Γ(A) \|c\|^{-2(p+1)}` |
//! | Jacobi, √ξ `f` | `G^{4,0}_{3,4}(x \| 0, A-1, m+ν-1-p; -p, -p, A-1-p, A-1-p)` | `Γ(A)/Γ(m+ν)` |
//!
//! with `A = 2m + μ`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::FChoice;
use crate::quad::{tanh_sinh, QuadOptions};
use crate::specfun::{meijer_g_log, mellin_moment, GParams};
use crate::states::{ln_k_np, radial_extent, Sector};

/// Moment data and Meijer G template for one sector.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentProblem {
    pub sector: Sector,
    /// `h_p` parameters with the argument left at 1.
    pub g_params: GParams,
    /// `ln(h_p / g_p)`.
    pub ln_prefactor: f64,
    /// `h_p(x) = G(arg_scale · x)`.
    pub arg_scale: f64,
}

impl MomentProblem {
    pub fn new(sector: Sector) -> Result<Self> {
        let pf = sector.p as f64;
        let c = sector.f.scale().abs();
        let (g_params, ln_prefactor, arg_scale) = if sector.family.is_linear() {
            (
                GParams::new(2, 0, vec![0.0], vec![-pf, -pf], 1.0)?,
                -2.0 * (pf + 1.0) * c.ln(),
                c * c,
            )
        } else {
            let a = sector.a_param();
            let lg_a = crate::specfun::log_gamma(a)?;
            match sector.f {
                FChoice::Constant(_) => (
                    GParams::new(
                        4,
                        0,
                        vec![0.0, a - 1.0],
                        vec![-pf, -pf, a - 1.0 - pf, a - 1.0 - pf],
                        1.0,
                    )?,
                    lg_a - 2.0 * (pf + 1.0) * c.ln(),
                    c * c,
                ),
                FChoice::SqrtLinear => {
                    let b = sector.m as f64 + sector.family.nu();
                    (
                        GParams::new(
                            4,
                            0,
                            vec![0.0, a - 1.0, b - 1.0 - pf],
                            vec![-pf, -pf, a - 1.0 - pf, a - 1.0 - pf],
                            1.0,
                        )?,
                        lg_a - crate::specfun::log_gamma(b)?,
                        1.0,
                    )
                }
            }
        };
        Ok(MomentProblem {
            sector,
            g_params,
            ln_prefactor,
            arg_scale,
        })
    }

    /// `|K_n^p(m)|²`.
    pub fn moment(&self, n: u64) -> Result<f64> {
        Ok(self.ln_moment(n)?.exp())
    }

    pub fn ln_moment(&self, n: u64) -> Result<f64> {
        let s = &self.sector;
        Ok(2.0 * ln_k_np(&s.family, &s.f, s.m, s.p, n)?.ln_abs)
    }

    /// `ln h_p(x)`; `h_p` is positive on the whole half-line.
    pub fn ln_h(&self, x: f64) -> Result<f64> {
        let v = meijer_g_log(&self.g_params.with_argument(self.arg_scale * x)?)?;
        if v.sign <= 0.0 {
            return Err(Error::convergence(
                format!("h_p evaluated to a nonpositive value at x = {x}"),
                Some(v.value()),
            ));
        }
        Ok(v.ln_abs)
    }

    pub fn h(&self, x: f64) -> Result<f64> {
        Ok(self.ln_h(x)?.exp())
    }

    pub fn ln_g(&self, x: f64) -> Result<f64> {
        Ok(self.ln_h(x)? - self.ln_prefactor)
    }

    pub fn g(&self, x: f64) -> Result<f64> {
        Ok(self.ln_g(x)?.exp())
    }

    /// `ln(x^α g_p(x))` through the shifted parameter lists of `x^α G(x)`.
    pub fn ln_shifted_g(&self, alpha: f64, x: f64) -> Result<f64> {
        let y = self.arg_scale * x;
        let v = meijer_g_log(&self.g_params.shifted(alpha)?.with_argument(y)?)?;
        if v.sign <= 0.0 {
            return Err(Error::convergence(
                format!("x^α g_p evaluated to a nonpositive value at x = {x}"),
                Some(v.value()),
            ));
        }
        Ok(v.ln_abs - alpha * self.arg_scale.ln() - self.ln_prefactor)
    }

    /// `ln ω_p(x)`.
    pub fn ln_weight(&self, x: f64) -> Result<f64> {
        let pf = self.sector.p as f64;
        Ok(pf * x.ln() + self.ln_g(x)? + self.sector.ln_norm_sum(x)? - PI.ln())
    }

    pub fn weight(&self, x: f64) -> Result<f64> {
        Ok(self.ln_weight(x)?.exp())
    }

    /// Closed Mellin transform `∫ x^{s-1} h_p(x) dx`, including the argument scale.
    pub fn mellin_h(&self, s: f64) -> Result<f64> {
        Ok(mellin_moment(&self.g_params, s)? * self.arg_scale.powf(-s))
    }
}

/// `h_p(x)` of the sector's moment problem.
pub fn h_function(sector: &Sector, x: f64) -> Result<f64> {
    MomentProblem::new(*sector)?.h(x)
}

/// `ω_p(x)` of the sector.
pub fn weight(sector: &Sector, x: f64) -> Result<f64> {
    MomentProblem::new(*sector)?.weight(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    /// Relative error of the quadrature moment against `|K_n^p|²`, for `n = 0..=n_max`.
    pub rel_errors: Vec<f64>,
    /// Relative error of the closed Mellin transform against `|K_n^p|²`.
    pub mellin_rel_errors: Vec<f64>,
    pub max_rel_error: f64,
    pub evaluations: usize,
}

impl MomentReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_rel_error < tol && self.mellin_rel_errors.iter().all(|e| *e < tol)
    }
}

/// `∫_0^X x^{n+p} g_p(x) dx` against `|K_n^p|²` for `n = 0..=n_max`.
///
/// `X` sits where the integrand has fallen by `e^{-40}` from its peak; the
/// integrand is formed by shifting the G parameters rather than by
/// multiplying samples.
pub fn verify_moments(problem: &MomentProblem, n_max: u64) -> Result<MomentReport> {
    let pf = problem.sector.p as f64;
    let mut rel_errors = Vec::new();
    let mut mellin_rel_errors = Vec::new();
    let mut evaluations = 0;
    for n in 0..=n_max {
        let alpha = n as f64 + pf;
        let exact = problem.moment(n)?;
        let profile = |x: f64| problem.ln_shifted_g(alpha, x).map(|v| v + x.ln());
        let x_max = radial_extent(&profile)?;
        let mut failure = None;
        let mut count = 0usize;
        let r = tanh_sinh(
            |x| {
                count += 1;
                match problem.ln_shifted_g(alpha, x) {
                    Ok(v) => v.exp(),
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            },
            0.0,
            x_max,
            &QuadOptions::with_rel_tol(1e-9),
        )
        .map_err(|e| Error::convergence(format!("moment n = {n}: {e}"), None))?;
        if let Some(e) = failure {
            return Err(Error::convergence(format!("moment n = {n}: {e}"), None));
        }
        evaluations += count;
        rel_errors.push((r.value - exact).abs() / exact);
        let mellin = problem.mellin_h(alpha + 1.0)? * (-problem.ln_prefactor).exp();
        mellin_rel_errors.push((mellin - exact).abs() / exact);
    }
    let max_rel_error = rel_errors.iter().cloned().fold(0.0, f64::max);
    Ok(MomentReport {
        rel_errors,
        mellin_rel_errors,
        max_rel_error,
        evaluations,
    })
}

/// Relative error between quadrature of `x^{s-1} h_p` and the closed Mellin transform.
pub fn mellin_consistency(problem: &MomentProblem, s_values: &[f64]) -> Result<Vec<f64>> {
    s_values
        .iter()
        .map(|&s| {
            let exact = problem.mellin_h(s)?;
            let profile = |x: f64| problem.ln_h(x).map(|v| v + s * x.ln());
            let x_max = radial_extent(&profile)?;
            let r = tanh_sinh(
                |x| {
                    problem
                        .ln_h(x)
                        .map(|v| (v + (s - 1.0) * x.ln()).exp())
                        .unwrap_or(f64::NAN)
                },
                0.0,
                x_max,
                &QuadOptions::with_rel_tol(1e-9),
            )?;
            Ok((r.value - exact).abs() / exact.abs())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    /// `M_{nn′}` for `n, n′ < basis_size`, labels relative to `p`.
    pub matrix: DMatrix<Complex64>,
    pub max_diagonal_deviation: f64,
    pub max_off_diagonal: f64,
}

impl IdentityReport {
    pub fn passed(&self, diag_tol: f64, off_tol: f64) -> bool {
        self.max_diagonal_deviation < diag_tol && self.max_off_diagonal < off_tol
    }
}

/// `M_{nn′} = ∫ d²z ω_p ⟨n+p|z⟩⟨z|n′+p⟩` on a radial-angular grid.
///
/// The angular rule has `4·basis_size` nodes, enough to integrate the phases
/// `e^{i(n-n′)θ}` exactly; the radial rule is tanh-sinh on `(0, X)`.
pub fn resolution_of_identity_check(sector: &Sector, basis_size: usize) -> Result<IdentityReport> {
    if basis_size == 0 {
        return Err(Error::Dimension("basis must not be empty".into()));
    }
    let problem = MomentProblem::new(*sector)?;
    let pf = sector.p as f64;
    let ln_k: Vec<f64> = (0..basis_size as u64)
        .map(|n| ln_k_np(&sector.family, &sector.f, sector.m, sector.p, n).map(|v| v.ln_abs))
        .collect::<Result<_>>()?;
    let signs: Vec<f64> = (0..basis_size as u64).map(|n| sector.k_sign(n)).collect();
    let top = (basis_size - 1) as f64;
    let profile = |x: f64| Ok(problem.ln_g(x)? + (pf + top + 1.0) * x.ln());
    let x_max = radial_extent(&profile)?;
    let n_theta = 4 * basis_size;

    let mut failure = None;
    let r = tanh_sinh(
        |x| {
            let mut out = vec![Complex64::new(0.0, 0.0); basis_size * basis_size];
            // ω N² = x^p g / π; the remaining factors are the Fock amplitudes without N
            let base = match problem.ln_g(x) {
                Ok(v) => v + pf * x.ln() - PI.ln(),
                Err(e) => {
                    failure.get_or_insert(e);
                    return out;
                }
            };
            let r = x.sqrt();
            let mags: Vec<f64> = (0..basis_size)
                .map(|n| n as f64 * r.ln() - ln_k[n])
                .collect();
            for k in 0..n_theta {
                let theta = 2.0 * PI * k as f64 / n_theta as f64;
                for i in 0..basis_size {
                    for j in 0..basis_size {
                        let ln = base + mags[i] + mags[j];
                        let phase = Complex64::from_polar(1.0, (i as f64 - j as f64) * theta);
                        out[i * basis_size + j] += phase * (signs[i] * signs[j] * ln.exp());
                    }
                }
            }
            // ½ dθ with dθ = 2π / n_theta
            let scale = PI / n_theta as f64;
            out.iter_mut().for_each(|v| *v *= scale);
            out
        },
        0.0,
        x_max,
        &QuadOptions::with_rel_tol(1e-9),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let matrix = DMatrix::from_row_slice(basis_size, basis_size, &r.value);
    let mut max_diagonal_deviation: f64 = 0.0;
    let mut max_off_diagonal: f64 = 0.0;
    for i in 0..basis_size {
        for j in 0..basis_size {
            let v = matrix[(i, j)];
            if i == j {
                max_diagonal_deviation = max_diagonal_deviation.max((v - 1.0).norm());
            } else {
                max_off_diagonal = max_off_diagonal.max(v.norm());
            }
        }
    }
    Ok(IdentityReport {
        matrix,
        max_diagonal_deviation,
        max_off_diagonal,
    })
}
