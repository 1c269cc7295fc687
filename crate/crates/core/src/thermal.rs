//! Canonical ensemble over the photon-added Fock labels:
//! `ρ = Z^{-1} Σ_n e^{-β e_n} |n+p⟩⟨n+p|`.
//!
//! Every quantity is available as a direct Boltzmann sum. The P-function is
//! the Meijer G quotient `P(x) = n̄^{-1} λ^p h_p(λx)/h_p(x)` with
//! `λ = (n̄+1)/n̄` and `n̄ = 1/(e^β - 1)`. Its diagonal is the geometric
//! distribution `(n̄+1)^{-1} (n̄/(n̄+1))^n`, which is the Boltzmann
//! distribution only when `e_n = n`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::MomentProblem;
use crate::quad::{tanh_sinh, QuadOptions};
use crate::specfun::eval_pfq;
use crate::states::{ln_k_np, log_add, radial_extent, Sector, DEFAULT_TAIL_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalSpec {
    pub beta: f64,
    pub sector: Sector,
}

impl ThermalSpec {
    pub fn new(beta: f64, sector: Sector) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::domain(format!("β must be positive and finite, got {beta}")));
        }
        Ok(ThermalSpec { beta, sector })
    }

    /// `n̄ = 1/(e^β - 1)`.
    pub fn nbar(&self) -> f64 {
        1.0 / self.beta.exp_m1()
    }

    fn e_n(&self, n: u64) -> f64 {
        self.sector.family.e_n(self.sector.m, n)
    }

    /// `-β (e_n - e_{n-1})`, the log ratio of successive Boltzmann factors.
    fn ln_step(&self, n: u64) -> f64 {
        -self.beta * (self.e_n(n) - self.e_n(n - 1))
    }
}

/// `ln e^{-β e_n}` for `n = 0, 1, …` until the tail drops below `tol` of the sum.
fn ln_boltzmann_table(t: &ThermalSpec, tol: f64) -> (Vec<f64>, f64) {
    let mut ln_terms = vec![0.0];
    let mut ln_sum = 0.0;
    let mut current = 0.0;
    let mut n = 1;
    loop {
        current += t.ln_step(n);
        ln_terms.push(current);
        ln_sum = log_add(ln_sum, current);
        // the step ratio never grows, so the tail is below a geometric series
        let next = t.ln_step(n + 1);
        let ln_tail = current + next - (-next.exp()).ln_1p();
        if ln_tail - ln_sum < tol.ln() {
            return (ln_terms, ln_sum);
        }
        n += 1;
    }
}

/// `Z = Σ_n e^{-β e_n}`; `n̄ + 1` in closed form when `e_n = n`.
pub fn partition_function(t: &ThermalSpec) -> f64 {
    if t.sector.family.is_linear() {
        return t.nbar() + 1.0;
    }
    ln_boltzmann_table(t, DEFAULT_TAIL_TOL).1.exp()
}

/// Normalized diagonal `e^{-β e_n}/Z`.
pub fn boltzmann_weights(t: &ThermalSpec) -> Vec<f64> {
    let (ln_terms, ln_sum) = ln_boltzmann_table(t, DEFAULT_TAIL_TOL);
    ln_terms.iter().map(|l| (l - ln_sum).exp()).collect()
}

/// `(n̄+1)^{-1} (n̄/(n̄+1))^n`, the diagonal reproduced by [`p_function`].
pub fn geometric_weight(t: &ThermalSpec, n: u64) -> f64 {
    let nb = t.nbar();
    (nb / (nb + 1.0)).powi(n as i32) / (nb + 1.0)
}

/// `ln Σ_n x^n e^{-β e_n} / |K_n^p|²`.
fn ln_thermal_sum(t: &ThermalSpec, x: f64) -> Result<f64> {
    Ok(t.sector
        .terms(x.ln(), DEFAULT_TAIL_TOL, &|n| t.ln_step(n))?
        .ln_sum)
}

/// `⟨z|ρ|z⟩ = N_p² Z^{-1} Σ_n |z|^{2n} e^{-β e_n} / |K_n^p|²`.
pub fn husimi_q(t: &ThermalSpec, z: Complex64) -> Result<f64> {
    let x = z.norm_sqr();
    let ln = ln_thermal_sum(t, x)? - t.sector.ln_norm_sum(x)? - partition_function(t).ln();
    Ok(ln.exp())
}

/// `(n̄+1) ₁F₁(p+1; 1; |cz|² e^{-β}) / ₁F₁(p+1; 1; |cz|²)`, the Hermite quotient as printed.
///
/// It equals `Z²` times [`husimi_q`]; the quadratic families have no closed form here.
pub fn husimi_q_closed(t: &ThermalSpec, z: Complex64) -> Result<f64> {
    if !t.sector.family.is_linear() {
        return Err(Error::domain(
            "the Husimi quotient has a closed form only for e_n = n",
        ));
    }
    let pf = t.sector.p as f64;
    let y = t.sector.f.scale().powi(2) * z.norm_sqr();
    let num = eval_pfq(&[pf + 1.0], &[1.0], y * (-t.beta).exp())?.value;
    let den = eval_pfq(&[pf + 1.0], &[1.0], y)?.value;
    Ok((t.nbar() + 1.0) * num / den)
}

/// Evaluates P-functions for one ensemble; holds the Meijer template.
#[derive(Debug, Clone)]
pub struct PFunction {
    thermal: ThermalSpec,
    problem: MomentProblem,
}

impl PFunction {
    pub fn new(t: &ThermalSpec) -> Result<Self> {
        Ok(PFunction {
            thermal: *t,
            problem: MomentProblem::new(t.sector)?,
        })
    }

    fn lambda(&self) -> f64 {
        1.0 + 1.0 / self.thermal.nbar()
    }

    pub fn ln_value(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::domain(format!("P-function needs x > 0, got {x}")));
        }
        let l = self.lambda();
        let pf = self.thermal.sector.p as f64;
        Ok(-self.thermal.nbar().ln() + pf * l.ln() + self.problem.ln_h(l * x)?
            - self.problem.ln_h(x)?)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.ln_value(x)?.exp())
    }
}

/// `P(|z|²)` from the Meijer G quotient.
pub fn p_function(t: &ThermalSpec, z: Complex64) -> Result<f64> {
    PFunction::new(t)?.value(z.norm_sqr())
}

/// `∫_0^∞ exp(ln_f(x)) dx` with the range cut where the mass has fallen off.
fn radial_integral(ln_f: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
    let profile = |x: f64| ln_f(x).map(|v| v + x.ln());
    let x_max = radial_extent(&profile)?;
    let mut failure = None;
    let r = tanh_sinh(
        |x| match ln_f(x) {
            Ok(v) => v.exp(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        x_max,
        &QuadOptions::with_rel_tol(1e-10),
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(r.value),
    }
}

/// `∫ d²z ω_p ⟨z|ρ|z⟩`, which is `Tr ρ`.
pub fn husimi_trace(t: &ThermalSpec) -> Result<f64> {
    let problem = MomentProblem::new(t.sector)?;
    let pf = t.sector.p as f64;
    let ln_z = partition_function(t).ln();
    // π ω_p ⟨z|ρ|z⟩ = x^p g_p(x) Σ_n x^n e^{-β e_n}/|K_n|² / Z
    radial_integral(&|x| Ok(pf * x.ln() + problem.ln_g(x)? + ln_thermal_sum(t, x)? - ln_z))
}

/// `∫ d²z ω_p P`.
pub fn p_normalization(t: &ThermalSpec) -> Result<f64> {
    let pfun = PFunction::new(t)?;
    radial_integral(&|x| Ok(PI.ln() + pfun.problem.ln_weight(x)? + pfun.ln_value(x)?))
}

/// `∫ d²z ω_p P |⟨n+p|z⟩|²`, the `n`-th diagonal entry of the P-representation.
pub fn p_diagonal(t: &ThermalSpec, n: u64) -> Result<f64> {
    let pfun = PFunction::new(t)?;
    let s = &t.sector;
    let ln_k = ln_k_np(&s.family, &s.f, s.m, s.p, n)?.ln_abs;
    let e = (n + s.p) as f64;
    // π ω_p N_p² = x^p g_p
    radial_integral(&|x| Ok(e * x.ln() + pfun.problem.ln_g(x)? + pfun.ln_value(x)? - 2.0 * ln_k))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalMoments {
    pub mean: f64,
    pub mean2: f64,
    pub g2: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalStats {
    /// Traces `Σ_n w_n (m+n+p)^k` with the Boltzmann weights.
    pub direct: ThermalMoments,
    pub variance: f64,
    /// The printed closed expressions in `n̄`.
    pub closed: ThermalMoments,
    /// `|Q_closed - Q_direct|`.
    pub q_discrepancy: f64,
}

/// Closed thermal moments as printed, in terms of `n̄` and `M = m + p`.
///
/// `⟨N⟩ = M Σ (1 + n/(M+1)) q^n / (n̄+1)` and `⟨N²⟩` with the bracket squared,
/// `q = n̄/(n̄+1)`, summed in closed form; `g²` and `Q` are the printed quotients.
pub fn thermal_stats_closed(t: &ThermalSpec) -> ThermalMoments {
    let nb = t.nbar();
    let mp = t.sector.base();
    let mean = mp * (1.0 + nb / (mp + 1.0));
    let mean2 = mp * mp
        * (1.0 + 2.0 * nb / (mp + 1.0) + nb * (2.0 * nb + 1.0) / (mp + 1.0).powi(2));
    let g2 = 1.0 - ((mp + 1.0).powi(2) + nb - nb * nb * mp) / (mp * (mp + 1.0 + nb).powi(2));
    let q = (nb * nb * mp - ((mp + 1.0).powi(2) + nb)) / ((mp + 1.0) * (mp + 1.0 + nb));
    ThermalMoments { mean, mean2, g2, q }
}

pub fn thermal_stats(t: &ThermalSpec) -> ThermalStats {
    let w = boltzmann_weights(t);
    let base = t.sector.base();
    let level = |n: usize| base + n as f64;
    let mean: f64 = w.iter().enumerate().map(|(n, w)| w * level(n)).sum();
    let mean2: f64 = w.iter().enumerate().map(|(n, w)| w * level(n).powi(2)).sum();
    let variance: f64 = w.iter().enumerate().map(|(n, w)| w * (level(n) - mean).powi(2)).sum();
    let direct = ThermalMoments {
        mean,
        mean2,
        g2: (mean2 - mean) / (mean * mean),
        q: variance / mean - 1.0,
    };
    let closed = thermal_stats_closed(t);
    ThermalStats {
        direct,
        variance,
        closed,
        q_discrepancy: (closed.q - direct.q).abs(),
    }
}
