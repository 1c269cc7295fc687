//! Photon statistics of a photon-added state: number moments, Mandel `Q`,
//! `g²`, the number distribution and the signal-to-noise ratio.
//!
//! Every quantity has a series route over the state's amplitudes and a closed
//! route through generalized hypergeometric functions. With `M = m + p` and
//! `A = 2m + μ` the closed route uses
//!
//! | sector | `F_lo` | `F_mid` | `F_hi` |
//! |--------|--------|---------|--------|
//! | Hermite | ₁F₁(1+p; 1) | ₂F₂(1+p, M+1; 1, M) | ₃F₃(1+p, M+1, M+1; 1, M, M) |
//! | Jacobi, const | ₂F₃(1+p, A+p; 1, A, A) | ₃F₄ | ₄F₅ |
//! | Jacobi, √ξ | ₃F₃(1+p, A+p, m+ν; 1, A, A) | ₄F₄ | ₅F₅ |
//!
//! where each step up appends `M+1` to the upper and `M` to the lower list.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::FChoice;
use crate::specfun::eval_pfq_tol;
use crate::states::{build_state, StateSpec, DEFAULT_TAIL_TOL};

/// Agreement demanded between the two routes.
pub const DUAL_ROUTE_TOL: f64 = 1e-9;

/// Series truncation for the closed forms; below rounding, since `Q` and `g²`
/// difference the three values.
const CLOSED_PFQ_TOL: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsReport {
    pub mean_n: f64,
    pub mean_n2: f64,
    pub variance: f64,
    pub mandel_q: f64,
    pub g2: f64,
    /// `(⟨N⟩ - p)/ΔN`; `NaN` at zero variance.
    pub snr: f64,
    /// `(⟨N⟩ - m - p)/ΔN`.
    pub snr_alt: f64,
    pub method: Method,
}

impl StatsReport {
    fn from_moments(spec: &StateSpec, mean_n: f64, mean_n2: f64, variance: f64, method: Method) -> Self {
        let pf = spec.p as f64;
        let base = (spec.m + spec.p) as f64;
        let sd = variance.sqrt();
        let (snr, snr_alt) = if variance > 0.0 {
            ((mean_n - pf) / sd, (mean_n - base) / sd)
        } else {
            (f64::NAN, f64::NAN)
        };
        StatsReport {
            mean_n,
            mean_n2,
            variance,
            mandel_q: variance / mean_n - 1.0,
            g2: (mean_n2 - mean_n) / (mean_n * mean_n),
            snr,
            snr_alt,
            method,
        }
    }
}

/// The three closed hypergeometric values `F_lo`, `F_mid`, `F_hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForms {
    pub f_lo: f64,
    pub f_mid: f64,
    pub f_hi: f64,
}

/// Parameter lists of `F_lo`, `F_mid`, `F_hi` and the argument.
pub fn closed_form_params(spec: &StateSpec) -> [(Vec<f64>, Vec<f64>); 3] {
    let pf = spec.p as f64;
    let mp = (spec.m + spec.p) as f64;
    let (lo_a, lo_b) = if spec.family.is_linear() {
        (vec![1.0 + pf], vec![1.0])
    } else {
        let a = 2.0 * spec.m as f64 + spec.family.mu();
        match spec.f {
            FChoice::Constant(_) => (vec![1.0 + pf, a + pf], vec![1.0, a, a]),
            FChoice::SqrtLinear => (
                vec![1.0 + pf, a + pf, spec.m as f64 + spec.family.nu()],
                vec![1.0, a, a],
            ),
        }
    };
    let step = |a: &[f64], b: &[f64]| {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        a.push(mp + 1.0);
        b.push(mp);
        (a, b)
    };
    let mid = step(&lo_a, &lo_b);
    let hi = step(&mid.0, &mid.1);
    [(lo_a, lo_b), mid, hi]
}

fn closed_argument(spec: &StateSpec) -> f64 {
    match spec.f {
        FChoice::Constant(c) => c * c * spec.x(),
        FChoice::SqrtLinear => spec.x(),
    }
}

/// Evaluates `F_lo`, `F_mid`, `F_hi`; needs `m + p ≥ 1`.
pub fn closed_forms(spec: &StateSpec) -> Result<ClosedForms> {
    if spec.m + spec.p == 0 {
        return Err(Error::domain(
            "closed forms carry a lower parameter m + p, which vanishes here",
        ));
    }
    let x = closed_argument(spec);
    let [lo, mid, hi] = closed_form_params(spec);
    Ok(ClosedForms {
        f_lo: eval_pfq_tol(&lo.0, &lo.1, x, CLOSED_PFQ_TOL)?.value,
        f_mid: eval_pfq_tol(&mid.0, &mid.1, x, CLOSED_PFQ_TOL)?.value,
        f_hi: eval_pfq_tol(&hi.0, &hi.1, x, CLOSED_PFQ_TOL)?.value,
    })
}

fn fock_limit(spec: &StateSpec, method: Method) -> StatsReport {
    let base = (spec.m + spec.p) as f64;
    StatsReport::from_moments(spec, base, base * base, 0.0, method)
}

/// Moments from the amplitudes, with the variance as a central sum.
pub fn stats_series(spec: &StateSpec) -> Result<StatsReport> {
    if spec.x() == 0.0 {
        return Ok(fock_limit(spec, Method::Series));
    }
    let base = (spec.m + spec.p) as f64;
    let weights = pnd_weights(spec)?;
    let (mut mean, mut mean2) = (0.0, 0.0);
    for (n, w) in weights.iter().enumerate() {
        let e = base + n as f64;
        mean += w * e;
        mean2 += w * e * e;
    }
    let variance: f64 = weights
        .iter()
        .enumerate()
        .map(|(n, w)| w * (base + n as f64 - mean).powi(2))
        .sum();
    Ok(StatsReport::from_moments(spec, mean, mean2, variance, Method::Series))
}

/// Moments and derived quantities from the closed hypergeometric quotients.
///
/// `Q`, `g²` and the SNR use the quotient formulas as written, not the moments.
pub fn stats_closed(spec: &StateSpec) -> Result<StatsReport> {
    let cf = closed_forms(spec)?;
    let mp = (spec.m + spec.p) as f64;
    let pf = spec.p as f64;
    let ClosedForms { f_lo, f_mid, f_hi } = cf;
    let mean_n = mp * f_mid / f_lo;
    let mean_n2 = mp * mp * f_hi / f_lo;
    let mandel_q = mp * (f_hi / f_mid - f_mid / f_lo) - 1.0;
    let g2 = f_lo * (mp * f_hi - f_mid) / (mp * f_mid * f_mid);
    let root = (f_hi * f_lo - f_mid * f_mid).sqrt();
    let (snr, snr_alt) = if root > 0.0 {
        ((mp * f_mid - pf * f_lo) / (mp * root), (f_mid - f_lo) / root)
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(StatsReport {
        mean_n,
        mean_n2,
        variance: mean_n2 - mean_n * mean_n,
        mandel_q,
        g2,
        snr,
        snr_alt,
        method: Method::ClosedForm,
    })
}

/// Relative disagreement between the routes.
///
/// `Q` is compared through `Q + 1 = (ΔN)²/⟨N⟩`, the quantity both routes
/// actually compute, so that Poissonian states do not divide by zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualRouteReport {
    pub series: StatsReport,
    pub closed: StatsReport,
    pub mean_n: f64,
    pub mean_n2: f64,
    pub mandel_q: f64,
    pub g2: f64,
}

impl DualRouteReport {
    pub fn max_rel_error(&self) -> f64 {
        self.mean_n.max(self.mean_n2).max(self.mandel_q).max(self.g2)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

pub fn dual_route(spec: &StateSpec) -> Result<DualRouteReport> {
    let series = stats_series(spec)?;
    let closed = stats_closed(spec)?;
    Ok(DualRouteReport {
        series,
        closed,
        mean_n: rel(closed.mean_n, series.mean_n),
        mean_n2: rel(closed.mean_n2, series.mean_n2),
        mandel_q: rel(closed.mandel_q + 1.0, series.mandel_q + 1.0),
        g2: rel(closed.g2, series.g2),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberMoments {
    pub mean_n: f64,
    pub mean_n2: f64,
    /// Relative disagreement of the closed route, `None` when it was unavailable.
    pub closed_disagreement: Option<f64>,
    /// Set when the closed route failed and only the series was used.
    pub fallback: bool,
}

/// `⟨N_m⟩` and `⟨N_m²⟩` by both routes; a disagreement above [`DUAL_ROUTE_TOL`] is an error.
pub fn number_moments(spec: &StateSpec) -> Result<NumberMoments> {
    let s = stats_series(spec)?;
    match stats_closed(spec) {
        Ok(c) => {
            let d = rel(c.mean_n, s.mean_n).max(rel(c.mean_n2, s.mean_n2));
            if d > DUAL_ROUTE_TOL {
                return Err(Error::convergence(
                    format!("series and closed number moments disagree by {d:e}"),
                    Some(s.mean_n),
                ));
            }
            Ok(NumberMoments {
                mean_n: s.mean_n,
                mean_n2: s.mean_n2,
                closed_disagreement: Some(d),
                fallback: false,
            })
        }
        Err(_) => Ok(NumberMoments {
            mean_n: s.mean_n,
            mean_n2: s.mean_n2,
            closed_disagreement: None,
            fallback: true,
        }),
    }
}

fn positive_mean(r: &StatsReport) -> Result<()> {
    if r.mean_n > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("⟨N⟩ vanishes; Q and g² are undefined"))
    }
}

pub fn mandel_q(spec: &StateSpec) -> Result<f64> {
    let r = stats_series(spec)?;
    positive_mean(&r)?;
    Ok(r.mandel_q)
}

pub fn g2(spec: &StateSpec) -> Result<f64> {
    let r = stats_series(spec)?;
    positive_mean(&r)?;
    Ok(r.g2)
}

/// `|amplitude_n|²` for the labels `p, p+1, …` of the built state.
pub fn pnd_weights(spec: &StateSpec) -> Result<Vec<f64>> {
    Ok(build_state(spec, DEFAULT_TAIL_TOL)?
        .amplitudes
        .iter()
        .map(Complex64::norm_sqr)
        .collect())
}

/// Probability of `n` quanta above the `m`-ground; zero for `n < p`.
pub fn pnd(spec: &StateSpec, n: u64) -> Result<f64> {
    if n < spec.p {
        return Ok(0.0);
    }
    Ok(pnd_weights(spec)?.get((n - spec.p) as usize).copied().unwrap_or(0.0))
}

/// `P_n` for `n = 0..=n_max`.
pub fn pnd_table(spec: &StateSpec, n_max: u64) -> Result<Vec<f64>> {
    let w = pnd_weights(spec)?;
    Ok((0..=n_max)
        .map(|n| {
            if n < spec.p {
                0.0
            } else {
                w.get((n - spec.p) as usize).copied().unwrap_or(0.0)
            }
        })
        .collect())
}

fn checked_snr(r: &StatsReport) -> Result<&StatsReport> {
    if r.variance > 0.0 {
        Ok(r)
    } else {
        Err(Error::domain("SNR needs a positive number variance"))
    }
}

/// `(⟨N⟩ - p)/ΔN`.
pub fn snr(spec: &StateSpec) -> Result<f64> {
    Ok(checked_snr(&stats_series(spec)?)?.snr)
}

/// `(⟨N⟩ - m - p)/ΔN`.
pub fn snr_alt(spec: &StateSpec) -> Result<f64> {
    Ok(checked_snr(&stats_series(spec)?)?.snr_alt)
}

/// SNR relative to the state without added quanta at the same `z` and `m`.
pub fn snr_ratio(spec: &StateSpec) -> Result<f64> {
    if spec.p == 0 {
        snr(spec)?;
        return Ok(1.0);
    }
    Ok(snr(spec)? / snr(&spec.with_p(0))?)
}
