//! Photon-added coherent states `|z, m⟩_p = N_p Σ_n z^n / K_n^p |n+p⟩`.
//!
//! All sums over `n` go through one engine: the terms `x^n / |K_n^p|²` are
//! generated from their ratio in log form, and summation stops once the ratio
//! is below one and the geometric tail it implies is below the tolerance. For
//! the families here the ratio `x e_{n+p} f(r_{m+n+1})² / e_n²` decreases in
//! `n`, so the tail estimate is a bound.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::{FChoice, FamilyKind, FamilySpec};
use crate::measure;
use crate::quad::{tanh_sinh, QuadOptions};
use crate::specfun::{
    bessel_i, eval_pfq, eval_pfq_complex, log_gamma, LogValue,
};

/// Relative tail left out of the state series by default.
pub const DEFAULT_TAIL_TOL: f64 = 1e-17;
const MAX_TERMS: usize = 5_000_000;

/// Family, f-choice, derivative order and added photons: everything except `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub family: FamilySpec,
    pub f: FChoice,
    pub m: u64,
    pub p: u64,
}

impl Sector {
    pub fn new(family: FamilySpec, f: FChoice, m: u64, p: u64) -> Result<Self> {
        f.validate(&family, m)?;
        Ok(Sector { family, f, m, p })
    }

    pub fn with_p(&self, p: u64) -> Self {
        Sector { p, ..*self }
    }

    /// `m + p`, the lowest eigenvalue of `N_m` on the state.
    pub fn base(&self) -> f64 {
        (self.m + self.p) as f64
    }

    /// `2m + μ`, the recurring Γ argument of the quadratic families.
    pub(crate) fn a_param(&self) -> f64 {
        2.0 * self.m as f64 + self.family.mu()
    }

    /// `ln (1/|K_0^p|²) = ln ε_p`.
    pub fn ln_inv_k2_first(&self) -> f64 {
        self.family.ln_epsilon_n(self.m, self.p)
    }

    /// `ln` of `|K_{n-1}^p|² / |K_n^p|²` for `n ≥ 1`.
    pub fn ln_inv_k2_ratio(&self, n: u64) -> f64 {
        let fam = &self.family;
        let e_np = fam.e_n(self.m, n + self.p);
        let e_n = fam.e_n(self.m, n);
        let fr = match self.f {
            FChoice::Constant(c) => 2.0 * c.abs().ln(),
            FChoice::SqrtLinear => (0.5 * fam.r_k(self.m + n + 1) - 1.0).ln(),
        };
        e_np.ln() + fr - 2.0 * e_n.ln()
    }

    /// Sign of `K_n^p`; negative only for a negative constant `f` and odd `n`.
    pub fn k_sign(&self, n: u64) -> f64 {
        match self.f {
            FChoice::Constant(c) if c < 0.0 && n % 2 == 1 => -1.0,
            _ => 1.0,
        }
    }

    /// Terms `ln(s^n/|K_n^p|²) + ln_extra(n)` for `|w| = s` given as `ln s`.
    ///
    /// `ln_extra_ratio(n)` is added to the log term ratio; it must keep the
    /// ratio nonincreasing (thermal weights do).
    pub(crate) fn terms(
        &self,
        ln_s: f64,
        tol: f64,
        ln_extra_ratio: &dyn Fn(u64) -> f64,
    ) -> Result<TermTable> {
        let first = self.ln_inv_k2_first();
        let mut ln_terms = vec![first];
        if ln_s == f64::NEG_INFINITY {
            return Ok(TermTable {
                ln_terms,
                ln_max: first,
                ln_sum: first,
                tail_rel: 0.0,
            });
        }
        let mut ln_sum = first;
        let mut ln_max = first;
        let mut current = first;
        let ln_tol = tol.ln();
        let mut n = 1u64;
        loop {
            let ratio = self.ln_inv_k2_ratio(n) + ln_s + ln_extra_ratio(n);
            current += ratio;
            ln_terms.push(current);
            ln_max = ln_max.max(current);
            ln_sum = log_add(ln_sum, current);
            let next = self.ln_inv_k2_ratio(n + 1) + ln_s + ln_extra_ratio(n + 1);
            if next < 0.0 {
                let rho = next.exp();
                let ln_tail = current + next - (1.0 - rho).ln();
                if ln_tail - ln_sum < ln_tol {
                    return Ok(TermTable {
                        ln_terms,
                        ln_max,
                        ln_sum,
                        tail_rel: (ln_tail - ln_sum).exp(),
                    });
                }
            }
            if !current.is_finite() {
                return Err(Error::convergence(
                    "state series produced a non-finite term",
                    None,
                ));
            }
            n += 1;
            if n as usize > MAX_TERMS {
                return Err(Error::convergence(
                    format!("state series needs more than {MAX_TERMS} terms"),
                    Some(ln_sum),
                ));
            }
        }
    }

    /// `ln S(x)` with `S(x) = Σ x^n / |K_n^p|² = N_p(x)^{-2}`.
    pub fn ln_norm_sum(&self, x: f64) -> Result<f64> {
        Ok(self.terms(x.ln(), DEFAULT_TAIL_TOL, &|_| 0.0)?.ln_sum)
    }

    /// `S(w) = Σ w^n / (K_n^p)²` for complex `w`, as mantissa and log scale.
    pub fn norm_sum_complex(&self, w: Complex64) -> Result<LogComplex> {
        let table = self.terms(w.norm().ln(), DEFAULT_TAIL_TOL, &|_| 0.0)?;
        let arg = w.arg();
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, &lt) in table.ln_terms.iter().enumerate() {
            acc += Complex64::from_polar((lt - table.ln_max).exp(), n as f64 * arg);
        }
        Ok(LogComplex {
            mantissa: acc,
            ln_scale: table.ln_max,
        })
    }
}

/// `mantissa · exp(ln_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    pub mantissa: Complex64,
    pub ln_scale: f64,
}

impl LogComplex {
    pub fn value(&self) -> Complex64 {
        self.mantissa * self.ln_scale.exp()
    }
}

pub(crate) struct TermTable {
    pub ln_terms: Vec<f64>,
    pub ln_max: f64,
    pub ln_sum: f64,
    pub tail_rel: f64,
}

pub(crate) fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// One GPAH coherent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub z: Complex64,
    pub m: u64,
    pub p: u64,
    pub family: FamilySpec,
    pub f: FChoice,
}

impl StateSpec {
    pub fn new(z: Complex64, m: u64, p: u64, family: FamilySpec, f: FChoice) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::domain("z must be finite"));
        }
        f.validate(&family, m)?;
        Ok(StateSpec { z, m, p, family, f })
    }

    pub fn in_sector(sector: &Sector, z: Complex64) -> Result<Self> {
        Self::new(z, sector.m, sector.p, sector.family, sector.f)
    }

    pub fn sector(&self) -> Sector {
        Sector {
            family: self.family,
            f: self.f,
            m: self.m,
            p: self.p,
        }
    }

    pub fn with_z(&self, z: Complex64) -> Self {
        StateSpec { z, ..*self }
    }

    pub fn with_p(&self, p: u64) -> Self {
        StateSpec { p, ..*self }
    }

    pub fn x(&self) -> f64 {
        self.z.norm_sqr()
    }
}

/// Truncated Fock amplitudes; `amplitudes[n]` belongs to the label `n + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub amplitudes: Vec<Complex64>,
    pub offset: u64,
    /// Relative weight of the discarded tail.
    pub tail_bound: f64,
}

impl Coefficients {
    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Amplitude at an absolute Fock label; zero outside the stored range.
    pub fn at_label(&self, label: u64) -> Complex64 {
        if label < self.offset {
            return Complex64::new(0.0, 0.0);
        }
        self.amplitudes
            .get((label - self.offset) as usize)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// One past the highest stored label.
    pub fn end_label(&self) -> u64 {
        self.offset + self.amplitudes.len() as u64
    }

    pub fn normalized(&self) -> Coefficients {
        let s = self.norm_sqr().sqrt();
        Coefficients {
            amplitudes: self.amplitudes.iter().map(|c| c / s).collect(),
            ..self.clone()
        }
    }

    /// `⟨other|self⟩`.
    pub fn overlap(&self, other: &Coefficients) -> Complex64 {
        let lo = self.offset.max(other.offset);
        let hi = self.end_label().min(other.end_label());
        (lo..hi.max(lo))
            .map(|l| other.at_label(l).conj() * self.at_label(l))
            .sum()
    }

    /// `Σ |self_l - other_l|²` over all labels.
    pub fn distance_sqr(&self, other: &Coefficients) -> f64 {
        let lo = self.offset.min(other.offset);
        let hi = self.end_label().max(other.end_label());
        (lo..hi)
            .map(|l| (self.at_label(l) - other.at_label(l)).norm_sqr())
            .sum()
    }
}

/// `ln |K_n^p(m)|` and the sign of `K_n^p(m)` from the defining product.
pub fn ln_k_np(family: &FamilySpec, f: &FChoice, m: u64, p: u64, n: u64) -> Result<LogValue> {
    let prod = f.ln_product(family, m, n)?;
    let ln_abs = family.ln_epsilon_n(m, n) - 0.5 * family.ln_epsilon_n(m, n + p) - prod.ln_abs;
    Ok(LogValue {
        ln_abs,
        sign: prod.sign,
    })
}

pub fn k_np(family: &FamilySpec, f: &FChoice, m: u64, p: u64, n: u64) -> Result<f64> {
    Ok(ln_k_np(family, f, m, p, n)?.value())
}

/// `ln |K_n^p(m)|` from the closed Γ expressions of each family.
pub fn ln_k_np_closed(family: &FamilySpec, f: &FChoice, m: u64, p: u64, n: u64) -> Result<f64> {
    let (nf, pf) = (n as f64, p as f64);
    let c_part = -nf * f.scale().abs().ln();
    if family.is_linear() {
        return Ok(log_gamma(nf + 1.0)? - 0.5 * log_gamma(nf + pf + 1.0)? + c_part);
    }
    let a = 2.0 * m as f64 + family.mu();
    let mut ln2 = 2.0 * log_gamma(nf + 1.0)? + 2.0 * log_gamma(nf + a)?
        - log_gamma(a)?
        - log_gamma(nf + pf + 1.0)?
        - log_gamma(nf + pf + a)?;
    if *f == FChoice::SqrtLinear {
        let b = m as f64 + family.nu();
        ln2 += log_gamma(b)? - log_gamma(nf + b)?;
    }
    Ok(0.5 * ln2 + c_part)
}

/// `ln N_p(|z|²; m)` by direct summation.
pub fn ln_normalization(spec: &StateSpec) -> Result<f64> {
    Ok(-0.5 * spec.sector().ln_norm_sum(spec.x())?)
}

/// `N_p(|z|²; m)` by direct summation.
pub fn normalization(spec: &StateSpec) -> Result<f64> {
    Ok(ln_normalization(spec)?.exp())
}

/// Parameter lists of the closed `pFq` for `S(x)` and the Γ prefactor in log form.
pub(crate) fn norm_pfq_params(sector: &Sector) -> Result<(Vec<f64>, Vec<f64>, f64, f64)> {
    let pf = sector.p as f64;
    let c2 = sector.f.scale().powi(2);
    if sector.family.is_linear() {
        return Ok((vec![1.0 + pf], vec![1.0], log_gamma(pf + 1.0)?, c2));
    }
    let a = sector.a_param();
    let pre = log_gamma(pf + 1.0)? + log_gamma(a + pf)? - log_gamma(a)?;
    match sector.f {
        FChoice::Constant(_) => Ok((vec![1.0 + pf, a + pf], vec![1.0, a, a], pre, c2)),
        FChoice::SqrtLinear => {
            let b = sector.m as f64 + sector.family.nu();
            Ok((vec![1.0 + pf, a + pf, b], vec![1.0, a, a], pre, 1.0))
        }
    }
}

/// `N_p` from the family's closed `pFq` expression.
pub fn normalization_closed(spec: &StateSpec) -> Result<f64> {
    let (a, b, ln_pre, c2) = norm_pfq_params(&spec.sector())?;
    let s = eval_pfq(&a, &b, c2 * spec.x())?.value;
    Ok((-0.5 * (ln_pre + s.ln())).exp())
}

/// `N_0` from the Bessel-function forms available at `p = 0`.
///
/// Hermite: `exp(-|cz|²/2)`. Jacobi with constant `f`:
/// `[Γ(A) |cz|^{1-A} I_{A-1}(2|cz|)]^{-1/2}` with `A = 2m + μ`. Square-root `f`:
/// `₁F₁(a; 2a; x) = Γ(a+½) e^{x/2} (x/4)^{½-a} I_{a-½}(x/2)` with `a = m + ν`.
pub fn normalization_bessel_p0(spec: &StateSpec) -> Result<f64> {
    if spec.p != 0 {
        return Err(Error::domain("Bessel reductions hold at p = 0 only"));
    }
    let sector = spec.sector();
    let x = spec.x();
    if x == 0.0 {
        return Ok(1.0);
    }
    if spec.family.is_linear() {
        return Ok((-0.5 * sector.f.scale().powi(2) * x).exp());
    }
    match spec.f {
        FChoice::Constant(c) => {
            let a = sector.a_param();
            let r = c.abs() * x.sqrt();
            let s = log_gamma(a)?.exp() * r.powf(1.0 - a) * bessel_i(a - 1.0, 2.0 * r)?;
            Ok(s.powf(-0.5))
        }
        FChoice::SqrtLinear => {
            let a = spec.m as f64 + spec.family.nu();
            let ln_s = log_gamma(a + 0.5)? + 0.5 * x + (0.5 - a) * (0.25 * x).ln()
                + bessel_i(a - 0.5, 0.5 * x)?.ln();
            Ok((-0.5 * ln_s).exp())
        }
    }
}

/// Normalized amplitudes `N_p z^n / K_n^p`, truncated where the tail falls below `tol`.
pub fn build_state(spec: &StateSpec, tol: f64) -> Result<Coefficients> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::domain("state tolerance must lie in (0, 1)"));
    }
    let sector = spec.sector();
    let x = spec.x();
    let table = sector.terms(x.ln(), tol, &|_| 0.0)?;
    let arg = spec.z.arg();
    let amplitudes = table
        .ln_terms
        .iter()
        .enumerate()
        .map(|(n, &lt)| {
            let mag = (0.5 * (lt - table.ln_sum)).exp();
            Complex64::from_polar(mag, n as f64 * arg) * sector.k_sign(n as u64)
        })
        .collect();
    Ok(Coefficients {
        amplitudes,
        offset: spec.p,
        tail_bound: table.tail_rel,
    })
}

fn same_sector_except_p(a: &StateSpec, b: &StateSpec) -> Result<()> {
    if a.family != b.family || a.f != b.f || a.m != b.m {
        return Err(Error::domain(
            "inner products need a shared family, f choice and m",
        ));
    }
    Ok(())
}

/// `⟨b|a⟩` from the amplitude series.
pub fn inner_product(a: &StateSpec, b: &StateSpec) -> Result<Complex64> {
    same_sector_except_p(a, b)?;
    let ca = build_state(a, DEFAULT_TAIL_TOL)?;
    let cb = build_state(b, DEFAULT_TAIL_TOL)?;
    Ok(ca.overlap(&cb))
}

/// `⟨b|a⟩` from the closed `pFq` expressions, when the family has one.
///
/// Linear families: `N N′ (cz′)^{*δ} Γ(p+1)/Γ(δ+1) · ₁F₁(p+1; δ+1; c² z′* z)`.
/// Jacobi, constant `f`: the `₂F₃` of the same structure. Square-root `f` has
/// a closed form only for `δ = p - p′ = 0`.
pub fn inner_product_closed(a: &StateSpec, b: &StateSpec) -> Result<Option<Complex64>> {
    same_sector_except_p(a, b)?;
    if a.p < b.p {
        return Ok(inner_product_closed(b, a)?.map(|v| v.conj()));
    }
    let delta = (a.p - b.p) as f64;
    let pf = a.p as f64;
    let c = a.f.scale();
    let w = b.z.conj() * a.z * (c * c);
    let ln_nn = ln_normalization(a)? + ln_normalization(b)?;
    let pre_z = (b.z.conj() * c).powf(delta);
    let (num, den, ln_pre) = if a.family.is_linear() {
        (
            vec![pf + 1.0],
            vec![delta + 1.0],
            log_gamma(pf + 1.0)? - log_gamma(delta + 1.0)?,
        )
    } else {
        let big = a.sector().a_param();
        match a.f {
            FChoice::Constant(_) => (
                vec![pf + 1.0, big + pf],
                vec![delta + 1.0, big, big + delta],
                log_gamma(pf + 1.0)? + log_gamma(pf + big)?
                    - log_gamma(delta + 1.0)?
                    - log_gamma(delta + big)?,
            ),
            FChoice::SqrtLinear if a.p == b.p => {
                let nu_m = a.m as f64 + a.family.nu();
                (
                    vec![pf + 1.0, big + pf, nu_m],
                    vec![1.0, big, big],
                    log_gamma(pf + 1.0)? + log_gamma(pf + big)? - log_gamma(big)?,
                )
            }
            FChoice::SqrtLinear => return Ok(None),
        }
    };
    let series = eval_pfq_complex(&num, &den, w)?.value;
    // |z′|^δ = 0 with δ > 0 makes the whole product vanish
    if delta > 0.0 && b.z.norm() == 0.0 {
        return Ok(Some(Complex64::new(0.0, 0.0)));
    }
    Ok(Some(pre_z * series * (ln_nn + ln_pre).exp()))
}

/// `K(z, z′) = ⟨z′|z⟩ = N_p(|z|²) N_p(|z′|²) S(z′* z)` on a fixed sector.
pub fn kernel(sector: &Sector, z: Complex64, z2: Complex64) -> Result<Complex64> {
    let s = sector.norm_sum_complex(z2.conj() * z)?;
    let ln = s.ln_scale - 0.5 * (sector.ln_norm_sum(z.norm_sqr())? + sector.ln_norm_sum(z2.norm_sqr())?);
    Ok(s.mantissa * ln.exp())
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelReport {
    /// `max |K(z,z′) - conj K(z′,z)|`.
    pub hermiticity: f64,
    /// `max |K(z,z) - 1|`.
    pub diagonal: f64,
    /// `max |∫ d²z″ ω K(z,z″) K(z″,z′) - K(z,z′)|`.
    pub idempotence: f64,
    pub pairs: usize,
}

impl KernelReport {
    pub fn passed(&self, exact_tol: f64, quad_tol: f64) -> bool {
        self.hermiticity < exact_tol && self.diagonal < exact_tol && self.idempotence < quad_tol
    }
}

/// `∫ d²z″ ω_p(|z″|²) K(z, z″) K(z″, z′)` on a radial-angular grid.
///
/// The radial variable is `x = |z″|²` with `d²z = ½ dx dθ`; the angular
/// integral uses the trapezoid rule, doubled until it settles.
pub fn kernel_square(sector: &Sector, z: Complex64, z2: Complex64) -> Result<Complex64> {
    let lnn = -0.5 * (sector.ln_norm_sum(z.norm_sqr())? + sector.ln_norm_sum(z2.norm_sqr())?);
    let problem = measure::MomentProblem::new(*sector)?;
    let pf = sector.p as f64;

    // ω N(x)² = x^p g(x) / π; the N(x)² pair cancels S(x) of the weight
    let ln_radial = |x: f64| -> Result<f64> {
        Ok(problem.ln_g(x)? + pf * x.ln() - PI.ln() + lnn)
    };
    let bound = |x: f64| -> Result<f64> {
        let r = x.sqrt();
        Ok(ln_radial(x)?
            + sector.terms((r * z.norm()).ln(), 1e-12, &|_| 0.0)?.ln_sum
            + sector.terms((r * z2.norm()).ln(), 1e-12, &|_| 0.0)?.ln_sum)
    };
    let x_max = radial_extent(&bound)?;

    let angular = |x: f64| -> Result<Complex64> {
        let r = x.sqrt();
        let base = ln_radial(x)?;
        let eval = |nth: usize| -> Result<Complex64> {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..nth {
                let theta = 2.0 * PI * k as f64 / nth as f64;
                let z3 = Complex64::from_polar(r, theta);
                let s1 = sector.norm_sum_complex(z3.conj() * z)?;
                let s2 = sector.norm_sum_complex(z2.conj() * z3)?;
                let ln = base + s1.ln_scale + s2.ln_scale;
                acc += s1.mantissa * s2.mantissa * ln.exp();
            }
            // ½ dθ with dθ = 2π/nth
            Ok(acc * (PI / nth as f64))
        };
        let mut nth = 16;
        let mut prev = eval(nth)?;
        loop {
            nth *= 2;
            let next = eval(nth)?;
            if (next - prev).norm() <= 1e-13 * next.norm().max(1e-300) || nth >= 4096 {
                return Ok(next);
            }
            prev = next;
        }
    };

    let mut failure = None;
    let r = tanh_sinh(
        |x| match angular(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        0.0,
        x_max,
        &QuadOptions::with_rel_tol(1e-10),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(r.value)
}

/// Smallest `X` beyond the peak of `exp(ln_profile)` where it has dropped by `e^{-40}`.
pub(crate) fn radial_extent(ln_profile: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut x = 0.5;
    let mut peak = f64::NEG_INFINITY;
    let mut peak_x = x;
    for _ in 0..80 {
        let v = ln_profile(x)?;
        if v > peak {
            peak = v;
            peak_x = x;
        }
        if x > 4.0 * peak_x.max(1.0) && v < peak - 40.0 {
            return Ok(x);
        }
        x *= 1.25;
    }
    Err(Error::convergence("radial integrand does not decay", None))
}

/// Hermiticity, unit diagonal and idempotence of the kernel on the given pairs.
pub fn check_kernel_properties(
    sector: &Sector,
    pairs: &[(Complex64, Complex64)],
) -> Result<KernelReport> {
    let mut report = KernelReport {
        hermiticity: 0.0,
        diagonal: 0.0,
        idempotence: 0.0,
        pairs: pairs.len(),
    };
    for &(z, z2) in pairs {
        let k12 = kernel(sector, z, z2)?;
        let k21 = kernel(sector, z2, z)?;
        report.hermiticity = report.hermiticity.max((k12 - k21.conj()).norm());
        for w in [z, z2] {
            report.diagonal = report.diagonal.max((kernel(sector, w, w)? - 1.0).norm());
        }
        let sq = kernel_square(sector, z, z2)?;
        report.idempotence = report.idempotence.max((sq - k12).norm());
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityReport {
    pub deltas: Vec<f64>,
    /// `‖|z⟩ - |z′⟩‖²` from the amplitude differences.
    pub distance_sqr: Vec<f64>,
    /// `2(1 - Re⟨z′|z⟩)`, which loses digits as the states approach each other.
    pub via_overlap: Vec<f64>,
    /// Decades of decrease per decade of `δ` between consecutive entries.
    pub slopes: Vec<f64>,
    pub monotone: bool,
}

impl ContinuityReport {
    pub fn quadratic(&self, slope_tol: f64) -> bool {
        self.monotone && self.slopes.iter().all(|s| (s - 2.0).abs() < slope_tol)
    }
}

/// Squared distance between `|z⟩` and `|z + δ e^{iπ/4}⟩` along a shrinking `δ` sequence.
pub fn label_continuity_check(spec: &StateSpec, deltas: &[f64]) -> Result<ContinuityReport> {
    let base = build_state(spec, DEFAULT_TAIL_TOL)?;
    let dir = Complex64::from_polar(1.0, 0.25 * PI);
    let mut distance_sqr = Vec::with_capacity(deltas.len());
    let mut via_overlap = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let other = build_state(&spec.with_z(spec.z + dir * d), DEFAULT_TAIL_TOL)?;
        distance_sqr.push(base.distance_sqr(&other));
        via_overlap.push(2.0 * (1.0 - base.overlap(&other).re));
    }
    let slopes = deltas
        .windows(2)
        .zip(distance_sqr.windows(2))
        .map(|(d, s)| (s[0] / s[1]).log10() / (d[0] / d[1]).log10())
        .collect();
    let monotone = distance_sqr.windows(2).all(|w| w[1] < w[0]);
    Ok(ContinuityReport {
        deltas: deltas.to_vec(),
        distance_sqr,
        via_overlap,
        slopes,
        monotone,
    })
}

/// Largest violation of `√e_{n+1} c_{n+1} = z f(r_{m+n+2}) c_n` over the stored amplitudes (p = 0).
pub fn eigen_recurrence_residual(spec: &StateSpec) -> Result<f64> {
    if spec.p != 0 {
        return Err(Error::domain("the eigenvalue relation holds for p = 0"));
    }
    let c = build_state(spec, DEFAULT_TAIL_TOL)?;
    let mut worst: f64 = 0.0;
    for n in 0..c.len().saturating_sub(1) {
        let lhs = c.amplitudes[n + 1] * spec.family.e_n(spec.m, n as u64 + 1).sqrt();
        let fr = spec.f.eval(spec.family.r_k(spec.m + n as u64 + 2))?;
        let rhs = spec.z * fr * c.amplitudes[n];
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Human-readable sector label, e.g. `jacobi(mu=2) const:1 m=1 p=2`.
pub fn sector_label(sector: &Sector) -> String {
    let fam = match sector.family.kind() {
        FamilyKind::Hermite | FamilyKind::Laguerre => sector.family.kind().name().to_string(),
        k => format!("{}(mu={})", k.name(), sector.family.mu()),
    };
    format!("{fam} {} m={} p={}", sector.f.label(), sector.m, sector.p)
}
