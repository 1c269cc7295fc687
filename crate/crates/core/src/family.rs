//! Classical hypergeometric families and their spectral data.
//!
//! Everything downstream depends on a family only through `σ″` and `τ′`:
//!
//! * `λ_l = -½ l(l-1) σ″ - l τ′`
//! * `e_n = λ_{m+n} - λ_m`, `ε_n = e_1 ⋯ e_n`
//! * `r_k = λ_k - λ_{k-1} = -(k-1) σ″ - τ′`

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{log_gamma, LogValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Hermite,
    Laguerre,
    Jacobi,
    #[serde(alias = "hypergeom")]
    Hypergeometric,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Hermite => "hermite",
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::Jacobi => "jacobi",
            FamilyKind::Hypergeometric => "hypergeometric",
        }
    }
}

/// One classical family with its derived spectral scalars.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    kind: FamilyKind,
    alpha: f64,
    beta: f64,
    sigma_pp: f64,
    tau_p: f64,
}

impl FamilySpec {
    pub fn hermite() -> Self {
        FamilySpec {
            kind: FamilyKind::Hermite,
            alpha: 0.0,
            beta: 0.0,
            sigma_pp: 0.0,
            tau_p: -1.0,
        }
    }

    /// `α` does not enter the spectrum; it is kept for reporting.
    pub fn laguerre(alpha: f64) -> Self {
        FamilySpec {
            kind: FamilyKind::Laguerre,
            alpha,
            ..Self::hermite()
        }
    }

    /// Jacobi family with `μ = α + β + 2`.
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        Self::quadratic(FamilyKind::Jacobi, alpha, beta)
    }

    pub fn hypergeometric(alpha: f64, beta: f64) -> Result<Self> {
        Self::quadratic(FamilyKind::Hypergeometric, alpha, beta)
    }

    /// Jacobi or hypergeometric family given `μ` directly.
    pub fn with_mu(kind: FamilyKind, mu: f64) -> Result<Self> {
        match kind {
            FamilyKind::Jacobi | FamilyKind::Hypergeometric => {
                Self::quadratic(kind, 0.5 * (mu - 2.0), 0.5 * (mu - 2.0))
            }
            _ => Err(Error::domain(format!("{} has no μ parameter", kind.name()))),
        }
    }

    fn quadratic(kind: FamilyKind, alpha: f64, beta: f64) -> Result<Self> {
        let mu = alpha + beta + 2.0;
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::domain(format!("μ = α + β + 2 must be positive, got {mu}")));
        }
        Ok(FamilySpec {
            kind,
            alpha,
            beta,
            sigma_pp: -2.0,
            tau_p: -mu,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma_pp(&self) -> f64 {
        self.sigma_pp
    }

    pub fn tau_p(&self) -> f64 {
        self.tau_p
    }

    /// `μ = -τ′`; equals 1 for Hermite and Laguerre.
    pub fn mu(&self) -> f64 {
        -self.tau_p
    }

    pub fn nu(&self) -> f64 {
        0.5 * self.mu()
    }

    /// True for Hermite and Laguerre, whose spectrum is linear in `l`.
    pub fn is_linear(&self) -> bool {
        self.sigma_pp == 0.0
    }

    pub fn lambda_l(&self, l: u64) -> f64 {
        let l = l as f64;
        -0.5 * l * (l - 1.0) * self.sigma_pp - l * self.tau_p
    }

    /// `e_n = λ_{m+n} - λ_m`, written so that no large terms cancel.
    pub fn e_n(&self, m: u64, n: u64) -> f64 {
        let (m, n) = (m as f64, n as f64);
        n * (-0.5 * self.sigma_pp * (n + 2.0 * m - 1.0) - self.tau_p)
    }

    /// `ln ε_n` as a running sum of `ln e_k`.
    pub fn ln_epsilon_n(&self, m: u64, n: u64) -> f64 {
        (1..=n).map(|k| self.e_n(m, k).ln()).sum()
    }

    pub fn epsilon_n(&self, m: u64, n: u64) -> f64 {
        self.ln_epsilon_n(m, n).exp()
    }

    /// `ln ε_n` from the closed Γ forms: `Γ(n+1)` for the linear families,
    /// `Γ(n+1) Γ(n+2m+μ) / Γ(2m+μ)` for the quadratic ones.
    pub fn ln_epsilon_closed(&self, m: u64, n: u64) -> Result<f64> {
        let nf = n as f64;
        let base = log_gamma(nf + 1.0)?;
        if self.is_linear() {
            return Ok(base);
        }
        let a = 2.0 * m as f64 + self.mu();
        Ok(base + log_gamma(nf + a)? - log_gamma(a)?)
    }

    pub fn r_k(&self, k: u64) -> f64 {
        -((k as f64) - 1.0) * self.sigma_pp - self.tau_p
    }
}

/// The analytic function `f` entering the expansion coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FChoice {
    Constant(f64),
    /// `f(r) = √(r/2 - 1)`, which gives `Π f = √((m+ν)_n)` on the Jacobi chain.
    SqrtLinear,
}

/// `ξ(r; c, d) = (c/2) r + d`.
pub(crate) fn xi(r: f64, c: f64, d: f64) -> f64 {
    0.5 * c * r + d
}

impl FChoice {
    pub fn validate(&self, family: &FamilySpec, m: u64) -> Result<()> {
        match *self {
            FChoice::Constant(c) if c == 0.0 || !c.is_finite() => {
                Err(Error::domain("constant f must be finite and nonzero"))
            }
            FChoice::Constant(_) => Ok(()),
            FChoice::SqrtLinear => {
                if family.is_linear() {
                    return Err(Error::domain(
                        "the square-root linear f is defined on the Jacobi chain only",
                    ));
                }
                let base = m as f64 + family.nu();
                if !(base > 0.0) {
                    return Err(Error::domain(format!("square-root f needs m + ν > 0, got {base}")));
                }
                Ok(())
            }
        }
    }

    /// `f(r)`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        match *self {
            FChoice::Constant(c) => Ok(c),
            FChoice::SqrtLinear => {
                let v = -xi(r, -1.0, 1.0);
                if v > 0.0 {
                    Ok(v.sqrt())
                } else {
                    Err(Error::domain(format!("square-root f is not real at r = {r}")))
                }
            }
        }
    }

    /// `Π_{k=0}^{n-1} f(r_{m+n+1-k})` in log form.
    pub fn ln_product(&self, family: &FamilySpec, m: u64, n: u64) -> Result<LogValue> {
        self.validate(family, m)?;
        match *self {
            FChoice::Constant(c) => Ok(LogValue::from_f64(c).powi(n as i32)),
            FChoice::SqrtLinear => {
                let a = m as f64 + family.nu();
                Ok(LogValue {
                    ln_abs: 0.5 * (log_gamma(n as f64 + a)? - log_gamma(a)?),
                    sign: 1.0,
                })
            }
        }
    }

    /// `f(r_{m+n+1-k})` for the k-th factor, used for term-by-term checks.
    pub fn factor(&self, family: &FamilySpec, m: u64, n: u64, k: u64) -> Result<f64> {
        self.eval(family.r_k(m + n + 1 - k))
    }

    /// The constant `c`, or 1 for the non-constant choice.
    pub fn scale(&self) -> f64 {
        match *self {
            FChoice::Constant(c) => c,
            FChoice::SqrtLinear => 1.0,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            FChoice::Constant(c) => format!("const:{c}"),
            FChoice::SqrtLinear => "sqrtlinear".to_string(),
        }
    }
}

impl std::str::FromStr for FChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "sqrtlinear" || t == "sqrt" {
            return Ok(FChoice::SqrtLinear);
        }
        if t == "const" {
            return Ok(FChoice::Constant(1.0));
        }
        if let Some(v) = t.strip_prefix("const:") {
            let c: f64 = v
                .parse()
                .map_err(|_| Error::domain(format!("bad constant in f choice '{s}'")))?;
            let f = FChoice::Constant(c);
            if c == 0.0 || !c.is_finite() {
                return Err(Error::domain("constant f must be finite and nonzero"));
            }
            return Ok(f);
        }
        Err(Error::domain(format!("unknown f choice '{s}' (use const:c or sqrtlinear)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn jac(mu: f64) -> FamilySpec {
        FamilySpec::with_mu(FamilyKind::Jacobi, mu).unwrap()
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(FamilySpec::hermite().lambda_l(7), 7.0);
        assert_eq!(jac(2.0).lambda_l(0), 0.0);
        assert_eq!(jac(3.0).lambda_l(3), 15.0);
        assert_eq!(FamilySpec::laguerre(0.7).lambda_l(4), 4.0);
    }

    #[test]
    fn gaps_and_products() {
        let h = FamilySpec::hermite();
        assert!((h.epsilon_n(3, 4) - 24.0).abs() < 1e-12);
        let j = jac(2.0);
        assert_eq!(j.e_n(1, 1), 4.0);
        assert_eq!(j.e_n(1, 2), 10.0);
        assert!((j.epsilon_n(1, 2) - 40.0).abs() < 1e-12);
        assert!((j.ln_epsilon_closed(1, 2).unwrap().exp() - 40.0).abs() < 1e-11);
        assert_eq!(j.ln_epsilon_n(5, 0), 0.0);
        assert_eq!(h.ln_epsilon_n(0, 0), 0.0);
    }

    #[test]
    fn shape_invariance_steps() {
        for k in 1..20 {
            assert_eq!(FamilySpec::hermite().r_k(k), 1.0);
        }
        assert_eq!(jac(3.0).r_k(3), 7.0);
        assert_eq!(jac(3.0).lambda_l(3) - jac(3.0).lambda_l(2), 7.0);
        assert_eq!(jac(2.0).r_k(1), 2.0);
    }

    #[test]
    fn f_products() {
        let j = jac(2.0);
        let c2 = FChoice::Constant(2.0).ln_product(&j, 0, 3).unwrap();
        assert!((c2.value() - 8.0).abs() < 1e-12);
        let sq = FChoice::SqrtLinear.ln_product(&j, 1, 2).unwrap();
        assert!((sq.value() - 6f64.sqrt()).abs() < 1e-12);
        assert_eq!(FChoice::SqrtLinear.ln_product(&j, 4, 0).unwrap().value(), 1.0);
        let neg = FChoice::Constant(-1.5).ln_product(&j, 0, 3).unwrap();
        assert!((neg.value() + 3.375).abs() < 1e-12);
    }

    #[test]
    fn sqrt_linear_requires_quadratic_family() {
        assert!(FChoice::SqrtLinear.validate(&FamilySpec::hermite(), 1).is_err());
        assert!(FChoice::Constant(0.0).validate(&FamilySpec::hermite(), 1).is_err());
        assert!(FamilySpec::jacobi(-1.5, -1.0).is_err());
    }

    #[test]
    fn parse_f_choice() {
        assert_eq!("const:2.5".parse::<FChoice>().unwrap(), FChoice::Constant(2.5));
        assert_eq!("sqrtlinear".parse::<FChoice>().unwrap(), FChoice::SqrtLinear);
        assert!("const:0".parse::<FChoice>().is_err());
        assert!("cubic".parse::<FChoice>().is_err());
    }

    fn families() -> Vec<FamilySpec> {
        vec![
            FamilySpec::hermite(),
            FamilySpec::laguerre(1.5),
            jac(0.5),
            jac(1.5),
            jac(2.0),
            FamilySpec::with_mu(FamilyKind::Hypergeometric, 5.0).unwrap(),
        ]
    }

    #[test]
    fn telescoping_eigenvalues() {
        for f in families() {
            let mut acc = 0.0;
            for l in 1..=50 {
                acc += f.r_k(l);
                assert!((acc - f.lambda_l(l)).abs() <= 1e-12 * f.lambda_l(l).abs().max(1.0));
            }
        }
    }

    #[test]
    fn epsilon_ratio_and_closed_form() {
        for f in families() {
            for m in [0u64, 1, 3] {
                for n in 1..=100u64 {
                    let ratio = f.ln_epsilon_n(m, n) - f.ln_epsilon_n(m, n - 1);
                    assert!((ratio - f.e_n(m, n).ln()).abs() < 1e-13);
                    let closed = f.ln_epsilon_closed(m, n).unwrap();
                    let run = f.ln_epsilon_n(m, n);
                    assert!((closed - run).abs() <= 1e-12 * run.abs().max(1.0), "n={n}");
                }
            }
        }
    }

    #[test]
    fn sqrt_linear_two_routes() {
        // term-by-term ξ(·; -1, 1) against the Γ ratio; each ξ is negative so
        // the comparison is on magnitudes
        for &mu in &[0.5, 1.5, 2.0, 5.0] {
            let f = jac(mu);
            for m in 0..4u64 {
                for n in 0..40u64 {
                    let mut ln_xi = 0.0;
                    let mut ln_f = 0.0;
                    for k in 0..n {
                        let r = f.r_k(m + n + 1 - k);
                        let x = xi(r, -1.0, 1.0);
                        assert!(x < 0.0);
                        ln_xi += x.abs().ln();
                        ln_f += FChoice::SqrtLinear.factor(&f, m, n, k).unwrap().ln();
                    }
                    let prod = FChoice::SqrtLinear.ln_product(&f, m, n).unwrap().ln_abs;
                    assert!((2.0 * prod - ln_xi).abs() <= 1e-12 * ln_xi.abs().max(1.0));
                    assert!((prod - ln_f).abs() <= 1e-12 * ln_f.abs().max(1.0));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn gaps_are_positive_and_increasing(mu in 0.05f64..20.0, m in 0u64..30, n in 1u64..200) {
            let f = jac(mu);
            prop_assert!(f.e_n(m, n) > 0.0);
            prop_assert!(f.e_n(m, n + 1) > f.e_n(m, n));
            let diff = f.lambda_l(m + n) - f.lambda_l(m);
            prop_assert!((f.e_n(m, n) - diff).abs() <= 1e-9 * diff.abs());
        }
    }
}
