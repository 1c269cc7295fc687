//! Generalized hypergeometric series `pFq(a; b; x)`.
//!
//! Summation stops once a geometric majorant of the remaining terms is below
//! the requested relative tolerance, so `abs_error_estimate` is a bound and
//! not a guess from the size of the last term.

use num_complex::Complex64;

use super::SeriesResult;
use crate::error::{Error, Result};

pub const DEFAULT_PFQ_TOL: f64 = 1e-14;
const MAX_TERMS: usize = 500_000;

fn nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.floor()
}

/// `pFq(a; b; x)` for real argument at the default tolerance.
pub fn eval_pfq(a: &[f64], b: &[f64], x: f64) -> Result<SeriesResult<f64>> {
    eval_pfq_tol(a, b, x, DEFAULT_PFQ_TOL)
}

/// `pFq(a; b; x)` with relative tolerance `tol` on the truncated tail.
pub fn eval_pfq_tol(a: &[f64], b: &[f64], x: f64, tol: f64) -> Result<SeriesResult<f64>> {
    let r = pfq_core(a, b, Complex64::new(x, 0.0), tol)?;
    Ok(SeriesResult {
        value: r.value.re,
        abs_error_estimate: r.abs_error_estimate,
        terms_used: r.terms_used,
    })
}

/// `pFq(a; b; z)` for complex argument and real parameters.
pub fn eval_pfq_complex(a: &[f64], b: &[f64], z: Complex64) -> Result<SeriesResult<Complex64>> {
    pfq_core(a, b, z, DEFAULT_PFQ_TOL)
}

/// Upper bound on `|t_{j+1}/t_j|` for every `j >= j0`, or `None` while some
/// parameter plus `j0` is still nonpositive (the factors are not yet monotone).
fn ratio_majorant(a: &[f64], b: &[f64], absz: f64, j0: f64) -> Option<f64> {
    if a.iter().chain(b).any(|&v| v + j0 <= 0.0) {
        return None;
    }
    let mut ua: Vec<f64> = a.to_vec();
    let mut lb: Vec<f64> = b.to_vec();
    ua.sort_by(|x, y| x.total_cmp(y));
    lb.sort_by(|x, y| x.total_cmp(y));
    // the (j+1) from the factorial acts as an extra lower parameter 1
    lb.push(1.0);
    let mut bound = absz;
    let paired = ua.len().min(lb.len());
    for i in 0..paired {
        // (a+j)/(b+j) is monotone in j and tends to 1
        let f = (ua[i] + j0) / (lb[i] + j0);
        bound *= f.max(1.0);
    }
    for &bj in &lb[paired..] {
        bound /= bj + j0;
    }
    if ua.len() > paired {
        // more than one unmatched upper parameter: no finite majorant
        return None;
    }
    Some(bound)
}

fn pfq_core(a: &[f64], b: &[f64], z: Complex64, tol: f64) -> Result<SeriesResult<Complex64>> {
    if a.iter().chain(b).any(|v| !v.is_finite()) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("pFq parameters and argument must be finite"));
    }
    if let Some(bad) = b.iter().find(|&&v| nonpositive_integer(v)) {
        return Err(Error::domain(format!(
            "pFq lower parameter {bad} is a nonpositive integer"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("pFq tolerance must be positive"));
    }

    let terminating = a
        .iter()
        .filter(|&&v| nonpositive_integer(v))
        .map(|&v| (-v) as usize)
        .min();

    let p = a.len();
    let q = b.len();
    let absz = z.norm();
    if terminating.is_none() && absz > 0.0 {
        if p > q + 1 {
            return Err(Error::convergence(
                format!("{p}F{q} diverges for nonzero argument"),
                None,
            ));
        }
        if p == q + 1 && absz >= 1.0 {
            return Err(Error::convergence(
                format!("{p}F{q} requires |x| < 1, got {absz}"),
                None,
            ));
        }
    }

    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    let limit = terminating.unwrap_or(MAX_TERMS);
    let mut k = 0usize;
    while k < limit {
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        for &ai in a {
            ratio *= ai + kf;
        }
        for &bj in b {
            ratio /= bj + kf;
        }
        term *= ratio;
        sum += term;
        abs_sum += term.norm();
        k += 1;

        if terminating.is_some() {
            continue;
        }
        let t = term.norm();
        if t == 0.0 {
            break;
        }
        if let Some(rho) = ratio_majorant(a, b, absz, k as f64) {
            if rho < 1.0 {
                let tail = t * rho / (1.0 - rho);
                if tail <= tol * sum.norm() {
                    let rounding = 4.0 * f64::EPSILON * abs_sum;
                    return Ok(SeriesResult {
                        value: sum,
                        abs_error_estimate: tail + rounding,
                        terms_used: k + 1,
                    });
                }
            }
        }
    }
    if terminating.is_some() || term.norm() == 0.0 {
        return Ok(SeriesResult {
            value: sum,
            abs_error_estimate: 4.0 * f64::EPSILON * abs_sum,
            terms_used: k + 1,
        });
    }
    Err(Error::convergence(
        format!("{p}F{q} series exhausted {MAX_TERMS} terms"),
        Some(sum.re),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Σ 1/(k!)² scaled by 10^30, computed in exact integer arithmetic.
    fn inverse_factorial_squares_e30() -> u128 {
        let scale: u128 = 10u128.pow(30);
        let mut fact: u128 = 1;
        let mut total: u128 = 0;
        for k in 0..40u128 {
            if k > 0 {
                fact *= k;
            }
            match fact.checked_mul(fact) {
                Some(sq) if sq <= scale => total += scale / sq,
                _ => break,
            }
        }
        total
    }

    #[test]
    fn zero_f_one_against_exact_rational_oracle() {
        let oracle = inverse_factorial_squares_e30() as f64 / 1e30;
        let r = eval_pfq(&[], &[1.0], 1.0).unwrap();
        assert!((r.value - oracle).abs() < 2e-15 * oracle);
        assert!((r.value - 2.279_585_302_336_067).abs() < 1e-15);
        assert!(r.abs_error_estimate < 1e-13);
    }

    #[test]
    fn one_f_one_reduces_to_exp() {
        let r = eval_pfq(&[1.0], &[1.0], 1.0).unwrap();
        assert!((r.value - std::f64::consts::E).abs() < 4.0 * f64::EPSILON * std::f64::consts::E);
        let r = eval_pfq(&[2.5], &[2.5], -3.0).unwrap();
        assert!((r.value - (-3f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn argument_zero_gives_one() {
        let r = eval_pfq(&[1.0, 1.0], &[1.0, 1.0, 1.0], 0.0).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.terms_used >= 1);
    }

    #[test]
    fn gauss_series_inside_unit_disc() {
        // 2F1(1,1;2;x) = -ln(1-x)/x
        let x = 0.5;
        let r = eval_pfq(&[1.0, 1.0], &[2.0], x).unwrap();
        let exact = -(1.0 - x as f64).ln() / x;
        assert!((r.value - exact).abs() < 1e-13);
    }

    #[test]
    fn terminating_series() {
        // 2F1(-3, 2; 1; x) is a cubic; evaluate where the infinite series would diverge
        let x = 2.0;
        let r = eval_pfq(&[-3.0, 2.0], &[1.0], x).unwrap();
        let mut exact = 0.0;
        let mut t = 1.0;
        for k in 0..=3 {
            exact += t;
            let kf = k as f64;
            t *= (-3.0 + kf) * (2.0 + kf) / ((1.0 + kf) * (kf + 1.0)) * x;
        }
        assert!((r.value - exact).abs() < 1e-13);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(eval_pfq(&[1.0], &[-2.0], 0.5), Err(Error::Domain(_))));
        assert!(matches!(
            eval_pfq(&[1.0, 1.0], &[2.0], 1.5),
            Err(Error::Convergence { .. })
        ));
        assert!(matches!(
            eval_pfq(&[1.0, 1.0, 1.0], &[2.0], 0.1),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn complex_argument_matches_exponential() {
        let z = Complex64::new(0.7, -1.3);
        let r = eval_pfq_complex(&[3.0], &[3.0], z).unwrap();
        assert!((r.value - z.exp()).norm() < 1e-14 * z.exp().norm());
    }

    #[test]
    fn certified_bound_covers_actual_error() {
        let x = 6.0;
        let r = eval_pfq_tol(&[1.0], &[1.0], x, 1e-6).unwrap();
        assert!((r.value - x.exp()).abs() <= r.abs_error_estimate);
    }
}
