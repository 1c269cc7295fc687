// Hypergeometric series, Bessel functions and a Meijer G evaluated by contour quadrature.

use gpahcs::specfun::{bessel_i, bessel_k, eval_pfq, log_gamma, meijer_g, GParams};

pub fn run_example() -> gpahcs::Result<()> {
    // 1F1(a; 2a; x) against its Bessel form
    let (a, x) = (2.5, 3.0);
    let series = eval_pfq(&[a], &[2.0 * a], x)?;
    let bessel = log_gamma(a + 0.5)?.exp()
        * (x / 2.0).exp()
        * (x / 4.0).powf(0.5 - a)
        * bessel_i(a - 0.5, x / 2.0)?;
    println!("1F1({a}; {}; {x}) = {:.15} +- {:.1e}", 2.0 * a, series.value, series.abs_error_estimate);
    println!("Bessel form        = {bessel:.15}");

    // G^{2,0}_{0,2}(x | 0, nu) = 2 x^{nu/2} K_nu(2 sqrt x)
    let nu = 0.3;
    let g = meijer_g(&GParams::new(2, 0, vec![], vec![0.0, nu], x)?)?;
    let k = 2.0 * x.powf(nu / 2.0) * bessel_k(nu, 2.0 * x.sqrt())?;
    println!("G(2,0;0,2)({x}|0,{nu}) = {:.15}, via K: {k:.15}", g.value);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
