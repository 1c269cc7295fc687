// Building photon-added coherent states and checking their normalization.

use gpahcs::family::{FChoice, FamilySpec};
use gpahcs::states::{
    build_state, inner_product, normalization, normalization_closed, StateSpec, DEFAULT_TAIL_TOL,
};
use num_complex::Complex64;

pub fn run_example() -> gpahcs::Result<()> {
    let family = FamilySpec::jacobi(0.5, 1.5)?;
    let z = Complex64::from_polar(1.2, 0.4);
    for f in [FChoice::Constant(1.0), FChoice::SqrtLinear] {
        let spec = StateSpec::new(z, 1, 2, family, f)?;
        let state = build_state(&spec, DEFAULT_TAIL_TOL)?;
        println!(
            "{f:?}: N = {:.12} (closed {:.12}), {} amplitudes from |{}>, norm {:.15}",
            normalization(&spec)?,
            normalization_closed(&spec)?,
            state.len(),
            state.offset,
            state.norm_sqr()
        );
        let other = spec.with_z(z * 1.1);
        println!("    <z|1.1 z> = {:.12}", inner_product(&spec, &other)?);
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
