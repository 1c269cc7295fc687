// Thermal states: Husimi and P representations, and the closed thermal moments.

use gpahcs::family::{FChoice, FamilySpec};
use gpahcs::states::Sector;
use gpahcs::thermal::{
    husimi_q, husimi_trace, p_diagonal, p_function, partition_function, thermal_stats, ThermalSpec,
};
use num_complex::Complex64;

pub fn run_example() -> gpahcs::Result<()> {
    let t = ThermalSpec::new(1.0, Sector::new(FamilySpec::hermite(), FChoice::Constant(1.0), 1, 1)?)?;
    let z = Complex64::new(0.7, 0.0);
    println!("Z = {:.10}, nbar = {:.10}", partition_function(&t), t.nbar());
    println!("Q(z) = {:.10}, P(z) = {:.10}", husimi_q(&t, z)?, p_function(&t, z)?);
    println!("Husimi trace = {:.12}", husimi_trace(&t)?);
    println!("P-function diagonal n=2: {:.12}", p_diagonal(&t, 2)?);
    let s = thermal_stats(&t);
    println!("Q direct {:.6}, closed form {:.6}", s.direct.q, s.closed.q);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
