// Nearby labels give nearby states: the squared distance shrinks like |δ|².

use gpahcs::family::{FChoice, FamilySpec};
use gpahcs::states::{label_continuity_check, StateSpec};
use num_complex::Complex64;

pub fn run_example() -> gpahcs::Result<()> {
    let spec = StateSpec::new(Complex64::new(0.9, -0.4), 1, 2, FamilySpec::jacobi(0.0, 1.0)?, FChoice::Constant(1.0))?;
    let deltas: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
    let rep = label_continuity_check(&spec, &deltas)?;
    for (d, s) in rep.deltas.iter().zip(&rep.distance_sqr) {
        println!("delta {d:.0e}: ||z - z'||^2 = {s:.6e}");
    }
    println!("log-log slopes {:?}", rep.slopes.iter().map(|s| format!("{s:.4}")).collect::<Vec<_>>());
    Ok(())
}

fn main() {
    run_example().unwrap();
}
