// Ladder matrices, their algebra, and `(a†)^p` applied to a truncated coherent state.

use gpahcs::family::{FChoice, FamilyKind, FamilySpec};
use gpahcs::fock::{build_ladder, check_algebra, photon_added_state, FockSpace};
use gpahcs::states::{build_state, StateSpec, DEFAULT_TAIL_TOL};
use num_complex::Complex64;

pub fn run_example() -> gpahcs::Result<()> {
    let family = FamilySpec::with_mu(FamilyKind::Jacobi, 2.0)?;
    let space = FockSpace::new(family, 1, 50)?;
    let ladder = build_ladder(&space);
    println!("<0|a|1> = {}, R diagonal starts {:?}", ladder.a[(0, 1)], (0..3).map(|i| ladder.r_op[(i, i)]).collect::<Vec<_>>());
    println!("algebra deviation on D = 50: {:.2e}", check_algebra(&space)?.max_deviation());

    let z = Complex64::new(0.8, 0.6);
    let matrix = photon_added_state(family, FChoice::Constant(1.0), 1, z, 3, DEFAULT_TAIL_TOL)?;
    let closed = build_state(&StateSpec::new(z, 1, 3, family, FChoice::Constant(1.0))?, DEFAULT_TAIL_TOL)?;
    println!("first amplitudes, matrix vs closed:");
    for l in matrix.offset..matrix.offset + 4 {
        println!("    |{l}>  {:.12}  {:.12}", matrix.at_label(l), closed.at_label(l));
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
