// The positive weight from the Stieltjes moment problem and the identity it resolves.

use gpahcs::family::{FChoice, FamilySpec};
use gpahcs::measure::{resolution_of_identity_check, verify_moments, weight, MomentProblem};
use gpahcs::states::{check_kernel_properties, Sector};
use num_complex::Complex64;

pub fn run_example() -> gpahcs::Result<()> {
    let sector = Sector::new(FamilySpec::jacobi(0.5, 0.5)?, FChoice::SqrtLinear, 3, 1)?;
    for x in [0.1, 1.0, 10.0] {
        println!("omega({x}) = {:.10}", weight(&sector, x)?);
    }
    let moments = verify_moments(&MomentProblem::new(sector)?, 6)?;
    println!("moments n <= 6: max rel error {:.2e}", moments.max_rel_error);

    let id = resolution_of_identity_check(&sector, 4)?;
    println!(
        "4x4 projected identity: diagonal {:.2e}, off-diagonal {:.2e}",
        id.max_diagonal_deviation, id.max_off_diagonal
    );
    let pair = (Complex64::new(0.3, 0.2), Complex64::new(-0.5, 0.4));
    let k = check_kernel_properties(&sector, &[pair])?;
    println!("kernel idempotence defect {:.2e}", k.idempotence);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
