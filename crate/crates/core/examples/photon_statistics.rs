// Mandel Q and g² along a |z| sweep, by series and by closed hypergeometric forms.

use gpahcs::family::{FChoice, FamilySpec};
use gpahcs::optics::dual_route;
use gpahcs::states::StateSpec;
use num_complex::Complex64;

pub fn run_example() -> gpahcs::Result<()> {
    let family = FamilySpec::hermite();
    println!("{:>6} {:>3} {:>12} {:>12} {:>9}", "|z|", "p", "Q", "g2", "routes");
    for p in [1, 3] {
        for r in [0.5, 1.0, 2.0, 4.0] {
            let spec = StateSpec::new(Complex64::new(r, 0.0), 2, p, family, FChoice::Constant(1.0))?;
            let d = dual_route(&spec)?;
            println!(
                "{r:>6} {p:>3} {:>12.6} {:>12.6} {:>9.1e}",
                d.series.mandel_q,
                d.series.g2,
                d.max_rel_error()
            );
        }
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
