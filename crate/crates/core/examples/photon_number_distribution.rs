// Photon-number distributions and the signal-to-noise ratio relative to p = 0.

use gpahcs::family::{FChoice, FamilySpec};
use gpahcs::optics::{pnd_table, snr, snr_ratio};
use gpahcs::states::StateSpec;
use num_complex::Complex64;

pub fn run_example() -> gpahcs::Result<()> {
    let family = FamilySpec::hermite();
    let z = Complex64::new(3.0, 0.0);
    for p in 0..=3 {
        let spec = StateSpec::new(z, 4, p, family, FChoice::Constant(1.0))?;
        let table = pnd_table(&spec, p + 30)?;
        let (peak, pmax) = table
            .iter()
            .enumerate()
            .fold((0, 0.0), |a, (n, &v)| if v > a.1 { (n, v) } else { a });
        println!(
            "p={p}: P_n peaks at n={peak} ({pmax:.4}), SNR {:.4}, ratio to p=0 {:.4}",
            snr(&spec)?,
            snr_ratio(&spec)?
        );
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
