//! Minimize `W_b` and the theta difference on both sides of their critical
//! couplings.

use hexlat::minimization::{minimize_theta_difference, minimize_w, MinimizeOutcome};
use hexlat::special_functions::SeriesConfig;

fn show(label: &str, out: &MinimizeOutcome) {
    match out {
        MinimizeOutcome::Minimizer { z_star, value, distance_to_hex, .. } => {
            println!("{label:<28} minimizer {:.8} + {:.8}i  E = {value:+.10}  |z - hex| = {distance_to_hex:.1e}", z_star.x, z_star.y)
        }
        MinimizeOutcome::NoMinimizer { witness_y, witness_values, .. } => println!(
            "{label:<28} unbounded below: E({:.1}i + 1/2) = {:+.4} ... E({:.1}i + 1/2) = {:+.4}",
            witness_y[0],
            witness_values[0],
            witness_y.last().unwrap(),
            witness_values.last().unwrap()
        ),
    }
}

fn main() -> hexlat::Result<()> {
    let cfg = SeriesConfig::default();
    for b in [0.0, 0.1, 0.159, 0.2] {
        show(&format!("W, alpha = 1, b = {b}"), &minimize_w(1.0, b, &cfg)?);
    }
    for b in [1.0, 1.4142, 1.5] {
        show(&format!("theta diff, a = 2, b = {b}"), &minimize_theta_difference(1.0, 2.0, b, &cfg)?);
    }
    Ok(())
}
