//! Scan (α, b) for both problems and print the boundary per α.

use hexlat::minimization::{phase_scan, PhaseProblem};
use hexlat::special_functions::SeriesConfig;

fn main() -> hexlat::Result<()> {
    let cfg = SeriesConfig::default();
    let alphas = [1.0, 2.0, 4.0];

    let bs: Vec<f64> = (0..=12).map(|i| 0.10 + 0.01 * i as f64).collect();
    let t = phase_scan(&alphas, &bs, PhaseProblem::W, &cfg)?;
    println!("W problem, 1/(2 pi) = {:.5}", 1.0 / (2.0 * std::f64::consts::PI));
    for b in &t.boundaries {
        println!("  alpha = {}: last hexagonal b = {:?}, first unbounded b = {:?}", b.alpha, b.last_hexagonal_b, b.first_no_minimizer_b);
    }
    println!("  constant across alpha: {}", t.boundary_is_constant());

    for a in [2.0f64, 4.0] {
        let bs: Vec<f64> = (0..=20).map(|i| a.sqrt() - 0.1 + 0.01 * i as f64).collect();
        let t = phase_scan(&alphas, &bs, PhaseProblem::ThetaDiff { a }, &cfg)?;
        println!("theta difference, a = {a}, sqrt(a) = {:.5}", a.sqrt());
        for b in &t.boundaries {
            println!("  alpha = {}: last hexagonal b = {:?}", b.alpha, b.last_hexagonal_b);
        }
    }
    Ok(())
}
