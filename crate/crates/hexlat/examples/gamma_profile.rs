//! `W_b` along the line `x = 1/2` for couplings around `1/(2π)`: below it the
//! profile rises to infinity, above it it eventually falls without bound.

use hexlat::energy::{w_b, B_CRITICAL};
use hexlat::lattice_domain::UpperHalfPoint;
use hexlat::special_functions::SeriesConfig;

fn main() -> hexlat::Result<()> {
    let cfg = SeriesConfig::default();
    let bs = [0.10, B_CRITICAL, 0.17];
    print!("{:>8}", "y");
    for b in bs {
        print!(" {:>14}", format!("b = {b:.4}"));
    }
    println!();
    for k in 0..10 {
        let y = 3f64.sqrt() / 2.0 * 2f64.powi(k);
        print!("{y:8.2}");
        for b in bs {
            print!(" {:14.8}", w_b(1.0, b, UpperHalfPoint::new(0.5, y)?, &cfg)?);
        }
        println!();
    }
    Ok(())
}
