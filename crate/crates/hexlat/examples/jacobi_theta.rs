//! The one-dimensional Jacobi theta function, its derivatives and the
//! envelope of `-ϑ_Y / sin 2πY`.

use hexlat::special_functions::{jacobi_theta, jacobi_theta_partial, mu, nu, theta_envelope, SeriesConfig, ThetaArg};

fn main() -> hexlat::Result<()> {
    let cfg = SeriesConfig::default();
    println!("{:>6} {:>6} {:>16} {:>16} {:>16}", "X", "Y", "theta", "theta_Y", "theta_XY");
    for x in [0.1, 0.5, 1.0, 3.0] {
        for y in [0.0, 0.2, 0.45] {
            let arg = ThetaArg::new(x, y)?;
            println!(
                "{x:6.2} {y:6.2} {:16.12} {:16.12} {:16.12}",
                jacobi_theta(arg, &cfg)?,
                jacobi_theta_partial(arg, 0, 1, &cfg)?,
                jacobi_theta_partial(arg, 1, 1, &cfg)?,
            );
        }
    }

    println!();
    for x in [0.3, 1.0, 2.0] {
        let e = theta_envelope(x, &cfg)?;
        println!("X = {x}: mu = {:.6e}, nu = {:.6e}, envelope [{:.6}, {:.6}]", mu(x, &cfg)?, nu(x, &cfg)?, e.lower, e.upper);
    }
    Ok(())
}
