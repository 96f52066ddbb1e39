//! Energies of the built-in potential families at a few lattice shapes.

use hexlat::energy::{energy, lattice_energy, theta_lattice, w_b, Family, PotentialSpec, Weight, B_CRITICAL};
use hexlat::lattice_domain::{hexagonal_point, UpperHalfPoint};
use hexlat::special_functions::SeriesConfig;

fn main() -> hexlat::Result<()> {
    let cfg = SeriesConfig::default();
    let shapes = [("hexagonal", hexagonal_point()), ("square", UpperHalfPoint::new(0.0, 1.0)?), ("long", UpperHalfPoint::new(0.5, 3.0)?)];

    for (name, z) in shapes {
        println!(
            "{name:>10}: theta(1) = {:.10}  W at b_c = {:+.3e}  W at b = 0.3 = {:+.6}",
            theta_lattice(1.0, z, &cfg)?,
            w_b(1.0, B_CRITICAL, z, &cfg)?,
            w_b(1.0, 0.3, z, &cfg)?
        );
    }

    let specs = vec![
        PotentialSpec::GaussianDiff { alpha: 1.0, a: 2.0, b: 1.2 },
        PotentialSpec::YukawaDiff { alpha: 1.0, a: 2.0, b: 0.5 },
        PotentialSpec::LaplaceWeighted { alpha: 1.0, a: 2.0, b: 1.0, weight: Weight::Constant { c: 1.0 }, family: Family::F },
    ];
    println!();
    for p in &specs {
        println!("{}", serde_json::to_string(p).unwrap());
        for (name, z) in shapes {
            println!("  {name:>10}: {:.12}", energy(p, z, &cfg)?);
        }
    }

    // direct summation agrees with the theta route
    let p = &specs[0];
    let z = hexagonal_point();
    println!("\ndirect sum {:.12} vs theta route {:.12}", lattice_energy(p, z, 8.0)?, energy(p, z, &cfg)?);
    Ok(())
}
