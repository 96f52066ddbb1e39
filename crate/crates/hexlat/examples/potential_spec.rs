//! Minimize a potential described by a JSON document, the same format the
//! command line reads with `minimize <file>`.

use hexlat::energy::PotentialSpec;
use hexlat::minimization::minimize_generic;
use hexlat::special_functions::SeriesConfig;

const SPECS: &[&str] = &[
    r#"{"type": "gaussian_diff", "alpha": 1.0, "a": 3.0, "b": 1.5}"#,
    r#"{"type": "laplace_weighted", "alpha": 1.0, "a": 2.0, "b": 1.2, "family": "f", "weight": {"kind": "power", "coef": 1.0, "p": -2.0}}"#,
    r#"{"type": "poly_gaussian", "alpha": 1.0, "b": 0.3}"#,
];

fn main() -> hexlat::Result<()> {
    let cfg = SeriesConfig::default();
    for s in SPECS {
        let p: PotentialSpec = serde_json::from_str(s).expect("valid spec");
        let out = minimize_generic(&p, &cfg)?;
        println!("{s}\n  -> {}\n", out.classification().label());
    }
    Ok(())
}
