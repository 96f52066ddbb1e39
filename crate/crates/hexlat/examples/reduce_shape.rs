//! Reduce points of the upper half-plane to the fundamental domain and list
//! the shortest vectors of the resulting lattice.

use hexlat::lattice_domain::{apply_word, lattice_norms, reduce_to_fundamental, UpperHalfPoint};

fn main() -> hexlat::Result<()> {
    for (x, y) in [(0.25, 2.0), (5.0, 1.0), (-0.3, 0.4), (3.7, 0.05)] {
        let z = UpperHalfPoint::new(x, y)?;
        let (r, word) = reduce_to_fundamental(z)?;
        let back = apply_word(&word, z);
        println!("{x:6.2} + {y:.2}i -> {:.6} + {:.6}i  word [{}]  check {:.1e}", r.x, r.y, word.display(), back.distance(&r));
    }

    let z = UpperHalfPoint::new(0.5, 3f64.sqrt() / 2.0)?;
    let mut v = lattice_norms(z, 1.8)?;
    v.sort_by(|a, b| a.norm2.total_cmp(&b.norm2));
    println!("\nhexagonal lattice, |P|^2 <= 3.24:");
    for p in v.iter().filter(|p| p.m != 0 || p.n != 0) {
        println!("  (m, n) = ({:2}, {:2})  |P|^2 = {:.6}", p.m, p.n, p.norm2);
    }
    Ok(())
}
