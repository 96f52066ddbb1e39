use hexlat::lattice_domain::{apply_word, lattice_norms, reduce_to_fundamental, Generator, GroupWord, UpperHalfPoint};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = UpperHalfPoint> {
    (-5.0f64..5.0, 0.05f64..5.0).prop_map(|(x, y)| UpperHalfPoint::new(x, y).unwrap())
}

fn generator() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

fn sorted_norms(z: UpperHalfPoint) -> Vec<f64> {
    let mut v: Vec<f64> = lattice_norms(z, 3.0).unwrap().into_iter().map(|p| p.norm2).collect();
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #[test]
    fn reduction_is_idempotent(z in point()) {
        let (r, _) = reduce_to_fundamental(z).unwrap();
        let (rr, w) = reduce_to_fundamental(r).unwrap();
        prop_assert!(w.is_empty());
        prop_assert!((rr.x - r.x).abs() <= 1e-14 && (rr.y - r.y).abs() <= 1e-14);
    }

    #[test]
    fn reduced_point_is_in_closed_domain(z in point()) {
        let (r, _) = reduce_to_fundamental(z).unwrap();
        prop_assert!(r.x >= -1e-12 && r.x <= 0.5 + 1e-12);
        prop_assert!(r.norm_sqr() >= 1.0 - 1e-12);
    }

    #[test]
    fn word_maps_input_to_output(z in point()) {
        let (r, w) = reduce_to_fundamental(z).unwrap();
        let image = apply_word(&w, z);
        prop_assert!(image.distance(&r) <= 1e-12 * (1.0 + r.y));
    }

    // The same lattice up to rotation and reflection, so the same lengths.
    #[test]
    fn norms_invariant_under_generators(z in point(), g in generator()) {
        let z = reduce_to_fundamental(z).unwrap().0;
        let a = sorted_norms(z);
        let b = sorted_norms(g.apply(z));
        prop_assert_eq!(a.len(), b.len());
        for (p, q) in a.iter().zip(&b) {
            prop_assert!((p - q).abs() <= 1e-12 * p.max(1.0));
        }
    }

    #[test]
    fn random_words_preserve_norms(z in point(), gens in prop::collection::vec(generator(), 0..=6)) {
        let z = reduce_to_fundamental(z).unwrap().0;
        let w = GroupWord::new(gens).unwrap();
        let a = sorted_norms(z);
        let b = sorted_norms(apply_word(&w, z));
        prop_assert_eq!(a.len(), b.len());
        for (p, q) in a.iter().zip(&b) {
            prop_assert!((p - q).abs() <= 1e-11 * p.max(1.0));
        }
    }
}

#[test]
fn documented_reductions() {
    let (r, w) = reduce_to_fundamental(UpperHalfPoint::new(0.25, 2.0).unwrap()).unwrap();
    assert_eq!((r.x, r.y), (0.25, 2.0));
    assert!(w.is_empty());

    let (r, w) = reduce_to_fundamental(UpperHalfPoint::new(5.0, 1.0).unwrap()).unwrap();
    assert_eq!((r.x, r.y), (0.0, 1.0));
    assert_eq!(w.len(), 5);
}

// Brute-force orbit search over short words for the smallest-|x| image in the domain.
#[test]
fn reduction_matches_orbit_search() {
    let z = UpperHalfPoint::new(-0.3, 0.4).unwrap();
    let mut frontier = vec![z];
    let mut found = None;
    for _ in 0..6 {
        let mut next = Vec::new();
        for p in &frontier {
            for g in Generator::ALL {
                let q = g.apply(*p);
                if q.x >= 0.0 && q.x <= 0.5 && q.norm_sqr() >= 1.0 && found.is_none() {
                    found = Some(q);
                }
                next.push(q);
            }
        }
        frontier = next;
    }
    let expect = found.unwrap();
    let (r, _) = reduce_to_fundamental(z).unwrap();
    assert!((r.x - expect.x).abs() < 1e-12 && (r.y - expect.y).abs() < 1e-12);
    assert!((r.x - 0.2).abs() < 1e-12 && (r.y - 1.6).abs() < 1e-12);
}

#[test]
fn nonpositive_y_rejected() {
    assert!(UpperHalfPoint::new(0.1, 0.0).is_err());
    assert!(UpperHalfPoint::new(0.1, -1.0).is_err());
}
