use spherorb_bench::{color_vectors, orbits_of, systems, tensor_pairs, ORBIT_IDS};
use spherorb_core::cg::in_tensor_semigroup;
use spherorb_core::orbits::{build_triple, parse_orbit_id, verify_triple};

#[test]
fn orbit_fixtures_are_valid() {
    for id in ORBIT_IDS {
        let orbit = parse_orbit_id(id).unwrap();
        assert!(
            verify_triple(&build_triple(&orbit).unwrap()).all_ok(),
            "{id}"
        );
    }
    assert!(!orbits_of("A:7:p=4", 4).is_empty());
}

#[test]
fn vector_fixtures_match_systems() {
    for sys in systems() {
        let vs = color_vectors(sys.n_colors(), 8);
        assert!(vs
            .iter()
            .all(|v| v.len() == sys.n_colors() && v.iter().all(|&x| (0..=3).contains(&x))));
    }
}

#[test]
fn tensor_fixtures_lie_in_the_semigroup() {
    for (m, n) in tensor_pairs() {
        assert!(in_tensor_semigroup(&m) && in_tensor_semigroup(&n));
    }
}
