//! Shared fixtures for the benchmarks.

use spherorb_core::cg::TTriple;
use spherorb_core::hermitian::parse_pair_key;
use spherorb_core::orbits::{list_orbits, OrbitRecord};
use spherorb_core::spherical::{system_case_1_4, system_case_1_6, SphericalSystem};

/// Orbit identifiers of increasing matrix size.
pub const ORBIT_IDS: [&str; 4] = [
    "A:3:p=2/1.6/r=0,s=0",
    "C:4/3.3/r=1,s=1",
    "D:6:gl/5.4/r=1,s=1",
    "B:8/2.4/-",
];

/// Every orbit of a mid-sized pair.
pub fn orbits_of(key: &str, max_params: usize) -> Vec<OrbitRecord> {
    let pair = parse_pair_key(key).expect("valid pair key");
    list_orbits(&pair, max_params)
}

/// Spherical systems of growing rank.
pub fn systems() -> Vec<SphericalSystem> {
    vec![
        system_case_1_4(5).expect("valid"),
        system_case_1_6(4, 4, 1, 1).expect("valid"),
        system_case_1_6(6, 6, 2, 2).expect("valid"),
    ]
}

/// Deterministic color vectors with entries in `0..=3`.
pub fn color_vectors(n_colors: usize, count: usize) -> Vec<Vec<i64>> {
    (0..count)
        .map(|k| {
            (0..n_colors)
                .map(|i| ((k * 7 + i * 3) % 4) as i64)
                .collect()
        })
        .collect()
}

/// Pairs `(m, n)` for the product check, including the degenerate one.
pub fn tensor_pairs() -> Vec<(TTriple, TTriple)> {
    vec![
        (TTriple::new(1, 1, 2), TTriple::new(1, 1, 2)),
        (TTriple::new(2, 2, 2), TTriple::new(2, 2, 4)),
        (TTriple::new(3, 3, 4), TTriple::new(4, 3, 3)),
    ]
}
