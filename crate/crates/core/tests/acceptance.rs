//! Acceptance criteria 1–9. Each criterion prints one `PASS`/`FAIL` line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spherorb_core::cg::{
    cg_allowed, gamma_module, product_contains, tensor_semigroup_upto, verify_gamma_product,
    TTriple,
};
use spherorb_core::hermitian::enumerate_pairs;
use spherorb_core::orbits::{
    build_triple, is_spherical, jordan_type, list_orbits, verify_triple, OrbitRecord,
};
use spherorb_core::rootlat::CartanType;
use spherorb_core::semigroup::{
    closed_form_degree, closed_form_generators, compare_with_closed_form, covering_differences,
    gamma_semigroup, gamma_sigma_semigroup, height, is_minuscule, leq_sigma, normality_check,
    positive_part_height,
};
use spherorb_core::spherical::{
    hermitian_systems, minimal_block_sizes, system_ax111, system_ay_a_ay, system_case_1_4,
    system_case_1_5, system_case_1_6, system_case_1_7, CaseParams, Regime, SphericalSystem,
};
use std::collections::{BTreeSet, HashMap};
use std::io::Write;
use std::time::{Duration, Instant};

/// Largest rank of `G` in the orbit suites.
const MAX_RANK: usize = 8;
/// Largest entry of `T` in the product sweep.
const MAX_ENTRY: u32 = 4;
/// Random vectors per system in the oracle comparison.
const ORACLE_SAMPLES: usize = 1000;
/// Largest coordinate of the random color vectors.
const ORACLE_MAX_COORD: i64 = 3;
/// Seed of the oracle sampler.
const ORACLE_SEED: u64 = 0x0AC1E;
/// Allowed numerical discrepancy: all checks are exact.
const TOLERANCE: usize = 0;

struct Outcome {
    id: u8,
    name: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn report(o: &Outcome) {
    let timed_ok = cfg!(debug_assertions) || o.elapsed <= o.budget;
    let verdict = if o.ok && timed_ok { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    writeln!(
        err,
        "{verdict} criterion {}: {} [{}] time={:.1}s budget={}s tolerance={TOLERANCE}",
        o.id,
        o.name,
        o.detail,
        o.elapsed.as_secs_f64(),
        o.budget.as_secs()
    )
    .unwrap();
}

fn all_orbits() -> Vec<OrbitRecord> {
    let mut out = Vec::new();
    for ty in [CartanType::A, CartanType::B, CartanType::C, CartanType::D] {
        for rank in 1..=MAX_RANK {
            if let Ok(pairs) = enumerate_pairs(ty, rank) {
                for pair in pairs {
                    out.extend(list_orbits(&pair, MAX_RANK));
                }
            }
        }
    }
    out
}

fn criterion_1(orbits: &[OrbitRecord]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for o in orbits {
        match build_triple(o) {
            Ok(t) if verify_triple(&t).all_ok() => {}
            _ => failures.push(o.id()),
        }
    }
    Outcome {
        id: 1,
        name: "sl2-triple identities",
        ok: failures.is_empty() && orbits.len() >= 200,
        detail: format!(
            "{} orbits, {} failures {:?}",
            orbits.len(),
            failures.len(),
            failures
        ),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(30),
    }
}

fn criterion_2(orbits: &[OrbitRecord]) -> Outcome {
    let start = Instant::now();
    let failures: Vec<String> = orbits
        .iter()
        .filter(|o| !build_triple(o).map(|t| is_spherical(&t)).unwrap_or(false))
        .map(OrbitRecord::id)
        .collect();
    Outcome {
        id: 2,
        name: "sphericity",
        ok: failures.is_empty(),
        detail: format!(
            "{} orbits, {} not certified {:?}",
            orbits.len(),
            failures.len(),
            failures
        ),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(120),
    }
}

fn criterion_3(orbits: &[OrbitRecord]) -> Outcome {
    let start = Instant::now();
    let failures: Vec<String> = orbits
        .iter()
        .filter(|o| {
            !build_triple(o)
                .map(|t| jordan_type(&t.e) == o.expected_jordan_type())
                .unwrap_or(false)
        })
        .map(OrbitRecord::id)
        .collect();
    Outcome {
        id: 3,
        name: "signed partitions",
        ok: failures.is_empty(),
        detail: format!(
            "{} orbits, {} mismatches {:?}",
            orbits.len(),
            failures.len(),
            failures
        ),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(30),
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let systems: Vec<SphericalSystem> = hermitian_systems(MAX_RANK)
        .into_iter()
        .filter(|s| s.ambient.total_rank() <= MAX_RANK)
        .collect();
    let failures: Vec<String> = systems
        .iter()
        .filter(|s| !normality_check(s).normal)
        .map(|s| s.name.clone())
        .collect();
    Outcome {
        id: 4,
        name: "normality of all encoded systems",
        ok: failures.is_empty() && !systems.is_empty(),
        detail: format!(
            "{} systems, {} not normal {:?}",
            systems.len(),
            failures.len(),
            failures
        ),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(10),
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for p in [4, 5, 6] {
        let sys = system_case_1_4(p).unwrap();
        let gens: BTreeSet<_> = gamma_semigroup(&sys, 3).unwrap().into_iter().collect();
        let expect: BTreeSet<_> = closed_form_generators("1.4", &CaseParams::new(p, 2, 0, 0))
            .unwrap()
            .into_iter()
            .collect();
        let sigma: BTreeSet<Vec<i64>> = gamma_sigma_semigroup(&sys, 3)
            .unwrap()
            .into_iter()
            .collect();
        let sigma_expect: BTreeSet<Vec<i64>> = [vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]]
            .into_iter()
            .collect();
        let good = gens == expect && gens.len() == 5 && sigma == sigma_expect;
        ok &= good;
        detail.push(format!("p={p}: {} generators, Γ^Σ {:?}", gens.len(), sigma));
    }
    Outcome {
        id: 5,
        name: "case 1.4 semigroups",
        ok,
        detail: detail.join("; "),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(10),
    }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    let mut failures = Vec::new();
    for case in ["1.6", "1.7"] {
        for r in 0..=3usize {
            for s in 0..=3 - r {
                if r + s == 0 {
                    continue;
                }
                for regime in [Regime::Generic, Regime::Boundary] {
                    let (p, q) = minimal_block_sizes(case, r, s, regime);
                    let params = CaseParams::new(p, q, r, s);
                    let degree = closed_form_degree(case, &params).unwrap() + 1;
                    let cmp = compare_with_closed_form(case, &params, degree).unwrap();
                    runs += 1;
                    if !cmp.matches {
                        failures.push(format!("{case} {params:?}"));
                    }
                }
            }
        }
    }
    Outcome {
        id: 6,
        name: "case 1.6/1.7 Hilbert bases equal closed forms",
        ok: failures.is_empty() && runs == 36,
        detail: format!(
            "{runs} parameter sets, {} mismatches {:?}",
            failures.len(),
            failures
        ),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(300),
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let systems = [
        system_case_1_4(4).unwrap(),
        system_case_1_4(5).unwrap(),
        system_case_1_6(3, 3, 1, 0).unwrap(),
        system_case_1_6(3, 3, 0, 1).unwrap(),
        system_case_1_6(4, 4, 1, 1).unwrap(),
        system_case_1_6(4, 3, 1, 1).unwrap(),
    ];
    let mut count = 0;
    let mut failures = Vec::new();
    for sys in &systems {
        for c in covering_differences(sys, 3) {
            count += 1;
            if height(&positive_part_height(&c.colors).0) != 2 {
                failures.push(format!("{} {:?}", sys.name, c.sigma_coords));
            }
        }
    }
    Outcome {
        id: 7,
        name: "covering differences have height(γ⁺) = 2",
        ok: failures.is_empty() && count > 0,
        detail: format!(
            "{} systems, {count} covering differences, {} violations {:?}",
            systems.len(),
            failures.len(),
            failures
        ),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(60),
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let ts = tensor_semigroup_upto(MAX_ENTRY);
    let mut pairs = 0;
    let mut failures = Vec::new();
    for m in &ts {
        for n in &ts {
            pairs += 1;
            let r = verify_gamma_product(m, n).unwrap();
            if !r.ok {
                failures.push(format!("{m}·{n} missing {:?}", r.missing));
            }
        }
    }
    let m = TTriple::new(1, 1, 2);
    let k = TTriple::new(2, 2, 2);
    let degenerate = !product_contains(&k, &m, &m);
    let in_module = gamma_module(&m.add(&m)).unwrap().contains(&k);
    let covered = verify_gamma_product(&m, &m)
        .unwrap()
        .witnesses
        .iter()
        .any(|w| w.k == k && (w.m, w.n) != (m, m));
    Outcome {
        id: 8,
        name: "Γ(m)·Γ(n) = Γ(m+n) and the degenerate example",
        ok: failures.is_empty() && degenerate && in_module && covered,
        detail: format!(
            "{pairs} pairs, {} failures; (2,2,2)⊄(1,1,2)²: {degenerate}; (2,2,2)∈Γ(2,2,4): {in_module}; covered by another pair: {covered}",
            failures.len()
        ),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(300),
    }
}

/// Every `NΣ` element with `σ`-coordinates in a box, keyed by its color vector.
fn sigma_box(sys: &SphericalSystem) -> HashMap<Vec<i64>, Vec<i64>> {
    let n = sys.n_sigma();
    let k = (1..=8i64)
        .rev()
        .find(|k| (k + 1).pow(n as u32) <= 40_000)
        .unwrap_or(1);
    let mut out = HashMap::new();
    let total = (k + 1).pow(n as u32);
    for mut idx in 0..total {
        let a: Vec<i64> = (0..n)
            .map(|_| {
                let x = idx % (k + 1);
                idx /= k + 1;
                x
            })
            .collect();
        out.insert(sys.combine(&a), a);
    }
    out
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let systems = vec![
        system_ax111(),
        system_case_1_4(4).unwrap(),
        system_case_1_4(5).unwrap(),
        system_case_1_5(5).unwrap(),
        system_case_1_6(3, 3, 1, 0).unwrap(),
        system_case_1_6(4, 4, 1, 1).unwrap(),
        system_case_1_6(4, 3, 1, 1).unwrap(),
        system_case_1_7(3, 4, 1, 1).unwrap(),
        system_ay_a_ay(1, 1, 1).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut discrepancies = Vec::new();
    for sys in &systems {
        let table = sigma_box(sys);
        let nd = sys.n_colors();
        for _ in 0..ORACLE_SAMPLES {
            let e: Vec<i64> = (0..nd)
                .map(|_| rng.gen_range(0..=ORACLE_MAX_COORD))
                .collect();
            let d: Vec<i64> = if rng.gen_bool(0.5) {
                (0..nd)
                    .map(|_| rng.gen_range(0..=ORACLE_MAX_COORD))
                    .collect()
            } else {
                let a: Vec<i64> = (0..sys.n_sigma()).map(|_| rng.gen_range(0..=1)).collect();
                let g = sys.combine(&a);
                e.iter().zip(&g).map(|(x, y)| (x - y).max(0)).collect()
            };
            let diff: Vec<i64> = e.iter().zip(&d).map(|(x, y)| x - y).collect();
            if leq_sigma(sys, &d, &e) != table.contains_key(&diff) {
                discrepancies.push(format!("{} leq {d:?} {e:?}", sys.name));
            }
            let brute_minuscule = !table
                .iter()
                .any(|(g, a)| a.iter().any(|&x| x != 0) && e.iter().zip(g).all(|(x, y)| x >= y));
            if is_minuscule(sys, &e) != brute_minuscule {
                discrepancies.push(format!("{} minuscule {e:?}", sys.name));
            }
        }
    }
    let mut tensor_checked = 0;
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            let mut mult: HashMap<i64, i64> = HashMap::new();
            for i in 0..=a as i64 {
                for j in 0..=b as i64 {
                    *mult.entry(a as i64 - 2 * i + b as i64 - 2 * j).or_default() += 1;
                }
            }
            let mut parts = BTreeSet::new();
            while let Some(top) = mult.iter().filter(|(_, &c)| c > 0).map(|(&w, _)| w).max() {
                parts.insert(top as u32);
                for w in (-top..=top).step_by(2) {
                    *mult.get_mut(&w).unwrap() -= 1;
                }
            }
            for c in 0..=3u32 {
                tensor_checked += 1;
                if cg_allowed(a, b, c) != parts.contains(&c) {
                    discrepancies.push(format!("T ({a},{b},{c})"));
                }
            }
        }
    }
    Outcome {
        id: 9,
        name: "oracle equivalences",
        ok: discrepancies.is_empty(),
        detail: format!(
            "{} systems × {ORACLE_SAMPLES} samples, {tensor_checked} tensor triples, {} discrepancies {:?}",
            systems.len(),
            discrepancies.len(),
            discrepancies.iter().take(5).collect::<Vec<_>>()
        ),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(120),
    }
}

#[test]
fn acceptance_criteria() {
    let orbits = all_orbits();
    let outcomes = [
        criterion_1(&orbits),
        criterion_2(&orbits),
        criterion_3(&orbits),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    for o in &outcomes {
        report(o);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.ok).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
