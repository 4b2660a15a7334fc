use bruhat_core::orbitpoly::{interval_size_lattice, lattice_count, lattice_count_by_membership};
use bruhat_core::rootsys::{Family, RootSystemData, RootSystemId};
use bruhat_core::weyl::{interval_size, theta};
use bruhat_core::{Budget, DominantCoweight};
use num_bigint::BigInt;

fn build(f: Family, n: usize) -> RootSystemData {
    RootSystemData::build(RootSystemId::new(f, n).unwrap()).unwrap()
}

fn all_coords(rank: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |m| {
                    let mut w = v.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn bruhat_oracle_matches_lattice_formula_small() {
    let budget = Budget::default();
    for (f, n, max) in [
        (Family::A, 1, 4),
        (Family::A, 2, 2),
        (Family::B, 2, 2),
        (Family::G, 2, 1),
        (Family::A, 3, 1),
        (Family::C, 3, 1),
    ] {
        let d = build(f, n);
        for c in all_coords(n, max) {
            let l = DominantCoweight::new(c.clone()).unwrap();
            let (t, word) = theta(&d, &l).unwrap();
            let bruhat = interval_size(&d, &t, &word, budget.interval_cap).unwrap();
            let lattice = interval_size_lattice(&d, &l, &budget).unwrap();
            assert_eq!(BigInt::from(bruhat), lattice, "{} {:?}", d.id(), c);
        }
    }
}

#[test]
fn orbit_sum_matches_membership_count() {
    let budget = Budget::default();
    for (f, n, max) in [
        (Family::A, 3, 2),
        (Family::B, 3, 2),
        (Family::C, 3, 2),
        (Family::D, 4, 1),
        (Family::G, 2, 3),
        (Family::F, 4, 1),
    ] {
        let d = build(f, n);
        for c in all_coords(n, max) {
            let l = DominantCoweight::new(c.clone()).unwrap();
            assert_eq!(
                lattice_count(&d, &l, &budget).unwrap(),
                lattice_count_by_membership(&d, &l, &budget).unwrap(),
                "{} {:?}",
                d.id(),
                c
            );
        }
    }
}
