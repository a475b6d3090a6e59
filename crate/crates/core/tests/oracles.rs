//! Library results against brute-force recomputation on the small corpus.

mod common;

use std::collections::BTreeMap;

use common::{build, params, small_corpus, Oracle};
use mfd_core::catalog::Params;
use mfd_core::chartab::character_table;
use mfd_core::permdeg::solve_mu;
use mfd_core::quasiperm::{galois_orbits, solve_c, CMode};
use mfd_core::Limits;

#[test]
fn class_counts_match_conjugation() {
    for (f, p, ps) in small_corpus() {
        let g = build(f, p, &ps);
        let t = character_table(&g, &Limits::default()).unwrap();
        let o = Oracle::new(&g);
        assert_eq!(t.num_classes(), o.class_count(), "{f} p={p}");
        assert_eq!(t.chars.len(), t.num_classes(), "{f} p={p}");
        let sq: u64 = t.chars.iter().map(|c| c.degree * c.degree).sum();
        assert_eq!(sq, g.order() as u64, "{f} p={p}");
    }
}

#[test]
fn subgroup_enumeration_counts_small_cases() {
    // C_3 x C_3 has p + 3 = 6 subgroups, C_9 has 3, and the extraspecial
    // group 3^(1+2) of exponent 3 has 1 + 13 + 4 + 1 = 19.
    let g = build("abelian", 3, &params(&[("r1", 1), ("r2", 1)]));
    assert_eq!(Oracle::new(&g).all_subgroups(3).len(), 6);
    let g = build("abelian", 3, &params(&[("r1", 2)]));
    assert_eq!(Oracle::new(&g).all_subgroups(3).len(), 3);
    let g = build("xsp_p3_expP", 3, &params(&[]));
    assert_eq!(Oracle::new(&g).all_subgroups(3).len(), 19);
}

#[test]
fn mu_matches_all_subgroup_search() {
    for (f, p, ps) in small_corpus() {
        let g = build(f, p, &ps);
        let got = solve_mu(&g, &Limits::default()).unwrap();
        assert!(got.optimal, "{f} p={p}");
        let want = Oracle::new(&g).mu(p);
        assert_eq!(got.mu_value, want, "{f} p={p} {ps:?}");
        assert_eq!(got.action.degree as u64, want);
    }
}

#[test]
fn fast_c_matches_exhaustive_and_small_family_search() {
    let limits = Limits::default();
    for (f, p, ps) in small_corpus() {
        let g = build(f, p, &ps);
        let t = character_table(&g, &limits).unwrap();
        let sums = galois_orbits(&t).unwrap();
        let d = Oracle::new(&g).center_rank(p);
        let fast = solve_c(&t, &sums, CMode::for_p_group(p, d), &limits).unwrap();
        let full = solve_c(&t, &sums, CMode::Exhaustive, &limits).unwrap();
        assert_eq!(fast.c_value, full.c_value, "{f} p={p}");

        // Every subset of at most d(Z) sums, kernels read off the values.
        let k = t.num_classes();
        let faithful = |chosen: &[usize]| {
            (1..k).all(|c| {
                chosen
                    .iter()
                    .any(|&i| sums[i].values[c] != sums[i].values[0])
            })
        };
        let cost = |chosen: &[usize]| {
            let xi: Vec<i64> = (0..k)
                .map(|c| chosen.iter().map(|&i| sums[i].values[c]).sum())
                .collect();
            xi[0] + (-xi.iter().copied().min().unwrap()).max(0)
        };
        let mut best = i64::MAX;
        let m = sums.len();
        let mut stack: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
        while let Some(s) = stack.pop() {
            if faithful(&s) {
                best = best.min(cost(&s));
            }
            if s.len() < d {
                for j in s[s.len() - 1] + 1..m {
                    let mut t = s.clone();
                    t.push(j);
                    stack.push(t);
                }
            }
        }
        assert_eq!(fast.c_value as i64, best, "{f} p={p} {ps:?}");
    }
}

#[test]
fn abelian_values_are_sums_of_cyclic_orders() {
    let cases: BTreeMap<(u64, Vec<i64>), u64> = [
        ((3, vec![1, 2]), 12),
        ((3, vec![1, 1, 1]), 9),
        ((2, vec![1, 2]), 6),
        ((5, vec![2]), 25),
    ]
    .into_iter()
    .collect();
    for ((p, rs), want) in cases {
        let ps: Params = rs
            .iter()
            .enumerate()
            .map(|(i, &r)| (format!("r{}", i + 1), r))
            .collect();
        let g = build("abelian", p, &ps);
        assert_eq!(solve_mu(&g, &Limits::default()).unwrap().mu_value, want);
        assert_eq!(Oracle::new(&g).mu(p), want);
    }
}
