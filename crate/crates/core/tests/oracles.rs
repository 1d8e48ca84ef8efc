//! Library results checked against slow, direct computations.

use std::collections::{HashMap, HashSet};

use tiling_forge_core::ball::enumerate_ball;
use tiling_forge_core::criteria::{lemma_order2_ok, lemma_order3_ok};
use tiling_forge_core::search::{
    search_all_groups, search_splitting, SearchOptions, SearchProblem, SearchStatus,
};
use tiling_forge_core::splitting::verify_lattice_tiling;
use tiling_forge_core::{
    groups_of_order, AbelianGroup, BallParams, CoefficientSet, IntMatrix, Lattice, SplitMode,
};

/// Canonical coset representative modulo the lattice spanned by the rows of
/// an upper-triangular matrix with positive diagonal: coordinate `i` ends up
/// in `[0, h_ii)`.
fn triangular_residue(h: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    let mut x = x.to_vec();
    for (i, row) in h.iter().enumerate() {
        let q = x[i].div_euclid(row[i]);
        for (xj, hj) in x.iter_mut().zip(row) {
            *xj -= q * hj;
        }
    }
    x
}

/// Every upper-triangular generator `[[a, b, c], [0, d, e], [0, 0, f]]` (or the
/// 1- and 2-dimensional analogues) with determinant `vol` and off-diagonal
/// entries reduced modulo the diagonal below them.
fn triangular_lattices(n: usize, vol: i64) -> Vec<Vec<Vec<i64>>> {
    let divisors = |m: i64| (1..=m).filter(move |d| m % d == 0);
    let mut out = Vec::new();
    match n {
        1 => out.push(vec![vec![vol]]),
        2 => {
            for a in divisors(vol) {
                let d = vol / a;
                for b in 0..d {
                    out.push(vec![vec![a, b], vec![0, d]]);
                }
            }
        }
        3 => {
            for a in divisors(vol) {
                for d in divisors(vol / a) {
                    let f = vol / a / d;
                    for b in 0..d {
                        for c in 0..f {
                            for e in 0..f {
                                out.push(vec![vec![a, b, c], vec![0, d, e], vec![0, 0, f]]);
                            }
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    out
}

/// Tiling by direct coverage counts: every point of the window
/// `[-3(k+ + 1), 3(k+ + 1)]^n` lies in exactly one translate `b + L`.
fn window_tiles(p: &BallParams, h: &[Vec<i64>], ball: &[Vec<i64>]) -> bool {
    let mut per_coset: HashMap<Vec<i64>, usize> = HashMap::new();
    for b in ball {
        *per_coset.entry(triangular_residue(h, b)).or_default() += 1;
    }
    let r = 3 * (p.k_plus as i64 + 1);
    let side = 2 * r + 1;
    let total = side.pow(p.n as u32);
    (0..total).all(|mut code| {
        let x: Vec<i64> = (0..p.n)
            .map(|_| {
                let c = code % side - r;
                code /= side;
                c
            })
            .collect();
        per_coset.get(&triangular_residue(h, &x)) == Some(&1)
    })
}

#[test]
fn lattice_tiling_matches_window_oracle() {
    let mut checked = 0;
    let mut tilings = 0;
    for n in 1..=3 {
        for t in 1..=n {
            for kp in 1..=3 {
                for km in 0..=kp {
                    let p = BallParams::new(n, t, kp, km).unwrap();
                    let vol = p.size_u64().unwrap() as i64;
                    if vol > 64 {
                        continue;
                    }
                    let ball: Vec<Vec<i64>> = enumerate_ball(&p)
                        .unwrap()
                        .into_iter()
                        .map(|e| e.0)
                        .collect();
                    let all = triangular_lattices(n, vol);
                    // keep the 3-dimensional sweep affordable
                    let stride = (all.len() / 150).max(1);
                    for h in all.iter().step_by(stride) {
                        let l = Lattice::new(IntMatrix::from_rows(h).unwrap()).unwrap();
                        let fast = verify_lattice_tiling(&p, &l).unwrap();
                        assert_eq!(fast, window_tiles(&p, h, &ball), "{p} {h:?}");
                        checked += 1;
                        tilings += fast as usize;
                    }
                    // wrong volume never tiles
                    let l = Lattice::scaled_identity(n, 1).unwrap();
                    assert!(!verify_lattice_tiling(&p, &l).unwrap());
                }
            }
        }
    }
    assert!(tilings > 20 && checked > tilings, "{tilings} of {checked}");
}

/// Brute force over all 3-subsets of `Z_m`: whether some `S` makes all sums
/// `s_i` and `s_i + s_j` non-zero and distinct, and, for `full`, exhaust the
/// group.
fn brute_force_z(m: u64, full: bool) -> bool {
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let sums = [a, b, c, (a + b) % m, (a + c) % m, (b + c) % m];
                let set: HashSet<u64> = sums.iter().copied().collect();
                if set.len() == 6 && !set.contains(&0) && (!full || set.len() as u64 == m - 1) {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn search_agrees_with_brute_force_on_cyclic_groups() {
    for m in 1..=31u64 {
        for mode in [SplitMode::Full, SplitMode::Weak] {
            let full = mode == SplitMode::Full;
            let prob = SearchProblem::new(
                AbelianGroup::cyclic(m).unwrap(),
                CoefficientSet::new(1, 0).unwrap(),
                2,
                3,
            )
            .unwrap()
            .with_options(SearchOptions {
                mode,
                ..SearchOptions::default()
            });
            let out = search_splitting(&prob).unwrap();
            let found = out.status == SearchStatus::Found;
            assert_ne!(out.status, SearchStatus::BudgetExceeded);
            assert_eq!(found, brute_force_z(m, full), "Z_{m} {mode:?}");
        }
    }
}

#[test]
fn order2_lemma_is_conservative() {
    // full splittings for B(n,2,1,0), |G| <= 67
    for n in 3..=11 {
        let order = BallParams::new(n, 2, 1, 0).unwrap().size_u64().unwrap();
        let out = search_all_groups(
            order,
            CoefficientSet::new(1, 0).unwrap(),
            2,
            n,
            &SearchOptions::default(),
        )
        .unwrap();
        for (g, o) in out {
            if !lemma_order2_ok(&g, n) {
                assert_eq!(o.status, SearchStatus::ExhaustedNone, "{g} n={n}");
            }
        }
    }
    // weak splittings, where the lemma still applies
    let weak = SearchOptions {
        mode: SplitMode::Weak,
        ..SearchOptions::default()
    };
    let mut rejected = 0;
    for order in 2..=40u64 {
        for g in groups_of_order(order).unwrap() {
            let n = (3..).find(|&n| !lemma_order2_ok(&g, n)).unwrap();
            let prob = SearchProblem::new(g.clone(), CoefficientSet::new(1, 0).unwrap(), 2, n)
                .unwrap()
                .with_options(weak.clone());
            assert_eq!(
                search_splitting(&prob).unwrap().status,
                SearchStatus::ExhaustedNone,
                "{g} n={n}"
            );
            rejected += 1;
        }
    }
    assert!(rejected > 40);
}

#[test]
fn order3_lemma_is_conservative() {
    let weak = SearchOptions {
        mode: SplitMode::Weak,
        ..SearchOptions::default()
    };
    for order in (3..=99u64).step_by(2) {
        for g in groups_of_order(order).unwrap() {
            let Some(n) = (3..=12).find(|&n| !lemma_order3_ok(&g, n)) else {
                continue;
            };
            let prob = SearchProblem::new(g.clone(), CoefficientSet::new(2, 0).unwrap(), 2, n)
                .unwrap()
                .with_options(weak.clone());
            assert_eq!(
                search_splitting(&prob).unwrap().status,
                SearchStatus::ExhaustedNone,
                "{g} n={n}"
            );
        }
    }
}
