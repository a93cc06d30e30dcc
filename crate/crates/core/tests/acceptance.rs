//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see the lines for passing
//! tests; failing tests print them in the captured output).
//!
//! Criteria 3, 4 and 10 assert the reference material exactly as printed.
//! Recomputation (confirmed by the independent oracles below and by the
//! unit-level oracles) shows the printed values are wrong in a few places,
//! so those tests fail by design rather than silently adopting either side;
//! the library itself reports recomputed values with divergence annotations.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use wmas_core::certify::{
    example_counterchecks, lee_threshold_corollary, lee_threshold_tables, master_test,
    product_of_variables_zero_count, reference, reproduce_table, round_to_significant,
    sumrank_threshold, sz_empirical_check, Regime, Verdict,
};
use wmas_core::combinat::bounded_part_partition_count;
use wmas_core::dispersion::{
    homogeneous_dispersion, johnson_dispersion, lee_dispersion, mixed_dispersion, nrt_dispersion,
    sumrank_dispersion,
};
use wmas_core::eigen::lee_eigen_gf;
use wmas_core::mdistance::{
    all_pairs_m_distance, box_domain, cycle_graph, is_l1_compatible, is_m_distance_regular,
    m_distance_from, path_graph, petersen_graph, random_connected_colored,
    triangle_inequality_check, ColoredGraph, MDistanceRegularity, MonomialOrder,
};
use wmas_core::scheme::{
    build_scheme, clark_liang_identity_check, diagonal_lee_code, hamming_7_code, is_perfect_code,
    lee_distance_only_partition, lloyd_theorem_check, verify_axioms,
    verify_simultaneous_diagonalization, AxiomViolation, SchemeFamilyParams,
};

fn pass(id: u32, desc: &str, elapsed: Duration) {
    println!("ACCEPTANCE {id:02} PASS: {desc} ({elapsed:.2?})");
}

fn fail(id: u32, desc: &str, detail: &str) -> ! {
    println!("ACCEPTANCE {id:02} FAIL: {desc}");
    println!("{detail}");
    panic!("acceptance criterion {id} failed; see printed analysis");
}

/// All vectors in N^len with sum at most cap.
fn vectors_up_to(len: usize, cap: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            let used: u64 = v.iter().sum();
            for x in 0..=cap - used {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

// ---------------------------------------------------------------------------
// 1-4: reference table reproduction
// ---------------------------------------------------------------------------

#[test]
fn acceptance_01_table1_lee_q4() {
    let desc = "Table 1 (Lee q=4): all 12 recomputed rows match the reference exactly, < 1 s";
    let start = Instant::now();
    let rows = reproduce_table(1).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(rows.len(), 12);
    for (row, &(e, pi, bound, ineq)) in rows.iter().zip(reference::TABLE_1.iter()) {
        assert_eq!(row.e, e);
        assert_eq!(row.pi_minus_1, BigUint::from(pi), "Π-1 at e={e}");
        assert_eq!(row.sz_bound, BigUint::from(bound), "bound at e={e}");
        assert_eq!(row.inequality, ineq, "verdict at e={e}");
        assert!(row.annotation.is_none(), "unexpected divergence at e={e}");
    }
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    pass(1, desc, elapsed);
}

#[test]
fn acceptance_02_table2_lee_q6() {
    let desc = "Table 2 (Lee q=6): rows match except e=21, flagged with recomputed 405, verdict still Yes, < 1 s";
    let start = Instant::now();
    let rows = reproduce_table(2).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(rows.len(), 12);
    for (row, &(e, pi, bound, ineq)) in rows.iter().zip(reference::TABLE_2.iter()) {
        assert_eq!(row.e, e);
        assert_eq!(row.sz_bound, BigUint::from(bound));
        assert_eq!(row.inequality, ineq, "verdict at e={e}");
        if e == 21 {
            // The printed 457 duplicates the e=22 row; the cumulative value
            // is 405 and the Yes verdict stands (405 > 336).
            assert_eq!(row.pi_minus_1, BigUint::from(405u32));
            assert!(row.inequality);
            let note = row.annotation.as_deref().expect("divergence annotation");
            assert!(note.contains("457"), "{note}");
        } else {
            assert_eq!(row.pi_minus_1, BigUint::from(pi), "Π-1 at e={e}");
            assert!(row.annotation.is_none(), "unexpected divergence at e={e}");
        }
    }
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    pass(2, desc, elapsed);
}

#[test]
fn acceptance_03_table3_lee_q8() {
    let desc = "Table 3 (Lee q=8): all 12 rows match the reference exactly, < 1 s";
    let start = Instant::now();
    let rows = reproduce_table(3).unwrap();
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    // The anchor values called out by the criterion hold.
    let e40 = rows.iter().find(|r| r.e == 40).unwrap();
    assert_eq!(e40.pi_minus_1, BigUint::from(7385u32));
    assert_eq!(e40.sz_bound, BigUint::from(5000u32));
    // Verdicts match on every row either way.
    for (row, &(e, _, bound, ineq)) in rows.iter().zip(reference::TABLE_3.iter()) {
        assert_eq!(row.e, e);
        assert_eq!(row.sz_bound, BigUint::from(bound));
        assert_eq!(row.inequality, ineq, "verdict at e={e}");
    }
    let mismatches: Vec<String> = rows
        .iter()
        .zip(reference::TABLE_3.iter())
        .filter(|(row, &(_, pi, _, _))| row.pi_minus_1 != BigUint::from(pi))
        .map(|(row, &(e, pi, _, _))| {
            format!(
                "  e={e}: reference prints Π-1 = {pi}, recomputation gives {}",
                row.pi_minus_1
            )
        })
        .collect();
    if !mismatches.is_empty() {
        fail(
            3,
            desc,
            &format!(
                "the criterion requires exact agreement with the reference print, but the \
                 reference rows e = 75, 80, 85, 90 are misprints: the cumulative count of \
                 partitions with parts <= 4 (confirmed by the generating-function route, the \
                 box-partition DP, and direct enumeration, which all agree) differs:\n{}\n\
                 No choice of length n reproduces the printed tail either. Verdicts are \
                 unaffected (recomputed values are larger and bounds unchanged). The library \
                 reports the recomputed values with divergence annotations.",
                mismatches.join("\n")
            ),
        );
    }
    pass(3, desc, elapsed);
}

#[test]
fn acceptance_04_table4_sumrank() {
    let desc = "Table 4 (sum-rank): exact Π-1 = C(t+e,e)-1 and bound e·2^(t-1) render to the printed mantissa x 10^k, f(0.4) = 1.311 ± 0.001, < 1 s";
    let start = Instant::now();
    let rows = reproduce_table(4).unwrap();
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    assert!((sumrank_threshold(0.4).exact - 1.311).abs() < 0.001);

    // Exact integers first: the (80,32) row exercises ~1e28 arithmetic.
    let big = rows.iter().find(|r| r.t == Some(80)).unwrap();
    assert_eq!(
        big.pi_minus_1,
        wmas_core::combinat::binomial(112, 32) - 1u32
    );
    assert!(big.pi_minus_1.to_string().len() == 29);
    for (row, &(t, e, _, _, _, _, ineq)) in rows.iter().zip(reference::TABLE_4.iter()) {
        assert_eq!((row.t.unwrap(), row.e), (t, e));
        assert_eq!(
            row.pi_minus_1,
            wmas_core::combinat::binomial(t + e, e) - 1u32
        );
        assert_eq!(
            row.sz_bound,
            BigUint::from(e) * BigUint::from(2u32).pow(t as u32 - 1)
        );
        assert_eq!(row.inequality, ineq);
    }

    // Display-rounding rule: round to the printed number of significant
    // digits; mantissa and exponent must both match the print.
    let mut mismatches = Vec::new();
    for (row, &(t, e, pi_m, pi_k, b_m, b_k, _)) in rows.iter().zip(reference::TABLE_4.iter()) {
        let (m, k) = round_to_significant(&row.pi_minus_1, pi_m.len());
        if (m.to_string().as_str(), k) != (pi_m, pi_k) {
            mismatches.push(format!(
                "  (t,e)=({t},{e}) Π-1 = {}: renders {m}x10^{k}, reference prints {pi_m}x10^{pi_k}",
                row.pi_minus_1
            ));
        }
        let (m, k) = round_to_significant(&row.sz_bound, b_m.len());
        if (m.to_string().as_str(), k) != (b_m, b_k) {
            mismatches.push(format!(
                "  (t,e)=({t},{e}) bound = {}: renders {m}x10^{k}, reference prints {b_m}x10^{b_k}",
                row.sz_bound
            ));
        }
    }
    if !mismatches.is_empty() {
        fail(
            4,
            desc,
            &format!(
                "16 of 18 cells match the reference under nearest-significant-digit rounding; \
                 the remaining reference cells are typos (no rounding rule reproduces them \
                 consistently with the other 16):\n{}\n\
                 Both exact values, both verdicts, and all remaining renderings check out; the \
                 library annotates these two cells in its table output.",
                mismatches.join("\n")
            ),
        );
    }
    pass(4, desc, elapsed);
}

// ---------------------------------------------------------------------------
// 5-6: thresholds and oracle equivalence
// ---------------------------------------------------------------------------

#[test]
fn acceptance_05_threshold_captions() {
    let desc = "thresholds: tables form gives 12, 144, 2880 for s = 2, 3, 4; corollary form gives 12 at s = 2";
    let start = Instant::now();
    assert_eq!(lee_threshold_tables(2), BigUint::from(12u32));
    assert_eq!(lee_threshold_tables(3), BigUint::from(144u32));
    assert_eq!(lee_threshold_tables(4), BigUint::from(2880u32));
    assert_eq!(lee_threshold_corollary(2), 12.0);
    pass(5, desc, start.elapsed());
}

#[test]
fn acceptance_06_oracle_equivalence() {
    let desc =
        "closed-form/GF dispersion equals brute-force enumeration on the full desk grid, < 60 s";
    let start = Instant::now();

    // Lee: compositions k in N^s with Σk <= n, weight Σ i·k_i <= e.
    for q in 2..=8u64 {
        let s = (q / 2) as usize;
        for n in 1..=6u64 {
            let classes = vectors_up_to(s, n);
            for e in 0..=20u64 {
                let oracle = classes
                    .iter()
                    .filter(|k| {
                        k.iter()
                            .enumerate()
                            .map(|(i, &v)| (i as u64 + 1) * v)
                            .sum::<u64>()
                            <= e
                    })
                    .count();
                assert_eq!(
                    lee_dispersion(q, n, e),
                    BigUint::from(oracle),
                    "Lee q={q} n={n} e={e}"
                );
            }
        }
    }

    // NRT: shapes λ in N^r with Σλ <= n, Σ i·λ_i <= e.
    for r in 1..=4u64 {
        for n in 1..=6u64 {
            let shapes = vectors_up_to(r as usize, n);
            for e in 0..=20u64 {
                let oracle = shapes
                    .iter()
                    .filter(|l| {
                        l.iter()
                            .enumerate()
                            .map(|(i, &v)| (i as u64 + 1) * v)
                            .sum::<u64>()
                            <= e
                    })
                    .count();
                assert_eq!(
                    nrt_dispersion(r, n, e),
                    BigUint::from(oracle),
                    "NRT r={r} n={n} e={e}"
                );
            }
        }
    }

    // Mixed: up to 4 blocks with bounds <= 6 (non-decreasing representatives;
    // the count is permutation-invariant).
    let mut bound_sets: Vec<Vec<u64>> = Vec::new();
    for k in 1..=4usize {
        let mut stack: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..k {
            stack = stack
                .into_iter()
                .flat_map(|v| {
                    let lo = v.last().copied().unwrap_or(1);
                    (lo..=6).map(move |b| {
                        let mut w = v.clone();
                        w.push(b);
                        w
                    })
                })
                .collect();
        }
        bound_sets.extend(stack);
    }
    for bounds in &bound_sets {
        for e in 0..=15u64 {
            let oracle = vectors_up_to(bounds.len(), e)
                .into_iter()
                .filter(|t| t.iter().zip(bounds).all(|(&v, &b)| v <= b))
                .count();
            assert_eq!(
                mixed_dispersion(bounds, e),
                BigUint::from(oracle),
                "Mixed {bounds:?} e={e}"
            );
        }
    }

    // Johnson: pairs 0 <= j <= i <= w with i + j <= e.
    for w in 1..=30u64 {
        for e in 0..=2 * w + 10 {
            let oracle: u64 = (0..=w)
                .map(|i| (0..=i).filter(|&j| i + j <= e).count() as u64)
                .sum();
            assert_eq!(
                johnson_dispersion(w, e),
                BigUint::from(oracle),
                "Johnson w={w} e={e}"
            );
        }
    }

    // Homogeneous: 4-part statistics of n with weight π_U + π_V + 2π_S <= t'.
    for n in 1..=20u64 {
        let stats: Vec<Vec<u64>> = vectors_up_to(4, n)
            .into_iter()
            .filter(|p| p.iter().sum::<u64>() == n)
            .collect();
        for t_prime in 0..=2 * n + 3 {
            let oracle = stats
                .iter()
                .filter(|p| p[1] + p[3] + 2 * p[2] <= t_prime)
                .count();
            assert_eq!(
                homogeneous_dispersion(n, t_prime),
                BigUint::from(oracle),
                "Homogeneous n={n} t'={t_prime}"
            );
        }
    }

    // Sum-rank in the validated regime e <= d.
    for t in 1..=6u64 {
        for d in 1..=6u64 {
            for e in 0..=d {
                let oracle = vectors_up_to(t as usize, e)
                    .into_iter()
                    .filter(|b| b.iter().all(|&v| v <= d))
                    .count();
                assert_eq!(
                    sumrank_dispersion(t, d, e),
                    BigUint::from(oracle),
                    "SumRank t={t} d={d} e={e}"
                );
            }
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(6, desc, elapsed);
}

// ---------------------------------------------------------------------------
// 7-8: scheme axioms and eigenvalues
// ---------------------------------------------------------------------------

#[test]
fn acceptance_07_scheme_axioms() {
    let desc = "verify_axioms passes on the full builder grid; Lee-distance-only relations on Z_q^2 fail A3; < 120 s";
    let start = Instant::now();

    let mut grid: Vec<SchemeFamilyParams> = Vec::new();
    for q in 2..=7u32 {
        for n in 1..=3u32 {
            grid.push(SchemeFamilyParams::Lee { q, n });
        }
    }
    for q in [2u32, 3] {
        for r in 1..=2u32 {
            for n in 1..=2u32 {
                grid.push(SchemeFamilyParams::Nrt { q, n, r });
            }
        }
    }
    // Mixed: up to 3 blocks, block length <= 2, alphabets <= 4, |X| <= 600.
    let block_choices: Vec<(u32, u32)> = (1..=2u32)
        .flat_map(|n| (2..=4u32).map(move |q| (n, q)))
        .collect();
    let mut mixed_sets: Vec<Vec<(u32, u32)>> = Vec::new();
    for &b1 in &block_choices {
        mixed_sets.push(vec![b1]);
        for &b2 in &block_choices {
            if b2 < b1 {
                continue;
            }
            mixed_sets.push(vec![b1, b2]);
            for &b3 in &block_choices {
                if b3 < b2 {
                    continue;
                }
                mixed_sets.push(vec![b1, b2, b3]);
            }
        }
    }
    for blocks in mixed_sets {
        let size: u64 = blocks.iter().map(|&(n, q)| (q as u64).pow(n)).product();
        if size <= 600 {
            grid.push(SchemeFamilyParams::Mixed { blocks });
        }
    }
    for n in 1..=2u32 {
        grid.push(SchemeFamilyParams::Homogeneous { k: 3, n });
        grid.push(SchemeFamilyParams::Homogeneous { k: 2, n });
    }
    grid.push(SchemeFamilyParams::Sumrank {
        q: 2,
        blocks: vec![(2, 2)],
    });
    grid.push(SchemeFamilyParams::Sumrank {
        q: 2,
        blocks: vec![(2, 2), (2, 2)],
    });
    grid.push(SchemeFamilyParams::Clarkliang);

    let mut checked = 0usize;
    for family in &grid {
        let scheme = build_scheme(family).unwrap_or_else(|e| panic!("{family}: {e}"));
        if let Err(v) = verify_axioms(&scheme) {
            fail(7, desc, &format!("{family} violates the axioms: {v}"));
        }
        checked += 1;
    }

    // Negative control: grouping pairs by Lee distance alone is not an
    // association scheme for some (in fact most) q.
    let mut a3_failed = false;
    for q in 4..=8u32 {
        let candidate = lee_distance_only_partition(q, 2, 20_000).unwrap();
        if matches!(
            verify_axioms(&candidate),
            Err(AxiomViolation::IntersectionNotConstant { .. })
        ) {
            a3_failed = true;
        }
    }
    assert!(a3_failed, "no q in 4..=8 exhibited the A3 failure");

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("  ({checked} builders verified)");
    pass(7, desc, elapsed);
}

#[test]
fn acceptance_08_eigenvalue_correctness() {
    let desc = "character tables satisfy D_k·chi = P_k(chi)·chi within 1e-8; Lee GF matches the oracle within 1e-9 for q <= 8, n <= 3";
    let start = Instant::now();

    let schemes = [
        SchemeFamilyParams::Lee { q: 5, n: 2 },
        SchemeFamilyParams::Lee { q: 4, n: 2 },
        SchemeFamilyParams::Lee { q: 6, n: 3 },
        SchemeFamilyParams::Homogeneous { k: 3, n: 2 },
        SchemeFamilyParams::Nrt { q: 2, n: 2, r: 2 },
        SchemeFamilyParams::Sumrank {
            q: 2,
            blocks: vec![(2, 2), (2, 2)],
        },
    ];
    for family in &schemes {
        let scheme = build_scheme(family).unwrap();
        let table = scheme.eigen_table().unwrap();
        let dev = verify_simultaneous_diagonalization(&scheme, &table).unwrap();
        assert!(dev < 1e-8, "{family}: max deviation {dev:.3e}");
    }

    // Lee eigenvalue generating function vs the character oracle.
    for q in 2..=8u64 {
        for n in 1..=3u64 {
            let family = SchemeFamilyParams::Lee {
                q: q as u32,
                n: n as u32,
            };
            let scheme = build_scheme(&family).unwrap();
            let table = scheme.eigen_table().unwrap();
            for (j, idx) in table.eigen_indices.iter().enumerate() {
                let poly = lee_eigen_gf(q, n, idx).unwrap();
                for (k, class) in table.classes.iter().enumerate() {
                    let got = poly.coefficient(&class[1..]);
                    let want = table.values[k][j];
                    assert!(
                        (got - want).abs() < 1e-9,
                        "Lee q={q} n={n} class {class:?} index {idx:?}: GF {got} vs oracle {want}"
                    );
                }
            }
        }
    }

    pass(8, desc, start.elapsed());
}

// ---------------------------------------------------------------------------
// 9-10: Lloyd end-to-end and Clark-Liang
// ---------------------------------------------------------------------------

#[test]
fn acceptance_09_lloyd_end_to_end() {
    let desc = "diagonal Lee code in Z_5^2 and the length-7 binary code are perfect and pass the Lloyd check; Hamming shows Ψ_1(j) = 8-2j with one vanishing index";
    let start = Instant::now();

    let (family, code) = diagonal_lee_code();
    let scheme = build_scheme(&family).unwrap();
    let perfect = is_perfect_code(&scheme, &code).unwrap();
    assert!(perfect.perfect, "{:?}", perfect.witness);
    let lloyd = lloyd_theorem_check(&scheme, &code).unwrap();
    assert_eq!(lloyd.pi, BigUint::from(2u32));
    assert!(lloyd.zero_count >= 1 && lloyd.pass);

    let (family, code) = hamming_7_code();
    let scheme = build_scheme(&family).unwrap();
    let perfect = is_perfect_code(&scheme, &code).unwrap();
    assert!(perfect.perfect, "{:?}", perfect.witness);
    assert_eq!(perfect.code_size, 16);
    let lloyd = lloyd_theorem_check(&scheme, &code).unwrap();
    let expect: Vec<f64> = (0..8).map(|j| (8 - 2 * j) as f64).collect();
    assert_eq!(lloyd.psi, expect, "Ψ_1(j) = 8-2j");
    assert_eq!(lloyd.zero_count, 1);
    assert_eq!(lloyd.required_zeros, BigUint::from(1u32));
    assert!(lloyd.pass);

    pass(9, desc, start.elapsed());
}

#[test]
fn acceptance_10_clark_liang() {
    let desc = "Clark-Liang: 4A_3 = A_1^2 - 3A_1 - 6A_2 exactly, and the induced eigenvalue relation at every character";
    let start = Instant::now();
    let report = clark_liang_identity_check();
    if !report.stated_identity_holds || report.stated_eigen_relation_max_dev > 1e-9 {
        fail(
            10,
            desc,
            &format!(
                "the stated identity holds off-diagonal but fails on the diagonal: A_1^2 has \
                 diagonal entries equal to the valency |X_1| = 8 (any symmetric class does), \
                 while 4A_3 - ... has zero diagonal. Exact integer computation gives\n  \
                 A_1^2 = 8I + 3A_1 + 6A_2 + 4A_3,\n\
                 i.e. the identity needs a -8I correction (found c = {:?}); the induced \
                 eigenvalue relation is off by that same constant 8 at every character \
                 (stated-form max deviation {}, corrected-form max deviation {:.1e}). \
                 The verified relation 4P_3 = P_1^2 - 3P_1 - 6P_2 - 8 still shows the scheme \
                 is 2-polynomial at the points (P_1(i), P_2(i)).",
                report.diagonal_correction,
                report.stated_eigen_relation_max_dev,
                report.corrected_eigen_relation_max_dev,
            ),
        );
    }
    pass(10, desc, start.elapsed());
}

// ---------------------------------------------------------------------------
// 11-12: Schwartz-Zippel and counterexample sweeps
// ---------------------------------------------------------------------------

#[test]
fn acceptance_11_schwartz_zippel() {
    let desc = "100 seeded random trials never exceed e·|S|^(n-1); product family reaches >= 90% of the bound at n=2, |S|=10";
    let start = Instant::now();

    // The dedicated 100-trial run plus a sweep over the parameter box.
    let report = sz_empirical_check(3, 4, 10, 100, 42);
    assert!(report.all_within_bound);
    let mut total = 100u64;
    for vars in 1..=3usize {
        for degree in [2u64, 5] {
            for set_size in [5u64, 12] {
                let r = sz_empirical_check(vars, degree, set_size, 10, 1000 + degree + set_size);
                assert!(
                    r.all_within_bound,
                    "vars={vars} degree={degree} |S|={set_size}: counts {:?} exceed {}",
                    r.zero_counts, r.bound
                );
                total += 10;
            }
        }
    }
    assert!(total >= 100);

    let (zeros, bound) = product_of_variables_zero_count(2, 10);
    assert_eq!(zeros, 19);
    assert_eq!(bound, 20);
    assert!(
        zeros <= bound && zeros * 10 >= bound * 9,
        "tightness witness"
    );

    pass(11, desc, start.elapsed());
}

#[test]
fn acceptance_12_counterexample_sweeps() {
    let desc = "homogeneous (n <= 40) never satisfies Π(t')-1 > t'(n+1)^3; Johnson (w <= 30) has Π(e) <= e(w+1) for e >= 1";
    let start = Instant::now();
    let report = example_counterchecks(40, 30);
    assert!(
        report.homogeneous_violations.is_empty(),
        "violations: {:?}",
        report.homogeneous_violations
    );
    assert!(
        report.johnson_violations.is_empty(),
        "violations: {:?}",
        report.johnson_violations
    );
    assert!(report.homogeneous_points == (1..=40u64).map(|n| 2 * n).sum::<u64>());
    pass(12, desc, start.elapsed());
}

// ---------------------------------------------------------------------------
// 13: appendix machinery
// ---------------------------------------------------------------------------

fn bfs_distances(graph: &ColoredGraph, src: usize) -> Vec<u32> {
    let n = graph.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &(u, v, _) in graph.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut dist = vec![u32::MAX; n];
    dist[src] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

#[test]
fn acceptance_13_appendix_m_distance() {
    let desc = "m=1 pipeline equals BFS on 50 random graphs; deglex is L1-compatible on [[6]]^3, lex is not; 5-cycle and Petersen are distance-regular; triangle checks pass under deglex";
    let start = Instant::now();

    let one = MonomialOrder::deglex(1);
    for seed in 0..50u64 {
        let graph = random_connected_colored(4 + (seed as usize % 8), 1, seed as usize % 6, seed);
        for src in 0..graph.vertex_count() {
            let got = m_distance_from(&graph, src, &one).unwrap();
            let expect = bfs_distances(&graph, src);
            for v in 0..graph.vertex_count() {
                assert_eq!(got[v], vec![expect[v]], "seed {seed}, {src}->{v}");
            }
        }
    }

    let domain = box_domain(3, 6);
    let deglex = MonomialOrder::deglex(3);
    assert!(is_l1_compatible(&deglex, &domain).unwrap().compatible);
    let lex_report = is_l1_compatible(&MonomialOrder::lex(3), &domain).unwrap();
    assert!(!lex_report.compatible);
    let (a, b) = lex_report.witness.expect("witness pair");
    assert!(a.iter().map(|&v| v as u64).sum::<u64>() > b.iter().map(|&v| v as u64).sum::<u64>());

    for (name, graph) in [("5-cycle", cycle_graph(5)), ("Petersen", petersen_graph())] {
        let res = is_m_distance_regular(&graph, &one).unwrap();
        assert!(
            matches!(res, MDistanceRegularity::Regular { .. }),
            "{name} should be 1-distance-regular"
        );
    }

    // Triangle inequality (vector and scalar forms) on the desk graphs.
    let mut desk: Vec<(String, ColoredGraph, MonomialOrder)> = vec![
        ("5-cycle".into(), cycle_graph(5), MonomialOrder::deglex(1)),
        (
            "Petersen".into(),
            petersen_graph(),
            MonomialOrder::deglex(1),
        ),
        ("path-6".into(), path_graph(6), MonomialOrder::deglex(1)),
    ];
    for seed in 0..10u64 {
        desk.push((
            format!("random-{seed}"),
            random_connected_colored(8, 2, 5, seed),
            MonomialOrder::deglex(2),
        ));
    }
    for (name, graph, order) in &desk {
        let report = triangle_inequality_check(graph, order).unwrap();
        assert!(report.vector_holds, "{name}: vector triangle fails");
        assert_eq!(report.scalar_holds, Some(true), "{name}: scalar triangle");
        // Sanity: the all-pairs table is symmetric with zero diagonal.
        let table = all_pairs_m_distance(graph, order).unwrap();
        for x in 0..graph.vertex_count() {
            assert!(table[x][x].iter().all(|&v| v == 0));
        }
    }

    pass(13, desc, start.elapsed());
}

// ---------------------------------------------------------------------------
// Cross-checks tied to the acceptance gate but not numbered: the certificate
// invariants that the tables rely on.
// ---------------------------------------------------------------------------

#[test]
fn acceptance_support_certificates_match_tables() {
    // Table rows and master_test agree for Lee in the tables regime.
    for &(e, pi, bound, ineq) in &reference::TABLE_1 {
        let cert = master_test(
            &SchemeFamilyParams::Lee {
                q: 4,
                n: (e + 1) as u32,
            },
            e,
            Regime::Tables,
        )
        .unwrap();
        assert_eq!(&cert.pi - 1u32, BigUint::from(pi));
        assert_eq!(cert.bound, BigUint::from(bound));
        assert_eq!(cert.verdict == Verdict::Nonexistent, ineq);
    }
    // The corollary-1 regime is exposed and distinct.
    let cert = master_test(
        &SchemeFamilyParams::Lee { q: 4, n: 10 },
        9,
        Regime::Corollary1,
    )
    .unwrap();
    assert_eq!(cert.r, 3);
    assert_eq!(cert.s_size, 11);
    assert!(cert.regime.contains("corollary1"));

    // Lee length-independence feeding the tables: Π(e) with n = e+1 equals
    // the cumulative bounded-part count.
    for q in [4u64, 6, 8] {
        let s = q / 2;
        for e in 0..=30u64 {
            let cumulative: BigUint = (0..=e).map(|j| bounded_part_partition_count(j, s)).sum();
            assert_eq!(lee_dispersion(q, e + 1, e), cumulative);
        }
    }
}

#[test]
fn acceptance_support_profile_runtime() {
    // The certificate pipeline at table-3 magnitudes stays fast enough for
    // the 1-second reproduction criteria with margin.
    let start = Instant::now();
    for _ in 0..10 {
        let rows = reproduce_table(3).unwrap();
        assert_eq!(rows.len(), 12);
    }
    assert!(start.elapsed() < Duration::from_secs(2));
    // And the big binomials used by table 4 are exact.
    let c = wmas_core::combinat::binomial(112, 32);
    assert_eq!((&c - 1u32).to_string(), "10484776488844408407191115272");
    assert!(c.to_f64().unwrap() > 1e28);
}
