//! Acceptance suite: every closed form reproduced exactly and certified
//! against the brute-force oracles. One pass/fail line per criterion
//! (visible with `cargo test --test acceptance -- --nocapture`).

use comaximal::arithmetic::{euler_phi, factor_squarefree, next_prime};
use comaximal::cli::{cmd_analyze, cmd_verify, AnalyzeOutcome, Caps};
use comaximal::cut_experiments::{
    connected_after_deletion, demonstrate_separator, minimum_cut_control, robustness_trials,
    SplitMix64,
};
use comaximal::explicit_graph::build_graph;
use comaximal::oracles::{bfs_distances, eccentricity_profile, vertex_connectivity_oracle};
use comaximal::support_model::{
    degree, diameter, kappa, kappa_append_prime, layer_distance, SupportSet,
};
use std::collections::BTreeSet;
use std::time::Instant;

const CAPS: Caps = Caps {
    graph: 10_000,
    flow: 2_500,
};

fn pass(criterion: &str) {
    println!("acceptance {criterion}: PASS");
}

#[test]
fn criterion_01_layer_table_for_30() {
    let start = Instant::now();
    let AnalyzeOutcome::Report(report) = cmd_analyze(30).unwrap() else {
        panic!("30 is composite");
    };
    let supports: Vec<&str> = report.layers.iter().map(|l| l.support.as_str()).collect();
    let sizes: Vec<u64> = report.layers.iter().map(|l| l.size).collect();
    let divisors: Vec<u64> = report.layers.iter().map(|l| l.divisor).collect();
    assert_eq!(supports, ["1", "2", "3", "1+2", "1+3", "2+3"]);
    assert_eq!(sizes, [8, 4, 2, 4, 2, 1]);
    assert_eq!(divisors, [2, 3, 5, 6, 10, 15]);
    assert!(start.elapsed().as_secs_f64() < 1.0, "analyze 30 took too long");
    pass("01 layer table n=30");
}

#[test]
fn criterion_02_degree_table_for_210() {
    let modulus = factor_squarefree(210).unwrap();
    let listed = [
        (vec![1], 48, 57),
        (vec![2], 24, 92),
        (vec![3], 12, 120),
        (vec![4], 8, 132),
        (vec![1, 2], 24, 22),
        (vec![1, 2, 3], 6, 8),
        (vec![1, 2, 4], 4, 12),
    ];
    for (members, size, deg) in listed {
        let s = SupportSet::new(&members, 4);
        assert_eq!(
            comaximal::support_model::class_size(&modulus, &s),
            size,
            "size of X_{s}"
        );
        assert_eq!(degree(&modulus, &s), deg, "degree of X_{s}");
    }
    pass("02 degree table n=210");
}

#[test]
fn criterion_03_connectivity_table() {
    let rows = [
        (6u64, 1u64, 2u64, 2u8),
        (30, 2, 8, 3),
        (42, 2, 12, 3),
        (70, 4, 24, 3),
        (210, 8, 48, 3),
        (2310, 48, 480, 3),
    ];
    for (n, expected_kappa, expected_phi, expected_diameter) in rows {
        let modulus = factor_squarefree(n).unwrap();
        let k = kappa(&modulus);
        let (delta, _) = comaximal::support_model::min_degree(&modulus);
        let bound: u64 = modulus.primes()[..modulus.prime_count() - 1]
            .iter()
            .map(|&p| p - 1)
            .product();
        assert_eq!(k, expected_kappa, "kappa at n={n}");
        assert_eq!(delta, expected_kappa, "delta at n={n}");
        assert_eq!(euler_phi(&modulus), expected_phi, "phi at n={n}");
        assert_eq!(bound, k, "prior upper bound not tight at n={n}");
        assert_eq!(diameter(&modulus), expected_diameter, "diameter at n={n}");
    }
    pass("03 connectivity/diameter table");
}

#[test]
fn criterion_04_distance_table_for_210() {
    let pairs = [
        (vec![1], vec![2], 1u8),
        (vec![1, 2], vec![4], 1),
        (vec![1, 2], vec![2, 4], 2),
        (vec![1], vec![1, 3], 2),
        (vec![1, 2], vec![2, 3, 4], 3),
        (vec![1, 3], vec![2, 3, 4], 3),
    ];
    let graph = build_graph(&factor_squarefree(210).unwrap(), CAPS.graph).unwrap();
    for (a, b, expected) in pairs {
        let sa = SupportSet::new(&a, 4);
        let sb = SupportSet::new(&b, 4);
        assert_eq!(layer_distance(&sa, &sb), expected, "formula for {sa},{sb}");
        // Confirm by BFS between concrete residues of those layers.
        let x = graph.layer_residues(&sa)[0];
        let y = *graph.layer_residues(&sb).last().unwrap();
        let dist = bfs_distances(&graph, x).unwrap();
        let observed = dist[graph.index_of_residue(y).unwrap()].unwrap();
        assert_eq!(observed, expected as u32, "bfs for {sa},{sb}");
    }
    pass("04 distance table n=210");
}

#[test]
fn criterion_05_oracle_sweep_to_300() {
    for n in 6..=300u64 {
        let Ok(_) = factor_squarefree(n) else {
            continue;
        };
        // cmd_verify covers: vertex count, blow-up, per-vertex degrees,
        // kappa (flow oracle vs loop vs Euler form), lambda, delta with
        // unique argmin layer, all-pairs distances, diameter, and
        // radius/center for m >= 3.
        let report = cmd_verify(n, CAPS, false, 0, 0).unwrap();
        assert!(report.passed(), "n={n}:\n{}", report.render_text());
    }
    pass("05 oracle equivalence sweep n<=300");
}

#[test]
fn criterion_06_large_spot_check_2310() {
    let modulus = factor_squarefree(2310).unwrap();
    let graph = build_graph(&modulus, CAPS.graph).unwrap();
    assert_eq!(graph.vertex_count(), 1829);
    let profile = eccentricity_profile(&graph).unwrap();
    assert_eq!(profile.diameter, 3);
    let (k, certificate) = vertex_connectivity_oracle(&graph);
    assert_eq!(k, 48);
    assert_eq!(certificate.cut_vertices.len(), 48);
    assert!(certificate.validate(&graph));
    pass("06 large spot check n=2310");
}

#[test]
fn criterion_07_separator_sharpness() {
    for n in [30u64, 210, 2310] {
        let modulus = factor_squarefree(n).unwrap();
        let k = kappa(&modulus);

        let certificate = demonstrate_separator(&modulus).unwrap();
        assert_eq!(certificate.cut_vertices.len() as u64, k, "cut size at n={n}");

        let control = minimum_cut_control(&modulus).unwrap();
        assert!(!control.connected_after, "full layer must disconnect n={n}");

        // Any proper subset of the cut layer leaves the graph connected.
        let graph = build_graph(&modulus, CAPS.graph).unwrap();
        let cut: Vec<u64> = certificate.cut_vertices.iter().copied().collect();
        let mut rng = SplitMix64::new(0xA11CE ^ n);
        for _ in 0..50 {
            let size = 1 + rng.next_below(cut.len() as u64 - 1) as usize;
            let deleted: BTreeSet<u64> = rng
                .sample_indices(size, cut.len())
                .into_iter()
                .map(|i| cut[i])
                .collect();
            assert!(
                connected_after_deletion(&graph, &deleted),
                "proper subset of the cut disconnected n={n}"
            );
        }
    }
    pass("07 separator sharpness");
}

#[test]
fn criterion_08_robustness_trials() {
    for n in [30u64, 42, 70, 210] {
        let modulus = factor_squarefree(n).unwrap();
        let trials = robustness_trials(&modulus, 200, 0xBEEF ^ n).unwrap();
        assert_eq!(trials.len(), 200);
        for (t, trial) in trials.iter().enumerate() {
            assert_eq!(trial.deleted.len() as u64, kappa(&modulus) - 1);
            assert!(trial.connected_after, "n={n} trial {t} disconnected");
            assert!(trial.anchor_found, "n={n} trial {t}: no surviving anchor");
            assert!(
                trial.within_two_of_anchor,
                "n={n} trial {t}: survivor beyond two hops of the anchor"
            );
            assert!(
                trial.max_pair_distance_after <= 4,
                "n={n} trial {t}: post-deletion diameter {}",
                trial.max_pair_distance_after
            );
        }
    }
    pass("08 robustness trials");
}

#[test]
fn criterion_09_append_prime_recurrence() {
    let mut rng = SplitMix64::new(0xD1CE);
    let pool: Vec<u64> = (6..=600)
        .filter(|&n| factor_squarefree(n).is_ok())
        .collect();
    for _ in 0..20 {
        let n = pool[rng.next_below(pool.len() as u64) as usize];
        let modulus = factor_squarefree(n).unwrap();
        let q = next_prime(modulus.largest_prime());
        let predicted = kappa_append_prime(&modulus, q).unwrap();
        let recomputed = kappa(&factor_squarefree(n * q).unwrap());
        assert_eq!(predicted, recomputed, "n={n}, q={q}");
    }
    pass("09 append-prime recurrence");
}

#[test]
fn criterion_10_largest_prime_invariance() {
    for q in [7u64, 11, 13, 101] {
        let modulus = factor_squarefree(2 * 3 * 5 * q).unwrap();
        assert_eq!(kappa(&modulus), 8, "kappa(G2(2*3*5*{q}))");
    }
    pass("10 largest-prime invariance");
}
