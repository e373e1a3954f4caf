//! Command drivers behind the `comaximal` binary: analyze, verify, sweep,
//! export, distance, robustness. Each returns data; rendering lives in
//! `report`. Exit-code policy: 0 success/verified, 1 verification
//! mismatch, 2 invalid input.

use crate::arithmetic::{euler_phi, factor_squarefree, Modulus, ModulusError};
use crate::cut_experiments::{minimum_cut_control, robustness_trials, RobustnessTrial};
use crate::explicit_graph::{
    build_graph, check_blowup, gcd_criteria_equivalent, GraphError,
};
use crate::oracles::{
    bfs_distances, eccentricity_profile, edge_connectivity_oracle, vertex_connectivity_oracle,
};
use crate::report::{
    AnalysisReport, CheckResult, DistanceReport, ExportFormat, ExportLevel, LayerRow, SweepRow,
    VerificationReport,
};
use crate::support_model::{
    build_quotient, diameter, kappa, lambda_edge, layer_distance, min_degree, radius_and_center,
    SupportSet,
};
use thiserror::Error;

pub const DEFAULT_GRAPH_CAP: u64 = 10_000;
pub const DEFAULT_FLOW_CAP: u64 = 2_500;
pub const CAP_ENV_VAR: &str = "COMAXIMAL_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Modulus(#[from] ModulusError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("residue {residue} is not a vertex of the graph for n = {n}: {reason}")]
    NotAVertex {
        residue: u64,
        n: u64,
        reason: String,
    },
}

/// Caps on explicit-graph construction and on flow-based oracles. Flags
/// beat the COMAXIMAL_CAP environment variable, which beats defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub graph: u64,
    pub flow: u64,
}

pub fn resolve_caps(flag: Option<u64>) -> Caps {
    let env = std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|v| v.parse::<u64>().ok());
    let graph = flag.or(env).unwrap_or(DEFAULT_GRAPH_CAP);
    let flow = flag.or(env).unwrap_or(DEFAULT_FLOW_CAP);
    Caps { graph, flow }
}

/// `analyze` output: either the full report or the empty-graph notice for
/// prime n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalyzeOutcome {
    EmptyGraph { n: u64 },
    Report(Box<AnalysisReport>),
}

pub fn cmd_analyze(n: u64) -> Result<AnalyzeOutcome, CliError> {
    let modulus = match factor_squarefree(n) {
        Ok(m) => m,
        Err(ModulusError::PrimeModulus(n)) => return Ok(AnalyzeOutcome::EmptyGraph { n }),
        Err(e) => return Err(e.into()),
    };
    Ok(AnalyzeOutcome::Report(Box::new(analysis_report(&modulus))))
}

pub fn analysis_report(modulus: &Modulus) -> AnalysisReport {
    let quotient = build_quotient(modulus);
    let m = modulus.prime_count();
    let (delta, min_layer) = min_degree(modulus);
    let top = SupportSet::new(&[m], m);
    AnalysisReport {
        n: modulus.n(),
        primes: modulus.primes().to_vec(),
        phi: euler_phi(modulus),
        vertex_count: modulus.n() - 1 - euler_phi(modulus),
        kappa: kappa(modulus),
        lambda: lambda_edge(modulus),
        delta,
        diameter: diameter(modulus),
        radius: radius_and_center(modulus).ok().map(|(r, _)| r),
        min_degree_layer: min_layer.plus_label(),
        min_cut_layer: top.plus_label(),
        layers: quotient
            .layers()
            .iter()
            .map(|l| LayerRow {
                support: l.support.plus_label(),
                divisor: l.divisor,
                size: l.size,
                degree: l.degree,
            })
            .collect(),
    }
}

fn check(name: &str, passed: bool, details: Vec<String>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed,
        details,
    }
}

/// Run every oracle against every closed form for one modulus.
pub fn cmd_verify(
    n: u64,
    caps: Caps,
    deep: bool,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, CliError> {
    let modulus = factor_squarefree(n)?;
    let graph = build_graph(&modulus, caps.graph)?;
    let quotient = build_quotient(&modulus);
    let mut checks = Vec::new();

    // 1. Vertex count.
    let expected_v = n - 1 - euler_phi(&modulus);
    let got_v = graph.vertex_count() as u64;
    checks.push(check(
        "vertex count = n - 1 - phi(n)",
        got_v == expected_v,
        vec![format!("counted {got_v}, formula {expected_v}")],
    ));

    // 2. Blow-up structure and gcd-criterion equivalence.
    let blowup = check_blowup(&graph, &quotient);
    checks.push(check(
        "blow-up structure of the layer partition",
        blowup.passed(),
        blowup.discrepancies.iter().take(5).cloned().collect(),
    ));
    checks.push(check(
        "both gcd adjacency criteria agree on all pairs",
        gcd_criteria_equivalent(&graph),
        vec![],
    ));

    // 3. Per-vertex counted degree = formula degree.
    let mut degree_witness = Vec::new();
    for i in 0..graph.vertex_count() {
        let s = &graph.vertex(i).zero_set;
        let formula = quotient.layer(s).unwrap().degree;
        if graph.degree_of(i) as u64 != formula {
            degree_witness.push(format!(
                "residue {}: counted {}, formula {}",
                graph.vertex(i).residue,
                graph.degree_of(i),
                formula
            ));
        }
    }
    checks.push(check(
        "per-vertex degree matches the closed form",
        degree_witness.is_empty(),
        degree_witness.iter().take(5).cloned().collect(),
    ));

    // 4-5. Flow oracles for kappa and lambda.
    let kappa_formula = kappa(&modulus);
    if n <= caps.flow {
        let (kappa_oracle, certificate) = vertex_connectivity_oracle(&graph);
        checks.push(check(
            "flow oracle kappa = closed-form kappa = phi/(p_m - 1)",
            kappa_oracle == kappa_formula && certificate.validate(&graph),
            vec![format!("oracle {kappa_oracle}, formula {kappa_formula}")],
        ));
        let lambda_oracle = edge_connectivity_oracle(&graph).expect("graph is connected");
        checks.push(check(
            "flow oracle lambda = kappa",
            lambda_oracle == kappa_formula,
            vec![format!("oracle {lambda_oracle}, formula {kappa_formula}")],
        ));
    } else {
        checks.push(check(
            "flow oracles skipped (n above flow cap)",
            true,
            vec![format!("n = {n} > flow cap {}", caps.flow)],
        ));
    }

    // 6. Minimum degree.
    let (delta, min_layer) = min_degree(&modulus);
    let observed_delta = (0..graph.vertex_count())
        .map(|i| graph.degree_of(i) as u64)
        .min()
        .unwrap();
    let observed_argmin: Vec<u64> = (0..graph.vertex_count())
        .filter(|&i| graph.degree_of(i) as u64 == observed_delta)
        .map(|i| graph.vertex(i).residue)
        .collect();
    let layer_residues = graph.layer_residues(&min_layer);
    checks.push(check(
        "minimum degree and its unique layer",
        observed_delta == delta && observed_argmin == layer_residues,
        vec![format!(
            "observed delta {observed_delta}, formula {delta}, attained by {observed_argmin:?}"
        )],
    ));

    // 7. All-pairs distances and diameter.
    let mut distance_witness = Vec::new();
    let mut max_distance = 0u32;
    'outer: for i in 0..graph.vertex_count() {
        let dist = bfs_distances(&graph, graph.vertex(i).residue).unwrap();
        for j in 0..graph.vertex_count() {
            if i == j {
                continue;
            }
            let formula = layer_distance(&graph.vertex(i).zero_set, &graph.vertex(j).zero_set);
            match dist[j] {
                Some(d) => {
                    max_distance = max_distance.max(d);
                    if d != formula as u32 {
                        distance_witness.push(format!(
                            "residues {} -> {}: bfs {}, formula {}",
                            graph.vertex(i).residue,
                            graph.vertex(j).residue,
                            d,
                            formula
                        ));
                        if distance_witness.len() >= 5 {
                            break 'outer;
                        }
                    }
                }
                None => {
                    distance_witness.push(format!(
                        "residue {} unreachable from {}",
                        graph.vertex(j).residue,
                        graph.vertex(i).residue
                    ));
                    break 'outer;
                }
            }
        }
    }
    checks.push(check(
        "all-pairs BFS distance matches the support trichotomy",
        distance_witness.is_empty(),
        distance_witness.clone(),
    ));
    checks.push(check(
        "BFS diameter matches the closed form",
        distance_witness.is_empty() && max_distance == diameter(&modulus) as u32,
        vec![format!(
            "bfs {max_distance}, formula {}",
            diameter(&modulus)
        )],
    ));

    // 8. Radius and center (three or more prime factors only).
    if modulus.prime_count() >= 3 {
        let profile = eccentricity_profile(&graph).expect("graph is connected");
        let (radius, center_layers) = radius_and_center(&modulus).unwrap();
        let mut expected_center: Vec<u64> = center_layers
            .iter()
            .flat_map(|s| graph.layer_residues(s))
            .collect();
        expected_center.sort_unstable();
        let observed_center: Vec<u64> = profile.center.iter().copied().collect();
        checks.push(check(
            "radius 2 with singleton-layer center",
            profile.radius == radius as u32 && observed_center == expected_center,
            vec![format!(
                "bfs radius {}, center size {}",
                profile.radius,
                profile.center.len()
            )],
        ));
    }

    // Optional: seeded robustness trials plus the exact-cut control.
    if deep {
        let trial_results = robustness_trials(&modulus, trials.max(1), seed)?;
        let all_good = trial_results.iter().all(|t| {
            t.connected_after
                && t.anchor_found
                && t.within_two_of_anchor
                && t.max_pair_distance_after <= 4
        });
        checks.push(check(
            "sub-threshold deletions: connected, anchored, diameter <= 4",
            all_good,
            vec![format!("{} trials, seed {seed}", trial_results.len())],
        ));
        let control = minimum_cut_control(&modulus)?;
        checks.push(check(
            "deleting the full top singleton layer disconnects",
            !control.connected_after && control.deleted.len() as u64 == kappa_formula,
            vec![format!("deleted {} vertices", control.deleted.len())],
        ));
    }

    Ok(VerificationReport { n, checks })
}

/// Squarefree composite moduli up to `max`, ascending.
pub fn squarefree_composites(max: u64) -> Vec<Modulus> {
    (6..=max).filter_map(|n| factor_squarefree(n).ok()).collect()
}

pub fn cmd_sweep(max: u64, caps: Caps) -> Vec<SweepRow> {
    squarefree_composites(max)
        .into_iter()
        .map(|modulus| {
            let n = modulus.n();
            let kappa_formula = kappa(&modulus);
            let (delta, _) = min_degree(&modulus);
            // The prior upper bound: phi of the product of all but the
            // largest prime.
            let upper_bound: u64 = modulus.primes()[..modulus.prime_count() - 1]
                .iter()
                .map(|&p| p - 1)
                .product();
            let (kappa_oracle, lambda_oracle) = if n <= caps.flow && n <= caps.graph {
                let graph = build_graph(&modulus, caps.graph).unwrap();
                (
                    Some(vertex_connectivity_oracle(&graph).0),
                    Some(edge_connectivity_oracle(&graph).expect("connected")),
                )
            } else {
                (None, None)
            };
            let matched = upper_bound == kappa_formula
                && kappa_oracle.map_or(true, |k| k == kappa_formula)
                && lambda_oracle.map_or(true, |l| l == kappa_formula);
            SweepRow {
                n,
                primes: modulus.primes().to_vec(),
                phi: euler_phi(&modulus),
                upper_bound,
                kappa_formula,
                kappa_oracle,
                delta,
                lambda_oracle,
                diameter: diameter(&modulus),
                matched,
            }
        })
        .collect()
}

pub fn cmd_export(
    n: u64,
    format: ExportFormat,
    level: ExportLevel,
    caps: Caps,
) -> Result<String, CliError> {
    let modulus = factor_squarefree(n)?;
    Ok(match level {
        ExportLevel::Quotient => {
            let quotient = build_quotient(&modulus);
            crate::report::export_quotient(&quotient, format)
        }
        ExportLevel::Explicit => {
            let graph = build_graph(&modulus, caps.graph)?;
            crate::report::export_explicit(&graph, format)
        }
    })
}

fn classify_non_vertex(n: u64, residue: u64) -> String {
    if residue == 0 {
        "zero".to_string()
    } else if residue >= n {
        format!("out of range [1, {})", n)
    } else {
        "a unit".to_string()
    }
}

pub fn cmd_distance(n: u64, x: u64, y: u64, caps: Caps) -> Result<DistanceReport, CliError> {
    let modulus = factor_squarefree(n)?;
    let vertex_support = |r: u64| -> Result<SupportSet, CliError> {
        if r == 0 || r >= n || crate::arithmetic::gcd(r, n) == 1 {
            return Err(CliError::NotAVertex {
                residue: r,
                n,
                reason: classify_non_vertex(n, r),
            });
        }
        let coords = crate::explicit_graph::crt_encode(&modulus, r).unwrap();
        let members: Vec<usize> = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| i + 1)
            .collect();
        Ok(SupportSet::new(&members, modulus.prime_count()))
    };
    let sx = vertex_support(x)?;
    let sy = vertex_support(y)?;
    let case = if sx.is_disjoint(&sy) {
        1
    } else if sx.union_is_full(&sy) {
        3
    } else {
        2
    };
    let formula = if x == y { 0 } else { layer_distance(&sx, &sy) };
    let (bfs, matched) = if n <= caps.graph {
        let graph = build_graph(&modulus, caps.graph)?;
        let dist = bfs_distances(&graph, x).expect("validated vertex");
        let d = dist[graph.index_of_residue(y).expect("validated vertex")]
            .expect("graph is connected") as u8;
        (Some(d), Some(d == formula))
    } else {
        (None, None)
    };
    Ok(DistanceReport {
        n,
        x,
        y,
        support_x: sx.plus_label(),
        support_y: sy.plus_label(),
        case,
        formula,
        bfs,
        matched,
    })
}

/// The random sub-threshold trials followed by the exact-cut negative
/// control.
pub fn cmd_robustness(
    n: u64,
    trials: usize,
    seed: u64,
    caps: Caps,
) -> Result<Vec<RobustnessTrial>, CliError> {
    let modulus = factor_squarefree(n)?;
    if modulus.n() > caps.graph {
        return Err(GraphError::ExceedsCap {
            n: modulus.n(),
            cap: caps.graph,
        }
        .into());
    }
    let mut results = robustness_trials(&modulus, trials, seed)?;
    results.push(minimum_cut_control(&modulus)?);
    Ok(results)
}

/// Exposes the O(m) connectivity routine over its full input domain, including prime n
/// (empty graph, connectivity 0), without requiring a Modulus.
pub fn connectivity_query(n: u64) -> Result<u64, ModulusError> {
    match factor_squarefree(n) {
        Ok(modulus) => Ok(kappa(&modulus)),
        Err(ModulusError::PrimeModulus(_)) => Ok(0),
        Err(e) => Err(e),
    }
}
