//! Repeatable separator and deletion-robustness experiments: the layer
//! omitting every index but the largest is a minimum cut, and deletions
//! below the connectivity threshold leave a short-diameter graph anchored
//! at a survivor of that layer.

use crate::arithmetic::Modulus;
use crate::explicit_graph::{build_graph, ExplicitGraph, GraphError};
use crate::oracles::CutCertificate;
use crate::support_model::{kappa, SupportSet};
use rayon::prelude::*;
use std::collections::{BTreeSet, VecDeque};

/// Deterministic splitmix64 stream; reports embed the seed so trials are
/// reproducible run to run.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform value in [0, bound) by rejection.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// `k` distinct indices from [0, pool), by partial Fisher-Yates.
    pub fn sample_indices(&mut self, k: usize, pool: usize) -> Vec<usize> {
        assert!(k <= pool);
        let mut items: Vec<usize> = (0..pool).collect();
        for i in 0..k {
            let j = i + self.next_below((pool - i) as u64) as usize;
            items.swap(i, j);
        }
        items.truncate(k);
        items
    }
}

/// One deletion trial: the deleted residues and what survived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustnessTrial {
    pub deleted: BTreeSet<u64>,
    pub connected_after: bool,
    /// Largest finite pairwise distance among survivors.
    pub max_pair_distance_after: u32,
    /// A vertex of the top singleton layer survived the deletion.
    pub anchor_found: bool,
    /// Every survivor sits within two hops of a surviving anchor.
    pub within_two_of_anchor: bool,
}

fn survivor_flags(graph: &ExplicitGraph, deleted: &BTreeSet<u64>) -> Vec<bool> {
    (0..graph.vertex_count())
        .map(|i| deleted.contains(&graph.vertex(i).residue))
        .collect()
}

fn bfs_from(graph: &ExplicitGraph, start: usize, deleted: &[bool]) -> Vec<Option<u32>> {
    let mut dist = vec![None; graph.vertex_count()];
    if deleted[start] {
        return dist;
    }
    dist[start] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in graph.neighbors(u) {
            let v = v as usize;
            if !deleted[v] && dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Connectivity of the surviving subgraph, without the metric bookkeeping
/// of [`run_trial`].
pub fn connected_after_deletion(graph: &ExplicitGraph, deleted: &BTreeSet<u64>) -> bool {
    let gone = survivor_flags(graph, deleted);
    let Some(start) = (0..graph.vertex_count()).find(|&i| !gone[i]) else {
        return false;
    };
    let dist = bfs_from(graph, start, &gone);
    (0..graph.vertex_count()).all(|i| gone[i] || dist[i].is_some())
}

/// Evaluate one deletion set against the connectivity, distance, and
/// anchor claims.
pub fn run_trial(graph: &ExplicitGraph, deleted: BTreeSet<u64>) -> RobustnessTrial {
    let v = graph.vertex_count();
    let gone = survivor_flags(graph, &deleted);
    let survivors: Vec<usize> = (0..v).filter(|&i| !gone[i]).collect();
    assert!(!survivors.is_empty(), "deletion removed every vertex");

    let m = graph.modulus().prime_count();
    let top = SupportSet::new(&[m], m);
    let anchor = survivors
        .iter()
        .copied()
        .find(|&i| graph.vertex(i).zero_set == top);

    let mut connected_after = true;
    let mut max_pair_distance_after = 0u32;
    for &i in &survivors {
        let dist = bfs_from(graph, i, &gone);
        for &j in &survivors {
            match dist[j] {
                Some(d) => max_pair_distance_after = max_pair_distance_after.max(d),
                None => connected_after = false,
            }
        }
    }

    let within_two_of_anchor = match anchor {
        Some(u) => {
            let dist = bfs_from(graph, u, &gone);
            survivors.iter().all(|&i| matches!(dist[i], Some(d) if d <= 2))
        }
        None => false,
    };

    RobustnessTrial {
        deleted,
        connected_after,
        max_pair_distance_after,
        anchor_found: anchor.is_some(),
        within_two_of_anchor,
    }
}

/// The known minimum separator: deleting the top singleton layer isolates
/// the minimum-degree layer. The certificate size equals the connectivity.
pub fn demonstrate_separator(modulus: &Modulus) -> Result<CutCertificate, GraphError> {
    let graph = build_graph(modulus, modulus.n())?;
    let m = modulus.prime_count();
    let top = SupportSet::new(&[m], m);
    let cut_vertices: BTreeSet<u64> = graph.layer_residues(&top).into_iter().collect();
    assert_eq!(cut_vertices.len() as u64, kappa(modulus));

    let min_layer = SupportSet::new(&(1..m).collect::<Vec<_>>(), m);
    let isolated: BTreeSet<u64> = graph.layer_residues(&min_layer).into_iter().collect();

    let (side_a, side_b) = if m == 2 {
        // Complete bipartite: the survivors are the isolated vertices of
        // the other part; split one off as its own side.
        let mut iter = isolated.into_iter();
        let first = iter.next().expect("layer is nonempty");
        (BTreeSet::from([first]), iter.collect())
    } else {
        // Everything not in the min-degree layer stays connected through
        // the surviving singleton layers.
        let gone = survivor_flags(&graph, &cut_vertices);
        let other = (0..graph.vertex_count())
            .find(|&i| !gone[i] && graph.vertex(i).zero_set != min_layer)
            .expect("a survivor outside the isolated layer exists");
        let dist = bfs_from(&graph, other, &gone);
        let side_b: BTreeSet<u64> = (0..graph.vertex_count())
            .filter(|&i| dist[i].is_some())
            .map(|i| graph.vertex(i).residue)
            .collect();
        (isolated, side_b)
    };

    let certificate = CutCertificate {
        cut_vertices,
        side_a,
        side_b,
    };
    assert!(certificate.validate(&graph), "separator fails to disconnect");
    Ok(certificate)
}

/// `trials` seeded random deletions of size kappa - 1 each. Trial t uses
/// the splitmix stream seeded with `seed + t`, so the list is stable under
/// parallel execution.
pub fn robustness_trials(
    modulus: &Modulus,
    trials: usize,
    seed: u64,
) -> Result<Vec<RobustnessTrial>, GraphError> {
    assert!(trials >= 1);
    let graph = build_graph(modulus, modulus.n())?;
    let k = kappa(modulus);
    assert!(k >= 1);
    let below = (k - 1) as usize;
    let results = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SplitMix64::new(seed.wrapping_add(t as u64));
            let picks = rng.sample_indices(below, graph.vertex_count());
            let deleted: BTreeSet<u64> =
                picks.into_iter().map(|i| graph.vertex(i).residue).collect();
            run_trial(&graph, deleted)
        })
        .collect();
    Ok(results)
}

/// Negative control at exactly kappa: deleting the whole top singleton
/// layer, which must disconnect.
pub fn minimum_cut_control(modulus: &Modulus) -> Result<RobustnessTrial, GraphError> {
    let graph = build_graph(modulus, modulus.n())?;
    let m = modulus.prime_count();
    let top = SupportSet::new(&[m], m);
    let deleted: BTreeSet<u64> = graph.layer_residues(&top).into_iter().collect();
    Ok(run_trial(&graph, deleted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::factor_squarefree;

    fn modulus(n: u64) -> Modulus {
        factor_squarefree(n).unwrap()
    }

    #[test]
    fn splitmix_is_deterministic() {
        let a: Vec<u64> = {
            let mut r = SplitMix64::new(42);
            (0..5).map(|_| r.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut r = SplitMix64::new(42);
            (0..5).map(|_| r.next_u64()).collect()
        };
        assert_eq!(a, b);
        let mut r = SplitMix64::new(7);
        let sample = r.sample_indices(3, 10);
        assert_eq!(sample.len(), 3);
        let set: BTreeSet<usize> = sample.iter().copied().collect();
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn separator_for_30() {
        let cert = demonstrate_separator(&modulus(30)).unwrap();
        // X_{{3}} = multiples of 5 coprime to 6: {5, 25}.
        assert_eq!(cert.cut_vertices, BTreeSet::from([5, 25]));
        // The isolated side is X_{{1,2}} = multiples of 6: {6, 12, 18, 24}.
        assert_eq!(cert.side_a, BTreeSet::from([6, 12, 18, 24]));
    }

    #[test]
    fn separator_size_210() {
        let cert = demonstrate_separator(&modulus(210)).unwrap();
        assert_eq!(cert.cut_vertices.len(), 8);
    }

    #[test]
    fn single_deletion_keeps_30_connected() {
        let graph = build_graph(&modulus(30), 10_000).unwrap();
        for v in graph.vertices() {
            let trial = run_trial(&graph, BTreeSet::from([v.residue]));
            assert!(trial.connected_after, "deleting {} disconnected", v.residue);
            assert!(trial.max_pair_distance_after <= 4);
        }
    }

    #[test]
    fn full_top_layer_disconnects_210() {
        let trial = minimum_cut_control(&modulus(210)).unwrap();
        assert_eq!(trial.deleted.len(), 8);
        assert!(!trial.connected_after);
    }

    #[test]
    fn subthreshold_trials_hold_for_210() {
        let trials = robustness_trials(&modulus(210), 25, 0xC0FFEE).unwrap();
        assert_eq!(trials.len(), 25);
        for (t, trial) in trials.iter().enumerate() {
            assert_eq!(trial.deleted.len(), 7);
            assert!(trial.connected_after, "trial {t} disconnected");
            assert!(trial.anchor_found, "trial {t} lost every anchor");
            assert!(trial.within_two_of_anchor, "trial {t} anchor too far");
            assert!(trial.max_pair_distance_after <= 4, "trial {t} diameter too big");
        }
    }

    #[test]
    fn trials_reproduce_for_fixed_seed() {
        let a = robustness_trials(&modulus(30), 10, 99).unwrap();
        let b = robustness_trials(&modulus(30), 10, 99).unwrap();
        assert_eq!(a, b);
    }
}
