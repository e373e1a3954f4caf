//! Formula-independent brute-force computations on the explicit graph:
//! vertex/edge connectivity by unit-capacity max-flow, BFS distances, and
//! the full eccentricity profile. These never consult the closed forms
//! they are used to certify.

use crate::explicit_graph::ExplicitGraph;
use rayon::prelude::*;
use std::collections::{BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU32, Ordering};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph is disconnected")]
    GraphDisconnected,
    #[error("residue {0} is not a vertex")]
    NotAVertex(u64),
}

/// A witnessed separator: deleting `cut_vertices` leaves `side_a` and
/// `side_b` in different components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    pub cut_vertices: BTreeSet<u64>,
    pub side_a: BTreeSet<u64>,
    pub side_b: BTreeSet<u64>,
}

impl CutCertificate {
    /// Re-check the separation claim directly on the graph.
    pub fn validate(&self, graph: &ExplicitGraph) -> bool {
        let deleted: Vec<bool> = (0..graph.vertex_count())
            .map(|i| self.cut_vertices.contains(&graph.vertex(i).residue))
            .collect();
        let Some(&a) = self.side_a.iter().next() else {
            return false;
        };
        let Some(start) = graph.index_of_residue(a) else {
            return false;
        };
        let reach = bfs_reachable(graph, start, &deleted);
        self.side_b.iter().all(|&b| {
            graph
                .index_of_residue(b)
                .map_or(false, |i| !reach[i] && !deleted[i])
        })
    }
}

fn bfs_reachable(graph: &ExplicitGraph, start: usize, deleted: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; graph.vertex_count()];
    if deleted[start] {
        return seen;
    }
    let mut queue = VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            let v = v as usize;
            if !seen[v] && !deleted[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

pub fn is_connected(graph: &ExplicitGraph) -> bool {
    if graph.vertex_count() == 0 {
        return false;
    }
    let deleted = vec![false; graph.vertex_count()];
    bfs_reachable(graph, 0, &deleted).iter().all(|&r| r)
}

/// Residual network over paired edges: edge `i` and `i ^ 1` are reverses.
struct FlowNetwork {
    adj: Vec<Vec<u32>>,
    to: Vec<u32>,
    base_cap: Vec<u32>,
}

const INF_CAP: u32 = u32::MAX / 2;

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            base_cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: u32, rev_cap: u32) {
        let id = self.to.len() as u32;
        self.adj[u].push(id);
        self.to.push(v as u32);
        self.base_cap.push(cap);
        self.adj[v].push(id + 1);
        self.to.push(u as u32);
        self.base_cap.push(rev_cap);
    }

    /// Repeated augmenting BFS on `cap` (a residual copy of `base_cap`).
    /// Stops early once the flow reaches `cutoff`.
    fn max_flow(&self, cap: &mut [u32], s: usize, t: usize, cutoff: u32) -> u32 {
        let mut flow = 0u32;
        let mut parent_edge = vec![u32::MAX; self.adj.len()];
        while flow < cutoff {
            for p in parent_edge.iter_mut() {
                *p = u32::MAX;
            }
            let mut queue = VecDeque::new();
            queue.push_back(s as u32);
            parent_edge[s] = u32::MAX - 1; // mark visited
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u as usize] {
                    if cap[e as usize] == 0 {
                        continue;
                    }
                    let v = self.to[e as usize] as usize;
                    if parent_edge[v] != u32::MAX {
                        continue;
                    }
                    parent_edge[v] = e;
                    if v == t {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(v as u32);
                }
            }
            if !reached {
                break;
            }
            // Trace back, find bottleneck, then apply it.
            let mut bottleneck = u32::MAX;
            let mut v = t;
            while v != s {
                let e = parent_edge[v] as usize;
                bottleneck = bottleneck.min(cap[e]);
                v = self.to[e ^ 1] as usize;
            }
            let mut v = t;
            while v != s {
                let e = parent_edge[v] as usize;
                cap[e] -= bottleneck;
                cap[e ^ 1] += bottleneck;
                v = self.to[e ^ 1] as usize;
            }
            flow += bottleneck;
        }
        flow
    }

    /// Nodes reachable from `s` in the residual graph.
    fn residual_reachable(&self, cap: &[u32], s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::new();
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e as usize] as usize;
                if cap[e as usize] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Vertex-split digraph for Menger flows: in(v) = 2v, out(v) = 2v + 1,
/// unit capacity on the internal arc, unbounded on edge arcs.
fn build_split_network(graph: &ExplicitGraph) -> FlowNetwork {
    let v = graph.vertex_count();
    let mut net = FlowNetwork::new(2 * v);
    for i in 0..v {
        net.add_edge(2 * i, 2 * i + 1, 1, 0);
    }
    for i in 0..v {
        for &j in graph.neighbors(i) {
            let j = j as usize;
            if j > i {
                net.add_edge(2 * i + 1, 2 * j, INF_CAP, 0);
                net.add_edge(2 * j + 1, 2 * i, INF_CAP, 0);
            }
        }
    }
    net
}

fn components(graph: &ExplicitGraph, deleted: &[bool]) -> Vec<Vec<usize>> {
    let v = graph.vertex_count();
    let mut assigned = vec![false; v];
    let mut comps = Vec::new();
    for start in 0..v {
        if assigned[start] || deleted[start] {
            continue;
        }
        let reach = bfs_reachable(graph, start, deleted);
        let comp: Vec<usize> = (0..v).filter(|&i| reach[i]).collect();
        for &i in &comp {
            assigned[i] = true;
        }
        comps.push(comp);
    }
    comps
}

/// Exact vertex connectivity with a witnessing minimum separator, by
/// Menger max-flow over the sufficient pair family: one fixed
/// minimum-degree vertex against all its non-neighbors, plus all
/// non-adjacent pairs of its neighbors. Returns (0, empty cut) when the
/// graph is already disconnected.
pub fn vertex_connectivity_oracle(graph: &ExplicitGraph) -> (u64, CutCertificate) {
    let v = graph.vertex_count();
    assert!(v >= 2, "connectivity needs at least two vertices");
    let no_deletions = vec![false; v];
    if !is_connected(graph) {
        let comps = components(graph, &no_deletions);
        let residues = |c: &Vec<usize>| c.iter().map(|&i| graph.vertex(i).residue).collect();
        return (
            0,
            CutCertificate {
                cut_vertices: BTreeSet::new(),
                side_a: residues(&comps[0]),
                side_b: residues(&comps[1]),
            },
        );
    }

    let s = (0..v).min_by_key(|&i| graph.degree_of(i)).unwrap();
    let s_neighbors: Vec<usize> = graph.neighbors(s).iter().map(|&j| j as usize).collect();
    let mut is_neighbor = vec![false; v];
    for &j in &s_neighbors {
        is_neighbor[j] = true;
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for t in 0..v {
        if t != s && !is_neighbor[t] {
            pairs.push((s, t));
        }
    }
    for (a_idx, &a) in s_neighbors.iter().enumerate() {
        for &b in &s_neighbors[a_idx + 1..] {
            if !graph.neighbors(a).contains(&(b as u32)) {
                pairs.push((a, b));
            }
        }
    }
    assert!(!pairs.is_empty(), "graph is complete; no separator exists");

    let net = build_split_network(graph);
    let best = AtomicU32::new(u32::MAX);
    let results: Vec<(u32, (usize, usize))> = pairs
        .par_iter()
        .map_init(
            || net.base_cap.clone(),
            |cap, &(a, b)| {
                cap.copy_from_slice(&net.base_cap);
                let cutoff = best.load(Ordering::Relaxed);
                let f = net.max_flow(cap, 2 * a + 1, 2 * b, cutoff);
                best.fetch_min(f, Ordering::Relaxed);
                (f, (a, b))
            },
        )
        .collect();
    let kappa = results.iter().map(|r| r.0).min().unwrap();

    // A cutoff-stopped pair can report kappa without attaining it; rerun
    // candidates until one genuinely realizes the minimum.
    let mut cap = net.base_cap.clone();
    let mut witness = None;
    for &(f, (a, b)) in results.iter().filter(|r| r.0 == kappa) {
        let _ = f;
        cap.copy_from_slice(&net.base_cap);
        if net.max_flow(&mut cap, 2 * a + 1, 2 * b, u32::MAX) == kappa {
            witness = Some((a, b));
            break;
        }
    }
    let (a, b) = witness.expect("some pair must realize the minimum flow");

    let reach = net.residual_reachable(&cap, 2 * a + 1);
    let cut_vertices: BTreeSet<u64> = (0..v)
        .filter(|&i| reach[2 * i] && !reach[2 * i + 1])
        .map(|i| graph.vertex(i).residue)
        .collect();
    assert_eq!(cut_vertices.len() as u32, kappa, "min-cut size disagrees with max flow");

    let deleted: Vec<bool> = (0..v)
        .map(|i| cut_vertices.contains(&graph.vertex(i).residue))
        .collect();
    let reach_a = bfs_reachable(graph, a, &deleted);
    assert!(!reach_a[b], "claimed cut does not separate the witness pair");
    let side_a: BTreeSet<u64> = (0..v)
        .filter(|&i| reach_a[i])
        .map(|i| graph.vertex(i).residue)
        .collect();
    let reach_b = bfs_reachable(graph, b, &deleted);
    let side_b: BTreeSet<u64> = (0..v)
        .filter(|&i| reach_b[i])
        .map(|i| graph.vertex(i).residue)
        .collect();
    let certificate = CutCertificate {
        cut_vertices,
        side_a,
        side_b,
    };
    assert!(certificate.validate(graph));
    (kappa as u64, certificate)
}

/// Exact edge connectivity: fix one minimum-degree vertex and minimize
/// unit-capacity max-flow against every other vertex.
pub fn edge_connectivity_oracle(graph: &ExplicitGraph) -> Result<u64, OracleError> {
    let v = graph.vertex_count();
    if !is_connected(graph) {
        return Err(OracleError::GraphDisconnected);
    }
    let mut net = FlowNetwork::new(v);
    for i in 0..v {
        for &j in graph.neighbors(i) {
            let j = j as usize;
            if j > i {
                // Undirected unit edge: each direction is the other's reverse.
                net.add_edge(i, j, 1, 1);
            }
        }
    }
    let s = (0..v).min_by_key(|&i| graph.degree_of(i)).unwrap();
    let best = AtomicU32::new(graph.degree_of(s) as u32);
    let lambda = (0..v)
        .into_par_iter()
        .filter(|&t| t != s)
        .map_init(
            || net.base_cap.clone(),
            |cap, t| {
                cap.copy_from_slice(&net.base_cap);
                let cutoff = best.load(Ordering::Relaxed);
                let f = net.max_flow(cap, s, t, cutoff.saturating_add(1));
                best.fetch_min(f, Ordering::Relaxed);
                f
            },
        )
        .min()
        .unwrap();
    Ok(lambda as u64)
}

/// Exact shortest-path distances from `source` (a residue), indexed by
/// vertex position; `None` marks unreachable vertices.
pub fn bfs_distances(graph: &ExplicitGraph, source: u64) -> Result<Vec<Option<u32>>, OracleError> {
    let start = graph
        .index_of_residue(source)
        .ok_or(OracleError::NotAVertex(source))?;
    let mut dist = vec![None; graph.vertex_count()];
    dist[start] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in graph.neighbors(u) {
            let v = v as usize;
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EccentricityProfile {
    pub diameter: u32,
    pub radius: u32,
    pub center: BTreeSet<u64>,
}

/// Full metric profile by all-sources BFS.
pub fn eccentricity_profile(graph: &ExplicitGraph) -> Result<EccentricityProfile, OracleError> {
    let v = graph.vertex_count();
    if !is_connected(graph) {
        return Err(OracleError::GraphDisconnected);
    }
    let eccs: Vec<u32> = (0..v)
        .into_par_iter()
        .map(|i| {
            let dist = bfs_distances(graph, graph.vertex(i).residue).unwrap();
            dist.iter().map(|d| d.unwrap()).max().unwrap()
        })
        .collect();
    let diameter = *eccs.iter().max().unwrap();
    let radius = *eccs.iter().min().unwrap();
    let center = (0..v)
        .filter(|&i| eccs[i] == radius)
        .map(|i| graph.vertex(i).residue)
        .collect();
    Ok(EccentricityProfile {
        diameter,
        radius,
        center,
    })
}
