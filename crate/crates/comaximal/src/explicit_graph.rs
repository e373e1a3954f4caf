//! The materialized graph on the actual residues {x : x != 0, gcd(x, n) != 1},
//! built from the gcd adjacency criterion. This is the ground truth that the
//! closed forms of `support_model` are certified against.

use crate::arithmetic::{euler_phi, gcd, Modulus};
use crate::support_model::{layers_adjacent, QuotientModel, SupportSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("residue {residue} is out of range [0, {n})")]
    OutOfRange { residue: u64, n: u64 },
    #[error("coordinate {value} at position {position} is out of range [0, {prime})")]
    CoordinateOutOfRange { position: usize, value: u64, prime: u64 },
    #[error("n = {n} exceeds the graph construction cap {cap}")]
    ExceedsCap { n: u64, cap: u64 },
}

/// A residue vertex together with its coordinate vector and zero-set.
/// The redundancy is deliberate: gcd-based and zero-set-based adjacency
/// stay independently computable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub residue: u64,
    pub coords: Vec<u64>,
    pub zero_set: SupportSet,
}

#[derive(Debug, Clone)]
pub struct ExplicitGraph {
    modulus: Modulus,
    vertices: Vec<Vertex>,
    adjacency: Vec<Vec<u32>>,
    index_by_residue: Vec<u32>,
}

const NO_VERTEX: u32 = u32::MAX;

impl ExplicitGraph {
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> &Vertex {
        &self.vertices[index]
    }

    /// Sorted neighbor indices of vertex `index`.
    pub fn neighbors(&self, index: usize) -> &[u32] {
        &self.adjacency[index]
    }

    pub fn degree_of(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index_of_residue(&self, residue: u64) -> Option<usize> {
        if residue >= self.modulus.n() {
            return None;
        }
        match self.index_by_residue[residue as usize] {
            NO_VERTEX => None,
            i => Some(i as usize),
        }
    }

    /// Residues of the layer X_S, ascending.
    pub fn layer_residues(&self, s: &SupportSet) -> Vec<u64> {
        self.vertices
            .iter()
            .filter(|v| v.zero_set == *s)
            .map(|v| v.residue)
            .collect()
    }
}

/// Coordinate vector of a residue: componentwise reduction mod each prime.
pub fn crt_encode(modulus: &Modulus, residue: u64) -> Result<Vec<u64>, GraphError> {
    if residue >= modulus.n() {
        return Err(GraphError::OutOfRange {
            residue,
            n: modulus.n(),
        });
    }
    Ok(modulus.primes().iter().map(|&p| residue % p).collect())
}

/// Unique residue in [0, n) with the given coordinates, by iterated
/// two-modulus reconstruction.
pub fn crt_decode(modulus: &Modulus, coords: &[u64]) -> Result<u64, GraphError> {
    assert_eq!(coords.len(), modulus.prime_count());
    for (position, (&value, &prime)) in coords.iter().zip(modulus.primes()).enumerate() {
        if value >= prime {
            return Err(GraphError::CoordinateOutOfRange {
                position,
                value,
                prime,
            });
        }
    }
    let mut x: u64 = 0;
    let mut base: u64 = 1;
    for (&c, &p) in coords.iter().zip(modulus.primes()) {
        // Solve x + base * t = c (mod p).
        let inv = mod_inverse(base % p, p);
        let t = ((c + p - x % p) % p * inv) % p;
        x += base * t;
        base *= p;
    }
    Ok(x)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid; p is prime and a is nonzero mod p.
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "value not invertible");
    ((t % p as i128 + p as i128) % p as i128) as u64
}

/// Primary adjacency criterion: gcd(gcd(x, n), gcd(y, n)) = 1.
pub fn adjacent(modulus: &Modulus, x: u64, y: u64) -> bool {
    assert!(x != y, "adjacency is defined on distinct residues");
    let n = modulus.n();
    gcd(gcd(x, n), gcd(y, n)) == 1
}

/// Alternative criterion from the same adjacency characterization:
/// gcd(x, y, n) = 1. Asserted equivalent to `adjacent` during verification.
pub fn adjacent_alt(modulus: &Modulus, x: u64, y: u64) -> bool {
    assert!(x != y);
    gcd(gcd(x, y), modulus.n()) == 1
}

/// Build the full graph on nonzero nonunits. `cap` bounds n to keep the
/// quadratic adjacency pass in memory.
pub fn build_graph(modulus: &Modulus, cap: u64) -> Result<ExplicitGraph, GraphError> {
    let n = modulus.n();
    if n > cap {
        return Err(GraphError::ExceedsCap { n, cap });
    }
    let m = modulus.prime_count();
    let mut vertices = Vec::new();
    let mut index_by_residue = vec![NO_VERTEX; n as usize];
    for residue in 1..n {
        if gcd(residue, n) == 1 {
            continue;
        }
        let coords = crt_encode(modulus, residue)?;
        let members: Vec<usize> = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| i + 1)
            .collect();
        let zero_set = SupportSet::new(&members, m);
        index_by_residue[residue as usize] = vertices.len() as u32;
        vertices.push(Vertex {
            residue,
            coords,
            zero_set,
        });
    }
    assert_eq!(vertices.len() as u64, n - 1 - euler_phi(modulus));

    // Adjacency from the gcd criterion; gcd(x, n) is d_{Z(x)}, precomputed.
    let divisors: Vec<u64> = vertices.iter().map(|v| gcd(v.residue, n)).collect();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            if gcd(divisors[i], divisors[j]) == 1 {
                adjacency[i].push(j as u32);
                adjacency[j].push(i as u32);
            }
        }
    }
    Ok(ExplicitGraph {
        modulus: modulus.clone(),
        vertices,
        adjacency,
        index_by_residue,
    })
}

/// Outcome of comparing the built graph against the quotient model.
#[derive(Debug, Clone)]
pub struct BlowupCheck {
    pub discrepancies: Vec<String>,
}

impl BlowupCheck {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Certify the blow-up structure: layer sizes match the model, layers are
/// independent sets, and between layers either every edge or no edge is
/// present, according to support disjointness.
pub fn check_blowup(graph: &ExplicitGraph, model: &QuotientModel) -> BlowupCheck {
    let mut discrepancies = Vec::new();
    assert_eq!(graph.modulus(), model.modulus());

    for layer in model.layers() {
        let count = graph.layer_residues(&layer.support).len() as u64;
        if count != layer.size {
            discrepancies.push(format!(
                "layer {} has {} vertices, expected {}",
                layer.support, count, layer.size
            ));
        }
    }

    let v = graph.vertex_count();
    let mut row = vec![false; v];
    for i in 0..v {
        for &j in graph.neighbors(i) {
            row[j as usize] = true;
        }
        for j in (i + 1)..v {
            let expected = layers_adjacent(&graph.vertex(i).zero_set, &graph.vertex(j).zero_set);
            if row[j] != expected {
                discrepancies.push(format!(
                    "residues {} and {}: adjacency {} but supports {} and {} demand {}",
                    graph.vertex(i).residue,
                    graph.vertex(j).residue,
                    row[j],
                    graph.vertex(i).zero_set,
                    graph.vertex(j).zero_set,
                    expected
                ));
            }
        }
        for &j in graph.neighbors(i) {
            row[j as usize] = false;
        }
    }
    BlowupCheck { discrepancies }
}

/// Confirm that the two gcd forms of the adjacency criterion agree on
/// every pair of distinct nonunit residues.
pub fn gcd_criteria_equivalent(graph: &ExplicitGraph) -> bool {
    let modulus = graph.modulus();
    let v = graph.vertex_count();
    for i in 0..v {
        for j in (i + 1)..v {
            let (x, y) = (graph.vertex(i).residue, graph.vertex(j).residue);
            if adjacent(modulus, x, y) != adjacent_alt(modulus, x, y) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::factor_squarefree;
    use crate::support_model::build_quotient;

    fn modulus(n: u64) -> Modulus {
        factor_squarefree(n).unwrap()
    }

    #[test]
    fn encode_examples() {
        let m = modulus(30);
        assert_eq!(crt_encode(&m, 15).unwrap(), vec![1, 0, 0]);
        assert_eq!(crt_encode(&m, 0).unwrap(), vec![0, 0, 0]);
        assert_eq!(crt_encode(&modulus(210), 30).unwrap(), vec![0, 0, 0, 2]);
        assert!(matches!(
            crt_encode(&m, 30),
            Err(GraphError::OutOfRange { .. })
        ));
    }

    #[test]
    fn decode_examples() {
        let m = modulus(30);
        assert_eq!(crt_decode(&m, &[1, 0, 0]).unwrap(), 15);
        assert_eq!(crt_decode(&m, &[0, 0, 0]).unwrap(), 0);
        assert_eq!(crt_decode(&m, &[1, 1, 1]).unwrap(), 1);
        assert!(matches!(
            crt_decode(&m, &[2, 0, 0]),
            Err(GraphError::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn decode_inverts_encode() {
        for n in [6u64, 30, 105, 210, 1155] {
            let m = modulus(n);
            for r in 0..n {
                let coords = crt_encode(&m, r).unwrap();
                assert_eq!(crt_decode(&m, &coords).unwrap(), r);
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        let m = modulus(30);
        assert!(adjacent(&m, 2, 3));
        assert!(!adjacent(&m, 6, 10));
        assert!(adjacent(&m, 6, 5));
    }

    #[test]
    fn graph_sizes() {
        assert_eq!(build_graph(&modulus(30), 10_000).unwrap().vertex_count(), 21);
        let g6 = build_graph(&modulus(6), 10_000).unwrap();
        let residues: Vec<u64> = g6.vertices().iter().map(|v| v.residue).collect();
        assert_eq!(residues, [2, 3, 4]);
        assert_eq!(build_graph(&modulus(210), 10_000).unwrap().vertex_count(), 161);
        assert!(matches!(
            build_graph(&modulus(30), 20),
            Err(GraphError::ExceedsCap { .. })
        ));
    }

    #[test]
    fn explicit_graph_for_6_is_a_path() {
        let g = build_graph(&modulus(6), 100).unwrap();
        let mut edges = Vec::new();
        for i in 0..g.vertex_count() {
            for &j in g.neighbors(i) {
                if (j as usize) > i {
                    edges.push((g.vertex(i).residue, g.vertex(j as usize).residue));
                }
            }
        }
        assert_eq!(edges, [(2, 3), (3, 4)]);
    }

    #[test]
    fn blowup_holds_for_small_moduli() {
        for n in [6u64, 30, 70, 105, 210] {
            let m = modulus(n);
            let g = build_graph(&m, 10_000).unwrap();
            let q = build_quotient(&m);
            let check = check_blowup(&g, &q);
            assert!(check.passed(), "n={n}: {:?}", check.discrepancies);
            assert!(gcd_criteria_equivalent(&g), "criteria diverge at n={n}");
        }
    }

    #[test]
    fn vertex_invariants() {
        let m = modulus(30);
        let g = build_graph(&m, 10_000).unwrap();
        for v in g.vertices() {
            let d = gcd(v.residue, 30);
            assert_eq!(d, crate::support_model::layer_divisor(&m, &v.zero_set));
        }
    }
}
