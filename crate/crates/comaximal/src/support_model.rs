//! Support-set layers of the graph on nonzero nonunits of Z_n and every
//! closed-form invariant they carry: class sizes, degrees, connectivity,
//! distances, and the linear-time connectivity recurrence.
//!
//! A vertex is encoded by the set of prime indices where its residue
//! vanishes. Two vertices are adjacent exactly when those index sets are
//! disjoint, so the whole graph is a blow-up of a disjointness graph on
//! nonempty proper subsets of {1,..,m}.

use crate::arithmetic::{euler_phi, is_prime, Modulus};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SupportModelError {
    #[error("radius/center formula needs at least three prime factors, got m={0}")]
    RequiresThreePrimes(usize),
    #[error("{q} is not a prime larger than the current largest prime {largest}")]
    NotLargerPrime { q: u64, largest: u64 },
}

/// A nonempty proper subset S of {1,..,m}, stored as a bitmask.
/// Index i (1-based) corresponds to bit i-1. Capped at m <= 16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SupportSet {
    mask: u16,
    ambient: u8,
}

impl SupportSet {
    /// Build from 1-based member indices. Panics unless the set is a
    /// nonempty proper subset of {1,..,ambient}.
    pub fn new(members: &[usize], ambient: usize) -> Self {
        assert!(ambient >= 2 && ambient <= 16, "ambient size out of range");
        let mut mask = 0u16;
        for &i in members {
            assert!(i >= 1 && i <= ambient, "member {i} outside 1..={ambient}");
            mask |= 1 << (i - 1);
        }
        Self::from_mask(mask, ambient)
    }

    /// Build from a raw bitmask over the low `ambient` bits.
    pub fn from_mask(mask: u16, ambient: usize) -> Self {
        assert!(ambient >= 2 && ambient <= 16);
        let full = (1u16 << ambient) - 1;
        assert!(mask != 0 && mask != full, "support must be nonempty and proper");
        assert_eq!(mask & !full, 0, "mask has bits beyond the ambient set");
        SupportSet {
            mask,
            ambient: ambient as u8,
        }
    }

    pub fn mask(&self) -> u16 {
        self.mask
    }

    pub fn ambient(&self) -> usize {
        self.ambient as usize
    }

    /// 1-based member indices in ascending order.
    pub fn members(&self) -> Vec<usize> {
        (1..=self.ambient())
            .filter(|&i| self.contains(i))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.ambient() && self.mask & (1 << (i - 1)) != 0
    }

    pub fn is_disjoint(&self, other: &SupportSet) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient sizes differ");
        self.mask & other.mask == 0
    }

    /// The complement within {1,..,m}; proper and nonempty because self is.
    pub fn complement(&self) -> SupportSet {
        let full = (1u16 << self.ambient) - 1;
        SupportSet::from_mask(full & !self.mask, self.ambient())
    }

    pub fn union_is_full(&self, other: &SupportSet) -> bool {
        assert_eq!(self.ambient, other.ambient);
        let full = (1u16 << self.ambient) - 1;
        self.mask | other.mask == full
    }

    /// Bracket-free label used in CSV output, e.g. "1+2+3".
    pub fn plus_label(&self) -> String {
        self.members()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Stable DOT identifier, e.g. "S_1_2_3".
    pub fn dot_id(&self) -> String {
        let mut id = String::from("S");
        for i in self.members() {
            id.push('_');
            id.push_str(&i.to_string());
        }
        id
    }
}

impl std::fmt::Display for SupportSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

// Canonical order: |S| ascending, then lexicographic on the member list.
impl Ord for SupportSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.members().cmp(&other.members()))
    }
}

impl PartialOrd for SupportSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All nonempty proper subsets of {1,..,m} in canonical order.
pub fn enumerate_supports(m: usize) -> Vec<SupportSet> {
    assert!(m >= 2 && m <= 16);
    let full = (1u16 << m) - 1;
    let mut sets: Vec<SupportSet> = (1..full).map(|mask| SupportSet::from_mask(mask, m)).collect();
    sets.sort();
    sets
}

/// Per-layer record: the layer X_S, its divisor d_S, its cardinality, and
/// the common degree of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSummary {
    pub support: SupportSet,
    pub divisor: u64,
    pub size: u64,
    pub degree: u64,
}

/// The quotient disjointness model: one layer per nonempty proper subset,
/// in canonical order.
#[derive(Debug, Clone)]
pub struct QuotientModel {
    modulus: Modulus,
    layers: Vec<LayerSummary>,
}

impl QuotientModel {
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn layers(&self) -> &[LayerSummary] {
        &self.layers
    }

    pub fn layer(&self, s: &SupportSet) -> Option<&LayerSummary> {
        self.layers.iter().find(|l| l.support == *s)
    }
}

/// Materialize every layer with divisor, size, and degree.
pub fn build_quotient(modulus: &Modulus) -> QuotientModel {
    let m = modulus.prime_count();
    let layers: Vec<LayerSummary> = enumerate_supports(m)
        .into_iter()
        .map(|s| LayerSummary {
            support: s,
            divisor: layer_divisor(modulus, &s),
            size: class_size(modulus, &s),
            degree: degree(modulus, &s),
        })
        .collect();
    assert_eq!(layers.len(), (1usize << m) - 2);
    let total: u64 = layers.iter().map(|l| l.size).sum();
    assert_eq!(total, modulus.n() - 1 - euler_phi(modulus), "layer sizes must partition the vertex set");
    QuotientModel {
        modulus: modulus.clone(),
        layers,
    }
}

/// d_S = prod_{i in S} p_i.
pub fn layer_divisor(modulus: &Modulus, s: &SupportSet) -> u64 {
    assert_eq!(s.ambient(), modulus.prime_count());
    s.members()
        .iter()
        .fold(1u64, |acc, &i| acc.checked_mul(modulus.primes()[i - 1]).expect("divisor overflow"))
}

/// Two layers carry edges exactly when their supports are disjoint.
pub fn layers_adjacent(a: &SupportSet, b: &SupportSet) -> bool {
    a.is_disjoint(b)
}

/// |X_S| = prod_{i not in S} (p_i - 1).
pub fn class_size(modulus: &Modulus, s: &SupportSet) -> u64 {
    assert_eq!(s.ambient(), modulus.prime_count());
    modulus
        .primes()
        .iter()
        .enumerate()
        .filter(|(idx, _)| !s.contains(idx + 1))
        .fold(1u64, |acc, (_, &p)| acc.checked_mul(p - 1).expect("class size overflow"))
}

/// Common degree of the vertices in X_S. Evaluates both the product form
///   prod_{i in S}(p_i-1) * (prod_{j in S^c} p_j - prod_{j in S^c}(p_j-1))
/// and the layer-sum form over nonempty T subset of S^c, and insists they
/// agree.
pub fn degree(modulus: &Modulus, s: &SupportSet) -> u64 {
    assert_eq!(s.ambient(), modulus.prime_count());
    let primes = modulus.primes();
    let mut in_part = 1u64;
    let mut comp_prod = 1u64;
    let mut comp_phi = 1u64;
    for (idx, &p) in primes.iter().enumerate() {
        if s.contains(idx + 1) {
            in_part = in_part.checked_mul(p - 1).expect("degree overflow");
        } else {
            comp_prod = comp_prod.checked_mul(p).expect("degree overflow");
            comp_phi = comp_phi.checked_mul(p - 1).expect("degree overflow");
        }
    }
    let product_form = in_part
        .checked_mul(comp_prod - comp_phi)
        .expect("degree overflow");

    // Independent route: sum the sizes of all neighbor layers.
    let sum_form: u64 = neighbor_layers(s)
        .iter()
        .map(|t| class_size(modulus, t))
        .fold(0u64, |acc, v| acc.checked_add(v).expect("degree overflow"));
    assert_eq!(product_form, sum_form, "degree closed forms disagree for S={s}");
    product_form
}

/// All layers adjacent to X_S: the nonempty subsets of S^c, canonical order.
pub fn neighbor_layers(s: &SupportSet) -> Vec<SupportSet> {
    let comp = s.complement().mask();
    let m = s.ambient();
    // Enumerate submasks of the complement.
    let mut result = Vec::new();
    let mut sub = comp;
    loop {
        if sub != 0 {
            result.push(SupportSet::from_mask(sub, m));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & comp;
    }
    result.sort();
    result
}

/// Minimum degree and the unique layer attaining it. The closed form is
/// prod_{i<m}(p_i-1) on the layer omitting only the largest prime index;
/// uniqueness is re-verified by scanning every layer.
pub fn min_degree(modulus: &Modulus) -> (u64, SupportSet) {
    let m = modulus.prime_count();
    let expected_value: u64 = modulus.primes()[..m - 1]
        .iter()
        .fold(1u64, |acc, &p| acc.checked_mul(p - 1).expect("overflow"));
    let argmin = SupportSet::new(&(1..m).collect::<Vec<_>>(), m);

    let mut best: Option<(u64, SupportSet)> = None;
    let mut attained_by = 0usize;
    for s in enumerate_supports(m) {
        let d = degree(modulus, &s);
        match best {
            None => best = Some((d, s)),
            Some((b, _)) if d < b => best = Some((d, s)),
            _ => {}
        }
        if d == expected_value {
            attained_by += 1;
        }
    }
    let (value, layer) = best.unwrap();
    assert_eq!(value, expected_value, "minimum degree closed form mismatch");
    assert_eq!(layer, argmin, "minimum degree attained off the expected layer");
    assert_eq!(attained_by, 1, "minimum degree layer is not unique");
    (value, layer)
}

/// Vertex connectivity: prod_{i=1}^{m-1}(p_i-1), accumulated by the
/// factor-list loop and cross-checked against phi(n)/(p_m - 1).
pub fn kappa(modulus: &Modulus) -> u64 {
    let primes = modulus.primes();
    let m = primes.len();
    let value = if m == 2 {
        primes[0] - 1
    } else {
        let mut k = 1u64;
        for &p in &primes[..m - 1] {
            k = k.checked_mul(p - 1).expect("kappa overflow");
        }
        k
    };
    let phi = euler_phi(modulus);
    let last = modulus.largest_prime() - 1;
    assert_eq!(phi % last, 0, "phi not divisible by p_m - 1");
    assert_eq!(value, phi / last, "loop and Euler forms of kappa disagree");
    value
}

/// Edge connectivity equals vertex connectivity here.
pub fn lambda_edge(modulus: &Modulus) -> u64 {
    kappa(modulus)
}

/// Distance between vertices picked from layers X_a and X_b:
/// 1 when the supports are disjoint, 3 when they intersect and cover
/// {1,..,m}, 2 otherwise. Equal supports fall in the middle case (distinct
/// false twins share every neighbor).
pub fn layer_distance(a: &SupportSet, b: &SupportSet) -> u8 {
    if a.is_disjoint(b) {
        1
    } else if a.union_is_full(b) {
        3
    } else {
        2
    }
}

/// Diameter: 2 for two prime factors (complete bipartite), 3 otherwise.
pub fn diameter(modulus: &Modulus) -> u8 {
    if modulus.prime_count() == 2 {
        2
    } else {
        3
    }
}

/// Radius 2 with center the union of singleton layers; only stated for
/// m >= 3.
pub fn radius_and_center(modulus: &Modulus) -> Result<(u8, Vec<SupportSet>), SupportModelError> {
    let m = modulus.prime_count();
    if m < 3 {
        return Err(SupportModelError::RequiresThreePrimes(m));
    }
    let center = (1..=m).map(|i| SupportSet::new(&[i], m)).collect();
    Ok((2, center))
}

/// Connectivity after appending a prime q larger than every current factor:
/// (p_m - 1) * kappa(n).
pub fn kappa_append_prime(modulus: &Modulus, q: u64) -> Result<u64, SupportModelError> {
    let largest = modulus.largest_prime();
    if q <= largest || !is_prime(q) {
        return Err(SupportModelError::NotLargerPrime { q, largest });
    }
    Ok((largest - 1)
        .checked_mul(kappa(modulus))
        .expect("kappa overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::factor_squarefree;

    fn modulus(n: u64) -> Modulus {
        factor_squarefree(n).unwrap()
    }

    #[test]
    fn quotient_layers_for_30() {
        let q = build_quotient(&modulus(30));
        let sizes: Vec<u64> = q.layers().iter().map(|l| l.size).collect();
        let divisors: Vec<u64> = q.layers().iter().map(|l| l.divisor).collect();
        let supports: Vec<String> = q.layers().iter().map(|l| l.support.plus_label()).collect();
        assert_eq!(supports, ["1", "2", "3", "1+2", "1+3", "2+3"]);
        assert_eq!(sizes, [8, 4, 2, 4, 2, 1]);
        assert_eq!(divisors, [2, 3, 5, 6, 10, 15]);
    }

    #[test]
    fn quotient_layers_for_6() {
        let q = build_quotient(&modulus(6));
        assert_eq!(q.layers().len(), 2);
        assert_eq!(q.layers()[0].support.plus_label(), "1");
        assert_eq!(q.layers()[0].size, 2);
        assert_eq!(q.layers()[1].support.plus_label(), "2");
        assert_eq!(q.layers()[1].size, 1);
    }

    #[test]
    fn class_size_105_by_direct_scan() {
        // Residues x mod 105 with 15 | x and 7 not dividing x.
        let m = modulus(105);
        let s = SupportSet::new(&[1, 2], 3);
        let scan = (1..105u64).filter(|x| x % 15 == 0 && x % 7 != 0).count() as u64;
        assert_eq!(scan, 6);
        assert_eq!(class_size(&m, &s), scan);
    }

    #[test]
    fn class_sizes_210() {
        let m = modulus(210);
        assert_eq!(class_size(&m, &SupportSet::new(&[1, 2, 3], 4)), 6);
        assert_eq!(class_size(&m, &SupportSet::new(&[2, 3, 4], 4)), 1);
        assert_eq!(class_size(&modulus(30), &SupportSet::new(&[3], 3)), 2);
    }

    #[test]
    fn adjacency_is_disjointness() {
        let a = SupportSet::new(&[1], 3);
        let b = SupportSet::new(&[2], 3);
        let c = SupportSet::new(&[1, 2], 3);
        let d = SupportSet::new(&[2, 3], 3);
        assert!(layers_adjacent(&a, &b));
        assert!(!layers_adjacent(&c, &d));
        assert!(!layers_adjacent(&a, &a));
    }

    #[test]
    fn degrees_210() {
        let m = modulus(210);
        assert_eq!(degree(&m, &SupportSet::new(&[1], 4)), 57);
        assert_eq!(degree(&m, &SupportSet::new(&[1, 2, 3], 4)), 8);
        assert_eq!(degree(&m, &SupportSet::new(&[1, 2], 4)), 22);
    }

    #[test]
    fn neighbor_layer_enumeration() {
        let n1: Vec<String> = neighbor_layers(&SupportSet::new(&[1, 2], 3))
            .iter()
            .map(|s| s.plus_label())
            .collect();
        assert_eq!(n1, ["3"]);

        let n2: Vec<String> = neighbor_layers(&SupportSet::new(&[4], 4))
            .iter()
            .map(|s| s.plus_label())
            .collect();
        assert_eq!(n2, ["1", "2", "3", "1+2", "1+3", "2+3", "1+2+3"]);

        let n3: Vec<String> = neighbor_layers(&SupportSet::new(&[1], 3))
            .iter()
            .map(|s| s.plus_label())
            .collect();
        assert_eq!(n3, ["2", "3", "2+3"]);
    }

    #[test]
    fn min_degree_layers() {
        let (v, s) = min_degree(&modulus(210));
        assert_eq!((v, s.plus_label().as_str()), (8, "1+2+3"));
        let (v, s) = min_degree(&modulus(6));
        assert_eq!((v, s.plus_label().as_str()), (1, "1"));
        let (v, s) = min_degree(&modulus(30));
        assert_eq!((v, s.plus_label().as_str()), (2, "1+2"));
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(&modulus(2310)), 48);
        assert_eq!(kappa(&modulus(6)), 1);
        assert_eq!(kappa(&modulus(70)), 4);
        assert_eq!(lambda_edge(&modulus(30)), 2);
        assert_eq!(lambda_edge(&modulus(210)), 8);
        assert_eq!(lambda_edge(&modulus(42)), 2);
    }

    #[test]
    fn kappa_equals_smallest_singleton_class() {
        for n in [6u64, 30, 42, 70, 105, 210, 330, 462, 2310] {
            let m = modulus(n);
            let mm = m.prime_count();
            let top = SupportSet::new(&[mm], mm);
            assert_eq!(kappa(&m), class_size(&m, &top));
            let (_, argmin) = min_degree(&m);
            assert_eq!(neighbor_layers(&argmin), vec![top]);
        }
    }

    #[test]
    fn distance_trichotomy() {
        let s12 = SupportSet::new(&[1, 2], 4);
        assert_eq!(layer_distance(&s12, &SupportSet::new(&[2, 4], 4)), 2);
        assert_eq!(layer_distance(&s12, &SupportSet::new(&[2, 3, 4], 4)), 3);
        assert_eq!(layer_distance(&s12, &SupportSet::new(&[4], 4)), 1);
        // Same support: false twins sit at distance 2 for any m >= 2.
        assert_eq!(layer_distance(&s12, &s12), 2);
        let s1 = SupportSet::new(&[1], 2);
        assert_eq!(layer_distance(&s1, &s1), 2);
    }

    #[test]
    fn diameter_values() {
        assert_eq!(diameter(&modulus(6)), 2);
        assert_eq!(diameter(&modulus(30)), 3);
        assert_eq!(diameter(&modulus(2310)), 3);
    }

    #[test]
    fn radius_and_center_values() {
        let (r, c) = radius_and_center(&modulus(30)).unwrap();
        assert_eq!(r, 2);
        let labels: Vec<String> = c.iter().map(|s| s.plus_label()).collect();
        assert_eq!(labels, ["1", "2", "3"]);

        let (r, c) = radius_and_center(&modulus(210)).unwrap();
        assert_eq!((r, c.len()), (2, 4));

        assert_eq!(
            radius_and_center(&modulus(6)),
            Err(SupportModelError::RequiresThreePrimes(2))
        );
    }

    #[test]
    fn append_prime_recurrence() {
        assert_eq!(kappa_append_prime(&modulus(210), 11).unwrap(), 48);
        assert_eq!(kappa_append_prime(&modulus(6), 5).unwrap(), 2);
        assert_eq!(kappa_append_prime(&modulus(30), 7).unwrap(), 8);
        assert!(matches!(
            kappa_append_prime(&modulus(30), 5),
            Err(SupportModelError::NotLargerPrime { .. })
        ));
        assert!(matches!(
            kappa_append_prime(&modulus(30), 9),
            Err(SupportModelError::NotLargerPrime { .. })
        ));
    }

    #[test]
    fn largest_prime_invariance() {
        // Fixing (2, 3, 5), any larger final prime leaves kappa at 8.
        for q in [7u64, 11, 13, 101] {
            assert_eq!(kappa(&modulus(30 * q)), 8);
        }
    }

    #[test]
    fn strict_min_degree_everywhere_else() {
        for n in [6u64, 30, 210, 2310] {
            let m = modulus(n);
            let (value, argmin) = min_degree(&m);
            for s in enumerate_supports(m.prime_count()) {
                if s != argmin {
                    assert!(degree(&m, &s) > value, "n={n}, S={s}");
                }
            }
        }
    }
}
