//! Canonical keys by exhaustive search over refinement-respecting orderings.
//!
//! Vertices are first split into classes by iterated degree refinement; the
//! class order is itself isomorphism invariant. The key is the lexicographically
//! largest column-major upper-triangle bit string over all orderings that
//! list the classes in order, found by depth-first search with prefix pruning.

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_CANON_LIMIT: usize = 10;

/// Isomorphism-class key: vertex count plus the maximal adjacency code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: u8,
    code: u64,
}

impl CanonicalKey {
    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    /// Big-endian bytes: vertex count, then the code.
    pub fn bytes(&self) -> Vec<u8> {
        let mut out = vec![self.n];
        out.extend_from_slice(&self.code.to_be_bytes());
        out
    }

    /// Rebuilds the canonical representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let mut g = Graph::empty(n);
        let total = n * n.saturating_sub(1) / 2;
        let mut pos = 0;
        for v in 1..n {
            for u in 0..v {
                if self.code >> (total - 1 - pos) & 1 == 1 {
                    g.add_edge(u, v);
                }
                pos += 1;
            }
        }
        g
    }
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey> {
    canonical_key_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_key_with_limit(g: &Graph, limit: usize) -> Result<CanonicalKey> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::Capability(format!("canonical keys are limited to {limit} vertices, got {n}")));
    }
    // 11 vertices is the most that fits the 64-bit code.
    if n > 11 {
        return Err(Error::Capability(format!("canonical code overflows at n = {n}")));
    }
    let colors = refine(g);
    let mut slots: Vec<u32> = colors.clone();
    slots.sort_unstable();
    let mut search = Search { g, colors: &colors, slots: &slots, order: Vec::with_capacity(n), best: None };
    search.dfs(0, 0, false);
    Ok(CanonicalKey { n: n as u8, code: search.best.unwrap_or(0) })
}

/// Iterated degree refinement with invariant color names: each round a
/// vertex's color becomes the rank of (old color, sorted neighbor colors).
pub(crate) fn refine(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut colors = vec![0u32; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = sigs.iter().map(|s| distinct.binary_search(s).unwrap() as u32).collect();
        colors = next;
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

struct Search<'a> {
    g: &'a Graph,
    colors: &'a [u32],
    slots: &'a [u32],
    order: Vec<usize>,
    best: Option<u64>,
}

impl Search<'_> {
    /// `code` holds the bits for the first `order.len()` placed vertices.
    fn dfs(&mut self, used: u64, code: u64, ahead: bool) {
        let n = self.g.vertex_count();
        let j = self.order.len();
        if j == n {
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        }
        let bits_after = |m: usize| m * m.saturating_sub(1) / 2;
        let total = bits_after(n);
        for v in 0..n {
            if used >> v & 1 == 1 || self.colors[v] != self.slots[j] {
                continue;
            }
            let mut next = code;
            for &u in &self.order {
                next = next << 1 | self.g.has_edge(u, v) as u64;
            }
            let mut next_ahead = ahead;
            if !ahead {
                if let Some(best) = self.best {
                    let placed = bits_after(j + 1);
                    let best_prefix = if placed == 0 { 0 } else { best >> (total - placed) };
                    if next < best_prefix {
                        continue;
                    }
                    next_ahead = next > best_prefix;
                }
            }
            self.order.push(v);
            self.dfs(used | 1 << v, next, next_ahead);
            self.order.pop();
        }
    }
}

/// Bitset of vertices in the same refinement class as `v`.
pub(crate) fn class_mask(colors: &[u32], v: usize) -> u64 {
    colors.iter().enumerate().filter(|&(_, &c)| c == colors[v]).fold(0, |m, (u, _)| m | 1 << u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn shuffled(g: &Graph, rng: &mut rand::rngs::StdRng) -> Graph {
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(rng);
        g.relabel(&perm)
    }

    #[test]
    fn c4_equals_k22() {
        let c4 = generate(&Family::Cycle(4)).unwrap();
        let k22 = generate(&Family::CompleteBipartite(2)).unwrap();
        assert_eq!(canonical_key(&c4).unwrap(), canonical_key(&k22).unwrap());
    }

    #[test]
    fn path_and_triangle_differ() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let k3 = generate(&Family::Complete(3)).unwrap();
        assert_ne!(canonical_key(&p3).unwrap(), canonical_key(&k3).unwrap());
    }

    #[test]
    fn key_round_trips_to_an_isomorphic_graph() {
        let g = generate(&Family::Prism(3)).unwrap();
        let key = canonical_key(&g).unwrap();
        let rep = key.to_graph();
        assert_eq!(rep.edge_count(), g.edge_count());
        assert_eq!(canonical_key(&rep).unwrap(), key);
        assert_eq!(key.bytes().len(), 9);
    }

    #[test]
    fn relabeling_invariance() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let graphs = [
            generate(&Family::Petersen).unwrap(),
            generate(&Family::Hypercube(3)).unwrap(),
            generate(&Family::Prism(5)).unwrap(),
            Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            let key = canonical_key(g).unwrap();
            for _ in 0..100 {
                assert_eq!(canonical_key(&shuffled(g, &mut rng)).unwrap(), key);
            }
        }
    }

    #[test]
    fn petersen_and_pentagonal_prism_differ() {
        let p = canonical_key(&generate(&Family::Petersen).unwrap()).unwrap();
        let q = canonical_key(&generate(&Family::Prism(5)).unwrap()).unwrap();
        assert_ne!(p, q);
    }

    #[test]
    fn size_limit() {
        let c11 = generate(&Family::Cycle(11)).unwrap();
        assert!(matches!(canonical_key(&c11), Err(Error::Capability(_))));
        assert!(canonical_key_with_limit(&c11, 11).is_ok());
    }
}
