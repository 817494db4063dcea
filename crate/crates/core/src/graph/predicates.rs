use serde::Serialize;

use super::canon::{class_mask, refine};
use super::{bits, Graph};
use crate::error::{Error, Result};

pub const DEFAULT_TRANSITIVITY_LIMIT: usize = 16;

/// Structural summary of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub regular_degree: Option<usize>,
    /// Side containing the lowest vertex of each component, when bipartite.
    pub bipartition: Option<(u64, u64)>,
    pub triangle_free: bool,
    pub connected: bool,
    pub vertex_transitive: bool,
}

impl Predicates {
    /// Fails with a capability error above the transitivity size limit.
    pub fn of(g: &Graph) -> Result<Self> {
        Ok(Predicates {
            regular_degree: g.regular_degree(),
            bipartition: g.bipartition(),
            triangle_free: g.is_triangle_free(),
            connected: g.is_connected(),
            vertex_transitive: g.is_vertex_transitive()?,
        })
    }
}

impl Graph {
    pub fn is_d_regular(&self, d: usize) -> bool {
        self.regular_degree() == Some(d)
    }

    /// Two-coloring by breadth-first search, or `None` on an odd cycle.
    pub fn bipartition(&self) -> Option<(u64, u64)> {
        let mut left = 0u64;
        let mut right = 0u64;
        for comp in self.components() {
            let start = comp.trailing_zeros() as usize;
            let mut side_a = 1u64 << start;
            let mut side_b = 0u64;
            let mut frontier = side_a;
            let mut on_a = true;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.neighbors_mask(v);
                }
                let (same, other) = if on_a { (side_a, side_b) } else { (side_b, side_a) };
                if next & same != 0 {
                    return None;
                }
                next &= !other;
                if on_a {
                    side_b |= next;
                } else {
                    side_a |= next;
                }
                frontier = next;
                on_a = !on_a;
            }
            left |= side_a;
            right |= side_b;
        }
        Some((left, right))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().iter().all(|&(u, v)| self.neighbors_mask(u) & self.neighbors_mask(v) == 0)
    }

    /// The graph on zero vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_vertex_transitive(&self) -> Result<bool> {
        self.is_vertex_transitive_with_limit(DEFAULT_TRANSITIVITY_LIMIT)
    }

    pub fn is_vertex_transitive_with_limit(&self, limit: usize) -> Result<bool> {
        if self.vertex_count() == 0 {
            return Ok(true);
        }
        Ok(automorphism_orbit(self, 0, limit)? == self.vertex_mask())
    }

    /// True when every component is a copy of `K_{d,d}`.
    pub fn is_union_of_kdd(&self, d: usize) -> bool {
        if d == 0 || self.vertex_count() == 0 {
            return false;
        }
        self.components().into_iter().all(|comp| {
            let h = self.induced(comp);
            h.vertex_count() == 2 * d && h.edge_count() == d * d && h.is_bipartite()
        })
    }
}

/// Orbit of `root` under the automorphism group, by exhaustive search for an
/// automorphism sending `root` to each candidate vertex.
pub fn automorphism_orbit(g: &Graph, root: usize, limit: usize) -> Result<u64> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::Capability(format!(
            "vertex-transitivity search is limited to {limit} vertices (got {n}); \
             assert transitivity explicitly for larger graphs"
        )));
    }
    let colors = refine(g);
    let order = search_order(g, root);
    let mut orbit = 1u64 << root;
    for target in bits(class_mask(&colors, root)) {
        if orbit >> target & 1 == 1 {
            continue;
        }
        let mut image = vec![usize::MAX; n];
        if extend(g, &colors, &order, 0, &mut image, 0, target) {
            // Every vertex reached by the found map's powers is in the orbit.
            let mut v = root;
            loop {
                orbit |= 1 << v;
                v = image[v];
                if v == root {
                    break;
                }
            }
        }
    }
    Ok(orbit)
}

/// Breadth-first order from `root`, then the remaining components.
fn search_order(g: &Graph, root: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = 0u64;
    let mut order = Vec::with_capacity(n);
    for start in std::iter::once(root).chain(0..n) {
        if seen >> start & 1 == 1 {
            continue;
        }
        seen |= 1 << start;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in g.neighbors(v) {
                if seen >> u & 1 == 0 {
                    seen |= 1 << u;
                    queue.push_back(u);
                }
            }
        }
    }
    order
}

fn extend(
    g: &Graph,
    colors: &[u32],
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: u64,
    target: usize,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    let candidates = if depth == 0 { 1u64 << target } else { g.vertex_mask() & !used };
    for y in bits(candidates) {
        if colors[x] != colors[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| g.has_edge(u, x) == g.has_edge(image[u], y));
        if !consistent {
            continue;
        }
        image[x] = y;
        if extend(g, colors, order, depth + 1, image, used | 1 << y, target) {
            return true;
        }
        image[x] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn c6_predicates() {
        let p = Predicates::of(&generate(&Family::Cycle(6)).unwrap()).unwrap();
        assert_eq!(p.regular_degree, Some(2));
        assert_eq!(p.bipartition, Some((0b010101, 0b101010)));
        assert!(p.triangle_free && p.connected && p.vertex_transitive);
    }

    #[test]
    fn petersen_predicates() {
        let p = Predicates::of(&generate(&Family::Petersen).unwrap()).unwrap();
        assert_eq!(p.regular_degree, Some(3));
        assert_eq!(p.bipartition, None);
        assert!(p.triangle_free && p.vertex_transitive);
    }

    #[test]
    fn k4_predicates() {
        let p = Predicates::of(&generate(&Family::Complete(4)).unwrap()).unwrap();
        assert_eq!(p.regular_degree, Some(3));
        assert!(p.bipartition.is_none());
        assert!(!p.triangle_free);
    }

    #[test]
    fn transitivity_negative_cases() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!p3.is_vertex_transitive().unwrap());
        // Regular but not vertex-transitive: K4 plus a disjoint triangular prism.
        let g = generate(&Family::Complete(4)).unwrap().disjoint_union(&generate(&Family::Prism(3)).unwrap()).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert!(!g.is_vertex_transitive().unwrap());
        // Disconnected but transitive.
        let two_c5 =
            generate(&Family::Cycle(5)).unwrap().disjoint_union(&generate(&Family::Cycle(5)).unwrap()).unwrap();
        assert!(two_c5.is_vertex_transitive().unwrap());
    }

    #[test]
    fn transitivity_limit() {
        let q5 = generate(&Family::Hypercube(5)).unwrap();
        assert!(matches!(q5.is_vertex_transitive(), Err(Error::Capability(_))));
        assert!(generate(&Family::Hypercube(4)).unwrap().is_vertex_transitive().unwrap());
    }

    #[test]
    fn kdd_unions() {
        assert!(generate(&Family::H { d: 3, n: 12 }).unwrap().is_union_of_kdd(3));
        assert!(!generate(&Family::Cycle(8)).unwrap().is_union_of_kdd(2));
        assert!(generate(&Family::Cycle(4)).unwrap().is_union_of_kdd(2));
    }

    #[test]
    fn prism_orbits() {
        // The triangular prism is vertex-transitive; the 4-prism is Q3.
        assert!(generate(&Family::Prism(3)).unwrap().is_vertex_transitive().unwrap());
        assert!(generate(&Family::Prism(4)).unwrap().is_vertex_transitive().unwrap());
    }
}
