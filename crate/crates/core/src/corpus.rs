//! The bundled corpus of named regular graphs.

use crate::error::Result;
use crate::graph::{generate, Family, Graph};

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

fn named(families: impl IntoIterator<Item = Family>) -> Result<Vec<NamedGraph>> {
    families.into_iter().map(|f| Ok(NamedGraph { name: f.to_string(), graph: generate(&f)? })).collect()
}

/// Cycles, prisms, complete graphs, `Q₃`, Petersen, `K_{d,d}` and `H_{d,n}`,
/// all on at most 12 vertices.
pub fn bundled() -> Vec<NamedGraph> {
    let families = (3..=12)
        .map(Family::Cycle)
        .chain((3..=6).map(Family::Prism))
        .chain((4..=7).map(Family::Complete))
        .chain([Family::Hypercube(3), Family::Petersen])
        .chain((2..=6).map(Family::CompleteBipartite))
        .chain([Family::H { d: 2, n: 8 }, Family::H { d: 2, n: 12 }, Family::H { d: 3, n: 12 }]);
    named(families).expect("bundled families are valid")
}

/// Graphs for the vertex-transitive lower bound.
pub fn vertex_transitive_bipartite() -> Vec<NamedGraph> {
    let families = [6, 8, 10, 12]
        .map(Family::Cycle)
        .into_iter()
        .chain((2..=4).map(Family::CompleteBipartite))
        .chain([3, 4].map(Family::Hypercube))
        .chain([4, 6].map(Family::Prism));
    named(families).expect("bundled families are valid")
}

/// Bundled graphs that are `d`-regular on `n` vertices.
pub fn regular_on(d: usize, n: usize) -> Vec<NamedGraph> {
    bundled().into_iter().filter(|g| g.graph.vertex_count() == n && g.graph.regular_degree() == Some(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let all = bundled();
        assert!(all.iter().all(|g| g.graph.vertex_count() <= 12 && g.graph.regular_degree().is_some()));
        assert!(all.iter().any(|g| g.name == "petersen"));
        let vt = vertex_transitive_bipartite();
        assert_eq!(vt.len(), 11);
        for g in &vt {
            assert!(g.graph.is_bipartite() && g.graph.is_vertex_transitive().unwrap(), "{}", g.name);
        }
        assert_eq!(regular_on(2, 8).len(), 2);
    }
}
