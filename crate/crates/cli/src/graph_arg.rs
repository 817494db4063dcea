//! Graph and corpus arguments.

use std::path::Path;

use clap::ValueEnum;
use occupancy::corpus::{self, NamedGraph};
use occupancy::graph::{generate, parse_edge_list, parse_edge_list_corpus, parse_graph6, parse_graph6_corpus, Family};
use occupancy::{Error, Graph, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Graph6,
    Edgelist,
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Parameter(format!("cannot read {path}: {e}")))
}

/// A named family (see [`Family`]'s parser) or `file:PATH`.
pub fn parse_graph(spec: &str, format: Format) -> Result<Graph> {
    match spec.strip_prefix("file:") {
        Some(path) => {
            let text = read(path)?;
            match format {
                Format::Graph6 => parse_graph6(text.trim()),
                Format::Edgelist => parse_edge_list(&text),
            }
        }
        None => generate(&spec.parse::<Family>()?),
    }
}

/// A corpus file, or `bundled` for the named corpus (`bundled` stands for the
/// vertex-transitive bipartite list when `vertex_transitive` is set).
pub fn parse_corpus(spec: &str, format: Format, vertex_transitive: bool) -> Result<Vec<NamedGraph>> {
    if spec == "bundled" {
        return Ok(if vertex_transitive { corpus::vertex_transitive_bipartite() } else { corpus::bundled() });
    }
    let text = read(spec)?;
    let graphs = match format {
        Format::Graph6 => parse_graph6_corpus(&text)?,
        Format::Edgelist => parse_edge_list_corpus(&text)?,
    };
    Ok(graphs.into_iter().enumerate().map(|(i, graph)| NamedGraph { name: format!("#{i}"), graph }).collect())
}
