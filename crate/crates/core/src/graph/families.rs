use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families with fixed labelings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `K_{d,d}`: left side `0..d`, right side `d..2d`.
    CompleteBipartite(usize),
    /// Disjoint union of `n / 2d` copies of `K_{d,d}`.
    H {
        d: usize,
        n: usize,
    },
    Cycle(usize),
    Complete(usize),
    Hypercube(usize),
    /// `C_n x K_2`: outer cycle `0..n`, inner cycle `n..2n`, spokes `i ~ i+n`.
    Prism(usize),
    Petersen,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::CompleteBipartite(d) => write!(f, "K{d},{d}"),
            Family::H { d, n } => write!(f, "H{d},{n}"),
            Family::Cycle(n) => write!(f, "C{n}"),
            Family::Complete(n) => write!(f, "K{n}"),
            Family::Hypercube(k) => write!(f, "Q{k}"),
            Family::Prism(n) => write!(f, "prism{n}"),
            Family::Petersen => write!(f, "petersen"),
        }
    }
}

/// `kdd:D`, `hdn:D:N`, `cycle:N`, `prism:N`, `complete:N`, `hypercube:K`
/// or `petersen`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let number = |field: &str| {
            field
                .parse::<usize>()
                .map_err(|_| Error::Parameter(format!("`{field}` in `{spec}` is not a nonnegative integer")))
        };
        let parts: Vec<&str> = spec.trim().split(':').collect();
        Ok(match parts.as_slice() {
            ["kdd", d] => Family::CompleteBipartite(number(d)?),
            ["hdn", d, n] => Family::H { d: number(d)?, n: number(n)? },
            ["cycle", n] => Family::Cycle(number(n)?),
            ["prism", n] => Family::Prism(number(n)?),
            ["complete", n] => Family::Complete(number(n)?),
            ["hypercube", k] => Family::Hypercube(number(k)?),
            ["petersen"] => Family::Petersen,
            _ => return Err(Error::Parameter(format!("unrecognised graph `{spec}`"))),
        })
    }
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(Error::Parameter(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

fn cap(n: usize) -> Result<()> {
    if n > super::MAX_VERTICES {
        Err(Error::Capability(format!("{n} vertices exceeds the {}-vertex limit", super::MAX_VERTICES)))
    } else {
        Ok(())
    }
}

fn complete_bipartite_into(g: &mut Graph, offset: usize, d: usize) {
    for u in 0..d {
        for v in 0..d {
            g.add_edge(offset + u, offset + d + v);
        }
    }
}

fn cycle_into(g: &mut Graph, verts: &[usize]) {
    for (i, &u) in verts.iter().enumerate() {
        g.add_edge(u, verts[(i + 1) % verts.len()]);
    }
}

pub fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::CompleteBipartite(d) => {
            positive("d", d)?;
            cap(2 * d)?;
            let mut g = Graph::empty(2 * d);
            complete_bipartite_into(&mut g, 0, d);
            Ok(g)
        }
        Family::H { d, n } => {
            positive("d", d)?;
            positive("n", n)?;
            if n % (2 * d) != 0 {
                return Err(Error::Divisibility(format!("2d = {} does not divide n = {n}", 2 * d)));
            }
            cap(n)?;
            let mut g = Graph::empty(n);
            for copy in 0..n / (2 * d) {
                complete_bipartite_into(&mut g, copy * 2 * d, d);
            }
            Ok(g)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(Error::Parameter(format!("cycle needs n >= 3, got {n}")));
            }
            cap(n)?;
            let mut g = Graph::empty(n);
            cycle_into(&mut g, &(0..n).collect::<Vec<_>>());
            Ok(g)
        }
        Family::Complete(n) => {
            positive("n", n)?;
            cap(n)?;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v);
                }
            }
            Ok(g)
        }
        Family::Hypercube(k) => {
            positive("k", k)?;
            if k > 6 {
                return Err(Error::Capability(format!("Q{k} exceeds the vertex limit")));
            }
            let n = 1usize << k;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for b in 0..k {
                    let v = u ^ (1 << b);
                    if u < v {
                        g.add_edge(u, v);
                    }
                }
            }
            Ok(g)
        }
        Family::Prism(n) => {
            if n < 3 {
                return Err(Error::Parameter(format!("prism needs n >= 3, got {n}")));
            }
            cap(2 * n)?;
            let mut g = Graph::empty(2 * n);
            cycle_into(&mut g, &(0..n).collect::<Vec<_>>());
            cycle_into(&mut g, &(n..2 * n).collect::<Vec<_>>());
            for i in 0..n {
                g.add_edge(i, i + n);
            }
            Ok(g)
        }
        Family::Petersen => {
            let mut g = Graph::empty(10);
            cycle_into(&mut g, &[0, 1, 2, 3, 4]);
            cycle_into(&mut g, &[5, 7, 9, 6, 8]);
            for i in 0..5 {
                g.add_edge(i, i + 5);
            }
            Ok(g)
        }
    }
}
