//! The acceptance suite: ten criteria, each checked exactly over a pinned
//! `(d, λ)` grid. Shared by the `acceptance` test target and `selftest`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::bounds::{
    binomial_base_inequalities, exceeds_half_inv_sqrt, fkg_check, given_size_bound, hdn_polys, log_concavity_check,
    mode_lambda, same_side_subsets, variance_check, verify_lower_bound, FkgMode, Transitivity, Verdict,
};
use crate::corpus::{bundled, vertex_transitive_bipartite, NamedGraph};
use crate::error::Result;
use crate::exact::{format_rational, int, pow, rat, Rational};
use crate::graph::Graph;
use crate::matching_lp::{gamma_f, Marginals, Triple};
use crate::polynomials::{
    edge_occupancy, event_probability_oracle_with_limits, kdd_edge_occupancy, kdd_occupancy, occupancy, Configuration,
    Model, OracleLimits,
};
use crate::{hardcore_lp, matching_lp};

pub const LAMBDA_GRID: [(i64, i64); 5] = [(1, 4), (1, 2), (1, 1), (2, 1), (4, 1)];
pub const QUICK_LAMBDA_GRID: [(i64, i64); 2] = [(1, 2), (2, 1)];
pub const LP_DEGREES: [usize; 4] = [2, 3, 4, 5];
pub const QUICK_LP_DEGREES: [usize; 2] = [2, 3];
/// Largest `d` for the two forms of `F_d`, the closed form and the recurrence.
pub const F_MAX_D: usize = 12;
pub const LAGUERRE_MAX_D: usize = 50;
pub const TREE_TOLERANCE_EXP: u32 = 9;
pub const FKG_TRIPLE_SAMPLE: usize = 100;
pub const LAMPICK_MAX_D: usize = 3;
pub const LAMPICK_MAX_N: usize = 24;
pub const VARIANCE_MAX_D: usize = 6;
pub const HARDCORE_LP_BUDGET: Duration = Duration::from_secs(10);
pub const MATCHING_LP_BUDGET: Duration = Duration::from_secs(60);
pub const IDENTITY_BUDGET: Duration = Duration::from_secs(30);
/// Oracle limits for the consistency criterion: every bundled graph fits.
pub const CORPUS_ORACLE_LIMITS: OracleLimits = OracleLimits { max_vertices: 12, max_edges: 66 };

#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteConfig {
    /// Reduced grids.
    pub quick: bool,
    /// Marginal formulas under test; swapped only for the mutation check.
    pub marginals: Marginals,
}

impl SuiteConfig {
    fn lambdas(&self) -> Vec<Rational> {
        let grid: &[(i64, i64)] = if self.quick { &QUICK_LAMBDA_GRID } else { &LAMBDA_GRID };
        grid.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    fn degrees(&self) -> &'static [usize] {
        if self.quick {
            &QUICK_LP_DEGREES
        } else {
            &LP_DEGREES
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "hard-core LP optimum"),
    (2, "hard-core dual certificate"),
    (3, "matching LP optimum"),
    (4, "matching dual certificate"),
    (5, "identity suite"),
    (6, "corpus upper bounds"),
    (7, "tree lower bound"),
    (8, "positive correlation"),
    (9, "given-size counts"),
    (10, "oracle consistency"),
];

/// Outcome of one criterion body: `Err` is the first failure.
type Check = std::result::Result<String, String>;

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run(config: &SuiteConfig) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, config)).collect()
}

pub fn run_criterion(id: u8, config: &SuiteConfig) -> CriterionResult {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown criterion", |c| c.1);
    let start = Instant::now();
    let (outcome, budget) = match id {
        1 => (hardcore_optimum(config), Some(HARDCORE_LP_BUDGET)),
        2 => (hardcore_certificate(config), None),
        3 => (matching_optimum(config), Some(MATCHING_LP_BUDGET)),
        4 => (matching_certificate(config), None),
        5 => (identities(config), Some(IDENTITY_BUDGET)),
        6 => (corpus_upper_bounds(config), None),
        7 => (tree_lower_bound(config), None),
        8 => (positive_correlation(config), None),
        9 => (given_size(config), None),
        10 => (oracle_consistency(config), None),
        _ => (Err(format!("no criterion {id}")), None),
    };
    let elapsed = start.elapsed();
    let outcome = match (outcome, budget) {
        (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:?}, budget {b:?}")),
        (o, _) => o,
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name, passed, detail, elapsed_ms: elapsed.as_millis() }
}

fn grid_label(d: usize, lambda: &Rational) -> String {
    format!("d={d} λ={}", format_rational(lambda))
}

fn hardcore_optimum(config: &SuiteConfig) -> Check {
    let mut n = 0;
    for &d in config.degrees() {
        let expected_support: BTreeSet<String> =
            [hardcore_lp::EMPTY_CONFIG_ID.to_string(), hardcore_lp::independent_config_id(d)].into();
        for l in config.lambdas() {
            let s = lift(hardcore_lp::solve_primal(d, &l))?;
            let one_plus = Rational::one() + &l;
            let expected = &l * pow(&one_plus, d - 1) / (int(2) * pow(&one_plus, d) - int(1));
            if *s.value() != expected {
                return Err(format!(
                    "{}: optimum {} ≠ {}",
                    grid_label(d, &l),
                    format_rational(s.value()),
                    format_rational(&expected)
                ));
            }
            let support: BTreeSet<String> = s.support().into_iter().map(String::from).collect();
            if support != expected_support {
                return Err(format!("{}: support {support:?}", grid_label(d, &l)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} grid points"))
}

fn hardcore_certificate(config: &SuiteConfig) -> Check {
    let mut n = 0;
    for &d in config.degrees() {
        for l in config.lambdas() {
            let r = lift(hardcore_lp::certificate_report(d, &l))?;
            if let Some(f) = r.failures.first() {
                return Err(format!("{}: {f}", grid_label(d, &l)));
            }
            n += r.slacks.len();
        }
    }
    Ok(format!("{n} slacks checked"))
}

fn matching_optimum(config: &SuiteConfig) -> Check {
    let mut n = 0;
    for &d in config.degrees() {
        for l in config.lambdas() {
            let s = lift(matching_lp::solve_primal(d, &l))?;
            let expected = kdd_edge_occupancy(d, &l);
            if *s.value() != expected {
                return Err(format!(
                    "{}: optimum {} ≠ {}",
                    grid_label(d, &l),
                    format_rational(s.value()),
                    format_rational(&expected)
                ));
            }
            n += 1;
        }
    }
    Ok(format!("{n} grid points"))
}

fn matching_certificate(config: &SuiteConfig) -> Check {
    let mut n = 0;
    for &d in config.degrees() {
        for l in config.lambdas() {
            let c = lift(matching_lp::certify_with(d, &l, config.marginals))?;
            if let Some(f) = c.report.failures.first() {
                return Err(format!("{}: {f}", grid_label(d, &l)));
            }
            n += c.report.slacks.len();
        }
    }
    let max_d = if config.quick { 6 } else { F_MAX_D };
    for d in 2..=max_d {
        for l in config.lambdas() {
            if let Some(row) = lift(matching_lp::f_table(d, &l))?.iter().find(|r| !r.agree) {
                return Err(format!("{}: F({}) forms differ", grid_label(d, &l), row.t));
            }
        }
    }
    Ok(format!("{n} triples checked; F_d forms agree for d ≤ {max_d}"))
}

fn identities(config: &SuiteConfig) -> Check {
    let laguerre_max = if config.quick { 20 } else { LAGUERRE_MAX_D };
    for d in 2..=laguerre_max {
        if !lift(matching_lp::laguerre_check(d))? {
            return Err(format!("Laguerre identity fails at d={d}"));
        }
    }
    let f_max = if config.quick { 6 } else { F_MAX_D };
    for d in 2..=f_max {
        for l in config.lambdas() {
            let table = lift(matching_lp::f_table(d, &l))?;
            let last = table.last().expect("d >= 2");
            if last.explicit != matching_lp::f_last_closed_form(d, &l) {
                return Err(format!("{}: F_d(d−1) closed form differs", grid_label(d, &l)));
            }
            if !lift(matching_lp::f_recurrence_holds(d, &l))? {
                return Err(format!("{}: F recurrence fails", grid_label(d, &l)));
            }
        }
    }
    Ok(format!("Laguerre d ≤ {laguerre_max}; closed form and recurrence d ≤ {f_max}"))
}

fn corpus_for(config: &SuiteConfig) -> Vec<NamedGraph> {
    let all = bundled();
    if config.quick {
        all.into_iter().filter(|g| g.graph.vertex_count() <= 8).collect()
    } else {
        all
    }
}

fn corpus_upper_bounds(config: &SuiteConfig) -> Check {
    let corpus = corpus_for(config);
    let mut equalities = 0;
    for NamedGraph { name, graph } in &corpus {
        let d = graph.regular_degree().ok_or_else(|| format!("{name}: not regular"))?;
        let union = graph.is_union_of_kdd(d);
        for l in config.lambdas() {
            let pairs = [
                ("occupancy", lift(occupancy(graph, &l))?, kdd_occupancy(d, &l)),
                ("edge occupancy", lift(edge_occupancy(graph, &l))?, kdd_edge_occupancy(d, &l)),
            ];
            for (what, g_val, k_val) in pairs {
                let ok = if union { g_val == k_val } else { g_val < k_val };
                if !ok {
                    return Err(format!(
                        "{name} λ={}: {what} {} vs K_{{d,d}} {}",
                        format_rational(&l),
                        format_rational(&g_val),
                        format_rational(&k_val)
                    ));
                }
                equalities += usize::from(union);
            }
        }
    }
    Ok(format!("{} graphs; {equalities} equalities, all from unions of K_{{d,d}}", corpus.len()))
}

fn tree_lower_bound(config: &SuiteConfig) -> Check {
    let tol = Rational::new(BigInt::one(), BigInt::from(10u32).pow(TREE_TOLERANCE_EXP));
    let graphs = vertex_transitive_bipartite();
    let mut tightened = 0;
    for NamedGraph { name, graph } in &graphs {
        if config.quick && graph.vertex_count() > 8 {
            continue;
        }
        for l in config.lambdas() {
            let r = lift(verify_lower_bound(graph, &l, &tol, Transitivity::Check))?;
            if r.verdict != Verdict::Pass {
                return Err(format!("{name} λ={}: {:?}", format_rational(&l), r.verdict));
            }
            tightened += usize::from(r.tightenings > 0);
        }
    }
    Ok(format!("{} graphs; {tightened} runs needed tightening", graphs.len()))
}

/// Every pair, and up to [`FKG_TRIPLE_SAMPLE`] triples taken at a fixed stride.
fn fkg_subsets(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let mut out = same_side_subsets(g, 2)?;
    let triples = same_side_subsets(g, 3)?;
    if triples.len() <= FKG_TRIPLE_SAMPLE {
        out.extend(triples);
    } else {
        out.extend((0..FKG_TRIPLE_SAMPLE).map(|i| triples[i * triples.len() / FKG_TRIPLE_SAMPLE].clone()));
    }
    Ok(out)
}

fn positive_correlation(config: &SuiteConfig) -> Check {
    let lambdas = if config.quick { vec![int(1)] } else { config.lambdas() };
    let graphs: Vec<NamedGraph> = corpus_for(config).into_iter().filter(|g| g.graph.is_bipartite()).collect();
    let counts = fan_out(&graphs, |NamedGraph { name, graph }| {
        let mut checks = 0;
        for vs in lift(fkg_subsets(graph))? {
            for l in &lambdas {
                for mode in [FkgMode::Occupied, FkgMode::Uncovered] {
                    let r = lift(fkg_check(graph, &vs, l, mode))?;
                    if !r.holds {
                        return Err(format!(
                            "{name} {vs:?} {mode:?} λ={}: joint {} vs product {} (strict expected: {})",
                            format_rational(l),
                            format_rational(&r.joint),
                            format_rational(&r.product),
                            r.strict_expected
                        ));
                    }
                    checks += 1;
                }
            }
        }
        Ok(checks.to_string())
    })?;
    let total: usize = counts.iter().map(|c| c.parse::<usize>().unwrap_or(0)).sum();
    Ok(format!("{total} correlation inequalities over {} bipartite graphs", graphs.len()))
}

fn given_size(config: &SuiteConfig) -> Check {
    let mut modes = 0;
    for d in 1..=LAMPICK_MAX_D {
        for n in (2 * d..=LAMPICK_MAX_N).step_by(2 * d) {
            let (pi, pm) = lift(hdn_polys(d, n))?;
            for (model, p) in [("independent", &pi), ("matching", &pm)] {
                for k in 1..=n / 2 {
                    let m = lift(mode_lambda(p, k, n))?;
                    if !exceeds_half_inv_sqrt(&m.mode_probability, n) {
                        return Err(format!(
                            "H_{{{d},{n}}} {model} k={k}: Pr = {}",
                            format_rational(&m.mode_probability)
                        ));
                    }
                    modes += 1;
                }
                for l in config.lambdas() {
                    if !lift(log_concavity_check(p, &l))?.log_concave {
                        return Err(format!("H_{{{d},{n}}} {model}: not log-concave at λ={}", format_rational(&l)));
                    }
                }
            }
        }
    }
    for d in 1..=VARIANCE_MAX_D {
        if !binomial_base_inequalities(d) {
            return Err(format!("binomial base inequalities fail at d={d}"));
        }
        for l in config.lambdas() {
            if !lift(variance_check(d, &l))?.holds {
                return Err(format!("variance exceeds d/4 at {}", grid_label(d, &l)));
            }
        }
    }
    let mut applicable = 0;
    let graphs = corpus_for(config).into_iter().chain(vertex_transitive_bipartite());
    for NamedGraph { name, graph } in graphs {
        let r = lift(given_size_bound(&graph))?;
        match r.verdict {
            Verdict::Pass => applicable += 1,
            Verdict::NotApplicable => {}
            _ => {
                return Err(format!(
                    "{name}: fails at independent {:?}, matching {:?}",
                    r.independent_failures, r.matching_failures
                ))
            }
        }
    }
    Ok(format!("{modes} mode sizes; {applicable} applicable graphs pass the given-size bound"))
}

/// The first observed γ^f that disagrees with the formula under test.
fn first_marginal_mismatch(e: &matching_lp::EmpiricalTriples, marginals: Marginals) -> Option<Triple> {
    e.entries
        .iter()
        .find(|t| {
            (marginals.gamma_e)(t.triple, &e.lambda, e.d).ok().as_ref() != Some(&t.gamma_e)
                || (marginals.gamma_f)(t.triple, &e.lambda, e.d).ok().as_ref() != Some(&t.gamma_f)
        })
        .map(|t| t.triple)
}

/// Runs `check` on every graph on its own thread; the first failure in
/// input order wins.
fn fan_out(
    graphs: &[NamedGraph],
    check: impl Fn(&NamedGraph) -> Check + Sync,
) -> std::result::Result<Vec<String>, String> {
    std::thread::scope(|s| {
        let handles: Vec<_> = graphs.iter().map(|g| s.spawn(|| check(g))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("worker panicked".into()))).collect()
    })
}

fn oracle_consistency(config: &SuiteConfig) -> Check {
    let lambdas = if config.quick { vec![int(1)] } else { config.lambdas() };
    let corpus = corpus_for(config);
    fan_out(&corpus, |NamedGraph { name, graph }| {
        let n = graph.vertex_count();
        let edges = graph.edges();
        for l in &lambdas {
            let at = |what: &str| format!("{name} λ={}: {what}", format_rational(l));
            let mut vertex_sum = Rational::default();
            for v in 0..n {
                vertex_sum += lift(event_probability_oracle_with_limits(
                    graph,
                    Model::Hardcore,
                    l,
                    CORPUS_ORACLE_LIMITS,
                    |c| matches!(c, Configuration::Independent(s) if s >> v & 1 == 1),
                ))?;
            }
            if vertex_sum / int(n as i64) != lift(occupancy(graph, l))? {
                return Err(at("occupancy differs from the oracle"));
            }
            let mut edge_sum = Rational::default();
            for &(u, v) in &edges {
                edge_sum += lift(event_probability_oracle_with_limits(
                    graph,
                    Model::Matching,
                    l,
                    CORPUS_ORACLE_LIMITS,
                    |c| matches!(c, Configuration::Matching(m) if m.contains(u, v)),
                ))?;
            }
            if edge_sum / int(edges.len() as i64) != lift(edge_occupancy(graph, l))? {
                return Err(at("edge occupancy differs from the oracle"));
            }

            let hc = lift(hardcore_lp::empirical_config_distribution(graph, l))?;
            if !hc.consistent {
                return Err(at("free-neighborhood distribution is not primal-consistent"));
            }
            let m = lift(matching_lp::empirical_triple_distribution_with(graph, l, config.marginals))?;
            if let Some(t) = first_marginal_mismatch(&m, config.marginals) {
                return Err(at(&format!("{t}: observed marginals differ from the formula")));
            }
            if !m.consistent {
                return Err(at("triple distribution is not primal-consistent"));
            }
        }
        Ok(String::new())
    })?;
    Ok(format!("{} graphs", corpus.len()))
}

/// `γ^f` with the masses at 0 and 1 exchanged whenever `k > 0`: a corruption
/// the suite must catch.
pub fn swapped_gamma_f(t: Triple, lambda: &Rational, d: usize) -> Result<Vec<Rational>> {
    let mut v = gamma_f(t, lambda, d)?;
    if t.k > 0 && d > 2 {
        v.swap(0, 1);
    }
    Ok(v)
}

pub fn mutated_marginals() -> Marginals {
    Marginals { gamma_f: swapped_gamma_f, ..Marginals::default() }
}
