//! The linear program over free-neighborhood distributions for independent
//! sets, its explicit dual certificate, and the triangle-free relaxation.
//!
//! The free neighborhood of `v` under an independent set `I` is the subgraph
//! induced by the neighbors of `v` that have no neighbor in `I \ N(v)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::certificate::{CertificateReport, SlackEntry};
use crate::error::{Error, Result};
use crate::exact::{binomial, int, pow, ser, IntPolynomial, Rational};
use crate::graph::{bits, canonical_key, to_graph6, CanonicalKey, Graph};
use crate::lp::{self, LinearProgram, LpSolution, LpStatus};
use crate::polynomials::{
    check_oracle_limits, for_each_independent_set, independence_poly, occupancy, require_positive, Model, OracleLimits,
    SizeTally,
};

pub const MIN_D: usize = 2;
pub const MAX_D: usize = 7;

/// Oracle limit for empirical distributions.
pub const EMPIRICAL_MAX_VERTICES: usize = 14;

/// One isomorphism class of graphs on at most `d` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardcoreConfig {
    pub key: CanonicalKey,
    /// Canonical representative.
    pub graph: Graph,
    pub poly: IntPolynomial,
    /// graph6 of the representative; `?` is the empty graph.
    pub id: String,
}

impl HardcoreConfig {
    fn from_key(key: CanonicalKey) -> Self {
        let graph = key.to_graph();
        let poly = independence_poly(&graph).expect("configurations are tiny");
        let id = to_graph6(&graph).expect("configurations are tiny");
        HardcoreConfig { key, graph, poly, id }
    }

    /// `a_C = 1 / P_C(λ)`.
    pub fn a(&self, lambda: &Rational) -> Rational {
        self.poly.eval(lambda).recip()
    }

    /// `b_C = (1+λ) P′_C(λ) / (d P_C(λ))`.
    pub fn b(&self, d: usize, lambda: &Rational) -> Rational {
        (Rational::one() + lambda) * self.poly.derivative().eval(lambda) / (int(d as i64) * self.poly.eval(lambda))
    }

    pub fn is_empty(&self) -> bool {
        self.graph.vertex_count() == 0
    }

    /// The edgeless graph on exactly `d` vertices.
    pub fn is_independent_set_of(&self, d: usize) -> bool {
        self.graph.vertex_count() == d && self.graph.edge_count() == 0
    }
}

fn check_d(d: usize) -> Result<()> {
    if (MIN_D..=MAX_D).contains(&d) {
        Ok(())
    } else {
        Err(Error::Capability(format!("configurations are enumerated for {MIN_D} <= d <= {MAX_D}, got {d}")))
    }
}

/// Isomorphism classes on exactly `m` vertices, sorted by key. Built by
/// adding one vertex to each class on `m − 1` vertices in every possible way.
fn classes_on(m: usize) -> Vec<CanonicalKey> {
    static LEVELS: OnceLock<Mutex<Vec<Vec<CanonicalKey>>>> = OnceLock::new();
    let levels = LEVELS.get_or_init(|| {
        let k0 = canonical_key(&Graph::empty(0)).unwrap();
        Mutex::new(vec![vec![k0]])
    });
    let mut levels = levels.lock().unwrap_or_else(|e| e.into_inner());
    while levels.len() <= m {
        let prev = levels.last().unwrap();
        let size = levels.len();
        let mut next: Vec<CanonicalKey> = Vec::new();
        for key in prev {
            let base = key.to_graph();
            for nbrs in 0u64..1 << (size - 1) {
                let mut edges = base.edges();
                edges.extend(bits(nbrs).map(|u| (u, size - 1)));
                let g = Graph::from_edges(size, &edges).unwrap();
                next.push(canonical_key(&g).unwrap());
            }
        }
        next.sort();
        next.dedup();
        levels.push(next);
    }
    levels[m].clone()
}

/// Every graph on `0..=d` vertices up to isomorphism, ordered by vertex
/// count and then canonical key.
pub fn enumerate_configs(d: usize) -> Result<Vec<HardcoreConfig>> {
    check_d(d)?;
    Ok((0..=d).flat_map(classes_on).map(HardcoreConfig::from_key).collect())
}

fn objective_scale(lambda: &Rational) -> Rational {
    lambda / (int(2) * (Rational::one() + lambda))
}

/// Maximize `λ/(2(1+λ)) Σ p_C (a_C + b_C)` subject to `Σ p_C = 1` and
/// `Σ p_C (a_C − b_C) = 0`.
pub fn build_primal(d: usize, lambda: &Rational) -> Result<LinearProgram> {
    require_positive(lambda)?;
    let configs = enumerate_configs(d)?;
    Ok(primal_for(&configs, d, lambda))
}

fn primal_for(configs: &[HardcoreConfig], d: usize, lambda: &Rational) -> LinearProgram {
    let scale = objective_scale(lambda);
    let ab: Vec<(Rational, Rational)> = configs.iter().map(|c| (c.a(lambda), c.b(d, lambda))).collect();
    LinearProgram {
        objective: ab.iter().map(|(a, b)| &scale * (a + b)).collect(),
        constraints: vec![vec![Rational::one(); configs.len()], ab.iter().map(|(a, b)| a - b).collect()],
        rhs: vec![Rational::one(), Rational::zero()],
    }
}

/// Solved primal with the configurations it was built from.
#[derive(Debug, Clone)]
pub struct HardcoreSolution {
    pub configs: Vec<HardcoreConfig>,
    pub lp: LinearProgram,
    pub solution: LpSolution,
}

impl HardcoreSolution {
    pub fn value(&self) -> &Rational {
        self.solution.value.as_ref().expect("the program is feasible and bounded")
    }

    /// Ids of the configurations carrying positive mass.
    pub fn support(&self) -> Vec<&str> {
        self.solution.support().into_iter().map(|j| self.configs[j].id.as_str()).collect()
    }
}

pub fn solve_primal(d: usize, lambda: &Rational) -> Result<HardcoreSolution> {
    require_positive(lambda)?;
    let configs = enumerate_configs(d)?;
    let lp = primal_for(&configs, d, lambda);
    let solution = lp::solve(&lp)?;
    if solution.status != LpStatus::Optimal {
        return Err(Error::Structural(format!("hard-core program is {:?}", solution.status)));
    }
    Ok(HardcoreSolution { configs, lp, solution })
}

/// `Λ₁ = 2 / (2 − (1+λ)^{−d})`.
pub fn lambda_one(d: usize, lambda: &Rational) -> Rational {
    let q = pow(&(Rational::one() + lambda), d).recip();
    int(2) / (int(2) - q)
}

/// Slack `Λ₁ + Λ₂(a_C − b_C) − (a_C + b_C)` of every configuration, with
/// `Λ₂ = 1 − Λ₁`. Tight exactly on `∅` and `K̄_d` when the certificate is
/// valid. The 2×2 system for a distribution supported on those two is also
/// solved; a unique nonnegative solution completes the uniqueness argument.
pub fn certificate_report(d: usize, lambda: &Rational) -> Result<CertificateReport> {
    require_positive(lambda)?;
    let configs = enumerate_configs(d)?;
    let l1 = lambda_one(d, lambda);
    let l2 = Rational::one() - &l1;
    let slacks = configs
        .iter()
        .map(|c| {
            let (a, b) = (c.a(lambda), c.b(d, lambda));
            SlackEntry { config: c.id.clone(), slack: &l1 + &l2 * (&a - &b) - (a + b) }
        })
        .collect();
    let tight: Vec<String> =
        configs.iter().filter(|c| c.is_empty() || c.is_independent_set_of(d)).map(|c| c.id.clone()).collect();
    let optimum = objective_scale(lambda) * &l1;
    let mut report = CertificateReport::judge(
        "hardcore",
        d,
        lambda,
        vec![("Lambda_1".into(), l1), ("Lambda_2".into(), l2)],
        slacks,
        &tight,
        optimum,
    );
    match tight_support_solution(d, lambda) {
        Some((p_empty, p_full)) if !p_empty.is_negative() && !p_full.is_negative() => {}
        _ => report.fail("tight set: no unique nonnegative distribution on {∅, K̄_d}".into()),
    }
    Ok(report)
}

/// The certificate, or a certificate error naming the offending configuration.
pub fn dual_certificate(d: usize, lambda: &Rational) -> Result<CertificateReport> {
    certificate_report(d, lambda)?.into_result()
}

/// Prices for the rows of [`build_primal`] equivalent to `(Λ₁, Λ₂)`.
pub fn lp_dual(report: &CertificateReport) -> Vec<Rational> {
    let scale = objective_scale(&report.lambda);
    report.dual_values.iter().map(|(_, v)| &scale * v).collect()
}

/// Unique `(p_∅, p_{K̄_d})` satisfying both constraint rows, or `None` when
/// the 2×2 system is singular.
pub fn tight_support_solution(d: usize, lambda: &Rational) -> Option<(Rational, Rational)> {
    let empty_diff = Rational::one(); // a_∅ − b_∅
    let full_diff = pow(&(Rational::one() + lambda), d).recip() - Rational::one();
    let m = vec![vec![Rational::one(), Rational::one()], vec![empty_diff, full_diff]];
    let x = lp::solve_square(&m, &[Rational::one(), Rational::zero()])?;
    Some((x[0].clone(), x[1].clone()))
}

/// Both sides of `λP′_C/(P_C − 1) < λd(1+λ)^{d−1}/((1+λ)^d − 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndFactReport {
    #[serde(serialize_with = "ser::rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub rhs: Rational,
    pub strict: bool,
}

pub fn check_ind_fact(c: &Graph, d: usize, lambda: &Rational) -> Result<IndFactReport> {
    require_positive(lambda)?;
    if c.vertex_count() > d {
        return Err(Error::Domain(format!("configuration has {} vertices, more than d = {d}", c.vertex_count())));
    }
    if c.vertex_count() == 0 {
        return Err(Error::Domain("P_C − 1 vanishes for the empty configuration".into()));
    }
    let p = independence_poly(c)?;
    let lhs = lambda * p.derivative().eval(lambda) / (p.eval(lambda) - Rational::one());
    let one_plus = Rational::one() + lambda;
    let top = pow(&one_plus, d - 1);
    let rhs = lambda * int(d as i64) * &top / (&top * &one_plus - Rational::one());
    Ok(IndFactReport { strict: lhs < rhs, lhs, rhs })
}

/// `s_k = Σ_{i=1}^{⌊k/2⌋} (k − 2i)(t_{k−i} r_i − t_i r_{k−i})` for `k = 1..=2d`,
/// where `t_i = C(d, i)` and `r_i` is the coefficient of `λ^i` in `P_C`.
/// These are the coefficients of `(λP′_{K̄_d})(P_C − 1) − (λP′_C)(P_{K̄_d} − 1)`,
/// whose degree can reach `2d`.
pub fn s_k_coefficients(c: &Graph, d: usize) -> Result<Vec<BigInt>> {
    if c.vertex_count() > d {
        return Err(Error::Domain(format!("configuration has {} vertices, more than d = {d}", c.vertex_count())));
    }
    let p = independence_poly(c)?;
    let t = |i: usize| if i <= d { binomial(d as u64, i as u64) } else { BigInt::zero() };
    let r = |i: usize| p.coeff(i);
    Ok((1..=2 * d)
        .map(|k| (1..=k / 2).map(|i| BigInt::from(k - 2 * i) * (t(k - i) * r(i) - t(i) * r(k - i))).sum())
        .collect())
}

/// Maximize `E[Y]` over distributions of `Y ∈ {0..d}` with
/// `E[Y] = d E[(1+λ)^{−Y}]`. Column `j` is the mass at `Y = j`.
pub fn build_triangle_free_lp(d: usize, lambda: &Rational) -> Result<LinearProgram> {
    require_positive(lambda)?;
    if d == 0 {
        return Err(Error::Parameter("d must be positive".into()));
    }
    let q = (Rational::one() + lambda).recip();
    let dd = int(d as i64);
    Ok(LinearProgram {
        objective: (0..=d).map(|j| int(j as i64)).collect(),
        constraints: vec![vec![Rational::one(); d + 1], (0..=d).map(|j| int(j as i64) - &dd * pow(&q, j)).collect()],
        rhs: vec![Rational::one(), Rational::zero()],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleFreeBound {
    #[serde(serialize_with = "ser::rational")]
    pub max_expected_y: Rational,
    /// `λ/(d(1+λ))` times the optimum.
    #[serde(serialize_with = "ser::rational")]
    pub occupancy_bound: Rational,
    pub support: Vec<usize>,
}

pub fn triangle_free_bound(d: usize, lambda: &Rational) -> Result<TriangleFreeBound> {
    let lp = build_triangle_free_lp(d, lambda)?;
    let s = lp::solve(&lp)?;
    let value = s.value.clone().ok_or_else(|| Error::Structural(format!("triangle-free program is {:?}", s.status)))?;
    Ok(TriangleFreeBound {
        occupancy_bound: lambda * &value / (int(d as i64) * (Rational::one() + lambda)),
        max_expected_y: value,
        support: s.support(),
    })
}

fn require_regular(g: &Graph) -> Result<usize> {
    match g.regular_degree() {
        Some(d) if d > 0 => Ok(d),
        _ => Err(Error::Domain("graph is not d-regular with d >= 1".into())),
    }
}

/// Exact distribution of the number of uncovered neighbors of a uniform
/// vertex, indexed `0..=d`.
pub fn empirical_uncovered_distribution(g: &Graph, lambda: &Rational) -> Result<Vec<Rational>> {
    require_positive(lambda)?;
    let d = require_regular(g)?;
    check_oracle_limits(g, Model::Hardcore, OracleLimits::default())?;
    let n = g.vertex_count();
    let mut total = SizeTally::default();
    let mut by_y = vec![SizeTally::default(); d + 1];
    for_each_independent_set(g, |set, size| {
        total.add(size);
        for v in 0..n {
            let y = g.neighbors(v).filter(|&u| g.neighbors_mask(u) & set == 0).count();
            by_y[y].add(size);
        }
    });
    let z = total.weight(lambda) * int(n as i64);
    Ok(by_y.iter().map(|t| t.weight(lambda) / &z).collect())
}

/// Free-neighborhood distribution of a real graph, aligned with
/// [`enumerate_configs`], with both ways of writing the occupancy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmpiricalConfigs {
    pub d: usize,
    #[serde(serialize_with = "ser::rational")]
    pub lambda: Rational,
    pub ids: Vec<String>,
    #[serde(serialize_with = "ser::rational_vec")]
    pub masses: Vec<Rational>,
    /// `Σ p_C (a_C − b_C)`; zero for every real graph.
    #[serde(serialize_with = "ser::rational")]
    pub constraint_residual: Rational,
    /// `(λ/(1+λ)) E[1/P_C]`.
    #[serde(serialize_with = "ser::rational")]
    pub alpha_uncovered: Rational,
    /// `(λ/d) E[P′_C/P_C]`.
    #[serde(serialize_with = "ser::rational")]
    pub alpha_neighbors: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub objective: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub occupancy: Rational,
    /// Feasible for the primal and both expressions equal the occupancy.
    pub consistent: bool,
}

pub fn empirical_config_distribution(g: &Graph, lambda: &Rational) -> Result<EmpiricalConfigs> {
    require_positive(lambda)?;
    let d = require_regular(g)?;
    check_d(d)?;
    let limits = OracleLimits { max_vertices: EMPIRICAL_MAX_VERTICES, ..OracleLimits::default() };
    check_oracle_limits(g, Model::Hardcore, limits)?;
    let n = g.vertex_count();
    let configs = enumerate_configs(d)?;
    let index: HashMap<&CanonicalKey, usize> = configs.iter().enumerate().map(|(i, c)| (&c.key, i)).collect();

    let mut class_of_mask: HashMap<u64, usize> = HashMap::new();
    let mut tallies = vec![SizeTally::default(); configs.len()];
    let mut total = SizeTally::default();
    for_each_independent_set(g, |set, size| {
        total.add(size);
        for v in 0..n {
            let nv = g.neighbors_mask(v);
            let outside = set & !nv;
            let blocked = bits(outside).fold(0u64, |m, u| m | g.neighbors_mask(u));
            let free = nv & !blocked;
            let class = *class_of_mask.entry(free).or_insert_with(|| {
                let key = canonical_key(&g.induced(free)).expect("free neighborhoods have at most d vertices");
                index[&key]
            });
            tallies[class].add(size);
        }
    });
    let z = total.weight(lambda) * int(n as i64);
    let masses: Vec<Rational> = tallies.iter().map(|t| t.weight(lambda) / &z).collect();

    let lp = primal_for(&configs, d, lambda);
    let one_plus = Rational::one() + lambda;
    let mut ea = Rational::zero();
    let mut eb = Rational::zero();
    for (c, p) in configs.iter().zip(&masses) {
        ea += p * c.a(lambda);
        eb += p * c.b(d, lambda);
    }
    let alpha_uncovered = lambda / &one_plus * &ea;
    let alpha_neighbors = lambda / &one_plus * &eb;
    let occ = occupancy(g, lambda)?;
    let consistent = lp.is_feasible(&masses) && alpha_uncovered == occ && alpha_neighbors == occ;
    Ok(EmpiricalConfigs {
        d,
        lambda: lambda.clone(),
        ids: configs.iter().map(|c| c.id.clone()).collect(),
        constraint_residual: &ea - &eb,
        objective: lp.objective_value(&masses),
        masses,
        alpha_uncovered,
        alpha_neighbors,
        occupancy: occ,
        consistent,
    })
}

impl EmpiricalConfigs {
    pub fn mass(&self, id: &str) -> Rational {
        self.ids.iter().position(|i| i == id).map_or_else(Rational::zero, |j| self.masses[j].clone())
    }

    pub fn support(&self) -> Vec<&str> {
        self.ids.iter().zip(&self.masses).filter(|(_, p)| p.is_positive()).map(|(id, _)| id.as_str()).collect()
    }
}

/// The id of `K̄_d`.
pub fn independent_config_id(d: usize) -> String {
    to_graph6(&Graph::empty(d)).expect("d is small")
}

pub const EMPTY_CONFIG_ID: &str = "?";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::graph::{generate, Family};
    use crate::polynomials::kdd_occupancy;

    fn grid() -> Vec<Rational> {
        vec![rat(1, 4), rat(1, 2), int(1), int(2), int(4)]
    }

    /// Brute force: every adjacency matrix on m vertices, deduplicated by key.
    fn brute_force_classes(m: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let mut keys: Vec<CanonicalKey> = (0u64..1 << pairs.len())
            .map(|mask| {
                let edges: Vec<_> = bits(mask).map(|b| pairs[b]).collect();
                canonical_key(&Graph::from_edges(m, &edges).unwrap()).unwrap()
            })
            .collect();
        keys.sort();
        keys.dedup();
        keys.len()
    }

    #[test]
    fn configuration_counts() {
        assert_eq!(enumerate_configs(2).unwrap().len(), 4);
        assert_eq!(enumerate_configs(3).unwrap().len(), 8);
        assert_eq!(enumerate_configs(4).unwrap().len(), 19);
        for m in 0..=5 {
            assert_eq!(classes_on(m).len(), brute_force_classes(m));
        }
        assert!(matches!(enumerate_configs(1), Err(Error::Capability(_))));
        assert!(matches!(enumerate_configs(8), Err(Error::Capability(_))));
    }

    #[test]
    fn d2_configurations_and_values() {
        let cs = enumerate_configs(2).unwrap();
        let ids: Vec<&str> = cs.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids[0], EMPTY_CONFIG_ID);
        assert_eq!(cs[0].a(&int(1)), int(1));
        assert_eq!(cs[0].b(2, &int(1)), int(0));
        let kbar = cs.iter().find(|c| c.is_independent_set_of(2)).unwrap();
        assert_eq!(kbar.id, independent_config_id(2));
        let l = rat(3, 2);
        assert_eq!(kbar.a(&l), pow(&rat(5, 2), 2).recip());
        assert_eq!(kbar.b(2, &l), int(1));
        assert!(cs.iter().all(|c| c.a(&l) > int(0) && c.a(&l) <= int(1)));
    }

    #[test]
    fn d2_primal_example() {
        let s = solve_primal(2, &int(1)).unwrap();
        assert_eq!(s.value(), &rat(2, 7));
        assert_eq!(s.support(), vec![EMPTY_CONFIG_ID, independent_config_id(2).as_str()]);
        let p = &s.solution.primal;
        assert_eq!(p[0], rat(3, 7));
        let kbar = s.configs.iter().position(|c| c.is_independent_set_of(2)).unwrap();
        assert_eq!(p[kbar], rat(4, 7));
    }

    #[test]
    fn primal_optimum_matches_the_closed_form() {
        for d in 2..=4 {
            for l in grid() {
                let s = solve_primal(d, &l).unwrap();
                assert_eq!(s.value(), &kdd_occupancy(d, &l), "d={d} λ={l}");
                assert_eq!(s.support(), vec![EMPTY_CONFIG_ID, independent_config_id(d).as_str()]);
            }
        }
        assert_eq!(solve_primal(3, &int(1)).unwrap().value(), &rat(4, 15));
    }

    #[test]
    fn certificate_examples() {
        let r = dual_certificate(2, &int(1)).unwrap();
        assert_eq!(r.dual("Lambda_1"), Some(&rat(8, 7)));
        assert_eq!(r.dual("Lambda_2"), Some(&rat(-1, 7)));
        assert_eq!(r.optimum, rat(2, 7));
        assert_eq!(r.tight_set, vec![EMPTY_CONFIG_ID.to_string(), independent_config_id(2)]);

        let r = dual_certificate(3, &int(1)).unwrap();
        assert_eq!(r.optimum, rat(4, 15));
        assert_eq!(r.slacks.len(), 8);
        assert_eq!(r.slacks.iter().filter(|s| s.slack > int(0)).count(), 6);
    }

    #[test]
    fn certificate_agrees_with_the_solver() {
        for d in 2..=4 {
            for l in grid() {
                let r = dual_certificate(d, &l).unwrap();
                let s = solve_primal(d, &l).unwrap();
                assert_eq!(&r.optimum, s.value());
                let check = lp::check_dual_feasible(&s.lp, &lp_dual(&r)).unwrap();
                assert!(check.feasible);
                assert_eq!(check.dual_objective, r.optimum);
                let tight: Vec<&str> = check.tight.iter().map(|&j| s.configs[j].id.as_str()).collect();
                assert_eq!(tight, r.tight_set.iter().map(String::as_str).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn tight_support_solution_is_the_paper_distribution() {
        let l = int(1);
        let (p0, pk) = tight_support_solution(2, &l).unwrap();
        assert_eq!((p0, pk), (rat(3, 7), rat(4, 7)));
    }

    #[test]
    fn ind_fact_examples() {
        let k2 = generate(&Family::Complete(2)).unwrap();
        let r = check_ind_fact(&k2, 2, &int(1)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(1), rat(4, 3)));
        assert!(r.strict);
        let kbar = Graph::empty(3);
        let r = check_ind_fact(&kbar, 3, &int(1)).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(!r.strict);
        assert!(check_ind_fact(&generate(&Family::Complete(3)).unwrap(), 3, &int(1)).unwrap().strict);
        assert!(matches!(check_ind_fact(&Graph::empty(0), 2, &int(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn ind_fact_is_strict_off_the_tight_set() {
        for d in 2..=4 {
            for c in enumerate_configs(d).unwrap() {
                if c.is_empty() || c.is_independent_set_of(d) {
                    continue;
                }
                for l in grid() {
                    assert!(check_ind_fact(&c.graph, d, &l).unwrap().strict, "{} d={d}", c.id);
                }
            }
        }
    }

    #[test]
    fn s_k_examples_and_signs() {
        assert!(s_k_coefficients(&Graph::empty(3), 3).unwrap().iter().all(Zero::is_zero));
        let k2 = generate(&Family::Complete(2)).unwrap();
        assert!(s_k_coefficients(&k2, 2).unwrap().iter().take(2).all(Zero::is_zero));
        let k3 = generate(&Family::Complete(3)).unwrap();
        assert!(s_k_coefficients(&k3, 3).unwrap().iter().any(|s| s > &BigInt::zero()));
        for d in 2..=5 {
            let kbar = IntPolynomial::new([1, 1]).pow(d);
            for c in enumerate_configs(d).unwrap() {
                let s = s_k_coefficients(&c.graph, d).unwrap();
                assert!(s.iter().all(|x| !x.is_negative()), "{} d={d}", c.id);
                // P_∅ − 1 vanishes, so every s_k is zero there as well.
                if !c.is_empty() && c.poly != kbar {
                    assert!(s.iter().any(|x| x.is_positive()), "{} d={d}", c.id);
                }
            }
        }
    }

    #[test]
    fn s_k_are_the_product_coefficients() {
        let one = IntPolynomial::one();
        let x = IntPolynomial::monomial(1, 1);
        for d in 2..=4 {
            let t = IntPolynomial::new([1, 1]).pow(d);
            for c in enumerate_configs(d).unwrap() {
                let r = &c.poly;
                let diff = &(&(&x * &t.derivative()) * &(r - &one)) - &(&(&x * &r.derivative()) * &(&t - &one));
                let s = s_k_coefficients(&c.graph, d).unwrap();
                for (k, sk) in s.iter().enumerate() {
                    assert_eq!(&diff.coeff(k + 1), sk, "{} d={d} k={}", c.id, k + 1);
                }
            }
        }
    }

    #[test]
    fn triangle_free_examples() {
        let b = triangle_free_bound(2, &int(1)).unwrap();
        assert_eq!(b.occupancy_bound, rat(2, 7));
        assert_eq!(b.support, vec![0, 2]);
        assert_eq!(triangle_free_bound(3, &int(1)).unwrap().occupancy_bound, rat(4, 15));

        let c6 = generate(&Family::Cycle(6)).unwrap();
        let y = empirical_uncovered_distribution(&c6, &int(1)).unwrap();
        let lp = build_triangle_free_lp(2, &int(1)).unwrap();
        assert!(lp.is_feasible(&y));
        let value = lp.objective_value(&y) * int(1) / (int(2) * int(2));
        assert_eq!(value, rat(5, 18));
    }

    #[test]
    fn empirical_examples() {
        let k22 = generate(&Family::CompleteBipartite(2)).unwrap();
        let e = empirical_config_distribution(&k22, &int(1)).unwrap();
        assert!(e.consistent);
        assert_eq!(e.support(), vec![EMPTY_CONFIG_ID, independent_config_id(2).as_str()]);
        assert_eq!(e.mass(&independent_config_id(2)), rat(4, 7));
        assert_eq!(e.objective, rat(2, 7));

        let c6 = generate(&Family::Cycle(6)).unwrap();
        let e = empirical_config_distribution(&c6, &int(1)).unwrap();
        assert!(e.consistent);
        assert!(e.constraint_residual.is_zero());
        assert_eq!(e.objective, rat(5, 18));

        let petersen = generate(&Family::Petersen).unwrap();
        let e = empirical_config_distribution(&petersen, &int(1)).unwrap();
        assert!(e.consistent);
        assert!(e.objective < rat(4, 15));

        let k4 = generate(&Family::Complete(4)).unwrap();
        assert!(empirical_config_distribution(&k4, &rat(1, 2)).unwrap().consistent);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(empirical_config_distribution(&p3, &int(1)), Err(Error::Domain(_))));
    }
}
