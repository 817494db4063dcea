//! Independence and matching generating polynomials, occupancy fractions,
//! size distributions and the brute-force probability oracle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, from_big, ser, IntPolynomial, Rational};
use crate::graph::{bits, Graph};

/// Size limits for the memoized deletion recurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for PolyBudget {
    fn default() -> Self {
        PolyBudget { max_vertices: 30, max_edges: 90 }
    }
}

pub(crate) fn require_positive(lambda: &Rational) -> Result<()> {
    if lambda.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("fugacity must be positive, got {lambda}")))
    }
}

/// `P_G(λ) = Σ_k i_k(G) λ^k`.
pub fn independence_poly(g: &Graph) -> Result<IntPolynomial> {
    independence_poly_with_budget(g, PolyBudget::default())
}

pub fn independence_poly_with_budget(g: &Graph, budget: PolyBudget) -> Result<IntPolynomial> {
    if g.vertex_count() > budget.max_vertices {
        return Err(Error::Capability(format!(
            "independence polynomial budget is {} vertices, got {}",
            budget.max_vertices,
            g.vertex_count()
        )));
    }
    let mut memo = HashMap::new();
    Ok(indep_rec(g, g.vertex_mask(), &mut memo))
}

/// Highest-degree vertex inside `mask`, ties to the smallest label.
fn pivot(g: &Graph, mask: u64) -> usize {
    let mut best = (0, usize::MAX);
    for v in bits(mask) {
        let deg = (g.neighbors_mask(v) & mask).count_ones();
        if best.1 == usize::MAX || deg > best.0 {
            best = (deg, v);
        }
    }
    best.1
}

/// Splits into components and multiplies; connected pieces go through `step`.
fn by_components(
    g: &Graph,
    mask: u64,
    memo: &mut HashMap<u64, IntPolynomial>,
    step: fn(&Graph, u64, &mut HashMap<u64, IntPolynomial>) -> IntPolynomial,
) -> IntPolynomial {
    if mask == 0 {
        return IntPolynomial::one();
    }
    let comps = g.components_in(mask);
    let mut acc = IntPolynomial::one();
    for comp in comps {
        let p = match memo.get(&comp) {
            Some(p) => p.clone(),
            None => {
                let p = step(g, comp, memo);
                memo.insert(comp, p.clone());
                p
            }
        };
        acc = &acc * &p;
    }
    acc
}

fn indep_rec(g: &Graph, mask: u64, memo: &mut HashMap<u64, IntPolynomial>) -> IntPolynomial {
    by_components(g, mask, memo, |g, comp, memo| {
        if comp.count_ones() == 1 {
            return IntPolynomial::new([1, 1]);
        }
        // P_G = P_{G-v} + λ P_{G-N[v]}
        let v = pivot(g, comp);
        let without = indep_rec(g, comp & !(1 << v), memo);
        let closed = comp & !(1 << v) & !g.neighbors_mask(v);
        let with = indep_rec(g, closed, memo).shift(1);
        &without + &with
    })
}

/// `M_G(λ) = Σ_k m_k(G) λ^k`, the matching generating polynomial.
pub fn matching_gen_poly(g: &Graph) -> Result<IntPolynomial> {
    matching_gen_poly_with_budget(g, PolyBudget::default())
}

pub fn matching_gen_poly_with_budget(g: &Graph, budget: PolyBudget) -> Result<IntPolynomial> {
    if g.vertex_count() > budget.max_vertices || g.edge_count() > budget.max_edges {
        return Err(Error::Capability(format!(
            "matching polynomial budget is {} vertices / {} edges, got {} / {}",
            budget.max_vertices,
            budget.max_edges,
            g.vertex_count(),
            g.edge_count()
        )));
    }
    let mut memo = HashMap::new();
    Ok(match_rec(g, g.vertex_mask(), &mut memo))
}

fn match_rec(g: &Graph, mask: u64, memo: &mut HashMap<u64, IntPolynomial>) -> IntPolynomial {
    by_components(g, mask, memo, |g, comp, memo| {
        if comp.count_ones() == 1 {
            return IntPolynomial::one();
        }
        // Deleting the pivot's edges one at a time, M_G = M_{G-e} + λ M_{G-u-v},
        // ends at M_{G-v} + λ Σ_{u~v} M_{G-u-v}.
        let v = pivot(g, comp);
        let rest = comp & !(1 << v);
        let mut acc = match_rec(g, rest, memo);
        for u in bits(g.neighbors_mask(v) & rest) {
            acc = &acc + &match_rec(g, rest & !(1 << u), memo).shift(1);
        }
        acc
    })
}

/// `2(1+λ)^d − 1`.
pub fn kdd_independence_poly(d: usize) -> IntPolynomial {
    &IntPolynomial::new([1, 1]).pow(d).scale(&BigInt::from(2)) - &IntPolynomial::one()
}

/// `Σ_k C(d,k)² k! λ^k`.
pub fn kdd_matching_poly(d: usize) -> IntPolynomial {
    let d = d as u64;
    IntPolynomial::new((0..=d).map(|k| {
        let c = binomial(d, k);
        &c * &c * factorial(k)
    }))
}

/// `λ P′(λ) / (n P(λ))`.
pub fn occupancy(g: &Graph, lambda: &Rational) -> Result<Rational> {
    require_positive(lambda)?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Domain("occupancy of the empty graph is undefined".into()));
    }
    let p = independence_poly(g)?;
    Ok(log_derivative(&p, lambda) / Rational::from_integer(n.into()))
}

/// `λ M′(λ) / (|E| M(λ))`.
pub fn edge_occupancy(g: &Graph, lambda: &Rational) -> Result<Rational> {
    require_positive(lambda)?;
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::Domain("edge occupancy of an edgeless graph is undefined".into()));
    }
    let p = matching_gen_poly(g)?;
    Ok(log_derivative(&p, lambda) / Rational::from_integer(m.into()))
}

/// `λ p′(λ) / p(λ)`: the expected size under the weights `c_k λ^k`.
pub fn log_derivative(p: &IntPolynomial, lambda: &Rational) -> Rational {
    lambda * p.derivative().eval(lambda) / p.eval(lambda)
}

/// `λ(1+λ)^{d−1} / (2(1+λ)^d − 1)`.
pub fn kdd_occupancy(d: usize, lambda: &Rational) -> Rational {
    let one_plus = Rational::one() + lambda;
    let top = crate::exact::pow(&one_plus, d - 1);
    lambda * &top / (Rational::from_integer(2.into()) * &top * &one_plus - Rational::one())
}

/// `λ M_{K_{d−1,d−1}}(λ) / M_{K_{d,d}}(λ)`.
pub fn kdd_edge_occupancy(d: usize, lambda: &Rational) -> Rational {
    lambda * kdd_matching_poly(d - 1).eval(lambda) / kdd_matching_poly(d).eval(lambda)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeDistribution {
    #[serde(serialize_with = "ser::rational_vec")]
    pub probabilities: Vec<Rational>,
    #[serde(serialize_with = "ser::rational")]
    pub fugacity: Rational,
}

impl SizeDistribution {
    pub fn mean(&self) -> Rational {
        self.moment(1)
    }

    pub fn variance(&self) -> Rational {
        let m = self.mean();
        self.moment(2) - &m * &m
    }

    fn moment(&self, power: u32) -> Rational {
        self.probabilities.iter().enumerate().map(|(k, p)| p * Rational::from_integer(BigInt::from(k).pow(power))).sum()
    }
}

/// Entry `k` is `c_k λ^k / p(λ)`.
pub fn size_distribution(p: &IntPolynomial, lambda: &Rational) -> Result<SizeDistribution> {
    require_positive(lambda)?;
    let z = p.eval(lambda);
    if z.is_zero() {
        return Err(Error::Domain("partition function vanishes".into()));
    }
    let mut power = Rational::one();
    let mut probabilities = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        probabilities.push(from_big(c) * &power / &z);
        power *= lambda;
    }
    Ok(SizeDistribution { probabilities, fugacity: lambda.clone() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Hardcore,
    Matching,
}

/// Limits of the exhaustive oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_vertices: 24, max_edges: 24 }
    }
}

/// A matching seen by the oracle. `mate[v]` is the partner of `v`, or `None`.
#[derive(Debug, Clone)]
pub struct MatchingState {
    pub mate: Vec<Option<usize>>,
    pub covered: u64,
    pub size: usize,
}

impl MatchingState {
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.mate[u] == Some(v)
    }
}

/// A configuration handed to oracle predicates.
#[derive(Debug, Clone, Copy)]
pub enum Configuration<'a> {
    /// Vertex bitset of an independent set.
    Independent(u64),
    Matching(&'a MatchingState),
}

/// Calls `visit(set, |set|)` for every independent set, including the empty one.
pub fn for_each_independent_set(g: &Graph, mut visit: impl FnMut(u64, usize)) {
    fn go(g: &Graph, v: usize, set: u64, blocked: u64, size: usize, visit: &mut dyn FnMut(u64, usize)) {
        if v == g.vertex_count() {
            visit(set, size);
            return;
        }
        go(g, v + 1, set, blocked, size, visit);
        if blocked >> v & 1 == 0 {
            go(g, v + 1, set | 1 << v, blocked | g.neighbors_mask(v), size + 1, visit);
        }
    }
    go(g, 0, 0, 0, 0, &mut visit);
}

/// Calls `visit` for every matching, including the empty one.
pub fn for_each_matching(g: &Graph, mut visit: impl FnMut(&MatchingState)) {
    fn go(g: &Graph, state: &mut MatchingState, decided: u64, visit: &mut dyn FnMut(&MatchingState)) {
        let open = g.vertex_mask() & !decided;
        if open == 0 {
            visit(state);
            return;
        }
        let v = open.trailing_zeros() as usize;
        go(g, state, decided | 1 << v, visit);
        for u in bits(g.neighbors_mask(v) & open & !(1 << v)) {
            state.mate[v] = Some(u);
            state.mate[u] = Some(v);
            state.covered |= 1 << u | 1 << v;
            state.size += 1;
            go(g, state, decided | 1 << u | 1 << v, visit);
            state.size -= 1;
            state.covered &= !(1 << u | 1 << v);
            state.mate[v] = None;
            state.mate[u] = None;
        }
    }
    let mut state = MatchingState { mate: vec![None; g.vertex_count()], covered: 0, size: 0 };
    go(g, &mut state, 0, &mut visit);
}

/// Per-size counts of enumerated configurations, evaluated at a fugacity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SizeTally(Vec<u64>);

impl SizeTally {
    pub fn add(&mut self, size: usize) {
        self.add_many(size, 1);
    }

    pub fn add_many(&mut self, size: usize, count: u64) {
        if self.0.len() <= size {
            self.0.resize(size + 1, 0);
        }
        self.0[size] += count;
    }

    pub fn weight(&self, lambda: &Rational) -> Rational {
        IntPolynomial::new(self.0.iter().map(|&c| BigInt::from(c))).eval(lambda)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }
}

pub(crate) fn check_oracle_limits(g: &Graph, model: Model, limits: OracleLimits) -> Result<()> {
    let too_big = match model {
        Model::Hardcore => g.vertex_count() > limits.max_vertices,
        Model::Matching => g.edge_count() > limits.max_edges,
    };
    if too_big {
        Err(Error::Capability(format!(
            "enumeration oracle limit exceeded ({model:?}: n = {}, |E| = {})",
            g.vertex_count(),
            g.edge_count()
        )))
    } else {
        Ok(())
    }
}

/// Exhaustive probability of `predicate` under the model at fugacity `λ`.
pub fn event_probability_oracle(
    g: &Graph,
    model: Model,
    lambda: &Rational,
    predicate: impl Fn(Configuration<'_>) -> bool,
) -> Result<Rational> {
    event_probability_oracle_with_limits(g, model, lambda, OracleLimits::default(), predicate)
}

pub fn event_probability_oracle_with_limits(
    g: &Graph,
    model: Model,
    lambda: &Rational,
    limits: OracleLimits,
    predicate: impl Fn(Configuration<'_>) -> bool,
) -> Result<Rational> {
    require_positive(lambda)?;
    check_oracle_limits(g, model, limits)?;
    let mut all = SizeTally::default();
    let mut hits = SizeTally::default();
    match model {
        Model::Hardcore => for_each_independent_set(g, |set, size| {
            all.add(size);
            if predicate(Configuration::Independent(set)) {
                hits.add(size);
            }
        }),
        Model::Matching => for_each_matching(g, |m| {
            all.add(m.size);
            if predicate(Configuration::Matching(m)) {
                hits.add(m.size);
            }
        }),
    }
    Ok(hits.weight(lambda) / all.weight(lambda))
}
