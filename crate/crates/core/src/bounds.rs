//! Tree fixed point and the vertex-transitive lower bound, positive
//! correlation checks, and the given-size counting bounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, from_big, int, ln_bigint, pow, rat, ser, to_f64, IntPolynomial, Rational};
use crate::graph::{bits, Graph};
use crate::polynomials::{
    check_oracle_limits, for_each_independent_set, independence_poly, kdd_independence_poly, kdd_matching_poly,
    matching_gen_poly, occupancy, require_positive, size_distribution, Model, OracleLimits, SizeTally,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    Inconclusive,
}

/// Rational bracket around the occupancy fraction of the hard-core measure
/// on the infinite `d`-regular tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeOccupancy {
    pub d: usize,
    #[serde(serialize_with = "ser::rational")]
    pub lambda: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub alpha_low: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub alpha_high: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub tolerance: Rational,
}

impl TreeOccupancy {
    pub fn midpoint(&self) -> f64 {
        to_f64(&((&self.alpha_low + &self.alpha_high) / int(2)))
    }
}

/// `g(α) = α/(λ(1−α)) − ((1−2α)/(1−α))^d`, strictly increasing on `[0, 1/2]`
/// with `g(0) = −1` and `g(1/2) = 1/λ`.
pub fn tree_equation(alpha: &Rational, d: usize, lambda: &Rational) -> Rational {
    let one = Rational::one();
    let rest = &one - alpha;
    alpha / (lambda * &rest) - pow(&((&one - int(2) * alpha) / &rest), d)
}

pub fn tree_occupancy(d: usize, lambda: &Rational, tolerance: &Rational) -> Result<TreeOccupancy> {
    if d < 2 {
        return Err(Error::Parameter(format!("tree degree must be at least 2, got {d}")));
    }
    require_positive(lambda)?;
    if !tolerance.is_positive() {
        return Err(Error::Parameter("tolerance must be positive".into()));
    }
    let mut lo = Rational::zero();
    let mut hi = rat(1, 2);
    while &hi - &lo > *tolerance {
        let mid = (&lo + &hi) / int(2);
        if tree_equation(&mid, d, lambda).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(TreeOccupancy { d, lambda: lambda.clone(), alpha_low: lo, alpha_high: hi, tolerance: tolerance.clone() })
}

/// Uniqueness threshold `(d−1)^{d−1} / (d−2)^d`; infinite for `d = 2`.
pub fn lambda_c(d: usize) -> Result<Rational> {
    if d < 3 {
        return Err(Error::Domain(format!("λ_c(T_d) is finite only for d >= 3, got {d}")));
    }
    Ok(pow(&int(d as i64 - 1), d - 1) / pow(&int(d as i64 - 2), d))
}

/// How vertex transitivity is established for the lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transitivity {
    Check,
    /// Taken on trust, for graphs above the automorphism-search limit.
    Assume,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    #[serde(serialize_with = "ser::rational")]
    pub occupancy: Rational,
    pub tree: TreeOccupancy,
    /// Number of ×16 tolerance tightenings that were needed.
    pub tightenings: u32,
    pub verdict: Verdict,
}

pub const MAX_TIGHTENINGS: u32 = 8;

/// `α_G(λ) > α_{T_d}(λ)` for a vertex-transitive bipartite `d`-regular `G`,
/// decided by comparing the exact occupancy with the tree bracket.
pub fn verify_lower_bound(
    g: &Graph,
    lambda: &Rational,
    tolerance: &Rational,
    transitivity: Transitivity,
) -> Result<LowerBoundReport> {
    require_positive(lambda)?;
    let d = match g.regular_degree() {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::Domain("precondition failed: graph is not d-regular with d >= 2".into())),
    };
    if !g.is_bipartite() {
        return Err(Error::Domain("precondition failed: graph is not bipartite".into()));
    }
    if transitivity == Transitivity::Check && !g.is_vertex_transitive()? {
        return Err(Error::Domain("precondition failed: graph is not vertex-transitive".into()));
    }
    let occ = occupancy(g, lambda)?;
    let mut tol = tolerance.clone();
    let mut tightenings = 0;
    loop {
        let tree = tree_occupancy(d, lambda, &tol)?;
        let verdict = if occ > tree.alpha_high {
            Verdict::Pass
        } else if occ <= tree.alpha_low {
            Verdict::Fail
        } else if tightenings < MAX_TIGHTENINGS {
            tightenings += 1;
            tol /= int(16);
            continue;
        } else {
            Verdict::Inconclusive
        };
        return Ok(LowerBoundReport { occupancy: occ, tree, tightenings, verdict });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FkgMode {
    Occupied,
    Uncovered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FkgReport {
    pub vertices: Vec<usize>,
    pub mode: FkgMode,
    #[serde(serialize_with = "ser::rational")]
    pub joint: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub product: Rational,
    /// Two of the vertices share a component, so the inequality must be strict.
    pub strict_expected: bool,
    /// `joint ≥ product`, strict exactly when expected (equality otherwise).
    pub holds: bool,
}

/// Positive correlation of occupied (or uncovered) events for vertices on one
/// side of a bipartite graph, exactly, by enumeration.
pub fn fkg_check(g: &Graph, vertices: &[usize], lambda: &Rational, mode: FkgMode) -> Result<FkgReport> {
    require_positive(lambda)?;
    check_oracle_limits(g, Model::Hardcore, OracleLimits::default())?;
    if vertices.len() < 2 {
        return Err(Error::Parameter("the correlation inequality needs at least two vertices".into()));
    }
    let mask = vertices.iter().try_fold(0u64, |m, &v| {
        if v >= g.vertex_count() || m >> v & 1 == 1 {
            Err(Error::Parameter(format!("vertex {v} is out of range or repeated")))
        } else {
            Ok(m | 1 << v)
        }
    })?;
    let (left, _) =
        g.bipartition().ok_or_else(|| Error::Domain("precondition failed: graph is not bipartite".into()))?;
    let comps = g.components();
    let mut strict_expected = false;
    for comp in &comps {
        let here = mask & comp;
        if here.count_ones() >= 2 {
            strict_expected = true;
            if here & left != 0 && here & !left != 0 {
                return Err(Error::Domain("precondition failed: vertices lie on both sides of the bipartition".into()));
            }
        }
    }

    let event = |set: u64, v: usize| match mode {
        FkgMode::Occupied => set >> v & 1 == 1,
        FkgMode::Uncovered => g.neighbors_mask(v) & set == 0,
    };
    let mut total = SizeTally::default();
    let mut joint = SizeTally::default();
    let mut single = vec![SizeTally::default(); vertices.len()];
    for_each_independent_set(g, |set, size| {
        total.add(size);
        let mut all = true;
        for (slot, &v) in vertices.iter().enumerate() {
            if event(set, v) {
                single[slot].add(size);
            } else {
                all = false;
            }
        }
        if all {
            joint.add(size);
        }
    });
    let z = total.weight(lambda);
    let joint = joint.weight(lambda) / &z;
    let product: Rational = single.iter().map(|t| t.weight(lambda) / &z).product();
    let holds = if strict_expected { joint > product } else { joint == product };
    Ok(FkgReport { vertices: vertices.to_vec(), mode, joint, product, strict_expected, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counts {
    #[serde(serialize_with = "ser::bigint_vec")]
    pub independent: Vec<BigInt>,
    #[serde(serialize_with = "ser::bigint_vec")]
    pub matchings: Vec<BigInt>,
}

/// `i_k` and `m_k` for all `k`.
pub fn counts(g: &Graph) -> Result<Counts> {
    Ok(Counts {
        independent: independence_poly(g)?.coeffs().to_vec(),
        matchings: matching_gen_poly(g)?.coeffs().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lampick {
    pub k: usize,
    #[serde(serialize_with = "ser::rational")]
    pub lambda: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub mode_probability: Rational,
}

/// `λ = c_k / c_{k+1}`, where sizes `k` and `k+1` are equally likely, with
/// the probability of size `k` there.
pub fn lampick_lambda(p: &IntPolynomial, k: usize) -> Result<Lampick> {
    let (ck, ck1) = (p.coeff(k), p.coeff(k + 1));
    if !ck.is_positive() || !ck1.is_positive() {
        return Err(Error::Domain(format!("coefficients c_{k} and c_{} must be positive", k + 1)));
    }
    let lambda = from_big(&ck) / from_big(&ck1);
    let dist = size_distribution(p, &lambda)?;
    Ok(Lampick { k, mode_probability: dist.probabilities[k].clone(), lambda })
}

/// `prob > 1/(2√n)`, decided as `4n·prob² > 1`.
pub fn exceeds_half_inv_sqrt(prob: &Rational, n: usize) -> bool {
    int(4 * n as i64) * prob * prob > Rational::one()
}

/// A fugacity at which size `k` has probability above `1/(2√n)`. Below the
/// top degree this is [`lampick_lambda`]; at the top degree no finite balance
/// point exists, and λ is doubled from 1 until the top size is likely enough.
pub fn mode_lambda(p: &IntPolynomial, k: usize, n: usize) -> Result<Lampick> {
    let top = p.degree().unwrap_or(0);
    if k == 0 || k > top {
        return Err(Error::Domain(format!("size {k} is outside 1..={top}")));
    }
    if k < top {
        return lampick_lambda(p, k);
    }
    let mut lambda = Rational::one();
    for _ in 0..256 {
        let prob = size_distribution(p, &lambda)?.probabilities[k].clone();
        if exceeds_half_inv_sqrt(&prob, n) {
            return Ok(Lampick { k, lambda, mode_probability: prob });
        }
        lambda *= int(2);
    }
    Err(Error::Domain(format!("no fugacity up to 2^256 makes size {k} likely")))
}

/// Independence and matching polynomials of `H_{d,n}`.
pub fn hdn_polys(d: usize, n: usize) -> Result<(IntPolynomial, IntPolynomial)> {
    if d == 0 || n == 0 {
        return Err(Error::Parameter("d and n must be positive".into()));
    }
    if !n.is_multiple_of(2 * d) {
        return Err(Error::Divisibility(format!("2d = {} does not divide n = {n}", 2 * d)));
    }
    let copies = n / (2 * d);
    Ok((kdd_independence_poly(d).pow(copies), kdd_matching_poly(d).pow(copies)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogConcavity {
    pub log_concave: bool,
    /// Every interior inequality is strict.
    pub strict: bool,
}

/// `Pr[j]² ≥ Pr[j+1]·Pr[j−1]` for every interior size `j`.
pub fn log_concavity_check(p: &IntPolynomial, lambda: &Rational) -> Result<LogConcavity> {
    let probs = size_distribution(p, lambda)?.probabilities;
    let mut log_concave = true;
    let mut strict = true;
    for w in probs.windows(3) {
        let (l, r) = (&w[1] * &w[1], &w[0] * &w[2]);
        log_concave &= l >= r;
        strict &= l > r;
    }
    Ok(LogConcavity { log_concave, strict })
}

/// `C(d,j)² > C(d,j−1)C(d,j+1)` and
/// `C(d,j)⁴ j!² > C(d,j−1)² (j−1)! C(d,j+1)² (j+1)!` for `j = 1..d−1`.
pub fn binomial_base_inequalities(d: usize) -> bool {
    let d = d as u64;
    (1..d).all(|j| {
        let (a, b, c) = (binomial(d, j - 1), binomial(d, j), binomial(d, j + 1));
        let fj = factorial(j);
        let independent = &b * &b > &a * &c;
        let matching = b.pow(4) * &fj * &fj > &a * &a * factorial(j - 1) * &c * &c * factorial(j + 1);
        independent && matching
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarianceReport {
    #[serde(serialize_with = "ser::rational")]
    pub hardcore: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub matching: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub bound: Rational,
    pub holds: bool,
}

/// Size variances on `K_{d,d}` for both models against `2d/8 = d/4`.
pub fn variance_check(d: usize, lambda: &Rational) -> Result<VarianceReport> {
    if d == 0 {
        return Err(Error::Parameter("d must be positive".into()));
    }
    let hardcore = size_distribution(&kdd_independence_poly(d), lambda)?.variance();
    let matching = size_distribution(&kdd_matching_poly(d), lambda)?.variance();
    let bound = rat(d as i64, 4);
    Ok(VarianceReport { holds: hardcore <= bound && matching <= bound, hardcore, matching, bound })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GivenSizeReport {
    pub d: Option<usize>,
    pub n: usize,
    pub verdict: Verdict,
    /// Sizes `k` at which `i_k(G) ≤ 2√n·i_k(H_{d,n})` fails.
    pub independent_failures: Vec<usize>,
    pub matching_failures: Vec<usize>,
}

/// `c_k(G)² ≤ 4n·c_k(H)²` for every `k`.
fn squared_bound_failures(g: &[BigInt], h: &IntPolynomial, n: usize) -> Vec<usize> {
    let four_n = BigInt::from(4 * n);
    g.iter()
        .enumerate()
        .filter(|(k, c)| {
            let hk = h.coeff(*k);
            *c * *c > &four_n * &hk * &hk
        })
        .map(|(k, _)| k)
        .collect()
}

pub fn given_size_bound(g: &Graph) -> Result<GivenSizeReport> {
    let n = g.vertex_count();
    let d = g.regular_degree().filter(|&d| d > 0);
    let not_applicable = GivenSizeReport {
        d,
        n,
        verdict: Verdict::NotApplicable,
        independent_failures: Vec::new(),
        matching_failures: Vec::new(),
    };
    let Some(dd) = d else {
        return Ok(not_applicable);
    };
    let (hi, hm) = match hdn_polys(dd, n) {
        Ok(p) => p,
        Err(Error::Divisibility(_)) => return Ok(not_applicable),
        Err(e) => return Err(e),
    };
    let c = counts(g)?;
    let independent_failures = squared_bound_failures(&c.independent, &hi, n);
    let matching_failures = squared_bound_failures(&c.matchings, &hm, n);
    let verdict =
        if independent_failures.is_empty() && matching_failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(GivenSizeReport { d, n, verdict, independent_failures, matching_failures })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub k: usize,
    /// Largest `c_k/c_{k−1}` over the corpus, and the first graph attaining it.
    #[serde(serialize_with = "ser::rational")]
    pub corpus_max: Rational,
    pub argmax: usize,
    #[serde(serialize_with = "ser::rational_opt")]
    pub h_ratio: Option<Rational>,
    pub h_attains: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub d: usize,
    pub n: usize,
    pub verdict: Verdict,
    pub independent: Vec<RatioRow>,
    pub matching: Vec<RatioRow>,
    /// Sizes at which some corpus graph beats `H_{d,n}`; evidence, never a failure.
    pub counterexamples: Vec<String>,
}

fn ratio_rows(corpus: &[Vec<BigInt>], h: &IntPolynomial) -> Vec<RatioRow> {
    let top = corpus.iter().map(Vec::len).max().unwrap_or(0);
    let ratio = |c: &[BigInt], k: usize| -> Option<Rational> {
        let prev = c.get(k - 1)?;
        let cur = c.get(k).cloned().unwrap_or_default();
        (!prev.is_zero()).then(|| from_big(&cur) / from_big(prev))
    };
    (1..top)
        .filter_map(|k| {
            let (argmax, corpus_max) = corpus
                .iter()
                .enumerate()
                .filter_map(|(i, c)| ratio(c, k).map(|r| (i, r)))
                .fold(None, |best: Option<(usize, Rational)>, (i, r)| match best {
                    Some((_, ref b)) if *b >= r => best,
                    _ => Some((i, r)),
                })?;
            let h_ratio = ratio(h.coeffs(), k);
            Some(RatioRow {
                k,
                h_attains: h_ratio.as_ref().is_some_and(|h| *h >= corpus_max),
                corpus_max,
                argmax,
                h_ratio,
            })
        })
        .collect()
}

/// Compares successive count ratios over a corpus of `d`-regular graphs on
/// `n` vertices against `H_{d,n}`.
pub fn conjecture_ratio_check(corpus: &[Graph], d: usize, n: usize) -> Result<ConjectureReport> {
    if let Some((i, _)) =
        corpus.iter().enumerate().find(|(_, g)| g.vertex_count() != n || g.regular_degree() != Some(d))
    {
        return Err(Error::Domain(format!("corpus graph {i} is not {d}-regular on {n} vertices")));
    }
    let (hi, hm) = match hdn_polys(d, n) {
        Ok(p) => p,
        Err(Error::Divisibility(_)) => {
            return Ok(ConjectureReport {
                d,
                n,
                verdict: Verdict::NotApplicable,
                independent: Vec::new(),
                matching: Vec::new(),
                counterexamples: Vec::new(),
            })
        }
        Err(e) => return Err(e),
    };
    let all: Vec<Counts> = corpus.iter().map(counts).collect::<Result<_>>()?;
    let independent = ratio_rows(&all.iter().map(|c| c.independent.clone()).collect::<Vec<_>>(), &hi);
    let matching = ratio_rows(&all.iter().map(|c| c.matchings.clone()).collect::<Vec<_>>(), &hm);
    let counterexamples = independent
        .iter()
        .filter(|r| !r.h_attains)
        .map(|r| format!("independent k={}: graph {}", r.k, r.argmax))
        .chain(matching.iter().filter(|r| !r.h_attains).map(|r| format!("matching k={}: graph {}", r.k, r.argmax)))
        .collect();
    Ok(ConjectureReport { d, n, verdict: Verdict::Pass, independent, matching, counterexamples })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonomerEntropy {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ser::bigint")]
    pub m_k: BigInt,
    pub entropy: f64,
}

/// `log(m_{⌊ρn⌋}(H_{d,n})) / n`.
pub fn monomer_entropy(d: usize, rho: &Rational, n: usize) -> Result<MonomerEntropy> {
    if rho.is_negative() || *rho > rat(1, 2) {
        return Err(Error::Parameter(format!("ρ must lie in [0, 1/2], got {rho}")));
    }
    let (_, hm) = hdn_polys(d, n)?;
    let k = (rho * int(n as i64)).floor().to_integer();
    let k: usize = k.try_into().expect("k <= n/2");
    let m_k = hm.coeff(k);
    Ok(MonomerEntropy { n, k, entropy: ln_bigint(&m_k) / n as f64, m_k })
}

/// Entropy values for every `n` divisible by `2d` up to `max_n`.
pub fn monomer_entropy_table(d: usize, rho: &Rational, max_n: usize) -> Result<Vec<MonomerEntropy>> {
    if d == 0 {
        return Err(Error::Parameter("d must be positive".into()));
    }
    (1..=max_n / (2 * d)).map(|c| monomer_entropy(d, rho, 2 * d * c)).collect()
}

/// Every `r`-subset of one side of each bipartite component's coloring,
/// restricted to a single side of the global bipartition.
pub fn same_side_subsets(g: &Graph, r: usize) -> Result<Vec<Vec<usize>>> {
    let (left, right) = g.bipartition().ok_or_else(|| Error::Domain("graph is not bipartite".into()))?;
    let mut out = Vec::new();
    for side in [left, right] {
        let vs: Vec<usize> = bits(side).collect();
        let mut idx: Vec<usize> = (0..r).collect();
        if vs.len() < r {
            continue;
        }
        loop {
            out.push(idx.iter().map(|&i| vs[i]).collect());
            let Some(pos) = (0..r).rev().find(|&p| idx[p] < vs.len() - r + p) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..r {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn tol9() -> Rational {
        Rational::new(BigInt::one(), BigInt::from(10u64).pow(9))
    }

    fn fam(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    #[test]
    fn tree_examples() {
        let t = tree_occupancy(2, &int(1), &tol9()).unwrap();
        let root = (5.0 - 5f64.sqrt()) / 10.0;
        assert!(to_f64(&t.alpha_low) <= root && root <= to_f64(&t.alpha_high));
        assert!(&t.alpha_high - &t.alpha_low <= tol9());
        assert!(tree_equation(&t.alpha_low, 2, &int(1)).is_negative());
        assert!(!tree_equation(&t.alpha_high, 2, &int(1)).is_negative());
        let t3 = tree_occupancy(3, &int(1), &tol9()).unwrap();
        assert!((t3.midpoint() - 0.2411).abs() < 1e-4);
        assert_eq!(lambda_c(3).unwrap(), int(4));
        assert!(lambda_c(2).is_err());
    }

    #[test]
    fn halving_the_tolerance_halves_the_bracket() {
        let a = tree_occupancy(3, &int(2), &rat(1, 1000)).unwrap();
        let b = tree_occupancy(3, &int(2), &rat(1, 2000)).unwrap();
        assert_eq!(&b.alpha_high - &b.alpha_low, (&a.alpha_high - &a.alpha_low) / int(2));
    }

    #[test]
    fn lower_bound_examples() {
        for g in [fam(Family::Cycle(6)), fam(Family::CompleteBipartite(3)), fam(Family::Hypercube(3))] {
            let r = verify_lower_bound(&g, &int(1), &tol9(), Transitivity::Check).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
        }
        let err = verify_lower_bound(&fam(Family::Petersen), &int(1), &tol9(), Transitivity::Check);
        assert!(matches!(err, Err(Error::Domain(m)) if m.contains("bipartite")));
        let q5 = fam(Family::Hypercube(5));
        assert!(matches!(verify_lower_bound(&q5, &int(1), &tol9(), Transitivity::Check), Err(Error::Capability(_))));
    }

    #[test]
    fn coarse_brackets_are_tightened() {
        // C6 at λ=1: 5/18 ≈ 0.27778 vs the root ≈ 0.27639.
        let r = verify_lower_bound(&fam(Family::Cycle(6)), &int(1), &rat(1, 10), Transitivity::Check).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.tightenings > 0);
    }

    #[test]
    fn fkg_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = fkg_check(&p3, &[0, 2], &int(1), FkgMode::Occupied).unwrap();
        assert_eq!((r.joint.clone(), r.product.clone()), (rat(1, 5), rat(4, 25)));
        assert!(r.holds && r.strict_expected);

        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let r = fkg_check(&two, &[0, 2], &int(1), FkgMode::Occupied).unwrap();
        assert!(!r.strict_expected);
        assert_eq!(r.joint, r.product);

        let c6 = fam(Family::Cycle(6));
        for mode in [FkgMode::Occupied, FkgMode::Uncovered] {
            let r = fkg_check(&c6, &[0, 2], &int(1), mode).unwrap();
            assert!(r.holds && r.joint > r.product);
        }
        assert!(matches!(fkg_check(&c6, &[0, 1], &int(1), FkgMode::Occupied), Err(Error::Domain(_))));
    }

    #[test]
    fn fkg_on_all_pairs_and_triples() {
        for g in [fam(Family::Cycle(8)), fam(Family::Hypercube(3)), fam(Family::CompleteBipartite(3))] {
            for r in [2, 3] {
                for vs in same_side_subsets(&g, r).unwrap() {
                    for mode in [FkgMode::Occupied, FkgMode::Uncovered] {
                        assert!(fkg_check(&g, &vs, &rat(1, 2), mode).unwrap().holds, "{vs:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        let c = counts(&fam(Family::Cycle(8))).unwrap();
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(c.independent, big(&[1, 8, 20, 16, 2]));
        let h = counts(&fam(Family::H { d: 2, n: 8 })).unwrap();
        assert_eq!(h.independent, big(&[1, 8, 20, 16, 4]));
        assert_eq!(counts(&fam(Family::Complete(2))).unwrap().matchings, big(&[1, 1]));
    }

    #[test]
    fn lampick_examples() {
        let k22 = kdd_independence_poly(2);
        let l = lampick_lambda(&k22, 1).unwrap();
        assert_eq!((l.lambda.clone(), l.mode_probability.clone()), (int(2), rat(8, 17)));
        assert!(exceeds_half_inv_sqrt(&l.mode_probability, 4));
        let dist = size_distribution(&k22, &l.lambda).unwrap();
        assert_eq!(dist.probabilities[1], dist.probabilities[2]);

        let k33 = kdd_independence_poly(3);
        assert_eq!(k33, IntPolynomial::new([1, 6, 6, 2]));
        let l = lampick_lambda(&k33, 1).unwrap();
        assert_eq!((l.lambda.clone(), l.mode_probability.clone()), (int(1), rat(2, 5)));
        assert!(exceeds_half_inv_sqrt(&l.mode_probability, 6));
        assert!(lampick_lambda(&k33, 3).is_err());
    }

    #[test]
    fn mode_lambda_covers_every_size() {
        for d in 1..=3 {
            for n in (2 * d..=24).step_by(2 * d) {
                let (pi, pm) = hdn_polys(d, n).unwrap();
                for p in [&pi, &pm] {
                    for k in 1..=n / 2 {
                        let l = mode_lambda(p, k, n).unwrap();
                        assert!(exceeds_half_inv_sqrt(&l.mode_probability, n), "d={d} n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn log_concavity_examples() {
        let r = log_concavity_check(&kdd_independence_poly(2), &int(1)).unwrap();
        assert!(r.log_concave && r.strict);
        for d in 1..=8 {
            assert!(binomial_base_inequalities(d));
        }
        let (pi, pm) = hdn_polys(3, 12).unwrap();
        assert!(log_concavity_check(&pi, &rat(1, 3)).unwrap().log_concave);
        assert!(log_concavity_check(&pm, &int(2)).unwrap().log_concave);
    }

    #[test]
    fn variance_examples() {
        let r = variance_check(2, &int(1)).unwrap();
        assert_eq!(r.hardcore, rat(20, 49));
        assert!(r.holds);
        assert!(variance_check(2, &int(2)).unwrap().holds);
        let r = variance_check(3, &int(1)).unwrap();
        assert!(r.matching <= rat(3, 4));
    }

    #[test]
    fn given_size_examples() {
        assert_eq!(given_size_bound(&fam(Family::Cycle(8))).unwrap().verdict, Verdict::Pass);
        assert_eq!(given_size_bound(&fam(Family::Petersen)).unwrap().verdict, Verdict::NotApplicable);
        assert_eq!(given_size_bound(&fam(Family::Prism(6))).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn conjecture_examples() {
        let corpus = [fam(Family::Cycle(8)), fam(Family::H { d: 2, n: 8 })];
        let r = conjecture_ratio_check(&corpus, 2, 8).unwrap();
        let k4 = r.independent.iter().find(|row| row.k == 4).unwrap();
        assert_eq!(k4.corpus_max, rat(4, 16));
        assert!(k4.h_attains);
        let k1 = &r.independent[0];
        assert_eq!((k1.k, k1.corpus_max.clone()), (1, int(8)));
        let r = conjecture_ratio_check(
            &[fam(Family::Cycle(12)), fam(Family::H { d: 2, n: 12 }), fam(Family::Cycle(12))],
            2,
            12,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(conjecture_ratio_check(&[fam(Family::Petersen)], 2, 10).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(monomer_entropy(2, &int(0), 8).unwrap().entropy, 0.0);
        let e = monomer_entropy(2, &rat(1, 2), 8).unwrap();
        assert_eq!(e.m_k, BigInt::from(4));
        assert!((e.entropy - 4f64.ln() / 8.0).abs() < 1e-12);
        let e = monomer_entropy(2, &rat(1, 4), 12).unwrap();
        assert_eq!(e.k, 3);
        assert!(matches!(monomer_entropy(2, &rat(1, 4), 10), Err(Error::Divisibility(_))));
        assert_eq!(monomer_entropy_table(3, &rat(1, 3), 36).unwrap().len(), 6);
    }

    #[test]
    fn same_side_subsets_cover_both_sides() {
        let c6 = fam(Family::Cycle(6));
        assert_eq!(same_side_subsets(&c6, 2).unwrap().len(), 6);
        assert_eq!(same_side_subsets(&c6, 3).unwrap().len(), 2);
    }
}
