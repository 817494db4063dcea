//! The linear program over edge free neighborhoods for matchings and the
//! pipeline certifying its explicit dual solution.
//!
//! A free neighborhood is described by a triple `(i, j, k)`: pendant edges on
//! the left end of the chosen edge `e`, pendant edges on the right end, and
//! triangles through `e`. Since each endpoint has `d − 1` other incidences,
//! only triples with `i + k ≤ d − 1` and `j + k ≤ d − 1` occur.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::certificate::{CertificateReport, SlackEntry};
use crate::error::{Error, Result};
use crate::exact::{factorial, format_rational, from_big, int, pow, ser, IntPolynomial, Rational};
use crate::graph::Graph;
use crate::lp::{self, LinearProgram, LpSolution, LpStatus};
use crate::polynomials::{
    check_oracle_limits, edge_occupancy, for_each_matching, kdd_edge_occupancy, kdd_matching_poly, require_positive,
    MatchingState, Model, OracleLimits, SizeTally,
};

/// Edge limit of the empirical triple distribution.
pub const EMPIRICAL_MAX_EDGES: usize = 36;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Triple {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        Triple { i, j, k }
    }

    pub fn mirrored(self) -> Self {
        Triple::new(self.j, self.i, self.k)
    }

    pub fn is_valid_for(self, d: usize) -> bool {
        self.i + self.k < d && self.j + self.k < d
    }

    /// The triples supporting the `K_{d,d}` distribution.
    pub fn is_balanced(self) -> bool {
        self.i == self.j && self.k == 0
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!("the matching program needs d >= 2, got {d}")));
    }
    Ok(())
}

fn check_triple(t: Triple, d: usize) -> Result<()> {
    check_d(d)?;
    if !t.is_valid_for(d) {
        return Err(Error::Domain(format!("triple {t} is not admissible for d = {d}")));
    }
    Ok(())
}

/// All admissible triples in lexicographic order.
pub fn triples(d: usize) -> Result<Vec<Triple>> {
    check_d(d)?;
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d - i.max(j) {
                out.push(Triple::new(i, j, k));
            }
        }
    }
    Ok(out)
}

/// `M_{i,j,k}(λ) = 1 + (i+j+2k)λ + [k² + k(i+j−1) + ij]λ²`.
pub fn m_ijk(t: Triple) -> IntPolynomial {
    let (i, j, k) = (t.i as i64, t.j as i64, t.k as i64);
    IntPolynomial::new([1, i + j + 2 * k, k * k + k * (i + j - 1) + i * j])
}

/// `β_t = 1 + tλ`.
pub fn beta(t: i64, lambda: &Rational) -> Rational {
    Rational::one() + int(t) * lambda
}

/// `λ M′ / (2(d−1)(λ + M))`: expected fraction of the `2(d−1)` neighbors of
/// `e` in the matching.
pub fn alpha_bar(t: Triple, lambda: &Rational, d: usize) -> Result<Rational> {
    check_triple(t, d)?;
    let m = m_ijk(t);
    Ok(lambda * m.derivative().eval(lambda) / (int(2 * (d as i64 - 1)) * (lambda + m.eval(lambda))))
}

/// Adds `value` at index `t`; mass landing outside `0..d` must vanish.
fn put(v: &mut [Rational], t: i64, value: Rational) -> Result<()> {
    if (0..v.len() as i64).contains(&t) {
        v[t as usize] += value;
        Ok(())
    } else if value.is_zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("mass {} at out-of-range t = {t}", format_rational(&value))))
    }
}

/// Distribution of the number of uncovered left neighbors of `e` given the
/// triple, over `t = 0..d−1`. Coinciding cases add up.
pub fn gamma_e(tr: Triple, lambda: &Rational, d: usize) -> Result<Vec<Rational>> {
    check_triple(tr, d)?;
    let (i, j, k) = (tr.i as i64, tr.j as i64, tr.k as i64);
    let l = lambda;
    let z = l + m_ijk(tr).eval(l);
    let left_in = int(i) * l * beta(j + k, l) + int(k) * l * beta(j + k - 1, l);
    let mut v = vec![Rational::zero(); d];
    put(&mut v, 0, l.clone())?;
    put(&mut v, 1, left_in)?;
    put(&mut v, i + k, beta(j, l))?;
    put(&mut v, i + k - 1, int(k) * l)?;
    Ok(v.into_iter().map(|x| x / &z).collect())
}

/// Distribution of the number of uncovered neighbors, on the side of `e`, of
/// a uniform left neighbor `f` of `e`.
pub fn gamma_f(tr: Triple, lambda: &Rational, d: usize) -> Result<Vec<Rational>> {
    check_triple(tr, d)?;
    let (i, j, k, dd) = (tr.i as i64, tr.j as i64, tr.k as i64, d as i64);
    let l = lambda;
    let z = int(dd - 1) * (l + m_ijk(tr).eval(l));
    let left_in = int(i) * l * beta(j + k, l) + int(k) * l * beta(j + k - 1, l);
    let mut v = vec![Rational::zero(); d];
    put(&mut v, 0, left_in.clone())?;
    put(&mut v, 1, int(dd - 1) * l + int(dd - 2) * &left_in)?;
    put(&mut v, i + k - 2, int((i + k - 1) * k) * l)?;
    put(&mut v, i + k - 1, int((dd - i - k) * k + (i + k) * j) * l)?;
    put(&mut v, i + k, int((dd - 1 - i - k) * j) * l + int(i + k))?;
    put(&mut v, i + k + 1, int(dd - 1 - i - k))?;
    Ok(v.into_iter().map(|x| x / &z).collect())
}

pub type MarginalFn = fn(Triple, &Rational, usize) -> Result<Vec<Rational>>;

/// The pair of marginal formulas the program is built from. Swappable so a
/// corrupted formula can be shown to be caught.
#[derive(Clone, Copy)]
pub struct Marginals {
    pub gamma_e: MarginalFn,
    pub gamma_f: MarginalFn,
}

impl Default for Marginals {
    fn default() -> Self {
        Marginals { gamma_e, gamma_f }
    }
}

impl std::fmt::Debug for Marginals {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Marginals")
    }
}

/// A triple with everything the program needs at one `(d, λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingConfig {
    pub triple: Triple,
    pub m: IntPolynomial,
    pub alpha_bar: Rational,
    pub gamma_e_left: Vec<Rational>,
    pub gamma_e_right: Vec<Rational>,
    pub gamma_f_left: Vec<Rational>,
    pub gamma_f_right: Vec<Rational>,
}

impl MatchingConfig {
    pub fn new(triple: Triple, lambda: &Rational, d: usize, marginals: Marginals) -> Result<Self> {
        Ok(MatchingConfig {
            triple,
            m: m_ijk(triple),
            alpha_bar: alpha_bar(triple, lambda, d)?,
            gamma_e_left: (marginals.gamma_e)(triple, lambda, d)?,
            gamma_e_right: (marginals.gamma_e)(triple.mirrored(), lambda, d)?,
            gamma_f_left: (marginals.gamma_f)(triple, lambda, d)?,
            gamma_f_right: (marginals.gamma_f)(triple.mirrored(), lambda, d)?,
        })
    }

    /// `½[γ^f_{ijk}(t) + γ^f_{jik}(t) − γ^e_{ijk}(t) − γ^e_{jik}(t)]`.
    pub fn row_entry(&self, t: usize) -> Rational {
        (&self.gamma_f_left[t] + &self.gamma_f_right[t] - &self.gamma_e_left[t] - &self.gamma_e_right[t]) / int(2)
    }

    fn marginals_are_distributions(&self) -> bool {
        [&self.gamma_e_left, &self.gamma_e_right, &self.gamma_f_left, &self.gamma_f_right]
            .iter()
            .all(|v| v.iter().all(|x| !x.is_negative()) && v.iter().sum::<Rational>() == Rational::one())
    }
}

pub fn enumerate_triples(d: usize, lambda: &Rational) -> Result<Vec<MatchingConfig>> {
    enumerate_triples_with(d, lambda, Marginals::default())
}

pub fn enumerate_triples_with(d: usize, lambda: &Rational, marginals: Marginals) -> Result<Vec<MatchingConfig>> {
    require_positive(lambda)?;
    triples(d)?.into_iter().map(|t| MatchingConfig::new(t, lambda, d, marginals)).collect()
}

/// Maximize `Σ q ᾱ` subject to `Σ q = 1` and one marginal row for each
/// `t = 0..d−2` (the row for `t = d−1` is implied by the others).
pub fn build_primal(d: usize, lambda: &Rational) -> Result<LinearProgram> {
    Ok(primal_for(&enumerate_triples(d, lambda)?, d))
}

fn primal_for(configs: &[MatchingConfig], d: usize) -> LinearProgram {
    let mut constraints = vec![vec![Rational::one(); configs.len()]];
    constraints.extend((0..d - 1).map(|t| configs.iter().map(|c| c.row_entry(t)).collect()));
    LinearProgram {
        objective: configs.iter().map(|c| c.alpha_bar.clone()).collect(),
        constraints,
        rhs: (0..d).map(|r| if r == 0 { Rational::one() } else { Rational::zero() }).collect(),
    }
}

#[derive(Debug, Clone)]
pub struct MatchingSolution {
    pub configs: Vec<MatchingConfig>,
    pub lp: LinearProgram,
    pub solution: LpSolution,
}

impl MatchingSolution {
    pub fn value(&self) -> &Rational {
        self.solution.value.as_ref().expect("the program is feasible and bounded")
    }

    pub fn support(&self) -> Vec<Triple> {
        self.solution.support().into_iter().map(|j| self.configs[j].triple).collect()
    }
}

pub fn solve_primal(d: usize, lambda: &Rational) -> Result<MatchingSolution> {
    let configs = enumerate_triples(d, lambda)?;
    let lp = primal_for(&configs, d);
    let solution = lp::solve(&lp)?;
    if solution.status != LpStatus::Optimal {
        return Err(Error::Structural(format!("matching program is {:?}", solution.status)));
    }
    Ok(MatchingSolution { configs, lp, solution })
}

/// `Λ_0..Λ_{d−1}` (with `Λ_{d−1} = 0`) and the optimum `Λ_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualVariables {
    #[serde(serialize_with = "ser::rational_vec")]
    pub lambdas: Vec<Rational>,
    #[serde(serialize_with = "ser::rational")]
    pub optimum: Rational,
}

impl DualVariables {
    /// `Λ_t`, zero outside `0..d−1`. Every use outside that range carries a
    /// zero coefficient.
    pub fn get(&self, t: i64) -> Rational {
        if t < 0 {
            Rational::zero()
        } else {
            self.lambdas.get(t as usize).cloned().unwrap_or_else(Rational::zero)
        }
    }

    /// Prices for the rows of [`build_primal`]: `(Λ_p, Λ_0, …, Λ_{d−2})`.
    pub fn lp_dual(&self) -> Vec<Rational> {
        let d = self.lambdas.len();
        std::iter::once(self.optimum.clone()).chain(self.lambdas[..d - 1].iter().cloned()).collect()
    }
}

/// Seeds `Λ_{d−1} = 0` and `Λ_{d−2}` from the `(d−1,d−1,0)` constraint, then
/// runs the `(i,i,0)` equality constraints downward for `i = d−2, …, 1`.
pub fn dual_variables(d: usize, lambda: &Rational) -> Result<DualVariables> {
    check_d(d)?;
    require_positive(lambda)?;
    let l = lambda;
    let alpha = kdd_edge_occupancy(d, l);
    let dm1 = int(d as i64 - 1);
    let mut lam = vec![Rational::zero(); d];
    let di = d as i64;
    lam[d - 2] = (l + &dm1 * l * l - &alpha * beta(di - 1, l) * beta(di, l)) / (&dm1 * l);
    for i in (1..d - 1).rev() {
        let ii = int(i as i64);
        let bi = beta(i as i64, l);
        let next = &lam[i] * (int(di - 1 - i as i64) + &ii * &ii * l)
            - &lam[i + 1] * int(di - 1 - i as i64)
            - &dm1 * &alpha * &bi * (&bi + &ii * l / &dm1)
            + &ii * l * &bi;
        lam[i - 1] = next / (&ii * &ii * l);
    }
    Ok(DualVariables { lambdas: lam, optimum: alpha })
}

/// Left side of the simplified dual constraint.
pub fn l_value(t: Triple, lambda: &Rational, d: usize, dual: &DualVariables) -> Rational {
    let (i, j, k) = (t.i as i64, t.j as i64, t.k as i64);
    let alpha = &dual.optimum;
    let side = |a: i64, b: i64| {
        dual.get(a + k - 2) * int((a + k - 1) * k)
            + dual.get(a + k - 1) * int(k + (a + k) * (b - a - 2 * k))
            + dual.get(a + k) * int((a + k) * (a + k - b))
    };
    lambda * int((i - j) * (i - j) + 2 * k) * (Rational::one() - int(d as i64) * alpha) + side(i, j) + side(j, i)
}

/// The dual constraint after scaling by `2(d−1)(λ+M)` and substituting the
/// `(0,0,0)` equality, before the `(i,i,0)` equalities are used.
pub fn dual2_value(t: Triple, lambda: &Rational, d: usize, dual: &DualVariables) -> Rational {
    let (i, j, k, dd) = (t.i as i64, t.j as i64, t.k as i64, d as i64);
    let l = lambda;
    let m = m_ijk(t);
    let mp = m.derivative().eval(l);
    let alpha = &dual.optimum;
    let side = |a: i64, b: i64| {
        dual.get(a + k - 2) * int((a + k - 1) * k) * l
            + dual.get(a + k - 1) * (int((dd - a - k) * k + (a + k) * b - (dd - 1) * k) * l)
            + dual.get(a + k) * (int((dd - 1 - a - k) * b) * l + int(a + k) - int(dd - 1) * beta(b, l))
            + dual.get(a + k + 1) * int(dd - 1 - a - k)
    };
    alpha * (l * &mp + int(2 * (dd - 1)) * m.eval(l)) - l * &mp + side(i, j) + side(j, i)
}

/// `F_d(t) = t[λ(1 − dα) + Λ_t − Λ_{t−1}]`, with `F_d(0) = 0`.
pub fn f_definitional(t: usize, lambda: &Rational, d: usize, dual: &DualVariables) -> Result<Rational> {
    if t >= d {
        return Err(Error::Domain(format!("F_d(t) needs t <= d − 1, got t = {t}, d = {d}")));
    }
    let tt = t as i64;
    Ok(int(tt) * (lambda * (Rational::one() - int(d as i64) * &dual.optimum) + dual.get(tt) - dual.get(tt - 1)))
}

/// `F_d(t) = t(d−1)/M_{K_{d,d}} Σ_{ℓ=t−1}^{d−2} (d−1−t)!/(ℓ+1−t)! λ^{d−ℓ} M_{K_{ℓ,ℓ}}`.
pub fn f_explicit(t: usize, lambda: &Rational, d: usize) -> Result<Rational> {
    check_d(d)?;
    if t == 0 || t >= d {
        return Err(Error::Domain(format!("explicit F_d(t) needs 1 <= t <= d − 1, got t = {t}, d = {d}")));
    }
    let sum: Rational = (t - 1..=d - 2)
        .map(|l| {
            from_big(&(factorial((d - 1 - t) as u64) / factorial((l + 1 - t) as u64)))
                * pow(lambda, d - l)
                * kdd_matching_poly(l).eval(lambda)
        })
        .sum();
    Ok(int((t * (d - 1)) as i64) * sum / kdd_matching_poly(d).eval(lambda))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FRow {
    pub t: usize,
    #[serde(serialize_with = "ser::rational")]
    pub definitional: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub explicit: Rational,
    pub agree: bool,
}

/// Both forms of `F_d(t)` for `t = 1..d−1`.
pub fn f_table(d: usize, lambda: &Rational) -> Result<Vec<FRow>> {
    let dual = dual_variables(d, lambda)?;
    (1..d)
        .map(|t| {
            let definitional = f_definitional(t, lambda, d, &dual)?;
            let explicit = f_explicit(t, lambda, d)?;
            Ok(FRow { t, agree: definitional == explicit, definitional, explicit })
        })
        .collect()
}

/// `(d−1)² λ² M_{K_{d−2,d−2}} / M_{K_{d,d}}`, the value of `F_d(d−1)`.
pub fn f_last_closed_form(d: usize, lambda: &Rational) -> Rational {
    let dm1 = int(d as i64 - 1);
    &dm1 * &dm1 * lambda * lambda * kdd_matching_poly(d - 2).eval(lambda) / kdd_matching_poly(d).eval(lambda)
}

/// `(d−1−t)F(t+1) = (t+1)[tλF(t) + (d−1)λ − (d−1)αβ_{d+t}]` for `t = 1..d−2`.
pub fn f_recurrence_holds(d: usize, lambda: &Rational) -> Result<bool> {
    let dual = dual_variables(d, lambda)?;
    let dm1 = int(d as i64 - 1);
    for t in 1..d.saturating_sub(1) {
        let ft = f_definitional(t, lambda, d, &dual)?;
        let ft1 = f_definitional(t + 1, lambda, d, &dual)?;
        let tt = int(t as i64);
        let lhs = int((d - 1 - t) as i64) * ft1;
        let rhs =
            (&tt + int(1)) * (&tt * lambda * ft + &dm1 * lambda - &dm1 * &dual.optimum * beta((d + t) as i64, lambda));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneReport {
    /// `F_d(t+1) > F_d(t)` for `t = 1..d−2`.
    pub increasing: bool,
    /// `R_d(t) > 0`, and its ratio and sum forms agree.
    pub r_positive: bool,
    pub r_forms_agree: bool,
    /// `M_{K_{t,t}} > tλ M_{K_{t−1,t−1}}` for `t = 1..d`.
    pub crude_bound: bool,
    #[serde(serialize_with = "ser::rational_vec")]
    pub r_values: Vec<Rational>,
}

impl MonotoneReport {
    pub fn passed(&self) -> bool {
        self.increasing && self.r_positive && self.r_forms_agree && self.crude_bound
    }
}

/// `R_d(t) = (t+1) Σ_{ℓ=t}^{d−2} λ^{d−ℓ}/(ℓ−t)! M_ℓ − t(d−1−t) Σ_{ℓ=t−1}^{d−2} λ^{d−ℓ}/(ℓ+1−t)! M_ℓ`.
fn r_sum_form(t: usize, lambda: &Rational, d: usize) -> Rational {
    let term = |l: usize, shift: usize| {
        pow(lambda, d - l) * kdd_matching_poly(l).eval(lambda) / from_big(&factorial((l + shift - t) as u64))
    };
    let first: Rational = (t..=d - 2).map(|l| term(l, 0)).sum();
    let second: Rational = (t - 1..=d - 2).map(|l| term(l, 1)).sum();
    int(t as i64 + 1) * first - int((t * (d - 1 - t)) as i64) * second
}

pub fn check_monotone_f(d: usize, lambda: &Rational) -> Result<MonotoneReport> {
    check_d(d)?;
    require_positive(lambda)?;
    let f: Vec<Rational> = (1..d).map(|t| f_explicit(t, lambda, d)).collect::<Result<_>>()?;
    let mkdd = kdd_matching_poly(d).eval(lambda);
    let mut increasing = true;
    let mut r_forms_agree = true;
    let mut r_values = Vec::new();
    for t in 1..d.saturating_sub(1) {
        let diff = &f[t] - &f[t - 1];
        increasing &= diff.is_positive();
        let r = &mkdd / int(d as i64 - 1) * diff / from_big(&factorial((d - 2 - t) as u64));
        r_forms_agree &= r == r_sum_form(t, lambda, d);
        r_values.push(r);
    }
    let crude_bound = (1..=d)
        .all(|t| kdd_matching_poly(t).eval(lambda) > int(t as i64) * lambda * kdd_matching_poly(t - 1).eval(lambda));
    Ok(MonotoneReport {
        increasing,
        r_positive: r_values.iter().all(Signed::is_positive),
        r_forms_agree,
        crude_bound,
        r_values,
    })
}

/// `M_{K_{d,d}} − β_{2d−1} M_{K_{d−1,d−1}} + (d−1)² λ² M_{K_{d−2,d−2}} = 0` as
/// a polynomial identity.
pub fn laguerre_check(d: usize) -> Result<bool> {
    check_d(d)?;
    let dm1 = BigInt::from(d - 1);
    let lhs = &(&kdd_matching_poly(d) - &(&IntPolynomial::beta(2 * d as i64 - 1) * &kdd_matching_poly(d - 1)))
        + &kdd_matching_poly(d - 2).shift(2).scale(&(&dm1 * &dm1));
    Ok(lhs.is_zero())
}

/// Everything the matching certificate checks at one `(d, λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingCertificate {
    pub report: CertificateReport,
    pub f_table: Vec<FRow>,
    #[serde(serialize_with = "ser::rational")]
    pub f_last_closed_form: Rational,
    pub recurrence: bool,
    pub monotone: Option<MonotoneReport>,
    pub laguerre: bool,
}

impl MatchingCertificate {
    pub fn passed(&self) -> bool {
        self.report.valid
    }
}

/// `L(i,j,k)` for every triple: zero exactly on `(i,i,0)`. Also checks that
/// the raw dual slack, computed from the marginal formulas, equals
/// `λL/(2(d−1)(λ+M))`, that the unsimplified constraint equals `λL`, that
/// the marginals are distributions, the telescoping identity, and that the
/// `(i,i,0)` columns with the constraint rows form a full-rank `d × d` block.
pub fn check_dual_constraints(d: usize, lambda: &Rational) -> Result<CertificateReport> {
    check_dual_constraints_with(d, lambda, Marginals::default())
}

pub fn check_dual_constraints_with(d: usize, lambda: &Rational, marginals: Marginals) -> Result<CertificateReport> {
    let configs = enumerate_triples_with(d, lambda, marginals)?;
    let dual = dual_variables(d, lambda)?;
    let lp = primal_for(&configs, d);
    let raw = lp::check_dual_feasible(&lp, &dual.lp_dual())?;
    let ls: Vec<Rational> = configs.iter().map(|c| l_value(c.triple, lambda, d, &dual)).collect();

    let mut dual_values: Vec<(String, Rational)> =
        dual.lambdas.iter().enumerate().map(|(t, v)| (format!("Lambda_{t}"), v.clone())).collect();
    dual_values.push(("Lambda_p".into(), dual.optimum.clone()));
    let slacks =
        configs.iter().zip(&ls).map(|(c, l)| SlackEntry { config: c.triple.to_string(), slack: l.clone() }).collect();
    let tight: Vec<String> = configs.iter().filter(|c| c.triple.is_balanced()).map(|c| c.triple.to_string()).collect();
    let mut report = CertificateReport::judge("matching", d, lambda, dual_values, slacks, &tight, dual.optimum.clone());

    let scale_base = int(2 * (d as i64 - 1));
    for ((c, l), raw_slack) in configs.iter().zip(&ls).zip(&raw.slacks) {
        let name = c.triple.to_string();
        if !c.marginals_are_distributions() {
            report.fail(format!("{name}: a marginal vector is not a probability distribution"));
        }
        let scaled = raw_slack * &scale_base * (lambda + c.m.eval(lambda));
        if scaled != lambda * l {
            report.fail(format!(
                "{name}: raw dual slack scaled to {} but λL = {}",
                format_rational(&scaled),
                format_rational(&(lambda * l))
            ));
        }
        if dual2_value(c.triple, lambda, d, &dual) != lambda * l {
            report.fail(format!("{name}: unsimplified constraint differs from λL"));
        }
    }

    let index: BTreeMap<Triple, &Rational> = configs.iter().map(|c| c.triple).zip(&ls).collect();
    let f = |t: usize| f_definitional(t, lambda, d, &dual);
    for (&t, &l) in &index {
        if t.i == 0 || t.j == 0 {
            continue;
        }
        let up = Triple::new(t.i - 1, t.j - 1, t.k + 1);
        let Some(&l_up) = index.get(&up) else { continue };
        let expected = f(t.i + t.k)? - f(t.i + t.k - 1)? + f(t.j + t.k)? - f(t.j + t.k - 1)?;
        if l_up - l != expected {
            report.fail(format!("{t}: telescoping identity fails towards {up}"));
        }
    }

    let balanced: Vec<usize> = (0..configs.len()).filter(|&c| configs[c].triple.is_balanced()).collect();
    let block: Vec<Vec<Rational>> =
        lp.constraints.iter().map(|row| balanced.iter().map(|&c| row[c].clone()).collect()).collect();
    if lp::rank(&block) != d {
        report.fail("(i,i,0) block: constraint submatrix is not full rank".into());
    }
    Ok(report)
}

/// The full matching pipeline at one `(d, λ)`.
pub fn certify(d: usize, lambda: &Rational) -> Result<MatchingCertificate> {
    certify_with(d, lambda, Marginals::default())
}

pub fn certify_with(d: usize, lambda: &Rational, marginals: Marginals) -> Result<MatchingCertificate> {
    let mut report = check_dual_constraints_with(d, lambda, marginals)?;
    let f_table = f_table(d, lambda)?;
    let f_last = f_last_closed_form(d, lambda);
    for row in f_table.iter().filter(|r| !r.agree) {
        report.fail(format!("F_{d}({}): definitional and explicit forms differ", row.t));
    }
    if f_table.last().is_some_and(|r| r.explicit != f_last) {
        report.fail(format!("F_{d}({}): closed form differs", d - 1));
    }
    let recurrence = f_recurrence_holds(d, lambda)?;
    if !recurrence {
        report.fail("F recurrence: fails".into());
    }
    let monotone = if d >= 3 {
        let m = check_monotone_f(d, lambda)?;
        if !m.passed() {
            report.fail("F monotonicity: fails".into());
        }
        Some(m)
    } else {
        None
    };
    let laguerre = laguerre_check(d)?;
    if !laguerre {
        report.fail("Laguerre identity: fails".into());
    }
    Ok(MatchingCertificate { report, f_table, f_last_closed_form: f_last, recurrence, monotone, laguerre })
}

/// Triple distribution of a real graph under a uniform edge and orientation,
/// plus the observed conditional marginals for each triple that occurs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmpiricalTriples {
    pub d: usize,
    #[serde(serialize_with = "ser::rational")]
    pub lambda: Rational,
    pub entries: Vec<EmpiricalTriple>,
    #[serde(serialize_with = "ser::rational")]
    pub objective: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub edge_occupancy: Rational,
    /// Primal-feasible with objective equal to the edge occupancy.
    pub consistent: bool,
    /// Every observed conditional marginal equals the formula.
    pub marginals_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmpiricalTriple {
    pub triple: Triple,
    #[serde(serialize_with = "ser::rational")]
    pub q: Rational,
    #[serde(serialize_with = "ser::rational_vec")]
    pub gamma_e: Vec<Rational>,
    #[serde(serialize_with = "ser::rational_vec")]
    pub gamma_f: Vec<Rational>,
}

impl EmpiricalTriples {
    pub fn q(&self, t: Triple) -> Rational {
        self.entries.iter().find(|e| e.triple == t).map_or_else(Rational::zero, |e| e.q.clone())
    }

    /// Masses aligned with [`triples`].
    pub fn masses(&self) -> Vec<Rational> {
        triples(self.d).expect("d >= 2").into_iter().map(|t| self.q(t)).collect()
    }

    pub fn support(&self) -> Vec<Triple> {
        self.entries.iter().map(|e| e.triple).collect()
    }
}

#[derive(Default, Clone)]
struct TripleTally {
    hits: SizeTally,
    e: Vec<SizeTally>,
    /// Summed over the `d − 1` choices of `f`; divided by `d − 1` at the end.
    f: Vec<SizeTally>,
}

/// No matching edge other than `(a, b)` itself touches `a` or `b`.
fn uncovered(m: &MatchingState, a: usize, b: usize) -> bool {
    m.mate[a].is_none_or(|x| x == b) && m.mate[b].is_none_or(|x| x == a)
}

pub fn empirical_triple_distribution(g: &Graph, lambda: &Rational) -> Result<EmpiricalTriples> {
    empirical_triple_distribution_with(g, lambda, Marginals::default())
}

pub fn empirical_triple_distribution_with(
    g: &Graph,
    lambda: &Rational,
    marginals: Marginals,
) -> Result<EmpiricalTriples> {
    require_positive(lambda)?;
    let d = match g.regular_degree() {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::Domain("graph is not d-regular with d >= 2".into())),
    };
    let limits = OracleLimits { max_edges: EMPIRICAL_MAX_EDGES, ..OracleLimits::default() };
    check_oracle_limits(g, Model::Matching, limits)?;
    let edges = g.edges();
    let oriented: Vec<(usize, usize)> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    // Per oriented edge: the other neighbors of u, split by whether they also see v.
    let stars: Vec<(usize, usize, u64, u64, u64)> = oriented
        .iter()
        .map(|&(u, v)| {
            let nu = g.neighbors_mask(u) & !(1 << v);
            let nv = g.neighbors_mask(v) & !(1 << u);
            (u, v, nu & !nv, nv & !nu, nu & nv)
        })
        .collect();
    let mut total = SizeTally::default();
    let mut tallies: BTreeMap<Triple, TripleTally> = BTreeMap::new();
    for_each_matching(g, |m| {
        total.add(m.size);
        for &(u, v, only_u, only_v, common) in &stars {
            // An incident edge (u, x) is free unless x is matched outside e's star.
            let free = |x: usize| m.mate[x].is_none_or(|y| y == u || y == v);
            let count = |mask: u64| crate::graph::bits(mask).filter(|&x| free(x)).count();
            let t = Triple::new(count(only_u), count(only_v), count(common));
            let tally = tallies.entry(t).or_insert_with(|| TripleTally {
                e: vec![SizeTally::default(); d],
                f: vec![SizeTally::default(); d],
                ..TripleTally::default()
            });
            tally.hits.add(m.size);
            let te = crate::graph::bits(only_u | common).filter(|&x| uncovered(m, u, x)).count();
            tally.e[te].add(m.size);
            // Dropping x from {v} ∪ N(u)∖{v} leaves te + [uv uncovered] − [ux uncovered].
            let with_v = te + usize::from(uncovered(m, u, v));
            if te > 0 {
                tally.f[with_v - 1].add_many(m.size, te as u64);
            }
            if d - 1 > te {
                tally.f[with_v].add_many(m.size, (d - 1 - te) as u64);
            }
        }
    });

    let z = total.weight(lambda) * int(oriented.len() as i64);
    let dm1 = int(d as i64 - 1);
    let mut marginals_match = true;
    let entries: Vec<EmpiricalTriple> = tallies
        .iter()
        .map(|(&t, tally)| {
            let hit = tally.hits.weight(lambda);
            let gamma_e: Vec<Rational> = tally.e.iter().map(|s| s.weight(lambda) / &hit).collect();
            let gamma_f: Vec<Rational> = tally.f.iter().map(|s| s.weight(lambda) / (&hit * &dm1)).collect();
            marginals_match &= (marginals.gamma_e)(t, lambda, d).ok().as_ref() == Some(&gamma_e)
                && (marginals.gamma_f)(t, lambda, d).ok().as_ref() == Some(&gamma_f);
            EmpiricalTriple { triple: t, q: hit / &z, gamma_e, gamma_f }
        })
        .collect();

    let configs = enumerate_triples_with(d, lambda, marginals)?;
    let lp = primal_for(&configs, d);
    let mut out = EmpiricalTriples {
        d,
        lambda: lambda.clone(),
        entries,
        objective: Rational::zero(),
        edge_occupancy: edge_occupancy(g, lambda)?,
        consistent: false,
        marginals_match,
    };
    let masses = out.masses();
    out.objective = lp.objective_value(&masses);
    out.consistent = lp.is_feasible(&masses) && out.objective == out.edge_occupancy;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::graph::{generate, Family};
    use proptest::prelude::*;

    fn grid() -> Vec<Rational> {
        vec![rat(1, 4), rat(1, 2), int(1), int(2), int(4)]
    }

    fn t(i: usize, j: usize, k: usize) -> Triple {
        Triple::new(i, j, k)
    }

    #[test]
    fn triple_enumeration() {
        assert_eq!(triples(2).unwrap().len(), 5);
        assert_eq!(triples(3).unwrap().len(), 14);
        let d2 = triples(2).unwrap();
        assert!(d2.contains(&t(0, 0, 1)));
        assert!(!d2.contains(&t(1, 0, 1)));
        assert!(d2.windows(2).all(|w| w[0] < w[1]));
        assert!(triples(1).is_err());
    }

    #[test]
    fn m_ijk_examples() {
        assert_eq!(m_ijk(t(0, 0, 0)), IntPolynomial::one());
        assert_eq!(m_ijk(t(1, 1, 0)), IntPolynomial::new([1, 2, 1]));
        assert_eq!(m_ijk(t(0, 0, 1)), IntPolynomial::new([1, 2]));
    }

    /// Brute-force matching polynomial of the star-plus-triangles neighborhood.
    #[test]
    fn m_ijk_counts_matchings_of_the_neighborhood() {
        for d in 2..=4 {
            for tr in triples(d).unwrap() {
                // u = 0, v = 1; pendant, pendant, then triangle apexes.
                let n = 2 + tr.i + tr.j + tr.k;
                let mut edges = Vec::new();
                for a in 0..tr.i {
                    edges.push((0, 2 + a));
                }
                for b in 0..tr.j {
                    edges.push((1, 2 + tr.i + b));
                }
                for c in 0..tr.k {
                    let x = 2 + tr.i + tr.j + c;
                    edges.push((0, x));
                    edges.push((1, x));
                }
                let g = Graph::from_edges(n, &edges).unwrap();
                assert_eq!(crate::polynomials::matching_gen_poly(&g).unwrap(), m_ijk(tr), "{tr}");
            }
        }
    }

    #[test]
    fn alpha_bar_examples() {
        assert_eq!(alpha_bar(t(0, 0, 0), &int(1), 2).unwrap(), int(0));
        assert_eq!(alpha_bar(t(1, 1, 0), &int(1), 2).unwrap(), rat(2, 5));
        assert_eq!(alpha_bar(t(0, 0, 1), &int(1), 2).unwrap(), rat(1, 4));
    }

    #[test]
    fn gamma_examples() {
        let e = gamma_e(t(0, 0, 0), &int(1), 3).unwrap();
        assert_eq!(e, vec![int(1), int(0), int(0)]);
        // All mass of γ^f(0,0,0) at d = 2 sits at t = 1: f is always an
        // outside edge and e is its only neighbor at u.
        assert_eq!(gamma_f(t(0, 0, 0), &int(1), 2).unwrap(), vec![int(0), int(1)]);
        assert!(gamma_f(t(0, 0, 0), &int(1), 1).is_err());
    }

    #[test]
    fn marginals_sum_to_one_on_the_grid() {
        for d in 2..=6 {
            for l in grid() {
                for c in enumerate_triples(d, &l).unwrap() {
                    assert!(c.marginals_are_distributions(), "{} d={d}", c.triple);
                }
            }
        }
    }

    #[test]
    fn marginals_match_the_oracle() {
        let graphs = [
            generate(&Family::CompleteBipartite(2)).unwrap(),
            generate(&Family::CompleteBipartite(3)).unwrap(),
            generate(&Family::Cycle(6)).unwrap(),
            generate(&Family::Complete(3)).unwrap(),
            generate(&Family::Complete(4)).unwrap(),
            generate(&Family::Prism(3)).unwrap(),
            generate(&Family::Petersen).unwrap(),
        ];
        for g in &graphs {
            for l in [rat(1, 2), int(1), int(3)] {
                let e = empirical_triple_distribution(g, &l).unwrap();
                assert!(e.marginals_match, "{g:?} λ={l}");
                assert!(e.consistent, "{g:?} λ={l}");
            }
        }
    }

    #[test]
    fn empirical_examples() {
        let k22 = generate(&Family::CompleteBipartite(2)).unwrap();
        let e = empirical_triple_distribution(&k22, &int(1)).unwrap();
        assert_eq!(e.support(), vec![t(0, 0, 0), t(1, 1, 0)]);
        assert_eq!(e.objective, rat(2, 7));

        let k3 = generate(&Family::Complete(3)).unwrap();
        let e = empirical_triple_distribution(&k3, &int(1)).unwrap();
        assert!(e.support().contains(&t(0, 0, 1)));
        assert!(e.consistent);

        let c6 = generate(&Family::Cycle(6)).unwrap();
        let e = empirical_triple_distribution(&c6, &int(1)).unwrap();
        assert_eq!(e.objective, rat(5, 18));
        assert!(e.objective < rat(2, 7));
    }

    #[test]
    fn primal_examples() {
        let s = solve_primal(2, &int(1)).unwrap();
        assert_eq!(s.value(), &rat(2, 7));
        let s = solve_primal(3, &int(1)).unwrap();
        assert_eq!(s.value(), &rat(7, 34));
        for d in 2..=4 {
            for l in grid() {
                let s = solve_primal(d, &l).unwrap();
                assert_eq!(s.value(), &kdd_edge_occupancy(d, &l));
                assert!(s.support().iter().all(|tr| tr.is_balanced()), "d={d} λ={l}");
                assert_eq!(s.solution.dual[0], *s.value());
            }
        }
    }

    #[test]
    fn dual_variable_examples() {
        let dv = dual_variables(2, &int(1)).unwrap();
        assert_eq!(dv.lambdas, vec![rat(2, 7), int(0)]);
        assert_eq!(dv.optimum, rat(2, 7));
        let dv = dual_variables(3, &int(1)).unwrap();
        let lp = build_primal(3, &int(1)).unwrap();
        let report = lp::check_dual_feasible(&lp, &dv.lp_dual()).unwrap();
        let ts = triples(3).unwrap();
        for (tr, s) in ts.iter().zip(&report.slacks) {
            if tr.is_balanced() {
                assert!(s.is_zero(), "{tr}");
            }
        }
        assert!(dual_variables(2, &int(0)).is_err());
    }

    #[test]
    fn l_examples() {
        let dv = dual_variables(2, &int(1)).unwrap();
        assert_eq!(l_value(t(0, 1, 0), &int(1), 2, &dv), rat(1, 7));
        let dv3 = dual_variables(3, &int(1)).unwrap();
        assert!(l_value(t(0, 0, 1), &int(1), 3, &dv3).is_positive());
    }

    #[test]
    fn certificates_hold_on_the_grid() {
        for d in 2..=5 {
            for l in grid() {
                let c = certify(d, &l).unwrap();
                assert!(c.passed(), "d={d} λ={l}: {:?}", c.report.failures);
            }
        }
    }

    #[test]
    fn f_examples() {
        let dv = dual_variables(2, &int(1)).unwrap();
        assert_eq!(f_definitional(1, &int(1), 2, &dv).unwrap(), rat(1, 7));
        assert_eq!(f_explicit(1, &int(1), 2).unwrap(), rat(1, 7));
        assert_eq!(f_explicit(2, &int(1), 3).unwrap(), rat(4, 17));
        assert_eq!(f_definitional(0, &int(1), 2, &dv).unwrap(), int(0));
        assert!(f_explicit(3, &int(1), 3).is_err());
        for d in 2..=12 {
            for l in [rat(1, 3), int(1), int(5)] {
                assert!(f_table(d, &l).unwrap().iter().all(|r| r.agree), "d={d}");
                assert!(f_recurrence_holds(d, &l).unwrap());
            }
        }
    }

    #[test]
    fn monotone_examples() {
        let r = check_monotone_f(3, &int(1)).unwrap();
        assert!(r.passed());
        assert!(check_monotone_f(10, &rat(1, 2)).unwrap().passed());
        let m2 = kdd_matching_poly(2).eval(&int(1));
        let m1 = kdd_matching_poly(1).eval(&int(1));
        assert_eq!((m2, m1), (int(7), int(2)));
    }

    #[test]
    fn laguerre_examples() {
        for d in 2..=50 {
            assert!(laguerre_check(d).unwrap(), "d={d}");
        }
    }

    fn broken_gamma_f(tr: Triple, lambda: &Rational, d: usize) -> Result<Vec<Rational>> {
        let mut v = gamma_f(tr, lambda, d)?;
        if tr.k > 0 && d > 2 {
            v.swap(0, 1);
        }
        Ok(v)
    }

    #[test]
    fn corrupted_marginal_is_detected() {
        let bad = Marginals { gamma_f: broken_gamma_f, ..Marginals::default() };
        let r = check_dual_constraints_with(3, &int(1), bad).unwrap();
        assert!(!r.valid);
        assert!(r.failures.iter().any(|f| f.starts_with("(0,0,1)")), "{:?}", r.failures);
        let k4 = generate(&Family::Complete(4)).unwrap();
        assert!(!empirical_triple_distribution_with(&k4, &int(1), bad).unwrap().marginals_match);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn certificate_at_random_fugacities(d in 2usize..5, p in 1i64..30, q in 1i64..30) {
            let l = rat(p, q);
            let c = certify(d, &l).unwrap();
            prop_assert!(c.passed(), "{:?}", c.report.failures);
        }
    }
}
