//! Exact desk-scale counting (independent sets, sum-free sets) plus the
//! closed-form bounds: hypergeometric Janson, the smallest-eigenvalue
//! binomial bound, Alon–Rödl, and inclusion–exclusion predictions from an
//! enumerated extremal family.
//!
//! Counts are exact `BigUint`s; budget-limited searches fail loudly with
//! the partial node count instead of returning an underestimate.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::extremal::{enumerate_sf0, mu_times_order};
use crate::group::GroupSpec;
use crate::hypergraph::DenseGraph;
use num::bigint::{BigInt, BigUint};
use num::rational::Ratio;
use num::{One, Zero};
use serde::Serialize;

pub type ExactCount = BigUint;
pub type BigRational = Ratio<BigInt>;

/// Node budget for exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    pub fn unlimited() -> Self {
        Budget { limit: u64::MAX }
    }
}

impl Default for Budget {
    fn default() -> Self {
        // generous desk-scale default
        Budget { limit: 200_000_000 }
    }
}

struct NodeCounter {
    visited: u64,
    limit: u64,
}

impl NodeCounter {
    fn tick(&mut self) -> bool {
        self.visited += 1;
        self.visited <= self.limit
    }
}

/// Exact binomial coefficient; 0 when b > a.
pub fn binom_exact(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let mut r = BigUint::one();
    for i in 0..b.min(a - b) {
        r = r * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    r
}

/// Log-space binomial with a real upper argument: Σ ln((a−i)/(i+1)).
/// Returns 0.0 for b = 0 and −∞ when a < b.
pub fn binom_log(a: f64, b: u64) -> f64 {
    if b == 0 {
        return 0.0;
    }
    if a < b as f64 {
        return f64::NEG_INFINITY;
    }
    let mut acc = 0.0;
    for i in 0..b {
        acc += (a - i as f64).ln() - ((i + 1) as f64).ln();
    }
    acc
}

/// Degeneracy order: repeatedly remove a minimum-degree vertex (ties by
/// index); tends to shrink the branching tree of the counting DFS.
fn degeneracy_order(graph: &DenseGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut alive = BitSet::full(n);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = alive
            .iter()
            .min_by_key(|&v| (graph.degree_in(v, &alive), v))
            .unwrap();
        order.push(v);
        alive.remove(v);
    }
    order
}

/// Exact number of independent sets of size `m` by backtracking over the
/// degeneracy order with remaining-capacity pruning.
pub fn count_independent_sets(graph: &DenseGraph, m: usize, budget: Budget) -> Result<BigUint> {
    let n = graph.vertex_count();
    if m > n {
        return Ok(BigUint::zero());
    }
    if m == 0 {
        return Ok(BigUint::one());
    }
    let order = degeneracy_order(graph);
    // rank-indexed adjacency: adj[i] = ranks of neighbors of order[i]
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut adj: Vec<BitSet> = vec![BitSet::new(n); n];
    for (i, &v) in order.iter().enumerate() {
        for u in graph.neighbors(v).iter() {
            adj[i].insert(rank[u]);
        }
    }
    let mut counter = NodeCounter {
        visited: 0,
        limit: budget.limit,
    };
    let mut total = BigUint::zero();
    let cands = BitSet::full(n);
    count_is_rec(&adj, &cands, 0, m, &mut total, &mut counter)?;
    Ok(total)
}

fn count_is_rec(
    adj: &[BitSet],
    cands: &BitSet,
    from: usize,
    need: usize,
    total: &mut BigUint,
    counter: &mut NodeCounter,
) -> Result<()> {
    if need == 0 {
        *total += BigUint::one();
        return Ok(());
    }
    let _ = adj;
    let avail: Vec<usize> = cands.iter().filter(|&v| v >= from).collect();
    if avail.len() < need {
        return Ok(());
    }
    for (pos, &v) in avail.iter().enumerate() {
        if avail.len() - pos < need {
            break;
        }
        if !counter.tick() {
            return Err(Error::BudgetExhausted {
                visited: counter.visited,
                partial: total.clone(),
            });
        }
        let mut next = cands.clone();
        next.subtract(&adj[v]);
        count_is_rec(adj, &next, v + 1, need - 1, total, counter)?;
    }
    Ok(())
}

/// Exact independence number by branch and bound (≤ 64 vertices).
pub fn independence_number(graph: &DenseGraph) -> Result<usize> {
    let n = graph.vertex_count();
    if n > 64 {
        return Err(Error::domain("independence number limited to 64 vertices"));
    }
    let mut best = 0;
    let cands = BitSet::full(n);
    alpha_rec(graph, &cands, 0, 0, &mut best);
    Ok(best)
}

fn alpha_rec(graph: &DenseGraph, cands: &BitSet, from: usize, picked: usize, best: &mut usize) {
    let avail: Vec<usize> = cands.iter().filter(|&v| v >= from).collect();
    if picked + avail.len() <= *best {
        return;
    }
    if avail.is_empty() {
        *best = (*best).max(picked);
        return;
    }
    for (pos, &v) in avail.iter().enumerate() {
        if picked + avail.len() - pos <= *best {
            break;
        }
        let mut next = cands.clone();
        next.subtract(graph.neighbors(v));
        alpha_rec(graph, &next, v + 1, picked + 1, best);
    }
    *best = (*best).max(picked);
}

/// Which closure notion the sum-free counter uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// (A + A) ∩ A = ∅, repeats allowed.
    GroupSense,
    /// No Schur edge {x,y,z} of three distinct elements inside A.
    HypergraphSense,
}

/// Can `v` extend `a` while keeping the invariant of `mode`?
fn extends(group: &GroupSpec, a: &BitSet, members: &[usize], v: usize, mode: CountMode) -> bool {
    match mode {
        CountMode::GroupSense => {
            let vv = group.add(v, v);
            if vv == v || a.contains(vv) {
                return false; // v+v hits the set (or v itself: only v = 0)
            }
            for &x in members {
                // x+v lands in A ∪ {v}, or v is a sum of two members
                let s = group.add(x, v);
                if s == v || a.contains(s) {
                    return false;
                }
                if a.contains(group.sub(v, x)) {
                    return false;
                }
            }
            true
        }
        CountMode::HypergraphSense => {
            for &x in members {
                // candidate third vertices completing {x, v} to an edge
                for w in [group.add(x, v), group.sub(v, x), group.sub(x, v)] {
                    if w != x && w != v && a.contains(w) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Counts of sum-free (or hypergraph-independent) subsets, per size, via a
/// DFS that only ever extends a valid set by larger elements. Each valid
/// set is one DFS node.
pub fn count_sum_free_by_size(
    group: &GroupSpec,
    mode: CountMode,
    budget: Budget,
) -> Result<Vec<BigUint>> {
    count_sum_free_by_size_permuted(group, mode, budget, None)
}

/// Same DFS under a permuted extension order; with `Some(perm)` element
/// `perm[r]` has rank r. An independent route to the same counts.
pub fn count_sum_free_by_size_permuted(
    group: &GroupSpec,
    mode: CountMode,
    budget: Budget,
    perm: Option<&[usize]>,
) -> Result<Vec<BigUint>> {
    let n = group.order_usize();
    if let Some(p) = perm {
        if p.len() != n {
            return Err(Error::domain("permutation length must equal the group order"));
        }
    }
    let elem_at = |rank: usize| perm.map_or(rank, |p| p[rank]);
    let mut counts = vec![BigUint::zero(); n + 1];
    counts[0] = BigUint::one();
    let mut counter = NodeCounter {
        visited: 0,
        limit: budget.limit,
    };
    let mut a = BitSet::new(n);
    let mut members: Vec<usize> = Vec::new();

    fn rec(
        group: &GroupSpec,
        mode: CountMode,
        elem_at: &dyn Fn(usize) -> usize,
        n: usize,
        from_rank: usize,
        a: &mut BitSet,
        members: &mut Vec<usize>,
        counts: &mut [BigUint],
        counter: &mut NodeCounter,
    ) -> Result<()> {
        for r in from_rank..n {
            let v = elem_at(r);
            if extends(group, a, members, v, mode) {
                if !counter.tick() {
                    return Err(Error::BudgetExhausted {
                        visited: counter.visited,
                        partial: counts.iter().sum(),
                    });
                }
                a.insert(v);
                members.push(v);
                counts[members.len()] += BigUint::one();
                rec(group, mode, elem_at, n, r + 1, a, members, counts, counter)?;
                members.pop();
                a.remove(v);
            }
        }
        Ok(())
    }

    rec(
        group,
        mode,
        &elem_at,
        n,
        0,
        &mut a,
        &mut members,
        &mut counts,
        &mut counter,
    )?;
    Ok(counts)
}

/// Exact |SF(G, m)| (or its hypergraph-sense analogue).
pub fn count_sum_free(group: &GroupSpec, m: usize, mode: CountMode, budget: Budget) -> Result<BigUint> {
    let counts = count_sum_free_by_size(group, mode, budget)?;
    Ok(counts.get(m).cloned().unwrap_or_else(BigUint::zero))
}

/// All sum-free sets of maximum size, found by search alone (no structure
/// theorem): the independent oracle for the SF₀ construction.
pub fn max_sum_free_sets_by_search(group: &GroupSpec, budget: Budget) -> Result<Vec<BitSet>> {
    let n = group.order_usize();
    let mut best: Vec<BitSet> = vec![BitSet::new(n)];
    let mut counter = NodeCounter {
        visited: 0,
        limit: budget.limit,
    };
    let mut a = BitSet::new(n);
    let mut members = Vec::new();

    fn rec(
        group: &GroupSpec,
        n: usize,
        from: usize,
        a: &mut BitSet,
        members: &mut Vec<usize>,
        best: &mut Vec<BitSet>,
        counter: &mut NodeCounter,
    ) -> Result<()> {
        for v in from..n {
            if extends(group, a, members, v, CountMode::GroupSense) {
                if !counter.tick() {
                    return Err(Error::BudgetExhausted {
                        visited: counter.visited,
                        partial: BigUint::from(best.len()),
                    });
                }
                a.insert(v);
                members.push(v);
                match members.len().cmp(&best[0].len()) {
                    std::cmp::Ordering::Greater => {
                        best.clear();
                        best.push(a.clone());
                    }
                    std::cmp::Ordering::Equal => best.push(a.clone()),
                    std::cmp::Ordering::Less => {}
                }
                rec(group, n, v + 1, a, members, best, counter)?;
                members.pop();
                a.remove(v);
            }
        }
        Ok(())
    }

    rec(group, n, 0, &mut a, &mut members, &mut best, &mut counter)?;
    best.sort();
    Ok(best)
}

/// Janson's μ and Δ for a family of subsets and a uniformly random m-set:
/// μ = Σ (m/n)^{|U_i|}, Δ = Σ over ordered intersecting pairs i ≠ j of
/// (m/n)^{|U_i ∪ U_j|}.
#[derive(Clone, Debug, Serialize)]
pub struct JansonStats {
    pub mu: f64,
    pub delta_sum: f64,
    pub family_size: usize,
    pub m: u64,
    pub n: u64,
}

pub fn janson_stats(family: &[BitSet], m: u64, n: u64) -> JansonStats {
    let p = m as f64 / n as f64;
    let mu: f64 = family.iter().map(|u| p.powi(u.len() as i32)).sum();
    let mut delta = 0.0;
    for i in 0..family.len() {
        for j in 0..family.len() {
            if i != j && family[i].intersection_len(&family[j]) > 0 {
                let union = family[i].len() + family[j].len()
                    - family[i].intersection_len(&family[j]);
                delta += p.powi(union as i32);
            }
        }
    }
    JansonStats {
        mu,
        delta_sum: delta,
        family_size: family.len(),
        m,
        n,
    }
}

/// Exact rational (μ, Δ).
pub fn janson_stats_exact(family: &[BitSet], m: u64, n: u64) -> (BigRational, BigRational) {
    let p = BigRational::new(BigInt::from(m), BigInt::from(n));
    let pow = |e: usize| -> BigRational {
        let mut r = BigRational::one();
        for _ in 0..e {
            r *= p.clone();
        }
        r
    };
    let mut mu = BigRational::zero();
    for u in family {
        mu += pow(u.len());
    }
    let mut delta = BigRational::zero();
    for i in 0..family.len() {
        for j in 0..family.len() {
            if i != j && family[i].intersection_len(&family[j]) > 0 {
                let union =
                    family[i].len() + family[j].len() - family[i].intersection_len(&family[j]);
                delta += pow(union);
            }
        }
    }
    (mu, delta)
}

#[derive(Clone, Copy, Debug)]
pub enum PittelConstant {
    /// The always-valid 3√m transfer factor.
    SqrtM,
    /// An abstract constant, for bound exploration only (never asserted).
    AbstractC(f64),
}

#[derive(Clone, Debug, Serialize)]
pub struct JansonBounds {
    /// e^{−μ+Δ/2}, the product-measure Janson bound.
    pub product_bound: f64,
    /// max{e^{−μ/2}, e^{−μ²/(2Δ)}}; the e^{−μ/2} branch when Δ = 0.
    pub max_form: f64,
    pub transfer_factor: f64,
    /// transfer_factor · product_bound, comparable to the exact m-set
    /// probability.
    pub transferred_product: f64,
}

pub fn janson_bounds(stats: &JansonStats, mode: PittelConstant) -> JansonBounds {
    let product_bound = (-stats.mu + stats.delta_sum / 2.0).exp().min(1.0);
    let max_form = if stats.delta_sum == 0.0 {
        (-stats.mu / 2.0).exp()
    } else {
        (-stats.mu / 2.0)
            .exp()
            .max((-stats.mu * stats.mu / (2.0 * stats.delta_sum)).exp())
    };
    let transfer_factor = match mode {
        PittelConstant::SqrtM => 3.0 * (stats.m as f64).sqrt(),
        PittelConstant::AbstractC(c) => c,
    };
    JansonBounds {
        product_bound,
        max_form,
        transfer_factor,
        transferred_product: transfer_factor * product_bound,
    }
}

/// Exact P(no U_i ⊆ R) for a uniform m-subset R of [n], by enumerating
/// all C(n, m) subsets (guarded to 10^7).
pub fn exact_no_ui_probability(family: &[BitSet], m: u64, n: u64) -> Result<BigRational> {
    if n > 63 {
        return Err(Error::domain("exact enumeration limited to n ≤ 63"));
    }
    let total = binom_exact(n, m);
    if total > BigUint::from(10_000_000u64) {
        return Err(Error::domain(format!(
            "C({n},{m}) exceeds the 10^7 enumeration budget"
        )));
    }
    if m > n {
        return Ok(BigRational::one());
    }
    let masks: Vec<u64> = family
        .iter()
        .map(|u| u.iter().fold(0u64, |acc, v| acc | 1 << v))
        .collect();
    let mut good: u64 = 0;
    if m == 0 {
        good = if masks.iter().any(|&u| u == 0) { 0 } else { 1 };
    } else {
        // Gosper's hack over m-subsets of [n]
        let mut mask: u64 = (1 << m) - 1;
        let limit: u64 = 1 << n;
        while mask < limit {
            if masks.iter().all(|&u| u & !mask != 0) {
                good += 1;
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    let denom: BigInt = total.into();
    Ok(BigRational::new(BigInt::from(good), denom))
}

/// log C(⌊(λ/(d+λ)+ε)n⌋, m): the smallest-eigenvalue bound on I(G, m).
#[derive(Clone, Debug, Serialize)]
pub struct GraphsBoundRecord {
    pub cap_real: f64,
    pub cap_floored: u64,
    pub m: u64,
    /// −∞ when m exceeds the floored cap (the bound is 0).
    pub log_value: f64,
}

pub fn thm_graphs_bound(n: u64, d: f64, lambda: f64, eps: f64, m: u64) -> Result<GraphsBoundRecord> {
    if d <= 0.0 || lambda <= 0.0 || eps < 0.0 {
        return Err(Error::domain("need d > 0, λ > 0, ε ≥ 0"));
    }
    let cap_real = (lambda / (d + lambda) + eps) * n as f64;
    let cap_floored = cap_real.floor().max(0.0) as u64;
    let log_value = if m > cap_floored {
        f64::NEG_INFINITY
    } else {
        binom_log(cap_floored as f64, m)
    };
    Ok(GraphsBoundRecord {
        cap_real,
        cap_floored,
        m,
        log_value,
    })
}

/// log of (emd²/(4λ n log n))^{2(n/d) log n} · C(⌊2λn/d⌋, m), valid only
/// under the hypothesis m ≥ 2(n/d)·log n.
#[derive(Clone, Debug, Serialize)]
pub struct AlonRodlRecord {
    pub applicable: bool,
    pub hypothesis_threshold: f64,
    pub cap_floored: u64,
    pub log_value: f64,
}

pub fn alon_rodl_bound(n: u64, d: f64, lambda: f64, m: u64) -> Result<AlonRodlRecord> {
    if n < 3 || d <= 0.0 || lambda <= 0.0 {
        return Err(Error::domain("need n ≥ 3, d > 0, λ > 0"));
    }
    let nf = n as f64;
    let threshold = 2.0 * (nf / d) * nf.ln();
    if (m as f64) < threshold {
        return Ok(AlonRodlRecord {
            applicable: false,
            hypothesis_threshold: threshold,
            cap_floored: 0,
            log_value: f64::NAN,
        });
    }
    let exponent = 2.0 * (nf / d) * nf.ln();
    let base = std::f64::consts::E * m as f64 * d * d / (4.0 * lambda * nf * nf.ln());
    let cap = (2.0 * lambda * nf / d).floor().max(0.0) as u64;
    let log_value = exponent * base.ln() + binom_log(cap as f64, m);
    Ok(AlonRodlRecord {
        applicable: true,
        hypothesis_threshold: threshold,
        cap_floored: cap,
        log_value,
    })
}

/// The counting prediction from the enumerated extremal family: a leading
/// term |SF₀|·C(μn, m) and the Bonferroni sandwich on the union of the
/// per-member subset families, S1 − S2 ≤ |∪_B C(B,m)| ≤ S1.
#[derive(Clone, Debug, Serialize)]
pub struct PredictionRecord {
    pub q: u64,
    pub family_size: u64,
    pub mu_n: u64,
    pub m: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub leading: BigUint,
    #[serde(serialize_with = "ser_bigint")]
    pub lower_bonferroni: BigInt,
    #[serde(serialize_with = "ser_biguint")]
    pub upper_bonferroni: BigUint,
    /// log of (n/2)(μn − 3m)^{m−1}/(m−1)!, the sharpness remark for small
    /// m; absent when μn ≤ 3m or m = 0.
    pub lower_remark_log: Option<f64>,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn sf_count_prediction(group: &GroupSpec, m: u64) -> Result<PredictionRecord> {
    let q = group
        .smallest_type_i_prime()
        .ok_or(Error::NotTypeI { order: group.order() })?;
    let family = enumerate_sf0(group)?;
    let mu_n = mu_times_order(group)?;

    let per_member = binom_exact(mu_n, m);
    let leading = BigUint::from(family.len()) * &per_member;
    let mut s2 = BigUint::zero();
    for i in 0..family.sets.len() {
        for j in i + 1..family.sets.len() {
            let inter = family.sets[i].intersection_len(&family.sets[j]) as u64;
            s2 += binom_exact(inter, m);
        }
    }
    let lower = BigInt::from(leading.clone()) - BigInt::from(s2);
    let lower_remark_log = (m >= 1 && mu_n as f64 > 3.0 * m as f64).then(|| {
        let n = group.order() as f64;
        (n / 2.0).ln() + (m as f64 - 1.0) * (mu_n as f64 - 3.0 * m as f64).ln()
            - (1..m).map(|i| (i as f64).ln()).sum::<f64>()
    });
    Ok(PredictionRecord {
        q,
        family_size: family.len() as u64,
        mu_n,
        m,
        leading: leading.clone(),
        lower_bonferroni: lower,
        upper_bonferroni: leading,
        lower_remark_log,
    })
}
