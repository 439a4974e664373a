//! Maximum-size sum-free families SF₀(G) for Type I groups, built from
//! homomorphism preimages of the middle interval of Z_q, plus the
//! δ(H,B) statistic and a desk-scale stability profiler.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::hypergraph::SchurHypergraph;
use num::rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

/// The family SF₀(G) of maximum-size sum-free sets, deduplicated and in
/// canonical (lexicographic) order.
#[derive(Clone, Debug)]
pub struct MaxSumFreeFamily {
    pub group: GroupSpec,
    pub sets: Vec<BitSet>,
    pub member_size: usize,
}

impl MaxSumFreeFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// One sorted index list per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.sets {
            let row: Vec<String> = b.iter().map(|i| i.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// μ(G) = (q+1)/(3q) for a Type I(q) group, as an exact rational.
pub fn mu(group: &GroupSpec) -> Result<Ratio<u64>> {
    let q = group
        .smallest_type_i_prime()
        .ok_or(Error::NotTypeI { order: group.order() })?;
    Ok(Ratio::new(q + 1, 3 * q))
}

/// μ(G)·|G|, which is an integer for every Type I group.
pub fn mu_times_order(group: &GroupSpec) -> Result<u64> {
    let m = mu(group)? * Ratio::from_integer(group.order());
    debug_assert!(m.is_integer());
    Ok(m.to_integer())
}

/// Enumerate SF₀(G) via the structure theorem: every maximum-size sum-free
/// set is φ⁻¹({k+1,…,2k+1}) for a surjective homomorphism φ: G → Z_q,
/// q = 3k+2. Each member is re-verified sum-free of size μ(G)|G|.
pub fn enumerate_sf0(group: &GroupSpec) -> Result<MaxSumFreeFamily> {
    let q = group
        .smallest_type_i_prime()
        .ok_or(Error::NotTypeI { order: group.order() })?;
    let k = (q - 2) / 3;
    let targets: Vec<u64> = (k + 1..=2 * k + 1).collect();
    let n = group.order_usize();
    let expected_size = mu_times_order(group)? as usize;

    let mut dedup = std::collections::BTreeSet::new();
    for phi in group.surjective_homs_to_zq(q)? {
        let b = BitSet::from_indices(n, &phi.preimage(group, &targets));
        dedup.insert(b);
    }
    let sets: Vec<BitSet> = dedup.into_iter().collect();

    let h = SchurHypergraph::new(group.clone());
    for b in &sets {
        if b.len() != expected_size {
            return Err(Error::assertion(format!(
                "SF0 member of {} has size {}, expected {}",
                group.display_name(),
                b.len(),
                expected_size
            )));
        }
        if !h.is_sum_free(b) {
            return Err(Error::assertion(format!(
                "SF0 member of {} is not sum-free",
                group.display_name()
            )));
        }
    }
    Ok(MaxSumFreeFamily {
        group: group.clone(),
        sets,
        member_size: expected_size,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CardinalityReport {
    pub q: u64,
    pub family_size: u64,
    pub expected_from_order_count: u64,
    pub order_q_elements: u64,
    pub law_holds: bool,
    pub at_most_group_order: bool,
}

/// |SF₀(G)| = (#order-q)/2 for odd q, #order-2 for q = 2; and ≤ |G|.
pub fn sf0_cardinality_check(group: &GroupSpec) -> Result<CardinalityReport> {
    let q = group
        .smallest_type_i_prime()
        .ok_or(Error::NotTypeI { order: group.order() })?;
    let family = enumerate_sf0(group)?;
    let order_q = group.count_elements_of_order(q);
    let expected = if q == 2 { order_q } else { order_q / 2 };
    let report = CardinalityReport {
        q,
        family_size: family.len() as u64,
        expected_from_order_count: expected,
        order_q_elements: order_q,
        law_holds: family.len() as u64 == expected,
        at_most_group_order: family.len() as u64 <= group.order(),
    };
    if !report.law_holds || !report.at_most_group_order {
        return Err(Error::assertion(format!(
            "SF0 cardinality law fails for {}: {report:?}",
            group.display_name()
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub pairs_checked: u64,
    pub max_intersection: u64,
    /// (1 − 1/q)·μ(G)·|G|
    pub bound: f64,
    pub bound_holds: bool,
    /// For q = 2: every distinct pair meets in exactly |G|/4 elements.
    pub q2_exact_quarter: Option<bool>,
}

/// Pairwise intersections of family members against the paper's ceiling.
pub fn pairwise_intersection_check(family: &MaxSumFreeFamily) -> Result<IntersectionReport> {
    let group = &family.group;
    let q = group
        .smallest_type_i_prime()
        .ok_or(Error::NotTypeI { order: group.order() })?;
    let n = group.order();
    let mu_n = mu_times_order(group)? as f64;
    let bound = (1.0 - 1.0 / q as f64) * mu_n;

    let mut max_int = 0u64;
    let mut pairs = 0u64;
    let mut q2_exact = true;
    for i in 0..family.sets.len() {
        for j in i + 1..family.sets.len() {
            let inter = family.sets[i].intersection_len(&family.sets[j]) as u64;
            max_int = max_int.max(inter);
            pairs += 1;
            if q == 2 && inter * 4 != n {
                q2_exact = false;
            }
        }
    }
    let report = IntersectionReport {
        pairs_checked: pairs,
        max_intersection: max_int,
        bound,
        bound_holds: pairs == 0 || (max_int as f64) <= bound,
        q2_exact_quarter: (q == 2 && pairs > 0).then_some(q2_exact),
    };
    if !report.bound_holds || report.q2_exact_quarter == Some(false) {
        return Err(Error::assertion(format!(
            "intersection law fails for {}: {report:?}",
            group.display_name()
        )));
    }
    Ok(report)
}

/// δ(H,B) = min over v ∉ B of the number of edges meeting B in exactly two
/// vertices and containing v. Rejects B = V(H).
pub fn delta_h_b(h: &SchurHypergraph, b: &BitSet) -> Result<u64> {
    let n = h.vertex_count();
    if b.len() >= n {
        return Err(Error::domain("delta(H,B) needs B to be a proper subset"));
    }
    let mut best = u64::MAX;
    for v in 0..n {
        if !b.contains(v) {
            best = best.min(h.degree_within(v, b));
        }
    }
    Ok(best)
}

/// Min of δ(H,B) over the family members.
pub fn delta_h_family(h: &SchurHypergraph, family: &MaxSumFreeFamily) -> Result<u64> {
    let mut best = u64::MAX;
    for b in &family.sets {
        best = best.min(delta_h_b(h, b)?);
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub size: usize,
    pub schur_count: u64,
    pub min_distance: usize,
}

#[derive(Clone, Debug)]
pub struct StabilityProfile {
    pub rows: Vec<ProfileRow>,
    /// Rows minimal in (schur_count asc) and maximal in (min_distance):
    /// the extremes that constrain any stability witness (β, γ).
    pub frontier: Vec<ProfileRow>,
    pub group_order: u64,
    pub hypergraph_edges: u64,
}

#[derive(Clone, Copy, Debug)]
pub enum ScanMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

impl StabilityProfile {
    /// CSV with header `size,schur_count,min_distance`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,schur_count,min_distance\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.size, r.schur_count, r.min_distance));
        }
        out
    }

    /// Does (β, γ) witness the stability dichotomy on the scanned rows?
    /// Fails iff some row has few edges (< β·e(H)) yet large distance
    /// (> γ·n).
    pub fn witness_holds(&self, beta: f64, gamma: f64) -> bool {
        let n = self.group_order as f64;
        let e = self.hypergraph_edges as f64;
        self.frontier
            .iter()
            .all(|r| (r.schur_count as f64) >= beta * e || (r.min_distance as f64) <= gamma * n)
    }

    /// Largest β (over the scanned rows) that works for the given γ.
    pub fn max_beta_for_gamma(&self, gamma: f64) -> f64 {
        let n = self.group_order as f64;
        let e = self.hypergraph_edges as f64;
        let mut beta = f64::INFINITY;
        for r in &self.frontier {
            if (r.min_distance as f64) > gamma * n {
                beta = beta.min(r.schur_count as f64 / e);
            }
        }
        beta
    }
}

/// Scan subsets A with |A| ≥ min_size_fraction·|G| and record, per subset,
/// (|A|, e(H[A]), min_B |A ∖ B|). Exhaustive mode is guarded to |G| ≤ 16.
pub fn stability_profile(
    group: &GroupSpec,
    h: &SchurHypergraph,
    min_size_fraction: f64,
    mode: ScanMode,
) -> Result<StabilityProfile> {
    let family = enumerate_sf0(group)?;
    let n = group.order_usize();
    let min_size = (min_size_fraction * n as f64).ceil() as usize;
    let edge_count = h.edge_count();

    let row_of = |a: &BitSet| -> ProfileRow {
        let dist = family
            .sets
            .iter()
            .map(|b| a.difference_len(b))
            .min()
            .unwrap_or(a.len());
        ProfileRow {
            size: a.len(),
            schur_count: h.schur_triple_count(a),
            min_distance: dist,
        }
    };

    let mut rows = Vec::new();
    match mode {
        ScanMode::Exhaustive => {
            if n > 16 {
                return Err(Error::domain(format!(
                    "exhaustive stability scan is limited to |G| ≤ 16, got {n}"
                )));
            }
            for mask in 0u32..1u32 << n {
                if (mask.count_ones() as usize) < min_size {
                    continue;
                }
                let mut a = BitSet::new(n);
                for v in 0..n {
                    if mask >> v & 1 == 1 {
                        a.insert(v);
                    }
                }
                rows.push(row_of(&a));
            }
        }
        ScanMode::Sample { count, seed } => {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let all: Vec<usize> = (0..n).collect();
            for _ in 0..count {
                let size = rng.gen_range(min_size.max(1)..=n);
                let mut pick = all.clone();
                pick.shuffle(&mut rng);
                pick.truncate(size);
                rows.push(row_of(&BitSet::from_indices(n, &pick)));
            }
        }
    }

    let frontier = pareto_frontier(&rows);
    Ok(StabilityProfile {
        rows,
        frontier,
        group_order: group.order(),
        hypergraph_edges: edge_count,
    })
}

/// Non-dominated rows for (schur_count min, min_distance max).
fn pareto_frontier(rows: &[ProfileRow]) -> Vec<ProfileRow> {
    let mut pts: Vec<ProfileRow> = rows.to_vec();
    pts.sort_by(|a, b| {
        a.schur_count
            .cmp(&b.schur_count)
            .then(b.min_distance.cmp(&a.min_distance))
    });
    pts.dedup_by(|a, b| a.schur_count == b.schur_count && a.min_distance == b.min_distance);
    let mut out: Vec<ProfileRow> = Vec::new();
    let mut best_dist: Option<usize> = None;
    let mut i = 0;
    while i < pts.len() {
        // within one schur_count value only the max-distance row can survive
        let schur = pts[i].schur_count;
        let candidate = pts[i];
        while i < pts.len() && pts[i].schur_count == schur {
            i += 1;
        }
        if best_dist.is_none_or(|d| candidate.min_distance > d) {
            out.push(candidate);
            best_dist = Some(candidate.min_distance);
        }
    }
    out
}
