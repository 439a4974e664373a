//! Cayley spectra via characters, a dense Jacobi eigensolver as the
//! independent oracle, the Alon–Chung edge-count lower bound, random
//! regular blow-ups of complete graphs, and the eigenvalue lemmas used to
//! classify sum-free sets by spectral data.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::hypergraph::DenseGraph;
use crate::par;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpectrumSource {
    CharacterAnalytic,
    DenseSolver,
}

/// Eigenvalues sorted in descending order.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub source: SpectrumSource,
}

impl Spectrum {
    pub fn top(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn bottom(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// CSV export `index,eigenvalue`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,eigenvalue\n");
        for (i, ev) in self.eigenvalues.iter().enumerate() {
            s.push_str(&format!("{i},{ev}\n"));
        }
        s
    }

    pub fn max_abs_deviation(&self, other: &Spectrum) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn sort_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

/// λ(S) = min over characters χ of Re Σ_{s∈S} χ(s); always ≥ −|S|.
pub fn lambda_s(group: &GroupSpec, s: &BitSet) -> Result<f64> {
    if s.contains(0) {
        return Err(Error::domain("lambda(S) requires 0 ∉ S"));
    }
    let n = group.order_usize();
    let members = s.to_vec();
    let mut best = f64::INFINITY;
    for a in 0..n {
        let re: f64 = members
            .iter()
            .map(|&x| group.character_value(a, x).re)
            .sum();
        best = best.min(re);
    }
    if members.is_empty() {
        best = 0.0;
    }
    Ok(best)
}

/// λ(I,χ_a) = Re Σ_{x∈I} χ_a(x).
pub fn lambda_i_chi(group: &GroupSpec, i_set: &BitSet, a: usize) -> f64 {
    i_set
        .iter()
        .map(|x| group.character_value(a, x).re)
        .sum()
}

/// λ(I) = min over characters of λ(I,χ); unlike [`lambda_s`] the set may
/// be arbitrary (used on candidate sum-free sets, which never contain 0).
pub fn lambda_min_over_characters(group: &GroupSpec, i_set: &BitSet) -> f64 {
    (0..group.order_usize())
        .map(|a| lambda_i_chi(group, i_set, a))
        .fold(f64::INFINITY, f64::min)
}

/// Spectrum of the Cayley adjacency by character sums. With `symmetrized`
/// the eigenvalues of A(S ∪ (−S)) (all real); otherwise the real parts of
/// the directed A(S) eigenvalues.
pub fn cayley_spectrum_analytic(
    group: &GroupSpec,
    s: &BitSet,
    symmetrized: bool,
) -> Result<Spectrum> {
    if s.contains(0) {
        return Err(Error::domain("Cayley set must not contain 0"));
    }
    let n = group.order_usize();
    let mut gens = s.clone();
    if symmetrized {
        for x in s.to_vec() {
            gens.insert(group.neg(x));
        }
    }
    let members = gens.to_vec();
    let eigenvalues: Vec<f64> = (0..n)
        .map(|a| {
            members
                .iter()
                .map(|&x| group.character_value(a, x).re)
                .sum()
        })
        .collect();
    Ok(Spectrum {
        eigenvalues: sort_desc(eigenvalues),
        source: SpectrumSource::CharacterAnalytic,
    })
}

/// All eigenvalues of the adjacency matrix by cyclic Jacobi rotations,
/// iterated until the off-diagonal Frobenius norm drops below 1e−12.
/// Guarded to ≤ 512 vertices.
pub fn dense_symmetric_spectrum(graph: &DenseGraph) -> Result<Spectrum> {
    let n = graph.vertex_count();
    if n > 512 {
        return Err(Error::domain(format!(
            "dense solver is limited to 512 vertices, got {n}"
        )));
    }
    if n == 0 {
        return Err(Error::domain("empty graph"));
    }
    let mut a = vec![vec![0.0f64; n]; n];
    for u in 0..n {
        for v in graph.neighbors(u).iter() {
            a[u][v] = 1.0;
        }
    }
    let eigenvalues = jacobi_eigenvalues(&mut a)?;
    Ok(Spectrum {
        eigenvalues: sort_desc(eigenvalues),
        source: SpectrumSource::DenseSolver,
    })
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p][q] * a[p][q];
        }
    }
    (2.0 * s).sqrt()
}

/// Classic cyclic Jacobi sweep on a symmetric matrix (in place).
fn jacobi_eigenvalues(a: &mut [Vec<f64>]) -> Result<Vec<f64>> {
    let n = a.len();
    if n == 1 {
        return Ok(vec![a[0][0]]);
    }
    const TOL: f64 = 1e-12;
    const MAX_SWEEPS: usize = 200;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(a) < TOL {
            return Ok((0..n).map(|i| a[i][i]).collect());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                // tan of the rotation angle, the root smaller in magnitude
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let (app, aqq) = (a[p][p], a[q][q]);
                a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let (arp, arq) = (a[r][p], a[r][q]);
                        a[r][p] = c * arp - s * arq;
                        a[p][r] = a[r][p];
                        a[r][q] = s * arp + c * arq;
                        a[q][r] = a[r][q];
                    }
                }
            }
        }
    }
    Err(Error::domain("Jacobi iteration failed to converge"))
}

/// 2e(A) − [(d/n)|A|² + (λ/n)|A|(n−|A|)]; nonnegative (within −1e−9) for
/// every vertex subset of a d-regular graph.
pub fn alon_chung_slack(graph: &DenseGraph, a: &BitSet) -> Result<f64> {
    let lambda_min = dense_symmetric_spectrum(graph)?.bottom();
    alon_chung_slack_with(graph, a, lambda_min)
}

/// Same as [`alon_chung_slack`] but with the smallest eigenvalue supplied,
/// for scans that amortize one diagonalization over many subsets.
pub fn alon_chung_slack_with(graph: &DenseGraph, a: &BitSet, lambda_min: f64) -> Result<f64> {
    let d = graph
        .regular_degree
        .ok_or_else(|| Error::domain("Alon–Chung needs a regular graph"))?;
    let n = graph.vertex_count() as f64;
    let size = a.len() as f64;
    let twice_edges = 2.0 * graph.edge_count_in(a) as f64;
    Ok(twice_edges - (d as f64 / n) * size * size - (lambda_min / n) * size * (n - size))
}

/// Minimum Alon–Chung slack over all 2^n subsets (n ≤ 24 guard).
pub fn alon_chung_min_slack(graph: &DenseGraph) -> Result<f64> {
    let n = graph.vertex_count();
    if n > 24 {
        return Err(Error::domain("exhaustive subset scan limited to 24 vertices"));
    }
    let d = graph
        .regular_degree
        .ok_or_else(|| Error::domain("Alon–Chung needs a regular graph"))? as f64;
    let lambda_min = dense_symmetric_spectrum(graph)?.bottom();
    let nf = n as f64;
    let rows: Vec<u64> = (0..n)
        .map(|v| {
            graph
                .neighbors(v)
                .iter()
                .fold(0u64, |acc, u| acc | 1u64 << u)
        })
        .collect();
    let min = par::map_reduce(
        0..1u64 << n,
        f64::INFINITY,
        |mask| {
            let size = mask.count_ones() as f64;
            let mut twice_edges = 0u32;
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                twice_edges += (rows[v] & mask).count_ones();
            }
            twice_edges as f64 - (d / nf) * size * size - (lambda_min / nf) * size * (nf - size)
        },
        f64::min,
    );
    Ok(min)
}

/// Blow-up of K_{t+1}: t+1 parts of `part_size` vertices; every pair of
/// parts is joined by a random (d/t)-regular bipartite graph built as a
/// union of d/t random perfect matchings, resampled until simple.
pub fn blowup_graph(t: usize, part_size: usize, d: usize, seed: u64) -> Result<DenseGraph> {
    if t < 1 {
        return Err(Error::domain("blow-up needs t ≥ 1"));
    }
    if d == 0 || d % t != 0 {
        return Err(Error::domain(format!("t = {t} must divide d = {d}")));
    }
    let per_pair = d / t;
    if per_pair > part_size {
        return Err(Error::domain(format!(
            "d/t = {per_pair} exceeds the part size {part_size}"
        )));
    }
    let n = (t + 1) * part_size;
    let mut g = DenseGraph::new(n);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for p in 0..=t {
        for q in p + 1..=t {
            // union of per_pair pairwise-disjoint random matchings
            let mut perms: Vec<Vec<usize>> = Vec::new();
            let mut attempts = 0;
            while perms.len() < per_pair {
                let mut perm: Vec<usize> = (0..part_size).collect();
                perm.shuffle(&mut rng);
                let simple = perms
                    .iter()
                    .all(|prev| (0..part_size).all(|i| prev[i] != perm[i]));
                if simple {
                    perms.push(perm);
                } else {
                    attempts += 1;
                    if attempts > 1000 {
                        // reshuffle the whole pair from scratch
                        perms.clear();
                        attempts = 0;
                    }
                }
            }
            for perm in &perms {
                for i in 0..part_size {
                    g.add_edge(p * part_size + i, q * part_size + perm[i]);
                }
            }
        }
    }
    match g.verify_regular() {
        Some(deg) if deg == d => Ok(g),
        other => Err(Error::assertion(format!(
            "blow-up regularity check failed: got {other:?}, expected {d}"
        ))),
    }
}

/// Concentration of χ_a over `i_set` in open arcs of length π/3.
#[derive(Clone, Debug, Serialize)]
pub struct ArcReport {
    pub best_center: f64,
    pub mass: usize,
    pub k: usize,
    /// largest |K_ζ| over the candidate centers (≤ n/3 by the root-count
    /// bound)
    pub max_k_zeta: usize,
}

const ARC_HALF_WIDTH: f64 = PI / 6.0;

fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Maximum over arc centers of |{x ∈ I : χ_a(x) in the open arc}|. The
/// candidate centers are midpoints between consecutive critical angles
/// (root angle ± π/6), at most 2k distinct positions. Arcs are open:
/// points at exact distance π/6 from the center are excluded.
pub fn arc_concentration(group: &GroupSpec, i_set: &BitSet, a: usize) -> Result<ArcReport> {
    let n = group.order_usize();
    if a == 0 || a >= n {
        return Err(Error::domain("arc concentration needs a nontrivial character"));
    }
    let k = group.element_order(a) as usize;

    let angles: Vec<f64> = i_set
        .iter()
        .map(|x| group.character_value(a, x).arg().rem_euclid(TAU))
        .collect();
    // the image of a surjective character onto U_k is all of U_k
    let mut criticals: Vec<f64> = (0..k)
        .flat_map(|j| {
            let root = TAU * j as f64 / k as f64;
            [
                (root - ARC_HALF_WIDTH).rem_euclid(TAU),
                (root + ARC_HALF_WIDTH).rem_euclid(TAU),
            ]
        })
        .collect();
    criticals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    criticals.dedup_by(|x, y| (*x - *y).abs() < 1e-9);

    let centers: Vec<f64> = (0..criticals.len())
        .map(|i| {
            let lo = criticals[i];
            let hi = if i + 1 < criticals.len() {
                criticals[i + 1]
            } else {
                criticals[0] + TAU
            };
            ((lo + hi) / 2.0).rem_euclid(TAU)
        })
        .collect();

    let mut best_center = 0.0;
    let mut mass = 0usize;
    let mut max_k_zeta = 0usize;
    for &c in &centers {
        let count = angles
            .iter()
            .filter(|&&ang| circle_dist(ang, c) < ARC_HALF_WIDTH - 1e-12)
            .count();
        let k_zeta = (0..k)
            .filter(|&j| circle_dist(TAU * j as f64 / k as f64, c) < ARC_HALF_WIDTH - 1e-12)
            .count()
            * (n / k);
        max_k_zeta = max_k_zeta.max(k_zeta);
        if count > mass {
            mass = count;
            best_center = c;
        }
    }
    Ok(ArcReport {
        best_center,
        mass,
        k,
        max_k_zeta,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Case2Report {
    /// max arc mass ≤ (1−c)|I| over every center, as required
    pub precondition_ok: bool,
    pub lambda_abs: f64,
    pub bound: f64,
    pub holds: bool,
}

/// If no open π/3 arc captures more than (1−c)|I| of the character values
/// over I, then |λ(I,χ)| ≤ (1 − c + c·cos(π/6))·|I| (within 1e−9).
pub fn eq_case2_bound(group: &GroupSpec, i_set: &BitSet, a: usize, c: f64) -> Result<Case2Report> {
    let report = arc_concentration(group, i_set, a)?;
    let size = i_set.len() as f64;
    let precondition_ok = (report.mass as f64) <= (1.0 - c) * size + 1e-9;
    let lambda_abs = lambda_i_chi(group, i_set, a).abs();
    let bound = (1.0 - c + c * (PI / 6.0).cos()) * size;
    Ok(Case2Report {
        precondition_ok,
        lambda_abs,
        bound,
        holds: lambda_abs <= bound + 1e-9,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub selected: Option<Vec<usize>>,
    pub trials: u64,
    pub successes: u64,
    pub subset_size: usize,
}

/// Sample size-⌈ε|I|⌉ subsets S ⊆ I uniformly, looking for one with
/// λ(S) ≥ (δ/2 − 1)|S|. The returned set is the first success in trial
/// order; an absent result after all trials is a legitimate outcome.
pub fn sample_s_for_lambda(
    group: &GroupSpec,
    i_set: &BitSet,
    eps: f64,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<SampleReport> {
    let members = i_set.to_vec();
    let size = (eps * members.len() as f64).ceil() as usize;
    if size == 0 || size > members.len() {
        return Err(Error::domain("subset size ⌈ε|I|⌉ must be in 1..=|I|"));
    }
    let n = group.order_usize();
    let threshold = (delta / 2.0 - 1.0) * size as f64;
    let (first, successes) = par::first_success_by_index(trials, |t| {
        let mut rng = ChaCha12Rng::seed_from_u64(par::derive_seed(seed, t));
        let mut pick = members.clone();
        pick.shuffle(&mut rng);
        pick.truncate(size);
        pick.sort_unstable();
        let s = BitSet::from_indices(n, &pick);
        let lam = lambda_s(group, &s).ok()?;
        (lam >= threshold - 1e-12).then_some(pick)
    });
    Ok(SampleReport {
        selected: first.map(|(_, s)| s),
        trials,
        successes,
        subset_size: size,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuSReport {
    pub lambda_s: f64,
    pub lambda_neg_diff: f64,
    pub lambda_symmetrized: f64,
    pub sym_size: usize,
    pub precondition_ok: bool,
    pub bound: f64,
    pub conclusion_holds: bool,
    /// λ(S∪(−S)) − (λ(S) + λ((−S)∖S)) ≥ 0; zero iff the minima are
    /// attained at a common character.
    pub identity_residual: f64,
}

/// λ(G*_S) = λ(S ∪ (−S)) check: given λ(S) ≥ (δ−1)|S|, the symmetrized
/// eigenvalue is at least (δ/2 − 1)|S ∪ (−S)|.
pub fn lemma_sus_check(group: &GroupSpec, s: &BitSet, delta: f64) -> Result<SuSReport> {
    if s.contains(0) {
        return Err(Error::domain("Cayley set must not contain 0"));
    }
    let n = group.order_usize();
    let lam_s = lambda_s(group, s)?;
    let mut sym = s.clone();
    let mut neg_diff = BitSet::new(n);
    for x in s.to_vec() {
        let nx = group.neg(x);
        sym.insert(nx);
        if !s.contains(nx) {
            neg_diff.insert(nx);
        }
    }
    let lam_diff = lambda_s(group, &neg_diff)?;
    let lam_sym = lambda_s(group, &sym)?;
    let precondition_ok = lam_s >= (delta - 1.0) * s.len() as f64 - 1e-9;
    let bound = (delta / 2.0 - 1.0) * sym.len() as f64;
    Ok(SuSReport {
        lambda_s: lam_s,
        lambda_neg_diff: lam_diff,
        lambda_symmetrized: lam_sym,
        sym_size: sym.len(),
        precondition_ok,
        bound,
        conclusion_holds: lam_sym >= bound - 1e-9,
        identity_residual: lam_sym - (lam_s + lam_diff),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SfClass {
    /// |I ∩ H| ≤ δ|I| for some index-2 subgroup H.
    Below,
    /// |I ∩ H| ≥ δ|I| for every index-2 subgroup (vacuous for odd order).
    Above,
}

/// Classify I by its minimum intersection with index-2 subgroups. The
/// boundary |I ∩ H| = δ|I| classifies as Below.
pub fn classify_sf(group: &GroupSpec, i_set: &BitSet, delta: f64) -> SfClass {
    let subs = group.index_two_subgroups();
    let size = i_set.len() as f64;
    for h in &subs {
        if (i_set.intersection_len(h) as f64) <= delta * size {
            return SfClass::Below;
        }
    }
    SfClass::Above
}
