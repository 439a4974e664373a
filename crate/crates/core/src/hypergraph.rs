//! The 3-uniform Schur-triple hypergraph of a group and its derived
//! dense graphs (link graphs and Cayley graphs).
//!
//! Edges are kept implicit: every query runs on group arithmetic. An edge
//! is a 3-element set {x,y,z} admitting a labelling with x + y = z. The
//! degenerate triples (x,x,2x) are excluded by default; with
//! `include_degenerate` they are modelled as extra size-1/size-2 edges,
//! which makes hypergraph independence coincide with sum-freeness.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::GroupSpec;

#[derive(Clone, Debug)]
pub struct SchurHypergraph {
    pub group: GroupSpec,
    pub include_degenerate: bool,
}

/// Degree statistics of a hypergraph.
#[derive(Clone, Debug)]
pub struct HypergraphStats {
    pub edge_count: u64,
    pub delta2: u64,
    pub degrees: Vec<u64>,
}

/// Vertex set convention for the Cayley graph G*_S.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexMode {
    /// All of G; the graph is |S ∪ (−S)|-regular.
    Full,
    /// G ∖ S, as in the paper's definition.
    ExcludeS,
}

impl SchurHypergraph {
    pub fn new(group: GroupSpec) -> Self {
        SchurHypergraph {
            group,
            include_degenerate: false,
        }
    }

    pub fn with_degenerate(group: GroupSpec) -> Self {
        SchurHypergraph {
            group,
            include_degenerate: true,
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.group.order_usize()
    }

    /// The candidate third vertices completing {u,v} to a Schur edge:
    /// u+v, u−v and v−u, each valid only if distinct from u and v.
    #[inline]
    fn third_candidates(&self, u: usize, v: usize) -> [usize; 3] {
        [
            self.group.add(u, v),
            self.group.sub(u, v),
            self.group.sub(v, u),
        ]
    }

    /// Is {x,y,z} (3 distinct vertices) an edge?
    pub fn is_edge(&self, x: usize, y: usize, z: usize) -> bool {
        if x == y || y == z || x == z {
            return false;
        }
        self.group.add(x, y) == z || self.group.add(x, z) == y || self.group.add(y, z) == x
    }

    /// True iff (A + A) ∩ A = ∅ (x = y allowed).
    pub fn is_sum_free(&self, set: &BitSet) -> bool {
        let members = set.to_vec();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i..] {
                if set.contains(self.group.add(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff no edge of the hypergraph lies inside `set`. Sum-free
    /// implies independent; the converse fails unless degenerate triples
    /// are included.
    pub fn is_independent(&self, set: &BitSet) -> bool {
        let members = set.to_vec();
        for (i, &x) in members.iter().enumerate() {
            if self.include_degenerate {
                // (x,x,2x): forbids {x,2x} inside the set, and {0} itself
                let two_x = self.group.add(x, x);
                if set.contains(two_x) && (two_x != x || x == 0) {
                    return false;
                }
                if two_x == x && x == 0 {
                    return false;
                }
            }
            for &y in &members[i + 1..] {
                let z = self.group.add(x, y);
                if z != x && z != y && set.contains(z) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact number of distinct 3-edges inside `set`.
    ///
    /// A pair {x,y} generates the edge {x,y,x+y}; an edge may be generated
    /// by up to three of its pairs, so each edge is charged to its
    /// lexicographically first generating pair.
    pub fn schur_triple_count(&self, set: &BitSet) -> u64 {
        let members = set.to_vec();
        let mut count = 0u64;
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                let z = self.group.add(x, y);
                if z != x && z != y && set.contains(z) {
                    let mut e = [x, y, z];
                    e.sort_unstable();
                    if self.first_generating_pair(e) == (x, y) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// First pair (in lexicographic order on sorted-edge pairs) whose sum
    /// is the remaining vertex.
    fn first_generating_pair(&self, e: [usize; 3]) -> (usize, usize) {
        let [a, b, c] = e;
        if self.group.add(a, b) == c {
            (a, b)
        } else if self.group.add(a, c) == b {
            (a, c)
        } else {
            debug_assert_eq!(self.group.add(b, c), a);
            (b, c)
        }
    }

    /// e(H): distinct edges over the whole vertex set.
    pub fn edge_count(&self) -> u64 {
        self.schur_triple_count(&BitSet::full(self.vertex_count()))
    }

    /// All distinct edges, as sorted triples in lexicographic order.
    pub fn edges(&self) -> Vec<[usize; 3]> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let z = self.group.add(x, y);
                if z != x && z != y {
                    let mut e = [x, y, z];
                    e.sort_unstable();
                    if self.first_generating_pair(e) == (x, y) {
                        out.push(e);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Co-degree of the pair {u,v}: the number of distinct edges containing
    /// both.
    pub fn codegree(&self, u: usize, v: usize) -> u64 {
        debug_assert_ne!(u, v);
        let cands = self.third_candidates(u, v);
        let mut seen = [usize::MAX; 3];
        let mut count = 0u64;
        for (i, &z) in cands.iter().enumerate() {
            if z != u && z != v && !seen[..i].contains(&z) {
                count += 1;
            }
            seen[i] = z;
        }
        count
    }

    /// Δ₂(H) = max over vertex pairs of the co-degree. At most 3 for Schur
    /// hypergraphs without degenerate edges.
    pub fn delta2(&self) -> u64 {
        let n = self.vertex_count();
        let mut best = 0;
        for u in 0..n {
            for v in u + 1..n {
                best = best.max(self.codegree(u, v));
            }
        }
        best
    }

    /// Number of distinct edges containing `v` with both other vertices in
    /// `within` (v itself need not be in `within`).
    pub fn degree_within(&self, v: usize, within: &BitSet) -> u64 {
        let n = self.vertex_count();
        let mut count = 0u64;
        for y in 0..n {
            if y == v || !within.contains(y) {
                continue;
            }
            let cands = self.third_candidates(v, y);
            let mut seen = [usize::MAX; 3];
            for (i, &z) in cands.iter().enumerate() {
                if z > y && z != v && within.contains(z) && !seen[..i].contains(&z) {
                    count += 1;
                }
                seen[i] = z;
            }
        }
        count
    }

    pub fn stats(&self) -> HypergraphStats {
        let n = self.vertex_count();
        let full = BitSet::full(n);
        let degrees: Vec<u64> = (0..n).map(|v| self.degree_within(v, &full)).collect();
        HypergraphStats {
            edge_count: self.edge_count(),
            delta2: self.delta2(),
            degrees,
        }
    }

    /// The link graph G_T restricted to `a`: vertices are the members of
    /// `a` (in index order), u ~ v iff {u,v,w} is an edge for some w ∈ T.
    pub fn link_graph(&self, t: &BitSet, a: &BitSet) -> DenseGraph {
        let full = self.link_graph_full(t);
        full.induced(a)
    }

    /// G_T on the full vertex set; the encoding algorithms intersect with
    /// the current available set dynamically.
    pub fn link_graph_full(&self, t: &BitSet) -> DenseGraph {
        let n = self.vertex_count();
        let mut g = DenseGraph::new(n);
        for w in t.iter() {
            for x in 0..n {
                // pairs {x, w−x} with x + (w−x) = w, and {x, x+w} with x + w = x+w
                let y1 = self.group.sub(w, x);
                if x != y1 && y1 != w && x != w {
                    g.add_edge(x, y1);
                }
                let y2 = self.group.add(x, w);
                if x != y2 && y2 != w && x != w {
                    g.add_edge(x, y2);
                }
            }
        }
        g
    }

    /// e(G_z[a]) without materializing the graph.
    pub fn link_edge_count(&self, z: usize, a: &BitSet) -> u64 {
        let mut count = 0u64;
        for x in a.iter() {
            if x == z {
                continue;
            }
            let cands = self.third_candidates(z, x);
            let mut seen = [usize::MAX; 3];
            for (i, &y) in cands.iter().enumerate() {
                if y > x && y != z && a.contains(y) && !seen[..i].contains(&y) {
                    count += 1;
                }
                seen[i] = y;
            }
        }
        count
    }
}

/// The Cayley graph G*_S: x ~ y iff x − y ∈ S ∪ (−S). Rejects 0 ∈ S.
pub fn cayley_graph_star(group: &GroupSpec, s: &BitSet, mode: VertexMode) -> Result<DenseGraph> {
    if s.contains(0) {
        return Err(Error::domain("Cayley set must not contain 0"));
    }
    let n = group.order_usize();
    let mut sym = s.clone();
    for x in s.iter() {
        sym.insert(group.neg(x));
    }
    let mut g = DenseGraph::new(n);
    for x in 0..n {
        for d in sym.iter() {
            g.add_edge(x, group.add(x, d));
        }
    }
    g.labels = Some((0..n).collect());
    match mode {
        VertexMode::Full => {
            g.regular_degree = Some(sym.len());
            Ok(g)
        }
        VertexMode::ExcludeS => {
            let mut keep = BitSet::full(n);
            keep.subtract(s);
            Ok(g.induced(&keep))
        }
    }
}

/// Dense undirected graph with bit-vector adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    rows: Vec<BitSet>,
    /// Original labels when the graph is an induced/derived object
    /// (e.g. group element indices); `None` means vertices are their own
    /// labels.
    pub labels: Option<Vec<usize>>,
    /// Set when the construction guarantees d-regularity.
    pub regular_degree: Option<usize>,
}

impl std::fmt::Debug for DenseGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseGraph(n={}, e={})", self.n, self.edge_count())
    }
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        DenseGraph {
            n,
            rows: vec![BitSet::new(n); n],
            labels: None,
            regular_degree: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = DenseGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    #[inline]
    pub fn degree_in(&self, v: usize, mask: &BitSet) -> usize {
        self.rows[v].intersection_len(mask)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = (0..self.n).map(|v| self.degree(v) as u64).sum();
        total / 2
    }

    /// Number of edges with both endpoints in `mask`.
    pub fn edge_count_in(&self, mask: &BitSet) -> u64 {
        let total: u64 = mask.iter().map(|v| self.degree_in(v, mask) as u64).sum();
        total / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Is `set` independent (no edge inside)?
    pub fn is_independent(&self, set: &BitSet) -> bool {
        set.iter().all(|v| self.rows[v].intersection_len(set) == 0)
    }

    /// Induced subgraph on the members of `mask` (kept in index order).
    /// Labels are composed so they always refer to the original vertices.
    pub fn induced(&self, mask: &BitSet) -> DenseGraph {
        let verts = mask.to_vec();
        let mut g = DenseGraph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g.labels = Some(match &self.labels {
            Some(l) => verts.iter().map(|&v| l[v]).collect(),
            None => verts,
        });
        g
    }

    /// Edge-list text export: one `u v` pair per line, ascending.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Verify d-regularity exactly and tag the graph with it.
    pub fn verify_regular(&mut self) -> Option<usize> {
        let d = self.degree(0);
        if (0..self.n).all(|v| self.degree(v) == d) {
            self.regular_degree = Some(d);
            Some(d)
        } else {
            self.regular_degree = None;
            None
        }
    }

    /// Cycle graph C_n.
    pub fn cycle(n: usize) -> Self {
        let mut g = DenseGraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g.regular_degree = (n > 2).then_some(2);
        g
    }

    /// Path on n vertices.
    pub fn path(n: usize) -> Self {
        let mut g = DenseGraph::new(n);
        for i in 0..n.saturating_sub(1) {
            g.add_edge(i, i + 1);
        }
        g
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = DenseGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g.regular_degree = Some(n.saturating_sub(1));
        g
    }

    /// Complete bipartite K_{a,b}; sides are 0..a and a..a+b.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = DenseGraph::new(a + b);
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v);
            }
        }
        if a == b {
            g.regular_degree = Some(a);
        }
        g
    }

    /// Circulant graph on Z_n with connection set ±gens.
    pub fn circulant(n: usize, gens: &[usize]) -> Self {
        let mut g = DenseGraph::new(n);
        for i in 0..n {
            for &s in gens {
                g.add_edge(i, (i + s) % n);
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = BitSet::new(self.n);
        let mut stack = vec![0usize];
        seen.insert(0);
        while let Some(v) = stack.pop() {
            for u in self.rows[v].iter() {
                if !seen.contains(u) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen.len() == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn z(spec: &str) -> GroupSpec {
        GroupSpec::parse(spec).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> BitSet {
        BitSet::from_indices(n, xs)
    }

    #[test]
    fn sum_free_examples() {
        let h = SchurHypergraph::new(z("Z6"));
        assert!(h.is_sum_free(&set(6, &[1, 3, 5])));
        let h5 = SchurHypergraph::new(z("Z5"));
        assert!(h5.is_sum_free(&set(5, &[2, 3])));
        assert!(h5.is_sum_free(&set(5, &[])));
        assert!(!h5.is_sum_free(&set(5, &[1, 2, 3])));
        // 0 + 0 = 0
        assert!(!h5.is_sum_free(&set(5, &[0])));
    }

    #[test]
    fn independence_examples() {
        let h6 = SchurHypergraph::new(z("Z6"));
        assert!(h6.is_independent(&set(6, &[1, 3, 5])));
        let h4 = SchurHypergraph::new(z("Z4"));
        // 1+1=2 is degenerate, excluded by default
        assert!(h4.is_independent(&set(4, &[1, 2])));
        assert!(!SchurHypergraph::with_degenerate(z("Z4")).is_independent(&set(4, &[1, 2])));
        let h5 = SchurHypergraph::new(z("Z5"));
        assert!(!h5.is_independent(&set(5, &[1, 2, 3])));
    }

    #[test]
    fn with_degenerate_independence_equals_sum_freeness() {
        for spec in ["Z7", "Z8", "Z3xZ3", "Z12"] {
            let g = z(spec);
            let n = g.order_usize();
            let h = SchurHypergraph::with_degenerate(g);
            let mut rng = ChaCha12Rng::seed_from_u64(11);
            for _ in 0..2000 {
                let mut a = BitSet::new(n);
                for v in 0..n {
                    if rng.gen_bool(0.4) {
                        a.insert(v);
                    }
                }
                assert_eq!(h.is_sum_free(&a), h.is_independent(&a), "{spec} {a:?}");
            }
        }
    }

    #[test]
    fn sum_free_implies_independent() {
        for spec in ["Z11", "Z4xZ4", "Z2xZ3xZ3", "Z40"] {
            let g = z(spec);
            let n = g.order_usize();
            let h = SchurHypergraph::new(g);
            let mut rng = ChaCha12Rng::seed_from_u64(5);
            for _ in 0..10_000 {
                let mut a = BitSet::new(n);
                for v in 0..n {
                    if rng.gen_bool(0.3) {
                        a.insert(v);
                    }
                }
                if h.is_sum_free(&a) {
                    assert!(h.is_independent(&a));
                }
            }
        }
    }

    /// Brute-force edge set via explicit triple scan, used as the oracle
    /// for the pair-charging enumeration.
    fn edges_by_triple_scan(h: &SchurHypergraph) -> Vec<[usize; 3]> {
        let n = h.vertex_count();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if h.is_edge(a, b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn edge_enumeration_matches_triple_scan() {
        for spec in ["Z5", "Z6", "Z9", "Z2xZ4", "Z3xZ5", "Z16"] {
            let h = SchurHypergraph::new(z(spec));
            assert_eq!(h.edges(), edges_by_triple_scan(&h), "{spec}");
            assert_eq!(h.edge_count() as usize, h.edges().len());
        }
    }

    #[test]
    fn triple_count_examples() {
        let h5 = SchurHypergraph::new(z("Z5"));
        assert_eq!(h5.schur_triple_count(&set(5, &[1, 2, 3])), 1);
        assert_eq!(h5.schur_triple_count(&set(5, &[1, 2])), 0);
        assert_eq!(h5.schur_triple_count(&BitSet::full(5)), h5.edge_count());
    }

    #[test]
    fn delta2_at_most_three_for_all_groups_up_to_60() {
        // every factor list with at most 3 factors and order ≤ 60
        fn rec(cap: u64, min: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if !current.is_empty() {
                out.push(current.clone());
            }
            if current.len() == 3 {
                return;
            }
            let product: u64 = current.iter().product();
            let mut f = min;
            while product * f <= cap {
                current.push(f);
                rec(cap, f, current, out);
                current.pop();
                f += 1;
            }
        }
        let mut lists = Vec::new();
        rec(60, 2, &mut Vec::new(), &mut lists);
        assert!(lists.len() > 100);
        for factors in lists {
            let h = SchurHypergraph::new(GroupSpec::new(factors.clone()).unwrap());
            assert!(h.delta2() <= 3, "{factors:?}: Δ₂ = {}", h.delta2());
        }
        let empty_ish = SchurHypergraph::new(z("Z2"));
        assert_eq!(empty_ish.delta2(), 0);
        assert_eq!(empty_ish.edge_count(), 0);
    }

    #[test]
    fn degree_sum_is_three_times_edges() {
        for spec in ["Z7", "Z2xZ5", "Z12"] {
            let h = SchurHypergraph::new(z(spec));
            let stats = h.stats();
            let degsum: u64 = stats.degrees.iter().sum();
            assert_eq!(degsum, 3 * stats.edge_count, "{spec}");
        }
    }

    #[test]
    fn link_graph_empty_t() {
        let h = SchurHypergraph::new(z("Z5"));
        let g = h.link_graph(&set(5, &[]), &BitSet::full(5));
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn link_graph_matches_edge_definition() {
        for spec in ["Z7", "Z8", "Z2xZ5"] {
            let g = z(spec);
            let n = g.order_usize();
            let h = SchurHypergraph::new(g);
            let mut rng = ChaCha12Rng::seed_from_u64(3);
            for _ in 0..50 {
                let mut t = BitSet::new(n);
                for v in 0..n {
                    if rng.gen_bool(0.3) {
                        t.insert(v);
                    }
                }
                let lg = h.link_graph_full(&t);
                for u in 0..n {
                    for v in u + 1..n {
                        let expected = t.iter().any(|w| h.is_edge(u, v, w));
                        assert_eq!(lg.has_edge(u, v), expected, "{spec} u={u} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn link_degree_bounded_by_t_delta2() {
        for spec in ["Z7", "Z12", "Z3xZ5"] {
            let g = z(spec);
            let n = g.order_usize();
            let h = SchurHypergraph::new(g);
            let d2 = h.delta2() as usize;
            let mut rng = ChaCha12Rng::seed_from_u64(9);
            for _ in 0..100 {
                let mut t = BitSet::new(n);
                for v in 0..n {
                    if rng.gen_bool(0.25) {
                        t.insert(v);
                    }
                }
                let lg = h.link_graph_full(&t);
                assert!(lg.max_degree() <= t.len() * d2, "{spec}");
            }
        }
    }

    #[test]
    fn link_edge_counts_sum_to_three_times_induced_edges() {
        for spec in ["Z7", "Z2xZ5", "Z16", "Z20"] {
            let g = z(spec);
            let n = g.order_usize();
            let h = SchurHypergraph::new(g);
            let mut rng = ChaCha12Rng::seed_from_u64(17);
            for _ in 0..60 {
                let mut a = BitSet::new(n);
                for v in 0..n {
                    if rng.gen_bool(0.5) {
                        a.insert(v);
                    }
                }
                let lhs: u64 = a.iter().map(|zz| h.link_edge_count(zz, &a)).sum();
                assert_eq!(lhs, 3 * h.schur_triple_count(&a), "{spec}");
            }
        }
    }

    #[test]
    fn link_edge_count_matches_materialized_graph() {
        let g = z("Z12");
        let h = SchurHypergraph::new(g);
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..100 {
            let mut a = BitSet::new(12);
            for v in 0..12 {
                if rng.gen_bool(0.6) {
                    a.insert(v);
                }
            }
            for zz in 0..12 {
                let mut t = BitSet::new(12);
                t.insert(zz);
                let lg = h.link_graph_full(&t);
                assert_eq!(h.link_edge_count(zz, &a), lg.edge_count_in(&a));
            }
        }
    }

    #[test]
    fn cayley_star_is_the_cycle_for_s1() {
        let g = cayley_graph_star(&z("Z6"), &set(6, &[1]), VertexMode::Full).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.regular_degree, Some(2));
        for v in 0..6 {
            assert!(g.has_edge(v, (v + 1) % 6));
        }
    }

    #[test]
    fn cayley_star_examples() {
        let g = cayley_graph_star(&z("Z5"), &set(5, &[2, 3]), VertexMode::Full).unwrap();
        assert_eq!(g.regular_degree, Some(2));
        let e = cayley_graph_star(&z("Z5"), &set(5, &[]), VertexMode::Full).unwrap();
        assert_eq!(e.edge_count(), 0);
        assert!(cayley_graph_star(&z("Z5"), &set(5, &[0, 2]), VertexMode::Full).is_err());
    }

    #[test]
    fn cayley_star_all_degrees_equal_sym_size() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        for spec in ["Z9", "Z12", "Z2xZ6"] {
            let g = z(spec);
            let n = g.order_usize();
            for _ in 0..50 {
                let mut s = BitSet::new(n);
                for v in 1..n {
                    if rng.gen_bool(0.3) {
                        s.insert(v);
                    }
                }
                let mut sym = s.clone();
                for x in s.iter() {
                    sym.insert(g.neg(x));
                }
                let graph = cayley_graph_star(&g, &s, VertexMode::Full).unwrap();
                for v in 0..n {
                    assert_eq!(graph.degree(v), sym.len());
                }
            }
        }
    }

    #[test]
    fn exclude_s_mode_drops_s_vertices() {
        let g = z("Z6");
        let s = set(6, &[1]);
        let graph = cayley_graph_star(&g, &s, VertexMode::ExcludeS).unwrap();
        assert_eq!(graph.vertex_count(), 5);
        assert_eq!(graph.labels.as_deref(), Some(&[0, 2, 3, 4, 5][..]));
    }

    #[test]
    fn induced_subgraph_composes_labels() {
        let g = DenseGraph::cycle(6);
        let first = g.induced(&set(6, &[0, 2, 3, 4]));
        let second = first.induced(&set(4, &[1, 2]));
        assert_eq!(second.labels.as_deref(), Some(&[2, 3][..]));
        assert!(second.has_edge(0, 1));
    }

    #[test]
    fn edge_list_export_format() {
        let g = DenseGraph::path(3);
        assert_eq!(g.to_edge_list(), "0 1\n1 2\n");
    }
}
