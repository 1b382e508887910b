//! Simple undirected graphs stored as packed adjacency bit rows.
//!
//! Vertices are dense `0..n` indices. Each row holds `ceil(n / 64)` words, so
//! graphs with at most 64 vertices have one machine word per neighbourhood and
//! the combinatorial engines work directly on `u64` masks.

use std::fmt;

use crate::{Error, Result};

/// An edge `(u, v)`; graph methods always report it with `u < v`.
pub type Edge = (usize, usize);

/// Largest order accepted by constructors and the graph6 decoder.
pub const MAX_ORDER: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_ORDER, "order {n} exceeds MAX_ORDER");
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    /// Builds a graph from an edge list, rejecting loops, out-of-range
    /// endpoints and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = Edge>,
    {
        if n > MAX_ORDER {
            return Err(Error::ResourceLimit(format!(
                "order {n} exceeds {MAX_ORDER}"
            )));
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for order {n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::invalid(format!("repeated edge ({u},{v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.rows
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// # Panics
    /// On loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        assert_ne!(u, v, "loop at vertex {u}");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    /// Neighbourhood of `v` as packed words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbourhood of `v` as a single mask; only valid when `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[v]
    }

    /// Mask of all vertices; only valid when `n <= 64`.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        debug_assert!(self.n <= 64);
        low_bits(self.n)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Minimum degree; `0` for the graph without vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits_of_words(self.row(v))
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let mut h = Graph::empty(self.n);
        for u in 0..self.n {
            for (i, w) in h.rows[u * self.words..(u + 1) * self.words]
                .iter_mut()
                .enumerate()
            {
                let valid = word_mask(self.n, i);
                *w = !self.rows[u * self.words + i] & valid;
            }
            h.rows[u * self.words + u / 64] &= !(1 << (u % 64));
        }
        h
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut h = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            h.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            h.add_edge(self.n + u, self.n + v);
        }
        h
    }

    /// Join: disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut h = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                h.add_edge(u, self.n + v);
            }
        }
        h
    }

    /// `G - S`. The second value maps each new vertex to its old index; the
    /// relative order of surviving vertices is preserved.
    pub fn induced_delete(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !s.contains(v)).collect();
        (self.induced(&keep), keep)
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut h = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    h.add_edge(i, j);
                }
            }
        }
        h
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut h = Graph::empty(self.n);
        for (u, v) in self.edges() {
            h.add_edge(perm[u], perm[v]);
        }
        h
    }

    /// Connected components ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            comp.insert(start);
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if comp.insert(v) {
                        stack.push(v);
                    }
                }
            }
            seen.extend(comp.iter());
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Cut edges in lexicographic order.
    pub fn bridges(&self) -> Vec<Edge> {
        // iterative lowlink DFS
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            // (vertex, parent, neighbour list, cursor)
            let mut stack: Vec<(usize, usize, Vec<usize>, usize)> =
                vec![(root, usize::MAX, self.neighbors(root).collect(), 0)];
            while let Some(top) = stack.last_mut() {
                let (u, parent) = (top.0, top.1);
                if top.3 < top.2.len() {
                    let v = top.2[top.3];
                    top.3 += 1;
                    if v == parent {
                        continue;
                    }
                    if disc[v] == usize::MAX {
                        disc[v] = time;
                        low[v] = time;
                        time += 1;
                        stack.push((v, u, self.neighbors(v).collect(), 0));
                    } else {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = stack.last() {
                        let p = p.0;
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            out.push((p.min(u), p.max(u)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|u| s.iter().all(|v| !self.has_edge(u, v)))
    }

    /// `e(V1, V2)`: edges with one endpoint in each of two disjoint sets.
    pub fn cross_edges(&self, v1: &VertexSet, v2: &VertexSet) -> Result<usize> {
        if !v1.is_disjoint(v2) {
            return Err(Error::invalid("cross_edges requires disjoint vertex sets"));
        }
        self.check_set(v1)?;
        self.check_set(v2)?;
        Ok(v1
            .iter()
            .map(|u| v2.iter().filter(|&v| self.has_edge(u, v)).count())
            .sum())
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.last() {
            Some(m) if m >= self.n => Err(Error::invalid(format!(
                "vertex {m} out of range for order {}",
                self.n
            ))),
            _ => Ok(()),
        }
    }

    pub(crate) fn require_mask_width(&self, what: &str) -> Result<()> {
        if self.n > 64 {
            return Err(Error::ResourceLimit(format!(
                "{what} supports at most 64 vertices, got {}",
                self.n
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", crate::graph6::encode(self))
    }
}

/// Mask with the lowest `n` bits set (`n <= 64`).
#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn word_mask(n: usize, word: usize) -> u64 {
    let lo = word * 64;
    if n >= lo + 64 {
        u64::MAX
    } else {
        low_bits(n - lo)
    }
}

fn bits_of_words(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words
        .iter()
        .enumerate()
        .flat_map(|(i, &w)| MaskIter(w).map(move |b| i * 64 + b))
}

/// Iterates set bits of a mask in increasing order.
#[derive(Clone, Copy)]
pub(crate) struct MaskIter(pub u64);

impl Iterator for MaskIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// Components of the subgraph induced by `allowed`, in order of smallest
/// member. Requires `n <= 64`.
pub(crate) struct MaskComponents<'a> {
    g: &'a Graph,
    allowed: u64,
    rest: u64,
}

pub(crate) fn mask_components(g: &Graph, allowed: u64) -> MaskComponents<'_> {
    MaskComponents {
        g,
        allowed,
        rest: allowed,
    }
}

impl Iterator for MaskComponents<'_> {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        if self.rest == 0 {
            return None;
        }
        let start = 1u64 << self.rest.trailing_zeros();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.g.mask(u) & self.allowed & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        self.rest &= !comp;
        Some(comp)
    }
}

/// Number of edges between two disjoint masks.
#[inline]
pub(crate) fn mask_cross_edges(g: &Graph, x: u64, y: u64) -> usize {
    MaskIter(x)
        .map(|v| (g.mask(v) & y).count_ones() as usize)
        .sum()
}

/// For a connected mask `comp`, the two sides `(C1, C2)` of `comp - e` for
/// every cut edge `e` of `G[comp]`.
pub(crate) fn mask_bridge_splits(g: &Graph, comp: u64) -> Vec<(u64, u64)> {
    // only spanning-tree edges can be bridges
    let start = comp.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut queue = vec![start];
    let mut tree = Vec::new();
    while let Some(u) = queue.pop() {
        for v in MaskIter(g.mask(u) & comp & !seen) {
            seen |= 1 << v;
            tree.push((u, v));
            queue.push(v);
        }
    }
    let mut out = Vec::new();
    for (u, v) in tree {
        let mut side = 1u64 << u;
        let mut frontier = side;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let mut nb = g.mask(x) & comp & !side;
            if x == u {
                nb &= !(1 << v);
            }
            if x == v {
                nb &= !(1 << u);
            }
            side |= nb;
            frontier |= nb;
        }
        if side >> v & 1 == 0 {
            out.push((side, comp & !side));
        }
    }
    out
}

/// A set of vertex indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> VertexSet {
        VertexSet::default()
    }

    pub fn from_mask(mask: u64) -> VertexSet {
        let mut s = VertexSet { words: vec![mask] };
        s.trim();
        s
    }

    /// The set as one mask, if every member is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Inserts `v`, returning whether it was absent.
    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        let present = self.contains(v);
        if present {
            self.words[w] &= !(1 << b);
            self.trim();
        }
        present
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w >> (v % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        let w = self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        bits_of_words(&self.words)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        s.extend(iter);
        s
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for v in iter {
            self.insert(v);
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    /// Comma-separated members, e.g. `0,1,5`; empty sets print as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Named graph families used throughout the engines and the harness.
pub mod families {
    use super::Graph;
    use crate::{Error, Result};

    /// `H(n, gamma)`: an `(n-1)`-clique plus one vertex adjacent to exactly
    /// `gamma - 1` clique vertices.
    ///
    /// Labeling: the `gamma - 1` attachment vertices are `0..gamma-1`, the
    /// remaining clique block follows, and the low-degree vertex is `n - 1`.
    pub fn h_graph(n: usize, gamma: usize) -> Result<Graph> {
        if gamma < 1 || gamma > n {
            return Err(Error::invalid(format!(
                "H(n, gamma) needs 1 <= gamma <= n, got n={n} gamma={gamma}"
            )));
        }
        let mut g = Graph::complete(n - 1).disjoint_union(&Graph::empty(1));
        for v in 0..gamma - 1 {
            g.add_edge(v, n - 1);
        }
        Ok(g)
    }

    /// Parts of `H(n, gamma)` that make an equitable partition: the
    /// attachment clique, the rest of the clique, and the extra vertex.
    /// Empty parts are omitted.
    pub fn h_partition(n: usize, gamma: usize) -> Vec<super::VertexSet> {
        let parts = [0..gamma - 1, gamma - 1..n - 1, n - 1..n];
        parts
            .into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.collect())
            .collect()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// `K_{1,k}` with the centre at vertex 0.
    pub fn star(k: usize) -> Graph {
        Graph::empty(1).join(&Graph::empty(k))
    }

    pub fn complete_bipartite(p: usize, q: usize) -> Graph {
        Graph::empty(p).join(&Graph::empty(q))
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn h_graph_counts() {
        let h = h_graph(6, 3).unwrap();
        assert_eq!(h.size(), 12);
        assert_eq!(h.min_degree(), 2);

        let h = h_graph(5, 1).unwrap();
        assert_eq!(h.degree(4), 0);
        assert_eq!(h.components().len(), 2);

        let h = h_graph(10, 2).unwrap();
        assert_eq!(h.size(), 37);
        let c = h.complement();
        // star K_{1,8} centred on the pendant vertex, plus the isolated attachment vertex
        assert_eq!(c.size(), 8);
        assert_eq!(c.degree(9), 8);
        assert_eq!(c.degree(0), 0);

        assert!(h_graph(4, 0).is_err());
        assert!(h_graph(4, 5).is_err());
        assert_eq!(h_graph(5, 5).unwrap(), Graph::complete(5));
    }

    #[test]
    fn h_degree_sequence() {
        for n in 3..12 {
            for gamma in 2..n {
                let h = h_graph(n, gamma).unwrap();
                let mut d = h.degrees();
                d.sort_unstable();
                let mut want = vec![gamma - 1];
                want.extend(std::iter::repeat_n(n - 2, n - gamma));
                want.extend(std::iter::repeat_n(n - 1, gamma - 1));
                want.sort_unstable();
                assert_eq!(d, want, "H({n},{gamma})");
            }
        }
    }

    #[test]
    fn joins_and_unions() {
        let k2 = Graph::complete(2);
        let h = k2.join(&Graph::complete(3).disjoint_union(&Graph::empty(1)));
        assert_eq!(h, h_graph(6, 3).unwrap());
        assert_eq!(Graph::complete(5).complement(), Graph::empty(5));
        assert_eq!(Graph::complete(3).join(&Graph::empty(3)).size(), 12);
    }

    #[test]
    fn components_and_bridges() {
        let g = Graph::complete(3).disjoint_union(&Graph::empty(1));
        let sizes: Vec<usize> = g.components().iter().map(VertexSet::len).collect();
        assert_eq!(sizes, vec![3, 1]);
        assert_eq!(Graph::complete(6).components().len(), 1);
        assert_eq!(Graph::empty(4).components().len(), 4);
        assert_eq!(Graph::empty(0).components().len(), 0);

        assert_eq!(path(3).bridges(), vec![(0, 1), (1, 2)]);
        assert!(cycle(4).bridges().is_empty());
        assert_eq!(h_graph(9, 2).unwrap().bridges(), vec![(0, 8)]);
    }

    #[test]
    fn set_queries() {
        let h = h_graph(6, 3).unwrap();
        let k2: VertexSet = [0, 1].into_iter().collect();
        let pendant: VertexSet = [5].into_iter().collect();
        let k3: VertexSet = [2, 3, 4].into_iter().collect();
        assert!(!h.is_independent(&k2));
        assert!(h.is_independent(&pendant));
        assert_eq!(h.cross_edges(&pendant, &k3).unwrap(), 0);
        assert_eq!(h.cross_edges(&k2, &k3).unwrap(), 6);
        assert!(h.cross_edges(&k2, &k2).is_err());
        for n in 4..9 {
            for a in 1..n {
                assert_eq!(h_graph(n, a).unwrap().min_degree(), a - 1);
            }
        }
    }

    #[test]
    fn induced_delete_keeps_order() {
        let g = cycle(5);
        let s: VertexSet = [1].into_iter().collect();
        let (h, map) = g.induced_delete(&s);
        assert_eq!(map, vec![0, 2, 3, 4]);
        assert_eq!(h, path(4).relabel(&[1, 2, 3, 0]));
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new();
        assert!(s.insert(70));
        assert!(!s.insert(70));
        s.insert(3);
        assert_eq!(s.len(), 2);
        assert_eq!(s.last(), Some(70));
        assert_eq!(s.to_mask(), None);
        assert!(s.remove(70));
        assert_eq!(s.to_mask(), Some(8));
        assert_eq!(s.to_string(), "3");
        assert_eq!(VertexSet::new().to_string(), "-");
        assert_eq!(VertexSet::from_mask(0), VertexSet::new());
    }

    #[test]
    fn large_orders_use_multiword_rows() {
        let g = Graph::complete(130);
        assert_eq!(g.size(), 130 * 129 / 2);
        assert_eq!(g.degree(129), 129);
        assert_eq!(g.complement().size(), 0);
        let p = path(100);
        assert_eq!(p.bridges().len(), 99);
    }

    #[test]
    fn petersen_is_cubic() {
        let p = petersen();
        assert_eq!(p.size(), 15);
        assert!(p.degrees().iter().all(|&d| d == 3));
    }
}
