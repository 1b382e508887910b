//! `(g,f)`-factors and `[a,b]`-factors.
//!
//! Existence is decided two independent ways: [`has_gf_factor`] evaluates the
//! deficiency `f(S) - g(T) + sum_{x in T} d_{G-S}(x) - q(S,T)` over every pair
//! of disjoint sets, and [`find_factor`] runs a branch-and-prune search for an
//! explicit edge set.

use crate::graph::{mask_components, mask_cross_edges, Edge, Graph, MaskIter, VertexSet};
use crate::scan::PairScan;
use crate::{Error, Result};

/// Default order cap for the `3^n` deficiency scan.
pub const DEFAULT_MAX_SCAN_ORDER: usize = 16;
/// Default edge cap for the explicit factor search.
pub const DEFAULT_MAX_SEARCH_EDGES: usize = 64;

/// Per-vertex degree bounds `g(v) <= d_F(v) <= f(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSpec {
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl DegreeSpec {
    pub fn new(lower: Vec<usize>, upper: Vec<usize>) -> Result<DegreeSpec> {
        if lower.len() != upper.len() {
            return Err(Error::invalid(
                "lower and upper bound vectors differ in length",
            ));
        }
        if let Some(v) = (0..lower.len()).find(|&v| lower[v] > upper[v]) {
            return Err(Error::invalid(format!(
                "lower bound {} exceeds upper bound {} at vertex {v}",
                lower[v], upper[v]
            )));
        }
        Ok(DegreeSpec { lower, upper })
    }

    /// `g == a` and `f == b` on all `n` vertices.
    pub fn uniform(n: usize, a: usize, b: usize) -> Result<DegreeSpec> {
        if a > b {
            return Err(Error::invalid(format!("need a <= b, got a={a} b={b}")));
        }
        DegreeSpec::new(vec![a; n], vec![b; n])
    }

    pub fn lower(&self, v: usize) -> usize {
        self.lower[v]
    }

    pub fn upper(&self, v: usize) -> usize {
        self.upper[v]
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.len() != g.order() {
            return Err(Error::invalid(format!(
                "degree spec has length {} but the graph has order {}",
                self.len(),
                g.order()
            )));
        }
        Ok(())
    }

    fn upper_sum(&self, mask: u64) -> i64 {
        MaskIter(mask).map(|v| self.upper[v] as i64).sum()
    }

    fn lower_sum(&self, mask: u64) -> i64 {
        MaskIter(mask).map(|v| self.lower[v] as i64).sum()
    }

    fn tight_mask(&self) -> u64 {
        (0..self.len())
            .filter(|&v| self.lower[v] == self.upper[v])
            .fold(0, |m, v| m | 1 << v)
    }
}

/// A disjoint pair `(S, T)` with negative deficiency, proving that no factor
/// exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyCertificate {
    pub s: VertexSet,
    pub t: VertexSet,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorVerdict {
    Exists,
    Deficient(DeficiencyCertificate),
}

impl FactorVerdict {
    pub fn exists(&self) -> bool {
        matches!(self, FactorVerdict::Exists)
    }

    pub fn certificate(&self) -> Option<&DeficiencyCertificate> {
        match self {
            FactorVerdict::Exists => None,
            FactorVerdict::Deficient(c) => Some(c),
        }
    }
}

/// Edge set of a spanning subgraph meeting the degree bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorWitness {
    pub edges: Vec<Edge>,
}

impl FactorWitness {
    /// Checks that every edge lies in `g` and every degree is within bounds.
    pub fn verify(&self, g: &Graph, spec: &DegreeSpec) -> Result<()> {
        let mut deg = vec![0; g.order()];
        for &(u, v) in &self.edges {
            if u >= g.order() || v >= g.order() || u == v || !g.has_edge(u, v) {
                return Err(Error::InvariantViolation(format!(
                    "factor edge ({u},{v}) is not an edge of the graph"
                )));
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        match (0..g.order()).find(|&v| deg[v] < spec.lower(v) || deg[v] > spec.upper(v)) {
            Some(v) => Err(Error::InvariantViolation(format!(
                "factor degree {} at vertex {v} outside [{}, {}]",
                deg[v],
                spec.lower(v),
                spec.upper(v)
            ))),
            None => Ok(()),
        }
    }
}

fn pair_masks(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<(u64, u64)> {
    g.require_mask_width("deficiency evaluation")?;
    g.check_set(s)?;
    g.check_set(t)?;
    if !s.is_disjoint(t) {
        return Err(Error::invalid("S and T must be disjoint"));
    }
    Ok((s.to_mask().unwrap_or(0), t.to_mask().unwrap_or(0)))
}

/// Components `C` of `G - S - T` with `g == f` on `C` and
/// `f(V(C)) + e_G(V(C), T)` odd.
pub fn q_hat(g: &Graph, spec: &DegreeSpec, s: &VertexSet, t: &VertexSet) -> Result<usize> {
    spec.check(g)?;
    let (s, t) = pair_masks(g, s, t)?;
    Ok(odd_tight_components(g, spec, spec.tight_mask(), s, t))
}

fn odd_tight_components(g: &Graph, spec: &DegreeSpec, tight: u64, s: u64, t: u64) -> usize {
    let rest = g.vertex_mask() & !s & !t;
    mask_components(g, rest)
        .filter(|&c| c & !tight == 0)
        .filter(|&c| (spec.upper_sum(c) + mask_cross_edges(g, c, t) as i64) % 2 == 1)
        .count()
}

/// `f(S) - g(T) + sum_{x in T} d_{G-S}(x) - q_hat(S, T)`.
pub fn lovasz_deficiency(
    g: &Graph,
    spec: &DegreeSpec,
    s: &VertexSet,
    t: &VertexSet,
) -> Result<i64> {
    spec.check(g)?;
    let (s, t) = pair_masks(g, s, t)?;
    let tight = spec.tight_mask();
    Ok(base_deficiency(g, spec, s, t) - odd_tight_components(g, spec, tight, s, t) as i64)
}

#[inline]
fn base_deficiency(g: &Graph, spec: &DegreeSpec, s: u64, t: u64) -> i64 {
    let degree_sum: i64 = MaskIter(t)
        .map(|x| (g.mask(x) & !s).count_ones() as i64)
        .sum();
    spec.upper_sum(s) - spec.lower_sum(t) + degree_sum
}

/// Deficiency scan with the default order cap.
pub fn has_gf_factor(g: &Graph, spec: &DegreeSpec) -> Result<FactorVerdict> {
    has_gf_factor_capped(g, spec, DEFAULT_MAX_SCAN_ORDER)
}

/// Decides `(g,f)`-factor existence by scanning all `3^n` disjoint pairs. A
/// failing verdict carries the first violating pair in scan order.
pub fn has_gf_factor_capped(
    g: &Graph,
    spec: &DegreeSpec,
    max_order: usize,
) -> Result<FactorVerdict> {
    spec.check(g)?;
    let n = g.order();
    if n > max_order.min(64) {
        return Err(Error::ResourceLimit(format!(
            "deficiency scan over order {n} exceeds the cap {max_order}"
        )));
    }
    let tight = spec.tight_mask();
    let all = g.vertex_mask();
    for (s, t) in PairScan::new(n) {
        let base = base_deficiency(g, spec, s, t);
        // q_hat is at most the number of remaining vertices
        if base >= (all & !s & !t).count_ones() as i64 {
            continue;
        }
        let value = base - odd_tight_components(g, spec, tight, s, t) as i64;
        if value < 0 {
            return Ok(FactorVerdict::Deficient(DeficiencyCertificate {
                s: VertexSet::from_mask(s),
                t: VertexSet::from_mask(t),
                value,
            }));
        }
    }
    Ok(FactorVerdict::Exists)
}

/// Explicit factor search with the default edge cap.
pub fn find_factor(
    g: &Graph,
    spec: &DegreeSpec,
    forced: &[Edge],
    forbidden: &[Edge],
) -> Result<Option<FactorWitness>> {
    find_factor_capped(g, spec, forced, forbidden, DEFAULT_MAX_SEARCH_EDGES)
}

/// Branch-and-prune search for a factor containing every `forced` edge and no
/// `forbidden` edge.
///
/// Undecided edges are branched in order of the smaller endpoint slack
/// `d_G(v) - g(v)`, ties broken lexicographically. A branch is cut as soon as
/// some endpoint exceeds `f(v)` or can no longer reach `g(v)`.
pub fn find_factor_capped(
    g: &Graph,
    spec: &DegreeSpec,
    forced: &[Edge],
    forbidden: &[Edge],
    max_edges: usize,
) -> Result<Option<FactorWitness>> {
    spec.check(g)?;
    let n = g.order();
    let norm = |&(u, v): &Edge| (u.min(v), u.max(v));
    let forced: Vec<Edge> = forced.iter().map(norm).collect();
    let forbidden: Vec<Edge> = forbidden.iter().map(norm).collect();
    for &(u, v) in forced.iter().chain(&forbidden) {
        if u >= n || v >= n || u == v || !g.has_edge(u, v) {
            return Err(Error::invalid(format!(
                "({u},{v}) is not an edge of the graph"
            )));
        }
    }
    if let Some(e) = forced.iter().find(|e| forbidden.contains(e)) {
        return Err(Error::invalid(format!(
            "edge {e:?} is both forced and forbidden"
        )));
    }
    if g.size() > max_edges {
        return Err(Error::ResourceLimit(format!(
            "factor search over {} edges exceeds the cap {max_edges}",
            g.size()
        )));
    }

    let mut search = Search {
        lower: (0..n).map(|v| spec.lower(v)).collect(),
        upper: (0..n).map(|v| spec.upper(v)).collect(),
        chosen: vec![0; n],
        open: vec![0; n],
        edges: Vec::new(),
        picked: Vec::new(),
    };
    for &(u, v) in &forced {
        search.chosen[u] += 1;
        search.chosen[v] += 1;
        search.picked.push((u, v));
    }
    let slack: Vec<isize> = (0..n)
        .map(|v| g.degree(v) as isize - spec.lower(v) as isize)
        .collect();
    let mut free: Vec<Edge> = g
        .edges()
        .filter(|e| !forced.contains(e) && !forbidden.contains(e))
        .collect();
    free.sort_by_key(|&(u, v)| (slack[u].min(slack[v]), u, v));
    for &(u, v) in &free {
        search.open[u] += 1;
        search.open[v] += 1;
    }
    search.edges = free;

    if (0..n).any(|v| !search.feasible(v)) || !tight_parity_ok(g, spec) {
        return Ok(None);
    }
    if !search.run(0) {
        return Ok(None);
    }
    let mut edges = search.picked;
    edges.sort_unstable();
    let witness = FactorWitness { edges };
    witness.verify(g, spec)?;
    Ok(Some(witness))
}

/// On a component where `g == f` everywhere the degree sum `f(C)` must be even.
fn tight_parity_ok(g: &Graph, spec: &DegreeSpec) -> bool {
    g.components().iter().all(|c| {
        let tight = c.iter().all(|v| spec.lower(v) == spec.upper(v));
        !tight || c.iter().map(|v| spec.upper(v)).sum::<usize>() % 2 == 0
    })
}

struct Search {
    lower: Vec<usize>,
    upper: Vec<usize>,
    chosen: Vec<usize>,
    open: Vec<usize>,
    edges: Vec<Edge>,
    picked: Vec<Edge>,
}

impl Search {
    #[inline]
    fn feasible(&self, v: usize) -> bool {
        self.chosen[v] <= self.upper[v] && self.chosen[v] + self.open[v] >= self.lower[v]
    }

    fn run(&mut self, idx: usize) -> bool {
        let Some(&(u, v)) = self.edges.get(idx) else {
            return true;
        };
        self.open[u] -= 1;
        self.open[v] -= 1;

        if self.chosen[u] < self.upper[u] && self.chosen[v] < self.upper[v] {
            self.chosen[u] += 1;
            self.chosen[v] += 1;
            self.picked.push((u, v));
            if self.run(idx + 1) {
                return true;
            }
            self.picked.pop();
            self.chosen[u] -= 1;
            self.chosen[v] -= 1;
        }
        if self.feasible(u) && self.feasible(v) && self.run(idx + 1) {
            return true;
        }

        self.open[u] += 1;
        self.open[v] += 1;
        false
    }
}

/// Whether `g` has an `[a,b]`-factor (deficiency scan).
pub fn has_ab_factor(g: &Graph, a: usize, b: usize) -> Result<bool> {
    let spec = DegreeSpec::uniform(g.order(), a, b)?;
    Ok(has_gf_factor(g, &spec)?.exists())
}

/// Whether some `[a,b]`-factor contains `e`, by explicit search with `e`
/// forced.
pub fn has_factor_containing_edge(g: &Graph, a: usize, b: usize, e: Edge) -> Result<bool> {
    let spec = DegreeSpec::uniform(g.order(), a, b)?;
    check_edge(g, e)?;
    Ok(find_factor(g, &spec, &[e], &[])?.is_some())
}

/// Same question as [`has_factor_containing_edge`], answered by deleting
/// `uv`, lowering both endpoint bounds by one and running the deficiency scan.
pub fn has_factor_containing_edge_by_deficiency(
    g: &Graph,
    a: usize,
    b: usize,
    e: Edge,
) -> Result<bool> {
    let spec = DegreeSpec::uniform(g.order(), a, b)?;
    check_edge(g, e)?;
    Ok(edge_forced_spec(g, &spec, e)
        .map(|(h, reduced)| has_gf_factor(&h, &reduced))
        .transpose()?
        .is_some_and(|v| v.exists()))
}

/// `G - uv` with `g'(x) = max(g(x) - 1, 0)` and `f'(x) = f(x) - 1` at both
/// endpoints; `None` when `f` is already zero at an endpoint.
pub fn edge_forced_spec(g: &Graph, spec: &DegreeSpec, (u, v): Edge) -> Option<(Graph, DegreeSpec)> {
    if spec.upper(u) == 0 || spec.upper(v) == 0 {
        return None;
    }
    let mut h = g.clone();
    h.remove_edge(u, v);
    let mut lower = spec.lower.clone();
    let mut upper = spec.upper.clone();
    for x in [u, v] {
        lower[x] = lower[x].saturating_sub(1);
        upper[x] -= 1;
    }
    Some((h, DegreeSpec { lower, upper }))
}

fn check_edge(g: &Graph, (u, v): Edge) -> Result<()> {
    if u >= g.order() || v >= g.order() || u == v || !g.has_edge(u, v) {
        return Err(Error::invalid(format!(
            "({u},{v}) is not an edge of the graph"
        )));
    }
    Ok(())
}
