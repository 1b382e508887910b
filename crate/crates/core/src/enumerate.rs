//! Canonical forms, isomorphism-free generation and graph6 streams.
//!
//! A canonical labeling is computed on whichever of `G` and its complement
//! has fewer edges (`G` on a tie). That graph is split into components; each
//! component is labelled by equitable refinement and backtracking over
//! individualised vertices, keeping the leaf with the smallest graph6
//! adjacency bit string. Components are then laid out by size and code.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::graph::{low_bits, Graph, MaskIter};
use crate::{graph6, Error, Result};

/// Order cap for [`canonical_form`] and [`are_isomorphic`].
pub const DEFAULT_CANONICAL_MAX_ORDER: usize = 12;
/// Largest order for exhaustive generation.
pub const MAX_ALL_ORDER: usize = 8;
/// Default cap on the number of complement classes in dense generation.
pub const DEFAULT_CLASS_CAP: usize = 250_000;

/// graph6 string of the canonically relabelled graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The canonical representative itself.
    pub fn graph(&self) -> Graph {
        graph6::parse(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_capped(g, DEFAULT_CANONICAL_MAX_ORDER)
}

/// Like [`canonical_form`] with an explicit order cap of at most 64.
pub fn canonical_form_capped(g: &Graph, max_order: usize) -> Result<CanonicalForm> {
    let perm = canonical_labeling_capped(g, max_order)?;
    Ok(CanonicalForm(graph6::encode(&g.relabel(&perm))))
}

/// Permutation `old -> new` taking `g` to its canonical representative.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>> {
    canonical_labeling_capped(g, DEFAULT_CANONICAL_MAX_ORDER)
}

pub fn canonical_labeling_capped(g: &Graph, max_order: usize) -> Result<Vec<usize>> {
    let n = g.order();
    if n > max_order.min(64) {
        return Err(Error::ResourceLimit(format!(
            "canonical labeling of order {n} exceeds the cap {}",
            max_order.min(64)
        )));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let all = low_bits(n);
    let adj: Vec<u64> = if 2 * g.size() > pairs {
        (0..n).map(|v| all & !g.mask(v) & !(1 << v)).collect()
    } else {
        (0..n).map(|v| g.mask(v)).collect()
    };
    let mask_graph = MaskGraph(&adj);

    let mut comps: Vec<(usize, Vec<u64>, Vec<usize>)> = mask_graph
        .components(all)
        .into_iter()
        .map(|c| {
            let order = label_component(&adj, c);
            let code = leaf_code(&adj, &order);
            (order.len(), code, order)
        })
        .collect();
    comps.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));

    let mut perm = vec![0; n];
    for (new, old) in comps.iter().flat_map(|c| c.2.iter()).enumerate() {
        perm[*old] = new;
    }
    Ok(perm)
}

struct MaskGraph<'a>(&'a [u64]);

impl MaskGraph<'_> {
    fn components(&self, allowed: u64) -> Vec<u64> {
        let mut rest = allowed;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let u = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.0[u] & allowed & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }
}

/// Columns of the upper triangle in graph6 order, bit-reversed so that
/// comparing the vectors compares the bit strings.
fn leaf_code(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let mut pos = [0u8; 64];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i as u8;
    }
    let mut cols = vec![0u64; order.len()];
    for (j, &v) in order.iter().enumerate() {
        for u in MaskIter(adj[v]) {
            let i = pos[u] as usize;
            if i < j {
                cols[j] |= 1u64 << (63 - i);
            }
        }
    }
    cols
}

fn label_component(adj: &[u64], comp: u64) -> Vec<usize> {
    if comp.count_ones() == 1 {
        return vec![comp.trailing_zeros() as usize];
    }
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(adj, vec![comp], &mut best);
    best.expect("search visits at least one leaf").1
}

fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    'restart: loop {
        for wi in 0..cells.len() {
            let w = cells[wi];
            for ci in 0..cells.len() {
                let c = cells[ci];
                if c & (c - 1) == 0 {
                    continue;
                }
                let mut groups: Vec<(u32, u64)> = Vec::new();
                for v in MaskIter(c) {
                    let k = (adj[v] & w).count_ones();
                    match groups.iter_mut().find(|g| g.0 == k) {
                        Some(g) => g.1 |= 1 << v,
                        None => groups.push((k, 1 << v)),
                    }
                }
                if groups.len() > 1 {
                    groups.sort_unstable_by_key(|g| g.0);
                    cells.splice(ci..=ci, groups.into_iter().map(|g| g.1));
                    continue 'restart;
                }
            }
        }
        return;
    }
}

fn search(adj: &[u64], mut cells: Vec<u64>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(adj, &mut cells);
    let Some(idx) = cells.iter().position(|c| c & (c - 1) != 0) else {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = leaf_code(adj, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = cells[idx];
    let mut tried: Vec<usize> = Vec::new();
    for v in MaskIter(cell) {
        // swapping twins fixes the current partition, so their subtrees agree
        let twin = tried
            .iter()
            .any(|&u| adj[u] & !(1 << v) == adj[v] & !(1 << u));
        if twin {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..idx]);
        next.push(1 << v);
        next.push(cell & !(1 << v));
        next.extend_from_slice(&cells[idx + 1..]);
        search(adj, next, best);
    }
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.order() != g2.order() || g1.size() != g2.size() {
        return Ok(false);
    }
    Ok(canonical_form(g1)? == canonical_form(g2)?)
}

/// Optional predicate applied to generated graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFilter {
    MinDegreeAtLeast(usize),
    Connected,
    Bipartite,
}

impl GraphFilter {
    pub fn accepts(&self, g: &Graph) -> bool {
        match *self {
            GraphFilter::MinDegreeAtLeast(d) => g.min_degree() >= d,
            GraphFilter::Connected => g.is_connected(),
            GraphFilter::Bipartite => is_bipartite(g),
        }
    }
}

fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut colour = vec![u8::MAX; n];
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    stack.push(v);
                } else if colour[v] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every isomorphism class of order `n`.
    All,
    /// Every class whose complement has at most `k` edges.
    ComplementBudget(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
    pub n: usize,
    pub mode: EnumerationMode,
    pub filter: Option<GraphFilter>,
}

impl EnumerationTask {
    pub fn new(n: usize, mode: EnumerationMode) -> Result<EnumerationTask> {
        match mode {
            EnumerationMode::All if n > MAX_ALL_ORDER => Err(Error::ResourceLimit(format!(
                "exhaustive generation is limited to order {MAX_ALL_ORDER}, got {n}"
            ))),
            EnumerationMode::ComplementBudget(k) if k > n * n.saturating_sub(1) / 2 => Err(
                Error::invalid(format!("complement budget {k} exceeds C({n},2)")),
            ),
            _ => Ok(EnumerationTask {
                n,
                mode,
                filter: None,
            }),
        }
    }

    pub fn with_filter(mut self, filter: GraphFilter) -> EnumerationTask {
        self.filter = Some(filter);
        self
    }

    pub fn run(&self) -> Result<Vec<Graph>> {
        let mut graphs = match self.mode {
            EnumerationMode::All => enumerate_all(self.n)?,
            EnumerationMode::ComplementBudget(k) => enumerate_dense_candidates(self.n, k)?,
        };
        if let Some(f) = self.filter {
            graphs.retain(|g| f.accepts(g));
        }
        Ok(graphs)
    }
}

/// One representative per isomorphism class of order `n <= 8`, each in
/// canonical labeling, sorted by canonical form.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ALL_ORDER {
        return Err(Error::ResourceLimit(format!(
            "exhaustive generation is limited to order {MAX_ALL_ORDER}, got {n}"
        )));
    }
    let classes = if n <= 6 {
        labeled_classes(n)?
    } else {
        augmented_classes(n)?
    };
    Ok(classes.into_values().collect())
}

fn labeled_classes(n: usize) -> Result<BTreeMap<CanonicalForm, Graph>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let forms: Vec<CanonicalForm> = (0u64..1 << pairs.len())
        .into_par_iter()
        .map(|bits| {
            let mut g = Graph::empty(n);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
            canonical_form(&g)
        })
        .collect::<Result<_>>()?;
    Ok(forms.into_iter().map(|f| (f.clone(), f.graph())).collect())
}

/// Extends every class of order `n - 1` by a vertex with every possible
/// neighbourhood.
fn augmented_classes(n: usize) -> Result<BTreeMap<CanonicalForm, Graph>> {
    let smaller = enumerate_all(n - 1)?;
    let chunks: Vec<Vec<CanonicalForm>> = smaller
        .par_iter()
        .map(|base| {
            let mut local: Vec<CanonicalForm> = (0u64..1 << (n - 1))
                .map(|nbrs| {
                    let mut g = base.disjoint_union(&Graph::empty(1));
                    for u in MaskIter(nbrs) {
                        g.add_edge(u, n - 1);
                    }
                    canonical_form(&g)
                })
                .collect::<Result<_>>()?;
            local.sort_unstable();
            local.dedup();
            Ok(local)
        })
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for f in chunks.into_iter().flatten() {
        out.entry(f).or_insert_with_key(|f| f.graph());
    }
    Ok(out)
}

/// Every class of order `n` whose complement has at most `k` edges, with the
/// default class cap.
pub fn enumerate_dense_candidates(n: usize, k: usize) -> Result<Vec<Graph>> {
    enumerate_dense_candidates_capped(n, k, DEFAULT_CLASS_CAP)
}

/// Builds complement classes one edge at a time and complements them.
/// Output is ordered by complement size, then by canonical form of the
/// complement.
pub fn enumerate_dense_candidates_capped(n: usize, k: usize, cap: usize) -> Result<Vec<Graph>> {
    let pairs = n * n.saturating_sub(1) / 2;
    if k > pairs {
        return Err(Error::invalid(format!(
            "complement budget {k} exceeds C({n},2) = {pairs}"
        )));
    }
    if n > 64 {
        return Err(Error::ResourceLimit(format!(
            "dense generation needs order <= 64, got {n}"
        )));
    }
    let mut level = vec![Graph::empty(n)];
    let mut out: Vec<Graph> = vec![Graph::complete(n)];
    for _ in 0..k {
        let found: Vec<Vec<CanonicalForm>> = level
            .par_iter()
            .map(|h| {
                let mut local: Vec<CanonicalForm> = extensions(h)
                    .into_iter()
                    .map(|(u, v)| {
                        let mut next = h.clone();
                        next.add_edge(u, v);
                        canonical_form_capped(&next, 64)
                    })
                    .collect::<Result<_>>()?;
                local.sort_unstable();
                local.dedup();
                Ok(local)
            })
            .collect::<Result<_>>()?;
        let mut forms: Vec<CanonicalForm> = found.into_iter().flatten().collect();
        forms.sort_unstable();
        forms.dedup();
        if out.len() + forms.len() > cap {
            return Err(Error::ResourceLimit(format!(
                "dense generation for n={n}, k={k} exceeds the class cap {cap}"
            )));
        }
        level = forms.iter().map(|f| f.graph()).collect();
        out.extend(level.iter().map(Graph::complement));
        if level.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// Non-edges of `h` up to the symmetry among isolated vertices: only the
/// first two isolated vertices are used as endpoints.
fn extensions(h: &Graph) -> Vec<(usize, usize)> {
    let n = h.order();
    let isolated: Vec<usize> = (0..n).filter(|&v| h.degree(v) == 0).collect();
    let allowed: u64 = low_bits(n) & !isolated.iter().skip(2).fold(0u64, |m, &v| m | 1 << v);
    let mut out = Vec::new();
    for u in MaskIter(allowed) {
        for v in MaskIter(allowed & !h.mask(u) & !low_bits(u + 1)) {
            let (du, dv) = (h.degree(u), h.degree(v));
            // an isolated vertex joins a non-isolated one only as the first
            if (du == 0) != (dv == 0) && u.max(v) != isolated[0] && u.min(v) != isolated[0] {
                continue;
            }
            out.push((u, v));
        }
    }
    out
}

/// Number of edges missing from `g`.
pub fn complement_size(g: &Graph) -> usize {
    let n = g.order();
    n * n.saturating_sub(1) / 2 - g.size()
}

/// Streams graphs from graph6 lines, skipping blank lines. Errors carry the
/// 1-based line number.
pub struct Graph6Lines<R> {
    reader: R,
    line: usize,
    buf: Vec<u8>,
    failed: bool,
}

pub fn ingest_graph6<R: BufRead>(reader: R) -> Graph6Lines<R> {
    Graph6Lines {
        reader,
        line: 0,
        buf: Vec::new(),
        failed: false,
    }
}

pub fn ingest_graph6_path(path: impl AsRef<Path>) -> Result<Graph6Lines<BufReader<File>>> {
    Ok(ingest_graph6(BufReader::new(File::open(path)?)))
}

impl<R: BufRead> Iterator for Graph6Lines<R> {
    type Item = Result<Graph>;

    fn next(&mut self) -> Option<Result<Graph>> {
        if self.failed {
            return None;
        }
        loop {
            self.buf.clear();
            self.line += 1;
            let line = self.line;
            let wrap = |e: Error| Error::Line {
                line,
                source: Box::new(e),
            };
            match self.reader.read_until(b'\n', &mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => {
                    self.failed = true;
                    return Some(Err(wrap(e.into())));
                }
            }
            let text = match std::str::from_utf8(&self.buf) {
                Ok(t) => t,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(wrap(Error::parse(e.valid_up_to(), "invalid UTF-8"))));
                }
            };
            if text.trim().is_empty() {
                continue;
            }
            let parsed = graph6::parse(text).map_err(wrap);
            self.failed = parsed.is_err();
            return Some(parsed);
        }
    }
}

pub fn write_graph6<'a, W: Write>(
    mut out: W,
    graphs: impl IntoIterator<Item = &'a Graph>,
) -> Result<()> {
    for g in graphs {
        writeln!(out, "{}", graph6::encode(g))?;
    }
    out.flush()?;
    Ok(())
}
