//! Coverage decisions against a naive reading of the structural criterion and
//! against exhaustive subset enumeration.

use abcover::covered::{
    classify_component, count_odd, epsilon, is_ab_covered_definitional, is_ab_covered_structural,
    is_matching_covered, theta, ComponentClass, Obstruction,
};
use abcover::factor::has_ab_factor;
use abcover::graph::families::{complete_bipartite, cycle, h_graph, path, petersen};
use abcover::{Edge, Graph, VertexSet};
use proptest::prelude::*;

fn graphs(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[k] {
                            g.add_edge(u, v);
                        }
                        k += 1;
                    }
                }
                g
            },
        )
    })
}

/// `(a, b)` with `1 <= a <= b <= 3`.
fn ab() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 0usize..=2).prop_map(|(a, d)| (a, (a + d).min(3)))
}

fn pair(n: usize, digits: &[u8]) -> (Vec<bool>, Vec<bool>) {
    let s = (0..n).map(|v| digits[v] == 1).collect();
    let t = (0..n).map(|v| digits[v] == 2).collect();
    (s, t)
}

fn to_set(flags: &[bool]) -> VertexSet {
    (0..flags.len()).filter(|&v| flags[v]).collect()
}

/// Components of the subgraph induced on `alive`, skipping edge `cut`.
fn pieces(g: &Graph, alive: &[bool], cut: Option<Edge>) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for v in 0..n {
                let skipped = cut == Some((u.min(v), u.max(v)));
                if alive[v] && !seen[v] && g.has_edge(u, v) && !skipped {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Parity of `e(T, C) + b|C|`.
fn is_odd(g: &Graph, c: &[usize], t: &[bool], b: usize) -> bool {
    let to_t: usize = c
        .iter()
        .map(|&v| (0..g.order()).filter(|&w| t[w] && g.has_edge(v, w)).count())
        .sum();
    (to_t + b * c.len()) % 2 == 1
}

fn naive_theta(g: &Graph, s: &[bool], t: &[bool], a: usize, b: usize) -> i64 {
    let n = g.order();
    let ns = s.iter().filter(|&&x| x).count() as i64;
    let nt = t.iter().filter(|&&x| x).count() as i64;
    let deg: i64 = (0..n)
        .filter(|&x| t[x])
        .map(|x| (0..n).filter(|&w| !s[w] && g.has_edge(x, w)).count() as i64)
        .sum();
    b as i64 * ns - a as i64 * nt + deg - naive_odd(g, s, t, a, b) as i64
}

fn naive_odd(g: &Graph, s: &[bool], t: &[bool], a: usize, b: usize) -> usize {
    if a != b {
        return 0;
    }
    let alive: Vec<bool> = (0..g.order()).map(|v| !s[v] && !t[v]).collect();
    pieces(g, &alive, None)
        .iter()
        .filter(|c| is_odd(g, c, t, b))
        .count()
}

fn naive_epsilon(g: &Graph, s: &[bool], t: &[bool], a: usize, b: usize) -> u8 {
    let n = g.order();
    let edge_into_s = |c: &[usize]| c.iter().any(|&v| (0..n).any(|w| s[w] && g.has_edge(v, w)));
    if (0..n).any(|u| s[u] && (0..n).any(|v| s[v] && g.has_edge(u, v))) {
        return 2;
    }
    let alive: Vec<bool> = (0..n).map(|v| !s[v] && !t[v]).collect();
    let comps = pieces(g, &alive, None);
    if a == b {
        for c in comps.iter().filter(|c| !is_odd(g, c, t, b)) {
            if edge_into_s(c) {
                return 2;
            }
            let mut inside = vec![false; n];
            c.iter().for_each(|&v| inside[v] = true);
            for &u in c {
                for &v in c {
                    if u < v && g.has_edge(u, v) {
                        let split = pieces(g, &inside, Some((u, v)));
                        if split.len() == 2 && split.iter().all(|p| !is_odd(g, p, t, b)) {
                            return 2;
                        }
                    }
                }
            }
        }
        0
    } else if comps.iter().any(|c| edge_into_s(c)) {
        1
    } else {
        0
    }
}

/// Coverage by enumerating every edge subset.
fn brute_covered(g: &Graph, a: usize, b: usize) -> bool {
    let edges: Vec<Edge> = g.edges().collect();
    let n = g.order();
    let mut union = 0u32;
    let mut any = false;
    for sub in 0u32..1 << edges.len() {
        let mut deg = vec![0; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if sub >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        if deg.iter().all(|&d| a <= d && d <= b) {
            any = true;
            union |= sub;
        }
    }
    if edges.is_empty() {
        return any;
    }
    union.count_ones() as usize == edges.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn theta_and_epsilon_match_definitions(
        g in graphs(1, 9),
        (a, b) in ab(),
        digits in proptest::collection::vec(0u8..3, 9),
    ) {
        let n = g.order();
        let (s, t) = pair(n, &digits);
        let (ss, ts) = (to_set(&s), to_set(&t));
        prop_assert_eq!(theta(&g, &ss, &ts, a, b).unwrap(), naive_theta(&g, &s, &t, a, b));
        prop_assert_eq!(epsilon(&g, &ss, &ts, a, b).unwrap(), naive_epsilon(&g, &s, &t, a, b));
        prop_assert_eq!(count_odd(&g, &ss, &ts, a, b).unwrap(), naive_odd(&g, &s, &t, a, b));
        let alive: Vec<bool> = (0..n).map(|v| !s[v] && !t[v]).collect();
        for c in pieces(&g, &alive, None) {
            let class = classify_component(&g, &c.iter().copied().collect(), &ts, a, b).unwrap();
            let want = if a != b {
                ComponentClass::Neutral
            } else if is_odd(&g, &c, &t, b) {
                ComponentClass::Odd
            } else {
                ComponentClass::Even
            };
            prop_assert_eq!(class, want);
        }
    }

    #[test]
    fn structural_definitional_and_enumeration_agree(g in graphs(0, 6), (a, b) in ab()) {
        if a == b && g.order() * a % 2 == 1 {
            return Ok(());
        }
        let want = brute_covered(&g, a, b);
        let s = is_ab_covered_structural(&g, a, b).unwrap();
        let d = is_ab_covered_definitional(&g, a, b).unwrap();
        prop_assert_eq!(s.covered(), want);
        prop_assert_eq!(d.covered(), want);
        if let Some(w) = s.structural_witness() {
            let (ws, wt) = (&w.s, &w.t);
            prop_assert!(w.theta < w.epsilon as i64);
            prop_assert_eq!(theta(&g, ws, wt, a, b).unwrap(), w.theta);
            prop_assert_eq!(epsilon(&g, ws, wt, a, b).unwrap(), w.epsilon);
        }
        if let Some(e) = d.edge_witness() {
            prop_assert!(g.has_edge(e.0, e.1));
        }
    }

    #[test]
    fn covered_graphs_have_factors(g in graphs(1, 8), (a, b) in ab()) {
        if a == b && g.order() * a % 2 == 1 {
            return Ok(());
        }
        if is_ab_covered_structural(&g, a, b).unwrap().covered() {
            prop_assert!(has_ab_factor(&g, a, b).unwrap());
        }
    }

    #[test]
    fn coverage_is_label_invariant(
        (g, perm) in graphs(1, 8).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        }),
        (a, b) in ab(),
    ) {
        let x = is_ab_covered_structural(&g, a, b).unwrap().covered();
        let y = is_ab_covered_structural(&g.relabel(&perm), a, b).unwrap().covered();
        prop_assert_eq!(x, y);
    }
}

#[test]
fn known_examples() {
    assert!(is_matching_covered(&Graph::complete(4)).unwrap().covered());
    assert!(is_matching_covered(&cycle(6)).unwrap().covered());
    assert!(is_matching_covered(&petersen()).unwrap().covered());
    assert!(is_matching_covered(&complete_bipartite(3, 3))
        .unwrap()
        .covered());
    assert!(!is_matching_covered(&path(4)).unwrap().covered());
    // The extremal graphs are not covered.
    assert!(!is_matching_covered(&h_graph(6, 3).unwrap())
        .unwrap()
        .covered());
    assert!(!is_ab_covered_structural(&h_graph(10, 2).unwrap(), 2, 2)
        .unwrap()
        .covered());
    assert!(!is_ab_covered_structural(&h_graph(10, 2).unwrap(), 2, 3)
        .unwrap()
        .covered());
    // Adding the missing edge to H(6,3) gives a covered graph.
    let mut h = h_graph(6, 3).unwrap();
    h.add_edge(2, 5);
    assert!(is_matching_covered(&h).unwrap().covered());
}

#[test]
fn edgeless_graphs() {
    assert!(is_ab_covered_structural(&Graph::empty(0), 1, 1)
        .unwrap()
        .covered());
    for n in 1..=4 {
        let g = Graph::empty(n);
        let d = is_ab_covered_definitional(&g, 1, 2).unwrap();
        assert_eq!(d.obstruction, Some(Obstruction::NoFactor));
        assert!(!is_ab_covered_structural(&g, 1, 2).unwrap().covered());
    }
}

#[test]
fn invalid_parameters() {
    let g = Graph::complete(4);
    assert!(is_ab_covered_structural(&g, 0, 1).is_err());
    assert!(is_ab_covered_structural(&g, 2, 1).is_err());
    assert!(is_ab_covered_definitional(&g, 0, 1).is_err());
    let s: VertexSet = [0, 1].into_iter().collect();
    let t: VertexSet = [1].into_iter().collect();
    assert!(theta(&g, &s, &t, 1, 1).is_err());
    assert!(is_ab_covered_structural(&Graph::complete(20), 1, 1).is_err());
}
