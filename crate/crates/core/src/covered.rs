//! `[a,b]`-covered graphs: every edge lies in some `[a,b]`-factor.
//!
//! [`is_ab_covered_structural`] checks `theta(S,T) >= epsilon(S,T)` for every
//! disjoint pair, where
//!
//! ```text
//! theta(S,T) = b|S| - a|T| + sum_{x in T} d_{G-S}(x) - o(S,T)
//! ```
//!
//! and `o(S,T)` counts odd components of `G - S - T`. For `a == b` a component
//! `C` is odd or even by the parity of `e_G(T, V(C)) + b|V(C)|`; for `a != b`
//! every component is neutral. `epsilon` is
//!
//! * 2 if `S` is not independent, or (`a == b`) some even component has an
//!   edge to `S` or a cut edge whose two sides both have even parity;
//! * otherwise 1 if some neutral component has an edge to `S`;
//! * otherwise 0.
//!
//! [`is_ab_covered_definitional`] searches for a factor through each edge.

use crate::factor::{self, DegreeSpec};
use crate::graph::{
    mask_bridge_splits, mask_components, mask_cross_edges, Edge, Graph, MaskIter, VertexSet,
};
use crate::scan::PairScan;
use crate::{Error, Result};

/// Default order cap for the `3^n` structural scan.
pub const DEFAULT_MAX_SCAN_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentClass {
    Odd,
    Even,
    Neutral,
}

/// A disjoint pair with `theta < epsilon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralWitness {
    pub s: VertexSet,
    pub t: VertexSet,
    pub theta: i64,
    pub epsilon: u8,
}

/// Why a graph is not covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Structural(StructuralWitness),
    /// An edge that lies in no `[a,b]`-factor.
    Edge(Edge),
    /// The graph has no edges to cover but also no `[a,b]`-factor.
    NoFactor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageVerdict {
    pub obstruction: Option<Obstruction>,
}

impl CoverageVerdict {
    pub fn covered(&self) -> bool {
        self.obstruction.is_none()
    }

    pub fn structural_witness(&self) -> Option<&StructuralWitness> {
        match &self.obstruction {
            Some(Obstruction::Structural(w)) => Some(w),
            _ => None,
        }
    }

    pub fn edge_witness(&self) -> Option<Edge> {
        match self.obstruction {
            Some(Obstruction::Edge(e)) => Some(e),
            _ => None,
        }
    }
}

fn check_ab(a: usize, b: usize) -> Result<()> {
    if a == 0 || a > b {
        return Err(Error::invalid(format!("need 1 <= a <= b, got a={a} b={b}")));
    }
    Ok(())
}

fn pair_masks(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<(u64, u64)> {
    g.require_mask_width("covered criterion")?;
    g.check_set(s)?;
    g.check_set(t)?;
    if !s.is_disjoint(t) {
        return Err(Error::invalid("S and T must be disjoint"));
    }
    Ok((s.to_mask().unwrap_or(0), t.to_mask().unwrap_or(0)))
}

#[inline]
fn parity(g: &Graph, part: u64, t: u64, b: usize) -> u32 {
    ((mask_cross_edges(g, part, t) + b * part.count_ones() as usize) % 2) as u32
}

#[inline]
fn classify_mask(g: &Graph, c: u64, t: u64, a: usize, b: usize) -> ComponentClass {
    if a != b {
        ComponentClass::Neutral
    } else if parity(g, c, t, b) == 1 {
        ComponentClass::Odd
    } else {
        ComponentClass::Even
    }
}

/// Class of `C` relative to `T`. `C` is expected to be a component of
/// `G - S - T` for the pair under consideration.
pub fn classify_component(
    g: &Graph,
    c: &VertexSet,
    t: &VertexSet,
    a: usize,
    b: usize,
) -> Result<ComponentClass> {
    let (c, t) = pair_masks(g, c, t)?;
    Ok(classify_mask(g, c, t, a, b))
}

/// `o_G(S,T)`: the number of odd components of `G - S - T`.
pub fn count_odd(g: &Graph, s: &VertexSet, t: &VertexSet, a: usize, b: usize) -> Result<usize> {
    let (s, t) = pair_masks(g, s, t)?;
    Ok(odd_components(g, s, t, a, b))
}

#[inline]
fn odd_components(g: &Graph, s: u64, t: u64, a: usize, b: usize) -> usize {
    if a != b {
        return 0;
    }
    let rest = g.vertex_mask() & !s & !t;
    mask_components(g, rest)
        .filter(|&c| parity(g, c, t, b) == 1)
        .count()
}

pub fn epsilon(g: &Graph, s: &VertexSet, t: &VertexSet, a: usize, b: usize) -> Result<u8> {
    let (s, t) = pair_masks(g, s, t)?;
    Ok(epsilon_masks(g, s, t, a, b))
}

pub(crate) fn epsilon_masks(g: &Graph, s: u64, t: u64, a: usize, b: usize) -> u8 {
    if MaskIter(s).any(|v| g.mask(v) & s != 0) {
        return 2;
    }
    let rest = g.vertex_mask() & !s & !t;
    let touches_s = |c: u64| MaskIter(c).any(|v| g.mask(v) & s != 0);
    if a == b {
        for c in mask_components(g, rest) {
            if parity(g, c, t, b) == 1 {
                continue;
            }
            if touches_s(c) {
                return 2;
            }
            let even_split = mask_bridge_splits(g, c)
                .into_iter()
                .any(|(c1, c2)| parity(g, c1, t, b) == 0 && parity(g, c2, t, b) == 0);
            if even_split {
                return 2;
            }
        }
        0
    } else if mask_components(g, rest).any(touches_s) {
        1
    } else {
        0
    }
}

/// `theta_G(S,T)`; `d_{G-S}(x)` counts every neighbour of `x` outside `S`.
pub fn theta(g: &Graph, s: &VertexSet, t: &VertexSet, a: usize, b: usize) -> Result<i64> {
    let (s, t) = pair_masks(g, s, t)?;
    Ok(theta_base(g, s, t, a, b) - odd_components(g, s, t, a, b) as i64)
}

#[inline]
fn theta_base(g: &Graph, s: u64, t: u64, a: usize, b: usize) -> i64 {
    let degree_sum: i64 = MaskIter(t)
        .map(|x| (g.mask(x) & !s).count_ones() as i64)
        .sum();
    (b * s.count_ones() as usize) as i64 - (a * t.count_ones() as usize) as i64 + degree_sum
}

/// Structural scan with the default order cap.
pub fn is_ab_covered_structural(g: &Graph, a: usize, b: usize) -> Result<CoverageVerdict> {
    is_ab_covered_structural_capped(g, a, b, DEFAULT_MAX_SCAN_ORDER)
}

/// Scans all `3^n` disjoint pairs; a failing verdict carries the first pair
/// in scan order with `theta < epsilon`.
pub fn is_ab_covered_structural_capped(
    g: &Graph,
    a: usize,
    b: usize,
    max_order: usize,
) -> Result<CoverageVerdict> {
    check_ab(a, b)?;
    let n = g.order();
    if n > max_order.min(64) {
        return Err(Error::ResourceLimit(format!(
            "structural scan over order {n} exceeds the cap {max_order}"
        )));
    }
    let all = g.vertex_mask();
    for (s, t) in PairScan::new(n) {
        let base = theta_base(g, s, t, a, b);
        // epsilon <= 2 and o(S,T) <= |V - S - T|
        let max_odd = if a == b {
            (all & !s & !t).count_ones() as i64
        } else {
            0
        };
        if base - max_odd >= 2 {
            continue;
        }
        let theta = base - odd_components(g, s, t, a, b) as i64;
        if theta >= 2 {
            continue;
        }
        let epsilon = epsilon_masks(g, s, t, a, b);
        if theta < epsilon as i64 {
            return Ok(CoverageVerdict {
                obstruction: Some(Obstruction::Structural(StructuralWitness {
                    s: VertexSet::from_mask(s),
                    t: VertexSet::from_mask(t),
                    theta,
                    epsilon,
                })),
            });
        }
    }
    Ok(CoverageVerdict { obstruction: None })
}

/// Searches for a factor through each edge in lexicographic order; the first
/// failing edge is the witness. A graph without edges is covered exactly when
/// it has an `[a,b]`-factor, which for `a >= 1` means it has no vertices.
pub fn is_ab_covered_definitional(g: &Graph, a: usize, b: usize) -> Result<CoverageVerdict> {
    check_ab(a, b)?;
    if g.size() == 0 {
        let spec = DegreeSpec::uniform(g.order(), a, b)?;
        let obstruction = factor::find_factor(g, &spec, &[], &[])?
            .is_none()
            .then_some(Obstruction::NoFactor);
        return Ok(CoverageVerdict { obstruction });
    }
    for e in g.edges() {
        if !factor::has_factor_containing_edge(g, a, b, e)? {
            return Ok(CoverageVerdict {
                obstruction: Some(Obstruction::Edge(e)),
            });
        }
    }
    Ok(CoverageVerdict { obstruction: None })
}

/// Matching covered: `[1,1]`-covered, decided structurally.
pub fn is_matching_covered(g: &Graph) -> Result<CoverageVerdict> {
    is_ab_covered_structural(g, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn classify_examples() {
        // triangle block of H(6,3) against the pendant vertex
        let h = h_graph(6, 3).unwrap();
        let k3 = set(&[2, 3, 4]);
        assert_eq!(
            classify_component(&h, &k3, &set(&[5]), 1, 1).unwrap(),
            ComponentClass::Odd
        );
        // one T-edge into a 3-vertex component, a = b = 2: 1 + 6 is odd
        let g = path(4);
        assert_eq!(
            classify_component(&g, &set(&[1, 2, 3]), &set(&[0]), 2, 2).unwrap(),
            ComponentClass::Odd
        );
        assert_eq!(
            classify_component(&g, &set(&[1, 2, 3]), &set(&[0]), 1, 2).unwrap(),
            ComponentClass::Neutral
        );
    }

    #[test]
    fn odd_counts() {
        let h = h_graph(6, 3).unwrap();
        assert_eq!(count_odd(&h, &set(&[0, 1]), &set(&[5]), 1, 1).unwrap(), 1);
        assert_eq!(count_odd(&h, &set(&[]), &set(&[]), 1, 2).unwrap(), 0);
        assert_eq!(
            count_odd(&Graph::complete(3), &set(&[]), &set(&[]), 1, 1).unwrap(),
            1
        );
    }

    #[test]
    fn epsilon_examples() {
        let h = h_graph(6, 3).unwrap();
        for t in [vec![], vec![5], vec![2, 3]] {
            assert_eq!(epsilon(&h, &set(&[0, 1]), &set(&t), 1, 1).unwrap(), 2);
        }
        assert_eq!(epsilon(&h, &set(&[]), &set(&[5]), 1, 2).unwrap(), 0);
        assert_eq!(epsilon(&h, &set(&[2]), &set(&[]), 1, 2).unwrap(), 1);
        // even path component with an even-even cut edge: P_4 split into P_2 + P_2
        assert_eq!(epsilon(&path(4), &set(&[]), &set(&[]), 1, 1).unwrap(), 2);
        // C_4 has no cut edge and S is empty
        assert_eq!(epsilon(&cycle(4), &set(&[]), &set(&[]), 1, 1).unwrap(), 0);
    }

    #[test]
    fn theta_examples() {
        let h = h_graph(6, 3).unwrap();
        assert_eq!(theta(&h, &set(&[0, 1]), &set(&[5]), 1, 1).unwrap(), 0);
        assert_eq!(
            theta(&Graph::complete(3), &set(&[]), &set(&[]), 1, 1).unwrap(),
            -1
        );
        assert_eq!(theta(&cycle(4), &set(&[]), &set(&[]), 2, 2).unwrap(), 0);
        assert!(theta(&h, &set(&[0]), &set(&[0]), 1, 1).is_err());
    }

    #[test]
    fn structural_examples() {
        let h = h_graph(6, 3).unwrap();
        let v = is_ab_covered_structural(&h, 1, 1).unwrap();
        assert!(!v.covered());
        let w = v.structural_witness().unwrap();
        assert!(w.theta < w.epsilon as i64);
        assert!(is_ab_covered_structural(&cycle(4), 1, 1).unwrap().covered());
        let k3_3k1 = Graph::complete(3).join(&Graph::empty(3));
        assert!(!is_ab_covered_structural(&k3_3k1, 1, 1).unwrap().covered());
        assert!(is_ab_covered_structural(&h, 0, 1).is_err());
        assert!(is_ab_covered_structural(&h, 2, 1).is_err());
    }

    #[test]
    fn definitional_examples() {
        let h = h_graph(6, 3).unwrap();
        let v = is_ab_covered_definitional(&h, 1, 1).unwrap();
        assert_eq!(v.edge_witness(), Some((0, 1)));
        assert!(is_ab_covered_definitional(&Graph::complete(7), 1, 2)
            .unwrap()
            .covered());
        let v = is_ab_covered_definitional(&Graph::empty(5), 1, 2).unwrap();
        assert_eq!(v.obstruction, Some(Obstruction::NoFactor));
        assert!(is_ab_covered_definitional(&Graph::empty(0), 1, 1)
            .unwrap()
            .covered());
    }

    #[test]
    fn matching_covered_examples() {
        assert!(is_matching_covered(&cycle(6)).unwrap().covered());
        assert!(!is_matching_covered(&h_graph(8, 3).unwrap())
            .unwrap()
            .covered());
        assert!(is_matching_covered(&Graph::complete(4)).unwrap().covered());
    }
}
