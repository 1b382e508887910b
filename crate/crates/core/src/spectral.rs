//! Adjacency spectral radius, equitable quotients and spectral bounds.
//!
//! [`spectral_radius`] runs power iteration on `A + I` separately on every
//! component, starting from the normalised all-ones vector. Each result
//! carries an enclosure `[lower, upper]` of the true value: the lower end is
//! the Rayleigh quotient less ten times the residual 2-norm, the upper end is
//! the smaller of the Rayleigh quotient plus that radius and the
//! Collatz-Wielandt bound `max_i (Ax)_i / x_i`.

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_COMPARE_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITERATIONS: usize = 1_000_000;
/// Safety factor applied to the residual when forming enclosures.
pub const ENCLOSURE_FACTOR: f64 = 10.0;
/// Tolerance for the bisection on quotient characteristic polynomials.
pub const QUOTIENT_TOL: f64 = 1e-12;

const STALL_WINDOW: usize = 2_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult {
    pub rho: f64,
    /// `||A x - rho x||_inf` on the final unit iterate of the dominant component.
    pub residual: f64,
    /// The matching 2-norm, which sets the enclosure radius.
    pub residual_l2: f64,
    /// Total iterations over all components.
    pub iterations: usize,
    lower: f64,
    upper: f64,
}

impl SpectralResult {
    /// Interval that contains the true spectral radius.
    pub fn enclosure(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    spectral_radius_with(g, tol, DEFAULT_MAX_ITERATIONS)
}

pub fn spectral_radius_with(g: &Graph, tol: f64, max_iterations: usize) -> Result<SpectralResult> {
    check_tol(tol)?;
    let mut best = SpectralResult {
        rho: 0.0,
        residual: 0.0,
        residual_l2: 0.0,
        iterations: 0,
        lower: 0.0,
        upper: 0.0,
    };
    let mut iterations = 0;
    let mut first = true;
    for comp in g.components() {
        if comp.len() == 1 {
            continue;
        }
        let r = component_radius(g, &comp, tol, max_iterations)?;
        iterations += r.iterations;
        best.lower = best.lower.max(r.lower);
        best.upper = best.upper.max(r.upper);
        if first || r.rho > best.rho {
            best.rho = r.rho;
            best.residual = r.residual;
            best.residual_l2 = r.residual_l2;
            first = false;
        }
    }
    best.iterations = iterations;
    Ok(best)
}

fn component_radius(
    g: &Graph,
    comp: &VertexSet,
    tol: f64,
    max_iterations: usize,
) -> Result<SpectralResult> {
    let verts: Vec<usize> = comp.iter().collect();
    let mut index = vec![usize::MAX; g.order()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| g.neighbors(v).map(|u| index[u]).collect())
        .collect();
    let m = verts.len();

    let mut x = vec![1.0 / (m as f64).sqrt(); m];
    let mut ax = vec![0.0; m];
    let mut best_residual = f64::INFINITY;
    let mut last_improvement = 0;
    for it in 1..=max_iterations {
        for (i, nbrs) in adj.iter().enumerate() {
            ax[i] = nbrs.iter().map(|&j| x[j]).sum();
        }
        let rho: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let (mut r_inf, mut r_sq) = (0.0f64, 0.0);
        for i in 0..m {
            let r = ax[i] - rho * x[i];
            r_inf = r_inf.max(r.abs());
            r_sq += r * r;
        }
        if r_inf <= tol {
            let r_l2 = r_sq.sqrt();
            let slack = 8.0 * m as f64 * f64::EPSILON * (rho.abs() + 1.0);
            let radius = ENCLOSURE_FACTOR * r_l2 + slack;
            // the iterate stays positive on a connected component
            let cw = x
                .iter()
                .zip(&ax)
                .map(|(xi, ai)| if *xi > 0.0 { ai / xi } else { f64::INFINITY })
                .fold(0.0f64, f64::max);
            return Ok(SpectralResult {
                rho,
                residual: r_inf,
                residual_l2: r_l2,
                iterations: it,
                lower: (rho - radius).max(0.0),
                upper: (rho + radius).min(cw + slack),
            });
        }
        if r_inf < best_residual * 0.999 {
            best_residual = r_inf;
            last_improvement = it;
        } else if it - last_improvement > STALL_WINDOW {
            return Err(Error::NumericFailure(format!(
                "power iteration stalled at residual {r_inf:e} after {it} iterations (tol {tol:e})"
            )));
        }
        // x <- (A + I) x, normalised
        let mut norm = 0.0;
        for i in 0..m {
            ax[i] += x[i];
            norm += ax[i] * ax[i];
        }
        let norm = norm.sqrt();
        for i in 0..m {
            x[i] = ax[i] / norm;
        }
    }
    Err(Error::NumericFailure(format!(
        "power iteration did not reach residual {tol:e} within {max_iterations} iterations"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoOrdering {
    Less,
    Greater,
    Indistinguishable,
}

/// Orders two results only when their enclosures are disjoint.
pub fn compare_results(r1: &SpectralResult, r2: &SpectralResult) -> RhoOrdering {
    if r1.lower > r2.upper {
        RhoOrdering::Greater
    } else if r1.upper < r2.lower {
        RhoOrdering::Less
    } else {
        RhoOrdering::Indistinguishable
    }
}

pub fn compare_rho(g1: &Graph, g2: &Graph, tol: f64) -> Result<RhoOrdering> {
    Ok(compare_results(
        &spectral_radius(g1, tol)?,
        &spectral_radius(g2, tol)?,
    ))
}

/// Quotient of an equitable partition: `entry(i, j)` is the number of
/// neighbours in part `j` of any vertex of part `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    parts: Vec<VertexSet>,
    entries: Vec<Vec<usize>>,
}

impl QuotientMatrix {
    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.entries
    }
}

/// Builds the quotient matrix, verifying that `parts` partitions the vertex
/// set and is equitable.
pub fn quotient_matrix(g: &Graph, parts: &[VertexSet]) -> Result<QuotientMatrix> {
    let n = g.order();
    let mut part_of = vec![usize::MAX; n];
    for (p, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::invalid(format!("part {p} is empty")));
        }
        g.check_set(part)?;
        for v in part.iter() {
            if part_of[v] != usize::MAX {
                return Err(Error::invalid(format!(
                    "vertex {v} lies in parts {} and {p}",
                    part_of[v]
                )));
            }
            part_of[v] = p;
        }
    }
    if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(Error::invalid(format!("vertex {v} lies in no part")));
    }

    let k = parts.len();
    let counts = |v: usize| {
        let mut row = vec![0; k];
        for u in g.neighbors(v) {
            row[part_of[u]] += 1;
        }
        row
    };
    let mut entries = Vec::with_capacity(k);
    for (p, part) in parts.iter().enumerate() {
        let mut members = part.iter();
        let first = members.next().expect("parts are nonempty");
        let row = counts(first);
        for v in members {
            let other = counts(v);
            if let Some(j) = (0..k).find(|&j| other[j] != row[j]) {
                return Err(Error::invalid(format!(
                    "partition is not equitable: vertex {v} of part {p} has {} neighbours in part {j}, vertex {first} has {}",
                    other[j], row[j]
                )));
            }
        }
        entries.push(row);
    }
    Ok(QuotientMatrix {
        parts: parts.to_vec(),
        entries,
    })
}

/// Coefficients of `det(xI - B)`, highest degree first, computed exactly by
/// the division-free Berkowitz recurrence.
pub fn characteristic_polynomial(q: &QuotientMatrix) -> Result<Vec<i128>> {
    let overflow = || Error::ResourceLimit("characteristic polynomial overflows i128".to_string());
    let b: Vec<Vec<i128>> = q
        .entries
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut poly = vec![1i128];
    for r in 0..b.len() {
        // Toeplitz column: 1, -b_rr, -R C, -R M C, ..., -R M^{r-1} C
        let mut col = vec![1i128, -b[r][r]];
        let mut v: Vec<i128> = (0..r).map(|i| b[i][r]).collect();
        for _ in 0..r {
            let mut dot = 0i128;
            for (j, vj) in v.iter().enumerate() {
                dot = b[r][j]
                    .checked_mul(*vj)
                    .and_then(|p| dot.checked_add(p))
                    .ok_or_else(overflow)?;
            }
            col.push(dot.checked_neg().ok_or_else(overflow)?);
            let mut next = vec![0i128; r];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    *slot = b[i][j]
                        .checked_mul(*vj)
                        .and_then(|p| slot.checked_add(p))
                        .ok_or_else(overflow)?;
                }
            }
            v = next;
        }
        let mut next = vec![0i128; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in poly.iter().enumerate().take(i + 1) {
                *slot = col[i - j]
                    .checked_mul(*pj)
                    .and_then(|p| slot.checked_add(p))
                    .ok_or_else(overflow)?;
            }
        }
        poly = next;
    }
    Ok(poly)
}

/// Largest real eigenvalue of the quotient, by bisection on its
/// characteristic polynomial. Quotients of equitable partitions are similar
/// to symmetric matrices, so every root is real.
pub fn quotient_spectral_radius(q: &QuotientMatrix, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let poly = characteristic_polynomial(q)?;
    let coeffs: Vec<f64> = poly.iter().map(|&c| c as f64).collect();
    let bound = q
        .entries
        .iter()
        .map(|row| row.iter().sum::<usize>())
        .max()
        .unwrap_or(0) as f64;
    Ok(largest_real_root(&coeffs, bound, tol))
}

fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Largest root of a monic real-rooted polynomial whose roots lie in
/// `[-bound, bound]`. The largest root of the derivative is a lower bracket
/// end, past which the polynomial increases.
fn largest_real_root(coeffs: &[f64], bound: f64, tol: f64) -> f64 {
    let deg = coeffs.len() - 1;
    match deg {
        0 => return f64::NEG_INFINITY,
        1 => return -coeffs[1] / coeffs[0],
        _ => {}
    }
    let derivative: Vec<f64> = coeffs[..deg]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (deg - i) as f64 / deg as f64)
        .collect();
    let mut lo = largest_real_root(&derivative, bound, tol).max(-bound);
    if eval(coeffs, lo) >= 0.0 {
        return lo;
    }
    let mut hi = bound.max(lo);
    while eval(coeffs, hi) < 0.0 {
        hi = hi * 2.0 + 1.0;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval(coeffs, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `(delta - 1)/2 + sqrt(2e - delta n + (delta + 1)^2 / 4)`, an upper bound
/// on the spectral radius in terms of order, size and minimum degree.
pub fn hong_nikiforov_bound(g: &Graph) -> Result<f64> {
    let delta = g.min_degree() as f64;
    let radicand = 2.0 * g.size() as f64 - delta * g.order() as f64 + (delta + 1.0).powi(2) / 4.0;
    if radicand < 0.0 {
        return Err(Error::InvariantViolation(format!(
            "negative radicand {radicand} in the minimum-degree spectral bound"
        )));
    }
    Ok((delta - 1.0) / 2.0 + radicand.sqrt())
}

/// Whether `rho(G) >= threshold` is certain, refuted, or unresolved at `tol`.
pub fn rho_at_least(g: &Graph, threshold: f64, tol: f64) -> Result<Option<bool>> {
    let r = spectral_radius(g, tol)?;
    let (lo, hi) = r.enclosure();
    Ok(if lo >= threshold {
        Some(true)
    } else if hi < threshold {
        Some(false)
    } else {
        None
    })
}

/// Checks that `delta(G) >= a` and `rho(G) >= n - 2` force
/// `e(complement) <= n - ceil(a/2) - 1`. An unresolved comparison with
/// `n - 2` counts as satisfying the hypothesis, so the check never passes on
/// numerical doubt.
pub fn complement_size_check(g: &Graph, a: usize, tol: f64) -> Result<bool> {
    let n = g.order();
    if g.min_degree() < a {
        return Ok(true);
    }
    let bound = n as i64 - a.div_ceil(2) as i64 - 1;
    let missing = (n * n.saturating_sub(1) / 2 - g.size()) as i64;
    if missing <= bound {
        return Ok(true);
    }
    let hypothesis = rho_at_least(g, n as f64 - 2.0, tol)?;
    Ok(hypothesis == Some(false))
}
