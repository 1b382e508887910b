//! Property suites: each checks one inequality over a corpus (or over
//! random instances) and reports the tightest margin seen.

use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::covered::{self, epsilon_masks};
use crate::graph::Graph;
use crate::scan::PairScan;
use crate::{graph6, spectral, Error, Result};

use super::corpus::{suite_corpus, Corpus, CorpusSpec};
use super::report::{ExtremalValue, Status, VerificationReport, Witness, WitnessEntry};
use super::TheoremId;

/// Most graphs listed as attaining a suite's tightest margin.
const MAX_LISTED: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub corpus: CorpusSpec,
    /// Order for generated corpora.
    pub n: Option<usize>,
    pub a: usize,
    pub b: usize,
    pub tol: f64,
    /// Seed and instance count for the random clique-join suite.
    pub seed: u64,
    pub random_instances: usize,
    /// Largest order used by the random clique-join suite.
    pub random_max_order: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            corpus: CorpusSpec::Auto,
            n: None,
            a: 1,
            b: 2,
            tol: spectral::DEFAULT_TOL,
            seed: 0x5eed,
            random_instances: 1000,
            random_max_order: 40,
        }
    }
}

/// Runs each named suite and returns one report per suite, in order.
pub fn run_property_suites(
    names: &[TheoremId],
    config: &SuiteConfig,
) -> Result<Vec<VerificationReport>> {
    if names.is_empty() {
        return Err(Error::invalid("no property suite named"));
    }
    if let Some(t) = names.iter().find(|t| !t.is_suite()) {
        return Err(Error::invalid(format!(
            "{t} is a campaign, not a property suite"
        )));
    }
    if config.a == 0 || config.a > config.b {
        return Err(Error::invalid(format!(
            "need 1 <= a <= b, got a={} b={}",
            config.a, config.b
        )));
    }
    let needs_corpus = names.iter().any(|t| *t != TheoremId::Lemma23);
    let corpus = if needs_corpus {
        Some(suite_corpus(&config.corpus, config.n, config.a)?)
    } else {
        None
    };
    names
        .iter()
        .map(|&t| {
            let started = Instant::now();
            let outcome = match t {
                TheoremId::Lemma21 => lemma21(corpus.as_ref().expect("corpus"), config)?,
                TheoremId::Lemma22 => lemma22(corpus.as_ref().expect("corpus"), config)?,
                TheoremId::Lemma23 => lemma23(config)?,
                TheoremId::Lemma32 => lemma32(corpus.as_ref().expect("corpus"), config)?,
                TheoremId::Lemma33 => lemma33(corpus.as_ref().expect("corpus"), config)?,
                _ => unreachable!("checked above"),
            };
            Ok(outcome.into_report(t, config, started))
        })
        .collect()
}

/// Per-suite result before it becomes a report.
struct Outcome {
    corpus: String,
    scope: String,
    corpus_size: usize,
    evaluated: usize,
    margin: ExtremalValue,
    tight: Vec<String>,
    violations: Vec<WitnessEntry>,
    notes: Vec<String>,
}

impl Outcome {
    fn over(corpus: &Corpus) -> Outcome {
        Outcome {
            corpus: corpus.label.clone(),
            scope: corpus.scope.clone(),
            corpus_size: corpus.graphs.len(),
            evaluated: 0,
            margin: ExtremalValue::None,
            tight: Vec::new(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn into_report(
        mut self,
        theorem: TheoremId,
        config: &SuiteConfig,
        started: Instant,
    ) -> VerificationReport {
        self.tight.sort();
        self.tight.dedup();
        self.tight.truncate(MAX_LISTED);
        self.violations.sort_by(|x, y| x.graph6.cmp(&y.graph6));
        let uses_ab = matches!(theorem, TheoremId::Lemma32 | TheoremId::Lemma33);
        VerificationReport {
            theorem,
            n: config.n,
            a: uses_ab.then_some(config.a),
            b: uses_ab.then_some(config.b),
            corpus: self.corpus,
            scope: self.scope,
            corpus_size: self.corpus_size,
            evaluated: self.evaluated,
            extremal_value: self.margin,
            extremal_set: self.tight,
            expected_value: ExtremalValue::None,
            expected_set: Vec::new(),
            extremal_witnesses: Vec::new(),
            status: if self.violations.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            counterexamples: self.violations,
            notes: self.notes,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }
}

/// Keeps the smallest margin and the graphs attaining it, up to `slack`.
fn tightest<T: PartialOrd + Copy>(
    items: &[(T, String)],
    slack: impl Fn(T, T) -> bool,
) -> Option<(T, Vec<String>)> {
    let min = items
        .iter()
        .map(|(m, _)| *m)
        .fold(None, |acc: Option<T>, m| match acc {
            Some(x) if x <= m => Some(x),
            _ => Some(m),
        })?;
    let tight = items
        .iter()
        .filter(|(m, _)| slack(*m, min))
        .map(|(_, g)| g.clone())
        .collect();
    Some((min, tight))
}

/// `rho(G) <= (delta-1)/2 + sqrt(2e - delta n + (delta+1)^2/4)` up to 1e-9.
fn lemma21(corpus: &Corpus, config: &SuiteConfig) -> Result<Outcome> {
    let rows: Vec<(f64, f64)> = corpus
        .graphs
        .par_iter()
        .map(|(_, g)| {
            Ok((
                spectral::spectral_radius(g, config.tol)?.rho,
                spectral::hong_nikiforov_bound(g)?,
            ))
        })
        .collect::<Result<_>>()?;
    let mut out = Outcome::over(corpus);
    out.evaluated = rows.len();
    let mut margins = Vec::new();
    for ((form, g), (rho, bound)) in corpus.graphs.iter().zip(rows) {
        if rho > bound + 1e-9 {
            out.violations.push(WitnessEntry::new(
                g,
                Witness::Violation(format!("rho={rho:.12} bound={bound:.12}")),
            ));
        }
        margins.push((bound - rho, form.as_str().to_string()));
    }
    if let Some((m, tight)) = tightest(&margins, |x, min| x <= min + 1e-9) {
        out.margin = ExtremalValue::Real(m);
        out.tight = tight;
    }
    Ok(out)
}

/// For every `a` in `1..=delta(G)`: `rho(G) >= n-2` forces
/// `e(complement) <= n - ceil(a/2) - 1`. A radius that cannot be separated
/// from `n-2` counts as meeting the hypothesis.
fn lemma22(corpus: &Corpus, config: &SuiteConfig) -> Result<Outcome> {
    let rows: Vec<Option<bool>> = corpus
        .graphs
        .par_iter()
        .map(|(_, g)| {
            if g.order() < 2 || g.min_degree() == 0 {
                return Ok(Some(false));
            }
            spectral::rho_at_least(g, g.order() as f64 - 2.0, config.tol)
        })
        .collect::<Result<_>>()?;
    let mut out = Outcome::over(corpus);
    out.evaluated = rows.len();
    let mut margins = Vec::new();
    let mut instances = 0;
    let mut unresolved = 0;
    for ((form, g), hyp) in corpus.graphs.iter().zip(rows) {
        if hyp == Some(false) {
            continue;
        }
        unresolved += usize::from(hyp.is_none());
        let n = g.order() as i64;
        let missing = crate::enumerate::complement_size(g) as i64;
        for a in 1..=g.min_degree() {
            instances += 1;
            let margin = n - a.div_ceil(2) as i64 - 1 - missing;
            if margin < 0 {
                out.violations.push(WitnessEntry::new(
                    g,
                    Witness::Violation(format!(
                        "a={a} delta={} complement_edges={missing} bound={} rho_at_least_n_minus_2={}",
                        g.min_degree(),
                        n - a.div_ceil(2) as i64 - 1,
                        if hyp.is_some() { "certain" } else { "unresolved" }
                    )),
                ));
            }
            margins.push((margin, form.as_str().to_string()));
        }
    }
    out.notes
        .push(format!("instances meeting the hypothesis: {instances}"));
    if unresolved > 0 {
        out.notes.push(format!(
            "graphs with rho unresolved against n-2: {unresolved}"
        ));
    }
    if let Some((m, tight)) = tightest(&margins, |x, min| x == min) {
        out.margin = ExtremalValue::Int(m);
        out.tight = tight;
    }
    Ok(out)
}

/// `e(K_s v (K_l1 u ... u K_lq)) <= e(K_s v (K_{n-s-q+1} u (q-1)K_1))` on
/// seeded random instances.
fn lemma23(config: &SuiteConfig) -> Result<Outcome> {
    if config.random_max_order == 0 {
        return Err(Error::invalid(
            "random instances need a positive maximum order",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Outcome {
        corpus: format!(
            "random:seed={},instances={},max_order={}",
            config.seed, config.random_instances, config.random_max_order
        ),
        scope: "random clique joins".into(),
        corpus_size: config.random_instances,
        evaluated: 0,
        margin: ExtremalValue::None,
        tight: Vec::new(),
        violations: Vec::new(),
        notes: Vec::new(),
    };
    let mut margins = Vec::new();
    for _ in 0..config.random_instances {
        let n = rng.gen_range(1..=config.random_max_order);
        let s = rng.gen_range(0..n);
        let rest = n - s;
        let q = rng.gen_range(1..=rest);
        let mut cuts: Vec<usize> = sample(&mut rng, rest - 1, q - 1)
            .into_iter()
            .map(|c| c + 1)
            .collect();
        cuts.sort_unstable();
        cuts.push(rest);
        let mut parts: Vec<usize> = cuts
            .iter()
            .scan(0, |prev, &c| {
                let len = c - *prev;
                *prev = c;
                Some(len)
            })
            .collect();
        parts.sort_unstable_by(|x, y| y.cmp(x));

        let union = parts.iter().fold(Graph::empty(0), |acc, &l| {
            acc.disjoint_union(&Graph::complete(l))
        });
        let lhs = Graph::complete(s).join(&union);
        let rhs = Graph::complete(s)
            .join(&Graph::complete(rest - q + 1).disjoint_union(&Graph::empty(q - 1)));
        out.evaluated += 1;
        let margin = rhs.size() as i64 - lhs.size() as i64;
        if margin < 0 {
            let sizes: Vec<String> = parts.iter().map(usize::to_string).collect();
            out.violations.push(WitnessEntry::new(
                &lhs,
                Witness::Violation(format!(
                    "s={s} parts={} lhs={} rhs={}",
                    sizes.join(","),
                    lhs.size(),
                    rhs.size()
                )),
            ));
        }
        margins.push((margin, graph6::encode(&lhs)));
    }
    if let Some((m, tight)) = tightest(&margins, |x, min| x == min) {
        out.margin = ExtremalValue::Int(m);
        out.tight = tight;
    }
    Ok(out)
}

/// `epsilon(S,T) <= |S|` for every disjoint pair when `a < b`.
fn lemma32(corpus: &Corpus, config: &SuiteConfig) -> Result<Outcome> {
    let (a, b) = (config.a, config.b);
    if a >= b {
        return Err(Error::invalid(format!(
            "the epsilon suite needs a < b, got a={a} b={b}"
        )));
    }
    // (smallest margin, first violating (S, T, epsilon))
    type Row = (i64, Option<(u64, u64, u8)>);
    let rows: Vec<Row> = corpus
        .graphs
        .par_iter()
        .map(|(_, g)| {
            g.require_mask_width("epsilon suite")?;
            if g.order() > covered::DEFAULT_MAX_SCAN_ORDER {
                return Err(Error::ResourceLimit(format!(
                    "epsilon suite scans 3^n pairs; order {} exceeds {}",
                    g.order(),
                    covered::DEFAULT_MAX_SCAN_ORDER
                )));
            }
            let mut min = i64::MAX;
            let mut bad = None;
            for (s, t) in PairScan::new(g.order()) {
                let eps = epsilon_masks(g, s, t, a, b);
                let margin = s.count_ones() as i64 - eps as i64;
                if margin < 0 && bad.is_none() {
                    bad = Some((s, t, eps));
                }
                min = min.min(margin);
            }
            Ok((min, bad))
        })
        .collect::<Result<_>>()?;
    let mut out = Outcome::over(corpus);
    out.evaluated = rows.len();
    let mut margins = Vec::new();
    for ((form, g), (min, bad)) in corpus.graphs.iter().zip(rows) {
        if let Some((s, t, eps)) = bad {
            out.violations.push(WitnessEntry::new(
                g,
                Witness::Violation(format!(
                    "s={} t={} epsilon={eps}",
                    crate::VertexSet::from_mask(s),
                    crate::VertexSet::from_mask(t)
                )),
            ));
        }
        margins.push((min, form.as_str().to_string()));
    }
    if let Some((m, tight)) = tightest(&margins, |x, min| x == min) {
        out.margin = ExtremalValue::Int(m);
        out.tight = tight;
    }
    Ok(out)
}

/// With `delta(G) >= a`, `n >= 3a+4` and `na` even when `a = b`: if
/// `b >= 2` and `e(complement) <= n - ceil(a/2) - 1`, or `a = 1`, `b >= 2`
/// and `e(complement) <= n - 1`, then `G` is `[a,b]`-covered.
fn lemma33(corpus: &Corpus, config: &SuiteConfig) -> Result<Outcome> {
    let (a, b) = (config.a, config.b);
    let applies = |g: &Graph| {
        let n = g.order();
        if g.min_degree() < a || n < 3 * a + 4 || (a == b && n * a % 2 == 1) {
            return false;
        }
        let missing = crate::enumerate::complement_size(g);
        let first = b >= 2 && missing + a.div_ceil(2) < n;
        let second = a == 1 && b >= 2 && missing < n;
        first || second
    };
    let rows: Vec<Option<Option<Witness>>> = corpus
        .graphs
        .par_iter()
        .map(|(_, g)| {
            if !applies(g) {
                return Ok(None);
            }
            let v = covered::is_ab_covered_structural(g, a, b)?;
            Ok(Some(v.structural_witness().map(Witness::from)))
        })
        .collect::<Result<_>>()?;
    let mut out = Outcome::over(corpus);
    out.evaluated = rows.iter().filter(|r| r.is_some()).count();
    for ((_, g), row) in corpus.graphs.iter().zip(rows) {
        if let Some(Some(w)) = row {
            out.violations.push(WitnessEntry::new(g, w));
        }
    }
    out.notes
        .push(format!("graphs meeting the hypotheses: {}", out.evaluated));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(corpus: &str, n: usize, a: usize, b: usize) -> SuiteConfig {
        SuiteConfig {
            corpus: corpus.parse().unwrap(),
            n: Some(n),
            a,
            b,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn small_suites_pass() {
        let names = [TheoremId::Lemma21, TheoremId::Lemma22, TheoremId::Lemma32];
        let reports = run_property_suites(&names, &config("all-upto", 5, 1, 2)).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.passed(), "{}", r.to_text());
        }
        assert_eq!(reports[2].extremal_value, ExtremalValue::Int(0));
    }

    #[test]
    fn random_suite_is_seeded() {
        let mut c = config("auto", 5, 1, 2);
        c.random_instances = 50;
        let r1 = run_property_suites(&[TheoremId::Lemma23], &c).unwrap();
        let r2 = run_property_suites(&[TheoremId::Lemma23], &c).unwrap();
        assert!(r1[0].passed());
        assert_eq!(r1[0].extremal_set, r2[0].extremal_set);
        assert_eq!(r1[0].evaluated, 50);
    }

    #[test]
    fn rejects_bad_requests() {
        assert!(run_property_suites(&[], &SuiteConfig::default()).is_err());
        assert!(run_property_suites(&[TheoremId::Main0], &SuiteConfig::default()).is_err());
        assert!(run_property_suites(&[TheoremId::Lemma32], &config("all", 4, 2, 2)).is_err());
    }

    #[test]
    fn covering_suite_small() {
        let r = run_property_suites(&[TheoremId::Lemma33], &config("dense:3", 10, 2, 2)).unwrap();
        assert!(r[0].passed(), "{}", r[0].to_text());
        assert!(r[0].evaluated > 0);
    }
}
