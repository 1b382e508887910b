//! Size and spectral extremal campaigns.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::covered;
use crate::enumerate::CanonicalForm;
use crate::factor::{self, DegreeSpec, FactorVerdict};
use crate::graph::families::{h_graph, h_partition};
use crate::graph::Graph;
use crate::spectral::{self, RhoOrdering, SpectralResult};
use crate::{graph6, Error, Result};

use super::corpus::{campaign_corpus, canonical, Corpus, CorpusSpec};
use super::report::{ExtremalValue, Status, VerificationReport, Witness, WitnessEntry};
use super::TheoremId;

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignConfig {
    pub corpus: CorpusSpec,
    /// Residual tolerance for spectral radii.
    pub tol: f64,
}

impl Default for CampaignConfig {
    fn default() -> CampaignConfig {
        CampaignConfig {
            corpus: CorpusSpec::Auto,
            tol: spectral::DEFAULT_COMPARE_TOL,
        }
    }
}

/// Predicted extremal value and graphs for one parameter choice.
#[derive(Clone, Debug)]
pub struct Expectation {
    /// Maximum number of edges.
    pub edges: usize,
    /// All graphs attaining `edges`.
    pub size_extremal: Vec<Graph>,
    /// The unique spectral maximiser.
    pub spectral_extremal: Graph,
    /// Parameter `gamma` of the spectral maximiser `H(n, gamma)`.
    pub gamma: usize,
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Checks the hypotheses of `theorem` at `(n, a, b)` and returns the
/// predicted extremal graphs.
pub fn expected_extremal(theorem: TheoremId, n: usize, a: usize, b: usize) -> Result<Expectation> {
    if a == 0 || a > b {
        return Err(Error::invalid(format!("need 1 <= a <= b, got a={a} b={b}")));
    }
    if a == b && n * a % 2 == 1 {
        return Err(Error::invalid(format!(
            "n*a must be even when a = b (n={n}, a={a}); no statement to check"
        )));
    }
    match theorem {
        TheoremId::Main0 | TheoremId::Main1 => {
            if b >= 2 {
                if n < 3 * a + 4 {
                    return Err(Error::invalid(format!(
                        "b >= 2 requires n >= 3a+4 = {}, got n={n}",
                        3 * a + 4
                    )));
                }
                let h = h_graph(n, a)?;
                Ok(Expectation {
                    edges: binom2(n - 1) + a - 1,
                    size_extremal: vec![h.clone()],
                    spectral_extremal: h,
                    gamma: a,
                })
            } else {
                if n < 4 {
                    return Err(Error::invalid(format!(
                        "a = b = 1 requires n >= 4, got n={n}"
                    )));
                }
                let h = h_graph(n, 3)?;
                let mut size_extremal = vec![h.clone()];
                if n == 6 {
                    size_extremal.push(Graph::complete(3).join(&Graph::empty(3)));
                }
                Ok(Expectation {
                    edges: binom2(n - 1) + 2,
                    size_extremal,
                    spectral_extremal: h,
                    gamma: 3,
                })
            }
        }
        TheoremId::HaoLiSize | TheoremId::HaoLiSpectral => {
            if n < a + 1 {
                return Err(Error::invalid(format!(
                    "requires n >= a+1 = {}, got n={n}",
                    a + 1
                )));
            }
            let h = h_graph(n, a)?;
            let mut size_extremal = vec![h.clone()];
            if (a * b == 1 || a * b == 2) && n == 4 {
                size_extremal.push(crate::graph::families::star(3));
            }
            if a == 2 && b == 2 && n == 5 {
                size_extremal.push(Graph::complete(2).join(&Graph::empty(3)));
            }
            Ok(Expectation {
                edges: binom2(n - 1) + a - 1,
                size_extremal,
                spectral_extremal: h,
                gamma: a,
            })
        }
        other => Err(Error::invalid(format!(
            "{other} is a property suite, not a campaign"
        ))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Property {
    NotCovered,
    NoFactor,
}

/// A certificate that `g` has the property, or `None`.
fn obstruction(g: &Graph, a: usize, b: usize, property: Property) -> Result<Option<Witness>> {
    match property {
        Property::NotCovered => {
            let verdict = covered::is_ab_covered_structural(g, a, b)?;
            Ok(verdict.structural_witness().map(Witness::from))
        }
        Property::NoFactor => {
            let spec = DegreeSpec::uniform(g.order(), a, b)?;
            Ok(match factor::has_gf_factor(g, &spec)? {
                FactorVerdict::Exists => None,
                FactorVerdict::Deficient(c) => Some(Witness::Deficiency {
                    s: c.s,
                    t: c.t,
                    value: c.value,
                }),
            })
        }
    }
}

fn forms(graphs: &[Graph]) -> Result<Vec<String>> {
    let mut out: Vec<String> = graphs
        .iter()
        .map(|g| canonical(g).map(|f| f.as_str().to_string()))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

fn property_name(property: Property) -> &'static str {
    match property {
        Property::NotCovered => "not [a,b]-covered",
        Property::NoFactor => "without an [a,b]-factor",
    }
}

struct Draft {
    theorem: TheoremId,
    n: usize,
    a: usize,
    b: usize,
    corpus: Corpus,
    evaluated: usize,
    extremal_value: ExtremalValue,
    extremal_set: Vec<String>,
    expected_value: ExtremalValue,
    expected_set: Vec<String>,
    extremal_witnesses: Vec<WitnessEntry>,
    counterexamples: Vec<WitnessEntry>,
    notes: Vec<String>,
    value_ok: bool,
    started: Instant,
}

impl Draft {
    fn finish(mut self) -> VerificationReport {
        self.counterexamples.sort_by(|x, y| x.graph6.cmp(&y.graph6));
        self.extremal_witnesses
            .sort_by(|x, y| x.graph6.cmp(&y.graph6));
        let pass = self.counterexamples.is_empty()
            && self.value_ok
            && self.extremal_set == self.expected_set;
        VerificationReport {
            theorem: self.theorem,
            n: Some(self.n),
            a: Some(self.a),
            b: Some(self.b),
            corpus_size: self.corpus.graphs.len(),
            corpus: self.corpus.label,
            scope: self.corpus.scope,
            evaluated: self.evaluated,
            extremal_value: self.extremal_value,
            extremal_set: self.extremal_set,
            expected_value: self.expected_value,
            expected_set: self.expected_set,
            extremal_witnesses: self.extremal_witnesses,
            counterexamples: self.counterexamples,
            notes: self.notes,
            status: if pass { Status::Pass } else { Status::Fail },
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

/// Runs the campaign for any of the four extremal statements.
pub fn verify(
    theorem: TheoremId,
    n: usize,
    a: usize,
    b: usize,
    config: &CampaignConfig,
) -> Result<VerificationReport> {
    match theorem {
        TheoremId::Main0 => verify_size_extremal(n, a, b, config),
        TheoremId::Main1 => verify_spectral_extremal(n, a, b, config),
        TheoremId::HaoLiSize => verify_factor_extremal(n, a, b, config, false),
        TheoremId::HaoLiSpectral => verify_factor_extremal(n, a, b, config, true),
        other => Err(Error::invalid(format!(
            "{other} is a property suite; run it as a suite"
        ))),
    }
}

/// Maximum size over non-`[a,b]`-covered graphs of order `n`.
pub fn verify_size_extremal(
    n: usize,
    a: usize,
    b: usize,
    config: &CampaignConfig,
) -> Result<VerificationReport> {
    size_campaign(TheoremId::Main0, n, a, b, Property::NotCovered, config)
}

/// Maximum spectral radius over non-`[a,b]`-covered graphs of order `n`.
pub fn verify_spectral_extremal(
    n: usize,
    a: usize,
    b: usize,
    config: &CampaignConfig,
) -> Result<VerificationReport> {
    spectral_campaign(TheoremId::Main1, n, a, b, Property::NotCovered, config)
}

/// The same campaigns over graphs without an `[a,b]`-factor.
pub fn verify_factor_extremal(
    n: usize,
    a: usize,
    b: usize,
    config: &CampaignConfig,
    spectral: bool,
) -> Result<VerificationReport> {
    if spectral {
        spectral_campaign(
            TheoremId::HaoLiSpectral,
            n,
            a,
            b,
            Property::NoFactor,
            config,
        )
    } else {
        size_campaign(TheoremId::HaoLiSize, n, a, b, Property::NoFactor, config)
    }
}

/// Scans edge-count levels from the top. Every level at or above the
/// predicted maximum is examined in full; below it the scan stops at the
/// first level holding a graph with the property.
fn size_campaign(
    theorem: TheoremId,
    n: usize,
    a: usize,
    b: usize,
    property: Property,
    config: &CampaignConfig,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let expected = expected_extremal(theorem, n, a, b)?;
    let corpus = campaign_corpus(&config.corpus, n, binom2(n) - expected.edges)?;
    let expected_set = forms(&expected.size_extremal)?;

    let mut levels: BTreeMap<usize, Vec<&(CanonicalForm, Graph)>> = BTreeMap::new();
    for entry in &corpus.graphs {
        levels.entry(entry.1.size()).or_default().push(entry);
    }

    let mut evaluated = 0;
    let mut top: Option<(usize, Vec<WitnessEntry>)> = None;
    let mut counterexamples = Vec::new();
    for (&edges, graphs) in levels.iter().rev() {
        if edges < expected.edges && top.is_some() {
            break;
        }
        let found: Vec<Option<Witness>> = graphs
            .par_iter()
            .map(|(_, g)| obstruction(g, a, b, property))
            .collect::<Result<_>>()?;
        evaluated += graphs.len();
        let hits: Vec<WitnessEntry> = graphs
            .iter()
            .zip(found)
            .filter_map(|((_, g), w)| w.map(|w| WitnessEntry::new(g, w)))
            .collect();
        if hits.is_empty() {
            continue;
        }
        if edges >= expected.edges {
            counterexamples.extend(
                hits.iter()
                    .filter(|h| {
                        edges > expected.edges || expected_set.binary_search(&h.graph6).is_err()
                    })
                    .cloned(),
            );
        }
        if top.is_none() {
            top = Some((edges, hits));
        }
    }

    let mut notes = Vec::new();
    let (extremal_value, extremal_set, extremal_witnesses) = match top {
        Some((edges, hits)) => {
            let set = hits.iter().map(|h| h.graph6.clone()).collect();
            (ExtremalValue::Int(edges as i64), set, hits)
        }
        None => {
            notes.push(format!(
                "no graph in the corpus is {}",
                property_name(property)
            ));
            (ExtremalValue::None, Vec::new(), Vec::new())
        }
    };
    let mut extremal_set: Vec<String> = extremal_set;
    extremal_set.sort();
    for form in &expected_set {
        if extremal_set.binary_search(form).is_err() {
            notes.push(format!(
                "predicted extremal graph {form} is not {} at the maximum",
                property_name(property)
            ));
        }
    }
    let expected_value = ExtremalValue::Int(expected.edges as i64);
    Ok(Draft {
        theorem,
        n,
        a,
        b,
        corpus,
        evaluated,
        value_ok: extremal_value == expected_value,
        extremal_value,
        extremal_set,
        expected_value,
        expected_set,
        extremal_witnesses,
        counterexamples,
        notes,
        started,
    }
    .finish())
}

/// Sorts the corpus by spectral radius and examines graphs from the top
/// until the first one with the property, then every graph whose enclosure
/// reaches that graph's lower bound. Graphs below are certifiably smaller.
fn spectral_campaign(
    theorem: TheoremId,
    n: usize,
    a: usize,
    b: usize,
    property: Property,
    config: &CampaignConfig,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let expected = expected_extremal(theorem, n, a, b)?;
    let corpus = campaign_corpus(
        &config.corpus,
        n,
        binom2(n) - expected.spectral_extremal.size(),
    )?;
    let expected_form = canonical(&expected.spectral_extremal)?;
    let quotient =
        spectral::quotient_matrix(&expected.spectral_extremal, &h_partition(n, expected.gamma))?;
    let expected_rho = spectral::quotient_spectral_radius(&quotient, spectral::QUOTIENT_TOL)?;

    let radii: Vec<SpectralResult> = corpus
        .graphs
        .par_iter()
        .map(|(_, g)| spectral::spectral_radius(g, config.tol))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..radii.len()).collect();
    order.sort_by(|&i, &j| {
        radii[j]
            .rho
            .total_cmp(&radii[i].rho)
            .then_with(|| corpus.graphs[i].0.cmp(&corpus.graphs[j].0))
    });

    let mut evaluated = 0;
    let mut notes = Vec::new();
    let mut leader: Option<(usize, WitnessEntry)> = None;
    let mut ties: Vec<WitnessEntry> = Vec::new();
    let mut next_below: Option<usize> = None;
    for &i in &order {
        if let Some((m, _)) = &leader {
            if radii[i].enclosure().1 < radii[*m].enclosure().0 {
                next_below = Some(i);
                break;
            }
        }
        let g = &corpus.graphs[i].1;
        evaluated += 1;
        let Some(w) = obstruction(g, a, b, property)? else {
            continue;
        };
        let entry = WitnessEntry::new(g, w);
        match &leader {
            None => leader = Some((i, entry)),
            Some((m, _)) => {
                let cmp = spectral::compare_results(&radii[*m], &radii[i]);
                if cmp != RhoOrdering::Greater {
                    notes.push(format!(
                        "spectral radii of {} and {} are indistinguishable at tol {:e}; tighten the tolerance",
                        corpus.graphs[*m].0, corpus.graphs[i].0, config.tol
                    ));
                    ties.push(entry);
                }
            }
        }
    }

    let mut counterexamples = Vec::new();
    let (extremal_value, mut extremal_set, mut extremal_witnesses, value_ok) = match leader {
        Some((m, entry)) => {
            let (lo, hi) = radii[m].enclosure();
            let value_ok = lo - 1e-12 <= expected_rho && expected_rho <= hi + 1e-12;
            if !value_ok {
                notes.push(format!(
                    "predicted spectral radius {expected_rho:.12} lies outside the enclosure [{lo:.12}, {hi:.12}]"
                ));
            }
            if corpus.graphs[m].0 != expected_form {
                counterexamples.push(entry.clone());
            }
            let gap = match next_below {
                Some(j) => lo - radii[j].enclosure().1,
                None => f64::INFINITY,
            };
            notes.push(format!(
                "certified gap to every other graph below the maximum: {gap:.3e}"
            ));
            let mut set = vec![entry.graph6.clone()];
            set.extend(ties.iter().map(|t| t.graph6.clone()));
            let mut witnesses = vec![entry];
            witnesses.extend(ties);
            (ExtremalValue::Real(radii[m].rho), set, witnesses, value_ok)
        }
        None => {
            notes.push(format!(
                "no graph in the corpus is {}",
                property_name(property)
            ));
            (ExtremalValue::None, Vec::new(), Vec::new(), false)
        }
    };
    extremal_set.sort();
    extremal_witnesses.sort_by(|x, y| x.graph6.cmp(&y.graph6));
    if extremal_set
        .binary_search(&expected_form.as_str().to_string())
        .is_err()
    {
        notes.push(format!(
            "predicted maximiser {expected_form} ({}) is not the certified maximum",
            graph6::encode(&expected.spectral_extremal)
        ));
    }
    Ok(Draft {
        theorem,
        n,
        a,
        b,
        corpus,
        evaluated,
        extremal_value,
        extremal_set,
        expected_value: ExtremalValue::Real(expected_rho),
        expected_set: vec![expected_form.as_str().to_string()],
        extremal_witnesses,
        counterexamples,
        notes,
        value_ok,
        started,
    }
    .finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::star;

    #[test]
    fn hypotheses_enforced() {
        assert!(expected_extremal(TheoremId::Main0, 7, 1, 1).is_err()); // parity
        assert!(expected_extremal(TheoremId::Main0, 9, 2, 3).is_err()); // n < 3a+4
        assert!(expected_extremal(TheoremId::Main0, 2, 1, 1).is_err()); // n < 4
        assert!(expected_extremal(TheoremId::HaoLiSize, 2, 2, 3).is_err());
        assert!(expected_extremal(TheoremId::Lemma21, 6, 1, 1).is_err());
        let e = expected_extremal(TheoremId::Main0, 6, 1, 1).unwrap();
        assert_eq!(e.edges, 12);
        assert_eq!(e.size_extremal.len(), 2);
        let e = expected_extremal(TheoremId::HaoLiSize, 4, 1, 2).unwrap();
        assert_eq!(e.edges, 3);
        assert!(e.size_extremal.contains(&star(3)));
    }

    #[test]
    fn small_size_campaign() {
        let r = verify_size_extremal(6, 1, 1, &CampaignConfig::default()).unwrap();
        assert_eq!(r.extremal_value, ExtremalValue::Int(12));
        assert_eq!(r.extremal_set.len(), 2);
        assert!(r.passed(), "{}", r.to_text());
        r.replay_witnesses().unwrap();
    }

    #[test]
    fn small_spectral_campaign() {
        let r = verify_spectral_extremal(6, 1, 1, &CampaignConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(
            r.extremal_set,
            vec![canonical(&h_graph(6, 3).unwrap())
                .unwrap()
                .as_str()
                .to_string()]
        );
    }
}
