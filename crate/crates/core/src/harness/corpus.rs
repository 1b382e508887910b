//! Corpus selection and coverage checks.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::enumerate::{self, CanonicalForm, MAX_ALL_ORDER};
use crate::graph::Graph;
use crate::{Error, Result};

/// Which graphs a run examines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusSpec {
    /// `all` up to order 8, otherwise `dense` with the default budget.
    Auto,
    /// Every class of the given order.
    All,
    /// Every class of order at most the given order (property suites).
    AllUpTo,
    /// Classes with at most `k` missing edges; `None` picks the smallest
    /// budget that covers the run.
    Dense(Option<usize>),
    /// graph6 lines from a file.
    File(PathBuf),
}

impl FromStr for CorpusSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<CorpusSpec> {
        let bad = || {
            Error::invalid(format!(
                "unknown corpus {s:?}; expected auto, all, all-upto, dense[:K] or file:PATH"
            ))
        };
        match s {
            "auto" => Ok(CorpusSpec::Auto),
            "all" => Ok(CorpusSpec::All),
            "all-upto" => Ok(CorpusSpec::AllUpTo),
            "dense" => Ok(CorpusSpec::Dense(None)),
            _ => {
                if let Some(k) = s.strip_prefix("dense:") {
                    let k = k.parse().map_err(|_| bad())?;
                    Ok(CorpusSpec::Dense(Some(k)))
                } else if let Some(path) = s.strip_prefix("file:") {
                    if path.is_empty() {
                        return Err(bad());
                    }
                    Ok(CorpusSpec::File(PathBuf::from(path)))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSpec::Auto => f.write_str("auto"),
            CorpusSpec::All => f.write_str("all"),
            CorpusSpec::AllUpTo => f.write_str("all-upto"),
            CorpusSpec::Dense(None) => f.write_str("dense"),
            CorpusSpec::Dense(Some(k)) => write!(f, "dense:{k}"),
            CorpusSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Canonically labelled graphs, one per isomorphism class, sorted by
/// canonical form.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub graphs: Vec<(CanonicalForm, Graph)>,
    /// Resolved specification, e.g. `dense:8`.
    pub label: String,
    pub scope: String,
}

pub(crate) fn canonical(g: &Graph) -> Result<CanonicalForm> {
    enumerate::canonical_form_capped(g, 64)
}

fn canonicalise(graphs: Vec<Graph>) -> Result<Vec<(CanonicalForm, Graph)>> {
    let forms: Vec<CanonicalForm> = graphs.par_iter().map(canonical).collect::<Result<_>>()?;
    let map: BTreeMap<CanonicalForm, ()> = forms.into_iter().map(|f| (f, ())).collect();
    Ok(map
        .into_keys()
        .map(|f| {
            let g = f.graph();
            (f, g)
        })
        .collect())
}

pub(crate) fn read_file(path: &PathBuf, order: Option<usize>) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, g) in enumerate::ingest_graph6_path(path)?.enumerate() {
        let g = g?;
        if let Some(n) = order {
            if g.order() != n {
                return Err(Error::invalid(format!(
                    "{}: graph {} has order {}, expected {n}",
                    path.display(),
                    i + 1,
                    g.order()
                )));
            }
        }
        out.push(g);
    }
    Ok(out)
}

fn dense_scope(k: usize) -> String {
    format!("dense candidates only: complement edges <= {k}")
}

/// Corpus for a campaign at order `n` that must contain every class with at
/// most `required` missing edges.
pub(crate) fn campaign_corpus(spec: &CorpusSpec, n: usize, required: usize) -> Result<Corpus> {
    let spec = match spec {
        CorpusSpec::Auto if n <= MAX_ALL_ORDER => CorpusSpec::All,
        CorpusSpec::Auto => CorpusSpec::Dense(None),
        other => other.clone(),
    };
    match spec {
        CorpusSpec::All => Ok(Corpus {
            graphs: canonicalise(enumerate::enumerate_all(n)?)?,
            label: "all".into(),
            scope: "exhaustive".into(),
        }),
        CorpusSpec::Dense(k) => {
            let k = k.unwrap_or(required);
            if k < required {
                return Err(Error::CorpusInsufficient(format!(
                    "complement budget {k} is below the {required} needed to reach the extremal edge count"
                )));
            }
            Ok(Corpus {
                graphs: canonicalise(enumerate::enumerate_dense_candidates(n, k)?)?,
                label: format!("dense:{k}"),
                scope: dense_scope(k),
            })
        }
        CorpusSpec::File(path) => {
            let graphs = canonicalise(read_file(&path, Some(n))?)?;
            let needed = enumerate::enumerate_dense_candidates(n, required)?;
            for g in needed {
                let form = canonical(&g)?;
                if graphs.binary_search_by(|(f, _)| f.cmp(&form)).is_err() {
                    return Err(Error::CorpusInsufficient(format!(
                        "{} lacks {form}, which has {} missing edges (at most {required} must be covered)",
                        path.display(),
                        enumerate::complement_size(&g)
                    )));
                }
            }
            Ok(Corpus {
                graphs,
                label: format!("file:{}", path.display()),
                scope: format!(
                    "file corpus; contains every class with complement edges <= {required}"
                ),
            })
        }
        CorpusSpec::AllUpTo => Err(Error::invalid(
            "all-upto is only available to property suites",
        )),
        CorpusSpec::Auto => unreachable!("resolved above"),
    }
}

/// Corpus for property suites; no coverage requirement.
pub(crate) fn suite_corpus(spec: &CorpusSpec, n: Option<usize>, a: usize) -> Result<Corpus> {
    let need_n = || n.ok_or_else(|| Error::invalid(format!("corpus {spec} needs an order")));
    match spec {
        CorpusSpec::File(path) => Ok(Corpus {
            graphs: canonicalise(read_file(path, n)?)?,
            label: spec.to_string(),
            scope: "file corpus".into(),
        }),
        CorpusSpec::AllUpTo => {
            let n = need_n()?;
            let mut graphs = Vec::new();
            for m in 0..=n {
                graphs.extend(enumerate::enumerate_all(m)?);
            }
            Ok(Corpus {
                graphs: canonicalise(graphs)?,
                label: "all-upto".into(),
                scope: format!("exhaustive over orders 0..={n}"),
            })
        }
        CorpusSpec::Auto | CorpusSpec::Dense(None) => {
            let n = need_n()?;
            let spec = if *spec == CorpusSpec::Auto && n <= MAX_ALL_ORDER {
                CorpusSpec::All
            } else {
                CorpusSpec::Dense(Some(n.saturating_sub(a)))
            };
            campaign_corpus(&spec, n, 0)
        }
        CorpusSpec::All | CorpusSpec::Dense(Some(_)) => campaign_corpus(spec, need_n()?, 0),
    }
}
