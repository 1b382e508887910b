//! Verification campaigns for the extremal statements and property suites
//! for the supporting inequalities, with reports in a key/value text form.
//!
//! Campaigns run on the current rayon pool; results are sorted before they
//! are reported, so the worker count never changes a report.

mod campaign;
mod corpus;
pub mod report;
mod suites;

use std::fmt;
use std::str::FromStr;

pub use campaign::{
    expected_extremal, verify, verify_factor_extremal, verify_size_extremal,
    verify_spectral_extremal, CampaignConfig, Expectation,
};
pub use corpus::{Corpus, CorpusSpec};
pub use report::{ExtremalValue, Status, VerificationReport, Witness, WitnessEntry};
pub use suites::{run_property_suites, SuiteConfig};

use crate::{Error, Result};

/// Statements the harness knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Maximum size of a non-`[a,b]`-covered graph.
    Main0,
    /// Maximum spectral radius of a non-`[a,b]`-covered graph.
    Main1,
    /// Maximum size of a graph without an `[a,b]`-factor.
    HaoLiSize,
    /// Maximum spectral radius of a graph without an `[a,b]`-factor.
    HaoLiSpectral,
    /// Spectral radius against the minimum-degree bound.
    Lemma21,
    /// Large spectral radius and minimum degree force few missing edges.
    Lemma22,
    /// Edge counts of joins of a clique with a union of cliques.
    Lemma23,
    /// `epsilon(S,T) <= |S|` when `a < b`.
    Lemma32,
    /// Minimum degree and few missing edges force `[a,b]`-covered.
    Lemma33,
}

impl TheoremId {
    pub const CAMPAIGNS: [TheoremId; 4] = [
        TheoremId::Main0,
        TheoremId::Main1,
        TheoremId::HaoLiSize,
        TheoremId::HaoLiSpectral,
    ];

    pub const SUITES: [TheoremId; 5] = [
        TheoremId::Lemma21,
        TheoremId::Lemma22,
        TheoremId::Lemma23,
        TheoremId::Lemma32,
        TheoremId::Lemma33,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Main0 => "main0",
            TheoremId::Main1 => "main1",
            TheoremId::HaoLiSize => "hao_li_size",
            TheoremId::HaoLiSpectral => "hao_li_spectral",
            TheoremId::Lemma21 => "lemma21",
            TheoremId::Lemma22 => "lemma22",
            TheoremId::Lemma23 => "lemma23",
            TheoremId::Lemma32 => "lemma32",
            TheoremId::Lemma33 => "lemma33",
        }
    }

    pub fn is_suite(self) -> bool {
        TheoremId::SUITES.contains(&self)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Accepts both `hao_li_size` and `hao-li-size`.
impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        let norm = s.replace('-', "_");
        TheoremId::CAMPAIGNS
            .into_iter()
            .chain(TheoremId::SUITES)
            .find(|t| t.as_str() == norm)
            .ok_or_else(|| Error::invalid(format!("unknown theorem or suite id {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_ids() {
        for t in TheoremId::CAMPAIGNS.into_iter().chain(TheoremId::SUITES) {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert_eq!(
            "hao-li-spectral".parse::<TheoremId>().unwrap(),
            TheoremId::HaoLiSpectral
        );
        assert!("lemma99".parse::<TheoremId>().is_err());
        assert!(TheoremId::Lemma33.is_suite());
        assert!(!TheoremId::Main1.is_suite());
    }
}
