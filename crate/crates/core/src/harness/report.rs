//! Verification records and their key/value text form.
//!
//! A record is a block of `key = value` lines opened by
//! `record = verification` and closed by `end`:
//!
//! ```text
//! record = verification
//! theorem = main0
//! n = 6
//! a = 1
//! b = 1
//! corpus = all
//! scope = exhaustive
//! corpus_size = 156
//! evaluated = 7
//! extremal_value = 12
//! extremal_set = E?~w,E]~o
//! expected_value = 12
//! expected_set = E?~w,E]~o
//! extremal_witness = E?~w structural s=- t=0 theta=-1 epsilon=0
//! status = pass
//! elapsed_ms = 3
//! end
//! ```
//!
//! `extremal_witness`, `counterexample` and `note` may repeat; every other
//! key appears exactly once. Sets are comma-separated graph6 strings, `-`
//! when empty. Blank lines and `#` comments between records are ignored.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::covered::{self, StructuralWitness};
use crate::factor::{self, DegreeSpec};
use crate::graph::{Edge, Graph, VertexSet};
use crate::{graph6, Error, Result};

use super::TheoremId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtremalValue {
    None,
    Int(i64),
    Real(f64),
}

impl fmt::Display for ExtremalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalValue::None => f.write_str("none"),
            ExtremalValue::Int(v) => write!(f, "{v}"),
            ExtremalValue::Real(v) => {
                let text = format!("{v:.12}");
                // Values that round to zero print without a sign.
                match text.strip_prefix('-') {
                    Some(rest) if rest.bytes().all(|c| c == b'0' || c == b'.') => f.write_str(rest),
                    _ => f.write_str(&text),
                }
            }
        }
    }
}

impl FromStr for ExtremalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExtremalValue> {
        if s == "none" {
            return Ok(ExtremalValue::None);
        }
        let digits = s.strip_prefix('-').unwrap_or(s);
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            return s
                .parse()
                .map(ExtremalValue::Int)
                .map_err(|_| Error::parse(0, format!("integer out of range: {s}")));
        }
        s.parse()
            .map(ExtremalValue::Real)
            .map_err(|_| Error::parse(0, format!("not a value: {s:?}")))
    }
}

/// Certificate attached to a graph in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A pair `(S, T)` with `theta < epsilon`.
    Structural {
        s: VertexSet,
        t: VertexSet,
        theta: i64,
        epsilon: u8,
    },
    /// An edge contained in no factor.
    Edge(Edge),
    /// No edge to cover and no factor.
    NoFactor,
    /// A pair `(S, T)` with negative factor deficiency.
    Deficiency {
        s: VertexSet,
        t: VertexSet,
        value: i64,
    },
    /// Free-form description of a property violation.
    Violation(String),
}

impl From<&StructuralWitness> for Witness {
    fn from(w: &StructuralWitness) -> Witness {
        Witness::Structural {
            s: w.s.clone(),
            t: w.t.clone(),
            theta: w.theta,
            epsilon: w.epsilon,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Structural {
                s,
                t,
                theta,
                epsilon,
            } => {
                write!(f, "structural s={s} t={t} theta={theta} epsilon={epsilon}")
            }
            Witness::Edge((u, v)) => write!(f, "edge {u}-{v}"),
            Witness::NoFactor => f.write_str("no-factor"),
            Witness::Deficiency { s, t, value } => {
                write!(f, "deficiency s={s} t={t} value={value}")
            }
            Witness::Violation(text) => write!(f, "violation {}", single_line(text)),
        }
    }
}

fn parse_set(s: &str) -> Result<VertexSet> {
    if s == "-" {
        return Ok(VertexSet::new());
    }
    s.split(',')
        .map(|v| {
            v.parse::<usize>()
                .ok()
                .filter(|&v| v < crate::graph::MAX_ORDER)
                .ok_or_else(|| Error::parse(0, format!("bad vertex {v:?}")))
        })
        .collect()
}

fn field<'a>(token: Option<&'a str>, key: &str) -> Result<&'a str> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::parse(0, format!("expected {key}=...")))
}

fn number<T: FromStr>(text: &str) -> Result<T> {
    text.parse()
        .map_err(|_| Error::parse(0, format!("bad number {text:?}")))
}

impl FromStr for Witness {
    type Err = Error;

    fn from_str(text: &str) -> Result<Witness> {
        let (kind, rest) = text.split_once(' ').unwrap_or((text, ""));
        let mut tokens = rest.split(' ');
        let end = |mut tokens: std::str::Split<'_, char>| match tokens.next() {
            None => Ok(()),
            Some(t) => Err(Error::parse(0, format!("unexpected token {t:?}"))),
        };
        let w = match kind {
            "structural" => {
                let s = parse_set(field(tokens.next(), "s")?)?;
                let t = parse_set(field(tokens.next(), "t")?)?;
                let theta = number(field(tokens.next(), "theta")?)?;
                let epsilon = number(field(tokens.next(), "epsilon")?)?;
                end(tokens)?;
                Witness::Structural {
                    s,
                    t,
                    theta,
                    epsilon,
                }
            }
            "edge" => {
                let (u, v) = rest
                    .split_once('-')
                    .ok_or_else(|| Error::parse(0, "expected edge u-v"))?;
                Witness::Edge((number(u)?, number(v)?))
            }
            "no-factor" if rest.is_empty() => Witness::NoFactor,
            "deficiency" => {
                let s = parse_set(field(tokens.next(), "s")?)?;
                let t = parse_set(field(tokens.next(), "t")?)?;
                let value = number(field(tokens.next(), "value")?)?;
                end(tokens)?;
                Witness::Deficiency { s, t, value }
            }
            "violation" => Witness::Violation(rest.to_string()),
            _ => return Err(Error::parse(0, format!("unknown witness {text:?}"))),
        };
        Ok(w)
    }
}

impl Witness {
    /// Rechecks the certificate against `g` for parameters `(a, b)`:
    /// structural and edge witnesses certify that `g` is not
    /// `[a,b]`-covered, deficiency witnesses that it has no `[a,b]`-factor.
    pub fn replay(&self, g: &Graph, a: usize, b: usize) -> Result<()> {
        let fail = |msg: String| {
            Err(Error::InvariantViolation(format!(
                "witness {self} rejected: {msg}"
            )))
        };
        match self {
            Witness::Structural {
                s,
                t,
                theta,
                epsilon,
            } => {
                let th = covered::theta(g, s, t, a, b)?;
                let ep = covered::epsilon(g, s, t, a, b)?;
                if th != *theta || ep != *epsilon {
                    return fail(format!("recomputed theta={th} epsilon={ep}"));
                }
                if th >= ep as i64 {
                    return fail("theta >= epsilon".to_string());
                }
            }
            Witness::Edge((u, v)) => {
                if *u >= g.order() || *v >= g.order() || !g.has_edge(*u, *v) {
                    return fail("not an edge".to_string());
                }
                if factor::has_factor_containing_edge(g, a, b, (*u, *v))? {
                    return fail("a factor contains the edge".to_string());
                }
            }
            Witness::NoFactor => {
                if g.size() > 0 || factor::has_ab_factor(g, a, b)? {
                    return fail("graph has edges or a factor".to_string());
                }
            }
            Witness::Deficiency { s, t, value } => {
                let spec = DegreeSpec::uniform(g.order(), a, b)?;
                let d = factor::lovasz_deficiency(g, &spec, s, t)?;
                if d != *value || d >= 0 {
                    return fail(format!("recomputed deficiency {d}"));
                }
            }
            Witness::Violation(_) => {
                return Err(Error::invalid(
                    "violation records carry no replayable certificate",
                ));
            }
        }
        Ok(())
    }
}

/// A graph with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessEntry {
    pub graph6: String,
    pub witness: Witness,
}

impl WitnessEntry {
    pub fn new(g: &Graph, witness: Witness) -> WitnessEntry {
        WitnessEntry {
            graph6: graph6::encode(g),
            witness,
        }
    }

    pub fn replay(&self, a: usize, b: usize) -> Result<()> {
        self.witness.replay(&graph6::parse(&self.graph6)?, a, b)
    }
}

impl fmt::Display for WitnessEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.graph6, self.witness)
    }
}

impl FromStr for WitnessEntry {
    type Err = Error;

    fn from_str(s: &str) -> Result<WitnessEntry> {
        let (g, w) = s
            .split_once(' ')
            .ok_or_else(|| Error::parse(0, "expected '<graph6> <witness>'"))?;
        graph6::parse(g)?;
        Ok(WitnessEntry {
            graph6: g.to_string(),
            witness: w.parse().map_err(|e| shift(e, g.len() + 1))?,
        })
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub n: Option<usize>,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub corpus: String,
    pub scope: String,
    pub corpus_size: usize,
    pub evaluated: usize,
    pub extremal_value: ExtremalValue,
    pub extremal_set: Vec<String>,
    pub expected_value: ExtremalValue,
    pub expected_set: Vec<String>,
    pub extremal_witnesses: Vec<WitnessEntry>,
    pub counterexamples: Vec<WitnessEntry>,
    pub notes: Vec<String>,
    pub status: Status,
    pub elapsed_ms: u64,
}

fn single_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn set_text(set: &[String]) -> String {
    if set.is_empty() {
        "-".to_string()
    } else {
        set.join(",")
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &dyn fmt::Display| {
            writeln!(out, "{k} = {v}").expect("writing to a String");
        };
        line("record", &"verification");
        line("theorem", &self.theorem.as_str());
        line("n", &opt(self.n));
        line("a", &opt(self.a));
        line("b", &opt(self.b));
        line("corpus", &single_line(&self.corpus));
        line("scope", &single_line(&self.scope));
        line("corpus_size", &self.corpus_size);
        line("evaluated", &self.evaluated);
        line("extremal_value", &self.extremal_value);
        line("extremal_set", &set_text(&self.extremal_set));
        line("expected_value", &self.expected_value);
        line("expected_set", &set_text(&self.expected_set));
        for w in &self.extremal_witnesses {
            line("extremal_witness", w);
        }
        for w in &self.counterexamples {
            line("counterexample", w);
        }
        for note in &self.notes {
            line("note", &single_line(note));
        }
        line("status", &self.status.as_str());
        line("elapsed_ms", &self.elapsed_ms);
        out.push_str("end\n");
        out
    }

    /// Replays every graph certificate in the record.
    pub fn replay_witnesses(&self) -> Result<()> {
        let (Some(a), Some(b)) = (self.a, self.b) else {
            return Ok(());
        };
        for entry in self.extremal_witnesses.iter().chain(&self.counterexamples) {
            if !matches!(entry.witness, Witness::Violation(_)) {
                entry.replay(a, b)?;
            }
        }
        Ok(())
    }
}

pub fn to_text(reports: &[VerificationReport]) -> String {
    reports
        .iter()
        .map(VerificationReport::to_text)
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Default)]
struct Draft {
    fields: std::collections::HashMap<&'static str, String>,
    extremal_witnesses: Vec<WitnessEntry>,
    counterexamples: Vec<WitnessEntry>,
    notes: Vec<String>,
}

const SINGLE_KEYS: [&str; 15] = [
    "theorem",
    "n",
    "a",
    "b",
    "corpus",
    "scope",
    "corpus_size",
    "evaluated",
    "extremal_value",
    "extremal_set",
    "expected_value",
    "expected_set",
    "status",
    "elapsed_ms",
    "record",
];

fn parse_status(v: &str) -> Result<Status> {
    match v {
        "pass" => Ok(Status::Pass),
        "fail" => Ok(Status::Fail),
        other => Err(Error::parse(0, format!("unknown status {other:?}"))),
    }
}

fn validate(key: &str, value: &str) -> Result<()> {
    match key {
        "theorem" => value.parse::<TheoremId>().map(drop),
        "n" | "a" | "b" => parse_opt(value).map(drop),
        "corpus_size" | "evaluated" | "elapsed_ms" => number::<u64>(value).map(drop),
        "extremal_value" | "expected_value" => value.parse::<ExtremalValue>().map(drop),
        "extremal_set" | "expected_set" => parse_set_field(value).map(drop),
        "status" => parse_status(value).map(drop),
        "record" => Err(Error::parse(0, "nested record")),
        _ => Ok(()),
    }
}

fn parse_opt(v: &str) -> Result<Option<usize>> {
    if v == "-" {
        Ok(None)
    } else {
        number(v).map(Some)
    }
}

fn parse_set_field(v: &str) -> Result<Vec<String>> {
    if v == "-" {
        return Ok(Vec::new());
    }
    let mut offset = 0;
    v.split(',')
        .map(|g| {
            graph6::parse(g).map_err(|e| shift(e, offset))?;
            offset += g.len() + 1;
            Ok(g.to_string())
        })
        .collect()
}

impl Draft {
    fn finish(mut self) -> Result<VerificationReport> {
        let mut take = |k: &str| {
            self.fields
                .remove(k)
                .ok_or_else(|| Error::parse(0, format!("record ends without {k}")))
        };
        let theorem: TheoremId = take("theorem")?.parse()?;
        let n = parse_opt(&take("n")?)?;
        let a = parse_opt(&take("a")?)?;
        let b = parse_opt(&take("b")?)?;
        let corpus = take("corpus")?;
        let scope = take("scope")?;
        let corpus_size = number(&take("corpus_size")?)?;
        let evaluated = number(&take("evaluated")?)?;
        let extremal_value = take("extremal_value")?.parse()?;
        let extremal_set = parse_set_field(&take("extremal_set")?)?;
        let expected_value = take("expected_value")?.parse()?;
        let expected_set = parse_set_field(&take("expected_set")?)?;
        let status = parse_status(&take("status")?)?;
        let elapsed_ms = number(&take("elapsed_ms")?)?;
        Ok(VerificationReport {
            theorem,
            n,
            a,
            b,
            corpus,
            scope,
            corpus_size,
            evaluated,
            extremal_value,
            extremal_set,
            expected_value,
            expected_set,
            extremal_witnesses: self.extremal_witnesses,
            counterexamples: self.counterexamples,
            notes: self.notes,
            status,
            elapsed_ms,
        })
    }
}

/// Parses every record in `text`. Errors name the 1-based line and the
/// byte offset within the value.
pub fn parse_reports(text: &str) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let mut draft: Option<(usize, Draft)> = None;
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let at = |e: Error| Error::Line {
            line,
            source: Box::new(e),
        };
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if draft.is_none() && (raw.trim().is_empty() || raw.starts_with('#')) {
            continue;
        }
        if raw == "end" {
            let (_, d) = draft
                .take()
                .ok_or_else(|| at(Error::parse(0, "'end' outside a record")))?;
            out.push(d.finish().map_err(at)?);
            continue;
        }
        let (key, value) = raw
            .split_once(" = ")
            .ok_or_else(|| at(Error::parse(0, "expected 'key = value'")))?;
        let voff = key.len() + 3;
        let at_value = |e: Error| at(shift(e, voff));
        match (&mut draft, key) {
            (None, "record") if value == "verification" => {
                let mut d = Draft::default();
                d.fields.insert("record", value.to_string());
                draft = Some((line, d));
            }
            (None, _) => return Err(at(Error::parse(0, "expected 'record = verification'"))),
            (Some((_, d)), "extremal_witness") => {
                d.extremal_witnesses.push(value.parse().map_err(at_value)?)
            }
            (Some((_, d)), "counterexample") => {
                d.counterexamples.push(value.parse().map_err(at_value)?)
            }
            (Some((_, d)), "note") => d.notes.push(value.to_string()),
            (Some((_, d)), key) => {
                let Some(k) = SINGLE_KEYS.iter().find(|k| **k == key) else {
                    return Err(at(Error::parse(0, format!("unknown key {key:?}"))));
                };
                validate(k, value).map_err(at_value)?;
                if d.fields.insert(k, value.to_string()).is_some() {
                    return Err(at(Error::parse(0, format!("duplicate key {key:?}"))));
                }
            }
        }
    }
    if let Some((start, _)) = draft {
        return Err(Error::Line {
            line: last.max(start),
            source: Box::new(Error::parse(
                0,
                format!("record opened on line {start} has no 'end'"),
            )),
        });
    }
    Ok(out)
}
