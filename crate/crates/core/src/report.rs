//! Verdicts, witnesses, search budgets and the report type shared by every
//! checker.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize, Serializer};

use crate::connective::Connective;
use crate::error::{Error, Result};
use crate::scalar::{q, Domain, UnitScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    HoldsOnDomain,
    Fails,
    Vacuous,
}

impl Verdict {
    fn rank(self) -> u8 {
        match self {
            Verdict::Fails => 0,
            Verdict::Vacuous => 1,
            Verdict::HoldsOnDomain => 2,
        }
    }

    /// Greatest lower bound in `FAILS < VACUOUS < HOLDS_ON_DOMAIN`.
    pub fn meet(self, other: Verdict) -> Verdict {
        if self.rank() <= other.rank() {
            self
        } else {
            other
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::HoldsOnDomain
    }

    pub fn fails(self) -> bool {
        self == Verdict::Fails
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HoldsOnDomain => "HOLDS_ON_DOMAIN",
            Verdict::Fails => "FAILS",
            Verdict::Vacuous => "VACUOUS",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One coordinate of a witness.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Datum {
    Scalar(UnitScalar),
    Label(String),
    Count(u64),
}

impl Datum {
    pub fn as_scalar(&self) -> Option<&UnitScalar> {
        match self {
            Datum::Scalar(s) => Some(s),
            _ => None,
        }
    }

    /// Decimal text form, as printed in text reports.
    pub fn text(&self) -> String {
        match self {
            Datum::Scalar(s) => s.to_decimal_string(),
            Datum::Label(l) => l.clone(),
            Datum::Count(n) => n.to_string(),
        }
    }
}

impl From<UnitScalar> for Datum {
    fn from(s: UnitScalar) -> Self {
        Datum::Scalar(s)
    }
}

impl From<&UnitScalar> for Datum {
    fn from(s: &UnitScalar) -> Self {
        Datum::Scalar(s.clone())
    }
}

impl Serialize for Datum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Datum::Scalar(s) => s.serialize(serializer),
            Datum::Label(l) => serializer.serialize_str(l),
            Datum::Count(n) => serializer.serialize_u64(*n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub inputs: Vec<Datum>,
    pub values: Vec<Datum>,
}

impl Witness {
    pub fn new(inputs: Vec<Datum>, values: Vec<Datum>) -> Self {
        Witness { inputs, values }
    }

    pub fn scalars(inputs: &[&UnitScalar], values: &[&UnitScalar]) -> Self {
        Witness {
            inputs: inputs.iter().map(|s| Datum::from(*s)).collect(),
            values: values.iter().map(|s| Datum::from(*s)).collect(),
        }
    }

    /// The inputs as scalars, when they all are.
    pub fn input_scalars(&self) -> Option<Vec<UnitScalar>> {
        self.inputs.iter().map(|d| d.as_scalar().cloned()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainInfo {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<u32>,
    pub size: usize,
}

impl DomainInfo {
    pub fn finite(kind: &str, size: usize) -> Self {
        DomainInfo {
            kind: kind.to_string(),
            resolution: None,
            size,
        }
    }
}

impl From<&Domain> for DomainInfo {
    fn from(d: &Domain) -> Self {
        DomainInfo {
            kind: match d.kind() {
                crate::scalar::DomainKind::Grid => "grid".into(),
                crate::scalar::DomainKind::Points => "points".into(),
            },
            resolution: d.resolution(),
            size: d.len(),
        }
    }
}

/// Limits for the existential searches and for the size of exhaustive loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Largest exponent tried in Archimedean searches.
    pub n_max: u32,
    /// Iteration cap for limit properties.
    pub iter_cap: u32,
    /// Threshold below which an exact trajectory counts as having reached 0.
    pub epsilon: UnitScalar,
    pub max_witnesses: usize,
    /// Largest tuple loop a single check will run.
    pub max_tuples: u64,
    /// Largest enumerated universe an implication sweep will run.
    pub max_universe: u64,
    /// Largest arity for n-ary aggregation conditions.
    pub arity_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            n_max: 64,
            iter_cap: 128,
            epsilon: q(1, 1024),
            max_witnesses: 256,
            max_tuples: 2_000_000,
            max_universe: 1_000_000,
            arity_cap: 3,
        }
    }
}

/// Partial budget used for overrides; absent fields keep their value.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetOverride {
    pub n_max: Option<u32>,
    pub iter_cap: Option<u32>,
    pub epsilon: Option<UnitScalar>,
    pub max_witnesses: Option<usize>,
    pub max_tuples: Option<u64>,
    pub max_universe: Option<u64>,
    pub arity_cap: Option<usize>,
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 || self.iter_cap < 1 {
            return Err(Error::Config(
                "n_max and iter_cap must be at least 1".into(),
            ));
        }
        if self.epsilon.is_zero() {
            return Err(Error::Config("epsilon must be positive".into()));
        }
        if self.max_witnesses < 1 || self.max_tuples < 1 || self.max_universe < 1 {
            return Err(Error::Config("budget limits must be positive".into()));
        }
        if self.arity_cap < 2 {
            return Err(Error::Config("arity cap must be at least 2".into()));
        }
        Ok(())
    }

    pub fn apply(&mut self, o: &BudgetOverride) {
        if let Some(v) = o.n_max {
            self.n_max = v;
        }
        if let Some(v) = o.iter_cap {
            self.iter_cap = v;
        }
        if let Some(v) = &o.epsilon {
            self.epsilon = v.clone();
        }
        if let Some(v) = o.max_witnesses {
            self.max_witnesses = v;
        }
        if let Some(v) = o.max_tuples {
            self.max_tuples = v;
        }
        if let Some(v) = o.max_universe {
            self.max_universe = v;
        }
        if let Some(v) = o.arity_cap {
            self.arity_cap = v;
        }
    }

    /// Applies a JSON override blob such as `{"n_max": 32}`.
    pub fn with_override_json(mut self, json: &str) -> Result<Self> {
        let o: BudgetOverride = serde_json::from_str(json).map_err(|e| Error::Parse {
            location: format!("budget override line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        self.apply(&o);
        self.validate()?;
        Ok(self)
    }

    /// Refuses loops larger than `max_tuples`.
    pub fn ensure_tuples(&self, what: &str, estimate: u128) -> Result<()> {
        if estimate > self.max_tuples as u128 {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                estimate,
                budget: self.max_tuples as u128,
            });
        }
        Ok(())
    }
}

/// The part of the budget a report actually used.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BudgetInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iter_cap: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<UnitScalar>,
    pub max_witnesses: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property_id: String,
    pub subject: String,
    pub verdict: Verdict,
    pub domain: DomainInfo,
    pub witnesses: Vec<Witness>,
    pub budget: BudgetInfo,
    pub stats: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "BTreeSet::is_empty")]
    pub tags: BTreeSet<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<PropertyReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<PropertyReport>,
}

impl PropertyReport {
    pub fn new(
        property_id: impl Into<String>,
        subject: impl Into<String>,
        domain: DomainInfo,
    ) -> Self {
        PropertyReport {
            property_id: property_id.into(),
            subject: subject.into(),
            verdict: Verdict::HoldsOnDomain,
            domain,
            witnesses: Vec::new(),
            budget: BudgetInfo::default(),
            stats: BTreeMap::new(),
            tags: BTreeSet::new(),
            checks: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn with_budget(mut self, budget: BudgetInfo) -> Self {
        self.budget = budget;
        self
    }

    pub fn tag(&mut self, tag: &str) {
        self.tags.insert(tag.to_string());
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.contains(tag)
    }

    pub fn stat(&self, key: &str) -> u64 {
        self.stats.get(key).copied().unwrap_or(0)
    }

    /// Adds a sub-check; its verdict participates in this report's verdict.
    pub fn push_check(&mut self, check: PropertyReport) {
        self.verdict = self.verdict.meet(check.verdict);
        self.checks.push(check);
    }

    pub fn push_diagnostic(&mut self, d: PropertyReport) {
        self.diagnostics.push(d);
    }

    pub fn check(&self, property_id: &str) -> Option<&PropertyReport> {
        self.checks.iter().find(|c| c.property_id == property_id)
    }

    pub fn diagnostic(&self, property_id: &str) -> Option<&PropertyReport> {
        self.diagnostics
            .iter()
            .find(|c| c.property_id == property_id)
    }

    /// Combines two partial reports on the same property: meet of verdicts,
    /// union of witnesses (sorted, capped), summed statistics, union of tags.
    pub fn merge(mut self, other: PropertyReport) -> PropertyReport {
        self.verdict = self.verdict.meet(other.verdict);
        let cap = self
            .budget
            .max_witnesses
            .max(other.budget.max_witnesses)
            .max(1);
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort();
        self.witnesses.dedup();
        self.witnesses.truncate(cap);
        for (k, v) in other.stats {
            *self.stats.entry(k).or_insert(0) += v;
        }
        self.tags.extend(other.tags);
        self.checks.extend(other.checks);
        self.checks
            .sort_by(|a, b| a.property_id.cmp(&b.property_id));
        self.diagnostics.extend(other.diagnostics);
        self.diagnostics
            .sort_by(|a, b| a.property_id.cmp(&b.property_id));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let _ = write!(
            out,
            "{pad}{} [{}]: {}",
            self.property_id, self.subject, self.verdict
        );
        let _ = write!(out, "  ({} {} points", self.domain.kind, self.domain.size);
        if let Some(n) = self.domain.resolution {
            let _ = write!(out, ", n={n}");
        }
        out.push(')');
        if !self.tags.is_empty() {
            let tags: Vec<&str> = self.tags.iter().map(String::as_str).collect();
            let _ = write!(out, "  tags: {}", tags.join(","));
        }
        out.push('\n');
        if !self.stats.is_empty() {
            let stats: Vec<String> = self.stats.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "{pad}  {}", stats.join(" "));
        }
        for w in self.witnesses.iter().take(5) {
            let ins: Vec<String> = w.inputs.iter().map(Datum::text).collect();
            let vals: Vec<String> = w.values.iter().map(Datum::text).collect();
            let _ = writeln!(
                out,
                "{pad}  witness ({}) -> ({})",
                ins.join(", "),
                vals.join(", ")
            );
        }
        if self.witnesses.len() > 5 {
            let _ = writeln!(
                out,
                "{pad}  ... {} more witnesses",
                self.witnesses.len() - 5
            );
        }
        for c in &self.checks {
            c.write_text(out, depth + 1);
        }
        for d in &self.diagnostics {
            let _ = writeln!(out, "{pad}  diagnostic:");
            d.write_text(out, depth + 2);
        }
    }
}

/// Three-valued comparison outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unsure,
}

/// Comparison policy: exact for rational evaluation, absolute tolerance for
/// float-backed connectives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cmp {
    Exact,
    Tolerance(f64),
}

pub const FLOAT_TOLERANCE: f64 = 1e-9;

impl Cmp {
    pub fn for_connective(c: &Connective) -> Cmp {
        if c.is_exact() {
            Cmp::Exact
        } else {
            Cmp::Tolerance(FLOAT_TOLERANCE)
        }
    }

    pub fn both(a: Cmp, b: Cmp) -> Cmp {
        match (a, b) {
            (Cmp::Exact, Cmp::Exact) => Cmp::Exact,
            (Cmp::Tolerance(x), Cmp::Exact) | (Cmp::Exact, Cmp::Tolerance(x)) => Cmp::Tolerance(x),
            (Cmp::Tolerance(x), Cmp::Tolerance(y)) => Cmp::Tolerance(x.max(y)),
        }
    }

    pub fn eq(self, a: &UnitScalar, b: &UnitScalar) -> Tri {
        match self {
            Cmp::Exact => tri(a == b),
            Cmp::Tolerance(tol) => tri((a.to_f64() - b.to_f64()).abs() <= tol),
        }
    }

    pub fn le(self, a: &UnitScalar, b: &UnitScalar) -> Tri {
        match self {
            Cmp::Exact => tri(a <= b),
            Cmp::Tolerance(tol) => tri(a.to_f64() <= b.to_f64() + tol),
        }
    }

    /// Strict order; inside the tolerance band the answer is unknown.
    pub fn lt(self, a: &UnitScalar, b: &UnitScalar) -> Tri {
        match self {
            Cmp::Exact => tri(a < b),
            Cmp::Tolerance(tol) => {
                let d = b.to_f64() - a.to_f64();
                if d > tol {
                    Tri::Yes
                } else if d < -tol {
                    Tri::No
                } else {
                    Tri::Unsure
                }
            }
        }
    }
}

fn tri(b: bool) -> Tri {
    if b {
        Tri::Yes
    } else {
        Tri::No
    }
}

/// Running totals of one check, mergeable across parallel chunks. Only the
/// lexicographically smallest `cap` witnesses are kept, so the result does not
/// depend on how the search space was partitioned.
#[derive(Debug, Clone)]
pub struct Tally {
    pub checked: u64,
    pub violations: u64,
    pub undecided: u64,
    pub excluded: u64,
    witnesses: Vec<Witness>,
    cap: usize,
}

impl Tally {
    pub fn new(cap: usize) -> Self {
        Tally {
            checked: 0,
            violations: 0,
            undecided: 0,
            excluded: 0,
            witnesses: Vec::new(),
            cap: cap.max(1),
        }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, w: Witness) {
        self.checked += 1;
        self.violations += 1;
        self.witnesses.push(w);
        if self.witnesses.len() >= 2 * self.cap {
            self.prune();
        }
    }

    pub fn unsure(&mut self) {
        self.checked += 1;
        self.undecided += 1;
    }

    pub fn exclude(&mut self) {
        self.excluded += 1;
    }

    /// Records the outcome of a required condition.
    pub fn record(&mut self, outcome: Tri, w: impl FnOnce() -> Witness) {
        match outcome {
            Tri::Yes => self.pass(),
            Tri::No => self.fail(w()),
            Tri::Unsure => self.unsure(),
        }
    }

    fn prune(&mut self) {
        self.witnesses.sort();
        self.witnesses.dedup();
        self.witnesses.truncate(self.cap);
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations += other.violations;
        self.undecided += other.undecided;
        self.excluded += other.excluded;
        self.witnesses.extend(other.witnesses);
        if self.witnesses.len() >= 2 * self.cap {
            self.prune();
        }
        self
    }

    pub fn verdict(&self) -> Verdict {
        if self.violations > 0 {
            Verdict::Fails
        } else if self.undecided > 0 {
            Verdict::Vacuous
        } else {
            Verdict::HoldsOnDomain
        }
    }

    pub fn into_report(
        mut self,
        property_id: &str,
        subject: &str,
        domain: DomainInfo,
        budget: BudgetInfo,
    ) -> PropertyReport {
        self.prune();
        let mut r = PropertyReport::new(property_id, subject, domain).with_budget(budget);
        r.verdict = self.verdict();
        r.stats.insert("checked".into(), self.checked);
        r.stats.insert("violations".into(), self.violations);
        r.stats.insert("undecided".into(), self.undecided);
        if self.excluded > 0 {
            r.stats
                .insert("excluded_incomparable".into(), self.excluded);
        }
        r.witnesses = self.witnesses;
        r
    }
}

/// Runs `body` for every index in `0..n` on the rayon pool and merges the
/// per-chunk tallies.
pub(crate) fn par_tally<F>(n: usize, cap: usize, body: F) -> Tally
where
    F: Fn(usize, &mut Tally) + Sync + Send,
{
    use rayon::prelude::*;
    (0..n)
        .into_par_iter()
        .fold(
            || Tally::new(cap),
            |mut t, i| {
                body(i, &mut t);
                t
            },
        )
        .reduce(|| Tally::new(cap), Tally::merge)
}

/// As [`par_tally`] for bodies that can fail; the error of the smallest index
/// wins, so the outcome is independent of scheduling.
pub(crate) fn try_par_tally<F>(n: usize, cap: usize, body: F) -> Result<Tally>
where
    F: Fn(usize, &mut Tally) -> Result<()> + Sync + Send,
{
    use rayon::prelude::*;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::new(cap);
            body(i, &mut t).map(|_| t).map_err(|e| (i, e))
        })
        .reduce(
            || Ok(Tally::new(cap)),
            |a, b| match (a, b) {
                (Ok(a), Ok(b)) => Ok(a.merge(b)),
                (Err(a), Err(b)) => Err(if a.0 <= b.0 { a } else { b }),
                (Err(e), _) | (_, Err(e)) => Err(e),
            },
        )
        .map_err(|(_, e)| e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_meet_is_a_semilattice() {
        use Verdict::*;
        let all = [HoldsOnDomain, Fails, Vacuous];
        for a in all {
            assert_eq!(a.meet(a), a);
            for b in all {
                assert_eq!(a.meet(b), b.meet(a));
                for c in all {
                    assert_eq!(a.meet(b).meet(c), a.meet(b.meet(c)));
                }
            }
        }
        assert_eq!(HoldsOnDomain.meet(Vacuous), Vacuous);
        assert_eq!(Vacuous.meet(Fails), Fails);
    }

    #[test]
    fn tally_keeps_smallest_witnesses() {
        let mut a = Tally::new(2);
        let mut b = Tally::new(2);
        for i in [5u64, 1, 9] {
            a.fail(Witness::new(vec![Datum::Count(i)], vec![]));
        }
        for i in [3u64, 0] {
            b.fail(Witness::new(vec![Datum::Count(i)], vec![]));
        }
        let r = b.merge(a).into_report(
            "p",
            "s",
            DomainInfo::finite("finite", 1),
            BudgetInfo::default(),
        );
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.stat("violations"), 5);
        let firsts: Vec<_> = r.witnesses.iter().map(|w| w.inputs[0].clone()).collect();
        assert_eq!(firsts, vec![Datum::Count(0), Datum::Count(1)]);
    }

    #[test]
    fn tolerance_comparisons() {
        let c = Cmp::Tolerance(1e-9);
        let a = UnitScalar::from_f64(0.3);
        let b = UnitScalar::from_f64(0.1 + 0.2);
        assert_eq!(Cmp::Exact.eq(&a, &b), Tri::No);
        assert_eq!(c.eq(&a, &b), Tri::Yes);
        assert_eq!(c.lt(&a, &b), Tri::Unsure);
        assert_eq!(c.lt(&q(1, 4), &q(1, 2)), Tri::Yes);
    }

    #[test]
    fn budget_override_json() {
        let b = SearchBudget::default()
            .with_override_json(r#"{"n_max": 8, "epsilon": "1/16"}"#)
            .unwrap();
        assert_eq!(b.n_max, 8);
        assert_eq!(b.epsilon, q(1, 16));
        assert_eq!(b.iter_cap, 128);
        assert!(SearchBudget::default()
            .with_override_json(r#"{"bogus": 1}"#)
            .is_err());
        assert!(SearchBudget::default()
            .with_override_json(r#"{"n_max": 0}"#)
            .is_err());
    }

    #[test]
    fn scalars_serialize_as_fractions() {
        let w = Witness::scalars(&[&q(1, 2)], &[&q(1, 4)]);
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"inputs":["1/2"],"values":["1/4"]}"#
        );
    }
}
