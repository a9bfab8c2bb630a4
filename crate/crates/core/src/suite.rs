//! The proposition suite: every mechanized statement as one row with the
//! universe it was checked on and the counterexamples found there.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::connective::{
    construct_nullnorm, construct_uninorm_max, construct_uninorm_min, AggregationFamily,
    Connective, TConormFamily, TNormFamily,
};
use crate::engine::{
    check_strict_monotonicity, ensure_universe, verify_implication, ImplicationReport,
};
use crate::error::{Error, Result};
use crate::fuzzy::{
    characterize_special_case, check_discrete_subalgebra, check_fuzzy_property,
    check_fuzzy_submonoid, check_not_strictly_decreasing, extract_core, l_nm,
    refute_uninorm_existence, uninorm_family, CarrierMonoid, FiniteMonoid, FuzzyProperty,
    FuzzySubset, KindTag, RefutationTarget, SpecialCase, SubstructureKind,
};
use crate::lattice::{
    enumerate_lattice_tnorms, sweep_lattice_fuzzy_implication, sweep_lattice_vague_cancellation,
    FiniteLattice,
};
use crate::report::{SearchBudget, Verdict};
use crate::scalar::{q, Domain, UnitScalar};
use crate::vague::{
    check_vague_cancellation, check_vague_commutativity, check_vague_group_cancellation,
    check_vague_monoid, check_vague_strict_monotone, induce_vague_tnorm, DegreeReading,
    ScalarEquality, TFuzzyEquality, VagueGroup, VagueTNorm,
};

/// Row ids with the statement each one checks, in suite order.
pub const ROWS: &[(&str, &str)] = &[
    (
        "prop3.6",
        "fuzzy strict monotonicity implies the fuzzy cancellation law",
    ),
    (
        "prop3.7",
        "the fuzzy cancellation law implies the fuzzy conditional cancellation law",
    ),
    (
        "subnorm-zero",
        "for a fuzzy t-subnorm, mu(T(x,y)) = 0 implies mu(x) = 0 or mu(y) = 0",
    ),
    (
        "not-strictly-decreasing",
        "a fuzzy t-subnorm of a strictly monotone t-norm is not strictly decreasing",
    ),
    (
        "nonstrict-tnorm",
        "a t-norm that is not strictly monotone has no fuzzy strictly monotone t-subnorm",
    ),
    (
        "vague-commutativity",
        "every T-vague t-norm is vaguely commutative",
    ),
    (
        "vague-group-cancellation",
        "vague groups satisfy the generalized left and right cancellation laws",
    ),
    (
        "prop12",
        "vague strict monotonicity implies the vague cancellation law",
    ),
    (
        "prop13",
        "on bounded lattices, fuzzy strict monotonicity implies fuzzy cancellation",
    ),
    (
        "prop14",
        "on bounded lattices, fuzzy cancellation implies fuzzy conditional cancellation",
    ),
    (
        "prop15",
        "on bounded lattices, vague strict monotonicity implies vague cancellation",
    ),
    ("prop16", "the core of an A-fuzzy submonoid is a submonoid"),
    (
        "prop17",
        "mu is an A_min-fuzzy t-subnorm of T_M iff mu(1) = 1",
    ),
    (
        "prop18",
        "mu is an A_min-fuzzy t-subconorm of S_M iff mu(0) = 1",
    ),
    ("prop19", "the core of a U-fuzzy submonoid is a submonoid"),
    (
        "disjunctive",
        "for a disjunctive uninorm U, mu is a U-fuzzy submonoid iff mu = 1",
    ),
    (
        "prop20",
        "mu is a U-fuzzy t-subnorm of T_M iff mu is non-increasing on B and mu(1) = 1",
    ),
    ("prop21", "no uninorm makes mu(x) = x a U-fuzzy t-subnorm"),
    (
        "prop22",
        "no uninorm makes mu(x) = 1 - x a U-fuzzy t-subconorm",
    ),
    ("prop23", "the core of an F-fuzzy submonoid is a submonoid"),
    ("prop24", "an F-fuzzy submonoid satisfies mu >= k"),
    (
        "prop25",
        "mu is an F_M-fuzzy t-subnorm of T_M iff mu(1) = 1 and mu >= k",
    ),
    (
        "prop25-conorm",
        "mu is an F_M-fuzzy t-subconorm of S_M iff mu(0) = 1 and mu >= k",
    ),
    (
        "discrete",
        "L_{n,m} is closed under U_L = <T_L,e,S_L>_min and under F_L = <S_L,e,T_L>",
    ),
];

/// Grid used by the vague rows, whose monoid check loops over 7-tuples.
pub const VAGUE_GRID: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RowStatus {
    Confirmed,
    Counterexample,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteRow {
    pub id: String,
    pub statement: String,
    pub universe: String,
    pub universe_size: u64,
    /// Universe elements on which the hypothesis was met.
    pub premise_held: u64,
    pub counterexamples: u64,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Wall time; kept out of the JSON so that runs compare byte for byte.
    #[serde(skip)]
    pub runtime_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub grid: u32,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    /// 1 if any row has a counterexample, else 2 if any row was skipped.
    pub fn exit_code(&self) -> i32 {
        if self
            .rows
            .iter()
            .any(|r| r.status == RowStatus::Counterexample)
        {
            1
        } else if self.rows.iter().any(|r| r.status == RowStatus::Skipped) {
            2
        } else {
            0
        }
    }

    pub fn row(&self, id: &str) -> Option<&SuiteRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<26} {:>9} {:>8} {:>8}  {:<15} {:>8}",
            "row", "universe", "premise", "cex", "status", "ms"
        );
        for r in &self.rows {
            let status = match r.status {
                RowStatus::Confirmed => "CONFIRMED",
                RowStatus::Counterexample => "COUNTEREXAMPLE",
                RowStatus::Skipped => "SKIPPED",
            };
            let _ = writeln!(
                out,
                "{:<26} {:>9} {:>8} {:>8}  {:<15} {:>8}",
                r.id, r.universe_size, r.premise_held, r.counterexamples, status, r.runtime_ms
            );
            for e in r.examples.iter().take(3) {
                let _ = writeln!(out, "    counterexample: {e}");
            }
            if let Some(n) = &r.note {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        out
    }
}

/// Resolves `--only` ids, accepting `disjunctive-theorem` for `disjunctive`.
pub fn resolve_rows(only: Option<&[String]>) -> Result<Vec<&'static str>> {
    let Some(only) = only else {
        return Ok(ROWS.iter().map(|(id, _)| *id).collect());
    };
    let mut out = Vec::new();
    for raw in only {
        let id = match raw.trim() {
            "disjunctive-theorem" => "disjunctive",
            other => other,
        };
        let known = ROWS
            .iter()
            .find(|(r, _)| *r == id)
            .ok_or_else(|| Error::Config(format!("unknown suite row '{id}'")))?;
        if !out.contains(&known.0) {
            out.push(known.0);
        }
    }
    Ok(out)
}

struct Outcome {
    universe: String,
    size: u64,
    premise_held: u64,
    counterexamples: u64,
    examples: Vec<String>,
    note: Option<String>,
}

impl From<ImplicationReport> for Outcome {
    fn from(r: ImplicationReport) -> Self {
        Outcome {
            universe: r.universe,
            size: r.universe_size,
            premise_held: r.premise_held,
            counterexamples: r.counterexample_count,
            examples: r.counterexamples,
            note: None,
        }
    }
}

struct Ctx {
    grid: u32,
    b: SearchBudget,
}

/// Runs the selected rows (all when `only` is `None`). Budget refusals turn
/// into SKIPPED rows; other errors abort the run.
pub fn run_suite(grid: u32, b: &SearchBudget, only: Option<&[String]>) -> Result<SuiteReport> {
    if grid < 2 {
        return Err(Error::Config(
            "suite grid resolution must be at least 2".into(),
        ));
    }
    let ids = resolve_rows(only)?;
    let ctx = Ctx { grid, b: b.clone() };
    let mut rows = Vec::with_capacity(ids.len());
    for id in ids {
        let statement = ROWS
            .iter()
            .find(|(r, _)| *r == id)
            .map(|(_, s)| *s)
            .unwrap_or_default();
        let start = Instant::now();
        let row = match run_row(id, &ctx) {
            Ok(o) => SuiteRow {
                id: id.into(),
                statement: statement.into(),
                universe: o.universe,
                universe_size: o.size,
                premise_held: o.premise_held,
                counterexamples: o.counterexamples,
                status: if o.counterexamples == 0 {
                    RowStatus::Confirmed
                } else {
                    RowStatus::Counterexample
                },
                examples: o.examples,
                note: o.note,
                runtime_ms: 0,
            },
            Err(e @ Error::BudgetExceeded { .. }) => SuiteRow {
                id: id.into(),
                statement: statement.into(),
                universe: String::new(),
                universe_size: 0,
                premise_held: 0,
                counterexamples: 0,
                status: RowStatus::Skipped,
                examples: Vec::new(),
                note: Some(e.to_string()),
                runtime_ms: 0,
            },
            Err(e) => return Err(e),
        };
        rows.push(SuiteRow {
            runtime_ms: start.elapsed().as_millis(),
            ..row
        });
    }
    Ok(SuiteReport { grid, rows })
}

fn run_row(id: &str, ctx: &Ctx) -> Result<Outcome> {
    let b = &ctx.b;
    let tm = || Connective::tnorm(TNormFamily::Minimum);
    let half = q(1, 2);
    match id {
        "prop3.6" => chain_sweep(ctx, FuzzyProperty::Strict, FuzzyProperty::Cancel),
        "prop3.7" => chain_sweep(ctx, FuzzyProperty::Cancel, FuzzyProperty::CondCancel),
        "subnorm-zero" => subnorm_zero(ctx),
        "not-strictly-decreasing" => not_strictly_decreasing(ctx),
        "nonstrict-tnorm" => nonstrict_tnorm(ctx),
        "vague-commutativity" => vague_row(ctx, false),
        "prop12" => vague_row(ctx, true),
        "vague-group-cancellation" => vague_groups(ctx),
        "prop13" | "prop14" => {
            let lattices: Vec<Arc<FiniteLattice>> = [
                FiniteLattice::chain(2),
                FiniteLattice::chain(3),
                FiniteLattice::chain(4),
                FiniteLattice::diamond(),
            ]
            .into_iter()
            .map(Arc::new)
            .collect();
            let (p, c) = if id == "prop13" {
                (FuzzyProperty::Strict, FuzzyProperty::Cancel)
            } else {
                (FuzzyProperty::Cancel, FuzzyProperty::CondCancel)
            };
            Ok(sweep_lattice_fuzzy_implication(&lattices, p, c, b)?.into())
        }
        "prop15" => {
            let chain = Arc::new(FiniteLattice::chain(3));
            let mut out: Outcome =
                sweep_lattice_vague_cancellation(&chain, DegreeReading::Literal, b)?.into();
            let crisp = sweep_lattice_vague_cancellation(&chain, DegreeReading::Crisp, b)?;
            merge(&mut out, crisp.into());
            Ok(out)
        }
        "prop16" => {
            let combiners = [
                AggregationFamily::Min,
                AggregationFamily::Mean,
                AggregationFamily::Max,
            ]
            .map(Connective::aggregation)
            .to_vec();
            core_row(ctx, KindTag::ASubmonoid, combiners)
        }
        "prop19" => {
            let us = vec![
                construct_uninorm_min(
                    half.clone(),
                    Connective::tnorm(TNormFamily::Lukasiewicz),
                    Connective::tconorm(TConormFamily::Lukasiewicz),
                )?,
                construct_uninorm_max(
                    half.clone(),
                    Connective::tnorm(TNormFamily::Product),
                    Connective::tconorm(TConormFamily::ProbabilisticSum),
                )?,
            ];
            core_row(ctx, KindTag::USubmonoid, us)
        }
        "prop23" => {
            let fs = vec![
                construct_nullnorm(
                    Connective::tconorm(TConormFamily::Lukasiewicz),
                    half.clone(),
                    Connective::tnorm(TNormFamily::Lukasiewicz),
                )?,
                construct_nullnorm(Connective::tconorm(TConormFamily::Maximum), q(1, 4), tm())?,
            ];
            core_row(ctx, KindTag::FSubmonoid, fs)
        }
        "prop17" => characterization(
            ctx,
            SpecialCase::Prop17,
            Connective::aggregation(AggregationFamily::Min),
        ),
        "prop18" => characterization(
            ctx,
            SpecialCase::Prop18,
            Connective::aggregation(AggregationFamily::Min),
        ),
        "disjunctive" => characterization(
            ctx,
            SpecialCase::Disjunctive,
            construct_uninorm_max(
                half,
                Connective::tnorm(TNormFamily::Product),
                Connective::tconorm(TConormFamily::ProbabilisticSum),
            )?,
        ),
        "prop20" => characterization(
            ctx,
            SpecialCase::Prop20,
            construct_uninorm_min(
                half,
                Connective::tnorm(TNormFamily::Product),
                Connective::tconorm(TConormFamily::Maximum),
            )?,
        ),
        "prop24" => characterization(
            ctx,
            SpecialCase::Prop24,
            construct_nullnorm(
                Connective::tconorm(TConormFamily::Lukasiewicz),
                half,
                Connective::tnorm(TNormFamily::Lukasiewicz),
            )?,
        ),
        "prop25" | "prop25-conorm" => {
            let case = if id == "prop25" {
                SpecialCase::Prop25
            } else {
                SpecialCase::Prop25Conorm
            };
            characterization(
                ctx,
                case,
                construct_nullnorm(Connective::tconorm(TConormFamily::Lukasiewicz), half, tm())?,
            )
        }
        "prop21" => refutation(ctx, true),
        "prop22" => refutation(ctx, false),
        "discrete" => discrete(ctx),
        other => Err(Error::Config(format!("unknown suite row '{other}'"))),
    }
}

fn merge(into: &mut Outcome, other: Outcome) {
    into.universe = format!("{} + {}", into.universe, other.universe);
    into.size += other.size;
    into.premise_held += other.premise_held;
    into.counterexamples += other.counterexamples;
    into.examples.extend(other.examples);
}

/// Every map from `points` into `{0, 1/2, 1}`.
fn mu_tables(points: &[UnitScalar], b: &SearchBudget) -> Result<Vec<FuzzySubset>> {
    let alphabet = [UnitScalar::zero(), q(1, 2), UnitScalar::one()];
    let count = 3u128.saturating_pow(points.len() as u32);
    ensure_universe("fuzzy subset tables", count, b)?;
    Ok((0..count as usize)
        .map(|code| {
            let mut c = code;
            FuzzySubset::scalar_table(points.iter().map(|p| {
                let v = alphabet[c % 3].clone();
                c /= 3;
                (p.clone(), v)
            }))
        })
        .collect())
}

/// The grid plus `1/2`, so that the characterizations at `e = 1/2` always
/// see their threshold.
fn table_domain(grid: u32) -> Result<Domain> {
    let mut pts = Domain::grid(grid)?.points().to_vec();
    pts.push(q(1, 2));
    Domain::from_points(pts)
}

struct ChainCase {
    t: Connective,
    mu: FuzzySubset,
}

fn chain_points() -> Result<Domain> {
    Domain::from_points([0, 1, 2, 3].map(|i| q(i, 3)))
}

/// All t-norm tables on the 4-point chain against all `{0,1/2,1}` tables.
fn chain_universe(b: &SearchBudget) -> Result<(Domain, Vec<ChainCase>)> {
    let d = chain_points()?;
    let tables = enumerate_lattice_tnorms(&Arc::new(FiniteLattice::chain(4)), usize::MAX, b)?;
    let mus = mu_tables(d.points(), b)?;
    ensure_universe("chain universe", (tables.len() * mus.len()) as u128, b)?;
    let mut out = Vec::new();
    for t in &tables {
        let c = t
            .to_chain_connective(&d)?
            .with_name(format!("chain4:{}", t.name()));
        for mu in &mus {
            out.push(ChainCase {
                t: c.clone(),
                mu: mu.clone(),
            });
        }
    }
    Ok((d, out))
}

fn chain_label(c: &ChainCase) -> String {
    format!("{} {}", c.t.name(), c.mu.name())
}

fn chain_sweep(ctx: &Ctx, p: FuzzyProperty, c: FuzzyProperty) -> Result<Outcome> {
    let b = &ctx.b;
    let (d, items) = chain_universe(b)?;
    let r = verify_implication(
        p.id(),
        c.id(),
        "t-norm tables x {0,1/2,1}-tables on the chain {0,1/3,2/3,1}",
        &items,
        b,
        chain_label,
        |x| Ok(check_fuzzy_property(&x.mu, &x.t, p, &d, b)?.verdict),
        |x| Ok(check_fuzzy_property(&x.mu, &x.t, c, &d, b)?.verdict),
    )?;
    let mut o: Outcome = r.into();
    if o.premise_held == 0 {
        o.note = Some(format!("{} never holds on this universe", p.id()));
    }
    Ok(o)
}

fn subnorm_zero(ctx: &Ctx) -> Result<Outcome> {
    let b = &ctx.b;
    let (d, items) = chain_universe(b)?;
    let subnorm = SubstructureKind::min(KindTag::TSubnorm)?;
    let r = verify_implication(
        "t-subnorm",
        "zero-divisor",
        "t-norm tables x {0,1/2,1}-tables on the chain {0,1/3,2/3,1}",
        &items,
        b,
        chain_label,
        |x| {
            let carrier = CarrierMonoid::interval(d.clone(), x.t.clone())?;
            Ok(check_fuzzy_submonoid(&x.mu, &carrier, &subnorm, b)?.verdict)
        },
        |x| {
            let carrier = CarrierMonoid::interval(d.clone(), x.t.clone())?;
            let at = |p: &UnitScalar| x.mu.value(&carrier, &crate::fuzzy::Elem::Scalar(p.clone()));
            for a in d.points() {
                for c in d.points() {
                    if at(&x.t.eval(a, c))?.is_zero() && !(at(a)?.is_zero() || at(c)?.is_zero()) {
                        return Ok(Verdict::Fails);
                    }
                }
            }
            Ok(Verdict::HoldsOnDomain)
        },
    )?;
    Ok(r.into())
}

fn not_strictly_decreasing(ctx: &Ctx) -> Result<Outcome> {
    let b = &ctx.b;
    let d = Domain::grid(ctx.grid)?;
    let mut subsets = vec![
        FuzzySubset::One,
        FuzzySubset::Identity,
        FuzzySubset::Complement,
    ];
    subsets.extend(d.interior().iter().map(|e| FuzzySubset::Step(e.clone())));
    subsets.push(FuzzySubset::custom("1-x/2, 1 at 1", |x| {
        if x.is_one() {
            UnitScalar::one()
        } else {
            UnitScalar::clamp(
                UnitScalar::one().value()
                    - x.value() / num_rational::BigRational::from_integer(2.into()),
            )
        }
    }));
    let ts = [
        TNormFamily::Product,
        TNormFamily::Lukasiewicz,
        TNormFamily::Minimum,
        TNormFamily::Drastic,
    ];
    let items: Vec<(Connective, FuzzySubset)> = ts
        .iter()
        .flat_map(|&t| {
            subsets
                .iter()
                .map(move |m| (Connective::tnorm(t), m.clone()))
        })
        .collect();
    let reports = items
        .par_iter()
        .map(|(t, mu)| check_not_strictly_decreasing(mu, t, &d, b))
        .collect::<Result<Vec<_>>>()?;
    let mut o = Outcome {
        universe: format!("builtin t-norms x closed-form subsets on grid {}", ctx.grid),
        size: items.len() as u64,
        premise_held: 0,
        counterexamples: 0,
        examples: Vec::new(),
        note: None,
    };
    for ((t, mu), r) in items.iter().zip(&reports) {
        if !r.has_tag("T_NOT_STRICT") && !r.has_tag("NOT_A_SUBNORM") {
            o.premise_held += 1;
        }
        if r.verdict.fails() {
            o.counterexamples += 1;
            o.examples.push(format!("{} {}", t.name(), mu.name()));
        }
    }
    Ok(o)
}

fn nonstrict_tnorm(ctx: &Ctx) -> Result<Outcome> {
    let b = &ctx.b;
    let (d, items) = chain_universe(b)?;
    let r = verify_implication(
        "t-not-strictly-monotone",
        "no-fuzzy-strict-monotonicity",
        "t-norm tables x {0,1/2,1}-tables on the chain {0,1/3,2/3,1}",
        &items,
        b,
        chain_label,
        |x| {
            let strict = check_strict_monotonicity(&x.t, &d, b).verdict;
            Ok(if strict.holds() {
                Verdict::Fails
            } else {
                Verdict::HoldsOnDomain
            })
        },
        |x| {
            let f = check_fuzzy_property(&x.mu, &x.t, FuzzyProperty::Strict, &d, b)?.verdict;
            Ok(if f.holds() {
                Verdict::Fails
            } else {
                Verdict::HoldsOnDomain
            })
        },
    )?;
    Ok(r.into())
}

struct VagueCase {
    v: VagueTNorm,
    reading: DegreeReading,
    label: String,
}

/// `T~ = E(T(x,y), z)` for the builtin t-norms and the equalities that are
/// valid for them, under both degree readings.
fn vague_corpus(b: &SearchBudget) -> Result<Vec<VagueCase>> {
    let d = Domain::grid(VAGUE_GRID)?;
    let mut out = Vec::new();
    for t in [
        TNormFamily::Minimum,
        TNormFamily::Product,
        TNormFamily::Lukasiewicz,
        TNormFamily::Drastic,
    ] {
        let t = Connective::tnorm(t);
        for e in [ScalarEquality::Crisp, ScalarEquality::OneMinusAbs] {
            let eq = match TFuzzyEquality::new(e.clone(), t.clone(), d.clone(), b) {
                Ok(eq) => eq,
                Err(Error::Domain(_)) => continue,
                Err(err) => return Err(err),
            };
            let v = induce_vague_tnorm(&eq, &t, b)?;
            for reading in [DegreeReading::Literal, DegreeReading::Crisp] {
                out.push(VagueCase {
                    v: v.clone(),
                    reading,
                    label: format!("{} E={} reading={reading}", t.name(), e.name()),
                });
            }
        }
    }
    Ok(out)
}

fn vague_row(ctx: &Ctx, prop12: bool) -> Result<Outcome> {
    let b = &ctx.b;
    let items = vague_corpus(b)?;
    let universe = format!("induced vague t-norms on grid {VAGUE_GRID}");
    let monoid =
        |x: &VagueCase| -> Result<bool> { Ok(check_vague_monoid(x.v.base(), b)?.verdict.holds()) };
    let r = if prop12 {
        verify_implication(
            "vague-strict-monotone",
            "vague-cancellation",
            &universe,
            &items,
            b,
            |x| x.label.clone(),
            |x| {
                if !monoid(x)? {
                    return Ok(Verdict::Vacuous);
                }
                Ok(check_vague_strict_monotone(x.v.base(), x.reading, b)?.verdict)
            },
            |x| Ok(check_vague_cancellation(x.v.base(), x.reading, b)?.verdict),
        )?
    } else {
        let literal: Vec<VagueCase> = items
            .into_iter()
            .filter(|x| x.reading == DegreeReading::Literal)
            .collect();
        verify_implication(
            "vague-monoid",
            "vague-commutativity",
            &universe,
            &literal,
            b,
            |x| x.label.clone(),
            |x| {
                Ok(if monoid(x)? {
                    Verdict::HoldsOnDomain
                } else {
                    Verdict::Vacuous
                })
            },
            |x| Ok(check_vague_commutativity(x.v.base(), b)?.verdict),
        )?
    };
    let mut o: Outcome = r.into();
    if prop12 && o.premise_held == 0 {
        o.note = Some("vague strict monotonicity never holds on this corpus".into());
    }
    Ok(o)
}

fn vague_groups(ctx: &Ctx) -> Result<Outcome> {
    let b = &ctx.b;
    let groups = (1..=5)
        .map(|n| VagueGroup::crisp(&FiniteMonoid::cyclic(n), b))
        .collect::<Result<Vec<_>>>()?;
    let r = verify_implication(
        "vague-group",
        "vague-group-cancellation",
        "crisp vague groups Z_1..Z_5",
        &groups,
        b,
        |g| format!("Z_{}", g.table().len()),
        |_| Ok(Verdict::HoldsOnDomain),
        |g| Ok(check_vague_group_cancellation(g, b)?.verdict),
    )?;
    Ok(r.into())
}

fn core_row(ctx: &Ctx, tag: KindTag, combiners: Vec<Connective>) -> Result<Outcome> {
    let b = &ctx.b;
    let d = Domain::grid(ctx.grid)?;
    let mus = mu_tables(d.points(), b)?;
    let carriers = [TNormFamily::Lukasiewicz, TNormFamily::Minimum]
        .map(|t| CarrierMonoid::interval(d.clone(), Connective::tnorm(t)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut items = Vec::new();
    for c in &combiners {
        let kind = SubstructureKind::new(tag, Some(c.clone()))?;
        for carrier in &carriers {
            for mu in &mus {
                items.push((kind.clone(), carrier.clone(), mu.clone()));
            }
        }
    }
    let r = verify_implication(
        tag.id(),
        "core-is-submonoid",
        &format!("{{0,1/2,1}}-tables on grid {} over T_L and T_M", ctx.grid),
        &items,
        b,
        |(k, c, mu)| {
            format!(
                "{} on {} {}",
                k.combiner().map(Connective::name).unwrap_or("min"),
                c.name(),
                mu.name()
            )
        },
        |(k, c, mu)| Ok(check_fuzzy_submonoid(mu, c, k, b)?.verdict),
        |(_, c, mu)| {
            let core = extract_core(mu, c)?;
            Ok(if core.closed && core.contains_identity {
                Verdict::HoldsOnDomain
            } else {
                Verdict::Fails
            })
        },
    )?;
    Ok(r.into())
}

fn characterization(ctx: &Ctx, case: SpecialCase, c: Connective) -> Result<Outcome> {
    let b = &ctx.b;
    let d = table_domain(ctx.grid)?;
    let mus = mu_tables(d.points(), b)?;
    let reports = mus
        .par_iter()
        .map(|mu| characterize_special_case(case, mu, &c, None, &d, b))
        .collect::<Result<Vec<_>>>()?;
    let mut o = Outcome {
        universe: format!(
            "{{0,1/2,1}}-tables on grid {} plus 1/2, combiner {}",
            ctx.grid,
            c.name()
        ),
        size: mus.len() as u64,
        premise_held: 0,
        counterexamples: 0,
        examples: Vec::new(),
        note: None,
    };
    for (mu, r) in mus.iter().zip(&reports) {
        if r.has_tag("SUBMONOID_TRUE") {
            o.premise_held += 1;
        }
        if r.verdict.fails() {
            o.counterexamples += 1;
            if o.examples.len() < b.max_witnesses {
                o.examples.push(mu.name());
            }
        }
    }
    Ok(o)
}

fn refutation(ctx: &Ctx, tnorm_side: bool) -> Result<Outcome> {
    let b = &ctx.b;
    let es = [q(1, 4), q(1, 2), q(3, 4)];
    let family = uninorm_family(
        &es,
        &[TNormFamily::Product, TNormFamily::Lukasiewicz],
        &[TConormFamily::ProbabilisticSum, TConormFamily::Lukasiewicz],
    )?;
    let mut pts = Domain::grid(ctx.grid)?.points().to_vec();
    pts.extend(es.iter().cloned());
    let d = Domain::from_points(pts)?;
    let (mu, targets) = if tnorm_side {
        (
            FuzzySubset::Identity,
            [
                TNormFamily::Product,
                TNormFamily::Lukasiewicz,
                TNormFamily::Minimum,
            ]
            .map(|t| RefutationTarget::TNorm(Connective::tnorm(t)))
            .to_vec(),
        )
    } else {
        (
            FuzzySubset::Complement,
            [
                TConormFamily::ProbabilisticSum,
                TConormFamily::Lukasiewicz,
                TConormFamily::Maximum,
            ]
            .map(|s| RefutationTarget::TConorm(Connective::tconorm(s)))
            .to_vec(),
        )
    };
    let mut o = Outcome {
        universe: format!(
            "U_min/U_max(e,T,S) for e in {{1/4,1/2,3/4}} on grid {} plus e",
            ctx.grid
        ),
        size: 0,
        premise_held: 0,
        counterexamples: 0,
        examples: Vec::new(),
        note: None,
    };
    let mut explicit = (0u64, 0u64);
    for target in &targets {
        let r = refute_uninorm_existence(&mu, target, &family, &d, b)?;
        for row in &r.rows {
            o.size += 1;
            o.premise_held += 1;
            if !row.verdict.fails() {
                o.counterexamples += 1;
                o.examples
                    .push(format!("{} with {}", row.uninorm, r.target));
            }
            if row.explicit_witness.is_some() {
                explicit.0 += 1;
                explicit.1 += row.explicit_violates as u64;
            }
        }
    }
    o.note = Some(format!(
        "explicit contradiction pair violated in {} of {} evaluated cases",
        explicit.1, explicit.0
    ));
    Ok(o)
}

fn discrete(ctx: &Ctx) -> Result<Outcome> {
    let b = &ctx.b;
    let mut items = Vec::new();
    for e in [q(1, 4), q(1, 2), q(3, 4)] {
        let ul = construct_uninorm_min(
            e.clone(),
            Connective::tnorm(TNormFamily::Lukasiewicz),
            Connective::tconorm(TConormFamily::Lukasiewicz),
        )?;
        let fl = construct_nullnorm(
            Connective::tconorm(TConormFamily::Lukasiewicz),
            e.clone(),
            Connective::tnorm(TNormFamily::Lukasiewicz),
        )?;
        for n in 1..=3 {
            for m in 1..=3 {
                let pts = l_nm(&e, n, m)?;
                items.push((format!("L_{{{n},{m}}}(e={e})"), pts.clone(), ul.clone()));
                items.push((format!("L_{{{n},{m}}}(k={e})"), pts, fl.clone()));
            }
        }
    }
    let r = verify_implication(
        "L_nm",
        "discrete-subalgebra",
        "L_{n,m} for n, m in 1..3 and e in {1/4,1/2,3/4}",
        &items,
        b,
        |(name, _, c)| format!("{name} under {}", c.name()),
        |_| Ok(Verdict::HoldsOnDomain),
        |(_, pts, c)| Ok(check_discrete_subalgebra(pts, c, b).verdict),
    )?;
    Ok(r.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_ids_resolve() {
        let only = vec!["prop21".to_string(), "disjunctive-theorem".to_string()];
        assert_eq!(
            resolve_rows(Some(&only)).unwrap(),
            ["prop21", "disjunctive"]
        );
        assert!(resolve_rows(Some(&["prop99".to_string()])).is_err());
        assert_eq!(resolve_rows(None).unwrap().len(), ROWS.len());
    }

    #[test]
    fn refutation_rows_confirm() {
        let only = vec!["prop21".to_string(), "prop22".to_string()];
        let r = run_suite(4, &SearchBudget::default(), Some(&only)).unwrap();
        for row in &r.rows {
            assert_eq!(row.status, RowStatus::Confirmed, "{row:?}");
            assert_eq!(row.universe_size, 72);
        }
    }

    #[test]
    fn refused_universe_is_skipped() {
        let b = SearchBudget {
            max_universe: 10,
            ..SearchBudget::default()
        };
        let r = run_suite(4, &b, Some(&["prop17".to_string()])).unwrap();
        assert_eq!(r.rows[0].status, RowStatus::Skipped);
        assert_eq!(r.exit_code(), 2);
    }
}
