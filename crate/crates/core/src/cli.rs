//! The `fuzznorm` command line. Every subcommand parses its inputs, calls
//! one or more library checks and prints the merged report.

use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::connective::{Connective, Role};
use crate::engine::{
    check_archimedean, check_axioms, check_cancellation, check_limit_property,
    check_strict_monotonicity, classify_uninorm,
};
use crate::error::{Error, Result};
use crate::fuzzy::{
    characterize_special_case, check_fuzzy_property, check_fuzzy_submonoid, CarrierMonoid,
    FuzzyProperty, KindTag, SpecialCase, SubstructureKind,
};
use crate::io::{self, CarrierSpec};
use crate::lattice::{
    check_lattice_fuzzy_property, check_lattice_fuzzy_subnorm, check_lattice_tnorm,
    check_lattice_vague_structures, crisp_lattice_equality, enumerate_lattice_tnorms,
    FiniteLattice, LatticeTNorm,
};
use crate::report::{DomainInfo, PropertyReport, SearchBudget, Verdict};
use crate::scalar::{Domain, UnitScalar};
use crate::suite::run_suite;
use crate::vague::{
    check_vague_cancellation, check_vague_commutativity, check_vague_monoid, check_vague_op,
    check_vague_strict_monotone, induce_vague_tnorm, validate_fuzzy_equality, DegreeReading,
    TFuzzyEquality,
};

/// Environment variable holding a JSON budget override, e.g. `{"n_max": 32}`.
pub const BUDGET_ENV: &str = "FUZZNORM_BUDGET_OVERRIDE";

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_VACUOUS: i32 = 2;
pub const EXIT_PARSE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(
    name = "fuzznorm",
    version,
    about = "Exact checks for t-norms, uninorms, nullnorms and their fuzzy substructures"
)]
pub struct Cli {
    #[command(flatten)]
    pub shared: Shared,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Shared {
    /// Grid resolution n (points i/n).
    #[arg(long, global = true)]
    pub grid: Option<u32>,
    /// Largest exponent tried by Archimedean searches.
    #[arg(long, global = true)]
    pub nmax: Option<u32>,
    /// Iteration cap for limit properties.
    #[arg(long = "iter-cap", global = true)]
    pub iter_cap: Option<u32>,
    /// Threshold p/q below which a trajectory counts as reaching 0.
    #[arg(long, global = true)]
    pub epsilon: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axioms and classical properties of one connective.
    Check {
        /// Connective id, e.g. tnorm:lukasiewicz or "uninorm:umin(1/2,product,probsum)".
        operator: String,
        /// axioms, strict, cancel, condcancel, archimedean, limit, classify.
        #[arg(long, value_delimiter = ',', default_value = "axioms")]
        props: Vec<String>,
    },
    /// Fuzzy substructure checks of a membership function.
    Substructure {
        /// builtin:identity|one|zero|complement|step(e), or a JSON file.
        #[arg(long)]
        mu: String,
        /// Connective id for ([0,1], C), or a finite carrier JSON file.
        #[arg(long)]
        carrier: String,
        /// subgroupoid, submonoid, subgroup, t-subnorm, t-subconorm,
        /// a-submonoid, u-submonoid, f-submonoid.
        #[arg(long, default_value = "t-subnorm")]
        kind: String,
        /// Combiner for a-/u-/f-submonoid; defaults to the carrier operation.
        #[arg(long)]
        combiner: Option<String>,
        /// Fuzzified properties to check instead: fstrict, fcancel,
        /// fcondcancel, farch, flimit.
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
        /// Characterization to evaluate instead: prop17, prop18,
        /// disjunctive, prop20, prop24, prop25, prop25-conorm.
        #[arg(long)]
        case: Option<String>,
    },
    /// Fuzzy equalities and induced vague t-norms.
    Vague {
        /// T-norm id; it combines degrees and induces the vague t-norm.
        #[arg(long)]
        tnorm: String,
        /// builtin:crisp, builtin:one-minus-abs, or an equality JSON file.
        #[arg(long, default_value = "builtin:one-minus-abs")]
        equality: String,
        /// A vague operation table to check instead of the induced one.
        #[arg(long)]
        op: Option<String>,
        /// equality, op, monoid, commutativity, strict, cancel.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "equality,op,monoid,commutativity"
        )]
        props: Vec<String>,
        /// literal (any common degree) or crisp (common degree 1).
        #[arg(long, default_value = "literal")]
        reading: String,
    },
    /// Checks on a finite bounded lattice.
    Lattice {
        /// chain:N, diamond, or a lattice JSON file.
        #[arg(long)]
        lattice: String,
        /// meet, or tK for the K-th enumerated lattice t-norm.
        #[arg(long, default_value = "meet")]
        tnorm: String,
        /// identity, const:<label>, or an L-subset JSON file.
        #[arg(long, default_value = "identity")]
        mu: String,
        /// tnorm, subnorm, fstrict, fcancel, fcondcancel, farch, flimit, vague.
        #[arg(long, value_delimiter = ',', default_value = "tnorm")]
        props: Vec<String>,
        /// literal (any common degree) or crisp (common degree 1).
        #[arg(long, default_value = "literal")]
        reading: String,
    },
    /// Run the proposition suite.
    Suite {
        /// Run every row.
        #[arg(long, conflicts_with = "only")]
        all: bool,
        /// Comma-separated row ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
    /// List every t-norm on a finite bounded lattice.
    Enumerate {
        /// chain:N, diamond, or a lattice JSON file.
        #[arg(long)]
        lattice: String,
        /// Stop after this many t-norms.
        #[arg(long)]
        limit: Option<usize>,
    },
}

/// What a subcommand produced.
#[allow(clippy::large_enum_variant)]
pub enum Output {
    Report(PropertyReport),
    Text {
        json: String,
        text: String,
        code: i32,
    },
}

pub fn exit_code_for(v: Verdict) -> i32 {
    match v {
        Verdict::HoldsOnDomain => EXIT_HOLDS,
        Verdict::Fails => EXIT_FAILS,
        Verdict::Vacuous => EXIT_VACUOUS,
    }
}

pub fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Config(_) => EXIT_PARSE,
        Error::BudgetExceeded { .. } => EXIT_VACUOUS,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_DATA,
    }
}

/// Budget from defaults, then the environment override, then flags.
pub fn budget(shared: &Shared, env: Option<&str>) -> Result<SearchBudget> {
    let mut b = SearchBudget::default();
    if let Some(json) = env {
        b = b.with_override_json(json)?;
    }
    if let Some(n) = shared.nmax {
        b.n_max = n;
    }
    if let Some(n) = shared.iter_cap {
        b.iter_cap = n;
    }
    if let Some(e) = &shared.epsilon {
        b.epsilon = e
            .parse::<UnitScalar>()
            .map_err(|_| Error::Config(format!("invalid epsilon '{e}'")))?;
    }
    b.validate()?;
    Ok(b)
}

fn grid(shared: &Shared, default: u32) -> Result<Domain> {
    let n = shared.grid.unwrap_or(default);
    if n < 2 {
        return Err(Error::Config("grid resolution must be at least 2".into()));
    }
    Domain::grid(n)
}

fn combine(
    id: &str,
    subject: &str,
    domain: DomainInfo,
    mut parts: Vec<PropertyReport>,
) -> PropertyReport {
    if parts.len() == 1 {
        return parts.pop().expect("one part");
    }
    let mut r = PropertyReport::new(id, subject, domain);
    for p in parts {
        r.push_check(p);
    }
    r
}

fn cmd_check(
    shared: &Shared,
    b: &SearchBudget,
    operator: &str,
    props: &[String],
) -> Result<PropertyReport> {
    let c: Connective = operator.parse()?;
    let mut parts = Vec::new();
    let mut info = None;
    for p in props {
        let p = p.trim();
        // Triple loops default to n=10, pairwise ones to n=100.
        let d = grid(
            shared,
            if matches!(p, "axioms" | "classify") {
                10
            } else {
                100
            },
        )?;
        info.get_or_insert_with(|| DomainInfo::from(&d));
        parts.push(match p {
            "axioms" => check_axioms(&c, &d, b)?,
            "strict" => check_strict_monotonicity(&c, &d, b),
            "cancel" => check_cancellation(&c, &d, false, b),
            "condcancel" => check_cancellation(&c, &d, true, b),
            "archimedean" => check_archimedean(&c, &d, b),
            "limit" => check_limit_property(&c, &d, b),
            "classify" => classify_uninorm(&c, &d, b)?,
            other => return Err(Error::Config(format!("unknown property '{other}'"))),
        });
    }
    let info = info.ok_or_else(|| Error::Config("no properties requested".into()))?;
    Ok(combine("check", c.name(), info, parts))
}

#[allow(clippy::too_many_arguments)]
fn cmd_substructure(
    shared: &Shared,
    b: &SearchBudget,
    mu: &str,
    carrier: &str,
    kind: &str,
    combiner: Option<&str>,
    props: &[String],
    case: Option<&str>,
) -> Result<PropertyReport> {
    let kind: KindTag = kind.parse()?;
    let combiner = combiner.map(str::parse::<Connective>).transpose()?;
    let props = props
        .iter()
        .map(|p| p.parse::<FuzzyProperty>())
        .collect::<Result<Vec<_>>>()?;
    let case = case.map(str::parse::<SpecialCase>).transpose()?;
    let carrier = io::load_carrier(carrier)?;
    let mu = io::load_subset(mu)?;
    let carrier = match carrier {
        CarrierSpec::Finite(m) => {
            if !props.is_empty() || case.is_some() {
                return Err(Error::Config(
                    "--props and --case need an interval carrier".into(),
                ));
            }
            CarrierMonoid::finite(m)
        }
        CarrierSpec::Interval(op) => {
            let d = grid(shared, 10)?;
            if let Some(case) = case {
                let c = combiner
                    .clone()
                    .ok_or_else(|| Error::Config("--case needs --combiner".into()))?;
                return characterize_special_case(case, &mu, &c, Some(&op), &d, b);
            }
            if !props.is_empty() {
                let parts = props
                    .iter()
                    .map(|&p| check_fuzzy_property(&mu, &op, p, &d, b))
                    .collect::<Result<Vec<_>>>()?;
                return Ok(combine(
                    "fuzzy-properties",
                    &mu.name(),
                    DomainInfo::from(&d),
                    parts,
                ));
            }
            CarrierMonoid::interval(d, op)?
        }
    };
    let combiner = match combiner {
        Some(c) => Some(c),
        None if kind.needs_combiner() => Some(carrier.connective().cloned().ok_or_else(|| {
            Error::Config(format!("kind {kind} on a finite carrier needs --combiner"))
        })?),
        None => None,
    };
    check_fuzzy_submonoid(&mu, &carrier, &SubstructureKind::new(kind, combiner)?, b)
}

fn cmd_vague(
    shared: &Shared,
    b: &SearchBudget,
    tnorm: &str,
    equality: &str,
    op: Option<&str>,
    props: &[String],
    reading: &str,
) -> Result<PropertyReport> {
    let t: Connective = tnorm.parse()?;
    if t.role() != Role::TNorm {
        return Err(Error::Config(format!("'{}' is not a t-norm", t.name())));
    }
    let reading: DegreeReading = reading.parse()?;
    let e = io::load_equality(equality)?;
    let d = match (&e, shared.grid) {
        (crate::vague::ScalarEquality::Table { points, .. }, None) => {
            Domain::from_points(points.clone())?
        }
        _ => grid(shared, 4)?,
    };
    let validity = validate_fuzzy_equality(&e, &t, &d, b)?;
    let mut parts = Vec::new();
    let wants = |p: &str| props.iter().any(|x| x.trim() == p);
    for p in props {
        if ![
            "equality",
            "op",
            "monoid",
            "commutativity",
            "strict",
            "cancel",
        ]
        .contains(&p.trim())
        {
            return Err(Error::Config(format!("unknown vague property '{p}'")));
        }
    }
    if !validity.verdict.holds() {
        let mut r = validity;
        r.tag("NOT_A_FUZZY_EQUALITY");
        return Ok(r);
    }
    if wants("equality") {
        parts.push(validity);
    }
    let eq = TFuzzyEquality::new(e, t.clone(), d.clone(), b)?;
    let v = match op {
        Some(path) => io::load_vague_op(path, eq)?,
        None => induce_vague_tnorm(&eq, &t, b)?.base().clone(),
    };
    if wants("op") {
        parts.push(check_vague_op(&v, b)?);
    }
    if wants("monoid") {
        parts.push(check_vague_monoid(&v, b)?);
    }
    if wants("commutativity") {
        parts.push(check_vague_commutativity(&v, b)?);
    }
    if wants("strict") {
        parts.push(check_vague_strict_monotone(&v, reading, b)?);
    }
    if wants("cancel") {
        parts.push(check_vague_cancellation(&v, reading, b)?);
    }
    if parts.is_empty() {
        return Err(Error::Config("no properties requested".into()));
    }
    Ok(combine("vague", v.name(), DomainInfo::from(&d), parts))
}

fn pick_tnorm(l: &Arc<FiniteLattice>, name: &str, b: &SearchBudget) -> Result<LatticeTNorm> {
    if name == "meet" {
        return Ok(LatticeTNorm::meet(l.clone()));
    }
    enumerate_lattice_tnorms(l, usize::MAX, b)?
        .into_iter()
        .find(|t| t.name() == name)
        .ok_or_else(|| Error::Config(format!("no lattice t-norm named '{name}' on {}", l.name())))
}

fn cmd_lattice(
    b: &SearchBudget,
    lattice: &str,
    tnorm: &str,
    mu: &str,
    props: &[String],
    reading: &str,
) -> Result<PropertyReport> {
    let l = io::load_lattice(lattice)?;
    let t = pick_tnorm(&l, tnorm, b)?;
    let mu = io::load_lattice_subset(mu, &l)?;
    let reading: DegreeReading = reading.parse()?;
    let mut parts = Vec::new();
    for p in props {
        parts.push(match p.trim() {
            "tnorm" => check_lattice_tnorm(&l, t.table(), t.name(), b),
            "subnorm" => check_lattice_fuzzy_subnorm(&mu, &t, b),
            "vague" => check_lattice_vague_structures(&crisp_lattice_equality(&l), &t, reading, b)?,
            other => check_lattice_fuzzy_property(&mu, &t, other.parse()?, b),
        });
    }
    let info = DomainInfo::finite(if l.is_chain() { "chain" } else { "lattice" }, l.len());
    if parts.is_empty() {
        return Err(Error::Config("no properties requested".into()));
    }
    Ok(combine(
        "lattice",
        &format!("{} on {}", t.name(), l.name()),
        info,
        parts,
    ))
}

fn cmd_enumerate(b: &SearchBudget, lattice: &str, limit: usize) -> Result<Output> {
    let l = io::load_lattice(lattice)?;
    let ts = enumerate_lattice_tnorms(&l, limit, b)?;
    let n = l.len();
    let rows = |t: &LatticeTNorm| -> Vec<Vec<String>> {
        (0..n)
            .map(|x| (0..n).map(|y| l.label(t.eval(x, y)).to_string()).collect())
            .collect()
    };
    let json = serde_json::json!({
        "lattice": l.name(),
        "elements": l.labels(),
        "count": ts.len(),
        "tnorms": ts.iter().map(|t| serde_json::json!({"name": t.name(), "table": rows(t)})).collect::<Vec<_>>(),
    });
    let mut text = format!("{}: {} t-norm(s)\n", l.name(), ts.len());
    for t in &ts {
        text.push_str(&format!("{}:\n", t.name()));
        for r in rows(t) {
            text.push_str(&format!("  {}\n", r.join(" ")));
        }
    }
    Ok(Output::Text {
        json: serde_json::to_string_pretty(&json).expect("json value serializes"),
        text,
        code: EXIT_HOLDS,
    })
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli, env_budget: Option<&str>) -> Result<Output> {
    let b = budget(&cli.shared, env_budget)?;
    let s = &cli.shared;
    Ok(match &cli.command {
        Command::Check { operator, props } => Output::Report(cmd_check(s, &b, operator, props)?),
        Command::Substructure {
            mu,
            carrier,
            kind,
            combiner,
            props,
            case,
        } => Output::Report(cmd_substructure(
            s,
            &b,
            mu,
            carrier,
            kind,
            combiner.as_deref(),
            props,
            case.as_deref(),
        )?),
        Command::Vague {
            tnorm,
            equality,
            op,
            props,
            reading,
        } => Output::Report(cmd_vague(
            s,
            &b,
            tnorm,
            equality,
            op.as_deref(),
            props,
            reading,
        )?),
        Command::Lattice {
            lattice,
            tnorm,
            mu,
            props,
            reading,
        } => Output::Report(cmd_lattice(&b, lattice, tnorm, mu, props, reading)?),
        Command::Suite { all, only } => {
            if !*all && only.is_none() {
                return Err(Error::Config("suite needs --all or --only".into()));
            }
            let r = run_suite(s.grid.unwrap_or(6), &b, only.as_deref())?;
            Output::Text {
                json: r.to_json(),
                text: r.to_text(),
                code: r.exit_code(),
            }
        }
        Command::Enumerate { lattice, limit } => cmd_enumerate(&b, lattice, limit.unwrap_or(usize::MAX))?,
    })
}

fn emit(shared: &Shared, body: &str) -> Result<()> {
    match &shared.out {
        Some(p) => std::fs::write(p, body).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_PARSE,
            };
        }
    };
    if let Some(n) = cli.shared.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let env = std::env::var(BUDGET_ENV).ok();
    let result = execute(&cli, env.as_deref()).and_then(|out| {
        let (body, code) = match out {
            Output::Report(r) => {
                let code = exit_code_for(r.verdict);
                let body = match cli.shared.format {
                    Format::Json => r.to_json() + "\n",
                    Format::Text => r.to_text(),
                };
                (body, code)
            }
            Output::Text { json, text, code } => match cli.shared.format {
                Format::Json => (json + "\n", code),
                Format::Text => (text, code),
            },
        };
        emit(&cli.shared, &body)?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fuzznorm: {e}");
            exit_code_for_error(&e)
        }
    }
}
