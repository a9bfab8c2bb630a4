//! Binary connectives on `[0,1]`: the builtin t-norms and t-conorms, the
//! ordinal-style uninorm and nullnorm constructions, duals, finite tables and
//! user closures.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::UnitScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Role {
    TNorm,
    TConorm,
    Uninorm,
    Nullnorm,
    Aggregation,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::TNorm => "TNORM",
            Role::TConorm => "TCONORM",
            Role::Uninorm => "UNINORM",
            Role::Nullnorm => "NULLNORM",
            Role::Aggregation => "AGGREGATION",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TNormFamily {
    Minimum,
    Product,
    Lukasiewicz,
    Drastic,
}

impl TNormFamily {
    pub const ALL: [TNormFamily; 4] = [
        TNormFamily::Minimum,
        TNormFamily::Product,
        TNormFamily::Lukasiewicz,
        TNormFamily::Drastic,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            TNormFamily::Minimum => "min",
            TNormFamily::Product => "product",
            TNormFamily::Lukasiewicz => "lukasiewicz",
            TNormFamily::Drastic => "drastic",
        }
    }

    /// The t-conorm related to this one by `S(x,y) = 1 - T(1-x,1-y)`.
    pub fn dual(self) -> TConormFamily {
        match self {
            TNormFamily::Minimum => TConormFamily::Maximum,
            TNormFamily::Product => TConormFamily::ProbabilisticSum,
            TNormFamily::Lukasiewicz => TConormFamily::Lukasiewicz,
            TNormFamily::Drastic => TConormFamily::Drastic,
        }
    }
}

impl FromStr for TNormFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix("tnorm:").unwrap_or(s);
        let s = s.strip_suffix("-T").unwrap_or(s);
        match s.to_ascii_lowercase().as_str() {
            "min" | "minimum" | "t_m" => Ok(TNormFamily::Minimum),
            "product" | "prod" | "t_p" => Ok(TNormFamily::Product),
            "lukasiewicz" | "luk" | "t_l" => Ok(TNormFamily::Lukasiewicz),
            "drastic" | "t_d" => Ok(TNormFamily::Drastic),
            other => Err(Error::Config(format!("unknown t-norm family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TConormFamily {
    Maximum,
    ProbabilisticSum,
    Lukasiewicz,
    Drastic,
}

impl TConormFamily {
    pub const ALL: [TConormFamily; 4] = [
        TConormFamily::Maximum,
        TConormFamily::ProbabilisticSum,
        TConormFamily::Lukasiewicz,
        TConormFamily::Drastic,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            TConormFamily::Maximum => "max",
            TConormFamily::ProbabilisticSum => "probsum",
            TConormFamily::Lukasiewicz => "lukasiewicz",
            TConormFamily::Drastic => "drastic",
        }
    }

    pub fn dual(self) -> TNormFamily {
        match self {
            TConormFamily::Maximum => TNormFamily::Minimum,
            TConormFamily::ProbabilisticSum => TNormFamily::Product,
            TConormFamily::Lukasiewicz => TNormFamily::Lukasiewicz,
            TConormFamily::Drastic => TNormFamily::Drastic,
        }
    }
}

impl FromStr for TConormFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix("tconorm:").unwrap_or(s);
        let s = s.strip_suffix("-S").unwrap_or(s);
        match s.to_ascii_lowercase().as_str() {
            "max" | "maximum" | "s_m" => Ok(TConormFamily::Maximum),
            "probsum" | "probabilistic-sum" | "s_p" => Ok(TConormFamily::ProbabilisticSum),
            "lukasiewicz" | "luk" | "s_l" => Ok(TConormFamily::Lukasiewicz),
            "drastic" | "s_d" => Ok(TConormFamily::Drastic),
            other => Err(Error::Config(format!("unknown t-conorm family '{other}'"))),
        }
    }
}

/// Aggregation functions with a native n-ary form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AggregationFamily {
    Min,
    Max,
    Mean,
}

impl AggregationFamily {
    pub fn short_name(self) -> &'static str {
        match self {
            AggregationFamily::Min => "min",
            AggregationFamily::Max => "max",
            AggregationFamily::Mean => "mean",
        }
    }

    fn eval_n(self, xs: &[UnitScalar]) -> UnitScalar {
        match self {
            AggregationFamily::Min => xs.iter().min().cloned().unwrap_or_else(UnitScalar::one),
            AggregationFamily::Max => xs.iter().max().cloned().unwrap_or_else(UnitScalar::zero),
            AggregationFamily::Mean => {
                let n = BigRational::from_integer(xs.len().max(1).into());
                let sum: BigRational = xs.iter().map(|x| x.value().clone()).sum();
                UnitScalar::new_unchecked(sum / n)
            }
        }
    }
}

impl FromStr for AggregationFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "min" | "a_min" => Ok(AggregationFamily::Min),
            "max" | "a_max" => Ok(AggregationFamily::Max),
            "mean" | "arithmetic-mean" => Ok(AggregationFamily::Mean),
            other => Err(Error::Config(format!(
                "unknown aggregation family '{other}'"
            ))),
        }
    }
}

/// What a uninorm does on the mixed region `A(e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MixedRule {
    Min,
    Max,
}

type ExactFn = dyn Fn(&UnitScalar, &UnitScalar) -> UnitScalar + Send + Sync;
type FloatFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

#[derive(Debug)]
struct TableOp {
    points: Vec<UnitScalar>,
    values: Vec<UnitScalar>,
}

#[derive(Clone)]
enum Op {
    TNorm(TNormFamily),
    TConorm(TConormFamily),
    Aggregation(AggregationFamily),
    Uninorm {
        e: UnitScalar,
        rule: MixedRule,
        t: Box<Connective>,
        s: Box<Connective>,
    },
    Nullnorm {
        k: UnitScalar,
        s: Box<Connective>,
        t: Box<Connective>,
    },
    Dual(Box<Connective>),
    Table(Arc<TableOp>),
    Exact(Arc<ExactFn>),
    Float(Arc<FloatFn>),
}

/// A named binary operation on `[0,1]` with a declared role and declared
/// special elements. The declarations are claims; [`crate::engine`] checks
/// them.
#[derive(Clone)]
pub struct Connective {
    name: String,
    role: Role,
    identity: Option<UnitScalar>,
    absorber: Option<UnitScalar>,
    op: Op,
}

impl fmt::Debug for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Connective")
            .field("name", &self.name)
            .field("role", &self.role)
            .field("identity", &self.identity)
            .field("absorber", &self.absorber)
            .finish()
    }
}

impl Connective {
    pub fn tnorm(family: TNormFamily) -> Self {
        Connective {
            name: format!("tnorm:{}", family.short_name()),
            role: Role::TNorm,
            identity: Some(UnitScalar::one()),
            absorber: Some(UnitScalar::zero()),
            op: Op::TNorm(family),
        }
    }

    pub fn tconorm(family: TConormFamily) -> Self {
        Connective {
            name: format!("tconorm:{}", family.short_name()),
            role: Role::TConorm,
            identity: Some(UnitScalar::zero()),
            absorber: Some(UnitScalar::one()),
            op: Op::TConorm(family),
        }
    }

    pub fn aggregation(family: AggregationFamily) -> Self {
        Connective {
            name: format!("aggregation:{}", family.short_name()),
            role: Role::Aggregation,
            identity: None,
            absorber: None,
            op: Op::Aggregation(family),
        }
    }

    /// A connective backed by an exact closure.
    pub fn from_fn(
        name: impl Into<String>,
        role: Role,
        identity: Option<UnitScalar>,
        absorber: Option<UnitScalar>,
        f: impl Fn(&UnitScalar, &UnitScalar) -> UnitScalar + Send + Sync + 'static,
    ) -> Self {
        Connective {
            name: name.into(),
            role,
            identity,
            absorber,
            op: Op::Exact(Arc::new(f)),
        }
    }

    /// A connective given by a float closed form. Results are taken at their
    /// exact binary value, and the checker compares them with an absolute
    /// tolerance instead of exactly.
    pub fn from_float_fn(
        name: impl Into<String>,
        role: Role,
        identity: Option<UnitScalar>,
        absorber: Option<UnitScalar>,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Connective {
            name: name.into(),
            role,
            identity,
            absorber,
            op: Op::Float(Arc::new(f)),
        }
    }

    /// A connective defined only on `points`; `values` is the row-major
    /// `points.len()²` table. Evaluating outside `points` panics.
    pub fn from_table(
        name: impl Into<String>,
        role: Role,
        identity: Option<UnitScalar>,
        points: Vec<UnitScalar>,
        values: Vec<UnitScalar>,
    ) -> Result<Self> {
        let n = points.len();
        if values.len() != n * n {
            return Err(Error::Domain(format!(
                "table needs {} entries for {n} points, got {}",
                n * n,
                values.len()
            )));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "table points must be strictly increasing".into(),
            ));
        }
        Ok(Connective {
            name: name.into(),
            role,
            identity,
            absorber: None,
            op: Op::Table(Arc::new(TableOp { points, values })),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn identity(&self) -> Option<&UnitScalar> {
        self.identity.as_ref()
    }

    pub fn absorber(&self) -> Option<&UnitScalar> {
        self.absorber.as_ref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn tnorm_family(&self) -> Option<TNormFamily> {
        match self.op {
            Op::TNorm(f) => Some(f),
            _ => None,
        }
    }

    pub fn tconorm_family(&self) -> Option<TConormFamily> {
        match self.op {
            Op::TConorm(f) => Some(f),
            _ => None,
        }
    }

    pub fn aggregation_family(&self) -> Option<AggregationFamily> {
        match self.op {
            Op::Aggregation(f) => Some(f),
            _ => None,
        }
    }

    /// `(e, rule, T, S)` when built by [`construct_uninorm_min`] or
    /// [`construct_uninorm_max`].
    pub fn uninorm_parts(&self) -> Option<(&UnitScalar, MixedRule, &Connective, &Connective)> {
        match &self.op {
            Op::Uninorm { e, rule, t, s } => Some((e, *rule, t, s)),
            _ => None,
        }
    }

    /// `(S, k, T)` when built by [`construct_nullnorm`].
    pub fn nullnorm_parts(&self) -> Option<(&Connective, &UnitScalar, &Connective)> {
        match &self.op {
            Op::Nullnorm { k, s, t } => Some((s, k, t)),
            _ => None,
        }
    }

    /// False when any part of the operation is evaluated in floating point.
    pub fn is_exact(&self) -> bool {
        match &self.op {
            Op::Float(_) => false,
            Op::Uninorm { t, s, .. } | Op::Nullnorm { s, t, .. } => t.is_exact() && s.is_exact(),
            Op::Dual(inner) => inner.is_exact(),
            _ => true,
        }
    }

    /// Whether the connective can be evaluated at `x` in every argument slot.
    pub fn supports(&self, x: &UnitScalar) -> bool {
        match &self.op {
            Op::Table(table) => table.points.binary_search(x).is_ok(),
            Op::Dual(inner) => inner.supports(&x.complement()),
            _ => true,
        }
    }

    pub fn eval(&self, x: &UnitScalar, y: &UnitScalar) -> UnitScalar {
        match &self.op {
            Op::TNorm(f) => eval_tnorm_family(*f, x, y),
            Op::TConorm(f) => eval_tconorm_family(*f, x, y),
            Op::Aggregation(f) => f.eval_n(&[x.clone(), y.clone()]),
            Op::Uninorm { e, rule, t, s } => eval_uninorm(e, *rule, t, s, x, y),
            Op::Nullnorm { k, s, t } => eval_nullnorm(s, k, t, x, y),
            Op::Dual(inner) => inner.eval(&x.complement(), &y.complement()).complement(),
            Op::Table(table) => {
                let i = table.points.binary_search(x);
                let j = table.points.binary_search(y);
                match (i, j) {
                    (Ok(i), Ok(j)) => table.values[i * table.points.len() + j].clone(),
                    _ => panic!(
                        "table connective '{}' evaluated outside its points at ({x}, {y})",
                        self.name
                    ),
                }
            }
            Op::Exact(f) => f(x, y),
            Op::Float(f) => UnitScalar::from_f64(f(x.to_f64(), y.to_f64())),
        }
    }

    /// n-ary evaluation: native for aggregation families, otherwise the left
    /// fold `C(C(x1,x2),x3)...`. An empty argument list yields the declared
    /// identity.
    pub fn eval_n(&self, xs: &[UnitScalar]) -> Result<UnitScalar> {
        if let Op::Aggregation(f) = self.op {
            if xs.is_empty() {
                return Err(Error::Domain("aggregation of zero arguments".into()));
            }
            return Ok(f.eval_n(xs));
        }
        match xs.split_first() {
            None => self.identity.clone().ok_or_else(|| {
                Error::Domain(format!(
                    "'{}' declares no identity for an empty fold",
                    self.name
                ))
            }),
            Some((first, rest)) => Ok(rest.iter().fold(first.clone(), |acc, x| self.eval(&acc, x))),
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn eval_tnorm_family(family: TNormFamily, x: &UnitScalar, y: &UnitScalar) -> UnitScalar {
    match family {
        TNormFamily::Minimum => x.min_of(y),
        TNormFamily::Product => UnitScalar::new_unchecked(x.value() * y.value()),
        TNormFamily::Lukasiewicz => UnitScalar::clamp(x.value() + y.value() - BigRational::one()),
        TNormFamily::Drastic => {
            if x.is_one() || y.is_one() {
                x.min_of(y)
            } else {
                UnitScalar::zero()
            }
        }
    }
}

fn eval_tconorm_family(family: TConormFamily, x: &UnitScalar, y: &UnitScalar) -> UnitScalar {
    match family {
        TConormFamily::Maximum => x.max_of(y),
        TConormFamily::ProbabilisticSum => {
            UnitScalar::new_unchecked(x.value() + y.value() - x.value() * y.value())
        }
        TConormFamily::Lukasiewicz => UnitScalar::clamp(x.value() + y.value()),
        TConormFamily::Drastic => {
            if x.is_zero() || y.is_zero() {
                x.max_of(y)
            } else {
                UnitScalar::one()
            }
        }
    }
}

fn eval_uninorm(
    e: &UnitScalar,
    rule: MixedRule,
    t: &Connective,
    s: &Connective,
    x: &UnitScalar,
    y: &UnitScalar,
) -> UnitScalar {
    let ev = e.value();
    if x <= e && y <= e {
        let xs = UnitScalar::new_unchecked(x.value() / ev);
        let ys = UnitScalar::new_unchecked(y.value() / ev);
        UnitScalar::new_unchecked(ev * t.eval(&xs, &ys).value())
    } else if x >= e && y >= e {
        let span = BigRational::one() - ev;
        let xs = UnitScalar::new_unchecked((x.value() - ev) / &span);
        let ys = UnitScalar::new_unchecked((y.value() - ev) / &span);
        UnitScalar::new_unchecked(ev + span * s.eval(&xs, &ys).value())
    } else {
        match rule {
            MixedRule::Min => x.min_of(y),
            MixedRule::Max => x.max_of(y),
        }
    }
}

fn eval_nullnorm(
    s: &Connective,
    k: &UnitScalar,
    t: &Connective,
    x: &UnitScalar,
    y: &UnitScalar,
) -> UnitScalar {
    let kv = k.value();
    if x <= k && y <= k {
        let xs = UnitScalar::new_unchecked(x.value() / kv);
        let ys = UnitScalar::new_unchecked(y.value() / kv);
        UnitScalar::new_unchecked(kv * s.eval(&xs, &ys).value())
    } else if x > k && y > k {
        let span = BigRational::one() - kv;
        let xs = UnitScalar::new_unchecked((x.value() - kv) / &span);
        let ys = UnitScalar::new_unchecked((y.value() - kv) / &span);
        UnitScalar::new_unchecked(span * t.eval(&xs, &ys).value() + kv)
    } else {
        k.clone()
    }
}

pub fn eval_tnorm(family: TNormFamily, x: &UnitScalar, y: &UnitScalar) -> UnitScalar {
    eval_tnorm_family(family, x, y)
}

pub fn eval_tconorm(family: TConormFamily, x: &UnitScalar, y: &UnitScalar) -> UnitScalar {
    eval_tconorm_family(family, x, y)
}

/// `x_C^{(n)}`: `n = 0` gives the declared identity, `n = 1` gives `x`,
/// otherwise the left fold of `n` copies of `x`.
pub fn power_iterate(c: &Connective, x: &UnitScalar, n: u32) -> Result<UnitScalar> {
    if n == 0 {
        return c.identity().cloned().ok_or_else(|| {
            Error::Domain(format!(
                "'{}' declares no identity, so x^(0) is undefined",
                c.name()
            ))
        });
    }
    let mut acc = x.clone();
    for _ in 1..n {
        acc = c.eval(&acc, x);
    }
    Ok(acc)
}

fn short_operand_name(c: &Connective) -> String {
    match (c.tnorm_family(), c.tconorm_family()) {
        (Some(f), _) => f.short_name().to_string(),
        (_, Some(f)) => f.short_name().to_string(),
        _ => c.name().to_string(),
    }
}

fn check_interior(name: &'static str, v: &UnitScalar, hint: &'static str) -> Result<()> {
    if v.is_interior() {
        Ok(())
    } else {
        Err(Error::DegenerateParameter {
            name,
            value: v.to_string(),
            hint,
        })
    }
}

fn check_role(c: &Connective, role: Role, slot: &str) -> Result<()> {
    if c.role() == role {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{slot} must have role {role}, '{}' has role {}",
            c.name(),
            c.role()
        )))
    }
}

fn construct_uninorm(
    e: UnitScalar,
    t: Connective,
    s: Connective,
    rule: MixedRule,
) -> Result<Connective> {
    check_interior(
        "e",
        &e,
        "use a plain t-norm (e=1) or t-conorm (e=0) instead",
    )?;
    check_role(&t, Role::TNorm, "T")?;
    check_role(&s, Role::TConorm, "S")?;
    let tag = match rule {
        MixedRule::Min => "umin",
        MixedRule::Max => "umax",
    };
    let name = format!(
        "uninorm:{tag}(e={e},T={},S={})",
        short_operand_name(&t),
        short_operand_name(&s)
    );
    Ok(Connective {
        name,
        role: Role::Uninorm,
        identity: Some(e.clone()),
        absorber: None,
        op: Op::Uninorm {
            e,
            rule,
            t: Box::new(t),
            s: Box::new(s),
        },
    })
}

/// The uninorm that rescales `T` onto `[0,e]²`, `S` onto `[e,1]²` and takes
/// the minimum elsewhere; `U(0,1) = 0`.
pub fn construct_uninorm_min(e: UnitScalar, t: Connective, s: Connective) -> Result<Connective> {
    construct_uninorm(e, t, s, MixedRule::Min)
}

/// As [`construct_uninorm_min`] with the maximum on the mixed region;
/// `U(0,1) = 1`.
pub fn construct_uninorm_max(e: UnitScalar, t: Connective, s: Connective) -> Result<Connective> {
    construct_uninorm(e, t, s, MixedRule::Max)
}

/// The nullnorm `<S,k,T>`: `S` rescaled onto `[0,k]²`, `T` onto `(k,1]²`,
/// constant `k` elsewhere.
pub fn construct_nullnorm(s: Connective, k: UnitScalar, t: Connective) -> Result<Connective> {
    check_interior(
        "k",
        &k,
        "a nullnorm with k=0 or k=1 is a plain t-norm or t-conorm",
    )?;
    check_role(&s, Role::TConorm, "S")?;
    check_role(&t, Role::TNorm, "T")?;
    let name = format!(
        "nullnorm:<{}-S,{k},{}-T>",
        short_operand_name(&s),
        short_operand_name(&t)
    );
    Ok(Connective {
        name,
        role: Role::Nullnorm,
        identity: None,
        absorber: Some(k.clone()),
        op: Op::Nullnorm {
            k,
            s: Box::new(s),
            t: Box::new(t),
        },
    })
}

/// The dual under the standard negation, `C*(x,y) = 1 - C(1-x, 1-y)`.
/// Builtin families map to their named duals; dualizing a dual unwraps it.
pub fn dualize(c: &Connective) -> Connective {
    if let Some(f) = c.tnorm_family() {
        return Connective::tconorm(f.dual());
    }
    if let Some(f) = c.tconorm_family() {
        return Connective::tnorm(f.dual());
    }
    if let Op::Dual(inner) = &c.op {
        return (**inner).clone();
    }
    let role = match c.role {
        Role::TNorm => Role::TConorm,
        Role::TConorm => Role::TNorm,
        other => other,
    };
    Connective {
        name: format!("dual({})", c.name),
        role,
        identity: c.identity.as_ref().map(UnitScalar::complement),
        absorber: c.absorber.as_ref().map(UnitScalar::complement),
        op: Op::Dual(Box::new(c.clone())),
    }
}

/// Splits on commas that are not nested inside brackets.
fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '<' | '[' => depth += 1,
            ')' | '>' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn parse_param(s: &str) -> Result<UnitScalar> {
    s.parse::<UnitScalar>()
        .map_err(|_| Error::Config(format!("invalid parameter value '{s}'")))
}

fn parse_uninorm(body: &str, rule: MixedRule) -> Result<Connective> {
    let args = split_args(body);
    if args.len() != 3 {
        return Err(Error::Config(format!(
            "uninorm needs (e,T,S), got '{body}'"
        )));
    }
    let (mut e, mut t, mut s) = (None, None, None);
    for (pos, arg) in args.iter().enumerate() {
        let (key, val) = match arg.split_once('=') {
            Some((k, v)) => (k.trim().to_string(), v.trim()),
            None => (["e", "T", "S"][pos].to_string(), *arg),
        };
        match key.as_str() {
            "e" => e = Some(parse_param(val)?),
            "T" => t = Some(Connective::tnorm(val.parse()?)),
            "S" => s = Some(Connective::tconorm(val.parse()?)),
            other => return Err(Error::Config(format!("unknown uninorm argument '{other}'"))),
        }
    }
    let missing = || Error::Config(format!("uninorm arguments incomplete in '{body}'"));
    construct_uninorm(
        e.ok_or_else(missing)?,
        t.ok_or_else(missing)?,
        s.ok_or_else(missing)?,
        rule,
    )
}

fn parse_nullnorm(body: &str) -> Result<Connective> {
    let args = split_args(body);
    if args.len() != 3 {
        return Err(Error::Config(format!(
            "nullnorm needs <S,k,T>, got '{body}'"
        )));
    }
    let (mut s, mut k, mut t) = (None, None, None);
    for (pos, arg) in args.iter().enumerate() {
        let (key, val) = match arg.split_once('=') {
            Some((k, v)) => (k.trim().to_string(), v.trim()),
            None => (["S", "k", "T"][pos].to_string(), *arg),
        };
        match key.as_str() {
            "S" => s = Some(Connective::tconorm(val.parse()?)),
            "k" => k = Some(parse_param(val)?),
            "T" => t = Some(Connective::tnorm(val.parse()?)),
            other => {
                return Err(Error::Config(format!(
                    "unknown nullnorm argument '{other}'"
                )))
            }
        }
    }
    let missing = || Error::Config(format!("nullnorm arguments incomplete in '{body}'"));
    construct_nullnorm(
        s.ok_or_else(missing)?,
        k.ok_or_else(missing)?,
        t.ok_or_else(missing)?,
    )
}

impl FromStr for Connective {
    type Err = Error;

    /// Canonical ids: `tnorm:min`, `tconorm:probsum`, `aggregation:mean`,
    /// `uninorm:umin(e=1/2,T=product,S=probsum)` (positional arguments are
    /// accepted too), `nullnorm:<lukasiewicz-S,1/2,lukasiewicz-T>` and
    /// `dual(<id>)`.
    fn from_str(id: &str) -> Result<Self> {
        let id = id.trim();
        if let Some(inner) = id.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
            return Ok(dualize(&inner.parse()?));
        }
        let (kind, rest) = id
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("unknown connective id '{id}'")))?;
        match kind {
            "tnorm" => Ok(Connective::tnorm(rest.parse()?)),
            "tconorm" => Ok(Connective::tconorm(rest.parse()?)),
            "aggregation" => Ok(Connective::aggregation(rest.parse()?)),
            "uninorm" => {
                let rest = rest.trim();
                let (rule, body) = if let Some(b) = rest.strip_prefix("umin(") {
                    (MixedRule::Min, b)
                } else if let Some(b) = rest.strip_prefix("umax(") {
                    (MixedRule::Max, b)
                } else {
                    return Err(Error::Config(format!("unknown uninorm form '{rest}'")));
                };
                let body = body
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Config(format!("unterminated uninorm id '{id}'")))?;
                parse_uninorm(body, rule)
            }
            "nullnorm" => {
                let body = rest
                    .trim()
                    .strip_prefix('<')
                    .and_then(|b| b.strip_suffix('>'))
                    .ok_or_else(|| {
                        Error::Config(format!("nullnorm id must look like <S,k,T>: '{id}'"))
                    })?;
                parse_nullnorm(body)
            }
            _ => Err(Error::Config(format!("unknown connective id '{id}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Domain};

    fn tn(f: TNormFamily) -> Connective {
        Connective::tnorm(f)
    }

    #[test]
    fn tnorm_examples() {
        assert_eq!(
            eval_tnorm(TNormFamily::Lukasiewicz, &q(7, 10), &q(1, 2)),
            q(1, 5)
        );
        assert_eq!(
            eval_tnorm(TNormFamily::Minimum, &q(3, 10), &UnitScalar::one()),
            q(3, 10)
        );
        assert_eq!(
            eval_tnorm(TNormFamily::Drastic, &q(3, 10), &q(9, 10)),
            UnitScalar::zero()
        );
        assert_eq!(
            eval_tnorm(TNormFamily::Drastic, &q(3, 10), &UnitScalar::one()),
            q(3, 10)
        );
        assert!("tnorm:hamacher".parse::<Connective>().is_err());
        assert!(matches!(
            "nope".parse::<TNormFamily>(),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn tconorm_examples() {
        assert_eq!(
            eval_tconorm(TConormFamily::ProbabilisticSum, &q(1, 2), &q(1, 2)),
            q(3, 4)
        );
        assert_eq!(
            eval_tconorm(TConormFamily::Maximum, &q(2, 5), &UnitScalar::zero()),
            q(2, 5)
        );
        assert_eq!(
            eval_tconorm(TConormFamily::Lukasiewicz, &q(7, 10), &q(1, 2)),
            UnitScalar::one()
        );
        assert_eq!(
            eval_tconorm(TConormFamily::Drastic, &q(1, 10), &q(1, 10)),
            UnitScalar::one()
        );
    }

    #[test]
    fn power_iterate_examples() {
        assert_eq!(
            power_iterate(&tn(TNormFamily::Product), &q(1, 2), 3).unwrap(),
            q(1, 8)
        );
        assert_eq!(
            power_iterate(&tn(TNormFamily::Lukasiewicz), &q(9, 10), 0).unwrap(),
            UnitScalar::one()
        );
        assert_eq!(
            power_iterate(&tn(TNormFamily::Minimum), &q(1, 2), 100).unwrap(),
            q(1, 2)
        );
        assert_eq!(
            power_iterate(&tn(TNormFamily::Minimum), &q(1, 2), 1).unwrap(),
            q(1, 2)
        );
        let nullnorm = construct_nullnorm(
            Connective::tconorm(TConormFamily::Lukasiewicz),
            q(1, 2),
            tn(TNormFamily::Lukasiewicz),
        )
        .unwrap();
        assert!(matches!(
            power_iterate(&nullnorm, &q(1, 2), 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn uninorm_min_examples() {
        let u = construct_uninorm_min(
            q(1, 2),
            tn(TNormFamily::Product),
            Connective::tconorm(TConormFamily::ProbabilisticSum),
        )
        .unwrap();
        assert_eq!(u.eval(&q(1, 4), &q(1, 4)), q(1, 8));
        assert_eq!(u.eval(&q(3, 10), &q(1, 2)), q(3, 10));
        assert_eq!(
            u.eval(&UnitScalar::zero(), &UnitScalar::one()),
            UnitScalar::zero()
        );
        assert_eq!(u.name(), "uninorm:umin(e=1/2,T=product,S=probsum)");
        assert_eq!(u.identity(), Some(&q(1, 2)));
    }

    #[test]
    fn uninorm_max_examples() {
        let u = construct_uninorm_max(
            q(1, 2),
            tn(TNormFamily::Product),
            Connective::tconorm(TConormFamily::Lukasiewicz),
        )
        .unwrap();
        assert_eq!(u.eval(&q(1, 4), &q(3, 4)), q(3, 4));
        assert_eq!(
            u.eval(&UnitScalar::zero(), &UnitScalar::one()),
            UnitScalar::one()
        );
        assert_eq!(u.eval(&q(3, 4), &q(3, 4)), UnitScalar::one());
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        for e in [UnitScalar::zero(), UnitScalar::one()] {
            let r = construct_uninorm_min(
                e,
                tn(TNormFamily::Product),
                Connective::tconorm(TConormFamily::Maximum),
            );
            assert!(matches!(r, Err(Error::DegenerateParameter { .. })));
        }
        let r = construct_nullnorm(
            Connective::tconorm(TConormFamily::Maximum),
            UnitScalar::one(),
            tn(TNormFamily::Minimum),
        );
        assert!(matches!(r, Err(Error::DegenerateParameter { .. })));
        let r = construct_uninorm_min(
            q(1, 2),
            Connective::tconorm(TConormFamily::Maximum),
            Connective::tconorm(TConormFamily::Maximum),
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn nullnorm_examples() {
        let f = construct_nullnorm(
            Connective::tconorm(TConormFamily::Lukasiewicz),
            q(1, 2),
            tn(TNormFamily::Lukasiewicz),
        )
        .unwrap();
        assert_eq!(f.eval(&q(1, 4), &q(1, 4)), q(1, 2));
        assert_eq!(f.eval(&q(1, 2), &q(9, 10)), q(1, 2));
        assert_eq!(f.eval(&UnitScalar::zero(), &q(3, 10)), q(3, 10));
        assert_eq!(f.name(), "nullnorm:<lukasiewicz-S,1/2,lukasiewicz-T>");
    }

    #[test]
    fn nullnorm_is_constant_on_mixed_region() {
        let f = construct_nullnorm(
            Connective::tconorm(TConormFamily::ProbabilisticSum),
            q(2, 5),
            tn(TNormFamily::Product),
        )
        .unwrap();
        let k = q(2, 5);
        let grid = Domain::grid(10).unwrap();
        for x in grid.points().iter().filter(|x| **x < k) {
            for y in grid.points().iter().filter(|y| **y > k) {
                assert_eq!(f.eval(x, y), k);
                assert_eq!(f.eval(y, x), k);
            }
        }
        for x in grid.points() {
            assert_eq!(f.eval(&k, x), k);
            if *x <= k {
                assert_eq!(f.eval(&UnitScalar::zero(), x), *x);
            }
            if *x >= k {
                assert_eq!(f.eval(&UnitScalar::one(), x), *x);
            }
        }
    }

    #[test]
    fn dualize_examples() {
        let dm = dualize(&tn(TNormFamily::Minimum));
        assert_eq!(dm.eval(&q(3, 10), &q(4, 5)), q(4, 5));
        let dl = dualize(&tn(TNormFamily::Lukasiewicz));
        assert_eq!(dl.eval(&q(7, 10), &q(1, 2)), UnitScalar::one());
        let custom = Connective::from_fn(
            "proj",
            Role::TNorm,
            Some(UnitScalar::one()),
            None,
            |x, _| x.clone(),
        );
        let d = dualize(&custom);
        assert_eq!(d.role(), Role::TConorm);
        assert_eq!(d.name(), "dual(proj)");
        assert_eq!(dualize(&d).name(), "proj");
    }

    #[test]
    fn dual_pairs_agree_on_grid() {
        let grid = Domain::grid(10).unwrap();
        for family in TNormFamily::ALL {
            let generic = Connective::from_fn(
                "wrapped",
                Role::TNorm,
                Some(UnitScalar::one()),
                None,
                move |x, y| eval_tnorm(family, x, y),
            );
            let dual = dualize(&generic);
            for x in grid.points() {
                assert_eq!(dual.eval(&UnitScalar::zero(), x), *x);
                for y in grid.points() {
                    assert_eq!(dual.eval(x, y), eval_tconorm(family.dual(), x, y));
                    assert_eq!(dualize(&dual).eval(x, y), generic.eval(x, y));
                }
            }
        }
    }

    #[test]
    fn parses_canonical_ids() {
        for id in [
            "tnorm:min",
            "tnorm:product",
            "tnorm:lukasiewicz",
            "tnorm:drastic",
            "tconorm:max",
            "tconorm:probsum",
            "tconorm:lukasiewicz",
            "tconorm:drastic",
            "aggregation:mean",
            "uninorm:umin(e=1/2,T=product,S=probsum)",
            "nullnorm:<lukasiewicz-S,1/2,lukasiewicz-T>",
        ] {
            assert_eq!(id.parse::<Connective>().unwrap().name(), id);
        }
        let u: Connective = "uninorm:umax(1/2,product,probsum)".parse().unwrap();
        assert_eq!(u.name(), "uninorm:umax(e=1/2,T=product,S=probsum)");
        let d: Connective = "dual(tnorm:product)".parse().unwrap();
        assert_eq!(d.name(), "tconorm:probsum");
        assert!("uninorm:umin(e=1,T=product,S=probsum)"
            .parse::<Connective>()
            .is_err());
        assert!("nullnorm:lukasiewicz".parse::<Connective>().is_err());
    }

    #[test]
    fn eval_n_folds_left() {
        let p = tn(TNormFamily::Product);
        assert_eq!(p.eval_n(&[q(1, 2), q(1, 2), q(1, 2)]).unwrap(), q(1, 8));
        assert_eq!(p.eval_n(&[]).unwrap(), UnitScalar::one());
        let mean = Connective::aggregation(AggregationFamily::Mean);
        assert_eq!(
            mean.eval_n(&[UnitScalar::zero(), q(1, 2), UnitScalar::one()])
                .unwrap(),
            q(1, 2)
        );
    }

    #[test]
    fn tables_evaluate_on_their_points() {
        let pts = vec![UnitScalar::zero(), UnitScalar::one()];
        let vals = vec![
            UnitScalar::zero(),
            UnitScalar::zero(),
            UnitScalar::zero(),
            UnitScalar::one(),
        ];
        let t =
            Connective::from_table("and", Role::TNorm, Some(UnitScalar::one()), pts, vals).unwrap();
        assert_eq!(
            t.eval(&UnitScalar::one(), &UnitScalar::one()),
            UnitScalar::one()
        );
        assert!(!t.supports(&q(1, 2)));
    }
}
