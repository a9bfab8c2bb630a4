use std::fmt;
use std::str::FromStr;

use crate::connective::{Connective, Role};
use crate::engine::trajectory;
use crate::error::{Error, Result};
use crate::report::{
    try_par_tally, BudgetInfo, Cmp, Datum, DomainInfo, PropertyReport, SearchBudget, Tally, Tri,
    Verdict, Witness,
};
use crate::scalar::{Domain, UnitScalar};

use super::carrier::{CarrierMonoid, Elem};
use super::subset::FuzzySubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KindTag {
    Subgroupoid,
    Subgroup,
    Submonoid,
    TSubnorm,
    TSubconorm,
    ASubmonoid,
    USubmonoid,
    FSubmonoid,
}

impl KindTag {
    pub fn id(self) -> &'static str {
        match self {
            KindTag::Subgroupoid => "subgroupoid",
            KindTag::Subgroup => "subgroup",
            KindTag::Submonoid => "submonoid",
            KindTag::TSubnorm => "t-subnorm",
            KindTag::TSubconorm => "t-subconorm",
            KindTag::ASubmonoid => "a-submonoid",
            KindTag::USubmonoid => "u-submonoid",
            KindTag::FSubmonoid => "f-submonoid",
        }
    }

    /// Whether the kind replaces the minimum by a user combiner.
    pub fn needs_combiner(self) -> bool {
        matches!(
            self,
            KindTag::ASubmonoid | KindTag::USubmonoid | KindTag::FSubmonoid
        )
    }
}

impl fmt::Display for KindTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for KindTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(
            match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
                "subgroupoid" => KindTag::Subgroupoid,
                "subgroup" => KindTag::Subgroup,
                "submonoid" => KindTag::Submonoid,
                "t-subnorm" => KindTag::TSubnorm,
                "t-subconorm" => KindTag::TSubconorm,
                "a-submonoid" => KindTag::ASubmonoid,
                "u-submonoid" => KindTag::USubmonoid,
                "f-submonoid" => KindTag::FSubmonoid,
                other => {
                    return Err(Error::Config(format!(
                        "unknown substructure kind '{other}'"
                    )))
                }
            },
        )
    }
}

/// Which substructure to check, and the operator that replaces the minimum
/// for the aggregation, uninorm and nullnorm kinds.
#[derive(Debug, Clone)]
pub struct SubstructureKind {
    tag: KindTag,
    combiner: Option<Connective>,
}

impl SubstructureKind {
    pub fn min(tag: KindTag) -> Result<Self> {
        Self::new(tag, None)
    }

    pub fn new(tag: KindTag, combiner: Option<Connective>) -> Result<Self> {
        match (&combiner, tag.needs_combiner()) {
            (None, true) => return Err(Error::Config(format!("kind {tag} needs a combiner"))),
            (Some(c), false) => {
                return Err(Error::Config(format!(
                    "kind {tag} uses the minimum; combiner '{}' is not allowed",
                    c.name()
                )))
            }
            _ => {}
        }
        if let Some(c) = &combiner {
            let ok = match tag {
                KindTag::ASubmonoid => {
                    matches!(c.role(), Role::Aggregation | Role::TNorm | Role::TConorm)
                }
                KindTag::USubmonoid => c.role() == Role::Uninorm,
                KindTag::FSubmonoid => c.role() == Role::Nullnorm,
                _ => true,
            };
            if !ok {
                return Err(Error::Domain(format!(
                    "combiner '{}' with role {} does not fit kind {tag}",
                    c.name(),
                    c.role()
                )));
            }
        }
        Ok(SubstructureKind { tag, combiner })
    }

    pub fn tag(&self) -> KindTag {
        self.tag
    }

    pub fn combiner(&self) -> Option<&Connective> {
        self.combiner.as_ref()
    }

    fn combine(&self, xs: &[UnitScalar]) -> Result<UnitScalar> {
        match &self.combiner {
            None => Ok(xs.iter().min().cloned().unwrap_or_else(UnitScalar::one)),
            Some(c) => c.eval_n(xs),
        }
    }

    fn cmp(&self) -> Cmp {
        self.combiner
            .as_ref()
            .map(Cmp::for_connective)
            .unwrap_or(Cmp::Exact)
    }
}

fn budget_info(carrier: &CarrierMonoid, b: &SearchBudget) -> BudgetInfo {
    BudgetInfo {
        resolution: carrier.resolution(),
        max_witnesses: b.max_witnesses,
        ..BudgetInfo::default()
    }
}

fn subject(mu: &FuzzySubset, carrier: &CarrierMonoid) -> String {
    format!("{} on {}", mu.name(), carrier.name())
}

fn carrier_cmp(carrier: &CarrierMonoid) -> Cmp {
    carrier
        .connective()
        .map(Cmp::for_connective)
        .unwrap_or(Cmp::Exact)
}

/// `combine(mu(x1), ..., mu(xn)) <= mu(x1 o ... o xn)` over every n-tuple.
fn closure_check(
    id: &str,
    mu: &FuzzySubset,
    carrier: &CarrierMonoid,
    kind: &SubstructureKind,
    arity: usize,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let elems = carrier.elements();
    let n = elems.len();
    b.ensure_tuples(id, (n as u128).pow(arity as u32))?;
    let values = mu.values(carrier)?;
    let cmp = Cmp::both(kind.cmp(), carrier_cmp(carrier));
    let t = try_par_tally(n, b.max_witnesses, |first, t| {
        let mut idx = vec![0usize; arity];
        idx[0] = first;
        loop {
            let mut product = elems[idx[0]].clone();
            for &i in &idx[1..] {
                product = carrier.op(&product, &elems[i])?;
            }
            let args: Vec<UnitScalar> = idx.iter().map(|&i| values[i].clone()).collect();
            let lhs = kind.combine(&args)?;
            let rhs = mu.value(carrier, &product)?;
            t.record(cmp.le(&lhs, &rhs), || {
                Witness::new(
                    idx.iter().map(|&i| carrier.datum(&elems[i])).collect(),
                    vec![lhs.clone().into(), rhs.clone().into()],
                )
            });
            let mut pos = arity - 1;
            loop {
                if pos == 0 {
                    return Ok(());
                }
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
                pos -= 1;
            }
        }
    })?;
    Ok(t.into_report(
        id,
        &subject(mu, carrier),
        carrier.domain_info(),
        budget_info(carrier, b),
    ))
}

fn unit_check(
    mu: &FuzzySubset,
    carrier: &CarrierMonoid,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let e = carrier.identity();
    let v = mu.value(carrier, &e)?;
    let mut t = Tally::new(b.max_witnesses);
    if v.is_one() {
        t.pass();
    } else {
        t.fail(Witness::new(vec![carrier.datum(&e)], vec![v.into()]));
    }
    Ok(t.into_report(
        "unit",
        &subject(mu, carrier),
        carrier.domain_info(),
        budget_info(carrier, b),
    ))
}

/// `min(mu(x), mu(y)) <= mu(x o y)` for all pairs.
pub fn check_fuzzy_subgroupoid(
    mu: &FuzzySubset,
    carrier: &CarrierMonoid,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    check_fuzzy_submonoid(
        mu,
        carrier,
        &SubstructureKind::min(KindTag::Subgroupoid)?,
        b,
    )
}

/// The closure condition of the kind (n-ary up to the arity cap for the
/// aggregation kind) plus `mu(e) = 1` for every kind except subgroupoids.
pub fn check_fuzzy_submonoid(
    mu: &FuzzySubset,
    carrier: &CarrierMonoid,
    kind: &SubstructureKind,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let op_role = carrier.connective().map(Connective::role);
    match kind.tag() {
        KindTag::Subgroup => return check_fuzzy_subgroup(mu, carrier, b),
        KindTag::TSubnorm if op_role != Some(Role::TNorm) => {
            return Err(Error::Domain(
                "a t-subnorm needs a carrier ([0,1], T) with a t-norm T".into(),
            ))
        }
        KindTag::TSubconorm if op_role != Some(Role::TConorm) => {
            return Err(Error::Domain(
                "a t-subconorm needs a carrier ([0,1], S) with a t-conorm S".into(),
            ))
        }
        _ => {}
    }
    let mut report =
        PropertyReport::new(kind.tag().id(), subject(mu, carrier), carrier.domain_info())
            .with_budget(budget_info(carrier, b));
    if let Some(c) = kind.combiner() {
        report.tag(&format!("COMBINER={}", c.name()));
    }
    if kind.tag() == KindTag::ASubmonoid {
        for arity in 2..=b.arity_cap {
            report.push_check(closure_check(
                &format!("closure-n{arity}"),
                mu,
                carrier,
                kind,
                arity,
                b,
            )?);
        }
    } else {
        report.push_check(closure_check("closure", mu, carrier, kind, 2, b)?);
    }
    if kind.tag() != KindTag::Subgroupoid {
        report.push_check(unit_check(mu, carrier, b)?);
    }
    Ok(report)
}

/// Subgroupoid condition plus `mu(x^-1) >= mu(x)` on a finite group.
pub fn check_fuzzy_subgroup(
    mu: &FuzzySubset,
    carrier: &CarrierMonoid,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let CarrierMonoid::Finite(g) = carrier else {
        return Err(Error::Domain(
            "fuzzy subgroups need a finite group carrier".into(),
        ));
    };
    let inverses = g.inverses()?;
    let kind = SubstructureKind::min(KindTag::Subgroupoid)?;
    let mut report = PropertyReport::new("subgroup", subject(mu, carrier), carrier.domain_info())
        .with_budget(budget_info(carrier, b));
    report.push_check(closure_check("closure", mu, carrier, &kind, 2, b)?);
    let values = mu.values(carrier)?;
    let mut t = Tally::new(b.max_witnesses);
    for (a, inv) in inverses.iter().enumerate() {
        if values[*inv] >= values[a] {
            t.pass();
        } else {
            t.fail(Witness::new(
                vec![
                    Datum::Label(g.label(a).into()),
                    Datum::Label(g.label(*inv).into()),
                ],
                vec![values[a].clone().into(), values[*inv].clone().into()],
            ));
        }
    }
    report.push_check(t.into_report(
        "inverse",
        &subject(mu, carrier),
        carrier.domain_info(),
        budget_info(carrier, b),
    ));
    Ok(report)
}

/// The fuzzified classical properties of a t-norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FuzzyProperty {
    Strict,
    Cancel,
    CondCancel,
    Arch,
    Limit,
}

impl FuzzyProperty {
    pub const ALL: [FuzzyProperty; 5] = [
        FuzzyProperty::Strict,
        FuzzyProperty::Cancel,
        FuzzyProperty::CondCancel,
        FuzzyProperty::Arch,
        FuzzyProperty::Limit,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FuzzyProperty::Strict => "fstrict",
            FuzzyProperty::Cancel => "fcancel",
            FuzzyProperty::CondCancel => "fcondcancel",
            FuzzyProperty::Arch => "farch",
            FuzzyProperty::Limit => "flimit",
        }
    }
}

impl FromStr for FuzzyProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FuzzyProperty::ALL
            .into_iter()
            .find(|p| p.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown fuzzy property '{s}'")))
    }
}

/// Carrier `(D, T)` for the t-norm level checks.
fn tnorm_carrier(t: &Connective, d: &Domain) -> Result<CarrierMonoid> {
    if t.role() != Role::TNorm {
        return Err(Error::Domain(format!(
            "'{}' is not declared as a t-norm",
            t.name()
        )));
    }
    CarrierMonoid::interval(d.clone(), t.clone())
}

fn at(mu: &FuzzySubset, carrier: &CarrierMonoid, x: &UnitScalar) -> Result<UnitScalar> {
    mu.value(carrier, &Elem::Scalar(x.clone()))
}

fn tv(t: &Connective, x: &UnitScalar, y: &UnitScalar) -> Result<UnitScalar> {
    if t.supports(x) && t.supports(y) {
        Ok(t.eval(x, y))
    } else {
        Err(Error::NotTotal {
            element: format!("{}({x}, {y})", t.name()),
        })
    }
}

/// Checks one fuzzified property of `mu` relative to `T` on `D`. When `mu`
/// is not a fuzzy t-subnorm of `T` the report is VACUOUS and tagged
/// `NOT_A_SUBNORM`, with the failed gate attached as a diagnostic.
pub fn check_fuzzy_property(
    mu: &FuzzySubset,
    t: &Connective,
    prop: FuzzyProperty,
    d: &Domain,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let carrier = tnorm_carrier(t, d)?;
    let gate = check_fuzzy_submonoid(mu, &carrier, &SubstructureKind::min(KindTag::TSubnorm)?, b)?;
    let subj = subject(mu, &carrier);
    if !gate.verdict.holds() {
        let mut r = PropertyReport::new(prop.id(), subj, carrier.domain_info())
            .with_budget(budget_info(&carrier, b));
        r.verdict = Verdict::Vacuous;
        r.tag("NOT_A_SUBNORM");
        r.push_diagnostic(gate);
        return Ok(r);
    }
    let pts = d.points();
    let cmp = carrier_cmp(&carrier);
    let cap = b.max_witnesses;
    let mu0 = at(mu, &carrier, &UnitScalar::zero())?;
    let mut report = match prop {
        FuzzyProperty::Strict => {
            let tally = try_par_tally(pts.len(), cap, |i, tally| {
                let x = &pts[i];
                if !x.is_interior() {
                    return Ok(());
                }
                for (j, y) in pts.iter().enumerate() {
                    for z in &pts[j + 1..] {
                        let a = at(mu, &carrier, &tv(t, x, y)?)?;
                        let r = at(mu, &carrier, &tv(t, x, z)?)?;
                        tally.record(cmp.lt(&r, &a), || Witness::scalars(&[x, y, z], &[&a, &r]));
                    }
                }
                Ok(())
            })?;
            tally.into_report(
                prop.id(),
                &subj,
                carrier.domain_info(),
                budget_info(&carrier, b),
            )
        }
        FuzzyProperty::Cancel => {
            let tally = try_par_tally(pts.len(), cap, |i, tally| {
                let x = &pts[i];
                for (j, y) in pts.iter().enumerate() {
                    for z in &pts[j + 1..] {
                        if x.is_zero() {
                            tally.pass();
                            continue;
                        }
                        let a = at(mu, &carrier, &tv(t, x, y)?)?;
                        let r = at(mu, &carrier, &tv(t, x, z)?)?;
                        let ok = match cmp.eq(&a, &r) {
                            Tri::Yes => Tri::No,
                            _ => Tri::Yes,
                        };
                        tally.record(ok, || Witness::scalars(&[x, y, z], &[&a, &r]));
                    }
                }
                Ok(())
            })?;
            tally.into_report(
                prop.id(),
                &subj,
                carrier.domain_info(),
                budget_info(&carrier, b),
            )
        }
        FuzzyProperty::CondCancel => {
            let run = |strong: bool| {
                try_par_tally(pts.len(), cap, |i, tally| {
                    let x = &pts[i];
                    for (j, y) in pts.iter().enumerate() {
                        for z in &pts[j + 1..] {
                            let a = at(mu, &carrier, &tv(t, x, y)?)?;
                            let r = at(mu, &carrier, &tv(t, x, z)?)?;
                            let premise =
                                cmp.eq(&a, &r) == Tri::Yes && cmp.lt(&mu0, &a) == Tri::Yes;
                            if !premise {
                                tally.pass();
                                continue;
                            }
                            let (my, mz) = (at(mu, &carrier, y)?, at(mu, &carrier, z)?);
                            let ok = if strong { Tri::No } else { cmp.eq(&my, &mz) };
                            tally.record(ok, || Witness::scalars(&[x, y, z], &[&a, &r, &my, &mz]));
                        }
                    }
                    Ok(())
                })
            };
            let mut r = run(false)?.into_report(
                prop.id(),
                &subj,
                carrier.domain_info(),
                budget_info(&carrier, b),
            );
            let strong = run(true)?.into_report(
                "fcondcancel-strong",
                &subj,
                carrier.domain_info(),
                budget_info(&carrier, b),
            );
            r.push_diagnostic(strong);
            r
        }
        FuzzyProperty::Arch => {
            let interior = d.interior();
            let mus = mu.values(&carrier)?;
            if mus.iter().all(|v| v == &mus[0]) {
                let mut r = PropertyReport::new(prop.id(), &subj, carrier.domain_info())
                    .with_budget(budget_info(&carrier, b));
                r.verdict = Verdict::Vacuous;
                r.tag("VACUOUS_BY_CONSTANCY");
                r.budget.n_max = Some(b.n_max);
                return Ok(r);
            }
            let tally = try_par_tally(interior.len(), cap, |i, tally| {
                let x = &interior[i];
                let traj = trajectory(t, x, b.n_max);
                let mu_traj = traj
                    .powers
                    .iter()
                    .map(|p| at(mu, &carrier, p))
                    .collect::<Result<Vec<_>>>()?;
                for y in interior {
                    let my = at(mu, &carrier, y)?;
                    if mu_traj.iter().any(|m| cmp.lt(m, &my) == Tri::Yes) {
                        tally.pass();
                    } else if traj.stationary {
                        let last = mu_traj.last().expect("non-empty");
                        tally.fail(Witness::new(
                            vec![x.into(), y.into()],
                            vec![
                                last.into(),
                                (&my).into(),
                                Datum::Count(traj.powers.len() as u64),
                            ],
                        ));
                    } else {
                        tally.unsure();
                    }
                }
                Ok(())
            })?;
            let mut r = tally.into_report(
                prop.id(),
                &subj,
                carrier.domain_info(),
                budget_info(&carrier, b),
            );
            r.budget.n_max = Some(b.n_max);
            r
        }
        FuzzyProperty::Limit => {
            let interior = d.interior();
            let eps = if cmp == Cmp::Exact {
                b.epsilon.clone()
            } else {
                UnitScalar::from_f64(1e-9)
            };
            let tally = try_par_tally(interior.len(), cap, |i, tally| {
                let x = &interior[i];
                let traj = trajectory(t, x, b.iter_cap);
                for p in &traj.powers {
                    if p.is_zero() {
                        tally.pass();
                        return Ok(());
                    }
                    if p < &eps {
                        let m = at(mu, &carrier, p)?;
                        let gap = num_traits::Signed::abs(&(m.value() - mu0.value()));
                        if gap < *eps.value() {
                            tally.pass();
                        } else {
                            tally.unsure();
                        }
                        return Ok(());
                    }
                }
                if traj.stationary {
                    let p = traj.powers.last().expect("non-empty");
                    let m = at(mu, &carrier, p)?;
                    tally.record(cmp.eq(&m, &mu0), || Witness::scalars(&[x], &[p, &m, &mu0]));
                } else {
                    tally.unsure();
                }
                Ok(())
            })?;
            let mut r = tally.into_report(
                prop.id(),
                &subj,
                carrier.domain_info(),
                budget_info(&carrier, b),
            );
            r.budget.iter_cap = Some(b.iter_cap);
            r.budget.epsilon = Some(eps);
            r
        }
    };
    report.tag("SUBNORM_GATE_PASSED");
    Ok(report)
}

/// When `T` is strictly monotone and `mu` is a fuzzy t-subnorm of `T`, `mu`
/// cannot be strictly decreasing. HOLDS carries a non-decreasing pair
/// `x < y, mu(x) <= mu(y)`. A strictly decreasing `mu` FAILS when both
/// preconditions hold and is VACUOUS otherwise.
pub fn check_not_strictly_decreasing(
    mu: &FuzzySubset,
    t: &Connective,
    d: &Domain,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let carrier = tnorm_carrier(t, d)?;
    let subj = subject(mu, &carrier);
    let mut r = PropertyReport::new("not-strictly-decreasing", &subj, carrier.domain_info())
        .with_budget(budget_info(&carrier, b));
    let strict = crate::engine::check_strict_monotonicity(t, d, b);
    let gate = check_fuzzy_submonoid(mu, &carrier, &SubstructureKind::min(KindTag::TSubnorm)?, b)?;
    let preconditions = strict.verdict.holds() && gate.verdict.holds();
    if !strict.verdict.holds() {
        r.tag("T_NOT_STRICT");
    }
    if !gate.verdict.holds() {
        r.tag("NOT_A_SUBNORM");
    }
    r.push_diagnostic(strict);
    r.push_diagnostic(gate);
    let values = mu.values(&carrier)?;
    let pts = d.points();
    let pair = (0..pts.len())
        .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
        .find(|&(i, j)| values[i] <= values[j]);
    match pair {
        Some((i, j)) => {
            r.witnesses.push(Witness::scalars(
                &[&pts[i], &pts[j]],
                &[&values[i], &values[j]],
            ));
            r.verdict = Verdict::HoldsOnDomain;
        }
        None => {
            r.tag("STRICTLY_DECREASING_ON_DOMAIN");
            r.verdict = if preconditions {
                Verdict::Fails
            } else {
                Verdict::Vacuous
            };
            if preconditions {
                r.witnesses.push(Witness::new(
                    vec![Datum::Label("strictly decreasing".into())],
                    vec![],
                ));
            }
        }
    }
    Ok(r)
}

/// The crisp set `{x | mu(x) = 1}` with its closure status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Core {
    pub elements: Vec<Elem>,
    pub contains_identity: bool,
    /// `mu(x o y) = 1` for all `x, y` in the core.
    pub closed: bool,
}

pub fn extract_core(mu: &FuzzySubset, carrier: &CarrierMonoid) -> Result<Core> {
    let elems = carrier.elements();
    let values = mu.values(carrier)?;
    let core: Vec<Elem> = elems
        .into_iter()
        .zip(values)
        .filter(|(_, v)| v.is_one())
        .map(|(e, _)| e)
        .collect();
    let mut closed = true;
    'outer: for a in &core {
        for c in &core {
            if !mu.value(carrier, &carrier.op(a, c)?)?.is_one() {
                closed = false;
                break 'outer;
            }
        }
    }
    let contains_identity = core.contains(&carrier.identity());
    Ok(Core {
        elements: core,
        contains_identity,
        closed,
    })
}

/// HOLDS iff the point set is closed under `C`.
pub fn check_discrete_subalgebra(
    points: &Domain,
    c: &Connective,
    b: &SearchBudget,
) -> PropertyReport {
    let mut t = Tally::new(b.max_witnesses);
    for x in points.points() {
        for y in points.points() {
            if !(c.supports(x) && c.supports(y)) {
                t.unsure();
                continue;
            }
            let v = c.eval(x, y);
            if points.contains(&v) {
                t.pass();
            } else {
                t.fail(Witness::scalars(&[x, y], &[&v]));
            }
        }
    }
    t.into_report(
        "discrete-subalgebra",
        c.name(),
        DomainInfo::from(points),
        BudgetInfo {
            max_witnesses: b.max_witnesses,
            ..BudgetInfo::default()
        },
    )
}

/// `{0, e/n, ..., e, e + (1-e)/m, ..., 1}`.
pub fn l_nm(e: &UnitScalar, n: u32, m: u32) -> Result<Domain> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("L_{n,m} needs n, m >= 1".into()));
    }
    use num_rational::BigRational;
    let ev = e.value();
    let lower = (0..=n).map(|i| {
        UnitScalar::clamp(
            ev * BigRational::from_integer(i.into()) / BigRational::from_integer(n.into()),
        )
    });
    let span = BigRational::from_integer(1.into()) - ev;
    let upper = (0..=m).map(|j| {
        UnitScalar::clamp(
            ev + &span * BigRational::from_integer(j.into()) / BigRational::from_integer(m.into()),
        )
    });
    Domain::from_points(lower.chain(upper).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connective::{
        construct_nullnorm, construct_uninorm_min, AggregationFamily, TConormFamily, TNormFamily,
    };
    use crate::fuzzy::carrier::FiniteMonoid;
    use crate::scalar::q;

    fn interval(c: Connective, n: u32) -> CarrierMonoid {
        CarrierMonoid::interval(Domain::grid(n).unwrap(), c).unwrap()
    }

    fn tsub() -> SubstructureKind {
        SubstructureKind::min(KindTag::TSubnorm).unwrap()
    }

    #[test]
    fn identity_is_a_subnorm_of_min_only() {
        let b = SearchBudget::default();
        let m = interval(Connective::tnorm(TNormFamily::Minimum), 10);
        assert!(
            check_fuzzy_submonoid(&FuzzySubset::Identity, &m, &tsub(), &b)
                .unwrap()
                .verdict
                .holds()
        );
        let p = interval(Connective::tnorm(TNormFamily::Product), 10);
        let r = check_fuzzy_submonoid(&FuzzySubset::Identity, &p, &tsub(), &b).unwrap();
        assert!(r.verdict.fails());
        let closure = r.check("closure").unwrap();
        let half = Datum::Scalar(q(1, 2));
        assert!(closure
            .witnesses
            .iter()
            .any(|w| w.inputs == vec![half.clone(), half.clone()]
                && w.values == vec![half.clone(), Datum::Scalar(q(1, 4))]));
    }

    #[test]
    fn complement_is_amin_submonoid_of_max() {
        let b = SearchBudget::default();
        let s = interval(Connective::tconorm(TConormFamily::Maximum), 10);
        let kind = SubstructureKind::new(
            KindTag::ASubmonoid,
            Some(Connective::aggregation(AggregationFamily::Min)),
        )
        .unwrap();
        let r = check_fuzzy_submonoid(&FuzzySubset::Complement, &s, &kind, &b).unwrap();
        assert!(r.verdict.holds());
        assert_eq!(r.checks.len(), 3);
    }

    #[test]
    fn kinds_validate_combiners() {
        assert!(SubstructureKind::new(
            KindTag::USubmonoid,
            Some(Connective::tnorm(TNormFamily::Minimum))
        )
        .is_err());
        assert!(SubstructureKind::new(KindTag::FSubmonoid, None).is_err());
        assert!(SubstructureKind::new(
            KindTag::TSubnorm,
            Some(Connective::tnorm(TNormFamily::Minimum))
        )
        .is_err());
    }

    #[test]
    fn subgroup_indicators_on_z4() {
        let b = SearchBudget::default();
        let z4 = CarrierMonoid::finite(FiniteMonoid::cyclic(4));
        assert!(
            check_fuzzy_subgroup(&FuzzySubset::indicator(["0", "2"]), &z4, &b)
                .unwrap()
                .verdict
                .holds()
        );
        assert!(
            check_fuzzy_subgroup(&FuzzySubset::indicator(["0", "1"]), &z4, &b)
                .unwrap()
                .verdict
                .fails()
        );
        assert!(check_fuzzy_subgroup(&FuzzySubset::One, &z4, &b)
            .unwrap()
            .verdict
            .holds());
        let max_monoid = FiniteMonoid::new(
            vec!["e".into(), "a".into()],
            vec![vec![0, 1], vec![1, 1]],
            0,
        )
        .unwrap();
        assert!(
            check_fuzzy_subgroup(&FuzzySubset::One, &CarrierMonoid::finite(max_monoid), &b)
                .is_err()
        );
    }

    #[test]
    fn fuzzy_property_examples() {
        let b = SearchBudget::default();
        let d = Domain::grid(10).unwrap();
        let tm = Connective::tnorm(TNormFamily::Minimum);
        assert!(
            check_fuzzy_property(&FuzzySubset::One, &tm, FuzzyProperty::Strict, &d, &b)
                .unwrap()
                .verdict
                .fails()
        );
        let c = check_fuzzy_property(&FuzzySubset::Identity, &tm, FuzzyProperty::Cancel, &d, &b)
            .unwrap();
        assert!(c.verdict.fails());
        let l = check_fuzzy_property(
            &FuzzySubset::One,
            &Connective::tnorm(TNormFamily::Product),
            FuzzyProperty::Limit,
            &d,
            &b,
        )
        .unwrap();
        assert!(l.verdict.holds());
        let a = check_fuzzy_property(&FuzzySubset::One, &tm, FuzzyProperty::Arch, &d, &b).unwrap();
        assert!(a.has_tag("VACUOUS_BY_CONSTANCY"));
        let gated = check_fuzzy_property(
            &FuzzySubset::Identity,
            &Connective::tnorm(TNormFamily::Product),
            FuzzyProperty::Cancel,
            &d,
            &b,
        )
        .unwrap();
        assert_eq!(gated.verdict, Verdict::Vacuous);
        assert!(gated.has_tag("NOT_A_SUBNORM"));
    }

    #[test]
    fn not_strictly_decreasing_examples() {
        let b = SearchBudget::default();
        let d = Domain::grid(10).unwrap();
        let tp = Connective::tnorm(TNormFamily::Product);
        assert!(
            check_not_strictly_decreasing(&FuzzySubset::Identity, &tp, &d, &b)
                .unwrap()
                .verdict
                .holds()
        );
        assert!(
            check_not_strictly_decreasing(&FuzzySubset::One, &tp, &d, &b)
                .unwrap()
                .verdict
                .holds()
        );
        let c = check_not_strictly_decreasing(&FuzzySubset::Complement, &tp, &d, &b).unwrap();
        assert!(c.has_tag("NOT_A_SUBNORM"));
        assert_eq!(c.verdict, Verdict::Vacuous);
    }

    #[test]
    fn cores() {
        let m = interval(Connective::tnorm(TNormFamily::Minimum), 10);
        assert_eq!(
            extract_core(&FuzzySubset::One, &m).unwrap().elements.len(),
            11
        );
        let step = extract_core(&FuzzySubset::Step(q(1, 2)), &m).unwrap();
        assert_eq!(step.elements.len(), 6);
        assert!(step.closed && step.contains_identity);
        let peak = FuzzySubset::custom("peak", |x| {
            if x.is_one() {
                UnitScalar::one()
            } else {
                q(1, 2)
            }
        });
        assert_eq!(
            extract_core(&peak, &m).unwrap().elements,
            vec![Elem::Scalar(UnitScalar::one())]
        );
    }

    #[test]
    fn discrete_subalgebras() {
        let b = SearchBudget::default();
        let half = q(1, 2);
        let l22 = l_nm(&half, 2, 2).unwrap();
        assert_eq!(l22.len(), 5);
        let ul = construct_uninorm_min(
            half.clone(),
            Connective::tnorm(TNormFamily::Lukasiewicz),
            Connective::tconorm(TConormFamily::Lukasiewicz),
        )
        .unwrap();
        let fl = construct_nullnorm(
            Connective::tconorm(TConormFamily::Lukasiewicz),
            half,
            Connective::tnorm(TNormFamily::Lukasiewicz),
        )
        .unwrap();
        assert!(check_discrete_subalgebra(&l22, &ul, &b).verdict.holds());
        assert!(check_discrete_subalgebra(&l22, &fl, &b).verdict.holds());
        let third = Domain::from_points([UnitScalar::zero(), q(1, 3), UnitScalar::one()]).unwrap();
        let r = check_discrete_subalgebra(&third, &Connective::tnorm(TNormFamily::Product), &b);
        assert_eq!(
            r.witnesses[0],
            Witness::scalars(&[&q(1, 3), &q(1, 3)], &[&q(1, 9)])
        );
    }
}
