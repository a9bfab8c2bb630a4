//! Exhaustive checks of the axioms and classical properties of connectives on
//! finite point sets, plus the implication harness used by the proposition
//! sweeps.

use rayon::prelude::*;
use serde::Serialize;

use crate::connective::{power_iterate, Connective, Role};
use crate::error::{Error, Result};
use crate::report::{
    par_tally, BudgetInfo, Cmp, Datum, DomainInfo, PropertyReport, SearchBudget, Tally, Tri,
    Verdict, Witness,
};
use crate::scalar::{Domain, UnitScalar};

fn grid_budget(d: &Domain, b: &SearchBudget) -> BudgetInfo {
    BudgetInfo {
        resolution: d.resolution(),
        max_witnesses: b.max_witnesses,
        ..BudgetInfo::default()
    }
}

/// Evaluates `c` only where it is defined; table connectives are partial.
fn ev(c: &Connective, x: &UnitScalar, y: &UnitScalar) -> Option<UnitScalar> {
    if c.supports(x) && c.supports(y) {
        Some(c.eval(x, y))
    } else {
        None
    }
}

fn eq_opt(cmp: Cmp, a: &Option<UnitScalar>, b: &Option<UnitScalar>) -> Tri {
    match (a, b) {
        (Some(a), Some(b)) => cmp.eq(a, b),
        _ => Tri::Unsure,
    }
}

fn le_opt(cmp: Cmp, a: &Option<UnitScalar>, b: &Option<UnitScalar>) -> Tri {
    match (a, b) {
        (Some(a), Some(b)) => cmp.le(a, b),
        _ => Tri::Unsure,
    }
}

fn shown(v: &Option<UnitScalar>) -> Datum {
    match v {
        Some(s) => Datum::Scalar(s.clone()),
        None => Datum::Label("undefined".into()),
    }
}

fn finish(t: Tally, id: &str, c: &Connective, d: &Domain, b: &SearchBudget) -> PropertyReport {
    t.into_report(id, c.name(), DomainInfo::from(d), grid_budget(d, b))
}

fn commutativity(id: &str, c: &Connective, d: &Domain, b: &SearchBudget) -> PropertyReport {
    let pts = d.points();
    let cmp = Cmp::for_connective(c);
    let t = par_tally(pts.len(), b.max_witnesses, |i, t| {
        let x = &pts[i];
        for y in &pts[i + 1..] {
            let (a, r) = (ev(c, x, y), ev(c, y, x));
            t.record(eq_opt(cmp, &a, &r), || {
                Witness::new(vec![x.into(), y.into()], vec![shown(&a), shown(&r)])
            });
        }
    });
    finish(t, id, c, d, b)
}

fn associativity(id: &str, c: &Connective, d: &Domain, b: &SearchBudget) -> PropertyReport {
    let pts = d.points();
    let cmp = Cmp::for_connective(c);
    let t = par_tally(pts.len(), b.max_witnesses, |i, t| {
        let x = &pts[i];
        for y in pts {
            let xy = ev(c, x, y);
            for z in pts {
                let left = xy.as_ref().and_then(|xy| ev(c, xy, z));
                let right = ev(c, y, z).and_then(|yz| ev(c, x, &yz));
                t.record(eq_opt(cmp, &left, &right), || {
                    Witness::new(
                        vec![x.into(), y.into(), z.into()],
                        vec![shown(&left), shown(&right)],
                    )
                });
            }
        }
    });
    finish(t, id, c, d, b)
}

fn monotonicity(id: &str, c: &Connective, d: &Domain, b: &SearchBudget) -> PropertyReport {
    let pts = d.points();
    let cmp = Cmp::for_connective(c);
    let t = par_tally(pts.len(), b.max_witnesses, |i, t| {
        let x = &pts[i];
        for (j, y) in pts.iter().enumerate() {
            for z in &pts[j + 1..] {
                let (a, r) = (ev(c, x, y), ev(c, x, z));
                t.record(le_opt(cmp, &a, &r), || {
                    Witness::new(
                        vec![x.into(), y.into(), z.into()],
                        vec![shown(&a), shown(&r)],
                    )
                });
                let (a, r) = (ev(c, y, x), ev(c, z, x));
                t.record(le_opt(cmp, &a, &r), || {
                    Witness::new(
                        vec![y.into(), x.into(), z.into()],
                        vec![shown(&a), shown(&r)],
                    )
                });
            }
        }
    });
    finish(t, id, c, d, b)
}

/// `C(x,e) = x = C(e,x)` for every `x` in the domain.
fn neutral(
    id: &str,
    c: &Connective,
    e: &UnitScalar,
    d: &Domain,
    b: &SearchBudget,
) -> PropertyReport {
    let cmp = Cmp::for_connective(c);
    let mut t = Tally::new(b.max_witnesses);
    for x in d.points() {
        for (l, r) in [(x, e), (e, x)] {
            let v = ev(c, l, r);
            t.record(eq_opt(cmp, &v, &Some(x.clone())), || {
                Witness::new(vec![l.into(), r.into()], vec![shown(&v)])
            });
        }
    }
    finish(t, id, c, d, b)
}

fn absorbing(
    id: &str,
    c: &Connective,
    k: &UnitScalar,
    d: &Domain,
    b: &SearchBudget,
) -> PropertyReport {
    let cmp = Cmp::for_connective(c);
    let mut t = Tally::new(b.max_witnesses);
    let zero = UnitScalar::zero();
    let one = UnitScalar::one();
    for x in d.points() {
        for (l, r) in [(k, x), (x, k)] {
            let v = ev(c, l, r);
            t.record(eq_opt(cmp, &v, &Some(k.clone())), || {
                Witness::new(vec![l.into(), r.into()], vec![shown(&v)])
            });
        }
        let edge = if x <= k { Some(&zero) } else { None }
            .into_iter()
            .chain(if x >= k { Some(&one) } else { None });
        for side in edge {
            let v = ev(c, side, x);
            t.record(eq_opt(cmp, &v, &Some(x.clone())), || {
                Witness::new(vec![side.into(), x.into()], vec![shown(&v)])
            });
        }
    }
    finish(t, id, c, d, b)
}

fn aggregation_boundary(id: &str, c: &Connective, d: &Domain, b: &SearchBudget) -> PropertyReport {
    let cmp = Cmp::for_connective(c);
    let mut t = Tally::new(b.max_witnesses);
    for v in [UnitScalar::zero(), UnitScalar::one()] {
        let r = ev(c, &v, &v);
        t.record(eq_opt(cmp, &r, &Some(v.clone())), || {
            Witness::new(vec![(&v).into(), (&v).into()], vec![shown(&r)])
        });
    }
    finish(t, id, c, d, b)
}

fn missing_claim(
    id: &str,
    c: &Connective,
    d: &Domain,
    b: &SearchBudget,
    what: &str,
) -> PropertyReport {
    let mut t = Tally::new(b.max_witnesses);
    t.fail(Witness::new(
        vec![Datum::Label(format!("no declared {what}"))],
        vec![],
    ));
    let mut r = finish(t, id, c, d, b);
    r.tag("MISSING_CLAIM");
    r
}

/// Checks the axiom list of the connective's declared role; associativity
/// runs over every triple of the domain.
pub fn check_axioms(c: &Connective, d: &Domain, b: &SearchBudget) -> Result<PropertyReport> {
    let n = d.len() as u128;
    b.ensure_tuples("associativity", n * n * n)?;
    let mut report =
        PropertyReport::new("axioms", c.name(), DomainInfo::from(d)).with_budget(grid_budget(d, b));
    let prefix = match c.role() {
        Role::TNorm => "T",
        Role::TConorm => "S",
        Role::Uninorm => "U",
        Role::Nullnorm => "F",
        Role::Aggregation => "A",
    };
    if c.role() == Role::Aggregation {
        report.push_check(monotonicity("A1-monotonicity", c, d, b));
        report.push_check(aggregation_boundary("A2-boundary", c, d, b));
    } else {
        report.push_check(commutativity(&format!("{prefix}1-commutativity"), c, d, b));
        report.push_check(associativity(&format!("{prefix}2-associativity"), c, d, b));
        report.push_check(monotonicity(&format!("{prefix}3-monotonicity"), c, d, b));
        let last = match c.role() {
            Role::TNorm => neutral("T4-boundary", c, &UnitScalar::one(), d, b),
            Role::TConorm => neutral("S4-boundary", c, &UnitScalar::zero(), d, b),
            Role::Uninorm => match c.identity() {
                Some(e) => neutral("U4-identity", c, e, d, b),
                None => missing_claim("U4-identity", c, d, b, "identity"),
            },
            Role::Nullnorm => match c.absorber() {
                Some(k) => absorbing("F4-absorbing", c, k, d, b),
                None => missing_claim("F4-absorbing", c, d, b, "absorbing element"),
            },
            Role::Aggregation => unreachable!(),
        };
        report.push_check(last);
    }
    Ok(report)
}

/// `T(x,y) < T(x,z)` whenever `x > 0` and `y < z`.
pub fn check_strict_monotonicity(c: &Connective, d: &Domain, b: &SearchBudget) -> PropertyReport {
    let pts = d.points();
    let cmp = Cmp::for_connective(c);
    let t = par_tally(pts.len(), b.max_witnesses, |i, t| {
        let x = &pts[i];
        if x.is_zero() {
            return;
        }
        for (j, y) in pts.iter().enumerate() {
            for z in &pts[j + 1..] {
                let (a, r) = (ev(c, x, y), ev(c, x, z));
                let outcome = match (&a, &r) {
                    (Some(a), Some(r)) => cmp.lt(a, r),
                    _ => Tri::Unsure,
                };
                t.record(outcome, || {
                    Witness::new(
                        vec![x.into(), y.into(), z.into()],
                        vec![shown(&a), shown(&r)],
                    )
                });
            }
        }
    });
    finish(t, "strict-monotonicity", c, d, b)
}

/// Plain: `T(x,y) = T(x,z)` implies `x = 0` or `y = z`.
/// Conditional: `T(x,y) = T(x,z) > 0` implies `y = z`.
pub fn check_cancellation(
    c: &Connective,
    d: &Domain,
    conditional: bool,
    b: &SearchBudget,
) -> PropertyReport {
    let pts = d.points();
    let cmp = Cmp::for_connective(c);
    let zero = UnitScalar::zero();
    let t = par_tally(pts.len(), b.max_witnesses, |i, t| {
        let x = &pts[i];
        for (j, y) in pts.iter().enumerate() {
            for z in &pts[j + 1..] {
                let (a, r) = (ev(c, x, y), ev(c, x, z));
                let (Some(av), Some(rv)) = (&a, &r) else {
                    t.unsure();
                    continue;
                };
                let premise = if conditional {
                    match (cmp.eq(av, rv), cmp.lt(&zero, av)) {
                        (Tri::Yes, Tri::Yes) => Tri::Yes,
                        (Tri::No, _) | (_, Tri::No) => Tri::No,
                        _ => Tri::Unsure,
                    }
                } else if x.is_zero() {
                    Tri::No
                } else {
                    cmp.eq(av, rv)
                };
                let outcome = match premise {
                    Tri::Yes => Tri::No,
                    Tri::No => Tri::Yes,
                    Tri::Unsure => Tri::Unsure,
                };
                t.record(outcome, || {
                    Witness::new(
                        vec![x.into(), y.into(), z.into()],
                        vec![shown(&a), shown(&r)],
                    )
                });
            }
        }
    });
    let id = if conditional {
        "conditional-cancellation"
    } else {
        "cancellation"
    };
    finish(t, id, c, d, b)
}

/// Powers `x^(1), x^(2), ...` until two consecutive iterates agree, the cap is
/// reached, or the connective leaves its support.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub powers: Vec<UnitScalar>,
    pub stationary: bool,
    pub undefined: bool,
}

pub fn trajectory(c: &Connective, x: &UnitScalar, cap: u32) -> Trajectory {
    let mut powers = vec![x.clone()];
    let mut stationary = false;
    let mut undefined = false;
    while powers.len() < cap as usize {
        let last = powers.last().expect("non-empty");
        let Some(next) = ev(c, last, x) else {
            undefined = true;
            break;
        };
        if &next == last {
            stationary = true;
            break;
        }
        powers.push(next);
    }
    Trajectory {
        powers,
        stationary,
        undefined,
    }
}

/// For interior `x, y`, some `n <= n_max` has `x^(n) < y`.
pub fn check_archimedean(c: &Connective, d: &Domain, b: &SearchBudget) -> PropertyReport {
    let interior = d.interior();
    let cmp = Cmp::for_connective(c);
    let trajectories: Vec<Trajectory> = interior
        .par_iter()
        .map(|x| trajectory(c, x, b.n_max))
        .collect();
    let t = par_tally(interior.len(), b.max_witnesses, |i, t| {
        let x = &interior[i];
        let traj = &trajectories[i];
        for y in interior {
            let hit = traj.powers.iter().position(|p| cmp.lt(p, y) == Tri::Yes);
            match hit {
                Some(_) => t.pass(),
                None if traj.stationary => {
                    let last = traj.powers.last().expect("non-empty");
                    t.fail(Witness::new(
                        vec![x.into(), y.into()],
                        vec![last.into(), Datum::Count(traj.powers.len() as u64)],
                    ));
                }
                None => t.unsure(),
            }
        }
    });
    let mut r = finish(t, "archimedean", c, d, b);
    r.budget.n_max = Some(b.n_max);
    let longest = trajectories
        .iter()
        .map(|t| t.powers.len() as u64)
        .max()
        .unwrap_or(0);
    r.stats.insert("longest_trajectory".into(), longest);
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitOutcome {
    /// `x^(n)` is exactly 0.
    ReachedZero(u32),
    /// `x^(n)` dropped below epsilon.
    BelowEpsilon(u32, UnitScalar),
    /// `x^(n+1) = x^(n) > 0`.
    Stationary(u32, UnitScalar),
    Exhausted,
}

pub fn limit_outcome(c: &Connective, x: &UnitScalar, b: &SearchBudget) -> LimitOutcome {
    let exact = c.is_exact();
    let eps = if exact {
        b.epsilon.clone()
    } else {
        UnitScalar::from_f64(1e-9)
    };
    let traj = trajectory(c, x, b.iter_cap);
    for (i, p) in traj.powers.iter().enumerate() {
        let n = i as u32 + 1;
        if p.is_zero() {
            return LimitOutcome::ReachedZero(n);
        }
        if p < &eps {
            return LimitOutcome::BelowEpsilon(n, p.clone());
        }
    }
    if traj.stationary {
        let last = traj.powers.last().expect("non-empty").clone();
        return LimitOutcome::Stationary(traj.powers.len() as u32, last);
    }
    LimitOutcome::Exhausted
}

/// For interior `x`, the powers of `x` tend to 0.
pub fn check_limit_property(c: &Connective, d: &Domain, b: &SearchBudget) -> PropertyReport {
    let interior = d.interior();
    let t = par_tally(interior.len(), b.max_witnesses, |i, t| {
        let x = &interior[i];
        match limit_outcome(c, x, b) {
            LimitOutcome::ReachedZero(_) | LimitOutcome::BelowEpsilon(..) => t.pass(),
            LimitOutcome::Stationary(n, v) => t.fail(Witness::new(
                vec![x.into()],
                vec![v.into(), Datum::Count(n as u64)],
            )),
            LimitOutcome::Exhausted => t.unsure(),
        }
    });
    let mut r = finish(t, "limit", c, d, b);
    r.budget.iter_cap = Some(b.iter_cap);
    r.budget.epsilon = Some(if c.is_exact() {
        b.epsilon.clone()
    } else {
        UnitScalar::from_f64(1e-9)
    });
    r
}

/// Diagonal idempotency `U(x,x) = x` on the domain.
pub fn is_idempotent_on_diagonal(c: &Connective, d: &Domain) -> bool {
    d.points().iter().all(|x| ev(c, x, x).as_ref() == Some(x))
}

/// Structural flags of a uninorm. T-norms and t-conorms are accepted as the
/// degenerate cases `e = 1` and `e = 0`.
pub fn classify_uninorm(c: &Connective, d: &Domain, b: &SearchBudget) -> Result<PropertyReport> {
    let e = c
        .identity()
        .ok_or_else(|| Error::Domain(format!("'{}' declares no identity element", c.name())))?
        .clone();
    let cmp = Cmp::for_connective(c);
    let zero = UnitScalar::zero();
    let one = UnitScalar::one();
    let mut report = PropertyReport::new("uninorm-class", c.name(), DomainInfo::from(d))
        .with_budget(grid_budget(d, b));

    let u10 = c.eval(&one, &zero);
    if u10.is_zero() {
        report.tag("CONJUNCTIVE");
    } else if u10.is_one() {
        report.tag("DISJUNCTIVE");
    } else {
        report.tag("NEITHER");
    }

    let internal = d.points().iter().all(|x| {
        let a = c.eval(&one, x);
        let z = c.eval(&zero, x);
        (a == one || &a == x) && (z == zero || &z == x)
    });
    if internal {
        report.tag("LOCALLY_INTERNAL_ON_BOUNDARY");
    }
    if is_idempotent_on_diagonal(c, d) {
        report.tag("IDEMPOTENT_DIAGONAL");
    }

    let mut bounded = Tally::new(b.max_witnesses);
    let (mut all_min, mut all_max, mut mixed_pairs) = (true, true, 0u64);
    for x in d.points() {
        for y in d.points() {
            let in_mixed = (x < &e && y > &e) || (x > &e && y < &e);
            if !in_mixed {
                continue;
            }
            mixed_pairs += 1;
            let v = c.eval(x, y);
            let (lo, hi) = (x.min_of(y), x.max_of(y));
            all_min &= v == lo;
            all_max &= v == hi;
            let ok = match (cmp.le(&lo, &v), cmp.le(&v, &hi)) {
                (Tri::Yes, Tri::Yes) => Tri::Yes,
                (Tri::No, _) | (_, Tri::No) => Tri::No,
                _ => Tri::Unsure,
            };
            bounded.record(ok, || {
                Witness::new(vec![x.into(), y.into()], vec![v.clone().into()])
            });
        }
    }
    if mixed_pairs > 0 {
        if all_min {
            report.tag("MIXED_MIN");
        } else if all_max {
            report.tag("MIXED_MAX");
        } else {
            report.tag("MIXED_OTHER");
        }
    }
    report.stats.insert("mixed_pairs".into(), mixed_pairs);
    report.push_check(finish(bounded, "between-min-max", c, d, b));
    Ok(report)
}

/// Outcome of checking `premise => conclusion` over an enumerated universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub premise: String,
    pub conclusion: String,
    pub universe: String,
    pub universe_size: u64,
    pub premise_held: u64,
    pub premise_vacuous: u64,
    pub conclusion_vacuous: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<String>,
}

impl ImplicationReport {
    pub fn confirmed(&self) -> bool {
        self.counterexample_count == 0
    }
}

/// Refuses universes larger than the budget before they are built.
pub fn ensure_universe(what: &str, estimate: u128, b: &SearchBudget) -> Result<()> {
    if estimate > b.max_universe as u128 {
        return Err(Error::BudgetExceeded {
            what: what.to_string(),
            estimate,
            budget: b.max_universe as u128,
        });
    }
    Ok(())
}

/// Evaluates both properties on every universe element and lists the ones
/// where the premise holds and the conclusion fails.
#[allow(clippy::too_many_arguments)]
pub fn verify_implication<I, L, P, C>(
    premise_id: &str,
    conclusion_id: &str,
    universe: &str,
    items: &[I],
    b: &SearchBudget,
    label: L,
    premise: P,
    conclusion: C,
) -> Result<ImplicationReport>
where
    I: Sync,
    L: Fn(&I) -> String + Sync,
    P: Fn(&I) -> Result<Verdict> + Sync,
    C: Fn(&I) -> Result<Verdict> + Sync,
{
    ensure_universe(universe, items.len() as u128, b)?;
    let outcomes: Vec<Result<(Verdict, Option<Verdict>)>> = items
        .par_iter()
        .map(|item| {
            let p = premise(item)?;
            let c = if p.holds() {
                Some(conclusion(item)?)
            } else {
                None
            };
            Ok((p, c))
        })
        .collect();
    let mut report = ImplicationReport {
        premise: premise_id.to_string(),
        conclusion: conclusion_id.to_string(),
        universe: universe.to_string(),
        universe_size: items.len() as u64,
        premise_held: 0,
        premise_vacuous: 0,
        conclusion_vacuous: 0,
        counterexample_count: 0,
        counterexamples: Vec::new(),
    };
    for (item, outcome) in items.iter().zip(outcomes) {
        let (p, c) = outcome?;
        match p {
            Verdict::HoldsOnDomain => report.premise_held += 1,
            Verdict::Vacuous => report.premise_vacuous += 1,
            Verdict::Fails => {}
        }
        match c {
            Some(Verdict::Fails) => {
                report.counterexample_count += 1;
                if report.counterexamples.len() < b.max_witnesses {
                    report.counterexamples.push(label(item));
                }
            }
            Some(Verdict::Vacuous) => report.conclusion_vacuous += 1,
            _ => {}
        }
    }
    Ok(report)
}

/// `x^(m+n) = C(x^(m), x^(n))`, the power law that associativity implies.
pub fn power_law_holds(c: &Connective, x: &UnitScalar, m: u32, n: u32) -> Result<bool> {
    let lhs = power_iterate(c, x, m + n)?;
    let rhs = c.eval(&power_iterate(c, x, m)?, &power_iterate(c, x, n)?);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connective::{
        construct_uninorm_max, construct_uninorm_min, TConormFamily, TNormFamily,
    };
    use crate::scalar::q;

    fn t(f: TNormFamily) -> Connective {
        Connective::tnorm(f)
    }

    fn grid(n: u32) -> Domain {
        Domain::grid(n).unwrap()
    }

    fn has_witness(r: &PropertyReport, inputs: &[UnitScalar]) -> bool {
        r.witnesses
            .iter()
            .any(|w| w.input_scalars().as_deref() == Some(inputs))
    }

    #[test]
    fn lukasiewicz_axioms_hold() {
        let r = check_axioms(
            &t(TNormFamily::Lukasiewicz),
            &grid(10),
            &SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::HoldsOnDomain);
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn projection_is_not_commutative() {
        let proj = Connective::from_fn(
            "proj",
            Role::TNorm,
            Some(UnitScalar::one()),
            None,
            |x, _| x.clone(),
        );
        let r = check_axioms(&proj, &grid(4), &SearchBudget::default()).unwrap();
        let comm = r.check("T1-commutativity").unwrap();
        assert_eq!(comm.verdict, Verdict::Fails);
        assert!(has_witness(comm, &[UnitScalar::zero(), UnitScalar::one()]));
    }

    #[test]
    fn strict_monotonicity_examples() {
        let b = SearchBudget {
            max_witnesses: 10_000,
            ..SearchBudget::default()
        };
        assert!(
            check_strict_monotonicity(&t(TNormFamily::Product), &grid(10), &b)
                .verdict
                .holds()
        );
        let m = check_strict_monotonicity(&t(TNormFamily::Minimum), &grid(10), &b);
        assert!(has_witness(&m, &[q(1, 2), q(3, 5), q(7, 10)]));
        let l = check_strict_monotonicity(&t(TNormFamily::Lukasiewicz), &grid(10), &b);
        assert!(has_witness(&l, &[q(1, 5), q(1, 10), q(1, 5)]));
    }

    #[test]
    fn cancellation_examples() {
        let b = SearchBudget::default();
        assert!(
            check_cancellation(&t(TNormFamily::Product), &grid(10), false, &b)
                .verdict
                .holds()
        );
        let l = check_cancellation(&t(TNormFamily::Lukasiewicz), &grid(10), false, &b);
        assert!(has_witness(&l, &[q(1, 5), q(1, 10), q(1, 5)]));
        assert!(
            check_cancellation(&t(TNormFamily::Lukasiewicz), &grid(10), true, &b)
                .verdict
                .holds()
        );
    }

    #[test]
    fn archimedean_examples() {
        let b = SearchBudget::default();
        assert!(
            check_archimedean(&t(TNormFamily::Lukasiewicz), &grid(10), &b)
                .verdict
                .holds()
        );
        assert!(check_archimedean(&t(TNormFamily::Product), &grid(10), &b)
            .verdict
            .holds());
        let m = check_archimedean(&t(TNormFamily::Minimum), &grid(10), &b);
        assert!(has_witness(&m, &[q(1, 2), q(2, 5)]));
    }

    #[test]
    fn archimedean_exhaustion_is_vacuous() {
        let b = SearchBudget {
            n_max: 2,
            ..SearchBudget::default()
        };
        let r = check_archimedean(&t(TNormFamily::Product), &grid(10), &b);
        assert_eq!(r.verdict, Verdict::Vacuous);
    }

    #[test]
    fn limit_examples() {
        let b = SearchBudget::default();
        assert_eq!(
            limit_outcome(&t(TNormFamily::Lukasiewicz), &q(9, 10), &b),
            LimitOutcome::ReachedZero(10)
        );
        assert_eq!(
            limit_outcome(&t(TNormFamily::Drastic), &q(9, 10), &b),
            LimitOutcome::ReachedZero(2)
        );
        let m = check_limit_property(&t(TNormFamily::Minimum), &grid(10), &b);
        assert_eq!(m.stat("violations"), 9);
        assert!(
            check_limit_property(&t(TNormFamily::Product), &grid(10), &b)
                .verdict
                .holds()
        );
    }

    #[test]
    fn uninorm_classes() {
        let b = SearchBudget::default();
        let umin = construct_uninorm_min(
            q(1, 2),
            t(TNormFamily::Product),
            Connective::tconorm(TConormFamily::ProbabilisticSum),
        )
        .unwrap();
        let umax = construct_uninorm_max(
            q(1, 2),
            t(TNormFamily::Product),
            Connective::tconorm(TConormFamily::ProbabilisticSum),
        )
        .unwrap();
        let r = classify_uninorm(&umin, &grid(10), &b).unwrap();
        assert!(r.has_tag("CONJUNCTIVE") && r.has_tag("MIXED_MIN") && r.verdict.holds());
        assert!(classify_uninorm(&umax, &grid(10), &b)
            .unwrap()
            .has_tag("DISJUNCTIVE"));
        let m = classify_uninorm(&t(TNormFamily::Minimum), &grid(10), &b).unwrap();
        assert!(
            m.has_tag("CONJUNCTIVE")
                && m.has_tag("LOCALLY_INTERNAL_ON_BOUNDARY")
                && m.has_tag("IDEMPOTENT_DIAGONAL")
        );
    }

    #[test]
    fn implication_finds_lukasiewicz() {
        let b = SearchBudget::default();
        let d = grid(10);
        let items = vec![t(TNormFamily::Lukasiewicz)];
        let r = verify_implication(
            "archimedean",
            "strict-monotonicity",
            "builtin",
            &items,
            &b,
            |c| c.name().to_string(),
            |c| Ok(check_archimedean(c, &d, &b).verdict),
            |c| Ok(check_strict_monotonicity(c, &d, &b).verdict),
        )
        .unwrap();
        assert_eq!(r.counterexamples, vec!["tnorm:lukasiewicz".to_string()]);
    }

    #[test]
    fn oversized_universe_is_refused() {
        let b = SearchBudget {
            max_universe: 3,
            ..SearchBudget::default()
        };
        let items = vec![0u8; 4];
        let r = verify_implication(
            "p",
            "q",
            "u",
            &items,
            &b,
            |_| String::new(),
            |_| Ok(Verdict::HoldsOnDomain),
            |_| Ok(Verdict::HoldsOnDomain),
        );
        assert!(matches!(r, Err(Error::BudgetExceeded { estimate: 4, .. })));
    }
}
