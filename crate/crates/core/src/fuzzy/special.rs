use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::connective::{
    AggregationFamily, Connective, MixedRule, Role, TConormFamily, TNormFamily,
};
use crate::error::{Error, Result};
use crate::report::{BudgetInfo, Datum, PropertyReport, SearchBudget, Verdict, Witness};
use crate::scalar::{Domain, UnitScalar};

use super::carrier::{CarrierMonoid, Elem};
use super::checks::{check_fuzzy_submonoid, KindTag, SubstructureKind};
use super::subset::FuzzySubset;

/// The characterizations of fuzzy submonoids built from aggregation
/// functions, uninorms and nullnorms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialCase {
    /// `A_min` on `([0,1], T_M)`: iff `mu(1) = 1`.
    Prop17,
    /// `A_min` on `([0,1], S_M)`: iff `mu(0) = 1`.
    Prop18,
    /// Disjunctive uninorm on any monoid: iff `mu = 1`.
    Disjunctive,
    /// `U_min(e, T, S_M)` on `([0,1], T_M)`: iff `mu` is non-increasing on
    /// `B = {x | mu(x) >= e}` and `mu(1) = 1`.
    Prop20,
    /// Nullnorm with absorber `k` on any monoid: only if `mu >= k`.
    Prop24,
    /// `<S,k,T_M>` on `([0,1], T_M)`: iff `mu(1) = 1` and `mu >= k`.
    Prop25,
    /// `<S,k,T_M>` on `([0,1], S_M)`: iff `mu(0) = 1` and `mu >= k`.
    Prop25Conorm,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 7] = [
        SpecialCase::Prop17,
        SpecialCase::Prop18,
        SpecialCase::Disjunctive,
        SpecialCase::Prop20,
        SpecialCase::Prop24,
        SpecialCase::Prop25,
        SpecialCase::Prop25Conorm,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SpecialCase::Prop17 => "prop17",
            SpecialCase::Prop18 => "prop18",
            SpecialCase::Disjunctive => "disjunctive",
            SpecialCase::Prop20 => "prop20",
            SpecialCase::Prop24 => "prop24",
            SpecialCase::Prop25 => "prop25",
            SpecialCase::Prop25Conorm => "prop25-conorm",
        }
    }

    /// One-directional cases only claim `submonoid => condition`.
    pub fn is_iff(self) -> bool {
        self != SpecialCase::Prop24
    }

    fn kind(self) -> KindTag {
        match self {
            SpecialCase::Prop17 | SpecialCase::Prop18 => KindTag::ASubmonoid,
            SpecialCase::Disjunctive | SpecialCase::Prop20 => KindTag::USubmonoid,
            _ => KindTag::FSubmonoid,
        }
    }

    fn fixed_carrier(self) -> Option<Connective> {
        match self {
            SpecialCase::Prop17 | SpecialCase::Prop20 | SpecialCase::Prop25 => {
                Some(Connective::tnorm(TNormFamily::Minimum))
            }
            SpecialCase::Prop18 | SpecialCase::Prop25Conorm => {
                Some(Connective::tconorm(TConormFamily::Maximum))
            }
            SpecialCase::Disjunctive | SpecialCase::Prop24 => None,
        }
    }

    fn validate(self, c: &Connective) -> Result<()> {
        let bad = |what: &str| {
            Err(Error::Domain(format!(
                "case {}: '{}' is not {what}",
                self.id(),
                c.name()
            )))
        };
        match self {
            SpecialCase::Prop17 | SpecialCase::Prop18 => {
                if c.aggregation_family() != Some(AggregationFamily::Min) {
                    return bad("the minimum aggregation");
                }
            }
            SpecialCase::Disjunctive => {
                let (zero, one) = (UnitScalar::zero(), UnitScalar::one());
                if c.role() != Role::Uninorm
                    || !(c.supports(&zero) && c.supports(&one))
                    || !c.eval(&zero, &one).is_one()
                {
                    return bad("a disjunctive uninorm");
                }
            }
            SpecialCase::Prop20 => match c.uninorm_parts() {
                Some((_, MixedRule::Min, _, s))
                    if s.tconorm_family() == Some(TConormFamily::Maximum) => {}
                _ => return bad("a uninorm U_min(e, T, S_M)"),
            },
            SpecialCase::Prop24 => {
                if c.role() != Role::Nullnorm || c.absorber().is_none() {
                    return bad("a nullnorm with a declared absorbing element");
                }
            }
            SpecialCase::Prop25 | SpecialCase::Prop25Conorm => match c.nullnorm_parts() {
                Some((_, _, t)) if t.tnorm_family() == Some(TNormFamily::Minimum) => {}
                _ => return bad("a nullnorm <S, k, T_M>"),
            },
        }
        Ok(())
    }
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SpecialCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "disjunctive-theorem" {
            return Ok(SpecialCase::Disjunctive);
        }
        SpecialCase::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown special case '{s}'")))
    }
}

/// The right-hand side: the closed-form condition on `mu`, with the first
/// element that breaks it.
fn condition(
    case: SpecialCase,
    mu: &FuzzySubset,
    c: &Connective,
    carrier: &CarrierMonoid,
) -> Result<(bool, Option<Witness>)> {
    let elems = carrier.elements();
    let values = mu.values(carrier)?;
    let at = |e: Elem| -> Result<UnitScalar> { mu.value(carrier, &e) };
    let point_is_one = |x: UnitScalar| -> Result<(bool, Option<Witness>)> {
        let v = at(Elem::Scalar(x.clone()))?;
        Ok(if v.is_one() {
            (true, None)
        } else {
            (false, Some(Witness::scalars(&[&x], &[&v])))
        })
    };
    let all_at_least = |k: &UnitScalar| -> (bool, Option<Witness>) {
        match elems.iter().zip(&values).find(|(_, v)| *v < k) {
            None => (true, None),
            Some((e, v)) => (
                false,
                Some(Witness::new(vec![carrier.datum(e)], vec![v.into()])),
            ),
        }
    };
    Ok(match case {
        SpecialCase::Prop17 => point_is_one(UnitScalar::one())?,
        SpecialCase::Prop18 => point_is_one(UnitScalar::zero())?,
        SpecialCase::Disjunctive => all_at_least(&UnitScalar::one()),
        SpecialCase::Prop20 => {
            let (one, w) = point_is_one(UnitScalar::one())?;
            if !one {
                return Ok((false, w));
            }
            let e = c.identity().expect("validated uninorm");
            let b: Vec<(&Elem, &UnitScalar)> =
                elems.iter().zip(&values).filter(|(_, v)| *v >= e).collect();
            for (i, (x, mx)) in b.iter().enumerate() {
                for (y, my) in &b[i + 1..] {
                    if my > mx {
                        return Ok((
                            false,
                            Some(Witness::new(
                                vec![carrier.datum(x), carrier.datum(y)],
                                vec![(*mx).into(), (*my).into()],
                            )),
                        ));
                    }
                }
            }
            (true, None)
        }
        SpecialCase::Prop24 => all_at_least(c.absorber().expect("validated nullnorm")),
        SpecialCase::Prop25 | SpecialCase::Prop25Conorm => {
            let pt = if case == SpecialCase::Prop25 {
                UnitScalar::one()
            } else {
                UnitScalar::zero()
            };
            let (ok, w) = point_is_one(pt)?;
            if !ok {
                return Ok((false, w));
            }
            all_at_least(c.absorber().expect("validated nullnorm"))
        }
    })
}

/// Evaluates both sides of a characterization independently. The report
/// HOLDS when they agree (for the one-directional case: unless the
/// submonoid check passes and the condition fails) and FAILS otherwise,
/// tagged with the side that was true alone. `carrier_op` overrides the
/// carrier for the cases that allow any monoid.
pub fn characterize_special_case(
    case: SpecialCase,
    mu: &FuzzySubset,
    c: &Connective,
    carrier_op: Option<&Connective>,
    d: &Domain,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    case.validate(c)?;
    let op = match (case.fixed_carrier(), carrier_op) {
        (Some(fixed), Some(given)) if fixed.name() != given.name() => {
            return Err(Error::Domain(format!(
                "case {case} is stated on ([0,1], {}), not on ([0,1], {})",
                fixed.name(),
                given.name()
            )))
        }
        (Some(fixed), _) => fixed,
        (None, Some(given)) => given.clone(),
        (None, None) => Connective::tnorm(TNormFamily::Minimum),
    };
    let carrier = CarrierMonoid::interval(d.clone(), op)?;
    let kind = SubstructureKind::new(case.kind(), Some(c.clone()))?;
    let mut lhs = check_fuzzy_submonoid(mu, &carrier, &kind, b)?;
    lhs.property_id = "submonoid-side".into();
    let (rhs_ok, rhs_witness) = condition(case, mu, c, &carrier)?;

    let mut r = PropertyReport::new(
        format!("special:{case}"),
        format!("{} with {} on {}", mu.name(), c.name(), carrier.name()),
        carrier.domain_info(),
    )
    .with_budget(BudgetInfo {
        resolution: carrier.resolution(),
        max_witnesses: b.max_witnesses,
        ..BudgetInfo::default()
    });
    r.tag(if rhs_ok {
        "CONDITION_TRUE"
    } else {
        "CONDITION_FALSE"
    });
    r.stats.insert("condition".into(), rhs_ok as u64);
    r.verdict = match lhs.verdict {
        Verdict::Vacuous => {
            r.tag("SUBMONOID_UNDECIDED");
            Verdict::Vacuous
        }
        v => {
            let lhs_ok = v.holds();
            r.tag(if lhs_ok {
                "SUBMONOID_TRUE"
            } else {
                "SUBMONOID_FALSE"
            });
            r.stats.insert("submonoid".into(), lhs_ok as u64);
            let agree = if case.is_iff() {
                lhs_ok == rhs_ok
            } else {
                !lhs_ok || rhs_ok
            };
            if agree {
                Verdict::HoldsOnDomain
            } else {
                r.tag(if lhs_ok {
                    "ONLY_SUBMONOID_SIDE_TRUE"
                } else {
                    "ONLY_CONDITION_SIDE_TRUE"
                });
                if let Some(w) = rhs_witness.clone() {
                    r.witnesses.push(w);
                }
                r.witnesses
                    .extend(lhs.witnesses.iter().take(b.max_witnesses).cloned());
                Verdict::Fails
            }
        }
    };
    if let Some(w) = rhs_witness {
        let mut cond = PropertyReport::new("condition-side", r.subject.clone(), r.domain.clone());
        cond.verdict = Verdict::Fails;
        cond.witnesses.push(w);
        r.push_diagnostic(cond);
    }
    r.push_diagnostic(lhs);
    Ok(r)
}

/// Which monoid the refutation is about.
#[derive(Debug, Clone)]
pub enum RefutationTarget {
    /// `([0,1], T)`, tested with `mu(x) = x` in mind.
    TNorm(Connective),
    /// `([0,1], S)`, tested with `mu(x) = 1 - x` in mind.
    TConorm(Connective),
}

impl RefutationTarget {
    fn connective(&self) -> &Connective {
        match self {
            RefutationTarget::TNorm(c) | RefutationTarget::TConorm(c) => c,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RefutationRow {
    pub uninorm: String,
    pub verdict: Verdict,
    pub violations: u64,
    /// The pair `(e, y), y > e` (t-norm target) or `(1-e, y), y < 1-e`
    /// (t-conorm target), evaluated directly.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explicit_witness: Option<Witness>,
    pub explicit_violates: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RefutationReport {
    pub subset: String,
    pub target: String,
    pub domain_size: usize,
    pub rows: Vec<RefutationRow>,
    /// Every family member fails the U-submonoid check.
    pub refuted: bool,
}

impl RefutationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// The explicit contradiction pair for the standard subsets, if `D` has one.
fn explicit_pair(
    mu: &FuzzySubset,
    target: &RefutationTarget,
    e: &UnitScalar,
    d: &Domain,
) -> Option<(UnitScalar, UnitScalar)> {
    match (mu, target) {
        (FuzzySubset::Identity, RefutationTarget::TNorm(_)) if d.contains(e) => d
            .points()
            .iter()
            .find(|y| *y > e)
            .map(|y| (e.clone(), y.clone())),
        (FuzzySubset::Complement, RefutationTarget::TConorm(_)) => {
            let x = e.complement();
            if !d.contains(&x) {
                return None;
            }
            d.points()
                .iter()
                .rev()
                .find(|y| **y < x)
                .map(|y| (x.clone(), y.clone()))
        }
        _ => None,
    }
}

/// Checks every uninorm of `family` as a combiner for `mu` on the target
/// monoid, and evaluates the explicit contradiction pair where it applies.
pub fn refute_uninorm_existence(
    mu: &FuzzySubset,
    target: &RefutationTarget,
    family: &[Connective],
    d: &Domain,
    b: &SearchBudget,
) -> Result<RefutationReport> {
    let op = target.connective();
    let expected = match target {
        RefutationTarget::TNorm(_) => Role::TNorm,
        RefutationTarget::TConorm(_) => Role::TConorm,
    };
    if op.role() != expected {
        return Err(Error::Domain(format!(
            "target '{}' is not a {expected}",
            op.name()
        )));
    }
    let carrier = CarrierMonoid::interval(d.clone(), op.clone())?;
    let mut rows = Vec::with_capacity(family.len());
    for u in family {
        let kind = SubstructureKind::new(KindTag::USubmonoid, Some(u.clone()))?;
        let report = check_fuzzy_submonoid(mu, &carrier, &kind, b)?;
        let e = u
            .identity()
            .ok_or_else(|| Error::Domain(format!("uninorm '{}' declares no identity", u.name())))?;
        let mut explicit_violates = false;
        let explicit_witness = match explicit_pair(mu, target, e, d) {
            Some((x, y)) => {
                let (mx, my) = (
                    mu.value(&carrier, &Elem::Scalar(x.clone()))?,
                    mu.value(&carrier, &Elem::Scalar(y.clone()))?,
                );
                let lhs = u.eval(&mx, &my);
                let rhs = mu.value(&carrier, &Elem::Scalar(op.eval(&x, &y)))?;
                explicit_violates = lhs > rhs;
                Some(Witness::new(
                    vec![Datum::from(&x), Datum::from(&y)],
                    vec![lhs.into(), rhs.into()],
                ))
            }
            None => None,
        };
        rows.push(RefutationRow {
            uninorm: u.name().to_string(),
            verdict: report.verdict,
            violations: report
                .check("closure")
                .map(|c| c.stat("violations"))
                .unwrap_or(0),
            explicit_witness,
            explicit_violates,
        });
    }
    let refuted = !rows.is_empty() && rows.iter().all(|r| r.verdict.fails());
    Ok(RefutationReport {
        subset: mu.name(),
        target: op.name().to_string(),
        domain_size: d.len(),
        rows,
        refuted,
    })
}

/// `U_min` and `U_max` for every combination of the given parameters.
pub fn uninorm_family(
    es: &[UnitScalar],
    ts: &[TNormFamily],
    ss: &[TConormFamily],
) -> Result<Vec<Connective>> {
    use crate::connective::{construct_uninorm_max, construct_uninorm_min};
    let mut out = Vec::new();
    for e in es {
        for &t in ts {
            for &s in ss {
                out.push(construct_uninorm_min(
                    e.clone(),
                    Connective::tnorm(t),
                    Connective::tconorm(s),
                )?);
                out.push(construct_uninorm_max(
                    e.clone(),
                    Connective::tnorm(t),
                    Connective::tconorm(s),
                )?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connective::{construct_nullnorm, construct_uninorm_max, construct_uninorm_min};
    use crate::scalar::q;

    fn b() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn prop17_agrees() {
        let d = Domain::grid(10).unwrap();
        let amin = Connective::aggregation(AggregationFamily::Min);
        let mu = FuzzySubset::custom("bump", |x| {
            if x.is_one() {
                UnitScalar::one()
            } else {
                q(1, 3)
            }
        });
        let r = characterize_special_case(SpecialCase::Prop17, &mu, &amin, None, &d, &b()).unwrap();
        assert!(r.verdict.holds());
        assert!(r.has_tag("SUBMONOID_TRUE"));
        let r = characterize_special_case(
            SpecialCase::Prop17,
            &FuzzySubset::Complement,
            &amin,
            None,
            &d,
            &b(),
        )
        .unwrap();
        assert!(r.verdict.holds() && r.has_tag("SUBMONOID_FALSE"));
    }

    #[test]
    fn disjunctive_case_both_false() {
        let d = Domain::grid(10).unwrap();
        let u = construct_uninorm_max(
            q(1, 2),
            Connective::tnorm(TNormFamily::Product),
            Connective::tconorm(TConormFamily::ProbabilisticSum),
        )
        .unwrap();
        let r = characterize_special_case(
            SpecialCase::Disjunctive,
            &FuzzySubset::Identity,
            &u,
            None,
            &d,
            &b(),
        )
        .unwrap();
        assert!(r.verdict.holds());
        assert!(r.has_tag("SUBMONOID_FALSE") && r.has_tag("CONDITION_FALSE"));
        let conj = construct_uninorm_min(
            q(1, 2),
            Connective::tnorm(TNormFamily::Product),
            Connective::tconorm(TConormFamily::ProbabilisticSum),
        )
        .unwrap();
        assert!(characterize_special_case(
            SpecialCase::Disjunctive,
            &FuzzySubset::Identity,
            &conj,
            None,
            &d,
            &b()
        )
        .is_err());
    }

    #[test]
    fn prop20_step_example() {
        let d = Domain::grid(10).unwrap();
        let e = q(1, 2);
        let u = construct_uninorm_min(
            e.clone(),
            Connective::tnorm(TNormFamily::Product),
            Connective::tconorm(TConormFamily::Maximum),
        )
        .unwrap();
        let r = characterize_special_case(
            SpecialCase::Prop20,
            &FuzzySubset::Step(e),
            &u,
            None,
            &d,
            &b(),
        )
        .unwrap();
        assert!(r.verdict.holds());
        assert!(r.has_tag("SUBMONOID_TRUE"));
    }

    #[test]
    fn prop25_characterization() {
        let d = Domain::grid(10).unwrap();
        let f = construct_nullnorm(
            Connective::tconorm(TConormFamily::Lukasiewicz),
            q(1, 2),
            Connective::tnorm(TNormFamily::Minimum),
        )
        .unwrap();
        let mu = FuzzySubset::custom("half-up", |x| {
            UnitScalar::clamp(
                num_rational::BigRational::new(1.into(), 2.into())
                    + x.value() / num_rational::BigRational::from_integer(2.into()),
            )
        });
        let r = characterize_special_case(SpecialCase::Prop25, &mu, &f, None, &d, &b()).unwrap();
        assert!(r.verdict.holds() && r.has_tag("SUBMONOID_TRUE"));
        let r = characterize_special_case(
            SpecialCase::Prop25,
            &FuzzySubset::Identity,
            &f,
            None,
            &d,
            &b(),
        )
        .unwrap();
        assert!(r.verdict.holds() && r.has_tag("CONDITION_FALSE"));
        let fl = construct_nullnorm(
            Connective::tconorm(TConormFamily::Lukasiewicz),
            q(1, 2),
            Connective::tnorm(TNormFamily::Lukasiewicz),
        )
        .unwrap();
        assert!(characterize_special_case(SpecialCase::Prop25, &mu, &fl, None, &d, &b()).is_err());
    }

    #[test]
    fn refutation_rows() {
        let d = Domain::grid(12).unwrap();
        let fam = uninorm_family(
            &[q(1, 4), q(1, 2), q(3, 4)],
            &[TNormFamily::Product],
            &[TConormFamily::ProbabilisticSum],
        )
        .unwrap();
        let r = refute_uninorm_existence(
            &FuzzySubset::Identity,
            &RefutationTarget::TNorm(Connective::tnorm(TNormFamily::Product)),
            &fam,
            &d,
            &b(),
        )
        .unwrap();
        assert!(r.refuted);
        assert_eq!(r.rows.len(), 6);
        assert!(r.rows.iter().all(|row| row.explicit_violates));
        let s = RefutationTarget::TConorm(Connective::tconorm(TConormFamily::ProbabilisticSum));
        let r = refute_uninorm_existence(&FuzzySubset::Complement, &s, &fam, &d, &b()).unwrap();
        assert!(r.refuted && r.rows.iter().all(|row| row.explicit_violates));
        let one = refute_uninorm_existence(&FuzzySubset::One, &s, &fam, &d, &b()).unwrap();
        assert!(!one.refuted);
        assert!(one.rows.iter().all(|row| row.verdict.holds()));
    }
}
