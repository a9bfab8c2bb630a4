use std::sync::Arc;

use crate::engine::{ensure_universe, verify_implication, ImplicationReport};
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyProperty;
use crate::report::{
    par_tally, BudgetInfo, Datum, DomainInfo, PropertyReport, SearchBudget, Tally, Verdict, Witness,
};

use super::order::FiniteLattice;
use super::tnorm::{enumerate_lattice_tnorms, LatticeTNorm};

/// A map from the elements of a lattice into the same lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSubset {
    name: String,
    values: Vec<usize>,
}

impl LSubset {
    pub fn new(name: impl Into<String>, values: Vec<usize>, l: &FiniteLattice) -> Result<Self> {
        if values.len() != l.len() {
            return Err(Error::NotTotal {
                element: format!(
                    "L-subset has {} values for {} elements",
                    values.len(),
                    l.len()
                ),
            });
        }
        if let Some(v) = values.iter().find(|&&v| v >= l.len()) {
            return Err(Error::Domain(format!(
                "L-subset value {v} is not a lattice element"
            )));
        }
        Ok(LSubset {
            name: name.into(),
            values,
        })
    }

    /// From `(element, value)` label pairs covering every element once.
    pub fn from_labels(
        name: impl Into<String>,
        entries: &[(String, String)],
        l: &FiniteLattice,
    ) -> Result<Self> {
        let mut values = vec![None; l.len()];
        for (k, v) in entries {
            let i = l
                .index_of(k)
                .ok_or_else(|| Error::Domain(format!("unknown lattice element '{k}'")))?;
            let j = l
                .index_of(v)
                .ok_or_else(|| Error::Domain(format!("unknown lattice element '{v}'")))?;
            if values[i].replace(j).is_some() {
                return Err(Error::Domain(format!("element '{k}' is mapped twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::NotTotal {
                    element: l.label(i).to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, values, l)
    }

    pub fn identity(l: &FiniteLattice) -> Self {
        LSubset {
            name: "identity".into(),
            values: (0..l.len()).collect(),
        }
    }

    pub fn constant(l: &FiniteLattice, v: usize) -> Self {
        LSubset {
            name: format!("const {}", l.label(v)),
            values: vec![v; l.len()],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, x: usize) -> usize {
        self.values[x]
    }
}

fn info(l: &FiniteLattice) -> DomainInfo {
    DomainInfo::finite(if l.is_chain() { "chain" } else { "lattice" }, l.len())
}

fn budget(b: &SearchBudget) -> BudgetInfo {
    BudgetInfo {
        max_witnesses: b.max_witnesses,
        ..BudgetInfo::default()
    }
}

fn subject(mu: &LSubset, t: &LatticeTNorm) -> String {
    format!("{} w.r.t. {} on {}", mu.name, t.name(), t.lattice().name())
}

fn witness(l: &FiniteLattice, xs: &[usize], vs: &[usize]) -> Witness {
    let lab = |i: &usize| Datum::Label(l.label(*i).to_string());
    Witness::new(xs.iter().map(lab).collect(), vs.iter().map(lab).collect())
}

/// `mu(x) meet mu(y) <= mu(T(x,y))` for all `x, y`, and `mu(1) = 1`.
pub fn check_lattice_fuzzy_subnorm(
    mu: &LSubset,
    t: &LatticeTNorm,
    b: &SearchBudget,
) -> PropertyReport {
    let l = t.lattice();
    let n = l.len();
    let subj = subject(mu, t);
    let mut r = PropertyReport::new("lattice-t-subnorm", &subj, info(l)).with_budget(budget(b));
    let closure = par_tally(n, b.max_witnesses, |x, tally| {
        for y in 0..n {
            let lhs = l.meet(mu.at(x), mu.at(y));
            let rhs = mu.at(t.eval(x, y));
            if l.leq(lhs, rhs) {
                tally.pass();
            } else {
                tally.fail(witness(l, &[x, y], &[lhs, rhs]));
            }
        }
    });
    r.push_check(closure.into_report("closure", &subj, info(l), budget(b)));
    let mut unit = Tally::new(b.max_witnesses);
    if mu.at(l.top()) == l.top() {
        unit.pass();
    } else {
        unit.fail(witness(l, &[l.top()], &[mu.at(l.top())]));
    }
    r.push_check(unit.into_report("unit", &subj, info(l), budget(b)));
    r
}

/// The fuzzified t-norm properties for an L-subset. `y < z` ranges over
/// comparable pairs only; incomparable pairs are counted as excluded.
/// Powers are followed until they become stationary, which they always do
/// on a finite lattice. A non-subnorm is VACUOUS, with the gate report and
/// the ungated evaluation attached as diagnostics.
pub fn check_lattice_fuzzy_property(
    mu: &LSubset,
    t: &LatticeTNorm,
    prop: FuzzyProperty,
    b: &SearchBudget,
) -> PropertyReport {
    let gate = check_lattice_fuzzy_subnorm(mu, t, b);
    let mut r = evaluate(mu, t, prop, b);
    if gate.verdict.holds() {
        r.tag("SUBNORM_GATE_PASSED");
        return r;
    }
    let mut out =
        PropertyReport::new(prop.id(), &r.subject, r.domain.clone()).with_budget(budget(b));
    out.verdict = Verdict::Vacuous;
    out.tag("NOT_A_SUBNORM");
    out.push_diagnostic(gate);
    r.property_id = format!("{}-ungated", prop.id());
    out.push_diagnostic(r);
    out
}

fn evaluate(
    mu: &LSubset,
    t: &LatticeTNorm,
    prop: FuzzyProperty,
    b: &SearchBudget,
) -> PropertyReport {
    let l = t.lattice();
    let n = l.len();
    let cap = b.max_witnesses;
    let subj = subject(mu, t);
    let interior = |x: usize| x != l.bottom() && x != l.top();
    let m = |x: usize| mu.at(x);
    let mu0 = m(l.bottom());
    let tally = match prop {
        FuzzyProperty::Strict => par_tally(n, cap, |x, tally| {
            if !interior(x) {
                return;
            }
            for y in 0..n {
                for z in y + 1..n {
                    let (lo, hi) = if l.lt(y, z) {
                        (y, z)
                    } else if l.lt(z, y) {
                        (z, y)
                    } else {
                        tally.exclude();
                        continue;
                    };
                    let (a, c) = (m(t.eval(x, lo)), m(t.eval(x, hi)));
                    if l.lt(c, a) {
                        tally.pass();
                    } else {
                        tally.fail(witness(l, &[x, lo, hi], &[a, c]));
                    }
                }
            }
        }),
        FuzzyProperty::Cancel => par_tally(n, cap, |x, tally| {
            for y in 0..n {
                for z in y + 1..n {
                    let (a, c) = (m(t.eval(x, y)), m(t.eval(x, z)));
                    if x == l.bottom() || a != c {
                        tally.pass();
                    } else {
                        tally.fail(witness(l, &[x, y, z], &[a, c]));
                    }
                }
            }
        }),
        FuzzyProperty::CondCancel => par_tally(n, cap, |x, tally| {
            for y in 0..n {
                for z in y + 1..n {
                    let (a, c) = (m(t.eval(x, y)), m(t.eval(x, z)));
                    if a != c || !l.lt(mu0, a) || m(y) == m(z) {
                        tally.pass();
                    } else {
                        tally.fail(witness(l, &[x, y, z], &[a, c, m(y), m(z)]));
                    }
                }
            }
        }),
        FuzzyProperty::Arch => {
            if mu.values.iter().all(|&v| v == mu.values[0]) {
                let mut r = PropertyReport::new(prop.id(), &subj, info(l)).with_budget(budget(b));
                r.verdict = Verdict::Vacuous;
                r.tag("VACUOUS_BY_CONSTANCY");
                return r;
            }
            let mut incomparable = 0u64;
            let mut tally = Tally::new(cap);
            for x in (0..n).filter(|&x| interior(x)) {
                let powers = t.powers(x);
                for y in (0..n).filter(|&y| interior(y)) {
                    if powers.iter().any(|&p| l.lt(m(p), m(y))) {
                        tally.pass();
                        continue;
                    }
                    if powers.iter().any(|&p| !l.comparable(m(p), m(y))) {
                        incomparable += 1;
                    }
                    let last = *powers.last().expect("non-empty");
                    tally.fail(Witness::new(
                        vec![
                            Datum::Label(l.label(x).into()),
                            Datum::Label(l.label(y).into()),
                        ],
                        vec![
                            Datum::Label(l.label(m(last)).into()),
                            Datum::Label(l.label(m(y)).into()),
                            Datum::Count(powers.len() as u64),
                        ],
                    ));
                }
            }
            let mut r = tally.into_report(prop.id(), &subj, info(l), budget(b));
            if incomparable > 0 {
                r.tag("INCOMPARABLE_OUTCOMES");
                r.stats.insert("incomparable_outcomes".into(), incomparable);
            }
            return r;
        }
        FuzzyProperty::Limit => par_tally(n, cap, |x, tally| {
            if !interior(x) {
                return;
            }
            let last = *t.powers(x).last().expect("non-empty");
            if m(last) == mu0 {
                tally.pass();
            } else {
                tally.fail(witness(l, &[x], &[last, m(last), mu0]));
            }
        }),
    };
    tally.into_report(prop.id(), &subj, info(l), budget(b))
}

/// One element of a lattice fuzzy universe.
#[derive(Debug, Clone)]
pub struct LatticeFuzzyCase {
    pub tnorm: LatticeTNorm,
    pub mu: LSubset,
}

/// Every `(T, mu)` with `T` a t-norm on one of `lattices` and `mu` any map
/// from the lattice to itself.
pub fn lattice_fuzzy_universe(
    lattices: &[Arc<FiniteLattice>],
    b: &SearchBudget,
) -> Result<Vec<LatticeFuzzyCase>> {
    let mut out = Vec::new();
    for l in lattices {
        let n = l.len();
        let maps = (n as u128).saturating_pow(n as u32);
        let tnorms = enumerate_lattice_tnorms(l, usize::MAX, b)?;
        ensure_universe(
            "lattice fuzzy universe",
            (out.len() as u128) + maps * tnorms.len() as u128,
            b,
        )?;
        for t in tnorms {
            for code in 0..maps as usize {
                let mut c = code;
                let values: Vec<usize> = (0..n)
                    .map(|_| {
                        let v = c % n;
                        c /= n;
                        v
                    })
                    .collect();
                let labels: Vec<&str> = values.iter().map(|&v| l.label(v)).collect();
                out.push(LatticeFuzzyCase {
                    tnorm: t.clone(),
                    mu: LSubset {
                        name: format!("mu[{}]", labels.join(",")),
                        values,
                    },
                });
            }
        }
    }
    Ok(out)
}

/// `premise => conclusion` over [`lattice_fuzzy_universe`].
pub fn sweep_lattice_fuzzy_implication(
    lattices: &[Arc<FiniteLattice>],
    premise: FuzzyProperty,
    conclusion: FuzzyProperty,
    b: &SearchBudget,
) -> Result<ImplicationReport> {
    let items = lattice_fuzzy_universe(lattices, b)?;
    let names: Vec<String> = lattices.iter().map(|l| l.name()).collect();
    verify_implication(
        premise.id(),
        conclusion.id(),
        &format!("L-subsets on {}", names.join(" ")),
        &items,
        b,
        |c| {
            format!(
                "{} T={} {}",
                c.tnorm.lattice().name(),
                c.tnorm.name(),
                c.mu.name()
            )
        },
        |c| Ok(check_lattice_fuzzy_property(&c.mu, &c.tnorm, premise, b).verdict),
        |c| Ok(check_lattice_fuzzy_property(&c.mu, &c.tnorm, conclusion, b).verdict),
    )
}
