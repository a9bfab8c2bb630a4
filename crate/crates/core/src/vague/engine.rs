//! Degree-generic checks over materialized equality and membership tables.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::report::{
    par_tally, BudgetInfo, Datum, DomainInfo, PropertyReport, SearchBudget, Tally, Tri, Verdict,
    Witness,
};

/// The truth values the degrees live in, with the t-norm that combines them.
pub trait DegreeAlgebra: Sync {
    type D: Clone + PartialEq + Send + Sync;

    fn combine(&self, a: &Self::D, b: &Self::D) -> Self::D;
    fn le(&self, a: &Self::D, b: &Self::D) -> Tri;
    fn eq(&self, a: &Self::D, b: &Self::D) -> Tri;
    fn is_top(&self, a: &Self::D) -> bool;
    fn is_bottom(&self, a: &Self::D) -> bool;
    fn datum(&self, a: &Self::D) -> Datum;
    fn name(&self) -> String;
}

/// How the "equal degrees" premise of the vague strict monotonicity and
/// cancellation laws is matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DegreeReading {
    /// Any common degree, as written.
    #[default]
    Literal,
    /// Only the common degree 1.
    Crisp,
}

impl DegreeReading {
    pub fn id(self) -> &'static str {
        match self {
            DegreeReading::Literal => "literal",
            DegreeReading::Crisp => "crisp",
        }
    }

    fn tag(self) -> &'static str {
        match self {
            DegreeReading::Literal => "READING=LITERAL",
            DegreeReading::Crisp => "READING=CRISP",
        }
    }
}

impl fmt::Display for DegreeReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for DegreeReading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "literal" => Ok(DegreeReading::Literal),
            "crisp" => Ok(DegreeReading::Crisp),
            other => Err(Error::Config(format!("unknown degree reading '{other}'"))),
        }
    }
}

/// An equality `E` (n x n) and a ternary membership `mu` (n x n x n) on an
/// element list, with an optional strict order for the monotonicity laws.
#[derive(Debug, Clone)]
pub struct VagueTable<A: DegreeAlgebra> {
    pub alg: A,
    pub name: String,
    pub elems: Vec<Datum>,
    pub eq: Vec<A::D>,
    pub mu: Vec<A::D>,
    /// `lt[i*n+j]` iff element i is strictly below element j.
    pub lt: Option<Vec<bool>>,
    pub domain: DomainInfo,
}

impl<A: DegreeAlgebra> VagueTable<A> {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn e(&self, i: usize, j: usize) -> &A::D {
        &self.eq[i * self.len() + j]
    }

    pub fn m(&self, i: usize, j: usize, k: usize) -> &A::D {
        let n = self.len();
        &self.mu[(i * n + j) * n + k]
    }

    fn less(&self, i: usize, j: usize) -> Option<bool> {
        self.lt.as_ref().map(|lt| lt[i * self.len() + j])
    }

    fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.less(i, j) == Some(true) || self.less(j, i) == Some(true)
    }

    fn budget(&self, b: &SearchBudget) -> BudgetInfo {
        BudgetInfo {
            resolution: self.domain.resolution,
            max_witnesses: b.max_witnesses,
            ..BudgetInfo::default()
        }
    }

    fn report(&self, t: Tally, id: &str, b: &SearchBudget) -> PropertyReport {
        t.into_report(id, &self.name, self.domain.clone(), self.budget(b))
    }

    fn ensure(&self, what: &str, arity: u32, b: &SearchBudget) -> Result<()> {
        b.ensure_tuples(what, (self.len() as u128).pow(arity))
    }

    fn w(&self, idx: &[usize], vals: &[&A::D]) -> Witness {
        Witness::new(
            idx.iter().map(|&i| self.elems[i].clone()).collect(),
            vals.iter().map(|v| self.alg.datum(v)).collect(),
        )
    }

    fn t(&self, ds: &[&A::D]) -> A::D {
        let mut acc = ds[0].clone();
        for d in &ds[1..] {
            acc = self.alg.combine(&acc, d);
        }
        acc
    }
}

/// Reflexivity, symmetry and T-transitivity of an equality table; tags
/// `SEPARATES_POINTS` when degree 1 only occurs on the diagonal.
pub fn equality_report<A: DegreeAlgebra>(
    alg: &A,
    subject: &str,
    elems: &[Datum],
    eq: &[A::D],
    domain: DomainInfo,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let n = elems.len();
    b.ensure_tuples("T-transitivity", (n as u128).pow(3))?;
    let budget = BudgetInfo {
        resolution: domain.resolution,
        max_witnesses: b.max_witnesses,
        ..BudgetInfo::default()
    };
    let e = |i: usize, j: usize| &eq[i * n + j];
    let w = |idx: &[usize], vals: &[&A::D]| {
        Witness::new(
            idx.iter().map(|&i| elems[i].clone()).collect(),
            vals.iter().map(|v| alg.datum(v)).collect(),
        )
    };
    let mut r =
        PropertyReport::new("fuzzy-equality", subject, domain.clone()).with_budget(budget.clone());

    let mut refl = Tally::new(b.max_witnesses);
    for i in 0..n {
        if alg.is_top(e(i, i)) {
            refl.pass();
        } else {
            refl.fail(w(&[i, i], &[e(i, i)]));
        }
    }
    r.push_check(refl.into_report("reflexivity", subject, domain.clone(), budget.clone()));

    let mut sym = Tally::new(b.max_witnesses);
    for i in 0..n {
        for j in i + 1..n {
            sym.record(alg.eq(e(i, j), e(j, i)), || w(&[i, j], &[e(i, j), e(j, i)]));
        }
    }
    r.push_check(sym.into_report("symmetry", subject, domain.clone(), budget.clone()));

    let trans = par_tally(n, b.max_witnesses, |i, t| {
        for j in 0..n {
            for k in 0..n {
                let lhs = alg.combine(e(i, j), e(j, k));
                t.record(alg.le(&lhs, e(i, k)), || w(&[i, j, k], &[&lhs, e(i, k)]));
            }
        }
    });
    r.push_check(trans.into_report("t-transitivity", subject, domain, budget));

    let separates = (0..n).all(|i| (0..n).all(|j| i == j || !alg.is_top(e(i, j))));
    r.tag(if separates {
        "SEPARATES_POINTS"
    } else {
        "DOES_NOT_SEPARATE_POINTS"
    });
    Ok(r)
}

/// Extensionality, functionality and totality.
pub fn vague_op_report<A: DegreeAlgebra>(
    v: &VagueTable<A>,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let n = v.len();
    v.ensure("extensionality", 6, b)?;
    let mut r = PropertyReport::new("vague-op", &v.name, v.domain.clone()).with_budget(v.budget(b));

    let ext = par_tally(n * n * n, b.max_witnesses, |ijk, t| {
        let (x, y, z) = (ijk / (n * n), (ijk / n) % n, ijk % n);
        let m = v.m(x, y, z);
        if v.alg.is_bottom(m) {
            t.checked += (n * n * n) as u64;
            return;
        }
        for x2 in 0..n {
            let a = v.alg.combine(m, v.e(x, x2));
            for y2 in 0..n {
                let bb = v.alg.combine(&a, v.e(y, y2));
                for z2 in 0..n {
                    let lhs = v.alg.combine(&bb, v.e(z, z2));
                    let rhs = v.m(x2, y2, z2);
                    t.record(v.alg.le(&lhs, rhs), || {
                        v.w(&[x, y, z, x2, y2, z2], &[&lhs, rhs])
                    });
                }
            }
        }
    });
    r.push_check(v.report(ext, "extensionality", b));

    let func = par_tally(n, b.max_witnesses, |x, t| {
        for y in 0..n {
            for z in 0..n {
                for z2 in 0..n {
                    let lhs = v.alg.combine(v.m(x, y, z), v.m(x, y, z2));
                    t.record(v.alg.le(&lhs, v.e(z, z2)), || {
                        v.w(&[x, y, z, z2], &[&lhs, v.e(z, z2)])
                    });
                }
            }
        }
    });
    r.push_check(v.report(func, "functionality", b));

    let mut total = Tally::new(b.max_witnesses);
    for x in 0..n {
        for y in 0..n {
            if (0..n).any(|z| v.alg.is_top(v.m(x, y, z))) {
                total.pass();
            } else {
                total.fail(v.w(&[x, y], &[]));
            }
        }
    }
    r.push_check(v.report(total, "totality", b));
    Ok(r)
}

/// The seven-variable associativity inequality and an identity search,
/// gated on the vague-operation conditions (`NOT_VAGUE_OP` otherwise).
pub fn vague_monoid_report<A: DegreeAlgebra>(
    v: &VagueTable<A>,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let n = v.len();
    v.ensure("vague associativity", 7, b)?;
    let mut r =
        PropertyReport::new("vague-monoid", &v.name, v.domain.clone()).with_budget(v.budget(b));
    let gate = vague_op_report(v, b)?;
    if !gate.verdict.holds() {
        r.verdict = if gate.verdict.fails() {
            Verdict::Fails
        } else {
            Verdict::Vacuous
        };
        r.tag("NOT_VAGUE_OP");
        r.push_diagnostic(gate);
        return Ok(r);
    }

    // T(mu(y,z,d), mu(x,d,m), mu(x,y,q), mu(q,z,w)) <= E(m,w)
    let assoc = par_tally(n * n, b.max_witnesses, |xy, t| {
        let (x, y) = (xy / n, xy % n);
        for z in 0..n {
            for d in 0..n {
                let a = v.m(y, z, d);
                if v.alg.is_bottom(a) {
                    t.checked += (n * n * n) as u64;
                    continue;
                }
                for q in 0..n {
                    let c = v.m(x, y, q);
                    let ac = v.alg.combine(a, c);
                    if v.alg.is_bottom(&ac) {
                        t.checked += (n * n) as u64;
                        continue;
                    }
                    for m in 0..n {
                        let acm = v.alg.combine(&ac, v.m(x, d, m));
                        for w in 0..n {
                            let lhs = v.alg.combine(&acm, v.m(q, z, w));
                            t.record(v.alg.le(&lhs, v.e(m, w)), || {
                                v.w(&[x, y, z, d, m, q, w], &[&lhs, v.e(m, w)])
                            });
                        }
                    }
                }
            }
        }
    });
    r.push_check(v.report(assoc, "vague-associativity", b));

    let identities: Vec<usize> = (0..n)
        .filter(|&e| (0..n).all(|a| v.alg.is_top(&v.alg.combine(v.m(e, a, a), v.m(a, e, a)))))
        .collect();
    let mut id = Tally::new(b.max_witnesses);
    match identities.first() {
        Some(&e) => {
            id.pass();
            r.tag(&format!("IDENTITY={}", datum_text(&v.elems[e])));
        }
        None => id.fail(Witness::new(
            vec![Datum::Label("no identity element".into())],
            vec![],
        )),
    }
    let mut idr = v.report(id, "identity", b);
    idr.stats
        .insert("identity_candidates".into(), identities.len() as u64);
    r.push_check(idr);
    r.push_diagnostic(gate);
    Ok(r)
}

fn datum_text(d: &Datum) -> String {
    match d {
        Datum::Scalar(s) => s.to_string(),
        Datum::Label(l) => l.clone(),
        Datum::Count(c) => c.to_string(),
    }
}

/// `T(mu(a,b,m), mu(b,a,w)) <= E(m,w)`.
pub fn vague_commutativity_report<A: DegreeAlgebra>(
    v: &VagueTable<A>,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let n = v.len();
    v.ensure("vague commutativity", 4, b)?;
    let t = par_tally(n, b.max_witnesses, |a, t| {
        for bb in 0..n {
            for m in 0..n {
                for w in 0..n {
                    let lhs = v.alg.combine(v.m(a, bb, m), v.m(bb, a, w));
                    t.record(v.alg.le(&lhs, v.e(m, w)), || {
                        v.w(&[a, bb, m, w], &[&lhs, v.e(m, w)])
                    });
                }
            }
        }
    });
    Ok(v.report(t, "vague-commutativity", b))
}

fn premise<A: DegreeAlgebra>(alg: &A, reading: DegreeReading, p: &A::D, q: &A::D) -> Tri {
    match reading {
        DegreeReading::Literal => alg.eq(p, q),
        DegreeReading::Crisp => {
            if alg.is_top(p) && alg.is_top(q) {
                Tri::Yes
            } else {
                Tri::No
            }
        }
    }
}

/// `x < y, mu(x,z,a) = mu(y,z,b) => a < b`. Incomparable `x, y` are
/// excluded and counted; an incomparable `a, b` does not satisfy `a < b`.
pub fn vague_strict_monotone_report<A: DegreeAlgebra>(
    v: &VagueTable<A>,
    reading: DegreeReading,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let n = v.len();
    if v.lt.is_none() {
        return Err(Error::Domain(format!(
            "'{}' has no order on its elements",
            v.name
        )));
    }
    v.ensure("vague strict monotonicity", 5, b)?;
    let t = par_tally(n, b.max_witnesses, |x, t| {
        for y in 0..n {
            if x == y {
                continue;
            }
            if !v.comparable(x, y) {
                if x < y {
                    t.exclude();
                }
                continue;
            }
            if v.less(x, y) != Some(true) {
                continue;
            }
            for z in 0..n {
                for a in 0..n {
                    for bb in 0..n {
                        let (p, q) = (v.m(x, z, a), v.m(y, z, bb));
                        match premise(&v.alg, reading, p, q) {
                            Tri::No => t.pass(),
                            Tri::Unsure => t.unsure(),
                            Tri::Yes if v.less(a, bb) == Some(true) => t.pass(),
                            Tri::Yes => t.fail(v.w(&[x, y, z, a, bb], &[p, q])),
                        }
                    }
                }
            }
        }
    });
    let mut r = v.report(t, "vague-strict-monotone", b);
    r.tag(reading.tag());
    Ok(r)
}

/// `mu(a,x,c) = mu(b,x,c) => a = b`.
pub fn vague_cancellation_report<A: DegreeAlgebra>(
    v: &VagueTable<A>,
    reading: DegreeReading,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let n = v.len();
    v.ensure("vague cancellation", 4, b)?;
    let t = par_tally(n, b.max_witnesses, |a, t| {
        for bb in a + 1..n {
            for x in 0..n {
                for c in 0..n {
                    let (p, q) = (v.m(a, x, c), v.m(bb, x, c));
                    match premise(&v.alg, reading, p, q) {
                        Tri::No => t.pass(),
                        Tri::Unsure => t.unsure(),
                        Tri::Yes => t.fail(v.w(&[a, bb, x, c], &[p, q])),
                    }
                }
            }
        }
    });
    let mut r = v.report(t, "vague-cancellation", b);
    r.tag(reading.tag());
    Ok(r)
}

/// Left and right forms of `mu(a,b,u) T mu(a,c,u) <= E(b,c)`.
pub fn group_cancellation_report<A: DegreeAlgebra>(
    v: &VagueTable<A>,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let n = v.len();
    v.ensure("vague group cancellation", 4, b)?;
    let mut r = PropertyReport::new("vague-group-cancellation", &v.name, v.domain.clone())
        .with_budget(v.budget(b));
    for (id, left) in [("left", true), ("right", false)] {
        let t = par_tally(n, b.max_witnesses, |a, t| {
            for bb in 0..n {
                for c in 0..n {
                    for u in 0..n {
                        let (p, q) = if left {
                            (v.m(a, bb, u), v.m(a, c, u))
                        } else {
                            (v.m(bb, a, u), v.m(c, a, u))
                        };
                        let lhs = v.t(&[p, q]);
                        t.record(v.alg.le(&lhs, v.e(bb, c)), || {
                            v.w(&[a, bb, c, u], &[&lhs, v.e(bb, c)])
                        });
                    }
                }
            }
        });
        r.push_check(v.report(t, id, b));
    }
    Ok(r)
}
