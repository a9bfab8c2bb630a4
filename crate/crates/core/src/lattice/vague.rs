use std::sync::Arc;

use crate::engine::{verify_implication, ImplicationReport};
use crate::error::{Error, Result};
use crate::report::{Datum, DomainInfo, PropertyReport, SearchBudget, Tri, Verdict};
use crate::vague::{
    equality_report, vague_cancellation_report, vague_monoid_report, vague_strict_monotone_report,
    DegreeAlgebra, DegreeReading, VagueTable,
};

use super::order::FiniteLattice;
use super::tnorm::{enumerate_lattice_tnorms, LatticeTNorm};

/// Lattice elements as degrees, combined by a lattice t-norm.
#[derive(Debug, Clone)]
pub struct LatticeDegrees {
    t: LatticeTNorm,
}

impl LatticeDegrees {
    pub fn new(t: LatticeTNorm) -> Self {
        LatticeDegrees { t }
    }

    pub fn tnorm(&self) -> &LatticeTNorm {
        &self.t
    }
}

fn tri(b: bool) -> Tri {
    if b {
        Tri::Yes
    } else {
        Tri::No
    }
}

impl DegreeAlgebra for LatticeDegrees {
    type D = usize;

    fn combine(&self, a: &usize, b: &usize) -> usize {
        self.t.eval(*a, *b)
    }

    fn le(&self, a: &usize, b: &usize) -> Tri {
        tri(self.t.lattice().leq(*a, *b))
    }

    fn eq(&self, a: &usize, b: &usize) -> Tri {
        tri(a == b)
    }

    fn is_top(&self, a: &usize) -> bool {
        *a == self.t.lattice().top()
    }

    fn is_bottom(&self, a: &usize) -> bool {
        *a == self.t.lattice().bottom()
    }

    fn datum(&self, a: &usize) -> Datum {
        Datum::Label(self.t.lattice().label(*a).to_string())
    }

    fn name(&self) -> String {
        format!("{} on {}", self.t.name(), self.t.lattice().name())
    }
}

/// Largest lattice the vague layer runs on.
pub const MAX_VAGUE_LATTICE: usize = 5;

fn ensure_small(l: &FiniteLattice) -> Result<()> {
    if l.len() > MAX_VAGUE_LATTICE {
        return Err(Error::BudgetExceeded {
            what: format!("vague checks on a {}-element lattice", l.len()),
            estimate: (l.len() as u128).pow(7),
            budget: (MAX_VAGUE_LATTICE as u128).pow(7),
        });
    }
    Ok(())
}

fn elems(l: &FiniteLattice) -> Vec<Datum> {
    l.labels().iter().map(|s| Datum::Label(s.clone())).collect()
}

fn info(l: &FiniteLattice) -> DomainInfo {
    DomainInfo::finite(if l.is_chain() { "chain" } else { "lattice" }, l.len())
}

/// The crisp equality: top on the diagonal, bottom elsewhere.
pub fn crisp_lattice_equality(l: &FiniteLattice) -> Vec<usize> {
    let n = l.len();
    (0..n * n)
        .map(|ij| {
            if ij / n == ij % n {
                l.top()
            } else {
                l.bottom()
            }
        })
        .collect()
}

/// `T~(x,y,z) = E(T(x,y), z)` on the lattice itself, with `T` both the
/// operation and the degree combiner.
pub fn induce_lattice_vague_tnorm(
    e: &[usize],
    t: &LatticeTNorm,
    b: &SearchBudget,
) -> Result<VagueTable<LatticeDegrees>> {
    let l = t.lattice();
    ensure_small(l)?;
    let n = l.len();
    if e.len() != n * n || e.iter().any(|&v| v >= n) {
        return Err(Error::Domain(format!(
            "equality must be a {n}x{n} table of lattice elements"
        )));
    }
    b.ensure_tuples("membership table", (n as u128).pow(3))?;
    let mut mu = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                mu.push(e[t.eval(x, y) * n + z]);
            }
        }
    }
    Ok(VagueTable {
        alg: LatticeDegrees::new(t.clone()),
        name: format!("E over {} on {}", t.name(), l.name()),
        elems: elems(l),
        eq: e.to_vec(),
        mu,
        lt: Some((0..n * n).map(|ij| l.lt(ij / n, ij % n)).collect()),
        domain: info(l),
    })
}

/// Whether `e` is a T-fuzzy equality valued in the lattice of `t`, and, if
/// so, whether the induced `T~` is a vague monoid (hence a vague t-norm).
/// Vague strict monotonicity and cancellation are attached as diagnostics.
pub fn check_lattice_vague_structures(
    e: &[usize],
    t: &LatticeTNorm,
    reading: DegreeReading,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let l = t.lattice();
    ensure_small(l)?;
    let n = l.len();
    if e.len() != n * n || e.iter().any(|&v| v >= n) {
        return Err(Error::Domain(format!(
            "equality must be a {n}x{n} table of lattice elements"
        )));
    }
    let alg = LatticeDegrees::new(t.clone());
    let subject = format!("E over {} on {}", t.name(), l.name());
    let mut r = PropertyReport::new("lattice-vague-structures", &subject, info(l));
    r.budget.max_witnesses = b.max_witnesses;
    let eq = equality_report(&alg, &subject, &elems(l), e, info(l), b)?;
    let valid = eq.verdict.holds();
    r.push_check(eq);
    if !valid {
        r.tag("NOT_A_FUZZY_EQUALITY");
        return Ok(r);
    }
    let v = induce_lattice_vague_tnorm(e, t, b)?;
    r.push_check(vague_monoid_report(&v, b)?);
    r.push_diagnostic(vague_strict_monotone_report(&v, reading, b)?);
    r.push_diagnostic(vague_cancellation_report(&v, reading, b)?);
    Ok(r)
}

/// One element of the lattice vague universe.
#[derive(Debug, Clone)]
pub struct LatticeVagueCase {
    pub tnorm: LatticeTNorm,
    pub equality: Vec<usize>,
}

/// Every lattice t-norm on `l` paired with every symmetric table with top on
/// the diagonal. Invalid equalities stay in the universe and are skipped by
/// the sweep as vacuous.
pub fn lattice_vague_universe(
    l: &Arc<FiniteLattice>,
    b: &SearchBudget,
) -> Result<Vec<LatticeVagueCase>> {
    ensure_small(l)?;
    let n = l.len();
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let tables = (n as u128).saturating_pow(off.len() as u32);
    let tnorms = enumerate_lattice_tnorms(l, usize::MAX, b)?;
    crate::engine::ensure_universe("lattice vague universe", tables * tnorms.len() as u128, b)?;
    let mut out = Vec::new();
    for t in &tnorms {
        for code in 0..tables as usize {
            let mut e = vec![l.top(); n * n];
            let mut c = code;
            for &(i, j) in &off {
                e[i * n + j] = c % n;
                e[j * n + i] = c % n;
                c /= n;
            }
            out.push(LatticeVagueCase {
                tnorm: t.clone(),
                equality: e,
            });
        }
    }
    Ok(out)
}

/// Vague strict monotonicity implies vague cancellation, over every
/// `(T, E)` on `l` where `E` is a T-fuzzy equality and `T~` a vague t-norm.
pub fn sweep_lattice_vague_cancellation(
    l: &Arc<FiniteLattice>,
    reading: DegreeReading,
    b: &SearchBudget,
) -> Result<ImplicationReport> {
    let items = lattice_vague_universe(l, b)?;
    let label = |c: &LatticeVagueCase| {
        let n = l.len();
        let rows: Vec<String> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| l.label(c.equality[i * n + j]))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("T={} E=[{}]", c.tnorm.name(), rows.join("; "))
    };
    verify_implication(
        "vague-strict-monotone",
        "vague-cancellation",
        &format!("vague t-norms on {} ({} reading)", l.name(), reading),
        &items,
        b,
        label,
        |c| {
            let r = check_lattice_vague_structures(&c.equality, &c.tnorm, reading, b)?;
            if !r.verdict.holds() {
                return Ok(Verdict::Vacuous);
            }
            Ok(r.diagnostic("vague-strict-monotone")
                .map(|d| d.verdict)
                .unwrap_or(Verdict::Vacuous))
        },
        |c| {
            let v = induce_lattice_vague_tnorm(&c.equality, &c.tnorm, b)?;
            Ok(vague_cancellation_report(&v, reading, b)?.verdict)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crisp_equality_is_valid_for_every_tnorm() {
        let b = SearchBudget::default();
        let c = Arc::new(FiniteLattice::chain(3));
        for t in enumerate_lattice_tnorms(&c, usize::MAX, &b).unwrap() {
            let r = check_lattice_vague_structures(
                &crisp_lattice_equality(&c),
                &t,
                DegreeReading::Literal,
                &b,
            )
            .unwrap();
            assert!(r.check("fuzzy-equality").unwrap().verdict.holds());
            let monoid = r.check("vague-monoid").unwrap();
            assert!(monoid.verdict.holds(), "{}", monoid.to_text());
            assert!(monoid.has_tag("IDENTITY=1"));
        }
    }

    #[test]
    fn invalid_equality_is_reported() {
        let b = SearchBudget::default();
        let c = Arc::new(FiniteLattice::chain(3));
        let mut e = crisp_lattice_equality(&c);
        e[1] = 2; // E(0,m) = 1 but E(m,0) = 0
        let r =
            check_lattice_vague_structures(&e, &LatticeTNorm::meet(c), DegreeReading::Literal, &b)
                .unwrap();
        assert!(r.verdict.fails());
        assert!(r.has_tag("NOT_A_FUZZY_EQUALITY"));
    }

    #[test]
    fn three_chain_sweep_has_no_counterexamples() {
        let b = SearchBudget::default();
        let c = Arc::new(FiniteLattice::chain(3));
        let r = sweep_lattice_vague_cancellation(&c, DegreeReading::Literal, &b).unwrap();
        assert_eq!(r.universe_size, 54);
        assert!(r.confirmed());
    }

    #[test]
    fn large_lattices_are_refused() {
        let c = LatticeTNorm::meet(Arc::new(FiniteLattice::chain(6)));
        let e = crisp_lattice_equality(c.lattice());
        assert!(check_lattice_vague_structures(
            &e,
            &c,
            DegreeReading::Literal,
            &SearchBudget::default()
        )
        .is_err());
    }
}
