use crate::connective::{Connective, TNormFamily};
use crate::error::{Error, Result};
use crate::fuzzy::FiniteMonoid;
use crate::report::{Datum, DomainInfo, PropertyReport, SearchBudget};
use crate::scalar::UnitScalar;

use super::engine::{equality_report, group_cancellation_report, VagueTable};
use super::scalar::ScalarDegrees;

/// A vague group on a finite labelled carrier, with degrees combined by the
/// minimum.
#[derive(Debug, Clone)]
pub struct VagueGroup {
    table: VagueTable<ScalarDegrees>,
    identity: usize,
    inverses: Vec<usize>,
}

impl VagueGroup {
    /// Validates the equality, an identity of degree 1 and an inverse of
    /// degree 1 for every element. `eq` is row-major `n x n`, `mu` is
    /// row-major `n x n x n`.
    pub fn new(
        labels: Vec<String>,
        eq: Vec<UnitScalar>,
        mu: Vec<UnitScalar>,
        identity: &str,
        b: &SearchBudget,
    ) -> Result<Self> {
        let n = labels.len();
        if eq.len() != n * n || mu.len() != n * n * n {
            return Err(Error::Domain(format!(
                "vague group on {n} elements needs {} equality and {} membership values",
                n * n,
                n * n * n
            )));
        }
        let e = labels
            .iter()
            .position(|l| l == identity)
            .ok_or_else(|| Error::Domain(format!("unknown identity '{identity}'")))?;
        let alg = ScalarDegrees::new(Connective::tnorm(TNormFamily::Minimum))?;
        let elems: Vec<Datum> = labels.iter().cloned().map(Datum::Label).collect();
        let domain = DomainInfo::finite("finite", n);
        let er = equality_report(&alg, "vague group equality", &elems, &eq, domain.clone(), b)?;
        if !er.verdict.holds() {
            return Err(Error::Domain(
                "the equality of a vague group must be a fuzzy equality".into(),
            ));
        }
        let table = VagueTable {
            alg,
            name: format!("vague group of order {n}"),
            elems,
            eq,
            mu,
            lt: None,
            domain,
        };
        for (a, label) in labels.iter().enumerate() {
            if !(table.m(e, a, a).is_one() && table.m(a, e, a).is_one()) {
                return Err(Error::Domain(format!(
                    "'{identity}' is not an identity of degree 1 at '{label}'"
                )));
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&i| table.m(i, a, e).is_one() && table.m(a, i, e).is_one())
                    .ok_or_else(|| {
                        Error::Domain(format!(
                            "element '{}' has no inverse of degree 1",
                            labels[a]
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VagueGroup {
            table,
            identity: e,
            inverses,
        })
    }

    /// The crisp vague structure of a finite group: `mu(a,b,c) = 1` iff
    /// `ab = c`, crisp equality.
    pub fn crisp(g: &FiniteMonoid, b: &SearchBudget) -> Result<Self> {
        g.inverses()?;
        let n = g.len();
        let one = UnitScalar::one;
        let zero = UnitScalar::zero;
        let eq = (0..n * n)
            .map(|ij| if ij / n == ij % n { one() } else { zero() })
            .collect();
        let mut mu = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for c in 0..n {
                for d in 0..n {
                    mu.push(if g.op(a, c) == d { one() } else { zero() });
                }
            }
        }
        let identity = g.label(g.identity()).to_string();
        Self::new(g.labels().to_vec(), eq, mu, &identity, b)
    }

    pub fn identity(&self) -> &Datum {
        &self.table.elems[self.identity]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &VagueTable<ScalarDegrees> {
        &self.table
    }
}

/// `mu(a,b,u) ^ mu(a,c,u) <= E(b,c)` and its right-hand form.
pub fn check_vague_group_cancellation(g: &VagueGroup, b: &SearchBudget) -> Result<PropertyReport> {
    group_cancellation_report(g.table(), b)
}
