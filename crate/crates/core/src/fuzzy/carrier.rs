use crate::connective::Connective;
use crate::error::{Error, Result};
use crate::report::{Datum, DomainInfo};
use crate::scalar::{Domain, UnitScalar};

/// An element of a carrier: a point of `[0,1]` or an index into a finite
/// element list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Scalar(UnitScalar),
    Index(usize),
}

impl Elem {
    pub fn as_scalar(&self) -> Option<&UnitScalar> {
        match self {
            Elem::Scalar(s) => Some(s),
            Elem::Index(_) => None,
        }
    }
}

/// A finite monoid given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
}

impl FiniteMonoid {
    /// Validates the table, the identity and associativity.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Domain("a monoid needs at least one element".into()));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::Domain("element labels must be distinct".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Domain(format!("operation table must be {n}x{n}")));
        }
        if identity >= n || table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::Domain(
                "table entry or identity outside the element list".into(),
            ));
        }
        let m = FiniteMonoid {
            labels,
            table: table.into_iter().flatten().collect(),
            identity,
        };
        for a in 0..n {
            if m.op(identity, a) != a || m.op(a, identity) != a {
                return Err(Error::Domain(format!(
                    "'{}' is not an identity: fails at '{}'",
                    m.labels[identity], m.labels[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m.op(m.op(a, b), c) != m.op(a, m.op(b, c)) {
                        return Err(Error::Domain(format!(
                            "operation is not associative at ({}, {}, {})",
                            m.labels[a], m.labels[b], m.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds from labels, a table of labels and the identity label.
    pub fn from_labels(labels: Vec<String>, op: Vec<Vec<String>>, identity: &str) -> Result<Self> {
        let index = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::Domain(format!("unknown element '{s}'")))
        };
        let table = op
            .iter()
            .map(|row| row.iter().map(|s| index(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let identity = index(identity)?;
        FiniteMonoid::new(labels, table, identity)
    }

    /// The cyclic group `Z_n` under addition mod `n`, labelled `0..n-1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteMonoid::new(labels, table, 0).expect("Z_n is a monoid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.labels.len() + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The two-sided inverse of `a`, if any.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.op(a, b) == self.identity && self.op(b, a) == self.identity)
    }

    /// Inverse table, or a domain error naming an element without inverse.
    pub fn inverses(&self) -> Result<Vec<usize>> {
        (0..self.len())
            .map(|a| {
                self.inverse(a).ok_or_else(|| {
                    Error::Domain(format!("element '{}' has no inverse", self.labels[a]))
                })
            })
            .collect()
    }

    pub fn is_group(&self) -> bool {
        self.inverses().is_ok()
    }
}

/// The monoid a fuzzy subset lives on: a finite sample of `([0,1], C)` or a
/// finite monoid.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum CarrierMonoid {
    Interval { domain: Domain, op: Connective },
    Finite(FiniteMonoid),
}

impl CarrierMonoid {
    /// `(D, C)` with the identity declared by `C`, which must lie in `D` and
    /// act neutrally on it.
    pub fn interval(domain: Domain, op: Connective) -> Result<Self> {
        let e = op
            .identity()
            .ok_or_else(|| {
                Error::Domain(format!(
                    "'{}' declares no identity, so it is not a monoid",
                    op.name()
                ))
            })?
            .clone();
        if !domain.contains(&e) {
            return Err(Error::Domain(format!(
                "identity {e} of '{}' is not in the domain",
                op.name()
            )));
        }
        for x in domain.points() {
            if op.supports(x) && (op.eval(&e, x) != *x || op.eval(x, &e) != *x) {
                return Err(Error::Domain(format!(
                    "{e} is not neutral for '{}' at {x}",
                    op.name()
                )));
            }
        }
        Ok(CarrierMonoid::Interval { domain, op })
    }

    pub fn finite(m: FiniteMonoid) -> Self {
        CarrierMonoid::Finite(m)
    }

    pub fn elements(&self) -> Vec<Elem> {
        match self {
            CarrierMonoid::Interval { domain, .. } => {
                domain.points().iter().cloned().map(Elem::Scalar).collect()
            }
            CarrierMonoid::Finite(m) => (0..m.len()).map(Elem::Index).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            CarrierMonoid::Interval { domain, .. } => domain.len(),
            CarrierMonoid::Finite(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn op(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        match (self, a, b) {
            (CarrierMonoid::Interval { op, .. }, Elem::Scalar(x), Elem::Scalar(y)) => {
                if op.supports(x) && op.supports(y) {
                    Ok(Elem::Scalar(op.eval(x, y)))
                } else {
                    Err(Error::NotTotal {
                        element: format!("{}({x}, {y})", op.name()),
                    })
                }
            }
            (CarrierMonoid::Finite(m), Elem::Index(i), Elem::Index(j)) => {
                Ok(Elem::Index(m.op(*i, *j)))
            }
            _ => Err(Error::Domain(
                "element does not belong to this carrier".into(),
            )),
        }
    }

    pub fn identity(&self) -> Elem {
        match self {
            CarrierMonoid::Interval { op, .. } => {
                Elem::Scalar(op.identity().expect("validated").clone())
            }
            CarrierMonoid::Finite(m) => Elem::Index(m.identity()),
        }
    }

    pub fn connective(&self) -> Option<&Connective> {
        match self {
            CarrierMonoid::Interval { op, .. } => Some(op),
            CarrierMonoid::Finite(_) => None,
        }
    }

    pub fn domain(&self) -> Option<&Domain> {
        match self {
            CarrierMonoid::Interval { domain, .. } => Some(domain),
            CarrierMonoid::Finite(_) => None,
        }
    }

    pub fn label(&self, e: &Elem) -> String {
        match (self, e) {
            (CarrierMonoid::Finite(m), Elem::Index(i)) => m.label(*i).to_string(),
            (_, Elem::Scalar(s)) => s.to_string(),
            (_, Elem::Index(i)) => format!("#{i}"),
        }
    }

    pub fn datum(&self, e: &Elem) -> Datum {
        match e {
            Elem::Scalar(s) => Datum::Scalar(s.clone()),
            Elem::Index(_) => Datum::Label(self.label(e)),
        }
    }

    pub fn name(&self) -> String {
        match self {
            CarrierMonoid::Interval { op, .. } => format!("([0,1], {})", op.name()),
            CarrierMonoid::Finite(m) => format!("finite monoid of order {}", m.len()),
        }
    }

    pub fn domain_info(&self) -> DomainInfo {
        match self {
            CarrierMonoid::Interval { domain, .. } => DomainInfo::from(domain),
            CarrierMonoid::Finite(m) => DomainInfo::finite("finite", m.len()),
        }
    }

    pub fn resolution(&self) -> Option<u32> {
        self.domain().and_then(Domain::resolution)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connective::{Role, TNormFamily};
    use crate::scalar::q;

    #[test]
    fn cyclic_groups_have_inverses() {
        let z4 = FiniteMonoid::cyclic(4);
        assert_eq!(z4.op(3, 2), 1);
        assert_eq!(z4.inverses().unwrap(), vec![0, 3, 2, 1]);
    }

    #[test]
    fn monoid_validation() {
        let labels: Vec<String> = ["e", "a"].iter().map(|s| s.to_string()).collect();
        let bad = FiniteMonoid::new(labels.clone(), vec![vec![0, 1], vec![0, 0]], 0);
        assert!(bad.is_err());
        let max_monoid = FiniteMonoid::new(labels, vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        assert!(!max_monoid.is_group());
    }

    #[test]
    fn interval_carriers_need_identity_in_domain() {
        let d = Domain::grid(4).unwrap();
        assert!(
            CarrierMonoid::interval(d.clone(), Connective::tnorm(TNormFamily::Minimum)).is_ok()
        );
        let odd = Connective::from_fn("odd", Role::Uninorm, Some(q(1, 3)), None, |x, _| x.clone());
        assert!(CarrierMonoid::interval(d, odd).is_err());
    }
}
