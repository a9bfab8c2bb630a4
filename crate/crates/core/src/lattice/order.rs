use std::fmt;

use crate::error::{Error, Result};

/// A finite bounded lattice with materialized order, meet and join tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteLattice{:?}", self.labels)
    }
}

impl FiniteLattice {
    /// Builds from a cover relation `(lower, upper)`. Fails on unknown or
    /// duplicate labels, cycles, a missing bottom or top, and on pairs
    /// without a unique meet or join.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let n = labels.len();
        if n == 0 {
            return Err(Error::Domain("a lattice needs at least one element".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Domain(format!("element '{l}' is listed twice")));
            }
        }
        let index = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::Domain(format!("cover mentions unknown element '{s}'")))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let (a, b) = (index(lo.as_ref())?, index(hi.as_ref())?);
            if a == b {
                return Err(Error::Domain(format!(
                    "'{}' cannot cover itself",
                    labels[a]
                )));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Domain(format!(
                        "cover relation has a cycle through '{}' and '{}'",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Self::from_order(labels, leq)
    }

    /// Builds from a full partial order (row-major `leq[i*n+j]` iff `i <= j`).
    pub(crate) fn from_order(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        let le = |i: usize, j: usize| leq[i * n + j];
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or(Error::Unbounded("bottom"))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or(Error::Unbounded("top"))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| le(z, i) && le(z, j)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&z| le(z, g)));
                let upper: Vec<usize> = (0..n).filter(|&z| le(i, z) && le(j, z)).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&g| upper.iter().all(|&z| le(g, z)));
                let not_lattice = |bound: &'static str| Error::NotALattice {
                    left: labels[i].clone(),
                    right: labels[j].clone(),
                    bound,
                };
                meet[i * n + j] = glb.ok_or_else(|| not_lattice("meet"))?;
                join[i * n + j] = lub.ok_or_else(|| not_lattice("join"))?;
            }
        }
        Ok(FiniteLattice {
            labels,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The chain `0 < a1 < ... < 1` with `n` elements (`0 < m < 1` for 3).
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain needs at least one element");
        let labels: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == n - 1 => "1".to_string(),
                _ if n == 3 => "m".to_string(),
                i => format!("a{i}"),
            })
            .collect();
        let covers: Vec<(String, String)> = labels
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::from_covers(&labels, &covers).expect("chains are lattices")
    }

    /// `{0, a, b, 1}` with `a` and `b` incomparable.
    pub fn diamond() -> Self {
        Self::from_covers(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .expect("the diamond is a lattice")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
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

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.comparable(i, j)))
    }

    pub fn name(&self) -> String {
        format!("lattice{{{}}}", self.labels.join(","))
    }

    /// `[a, b]` as a lattice in its own right.
    pub fn interval(&self, a: usize, b: usize) -> Result<LatticeInterval> {
        if !self.leq(a, b) {
            return Err(Error::Domain(format!(
                "interval needs {} <= {}",
                self.label(a),
                self.label(b)
            )));
        }
        let members: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(a, x) && self.leq(x, b))
            .collect();
        let m = members.len();
        let labels = members.iter().map(|&i| self.labels[i].clone()).collect();
        let leq = (0..m * m)
            .map(|ij| self.leq(members[ij / m], members[ij % m]))
            .collect();
        let lattice = FiniteLattice::from_order(labels, leq)?;
        Ok(LatticeInterval {
            a,
            b,
            members,
            lattice,
        })
    }
}

/// `[a, b] = {x | a <= x <= b}` of a parent lattice.
#[derive(Debug, Clone)]
pub struct LatticeInterval {
    pub a: usize,
    pub b: usize,
    /// Parent indices, in parent order; position `i` is element `i` of
    /// [`LatticeInterval::lattice`].
    pub members: Vec<usize>,
    lattice: FiniteLattice,
}

impl LatticeInterval {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    /// Position of a parent element inside the interval.
    pub fn local(&self, parent: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == parent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_meets_and_joins() {
        let d = FiniteLattice::diamond();
        let (a, b) = (d.index_of("a").unwrap(), d.index_of("b").unwrap());
        assert_eq!(d.label(d.meet(a, b)), "0");
        assert_eq!(d.label(d.join(a, b)), "1");
        assert!(!d.comparable(a, b));
        assert!(!d.is_chain());
    }

    #[test]
    fn chains() {
        let c = FiniteLattice::chain(5);
        assert!(c.is_chain());
        assert_eq!(c.meet(1, 3), 1);
        assert_eq!(c.join(1, 3), 3);
        assert_eq!(FiniteLattice::chain(3).labels(), ["0", "m", "1"]);
    }

    #[test]
    fn construction_errors() {
        let e =
            FiniteLattice::from_covers(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap_err();
        assert!(matches!(e, Error::Unbounded("top")));
        let e = FiniteLattice::from_covers(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
        assert!(e.to_string().contains("cycle"));
        // two incomparable upper bounds of a, b below 1: no least one
        let bowtie = FiniteLattice::from_covers(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("b", "c"),
                ("a", "d"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap_err();
        assert!(matches!(bowtie, Error::NotALattice { .. }));
    }

    #[test]
    fn absorption_and_intervals() {
        for l in [FiniteLattice::chain(4), FiniteLattice::diamond()] {
            for x in 0..l.len() {
                assert_eq!(l.meet(x, x), x);
                for y in 0..l.len() {
                    assert_eq!(l.meet(x, l.join(x, y)), x);
                    assert_eq!(l.join(x, l.meet(x, y)), x);
                }
            }
        }
        let c = FiniteLattice::chain(4);
        let iv = c.interval(1, 3).unwrap();
        assert_eq!(iv.lattice().len(), 3);
        assert_eq!(iv.lattice().label(iv.lattice().bottom()), "a1");
        assert!(c.interval(3, 1).is_err());
    }
}
