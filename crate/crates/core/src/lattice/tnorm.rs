use std::sync::Arc;

use crate::connective::{Connective, Role};
use crate::error::{Error, Result};
use crate::report::{BudgetInfo, Datum, DomainInfo, PropertyReport, SearchBudget, Tally, Witness};
use crate::scalar::{Domain, UnitScalar};

use super::order::{FiniteLattice, LatticeInterval};

fn lattice_info(l: &FiniteLattice) -> DomainInfo {
    DomainInfo::finite(if l.is_chain() { "chain" } else { "lattice" }, l.len())
}

fn label(l: &FiniteLattice, i: usize) -> Datum {
    Datum::Label(l.label(i).to_string())
}

/// The four t-norm conditions of a table on a lattice: monotonicity,
/// associativity, commutativity and `T(x,1) = x`.
pub fn check_lattice_tnorm(
    l: &FiniteLattice,
    table: &[usize],
    name: &str,
    b: &SearchBudget,
) -> PropertyReport {
    let n = l.len();
    let info = lattice_info(l);
    let budget = BudgetInfo {
        max_witnesses: b.max_witnesses,
        ..BudgetInfo::default()
    };
    let mut r =
        PropertyReport::new("lattice-tnorm", name, info.clone()).with_budget(budget.clone());
    if table.len() != n * n || table.iter().any(|&v| v >= n) {
        let mut t = Tally::new(b.max_witnesses);
        t.fail(Witness::new(
            vec![Datum::Label(format!(
                "table must be {n}x{n} over the lattice"
            ))],
            vec![],
        ));
        r.push_check(t.into_report("totality", name, info, budget));
        return r;
    }
    let t = |x: usize, y: usize| table[x * n + y];
    let w = |xs: &[usize], vs: &[usize]| {
        Witness::new(
            xs.iter().map(|&i| label(l, i)).collect(),
            vs.iter().map(|&i| label(l, i)).collect(),
        )
    };

    let mut mono = Tally::new(b.max_witnesses);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if y != z && l.leq(y, z) {
                    if l.leq(t(x, y), t(x, z)) {
                        mono.pass();
                    } else {
                        mono.fail(w(&[x, y, z], &[t(x, y), t(x, z)]));
                    }
                }
            }
        }
    }
    r.push_check(mono.into_report("monotonicity", name, info.clone(), budget.clone()));

    let mut assoc = Tally::new(b.max_witnesses);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (left, right) = (t(t(x, y), z), t(x, t(y, z)));
                if left == right {
                    assoc.pass();
                } else {
                    assoc.fail(w(&[x, y, z], &[left, right]));
                }
            }
        }
    }
    r.push_check(assoc.into_report("associativity", name, info.clone(), budget.clone()));

    let mut comm = Tally::new(b.max_witnesses);
    for x in 0..n {
        for y in x + 1..n {
            if t(x, y) == t(y, x) {
                comm.pass();
            } else {
                comm.fail(w(&[x, y], &[t(x, y), t(y, x)]));
            }
        }
    }
    r.push_check(comm.into_report("commutativity", name, info.clone(), budget.clone()));

    let mut bound = Tally::new(b.max_witnesses);
    for x in 0..n {
        if t(x, l.top()) == x {
            bound.pass();
        } else {
            bound.fail(w(&[x, l.top()], &[t(x, l.top())]));
        }
    }
    r.push_check(bound.into_report("boundary", name, info, budget));
    r
}

/// A validated t-norm table on a finite lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTNorm {
    lattice: Arc<FiniteLattice>,
    table: Vec<usize>,
    name: String,
}

impl LatticeTNorm {
    pub fn new(
        lattice: Arc<FiniteLattice>,
        table: Vec<usize>,
        name: impl Into<String>,
    ) -> Result<Self> {
        let name = name.into();
        let r = check_lattice_tnorm(&lattice, &table, &name, &SearchBudget::default());
        if !r.verdict.holds() {
            let failed: Vec<&str> = r
                .checks
                .iter()
                .filter(|c| !c.verdict.holds())
                .map(|c| c.property_id.as_str())
                .collect();
            return Err(Error::Domain(format!(
                "'{name}' is not a lattice t-norm: {} not satisfied",
                failed.join(", ")
            )));
        }
        Ok(LatticeTNorm {
            lattice,
            table,
            name,
        })
    }

    /// From rows of element labels.
    pub fn from_labels(
        lattice: Arc<FiniteLattice>,
        rows: &[Vec<String>],
        name: impl Into<String>,
    ) -> Result<Self> {
        let n = lattice.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain(format!("t-norm table must be {n}x{n}")));
        }
        let table = rows
            .iter()
            .flatten()
            .map(|s| {
                lattice
                    .index_of(s)
                    .ok_or_else(|| Error::Domain(format!("unknown lattice element '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, table, name)
    }

    /// The meet, which is a t-norm on every bounded lattice.
    pub fn meet(lattice: Arc<FiniteLattice>) -> Self {
        let n = lattice.len();
        let table = (0..n * n).map(|ij| lattice.meet(ij / n, ij % n)).collect();
        LatticeTNorm {
            lattice,
            table,
            name: "meet".into(),
        }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: usize, y: usize) -> usize {
        self.table[x * self.lattice.len() + y]
    }

    /// Powers `x, T(x,x), T(T(x,x),x), ...` up to the first repeat; on a
    /// finite lattice the sequence is non-increasing and so stationary.
    pub fn powers(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        loop {
            let last = *out.last().expect("non-empty");
            let next = self.eval(last, x);
            if next == last || out.len() > self.lattice.len() {
                return out;
            }
            out.push(next);
        }
    }

    /// On a chain, the same table as a t-norm connective on the points of
    /// `d`, matched in increasing order.
    pub fn to_chain_connective(&self, d: &Domain) -> Result<Connective> {
        let l = &self.lattice;
        if !l.is_chain() || d.len() != l.len() {
            return Err(Error::Domain(format!(
                "'{}' needs a chain with {} elements to map onto {} points",
                self.name,
                l.len(),
                d.len()
            )));
        }
        let rank: Vec<usize> = (0..l.len())
            .map(|i| (0..l.len()).filter(|&j| l.lt(j, i)).count())
            .collect();
        let mut by_rank = vec![0; l.len()];
        for (i, &r) in rank.iter().enumerate() {
            by_rank[r] = i;
        }
        let pts = d.points();
        let values = (0..pts.len() * pts.len())
            .map(|ij| {
                pts[rank[self.eval(by_rank[ij / pts.len()], by_rank[ij % pts.len()])]].clone()
            })
            .collect();
        Connective::from_table(
            self.name.clone(),
            Role::TNorm,
            Some(UnitScalar::one()),
            pts.to_vec(),
            values,
        )
    }

    /// The restriction to `[a, b]`, after checking that the interval is
    /// closed under `T`.
    pub fn restrict(&self, iv: &LatticeInterval) -> Result<LatticeTNorm> {
        let m = iv.members.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in &iv.members {
            for &y in &iv.members {
                let v = self.eval(x, y);
                let local = iv.local(v).ok_or_else(|| {
                    Error::Domain(format!(
                        "interval is not closed: T({}, {}) = {}",
                        self.lattice.label(x),
                        self.lattice.label(y),
                        self.lattice.label(v)
                    ))
                })?;
                table.push(local);
            }
        }
        LatticeTNorm::new(
            Arc::new(iv.lattice().clone()),
            table,
            format!("{} restricted", self.name),
        )
    }
}

/// All t-norms on `l`, in a fixed order, up to `cap`. Lattices with more
/// than six elements, or with more candidate tables than `max_tuples`, are
/// refused.
pub fn enumerate_lattice_tnorms(
    l: &Arc<FiniteLattice>,
    cap: usize,
    b: &SearchBudget,
) -> Result<Vec<LatticeTNorm>> {
    let n = l.len();
    let interior: Vec<usize> = (0..n)
        .filter(|&x| x != l.bottom() && x != l.top())
        .collect();
    let mut pairs = Vec::new();
    for (i, &x) in interior.iter().enumerate() {
        for &y in &interior[i..] {
            pairs.push((x, y));
        }
    }
    // T(x,y) <= meet(x,y), so each cell ranges over the down-set of the meet.
    let options: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(x, y)| (0..n).filter(|&v| l.leq(v, l.meet(x, y))).collect())
        .collect();
    let estimate = options
        .iter()
        .fold(1u128, |acc, o| acc.saturating_mul(o.len() as u128));
    if n > 6 || estimate > b.max_tuples as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("t-norm enumeration on a {n}-element lattice"),
            estimate,
            budget: if n > 6 { 6 } else { b.max_tuples as u128 },
        });
    }
    let mut table = vec![usize::MAX; n * n];
    for x in 0..n {
        for (a, c) in [(x, l.bottom()), (l.bottom(), x)] {
            table[a * n + c] = l.bottom();
        }
    }
    for x in 0..n {
        table[x * n + l.top()] = x;
        table[l.top() * n + x] = x;
    }
    let mut out = Vec::new();
    search(l, &pairs, &options, 0, &mut table, cap, &mut out);
    Ok(out)
}

fn row_monotone(l: &FiniteLattice, table: &[usize], x: usize) -> bool {
    let n = l.len();
    for y in 0..n {
        let a = table[x * n + y];
        if a == usize::MAX {
            continue;
        }
        for z in 0..n {
            let c = table[x * n + z];
            if c != usize::MAX && l.leq(y, z) && !l.leq(a, c) {
                return false;
            }
        }
    }
    true
}

fn search(
    l: &Arc<FiniteLattice>,
    pairs: &[(usize, usize)],
    options: &[Vec<usize>],
    k: usize,
    table: &mut Vec<usize>,
    cap: usize,
    out: &mut Vec<LatticeTNorm>,
) {
    if out.len() >= cap {
        return;
    }
    let n = l.len();
    if k == pairs.len() {
        let t = |x: usize, y: usize| table[x * n + y];
        let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t(t(x, y), z) == t(x, t(y, z)))));
        if assoc {
            out.push(LatticeTNorm {
                lattice: l.clone(),
                table: table.clone(),
                name: format!("t{}", out.len() + 1),
            });
        }
        return;
    }
    let (x, y) = pairs[k];
    for &v in &options[k] {
        table[x * n + y] = v;
        table[y * n + x] = v;
        if row_monotone(l, table, x) && row_monotone(l, table, y) {
            search(l, pairs, options, k + 1, table, cap, out);
        }
    }
    table[x * n + y] = usize::MAX;
    table[y * n + x] = usize::MAX;
}
