use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use crate::connective::{Connective, Role};
use crate::error::{Error, Result};
use crate::report::{Cmp, Datum, DomainInfo, PropertyReport, SearchBudget, Tri};
use crate::scalar::{Domain, UnitScalar};

use super::engine::{
    equality_report, vague_cancellation_report, vague_commutativity_report, vague_monoid_report,
    vague_op_report, vague_strict_monotone_report, DegreeAlgebra, DegreeReading, VagueTable,
};

/// `[0,1]` degrees combined by a t-norm.
#[derive(Debug, Clone)]
pub struct ScalarDegrees {
    t: Connective,
    cmp: Cmp,
}

impl ScalarDegrees {
    pub fn new(t: Connective) -> Result<Self> {
        if t.role() != Role::TNorm {
            return Err(Error::Domain(format!(
                "degrees must be combined by a t-norm, not '{}'",
                t.name()
            )));
        }
        let cmp = Cmp::for_connective(&t);
        Ok(ScalarDegrees { t, cmp })
    }

    pub fn tnorm(&self) -> &Connective {
        &self.t
    }
}

impl DegreeAlgebra for ScalarDegrees {
    type D = UnitScalar;

    fn combine(&self, a: &UnitScalar, b: &UnitScalar) -> UnitScalar {
        self.t.eval(a, b)
    }

    fn le(&self, a: &UnitScalar, b: &UnitScalar) -> Tri {
        self.cmp.le(a, b)
    }

    fn eq(&self, a: &UnitScalar, b: &UnitScalar) -> Tri {
        self.cmp.eq(a, b)
    }

    fn is_top(&self, a: &UnitScalar) -> bool {
        a.is_one()
    }

    fn is_bottom(&self, a: &UnitScalar) -> bool {
        a.is_zero()
    }

    fn datum(&self, a: &UnitScalar) -> Datum {
        Datum::Scalar(a.clone())
    }

    fn name(&self) -> String {
        self.t.name().to_string()
    }
}

type EqFn = dyn Fn(&UnitScalar, &UnitScalar) -> UnitScalar + Send + Sync;

/// An equality degree on points of `[0,1]`.
#[derive(Clone)]
pub enum ScalarEquality {
    /// 1 on the diagonal, 0 elsewhere.
    Crisp,
    /// `1 - |x - y|`.
    OneMinusAbs,
    /// Explicit values on a point list; partial elsewhere.
    Table {
        points: Vec<UnitScalar>,
        values: Vec<UnitScalar>,
    },
    Custom {
        name: String,
        f: Arc<EqFn>,
    },
}

impl fmt::Debug for ScalarEquality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl ScalarEquality {
    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(&UnitScalar, &UnitScalar) -> UnitScalar + Send + Sync + 'static,
    ) -> Self {
        ScalarEquality::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// A table over `points` (row-major `values`).
    pub fn table(points: Vec<UnitScalar>, values: Vec<UnitScalar>) -> Result<Self> {
        let n = points.len();
        if values.len() != n * n {
            return Err(Error::Domain(format!(
                "equality table needs {} values, got {}",
                n * n,
                values.len()
            )));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]));
        if order.windows(2).any(|w| points[w[0]] == points[w[1]]) {
            return Err(Error::Domain("equality table lists a point twice".into()));
        }
        let sorted: Vec<UnitScalar> = order.iter().map(|&i| points[i].clone()).collect();
        let mut vals = Vec::with_capacity(n * n);
        for &i in &order {
            for &j in &order {
                vals.push(values[i * n + j].clone());
            }
        }
        Ok(ScalarEquality::Table {
            points: sorted,
            values: vals,
        })
    }

    pub fn name(&self) -> String {
        match self {
            ScalarEquality::Crisp => "crisp".into(),
            ScalarEquality::OneMinusAbs => "one-minus-abs".into(),
            ScalarEquality::Table { points, .. } => format!("table[{} points]", points.len()),
            ScalarEquality::Custom { name, .. } => name.clone(),
        }
    }

    pub fn eval(&self, x: &UnitScalar, y: &UnitScalar) -> Result<UnitScalar> {
        Ok(match self {
            ScalarEquality::Crisp => {
                if x == y {
                    UnitScalar::one()
                } else {
                    UnitScalar::zero()
                }
            }
            ScalarEquality::OneMinusAbs => UnitScalar::clamp(
                num_rational::BigRational::from_integer(1.into()) - (x.value() - y.value()).abs(),
            ),
            ScalarEquality::Table { points, values } => {
                let i = points.binary_search(x);
                let j = points.binary_search(y);
                match (i, j) {
                    (Ok(i), Ok(j)) => values[i * points.len() + j].clone(),
                    _ => {
                        return Err(Error::NotTotal {
                            element: format!("E({x}, {y})"),
                        })
                    }
                }
            }
            ScalarEquality::Custom { f, .. } => f(x, y),
        })
    }
}

fn elems_of(d: &Domain) -> Vec<Datum> {
    d.points().iter().map(Datum::from).collect()
}

fn eq_table(e: &ScalarEquality, d: &Domain) -> Result<Vec<UnitScalar>> {
    let pts = d.points();
    let mut out = Vec::with_capacity(pts.len() * pts.len());
    for x in pts {
        for y in pts {
            out.push(e.eval(x, y)?);
        }
    }
    Ok(out)
}

fn order_of(d: &Domain) -> Vec<bool> {
    let n = d.len();
    (0..n * n).map(|ij| ij / n < ij % n).collect()
}

/// Reflexivity, symmetry and `T`-transitivity of `E` over all triples of `D`.
pub fn validate_fuzzy_equality(
    e: &ScalarEquality,
    t: &Connective,
    d: &Domain,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    let alg = ScalarDegrees::new(t.clone())?;
    let subject = format!("{} w.r.t. {}", e.name(), t.name());
    equality_report(
        &alg,
        &subject,
        &elems_of(d),
        &eq_table(e, d)?,
        DomainInfo::from(d),
        b,
    )
}

/// A validated `T`-fuzzy equality on a point set.
#[derive(Debug, Clone)]
pub struct TFuzzyEquality {
    e: ScalarEquality,
    t: Connective,
    domain: Domain,
    separates_points: bool,
}

impl TFuzzyEquality {
    /// Validates `E` against `T` on `D`; a failed axiom is a domain error.
    pub fn new(e: ScalarEquality, t: Connective, d: Domain, b: &SearchBudget) -> Result<Self> {
        let r = validate_fuzzy_equality(&e, &t, &d, b)?;
        if !r.verdict.holds() {
            let failed: Vec<&str> = r
                .checks
                .iter()
                .filter(|c| !c.verdict.holds())
                .map(|c| c.property_id.as_str())
                .collect();
            return Err(Error::Domain(format!(
                "{} is not a {}-fuzzy equality on the domain: {} not satisfied",
                e.name(),
                t.name(),
                failed.join(", ")
            )));
        }
        let separates_points = r.has_tag("SEPARATES_POINTS");
        Ok(TFuzzyEquality {
            e,
            t,
            domain: d,
            separates_points,
        })
    }

    pub fn eval(&self, x: &UnitScalar, y: &UnitScalar) -> Result<UnitScalar> {
        self.e.eval(x, y)
    }

    pub fn equality(&self) -> &ScalarEquality {
        &self.e
    }

    pub fn tnorm(&self) -> &Connective {
        &self.t
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn separates_points(&self) -> bool {
        self.separates_points
    }
}

/// A ternary membership `mu(x,y,z)` ("x o y is z to this degree") on the
/// domain of an equality.
#[derive(Debug, Clone)]
pub struct VagueBinaryOp {
    eq: TFuzzyEquality,
    table: VagueTable<ScalarDegrees>,
}

impl VagueBinaryOp {
    /// From explicit `mu` values, row-major over `D^3`.
    pub fn from_values(
        name: impl Into<String>,
        eq: TFuzzyEquality,
        mu: Vec<UnitScalar>,
    ) -> Result<Self> {
        let d = eq.domain().clone();
        let n = d.len();
        if mu.len() != n * n * n {
            return Err(Error::Domain(format!(
                "membership table needs {} values, got {}",
                n * n * n,
                mu.len()
            )));
        }
        let table = VagueTable {
            alg: ScalarDegrees::new(eq.tnorm().clone())?,
            name: name.into(),
            elems: elems_of(&d),
            eq: eq_table(eq.equality(), &d)?,
            mu,
            lt: Some(order_of(&d)),
            domain: DomainInfo::from(&d),
        };
        Ok(VagueBinaryOp { eq, table })
    }

    /// From a membership function evaluated on `D^3`.
    pub fn from_fn(
        name: impl Into<String>,
        eq: TFuzzyEquality,
        b: &SearchBudget,
        mu: impl Fn(&UnitScalar, &UnitScalar, &UnitScalar) -> Result<UnitScalar>,
    ) -> Result<Self> {
        let pts = eq.domain().points().to_vec();
        b.ensure_tuples("membership table", (pts.len() as u128).pow(3))?;
        let mut vals = Vec::with_capacity(pts.len().pow(3));
        for x in &pts {
            for y in &pts {
                for z in &pts {
                    vals.push(mu(x, y, z)?);
                }
            }
        }
        Self::from_values(name, eq, vals)
    }

    pub fn equality(&self) -> &TFuzzyEquality {
        &self.eq
    }

    pub fn table(&self) -> &VagueTable<ScalarDegrees> {
        &self.table
    }

    pub fn name(&self) -> &str {
        &self.table.name
    }

    /// `mu(x,y,z)` for domain points.
    pub fn degree(&self, x: &UnitScalar, y: &UnitScalar, z: &UnitScalar) -> Option<UnitScalar> {
        let d = self.eq.domain();
        let (i, j, k) = (d.index_of(x)?, d.index_of(y)?, d.index_of(z)?);
        Some(self.table.m(i, j, k).clone())
    }
}

/// The vague operation `T~(x,y,z) = E(T(x,y), z)` induced by a connective.
#[derive(Debug, Clone)]
pub struct VagueTNorm {
    op: Connective,
    base: VagueBinaryOp,
}

impl VagueTNorm {
    pub fn base(&self) -> &VagueBinaryOp {
        &self.base
    }

    pub fn underlying(&self) -> &Connective {
        &self.op
    }

    pub fn degree(&self, x: &UnitScalar, y: &UnitScalar, z: &UnitScalar) -> Option<UnitScalar> {
        self.base.degree(x, y, z)
    }
}

/// Builds `T~(x,y,z) = E(T(x,y), z)` on the equality's domain. `T(x,y)` may
/// leave the domain; closed-form equalities still evaluate there, tables do
/// not (`NotTotal`).
pub fn induce_vague_tnorm(
    eq: &TFuzzyEquality,
    t: &Connective,
    b: &SearchBudget,
) -> Result<VagueTNorm> {
    let name = format!(
        "E={}({}) over {}",
        eq.equality().name(),
        eq.tnorm().name(),
        t.name()
    );
    let base = VagueBinaryOp::from_fn(name, eq.clone(), b, |x, y, z| {
        if !(t.supports(x) && t.supports(y)) {
            return Err(Error::NotTotal {
                element: format!("{}({x}, {y})", t.name()),
            });
        }
        eq.eval(&t.eval(x, y), z)
    })?;
    Ok(VagueTNorm {
        op: t.clone(),
        base,
    })
}

pub fn check_vague_op(v: &VagueBinaryOp, b: &SearchBudget) -> Result<PropertyReport> {
    vague_op_report(v.table(), b)
}

pub fn check_vague_monoid(v: &VagueBinaryOp, b: &SearchBudget) -> Result<PropertyReport> {
    vague_monoid_report(v.table(), b)
}

pub fn check_vague_commutativity(v: &VagueBinaryOp, b: &SearchBudget) -> Result<PropertyReport> {
    vague_commutativity_report(v.table(), b)
}

pub fn check_vague_strict_monotone(
    v: &VagueBinaryOp,
    reading: DegreeReading,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    vague_strict_monotone_report(v.table(), reading, b)
}

pub fn check_vague_cancellation(
    v: &VagueBinaryOp,
    reading: DegreeReading,
    b: &SearchBudget,
) -> Result<PropertyReport> {
    vague_cancellation_report(v.table(), reading, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connective::TNormFamily;
    use crate::report::{Verdict, Witness};
    use crate::scalar::q;

    fn tl() -> Connective {
        Connective::tnorm(TNormFamily::Lukasiewicz)
    }

    fn b() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn equality_examples() {
        let d = Domain::grid(10).unwrap();
        assert!(
            validate_fuzzy_equality(&ScalarEquality::OneMinusAbs, &tl(), &d, &b())
                .unwrap()
                .verdict
                .holds()
        );
        for f in TNormFamily::ALL {
            let r =
                validate_fuzzy_equality(&ScalarEquality::Crisp, &Connective::tnorm(f), &d, &b())
                    .unwrap();
            assert!(r.verdict.holds() && r.has_tag("SEPARATES_POINTS"));
        }
        let tm = Connective::tnorm(TNormFamily::Minimum);
        let r = validate_fuzzy_equality(&ScalarEquality::OneMinusAbs, &tm, &d, &b()).unwrap();
        assert!(r.verdict.fails());
        let w = Witness::scalars(
            &[&UnitScalar::zero(), &q(1, 2), &UnitScalar::one()],
            &[&q(1, 2), &UnitScalar::zero()],
        );
        assert!(r.check("t-transitivity").unwrap().witnesses.contains(&w));
    }

    #[test]
    fn induced_degrees() {
        let d = Domain::grid(10).unwrap();
        let eq = TFuzzyEquality::new(ScalarEquality::OneMinusAbs, tl(), d.clone(), &b()).unwrap();
        let v = induce_vague_tnorm(&eq, &tl(), &b()).unwrap();
        assert_eq!(v.degree(&q(7, 10), &q(1, 2), &q(3, 10)).unwrap(), q(9, 10));
        for x in d.points() {
            assert!(v.degree(&UnitScalar::one(), x, x).unwrap().is_one());
            for y in d.points() {
                assert!(v.degree(x, y, &tl().eval(x, y)).unwrap().is_one());
            }
        }
    }

    #[test]
    fn vague_monoid_examples() {
        let chain = Domain::grid(4).unwrap();
        let crisp = TFuzzyEquality::new(ScalarEquality::Crisp, tl(), chain.clone(), &b()).unwrap();
        let v = induce_vague_tnorm(&crisp, &tl(), &b()).unwrap();
        let r = check_vague_monoid(v.base(), &b()).unwrap();
        assert!(r.verdict.holds());
        assert!(r.has_tag("IDENTITY=1"));
        let soft =
            TFuzzyEquality::new(ScalarEquality::OneMinusAbs, tl(), chain.clone(), &b()).unwrap();
        let v = induce_vague_tnorm(&soft, &tl(), &b()).unwrap();
        assert!(check_vague_monoid(v.base(), &b()).unwrap().verdict.holds());
        assert!(check_vague_commutativity(v.base(), &b())
            .unwrap()
            .verdict
            .holds());

        // mu(x,y,0) = mu(x,y,1) = 1 breaks functionality under crisp E.
        let bad = VagueBinaryOp::from_fn("two-valued", crisp, &b(), |_, _, z| {
            Ok(if z.is_zero() || z.is_one() {
                UnitScalar::one()
            } else {
                UnitScalar::zero()
            })
        })
        .unwrap();
        let r = check_vague_monoid(&bad, &b()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(r.has_tag("NOT_VAGUE_OP"));
    }

    #[test]
    fn strict_monotone_and_cancellation_with_crisp_e() {
        let d = Domain::grid(4).unwrap();
        let crisp = TFuzzyEquality::new(ScalarEquality::Crisp, tl(), d, &b()).unwrap();
        let tm =
            induce_vague_tnorm(&crisp, &Connective::tnorm(TNormFamily::Minimum), &b()).unwrap();
        for reading in [DegreeReading::Literal, DegreeReading::Crisp] {
            assert!(check_vague_strict_monotone(tm.base(), reading, &b())
                .unwrap()
                .verdict
                .fails());
            assert!(check_vague_cancellation(tm.base(), reading, &b())
                .unwrap()
                .verdict
                .fails());
        }
        let r = check_vague_strict_monotone(tm.base(), DegreeReading::Crisp, &b()).unwrap();
        assert!(r.has_tag("READING=CRISP"));
    }

    #[test]
    fn large_loops_are_refused() {
        let d = Domain::grid(12).unwrap();
        let crisp = TFuzzyEquality::new(ScalarEquality::Crisp, tl(), d, &b()).unwrap();
        let v = induce_vague_tnorm(&crisp, &tl(), &b()).unwrap();
        assert!(matches!(
            check_vague_monoid(v.base(), &b()),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
