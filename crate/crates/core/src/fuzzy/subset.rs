use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::UnitScalar;

use super::carrier::{CarrierMonoid, Elem};

/// A key of a table or indicator: the text as written plus its value as a
/// point of `[0,1]` when it parses as one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Key {
    pub text: String,
    pub scalar: Option<UnitScalar>,
}

impl Key {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        let scalar = text.parse().ok();
        Key { text, scalar }
    }

    fn matches(&self, carrier: &CarrierMonoid, e: &Elem) -> bool {
        match e {
            Elem::Scalar(s) => self.scalar.as_ref() == Some(s),
            Elem::Index(_) => self.text == carrier.label(e),
        }
    }
}

impl From<&UnitScalar> for Key {
    fn from(s: &UnitScalar) -> Self {
        Key {
            text: s.to_string(),
            scalar: Some(s.clone()),
        }
    }
}

type MembershipFn = dyn Fn(&UnitScalar) -> UnitScalar + Send + Sync;

/// A membership function `mu: carrier -> [0,1]`.
#[derive(Clone)]
pub enum FuzzySubset {
    /// `mu(x) = x`.
    Identity,
    /// `mu = 1`.
    One,
    /// `mu = 0`.
    Zero,
    /// `mu(x) = 1 - x`.
    Complement,
    /// Characteristic function of the listed elements.
    Indicator(Vec<Key>),
    /// `mu(x) = x` below `e`, `1` from `e` on.
    Step(UnitScalar),
    Table(Vec<(Key, UnitScalar)>),
    /// Pointwise minimum; the empty meet is `mu = 1`.
    Meet(Vec<FuzzySubset>),
    Custom {
        name: String,
        f: Arc<MembershipFn>,
    },
}

impl fmt::Debug for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FuzzySubset {
    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(&UnitScalar) -> UnitScalar + Send + Sync + 'static,
    ) -> Self {
        FuzzySubset::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn indicator<S: Into<String>>(members: impl IntoIterator<Item = S>) -> Self {
        FuzzySubset::Indicator(members.into_iter().map(|m| Key::new(m)).collect())
    }

    /// A table over points of `[0,1]`.
    pub fn scalar_table(entries: impl IntoIterator<Item = (UnitScalar, UnitScalar)>) -> Self {
        FuzzySubset::Table(
            entries
                .into_iter()
                .map(|(k, v)| (Key::from(&k), v))
                .collect(),
        )
    }

    /// A table over element labels.
    pub fn label_table<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, UnitScalar)>,
    ) -> Self {
        FuzzySubset::Table(entries.into_iter().map(|(k, v)| (Key::new(k), v)).collect())
    }

    pub fn name(&self) -> String {
        match self {
            FuzzySubset::Identity => "builtin:identity".into(),
            FuzzySubset::One => "builtin:one".into(),
            FuzzySubset::Zero => "builtin:zero".into(),
            FuzzySubset::Complement => "builtin:complement".into(),
            FuzzySubset::Indicator(keys) => {
                let ks: Vec<&str> = keys.iter().map(|k| k.text.as_str()).collect();
                format!("indicator{{{}}}", ks.join(","))
            }
            FuzzySubset::Step(e) => format!("step({e})"),
            FuzzySubset::Table(entries) => {
                let es: Vec<String> = entries
                    .iter()
                    .map(|(k, v)| format!("{}:{v}", k.text))
                    .collect();
                format!("table[{}]", es.join(","))
            }
            FuzzySubset::Meet(parts) => {
                let ps: Vec<String> = parts.iter().map(FuzzySubset::name).collect();
                format!("meet({})", ps.join(","))
            }
            FuzzySubset::Custom { name, .. } => name.clone(),
        }
    }

    fn scalar_only(&self, carrier: &CarrierMonoid, e: &Elem) -> Result<UnitScalar> {
        e.as_scalar().cloned().ok_or_else(|| Error::NotTotal {
            element: format!(
                "{} (closed form '{}' needs a point of [0,1])",
                carrier.label(e),
                self.name()
            ),
        })
    }

    /// `mu(e)`; fails with `NotTotal` where the subset has no value.
    pub fn value(&self, carrier: &CarrierMonoid, e: &Elem) -> Result<UnitScalar> {
        Ok(match self {
            FuzzySubset::Identity => self.scalar_only(carrier, e)?,
            FuzzySubset::One => UnitScalar::one(),
            FuzzySubset::Zero => UnitScalar::zero(),
            FuzzySubset::Complement => self.scalar_only(carrier, e)?.complement(),
            FuzzySubset::Indicator(keys) => {
                if keys.iter().any(|k| k.matches(carrier, e)) {
                    UnitScalar::one()
                } else {
                    UnitScalar::zero()
                }
            }
            FuzzySubset::Step(cut) => {
                let x = self.scalar_only(carrier, e)?;
                if &x < cut {
                    x
                } else {
                    UnitScalar::one()
                }
            }
            FuzzySubset::Table(entries) => entries
                .iter()
                .find(|(k, _)| k.matches(carrier, e))
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::NotTotal {
                    element: carrier.label(e),
                })?,
            FuzzySubset::Meet(parts) => {
                let mut acc = UnitScalar::one();
                for p in parts {
                    acc = acc.min_of(&p.value(carrier, e)?);
                }
                acc
            }
            FuzzySubset::Custom { f, .. } => f(&self.scalar_only(carrier, e)?),
        })
    }

    /// Values on every carrier element, in carrier order.
    pub fn values(&self, carrier: &CarrierMonoid) -> Result<Vec<UnitScalar>> {
        carrier
            .elements()
            .iter()
            .map(|e| self.value(carrier, e))
            .collect()
    }
}

/// Pointwise infimum of a family; the empty family gives `mu = 1`.
pub fn intersect_fuzzy_subsets(parts: Vec<FuzzySubset>) -> FuzzySubset {
    FuzzySubset::Meet(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connective::{Connective, TNormFamily};
    use crate::fuzzy::carrier::FiniteMonoid;
    use crate::scalar::{q, Domain};

    fn grid_carrier() -> CarrierMonoid {
        CarrierMonoid::interval(
            Domain::grid(10).unwrap(),
            Connective::tnorm(TNormFamily::Minimum),
        )
        .unwrap()
    }

    #[test]
    fn builtin_forms() {
        let c = grid_carrier();
        let x = Elem::Scalar(q(3, 10));
        assert_eq!(FuzzySubset::Identity.value(&c, &x).unwrap(), q(3, 10));
        assert_eq!(FuzzySubset::Complement.value(&c, &x).unwrap(), q(7, 10));
        assert_eq!(FuzzySubset::Step(q(1, 2)).value(&c, &x).unwrap(), q(3, 10));
        assert_eq!(
            FuzzySubset::Step(q(1, 2))
                .value(&c, &Elem::Scalar(q(1, 2)))
                .unwrap(),
            UnitScalar::one()
        );
    }

    #[test]
    fn intersections() {
        let c = grid_carrier();
        let m = intersect_fuzzy_subsets(vec![FuzzySubset::One, FuzzySubset::Identity]);
        let n = intersect_fuzzy_subsets(vec![FuzzySubset::Identity, FuzzySubset::Complement]);
        for e in c.elements() {
            let x = e.as_scalar().unwrap().clone();
            assert_eq!(m.value(&c, &e).unwrap(), x);
            assert_eq!(n.value(&c, &e).unwrap(), x.min_of(&x.complement()));
        }
        assert_eq!(
            intersect_fuzzy_subsets(vec![])
                .value(&c, &Elem::Scalar(q(1, 5)))
                .unwrap(),
            UnitScalar::one()
        );
    }

    #[test]
    fn tables_must_be_total() {
        let c = CarrierMonoid::finite(FiniteMonoid::cyclic(4));
        let t = FuzzySubset::label_table([("0", UnitScalar::one()), ("2", q(1, 2))]);
        assert_eq!(t.value(&c, &Elem::Index(2)).unwrap(), q(1, 2));
        assert!(matches!(
            t.value(&c, &Elem::Index(1)),
            Err(Error::NotTotal { .. })
        ));
        assert!(FuzzySubset::Identity.value(&c, &Elem::Index(1)).is_err());
        let ind = FuzzySubset::indicator(["0", "2"]);
        assert_eq!(
            ind.values(&c).unwrap(),
            vec![
                UnitScalar::one(),
                UnitScalar::zero(),
                UnitScalar::one(),
                UnitScalar::zero()
            ]
        );
    }
}
