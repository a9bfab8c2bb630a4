//! Exact scalars on the unit interval and the finite point sets that stand in
//! for `[0,1]` during verification.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in `[0,1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitScalar(BigRational);

impl UnitScalar {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() || value > BigRational::one() {
            return Err(Error::OutOfRange(value.to_string()));
        }
        Ok(UnitScalar(value))
    }

    /// Callers guarantee the value is already in range.
    pub(crate) fn new_unchecked(value: BigRational) -> Self {
        debug_assert!(!value.is_negative() && value <= BigRational::one());
        UnitScalar(value)
    }

    /// `p/q`; fails unless `0 <= p/q <= 1`.
    pub fn ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::OutOfRange(format!("{p}/0")));
        }
        Self::new(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        UnitScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        UnitScalar(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_interior(&self) -> bool {
        !self.is_zero() && !self.is_one()
    }

    /// `1 - x`.
    pub fn complement(&self) -> Self {
        UnitScalar(BigRational::one() - &self.0)
    }

    pub fn min_of(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max_of(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Clamps an arbitrary rational into `[0,1]`.
    pub fn clamp(value: BigRational) -> Self {
        if value.is_negative() {
            Self::zero()
        } else if value > BigRational::one() {
            Self::one()
        } else {
            UnitScalar(value)
        }
    }

    /// Exact binary value of a float, clamped into `[0,1]`. NaN maps to 0.
    pub fn from_f64(x: f64) -> Self {
        match BigRational::from_float(x) {
            Some(r) => Self::clamp(r),
            None => Self::zero(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering: exact whenever the expansion terminates, otherwise
    /// twelve digits followed by an ellipsis.
    pub fn to_decimal_string(&self) -> String {
        let numer = self.0.numer().clone();
        let denom = self.0.denom().clone();
        let (int_part, mut rem) = numer.div_rem(&denom);
        if rem.is_zero() {
            return int_part.to_string();
        }
        let mut digits = String::new();
        let ten = BigInt::from(10);
        for _ in 0..12 {
            rem *= &ten;
            let (d, r) = rem.div_rem(&denom);
            digits.push_str(&d.to_string());
            rem = r;
            if rem.is_zero() {
                return format!("{int_part}.{digits}");
            }
        }
        format!("{int_part}.{digits}…")
    }
}

impl fmt::Display for UnitScalar {
    /// `p/q` in lowest terms; integers print without a denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses an unsigned rational: `p/q`, an integer, or a finite decimal.
pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if int.is_negative() || s.starts_with('-') {
            return None;
        }
        let frac_num: BigInt = frac.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(int * &scale + frac_num, scale));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

impl FromStr for UnitScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value = parse_rational(s).ok_or_else(|| {
            Error::parse(format!("'{s}'"), "expected a rational like 3/4 or 0.75")
        })?;
        UnitScalar::new(value)
    }
}

impl Serialize for UnitScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UnitScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for literals in tests and examples. Panics outside `[0,1]`.
pub fn q(p: i64, d: i64) -> UnitScalar {
    UnitScalar::ratio(p, d).expect("literal outside [0,1]")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    /// The uniform grid `{0, 1/n, ..., 1}`.
    Grid,
    /// An arbitrary finite set of points in `[0,1]`.
    Points,
}

/// A finite, sorted, duplicate-free set of points of `[0,1]` that always
/// contains 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    kind: DomainKind,
    resolution: Option<u32>,
    points: Vec<UnitScalar>,
}

impl Domain {
    /// The uniform grid `i/n`. Requires `n >= 2`.
    pub fn grid(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "grid resolution must be >= 2, got {n}"
            )));
        }
        let points = (0..=n)
            .map(|i| UnitScalar::new_unchecked(BigRational::new(BigInt::from(i), BigInt::from(n))))
            .collect();
        Ok(Domain {
            kind: DomainKind::Grid,
            resolution: Some(n),
            points,
        })
    }

    /// Any finite point set; it is sorted and deduplicated, and must contain
    /// 0 and 1.
    pub fn from_points(points: impl IntoIterator<Item = UnitScalar>) -> Result<Self> {
        let mut points: Vec<UnitScalar> = points.into_iter().collect();
        points.sort();
        points.dedup();
        if points.first().map(|p| p.is_zero()) != Some(true)
            || points.last().map(|p| p.is_one()) != Some(true)
        {
            return Err(Error::Domain("point set must contain 0 and 1".into()));
        }
        Ok(Domain {
            kind: DomainKind::Points,
            resolution: None,
            points,
        })
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn resolution(&self) -> Option<u32> {
        self.resolution
    }

    pub fn points(&self) -> &[UnitScalar] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &UnitScalar) -> bool {
        self.points.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &UnitScalar) -> Option<usize> {
        self.points.binary_search(x).ok()
    }

    /// Points strictly between 0 and 1.
    pub fn interior(&self) -> &[UnitScalar] {
        &self.points[1..self.points.len() - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("1/2".parse::<UnitScalar>().unwrap(), q(1, 2));
        assert_eq!("0.75".parse::<UnitScalar>().unwrap(), q(3, 4));
        assert_eq!("1".parse::<UnitScalar>().unwrap(), UnitScalar::one());
        assert_eq!(".5".parse::<UnitScalar>().unwrap(), q(1, 2));
        assert!("3/2".parse::<UnitScalar>().is_err());
        assert!("-1/2".parse::<UnitScalar>().is_err());
        assert!("1/0".parse::<UnitScalar>().is_err());
        assert!("abc".parse::<UnitScalar>().is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(UnitScalar::one().to_string(), "1");
        assert_eq!(q(1, 8).to_decimal_string(), "0.125");
        assert_eq!(q(1, 3).to_decimal_string(), "0.333333333333…");
        assert_eq!(UnitScalar::zero().to_decimal_string(), "0");
    }

    #[test]
    fn grid_invariants() {
        let d = Domain::grid(10).unwrap();
        assert_eq!(d.len(), 11);
        assert!(d.points().windows(2).all(|w| w[0] < w[1]));
        assert!(d.points()[0].is_zero() && d.points()[10].is_one());
        assert_eq!(d.interior().len(), 9);
        assert!(Domain::grid(1).is_err());
    }

    #[test]
    fn point_domains_need_endpoints() {
        assert!(Domain::from_points([q(1, 2), UnitScalar::one()]).is_err());
        let d =
            Domain::from_points([UnitScalar::one(), q(1, 3), UnitScalar::zero(), q(1, 3)]).unwrap();
        assert_eq!(
            d.points(),
            &[UnitScalar::zero(), q(1, 3), UnitScalar::one()]
        );
    }
}
