//! JSON input files and the short textual specs accepted on the command line.
//!
//! Parse failures carry the line and column from the JSON reader and the
//! path of the offending field, e.g. `mu.json line 3 column 14 (entries[1][0])`.

use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::connective::Connective;
use crate::error::{Error, Result};
use crate::fuzzy::{FiniteMonoid, FuzzySubset};
use crate::lattice::{FiniteLattice, LSubset};
use crate::scalar::{Domain, UnitScalar};
use crate::vague::{ScalarEquality, TFuzzyEquality, VagueBinaryOp};

/// Deserializes `text`, reporting where it went wrong.
pub fn parse_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Parse {
            location: format!(
                "{source} line {} column {} ({path})",
                inner.line(),
                inner.column()
            ),
            message: inner.to_string(),
        }
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn scalar_at(s: &str, location: impl FnOnce() -> String) -> Result<UnitScalar> {
    s.parse().map_err(|e: Error| match e {
        Error::OutOfRange(v) => Error::parse(location(), format!("{v} is not in [0,1]")),
        _ => Error::parse(location(), format!("'{s}' is not a rational p/q")),
    })
}

/// The shared table schema: `{"form": "table", "entries": [[k.., v], ...]}`
/// or `{"form": "builtin:<name>"}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub form: String,
    #[serde(default)]
    pub entries: Vec<Vec<String>>,
}

impl TableFile {
    fn rows(&self, source: &str, arity: usize) -> Result<&[Vec<String>]> {
        if self.form != "table" {
            return Err(Error::parse(
                format!("{source} (form)"),
                format!("expected \"table\", got \"{}\"", self.form),
            ));
        }
        if let Some((i, row)) = self
            .entries
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != arity + 1)
        {
            return Err(Error::parse(
                format!("{source} (entries[{i}])"),
                format!("expected {} strings, got {}", arity + 1, row.len()),
            ));
        }
        Ok(&self.entries)
    }
}

/// `builtin:identity`, `builtin:one`, `builtin:zero`, `builtin:complement`,
/// `builtin:step(e)`.
pub fn builtin_subset(name: &str) -> Result<FuzzySubset> {
    let rest = name
        .trim()
        .strip_prefix("builtin:")
        .ok_or_else(|| Error::Config(format!("unknown fuzzy subset '{name}'")))?;
    Ok(match rest {
        "identity" => FuzzySubset::Identity,
        "one" => FuzzySubset::One,
        "zero" => FuzzySubset::Zero,
        "complement" => FuzzySubset::Complement,
        _ => {
            let e = rest
                .strip_prefix("step(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Config(format!("unknown builtin subset '{rest}'")))?;
            FuzzySubset::Step(
                e.parse()
                    .map_err(|_| Error::Config(format!("invalid step point '{e}'")))?,
            )
        }
    })
}

/// A fuzzy subset from its JSON text. Keys that parse as rationals address
/// points of `[0,1]`; other keys address carrier labels.
pub fn subset_from_json(text: &str, source: &str) -> Result<FuzzySubset> {
    let f: TableFile = parse_json(text, source)?;
    if f.form.starts_with("builtin:") {
        return builtin_subset(&f.form)
            .map_err(|e| Error::parse(format!("{source} (form)"), e.to_string()));
    }
    let rows = f.rows(source, 1)?;
    let mut entries = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let v = scalar_at(&r[1], || format!("{source} (entries[{i}][1])"))?;
        entries.push((r[0].clone(), v));
    }
    Ok(FuzzySubset::label_table(entries))
}

/// A `--mu` argument: a builtin name or a path to a JSON file.
pub fn load_subset(spec: &str) -> Result<FuzzySubset> {
    if spec.starts_with("builtin:") {
        return builtin_subset(spec);
    }
    subset_from_json(&read(Path::new(spec))?, spec)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CarrierFile {
    elements: Vec<String>,
    op: Vec<Vec<String>>,
    identity: String,
}

pub fn carrier_from_json(text: &str, source: &str) -> Result<FiniteMonoid> {
    let f: CarrierFile = parse_json(text, source)?;
    let n = f.elements.len();
    if f.op.len() != n {
        return Err(Error::parse(
            format!("{source} (op)"),
            format!("expected {n} rows, got {}", f.op.len()),
        ));
    }
    for (i, row) in f.op.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotTotal {
                element: format!(
                    "row {} of op has {} entries for {n} elements",
                    f.elements[i],
                    row.len()
                ),
            });
        }
    }
    FiniteMonoid::from_labels(f.elements, f.op, &f.identity)
}

/// A `--carrier` argument: a connective id or a path to a finite carrier file.
pub enum CarrierSpec {
    Interval(Connective),
    Finite(FiniteMonoid),
}

pub fn load_carrier(spec: &str) -> Result<CarrierSpec> {
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        return Ok(CarrierSpec::Finite(carrier_from_json(
            &read(Path::new(spec))?,
            spec,
        )?));
    }
    Ok(CarrierSpec::Interval(spec.parse()?))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

pub fn lattice_from_json(text: &str, source: &str) -> Result<FiniteLattice> {
    let f: LatticeFile = parse_json(text, source)?;
    FiniteLattice::from_covers(&f.elements, &f.covers)
}

/// `chain:N`, `diamond`, or a path to a lattice file.
pub fn load_lattice(spec: &str) -> Result<Arc<FiniteLattice>> {
    if spec == "diamond" {
        return Ok(Arc::new(FiniteLattice::diamond()));
    }
    if let Some(n) = spec.strip_prefix("chain:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Config(format!("invalid chain length '{n}'")))?;
        if n < 2 {
            return Err(Error::Config("a chain needs at least 2 elements".into()));
        }
        return Ok(Arc::new(FiniteLattice::chain(n)));
    }
    Ok(Arc::new(lattice_from_json(&read(Path::new(spec))?, spec)?))
}

/// An L-subset: `identity`, `const:<label>`, or a table file whose keys and
/// values are element labels.
pub fn load_lattice_subset(spec: &str, l: &FiniteLattice) -> Result<LSubset> {
    if spec == "identity" || spec == "builtin:identity" {
        return Ok(LSubset::identity(l));
    }
    if let Some(v) = spec.strip_prefix("const:") {
        let i = l
            .index_of(v)
            .ok_or_else(|| Error::Config(format!("unknown lattice element '{v}'")))?;
        return Ok(LSubset::constant(l, i));
    }
    let f: TableFile = parse_json(&read(Path::new(spec))?, spec)?;
    let rows = f.rows(spec, 1)?;
    let entries: Vec<(String, String)> =
        rows.iter().map(|r| (r[0].clone(), r[1].clone())).collect();
    LSubset::from_labels(spec, &entries, l)
}

/// An equality table `[[x, y, E(x,y)], ...]`, total on the points it names.
pub fn equality_from_json(text: &str, source: &str) -> Result<ScalarEquality> {
    let f: TableFile = parse_json(text, source)?;
    match f.form.as_str() {
        "builtin:crisp" => return Ok(ScalarEquality::Crisp),
        "builtin:one-minus-abs" => return Ok(ScalarEquality::OneMinusAbs),
        _ => {}
    }
    let rows = f.rows(source, 2)?;
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let mut s = Vec::with_capacity(3);
        for (j, cell) in r.iter().enumerate() {
            s.push(scalar_at(cell, || format!("{source} (entries[{i}][{j}])"))?);
        }
        parsed.push(s);
    }
    let mut points: Vec<UnitScalar> = parsed
        .iter()
        .flat_map(|r| [r[0].clone(), r[1].clone()])
        .collect();
    points.sort();
    points.dedup();
    let n = points.len();
    let mut values = vec![None; n * n];
    for r in &parsed {
        let i = points.binary_search(&r[0]).expect("collected");
        let j = points.binary_search(&r[1]).expect("collected");
        values[i * n + j] = Some(r[2].clone());
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(ij, v)| {
            v.ok_or_else(|| Error::NotTotal {
                element: format!("({}, {})", points[ij / n], points[ij % n]),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ScalarEquality::table(points, values)
}

/// `builtin:crisp`, `builtin:one-minus-abs`, or a path to an equality file.
pub fn load_equality(spec: &str) -> Result<ScalarEquality> {
    match spec {
        "builtin:crisp" | "crisp" => Ok(ScalarEquality::Crisp),
        "builtin:one-minus-abs" | "one-minus-abs" => Ok(ScalarEquality::OneMinusAbs),
        _ => equality_from_json(&read(Path::new(spec))?, spec),
    }
}

/// A vague operation table `[[x, y, z, mu(x,y,z)], ...]` over the points of
/// `eq`; every triple must be present.
pub fn vague_op_from_json(text: &str, source: &str, eq: TFuzzyEquality) -> Result<VagueBinaryOp> {
    let f: TableFile = parse_json(text, source)?;
    let rows = f.rows(source, 3)?;
    let d: &Domain = eq.domain();
    let n = d.len();
    let mut mu = vec![None; n * n * n];
    for (i, r) in rows.iter().enumerate() {
        let mut idx = 0;
        for (j, cell) in r[..3].iter().enumerate() {
            let p = scalar_at(cell, || format!("{source} (entries[{i}][{j}])"))?;
            let k = d.index_of(&p).ok_or_else(|| {
                Error::parse(
                    format!("{source} (entries[{i}][{j}])"),
                    format!("{p} is not a point of the equality"),
                )
            })?;
            idx = idx * n + k;
        }
        mu[idx] = Some(scalar_at(&r[3], || format!("{source} (entries[{i}][3])"))?);
    }
    let pts = d.points();
    let mu = mu
        .into_iter()
        .enumerate()
        .map(|(ijk, v)| {
            v.ok_or_else(|| Error::NotTotal {
                element: format!(
                    "({}, {}, {})",
                    pts[ijk / (n * n)],
                    pts[ijk / n % n],
                    pts[ijk % n]
                ),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    VagueBinaryOp::from_values(source, eq, mu)
}

pub fn load_vague_op(path: &str, eq: TFuzzyEquality) -> Result<VagueBinaryOp> {
    vague_op_from_json(&read(Path::new(path))?, path, eq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{CarrierMonoid, Elem};
    use crate::scalar::q;

    #[test]
    fn subset_table_round_trip() {
        let mu = subset_from_json(
            r#"{"form":"table","entries":[["0","1"],["1/2","3/4"],["1","1"]]}"#,
            "mu",
        )
        .unwrap();
        let d = Domain::from_points([q(0, 1), q(1, 2), q(1, 1)]).unwrap();
        let c = CarrierMonoid::interval(d, "tnorm:min".parse().unwrap()).unwrap();
        assert_eq!(mu.value(&c, &Elem::Scalar(q(1, 2))).unwrap(), q(3, 4));
    }

    #[test]
    fn parse_errors_name_the_field() {
        let err = subset_from_json(
            "{\"form\":\"table\",\n \"entries\":[[\"0\", 1]]}",
            "mu.json",
        )
        .unwrap_err();
        let Error::Parse { location, .. } = err else {
            panic!("{err}")
        };
        assert!(location.contains("line 2"), "{location}");
        assert!(location.contains("entries[0][1]"), "{location}");

        let err =
            subset_from_json(r#"{"form":"table","entries":[["0","3/2"]]}"#, "mu.json").unwrap_err();
        let Error::Parse { location, .. } = err else {
            panic!("{err}")
        };
        assert!(location.contains("entries[0][1]"));
    }

    #[test]
    fn carrier_and_lattice_files() {
        let m = carrier_from_json(
            r#"{"elements":["e","a"],"op":[["e","a"],["a","e"]],"identity":"e"}"#,
            "c",
        )
        .unwrap();
        assert!(m.is_group());
        let l = lattice_from_json(
            r#"{"elements":["0","a","b","1"],"covers":[["0","a"],["0","b"],["a","1"],["b","1"]]}"#,
            "l",
        )
        .unwrap();
        assert_eq!(l.len(), 4);
        assert!(!l.is_chain());
        let short = carrier_from_json(
            r#"{"elements":["e","a"],"op":[["e","a"],["a"]],"identity":"e"}"#,
            "c",
        );
        assert!(matches!(short, Err(Error::NotTotal { .. })));
    }

    #[test]
    fn equality_tables_must_be_total() {
        let e = equality_from_json(
            r#"{"form":"table","entries":[["0","0","1"],["0","1","0"],["1","1","1"]]}"#,
            "e",
        );
        assert!(matches!(e, Err(Error::NotTotal { .. })));
    }
}
