//! Bundled fixtures: the three-sector hypothetical economy and the seven-sector
//! US coefficient tables with their published simple requirements.
//!
//! The CSVs are embedded at compile time. Setting `DIACT_FIXTURES_DIR` makes
//! the loaders read `<dir>/<name>/{A,Nd,Ni,Nt,f}.csv` from disk instead.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;

use crate::csv_format::{parse_matrix_csv, parse_vector_csv};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::requirements::{Frame, Kind, RequirementsMatrix};
use crate::system::IoSystem;

pub const FIXTURES_DIR_ENV: &str = "DIACT_FIXTURES_DIR";

/// Years covered by the published US tables, most recent first.
pub const US_YEARS: [u16; 15] = [
    2006, 2002, 1997, 1992, 1987, 1982, 1977, 1972, 1967, 1963, 1958, 1947, 1939, 1929, 1919,
];

struct Embedded {
    name: &'static str,
    a: &'static str,
    nd: Option<&'static str>,
    ni: Option<&'static str>,
    nt: Option<&'static str>,
    f: Option<&'static str>,
}

macro_rules! us {
    ($dir:literal) => {
        Embedded {
            name: $dir,
            a: include_str!(concat!("../fixtures/", $dir, "/A.csv")),
            nd: Some(include_str!(concat!("../fixtures/", $dir, "/Nd.csv"))),
            ni: Some(include_str!(concat!("../fixtures/", $dir, "/Ni.csv"))),
            nt: Some(include_str!(concat!("../fixtures/", $dir, "/Nt.csv"))),
            f: None,
        }
    };
}

const EMBEDDED: [Embedded; 16] = [
    us!("us-2006"),
    us!("us-2002"),
    us!("us-1997"),
    us!("us-1992"),
    us!("us-1987"),
    us!("us-1982"),
    us!("us-1977"),
    us!("us-1972"),
    us!("us-1967"),
    us!("us-1963"),
    us!("us-1958"),
    us!("us-1947"),
    us!("us-1939"),
    us!("us-1929"),
    us!("us-1919"),
    Embedded {
        name: "hypothetical",
        a: include_str!("../fixtures/hypothetical/A.csv"),
        nd: Some(include_str!("../fixtures/hypothetical/Nd.csv")),
        ni: Some(include_str!("../fixtures/hypothetical/Ni.csv")),
        nt: Some(include_str!("../fixtures/hypothetical/Nt.csv")),
        f: Some(include_str!("../fixtures/hypothetical/f.csv")),
    },
];

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub sector_names: Vec<String>,
    pub a: Matrix,
    pub final_demand: Option<Vector>,
    /// Printed simple-frame requirements, keyed by kind.
    pub published: BTreeMap<Kind, Matrix>,
}

impl Fixture {
    /// The fixture's system; without a printed final demand, `f = 𝟙` is used
    /// (simple requirements do not depend on `f`).
    pub fn system(&self) -> Result<IoSystem> {
        let f = self
            .final_demand
            .clone()
            .unwrap_or_else(|| Vector::ones(self.a.rows()));
        IoSystem::from_coefficients(self.a.clone(), f, self.sector_names.clone())
    }

    pub fn published(&self, kind: Kind) -> Option<&Matrix> {
        self.published.get(&kind)
    }
}

fn override_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURES_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Fixture names in catalog order.
pub fn catalog() -> Result<Vec<String>> {
    match override_dir() {
        None => Ok(EMBEDDED.iter().map(|e| e.name.to_owned()).collect()),
        Some(dir) => {
            let mut names = Vec::new();
            for entry in std::fs::read_dir(&dir)
                .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
            {
                let entry = entry?;
                if entry.path().join("A.csv").is_file() {
                    names.push(entry.file_name().to_string_lossy().into_owned());
                }
            }
            names.sort();
            Ok(names)
        }
    }
}

fn assemble(
    name: &str,
    a: &str,
    published: [(Kind, Option<String>); 3],
    f: Option<String>,
) -> Result<Fixture> {
    let tag = |e: Error| match e {
        Error::Parse(msg) => Error::Parse(format!("fixture {name}: {msg}")),
        other => other,
    };
    let a = parse_matrix_csv(a.as_bytes()).map_err(tag)?;
    if a.row_labels != a.col_labels {
        return Err(Error::Parse(format!("fixture {name}: row and column labels differ")));
    }
    let n = a.values.require_square()?;
    let mut map = BTreeMap::new();
    for (kind, text) in published {
        if let Some(text) = text {
            let m = parse_matrix_csv(text.as_bytes()).map_err(tag)?.values;
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "fixture {name}: published {kind} is {}x{}, A is {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            map.insert(kind, m);
        }
    }
    let final_demand = f
        .map(|text| parse_vector_csv(text.as_bytes()).map_err(tag))
        .transpose()?
        .map(|v| v.values);
    Ok(Fixture {
        name: name.to_owned(),
        sector_names: a.row_labels,
        a: a.values,
        final_demand,
        published: map,
    })
}

pub fn load(name: &str) -> Result<Fixture> {
    match override_dir() {
        None => {
            let e = EMBEDDED
                .iter()
                .find(|e| e.name == name)
                .ok_or_else(|| Error::UnknownFixture(name.to_owned()))?;
            let own = |s: Option<&str>| s.map(str::to_owned);
            assemble(
                name,
                e.a,
                [
                    (Kind::Direct, own(e.nd)),
                    (Kind::Indirect, own(e.ni)),
                    (Kind::Transfer, own(e.nt)),
                ],
                own(e.f),
            )
        }
        Some(dir) => {
            let base = dir.join(name);
            if name.contains(['/', '\\']) || !base.join("A.csv").is_file() {
                return Err(Error::UnknownFixture(name.to_owned()));
            }
            let read = |file: &str| -> Result<Option<String>> {
                let path = base.join(file);
                if !path.is_file() {
                    return Ok(None);
                }
                std::fs::read_to_string(&path)
                    .map(Some)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
            };
            let a = read("A.csv")?.unwrap_or_default();
            assemble(
                name,
                &a,
                [
                    (Kind::Direct, read("Nd.csv")?),
                    (Kind::Indirect, read("Ni.csv")?),
                    (Kind::Transfer, read("Nt.csv")?),
                ],
                read("f.csv")?,
            )
        }
    }
}

pub fn load_all() -> Result<Vec<Fixture>> {
    catalog()?.iter().map(|n| load(n)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub fixture: String,
    pub kind: Kind,
    pub max_abs: f64,
    pub median_abs: f64,
    /// `(row, col)` of the largest deviation.
    pub worst_cell: (usize, usize),
    pub computed: f64,
    pub published: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

/// Elementwise comparison of `computed` against the fixture's printed matrix
/// of the same kind. Only simple-frame tables are published.
pub fn regression_compare(fix: &Fixture, computed: &RequirementsMatrix, tol: f64) -> Result<Deviation> {
    let missing = || Error::MissingPublished {
        fixture: fix.name.clone(),
        what: format!("{} {} requirements", computed.frame, computed.kind),
    };
    if computed.frame != Frame::Simple {
        return Err(missing());
    }
    let published = fix.published(computed.kind).ok_or_else(missing)?;
    let diff = computed.values.sub(published)?;

    let mut abs: Vec<f64> = diff.as_slice().iter().map(|d| d.abs()).collect();
    let n = diff.cols();
    let (idx, max_abs) = abs
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    abs.sort_by(f64::total_cmp);
    let mid = abs.len() / 2;
    let median_abs = if abs.len() % 2 == 1 {
        abs[mid]
    } else {
        (abs[mid - 1] + abs[mid]) / 2.0
    };
    let worst_cell = (idx / n, idx % n);
    Ok(Deviation {
        fixture: fix.name.clone(),
        kind: computed.kind,
        max_abs,
        median_abs,
        worst_cell,
        computed: computed.values[worst_cell],
        published: published[worst_cell],
        tolerance: tol,
        within_tolerance: max_abs <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::requirements::requirements;

    #[test]
    fn catalog_covers_every_year() {
        let names = catalog().unwrap();
        assert_eq!(names.len(), 16);
        for y in US_YEARS {
            assert!(names.contains(&format!("us-{y}")));
        }
        assert!(names.contains(&"hypothetical".to_owned()));
    }

    #[test]
    fn transcribed_anchor_values() {
        let h = load("hypothetical").unwrap();
        assert_eq!(h.a[(2, 0)], 0.3);
        assert_eq!(h.final_demand.unwrap().as_slice(), &[10.0, 20.0, 30.0]);

        let us = load("us-2006").unwrap();
        assert_eq!(us.a[(5, 3)], 0.1239);
        assert_eq!(us.published(Kind::Direct).unwrap()[(5, 3)], 0.1979);
        assert_eq!(us.sector_names.len(), 7);

        let old = load("us-1919").unwrap();
        assert_eq!(old.published(Kind::Indirect).unwrap()[(2, 6)], 0.0);
        for j in 0..7 {
            let want = if j == 6 { 0.0581 } else { 0.0 };
            assert_eq!(old.a[(2, j)], want);
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(load("us-1900"), Err(Error::UnknownFixture("us-1900".into())));
    }

    #[test]
    fn every_fixture_is_viable_and_complementary() {
        for fix in load_all().unwrap() {
            let sys = fix.system().unwrap();
            assert!(sys.spectral_radius() < 1.0, "{}", fix.name);
            let gap = fix.published[&Kind::Transfer]
                .sub(&fix.published[&Kind::Direct])
                .unwrap()
                .sub(&fix.published[&Kind::Indirect])
                .unwrap()
                .max_abs();
            assert!(gap <= 2e-4, "{}: {gap}", fix.name);
        }
    }

    #[test]
    fn compare_against_self_and_published() {
        let fix = load("us-2006").unwrap();
        let sys = fix.system().unwrap();
        let nt = requirements(&sys, Kind::Transfer, Frame::Simple);
        let d = regression_compare(&fix, &nt, 5e-3).unwrap();
        assert!(d.within_tolerance, "{d:?}");

        let mut own = fix.clone();
        own.published.insert(Kind::Transfer, nt.values.clone());
        let d = regression_compare(&own, &nt, 0.0).unwrap();
        assert_eq!((d.max_abs, d.median_abs), (0.0, 0.0));

        let h = load("hypothetical").unwrap();
        let ni = requirements(&h.system().unwrap(), Kind::Indirect, Frame::Simple);
        assert!(regression_compare(&h, &ni, 5e-5).unwrap().within_tolerance);

        let composite = requirements(&sys, Kind::Transfer, Frame::Composite);
        assert!(matches!(
            regression_compare(&fix, &composite, 1.0),
            Err(Error::MissingPublished { .. })
        ));
        own.published.remove(&Kind::Direct);
        let nd = requirements(&sys, Kind::Direct, Frame::Simple);
        assert!(regression_compare(&own, &nd, 1.0).is_err());
    }
}
