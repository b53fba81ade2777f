//! Knot tables: a small built-in table and CSV ingestion.
//!
//! CSV rows are `name,c0,c1,...,cn` with coefficients in ascending degree
//! (constant term first). A leading `name,...` header row is skipped.

use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::IntPoly;

pub const BUILTIN_SOURCE: &str = "builtin";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnotRecord {
    pub name: String,
    pub poly: IntPoly,
    pub crossing_number: Option<u32>,
    pub source: String,
}

const BUILTIN: &[(&str, &[i64])] = &[
    ("0_1", &[1]),
    ("3_1", &[1, -1, 1]),
    ("4_1", &[1, -3, 1]),
    ("5_1", &[1, -1, 1, -1, 1]),
    ("5_2", &[2, -3, 2]),
    ("6_1", &[2, -5, 2]),
    ("6_2", &[1, -3, 3, -3, 1]),
    ("6_3", &[1, -3, 5, -3, 1]),
    ("7_2", &[3, -5, 3]),
    ("7_4", &[4, -7, 4]),
];

/// Crossing number from a Rolfsen-style name such as `5_2`.
fn crossing_number(name: &str) -> Option<u32> {
    name.split_once('_').and_then(|(c, _)| c.parse().ok())
}

pub fn builtin_table() -> Vec<KnotRecord> {
    BUILTIN
        .iter()
        .map(|(name, coeffs)| KnotRecord {
            name: name.to_string(),
            poly: IntPoly::from_i64(coeffs).expect("builtin polynomials are nonzero"),
            crossing_number: crossing_number(name),
            source: BUILTIN_SOURCE.to_string(),
        })
        .collect()
}

/// Looks a knot up by name in the built-in table.
pub fn lookup(name: &str) -> Option<KnotRecord> {
    builtin_table().into_iter().find(|k| k.name == name)
}

fn is_header(record: &csv::StringRecord) -> bool {
    record.get(0).is_some_and(|f| f.trim().eq_ignore_ascii_case("name"))
        && record.iter().skip(1).any(|f| f.trim().parse::<BigInt>().is_err())
}

/// Parses a knot table from any reader; `source` is stored on each record.
pub fn read_csv<R: Read>(reader: R, source: &str) -> Result<Vec<KnotRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(reader);
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for (i, row) in rdr.records().enumerate() {
        let row_no = i + 1;
        let fail = |message: String| Error::Row { row: row_no, message };
        let row = row.map_err(|e| fail(e.to_string()))?;
        if row_no == 1 && is_header(&row) {
            continue;
        }
        if row.iter().all(|f| f.is_empty()) {
            continue;
        }
        let name = row.get(0).unwrap_or_default().to_string();
        if name.is_empty() {
            return Err(fail("empty knot name".into()));
        }
        let coeffs = row
            .iter()
            .skip(1)
            .filter(|f| !f.is_empty())
            .map(|f| f.parse::<BigInt>().map_err(|_| fail(format!("malformed integer {f:?} for {name}"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(fail(format!("empty coefficient list for {name}")));
        }
        let poly = IntPoly::normalize(&coeffs, 0).map_err(|e| fail(format!("{name}: {e}")))?;
        let value = poly.value_at_one();
        if !poly.is_knot_like() {
            return Err(fail(format!("{name}: Δ(1) = {value}, expected ±1 (coefficients are in ascending degree)")));
        }
        if !seen.insert(name.clone()) {
            return Err(fail(format!("duplicate name {name}")));
        }
        records.push(KnotRecord {
            crossing_number: crossing_number(&name),
            name,
            poly,
            source: source.to_string(),
        });
    }
    Ok(records)
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_csv(file, &path.display().to_string())
}

/// Writes `name,c0,...,cn` rows (no header).
pub fn write_csv<W: Write>(writer: W, records: &[KnotRecord]) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().flexible(true).from_writer(writer);
    for k in records {
        let mut row = vec![k.name.clone()];
        row.extend(k.poly.coeffs().iter().map(|c| c.to_string()));
        wtr.write_record(&row).map_err(|e| Error::Io(e.to_string()))?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::validate_alexander;

    #[test]
    fn builtin_lookups() {
        assert_eq!(lookup("5_2").unwrap().poly, IntPoly::from_i64(&[2, -3, 2]).unwrap());
        assert_eq!(lookup("4_1").unwrap().poly, IntPoly::from_i64(&[1, -3, 1]).unwrap());
        assert_eq!(lookup("0_1").unwrap().poly, IntPoly::one());
        assert_eq!(lookup("7_4").unwrap().crossing_number, Some(7));
        assert!(lookup("9_42").is_none());
    }

    #[test]
    fn builtin_records_validate() {
        for k in builtin_table() {
            let v = validate_alexander(&k.poly);
            assert!(v.is_knot_like && v.is_reciprocal && v.content == 1.into(), "{}", k.name);
        }
    }

    #[test]
    fn parses_rows_and_header() {
        let text = "name,coeffs\n5_2,2,-3,2\n0_1,1\n";
        let t = read_csv(text.as_bytes(), "test").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].name, "5_2");
        assert_eq!(t[1].poly, IntPoly::one());
        assert_eq!(t[0].source, "test");
    }

    #[test]
    fn row_errors() {
        let err = |s: &str| read_csv(s.as_bytes(), "t").unwrap_err();
        assert!(matches!(err("5_2,2,-3,2\nbad,1,1\n"), Error::Row { row: 2, .. }));
        assert!(matches!(err("x,1,q\n"), Error::Row { row: 1, .. }));
        assert!(matches!(err("a,1\na,1\n"), Error::Row { row: 2, .. }));
        assert!(matches!(err("empty\n"), Error::Row { row: 1, .. }));
        assert!(err("z,0,0\n").to_string().contains("zero polynomial"));
    }

    #[test]
    fn round_trip() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &builtin_table()).unwrap();
        let back = read_csv(buf.as_slice(), BUILTIN_SOURCE).unwrap();
        assert_eq!(back, builtin_table());
    }
}
