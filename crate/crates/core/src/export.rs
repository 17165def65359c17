//! Machine-readable exports of `Y^(n)`. Sets are written as labels (`"1-3-4"`,
//! `"0"` for the empty set) and values as lowest-terms fractions (`"-1/2"`,
//! `"1"`), so that reading an export back reproduces the matrix exactly.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Scalar, SubsetIndex};
use crate::error::{capacity, Error, Result};
use crate::pseudomoments::{d_max, PseudomomentMatrix};

/// Largest `n` for a dense export (`C(12, ≤ 6)² ≈ 6.3 · 10⁶` rows).
pub const MAX_EXPORT_N: usize = 12;

pub const CSV_HEADER: [&str; 3] = ["row_set", "col_set", "value"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub row_set: String,
    pub col_set: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixExport {
    pub n: usize,
    pub d_max: usize,
    pub entries: Vec<EntryRecord>,
}

/// One `(S, T, Y_{S,T})` triple.
pub type Entry = (SubsetIndex, SubsetIndex, Scalar);

fn records(y: &PseudomomentMatrix) -> Result<impl Iterator<Item = EntryRecord> + '_> {
    capacity("dense matrix export (n ≤ 12)", MAX_EXPORT_N, y.n())?;
    let idx = y.index();
    Ok((0..y.dim()).flat_map(move |i| {
        (0..y.dim()).map(move |j| EntryRecord {
            row_set: idx[i].label(),
            col_set: idx[j].label(),
            value: y.entry(i, j).to_string(),
        })
    }))
}

/// Dense CSV, row-major in index order, with header `row_set,col_set,value`.
pub fn write_csv(y: &PseudomomentMatrix, out: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records(y)? {
        w.write_record([&r.row_set, &r.col_set, &r.value]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// JSON object `{n, d_max, entries: [{row_set, col_set, value}]}`.
pub fn write_json(y: &PseudomomentMatrix, mut out: impl Write) -> Result<()> {
    let doc = MatrixExport { n: y.n(), d_max: y.d_max(), entries: records(y)?.collect() };
    serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| Error::Parse(e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

fn parse_entry(n: usize, r: &EntryRecord) -> Result<Entry> {
    let s = SubsetIndex::parse_label(n, &r.row_set)?;
    let t = SubsetIndex::parse_label(n, &r.col_set)?;
    let v: Scalar = r.value.parse().map_err(|e| Error::Parse(format!("bad value {:?}: {e}", r.value)))?;
    Ok((s, t, v))
}

/// Reads a CSV export. The ground set size is not stored in the file and must be supplied.
pub fn read_csv(n: usize, input: impl Read) -> Result<Vec<Entry>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(csv_err)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    rdr.deserialize::<EntryRecord>().map(|r| parse_entry(n, &r.map_err(csv_err)?)).collect()
}

/// Reads a JSON export, returning `n` with the entries.
pub fn read_json(input: impl Read) -> Result<(usize, Vec<Entry>)> {
    let doc: MatrixExport = serde_json::from_reader(input).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.d_max != d_max(doc.n) {
        return Err(Error::Parse(format!("d_max {} inconsistent with n = {}", doc.d_max, doc.n)));
    }
    let entries = doc.entries.iter().map(|r| parse_entry(doc.n, r)).collect::<Result<_>>()?;
    Ok((doc.n, entries))
}

/// `true` iff the entries are exactly the dense matrix `y`, in any order.
pub fn matches_matrix(y: &PseudomomentMatrix, entries: &[Entry]) -> bool {
    if entries.len() != y.dim() * y.dim() {
        return false;
    }
    let mut seen = vec![false; entries.len()];
    for (s, t, v) in entries {
        let (Some(i), Some(j)) = (y.position(s), y.position(t)) else {
            return false;
        };
        let k = i * y.dim() + j;
        if seen[k] || y.entry(i, j) != v {
            return false;
        }
        seen[k] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudomoments::build_y;

    #[test]
    fn csv_round_trip() {
        let y = build_y(3).unwrap();
        let mut buf = Vec::new();
        write_csv(&y, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 17);
        assert!(text.starts_with("row_set,col_set,value\n0,0,1\n"));
        assert!(text.contains("\n1,2,-1/2\n"));
        assert!(matches_matrix(&y, &read_csv(3, buf.as_slice()).unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let y = build_y(4).unwrap();
        let mut buf = Vec::new();
        write_json(&y, &mut buf).unwrap();
        let (n, entries) = read_json(buf.as_slice()).unwrap();
        assert_eq!(n, 4);
        assert!(matches_matrix(&y, &entries));
        assert!(!matches_matrix(&build_y(5).unwrap(), &entries));
    }
}
