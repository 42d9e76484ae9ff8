//! Correlation records and their CSV/JSON serialization.
//!
//! CSV columns are fixed as `m,j,index,value,source`; JSON mirrors the same
//! fields. Floats are written with full round-trip precision so that a file
//! read back is value-identical.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::clusterops::ClusterIndex;
use crate::error::Result;

/// Where a value came from: the statevector or the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    #[serde(rename = "bruteforce")]
    BruteForce,
    Analytic,
}

/// One measured or predicted expectation value K at a (cycle, step) position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRecord {
    #[serde(rename = "m")]
    pub cycle: u64,
    #[serde(rename = "j")]
    pub step: usize,
    pub index: ClusterIndex,
    pub value: f64,
    pub source: Source,
}

/// Output format for record files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Deterministic output order: by cycle, step, index string, source.
pub fn sort_records(records: &mut [CorrelationRecord]) {
    records.sort_by(|a, b| {
        (
            a.cycle,
            a.step,
            a.index.to_string(),
            a.source == Source::Analytic,
        )
            .cmp(&(
                b.cycle,
                b.step,
                b.index.to_string(),
                b.source == Source::Analytic,
            ))
    });
}

pub fn write_csv<W: Write>(w: W, records: &[CorrelationRecord]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for r in records {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<CorrelationRecord>> {
    let mut rdr = csv::Reader::from_reader(r);
    let mut out = Vec::new();
    for rec in rdr.deserialize() {
        out.push(rec?);
    }
    Ok(out)
}

pub fn write_json<W: Write>(w: W, records: &[CorrelationRecord]) -> Result<()> {
    serde_json::to_writer_pretty(w, records)?;
    Ok(())
}

pub fn read_json<R: Read>(r: R) -> Result<Vec<CorrelationRecord>> {
    Ok(serde_json::from_reader(r)?)
}

pub fn write_file(path: &Path, format: Format, records: &[CorrelationRecord]) -> Result<()> {
    let file = std::fs::File::create(path)?;
    match format {
        Format::Csv => write_csv(file, records),
        Format::Json => write_json(file, records),
    }
}

pub fn read_file(path: &Path, format: Format) -> Result<Vec<CorrelationRecord>> {
    let file = std::fs::File::open(path)?;
    match format {
        Format::Csv => read_csv(file),
        Format::Json => read_json(file),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<CorrelationRecord> {
        vec![
            CorrelationRecord {
                cycle: 1,
                step: 8,
                index: "30000".parse().unwrap(),
                value: -0.25,
                source: Source::Analytic,
            },
            CorrelationRecord {
                cycle: 1,
                step: 8,
                index: "03300".parse().unwrap(),
                value: 0.707106781186547573,
                source: Source::BruteForce,
            },
        ]
    }

    #[test]
    fn csv_roundtrip_is_value_identical() {
        let recs = sample();
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("m,j,index,value,source"));
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(recs, back);
    }

    #[test]
    fn json_roundtrip_is_value_identical() {
        let recs = sample();
        let mut buf = Vec::new();
        write_json(&mut buf, &recs).unwrap();
        let back = read_json(buf.as_slice()).unwrap();
        assert_eq!(recs, back);
    }
}
