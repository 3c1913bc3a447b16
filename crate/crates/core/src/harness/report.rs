//! CSV and JSON serialization of reports.
//!
//! CSV follows RFC 4180 with LF line endings; floats carry 17 significant
//! digits so values round-trip exactly.

use std::io::Write;

use serde::Serialize;

use super::{LemmaSuiteReport, ResidueDecayReport, SandwichReport, ScanReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// 17 significant digits in scientific notation.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// A report that knows its CSV layout; JSON comes from serde.
pub trait Report: Serialize {
    fn header(&self) -> Vec<&'static str>;
    fn records(&self) -> Vec<Vec<String>>;
}

pub fn write_report<R: Report, W: Write>(
    report: &R,
    format: Format,
    mut out: W,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            out.write_all(b"\n")
        }
        Format::Csv => write_csv(&report.header(), &report.records(), out),
    }
}

pub fn write_csv<W: Write>(
    header: &[&str],
    records: &[Vec<String>],
    out: W,
) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header)?;
    for r in records {
        w.write_record(r)?;
    }
    w.flush()
}

impl Report for SandwichReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["d1", "d2", "x", "beta", "A", "S", "passed"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.d1.to_string(),
            self.d2.to_string(),
            fmt_f64(self.x),
            fmt_f64(self.beta),
            fmt_f64(self.a),
            fmt_f64(self.s),
            self.passed.to_string(),
        ]]
    }
}

impl Report for ResidueDecayReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["d1", "d2", "beta", "x", "R", "R_scaled", "err"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    self.d1.to_string(),
                    self.d2.to_string(),
                    fmt_f64(self.beta),
                    fmt_f64(r.x),
                    fmt_f64(r.r),
                    fmt_f64(r.r_scaled),
                    fmt_f64(r.err),
                ]
            })
            .collect()
    }
}

impl Report for ScanReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["d", "q", "L1", "weighted"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.d.to_string(),
                    r.q.to_string(),
                    fmt_f64(r.l1),
                    fmt_f64(r.weighted),
                ]
            })
            .collect()
    }
}

impl Report for LemmaSuiteReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["name", "passed", "cases", "worst", "tolerance", "detail"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    c.name.to_string(),
                    c.passed.to_string(),
                    c.cases.to_string(),
                    fmt_f64(c.worst),
                    fmt_f64(c.tolerance),
                    c.detail.clone(),
                ]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{verify_sandwich, ScanRow};

    #[test]
    fn float_format_round_trips() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5e17] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn sandwich_csv_and_json() {
        let r = verify_sandwich(-4, -3, 1.0, 0.9).unwrap();
        let mut csv = Vec::new();
        write_report(&r, Format::Csv, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("d1,d2,x,beta,A,S,passed\n-4,-3,"));
        assert!(text.ends_with(",true\n"));
        assert!(!text.contains('\r'));

        let mut json = Vec::new();
        write_report(&r, Format::Json, &mut json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&json).unwrap();
        for key in ["d1", "d2", "x", "beta", "A", "S", "passed"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["A"], 1.0);
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        let mut out = Vec::new();
        write_csv(&["a", "b"], &[vec!["x,y".into(), "z\"w".into()]], &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "a,b\n\"x,y\",\"z\"\"w\"\n");
    }

    #[test]
    fn scan_json_field_names() {
        let report = ScanReport {
            epsilon: 0.1,
            limit: 3,
            rows: vec![ScanRow {
                d: -3,
                q: 3,
                l1: 0.6,
                weighted: 0.7,
            }],
            min_weighted: 0.7,
            argmin_d: -3,
        };
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["rows"][0]["L1"], 0.6);
        assert_eq!(v["argmin_d"], -3);
    }
}
