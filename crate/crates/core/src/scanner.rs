//! Sweeps over tetration bases: speed, onset and asymptotic phase shift per
//! base, checked against the list of cycles conjectured to be the only ones
//! that occur.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_shift::{aps_with, reduce_cycle, Parity, PhaseCycle};
use crate::stability::Profiler;

/// Largest base a sweep accepts.
pub const MAX_SCAN_BASE: u64 = 10_000_000;

/// The 21 conjectured asymptotic phase shifts, in reduced form.
pub const CONJECTURED_CYCLES: [&[u8]; 21] = [
    &[2],
    &[4],
    &[6],
    &[8],
    &[2, 8],
    &[8, 2],
    &[4, 6],
    &[6, 4],
    &[2, 6, 8, 4],
    &[4, 2, 6, 8],
    &[8, 4, 2, 6],
    &[6, 8, 4, 2],
    &[2, 4, 8, 6],
    &[6, 2, 4, 8],
    &[8, 6, 2, 4],
    &[4, 8, 6, 2],
    &[5],
    &[9],
    &[1, 9],
    &[3, 9, 7, 1],
    &[7, 9, 3, 1],
];

/// The 14 cycles admissible for even bases.
pub const EVEN_ADMISSIBLE_CYCLES: [&[u8]; 14] = [
    &[2],
    &[4],
    &[6],
    &[8],
    &[2, 8],
    &[8, 2],
    &[4, 6],
    &[6, 4],
    &[4, 2, 6, 8],
    &[8, 4, 2, 6],
    &[6, 8, 4, 2],
    &[2, 4, 8, 6],
    &[6, 2, 4, 8],
    &[4, 8, 6, 2],
];

/// Whether a (reduced) cycle is one of the conjectured ones, and for even
/// bases one of the even-admissible ones.
pub fn conjecture_holds(base: u64, reduced: &[u8]) -> bool {
    let canonical = match crate::phase_shift::expand_cycle(reduced) {
        Some(full) => reduce_cycle(full),
        None => return false,
    };
    let listed = |list: &[&[u8]]| list.contains(&canonical.as_slice());
    if base % 2 == 0 {
        listed(&EVEN_ADMISSIBLE_CYCLES)
    } else {
        listed(&CONJECTURED_CYCLES)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanFilter {
    CoprimeTo10,
    EndingIn5,
    AllNonMult10,
}

impl ScanFilter {
    pub fn accepts(&self, a: u64) -> bool {
        if a % 10 == 0 {
            return false;
        }
        match self {
            ScanFilter::CoprimeTo10 => a % 2 != 0 && a % 5 != 0,
            ScanFilter::EndingIn5 => a % 10 == 5,
            ScanFilter::AllNonMult10 => true,
        }
    }
}

impl FromStr for ScanFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coprime" | "coprime-to-10" => Ok(ScanFilter::CoprimeTo10),
            "ending-in-5" => Ok(ScanFilter::EndingIn5),
            "all" | "all-non-mult-10" => Ok(ScanFilter::AllNonMult10),
            _ => Err(Error::InvalidArgument(format!("unknown filter {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub base: u64,
    pub constant_speed: Option<u64>,
    pub onset: Option<u64>,
    /// Reduced asymptotic phase shift; empty if the base could not be profiled.
    pub aps: Vec<u8>,
    pub cycle: Option<[u8; 4]>,
    pub conjecture_ok: bool,
    pub parity_class: Parity,
    pub note: Option<String>,
}

impl ScanRecord {
    fn failed(base: u64, err: &Error) -> Self {
        ScanRecord {
            base,
            constant_speed: None,
            onset: None,
            aps: Vec::new(),
            cycle: None,
            conjecture_ok: false,
            parity_class: Parity::of(base),
            note: Some(err.to_string()),
        }
    }
}

/// Profiles one base.
pub fn scan_base(base: u64) -> ScanRecord {
    let attempt = || -> Result<ScanRecord> {
        let mut profiler = Profiler::new(base)?;
        let (onset, speed) = profiler.detect_onset()?;
        let cycle = PhaseCycle::new(base, aps_with(&mut profiler, onset)?);
        let conjecture_ok = conjecture_holds(base, &cycle.reduced);
        let mut notes: Vec<String> = cycle.violations().iter().map(|s| s.to_string()).collect();
        if speed == 0 {
            notes.push("constant speed is zero".into());
        }
        if !conjecture_ok {
            notes.push(format!("cycle {cycle} outside the conjectured list"));
        }
        Ok(ScanRecord {
            base,
            constant_speed: Some(speed as u64),
            onset: Some(onset),
            aps: cycle.reduced.clone(),
            cycle: Some(cycle.cycle),
            conjecture_ok,
            parity_class: Parity::of(base),
            note: (!notes.is_empty()).then(|| notes.join("; ")),
        })
    };
    attempt().unwrap_or_else(|err| ScanRecord::failed(base, &err))
}

/// One record per accepted base, ordered by base. Per-base failures become
/// records with a note.
pub fn scan(range: RangeInclusive<u64>, filter: ScanFilter) -> Result<Vec<ScanRecord>> {
    let (lo, hi) = (*range.start(), *range.end());
    if lo < 2 || hi > MAX_SCAN_BASE {
        return Err(Error::InvalidArgument(format!(
            "scan range {lo}..={hi} must lie within 2..={MAX_SCAN_BASE}"
        )));
    }
    let bases: Vec<u64> = range.filter(|&a| filter.accepts(a)).collect();
    Ok(bases.into_par_iter().map(scan_base).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Jsonl,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "jsonl" | "json" => Ok(ReportFormat::Jsonl),
            _ => Err(Error::InvalidArgument(format!(
                "unknown report format {s:?}"
            ))),
        }
    }
}

pub const CSV_HEADER: [&str; 6] = ["base", "V", "onset", "aps", "conjecture_ok", "note"];

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes records to any sink.
pub fn write_report<W: Write>(
    records: &[ScanRecord],
    format: ReportFormat,
    out: W,
) -> std::io::Result<()> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in records {
                let aps: Vec<String> = r.aps.iter().map(u8::to_string).collect();
                w.write_record([
                    r.base.to_string(),
                    opt(r.constant_speed),
                    opt(r.onset),
                    aps.join("-"),
                    r.conjecture_ok.to_string(),
                    r.note.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()
        }
        ReportFormat::Jsonl => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}

pub fn emit_report(records: &[ScanRecord], format: ReportFormat, destination: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: destination.to_path_buf(),
        source,
    };
    let file = File::create(destination).map_err(io_err)?;
    write_report(records, format, BufWriter::new(file)).map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_examples() {
        let r = scan(7..=7, ScanFilter::AllNonMult10).unwrap();
        assert_eq!(r[0].aps, vec![2, 6, 8, 4]);
        assert!(r[0].conjecture_ok);
        let r = scan(51..=51, ScanFilter::AllNonMult10).unwrap();
        assert_eq!(r[0].aps, vec![5]);
        assert!(r[0].conjecture_ok);
        let r = scan(33..=39, ScanFilter::CoprimeTo10).unwrap();
        let bases: Vec<u64> = r.iter().map(|x| x.base).collect();
        assert_eq!(bases, [33, 37, 39]);
        assert_eq!(r[0].aps, vec![2, 8]);
        assert_eq!(r[2].aps, vec![8, 2]);
    }

    #[test]
    fn filters() {
        assert!(ScanFilter::EndingIn5.accepts(25));
        assert!(!ScanFilter::EndingIn5.accepts(27));
        assert!(!ScanFilter::AllNonMult10.accepts(30));
        assert!(ScanFilter::AllNonMult10.accepts(32));
        assert!(!ScanFilter::CoprimeTo10.accepts(32));
        assert!(scan(1..=5, ScanFilter::AllNonMult10).is_err());
    }

    #[test]
    fn conjecture_membership() {
        assert!(conjecture_holds(3, &[4, 6]));
        assert!(conjecture_holds(3, &[4, 6, 4, 6]));
        assert!(conjecture_holds(7, &[2, 6, 8, 4]));
        // odd-only cycle on an even base
        assert!(!conjecture_holds(8, &[2, 6, 8, 4]));
        assert!(!conjecture_holds(9, &[1, 3]));
    }

    #[test]
    fn csv_layout() {
        let r = scan(9..=9, ScanFilter::AllNonMult10).unwrap();
        let mut buf = Vec::new();
        write_report(&r, ReportFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "base,V,onset,aps,conjecture_ok,note\n9,1,1,2,true,\n");

        let mut buf = Vec::new();
        write_report(&[], ReportFormat::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "base,V,onset,aps,conjecture_ok,note\n"
        );
    }

    #[test]
    fn bad_destination() {
        let err = emit_report(
            &[],
            ReportFormat::Csv,
            Path::new("/nonexistent/dir/out.csv"),
        )
        .unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/out.csv"));
    }
}
