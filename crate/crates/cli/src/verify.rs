//! Regression suite over the published constants: tower digits, the
//! limit of `^b 3`, its speed profile, the table of asymptotic phase shifts,
//! the phase-shift worked example, the unstable-digit law at proxy heights,
//! the 10-adic constants and a conjecture sweep.

use std::time::Instant;

use serde::Serialize;
use serde_json::json;
use tetra_core::scanner::{write_report, ReportFormat, EVEN_ADMISSIBLE_CYCLES};
use tetra_core::{
    asymptotic_phase_shift, check_eq2, check_theorem2, difference_digit, limit_digits, phase_shift,
    scan, tenadic_constant, tetration, ScanFilter, SpeedProfile, TenadicConstant,
};

use crate::args::VerifyArgs;
use crate::output::{Output, Table};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitsCase {
    pub base: u64,
    pub height: u64,
    pub mod_digits: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseExample {
    pub base: u64,
    pub height: u64,
    pub mod_digits: usize,
    pub lower: String,
    pub upper: String,
    pub shift: u8,
}

/// Expected values. Tests can corrupt a field to check that the matching
/// check fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixtures {
    pub digits: Vec<DigitsCase>,
    pub limit_base: u64,
    pub limit: String,
    pub speed_max_height: u64,
    pub speed_precision_budget: usize,
    pub aps: Vec<(u64, Vec<u8>)>,
    pub phase_example: PhaseExample,
    pub odd_heights: (u64, u64),
    pub even_heights: (u64, u64),
    pub offsets: Vec<u64>,
    pub odd_difference_digit: u8,
    pub even_difference_digit: u8,
    pub step_digit: u8,
    pub tenadic_difference: String,
    pub sweep: (u64, u64),
}

fn owned(s: &str) -> String {
    s.to_string()
}

impl Default for Fixtures {
    fn default() -> Self {
        let aps: [(u64, &[u8]); 24] = [
            (9, &[2]),
            (11, &[4]),
            (83, &[6]),
            (53, &[8]),
            (33, &[2, 8]),
            (39, &[8, 2]),
            (43, &[4, 6]),
            (41, &[6, 4]),
            (7, &[2, 6, 8, 4]),
            (73, &[4, 2, 6, 8]),
            (31, &[8, 4, 2, 6]),
            (29, &[6, 8, 4, 2]),
            (23, &[2, 4, 8, 6]),
            (13, &[6, 2, 4, 8]),
            (77, &[8, 6, 2, 4]),
            (19, &[4, 8, 6, 2]),
            (51, &[5]),
            (101, &[9]),
            (901, &[1, 9]),
            (301, &[3, 9, 7, 1]),
            (701, &[7, 9, 3, 1]),
            (169, &[4, 8, 6, 2]),
            (64, &[8]),
            (3, &[4, 6]),
        ];
        Fixtures {
            digits: vec![
                DigitsCase {
                    base: 3,
                    height: 3,
                    mod_digits: 3,
                    expected: owned("987"),
                },
                DigitsCase {
                    base: 3,
                    height: 4,
                    mod_digits: 3,
                    expected: owned("387"),
                },
            ],
            limit_base: 3,
            limit: owned(
                "35796399618993967905496638003222348723967018485186439059104575627262464195387",
            ),
            speed_max_height: 500,
            speed_precision_budget: 502,
            aps: aps.iter().map(|(a, c)| (*a, c.to_vec())).collect(),
            phase_example: PhaseExample {
                base: 5,
                height: 4,
                mod_digits: 11,
                lower: owned("68408203125"),
                upper: owned("18408203125"),
                shift: 5,
            },
            odd_heights: (5, 199),
            even_heights: (4, 198),
            offsets: vec![1, 2, 3],
            odd_difference_digit: 4,
            even_difference_digit: 6,
            step_digit: 6,
            tenadic_difference: owned(
                "99834030970896579486665776138023544317662666830362972182803640476581907922943",
            ),
            sweep: (2, 20_000),
        }
    }
}

/// Why a check did not pass.
#[derive(Debug)]
pub enum Failure {
    Mismatch(String),
    Error(CliError),
}

impl From<tetra_core::Error> for Failure {
    fn from(e: tetra_core::Error) -> Self {
        Failure::Error(e.into())
    }
}

type Outcome = Result<String, Failure>;

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(detail()))
    }
}

pub struct Check {
    pub name: &'static str,
    run: fn(&Fixtures) -> Outcome,
}

pub const CHECKS: [Check; 8] = [
    Check {
        name: "digits",
        run: check_digits,
    },
    Check {
        name: "limit-string",
        run: check_limit,
    },
    Check {
        name: "speed-profile",
        run: check_speed,
    },
    Check {
        name: "aps-table",
        run: check_aps,
    },
    Check {
        name: "phase-shift-example",
        run: check_phase_example,
    },
    Check {
        name: "unstable-digit-law",
        run: check_unstable_digit,
    },
    Check {
        name: "tenadic-constants",
        run: check_tenadic,
    },
    Check {
        name: "conjecture-sweep",
        run: check_sweep,
    },
];

fn check_digits(f: &Fixtures) -> Outcome {
    for case in &f.digits {
        let got = tetration(case.base, case.height, case.mod_digits)?.to_string();
        ensure(got == case.expected, || {
            format!(
                "^{} {} mod 10^{}: expected {}, got {got}",
                case.height, case.base, case.mod_digits, case.expected
            )
        })?;
    }
    Ok(format!("{} towers", f.digits.len()))
}

fn check_limit(f: &Fixtures) -> Outcome {
    let got = limit_digits(f.limit_base, f.limit.len())?
        .digits
        .to_string();
    ensure(got == f.limit, || {
        format!("expected {}, got {got}", f.limit)
    })?;
    Ok(format!("{} digits", f.limit.len()))
}

fn check_speed(f: &Fixtures) -> Outcome {
    let top = f.speed_max_height;
    let p = SpeedProfile::compute(3, top)?;
    ensure(p.speed_at(1) == Some(0), || {
        format!("V(3,1) = {:?}", p.speed_at(1))
    })?;
    for b in 2..=top {
        ensure(p.speed_at(b) == Some(1), || {
            format!("V(3,{b}) = {:?}", p.speed_at(b))
        })?;
        ensure(p.stable_at(b) == Some(b - 1), || {
            format!("#S(3,{b}) = {:?}", p.stable_at(b))
        })?;
    }
    ensure(p.max_precision <= f.speed_precision_budget, || {
        format!("needed {} digits of precision", p.max_precision)
    })?;
    Ok(format!("heights 1..={top}, {} digits", p.max_precision))
}

fn check_aps(f: &Fixtures) -> Outcome {
    for (base, expected) in &f.aps {
        let got = asymptotic_phase_shift(*base)?;
        ensure(&got.reduced == expected, || {
            format!("APS({base}): expected {expected:?}, got {:?}", got.reduced)
        })?;
    }
    Ok(format!("{} bases", f.aps.len()))
}

fn check_phase_example(f: &Fixtures) -> Outcome {
    let e = &f.phase_example;
    let lower = tetration(e.base, e.height, e.mod_digits)?.to_string();
    let upper = tetration(e.base, e.height + 1, e.mod_digits)?.to_string();
    ensure(lower == e.lower, || {
        format!("lower tower: expected {}, got {lower}", e.lower)
    })?;
    ensure(upper == e.upper, || {
        format!("upper tower: expected {}, got {upper}", e.upper)
    })?;
    let shift = phase_shift(e.base, e.height)?;
    ensure(shift == e.shift, || {
        format!("phase shift: expected {}, got {shift}", e.shift)
    })?;
    Ok(format!("{lower} / {upper} -> {shift}"))
}

fn check_unstable_digit(f: &Fixtures) -> Outcome {
    let (lo, hi) = f.odd_heights;
    let mut cases = 0;
    for n in (lo..=hi).filter(|n| n % 2 == 1) {
        let report = check_theorem2(n, &f.offsets)?;
        for e in &report.entries {
            ensure(e.passed(), || {
                format!(
                    "n={n}, c={}: agrees_below={} differs_at_n={}",
                    e.c, e.agrees_below, e.differs_at_n
                )
            })?;
        }
        for &c in &f.offsets {
            let d = difference_digit(3, n, n + c)?;
            ensure(d == f.odd_difference_digit, || {
                format!("n={n}, c={c}: difference digit {d}")
            })?;
            cases += 1;
        }
        let step = check_eq2(n)?;
        ensure(step == f.step_digit, || format!("n={n}: step digit {step}"))?;
    }
    let (lo, hi) = f.even_heights;
    for n in (lo..=hi).filter(|n| n % 2 == 0) {
        for &c in &f.offsets {
            let d = difference_digit(3, n, n + c)?;
            ensure(d == f.even_difference_digit, || {
                format!("n={n}, c={c}: difference digit {d}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} height pairs"))
}

fn check_tenadic(f: &Fixtures) -> Outcome {
    let k = f.tenadic_difference.len();
    let got = tenadic_constant(TenadicConstant::Difference, k)?.to_string();
    ensure(got == f.tenadic_difference, || {
        format!("expected {}, got {got}", f.tenadic_difference)
    })?;
    Ok(format!("{k} digits"))
}

fn check_sweep(f: &Fixtures) -> Outcome {
    let (lo, hi) = f.sweep;
    let records = scan(lo..=hi, ScanFilter::AllNonMult10)?;
    let bad: Vec<u64> = records
        .iter()
        .filter(|r| !r.conjecture_ok)
        .map(|r| r.base)
        .collect();
    ensure(bad.is_empty(), || {
        format!("conjecture fails for bases {bad:?}")
    })?;
    let odd_even: Vec<u64> = records
        .iter()
        .filter(|r| r.base % 2 == 0)
        .filter(|r| !EVEN_ADMISSIBLE_CYCLES.contains(&r.aps.as_slice()))
        .map(|r| r.base)
        .collect();
    ensure(odd_even.is_empty(), || {
        format!("even bases outside the admissible cycles: {odd_even:?}")
    })?;
    let mut buf = Vec::new();
    write_report(&records, ReportFormat::Csv, &mut buf)
        .map_err(|e| Failure::Mismatch(format!("report: {e}")))?;
    let mut reader = csv::Reader::from_reader(buf.as_slice());
    let rows = reader
        .records()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Mismatch(format!("report does not parse: {e}")))?;
    ensure(rows.len() == records.len(), || {
        format!(
            "report has {} rows for {} records",
            rows.len(),
            records.len()
        )
    })?;
    Ok(format!("{} bases", records.len()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

/// Runs every check, or only the named one.
pub fn run_checks(fixtures: &Fixtures, only: Option<&str>) -> Result<Vec<CheckReport>, CliError> {
    if let Some(name) = only {
        if !CHECKS.iter().any(|c| c.name == name) {
            let names: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
            return Err(CliError::Usage(format!(
                "unknown check {name:?}; expected one of {}",
                names.join(", ")
            )));
        }
    }
    let mut reports = Vec::new();
    for check in CHECKS.iter().filter(|c| only.is_none_or(|n| n == c.name)) {
        let start = Instant::now();
        let outcome = (check.run)(fixtures);
        let elapsed_ms = start.elapsed().as_millis();
        let (passed, detail) = match outcome {
            Ok(detail) => (true, detail),
            Err(Failure::Mismatch(detail)) => (false, detail),
            Err(Failure::Error(e)) if e.exit_code() == crate::EXIT_RESOURCE => return Err(e),
            Err(Failure::Error(e)) => (false, e.to_string()),
        };
        reports.push(CheckReport {
            name: check.name,
            passed,
            detail,
            elapsed_ms,
        });
    }
    Ok(reports)
}

pub fn verify_with(a: &VerifyArgs, fixtures: &Fixtures) -> Result<Output, CliError> {
    let reports = run_checks(fixtures, a.only.as_deref())?;
    let passed = reports.iter().all(|r| r.passed);
    let width = CHECKS.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut table = Table::new(["check", "passed", "elapsed_ms", "detail"]);
    let mut plain = Vec::new();
    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        plain.push(format!(
            "{status}  {:<width$}  {:>7} ms  {}",
            r.name, r.elapsed_ms, r.detail
        ));
        table.push([
            r.name.to_string(),
            r.passed.to_string(),
            r.elapsed_ms.to_string(),
            r.detail.clone(),
        ]);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    plain.push(format!("{} checks, {failed} failed", reports.len()));
    let payload = json!({"passed": passed, "checks": reports});
    Ok(Output::new("verify", a, payload)
        .plain(plain)
        .table(table)
        .failed_if(!passed))
}

pub fn verify(a: &VerifyArgs) -> Result<Output, CliError> {
    verify_with(a, &Fixtures::default())
}
