//! One function per subcommand, each wrapping one library operation.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};
use tetra_core::graham::{
    check_eq2, check_theorem2, graham_last_digits, slog as slog_of, GRAHAM_FACTS,
};
use tetra_core::phase_shift::{format_cycle, phase_shift_any};
use tetra_core::scanner::{write_report, ReportFormat};
use tetra_core::{
    asymptotic_phase_shift, congruence_speed, constant_speed, difference_digit, emit_report,
    limit_digits, modpow as modpow_of, padic_valuation, stable_digits, tenadic_constant,
    tetration_mod, BigExponent, Height, Modulus, SpeedProfile, TenadicConstant, TowerSpec,
};

use crate::args::*;
use crate::output::{Output, Table};
use crate::CliError;

fn parse_big(flag: &str, s: &str) -> Result<BigUint, CliError> {
    s.parse::<BigUint>().map_err(|_| {
        CliError::Usage(format!(
            "--{flag} {s:?} is not a nonnegative decimal integer"
        ))
    })
}

pub fn digits(a: &DigitsArgs) -> Result<Output, CliError> {
    let spec = match a.height.0 {
        Height::Finite(b) => TowerSpec::new(a.base, b)?,
        Height::Limit => TowerSpec::limit(a.base)?,
    };
    let m = match (a.mod_digits, a.height.0) {
        (Some(m), _) => m,
        (None, Height::Finite(b)) => usize::try_from(b.saturating_add(2)).unwrap_or(usize::MAX),
        (None, Height::Limit) => {
            return Err(CliError::Usage(
                "--mod-digits is required with --height inf".into(),
            ))
        }
    };
    let r = tetration_mod(&spec, m)?;
    let mut payload = json!({
        "base": a.base,
        "height": a.height,
        "mod_digits": m,
        "digits": r.to_string(),
    });
    let mut header = vec!["base", "height", "mod_digits", "digits"];
    let mut row = vec![
        a.base.to_string(),
        a.height.to_string(),
        m.to_string(),
        r.to_string(),
    ];
    let mut line = r.to_string();
    if let Some(p) = a.position {
        let d = r.digit_at(p)?;
        payload["position"] = json!(p);
        payload["digit"] = json!(d);
        header.extend(["position", "digit"]);
        row.extend([p.to_string(), d.to_string()]);
        line = d.to_string();
    }
    let mut table = Table::new(header);
    table.push(row);
    Ok(Output::new("digits", a, payload).plain([line]).table(table))
}

pub fn speed(a: &SpeedArgs) -> Result<Output, CliError> {
    if let Some(b) = a.height {
        let v = congruence_speed(a.base, b)?;
        let s = stable_digits(a.base, b)?;
        let payload = json!({"base": a.base, "height": b, "speed": v, "stable_digits": s});
        let mut table = Table::new(["base", "height", "speed", "stable_digits"]);
        table.push([a.base, b, v, s]);
        return Ok(Output::new("speed", a, payload)
            .plain([format!("speed: {v}"), format!("stable_digits: {s}")])
            .table(table));
    }
    let profile = SpeedProfile::compute(a.base, a.max_height.unwrap_or(1))?;
    let mut table = Table::new(["height", "speed", "stable_digits"]);
    let mut rows = Vec::new();
    for (&(b, v), &s) in profile.per_height.iter().zip(&profile.stable_digits) {
        table.push([b, v, s]);
        rows.push(json!({"height": b, "speed": v, "stable_digits": s}));
    }
    let mut plain = vec![
        format!("base: {}", profile.base),
        format!("constant_speed: {}", profile.constant_speed),
        format!("onset: {}", profile.onset),
        "height speed stable_digits".to_string(),
    ];
    plain.extend(table.rows.iter().map(|r| r.join(" ")));
    let payload = json!({
        "base": profile.base,
        "constant_speed": profile.constant_speed,
        "onset": profile.onset,
        "max_precision": profile.max_precision,
        "profile": rows,
    });
    Ok(Output::new("speed", a, payload).plain(plain).table(table))
}

pub fn aps(a: &ApsArgs) -> Result<Output, CliError> {
    if let Some(b) = a.height {
        let shift = phase_shift_any(a.base, b)?;
        let payload = json!({"base": a.base, "height": b, "phase_shift": shift});
        return Ok(Output::new("aps", a, payload).plain([shift.to_string()]));
    }
    let cycle = asymptotic_phase_shift(a.base)?;
    let (v, onset) = constant_speed(a.base)?;
    let payload = json!({
        "base": a.base,
        "aps": cycle.reduced,
        "cycle": cycle.cycle,
        "onset": onset,
        "constant_speed": v,
        "anomalies": cycle.violations(),
    });
    let mut table = Table::new(["base", "aps", "cycle", "onset", "constant_speed"]);
    table.push([
        a.base.to_string(),
        format_cycle(&cycle.reduced),
        format_cycle(&cycle.cycle),
        onset.to_string(),
        v.to_string(),
    ]);
    Ok(Output::new("aps", a, payload)
        .plain([cycle.to_string()])
        .table(table))
}

pub fn limit(a: &LimitArgs) -> Result<Output, CliError> {
    let tail = limit_digits(a.base, a.mod_digits)?;
    let digits = tail.digits.to_string();
    let payload = json!({"base": a.base, "mod_digits": a.mod_digits, "digits": digits});
    Ok(Output::new("limit", a, payload).plain([digits]))
}

pub fn diff(a: &DiffArgs) -> Result<Output, CliError> {
    let d = difference_digit(a.base, a.height, a.upper)?;
    let payload = json!({"base": a.base, "height": a.height, "upper": a.upper, "digit": d});
    Ok(Output::new("diff", a, payload).plain([d.to_string()]))
}

pub fn slog(a: &SlogArgs) -> Result<Output, CliError> {
    let x = parse_big("value", &a.value)?;
    let k = slog_of(a.base, &x)?;
    let payload = json!({"base": a.base, "value": a.value, "slog": k});
    let line = k.map_or_else(|| "undefined".to_string(), |k| k.to_string());
    Ok(Output::new("slog", a, payload).plain([line]))
}

fn csv_table(text: &str) -> Table {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    let mut rows = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect::<Vec<_>>()));
    let header = rows.next().and_then(Result::ok).unwrap_or_default();
    Table {
        header,
        rows: rows.filter_map(Result::ok).collect(),
    }
}

pub fn scan(a: &ScanArgs, format: Format) -> Result<Output, CliError> {
    if a.from > a.to {
        return Err(CliError::Usage(format!(
            "--from {} exceeds --to {}",
            a.from, a.to
        )));
    }
    let records = tetra_core::scan(a.from..=a.to, a.filter)?;
    let violations = records.iter().filter(|r| !r.conjecture_ok).count();
    let unprofiled = records
        .iter()
        .filter(|r| r.constant_speed.is_none())
        .count();
    let mut payload = Map::new();
    payload.insert("records".into(), json!(records.len()));
    payload.insert("conjecture_violations".into(), json!(violations));
    payload.insert("unprofiled".into(), json!(unprofiled));

    if let Some(path) = &a.out {
        let kind = match a.report {
            ReportKind::Csv => ReportFormat::Csv,
            ReportKind::Jsonl => ReportFormat::Jsonl,
        };
        emit_report(&records, kind, path)?;
        payload.insert("report".into(), json!(path));
        let plain = vec![
            format!("records: {}", records.len()),
            format!("conjecture_violations: {violations}"),
            format!("unprofiled: {unprofiled}"),
            format!("report: {}", path.display()),
        ];
        return Ok(Output::new("scan", a, Value::Object(payload)).plain(plain));
    }

    let mut out = Output::new("scan", a, Value::Null);
    if format == Format::Json {
        payload.insert(
            "rows".into(),
            serde_json::to_value(&records).expect("records serialize"),
        );
    } else {
        let mut buf = Vec::new();
        write_report(&records, ReportFormat::Csv, &mut buf).expect("in-memory write");
        let text = String::from_utf8(buf).expect("csv is utf-8");
        out = out
            .plain(text.lines().map(str::to_string))
            .table(csv_table(&text));
    }
    out.envelope.payload = Value::Object(payload);
    Ok(out)
}

fn constant_name(which: TenadicConstant) -> String {
    match serde_json::to_value(which) {
        Ok(Value::String(s)) => s,
        _ => format!("{which:?}"),
    }
}

pub fn constants(a: &ConstantsArgs) -> Result<Output, CliError> {
    let which: Vec<TenadicConstant> = match a.which {
        Some(w) => vec![w],
        None => vec![
            TenadicConstant::FivePowTwoTower,
            TenadicConstant::TwoPowFiveTower,
            TenadicConstant::Difference,
        ],
    };
    let mut map = Map::new();
    let mut table = Table::new(["constant", "digits"]);
    let mut plain = Vec::new();
    for w in &which {
        let digits = tenadic_constant(*w, a.mod_digits)?.to_string();
        let name = constant_name(*w);
        plain.push(if which.len() == 1 {
            digits.clone()
        } else {
            format!("{name}: {digits}")
        });
        table.push([name.clone(), digits.clone()]);
        map.insert(name, json!(digits));
    }
    let payload = json!({"mod_digits": a.mod_digits, "constants": map});
    Ok(Output::new("constants", a, payload)
        .plain(plain)
        .table(table))
}

pub fn graham(a: &GrahamArgs) -> Result<Output, CliError> {
    let facts = GRAHAM_FACTS;
    if let Some(n) = a.height {
        let report = check_theorem2(n, &a.c)?;
        let step = check_eq2(n)?;
        let expected_step = (10 - facts.unstable_digit_diff) % 10;
        let diffs =
            a.c.iter()
                .map(|&c| difference_digit(3, n, n + c))
                .collect::<Result<Vec<_>, _>>()?;
        let diffs_ok = diffs.iter().all(|&d| d == facts.unstable_digit_diff);
        let passed = report.passed() && step == expected_step && diffs_ok;
        let mut table = Table::new(["c", "agrees_below", "differs_at_n", "difference_digit"]);
        let mut plain = vec![format!("n: {n}")];
        for (e, d) in report.entries.iter().zip(&diffs) {
            table.push([
                e.c.to_string(),
                e.agrees_below.to_string(),
                e.differs_at_n.to_string(),
                d.to_string(),
            ]);
            plain.push(format!(
                "c={}: agrees_below={} differs_at_n={} difference_digit={d}",
                e.c, e.agrees_below, e.differs_at_n
            ));
        }
        plain.push(format!("step_digit: {step}"));
        plain.push(format!("passed: {passed}"));
        let payload = json!({
            "n": n,
            "entries": report.entries,
            "difference_digits": diffs,
            "step_digit": step,
            "passed": passed,
        });
        return Ok(Output::new("graham", a, payload)
            .plain(plain)
            .table(table)
            .failed_if(!passed));
    }
    let mut payload = json!({"facts": facts});
    let mut plain = vec![
        format!("slog_is_odd: {}", facts.slog_is_odd),
        format!("slog_greater_than: {}", facts.slog_lower_bound_exclusive),
        format!("stable_digit_offset: {}", facts.stable_digit_offset),
        format!("unstable_digit_diff: {}", facts.unstable_digit_diff),
    ];
    if let Some(k) = a.mod_digits {
        let digits = graham_last_digits(k)?.to_string();
        plain.push(format!("last_digits: {digits}"));
        payload["last_digits"] = json!(digits);
    }
    Ok(Output::new("graham", a, payload).plain(plain))
}

pub fn modpow(a: &ModpowArgs) -> Result<Output, CliError> {
    let base = parse_big("base", &a.base)?;
    let exponent = parse_big("exponent", &a.exponent)?;
    let m = u32::try_from(a.mod_digits)
        .map_err(|_| CliError::Resource(format!("--mod-digits {} is too large", a.mod_digits)))?;
    let r = modpow_of(&base, &BigExponent::exact(exponent), Modulus::pow10(m))?;
    let payload = json!({"mod_digits": a.mod_digits, "digits": r.to_string()});
    Ok(Output::new("modpow", a, payload).plain([r.to_string()]))
}

pub fn valuation(a: &ValuationArgs) -> Result<Output, CliError> {
    let v = padic_valuation(a.prime, a.value)?;
    let payload = json!({"prime": a.prime, "value": a.value.to_string(), "valuation": v});
    Ok(Output::new("valuation", a, payload).plain([v.to_string()]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits_args(base: u64, height: &str, m: Option<usize>) -> DigitsArgs {
        DigitsArgs {
            base,
            height: height.parse().unwrap(),
            mod_digits: m,
            position: None,
        }
    }

    #[test]
    fn digits_examples() {
        let out = digits(&digits_args(3, "3", Some(3))).unwrap();
        assert_eq!(out.plain, ["987"]);
        let out = digits(&digits_args(5, "4", Some(11))).unwrap();
        assert_eq!(out.plain, ["68408203125"]);
        let out = digits(&digits_args(3, "1", Some(5))).unwrap();
        assert_eq!(out.plain, ["00003"]);
    }

    #[test]
    fn digits_default_width_is_height_plus_two() {
        let out = digits(&digits_args(3, "4", None)).unwrap();
        assert_eq!(out.plain, ["739387"]);
        assert!(digits(&digits_args(3, "inf", None)).is_err());
        let out = digits(&digits_args(3, "inf", Some(6))).unwrap();
        assert_eq!(out.plain, ["195387"]);
    }

    #[test]
    fn slog_prints_undefined() {
        let a = SlogArgs {
            base: 3,
            value: "7625597484987".into(),
        };
        assert_eq!(slog(&a).unwrap().plain, ["3"]);
        let a = SlogArgs {
            base: 3,
            value: "28".into(),
        };
        assert_eq!(slog(&a).unwrap().plain, ["undefined"]);
        let a = SlogArgs {
            base: 3,
            value: "x".into(),
        };
        assert_eq!(slog(&a).unwrap_err().exit_code(), crate::EXIT_USAGE);
    }

    #[test]
    fn scan_stdout_csv_matches_table() {
        let a = ScanArgs {
            from: 9,
            to: 9,
            filter: tetra_core::ScanFilter::AllNonMult10,
            out: None,
            report: ReportKind::Csv,
        };
        let out = scan(&a, Format::Csv).unwrap();
        let text = out.render(Format::Csv);
        assert_eq!(text, out.render(Format::Plain));
        assert!(text.starts_with("base,V,onset,aps,conjecture_ok,note\n9,"));
        assert!(text.ends_with(",2,true,\n"));
    }
}
