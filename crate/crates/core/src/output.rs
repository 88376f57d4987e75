//! CSV and JSON emission of aggregate rows.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, OutputFormat};
use crate::error::{Error, Result};
use crate::runner::AggregateRecord;

pub const CSV_COLUMNS: [&str; 11] = [
    "algorithm",
    "alpha",
    "turn",
    "repetitions",
    "regret_occupancy_mean",
    "regret_occupancy_std",
    "regret_literal_mean",
    "regret_literal_std",
    "reward_mean",
    "loss_mean",
    "seed_base",
];

/// Formats `v` with six significant digits, `%g` style: trailing zeros are
/// trimmed and exponents below -5 or above 5 switch to scientific notation.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_owned();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.5e}", v);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let body = if (-5..6).contains(&exp) {
        let point = exp + 1;
        let s = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else {
            let (int, frac) = digits.split_at(point as usize);
            format!("{int}.{frac}")
        };
        trim_fraction(&s).to_owned()
    } else {
        let (head, tail) = digits.split_at(1);
        let m = trim_fraction(&format!("{head}.{tail}")).to_owned();
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_row(r: &AggregateRecord) -> [String; 11] {
    [
        r.algorithm.name().to_owned(),
        format_sig6(r.alpha),
        r.turn.to_string(),
        r.repetitions.to_string(),
        format_sig6(r.regret_occupancy_mean),
        format_sig6(r.regret_occupancy_std),
        format_sig6(r.regret_literal_mean),
        format_sig6(r.regret_literal_std),
        format_sig6(r.reward_mean),
        format_sig6(r.loss_mean),
        r.seed_base.to_string(),
    ]
}

pub fn to_csv_string(records: &[AggregateRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for r in records {
        w.write_record(csv_row(r)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

#[derive(Serialize, Deserialize)]
struct JsonReport<'a> {
    config: std::borrow::Cow<'a, ExperimentConfig>,
    records: std::borrow::Cow<'a, [AggregateRecord]>,
}

pub fn to_json_string(records: &[AggregateRecord], config: &ExperimentConfig) -> String {
    let report = JsonReport {
        config: std::borrow::Cow::Borrowed(config),
        records: std::borrow::Cow::Borrowed(records),
    };
    let mut s = serde_json::to_string_pretty(&report).expect("records serialize");
    s.push('\n');
    s
}

/// Writes `records` to `path`. The JSON form also carries the full config.
pub fn emit_results(
    records: &[AggregateRecord],
    config: &ExperimentConfig,
    format: OutputFormat,
    path: &Path,
) -> Result<()> {
    if records.is_empty() {
        return Err(Error::config("no records to write"));
    }
    let body = match format {
        OutputFormat::Csv => to_csv_string(records),
        OutputFormat::Json => to_json_string(records, config),
    };
    let write_err = |source| Error::Write {
        path: path.to_owned(),
        source,
    };
    let mut out = BufWriter::new(File::create(path).map_err(write_err)?);
    out.write_all(body.as_bytes()).map_err(write_err)?;
    out.flush().map_err(write_err)
}

pub fn parse_csv(text: &str) -> Result<Vec<AggregateRecord>> {
    let parse_err = |message: String| Error::Parse {
        path: "<csv>".into(),
        message,
    };
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| parse_err(e.to_string()))?;
    if header.iter().ne(CSV_COLUMNS) {
        return Err(parse_err(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| parse_err(e.to_string()))?;
        let f = |i: usize| -> Result<f64> {
            row[i].parse().map_err(|_| {
                parse_err(format!(
                    "column {} not numeric: {:?}",
                    CSV_COLUMNS[i], &row[i]
                ))
            })
        };
        let u = |i: usize| -> Result<u64> {
            row[i].parse().map_err(|_| {
                parse_err(format!(
                    "column {} not an integer: {:?}",
                    CSV_COLUMNS[i], &row[i]
                ))
            })
        };
        out.push(AggregateRecord {
            algorithm: row[0].parse()?,
            alpha: f(1)?,
            turn: u(2)? as usize,
            repetitions: u(3)? as usize,
            regret_occupancy_mean: f(4)?,
            regret_occupancy_std: f(5)?,
            regret_literal_mean: f(6)?,
            regret_literal_std: f(7)?,
            reward_mean: f(8)?,
            loss_mean: f(9)?,
            seed_base: u(10)?,
        });
    }
    Ok(out)
}

pub fn read_csv(path: &Path) -> Result<Vec<AggregateRecord>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_owned(),
        source,
    })?;
    parse_csv(&text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse {
            path: path.to_owned(),
            message,
        },
        other => other,
    })
}
