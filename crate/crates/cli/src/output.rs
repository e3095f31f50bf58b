use std::collections::BTreeMap;
use std::fmt::Write as _;

use qmwall::exactalg::{format_rational, int};
use qmwall::{InvariantQuery, InvariantResult, Rational};
use serde::{Deserialize, Serialize};

/// One unit of machine-readable output. Serialized as a JSON object tagged by
/// `command`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum OutputRecord {
    Invariant(InvariantRecord),
    Series(SeriesRecord),
    SweepSummary(SweepSummary),
    Selfcheck(SelfcheckRecord),
    Error(ErrorRecord),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryEcho {
    pub r: u32,
    pub d: i64,
    pub a: u32,
    pub w: u64,
    pub g: u32,
    pub u: [i64; 2],
}

impl From<&InvariantQuery> for QueryEcho {
    fn from(q: &InvariantQuery) -> Self {
        Self {
            r: q.r(),
            d: q.d(),
            a: q.a(),
            w: q.w(),
            g: q.g(),
            u: [q.u().u1, q.u().u2],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakdownEntry {
    pub m: u64,
    pub contribution: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub query: QueryEcho,
    pub side: String,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_decimal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<String>,
    pub breakdown: Vec<BreakdownEntry>,
    pub route: String,
    pub conjectural: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breakdowns: Option<BTreeMap<String, Vec<BreakdownEntry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_checks: Option<Vec<IdentityCheck>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub w: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub identity: String,
    pub genus: u32,
    pub order: usize,
    pub coefficients: Vec<CoefficientRow>,
    pub identity_checks: Vec<IdentityCheck>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub agree: usize,
    pub total: usize,
    pub errors: usize,
    pub conjectural: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfcheckRecord {
    pub identity_checks: Vec<IdentityCheck>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<QueryEcho>,
    pub message: String,
    pub exit_code: i32,
}

pub fn breakdown_entries(r: &InvariantResult) -> Vec<BreakdownEntry> {
    r.breakdown
        .iter()
        .map(|(m, c)| BreakdownEntry {
            m: *m,
            contribution: format_rational(c),
        })
        .collect()
}

/// Decimal rendering to `digits` places, rounded half away from zero and
/// prefixed with `~` to mark it as approximate.
pub fn decimal(x: &Rational, digits: u32) -> String {
    let scale = int(10).pow(digits as i32);
    let scaled = (x * &scale).round();
    let neg = scaled < int(0);
    let mag = scaled.numer().magnitude().to_string();
    let mag = format!("{:0>width$}", mag, width = digits as usize + 1);
    let (whole, frac) = mag.split_at(mag.len() - digits as usize);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("~{sign}{whole}")
    } else {
        format!("~{sign}{whole}.{frac}")
    }
}

fn checks_table(out: &mut String, checks: &[IdentityCheck]) {
    for c in checks {
        let verdict = if c.pass { "pass" } else { "FAIL" };
        let _ = match &c.detail {
            Some(d) if !d.is_empty() => writeln!(out, "check        {}: {verdict} ({d})", c.name),
            _ => writeln!(out, "check        {}: {verdict}", c.name),
        };
    }
}

fn breakdown_table(out: &mut String, label: &str, entries: &[BreakdownEntry]) {
    if entries.is_empty() {
        let _ = writeln!(out, "{label:<12} (none)");
    }
    for (i, e) in entries.iter().enumerate() {
        let head = if i == 0 { label } else { "" };
        let _ = writeln!(out, "{head:<12} m={}: {}", e.m, e.contribution);
    }
}

/// Plain-text rendering carrying the same fields as the JSON form.
pub fn render_table(record: &OutputRecord) -> String {
    let mut out = String::new();
    match record {
        OutputRecord::Invariant(r) => {
            let q = &r.query;
            let _ = writeln!(
                out,
                "query        r={} d={} a={} w={} g={} u=({},{})",
                q.r, q.d, q.a, q.w, q.g, q.u[0], q.u[1]
            );
            let _ = writeln!(out, "side         {}", r.side);
            let _ = writeln!(out, "route        {}", r.route);
            match &r.value_decimal {
                Some(d) => writeln!(out, "value        {} ({d})", r.value),
                None => writeln!(out, "value        {}", r.value),
            }
            .ok();
            if let Some(raw) = &r.raw {
                let _ = writeln!(out, "raw          {raw}");
            }
            let _ = writeln!(out, "conjectural  {}", r.conjectural);
            breakdown_table(&mut out, "breakdown", &r.breakdown);
            if let Some(map) = &r.breakdowns {
                for (route, entries) in map {
                    breakdown_table(&mut out, &format!("[{route}]"), entries);
                }
            }
            if let Some(checks) = &r.identity_checks {
                checks_table(&mut out, checks);
            }
        }
        OutputRecord::Series(s) => {
            let _ = writeln!(
                out,
                "identity {}  genus {}  order {}",
                s.identity, s.genus, s.order
            );
            let _ = writeln!(out, "{:>5}  {:>28}  {:>28}", "w", "lhs", "rhs");
            for row in &s.coefficients {
                let _ = writeln!(out, "{:>5}  {:>28}  {:>28}", row.w, row.lhs, row.rhs);
            }
            checks_table(&mut out, &s.identity_checks);
            let _ = writeln!(out, "{}", if s.pass { "pass" } else { "FAIL" });
        }
        OutputRecord::SweepSummary(s) => {
            let _ = writeln!(
                out,
                "{}/{} agree (errors {}, conjectural {})",
                s.agree, s.total, s.errors, s.conjectural
            );
        }
        OutputRecord::Selfcheck(s) => {
            checks_table(&mut out, &s.identity_checks);
            let _ = writeln!(out, "{}", if s.pass { "pass" } else { "FAIL" });
        }
        OutputRecord::Error(e) => {
            if let Some(q) = &e.query {
                let _ = write!(out, "r={} d={} a={} w={} g={}: ", q.r, q.d, q.a, q.w, q.g);
            }
            let _ = writeln!(out, "error (exit {}): {}", e.exit_code, e.message);
        }
    }
    out
}

fn inline_breakdown(entries: &[BreakdownEntry]) -> String {
    if entries.is_empty() {
        return "-".into();
    }
    entries
        .iter()
        .map(|e| format!("{}:{}", e.m, e.contribution))
        .collect::<Vec<_>>()
        .join(",")
}

/// One-line sweep row for table output; carries every field of the record.
pub fn render_sweep_row(record: &OutputRecord) -> String {
    match record {
        OutputRecord::Invariant(r) => {
            let q = &r.query;
            let mut line = format!(
                "r={} d={} a={} w={:<5} g={:<2} u=({},{}) side={} route={} value={}",
                q.r, q.d, q.a, q.w, q.g, q.u[0], q.u[1], r.side, r.route, r.value
            );
            if let Some(d) = &r.value_decimal {
                let _ = write!(line, " ({d})");
            }
            if let Some(raw) = &r.raw {
                let _ = write!(line, " raw={raw}");
            }
            let _ = write!(
                line,
                " conjectural={} breakdown={}",
                r.conjectural,
                inline_breakdown(&r.breakdown)
            );
            for (route, entries) in r.breakdowns.iter().flatten() {
                let _ = write!(line, " [{route}]={}", inline_breakdown(entries));
            }
            for c in r.identity_checks.iter().flatten() {
                let _ = write!(line, " {}={}", c.name, if c.pass { "pass" } else { "FAIL" });
                if let Some(d) = &c.detail {
                    let _ = write!(line, " ({d})");
                }
            }
            line.push('\n');
            line
        }
        other => render_table(other),
    }
}
