//! Batch replay of table rows `(group, {m, n}, χ, YES/NO)`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{verify_triple_with, verify_witness, Rule, SearchConfig, Status, Verdict};
use crate::arith::{euler_characteristic, parse_signed_expr, two_prime_form, OrderPair, TwoPrimeForm};
use crate::catalog::{normalize_name, CertifiedGroup};
use crate::error::{Error, Result};
use crate::perm::ClassData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expected {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO")]
    No,
}

impl Expected {
    fn status(self) -> Status {
        match self {
            Expected::Yes => Status::ProvenYes,
            Expected::No => Status::ProvenNo,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub group: String,
    pub m: u64,
    pub n: u64,
    pub expected_chi: Option<String>,
    pub expected: Expected,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RowsFile {
    pub rows: Vec<TableRow>,
}

pub fn load_rows(path: impl AsRef<Path>) -> Result<Vec<TableRow>> {
    parse_rows(&fs::read_to_string(path)?)
}

/// Parses a row file and checks each expected χ is a well-formed expression.
pub fn parse_rows(json: &str) -> Result<Vec<TableRow>> {
    let file: RowsFile = serde_json::from_str(json)?;
    let mut problems = Vec::new();
    for (i, r) in file.rows.iter().enumerate() {
        if r.m < 2 || r.n < 2 {
            problems.push(format!("row {i}: element orders must be at least 2"));
        }
        if let Some(e) = &r.expected_chi {
            if let Err(err) = parse_signed_expr(e) {
                problems.push(format!("row {i}: {err}"));
            }
        }
    }
    if problems.is_empty() {
        Ok(file.rows)
    } else {
        Err(Error::Precondition(problems.join("; ")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub row: TableRow,
    pub outcome: Outcome,
    pub chi: Option<String>,
    pub chi_matches: Option<bool>,
    pub two_prime_form: Option<TwoPrimeForm>,
    pub status: Option<Status>,
    pub refutation_rule: Option<Rule>,
    pub witness_valid: Option<bool>,
    /// Why the row failed or was skipped.
    pub reasons: Vec<String>,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
    pub summary: Summary,
}

impl TableReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One line per row in the layout `group  {m,n}  χ`, followed by the verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<22} {:<9} {:<14} {:<4} {:<14} {:<26} outcome",
            "group", "{m,n}", "chi", "exp", "status", "rule"
        );
        for r in &self.rows {
            let pair = format!("{{{},{}}}", r.row.m, r.row.n);
            let status = r.status.map(status_text).unwrap_or("-");
            let rule = r.refutation_rule.map(rule_text).unwrap_or("-");
            let expected = match r.row.expected {
                Expected::Yes => "YES",
                Expected::No => "NO",
            };
            let outcome = match r.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Skipped => "SKIPPED",
            };
            let _ = writeln!(
                out,
                "{:<22} {:<9} {:<14} {:<4} {:<14} {:<26} {}",
                r.row.group,
                pair,
                r.chi.as_deref().unwrap_or("-"),
                expected,
                status,
                rule,
                outcome
            );
            for reason in &r.reasons {
                let _ = writeln!(out, "    {reason}");
            }
        }
        let s = self.summary;
        let _ = writeln!(out, "{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
        out
    }
}

pub fn status_text(s: Status) -> &'static str {
    match s {
        Status::ProvenYes => "PROVEN_YES",
        Status::ProvenNo => "PROVEN_NO",
        Status::Inconclusive => "INCONCLUSIVE",
    }
}

pub fn rule_text(r: Rule) -> &'static str {
    match r {
        Rule::CycleBound => "cycle-bound",
        Rule::ZeroStructureConstants => "zero-structure-constants",
        Rule::ExhaustedSearch => "exhausted-search",
        Rule::CosetParity => "coset-parity",
        Rule::NonSplitOrder2 => "non-split-order-2",
    }
}

struct Resolved {
    group: CertifiedGroup,
    classes: Option<ClassData>,
}

/// Runs every row. Groups that `resolve` reports as unknown are skipped;
/// any other resolution error fails the row.
pub fn run_tables(
    rows: &[TableRow],
    resolve: &dyn Fn(&str) -> Result<CertifiedGroup>,
    config: &SearchConfig,
) -> TableReport {
    let mut cache: HashMap<String, Resolved> = HashMap::new();
    let mut reports = Vec::new();
    for row in rows {
        let key = normalize_name(&row.group);
        if !cache.contains_key(&key) {
            match resolve(&row.group) {
                Ok(group) => {
                    let classes = match group.group.order_u64() {
                        Some(o) if o <= config.budgets.element_budget => ClassData::compute(&group.group, o).ok(),
                        _ => None,
                    };
                    cache.insert(key.clone(), Resolved { group, classes });
                }
                Err(Error::UnknownGroup(name)) => {
                    reports.push(failed(
                        row,
                        Outcome::Skipped,
                        format!("group {name:?} is not in the catalog"),
                    ));
                    continue;
                }
                Err(e) => {
                    reports.push(failed(row, Outcome::Fail, e.to_string()));
                    continue;
                }
            }
        }
        let r = &cache[&key];
        reports.push(run_row(row, r, config));
    }
    let mut summary = Summary::default();
    for r in &reports {
        match r.outcome {
            Outcome::Pass => summary.pass += 1,
            Outcome::Fail => summary.fail += 1,
            Outcome::Skipped => summary.skipped += 1,
        }
    }
    TableReport { rows: reports, summary }
}

fn failed(row: &TableRow, outcome: Outcome, reason: String) -> RowReport {
    RowReport {
        row: row.clone(),
        outcome,
        chi: None,
        chi_matches: None,
        two_prime_form: None,
        status: None,
        refutation_rule: None,
        witness_valid: None,
        reasons: vec![reason],
        verdict: None,
    }
}

fn run_row(row: &TableRow, r: &Resolved, config: &SearchConfig) -> RowReport {
    let pair = match OrderPair::new(row.m, row.n) {
        Ok(p) => p,
        Err(e) => return failed(row, Outcome::Fail, e.to_string()),
    };
    let euler = euler_characteristic(r.group.group.order(), pair);
    let mut reasons = Vec::new();
    let chi_matches = match &row.expected_chi {
        None => None,
        Some(e) => {
            let ok = match (parse_signed_expr(e), euler.chi_integer()) {
                (Ok(expected), Some(actual)) => expected == actual,
                _ => false,
            };
            if !ok {
                reasons.push(format!("expected chi {e}, computed {}", euler.expr()));
            }
            Some(ok)
        }
    };
    let expected_form = row
        .expected_chi
        .as_deref()
        .and_then(|e| parse_signed_expr(e).ok())
        .filter(|x: &BigInt| x != &BigInt::from(0))
        .and_then(|x| two_prime_form(&x).ok().flatten());
    if row.expected == Expected::Yes && row.expected_chi.is_some() && expected_form != euler.two_prime_form {
        reasons.push("two-prime form differs from the expected value".into());
    }

    let verdict = match verify_triple_with(&r.group, row.m, row.n, config, r.classes.as_ref()) {
        Ok(v) => v,
        Err(e) => {
            let mut rep = failed(row, Outcome::Fail, e.to_string());
            rep.chi = Some(euler.expr());
            return rep;
        }
    };
    if verdict.status != row.expected.status() {
        reasons.push(format!(
            "expected {}, got {}",
            status_text(row.expected.status()),
            status_text(verdict.status)
        ));
    }
    let witness_valid = verdict.witness.as_ref().map(|w| {
        verify_witness(&r.group.group, row.m, row.n, w)
            .map(|c| c.valid)
            .unwrap_or(false)
    });
    if witness_valid == Some(false) {
        reasons.push("witness failed independent verification".into());
    }
    RowReport {
        row: row.clone(),
        outcome: if reasons.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail
        },
        chi: Some(euler.expr()),
        chi_matches,
        two_prime_form: euler.two_prime_form,
        status: Some(verdict.status),
        refutation_rule: verdict.refutation_rule,
        witness_valid,
        reasons,
        verdict: Some(verdict),
    }
}
