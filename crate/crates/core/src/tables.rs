//! The table of genus, unknotting number and clasp number for prime knots
//! through ten crossings, bundled PD codes, and a consistency audit.
//!
//! Table lines read `name g=G u=U c=C`, where each value is an integer or `X`
//! (meaning 2 or 3). A line `alias NEW OLD` makes `NEW` resolve to the record
//! `OLD`. PD lines read `name X[a,b,c,d] ...`. Blank lines and lines starting
//! with `#` are ignored in both files.
//!
//! Names follow Rolfsen's numbering. KnotInfo numbers the last four ten-crossing
//! knots one lower (its `10_162` is Rolfsen's `10_163`), and some older tables
//! swap `10_83` and `10_86`; see [`NameConvention`].

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::clasp::{conway_genus2_of, genus_lower_from_conway, mod8_obstruction, one_clasp_form, two_clasp_realizable};
use crate::diagram::{Diagram, PdCode};
use crate::invariants::conway;

pub const TABLE_FILE: &str = "clasp_table.txt";
pub const PD_FILE: &str = "pd_codes.txt";
pub const EXPECTED_RECORDS: usize = 249;

const BUNDLED_TABLE: &str = include_str!("../data/clasp_table.txt");
const BUNDLED_PD: &str = include_str!("../data/pd_codes.txt");

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("duplicate name {0}")]
    Duplicate(String),
    #[error("expected {EXPECTED_RECORDS} records, found {0}")]
    Count(usize),
    #[error("{name}: max(g, u) = {lower} exceeds c = {c}")]
    Inconsistent { name: String, lower: u32, c: ValueOrRange },
    #[error("alias {alias} points to unknown record {target}")]
    DanglingAlias { alias: String, target: String },
    #[error("unknown knot {name}{}", near_list(.near))]
    NotFound { name: String, near: Vec<String> },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn near_list(near: &[String]) -> String {
    if near.is_empty() {
        String::new()
    } else {
        format!("; did you mean {}?", near.join(", "))
    }
}

/// An exact value (`lo == hi`) or a range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ValueOrRange {
    pub lo: u32,
    pub hi: u32,
}

impl ValueOrRange {
    pub fn exact(v: u32) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn is_exact(self) -> bool {
        self.lo == self.hi
    }

    fn parse(s: &str) -> Option<Self> {
        if s == "X" {
            return Some(Self { lo: 2, hi: 3 });
        }
        s.parse().ok().map(Self::exact)
    }
}

impl fmt::Display for ValueOrRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (2, 3) => f.write_str("X"),
            (lo, hi) if lo == hi => write!(f, "{lo}"),
            (lo, hi) => write!(f, "{lo}..{hi}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub g: ValueOrRange,
    pub u: ValueOrRange,
    pub c: ValueOrRange,
    pub pd: Option<PdCode>,
}

impl KnotRecord {
    /// Crossing number, read from the name.
    pub fn crossings(&self) -> u32 {
        crossings_of(&self.name).expect("validated on load")
    }
}

fn crossings_of(name: &str) -> Option<u32> {
    let (cr, idx) = name.split_once('_')?;
    idx.parse::<u32>().ok().filter(|&i| i > 0)?;
    cr.parse().ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameConvention {
    Rolfsen,
    /// KnotInfo: `10_162..10_165` are Rolfsen's `10_163..10_166`.
    KnotInfo,
    /// Tables that interchange `10_83` and `10_86`.
    Swapped83And86,
}

impl NameConvention {
    /// Rolfsen name of `name` given in this convention.
    pub fn to_rolfsen(self, name: &str) -> String {
        match self {
            NameConvention::Rolfsen => name.to_string(),
            NameConvention::KnotInfo => match name.strip_prefix("10_").and_then(|i| i.parse::<u32>().ok()) {
                Some(i @ 162..=165) => format!("10_{}", i + 1),
                _ => name.to_string(),
            },
            NameConvention::Swapped83And86 => match name {
                "10_83" => "10_86".into(),
                "10_86" => "10_83".into(),
                _ => name.to_string(),
            },
        }
    }
}

/// Accepts `10_97`, `10₉₇` and `10-97`.
pub fn normalize_name(name: &str) -> String {
    const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let name = name.trim();
    if let Some(pos) = name.find(|c| SUBSCRIPTS.contains(&c)) {
        let (head, tail) = name.split_at(pos);
        let digits: String = tail
            .chars()
            .filter_map(|c| SUBSCRIPTS.iter().position(|&s| s == c))
            .map(|d| char::from(b'0' + d as u8))
            .collect();
        return format!("{head}_{digits}");
    }
    name.replace('-', "_")
}

#[derive(Debug, Clone)]
enum Line {
    Verbatim(String),
    Record(usize),
    Alias(String, String),
}

#[derive(Debug, Clone)]
pub struct Table {
    records: Vec<KnotRecord>,
    aliases: BTreeMap<String, String>,
    lines: Vec<Line>,
}

impl Table {
    /// The table and PD codes compiled into the library.
    pub fn bundled() -> &'static Table {
        static TABLE: OnceLock<Table> = OnceLock::new();
        TABLE.get_or_init(|| {
            let pd = parse_pd_codes(BUNDLED_PD).expect("bundled PD codes parse");
            Table::parse(BUNDLED_TABLE, &pd).expect("bundled table is valid")
        })
    }

    /// Loads `clasp_table.txt` and, if present, `pd_codes.txt` from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Table, TableError> {
        let read = |file: &str| {
            let path = dir.join(file);
            std::fs::read_to_string(&path).map_err(|source| TableError::Io { path: path.display().to_string(), source })
        };
        let table = read(TABLE_FILE)?;
        let pd = if dir.join(PD_FILE).exists() { parse_pd_codes(&read(PD_FILE)?)? } else { BTreeMap::new() };
        Table::parse(&table, &pd)
    }

    pub fn parse(text: &str, pd: &BTreeMap<String, PdCode>) -> Result<Table, TableError> {
        let mut records: Vec<KnotRecord> = Vec::new();
        let mut aliases = BTreeMap::new();
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                lines.push(Line::Verbatim(raw.to_string()));
                continue;
            }
            let bad = |msg: &str| TableError::Malformed { line: line_no, msg: msg.to_string() };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "alias" {
                let [_, alias, target] = fields[..] else { return Err(bad("expected `alias NEW OLD`")) };
                if aliases.insert(alias.to_string(), target.to_string()).is_some() {
                    return Err(TableError::Duplicate(alias.to_string()));
                }
                lines.push(Line::Alias(alias.to_string(), target.to_string()));
                continue;
            }
            let [name, g, u, c] = fields[..] else { return Err(bad("expected `name g=G u=U c=C`")) };
            match crossings_of(name) {
                Some(3..=10) => {}
                _ => return Err(bad(&format!("`{name}` is not a knot name with 3 to 10 crossings"))),
            }
            let value = |field: &str, key: &str| {
                field
                    .strip_prefix(key)
                    .and_then(|v| v.strip_prefix('='))
                    .and_then(ValueOrRange::parse)
                    .ok_or_else(|| bad(&format!("bad `{key}` field `{field}`")))
            };
            let record = KnotRecord {
                name: name.to_string(),
                g: value(g, "g")?,
                u: value(u, "u")?,
                c: value(c, "c")?,
                pd: pd.get(name).cloned(),
            };
            let lower = record.g.lo.max(record.u.lo);
            if lower > record.c.hi {
                return Err(TableError::Inconsistent { name: record.name, lower, c: record.c });
            }
            if records.iter().any(|r| r.name == record.name) {
                return Err(TableError::Duplicate(record.name));
            }
            lines.push(Line::Record(records.len()));
            records.push(record);
        }
        for (alias, target) in &aliases {
            if records.iter().any(|r| &r.name == alias) {
                return Err(TableError::Duplicate(alias.clone()));
            }
            if !records.iter().any(|r| &r.name == target) {
                return Err(TableError::DanglingAlias { alias: alias.clone(), target: target.clone() });
            }
        }
        if records.len() != EXPECTED_RECORDS {
            return Err(TableError::Count(records.len()));
        }
        Ok(Table { records, aliases, lines })
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn aliases(&self) -> &BTreeMap<String, String> {
        &self.aliases
    }

    /// Finds a record by Rolfsen name (aliases included).
    pub fn lookup(&self, name: &str) -> Result<&KnotRecord, TableError> {
        self.lookup_in(name, NameConvention::Rolfsen)
    }

    pub fn lookup_in(&self, name: &str, convention: NameConvention) -> Result<&KnotRecord, TableError> {
        let name = convention.to_rolfsen(&normalize_name(name));
        let target = self.aliases.get(&name).unwrap_or(&name);
        self.records
            .iter()
            .find(|r| &r.name == target)
            .ok_or_else(|| TableError::NotFound { near: self.near_matches(&name), name })
    }

    fn near_matches(&self, name: &str) -> Vec<String> {
        let Some((cr, idx)) = name.split_once('_') else { return Vec::new() };
        let Ok(idx) = idx.parse::<i64>() else { return Vec::new() };
        self.records
            .iter()
            .filter_map(|r| {
                let (rc, ri) = r.name.split_once('_')?;
                let ri: i64 = ri.parse().ok()?;
                (rc == cr && (ri - idx).abs() <= 1).then(|| r.name.clone())
            })
            .collect()
    }

    /// Renders the table in its file format; comments and line order are kept.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            match line {
                Line::Verbatim(s) => out.push_str(s),
                Line::Record(i) => {
                    let r = &self.records[*i];
                    out.push_str(&format!("{} g={} u={} c={}", r.name, r.g, r.u, r.c));
                }
                Line::Alias(alias, target) => out.push_str(&format!("alias {alias} {target}")),
            }
            out.push('\n');
        }
        out
    }
}

pub fn parse_pd_codes(text: &str) -> Result<BTreeMap<String, PdCode>, TableError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, code) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let pd = PdCode::parse(code).map_err(|e| TableError::Malformed { line: i + 1, msg: e.to_string() })?;
        if out.insert(name.to_string(), pd).is_some() {
            return Err(TableError::Duplicate(name.to_string()));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Pass,
    Fail,
    /// Needs a PD code the record lacks, or does not apply.
    Skipped,
}

impl Check {
    fn from(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub name: String,
    pub crossings: u32,
    pub g: ValueOrRange,
    pub u: ValueOrRange,
    pub c: ValueOrRange,
    pub conway: Option<String>,
    pub genus_from_conway: Option<u32>,
    pub mod8_fires: Option<bool>,
    pub two_clasp_realizable: Option<bool>,
    /// `deg ∇ / 2 ≤ g`.
    pub genus_bound: Check,
    /// Congruence obstruction firing implies `c ≥ 3`.
    pub obstruction: Check,
    /// `c ≤ 2` implies a two-clasp witness (and `c ≤ 1` a one-clasp form).
    pub realizability: Check,
    /// `c ≤ ⌊(cr − 1)/2⌋`.
    pub crossing_bound: Check,
    /// `max(g, u) ≤ c`.
    pub shibuya: Check,
    /// Failed checks, worded as candidates for a table discrepancy.
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Rows with exact values and `max(g, u) < c`.
    pub strict: Vec<String>,
    /// Rows where ranges leave `max(g, u) < c` possible but unsettled.
    pub undetermined: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub records: usize,
    pub with_pd: usize,
    pub passed: usize,
    pub failed: usize,
    pub census: Census,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// One line per record with the table columns followed by computed ones.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "name,g,u,c,crossings,conway,genus_from_conway,mod8_fires,two_clasp_realizable,genus_bound,obstruction,realizability,crossing_bound,shibuya\n",
        );
        let opt = |v: Option<String>| v.unwrap_or_default();
        let chk = |c: Check| match c {
            Check::Pass => "pass",
            Check::Fail => "fail",
            Check::Skipped => "skipped",
        };
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.name,
                r.g,
                r.u,
                r.c,
                r.crossings,
                opt(r.conway.clone()),
                opt(r.genus_from_conway.map(|v| v.to_string())),
                opt(r.mod8_fires.map(|v| v.to_string())),
                opt(r.two_clasp_realizable.map(|v| v.to_string())),
                chk(r.genus_bound),
                chk(r.obstruction),
                chk(r.realizability),
                chk(r.crossing_bound),
                chk(r.shibuya),
            ));
        }
        out
    }
}

pub fn audit_record(r: &KnotRecord) -> AuditRow {
    let cr = r.crossings();
    let shibuya = Check::from(r.g.lo.max(r.u.lo) <= r.c.hi);
    let crossing_bound = Check::from(r.c.hi <= (cr - 1) / 2);
    let mut row = AuditRow {
        name: r.name.clone(),
        crossings: cr,
        g: r.g,
        u: r.u,
        c: r.c,
        conway: None,
        genus_from_conway: None,
        mod8_fires: None,
        two_clasp_realizable: None,
        genus_bound: Check::Skipped,
        obstruction: Check::Skipped,
        realizability: Check::Skipped,
        crossing_bound,
        shibuya,
        flags: Vec::new(),
    };
    let computed = r
        .pd
        .as_ref()
        .map(|pd| Diagram::orient(pd).map_err(|e| e.to_string()).and_then(|d| conway(&d).map_err(|e| e.to_string())));
    match computed {
        None => {}
        Some(Err(e)) => {
            row.genus_bound = Check::Fail;
            row.flags.push(format!("PD code unusable: {e}"));
        }
        Some(Ok(nabla)) => {
            let g = genus_lower_from_conway(&nabla).ok();
            row.conway = Some(nabla.render("z"));
            row.genus_from_conway = g;
            row.genus_bound = Check::from(g.is_some_and(|g| g <= r.g.hi));
            let shape = conway_genus2_of(&nabla).ok();
            row.mod8_fires = shape.map(mod8_obstruction);
            row.two_clasp_realizable = shape.map(|s| two_clasp_realizable(s).is_some());
            row.obstruction = match row.mod8_fires {
                Some(true) => Check::from(r.c.lo >= 3),
                _ => Check::Pass,
            };
            row.realizability = if r.c.hi <= 2 {
                let one_ok = r.c.hi > 1 || one_clasp_form(&nabla).is_some();
                Check::from(row.two_clasp_realizable == Some(true) && one_ok)
            } else {
                Check::Skipped
            };
        }
    }
    let checks = [
        ("genus bound deg/2 <= g", row.genus_bound),
        ("congruence obstruction vs c", row.obstruction),
        ("two-clasp realizability vs c", row.realizability),
        ("c <= (cr-1)/2", row.crossing_bound),
        ("max(g,u) <= c", row.shibuya),
    ];
    for (what, c) in checks {
        if c == Check::Fail {
            row.flags.push(format!("table/paper discrepancy candidate: {what}"));
        }
    }
    row
}

pub fn audit(table: &Table) -> AuditReport {
    let rows = audit_rows(table.records());
    let failed = rows.iter().filter(|r| !r.flags.is_empty()).count();
    AuditReport {
        records: rows.len(),
        with_pd: table.records().iter().filter(|r| r.pd.is_some()).count(),
        passed: rows.len() - failed,
        failed,
        census: equality_census(table.records()),
        rows,
    }
}

#[cfg(feature = "parallel")]
fn audit_rows(records: &[KnotRecord]) -> Vec<AuditRow> {
    use rayon::prelude::*;
    records.par_iter().map(audit_record).collect()
}

#[cfg(not(feature = "parallel"))]
fn audit_rows(records: &[KnotRecord]) -> Vec<AuditRow> {
    records.iter().map(audit_record).collect()
}

/// Rows where `max(g, u) < c`.
pub fn equality_census(records: &[KnotRecord]) -> Census {
    let mut census = Census::default();
    for r in records {
        if r.g.hi.max(r.u.hi) < r.c.lo {
            if r.g.is_exact() && r.u.is_exact() && r.c.is_exact() {
                census.strict.push(r.name.clone());
            } else {
                census.undetermined.push(r.name.clone());
            }
        } else if r.g.lo.max(r.u.lo) < r.c.hi {
            census.undetermined.push(r.name.clone());
        }
    }
    census
}
