//! `knotclasp`: batch JSON/CSV reports over the knot-clasp library.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
//! input. Failures are printed as JSON on stdout as well as a one-line
//! message on stderr.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knot_clasp::clasp::{
    clasp_lower_from_conway, conway_genus2_of, mod8_obstruction, two_clasp_oracle, two_clasp_realizable, BoundRule,
    ConwayGenus2, TwoClaspWitness,
};
use knot_clasp::diagram::parse_dt;
use knot_clasp::family::{family_report, EngineLimits, FamilyCheck};
use knot_clasp::invariants::{alexander, conway, jones};
use knot_clasp::tables::{audit, Table};
use knot_clasp::{Diagram, PdCode};
use serde::Serialize;
use serde_json::{json, Value};

const DATA_ENV: &str = "KNOTCLASP_DATA";

#[derive(Parser)]
#[command(name = "knotclasp", version, about = "Knot polynomials, clasp-number obstructions and the K_n family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conway, Alexander and Jones polynomials, Seifert genus and writhe of one diagram.
    Invariants(InvariantsArgs),
    /// Congruence obstruction and two-clasp realizability for a genus-2 Conway polynomial.
    Obstruct(ObstructArgs),
    /// Checks on the twist family K_n.
    Family(FamilyArgs),
    /// Audits the knot table against computed invariants.
    Audit(AuditArgs),
    /// Compares the realizability decision with a bounded brute-force search over a grid.
    Realize(RealizeArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// PD code, e.g. `X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]`.
    #[arg(long)]
    pd: Option<String>,
    /// DT code of a knot, e.g. "4 6 2".
    #[arg(long, allow_hyphen_values = true)]
    dt: Option<String>,
    /// Knot name from the table, e.g. 10_97.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    data: DataArg,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ObstructSource {
    /// Knot name from the table.
    #[arg(long)]
    name: Option<String>,
    /// Coefficients "m4,m2" of m4*z^4 + m2*z^2 + 1.
    #[arg(long, allow_hyphen_values = true)]
    conway: Option<String>,
}

#[derive(Args)]
struct ObstructArgs {
    #[command(flatten)]
    source: ObstructSource,
    #[command(flatten)]
    data: DataArg,
}

#[derive(Args)]
struct DataArg {
    /// Directory holding clasp_table.txt and pd_codes.txt (default: bundled data).
    #[arg(long, env = DATA_ENV)]
    data: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Conway,
    Jones,
    Skein,
    Prime,
    Clasp,
    Crossing,
    Q2,
    Theorem1,
    All,
}

#[derive(Args)]
struct FamilyArgs {
    /// Inclusive range A..B of n.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    n_range: RangeInclusive<i64>,
    /// Comma-separated checks.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    check: Vec<CheckArg>,
    /// Largest |n| whose Conway polynomial is computed from a diagram.
    #[arg(long, default_value_t = EngineLimits::default().conway)]
    conway_limit: i64,
    /// Largest |n| whose Jones polynomial is computed from a diagram.
    #[arg(long, default_value_t = EngineLimits::default().jones)]
    jones_limit: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    data: DataArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct RealizeArgs {
    /// Inclusive range A..B used for both m4 and m2.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    grid: RangeInclusive<i64>,
    /// Coefficient bound of the brute-force search.
    #[arg(long, default_value_t = 50)]
    bound: i64,
}

enum Failure {
    /// Bad input: exit code 2.
    Input { kind: &'static str, message: String, extra: Value },
    /// A check ran and failed: exit code 1, report already printed.
    Check,
}

impl Failure {
    fn input(kind: &'static str, message: impl ToString) -> Self {
        Failure::Input { kind, message: message.to_string(), extra: Value::Null }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("bad range start `{a}`: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("bad range end `{b}`: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("reports serialize") + "\n"));
}

fn load_table(data: &DataArg) -> Result<std::borrow::Cow<'static, Table>, Failure> {
    match &data.data {
        Some(dir) => Table::load_dir(dir).map(std::borrow::Cow::Owned).map_err(|e| Failure::input("data", e)),
        None => Ok(std::borrow::Cow::Borrowed(Table::bundled())),
    }
}

fn lookup_pd(table: &Table, name: &str) -> Result<(String, PdCode), Failure> {
    let record = table.lookup(name).map_err(|e| match e {
        knot_clasp::tables::TableError::NotFound { name, near } => Failure::Input {
            kind: "unknown_knot",
            message: format!("no knot named {name}"),
            extra: json!({ "near": near }),
        },
        other => Failure::input("data", other),
    })?;
    let pd = record.pd.clone().ok_or_else(|| Failure::input("no_pd", format!("{} has no PD code", record.name)))?;
    Ok((record.name.clone(), pd))
}

fn invariants(args: &InvariantsArgs) -> Result<Value, Failure> {
    let s = &args.source;
    let (input, pd) = if let Some(text) = &s.pd {
        (json!({ "pd": text }), PdCode::parse(text).map_err(|e| Failure::input("parse", e))?)
    } else if let Some(text) = &s.dt {
        (json!({ "dt": text }), parse_dt(text).map_err(|e| Failure::input("parse", e))?)
    } else {
        let table = load_table(&args.data)?;
        let (name, pd) = lookup_pd(&table, s.name.as_deref().expect("clap enforces one source"))?;
        (json!({ "name": name }), pd)
    };
    let d = Diagram::orient(&pd).map_err(|e| Failure::input("parse", e))?;
    let mut unavailable = serde_json::Map::new();
    let knot_only = |what: &str, unavailable: &mut serde_json::Map<String, Value>| {
        unavailable.insert(
            what.into(),
            json!(format!("defined here for knots; diagram has {} components", d.component_count())),
        );
        Value::Null
    };
    let (nabla, delta, genus) = if d.is_knot() {
        let nabla = conway(&d).map_err(|e| Failure::input("invariant", e))?;
        let delta = alexander(&d).map_err(|e| Failure::input("invariant", e))?;
        let genus = d.seifert_genus().map_err(|e| Failure::input("invariant", e))?;
        (json!(nabla.render("z")), json!(delta.render("t")), json!(genus))
    } else {
        (
            knot_only("conway", &mut unavailable),
            knot_only("alexander", &mut unavailable),
            knot_only("seifert_genus", &mut unavailable),
        )
    };
    Ok(json!({
        "input": input,
        "crossings": d.crossing_count(),
        "components": d.component_count(),
        "writhe": d.writhe(),
        "conway": nabla,
        "alexander": delta,
        "jones": jones(&d).render("t"),
        "seifert_genus": genus,
        "unavailable": unavailable,
    }))
}

#[derive(Serialize)]
struct Verdict {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    conway: String,
    m4: i64,
    m2: i64,
    mod8_fires: bool,
    realizable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[i64; 5]>,
    clasp_lower: u32,
    provenance: Vec<BoundRule>,
}

fn parse_pair(s: &str) -> Result<ConwayGenus2, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [m4, m2] = parts[..] else { return Err(Failure::input("shape", format!("expected \"m4,m2\", got `{s}`"))) };
    let num = |v: &str| v.parse::<i64>().map_err(|e| Failure::input("shape", format!("bad coefficient `{v}`: {e}")));
    Ok(ConwayGenus2::new(num(m4)?, num(m2)?))
}

fn obstruct(args: &ObstructArgs) -> Result<Value, Failure> {
    let (name, poly) = match (&args.source.name, &args.source.conway) {
        (_, Some(pair)) => (None, parse_pair(pair)?.to_poly()),
        (Some(name), None) => {
            let table = load_table(&args.data)?;
            let (name, pd) = lookup_pd(&table, name)?;
            let d = Diagram::orient(&pd).map_err(|e| Failure::input("parse", e))?;
            (Some(name), conway(&d).map_err(|e| Failure::input("invariant", e))?)
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    let c = conway_genus2_of(&poly).map_err(|e| Failure::input("shape", e))?;
    let bounds = clasp_lower_from_conway(&poly).map_err(|e| Failure::input("shape", e))?;
    let witness = two_clasp_realizable(c);
    Ok(serde_json::to_value(Verdict {
        name,
        conway: poly.render("z"),
        m4: c.m4,
        m2: c.m2,
        mod8_fires: mod8_obstruction(c),
        realizable: witness.is_some(),
        witness: witness.map(|w| w.as_array()),
        clasp_lower: bounds.lower,
        provenance: bounds.provenance,
    })
    .expect("verdict serializes"))
}

fn family(args: &FamilyArgs) -> Result<Value, Failure> {
    let mut checks: Vec<FamilyCheck> = Vec::new();
    for c in &args.check {
        let add: &[FamilyCheck] = match c {
            CheckArg::All => &FamilyCheck::ALL,
            CheckArg::Conway => &[FamilyCheck::Conway],
            CheckArg::Jones => &[FamilyCheck::Jones],
            CheckArg::Skein => &[FamilyCheck::Skein],
            CheckArg::Prime => &[FamilyCheck::Prime],
            CheckArg::Clasp => &[FamilyCheck::Clasp],
            CheckArg::Crossing => &[FamilyCheck::Crossing],
            CheckArg::Q2 => &[FamilyCheck::Q2],
            CheckArg::Theorem1 => &[FamilyCheck::Theorem1],
        };
        checks.extend(add);
    }
    checks.sort();
    checks.dedup();
    let limits = EngineLimits { conway: args.conway_limit, jones: args.jones_limit };
    let report = family_report(args.n_range.clone(), &checks, limits);
    let failures: Vec<Value> = report
        .rows
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|(_, o)| !o.pass)
                .map(move |(c, o)| json!({ "n": r.n, "check": c, "detail": o.detail }))
        })
        .collect();
    let value = json!({ "pass": report.pass, "failures": failures, "rows": report.rows });
    if report.pass {
        Ok(value)
    } else {
        print_json(&value);
        Err(Failure::Check)
    }
}

fn audit_cmd(args: &AuditArgs) -> Result<Option<Value>, Failure> {
    let table = load_table(&args.data)?;
    let report = audit(&table);
    let pass = report.all_pass();
    match args.format {
        Format::Csv => emit(&report.to_csv()),
        Format::Json => print_json(&report),
    }
    if pass {
        Ok(None)
    } else {
        Err(Failure::Check)
    }
}

#[derive(Serialize)]
struct Disagreement {
    m4: i64,
    m2: i64,
    decision: Option<[i64; 5]>,
    oracle: Option<[i64; 5]>,
    witness_magnitude: Option<i64>,
}

fn realize(args: &RealizeArgs) -> Result<Value, Failure> {
    let grid: Vec<ConwayGenus2> =
        args.grid.clone().flat_map(|m4| args.grid.clone().map(move |m2| ConwayGenus2::new(m4, m2))).collect();
    let mut realizable = 0;
    let mut obstructed = 0;
    let mut max_magnitude = 0;
    let mut bad_witnesses = Vec::new();
    let mut disagreements = Vec::new();
    for &c in &grid {
        let decided = two_clasp_realizable(c);
        let brute = two_clasp_oracle(c, args.bound);
        obstructed += usize::from(mod8_obstruction(c));
        if let Some(w) = &decided {
            realizable += 1;
            max_magnitude = max_magnitude.max(w.magnitude());
        }
        for w in decided.iter().chain(brute.iter()) {
            if w.conway() != c {
                bad_witnesses.push(json!({ "m4": c.m4, "m2": c.m2, "witness": w.as_array() }));
            }
        }
        if decided.is_some() != brute.is_some() {
            disagreements.push(Disagreement {
                m4: c.m4,
                m2: c.m2,
                decision: decided.map(|w: TwoClaspWitness| w.as_array()),
                oracle: brute.map(|w| w.as_array()),
                witness_magnitude: decided.map(|w| w.magnitude()),
            });
        }
    }
    let pass = disagreements.is_empty() && bad_witnesses.is_empty();
    let value = json!({
        "pass": pass,
        "grid": [args.grid.start(), args.grid.end()],
        "points": grid.len(),
        "oracle_bound": args.bound,
        "realizable": realizable,
        "obstructed": obstructed,
        "max_witness_magnitude": max_magnitude,
        "disagreements": disagreements,
        "bad_witnesses": bad_witnesses,
    });
    if pass {
        Ok(value)
    } else {
        print_json(&value);
        Err(Failure::Check)
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Invariants(a) => print_json(&invariants(a)?),
        Command::Obstruct(a) => print_json(&obstruct(a)?),
        Command::Family(a) => print_json(&family(a)?),
        Command::Audit(a) => {
            audit_cmd(a)?;
        }
        Command::Realize(a) => print_json(&realize(a)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => {
            eprintln!("knotclasp: checks failed");
            ExitCode::from(1)
        }
        Err(Failure::Input { kind, message, extra }) => {
            let mut err = json!({ "error": { "kind": kind, "message": message } });
            if let Value::Object(extra) = extra {
                err["error"].as_object_mut().expect("object").extend(extra);
            }
            print_json(&err);
            eprintln!("knotclasp: {message}");
            ExitCode::from(2)
        }
    }
}
