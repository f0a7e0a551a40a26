//! The `hypercount` command line.

pub mod config;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hypercount::counts::{self, Variant};
use hypercount::exactcore::{ExactInt, NumberError};
use hypercount::intersect::adjudicate::{
    adjudicate, table_cases, AdjudicateOptions, AdjudicationError, AdjudicationRecord,
};
use hypercount::intersect::ledger::{bezout_ledger, Case, LedgerError, MultiplicitySource};
use hypercount::intersect::oracle::{affine_intersections, OracleOptions};
use hypercount::polyengine::{family_poly, Budget, FamilyId, SparsePoly, Var};

use config::{FileConfig, Format, Settings};
use report::{md_cell, ReportDocument};
use suites::{run_suite, SuiteSettings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNRESOLVED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "hypercount", version, about = "Counts of hyperbolic components of quadratic rational maps")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format [default: text].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Oracle accuracy in bits [default: 256].
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Exit 2 when an oracle count matches neither ν′ reading.
    #[arg(long, global = true)]
    strict: bool,
    /// Largest Bezout product the oracle will attempt [default: 200].
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// TOML file with the same keys as these flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ν_q(n).
    Nu { q: u64, n: u64 },
    /// ν′_q(j).
    Nuprime {
        q: u64,
        j: u64,
        #[arg(long, default_value = "paper")]
        variant: Variant,
    },
    /// η_IV, η_II and η′_II.
    Eta {
        #[command(subcommand)]
        which: EtaCommand,
    },
    /// Dump a family member.
    Poly {
        family: FamilyId,
        index: u32,
        #[arg(long)]
        homogenize: bool,
        /// r for LrCubic, as a rational.
        #[arg(long)]
        param: Option<String>,
    },
    /// Bezout ledger of a case.
    Ledger {
        #[command(subcommand)]
        case: CaseArg,
        #[arg(long, global = true, default_value = "paper")]
        variant: Variant,
        #[arg(long, global = true, default_value = "closed-form")]
        source: MultiplicitySource,
    },
    /// Numerical intersection count of a case.
    Oracle {
        #[command(subcommand)]
        case: CaseArg,
    },
    /// Side-by-side record of every value for a case.
    Adjudicate {
        #[command(subcommand)]
        case: AdjudicateArg,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all", value_parser = ["counts", "limbs", "polys", "intersections", "all"])]
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
enum EtaCommand {
    Iv {
        n: u64,
        m: u64,
        /// First period exactly n.
        #[arg(long)]
        exact_first: bool,
        #[arg(long, default_value = "paper")]
        variant: Variant,
    },
    Ii {
        m: u64,
        #[arg(long)]
        j: Option<u64>,
        #[arg(long, default_value = "paper")]
        variant: Variant,
    },
    PrimeIi {
        m: u64,
        #[arg(long, default_value = "paper")]
        variant: Variant,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum CaseArg {
    Iv { n: u64, m: u64 },
    Ii { m: u64, j: u64 },
}

impl CaseArg {
    fn case(self) -> Result<Case, Failure> {
        let case = match self {
            CaseArg::Iv { n, m } => Case::IV { n, m },
            CaseArg::Ii { m, j } => Case::II { m, j },
        };
        case.validate().map_err(Failure::usage)?;
        Ok(case)
    }
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum AdjudicateArg {
    Iv { n: u64, m: u64 },
    Ii { m: u64, j: u64 },
    AllTables,
}

/// An error together with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(e: impl ToString) -> Failure {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }

    fn runtime(e: impl ToString) -> Failure {
        Failure { code: EXIT_FAILURE, message: e.to_string() }
    }
}

impl From<NumberError> for Failure {
    fn from(e: NumberError) -> Failure {
        Failure::usage(e)
    }
}

impl From<LedgerError> for Failure {
    fn from(e: LedgerError) -> Failure {
        match e {
            LedgerError::Domain(_) | LedgerError::Number(NumberError::Domain { .. }) | LedgerError::Family(_) => {
                Failure::usage(e)
            }
            _ => Failure::runtime(e),
        }
    }
}

/// What a command produced, in every rendering.
struct Output {
    text: String,
    json: Value,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    /// Report documents bring their own CSV and markdown.
    report: Option<ReportDocument>,
    code: i32,
}

impl Output {
    fn scalar(name: &str, args: Value, value: &ExactInt) -> Output {
        let mut json = json!({ "quantity": name });
        if let (Some(obj), Value::Object(a)) = (json.as_object_mut(), args) {
            obj.extend(a);
            obj.insert("value".into(), serde_json::to_value(Decimal(value)).expect("number"));
        }
        Output {
            text: format!("{value}\n"),
            json,
            columns: vec!["quantity".into(), "value".into()],
            rows: vec![vec![name.to_string(), value.to_string()]],
            report: None,
            code: EXIT_OK,
        }
    }

    fn render(&self, format: Format) -> String {
        match (format, &self.report) {
            (Format::Text, _) => self.text.clone(),
            (Format::Json, Some(r)) => r.to_json(),
            (Format::Json, None) => serde_json::to_string_pretty(&self.json).expect("json") + "\n",
            (Format::Csv, Some(r)) => r.to_csv(),
            (Format::Md, Some(r)) => r.to_markdown(),
            (Format::Csv, None) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            (Format::Md, None) => {
                let mut out = format!("| {} |\n|{}\n", self.columns.join(" | "), "---|".repeat(self.columns.len()));
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|c| md_cell(c)).collect();
                    let _ = writeln!(out, "| {} |", cells.join(" | "));
                }
                out
            }
        }
    }
}

struct Decimal<'a>(&'a ExactInt);

impl serde::Serialize for Decimal<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        hypercount::exactcore::decimal::serialize(self.0, s)
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: Cli) -> Result<i32, Failure> {
    let g = cli.global;
    let file = match &g.config {
        Some(p) => FileConfig::load(p).map_err(Failure::usage)?,
        None => FileConfig::default(),
    };
    let flags = FileConfig {
        format: g.format,
        out: g.out,
        precision: g.precision,
        strict: g.strict.then_some(true),
        budget: g.budget,
    };
    let settings = Settings::resolve(flags, file);
    if settings.precision < 64 {
        return Err(Failure::usage(format!("--precision must be at least 64 bits, got {}", settings.precision)));
    }
    let output = dispatch(cli.command, &settings)?;
    let text = output.render(settings.format);
    match &settings.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(output.code)
}

fn oracle_options(settings: &Settings) -> OracleOptions {
    OracleOptions { precision_bits: settings.precision, ..OracleOptions::default() }
}

fn dispatch(command: Command, settings: &Settings) -> Result<Output, Failure> {
    match command {
        Command::Nu { q, n } => Ok(Output::scalar("nu", json!({"q": q, "n": n}), &counts::nu(q, n)?)),
        Command::Nuprime { q, j, variant } => Ok(Output::scalar(
            "nu_prime",
            json!({"q": q, "j": j, "variant": variant.short_name()}),
            &counts::nu_prime(q, j, variant)?,
        )),
        Command::Eta { which } => eta(which),
        Command::Poly { family, index, homogenize, param } => poly(family, index, homogenize, param),
        Command::Ledger { case, variant, source } => ledger(case.case()?, variant, source),
        Command::Oracle { case } => oracle(case.case()?, settings),
        Command::Adjudicate { case } => adjudication(case, settings),
        Command::Verify { suite } => verify(&suite, settings),
    }
}

fn eta(which: EtaCommand) -> Result<Output, Failure> {
    match which {
        EtaCommand::Iv { n, m, exact_first, variant } => {
            let args = json!({"n": n, "m": m, "variant": variant.short_name()});
            if exact_first {
                Ok(Output::scalar("eta_iv_exact_first", args, &counts::eta_iv_exact_first(n, m, variant)?))
            } else {
                Ok(Output::scalar("eta_iv", args, &counts::eta_iv(n, m, variant)?))
            }
        }
        EtaCommand::Ii { m, j, variant } => {
            let value = |v| match j {
                Some(j) => counts::eta_ii_mj(m, j, v),
                None => counts::eta_ii(m, v),
            };
            let chosen = value(variant)?;
            let other = value(match variant {
                Variant::PaperDisplay => Variant::MarkovRecurrence,
                Variant::MarkovRecurrence => Variant::PaperDisplay,
            })?;
            if variant == Variant::PaperDisplay && chosen != other {
                let target = j.map_or(format!("m = {m}"), |j| format!("`hypercount adjudicate ii {m} {j}`"));
                eprintln!(
                    "note: the `paper` and `markov` readings of nu' disagree here ({chosen} vs {other}); see {target} for the oracle's verdict"
                );
            }
            match j {
                Some(j) => Ok(Output::scalar("eta_ii_mj", json!({"m": m, "j": j, "variant": variant.short_name()}), &chosen)),
                None => Ok(Output::scalar("eta_ii", json!({"m": m, "variant": variant.short_name()}), &chosen)),
            }
        }
        EtaCommand::PrimeIi { m, variant } => Ok(Output::scalar(
            "eta_prime_ii",
            json!({"m": m, "variant": variant.short_name()}),
            &counts::eta_prime_ii(m, variant)?,
        )),
    }
}

fn poly(family: FamilyId, index: u32, homogenize: bool, param: Option<String>) -> Result<Output, Failure> {
    let param = param
        .map(|p| p.parse::<hypercount::exactcore::ExactRational>().map_err(|e| Failure::usage(format!("--param {p}: {e}"))))
        .transpose()?;
    let mut p: SparsePoly = family_poly(family, index, param.as_ref(), &Budget::default()).map_err(Failure::usage)?;
    if homogenize {
        let extra = if p.vars().contains(&Var::A) { Var::T } else { Var::E };
        p = p.homogenize(extra, None).map_err(Failure::usage)?;
    }
    let mut columns: Vec<String> = p.vars().iter().map(|v| v.name().to_string()).collect();
    columns.push("coefficient".into());
    let rows = p
        .sorted_terms()
        .into_iter()
        .map(|(e, c)| e.iter().map(|x| x.to_string()).chain([c.to_string()]).collect())
        .collect();
    Ok(Output { text: format!("{p}\n"), json: p.to_json(), columns, rows, report: None, code: EXIT_OK })
}

fn ledger(case: Case, variant: Variant, source: MultiplicitySource) -> Result<Output, Failure> {
    let l = bezout_ledger(case, variant, source)?;
    let mut text = format!("{}: degrees {} x {} = {}\n", l.case, l.degree_first, l.degree_second, l.product);
    let mut rows = vec![vec!["product".to_string(), l.product.to_string()]];
    for item in &l.items {
        let _ = writeln!(text, "  - {} at {}", item.multiplicity, item.location);
        rows.push(vec![item.location.to_string(), item.multiplicity.to_string()]);
    }
    let _ = writeln!(text, "residual {}", l.residual);
    rows.push(vec!["residual".to_string(), l.residual.to_string()]);
    Ok(Output {
        text,
        json: serde_json::to_value(&l).expect("ledger serializes"),
        columns: vec!["entry".into(), "multiplicity".into()],
        rows,
        report: None,
        code: EXIT_OK,
    })
}

fn check_budget(case: Case, budget: u64) -> Result<(), Failure> {
    let product = case.bezout_product();
    if product > ExactInt::from(budget) {
        return Err(Failure::usage(format!("{case}: Bezout product {product} exceeds --budget {budget}")));
    }
    Ok(())
}

fn oracle(case: Case, settings: &Settings) -> Result<Output, Failure> {
    check_budget(case, settings.budget)?;
    let (f, g) = case.curves(&Budget::default())?;
    let r = affine_intersections(&f, &g, &oracle_options(settings)).map_err(Failure::runtime)?;
    let points: Vec<Value> = r.points.iter().map(|p| p.to_json()).collect();
    let mut text = format!("{case}: {} points ({} eliminating c)\n", r.count, r.count_eliminating_c);
    let mut rows = Vec::new();
    for p in &points {
        let cell = |k: &str, i: usize| p[k][i].as_str().unwrap_or("").to_string();
        let row = vec![
            cell("c", 0),
            cell("c", 1),
            cell("d", 0),
            cell("d", 1),
            p["residual_f_log2"].to_string(),
            p["residual_g_log2"].to_string(),
            p["simple"].to_string(),
        ];
        let _ = writeln!(text, "  c = {} + {}i, d = {} + {}i", row[0], row[1], row[2], row[3]);
        rows.push(row);
    }
    let json = json!({
        "case": case.to_string(),
        "precision_bits": settings.precision,
        "count": r.count,
        "count_eliminating_c": r.count_eliminating_c,
        "points": points,
    });
    let columns = ["c_re", "c_im", "d_re", "d_im", "residual_f_log2", "residual_g_log2", "simple"];
    Ok(Output { text, json, columns: columns.map(String::from).to_vec(), rows, report: None, code: EXIT_OK })
}

fn matches_neither(r: &AdjudicationRecord) -> bool {
    r.oracle.as_ref().is_some_and(|o| Variant::ALL.iter().all(|&v| r.closed_form.get(v) != o))
}

fn adjudication(arg: AdjudicateArg, settings: &Settings) -> Result<Output, Failure> {
    let opts = AdjudicateOptions { oracle: oracle_options(settings), product_budget: settings.budget };
    let (cases, single) = match arg {
        AdjudicateArg::Iv { n, m } => (vec![CaseArg::Iv { n, m }.case()?], true),
        AdjudicateArg::Ii { m, j } => (vec![CaseArg::Ii { m, j }.case()?], true),
        AdjudicateArg::AllTables => (table_cases(settings.budget), false),
    };
    let mut records = Vec::new();
    let mut failed = false;
    for case in cases {
        match adjudicate(case, &opts) {
            Ok(r) => records.push(r),
            Err(AdjudicationError::Oracle { partial, source }) => {
                eprintln!("error: {}: oracle failed: {source}", partial.case);
                records.push(*partial);
                failed = true;
            }
            Err(e @ AdjudicationError::OverBudget { .. }) if single => return Err(Failure::usage(e)),
            Err(e) => return Err(Failure::runtime(e)),
        }
    }
    let opt = |v: &Option<ExactInt>| v.as_ref().map_or("null".to_string(), |x| x.to_string());
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &records {
        let row = vec![
            r.case.to_string(),
            opt(&r.paper),
            r.closed_form.paper_variant.to_string(),
            r.closed_form.markov_variant.to_string(),
            r.ledger.closed_form_paper.to_string(),
            r.ledger.closed_form_markov.to_string(),
            opt(&r.ledger.exact_local),
            opt(&r.oracle),
            format!("{:?}", r.verdict),
        ];
        let _ = writeln!(
            text,
            "{}: table {}, closed form {} (paper) / {} (markov), ledger {} / {} / exact {}, oracle {} => {}",
            row[0], row[1], row[2], row[3], row[4], row[5], row[6], row[7], row[8]
        );
        rows.push(row);
    }
    let json = if single && records.len() == 1 {
        serde_json::to_value(&records[0]).expect("record serializes")
    } else {
        serde_json::to_value(&records).expect("records serialize")
    };
    let code = if settings.strict && records.iter().any(matches_neither) {
        EXIT_UNRESOLVED
    } else if failed {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    let columns = [
        "case",
        "paper",
        "closed_form_paper",
        "closed_form_markov",
        "ledger_closed_form_paper",
        "ledger_closed_form_markov",
        "ledger_exact_local",
        "oracle",
        "verdict",
    ];
    Ok(Output { text, json, columns: columns.map(String::from).to_vec(), rows, report: None, code })
}

fn verify(suite: &str, settings: &Settings) -> Result<Output, Failure> {
    let ss = SuiteSettings { precision_bits: settings.precision, product_budget: settings.budget };
    let checks = run_suite(suite, &ss).ok_or_else(|| Failure::usage(format!("unknown suite `{suite}`")))?;
    let mut echo = serde_json::to_value(settings).expect("settings serialize");
    echo.as_object_mut().expect("object").insert("suite".into(), json!(suite));
    let doc = ReportDocument::new(suite, echo, checks);
    let mut text = String::new();
    for c in &doc.checks {
        let _ = writeln!(
            text,
            "{:<11} {}  expected {} ({}), computed {}",
            c.status.as_str(),
            c.id,
            c.expected.value,
            c.expected.provenance,
            c.computed
        );
    }
    let s = &doc.summary;
    let _ = writeln!(text, "{}: {} checks, {} pass, {} fail, {} adjudicated", doc.suite, s.total, s.pass, s.fail, s.adjudicated);
    let code = if doc.has_failures() {
        EXIT_FAILURE
    } else if settings.strict && doc.has_unresolved() {
        EXIT_UNRESOLVED
    } else {
        EXIT_OK
    };
    Ok(Output { text, json: Value::Null, columns: Vec::new(), rows: Vec::new(), report: Some(doc), code })
}
