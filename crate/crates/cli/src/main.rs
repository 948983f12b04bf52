mod json;
mod render;
mod schema;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cis1_core::classifier::{nonexistence_hypotheses, s1_verdict, verdict_table};
use cis1_core::invariants::{invariants, CompleteIntersection};
use cis1_core::localization::{
    search_case, verify_case, Flags, SearchBounds, SearchError, SearchOptions, SearchRanges, Template,
};

use json::Json;
use render::SearchEcho;

const EXIT_CONTRADICTION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_SCHEMA: u8 = 65;
const EXIT_BUDGET: u8 = 66;
const MAX_TABLE_SUM: u64 = 40;

/// Invariants of complete intersections and circle actions on them.
#[derive(Parser)]
#[command(name = "cis1", version)]
struct Cli {
    /// Print one JSON document instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for search.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    workers: u64,
    /// Maximum number of search nodes.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic numbers of X_n(d_1, ..., d_r).
    Invariants(Multidegree),
    /// Whether X_n(d_1, ..., d_r) admits a smooth non-trivial circle action.
    Classify(Multidegree),
    /// Verdicts for every normalized multidegree with bounded degree sum.
    Table {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=6))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u64).range(1..=MAX_TABLE_SUM))]
        max_degree_sum: u64,
    },
    /// Check a fixed point configuration file against every constraint.
    Verify { path: PathBuf },
    /// Search a template for consistent fixed point configurations.
    Search(SearchArgs),
}

#[derive(Args)]
struct Multidegree {
    #[arg(value_parser = clap::value_parser!(u32).range(1..=6))]
    n: u32,
    #[arg(required = true, num_args = 1..)]
    degrees: Vec<u64>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(value_parser = parse_template)]
    template: Template,
    #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
    rho_min: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    rho_max: i64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    t_min: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    t_max: i64,
    #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
    bound_weight: i64,
    #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
    bound_a: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    bound_eval: i64,
    /// Only weights equal to 1.
    #[arg(long)]
    semifree: bool,
    /// Allow weights with a common divisor.
    #[arg(long)]
    no_effectiveness: bool,
    /// Do not pass to the inverse action to orient an isolated point positively.
    #[arg(long)]
    no_convention35: bool,
    /// Do not require equal weights at the two isolated points.
    #[arg(long)]
    no_lemma64: bool,
}

fn parse_template(s: &str) -> Result<Template, String> {
    Template::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Template::ALL.iter().map(|t| t.as_str()).collect();
        format!("unknown template `{s}`, expected one of {}", names.join(", "))
    })
}

enum Failure {
    Usage(String),
    Schema { path: String, message: String },
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Schema { .. } => EXIT_SCHEMA,
            Failure::Budget(_) => EXIT_BUDGET,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Budget(m) => m.clone(),
            Failure::Schema { path, message } => format!("{path}: {message}"),
        }
    }

    fn json(&self) -> Json {
        let (kind, path) = match self {
            Failure::Usage(_) => ("usage", None),
            Failure::Schema { path, .. } => ("schema", Some(Json::str(path))),
            Failure::Budget(_) => ("budget", None),
        };
        let message = match self {
            Failure::Schema { message, .. } => message.clone(),
            other => other.message(),
        };
        Json::obj([(
            "error",
            Json::obj([
                ("kind", Json::str(kind)),
                ("message", Json::str(message)),
                ("path", Json::opt(path)),
            ]),
        )])
    }
}

struct Output {
    table: String,
    json: Json,
    code: u8,
}

fn complete_intersection(m: &Multidegree) -> Result<CompleteIntersection, Failure> {
    CompleteIntersection::new(m.n, m.degrees.iter().copied()).map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Invariants(m) => {
            let report = invariants(&complete_intersection(m)?);
            Ok(Output {
                table: render::invariants_text(&report),
                json: render::invariants_json(&report),
                code: 0,
            })
        }
        Command::Classify(m) => {
            let ci = complete_intersection(m)?;
            let v = s1_verdict(&ci);
            let hyp = nonexistence_hypotheses(&ci).ok();
            Ok(Output {
                table: render::verdict_text(&v, &m.degrees, hyp.as_ref()),
                json: render::verdict_json(&v, &m.degrees, hyp.as_ref()),
                code: 0,
            })
        }
        Command::Table { n, max_degree_sum } => {
            let rows = verdict_table(*n, *max_degree_sum);
            Ok(Output {
                table: render::table_text(&rows),
                json: render::table_json(*n, *max_degree_sum, &rows),
                code: 0,
            })
        }
        Command::Verify { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let cfg = schema::parse_configuration(&text).map_err(|e| Failure::Schema {
                path: e.path,
                message: e.message,
            })?;
            let report = verify_case(&cfg);
            Ok(Output {
                table: render::report_text(&cfg, &report),
                json: render::report_json(&cfg, &report),
                code: if report.consistent { 0 } else { EXIT_CONTRADICTION },
            })
        }
        Command::Search(a) => search(cli, a),
    }
}

fn search(cli: &Cli, a: &SearchArgs) -> Result<Output, Failure> {
    let ranges = SearchRanges {
        t_min: a.t_min,
        t_max: a.t_max,
        rho_min: a.rho_min,
        rho_max: a.rho_max,
    };
    let bounds = SearchBounds {
        max_weight: a.bound_weight,
        max_abs_a: a.bound_a,
        max_abs_eval: a.bound_eval,
    };
    let flags = Flags {
        effectiveness: !a.no_effectiveness,
        positive_base_point: !a.no_convention35,
        matched_point_weights: !a.no_lemma64,
    };
    let options = SearchOptions {
        semifree: a.semifree,
        workers: cli.workers as usize,
        node_budget: cli.budget,
    };
    let out = search_case(a.template, ranges, bounds, flags, options).map_err(|e| match e {
        SearchError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
        SearchError::InvalidBounds(_) | SearchError::Overflow => Failure::Usage(e.to_string()),
    })?;
    let echo = SearchEcho {
        template: a.template.as_str(),
        semifree: a.semifree,
        flags,
        ranges,
        bounds,
    };
    Ok(Output {
        table: render::search_text(&echo, &out.hits, out.nodes),
        json: render::search_json(&echo, &out.hits, out.nodes),
        code: 0,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                print!("{}", out.json.render());
            } else {
                print!("{}", out.table);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            if cli.json {
                print!("{}", f.json().render());
            }
            eprintln!("cis1: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
