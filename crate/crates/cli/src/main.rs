//! `palquot`: decide, find and count representations `N = A/B` with `A`, `B`
//! palindromic or antipalindromic, and tabulate the results.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use palquot::analysis::{self, CensusRow, Verdict};
use palquot::heuristic::{self, HeuristicOutcome};
use palquot::search::{SearchStats, DEFAULT_MAX_STATES, WITNESS_LIMIT};
use palquot::{Base, Budget, Error, Representation, Search, Shape, SolutionClass, Target};
use serde_json::{json, Map, Value};

/// State cap used unless `--allow-long` or an explicit cap is given.
const SHORT_MAX_STATES: u64 = 10_000_000;
const SHORT_MAX_SECONDS: u64 = 120;

#[derive(Parser)]
#[command(
    name = "palquot",
    version,
    about = "Quotients of palindromic and antipalindromic numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Args)]
struct RunOpts {
    /// Number base k.
    #[arg(long, global = true, default_value_t = 2)]
    base: u32,
    /// pal (palindrome) or apal (antipalindrome).
    #[arg(long, global = true, default_value = "pal", value_parser = parse_shape)]
    shape: Shape,
    /// Cap on automaton states per search.
    #[arg(long, global = true, env = "PALQUOT_MAX_STATES")]
    max_states: Option<u64>,
    /// Wall-clock cap per search, in seconds.
    #[arg(long, global = true)]
    max_seconds: Option<u64>,
    /// Lift the default caps for long computations.
    #[arg(long, global = true)]
    allow_long: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Bfile,
}

#[derive(Subcommand)]
enum Command {
    /// Is the target a quotient A/B of the shape?
    Decide { target: String },
    /// The representation with the smallest A and B.
    Smallest { target: String },
    /// Number of representations (finite or infinite).
    Count { target: String },
    /// Decide every integer of a range, or the census by bit length.
    Sweep(SweepArgs),
    /// Binary-palindrome prefix refutation.
    Heuristic {
        n: u64,
        #[arg(long, default_value_t = heuristic::DEFAULT_MAX_DEPTH)]
        max_depth: u32,
    },
    /// Explicit pair of the shape approximating a positive rational.
    Approx {
        /// A decimal like 0.7071 or a fraction like 1/3.
        alpha: String,
        #[arg(long, default_value_t = 20)]
        n: u32,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Count representable N in [2^(i-1), 2^i) for each i up to this.
    #[arg(long, conflicts_with = "range", required_unless_present = "range")]
    max_bits: Option<u32>,
    /// An inclusive range `a..b`.
    #[arg(long)]
    range: Option<String>,
    /// Print the matching N rather than one verdict per N.
    #[arg(long)]
    list: bool,
    /// List the unrepresentable N instead of the representable ones.
    #[arg(long)]
    unrepresentable: bool,
    /// Only odd N.
    #[arg(long)]
    odd: bool,
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Search(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted { .. } => Failure::Search(e),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Everything a command prints.
struct Report {
    command: &'static str,
    target: Value,
    params: Map<String, Value>,
    result: Map<String, Value>,
    stats: SearchStats,
    definitive: bool,
    /// Tabular output for `tsv` and `bfile`.
    table: Option<Table>,
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    /// Whether the rows are `index value` pairs suitable for a b-file.
    bfile: bool,
}

impl RunOpts {
    fn base(&self) -> Result<Base, Failure> {
        Ok(Base::new(self.base)?)
    }

    fn budget(&self) -> Budget {
        let states = self.max_states.unwrap_or(if self.allow_long {
            DEFAULT_MAX_STATES
        } else {
            SHORT_MAX_STATES
        });
        let seconds = self
            .max_seconds
            .or((!self.allow_long).then_some(SHORT_MAX_SECONDS));
        let budget = Budget::states(states);
        match seconds {
            Some(s) => budget.with_time(Duration::from_secs(s)),
            None => budget,
        }
    }

    fn params(&self) -> Map<String, Value> {
        let budget = self.budget();
        let mut m = Map::new();
        m.insert("base".into(), json!(self.base.to_string()));
        m.insert("shape".into(), json!(self.shape.name()));
        m.insert(
            "maxStates".into(),
            json!(budget.max_states.map(|s| s.to_string())),
        );
        m.insert(
            "maxSeconds".into(),
            json!(budget.max_time.map(|t| t.as_secs().to_string())),
        );
        m.insert("allowLong".into(), json!(self.allow_long));
        m
    }

    fn target(&self, s: &str) -> Result<Target, Failure> {
        Ok(Target::parse(s, self.base()?, self.shape)?)
    }
}

fn target_label(t: &Target) -> Value {
    let (p, q) = t.as_requested();
    if q == 1 {
        json!(p.to_string())
    } else {
        json!(format!("{p}/{q}"))
    }
}

fn representation_json(rep: &Representation) -> Value {
    json!({
        "A": rep.numerator.to_string(),
        "B": rep.denominator.to_string(),
        "ABase": rep.numerator_digits().to_string(),
        "BBase": rep.denominator_digits().to_string(),
    })
}

fn insert_representation(result: &mut Map<String, Value>, rep: &Representation) {
    if let Value::Object(fields) = representation_json(rep) {
        result.extend(fields);
    }
}

fn report(command: &'static str, opts: &RunOpts, target: Value) -> Report {
    Report {
        command,
        target,
        params: opts.params(),
        result: Map::new(),
        stats: SearchStats::default(),
        definitive: true,
        table: None,
    }
}

/// Runs a single-target search step, turning budget exhaustion into an
/// undecided report.
fn searched<T>(
    report: &mut Report,
    search: &Search,
    outcome: palquot::Result<T>,
) -> Result<Option<T>, Failure> {
    report.stats = search.stats();
    match outcome {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExhausted {
            states_visited,
            elapsed,
        }) => {
            report.stats = SearchStats {
                states_visited,
                elapsed,
            };
            report.definitive = false;
            report
                .result
                .insert("representable".into(), json!("undecided"));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_decide(opts: &RunOpts, target: &str) -> Result<Report, Failure> {
    let t = opts.target(target)?;
    let mut r = report("decide", opts, target_label(&t));
    let mut search = Search::new(t, opts.budget());
    let outcome = search.decide();
    if let Some(d) = searched(&mut r, &search, outcome)? {
        r.result
            .insert("representable".into(), json!(d.representable.to_string()));
        if let Some(w) = &d.witness {
            r.result.insert("witness".into(), representation_json(w));
        }
    }
    Ok(r)
}

fn cmd_smallest(opts: &RunOpts, target: &str) -> Result<Report, Failure> {
    let t = opts.target(target)?;
    let mut r = report("smallest", opts, target_label(&t));
    let mut search = Search::new(t, opts.budget());
    let outcome = search.smallest();
    if let Some(found) = searched(&mut r, &search, outcome)? {
        r.result
            .insert("representable".into(), json!(found.is_some().to_string()));
        if let Some(rep) = &found {
            insert_representation(&mut r.result, rep);
        }
    }
    Ok(r)
}

fn cmd_count(opts: &RunOpts, target: &str) -> Result<Report, Failure> {
    let t = opts.target(target)?;
    let mut r = report("count", opts, target_label(&t));
    let mut search = Search::new(t, opts.budget());
    let outcome = search.classify(WITNESS_LIMIT);
    let Some(class) = searched(&mut r, &search, outcome)? else {
        r.result.insert("class".into(), json!("undecided"));
        return Ok(r);
    };
    let res = &mut r.result;
    res.insert(
        "representable".into(),
        json!((class != SolutionClass::None).to_string()),
    );
    match &class {
        SolutionClass::None => {
            res.insert("class".into(), json!("none"));
            res.insert("count".into(), json!("0"));
        }
        SolutionClass::Finite { count, witnesses } => {
            res.insert("class".into(), json!("finite"));
            res.insert("count".into(), json!(count.to_string()));
            let w: Vec<Value> = witnesses.iter().map(representation_json).collect();
            res.insert("witnesses".into(), Value::Array(w));
        }
        SolutionClass::Infinite { witness, cycle } => {
            res.insert("class".into(), json!("infinite"));
            res.insert("count".into(), json!("infinite"));
            res.insert("smallest".into(), representation_json(witness));
            res.insert("cycleLength".into(), json!(cycle.len().to_string()));
        }
    }
    Ok(r)
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::Usage(format!("range must look like a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u64, u64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a == 0 || a > b {
        return Err(Failure::Usage(format!(
            "range needs 1 <= a <= b, got {a}..{b}"
        )));
    }
    Ok((a, b))
}

fn census_report(opts: &RunOpts, args: &SweepArgs, max_bits: u32) -> Result<Report, Failure> {
    if opts.base != 2 {
        return Err(Failure::Usage("the census is defined for base 2".into()));
    }
    if args.list || args.unrepresentable || args.odd {
        return Err(Failure::Usage(
            "--list, --unrepresentable and --odd apply to --range sweeps".into(),
        ));
    }
    let mut r = report("sweep", opts, json!(format!("bits 1..{max_bits}")));
    r.params
        .insert("maxBits".into(), json!(max_bits.to_string()));
    let started = Instant::now();
    let rows: Vec<CensusRow> = analysis::census(opts.shape, max_bits, opts.budget())?;
    r.stats.elapsed = started.elapsed();
    r.definitive = rows.iter().all(|row| row.undecided.is_empty());
    let census: Vec<Value> = rows
        .iter()
        .map(|row| {
            json!({
                "bits": row.bits.to_string(),
                "count": row.count.to_string(),
                "undecided": row.undecided.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    r.result.insert("census".into(), Value::Array(census));
    r.table = Some(Table {
        header: vec!["bits", "count", "undecided"],
        rows: rows
            .iter()
            .map(|row| {
                vec![
                    row.bits.to_string(),
                    row.count.to_string(),
                    row.undecided.len().to_string(),
                ]
            })
            .collect(),
        bfile: true,
    });
    Ok(r)
}

fn cmd_sweep(opts: &RunOpts, args: &SweepArgs) -> Result<Report, Failure> {
    if let Some(bits) = args.max_bits {
        return census_report(opts, args, bits);
    }
    let range = args
        .range
        .as_deref()
        .expect("clap enforces max-bits or range");
    let (a, b) = parse_range(range)?;
    let mut r = report("sweep", opts, json!(format!("{a}..{b}")));
    r.params.insert("odd".into(), json!(args.odd));
    r.params.insert("list".into(), json!(args.list));
    r.params
        .insert("unrepresentable".into(), json!(args.unrepresentable));
    let started = Instant::now();
    let mut verdicts = analysis::sweep(opts.shape, opts.base()?, a..=b, opts.budget())?;
    r.stats.elapsed = started.elapsed();
    if args.odd {
        verdicts.retain(|(n, _)| n % 2 == 1);
    }
    let undecided: Vec<String> = verdicts
        .iter()
        .filter(|(_, v)| *v == Verdict::Undecided)
        .map(|(n, _)| n.to_string())
        .collect();
    r.definitive = undecided.is_empty();
    if args.list {
        let wanted = if args.unrepresentable {
            Verdict::NotRepresentable
        } else {
            Verdict::Representable
        };
        let members: Vec<String> = verdicts
            .iter()
            .filter(|(_, v)| *v == wanted)
            .map(|(n, _)| n.to_string())
            .collect();
        r.table = Some(Table {
            header: vec!["index", "n"],
            rows: members
                .iter()
                .enumerate()
                .map(|(i, n)| vec![(i + 1).to_string(), n.clone()])
                .collect(),
            bfile: true,
        });
        r.result.insert("members".into(), json!(members));
    } else {
        let all: Vec<Value> = verdicts
            .iter()
            .map(|(n, v)| json!({ "n": n.to_string(), "verdict": v.as_str() }))
            .collect();
        r.table = Some(Table {
            header: vec!["n", "verdict"],
            rows: verdicts
                .iter()
                .map(|(n, v)| vec![n.to_string(), v.as_str().to_string()])
                .collect(),
            bfile: false,
        });
        r.result.insert("verdicts".into(), Value::Array(all));
    }
    r.result.insert("undecided".into(), json!(undecided));
    Ok(r)
}

fn cmd_heuristic(opts: &RunOpts, n: u64, max_depth: u32) -> Result<Report, Failure> {
    if opts.base != 2 || opts.shape != Shape::Palindrome {
        return Err(Failure::Usage(
            "the prefix heuristic works on binary palindromes only".into(),
        ));
    }
    let mut r = report("heuristic", opts, json!(n.to_string()));
    r.params
        .insert("maxDepth".into(), json!(max_depth.to_string()));
    let started = Instant::now();
    let outcome = heuristic::heuristic_decide(n, max_depth)?;
    r.stats.elapsed = started.elapsed();
    let res = &mut r.result;
    match outcome {
        HeuristicOutcome::Found(rep) => {
            res.insert("outcome".into(), json!("found"));
            res.insert("representable".into(), json!("true"));
            insert_representation(res, &rep);
        }
        HeuristicOutcome::RefutedAtDepth(k) => {
            res.insert("outcome".into(), json!("refuted"));
            res.insert("representable".into(), json!("false"));
            res.insert("depth".into(), json!(k.to_string()));
        }
        HeuristicOutcome::Inconclusive(k) => {
            res.insert("outcome".into(), json!("inconclusive"));
            res.insert("representable".into(), json!("undecided"));
            res.insert("depth".into(), json!(k.to_string()));
            r.definitive = false;
        }
    }
    Ok(r)
}

fn cmd_approx(opts: &RunOpts, alpha: &str, n: u32) -> Result<Report, Failure> {
    if opts.base != 2 {
        return Err(Failure::Usage("approximations are built in base 2".into()));
    }
    let value = analysis::parse_rational(alpha)?;
    let mut r = report("approx", opts, json!(value.to_string()));
    r.params.insert("n".into(), json!(n.to_string()));
    let started = Instant::now();
    let ap = match opts.shape {
        Shape::Palindrome => analysis::approx_palindrome_quotient(&value, n)?,
        Shape::Antipalindrome => analysis::approx_antipalindrome_quotient(&value, n)?,
    };
    r.stats.elapsed = started.elapsed();
    let rep = Representation {
        numerator: ap.numerator.clone(),
        denominator: ap.denominator.clone(),
        base: Base::BINARY,
        shape: opts.shape,
    };
    let res = &mut r.result;
    insert_representation(res, &rep);
    res.insert("k".into(), json!(ap.k.to_string()));
    res.insert("reciprocal".into(), json!(ap.reciprocal));
    res.insert("error".into(), json!(ap.error.to_string()));
    res.insert("reducedError".into(), json!(ap.reduced_error.to_string()));
    res.insert(
        "errorBound".into(),
        json!(ap.error_bound.as_ref().map(|b| b.to_string())),
    );
    res.insert(
        "errorBits".into(),
        json!(ap.error_bits().map(|b| b.to_string())),
    );
    Ok(r)
}

fn print(report: &Report, format: Format) -> Result<(), Failure> {
    let elapsed_ms = report.stats.elapsed.as_millis();
    match format {
        Format::Json => {
            let doc = json!({
                "command": report.command,
                "target": report.target,
                "params": report.params,
                "result": report.result,
                "diagnostics": {
                    "statesVisited": report.stats.states_visited.to_string(),
                    "elapsedMs": elapsed_ms.to_string(),
                },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        Format::Tsv => {
            match &report.table {
                Some(t) => {
                    println!("{}", t.header.join("\t"));
                    for row in &t.rows {
                        println!("{}", row.join("\t"));
                    }
                }
                None => {
                    println!("key\tvalue");
                    for (k, v) in &report.result {
                        match v {
                            Value::String(s) => println!("{k}\t{s}"),
                            other => println!("{k}\t{other}"),
                        }
                    }
                }
            }
            eprintln!(
                "states visited: {}, elapsed: {elapsed_ms} ms",
                report.stats.states_visited
            );
        }
        Format::Bfile => {
            let table = report.table.as_ref().filter(|t| t.bfile).ok_or_else(|| {
                Failure::Usage("b-file output needs sweep --list or sweep --max-bits".into())
            })?;
            for row in &table.rows {
                println!("{} {}", row[0], row[1]);
            }
            eprintln!(
                "states visited: {}, elapsed: {elapsed_ms} ms",
                report.stats.states_visited
            );
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let opts = &cli.run;
    match &cli.command {
        Command::Decide { target } => cmd_decide(opts, target),
        Command::Smallest { target } => cmd_smallest(opts, target),
        Command::Count { target } => cmd_count(opts, target),
        Command::Sweep(args) => cmd_sweep(opts, args),
        Command::Heuristic { n, max_depth } => cmd_heuristic(opts, *n, *max_depth),
        Command::Approx { alpha, n } => cmd_approx(opts, alpha, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        print(&report, cli.run.format)?;
        Ok(report.definitive)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("palquot: no definitive answer within the budget");
            ExitCode::from(3)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("palquot: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Search(e)) => {
            eprintln!("palquot: {e}");
            ExitCode::from(3)
        }
    }
}
