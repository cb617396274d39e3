mod args;
mod output;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use args::{fresh_seed, parse_real};
use dnp_core::bounds::{self, BoundKind, BoundParams, LargeComponentsMode};
use dnp_core::digraph::{sample_digraph, scc_decompose};
use dnp_core::enumeration::{brute_force_scc_count, ear_bound, rational_to_f64, refined_bound, MAX_BRUTE_FORCE_VERTICES};
use dnp_core::exploration::{certify_component, explore};
use dnp_core::montecarlo::{self, ExperimentConfig};
use dnp_core::{critical_p, Digraph, Error};
use output::{Format, Header};

/// Experiments on the strongly connected components of the random digraph
/// D(n, p) in the critical window p = 1/n + lambda n^(-4/3).
#[derive(Parser, Debug)]
#[command(name = "dnp", version, about, long_about = None)]
struct Cli {
    /// Worker threads for randomized commands [default: all cores]
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write output here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample D(n, p) and print it as "n m" followed by one "u v" line per arc
    Sample(SampleArgs),
    /// Strongly connected components of a digraph read from a file or stdin
    Scc(SccArgs),
    /// Run the exploration process from a start set and print its trace
    Explore(ExploreArgs),
    /// Decide whether a strongly connected vertex set is a whole component
    Certify(CertifyArgs),
    /// Table of Y(m, k) with the ear-decomposition and refined upper bounds
    Enumerate(EnumerateArgs),
    /// Evaluate the explicit bounds and constants
    Bounds(BoundsArgs),
    /// Estimate tail probabilities of the largest component size
    Tail(TailArgs),
    /// Count cycles in the lower-tail length window and compare with Janson
    Cycles(CyclesArgs),
    /// Excess of the largest component and short-cycle counts
    Excess(ExcessArgs),
    /// Compare |C1(D)| n^(-1/3) with a product of undirected giants (report only)
    Conjecture(ConjectureArgs),
}

#[derive(Args, Debug, Clone)]
struct Window {
    /// Number of vertices
    #[arg(long)]
    n: usize,
    /// Window parameter; p = 1/n + lambda n^(-4/3). Accepts ratios such as 1/2
    #[arg(long, default_value = "0", value_parser = parse_real, allow_hyphen_values = true)]
    lambda: f64,
    /// Independent trials
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Base seed; a fresh one is drawn and printed when omitted
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    /// Number of vertices
    #[arg(long)]
    n: usize,
    /// Arc probability; overrides --lambda
    #[arg(long, value_parser = parse_real)]
    p: Option<f64>,
    /// Window parameter used when --p is absent
    #[arg(long, default_value = "0", value_parser = parse_real, allow_hyphen_values = true)]
    lambda: f64,
    /// Seed; a fresh one is drawn and printed when omitted
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct SccArgs {
    /// Digraph file in the "n m" / "u v" format [default: stdin]
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ExploreArgs {
    /// Digraph file [default: stdin]
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Comma-separated start set A0
    #[arg(long, required = true, value_delimiter = ',')]
    start: Vec<usize>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Digraph file [default: stdin]
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Comma-separated vertex set; must induce a strongly connected digraph
    #[arg(long, required = true, value_delimiter = ',')]
    vertices: Vec<usize>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// Number of vertices
    #[arg(long)]
    m: u64,
    /// Only this excess [default: every excess possible on m vertices]
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundName {
    LowerTail,
    UpperTail,
    JansonMu,
    JansonDelta,
    Tau1,
    ComponentProb,
    LargeComponents,
    Harmonic,
    Chernoff,
    ZetaEta,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Evaluate every bound
    #[arg(long, conflicts_with = "name")]
    all: bool,
    /// Evaluate a single bound
    #[arg(long, value_enum, required_unless_present = "all")]
    name: Option<BoundName>,
    /// Lower-tail and cycle-window parameter; accepts ratios such as 1/800
    #[arg(long, default_value = "1/800", value_parser = parse_real)]
    delta: f64,
    /// Window parameter lambda
    #[arg(long, default_value = "0", value_parser = parse_real, allow_hyphen_values = true)]
    lambda: f64,
    /// Upper-tail threshold in units of n^(1/3)
    #[arg(long = "A", default_value = "1", value_parser = parse_real)]
    a: f64,
    /// Number of vertices for the finite-n bounds
    #[arg(long, default_value_t = 1_000_000)]
    n: u64,
    /// Start size for the exploration bounds
    #[arg(long, default_value_t = 900)]
    m: u64,
    /// Time-scale constant in (0, sqrt 2)
    #[arg(long, default_value = "1", value_parser = parse_real)]
    c: f64,
    /// Partition width
    #[arg(long, default_value = "0.025", value_parser = parse_real)]
    epsilon: f64,
    /// Partition count
    #[arg(long, default_value_t = 45)]
    r: u32,
    /// Use the rounded published beta = 100, gamma = 0.06 instead of the derived ones
    #[arg(long)]
    published: bool,
    /// Point x for the Chernoff rate
    #[arg(long, default_value = "0.2", value_parser = parse_real)]
    x: f64,
    /// Probability p for the Chernoff rate
    #[arg(long, default_value = "0.4", value_parser = parse_real)]
    p: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct TailArgs {
    #[command(flatten)]
    window: Window,
    /// Upper-tail thresholds in units of n^(1/3)
    #[arg(long = "A", default_value = "0.5,1,2,4", value_delimiter = ',', value_parser = parse_real)]
    a: Vec<f64>,
    /// Lower-tail thresholds in units of n^(1/3)
    #[arg(long, value_delimiter = ',', value_parser = parse_real)]
    delta: Vec<f64>,
    /// Stream per-trial samples as CSV "n,lambda,trial,L1,L1_scaled" to this file
    #[arg(long)]
    dump_samples: Option<PathBuf>,
    /// Refuse runs with more than this many n * trials
    #[arg(long, default_value_t = montecarlo::DEFAULT_VERTEX_TRIAL_CAP)]
    max_vertex_trials: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct CyclesArgs {
    #[command(flatten)]
    window: Window,
    /// Window parameter: lengths from ceil(delta n^(1/3)) to floor(delta^(1/2) n^(1/3))
    #[arg(long, value_parser = parse_real)]
    delta: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct ExcessArgs {
    #[command(flatten)]
    window: Window,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct ConjectureArgs {
    #[command(flatten)]
    window: Window,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Failure with the process exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_) | Error::Structure(_) | Error::Parse { .. } => 2,
            Error::Resource(_) => 3,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.msg.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dnp: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure { code: 1, msg: e.to_string() })?;
    }
    let jobs = cli.jobs.unwrap_or_else(rayon::current_num_threads);
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match cli.command {
        Command::Sample(a) => cmd_sample(a, &mut out)?,
        Command::Scc(a) => cmd_scc(a, &mut out)?,
        Command::Explore(a) => cmd_explore(a, &mut out)?,
        Command::Certify(a) => cmd_certify(a, &mut out)?,
        Command::Enumerate(a) => cmd_enumerate(a, &mut out)?,
        Command::Bounds(a) => cmd_bounds(a, &mut out)?,
        Command::Tail(a) => cmd_tail(a, jobs, &mut out)?,
        Command::Cycles(a) => cmd_cycles(a, jobs, &mut out)?,
        Command::Excess(a) => cmd_excess(a, jobs, &mut out)?,
        Command::Conjecture(a) => cmd_conjecture(a, jobs, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn require_format(format: Format, allowed: &[Format], command: &str) -> Outcome {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(usage(format!("{command} does not support --format {}", format.name())))
    }
}

fn read_digraph(input: &Option<PathBuf>) -> Result<Digraph, Failure> {
    let d = match input {
        Some(path) => Digraph::read_text(BufReader::new(File::open(path)?))?,
        None => Digraph::read_text(io::stdin().lock())?,
    };
    Ok(d)
}

fn input_name(input: &Option<PathBuf>) -> String {
    input.as_ref().map_or_else(|| "stdin".to_string(), |p| p.display().to_string())
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(fresh_seed)
}

fn cmd_sample(a: SampleArgs, out: &mut dyn Write) -> Outcome {
    let seed = resolve_seed(a.seed);
    let p = a.p.unwrap_or_else(|| critical_p(a.n, a.lambda));
    let mut header = Header::new("sample");
    header.push("n", a.n).push("p", p);
    if a.p.is_none() {
        header.push("lambda", a.lambda);
    }
    header.push("seed", seed);
    // The digraph itself goes to the output untouched so it can be piped.
    eprintln!("{}", header.comment_line());
    let d = sample_digraph(a.n, p, seed)?;
    d.write_text(out)?;
    Ok(())
}

fn cmd_scc(a: SccArgs, out: &mut dyn Write) -> Outcome {
    let d = read_digraph(&a.input)?;
    let scc = scc_decompose(&d);
    let mut header = Header::new("scc");
    header.push("input", input_name(&a.input)).push("format", a.format.name());
    match a.format {
        Format::Json => {
            let result = json!({ "n": d.n(), "arcs": d.arc_count(), "decomposition": scc });
            output::write_json(out, &header, result)?;
        }
        Format::Csv => {
            header.write_comment(out)?;
            writeln!(out, "component,size,excess,vertices")?;
            for (i, comp) in scc.components.iter().enumerate() {
                writeln!(out, "{i},{},{},{}", scc.sizes[i], scc.excesses[i], join(comp, " "))?;
            }
        }
        Format::Text => {
            header.write_comment(out)?;
            writeln!(out, "vertices {} arcs {}", d.n(), d.arc_count())?;
            writeln!(out, "components {} largest {}", scc.len(), scc.largest_size)?;
            for (i, comp) in scc.components.iter().enumerate() {
                writeln!(out, "size {} excess {}: {}", scc.sizes[i], scc.excesses[i], join(comp, " "))?;
            }
        }
    }
    Ok(())
}

fn cmd_explore(a: ExploreArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Csv, Format::Json], "explore")?;
    let d = read_digraph(&a.input)?;
    let trace = explore(&d, &a.start)?;
    let mut header = Header::new("explore");
    header.push("input", input_name(&a.input)).push("start", join(&a.start, ",")).push("format", a.format.name());
    match a.format {
        Format::Json => output::write_json(out, &header, serde_json::to_value(&trace).expect("serializable"))?,
        _ => {
            header.write_comment(out)?;
            trace.write_csv(out)?;
        }
    }
    Ok(())
}

fn cmd_certify(a: CertifyArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Text, Format::Json], "certify")?;
    let d = read_digraph(&a.input)?;
    let (is_component, back_edges) = certify_component(&d, &a.vertices)?;
    let mut header = Header::new("certify");
    header.push("input", input_name(&a.input)).push("vertices", join(&a.vertices, ",")).push("format", a.format.name());
    let result = json!({ "is_component": is_component, "back_edges": back_edges });
    output::write(out, a.format, &header, result)?;
    Ok(())
}

fn cmd_enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Csv, Format::Json], "enumerate")?;
    if a.m < 1 {
        return Err(usage("--m must be at least 1"));
    }
    let m = a.m;
    let max_k = (m * (m - 1)) as i64 - m as i64;
    let min_k = if m == 1 { -1 } else { 0 };
    let ks: Vec<i64> = match a.k {
        Some(k) if k < min_k || k > max_k.max(min_k) => {
            return Err(usage(format!("--k {k} outside [{min_k}, {}] for m = {m}", max_k.max(min_k))));
        }
        Some(k) => vec![k],
        None => (min_k..=max_k.max(min_k)).collect(),
    };
    let mut header = Header::new("enumerate");
    header.push("m", m).push("format", a.format.name());
    if let Some(k) = a.k {
        header.push("k", k);
    }
    let mut rows = Vec::new();
    for k in ks {
        let exact = if m as usize <= MAX_BRUTE_FORCE_VERTICES { Some(brute_force_scc_count(m as usize, k)?) } else { None };
        let (ear, refined) = if k >= 0 {
            let ear = rational_to_f64(&ear_bound(m, k as u64)?);
            let refined = refined_bound(m, k as u64);
            (Some(ear), Some(refined))
        } else {
            (None, None)
        };
        rows.push((k, exact, ear, refined));
    }
    match a.format {
        Format::Json => {
            let result: Vec<Value> = rows
                .iter()
                .map(|(k, exact, ear, refined)| {
                    json!({
                        "m": m,
                        "k": k,
                        "exact": exact,
                        "ear_bound": ear,
                        "refined_bound": refined.as_ref().and_then(|r| r.value()),
                        "refined_in_domain": refined.as_ref().is_some_and(|r| r.in_domain()),
                    })
                })
                .collect();
            output::write_json(out, &header, Value::Array(result))?;
        }
        _ => {
            header.write_comment(out)?;
            writeln!(out, "m,k,exact,ear_bound,refined_bound,refined_in_domain")?;
            for (k, exact, ear, refined) in rows {
                writeln!(
                    out,
                    "{m},{k},{},{},{},{}",
                    opt(exact),
                    opt(ear),
                    opt(refined.as_ref().and_then(|r| r.value())),
                    refined.as_ref().is_some_and(|r| r.in_domain())
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text], "bounds")?;
    let params = if a.published {
        BoundParams::published(a.lambda, a.delta, a.a)
    } else {
        BoundParams::derived(a.lambda, a.delta, a.a, a.epsilon, a.r)?
    };
    let mut header = Header::new("bounds");
    match a.name {
        Some(name) => header.push("name", name.to_possible_value().expect("named").get_name().to_string()),
        None => header.push("all", true),
    };
    header
        .push("delta", a.delta)
        .push("lambda", a.lambda)
        .push("A", a.a)
        .push("n", a.n)
        .push("m", a.m)
        .push("c", a.c)
        .push("epsilon", a.epsilon)
        .push("r", a.r)
        .push("published", a.published)
        .push("format", a.format.name());
    if a.name == Some(BoundName::Chernoff) {
        header.push("x", a.x).push("p", a.p);
    }

    let to_values = |reports: Vec<bounds::BoundReport>| -> Vec<Value> {
        reports.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect()
    };
    let kind = |k| bounds::evaluate(k, &params, a.n, a.m, a.c).map(to_values);
    let result: Vec<Value> = match a.name {
        None => {
            let mut v = to_values(bounds::evaluate_all(&params, a.n, a.m, a.c)?);
            v.extend(zeta_eta_reports(&params, a.lambda, a.delta, a.a));
            v
        }
        Some(BoundName::LowerTail) => kind(BoundKind::LowerTail)?,
        Some(BoundName::UpperTail) => kind(BoundKind::UpperTail)?,
        Some(BoundName::JansonMu) => kind(BoundKind::JansonMu)?,
        Some(BoundName::JansonDelta) => kind(BoundKind::JansonDelta)?,
        Some(BoundName::Tau1) => kind(BoundKind::Tau1)?,
        Some(BoundName::ComponentProb) => kind(BoundKind::ComponentProb)?,
        Some(BoundName::LargeComponents) => kind(BoundKind::LargeComponents)?,
        Some(BoundName::Harmonic) => kind(BoundKind::Harmonic)?,
        Some(BoundName::Chernoff) => {
            let g = bounds::chernoff_g(a.x, a.p)?;
            vec![json!({
                "name": "chernoff_g",
                "params": { "x": a.x, "p": a.p },
                "value": g,
                "valid": true,
                "slack_terms": { "quadratic_lower": (a.x - a.p).powi(2) / (2.0 * a.p) },
            })]
        }
        Some(BoundName::ZetaEta) => zeta_eta_reports(&params, a.lambda, a.delta, a.a),
    };
    // A single-report selection prints the bare object.
    let result = if result.len() == 1 { result.into_iter().next().expect("one") } else { Value::Array(result) };
    output::write(out, a.format, &header, result)?;
    Ok(())
}

fn zeta_eta_reports(params: &BoundParams, lambda: f64, delta: f64, a: f64) -> Vec<Value> {
    let published = BoundParams::published(lambda, delta, a);
    [("zeta_eta_published", &published), ("zeta_eta_derived", params)]
        .into_iter()
        .map(|(name, p)| {
            let closed = bounds::expected_large_components(a, 0, 0.0, p.beta, p.gamma, p.c_enum, LargeComponentsMode::ClosedForm)
                .expect("positive constants");
            json!({
                "name": name,
                "params": { "beta": p.beta, "gamma": p.gamma, "C": p.c_enum },
                "value": closed.zeta,
                "valid": closed.zeta < 2e7 && closed.eta >= 0.03,
                "slack_terms": {},
                "zeta": closed.zeta,
                "eta": closed.eta,
            })
        })
        .collect()
}

fn window_header(command: &str, w: &Window, seed: u64, jobs: usize) -> Header {
    let mut h = Header::new(command);
    h.push("n", w.n)
        .push("lambda", w.lambda)
        .push("p", critical_p(w.n, w.lambda))
        .push("trials", w.trials)
        .push("seed", seed)
        .push("jobs", jobs);
    h
}

fn cmd_tail(a: TailArgs, jobs: usize, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Csv, Format::Json], "tail")?;
    let seed = resolve_seed(a.window.seed);
    let mut cfg = ExperimentConfig::new(a.window.n, a.window.lambda, a.window.trials, seed).with_thresholds(a.a.clone());
    cfg.max_vertex_trials = a.max_vertex_trials;
    cfg.validate()?;
    let deltas = a.delta.clone();
    let mut header = window_header("tail", &a.window, seed, jobs);
    header.push("A", join(&a.a, ",")).push("delta", join(&deltas, ",")).push("max_vertex_trials", a.max_vertex_trials);
    if let Some(path) = &a.dump_samples {
        header.push("dump_samples", path.display().to_string());
    }
    header.push("format", a.format.name());

    let mut dump = match &a.dump_samples {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            header.write_comment(&mut w)?;
            writeln!(w, "n,lambda,trial,L1,L1_scaled")?;
            Some(w)
        }
        None => None,
    };
    let scale = (cfg.n as f64).cbrt();
    let mut largest = Vec::with_capacity(cfg.trials as usize);
    let step = (cfg.trials / 10).max(1);
    let mut next_beat = step;
    let mut io_error = None;
    montecarlo::for_each_largest_scc(&cfg, |trial, l1| {
        if let Some(w) = dump.as_mut() {
            if let Err(e) = writeln!(w, "{},{},{trial},{l1},{}", cfg.n, cfg.lambda, l1 as f64 / scale) {
                io_error.get_or_insert(e);
            }
        }
        largest.push(l1);
        let done = trial + 1;
        if cfg.trials >= 10 && done >= next_beat {
            eprintln!("# tail progress {done}/{} trials", cfg.trials);
            next_beat += step;
        }
        Ok(())
    })?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    if let Some(mut w) = dump {
        w.flush()?;
    }
    let est = montecarlo::tail_from_samples(&cfg, largest);
    let lower: Vec<(f64, (u64, f64, f64))> = deltas.iter().map(|&d| (d, est.lower_tail(d))).collect();
    match a.format {
        Format::Json => {
            let mut result = serde_json::to_value(&est).expect("serializable");
            result["lower_records"] = lower
                .iter()
                .map(|&(d, (hits, prob, radius))| json!({ "threshold": d, "hits": hits, "probability": prob, "wilson_radius_99": radius }))
                .collect();
            output::write_json(out, &header, result)?;
        }
        _ => {
            header.write_comment(out)?;
            writeln!(out, "tail,threshold,hits,trials,probability,wilson_radius_99")?;
            for r in &est.records {
                writeln!(out, "upper,{},{},{},{},{}", r.threshold, r.hits, est.trials, r.probability, r.wilson_radius_99)?;
            }
            for (d, (hits, prob, radius)) in lower {
                writeln!(out, "lower,{d},{hits},{},{prob},{radius}", est.trials)?;
            }
            let s = &est.summary;
            writeln!(
                out,
                "# summary L1_scaled min={} q1={} median={} q3={} max={} mean={}",
                s.min, s.q1, s.median, s.q3, s.max, s.mean
            )?;
        }
    }
    Ok(())
}

fn cmd_cycles(a: CyclesArgs, jobs: usize, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text], "cycles")?;
    let seed = resolve_seed(a.window.seed);
    let mut header = window_header("cycles", &a.window, seed, jobs);
    header.push("delta", a.delta).push("format", a.format.name());
    let w = &a.window;
    let report = montecarlo::cycle_window_experiment(w.n, a.delta, w.lambda, w.trials, seed)?;
    output::write(out, a.format, &header, serde_json::to_value(&report).expect("serializable"))?;
    Ok(())
}

fn cmd_excess(a: ExcessArgs, jobs: usize, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text], "excess")?;
    let seed = resolve_seed(a.window.seed);
    let mut header = window_header("excess", &a.window, seed, jobs);
    header.push("format", a.format.name());
    let w = &a.window;
    let report = montecarlo::excess_experiment(w.n, w.lambda, w.trials, seed)?;
    let mut value = serde_json::to_value(&report).expect("serializable");
    if a.format == Format::Text {
        // Per-trial vectors are only useful in JSON.
        value.as_object_mut().expect("object").retain(|k, _| k != "largest_excess" && k != "cycle_counts");
    }
    output::write(out, a.format, &header, value)?;
    Ok(())
}

fn cmd_conjecture(a: ConjectureArgs, jobs: usize, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text], "conjecture")?;
    let seed = resolve_seed(a.window.seed);
    let mut header = window_header("conjecture", &a.window, seed, jobs);
    header.push("format", a.format.name());
    let w = &a.window;
    let report = montecarlo::conjecture_experiment(w.n, w.lambda, w.trials, seed)?;
    output::write(out, a.format, &header, serde_json::to_value(&report).expect("serializable"))?;
    Ok(())
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
