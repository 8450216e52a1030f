use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use girthlab::analysis::{min_distance, stats};
use girthlab::apfree::{behrend_sequence, greedy_3ap_free};
use girthlab::bounds::{bound, least_squares_slope};
use girthlab::regular::build_h_reg;
use girthlab::semiregular::build_h_s;
use girthlab::{io, ApFreeSequence, BoundQuery, DistanceKind, ParityCheckMatrix, Strategy};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(
    name = "girthlab",
    version,
    about = "Girth-8 Tanner graph constructions, verifiers and bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a parity-check matrix and write it to a file.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Report girth, minimum distance and degree profile of a matrix file.
    Analyze(AnalyzeArgs),
    /// Lower bound on the number of check nodes.
    Bound {
        #[arg(long)]
        girth: usize,
        #[arg(long)]
        wc: u64,
        #[arg(long)]
        n: u64,
    },
    /// Bounds over a geometric grid of n, written as CSV.
    Sweep {
        #[arg(long)]
        girth: usize,
        #[arg(long)]
        wc: u64,
        #[arg(long)]
        n_from: u64,
        #[arg(long)]
        n_to: u64,
        #[arg(long, default_value_t = 8)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rewrite a matrix file in another format.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InFormat::Alist)]
        from: InFormat,
        #[arg(long, value_enum)]
        to: Format,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// The (w_c, w_r)-regular girth-8 family.
    Regular {
        #[arg(long)]
        wc: usize,
        #[arg(long)]
        wr: usize,
        #[command(flatten)]
        output: OutputArgs,
        /// Also write column labels as CSV.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// The column-weight-3 family from a 3-AP-free sequence.
    Semiregular {
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = SequenceSource::Greedy)]
        sequence: SequenceSource,
        /// One positive integer per line; takes precedence over --sequence.
        #[arg(long)]
        sequence_file: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Alist)]
    format: Format,
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = InFormat::Alist)]
    format: InFormat,
    #[arg(long)]
    girth: bool,
    #[arg(long)]
    dmin: bool,
    #[arg(long)]
    stats: bool,
    #[arg(long, default_value_t = 6)]
    dmin_cap: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Alist,
    Dense,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum InFormat {
    Alist,
    Dense,
}

#[derive(Clone, Copy, ValueEnum)]
enum SequenceSource {
    Greedy,
    Behrend,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Kernel,
    Capped,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Kernel => Strategy::KernelEnumeration,
            StrategyArg::Capped => Strategy::WeightCappedSearch,
        }
    }
}

/// Exit 1 for I/O and parse problems, exit 2 for invalid parameters.
enum Failure {
    Input(anyhow::Error),
    Params(anyhow::Error),
}

type Outcome<T> = std::result::Result<T, Failure>;

fn params<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Params(e.into())
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

/// Parameters, digests and command line of one run.
struct Manifest {
    params: Map<String, Value>,
    inputs: Map<String, Value>,
    outputs: Map<String, Value>,
}

impl Manifest {
    fn new() -> Self {
        Manifest {
            params: Map::new(),
            inputs: Map::new(),
            outputs: Map::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.into(), value.into());
    }

    fn to_json(&self) -> Value {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        json!({
            "command_line": std::env::args().collect::<Vec<_>>(),
            "params": self.params,
            "version": env!("CARGO_PKG_VERSION"),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "timestamp": timestamp,
        })
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_input(path: &Path, manifest: &mut Manifest) -> Outcome<String> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(input)?;
    manifest
        .inputs
        .insert(path.display().to_string(), digest(text.as_bytes()).into());
    Ok(text)
}

fn write_output(path: &Path, text: &str, manifest: &mut Manifest) -> Outcome<()> {
    fs::write(path, text)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(input)?;
    manifest
        .outputs
        .insert(path.display().to_string(), digest(text.as_bytes()).into());
    Ok(())
}

fn read_matrix(
    path: &Path,
    format: InFormat,
    manifest: &mut Manifest,
) -> Outcome<ParityCheckMatrix> {
    let text = read_input(path, manifest)?;
    let parsed = match format {
        InFormat::Alist => io::read_alist(&text),
        InFormat::Dense => io::read_dense(&text),
    };
    parsed
        .with_context(|| format!("{}", path.display()))
        .map_err(input)
}

fn render(h: &ParityCheckMatrix, format: Format) -> String {
    match format {
        Format::Alist => io::write_alist(h),
        Format::Dense => io::write_dense(h),
        Format::Csv => io::write_csv_edges(h),
    }
}

fn summary(h: &ParityCheckMatrix) -> Map<String, Value> {
    let s = stats(h);
    let mut map = Map::new();
    map.insert("n".into(), s.n.into());
    map.insert("m".into(), s.m.into());
    map.insert("girth".into(), girth_value(s.girth));
    map.insert("column_degrees".into(), s.column_degree_set.into());
    map.insert("row_degrees".into(), s.row_degree_set.into());
    map.insert(
        "regular_pair".into(),
        s.regular_pair.map_or(Value::Null, |(c, r)| json!([c, r])),
    );
    map
}

fn girth_value(g: girthlab::Girth) -> Value {
    match g.value() {
        Some(v) => v.into(),
        None => g.to_string().into(),
    }
}

fn sequence_for(
    t: usize,
    source: SequenceSource,
    file: Option<&Path>,
    manifest: &mut Manifest,
) -> Outcome<ApFreeSequence> {
    if let Some(path) = file {
        let text = read_input(path, manifest)?;
        return ApFreeSequence::parse(&text).map_err(|e| {
            let failure = if matches!(e, girthlab::Error::Parse { .. }) {
                input
            } else {
                params
            };
            failure(anyhow::Error::new(e).context(path.display().to_string()))
        });
    }
    Ok(match source {
        SequenceSource::Greedy => greedy_3ap_free(t),
        SequenceSource::Behrend => {
            let mut max = 4 * t as u64;
            loop {
                let seq = behrend_sequence(max).map_err(params)?;
                if seq.len() >= t {
                    break seq;
                }
                max = max
                    .checked_mul(2)
                    .ok_or_else(|| params(anyhow!("t = {t} is too large")))?;
            }
        }
    })
}

fn construct(kind: ConstructKind) -> Outcome<Value> {
    let mut manifest = Manifest::new();
    let (h, out) = match kind {
        ConstructKind::Regular {
            wc,
            wr,
            output,
            labels,
        } => {
            manifest.param("kind", "regular");
            manifest.param("wc", wc);
            manifest.param("wr", wr);
            let graph = build_h_reg(wc, wr).map_err(params)?;
            if let Some(path) = labels {
                write_output(&path, &graph.labels_csv(), &mut manifest)?;
            }
            (graph.matrix, output)
        }
        ConstructKind::Semiregular {
            t,
            sequence,
            sequence_file,
            output,
        } => {
            manifest.param("kind", "semiregular");
            manifest.param("t", t);
            let seq = sequence_for(t, sequence, sequence_file.as_deref(), &mut manifest)?;
            let h = build_h_s(t, seq.terms()).map_err(params)?;
            manifest.param("sequence", seq.terms()[..t].to_vec());
            (h, output)
        }
    };
    manifest.param("format", format_name(out.format));
    write_output(&out.out, &render(&h, out.format), &mut manifest)?;
    let mut report = summary(&h);
    report.insert("manifest".into(), manifest.to_json());
    Ok(Value::Object(report))
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Alist => "alist",
        Format::Dense => "dense",
        Format::Csv => "csv",
    }
}

fn analyze(args: AnalyzeArgs) -> Outcome<Value> {
    let mut manifest = Manifest::new();
    let h = read_matrix(&args.input, args.format, &mut manifest)?;
    let all = !(args.girth || args.dmin || args.stats);
    let mut report = Map::new();
    report.insert("n".into(), h.n().into());
    report.insert("m".into(), h.m().into());
    if args.stats || all {
        report.insert("stats".into(), Value::Object(summary(&h)));
    }
    if args.girth || all {
        report.insert("girth".into(), girth_value(girthlab::analysis::girth(&h)));
    }
    if args.dmin || all {
        manifest.param("dmin_cap", args.dmin_cap);
        let d = min_distance(&h, args.dmin_cap, args.strategy.into()).map_err(params)?;
        report.insert(
            "dmin".into(),
            json!({
                "kind": d.kind.to_string(),
                "value": d.value,
                "strategy": d.strategy.to_string(),
                "cap": d.cap,
                "witness": d.witness.as_ref().map(|w| w.support().to_vec()),
            }),
        );
        debug_assert!(d.kind == DistanceKind::LowerBound || d.witness.is_some());
    }
    report.insert("manifest".into(), manifest.to_json());
    Ok(Value::Object(report))
}

fn bound_cmd(girth: usize, wc: u64, n: u64) -> Outcome<Value> {
    let mut manifest = Manifest::new();
    manifest.param("girth", girth);
    manifest.param("wc", wc);
    manifest.param("n", n);
    let report = bound(BoundQuery::new(girth, wc, n).map_err(params)?).map_err(params)?;
    Ok(json!({
        "girth": girth,
        "wc": wc,
        "n": n,
        "bound": report.m_lower,
        "bound_ceil": report.m_integer(),
        "method": if report.root.is_some() { "polynomial_root" } else { "closed_form" },
        "residual": report.residual,
        "manifest": manifest.to_json(),
    }))
}

fn geometric_grid(from: u64, to: u64, points: usize) -> Vec<u64> {
    let ratio = (to as f64 / from as f64).powf(1.0 / (points - 1) as f64);
    let mut grid: Vec<u64> = (0..points)
        .map(|i| match i {
            0 => from,
            i if i == points - 1 => to,
            i => (from as f64 * ratio.powi(i as i32)).round() as u64,
        })
        .collect();
    grid.dedup();
    grid
}

fn sweep(
    girth: usize,
    wc: u64,
    n_from: u64,
    n_to: u64,
    points: usize,
    out: &Path,
) -> Outcome<Value> {
    let mut manifest = Manifest::new();
    manifest.param("girth", girth);
    manifest.param("wc", wc);
    manifest.param("n_from", n_from);
    manifest.param("n_to", n_to);
    manifest.param("points", points);
    if n_from == 0 || n_from >= n_to {
        return Err(params(anyhow!(
            "parameters out of range: need 0 < n_from < n_to"
        )));
    }
    if points < 4 {
        return Err(params(anyhow!("parameters out of range: need points >= 4")));
    }
    let grid = geometric_grid(n_from, n_to, points);
    let bounds = grid
        .iter()
        .map(|&n| Ok(bound(BoundQuery::new(girth, wc, n)?)?.m_lower))
        .collect::<girthlab::Result<Vec<f64>>>()
        .map_err(params)?;
    let logs: Vec<(f64, f64)> = grid
        .iter()
        .zip(&bounds)
        .map(|(&n, &b)| ((n as f64).ln(), b.ln()))
        .collect();
    let slope = least_squares_slope(&logs);
    let mut csv = String::from("n,bound,exponent_fit\n");
    for (n, b) in grid.iter().zip(&bounds) {
        csv.push_str(&format!("{n},{b},{slope}\n"));
    }
    write_output(out, &csv, &mut manifest)?;
    Ok(json!({ "points": grid.len(), "exponent_fit": slope, "manifest": manifest.to_json() }))
}

fn convert(input_path: &Path, from: InFormat, to: Format, out: &Path) -> Outcome<Value> {
    let mut manifest = Manifest::new();
    manifest.param("to", format_name(to));
    let h = read_matrix(input_path, from, &mut manifest)?;
    write_output(out, &render(&h, to), &mut manifest)?;
    Ok(json!({ "n": h.n(), "m": h.m(), "manifest": manifest.to_json() }))
}

fn configure_threads() -> Outcome<()> {
    let Ok(raw) = std::env::var("GIRTHLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        params(anyhow!(
            "GIRTHLAB_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(params)
}

fn run(cli: Cli) -> Outcome<Value> {
    configure_threads()?;
    match cli.command {
        Command::Construct { kind } => construct(kind),
        Command::Analyze(args) => analyze(args),
        Command::Bound { girth, wc, n } => bound_cmd(girth, wc, n),
        Command::Sweep {
            girth,
            wc,
            n_from,
            n_to,
            points,
            out,
        } => sweep(girth, wc, n_from, n_to, points, &out),
        Command::Convert {
            input,
            from,
            to,
            out,
        } => convert(&input, from, to, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            // a closed pipe on stdout is not an error worth reporting
            let _ = writeln!(
                std::io::stdout().lock(),
                "{}",
                serde_json::to_string_pretty(&report).expect("json")
            );
            ExitCode::SUCCESS
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Params(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
