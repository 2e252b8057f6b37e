use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use randcomplex::complex::SimplicialComplex;
use randcomplex::lab::{
    self, chi_square_test, enumerate_distribution, enumerate_space, metric_names, monte_carlo, stats,
    verify_identities, AxisRange, ExperimentReport, SweepGrid, SweepMetric,
};
use randcomplex::measure::ParameterVector;
use randcomplex::params::{
    degree_law, intersection_parameters, link_parameters, links_intersection_parameters, Preset,
};
use randcomplex::sampler::{sample_stream, SampleConfig};
use randcomplex::topology;

const VERIFY_FAILED: u8 = 1;
const USAGE: u8 = 2;

type Failure = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(name = "randcomplex", version, about = "Multi-parameter random simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw complexes; one canonical JSON complex per line.
    Sample(SampleArgs),
    /// List Ω_n^r, or its exact distribution when --p is given.
    Enumerate(EnumerateArgs),
    /// Check every closed-form law against exhaustive enumeration.
    #[command(after_help = CHI_HELP)]
    Verify(VerifyArgs),
    /// Monte Carlo estimate of a named event or statistic.
    Mc(McArgs),
    /// Phase-diagram sweep over exponents with p_i = n^(-alpha_i).
    Sweep(SweepArgs),
    /// Evaluate a topological property of each complex in a file.
    Check(CheckArgs),
    /// Derived parameter laws.
    Law {
        #[command(subcommand)]
        law: LawCommand,
    },
}

const CHI_HELP: &str = "\
Sampler fidelity (--chi-square): Pearson goodness of fit over complex bins. \
Bins with expected count below 5 are pooled into a single tail bin; \
the test passes when its p-value is at least --significance (default 0.01).";

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Connected,
    Isolated,
    Certificate,
    Dimension,
}

/// Comma-separated parameters such as `0.6,0.5,0.4`, or a preset such as
/// `erdos_renyi(0.1)`, `linial_meshulam(0.3)`, `meshulam_wallach(3,0.4)`, `clique(0.2)`.
#[derive(Clone, Debug)]
enum ParamSpec {
    Vector(ParameterVector),
    Preset(Preset),
}

impl ParamSpec {
    fn resolve(&self, r: Option<usize>) -> Result<ParameterVector, Failure> {
        match (self, r) {
            (ParamSpec::Vector(p), Some(r)) if p.r() != r => {
                Err(format!("--p has {} entries but --r {r} needs {}", p.len(), r + 1).into())
            }
            (ParamSpec::Vector(p), _) => Ok(p.clone()),
            (ParamSpec::Preset(preset), Some(r)) => Ok(preset.parameters(r)?),
            (ParamSpec::Preset(preset), None) => Ok(preset.default_parameters(2)?),
        }
    }
}

fn parse_params(s: &str) -> Result<ParamSpec, String> {
    if s.contains('(') {
        s.parse::<Preset>().map(ParamSpec::Preset).map_err(|e| e.to_string())
    } else {
        s.parse::<ParameterVector>().map(ParamSpec::Vector)
    }
}

fn parse_vector(s: &str) -> Result<ParameterVector, String> {
    s.parse()
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl Output {
    fn writer(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: u32,
    /// Dimension; defaults to the length of --p minus one.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_parser = parse_params)]
    p: ParamSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    r: usize,
    #[arg(long, value_parser = parse_params)]
    p: Option<ParamSpec>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    r: usize,
    /// Parameter vector to check; repeat for a grid. Defaults to a grid over {0, 0.3, 0.7, 1}.
    #[arg(long, value_parser = parse_params)]
    p: Vec<ParamSpec>,
    /// Also test the sampler against the exact law with this many draws per vector.
    #[arg(long)]
    chi_square: Option<u64>,
    #[arg(long, default_value_t = stats::DEFAULT_SIGNIFICANCE)]
    significance: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct McArgs {
    /// Event or statistic name (see --list).
    #[arg(long, required_unless_present = "list")]
    metric: Option<String>,
    #[arg(long, required_unless_present = "list")]
    n: Option<u32>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_parser = parse_params, required_unless_present_any = ["alphas", "list"])]
    p: Option<ParamSpec>,
    /// Exponents alpha_0,alpha_1,...; sets p_i = n^(-alpha_i).
    #[arg(long, conflicts_with = "p")]
    alphas: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Print the available metric names.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    /// Three axes separated by commas, each `start:end:steps` or a single value.
    #[arg(long)]
    alphas: String,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// connected_fraction, certified_fraction, isolated_vertex_fraction, mean_dimension or mean_f_vector.
    #[arg(long, default_value = "connected_fraction")]
    metric: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Newline-delimited canonical JSON complexes; `-` reads standard input.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    what: What,
    /// For `certificate`, also re-check certified complexes against their star cover.
    #[arg(long)]
    audit: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LawCommand {
    /// Parameters of the link of a k-simplex.
    Link {
        #[arg(long, value_parser = parse_params)]
        p: ParamSpec,
        /// Dimension for presets that do not fix one.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Parameters of the intersection of two independent complexes.
    Intersect {
        #[arg(long, value_parser = parse_params)]
        p: ParamSpec,
        #[arg(long, value_parser = parse_vector)]
        q: ParameterVector,
    },
    /// Parameters of the intersection of the links of k vertices.
    Links {
        #[arg(long, value_parser = parse_params)]
        p: ParamSpec,
        /// Dimension for presets that do not fix one.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Degree law of a fixed k-simplex in Y ∈ Ω_n^r.
    Degree {
        #[arg(long, value_parser = parse_params)]
        p: ParamSpec,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(VERIFY_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}

/// `Ok(false)` when a verification ran and failed.
fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Sample(a) => sample(a).map(|_| true),
        Command::Enumerate(a) => enumerate(a).map(|_| true),
        Command::Verify(a) => verify(a),
        Command::Mc(a) => mc(a).map(|_| true),
        Command::Sweep(a) => sweep(a).map(|_| true),
        Command::Check(a) => check(a).map(|_| true),
        Command::Law { law } => law_command(law).map(|_| true),
    }
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Output {
        out: path.clone(),
        format: Format::Json,
    }
    .writer()
}

fn sample(a: SampleArgs) -> Result<(), Failure> {
    let params = a.p.resolve(a.r)?;
    let config = SampleConfig::new(a.n, params, a.seed, a.count)?;
    let mut out = open_out(&a.out)?;
    for y in sample_stream(&config)? {
        writeln!(out, "{}", y.to_canonical_json())?;
    }
    out.flush()?;
    Ok(())
}

fn enumerate(a: EnumerateArgs) -> Result<(), Failure> {
    let mut out = a.output.writer()?;
    match (&a.p, a.output.format) {
        (None, Format::Json) => {
            for y in enumerate_space(a.n, a.r)? {
                writeln!(out, "{}", y.to_canonical_json())?;
            }
        }
        (None, Format::Csv) => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["complex"])?;
            for y in enumerate_space(a.n, a.r)? {
                w.write_record([randcomplex::complex::canonical_key(&y)])?;
            }
            w.flush()?;
            return Ok(());
        }
        (Some(spec), format) => {
            let dist = enumerate_distribution(a.n, a.r, &spec.resolve(Some(a.r))?)?;
            match format {
                Format::Json => serde_json::to_writer(&mut out, &dist)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["complex", "probability"])?;
                    for (key, p) in &dist.entries {
                        w.write_record([key.clone(), p.to_string()])?;
                    }
                    w.flush()?;
                    return Ok(());
                }
            }
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn default_grid(r: usize) -> Vec<ParameterVector> {
    let levels = [0.0, 0.3, 0.7, 1.0];
    let mut grid: Vec<ParameterVector> = levels
        .iter()
        .map(|&v| ParameterVector::new(vec![v; r + 1]).expect("valid"))
        .collect();
    for shift in 0..levels.len() {
        let v = (0..=r).map(|i| levels[(i + shift) % levels.len()]).collect();
        grid.push(ParameterVector::new(v).expect("valid"));
    }
    grid
}

fn write_reports(reports: &[ExperimentReport], output: &Output) -> Result<(), Failure> {
    let mut out = output.writer()?;
    match output.format {
        Format::Json => {
            for r in reports {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<bool, Failure> {
    let grid = if a.p.is_empty() {
        default_grid(a.r)
    } else {
        a.p.iter().map(|s| s.resolve(Some(a.r))).collect::<Result<_, _>>()?
    };
    let mut reports = verify_identities(a.n, a.r, &grid)?;
    if let Some(trials) = a.chi_square {
        for (i, params) in grid.iter().enumerate() {
            let exact = enumerate_distribution(a.n, a.r, params)?;
            let seed = randcomplex::rng::derive_seed(a.seed, i as u64);
            let config = SampleConfig::new(a.n, params.clone(), seed, trials)?;
            let mut report = chi_square_test(sample_stream(&config)?, &exact, a.significance, seed)?;
            report.metric = format!("{}@{params}", report.metric);
            reports.push(report);
        }
    }
    write_reports(&reports, &a.output)?;
    Ok(reports.iter().all(ExperimentReport::passed))
}

fn mc(a: McArgs) -> Result<(), Failure> {
    if a.list {
        let mut out = a.output.writer()?;
        for name in metric_names() {
            writeln!(out, "{name}")?;
        }
        out.flush()?;
        return Ok(());
    }
    let metric = a.metric.as_deref().expect("required by clap");
    let n = a.n.expect("required by clap");
    let params = match (&a.p, &a.alphas) {
        (Some(spec), _) => spec.resolve(a.r)?,
        (None, Some(alphas)) => {
            let alpha = alphas
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()?;
            if alpha.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
                return Err("exponents must be finite and >= 0".into());
            }
            ParameterVector::new(alpha.iter().map(|x| (n as f64).powf(-x)).collect())?
        }
        (None, None) => unreachable!("clap requires --p or --alphas"),
    };
    let config = SampleConfig::new(n, params, a.seed, a.trials)?;
    let report = monte_carlo(metric, &config)?;
    write_reports(&[report], &a.output)
}

fn sweep(a: SweepArgs) -> Result<(), Failure> {
    let axes: Vec<AxisRange> = a.alphas.split(',').map(str::parse).collect::<Result<_, _>>()?;
    let axes: [AxisRange; 3] = axes
        .try_into()
        .map_err(|_| lab::LabError::InvalidGrid("--alphas needs exactly three axes".into()))?;
    let grid = SweepGrid {
        axes,
        n: a.n,
        trials: a.trials,
        metric: a.metric.parse::<SweepMetric>()?,
    };
    let rows = lab::sweep(&grid, a.seed)?;
    let mut out = open_out(&a.out)?;
    match a.format {
        Format::Csv => lab::write_csv(&rows, out)?,
        Format::Json => {
            for row in &rows {
                writeln!(out, "{}", serde_json::to_string(row)?)?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckLine {
    line: usize,
    what: &'static str,
    result: serde_json::Value,
}

fn check(a: CheckArgs) -> Result<(), Failure> {
    let input: Box<dyn BufRead> = if a.input.as_os_str() == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        Box::new(BufReader::new(File::open(&a.input)?))
    };
    let mut out = open_out(&a.out)?;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let y = SimplicialComplex::from_canonical_json(&line)?;
        let (what, result) = match a.what {
            What::Connected => ("connected", json!(topology::is_connected(&y))),
            What::Isolated => ("isolated", json!(topology::isolated_vertices(&y))),
            What::Dimension => ("dimension", json!(topology::dimension(&y))),
            What::Certificate => {
                let cert = topology::certify_simply_connected(&y);
                let mut value = serde_json::to_value(&cert)?;
                if a.audit && cert.is_certified() {
                    value["audit"] = serde_json::to_value(topology::audit_nerve(&y))?;
                }
                ("certificate", value)
            }
        };
        let record = CheckLine {
            line: i + 1,
            what,
            result,
        };
        writeln!(out, "{}", serde_json::to_string(&record)?)?;
    }
    out.flush()?;
    Ok(())
}

fn law_command(law: LawCommand) -> Result<(), Failure> {
    let value = match law {
        LawCommand::Link { p, r, k } => {
            let p = p.resolve(r)?;
            json!({ "law": "link", "k": k, "input": p.as_slice(), "output": link_parameters(&p, k)?.as_slice() })
        }
        LawCommand::Intersect { p, q } => {
            let p = p.resolve(Some(q.r()))?;
            json!({ "law": "intersect", "p": p.as_slice(), "q": q.as_slice(), "output": intersection_parameters(&p, &q)?.as_slice() })
        }
        LawCommand::Links { p, r, k } => {
            let p = p.resolve(r)?;
            json!({ "law": "links_intersection", "k": k, "input": p.as_slice(), "output": links_intersection_parameters(&p, k)?.as_slice() })
        }
        LawCommand::Degree { p, r, n, k } => {
            let p = p.resolve(r)?;
            let law = degree_law(&p, n, k)?;
            json!({ "law": "degree", "k": k, "n": n, "trials": law.trials, "success": law.success, "mean": law.mean() })
        }
    };
    println!("{value}");
    Ok(())
}
