use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mixsum::charcore::{build_modulus, DirichletCharacter};
use mixsum::error::{Error, Result};
use mixsum::experiment::{
    emit, fmt_float, max_sweep, max_table, random_table, witness_sweep, witness_table, CsvTable,
    ExperimentConfig,
};
use mixsum::plot::{render_svg, PlotSpec};
use mixsum::randmodels::{random_poly_max, RandomModel};
use mixsum::sums::{direct_sum, direct_sum_kt, SumSpec};

#[derive(Parser)]
#[command(name = "mixsum", version, about = "Mixed character sums modulo a prime")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F(alpha, beta; theta) directly.
    Eval(EvalArgs),
    /// Certified maximum of |F| per character, as CSV.
    Max(SweepArgs),
    /// Lower-bound witness per (p, character, interval), as CSV.
    Witness(SweepArgs),
    /// Scatter plot of two CSV columns as SVG.
    Plot(PlotArgs),
    /// Maxima of random polynomials, one CSV row per trial.
    Random(RandomArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("character").required(true).args(["legendre", "char_index"]))]
#[command(group = clap::ArgGroup::new("point").required(true).args(["theta", "k"]))]
struct EvalArgs {
    #[arg(long)]
    p: u64,
    /// Use the Legendre symbol.
    #[arg(long)]
    legendre: bool,
    /// Character index c, chi(g^j) = e(cj/(p-1)).
    #[arg(long = "char")]
    char_index: Option<u64>,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Evaluate at theta = (k + t)/p.
    #[arg(long, requires = "t")]
    k: Option<u64>,
    #[arg(long)]
    t: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// key = value configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Primes: a list `499,1009` or a range `499..20011`.
    #[arg(long, alias = "p")]
    primes: Option<String>,
    #[arg(long)]
    per_decade: Option<usize>,
    /// all | legendre | sample-N | order-D[,D...]
    #[arg(long)]
    chars: Option<String>,
    /// Intervals `alpha:beta[,alpha:beta...]`.
    #[arg(long, conflicts_with_all = ["alpha", "beta"])]
    intervals: Option<String>,
    #[arg(long, requires = "beta")]
    alpha: Option<f64>,
    #[arg(long, requires = "alpha")]
    beta: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    log_x: bool,
    #[arg(long)]
    title: Option<String>,
}

#[derive(Args)]
struct RandomArgs {
    /// rademacher-iid | rmf-rademacher | rmf-steinhaus
    #[arg(long, default_value = "rademacher-iid")]
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn invocation() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("mixsum {}", args.join(" "))
}

fn sweep_config(a: &SweepArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &a.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    let mut set = |k: &str, v: Option<String>| match v {
        Some(v) => cfg.set(k, &v),
        None => Ok(()),
    };
    set("primes", a.primes.clone())?;
    set("per_decade", a.per_decade.map(|x| x.to_string()))?;
    set("chars", a.chars.clone())?;
    set("intervals", a.intervals.clone())?;
    set("intervals", a.alpha.zip(a.beta).map(|(x, y)| format!("{x}:{y}")))?;
    set("eps", a.eps.map(|x| x.to_string()))?;
    set("seed", a.seed.map(|x| x.to_string()))?;
    set("out", a.out.as_ref().map(|x| x.display().to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

fn report(path: Option<PathBuf>) {
    if let Some(p) = path {
        eprintln!("wrote {}", p.display());
    }
}

fn run_eval(a: &EvalArgs) -> Result<()> {
    let modulus = build_modulus(a.p)?;
    let chi = match a.char_index {
        Some(c) => DirichletCharacter::new(modulus, c)?,
        None => modulus.legendre(),
    };
    let s = SumSpec::new(chi, a.alpha, a.beta)?;
    let v = match (a.theta, a.k, a.t) {
        (Some(theta), _, _) => direct_sum(&s, theta),
        (None, Some(k), Some(t)) => direct_sum_kt(&s, k, t),
        _ => return Err(Error::InvalidParameter("give --theta or --k with --t".into())),
    };
    println!("{} {}", fmt_float(v.re), fmt_float(v.im));
    Ok(())
}

fn run_max(a: &SweepArgs) -> Result<()> {
    let cfg = sweep_config(a)?;
    let rows = max_sweep(&cfg)?;
    report(emit(&max_table(&rows), cfg.out_dir.as_deref(), "max.csv", &invocation())?);
    Ok(())
}

fn run_witness(a: &SweepArgs) -> Result<()> {
    let cfg = sweep_config(a)?;
    let rows = witness_sweep(&cfg)?;
    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    report(emit(&witness_table(&rows), cfg.out_dir.as_deref(), "witness.csv", &invocation())?);
    if failed > 0 {
        eprintln!("{failed} of {} rows failed; see the status column", rows.len());
    }
    Ok(())
}

fn run_plot(a: &PlotArgs) -> Result<()> {
    let table = CsvTable::read(&a.csv)?;
    let spec = PlotSpec {
        x: a.x.clone(),
        y: a.y.clone(),
        log_x: a.log_x,
        title: a.title.clone(),
    };
    let svg = render_svg(&table, &spec)?;
    std::fs::write(&a.out, svg)?;
    Ok(())
}

fn run_random(a: &RandomArgs) -> Result<()> {
    let model = RandomModel::parse(&a.kind)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown model '{}'", a.kind)))?;
    let stats = random_poly_max(model, a.n, a.trials, a.seed)?;
    report(emit(&random_table(&stats), a.out.as_deref(), "random.csv", &invocation())?);
    eprintln!(
        "{} N={} trials={}: min {} median {} max {}",
        model.name(),
        a.n,
        a.trials,
        fmt_float(stats.min),
        fmt_float(stats.median),
        fmt_float(stats.max)
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => run_eval(a),
        Command::Max(a) => run_max(a),
        Command::Witness(a) => run_witness(a),
        Command::Plot(a) => run_plot(a),
        Command::Random(a) => run_random(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
