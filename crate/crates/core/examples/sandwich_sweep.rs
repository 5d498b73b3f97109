//! The standard sweep: certified maxima normalized by sqrt(p) ln p, witness
//! values normalized by sqrt(p) ln ln p, written as CSV and SVG.
//!
//! cargo run --release --example sandwich_sweep -- out_dir

use std::path::PathBuf;

use mixsum::error::Result;
use mixsum::experiment::{emit, max_sweep, max_table, witness_sweep, witness_table, ExperimentConfig};
use mixsum::plot::{render_svg, PlotSpec};

fn main() -> Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sandwich".into()));
    let cfg = ExperimentConfig::standard();

    let mut max_rows = Vec::new();
    for &iv in &cfg.intervals {
        let one = ExperimentConfig { intervals: vec![iv], ..cfg.clone() };
        max_rows.extend(max_sweep(&one)?);
    }
    let witness_rows = witness_sweep(&cfg)?;

    let max_t = max_table(&max_rows);
    let wit_t = witness_table(&witness_rows);
    emit(&max_t, Some(&dir), "max.csv", "sandwich_sweep")?;
    emit(&wit_t, Some(&dir), "witness.csv", "sandwich_sweep")?;

    let mut upper = PlotSpec::new("p", "hi_ln");
    upper.log_x = true;
    upper.title = Some("hi / (sqrt p ln p)".into());
    std::fs::write(dir.join("upper.svg"), render_svg(&max_t, &upper)?)?;
    let mut lower = PlotSpec::new("p", "final_ratio");
    lower.log_x = true;
    lower.title = Some("|F(theta_k)| / (sqrt p ln ln p)".into());
    std::fs::write(dir.join("lower.svg"), render_svg(&wit_t, &lower)?)?;

    let hi = max_rows.iter().map(|r| r.hi_ln).fold(0.0, f64::max);
    let lo = witness_rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok())
        .map(|w| w.final_ratio)
        .fold(f64::INFINITY, f64::min);
    println!("{} max rows, {} witness rows written to {}", max_rows.len(), witness_rows.len(), dir.display());
    println!("max hi/(sqrt p ln p) = {hi:.4}, min |F|/(sqrt p ln ln p) = {lo:.4}");
    Ok(())
}
