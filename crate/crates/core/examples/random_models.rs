//! Maxima of random polynomials against sqrt(N ln N).
//!
//! cargo run --release --example random_models

use mixsum::error::Result;
use mixsum::randmodels::{random_poly_max, MultiplicativeKind, RandomModel};

fn main() -> Result<()> {
    let models = [
        RandomModel::RademacherIid,
        RandomModel::Multiplicative(MultiplicativeKind::Rademacher),
        RandomModel::Multiplicative(MultiplicativeKind::Steinhaus),
    ];
    println!("{:>16} {:>6} {:>8} {:>8} {:>8}", "model", "N", "min", "median", "max");
    for n in [256usize, 1024, 4096, 16384] {
        for model in models {
            let st = random_poly_max(model, n, 40, 1)?;
            println!("{:>16} {n:>6} {:>8.4} {:>8.4} {:>8.4}", model.name(), st.min, st.median, st.max);
        }
    }
    Ok(())
}
