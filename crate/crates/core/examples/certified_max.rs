//! Certified brackets [lo, hi] around sup |F| and their refinement.
//!
//! cargo run --release --example certified_max -- 10007

use mixsum::charcore::build_modulus;
use mixsum::error::Result;
use mixsum::maxsearch::{certified_max_on_grid, certified_max_sum, max_decomposed, DEFAULT_EPS};
use mixsum::sums::SumSpec;

fn main() -> Result<()> {
    let p: u64 = std::env::args().nth(1).map_or(10007, |s| s.parse().expect("prime"));
    let m = build_modulus(p)?;
    let s = SumSpec::new(m.legendre(), 0.0, 1.0)?;
    let cm = certified_max_sum(&s, DEFAULT_EPS)?;
    let sp = (p as f64).sqrt();
    println!("Fekete polynomial, p = {p}");
    println!("  lo = {:.6}, hi = {:.6}, gap {:.4}, grid M = {}", cm.lo, cm.hi, cm.gap(), cm.m);
    println!("  attained at theta = {:.8}", cm.theta());
    println!("  lo/sqrt p = {:.4}, hi/(sqrt p ln p) = {:.4}", cm.lo / sp, cm.hi / (sp * (p as f64).ln()));

    let cv = s.coefficients();
    let mut m_grid = cm.m;
    for _ in 0..3 {
        m_grid *= 2;
        let r = certified_max_on_grid(&cv, m_grid)?;
        println!("  M = {:>8}: [{:.6}, {:.6}]", r.m, r.lo, r.hi);
    }
    let (k, v) = max_decomposed(&s, 0.25)?;
    println!("  best point on the (k + 1/4)/p grid: k = {k}, |F| = {v:.6}");
    Ok(())
}
