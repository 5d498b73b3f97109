//! Evaluating F(alpha, beta; theta) directly, on FFT grids, on the
//! (k + t)/p grid, and through the truncated Gauss-sum approximation.
//!
//! cargo run --release --example grid_evaluation

use mixsum::charcore::build_modulus;
use mixsum::error::Result;
use mixsum::sums::{direct_sum, direct_sum_kt, grid_evaluate, kt_grid, residual_profile, truncated_approx, SumSpec};

fn main() -> Result<()> {
    let p = 1009;
    let (alpha, beta, t) = (0.25, 0.75, 0.3);
    let m = build_modulus(p)?;
    let s = SumSpec::new(m.legendre(), alpha, beta)?;
    let (first, last) = s.range();
    println!("p = {p}, Legendre, n in [{first}, {last}], {} nonzero terms", s.support_size());

    let g = grid_evaluate(&s, 0.0, 4096)?;
    let worst = (0..g.m)
        .step_by(97)
        .map(|j| (g.values[j] - direct_sum(&s, g.theta(j))).norm())
        .fold(0.0, f64::max);
    println!("4096-point grid vs direct sums: max deviation {worst:.2e}");
    println!("mean square on the grid {:.6} (support size {})", g.mean_square(), s.support_size());

    let kt = kt_grid(&s, t)?;
    for k in [0u64, 17, 500] {
        let approx = truncated_approx(&s, k, t, 50)?;
        println!(
            "k = {k:>3}: F((k+t)/p) = {:.4}, direct {:.4}, truncated K=50 {:.4}",
            kt[k as usize],
            direct_sum_kt(&s, k, t),
            approx
        );
    }
    for big_k in [4u64, 32, 256, 504] {
        let r = residual_profile(&s, t, big_k)?;
        let mx = r.iter().cloned().fold(0.0, f64::max);
        let mean = r.iter().sum::<f64>() / r.len() as f64;
        println!("K = {big_k:>3}: max_k |F - F~_K| = {mx:.4}, mean {mean:.4}");
    }
    Ok(())
}
