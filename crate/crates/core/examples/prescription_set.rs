//! The set S of k where chi(k - l) is close to a prescribed xi_l for all
//! |l| <= K0, the weight W(k), and the choice of k inside S.
//!
//! cargo run --release --example prescription_set

use mixsum::charcore::build_modulus;
use mixsum::error::Result;
use mixsum::lowerbound::{choose_t, choose_xi};
use mixsum::prescribe::{build_s, default_k0, full_weight, select_k, sum_w_diagnostic, weight_w};
use mixsum::sums::SumSpec;

fn main() -> Result<()> {
    let p = 4999;
    let m = build_modulus(p)?;
    let s = SumSpec::new(m.legendre(), 0.0, 1.0)?;
    let t = choose_t(0.0, 1.0)?;
    let k0 = default_k0(p)?;
    let target = choose_xi(&s, t, k0)?;
    println!("p = {p}, t = {t}, K0 = {k0}, target exponents {:?}", target.exponents());

    let set = build_s(s.character(), &target)?;
    println!("|S| = {}, predicted {:.2}, ratio {:.4}", set.len(), set.predicted, set.size_ratio());
    println!("first members: {:?}", &set.members[..set.len().min(12)]);

    let full = full_weight(&target)?;
    let k_in = set.members[0];
    let k_out = (k0 + 1..p - k0).find(|&k| !set.contains(k)).unwrap();
    println!("W({k_in}) = {} (= d^(2K0+1) = {full}), W({k_out}) = {}", weight_w(s.character(), &target, k_in)?, weight_w(s.character(), &target, k_out)?);
    let (total, main) = sum_w_diagnostic(s.character(), &target)?;
    println!("sum_k W(k) = {total}, main term {main:.1}");

    let sel = select_k(&s, &target, t)?;
    let sp = (p as f64).sqrt();
    println!(
        "selected k = {}: residual/sqrt p = {:.4}, mean over S {:.4}, median over all k {:.4}",
        sel.k,
        sel.residual / sp,
        sel.mean_residual_in_s / sp,
        sel.median_residual / sp
    );
    Ok(())
}
