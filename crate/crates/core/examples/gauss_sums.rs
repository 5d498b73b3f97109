//! Characters modulo a prime and their Gauss sums.
//!
//! cargo run --example gauss_sums -- 13

use mixsum::charcore::{build_modulus, enumerate_characters, gauss_sum};

fn main() -> mixsum::error::Result<()> {
    let p: u64 = std::env::args().nth(1).map_or(13, |s| s.parse().expect("prime"));
    let m = build_modulus(p)?;
    println!("p = {p}, primitive root g = {}", m.generator());
    println!("{:>4} {:>4} {:>7} {:>12} {:>12} {:>10}", "c", "d", "parity", "Re tau", "Im tau", "|tau|/sqrtp");
    for chi in enumerate_characters(&m, true) {
        let tau = gauss_sum(&chi)?;
        println!(
            "{:>4} {:>4} {:>7} {:>12.6} {:>12.6} {:>10.8}",
            chi.index(),
            chi.order(),
            chi.parity(),
            tau.re,
            tau.im,
            tau.norm() / (p as f64).sqrt()
        );
    }
    let leg = m.legendre();
    let values: Vec<String> = (1..p as i64).map(|n| format!("{:+}", leg.eval(n).re as i64)).collect();
    println!("Legendre symbol (n/{p}), n = 1..{}: {}", p - 1, values.join(" "));
    Ok(())
}
