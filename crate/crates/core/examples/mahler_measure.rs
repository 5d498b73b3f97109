//! L^q norms and the Mahler measure of Fekete polynomials, normalized by sqrt p.
//!
//! cargo run --release --example mahler_measure

use mixsum::charcore::build_modulus;
use mixsum::error::Result;
use mixsum::maxsearch::{lq_norm, mahler_measure};
use mixsum::sums::SumSpec;

fn main() -> Result<()> {
    println!("{:>6} {:>9} {:>9} {:>9} {:>9}", "p", "M0", "L1", "L2", "L4");
    for p in [1009u64, 4999, 10007, 20011, 40009] {
        let m = build_modulus(p)?;
        let cv = SumSpec::new(m.legendre(), 0.0, 1.0)?.coefficients();
        let grid = 1 << 20;
        let sp = (p as f64).sqrt();
        let m0 = mahler_measure(&cv, grid)?;
        println!(
            "{p:>6} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            m0.value / sp,
            lq_norm(&cv, 1.0, grid)? / sp,
            lq_norm(&cv, 2.0, grid)? / sp,
            lq_norm(&cv, 4.0, grid)? / sp
        );
    }
    Ok(())
}
