//! The full lower-bound pipeline: choose t and the targets xi, build S,
//! pick k, and evaluate F at theta = (k + t)/p.
//!
//! cargo run --release --example lower_bound_witness

use mixsum::charcore::build_modulus;
use mixsum::error::Result;
use mixsum::lowerbound::{lower_bound_witness, representative};
use mixsum::maxsearch::{certified_max_sum, DEFAULT_EPS};
use mixsum::sums::SumSpec;

fn main() -> Result<()> {
    println!("{:>6} {:>3} {:>10} {:>6} {:>6} {:>9} {:>9} {:>9} {:>9}", "p", "d", "(a,b)", "k", "|S|", "|F~|", "minorant", "|F|", "hi");
    for p in [499u64, 1009, 4999, 10007] {
        let m = build_modulus(p)?;
        for d in [2u64, 3, 4] {
            let Some(chi) = representative(&m, d) else { continue };
            for (a, b) in [(0.0, 1.0), (0.25, 1.0)] {
                let s = SumSpec::new(chi.clone(), a, b)?;
                let w = lower_bound_witness(&s)?;
                let hi = certified_max_sum(&s, DEFAULT_EPS)?.hi;
                println!(
                    "{p:>6} {d:>3} {:>10} {:>6} {:>6} {:>9.3} {:>9.3} {:>9.3} {:>9.3}",
                    format!("({a},{b})"),
                    w.k,
                    w.set_size,
                    w.tilde_value.norm(),
                    w.minorant,
                    w.value.norm(),
                    hi
                );
            }
        }
    }
    Ok(())
}
