//! Complete character sums over polynomials and the bound
//! |sum chi(P(k))| <= (m - 1) sqrt(p).
//!
//! cargo run --release --example weil_bound -- 31

use mixsum::charcore::build_modulus;
use mixsum::error::Result;
use mixsum::lowerbound::representative;
use mixsum::weil::{value_counts, weil_check, weil_sweep, FactoredPoly};

fn main() -> Result<()> {
    let p: u64 = std::env::args().nth(1).map_or(31, |s| s.parse().expect("prime"));
    let m = build_modulus(p)?;
    let chi = representative(&m, 3).unwrap_or_else(|| m.legendre());
    println!("p = {p}, character index {} of order {}", chi.index(), chi.order());

    for factors in [vec![(0, 1), (1, 1)], vec![(0, 1), (1, 2), (5, 1)], vec![(2, 1), (7, 1), (11, 2)]] {
        let poly = FactoredPoly::new(p, &factors)?;
        let w = weil_check(&chi, &poly)?;
        println!(
            "P = {:?}: |sum| = {:.4} <= {:.4} ({}), value counts {:?}",
            poly.factors(),
            w.lhs,
            w.rhs,
            if w.holds { "holds" } else { "VIOLATED" },
            value_counts(&chi, &poly)
        );
    }

    let sweep = weil_sweep(p, 3)?;
    println!(
        "exhaustive sweep: {} sums, {} violations, worst ratio {:.4}",
        sweep.sums_checked, sweep.violations, sweep.worst_ratio
    );
    Ok(())
}
