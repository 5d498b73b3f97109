mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use mixsum::charcore::{build_modulus, gauss_sum, DirichletCharacter, RootOfUnity};
use mixsum::fft::{Chirp, Radix2, Sign};
use mixsum::maxsearch::{certified_max, DEFAULT_EPS};
use mixsum::prescribe::{is_member, weight_w, PrescriptionTarget};
use mixsum::randmodels::{sample_rmf, MultiplicativeKind};
use mixsum::sums::{direct_sum, grid_evaluate_with, CoefficientVector, Kernel, SumSpec};

const PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 29, 31, 61, 101, 211, 241, 499];

fn character() -> impl Strategy<Value = DirichletCharacter> {
    prop::sample::select(PRIMES.to_vec())
        .prop_flat_map(|p| (Just(p), 1..p - 1))
        .prop_map(|(p, c)| DirichletCharacter::new(build_modulus(p).unwrap(), c).unwrap())
}

fn interval() -> impl Strategy<Value = (f64, f64)> {
    (0.0f64..2.0, 0.05f64..1.5).prop_map(|(a, w)| (a, a + w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn characters_are_completely_multiplicative(chi in character(), m in -400i64..400, n in -400i64..400) {
        let lhs = chi.eval(m * n);
        let rhs = chi.eval(m) * chi.eval(n);
        prop_assert!((lhs - rhs).norm() < 1e-12);
        prop_assert_eq!(chi.eval(m + chi.p() as i64), chi.eval(m));
    }

    #[test]
    fn character_values_match_brute_force(chi in character(), n in 0u64..1000) {
        let table = common::char_table(chi.p(), chi.index());
        prop_assert!((chi.eval(n as i64) - table[(n % chi.p()) as usize]).norm() < 1e-12);
    }

    #[test]
    fn gauss_sum_of_conjugate(chi in character()) {
        let a = gauss_sum(&chi.conj()).unwrap();
        let b = gauss_sum(&chi).unwrap().conj() * chi.parity() as f64;
        prop_assert!((a - b).norm() <= 1e-9 * (chi.p() as f64).sqrt());
    }

    #[test]
    fn grid_agrees_with_brute_force(chi in character(), (a, b) in interval(), t in 0.0f64..1.0, m in 8usize..200) {
        let Ok(s) = SumSpec::new(chi.clone(), a, b) else { return Ok(()) };
        let g = grid_evaluate_with(&s, t, m, Kernel::Chirp).unwrap();
        let table = common::char_table(chi.p(), chi.index());
        let (lo, hi) = common::range(a, b, chi.p());
        for j in (0..m).step_by(7) {
            let o = common::naive_sum(&table, lo, hi, g.theta(j));
            prop_assert!((g.values[j] - o).norm() <= 1e-8 * (b - a) * chi.p() as f64);
        }
    }

    #[test]
    fn parseval_on_fine_grids(chi in character(), (a, b) in interval()) {
        let Ok(s) = SumSpec::new(chi.clone(), a, b) else { return Ok(()) };
        let m = (2 * (b * chi.p() as f64).ceil() as usize + 1).next_power_of_two();
        let g = grid_evaluate_with(&s, 0.0, m, Kernel::Radix2).unwrap();
        let n = s.support_size() as f64;
        prop_assert!((g.mean_square() - n).abs() <= 1e-7 * n);
    }

    #[test]
    fn conjugation_symmetry(chi in character(), (a, b) in interval(), th in -1.0f64..1.0) {
        let Ok(s) = SumSpec::new(chi.clone(), a, b) else { return Ok(()) };
        let sc = SumSpec::new(chi.conj(), a, b).unwrap();
        prop_assert!((direct_sum(&sc, -th) - direct_sum(&s, th).conj()).norm() <= 1e-9 * (chi.p() as f64).sqrt());
    }

    #[test]
    fn certified_bracket_dominates_point_values(
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..300),
        offset in 0u64..50,
        thetas in prop::collection::vec(0.0f64..1.0, 16),
    ) {
        let cv = CoefficientVector::new(offset, coeffs.iter().map(|&(x, y)| Complex64::new(x, y)).collect());
        let cm = certified_max(&cv, DEFAULT_EPS).unwrap();
        prop_assert!(cm.lo <= cm.hi);
        for th in thetas {
            prop_assert!(cv.eval(th).norm() <= cm.hi * (1.0 + 1e-12) + 1e-12);
        }
        prop_assert!((cv.eval(cm.theta()).norm() - cm.lo).abs() <= 1e-9 * (1.0 + cm.lo));
    }

    #[test]
    fn weight_is_scaled_indicator(
        pd in prop::sample::select(vec![(101u64, 2u64), (101, 5), (211, 3), (211, 7), (241, 8), (461, 20)]),
        k0 in 0u64..3,
        seed in any::<u64>(),
        k in 0u64..1000,
    ) {
        let (p, d) = pd;
        let m = build_modulus(p).unwrap();
        let chi = mixsum::lowerbound::representative(&m, d).unwrap();
        let xi = (0..2 * k0 + 1).map(|i| seed.rotate_left(7 * i as u32) % d).collect();
        let target = PrescriptionTarget::new(d, k0, xi).unwrap();
        let k = k0 + 1 + k % (p - 2 * k0 - 1);
        let w = weight_w(&chi, &target, k).unwrap();
        let full = (d as u128).pow((2 * k0 + 1) as u32);
        prop_assert_eq!(w, full * u128::from(is_member(&chi, &target, k)));
    }

    #[test]
    fn root_of_unity_products(a in -50i64..50, b in -50i64..50, da in 1u64..30, db in 1u64..30) {
        let x = RootOfUnity::new(a, da);
        let y = RootOfUnity::new(b, db);
        prop_assert!((x.mul(y).to_complex() - x.to_complex() * y.to_complex()).norm() < 1e-12);
        prop_assert!(x.mul(x.conj()).is_one());
    }

    #[test]
    fn transforms_invert(vals in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..130)) {
        let data: Vec<Complex64> = vals.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
        let n = data.len();
        let mut buf = data.clone();
        let chirp = Chirp::new(n).unwrap();
        chirp.process(&mut buf, Sign::Positive);
        chirp.process(&mut buf, Sign::Negative);
        for (u, v) in buf.iter().zip(&data) {
            prop_assert!((u / n as f64 - v).norm() < 1e-10);
        }
        let m = n.next_power_of_two();
        let mut padded = data.clone();
        padded.resize(m, Complex64::new(0.0, 0.0));
        let orig = padded.clone();
        let r = Radix2::new(m).unwrap();
        r.process(&mut padded, Sign::Negative);
        r.process(&mut padded, Sign::Positive);
        for (u, v) in padded.iter().zip(&orig) {
            prop_assert!((u / m as f64 - v).norm() < 1e-10);
        }
    }

    #[test]
    fn multiplicative_functions_multiply(seed in any::<u64>(), m in 1usize..60, n in 1usize..60) {
        for kind in [MultiplicativeKind::Rademacher, MultiplicativeKind::Steinhaus] {
            let f = sample_rmf(kind, 3600, seed).unwrap();
            prop_assert!((f.value(m * n) - f.value(m) * f.value(n)).norm() < 1e-12);
        }
    }
}
