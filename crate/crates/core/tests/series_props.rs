use jdisc_core::disc_solver::{phi1, phi2, JetSequence};
use jdisc_core::linalg;
use jdisc_core::rng::Sampler;
use jdisc_core::series::disc::norm_star;
use jdisc_core::series::scalar::int;
use jdisc_core::series::{CScalar, MultiSeries, Rational, SeriesMatrix};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn cfg() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

fn three(seed: u64, nvars: usize, acc: u32) -> (MultiSeries, MultiSeries, MultiSeries) {
    let mut s = Sampler::new(seed);
    (
        s.series(nvars, acc, 0, acc, 5, false),
        s.series(nvars, acc, 0, acc, 5, false),
        s.series(nvars, acc, 0, acc, 5, false),
    )
}

/// Σ c_m Π argsᵢ^{mᵢ} by repeated multiplication, term by term.
fn brute_compose(f: &MultiSeries, args: &[MultiSeries], exact_outer: bool) -> MultiSeries {
    let nv = args[0].nvars();
    let mut acc = args.iter().map(|a| a.accuracy()).min().unwrap();
    if !exact_outer {
        acc = acc.min(f.accuracy());
    }
    let mut out = MultiSeries::zero(nv, acc);
    for (m, c) in f.terms() {
        let mut t = MultiSeries::constant(nv, acc, c.clone());
        for (i, a) in args.iter().enumerate() {
            for _ in 0..m.exp(i) {
                t = &t * a;
            }
        }
        out = &out + &t;
    }
    out
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (a, b, c) = three(seed, 3, 5);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiSeries::one(3, 5), a.clone());
    }

    #[test]
    fn truncation_is_coherent(seed in any::<u64>(), k in 0u32..5) {
        let (a, b, _) = three(seed, 2, 6);
        prop_assert_eq!((&a * &b).truncate(k), &a.truncate(k) * &b.truncate(k));
        prop_assert_eq!((&a + &b).truncate(k), &a.truncate(k) + &b.truncate(k));
        prop_assert_eq!(a.truncate(k).accuracy(), k);
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), var in 0usize..3) {
        let (a, b, _) = three(seed, 3, 5);
        let lhs = (&a * &b).diff(var);
        let rhs = &(&a.diff(var) * &b) + &(&a * &b.diff(var));
        prop_assert_eq!(lhs.accuracy(), 4);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integrate_then_differentiate(seed in any::<u64>(), var in 0usize..3) {
        let (a, _, _) = three(seed, 3, 5);
        prop_assert_eq!(a.integrate(var).diff(var), a);
    }

    #[test]
    fn compose_matches_brute_force(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let f = s.series(2, 5, 0, 4, 5, false);
        let args = [s.series(3, 5, 1, 3, 3, false), s.series(3, 5, 1, 3, 3, false)];
        prop_assert_eq!(f.compose(&args).unwrap(), brute_compose(&f, &args, false));
        // constants allowed for polynomial outer functions
        let shifted = [args[0].add_constant(&CScalar::from_int(2)), args[1].clone()];
        prop_assert_eq!(f.compose_polynomial(&shifted).unwrap(), brute_compose(&f, &shifted, true));
    }

    #[test]
    fn t_then_dbar_is_identity(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let u = s.disc(2, 6, 0, 6, 8);
        let back = u.t_op().ddbar();
        prop_assert_eq!(back, u.truncate(5));
    }

    #[test]
    fn norm_facts(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let acc = 5;
        let jets = (0..acc).map(|_| s.real_vector(4, 3, 4)).collect();
        let x = JetSequence::new(s.real_vector(4, 3, 4), jets).unwrap();
        prop_assert_eq!(phi1(&x, acc).norm_omega(), x.norm_tilde());
        prop_assert_eq!(phi2(&phi1(&x, acc)), x);
        let f = s.disc(2, acc, 0, acc, 6);
        prop_assert!(phi2(&f).norm_tilde() <= f.norm_omega());
        let u = s.disc(2, acc, 0, acc, 6);
        prop_assert!(u.t_op().norm_omega() <= int(2) * u.norm_star());
        let a = s.series(2, acc, 0, acc, 5, false);
        let b = s.series(2, acc, 0, acc, 5, false);
        prop_assert!(norm_star(&(&a * &b)) <= norm_star(&a) * norm_star(&b));
    }

    #[test]
    fn series_matrix_inverse(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let n = 3;
        let rows: Vec<Vec<MultiSeries>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = if i == j { CScalar::one() } else { s.complex(1, 2) };
                        s.series(2, 4, 1, 4, 3, false).add_constant(&c)
                    })
                    .collect()
            })
            .collect();
        let m = SeriesMatrix::from_rows(rows).unwrap();
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(m.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&m).unwrap().is_identity());
            }
            Err(_) => prop_assert!(linalg::rank(&m.constant_term()) < n),
        }
    }

    #[test]
    fn exact_linear_solve(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let n = 4;
        let a: Vec<Vec<CScalar>> = (0..n).map(|_| (0..n).map(|_| s.complex(3, 3)).collect()).collect();
        let x: Vec<CScalar> = (0..n).map(|_| s.complex(3, 3)).collect();
        let b = linalg::mat_vec(&a, &x);
        match linalg::solve_unique(&a, &b) {
            Some(sol) => prop_assert_eq!(sol, x),
            None => prop_assert!(linalg::rank(&a) < n),
        }
        if let Some(inv) = linalg::inverse(&a) {
            prop_assert_eq!(linalg::mat_mul(&a, &inv), linalg::identity(n));
        }
    }

    #[test]
    fn rational_jets_round_trip(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let x = JetSequence::new(vec![Rational::zero(); 4], (0..4).map(|_| s.real_vector(4, 5, 7)).collect()).unwrap();
        prop_assert_eq!(JetSequence::from_json(&x.to_json()).unwrap(), x);
    }
}
