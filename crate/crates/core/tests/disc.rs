use jdisc_core::disc_solver::*;
use jdisc_core::rng::Sampler;
use jdisc_core::scenario::counterexample_r6;
use num_traits::Zero;

#[test]
fn counterexample_disc_along_l5() {
    let g = counterexample_r6().truncate(6).geometry().unwrap();
    let v = g.scenario.frame.field(4).at_origin();
    let x = JetSequence::tangent(v, 6);
    let rec = solve_disc_recursive(&g.j, &x, 6).unwrap();
    assert!(rec.residual_vanishes());
    assert!(rec.residual_valuation() >= 5);
    assert!(cauchy_riemann_defect(&g.j, &rec.gamma)
        .unwrap()
        .iter()
        .all(|c| c.is_zero()));
    let pic = solve_disc_picard(&g.j, &x, 6, 20).unwrap();
    assert_eq!(pic.gamma, rec.gamma);
    assert!(pic.log.len() <= 7);
    eprintln!("{}", rec.gamma.to_json());
}

#[test]
fn random_small_jets_over_counterexample_structure() {
    let g = counterexample_r6().truncate(6).geometry().unwrap();
    let mut s = Sampler::new(0);
    for _ in 0..5 {
        let jets = (0..6).map(|_| s.real_vector(6, 2, 3)).collect();
        let x = JetSequence::new(vec![Zero::zero(); 6], jets).unwrap();
        let rec = solve_disc_recursive(&g.j, &x, 6).unwrap();
        assert!(rec.residual_vanishes());
        assert!(cauchy_riemann_defect(&g.j, &rec.gamma)
            .unwrap()
            .iter()
            .all(|c| c.is_zero()));
        let pic = solve_disc_picard(&g.j, &x, 6, 20).unwrap();
        assert_eq!(pic.gamma, rec.gamma);
    }
}
