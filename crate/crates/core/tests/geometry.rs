//! Bracket tables and Levi data of the built-in frames, against expected
//! fields written out in coordinates.

use jdisc_core::geometry::{in_tjm, levi_form, levi_kernel_at, levi_polar, VectorField};
use jdisc_core::scenario::{builtin, Geometry, Scenario};
use jdisc_core::series::scalar::int;
use jdisc_core::series::{CScalar, MultiSeries};
use num_traits::Zero;

mod common;

use common::*;

fn scenario(name: &str) -> Scenario {
    builtin(name).unwrap()
}

fn geometry(name: &str) -> Geometry {
    scenario(name).geometry().unwrap()
}

/// Checks [L_i, L_j] = want and [L_j, L_i] = −want.
fn assert_bracket(s: &Scenario, i: usize, j: usize, want: &VectorField) {
    let (a, b) = (s.frame.field(i - 1), s.frame.field(j - 1));
    let got = a.bracket(b);
    assert_eq!(
        got,
        want.truncate(got.accuracy()),
        "[L{i},L{j}] in {}",
        s.name
    );
    assert_eq!(
        b.bracket(a),
        want.neg().truncate(got.accuracy()),
        "[L{j},L{i}] in {}",
        s.name
    );
}

#[test]
fn counterexample_bracket_table() {
    let s = scenario("counterexample-r6");
    let table = core_table(6);
    assert_eq!(table.len() * 2, 12);
    for (i, j, want) in &table {
        assert_bracket(&s, *i, *j, want);
    }
    for i in 1..=2 {
        for j in 1..=6 {
            assert!(s.frame.field(i - 1).bracket(s.frame.field(j - 1)).is_zero());
        }
    }
}

#[test]
fn frame_values_at_origin_are_the_coordinate_basis() {
    let s = scenario("counterexample-r6");
    for i in 0..6 {
        let v = s.frame.field(i).at_origin();
        for (k, c) in v.iter().enumerate() {
            assert_eq!(*c, if k == i { int(1) } else { int(0) });
        }
    }
}

#[test]
fn counterexample_levi_data() {
    let g = geometry("counterexample-r6");
    let f = &g.scenario.frame;
    let (l3, l5) = (f.field(2), f.field(4));
    let one = MultiSeries::one(6, 8);
    // ℒ(L3) ≡ 1 and ℒ(L5) ≡ 0, not just at the origin
    let levi3 = levi_form(&g.hyp, &g.j, l3).unwrap();
    assert_eq!(levi3.truncate(8), one);
    assert!(levi_form(&g.hyp, &g.j, l5).unwrap().is_zero());
    assert!(levi_polar(&g.hyp, &g.j, l3, l5).unwrap().is_zero());
    assert_eq!(
        levi_polar(&g.hyp, &g.j, l3, l3).unwrap().constant_term(),
        CScalar::from_int(2)
    );
    assert_eq!(
        levi_polar(&g.hyp, &g.j, l3, f.field(3))
            .unwrap()
            .constant_term(),
        CScalar::new(int(0), int(2))
    );

    let k = levi_kernel_at(&g.hyp, &g.j, &[l3.clone(), l5.clone()]).unwrap();
    assert!(k.psd);
    assert_eq!(
        (k.inertia.positive, k.inertia.negative, k.inertia.zero),
        (1, 0, 1)
    );
    assert_eq!(k.kernel_vectors.len(), 1);
    let v = &k.kernel_vectors[0];
    assert!(v.iter().enumerate().all(|(i, c)| (i == X3) != c.is_zero()));
}

#[test]
fn complex_tangent_fields_of_the_counterexample() {
    let g = geometry("counterexample-r6");
    let members: Vec<bool> = g
        .scenario
        .frame
        .fields()
        .iter()
        .map(|l| in_tjm(&g.hyp, &g.j, l).member)
        .collect();
    assert_eq!(members, [false, false, true, true, true, true]);
}

#[test]
fn ex1_bracket_table() {
    let s = scenario("ex1-r8");
    for (i, j, want) in core_table(8).into_iter().chain(ex1_table()) {
        assert_bracket(&s, i, j, &want);
    }
}

#[test]
fn ex2_bracket_table() {
    let s = scenario("ex2-r8");
    for (i, j, want) in core_table(8).into_iter().chain(ex2_table()) {
        assert_bracket(&s, i, j, &want);
    }
    for j in 1..=8 {
        assert!(s.frame.field(0).bracket(s.frame.field(j - 1)).is_zero());
    }
}

#[test]
fn examples_have_levi_kernel_spanned_by_l5_and_l7() {
    for name in ["ex1-r8", "ex2-r8"] {
        let g = geometry(name);
        let f = &g.scenario.frame;
        let basis = [f.field(2).clone(), f.field(4).clone(), f.field(6).clone()];
        let k = levi_kernel_at(&g.hyp, &g.j, &basis).unwrap();
        assert!(k.psd, "{name}");
        assert_eq!(k.kernel_vectors.len(), 2, "{name}");
        // kernel vectors at 0 lie in span{∂x3, ∂y3, ∂x4, ∂y4} and fill the L5, L7 directions
        for v in &k.kernel_vectors {
            assert!(v[..X3].iter().all(|c| c.is_zero()), "{name}");
        }
        for (i, want) in [(4usize, 0), (6, 0)] {
            let l = levi_form(&g.hyp, &g.j, f.field(i)).unwrap();
            assert_eq!(
                l.constant_term(),
                CScalar::from_int(want),
                "{name} L{}",
                i + 1
            );
        }
        assert_eq!(
            levi_form(&g.hyp, &g.j, f.field(2)).unwrap().constant_term(),
            CScalar::from_int(1)
        );
    }
}

#[test]
fn siegel_toy_levi_data() {
    let g = geometry("siegel-r6");
    let f = &g.scenario.frame;
    // φ = y1 − x2² − y2²: complex tangent frame L3..L6, Levi value −4 along L3
    let members: Vec<bool> = f
        .fields()
        .iter()
        .map(|l| in_tjm(&g.hyp, &g.j, l).member)
        .collect();
    assert_eq!(members, [false, false, true, true, true, true]);
    assert_eq!(
        levi_form(&g.hyp, &g.j, f.field(2)).unwrap().constant_term(),
        CScalar::from_int(-4)
    );
    assert!(levi_form(&g.hyp, &g.j, f.field(4)).unwrap().is_zero());
    let k = levi_kernel_at(&g.hyp, &g.j, &[f.field(2).clone(), f.field(4).clone()]).unwrap();
    assert!(!k.psd);
    assert_eq!(k.kernel_vectors.len(), 1);
}

#[test]
fn levi_flat_toy_is_flat() {
    let g = geometry("levi-flat-r4");
    let l3 = g.scenario.frame.field(2);
    assert!(levi_form(&g.hyp, &g.j, l3).unwrap().is_zero());
    assert!(g.j.integrability_defect().is_none());
}
