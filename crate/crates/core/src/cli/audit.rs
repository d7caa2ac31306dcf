//! The regression battery behind `verify-paper`: every check recomputes its
//! quantities from scratch and compares them exactly.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::disc_solver::{
    cauchy_riemann_defect, combinatorics_audit, evf_check, functional_calculus, phi1, phi2,
    solve_disc_picard, solve_disc_recursive, JetSequence,
};
use crate::error::Result;
use crate::freeman::{disc_in_hypersurface, freeman_sequence, Mode};
use crate::geometry::{
    j_from_frame, levi_form, levi_kernel_at, levi_polar, Frame, Hypersurface, VectorField,
};
use crate::linalg::{self, CMatrix};
use crate::rng::Sampler;
use crate::scenario::{counterexample_r6, ex1_r8, ex2_r8, Geometry, Scenario};
use crate::series::disc::norm_star;
use crate::series::scalar::{int, rat, rational_to_string};
use crate::series::{CScalar, MultiSeries, Rational};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: Value,
}

impl Check {
    fn new(name: &str, pass: bool, details: Value) -> Check {
        Check {
            name: name.to_string(),
            pass,
            details,
        }
    }

    fn from_result(name: &str, r: Result<(bool, Value)>) -> Check {
        match r {
            Ok((pass, details)) => Check::new(name, pass, details),
            Err(e) => Check::new(name, false, json!({"error": e.to_string()})),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "pass": self.pass, "details": self.details})
    }
}

/// Field Σ c_i L_i from (coefficient, frame index) pairs.
fn combo(frame: &Frame, terms: &[(MultiSeries, usize)]) -> VectorField {
    let mut out = VectorField::zero(frame.dim(), frame.accuracy());
    for (c, i) in terms {
        out = out.add(&frame.field(*i).scale(c));
    }
    out
}

fn var(dim: usize, acc: u32, i: usize) -> MultiSeries {
    MultiSeries::var(dim, acc, i)
}

fn konst(dim: usize, acc: u32, r: Rational) -> MultiSeries {
    MultiSeries::constant(dim, acc, CScalar::real(r))
}

/// Expected brackets [L_i, L_j] (1-based names) among the complex-tangent
/// fields of the built-in scenarios, written out by hand.
pub fn expected_brackets(s: &Scenario) -> Vec<(usize, usize, VectorField)> {
    let f = &s.frame;
    let dim = s.dim();
    let acc = s.accuracy();
    let v = |i| var(dim, acc, i);
    let one = konst(dim, acc, int(1));
    let dx1 = VectorField::coordinate(dim, acc, 0);
    let zero = VectorField::zero(dim, acc);
    // indices: L1 = 0, …, L8 = 7; coordinates x1 = 0, y1 = 1, …
    let (y1, y3, y4) = (1, 5, 7);
    let mut out = vec![
        (3, 4, combo(f, &[(one.clone(), 0)])),
        (3, 5, zero.clone()),
        (4, 5, dx1.scale(&v(y3))),
        (3, 6, dx1.scale(&v(y3))),
        (4, 6, zero.clone()),
        (5, 6, combo(f, &[(one.clone(), 2)])),
    ];
    match s.name.as_str() {
        "ex1-r8" => {
            for i in 3..=6 {
                out.push((i, 7, zero.clone()));
                out.push((i, 8, zero.clone()));
            }
            out.push((7, 8, combo(f, &[(-one.clone(), 7)])));
        }
        "ex2-r8" => {
            let y1y4 = &v(y1) * &v(y4);
            let y1y3y4 = &y1y4 * &v(y3);
            out.extend([
                (3, 7, zero.clone()),
                (4, 7, dx1.scale(&y1y3y4)),
                (5, 7, zero.clone()),
                (6, 7, combo(f, &[(-y1y4.clone(), 2)])),
                (3, 8, dx1.scale(&y1y3y4)),
                (4, 8, zero.clone()),
                (5, 8, combo(f, &[(y1y4.clone(), 2)])),
                (6, 8, zero.clone()),
            ]);
            let l78 = combo(
                f,
                &[
                    (-v(y1), 4),
                    (&y1y4 * &y1y4, 2),
                    (y1y4.scale_rational(&int(2)), 5),
                    (-one, 7),
                ],
            );
            out.push((7, 8, l78));
        }
        _ => {}
    }
    out
}

/// Every expected bracket, in both orders, equals the computed one.
pub fn check_bracket_table(s: &Scenario) -> Check {
    let frame = &s.frame;
    let mut mismatches = Vec::new();
    let mut count = 0;
    for (i, j, expected) in expected_brackets(s) {
        let (a, b) = (frame.field(i - 1), frame.field(j - 1));
        for (lhs, want, label) in [
            (a.bracket(b), expected.clone(), format!("[L{i},L{j}]")),
            (b.bracket(a), expected.neg(), format!("[L{j},L{i}]")),
        ] {
            count += 1;
            let want = want.truncate(lhs.accuracy());
            if lhs != want {
                mismatches.push(json!({"bracket": label, "computed": lhs.to_string(), "expected": want.to_string()}));
            }
        }
    }
    // nothing depends on x1, y1 except through the y1 factors of ex2
    let with_first = if s.name == "ex2-r8" { 0 } else { 2 };
    for i in 0..with_first {
        for j in 0..frame.dim() {
            count += 1;
            let b = frame.field(i).bracket(frame.field(j));
            if !b.is_zero() {
                mismatches.push(json!({"bracket": format!("[L{},L{}]", i + 1, j + 1), "computed": b.to_string(), "expected": "0"}));
            }
        }
    }
    Check::new(
        &format!("bracket table {}", s.name),
        mismatches.is_empty(),
        json!({"brackets_checked": count, "mismatches": mismatches}),
    )
}

fn real_rank(vs: &[Vec<Rational>]) -> usize {
    let m: CMatrix = vs
        .iter()
        .map(|v| v.iter().map(|c| CScalar::real(c.clone())).collect())
        .collect();
    linalg::rank(&m)
}

/// Real span of the kernel vectors and their J(0)-images equals the real span
/// of the named frame fields and their J-images at 0.
fn kernel_matches(g: &Geometry, kernel_vectors: &[Vec<Rational>], expected: &[usize]) -> bool {
    let j0 = g.j.at_origin();
    let with_j = |vs: Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for v in vs {
            let c: Vec<CScalar> = v.iter().map(|x| CScalar::real(x.clone())).collect();
            out.push(linalg::mat_vec(&j0, &c).into_iter().map(|c| c.re).collect());
            out.push(v);
        }
        out
    };
    let a = with_j(kernel_vectors.to_vec());
    let b = with_j(
        expected
            .iter()
            .map(|&i| g.scenario.frame.field(i).at_origin())
            .collect(),
    );
    let ra = real_rank(&a);
    let rb = real_rank(&b);
    let mut both = a;
    both.extend(b);
    ra == rb && real_rank(&both) == ra
}

fn c0(f: &MultiSeries) -> CScalar {
    f.constant_term()
}

pub fn check_levi_counterexample() -> Check {
    Check::from_result(
        "levi data counterexample-r6",
        (|| {
            let g = counterexample_r6().geometry()?;
            let f = &g.scenario.frame;
            let (l3, l5) = (f.field(2), f.field(4));
            let levi3 = c0(&levi_form(&g.hyp, &g.j, l3)?);
            let levi5 = c0(&levi_form(&g.hyp, &g.j, l5)?);
            let polar35 = c0(&levi_polar(&g.hyp, &g.j, l3, l5)?);
            let polar33 = c0(&levi_polar(&g.hyp, &g.j, l3, l3)?);
            let k = levi_kernel_at(&g.hyp, &g.j, &[l3.clone(), l5.clone()])?;
            let kernel_ok =
                k.kernel_vectors.len() == 1 && kernel_matches(&g, &k.kernel_vectors, &[4]);
            let pass = levi3 == CScalar::one()
                && levi5.is_zero()
                && polar35.is_zero()
                && polar33 == CScalar::from_int(2)
                && k.psd
                && kernel_ok;
            Ok((
                pass,
                json!({
                    "levi_L3": levi3.to_string(), "levi_L5": levi5.to_string(),
                    "polar_L3_L5": polar35.to_string(), "polar_L3_L3": polar33.to_string(),
                    "kernel": k.to_json(),
                }),
            ))
        })(),
    )
}

pub fn check_levi_examples() -> Vec<Check> {
    [ex1_r8(), ex2_r8()]
        .into_iter()
        .map(|s| {
            let name = format!("levi data {}", s.name);
            Check::from_result(
                &name,
                (|| {
                    let g = s.geometry()?;
                    let f = &g.scenario.frame;
                    let basis = vec![f.field(2).clone(), f.field(4).clone(), f.field(6).clone()];
                    let k = levi_kernel_at(&g.hyp, &g.j, &basis)?;
                    let pass = k.psd
                        && k.kernel_vectors.len() == 2
                        && kernel_matches(&g, &k.kernel_vectors, &[4, 6]);
                    Ok((pass, k.to_json()))
                })(),
            )
        })
        .collect()
}

/// For X = aL₃ + bL₄ + cL₅ + dL₆ with a(0) = b(0) = d(0) = 0, c(0) = 1: the
/// expansion of [X, JX], dφ(J[X, JX]) = a² + b², and its second X- and
/// JX-derivatives.
pub fn counterexample_identities(seed: u64, samples: usize, acc: u32) -> Check {
    Check::from_result(
        "counterexample identities",
        (|| {
            let g = counterexample_r6().truncate(acc).geometry()?;
            let f = &g.scenario.frame;
            let l = |i: usize| f.field(i - 1);
            let mut s = Sampler::new(seed);
            let mut failures = Vec::new();
            for n in 0..samples {
                let a = s.real_series(6, acc, 1, 3, 4);
                let b = s.real_series(6, acc, 1, 3, 4);
                let c = s.real_series(6, acc, 1, 3, 4).add_constant(&CScalar::one());
                let d = s.real_series(6, acc, 1, 3, 4);
                let x = l(3)
                    .scale(&a)
                    .add(&l(4).scale(&b))
                    .add(&l(5).scale(&c))
                    .add(&l(6).scale(&d));
                let jx = g.j.apply(&x);
                let br = x.bracket(&jx);
                let sq = |p: &MultiSeries, q: &MultiSeries| &(p * p) + &(q * q);
                let expected = l(1)
                    .scale(&sq(&a, &b))
                    .add(&l(3).scale(&sq(&c, &d)))
                    .add(&l(3).scale(&(&-x.apply(&b) - &jx.apply(&a))))
                    .add(&l(4).scale(&(&x.apply(&a) - &jx.apply(&b))))
                    .add(&l(5).scale(&(&-x.apply(&d) - &jx.apply(&c))))
                    .add(&l(6).scale(&(&x.apply(&c) - &jx.apply(&d))))
                    .truncate(br.accuracy());
                let levi = g.hyp.dphi(&g.j.apply(&br));
                let ab = sq(&a, &b).truncate(levi.accuracy());
                let two = |e: MultiSeries| e.scale_rational(&int(2));
                let second = |y: &VectorField| -> (MultiSeries, MultiSeries) {
                    let lhs = y.apply(&y.apply(&levi));
                    let (ya, yb) = (y.apply(&a), y.apply(&b));
                    let rhs = two(&(&(&ya * &ya) + &(&yb * &yb))
                        + &(&(&a * &y.apply(&ya)) + &(&b * &y.apply(&yb))));
                    let acc = lhs.accuracy();
                    (lhs, rhs.truncate(acc))
                };
                let (xx, xx_rhs) = second(&x);
                let (jj, jj_rhs) = second(&jx);
                let flags = [br == expected, levi == ab, xx == xx_rhs, jj == jj_rhs];
                if flags.iter().any(|ok| !ok) {
                    failures.push(json!({"sample": n, "bracket": flags[0], "levi": flags[1], "xx": flags[2], "jxjx": flags[3]}));
                }
            }
            Ok((
                failures.is_empty(),
                json!({"seed": seed, "samples": samples, "accuracy": acc, "failures": failures}),
            ))
        })(),
    )
}

pub fn check_obstruction() -> Check {
    Check::from_result(
        "obstruction along L5",
        (|| {
            let g = counterexample_r6().geometry()?;
            let x = g.scenario.frame.field(4);
            let run = freeman_sequence(x, &g.j, &g.hyp, &Mode::Subbundle(vec![x.clone()]), 4)?;
            let pass = match &run.obstruction {
                Some(o) => {
                    o.k == 1 && o.vector == g.scenario.frame.field(2).at_origin() && o.verify()
                }
                None => false,
            };
            Ok((pass, run.to_json()))
        })(),
    )
}

pub fn check_example_pipelines() -> Vec<Check> {
    let runs: [(Scenario, Mode, usize, u32, &str); 2] = [
        (
            ex1_r8(),
            Mode::LieAlgebra,
            4,
            6,
            "pipeline ex1-r8 L7 liealg K=4",
        ),
        (
            ex2_r8(),
            Mode::Subbundle(Vec::new()),
            3,
            5,
            "pipeline ex2-r8 L7 subbundle K=3",
        ),
    ];
    runs.into_iter()
        .map(|(s, mode, k, n, name)| {
            Check::from_result(
                name,
                (|| {
                    let g = s.geometry()?;
                    let x = g.scenario.frame.field(6).clone();
                    let mode = match mode {
                        Mode::Subbundle(_) => Mode::Subbundle(vec![x.clone()]),
                        m => m,
                    };
                    let rep = disc_in_hypersurface(&x, &g.j, &g.hyp, &mode, k, n, true)?;
                    Ok((rep.run.succeeded(k) && rep.certified(), rep.to_json()))
                })(),
            )
        })
        .collect()
}

pub fn check_disc_solver(seed: u64, samples: usize, acc: u32) -> Check {
    Check::from_result(
        "disc solver soundness",
        (|| {
            let g = counterexample_r6().truncate(acc).geometry()?;
            let mut s = Sampler::new(seed);
            let mut failures = Vec::new();
            for n in 0..samples {
                let jets = (0..acc).map(|_| s.real_vector(6, 2, 3)).collect();
                let x = JetSequence::new(vec![Rational::zero(); 6], jets)?;
                let rec = solve_disc_recursive(&g.j, &x, acc)?;
                let pic = solve_disc_picard(&g.j, &x, acc, acc as usize + 4)?;
                let cr = cauchy_riemann_defect(&g.j, &rec.gamma)?
                    .iter()
                    .all(|c| c.is_zero());
                let flags = [
                    rec.residual_valuation() >= acc - 1,
                    rec.jets == x,
                    pic.gamma == rec.gamma,
                    cr,
                ];
                if flags.iter().any(|ok| !ok) {
                    failures.push(json!({"sample": n, "valuation": flags[0], "jets": flags[1], "agree": flags[2], "cauchy_riemann": flags[3]}));
                }
            }
            Ok((
                failures.is_empty(),
                json!({"seed": seed, "samples": samples, "accuracy": acc, "failures": failures}),
            ))
        })(),
    )
}

/// Four norm inequalities on random inputs, each compared exactly.
pub fn check_norm_facts(seed: u64, samples: usize) -> Check {
    let mut s = Sampler::new(seed);
    let acc = 5;
    let mut counts = [0usize; 4];
    for _ in 0..samples {
        let jets = (0..acc).map(|_| s.real_vector(4, 3, 4)).collect();
        let x = JetSequence::new(vec![Rational::zero(); 4], jets).expect("jets");
        if phi1(&x, acc).norm_omega() == x.norm_tilde() {
            counts[0] += 1;
        }
        let f = s.disc(2, acc, 0, acc, 6);
        if phi2(&f).norm_tilde() <= f.norm_omega() {
            counts[1] += 1;
        }
        let u = s.disc(2, acc, 0, acc, 6);
        if u.t_op().norm_omega() <= int(2) * u.norm_star() {
            counts[2] += 1;
        }
        let a = s.series(2, acc, 0, acc, 5, false);
        let b = s.series(2, acc, 0, acc, 5, false);
        if norm_star(&(&a * &b)) <= norm_star(&a) * norm_star(&b) {
            counts[3] += 1;
        }
    }
    Check::new(
        "norm facts",
        counts.iter().all(|&c| c == samples),
        json!({
            "seed": seed, "samples": samples,
            "phi1_isometry": counts[0], "phi2_contraction": counts[1],
            "t_bound": counts[2], "submultiplicative": counts[3],
        }),
    )
}

/// Scales f so that ‖f‖_* < r.
fn shrink(f: &MultiSeries, r: &Rational) -> MultiSeries {
    let n = norm_star(f);
    f.scale_rational(&(r / (int(2) * &n + int(1))))
}

pub fn check_functional_calculus(seed: u64, samples: usize) -> Check {
    let mut s = Sampler::new(seed);
    let big_r = int(1);
    let r = rat(1, 2);
    let mut holds = 0;
    let mut errors = Vec::new();
    for n in 0..samples {
        let f = s.series(2, 4, 0, 3, 5, false);
        let args = [
            shrink(&s.series(2, 6, 0, 4, 4, false), &r),
            shrink(&s.series(2, 6, 0, 4, 4, false), &r),
        ];
        match functional_calculus(&f, &args, &r, &big_r) {
            Ok(rep) if rep.holds => holds += 1,
            Ok(_) => {}
            Err(e) => errors.push(json!({"sample": n, "error": e.to_string()})),
        }
    }
    Check::new(
        "functional calculus bound",
        holds == samples,
        json!({"seed": seed, "samples": samples, "holds": holds, "errors": errors, "r": "1/2", "R": "1"}),
    )
}

pub fn check_growth_estimates() -> Check {
    Check::from_result(
        "derivative growth estimate",
        (|| {
            let radius = rat(1, 2);
            let ce = counterexample_r6();
            let e1 = ex1_r8();
            let e2 = ex2_r8();
            let fields = [
                ("counterexample-r6 L3", ce.frame.field(2)),
                ("counterexample-r6 L5", ce.frame.field(4)),
                ("ex1-r8 L7", e1.frame.field(6)),
                ("ex2-r8 L7", e2.frame.field(6)),
            ];
            let mut pass = true;
            let mut rows = Vec::new();
            for (name, x) in fields {
                let rep = evf_check(x, &radius, 8)?;
                pass &= rep.holds();
                rows.push(json!({"field": name, "report": rep.to_json()}));
            }
            Ok((pass, Value::Array(rows)))
        })(),
    )
}

pub fn check_combinatorics() -> Check {
    let rep = combinatorics_audit(8, 30);
    Check::new("counting lemmas", rep.holds(), rep.to_json())
}

/// Levi-flat φ = y₁ under J₀ and under a seeded perturbation with the same
/// leaves: the pipeline succeeds for random tangent X and the discs have
/// tangency ≥ accuracy − 1.
pub fn check_levi_flat(seed: u64, samples: usize) -> Check {
    Check::from_result(
        "levi-flat pipelines",
        (|| {
            let acc = 5;
            let dim = 6;
            let hyp = Hypersurface::new(MultiSeries::var(dim, acc, 1))?;
            let mut s = Sampler::new(seed);
            let standard = Frame::standard(dim, acc);
            let perturbed = s.levi_flat_frame(dim, acc, 2, 6);
            let mut rows = Vec::new();
            let mut pass = true;
            for (label, frame) in [("standard", standard), ("perturbed", perturbed)] {
                let j = j_from_frame(&frame)?;
                let mode = Mode::Subbundle(vec![frame.field(2).clone(), frame.field(4).clone()]);
                for n in 0..samples {
                    let mut x = VectorField::zero(dim, acc);
                    for p in 2..dim {
                        let c = konst(dim, acc, s.nonzero_rational(3, 2));
                        x = x.add(&frame.field(p).scale(&c));
                    }
                    let rep = disc_in_hypersurface(&x, &j, &hyp, &mode, 3, acc, false)?;
                    let t = rep.tangency.as_ref().map(|t| t.lower_bound()).unwrap_or(0);
                    let ok = rep.run.succeeded(3) && t >= acc - 1;
                    pass &= ok;
                    rows.push(json!({
                    "structure": label, "sample": n, "ok": ok,
                    "x_at_origin": x.at_origin().iter().map(rational_to_string).collect::<Vec<_>>(),
                    "tangency_at_least": t,
                }));
                }
            }
            Ok((pass, json!({"seed": seed, "accuracy": acc, "runs": rows})))
        })(),
    )
}

/// The whole battery, in a fixed order.
pub fn run_all(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for s in [counterexample_r6(), ex1_r8(), ex2_r8()] {
        out.push(check_bracket_table(&s));
    }
    out.push(check_levi_counterexample());
    out.extend(check_levi_examples());
    out.push(counterexample_identities(seed, 20, 6));
    out.push(check_obstruction());
    out.extend(check_example_pipelines());
    out.push(check_disc_solver(seed, 20, 6));
    out.push(check_norm_facts(seed, 100));
    out.push(check_functional_calculus(seed, 50));
    out.push(check_growth_estimates());
    out.push(check_combinatorics());
    out.push(check_levi_flat(seed, 5));
    out
}
