//! Commuting sequences X₁, X₂, … with the same integral curve through 0, and
//! the discs they produce inside a hypersurface.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::disc_solver::{
    solve_disc_picard, solve_disc_recursive, tangency_order, DiscSolution, JetSequence, Tangency,
};
use crate::error::{Error, Result};
use crate::geometry::commute::{lie_algebra_closure_check, BracketCalculus, Letter};
use crate::geometry::structure::{complex_basis, linear_substitution};
use crate::geometry::{
    in_tjm, iterated_d, levi_form, AlmostComplexStructure, Hypersurface, VectorField,
};
use crate::linalg::{self, CMatrix};
use crate::series::scalar::{factorial, int, rational_to_string};
use crate::series::{CScalar, MultiSeries, Rational, SeriesMatrix};

fn rationals_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| json!(rational_to_string(c))).collect())
}

fn real_to_complex(v: &[Rational]) -> Vec<CScalar> {
    v.iter().map(|c| CScalar::real(c.clone())).collect()
}

/// Formal change of coordinates u = Φ(z) with inverse z = Ψ(u).
#[derive(Clone, Debug)]
pub struct CoordinateChange {
    pub forward: Vec<MultiSeries>,
    pub inverse: Vec<MultiSeries>,
    /// Columns are the images of the new coordinate directions at 0.
    pub linear: CMatrix,
}

impl CoordinateChange {
    /// Φ_*V, written in the new coordinates.
    pub fn push_forward(&self, v: &VectorField) -> Result<VectorField> {
        let comps = self
            .forward
            .iter()
            .map(|phi| v.apply(phi).compose(&self.inverse))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(VectorField::new(comps))
    }

    /// Ψ_*W, written in the original coordinates.
    pub fn pull_back(&self, w: &VectorField) -> Result<VectorField> {
        let comps = self
            .inverse
            .iter()
            .map(|psi| w.apply(psi).compose(&self.forward))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(VectorField::new(comps))
    }

    /// Φ∘Ψ and Ψ∘Φ are both the identity to accuracy.
    pub fn round_trip_is_identity(&self) -> Result<bool> {
        let dim = self.forward.len();
        let acc = self.forward[0].accuracy().min(self.inverse[0].accuracy());
        let ok = |outer: &[MultiSeries], inner: &[MultiSeries]| -> Result<bool> {
            for (i, f) in outer.iter().enumerate() {
                if f.compose(inner)? != MultiSeries::var(dim, acc, i) {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Ok(ok(&self.forward, &self.inverse)? && ok(&self.inverse, &self.forward)?)
    }
}

/// Solves X̂(u) = const with X̂(0) = e₁ and prescribed linear part, putting no
/// terms independent of the first variable beyond the linear ones.
fn transport(xh: &VectorField, linear: MultiSeries) -> MultiSeries {
    let acc = xh.accuracy();
    let mut u = linear.with_accuracy(acc);
    for d in 2..=acc {
        let r = xh.apply(&u).homogeneous_part(d - 1);
        if r.is_zero() {
            continue;
        }
        u = &u - &r.integrate(0).truncate(acc);
    }
    u
}

/// The first `count` flow-box coordinates of X: u₁ with X(u₁) = 1 and first
/// integrals u₂, … of X, with du(0) dual to the basis (X(0), JX(0), …).
/// Returns the functions in the original coordinates and the linear basis.
pub fn flow_box_coordinates(
    x: &VectorField,
    j: &AlmostComplexStructure,
    count: usize,
) -> Result<(Vec<MultiSeries>, CMatrix)> {
    let dim = x.dim();
    let acc = x.accuracy();
    if x.vanishes_at_origin() {
        return Err(Error::VanishingField);
    }
    let p = complex_basis(&j.at_origin(), &[x.at_origin_complex()])?;
    let p_inv = linalg::inverse(&p).expect("basis");
    let to_xi = linear_substitution(&p, acc);
    let from_z = linear_substitution(&p_inv, acc);
    let moved = x.compose(&to_xi)?;
    let xh = VectorField::new(SeriesMatrix::constant(&p_inv, dim, acc).apply(moved.components())?);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let u = transport(&xh, MultiSeries::var(dim, acc, i));
        out.push(u.compose(&from_z)?);
    }
    Ok((out, p))
}

/// Right inverse of a map with invertible linear part: Ψ with Φ∘Ψ = id.
pub fn invert_map(forward: &[MultiSeries]) -> Result<Vec<MultiSeries>> {
    let dim = forward.len();
    let acc = forward.iter().map(|f| f.accuracy()).min().unwrap_or(0);
    let lin: CMatrix = forward
        .iter()
        .map(|f| {
            (0..dim)
                .map(|i| {
                    let mut e = vec![0u32; dim];
                    e[i] = 1;
                    f.coeff(&e)
                })
                .collect()
        })
        .collect();
    let lin_inv = linalg::inverse(&lin)
        .ok_or_else(|| Error::SingularSystem("linear part of the map".into()))?;
    let lin_inv_s = SeriesMatrix::constant(&lin_inv, dim, acc);
    let nonlinear: Vec<MultiSeries> = forward
        .iter()
        .map(|f| {
            let l = f.homogeneous_part(1);
            f - &l
        })
        .collect();
    let ids: Vec<MultiSeries> = (0..dim).map(|i| MultiSeries::var(dim, acc, i)).collect();
    let mut psi = lin_inv_s.apply(&ids)?;
    for _ in 0..=acc {
        let n_psi = nonlinear
            .iter()
            .map(|n| n.compose(&psi))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let rhs: Vec<MultiSeries> = ids.iter().zip(&n_psi).map(|(a, b)| a - b).collect();
        let next = lin_inv_s.apply(&rhs)?;
        if next == psi {
            break;
        }
        psi = next;
    }
    Ok(psi)
}

/// Flow-box straightening: in the new coordinates X = ∂/∂u₁, and at 0 the new
/// frame is (X(0), JX(0), …) so J(0) stays standard when it was.
pub fn rectify(x: &VectorField, j: &AlmostComplexStructure) -> Result<CoordinateChange> {
    let (forward, linear) = flow_box_coordinates(x, j, x.dim())?;
    let inverse = invert_map(&forward)?;
    Ok(CoordinateChange {
        forward,
        inverse,
        linear,
    })
}

/// Y_{p,q} = [JX, …, [JX, [X, …, [X, [X, JX]]…] with q outer JX and p inner X.
pub fn y_pq(calc: &mut BracketCalculus, p: usize, q: usize) -> VectorField {
    let mut w = vec![Letter::JX; q];
    w.extend(std::iter::repeat_n(Letter::X, p));
    calc.nested_on_base(&w)
}

pub fn y_pq_field(
    x: &VectorField,
    j: &AlmostComplexStructure,
    p: usize,
    q: usize,
) -> Result<VectorField> {
    let k = p + q + 1;
    if x.accuracy() < k as u32 + 1 {
        return Err(Error::InsufficientAccuracy {
            needed: k as u32 + 1,
            have: x.accuracy(),
        });
    }
    Ok(y_pq(&mut BracketCalculus::new(x, j), p, q))
}

/// D^{l,0}_X X(0) for l = 0..=lmax.
pub fn curve_jets(x: &VectorField, lmax: u32) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    for l in 0..=lmax {
        out.push(iterated_d(x, x, l, 0, x)?.at_origin());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    LieAlgebra,
    /// Fields whose values at 0 span the subbundle over ℂ.
    Subbundle(Vec<VectorField>),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::LieAlgebra => "liealg",
            Mode::Subbundle(_) => "subbundle",
        }
    }
}

/// Coefficients of a = Σ_{j=1..k} a_j w₁^{k−j} w₂^j and the same for b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub label: String,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl Correction {
    pub fn to_json(&self) -> Value {
        json!({"direction": self.label, "a": rationals_json(&self.a), "b": rationals_json(&self.b)})
    }
}

#[derive(Clone, Debug)]
pub struct FreemanState {
    pub k: usize,
    pub field: VectorField,
    pub commute_order: usize,
    /// D^{l,0}_{X₁}X₁(0), recorded at stage 1.
    pub jets: Vec<Vec<Rational>>,
    /// Corrections that produced this stage from the previous one.
    pub corrections: Vec<Correction>,
}

impl FreemanState {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "accuracy": self.field.accuracy(),
            "commute_order_at_least": self.commute_order,
            "corrections": self.corrections.iter().map(Correction::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub k: usize,
    pub r: usize,
    pub s: usize,
    /// D^{r,s}[X_k, JX_k](0).
    pub vector: Vec<Rational>,
    /// Real spanning vectors {L_p(0), JL_p(0)}.
    pub span: Vec<Vec<Rational>>,
}

impl ObstructionReport {
    /// Exact rank test: adding the vector to the span raises the rank.
    pub fn verify(&self) -> bool {
        let rows =
            |vs: &[Vec<Rational>]| -> CMatrix { vs.iter().map(|v| real_to_complex(v)).collect() };
        let mut with = self.span.clone();
        with.push(self.vector.clone());
        linalg::rank(&rows(&with)) > linalg::rank(&rows(&self.span))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "r": self.r,
            "s": self.s,
            "vector": rationals_json(&self.vector),
            "span": self.span.iter().map(|v| rationals_json(v)).collect::<Vec<_>>(),
            "verified": self.verify(),
        })
    }
}

/// Accuracy needed by a K-stage pipeline: stage k costs k degrees and the last
/// field must still resolve brackets of length K at 0.
pub fn accuracy_budget(stages: usize) -> u32 {
    let k = stages as u32;
    ((k.saturating_sub(1)) * (k + 2) / 2).max(1)
}

/// Solves for a_1..a_k, b_1..b_k in
///   a_s (k−s)! s! − b_{s+1} (k−1−s)! (s+1)! = rhs1[s]
///   b_s (k−s)! s! + a_{s+1} (k−1−s)! (s+1)! = rhs2[s]
/// for s = 0..k−1, with a_0 = b_0 = 0.
pub fn solve_step_system(
    k: usize,
    rhs1: &[Rational],
    rhs2: &[Rational],
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let n = 2 * k;
    // unknown order: a_1..a_k, b_1..b_k
    let a_idx = |j: usize| j - 1;
    let b_idx = |j: usize| k + j - 1;
    let mut m = vec![vec![CScalar::zero(); n]; n];
    let mut rhs = vec![CScalar::zero(); n];
    for s in 0..k {
        let c0 = factorial((k - s) as u32) * factorial(s as u32);
        let c1 = factorial((k - 1 - s) as u32) * factorial(s as u32 + 1);
        if s > 0 {
            m[2 * s][a_idx(s)] = CScalar::real(c0.clone());
            m[2 * s + 1][b_idx(s)] = CScalar::real(c0.clone());
        }
        m[2 * s][b_idx(s + 1)] = CScalar::real(-c1.clone());
        m[2 * s + 1][a_idx(s + 1)] = CScalar::real(c1);
        rhs[2 * s] = CScalar::real(rhs1[s].clone());
        rhs[2 * s + 1] = CScalar::real(rhs2[s].clone());
    }
    let sol = linalg::solve_unique(&m, &rhs)
        .ok_or_else(|| Error::SingularSystem(format!("correction system at k = {k}")))?;
    let a = (1..=k).map(|j| sol[a_idx(j)].re.clone()).collect();
    let b = (1..=k).map(|j| sol[b_idx(j)].re.clone()).collect();
    Ok((a, b))
}

/// Σ_{j=1..k} c_j w₁^{k−j} w₂^j.
fn homogeneous(c: &[Rational], w1_pows: &[MultiSeries], w2_pows: &[MultiSeries]) -> MultiSeries {
    let k = c.len();
    let mut out = MultiSeries::zero(w1_pows[0].nvars(), w1_pows[0].accuracy());
    for (jm1, cj) in c.iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        let j = jm1 + 1;
        out = &out
            + &w1_pows[k - j]
                .mul_truncated(&w2_pows[j], out.accuracy())
                .scale_rational(cj);
    }
    out
}

fn powers(w: &MultiSeries, k: usize) -> Vec<MultiSeries> {
    let mut out = vec![MultiSeries::one(w.nvars(), w.accuracy())];
    for _ in 0..k {
        let next = out.last().unwrap() * w;
        out.push(next);
    }
    out
}

pub enum StepOutcome {
    Advanced(FreemanState),
    Obstructed(ObstructionReport),
}

/// Expresses a real vector in the real span of `basis`; None if outside.
fn real_coordinates(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let dim = v.len();
    let m: CMatrix = (0..dim)
        .map(|r| basis.iter().map(|b| CScalar::real(b[r].clone())).collect())
        .collect();
    linalg::solve(&m, &real_to_complex(v)).map(|s| s.into_iter().map(|c| c.re).collect())
}

/// One stage k → k+1. X_k must commute at order k.
pub fn freeman_step(
    state: &FreemanState,
    j: &AlmostComplexStructure,
    mode: &Mode,
) -> Result<StepOutcome> {
    let k = state.k;
    let x = &state.field;
    let need = 2 * k as u32;
    if x.accuracy() < need {
        return Err(Error::InsufficientAccuracy {
            needed: need,
            have: x.accuracy(),
        });
    }
    let (w, _) = flow_box_coordinates(x, j, 2)?;
    let w1 = powers(&w[0], k);
    let w2 = powers(&w[1], k);
    let mut calc = BracketCalculus::new(x, j);
    let jx = calc.jx().clone();
    let mut correction = VectorField::zero(x.dim(), x.accuracy());
    let mut records = Vec::new();
    let mut add = |label: String,
                   a: Vec<Rational>,
                   b: Vec<Rational>,
                   y: &VectorField,
                   correction: &mut VectorField| {
        let fa = homogeneous(&a, &w1, &w2);
        let fb = homogeneous(&b, &w1, &w2);
        let term = y.scale(&fa).add(&j.apply(y).scale(&fb));
        *correction = correction.add(&term);
        records.push(Correction { label, a, b });
    };
    match mode {
        Mode::LieAlgebra => {
            for q in 0..k {
                let p = k - 1 - q;
                let y = y_pq(&mut calc, p, q);
                let rhs1 = vec![Rational::zero(); k];
                let rhs2: Vec<Rational> = (0..k)
                    .map(|s| if s == q { int(1) } else { int(0) })
                    .collect();
                let (a, b) = solve_step_system(k, &rhs1, &rhs2)?;
                add(format!("Y_{p},{q}"), a, b, &y, &mut correction);
            }
        }
        Mode::Subbundle(fields) => {
            let j0 = j.at_origin();
            let mut span = Vec::new();
            for l in fields {
                span.push(l.at_origin());
                span.push(
                    linalg::mat_vec(&j0, &l.at_origin_complex())
                        .into_iter()
                        .map(|c| c.re)
                        .collect(),
                );
            }
            let base = calc.base();
            // alphas[s][p] = α_p^{k−1−s, s}
            let mut alphas: Vec<Vec<(Rational, Rational)>> = Vec::new();
            for s in 0..k {
                let r = k - 1 - s;
                let v = iterated_d(x, &jx, r as u32, s as u32, &base)?.at_origin();
                match real_coordinates(&span, &v) {
                    Some(c) => {
                        alphas.push(c.chunks(2).map(|p| (p[0].clone(), p[1].clone())).collect())
                    }
                    None => {
                        return Ok(StepOutcome::Obstructed(ObstructionReport {
                            k,
                            r,
                            s,
                            vector: v,
                            span,
                        }));
                    }
                }
            }
            for (p, l) in fields.iter().enumerate() {
                let rhs1: Vec<Rational> = (0..k).map(|s| -alphas[s][p].1.clone()).collect();
                let rhs2: Vec<Rational> = (0..k).map(|s| alphas[s][p].0.clone()).collect();
                let (a, b) = solve_step_system(k, &rhs1, &rhs2)?;
                add(format!("L[{p}]"), a, b, l, &mut correction);
            }
        }
    }
    let next = x.add(&correction);
    let order = BracketCalculus::new(&next, j).commute_order(k + 1)?;
    if order < k + 1 {
        return Err(Error::CertificationFailed(format!(
            "stage {} field commutes only at order {order}",
            k + 1
        )));
    }
    let lmax = next.accuracy().min(state.jets.len() as u32 - 1);
    let jets = curve_jets(&next, lmax)?;
    if jets[..] != state.jets[..=lmax as usize] {
        return Err(Error::CertificationFailed(format!(
            "stage {} changed the derivatives of the integral curve",
            k + 1
        )));
    }
    Ok(StepOutcome::Advanced(FreemanState {
        k: k + 1,
        field: next,
        commute_order: order,
        jets: state.jets.clone(),
        corrections: records,
    }))
}

#[derive(Clone, Debug)]
pub struct FreemanRun {
    pub mode: &'static str,
    pub states: Vec<FreemanState>,
    pub obstruction: Option<ObstructionReport>,
}

impl FreemanRun {
    pub fn succeeded(&self, stages: usize) -> bool {
        self.obstruction.is_none() && self.states.len() == stages
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode,
            "stages": self.states.iter().map(FreemanState::to_json).collect::<Vec<_>>(),
            "obstruction": self.obstruction.as_ref().map(ObstructionReport::to_json),
        })
    }
}

/// Runs stages 1..=K. In Lie-algebra mode the closure of {X, JX} under
/// brackets is first checked against T^J M to depth K + 1.
pub fn freeman_sequence(
    x: &VectorField,
    j: &AlmostComplexStructure,
    hyp: &Hypersurface,
    mode: &Mode,
    stages: usize,
) -> Result<FreemanRun> {
    if stages == 0 {
        return Err(Error::Input("at least one stage is required".into()));
    }
    if x.vanishes_at_origin() {
        return Err(Error::VanishingField);
    }
    levi_form(hyp, j, x)?;
    let budget = accuracy_budget(stages);
    let x = x.truncate(x.accuracy().min(j.accuracy()));
    if x.accuracy() < budget {
        return Err(Error::InsufficientAccuracy {
            needed: budget,
            have: x.accuracy(),
        });
    }
    if let Mode::LieAlgebra = mode {
        let depth = (stages + 1).min(x.accuracy() as usize);
        let closure = lie_algebra_closure_check(&x, hyp, j, depth);
        if let Some((w, which, residue)) = closure.offending {
            return Err(Error::ClosureViolated(format!(
                "{w}: {which} restricted to M is {residue:?}"
            )));
        }
    }
    let jets = curve_jets(&x, x.accuracy())?;
    let mut states = vec![FreemanState {
        k: 1,
        field: x.clone(),
        commute_order: 1,
        jets,
        corrections: Vec::new(),
    }];
    while states.len() < stages {
        match freeman_step(states.last().unwrap(), j, mode)? {
            StepOutcome::Advanced(s) => states.push(s),
            StepOutcome::Obstructed(o) => {
                return Ok(FreemanRun {
                    mode: mode.name(),
                    states,
                    obstruction: Some(o),
                });
            }
        }
    }
    Ok(FreemanRun {
        mode: mode.name(),
        states,
        obstruction: None,
    })
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub run: FreemanRun,
    pub disc: Option<DiscSolution>,
    pub solvers_agree: Option<bool>,
    pub tangency: Option<Tangency>,
    pub required_tangency: u32,
}

impl PipelineReport {
    pub fn certified(&self) -> bool {
        self.tangency
            .as_ref()
            .map(|t| t.lower_bound() >= self.required_tangency)
            .unwrap_or(false)
            && self.solvers_agree != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pipeline": self.run.to_json(),
            "disc": self.disc.as_ref().map(DiscSolution::to_json),
            "solvers_agree": self.solvers_agree,
            "tangency": self.tangency.as_ref().map(Tangency::to_json),
            "required_tangency": self.required_tangency,
            "certified": self.certified(),
        })
    }
}

/// Jets x_k = D^{k−1,0}_X X(0) for 1 ≤ k ≤ n.
pub fn curve_jet_sequence(x: &VectorField, n: u32) -> Result<JetSequence> {
    let jets = curve_jets(x, n.saturating_sub(1))?;
    JetSequence::new(vec![Rational::zero(); x.dim()], jets)
}

/// Runs the pipeline to stage K and, on success, solves for the disc with jets
/// x_k = D^{k−1,0}_X X(0), k ≤ N, and measures its tangency to M.
pub fn disc_in_hypersurface(
    x: &VectorField,
    j: &AlmostComplexStructure,
    hyp: &Hypersurface,
    mode: &Mode,
    stages: usize,
    order: u32,
    both_solvers: bool,
) -> Result<PipelineReport> {
    let run = freeman_sequence(x, j, hyp, mode, stages)?;
    let required = stages as u32 + 1;
    if run.obstruction.is_some() {
        return Ok(PipelineReport {
            run,
            disc: None,
            solvers_agree: None,
            tangency: None,
            required_tangency: required,
        });
    }
    let jets = curve_jet_sequence(x, order)?;
    let jt = j.truncate(order);
    let disc = solve_disc_recursive(&jt, &jets, order)?;
    let solvers_agree = if both_solvers {
        Some(solve_disc_picard(&jt, &jets, order, order as usize + 2)?.gamma == disc.gamma)
    } else {
        None
    };
    let tangency = tangency_order(hyp, &disc.gamma)?;
    Ok(PipelineReport {
        run,
        disc: Some(disc),
        solvers_agree,
        tangency: Some(tangency),
        required_tangency: required,
    })
}

#[derive(Clone, Debug)]
pub struct FreemanTheoremReport {
    pub integrable: bool,
    pub levi_value_at_origin: CScalar,
    /// Fields Y of the basis (or JY) with [X, Y] ∉ T^J M, by index.
    pub kernel_failures: Vec<String>,
    pub pipeline: Option<PipelineReport>,
}

impl FreemanTheoremReport {
    pub fn in_kernel(&self) -> bool {
        self.kernel_failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "integrable": self.integrable,
            "levi_value_at_origin": crate::series::json::scalar_json(&self.levi_value_at_origin),
            "kernel_failures": self.kernel_failures,
            "in_kernel": self.in_kernel(),
            "pipeline": self.pipeline.as_ref().map(PipelineReport::to_json),
        })
    }
}

/// For integrable J: tests X ∈ {X ∈ T^J M : [X, Y] ∈ T^J M for all Y ∈ T^J M}
/// against the supplied basis fields and their J-images, then runs the
/// Lie-algebra pipeline. A non-member is reported without running it.
pub fn theorem_freeman_check(
    j: &AlmostComplexStructure,
    hyp: &Hypersurface,
    x: &VectorField,
    basis: &[VectorField],
    stages: usize,
    order: u32,
) -> Result<FreemanTheoremReport> {
    if let Some((a, b, _)) = j.integrability_defect() {
        return Err(Error::NotIntegrable(format!(
            "Nijenhuis tensor on coordinate fields {a}, {b}"
        )));
    }
    let levi = levi_form(hyp, j, x)?.constant_term();
    let mut failures = Vec::new();
    for (i, y) in basis.iter().enumerate() {
        for (tag, f) in [("", y.clone()), ("J", j.apply(y))] {
            if !in_tjm(hyp, j, &x.bracket(&f)).member {
                failures.push(format!("[X,{tag}Y{i}]"));
            }
        }
    }
    let pipeline = if failures.is_empty() {
        Some(disc_in_hypersurface(
            x,
            j,
            hyp,
            &Mode::LieAlgebra,
            stages,
            order,
            false,
        )?)
    } else {
        None
    };
    Ok(FreemanTheoremReport {
        integrable: true,
        levi_value_at_origin: levi,
        kernel_failures: failures,
        pipeline,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::{int, rat};

    #[test]
    fn step_system_triangular_solution() {
        let (a, b) = solve_step_system(1, &[int(0)], &[int(1)]).unwrap();
        assert_eq!((a, b), (vec![int(1)], vec![int(0)]));
        let (a, b) = solve_step_system(2, &[int(0), int(0)], &[int(0), int(1)]).unwrap();
        // s = 0: −b₁ = 0, a₁ = 0; s = 1: a₁ − 2b₂ = 0, b₁ + 2a₂ = 1
        assert_eq!(a, vec![int(0), rat(1, 2)]);
        assert_eq!(b, vec![int(0), int(0)]);
    }

    #[test]
    fn rectifying_a_shear() {
        // X = ∂x₁ + x₁∂x₂ on ℝ⁴
        let acc = 5;
        let x = VectorField::coordinate(4, acc, 0)
            .add(&VectorField::coordinate(4, acc, 2).scale(&MultiSeries::var(4, acc, 0)));
        let j = AlmostComplexStructure::standard(4, acc);
        let c = rectify(&x, &j).unwrap();
        assert!(c.round_trip_is_identity().unwrap());
        let pushed = c.push_forward(&x).unwrap();
        assert_eq!(
            pushed.truncate(acc - 1),
            VectorField::coordinate(4, acc - 1, 0)
        );
        assert_eq!(c.pull_back(&pushed).unwrap(), x.truncate(pushed.accuracy()));
    }

    #[test]
    fn already_straight_field() {
        let j = AlmostComplexStructure::standard(4, 4);
        let x = VectorField::coordinate(4, 4, 0);
        let c = rectify(&x, &j).unwrap();
        for (i, f) in c.forward.iter().enumerate() {
            assert_eq!(*f, MultiSeries::var(4, 4, i));
        }
    }
}
