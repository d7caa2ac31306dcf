//! J-holomorphic discs with prescribed derivatives along the real axis, and
//! the norm and growth estimates that make the construction work.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::structure::standardizing_basis;
use crate::geometry::{standard_j_matrix, AlmostComplexStructure, Hypersurface, VectorField};
use crate::linalg::{self, CMatrix};
use crate::series::json::rational_json;
use crate::series::scalar::{binomial, factorial, int, rat, rat_pow, rational_to_string};
use crate::series::{CScalar, DiscMap, MultiSeries, Rational, SeriesMatrix};

/// Prescribed derivatives: x₀ = γ(0) and x_k = ∂ᵏγ/∂xᵏ(0) for 1 ≤ k ≤ order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSequence {
    pub x0: Vec<Rational>,
    /// `jets[k − 1]` is x_k.
    pub jets: Vec<Vec<Rational>>,
}

fn l1(v: &[Rational]) -> Rational {
    v.iter().map(|c| c.abs()).sum()
}

impl JetSequence {
    pub fn new(x0: Vec<Rational>, jets: Vec<Vec<Rational>>) -> Result<Self> {
        if x0.is_empty() || !x0.len().is_multiple_of(2) {
            return Err(Error::Input(
                "jets must live in an even-dimensional space".into(),
            ));
        }
        if jets.iter().any(|x| x.len() != x0.len()) {
            return Err(Error::Input(
                "all jets must have the dimension of x0".into(),
            ));
        }
        Ok(JetSequence { x0, jets })
    }

    /// x₀ = 0 and x_k = 0 except for x₁ = v.
    pub fn tangent(v: Vec<Rational>, order: usize) -> Self {
        let dim = v.len();
        let mut jets = vec![vec![Rational::zero(); dim]; order];
        if order > 0 {
            jets[0] = v;
        }
        JetSequence {
            x0: vec![Rational::zero(); dim],
            jets,
        }
    }

    pub fn dim(&self) -> usize {
        self.x0.len()
    }

    pub fn order(&self) -> usize {
        self.jets.len()
    }

    pub fn get(&self, k: usize) -> &[Rational] {
        if k == 0 {
            &self.x0
        } else {
            &self.jets[k - 1]
        }
    }

    /// Ω̃-norm Σ_k (k+1)/k!·|x_k|.
    pub fn norm_tilde(&self) -> Rational {
        (0..=self.order())
            .map(|k| {
                Rational::from_integer(((k + 1) as i64).into()) / factorial(k as u32)
                    * l1(self.get(k))
            })
            .sum()
    }

    /// x_k ↦ λᵏ x_k.
    pub fn rescale(&self, lambda: &Rational) -> JetSequence {
        JetSequence {
            x0: self.x0.clone(),
            jets: self
                .jets
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let p = rat_pow(lambda, i as u32 + 1);
                    x.iter().map(|c| c * &p).collect()
                })
                .collect(),
        }
    }

    fn complex(&self, k: usize) -> Vec<CScalar> {
        self.get(k)
            .chunks(2)
            .map(|p| CScalar::new(p[0].clone(), p[1].clone()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let vec = |v: &[Rational]| v.iter().map(rational_json).collect::<Vec<_>>();
        json!({
            "x0": vec(&self.x0),
            "jets": self.jets.iter().map(|x| vec(x)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<JetSequence> {
        let parse_vec = |v: &Value| -> Result<Vec<Rational>> {
            v.as_array()
                .ok_or_else(|| Error::Input("jet vectors must be arrays".into()))?
                .iter()
                .map(|c| match c {
                    Value::String(s) => Ok(crate::series::scalar::parse_rational(s)?),
                    Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
                    _ => Err(Error::Input(format!("bad jet entry {c}"))),
                })
                .collect()
        };
        let x0 = parse_vec(
            v.get("x0")
                .ok_or_else(|| Error::Input("jets need \"x0\"".into()))?,
        )?;
        let jets = v
            .get("jets")
            .and_then(|j| j.as_array())
            .ok_or_else(|| Error::Input("jets need a \"jets\" array".into()))?
            .iter()
            .map(parse_vec)
            .collect::<Result<Vec<_>>>()?;
        JetSequence::new(x0, jets)
    }
}

/// (x_k) ↦ Σ x_k/k! ζᵏ.
pub fn phi1(x: &JetSequence, accuracy: u32) -> DiscMap {
    let n = x.dim() / 2;
    DiscMap::from_coefficients(
        n,
        accuracy,
        (0..=x.order().min(accuracy as usize)).map(|k| {
            let f = factorial(k as u32);
            (
                k as u32,
                0,
                x.complex(k)
                    .into_iter()
                    .map(|c| c.scale(&(Rational::one() / &f)))
                    .collect(),
            )
        }),
    )
}

/// f ↦ (∂ᵏf/∂xᵏ(0))_k for k up to the accuracy of f.
pub fn phi2(f: &DiscMap) -> JetSequence {
    let acc = f.accuracy();
    JetSequence {
        x0: f.jet(0).expect("order 0"),
        jets: (1..=acc)
            .map(|k| f.jet(k).expect("within accuracy"))
            .collect(),
    }
}

/// Complex conjugation on ℂⁿ ≅ ℝ²ⁿ.
pub fn conjugation_matrix(dim: usize) -> CMatrix {
    let mut c = linalg::identity(dim);
    for i in (1..dim).step_by(2) {
        c[i][i] = -CScalar::one();
    }
    c
}

/// A_J = (J₀ + J)⁻¹ (J₀ − J) C.
pub fn a_of_j(j: &AlmostComplexStructure) -> Result<SeriesMatrix> {
    let dim = j.dim();
    let acc = j.accuracy();
    let j0 = SeriesMatrix::constant(&standard_j_matrix(dim), dim, acc);
    let c = SeriesMatrix::constant(&conjugation_matrix(dim), dim, acc);
    let plus = j0.add(j.matrix())?;
    let inv = plus
        .inverse()
        .map_err(|_| Error::SingularSystem("J₀ + J(0) is not invertible".into()))?;
    Ok(inv.mul(&j0.sub(j.matrix())?)?.mul(&c)?)
}

/// Real matrix of series in 2n variables applied to a disc: M(γ)·v with v a
/// ℂⁿ-valued function of (ζ, ζ̄), realified pointwise.
fn apply_along(m: &SeriesMatrix, gamma_real: &[MultiSeries], v: &DiscMap) -> Result<DiscMap> {
    let composed = m.compose(gamma_real)?;
    Ok(DiscMap::from_real(&composed.apply(&v.to_real())?))
}

/// G(γ) = A_J(γ)·∂γ̄/∂ζ̄.
fn nonlinearity(a: &SeriesMatrix, gamma: &DiscMap) -> Result<DiscMap> {
    let dbar_conj = gamma.conj().ddbar();
    apply_along(a, &gamma.to_real(), &dbar_conj)
}

/// ∂γ/∂ζ̄ − A_J(γ)·∂γ̄/∂ζ̄.
pub fn residual(a: &SeriesMatrix, gamma: &DiscMap) -> Result<DiscMap> {
    Ok(gamma.ddbar().sub(&nonlinearity(a, gamma)?))
}

/// J(γ)·∂γ/∂s − ∂γ/∂t in real components, with ζ = s + it. Vanishes exactly
/// when γ is J-holomorphic; independent of the A_J reformulation.
pub fn cauchy_riemann_defect(
    j: &AlmostComplexStructure,
    gamma: &DiscMap,
) -> Result<Vec<MultiSeries>> {
    let r = gamma.to_real();
    let i = CScalar::i();
    let ds: Vec<MultiSeries> = r.iter().map(|c| &c.diff(0) + &c.diff(1)).collect();
    let dt: Vec<MultiSeries> = r
        .iter()
        .map(|c| (&c.diff(0) - &c.diff(1)).scale(&i))
        .collect();
    let jr = j.matrix().compose(&r)?.apply(&ds)?;
    Ok(jr.iter().zip(&dt).map(|(a, b)| a - b).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Lowest degree of a nonzero residual term, or None when it vanishes to accuracy.
    pub residual_valuation: Option<u32>,
    pub residual_norm: Rational,
}

#[derive(Clone, Debug)]
pub struct DiscSolution {
    pub gamma: DiscMap,
    pub residual: DiscMap,
    pub jets: JetSequence,
    pub log: Vec<IterationRecord>,
    pub solver: &'static str,
}

impl DiscSolution {
    pub fn residual_vanishes(&self) -> bool {
        self.residual.is_zero()
    }

    /// Lower bound for the valuation of the residual.
    pub fn residual_valuation(&self) -> u32 {
        self.residual
            .valuation()
            .unwrap_or(self.residual.accuracy() + 1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "solver": self.solver,
            "accuracy": self.gamma.accuracy(),
            "gamma": self.gamma.to_json(),
            "residual_vanishes": self.residual_vanishes(),
            "residual_valuation_at_least": self.residual_valuation(),
            "jets": self.jets.to_json(),
            "iterations": self.log.iter().map(|r| json!({
                "iteration": r.iteration,
                "residual_valuation": r.residual_valuation,
                "residual_norm": rational_to_string(&r.residual_norm),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Change of frame that brings J(0) to J₀, with the pulled-back structure.
struct Recentered {
    p: Option<CMatrix>,
    j: AlmostComplexStructure,
    x: JetSequence,
}

fn recenter(j: &AlmostComplexStructure, x: &JetSequence) -> Result<Recentered> {
    if x.dim() != j.dim() {
        return Err(Error::Input(format!(
            "jets in dimension {} for J in dimension {}",
            x.dim(),
            j.dim()
        )));
    }
    if x.x0.iter().any(|c| !c.is_zero()) {
        return Err(Error::OffCenter(
            "the disc center must be the origin of the chart; translate the data first".into(),
        ));
    }
    if j.is_standard_at_origin() {
        return Ok(Recentered {
            p: None,
            j: j.clone(),
            x: x.clone(),
        });
    }
    let p = standardizing_basis(&j.at_origin())?;
    let p_inv = linalg::inverse(&p).expect("basis");
    let map = |v: &[Rational]| -> Vec<Rational> {
        let c: Vec<CScalar> = v.iter().map(|r| CScalar::real(r.clone())).collect();
        linalg::mat_vec(&p_inv, &c)
            .into_iter()
            .map(|c| c.re)
            .collect()
    };
    Ok(Recentered {
        j: j.linear_pullback(&p)?,
        x: JetSequence {
            x0: x.x0.clone(),
            jets: x.jets.iter().map(|v| map(v)).collect(),
        },
        p: Some(p),
    })
}

fn undo_recentering(p: &Option<CMatrix>, gamma: DiscMap) -> DiscMap {
    match p {
        None => gamma,
        Some(p) => {
            let r = gamma.to_real();
            let out: Vec<MultiSeries> = p
                .iter()
                .map(|row| {
                    let mut s = MultiSeries::zero(2, gamma.accuracy());
                    for (c, comp) in row.iter().zip(&r) {
                        if !c.is_zero() {
                            s = &s + &comp.scale(c);
                        }
                    }
                    s
                })
                .collect();
            DiscMap::from_real(&out)
        }
    }
}

fn check_order(j: &AlmostComplexStructure, x: &JetSequence, n: u32) -> Result<()> {
    if (x.order() as u32) < n {
        return Err(Error::Input(format!(
            "{} jets supplied for accuracy {n}",
            x.order()
        )));
    }
    if j.accuracy() + 1 < n {
        return Err(Error::InsufficientAccuracy {
            needed: n.saturating_sub(1),
            have: j.accuracy(),
        });
    }
    Ok(())
}

fn finish(
    j: &AlmostComplexStructure,
    x: &JetSequence,
    n: u32,
    gamma: DiscMap,
    log: Vec<IterationRecord>,
    solver: &'static str,
    p: &Option<CMatrix>,
) -> Result<DiscSolution> {
    let gamma = undo_recentering(p, gamma);
    let a = a_of_j(j)?;
    let res = residual(&a, &gamma)?;
    let jets = phi2(&gamma);
    let expected = JetSequence {
        x0: x.x0.clone(),
        jets: x.jets[..n as usize].to_vec(),
    };
    if jets != expected {
        return Err(Error::CertificationFailed(
            "disc jets differ from the prescribed ones".into(),
        ));
    }
    Ok(DiscSolution {
        gamma,
        residual: res,
        jets,
        log,
        solver,
    })
}

/// Degree-by-degree solution of ∂γ/∂ζ̄ = A_J(γ)·∂γ̄/∂ζ̄ with the holomorphic
/// part fixed by the jets.
pub fn solve_disc_recursive(
    j: &AlmostComplexStructure,
    x: &JetSequence,
    n: u32,
) -> Result<DiscSolution> {
    check_order(j, x, n)?;
    let rc = recenter(j, x)?;
    let a = a_of_j(&rc.j)?;
    let dim = x.dim() / 2;
    let mut gamma = DiscMap::zero(dim, n);
    for d in 1..=n {
        let g = nonlinearity(&a, &gamma)?;
        let mut coeffs: Vec<(u32, u32, Vec<CScalar>)> = Vec::new();
        let mut anti_sum = vec![CScalar::zero(); dim];
        for l in 1..=d {
            let k = d - l;
            let v: Vec<CScalar> = g
                .coefficient(k, l - 1)
                .into_iter()
                .map(|c| c.scale(&rat(1, l as i64)))
                .collect();
            for (s, c) in anti_sum.iter_mut().zip(&v) {
                *s += c;
            }
            coeffs.push((k, l, v));
        }
        let f = Rational::one() / factorial(d);
        let hol: Vec<CScalar> =
            rc.x.complex(d as usize)
                .iter()
                .zip(&anti_sum)
                .map(|(xd, s)| &xd.scale(&f) - s)
                .collect();
        coeffs.push((d, 0, hol));
        gamma = gamma.add(&DiscMap::from_coefficients(dim, n, coeffs));
    }
    finish(j, x, n, gamma, Vec::new(), "recursive", &rc.p)
}

/// Picard iteration γ ← h + T(A_J(γ)·∂γ̄/∂ζ̄), with the holomorphic polynomial h
/// re-fitted each pass so that the jets stay prescribed.
pub fn solve_disc_picard(
    j: &AlmostComplexStructure,
    x: &JetSequence,
    n: u32,
    max_iter: usize,
) -> Result<DiscSolution> {
    check_order(j, x, n)?;
    let rc = recenter(j, x)?;
    let a = a_of_j(&rc.j)?;
    let dim = x.dim() / 2;
    let target = phi1(
        &JetSequence {
            x0: rc.x.x0.clone(),
            jets: rc.x.jets[..n as usize].to_vec(),
        },
        n,
    );
    let mut gamma = target.clone();
    let mut log = Vec::new();
    let mut trace = Vec::new();
    for it in 1..=max_iter {
        let tg = nonlinearity(&a, &gamma)?.with_accuracy(n).t_op();
        // h makes the real-axis Taylor coefficients of h + T(G) equal those of φ₁(x)
        let corrections = (1..=n).map(|d| {
            let mut s = vec![CScalar::zero(); dim];
            for l in 1..=d {
                for (acc, c) in s.iter_mut().zip(tg.coefficient(d - l, l)) {
                    *acc += &c;
                }
            }
            (d, 0, s.into_iter().map(|c| -c).collect::<Vec<_>>())
        });
        let h = target.add(&DiscMap::from_coefficients(dim, n, corrections));
        let next = h.add(&tg);
        let res = residual(&a, &next)?;
        log.push(IterationRecord {
            iteration: it,
            residual_valuation: res.valuation(),
            residual_norm: res.norm_star(),
        });
        trace.push(res.norm_star());
        if next == gamma {
            return finish(j, x, n, next, log, "picard", &rc.p);
        }
        gamma = next;
    }
    Err(Error::NonStabilization {
        iterations: max_iter,
        trace: trace.iter().map(rational_to_string).collect(),
    })
}

/// γ(ζ) ↦ γ(λζ).
pub fn rescale_disc(gamma: &DiscMap, lambda: &Rational) -> DiscMap {
    gamma.rescale(lambda)
}

pub fn rescale_jets(x: &JetSequence, lambda: &Rational) -> JetSequence {
    x.rescale(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tangency {
    /// φ∘γ has a nonzero term of this degree and none below.
    Exact(u32),
    /// φ∘γ vanishes through the working accuracy; the order is at least this.
    AtLeast(u32),
}

impl Tangency {
    pub fn lower_bound(&self) -> u32 {
        match self {
            Tangency::Exact(v) | Tangency::AtLeast(v) => *v,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Tangency::Exact(v) => json!({"exact": v}),
            Tangency::AtLeast(v) => json!({"at_least": v}),
        }
    }
}

/// Vanishing order of φ∘γ at ζ = 0.
pub fn tangency_order(hyp: &Hypersurface, gamma: &DiscMap) -> Result<Tangency> {
    let r = gamma.to_real();
    if r.len() != hyp.dim() {
        return Err(Error::Input(
            "disc and hypersurface dimensions differ".into(),
        ));
    }
    let comp = if r.iter().all(|c| c.constant_term().is_zero()) {
        hyp.phi().compose(&r)?
    } else {
        let c = hyp.phi().compose_polynomial(&r)?;
        if !c.constant_term().is_zero() {
            return Err(Error::OffCenter(
                "the disc center is not on the hypersurface".into(),
            ));
        }
        c
    };
    Ok(match comp.valuation() {
        Some(v) => Tangency::Exact(v),
        None => Tangency::AtLeast(comp.accuracy() + 1),
    })
}

#[derive(Clone, Debug)]
pub struct FunctionalCalculusReport {
    pub value: MultiSeries,
    pub norm: Rational,
    pub majorant: Rational,
    pub bound: Rational,
    pub holds: bool,
}

/// Σ |F_ν| R^{|ν|}, an upper bound for the sup of F on the closed polydisc of radius R.
pub fn sup_majorant(f: &MultiSeries, radius: &Rational) -> Rational {
    f.terms()
        .map(|(m, c)| c.norm_l1() * rat_pow(radius, m.degree()))
        .sum()
}

/// F(f₁, …, f_k) for a polynomial germ F and scalar series fᵢ in (ζ, ζ̄), with
/// the bound ‖F(f)‖_* ≤ (R/(R−r))ᵏ·Σ|F_ν|R^{|ν|} checked exactly.
pub fn functional_calculus(
    f: &MultiSeries,
    args: &[MultiSeries],
    r: &Rational,
    big_r: &Rational,
) -> Result<FunctionalCalculusReport> {
    if !(r.is_positive() && r < big_r) {
        return Err(Error::NormPrecondition("need 0 < r < R".into()));
    }
    for (i, a) in args.iter().enumerate() {
        let n = crate::series::disc::norm_star(a);
        if &n >= r {
            return Err(Error::NormPrecondition(format!(
                "argument {i} has norm {} ≥ r = {}",
                rational_to_string(&n),
                rational_to_string(r)
            )));
        }
    }
    let value = f.compose_polynomial(args)?;
    let norm = crate::series::disc::norm_star(&value);
    let majorant = sup_majorant(f, big_r);
    let ratio = big_r / (big_r - r);
    let bound = rat_pow(&ratio, args.len() as u32) * &majorant;
    let holds = norm <= bound;
    Ok(FunctionalCalculusReport {
        value,
        norm,
        majorant,
        bound,
        holds,
    })
}

/// Coefficient majorant of c_R(X) = sup |X̃(z, w)| over |z_j|, |w_j| < R, where X̃
/// is X written in (z, z̄) and polarized.
pub fn c_r_bound(x: &VectorField, radius: &Rational) -> Result<Rational> {
    let dim = x.dim();
    let acc = x.accuracy();
    // x_j = (z_j + w_j)/2, y_j = (z_j − w_j)/(2i) with variables ordered (z₁, w₁, …)
    let half = CScalar::real(rat(1, 2));
    let minus_half_i = CScalar::new(Rational::zero(), rat(-1, 2));
    let args: Vec<MultiSeries> = (0..dim)
        .map(|i| {
            let base = i - i % 2;
            let z = MultiSeries::var(dim, acc, base);
            let w = MultiSeries::var(dim, acc, base + 1);
            if i % 2 == 0 {
                (&z + &w).scale(&half)
            } else {
                (&z - &w).scale(&minus_half_i)
            }
        })
        .collect();
    let mut total = Rational::zero();
    for c in x.components() {
        total += sup_majorant(&c.compose(&args)?, radius);
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct EstimateRow {
    pub k: u32,
    pub lhs: Rational,
    pub bound: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct EstimateReport {
    pub radius: Rational,
    pub c_r: Rational,
    pub rows: Vec<EstimateRow>,
}

impl EstimateReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "radius": rational_to_string(&self.radius),
            "c_r_majorant": rational_to_string(&self.c_r),
            "rows": self.rows.iter().map(|r| json!({
                "k": r.k,
                "lhs": rational_to_string(&r.lhs),
                "bound": rational_to_string(&r.bound),
                "holds": r.holds,
            })).collect::<Vec<_>>(),
            "holds": self.holds(),
        })
    }
}

/// |D_X^{k,0}X(0)| ≤ 2n·k!·(8n·ĉ_R/R)ᵏ for 1 ≤ k ≤ kmax.
pub fn evf_check(x: &VectorField, radius: &Rational, kmax: u32) -> Result<EstimateReport> {
    if x.accuracy() < kmax {
        return Err(Error::InsufficientAccuracy {
            needed: kmax,
            have: x.accuracy(),
        });
    }
    let n = (x.dim() / 2) as i64;
    let c_r = c_r_bound(x, radius)?;
    let base = int(8 * n) * &c_r / radius;
    let mut rows = Vec::new();
    let mut d = x.clone();
    for k in 1..=kmax {
        d = x.nabla(&d);
        let lhs = l1(&d.at_origin());
        let bound = int(2 * n) * factorial(k) * rat_pow(&base, k);
        rows.push(EstimateRow {
            k,
            holds: lhs <= bound,
            lhs,
            bound,
        });
    }
    Ok(EstimateReport {
        radius: radius.clone(),
        c_r,
        rows,
    })
}

#[derive(Clone, Debug)]
pub struct CombinatoricsReport {
    /// (k, number of k-tuples of non-negative integers with sum k, expected count, max α₁!…α_k!).
    pub tuples: Vec<(u32, u64, u64, Rational)>,
    pub lem1_holds: bool,
    pub lem2_holds: bool,
    /// (k, C(2k−1, k−1)²·π⁺·k, 16ᵏ).
    pub central: Vec<(u32, Rational, Rational)>,
    pub lem3_holds: bool,
}

impl CombinatoricsReport {
    pub fn holds(&self) -> bool {
        self.lem1_holds && self.lem2_holds && self.lem3_holds
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tuples": self.tuples.iter().map(|(k, c, e, m)| json!({
                "k": k, "count": c, "expected": e, "max_factorial_product": rational_to_string(m),
            })).collect::<Vec<_>>(),
            "central_binomial": self.central.iter().map(|(k, l, r)| json!({
                "k": k, "lhs": rational_to_string(l), "rhs": rational_to_string(r),
            })).collect::<Vec<_>>(),
            "lem1": self.lem1_holds,
            "lem2": self.lem2_holds,
            "lem3": self.lem3_holds,
        })
    }
}

/// Rational upper bound for π.
pub fn pi_upper() -> Rational {
    rat(355, 113)
}

fn for_each_tuple(k: u32, slots: u32, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if slots == 0 {
        if k == 0 {
            f(prefix);
        }
        return;
    }
    for a in 0..=k {
        prefix.push(a);
        for_each_tuple(k - a, slots - 1, prefix, f);
        prefix.pop();
    }
}

/// Exhaustive checks of the counting lemmas behind the growth estimate, and of
/// C(2k−1, k−1) ≤ 4ᵏ/√(πk) in the squared form C(2k−1, k−1)²·π·k ≤ 16ᵏ.
pub fn combinatorics_audit(kmax_enum: u32, kmax_central: u32) -> CombinatoricsReport {
    let mut tuples = Vec::new();
    let mut lem1 = true;
    let mut lem2 = true;
    for k in 1..=kmax_enum {
        let mut count = 0u64;
        let mut max_prod = Rational::zero();
        let kf = factorial(k);
        for_each_tuple(k, k, &mut Vec::new(), &mut |alpha| {
            count += 1;
            let p: Rational = alpha.iter().map(|&a| factorial(a)).product();
            if p > kf {
                lem1 = false;
            }
            if p > max_prod {
                max_prod = p;
            }
        });
        let expected: u64 = binomial(2 * k - 1, k - 1).try_into().expect("small");
        lem2 &= count == expected;
        tuples.push((k, count, expected, max_prod));
    }
    let mut central = Vec::new();
    let mut lem3 = true;
    for k in 1..=kmax_central {
        let c = Rational::from_integer(binomial(2 * k - 1, k - 1));
        let lhs = &c * &c * pi_upper() * int(k as i64);
        let rhs = rat_pow(&int(16), k);
        lem3 &= lhs <= rhs;
        central.push((k, lhs, rhs));
    }
    CombinatoricsReport {
        tuples,
        lem1_holds: lem1,
        lem2_holds: lem2,
        central,
        lem3_holds: lem3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::int;

    fn e(dim: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        v[i] = int(1);
        v
    }

    #[test]
    fn phi1_examples() {
        let x = JetSequence::tangent(e(4, 0), 3);
        assert_eq!(
            phi1(&x, 3),
            DiscMap::from_coefficients(2, 3, vec![(1, 0, vec![CScalar::one(), CScalar::zero()])])
        );
        let mut x = JetSequence::tangent(vec![Rational::zero(); 4], 3);
        x.jets[1] = e(4, 3);
        assert_eq!(
            phi1(&x, 3),
            DiscMap::from_coefficients(
                2,
                3,
                vec![(2, 0, vec![CScalar::zero(), CScalar::new(int(0), rat(1, 2))])]
            )
        );
        assert_eq!(phi2(&phi1(&x, 3)), x);
    }

    #[test]
    fn norm_tilde_two_terms() {
        let x = JetSequence::new(e(4, 0), vec![e(4, 1)]).unwrap();
        assert_eq!(x.norm_tilde(), int(3));
    }

    #[test]
    fn standard_structure_gives_holomorphic_disc() {
        let j = AlmostComplexStructure::standard(4, 5);
        assert!(a_of_j(&j).unwrap().is_zero());
        let x = JetSequence::tangent(e(4, 0), 5);
        let s = solve_disc_recursive(&j, &x, 5).unwrap();
        assert_eq!(s.gamma, phi1(&x, 5));
        assert!(s.residual_vanishes());
        let p = solve_disc_picard(&j, &x, 5, 10).unwrap();
        assert_eq!(p.gamma, s.gamma);
        assert_eq!(p.log.len(), 1);
    }

    #[test]
    fn tangency_of_simple_discs() {
        let hyp = Hypersurface::new(MultiSeries::var(4, 6, 1)).unwrap();
        // ζ ↦ ζ∂x₂ lies in {y₁ = 0}; ζ ↦ ζ∂x₁ sweeps the (x₁, y₁)-plane.
        let inside = phi1(&JetSequence::tangent(e(4, 2), 6), 6);
        assert_eq!(tangency_order(&hyp, &inside).unwrap(), Tangency::AtLeast(7));
        let across = phi1(&JetSequence::tangent(e(4, 0), 6), 6);
        assert_eq!(tangency_order(&hyp, &across).unwrap(), Tangency::Exact(1));
        let normal = phi1(&JetSequence::tangent(e(4, 1), 6), 6);
        assert_eq!(tangency_order(&hyp, &normal).unwrap(), Tangency::Exact(1));
    }

    #[test]
    fn c_r_of_simple_fields() {
        let half = rat(1, 2);
        assert_eq!(
            c_r_bound(&VectorField::coordinate(2, 3, 0), &half).unwrap(),
            int(1)
        );
        let x1e1 = VectorField::coordinate(2, 3, 0).scale(&MultiSeries::var(2, 3, 0));
        assert_eq!(c_r_bound(&x1e1, &half).unwrap(), rat(1, 2));
    }

    #[test]
    fn small_combinatorics() {
        let r = combinatorics_audit(4, 30);
        assert_eq!(r.tuples[0].1, 1);
        assert_eq!(r.tuples[3].1, 35);
        assert!(r.holds());
    }
}
