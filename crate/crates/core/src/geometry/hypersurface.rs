//! Real hypersurfaces {φ = 0}, complex tangency and the Levi form.

use num_traits::Zero;
use serde_json::{json, Value};

use super::field::VectorField;
use super::structure::AlmostComplexStructure;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, Inertia};
use crate::series::json::scalar_json;
use crate::series::scalar::rational_to_string;
use crate::series::{CScalar, MultiSeries, Rational};

/// Germ of a hypersurface at 0 together with its graph normalization: the
/// lowest-index coordinate `u` with ∂φ/∂u(0) ≠ 0 is solved for, u = h(others).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    phi: MultiSeries,
    solved_var: usize,
    graph: MultiSeries,
}

impl Hypersurface {
    pub fn new(phi: MultiSeries) -> Result<Self> {
        let dim = phi.nvars();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::Input(format!(
                "defining function must have an even number of variables, got {dim}"
            )));
        }
        if !phi.is_real() {
            return Err(Error::Input("defining function must be real".into()));
        }
        if !phi.constant_term().is_zero() {
            return Err(Error::Input(
                "the origin must lie on the hypersurface".into(),
            ));
        }
        if phi.accuracy() == 0 {
            return Err(Error::InsufficientAccuracy { needed: 1, have: 0 });
        }
        let solved_var = (0..dim)
            .find(|&i| !phi.diff(i).constant_term().is_zero())
            .ok_or(Error::SingularHypersurface)?;
        let c = phi.diff(solved_var).constant_term();
        let c_inv = c.inv().unwrap();
        let mut graph = MultiSeries::zero(dim, phi.accuracy());
        for _ in 0..=phi.accuracy() + 1 {
            let r = phi.substitute(solved_var, &graph)?;
            if r.is_zero() {
                break;
            }
            graph = &graph - &r.scale(&c_inv);
        }
        Ok(Hypersurface {
            phi,
            solved_var,
            graph,
        })
    }

    pub fn phi(&self) -> &MultiSeries {
        &self.phi
    }

    pub fn dim(&self) -> usize {
        self.phi.nvars()
    }

    pub fn accuracy(&self) -> u32 {
        self.phi.accuracy()
    }

    pub fn solved_var(&self) -> usize {
        self.solved_var
    }

    pub fn graph(&self) -> &MultiSeries {
        &self.graph
    }

    pub fn gradient_at_origin(&self) -> Vec<Rational> {
        (0..self.dim())
            .map(|i| self.phi.diff(i).constant_term().re)
            .collect()
    }

    /// dφ(Y) = Y(φ).
    pub fn dphi(&self, y: &VectorField) -> MultiSeries {
        y.apply(&self.phi)
    }

    /// Restriction of a function to the hypersurface through the graph.
    pub fn restrict(&self, f: &MultiSeries) -> MultiSeries {
        f.substitute(self.solved_var, &self.graph)
            .expect("graph has zero constant term")
    }

    pub fn scaled(&self, r: &Rational) -> Result<Hypersurface> {
        Hypersurface::new(self.phi.scale_rational(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyCheck {
    pub member: bool,
    /// Which of dφ(Y), dφ(JY) fails to vanish on M, with its restriction.
    pub witness: Option<(String, MultiSeries)>,
}

/// Y ∈ T^J M: both dφ(Y) and dφ(JY) vanish identically on M up to accuracy.
pub fn in_tjm(hyp: &Hypersurface, j: &AlmostComplexStructure, y: &VectorField) -> TangencyCheck {
    let r = hyp.restrict(&hyp.dphi(y));
    if !r.is_zero() {
        return TangencyCheck {
            member: false,
            witness: Some(("dphi(Y)".into(), r)),
        };
    }
    let r = hyp.restrict(&hyp.dphi(&j.apply(y)));
    if !r.is_zero() {
        return TangencyCheck {
            member: false,
            witness: Some(("dphi(JY)".into(), r)),
        };
    }
    TangencyCheck {
        member: true,
        witness: None,
    }
}

fn check_tangent_at_origin(
    hyp: &Hypersurface,
    j: &AlmostComplexStructure,
    x: &VectorField,
    label: &str,
) -> Result<()> {
    for (what, v) in [("", x.clone()), ("J", j.apply(x))] {
        let val = hyp.dphi(&v).constant_term();
        if !val.is_zero() {
            return Err(Error::NotComplexTangent {
                field: format!("{what}{label}"),
                residue: val.to_string(),
            });
        }
    }
    Ok(())
}

/// ℒ(X) = dφ(J[X, JX]).
pub fn levi_form(
    hyp: &Hypersurface,
    j: &AlmostComplexStructure,
    x: &VectorField,
) -> Result<MultiSeries> {
    check_tangent_at_origin(hyp, j, x, "X")?;
    let jx = j.apply(x);
    Ok(hyp.dphi(&j.apply(&x.bracket(&jx))))
}

/// ℒ̂(X, Y) = dφ(J[X, JY] + J[Y, JX]) + i·dφ(J[X, Y] + J[JX, JY]).
/// Antilinear in X and linear in Y (with J acting as i), and ℒ̂(X, X) = 2ℒ(X).
pub fn levi_polar(
    hyp: &Hypersurface,
    j: &AlmostComplexStructure,
    x: &VectorField,
    y: &VectorField,
) -> Result<MultiSeries> {
    check_tangent_at_origin(hyp, j, x, "X")?;
    check_tangent_at_origin(hyp, j, y, "Y")?;
    let jx = j.apply(x);
    let jy = j.apply(y);
    let re = hyp.dphi(&j.apply(&x.bracket(&jy).add(&y.bracket(&jx))));
    let im = hyp.dphi(&j.apply(&x.bracket(y).add(&jx.bracket(&jy))));
    Ok(&re + &im.scale(&CScalar::i()))
}

#[derive(Clone, Debug)]
pub struct LeviKernel {
    /// H_ab = ℒ̂(v_a, v_b)(0).
    pub matrix: CMatrix,
    /// Kernel basis as complex coefficient vectors in the supplied basis.
    pub kernel_coefficients: Vec<Vec<CScalar>>,
    /// The same kernel vectors as real vectors at 0: Σ Re(d_b) v_b(0) + Im(d_b) J v_b(0).
    pub kernel_vectors: Vec<Vec<Rational>>,
    pub inertia: Inertia,
    pub psd: bool,
}

impl LeviKernel {
    pub fn to_json(&self) -> Value {
        json!({
            "matrix": self.matrix.iter().map(|r| r.iter().map(scalar_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "kernel_coefficients": self.kernel_coefficients.iter().map(|r| r.iter().map(scalar_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "kernel_vectors": self.kernel_vectors.iter().map(|r| r.iter().map(rational_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "inertia": {"positive": self.inertia.positive, "negative": self.inertia.negative, "zero": self.inertia.zero},
            "psd": self.psd,
        })
    }
}

/// Hermitian polar-form matrix at 0 on a basis of T^J_0 M, its kernel over
/// ℚ(i) and its inertia.
pub fn levi_kernel_at(
    hyp: &Hypersurface,
    j: &AlmostComplexStructure,
    basis: &[VectorField],
) -> Result<LeviKernel> {
    let dim = hyp.dim();
    for (i, v) in basis.iter().enumerate() {
        check_tangent_at_origin(hyp, j, v, &format!("basis[{i}]"))?;
    }
    let j0 = j.at_origin();
    let mut real_span: Vec<Vec<CScalar>> = Vec::new();
    for v in basis {
        let v0 = v.at_origin_complex();
        real_span.push(linalg::mat_vec(&j0, &v0));
        real_span.push(v0);
    }
    let as_rows: CMatrix = (0..dim)
        .map(|r| real_span.iter().map(|c| c[r].clone()).collect())
        .collect();
    if basis.len() != dim / 2 - 1 || linalg::rank(&as_rows) != dim - 2 {
        return Err(Error::Precondition(format!(
            "basis of {} fields does not span the complex tangent space (complex dimension {})",
            basis.len(),
            dim / 2 - 1
        )));
    }
    let m = basis.len();
    let mut h = vec![vec![CScalar::zero(); m]; m];
    for a in 0..m {
        for b in a..m {
            let v = levi_polar(hyp, j, &basis[a], &basis[b])?.constant_term();
            h[b][a] = v.conj();
            h[a][b] = v;
        }
    }
    let kernel_coefficients = linalg::nullspace(&h);
    let kernel_vectors = kernel_coefficients
        .iter()
        .map(|d| {
            let mut out = vec![Rational::zero(); dim];
            for (b, db) in d.iter().enumerate() {
                let v0 = basis[b].at_origin();
                let jv0: Vec<Rational> = linalg::mat_vec(&j0, &basis[b].at_origin_complex())
                    .into_iter()
                    .map(|c| c.re)
                    .collect();
                for r in 0..dim {
                    out[r] += &db.re * &v0[r] + &db.im * &jv0[r];
                }
            }
            out
        })
        .collect();
    let inertia = linalg::hermitian_inertia(&h);
    let psd = inertia.is_psd();
    Ok(LeviKernel {
        matrix: h,
        kernel_coefficients,
        kernel_vectors,
        inertia,
        psd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::int;

    fn siegel(acc: u32) -> Hypersurface {
        // φ = y1 − x2² − y2² in ℝ⁴
        let v = |i| MultiSeries::var(4, acc, i);
        let phi = &(&v(1) - &(&v(2) * &v(2))) - &(&v(3) * &v(3));
        Hypersurface::new(phi).unwrap()
    }

    #[test]
    fn graph_solves_defining_function() {
        let hyp = siegel(5);
        assert_eq!(hyp.solved_var(), 1);
        assert!(hyp.restrict(hyp.phi()).is_zero());
        // a less trivial φ: y1 + x1 y1 − x2²
        let v = |i| MultiSeries::var(4, 6, i);
        let phi = &(&v(1) + &(&v(0) * &v(1))) - &(&v(2) * &v(2));
        let hyp = Hypersurface::new(phi).unwrap();
        assert!(hyp.restrict(hyp.phi()).is_zero());
    }

    #[test]
    fn normal_direction_is_not_complex_tangent() {
        let hyp = Hypersurface::new(MultiSeries::var(4, 3, 1)).unwrap();
        let j = AlmostComplexStructure::standard(4, 3);
        let check = in_tjm(&hyp, &j, &VectorField::coordinate(4, 3, 1));
        assert!(!check.member);
        assert_eq!(
            check.witness.unwrap().1.constant_term(),
            CScalar::from_int(1)
        );
        assert!(in_tjm(&hyp, &j, &VectorField::coordinate(4, 3, 2)).member);
    }

    #[test]
    fn strictly_convex_toy_has_trivial_kernel() {
        let hyp = siegel(4);
        let j = AlmostComplexStructure::standard(4, 4);
        // Y = ∂x2 + 2y2∂x1 + 2x2∂y1 is complex tangent along M.
        let v = |i| MultiSeries::var(4, 4, i);
        let y = VectorField::new(vec![
            v(3).scale_rational(&int(2)),
            v(2).scale_rational(&int(2)),
            MultiSeries::one(4, 4),
            MultiSeries::zero(4, 4),
        ]);
        assert!(in_tjm(&hyp, &j, &y).member);
        assert_eq!(
            levi_form(&hyp, &j, &y).unwrap().constant_term(),
            CScalar::from_int(-4)
        );
        let k = levi_kernel_at(&hyp, &j, std::slice::from_ref(&y)).unwrap();
        assert!(k.kernel_coefficients.is_empty());
        assert_eq!(k.matrix, vec![vec![CScalar::from_int(-8)]]);
        assert!(!k.psd);
        let flipped = levi_kernel_at(&hyp.scaled(&int(-1)).unwrap(), &j, &[y]).unwrap();
        assert!(flipped.psd);
        assert!(flipped.kernel_coefficients.is_empty());
    }
}
