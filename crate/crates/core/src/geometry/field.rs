//! Vector fields on ℝ²ⁿ with coordinates ordered (x₁, y₁, …, xₙ, yₙ).

use std::fmt;

use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result, SeriesError};
use crate::series::{CScalar, MultiSeries, Rational};

/// Coordinate names `x1, y1, x2, y2, …`.
pub fn var_names(dim: usize) -> Vec<String> {
    (0..dim)
        .map(|i| format!("{}{}", if i % 2 == 0 { "x" } else { "y" }, i / 2 + 1))
        .collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    comps: Vec<MultiSeries>,
}

impl VectorField {
    pub fn new(comps: Vec<MultiSeries>) -> Self {
        let dim = comps.len();
        assert!(
            comps.iter().all(|c| c.nvars() == dim),
            "field components must be series in {dim} variables"
        );
        let acc = comps.iter().map(|c| c.accuracy()).min().unwrap_or(0);
        VectorField {
            comps: comps.into_iter().map(|c| c.truncate(acc)).collect(),
        }
    }

    pub fn try_new(comps: Vec<MultiSeries>) -> Result<Self> {
        let dim = comps.len();
        if !dim.is_multiple_of(2) {
            return Err(Error::Input(format!("field has odd dimension {dim}")));
        }
        if let Some(c) = comps.iter().find(|c| c.nvars() != dim) {
            return Err(SeriesError::VarCountMismatch {
                left: dim,
                right: c.nvars(),
            }
            .into());
        }
        if !comps.iter().all(|c| c.is_real()) {
            return Err(Error::Input("vector field components must be real".into()));
        }
        Ok(VectorField::new(comps))
    }

    pub fn zero(dim: usize, accuracy: u32) -> Self {
        VectorField {
            comps: vec![MultiSeries::zero(dim, accuracy); dim],
        }
    }

    /// The coordinate field ∂/∂(variable i).
    pub fn coordinate(dim: usize, accuracy: u32, i: usize) -> Self {
        let mut f = VectorField::zero(dim, accuracy);
        f.comps[i] = MultiSeries::constant(dim, accuracy, CScalar::from_int(1));
        f
    }

    pub fn constant(v: &[Rational], accuracy: u32) -> Self {
        let dim = v.len();
        VectorField {
            comps: v
                .iter()
                .map(|c| MultiSeries::constant(dim, accuracy, CScalar::real(c.clone())))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn accuracy(&self) -> u32 {
        self.comps.first().map(|c| c.accuracy()).unwrap_or(0)
    }

    pub fn components(&self) -> &[MultiSeries] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &MultiSeries {
        &self.comps[i]
    }

    pub fn is_real(&self) -> bool {
        self.comps.iter().all(|c| c.is_real())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Value at the origin as a real vector.
    pub fn at_origin(&self) -> Vec<Rational> {
        self.comps.iter().map(|c| c.constant_term().re).collect()
    }

    pub fn at_origin_complex(&self) -> Vec<CScalar> {
        self.comps.iter().map(|c| c.constant_term()).collect()
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.comps.iter().all(|c| c.constant_term().is_zero())
    }

    pub fn map(&self, f: impl Fn(&MultiSeries) -> MultiSeries) -> VectorField {
        VectorField::new(self.comps.iter().map(f).collect())
    }

    pub fn truncate(&self, accuracy: u32) -> VectorField {
        self.map(|c| c.truncate(accuracy))
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> VectorField {
        self.map(|c| -c)
    }

    pub fn scale_const(&self, r: &Rational) -> VectorField {
        self.map(|c| c.scale_rational(r))
    }

    /// Pointwise product with a scalar function.
    pub fn scale(&self, f: &MultiSeries) -> VectorField {
        self.map(|c| {
            if c.is_zero() {
                c.truncate(f.accuracy())
            } else {
                c * f
            }
        })
    }

    /// Directional derivative X(f) = Σ Xᵢ ∂ᵢf.
    pub fn apply(&self, f: &MultiSeries) -> MultiSeries {
        assert_eq!(f.nvars(), self.dim());
        let acc = self.accuracy().min(f.accuracy().saturating_sub(1));
        let mut out = MultiSeries::zero(self.dim(), acc);
        if f.accuracy() == 0 {
            return out;
        }
        for (i, xi) in self.comps.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let d = f.diff(i);
            if d.is_zero() {
                continue;
            }
            out = &out + &xi.mul_truncated(&d, acc);
        }
        out
    }

    /// Flat connection: ∇_X Y, componentwise directional derivative.
    pub fn nabla(&self, y: &VectorField) -> VectorField {
        VectorField::new(y.comps.iter().map(|c| self.apply(c)).collect())
    }

    /// [X, Y] = ∇_X Y − ∇_Y X.
    pub fn bracket(&self, y: &VectorField) -> VectorField {
        self.nabla(y).sub(&y.nabla(self))
    }

    /// Substitutes series for the coordinates in every component.
    pub fn compose(&self, args: &[MultiSeries]) -> std::result::Result<VectorField, SeriesError> {
        Ok(VectorField::new(
            self.comps
                .iter()
                .map(|c| c.compose(args))
                .collect::<std::result::Result<_, _>>()?,
        ))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.comps.iter().map(|c| c.to_json()).collect())
    }

    pub fn from_json(v: &Value) -> Result<VectorField> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Input("vector field must be an array of series".into()))?;
        let comps = arr
            .iter()
            .map(MultiSeries::from_json)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        VectorField::try_new(comps)
    }
}

pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    x.bracket(y)
}

pub fn nabla(x: &VectorField, y: &VectorField) -> VectorField {
    x.nabla(y)
}

/// Something the connection can differentiate: a function or a vector field.
pub trait Differentiable: Clone {
    fn accuracy(&self) -> u32;
    fn derive(&self, along: &VectorField) -> Self;
}

impl Differentiable for MultiSeries {
    fn accuracy(&self) -> u32 {
        MultiSeries::accuracy(self)
    }
    fn derive(&self, along: &VectorField) -> Self {
        along.apply(self)
    }
}

impl Differentiable for VectorField {
    fn accuracy(&self) -> u32 {
        VectorField::accuracy(self)
    }
    fn derive(&self, along: &VectorField) -> Self {
        along.nabla(self)
    }
}

/// D_X^{k,l} t = JX·(…(JX·(X·(…(X·t))))) with X applied k times innermost and
/// JX applied l times outermost.
pub fn iterated_d<T: Differentiable>(
    x: &VectorField,
    jx: &VectorField,
    k: u32,
    l: u32,
    target: &T,
) -> Result<T> {
    if target.accuracy() < k + l {
        return Err(Error::InsufficientAccuracy {
            needed: k + l,
            have: target.accuracy(),
        });
    }
    let mut t = target.clone();
    for _ in 0..k {
        t = t.derive(x);
    }
    for _ in 0..l {
        t = t.derive(jx);
    }
    Ok(t)
}

pub struct FieldDisplay<'a>(&'a VectorField);

impl fmt::Display for FieldDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = var_names(self.0.dim());
        let mut first = true;
        for (i, c) in self.0.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})∂{}", c.display_with(&names), names[i])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&FieldDisplay(self), f)
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&FieldDisplay(self), f)
    }
}

/// Values at the origin of a list of fields, as real column vectors.
pub fn origin_vectors(fields: &[VectorField]) -> Vec<Vec<Rational>> {
    fields.iter().map(|f| f.at_origin()).collect()
}

pub fn real_vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize) -> MultiSeries {
        MultiSeries::var(4, 4, i)
    }

    #[test]
    fn nabla_examples() {
        let dx1 = VectorField::coordinate(4, 4, 0);
        let c = VectorField::coordinate(4, 4, 2);
        assert!(dx1.nabla(&c).is_zero());
        // x1 e2 differentiated along ∂x1 is e2
        let f = VectorField::coordinate(4, 4, 1).scale(&var(0));
        assert_eq!(dx1.nabla(&f), VectorField::coordinate(4, 3, 1));
    }

    #[test]
    fn bracket_is_torsion_of_nabla() {
        let x = VectorField::new(vec![
            var(1),
            var(0) * var(2),
            MultiSeries::one(4, 4),
            var(3) * var(3),
        ]);
        let y = VectorField::new(vec![
            var(2),
            MultiSeries::zero(4, 4),
            var(0) * var(1),
            var(0),
        ]);
        assert_eq!(x.bracket(&y), x.nabla(&y).sub(&y.nabla(&x)));
        assert!(x.bracket(&x).is_zero());
        assert_eq!(x.bracket(&y), y.bracket(&x).neg());
    }

    #[test]
    fn iterated_d_order() {
        let x = VectorField::new(vec![
            MultiSeries::one(4, 4),
            var(0),
            MultiSeries::zero(4, 4),
            var(2),
        ]);
        let jx = VectorField::new(vec![
            var(1),
            MultiSeries::one(4, 4),
            var(3),
            MultiSeries::zero(4, 4),
        ]);
        let phi = var(0) * var(1) * var(3);
        let d = iterated_d(&x, &jx, 1, 1, &phi).unwrap();
        assert_eq!(d, jx.apply(&x.apply(&phi)));
        assert_eq!(iterated_d(&x, &jx, 0, 0, &phi).unwrap(), phi);
        assert!(iterated_d(&x, &jx, 3, 2, &phi).is_err());
    }
}
