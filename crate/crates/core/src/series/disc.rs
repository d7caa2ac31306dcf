//! Maps from the disc, as series in (ζ, ζ̄).
//!
//! A map into ℝ²ⁿ ≅ ℂⁿ is stored as `n` complex components `z_j = x_j + i y_j`,
//! each a series in two variables: variable 0 is ζ and variable 1 is ζ̄.
//! The real components are recovered by `x_j = (z_j + z̄_j)/2` and
//! `y_j = (z_j − z̄_j)/(2i)`, where the bar swaps the exponents of ζ and ζ̄ and
//! conjugates coefficients.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::multi::MultiSeries;
use super::scalar::{factorial, rat, CScalar, Rational};
use crate::error::SeriesError;

pub const ZETA: usize = 0;
pub const ZETA_BAR: usize = 1;

/// Conjugate of a function of (ζ, ζ̄): swap exponents and conjugate coefficients.
pub fn conj_function(f: &MultiSeries) -> MultiSeries {
    assert_eq!(f.nvars(), 2);
    f.permute_vars(&[1, 0]).conj()
}

/// True if `f` is real on the slice ζ̄ = conj(ζ), i.e. `f_{l,k} = conj(f_{k,l})`.
pub fn is_real_on_slice(f: &MultiSeries) -> bool {
    conj_function(f) == *f
}

/// 𝒜-norm of a scalar series in (ζ, ζ̄): Σ (1+k)|f_{k,l}| with |c| = |re| + |im|.
pub fn norm_star(f: &MultiSeries) -> Rational {
    assert_eq!(f.nvars(), 2);
    f.terms()
        .map(|(m, c)| c.norm_l1() * Rational::from_integer((1 + m.exp(ZETA)).into()))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscMap {
    comps: Vec<MultiSeries>,
}

impl DiscMap {
    pub fn new(comps: Vec<MultiSeries>) -> Self {
        assert!(
            comps.iter().all(|c| c.nvars() == 2),
            "disc components are series in (ζ, ζ̄)"
        );
        let acc = comps.iter().map(|c| c.accuracy()).min().unwrap_or(0);
        DiscMap {
            comps: comps.into_iter().map(|c| c.truncate(acc)).collect(),
        }
    }

    pub fn zero(n: usize, accuracy: u32) -> Self {
        DiscMap {
            comps: vec![MultiSeries::zero(2, accuracy); n],
        }
    }

    /// The map ζ ↦ Σ_{k,l} c_{k,l} ζ^k ζ̄^l from (k, l, vector in ℂⁿ) triples.
    pub fn from_coefficients(
        n: usize,
        accuracy: u32,
        coeffs: impl IntoIterator<Item = (u32, u32, Vec<CScalar>)>,
    ) -> Self {
        let mut terms: Vec<Vec<(Vec<u32>, CScalar)>> = vec![Vec::new(); n];
        for (k, l, v) in coeffs {
            assert_eq!(v.len(), n);
            for (j, c) in v.into_iter().enumerate() {
                terms[j].push((vec![k, l], c));
            }
        }
        DiscMap {
            comps: terms
                .into_iter()
                .map(|t| MultiSeries::from_exponent_terms(2, accuracy, t))
                .collect(),
        }
    }

    /// Builds the map from its 2n real components (each complexified in ζ, ζ̄).
    pub fn from_real(real: &[MultiSeries]) -> Self {
        assert_eq!(real.len() % 2, 0);
        let i = CScalar::i();
        DiscMap::new(real.chunks(2).map(|p| &p[0] + &p[1].scale(&i)).collect())
    }

    /// The 2n real components, complexified in (ζ, ζ̄).
    pub fn to_real(&self) -> Vec<MultiSeries> {
        let half = CScalar::real(rat(1, 2));
        let minus_half_i = CScalar::new(Rational::zero(), rat(-1, 2));
        let mut out = Vec::with_capacity(2 * self.comps.len());
        for z in &self.comps {
            let zb = conj_function(z);
            out.push((z + &zb).scale(&half));
            out.push((z - &zb).scale(&minus_half_i));
        }
        out
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

    pub fn component(&self, j: usize) -> &MultiSeries {
        &self.comps[j]
    }

    pub fn coefficient(&self, k: u32, l: u32) -> Vec<CScalar> {
        self.comps.iter().map(|c| c.coeff(&[k, l])).collect()
    }

    pub fn valuation(&self) -> Option<u32> {
        self.comps.iter().filter_map(|c| c.valuation()).min()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn map(&self, f: impl Fn(&MultiSeries) -> MultiSeries) -> DiscMap {
        DiscMap::new(self.comps.iter().map(f).collect())
    }

    /// Same stored terms, declared exact through `accuracy`.
    pub fn with_accuracy(&self, accuracy: u32) -> DiscMap {
        DiscMap {
            comps: self
                .comps
                .iter()
                .map(|c| c.clone().with_accuracy(accuracy))
                .collect(),
        }
    }

    pub fn truncate(&self, accuracy: u32) -> DiscMap {
        self.map(|c| c.truncate(accuracy))
    }

    pub fn add(&self, other: &DiscMap) -> DiscMap {
        assert_eq!(self.dim(), other.dim());
        DiscMap::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &DiscMap) -> DiscMap {
        assert_eq!(self.dim(), other.dim());
        DiscMap::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Componentwise conjugate map ζ ↦ conj(γ(ζ)).
    pub fn conj(&self) -> DiscMap {
        self.map(conj_function)
    }

    /// ∂/∂ζ̄, componentwise; accuracy drops by one.
    pub fn ddbar(&self) -> DiscMap {
        self.map(|c| c.diff(ZETA_BAR))
    }

    /// ∂/∂ζ, componentwise; accuracy drops by one.
    pub fn dzeta(&self) -> DiscMap {
        self.map(|c| c.diff(ZETA))
    }

    /// Primitive in ζ̄ vanishing on ζ̄ = 0: u_{k,l} ζ^k ζ̄^l ↦ u_{k,l}/(l+1) ζ^k ζ̄^{l+1}.
    /// Stored terms are kept; the accuracy is unchanged because the top-degree
    /// input terms only determine part of the next degree.
    pub fn t_op(&self) -> DiscMap {
        self.map(|c| c.integrate(ZETA_BAR).truncate(c.accuracy()))
    }

    /// ∂ⁿ/∂xⁿ at 0 along the real axis, n!·Σ_{k+l=n} f_{k,l}, as a real 2n-vector.
    pub fn jet(&self, n: u32) -> Result<Vec<Rational>, SeriesError> {
        if n > self.accuracy() {
            return Err(SeriesError::OrderExceedsAccuracy {
                order: n,
                accuracy: self.accuracy(),
            });
        }
        let f = factorial(n);
        let mut out = Vec::with_capacity(2 * self.dim());
        for c in &self.comps {
            let mut s = CScalar::zero();
            for k in 0..=n {
                s += &c.coeff(&[k, n - k]);
            }
            let s = s.scale(&f);
            out.push(s.re);
            out.push(s.im);
        }
        Ok(out)
    }

    /// Ω-norm Σ (1+k+l+kl)|f_{k,l}| with the ℓ¹ norm of the realified coefficient vector.
    pub fn norm_omega(&self) -> Rational {
        self.weighted_norm(|k, l| (1 + k) * (1 + l))
    }

    /// 𝒜-norm Σ (1+k)|f_{k,l}|.
    pub fn norm_star(&self) -> Rational {
        self.weighted_norm(|k, _| 1 + k)
    }

    fn weighted_norm(&self, w: impl Fn(u32, u32) -> u32) -> Rational {
        let mut total = Rational::zero();
        for c in &self.comps {
            for (m, v) in c.terms() {
                total +=
                    v.norm_l1() * Rational::from_integer(w(m.exp(ZETA), m.exp(ZETA_BAR)).into());
            }
        }
        total
    }

    /// γ(λζ) for real λ: f_{k,l} ↦ λ^{k+l} f_{k,l}.
    pub fn rescale(&self, lambda: &Rational) -> DiscMap {
        self.map(|c| {
            let terms = c.terms().map(|(m, v)| {
                let mut p = Rational::one();
                for _ in 0..m.degree() {
                    p *= lambda;
                }
                (m.clone(), v.scale(&p))
            });
            MultiSeries::from_terms(2, c.accuracy(), terms)
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "accuracy": self.accuracy(),
            "components": self.comps.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::int;

    fn e1(n: usize) -> Vec<CScalar> {
        let mut v = vec![CScalar::zero(); n];
        v[0] = CScalar::one();
        v
    }

    #[test]
    fn dbar_of_basic_maps() {
        let hol = DiscMap::from_coefficients(2, 4, vec![(1, 0, e1(2))]);
        assert!(hol.ddbar().is_zero());
        let anti = DiscMap::from_coefficients(2, 4, vec![(0, 1, e1(2))]);
        assert_eq!(
            anti.ddbar(),
            DiscMap::from_coefficients(2, 3, vec![(0, 0, e1(2))])
        );
    }

    #[test]
    fn primitive_rule() {
        let u = DiscMap::from_coefficients(1, 5, vec![(0, 0, e1(1))]);
        assert_eq!(
            u.t_op(),
            DiscMap::from_coefficients(1, 5, vec![(0, 1, e1(1))])
        );
        let u = DiscMap::from_coefficients(1, 6, vec![(2, 3, e1(1))]);
        let expected =
            DiscMap::from_coefficients(1, 6, vec![(2, 4, vec![CScalar::real(rat(1, 4))])]);
        assert_eq!(u.t_op(), expected);
    }

    #[test]
    fn jets_of_simple_maps() {
        let f = DiscMap::from_coefficients(2, 3, vec![(1, 0, e1(2))]);
        assert_eq!(f.jet(1).unwrap(), vec![int(1), int(0), int(0), int(0)]);
        let g = DiscMap::from_coefficients(2, 3, vec![(1, 1, e1(2))]);
        assert_eq!(g.jet(2).unwrap(), vec![int(2), int(0), int(0), int(0)]);
        assert!(g.jet(4).is_err());
    }

    #[test]
    fn norms_of_simple_maps() {
        let f = DiscMap::from_coefficients(1, 3, vec![(1, 1, e1(1))]);
        assert_eq!(f.norm_omega(), int(4));
        assert_eq!(f.norm_star(), int(2));
    }

    #[test]
    fn real_components_round_trip() {
        let f = DiscMap::from_coefficients(
            2,
            3,
            vec![
                (1, 0, vec![CScalar::new(int(1), int(2)), CScalar::zero()]),
                (
                    0,
                    2,
                    vec![CScalar::zero(), CScalar::new(rat(1, 3), int(-1))],
                ),
            ],
        );
        let real = f.to_real();
        assert!(real.iter().all(is_real_on_slice));
        assert_eq!(DiscMap::from_real(&real), f);
    }
}
