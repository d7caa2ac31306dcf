//! Seeded random inputs for audits. ChaCha8 seeded from a u64; the same seed
//! always yields the same data.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Frame, VectorField};
use crate::series::scalar::rat;
use crate::series::{CScalar, DiscMap, MultiSeries, Rational};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// p/q with |p| ≤ num and 1 ≤ q ≤ den.
    pub fn rational(&mut self, num: i64, den: i64) -> Rational {
        rat(self.rng.gen_range(-num..=num), self.rng.gen_range(1..=den))
    }

    pub fn nonzero_rational(&mut self, num: i64, den: i64) -> Rational {
        loop {
            let r = self.rational(num, den);
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn complex(&mut self, num: i64, den: i64) -> CScalar {
        CScalar::new(self.rational(num, den), self.rational(num, den))
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn exponents(&mut self, nvars: usize, degree: u32) -> Vec<u32> {
        let mut e = vec![0u32; nvars];
        for _ in 0..degree {
            e[self.below(nvars)] += 1;
        }
        e
    }

    /// Sparse series with `terms` random monomials of degree in [min_deg, max_deg].
    pub fn series(
        &mut self,
        nvars: usize,
        accuracy: u32,
        min_deg: u32,
        max_deg: u32,
        terms: usize,
        real: bool,
    ) -> MultiSeries {
        let max_deg = max_deg.min(accuracy);
        let mut out = Vec::with_capacity(terms);
        if min_deg <= max_deg {
            for _ in 0..terms {
                let d = self.rng.gen_range(min_deg..=max_deg);
                let e = self.exponents(nvars, d);
                let c = if real {
                    CScalar::real(self.rational(3, 4))
                } else {
                    self.complex(3, 4)
                };
                out.push((e, c));
            }
        }
        MultiSeries::from_exponent_terms(nvars, accuracy, out)
    }

    pub fn real_series(
        &mut self,
        nvars: usize,
        accuracy: u32,
        min_deg: u32,
        max_deg: u32,
        terms: usize,
    ) -> MultiSeries {
        self.series(nvars, accuracy, min_deg, max_deg, terms, true)
    }

    /// Real field with random polynomial components of valuation ≥ `min_deg`.
    pub fn field(
        &mut self,
        dim: usize,
        accuracy: u32,
        min_deg: u32,
        max_deg: u32,
        terms: usize,
    ) -> VectorField {
        VectorField::new(
            (0..dim)
                .map(|_| self.real_series(dim, accuracy, min_deg, max_deg, terms))
                .collect(),
        )
    }

    /// Random map of the disc with n complex components, real-slice form automatic.
    pub fn disc(
        &mut self,
        n: usize,
        accuracy: u32,
        min_deg: u32,
        max_deg: u32,
        terms: usize,
    ) -> DiscMap {
        DiscMap::new(
            (0..n)
                .map(|_| self.series(2, accuracy, min_deg, max_deg, terms, false))
                .collect(),
        )
    }

    pub fn real_vector(&mut self, dim: usize, num: i64, den: i64) -> Vec<Rational> {
        (0..dim).map(|_| self.rational(num, den)).collect()
    }

    /// Coordinate frame plus a random perturbation vanishing at 0.
    pub fn perturbed_frame(
        &mut self,
        dim: usize,
        accuracy: u32,
        max_deg: u32,
        terms: usize,
    ) -> Frame {
        let fields = (0..dim)
            .map(|i| {
                VectorField::coordinate(dim, accuracy, i)
                    .add(&self.field(dim, accuracy, 1, max_deg, terms))
            })
            .collect();
        Frame::with_default_names(fields).expect("perturbation vanishes at the origin")
    }

    /// Frame on ℝ^dim with L₁ = ∂x₁, L₂ = ∂y₁ and, for i ≥ 3, L_i = L'_i + L'_i(g)∂x₁,
    /// where L'_i is ∂ plus a random perturbation in the x₂..y_n directions
    /// and g has valuation ≥ 2. Coefficients do not depend on x₁, so L₃..L_dim
    /// span an involutive, J-invariant distribution tangent to {y₁ = 0}.
    pub fn levi_flat_frame(
        &mut self,
        dim: usize,
        accuracy: u32,
        max_deg: u32,
        terms: usize,
    ) -> Frame {
        let target = accuracy;
        let accuracy = accuracy + 1;
        let no_x1 = |f: MultiSeries| -> MultiSeries {
            MultiSeries::from_exponent_terms(
                dim,
                accuracy,
                f.terms()
                    .filter(|(e, _)| e.exp(0) == 0)
                    .map(|(e, c)| ((0..dim).map(|i| e.exp(i)).collect::<Vec<u32>>(), c.clone()))
                    .collect::<Vec<_>>(),
            )
        };
        let g = no_x1(self.real_series(dim, accuracy, 2, max_deg + 1, terms));
        let mut fields = vec![
            VectorField::coordinate(dim, accuracy, 0),
            VectorField::coordinate(dim, accuracy, 1),
        ];
        for i in 2..dim {
            let mut comps = vec![MultiSeries::zero(dim, accuracy); dim];
            for (k, c) in comps.iter_mut().enumerate().skip(2) {
                *c = no_x1(self.real_series(dim, accuracy, 1, max_deg, terms.div_ceil(dim)));
                if k == i {
                    *c = &*c + &MultiSeries::one(dim, accuracy);
                }
            }
            let base = VectorField::new(comps);
            let lift = base.apply(&g);
            fields.push(base.add(&VectorField::coordinate(dim, accuracy, 0).scale(&lift)));
        }
        let fields = fields.into_iter().map(|f| f.truncate(target)).collect();
        Frame::with_default_names(fields).expect("perturbation vanishes at the origin")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a = Sampler::new(7).real_series(3, 4, 0, 4, 6);
        let b = Sampler::new(7).real_series(3, 4, 0, 4, 6);
        assert_eq!(a, b);
        let c = Sampler::new(8).real_series(3, 4, 0, 4, 6);
        assert_ne!(a, c);
    }
}
