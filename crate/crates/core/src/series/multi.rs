//! Sparse truncated multivariate power series with exact coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::scalar::{CScalar, Rational};
use crate::error::SeriesError;

/// Exponent multi-index. Ordered graded-lexicographically: total degree first,
/// then the exponent of the first variable descending, and so on, so that
/// `1 < x < y < x² < xy < y²`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn new(exps: &[u32]) -> Self {
        let exps: SmallVec<[u16; 8]> = exps.iter().map(|&e| e as u16).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.exps.iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    /// Lowers exponent `i` by one; `None` if it is already zero.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.degree -= 1;
        Some(m)
    }

    pub fn raise(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.degree = m.degree - m.exps[i] as u32 + e;
        m.exps[i] = e as u16;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// A formal power series in `nvars` variables whose coefficients are trusted
/// up to total degree `accuracy`. Nothing above `accuracy` is stored and zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSeries {
    nvars: usize,
    accuracy: u32,
    terms: BTreeMap<Monomial, CScalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl MultiSeries {
    pub fn zero(nvars: usize, accuracy: u32) -> Self {
        MultiSeries {
            nvars,
            accuracy,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, accuracy: u32, c: CScalar) -> Self {
        let mut s = MultiSeries::zero(nvars, accuracy);
        if !c.is_zero() {
            s.terms.insert(Monomial::one(nvars), c);
        }
        s
    }

    pub fn one(nvars: usize, accuracy: u32) -> Self {
        MultiSeries::constant(nvars, accuracy, CScalar::one())
    }

    pub fn var(nvars: usize, accuracy: u32, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut s = MultiSeries::zero(nvars, accuracy);
        if accuracy >= 1 {
            s.terms.insert(Monomial::var(nvars, i), CScalar::one());
        }
        s
    }

    pub fn monomial(nvars: usize, accuracy: u32, exps: &[u32], c: CScalar) -> Self {
        assert_eq!(exps.len(), nvars);
        MultiSeries::from_terms(nvars, accuracy, std::iter::once((Monomial::new(exps), c)))
    }

    /// Builds a series from (monomial, coefficient) pairs, summing repeats and
    /// dropping zeros and anything above `accuracy`.
    pub fn from_terms<I>(nvars: usize, accuracy: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, CScalar)>,
    {
        let mut map: BTreeMap<Monomial, CScalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            if m.degree() > accuracy || c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        MultiSeries {
            nvars,
            accuracy,
            terms: map,
        }
    }

    pub fn from_exponent_terms<I>(nvars: usize, accuracy: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, CScalar)>,
    {
        MultiSeries::from_terms(
            nvars,
            accuracy,
            terms.into_iter().map(|(e, c)| (Monomial::new(&e), c)),
        )
    }

    fn from_hashmap(nvars: usize, accuracy: u32, acc: HashMap<Monomial, CScalar>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiSeries {
            nvars,
            accuracy,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn accuracy(&self) -> u32 {
        self.accuracy
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if every coefficient up to the accuracy vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> CScalar {
        self.terms
            .get(&Monomial::new(exps))
            .cloned()
            .unwrap_or_default()
    }

    pub fn coeff_of(&self, m: &Monomial) -> CScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> CScalar {
        self.coeff_of(&Monomial::one(self.nvars))
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Lowest total degree carrying a nonzero coefficient, `None` if the
    /// series vanishes up to its accuracy.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiSeries {
        MultiSeries {
            nvars: self.nvars,
            accuracy: self.accuracy,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowers the accuracy to `min(self.accuracy, accuracy)` and drops terms above it.
    pub fn truncate(&self, accuracy: u32) -> MultiSeries {
        let accuracy = accuracy.min(self.accuracy);
        MultiSeries {
            nvars: self.nvars,
            accuracy,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= accuracy)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-labels the accuracy. Raising it is only sound when the caller knows
    /// the stored terms are the complete series up to the new degree.
    pub fn with_accuracy(mut self, accuracy: u32) -> MultiSeries {
        if accuracy < self.accuracy {
            return self.truncate(accuracy);
        }
        self.accuracy = accuracy;
        self
    }

    pub fn conj(&self) -> MultiSeries {
        MultiSeries {
            nvars: self.nvars,
            accuracy: self.accuracy,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    pub fn real_part(&self) -> MultiSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| !c.re.is_zero())
            .map(|(m, c)| (m.clone(), CScalar::real(c.re.clone())))
            .collect();
        MultiSeries {
            nvars: self.nvars,
            accuracy: self.accuracy,
            terms,
        }
    }

    /// Permutes variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> MultiSeries {
        assert_eq!(perm.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; self.nvars];
            for (i, &p) in perm.iter().enumerate() {
                e[p] = m.exp(i);
            }
            (Monomial::new(&e), c.clone())
        });
        MultiSeries::from_terms(self.nvars, self.accuracy, terms)
    }

    fn check_vars(&self, other: &MultiSeries) -> Result<(), SeriesError> {
        if self.nvars != other.nvars {
            return Err(SeriesError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn arith(&self, other: &MultiSeries, op: ArithOp) -> Result<MultiSeries, SeriesError> {
        self.check_vars(other)?;
        Ok(match op {
            ArithOp::Add => self.add_impl(other, false),
            ArithOp::Sub => self.add_impl(other, true),
            ArithOp::Mul => self.mul_truncated(other, self.accuracy.min(other.accuracy)),
        })
    }

    fn add_impl(&self, other: &MultiSeries, negate: bool) -> MultiSeries {
        let accuracy = self.accuracy.min(other.accuracy);
        let mut terms: BTreeMap<Monomial, CScalar> = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() <= accuracy)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        for (m, c) in other.terms.iter() {
            if m.degree() > accuracy {
                break;
            }
            let entry = terms.entry(m.clone()).or_default();
            if negate {
                *entry -= c;
            } else {
                *entry += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiSeries {
            nvars: self.nvars,
            accuracy,
            terms,
        }
    }

    /// Product truncated at `accuracy` (which must not exceed either factor's).
    pub fn mul_truncated(&self, other: &MultiSeries, accuracy: u32) -> MultiSeries {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let accuracy = accuracy.min(self.accuracy).min(other.accuracy);
        if self.terms.is_empty() || other.terms.is_empty() {
            return MultiSeries::zero(self.nvars, accuracy);
        }
        // One side a constant: scale.
        if self.terms.len() == 1 && self.valuation() == Some(0) {
            return other.scale(&self.constant_term()).truncate(accuracy);
        }
        if other.terms.len() == 1 && other.valuation() == Some(0) {
            return self.scale(&other.constant_term()).truncate(accuracy);
        }
        let mut acc: HashMap<Monomial, CScalar> = HashMap::new();
        for (ma, ca) in self.terms.iter() {
            if ma.degree() > accuracy {
                break;
            }
            let room = accuracy - ma.degree();
            for (mb, cb) in other.terms.iter() {
                if mb.degree() > room {
                    break;
                }
                let p = ca * cb;
                match acc.get_mut(&ma.mul(mb)) {
                    Some(v) => *v += &p,
                    None => {
                        acc.insert(ma.mul(mb), p);
                    }
                }
            }
        }
        MultiSeries::from_hashmap(self.nvars, accuracy, acc)
    }

    pub fn scale(&self, c: &CScalar) -> MultiSeries {
        if c.is_zero() {
            return MultiSeries::zero(self.nvars, self.accuracy);
        }
        MultiSeries {
            nvars: self.nvars,
            accuracy: self.accuracy,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> MultiSeries {
        self.scale(&CScalar::real(r.clone()))
    }

    pub fn add_constant(&self, c: &CScalar) -> MultiSeries {
        self + &MultiSeries::constant(self.nvars, self.accuracy, c.clone())
    }

    pub fn pow(&self, k: u32) -> MultiSeries {
        let mut acc = MultiSeries::one(self.nvars, self.accuracy);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in variable `var`; the accuracy drops by one.
    /// A series with accuracy 0 differentiates to the zero series of accuracy 0
    /// (nothing is known about its linear part).
    pub fn diff(&self, var: usize) -> MultiSeries {
        assert!(var < self.nvars);
        let accuracy = self.accuracy.saturating_sub(1);
        if self.accuracy == 0 {
            return MultiSeries::zero(self.nvars, 0);
        }
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            m.lower(var)
                .map(|low| (low, c.scale(&Rational::from_integer(e.into()))))
        });
        MultiSeries::from_terms(self.nvars, accuracy, terms)
    }

    /// Formal primitive in `var` vanishing on `var = 0`; accuracy rises by one.
    pub fn integrate(&self, var: usize) -> MultiSeries {
        let accuracy = self.accuracy + 1;
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exp(var) + 1;
            (m.raise(var), c.scale(&Rational::new(1.into(), e.into())))
        });
        MultiSeries::from_terms(self.nvars, accuracy, terms)
    }

    /// Evaluates the stored polynomial at a point.
    pub fn evaluate(&self, point: &[CScalar]) -> CScalar {
        assert_eq!(point.len(), self.nvars);
        if point.iter().all(|p| p.is_zero()) {
            return self.constant_term();
        }
        let mut total = CScalar::zero();
        for (m, c) in self.terms.iter() {
            let mut v = c.clone();
            for (i, p) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    v = &v * p;
                }
            }
            total += &v;
        }
        total
    }

    /// Substitutes series for every variable. Every argument must have a zero
    /// constant term; the result accuracy is the minimum of all accuracies.
    pub fn compose(&self, args: &[MultiSeries]) -> Result<MultiSeries, SeriesError> {
        self.check_compose_args(args)?;
        for (i, a) in args.iter().enumerate() {
            if !a.constant_term().is_zero() {
                return Err(SeriesError::NonzeroConstantTerm { index: i });
            }
        }
        let accuracy = args
            .iter()
            .map(|a| a.accuracy)
            .min()
            .unwrap_or(self.accuracy)
            .min(self.accuracy);
        Ok(self.compose_impl(args, accuracy, true))
    }

    /// Substitutes series into `self` read as an exact polynomial. Arguments may
    /// have nonzero constant terms; the result accuracy is the minimum of the
    /// argument accuracies.
    pub fn compose_polynomial(&self, args: &[MultiSeries]) -> Result<MultiSeries, SeriesError> {
        self.check_compose_args(args)?;
        let accuracy = args
            .iter()
            .map(|a| a.accuracy)
            .min()
            .unwrap_or(self.accuracy);
        let positive_valuation = args.iter().all(|a| a.constant_term().is_zero());
        Ok(self.compose_impl(args, accuracy, positive_valuation))
    }

    fn check_compose_args(&self, args: &[MultiSeries]) -> Result<(), SeriesError> {
        if args.len() != self.nvars {
            return Err(SeriesError::VarCountMismatch {
                left: self.nvars,
                right: args.len(),
            });
        }
        if let Some(first) = args.first() {
            for a in args {
                first.check_vars(a)?;
            }
        }
        Ok(())
    }

    fn compose_impl(&self, args: &[MultiSeries], accuracy: u32, skip_high: bool) -> MultiSeries {
        let target_vars = args.first().map(|a| a.nvars).unwrap_or(0);
        let args: Vec<MultiSeries> = args.iter().map(|a| a.truncate(accuracy)).collect();
        let mut cache: HashMap<Monomial, MultiSeries> = HashMap::new();
        cache.insert(
            Monomial::one(self.nvars),
            MultiSeries::one(target_vars, accuracy),
        );
        let mut acc: HashMap<Monomial, CScalar> = HashMap::new();
        for (m, c) in self.terms.iter() {
            if skip_high && m.degree() > accuracy {
                break;
            }
            let value = monomial_value(m, &args, &mut cache, accuracy);
            for (mm, cc) in value.terms.iter() {
                let p = c * cc;
                match acc.get_mut(mm) {
                    Some(v) => *v += &p,
                    None => {
                        acc.insert(mm.clone(), p);
                    }
                }
            }
        }
        MultiSeries::from_hashmap(target_vars, accuracy, acc)
    }

    /// Replaces variable `var` by `value` (a series in the same variables that
    /// does not itself depend on `var`, with zero constant term).
    pub fn substitute(&self, var: usize, value: &MultiSeries) -> Result<MultiSeries, SeriesError> {
        self.check_vars(value)?;
        if !value.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstantTerm { index: var });
        }
        let accuracy = self.accuracy.min(value.accuracy);
        let mut powers: Vec<MultiSeries> = vec![MultiSeries::one(self.nvars, accuracy)];
        let mut acc: HashMap<Monomial, CScalar> = HashMap::new();
        for (m, c) in self.terms.iter() {
            if m.degree() > accuracy {
                break;
            }
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul_truncated(value, accuracy);
                powers.push(next);
            }
            let rest = m.with_exp(var, 0);
            let room = accuracy - rest.degree();
            for (pm, pc) in powers[e].terms.iter() {
                if pm.degree() > room {
                    break;
                }
                let p = c * pc;
                let key = rest.mul(pm);
                match acc.get_mut(&key) {
                    Some(v) => *v += &p,
                    None => {
                        acc.insert(key, p);
                    }
                }
            }
        }
        Ok(MultiSeries::from_hashmap(self.nvars, accuracy, acc))
    }

    /// Rewrites the series in more variables: variable `i` becomes `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MultiSeries {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; nvars];
            for (i, &t) in map.iter().enumerate() {
                e[t] += m.exp(i);
            }
            (Monomial::new(&e), c.clone())
        });
        MultiSeries::from_terms(nvars, self.accuracy, terms)
    }

    /// Pretty printer with caller-supplied variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> SeriesDisplay<'a> {
        SeriesDisplay {
            series: self,
            names,
        }
    }
}

fn monomial_value(
    m: &Monomial,
    args: &[MultiSeries],
    cache: &mut HashMap<Monomial, MultiSeries>,
    accuracy: u32,
) -> MultiSeries {
    if let Some(v) = cache.get(m) {
        return v.clone();
    }
    let i = (0..m.nvars())
        .find(|&i| m.exp(i) > 0)
        .expect("non-unit monomial");
    let parent = m.lower(i).unwrap();
    let pv = monomial_value(&parent, args, cache, accuracy);
    let v = pv.mul_truncated(&args[i], accuracy);
    cache.insert(m.clone(), v.clone());
    v
}

impl<'a> Add<&'a MultiSeries> for &'a MultiSeries {
    type Output = MultiSeries;
    fn add(self, o: &MultiSeries) -> MultiSeries {
        self.arith(o, ArithOp::Add).expect("series add")
    }
}

impl<'a> Sub<&'a MultiSeries> for &'a MultiSeries {
    type Output = MultiSeries;
    fn sub(self, o: &MultiSeries) -> MultiSeries {
        self.arith(o, ArithOp::Sub).expect("series sub")
    }
}

impl<'a> Mul<&'a MultiSeries> for &'a MultiSeries {
    type Output = MultiSeries;
    fn mul(self, o: &MultiSeries) -> MultiSeries {
        self.arith(o, ArithOp::Mul).expect("series mul")
    }
}

impl Add for MultiSeries {
    type Output = MultiSeries;
    fn add(self, o: MultiSeries) -> MultiSeries {
        &self + &o
    }
}

impl Sub for MultiSeries {
    type Output = MultiSeries;
    fn sub(self, o: MultiSeries) -> MultiSeries {
        &self - &o
    }
}

impl Mul for MultiSeries {
    type Output = MultiSeries;
    fn mul(self, o: MultiSeries) -> MultiSeries {
        &self * &o
    }
}

impl Neg for &MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        MultiSeries {
            nvars: self.nvars,
            accuracy: self.accuracy,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        -&self
    }
}

pub struct SeriesDisplay<'a> {
    series: &'a MultiSeries,
    names: &'a [String],
}

impl fmt::Display for SeriesDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.series.is_zero() {
            return write!(f, "0 + O({})", self.series.accuracy + 1);
        }
        let mut first = true;
        for (m, c) in self.series.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for i in 0..m.nvars() {
                match m.exp(i) {
                    0 => {}
                    1 => write!(f, "*{}", self.names[i])?,
                    e => write!(f, "*{}^{}", self.names[i], e)?,
                }
            }
        }
        write!(f, " + O({})", self.series.accuracy + 1)
    }
}

impl fmt::Debug for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::{int, rat};

    fn x(acc: u32) -> MultiSeries {
        MultiSeries::var(2, acc, 0)
    }
    fn y(acc: u32) -> MultiSeries {
        MultiSeries::var(2, acc, 1)
    }

    #[test]
    fn telescoping_product() {
        let one = MultiSeries::one(2, 5);
        let p = &(&one + &x(5)) * &(&one - &x(5));
        let expected = &one - &(&x(5) * &x(5));
        assert_eq!(p, expected);
        assert_eq!(p.accuracy(), 5);
    }

    #[test]
    fn truncation_is_tracked() {
        let p = &x(1) * &y(1);
        assert!(p.is_zero());
        assert_eq!(p.accuracy(), 1);
    }

    #[test]
    fn mismatched_variables_error() {
        let a = MultiSeries::var(2, 3, 0);
        let b = MultiSeries::var(3, 3, 0);
        assert!(matches!(
            a.arith(&b, ArithOp::Add),
            Err(SeriesError::VarCountMismatch { .. })
        ));
    }

    #[test]
    fn graded_lex_order() {
        let s = MultiSeries::from_exponent_terms(
            2,
            3,
            vec![
                (vec![0, 2], CScalar::one()),
                (vec![1, 0], CScalar::one()),
                (vec![0, 0], CScalar::one()),
                (vec![1, 1], CScalar::one()),
                (vec![0, 1], CScalar::one()),
                (vec![2, 0], CScalar::one()),
            ],
        );
        let order: Vec<Vec<u32>> = s.terms().map(|(m, _)| m.exponents()).collect();
        assert_eq!(
            order,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
    }

    #[test]
    fn compose_difference_of_squares() {
        // f(u, v) = u v
        let f = MultiSeries::monomial(2, 4, &[1, 1], CScalar::one());
        let g = f.compose(&[&x(4) + &y(4), &x(4) - &y(4)]).unwrap();
        assert_eq!(g, &(&x(4) * &x(4)) - &(&y(4) * &y(4)));
    }

    #[test]
    fn compose_geometric_germ() {
        let n = 6;
        let geo =
            MultiSeries::from_exponent_terms(1, n, (0..=n).map(|k| (vec![k], CScalar::one())));
        let half_x = MultiSeries::var(1, n, 0).scale_rational(&rat(1, 2));
        let g = geo.compose(&[half_x]).unwrap();
        for k in 0..=n {
            assert_eq!(g.coeff(&[k]), CScalar::real(rat(1, 1 << k)));
        }
    }

    #[test]
    fn compose_rejects_constant_terms() {
        let geo =
            MultiSeries::from_exponent_terms(1, 3, (0..=3).map(|k| (vec![k], CScalar::one())));
        let arg = MultiSeries::var(1, 3, 0).add_constant(&CScalar::one());
        assert!(matches!(
            geo.compose(std::slice::from_ref(&arg)),
            Err(SeriesError::NonzeroConstantTerm { index: 0 })
        ));
        // As an exact polynomial the substitution is fine: 1 + u + u² + u³ at u = 1 + x.
        let p = geo.compose_polynomial(&[arg]).unwrap();
        assert_eq!(p.constant_term(), CScalar::from_int(4));
        assert_eq!(p.coeff(&[1]), CScalar::from_int(6));
        assert_eq!(p.coeff(&[3]), CScalar::from_int(1));
    }

    #[test]
    fn derivative_examples() {
        let x2y = MultiSeries::monomial(2, 5, &[2, 1], CScalar::one());
        let d = x2y.diff(0);
        assert_eq!(
            d,
            MultiSeries::monomial(2, 4, &[1, 1], CScalar::from_int(2))
        );
        let c = MultiSeries::constant(2, 5, CScalar::from_int(7));
        assert!(c.diff(0).is_zero());
        assert_eq!(c.diff(0).accuracy(), 4);
    }

    #[test]
    fn integrate_then_differentiate() {
        let s = MultiSeries::from_exponent_terms(
            2,
            4,
            vec![
                (vec![0, 0], CScalar::from_int(3)),
                (vec![2, 1], CScalar::real(rat(5, 7))),
            ],
        );
        assert_eq!(s.integrate(1).diff(1), s);
    }

    #[test]
    fn substitute_graph() {
        // f = y - x^2, substitute y = x^2 → 0
        let f = &y(4) - &(&x(4) * &x(4));
        let h = &x(4) * &x(4);
        assert!(f.substitute(1, &h).unwrap().is_zero());
    }

    #[test]
    fn evaluate_polynomial() {
        let f = &(&x(3) * &y(3)) + &MultiSeries::constant(2, 3, CScalar::from_int(2));
        let v = f.evaluate(&[CScalar::real(int(3)), CScalar::real(rat(1, 3))]);
        assert_eq!(v, CScalar::from_int(3));
    }
}
