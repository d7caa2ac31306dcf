//! Exact scalars: arbitrary precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::SeriesError;

/// Exact rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn rat_pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Serialized form: `"p/q"`, always with an explicit denominator.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let s = s.trim();
    let bad = || SeriesError::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CScalar {
    pub re: Rational,
    pub im: Rational,
}

impl CScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        CScalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        CScalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        CScalar::real(int(n))
    }

    pub fn i() -> Self {
        CScalar::new(Rational::zero(), Rational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CScalar::new(self.re.clone(), -self.im.clone())
    }

    /// |re| + |im|, the ℓ¹ norm of the realification. Submultiplicative.
    pub fn norm_l1(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let d = self.norm_sqr();
        if d.is_zero() {
            return None;
        }
        Some(CScalar::new(&self.re / &d, -(&self.im / &d)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CScalar::new(&self.re * r, &self.im * r)
    }

    /// Multiplication by i.
    pub fn mul_i(&self) -> Self {
        CScalar::new(-self.im.clone(), self.re.clone())
    }
}

impl Zero for CScalar {
    fn zero() -> Self {
        CScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CScalar {
    fn one() -> Self {
        CScalar::real(Rational::one())
    }
}

impl From<Rational> for CScalar {
    fn from(r: Rational) -> Self {
        CScalar::real(r)
    }
}

impl fmt::Debug for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(
                f,
                "({}{}{}i)",
                self.re,
                if self.im.is_negative() { "" } else { "+" },
                self.im
            )
        }
    }
}

impl<'a> Add<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn add(self, o: &CScalar) -> CScalar {
        CScalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Add for CScalar {
    type Output = CScalar;
    fn add(self, o: CScalar) -> CScalar {
        &self + &o
    }
}

impl<'a> Sub<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn sub(self, o: &CScalar) -> CScalar {
        CScalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Sub for CScalar {
    type Output = CScalar;
    fn sub(self, o: CScalar) -> CScalar {
        &self - &o
    }
}

impl<'a> Mul<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn mul(self, o: &CScalar) -> CScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return CScalar::real(&self.re * &o.re);
        }
        CScalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Mul for CScalar {
    type Output = CScalar;
    fn mul(self, o: CScalar) -> CScalar {
        &self * &o
    }
}

impl Div for CScalar {
    type Output = CScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: CScalar) -> CScalar {
        let inv = o.inv().expect("division by zero in CScalar");
        &self * &inv
    }
}

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar::new(-self.re, -self.im)
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&CScalar> for CScalar {
    fn add_assign(&mut self, o: &CScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&CScalar> for CScalar {
    fn sub_assign(&mut self, o: &CScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&CScalar> for CScalar {
    fn mul_assign(&mut self, o: &CScalar) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(rational_to_string(&rat(-3, 2)), "-3/2");
        assert_eq!(rational_to_string(&int(5)), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn gaussian_field_ops() {
        let a = CScalar::new(rat(1, 2), int(3));
        let b = CScalar::new(int(-2), rat(1, 3));
        let q = a.clone() / b.clone();
        assert_eq!(&q * &b, a);
        assert_eq!(a.conj().conj(), a);
        assert_eq!(&CScalar::i() * &CScalar::i(), CScalar::from_int(-1));
        assert!((&a * &b).norm_l1() <= a.norm_l1() * b.norm_l1());
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(factorial(5), int(120));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
