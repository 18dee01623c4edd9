use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Conjugate;
use crate::error::{GctkError, Result};

/// Floating image of an exact complex value; used only for eigenvalue work.
pub type FloatComplex = num_complex::Complex64;

/// `num / den` as a big rational. Panics on a zero denominator.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Complex number with arbitrary-precision rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactComplex { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        ExactComplex {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(rational(num, den))
    }

    /// `(re_num/re_den) + (im_num/im_den) i`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        ExactComplex {
            re: rational(re_num, re_den),
            im: rational(im_num, im_den),
        }
    }

    pub fn i() -> Self {
        ExactComplex {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactComplex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(GctkError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(ExactComplex {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = ExactComplex::from_int(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_real(&self, r: &BigRational) -> Self {
        ExactComplex {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn to_float(&self) -> FloatComplex {
        FloatComplex::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Text form used in reports: `p/q+r/s*i`, dropping a zero part.
    pub fn to_report_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || GctkError::InvalidInput(format!("malformed rational `{s}`"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(GctkError::DivisionByZero);
    }
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Parses the literal grammar `RAT((+|-)RAT i)?` (also `RAT i` alone), with
/// `RAT = -?digits(/digits)?`. Whitespace and a `*` before `i` are accepted.
impl FromStr for ExactComplex {
    type Err = GctkError;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(GctkError::InvalidInput("empty complex literal".into()));
        }
        let Some(body) = compact.strip_suffix('i') else {
            return Ok(ExactComplex::real(parse_rational(&compact)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re = parse_rational(&body[..k])?;
                let im_text = &body[k..];
                let im = if im_text == "+" || im_text == "-" {
                    parse_rational(&format!("{im_text}1"))?
                } else {
                    parse_rational(im_text)?
                };
                Ok(ExactComplex { re, im })
            }
            None => {
                let im = match body {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    t => parse_rational(t)?,
                };
                Ok(ExactComplex {
                    re: BigRational::zero(),
                    im,
                })
            }
        }
    }
}

impl<'a> Add<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

fn mul_part(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        BigRational::zero()
    } else {
        a * b
    }
}

impl<'a> Mul<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ExactComplex::real(mul_part(&self.re, &rhs.re));
        }
        ExactComplex {
            re: mul_part(&self.re, &rhs.re) - mul_part(&self.im, &rhs.im),
            im: mul_part(&self.re, &rhs.im) + mul_part(&self.im, &rhs.re),
        }
    }
}

impl<'a> Div<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    /// Panics on division by zero; use [`ExactComplex::checked_div`] otherwise.
    fn div(self, rhs: &ExactComplex) -> ExactComplex {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: ExactComplex) -> ExactComplex { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        -&self
    }
}

impl From<i64> for ExactComplex {
    fn from(v: i64) -> Self {
        ExactComplex::from_int(v)
    }
}

impl From<BigRational> for ExactComplex {
    fn from(v: BigRational) -> Self {
        ExactComplex::real(v)
    }
}

impl super::Ring for ExactComplex {
    fn zero() -> Self {
        ExactComplex::default()
    }
    fn one() -> Self {
        ExactComplex::from_int(1)
    }
    fn is_zero(&self) -> bool {
        ExactComplex::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_exact(c: &ExactComplex) -> Self {
        c.clone()
    }
    fn scale_exact(&self, c: &ExactComplex) -> Self {
        self * c
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Conjugate for ExactComplex {
    fn conj(&self) -> Self {
        ExactComplex::conj(self)
    }
}

impl super::Ring for FloatComplex {
    fn zero() -> Self {
        FloatComplex::new(0.0, 0.0)
    }
    fn one() -> Self {
        FloatComplex::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_exact(c: &ExactComplex) -> Self {
        c.to_float()
    }
}

impl Conjugate for FloatComplex {
    fn conj(&self) -> Self {
        FloatComplex::conj(self)
    }
}
