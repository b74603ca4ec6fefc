use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Rational = Ratio<BigInt>;

/// The scalar field a document or analysis works over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// The rationals ℚ.
    Rational,
    /// The Gaussian rationals ℚ(i).
    Gaussian,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Gaussian => write!(f, "Q(i)"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" => Ok(FieldKind::Rational),
            "Q(i)" => Ok(FieldKind::Gaussian),
            other => Err(ScalarParseError::BadField(other.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("empty scalar string")]
    Empty,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("scalar denominator must be a positive integer in `{0}`")]
    BadDenominator(String),
    #[error("unknown field `{0}` (expected \"Q\" or \"Q(i)\")")]
    BadField(String),
}

/// Exact field element: a rational number, or a Gaussian rational `a + b·i`.
///
/// The zero and purely-real cases are distinguished structurally, which keeps
/// large mostly-zero coefficient tables cheap and makes `is_zero` a tag test.
/// Values are always normalized: `Real` is nonzero, `Complex` has a nonzero
/// imaginary part, and the underlying rationals are reduced with positive
/// denominators.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub enum Scalar {
    #[default]
    Zero,
    Real(Box<Rational>),
    Complex(Box<(Rational, Rational)>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Zero
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Scalar::from_parts(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `num / den` as an exact rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            Scalar::Zero
        } else {
            Scalar::Real(Box::new(r))
        }
    }

    pub fn from_parts(re: Rational, im: Rational) -> Self {
        if im.is_zero() {
            Scalar::from_rational(re)
        } else {
            Scalar::Complex(Box::new((re, im)))
        }
    }

    pub fn re(&self) -> Rational {
        match self {
            Scalar::Zero => Rational::zero(),
            Scalar::Real(r) => (**r).clone(),
            Scalar::Complex(p) => p.0.clone(),
        }
    }

    pub fn im(&self) -> Rational {
        match self {
            Scalar::Zero | Scalar::Real(_) => Rational::zero(),
            Scalar::Complex(p) => p.1.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Real(r) if r.is_one())
    }

    /// True when the imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        !matches!(self, Scalar::Complex(_))
    }

    /// True when the value lies in the given field.
    pub fn lies_in(&self, field: FieldKind) -> bool {
        match field {
            FieldKind::Rational => self.is_real(),
            FieldKind::Gaussian => true,
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ArithmeticError> {
        if rhs.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        match rhs {
            Scalar::Real(r) => {
                let inv = Scalar::from_rational(r.recip());
                Ok(self * &inv)
            }
            Scalar::Complex(p) => {
                // 1/(c+di) = (c - di)/(c² + d²)
                let (c, d) = (&p.0, &p.1);
                let norm = c * c + d * d;
                let inv = Scalar::from_parts(c / &norm, -(d / &norm));
                Ok(self * &inv)
            }
            Scalar::Zero => unreachable!(),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Zero, _) => rhs.clone(),
            (_, Scalar::Zero) => self.clone(),
            (Scalar::Real(a), Scalar::Real(b)) => Scalar::from_rational(&**a + &**b),
            _ => Scalar::from_parts(self.re() + rhs.re(), self.im() + rhs.im()),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (_, Scalar::Zero) => self.clone(),
            (Scalar::Zero, _) => -rhs,
            (Scalar::Real(a), Scalar::Real(b)) => Scalar::from_rational(&**a - &**b),
            _ => Scalar::from_parts(self.re() - rhs.re(), self.im() - rhs.im()),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Zero, _) | (_, Scalar::Zero) => Scalar::Zero,
            (Scalar::Real(a), Scalar::Real(b)) => Scalar::from_rational(&**a * &**b),
            _ => {
                // (a+bi)(c+di) = (ac − bd) + (ad + bc)i
                let (a, b) = (self.re(), self.im());
                let (c, d) = (rhs.re(), rhs.im());
                Scalar::from_parts(&a * &c - &b * &d, &a * &d + &b * &c)
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Zero => Scalar::Zero,
            Scalar::Real(r) => Scalar::Real(Box::new(-&**r)),
            Scalar::Complex(p) => Scalar::Complex(Box::new((-&p.0, -&p.1))),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        let lhs = std::mem::take(self);
        *self = &lhs + rhs;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Zero => write!(f, "0"),
            Scalar::Real(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Complex(p) => {
                let (re, im) = (&p.0, &p.1);
                if im.is_negative() {
                    write!(f, "{}-{} i", fmt_rational(re), fmt_rational(&-im))
                } else {
                    write!(f, "{}+{} i", fmt_rational(re), fmt_rational(im))
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, ScalarParseError> {
    let bad = || ScalarParseError::BadRational(s.to_string());
    let (sign, rest) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (num_str, den_str) = match rest.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (rest, None),
    };
    if num_str.is_empty() || !num_str.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut num: BigInt = num_str.parse().map_err(|_| bad())?;
    if sign < 0 {
        num = -num;
    }
    let den: BigInt = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den: BigInt = d.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(ScalarParseError::BadDenominator(s.to_string()));
            }
            den
        }
    };
    Ok(Rational::new(num, den))
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    /// Parses `"p"`, `"p/q"`, `"p/q+r/s i"`, `"p/q-r/s i"`, and the
    /// shorthands `"i"`, `"-i"`, `"r i"` for purely imaginary values.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::from_rational(parse_rational(s)?));
        };
        let body = body.trim_end();
        // Split at the last sign that is not the leading one; rationals
        // contain only digits and '/', so any interior '+'/'-' separates the
        // real part from the imaginary part.
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        match split {
            Some(i) => {
                let re = parse_rational(&body[..i])?;
                let sign = if body.as_bytes()[i] == b'-' { -1 } else { 1 };
                let im_str = &body[i + 1..];
                let mut im = if im_str.is_empty() {
                    Rational::one()
                } else {
                    parse_rational(im_str)?
                };
                if sign < 0 {
                    im = -im;
                }
                Ok(Scalar::from_parts(re, im))
            }
            None => {
                let im = match body {
                    "" => Rational::one(),
                    "-" => -Rational::one(),
                    "+" => Rational::one(),
                    other => parse_rational(other)?,
                };
                Ok(Scalar::from_parts(Rational::zero(), im))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn rational_addition_is_exact() {
        assert_eq!(
            &Scalar::ratio(1, 2) + &Scalar::ratio(1, 3),
            Scalar::ratio(5, 6)
        );
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn parsing_normalizes() {
        assert_eq!(s("2/4"), Scalar::ratio(1, 2));
        assert_eq!(s("2/4").to_string(), "1/2");
        assert_eq!(s("-6/4").to_string(), "-3/2");
        assert_eq!(s("0/7"), Scalar::Zero);
        assert_eq!(s("3").to_string(), "3");
    }

    #[test]
    fn complex_round_trip() {
        for text in ["1/2+1/3 i", "0+1 i", "-2-1/2 i", "5", "-7/3"] {
            assert_eq!(s(text).to_string(), text);
        }
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("1/2+1/3i"), s("1/2+1/3 i"));
        assert_eq!(s("i").to_string(), "0+1 i");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!("".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("a/b".parse::<Scalar>().is_err());
        assert!("1//2".parse::<Scalar>().is_err());
        assert!("1/-2".parse::<Scalar>().is_err());
    }

    #[test]
    fn division() {
        let q = s("1/2+1/2 i");
        let r = q.checked_div(&s("0+1 i")).unwrap();
        assert_eq!(r, s("1/2-1/2 i"));
        assert_eq!(
            Scalar::one().checked_div(&Scalar::Zero),
            Err(ArithmeticError::DivisionByZero)
        );
        // (a/b)·b = a
        let a = s("-3/7+2 i");
        let b = s("5/3-1/6 i");
        assert_eq!(&a.checked_div(&b).unwrap() * &b, a);
    }

    #[test]
    fn purely_real_gaussian_values_collapse() {
        let z = &s("2+3 i") - &s("0+3 i");
        assert!(z.is_real());
        assert_eq!(z, Scalar::from_int(2));
    }

    #[test]
    fn field_membership() {
        assert!(s("1/2").lies_in(FieldKind::Rational));
        assert!(!s("i").lies_in(FieldKind::Rational));
        assert!(s("i").lies_in(FieldKind::Gaussian));
    }
}
