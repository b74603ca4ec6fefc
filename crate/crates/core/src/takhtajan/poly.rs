//! Small exact bivariate polynomials in the parameters `alpha` and `lambda`,
//! plus the root extraction needed to solve the associative-type constraint
//! systems over ℚ and ℚ(i).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactmath::{FieldKind, Rational, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("constraint system is not solvable by the built-in strategy")]
    Unsupported,
    #[error("constraint system is underdetermined (a solution family escapes enumeration)")]
    Underdetermined,
}

/// Polynomial in `alpha` and `lambda` with exact scalar coefficients, keyed
/// by the exponent pair `(deg alpha, deg lambda)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn one() -> Self {
        Poly2::constant(Scalar::one())
    }

    pub fn alpha() -> Self {
        let mut p = Poly2::zero();
        p.add_term(1, 0, Scalar::one());
        p
    }

    pub fn lambda() -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 1, Scalar::one());
        p
    }

    pub fn add_term(&mut self, a: u32, l: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, l)).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&(a, l));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(a, l), c) in &other.terms {
            out.add_term(a, l, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a1, l1), c1) in &self.terms {
            for (&(a2, l2), c2) in &other.terms {
                out.add_term(a1 + a2, l1 + l2, c1 * c2);
            }
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a, l), x) in &self.terms {
            out.add_term(a, l, x * c);
        }
        out
    }

    pub fn eval(&self, alpha: &Scalar, lambda: &Scalar) -> Scalar {
        let mut acc = Scalar::Zero;
        for (&(a, l), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..a {
                term = &term * alpha;
            }
            for _ in 0..l {
                term = &term * lambda;
            }
            acc += &term;
        }
        acc
    }

    /// Minimal exponents of `alpha` and `lambda` across all monomials (the
    /// monomial content), zero for the zero polynomial.
    pub fn content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|&(a, _)| a).min().unwrap_or(0);
        let l = self.terms.keys().map(|&(_, l)| l).min().unwrap_or(0);
        (a, l)
    }

    /// Divides out `alpha^a · lambda^l`; exponents must not exceed the
    /// content.
    pub fn strip_monomial(&self, a: u32, l: u32) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(pa, pl), c) in &self.terms {
            out.add_term(pa - a, pl - l, c.clone());
        }
        out
    }

    /// `Some(var)` when the polynomial involves only that variable (constants
    /// report as univariate in `alpha`).
    pub fn univariate_var(&self) -> Option<Var> {
        let involves_alpha = self.terms.keys().any(|&(a, _)| a > 0);
        let involves_lambda = self.terms.keys().any(|&(_, l)| l > 0);
        match (involves_alpha, involves_lambda) {
            (_, false) => Some(Var::Alpha),
            (false, true) => Some(Var::Lambda),
            (true, true) => None,
        }
    }

    /// Coefficient list (ascending powers) of a univariate polynomial in
    /// `var`; only valid when [`Poly2::univariate_var`] allows it.
    pub fn univariate_coeffs(&self, var: Var) -> Vec<Scalar> {
        self.substitute(var.other(), &Scalar::Zero)
    }

    /// Substitutes one variable, producing a univariate coefficient list in
    /// the other (ascending powers).
    pub fn substitute(&self, var: Var, value: &Scalar) -> Vec<Scalar> {
        let degree = self
            .terms
            .keys()
            .map(|&(a, l)| match var {
                Var::Alpha => l,
                Var::Lambda => a,
            })
            .max()
            .unwrap_or(0) as usize;
        let mut coeffs = vec![Scalar::Zero; degree + 1];
        for (&(a, l), c) in &self.terms {
            let (fixed_exp, free_exp) = match var {
                Var::Alpha => (a, l),
                Var::Lambda => (l, a),
            };
            let mut term = c.clone();
            for _ in 0..fixed_exp {
                term = &term * value;
            }
            coeffs[free_exp as usize] += &term;
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        coeffs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Alpha,
    Lambda,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::Alpha => Var::Lambda,
            Var::Lambda => Var::Alpha,
        }
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // monomial order for printing: total degree, alpha powers first
        let mut ordered: Vec<(&(u32, u32), &Scalar)> = self.terms.iter().collect();
        ordered.sort_by_key(|(&(a, l), _)| (a + l, l, a));
        let mut first = true;
        for (&(a, l), c) in ordered {
            let negative = c.is_real() && c.re().is_negative();
            let abs = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (a == 0 && l == 0) {
                factors.push(abs.to_string());
            }
            for (exp, name) in [(a, "alpha"), (l, "lambda")] {
                match exp {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let num = integer_sqrt(r.numer())?;
    let den = integer_sqrt(r.denom())?;
    Some(Ratio::new(num, den))
}

/// Exact square root in the requested field, when one exists there.
///
/// For a Gaussian value `x + yi` the root `u + vi` satisfies
/// `u² = (x + |z|)/2`, `v² = (|z| − x)/2`, `2uv = y`, so the root is exact
/// precisely when `|z|` and those halves are rational squares.
pub fn sqrt_in_field(value: &Scalar, field: FieldKind) -> Option<Scalar> {
    if value.is_zero() {
        return Some(Scalar::Zero);
    }
    let (x, y) = (value.re(), value.im());
    if y.is_zero() {
        if !x.is_negative() {
            return rational_sqrt(&x).map(Scalar::from_rational);
        }
        if field == FieldKind::Gaussian {
            return rational_sqrt(&-&x).map(|r| Scalar::from_parts(Rational::zero(), r));
        }
        return None;
    }
    if field != FieldKind::Gaussian {
        return None;
    }
    let norm_sq = &x * &x + &y * &y;
    let norm = rational_sqrt(&norm_sq)?;
    let two = Rational::from_integer(BigInt::from(2));
    let u = rational_sqrt(&((&x + &norm) / &two))?;
    if u.is_zero() {
        return None;
    }
    let v = &y / &(&u * &two);
    Some(Scalar::from_parts(u, v))
}

/// Roots of a univariate polynomial (ascending coefficients) in the field.
///
/// Handles degree ≤ 2 after stripping the monomial factor `x^k`; higher
/// degrees are reported as unsupported. Returns `Underdetermined` for the
/// zero polynomial.
pub fn univariate_roots(coeffs: &[Scalar], field: FieldKind) -> Result<Vec<Scalar>, SolveError> {
    let mut coeffs: Vec<Scalar> = coeffs.to_vec();
    while coeffs.last().is_some_and(Scalar::is_zero) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(SolveError::Underdetermined);
    }
    let mut roots = Vec::new();
    let low_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if low_zeros > 0 {
        roots.push(Scalar::Zero);
        coeffs.drain(..low_zeros);
    }
    match coeffs.len() {
        1 => {}
        2 => {
            // c0 + c1·x = 0
            let root = (-&coeffs[0])
                .checked_div(&coeffs[1])
                .expect("leading nonzero");
            if root.lies_in(field) {
                roots.push(root);
            }
        }
        3 => {
            let (c, b, a) = (&coeffs[0], &coeffs[1], &coeffs[2]);
            let four_ac = &(&Scalar::from_int(4) * a) * c;
            let disc = &(b * b) - &four_ac;
            if let Some(sq) = sqrt_in_field(&disc, field) {
                let two_a = &Scalar::from_int(2) * a;
                for sign in [1i64, -1] {
                    let num = &(-b) + &(&Scalar::from_int(sign) * &sq);
                    let root = num.checked_div(&two_a).expect("leading nonzero");
                    if root.lies_in(field) && !roots.contains(&root) {
                        roots.push(root);
                    }
                }
            }
        }
        _ => return Err(SolveError::Unsupported),
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_arithmetic_and_display() {
        let p = Poly2::one().add(&Poly2::alpha()).add(&Poly2::lambda());
        assert_eq!(p.to_string(), "1 + alpha + lambda");
        let q = Poly2::alpha().mul(&Poly2::one().add(&Poly2::lambda()));
        assert_eq!(q.to_string(), "alpha + alpha*lambda");
        let r = Poly2::alpha()
            .mul(&Poly2::alpha())
            .scaled(&Scalar::from_int(-1));
        assert_eq!(r.to_string(), "-alpha^2");
        assert_eq!(
            p.eval(&Scalar::from_int(2), &Scalar::from_int(-3)),
            Scalar::Zero
        );
    }

    #[test]
    fn substitution_produces_univariate_coefficients() {
        // alpha² + lambda·alpha + lambda·alpha² at alpha = 1: 1 + 2·lambda
        let p = Poly2::alpha()
            .mul(&Poly2::alpha())
            .add(&Poly2::lambda().mul(&Poly2::alpha()))
            .add(&Poly2::lambda().mul(&Poly2::alpha()).mul(&Poly2::alpha()));
        let coeffs = p.substitute(Var::Alpha, &Scalar::one());
        assert_eq!(coeffs, vec![Scalar::one(), Scalar::from_int(2)]);
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            sqrt_in_field(&Scalar::ratio(9, 4), FieldKind::Rational),
            Some(Scalar::ratio(3, 2))
        );
        assert_eq!(
            sqrt_in_field(&Scalar::from_int(2), FieldKind::Rational),
            None
        );
        assert_eq!(
            sqrt_in_field(&Scalar::from_int(-4), FieldKind::Rational),
            None
        );
        assert_eq!(
            sqrt_in_field(&Scalar::from_int(-4), FieldKind::Gaussian),
            Some(&Scalar::from_int(2) * &Scalar::i())
        );
        // sqrt(2i) = 1 + i
        let two_i = &Scalar::from_int(2) * &Scalar::i();
        let root = sqrt_in_field(&two_i, FieldKind::Gaussian).unwrap();
        assert_eq!(&root * &root, two_i);
    }

    #[test]
    fn roots_of_small_polynomials() {
        // x² + 1: none over Q, ±i over Q(i)
        let coeffs = vec![Scalar::one(), Scalar::Zero, Scalar::one()];
        assert!(univariate_roots(&coeffs, FieldKind::Rational)
            .unwrap()
            .is_empty());
        let roots = univariate_roots(&coeffs, FieldKind::Gaussian).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&Scalar::i()));
        assert!(roots.contains(&(-Scalar::i())));
        // -x - x³ = -x(1 + x²)
        let coeffs = vec![
            Scalar::Zero,
            Scalar::from_int(-1),
            Scalar::Zero,
            Scalar::from_int(-1),
        ];
        let roots = univariate_roots(&coeffs, FieldKind::Gaussian).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&Scalar::Zero));
        // zero polynomial is underdetermined
        assert_eq!(
            univariate_roots(&[Scalar::Zero], FieldKind::Rational),
            Err(SolveError::Underdetermined)
        );
    }
}
