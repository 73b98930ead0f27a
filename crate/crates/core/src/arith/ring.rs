use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number; always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Commutative ring containing the rationals, with enough printing hooks to
/// render sums of scaled monomials.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn from_rat(r: Rat) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rat(int(n))
    }

    /// True when the printed form is a single factor that needs no parentheses
    /// inside a product.
    fn is_atomic(&self) -> bool;

    /// True when the printed form starts with a minus sign.
    fn is_negative(&self) -> bool;

    /// The value as a rational number when it is one.
    fn as_rat(&self) -> Option<Rat> {
        None
    }
}

pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Option<Self>;

    fn checked_div(&self, other: &Self) -> crate::Result<Self> {
        other
            .inv()
            .map(|i| self.clone() * i)
            .ok_or(crate::Error::DivisionByZero)
    }

    /// Specialised gcd of two nonconstant polynomials over this field, when
    /// the field knows something better than the Euclidean algorithm.
    fn poly_gcd(_a: &super::poly::Poly<Self>, _b: &super::poly::Poly<Self>) -> Option<super::poly::Poly<Self>> {
        None
    }
}

impl Ring for Rat {
    fn from_rat(r: Rat) -> Self {
        r
    }

    fn is_atomic(&self) -> bool {
        self.is_integer() && !Signed::is_negative(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn poly_gcd(a: &super::poly::Poly<Self>, b: &super::poly::Poly<Self>) -> Option<super::poly::Poly<Self>> {
        Some(super::poly::Poly::new(super::poly::rational_gcd(a.coeffs(), b.coeffs())))
    }
}

/// Splits a coefficient-times-monomial term into its sign and printed body.
pub(crate) fn signed_term<R: Ring>(c: &R, mono: &str) -> (bool, String) {
    let (neg, c) = if c.is_negative() {
        (true, -c.clone())
    } else {
        (false, c.clone())
    };
    let body = if mono.is_empty() {
        let s = c.to_string();
        if s.contains(" + ") || s.contains(" - ") {
            format!("({s})")
        } else {
            s
        }
    } else if c.is_one() {
        mono.to_string()
    } else if c.is_atomic() {
        format!("{c}*{mono}")
    } else {
        format!("({c})*{mono}")
    };
    (neg, body)
}

pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Prints `var`, `var^2`, `var^(-1)` or `var^(1/2)` for a rational exponent.
pub(crate) fn power_str(var: &str, exp: &Rat) -> String {
    if exp.is_one() {
        var.to_string()
    } else if exp.is_integer() && !Signed::is_negative(exp) {
        format!("{var}^{exp}")
    } else {
        format!("{var}^({exp})")
    }
}
