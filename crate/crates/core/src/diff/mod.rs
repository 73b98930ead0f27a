//! Differential fields: `Q(x)` with `d/dx`, constant fields, and the two
//! ways of adjoining a transcendental `y` over them.

mod parametric;
mod tower;

pub use parametric::{DerivationRegime, ParametricRatFunc};
pub use tower::{validate_tower, TowerDescriptor, TowerStep};

use num_traits::Zero;

use crate::arith::{Field, NfElem, Poly, Rat, RatFunc, Ring};
use crate::expr::{Expr, ExprAlgebra};
use crate::{Error, Result};

/// `d/dx` on `Q(a)(x)`; constants of `Q(a)` have derivative zero.
pub fn derive(f: &RatFunc) -> RatFunc {
    f.derivative()
}

/// The two base differential fields of the toolkit.
#[derive(Clone, Debug, PartialEq)]
pub enum BaseDiffField {
    /// A constant field `Q` or `Q(a)` with the zero derivation.
    Constants(crate::arith::FieldRef),
    /// `Q(x)` (over the given constants) with `d/dx`.
    RationalFunctions(crate::arith::FieldRef),
}

impl BaseDiffField {
    pub fn derive(&self, f: &RatFunc) -> Result<RatFunc> {
        match self {
            BaseDiffField::Constants(_) => {
                if f.as_constant().is_none() {
                    return Err(Error::usage(format!("{f} is not a constant")));
                }
                Ok(RatFunc::zero())
            }
            BaseDiffField::RationalFunctions(_) => Ok(derive(f)),
        }
    }

    /// Constants of the derivation: exactly the elements of degree zero.
    pub fn is_constant(&self, f: &RatFunc) -> bool {
        f.as_constant().is_some()
    }
}

/// Folds expressions in `x` into `Q(x)`.
struct RatFuncAlgebra;

impl ExprAlgebra<RatFunc> for RatFuncAlgebra {
    fn num(&self, r: &Rat) -> RatFunc {
        RatFunc::from_rat(r.clone())
    }
    fn var(&self, name: &str) -> Result<RatFunc> {
        if name == "x" {
            Ok(RatFunc::var())
        } else {
            Err(Error::usage(format!("unknown symbol '{name}'")))
        }
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a + b
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a - b
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a * b
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        -a
    }
    fn div(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        a.checked_div(b)
    }
}

/// Evaluates an expression in `x` with rational constants.
pub fn ratfunc_from_expr(e: &Expr) -> Result<RatFunc> {
    e.fold(&RatFuncAlgebra)
}

/// Parses a rational function of `x`, e.g. `"(x^2 + 1)/(2*x)"`.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc> {
    ratfunc_from_expr(&crate::expr::parse_expr(src, &[])?)
}

/// `Q(x)` element from a polynomial with rational coefficients.
pub fn ratfunc_from_poly(p: &Poly<Rat>) -> RatFunc {
    RatFunc::from_poly(p.map(|c| NfElem::rational(c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_derive() {
        let f = parse_ratfunc("1/x").unwrap();
        assert_eq!(derive(&f).to_string(), "-1/x^2");
        let g = parse_ratfunc("(x^2 + 1)/(2*x)").unwrap();
        assert_eq!(g.to_string(), "(x^2 + 1)/(2*x)");
        assert!(parse_ratfunc("1/(x - x)").is_err());
        assert!(parse_ratfunc("a1*x").is_err());
    }

    #[test]
    fn constants_are_degree_zero() {
        let k = BaseDiffField::RationalFunctions(None);
        assert!(k.is_constant(&parse_ratfunc("3/4").unwrap()));
        assert!(!k.is_constant(&parse_ratfunc("x/(x+1)").unwrap()));
        let c = BaseDiffField::Constants(None);
        assert!(c.derive(&parse_ratfunc("x").unwrap()).is_err());
        assert!(c.derive(&parse_ratfunc("5").unwrap()).unwrap().is_zero());
    }
}
