use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{Frac, NfElem, Poly, RatFunc};
use crate::{Error, Result};

/// How the adjoined symbol `y` differentiates.
#[derive(Clone, Debug, PartialEq)]
pub enum DerivationRegime {
    /// `y' = f`: `y` is an integral of `f`.
    Integral(RatFunc),
    /// `y' = f*y`: `y` is the exponential of an integral of `f`.
    ExpIntegral(RatFunc),
}

impl DerivationRegime {
    pub fn integral(f: RatFunc) -> Self {
        DerivationRegime::Integral(f)
    }

    pub fn exp_integral(f: RatFunc) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::validation(
                "the exponential of an integral needs a nonzero integrand",
            ));
        }
        Ok(DerivationRegime::ExpIntegral(f))
    }

    pub fn integrand(&self) -> &RatFunc {
        match self {
            DerivationRegime::Integral(f) | DerivationRegime::ExpIntegral(f) => f,
        }
    }

    /// `y'` as a polynomial in `y`.
    pub fn symbol_derivative(&self) -> Poly<RatFunc> {
        match self {
            DerivationRegime::Integral(f) => Poly::constant(f.clone()),
            DerivationRegime::ExpIntegral(f) => Poly::monomial(f.clone(), 1),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DerivationRegime::Integral(_) => "integral",
            DerivationRegime::ExpIntegral(_) => "exp-integral",
        }
    }
}

impl fmt::Display for DerivationRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationRegime::Integral(g) => write!(f, "y' = {g}"),
            DerivationRegime::ExpIntegral(g) => write!(f, "y' = ({g})*y"),
        }
    }
}

/// Element of `K(y)` with `K = Q(a)(x)`, together with the derivation of `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricRatFunc {
    value: Frac<RatFunc>,
    regime: DerivationRegime,
}

/// Derivative of a polynomial in `y`: coefficients by `d/dx`, plus `dP/dy * w`.
fn derive_poly(p: &Poly<RatFunc>, w: &Poly<RatFunc>) -> Poly<RatFunc> {
    let dx = p.map(|c| c.derivative());
    &dx + &(&p.derivative() * w)
}

impl ParametricRatFunc {
    pub fn new(value: Frac<RatFunc>, regime: DerivationRegime) -> Self {
        ParametricRatFunc { value, regime }
    }

    pub fn from_poly(p: Poly<RatFunc>, regime: DerivationRegime) -> Self {
        Self::new(Frac::from_poly(p), regime)
    }

    /// The adjoined symbol `y` itself.
    pub fn symbol(regime: DerivationRegime) -> Self {
        Self::from_poly(Poly::x(), regime)
    }

    pub fn constant(c: RatFunc, regime: DerivationRegime) -> Self {
        Self::from_poly(Poly::constant(c), regime)
    }

    pub fn value(&self) -> &Frac<RatFunc> {
        &self.value
    }

    pub fn regime(&self) -> &DerivationRegime {
        &self.regime
    }

    fn with(&self, value: Frac<RatFunc>) -> Self {
        Self::new(value, self.regime.clone())
    }

    /// Panics when the regimes differ; the sum would have no derivation.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.regime, o.regime, "adding elements of different extensions");
        self.with(&self.value + &o.value)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.regime, o.regime, "multiplying elements of different extensions");
        self.with(&self.value * &o.value)
    }

    /// `dR/dx + dR/dy * y'` by the quotient rule on numerator and denominator.
    pub fn derive(&self) -> Self {
        let w = self.regime.symbol_derivative();
        let (n, d) = (self.value.num(), self.value.den());
        let dn = derive_poly(n, &w);
        if d.is_one() {
            return self.with(Frac::from_poly(dn));
        }
        let dd = derive_poly(d, &w);
        let num = &(&dn * d) - &(n * &dd);
        self.with(Frac::new(num, d * d).expect("denominator is nonzero"))
    }

    fn substitute(&self, inner: Poly<RatFunc>) -> Self {
        let inner = Frac::from_poly(inner);
        self.with(self.value.compose(&inner).expect("substitution keeps the denominator nonzero"))
    }

    /// `y -> y + rho` for a constant `rho`; an automorphism of the integral regime.
    pub fn substitute_shift(&self, rho: &NfElem) -> Result<Self> {
        if !matches!(self.regime, DerivationRegime::Integral(_)) {
            return Err(Error::usage("y -> y + rho needs the integral regime"));
        }
        let c = RatFunc::constant(rho.clone());
        Ok(self.substitute(Poly::new(vec![c, RatFunc::one()])))
    }

    /// `y -> mu*y` for a nonzero constant `mu`; an automorphism of the
    /// exponential regime.
    pub fn substitute_scale(&self, mu: &NfElem) -> Result<Self> {
        if mu.is_zero() {
            return Err(Error::usage("scaling factor must be nonzero"));
        }
        if !matches!(self.regime, DerivationRegime::ExpIntegral(_)) {
            return Err(Error::usage("y -> mu*y needs the exponential regime"));
        }
        let c = RatFunc::constant(mu.clone());
        Ok(self.substitute(Poly::monomial(c, 1)))
    }

    pub fn render(&self) -> String {
        let (n, d) = (self.value.num(), self.value.den());
        let wrap = |p: &Poly<RatFunc>| {
            let s = p.render("y");
            if p.term_count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if d.is_one() {
            n.render("y")
        } else {
            format!("{}/{}", wrap(n), wrap(d))
        }
    }
}

impl fmt::Display for ParametricRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! arith_op {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr for &ParametricRatFunc {
            type Output = ParametricRatFunc;
            fn $m(self, o: &ParametricRatFunc) -> ParametricRatFunc {
                assert_eq!(self.regime, o.regime, "mixing derivation regimes");
                self.with(std::ops::$tr::$m(&self.value, &o.value))
            }
        }
    };
}
arith_op!(Add, add);
arith_op!(Sub, sub);
arith_op!(Mul, mul);
arith_op!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Ring;
    use crate::diff::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn py(cs: &[&str], regime: &DerivationRegime) -> ParametricRatFunc {
        ParametricRatFunc::from_poly(Poly::new(cs.iter().map(|s| rf(s)).collect()), regime.clone())
    }

    #[test]
    fn symbol_derivatives() {
        let f = rf("x^2 + 1");
        let y = ParametricRatFunc::symbol(DerivationRegime::integral(f.clone()));
        assert_eq!(y.derive().value(), &Frac::from_poly(Poly::constant(f.clone())));
        let y = ParametricRatFunc::symbol(DerivationRegime::exp_integral(f.clone()).unwrap());
        assert_eq!(y.derive().value(), &Frac::from_poly(Poly::monomial(f, 1)));
    }

    #[test]
    fn base_element() {
        let r = DerivationRegime::integral(rf("1"));
        let a = ParametricRatFunc::constant(rf("1/x"), r);
        assert_eq!(a.derive().render(), "-1/x^2");
    }

    #[test]
    fn shift_expands() {
        let r = DerivationRegime::integral(rf("x"));
        let e = py(&["0", "0", "1"], &r);
        assert_eq!(e.substitute_shift(&NfElem::from_int(0)).unwrap(), e);
        assert_eq!(
            e.substitute_shift(&NfElem::from_int(1)).unwrap(),
            py(&["1", "2", "1"], &r)
        );
    }

    #[test]
    fn shift_commutes_with_derive() {
        let r = DerivationRegime::integral(rf("x"));
        let e = py(&["0", "x", "0", "1"], &r);
        let rho = NfElem::from_int(2);
        assert_eq!(
            e.derive().substitute_shift(&rho).unwrap(),
            e.substitute_shift(&rho).unwrap().derive()
        );
    }

    #[test]
    fn scale_commutes_with_derive() {
        let r = DerivationRegime::exp_integral(rf("1")).unwrap();
        let e = ParametricRatFunc::new(
            Frac::new(Poly::constant(rf("x")), Poly::x()).unwrap(),
            r.clone(),
        );
        let mu = NfElem::from_int(5);
        assert_eq!(
            e.derive().substitute_scale(&mu).unwrap(),
            e.substitute_scale(&mu).unwrap().derive()
        );
        let e = py(&["0", "1", "1"], &r);
        assert_eq!(
            e.substitute_scale(&NfElem::from_int(3)).unwrap(),
            py(&["0", "3", "9"], &r)
        );
        assert!(e.substitute_scale(&NfElem::from_int(0)).is_err());
    }

    #[test]
    fn wrong_regime() {
        let r = DerivationRegime::exp_integral(rf("1")).unwrap();
        assert!(py(&["1"], &r).substitute_shift(&NfElem::from_int(1)).is_err());
        assert!(DerivationRegime::exp_integral(rf("0")).is_err());
    }
}
