//! The `D_n` tower, generalized Riccati equations, and reduction of order.
//!
//! With `u = y'/y` every derivative of `y` is a multiple of `y`:
//! `y^(k) = D_k(u) * y`, where `D_0 = 1` and `D_{k+1} = D_k' + u*D_k`.
//! A linear equation `sum a_k y^(n-k) = 0` therefore becomes the order
//! `n - 1` equation `sum a_k D_{n-k}(u) = 0` for its logarithmic derivatives.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::arith::{Field, RatFunc, Ring};
use crate::diffpoly::{DiffMonomial, DiffPoly};
use crate::{Error, Result};

/// `y^(n) + a_1 y^(n-1) + ... + a_n y = 0`, stored monic.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearODE {
    coeffs: Vec<RatFunc>,
}

impl LinearODE {
    /// From `a_1..a_n` of the monic form.
    pub fn new(coeffs: Vec<RatFunc>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::validation("a linear equation needs order at least 1"));
        }
        Ok(LinearODE { coeffs })
    }

    /// From `c_0 y^(n) + c_1 y^(n-1) + ... + c_n y`; divides by `c_0`.
    pub fn from_leading_form(c: Vec<RatFunc>) -> Result<Self> {
        let Some(lead) = c.first() else {
            return Err(Error::validation("empty equation"));
        };
        let inv = lead
            .inv()
            .ok_or_else(|| Error::validation("leading coefficient is zero"))?;
        Self::new(c[1..].iter().map(|a| a * &inv).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_k` with `a_0 = 1`.
    pub fn a(&self, k: usize) -> RatFunc {
        if k == 0 {
            RatFunc::one()
        } else {
            self.coeffs[k - 1].clone()
        }
    }

    pub fn coefficients(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// True when every coefficient is a constant.
    pub fn has_constant_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_constant().is_some())
    }

    /// The left-hand side as a differential polynomial in `y`.
    pub fn operator(&self) -> DiffPoly {
        let n = self.order();
        (0..=n).fold(DiffPoly::zero(), |acc, k| {
            &acc + &DiffPoly::var(n - k).scale(&self.a(k))
        })
    }

    /// Applies `f` to every coefficient, e.g. to embed them in a larger field.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        LinearODE {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn render(&self, var: &str) -> String {
        self.operator().equation(var)
    }
}

impl fmt::Display for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("y"))
    }
}

/// `P(y, y', ..., y^(n)) = 0` with `P` homogeneous; `x_i` is stored as `u^(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousEq {
    p: DiffPoly,
}

impl HomogeneousEq {
    pub fn new(p: DiffPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::validation("the zero polynomial defines no equation"));
        }
        if !p.is_homogeneous() {
            return Err(Error::validation(format!(
                "{} is not homogeneous",
                p.render("y")
            )));
        }
        match p.order() {
            None => return Err(Error::validation("the equation does not involve y")),
            Some(0) => return Err(Error::validation("the equation involves no derivative of y")),
            Some(_) => {}
        }
        Ok(HomogeneousEq { p })
    }

    pub fn poly(&self) -> &DiffPoly {
        &self.p
    }

    pub fn degree(&self) -> u32 {
        self.p.degree().unwrap()
    }

    pub fn order(&self) -> usize {
        self.p.order().unwrap()
    }
}

impl fmt::Display for HomogeneousEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.p.equation("y"))
    }
}

fn tower() -> &'static Mutex<Vec<DiffPoly>> {
    static CACHE: OnceLock<Mutex<Vec<DiffPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![DiffPoly::one()]))
}

/// `D_n` with `D_0 = 1`, `D_{k+1} = dD_k/dx + u*D_k`.
pub fn d(n: usize) -> DiffPoly {
    let mut cache = tower().lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n {
        let last = cache.last().unwrap();
        let next = &last.total_derivative() + &(&DiffPoly::var(0) * last);
        cache.push(next);
    }
    cache[n].clone()
}

/// `D_n + a_1 D_{n-1} + ... + a_n D_0`.
pub fn riccati_of_linear(l: &LinearODE) -> DiffPoly {
    let n = l.order();
    (0..=n).fold(DiffPoly::zero(), |acc, k| &acc + &d(n - k).scale(&l.a(k)))
}

/// `P(D_0, D_1, ..., D_n)`.
pub fn riccati_of_homogeneous(h: &HomogeneousEq) -> DiffPoly {
    let ds: Vec<DiffPoly> = (0..=h.order()).map(d).collect();
    h.poly().eval_with(&ds).expect("one value per order")
}

/// The Riccati equation evaluated at `u`.
pub fn log_derivative_residual(l: &LinearODE, u: &RatFunc) -> RatFunc {
    riccati_of_linear(l)
        .substitute(u)
        .expect("rational functions differentiate without truncation")
}

/// Independent route: rewrite `y^(k) -> g_k y` step by step via
/// `g_{k+1} = g_k' + u*g_k` and sum `a_k g_{n-k}`.
pub fn rewrite_residual(l: &LinearODE, u: &RatFunc) -> RatFunc {
    let n = l.order();
    let mut g = vec![RatFunc::one()];
    for k in 0..n {
        let next = &g[k].derivative() + &(u * &g[k]);
        g.push(next);
    }
    (0..=n).fold(RatFunc::zero(), |acc, k| &acc + &(&l.a(k) * &g[n - k]))
}

/// True iff `u` solves the Riccati equation of `l`, i.e. `exp(int u)` solves `l`.
pub fn verify_log_derivative_correspondence(l: &LinearODE, u: &RatFunc) -> bool {
    let r = log_derivative_residual(l, u);
    debug_assert_eq!(r, rewrite_residual(l, u));
    r.is_zero()
}

/// Outcome of reducing the order with a known solution `y1 = exp(int u1)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Reduced {
    /// Order one: every solution is a constant multiple of `y1`.
    Trivial,
    /// Monic equation of order `n - 1` for `w = (y/y1)'`.
    Equation(LinearODE),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionOfOrder {
    pub u1: RatFunc,
    /// Coefficients `b_1..b_{n-1}` as differential polynomials in `u1`.
    pub symbolic: Vec<DiffPoly>,
    pub reduced: Reduced,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Coefficients `c_0..c_n` of `L(y1*v) = y1 * sum c_j v^(j)`, as differential
/// polynomials in `u1`: `c_j = sum_{k>=j} a_{n-k} C(k,j) D_{k-j}`.
pub fn reduction_coefficients(l: &LinearODE) -> Vec<DiffPoly> {
    let n = l.order();
    (0..=n)
        .map(|j| {
            (j..=n).fold(DiffPoly::zero(), |acc, k| {
                let c = &l.a(n - k) * &RatFunc::from_int(binomial(k, j));
                &acc + &d(k - j).scale(&c)
            })
        })
        .collect()
}

/// Reduces `l` by the solution `y1` with logarithmic derivative `u1`.
pub fn reduce_order(l: &LinearODE, u1: &RatFunc) -> Result<ReductionOfOrder> {
    let n = l.order();
    let cs = reduction_coefficients(l);
    let c0 = cs[0].substitute(u1)?;
    if !c0.is_zero() {
        return Err(Error::Precondition(format!(
            "u1 = {u1} does not solve the Riccati equation (residual {c0})"
        )));
    }
    debug_assert_eq!(cs[n], DiffPoly::one());
    // w^(n-1) + b_1 w^(n-2) + ... + b_{n-1} w with b_i = c_{n-i}
    let symbolic: Vec<DiffPoly> = (1..n).map(|i| cs[n - i].clone()).collect();
    let reduced = if n == 1 {
        Reduced::Trivial
    } else {
        let b = symbolic
            .iter()
            .map(|p| p.substitute(u1))
            .collect::<Result<Vec<_>>>()?;
        Reduced::Equation(LinearODE::new(b)?)
    };
    Ok(ReductionOfOrder {
        u1: u1.clone(),
        symbolic,
        reduced,
    })
}

/// Leading monomial `u^n` of `D_n`, used by the order checks.
pub fn top_monomial(n: usize) -> DiffMonomial {
    DiffMonomial::from_exponents(vec![n as u32])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::parse_ratfunc;
    use crate::expr::parse_expr;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn lin(cs: &[&str]) -> LinearODE {
        LinearODE::new(cs.iter().map(|s| rf(s)).collect()).unwrap()
    }

    fn dp(s: &str) -> DiffPoly {
        DiffPoly::from_expr(&parse_expr(s, &["u"]).unwrap(), "u").unwrap()
    }

    #[test]
    fn tower_values() {
        assert_eq!(d(0), DiffPoly::one());
        assert_eq!(d(2), dp("u' + u^2"));
        assert_eq!(d(3), dp("u'' + 3*u*u' + u^3"));
        assert_eq!(d(3).render("u"), "u'' + 3*u*u' + u^3");
    }

    #[test]
    fn linear_riccati() {
        let l = lin(&["-3", "2"]);
        assert_eq!(riccati_of_linear(&l).equation("u"), "u' + u^2 - 3*u + 2 = 0");
        assert_eq!(riccati_of_linear(&lin(&["x"])), dp("u + x"));
        assert_eq!(l.to_string(), "y'' - 3*y' + 2*y = 0");
    }

    #[test]
    fn homogeneous_riccati() {
        let h = |s: &str| HomogeneousEq::new(dp(s)).unwrap();
        assert_eq!(riccati_of_homogeneous(&h("u*u'' - u'^2")), dp("u'"));
        assert_eq!(riccati_of_homogeneous(&h("u'")), dp("u"));
        assert_eq!(riccati_of_homogeneous(&h("u''^2")), dp("(u' + u^2)^2"));
        assert!(HomogeneousEq::new(dp("u'' + 1")).is_err());
    }

    #[test]
    fn log_derivative() {
        let l = lin(&["-3", "2"]);
        assert!(verify_log_derivative_correspondence(&l, &rf("1")));
        assert!(!verify_log_derivative_correspondence(&l, &rf("0")));
        let euler = lin(&["1/x", "-1/x^2"]);
        assert!(verify_log_derivative_correspondence(&euler, &rf("1/x")));
        assert_eq!(rewrite_residual(&euler, &rf("x")), log_derivative_residual(&euler, &rf("x")));
    }

    #[test]
    fn reduction() {
        let r = reduce_order(&lin(&["-3", "2"]), &rf("1")).unwrap();
        assert_eq!(r.reduced, Reduced::Equation(lin(&["-1"])));
        assert_eq!(r.symbolic, vec![dp("2*u - 3")]);
        let r = reduce_order(&lin(&["1/x", "-1/x^2"]), &rf("1/x")).unwrap();
        assert_eq!(r.reduced, Reduced::Equation(lin(&["3/x"])));
        assert!(matches!(
            reduce_order(&lin(&["-3", "2"]), &rf("0")),
            Err(Error::Precondition(_))
        ));
        let r = reduce_order(&lin(&["-2"]), &rf("2")).unwrap();
        assert_eq!(r.reduced, Reduced::Trivial);
    }

    #[test]
    fn general_second_order_reduction() {
        // y'' + a1 y' + a2 y: the w-coefficient is 2*u1 + a1
        let l = lin(&["x", "x^2 + 1"]);
        let cs = reduction_coefficients(&l);
        assert_eq!(cs[1], dp("2*u + x"));
        assert_eq!(cs[0], riccati_of_linear(&l));
    }
}
