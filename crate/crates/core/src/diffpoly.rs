//! Differential polynomials `T(u, u', ..., u^(N))` with coefficients in
//! `K = Q(a)(x)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::ring::{join_terms, signed_term};
use crate::arith::{Field, Poly, Rat, RatFunc, Ring};
use crate::expr::{deriv_name, Expr, ExprAlgebra};
use crate::{Error, Result};

/// `prod (u^(i))^(p_i)`, stored as exponents indexed by derivative order with
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DiffMonomial(Vec<u32>);

impl DiffMonomial {
    pub fn one() -> Self {
        DiffMonomial(Vec::new())
    }

    /// `u^(i)`
    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        DiffMonomial(v)
    }

    pub fn from_exponents(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        DiffMonomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree `sum p_i`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Weighted degree `sum i*p_i`.
    pub fn xi_weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// Highest derivative order present.
    pub fn order(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        DiffMonomial((0..n).map(|i| self.exponent(i) + o.exponent(i)).collect())
    }

    fn with_exponent(&self, i: usize, p: u32) -> Self {
        let mut e = self.0.clone();
        if e.len() <= i {
            e.resize(i + 1, 0);
        }
        e[i] = p;
        Self::from_exponents(e)
    }

    /// Factors in ascending order, e.g. `u*u'^2*u^(4)`.
    pub fn render(&self, var: &str) -> String {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(i, &p)| {
                let base = deriv_name(var, i as u32);
                if p == 1 {
                    base
                } else {
                    format!("{base}^{p}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Display order: larger weight, then larger degree, then higher order first.
    fn display_cmp(&self, o: &Self) -> Ordering {
        o.xi_weight()
            .cmp(&self.xi_weight())
            .then(o.degree().cmp(&self.degree()))
            .then(o.0.len().cmp(&self.0.len()))
            .then_with(|| o.0.iter().rev().cmp(self.0.iter().rev()))
    }
}

/// Finite sum of monomials with nonzero coefficients in `K`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<DiffMonomial, RatFunc>,
}

/// Result of the weighted-degree test.
#[derive(Clone, Debug, PartialEq)]
pub struct XiCondition {
    pub holds: bool,
    pub max_weight: u32,
    /// Sum of coefficients of the monomials of maximal weight.
    pub witness: RatFunc,
}

/// Anything `u` can be replaced by: it must embed `K`, multiply, and
/// differentiate.
pub trait DiffValue: Clone {
    fn lift(c: &RatFunc) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn derivative(&self) -> Result<Self>;
}

impl DiffValue for RatFunc {
    fn lift(c: &RatFunc) -> Self {
        c.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn derivative(&self) -> Result<Self> {
        Ok(RatFunc::derivative(self))
    }
}

/// Polynomials over `K` in a constant parameter `c`; used to substitute
/// ansatz families such as `u = c/x`.
impl DiffValue for Poly<RatFunc> {
    fn lift(c: &RatFunc) -> Self {
        Poly::constant(c.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn derivative(&self) -> Result<Self> {
        Ok(self.map(|c| c.derivative()))
    }
}

impl DiffValue for DiffPoly {
    fn lift(c: &RatFunc) -> Self {
        DiffPoly::constant(c.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn derivative(&self) -> Result<Self> {
        Ok(self.total_derivative())
    }
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::term(DiffMonomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(RatFunc::from_int(n))
    }

    pub fn term(m: DiffMonomial, c: RatFunc) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `u^(i)`
    pub fn var(i: usize) -> Self {
        Self::term(DiffMonomial::var(i), RatFunc::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &DiffMonomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> RatFunc {
        self.coeff(&DiffMonomial::one())
    }

    fn add_term(&mut self, m: DiffMonomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// `d/dx`, with `d/dx u^(i) = u^(i+1)`.
    pub fn total_derivative(&self) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.derivative());
            for (i, &p) in m.0.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let lowered = m.with_exponent(i, p - 1);
                let next = lowered.with_exponent(i + 1, lowered.exponent(i + 1) + 1);
                r.add_term(next, c * &RatFunc::from_int(p as i64));
            }
        }
        r
    }

    /// Total degree; undefined for zero.
    pub fn degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(DiffMonomial::degree)
            .max()
            .ok_or_else(|| Error::precondition("the degree of the zero differential polynomial is undefined"))
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Highest derivative order present; `None` when `u` does not occur.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().filter_map(DiffMonomial::order).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(DiffMonomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The weighted-degree test: the coefficients of the monomials of
    /// maximal weight must not sum to zero.
    pub fn xi_condition(&self) -> Result<XiCondition> {
        let max_weight = self
            .terms
            .keys()
            .map(DiffMonomial::xi_weight)
            .max()
            .ok_or_else(|| Error::precondition("the weighted-degree test needs a nonzero polynomial"))?;
        let witness = self
            .terms
            .iter()
            .filter(|(m, _)| m.xi_weight() == max_weight)
            .fold(RatFunc::zero(), |acc, (_, c)| &acc + c);
        Ok(XiCondition {
            holds: !witness.is_zero(),
            max_weight,
            witness,
        })
    }

    /// Terms of maximal weight.
    pub fn top_weight_part(&self) -> Self {
        let Some(w) = self.terms.keys().map(DiffMonomial::xi_weight).max() else {
            return Self::zero();
        };
        DiffPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.xi_weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces `u^(i)` by the `i`-th derivative of `v`.
    pub fn substitute<V: DiffValue>(&self, v: &V) -> Result<V> {
        let n = self.order().map_or(0, |o| o + 1);
        let mut derivs = Vec::with_capacity(n);
        if n > 0 {
            derivs.push(v.clone());
            for i in 1..n {
                let d = derivs[i - 1].derivative()?;
                derivs.push(d);
            }
        }
        self.eval_with(&derivs)
    }

    /// Replaces `u^(i)` by `values[i]`, treating them as independent.
    pub fn eval_with<V: DiffValue>(&self, values: &[V]) -> Result<V> {
        let mut acc = V::lift(&RatFunc::zero());
        // cache powers per order
        let mut powers: Vec<Vec<V>> = values.iter().map(|v| vec![V::lift(&RatFunc::one()), v.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = V::lift(c);
            for (i, &p) in m.0.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let slot = powers
                    .get_mut(i)
                    .ok_or_else(|| Error::precondition(format!("no value supplied for derivative order {i}")))?;
                while slot.len() <= p as usize {
                    let next = slot.last().unwrap().mul(&values[i]);
                    slot.push(next);
                }
                t = t.mul(&slot[p as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Rendering with the dependent variable named `var`.
    pub fn render(&self, var: &str) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.display_cmp(b.0));
        join_terms(terms.into_iter().map(|(m, c)| signed_term(c, &m.render(var))))
    }

    /// `render(var) = 0`
    pub fn equation(&self, var: &str) -> String {
        format!("{} = 0", self.render(var))
    }

    /// Divides every coefficient by the coefficient of `m`.
    pub fn normalized_by(&self, m: &DiffMonomial) -> Result<Self> {
        let c = self.coeff(m);
        let inv = c
            .inv()
            .ok_or_else(|| Error::precondition("normalizing monomial is absent"))?;
        Ok(self.scale(&inv))
    }

    /// Parses an expression in `x` and the dependent variable `var`.
    pub fn from_expr(e: &Expr, var: &str) -> Result<Self> {
        e.fold(&DiffPolyAlgebra { var })
    }
}

struct DiffPolyAlgebra<'a> {
    var: &'a str,
}

impl ExprAlgebra<DiffPoly> for DiffPolyAlgebra<'_> {
    fn num(&self, r: &Rat) -> DiffPoly {
        DiffPoly::constant(RatFunc::from_rat(r.clone()))
    }
    fn var(&self, name: &str) -> Result<DiffPoly> {
        if name == self.var {
            Ok(DiffPoly::var(0))
        } else if name == "x" {
            Ok(DiffPoly::constant(RatFunc::var()))
        } else {
            Err(Error::usage(format!("unknown symbol '{name}'")))
        }
    }
    fn deriv(&self, name: &str, order: u32) -> Result<DiffPoly> {
        if name == self.var {
            Ok(DiffPoly::var(order as usize))
        } else {
            Err(Error::usage(format!("unknown symbol '{name}'")))
        }
    }
    fn add(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a + b
    }
    fn sub(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a - b
    }
    fn mul(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a * b
    }
    fn neg(&self, a: &DiffPoly) -> DiffPoly {
        -a
    }
    fn div(&self, a: &DiffPoly, b: &DiffPoly) -> Result<DiffPoly> {
        if b.order().is_some() {
            return Err(Error::usage(format!(
                "division by an expression containing {}",
                self.var
            )));
        }
        let inv = b.constant_term().inv().ok_or(Error::DivisionByZero)?;
        Ok(a.scale(&inv))
    }
}

impl<'a> Add<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn add(self, o: &'a DiffPoly) -> DiffPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
}

impl<'a> Sub<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn sub(self, o: &'a DiffPoly) -> DiffPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }
}

impl<'a> Mul<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn mul(self, o: &'a DiffPoly) -> DiffPoly {
        let mut r = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("u"))
    }
}
