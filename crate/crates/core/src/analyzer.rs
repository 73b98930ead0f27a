//! Leading-term analysis of `u^n = Q`, the weighted-degree gate for
//! homogeneous equations, rational solutions of Riccati equations, and the
//! reduction pipeline for linear equations.
//!
//! Nothing here decides solvability by quadratures in general. The leading
//! term engine checks the case split that forces a solution in a quadrature
//! extension down to an algebraic one; the pipeline searches a few decidable
//! classes and reports honestly when they come up empty.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::factor::{Splitter, DEFAULT_FACTOR_BOUND};
use crate::arith::linalg::nullspace;
use crate::arith::{
    adjoin_root, factor_over_field, rat, Embedding, Field, FieldRef, Frac, NfElem, Poly, Rat, RatFunc, Ring,
};
use crate::diff::DerivationRegime;
use crate::diffpoly::{DiffMonomial, DiffPoly, XiCondition};
use crate::puiseux::{substitute_into_diffpoly, LeadingTerm, PuiseuxSeries};
use crate::riccati::{
    reduce_order, riccati_of_homogeneous, riccati_of_linear, rewrite_residual, HomogeneousEq, LinearODE, Reduced,
};
use crate::{Error, Result};

/// `u^n = Q(u, u', ...)` with `deg Q < n`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationForm2 {
    n: u32,
    q: DiffPoly,
}

fn u_pow(n: u32) -> DiffMonomial {
    DiffMonomial::from_exponents(vec![n])
}

impl EquationForm2 {
    pub fn new(n: u32, q: DiffPoly) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("the power of u must be at least 1"));
        }
        if !q.is_zero() && q.degree()? >= n {
            return Err(Error::validation(format!(
                "right-hand side {} has degree {} but must stay below {n}",
                q.render("u"),
                q.degree()?
            )));
        }
        Ok(EquationForm2 { n, q })
    }

    /// From `T = 0` whose part of top degree is a single term `c*u^n`.
    pub fn from_poly(t: &DiffPoly) -> Result<Self> {
        let n = t.degree()?;
        let top = t.homogeneous_part(n);
        let m = u_pow(n);
        let c = top.coeff(&m);
        if c.is_zero() || top.terms().count() != 1 {
            return Err(Error::validation(format!(
                "top-degree part {} is not a multiple of u^{n}",
                top.render("u")
            )));
        }
        let inv = c.inv().expect("nonzero");
        let rest = &t.scale(&inv) - &DiffPoly::term(m, RatFunc::one());
        Self::new(n, -&rest)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> &DiffPoly {
        &self.q
    }

    /// `T = u^n - Q`.
    pub fn t(&self) -> DiffPoly {
        &DiffPoly::term(u_pow(self.n), RatFunc::one()) - &self.q
    }

    pub fn render(&self) -> String {
        let lhs = if self.n == 1 { "u".to_string() } else { format!("u^{}", self.n) };
        let rhs = if self.q.is_zero() { "0".to_string() } else { self.q.render("u") };
        format!("{lhs} = {rhs}")
    }
}

impl fmt::Display for EquationForm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// What the leading term of a candidate series says about `u^n = Q`.
#[derive(Clone, Debug, PartialEq)]
pub enum LeadingTermVerdict {
    /// `T_0 = 0`, so `u = 0` already solves the equation.
    ZeroSolution,
    /// Leading degree `k/p > 0`: `T(s)` keeps the term `(z_k)^n t^(n k/p)`.
    PositiveDegreeImpossible { exponent: Rat, witness: RatFunc },
    /// Leading degree below zero (or `s = 0`): the constant term `T_0` survives.
    NegativeDegreeImpossible { witness: RatFunc },
    /// Leading degree zero: `z_0` solves the equation iff the residual vanishes.
    DegreeZeroCandidate { z0: RatFunc, residual: RatFunc },
}

impl LeadingTermVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            LeadingTermVerdict::ZeroSolution => "zero-solution",
            LeadingTermVerdict::PositiveDegreeImpossible { .. } => "positive-degree-impossible",
            LeadingTermVerdict::NegativeDegreeImpossible { .. } => "negative-degree-impossible",
            LeadingTermVerdict::DegreeZeroCandidate { .. } => "degree-zero-candidate",
        }
    }
}

fn top_exponent(s: &PuiseuxSeries) -> Option<Rat> {
    match s.leading_term() {
        LeadingTerm::Term { exponent, .. } => Some(exponent),
        LeadingTerm::Zero { .. } => None,
    }
}

/// Classifies a series solution candidate `s` of `u^n = Q` by its leading
/// degree, computing the term that rules the degree out or the residual at
/// degree zero. Every claim is checked against the substituted series.
pub fn leading_term_analysis(
    e: &EquationForm2,
    s: &PuiseuxSeries,
    regime: &DerivationRegime,
) -> Result<LeadingTermVerdict> {
    let t = e.t();
    let t0 = t.constant_term();
    if t0.is_zero() {
        return Ok(LeadingTermVerdict::ZeroSolution);
    }
    let s = s.clone().with_regime(Some(regime.clone()));
    let (k, c) = match s.leading_term() {
        LeadingTerm::Zero { floor: None } => {
            return Ok(LeadingTermVerdict::NegativeDegreeImpossible { witness: t0 });
        }
        LeadingTerm::Zero { floor: Some(f) } => {
            return Err(Error::Truncation {
                required: "a nonzero leading term".into(),
                available: format!("no terms above t^({f})"),
            });
        }
        LeadingTerm::Term { exponent, coeff } => (exponent, coeff),
    };
    let zero = Rat::zero();
    if k > zero {
        let target = &k * Rat::from_integer(e.n().into());
        let r = substitute_into_diffpoly(&t, &s, Some(&target))?;
        let witness = c.pow(e.n() as i64).expect("nonzero leading coefficient");
        let at = r.coeff(&target).expect("known down to the target");
        if top_exponent(&r) != Some(target.clone()) || at != witness {
            return Err(Error::Certification(format!(
                "T(s) does not lead with ({c})^{} t^({target})",
                e.n()
            )));
        }
        return Ok(LeadingTermVerdict::PositiveDegreeImpossible {
            exponent: target,
            witness,
        });
    }
    if k < zero {
        let rest = &t - &DiffPoly::constant(t0.clone());
        let r = substitute_into_diffpoly(&rest, &s, Some(&zero))?;
        if top_exponent(&r).is_some_and(|x| x >= zero) {
            return Err(Error::Certification(
                "(T - T_0)(s) has a term of nonnegative degree".into(),
            ));
        }
        return Ok(LeadingTermVerdict::NegativeDegreeImpossible { witness: t0 });
    }
    let residual = t.substitute(&c)?;
    let r = substitute_into_diffpoly(&t, &s, Some(&zero))?;
    if top_exponent(&r).is_some_and(|x| x > zero) || r.coeff(&zero).as_ref() != Some(&residual) {
        return Err(Error::Certification(format!(
            "degree-zero coefficient of T(s) differs from T(z0) = {residual}"
        )));
    }
    Ok(LeadingTermVerdict::DegreeZeroCandidate { z0: c, residual })
}

/// Weighted-degree test of a homogeneous equation and, when it holds, its
/// Riccati equation solved for the top power of `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct XiGate {
    pub condition: XiCondition,
    pub riccati: Option<DiffPoly>,
    pub shape: Option<EquationForm2>,
}

pub fn xi_gate(p: &DiffPoly) -> Result<XiGate> {
    let h = HomogeneousEq::new(p.clone())?;
    let condition = h.poly().xi_condition()?;
    if !condition.holds {
        return Ok(XiGate {
            condition,
            riccati: None,
            shape: None,
        });
    }
    let r = riccati_of_homogeneous(&h);
    let shape = EquationForm2::from_poly(&r)
        .map_err(|e| Error::Certification(format!("Riccati equation {} lost its shape: {e}", r.render("u"))))?;
    if shape.n() != condition.max_weight {
        return Err(Error::Certification(format!(
            "top power u^{} differs from the maximal weight {}",
            shape.n(),
            condition.max_weight
        )));
    }
    Ok(XiGate {
        condition,
        riccati: Some(r),
        shape: Some(shape),
    })
}

/// Families of candidate logarithmic derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SearchClass {
    /// `u` a constant algebraic number.
    Constants,
    /// `u = c/x` with `c` constant.
    EulerPole,
    /// Every rational `u` for `u' + u^2 + a*u + b = 0`.
    RationalOrder2,
}

impl SearchClass {
    pub const ALL: [SearchClass; 3] = [SearchClass::Constants, SearchClass::EulerPole, SearchClass::RationalOrder2];

    pub fn name(&self) -> &'static str {
        match self {
            SearchClass::Constants => "constants",
            SearchClass::EulerPole => "euler",
            SearchClass::RationalOrder2 => "rational2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown search class '{s}' (expected constants, euler or rational2)")))
    }
}

impl fmt::Display for SearchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A verified solution `u`; `embedding` carries the coefficient field of
/// the equation into the field of `u`.
#[derive(Clone, Debug)]
pub struct RiccatiSolution {
    pub u: RatFunc,
    pub embedding: Embedding,
}

fn coefficient_field<'a>(fs: impl IntoIterator<Item = &'a RatFunc>) -> FieldRef {
    fs.into_iter()
        .flat_map(|f| f.num().coeffs().iter().chain(f.den().coeffs()))
        .find_map(|c| c.field().clone())
}

fn embed(f: &RatFunc, e: &Embedding) -> RatFunc {
    f.map_coeffs(|c| e.apply(c))
}

fn canonical_key(u: &RatFunc) -> (bool, usize, String) {
    let s = u.to_string();
    (coefficient_field([u]).is_some(), s.len(), s)
}

fn x_power(k: usize) -> RatFunc {
    Frac::from_poly(Poly::monomial(NfElem::one(), k))
}

fn poly_lcm(a: &Poly<NfElem>, b: &Poly<NfElem>) -> Poly<NfElem> {
    let g = Poly::gcd(a, b);
    (a * b).exact_div(&g).expect("gcd divides").monic()
}

/// Numerators over a common denominator.
fn common_numerators(fs: &[RatFunc]) -> Vec<Poly<NfElem>> {
    let den = fs.iter().fold(Poly::<NfElem>::one(), |acc, f| poly_lcm(&acc, f.den()));
    fs.iter()
        .map(|f| f.num() * &den.exact_div(f.den()).expect("lcm is a multiple"))
        .collect()
}

/// Constants `c` making `sum p_i c^i` vanish identically in `x`. Roots of an
/// irreducible factor of degree above one live in its stem field; all roots
/// of the factor lying in that field are returned.
fn constant_roots(p: &Poly<RatFunc>, base: &FieldRef, bound: usize) -> Result<Vec<(NfElem, Embedding)>> {
    let id = Embedding::identity(base.clone());
    if p.is_zero() {
        return Ok(vec![(NfElem::zero(), id)]);
    }
    let polys = common_numerators(p.coeffs());
    let top = polys.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let g = (0..=top).fold(Poly::<NfElem>::zero(), |acc, k| {
        Poly::gcd(&acc, &Poly::new(polys.iter().map(|q| q.coeff(k)).collect()))
    });
    if g.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let linear_roots = |fs: Vec<(Poly<NfElem>, u32)>| -> Vec<NfElem> {
        fs.into_iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, _)| -(f.coeff(0) / f.coeff(1)))
            .collect()
    };
    let mut out = Vec::new();
    for (f, _) in factor_over_field(&g, base, DEFAULT_FACTOR_BOUND)? {
        if f.degree() == Some(1) {
            out.push((-(f.coeff(0) / f.coeff(1)), id.clone()));
            continue;
        }
        let adj = adjoin_root(base, &f, bound)?;
        let fe = f.map(|c| adj.embedding.apply(c));
        for r in linear_roots(factor_over_field(&fe, &adj.field, DEFAULT_FACTOR_BOUND)?) {
            out.push((r, adj.embedding.clone()));
        }
    }
    Ok(out)
}

/// Solutions of the Riccati equation `r = 0` in one search class, verified
/// by substitution and sorted canonically.
pub fn find_riccati_solutions(r: &DiffPoly, class: SearchClass, bound: usize) -> Result<Vec<RiccatiSolution>> {
    if r.is_zero() {
        return Err(Error::validation("the zero polynomial defines no equation"));
    }
    let base = coefficient_field(r.terms().map(|(_, c)| c));
    let found: Vec<RiccatiSolution> = match class {
        SearchClass::Constants => {
            let p = r.substitute(&Poly::<RatFunc>::x())?;
            constant_roots(&p, &base, bound)?
                .into_iter()
                .map(|(c, embedding)| RiccatiSolution {
                    u: RatFunc::constant(c),
                    embedding,
                })
                .collect()
        }
        SearchClass::EulerPole => {
            let inv_x = RatFunc::one() / RatFunc::var();
            let p = r.substitute(&Poly::monomial(inv_x.clone(), 1))?;
            constant_roots(&p, &base, bound)?
                .into_iter()
                .map(|(c, embedding)| RiccatiSolution {
                    u: &RatFunc::constant(c) * &inv_x,
                    embedding,
                })
                .collect()
        }
        SearchClass::RationalOrder2 => rational_order2(r, &base, bound)?,
    };
    let mut out: Vec<RiccatiSolution> = Vec::new();
    for s in found {
        let re = r.map_coeffs(|c| embed(c, &s.embedding));
        if re.substitute(&s.u)?.is_zero() && !out.iter().any(|o| o.u == s.u) {
            out.push(s);
        }
    }
    out.sort_by_cached_key(|s| canonical_key(&s.u));
    Ok(out)
}

/// `a` and `b` of `u' + u^2 + a*u + b`, after dividing by the coefficient of `u'`.
fn classical_coefficients(r: &DiffPoly) -> Result<(RatFunc, RatFunc)> {
    let shape_error = || {
        Error::usage(format!(
            "rational2 search needs a classical Riccati equation u' + u^2 + a*u + b = 0, got {}",
            r.equation("u")
        ))
    };
    if r.order() != Some(1) {
        return Err(shape_error());
    }
    let r = r.normalized_by(&DiffMonomial::var(1)).map_err(|_| shape_error())?;
    let allowed = [DiffMonomial::var(1), u_pow(2), u_pow(1), DiffMonomial::one()];
    if r.terms().any(|(m, _)| !allowed.contains(m)) || !r.coeff(&u_pow(2)).is_one() {
        return Err(shape_error());
    }
    Ok((r.coeff(&u_pow(1)), r.constant_term()))
}

/// Either a value or a polynomial whose roots the current field lacks.
type Grow<T> = Result<std::result::Result<T, Poly<NfElem>>>;

macro_rules! grow {
    ($e:expr) => {
        match $e? {
            Ok(v) => v,
            Err(m) => return Ok(Err(m)),
        }
    };
}

fn roots_in(m: &Poly<NfElem>, field: &FieldRef) -> Grow<Vec<NfElem>> {
    let fs = factor_over_field(m, field, DEFAULT_FACTOR_BOUND)?;
    if let Some((f, _)) = fs.iter().find(|(f, _)| f.degree().unwrap() > 1) {
        return Ok(Err(f.clone()));
    }
    Ok(Ok(fs.iter().map(|(f, _)| -(f.coeff(0) / f.coeff(1))).collect()))
}

fn sqrt_in(q: &NfElem, field: &FieldRef) -> Grow<NfElem> {
    if q.is_zero() {
        return Ok(Ok(NfElem::zero()));
    }
    let m = Poly::new(vec![-q.clone(), NfElem::zero(), NfElem::one()]);
    let roots = grow!(roots_in(&m, field));
    Ok(Ok(roots[0].clone()))
}

/// First `count` coefficients of `n/h` as a power series.
fn series_div(n: &[NfElem], h: &[NfElem], count: usize) -> Vec<NfElem> {
    let h0 = h[0].inv().expect("nonzero constant term");
    let mut q: Vec<NfElem> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = n.get(k).cloned().unwrap_or_else(NfElem::zero);
        for i in 1..=k.min(h.len().saturating_sub(1)) {
            acc = acc - h[i].clone() * q[k - i].clone();
        }
        q.push(acc * h0.clone());
    }
    q
}

/// Coefficients of `(x-c)^(-m)`, `(x-c)^(-m+1)`, ... of `r` at a pole of order `m`.
fn laurent_at(r: &RatFunc, c: &NfElem, m: usize, count: usize) -> Vec<NfElem> {
    let shift = Poly::new(vec![c.clone(), NfElem::one()]);
    let n = r.num().compose(&shift);
    let d = r.den().compose(&shift);
    series_div(n.coeffs(), &d.coeffs()[m..], count)
}

/// Square-root principal part and the two exponents at a pole or at infinity.
struct Local {
    sqrt_part: RatFunc,
    alpha: [NfElem; 2],
}

struct PoleData {
    at: NfElem,
    local: Local,
    both_signs: bool,
}

fn half(e: NfElem) -> NfElem {
    e * NfElem::rational(rat(1, 2))
}

/// Exponents `1/2 +- sqrt(1 + 4b)/2` of a double pole with leading coefficient `b`.
fn double_pole(b: &NfElem, field: &FieldRef) -> Grow<(Local, bool)> {
    let s = grow!(sqrt_in(&(NfElem::one() + NfElem::from_int(4) * b.clone()), field));
    let h = NfElem::rational(rat(1, 2));
    let local = Local {
        sqrt_part: RatFunc::zero(),
        alpha: [h.clone() + half(s.clone()), h - half(s.clone())],
    };
    Ok(Ok((local, !s.is_zero())))
}

/// Square root `A_0, A_1, ...` of a series whose leading coefficient is
/// `l[0]`, matched on `count` coefficients, and the next coefficient of
/// `l - A^2`.
fn sqrt_series(l: &[NfElem], count: usize, field: &FieldRef) -> Grow<(Vec<NfElem>, NfElem)> {
    let a = grow!(sqrt_in(&l[0], field));
    let two_a_inv = (NfElem::from_int(2) * a.clone()).inv().expect("pole coefficient is nonzero");
    let mut big_a = vec![a];
    for j in 1..count {
        let cross = (1..j).fold(NfElem::zero(), |acc, i| acc + big_a[i].clone() * big_a[j - i].clone());
        big_a.push((l[j].clone() - cross) * two_a_inv.clone());
    }
    let j = count;
    let sq = (0..=j)
        .filter(|&i| i < count && j - i < count)
        .fold(NfElem::zero(), |acc, i| acc + big_a[i].clone() * big_a[j - i].clone());
    Ok(Ok((big_a, l[j].clone() - sq)))
}

/// Local data at the poles and at infinity for `v' + v^2 = r`; `None` when
/// some order rules out rational solutions.
fn kovacic_data(r: &RatFunc, field: &FieldRef) -> Grow<Option<(Vec<PoleData>, Local, bool)>> {
    let x = RatFunc::var();
    let mut poles = Vec::new();
    for (f, m) in r.den().square_free_decomposition() {
        let m = m as usize;
        for c in grow!(roots_in(&f, field)) {
            let data = match m {
                1 => PoleData {
                    at: c,
                    local: Local {
                        sqrt_part: RatFunc::zero(),
                        alpha: [NfElem::one(), NfElem::one()],
                    },
                    both_signs: false,
                },
                2 => {
                    let b = laurent_at(r, &c, 2, 1).remove(0);
                    let (local, both_signs) = grow!(double_pole(&b, field));
                    PoleData { at: c, local, both_signs }
                }
                m if m % 2 == 1 => return Ok(Ok(None)),
                m => {
                    let nu = m / 2;
                    let l = laurent_at(r, &c, m, nu);
                    let (a, b) = grow!(sqrt_series(&l, nu - 1, field));
                    let t = &x - &RatFunc::constant(c.clone());
                    let sqrt_part = a.iter().enumerate().fold(RatFunc::zero(), |acc, (j, aj)| {
                        let p = t.pow(-((nu - j) as i64)).expect("x - c is nonzero");
                        &acc + &(&RatFunc::constant(aj.clone()) * &p)
                    });
                    let ratio = b / a[0].clone();
                    let nu = NfElem::from_int(nu as i64);
                    let local = Local {
                        sqrt_part,
                        alpha: [half(ratio.clone() + nu.clone()), half(nu - ratio)],
                    };
                    PoleData {
                        at: c,
                        local,
                        both_signs: true,
                    }
                }
            };
            poles.push(data);
        }
    }
    let (inf, both) = if r.is_zero() {
        (
            Local {
                sqrt_part: RatFunc::zero(),
                alpha: [NfElem::zero(), NfElem::one()],
            },
            true,
        )
    } else {
        let o = r.den().degree().unwrap() as i64 - r.num().degree().unwrap() as i64;
        if o > 2 {
            (
                Local {
                    sqrt_part: RatFunc::zero(),
                    alpha: [NfElem::zero(), NfElem::one()],
                },
                true,
            )
        } else if o == 2 {
            let b = r.num().lead().unwrap().clone() / r.den().lead().unwrap().clone();
            grow!(double_pole(&b, field))
        } else if o % 2 == 0 {
            let nu = (-o / 2) as usize;
            let rev = |p: &Poly<NfElem>| p.coeffs().iter().rev().cloned().collect::<Vec<_>>();
            let s = series_div(&rev(r.num()), &rev(r.den()), nu + 2);
            let (a, b) = grow!(sqrt_series(&s, nu + 1, field));
            let sqrt_part = a
                .iter()
                .enumerate()
                .fold(RatFunc::zero(), |acc, (j, aj)| &acc + &(&RatFunc::constant(aj.clone()) * &x_power(nu - j)));
            let ratio = b / a[0].clone();
            let nu = NfElem::from_int(nu as i64);
            (
                Local {
                    sqrt_part,
                    alpha: [half(ratio.clone() - nu.clone()), half(-ratio - nu)],
                },
                true,
            )
        } else {
            return Ok(Ok(None));
        }
    };
    Ok(Ok(Some((poles, inf, both))))
}

/// Monic `P` of degree `d` with `P'' + 2 theta P' + (theta' + theta^2 - r) P = 0`.
fn polynomial_factor(theta: &RatFunc, r: &RatFunc, d: usize) -> Option<Poly<NfElem>> {
    let two = RatFunc::from_int(2);
    let zeroth = &(&theta.derivative() + &(theta * theta)) - r;
    let cols: Vec<RatFunc> = (0..=d)
        .map(|k| {
            let p = x_power(k);
            let p1 = p.derivative();
            &(&p1.derivative() + &(&(&two * theta) * &p1)) + &(&zeroth * &p)
        })
        .collect();
    let nums = common_numerators(&cols);
    let height = nums.iter().filter_map(Poly::degree).max().map_or(0, |h| h + 1);
    let rows: Vec<Vec<NfElem>> = (0..height).map(|i| nums.iter().map(|q| q.coeff(i)).collect()).collect();
    let v = nullspace(&rows, d + 1).into_iter().find(|v| !v[d].is_zero())?;
    let lead = v[d].clone();
    Some(Poly::new(v.into_iter().map(|c| c / lead.clone()).collect()))
}

/// Rational solutions of `u' + u^2 + a*u + b = 0` through the normal form
/// `v' + v^2 = r` with `u = v - a/2`: the exponents at each pole and at
/// infinity bound the degree of the polynomial part, which is then found by
/// linear algebra.
fn rational_order2(eq: &DiffPoly, base: &FieldRef, bound: usize) -> Result<Vec<RiccatiSolution>> {
    let (a, b) = classical_coefficients(eq)?;
    let quarter = RatFunc::from_rat(rat(1, 4));
    let half_f = RatFunc::from_rat(rat(1, 2));
    let r = &(&(&quarter * &(&a * &a)) + &(&half_f * &a.derivative())) - &b;
    let mut splitter = Splitter::new(base.clone(), bound);
    let mut emb = Embedding::identity(base.clone());
    let data = loop {
        match kovacic_data(&embed(&r, &emb), splitter.field())? {
            Ok(d) => break d,
            Err(m) => {
                let (_, e) = splitter.split(&m)?;
                emb = emb.then(&e);
            }
        }
    };
    let Some((poles, inf, inf_both)) = data else {
        return Ok(Vec::new());
    };
    let r = embed(&r, &emb);
    let a = embed(&a, &emb);
    let x = RatFunc::var();
    let choices: Vec<usize> = std::iter::once(if inf_both { 2 } else { 1 })
        .chain(poles.iter().map(|p| if p.both_signs { 2 } else { 1 }))
        .collect();
    let total: usize = choices.iter().product();
    let sign = |e: &RatFunc, s: usize| if s == 0 { e.clone() } else { -e };
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut signs = Vec::with_capacity(choices.len());
        for &c in &choices {
            signs.push(idx % c);
            idx /= c;
        }
        let d = poles
            .iter()
            .zip(&signs[1..])
            .fold(inf.alpha[signs[0]].clone(), |acc, (p, &s)| acc - p.local.alpha[s].clone());
        let Some(d) = d.to_rat().filter(|d| d.is_integer() && *d >= Rat::zero()) else {
            continue;
        };
        let d: usize = d.to_integer().try_into().expect("degree fits in usize");
        let theta = poles.iter().zip(&signs[1..]).fold(sign(&inf.sqrt_part, signs[0]), |acc, (p, &s)| {
            let pole = &RatFunc::constant(p.local.alpha[s].clone()) / &(&x - &RatFunc::constant(p.at.clone()));
            &(&acc + &sign(&p.local.sqrt_part, s)) + &pole
        });
        if let Some(p) = polynomial_factor(&theta, &r, d) {
            let pf = Frac::from_poly(p);
            let v = &theta + &(&pf.derivative() / &pf);
            out.push(RiccatiSolution {
                u: &v - &(&half_f * &a),
                embedding: emb.clone(),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    FullyResolved,
    CandidateNotFoundInSearchClass,
    CandidateChainPartial,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::FullyResolved => "fully-resolved",
            Status::CandidateNotFoundInSearchClass => "candidate-not-found-in-search-class",
            Status::CandidateChainPartial => "candidate-chain-partial",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiReport {
    pub holds: bool,
    pub max_weight: u32,
    pub witness: String,
}

impl From<&XiCondition> for XiReport {
    fn from(c: &XiCondition) -> Self {
        XiReport {
            holds: c.holds,
            max_weight: c.max_weight,
            witness: c.witness.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub class: String,
    pub found: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateReport {
    pub u: String,
    pub verified: bool,
    pub y1: String,
    pub class: String,
    /// Minimal polynomial of the generator `a` when `u` involves it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedReport {
    /// The solution `u` used for the reduction.
    pub via: String,
    /// Coefficients of the reduced equation as polynomials in `u` and its derivatives.
    pub symbolic: Vec<String>,
    pub analysis: SolvabilityReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolvabilityReport {
    pub equation: String,
    pub riccati: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_condition: Option<XiReport>,
    pub searches: Vec<SearchReport>,
    pub candidates: Vec<CandidateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Box<ReducedReport>>,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub search: Vec<SearchClass>,
    pub bound: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            search: SearchClass::ALL.to_vec(),
            bound: crate::arith::factor::DEFAULT_EXTENSION_BOUND,
        }
    }
}

fn y1_text(u: &RatFunc) -> String {
    let s = u.to_string();
    if s.contains(" + ") || s.contains(" - ") {
        format!("exp(int ({s}) dx)")
    } else {
        format!("exp(int {s} dx)")
    }
}

fn field_text(u: &RatFunc) -> Option<String> {
    coefficient_field([u]).map(|f| format!("{} = 0", f.minpoly().render(f.name())))
}

/// Builds the Riccati equation of `l`, searches the configured classes for
/// a logarithmic derivative `u`, reduces the order with `y1 = exp(int u)`
/// and recurses on the reduced equation. Failures become report statuses.
pub fn solve_by_quadratures(l: &LinearODE, config: &SolveConfig) -> SolvabilityReport {
    solve_at(l, config, "y")
}

fn solve_at(l: &LinearODE, config: &SolveConfig, var: &str) -> SolvabilityReport {
    let r = riccati_of_linear(l);
    let xi_condition = l.operator().xi_condition().ok().map(|c| XiReport::from(&c));
    let mut searches = Vec::new();
    let mut found: Vec<(RiccatiSolution, String)> = Vec::new();
    if l.order() == 1 {
        // u + a_1 = 0 is solved outright
        let field = coefficient_field(l.coefficients());
        let u = -&l.a(1);
        found.push((
            RiccatiSolution {
                u,
                embedding: Embedding::identity(field),
            },
            "first-order".into(),
        ));
    } else {
        for &class in &config.search {
            if class == SearchClass::RationalOrder2 && l.order() != 2 {
                continue;
            }
            match find_riccati_solutions(&r, class, config.bound) {
                Ok(sols) => {
                    searches.push(SearchReport {
                        class: class.name().into(),
                        found: sols.iter().map(|s| s.u.to_string()).collect(),
                        error: None,
                    });
                    for s in sols {
                        if !found.iter().any(|(f, _)| f.u == s.u) {
                            found.push((s, class.name().into()));
                        }
                    }
                }
                Err(e) => searches.push(SearchReport {
                    class: class.name().into(),
                    found: Vec::new(),
                    error: Some(e.to_string()),
                }),
            }
        }
    }
    found.sort_by_cached_key(|(s, _)| canonical_key(&s.u));
    let mut candidates = Vec::new();
    let mut verified = Vec::new();
    for (s, class) in &found {
        let le = l.map_coeffs(|c| embed(c, &s.embedding));
        let ok = riccati_of_linear(&le).substitute(&s.u).is_ok_and(|v| v.is_zero())
            && rewrite_residual(&le, &s.u).is_zero();
        if ok {
            candidates.push(CandidateReport {
                u: s.u.to_string(),
                verified: true,
                y1: y1_text(&s.u),
                class: class.clone(),
                field: field_text(&s.u),
            });
            verified.push((s.clone(), le));
        }
    }
    let mut reduced: Option<Box<ReducedReport>> = None;
    let status = if verified.is_empty() {
        Status::CandidateNotFoundInSearchClass
    } else if l.order() == 1 {
        Status::FullyResolved
    } else {
        for (s, le) in &verified {
            let Ok(red) = reduce_order(le, &s.u) else {
                continue;
            };
            let Reduced::Equation(next) = &red.reduced else {
                continue;
            };
            let analysis = solve_at(next, config, "w");
            let done = analysis.status == Status::FullyResolved;
            if reduced.is_none() || done {
                reduced = Some(Box::new(ReducedReport {
                    via: s.u.to_string(),
                    symbolic: red.symbolic.iter().map(|b| b.render("u")).collect(),
                    analysis,
                }));
            }
            if done {
                break;
            }
        }
        match &reduced {
            Some(rr) if rr.analysis.status == Status::FullyResolved => Status::FullyResolved,
            _ => Status::CandidateChainPartial,
        }
    };
    SolvabilityReport {
        equation: l.render(var),
        riccati: r.equation("u"),
        xi_condition,
        searches,
        candidates,
        reduced,
        status,
    }
}
