//! Truncated Puiseux series `sum c_j t^(j/p)` in descending powers of a
//! transcendental `t`, with coefficients in `K = Q(a)(x)`.
//!
//! A series knows its terms exactly above its floor: when `floor = Some(f)`,
//! nothing is known about the coefficients at `j <= f`, and every operation
//! moves the floor so that no unjustified coefficient is ever reported.
//! `floor = None` means the stored terms are the whole series.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::ring::{join_terms, power_str, signed_term};
use crate::arith::{Field, Rat, RatFunc, Ring};
use crate::diff::DerivationRegime;
use crate::diffpoly::{DiffPoly, DiffValue};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    ramification: u32,
    terms: BTreeMap<i64, RatFunc>,
    floor: Option<i64>,
    regime: Option<DerivationRegime>,
}

/// Leading term of a series, or the statement that none is known.
#[derive(Clone, Debug, PartialEq)]
pub enum LeadingTerm {
    Term { exponent: Rat, coeff: RatFunc },
    /// No term above the floor; `floor = None` means the series is exactly 0.
    Zero { floor: Option<Rat> },
}

fn join_regimes(a: &Option<DerivationRegime>, b: &Option<DerivationRegime>) -> Option<DerivationRegime> {
    match (a, b) {
        (None, r) | (r, None) => r.clone(),
        (Some(x), Some(y)) => {
            assert_eq!(x, y, "series with different derivation regimes");
            Some(x.clone())
        }
    }
}

fn max_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    }
}

impl PuiseuxSeries {
    /// Builds and normalizes a series; terms at or below the floor are dropped.
    pub fn new(
        ramification: u32,
        terms: impl IntoIterator<Item = (i64, RatFunc)>,
        floor: Option<i64>,
        regime: Option<DerivationRegime>,
    ) -> Self {
        assert!(ramification >= 1, "ramification must be positive");
        let mut map = BTreeMap::new();
        for (j, c) in terms {
            if floor.is_some_and(|f| j <= f) || c.is_zero() {
                continue;
            }
            let slot: &mut RatFunc = map.entry(j).or_insert_with(RatFunc::zero);
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxSeries {
            ramification,
            terms: map,
            floor,
            regime,
        }
        .normalized()
    }

    /// From `(exponent, coefficient)` pairs with rational exponents.
    pub fn from_exponents(
        terms: impl IntoIterator<Item = (Rat, RatFunc)>,
        floor: Option<Rat>,
        regime: Option<DerivationRegime>,
    ) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let p = terms
            .iter()
            .map(|(e, _)| e.denom().clone())
            .chain(floor.iter().map(|f| f.denom().clone()))
            .fold(num_bigint::BigInt::one(), |acc, d| acc.lcm(&d));
        let pr = Rat::from_integer(p.clone());
        let idx = |e: &Rat| -> i64 { (e * &pr).to_integer().try_into().expect("exponent fits in i64") };
        let p: u32 = p.try_into().expect("ramification fits in u32");
        Self::new(
            p,
            terms.iter().map(|(e, c)| (idx(e), c.clone())),
            floor.as_ref().map(idx),
            regime,
        )
    }

    pub fn zero() -> Self {
        Self::new(1, [], None, None)
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::new(1, [(0, c)], None, None)
    }

    /// `c * t^(j/p)`, exact.
    pub fn monomial(c: RatFunc, j: i64, p: u32) -> Self {
        Self::new(p, [(j, c)], None, None)
    }

    /// The transcendental `t` itself, differentiating per `regime`.
    pub fn theta(regime: DerivationRegime) -> Self {
        Self::new(1, [(1, RatFunc::one())], None, Some(regime))
    }

    pub fn with_regime(mut self, regime: Option<DerivationRegime>) -> Self {
        self.regime = regime;
        self
    }

    pub fn with_floor(&self, floor: Option<i64>) -> Self {
        Self::new(self.ramification, self.terms.clone(), floor, self.regime.clone())
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// Floor as an exponent of `t`.
    pub fn floor_exponent(&self) -> Option<Rat> {
        self.floor.map(|f| Rat::new(f.into(), self.ramification.into()))
    }

    pub fn regime(&self) -> Option<&DerivationRegime> {
        self.regime.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// Terms `(j, c)` meaning `c * t^(j/p)`, highest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFunc)> {
        self.terms.iter().rev().map(|(j, c)| (*j, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms with rational exponents, highest first.
    pub fn exponent_terms(&self) -> Vec<(Rat, RatFunc)> {
        self.terms()
            .map(|(j, c)| (Rat::new(j.into(), self.ramification.into()), c.clone()))
            .collect()
    }

    /// Coefficient at exponent `e`, or `None` if it lies at or below the floor.
    pub fn coeff(&self, e: &Rat) -> Option<RatFunc> {
        let scaled = e * Rat::from_integer(self.ramification.into());
        if !scaled.is_integer() {
            return (!self.floor_exponent().is_some_and(|f| *e <= f)).then(RatFunc::zero);
        }
        let j: i64 = scaled.to_integer().try_into().ok()?;
        if self.floor.is_some_and(|f| j <= f) {
            return None;
        }
        Some(self.terms.get(&j).cloned().unwrap_or_else(RatFunc::zero))
    }

    fn lead_index(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_term(&self) -> LeadingTerm {
        match self.terms.iter().next_back() {
            Some((j, c)) => LeadingTerm::Term {
                exponent: Rat::new((*j).into(), self.ramification.into()),
                coeff: c.clone(),
            },
            None => LeadingTerm::Zero {
                floor: self.floor_exponent(),
            },
        }
    }

    /// Re-indexes over ramification `q`, a multiple of the current one.
    pub fn lift_to(&self, q: u32) -> Self {
        assert!(q % self.ramification == 0, "ramification {q} is not a multiple of {}", self.ramification);
        let k = (q / self.ramification) as i64;
        PuiseuxSeries {
            ramification: q,
            terms: self.terms.iter().map(|(j, c)| (j * k, c.clone())).collect(),
            floor: self.floor.map(|f| f * k),
            regime: self.regime.clone(),
        }
    }

    /// Smallest ramification that expresses the same series.
    pub fn normalized(&self) -> Self {
        let mut g = self.ramification as i64;
        for j in self.terms.keys().chain(self.floor.iter()) {
            g = g.gcd(j);
        }
        if g <= 1 {
            return self.clone();
        }
        PuiseuxSeries {
            ramification: self.ramification / g as u32,
            terms: self.terms.iter().map(|(j, c)| (j / g, c.clone())).collect(),
            floor: self.floor.map(|f| f / g),
            regime: self.regime.clone(),
        }
    }

    fn common(&self, o: &Self) -> (Self, Self) {
        let q = self.ramification.lcm(&o.ramification);
        (self.lift_to(q), o.lift_to(q))
    }

    /// Forgets every term at or below exponent index `floor`.
    pub fn truncate_below(&self, floor: i64) -> Self {
        let f = max_opt(self.floor, Some(floor));
        self.with_floor(f)
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        let floor = max_opt(a.floor, b.floor);
        let terms = a.terms.into_iter().chain(b.terms);
        Self::new(a.ramification, terms, floor, join_regimes(&self.regime, &o.regime))
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(j, c)| (*j, -c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::new(
            self.ramification,
            self.terms.iter().map(|(j, v)| (*j, v * c)),
            self.floor,
            self.regime.clone(),
        )
    }

    /// Product; the unknown tail of each factor times the top of the other
    /// bounds the new floor.
    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        let regime = join_regimes(&self.regime, &o.regime);
        // highest exponent that may carry a nonzero contribution
        let top = |s: &Self| max_opt(s.lead_index(), s.floor);
        let floor = max_opt(
            a.floor.and_then(|fa| top(&b).map(|tb| fa + tb)),
            b.floor.and_then(|fb| top(&a).map(|ta| fb + ta)),
        );
        let mut terms = BTreeMap::new();
        for (ja, ca) in &a.terms {
            for (jb, cb) in &b.terms {
                let k = ja + jb;
                if floor.is_some_and(|f| k <= f) {
                    continue;
                }
                let slot: &mut RatFunc = terms.entry(k).or_insert_with(RatFunc::zero);
                *slot = &*slot + &(ca * cb);
            }
        }
        Self::new(a.ramification, terms, floor, regime)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::constant(RatFunc::one()).with_regime(self.regime.clone());
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// `1/s`. For an exact input the result is computed down to `depth`
    /// steps of size `1/p` below its leading exponent; otherwise as deep as
    /// the input justifies.
    pub fn inverse(&self, depth: u32) -> Result<Self> {
        let Some(l) = self.lead_index() else {
            return Err(Error::Truncation {
                required: "a nonzero leading term".into(),
                available: match self.floor_exponent() {
                    Some(f) => format!("no terms above {f}"),
                    None => "the zero series".into(),
                },
            });
        };
        let p = self.ramification;
        let c = self.terms[&l].clone();
        let cinv = c.inv().expect("stored coefficients are nonzero");
        // s = c t^l (1 + r), r has negative exponents only
        let r = Self::new(
            p,
            self.terms.iter().filter(|(j, _)| **j != l).map(|(j, v)| (j - l, v * &cinv)),
            self.floor.map(|f| f - l),
            self.regime.clone(),
        );
        let bound = match self.floor {
            Some(f) => f - l,
            None => -(depth as i64) - 1,
        };
        let minus_r = r.neg().truncate_below(bound).lift_to(p);
        let mut sum = Self::constant(RatFunc::one()).with_regime(self.regime.clone());
        let mut power = sum.clone();
        for _ in 0..=(-bound) {
            power = power.mul(&minus_r).truncate_below(bound);
            if power.terms.is_empty() {
                break;
            }
            sum = sum.add(&power);
        }
        let sum = sum.truncate_below(bound).lift_to(p);
        let shifted = Self::new(
            p,
            sum.terms.iter().map(|(j, v)| (j - l, v * &cinv)),
            sum.floor.map(|f| f - l),
            self.regime.clone(),
        );
        Ok(shifted)
    }

    /// Derivative per the series' regime.
    ///
    /// With `t' = f`: `c t^(j/p) -> c' t^(j/p) + (j/p) c f t^((j-p)/p)`.
    /// With `t' = f t`: `c t^(j/p) -> (c' + (j/p) f c) t^(j/p)`.
    /// Unknown terms below the floor only feed exponents below the floor, so
    /// the floor is unchanged.
    pub fn derive(&self) -> Result<Self> {
        let regime = self
            .regime
            .as_ref()
            .ok_or_else(|| Error::usage("differentiating a series needs a derivation regime"))?;
        let p = self.ramification as i64;
        let mut out: Vec<(i64, RatFunc)> = Vec::new();
        for (&j, c) in &self.terms {
            let jp = RatFunc::from_rat(Rat::new(j.into(), p.into()));
            match regime {
                DerivationRegime::Integral(f) => {
                    out.push((j, c.derivative()));
                    out.push((j - p, &(&jp * c) * f));
                }
                DerivationRegime::ExpIntegral(f) => {
                    out.push((j, &c.derivative() + &(&(&jp * f) * c)));
                }
            }
        }
        Ok(Self::new(self.ramification, out, self.floor, self.regime.clone()))
    }

    pub fn render(&self, var: &str) -> String {
        let p = self.ramification;
        let mut parts: Vec<(bool, String)> = self
            .terms()
            .map(|(j, c)| {
                let e = Rat::new(j.into(), p.into());
                if e.is_zero() {
                    signed_term(c, "")
                } else {
                    signed_term(c, &power_str(var, &e))
                }
            })
            .collect();
        if let Some(f) = self.floor_exponent() {
            let o = if f.is_zero() {
                "O(1)".to_string()
            } else {
                format!("O({})", power_str(var, &f))
            };
            parts.push((false, o));
        }
        join_terms(parts)
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl DiffValue for PuiseuxSeries {
    fn lift(c: &RatFunc) -> Self {
        Self::constant(c.clone())
    }
    fn add(&self, o: &Self) -> Self {
        PuiseuxSeries::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        PuiseuxSeries::mul(self, o)
    }
    fn derivative(&self) -> Result<Self> {
        self.derive()
    }
}

/// `T(s, s', ..., s^(N))`. When `required` is given, the result must be
/// known at least down to that exponent.
pub fn substitute_into_diffpoly(t: &DiffPoly, s: &PuiseuxSeries, required: Option<&Rat>) -> Result<PuiseuxSeries> {
    let r = t.substitute(s)?.with_regime(s.regime.clone());
    if let (Some(req), Some(f)) = (required, r.floor_exponent()) {
        if f >= *req {
            return Err(Error::Truncation {
                required: format!("terms down to exponent {req}"),
                available: format!("floor {f}"),
            });
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::diff::parse_ratfunc;
    use crate::expr::parse_expr;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn dp(s: &str) -> DiffPoly {
        DiffPoly::from_expr(&parse_expr(s, &["u"]).unwrap(), "u").unwrap()
    }

    #[test]
    fn half_powers_multiply() {
        let h = PuiseuxSeries::monomial(rf("1"), 1, 2);
        assert_eq!(h.mul(&h), PuiseuxSeries::monomial(rf("1"), 1, 1));
    }

    #[test]
    fn geometric_inverse() {
        let s = PuiseuxSeries::new(1, [(0, rf("1")), (-1, rf("1"))], None, None);
        let inv = s.inverse(4).unwrap();
        assert_eq!(inv.render("t"), "1 - t^(-1) + t^(-2) - t^(-3) + t^(-4) + O(t^(-5))");
        // inexact input: floor f - 2l
        let s = s.with_floor(Some(-3));
        let inv = s.inverse(0).unwrap();
        assert_eq!(inv.floor(), Some(-3));
        assert_eq!(inv.render("t"), "1 - t^(-1) + t^(-2) + O(t^(-3))");
    }

    #[test]
    fn inverse_of_unknown_fails() {
        let z = PuiseuxSeries::new(1, [], Some(-5), None);
        assert!(matches!(z.inverse(3), Err(Error::Truncation { .. })));
    }

    #[test]
    fn cancellation_keeps_floor() {
        let a = PuiseuxSeries::new(2, [(3, rf("x")), (1, rf("2"))], Some(-1), None);
        let z = a.sub(&a);
        assert_eq!(z.leading_term(), LeadingTerm::Zero { floor: Some(rat(-1, 2)) });
    }

    #[test]
    fn mul_floor() {
        // (t + O(t^-1)) * (t^2 + 1) is known above t^1
        let a = PuiseuxSeries::new(1, [(1, rf("1"))], Some(-1), None);
        let b = PuiseuxSeries::new(1, [(2, rf("1")), (0, rf("1"))], None, None);
        let c = a.mul(&b);
        assert_eq!(c.floor(), Some(1));
        assert_eq!(c.render("t"), "t^3 + O(t)");
    }

    #[test]
    fn integral_regime_derivative() {
        let f = rf("x");
        let reg = DerivationRegime::integral(f.clone());
        let s = PuiseuxSeries::monomial(rf("x^2"), 1, 2).with_regime(Some(reg.clone()));
        let ds = s.derive().unwrap();
        assert_eq!(ds.coeff(&rat(1, 2)), Some(rf("2*x")));
        assert_eq!(ds.coeff(&rat(-1, 2)), Some(rf("x^3/2")));
        let c = PuiseuxSeries::constant(rf("x^3")).with_regime(Some(reg));
        assert_eq!(c.derive().unwrap(), PuiseuxSeries::constant(rf("3*x^2")).with_regime(c.regime.clone()));
    }

    #[test]
    fn exp_regime_derivative() {
        let reg = DerivationRegime::exp_integral(rf("1")).unwrap();
        let s = PuiseuxSeries::monomial(rf("x"), 3, 2).with_regime(Some(reg));
        let ds = s.derive().unwrap();
        assert_eq!(ds.coeff(&rat(3, 2)), Some(rf("1 + 3*x/2")));
        assert_eq!(ds.term_count(), 1);
    }

    #[test]
    fn substitution() {
        let f = rf("x + 1");
        let th = PuiseuxSeries::theta(DerivationRegime::integral(f.clone()));
        let r = substitute_into_diffpoly(&dp("u' + u^2"), &th, None).unwrap();
        assert_eq!(r.coeff(&rat(2, 1)), Some(rf("1")));
        assert_eq!(r.coeff(&rat(0, 1)), Some(f));
        assert_eq!(substitute_into_diffpoly(&dp("u"), &th, None).unwrap(), th);
    }

    #[test]
    fn leading_terms() {
        let s = PuiseuxSeries::new(2, [(1, rf("1")), (0, rf("1"))], None, None);
        assert_eq!(
            s.leading_term(),
            LeadingTerm::Term {
                exponent: rat(1, 2),
                coeff: rf("1")
            }
        );
        let s = PuiseuxSeries::new(1, [(2, rf("3*x")), (1, rf("1"))], None, None);
        assert_eq!(
            s.leading_term(),
            LeadingTerm::Term {
                exponent: rat(2, 1),
                coeff: rf("3*x")
            }
        );
    }

    #[test]
    fn lift_round_trip() {
        let s = PuiseuxSeries::new(3, [(2, rf("x")), (-1, rf("1"))], Some(-4), None);
        assert_eq!(s.lift_to(12).normalized(), s);
    }
}
