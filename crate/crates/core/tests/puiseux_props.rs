mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use quadrature_core::arith::{Rat, RatFunc, Ring};
use quadrature_core::diff::DerivationRegime;
use quadrature_core::puiseux::{LeadingTerm, PuiseuxSeries};
use rand::Rng;

/// Random series whose leading coefficient is a constant half of the time.
fn any_series(r: &mut Rand, reg: &DerivationRegime) -> PuiseuxSeries {
    let p = r.gen_range(1..=3);
    let lead = r.gen_range(-4..=4);
    let len = r.gen_range(1..=4);
    let exact = r.gen_bool(0.5);
    let mut terms = vec![(lead, if r.gen_bool(0.5) { RatFunc::constant(nonzero_rat(r)) } else { nonzero_ratfunc(r, 1) })];
    for k in 1..len as i64 {
        terms.push((lead - k, small_ratfunc(r, 1)));
    }
    let floor = (!exact).then_some(lead - len as i64);
    PuiseuxSeries::new(p, terms, floor, Some(reg.clone()))
}

/// Both series agree on every exponent above the higher of their floors.
fn agree(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<(), TestCaseError> {
    let floor = match (a.floor_exponent(), b.floor_exponent()) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    };
    let above = |e: &Rat| floor.as_ref().is_none_or(|f| e > f);
    for (e, _) in a.exponent_terms().into_iter().chain(b.exponent_terms()) {
        if above(&e) {
            prop_assert_eq!(a.coeff(&e), b.coeff(&e), "at exponent {}: {} vs {}", e, a, b);
        }
    }
    Ok(())
}

fn lead(s: &PuiseuxSeries) -> Option<(Rat, RatFunc)> {
    match s.leading_term() {
        LeadingTerm::Term { exponent, coeff } => Some((exponent, coeff)),
        LeadingTerm::Zero { .. } => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn derive_is_additive_and_leibniz(seed in any::<u64>(), exp in any::<bool>()) {
        let mut r = rng(seed);
        let reg = regime(&mut r, exp);
        let (a, b) = (any_series(&mut r, &reg), any_series(&mut r, &reg));
        let (da, db) = (a.derive().unwrap(), b.derive().unwrap());
        agree(&a.add(&b).derive().unwrap(), &da.add(&db))?;
        agree(&a.mul(&b).derive().unwrap(), &da.mul(&b).add(&a.mul(&db)))?;
    }

    #[test]
    fn integral_regime_leading_behaviour(seed in any::<u64>()) {
        let mut r = rng(seed);
        let reg = regime(&mut r, false);
        let s = any_series(&mut r, &reg);
        let (e, c) = lead(&s).unwrap();
        let ds = s.derive().unwrap();
        let dc = c.derivative();
        if !dc.is_zero() {
            prop_assert_eq!(lead(&ds), Some((e.clone(), dc)));
        } else {
            prop_assert!(lead(&ds).is_none_or(|(k, _)| k < e));
        }
        let mut cur = ds;
        for _ in 0..3 {
            prop_assert!(lead(&cur).is_none_or(|(k, _)| k <= e));
            cur = cur.derive().unwrap();
        }
    }

    #[test]
    fn exponential_regime_leading_behaviour(seed in any::<u64>()) {
        let mut r = rng(seed);
        let reg = regime(&mut r, true);
        let s = any_series(&mut r, &reg);
        let (e, c) = lead(&s).unwrap();
        let candidate = &c.derivative() + &(&(&RatFunc::from_rat(e.clone()) * reg.integrand()) * &c);
        let ds = s.derive().unwrap();
        match lead(&ds) {
            Some((k, d)) if k == e => prop_assert_eq!(d, candidate),
            Some((k, _)) => prop_assert!(k < e && candidate.is_zero()),
            None => prop_assert!(candidate.is_zero()),
        }
    }

    #[test]
    fn ramification_round_trip(seed in any::<u64>(), k in 1u32..=4) {
        let mut r = rng(seed);
        let reg = regime(&mut r, seed % 2 == 0);
        let s = any_series(&mut r, &reg);
        let lifted = s.lift_to(s.ramification() * k);
        prop_assert_eq!(lifted.ramification(), s.ramification() * k);
        prop_assert_eq!(lifted.normalized(), s);
    }
}
