mod common;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use quadrature_core::arith::factor::DEFAULT_EXTENSION_BOUND;
use quadrature_core::arith::{adjoin_root, factor_over_q, rat, Field, Frac, NfElem, NumberField, Poly, Rat, RatFunc};
use rand::Rng;
use std::sync::Arc;

fn any_rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn cubic_field() -> Arc<NumberField> {
    // x^3 - x - 1 is irreducible and not normal over Q
    NumberField::new(Poly::from_ints(&[-1, -1, 0, 1]), "a").unwrap()
}

fn nf_elem(r: &mut Rand, k: &Arc<NumberField>) -> NfElem {
    let cs = (0..3).map(|_| rat(r.gen_range(-5..=5), r.gen_range(1..=4))).collect();
    NfElem::new(Some(k.clone()), Poly::new(cs))
}

macro_rules! field_axioms {
    ($a:expr, $b:expr, $c:expr) => {{
        let (a, b, c) = (&$a, &$b, &$c);
        prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
        prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
        prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
        prop_assert_eq!(&(a + b), &(b + a));
        prop_assert_eq!(&(a * b), &(b * a));
        prop_assert!((a - a).is_zero());
        if !a.is_zero() {
            prop_assert!((a * &a.inv().unwrap()).is_one());
        }
    }};
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rationals_form_a_field(a in any_rat(), b in any_rat(), c in any_rat()) {
        field_axioms!(a, b, c);
    }

    #[test]
    fn rational_functions_form_a_field(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (small_ratfunc(&mut r, 2), small_ratfunc(&mut r, 2), small_ratfunc(&mut r, 2));
        field_axioms!(a, b, c);
    }

    #[test]
    fn number_field_elements_form_a_field(seed in any::<u64>()) {
        let k = cubic_field();
        let mut r = rng(seed);
        let (a, b, c) = (nf_elem(&mut r, &k), nf_elem(&mut r, &k), nf_elem(&mut r, &k));
        field_axioms!(a, b, c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factors_multiply_back(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut p = Poly::constant(rat(r.gen_range(1..=6), r.gen_range(1..=3)));
        for _ in 0..r.gen_range(1..=4) {
            let f = Poly::from_ints(&(0..=r.gen_range(1..=3)).map(|_| r.gen_range(-4..=4)).collect::<Vec<_>>());
            if f.degree().unwrap_or(0) > 0 {
                p = &p * &f;
            }
        }
        prop_assume!(p.degree().unwrap() > 0);
        let fs = factor_over_q(&p, 16).unwrap();
        let back = fs.iter().fold(Poly::constant(p.lead().unwrap().clone()), |acc, (f, e)| &acc * &f.pow(*e));
        prop_assert_eq!(back, p);
        for (f, _) in &fs {
            prop_assert!(f.lead().unwrap().is_one());
        }
    }

    #[test]
    fn adjoined_root_is_a_root(seed in any::<u64>(), over_cubic in any::<bool>()) {
        let mut r = rng(seed);
        let base = over_cubic.then(cubic_field);
        let coeff = |r: &mut Rand| match &base {
            Some(k) if r.gen_bool(0.5) => nf_elem(r, k),
            _ => NfElem::rational(rat(r.gen_range(-6..=6), 1)),
        };
        let deg = r.gen_range(1..=if over_cubic { 2 } else { 3 });
        let mut cs: Vec<NfElem> = (0..deg).map(|_| coeff(&mut r)).collect();
        cs.push(NfElem::one());
        let m = Poly::new(cs);
        let adj = adjoin_root(&base, &m, DEFAULT_EXTENSION_BOUND).unwrap();
        let image = m.map(|c| adj.embedding.apply(c));
        prop_assert!(image.eval(&adj.root).is_zero(), "{} at {}", m, adj.root);
    }

    #[test]
    fn gcd_removes_common_factors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let poly = |r: &mut Rand| Poly::new((0..=r.gen_range(1..=2)).map(|_| small_ratfunc(r, 1)).collect::<Vec<RatFunc>>());
        let (a, b, g) = (poly(&mut r), poly(&mut r), poly(&mut r));
        prop_assume!(!a.is_zero() && !b.is_zero() && g.degree().unwrap_or(0) > 0);
        let h = Poly::gcd(&(&a * &g), &(&b * &g));
        prop_assert!((&a * &g).exact_div(&h).is_some());
        prop_assert!((&b * &g).exact_div(&h).is_some());
        prop_assert!(h.exact_div(&g.monic()).is_some());
        prop_assert_eq!(h.exact_div(&g.monic()).unwrap(), Poly::gcd(&a, &b));
        // reduction is independent of the representative
        prop_assert_eq!(Frac::new(&a * &g, &b * &g).unwrap(), Frac::new(a, b).unwrap());
    }
}
