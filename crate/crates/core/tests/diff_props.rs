mod common;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use quadrature_core::arith::linalg::nullspace;
use quadrature_core::arith::{rat, Frac, NfElem, Poly, Rat, RatFunc};
use quadrature_core::diff::{DerivationRegime, ParametricRatFunc};
use rand::Rng;

/// Small element: numerator and denominator of degree at most one in `y`.
fn light(r: &mut Rand, regime: &DerivationRegime) -> ParametricRatFunc {
    let poly = |r: &mut Rand| Poly::new((0..=r.gen_range(0..=1)).map(|_| small_ratfunc(r, 1)).collect::<Vec<_>>());
    let num = poly(r);
    let den = loop {
        let d = poly(r);
        if !d.is_zero() {
            break d;
        }
    };
    ParametricRatFunc::new(Frac::new(num, den).unwrap(), regime.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derive_is_additive_and_leibniz(seed in any::<u64>(), exp in any::<bool>()) {
        let mut r = rng(seed);
        let reg = regime(&mut r, exp);
        let (a, b) = (light(&mut r, &reg), light(&mut r, &reg));
        prop_assert_eq!(a.add(&b).derive(), a.derive().add(&b.derive()));
        prop_assert_eq!(a.mul(&b).derive(), a.derive().mul(&b).add(&a.mul(&b.derive())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn substitution_commutes_with_derive(seed in any::<u64>(), exp in any::<bool>()) {
        let mut r = rng(seed);
        let reg = regime(&mut r, exp);
        let e = light(&mut r, &reg);
        let c = nonzero_rat(&mut r);
        let (lhs, rhs) = if exp {
            (e.derive().substitute_scale(&c).unwrap(), e.substitute_scale(&c).unwrap().derive())
        } else {
            (e.derive().substitute_shift(&c).unwrap(), e.substitute_shift(&c).unwrap().derive())
        };
        prop_assert_eq!(lhs, rhs);
    }

    /// For a fixed denominator `D` over Q, `N -> (N/D)'` is Q-linear in `N`.
    /// Its kernel on polynomials of degree at most 3 must be spanned by `D`.
    #[test]
    fn constants_are_rational(seed in any::<u64>(), exp in any::<bool>()) {
        let mut r = rng(seed);
        let reg = regime(&mut r, exp);
        let den: Vec<Rat> = loop {
            let d: Vec<Rat> = (0..=r.gen_range(0..=3)).map(|_| rat(r.gen_range(-3..=3), 1)).collect();
            if d.iter().any(|c| !c.is_zero()) {
                break d;
            }
        };
        let lift = |cs: &[Rat]| Poly::new(cs.iter().map(|c| RatFunc::constant(NfElem::rational(c.clone()))).collect::<Vec<_>>());
        let d = lift(&den);
        let d2 = &d * &d;
        let images: Vec<Poly<RatFunc>> = (0..4)
            .map(|i| {
                let n = Poly::monomial(RatFunc::one(), i);
                let w = ParametricRatFunc::new(Frac::new(n, d.clone()).unwrap(), reg.clone()).derive();
                let w = w.value() * &Frac::from_poly(d2.clone());
                assert!(w.den().is_one());
                w.num().clone()
            })
            .collect();
        // clear the x-denominators and flatten every image into rational coordinates
        let lcm = images.iter().flat_map(|p| p.coeffs()).fold(Poly::<NfElem>::one(), |l, c| {
            let g = Poly::gcd(&l, c.den());
            &l * &c.den().exact_div(&g).unwrap()
        });
        let mut coords: Vec<Vec<Vec<Rat>>> = Vec::new();
        for p in &images {
            let mut v = Vec::new();
            for c in p.coeffs() {
                let scaled = c.num() * &lcm.exact_div(c.den()).unwrap();
                v.push(scaled.coeffs().iter().map(|e| e.to_rat().unwrap()).collect::<Vec<_>>());
            }
            coords.push(v);
        }
        let ydeg = coords.iter().map(|v| v.len()).max().unwrap_or(0);
        let xdeg = coords.iter().flatten().map(|v| v.len()).max().unwrap_or(0);
        let mut rows = Vec::new();
        for j in 0..ydeg {
            for k in 0..xdeg {
                rows.push(coords.iter().map(|v| v.get(j).and_then(|c| c.get(k)).cloned().unwrap_or_else(Rat::zero)).collect::<Vec<_>>());
            }
        }
        let kernel = nullspace(&rows, 4);
        prop_assert_eq!(kernel.len(), 1, "kernel {:?} for denominator {:?}", kernel, den);
        let v = &kernel[0];
        let mut padded = den.clone();
        padded.resize(4, Rat::zero());
        let (i, lead) = padded.iter().enumerate().find(|(_, c)| !c.is_zero()).unwrap();
        let scale = &v[i] / lead;
        for (a, b) in v.iter().zip(&padded) {
            prop_assert_eq!(a.clone(), b * &scale);
        }
    }
}
