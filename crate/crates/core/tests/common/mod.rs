//! Seeded generators shared by the integration targets.

#![allow(dead_code)]

use num_traits::Zero;
use quadrature_core::arith::{rat, Frac, NfElem, Poly, RatFunc, Ring};
use quadrature_core::diff::{parse_ratfunc, DerivationRegime, ParametricRatFunc};
use quadrature_core::diffpoly::{DiffMonomial, DiffPoly};
use quadrature_core::expr::parse_expr;
use quadrature_core::puiseux::PuiseuxSeries;
use quadrature_core::riccati::LinearODE;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rf(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap()
}

pub fn dp(s: &str) -> DiffPoly {
    DiffPoly::from_expr(&parse_expr(s, &["u"]).unwrap(), "u").unwrap()
}

pub fn small_rat(r: &mut Rand) -> NfElem {
    NfElem::rational(rat(r.gen_range(-4..=4), r.gen_range(1..=3)))
}

pub fn nonzero_rat(r: &mut Rand) -> NfElem {
    loop {
        let c = small_rat(r);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn small_poly(r: &mut Rand, deg: usize) -> Poly<NfElem> {
    Poly::new((0..=r.gen_range(0..=deg)).map(|_| small_rat(r)).collect())
}

/// `p/q` with both of degree at most `deg` and small coefficients.
pub fn small_ratfunc(r: &mut Rand, deg: usize) -> RatFunc {
    let num = small_poly(r, deg);
    loop {
        let den = small_poly(r, deg);
        if !den.is_zero() {
            return Frac::new(num, den).unwrap();
        }
    }
}

pub fn nonzero_ratfunc(r: &mut Rand, deg: usize) -> RatFunc {
    loop {
        let f = small_ratfunc(r, deg);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn linear_ode(r: &mut Rand, max_order: usize) -> LinearODE {
    let n = r.gen_range(1..=max_order);
    LinearODE::new((0..n).map(|_| small_ratfunc(r, 1)).collect()).unwrap()
}

pub fn regime(r: &mut Rand, exp: bool) -> DerivationRegime {
    let f = nonzero_ratfunc(r, 1);
    if exp {
        DerivationRegime::exp_integral(f).unwrap()
    } else {
        DerivationRegime::integral(f)
    }
}

pub fn parametric(r: &mut Rand, regime: &DerivationRegime) -> ParametricRatFunc {
    let poly = |r: &mut Rand| Poly::new((0..=r.gen_range(0..=2)).map(|_| small_ratfunc(r, 1)).collect::<Vec<_>>());
    let num = poly(r);
    let den = loop {
        let d = poly(r);
        if !d.is_zero() {
            break d;
        }
    };
    ParametricRatFunc::new(Frac::new(num, den).unwrap(), regime.clone())
}

/// Series with `terms` coefficients from index `lead` downward over
/// ramification `p`, exact or with a floor just below the last term.
pub fn series(r: &mut Rand, p: u32, lead: i64, terms: usize, exact: bool) -> PuiseuxSeries {
    let mut cs = vec![(lead, nonzero_ratfunc(r, 1))];
    for k in 1..terms as i64 {
        cs.push((lead - k, small_ratfunc(r, 1)));
    }
    let floor = (!exact).then_some(lead - terms as i64);
    PuiseuxSeries::new(p, cs, floor, None)
}

/// Random differential polynomial of degree below `n` in `u, u', u''`,
/// with a nonzero constant term.
pub fn lower_degree_poly(r: &mut Rand, n: u32) -> DiffPoly {
    let mut q = DiffPoly::constant(nonzero_ratfunc(r, 1));
    for _ in 0..r.gen_range(0..4) {
        let d = r.gen_range(1..n.max(2));
        if d >= n {
            continue;
        }
        let mut e = vec![0u32; 3];
        for _ in 0..d {
            e[r.gen_range(0..3)] += 1;
        }
        q = &q + &DiffPoly::term(DiffMonomial::from_exponents(e), nonzero_ratfunc(r, 1));
    }
    q
}

/// Random homogeneous polynomial of degree `m` in `u, ..., u^(order)`.
pub fn homogeneous(r: &mut Rand, m: u32, order: usize, terms: usize) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for _ in 0..terms {
        let mut e = vec![0u32; order + 1];
        for _ in 0..m {
            e[r.gen_range(0..=order)] += 1;
        }
        let c = RatFunc::constant(NfElem::from_int(r.gen_range(-3..=3)));
        p = &p + &DiffPoly::term(DiffMonomial::from_exponents(e), c);
    }
    p
}
