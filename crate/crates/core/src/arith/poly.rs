use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ring::{join_terms, signed_term, Field, Rat, Ring};

/// Dense univariate polynomial with ascending coefficients.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and `degree` is `None` exactly for it.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k];
        v.push(c);
        Poly { coeffs: v }
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| R::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Lowest power carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * R::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a point of another ring, lifting coefficients with `lift`.
    pub fn eval_with<S: Ring>(&self, x: &S, lift: impl Fn(&R) -> S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + lift(c))
    }

    pub fn compose(&self, inner: &Self) -> Self {
        self.eval_with(inner, |c| Poly::constant(c.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Renders in descending powers of `var`.
    pub fn render(&self, var: &str) -> String {
        join_terms(self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(
            |(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                signed_term(c, &mono)
            },
        ))
    }

    pub(crate) fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl<R: Field> Poly<R> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv_lead = d.lead().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![R::zero(); n - dd];
        let unit = d.lead().unwrap().is_one();
        for k in (dd..n).rev() {
            let c = if unit { r[k].clone() } else { r[k].clone() * inv_lead.clone() };
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = r[k - dd + j].clone() - c.clone() * dc.clone();
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        if let Some(g) = R::poly_gcd(a, b) {
            return g;
        }
        // monic remainders keep coefficient growth down over K(x)
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)` and `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv().unwrap();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    /// Yun's square-free decomposition: monic factors `f_i` with
    /// `self = lead * prod f_i^i`. Factors equal to one are skipped.
    pub fn square_free_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Self::gcd(&f, &df);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = df.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = Self::gcd(&b, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible-free parts: `self / gcd(self, self')`.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = Self::gcd(self, &self.derivative());
        self.exact_div(&g).unwrap().monic()
    }

    pub fn is_square_free(&self) -> bool {
        Self::gcd(self, &self.derivative()).degree().unwrap_or(0) == 0
    }
}

impl Poly<Rat> {
    /// Clears denominators and removes the integer content, keeping the sign
    /// of the leading coefficient positive.
    pub fn primitive_integer(&self) -> Poly<Rat> {
        use num_integer::Integer;
        use num_traits::Signed;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = num_bigint::BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let scaled: Vec<num_bigint::BigInt> =
            self.coeffs.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut g = num_bigint::BigInt::zero();
        for c in &scaled {
            g = g.gcd(c);
        }
        if scaled.last().unwrap().is_negative() {
            g = -g;
        }
        Poly::new(scaled.into_iter().map(|c| Rat::from_integer(c / &g)).collect())
    }
}

/// Monic gcd over Q of two nonzero coefficient vectors, by a primitive
/// remainder sequence over Z. Euclid over Q lets the rational coefficients
/// of the remainders blow up long before the degree drops.
pub(crate) fn rational_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    use num_bigint::BigInt;
    use num_integer::Integer;

    fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        let mut g = BigInt::zero();
        for c in &v {
            g = g.gcd(c);
            if g.is_one() {
                return v;
            }
        }
        v.into_iter().map(|c| c / &g).collect()
    }
    fn integral(v: &[Rat]) -> Vec<BigInt> {
        let den = v.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        primitive(v.iter().map(|c| c.numer() * (&den / c.denom())).collect())
    }

    let (mut a, mut b) = (integral(a), integral(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb = b.last().unwrap().clone();
        let mut r = a;
        while r.len() >= b.len() {
            let c = r.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = r.len() + 1 - b.len();
            for x in r.iter_mut() {
                *x *= &lb;
            }
            for (i, bi) in b[..b.len() - 1].iter().enumerate() {
                r[shift + i] -= &c * bi;
            }
        }
        a = std::mem::replace(&mut b, primitive(r));
    }
    let lead = Rat::from_integer(a.last().unwrap().clone());
    a.into_iter().map(|c| Rat::from_integer(c) / &lead).collect()
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly {
            coeffs: vec![R::one()],
        }
    }
}

impl<'a, R: Ring> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &'a Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &'a Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &'a Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_by_value {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                (&self).$m(&o)
            }
        }
    };
}
forward_by_value!(Add, add);
forward_by_value!(Sub, sub);
forward_by_value!(Mul, mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn from_rat(r: Rat) -> Self {
        Poly::constant(R::from_rat(r))
    }

    fn is_atomic(&self) -> bool {
        self.term_count() <= 1
            && self
                .lead()
                .is_none_or(|c| (c.is_one() || c.is_atomic()) && !c.is_negative())
    }

    fn is_negative(&self) -> bool {
        self.lead().is_some_and(|c| c.is_negative())
    }
}
