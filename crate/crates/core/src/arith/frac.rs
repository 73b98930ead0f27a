use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::ring::{Field, Rat, Ring};

/// Reduced quotient of polynomials over a field: `gcd(num, den) = 1`, `den`
/// monic and nonzero. Zero is `0/1`.
#[derive(Clone, PartialEq, Debug)]
pub struct Frac<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> Frac<C> {
    /// Builds and reduces `num/den`; `den` must be nonzero.
    pub fn new(num: Poly<C>, den: Poly<C>) -> crate::Result<Self> {
        if den.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if num.is_constant() || den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        Self::monic_den(num, den)
    }

    fn monic_den(num: Poly<C>, den: Poly<C>) -> Self {
        let l = den.lead().unwrap().clone();
        if l.is_one() {
            return Frac { num, den };
        }
        let li = l.inv().unwrap();
        Frac {
            num: num.scale(&li),
            den: den.scale(&li),
        }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        Frac {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a constant of the coefficient field, if it is one.
    pub fn as_constant(&self) -> Option<C> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// Formal derivative with respect to the polynomial variable.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    /// Applies `f` to every coefficient of numerator and denominator.
    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Frac<D> {
        Frac::reduce(self.num.map(&f), self.den.map(&f))
    }

    /// Substitutes a rational function for the variable.
    pub fn compose(&self, inner: &Frac<C>) -> crate::Result<Self> {
        if inner.den.is_one() {
            // s*n + t*d = 1 survives substitution, so n(g)/d(g) is reduced
            let d = self.den.compose(&inner.num);
            if d.is_zero() {
                return Err(crate::Error::DivisionByZero);
            }
            let n = self.num.compose(&inner.num);
            if n.is_zero() {
                return Ok(Self::zero());
            }
            return Ok(Self::monic_den(n, d));
        }
        let n = self.num.eval_with(inner, |c| Frac::constant(c.clone()));
        let d = self.den.eval_with(inner, |c| Frac::constant(c.clone()));
        n.checked_div(&d)
    }

    pub fn pow(&self, e: i64) -> crate::Result<Self> {
        let base = if e < 0 {
            self.inv().ok_or(crate::Error::DivisionByZero)?
        } else {
            self.clone()
        };
        let k = e.unsigned_abs() as u32;
        Ok(Frac::reduce(base.num.pow(k), base.den.pow(k)))
    }

    /// Difference of degrees `deg num - deg den`; `None` for zero.
    pub fn degree_at_infinity(&self) -> Option<i64> {
        let n = self.num.degree()? as i64;
        Some(n - self.den.degree().unwrap() as i64)
    }

    pub fn render(&self, var: &str) -> String {
        if let (Some(n), Some(d)) = (rational_poly(&self.num), rational_poly(&self.den)) {
            return Frac { num: n, den: d }.render_integral(var);
        }
        let n = self.num.render(var);
        if self.den.is_one() {
            return n;
        }
        let (neg, num) = if self.num.is_negative() {
            (true, -&self.num)
        } else {
            (false, self.num.clone())
        };
        let num_s = num.render(var);
        let num_s = if num.term_count() > 1 || !num.lead().unwrap().is_atomic() {
            format!("({num_s})")
        } else {
            num_s
        };
        let den_s = self.den.render(var);
        let den_s = if self.den.term_count() > 1 || !self.den.lead().unwrap().is_one() {
            format!("({den_s})")
        } else {
            den_s
        };
        format!("{}{num_s}/{den_s}", if neg { "-" } else { "" })
    }
}

fn rational_poly<C: Ring>(p: &Poly<C>) -> Option<Poly<Rat>> {
    p.coeffs().iter().map(|c| c.as_rat()).collect::<Option<Vec<_>>>().map(Poly::new)
}

impl Frac<Rat> {
    /// Renders with integer coefficients, e.g. `3/(2*x)` rather than `(3/2)/x`.
    pub fn render_integral(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        let d = self.den.primitive_integer();
        let scale = d.lead().unwrap().clone() / self.den.lead().unwrap().clone();
        let n = self.num.scale(&scale);
        let nn = n.primitive_integer();
        let k = n.lead().unwrap().clone() / nn.lead().unwrap().clone();
        // n = k * nn with k rational; fold k's denominator into d
        let kn = Poly::constant(Rat::from_integer(k.numer().clone()));
        let kd = Poly::constant(Rat::from_integer(k.denom().clone()));
        let num = &kn * &nn;
        let den = &kd * &d;
        let (neg, num) = if num.is_negative() { (true, -&num) } else { (false, num) };
        let wrap = |p: &Poly<Rat>| {
            let s = p.render(var);
            if p.term_count() > 1 || !p.lead().unwrap().is_atomic() {
                format!("({s})")
            } else {
                s
            }
        };
        let den_s = if den.term_count() == 1 && (den.lead().unwrap().is_one() || den.is_constant()) {
            den.render(var)
        } else {
            format!("({})", den.render(var))
        };
        format!("{}{}/{}", if neg { "-" } else { "" }, wrap(&num), den_s)
    }
}

impl<C: Field> Zero for Frac<C> {
    fn zero() -> Self {
        Frac {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Field> One for Frac<C> {
    fn one() -> Self {
        Frac {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
}

impl<'a, C: Field> Add<&'a Frac<C>> for &'a Frac<C> {
    type Output = Frac<C>;
    fn add(self, o: &'a Frac<C>) -> Frac<C> {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Frac::reduce(&self.num + &o.num, self.den.clone());
        }
        // with g = gcd(d1, d2), only g can share factors with the new numerator
        let g = Poly::gcd(&self.den, &o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            if num.is_zero() {
                return Frac::zero();
            }
            return Frac {
                num,
                den: &self.den * &o.den,
            };
        }
        let d1 = self.den.exact_div(&g).unwrap();
        let d2 = o.den.exact_div(&g).unwrap();
        let t = &(&self.num * &d2) + &(&o.num * &d1);
        if t.is_zero() {
            return Frac::zero();
        }
        let g2 = Poly::gcd(&t, &g);
        let num = t.exact_div(&g2).unwrap();
        let den = &d1 * &o.den.exact_div(&g2).unwrap();
        Frac::monic_den(num, den)
    }
}

impl<'a, C: Field> Sub<&'a Frac<C>> for &'a Frac<C> {
    type Output = Frac<C>;
    fn sub(self, o: &'a Frac<C>) -> Frac<C> {
        self + &(-o)
    }
}

impl<'a, C: Field> Mul<&'a Frac<C>> for &'a Frac<C> {
    type Output = Frac<C>;
    fn mul(self, o: &'a Frac<C>) -> Frac<C> {
        if self.is_zero() || o.is_zero() {
            return Frac::zero();
        }
        // cross-cancel: both inputs are reduced
        let cancel = |n: &Poly<C>, d: &Poly<C>| {
            if n.is_constant() || d.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = Poly::gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.exact_div(&g).unwrap(), d.exact_div(&g).unwrap())
            }
        };
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        Frac::monic_den(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a, C: Field> Div<&'a Frac<C>> for &'a Frac<C> {
    type Output = Frac<C>;
    fn div(self, o: &'a Frac<C>) -> Frac<C> {
        self * &o.inv().expect("rational function division by zero")
    }
}

impl<C: Field> Neg for &Frac<C> {
    type Output = Frac<C>;
    fn neg(self) -> Frac<C> {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_by_value {
    ($tr:ident, $m:ident) => {
        impl<C: Field> $tr for Frac<C> {
            type Output = Frac<C>;
            fn $m(self, o: Frac<C>) -> Frac<C> {
                (&self).$m(&o)
            }
        }
    };
}
forward_by_value!(Add, add);
forward_by_value!(Sub, sub);
forward_by_value!(Mul, mul);
forward_by_value!(Div, div);

impl<C: Field> Neg for Frac<C> {
    type Output = Frac<C>;
    fn neg(self) -> Frac<C> {
        -&self
    }
}

impl<C: Field> fmt::Display for Frac<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl<C: Field> Ring for Frac<C> {
    fn from_rat(r: Rat) -> Self {
        Frac::constant(C::from_rat(r))
    }

    fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.is_atomic()
    }

    fn is_negative(&self) -> bool {
        self.num.is_negative()
    }
}

impl<C: Field> Field for Frac<C> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Frac::reduce(self.den.clone(), self.num.clone()))
    }

    // Euclid over K(x) pays for a rational-function gcd on every coefficient
    // operation. Clearing denominators and running a primitive remainder
    // sequence over K[x] only needs univariate gcds for the contents.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        let (mut a, mut b) = (primitive(clear_denominators(a)), primitive(clear_denominators(b)));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive(pseudo_rem(&a, &b));
            a = std::mem::replace(&mut b, r);
        }
        Some(Poly::new(a.into_iter().map(Frac::from_poly).collect()).monic())
    }
}

/// Coefficients over K[x] of a nonzero multiple of `p` by an element of K[x].
fn clear_denominators<C: Field>(p: &Poly<Frac<C>>) -> Vec<Poly<C>> {
    let mut l = Poly::<C>::one();
    for c in p.coeffs() {
        if !c.den.is_one() {
            let g = Poly::gcd(&l, &c.den);
            l = &l * &c.den.exact_div(&g).unwrap();
        }
    }
    p.coeffs()
        .iter()
        .map(|c| if c.den == l { c.num.clone() } else { &c.num * &l.exact_div(&c.den).unwrap() })
        .collect()
}

fn primitive<C: Field>(mut p: Vec<Poly<C>>) -> Vec<Poly<C>> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut g = Poly::<C>::zero();
    for c in &p {
        g = Poly::gcd(&g, c);
        if g.is_constant() {
            return p;
        }
    }
    p.iter().map(|c| c.exact_div(&g).unwrap()).collect()
}

/// Pseudo-remainder of `a` by `b`, both given by their coefficient vectors
/// with nonzero leading entries.
fn pseudo_rem<C: Field>(a: &[Poly<C>], b: &[Poly<C>]) -> Vec<Poly<C>> {
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let c = r.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = r.len() + 1 - b.len();
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, bi) in b[..b.len() - 1].iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * bi);
        }
    }
    r
}
