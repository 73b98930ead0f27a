//! Simple algebraic extensions `Q(a) = Q[t]/(m(t))` and their elements.
//!
//! An element carries the field it lives in. Rational elements carry no
//! field at all, so they mix freely with elements of any extension; mixing
//! elements of two different extensions is a logic error and panics.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::ring::{Field, Rat, Ring};

#[derive(Clone, Debug)]
pub struct NumberField {
    minpoly: Poly<Rat>,
    name: String,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl NumberField {
    /// `minpoly` must be irreducible over Q of degree at least 2; it is made monic.
    pub fn new(minpoly: Poly<Rat>, name: impl Into<String>) -> crate::Result<Arc<Self>> {
        if minpoly.degree().unwrap_or(0) < 2 {
            return Err(crate::Error::validation(
                "a number field needs a minimal polynomial of degree at least 2",
            ));
        }
        let factors = super::factor::factor_over_q(&minpoly, usize::MAX)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(crate::Error::validation(format!(
                "minimal polynomial {} is not irreducible over Q",
                minpoly.render("t")
            )));
        }
        Ok(Arc::new(NumberField {
            minpoly: minpoly.monic(),
            name: name.into(),
        }))
    }

    pub(crate) fn new_unchecked(minpoly: Poly<Rat>, name: impl Into<String>) -> Arc<Self> {
        Arc::new(NumberField {
            minpoly: minpoly.monic(),
            name: name.into(),
        })
    }

    pub fn minpoly(&self) -> &Poly<Rat> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// Element of Q or of a simple extension of Q.
#[derive(Clone, Debug)]
pub struct NfElem {
    field: Option<Arc<NumberField>>,
    residue: Poly<Rat>,
}

/// Shorthand for the field descriptor attached to elements.
pub type FieldRef = Option<Arc<NumberField>>;

pub(crate) fn same_field(a: &FieldRef, b: &FieldRef) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => Arc::ptr_eq(x, y) || x == y,
        _ => false,
    }
}

impl NfElem {
    /// Element `residue(a)` of `field`, reduced modulo the minimal polynomial.
    pub fn new(field: FieldRef, residue: Poly<Rat>) -> Self {
        match field {
            None => {
                assert!(residue.is_constant(), "rational element with a non-constant residue");
                NfElem {
                    field: None,
                    residue,
                }
            }
            Some(f) => {
                let r = residue.rem(&f.minpoly);
                Self::normalize(Some(f), r)
            }
        }
    }

    fn normalize(field: FieldRef, residue: Poly<Rat>) -> Self {
        if residue.is_constant() {
            NfElem {
                field: None,
                residue,
            }
        } else {
            NfElem { field, residue }
        }
    }

    pub fn rational(r: Rat) -> Self {
        NfElem {
            field: None,
            residue: Poly::constant(r),
        }
    }

    /// The generator of `field`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(Some(field.clone()), Poly::x())
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn residue(&self) -> &Poly<Rat> {
        &self.residue
    }

    pub fn is_rational(&self) -> bool {
        self.field.is_none()
    }

    fn rat_ref(&self) -> Option<&Rat> {
        if self.field.is_some() {
            return None;
        }
        static ZERO: std::sync::OnceLock<Rat> = std::sync::OnceLock::new();
        Some(self.residue.coeffs().first().unwrap_or_else(|| ZERO.get_or_init(Rat::zero)))
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.field.is_none().then(|| self.residue.coeff(0))
    }

    fn join(&self, o: &Self) -> FieldRef {
        match (&self.field, &o.field) {
            (None, f) | (f, None) => f.clone(),
            (Some(a), Some(b)) => {
                assert!(
                    Arc::ptr_eq(a, b) || a == b,
                    "mixing elements of distinct number fields ({} vs {})",
                    a.minpoly.render("t"),
                    b.minpoly.render("t")
                );
                Some(a.clone())
            }
        }
    }

    /// Rational coefficients of the residue in ascending powers of the generator.
    pub fn coefficients(&self) -> Vec<Rat> {
        let d = self.field.as_ref().map_or(1, |f| f.degree());
        (0..d).map(|k| self.residue.coeff(k)).collect()
    }
}

impl PartialEq for NfElem {
    fn eq(&self, o: &Self) -> bool {
        self.residue == o.residue && same_field(&self.field, &o.field)
    }
}

impl Zero for NfElem {
    fn zero() -> Self {
        NfElem {
            field: None,
            residue: Poly::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
}

impl One for NfElem {
    fn one() -> Self {
        Self::rational(Rat::one())
    }
}

impl<'a> Add<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn add(self, o: &'a NfElem) -> NfElem {
        if let (Some(a), Some(b)) = (self.rat_ref(), o.rat_ref()) {
            return NfElem::rational(a + b);
        }
        let f = self.join(o);
        NfElem::normalize(f, &self.residue + &o.residue)
    }
}

impl<'a> Sub<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn sub(self, o: &'a NfElem) -> NfElem {
        if let (Some(a), Some(b)) = (self.rat_ref(), o.rat_ref()) {
            return NfElem::rational(a - b);
        }
        let f = self.join(o);
        NfElem::normalize(f, &self.residue - &o.residue)
    }
}

impl<'a> Mul<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn mul(self, o: &'a NfElem) -> NfElem {
        if let (Some(a), Some(b)) = (self.rat_ref(), o.rat_ref()) {
            return NfElem::rational(a * b);
        }
        let f = self.join(o);
        let p = &self.residue * &o.residue;
        match f {
            None => NfElem::normalize(None, p),
            Some(fd) => {
                let r = p.rem(&fd.minpoly);
                NfElem::normalize(Some(fd), r)
            }
        }
    }
}

impl<'a> Div<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn div(self, o: &'a NfElem) -> NfElem {
        self * &o.inv().expect("number field division by zero")
    }
}

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem {
            field: self.field.clone(),
            residue: -&self.residue,
        }
    }
}

macro_rules! forward_by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for NfElem {
            type Output = NfElem;
            fn $m(self, o: NfElem) -> NfElem {
                (&self).$m(&o)
            }
        }
    };
}
forward_by_value!(Add, add);
forward_by_value!(Sub, sub);
forward_by_value!(Mul, mul);
forward_by_value!(Div, div);

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        -&self
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            None => write!(f, "{}", self.residue.coeff(0)),
            Some(fd) => f.write_str(&self.residue.render(&fd.name)),
        }
    }
}

impl Ring for NfElem {
    fn from_rat(r: Rat) -> Self {
        Self::rational(r)
    }

    fn is_atomic(&self) -> bool {
        match &self.field {
            None => self.residue.coeff(0).is_atomic(),
            Some(_) => self.residue.is_atomic(),
        }
    }

    fn is_negative(&self) -> bool {
        self.residue.is_negative()
    }

    fn as_rat(&self) -> Option<Rat> {
        self.to_rat()
    }
}

impl Field for NfElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.field {
            None => Some(Self::rational(self.residue.coeff(0).recip())),
            Some(fd) => {
                let (g, s, _) = Poly::ext_gcd(&self.residue, &fd.minpoly);
                debug_assert!(g.is_one());
                Some(NfElem::new(Some(fd.clone()), s))
            }
        }
    }

    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        let rational = |p: &Poly<Self>| p.coeffs().iter().map(|c| c.as_rat()).collect::<Option<Vec<_>>>();
        let g = super::poly::rational_gcd(&rational(a)?, &rational(b)?);
        Some(Poly::new(g.into_iter().map(NfElem::rational).collect()))
    }
}

/// Ring map from one number field into a larger one, determined by the image
/// of the old generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldRef,
    image: Option<NfElem>,
}

impl Embedding {
    pub fn identity(field: FieldRef) -> Self {
        Embedding {
            source: field,
            image: None,
        }
    }

    pub(crate) fn new(source: FieldRef, image: NfElem) -> Self {
        Embedding {
            source,
            image: Some(image),
        }
    }

    pub fn source(&self) -> &FieldRef {
        &self.source
    }

    pub fn image_of_generator(&self) -> Option<&NfElem> {
        self.image.as_ref()
    }

    pub fn apply(&self, e: &NfElem) -> NfElem {
        match (&e.field, &self.image) {
            (None, _) | (_, None) => e.clone(),
            (Some(f), Some(img)) => {
                assert!(
                    self.source.as_ref().is_some_and(|s| Arc::ptr_eq(s, f) || **s == **f),
                    "embedding applied to an element of a foreign field"
                );
                e.residue.eval_with(img, |c| NfElem::rational(c.clone()))
            }
        }
    }

    /// Composite map: first `self`, then `next`.
    pub fn then(&self, next: &Embedding) -> Embedding {
        let image = match (&self.image, &self.source) {
            (Some(img), _) => Some(next.apply(img)),
            (None, Some(src)) => Some(next.apply(&NfElem::generator(src))),
            (None, None) => None,
        };
        Embedding {
            source: self.source.clone(),
            image,
        }
    }
}
