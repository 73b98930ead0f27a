//! Factorization over Q and over simple number fields, and root adjunction.
//!
//! Over Q: square-free decomposition, then rational roots, then Kronecker's
//! interpolation search for factors of degree two and higher. Over `Q(a)`:
//! Trager's norm method on top of the rational factorization.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::number_field::{Embedding, FieldRef, NfElem, NumberField};
use super::poly::Poly;
use super::resultant::resultant;
use super::ring::{Rat, Ring};
use crate::{Error, Result};

/// Default degree bound for factorization over Q.
pub const DEFAULT_FACTOR_BOUND: usize = 16;
/// Default degree bound for number fields built by [`adjoin_root`].
pub const DEFAULT_EXTENSION_BOUND: usize = 12;

/// Irreducible monic factors of `p` over Q with multiplicities.
///
/// The product of `factor^mult` equals `p` divided by its leading coefficient.
/// Factors are ordered by degree, then by coefficients.
pub fn factor_over_q(p: &Poly<Rat>, bound: usize) -> Result<Vec<(Poly<Rat>, u32)>> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::validation("cannot factor the zero polynomial"))?;
    if deg > bound {
        return Err(Error::Capability {
            what: format!("factorization of {}", p.render("x")),
            degree: deg,
            bound,
        });
    }
    let mut out = Vec::new();
    for (f, mult) in p.square_free_decomposition() {
        for g in factor_square_free(&f)? {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

fn cmp_poly(a: &Poly<Rat>, b: &Poly<Rat>) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Monic irreducible factors of a square-free polynomial.
fn factor_square_free(f: &Poly<Rat>) -> Result<Vec<Poly<Rat>>> {
    let mut out = Vec::new();
    let mut h = f.primitive_integer();
    for r in rational_roots(&h) {
        let lin = Poly::new(vec![-r, Rat::one()]);
        h = h.exact_div(&lin).unwrap().primitive_integer();
        out.push(lin);
    }
    let mut d = 2;
    let mut allowed = allowed_factor_degrees(&h);
    while h.degree().unwrap_or(0) >= 2 * d {
        if !allowed[d] {
            d += 1;
            continue;
        }
        match kronecker_factor(&h, d)? {
            Some(g) => {
                h = h.exact_div(&g).unwrap().primitive_integer();
                out.push(g.monic());
                allowed = allowed_factor_degrees(&h);
            }
            None => d += 1,
        }
    }
    if h.degree().unwrap_or(0) >= 1 {
        out.push(h.monic());
    }
    Ok(out)
}

fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(BigInt::from(i));
            if i * i != n {
                large.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Distinct rational roots of an integer polynomial (rational root test).
pub fn rational_roots(h: &Poly<Rat>) -> Vec<Rat> {
    let mut roots = Vec::new();
    let Some(low) = h.low_degree() else {
        return roots;
    };
    if low > 0 {
        roots.push(Rat::zero());
    }
    let h = Poly::new(h.coeffs()[low..].to_vec()).primitive_integer();
    if h.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let a0 = h.coeff(0).to_integer();
    let an = h.lead().unwrap().to_integer();
    let (Some(ps), Some(qs)) = (positive_divisors(&a0), positive_divisors(&an)) else {
        return roots;
    };
    let mut seen = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = Rat::new(p * BigInt::from(s), q.clone());
                if !seen.contains(&r) {
                    if h.eval(&r).is_zero() {
                        roots.push(r.clone());
                    }
                    seen.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Degrees `d` for which a factor of degree `d` over Q is still possible,
/// judged from distinct-degree factorizations modulo a few small primes.
fn allowed_factor_degrees(h: &Poly<Rat>) -> Vec<bool> {
    let n = h.degree().unwrap_or(0);
    let mut allowed = vec![true; n + 1];
    let ints: Vec<BigInt> = h.coeffs().iter().map(|c| c.to_integer()).collect();
    let mut used = 0;
    for p in (3u64..400).filter(|&p| (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)) {
        if used == 8 {
            break;
        }
        let pb = BigInt::from(p);
        let f: Vec<u64> = ints
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        let f = modp::trim(f);
        if f.len() != n + 1 {
            continue;
        }
        let df = modp::derivative(&f, p);
        if modp::gcd(&f, &df, p).len() != 1 {
            continue;
        }
        let degs = modp::distinct_degrees(&f, p);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in degs {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        used += 1;
    }
    allowed
}

/// Dense polynomial arithmetic over `Z/p` for small primes.
mod modp {
    pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
        trim(f.iter().enumerate().skip(1).map(|(k, c)| (k as u64 % p) * c % p).collect())
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let db = b.len() - 1;
        let li = inv(b[db], p);
        while a.len() > db {
            let q = a[a.len() - 1] * li % p;
            let off = a.len() - 1 - db;
            for (k, c) in b.iter().enumerate() {
                a[off + k] = (a[off + k] + p * p - q * c % p) % p;
            }
            a = trim(a);
        }
        a
    }

    fn div(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let db = b.len() - 1;
        let li = inv(b[db], p);
        let mut q = vec![0; a.len().saturating_sub(db)];
        while a.len() > db {
            let c = a[a.len() - 1] * li % p;
            let off = a.len() - 1 - db;
            q[off] = c;
            for (k, bk) in b.iter().enumerate() {
                a[off + k] = (a[off + k] + p * p - c * bk % p) % p;
            }
            a.pop();
            a = trim(a);
        }
        trim(q)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + x * y) % p;
            }
        }
        rem(&trim(v), f, p)
    }

    fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            e >>= 1;
        }
        r
    }

    /// Degrees of the irreducible factors of a square-free `f` modulo `p`.
    pub fn distinct_degrees(f: &[u64], p: u64) -> Vec<usize> {
        let mut f = f.to_vec();
        let mut out = Vec::new();
        let mut h = vec![0, 1];
        let mut i = 1;
        while f.len() > 1 {
            if 2 * i > f.len() - 1 {
                out.push(f.len() - 1);
                break;
            }
            h = powmod(&h, p, &f, p);
            let mut hx = h.clone();
            hx.resize(hx.len().max(2), 0);
            hx[1] = (hx[1] + p - 1) % p;
            let g = gcd(&f, &trim(hx), p);
            if g.len() > 1 {
                for _ in 0..(g.len() - 1) / i {
                    out.push(i);
                }
                f = div(&f, &g, p);
                h = rem(&h, &f, p);
            }
            i += 1;
        }
        out
    }
}

const KRONECKER_CANDIDATE_LIMIT: u64 = 2_000_000;

/// Searches for an integer factor of exact degree `d` by interpolation at
/// `d + 1` integer points. `h` is primitive with no rational roots.
fn kronecker_factor(h: &Poly<Rat>, d: usize) -> Result<Option<Poly<Rat>>> {
    let n = h.degree().unwrap();
    let mut pts: Vec<(i64, Vec<BigInt>)> = Vec::new();
    let radius = (4 * n as i64).max(8);
    for a in (0..=radius).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }) {
        let v = h.eval(&Rat::from_integer(a.into())).to_integer();
        if let Some(divs) = positive_divisors(&v) {
            pts.push((a, divs));
        }
    }
    pts.sort_by_key(|(a, divs)| (divs.len(), a.abs()));
    if pts.len() < d + 1 {
        return Err(Error::Capability {
            what: format!(
                "Kronecker search for {} (values too large to enumerate divisors)",
                h.render("x")
            ),
            degree: n,
            bound: n.saturating_sub(1),
        });
    }
    pts.truncate(d + 1);
    let total: u64 = pts
        .iter()
        .enumerate()
        .map(|(i, (_, ds))| ds.len() as u64 * if i == 0 { 1 } else { 2 })
        .product();
    if total > KRONECKER_CANDIDATE_LIMIT {
        return Err(Error::Capability {
            what: format!("Kronecker search for {} ({total} candidates)", h.render("x")),
            degree: n,
            bound: n.saturating_sub(1),
        });
    }
    let xs: Vec<Rat> = pts.iter().map(|(a, _)| Rat::from_integer((*a).into())).collect();
    let basis: Vec<Poly<Rat>> = (0..=d)
        .map(|i| {
            let mut l = Poly::one();
            for (j, xj) in xs.iter().enumerate() {
                if j != i {
                    let f = Poly::new(vec![-xj.clone(), Rat::one()]);
                    l = &l * &f.scale(&(xs[i].clone() - xj.clone()).recip());
                }
            }
            l
        })
        .collect();
    let lead_h = h.lead().unwrap().to_integer();
    let choices: Vec<Vec<BigInt>> = pts
        .iter()
        .enumerate()
        .map(|(i, (_, ds))| {
            if i == 0 {
                ds.clone()
            } else {
                ds.iter().flat_map(|x| [x.clone(), -x.clone()]).collect()
            }
        })
        .collect();
    let mut idx = vec![0usize; d + 1];
    loop {
        let mut g = Poly::zero();
        for (i, &k) in idx.iter().enumerate() {
            g = &g + &basis[i].scale(&Rat::from_integer(choices[i][k].clone()));
        }
        if g.degree() == Some(d)
            && g.coeffs().iter().all(|c| c.is_integer())
            && lead_h.is_multiple_of(&g.lead().unwrap().to_integer())
        {
            if let Some(_q) = h.exact_div(&g) {
                return Ok(Some(g));
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn rational_coeffs(p: &Poly<NfElem>) -> Option<Poly<Rat>> {
    p.coeffs()
        .iter()
        .map(|c| c.to_rat())
        .collect::<Option<Vec<_>>>()
        .map(Poly::new)
}

fn lift(p: &Poly<Rat>) -> Poly<NfElem> {
    p.map(|c| NfElem::rational(c.clone()))
}

/// Norm of `f` from `Q(a)[x]` down to `Q[x]`: `res_t(m(t), f_t(x))` where
/// `f_t` replaces the generator by `t`.
pub fn norm(f: &Poly<NfElem>, field: &Arc<NumberField>) -> Result<Poly<Rat>> {
    // outer variable t, inner x
    let dmax = f.coeffs().iter().map(|c| c.residue().degree().unwrap_or(0)).max().unwrap_or(0);
    let mut outer: Vec<Poly<Rat>> = vec![Poly::zero(); dmax + 1];
    for (j, c) in f.coeffs().iter().enumerate() {
        for (k, r) in c.residue().coeffs().iter().enumerate() {
            outer[k] = &outer[k] + &Poly::monomial(r.clone(), j);
        }
    }
    let g = Poly::new(outer);
    let m = field.minpoly().map(|c| Poly::constant(c.clone()));
    resultant(&m, &g)
}

/// Irreducible monic factors of `m` over the field of its coefficients.
pub fn factor_over_field(
    m: &Poly<NfElem>,
    field: &FieldRef,
    bound: usize,
) -> Result<Vec<(Poly<NfElem>, u32)>> {
    if m.is_zero() {
        return Err(Error::validation("cannot factor the zero polynomial"));
    }
    let Some(fd) = field else {
        let q = rational_coeffs(m).ok_or_else(|| {
            Error::validation("polynomial has algebraic coefficients but no field was given")
        })?;
        return Ok(factor_over_q(&q, bound)?
            .into_iter()
            .map(|(g, e)| (lift(&g), e))
            .collect());
    };
    let mut out = Vec::new();
    for (f, mult) in m.square_free_decomposition() {
        for g in trager(&f, fd, bound)? {
            out.push((g, mult));
        }
    }
    Ok(out)
}

fn trager(f: &Poly<NfElem>, fd: &Arc<NumberField>, bound: usize) -> Result<Vec<Poly<NfElem>>> {
    if f.degree() == Some(1) {
        return Ok(vec![f.monic()]);
    }
    let alpha = NfElem::generator(fd);
    for s in 0..64i64 {
        let shift = alpha.clone() * NfElem::from_int(s);
        let fs = f.compose(&Poly::new(vec![-shift.clone(), NfElem::one()]));
        let n = norm(&fs, fd)?;
        if !n.is_square_free() {
            continue;
        }
        let mut out = Vec::new();
        let back = Poly::new(vec![shift.clone(), NfElem::one()]);
        for (ni, _) in factor_over_q(&n, bound)? {
            let h = Poly::gcd(&lift(&ni), &fs);
            if h.degree().unwrap_or(0) > 0 {
                out.push(h.compose(&back).monic());
            }
        }
        return Ok(out);
    }
    Err(Error::precondition(
        "no square-free norm found for Trager factorization",
    ))
}

/// Result of adjoining a root: the (possibly unchanged) field, the map from
/// the old field into it, and the root itself.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub field: FieldRef,
    pub embedding: Embedding,
    pub root: NfElem,
}

/// Returns a field containing a root of `m`, growing `base` only when `m`
/// has no root in it. Chooses a factor of least degree.
pub fn adjoin_root(base: &FieldRef, m: &Poly<NfElem>, bound: usize) -> Result<Adjunction> {
    if m.degree().unwrap_or(0) == 0 {
        return Err(Error::validation("polynomial has no roots to adjoin"));
    }
    let factors = factor_over_field(m, base, DEFAULT_FACTOR_BOUND.max(bound))?;
    let (g, _) = factors
        .iter()
        .min_by_key(|(g, _)| g.degree())
        .cloned()
        .unwrap();
    let dg = g.degree().unwrap();
    if dg == 1 {
        let root = -(g.coeff(0) / g.coeff(1));
        return Ok(Adjunction {
            field: base.clone(),
            embedding: Embedding::identity(base.clone()),
            root,
        });
    }
    let Some(fa) = base else {
        if dg > bound {
            return Err(Error::Capability {
                what: format!("extension by a root of {}", g.render("x")),
                degree: dg,
                bound,
            });
        }
        let q = rational_coeffs(&g).unwrap();
        let nf = NumberField::new_unchecked(q, "a");
        return Ok(Adjunction {
            field: Some(nf.clone()),
            embedding: Embedding::identity(None),
            root: NfElem::generator(&nf),
        });
    };
    let total = dg * fa.degree();
    if total > bound {
        return Err(Error::Capability {
            what: format!(
                "compositum of Q[t]/({}) with a root of {}",
                fa.minpoly().render("t"),
                g.render("x")
            ),
            degree: total,
            bound,
        });
    }
    let alpha = NfElem::generator(fa);
    for k in 1..64i64 {
        // gamma = beta + k*alpha; minimal polynomial is the norm of g(x - k*alpha)
        let shifted = g.compose(&Poly::new(vec![-(alpha.clone() * NfElem::from_int(k)), NfElem::one()]));
        let r = norm(&shifted, fa)?;
        if !r.is_square_free() {
            continue;
        }
        let nf = NumberField::new_unchecked(r, "a");
        let gamma = NfElem::generator(&nf);
        // alpha's image: common root of m_alpha(t) and g_t(gamma - k t) over Q(gamma)
        let ma = lift(fa.minpoly());
        let lin = Poly::new(vec![gamma.clone(), NfElem::from_int(-k)]);
        let h = g
            .coeffs()
            .iter()
            .rev()
            .fold(Poly::<NfElem>::zero(), |acc, c| {
                let ct = c.residue().map(|q| NfElem::rational(q.clone()));
                &(&acc * &lin) + &ct
            });
        let common = Poly::gcd(&ma, &h);
        if common.degree() != Some(1) {
            return Err(Error::precondition(
                "primitive element construction did not isolate the old generator",
            ));
        }
        let alpha_img = -common.coeff(0);
        let beta = gamma.clone() - alpha_img.clone() * NfElem::from_int(k);
        return Ok(Adjunction {
            field: Some(nf),
            embedding: Embedding::new(base.clone(), alpha_img),
            root: beta,
        });
    }
    Err(Error::precondition("no primitive element found"))
}

/// A number field grown on demand until given polynomials split.
pub struct Splitter {
    field: FieldRef,
    bound: usize,
}

impl Splitter {
    pub fn new(base: FieldRef, bound: usize) -> Self {
        Splitter { field: base, bound }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Distinct roots of `m`, extending the field until `m` splits. The
    /// returned embedding carries elements of the previous field into the
    /// current one.
    pub fn split(&mut self, m: &Poly<NfElem>) -> Result<(Vec<NfElem>, Embedding)> {
        let mut emb = Embedding::identity(self.field.clone());
        let mut m = m.clone();
        loop {
            let fs = factor_over_field(&m, &self.field, DEFAULT_FACTOR_BOUND)?;
            match fs.iter().find(|(f, _)| f.degree().unwrap() > 1) {
                None => {
                    let roots = fs
                        .iter()
                        .filter(|(f, _)| f.degree() == Some(1))
                        .map(|(f, _)| -(f.coeff(0) / f.coeff(1)))
                        .collect();
                    return Ok((roots, emb));
                }
                Some((f, _)) => {
                    let adj = adjoin_root(&self.field, f, self.bound)?;
                    m = m.map(|c| adj.embedding.apply(c));
                    emb = emb.then(&adj.embedding);
                    self.field = adj.field;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::int;

    fn q(cs: &[i64]) -> Poly<Rat> {
        Poly::from_ints(cs)
    }

    fn expand(fs: &[(Poly<Rat>, u32)]) -> Poly<Rat> {
        fs.iter().fold(Poly::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    #[test]
    fn x4_minus_1() {
        let p = q(&[-1, 0, 0, 0, 1]);
        let fs = factor_over_q(&p, 16).unwrap();
        assert_eq!(
            fs,
            vec![(q(&[-1, 1]), 1), (q(&[1, 1]), 1), (q(&[1, 0, 1]), 1)]
        );
        assert_eq!(expand(&fs), p);
    }

    #[test]
    fn x2_plus_1_irreducible() {
        let fs = factor_over_q(&q(&[1, 0, 1]), 16).unwrap();
        assert_eq!(fs, vec![(q(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(factor_over_q(&Poly::zero(), 16).is_err());
    }

    #[test]
    fn degree_bound() {
        let p = Poly::monomial(int(1), 17);
        assert!(factor_over_q(&p, 16).unwrap_err().is_capability());
    }

    #[test]
    fn kronecker_splits_quartic_without_roots() {
        // (x^2 + 1)(x^2 + x + 2)
        let p = &q(&[1, 0, 1]) * &q(&[2, 1, 1]);
        let fs = factor_over_q(&p, 16).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(expand(&fs), p);
        // x^4 + 1 stays irreducible
        assert_eq!(factor_over_q(&q(&[1, 0, 0, 0, 1]), 16).unwrap().len(), 1);
    }

    #[test]
    fn repeated_and_scaled() {
        let p = (&q(&[-1, 1]).pow(3) * &q(&[3, 0, 2])).scale(&int(5));
        let fs = factor_over_q(&p, 16).unwrap();
        assert_eq!(expand(&fs).scale(&int(10)), p);
        assert!(fs.contains(&(q(&[-1, 1]), 3)));
    }

    #[test]
    fn adjoin_sqrt2_then_again() {
        let m = lift(&q(&[-2, 0, 1]));
        let a = adjoin_root(&None, &m, 12).unwrap();
        let f = a.field.clone().unwrap();
        assert_eq!(f.minpoly(), &q(&[-2, 0, 1]));
        assert!(m.eval(&a.root).is_zero());
        let b = adjoin_root(&a.field, &m, 12).unwrap();
        assert!(Arc::ptr_eq(b.field.as_ref().unwrap(), &f));
        assert!(m.eval(&b.root).is_zero());
    }

    #[test]
    fn compositum_sqrt2_i() {
        let a = adjoin_root(&None, &lift(&q(&[-2, 0, 1])), 12).unwrap();
        let m = lift(&q(&[1, 0, 1]));
        let b = adjoin_root(&a.field, &m, 12).unwrap();
        assert_eq!(b.field.as_ref().unwrap().degree(), 4);
        assert!(m.eval(&b.root).is_zero());
        let s2 = b.embedding.apply(&a.root);
        assert_eq!(s2.clone() * s2, NfElem::from_int(2));
    }

    #[test]
    fn extension_bound() {
        let m = lift(&Poly::new(
            std::iter::once(int(2))
                .chain(std::iter::repeat_n(int(0), 15))
                .chain(std::iter::once(int(1)))
                .collect(),
        ));
        let e = adjoin_root(&None, &m, 12).unwrap_err();
        assert!(e.is_capability(), "{e}");
    }

    #[test]
    fn factor_over_sqrt2() {
        let a = adjoin_root(&None, &lift(&q(&[-2, 0, 1])), 12).unwrap();
        let fs = factor_over_field(&lift(&q(&[-2, 0, 1])), &a.field, 16).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(f, _)| f.degree() == Some(1)));
        // x^2 - 3 stays irreducible over Q(sqrt 2)
        let fs = factor_over_field(&lift(&q(&[-3, 0, 1])), &a.field, 16).unwrap();
        assert_eq!(fs.len(), 1);
    }
}
