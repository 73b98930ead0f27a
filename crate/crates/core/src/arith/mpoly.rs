//! Sparse multivariate polynomials over Q in a fixed list of variables.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::ring::{join_terms, signed_term, Rat};

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, ca * cb);
            }
        }
        r
    }

    /// Degree in variable `i`; `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Coefficient of `v_i^k` as a polynomial in the remaining variables.
    pub fn coeff_in(&self, i: usize, k: u32) -> MPoly {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e = e.clone();
                e[i] = 0;
                r.terms.insert(e, c.clone());
            }
        }
        r
    }

    /// Rational value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Remainder modulo `m`, which must have a nonzero rational leading
    /// coefficient in variable `i`.
    pub fn reduce_by(&self, i: usize, m: &MPoly) -> MPoly {
        let d = m.degree_in(i).expect("nonzero modulus");
        let lead = m.coeff_in(i, d).as_constant().expect("modulus with constant leading coefficient");
        let mut r = self.clone();
        while let Some(k) = r.degree_in(i).filter(|&k| k >= d) {
            let c = r.coeff_in(i, k);
            let mut shift = vec![0; self.nvars];
            shift[i] = k - d;
            let mono = MPoly {
                nvars: self.nvars,
                terms: [(shift, lead.recip())].into_iter().collect(),
            };
            r = r.sub(&c.mul(&mono).mul(m));
        }
        r
    }

    /// Renders with the given variable names, highest total degree first.
    pub fn render(&self, names: &[&str]) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        join_terms(terms.into_iter().map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{k}", names[i])
                    }
                })
                .collect();
            signed_term(c, &mono.join("*"))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::int;

    #[test]
    fn reduce_sqrt2() {
        // t^3 mod (t^2 - 2) = 2t
        let t = MPoly::var(2, 1);
        let m = t.mul(&t).sub(&MPoly::constant(2, int(2)));
        let r = t.mul(&t).mul(&t).reduce_by(1, &m);
        assert_eq!(r, t.mul(&MPoly::constant(2, int(2))));
        assert_eq!(r.render(&["x", "t"]), "2*t");
    }

    #[test]
    fn render_mixed() {
        let x = MPoly::var(2, 0);
        let t = MPoly::var(2, 1);
        let p = x.mul(&x).mul(&t).sub(&MPoly::constant(2, int(3)));
        assert_eq!(p.render(&["x", "t"]), "x^2*t - 3");
    }
}
