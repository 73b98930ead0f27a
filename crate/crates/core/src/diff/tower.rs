//! Descriptors for towers `K = F_0 ⊂ F_1 ⊂ ... ⊂ F_k` where each step adjoins
//! an algebraic element, an integral, or the exponential of an integral.
//!
//! Step `i` (1-based) introduces the symbol `t<i>`. Payloads are expressions
//! in `x` and the symbols of earlier steps; an algebraic step's minimal
//! polynomial is written in `z`.

use serde::{Deserialize, Serialize};

use crate::arith::mpoly::MPoly;
use crate::arith::{Poly, Rat};
use crate::expr::{parse_expr, Expr, ExprAlgebra};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TowerStep {
    Algebraic { minpoly: String },
    Integral { f: String },
    ExpIntegral { f: String },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TowerDescriptor {
    pub steps: Vec<TowerStep>,
}

/// Rational expression as an unreduced pair of polynomials.
#[derive(Clone)]
struct RatExpr {
    num: MPoly,
    den: MPoly,
}

struct Scope<'a> {
    names: &'a [String],
    /// Minimal polynomials of earlier algebraic steps, by variable index.
    relations: &'a [(usize, MPoly)],
}

impl Scope<'_> {
    fn n(&self) -> usize {
        self.names.len()
    }

    fn reduce(&self, p: &MPoly) -> MPoly {
        self.relations
            .iter()
            .rev()
            .fold(p.clone(), |acc, (i, m)| acc.reduce_by(*i, m))
    }
}

impl ExprAlgebra<RatExpr> for Scope<'_> {
    fn num(&self, r: &Rat) -> RatExpr {
        RatExpr {
            num: MPoly::constant(self.n(), r.clone()),
            den: MPoly::constant(self.n(), Rat::from_integer(1.into())),
        }
    }
    fn var(&self, name: &str) -> Result<RatExpr> {
        let i = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::validation(format!("unknown symbol '{name}'")))?;
        Ok(RatExpr {
            num: MPoly::var(self.n(), i),
            den: MPoly::constant(self.n(), Rat::from_integer(1.into())),
        })
    }
    fn add(&self, a: &RatExpr, b: &RatExpr) -> RatExpr {
        if a.den == b.den {
            return RatExpr {
                num: self.reduce(&a.num.add(&b.num)),
                den: a.den.clone(),
            };
        }
        RatExpr {
            num: self.reduce(&a.num.mul(&b.den).add(&b.num.mul(&a.den))),
            den: self.reduce(&a.den.mul(&b.den)),
        }
    }
    fn sub(&self, a: &RatExpr, b: &RatExpr) -> RatExpr {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &RatExpr, b: &RatExpr) -> RatExpr {
        RatExpr {
            num: self.reduce(&a.num.mul(&b.num)),
            den: self.reduce(&a.den.mul(&b.den)),
        }
    }
    fn neg(&self, a: &RatExpr) -> RatExpr {
        RatExpr {
            num: a.num.neg(),
            den: a.den.clone(),
        }
    }
    fn div(&self, a: &RatExpr, b: &RatExpr) -> Result<RatExpr> {
        if b.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatExpr {
            num: self.reduce(&a.num.mul(&b.den)),
            den: self.reduce(&a.den.mul(&b.num)),
        })
    }
}

fn render(e: &RatExpr, names: &[String]) -> String {
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let wrap = |p: &MPoly| {
        let s = p.render(&names);
        if p.terms().count() > 1 || s.starts_with('-') {
            format!("({s})")
        } else {
            s
        }
    };
    match e.den.as_constant() {
        Some(c) if c == Rat::from_integer(1.into()) => e.num.render(&names),
        _ => format!("{}/{}", wrap(&e.num), wrap(&e.den)),
    }
}

fn step_error(i: usize, msg: impl std::fmt::Display) -> Error {
    Error::validation(format!("tower step {i}: {msg}"))
}

/// Checks every payload against the field built by the preceding steps and
/// returns the descriptor with payloads in canonical form.
///
/// Zero tests reduce modulo earlier algebraic relations whose leading
/// coefficient is a rational constant; other relations are taken as given.
pub fn validate_tower(t: &TowerDescriptor) -> Result<TowerDescriptor> {
    let mut names = vec!["x".to_string()];
    let mut relations: Vec<(usize, MPoly)> = Vec::new();
    let mut out = Vec::new();
    for (k, step) in t.steps.iter().enumerate() {
        let i = k + 1;
        let sym = format!("t{i}");
        let mut new_relation = None;
        let canonical = match step {
            TowerStep::Integral { f } | TowerStep::ExpIntegral { f } => {
                let scope = Scope {
                    names: &names,
                    relations: &relations,
                };
                let e = parse(f, i)?;
                let v = e.fold(&scope).map_err(|err| step_error(i, err))?;
                let exp = matches!(step, TowerStep::ExpIntegral { .. });
                if exp && v.num.is_zero() {
                    return Err(step_error(
                        i,
                        "the exponential of an integral needs a nonzero integrand",
                    ));
                }
                if !exp && v.num.is_zero() {
                    return Err(step_error(i, "the integral of zero adjoins only a constant"));
                }
                let s = render(&v, &names);
                if exp {
                    TowerStep::ExpIntegral { f: s }
                } else {
                    TowerStep::Integral { f: s }
                }
            }
            TowerStep::Algebraic { minpoly } => {
                let mut ext = names.clone();
                ext.push("z".to_string());
                let scope = Scope {
                    names: &ext,
                    relations: &relations
                        .iter()
                        .map(|(j, m)| (*j, widen(m, ext.len())))
                        .collect::<Vec<_>>(),
                };
                let e = parse(minpoly, i)?;
                let v = e.fold(&scope).map_err(|err| step_error(i, err))?;
                let zi = ext.len() - 1;
                if v.den.degree_in(zi).unwrap_or(0) > 0 {
                    return Err(step_error(i, "minimal polynomial has z in a denominator"));
                }
                let dz = v.num.degree_in(zi).unwrap_or(0);
                if dz == 0 {
                    return Err(step_error(i, "minimal polynomial must involve z"));
                }
                if names.len() == 1 && v.num.degree_in(0) == Some(0) && dz >= 2 {
                    check_rational_irreducible(&v.num, zi, i)?;
                }
                if v.num.coeff_in(zi, dz).as_constant().is_some() {
                    new_relation = Some(v.num.clone());
                }
                TowerStep::Algebraic {
                    minpoly: render(&v, &ext),
                }
            }
        };
        // z of an algebraic step becomes t<i>, at the same variable index
        relations = relations
            .iter()
            .map(|(j, r)| (*j, widen(r, names.len() + 1)))
            .collect();
        if let Some(m) = new_relation {
            relations.push((names.len(), m));
        }
        names.push(sym);
        out.push(canonical);
    }
    Ok(TowerDescriptor { steps: out })
}

fn parse(src: &str, i: usize) -> Result<Expr> {
    parse_expr(src, &[]).map_err(|e| step_error(i, e))
}

/// Adds trailing variables (absent from `m`).
fn widen(m: &MPoly, nvars: usize) -> MPoly {
    let mut r = MPoly::zero(nvars);
    for (e, c) in m.terms() {
        let mut e = e.clone();
        e.resize(nvars, 0);
        let mut t = MPoly::constant(nvars, c.clone());
        for (v, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = t.mul(&MPoly::var(nvars, v));
            }
        }
        r = r.add(&t);
    }
    r
}

fn check_rational_irreducible(m: &MPoly, zi: usize, i: usize) -> Result<()> {
    let d = m.degree_in(zi).unwrap();
    let coeffs: Vec<Rat> = (0..=d)
        .map(|k| m.coeff_in(zi, k).as_constant().unwrap_or_default())
        .collect();
    let p = Poly::new(coeffs);
    let f = crate::arith::factor_over_q(&p, crate::arith::factor::DEFAULT_FACTOR_BOUND)?;
    if f.len() != 1 || f[0].1 != 1 {
        return Err(step_error(
            i,
            format!("minimal polynomial {} is reducible over Q", p.render("z")),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(steps: Vec<TowerStep>) -> TowerDescriptor {
        TowerDescriptor { steps }
    }

    #[test]
    fn empty_and_log() {
        assert_eq!(validate_tower(&tower(vec![])).unwrap().steps.len(), 0);
        let t = validate_tower(&tower(vec![TowerStep::Integral { f: "1/x".into() }])).unwrap();
        assert_eq!(t.steps, vec![TowerStep::Integral { f: "1/x".into() }]);
    }

    #[test]
    fn zero_integrands() {
        let e = validate_tower(&tower(vec![TowerStep::ExpIntegral { f: "0".into() }])).unwrap_err();
        assert!(e.to_string().contains("nonzero"), "{e}");
        assert!(validate_tower(&tower(vec![TowerStep::Integral { f: "x - x".into() }])).is_err());
    }

    #[test]
    fn later_steps_see_earlier_symbols() {
        let t = tower(vec![
            TowerStep::Algebraic {
                minpoly: "z^2 - 2".into(),
            },
            TowerStep::ExpIntegral { f: "t1*x".into() },
        ]);
        assert!(validate_tower(&t).is_ok());
        // t1^2 - 2 vanishes in Q(sqrt 2)
        let t = tower(vec![
            TowerStep::Algebraic {
                minpoly: "z^2 - 2".into(),
            },
            TowerStep::ExpIntegral { f: "t1^2 - 2".into() },
        ]);
        assert!(validate_tower(&t).is_err());
        let t = tower(vec![TowerStep::Integral { f: "t2".into() }]);
        assert!(validate_tower(&t).is_err());
    }

    #[test]
    fn reducible_minpoly() {
        let t = tower(vec![TowerStep::Algebraic {
            minpoly: "z^2 - 4".into(),
        }]);
        assert!(validate_tower(&t).is_err());
    }

    #[test]
    fn json_shape() {
        let t: TowerDescriptor =
            serde_json::from_str(r#"{"steps":[{"kind":"exp-integral","f":"1"}]}"#).unwrap();
        assert_eq!(t.steps, vec![TowerStep::ExpIntegral { f: "1".into() }]);
    }
}
