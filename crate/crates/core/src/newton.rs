//! Puiseux branches at `y = infinity` of an algebraic function `P(y, z) = 0`
//! with constant coefficients, by the Newton polygon method.
//!
//! The expansion runs in `s = 1/y`. Each step reads an edge of the lower
//! Newton polygon, which fixes the next exponent `g` and a characteristic
//! polynomial for the coefficient `c`, then substitutes `z = c s^g + z1`.
//! One representative is kept per irreducible factor of each characteristic
//! polynomial (in `T = c^q`), so a class of conjugate branches is reported
//! once with its multiplicity.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::factor::Splitter;
use crate::arith::mpoly::MPoly;
use crate::arith::{adjoin_root, factor_over_field, Embedding, FieldRef, Frac, NfElem, Poly, Rat, RatFunc, Ring};
use crate::expr::{Expr, ExprAlgebra};
use crate::puiseux::PuiseuxSeries;
use crate::{Error, Result};

/// `P(y, z)` as a polynomial in `z` over `Q[y]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicCurve {
    p: Poly<Poly<Rat>>,
    note: Option<String>,
}

fn render_bivariate(p: &Poly<Poly<Rat>>) -> String {
    let mut m = MPoly::zero(2);
    for (i, c) in p.coeffs().iter().enumerate() {
        for (k, r) in c.coeffs().iter().enumerate() {
            let mut t = MPoly::constant(2, r.clone());
            for _ in 0..k {
                t = t.mul(&MPoly::var(2, 0));
            }
            for _ in 0..i {
                t = t.mul(&MPoly::var(2, 1));
            }
            m = m.add(&t);
        }
    }
    m.render(&["y", "z"])
}

impl AlgebraicCurve {
    /// Validates and preprocesses: removes factors free of `z` and takes the
    /// square-free part in `z`.
    pub fn new(p: Poly<Poly<Rat>>) -> Result<Self> {
        let m = p.degree().unwrap_or(0);
        if m == 0 {
            return Err(Error::validation("the curve must involve z"));
        }
        let mut notes = Vec::new();
        // square-free part over Q(y)
        let over_qy: Poly<Frac<Rat>> = p.map(|c| Frac::from_poly(c.clone()));
        let g = Poly::gcd(&over_qy, &over_qy.derivative());
        let mut q = p.clone();
        if g.degree().unwrap_or(0) > 0 {
            let sf = over_qy.exact_div(&g).expect("gcd divides");
            // clear denominators
            let mut den = Poly::<Rat>::one();
            for c in sf.coeffs() {
                let d = c.den();
                let l = Poly::gcd(&den, d);
                den = (&den * d).exact_div(&l).unwrap();
            }
            q = sf.map(|c| (c.num() * &den.exact_div(c.den()).unwrap()).clone());
            notes.push(format!("took the square-free part in z of {}", render_bivariate(&p)));
        }
        // content in y
        let content = q
            .coeffs()
            .iter()
            .fold(Poly::<Rat>::zero(), |acc, c| Poly::gcd(&acc, c));
        if content.degree().unwrap_or(0) > 0 {
            notes.push(format!("removed the factor {} free of z", content.render("y")));
            q = q.map(|c| c.exact_div(&content).unwrap());
        }
        // integer coefficients, positive leading coefficient
        let flat: Vec<Rat> = q.coeffs().iter().flat_map(|c| c.coeffs().to_vec()).collect();
        let first = flat.iter().find(|c| !c.is_zero()).cloned().expect("curve is nonzero");
        let prim = Poly::new(flat).primitive_integer();
        let k = prim.coeffs().iter().find(|c| !c.is_zero()).unwrap() / &first;
        let mut q = q.map(|c| c.scale(&k));
        if Signed::is_negative(q.lead().unwrap().lead().unwrap()) {
            q = -q;
        }
        Ok(AlgebraicCurve {
            p: q,
            note: (!notes.is_empty()).then(|| notes.join("; ")),
        })
    }

    pub fn from_expr(e: &Expr) -> Result<Self> {
        let m = e.fold(&CurveAlgebra)?;
        let dz = m.degree_in(1).unwrap_or(0);
        let coeffs = (0..=dz)
            .map(|i| {
                let c = m.coeff_in(1, i);
                let dy = c.degree_in(0).unwrap_or(0);
                Poly::new((0..=dy).map(|k| c.coeff_in(0, k).as_constant().unwrap()).collect())
            })
            .collect();
        Self::new(Poly::new(coeffs))
    }

    pub fn poly(&self) -> &Poly<Poly<Rat>> {
        &self.p
    }

    pub fn degree_z(&self) -> usize {
        self.p.degree().unwrap()
    }

    pub fn preprocessing_note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn render(&self) -> String {
        format!("{} = 0", render_bivariate(&self.p))
    }
}

impl fmt::Display for AlgebraicCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

struct CurveAlgebra;

impl ExprAlgebra<MPoly> for CurveAlgebra {
    fn num(&self, r: &Rat) -> MPoly {
        MPoly::constant(2, r.clone())
    }
    fn var(&self, name: &str) -> Result<MPoly> {
        match name {
            "y" => Ok(MPoly::var(2, 0)),
            "z" => Ok(MPoly::var(2, 1)),
            _ => Err(Error::usage(format!("unknown symbol '{name}' in a curve (use y and z)"))),
        }
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.sub(b)
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        a.neg()
    }
    fn div(&self, a: &MPoly, b: &MPoly) -> Result<MPoly> {
        let c = b
            .as_constant()
            .ok_or_else(|| Error::usage("curves must be polynomial in y and z"))?;
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.mul(&MPoly::constant(2, c.recip())))
    }
}

/// One class of conjugate branches, represented by a single series in `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub series: PuiseuxSeries,
    pub ramification: u32,
    /// Field of the coefficients; `None` for Q.
    pub field: FieldRef,
    /// Number of classes of `ramification` branches each conjugate to this one.
    pub multiplicity: u32,
}

impl Branch {
    pub fn leading_exponent(&self) -> Rat {
        self.series
            .exponent_terms()
            .first()
            .map(|(e, _)| e.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn render(&self) -> String {
        format!("z = {}", self.series.render("y"))
    }
}

/// Laurent polynomial in `s` with rational exponents.
type Lau = BTreeMap<Rat, NfElem>;

fn lau_add_scaled(acc: &mut Lau, a: &Lau, shift: &Rat, c: &NfElem) {
    for (e, v) in a {
        let k = e + shift;
        let nv = acc.get(&k).cloned().unwrap_or_else(NfElem::zero) + v.clone() * c.clone();
        if nv.is_zero() {
            acc.remove(&k);
        } else {
            acc.insert(k, nv);
        }
    }
}

fn map_lau(a: &Lau, emb: &Embedding) -> Lau {
    a.iter().map(|(e, v)| (e.clone(), emb.apply(v))).collect()
}

/// `G(c s^g + z1)` as a polynomial in `z1`.
fn shift_root(g: &[Lau], c: &NfElem, gamma: &Rat) -> Vec<Lau> {
    let n = g.len();
    let mut out = vec![Lau::new(); n];
    for (i, ai) in g.iter().enumerate() {
        if ai.is_empty() {
            continue;
        }
        // term C(i,k) c^(i-k) s^(g(i-k)) z1^k for k = i down to 0
        let mut cpow = NfElem::one();
        for k in (0..=i).rev() {
            let j = i - k;
            if j > 0 {
                cpow = cpow * c.clone();
            }
            let coef = cpow.clone() * NfElem::rational(binomial(i, k));
            lau_add_scaled(&mut out[k], ai, &(gamma * Rat::from_integer(j.into())), &coef);
        }
    }
    while out.last().is_some_and(|a| a.is_empty()) {
        out.pop();
    }
    out
}

fn binomial(n: usize, k: usize) -> Rat {
    let mut r = num_bigint::BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    Rat::from_integer(r)
}

/// Lower Newton polygon edges as `(gamma, [(i, v_i)] on the edge)`, with `z`
/// exponents increasing, so `gamma` decreasing.
fn edges(g: &[Lau]) -> Vec<(Rat, Vec<(usize, Rat)>)> {
    let pts: Vec<(usize, Rat)> = g
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.keys().next().map(|v| (i, v.clone())))
        .collect();
    let mut hull: Vec<(usize, Rat)> = Vec::new();
    for p in &pts {
        while hull.len() >= 2 {
            let (o, a) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            let cross = Rat::from_integer(((a.0 - o.0) as i64).into()) * (&p.1 - &o.1)
                - (&a.1 - &o.1) * Rat::from_integer(((p.0 - o.0) as i64).into());
            if cross <= Rat::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p.clone());
    }
    hull.windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let gamma = -(&b.1 - &a.1) / Rat::from_integer(((b.0 - a.0) as i64).into());
            let level = &a.1 + &gamma * Rat::from_integer((a.0 as i64).into());
            let on: Vec<(usize, Rat)> = pts
                .iter()
                .filter(|(i, v)| *i >= a.0 && *i <= b.0 && v + &gamma * Rat::from_integer((*i as i64).into()) == level)
                .cloned()
                .collect();
            (gamma, on)
        })
        .collect()
}

struct Expander {
    terms: usize,
    bound: usize,
    out: Vec<Branch>,
}

struct Node {
    g: Vec<Lau>,
    field: FieldRef,
    prefix: Vec<(Rat, NfElem)>,
    ramification: u32,
    multiplicity: u32,
    gamma_min: Option<Rat>,
    roots: usize,
}

impl Expander {
    fn emit(&mut self, node: &Node, next_gamma: Option<Rat>) {
        let series = PuiseuxSeries::from_exponents(
            node.prefix.iter().map(|(g, c)| (-g, RatFunc::constant(c.clone()))),
            next_gamma.map(|g| -g),
            None,
        );
        self.out.push(Branch {
            ramification: node.ramification,
            series,
            field: node.field.clone(),
            multiplicity: node.multiplicity,
        });
    }

    fn descend(&mut self, mut node: Node) -> Result<()> {
        if node.g.first().is_none_or(|a| a.is_empty()) {
            // z1 = 0 is an exact root
            self.emit(&node, None);
            node.g.remove(0);
            node.roots -= 1;
            if node.roots == 0 {
                return Ok(());
            }
        }
        let es: Vec<_> = edges(&node.g)
            .into_iter()
            .filter(|(gamma, _)| node.gamma_min.as_ref().is_none_or(|m| gamma > m))
            .collect();
        let span: usize = es.iter().map(|(_, on)| on.last().unwrap().0 - on[0].0).sum();
        if span != node.roots {
            return Err(Error::precondition(format!(
                "Newton polygon accounts for {span} roots where {} were expected",
                node.roots
            )));
        }
        if node.roots == 1 && node.prefix.len() >= self.terms {
            let next = es[0].0.clone();
            self.emit(&node, Some(next));
            return Ok(());
        }
        for (gamma, on) in es {
            self.edge(&node, &gamma, &on)?;
        }
        Ok(())
    }

    fn edge(&mut self, node: &Node, gamma: &Rat, on: &[(usize, Rat)]) -> Result<()> {
        let p = node.ramification;
        let q: u32 = (gamma * Rat::from_integer(p.into()))
            .denom()
            .try_into()
            .expect("ramification fits in u32");
        let i0 = on[0].0;
        let qd = q as usize;
        let mut psi = vec![NfElem::zero(); (on.last().unwrap().0 - i0) / qd + 1];
        for (i, v) in on {
            psi[(i - i0) / qd] = node.g[*i][v].clone();
        }
        let psi = Poly::new(psi);
        let factors = factor_over_field(&psi, &node.field, crate::arith::factor::DEFAULT_FACTOR_BOUND)?;
        for (fac, e) in factors {
            if fac.degree() == Some(1) && fac.coeff(0).is_zero() {
                continue;
            }
            let d = fac.degree().unwrap() as u32;
            // c is any root of fac(c^q)
            let in_c = fac.compose(&Poly::monomial(NfElem::one(), qd));
            let adj = adjoin_root(&node.field, &in_c, self.bound).map_err(|err| match err {
                Error::Capability { degree, bound, .. } => Error::Capability {
                    what: format!(
                        "coefficient field for the characteristic polynomial {} at exponent {}",
                        in_c.render("c"),
                        -gamma
                    ),
                    degree,
                    bound,
                },
                other => other,
            })?;
            let emb = &adj.embedding;
            let g: Vec<Lau> = node.g.iter().map(|a| map_lau(a, emb)).collect();
            let mut prefix: Vec<(Rat, NfElem)> =
                node.prefix.iter().map(|(g, c)| (g.clone(), emb.apply(c))).collect();
            prefix.push((gamma.clone(), adj.root.clone()));
            let g1 = shift_root(&g, &adj.root, gamma);
            self.descend(Node {
                g: g1,
                field: adj.field.clone(),
                prefix,
                ramification: p * q,
                multiplicity: node.multiplicity * d,
                gamma_min: Some(gamma.clone()),
                roots: e as usize,
            })?;
        }
        Ok(())
    }
}

fn curve_in_s(c: &AlgebraicCurve) -> Vec<Lau> {
    c.p.coeffs()
        .iter()
        .map(|a| {
            a.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.is_zero())
                .map(|(k, r)| (Rat::from_integer((-(k as i64)).into()), NfElem::rational(r.clone())))
                .collect()
        })
        .collect()
}

/// All branches at `y = infinity`, one per conjugacy class, each with at
/// least `terms` nonzero terms (fewer only when the branch is exact).
pub fn expand_at_infinity(c: &AlgebraicCurve, terms: usize, bound: usize) -> Result<Vec<Branch>> {
    if terms == 0 {
        return Err(Error::usage("at least one term is required"));
    }
    let mut ex = Expander {
        terms,
        bound,
        out: Vec::new(),
    };
    ex.descend(Node {
        g: curve_in_s(c),
        field: None,
        prefix: Vec::new(),
        ramification: 1,
        multiplicity: 1,
        gamma_min: None,
        roots: c.degree_z(),
    })?;
    let mut out = ex.out;
    out.sort_by(|a, b| {
        b.leading_exponent()
            .cmp(&a.leading_exponent())
            .then(a.ramification.cmp(&b.ramification))
            .then_with(|| a.render().cmp(&b.render()))
    });
    Ok(out)
}

/// Exact evaluation of `P(y, z(y))` for a truncated branch.
fn eval_curve(p: &Poly<Poly<Rat>>, z: &PuiseuxSeries) -> PuiseuxSeries {
    let lift = |a: &Poly<Rat>| {
        PuiseuxSeries::new(
            1,
            a.coeffs()
                .iter()
                .enumerate()
                .map(|(k, r)| (k as i64, RatFunc::from_rat(r.clone()))),
            None,
            None,
        )
    };
    p.coeffs()
        .iter()
        .rev()
        .fold(PuiseuxSeries::zero(), |acc, a| acc.mul(z).add(&lift(a)))
}

/// Outcome of the residual check for one branch.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// Leading exponent of `P(y, z_trunc)`; `None` when it vanishes.
    pub residual_valuation: Option<Rat>,
    /// The residual may not exceed this exponent; `None` for exact branches.
    pub bound: Option<Rat>,
}

fn lead_exponent(s: &PuiseuxSeries) -> Option<Rat> {
    s.exponent_terms().first().map(|(e, _)| e.clone())
}

/// Substitutes the known terms of `b` into the curve. Dropping the unknown
/// tail (first term at the floor `f`) leaves a residual of order
/// `f + v(dP/dz)`; anything larger means a wrong coefficient.
pub fn certify_branch(c: &AlgebraicCurve, b: &Branch) -> Result<Certificate> {
    let z = b.series.with_floor(None);
    let r = eval_curve(&c.p, &z);
    let val = lead_exponent(&r);
    match b.series.floor_exponent() {
        None => {
            if let Some(v) = val {
                return Err(Error::Certification(format!(
                    "branch {} is marked exact but leaves a residual of order y^({v})",
                    b.render()
                )));
            }
            Ok(Certificate {
                residual_valuation: None,
                bound: None,
            })
        }
        Some(f) => {
            let dp = eval_curve(&c.p.derivative(), &z);
            let vd = lead_exponent(&dp).ok_or_else(|| {
                Error::Certification(format!("dP/dz vanishes on branch {}", b.render()))
            })?;
            let bound = f + vd;
            if let Some(v) = &val {
                if *v > bound {
                    return Err(Error::Certification(format!(
                        "branch {} leaves a residual of order y^({v}), above the bound y^({bound})",
                        b.render()
                    )));
                }
            }
            Ok(Certificate {
                residual_valuation: val,
                bound: Some(bound),
            })
        }
    }
}

/// Roots of rational polynomials inside one growing number field.
struct RootTable {
    splitter: Splitter,
    roots: Vec<(Poly<Rat>, Vec<NfElem>)>,
}

impl RootTable {
    fn split(&mut self, m: &Poly<Rat>) -> Result<()> {
        if self.roots.iter().any(|(k, _)| k == m) {
            return Ok(());
        }
        let (rs, emb) = self.splitter.split(&m.map(|c| NfElem::rational(c.clone())))?;
        for (_, old) in self.roots.iter_mut() {
            for r in old.iter_mut() {
                *r = emb.apply(r);
            }
        }
        self.roots.push((m.clone(), rs));
        Ok(())
    }

    fn roots(&self, m: &Poly<Rat>) -> &[NfElem] {
        &self.roots.iter().find(|(k, _)| k == m).unwrap().1
    }
}

fn unity_poly(p: u32) -> Poly<Rat> {
    let mut cs = vec![Rat::zero(); p as usize + 1];
    cs[0] = -Rat::one();
    cs[p as usize] = Rat::one();
    Poly::new(cs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VietaReport {
    /// Distinct branches produced from the class representatives.
    pub branches: usize,
    /// Exponent positions compared.
    pub positions: usize,
    /// Degree over Q of the field holding every branch.
    pub field_degree: usize,
}

/// Expands every class into its explicit conjugate branches and checks that
/// their product equals `(-1)^m a_0/a_m` at `positions` consecutive exponents.
pub fn vieta_check(c: &AlgebraicCurve, branches: &[Branch], positions: usize, bound: usize) -> Result<VietaReport> {
    let m = c.degree_z();
    let mut sp = RootTable {
        splitter: Splitter::new(None, bound),
        roots: Vec::new(),
    };
    for b in branches {
        if let Some(f) = &b.field {
            sp.split(f.minpoly())?;
        }
        sp.split(&unity_poly(b.ramification))?;
    }
    let mut leaves: Vec<PuiseuxSeries> = Vec::new();
    for b in branches {
        let p = b.ramification;
        let sigmas: Vec<Option<NfElem>> = match &b.field {
            None => vec![None],
            Some(f) => sp.roots(f.minpoly()).iter().cloned().map(Some).collect(),
        };
        let zetas = sp.roots(&unity_poly(p)).to_vec();
        let lifted = b.series.lift_to(p.lcm(&b.series.ramification()));
        let scale = lifted.ramification() / p;
        for sigma in &sigmas {
            for zeta in &zetas {
                let terms = lifted.terms().map(|(j, coef)| {
                    let cst = coef.as_constant().expect("branch coefficients are constants");
                    let conj = match (sigma, cst.field()) {
                        (Some(r), Some(_)) => cst.residue().eval_with(r, |q| NfElem::rational(q.clone())),
                        _ => cst.clone(),
                    };
                    // y^(1/p) -> zeta y^(1/p); j counts steps of 1/(p*scale)
                    let k = (j / scale as i64).rem_euclid(p as i64) as u32;
                    let mut z = NfElem::one();
                    for _ in 0..k {
                        z = z * zeta.clone();
                    }
                    (j, RatFunc::constant(conj * z))
                });
                let leaf = PuiseuxSeries::new(lifted.ramification(), terms.collect::<Vec<_>>(), lifted.floor(), None);
                if !leaves.contains(&leaf) {
                    leaves.push(leaf);
                }
            }
        }
    }
    if leaves.len() != m {
        return Err(Error::Certification(format!(
            "conjugates of the branch classes give {} distinct branches, expected {m}",
            leaves.len()
        )));
    }
    let product = leaves
        .iter()
        .fold(PuiseuxSeries::constant(RatFunc::one()), |acc, l| acc.mul(l));
    let a0 = c.p.coeff(0);
    let am = c.p.lead().unwrap().clone();
    let as_series = |a: &Poly<Rat>| {
        PuiseuxSeries::new(
            1,
            a.coeffs()
                .iter()
                .enumerate()
                .map(|(k, r)| (k as i64, RatFunc::from_rat(r.clone()))),
            None,
            None,
        )
    };
    let sign = if m % 2 == 0 { Rat::one() } else { -Rat::one() };
    let target = as_series(&a0)
        .mul(&as_series(&am).inverse(positions as u32 + 2)?)
        .scale(&RatFunc::from_rat(sign));
    let lead = [lead_exponent(&product), lead_exponent(&target)]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or_else(Rat::zero);
    let step = Rat::new(1.into(), product.ramification().lcm(&target.ramification()).into());
    for k in 0..positions {
        let e = &lead - &step * Rat::from_integer(k.into());
        let (Some(x), Some(y)) = (product.coeff(&e), target.coeff(&e)) else {
            return Err(Error::Truncation {
                required: format!("{positions} exponent positions below {lead}"),
                available: format!(
                    "product known above {}",
                    product.floor_exponent().map_or("-inf".into(), |f| f.to_string())
                ),
            });
        };
        if x != y {
            return Err(Error::Certification(format!(
                "product of branches has coefficient {x} at y^({e}), expected {y}"
            )));
        }
    }
    Ok(VietaReport {
        branches: leaves.len(),
        positions,
        field_degree: sp.splitter.field().as_ref().map_or(1, |f| f.degree()),
    })
}

/// Sum of ramification times multiplicity over all classes.
pub fn accounted_degree(branches: &[Branch]) -> u32 {
    branches.iter().map(|b| b.ramification * b.multiplicity).sum()
}
