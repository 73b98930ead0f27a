//! Reading equations from text and deciding what kind of object they are.

use quadrature_core::analyzer::EquationForm2;
use quadrature_core::arith::RatFunc;
use quadrature_core::diffpoly::{DiffMonomial, DiffPoly};
use quadrature_core::expr::{parse_equation, Expr};
use quadrature_core::newton::AlgebraicCurve;
use quadrature_core::riccati::{HomogeneousEq, LinearODE};
use quadrature_core::{Error, Result};

/// A parsed input equation.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    /// Linear homogeneous equation in `y`, made monic; `scale` is the
    /// coefficient of the top derivative that was divided out.
    Linear { ode: LinearODE, scale: RatFunc },
    /// Homogeneous of degree at least two in `y` and its derivatives.
    Homogeneous(HomogeneousEq),
    /// `u^n = Q(u)` with `Q` of lower degree.
    Form2(EquationForm2),
    Curve(AlgebraicCurve),
}

#[derive(Clone, Debug)]
pub struct EquationSource {
    pub raw: String,
    pub parsed: Parsed,
}

fn classification(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

fn uses(e: &Expr, name: &str) -> bool {
    e.symbols().iter().any(|s| s == name)
}

/// The operator of a linear equation as coefficients of `y^(n), ..., y`.
fn leading_form(op: &DiffPoly) -> Vec<RatFunc> {
    let n = op.order().unwrap();
    (0..=n)
        .map(|k| op.coeff(&DiffMonomial::from_exponents([vec![0; n - k], vec![1]].concat())))
        .collect()
}

pub fn parse(raw: &str) -> Result<EquationSource> {
    let e = parse_equation(raw, &["y", "u"])?;
    let parsed = if uses(&e, "z") {
        if uses(&e, "x") || uses(&e, "u") {
            return Err(classification("a curve is written in y and z only"));
        }
        Parsed::Curve(AlgebraicCurve::from_expr(&e)?)
    } else if uses(&e, "u") {
        if uses(&e, "y") {
            return Err(classification("an equation uses either y or u, not both"));
        }
        Parsed::Form2(EquationForm2::from_poly(&DiffPoly::from_expr(&e, "u")?)?)
    } else if uses(&e, "y") {
        let p = DiffPoly::from_expr(&e, "y")?;
        if p.order().is_none() {
            return Err(classification("the equation does not involve y"));
        }
        if !p.is_homogeneous() {
            let deg = p.degree()?;
            return Err(classification(if deg <= 1 {
                "only homogeneous linear equations are supported; the equation has a term free of y".to_string()
            } else {
                format!("nonlinear term in {}: the equation is neither linear nor homogeneous", p.equation("y"))
            }));
        }
        if p.degree()? == 1 {
            let lead = leading_form(&p);
            let scale = lead[0].clone();
            Parsed::Linear {
                ode: LinearODE::from_leading_form(lead)?,
                scale,
            }
        } else {
            Parsed::Homogeneous(HomogeneousEq::new(p)?)
        }
    } else {
        return Err(classification("no unknown function: write the equation in y, u, or the curve in y and z"));
    };
    Ok(EquationSource {
        raw: raw.to_string(),
        parsed,
    })
}

impl Parsed {
    pub fn kind(&self) -> &'static str {
        match self {
            Parsed::Linear { .. } => "linear",
            Parsed::Homogeneous(_) => "homogeneous",
            Parsed::Form2(_) => "riccati-form",
            Parsed::Curve(_) => "curve",
        }
    }

    /// Canonical text; parsing it again gives the same object.
    pub fn render(&self) -> String {
        match self {
            Parsed::Linear { ode, .. } => ode.render("y"),
            Parsed::Homogeneous(h) => h.poly().equation("y"),
            Parsed::Form2(f) => f.render(),
            Parsed::Curve(c) => c.render(),
        }
    }

    /// The equation as a homogeneous one; linear equations are homogeneous
    /// of degree one.
    pub fn homogeneous(&self) -> Result<HomogeneousEq> {
        match self {
            Parsed::Linear { ode, .. } => HomogeneousEq::new(ode.operator()),
            Parsed::Homogeneous(h) => Ok(h.clone()),
            other => Err(classification(format!("expected an equation in y, got a {}", other.kind()))),
        }
    }

    pub fn linear(&self) -> Result<&LinearODE> {
        match self {
            Parsed::Linear { ode, .. } => Ok(ode),
            other => Err(classification(format!("expected a linear equation in y, got a {}", other.kind()))),
        }
    }

    pub fn curve(&self) -> Result<&AlgebraicCurve> {
        match self {
            Parsed::Curve(c) => Ok(c),
            other => Err(classification(format!("expected a curve in y and z, got a {}", other.kind()))),
        }
    }
}
