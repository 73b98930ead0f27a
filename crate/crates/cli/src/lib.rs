//! Command line front end: parses equations, runs one analysis, prints text
//! or JSON.

pub mod source;

use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use quadrature_core::analyzer::{solve_by_quadratures, xi_gate, SearchClass, SolvabilityReport, SolveConfig};
use quadrature_core::arith::factor::DEFAULT_EXTENSION_BOUND;
use quadrature_core::arith::FieldRef;
use quadrature_core::diff::{parse_ratfunc, validate_tower, TowerDescriptor};
use quadrature_core::newton::{certify_branch, expand_at_infinity};
use quadrature_core::riccati::{d, reduce_order, riccati_of_homogeneous, riccati_of_linear, Reduced};
use quadrature_core::{Error, Result};
use serde::Serialize;
use serde_json::json;

pub use source::{parse, EquationSource, Parsed};

#[derive(Parser, Debug)]
#[command(name = "quadrature", version, about = "Generalized Riccati equations, Puiseux expansions and solvability by quadratures")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Number of nonzero terms per Puiseux branch.
    #[arg(long, global = true, default_value_t = 6)]
    terms: usize,
    /// Comma separated search classes: constants, euler, rational2.
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_search)]
    search: Option<Vec<SearchClass>>,
    /// Largest degree of an algebraic extension that may be built.
    #[arg(long, global = true, default_value_t = DEFAULT_EXTENSION_BOUND)]
    bound: usize,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Riccati equation of a linear equation in y.
    Riccati { equation: Option<String> },
    /// Riccati equation of a homogeneous equation in y.
    RiccatiHom { equation: Option<String> },
    /// Weighted-degree test for a homogeneous equation in y.
    XiCheck { equation: Option<String> },
    /// Reduces a linear equation by a solution y1 = exp(int u1 dx).
    ReduceOrder { equation: String, u1: String },
    /// Branches at y = infinity of a curve P(y, z) = 0.
    PuiseuxExpand { curve: Option<String> },
    /// Solvability by quadratures of a linear equation in y.
    Analyze { equation: Option<String> },
    /// The polynomial D_k in u with y^(k) = D_k(u) y for u = y'/y.
    Dn { k: usize },
    /// Validates a field tower descriptor given as JSON.
    TowerCheck { descriptor: Option<String> },
}

fn parse_search(s: &str) -> std::result::Result<SearchClass, String> {
    SearchClass::parse(s.trim()).map_err(|e| e.to_string())
}

/// Exit status for a failed command: 2 when the toolkit reached one of its
/// limits, 1 when the input is at fault.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capability { .. } | Error::Truncation { .. } | Error::Certification(_) => 2,
        Error::DivisionByZero
        | Error::Syntax { .. }
        | Error::Usage(_)
        | Error::Validation(_)
        | Error::Precondition(_) => 1,
    }
}

/// What a command produced: the JSON value and its text rendering.
struct Output {
    json: serde_json::Value,
    text: String,
}

impl Output {
    fn new(value: impl Serialize, text: String) -> Self {
        Output {
            json: serde_json::to_value(value).expect("output is serializable"),
            text,
        }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit status.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = execute(&cli, stdin).and_then(|o| {
        let mut s = if cli.json {
            serde_json::to_string_pretty(&o.json).expect("json")
        } else {
            o.text
        };
        s.push('\n');
        match &cli.out {
            Some(path) => std::fs::write(path, s)
                .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
            None => out
                .write_all(s.as_bytes())
                .map_err(|e| Error::Usage(format!("cannot write output: {e}"))),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_input(arg: &Option<String>, stdin: &mut dyn Read) -> Result<String> {
    match arg.as_deref() {
        Some(s) if s != "-" => Ok(s.to_string()),
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?;
            let s = s.trim().to_string();
            if s.is_empty() {
                return Err(Error::Usage("no input given".into()));
            }
            Ok(s)
        }
    }
}

fn field_text(f: &FieldRef) -> Option<String> {
    f.as_ref().map(|f| format!("{} = 0", f.minpoly().render(f.name())))
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Output> {
    match &cli.command {
        Command::Riccati { equation } => {
            let src = parse(&read_input(equation, stdin)?)?;
            let ric = riccati_of_linear(src.parsed.linear()?).equation("u");
            let text = ric.clone();
            Ok(Output::new(
                json!({ "equation": src.parsed.render(), "riccati": ric }),
                text,
            ))
        }
        Command::RiccatiHom { equation } => {
            let src = parse(&read_input(equation, stdin)?)?;
            let h = src.parsed.homogeneous()?;
            let ric = riccati_of_homogeneous(&h).equation("u");
            let text = ric.clone();
            Ok(Output::new(
                json!({ "equation": src.parsed.render(), "degree": h.degree(), "riccati": ric }),
                text,
            ))
        }
        Command::XiCheck { equation } => {
            let src = parse(&read_input(equation, stdin)?)?;
            let h = src.parsed.homogeneous()?;
            let gate = xi_gate(h.poly())?;
            let c = &gate.condition;
            let riccati = gate.riccati.as_ref().map(|r| r.equation("u"));
            let shape = gate.shape.as_ref().map(|s| s.render());
            let mut text = format!(
                "xi condition {}: max weight {}, witness {}",
                if c.holds { "holds" } else { "fails" },
                c.max_weight,
                c.witness
            );
            if let Some(r) = &riccati {
                text += &format!("\nriccati: {r}");
            }
            if let Some(s) = &shape {
                text += &format!("\nshape: {s}");
            }
            Ok(Output::new(
                json!({
                    "equation": src.parsed.render(),
                    "holds": c.holds,
                    "max_weight": c.max_weight,
                    "witness": c.witness.to_string(),
                    "riccati": riccati,
                    "shape": shape,
                }),
                text,
            ))
        }
        Command::ReduceOrder { equation, u1 } => {
            let src = parse(equation)?;
            let u1 = parse_ratfunc(u1)?;
            let red = reduce_order(src.parsed.linear()?, &u1)?;
            let symbolic: Vec<String> = red.symbolic.iter().map(|p| p.render("u")).collect();
            let reduced = match &red.reduced {
                Reduced::Trivial => None,
                Reduced::Equation(m) => Some(m.render("w")),
            };
            let mut text = format!("u1 = {}", red.u1);
            for (i, b) in symbolic.iter().enumerate() {
                text += &format!("\nb{} = {b}", i + 1);
            }
            text += &match &reduced {
                Some(m) => format!("\nreduced: {m}"),
                None => "\nreduced: order one, y = C*y1".to_string(),
            };
            Ok(Output::new(
                json!({
                    "equation": src.parsed.render(),
                    "u1": red.u1.to_string(),
                    "symbolic": symbolic,
                    "reduced": reduced,
                }),
                text,
            ))
        }
        Command::PuiseuxExpand { curve } => {
            let src = parse(&read_input(curve, stdin)?)?;
            let c = src.parsed.curve()?;
            let branches = expand_at_infinity(c, cli.terms, cli.bound)?;
            let mut lines = Vec::new();
            let mut items = Vec::new();
            if let Some(note) = c.preprocessing_note() {
                lines.push(format!("note: {note}"));
            }
            for b in &branches {
                let cert = certify_branch(c, b)?;
                let certified = match (&cert.residual_valuation, &cert.bound) {
                    (None, _) => true,
                    (Some(v), Some(bound)) => v <= bound,
                    (Some(_), None) => false,
                };
                if !certified {
                    return Err(Error::Certification(format!("{} does not satisfy the curve", b.render())));
                }
                let field = field_text(&b.field);
                let mut line = b.render();
                line += &format!("  [ramification {}", b.ramification);
                if b.multiplicity > 1 {
                    line += &format!(", {} conjugates", b.multiplicity);
                }
                if let Some(f) = &field {
                    line += &format!(", over {f}");
                }
                line.push(']');
                lines.push(line);
                items.push(json!({
                    "series": b.render(),
                    "ramification": b.ramification,
                    "multiplicity": b.multiplicity,
                    "field": field,
                    "exact": cert.bound.is_none(),
                    "residual_valuation": cert.residual_valuation.map(|v| v.to_string()),
                }));
            }
            Ok(Output::new(
                json!({
                    "curve": src.parsed.render(),
                    "note": c.preprocessing_note(),
                    "branches": items,
                }),
                lines.join("\n"),
            ))
        }
        Command::Analyze { equation } => {
            let src = parse(&read_input(equation, stdin)?)?;
            let config = SolveConfig {
                search: cli.search.clone().unwrap_or_else(|| SearchClass::ALL.to_vec()),
                bound: cli.bound,
            };
            let report = solve_by_quadratures(src.parsed.linear()?, &config);
            let mut text = String::new();
            report_text(&report, 0, &mut text);
            Ok(Output::new(&report, text.trim_end().to_string()))
        }
        Command::Dn { k } => {
            let dn = d(*k).render("u");
            Ok(Output::new(json!({ "k": k, "dn": dn }), dn.clone()))
        }
        Command::TowerCheck { descriptor } => {
            let raw = read_input(descriptor, stdin)?;
            let t: TowerDescriptor =
                serde_json::from_str(&raw).map_err(|e| Error::Usage(format!("invalid tower descriptor: {e}")))?;
            let canonical = validate_tower(&t)?;
            let text = serde_json::to_string(&canonical).expect("json");
            Ok(Output::new(&canonical, text))
        }
    }
}

fn report_text(r: &SolvabilityReport, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let mut line = |s: String| {
        out.push_str(&pad);
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("equation: {}", r.equation));
    line(format!("riccati: {}", r.riccati));
    if let Some(xi) = &r.xi_condition {
        line(format!(
            "xi condition: {} (max weight {}, witness {})",
            if xi.holds { "holds" } else { "fails" },
            xi.max_weight,
            xi.witness
        ));
    }
    for s in &r.searches {
        let found = if s.found.is_empty() { "none".to_string() } else { s.found.join(", ") };
        match &s.error {
            Some(e) => line(format!("search {}: {found} ({e})", s.class)),
            None => line(format!("search {}: {found}", s.class)),
        }
    }
    for c in &r.candidates {
        let mut s = format!("solution: u = {}, y1 = {} [{}]", c.u, c.y1, c.class);
        if let Some(f) = &c.field {
            s += &format!(" over {f}");
        }
        line(s);
    }
    if let Some(red) = &r.reduced {
        line(format!("reduced via u = {}:", red.via));
        report_text(&red.analysis, depth + 1, out);
    }
    out.push_str(&pad);
    out.push_str(&format!("status: {}\n", r.status));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = run(
            std::iter::once("quadrature").chain(args.iter().copied()),
            &mut std::io::empty(),
            &mut o,
            &mut e,
        );
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn riccati_of_concrete_equation() {
        assert_eq!(call(&["riccati", "y''-3*y'+2*y=0"]), (0, "u' + u^2 - 3*u + 2 = 0\n".into(), String::new()));
    }

    #[test]
    fn symbolic_coefficients_are_rejected() {
        let (code, out, err) = call(&["riccati", "y'' + a1*y' + a2*y = 0"]);
        assert_eq!((code, out.as_str()), (1, ""));
        assert!(err.contains("a1"), "{err}");
    }

    #[test]
    fn clap_errors_exit_with_one() {
        assert_eq!(call(&["no-such-command"]).0, 1);
        assert_eq!(call(&["dn"]).0, 1);
        assert_eq!(call(&["analyze", "--search", "bogus", "y' = 0"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn capability_exits_with_two() {
        assert_eq!(exit_code(&Error::Capability { what: "f".into(), degree: 3, bound: 2 }), 2);
        assert_eq!(exit_code(&Error::Precondition("p".into())), 1);
    }
}
