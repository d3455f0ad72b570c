//! `multidisc` — exact critical values of polynomial maps from the command
//! line: univariate and iterated discriminants, the critical-value equation
//! F(v) = 0 with isolated real roots, and a numeric containment check.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use multidisc::critvals::{
    critical_value_polynomial, isolate_real_roots, CritError, CriticalValueProblem,
    CriticalValuePolynomial,
};
use multidisc::elim::{discriminant_wrt, multiple_discriminant, ElimError, MdOptions};
use multidisc::numeric::{
    numeric_discriminant_via_roots, verify_containment, ContainmentReport, NumericCriticalPoint,
    OracleConfig,
};
use multidisc::parse::{parse_poly, ParseError};
use multidisc::poly::PolyError;
use multidisc::rat::{rat, rat_str};
use multidisc::roots::{IsolatedRoot, RealRoots, RootError, RootValue};

#[derive(Parser)]
#[command(
    name = "multidisc",
    version,
    about = "Exact critical values of polynomial maps via iterated discriminants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant of the input with respect to one variable
    Disc {
        /// Polynomial expression, e.g. "x^2 + b*x + c"
        input: String,
        /// Variable to eliminate
        #[arg(long)]
        var: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Iterated discriminant, eliminating several variables in order
    Multidisc {
        /// Polynomial expression, e.g. "x^2 + y^2 - v"
        input: String,
        /// Comma-separated elimination order; defaults to every variable
        /// present, in name order
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
        /// Replace each stage by its squarefree part before eliminating
        #[arg(long)]
        squarefree: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Critical-value polynomial F(v) of the input and its real roots
    Critvals {
        /// Polynomial f; the critical values of f are roots of F
        input: String,
        /// Comma-separated elimination order over the variables of f
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
        /// Replace each stage by its squarefree part before eliminating
        #[arg(long)]
        squarefree: bool,
        /// Name for the value variable (default "v")
        #[arg(long)]
        value_var: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Critvals plus a numeric check that every critical value the oracle
    /// finds is among the exact roots
    Verify {
        input: String,
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
        #[arg(long)]
        squarefree: bool,
        #[arg(long)]
        value_var: Option<String>,
        /// Half-width of the search box for numeric critical points
        #[arg(long = "box")]
        box_radius: Option<f64>,
        /// Newton starts per axis
        #[arg(long)]
        grid: Option<usize>,
        /// Convergence tolerance on the gradient norm
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the built-in worked examples and report pass/fail
    Selftest,
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> CliError {
        CliError { code, message: message.into() }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::new(2, format!("parse error: {e}"))
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> CliError {
        match &e {
            PolyError::UnknownVariable { .. } => CliError::new(3, e.to_string()),
            _ => CliError::new(2, e.to_string()),
        }
    }
}

impl From<ElimError> for CliError {
    fn from(e: ElimError) -> CliError {
        match &e {
            ElimError::VariableAbsent { .. } => CliError::new(3, e.to_string()),
            ElimError::Poly(inner) => CliError::from(inner.clone()),
            ElimError::Degenerate { stage, var, .. } => CliError::new(
                4,
                format!(
                    "degenerate: the discriminant vanished identically at stage {stage} \
                     (eliminating {var}); the input has a repeated factor in {var} — \
                     rerun with --squarefree"
                ),
            ),
            _ => CliError::new(1, e.to_string()),
        }
    }
}

impl From<CritError> for CliError {
    fn from(e: CritError) -> CliError {
        match e {
            CritError::Elim(inner) => CliError::from(inner),
            CritError::ValueVarCollision { name } => CliError::new(
                2,
                format!(
                    "the input already uses the value variable \"{name}\"; \
                     pick another name with --value-var"
                ),
            ),
            other => CliError::new(2, other.to_string()),
        }
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> CliError {
        CliError::new(1, e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Disc { input, var, format } => cmd_disc(&input, &var, format),
        Command::Multidisc { input, order, squarefree, format } => {
            cmd_multidisc(&input, &order, squarefree, format)
        }
        Command::Critvals { input, order, squarefree, value_var, format } => {
            cmd_critvals(&input, &order, squarefree, value_var.as_deref(), format)
        }
        Command::Verify {
            input,
            order,
            squarefree,
            value_var,
            box_radius,
            grid,
            tol,
            format,
        } => cmd_verify(
            &input,
            &order,
            squarefree,
            value_var.as_deref(),
            (box_radius, grid, tol),
            format,
        ),
        Command::Selftest => cmd_selftest(),
    };
    match result {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn cmd_disc(input: &str, var: &str, format: Format) -> Result<(), CliError> {
    let (p, ring) = parse_poly(input)?;
    let Some(idx) = ring.index_of(var) else {
        return Err(CliError::new(
            3,
            format!("variable {var} does not occur in the input (variables: {ring})"),
        ));
    };
    let d = discriminant_wrt(&p, idx)?;
    match format {
        Format::Text => println!("{d}"),
        Format::Json => println!("{}", json!({ "value": d.to_string() })),
    }
    Ok(())
}

fn cmd_multidisc(
    input: &str,
    order: &[String],
    squarefree: bool,
    format: Format,
) -> Result<(), CliError> {
    let (p, ring) = parse_poly(input)?;
    let order: Vec<String> = if order.is_empty() {
        p.vars_present().iter().map(|&i| ring.name(i).to_string()).collect()
    } else {
        order.to_vec()
    };
    let opts = MdOptions { squarefree_each_stage: squarefree, cancel: None };
    let md = multiple_discriminant(&p, &order, &opts)?;
    match format {
        Format::Text => {
            for w in &md.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", md.value);
        }
        Format::Json => println!(
            "{}",
            json!({
                "value": md.value.to_string(),
                "warnings": md.warnings,
                "order": order,
            })
        ),
    }
    Ok(())
}

fn build_problem(
    input: &str,
    order: &[String],
    squarefree: bool,
    value_var: Option<&str>,
) -> Result<CriticalValueProblem, CliError> {
    let (f, _ring) = parse_poly(input)?;
    let mut prob = CriticalValueProblem::new(f)?;
    if let Some(name) = value_var {
        prob = prob.with_value_var(name)?;
    }
    if !order.is_empty() {
        prob = prob.with_order(order.to_vec())?;
    }
    Ok(prob.with_squarefree(squarefree))
}

fn root_json(r: &IsolatedRoot) -> serde_json::Value {
    match &r.value {
        RootValue::Exact(x) => json!({
            "kind": "exact-rational",
            "value": rat_str(x),
            "multiplicity": r.multiplicity.to_string(),
        }),
        RootValue::Interval { lo, hi } => json!({
            "kind": "interval",
            "bounds": [rat_str(lo), rat_str(hi)],
            "multiplicity": r.multiplicity.to_string(),
        }),
    }
}

fn print_roots_text(v_name: &str, roots: &RealRoots) {
    if roots.roots.is_empty() {
        println!("roots: none");
    } else {
        println!("roots:");
        for r in &roots.roots {
            match &r.value {
                RootValue::Exact(x) => println!(
                    "  {v_name} = {} (multiplicity {}, exact)",
                    rat_str(x),
                    r.multiplicity
                ),
                RootValue::Interval { lo, hi } => println!(
                    "  {v_name} ~ {} in ({}, {}) (multiplicity {})",
                    r.value.approx(),
                    rat_str(lo),
                    rat_str(hi),
                    r.multiplicity
                ),
            }
        }
    }
    if roots.complex_count > 0 {
        println!("complex roots: {}", roots.complex_count);
    }
}

fn critvals_json(
    prob: &CriticalValueProblem,
    fv: &CriticalValuePolynomial,
    roots: &RealRoots,
) -> serde_json::Value {
    json!({
        "F": fv.f_poly.to_string(),
        "roots": roots.roots.iter().map(root_json).collect::<Vec<_>>(),
        "warnings": fv.warnings,
        "order": prob.order(),
    })
}

fn cmd_critvals(
    input: &str,
    order: &[String],
    squarefree: bool,
    value_var: Option<&str>,
    format: Format,
) -> Result<(), CliError> {
    let prob = build_problem(input, order, squarefree, value_var)?;
    let fv = critical_value_polynomial(&prob)?;
    let roots = isolate_real_roots(&fv)?;
    match format {
        Format::Text => {
            for w in &fv.warnings {
                eprintln!("warning: {w}");
            }
            println!("F({}) = {}", prob.v_name(), fv.f_poly);
            print_roots_text(prob.v_name(), &roots);
        }
        Format::Json => println!("{}", critvals_json(&prob, &fv, &roots)),
    }
    Ok(())
}

fn point_json(p: &NumericCriticalPoint) -> serde_json::Value {
    json!({
        "point": p.coordinates.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "value": p.value.to_string(),
        "residual": p.residual.to_string(),
    })
}

fn report_json(report: &ContainmentReport) -> serde_json::Value {
    json!({
        "matched": report
            .matched
            .iter()
            .map(|(p, r)| json!({ "critical_point": point_json(p), "root": root_json(r) }))
            .collect::<Vec<_>>(),
        "unmatched_points": report.unmatched_points.iter().map(point_json).collect::<Vec<_>>(),
        "spurious_roots": report.spurious_roots.iter().map(root_json).collect::<Vec<_>>(),
        "violations": report.violations().to_string(),
        "diverged_starts": report.diverged_starts.to_string(),
        "total_starts": report.total_starts.to_string(),
        "caveat": report.caveat,
    })
}

fn cmd_verify(
    input: &str,
    order: &[String],
    squarefree: bool,
    value_var: Option<&str>,
    oracle: (Option<f64>, Option<usize>, Option<f64>),
    format: Format,
) -> Result<(), CliError> {
    let prob = build_problem(input, order, squarefree, value_var)?;
    let nvars = prob.f().vars_present().len();
    if nvars > 4 {
        return Err(CliError::new(
            2,
            format!("verify supports at most 4 variables, the input has {nvars}"),
        ));
    }
    let mut cfg = OracleConfig::default_for(nvars);
    let (box_radius, grid, tol) = oracle;
    if let Some(b) = box_radius {
        if !(b.is_finite() && b > 0.0) {
            return Err(CliError::new(2, "--box must be a positive finite number"));
        }
        cfg.box_radius = b;
    }
    if let Some(g) = grid {
        if g < 2 {
            return Err(CliError::new(2, "--grid must be at least 2"));
        }
        cfg.grid_per_axis = g;
    }
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::new(2, "--tol must be a positive finite number"));
        }
        cfg.newton_tol = t;
    }

    let fv = critical_value_polynomial(&prob)?;
    let roots = isolate_real_roots(&fv)?;
    let report = verify_containment(&prob, &fv, &roots, &cfg);

    match format {
        Format::Text => {
            for w in &fv.warnings {
                eprintln!("warning: {w}");
            }
            println!("F({}) = {}", prob.v_name(), fv.f_poly);
            print_roots_text(prob.v_name(), &roots);
            println!(
                "containment: {} matched, {} violations, {} spurious",
                report.matched.len(),
                report.violations(),
                report.spurious_roots.len()
            );
            println!(
                "starts: {} total, {} diverged",
                report.total_starts, report.diverged_starts
            );
            println!("note: {}", report.caveat);
        }
        Format::Json => {
            let mut out = critvals_json(&prob, &fv, &roots);
            out["report"] = report_json(&report);
            println!("{out}");
        }
    }

    if report.violations() > 0 {
        return Err(CliError::new(
            5,
            format!(
                "{} numeric critical value(s) missing from the exact roots",
                report.violations()
            ),
        ));
    }
    Ok(())
}

fn cmd_selftest() -> Result<(), CliError> {
    let checks: Vec<(&str, Box<dyn Fn() -> Result<(), String>>)> = vec![
        (
            "quadratic discriminant",
            Box::new(|| {
                expect_disc("x^2 + b*x + c", "x", "b^2 - 4*c")
            }),
        ),
        (
            "depressed cubic discriminant",
            Box::new(|| {
                expect_disc("x^3 + p*x + q", "x", "-4*p^3 - 27*q^2")
            }),
        ),
        (
            "cubic critical values",
            Box::new(|| {
                let (f_text, roots) = critvals_outcome("x^3 - 3*x", false)?;
                expect_eq("F", &f_text, "-27*v^2 + 108")?;
                expect_exact_roots(&roots, &[(rat(-2, 1), 1), (rat(2, 1), 1)])
            }),
        ),
        (
            "paraboloid critical value",
            Box::new(|| {
                let (f_text, roots) = critvals_outcome("x^2 + y^2", false)?;
                expect_eq("F", &f_text, "64*v")?;
                expect_exact_roots(&roots, &[(rat(0, 1), 1)])
            }),
        ),
        (
            "saddle critical value",
            Box::new(|| {
                let (f_text, roots) = critvals_outcome("x^2 - y^2", false)?;
                expect_eq("F", &f_text, "64*v")?;
                expect_exact_roots(&roots, &[(rat(0, 1), 1)])
            }),
        ),
        (
            "degenerate input is reported and rescued",
            Box::new(|| {
                match critvals_outcome("x^2*y^2", false) {
                    Err(msg) if msg.contains("stage 2") => {}
                    other => {
                        return Err(format!(
                            "expected a stage-2 degeneracy, got {other:?}"
                        ))
                    }
                }
                let (f_text, roots) = critvals_outcome("x^2*y^2", true)?;
                expect_eq("F", &f_text, "v^2")?;
                expect_exact_roots(&roots, &[(rat(0, 1), 2)])
            }),
        ),
        (
            "numeric discriminant cross-check",
            Box::new(|| {
                let (p, _) = parse_poly("x^3 - 3*x").map_err(|e| e.to_string())?;
                let d = numeric_discriminant_via_roots(&p).map_err(|e| e.to_string())?;
                if (d - 108.0).abs() / 108.0 < 1e-6 {
                    Ok(())
                } else {
                    Err(format!("expected about 108, got {d}"))
                }
            }),
        ),
        (
            "containment on the cubic",
            Box::new(|| {
                let prob = build_problem("x^3 - 3*x", &[], false, None)
                    .map_err(|e| e.message)?;
                let fv = critical_value_polynomial(&prob).map_err(|e| e.to_string())?;
                let roots = isolate_real_roots(&fv).map_err(|e| e.to_string())?;
                let cfg = OracleConfig::default_for(1);
                let report = verify_containment(&prob, &fv, &roots, &cfg);
                if report.violations() == 0 && report.matched.len() == 2 {
                    Ok(())
                } else {
                    Err(format!(
                        "expected 2 matches and no violations, got {} and {}",
                        report.matched.len(),
                        report.violations()
                    ))
                }
            }),
        ),
    ];

    let mut failures = 0;
    for (name, check) in &checks {
        match check() {
            Ok(()) => println!("selftest: {name} ... ok"),
            Err(msg) => {
                failures += 1;
                println!("selftest: {name} ... FAILED: {msg}");
            }
        }
    }
    if failures > 0 {
        return Err(CliError::new(1, format!("{failures} selftest check(s) failed")));
    }
    println!("selftest: all {} checks passed", checks.len());
    Ok(())
}

fn expect_eq(what: &str, got: &str, want: &str) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: expected {want}, got {got}"))
    }
}

fn expect_disc(input: &str, var: &str, want: &str) -> Result<(), String> {
    let (p, ring) = parse_poly(input).map_err(|e| e.to_string())?;
    let idx = ring.index_of(var).ok_or("variable missing")?;
    let d = discriminant_wrt(&p, idx).map_err(|e| e.to_string())?;
    expect_eq("discriminant", &d.to_string(), want)
}

fn critvals_outcome(
    input: &str,
    squarefree: bool,
) -> Result<(String, RealRoots), String> {
    let prob = build_problem(input, &[], squarefree, None).map_err(|e| e.message)?;
    let fv = critical_value_polynomial(&prob).map_err(|e| CliError::from(e).message)?;
    let roots = isolate_real_roots(&fv).map_err(|e| e.to_string())?;
    Ok((fv.f_poly.to_string(), roots))
}

fn expect_exact_roots(got: &RealRoots, want: &[(multidisc::rat::Rat, u32)]) -> Result<(), String> {
    if got.roots.len() != want.len() {
        return Err(format!("expected {} roots, got {}", want.len(), got.roots.len()));
    }
    for (found, (value, mult)) in got.roots.iter().zip(want) {
        if found.multiplicity != *mult {
            return Err(format!(
                "expected multiplicity {mult}, got {}",
                found.multiplicity
            ));
        }
        match &found.value {
            RootValue::Exact(x) if x == value => {}
            other => return Err(format!("expected exact root {value}, got {other:?}")),
        }
    }
    Ok(())
}
