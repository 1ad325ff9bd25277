//! Command-line front end for the orbistar engine.
//!
//! [`run_command`] takes a full argv (program name first) and returns the exit code together
//! with what would be written to stdout and stderr, so the binary is a thin shell around it.

mod parse;

use std::ffi::OsString;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use orbistar_core::deformation::{
    circle_product, dunkl_product, phi_with, DunklElement, PhiParameterization,
};
use orbistar_core::integration::localize_exponential;
use orbistar_core::verify::{self, CasimirProduct, SuiteReport};
use orbistar_core::{mn, ExpSum, OrbifoldElement, Scalar, YPoly};
use serde::Serialize;

pub use parse::{parse_expression, ExprAst, ParseError, Symbol};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_MAX_DEGREE: u32 = 5;
const PBW_WORDS: usize = 1000;
const PBW_MAX_LEN: usize = 10;
const PBW_SEED: u64 = 0x5eed;

// `-h` is not a help flag here: it would swallow the expression `-h`.
#[derive(Parser, Debug)]
#[command(
    name = "orbistar",
    version,
    about = "Exact deformation quantization of the Z2 orbifold of the plane",
    disable_help_flag = true
)]
struct Cli {
    /// Print help.
    #[arg(long, global = true, action = ArgAction::Help)]
    help: Option<bool>,
    /// Emit a JSON term array instead of canonical text.
    #[arg(long, global = true)]
    json: bool,
    /// Substitute a rational for h before output.
    #[arg(long, global = true, value_name = "P/Q")]
    hbar: Option<String>,
    /// Substitute a rational for u before output.
    #[arg(long, global = true, value_name = "P/Q")]
    u: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deformed product a∘b.
    Prod {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// The order-n deformation map phi_n(f, g).
    Phi {
        n: usize,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(long, value_enum, default_value_t = Param::Uv)]
        param: Param,
    },
    /// The A-infinity map m_n(a, b, c1, ..., cn).
    Mn {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(required = true, allow_hyphen_values = true)]
        cs: Vec<String>,
    },
    /// Product in the Dunkl coordinates w, wb.
    Dunkl {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Vertex expansion of the exponential integral of a linear form over the simplex.
    Localize {
        #[arg(long, value_name = "A1,A2,...", allow_hyphen_values = true)]
        form: String,
    },
    /// Runs an exact verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// The quadratic Casimir under the chosen product.
    Casimir {
        #[arg(long, value_enum, default_value_t = Product::Circle)]
        product: Product,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Param {
    Uv,
    W,
    Hpt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Assoc,
    Cocycle,
    Cocycle0,
    SecondOrder,
    Casimir,
    Projectors,
    Pbw,
    Dunkl,
    Params,
    Mn,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Product {
    Star,
    Circle,
    Pbw,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        CommandOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

#[derive(Serialize)]
struct JsonTerm {
    coeff: String,
    hbar_pow: u32,
    u_pow: u32,
    y1_pow: u32,
    y2_pow: u32,
    r_pow: u32,
}

#[derive(Serialize)]
struct JsonDunklTerm {
    coeff: String,
    u_pow: u32,
    w_pow: u32,
    wb_pow: u32,
    r_pow: u32,
}

#[derive(Serialize)]
struct JsonExp {
    coeff: String,
    exponent: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    suite: &'a str,
    checked: usize,
    passed: bool,
    failures: &'a [String],
}

struct Params {
    hbar: Option<Scalar>,
    u: Option<Scalar>,
}

fn parse_rational(flag: &str, text: &str) -> Result<Scalar, String> {
    text.parse::<Scalar>()
        .map_err(|e| format!("invalid value for --{flag}: {e}"))
}

fn element_arg(text: &str) -> Result<OrbifoldElement, String> {
    parse_expression(text)
        .and_then(|ast| ast.to_element())
        .map_err(|e| format!("`{text}`: {e}"))
}

fn poly_arg(text: &str) -> Result<YPoly, String> {
    let e = element_arg(text)?;
    if !e.part(1).is_zero() {
        return Err(format!("`{text}`: expected a polynomial without R"));
    }
    Ok(e.part(0).clone())
}

fn dunkl_arg(text: &str) -> Result<DunklElement, String> {
    parse_expression(text)
        .and_then(|ast| ast.to_dunkl())
        .map_err(|e| format!("`{text}`: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn render_element(e: &OrbifoldElement, p: &Params, json: bool) -> String {
    let e = e.evaluate_params(p.hbar.as_ref(), p.u.as_ref());
    if json {
        let terms: Vec<JsonTerm> = e
            .terms()
            .into_iter()
            .map(|t| JsonTerm {
                coeff: t.coeff.to_fraction_string(),
                hbar_pow: t.hbar_pow,
                u_pow: t.u_pow,
                y1_pow: t.y1_pow,
                y2_pow: t.y2_pow,
                r_pow: t.r_pow,
            })
            .collect();
        to_json(&terms)
    } else {
        format!("{e}\n")
    }
}

fn render_dunkl(e: &DunklElement, p: &Params, json: bool) -> String {
    let e = e.evaluate_params(p.u.as_ref());
    if json {
        let terms: Vec<JsonDunklTerm> = e
            .terms()
            .into_iter()
            .map(|(c, u_pow, w_pow, wb_pow, r_pow)| JsonDunklTerm {
                coeff: c.to_fraction_string(),
                u_pow,
                w_pow,
                wb_pow,
                r_pow,
            })
            .collect();
        to_json(&terms)
    } else {
        format!("{e}\n")
    }
}

fn render_expsum(s: &ExpSum, json: bool) -> String {
    if json {
        let terms: Vec<JsonExp> = s
            .terms
            .iter()
            .map(|(c, x)| JsonExp {
                coeff: c.to_fraction_string(),
                exponent: x.to_fraction_string(),
            })
            .collect();
        to_json(&terms)
    } else {
        format!("{s}\n")
    }
}

fn render_report(r: &SuiteReport, json: bool) -> CommandOutput {
    let stdout = if json {
        to_json(&JsonReport {
            suite: &r.name,
            checked: r.checked,
            passed: r.passed(),
            failures: &r.failures,
        })
    } else {
        let mut s = format!(
            "{}: {} ({} checked, {} failed)\n",
            r.name,
            if r.passed() { "ok" } else { "FAILED" },
            r.checked,
            r.failures.len()
        );
        for f in r.failures.iter().take(20) {
            s.push_str(&format!("  {f}\n"));
        }
        s
    };
    CommandOutput {
        code: if r.passed() { EXIT_OK } else { EXIT_FAILURE },
        stdout,
        stderr: String::new(),
    }
}

/// Degree cap from `ORBISTAR_MAX_DEGREE`, falling back to the default when unset.
fn degree_cap() -> Result<u32, String> {
    match std::env::var("ORBISTAR_MAX_DEGREE") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("ORBISTAR_MAX_DEGREE must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn run_suite(suite: Suite, degree: u32) -> SuiteReport {
    match suite {
        Suite::Assoc => verify::associativity_suite(degree),
        Suite::Cocycle => verify::hochschild_suite(degree),
        Suite::Cocycle0 => verify::commutative_cocycle_suite(degree),
        Suite::SecondOrder => verify::second_order_suite(degree),
        Suite::Casimir => verify::casimir_centrality_suite(degree),
        Suite::Projectors => verify::projector_checks(),
        Suite::Pbw => verify::pbw_confluence_suite(PBW_WORDS, PBW_MAX_LEN, PBW_SEED),
        Suite::Dunkl => verify::dunkl_suite(degree),
        Suite::Params => verify::parameterization_suite(3, degree),
        Suite::Mn => verify::mn_consistency_suite(3, degree),
    }
}

fn dispatch(cli: Cli) -> Result<CommandOutput, String> {
    let params = Params {
        hbar: cli.hbar.as_deref().map(|s| parse_rational("hbar", s)).transpose()?,
        u: cli.u.as_deref().map(|s| parse_rational("u", s)).transpose()?,
    };
    let json = cli.json;
    let out = match cli.command {
        Command::Prod { a, b } => {
            let r = circle_product(&element_arg(&a)?, &element_arg(&b)?);
            CommandOutput::ok(render_element(&r, &params, json))
        }
        Command::Phi { n, f, g, param } => {
            let param = match param {
                Param::Uv => PhiParameterization::UV,
                Param::W => PhiParameterization::W,
                Param::Hpt => PhiParameterization::HPT,
            };
            let r = phi_with(param, n, &poly_arg(&f)?, &poly_arg(&g)?).map_err(|e| e.to_string())?;
            CommandOutput::ok(render_element(&OrbifoldElement::from_poly(r), &params, json))
        }
        Command::Mn { a, b, cs } => {
            let cs = cs.iter().map(|c| poly_arg(c)).collect::<Result<Vec<_>, _>>()?;
            let r = mn(&poly_arg(&a)?, &poly_arg(&b)?, &cs).map_err(|e| e.to_string())?;
            CommandOutput::ok(render_element(&OrbifoldElement::from_poly(r), &params, json))
        }
        Command::Dunkl { a, b } => {
            let r = dunkl_product(&dunkl_arg(&a)?, &dunkl_arg(&b)?);
            CommandOutput::ok(render_dunkl(&r, &params, json))
        }
        Command::Localize { form } => {
            let coeffs = form
                .split(',')
                .map(|s| parse_rational("form", s))
                .collect::<Result<Vec<_>, _>>()?;
            let s = localize_exponential(&coeffs).map_err(|e| e.to_string())?;
            CommandOutput::ok(render_expsum(&s, json))
        }
        Command::Verify { suite, max_degree } => {
            let cap = degree_cap()?;
            let degree = max_degree.map_or(cap, |d| d.min(cap));
            let mut out = render_report(&run_suite(suite, degree), json);
            if max_degree.is_some_and(|d| d > cap) {
                out.stderr = format!("note: --max-degree capped at {cap} by ORBISTAR_MAX_DEGREE\n");
            }
            out
        }
        Command::Casimir { product } => {
            let p = match product {
                Product::Star => CasimirProduct::Star,
                Product::Circle => CasimirProduct::Circle,
                Product::Pbw => CasimirProduct::Pbw,
            };
            CommandOutput::ok(render_element(&verify::casimir_element(p), &params, json))
        }
    };
    Ok(out)
}

/// Parses `argv` (program name first) and runs the selected subcommand.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutput::ok(text)
            };
        }
    };
    dispatch(cli).unwrap_or_else(CommandOutput::usage)
}
