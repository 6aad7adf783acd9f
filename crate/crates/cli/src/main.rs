use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jk_core::algebra::{parse_rx, poly_to_json, Factored, FactoredSum, Polynomial};
use jk_core::error::{Error, Result};
use jk_core::jfunc::{
    bd_flag_j_conjecture, flag_j, grassmannian_j, grassmannian_j_structured, j_coefficient,
    lagrangian_flag_j_conjecture, product_j_on, projective_j, FlagForm, JCoefficient, JForm, JSeries,
};
use jk_core::kclass::{chi_series, MultiDegree, SpaceDescriptor, SpaceKind};
use jk_core::lab::{self, IdentityReport, Mode};

#[derive(Parser)]
#[command(name = "jk", version, about = "K-theoretic J-functions of Grassmannians and flag varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum GrForm {
    Display,
    Structured,
}

#[derive(Copy, Clone, ValueEnum)]
enum FlForm {
    Canonical,
    #[value(name = "theorem_ratio", alias = "theorem-ratio")]
    TheoremRatio,
}

#[derive(Copy, Clone, ValueEnum)]
enum AnyForm {
    Display,
    Structured,
    Canonical,
    #[value(name = "theorem_ratio", alias = "theorem-ratio")]
    TheoremRatio,
}

impl AnyForm {
    fn form(self) -> JForm {
        match self {
            AnyForm::Display => JForm::Display,
            AnyForm::Structured => JForm::Structured,
            AnyForm::Canonical => JForm::Canonical,
            AnyForm::TheoremRatio => JForm::TheoremRatio,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum CliMode {
    Strict,
    #[value(name = "unit-tolerant", alias = "unit_tolerant")]
    UnitTolerant,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Strict => Mode::Strict,
            CliMode::UnitTolerant => Mode::UnitTolerant,
        }
    }
}

/// A single degree or `0..=max_d`.
#[derive(Args, Clone)]
struct Degrees {
    #[arg(long, conflicts_with = "max_d")]
    d: Option<u32>,
    #[arg(long)]
    max_d: Option<u32>,
}

impl Degrees {
    fn list(&self) -> Result<Vec<u32>> {
        match (self.d, self.max_d) {
            (Some(d), _) => Ok(vec![d]),
            (None, Some(m)) => Ok((0..=m).collect()),
            (None, None) => Err(Error::InvalidParameter("one of --d or --max-d is required".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient of the Grassmannian J-function.
    Grassmannian {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        degrees: Degrees,
        #[arg(long, value_enum, default_value_t = GrForm::Display)]
        form: GrForm,
        #[command(flatten)]
        out: Output,
    },
    /// Coefficient of the J-function of projective space P^{n-1}.
    Projective {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        out: Output,
    },
    /// Coefficient of a type A flag variety J-function.
    Flag {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
        #[arg(long, value_enum, default_value_t = FlForm::Canonical)]
        form: FlForm,
        #[command(flatten)]
        out: Output,
    },
    /// Coefficient on a product space such as `pr:2xgr:2,4`.
    Product {
        #[arg(long)]
        space: String,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Conjectural J-function of the Lagrangian complete flag variety.
    ConjectureC {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        out: Output,
    },
    /// Conjectural J-function of complete flag varieties of types B and D.
    ConjectureBd {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        out: Output,
    },
    /// Descendant series chi(J_d (x) gamma) through q^order.
    Chi {
        #[arg(long)]
        space: String,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
        /// `1`, `detSdual`, or an expression in the space's variables.
        #[arg(long, default_value = "1")]
        gamma: String,
        #[arg(long, default_value_t = 4)]
        order: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Identity checks; exit status 1 when a check fails.
    Verify {
        #[command(subcommand)]
        check: Check,
        #[command(flatten)]
        out: Output,
        /// Record wall time in the report.
        #[arg(long, global = true)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum Check {
    AbelianNonabelian {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        degrees: Degrees,
        #[arg(long, value_enum, default_value_t = CliMode::UnitTolerant)]
        mode: CliMode,
    },
    Multiplicativity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        cap: Vec<u32>,
    },
    Reduction {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        degrees: Degrees,
    },
    Route {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        degrees: Degrees,
        #[arg(long, value_enum, default_value_t = CliMode::Strict)]
        mode: CliMode,
    },
    FlagForms {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
        #[arg(long, value_enum, default_value_t = CliMode::UnitTolerant)]
        mode: CliMode,
    },
    Weyl {
        #[arg(long)]
        space: String,
        #[arg(long)]
        max_d: u32,
        #[arg(long, value_enum)]
        form: Option<AnyForm>,
    },
    Qregular {
        #[arg(long)]
        space: String,
        #[arg(long)]
        max_d: u32,
        #[arg(long, value_enum)]
        form: Option<AnyForm>,
    },
    /// chi series on Gr(n-1,n) against P^{n-1}.
    Duality {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_d: u32,
        #[arg(long, value_enum, default_value_t = AnyForm::Structured)]
        form: AnyForm,
        #[arg(long, default_value_t = 4)]
        order: u32,
    },
}

enum Rendered {
    Text(String),
    Json(Value),
}

fn emit(out: &Output, r: Rendered) -> Result<()> {
    let mut s = match r {
        Rendered::Text(t) => t,
        Rendered::Json(v) => serde_json::to_string_pretty(&v).expect("json"),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    match &out.output {
        Some(p) => std::fs::write(p, s).map_err(|e| Error::InvalidParameter(format!("{}: {e}", p.display()))),
        None => {
            let _ = std::io::stdout().write_all(s.as_bytes());
            Ok(())
        }
    }
}

fn render_coeffs(space: &SpaceDescriptor, coeffs: Vec<JCoefficient>, format: Format) -> Rendered {
    match (format, coeffs.len()) {
        (Format::Text, 1) => Rendered::Text(coeffs[0].to_text()),
        (Format::Json, 1) => Rendered::Json(coeffs[0].to_json()),
        _ => {
            let cap = coeffs.last().map(|c| c.degree.clone()).unwrap_or(MultiDegree(vec![0]));
            let series = JSeries { space: space.clone(), cap, coefficients: coeffs };
            match format {
                Format::Text => Rendered::Text(series.to_text()),
                Format::Json => Rendered::Json(series.to_json()),
            }
        }
    }
}

/// Coefficient on `space` in the requested form, or the default dispatch.
fn coefficient(space: &SpaceDescriptor, d: &MultiDegree, form: Option<AnyForm>) -> Result<JCoefficient> {
    let Some(form) = form else {
        return j_coefficient(space, d);
    };
    let single = || match d.0.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::DimensionMismatch(format!("degree {d} does not fit {space}"))),
    };
    match (space.kind(), form) {
        (SpaceKind::Projective { .. } | SpaceKind::Grassmannian { .. }, AnyForm::Display) => {
            let (r, n) = space.as_grassmannian().unwrap();
            grassmannian_j(r, n, single()?)
        }
        (SpaceKind::Projective { .. } | SpaceKind::Grassmannian { .. }, AnyForm::Structured) => {
            let (r, n) = space.as_grassmannian().unwrap();
            grassmannian_j_structured(r, n, single()?)
        }
        (SpaceKind::Flag { dims, n }, AnyForm::Canonical) => flag_j(dims, *n, d, FlagForm::Canonical),
        (SpaceKind::Flag { dims, n }, AnyForm::TheoremRatio) => flag_j(dims, *n, d, FlagForm::TheoremRatio),
        _ => Err(Error::InvalidParameter(format!("form {} does not apply to {space}", form.form().name()))),
    }
}

fn gamma_class(space: &SpaceDescriptor, gamma: &str) -> Result<FactoredSum> {
    let table = space.table();
    match gamma {
        "1" => Ok(FactoredSum::one(table)),
        "detSdual" => {
            let entries: Vec<(usize, usize, i32)> =
                (1..=space.levels()[0].rank).map(|j| (1, j, -1)).collect();
            Ok(FactoredSum::from_term(Factored::monomial(
                table,
                jk_core::algebra::Rational::from_integer(1.into()),
                space.char_monomial(&entries, 0),
            )))
        }
        text => {
            let rx = parse_rx(text, table)?;
            let f = Factored::from_poly(rx.num()).div(&Factored::from_poly(rx.den()))?;
            Ok(FactoredSum::from_term(f))
        }
    }
}

fn render_poly(p: &Polynomial, format: Format) -> Rendered {
    match format {
        Format::Text => Rendered::Text(p.to_string()),
        Format::Json => Rendered::Json(poly_to_json(p)),
    }
}

fn run_verify(check: &Check) -> Result<IdentityReport> {
    Ok(match check {
        Check::AbelianNonabelian { r, n, degrees, mode } => {
            let mode: Mode = (*mode).into();
            let parts = degrees
                .list()?
                .into_iter()
                .map(|d| lab::abelian_nonabelian_check(*r, *n, d, mode))
                .collect::<Result<Vec<_>>>()?;
            merged("abelian-nonabelian", json!({"r": r, "n": n}), mode, parts)
        }
        Check::Multiplicativity { n, r, cap } => lab::multiplicativity_check(*n, *r, &MultiDegree(cap.clone()))?,
        Check::Reduction { r, n, degrees } => {
            let parts =
                degrees.list()?.into_iter().map(|d| lab::reduction_check(*r, *n, d)).collect::<Result<Vec<_>>>()?;
            merged("reduction", json!({"r": r, "n": n}), Mode::Strict, parts)
        }
        Check::Route { r, n, degrees, mode } => {
            let mode: Mode = (*mode).into();
            let parts =
                degrees.list()?.into_iter().map(|d| lab::route_check(*r, *n, d, mode)).collect::<Result<Vec<_>>>()?;
            merged("route", json!({"r": r, "n": n}), mode, parts)
        }
        Check::FlagForms { dims, n, d, mode } => lab::flag_forms_check(dims, *n, &MultiDegree(d.clone()), (*mode).into())?,
        Check::Weyl { space, max_d, form } => {
            let space = SpaceDescriptor::parse(space)?;
            let cap = MultiDegree(vec![*max_d; space.num_levels()]);
            let parts = MultiDegree::up_to(&cap)
                .iter()
                .map(|d| lab::weyl_check(&coefficient(&space, d, *form)?))
                .collect::<Result<Vec<_>>>()?;
            merged("weyl", json!({"space": space.label(), "max_d": max_d}), Mode::Strict, parts)
        }
        Check::Qregular { space, max_d, form } => {
            let space = SpaceDescriptor::parse(space)?;
            let levels = match space.kind() {
                SpaceKind::IsotropicFlag { .. } => 1,
                _ => space.num_levels(),
            };
            let cap = MultiDegree(vec![*max_d; levels]);
            let coeffs = MultiDegree::up_to(&cap)
                .iter()
                .map(|d| coefficient(&space, d, *form))
                .collect::<Result<Vec<_>>>()?;
            lab::qregular_check(&coeffs)?
        }
        Check::Duality { n, max_d, form, order } => lab::duality_check(*n, *max_d, form.form(), *order)?,
    })
}

fn merged(identity: &str, params: Value, mode: Mode, parts: Vec<IdentityReport>) -> IdentityReport {
    if parts.len() == 1 {
        return parts.into_iter().next().unwrap();
    }
    IdentityReport::merge(identity, params, mode, parts)
}

fn run(cli: Cli) -> Result<(bool, Rendered, Output)> {
    let ok = |r, o: &Output| Ok((true, r, o.clone()));
    match &cli.command {
        Command::Grassmannian { r, n, degrees, form, out } => {
            let space = SpaceDescriptor::grassmannian(*r, *n)?;
            let coeffs = degrees
                .list()?
                .into_iter()
                .map(|d| match form {
                    GrForm::Display => grassmannian_j(*r, *n, d),
                    GrForm::Structured => grassmannian_j_structured(*r, *n, d),
                })
                .collect::<Result<Vec<_>>>()?;
            ok(render_coeffs(&space, coeffs, out.format), out)
        }
        Command::Projective { n, degrees, out } => {
            let space = SpaceDescriptor::grassmannian(1, *n)?;
            let coeffs = degrees.list()?.into_iter().map(|d| projective_j(*n, d)).collect::<Result<Vec<_>>>()?;
            ok(render_coeffs(&space, coeffs, out.format), out)
        }
        Command::Flag { dims, n, d, form, out } => {
            let form = match form {
                FlForm::Canonical => FlagForm::Canonical,
                FlForm::TheoremRatio => FlagForm::TheoremRatio,
            };
            let c = flag_j(dims, *n, &MultiDegree(d.clone()), form)?;
            let space = c.space.clone();
            ok(render_coeffs(&space, vec![c], out.format), out)
        }
        Command::Product { space, d, out } => {
            let space = SpaceDescriptor::parse(space)?;
            let c = product_j_on(&space, &MultiDegree(d.clone()))?;
            ok(render_coeffs(&space, vec![c], out.format), out)
        }
        Command::ConjectureC { n, degrees, out } | Command::ConjectureBd { n, degrees, out } => {
            let lagrangian = matches!(cli.command, Command::ConjectureC { .. });
            let coeffs = degrees
                .list()?
                .into_iter()
                .map(|d| if lagrangian { lagrangian_flag_j_conjecture(*n, d) } else { bd_flag_j_conjecture(*n, d) })
                .collect::<Result<Vec<_>>>()?;
            let space = coeffs[0].space.clone();
            ok(render_coeffs(&space, coeffs, out.format), out)
        }
        Command::Chi { space, d, gamma, order, out } => {
            let space = SpaceDescriptor::parse(space)?;
            let j = j_coefficient(&space, &MultiDegree(d.clone()))?;
            let gamma = gamma_class(&space, gamma)?;
            let p = chi_series(&space, j.value(), &gamma, *order)?;
            ok(render_poly(&p, out.format), out)
        }
        Command::Verify { check, out, timing } => {
            let start = Instant::now();
            let mut report = run_verify(check)?;
            if *timing {
                report.millis = Some(start.elapsed().as_millis());
            }
            let r = match out.format {
                Format::Text => Rendered::Text(report.to_text()),
                Format::Json => Rendered::Json(report.to_json()),
            };
            Ok((report.pass(), r, out.clone()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("JK_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli) {
        Ok((pass, rendered, out)) => {
            if let Err(e) = emit(&out, rendered) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 3 })
        }
    }
}
