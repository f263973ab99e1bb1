use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use alpha_harmonic::calculus::{
    alpha_laplacian_residual, dbar, dtheta, dz, wirtinger_residual, Derived, Target,
    DEFAULT_LAPLACIAN_STEP,
};
use alpha_harmonic::kernel::{dbar_poisson_kernel, g_alpha_eval, poisson_kernel};
use alpha_harmonic::norms::{default_grid, hardy_norm};
use alpha_harmonic::schwarz::{
    h_series_coeffs, schwarz_check, schwarz_report, standard_points, Which,
};
use alpha_harmonic::verify::{run_suite, Suite, SweepSpec};
use alpha_harmonic::{
    AlphaHarmonicFunction, AlphaParam, BoundaryFunction, DiskPoint, Engine, Error, NormIndex,
    QuadratureConfig,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "alpha-harmonic",
    version,
    about = "α-harmonic functions on the unit disk"
)]
struct Cli {
    /// Weight parameter α > −1.
    #[arg(long, global = true, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Output file; "-" or absent writes to stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for random boundaries (used when --boundary is absent) and sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Minimum number of circle quadrature nodes.
    #[arg(long, global = true)]
    quad_base: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// P_α, g_α and ∂̄P_α at a point.
    Kernel {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Value of the extension f = P_α[F] at a point.
    Extend {
        #[command(flatten)]
        input: BoundaryArgs,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_enum, default_value_t = EngineArg::Series)]
        engine: EngineArg,
    },
    /// Derivatives of the extension and identity residuals at a point.
    Deriv {
        #[command(flatten)]
        input: BoundaryArgs,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_enum, default_value_t = EngineArg::Series)]
        engine: EngineArg,
    },
    /// Integral means M_p(r, ·) over the dyadic radial grid.
    Norms {
        #[command(flatten)]
        input: BoundaryArgs,
        #[arg(long, default_value = "2")]
        p: NormIndex,
        #[arg(long, value_enum, default_value_t = TargetArg::F)]
        target: TargetArg,
        #[arg(long, default_value_t = 4096)]
        n_theta: usize,
    },
    /// Fourier coefficients a_n and the H_α series coefficients.
    Expand {
        #[command(flatten)]
        input: BoundaryArgs,
        #[arg(long)]
        order: usize,
    },
    /// One Schwarz-type bound over the standard points, or at --z.
    Schwarz {
        #[command(flatten)]
        input: BoundaryArgs,
        #[arg(long)]
        which: Which,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z: Option<Complex64>,
    },
    /// Runs a verification suite; exit status 3 when it fails.
    Verify {
        #[arg(long)]
        suite: Suite,
        /// JSON sweep description; --alpha and --seed override its fields.
        #[arg(long)]
        sweep: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct BoundaryArgs {
    /// Boundary coefficients file: {"coeffs": [{"n": 1, "re": 1.0, "im": 0.0}]}.
    #[arg(long)]
    boundary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    #[value(alias = "quadrature")]
    Quad,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    F,
    Dz,
    Dbar,
    DbarScaled,
    Dtheta,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::F => Target::F,
            TargetArg::Dz => Target::Dz,
            TargetArg::Dbar => Target::Dbar,
            TargetArg::DbarScaled => Target::DbarScaled,
            TargetArg::Dtheta => Target::Dtheta,
        }
    }
}

fn parse_point(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"re,im\", got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("real part: {e}"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|e| format!("imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

enum Failure {
    Domain(Error),
    VerifyFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Rendered output: JSON text, or CSV text.
struct Rendered(String);

struct Context {
    alpha: Option<f64>,
    seed: Option<u64>,
    quad: QuadratureConfig,
    format: Format,
}

impl Context {
    fn alpha(&self) -> Result<AlphaParam, Error> {
        AlphaParam::new(self.alpha.unwrap_or(1.0))
    }

    fn boundary(&self, args: &BoundaryArgs) -> Result<BoundaryFunction, Error> {
        match (&args.boundary, self.seed) {
            (Some(path), _) => BoundaryFunction::read_json(path),
            (None, Some(seed)) => {
                BoundaryFunction::random(seed, alpha_harmonic::boundary::DEFAULT_RANDOM_DEGREE)
            }
            (None, None) => Err(Error::Domain(
                "either --boundary or --seed is required".into(),
            )),
        }
    }

    fn function(
        &self,
        args: &BoundaryArgs,
        engine: EngineArg,
    ) -> Result<AlphaHarmonicFunction, Error> {
        let engine = match engine {
            EngineArg::Quad => Engine::Quadrature,
            EngineArg::Series => Engine::Series,
        };
        Ok(
            AlphaHarmonicFunction::new(self.alpha()?, self.boundary(args)?)
                .with_engine(engine)
                .with_quad(self.quad),
        )
    }

    /// A flat record as a JSON object or a two-line CSV.
    fn record(&self, fields: Vec<(&str, Value)>) -> Rendered {
        match self.format {
            Format::Json => {
                let map: Map<String, Value> = fields
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v))
                    .collect();
                Rendered(
                    serde_json::to_string_pretty(&Value::Object(map)).expect("record serializes")
                        + "\n",
                )
            }
            Format::Csv => {
                let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
                let values: Vec<String> = fields
                    .iter()
                    .map(|(_, v)| match v {
                        Value::Null => String::new(),
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                Rendered(format!("{}\n{}\n", header.join(","), values.join(",")))
            }
        }
    }

    fn text(&self, json: String, csv: String) -> Rendered {
        match self.format {
            Format::Json => Rendered(json + "\n"),
            Format::Csv => Rendered(csv),
        }
    }
}

/// Pushes `name` and `name_im`.
fn complex_fields(
    out: &mut Vec<(&'static str, Value)>,
    name: &'static str,
    name_im: &'static str,
    v: Complex64,
) {
    out.push((name, json!(v.re)));
    out.push((name_im, json!(v.im)));
}

fn point(z: Complex64) -> Result<DiskPoint, Error> {
    DiskPoint::new(z)
}

fn run(cli: Cli) -> Result<Rendered, Failure> {
    let mut quad = QuadratureConfig::default();
    if let Some(base) = cli.quad_base {
        quad.base_nodes = base;
        quad.validate()?;
    }
    let ctx = Context {
        alpha: cli.alpha,
        seed: cli.seed,
        quad,
        format: cli.format,
    };
    match cli.command {
        Command::Kernel { z } => {
            let a = ctx.alpha()?;
            let p = point(z)?;
            let mut fields = vec![("alpha", json!(a.value()))];
            complex_fields(&mut fields, "z", "z_im", z);
            complex_fields(&mut fields, "P_alpha", "P_alpha_im", poisson_kernel(a, p));
            complex_fields(&mut fields, "g_alpha", "g_alpha_im", g_alpha_eval(a, p));
            complex_fields(
                &mut fields,
                "dbar_P_alpha",
                "dbar_P_alpha_im",
                dbar_poisson_kernel(a, p),
            );
            Ok(ctx.record(fields))
        }
        Command::Extend { input, z, engine } => {
            let f = ctx.function(&input, engine)?;
            let v = f.extend(point(z)?)?;
            let mut fields = vec![("alpha", json!(f.alpha().value()))];
            complex_fields(&mut fields, "z", "z_im", z);
            complex_fields(&mut fields, "f", "f_im", v);
            Ok(ctx.record(fields))
        }
        Command::Deriv { input, z, engine } => {
            let f = ctx.function(&input, engine)?;
            let p = point(z)?;
            let a = f.alpha().value();
            let mut fields = vec![("alpha", json!(a))];
            complex_fields(&mut fields, "z", "z_im", z);
            complex_fields(&mut fields, "dz", "dz_im", dz(&f, p)?);
            complex_fields(&mut fields, "dbar", "dbar_im", dbar(&f, p)?);
            complex_fields(&mut fields, "dtheta", "dtheta_im", dtheta(&f, p)?);
            fields.push(("identity_residual", json!(wirtinger_residual(&f, p)?)));
            // the finite-difference stencil needs room inside the disk
            let lap = match alpha_laplacian_residual(&f, a, p, DEFAULT_LAPLACIAN_STEP) {
                Ok(v) => json!(v),
                Err(Error::TooCloseToBoundary(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            fields.push(("laplacian_residual", lap));
            Ok(ctx.record(fields))
        }
        Command::Norms {
            input,
            p,
            target,
            n_theta,
        } => {
            let f = ctx.function(&input, EngineArg::Series)?;
            let rep = hardy_norm(
                &Derived::new(&f, target.into()),
                p,
                &default_grid(),
                n_theta,
            )?;
            Ok(ctx.text(rep.to_json(), rep.to_csv()))
        }
        Command::Expand { input, order } => {
            let a = ctx.alpha()?;
            let b = ctx.boundary(&input)?;
            let order = order.min(alpha_harmonic::boundary::MAX_DEGREE);
            let coeffs: Vec<(i64, Complex64)> = (-(order as i64)..=order as i64)
                .map(|n| (n, b.coeff(n)))
                .collect();
            let h: Vec<Complex64> = h_series_coeffs(a, &b, order);
            let entry = |n: i64, c: Complex64| json!({ "n": n, "re": c.re, "im": c.im });
            let json = serde_json::to_string_pretty(&json!({
                "alpha": a.value(),
                "order": order,
                "a": coeffs.iter().map(|&(n, c)| entry(n, c)).collect::<Vec<_>>(),
                "h_alpha": h.iter().enumerate().map(|(n, &c)| entry(n as i64, c)).collect::<Vec<_>>(),
            }))
            .expect("expansion serializes");
            let mut csv = String::from("series,n,re,im\n");
            for (n, c) in &coeffs {
                csv.push_str(&format!("a,{n},{},{}\n", c.re, c.im));
            }
            for (n, c) in h.iter().enumerate() {
                csv.push_str(&format!("h_alpha,{n},{},{}\n", c.re, c.im));
            }
            Ok(ctx.text(json, csv))
        }
        Command::Schwarz { input, which, z } => {
            let f = ctx.function(&input, EngineArg::Series)?;
            match z {
                Some(z) => {
                    let e = schwarz_check(&f, point(z)?, which)?;
                    let mut fields = vec![
                        ("alpha", json!(f.alpha().value())),
                        ("which", json!(which.as_str())),
                    ];
                    complex_fields(&mut fields, "z", "z_im", z);
                    fields.push(("lhs", json!(e.lhs)));
                    fields.push(("rhs", json!(e.rhs)));
                    fields.push(("rhs_closed_form", json!(e.rhs_closed_form)));
                    fields.push(("slack", json!(e.slack())));
                    Ok(ctx.record(fields))
                }
                None => {
                    let rep = schwarz_report(&f, &standard_points(), which)?;
                    Ok(ctx.text(rep.to_json(), rep.to_csv()))
                }
            }
        }
        Command::Verify { suite, sweep } => {
            let mut spec = match sweep {
                Some(path) => {
                    SweepSpec::from_json_str(&fs::read_to_string(path).map_err(Error::from)?)?
                }
                None => SweepSpec::default(),
            };
            if let Some(a) = ctx.alpha {
                spec.alphas = Some(vec![a]);
            }
            if let Some(s) = ctx.seed {
                spec.seed = s;
            }
            let rep = run_suite(suite, &spec)?;
            let out = ctx.text(rep.to_json(), rep.to_csv());
            if rep.pass {
                Ok(out)
            } else {
                emit(&out, cli.output.as_ref()).map_err(Failure::Domain)?;
                let failed = rep.failures().count();
                Err(Failure::VerifyFailed(format!(
                    "suite {suite} failed: {failed} of {} cases violated",
                    rep.cases.len()
                )))
            }
        }
    }
}

fn emit(out: &Rendered, path: Option<&PathBuf>) -> Result<(), Error> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::write(p, &out.0)?,
        _ => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.0.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli) {
        Ok(out) => match emit(&out, output.as_ref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_DOMAIN)
            }
        },
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::VerifyFailed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
    }
}
