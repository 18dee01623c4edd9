//! Command-line front end: `verify`, `typemap`, `spinor`, `fmap`.

pub mod report;
pub mod suite;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand, ValueEnum};

use gctk::family::{
    f_map, phi_alpha_beta, phi_alpha_beta_symbolic, type_map, FamilyPoint, ParamVars,
    TwistorFiberPoint, TypeScope,
};
use gctk::hyperkahler::{build_model, RotationParam, MAX_N};
use gctk::scalars::ExactComplex;
use gctk::twistor::Mutation;

use report::{VerificationReport, SCHEMA, SUITE};

#[derive(Parser, Debug)]
#[command(
    name = "gctk",
    version,
    about = "Exact checks of generalized complex structures on flat hyperkahler space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the verification suite and write a JSON report.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_N as i64))]
        n: u8,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Tolerance of the floating-point cross-checks.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Corrupt the hyperkahler forms to show the closedness checks can fail.
        #[arg(long)]
        mutate: Option<Mutation>,
    },
    /// Tabulate the type of J over a grid in all four chart pairs (CSV).
    Typemap {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_N as i64))]
        n: u8,
        #[arg(long, value_parser = clap::value_parser!(u16).range(2..))]
        grid: u16,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Type on M alone instead of the twistor space.
        #[arg(long)]
        fiber: bool,
    },
    /// Print Phi_{alpha,beta}, or its symbolic expansion when no point is given.
    Spinor {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_N as i64))]
        n: u8,
        #[arg(long, allow_hyphen_values = true, requires = "beta")]
        alpha: Option<RotationParam>,
        #[arg(long, allow_hyphen_values = true, requires = "alpha")]
        beta: Option<RotationParam>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print f(eta, zeta) as `(alpha, beta)`.
    Fmap {
        #[arg(long, allow_hyphen_values = true)]
        eta: ExactComplex,
        #[arg(long, allow_hyphen_values = true)]
        zeta: ExactComplex,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Caps the global rayon pool at `GCTK_THREADS` workers when set.
pub fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("GCTK_THREADS") {
        let threads: usize = v
            .parse()
            .with_context(|| format!("GCTK_THREADS={v} is not a count"))?;
        if threads == 0 {
            anyhow::bail!("GCTK_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    Ok(())
}

fn write_output(out: Option<&Path>, body: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().write_all(body)?),
    }
}

pub fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Verify {
            n,
            seed,
            samples,
            tol,
            out,
            mutate,
        } => {
            let report = verify(n as usize, seed, samples, tol, mutate)?;
            let mut body = serde_json::to_vec_pretty(&report)?;
            body.push(b'\n');
            write_output(out.as_deref(), &body)?;
            let failed = report.failed();
            if failed.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("failing checks: {}", failed.join(", "));
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Typemap {
            n,
            grid,
            out,
            fiber,
        } => {
            let scope = if fiber {
                TypeScope::Fiber
            } else {
                TypeScope::Total
            };
            write_output(
                out.as_deref(),
                &typemap_csv(n as usize, grid as usize, scope)?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Spinor {
            n,
            alpha,
            beta,
            format,
        } => {
            println!("{}", spinor(n as usize, alpha.zip(beta), format)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Fmap { eta, zeta } => {
            let p = f_map(&TwistorFiberPoint { eta, zeta });
            println!("({}, {})", p.alpha, p.beta);
            Ok(ExitCode::SUCCESS)
        }
    }
}

pub fn verify(
    n: usize,
    seed: u64,
    samples: usize,
    tol: f64,
    mutation: Option<Mutation>,
) -> anyhow::Result<VerificationReport> {
    let ctx = suite::Context {
        model: build_model(n)?,
        seed,
        samples,
        tol,
        mutation,
    };
    Ok(VerificationReport {
        schema: SCHEMA,
        suite: SUITE.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed,
        n,
        samples,
        tol,
        mutation: mutation.map(|_| "nonclosed-omega".into()),
        checks: suite::run(&ctx),
    })
}

pub fn typemap_csv(n: usize, grid: usize, scope: TypeScope) -> anyhow::Result<Vec<u8>> {
    let rows = type_map(&build_model(n)?, grid, scope)?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record([
        "alpha_re", "alpha_im", "beta_re", "beta_im", "chart_a", "chart_b", "type",
    ])?;
    for r in rows {
        w.write_record([
            r.alpha.re.to_string(),
            r.alpha.im.to_string(),
            r.beta.re.to_string(),
            r.beta.im.to_string(),
            r.chart_a.to_string(),
            r.chart_b.to_string(),
            r.type_.to_string(),
        ])?;
    }
    Ok(w.into_inner()?)
}

pub fn spinor(
    n: usize,
    point: Option<(RotationParam, RotationParam)>,
    format: Format,
) -> anyhow::Result<String> {
    let m = build_model(n)?;
    let terms: Vec<(String, String)>;
    let text = match point {
        Some((a, b)) => {
            let phi = phi_alpha_beta(&m, &FamilyPoint::new(a, b))?;
            terms = phi
                .terms()
                .map(|(mask, c)| (gctk::multivector::mask_name(*mask), c.to_string()))
                .collect();
            phi.to_string()
        }
        None => {
            let phi = phi_alpha_beta_symbolic(&m)?;
            let vars = ParamVars::after(m.dim).variables(false);
            terms = phi
                .terms()
                .map(|(mask, c)| (gctk::multivector::mask_name(*mask), c.render(&vars)))
                .collect();
            phi.render_vars(&vars)
        }
    };
    Ok(match format {
        Format::Text => text,
        Format::Json => {
            let list: Vec<_> = terms
                .into_iter()
                .map(|(form, coeff)| serde_json::json!({ "form": form, "coeff": coeff }))
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "n": n, "terms": list }))?
        }
    })
}
