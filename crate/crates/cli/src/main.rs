use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use helly_cli::{
    canonical_json, density_report, gen_instance, resolve_params, run, verify, Algorithm,
    Certificate, Failure, Loaded, RawParams, VerifyOptions, EXIT_OK, EXIT_VERIFY_FAILED,
};
use helly_core::constructions::GenSpec;
use helly_core::{MonotoneProperty, Rational};

#[derive(Parser)]
#[command(
    name = "helly",
    version,
    about = "Helly-type selections with checkable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run an algorithm and write its certificate.
    Run(RunArgs),
    /// Re-check a certificate against its instance.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        /// Skip the check that the certificate is the one the algorithm produces.
        #[arg(long)]
        soundness_only: bool,
    },
    /// Exact density of property-satisfying r-subsets.
    Density {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        r: usize,
        /// Property as JSON; defaults to the instance's.
        #[arg(long)]
        property: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// 2d boxes whose full intersection has volume epsilon.
    TightColorful {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        epsilon: Rational,
        #[arg(long)]
        clip: Option<Rational>,
    },
    /// Slabs split into per-axis classes.
    TightFractional {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        thickness: Option<Rational>,
        #[arg(long)]
        clip: Option<Rational>,
    },
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        span: Option<i64>,
        #[arg(long)]
        classes: Option<usize>,
        /// Direction system as JSON rows of rationals; boxes when absent.
        #[arg(long)]
        normals: Option<String>,
    },
    /// A family whose r-subset density reaches alpha.
    Dense {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Rational,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        property: Option<String>,
        #[arg(long)]
        normals: Option<String>,
    },
    /// Any generator spec given as JSON.
    Spec {
        #[arg(long)]
        json: String,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    alpha: Option<Rational>,
    #[arg(long)]
    t_override: Option<u64>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Sampled prefix search seed; exhaustive search when neither this nor --samples is set.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    /// Chain length for `chain`.
    #[arg(long)]
    target: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn json_arg<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("bad {what}: {e}")))
}

fn opt_json<T: serde::de::DeserializeOwned>(
    what: &str,
    text: &Option<String>,
) -> Result<Option<T>, Failure> {
    text.as_deref().map(|t| json_arg(what, t)).transpose()
}

fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{}", String::from_utf8_lossy(bytes));
            Ok(())
        }
    }
}

fn spec_of(kind: GenKind) -> Result<GenSpec, Failure> {
    Ok(match kind {
        GenKind::TightColorful { dim, epsilon, clip } => {
            GenSpec::TightColorful { dim, epsilon, clip }
        }
        GenKind::TightFractional {
            dim,
            n,
            thickness,
            clip,
        } => GenSpec::TightFractional {
            dim,
            n,
            thickness,
            clip,
        },
        GenKind::Random {
            dim,
            n,
            seed,
            span,
            classes,
            normals,
        } => GenSpec::Random {
            dim,
            n,
            seed,
            span,
            classes,
            normals: opt_json("normals", &normals)?,
        },
        GenKind::Dense {
            dim,
            n,
            alpha,
            r,
            seed,
            property,
            normals,
        } => GenSpec::Dense {
            dim,
            n,
            alpha,
            r,
            seed,
            property: opt_json("property", &property)?,
            normals: opt_json("normals", &normals)?,
        },
        GenKind::Spec { json } => json_arg("spec", &json)?,
    })
}

fn execute(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Gen { kind, out } => {
            let instance = gen_instance(&spec_of(kind)?)?;
            emit(&instance.canonical_bytes(), out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Run(args) => {
            let loaded = Loaded::read(&args.instance)?;
            let raw = RawParams {
                alpha: args.alpha,
                t_override: args.t_override,
                p: args.p,
                q: args.q,
                target: args.target,
                seed: args.seed,
                samples: args.samples,
            };
            let params = resolve_params(args.algorithm, &raw)?;
            let cert = run(&loaded, args.algorithm, params)?;
            emit(&canonical_json(&cert), args.out.as_deref())?;
            if let Some(subset) = &cert.violating_subset {
                let ids: Vec<&str> = subset.iter().map(|id| id.as_str()).collect();
                eprintln!("hypothesis failed on {}", ids.join(" "));
            }
            Ok(cert.status.exit_code())
        }
        Command::Verify {
            certificate,
            instance,
            soundness_only,
        } => {
            let loaded = Loaded::read(&instance)?;
            let parsed = std::fs::read_to_string(&certificate)
                .map_err(|e| e.to_string())
                .and_then(|text| {
                    serde_json::from_str::<Certificate>(&text).map_err(|e| e.to_string())
                });
            let cert = match parsed {
                Ok(cert) => cert,
                Err(e) => {
                    eprintln!("rejected: malformed certificate: {e}");
                    return Ok(EXIT_VERIFY_FAILED);
                }
            };
            if verify(&loaded, &cert, VerifyOptions { soundness_only })? {
                println!("ok");
                Ok(EXIT_OK)
            } else {
                eprintln!("rejected");
                Ok(EXIT_VERIFY_FAILED)
            }
        }
        Command::Density {
            instance,
            r,
            property,
            out,
        } => {
            let loaded = Loaded::read(&instance)?;
            let prop: Option<MonotoneProperty> = opt_json("property", &property)?;
            let report = density_report(&loaded, r, prop)?;
            emit(&canonical_json(&report), out.as_deref())?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    };
    ExitCode::from(code as u8)
}
