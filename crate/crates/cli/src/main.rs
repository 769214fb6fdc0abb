use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use knotcover_cli::{
    cmd_alexander, cmd_branched, cmd_growth, cmd_liftres, cmd_residue, cmd_selftest, cmd_signature,
    load_theta_class, parse_p_range, resolve_graph, resolve_record, CliError, CliResult, Command,
    Format, Outcome, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "knotcover",
    version,
    about = "Invariants of cyclic branched covers of knots from Seifert matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// csv, table or json
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Eigenvalue and root tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Alexander polynomial in symmetric form
    Alexander {
        /// Knot JSON file or bundled record name
        knot: String,
        #[command(flatten)]
        common: Common,
    },
    /// Signatures at roots of unity, from the Seifert and the clover matrix
    Signature {
        knot: String,
        #[arg(long, default_value = "2..6")]
        p: String,
        #[command(flatten)]
        common: Common,
    },
    /// Per-p rows of total signature, torsion order and Casson-Walker invariant
    Branched {
        knot: String,
        #[arg(long, default_value = "2..6")]
        p: String,
        /// Theta class JSON (defaults to the record's q2loop)
        #[arg(long)]
        q: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// log(beta_p)/p against the log Mahler measure
    Growth {
        knot: String,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
        /// Explicit p list, overriding --pmax
        #[arg(long)]
        p: Option<String>,
        /// Emit x,y pairs only
        #[arg(long)]
        plot: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Res_p of a theta class and its torus average
    Residue {
        #[arg(long)]
        q: PathBuf,
        #[arg(long, default_value = "2..7")]
        p: String,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive Lift_p = Res_p(phi_R) sweep over bead tuples
    Liftres {
        /// theta, eyes, unions like theta+eyes, or graph JSON files
        #[arg(default_values_t = ["theta".to_string(), "eyes".to_string(), "theta+theta".to_string()])]
        graphs: Vec<String>,
        #[arg(long, default_value = "2,3,5")]
        p: String,
        /// One row per bead tuple
        #[arg(long)]
        each: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance suite
    Selftest {
        /// Perturb every oracle; the suite must then fail
        #[arg(long)]
        corrupt: bool,
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        #[arg(long, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn config(
    command: Command,
    ps: Vec<u64>,
    common: &Common,
    inputs: Vec<String>,
) -> CliResult<RunConfig> {
    let cfg = RunConfig {
        command,
        ps,
        tol: common.tol,
        format: common.format,
        inputs,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(cmd: Cmd) -> CliResult<(Outcome, Option<PathBuf>)> {
    match cmd {
        Cmd::Alexander { knot, common } => {
            let rec = resolve_record(&knot)?;
            Ok((cmd_alexander(&rec, common.format)?, common.out))
        }
        Cmd::Signature { knot, p, common } => {
            let cfg = config(Command::Signature, parse_p_range(&p)?, &common, vec![knot])?;
            let rec = resolve_record(&cfg.inputs[0])?;
            Ok((
                cmd_signature(&rec, &cfg.ps, cfg.tol, cfg.format)?,
                common.out,
            ))
        }
        Cmd::Branched { knot, p, q, common } => {
            let cfg = config(Command::Branched, parse_p_range(&p)?, &common, vec![knot])?;
            let rec = resolve_record(&cfg.inputs[0])?;
            let q = match q {
                Some(path) => Some(load_theta_class(&path)?),
                None => rec.q2loop.clone(),
            };
            Ok((
                cmd_branched(&rec, &cfg.ps, q.as_ref(), cfg.format)?,
                common.out,
            ))
        }
        Cmd::Growth {
            knot,
            pmax,
            p,
            plot,
            common,
        } => {
            let ps = match p {
                Some(s) => parse_p_range(&s)?,
                None => (1..=pmax).collect(),
            };
            let cfg = config(Command::Growth, ps, &common, vec![knot])?;
            let rec = resolve_record(&cfg.inputs[0])?;
            Ok((cmd_growth(&rec, &cfg.ps, plot, cfg.format)?, common.out))
        }
        Cmd::Residue { q, p, common } => {
            let cfg = config(
                Command::Residue,
                parse_p_range(&p)?,
                &common,
                vec![q.display().to_string()],
            )?;
            let q = load_theta_class(&q)?;
            Ok((cmd_residue(&q, &cfg.ps, cfg.tol, cfg.format)?, common.out))
        }
        Cmd::Liftres {
            graphs,
            p,
            each,
            common,
        } => {
            let cfg = config(Command::Liftres, parse_p_range(&p)?, &common, graphs)?;
            let graphs = cfg
                .inputs
                .iter()
                .map(|g| resolve_graph(g).map(|h| (g.clone(), h)))
                .collect::<CliResult<Vec<_>>>()?;
            Ok((cmd_liftres(&graphs, &cfg.ps, each, cfg.format)?, common.out))
        }
        Cmd::Selftest {
            corrupt,
            only,
            format,
            out,
        } => Ok((cmd_selftest(corrupt, &only, format), out)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((outcome, out)) => {
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &outcome.text) {
                        let err = CliError::input("io", format!("{}: {e}", path.display()));
                        eprintln!("{}", err.to_json());
                        return ExitCode::from(err.code as u8);
                    }
                }
                None => print!("{}", outcome.text),
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.code as u8)
        }
    }
}
