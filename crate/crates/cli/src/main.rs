use std::path::PathBuf;
use std::process::ExitCode;

use cherednik_cli::commands;
use cherednik_cli::job::{Format, JobSpec};
use cherednik_cli::report::Report;
use cherednik_cli::CliError;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cherednik", version, about = "Exact computations for restricted rational Cherednik algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every random choice (generic parameters, samples).
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Truncation order in q.
    #[arg(long = "trunc", default_value_t = cherednik_core::verma::DEFAULT_TRUNCATION, global = true)]
    truncation: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Group data, irreducibles, fake degrees and b-invariants.
    Group {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Calogero-Moser partition of Irr(W) at a parameter.
    CmPartition {
        #[arg(long)]
        group: String,
        /// `generic`, `generic:SEED`, `zero`, a rational, or `label=value,...`.
        #[arg(long, default_value = "generic")]
        c: String,
        #[command(flatten)]
        common: Common,
    },
    /// Endomorphism characters, e_i, Tor and Ext for each block.
    Characters {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "generic")]
        c: String,
        /// Restrict to the block containing this irreducible.
        #[arg(long)]
        label: Option<String>,
        /// Also check the hook identity (symmetric groups only).
        #[arg(long)]
        check_hook: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run every invariant suite over a grid of groups and parameters.
    Verify {
        /// Repeatable; defaults to a small grid.
        #[arg(long)]
        group: Vec<String>,
        /// Repeatable; defaults to `generic` and `zero`.
        #[arg(long)]
        c: Vec<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        bv_samples: usize,
        /// Skip the BV checks.
        #[arg(long)]
        no_bv: bool,
        /// Force every check whose name contains this string to fail.
        #[arg(long)]
        inject_fault: Option<String>,
        /// Treat an empty group list as an error instead of using the default grid.
        #[arg(long, hide = true)]
        empty_grid: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reduction to the stabilizer of a point of h.
    Reduce {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "generic")]
        c: String,
        /// Comma-separated coordinates, e.g. `1,0,0`.
        #[arg(long)]
        point: String,
        #[command(flatten)]
        common: Common,
    },
    /// BV identities and virtual homology on truncated polyvector fields.
    BvCheck {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Multiply two elements given in PBW notation, e.g. `y1*x1` or `2*s1*x2`.
    Pbw {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "generic")]
        c: String,
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
        #[command(flatten)]
        common: Common,
    },
}

fn job(command: &str, common: &Common) -> JobSpec {
    let mut j = JobSpec::new(command);
    j.seed = common.seed;
    j.truncation = common.truncation;
    j.format = common.format;
    j
}

fn dispatch(cmd: Command) -> Result<(Report, Option<PathBuf>), CliError> {
    let (report, out) = match cmd {
        Command::Group { group, common } => {
            let mut j = job("group", &common);
            j.group = vec![group];
            (commands::cmd_group(j)?, common.out)
        }
        Command::CmPartition { group, c, common } => {
            let mut j = job("cm-partition", &common);
            j.group = vec![group];
            j.c = vec![c];
            (commands::cmd_cm_partition(j)?, common.out)
        }
        Command::Characters { group, c, label, check_hook, common } => {
            let mut j = job("characters", &common);
            j.group = vec![group];
            j.c = vec![c];
            if let Some(l) = label {
                j.options.insert("label".into(), l);
            }
            if check_hook {
                j.options.insert("check-hook".into(), "true".into());
            }
            (commands::cmd_characters(j)?, common.out)
        }
        Command::Verify { group, c, samples, bv_samples, no_bv, inject_fault, empty_grid, common } => {
            let mut j = job("verify", &common);
            j.group = if group.is_empty() && !empty_grid {
                commands::DEFAULT_GRID.iter().map(|s| s.to_string()).collect()
            } else {
                group
            };
            j.c = c;
            j.options.insert("samples".into(), samples.to_string());
            j.options.insert("bv-samples".into(), bv_samples.to_string());
            if no_bv {
                j.options.insert("no-bv".into(), "true".into());
            }
            if let Some(f) = inject_fault {
                j.options.insert("inject-fault".into(), f);
            }
            (commands::cmd_verify(j)?, common.out)
        }
        Command::Reduce { group, c, point, common } => {
            let mut j = job("reduce", &common);
            j.group = vec![group];
            j.c = vec![c];
            j.point = Some(point);
            (commands::cmd_reduce(j)?, common.out)
        }
        Command::BvCheck { n, samples, common } => {
            let mut j = job("bv-check", &common);
            if common.truncation == cherednik_core::verma::DEFAULT_TRUNCATION {
                j.truncation = 6;
            }
            j.options.insert("n".into(), n.to_string());
            j.options.insert("samples".into(), samples.to_string());
            (commands::cmd_bv_check(j)?, common.out)
        }
        Command::Pbw { group, c, a, b, common } => {
            let mut j = job("pbw", &common);
            j.group = vec![group];
            j.c = vec![c];
            j.options.insert("a".into(), a);
            j.options.insert("b".into(), b);
            (commands::cmd_pbw(j)?, common.out)
        }
    };
    Ok((report, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((report, out)) => {
            let text = report.render();
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("cherednik: cannot write {}: {}", path.display(), e);
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", text),
            }
            for c in report.failing() {
                eprintln!("FAIL {}: {}", c.name, c.detail);
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("cherednik: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
