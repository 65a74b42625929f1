use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hopf_lift::cli::{emit_report, parse_config, run, Command, Format, JobConfig, Report};
use hopf_lift::cli::DatumSource;
use hopf_lift::cyclotomic::CycNum;
use hopf_lift::error::{Error, Result};

#[derive(Parser)]
#[command(name = "hopf-lift", version, about = "Deforming 2-cocycles and lifted Hopf algebras, computed exactly")]
struct Args {
    /// Job config (JSON); the flags below override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Preset datum: a1, qls, qplane or a2.
    #[arg(long, global = true)]
    preset: Option<String>,
    #[arg(long = "N", id = "order", global = true)]
    n: Option<u32>,
    #[arg(long, global = true)]
    cutoff: Option<u32>,
    /// A value of f, e.g. `--f z21=1` or `--f 'z1={"order":3,"coeffs":[0,1]}'`; repeatable.
    #[arg(long = "f", global = true, value_name = "NAME=VALUE")]
    f: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    verb: Option<Verb>,
}

#[derive(Subcommand)]
enum Verb {
    /// Build δf, bosonize, deform and emit the multiplication table.
    Lift,
    /// Cocycle and Hopf-axiom suites.
    Check,
    Oracle {
        #[command(subcommand)]
        which: OracleVerb,
    },
    Retraction {
        #[command(subcommand)]
        step: RetractionVerb,
    },
    Theorem33,
    Prop36,
    /// The acceptance criteria (those touching the datum's family, if one is given).
    Selftest,
    /// The `commands` listed in the config.
    Run,
}

#[derive(Subcommand)]
enum OracleVerb {
    Lemma31 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum RetractionVerb {
    Build,
    Verify,
}

fn parse_f(entry: &str) -> Result<(String, CycNum)> {
    let (name, value) = entry
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("--f `{entry}`: expected NAME=VALUE")))?;
    let v = serde_json::from_str(value).unwrap_or_else(|_| serde_json::Value::String(value.to_string()));
    Ok((name.trim().to_string(), CycNum::from_json(&v)?))
}

fn config(args: &Args) -> Result<Option<JobConfig>> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), _) => parse_config(path)?,
        (None, Some(name)) => {
            let n = args.n.ok_or_else(|| Error::Parse("--preset needs --N".into()))?;
            JobConfig::preset(name, n)
        }
        (None, None) if args.n.is_some() => return Err(Error::Parse("--N needs --preset or --config".into())),
        (None, None) => return Ok(None),
    };
    if args.config.is_some() {
        if let Some(name) = &args.preset {
            let n = match (&cfg.datum, args.n) {
                (_, Some(n)) => n,
                (DatumSource::Preset { n, .. }, None) => *n,
                (DatumSource::Inline(spec), None) => spec.n,
            };
            cfg.datum = DatumSource::Preset { name: name.to_ascii_lowercase(), n };
        } else if let (DatumSource::Preset { n, .. }, Some(new)) = (&mut cfg.datum, args.n) {
            *n = new;
        }
    }
    if args.cutoff.is_some() {
        cfg.cutoff = args.cutoff;
    }
    for entry in &args.f {
        let (name, v) = parse_f(entry)?;
        cfg.f_values.insert(name, v);
    }
    Ok(Some(cfg))
}

fn commands(args: &Args, cfg: Option<&JobConfig>) -> Result<Vec<Command>> {
    let one = match &args.verb {
        Some(Verb::Lift) => Command::Lift,
        Some(Verb::Check) => Command::Check,
        Some(Verb::Oracle { which: OracleVerb::Lemma31 { m, n } }) => Command::Lemma31 { m: *m, n: *n },
        Some(Verb::Retraction { step: RetractionVerb::Build }) => Command::RetractionBuild,
        Some(Verb::Retraction { step: RetractionVerb::Verify }) => Command::RetractionVerify,
        Some(Verb::Theorem33) => Command::Theorem33,
        Some(Verb::Prop36) => Command::Prop36,
        Some(Verb::Selftest) => Command::Selftest,
        Some(Verb::Run) | None => {
            let cfg = cfg.ok_or_else(|| Error::Parse("no command given and no --config to take commands from".into()))?;
            if cfg.commands.is_empty() {
                return Err(Error::Parse("the config lists no commands".into()));
            }
            return cfg.commands.iter().map(|c| Command::parse(c)).collect();
        }
    };
    Ok(vec![one])
}

/// Folds several command reports into one, prefixing names with the command.
fn merge(reports: Vec<Report>) -> Report {
    if reports.len() == 1 {
        return reports.into_iter().next().unwrap();
    }
    let mut all = Report::new(reports.iter().map(|r| r.command.as_str()).collect::<Vec<_>>().join("; "));
    for r in reports {
        for mut c in r.checks {
            c.name = format!("{}: {}", r.command, c.name);
            all.push(c);
        }
        all.artifacts.extend(r.artifacts);
        for (k, v) in r.data {
            all.data.insert(format!("{}/{k}", r.command), v);
        }
    }
    all
}

fn execute(args: &Args) -> Result<Report> {
    let format = Format::parse(&args.format)?;
    let cfg = config(args)?;
    let cmds = commands(args, cfg.as_ref())?;
    let mut reports = Vec::new();
    for cmd in &cmds {
        let r = match (cmd, &cfg) {
            (Command::Selftest, None) => hopf_lift::cli::selftest(None),
            (_, Some(cfg)) => run(cmd, cfg)?,
            (_, None) => return Err(Error::Parse(format!("`{}` needs --preset/--N or --config", cmd.name()))),
        };
        reports.push(r);
    }
    let report = merge(reports);
    emit_report(&report, format, args.out.as_deref())?;
    Ok(report)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(r) if r.passed() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hopf-lift: {e}");
            ExitCode::from(2)
        }
    }
}
