use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use valley_delta::check::{
    exit_code, parse_expr, sweep, CheckKind, CheckReport, Session, DEFAULT_ENUMERATION_LIMIT,
    DEFAULT_SYMBOLIC_LIMIT,
};
use valley_delta::paths::{enumerate, genpoly, LabelledPath, Touch};
use valley_delta::symfunc::{set_cache_dir, Basis};

#[derive(Parser)]
#[command(
    name = "vdelta",
    about = "Exact q,t-combinatorics of decorated labelled Dyck paths and the identities over them",
    version
)]
struct Cli {
    /// Directory for the Macdonald expansion cache (default: the
    /// VDELTA_CACHE_DIR environment variable, else no disk cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List every decorated path with the given zero-label, positive-label
    /// and decoration counts.
    Enumerate {
        m: usize,
        n: usize,
        k: usize,
        /// Label alphabet bound (default: n, or 1 if n = 0).
        #[arg(long)]
        max_label: Option<u8>,
        /// Write a per-path statistics table to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Validate a path and print its statistics.
    ///
    /// Path format: 'area=0,1,1,0 labels=1,2,0,3 dv=3'
    Stats { path: String },
    /// Run the pushing algorithm on a path.
    Push { path: String },
    /// Generating polynomial of LD(m,n) with k decorations.
    Genpoly {
        m: usize,
        n: usize,
        k: usize,
        /// Touch selector: a number, or 'all'.
        #[arg(short, default_value = "all")]
        r: String,
        /// Label alphabet bound (default: n, or 1 if n = 0).
        #[arg(short = 'N', long)]
        max_label: Option<u8>,
    },
    /// Evaluate a symbolic expression: nabla(...), theta(e_k, ...),
    /// delta(h_m, ...), deltap(e_j, ...), E(n,k), hperp(m, ...), e(n).
    Sf {
        expr: String,
        /// Output basis.
        #[arg(long, value_enum, default_value_t = BasisArg::M)]
        basis: BasisArg,
    },
    /// Run a single check; see 'check --help' for names and parameters.
    ///
    /// theta-en n k | sf-identity m n k r | pushing m n k r |
    /// valley-delta n k r|all | generalised m n k r|all |
    /// hperp-combinatorial m n k r
    Check {
        name: String,
        params: Vec<String>,
        /// Report conjecture mismatches via exit code 2 instead of 1.
        #[arg(long)]
        conjectures_advisory: bool,
    },
    /// Run every check over all admissible tuples within a size budget.
    Sweep {
        /// Overrides both default budgets (enumeration 6, symbolic 5).
        #[arg(long)]
        max_size: Option<usize>,
        /// Comma-separated subset of: theta-en, sf-identity, pushing,
        /// valley-delta, generalised, hperp-combinatorial.
        #[arg(long)]
        checks: Option<String>,
        /// Report conjecture mismatches via exit code 2 instead of 1.
        #[arg(long)]
        conjectures_advisory: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    P,
    M,
    E,
    H,
    S,
    #[value(name = "H", alias = "macdonald")]
    Htilde,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::P => Basis::Power,
            BasisArg::M => Basis::Monomial,
            BasisArg::E => Basis::Elementary,
            BasisArg::H => Basis::Homogeneous,
            BasisArg::S => Basis::Schur,
            BasisArg::Htilde => Basis::Macdonald,
        }
    }
}

fn parse_touch(s: &str) -> Result<Touch> {
    if s == "all" {
        Ok(Touch::All)
    } else {
        Ok(Touch::Exactly(
            s.parse().context("touch must be a number or 'all'")?,
        ))
    }
}

fn default_alphabet(n: usize, requested: Option<u8>) -> u8 {
    requested.unwrap_or_else(|| (n as u8).max(1))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(dir) = &cli.cache_dir {
        set_cache_dir(Some(dir.clone()));
    }
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(64)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Enumerate {
            m,
            n,
            k,
            max_label,
            csv,
        } => {
            let max_label = default_alphabet(n, max_label);
            let paths = enumerate(m, n, k, max_label);
            match csv {
                Some(out) => {
                    let mut writer = csv::Writer::from_path(&out)
                        .with_context(|| format!("cannot write {}", out.display()))?;
                    writer.write_record([
                        "area_word",
                        "labels",
                        "dv",
                        "area",
                        "dinv",
                        "touch",
                        "monomial",
                    ])?;
                    let mut count = 0u64;
                    for p in paths {
                        writer.write_record(&stats_record(&p, max_label as usize)?)?;
                        count += 1;
                    }
                    writer.flush()?;
                    println!("{count} paths written to {}", out.display());
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    for p in paths {
                        writeln!(lock, "{p}")?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { path } => {
            let p: LabelledPath = path.parse()?;
            let nvars = p.max_label().max(1) as usize;
            if cli.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "path": p.to_string(),
                        "size": p.size(),
                        "positive_labels": p.positive_label_count(),
                        "zero_labels": p.zero_label_count(),
                        "decorations": p.decoration_count(),
                        "contractible_valleys": p.contractible_valleys(),
                        "area": p.area(),
                        "dinv": p.dinv(),
                        "touch": p.touch(),
                        "monomial": p.monomial(nvars)?.to_string(),
                    })
                );
            } else {
                println!("path      {p}");
                println!("valleys   {:?}", p.contractible_valleys());
                println!("area      {}", p.area());
                println!("dinv      {}", p.dinv());
                println!("touch     {}", p.touch());
                println!("monomial  {}", p.monomial(nvars)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Push { path } => {
            let p: LabelledPath = path.parse()?;
            let result = p.push();
            if cli.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "input": p.to_string(),
                        "pushed": result.pushed.to_string(),
                        "deleted_steps": result.deleted_steps,
                        "deleted_decorations": result.deleted_decorations,
                    })
                );
            } else {
                println!("pushed               {}", result.pushed);
                println!("deleted steps        {}", result.deleted_steps);
                println!("deleted decorations  {}", result.deleted_decorations);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Genpoly {
            m,
            n,
            k,
            r,
            max_label,
        } => {
            let touch = parse_touch(&r)?;
            let max_label = default_alphabet(n, max_label);
            let poly = genpoly(m, n, k, touch, max_label);
            if cli.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "m": m, "n": n, "k": k, "r": r,
                        "max_label": max_label,
                        "genpoly": poly.to_string(),
                    })
                );
            } else {
                println!("{poly}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sf { expr, basis } => {
            let f = parse_expr(&expr)?;
            let converted = f.convert(basis.into())?;
            if cli.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "expr": expr,
                        "basis": Basis::from(basis).letter(),
                        "value": converted.to_string(),
                    })
                );
            } else {
                println!("{converted}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            name,
            params,
            conjectures_advisory,
        } => {
            let session = Session::new();
            let report = run_one_check(&session, &name, &params)?;
            emit_reports(cli.format, std::slice::from_ref(&report))?;
            Ok(to_exit(exit_code(
                std::slice::from_ref(&report),
                conjectures_advisory,
            )))
        }
        Command::Sweep {
            max_size,
            checks,
            conjectures_advisory,
        } => {
            let kinds = match checks {
                None => CheckKind::all().to_vec(),
                Some(list) => list
                    .split(',')
                    .map(|s| {
                        CheckKind::parse(s.trim())
                            .with_context(|| format!("unknown check '{s}'"))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            let (enum_limit, sym_limit) = match max_size {
                None => (DEFAULT_ENUMERATION_LIMIT, DEFAULT_SYMBOLIC_LIMIT),
                Some(s) => {
                    if s > DEFAULT_ENUMERATION_LIMIT || s > DEFAULT_SYMBOLIC_LIMIT {
                        eprintln!(
                            "warning: size {s} exceeds the calibrated budgets \
                             (enumeration {DEFAULT_ENUMERATION_LIMIT}, symbolic \
                             {DEFAULT_SYMBOLIC_LIMIT}); expect long runtimes"
                        );
                    }
                    (s, s)
                }
            };
            let session = Session::new();
            let reports = sweep(&session, enum_limit, sym_limit, &kinds)?;
            emit_reports(cli.format, &reports)?;
            let failures = reports.iter().filter(|r| !r.equal).count();
            eprintln!(
                "{} checks, {} mismatches",
                reports.len(),
                failures
            );
            Ok(to_exit(exit_code(&reports, conjectures_advisory)))
        }
    }
}

fn to_exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn stats_record(p: &LabelledPath, nvars: usize) -> Result<[String; 7]> {
    let join = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(",");
    Ok([
        join(&mut p.area_word().iter().map(|a| a.to_string())),
        join(&mut p.labels().iter().map(|w| w.to_string())),
        join(&mut p.decorations().iter().map(|d| d.to_string())),
        p.area().to_string(),
        p.dinv().to_string(),
        p.touch().to_string(),
        p.monomial(nvars)?.to_string(),
    ])
}

fn run_one_check(session: &Session, name: &str, params: &[String]) -> Result<CheckReport> {
    let int = |i: usize| -> Result<usize> {
        params
            .get(i)
            .with_context(|| format!("missing parameter {i}"))?
            .parse()
            .with_context(|| format!("parameter {i} must be an integer"))
    };
    let touch = |i: usize| -> Result<Touch> {
        parse_touch(params.get(i).with_context(|| format!("missing parameter {i}"))?)
    };
    let expect = |count: usize| -> Result<()> {
        if params.len() != count {
            bail!("check '{name}' takes {count} parameters, got {}", params.len());
        }
        Ok(())
    };
    let report = match name {
        "theta-en" => {
            expect(2)?;
            session.check_theta_en(int(0)?, int(1)?)?
        }
        "sf-identity" => {
            expect(4)?;
            session.check_sf_identity(int(0)?, int(1)?, int(2)?, int(3)?)?
        }
        "pushing" => {
            expect(4)?;
            session.check_pushing(int(0)?, int(1)?, int(2)?, int(3)?)?
        }
        "valley-delta" => {
            expect(3)?;
            session.check_valley_delta(int(0)?, int(1)?, touch(2)?)?
        }
        "generalised" => {
            expect(4)?;
            session.check_generalised(int(0)?, int(1)?, int(2)?, touch(3)?)?
        }
        "hperp-combinatorial" => {
            expect(4)?;
            session.check_hperp_combinatorial(int(0)?, int(1)?, int(2)?, int(3)?)?
        }
        other => bail!(
            "unknown check '{other}'; expected one of: {}",
            CheckKind::all().map(|k| k.name()).join(", ")
        ),
    };
    Ok(report)
}

fn emit_reports(format: Format, reports: &[CheckReport]) -> Result<()> {
    match format {
        Format::Json => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for r in reports {
                writeln!(lock, "{}", serde_json::to_string(r)?)?;
            }
        }
        Format::Table => {
            for r in reports {
                println!("{}", r.one_line());
            }
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(std::io::stdout());
            writer.write_record([
                "check",
                "classification",
                "m",
                "n",
                "k",
                "r",
                "max_label",
                "equal",
                "wall_ms",
                "paths_enumerated",
                "cache_hits",
                "lhs",
                "rhs",
            ])?;
            for r in reports {
                let opt = |v: &Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
                writer.write_record([
                    r.check.clone(),
                    format!("{:?}", r.classification).to_lowercase(),
                    opt(&r.params.m),
                    r.params.n.to_string(),
                    opt(&r.params.k),
                    r.params.r.clone().unwrap_or_default(),
                    opt(&r.params.max_label),
                    r.equal.to_string(),
                    r.wall_ms.to_string(),
                    r.paths_enumerated.to_string(),
                    r.cache_hits.to_string(),
                    r.lhs.clone(),
                    r.rhs.clone(),
                ])?;
            }
            writer.flush()?;
        }
    }
    Ok(())
}
