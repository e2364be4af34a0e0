//! Thin command-line front end over the `bealg` library. Every subcommand
//! loads its inputs from JSON files, calls the corresponding library
//! routine, and maps the outcome to an exit code:
//!
//! * 0: the checked property holds (or the command is descriptive)
//! * 1: a violation or counterexample was found
//! * 2: bad input (unreadable files, malformed tables, out-of-range
//!   parameters, unmet preconditions)
//! * 3: independent decision methods disagreed

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bealg::algebra::AlgebraError;
use bealg::campaign::{run_campaign, CampaignConfig};
use bealg::ek::{
    is_ek_ideal_closed_form, is_ek_ideal_definition, is_ek_ideal_levels,
    is_ek_ideal_transitive_form, EkMethod, EkParams, EkVerdict,
};
use bealg::enumerate::{count_algebras, for_each_algebra, EnumerationConfig};
use bealg::ideal::{enumerate_ideals, is_ideal_def, is_ideal_lemma};
use bealg::io::{
    load_algebra, load_campaign_config, load_n_function, render_json, save_algebra, write_json,
    AlgebraFile, FileError,
};
use bealg::nfun::{cut, is_n_ideal};
use bealg::rat::Rat;
use bealg::subset::Subset;
use bealg::BEAlgebra;

#[derive(Parser)]
#[command(
    name = "bealg",
    version,
    about = "Decision procedures and brute-force verification for finite BE-algebras and N-structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a property of one input, exiting 1 on a violation
    #[command(subcommand)]
    Check(CheckCommand),
    /// List every ideal of an algebra
    Ideals {
        /// Algebra file
        #[arg(long)]
        input: PathBuf,
    },
    /// Show the critical-threshold grid and the cut at every threshold
    Cuts {
        /// Algebra file
        #[arg(long)]
        input: PathBuf,
        /// N-function file
        #[arg(long)]
        function: PathBuf,
        /// Include the breakpoints induced by this parameter
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Enumerate the BE-algebras of a given size
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Keep only transitive algebras
        #[arg(long)]
        transitive: bool,
        /// Keep only self-distributive algebras
        #[arg(long)]
        self_distributive: bool,
        /// One representative per isomorphism class
        #[arg(long)]
        up_to_iso: bool,
        /// Print the count and nothing else
        #[arg(long)]
        count_only: bool,
        /// Write each algebra to this directory as JSON instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check every theorem over the enumerated universe
    VerifyTheorems {
        /// Campaign configuration file; defaults cover sizes 1..=5
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (affects speed only, never report bytes)
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Check the four BE-algebra axioms
    Algebra {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check a labeled subset against both ideal formulations
    Ideal {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated element labels, e.g. "1,a,b"
        #[arg(long)]
        subset: String,
    },
    /// Check an N-function for the N-ideal property
    NIdeal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        function: PathBuf,
    },
    /// Check an N-function for the conditional-point ideal property at k
    EkIdeal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        function: PathBuf,
        /// Parameter in (-1, 0], e.g. "-1/2" or "-0.5"
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Write a JSON record of every method's verdict here
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Definition sweep over the threshold grid
    Def,
    /// Closed-form inequalities
    Th4,
    /// Transitive-form inequalities (requires transitivity)
    Th6,
    /// Level-set sweep (requires transitivity)
    Levels,
    /// Every method applicable to the input
    All,
}

fn main() -> ExitCode {
    // enumerate and verify-theorems stream large output that is
    // routinely piped to head or jq; die quietly on a closed pipe like
    // other stream tools instead of panicking mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Check(check) => run_check(check),
        Command::Ideals { input } => {
            let alg = load_algebra(&input)?;
            let family = enumerate_ideals(&alg)?;
            println!("{} ideals", family.len());
            for s in family.subsets() {
                println!("{}", s.labels(&alg));
            }
            Ok(0)
        }
        Command::Cuts { input, function, k } => run_cuts(&input, &function, k.as_deref()),
        Command::Enumerate {
            size,
            transitive,
            self_distributive,
            up_to_iso,
            count_only,
            out,
        } => {
            let cfg = EnumerationConfig {
                size,
                transitive_only: transitive,
                self_distributive_only: self_distributive,
                up_to_iso,
            };
            run_enumerate(&cfg, count_only, out.as_deref())
        }
        Command::VerifyTheorems {
            config,
            out,
            workers,
        } => run_verify(config.as_deref(), out.as_deref(), workers),
    }
}

fn run_check(check: CheckCommand) -> Result<u8, Box<dyn std::error::Error>> {
    match check {
        CheckCommand::Algebra { input } => match load_algebra(&input) {
            Ok(alg) => {
                println!(
                    "BE-algebra on {} elements: {}",
                    alg.size(),
                    alg.names().join(", ")
                );
                let sd = alg.is_self_distributive();
                let tr = alg.is_transitive();
                println!("self-distributive: {}", verdict_note(&sd, &alg));
                println!("transitive: {}", verdict_note(&tr, &alg));
                Ok(0)
            }
            // A table that parses but breaks an axiom is a failed check,
            // not bad input.
            Err(FileError::Algebra(AlgebraError::Axioms(report))) => {
                println!("not a BE-algebra");
                eprintln!("{report}");
                Ok(1)
            }
            Err(e) => Err(e.into()),
        },
        CheckCommand::Ideal { input, subset } => {
            let alg = load_algebra(&input)?;
            let s = Subset::from_labels(&alg, &subset)?;
            let d = is_ideal_def(&alg, &s)?;
            let l = is_ideal_lemma(&alg, &s)?;
            if d.holds != l.holds {
                println!(
                    "method disagreement: definition says {}, lemma form says {}",
                    d.holds, l.holds
                );
                for w in d.witness.iter().chain(l.witness.iter()) {
                    eprintln!("witness: {}", w.describe(&alg));
                }
                return Ok(3);
            }
            if d.holds {
                println!("{} is an ideal", s.labels(&alg));
                Ok(0)
            } else {
                println!("{} is not an ideal", s.labels(&alg));
                if let Some(w) = &d.witness {
                    eprintln!("witness: {}", w.describe(&alg));
                }
                Ok(1)
            }
        }
        CheckCommand::NIdeal { input, function } => {
            let alg = load_algebra(&input)?;
            let f = load_n_function(&function, &alg)?;
            let v = is_n_ideal(&alg, &f)?;
            if v.holds {
                println!("N-ideal");
                Ok(0)
            } else {
                println!("not an N-ideal");
                if let Some(w) = &v.witness {
                    eprintln!(
                        "witness: cut at t = {} is {}, where {}",
                        w.t,
                        w.cut.labels(&alg),
                        w.violation.describe(&alg)
                    );
                }
                Ok(1)
            }
        }
        CheckCommand::EkIdeal {
            input,
            function,
            k,
            method,
            report,
        } => {
            let alg = load_algebra(&input)?;
            let f = load_n_function(&function, &alg)?;
            let params = EkParams::new(Rat::parse(&k).map_err(|e| format!("--k: {e}"))?)?;
            run_ek_check(&alg, &f, &params, method, report.as_deref())
        }
    }
}

fn verdict_note(v: &bealg::Verdict<[usize; 3]>, alg: &BEAlgebra) -> String {
    match &v.witness {
        None => "yes".to_string(),
        Some(w) => format!("no (witness {})", alg.label_triple(*w)),
    }
}

fn run_ek_check(
    alg: &BEAlgebra,
    f: &bealg::NFunction,
    params: &EkParams,
    method: MethodArg,
    report: Option<&Path>,
) -> Result<u8, Box<dyn std::error::Error>> {
    let transitive = alg.is_transitive().holds;
    let mut verdicts: Vec<EkVerdict> = Vec::new();
    let mut skipped: Vec<EkMethod> = Vec::new();

    let wants = |m: MethodArg| method == m || method == MethodArg::All;
    if wants(MethodArg::Def) {
        verdicts.push(is_ek_ideal_definition(alg, f, params)?);
    }
    if wants(MethodArg::Th4) {
        verdicts.push(is_ek_ideal_closed_form(alg, f, params)?);
    }
    // Explicitly requested transitive-only methods propagate their
    // precondition error (exit 2); under --method all they are skipped
    // with a note instead.
    if method == MethodArg::Th6 || (method == MethodArg::All && transitive) {
        verdicts.push(is_ek_ideal_transitive_form(alg, f, params)?);
    } else if method == MethodArg::All {
        skipped.push(EkMethod::TransitiveForm);
    }
    if method == MethodArg::Levels || (method == MethodArg::All && transitive) {
        verdicts.push(is_ek_ideal_levels(alg, f, params)?);
    } else if method == MethodArg::All {
        skipped.push(EkMethod::LevelSets);
    }

    for v in &verdicts {
        println!(
            "{}: {}",
            v.method,
            if v.holds {
                "conditional-point ideal"
            } else {
                "not a conditional-point ideal"
            }
        );
        if let Some(w) = &v.witness {
            eprintln!("{} witness: {}", v.method, w.describe(alg));
        }
    }
    for m in &skipped {
        println!("{m}: skipped (algebra is not transitive)");
    }

    let agree = verdicts.windows(2).all(|w| w[0].holds == w[1].holds);
    if let Some(path) = report {
        let record = serde_json::json!({
            "k": params.k(),
            "beta": params.beta(),
            "transitive": transitive,
            "verdicts": verdicts,
            "skipped": skipped,
            "agree": agree,
        });
        write_json(path, &record)?;
    }

    if !agree {
        println!("methods disagree");
        Ok(3)
    } else if verdicts.iter().all(|v| v.holds) {
        Ok(0)
    } else {
        Ok(1)
    }
}

fn run_cuts(
    input: &Path,
    function: &Path,
    k: Option<&str>,
) -> Result<u8, Box<dyn std::error::Error>> {
    let alg = load_algebra(input)?;
    let f = load_n_function(function, &alg)?;
    let k = k
        .map(|s| Rat::parse(s).map_err(|e| format!("--k: {e}")))
        .transpose()?;
    let grid = bealg::critical_thresholds(&f, k.as_ref())?;

    let values: Vec<String> = f
        .labeled(&alg)
        .iter()
        .map(|(label, v)| format!("f({label}) = {v}"))
        .collect();
    println!("{}", values.join(", "));
    let described: Vec<String> = grid
        .breakpoints()
        .iter()
        .map(|b| {
            let sources: Vec<String> = b.sources.iter().map(|s| format!("{s}")).collect();
            format!("{} ({})", b.value, sources.join("+"))
        })
        .collect();
    println!("breakpoints: {}", described.join(", "));
    for t in grid.point_thresholds() {
        let c = cut(&f, &t)?;
        if c.is_empty() {
            println!("t = {t}: C = {{}} (empty)");
        } else {
            let v = is_ideal_def(&alg, &c)?;
            println!(
                "t = {t}: C = {} ({})",
                c.labels(&alg),
                if v.holds { "ideal" } else { "not an ideal" }
            );
        }
    }
    Ok(0)
}

fn run_enumerate(
    cfg: &EnumerationConfig,
    count_only: bool,
    out: Option<&Path>,
) -> Result<u8, Box<dyn std::error::Error>> {
    if count_only {
        println!("{}", count_algebras(cfg)?);
        return Ok(0);
    }
    let mut written = 0u64;
    let mut failure: Option<FileError> = None;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        // Width 4 keeps names sorted through size 5 (48,173 algebras).
        for_each_algebra(cfg, |alg| {
            let path = dir.join(format!("algebra_{written:04}.json"));
            match save_algebra(&path, alg) {
                Ok(()) => {
                    written += 1;
                    std::ops::ControlFlow::Continue(())
                }
                Err(e) => {
                    failure = Some(e);
                    std::ops::ControlFlow::Break(())
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e.into());
        }
        println!("wrote {written} algebras to {}", dir.display());
    } else {
        for_each_algebra(cfg, |alg| {
            written += 1;
            println!(
                "{}",
                render_json(&AlgebraFile::from_algebra(alg)).trim_end()
            );
            std::ops::ControlFlow::Continue(())
        })?;
        println!("{written} algebras");
    }
    Ok(0)
}

fn run_verify(
    config: Option<&Path>,
    out: Option<&Path>,
    workers: Option<usize>,
) -> Result<u8, Box<dyn std::error::Error>> {
    let cfg = match config {
        Some(path) => load_campaign_config(path)?,
        None => CampaignConfig::default(),
    };
    let report = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(|| run_campaign(&cfg)),
        None => run_campaign(&cfg),
    }?;

    // The JSON report owns stdout when no --out is given; the human
    // summary then moves to stderr so piping stays clean.
    let mut summary: Box<dyn std::io::Write> = if out.is_some() {
        Box::new(std::io::stdout())
    } else {
        Box::new(std::io::stderr())
    };
    for (size, s) in &report.universe {
        writeln!(
            summary,
            "size {size}: {} labeled, {} canonical, {} transitive, {} self-distributive ({})",
            s.labeled, s.canonical, s.transitive, s.self_distributive, s.mode
        )?;
    }
    for (name, t) in &report.checks {
        writeln!(
            summary,
            "{name}: {} instances, {} passes, {} vacuous, {} violations",
            t.instances, t.passes, t.vacuous, t.violations
        )?;
    }
    writeln!(summary, "findings: {}", report.findings.len())?;
    for f in &report.findings {
        writeln!(summary, "  [{}] {}", f.kind, f.detail)?;
    }
    writeln!(
        summary,
        "total violations: {} ({} from method disagreements)",
        report.total_violations(),
        report.equivalence_violations()
    )?;

    match out {
        Some(path) => write_json(path, &report)?,
        None => print!("{}", render_json(&report)),
    }
    Ok(u8::try_from(report.exit_code()).expect("exit codes are 0..=3"))
}
