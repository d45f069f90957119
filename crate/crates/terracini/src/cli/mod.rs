//! Command-line front end.
//!
//! ```text
//! nd bounds   --scenario FILE
//! nd certify  --scenario FILE [--trials T] [--prime P] [--seed S]
//! nd sequence --scenario FILE
//! nd figure froberg   --n-min A --n-max B --out C [--svg D] [...]
//! nd figure fatpoints --n-min A --n-max B --out C [--svg D] [...]
//! nd figure scenario  --scenario FILE
//! ```
//!
//! Every run prints one JSON report to stdout; `out` (figures: the CSV) and
//! `svg` paths come from the scenario file or the flags. Exit status is 0
//! for certified or guaranteed outcomes, 3 when a criterion or certificate
//! stayed silent, and 1 for usage errors. `ND_MATRIX_CAP` overrides the
//! matrix-size cap.

pub mod figures;
pub mod plot;
pub mod report;
pub mod scenario;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::bounds::{self, BoundVerdict};
use crate::bundle::BundleFamily;
use crate::certify::{self, CertVerdict, ScanGrade};
use crate::error::{Error, Result};
use crate::sequences::{self, TraceDirection};

use figures::{FatPointsFigure, FigureRow, Fraction, FrobergFigure};
use report::{ArtifactInfo, BoundsOutcome, Outcome, Provenance, RunReport};
use scenario::{DirectionSpec, Mode, Scenario};

#[derive(Parser)]
#[command(
    name = "nd",
    version,
    about = "Nondefectivity bounds and Terracini rank certificates for unions of cones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form criteria for a scenario.
    Bounds {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Run rank certification (single type, all types of size r, or a
    /// prime-by-seed evidence scan) for a scenario.
    Certify {
        #[arg(long)]
        scenario: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Observe stationarity sequences for a scenario.
    Sequence {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Regenerate sweep figures as CSV with an optional SVG rendering.
    Figure {
        #[command(subcommand)]
        which: FigureCommand,
    },
}

#[derive(Args, Clone, Copy, Default)]
struct Overrides {
    /// Override the trial count from the scenario.
    #[arg(long)]
    trials: Option<u32>,
    /// Override the certification prime from the scenario.
    #[arg(long)]
    prime: Option<u64>,
    /// Override the base seed from the scenario.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum FigureCommand {
    /// Forms of two degrees, a fixed fraction in the lower degree.
    Froberg {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value = "0.2")]
        fraction: Fraction,
        #[arg(long, default_value_t = 5)]
        d1: u32,
        #[arg(long, default_value_t = 6)]
        d2: u32,
        /// Degree shift above the top generator degree.
        #[arg(long, default_value_t = 1)]
        shift: u32,
    },
    /// Fat points of two multiplicities, a fixed fraction in the higher one.
    Fatpoints {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value = "0.3")]
        fraction: Fraction,
        #[arg(long, default_value_t = 9)]
        degree: u32,
        #[arg(long, default_value_t = 4)]
        m1: u32,
        #[arg(long, default_value_t = 3)]
        m2: u32,
    },
    /// Drive a figure run from a scenario file (mode "figure").
    Scenario {
        #[arg(long)]
        scenario: PathBuf,
    },
}

/// Parse arguments, run, and return the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Bounds { scenario } => {
            let s = load_for(&scenario, &[Mode::Bounds])?;
            emit(execute(&s, Mode::Bounds)?, &s.out)
        }
        Command::Certify {
            scenario,
            overrides,
        } => {
            let mut s = load_for(&scenario, &[Mode::Certify, Mode::CertifyR])?;
            if let Some(p) = overrides.prime {
                s.prime = Some(scenario::PrimeSpec::One(p));
            }
            if let Some(t) = overrides.trials {
                s.trials = Some(t);
            }
            if let Some(seed) = overrides.seed {
                s.seed = Some(seed);
            }
            let mode = match s.mode {
                Some(Mode::CertifyR) => Mode::CertifyR,
                None if s.r.is_some() && s.alpha.is_none() => Mode::CertifyR,
                _ => Mode::Certify,
            };
            emit(execute(&s, mode)?, &s.out)
        }
        Command::Sequence { scenario } => {
            let s = load_for(&scenario, &[Mode::Sequence])?;
            emit(execute(&s, Mode::Sequence)?, &s.out)
        }
        Command::Figure { which } => match which {
            FigureCommand::Froberg {
                n_min,
                n_max,
                out,
                svg,
                fraction,
                d1,
                d2,
                shift,
            } => {
                let config = FrobergFigure {
                    n_min,
                    n_max,
                    d1,
                    d2,
                    shift,
                };
                let report = figure_froberg_report(config, fraction, &out, svg.as_deref(), None)?;
                emit(report, &None)
            }
            FigureCommand::Fatpoints {
                n_min,
                n_max,
                out,
                svg,
                fraction,
                degree,
                m1,
                m2,
            } => {
                let config = FatPointsFigure {
                    n_min,
                    n_max,
                    degree,
                    m1,
                    m2,
                };
                let report = figure_fatpoints_report(config, fraction, &out, svg.as_deref(), None)?;
                emit(report, &None)
            }
            FigureCommand::Scenario { scenario } => {
                let s = load_for(&scenario, &[Mode::Figure])?;
                emit(execute(&s, Mode::Figure)?, &None)
            }
        },
    }
}

fn load_for(path: &Path, allowed: &[Mode]) -> Result<Scenario> {
    let s = Scenario::load(path)?;
    if let Some(mode) = s.mode {
        if !allowed.contains(&mode) {
            return Err(Error::Scenario(format!(
                "at field 'mode': scenario declares {mode:?}, not usable with this subcommand"
            )));
        }
    }
    Ok(s)
}

/// Print the report to stdout; mirror it to `out` when given (figures write
/// their CSV there instead and never mirror).
fn emit(report: RunReport, out: &Option<PathBuf>) -> Result<i32> {
    let text = report.to_json();
    print!("{text}");
    if let Some(path) = out {
        if !matches!(report.mode, Mode::Figure) {
            std::fs::write(path, &text)?;
        }
    }
    Ok(report.exit_status)
}

/// Run one scenario under the given mode and assemble the report.
pub fn execute(scenario: &Scenario, mode: Mode) -> Result<RunReport> {
    match mode {
        Mode::Bounds => run_bounds(scenario),
        Mode::Certify => run_certify(scenario),
        Mode::CertifyR => run_certify_r(scenario),
        Mode::Sequence => run_sequence(scenario),
        Mode::Figure => run_figure(scenario),
    }
}

/// Scenario-file entry point: the mode comes from the file itself.
pub fn run_scenario_file(path: &Path) -> Result<RunReport> {
    let scenario = Scenario::load(path)?;
    let mode = scenario
        .mode
        .ok_or_else(|| Error::Scenario("field 'mode' is required here".into()))?;
    execute(&scenario, mode)
}

fn report_for(
    mode: Mode,
    scenario: Option<Scenario>,
    provenance: Provenance,
    outcome: Outcome,
    exit_status: i32,
) -> RunReport {
    RunReport {
        artifact: ArtifactInfo::current(),
        mode,
        scenario,
        provenance,
        outcome,
        exit_status,
    }
}

fn run_bounds(scenario: &Scenario) -> Result<RunReport> {
    let family = &scenario.family;
    let ranks = family.ranks()?;
    let ambient = num_bigint::BigUint::from(family.ambient_dim()?);
    let secant = bounds::secant_bounds(&ambient, ranks[0])?;
    let (outcome, exit) = match family {
        BundleFamily::Froberg { n, degrees, shift } => {
            let report = bounds::froberg_report(*n, degrees, *shift, &scenario.alpha_type()?)?;
            let exit = verdict_exit(report.report.verdict);
            (BoundsOutcome::Froberg { report, secant }, exit)
        }
        BundleFamily::FatPoints {
            n,
            degree,
            multiplicities,
        } => {
            let report =
                bounds::fatpoint_report(*n, *degree, multiplicities, &scenario.alpha_type()?)?;
            let exit = verdict_exit(report.report.verdict);
            (BoundsOutcome::Fatpoints { report, secant }, exit)
        }
        BundleFamily::Partition { n, order, parts } => {
            let partition = bounds::partition_bounds(*n, *order, parts)?;
            let criterion = match scenario.alpha {
                Some(_) => Some(bounds::nondefective_criterion(
                    &ranks,
                    &ambient,
                    &scenario.alpha_type()?,
                )?),
                None => None,
            };
            let exit = match &criterion {
                Some(c) => verdict_exit(c.verdict),
                None => match partition.r_nondef_max {
                    bounds::NondefBound::UpTo { .. } => 0,
                    bounds::NondefBound::Vacuous => 3,
                },
            };
            (
                BoundsOutcome::Partition {
                    bounds: partition,
                    criterion,
                    secant,
                },
                exit,
            )
        }
        BundleFamily::Moments { n, .. } => {
            let alpha = scenario.alpha_type()?;
            let r = alpha.entries[0];
            let s: u64 = alpha.entries.iter().skip(1).sum();
            let identifiable = bounds::mixture_identifiable(*n, r, s)?;
            let criterion = bounds::nondefective_criterion(&ranks, &ambient, &alpha)?;
            let exit = if identifiable { 0 } else { 3 };
            (
                BoundsOutcome::Moments {
                    identifiable,
                    criterion,
                    secant,
                },
                exit,
            )
        }
    };
    Ok(report_for(
        Mode::Bounds,
        Some(scenario.clone()),
        Provenance::default(),
        Outcome::Bounds(outcome),
        exit,
    ))
}

fn verdict_exit(verdict: BoundVerdict) -> i32 {
    match verdict {
        BoundVerdict::GuaranteedNondefective | BoundVerdict::GuaranteedFilling => 0,
        BoundVerdict::CriterionSilent => 3,
    }
}

fn run_certify(scenario: &Scenario) -> Result<RunReport> {
    let alpha = scenario.alpha_type()?;
    let primes = scenario.primes();
    let seed = scenario.seed_or_default();
    // A prime or seed grid means an evidence scan instead of a single run.
    if primes.len() > 1 || scenario.seeds.is_some() {
        let seeds = scenario.seeds.clone().unwrap_or_else(|| vec![seed]);
        let scan = certify::defect_evidence_scan(&scenario.family, &alpha, &primes, &seeds)?;
        let exit = match scan.grade {
            ScanGrade::UpgradedCertificate => 0,
            _ => 3,
        };
        let provenance = Provenance {
            primes: Some(primes),
            seeds: Some(seeds),
            trials: Some(1),
        };
        return Ok(report_for(
            Mode::Certify,
            Some(scenario.clone()),
            provenance,
            Outcome::Scan(scan),
            exit,
        ));
    }
    let trials = scenario.trials_or_default();
    let report = certify::certify_alpha(&scenario.family, &alpha, primes[0], trials, seed)?;
    let exit = match report.verdict {
        CertVerdict::Inconclusive => 3,
        _ => 0,
    };
    let provenance = Provenance {
        primes: Some(primes),
        seeds: Some(vec![seed]),
        trials: Some(trials),
    };
    Ok(report_for(
        Mode::Certify,
        Some(scenario.clone()),
        provenance,
        Outcome::Certify(report),
        exit,
    ))
}

fn run_certify_r(scenario: &Scenario) -> Result<RunReport> {
    let r = scenario
        .r
        .ok_or_else(|| Error::Scenario("field 'r' is required for certify_r".into()))?;
    let prime = scenario.single_prime()?;
    let trials = scenario.trials_or_default();
    let seed = scenario.seed_or_default();
    let summary = certify::certify_r(&scenario.family, r, prime, trials, seed)?;
    let exit = if summary.r_nondefective { 0 } else { 3 };
    let provenance = Provenance {
        primes: Some(vec![prime]),
        seeds: Some(vec![seed]),
        trials: Some(trials),
    };
    Ok(report_for(
        Mode::CertifyR,
        Some(scenario.clone()),
        provenance,
        Outcome::CertifyR(summary),
        exit,
    ))
}

fn run_sequence(scenario: &Scenario) -> Result<RunReport> {
    let alpha = scenario.alpha_type()?;
    let probe = scenario
        .probe
        .ok_or_else(|| Error::Scenario("field 'probe' is required for sequence mode".into()))?;
    let prime = scenario.single_prime()?;
    let seed = scenario.seed_or_default();
    let provenance = Provenance {
        primes: Some(vec![prime]),
        seeds: Some(vec![seed]),
        trials: None,
    };
    let direction = match &scenario.direction {
        None => TraceDirection::Diagonal,
        Some(DirectionSpec::Index(j)) => TraceDirection::Component(*j),
        Some(DirectionSpec::Named(name)) if name == "diagonal" => TraceDirection::Diagonal,
        Some(DirectionSpec::Named(other)) => {
            return Err(Error::Scenario(format!(
                "at field 'direction': '{other}' is not a component index or \"diagonal\""
            )));
        }
    };
    match scenario.steps {
        Some(steps) => {
            let trace = sequences::trace(
                &scenario.family,
                &alpha,
                direction,
                probe,
                steps,
                prime,
                seed,
            )?;
            Ok(report_for(
                Mode::Sequence,
                Some(scenario.clone()),
                provenance,
                Outcome::Trace(trace),
                0,
            ))
        }
        None => {
            let check = sequences::diagonal_check(&scenario.family, &alpha, probe, prime, seed)?;
            let exit = if check.consequence_holds { 0 } else { 3 };
            Ok(report_for(
                Mode::Sequence,
                Some(scenario.clone()),
                provenance,
                Outcome::DiagonalCheck(check),
                exit,
            ))
        }
    }
}

fn run_figure(scenario: &Scenario) -> Result<RunReport> {
    let sweep = scenario
        .sweep
        .ok_or_else(|| Error::Scenario("field 'sweep' is required for figure mode".into()))?;
    let out = scenario
        .out
        .clone()
        .ok_or_else(|| Error::Scenario("field 'out' is required for figure mode".into()))?;
    let svg = scenario.svg.as_deref();
    match &scenario.family {
        BundleFamily::Froberg { degrees, shift, .. } => {
            if degrees.len() != 2 {
                return Err(Error::Scenario(
                    "figure sweeps need exactly two generator degrees".into(),
                ));
            }
            let config = FrobergFigure {
                n_min: sweep.n_min,
                n_max: sweep.n_max,
                d1: degrees[0],
                d2: degrees[1],
                shift: *shift,
            };
            let fraction = scenario.fraction.unwrap_or(Fraction { num: 1, den: 5 });
            figure_froberg_report(config, fraction, &out, svg, Some(scenario.clone()))
        }
        BundleFamily::FatPoints {
            degree,
            multiplicities,
            ..
        } => {
            if multiplicities.len() != 2 {
                return Err(Error::Scenario(
                    "figure sweeps need exactly two multiplicities".into(),
                ));
            }
            let config = FatPointsFigure {
                n_min: sweep.n_min,
                n_max: sweep.n_max,
                degree: *degree,
                m1: multiplicities[0],
                m2: multiplicities[1],
            };
            let fraction = scenario.fraction.unwrap_or(Fraction { num: 3, den: 10 });
            figure_fatpoints_report(config, fraction, &out, svg, Some(scenario.clone()))
        }
        other => Err(Error::Scenario(format!(
            "figure mode supports froberg and fatpoints families, not {}",
            other.name()
        ))),
    }
}

fn write_figure_outputs(rows: &[FigureRow], csv_path: &Path, svg: Option<&Path>) -> Result<()> {
    std::fs::write(csv_path, figures::rows_to_csv(rows))?;
    if let Some(svg_path) = svg {
        plot::emit_plot(csv_path, svg_path)?;
    }
    Ok(())
}

fn figure_froberg_report(
    config: FrobergFigure,
    fraction: Fraction,
    out: &Path,
    svg: Option<&Path>,
    scenario: Option<Scenario>,
) -> Result<RunReport> {
    let rows = figures::figure_froberg(&config, fraction)?;
    write_figure_outputs(&rows, out, svg)?;
    Ok(report_for(
        Mode::Figure,
        scenario,
        Provenance::default(),
        Outcome::FigureFroberg {
            config,
            fraction,
            csv: out.display().to_string(),
            svg: svg.map(|p| p.display().to_string()),
            rows,
        },
        0,
    ))
}

fn figure_fatpoints_report(
    config: FatPointsFigure,
    fraction: Fraction,
    out: &Path,
    svg: Option<&Path>,
    scenario: Option<Scenario>,
) -> Result<RunReport> {
    let rows = figures::figure_fatpoints(&config, fraction)?;
    write_figure_outputs(&rows, out, svg)?;
    Ok(report_for(
        Mode::Figure,
        scenario,
        Provenance::default(),
        Outcome::FigureFatpoints {
            config,
            fraction,
            csv: out.display().to_string(),
            svg: svg.map(|p| p.display().to_string()),
            rows,
        },
        0,
    ))
}
