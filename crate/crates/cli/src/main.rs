mod output;
mod scenario;

use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use ctregion::{
    build_region, ct_contains, ct_slacks, minimax, minimize_weighted_sum, oracle_minimax, oracle_weighted_min,
    outer_bound, synthesize, validate, CompletionTimePair, Error, GridSpec, OracleReport, User,
};

use output::*;
use scenario::{Format, Scenario, ScenarioArgs};

#[derive(Parser, Debug)]
#[command(name = "ctregion", version)]
#[command(about = "Completion-time region of the two-user Gaussian multiple-access channel")]
struct Cli {
    #[command(flatten)]
    scenario: ScenarioArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Region pieces, vertices and the clipped boundary polyline
    Region,
    /// Test whether (d1, d2) is achievable
    Check {
        d1: f64,
        d2: f64,
    },
    /// Closed-form weighted-sum or minimax optimum
    #[command(group(ArgGroup::new("objective").required(true).args(["weight", "minimax"])))]
    Minimize {
        /// Weight w on d1; the objective is w d1 + (1 - w) d2
        #[arg(long)]
        weight: Option<f64>,

        /// Minimize max(d1, d2)
        #[arg(long)]
        minimax: bool,

        /// Also run the grid oracle and check that it brackets the optimum
        #[arg(long)]
        verify: bool,
    },
    /// Two-phase time-sharing schedule achieving (d1, d2)
    Schedule {
        d1: f64,
        d2: f64,
    },
}

/// An error message plus the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput { .. } | Error::InvalidUser(_) | Error::ZeroDivisor { .. } => 2,
            Error::Infeasible { .. } | Error::MixedSubRegions => 1,
            Error::EmptyFeasibleGrid { .. } | Error::Inconsistent(_) => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("write failed: {e}"),
        }
    }
}

/// Absolute slack allowed when checking the oracle bracket.
const BRACKET_SLACK: f64 = 1e-12;

fn target(d1: f64, d2: f64) -> Result<CompletionTimePair<f64>, Failure> {
    CompletionTimePair::new(d1, d2).map_err(Failure::from)
}

fn cmd_region(s: &Scenario) -> Result<u8, Failure> {
    let region = build_region(&s.cfg, &s.load);
    let m = region.minimax_point.x;
    let bbox = BboxOut {
        d1_max: s.bbox_scale * m,
        d2_max: s.bbox_scale * m,
    };
    let boundary: Vec<PairOut> = region
        .boundary_polyline(bbox.d1_max, bbox.d2_max)
        .into_iter()
        .map(PairOut::from)
        .collect();
    match s.format {
        Format::Csv => print_csv(boundary.iter().map(|p| PairOut {
            d1: sig12(p.d1),
            d2: sig12(p.d2),
        }))?,
        Format::Json => print_json(&RegionOut {
            schema_version: SCHEMA_VERSION,
            case: region.case.roman(),
            pieces: region
                .pieces
                .iter()
                .map(|rp| PieceOut::new(Some(rp.sub_region.index()), &rp.piece))
                .collect(),
            outer_bound: PieceOut::new(None, &outer_bound(&s.cfg, &s.load)),
            minimax: MinimaxOut { value: m, d1: m, d2: m },
            bbox,
            boundary,
        })?,
    }
    Ok(0)
}

fn cmd_check(s: &Scenario, d1: f64, d2: f64) -> Result<u8, Failure> {
    let d = target(d1, d2)?;
    let slacks = ct_slacks(&s.cfg, &s.load, &d);
    let member = ct_contains(&s.cfg, &s.load, &d, s.tol);
    let binding = slacks.binding().name();
    match s.format {
        Format::Csv => print_csv([CheckRow {
            d1: sig12(d1),
            d2: sig12(d2),
            member,
            binding,
            slack_user1: sig12(slacks.user1),
            slack_user2: sig12(slacks.user2),
            slack_sum: sig12(slacks.sum),
        }])?,
        Format::Json => print_json(&CheckOut {
            schema_version: SCHEMA_VERSION,
            d1,
            d2,
            member,
            sub_region: d.branch().index(),
            binding,
            slacks: SlacksOut {
                user1: slacks.user1,
                user2: slacks.user2,
                sum: slacks.sum,
            },
        })?,
    }
    Ok(if member { 0 } else { 1 })
}

fn verification(report: OracleReport<f64>, value: f64, grid: usize) -> VerificationOut {
    let slack = BRACKET_SLACK * value.abs().max(1.0);
    VerificationOut {
        oracle_value: report.optimum_value,
        oracle_d1: report.optimizer.x,
        oracle_d2: report.optimizer.y,
        gap_bound: report.certified_gap_bound,
        grid,
        bracketed: report.brackets(value, slack),
    }
}

fn cmd_minimize(s: &Scenario, weight: Option<f64>, verify: bool) -> Result<u8, Failure> {
    let spec = || GridSpec::default_for(&s.cfg, &s.load, s.grid).map_err(Failure::from);
    let record = match weight {
        Some(w) => {
            let sol = minimize_weighted_sum(&s.cfg, &s.load, w)?;
            let verification = if verify {
                let report = oracle_weighted_min(&s.cfg, &s.load, w, &spec()?)?;
                Some(verification(report, sol.optimal_value, s.grid))
            } else {
                None
            };
            MinimizeOut {
                schema_version: SCHEMA_VERSION,
                objective: "weighted_sum",
                weight: Some(w),
                case: sol.case.roman(),
                value: sol.optimal_value,
                d1: sol.optimizer_point.d1,
                d2: sol.optimizer_point.d2,
                cell: sol.cell(),
                tie: sol.tie,
                verification,
            }
        }
        None => {
            let sol = minimax(&s.cfg, &s.load);
            let verification = if verify {
                let report = oracle_minimax(&s.cfg, &s.load, &spec()?)?;
                Some(verification(report, sol.value, s.grid))
            } else {
                None
            };
            MinimizeOut {
                schema_version: SCHEMA_VERSION,
                objective: "minimax",
                weight: None,
                case: sol.case.roman(),
                value: sol.value,
                d1: sol.point.d1,
                d2: sol.point.d2,
                cell: format!("Case {}, {}", sol.case.roman(), ctregion::completion::LABEL_C_BAR),
                tie: false,
                verification,
            }
        }
    };
    match s.format {
        Format::Csv => {
            let mut row = MinimizeRow::from(&record);
            for x in [&mut row.value, &mut row.d1, &mut row.d2] {
                *x = sig12(*x);
            }
            row.oracle_value = row.oracle_value.map(sig12);
            row.gap_bound = row.gap_bound.map(sig12);
            print_csv([row])?
        }
        Format::Json => print_json(&record)?,
    }
    Ok(minimize_exit_code(&record))
}

fn minimize_exit_code(record: &MinimizeOut) -> u8 {
    if record.verification.is_some_and(|v| !v.bracketed) {
        3
    } else {
        0
    }
}

fn cmd_schedule(s: &Scenario, d1: f64, d2: f64) -> Result<u8, Failure> {
    let d = target(d1, d2)?;
    let sched = synthesize(&s.cfg, &s.load, d, s.tol)?;
    let report = validate(&s.cfg, &s.load, &sched, s.tol);
    let phases: Vec<PhaseOut> = sched
        .phases
        .iter()
        .map(|p| PhaseOut {
            duration: p.duration,
            r1: p.rates.r1,
            r2: p.rates.r2,
            active: p.active.users().into_iter().map(User::index).collect(),
        })
        .collect();
    match s.format {
        Format::Csv => print_csv(phases.iter().map(PhaseRow::from))?,
        Format::Json => print_json(&ScheduleOut {
            schema_version: SCHEMA_VERSION,
            phases,
            achieved: PairOut {
                d1: sched.achieved.d1,
                d2: sched.achieved.d2,
            },
            validation: if report.passed() { "pass" } else { "fail" },
            violations: report.violations.iter().map(|v| v.to_string()).collect(),
        })?,
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let s = Scenario::resolve(&cli.scenario)?;
    match &cli.command {
        Command::Region => cmd_region(&s),
        Command::Check { d1, d2 } => cmd_check(&s, *d1, *d2),
        Command::Minimize { weight, verify, .. } => cmd_minimize(&s, *weight, *verify),
        Command::Schedule { d1, d2 } => cmd_schedule(&s, *d1, *d2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ctregion: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
