use std::path::{Path, PathBuf};

use clap::Args;
use ctregion::{ChannelConfig, TrafficLoad};
use serde::Deserialize;

use crate::Failure;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_GRID: usize = 2001;
pub const DEFAULT_BBOX_SCALE: f64 = 4.0;

/// Scenario flags shared by every subcommand.
#[derive(Args, Debug, Default, Clone)]
pub struct ScenarioArgs {
    /// Receive SNR of user 1 (linear unless --db)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub p1: Option<f64>,

    /// Receive SNR of user 2 (linear unless --db)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub p2: Option<f64>,

    /// Read --p1 and --p2 in decibels
    #[arg(long, global = true)]
    pub db: bool,

    /// Bits per source unit for user 1
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tau1: Option<f64>,

    /// Bits per source unit for user 2
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tau2: Option<f64>,

    /// Membership tolerance [default: 1e-9]
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Oracle grid points per axis [default: 2001]
    #[arg(long, global = true)]
    pub grid: Option<usize>,

    /// Plot box as a multiple of the minimax completion time [default: 4]
    #[arg(long, global = true)]
    pub bbox_scale: Option<f64>,

    /// Emit JSON (the default)
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV
    #[arg(long, global = true)]
    pub csv: bool,

    /// TOML file with the same keys as the flags; flags win
    #[arg(long, global = true, value_name = "PATH")]
    pub scenario: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ScenarioFile {
    p1: Option<f64>,
    p2: Option<f64>,
    db: Option<bool>,
    tau1: Option<f64>,
    tau2: Option<f64>,
    tol: Option<f64>,
    grid: Option<usize>,
    #[serde(alias = "bbox_scale")]
    bbox_scale: Option<f64>,
    json: Option<bool>,
    csv: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub cfg: ChannelConfig<f64>,
    pub load: TrafficLoad<f64>,
    pub tol: f64,
    pub grid: usize,
    pub bbox_scale: f64,
    pub format: Format,
}

fn read_file(path: &Path) -> Result<ScenarioFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read scenario {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::invalid(format!("bad scenario {}: {e}", path.display())))
}

fn required(flag: Option<f64>, file: Option<f64>, name: &str) -> Result<f64, Failure> {
    flag.or(file)
        .ok_or_else(|| Failure::invalid(format!("missing --{name} (flag or scenario key)")))
}

impl Scenario {
    pub fn resolve(args: &ScenarioArgs) -> Result<Self, Failure> {
        let file = match &args.scenario {
            Some(path) => read_file(path)?,
            None => ScenarioFile::default(),
        };
        let p1 = required(args.p1, file.p1, "p1")?;
        let p2 = required(args.p2, file.p2, "p2")?;
        let tau1 = required(args.tau1, file.tau1, "tau1")?;
        let tau2 = required(args.tau2, file.tau2, "tau2")?;
        let db = args.db || file.db.unwrap_or(false);
        let cfg = if db {
            ChannelConfig::from_db(p1, p2)
        } else {
            ChannelConfig::new(p1, p2)
        }
        .map_err(Failure::from)?;
        let load = TrafficLoad::new(tau1, tau2).map_err(Failure::from)?;

        let tol = args.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !tol.is_finite() || tol < 0.0 {
            return Err(Failure::invalid(format!("invalid tol: must be finite and >= 0 (got {tol})")));
        }
        let grid = args.grid.or(file.grid).unwrap_or(DEFAULT_GRID);
        if grid < ctregion::oracle::MIN_RESOLUTION {
            return Err(Failure::invalid(format!(
                "invalid grid: need at least {} points per axis (got {grid})",
                ctregion::oracle::MIN_RESOLUTION
            )));
        }
        let bbox_scale = args.bbox_scale.or(file.bbox_scale).unwrap_or(DEFAULT_BBOX_SCALE);
        if !bbox_scale.is_finite() || bbox_scale < 1.0 {
            return Err(Failure::invalid(format!(
                "invalid bbox-scale: must be finite and >= 1 (got {bbox_scale})"
            )));
        }
        let csv = if args.csv || args.json {
            args.csv
        } else {
            file.csv.unwrap_or(false) && !file.json.unwrap_or(false)
        };
        Ok(Scenario {
            cfg,
            load,
            tol,
            grid,
            bbox_scale,
            format: if csv { Format::Csv } else { Format::Json },
        })
    }
}
