use std::path::PathBuf;

use clap::Parser;
use serde::{Deserialize, Serialize};

pub const COMMANDS: &[&str] = &[
    "hh",
    "hkr-check",
    "cohomology",
    "chern",
    "todd",
    "atiyah-check",
    "todd-annihilation",
    "l-adjoint",
    "rr-verify",
    "coefficients",
];

/// Hard limits on the affine computations.
pub const MAX_NVARS: usize = 4;
pub const MAX_LENGTH: usize = 6;
pub const MAX_DEGREE: i64 = 8;
pub const MAX_WEIGHT: i64 = 3;
pub const MAX_ORDER: usize = 40;
pub const MAX_WINDOW: i64 = 64;

#[derive(Parser, Debug, Default)]
#[command(
    name = "hochrr",
    version,
    about = "Exact Hochschild, Atiyah-class and Riemann-Roch computations"
)]
pub struct Args {
    /// One of: hh, hkr-check, cohomology, chern, todd, atiyah-check,
    /// todd-annihilation, l-adjoint, rr-verify, coefficients
    pub command: Option<String>,
    /// JSON file with the same fields as the flags; flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// P1, P2, P3, P1xP1, ...
    #[arg(long)]
    pub variety: Option<String>,
    /// Sheaf expression such as "O(3)", "T(-1)" or "wedge^2 T"; repeatable
    #[arg(long)]
    pub sheaf: Vec<String>,
    /// Number of polynomial variables for hh and hkr-check
    #[arg(long)]
    pub nvars: Option<usize>,
    /// Largest tensor length
    #[arg(long)]
    pub max_length: Option<usize>,
    /// Largest internal polynomial degree
    #[arg(long)]
    pub max_degree: Option<i64>,
    /// hh scans weights in [-1, weight_max]^n
    #[arg(long)]
    pub weight_max: Option<i64>,
    /// l or t
    #[arg(long)]
    pub which: Option<String>,
    /// Highest coefficient index
    #[arg(long)]
    pub order: Option<usize>,
    /// Cap on the cohomology weight window radius
    #[arg(long)]
    pub max_window: Option<i64>,
    /// Emit a JSON report
    #[arg(long)]
    pub json: bool,
}

/// One job, from the command line, a config file or both.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JobConfig {
    pub command: Option<String>,
    pub variety: Option<String>,
    pub sheaf: Vec<String>,
    pub nvars: Option<usize>,
    pub max_length: Option<usize>,
    pub max_degree: Option<i64>,
    pub weight_max: Option<i64>,
    pub which: Option<String>,
    pub order: Option<usize>,
    pub max_window: Option<i64>,
    pub json: bool,
}

impl JobConfig {
    pub fn from_args(args: &Args) -> Result<Self, String> {
        let mut cfg = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                serde_json::from_str(&text)
                    .map_err(|e| format!("bad config {}: {e}", path.display()))?
            }
            None => JobConfig::default(),
        };
        macro_rules! take {
            ($($f:ident),*) => {$(
                if args.$f.is_some() {
                    cfg.$f = args.$f.clone();
                }
            )*};
        }
        take!(
            command, variety, nvars, max_length, max_degree, weight_max, which, order, max_window
        );
        if !args.sheaf.is_empty() {
            cfg.sheaf = args.sheaf.clone();
        }
        cfg.json |= args.json;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn command(&self) -> &str {
        self.command.as_deref().unwrap_or_default()
    }

    pub fn validate(&self) -> Result<(), String> {
        match &self.command {
            None => return Err("no command given".into()),
            Some(c) if !COMMANDS.contains(&c.as_str()) => {
                return Err(format!(
                    "unknown command '{c}', expected one of {}",
                    COMMANDS.join(", ")
                ))
            }
            _ => {}
        }
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(format!("{what} is outside the hard limits"))
            }
        };
        check(
            self.nvars.is_none_or(|n| (1..=MAX_NVARS).contains(&n)),
            "nvars",
        )?;
        check(
            self.max_length.is_none_or(|n| n <= MAX_LENGTH),
            "max_length",
        )?;
        check(
            self.max_degree
                .is_none_or(|d| (0..=MAX_DEGREE).contains(&d)),
            "max_degree",
        )?;
        check(
            self.weight_max
                .is_none_or(|d| (-1..=MAX_WEIGHT).contains(&d)),
            "weight_max",
        )?;
        check(self.order.is_none_or(|n| n <= MAX_ORDER), "order")?;
        check(
            self.max_window
                .is_none_or(|w| (1..=MAX_WINDOW).contains(&w)),
            "max_window",
        )?;
        if let Some(w) = &self.which {
            if w != "l" && w != "t" {
                return Err(format!("--which must be l or t, got '{w}'"));
            }
        }
        Ok(())
    }
}
