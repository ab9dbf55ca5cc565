//! Command-line flags and config files, merged into a validated [`RunConfig`].
//!
//! Config files are flat `key = value` pairs with an optional `[sweep]`
//! table, read as TOML. Flags win over file values; unknown keys are errors.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use openness_core::{
    Axis, BargainingRule, GameParams, ModelError, Objective, Regulation, SweepParam, SweepSpec,
};
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const COMMANDS: &str = "solve, sweep, indifference, pareto, baseline";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// One equilibrium at a fixed regulation.
    Solve,
    /// Two-axis grid of labelled equilibria.
    Sweep,
    /// Threshold against the penalty that makes compliance worthwhile.
    Indifference,
    /// Labelled regulation grid plus the weighted policy scan.
    Pareto,
    /// Unregulated equilibria over initial performance and reputation.
    Baseline,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Sweep => "sweep",
            Command::Indifference => "indifference",
            Command::Pareto => "pareto",
            Command::Baseline => "baseline",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Settings that only some commands read.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOptions {
    /// Upper end of the penalty range searched or swept.
    pub p_max: f64,
    /// Bisection tolerance of the numeric indifference boundary.
    pub tol_p: f64,
    /// Number of thresholds on the indifference curve.
    pub theta_steps: usize,
    pub weight_steps: usize,
    pub objectives: Vec<Objective>,
    /// Baseline over every bargaining rule instead of `rule` alone.
    pub all_rules: bool,
}

impl CommandOptions {
    pub const DEFAULT_P_MAX: f64 = 1.0;
    pub const DEFAULT_TOL_P: f64 = 1e-4;
    pub const DEFAULT_THETA_STEPS: usize = 21;
    pub const DEFAULT_WEIGHT_STEPS: usize = 10;
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: GameParams,
    pub reg: Regulation,
    pub rule: BargainingRule,
    pub sweep: Option<SweepSpec>,
    /// `None` writes to standard output.
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub options: CommandOptions,
}

fn parse_model<T: FromStr<Err = ModelError>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: ModelError| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "openness-eq",
    version,
    about = "Equilibria of the model-openness game under threshold regulation",
    allow_negative_numbers = true
)]
struct Flags {
    #[arg(value_enum)]
    command: Option<Command>,
    #[arg(long)]
    alpha0: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long = "c-omega")]
    c_omega: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    penalty: Option<f64>,
    /// nash, vm or egalitarian.
    #[arg(long, value_parser = parse_model::<BargainingRule>)]
    rule: Option<BargainingRule>,
    #[arg(long = "omega-min")]
    omega_min: Option<f64>,
    #[arg(long = "delta-step")]
    delta_step: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,

    #[arg(long, value_parser = parse_model::<SweepParam>)]
    x: Option<SweepParam>,
    #[arg(long = "x-min")]
    x_min: Option<f64>,
    #[arg(long = "x-max")]
    x_max: Option<f64>,
    #[arg(long = "x-steps")]
    x_steps: Option<usize>,
    #[arg(long, value_parser = parse_model::<SweepParam>)]
    y: Option<SweepParam>,
    #[arg(long = "y-min")]
    y_min: Option<f64>,
    #[arg(long = "y-max")]
    y_max: Option<f64>,
    #[arg(long = "y-steps")]
    y_steps: Option<usize>,
    /// Grid size for both axes, or the number of thresholds for indifference.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long = "p-max")]
    p_max: Option<f64>,

    #[arg(long = "tol-p")]
    tol_p: Option<f64>,
    #[arg(long = "weight-steps")]
    weight_steps: Option<usize>,
    /// Comma-separated subset of omega, alpha1, u_g, u_d.
    #[arg(long, value_delimiter = ',', value_parser = parse_model::<Objective>)]
    objectives: Option<Vec<Objective>>,
    #[arg(long = "all-rules")]
    all_rules: bool,

    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    alpha0: Option<f64>,
    eps: Option<f64>,
    c_omega: Option<f64>,
    theta: Option<f64>,
    penalty: Option<f64>,
    rule: Option<String>,
    omega_min: Option<f64>,
    delta_step: Option<f64>,
    tol: Option<f64>,
    tol_p: Option<f64>,
    weight_steps: Option<usize>,
    objectives: Option<Vec<String>>,
    all_rules: Option<bool>,
    out: Option<PathBuf>,
    format: Option<Format>,
    sweep: Option<SweepSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    x: Option<String>,
    x_min: Option<f64>,
    x_max: Option<f64>,
    x_steps: Option<usize>,
    y: Option<String>,
    y_min: Option<f64>,
    y_max: Option<f64>,
    y_steps: Option<usize>,
    steps: Option<usize>,
    p_max: Option<f64>,
}

fn parse_flags(argv: &[String]) -> Result<Flags> {
    if argv.is_empty() {
        return Err(CliError::Usage(format!(
            "missing command; expected one of: {COMMANDS}\n\nUsage: openness-eq <COMMAND> [flags] [--config FILE] [--out PATH] [--format csv|json]"
        )));
    }
    let args = std::iter::once("openness-eq".to_string()).chain(argv.iter().cloned());
    Flags::try_parse_from(args).map_err(|err| {
        use clap::error::ErrorKind;
        let text = err.render().to_string();
        match err.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(text),
            _ => CliError::Usage(text.trim_start_matches("error: ").trim_end().to_string()),
        }
    })
}

/// Path given by `--config`, if any. Lets the caller load the file before
/// [`parse_config`].
pub fn config_path(argv: &[String]) -> Result<Option<PathBuf>> {
    Ok(parse_flags(argv)?.config)
}

fn config_value<T: FromStr<Err = ModelError>>(key: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|e: ModelError| CliError::Usage(format!("config key `{key}`: {e}")))
}

fn axis_default_range(param: SweepParam, p_max: f64) -> (f64, f64) {
    match param {
        SweepParam::Alpha0 => (0.01, 1.0),
        SweepParam::Penalty => (0.0, p_max),
        SweepParam::Eps | SweepParam::COmega | SweepParam::Theta => (0.0, 1.0),
    }
}

/// Builds a run configuration from `argv` (without the program name) and
/// the text of the config file, if one was loaded.
pub fn parse_config(argv: &[String], config_text: Option<&str>) -> Result<RunConfig> {
    let flags = parse_flags(argv)?;
    let file: FileConfig = match config_text {
        Some(text) => {
            toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {}", e.message())))?
        }
        None => FileConfig::default(),
    };
    let section = file.sweep.unwrap_or_default();

    let rule = match (flags.rule, &file.rule) {
        (Some(rule), _) => rule,
        (None, Some(s)) => config_value("rule", s)?,
        (None, None) => BargainingRule::Nash,
    };
    let x_param = match (flags.x, &section.x) {
        (Some(p), _) => Some(p),
        (None, Some(s)) => Some(config_value("sweep.x", s)?),
        (None, None) => None,
    };
    let y_param = match (flags.y, &section.y) {
        (Some(p), _) => Some(p),
        (None, Some(s)) => Some(config_value("sweep.y", s)?),
        (None, None) => None,
    };
    let objectives = match (flags.objectives, &file.objectives) {
        (Some(list), _) => list,
        (None, Some(list)) => list
            .iter()
            .map(|s| config_value("objectives", s))
            .collect::<Result<_>>()?,
        (None, None) => Objective::ALL.to_vec(),
    };

    let alpha0 = flags.alpha0.or(file.alpha0);
    let eps = flags.eps.or(file.eps);
    let c_omega = flags.c_omega.or(file.c_omega);
    let theta = flags.theta.or(file.theta);
    let penalty = flags.penalty.or(file.penalty);

    // Domain checks come first so a bad value is reported even when other
    // required inputs are missing. Absent values get in-domain placeholders.
    let params = GameParams {
        alpha0: alpha0.unwrap_or(1.0),
        eps: eps.unwrap_or(0.0),
        c_omega: c_omega.unwrap_or(0.0),
        omega_min: flags
            .omega_min
            .or(file.omega_min)
            .unwrap_or(GameParams::DEFAULT_OMEGA_MIN),
        delta_step: flags
            .delta_step
            .or(file.delta_step)
            .unwrap_or(GameParams::DEFAULT_DELTA_STEP),
        tol: flags.tol.or(file.tol).unwrap_or(GameParams::DEFAULT_TOL),
    };
    let reg = Regulation {
        theta: theta.unwrap_or(0.0),
        penalty: penalty.unwrap_or(0.0),
    };
    let invalid = |e: ModelError| CliError::Validation(e.to_string());
    reg.validate().map_err(invalid)?;
    params.validate().map_err(invalid)?;

    let options = CommandOptions {
        p_max: flags
            .p_max
            .or(section.p_max)
            .unwrap_or(CommandOptions::DEFAULT_P_MAX),
        tol_p: flags
            .tol_p
            .or(file.tol_p)
            .unwrap_or(CommandOptions::DEFAULT_TOL_P),
        theta_steps: flags
            .steps
            .or(section.steps)
            .unwrap_or(CommandOptions::DEFAULT_THETA_STEPS),
        weight_steps: flags
            .weight_steps
            .or(file.weight_steps)
            .unwrap_or(CommandOptions::DEFAULT_WEIGHT_STEPS),
        objectives,
        all_rules: flags.all_rules || file.all_rules.unwrap_or(false),
    };
    if !(options.p_max > 0.0 && options.p_max.is_finite()) {
        return Err(CliError::Validation(format!(
            "p_max = {} is outside its domain (0, inf)",
            options.p_max
        )));
    }
    if !(options.tol_p > 0.0 && options.tol_p < options.p_max) {
        return Err(CliError::Validation(format!(
            "tol_p = {} is outside its domain (0, p_max)",
            options.tol_p
        )));
    }

    let Some(command) = flags.command else {
        return Err(CliError::Usage(format!(
            "missing command; expected one of: {COMMANDS}"
        )));
    };

    let sweep = match command {
        Command::Sweep | Command::Pareto | Command::Baseline => {
            let (default_x, default_y) = if command == Command::Baseline {
                (SweepParam::Alpha0, SweepParam::Eps)
            } else {
                (SweepParam::Penalty, SweepParam::Theta)
            };
            let steps = flags
                .steps
                .or(section.steps)
                .unwrap_or(SweepSpec::DEFAULT_STEPS);
            let x = x_param.unwrap_or(default_x);
            let y = y_param.unwrap_or(default_y);
            let (x_lo, x_hi) = axis_default_range(x, options.p_max);
            let (y_lo, y_hi) = axis_default_range(y, options.p_max);
            let spec = SweepSpec {
                x: Axis::new(
                    x,
                    flags.x_min.or(section.x_min).unwrap_or(x_lo),
                    flags.x_max.or(section.x_max).unwrap_or(x_hi),
                    flags.x_steps.or(section.x_steps).unwrap_or(steps),
                ),
                y: Axis::new(
                    y,
                    flags.y_min.or(section.y_min).unwrap_or(y_lo),
                    flags.y_max.or(section.y_max).unwrap_or(y_hi),
                    flags.y_steps.or(section.y_steps).unwrap_or(steps),
                ),
                params,
                reg,
                rule,
            };
            spec.validate().map_err(|e| match e {
                ModelError::Domain { .. } => CliError::Validation(e.to_string()),
                e => CliError::Usage(format!("sweep: {e}")),
            })?;
            Some(spec)
        }
        Command::Solve | Command::Indifference => None,
    };

    if command == Command::Baseline {
        let regulated = theta.is_some() || penalty.is_some();
        let reg_axis = sweep
            .iter()
            .flat_map(|s| [s.x.param, s.y.param])
            .any(|p| !p.is_game_param());
        if regulated || reg_axis {
            return Err(CliError::Usage(
                "baseline solves the unregulated game; drop theta/penalty".into(),
            ));
        }
    }
    if command == Command::Indifference && options.theta_steps < 2 {
        return Err(CliError::Usage(
            "indifference needs at least 2 steps".into(),
        ));
    }

    let swept: Vec<SweepParam> = sweep.iter().flat_map(|s| [s.x.param, s.y.param]).collect();
    let missing: Vec<&str> = [
        (SweepParam::Alpha0, alpha0, "--alpha0"),
        (SweepParam::Eps, eps, "--eps"),
        (SweepParam::COmega, c_omega, "--c-omega"),
    ]
    .into_iter()
    .filter(|(param, value, _)| value.is_none() && !swept.contains(param))
    .map(|(_, _, flag)| flag)
    .collect();
    if !missing.is_empty() {
        return Err(CliError::Usage(format!(
            "{command} needs {}",
            missing.join(", ")
        )));
    }

    Ok(RunConfig {
        command,
        params,
        reg,
        rule,
        sweep,
        output_path: flags.out.or(file.out),
        format: flags.format.or(file.format).unwrap_or_default(),
        options,
    })
}
