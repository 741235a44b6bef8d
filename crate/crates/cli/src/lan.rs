use clap::{Args, Subcommand, ValueEnum};
use lan_est::{
    stage1_miss_rate, summarize, trial_records, EstimationConfig, LocalParams, SamplingMode,
};
use serde_json::json;

use crate::output::{num, to_json, Outcome, Table};
use crate::{invalid, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Gaussian,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LossArg {
    Trace,
    Fidelity,
    ExactTrace,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
pub struct LanCmd {
    #[command(subcommand)]
    sub: Option<LanSub>,
    #[command(flatten)]
    risk: RiskArgs,
}

#[derive(Subcommand, Debug)]
enum LanSub {
    /// Monte Carlo risk of the stage-2 estimator (default).
    Risk(RiskArgs),
    /// Localization-miss frequency of stage 1 against its exponential bound.
    Stage1(Stage1Args),
}

#[derive(Args, Debug, Clone)]
pub struct RiskArgs {
    #[arg(long, default_value_t = 0.9)]
    mu: f64,
    #[arg(long, default_value_t = 100_000)]
    n: u64,
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[arg(long, value_enum, default_value = "gaussian")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0.2)]
    eta: f64,
    #[arg(long, default_value_t = 0.1)]
    kappa: f64,
    /// Loss reported as the headline risk.
    #[arg(long, value_enum, default_value = "trace")]
    loss: LossArg,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    ux: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    uy: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    uz: f64,
    /// Also write one CSV row per trial.
    #[arg(long)]
    trial_csv: bool,
}

#[derive(Args, Debug, Clone)]
struct Stage1Args {
    #[arg(long, default_value_t = 10_000)]
    n: u64,
    #[arg(long, default_value_t = 0.1)]
    kappa: f64,
    #[arg(long, default_value_t = 0.15)]
    epsilon: f64,
    #[arg(long, default_value_t = 10_000)]
    reps: usize,
    /// True Bloch vector `x,y,z`.
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [0.3, -0.2, 0.5], allow_negative_numbers = true)]
    bloch: Vec<f64>,
}

impl LanCmd {
    pub fn name(&self) -> &'static str {
        match self.sub {
            Some(LanSub::Stage1(_)) => "stage1",
            _ => "risk",
        }
    }
}

pub fn run(cmd: &LanCmd, seed: Option<u64>) -> Result<Outcome, CliError> {
    match &cmd.sub {
        Some(LanSub::Stage1(a)) => stage1(a, seed),
        Some(LanSub::Risk(a)) => risk(a, seed),
        None => risk(&cmd.risk, seed),
    }
}

fn risk(a: &RiskArgs, seed: Option<u64>) -> Result<Outcome, CliError> {
    let cfg = EstimationConfig {
        n: a.n,
        kappa: a.kappa,
        eta: a.eta,
        mu0: a.mu,
        u_true: LocalParams::new(a.ux, a.uy, a.uz),
        mode: match a.mode {
            ModeArg::Gaussian => SamplingMode::GaussianLimit,
            ModeArg::Exact => SamplingMode::ExactBlock,
        },
        trials: a.trials,
        seed: seed.unwrap_or(0),
    };
    let records = trial_records(&cfg).map_err(invalid)?;
    let report = summarize(&cfg, &records);
    let headline = match a.loss {
        LossArg::Trace => report.trace,
        LossArg::Fidelity => report.fidelity,
        LossArg::ExactTrace => report.exact_trace,
    };
    let mut tables = Vec::new();
    if a.trial_csv {
        let mut t = Table::new(&["trial", "ux_hat", "uy_hat", "uz_hat", "trace", "fidelity", "exact_trace", "truncated"]);
        for r in &records {
            t.push([
                r.index.to_string(),
                num(r.u_hat.ux),
                num(r.u_hat.uy),
                num(r.u_hat.uz),
                num(r.trace),
                num(r.fidelity),
                num(r.exact_trace),
                r.truncated.to_string(),
            ]);
        }
        tables.push(("trials".to_string(), t));
    }
    Ok(Outcome {
        stem: "lan-risk".into(),
        report: json!({
            "risk": to_json(&headline)?,
            "z_score": headline.z_score(),
            "details": to_json(&report)?,
        }),
        tables,
        violation: report.improvement_violations > 0,
    })
}

fn stage1(a: &Stage1Args, seed: Option<u64>) -> Result<Outcome, CliError> {
    let r = [a.bloch[0], a.bloch[1], a.bloch[2]];
    if a.reps == 0 {
        return Err(invalid("--reps must be positive"));
    }
    let rep = stage1_miss_rate(a.n, a.kappa, a.epsilon, r, a.reps, seed.unwrap_or(0)).map_err(invalid)?;
    Ok(Outcome {
        stem: "lan-stage1".into(),
        report: to_json(&rep)?,
        tables: Vec::new(),
        violation: !rep.within_bound,
    })
}
