use clap::Subcommand;
use qbounds::{audit, AuditConfig};
use qchan::KrausChannel;
use qmat::ComplexMatrix;
use serde_json::json;

use crate::output::{num, to_json, Outcome, Table};
use crate::{invalid, CliError};

/// Largest |gap| tolerated on the saturating family.
pub const SHARP_TOL: f64 = 1e-8;

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// Randomized audit of all inequalities plus the equality sweep.
    Audit {
        /// Number of random instances.
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        /// Feed a non-unital map to the checker (exercises the input guard).
        #[arg(long)]
        inject_nonunital: bool,
    },
}

impl BoundsCmd {
    pub fn name(&self) -> &'static str {
        "audit"
    }
}

pub fn run(cmd: &BoundsCmd, seed: Option<u64>, tol: Option<f64>) -> Result<Outcome, CliError> {
    let BoundsCmd::Audit { instances, inject_nonunital } = cmd;
    if *inject_nonunital {
        let faulty = ComplexMatrix::identity(2).scale_re(2.0);
        KrausChannel::new(vec![faulty]).map_err(invalid)?;
    }
    if *instances == 0 {
        return Err(invalid("--instances must be positive"));
    }
    let defaults = AuditConfig::default();
    let config = AuditConfig {
        instances: *instances,
        seed: seed.unwrap_or(defaults.seed),
        tol: tol.unwrap_or(defaults.tol),
    };
    let report = audit(config).map_err(invalid)?;
    let violations = report.total_violations();
    let sharp_gap = report.sharp_max_gap();
    let mut sharp = Table::new(&["p", "bound", "lhs", "rhs", "gap"]);
    for pt in &report.sharp {
        for c in &pt.checks {
            sharp.push([num(pt.p), c.name.to_string(), num(c.lhs), num(c.rhs), num(c.gap)]);
        }
    }
    let mut summary = Table::new(&["bound", "evaluated", "void", "violations", "min_gap"]);
    for s in &report.summaries {
        summary.push([
            s.name.to_string(),
            s.evaluated.to_string(),
            s.void.to_string(),
            s.violations.to_string(),
            num(s.min_gap),
        ]);
    }
    let sharp_ok = sharp_gap <= SHARP_TOL;
    Ok(Outcome {
        stem: "bounds-audit".into(),
        report: json!({
            "report": to_json(&report)?,
            "total_violations": violations,
            "sharp_max_abs_gap": sharp_gap,
            "sharp_tolerance": SHARP_TOL,
            "passed": violations == 0 && sharp_ok,
        }),
        tables: vec![(String::new(), summary), ("sharp".into(), sharp)],
        violation: violations > 0 || !sharp_ok,
    })
}
