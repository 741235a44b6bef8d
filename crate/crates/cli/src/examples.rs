use std::f64::consts::PI;

use clap::{Subcommand, ValueEnum};
use dynamics_examples::{
    cnot_transfer, rf_disturbance, rf_identity_residual, rf_infidelity_bound, spin_chain, SpinObservable,
};
use fock::{BeamSplitter, FockSpace};
use qmat::C64;
use serde_json::json;

use crate::output::{num, Outcome, Table};
use crate::{invalid, CliError};

/// Default residual tolerance for the driven-atom identity.
const RF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainKind {
    Micro,
    Macro,
    Product,
    All,
}

#[derive(Subcommand, Debug)]
pub enum ExamplesCmd {
    /// Joint measurement quality of the two beamsplitter quadrature pointers.
    Beamsplitter {
        /// Mixing angles in radians.
        #[arg(long, value_delimiter = ',', default_values_t = [PI / 8.0, PI / 6.0, PI / 4.0, PI / 3.0])]
        theta: Vec<f64>,
        #[arg(long, default_value_t = 40)]
        nmax: usize,
    },
    /// Disturbance of the driven two-level atom versus the infidelity bound.
    Rf {
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Coherence left by a spin chain acting as measuring apparatus.
    Chain {
        #[arg(long = "N", visible_alias = "n", default_value_t = 10)]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        kind: ChainKind,
    },
    /// Controlled-not transfer of a qubit superposition.
    Cnot {
        /// Weight |α1|² of the second basis state.
        #[arg(long, default_value_t = 0.5)]
        p1: f64,
        /// Relative phase of α1 in radians.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
    },
}

impl ExamplesCmd {
    pub fn name(&self) -> &'static str {
        match self {
            ExamplesCmd::Beamsplitter { .. } => "beamsplitter",
            ExamplesCmd::Rf { .. } => "rf",
            ExamplesCmd::Chain { .. } => "chain",
            ExamplesCmd::Cnot { .. } => "cnot",
        }
    }
}

pub fn run(cmd: &ExamplesCmd, tol: Option<f64>) -> Result<Outcome, CliError> {
    match cmd {
        ExamplesCmd::Beamsplitter { theta, nmax } => {
            let space = FockSpace::new(*nmax).map_err(invalid)?;
            let mut table = Table::new(&["theta", "sigma_b", "sigma_b_tilde", "product", "half_tan2"]);
            let mut rows = Vec::new();
            for &th in theta {
                let q = BeamSplitter::new(th, space).map_err(invalid)?.joint_quality().map_err(invalid)?;
                let half_tan2 = 0.5 * th.tan().powi(2);
                table.push([num(th), num(q.sigma_b), num(q.sigma_b_tilde), num(q.product), num(half_tan2)]);
                rows.push(json!({
                    "theta": th,
                    "sigma_b": q.sigma_b,
                    "sigma_b_tilde": q.sigma_b_tilde,
                    "product": q.product,
                    "commutator_rhs": q.commutator_rhs,
                    "half_tan2": half_tan2,
                    "protected_levels": q.protected,
                }));
            }
            Ok(Outcome {
                stem: "examples-beamsplitter".into(),
                report: json!({ "n_max": nmax, "angles": rows }),
                tables: vec![(String::new(), table)],
                violation: false,
            })
        }
        ExamplesCmd::Rf { t_max, points } => {
            if !(*t_max > 0.0) || *points < 2 {
                return Err(invalid("--t-max must be positive and --points at least 2"));
            }
            let tol = tol.unwrap_or(RF_TOL);
            let mut table = Table::new(&["t", "disturbance", "infidelity_bound", "residual"]);
            let mut worst: f64 = 0.0;
            for k in 0..*points {
                let t = t_max * k as f64 / (*points - 1) as f64;
                let r = rf_identity_residual(t);
                worst = worst.max(r.abs());
                table.push([num(t), num(rf_disturbance(t)), num(rf_infidelity_bound(t)), num(r)]);
            }
            Ok(Outcome {
                stem: "examples-rf".into(),
                report: json!({ "t_max": t_max, "points": points, "max_abs_residual": worst, "tolerance": tol }),
                tables: vec![(String::new(), table)],
                violation: worst > tol,
            })
        }
        ExamplesCmd::Chain { n, kind } => {
            let kinds: Vec<(&str, SpinObservable)> = match kind {
                ChainKind::Micro => vec![("micro", SpinObservable::Micro)],
                ChainKind::Macro => vec![("macro", SpinObservable::Macro)],
                ChainKind::Product => vec![("product", SpinObservable::Product)],
                ChainKind::All => vec![
                    ("micro", SpinObservable::Micro),
                    ("macro", SpinObservable::Macro),
                    ("product", SpinObservable::Product),
                ],
            };
            let mut table = Table::new(&["n", "kind", "coherence", "interference", "bound", "satisfied"]);
            let mut rows = Vec::new();
            let mut bad = false;
            for (name, k) in kinds {
                let r = spin_chain(*n, k).map_err(invalid)?;
                bad |= !r.satisfied;
                table.push([
                    r.n.to_string(),
                    name.to_string(),
                    num(r.coherence),
                    num(r.interference),
                    num(r.bound),
                    r.satisfied.to_string(),
                ]);
                rows.push(json!({
                    "kind": name,
                    "coherence": r.coherence,
                    "interference": r.interference,
                    "bound": r.bound,
                    "delta_comm": r.delta_comm,
                    "b": r.b,
                    "sigma": r.sigma,
                    "satisfied": r.satisfied,
                }));
            }
            Ok(Outcome {
                stem: "examples-chain".into(),
                report: json!({ "n": n, "observables": rows }),
                tables: vec![(String::new(), table)],
                violation: bad,
            })
        }
        ExamplesCmd::Cnot { p1, phase } => {
            if !(0.0..=1.0).contains(p1) {
                return Err(invalid(format!("--p1 must lie in [0, 1], got {p1}")));
            }
            let a0 = C64::new((1.0 - p1).sqrt(), 0.0);
            let a1 = C64::from_polar(p1.sqrt(), *phase);
            let (psi, rho) = cnot_transfer(a0, a1).map_err(invalid)?;
            let m = rho.matrix();
            let mut table = Table::new(&["row", "col", "re", "im"]);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    table.push([i.to_string(), j.to_string(), num(m[(i, j)].re), num(m[(i, j)].im)]);
                }
            }
            Ok(Outcome {
                stem: "examples-cnot".into(),
                report: json!({
                    "alpha": [[a0.re, a0.im], [a1.re, a1.im]],
                    "output_state": psi.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                    "reduced_bloch": rho.bloch(),
                }),
                tables: vec![(String::new(), table)],
                violation: false,
            })
        }
    }
}
