use clap::{Subcommand, ValueEnum};
use pointer_opt::{
    naive_optimum, naive_qualities, optimize_pointer, output_density, pointer_range,
    simple_pointer_qualities, unbiasedness_check, PointerKind, PointerSpec, QualityPair, Target,
};
use serde_json::{json, Value};

use crate::output::{num, to_json, Outcome, Table};
use crate::{invalid, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    X,
    Z,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum PointerCmd {
    /// Minimax-optimal rational pointers and their constants.
    Optimize {
        #[arg(long, value_enum, default_value = "both")]
        target: TargetArg,
        /// Measurement time; `inf` for the long-time limit.
        #[arg(long, default_value = "inf")]
        t: f64,
    },
    /// Density of the optimal pointer value for three input states.
    Density {
        #[arg(long, value_enum, default_value = "x")]
        target: TargetArg,
        #[arg(long, default_value = "inf")]
        t: f64,
        /// Number of grid points across the pointer range.
        #[arg(long, default_value_t = 401)]
        grid: usize,
    },
    /// Qualities of the unweighted-path pointers and their minima.
    Naive {
        /// Evaluate at this time as well.
        #[arg(long)]
        t: Option<f64>,
        /// Curve sampled on (0, t_max].
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

impl PointerCmd {
    pub fn name(&self) -> &'static str {
        match self {
            PointerCmd::Optimize { .. } => "optimize",
            PointerCmd::Density { .. } => "density",
            PointerCmd::Naive { .. } => "naive",
        }
    }
}

fn check_t(t: f64) -> Result<(), CliError> {
    if !(t > 0.0) {
        return Err(invalid(format!("--t must be positive, got {t}")));
    }
    Ok(())
}

fn targets(t: TargetArg) -> Vec<Target> {
    match t {
        TargetArg::X => vec![Target::SigmaX],
        TargetArg::Z => vec![Target::SigmaZ],
        TargetArg::Both => vec![Target::SigmaX, Target::SigmaZ],
    }
}

fn tag(t: Target) -> &'static str {
    match t {
        Target::SigmaX => "sigma_x",
        Target::SigmaZ => "sigma_z",
    }
}

fn constants(spec: &PointerSpec, q: &QualityPair) -> Vec<(String, f64)> {
    let PointerKind::Rational { c1, c2, c3, eps } = spec.kind else {
        return Vec::new();
    };
    let mut v = match spec.target {
        Target::SigmaX => vec![("epsilon", eps), ("C1", c1), ("C2", c2), ("C3", c3)],
        Target::SigmaZ => vec![("delta", eps), ("D1", c1), ("D2", c2), ("D3", c3)],
    };
    v.extend([("d1", q.d1), ("d2", q.d2), ("sigma", q.sigma)]);
    v.into_iter().map(|(k, x)| (format!("{}.{k}", tag(spec.target)), x)).collect()
}

pub fn run(cmd: &PointerCmd) -> Result<Outcome, CliError> {
    match cmd {
        PointerCmd::Optimize { target, t } => {
            check_t(*t)?;
            let mut report = serde_json::Map::new();
            let mut table = Table::new(&["name", "value"]);
            let mut sigmas = Vec::new();
            for tg in targets(*target) {
                let (spec, q) = optimize_pointer(tg, *t).map_err(invalid)?;
                let unb = unbiasedness_check(&spec).map_err(invalid)?;
                for (k, x) in constants(&spec, &q) {
                    table.push([k, num(x)]);
                }
                report.insert(
                    tag(tg).into(),
                    json!({ "pointer": to_json(&spec)?, "quality": to_json(&q)?, "unbiasedness": to_json(&unb)? }),
                );
                sigmas.push(q.sigma);
            }
            if sigmas.len() == 2 {
                let p = sigmas[0] * sigmas[1];
                table.push(["product".into(), num(p)]);
                report.insert("product".into(), json!(p));
            }
            report.insert("t".into(), json!(num(*t)));
            Ok(Outcome { stem: "pointer-optimize".into(), report: Value::Object(report), tables: vec![(String::new(), table)], violation: false })
        }
        PointerCmd::Density { target, t, grid } => {
            check_t(*t)?;
            if *grid < 2 {
                return Err(invalid("--grid must be at least 2"));
            }
            let tg = match target {
                TargetArg::X => Target::SigmaX,
                TargetArg::Z => Target::SigmaZ,
                TargetArg::Both => return Err(invalid("density needs --target x or z")),
            };
            let (spec, _) = optimize_pointer(tg, *t).map_err(invalid)?;
            let (lo, hi) = pointer_range(&spec).map_err(invalid)?;
            let xs: Vec<f64> = (0..*grid).map(|k| lo + (hi - lo) * k as f64 / (*grid - 1) as f64).collect();
            let states: [(&str, [f64; 3]); 3] = match tg {
                Target::SigmaX => [("minus_x", [-1.0, 0.0, 0.0]), ("tracial", [0.0; 3]), ("plus_x", [1.0, 0.0, 0.0])],
                Target::SigmaZ => [("plus_z", [0.0, 0.0, 1.0]), ("tracial", [0.0; 3]), ("minus_z", [0.0, 0.0, -1.0])],
            };
            let cols = states
                .iter()
                .map(|(_, r)| output_density(&spec, *r, &xs).map_err(invalid))
                .collect::<Result<Vec<_>, _>>()?;
            let mut header = vec!["x"];
            header.extend(states.iter().map(|s| s.0));
            let mut table = Table::new(&header);
            for (i, x) in xs.iter().enumerate() {
                table.push(std::iter::once(num(*x)).chain(cols.iter().map(|c| num(c[i]))));
            }
            Ok(Outcome {
                stem: format!("pointer-density-{}", tag(tg)),
                report: json!({
                    "target": tag(tg),
                    "t": num(*t),
                    "pointer": to_json(&spec)?,
                    "range": [lo, hi],
                    "grid": grid,
                    "states": states.iter().map(|(n, r)| json!({"name": n, "bloch": r})).collect::<Vec<_>>(),
                }),
                tables: vec![(String::new(), table)],
                violation: false,
            })
        }
        PointerCmd::Naive { t, t_max, points } => {
            if let Some(t) = t {
                check_t(*t)?;
            }
            check_t(*t_max)?;
            if *points == 0 {
                return Err(invalid("--points must be positive"));
            }
            let opt = naive_optimum().map_err(invalid)?;
            let at = t.map(|t| {
                let (s2, st2) = naive_qualities(t);
                json!({ "t": t, "sigma2": s2, "sigma_tilde2": st2, "product": (s2 * st2).sqrt() })
            });
            let mut table = Table::new(&["t", "sigma2", "sigma_tilde2", "linear_sigma2", "quadratic_sigma_tilde2"]);
            for k in 1..=*points {
                let tt = t_max * k as f64 / *points as f64;
                let (s2, st2) = naive_qualities(tt);
                let (l, q) = simple_pointer_qualities(tt).map_err(invalid)?;
                table.push([num(tt), num(s2), num(st2), num(l), num(q)]);
            }
            Ok(Outcome {
                stem: "pointer-naive".into(),
                report: json!({ "optimum": to_json(&opt)?, "at_t": at }),
                tables: vec![(String::new(), table)],
                violation: false,
            })
        }
    }
}
