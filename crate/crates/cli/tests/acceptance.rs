//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use dynamics_examples::{rf_disturbance, rf_infidelity_bound};
use fock::{BeamSplitter, FockSpace};
use lan_est::stage1_miss_rate;
use pointer_opt::{d1_d2, density_p, output_density, pointer_range, optimize_pointer, Target};
use qbounds::coding_bounds;
use qchan::{gaussian_matrix, random_channel, random_channel_rng, random_density, rng_from_seed, FinitePovm, KrausChannel};
use qmat::{eig_hermitian, op_norm, ComplexMatrix, DensityMatrix, HermitianOp, C64};
use qmetrics::{coding_imperfection, measure_prepare, sesquilinear_form};
use serde_json::Value;

type Check = Result<String, String>;

fn out_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("qmeasure-acceptance-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

/// Run the binary; returns exit code, parsed stdout and wall time.
fn qm(tag: &str, args: &[&str]) -> (i32, Value, f64) {
    let dir = out_dir(tag);
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qmeasure"))
        .arg("--out-dir")
        .arg(&dir)
        .args(args)
        .output()
        .expect("spawn qmeasure");
    let secs = start.elapsed().as_secs_f64();
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v, secs)
}

fn f(v: &Value, path: &[&str]) -> f64 {
    let mut cur = v;
    for p in path {
        cur = &cur[*p];
    }
    cur.as_f64().unwrap_or(f64::NAN)
}

fn near(name: &str, got: f64, want: f64, tol: f64, log: &mut Vec<String>) -> bool {
    let ok = (got - want).abs() <= tol;
    log.push(format!("{name}={got:.6}"));
    ok
}

fn verdict(ok: bool, log: Vec<String>) -> Check {
    if ok {
        Ok(log.join(" "))
    } else {
        Err(log.join(" "))
    }
}

fn criterion_1() -> Check {
    let (code, v, secs) = qm("c1", &["pointer", "optimize"]);
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    let mut log = Vec::new();
    let x = &v["sigma_x"];
    let z = &v["sigma_z"];
    let mut ok = near("eps", f(x, &["pointer", "kind", "eps"]), 0.605, 0.005, &mut log);
    ok &= near("C1", f(x, &["pointer", "kind", "c1"]), 2.359, 0.005, &mut log);
    ok &= near("Sigma", f(x, &["quality", "sigma"]), 0.685, 0.003, &mut log);
    ok &= near("delta", f(z, &["pointer", "kind", "eps"]), 2.701, 0.01, &mut log);
    ok &= near("D2", f(z, &["pointer", "kind", "c2"]), -21.649, 0.05, &mut log);
    ok &= near("D3", f(z, &["pointer", "kind", "c3"]), 5.391, 0.01, &mut log);
    ok &= near("SigmaTilde", f(z, &["quality", "sigma"]), 1.540, 0.003, &mut log);
    ok &= near("product", f(&v, &["product"]), 1.056, 0.005, &mut log);
    ok &= secs < 2.0;
    log.push(format!("time={secs:.3}s"));
    verdict(ok, log)
}

fn criterion_2() -> Check {
    let (code, v, secs) = qm("c2", &["pointer", "naive"]);
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    let o = &v["optimum"];
    let mut log = Vec::new();
    let mut ok = near("t_sigma", f(o, &["t_sigma"]), 2.513, 0.002, &mut log);
    ok &= near("t_sigma_tilde", f(o, &["t_sigma_tilde"]), 2.513, 0.002, &mut log);
    ok &= near("sigma2", f(o, &["sigma2"]), 2.228, 0.002, &mut log);
    ok &= near("sigma_tilde2", f(o, &["sigma_tilde2"]), 8.836, 0.005, &mut log);
    ok &= near("product", f(o, &["product"]), 4.437, 0.005, &mut log);
    ok &= secs < 1.0;
    log.push(format!("time={secs:.3}s"));
    verdict(ok, log)
}

/// Composite Simpson rule on [−12, 12].
fn simpson(w: impl Fn(f64) -> f64) -> f64 {
    let (a, b, n) = (-12.0f64, 12.0f64, 40_000usize);
    let h = (b - a) / n as f64;
    let mut s = w(a) + w(b);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * w(a + h * k as f64);
    }
    s * h / 3.0
}

fn gauss_moment(g: impl Fn(f64) -> f64) -> f64 {
    simpson(|y| g(y) * (-0.5 * y * y).exp() / (2.0 * PI).sqrt())
}

fn criterion_3() -> Check {
    let mut worst: f64 = 0.0;
    for eps in [0.2, 0.605, 1.0, 2.0] {
        for target in [Target::SigmaX, Target::SigmaZ] {
            let (spec, q) = d1_d2(target, eps, f64::INFINITY).map_err(|e| e.to_string())?;
            let pointer_opt::PointerKind::Rational { c1, c2, c3, eps: e } = spec.kind else {
                return Err("unexpected pointer kind".into());
            };
            let h = |y: f64| (c1 * y + c2) / (y * y + e) + c3;
            // long-time limit: β = 1
            let m0 = gauss_moment(|y| h(y) * h(y));
            let m2 = gauss_moment(|y| h(y) * h(y) * (y * y - 1.0));
            let (o1, o2) = (m0 + m2 - 1.0, m0 - 1.0);
            worst = worst.max((q.d1 - o1).abs()).max((q.d2 - o2).abs());
        }
    }
    let msg = format!("max |closed form − quadrature| = {worst:.2e}");
    if worst <= 1e-6 { Ok(msg) } else { Err(msg) }
}

fn criterion_4() -> Check {
    let (code, v, secs) = qm("c4", &["--seed", "7", "bounds", "audit", "--instances", "1000"]);
    let summaries = v["report"]["summaries"].as_array().cloned().unwrap_or_default();
    let evaluated: u64 = summaries.iter().filter_map(|s| s["evaluated"].as_u64()).sum();
    let min_gap = summaries
        .iter()
        .filter_map(|s| s["min_gap"].as_f64())
        .fold(f64::INFINITY, f64::min);
    let sharp = v["report"]["sharp"].as_array().map_or(0, |s| s.len());
    let sharp_gap = f(&v, &["sharp_max_abs_gap"]);
    let ok = code == 0
        && v["report"]["config"]["instances"].as_u64() == Some(1000)
        && evaluated > 0
        && min_gap >= -1e-9
        && sharp == 9
        && sharp_gap <= 1e-8
        && secs < 30.0;
    let msg = format!(
        "exit={code} checks={evaluated} min_gap={min_gap:.3e} sharp_points={sharp} sharp_gap={sharp_gap:.2e} time={secs:.1}s"
    );
    if ok { Ok(msg) } else { Err(msg) }
}

fn criterion_5() -> Check {
    let space = FockSpace::new(40).map_err(|e| e.to_string())?;
    let mut worst_var: f64 = 0.0;
    let mut worst_prod: f64 = 0.0;
    for th in [PI / 8.0, PI / 6.0, PI / 4.0, PI / 3.0] {
        let q = BeamSplitter::new(th, space)
            .and_then(|b| b.joint_quality())
            .map_err(|e| e.to_string())?;
        worst_var = worst_var.max((q.sigma_b.powi(2) - 0.5 * th.tan().powi(2)).abs());
        worst_prod = worst_prod.max((q.product - 0.5).abs());
    }
    let msg = format!("max |Σ_B² − ½tan²θ| = {worst_var:.2e}, max |Σ_B Σ_B̃ − ½| = {worst_prod:.2e}");
    if worst_var <= 1e-6 && worst_prod <= 1e-6 { Ok(msg) } else { Err(msg) }
}

fn bloch_povm(axes: &[[f64; 3]]) -> (FinitePovm, Vec<DensityMatrix>) {
    let w = 2.0 / axes.len() as f64;
    let elements = axes
        .iter()
        .map(|&a| HermitianOp::new(DensityMatrix::from_bloch(a).unwrap().matrix().scale_re(w)).unwrap())
        .collect();
    let povm = FinitePovm::new(elements, (0..axes.len()).map(|k| k as f64).collect()).unwrap();
    let states = axes.iter().map(|&a| DensityMatrix::from_bloch(a).unwrap()).collect();
    (povm, states)
}

fn criterion_6() -> Check {
    let (cs, clone) = coding_bounds(2).map_err(|e| e.to_string())?;
    let cs_exact = (3.0 - 5f64.sqrt()) / 4.0;
    let mut ok = cs == cs_exact && clone == 1.0 / 3.0;
    let mut schemes = Vec::new();
    let s = 1.0 / 3f64.sqrt();
    schemes.push(bloch_povm(&[[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]));
    schemes.push(bloch_povm(&[[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]]));
    schemes.push(bloch_povm(&[[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]));
    let mut rng = rng_from_seed(11);
    for k in [2usize, 3, 4, 5] {
        for _ in 0..5 {
            let v = random_channel_rng(2, k, 1, &mut rng).map_err(|e| e.to_string())?;
            let v = &v.ops()[0];
            let elements = (0..k)
                .map(|i| {
                    let row = ComplexMatrix::from_fn(1, 2, |_, j| v[(i, j)]);
                    HermitianOp::new(row.adjoint().dot(&row)).unwrap()
                })
                .collect();
            let povm = FinitePovm::new(elements, (0..k).map(|i| i as f64).collect()).unwrap();
            let states = (0..k).map(|_| random_density(2, &mut rng)).collect();
            schemes.push((povm, states));
        }
    }
    let mut least = f64::INFINITY;
    for (povm, states) in &schemes {
        let (c, d) = measure_prepare(povm, states).map_err(|e| e.to_string())?;
        least = least.min(coding_imperfection(&c, &d).map_err(|e| e.to_string())?);
    }
    ok &= least >= 1.0 / 3.0 - 1e-9;
    let msg = format!("cs={cs} clone={clone} schemes={} min_imperfection={least:.10}", schemes.len());
    if ok { Ok(msg) } else { Err(msg) }
}

fn risk(v: &Value, key: &str) -> (f64, f64, f64) {
    let r = &v["details"][key];
    (f(r, &["mean_n_risk"]), f(r, &["std_error"]), f(r, &["theory"]))
}

fn criterion_7() -> Check {
    let mut log = Vec::new();
    let mut ok = true;
    let mut run = |tag: &str, args: &[&str]| -> Result<Value, String> {
        let (code, v, secs) = qm(tag, args);
        ok &= code == 0 && secs < 60.0;
        log.push(format!("[{tag} {secs:.1}s]"));
        if code == 0 { Ok(v) } else { Err(format!("{tag}: exit {code}")) }
    };
    let base = ["--seed", "2024", "lan", "--n", "100000", "--trials", "100000"];
    let g9 = run("g9", &[&base[..], &["--mu", "0.9", "--mode", "gaussian"]].concat())?;
    let g75 = run("g75", &[&base[..], &["--mu", "0.75", "--mode", "gaussian"]].concat())?;
    let e9 = run("e9", &[&base[..], &["--mu", "0.9", "--mode", "exact"]].concat())?;
    let mut check = |name: &str, (m, se, _): (f64, f64, f64), want: f64| {
        let z = (m - want) / se;
        ok &= z.abs() <= 3.0;
        log.push(format!("{name}={m:.4}±{se:.4} (z={z:.2})"));
    };
    check("trace@0.9", risk(&g9, "trace"), 3.96);
    check("fid@0.9", risk(&g9, "fidelity"), 1.15);
    check("trace@0.75", risk(&g75, "trace"), 3.75);
    let (mg, sg, _) = risk(&g9, "trace");
    let (me, se, _) = risk(&e9, "trace");
    let z = (me - mg) / (sg * sg + se * se).sqrt();
    ok &= z.abs() <= 3.0;
    log.push(format!("exact-vs-gaussian z={z:.2}"));
    verdict(ok, log)
}

fn criterion_8() -> Check {
    let (n, kappa, eps, reps) = (10_000u64, 0.1, 0.15, 10_000usize);
    let rep = stage1_miss_rate(n, kappa, eps, [0.3, -0.2, 0.5], reps, 5).map_err(|e| e.to_string())?;
    let nt = (n as f64).powf(1.0 - kappa).floor();
    let bound = 6.0 * (-0.5 * nt * (n as f64).powf(2.0 * eps - 1.0)).exp();
    let freq = rep.misses as f64 / reps as f64;
    let msg = format!("misses={} freq={freq:.4} bound={bound:.4}", rep.misses);
    if rep.repetitions == reps && freq <= bound { Ok(msg) } else { Err(msg) }
}

fn criterion_9() -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..=2000 {
        let t = 10.0 * k as f64 / 2000.0;
        let r = (0.5 - rf_infidelity_bound(t)).powi(2) + (0.5 - rf_disturbance(t)).powi(2) - 0.25;
        worst = worst.max(r.abs());
    }
    let msg = format!("max residual on 2001 points = {worst:.2e}");
    if worst <= 1e-12 { Ok(msg) } else { Err(msg) }
}

fn min_eig(m: ComplexMatrix) -> f64 {
    let h = HermitianOp::with_tol(m, 1e-9).unwrap();
    let (v, _) = eig_hermitian(&h).unwrap();
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn cauchy_schwarz() -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for seed in 0..40u64 {
        let mut rng = rng_from_seed(1000 + seed);
        let k = 1 + (seed as usize % 3);
        let t = random_channel_rng(2, 6, k, &mut rng).map_err(|e| e.to_string())?;
        let x = gaussian_matrix(6, 6, &mut rng);
        let y = gaussian_matrix(6, 6, &mut rng);
        let form = |a: &ComplexMatrix, b: &ComplexMatrix| sesquilinear_form(&t, a, b).map_err(|e| e.to_string());
        let (xx, yy, xy, yx) = (form(&x, &x)?, form(&y, &y)?, form(&x, &y)?, form(&y, &x)?);
        let scale = (op_norm(&xx) * op_norm(&yy)).max(1.0);
        let resid = &xx.scale_re(op_norm(&yy)) - &xy.dot(&yx);
        worst = worst.min(min_eig(resid) / scale).min(min_eig(xx) / scale);
    }
    Ok(worst)
}

fn channel_properties() -> Result<(f64, f64), String> {
    let (mut unital, mut choi): (f64, f64) = (0.0, 0.0);
    for seed in 0..30u64 {
        let d = 2 + (seed as usize % 3);
        let k = 1 + (seed as usize % 4);
        let t = random_channel(d, 2 * d, k, seed).map_err(|e| e.to_string())?;
        let one = t.heisenberg_apply(&ComplexMatrix::identity(2 * d)).map_err(|e| e.to_string())?;
        unital = unital.max(one.max_abs_diff(&ComplexMatrix::identity(d)));
        choi = choi.min(min_eig(t.choi()));
    }
    // a map that is not unital must be rejected
    let bad = KrausChannel::new(vec![ComplexMatrix::identity(2).scale_re(2.0)]).is_err();
    if !bad {
        return Err("non-unital Kraus family accepted".into());
    }
    Ok((unital, choi))
}

fn normalizations() -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    let mut rng = rng_from_seed(3);
    for d in 2..6 {
        let rho = random_density(d, &mut rng);
        worst = worst.max((rho.matrix().trace() - C64::new(1.0, 0.0)).norm());
        worst = worst.max((-min_eig(rho.matrix().clone())).max(0.0));
    }
    // operator-valued outcome density integrates to the identity
    for t in [0.5, 2.0, f64::INFINITY] {
        for (i, j) in [(0, 0), (0, 1), (1, 1)] {
            let m = simpson(|y| density_p(y, t).unwrap().matrix()[i][j]);
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((m - want).abs());
        }
    }
    // pushed-forward densities of the optimal pointers, with x = mid − half·cos θ
    for target in [Target::SigmaX, Target::SigmaZ] {
        let (spec, _) = optimize_pointer(target, f64::INFINITY).map_err(|e| e.to_string())?;
        let (lo, hi) = pointer_range(&spec).map_err(|e| e.to_string())?;
        let (mid, half, n) = (0.5 * (lo + hi), 0.5 * (hi - lo), 20_000);
        let th: Vec<f64> = (0..n).map(|k| PI * (k as f64 + 0.5) / n as f64).collect();
        let grid: Vec<f64> = th.iter().map(|t| mid - half * t.cos()).collect();
        let dens = output_density(&spec, [0.2, 0.1, -0.4], &grid).map_err(|e| e.to_string())?;
        let mass: f64 = dens.iter().zip(&th).map(|(d, t)| d * half * t.sin()).sum::<f64>() * PI / n as f64;
        worst = worst.max((mass - 1.0).abs());
    }
    Ok(worst)
}

fn determinism() -> Result<(), String> {
    let a = qm("det-a", &["--seed", "99", "lan", "--trials", "2000"]).1;
    let b = qm("det-b", &["--seed", "99", "lan", "--trials", "2000"]).1;
    let c = qm("det-c", &["--seed", "100", "lan", "--trials", "2000"]).1;
    if a.is_null() || a != b {
        return Err("same seed gave different lan reports".into());
    }
    if a == c {
        return Err("different seeds gave identical lan reports".into());
    }
    let a = qm("det-d", &["--seed", "4", "bounds", "audit", "--instances", "30"]).1;
    let b = qm("det-e", &["--seed", "4", "bounds", "audit", "--instances", "30"]).1;
    if a.is_null() || a != b {
        return Err("same seed gave different audit reports".into());
    }
    let x = random_channel(3, 5, 2, 42).map_err(|e| e.to_string())?;
    let y = random_channel(3, 5, 2, 42).map_err(|e| e.to_string())?;
    if x.ops().iter().zip(y.ops()).any(|(p, q)| p.max_abs_diff(q) != 0.0) {
        return Err("random_channel not reproducible".into());
    }
    Ok(())
}

fn criterion_10() -> Check {
    let cs = cauchy_schwarz()?;
    let (unital, choi) = channel_properties()?;
    let norm = normalizations()?;
    determinism()?;
    let ok = cs >= -1e-9 && unital <= 1e-10 && choi >= -1e-10 && norm <= 1e-6;
    let msg = format!(
        "cs_min_eig={cs:.2e} unitality={unital:.2e} choi_min_eig={choi:.2e} normalization={norm:.2e} determinism=ok"
    );
    if ok { Ok(msg) } else { Err(msg) }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("pointer optimization constants", criterion_1),
        ("naive pointer qualities", criterion_2),
        ("closed forms vs quadrature", criterion_3),
        ("bound audit", criterion_4),
        ("beamsplitter", criterion_5),
        ("classical coding", criterion_6),
        ("LAN Monte Carlo", criterion_7),
        ("stage-1 miss frequency", criterion_8),
        ("resonance-fluorescence identity", criterion_9),
        ("property suites", criterion_10),
    ];
    // written to the raw handle so the lines survive test output capture
    let mut stdout = std::io::stdout();
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let line = match run() {
            Ok(m) => format!("PASS criterion {}: {name}: {m}\n", k + 1),
            Err(m) => {
                failed.push(k + 1);
                format!("FAIL criterion {}: {name}: {m}\n", k + 1)
            }
        };
        stdout.write_all(line.as_bytes()).unwrap();
        stdout.flush().unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
