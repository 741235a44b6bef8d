use dynamics_examples::*;
use qmat::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn cnot_examples() {
    let (_, r) = cnot_transfer(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    assert!(r.matrix().max_abs_diff(&ComplexMatrix::from_real_diag(&[1.0, 0.0])) < 1e-15);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (joint, r) = cnot_transfer(c(s, 0.0), c(s, 0.0)).unwrap();
    assert!(r.matrix().max_abs_diff(&ComplexMatrix::from_real_diag(&[0.5, 0.5])) < 1e-15);
    // |θ> = α0|00> + α1|11>
    assert!((joint[0] - c(s, 0.0)).norm() < 1e-15 && (joint[3] - c(s, 0.0)).norm() < 1e-15);
    let (_, r) = cnot_transfer(c(0.3f64.sqrt(), 0.0), c(0.0, 0.7f64.sqrt())).unwrap();
    assert!(r.matrix().max_abs_diff(&ComplexMatrix::from_real_diag(&[0.3, 0.7])) < 1e-12);
    // off-diagonals vanish exactly
    assert_eq!(r.matrix()[(0, 1)], c(0.0, 0.0));
    assert!(matches!(
        cnot_transfer(c(1.0, 0.0), c(1.0, 0.0)),
        Err(DynError::NotNormalized(_))
    ));
}

#[test]
fn chain_branches() {
    let n = 5;
    let th1 = evolve_chain(n, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    let all = (1 << (n + 1)) - 1;
    assert_eq!(th1[all], c(1.0, 0.0));
    let th0 = evolve_chain(n, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    assert_eq!(th0[0], c(1.0, 0.0));
    assert!(matches!(evolve_chain(15, c(1.0, 0.0), c(0.0, 0.0)), Err(DynError::TooLarge(15))));
}

#[test]
fn chain_coherence() {
    for n in [1usize, 4, 10, 14] {
        let m = spin_chain(n, SpinObservable::Micro).unwrap();
        assert_eq!(m.coherence, 0.0);
        assert!((m.bound - 1.0 / n as f64).abs() < 1e-15);
        assert_eq!(m.sigma, [0.0, 0.0]);
        assert!((m.b[0] - m.b[1]).abs() == 2.0);
        let p = spin_chain(n, SpinObservable::Product).unwrap();
        assert!((p.coherence - 0.5).abs() < 1e-15);
        assert!(p.satisfied);
    }
    let mac = spin_chain(10, SpinObservable::Macro).unwrap();
    assert!((mac.bound - 0.1).abs() < 1e-15);
    assert_eq!(mac.interference, 0.0);
    assert_eq!(spin_chain_bound(10), 0.1);
}

#[test]
fn chain_commutator_constant_is_honest() {
    // dense check of ‖[A,B]‖ ≤ (2/N)‖A‖‖B‖ on a short chain
    let n = 3;
    let dim = 1 << (n + 1);
    let sx = pauli::x();
    let sz = pauli::z();
    let id = ComplexMatrix::identity(2);
    let site = |op: &ComplexMatrix, k: usize| {
        // k = 0..n, k = n is the system qubit
        let mut m = ComplexMatrix::identity(1);
        for j in 0..=n {
            m = tensor(&m, if j == k { op } else { &id });
        }
        m
    };
    let mut b = ComplexMatrix::zeros(dim, dim);
    for k in 0..n {
        b += &site(&sz, k).scale_re(1.0 / n as f64);
    }
    let mut mac = ComplexMatrix::zeros(dim, dim);
    for k in 0..=n {
        mac += &site(&sx, k).scale_re(1.0 / (n + 1) as f64);
    }
    let b = HermitianOp::new(b).unwrap();
    for a in [site(&sx, 0), mac] {
        let a = HermitianOp::new(a).unwrap();
        let comm = op_norm(&commutator(&a, &b).unwrap());
        assert!(comm <= 2.0 / n as f64 * a.op_norm().unwrap() * b.op_norm().unwrap() + 1e-12);
    }
}

#[test]
fn thermal_values() {
    assert_eq!(thermal_epsilon(0.0), 0.0);
    assert!((thermal_epsilon(1.0) + 0.7616).abs() < 1e-4);
    assert!((thermal_epsilon(50.0) + 1.0).abs() < 1e-15);
    // ε and the variance (1−ε²)/N by enumeration over chain configurations
    let (beta, n) = (0.8f64, 6usize);
    let w_up = (-beta).exp() / (beta.exp() + (-beta).exp());
    let (mut mean, mut second) = (0.0, 0.0);
    for cfg in 0..(1usize << n) {
        let ups = cfg.count_ones() as usize;
        let prob = w_up.powi(ups as i32) * (1.0 - w_up).powi((n - ups) as i32);
        let b = (2.0 * ups as f64 - n as f64) / n as f64;
        mean += prob * b;
        second += prob * b * b;
    }
    let e = thermal_epsilon(beta);
    assert!((mean - e).abs() < 1e-14);
    assert!((second - mean * mean - (1.0 - e * e) / n as f64).abs() < 1e-14);
    let bound = thermal_chain_bound(beta, n);
    let direct = (2.0 / n as f64 + 2.0 * ((1.0 - e * e) / n as f64).sqrt()) / (2.0 * e.abs());
    assert!((bound - direct).abs() < 1e-14);
}

fn rk4(omega: f64, r0: [f64; 3], t: f64, steps: usize) -> [f64; 3] {
    let f = |r: [f64; 3]| {
        [
            -0.5 * r[0],
            -0.5 * r[1] + omega * r[2],
            -omega * r[1] - r[2] - 1.0,
        ]
    };
    let h = t / steps as f64;
    let mut r = r0;
    let add = |a: [f64; 3], b: [f64; 3], s: f64| [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]];
    for _ in 0..steps {
        let k1 = f(r);
        let k2 = f(add(r, k1, h / 2.0));
        let k3 = f(add(r, k2, h / 2.0));
        let k4 = f(add(r, k3, h));
        for i in 0..3 {
            r[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    r
}

#[test]
fn bloch_exact_matches_rk4() {
    let b0 = BlochVector::new(0.0, 0.0, 1.0).unwrap();
    let r = bloch_evolve(5.0, b0, 1.0).unwrap().to_array();
    let o = rk4(5.0, [0.0, 0.0, 1.0], 1.0, 20_000);
    for i in 0..3 {
        assert!((r[i] - o[i]).abs() < 1e-8, "{r:?} vs {o:?}");
    }
    let b1 = BlochVector::new(0.3, -0.4, 0.5).unwrap();
    let r = bloch_evolve(0.7, b1, 3.5).unwrap().to_array();
    let o = rk4(0.7, b1.to_array(), 3.5, 20_000);
    for i in 0..3 {
        assert!((r[i] - o[i]).abs() < 1e-8);
    }
    assert_eq!(bloch_evolve(2.0, b1, 0.0).unwrap(), b1);
}

#[test]
fn bloch_strong_field_modes() {
    let b0 = BlochVector::new(1.0, 0.0, 0.0).unwrap();
    let r = bloch_evolve_mode(100.0, b0, 2.0, BlochMode::StrongFieldInteraction).unwrap();
    assert!((r.x - (-1.0f64).exp()).abs() < 1e-15 && r.y == 0.0 && r.z == 0.0);
    // lab frame differs from interaction frame only by the Rabi rotation
    let b1 = BlochVector::new(0.0, 0.6, 0.8).unwrap();
    let lab = bloch_evolve_mode(3.0, b1, 1.2, BlochMode::StrongFieldLab).unwrap();
    let int = bloch_evolve_mode(3.0, b1, 1.2, BlochMode::StrongFieldInteraction).unwrap();
    assert!((lab.norm() - int.norm()).abs() < 1e-14);
    // the exact flow approaches the strong-field rotation for large drive
    let omega = 400.0;
    let t = 0.9;
    let ex = bloch_evolve(omega, b1, t).unwrap();
    let sf = bloch_evolve_mode(omega, b1, t, BlochMode::StrongFieldLab).unwrap();
    assert!((ex.x - sf.x).abs() + (ex.y - sf.y).abs() + (ex.z - sf.z).abs() < 1e-2);
}

#[test]
fn bloch_norm_stays_bounded() {
    let dirs = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0], [0.577, 0.577, 0.577]];
    for omega in [0.0, 0.5, 2.0, 10.0] {
        for t in [0.1, 1.0, 4.0, 20.0] {
            for d in dirs {
                let b = BlochVector::new(d[0], d[1], d[2]).unwrap();
                let r = bloch_evolve(omega, b, t).unwrap();
                assert!(r.norm() <= 1.0 + 1e-12);
            }
        }
    }
    assert!(BlochVector::new(1.0, 1.0, 0.0).is_err());
}

#[test]
fn rf_closed_forms() {
    assert_eq!(rf_infidelity_bound(0.0), 0.5);
    assert!((rf_infidelity_bound(1.0) - 0.0593).abs() < 1e-4);
    assert!(rf_infidelity_bound(60.0) < 1e-15);
    for k in 0..=1000 {
        let t = 10.0 * k as f64 / 1000.0;
        assert!(rf_identity_residual(t).abs() < 1e-12);
    }
}

#[test]
fn rf_disturbance_matches_channel_search() {
    for t in [0.2, 1.0, 3.0] {
        let ch = rf_channel(50.0, t, BlochMode::StrongFieldInteraction).unwrap();
        let d = qmetrics::max_disturbance(&ch).unwrap();
        assert!((d - rf_disturbance(t)).abs() < 1e-9, "t={t}: {d}");
        // channel acts on Bloch vectors as the flow does
        let rho = DensityMatrix::from_bloch([0.1, 0.2, -0.3]).unwrap();
        let out = ch.schrodinger_apply(&rho).unwrap().bloch().unwrap();
        let want = bloch_evolve_mode(50.0, BlochVector::new(0.1, 0.2, -0.3).unwrap(), t, BlochMode::StrongFieldInteraction).unwrap();
        assert!((out[0] - want.x).abs() + (out[1] - want.y).abs() + (out[2] - want.z).abs() < 1e-12);
    }
    // the exact driven flow is a valid channel as well
    let ch = rf_channel(2.0, 0.7, BlochMode::Exact).unwrap();
    assert!(ch.unitality_defect() < 1e-10);
}
