use qbounds::*;
use qchan::*;
use qmat::*;

fn sz() -> HermitianOp {
    HermitianOp::from_real_diag(&[1.0, -1.0])
}

#[test]
fn heisenberg_rhs_values() {
    assert_eq!(heisenberg_rhs(1.0, 0.5), 0.0);
    let expect = 0.37 / (0.13f64 * 0.87).sqrt();
    assert!((heisenberg_rhs(1.0, 0.13) - expect).abs() < 1e-15);
    assert!((heisenberg_rhs(1.0, 0.13) - 1.100).abs() < 1e-3);
    assert!(heisenberg_rhs(1.0, 0.0).is_infinite());
    assert_eq!(heisenberg_rhs(0.0, 0.0), 0.0);
}

#[test]
fn heisenberg_zero_disturbance_sentinel() {
    let c = heisenberg_from_values(3.0, 1.0, 0.0, 1e-9).unwrap();
    assert!(c.rhs.is_infinite() && !c.satisfied);
    // identity on the system with a decoupled ancilla: A is central
    let anc = DensityMatrix::pure(&basis(2, 0)).unwrap();
    let t = KrausChannel::dilation(&ComplexMatrix::identity(4), &anc).unwrap();
    let c = heisenberg_check(&t, &sz(), 1e-9).unwrap();
    assert!(c.satisfied && c.rhs == 0.0);
}

#[test]
fn info_disturbance_values() {
    assert!(info_disturbance_check(0.5, 0.5, 1e-9).satisfied);
    assert!(info_disturbance_check(0.0, 0.5, 1e-9).satisfied);
    let c = info_disturbance_check(0.0, 0.3, 1e-9);
    assert!(!c.satisfied && c.applicable);
    let c = info_disturbance_check(0.7, 0.0, 1e-9);
    assert!(!c.applicable && c.satisfied && c.note == "hypothesis void");
}

#[test]
fn coding_bound_values() {
    let (cs, clone2) = coding_bounds(2).unwrap();
    assert_eq!(cs, (3.0 - 5f64.sqrt()) / 4.0);
    assert!((cs - 0.190983).abs() < 1e-6);
    assert_eq!(clone2, 1.0 / 3.0);
    assert_eq!(coding_bounds(3).unwrap().1, 0.5);
    assert!(coding_bounds(1).is_err());
}

#[test]
fn collapse_rhs_values() {
    assert_eq!(collapse_rhs(0.0), 0.0);
    assert!((collapse_rhs(0.5) - 0.5 / 2f64.sqrt()).abs() < 1e-15);
    assert!((nondestructive_collapse_rhs(0.13) - 0.336).abs() < 1e-3);
    assert!((nondestructive_collapse_rhs(0.01) - 0.0099f64.sqrt()).abs() < 1e-15);
    assert_eq!(nondestructive_collapse_rhs(0.0), 0.0);
}

#[test]
fn sharp_family_closed_forms() {
    assert!(sharp_family(0.5).is_err());
    let (t0, _) = sharp_family(0.0).unwrap();
    // p = 0: von Neumann measurement of σz
    let r = t0.restrict_to_system(2).unwrap();
    assert!(qmetrics::coherence(&r, &basis(2, 0), &basis(2, 1)).unwrap() < 1e-15);

    let p = 0.25;
    let (t, b) = sharp_family(p).unwrap();
    let r = t.restrict_to_system(2).unwrap();
    let delta = qmetrics::measurement_infidelity_pointer(&t, &sz(), &sz()).unwrap();
    assert!((delta - 0.25).abs() < 1e-14);
    let dist = qmetrics::max_disturbance(&r).unwrap();
    assert!((dist - (0.5 - 3f64.sqrt() / 4.0)).abs() < 1e-10);
    let coh = qmetrics::coherence(&r, &basis(2, 0), &basis(2, 1)).unwrap();
    assert!((coh - 3f64.sqrt() / 4.0).abs() < 1e-12);
    assert!(t.pointer_image(&b).unwrap().matrix().max_abs_diff(sz().matrix()) < 1e-14);
}

#[test]
fn sharp_family_saturates_all_four() {
    let sweep = sharp_sweep(1e-9).unwrap();
    assert_eq!(sweep.len(), 9);
    for pt in &sweep {
        assert_eq!(pt.checks.len(), 4);
        for c in &pt.checks {
            assert!(c.applicable, "{} void at p={}", c.name, pt.p);
            assert!(c.gap.abs() <= 1e-8, "{} gap {} at p={}", c.name, c.gap, pt.p);
        }
    }
    let c = sharp_family_checks(0.1, 1e-9).unwrap();
    assert!(c.iter().all(|c| c.gap.abs() < 1e-9));
}

#[test]
fn joint_measurement_examples() {
    let mut rng = rng_from_seed(4);
    let t = random_channel_rng(2, 6, 3, &mut rng).unwrap();
    // commuting targets: both pointers on the ancilla diagonal
    let b1 = lift_ancilla(6, &HermitianOp::from_real_diag(&[1.0, 2.0, 3.0])).unwrap();
    let b2 = lift_ancilla(6, &HermitianOp::from_real_diag(&[0.0, -1.0, 5.0])).unwrap();
    let c = joint_measurement_check(&t, &b1, &b2, 1e-9).unwrap();
    assert!(c.satisfied);
    let x = HermitianOp::new(tensor(&pauli::x(), &ComplexMatrix::identity(3))).unwrap();
    let z = HermitianOp::new(tensor(&pauli::z(), &ComplexMatrix::identity(3))).unwrap();
    assert!(matches!(
        joint_measurement_check(&t, &x, &z, 1e-9),
        Err(BoundError::NonCommuting(_))
    ));
}

#[test]
fn collapse_check_validates_inputs() {
    let (t, b) = sharp_family(0.2).unwrap();
    assert!(matches!(
        collapse_check(&t, &b, &basis(2, 0), &basis(2, 1), 1.0, 1.0, 1e-9),
        Err(BoundError::Degenerate(..))
    ));
    assert!(matches!(
        collapse_check(&t, &b, &pauli::plus(), &basis(2, 1), 1.0, -1.0, 1e-9),
        Err(BoundError::NotEigenvector(_))
    ));
    // perfect measurement: Σ = 0 forces full collapse
    let (t0, b0) = sharp_family(0.0).unwrap();
    let c = collapse_check(&t0, &b0, &basis(2, 0), &basis(2, 1), 1.0, -1.0, 1e-9).unwrap();
    assert_eq!(c.rhs, 0.0);
    assert!(c.lhs < 1e-15 && c.satisfied);
}

#[test]
fn nondestructive_check_rejects_destructive_maps() {
    let t = random_channel(2, 4, 2, 9).unwrap();
    assert!(matches!(
        nondestructive_collapse_check(&t, &sz(), &sz(), 1e-9),
        Err(BoundError::Destructive(_))
    ));
}

#[test]
fn decoherence_examples() {
    // commuting A, B with θ_j eigenvectors of B: bound and interference vanish
    let a = HermitianOp::from_real_diag(&[1.0, 2.0, 3.0, 4.0]);
    let b = HermitianOp::from_real_diag(&[1.0, 1.0, -1.0, -1.0]);
    let e = decoherence_estimate(&basis(4, 0), &basis(4, 2), &a, &b, None, 1e-12).unwrap();
    assert_eq!(e.delta_comm, 0.0);
    assert_eq!(e.bound, 0.0);
    assert_eq!(e.measured, 0.0);
    assert!(e.satisfied);

    // CNOT branches |00>, |11> with B = 1⊗σz
    let b = HermitianOp::new(tensor(&ComplexMatrix::identity(2), &pauli::z())).unwrap();
    let a = HermitianOp::new(tensor(&pauli::x(), &pauli::x())).unwrap();
    let e = decoherence_estimate(&basis(4, 0), &basis(4, 3), &a, &b, Some(2.0), 1e-12).unwrap();
    assert_eq!(e.sigma, [0.0, 0.0]);
    assert!(e.satisfied);

    // a claimed commutator bound that is too small is refused
    let bx = HermitianOp::new(tensor(&pauli::x(), &ComplexMatrix::identity(2))).unwrap();
    let az = HermitianOp::new(tensor(&pauli::z(), &ComplexMatrix::identity(2))).unwrap();
    assert!(matches!(
        decoherence_estimate(&basis(4, 0), &basis(4, 3), &az, &bx, Some(0.1), 1e-12),
        Err(BoundError::CommutatorTooLarge { .. })
    ));
    assert!(matches!(
        decoherence_estimate(&basis(4, 0), &basis(4, 1), &a, &HermitianOp::identity(4), None, 1e-12),
        Err(BoundError::EqualExpectations(_))
    ));
}

#[test]
fn lemma_bound_on_random_vectors() {
    // Independent check of |<θ0|Aθ1>| ≤ (δ‖B‖+σ0+σ1)/|b0−b1| ‖A‖.
    let mut rng = rng_from_seed(31);
    for _ in 0..200 {
        let a = random_hermitian(5, &mut rng);
        let b = random_hermitian(5, &mut rng);
        let t0 = random_pure(5, &mut rng);
        let t1 = random_pure(5, &mut rng);
        match decoherence_estimate(&t0, &t1, &a, &b, None, 1e-10) {
            Ok(e) => assert!(e.satisfied, "{e:?}"),
            Err(BoundError::EqualExpectations(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn evaluators_are_unitarily_invariant() {
    let mut rng = rng_from_seed(77);
    let t = random_channel_rng(3, 6, 2, &mut rng).unwrap();
    let b = HermitianOp::from_real_diag(&[0.3, -1.2]);
    let u = random_unitary(3, &mut rng);
    // T'(X) = U† T((U⊗1) X (U†⊗1)) U
    let big = tensor(&u, &ComplexMatrix::identity(2));
    let ops: Vec<ComplexMatrix> = t.ops().iter().map(|v| big.adjoint().dot(v).dot(&u)).collect();
    let t2 = KrausChannel::new(ops).unwrap();
    let h1 = heisenberg_check(&t, &b, 1e-9).unwrap();
    let h2 = heisenberg_check(&t2, &b, 1e-9).unwrap();
    assert!((h1.lhs - h2.lhs).abs() < 1e-10);
    assert!((h1.rhs - h2.rhs).abs() < 1e-8, "{} vs {}", h1.rhs, h2.rhs);
    let c1 = collapse_check_all_pairs(&t, &b, 1e-9).unwrap().unwrap();
    let c2 = collapse_check_all_pairs(&t2, &b, 1e-9).unwrap().unwrap();
    assert!((c1.lhs - c2.lhs).abs() < 1e-10);
    assert!((c1.rhs - c2.rhs).abs() < 1e-10);
}

#[test]
fn audit_is_deterministic_and_clean() {
    let cfg = AuditConfig { instances: 60, seed: 11, tol: 1e-9 };
    let r1 = audit(cfg).unwrap();
    let r2 = audit(cfg).unwrap();
    assert_eq!(r1.total_violations(), 0, "{:?}", r1.violations);
    for (a, b) in r1.summaries.iter().zip(&r2.summaries) {
        assert_eq!(a.min_gap.to_bits(), b.min_gap.to_bits());
    }
    let one = audit_instance(7, 11, 1e-9).unwrap();
    assert_eq!(one.family, InstanceFamily::Nondestructive);
    assert!(r1.summaries.iter().all(|s| s.evaluated > 0), "{:?}", r1.summaries);
}
