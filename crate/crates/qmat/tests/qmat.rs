use proptest::prelude::*;
use qmat::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_herm(n: usize, vals: &[f64]) -> HermitianOp {
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        let k = (i * n + j) % vals.len();
        let l = (j * n + i) % vals.len();
        c(vals[k] + vals[l], if i == j { 0.0 } else { vals[k] - vals[l] })
    });
    HermitianOp::new(m.hermitian_part()).unwrap()
}

#[test]
fn tensor_identities() {
    let i4 = tensor(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
    assert_eq!(i4, ComplexMatrix::identity(4));

    let zz = tensor(&pauli::z(), &pauli::z());
    assert_eq!(zz, ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0, 1.0]));

    let up = ComplexMatrix::outer(&pauli::up(), &pauli::up());
    let down = ComplexMatrix::outer(&pauli::down(), &pauli::down());
    let p = tensor(&up, &down);
    let e1 = basis(4, 1);
    assert_eq!(p, ComplexMatrix::outer(&e1, &e1));
}

#[test]
fn tensor_is_associative() {
    let a = pauli::x();
    let b = pauli::y();
    let cm = ComplexMatrix::from_real(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
    assert_eq!(tensor(&tensor(&a, &b), &cm), tensor(&a, &tensor(&b, &cm)));
}

#[test]
fn partial_trace_examples() {
    let rho = DensityMatrix::from_bloch([0.3, -0.2, 0.5]).unwrap();
    let sigma = DensityMatrix::from_bloch([0.0, 0.6, -0.1]).unwrap();
    let joint = tensor(rho.matrix(), sigma.matrix());
    let kept = partial_trace(&joint, &[2, 2], &[1]).unwrap();
    assert!(kept.max_abs_diff(sigma.matrix()) < 1e-15);
    let kept0 = partial_trace(&joint, &[2, 2], &[0]).unwrap();
    assert!(kept0.max_abs_diff(rho.matrix()) < 1e-15);

    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = vec![c(s, 0.0), C64::default(), C64::default(), c(s, 0.0)];
    let bell = ComplexMatrix::outer(&bell, &bell);
    let red = partial_trace(&bell, &[2, 2], &[0]).unwrap();
    assert!(red.max_abs_diff(&ComplexMatrix::identity(2).scale_re(0.5)) < 1e-15);

    assert!(partial_trace(&bell, &[2, 3], &[0]).is_err());
}

#[test]
fn partial_trace_three_factors() {
    // Keep the outer two factors of a ⊗ b ⊗ c.
    let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
    let b = ComplexMatrix::from_real(3, 3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 4.0]).unwrap();
    let cm = pauli::y();
    let full = tensor(&tensor(&a, &b), &cm);
    let kept = partial_trace(&full, &[2, 3, 2], &[0, 2]).unwrap();
    let expect = tensor(&a, &cm).scale_re(7.0);
    assert!(kept.max_abs_diff(&expect) < 1e-13);
}

#[test]
fn eig_examples() {
    let z = HermitianOp::new(pauli::z()).unwrap();
    let (v, vecs) = eig_hermitian(&z).unwrap();
    assert_eq!(v.len(), 2);
    assert!((v[0] - 1.0).abs() < 1e-15 && (v[1] + 1.0).abs() < 1e-15);
    assert!((vecs[(0, 0)].norm() - 1.0).abs() < 1e-14);

    let x = HermitianOp::new(pauli::x()).unwrap();
    let (v, vecs) = eig_hermitian(&x).unwrap();
    assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] + 1.0).abs() < 1e-14);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let top = vecs.col(0);
    assert!((inner(&top, &[c(s, 0.0), c(s, 0.0)]).norm() - 1.0).abs() < 1e-12);
    let bottom = vecs.col(1);
    assert!((inner(&bottom, &[c(s, 0.0), c(-s, 0.0)]).norm() - 1.0).abs() < 1e-12);

    let (v, vecs) = eig_hermitian(&HermitianOp::identity(5)).unwrap();
    assert!(v.iter().all(|x| (x - 1.0).abs() < 1e-15));
    let g = vecs.adjoint_dot(&vecs);
    assert!(g.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-12);
}

#[test]
fn non_hermitian_rejected() {
    let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
    assert!(matches!(HermitianOp::new(m), Err(QmatError::NotHermitian { .. })));
    // Rounding-level asymmetry is absorbed.
    let m = ComplexMatrix::from_real(2, 2, &[1.0, 0.5, 0.5 + 1e-15, 2.0]).unwrap();
    let h = HermitianOp::new(m).unwrap();
    assert_eq!(h.matrix()[(0, 1)], h.matrix()[(1, 0)]);
}

#[test]
fn norms() {
    assert!((op_norm(&pauli::x()) - 1.0).abs() < 1e-14);
    assert!((trace_norm(&pauli::x()) - 2.0).abs() < 1e-14);
    assert_eq!(trace_norm(&ComplexMatrix::zeros(3, 3)), 0.0);
    let up = DensityMatrix::pure(&pauli::up()).unwrap();
    let down = DensityMatrix::pure(&pauli::down()).unwrap();
    assert!((up.trace_distance(&down) - 1.0).abs() < 1e-14);
    // Non-normal matrix goes through the SVD path.
    let n = ComplexMatrix::from_real(2, 2, &[0.0, 2.0, 0.0, 0.0]).unwrap();
    assert!((op_norm(&n) - 2.0).abs() < 1e-14);
    assert!((trace_norm(&n) - 2.0).abs() < 1e-14);
}

#[test]
fn commutator_examples() {
    let x = HermitianOp::new(pauli::x()).unwrap();
    let z = HermitianOp::new(pauli::z()).unwrap();
    let xz = commutator(&x, &z).unwrap();
    let expect = pauli::y().scale(c(0.0, -2.0));
    assert!(xz.max_abs_diff(&expect) < 1e-15);
    assert!((op_norm(&xz) - 2.0).abs() < 1e-14);
    // anti-Hermitian
    assert!(xz.max_abs_diff(&xz.adjoint().scale_re(-1.0)) < 1e-15);
    assert_eq!(commutator(&x, &x).unwrap(), ComplexMatrix::zeros(2, 2));
    assert!(commutator(&x, &HermitianOp::identity(3)).is_err());
}

#[test]
fn truncated_canonical_commutator() {
    // Ladder matrices on levels 0..=40; [x,p] = i away from the cutoff.
    let n = 41;
    let a = ComplexMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            c((j as f64).sqrt(), 0.0)
        } else {
            C64::default()
        }
    });
    let ad = a.adjoint();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = HermitianOp::new((&a + &ad).scale_re(s)).unwrap();
    let p = HermitianOp::new((&a - &ad).scale(c(0.0, -s))).unwrap();
    let k = commutator(&x, &p).unwrap();
    for i in 0..n / 2 {
        for j in 0..n / 2 {
            let expect = if i == j { c(0.0, 1.0) } else { C64::default() };
            assert!((k[(i, j)] - expect).norm() < 1e-10);
        }
    }
}

#[test]
fn density_validation() {
    assert!(DensityMatrix::from_bloch([0.0, 0.0, 1.0]).is_ok());
    assert!(DensityMatrix::from_bloch([0.0, 0.8, 0.8]).is_err());
    let bad = ComplexMatrix::from_real_diag(&[0.6, 0.6]);
    assert!(DensityMatrix::new(bad).is_err());
    let neg = ComplexMatrix::from_real_diag(&[1.1, -0.1]);
    assert!(DensityMatrix::new(neg).is_err());
    let r = [0.1, -0.4, 0.3];
    let rho = DensityMatrix::from_bloch(r).unwrap();
    let back = rho.bloch().unwrap();
    for k in 0..3 {
        assert!((back[k] - r[k]).abs() < 1e-15);
    }
}

#[test]
fn spectral_projectors_group_degenerate_values() {
    let h = HermitianOp::from_real_diag(&[2.0, -1.0, 2.0, 0.5]);
    let sp = h.eig().unwrap();
    let ps = sp.projectors(1e-9);
    assert_eq!(ps.len(), 3);
    assert!((ps[0].0 - 2.0).abs() < 1e-14);
    assert!((ps[0].1.trace().re - 2.0).abs() < 1e-12);
    let mut sum = ComplexMatrix::zeros(4, 4);
    for (_, p) in &ps {
        sum += p;
    }
    assert!(sum.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
}

proptest! {
    #[test]
    fn norms_match_spectrum(vals in prop::collection::vec(-3.0f64..3.0, 6), n in 2usize..6) {
        let h = random_herm(n, &vals);
        let (ev, vecs) = eig_hermitian(&h).unwrap();
        let on = op_norm(h.matrix());
        let tn = trace_norm(h.matrix());
        let emax = ev.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let esum: f64 = ev.iter().map(|x| x.abs()).sum();
        prop_assert!((on - emax).abs() <= 1e-10 * emax.max(1.0));
        prop_assert!((tn - esum).abs() <= 1e-10 * esum.max(1.0));
        // Singular values from the SVD agree as well.
        let sv: f64 = singular_values(h.matrix()).iter().sum();
        prop_assert!((sv - esum).abs() <= 1e-10 * esum.max(1.0));
        // reconstruction and orthonormality
        let lam = ComplexMatrix::from_real_diag(&ev);
        let rec = vecs.dot(&lam).dot(&vecs.adjoint());
        prop_assert!(op_norm(&(&rec - h.matrix())) <= 1e-10 * on.max(1.0));
        prop_assert!(vecs.adjoint_dot(&vecs).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        // descending
        prop_assert!(ev.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn partial_trace_of_product(a in prop::collection::vec(-1.0f64..1.0, 4), b in prop::collection::vec(-1.0f64..1.0, 9)) {
        let am = ComplexMatrix::from_real(2, 2, &a).unwrap();
        let bm = ComplexMatrix::from_fn(3, 3, |i, j| c(b[i * 3 + j], b[j * 3 + i]));
        let full = tensor(&am, &bm);
        let kept = partial_trace(&full, &[2, 3], &[0]).unwrap();
        let expect = am.scale(bm.trace());
        prop_assert!(kept.max_abs_diff(&expect) <= 1e-12);
        let tr_full = full.trace();
        prop_assert!((kept.trace() - tr_full).norm() <= 1e-12);
    }
}
