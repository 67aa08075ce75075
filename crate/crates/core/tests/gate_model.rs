mod common;

use common::{c, expm, random_u2, random_u4};
use mgzz::gates::{
    classify, cphase, cphase_decompose, cz, embed_ab, givens, kak_matrix, kron2,
    pauli_matrix, phase_distance2, phase_distance4, ry, rz, single_qubit_euler, split_ab,
    swap, GateClass, GateSpec, Mat2, NamedKind,
};
use mgzz::oracle::{dense_unitary, majorana_dense};
use mgzz::{Circuit, Pauli, PauliKey};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn hopping_gate_is_fermionic_hopping() {
    // a_k = (c_{2k-1} + i c_{2k}) / 2 on two modes.
    let m: Vec<DMatrix<Complex64>> = (1..=4).map(|mu| majorana_dense(2, mu).unwrap()).collect();
    let a1 = (&m[0] + &m[1] * c(0.0, 1.0)) * c(0.5, 0.0);
    let a2 = (&m[2] + &m[3] * c(0.0, 1.0)) * c(0.5, 0.0);
    let h = a1.adjoint() * &a2 + a2.adjoint() * &a1;
    for theta in [0.1, -0.7, 2.3] {
        let want = expm(&(&h * c(0.0, theta)));
        let circuit =
            Circuit::from_gates(2, vec![mgzz::builders::hopping_gate(theta, 1)]).unwrap();
        let got = dense_unitary(&circuit).unwrap();
        assert!((got - want).camax() < 1e-10, "θ = {theta}");
    }
}

#[test]
fn named_gate_classes() {
    let class = |k: NamedKind| classify(&k.matrix()).unwrap();
    assert_eq!(class(NamedKind::Swap), GateClass::ParityPreservingNonMatchgate);
    assert_eq!(class(NamedKind::Cz), GateClass::ParityPreservingNonMatchgate);
    assert_eq!(class(NamedKind::CPhase(1.0)), GateClass::ParityPreservingNonMatchgate);
    assert_eq!(class(NamedKind::Givens(0.4)), GateClass::Matchgate);
    assert_eq!(class(NamedKind::Rz(0.4)), GateClass::Matchgate);
    assert_eq!(class(NamedKind::Ry(0.4)), GateClass::Other);
    assert_eq!(class(NamedKind::CPhase(0.0)), GateClass::Matchgate);
    assert_eq!(
        class(NamedKind::MatchgateKak([0.1, 0.2, 0.3, 0.4, 0.5, 0.6])),
        GateClass::Matchgate
    );
}

#[test]
fn named_matrices_match_definitions() {
    assert_eq!(NamedKind::Swap.matrix(), swap());
    assert_eq!(NamedKind::Cz.matrix(), cz());
    assert!(phase_distance4(&cphase(std::f64::consts::PI), &cz()) < 1e-12);
    assert_eq!(NamedKind::Givens(0.3).matrix(), givens(0.3));
    assert_eq!(NamedKind::Rz(0.3).matrix(), kron2(&rz(0.3), &Mat2::identity()));
    let p = [0.3, -0.2, 1.1, 0.4, 0.9, -1.3];
    assert_eq!(NamedKind::MatchgateKak(p).matrix(), kak_matrix(&p));
    // Rz(θ) = exp(−iθZ/2).
    let z = DMatrix::from_fn(2, 2, |r, s| pauli_matrix(Pauli::Z)[(r, s)]);
    let want = expm(&(z * c(0.0, -0.35)));
    assert!((DMatrix::from_fn(2, 2, |r, s| rz(0.7)[(r, s)]) - want).camax() < 1e-12);
}

#[test]
fn swap_exchanges_qubits() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = random_u2(&mut rng);
    let b = random_u2(&mut rng);
    let lhs = swap() * kron2(&a, &b) * swap();
    assert!((lhs - kron2(&b, &a)).camax() < 1e-12);
}

#[test]
fn random_ab_classification() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let a = random_u2(&mut rng);
        let b = random_u2(&mut rng);
        let a = a / a.determinant().sqrt();
        let b = b / b.determinant().sqrt();
        assert_eq!(classify(&embed_ab(&a, &b)).unwrap(), GateClass::Matchgate);
        let flip = Mat2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
        assert_eq!(
            classify(&embed_ab(&a, &(b * flip))).unwrap(),
            GateClass::ParityPreservingNonMatchgate
        );
        let u = embed_ab(&a, &b);
        let (a2, b2) = split_ab(&u);
        assert_eq!((a2, b2), (a, b));
        assert_eq!(classify(&random_u4(&mut rng)).unwrap(), GateClass::Other);
    }
}

#[test]
fn non_unitary_is_rejected() {
    let m = cz() * c(1.5, 0.0);
    assert!(classify(&m).is_err());
    assert!(GateSpec::nn_unitary(m, 1).is_err());
}

#[test]
fn cphase_decomposition_reassembles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let theta = rng.gen_range(-6.3..6.3);
        let parts = cphase_decompose(theta);
        assert!((parts.reassemble() - cphase(theta)).camax() < 1e-12);
        assert_eq!(classify(&parts.remainder).unwrap(), GateClass::Matchgate);
        let rzz = rz(theta / 2.0);
        assert!(phase_distance4(&parts.remainder, &kron2(&rzz, &rzz)) < 1e-12);
    }
}

#[test]
fn euler_angles_reconstruct() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut cases: Vec<Mat2> = (0..100).map(|_| random_u2(&mut rng)).collect();
    cases.push(Mat2::identity());
    cases.push(ry(std::f64::consts::PI));
    cases.push(rz(0.8));
    for u in cases {
        let (t1, t2, t3) = single_qubit_euler(&u).unwrap();
        let back = rz(t1) * ry(t2) * rz(t3);
        assert!(phase_distance2(&back, &u) < 1e-10);
    }
}

#[test]
fn pauli_exp_classes() {
    let key = |s: &str| PauliKey::encode(s).unwrap();
    let class = |s: &str, phi: f64| GateSpec::pauli_exp(key(s), phi).unwrap().class();
    assert_eq!(class("ZIIZ", 0.3), GateClass::ParityPreservingNonMatchgate);
    assert_eq!(class("ZZII", 0.3), GateClass::ParityPreservingNonMatchgate);
    assert_eq!(class("ZIII", 0.3), GateClass::Matchgate);
    assert_eq!(class("XXII", 0.3), GateClass::Matchgate);
    assert_eq!(class("YIII", 0.3), GateClass::Other);
    assert_eq!(class("ZIIZ", 0.0), GateClass::Matchgate);
    assert_eq!(class("ZIIZ", std::f64::consts::FRAC_PI_2), GateClass::Matchgate);
}

#[test]
fn circuit_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let gates = vec![
        GateSpec::named(NamedKind::Swap, &[1, 2]),
        GateSpec::named(NamedKind::Cz, &[1, 3]),
        GateSpec::named(NamedKind::CPhase(0.123456789), &[3, 1]),
        GateSpec::named(NamedKind::Givens(-1.5), &[2, 3]),
        GateSpec::named(NamedKind::Rz(0.25), &[2]),
        GateSpec::named(NamedKind::Ry(0.75), &[3]),
        mgzz::gates::matchgate_from_kak([0.1, 0.2, 0.3, 0.4, 0.5, 0.6], 2),
        GateSpec::pauli_exp(PauliKey::encode("ZIZ").unwrap(), 0.4).unwrap(),
        GateSpec::nn_unitary(random_u4(&mut rng), 1).unwrap(),
    ];
    let circuit = Circuit::from_gates(3, gates).unwrap();
    let back = Circuit::from_json(&circuit.to_json()).unwrap();
    assert_eq!(back, circuit);
    assert!(Circuit::from_json("{\"format\":1,\"n\":2,\"gates\":[{\"gate\":\"cz\",\"qubits\":[1,3]}]}").is_err());
}

#[test]
fn gate_validation() {
    let mut c3 = Circuit::new(3).unwrap();
    assert!(c3.push(GateSpec::named(NamedKind::Cz, &[1, 4])).is_err());
    assert!(c3.push(GateSpec::named(NamedKind::Cz, &[2, 2])).is_err());
    assert!(c3.push(GateSpec::nn_unitary(cz(), 3).unwrap()).is_err());
    assert!(c3.push(GateSpec::named(NamedKind::Givens(0.1), &[1, 3])).is_err());
    assert!(c3.push(GateSpec::named(NamedKind::Cz, &[3, 1])).is_ok());
}
