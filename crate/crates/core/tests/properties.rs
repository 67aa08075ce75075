use mgzz::oracle::{majorana_dense, pauli_dense};
use mgzz::pauli::SpinorMonomial;
use mgzz::{Observable, PauliKey};
use num_complex::Complex64;
use proptest::prelude::*;

const N: usize = 3;

fn key(code: u64) -> PauliKey {
    PauliKey::from_code(N, code).unwrap()
}

fn i_pow(q: u8) -> Complex64 {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ][(q % 4) as usize]
}

proptest! {
    #[test]
    fn product_matches_dense(a in 0u64..64, b in 0u64..64) {
        let (p, q) = (key(a), key(b));
        let prod = p.multiply(&q).unwrap();
        let dense = pauli_dense(&p) * pauli_dense(&q);
        let want = pauli_dense(&prod.key) * i_pow(prod.phase_exp);
        prop_assert!((dense - want).camax() < 1e-12);
    }

    #[test]
    fn product_is_associative(a in 0u64..64, b in 0u64..64, c in 0u64..64) {
        let (p, q, r) = (key(a), key(b), key(c));
        let left = p.multiply(&q).unwrap();
        let left = (left.key.multiply(&r).unwrap(), left.phase_exp);
        let right = q.multiply(&r).unwrap();
        let right = (p.multiply(&right.key).unwrap(), right.phase_exp);
        prop_assert_eq!(left.0.key, right.0.key);
        prop_assert_eq!((left.0.phase_exp + left.1) % 4, (right.0.phase_exp + right.1) % 4);
    }

    #[test]
    fn commutation_matches_dense(a in 0u64..64, b in 0u64..64) {
        let (p, q) = (key(a), key(b));
        let (dp, dq) = (pauli_dense(&p), pauli_dense(&q));
        let comm = &dp * &dq - &dq * &dp;
        prop_assert_eq!(p.commutes(&q).unwrap(), comm.camax() < 1e-12);
    }

    #[test]
    fn encode_round_trip(code in 0u64..(1 << 20)) {
        let k = PauliKey::from_code(10, code).unwrap();
        prop_assert_eq!(PauliKey::encode(&k.decode()).unwrap(), k);
        prop_assert_eq!(k.decode().len(), 10);
    }

    #[test]
    fn spinor_image_is_consistent(code in 0u64..64) {
        let k = key(code);
        let (mono, q) = k.to_spinor();
        prop_assert_eq!(mono.degree(), k.majorana_degree());
        let back = mono.to_pauli();
        prop_assert_eq!(back.key, k);
        prop_assert_eq!(back.phase_exp % 4, q % 4);
        // c_S as an ordered product of dense Majoranas.
        let mut dense = pauli_dense(&PauliKey::identity(N));
        for &mu in mono.indices() {
            dense = dense * majorana_dense(N, mu).unwrap();
        }
        let want = pauli_dense(&k) * i_pow(q);
        prop_assert!((dense - want).camax() < 1e-12);
    }

    #[test]
    fn monomial_round_trip(bits in 1u64..64) {
        let idx: Vec<usize> = (1..=6).filter(|mu| bits & (1 << (mu - 1)) != 0).collect();
        let mono = SpinorMonomial::new(N, idx.clone()).unwrap();
        let p = mono.to_pauli();
        let (back, _) = p.key.to_spinor();
        prop_assert_eq!(back.indices(), &idx[..]);
    }

    #[test]
    fn prune_is_monotone(
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..40),
        e1 in 0.0f64..0.5,
        e2 in 0.0f64..0.5,
    ) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let mut obs = Observable::new(4).unwrap();
        for (i, c) in coeffs.iter().enumerate() {
            obs.insert(PauliKey::from_code(4, i as u64 + 1).unwrap(), *c).unwrap();
        }
        let l1: f64 = obs.iter().map(|(_, v)| v.abs()).sum();
        let mut a = obs.clone();
        let mut b = obs.clone();
        let ma = a.prune(lo).unwrap();
        let mb = b.prune(hi).unwrap();
        prop_assert!(b.pauli_rank() <= a.pauli_rank());
        prop_assert!(mb + 1e-15 >= ma);
        for k in b.keys() {
            prop_assert!(a.get(k) != 0.0);
        }
        let left: f64 = b.iter().map(|(_, v)| v.abs()).sum();
        prop_assert!((left + mb - l1).abs() < 1e-12);
    }
}
