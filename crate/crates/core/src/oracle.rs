//! Dense reference computations for small instances.
//!
//! Amplitude index bits run with qubit 1 as the most significant bit, so a
//! Pauli string `P_1 P_2 ... P_n` is the matrix `P_1 ⊗ P_2 ⊗ ... ⊗ P_n`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bounds::binomial_exact;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gates::{kron2, pauli_matrix, GateClass, GateSpec, Mat2, Mat4, NamedKind};
use crate::observable::{ProductState, SparseObservable};
use crate::pauli::{jordan_wigner, Pauli, PauliKey};

pub const MAX_STATEVECTOR_QUBITS: usize = 14;
pub const MAX_DENSE_QUBITS: usize = 6;
/// Largest compound-matrix side built.
pub const MAX_COMPOUND_DIM: usize = 5000;

type CMat = DMatrix<Complex64>;

/// Pure state on at most 14 qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    pub fn from_product(state: &ProductState) -> Result<Self> {
        let n = state.n();
        if n > MAX_STATEVECTOR_QUBITS {
            return Err(Error::TooLarge(format!("{n} qubits for a statevector")));
        }
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for (q, r) in state.bloch().iter().enumerate() {
            let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
            if (norm - 1.0).abs() > 1e-10 {
                return Err(Error::MixedState(q + 1));
            }
            let theta = r[2].clamp(-1.0, 1.0).acos();
            let phi = r[1].atan2(r[0]);
            let a0 = Complex64::new((theta / 2.0).cos(), 0.0);
            let a1 = Complex64::from_polar((theta / 2.0).sin(), phi);
            amps = amps.iter().flat_map(|&a| [a * a0, a * a1]).collect();
        }
        Ok(DenseState { n, amps })
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        DenseState { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn bit(&self, q: usize) -> usize {
        self.n - q
    }

    fn apply_1q(&mut self, q: usize, u: &Mat2) {
        let b = 1usize << self.bit(q);
        for i in 0..self.amps.len() {
            if i & b == 0 {
                let (x, y) = (self.amps[i], self.amps[i | b]);
                self.amps[i] = u[(0, 0)] * x + u[(0, 1)] * y;
                self.amps[i | b] = u[(1, 0)] * x + u[(1, 1)] * y;
            }
        }
    }

    /// `u` acts on `|q_a q_b>` with `q_a` the more significant local bit.
    fn apply_2q(&mut self, a: usize, b: usize, u: &Mat4) {
        let (ba, bb) = (1usize << self.bit(a), 1usize << self.bit(b));
        for i in 0..self.amps.len() {
            if i & ba == 0 && i & bb == 0 {
                let idx = [i, i | bb, i | ba, i | ba | bb];
                let v = idx.map(|k| self.amps[k]);
                for r in 0..4 {
                    self.amps[idx[r]] = (0..4).map(|s| u[(r, s)] * v[s]).sum();
                }
            }
        }
    }

    /// `P |ψ>` for a Pauli string.
    pub fn apply_pauli(&self, key: &PauliKey) -> DenseState {
        let mut flip = 0usize;
        let mut zmask = 0usize;
        let mut ys = 0u32;
        for q in 1..=self.n {
            let b = 1usize << self.bit(q);
            match key.letter(q) {
                Pauli::I => {}
                Pauli::X => flip |= b,
                Pauli::Y => {
                    flip |= b;
                    zmask |= b;
                    ys += 1;
                }
                Pauli::Z => zmask |= b,
            }
        }
        // Y = i X Z.
        let global = Complex64::i().powu(ys);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let sign = if (i & zmask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[i ^ flip] = *a * global * sign;
        }
        DenseState {
            n: self.n,
            amps: out,
        }
    }

    fn apply_pauli_exp(&mut self, key: &PauliKey, phi: f64) {
        let p = self.apply_pauli(key);
        let (c, s) = (phi.cos(), phi.sin());
        for (a, b) in self.amps.iter_mut().zip(&p.amps) {
            *a = *a * c + *b * Complex64::new(0.0, s);
        }
    }

    pub fn apply_gate(&mut self, gate: &GateSpec) -> Result<()> {
        gate.validate(self.n)?;
        match gate {
            GateSpec::NNUnitary { matrix, pair } => self.apply_2q(*pair, pair + 1, matrix),
            GateSpec::PauliExp { generator, angle } => self.apply_pauli_exp(generator, *angle),
            GateSpec::Named { kind, targets } => match *kind {
                NamedKind::Rz(t) => self.apply_1q(targets[0], &crate::gates::rz(t)),
                NamedKind::Ry(t) => self.apply_1q(targets[0], &crate::gates::ry(t)),
                _ => self.apply_2q(targets[0], targets[1], &kind.matrix()),
            },
        }
        Ok(())
    }

    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: circuit.n(),
            });
        }
        for g in circuit.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// `<ψ|P|ψ>`, real part.
    pub fn pauli_expectation(&self, key: &PauliKey) -> f64 {
        let p = self.apply_pauli(key);
        self.amps
            .iter()
            .zip(&p.amps)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }
}

/// `<ψ|U† Z_j U|ψ>` by direct statevector simulation.
pub fn statevector_expectation(circuit: &Circuit, state: &ProductState, j: usize) -> Result<f64> {
    let mut psi = DenseState::from_product(state)?;
    psi.run(circuit)?;
    let z = PauliKey::single(circuit.n(), j, Pauli::Z)?;
    Ok(psi.pauli_expectation(&z))
}

fn check_dense(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        Err(Error::TooLarge(format!("{n} qubits for a dense unitary")))
    } else {
        Ok(())
    }
}

/// Full `2^n × 2^n` unitary of a circuit.
pub fn dense_unitary(circuit: &Circuit) -> Result<CMat> {
    let n = circuit.n();
    check_dense(n)?;
    let dim = 1 << n;
    let mut u = CMat::zeros(dim, dim);
    for col in 0..dim {
        let mut psi = DenseState::basis(n, col);
        psi.run(circuit)?;
        for (row, a) in psi.amps.iter().enumerate() {
            u[(row, col)] = *a;
        }
    }
    Ok(u)
}

/// Dense matrix of a Pauli string.
pub fn pauli_dense(key: &PauliKey) -> CMat {
    let mut m = CMat::from_element(1, 1, Complex64::new(1.0, 0.0));
    for q in 1..=key.n() {
        let p = pauli_matrix(key.letter(q));
        m = m.kronecker(&CMat::from_fn(2, 2, |r, c| p[(r, c)]));
    }
    m
}

fn all_keys(n: usize) -> impl Iterator<Item = PauliKey> {
    (0..(1u64 << (2 * n))).map(move |code| PauliKey::from_code(n, code).expect("valid code"))
}

/// `Tr(P A)` using `P|r> = φ(r)|r xor flip>`.
fn pauli_trace(key: &PauliKey, a: &CMat) -> Complex64 {
    let n = key.n();
    let (mut flip, mut zmask, mut ys) = (0usize, 0usize, 0u32);
    for q in 1..=n {
        let b = 1usize << (n - q);
        match key.letter(q) {
            Pauli::I => {}
            Pauli::X => flip |= b,
            Pauli::Y => {
                flip |= b;
                zmask |= b;
                ys += 1;
            }
            Pauli::Z => zmask |= b,
        }
    }
    let mut t = Complex64::new(0.0, 0.0);
    for r in 0..a.nrows() {
        let x = a[(r, r ^ flip)];
        if (r & zmask).count_ones() % 2 == 1 {
            t -= x;
        } else {
            t += x;
        }
    }
    t * Complex64::i().powu(ys)
}

/// `Tr(A B)` for square matrices.
fn trace_product(a: &CMat, b: &CMat) -> Complex64 {
    let d = a.nrows();
    let mut t = Complex64::new(0.0, 0.0);
    for r in 0..d {
        for c in 0..d {
            t += a[(r, c)] * b[(c, r)];
        }
    }
    t
}

/// Pauli decomposition of `U† M U` by projecting onto all `4^n` strings.
pub fn pauli_conjugation_decompose(
    circuit: &Circuit,
    obs: &SparseObservable<f64>,
) -> Result<SparseObservable<f64>> {
    let n = circuit.n();
    check_dense(n)?;
    if obs.n() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: obs.n(),
        });
    }
    let dim = 1 << n;
    let u = dense_unitary(circuit)?;
    let mut m = CMat::zeros(dim, dim);
    for (k, v) in obs.iter() {
        m += pauli_dense(k) * Complex64::new(*v, 0.0);
    }
    let conj = u.adjoint() * m * &u;
    let mut out = SparseObservable::new(n)?;
    for key in all_keys(n) {
        let v = pauli_trace(&key, &conj).re / dim as f64;
        if v.abs() >= 1e-12 {
            out.insert(key, v)?;
        }
    }
    Ok(out)
}

/// Dense Jordan-Wigner Majorana matrix `c_μ`.
pub fn majorana_dense(n: usize, mu: usize) -> Result<CMat> {
    Ok(pauli_dense(&jordan_wigner(n, mu)?))
}

/// `R` with `U† c_μ U = Σ_ν R_{μν} c_ν`, and its determinant.
pub fn so2n_matrix(circuit: &Circuit) -> Result<(DMatrix<f64>, f64)> {
    let n = circuit.n();
    check_dense(n)?;
    if let Some((i, g)) = circuit
        .gates()
        .iter()
        .enumerate()
        .find(|(_, g)| g.class() != GateClass::Matchgate)
    {
        return Err(Error::NotMatchgate(format!("gate {i} ({})", g.label())));
    }
    let dim = (1 << n) as f64;
    let u = dense_unitary(circuit)?;
    let c: Vec<CMat> = (1..=2 * n)
        .map(|mu| majorana_dense(n, mu))
        .collect::<Result<_>>()?;
    let mut r = DMatrix::zeros(2 * n, 2 * n);
    for mu in 0..2 * n {
        let conj = u.adjoint() * &c[mu] * &u;
        for nu in 0..2 * n {
            r[(mu, nu)] = trace_product(&c[nu], &conj).re / dim;
        }
    }
    let det = r.determinant();
    Ok((r, det))
}

/// Ordered `k`-subsets of `1..=m` in lexicographic order.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == m - k + i {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for t in i..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// Matrix of `k × k` minors of `r`, rows and columns over `k_subsets`.
pub fn compound_matrix(r: &DMatrix<f64>, k: usize) -> Result<DMatrix<f64>> {
    let m = r.nrows();
    if r.ncols() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: r.ncols(),
        });
    }
    if k == 0 || k > m {
        return Err(Error::OutOfRange(format!("order {k} for a {m}×{m} matrix")));
    }
    let size = binomial_exact(m, k).unwrap_or(u128::MAX);
    if size > MAX_COMPOUND_DIM as u128 {
        return Err(Error::TooLarge(format!("compound matrix of side {size}")));
    }
    let subsets = k_subsets(m, k);
    let s = subsets.len();
    let mut out = DMatrix::zeros(s, s);
    for (i, si) in subsets.iter().enumerate() {
        for (j, sj) in subsets.iter().enumerate() {
            let minor = DMatrix::from_fn(k, k, |a, b| r[(si[a] - 1, sj[b] - 1)]);
            out[(i, j)] = minor.determinant();
        }
    }
    Ok(out)
}

/// Two-qubit dense matrix of a local Pauli pair, for table checks.
pub fn two_qubit_pauli(a: Pauli, b: Pauli) -> Mat4 {
    kron2(&pauli_matrix(a), &pauli_matrix(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::cz;

    #[test]
    fn product_states() {
        let c = Circuit::new(3).unwrap();
        let s = ProductState::zeros(3).unwrap();
        assert!((statevector_expectation(&c, &s, 1).unwrap() - 1.0).abs() < 1e-15);
        let plus = ProductState::new(vec![[1.0, 0.0, 0.0]; 3]).unwrap();
        assert!(statevector_expectation(&c, &plus, 2).unwrap().abs() < 1e-15);
        let mixed = ProductState::new(vec![[0.5, 0.0, 0.0]; 3]).unwrap();
        assert_eq!(
            statevector_expectation(&c, &mixed, 1),
            Err(Error::MixedState(1))
        );
    }

    #[test]
    fn bloch_vectors_reproduced() {
        let r = [0.36, -0.48, 0.8];
        let s = ProductState::new(vec![r, [0.0, 1.0, 0.0]]).unwrap();
        let psi = DenseState::from_product(&s).unwrap();
        for (letter, want) in [(Pauli::X, r[0]), (Pauli::Y, r[1]), (Pauli::Z, r[2])] {
            let k = PauliKey::single(2, 1, letter).unwrap();
            assert!((psi.pauli_expectation(&k) - want).abs() < 1e-12);
        }
        let y2 = PauliKey::single(2, 2, Pauli::Y).unwrap();
        assert!((psi.pauli_expectation(&y2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cz_conjugation() {
        let c = Circuit::from_gates(2, vec![GateSpec::nn_unitary(cz(), 1).unwrap()]).unwrap();
        let x1 = SparseObservable::from_pairs(2, [(PauliKey::encode("XI").unwrap(), 1.0)]).unwrap();
        let out = pauli_conjugation_decompose(&c, &x1).unwrap();
        assert_eq!(out.pauli_rank(), 1);
        assert!((out.get(&PauliKey::encode("XZ").unwrap()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fast_trace_matches_dense() {
        let a = CMat::from_fn(8, 8, |r, c| Complex64::new((r * 8 + c) as f64 * 0.3, (r as f64) - (c as f64) * 0.7));
        for key in all_keys(3) {
            let want = trace_product(&pauli_dense(&key), &a);
            assert!((pauli_trace(&key, &a) - want).norm() < 1e-9, "{key}");
        }
    }

    #[test]
    fn subsets_lexicographic() {
        assert_eq!(
            k_subsets(4, 2),
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        assert_eq!(k_subsets(3, 3), vec![vec![1, 2, 3]]);
        assert_eq!(k_subsets(5, 1).len(), 5);
    }

    #[test]
    fn compound_basics() {
        let r = DMatrix::from_fn(4, 4, |a, b| (a * 4 + b) as f64 * 0.1 + if a == b { 1.0 } else { 0.0 });
        assert_eq!(compound_matrix(&r, 1).unwrap(), r);
        let id = DMatrix::<f64>::identity(6, 6);
        assert_eq!(compound_matrix(&id, 3).unwrap(), DMatrix::identity(20, 20));
        assert!(compound_matrix(&id, 7).is_err());
    }
}
