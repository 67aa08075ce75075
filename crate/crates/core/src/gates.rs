//! Gate taxonomy: matchgates `G(A, B)`, parity-preserving non-matchgates and
//! Pauli exponentials, plus the constructors and decompositions used to
//! build matchgate + ZZ circuits.
//!
//! Two-qubit matrices act on `|q_a q_b>` ordered `|00>, |01>, |10>, |11>`
//! with the first target as the more significant bit. `G(A, B)` puts `A` on
//! the even-parity corners (`|00>`, `|11>`) and `B` on the odd block.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliKey};

pub type Mat2 = Matrix2<Complex64>;
pub type Mat4 = Matrix4<Complex64>;

/// Tolerance for gate classification.
pub const CLASSIFY_TOL: f64 = 1e-8;
/// Tolerance for unitarity checks.
pub const UNITARY_TOL: f64 = 1e-10;

const EVEN: [usize; 2] = [0, 3];
const ODD: [usize; 2] = [1, 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Single-qubit Pauli matrix.
pub fn pauli_matrix(p: Pauli) -> Mat2 {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match p {
        Pauli::I => Mat2::new(l, o, o, l),
        Pauli::X => Mat2::new(o, l, l, o),
        Pauli::Y => Mat2::new(o, -i, i, o),
        Pauli::Z => Mat2::new(l, o, o, -l),
    }
}

pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// Two-qubit Pauli matrix for a 4-bit local code (first qubit in the low bits).
pub fn local_pauli_matrix(local: u8) -> Mat4 {
    kron2(
        &pauli_matrix(Pauli::from_bits(local as u64)),
        &pauli_matrix(Pauli::from_bits((local >> 2) as u64)),
    )
}

/// `exp(i φ P)` for a Hermitian involution `P`.
pub fn exp_i_involution4(p: &Mat4, phi: f64) -> Mat4 {
    Mat4::identity() * c(phi.cos(), 0.0) + p * c(0.0, phi.sin())
}

fn exp_i_involution2(p: &Mat2, phi: f64) -> Mat2 {
    Mat2::identity() * c(phi.cos(), 0.0) + p * c(0.0, phi.sin())
}

pub fn rz(theta: f64) -> Mat2 {
    exp_i_involution2(&pauli_matrix(Pauli::Z), -theta / 2.0)
}

pub fn ry(theta: f64) -> Mat2 {
    exp_i_involution2(&pauli_matrix(Pauli::Y), -theta / 2.0)
}

pub fn swap() -> Mat4 {
    let mut m = Mat4::zeros();
    m[(0, 0)] = c(1.0, 0.0);
    m[(1, 2)] = c(1.0, 0.0);
    m[(2, 1)] = c(1.0, 0.0);
    m[(3, 3)] = c(1.0, 0.0);
    m
}

pub fn cz() -> Mat4 {
    cphase(std::f64::consts::PI)
}

/// `diag(1, 1, 1, e^{iθ})`.
pub fn cphase(theta: f64) -> Mat4 {
    let mut m = Mat4::identity();
    m[(3, 3)] = Complex64::from_polar(1.0, theta);
    m
}

/// Rotation by θ in the single-excitation block.
pub fn givens(theta: f64) -> Mat4 {
    let (s, co) = theta.sin_cos();
    let mut m = Mat4::identity();
    m[(1, 1)] = c(co, 0.0);
    m[(1, 2)] = c(-s, 0.0);
    m[(2, 1)] = c(s, 0.0);
    m[(2, 2)] = c(co, 0.0);
    m
}

/// `(e^{iφ1 Z} ⊗ e^{iφ2 Z}) e^{i(a XX + b YY)} (e^{iφ3 Z} ⊗ e^{iφ4 Z})`.
pub fn kak_matrix(p: &[f64; 6]) -> Mat4 {
    let z = pauli_matrix(Pauli::Z);
    let zloc = |phi1: f64, phi2: f64| {
        kron2(&exp_i_involution2(&z, phi1), &exp_i_involution2(&z, phi2))
    };
    let xx = local_pauli_matrix(0b0101);
    let yy = local_pauli_matrix(0b1010);
    let core = exp_i_involution4(&xx, p[4]) * exp_i_involution4(&yy, p[5]);
    zloc(p[0], p[1]) * core * zloc(p[2], p[3])
}

/// Embeds `A` on the even-parity subspace and `B` on the odd one.
pub fn embed_ab(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for (r, &row) in EVEN.iter().enumerate() {
        for (s, &col) in EVEN.iter().enumerate() {
            m[(row, col)] = a[(r, s)];
        }
    }
    for (r, &row) in ODD.iter().enumerate() {
        for (s, &col) in ODD.iter().enumerate() {
            m[(row, col)] = b[(r, s)];
        }
    }
    m
}

/// Even and odd blocks `(A, B)` of a 4×4 matrix.
pub fn split_ab(u: &Mat4) -> (Mat2, Mat2) {
    let a = Mat2::from_fn(|r, s| u[(EVEN[r], EVEN[s])]);
    let b = Mat2::from_fn(|r, s| u[(ODD[r], ODD[s])]);
    (a, b)
}

fn max_abs<const R: usize, const C: usize>(
    m: &nalgebra::SMatrix<Complex64, R, C>,
) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn unitarity_error4(u: &Mat4) -> f64 {
    max_abs(&(u.adjoint() * u - Mat4::identity()))
}

pub fn unitarity_error2(u: &Mat2) -> f64 {
    max_abs(&(u.adjoint() * u - Mat2::identity()))
}

fn require_unitary4(u: &Mat4) -> Result<()> {
    let err = unitarity_error4(u);
    if err > UNITARY_TOL || !err.is_finite() {
        Err(Error::NotUnitary(err))
    } else {
        Ok(())
    }
}

/// `min_φ ‖a − e^{iφ} b‖_max`, zero when the two agree up to global phase.
pub fn phase_distance4(a: &Mat4, b: &Mat4) -> f64 {
    let inner: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let phase = if inner.norm() > 0.0 {
        inner / inner.norm()
    } else {
        c(1.0, 0.0)
    };
    max_abs(&(a - b * phase))
}

pub fn phase_distance2(a: &Mat2, b: &Mat2) -> f64 {
    let inner: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let phase = if inner.norm() > 0.0 {
        inner / inner.norm()
    } else {
        c(1.0, 0.0)
    };
    max_abs(&(a - b * phase))
}

/// Matchgate structure of a two-qubit unitary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateClass {
    Matchgate,
    ParityPreservingNonMatchgate,
    Other,
}

/// Whether all eight entries coupling even and odd parity vanish.
pub fn is_parity_preserving(u: &Mat4) -> bool {
    EVEN.iter().all(|&e| {
        ODD.iter()
            .all(|&o| u[(e, o)].norm() <= CLASSIFY_TOL && u[(o, e)].norm() <= CLASSIFY_TOL)
    })
}

pub fn classify(u: &Mat4) -> Result<GateClass> {
    require_unitary4(u)?;
    if !is_parity_preserving(u) {
        return Ok(GateClass::Other);
    }
    let (a, b) = split_ab(u);
    if (a.determinant() - b.determinant()).norm() <= CLASSIFY_TOL {
        Ok(GateClass::Matchgate)
    } else {
        Ok(GateClass::ParityPreservingNonMatchgate)
    }
}

/// Named gates with their parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NamedKind {
    Swap,
    Cz,
    CPhase(f64),
    Givens(f64),
    Rz(f64),
    Ry(f64),
    MatchgateKak([f64; 6]),
}

impl NamedKind {
    pub fn arity(&self) -> usize {
        match self {
            NamedKind::Rz(_) | NamedKind::Ry(_) => 1,
            _ => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            NamedKind::Swap => "swap",
            NamedKind::Cz => "cz",
            NamedKind::CPhase(_) => "cphase",
            NamedKind::Givens(_) => "givens",
            NamedKind::Rz(_) => "rz",
            NamedKind::Ry(_) => "ry",
            NamedKind::MatchgateKak(_) => "matchgate_kak",
        }
    }

    /// Whether the gate only makes sense on neighbouring qubits.
    fn needs_adjacency(&self) -> bool {
        matches!(self, NamedKind::Givens(_) | NamedKind::MatchgateKak(_))
    }

    /// Local matrix: 4×4 for two-qubit kinds, `U ⊗ I` for one-qubit kinds.
    pub fn matrix(&self) -> Mat4 {
        match *self {
            NamedKind::Swap => swap(),
            NamedKind::Cz => cz(),
            NamedKind::CPhase(t) => cphase(t),
            NamedKind::Givens(t) => givens(t),
            NamedKind::Rz(t) => kron2(&rz(t), &Mat2::identity()),
            NamedKind::Ry(t) => kron2(&ry(t), &Mat2::identity()),
            NamedKind::MatchgateKak(p) => kak_matrix(&p),
        }
    }
}

/// A gate with its qubit targets (qubits numbered from 1).
#[derive(Clone, Debug, PartialEq)]
pub enum GateSpec {
    /// Arbitrary two-qubit unitary on `(pair, pair + 1)`.
    NNUnitary { matrix: Mat4, pair: usize },
    /// `exp(i φ G)` for a non-identity Pauli string `G` of any support.
    PauliExp { generator: PauliKey, angle: f64 },
    Named { kind: NamedKind, targets: Vec<usize> },
}

impl GateSpec {
    pub fn named(kind: NamedKind, targets: &[usize]) -> Self {
        GateSpec::Named {
            kind,
            targets: targets.to_vec(),
        }
    }

    pub fn pauli_exp(generator: PauliKey, angle: f64) -> Result<Self> {
        if generator.is_identity() {
            return Err(Error::IdentityGenerator);
        }
        Ok(GateSpec::PauliExp { generator, angle })
    }

    pub fn nn_unitary(matrix: Mat4, pair: usize) -> Result<Self> {
        require_unitary4(&matrix)?;
        Ok(GateSpec::NNUnitary { matrix, pair })
    }

    pub fn label(&self) -> &'static str {
        match self {
            GateSpec::NNUnitary { .. } => "nn_unitary",
            GateSpec::PauliExp { .. } => "pauli_exp",
            GateSpec::Named { kind, .. } => kind.label(),
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match self {
            GateSpec::NNUnitary { pair, .. } => vec![*pair, pair + 1],
            GateSpec::PauliExp { generator, .. } => (1..=generator.n())
                .filter(|&j| generator.letter(j) != Pauli::I)
                .collect(),
            GateSpec::Named { targets, .. } => targets.clone(),
        }
    }

    /// Checks targets against an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            GateSpec::NNUnitary { matrix, pair } => {
                if *pair == 0 || pair + 1 > n {
                    return Err(Error::QubitOutOfRange {
                        index: pair + 1,
                        n,
                    });
                }
                require_unitary4(matrix)
            }
            GateSpec::PauliExp { generator, angle } => {
                if generator.n() != n {
                    return Err(Error::SizeMismatch {
                        left: n,
                        right: generator.n(),
                    });
                }
                if generator.is_identity() {
                    return Err(Error::IdentityGenerator);
                }
                if !angle.is_finite() {
                    return Err(Error::OutOfRange(format!("angle {angle}")));
                }
                Ok(())
            }
            GateSpec::Named { kind, targets } => {
                if targets.len() != kind.arity() {
                    return Err(Error::DimensionMismatch {
                        expected: kind.arity(),
                        got: targets.len(),
                    });
                }
                for &t in targets {
                    if t == 0 || t > n {
                        return Err(Error::QubitOutOfRange { index: t, n });
                    }
                }
                if targets.len() == 2 {
                    if targets[0] == targets[1] {
                        return Err(Error::OutOfRange(format!(
                            "repeated target {}",
                            targets[0]
                        )));
                    }
                    if kind.needs_adjacency() && targets[1] != targets[0] + 1 {
                        return Err(Error::NotAdjacent(targets[0], targets[1]));
                    }
                }
                Ok(())
            }
        }
    }

    /// Classification; Pauli exponentials are graded by generator degree.
    pub fn class(&self) -> GateClass {
        match self {
            GateSpec::NNUnitary { matrix, .. } => classify(matrix).unwrap_or(GateClass::Other),
            GateSpec::PauliExp { generator, angle } => {
                // exp(iφG) is ±I when sin φ = 0, and ±iG when sin 2φ = 0.
                let d = generator.majorana_degree();
                let trivial = angle.sin().abs() <= CLASSIFY_TOL;
                let pauli = (2.0 * angle).sin().abs() <= CLASSIFY_TOL;
                if trivial || (d % 2 == 0 && (d == 2 || pauli)) {
                    GateClass::Matchgate
                } else if d % 2 == 0 {
                    GateClass::ParityPreservingNonMatchgate
                } else {
                    GateClass::Other
                }
            }
            GateSpec::Named { kind, .. } => {
                classify(&kind.matrix()).unwrap_or(GateClass::Other)
            }
        }
    }
}

/// Builds the matchgate `G(A, B)` on `(pair, pair + 1)`.
pub fn matchgate_from_ab(a: &Mat2, b: &Mat2, pair: usize) -> Result<GateSpec> {
    for (name, m) in [("A", a), ("B", b)] {
        let err = unitarity_error2(m);
        if err > UNITARY_TOL {
            return Err(Error::NotMatchgate(format!("{name} is not unitary ({err:e})")));
        }
    }
    let (da, db) = (a.determinant(), b.determinant());
    if (da - db).norm() > CLASSIFY_TOL {
        return Err(Error::NotMatchgate(format!(
            "det(A) = {da} differs from det(B) = {db}"
        )));
    }
    let real_unit = da.im.abs() <= CLASSIFY_TOL && (da.re.abs() - 1.0).abs() <= CLASSIFY_TOL;
    if !real_unit {
        return Err(Error::NotMatchgate(format!("det(A) = {da} is not ±1")));
    }
    Ok(GateSpec::NNUnitary {
        matrix: embed_ab(a, b),
        pair,
    })
}

pub fn matchgate_from_kak(params: [f64; 6], pair: usize) -> GateSpec {
    GateSpec::Named {
        kind: NamedKind::MatchgateKak(params),
        targets: vec![pair, pair + 1],
    }
}

/// `CPhase(θ) = e^{iθ/4} · e^{i(θ/4) Z⊗Z} · G(Rz(θ), I)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CphaseParts {
    /// Angle φ of the `exp(i φ Z⊗Z)` factor.
    pub zz_angle: f64,
    /// Matchgate remainder `G(Rz(θ), I) = Rz(θ/2) ⊗ Rz(θ/2)`.
    pub remainder: Mat4,
    pub global_phase: f64,
}

pub fn cphase_decompose(theta: f64) -> CphaseParts {
    CphaseParts {
        zz_angle: theta / 4.0,
        remainder: embed_ab(&rz(theta), &Mat2::identity()),
        global_phase: theta / 4.0,
    }
}

impl CphaseParts {
    pub fn reassemble(&self) -> Mat4 {
        let zz = local_pauli_matrix(0b1111);
        exp_i_involution4(&zz, self.zz_angle)
            * self.remainder
            * Complex64::from_polar(1.0, self.global_phase)
    }
}

/// Z-Y-Z Euler angles with `U ≃ Rz(θ1) Ry(θ2) Rz(θ3)` up to global phase.
/// When `θ2` is 0 or π the split between `θ1` and `θ3` is fixed by `θ3 = 0`.
pub fn single_qubit_euler(u: &Mat2) -> Result<(f64, f64, f64)> {
    let err = unitarity_error2(u);
    if err > UNITARY_TOL {
        return Err(Error::NotUnitary(err));
    }
    let su = u / u.determinant().sqrt();
    let (a, b) = (su[(0, 0)], su[(1, 0)]);
    let theta2 = 2.0 * b.norm().atan2(a.norm());
    let gimbal = 1e-12;
    let (theta1, theta3) = if b.norm() <= gimbal {
        (-2.0 * a.arg(), 0.0)
    } else if a.norm() <= gimbal {
        (2.0 * b.arg(), 0.0)
    } else {
        let sum = -2.0 * a.arg();
        let diff = 2.0 * b.arg();
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    Ok((theta1, theta2, theta3))
}

/// On-disk gate record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum GateRecord {
    NnUnitary {
        qubits: [usize; 2],
        matrix: [[[f64; 2]; 4]; 4],
    },
    PauliExp {
        pauli: String,
        phi: f64,
    },
    Swap {
        qubits: [usize; 2],
    },
    Cz {
        qubits: [usize; 2],
    },
    Cphase {
        qubits: [usize; 2],
        theta: f64,
    },
    Givens {
        qubits: [usize; 2],
        theta: f64,
    },
    Rz {
        qubits: [usize; 1],
        theta: f64,
    },
    Ry {
        qubits: [usize; 1],
        theta: f64,
    },
    MatchgateKak {
        qubits: [usize; 2],
        params: [f64; 6],
    },
}

impl From<&GateSpec> for GateRecord {
    fn from(g: &GateSpec) -> Self {
        match g {
            GateSpec::NNUnitary { matrix, pair } => GateRecord::NnUnitary {
                qubits: [*pair, pair + 1],
                matrix: std::array::from_fn(|r| {
                    std::array::from_fn(|s| [matrix[(r, s)].re, matrix[(r, s)].im])
                }),
            },
            GateSpec::PauliExp { generator, angle } => GateRecord::PauliExp {
                pauli: generator.decode(),
                phi: *angle,
            },
            GateSpec::Named { kind, targets } => {
                let two = || [targets[0], targets[1]];
                match *kind {
                    NamedKind::Swap => GateRecord::Swap { qubits: two() },
                    NamedKind::Cz => GateRecord::Cz { qubits: two() },
                    NamedKind::CPhase(theta) => GateRecord::Cphase {
                        qubits: two(),
                        theta,
                    },
                    NamedKind::Givens(theta) => GateRecord::Givens {
                        qubits: two(),
                        theta,
                    },
                    NamedKind::Rz(theta) => GateRecord::Rz {
                        qubits: [targets[0]],
                        theta,
                    },
                    NamedKind::Ry(theta) => GateRecord::Ry {
                        qubits: [targets[0]],
                        theta,
                    },
                    NamedKind::MatchgateKak(params) => GateRecord::MatchgateKak {
                        qubits: two(),
                        params,
                    },
                }
            }
        }
    }
}

impl GateRecord {
    pub fn to_spec(&self) -> Result<GateSpec> {
        Ok(match self {
            GateRecord::NnUnitary { qubits, matrix } => {
                if qubits[1] != qubits[0] + 1 {
                    return Err(Error::NotAdjacent(qubits[0], qubits[1]));
                }
                let m = Mat4::from_fn(|r, s| c(matrix[r][s][0], matrix[r][s][1]));
                GateSpec::nn_unitary(m, qubits[0])?
            }
            GateRecord::PauliExp { pauli, phi } => {
                GateSpec::pauli_exp(PauliKey::encode(pauli)?, *phi)?
            }
            GateRecord::Swap { qubits } => GateSpec::named(NamedKind::Swap, qubits),
            GateRecord::Cz { qubits } => GateSpec::named(NamedKind::Cz, qubits),
            GateRecord::Cphase { qubits, theta } => {
                GateSpec::named(NamedKind::CPhase(*theta), qubits)
            }
            GateRecord::Givens { qubits, theta } => {
                GateSpec::named(NamedKind::Givens(*theta), qubits)
            }
            GateRecord::Rz { qubits, theta } => GateSpec::named(NamedKind::Rz(*theta), qubits),
            GateRecord::Ry { qubits, theta } => GateSpec::named(NamedKind::Ry(*theta), qubits),
            GateRecord::MatchgateKak { qubits, params } => {
                GateSpec::named(NamedKind::MatchgateKak(*params), qubits)
            }
        })
    }
}
