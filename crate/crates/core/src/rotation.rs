//! Pauli-basis rotation of a two-qubit gate.
//!
//! `R_{αβ} = ¼ Tr(U† p_α U p_β)` over the sixteen two-qubit Paulis. Local
//! Pauli codes are 4-bit: the lower qubit of the pair in bits 0..2.
//! Matchgates give a block-diagonal `R` with blocks of sizes 1, 4, 6, 4, 1;
//! anything else is split into the connected components of its sparsity
//! pattern.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::{local_pauli_matrix, unitarity_error4, Mat4, UNITARY_TOL};
use crate::pauli::PauliKey;
use crate::scalar::Real;

/// Cross-degree entries above this force the dense path.
pub const CROSS_DEGREE_TOL: f64 = 1e-10;
/// Entries below this are snapped to zero.
pub const SNAP_TOL: f64 = 1e-14;

/// Local codes in graded order, degree 0 to 4.
pub const GRADED_ORDER: [u8; 16] = [
    0b0000, // II
    0b0001, 0b0010, 0b0111, 0b1011, // XI YI ZX ZY
    0b0011, 0b1001, 0b0101, 0b0110, 0b1010, 0b1100, // ZI XY XX YX YY IZ
    0b0100, 0b1000, 0b1101, 0b1110, // IX IY XZ YZ
    0b1111, // ZZ
];

const DEGREE_START: [usize; 6] = [0, 1, 5, 11, 15, 16];

fn local_degree(code: u8) -> usize {
    GRADED_ORDER
        .iter()
        .position(|&c| c == code)
        .map(|p| DEGREE_START.iter().rposition(|&s| s <= p).unwrap())
        .unwrap()
}

/// Two-qubit Paulis of Majorana degree `d`, in graded order.
pub fn graded_basis(d: usize) -> Result<Vec<PauliKey>> {
    if d > 4 {
        return Err(Error::DegreeOutOfRange(d));
    }
    Ok(GRADED_ORDER[DEGREE_START[d]..DEGREE_START[d + 1]]
        .iter()
        .map(|&c| PauliKey::from_code(2, c as u64).expect("two-qubit code"))
        .collect())
}

/// One invariant subspace of the rotation.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Group<T> {
    /// Local codes spanning the subspace.
    pub codes: Vec<u8>,
    /// Heisenberg update `v' = Rᵀ v`, row-major.
    pub heis: Vec<T>,
    /// Forward update `v' = R v`, row-major.
    pub fwd: Vec<T>,
    pub trivial: bool,
}

/// Rotation tables of one two-qubit gate.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationBlocks<T> {
    graded: bool,
    /// `R` over the graded ordering, `full[a][b]` with a, b indices into GRADED_ORDER.
    full: [[f64; 16]; 16],
    pub(crate) groups: Vec<Group<T>>,
    /// Local code → (group, position within group).
    pub(crate) lookup: [(u8, u8); 16],
    max_row_sparsity: usize,
    /// Degree changes `d(β) − d(α)` over nonzero entries, as a bitmask of `Δ + 4`.
    delta_mask: u16,
}

/// Builds the rotation tables of a unitary.
pub fn rotations<T: Real>(u: &Mat4) -> Result<RotationBlocks<T>> {
    let err = unitarity_error4(u);
    if err > UNITARY_TOL || !err.is_finite() {
        return Err(Error::NotUnitary(err));
    }
    let paulis: Vec<Mat4> = GRADED_ORDER.iter().map(|&c| local_pauli_matrix(c)).collect();
    let ud = u.adjoint();
    let mut full = [[0.0; 16]; 16];
    for a in 0..16 {
        let conj = ud * paulis[a] * u;
        for b in 0..16 {
            let tr: Complex64 = (conj * paulis[b]).trace();
            let x = tr.re / 4.0;
            full[a][b] = if x.abs() < SNAP_TOL { 0.0 } else { x };
        }
    }
    Ok(RotationBlocks::from_matrix(full))
}

impl<T: Real> RotationBlocks<T> {
    fn from_matrix(full: [[f64; 16]; 16]) -> Self {
        let deg: Vec<usize> = (0..16)
            .map(|p| DEGREE_START.iter().rposition(|&s| s <= p).unwrap())
            .collect();
        let mut graded = true;
        let mut delta_mask = 0u16;
        let mut max_row_sparsity = 0;
        for a in 0..16 {
            let mut count = 0;
            for b in 0..16 {
                let x = full[a][b];
                if x != 0.0 {
                    count += 1;
                    let delta = deg[b] as i32 - deg[a] as i32;
                    delta_mask |= 1 << (delta + 4);
                    delta_mask |= 1 << (4 - delta);
                }
                if deg[a] != deg[b] && x.abs() > CROSS_DEGREE_TOL {
                    graded = false;
                }
            }
            max_row_sparsity = max_row_sparsity.max(count);
        }
        let components: Vec<Vec<usize>> = if graded {
            (0..5)
                .map(|d| (DEGREE_START[d]..DEGREE_START[d + 1]).collect())
                .collect()
        } else {
            components_of(&full)
        };
        if graded {
            delta_mask = 1 << 4;
        }
        let mut lookup = [(0u8, 0u8); 16];
        let mut groups = Vec::with_capacity(components.len());
        for (gi, comp) in components.iter().enumerate() {
            let dim = comp.len();
            let mut heis = vec![T::zero(); dim * dim];
            let mut fwd = vec![T::zero(); dim * dim];
            let mut trivial = true;
            for (r, &a) in comp.iter().enumerate() {
                for (s, &b) in comp.iter().enumerate() {
                    // heis[r][s] = R[s][r], fwd[r][s] = R[r][s]
                    heis[r * dim + s] = T::of(full[b][a]);
                    fwd[r * dim + s] = T::of(full[a][b]);
                    let target = if r == s { 1.0 } else { 0.0 };
                    if full[a][b] != target {
                        trivial = false;
                    }
                }
                lookup[GRADED_ORDER[a] as usize] = (gi as u8, r as u8);
            }
            groups.push(Group {
                codes: comp.iter().map(|&a| GRADED_ORDER[a]).collect(),
                heis,
                fwd,
                trivial,
            });
        }
        RotationBlocks {
            graded,
            full,
            groups,
            lookup,
            max_row_sparsity,
            delta_mask,
        }
    }

    /// Whether the table is block diagonal in the degree grading.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn max_row_sparsity(&self) -> usize {
        self.max_row_sparsity
    }

    /// `R` over the graded ordering.
    pub fn matrix(&self) -> [[f64; 16]; 16] {
        self.full
    }

    /// Degree-`d` block of `R` (rows and columns over `graded_basis(d)`).
    pub fn block(&self, d: usize) -> Result<Vec<Vec<f64>>> {
        if d > 4 {
            return Err(Error::DegreeOutOfRange(d));
        }
        let range = DEGREE_START[d]..DEGREE_START[d + 1];
        Ok(range
            .clone()
            .map(|a| range.clone().map(|b| self.full[a][b]).collect())
            .collect())
    }

    /// Determinants of the five degree blocks.
    pub fn block_determinants(&self) -> Result<[f64; 5]> {
        let mut out = [0.0; 5];
        for (d, slot) in out.iter_mut().enumerate() {
            let b = self.block(d)?;
            let k = b.len();
            *slot = nalgebra::DMatrix::from_fn(k, k, |r, s| b[r][s]).determinant();
        }
        Ok(out)
    }

    /// `‖R Rᵀ − I‖_∞` (max row sum).
    pub fn orthogonality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..16 {
            let mut row = 0.0;
            for b in 0..16 {
                let dot: f64 = (0..16).map(|k| self.full[a][k] * self.full[b][k]).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                row += (dot - target).abs();
            }
            worst = worst.max(row);
        }
        worst
    }

    /// Possible changes of global Majorana degree under this gate.
    ///
    /// Returns `None` when some entry changes the local degree by an odd amount;
    /// then the global change depends on letters outside the pair.
    pub fn degree_deltas(&self) -> Option<Vec<i32>> {
        let deltas: Vec<i32> = (-4..=4)
            .filter(|&d| self.delta_mask & (1 << (d + 4)) != 0)
            .collect();
        if deltas.iter().any(|d| d % 2 != 0) {
            None
        } else {
            Some(deltas)
        }
    }

    /// Debug dump, one row per nonzero entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,value\n");
        for a in 0..16 {
            for b in 0..16 {
                if self.full[a][b] != 0.0 {
                    let ra = PauliKey::from_code(2, GRADED_ORDER[a] as u64).unwrap();
                    let rb = PauliKey::from_code(2, GRADED_ORDER[b] as u64).unwrap();
                    let _ = writeln!(out, "{ra},{rb},{:.17e}", self.full[a][b]);
                }
            }
        }
        out
    }

    /// Copy with one nontrivial entry flipped in sign. Used to check that the
    /// oracle harness notices a broken table.
    #[doc(hidden)]
    pub fn corrupted(&self) -> Self {
        let mut out = self.clone();
        if let Some(g) = out.groups.iter_mut().find(|g| !g.trivial) {
            g.heis[0] = -g.heis[0];
            g.fwd[0] = -g.fwd[0];
        } else if let Some(g) = out.groups.iter_mut().find(|g| g.codes[0] != 0) {
            g.heis[0] = -g.heis[0];
            g.fwd[0] = -g.fwd[0];
            g.trivial = false;
        }
        out
    }

    pub(crate) fn group_of(&self, code: u8) -> (usize, usize) {
        let (g, p) = self.lookup[code as usize];
        (g as usize, p as usize)
    }
}

fn components_of(full: &[[f64; 16]; 16]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..16).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in 0..16 {
        for b in 0..16 {
            if full[a][b] != 0.0 {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut index = [usize::MAX; 16];
    for a in 0..16 {
        let r = root(&mut parent, a);
        if index[r] == usize::MAX {
            index[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[index[r]].push(a);
    }
    comps
}

/// Degree of a local code in the two-qubit grading.
pub fn local_code_degree(code: u8) -> usize {
    local_degree(code & 0xF)
}

/// Tables keyed by the 4×4 entries rounded at 1e−14.
pub struct RotationCache<T> {
    map: RwLock<HashMap<[i64; 32], Arc<RotationBlocks<T>>>>,
}

impl<T> Default for RotationCache<T> {
    fn default() -> Self {
        RotationCache {
            map: RwLock::new(HashMap::new()),
        }
    }
}

impl<T: Real> RotationCache<T> {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(u: &Mat4) -> [i64; 32] {
        let mut k = [0i64; 32];
        for (i, z) in u.iter().enumerate() {
            k[2 * i] = (z.re / SNAP_TOL).round() as i64;
            k[2 * i + 1] = (z.im / SNAP_TOL).round() as i64;
        }
        k
    }

    pub fn get(&self, u: &Mat4) -> Result<Arc<RotationBlocks<T>>> {
        let key = Self::key(u);
        if let Some(hit) = self.map.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let built = Arc::new(rotations::<T>(u)?);
        self.map
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&built));
        Ok(built)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
