//! Gate-by-gate conjugation of a sparse observable through a circuit.
//!
//! Gates are visited in reverse circuit order, so the last gate applied to
//! the state is the first one folded into the observable. Adjacent
//! two-qubit gates go through their rotation tables; single-qubit
//! rotations and non-adjacent gates are lowered to Pauli exponentials.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gates::{GateClass, GateSpec, NamedKind};
use crate::observable::{ProductState, SparseObservable};
use crate::pauli::{codes_commute, product_phase, Pauli, PauliKey};
use crate::rotation::{graded_basis, local_code_degree, RotationBlocks, RotationCache};
use crate::scalar::Real;

/// Above this many product-state keys the interaction picture gives up.
pub const MAX_STATE_KEYS: usize = 1 << 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Heisenberg,
    InteractionPicture,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineConfig {
    /// Pruning threshold; 0 disables pruning.
    pub epsilon: f64,
    pub mode: Mode,
    /// Number of gates evolved on the state side in interaction mode.
    pub cut: Option<usize>,
    pub parallel: bool,
    /// Record wall-clock time per step.
    pub profile: bool,
    #[doc(hidden)]
    pub corrupt_tables: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            epsilon: 0.0,
            mode: Mode::Heisenberg,
            cut: None,
            parallel: false,
            profile: false,
            corrupt_tables: false,
        }
    }
}

impl EngineConfig {
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(Error::NegativeThreshold(self.epsilon));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    /// Index of the gate in the circuit.
    pub step: usize,
    pub gate_kind: String,
    pub class: GateClass,
    /// Pauli rank after the step.
    pub chi: usize,
    pub pruned_mass: f64,
    pub micros: u64,
}

/// Pauli rank after each gate.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RankProfile {
    pub steps: Vec<StepRecord>,
    pub chi_total: u64,
    pub pruned_mass_total: f64,
}

impl RankProfile {
    fn push(&mut self, rec: StepRecord) {
        self.chi_total += rec.chi as u64;
        self.pruned_mass_total += rec.pruned_mass;
        self.steps.push(rec);
    }

    pub fn extend(&mut self, other: &RankProfile) {
        for s in &other.steps {
            self.push(s.clone());
        }
    }

    pub fn max_chi(&self) -> usize {
        self.steps.iter().map(|s| s.chi).max().unwrap_or(0)
    }

    pub fn count_class(&self, class: GateClass) -> usize {
        self.steps.iter().filter(|s| s.class == class).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,gate_kind,chi,pruned_mass,micros\n");
        for s in &self.steps {
            out.push_str(&format!(
                "{},{},{},{:e},{}\n",
                s.step, s.gate_kind, s.chi, s.pruned_mass, s.micros
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }
}

/// Gate lowered to engine primitives.
enum Op<T> {
    Table {
        j: usize,
        blocks: Arc<RotationBlocks<T>>,
    },
    Exp {
        generator: u64,
        angle: f64,
    },
}

fn single_exp(n: usize, qubits: &[(usize, Pauli)], angle: f64) -> (u64, f64) {
    let mut key = PauliKey::identity(n);
    for &(q, p) in qubits {
        key = key.with_letter(q, p);
    }
    (key.code(), angle)
}

fn lower<T: Real>(
    n: usize,
    gate: &GateSpec,
    cache: &RotationCache<T>,
    corrupt: bool,
) -> Result<Vec<Op<T>>> {
    gate.validate(n)?;
    let table = |j: usize, u: &crate::gates::Mat4| -> Result<Op<T>> {
        let mut blocks = cache.get(u)?;
        if corrupt {
            blocks = Arc::new(blocks.corrupted());
        }
        Ok(Op::Table { j, blocks })
    };
    let exp = |pairs: &[(usize, Pauli)], angle: f64| {
        let (generator, angle) = single_exp(n, pairs, angle);
        Op::Exp { generator, angle }
    };
    Ok(match gate {
        GateSpec::NNUnitary { matrix, pair } => vec![table(*pair, matrix)?],
        GateSpec::PauliExp { generator, angle } => vec![Op::Exp {
            generator: generator.code(),
            angle: *angle,
        }],
        GateSpec::Named { kind, targets } => match *kind {
            NamedKind::Rz(t) => vec![exp(&[(targets[0], Pauli::Z)], -t / 2.0)],
            NamedKind::Ry(t) => vec![exp(&[(targets[0], Pauli::Y)], -t / 2.0)],
            _ => {
                let (a, b) = (targets[0], targets[1]);
                if b == a + 1 {
                    vec![table(a, &kind.matrix())?]
                } else if a == b + 1 {
                    // Only the symmetric kinds can arrive here.
                    vec![table(b, &kind.matrix())?]
                } else {
                    let cphase = |theta: f64| {
                        let q = theta / 4.0;
                        vec![
                            exp(&[(a, Pauli::Z), (b, Pauli::Z)], q),
                            exp(&[(a, Pauli::Z)], -q),
                            exp(&[(b, Pauli::Z)], -q),
                        ]
                    };
                    match *kind {
                        NamedKind::CPhase(t) => cphase(t),
                        NamedKind::Cz => cphase(std::f64::consts::PI),
                        NamedKind::Swap => {
                            let q = -std::f64::consts::FRAC_PI_4;
                            vec![
                                exp(&[(a, Pauli::X), (b, Pauli::X)], q),
                                exp(&[(a, Pauli::Y), (b, Pauli::Y)], q),
                                exp(&[(a, Pauli::Z), (b, Pauli::Z)], q),
                            ]
                        }
                        _ => return Err(Error::NotAdjacent(a, b)),
                    }
                }
            }
        },
    })
}

fn gather_update<T: Real>(
    map: &FxHashMap<PauliKey, T>,
    n: u8,
    stem: u64,
    shift: u32,
    codes: &[u8],
    matrix: &[T],
    out: &mut Vec<(PauliKey, T)>,
) {
    let dim = codes.len();
    let mut v = [T::zero(); 16];
    let mut keys = [PauliKey::from_code_unchecked(n as usize, 0); 16];
    for (i, &c) in codes.iter().enumerate() {
        keys[i] = PauliKey::from_code_unchecked(n as usize, stem | ((c as u64) << shift));
        v[i] = map.get(&keys[i]).copied().unwrap_or_else(T::zero);
    }
    for r in 0..dim {
        let row = &matrix[r * dim..(r + 1) * dim];
        let mut acc = T::zero();
        for s in 0..dim {
            acc += row[s] * v[s];
        }
        out.push((keys[r], acc));
    }
}

fn write_back<T: Real>(map: &mut FxHashMap<PauliKey, T>, updates: Vec<(PauliKey, T)>) {
    for (k, v) in updates {
        if v == T::zero() {
            map.remove(&k);
        } else {
            map.insert(k, v);
        }
    }
}

fn apply_table<T: Real>(
    obs: &mut SparseObservable<T>,
    j: usize,
    blocks: &RotationBlocks<T>,
    forward: bool,
    parallel: bool,
) {
    let n = obs.n() as u8;
    let shift = 2 * (j as u32 - 1);
    let mask = 0xFu64 << shift;
    let map = obs.entries();
    // One representative per (stem, group); this is the visited set.
    let mut seen: FxHashSet<(u64, usize)> = FxHashSet::default();
    let mut reps: Vec<(u64, usize)> = Vec::new();
    for key in map.keys() {
        let code = key.code();
        let (g, _) = blocks.group_of(((code >> shift) & 0xF) as u8);
        if blocks.groups[g].trivial {
            continue;
        }
        let stem = code & !mask;
        if seen.insert((stem, g)) {
            reps.push((stem, g));
        }
    }
    let run = |&(stem, g): &(u64, usize), out: &mut Vec<(PauliKey, T)>| {
        let group = &blocks.groups[g];
        let m = if forward { &group.fwd } else { &group.heis };
        gather_update(map, n, stem, shift, &group.codes, m, out);
    };
    let updates: Vec<(PauliKey, T)> = if parallel && reps.len() > 256 {
        reps.par_chunks(64)
            .map(|chunk| {
                let mut out = Vec::with_capacity(chunk.len() * 6);
                for r in chunk {
                    run(r, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    } else {
        let mut out = Vec::with_capacity(reps.len() * 6);
        for r in &reps {
            run(r, &mut out);
        }
        out
    };
    write_back(obs.entries_mut(), updates);
}

fn apply_exp<T: Real>(obs: &mut SparseObservable<T>, generator: u64, angle: f64, parallel: bool) {
    let snap = |x: f64| if x.abs() < crate::rotation::SNAP_TOL { 0.0 } else { x };
    let (s, c) = (2.0 * angle).sin_cos();
    let (s, c) = (snap(s), snap(c));
    if s == 0.0 && c == 1.0 {
        return;
    }
    let (s, c) = (T::of(s), T::of(c));
    let n = obs.n();
    let map = obs.entries();
    let mut seen: FxHashSet<u64> = FxHashSet::default();
    let mut reps: Vec<u64> = Vec::new();
    for key in map.keys() {
        let p = key.code();
        if codes_commute(generator, p) {
            continue;
        }
        let rep = p.min(p ^ generator);
        if seen.insert(rep) {
            reps.push(rep);
        }
    }
    let run = |&p: &u64, out: &mut Vec<(PauliKey, T)>| {
        let k = p ^ generator;
        let kp = PauliKey::from_code_unchecked(n, p);
        let kk = PauliKey::from_code_unchecked(n, k);
        let vp = map.get(&kp).copied().unwrap_or_else(T::zero);
        let vk = map.get(&kk).copied().unwrap_or_else(T::zero);
        // G P = i^q K, and U†PU = cos 2φ P + σ sin 2φ K with σ = Re(−i^{q+1}).
        let sigma_p = if product_phase(generator, p) == 1 {
            T::one()
        } else {
            -T::one()
        };
        let sigma_k = -sigma_p;
        out.push((kp, c * vp + sigma_k * s * vk));
        out.push((kk, c * vk + sigma_p * s * vp));
    };
    let updates: Vec<(PauliKey, T)> = if parallel && reps.len() > 256 {
        reps.par_chunks(64)
            .map(|chunk| {
                let mut out = Vec::with_capacity(chunk.len() * 2);
                for r in chunk {
                    run(r, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    } else {
        let mut out = Vec::with_capacity(reps.len() * 2);
        for r in &reps {
            run(r, &mut out);
        }
        out
    };
    write_back(obs.entries_mut(), updates);
}

/// `e^{-iφG} · obs · e^{iφG}` for the observable `Σ v_P P`.
pub fn apply_pauli_exponential<T: Real>(
    obs: &mut SparseObservable<T>,
    generator: &PauliKey,
    phi: f64,
) -> Result<()> {
    if generator.n() != obs.n() {
        return Err(Error::SizeMismatch {
            left: obs.n(),
            right: generator.n(),
        });
    }
    if generator.is_identity() {
        return Err(Error::IdentityGenerator);
    }
    apply_exp(obs, generator.code(), phi, false);
    Ok(())
}

/// Keys sharing `key`'s stem whose support on `(j, j+1)` runs over the
/// graded basis of the support's degree, in basis order.
pub fn find(key: &PauliKey, j: usize) -> Result<(Vec<PauliKey>, usize)> {
    let (support, stem) = key.support_split(j)?;
    let d = local_code_degree(support);
    let keys = graded_basis(d)?
        .iter()
        .map(|b| PauliKey::recombine(b.code() as u8, &stem, j))
        .collect();
    Ok((keys, d))
}

/// Gathers `keys`, multiplies by `block` and scatters the result back.
pub fn update<T: Real>(
    obs: &mut SparseObservable<T>,
    keys: &[PauliKey],
    block: &[Vec<T>],
) -> Result<()> {
    if block.len() != keys.len() {
        return Err(Error::DimensionMismatch {
            expected: keys.len(),
            got: block.len(),
        });
    }
    if let Some(row) = block.iter().find(|r| r.len() != keys.len()) {
        return Err(Error::DimensionMismatch {
            expected: keys.len(),
            got: row.len(),
        });
    }
    let v: Vec<T> = keys.iter().map(|k| obs.get(k)).collect();
    for (k, row) in keys.iter().zip(block) {
        let x = row.iter().zip(&v).map(|(a, b)| *a * *b).sum();
        obs.insert(*k, x)?;
    }
    Ok(())
}

fn run_gates<T: Real>(
    circuit: &Circuit,
    obs: &mut SparseObservable<T>,
    config: &EngineConfig,
    forward: bool,
    index_offset: usize,
) -> Result<RankProfile> {
    config.validate()?;
    if obs.n() != circuit.n() {
        return Err(Error::SizeMismatch {
            left: circuit.n(),
            right: obs.n(),
        });
    }
    let cache = RotationCache::<T>::new();
    let eps = T::of(config.epsilon);
    let mut profile = RankProfile::default();
    let order: Box<dyn Iterator<Item = usize>> = if forward {
        Box::new(0..circuit.len())
    } else {
        Box::new((0..circuit.len()).rev())
    };
    for i in order {
        let gate = &circuit.gates()[i];
        let start = config.profile.then(Instant::now);
        for op in lower(circuit.n(), gate, &cache, config.corrupt_tables)? {
            match op {
                Op::Table { j, blocks } => apply_table(obs, j, &blocks, forward, config.parallel),
                Op::Exp { generator, angle } => {
                    let a = if forward { -angle } else { angle };
                    apply_exp(obs, generator, a, config.parallel)
                }
            }
        }
        let pruned = obs.prune(eps)?;
        profile.push(StepRecord {
            step: i + index_offset,
            gate_kind: gate.label().to_string(),
            class: gate.class(),
            chi: obs.pauli_rank(),
            pruned_mass: pruned.as_f64(),
            micros: start.map_or(0, |t| t.elapsed().as_micros() as u64),
        });
    }
    Ok(profile)
}

/// Pauli decomposition of `U† M U`.
pub fn conjugate_through<T: Real>(
    circuit: &Circuit,
    obs: &SparseObservable<T>,
    config: &EngineConfig,
) -> Result<(SparseObservable<T>, RankProfile)> {
    let mut out = obs.clone();
    let profile = run_gates(circuit, &mut out, config, false, 0)?;
    Ok((out, profile))
}

/// Pauli coefficients `Tr(P ρ)` of `U ρ U†`, given those of `ρ`.
pub fn evolve_forward<T: Real>(
    circuit: &Circuit,
    rho: &SparseObservable<T>,
    config: &EngineConfig,
) -> Result<(SparseObservable<T>, RankProfile)> {
    let mut out = rho.clone();
    let profile = run_gates(circuit, &mut out, config, true, 0)?;
    Ok((out, profile))
}

/// `⟨Z_j⟩` after the circuit, honouring `config.mode`.
pub fn expectation<T: Real>(
    circuit: &Circuit,
    j: usize,
    state: &ProductState,
    config: &EngineConfig,
) -> Result<(T, RankProfile)> {
    if state.n() != circuit.n() {
        return Err(Error::SizeMismatch {
            left: circuit.n(),
            right: state.n(),
        });
    }
    match config.mode {
        Mode::Heisenberg => {
            let z = SparseObservable::<T>::from_single_z(circuit.n(), j)?;
            let (obs, profile) = conjugate_through(circuit, &z, config)?;
            Ok((obs.expectation_against(state)?, profile))
        }
        Mode::InteractionPicture => {
            let r = expectation_interaction::<T>(circuit, j, state, config)?;
            let mut profile = r.measurement.clone();
            profile.extend(&r.state);
            Ok((r.value, profile))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InteractionResult<T> {
    pub value: T,
    pub cut: usize,
    /// Gates `cut..N`, conjugated onto the measurement.
    pub measurement: RankProfile,
    /// Gates `0..cut`, applied to the state.
    pub state: RankProfile,
}

/// Degree sets are bitmasks over `0..=2n`.
type DegreeMask = u128;

fn full_mask(n: usize) -> DegreeMask {
    if 2 * n + 1 >= 128 {
        DegreeMask::MAX
    } else {
        (1u128 << (2 * n + 1)) - 1
    }
}

fn shift_mask(m: DegreeMask, delta: i32, n: usize) -> DegreeMask {
    let s = if delta >= 0 {
        m << delta as u32
    } else {
        m >> (-delta) as u32
    };
    s & full_mask(n)
}

/// Possible global degree changes of each gate; `None` means unknown.
fn gate_deltas(n: usize, gate: &GateSpec, cache: &RotationCache<f64>) -> Result<Option<Vec<i32>>> {
    let mut total: Vec<i32> = vec![0];
    for op in lower(n, gate, cache, false)? {
        let ds = match op {
            Op::Table { blocks, .. } => match blocks.degree_deltas() {
                Some(d) => d,
                None => return Ok(None),
            },
            Op::Exp { generator, .. } => {
                let d = PauliKey::from_code_unchecked(n, generator).majorana_degree() as i32;
                (0..=d).map(|l| d - 2 * l).collect()
            }
        };
        let mut next: Vec<i32> = Vec::new();
        for a in &total {
            for b in &ds {
                if !next.contains(&(a + b)) {
                    next.push(a + b);
                }
            }
        }
        total = next;
    }
    Ok(Some(total))
}

fn propagate(mask: DegreeMask, deltas: &Option<Vec<i32>>, n: usize) -> DegreeMask {
    match deltas {
        None if mask != 0 => full_mask(n),
        None => 0,
        Some(ds) => ds
            .iter()
            .fold(0, |acc, &d| acc | shift_mask(mask, d, n)),
    }
}

/// Majorana degree contribution of one letter given the parity of X/Y letters above it.
fn letter_degree(letter: u64, parity_above: bool) -> (usize, bool) {
    match (letter, parity_above) {
        (1 | 2, p) => (1, !p),
        (3, false) | (0, true) => (2, parity_above),
        _ => (0, parity_above),
    }
}

/// Degrees carried by nonzero Pauli coefficients of a product state.
fn state_degree_mask(state: &ProductState) -> DegreeMask {
    let n = state.n();
    let table = state.factor_table::<f64>();
    // reach[p] = degrees reachable with parity p of X/Y letters so far.
    let mut reach = [1u128, 0u128];
    for q in (0..n).rev() {
        let mut next = [0u128; 2];
        for (p, &m) in reach.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for letter in 0..4u64 {
                if table[q][letter as usize] == 0.0 {
                    continue;
                }
                let (d, np) = letter_degree(letter, p == 1);
                next[np as usize] |= m << d;
            }
        }
        reach = next;
    }
    reach[0] | reach[1]
}

/// Pauli vector `Tr(P ρ)` of a product state, restricted to degrees in `allowed`.
fn state_vector<T: Real>(state: &ProductState, allowed: DegreeMask) -> Result<SparseObservable<T>> {
    let n = state.n();
    let table = state.factor_table::<f64>();
    let mut out = SparseObservable::<T>::new(n)?;
    let mut count = 0usize;
    // Depth-first from the top qubit: (qubit index, code, degree, parity, value).
    let mut stack: Vec<(usize, u64, usize, bool, f64)> = vec![(n, 0, 0, false, 1.0)];
    while let Some((q, code, deg, parity, value)) = stack.pop() {
        if q == 0 {
            if allowed >> deg & 1 == 1 {
                count += 1;
                if count > MAX_STATE_KEYS {
                    return Err(Error::TooLarge(format!(
                        "more than {MAX_STATE_KEYS} state keys"
                    )));
                }
                out.insert(PauliKey::from_code_unchecked(n, code), T::of(value))?;
            }
            continue;
        }
        // Remaining qubits below can add at most 2 each.
        let window = (2 * (q - 1) + 1) as u32;
        for letter in 0..4u64 {
            let f = table[q - 1][letter as usize];
            if f == 0.0 {
                continue;
            }
            let (d, np) = letter_degree(letter, parity);
            let nd = deg + d;
            let reachable = (allowed >> nd) & ((1u128 << window) - 1);
            if nd > 2 * n || reachable == 0 {
                continue;
            }
            stack.push((q - 1, code | (letter << (2 * (q - 1))), nd, np, value * f));
        }
    }
    Ok(out)
}

fn span_size(mask: DegreeMask, n: usize) -> f64 {
    (0..=2 * n)
        .filter(|&d| mask >> d & 1 == 1)
        .map(|d| crate::bounds::binomial(2 * n, d))
        .sum()
}

/// Cut minimising the predicted total span size on both sides.
pub fn default_cut(circuit: &Circuit, j: usize, state: &ProductState) -> Result<usize> {
    let n = circuit.n();
    let len = circuit.len();
    if len > 4000 {
        return Ok(0);
    }
    let cache = RotationCache::<f64>::new();
    let deltas = circuit
        .gates()
        .iter()
        .map(|g| gate_deltas(n, g, &cache))
        .collect::<Result<Vec<_>>>()?;
    let z = PauliKey::single(n, j, Pauli::Z)?;
    // meas[k] = degrees of the measurement after conjugating gates k..N.
    let mut meas = vec![0u128; len + 1];
    meas[len] = 1 << z.majorana_degree();
    for k in (0..len).rev() {
        meas[k] = propagate(meas[k + 1], &deltas[k], n);
    }
    let meas_cost: Vec<f64> = {
        let mut acc = vec![0.0; len + 1];
        for k in (0..len).rev() {
            acc[k] = acc[k + 1] + span_size(meas[k], n);
        }
        acc
    };
    let mut fwd = vec![0u128; len + 1];
    fwd[0] = state_degree_mask(state);
    for k in 0..len {
        fwd[k + 1] = propagate(fwd[k], &deltas[k], n);
    }
    let mut best = (meas_cost[0], 0);
    for cut in 1..=len {
        let mut back = meas[cut];
        let mut cost = meas_cost[cut];
        for i in (0..cut).rev() {
            cost += span_size(fwd[i + 1] & back, n);
            back = propagate(back, &deltas[i], n);
        }
        if cost < best.0 {
            best = (cost, cut);
        }
    }
    Ok(best.1)
}

/// `⟨Z_j⟩` with the measurement conjugated through gates `cut..N` and the
/// state evolved through gates `0..cut`.
pub fn expectation_interaction<T: Real>(
    circuit: &Circuit,
    j: usize,
    state: &ProductState,
    config: &EngineConfig,
) -> Result<InteractionResult<T>> {
    config.validate()?;
    let n = circuit.n();
    if state.n() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: state.n(),
        });
    }
    let len = circuit.len();
    let cut = match config.cut {
        Some(c) if c > len => return Err(Error::InvalidCut { cut: c, gates: len }),
        Some(c) => c,
        None => default_cut(circuit, j, state)?,
    };
    let z = SparseObservable::<T>::from_single_z(n, j)?;
    let mut meas = z;
    let measurement = run_gates(&circuit.slice(cut..len), &mut meas, config, false, cut)?;

    let cache = RotationCache::<f64>::new();
    let head = circuit.slice(0..cut);
    let mut allowed: DegreeMask = meas
        .keys()
        .fold(0, |acc, k| acc | (1u128 << k.majorana_degree()));
    for g in head.gates().iter().rev() {
        allowed = propagate(allowed, &gate_deltas(n, g, &cache)?, n);
    }
    let mut rho = state_vector::<T>(state, allowed)?;
    let state_profile = run_gates(&head, &mut rho, config, true, 0)?;
    let value = meas.dot(&rho)?;
    Ok(InteractionResult {
        value,
        cut,
        measurement,
        state: state_profile,
    })
}
