//! Seeded circuit generators.

use std::f64::consts::PI;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gates::{matchgate_from_kak, GateSpec, NamedKind};
use crate::pauli::{Pauli, PauliKey};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_kak(rng: &mut ChaCha8Rng, pair: usize) -> GateSpec {
    let p: [f64; 6] = std::array::from_fn(|_| rng.gen_range(-PI..PI));
    matchgate_from_kak(p, pair)
}

/// Alternating layers on pairs `(1,2), (3,4), ...` and `(2,3), (4,5), ...`.
pub fn brickwall_matchgates(n: usize, depth: usize, seed: u64) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::UnsupportedQubitCount(n));
    }
    let mut r = rng(seed);
    let mut c = Circuit::new(n)?;
    for layer in 0..depth {
        let mut j = 1 + layer % 2;
        while j < n {
            c.push(random_kak(&mut r, j))?;
            j += 2;
        }
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    #[default]
    Random,
    Layered,
}

/// Which gates fill the ZZ positions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZzFlavor {
    /// CPhase with a random angle on a random adjacent pair.
    #[default]
    AdjacentCphase,
    /// SWAP, CZ, CPhase or `exp(iφ Z_a Z_b)`, on any pair.
    Mixed,
}

fn random_zz(rng: &mut ChaCha8Rng, n: usize, flavor: ZzFlavor) -> Result<GateSpec> {
    let theta = rng.gen_range(0.3..(2.0 * PI - 0.3));
    match flavor {
        ZzFlavor::AdjacentCphase => {
            let j = rng.gen_range(1..n);
            Ok(GateSpec::named(NamedKind::CPhase(theta), &[j, j + 1]))
        }
        ZzFlavor::Mixed => {
            let a = rng.gen_range(1..=n);
            let mut b = rng.gen_range(1..n);
            if b >= a {
                b += 1;
            }
            match rng.gen_range(0..4) {
                0 => {
                    let j = rng.gen_range(1..n);
                    Ok(GateSpec::named(NamedKind::Swap, &[j, j + 1]))
                }
                1 => Ok(GateSpec::named(NamedKind::Cz, &[a, b])),
                2 => Ok(GateSpec::named(NamedKind::CPhase(theta), &[a, b])),
                _ => {
                    let g = PauliKey::identity(n)
                        .with_letter(a, Pauli::Z)
                        .with_letter(b, Pauli::Z);
                    GateSpec::pauli_exp(g, rng.gen_range(0.2..1.3))
                }
            }
        }
    }
}

/// `N` gates of which `m` are ZZ-type; the rest are random KAK matchgates on
/// random adjacent pairs. Layered placement puts ZZ gates at `⌊iN/(m+1)⌋`.
pub fn random_mgzz(
    n: usize,
    big_n: usize,
    m: usize,
    placement: Placement,
    seed: u64,
) -> Result<Circuit> {
    random_mgzz_with(n, big_n, m, placement, ZzFlavor::AdjacentCphase, seed)
}

pub fn random_mgzz_with(
    n: usize,
    big_n: usize,
    m: usize,
    placement: Placement,
    flavor: ZzFlavor,
    seed: u64,
) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::UnsupportedQubitCount(n));
    }
    if m > big_n {
        return Err(Error::OutOfRange(format!("m = {m} exceeds N = {big_n}")));
    }
    let mut r = rng(seed);
    let mut is_zz = vec![false; big_n];
    match placement {
        Placement::Layered => {
            for i in 1..=m {
                is_zz[i * big_n / (m + 1)] = true;
            }
        }
        Placement::Random => {
            for p in sample(&mut r, big_n, m) {
                is_zz[p] = true;
            }
        }
    }
    let mut c = Circuit::new(n)?;
    for zz in is_zz {
        if zz {
            c.push(random_zz(&mut r, n, flavor)?)?;
        } else {
            let j = r.gen_range(1..n);
            c.push(random_kak(&mut r, j))?;
        }
    }
    Ok(c)
}

/// ZZ gate positions of a layered circuit.
pub fn layered_positions(big_n: usize, m: usize) -> Vec<usize> {
    (1..=m).map(|i| i * big_n / (m + 1)).collect()
}

fn ladder_into(c: &mut Circuit, first: usize, len: usize, q: usize, r: &mut ChaCha8Rng) -> Result<()> {
    for chain in 0..q {
        for j in (1 + chain)..len {
            let theta = r.gen_range(-PI..PI);
            let a = first + j - 1;
            c.push(GateSpec::named(NamedKind::Givens(theta), &[a, a + 1]))?;
        }
    }
    Ok(())
}

/// `q` chains of nearest-neighbour Givens rotations; chain `c` starts at pair `(1+c, 2+c)`.
pub fn givens_ladder(n: usize, q: usize, seed: u64) -> Result<Circuit> {
    if q == 0 {
        return Err(Error::OutOfRange("q must be at least 1".into()));
    }
    let mut c = Circuit::new(n)?;
    ladder_into(&mut c, 1, n, q, &mut rng(seed))?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FHParams {
    pub n_sites: usize,
    pub trotter_steps: usize,
    pub hopping: f64,
    pub onsite: f64,
    pub dt: f64,
    /// Sites (1-based) that get an onsite CPhase each step.
    pub interaction_sites: Vec<usize>,
    pub q: usize,
    pub seed: u64,
}

impl Default for FHParams {
    fn default() -> Self {
        FHParams {
            n_sites: 4,
            trotter_steps: 1,
            hopping: 1.0,
            onsite: 4.0,
            dt: 0.1,
            interaction_sites: vec![1],
            q: 1,
            seed: 0,
        }
    }
}

impl FHParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 || 2 * self.n_sites > crate::pauli::MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(2 * self.n_sites));
        }
        if self.q == 0 {
            return Err(Error::OutOfRange("q must be at least 1".into()));
        }
        for &s in &self.interaction_sites {
            if s == 0 || s > self.n_sites {
                return Err(Error::QubitOutOfRange {
                    index: s,
                    n: self.n_sites,
                });
            }
        }
        Ok(())
    }

    /// `N = 2 n_sites (T + 1)`, the per-gate normalisation used for profiles.
    pub fn nominal_gate_count(&self) -> usize {
        2 * self.n_sites * (self.trotter_steps + 1)
    }

    /// Gates the builder actually emits.
    pub fn literal_gate_count(&self) -> usize {
        let p = self.n_sites;
        let init: usize = (0..self.q).map(|c| (p - 1).saturating_sub(c)).sum();
        2 * init + self.trotter_steps * (2 * (p - 1) + self.interaction_sites.len())
    }
}

/// `exp(i θ (XX + YY)/2)` on `(j, j+1)`.
pub fn hopping_gate(theta: f64, j: usize) -> GateSpec {
    matchgate_from_kak([0.0, 0.0, 0.0, 0.0, theta / 2.0, theta / 2.0], j)
}

/// Spin-up sites on qubits `1..=p`, spin-down on `p+1..=2p`. After the Givens
/// ladders, each step applies `CPhase(−U dt)` between `s` and `s + p` for each
/// interaction site, then odd-even and even-odd hopping on both registers.
pub fn fermi_hubbard_trotter(params: &FHParams) -> Result<Circuit> {
    params.validate()?;
    let p = params.n_sites;
    let mut r = rng(params.seed);
    let mut c = Circuit::new(2 * p)?;
    for first in [1, p + 1] {
        ladder_into(&mut c, first, p, params.q, &mut r)?;
    }
    let theta = params.hopping * params.dt;
    for _ in 0..params.trotter_steps {
        for &s in &params.interaction_sites {
            c.push(GateSpec::named(
                NamedKind::CPhase(-params.onsite * params.dt),
                &[s, s + p],
            ))?;
        }
        for first in [1, p + 1] {
            for start in [1, 2] {
                let mut j = start;
                while j < p {
                    c.push(hopping_gate(theta, first + j - 1))?;
                    j += 2;
                }
            }
        }
    }
    Ok(c)
}
