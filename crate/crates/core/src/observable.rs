//! Sparse Pauli-basis vectors and product-state inputs.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliKey, MAX_QUBITS};
use crate::scalar::Real;

/// An observable as a map from Pauli strings to real coefficients.
///
/// Coefficients are the raw decomposition `M = Σ v_P P`. Exact zeros are
/// never stored, so [`pauli_rank`](Self::pauli_rank) is the number of
/// entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseObservable<T: Real> {
    n: usize,
    entries: FxHashMap<PauliKey, T>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    p: String,
    v: f64,
}

impl<T: Real> SparseObservable<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(n));
        }
        Ok(SparseObservable {
            n,
            entries: FxHashMap::default(),
        })
    }

    /// `{Z_j : 1}`.
    pub fn from_single_z(n: usize, j: usize) -> Result<Self> {
        let mut obs = Self::new(n)?;
        obs.insert(PauliKey::single(n, j, Pauli::Z)?, T::one())?;
        Ok(obs)
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliKey, T)>,
    {
        let mut obs = Self::new(n)?;
        for (key, value) in pairs {
            obs.add(key, value)?;
        }
        Ok(obs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pauli_rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &PauliKey) -> T {
        self.entries.get(key).copied().unwrap_or_else(T::zero)
    }

    fn check_key(&self, key: &PauliKey) -> Result<()> {
        if key.n() != self.n {
            Err(Error::SizeMismatch {
                left: self.n,
                right: key.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Sets a coefficient; zero removes the entry.
    pub fn insert(&mut self, key: PauliKey, value: T) -> Result<()> {
        self.check_key(&key)?;
        self.set(key, value);
        Ok(())
    }

    /// Adds to a coefficient.
    pub fn add(&mut self, key: PauliKey, value: T) -> Result<()> {
        self.check_key(&key)?;
        let v = self.get(&key) + value;
        self.set(key, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn set(&mut self, key: PauliKey, value: T) {
        if value == T::zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliKey, &T)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &PauliKey> {
        self.entries.keys()
    }

    pub(crate) fn entries(&self) -> &FxHashMap<PauliKey, T> {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut FxHashMap<PauliKey, T> {
        &mut self.entries
    }

    /// Entries sorted by key code; used wherever output order matters.
    pub fn sorted(&self) -> Vec<(PauliKey, T)> {
        let mut v: Vec<_> = self.entries.iter().map(|(k, v)| (*k, *v)).collect();
        v.sort_by_key(|(k, _)| k.code());
        v
    }

    /// Σ v_P², the Hilbert-Schmidt norm up to the 2^n factor.
    pub fn norm_squared(&self) -> T {
        self.entries.values().map(|v| *v * *v).sum()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.majorana_degree()).max()
    }

    /// Distinct Majorana degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.entries.keys().map(|k| k.majorana_degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Drops every entry with `|v| < eps` and returns the removed L1 mass.
    pub fn prune(&mut self, eps: T) -> Result<T> {
        if eps < T::zero() || eps.is_nan() {
            return Err(Error::NegativeThreshold(eps.as_f64()));
        }
        if eps == T::zero() {
            return Ok(T::zero());
        }
        let mut mass = T::zero();
        self.entries.retain(|_, v| {
            if v.abs() < eps {
                mass += v.abs();
                false
            } else {
                true
            }
        });
        Ok(mass)
    }

    /// `Tr(M ρ)` for a product state ρ.
    pub fn expectation_against(&self, state: &ProductState) -> Result<T> {
        if state.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: state.n(),
            });
        }
        let factors = state.factor_table::<T>();
        let mut acc = T::zero();
        for (key, v) in self.sorted() {
            acc += v * product_factor(&factors, key.code(), self.n);
        }
        Ok(acc)
    }

    /// Σ_P a_P b_P over shared keys.
    pub fn dot(&self, other: &SparseObservable<T>) -> Result<T> {
        if other.n != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let (small, large) = if self.pauli_rank() <= other.pauli_rank() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms: Vec<(u64, T)> = small
            .entries
            .iter()
            .filter_map(|(k, v)| large.entries.get(k).map(|w| (k.code(), *v * *w)))
            .collect();
        terms.sort_by_key(|t| t.0);
        Ok(terms.into_iter().map(|t| t.1).sum())
    }

    /// Converts coefficients to another scalar type.
    pub fn cast<U: Real>(&self) -> SparseObservable<U> {
        SparseObservable {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (*k, U::of(v.as_f64())))
                .filter(|(_, v)| *v != U::zero())
                .collect(),
        }
    }

    /// One `PAULISTRING coefficient` line per entry, sorted by key.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.sorted() {
            let _ = writeln!(out, "{} {:e}", k, v.as_f64());
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (p, v) = match (parts.next(), parts.next(), parts.next()) {
                (Some(p), Some(v), None) => (p, v),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected `PAULI coefficient`",
                        lineno + 1
                    )))
                }
            };
            let key = PauliKey::encode(p)?;
            let v: f64 = v
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            pairs.push((key, T::of(v)));
        }
        let n = pairs
            .first()
            .map(|(k, _)| k.n())
            .ok_or_else(|| Error::Parse("empty observable".into()))?;
        Self::from_pairs(n, pairs)
    }

    pub fn to_json(&self) -> String {
        let list: Vec<JsonEntry> = self
            .sorted()
            .into_iter()
            .map(|(k, v)| JsonEntry {
                p: k.decode(),
                v: v.as_f64(),
            })
            .collect();
        serde_json::to_string(&list).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let list: Vec<JsonEntry> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let pairs = list
            .iter()
            .map(|e| Ok((PauliKey::encode(&e.p)?, T::of(e.v))))
            .collect::<Result<Vec<_>>>()?;
        let n = pairs
            .first()
            .map(|(k, _)| k.n())
            .ok_or_else(|| Error::Parse("empty observable".into()))?;
        Self::from_pairs(n, pairs)
    }
}

#[inline]
pub(crate) fn product_factor<T: Real>(factors: &[[T; 4]], code: u64, n: usize) -> T {
    let mut t = T::one();
    let mut c = code;
    for f in factors.iter().take(n) {
        t *= f[(c & 3) as usize];
        if t == T::zero() {
            return t;
        }
        c >>= 2;
    }
    t
}

/// Product state given by one Bloch vector per qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductState {
    bloch: Vec<[f64; 3]>,
}

impl ProductState {
    pub fn new(bloch: Vec<[f64; 3]>) -> Result<Self> {
        if bloch.is_empty() || bloch.len() > MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(bloch.len()));
        }
        for (i, r) in bloch.iter().enumerate() {
            let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
            if !norm.is_finite() || norm > 1.0 + 1e-12 {
                return Err(Error::OutOfRange(format!(
                    "Bloch vector of qubit {} has norm {norm}",
                    i + 1
                )));
            }
        }
        Ok(ProductState { bloch })
    }

    /// |0...0>.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![[0.0, 0.0, 1.0]; n])
    }

    /// Computational basis state; `bits[0]` is qubit 1.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        Self::new(
            bits.iter()
                .map(|&b| [0.0, 0.0, if b { -1.0 } else { 1.0 }])
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.bloch.len()
    }

    pub fn bloch(&self) -> &[[f64; 3]] {
        &self.bloch
    }

    /// `Tr(σ ρ_j)` for σ = I, X, Y, Z on each qubit.
    pub fn factor_table<T: Real>(&self) -> Vec<[T; 4]> {
        self.bloch
            .iter()
            .map(|r| [T::one(), T::of(r[0]), T::of(r[1]), T::of(r[2])])
            .collect()
    }

    /// `Tr(P ρ)` for a single Pauli string.
    pub fn pauli_expectation(&self, key: &PauliKey) -> f64 {
        product_factor(&self.factor_table::<f64>(), key.code(), self.n())
    }

    /// Parses `zeros`, `bits:0110` or `bloch:[[x,y,z],...]`.
    pub fn parse_spec(spec: &str, n: usize) -> Result<Self> {
        let state = if spec == "zeros" {
            Self::zeros(n)?
        } else if let Some(bits) = spec.strip_prefix("bits:") {
            let bits = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(Error::Parse(format!("bad bit {other:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Self::from_bits(&bits)?
        } else if let Some(json) = spec.strip_prefix("bloch:") {
            let bloch: Vec<[f64; 3]> =
                serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
            Self::new(bloch)?
        } else {
            return Err(Error::Parse(format!("unknown state spec {spec:?}")));
        };
        if state.n() != n {
            return Err(Error::SizeMismatch {
                left: n,
                right: state.n(),
            });
        }
        Ok(state)
    }
}
