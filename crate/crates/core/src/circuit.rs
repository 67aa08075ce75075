//! Ordered gate lists with their JSON file format.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{GateClass, GateRecord, GateSpec};
use crate::pauli::MAX_QUBITS;

/// A circuit on `n` qubits. Gates are listed in application order.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<GateSpec>,
}

#[derive(Serialize, Deserialize)]
struct CircuitFile {
    format: u32,
    n: usize,
    gates: Vec<GateRecord>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(n));
        }
        Ok(Circuit {
            n,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n: usize, gates: Vec<GateSpec>) -> Result<Self> {
        let mut c = Circuit::new(n)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: GateSpec) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[GateSpec] {
        &self.gates
    }

    /// N, the gate count.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// m, the number of parity-preserving non-matchgates.
    pub fn zz_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| g.class() == GateClass::ParityPreservingNonMatchgate)
            .count()
    }

    pub fn classes(&self) -> Vec<GateClass> {
        self.gates.iter().map(GateSpec::class).collect()
    }

    /// Gates `range` as a circuit of their own.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates[range].to_vec(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        if other.n != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(Circuit { n: self.n, gates })
    }

    pub fn to_json(&self) -> String {
        let file = CircuitFile {
            format: 1,
            n: self.n,
            gates: self.gates.iter().map(GateRecord::from).collect(),
        };
        serde_json::to_string_pretty(&file).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CircuitFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.format != 1 {
            return Err(Error::Parse(format!("unknown format {}", file.format)));
        }
        let gates = file
            .gates
            .iter()
            .map(GateRecord::to_spec)
            .collect::<Result<Vec<_>>>()?;
        Circuit::from_gates(file.n, gates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{givens, NamedKind};
    use crate::pauli::PauliKey;

    #[test]
    fn counts_and_round_trip() {
        let c = Circuit::from_gates(
            4,
            vec![
                GateSpec::named(NamedKind::Givens(0.3), &[1, 2]),
                GateSpec::named(NamedKind::Cz, &[1, 4]),
                GateSpec::pauli_exp(PauliKey::encode("ZIIZ").unwrap(), 0.2).unwrap(),
                GateSpec::nn_unitary(givens(0.1), 3).unwrap(),
                GateSpec::named(NamedKind::Swap, &[2, 3]),
            ],
        )
        .unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.zz_count(), 3);
        let back = Circuit::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_bad_targets() {
        let mut c = Circuit::new(3).unwrap();
        assert!(c.push(GateSpec::named(NamedKind::Cz, &[1, 4])).is_err());
        assert!(Circuit::from_json(r#"{"format": 2, "n": 3, "gates": []}"#).is_err());
        assert!(Circuit::new(0).is_err());
    }
}
