//! Packed n-qubit Pauli strings and their Majorana (Jordan-Wigner) structure.
//!
//! A [`PauliKey`] stores qubit `j` (numbered from 1) in bits `2(j-1)` and
//! `2(j-1)+1` of a `u64`, with `I = 00`, `X = 01`, `Y = 10`, `Z = 11`. Keys are
//! Hermitian; any phase produced by a product lives in [`PhasedPauli`].
//!
//! Majorana operators follow the Jordan-Wigner convention
//! `c_{2k-1} = Z_1 ... Z_{k-1} X_k` and `c_{2k} = Z_1 ... Z_{k-1} Y_k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported register.
pub const MAX_QUBITS: usize = 32;

const LO: u64 = 0x5555_5555_5555_5555;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    pub fn from_bits(bits: u64) -> Self {
        match bits & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// An n-qubit Hermitian Pauli string packed two bits per qubit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliKey {
    n: u8,
    code: u64,
}

/// A Pauli string with global phase `i^phase_exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    pub key: PauliKey,
    pub phase_exp: u8,
}

fn valid_mask(n: usize) -> u64 {
    if n >= 32 {
        u64::MAX
    } else {
        (1u64 << (2 * n)) - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        Err(Error::UnsupportedQubitCount(n))
    } else {
        Ok(())
    }
}

// Per-qubit one-hot masks (bit at the even position of each qubit field).
#[inline]
fn letter_masks(code: u64) -> (u64, u64, u64) {
    let lo = code & LO;
    let hi = (code >> 1) & LO;
    (lo & !hi, hi & !lo, lo & hi)
}

/// Phase exponent `q` such that `P Q = i^q (P xor Q)` for packed codes.
#[inline]
pub(crate) fn product_phase(a: u64, b: u64) -> u8 {
    let (ax, ay, az) = letter_masks(a);
    let (bx, by, bz) = letter_masks(b);
    let pos = (ax & by) | (ay & bz) | (az & bx);
    let neg = (ay & bx) | (az & by) | (ax & bz);
    ((pos.count_ones() + 3 * neg.count_ones()) % 4) as u8
}

#[inline]
pub(crate) fn codes_commute(a: u64, b: u64) -> bool {
    let (ax, ay, az) = letter_masks(a);
    let (bx, by, bz) = letter_masks(b);
    let anti = (ax & (by | bz)) | (ay & (bx | bz)) | (az & (bx | by));
    anti.count_ones() % 2 == 0
}

impl PauliKey {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n), "unsupported qubit count {n}");
        PauliKey { n: n as u8, code: 0 }
    }

    /// Builds a key from a raw code, rejecting bits above qubit `n`.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        check_n(n)?;
        if code & !valid_mask(n) != 0 {
            return Err(Error::OutOfRange(format!(
                "code {code:#x} has bits above qubit {n}"
            )));
        }
        Ok(PauliKey { n: n as u8, code })
    }

    #[inline]
    pub(crate) fn from_code_unchecked(n: usize, code: u64) -> Self {
        debug_assert!(code & !valid_mask(n) == 0);
        PauliKey { n: n as u8, code }
    }

    /// Key with `letter` on qubit `j` and identity elsewhere.
    pub fn single(n: usize, j: usize, letter: Pauli) -> Result<Self> {
        check_n(n)?;
        if j == 0 || j > n {
            return Err(Error::QubitOutOfRange { index: j, n });
        }
        Ok(PauliKey {
            n: n as u8,
            code: (letter as u64) << (2 * (j - 1)),
        })
    }

    /// Parses a letter string, leftmost letter is qubit 1.
    pub fn encode(text: &str) -> Result<Self> {
        let n = text.chars().count();
        check_n(n)?;
        let mut code = 0u64;
        for (pos, c) in text.chars().enumerate() {
            let letter = Pauli::from_char(c).ok_or(Error::InvalidPauliLetter {
                letter: c,
                position: pos + 1,
            })?;
            code |= (letter as u64) << (2 * pos);
        }
        Ok(PauliKey { n: n as u8, code })
    }

    pub fn decode(&self) -> String {
        (1..=self.n()).map(|j| self.letter(j).as_char()).collect()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_identity(&self) -> bool {
        self.code == 0
    }

    /// Letter on qubit `j` (1-based). Panics when out of range.
    pub fn letter(&self, j: usize) -> Pauli {
        assert!(j >= 1 && j <= self.n(), "qubit {j} out of range");
        Pauli::from_bits(self.code >> (2 * (j - 1)))
    }

    pub fn with_letter(&self, j: usize, letter: Pauli) -> Self {
        assert!(j >= 1 && j <= self.n(), "qubit {j} out of range");
        let shift = 2 * (j - 1);
        PauliKey {
            n: self.n,
            code: (self.code & !(3 << shift)) | ((letter as u64) << shift),
        }
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        let lo = self.code & LO;
        let hi = (self.code >> 1) & LO;
        (lo | hi).count_ones() as usize
    }

    fn same_size(&self, other: &PauliKey) -> Result<()> {
        if self.n != other.n {
            Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Operator product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliKey) -> Result<PhasedPauli> {
        self.same_size(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &PauliKey) -> PhasedPauli {
        PhasedPauli {
            key: PauliKey {
                n: self.n,
                code: self.code ^ other.code,
            },
            phase_exp: product_phase(self.code, other.code),
        }
    }

    pub fn commutes(&self, other: &PauliKey) -> Result<bool> {
        self.same_size(other)?;
        Ok(codes_commute(self.code, other.code))
    }

    /// Splits into the two-qubit support on `(j, j+1)` (a 4-bit local code,
    /// qubit `j` in the low bits) and the stem with those qubits cleared.
    pub fn support_split(&self, j: usize) -> Result<(u8, PauliKey)> {
        if j == 0 || j >= self.n() {
            return Err(Error::QubitOutOfRange {
                index: j + 1,
                n: self.n(),
            });
        }
        let shift = 2 * (j - 1);
        let support = ((self.code >> shift) & 0xF) as u8;
        let stem = PauliKey {
            n: self.n,
            code: self.code & !(0xF << shift),
        };
        Ok((support, stem))
    }

    /// Inverse of [`support_split`](Self::support_split).
    pub fn recombine(support: u8, stem: &PauliKey, j: usize) -> PauliKey {
        let shift = 2 * (j - 1);
        PauliKey {
            n: stem.n,
            code: (stem.code & !(0xF << shift)) | (((support & 0xF) as u64) << shift),
        }
    }

    /// Degree of the Majorana monomial whose Jordan-Wigner image is this key.
    pub fn majorana_degree(&self) -> usize {
        let (x, y, z) = letter_masks(self.code);
        let xy = x | y;
        let id = !(x | y | z) & LO & valid_mask(self.n());
        // Parity of X/Y letters strictly above each qubit.
        let mut above = xy >> 2;
        above ^= above >> 2;
        above ^= above >> 4;
        above ^= above >> 8;
        above ^= above >> 16;
        above ^= above >> 32;
        above &= LO;
        let pairs = (z & !above) | (id & above);
        (xy.count_ones() + 2 * pairs.count_ones()) as usize
    }

    /// Majorana monomial `c_S` and phase `q` with `c_S = i^q · self`.
    pub fn to_spinor(&self) -> (SpinorMonomial, u8) {
        let n = self.n();
        let mut indices = Vec::new();
        let mut parity = false;
        for k in (1..=n).rev() {
            let letter = self.letter(k);
            let (odd, even) = match (letter, parity) {
                (Pauli::I, false) | (Pauli::Z, true) => (false, false),
                (Pauli::X, false) | (Pauli::Y, true) => (true, false),
                (Pauli::Y, false) | (Pauli::X, true) => (false, true),
                (Pauli::Z, false) | (Pauli::I, true) => (true, true),
            };
            if even {
                indices.push(2 * k);
            }
            if odd {
                indices.push(2 * k - 1);
            }
            if odd != even {
                parity = !parity;
            }
        }
        indices.reverse();
        let mono = SpinorMonomial { n, indices };
        let image = mono.to_pauli();
        debug_assert_eq!(image.key, *self);
        (mono, image.phase_exp)
    }
}

impl fmt::Display for PauliKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decode())
    }
}

impl fmt::Debug for PauliKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliKey({})", self.decode())
    }
}

impl FromStr for PauliKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PauliKey::encode(s)
    }
}

impl Serialize for PauliKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.decode())
    }
}

impl<'de> Deserialize<'de> for PauliKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PauliKey::encode(&s).map_err(serde::de::Error::custom)
    }
}

impl PhasedPauli {
    pub fn new(key: PauliKey, phase_exp: u8) -> Self {
        PhasedPauli {
            key,
            phase_exp: phase_exp % 4,
        }
    }

    /// `(i^a P)(i^b Q) = i^(a+b+q) PQ`.
    pub fn times(&self, other: &PhasedPauli) -> PhasedPauli {
        let prod = self.key.mul_unchecked(&other.key);
        PhasedPauli::new(
            prod.key,
            (self.phase_exp + other.phase_exp + prod.phase_exp) % 4,
        )
    }
}

/// Jordan-Wigner image of the Majorana operator `c_mu`, `1 <= mu <= 2n`.
pub fn jordan_wigner(n: usize, mu: usize) -> Result<PauliKey> {
    check_n(n)?;
    if mu == 0 || mu > 2 * n {
        return Err(Error::InvalidSpinor(format!("index {mu} outside 1..={}", 2 * n)));
    }
    let k = mu.div_ceil(2);
    let string = (0..k - 1).fold(0u64, |acc, q| acc | (3 << (2 * q)));
    let own = if mu % 2 == 1 { Pauli::X } else { Pauli::Y };
    Ok(PauliKey::from_code_unchecked(
        n,
        string | ((own as u64) << (2 * (k - 1))),
    ))
}

/// Ordered product `c_{s_1} c_{s_2} ... c_{s_k}` with `s_1 < ... < s_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinorMonomial {
    n: usize,
    indices: Vec<usize>,
}

impl SpinorMonomial {
    pub fn new(n: usize, indices: Vec<usize>) -> Result<Self> {
        check_n(n)?;
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpinor(format!(
                "indices {indices:?} not strictly increasing"
            )));
        }
        if indices.iter().any(|&i| i == 0 || i > 2 * n) {
            return Err(Error::InvalidSpinor(format!(
                "indices {indices:?} outside 1..={}",
                2 * n
            )));
        }
        Ok(SpinorMonomial { n, indices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    /// Jordan-Wigner image as a phased Pauli string.
    pub fn to_pauli(&self) -> PhasedPauli {
        self.indices.iter().fold(
            PhasedPauli::new(PauliKey::identity(self.n), 0),
            |acc, &mu| {
                let c = jordan_wigner(self.n, mu).expect("indices validated at construction");
                acc.times(&PhasedPauli::new(c, 0))
            },
        )
    }

    /// Number of indices shared with `other`.
    pub fn overlap(&self, other: &SpinorMonomial) -> usize {
        self.indices
            .iter()
            .filter(|i| other.indices.binary_search(i).is_ok())
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_keys(n: usize) -> impl Iterator<Item = PauliKey> {
        (0..(1u64 << (2 * n))).map(move |c| PauliKey::from_code(n, c).unwrap())
    }

    #[test]
    fn encode_identity_is_zero() {
        assert_eq!(PauliKey::encode("IIII").unwrap().code(), 0);
    }

    #[test]
    fn encode_bit_pairs() {
        let k = PauliKey::encode("ZIXY").unwrap();
        let pairs: Vec<u64> = (0..4).map(|q| (k.code() >> (2 * q)) & 3).collect();
        assert_eq!(pairs, vec![0b11, 0b00, 0b01, 0b10]);
    }

    #[test]
    fn encode_round_trip_all_n4() {
        for key in all_keys(4) {
            assert_eq!(PauliKey::encode(&key.decode()).unwrap(), key);
        }
    }

    #[test]
    fn encode_rejects_bad_letter_with_position() {
        assert_eq!(
            PauliKey::encode("XIQZ"),
            Err(Error::InvalidPauliLetter {
                letter: 'Q',
                position: 3
            })
        );
    }

    #[test]
    fn from_code_rejects_high_bits() {
        assert!(PauliKey::from_code(2, 1 << 4).is_err());
        assert!(PauliKey::from_code(2, 0xF).is_ok());
    }

    #[test]
    fn single_qubit_products() {
        let x = PauliKey::encode("X").unwrap();
        let y = PauliKey::encode("Y").unwrap();
        let p = x.multiply(&y).unwrap();
        assert_eq!(p.key.decode(), "Z");
        assert_eq!(p.phase_exp, 1);
        let back = y.multiply(&x).unwrap();
        assert_eq!(back.phase_exp, 3);
    }

    #[test]
    fn self_product_is_identity() {
        for key in all_keys(3) {
            let p = key.multiply(&key).unwrap();
            assert!(p.key.is_identity());
            assert_eq!(p.phase_exp, 0);
        }
    }

    #[test]
    fn multiply_size_mismatch() {
        let a = PauliKey::identity(2);
        let b = PauliKey::identity(3);
        assert!(a.multiply(&b).is_err());
        assert!(a.commutes(&b).is_err());
    }

    #[test]
    fn commutation_basics() {
        let x = PauliKey::encode("X").unwrap();
        let z = PauliKey::encode("Z").unwrap();
        assert!(!x.commutes(&z).unwrap());
        for key in all_keys(3) {
            assert!(key.commutes(&PauliKey::identity(3)).unwrap());
        }
    }

    #[test]
    fn product_phases_reflect_commutation() {
        for p in all_keys(2) {
            for q in all_keys(2) {
                let pq = p.multiply(&q).unwrap();
                let qp = q.multiply(&p).unwrap();
                let diff = (pq.phase_exp + 4 - qp.phase_exp) % 4;
                let expected = if p.commutes(&q).unwrap() { 0 } else { 2 };
                assert_eq!(diff, expected, "{p} {q}");
            }
        }
    }

    #[test]
    fn support_split_worked_example() {
        let k = PauliKey::encode("ZIXY").unwrap();
        let (support, stem) = k.support_split(1).unwrap();
        assert_eq!(support, 0b0011);
        assert_eq!(stem.decode(), "IIXY");
        assert_eq!(PauliKey::recombine(support, &stem, 1), k);
    }

    #[test]
    fn support_split_identity_and_range() {
        let k = PauliKey::identity(4);
        let (support, stem) = k.support_split(2).unwrap();
        assert_eq!(support, 0);
        assert!(stem.is_identity());
        assert!(k.support_split(4).is_err());
        assert!(k.support_split(0).is_err());
    }

    #[test]
    fn jordan_wigner_images() {
        let names: Vec<String> = (1..=4)
            .map(|mu| jordan_wigner(2, mu).unwrap().decode())
            .collect();
        assert_eq!(names, ["XI", "YI", "ZX", "ZY"]);
        assert!(jordan_wigner(2, 5).is_err());
    }

    #[test]
    fn spinor_matches_table_entries() {
        let zi = PauliKey::encode("ZI").unwrap();
        let (mono, q) = zi.to_spinor();
        assert_eq!(mono.indices(), &[1, 2]);
        assert_eq!(q, 1);

        let xi = PauliKey::encode("XI").unwrap();
        let (mono, q) = xi.to_spinor();
        assert_eq!(mono.indices(), &[1]);
        assert_eq!(q, 0);

        let zz = PauliKey::encode("ZZ").unwrap();
        let (mono, q) = zz.to_spinor();
        assert_eq!(mono.indices(), &[1, 2, 3, 4]);
        assert_eq!(q, 2);
    }

    #[test]
    fn spinor_map_is_bijective_up_to_n3() {
        for n in 1..=3 {
            let mut seen = std::collections::HashSet::new();
            for key in all_keys(n) {
                let (mono, q) = key.to_spinor();
                let back = mono.to_pauli();
                assert_eq!(back.key, key);
                assert_eq!(back.phase_exp, q);
                assert!(seen.insert(mono.indices().to_vec()));
            }
            assert_eq!(seen.len(), 1 << (2 * n));
        }
    }

    #[test]
    fn degree_fast_path_matches_peeling() {
        for n in 1..=4 {
            for key in all_keys(n) {
                assert_eq!(key.majorana_degree(), key.to_spinor().0.degree(), "{key}");
            }
        }
    }

    #[test]
    fn degree_of_single_z_is_two() {
        for n in 1..=12 {
            for j in 1..=n {
                let z = PauliKey::single(n, j, Pauli::Z).unwrap();
                assert_eq!(z.majorana_degree(), 2);
            }
        }
    }

    #[test]
    fn degree_histogram_n3_is_binomial() {
        let mut hist = [0usize; 7];
        for key in all_keys(3) {
            hist[key.majorana_degree()] += 1;
        }
        assert_eq!(hist, [1, 6, 15, 20, 15, 6, 1]);
    }

    #[test]
    fn degree_parity_counts_xy_letters() {
        for key in all_keys(4) {
            let xy = (1..=4)
                .filter(|&j| matches!(key.letter(j), Pauli::X | Pauli::Y))
                .count();
            assert_eq!(key.majorana_degree() % 2, xy % 2);
        }
    }

    #[test]
    fn commutation_follows_overlap_parity_rule() {
        for n in 1..=3 {
            for p in all_keys(n) {
                let (mp, _) = p.to_spinor();
                for q in all_keys(n) {
                    let (mq, _) = q.to_spinor();
                    let sign = mp.degree() * mq.degree() - mp.overlap(&mq);
                    assert_eq!(p.commutes(&q).unwrap(), sign % 2 == 0, "{p} {q}");
                }
            }
        }
    }

    #[test]
    fn spinor_monomial_validation() {
        assert!(SpinorMonomial::new(2, vec![2, 1]).is_err());
        assert!(SpinorMonomial::new(2, vec![1, 5]).is_err());
        assert!(SpinorMonomial::new(2, vec![]).unwrap().to_pauli().key.is_identity());
    }
}
