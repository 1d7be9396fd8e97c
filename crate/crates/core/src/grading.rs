//! The degree group Z_2^n: parity, the bi-additive pairing, the Koszul sign
//! rule, and the total ordering of degrees (all even degrees before all odd
//! ones, each block sorted lexicographically).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};

/// An element of Z_2^n, stored as a fixed-length bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeVector {
    bits: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl DegreeVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Config("degree vector must have length >= 1".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Config("degree vector entries must be 0 or 1".into()));
        }
        Ok(DegreeVector { bits })
    }

    pub fn zero(n: usize) -> Self {
        DegreeVector { bits: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Componentwise sum mod 2. Every element is its own inverse.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DegreeLength(self.len(), other.len()));
        }
        Ok(DegreeVector {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| (a + b) % 2)
                .collect(),
        })
    }

    /// The bi-additive pairing <a,b> = sum_i a_i b_i mod 2.
    pub fn pairing(&self, other: &Self) -> Result<u8> {
        if self.len() != other.len() {
            return Err(Error::DegreeLength(self.len(), other.len()));
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a * b)
            .sum::<u8>()
            % 2)
    }

    /// Even iff <a,a> = 0.
    pub fn parity(&self) -> Parity {
        if self.pairing(self).expect("same length") == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// The sign rule (-1)^<a,b>.
    pub fn sign(&self, other: &Self) -> Result<i8> {
        Ok(if self.pairing(other)? == 0 { 1 } else { -1 })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.bits.iter().map(|&b| Value::from(b)).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("degree must be an array of 0/1".into()))?;
        let bits = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&b| b <= 1)
                    .map(|b| b as u8)
                    .ok_or_else(|| Error::Json("degree entries must be 0 or 1".into()))
            })
            .collect::<Result<Vec<u8>>>()?;
        DegreeVector::new(bits)
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// All 2^n degrees in the canonical chain order: even degrees first, then odd
/// ones, each block lexicographic (first differing bit decides, smaller bit
/// first). The result is indexed gamma_0 .. gamma_q with q = 2^n - 1.
pub fn enumerate_degrees(n: usize) -> Vec<DegreeVector> {
    assert!(n >= 1, "n must be >= 1");
    let total = 1usize << n;
    let mut all: Vec<DegreeVector> = (0..total)
        .map(|code| DegreeVector {
            bits: (0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8).collect(),
        })
        .collect();
    all.sort_by(|a, b| {
        let pa = !a.is_even() as u8;
        let pb = !b.is_even() as u8;
        pa.cmp(&pb).then_with(|| a.bits.cmp(&b.bits))
    });
    all
}

/// Engine-level grading configuration: the ambient n, fixed at construction,
/// with the ordered degree chain and reverse lookup. All block indices in the
/// rest of the engine refer to positions in this chain, not raw bit patterns.
#[derive(Debug)]
pub struct Grading {
    n: usize,
    degrees: Vec<DegreeVector>,
    position: HashMap<DegreeVector, usize>,
}

impl Grading {
    pub fn new(n: usize) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::Config("n must be >= 1".into()));
        }
        if n > 16 {
            return Err(Error::Config("n larger than 16 is not supported".into()));
        }
        let degrees = enumerate_degrees(n);
        let position = degrees
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        Ok(Arc::new(Grading {
            n,
            degrees,
            position,
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// q = 2^n - 1, the index of the last degree in the chain.
    pub fn q(&self) -> usize {
        (1 << self.n) - 1
    }

    /// Number of degree classes, 2^n.
    pub fn count(&self) -> usize {
        1 << self.n
    }

    pub fn degrees(&self) -> &[DegreeVector] {
        &self.degrees
    }

    pub fn degree(&self, idx: usize) -> &DegreeVector {
        &self.degrees[idx]
    }

    pub fn zero_degree(&self) -> &DegreeVector {
        &self.degrees[0]
    }

    pub fn index_of(&self, d: &DegreeVector) -> Result<usize> {
        self.position
            .get(d)
            .copied()
            .ok_or_else(|| Error::DegreeLength(d.len(), self.n))
    }

    /// Index of gamma_i + gamma_j in the chain.
    pub fn add_indices(&self, i: usize, j: usize) -> usize {
        let sum = self.degrees[i].add(&self.degrees[j]).expect("same ambient n");
        *self.position.get(&sum).expect("closed under addition")
    }
}

impl PartialEq for Grading {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}
impl Eq for Grading {}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(bits: &[u8]) -> DegreeVector {
        DegreeVector::new(bits.to_vec()).unwrap()
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(d(&[1, 1]).pairing(&d(&[1, 1])).unwrap(), 0);
        assert_eq!(d(&[0, 1]).pairing(&d(&[0, 1])).unwrap(), 1);
        assert_eq!(d(&[0, 1]).pairing(&d(&[1, 0])).unwrap(), 0);
    }

    #[test]
    fn pairing_length_mismatch_is_config_error() {
        assert!(matches!(
            d(&[0, 1]).pairing(&d(&[0, 1, 1])),
            Err(Error::DegreeLength(2, 3))
        ));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(d(&[0, 0, 0]).parity(), Parity::Even);
        assert_eq!(d(&[0, 1, 1]).parity(), Parity::Even);
        assert_eq!(d(&[1, 1, 1]).parity(), Parity::Odd);
    }

    #[test]
    fn chain_n3_matches_reference_order() {
        let expect: Vec<DegreeVector> = [
            [0, 0, 0],
            [0, 1, 1],
            [1, 0, 1],
            [1, 1, 0],
            [0, 0, 1],
            [0, 1, 0],
            [1, 0, 0],
            [1, 1, 1],
        ]
        .iter()
        .map(|b| d(b))
        .collect();
        assert_eq!(enumerate_degrees(3), expect);
    }

    #[test]
    fn chain_n1() {
        assert_eq!(enumerate_degrees(1), vec![d(&[0]), d(&[1])]);
    }

    #[test]
    fn chain_n2() {
        // frozen by applying the even-then-odd lexicographic rule at n=2
        assert_eq!(
            enumerate_degrees(2),
            vec![d(&[0, 0]), d(&[1, 1]), d(&[0, 1]), d(&[1, 0])]
        );
    }

    #[test]
    fn sign_examples() {
        assert_eq!(d(&[0, 1]).sign(&d(&[0, 1])).unwrap(), -1);
        assert_eq!(d(&[0, 0]).sign(&d(&[1, 0])).unwrap(), 1);
        // pairing((1,1),(0,1)) = 0*0 + 1*1 = 1
        assert_eq!(d(&[1, 1]).sign(&d(&[0, 1])).unwrap(), -1);
    }

    #[test]
    fn pairing_symmetric_and_biadditive_exhaustive() {
        for n in 1..=3 {
            let all = enumerate_degrees(n);
            for a in &all {
                for b in &all {
                    assert_eq!(a.pairing(b).unwrap(), b.pairing(a).unwrap());
                    assert_eq!(
                        a.sign(b).unwrap() * b.sign(a).unwrap(),
                        1,
                        "sign(a,b)*sign(b,a) must be +1"
                    );
                    for c in &all {
                        let lhs = a.add(b).unwrap().pairing(c).unwrap();
                        let rhs = (a.pairing(c).unwrap() + b.pairing(c).unwrap()) % 2;
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn chain_has_even_prefix_of_half_size() {
        for n in 1..=4 {
            let all = enumerate_degrees(n);
            let evens = 1usize << (n - 1);
            assert!(all[..evens].iter().all(|d| d.is_even()));
            assert!(all[evens..].iter().all(|d| !d.is_even()));
            // strict total order
            for w in all.windows(2) {
                assert_ne!(w[0], w[1]);
            }
        }
    }

    #[test]
    fn grading_lookup() {
        let g = Grading::new(2).unwrap();
        assert_eq!(g.q(), 3);
        assert_eq!(g.index_of(&d(&[1, 1])).unwrap(), 1);
        assert_eq!(g.add_indices(1, 2), 3); // (1,1)+(0,1) = (1,0)
        assert_eq!(g.add_indices(2, 2), 0);
    }

    #[test]
    fn degree_json_roundtrip() {
        let v = d(&[0, 1, 1]);
        assert_eq!(DegreeVector::from_json(&v.to_json()).unwrap(), v);
    }
}
