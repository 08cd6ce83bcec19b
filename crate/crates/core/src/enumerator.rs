//! Weight enumerators and the MacWilliams transform.

use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// Coefficients `A_0..A_n` of a code's weight distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    n: usize,
    coeffs: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    AtMost,
    AtLeast,
}

impl WeightEnumerator {
    pub fn new(n: usize, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != n + 1 {
            return Err(Error::InvalidEnumerator(format!(
                "length-{n} enumerator needs {} coefficients, got {}",
                n + 1,
                coeffs.len()
            )));
        }
        Ok(Self { n, coeffs })
    }

    /// Builds an enumerator from sparse `(weight, count)` pairs.
    pub fn from_sparse(n: usize, entries: &[(usize, u64)]) -> Result<Self> {
        let mut coeffs = vec![0u64; n + 1];
        for &(i, a) in entries {
            if i > n {
                return Err(Error::InvalidEnumerator(format!("weight {i} exceeds length {n}")));
            }
            coeffs[i] += a;
        }
        Self::new(n, coeffs)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Total number of codewords described.
    pub fn size(&self) -> u128 {
        self.coeffs.iter().map(|&a| a as u128).sum()
    }

    /// `Σ_{i<=w} A_i` or `Σ_{i>=w} A_i`.
    pub fn partial_sum(&self, w: usize, direction: Direction) -> Result<u128> {
        if w > self.n {
            return Err(Error::InvalidParameters(format!("weight {w} exceeds length {}", self.n)));
        }
        let range = match direction {
            Direction::AtMost => &self.coeffs[..=w],
            Direction::AtLeast => &self.coeffs[w..],
        };
        Ok(range.iter().map(|&a| a as u128).sum())
    }

    /// Enumerator of the complemented code.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { n: self.n, coeffs }
    }

    pub fn to_file(&self, name: &str, source: &str) -> EnumeratorFile {
        EnumeratorFile { n: self.n, coeffs: self.coeffs.clone(), name: name.into(), source: source.into() }
    }
}

/// Free function form of [`WeightEnumerator::partial_sum`].
pub fn enumerator_partial_sum(w: &WeightEnumerator, weight: usize, direction: Direction) -> Result<u128> {
    w.partial_sum(weight, direction)
}

/// Krawtchouk value `K_j(i) = Σ_s (-1)^s C(i,s) C(n-i, j-s)`: the coefficient of
/// `x^{n-j} y^j` in `(x+y)^{n-i} (x-y)^i`.
pub fn krawtchouk(n: usize, j: usize, i: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for s in 0..=j.min(i) {
        if j - s > n - i {
            continue;
        }
        let term = BigInt::from(binomial(i as u64, s as u64) * binomial((n - i) as u64, (j - s) as u64));
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Dual enumerator `W'(x,y) = W(x+y, x-y) / |C|`, in exact integer arithmetic.
///
/// A non-integral or negative coefficient means the input does not describe a
/// linear code of the given size.
pub fn macwilliams_transform(w: &WeightEnumerator, code_size: u128) -> Result<WeightEnumerator> {
    let n = w.n;
    if code_size == 0 {
        return Err(Error::InvalidEnumerator("code size must be positive".into()));
    }
    if n >= 128 || !(1u128 << n).is_multiple_of(code_size) {
        return Err(Error::InvalidEnumerator(format!("code size {code_size} does not divide 2^{n}")));
    }
    let size = BigInt::from(code_size);
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = BigInt::zero();
        for (i, &a) in w.coeffs.iter().enumerate() {
            if a != 0 {
                acc += BigInt::from(a) * krawtchouk(n, j, i);
            }
        }
        let (q, r) = acc.div_rem(&size);
        if !r.is_zero() {
            return Err(Error::InvalidEnumerator(format!("coefficient of weight {j} is not an integer")));
        }
        if q.is_negative() {
            return Err(Error::InvalidEnumerator(format!("coefficient of weight {j} is negative ({q})")));
        }
        out.push(q.to_u64().ok_or_else(|| Error::InvalidEnumerator("coefficient overflow".into()))?);
    }
    WeightEnumerator::new(n, out)
}

/// JSON form: `{"n", "coeffs", "name", "source"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorFile {
    pub n: usize,
    pub coeffs: Vec<u64>,
    pub name: String,
    pub source: String,
}

impl EnumeratorFile {
    pub fn enumerator(&self) -> Result<WeightEnumerator> {
        WeightEnumerator::new(self.n, self.coeffs.clone())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{BinaryWord, Code};

    fn rm14() -> WeightEnumerator {
        WeightEnumerator::from_sparse(16, &[(0, 1), (8, 30), (16, 1)]).unwrap()
    }

    #[test]
    fn rm14_dual_enumerator() {
        let dual = macwilliams_transform(&rm14(), 32).unwrap();
        let expect = WeightEnumerator::from_sparse(
            16,
            &[(0, 1), (4, 140), (6, 448), (8, 870), (10, 448), (12, 140), (16, 1)],
        )
        .unwrap();
        assert_eq!(dual, expect);
        assert_eq!(dual.size(), 2048);
    }

    #[test]
    fn repetition_is_self_dual() {
        let w = WeightEnumerator::new(2, vec![1, 0, 1]).unwrap();
        assert_eq!(macwilliams_transform(&w, 2).unwrap(), w);
    }

    #[test]
    fn matches_explicit_dual_of_4_2_code() {
        // C = span{1100, 0011}: enumerator 1 + 2y^2 + y^4
        let rows: Vec<BinaryWord> = ["1100", "0011"].iter().map(|s| s.parse().unwrap()).collect();
        let code = Code::span(4, &rows).unwrap();
        assert_eq!(code.weight_enumerator().coeffs(), &[1, 0, 2, 0, 1]);
        // dual by brute force: all words orthogonal to every generator
        let dual_words = (0u64..16).filter(|&x| rows.iter().all(|r| (r.bits() & x).count_ones() % 2 == 0));
        let dual = Code::from_bits(4, dual_words).unwrap();
        let transformed = macwilliams_transform(&code.weight_enumerator(), 4).unwrap();
        assert_eq!(transformed, dual.weight_enumerator());
    }

    #[test]
    fn invalid_inputs_are_detected() {
        // {000, 100, 010, 001} is not closed under addition
        let w = WeightEnumerator::new(3, vec![1, 3, 0, 0]).unwrap();
        assert!(macwilliams_transform(&w, 4).is_err());
        assert!(macwilliams_transform(&w, 3).is_err());
        assert!(macwilliams_transform(&w, 0).is_err());
        assert!(WeightEnumerator::new(3, vec![1, 2]).is_err());
    }

    #[test]
    fn transform_is_an_involution_and_sums_correctly() {
        let w = rm14();
        let dual = macwilliams_transform(&w, 32).unwrap();
        assert_eq!(dual.size(), (1u128 << 16) / 32);
        assert_eq!(macwilliams_transform(&dual, dual.size()).unwrap(), w);
    }

    #[test]
    fn partial_sums() {
        let w = rm14();
        assert_eq!(w.partial_sum(8, Direction::AtMost).unwrap(), 31);
        assert_eq!(w.partial_sum(8, Direction::AtLeast).unwrap(), 31);
        assert_eq!(w.partial_sum(16, Direction::AtMost).unwrap(), w.size());
        assert!(w.partial_sum(17, Direction::AtMost).is_err());
    }
}
