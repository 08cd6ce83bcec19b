//! Fixed-length binary words and finite codes.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};

pub const MAX_LENGTH: usize = 64;

/// A word of `{0,1}^n`, `1 <= n <= 64`. Position 0 is the most significant
/// character of the textual form and lives in bit `n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord {
    n: u8,
    bits: u64,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl BinaryWord {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::InvalidParameters(format!("word length {n} outside 1..=64")));
        }
        if bits & !mask(n) != 0 {
            return Err(Error::InvalidParameters(format!(
                "bits {bits:#x} exceed length {n}"
            )));
        }
        Ok(Self { n: n as u8, bits })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::new(n, mask(n.clamp(1, 64)))
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn complement(&self) -> Self {
        Self { n: self.n, bits: !self.bits & mask(self.len()) }
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(Self { n: self.n, bits: self.bits ^ other.bits })
    }

    /// Bit at textual position `i` (0 = leftmost).
    pub fn get(&self, i: usize) -> bool {
        (self.bits >> (self.len() - 1 - i)) & 1 == 1
    }
}

/// Number of coordinates in which `x` and `y` differ.
pub fn hamming_distance(x: &BinaryWord, y: &BinaryWord) -> Result<u32> {
    if x.n != y.n {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok((x.bits ^ y.bits).count_ones())
}

pub fn weight(x: &BinaryWord) -> u32 {
    x.weight()
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            if i >= MAX_LENGTH {
                return Err(Error::Parse(format!("word longer than {MAX_LENGTH}: {s}")));
            }
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                _ => return Err(Error::Parse(format!("invalid character {c:?} in word {s:?}"))),
            }
        }
        Self::new(s.chars().count(), bits)
    }
}

/// A finite set of distinct words sharing the same length. Words are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    n: usize,
    words: Vec<BinaryWord>,
}

impl Code {
    pub fn new(n: usize, words: impl IntoIterator<Item = BinaryWord>) -> Result<Self> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::InvalidParameters(format!("code length {n} outside 1..=64")));
        }
        let mut set = BTreeSet::new();
        for w in words {
            if w.len() != n {
                return Err(Error::LengthMismatch(n, w.len()));
            }
            if !set.insert(w) {
                return Err(Error::InvalidParameters(format!("duplicate word {w}")));
            }
        }
        Ok(Self { n, words: set.into_iter().collect() })
    }

    /// Builds a code from raw bit masks, all of length `n`.
    pub fn from_bits(n: usize, bits: impl IntoIterator<Item = u64>) -> Result<Self> {
        let words = bits.into_iter().map(|b| BinaryWord::new(n, b)).collect::<Result<Vec<_>>>()?;
        Self::new(n, words)
    }

    /// The linear span of the given generator rows.
    pub fn span(n: usize, rows: &[BinaryWord]) -> Result<Self> {
        if rows.len() > 24 {
            return Err(Error::InvalidParameters(format!("{} generator rows", rows.len())));
        }
        for r in rows {
            if r.len() != n {
                return Err(Error::LengthMismatch(n, r.len()));
            }
        }
        let mut words = BTreeSet::new();
        for m in 0u32..(1u32 << rows.len()) {
            let mut acc = 0u64;
            for (i, r) in rows.iter().enumerate() {
                if (m >> i) & 1 == 1 {
                    acc ^= r.bits();
                }
            }
            words.insert(acc);
        }
        Self::from_bits(n, words)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[BinaryWord] {
        &self.words
    }

    pub fn contains(&self, w: &BinaryWord) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Minimum distance over distinct pairs; `n + 1` when the code has at most one word.
    pub fn min_distance(&self) -> u32 {
        let mut best = self.n as u32 + 1;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                best = best.min((a.bits ^ b.bits).count_ones());
                if best == 1 {
                    return 1;
                }
            }
        }
        best
    }

    /// Minimum codeword weight; `n + 1` for the empty code.
    pub fn min_weight(&self) -> u32 {
        self.words.iter().map(|w| w.weight()).min().unwrap_or(self.n as u32 + 1)
    }

    pub fn max_weight(&self) -> u32 {
        self.words.iter().map(|w| w.weight()).max().unwrap_or(0)
    }

    pub fn weight_enumerator(&self) -> WeightEnumerator {
        let mut coeffs = vec![0u64; self.n + 1];
        for w in &self.words {
            coeffs[w.weight() as usize] += 1;
        }
        WeightEnumerator::new(self.n, coeffs).expect("length matches")
    }

    pub fn complement(&self) -> Code {
        Code::new(self.n, self.words.iter().map(|w| w.complement())).expect("complement is a bijection")
    }

    /// Translate every word by `t`.
    pub fn translate(&self, t: &BinaryWord) -> Result<Code> {
        let words = self.words.iter().map(|w| w.xor(t)).collect::<Result<Vec<_>>>()?;
        Code::new(self.n, words)
    }

    /// Text format: `n=<int>` then one word per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for w in &self.words {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse(format!("expected n=<int>, got {header:?}")))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad length in {header:?}: {e}")))?;
        let mut words = Vec::new();
        for line in lines {
            let w: BinaryWord = line.parse()?;
            if w.len() != n {
                return Err(Error::Parse(format!("word {line:?} does not have length {n}")));
            }
            words.push(w);
        }
        Self::new(n, words)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_text(&std::fs::read_to_string(path)?)
    }
}

/// Parses generator-matrix text: one row per line as a 0/1 string, `#` comments allowed.
pub fn parse_generator_rows(text: &str) -> Result<(usize, Vec<BinaryWord>)> {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse::<BinaryWord>)
        .collect::<Result<Vec<_>>>()?;
    let n = rows.first().map(|r| r.len()).ok_or_else(|| Error::Parse("no generator rows".into()))?;
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::Parse(format!("row {bad} does not have length {n}")));
    }
    Ok((n, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_distance(&w("0000"), &w("0000")).unwrap(), 0);
        assert_eq!(hamming_distance(&w("1100"), &w("0110")).unwrap(), 2);
        assert_eq!(hamming_distance(&w("1111111"), &w("0000000")).unwrap(), 7);
        assert!(matches!(hamming_distance(&w("11"), &w("110")), Err(Error::LengthMismatch(2, 3))));
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&w("0000")), 0);
        assert_eq!(weight(&w("1011")), 3);
        assert_eq!(weight(&BinaryWord::ones(16).unwrap()), 16);
        assert_eq!(BinaryWord::ones(64).unwrap().weight(), 64);
    }

    #[test]
    fn bits_above_length_rejected() {
        assert!(BinaryWord::new(3, 0b1000).is_err());
        assert!(BinaryWord::new(0, 0).is_err());
        assert!(BinaryWord::new(65, 0).is_err());
        assert!("10a1".parse::<BinaryWord>().is_err());
    }

    #[test]
    fn code_distance_and_weight() {
        let c = Code::new(3, [w("000"), w("111")]).unwrap();
        assert_eq!(c.min_distance(), 3);
        assert_eq!(c.min_weight(), 0);
        let c = Code::new(4, [w("1100"), w("0011"), w("1010")]).unwrap();
        assert_eq!(c.min_distance(), 2);
        assert_eq!(c.min_weight(), 2);
        let c = Code::new(8, [w("11000000")]).unwrap();
        assert_eq!(c.min_distance(), 9);
        assert_eq!(c.min_weight(), 2);
        assert!(Code::new(3, [w("000"), w("000")]).is_err());
        assert!(Code::new(3, [w("0000")]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = Code::new(4, [w("1100"), w("0011"), w("1010")]).unwrap();
        let text = c.to_text();
        assert_eq!(text, "n=4\n0011\n1010\n1100\n");
        assert_eq!(Code::parse_text(&text).unwrap(), c);
        assert!(Code::parse_text("n=3\n0101\n").is_err());
        assert!(Code::parse_text("x=3\n").is_err());
    }

    #[test]
    fn span_of_repetition() {
        let c = Code::span(3, &[w("111")]).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.min_distance(), 3);
    }

    proptest! {
        #[test]
        fn distance_is_a_metric(n in 1usize..=64, a: u64, b: u64, c: u64) {
            let m = mask(n);
            let (x, y, z) = (
                BinaryWord::new(n, a & m).unwrap(),
                BinaryWord::new(n, b & m).unwrap(),
                BinaryWord::new(n, c & m).unwrap(),
            );
            let dxy = hamming_distance(&x, &y).unwrap();
            prop_assert_eq!(dxy, hamming_distance(&y, &x).unwrap());
            prop_assert_eq!(hamming_distance(&x, &x).unwrap(), 0);
            prop_assert!(dxy <= n as u32);
            prop_assert!(dxy <= hamming_distance(&x, &z).unwrap() + hamming_distance(&z, &y).unwrap());
            prop_assert_eq!(weight(&x), hamming_distance(&x, &BinaryWord::zero(n).unwrap()).unwrap());
        }
    }
}
