//! Exponents of heavy weight codes and the translation construction that
//! turns a constant weight code into a heavier one.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, entropy};
use crate::error::{Error, Result};
use crate::tables::KnownTable;
use crate::word::{BinaryWord, Code};

type Plug1 = Box<dyn Fn(f64) -> f64 + Send + Sync>;
type Plug2 = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Bounds on `a(δ)` and `a(δ,ω)` supplied by the caller.
pub struct ExponentPlugs {
    pub a_lower: Plug1,
    pub a_upper: Plug1,
    pub aw_lower: Plug2,
    pub aw_upper: Plug2,
}

impl ExponentPlugs {
    /// Gilbert-Varshamov `1 - h(δ)` below and `1` above for `a(δ)`;
    /// `[0, h(ω)]` for `a(δ,ω)`.
    pub fn gv_trivial() -> Self {
        Self {
            a_lower: Box::new(|delta| if delta >= 0.5 { 0.0 } else { 1.0 - h(delta) }),
            a_upper: Box::new(|delta| if delta >= 0.5 { 0.0 } else { 1.0 }),
            aw_lower: Box::new(|_, _| 0.0),
            aw_upper: Box::new(|_, omega| h(omega)),
        }
    }
}

fn h(p: f64) -> f64 {
    entropy(p.clamp(0.0, 1.0)).unwrap_or(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentQuery {
    pub delta: f64,
    pub omega: f64,
}

/// `(lower, upper)` on `b(δ,ω)`. For `ω <= 1/2` this is `a(δ)`; above 1/2
/// the supremum of `a(δ,ρ)` over `ρ >= ω` is attained at `ρ = ω` by
/// unimodality, so the constant weight plugs are used.
pub fn b_exponent(q: &ExponentQuery, plugs: &ExponentPlugs) -> Result<(f64, f64)> {
    let ExponentQuery { delta, omega } = *q;
    if !(0.0..=1.0).contains(&delta) || !(0.0..=1.0).contains(&omega) {
        return Err(Error::InvalidParameters(format!("δ = {delta}, ω = {omega} outside [0,1]")));
    }
    let (lo, hi) = if omega <= 0.5 {
        ((plugs.a_lower)(delta), (plugs.a_upper)(delta))
    } else {
        ((plugs.aw_lower)(delta, omega), (plugs.aw_upper)(delta, omega))
    };
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi + 1e-12 {
        return Err(Error::InvalidParameters(format!("plugged exponents ({lo}, {hi}) at δ = {delta}, ω = {omega}")));
    }
    Ok((lo, hi))
}

/// `A(n,d) / 2^n <= A(n,d,w) / C(n,w)` on exactly known values; `None`
/// unless both are known exactly.
pub fn elias_bassalygo_check(n: u32, d: u32, w: u32, t: &KnownTable) -> Option<bool> {
    let (a_lo, a_hi) = t.a_bounds(n, d);
    let (aw_lo, aw_hi) = t.aw_bounds(n, d, w);
    if a_lo != a_hi || aw_lo != aw_hi {
        return None;
    }
    Some(BigUint::from(a_lo) * binomial(n as u64, w as u64) <= BigUint::from(aw_lo) << n as usize)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// Every count must be an integer.
    #[default]
    Exact,
    /// Round the overlap with the support down and adjust the outside count
    /// so translated words still have weight `w2`.
    Floor,
}

/// Shape of the translates: weight `inside + outside`, meeting the support
/// of a codeword in `inside` positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateShape {
    pub n: u32,
    pub w1: u32,
    pub w2: u32,
    pub inside: u32,
    pub outside: u32,
}

impl TranslateShape {
    /// `w = n(w2-w1)/(n-2w1)`, `inside = w1 w / n`, `outside = (n-w1) w / n`.
    pub fn new(n: u32, w1: u32, w2: u32, rounding: Rounding) -> Result<Self> {
        if w1 >= w2 || 2 * w2 > n {
            return Err(Error::InvalidParameters(format!("need 0 <= w1 < w2 <= n/2, got n = {n}, w1 = {w1}, w2 = {w2}")));
        }
        let (n64, w1_, w2_) = (n as u64, w1 as u64, w2 as u64);
        let num = n64 * (w2_ - w1_);
        let den = n64 - 2 * w1_;
        // inside = w1 (w2-w1) / (n-2w1)
        let inside_num = w1_ * (w2_ - w1_);
        let shape = match rounding {
            Rounding::Exact => {
                if num % den != 0 || inside_num % den != 0 {
                    return Err(Error::InvalidParameters(format!(
                        "translate weight {num}/{den} or overlap {inside_num}/{den} is not an integer (use floor rounding)"
                    )));
                }
                let w = num / den;
                let inside = inside_num / den;
                Self { n, w1, w2, inside: inside as u32, outside: (w - inside) as u32 }
            }
            Rounding::Floor => {
                let inside = (inside_num / den) as u32;
                Self { n, w1, w2, inside, outside: w2 - w1 + inside }
            }
        };
        debug_assert_eq!(shape.w1 - shape.inside + shape.outside, w2);
        Ok(shape)
    }

    pub fn weight(&self) -> u32 {
        self.inside + self.outside
    }

    /// Probability that a uniform translate of weight [`Self::weight`] moves a
    /// fixed word of weight `w1` to weight `w2`.
    pub fn probability(&self) -> BigRational {
        let num = binomial(self.w1 as u64, self.inside as u64) * binomial((self.n - self.w1) as u64, self.outside as u64);
        let den = binomial(self.n as u64, self.weight() as u64);
        BigRational::new(num.into(), den.into())
    }
}

/// `C(w1, i) C(n-w1, o) / C(n, i+o)` for the translate shape of `(n, w1, w2)`.
pub fn translation_probability(n: u32, w1: u32, w2: u32, rounding: Rounding) -> Result<BigRational> {
    Ok(TranslateShape::new(n, w1, w2, rounding)?.probability())
}

/// `p >= 1/(n+1)^2`.
pub fn meets_probability_floor(n: u32, p: &BigRational) -> bool {
    let floor = BigRational::new(One::one(), BigUint::from((n as u64 + 1).pow(2)).into());
    *p >= floor
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum TranslateMode {
    /// Every translate of the required shape.
    Exhaustive,
    /// `trials` uniform translates of the required shape.
    Random { trials: u64 },
}

#[derive(Clone, Debug)]
pub struct TranslateOutcome {
    pub code: Code,
    pub translate: BinaryWord,
    pub shape: TranslateShape,
    /// Number of translates tried.
    pub examined: u64,
}

fn translated(c1: &Code, t: u64, w2: u32) -> Vec<u64> {
    c1.words().iter().map(|c| c.bits() ^ t).filter(|x| x.count_ones() == w2).collect()
}

fn constant_weight(c1: &Code) -> Result<u32> {
    let w1 = c1.words().first().map(|c| c.weight()).ok_or_else(|| Error::InvalidParameters("empty code".into()))?;
    if c1.words().iter().any(|c| c.weight() != w1) {
        return Err(Error::InvalidParameters("code is not constant weight".into()));
    }
    Ok(w1)
}

/// `{t ⊕ c : c ∈ C1, wt(t ⊕ c) = w2}` for the best translate `t` found.
/// Translation is an isometry, so distances are those of the kept subcode.
/// In exhaustive mode the result has at least `⌈p |C1|⌉` words.
pub fn heavy_translate<R: Rng>(c1: &Code, w2: u32, mode: TranslateMode, rounding: Rounding, rng: &mut R) -> Result<TranslateOutcome> {
    let n = c1.length() as u32;
    let w1 = constant_weight(c1)?;
    let shape = TranslateShape::new(n, w1, w2, rounding)?;
    let tw = shape.weight();
    let mut best: Option<(Vec<u64>, u64)> = None;
    let mut examined = 0u64;
    let mut consider = |t: u64| {
        examined += 1;
        let words = translated(c1, t, w2);
        if best.as_ref().is_none_or(|(b, _)| words.len() > b.len()) {
            best = Some((words, t));
        }
    };
    match mode {
        TranslateMode::Exhaustive => {
            if n > 40 {
                return Err(Error::InvalidParameters(format!("exhaustive translation at length {n}")));
            }
            // Gosper's hack over all words of weight tw
            if tw == 0 {
                consider(0);
            } else {
                let limit = 1u64 << n;
                let mut t = (1u64 << tw) - 1;
                while t < limit {
                    consider(t);
                    let c = t & t.wrapping_neg();
                    let r = t + c;
                    t = (((r ^ t) >> 2) / c) | r;
                }
            }
        }
        TranslateMode::Random { trials } => {
            for _ in 0..trials.max(1) {
                let t = sample(rng, n as usize, tw as usize).iter().fold(0u64, |acc, i| acc | 1 << i);
                consider(t);
            }
        }
    }
    let (words, t) = best.expect("at least one translate");
    if words.is_empty() {
        return Err(Error::NotCertified("no translate reaches weight w2".into()));
    }
    Ok(TranslateOutcome { code: Code::from_bits(n as usize, words)?, translate: BinaryWord::new(n as usize, t)?, shape, examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn pairs() -> Code {
        Code::from_bits(8, [0b11, 0b1100, 0b11_0000, 0b1100_0000]).unwrap()
    }

    #[test]
    fn exponent_reduction() {
        let plugs = ExponentPlugs::gv_trivial();
        let (lo, hi) = b_exponent(&ExponentQuery { delta: 0.1, omega: 0.0 }, &plugs).unwrap();
        assert!((lo - (1.0 - h(0.1))).abs() < 1e-12 && hi == 1.0);
        assert_eq!(b_exponent(&ExponentQuery { delta: 0.0, omega: 0.3 }, &plugs).unwrap(), (1.0, 1.0));
        let (lo, hi) = b_exponent(&ExponentQuery { delta: 0.2, omega: 0.6 }, &plugs).unwrap();
        assert_eq!(lo, 0.0);
        assert!((hi - h(0.6)).abs() < 1e-12);
        assert!(b_exponent(&ExponentQuery { delta: 1.2, omega: 0.6 }, &plugs).is_err());
    }

    #[test]
    fn exponent_is_non_increasing_above_half() {
        let plugs = ExponentPlugs::gv_trivial();
        for i in 0..=20 {
            let delta = i as f64 / 40.0;
            let mut prev = f64::INFINITY;
            for j in 51..=100 {
                let (_, hi) = b_exponent(&ExponentQuery { delta, omega: j as f64 / 100.0 }, &plugs).unwrap();
                assert!(hi <= prev + 1e-12);
                prev = hi;
            }
        }
    }

    #[test]
    fn elias_bassalygo_on_table() {
        let t = KnownTable::load_default().unwrap();
        assert_eq!(elias_bassalygo_check(6, 4, 3, &t), Some(true));
        assert_eq!(elias_bassalygo_check(20, 4, 7, &t), None);
        let mut checked = 0;
        for n in 1..=24 {
            for d in 1..=n {
                for w in 0..=n {
                    if let Some(ok) = elias_bassalygo_check(n, d, w, &t) {
                        assert!(ok, "({n},{d},{w})");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn probability_examples() {
        assert_eq!(translation_probability(8, 2, 4, Rounding::Exact).unwrap(), r(4, 7));
        for n in 2..=12 {
            for w2 in 1..=n / 2 {
                assert_eq!(translation_probability(n, 0, w2, Rounding::Exact).unwrap(), r(1, 1));
            }
        }
        assert!(translation_probability(9, 2, 4, Rounding::Exact).is_err());
        assert!(translation_probability(8, 4, 4, Rounding::Exact).is_err());
    }

    #[test]
    fn floor_rounding_keeps_target_weight() {
        for n in 2..=30 {
            for w2 in 1..=n / 2 {
                for w1 in 0..w2 {
                    let s = TranslateShape::new(n, w1, w2, Rounding::Floor).unwrap();
                    assert_eq!(w1 - s.inside + s.outside, w2);
                    assert!(s.inside <= w1 && s.outside <= n - w1);
                    if let Ok(e) = TranslateShape::new(n, w1, w2, Rounding::Exact) {
                        assert_eq!(e, s);
                    }
                }
            }
        }
    }

    #[test]
    fn exhaustive_translation_of_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = heavy_translate(&pairs(), 4, TranslateMode::Exhaustive, Rounding::Exact, &mut rng).unwrap();
        assert_eq!(out.examined, 70);
        assert!(out.code.size() >= 3);
        assert!(out.code.words().iter().all(|c| c.weight() == 4));
        assert!(out.code.min_distance() >= 4);
        let single = Code::from_bits(8, [0b11]).unwrap();
        let out = heavy_translate(&single, 4, TranslateMode::Exhaustive, Rounding::Exact, &mut rng).unwrap();
        assert_eq!(out.code.size(), 1);
    }

    #[test]
    fn random_translation_of_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let runs = 20;
        let hits = (0..runs)
            .filter(|_| {
                let out = heavy_translate(&pairs(), 4, TranslateMode::Random { trials: 1000 }, Rounding::Exact, &mut rng).unwrap();
                out.code.size() >= 3
            })
            .count();
        assert!(hits * 2 >= runs);
    }

    #[test]
    fn probability_matches_sampling() {
        let shape = TranslateShape::new(8, 2, 4, Rounding::Exact).unwrap();
        let p = shape.probability().to_f64().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let samples = 100_000;
        let hits = (0..samples)
            .filter(|_| {
                let t = sample(&mut rng, 8, shape.weight() as usize).iter().fold(0u64, |acc, i| acc | 1 << i);
                (t ^ 0b11).count_ones() == 4
            })
            .count();
        let freq = hits as f64 / samples as f64;
        let sigma = (p * (1.0 - p) / samples as f64).sqrt();
        assert!((freq - p).abs() <= 3.0 * sigma, "{freq} vs {p}");
    }
}
