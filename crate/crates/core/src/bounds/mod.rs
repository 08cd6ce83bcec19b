//! Elementary bounds on `B(n,d,w)` (all weights at least `w`) and
//! `L(n,d,w) = B(n,d,n-w)` (all weights at most `w`), and a fixpoint
//! combiner producing certified intervals.

mod combiner;
mod rules;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use combiner::{best_bounds, BoundsEngine, BoundsOptions, BoundsOutcome, Extra, RuleSet, DEFAULT_GRID_N};
pub use rules::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CodeQuantity {
    B,
    L,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub quantity: CodeQuantity,
    pub n: u32,
    pub d: u32,
    pub w: u32,
}

impl ProblemSpec {
    /// Requires `1 <= d <= n <= 64` and `w <= n`.
    pub fn new(quantity: CodeQuantity, n: u32, d: u32, w: u32) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::InvalidParameters(format!("length {n} outside 1..=64")));
        }
        if d == 0 || d > n {
            return Err(Error::InvalidParameters(format!("distance {d} outside 1..={n}")));
        }
        if w > n {
            return Err(Error::InvalidParameters(format!("weight {w} exceeds length {n}")));
        }
        Ok(Self { quantity, n, d, w })
    }

    pub fn b(n: u32, d: u32, w: u32) -> Result<Self> {
        Self::new(CodeQuantity::B, n, d, w)
    }

    pub fn l(n: u32, d: u32, w: u32) -> Result<Self> {
        Self::new(CodeQuantity::L, n, d, w)
    }

    /// `L(n,d,w) ↦ B(n,d,n-w)`; `B` specs are unchanged.
    pub fn to_b(&self) -> ProblemSpec {
        match self.quantity {
            CodeQuantity::B => *self,
            CodeQuantity::L => ProblemSpec { quantity: CodeQuantity::B, n: self.n, d: self.d, w: self.n - self.w },
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({},{},{})", self.quantity, self.n, self.d, self.w)
    }
}

pub fn to_b(spec: &ProblemSpec) -> ProblemSpec {
    spec.to_b()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleResult {
    pub side: Side,
    pub value: u128,
    pub rule: String,
    pub dependencies: Vec<String>,
}

impl RuleResult {
    pub fn lower(value: u128, rule: impl Into<String>, dependencies: Vec<String>) -> Self {
        Self { side: Side::Lower, value, rule: rule.into(), dependencies }
    }

    pub fn upper(value: u128, rule: impl Into<String>, dependencies: Vec<String>) -> Self {
        Self { side: Side::Upper, value, rule: rule.into(), dependencies }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complementation_maps_l_to_b() {
        let l = ProblemSpec::l(16, 4, 4).unwrap();
        assert_eq!(l.to_b(), ProblemSpec::b(16, 4, 12).unwrap());
        let b = ProblemSpec::b(10, 4, 2).unwrap();
        assert_eq!(to_b(&b), b);
        assert_eq!(ProblemSpec::l(9, 3, 9).unwrap().to_b().w, 0);
        assert!(ProblemSpec::b(0, 1, 0).is_err());
        assert!(ProblemSpec::b(5, 6, 0).is_err());
        assert!(ProblemSpec::b(5, 2, 6).is_err());
    }
}
