//! Certified integer intervals with a provenance tag on each side.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub lower: u128,
    pub upper: u128,
    pub lower_provenance: String,
    pub upper_provenance: String,
}

impl BoundInterval {
    /// Requires `1 <= lower <= upper`.
    pub fn new(lower: u128, upper: u128, lower_provenance: impl Into<String>, upper_provenance: impl Into<String>) -> Result<Self> {
        let (lower_provenance, upper_provenance) = (lower_provenance.into(), upper_provenance.into());
        if lower == 0 {
            return Err(Error::InvalidParameters(format!("lower bound 0 ({lower_provenance}) is not a valid code size")));
        }
        if lower > upper {
            return Err(Error::Inconsistent { lower, upper, lower_rule: lower_provenance, upper_rule: upper_provenance });
        }
        Ok(Self { lower, upper, lower_provenance, upper_provenance })
    }

    pub fn exact(value: u128, provenance: impl Into<String>) -> Result<Self> {
        let p = provenance.into();
        Self::new(value, value, p.clone(), p)
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, value: u128) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn intersects(&self, lower: u128, upper: u128) -> bool {
        self.lower <= upper && lower <= self.upper
    }

    /// Tightens with another interval; sides keep their provenance unless
    /// strictly improved.
    pub fn intersect(&self, other: &BoundInterval) -> Result<BoundInterval> {
        let (lower, lp) = if other.lower > self.lower { (other.lower, &other.lower_provenance) } else { (self.lower, &self.lower_provenance) };
        let (upper, up) = if other.upper < self.upper { (other.upper, &other.upper_provenance) } else { (self.upper, &self.upper_provenance) };
        Self::new(lower, upper, lp.clone(), up.clone())
    }
}

impl fmt::Display for BoundInterval {
    /// `"v"` for exact values, `"lo-hi"` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "{}-{}", self.lower, self.upper)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_are_enforced() {
        assert!(BoundInterval::new(0, 3, "a", "b").is_err());
        assert!(matches!(BoundInterval::new(4, 3, "a", "b"), Err(Error::Inconsistent { .. })));
        let i = BoundInterval::new(8, 10, "stacked", "johnson").unwrap();
        assert_eq!(i.to_string(), "8-10");
        assert_eq!(BoundInterval::exact(4, "t").unwrap().to_string(), "4");
    }

    #[test]
    fn intersection_keeps_provenance() {
        let a = BoundInterval::new(3, 10, "a-lo", "a-hi").unwrap();
        let b = BoundInterval::new(5, 12, "b-lo", "b-hi").unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!((c.lower, c.upper, c.lower_provenance.as_str(), c.upper_provenance.as_str()), (5, 10, "b-lo", "a-hi"));
        let d = BoundInterval::new(11, 12, "x", "y").unwrap();
        assert!(a.intersect(&d).is_err());
    }
}
