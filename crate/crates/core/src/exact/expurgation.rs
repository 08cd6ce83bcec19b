//! Exact values of `L(n,d,w)` from low-weight subcodes meeting an upper bound.

use serde::Serialize;

use crate::enumerator::{Direction, WeightEnumerator};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpurgationOutcome {
    /// Number of codewords of weight at most `w`: a lower bound on `L(n,d,w)`.
    pub lower: u128,
    pub upper: u128,
    /// `Some(lower)` when the two bounds meet.
    pub exact: Option<u128>,
}

/// `W` must describe a code with minimum distance at least `d`; its words of
/// weight at most `w` then form a code counted by `L(n,d,w)`.
pub fn expurgation_exact(w_enum: &WeightEnumerator, w: usize, sdp_upper: u128) -> Result<ExpurgationOutcome> {
    let lower = w_enum.partial_sum(w, Direction::AtMost)?;
    if lower > sdp_upper {
        return Err(Error::Inconsistent {
            lower,
            upper: sdp_upper,
            lower_rule: "expurgation".into(),
            upper_rule: "sdp".into(),
        });
    }
    Ok(ExpurgationOutcome { lower, upper: sdp_upper, exact: (lower == sdp_upper).then_some(lower) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golay_and_nordstrom_robinson() {
        let nr = WeightEnumerator::from_sparse(16, &[(0, 1), (6, 112), (8, 30), (10, 112), (16, 1)]).unwrap();
        assert_eq!(expurgation_exact(&nr, 6, 113).unwrap().exact, Some(113));
        let g24 = WeightEnumerator::from_sparse(24, &[(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]).unwrap();
        assert_eq!(expurgation_exact(&g24, 12, 3336).unwrap().exact, Some(3336));
        let g23 = WeightEnumerator::from_sparse(23, &[(0, 1), (8, 506), (12, 1288), (16, 253)]).unwrap();
        assert_eq!(expurgation_exact(&g23, 16, 2048).unwrap().exact, Some(2048));
        let gap = expurgation_exact(&g23, 8, 600).unwrap();
        assert_eq!((gap.lower, gap.exact), (507, None));
        assert!(expurgation_exact(&g23, 8, 500).is_err());
    }
}
