//! The individual inequalities. Every function bounds `B(n,d,w)` and uses
//! exact integer arithmetic only.

use crate::combinatorics::{ball_volume, binom_range_sum, entropy_inv};
use crate::error::{Error, Result};
use crate::tables::KnownTable;

use super::{ProblemSpec, RuleResult};

/// `B(n,d,w) = 1` when two words of weight at least `w` cannot be `d` apart,
/// i.e. `d > 2(n-w)`.
pub fn trivial_one(n: u32, d: u32, w: u32) -> Option<u128> {
    (w <= n && d > 2 * (n - w)).then_some(1)
}

/// `max_{j >= w} A(n,d,j)` from below.
pub fn lower_single_class(n: u32, d: u32, w: u32, t: &KnownTable) -> u128 {
    (w..=n).map(|j| t.aw_bounds(n, d, j).0).max().unwrap_or(1)
}

/// Weight classes `w, w+d, w+2d, ...` are pairwise at distance at least `d`.
pub fn lower_stacked(n: u32, d: u32, w: u32, t: &KnownTable) -> u128 {
    (w..=n).step_by(d.max(1) as usize).map(|j| t.aw_bounds(n, d, j).0).sum()
}

/// A code of weights at least `w` is a disjoint union of constant weight codes.
pub fn upper_class_sum(n: u32, d: u32, w: u32, t: &KnownTable) -> u128 {
    (w..=n).map(|j| t.aw_bounds(n, d, j).1).sum()
}

/// `B(n,d,w) <= A(n,d)`.
pub fn upper_a(n: u32, d: u32, t: &KnownTable) -> u128 {
    t.a_bounds(n, d).1
}

/// `⌊n U / w⌋` where `U` bounds `B(n-1,d,w-1)`: the words with a one in the
/// heaviest column, with that column removed.
pub fn johnson_upper(n: u32, w: u32, sub_upper: u128) -> Option<u128> {
    (w >= 1).then(|| n as u128 * sub_upper / w as u128)
}

/// `⌈Σ_{i>=w} C(n,i) / V(n,d-1)⌉`.
pub fn gilbert_lower(n: u32, d: u32, w: u32) -> u128 {
    let heavy = binom_range_sum(n, w, n);
    let ball = ball_volume(n, d.saturating_sub(1));
    heavy.div_ceil(ball).max(1)
}

/// `A(n,d) - 1` for `1 <= w <= d`: translate an optimal code to contain the
/// zero word and drop it.
pub fn expurgation_lower(n: u32, d: u32, w: u32, t: &KnownTable) -> Option<u128> {
    if w == 0 || w > d {
        return None;
    }
    let a = t.a_bounds(n, d).0;
    (a >= 2).then(|| a - 1)
}

/// `2^((n-2)/2)` for even `n >= min_n`, `w <= n/2` and `d <= n h^{-1}(1/2)`:
/// half of a self-dual code above the Gilbert bound. The underlying
/// existence result is asymptotic, hence the explicit threshold.
pub fn selfdual_lower(n: u32, d: u32, w: u32, min_n: u32) -> Option<u128> {
    if !n.is_multiple_of(2) || n < 2 || n < min_n || 2 * w > n || n > 128 {
        return None;
    }
    let delta = entropy_inv(0.5).ok()?;
    ((d as f64) <= n as f64 * delta).then(|| 1u128 << ((n - 2) / 2))
}

/// Smallest `R` with `A(n,d) V(n,R) >= 2^n`, using the upper bound on `A(n,d)`.
pub fn covering_radius_sphere_lb(n: u32, d: u32, t: &KnownTable) -> u32 {
    let a = t.a_bounds(n, d).1;
    let space = 1u128.checked_shl(n).unwrap_or(u128::MAX);
    (0..=n).find(|&r| a.saturating_mul(ball_volume(n, r)) >= space).unwrap_or(n)
}

/// Best known lower bound on `R(n,d)`: stored record, sphere covering bound
/// and `⌊(d-1)/2⌋`.
pub fn covering_radius_lower(n: u32, d: u32, t: &KnownTable) -> (u32, String) {
    let mut best = (d.saturating_sub(1) / 2, "packing radius".to_string());
    let sphere = covering_radius_sphere_lb(n, d, t);
    if sphere > best.0 {
        best = (sphere, "sphere covering".into());
    }
    if let Some((r, src)) = t.covering_radius_lower(n, d) {
        if r > best.0 {
            best = (r, format!("table: {src}"));
        }
    }
    best
}

/// `B(n,d,w) = A(n,d)` when `w <= R(n,d)` and `A(n,d)` is known exactly:
/// some translate of an optimal code has all weights at least `w`.
pub fn translation_equal(n: u32, d: u32, w: u32, t: &KnownTable) -> Option<u128> {
    let (lo, hi) = t.a_bounds(n, d);
    if lo != hi {
        return None;
    }
    (w == 0 || w <= covering_radius_lower(n, d, t).0).then_some(lo)
}

/// Concatenating a heavy inner code of size `q` with a length-`N` code over
/// `GF(q)` of distance `D`: `B(Nn, dD, wN) >= A_q(N,D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Concatenation {
    pub outer_n: u32,
    pub outer_d: u32,
    pub q: u32,
    /// Inner parameters `(n, d, w)`.
    pub inner: (u32, u32, u32),
    pub aq_lower: u128,
}

/// `inner_lower` must be a certified lower bound on `B(n,d,w)` of the inner
/// parameters; it has to reach `q`.
pub fn concatenation_lower(c: &Concatenation, inner_lower: u128) -> Result<(ProblemSpec, RuleResult)> {
    let (n, d, w) = c.inner;
    if inner_lower < c.q as u128 {
        return Err(Error::NotCertified(format!("B({n},{d},{w}) >= {} is needed, only {inner_lower} is certified", c.q)));
    }
    let spec = ProblemSpec::b(c.outer_n * n, c.outer_d * d, c.outer_n * w)?;
    let rule = RuleResult::lower(
        c.aq_lower,
        "concatenation",
        vec![format!("B({n},{d},{w}) >= {}", c.q), format!("A_{}({},{}) >= {}", c.q, c.outer_n, c.outer_d, c.aq_lower)],
    );
    Ok((spec, rule))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> KnownTable {
        KnownTable::load_default().unwrap()
    }

    #[test]
    fn trivial_one_cases() {
        assert_eq!(trivial_one(6, 4, 5), Some(1));
        assert_eq!(trivial_one(6, 4, 2), None);
        assert_eq!(trivial_one(14, 8, 13), Some(1));
        assert_eq!(trivial_one(6, 4, 4), None);
    }

    #[test]
    fn class_rules() {
        let t = table();
        assert_eq!(lower_single_class(8, 4, 6, &t), 4);
        assert_eq!(lower_single_class(9, 4, 9, &t), 1);
        assert_eq!(lower_single_class(13, 6, 9, &t), t.query_aw(13, 6, 9).lower);
        assert_eq!(lower_stacked(6, 4, 2, &t), 4);
        assert_eq!(lower_stacked(8, 4, 6, &t), 4);
        assert_eq!(lower_stacked(7, 3, 7, &t), 1);
        assert_eq!(upper_class_sum(8, 4, 6, &t), 6);
        assert_eq!(upper_class_sum(10, 4, 8, &t), 7);
        assert_eq!(upper_class_sum(5, 2, 5, &t), 1);
        assert_eq!(upper_a(10, 4, &t), 40);
        assert_eq!(upper_a(7, 1, &t), 128);
        assert_eq!(upper_a(13, 6, &t), 32);
    }

    #[test]
    fn johnson_examples() {
        assert_eq!(johnson_upper(13, 9, 16), Some(23));
        assert_eq!(johnson_upper(10, 2, 20), Some(100));
        assert_eq!(johnson_upper(7, 7, 5), Some(5));
        assert_eq!(johnson_upper(7, 0, 5), None);
    }

    #[test]
    fn gilbert_examples() {
        assert_eq!(gilbert_lower(6, 4, 2), 2);
        assert_eq!(gilbert_lower(9, 1, 0), 512);
        assert_eq!(gilbert_lower(13, 6, 9), 1);
    }

    #[test]
    fn expurgation_examples() {
        let t = table();
        assert_eq!(expurgation_lower(7, 4, 2, &t), Some(7));
        assert_eq!(expurgation_lower(5, 5, 5, &t), Some(1));
        assert_eq!(expurgation_lower(16, 6, 6, &t), Some(255));
        assert_eq!(expurgation_lower(16, 6, 7, &t), None);
    }

    #[test]
    fn selfdual_examples() {
        assert_eq!(selfdual_lower(100, 11, 50, 0), Some(1 << 49));
        assert_eq!(selfdual_lower(10, 1, 5, 0), Some(16));
        assert_eq!(selfdual_lower(10, 4, 5, 0), None);
        assert_eq!(selfdual_lower(100, 11, 50, 200), None);
        assert_eq!(selfdual_lower(100, 12, 50, 0), None);
    }

    #[test]
    fn covering_radius_examples() {
        let t = table();
        assert_eq!(covering_radius_sphere_lb(10, 4, &t), 2);
        assert_eq!(covering_radius_sphere_lb(9, 1, &t), 0);
        // A(23,8) = 2048: 2048 V(23,R) >= 2^23 needs V >= 4096, reached at R = 4
        assert_eq!(covering_radius_sphere_lb(23, 8, &t), 4);
        assert!(covering_radius_lower(7, 4, &t).0 >= 3);
        assert_eq!(translation_equal(7, 4, 2, &t), Some(8));
        assert_eq!(translation_equal(9, 6, 2, &t), Some(4));
        assert_eq!(translation_equal(10, 4, 0, &t), Some(40));
    }

    #[test]
    fn concatenation_examples() {
        let c = Concatenation { outer_n: 5, outer_d: 3, q: 4, inner: (4, 2, 2), aq_lower: 64 };
        let (spec, r) = concatenation_lower(&c, 4).unwrap();
        assert_eq!((spec.n, spec.d, spec.w, r.value), (20, 6, 10, 64));
        assert!(concatenation_lower(&c, 3).is_err());
        let rep = Concatenation { outer_n: 4, outer_d: 4, q: 2, inner: (2, 1, 1), aq_lower: 2 };
        let (spec, r) = concatenation_lower(&rep, 2).unwrap();
        assert_eq!((spec.n, spec.d, spec.w, r.value), (8, 4, 4, 2));
    }
}
