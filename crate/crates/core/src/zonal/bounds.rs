//! Closed-form upper bounds on `L(n,d,w)` from degree-1 and degree-2 polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::{int, Rational};

/// `⌊r⌋` for a nonnegative rational.
pub fn floor_rational(r: &Rational) -> u128 {
    let q = r.numer().div_floor(r.denom());
    if q.is_negative() {
        0
    } else {
        q.to_u128().unwrap_or(u128::MAX)
    }
}

fn ri(x: u32) -> Rational {
    int(x as i64)
}

/// Degree-1 bound `d / (d - 2w(1 - w/n))`, when `w <= n/2` and `d > 2w(1-w/n)`.
pub fn elias_degree1(n: u32, d: u32, w: u32) -> Option<Rational> {
    let (n64, d64, w64) = (n as i64, d as i64, w as i64);
    if n == 0 || 2 * w > n || d64 * n64 <= 2 * w64 * (n64 - w64) {
        return None;
    }
    Some(Rational::new(BigInt::from(d64 * n64), BigInt::from(d64 * n64 - 2 * w64 * (n64 - w64))))
}

/// `λ_0 = d(n+1-2w) / ((n-1)d + 2(n-w)^2)`, the maximiser of [`f0_quadratic`];
/// defined for `w <= (n+1)/2`.
pub fn lambda_opt(n: u32, d: u32, w: u32) -> Option<Rational> {
    if 2 * w > n + 1 || n < 2 {
        return None;
    }
    let (n, d, w) = (ri(n), ri(d), ri(w));
    let one = int(1);
    let num = &d * (&n + &one - &w * int(2));
    let den = (&n - &one) * &d + (&n - &w) * (&n - &w) * int(2);
    Some(num / den)
}

/// `f_0(λ)` with `(n(n-1)/2) f_0(λ) = -((n-1)d + 2(n-w)^2) λ^2 + d(2n+2-4w) λ + d(2d-(n-1))`.
pub fn f0_quadratic(n: u32, d: u32, w: u32, lambda: &Rational) -> Rational {
    let (n, d, w) = (ri(n), ri(d), ri(w));
    let one = int(1);
    let a = -((&n - &one) * &d + (&n - &w) * (&n - &w) * int(2));
    let b = &d * (&n * int(2) + int(2) - &w * int(4));
    let c = &d * (&d * int(2) - (&n - &one));
    let val = a * lambda * lambda + b * lambda + c;
    val * int(2) / (&n * (&n - &one))
}

/// The maximum of [`f0_quadratic`] over `λ`:
/// `4d(d^2 + 2(n-w)(n+1-2w)d/(n-1) - (n-w)^2) / (n((n-1)d + 2(n-w)^2))`.
pub fn f0_max(n: u32, d: u32, w: u32) -> Rational {
    let (n, d, w) = (ri(n), ri(d), ri(w));
    let one = int(1);
    let inner = &d * &d + (&n - &w) * (&n + &one - &w * int(2)) * &d * int(2) / (&n - &one) - (&n - &w) * (&n - &w);
    let den = &n * ((&n - &one) * &d + (&n - &w) * (&n - &w) * int(2));
    &d * inner * int(4) / den
}

/// The stated applicability test
/// `d > ((n-w)/(n-1)) (sqrt(2(n-w)(n-1)) - (n+1-w))`, decided exactly:
/// rearranged to `d(n-1) + (n+1-w)(n-w) > (n-w) sqrt(2(n-w)(n-1))` where the
/// left side is positive, then squared.
pub fn degree2_stated_condition(n: u32, d: u32, w: u32) -> bool {
    if w >= n || n < 2 {
        return false;
    }
    let (n, d, w) = (BigInt::from(n), BigInt::from(d), BigInt::from(w));
    let one = BigInt::from(1);
    let lhs = &d * (&n - &one) + (&n + &one - &w) * (&n - &w);
    let nw = &n - &w;
    &lhs * &lhs > &nw * &nw * &nw * BigInt::from(2) * (&n - &one)
}

/// Degree-2 bound
/// `2d(d + 2(n-w)^2/(n-1)) / (d^2 + 2(n-w)(n+1-2w)d/(n-1) - (n-w)^2)`.
///
/// Applies when `w <= (n+1)/2`, the stated condition holds, and the
/// denominator is positive. The stated condition alone does not imply a
/// positive denominator (e.g. `(n,d,w) = (5,1,2)`), so both are checked.
pub fn degree2_bound(n: u32, d: u32, w: u32) -> Option<Rational> {
    if 2 * w > n + 1 || !degree2_stated_condition(n, d, w) {
        return None;
    }
    degree2_formula(&ri(n), &ri(d), &ri(w))
}

/// The degree-2 formula for rational arguments; `None` unless the denominator is positive.
pub fn degree2_formula(n: &Rational, d: &Rational, w: &Rational) -> Option<Rational> {
    let one = int(1);
    let nw = n - w;
    let den = d * d + &nw * (n + &one - w * int(2)) * d * int(2) / (n - &one) - &nw * &nw;
    if den <= Rational::zero() {
        return None;
    }
    let num = d * (d + &nw * &nw * int(2) / (n - &one)) * int(2);
    Some(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zonal::poly::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn elias_examples() {
        assert_eq!(elias_degree1(16, 8, 4), Some(int(4)));
        assert_eq!(elias_degree1(10, 4, 1), Some(rat(20, 11)));
        assert_eq!(floor_rational(&elias_degree1(10, 4, 1).unwrap()), 1);
        assert_eq!(elias_degree1(12, 6, 6), None);
        assert_eq!(elias_degree1(12, 6, 7), None);
    }

    #[test]
    fn lambda_and_f0() {
        assert_eq!(lambda_opt(12, 6, 6), Some(rat(1, 23)));
        assert_eq!(lambda_opt(16, 8, 8), Some(rat(1, 31)));
        assert_eq!(lambda_opt(11, 3, 6), Some(int(0)));
        assert_eq!(lambda_opt(10, 3, 6), None);
        assert_eq!(f0_quadratic(12, 6, 6, &rat(1, 23)), rat(24, 253));
        let (n, d) = (9u32, 4u32);
        let expect = rat(2 * d as i64 * (2 * d as i64 - (n as i64 - 1)), (n * (n - 1)) as i64);
        assert_eq!(f0_quadratic(n, d, 3, &int(0)), expect);
    }

    #[test]
    fn f0_maximum_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.random_range(3..60u32);
            let w = rng.random_range(0..=n.div_ceil(2));
            let d = rng.random_range(1..=n);
            let l0 = lambda_opt(n, d, w).unwrap();
            assert_eq!(f0_quadratic(n, d, w, &l0), f0_max(n, d, w), "({n},{d},{w})");
            // λ_0 is the maximiser
            for delta in [rat(1, 1000), rat(-1, 1000)] {
                assert!(f0_quadratic(n, d, w, &(&l0 + &delta)) < f0_max(n, d, w));
            }
        }
    }

    #[test]
    fn degree2_examples() {
        assert_eq!(degree2_bound(12, 6, 6), Some(int(23)));
        assert_eq!(degree2_bound(16, 8, 8), Some(int(31)));
        for n in (4..=64u32).step_by(2) {
            assert_eq!(degree2_bound(n, n / 2, n / 2), Some(int(2 * n as i64 - 1)), "n={n}");
        }
        assert!(degree2_stated_condition(5, 1, 2));
        assert_eq!(degree2_bound(5, 1, 2), None);
    }

    #[test]
    fn positive_denominator_implies_stated_condition() {
        for n in 2..=40u32 {
            for w in 0..n.min(n.div_ceil(2) + 1) {
                for d in 1..=n {
                    if degree2_formula(&ri(n), &ri(d), &ri(w)).is_some() {
                        assert!(degree2_stated_condition(n, d, w), "({n},{d},{w})");
                    }
                }
            }
        }
    }

    #[test]
    fn second_example_identity() {
        // at d = 2w(1-w/n) the degree-2 value is 2w(n^2-w) / (n^2/2 - (n+1)(w-n/2)^2)
        for n in 4..=30i64 {
            for w in 1..=(n + 1) / 2 {
                let (nr, wr) = (int(n), int(w));
                let d = &wr * int(2) * (int(1) - &wr / &nr);
                let other = &wr * int(2) * (&nr * &nr - &wr)
                    / (&nr * &nr / int(2) - (&nr + int(1)) * (&wr - &nr / int(2)) * (&wr - &nr / int(2)));
                match degree2_formula(&nr, &d, &wr) {
                    Some(v) => assert_eq!(v, other, "n={n} w={w}"),
                    None => assert!(other <= Rational::zero() || d.is_zero(), "n={n} w={w}"),
                }
            }
        }
    }
}
