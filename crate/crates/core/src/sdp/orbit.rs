//! Orbits of `S_n` on pairs of words, and the triple set Ω(n,d,w).

use num_bigint::BigUint;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// An orbit of ordered pairs `(x, y)` with `wt(x)=u`, `wt(y)=v`, `d(x,y)=t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleOrbit {
    pub u: u32,
    pub v: u32,
    pub t: u32,
    pub orbit_size: BigUint,
}

/// Whether `(u,v,t)` is realised by some pair of words of length `n`.
pub fn is_valid_triple(n: u32, u: u32, v: u32, t: u32) -> bool {
    u <= n
        && v <= n
        && u.abs_diff(v) <= t
        && t <= (u + v).min(2 * n - u - v)
        && (u + v - t).is_multiple_of(2)
}

/// Number of ordered pairs in the orbit `(u,v,t)`:
/// `C(n,u) · C(u, (u+v-t)/2) · C(n-u, (t+v-u)/2)`.
pub fn orbit_size(n: u32, u: u32, v: u32, t: u32) -> Result<BigUint> {
    if !is_valid_triple(n, u, v, t) {
        return Err(Error::InvalidParameters(format!("({u},{v},{t}) is not a valid triple for n={n}")));
    }
    let common = (u + v - t) / 2;
    let outside = v - common;
    Ok(binomial(n as u64, u as u64) * binomial(u as u64, common as u64) * binomial((n - u) as u64, outside as u64))
}

pub fn triple_orbit(n: u32, u: u32, v: u32, t: u32) -> Result<TripleOrbit> {
    Ok(TripleOrbit { u, v, t, orbit_size: orbit_size(n, u, v, t)? })
}

/// Ω(n,d,w): all `(u,v,t)` with `0 <= u,v <= w`, `d <= t <= n`, `t <= u+v`, `u+v-t` even.
///
/// Exactly these conditions; `t >= |u-v|` is deliberately not imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSet {
    pub n: u32,
    pub d: u32,
    pub w: u32,
    pub triples: Vec<(u32, u32, u32)>,
}

pub fn omega(n: u32, d: u32, w: u32) -> OmegaSet {
    let mut triples = Vec::new();
    for u in 0..=w {
        for v in 0..=w {
            for t in d..=n {
                if t <= u + v && (u + v - t) % 2 == 0 {
                    triples.push((u, v, t));
                }
            }
        }
    }
    OmegaSet { n, d, w, triples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn omega_small_cases() {
        assert_eq!(omega(4, 2, 1).triples, vec![(1, 1, 2)]);
        for n in 1..8 {
            for d in 1..=n {
                assert!(omega(n, d, 0).triples.is_empty());
            }
        }
        // independent double loop
        let mut count = 0;
        for u in 0..=3u32 {
            for v in 0..=3u32 {
                let mut t = 4;
                while t <= 6 {
                    if t <= u + v && (u + v + t) % 2 == 0 {
                        count += 1;
                    }
                    t += 1;
                }
            }
        }
        assert_eq!(count, 7);
        assert_eq!(omega(6, 4, 3).triples.len(), count);
    }

    #[test]
    fn orbit_sizes_by_enumeration() {
        let n = 4u32;
        let mut counts = std::collections::HashMap::new();
        for x in 0u32..16 {
            for y in 0u32..16 {
                *counts.entry((x.count_ones(), y.count_ones(), (x ^ y).count_ones())).or_insert(0u64) += 1;
            }
        }
        assert_eq!(counts[&(1, 1, 2)], 12);
        assert_eq!(orbit_size(4, 1, 1, 2).unwrap().to_u64(), Some(12));
        let mut total = 0u64;
        for u in 0..=n {
            for v in 0..=n {
                for t in 0..=n {
                    if is_valid_triple(n, u, v, t) {
                        let s = orbit_size(n, u, v, t).unwrap().to_u64().unwrap();
                        assert_eq!(s, counts[&(u, v, t)]);
                        total += s;
                    } else {
                        assert!(!counts.contains_key(&(u, v, t)));
                        assert!(orbit_size(n, u, v, t).is_err());
                    }
                }
            }
        }
        assert_eq!(total, 256);
        for u in 0..=10 {
            assert_eq!(orbit_size(10, u, u, 0).unwrap(), binomial(10, u as u64));
        }
    }

    #[test]
    fn ball_orbit_completeness() {
        for n in 1..=12u32 {
            for w in 0..=n {
                let mut total = BigUint::default();
                for u in 0..=w {
                    for v in 0..=w {
                        for t in 0..=n {
                            if is_valid_triple(n, u, v, t) {
                                total += orbit_size(n, u, v, t).unwrap();
                            }
                        }
                    }
                }
                let ball: BigUint = (0..=w).map(|i| binomial(n as u64, i as u64)).sum();
                assert_eq!(total, &ball * &ball);
            }
        }
    }
}
