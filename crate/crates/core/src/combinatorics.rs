//! Binomial coefficients, Hamming-ball volumes and the binary entropy function.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Exact binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` in 128-bit arithmetic. Exact for every `n <= 64`.
pub fn binom(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Signed binomial with the convention `C(n, k) = 0` for `k < 0` or `k > n` (`n >= 0`).
pub fn binom_i(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binom(n as u32, k as u32)
    }
}

/// `Σ_{i=lo}^{hi} C(n, i)`, empty sums are zero.
pub fn binom_range_sum(n: u32, lo: u32, hi: u32) -> u128 {
    if lo > hi {
        return 0;
    }
    (lo..=hi.min(n)).map(|i| binom(n, i)).sum()
}

/// Volume of the Hamming ball of radius `r` in `{0,1}^n`.
pub fn ball_volume(n: u32, r: u32) -> u128 {
    binom_range_sum(n, 0, r)
}

/// Binary entropy `h(p) = -p log2 p - (1-p) log2 (1-p)`, with `h(0) = h(1) = 0`.
pub fn entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidParameters(format!("entropy argument {p} outside [0,1]")));
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.log2() - (1.0 - p) * (1.0 - p).log2())
}

/// Inverse of the binary entropy on `[0, 1/2]`, by bisection to `1e-12`.
pub fn entropy_inv(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) || y.is_nan() {
        return Err(Error::InvalidParameters(format!("entropy_inv argument {y} outside [0,1]")));
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if entropy(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `⌈a / b⌉` for `b > 0`.
pub fn ceil_div(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}
