//! Block diagonalization of `S_n`-invariant matrices on `{0,1}^n`.
//!
//! An invariant matrix is determined by its values `x(u,v,t)` on the orbits of
//! pairs. For `k = 0..=n/2` the block `k` is indexed by weights `i, j` in
//! `k..=n-k` and has entries
//!
//! ```text
//! B_k[i][j] = Σ_s β(i,j,k,s) · x(i, j, i+j-2s) / sqrt(C(n-2k,i-k) C(n-2k,j-k))
//! β(i,j,k,s) = Σ_p (-1)^(p-s) C(p,s) C(n-2k,p-k) C(n-k-p,i-p) C(n-k-p,j-p)
//! ```
//!
//! where `s` is the size of the intersection of the supports. The full matrix
//! is PSD iff every block is. The coefficient formula is checked against
//! explicit eigendecompositions by [`verify_block_diagonalization`].

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::sdp::orbit::is_valid_triple;

fn binom_z(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        BigInt::from(binomial(n as u64, k as u64))
    }
}

/// Exact β coefficient; `s` is the intersection size `|supp x ∩ supp y|`.
pub fn beta(n: u32, i: u32, j: u32, k: u32, s: u32) -> BigInt {
    let (n, i, j, k, s) = (n as i64, i as i64, j as i64, k as i64, s as i64);
    let mut acc = BigInt::zero();
    for p in s.max(k)..=i.min(j) {
        let term = binom_z(p, s) * binom_z(n - 2 * k, p - k) * binom_z(n - k - p, i - p) * binom_z(n - k - p, j - p);
        if (p - s) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Dimension of block `k`.
pub fn block_dim(n: u32, k: u32) -> usize {
    (n - 2 * k + 1) as usize
}

/// Coefficient of `x(i,j,t)` in entry `(i,j)` of block `k`, normalised.
/// Zero when `(i,j,t)` is not a valid triple or `i, j` fall outside the block.
pub fn block_coefficient(n: u32, k: u32, i: u32, j: u32, t: u32) -> f64 {
    if i < k || j < k || i > n - k || j > n - k || !is_valid_triple(n, i, j, t) {
        return 0.0;
    }
    let s = (i + j - t) / 2;
    let b = beta(n, i, j, k, s);
    if b.is_zero() {
        return 0.0;
    }
    let den = binomial((n - 2 * k) as u64, (i - k) as u64) * binomial((n - 2 * k) as u64, (j - k) as u64);
    // b / sqrt(den), computed as sign(b) sqrt(b^2 / den) in exact rational then f64
    let ratio = BigRational::new(&b * &b, BigInt::from(den));
    let mag = ratio.to_f64().unwrap_or(f64::INFINITY).sqrt();
    if b < BigInt::zero() {
        -mag
    } else {
        mag
    }
}

/// Numeric blocks for the invariant matrix with orbit values `x(u,v,t)`.
///
/// `x` is queried only on valid triples and must be symmetric in `(u,v)`.
pub fn block_diagonalize(n: u32, x: impl Fn(u32, u32, u32) -> f64) -> Vec<DMatrix<f64>> {
    (0..=n / 2)
        .map(|k| {
            let dim = block_dim(n, k);
            let mut m = DMatrix::zeros(dim, dim);
            for i in k..=n - k {
                for j in k..=n - k {
                    let mut acc = 0.0;
                    for t in 0..=n {
                        if is_valid_triple(n, i, j, t) {
                            let c = block_coefficient(n, k, i, j, t);
                            if c != 0.0 {
                                acc += c * x(i, j, t);
                            }
                        }
                    }
                    m[((i - k) as usize, (j - k) as usize)] = acc;
                }
            }
            m
        })
        .collect()
}

/// The explicit `2^n × 2^n` matrix `M(x,y) = x(wt x, wt y, d(x,y))`.
pub fn explicit_matrix(n: u32, x: impl Fn(u32, u32, u32) -> f64) -> DMatrix<f64> {
    let size = 1usize << n;
    DMatrix::from_fn(size, size, |a, b| {
        x((a as u32).count_ones(), (b as u32).count_ones(), ((a ^ b) as u32).count_ones())
    })
}

pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    SymmetricEigen::new(m.clone()).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Debug, Default)]
pub struct BlockCheckReport {
    pub n: u32,
    pub trials: usize,
    pub psd_cases: usize,
    pub disagreements: usize,
    /// Largest `|λ_min(explicit) - min_k λ_min(block k)|` seen, relative to the matrix scale.
    pub max_eigenvalue_gap: f64,
}

/// Values of `x` on all valid triples of length `n`, keyed by `(u,v,t)`.
pub type OrbitValues = std::collections::HashMap<(u32, u32, u32), f64>;

/// Averages a matrix over the orbits of pairs, i.e. the projection onto invariant matrices.
fn orbit_average(n: u32, m: &DMatrix<f64>) -> OrbitValues {
    let mut sums: std::collections::HashMap<(u32, u32, u32), (f64, usize)> = Default::default();
    let size = 1usize << n;
    for a in 0..size {
        for b in 0..size {
            let key = ((a as u32).count_ones(), (b as u32).count_ones(), ((a ^ b) as u32).count_ones());
            let e = sums.entry(key).or_insert((0.0, 0));
            e.0 += m[(a, b)];
            e.1 += 1;
        }
    }
    sums.into_iter().map(|(k, (s, c))| (k, s / c as f64)).collect()
}

fn random_symmetric_orbit_values<R: Rng>(n: u32, rng: &mut R) -> OrbitValues {
    let mut x = OrbitValues::new();
    for u in 0..=n {
        for v in u..=n {
            for t in 0..=n {
                if is_valid_triple(n, u, v, t) {
                    // random rational with denominator 64
                    let val = rng.random_range(-640i32..=640) as f64 / 64.0;
                    x.insert((u, v, t), val);
                    x.insert((v, u, t), val);
                }
            }
        }
    }
    x
}

fn random_psd_orbit_values<R: Rng>(n: u32, rng: &mut R) -> OrbitValues {
    let size = 1usize << n;
    let rank = rng.random_range(1..=size);
    let b = DMatrix::from_fn(size, rank, |_, _| rng.random_range(-64i32..=64) as f64 / 16.0);
    orbit_average(n, &(&b * b.transpose()))
}

/// Compares PSD verdicts of the explicit matrix and of the blocks on random
/// invariant matrices: half sign-indefinite, half PSD averages shifted by a
/// random multiple of the identity. Tolerance `1e-8` relative to the scale.
pub fn verify_block_diagonalization<R: Rng>(n: u32, trials: usize, rng: &mut R) -> Result<BlockCheckReport> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidParameters(format!("oracle supports 1 <= n <= 6, got {n}")));
    }
    let tol = 1e-8;
    let mut report = BlockCheckReport { n, trials, ..Default::default() };
    for trial in 0..trials {
        let mut x = if trial % 2 == 0 {
            random_symmetric_orbit_values(n, rng)
        } else {
            random_psd_orbit_values(n, rng)
        };
        if trial % 2 == 1 {
            let scale = x.values().fold(0.0f64, |a, &b| a.max(b.abs())).max(1.0);
            let shift = rng.random_range(-1.0..0.25) * scale;
            for u in 0..=n {
                *x.get_mut(&(u, u, 0)).expect("diagonal orbit") += shift;
            }
        }
        let f = |u: u32, v: u32, t: u32| x.get(&(u, v, t)).copied().unwrap_or(0.0);
        let explicit = min_eigenvalue(&explicit_matrix(n, f));
        let blocks = block_diagonalize(n, f).iter().map(min_eigenvalue).fold(f64::INFINITY, f64::min);
        let scale = x.values().fold(1.0f64, |a, &b| a.max(b.abs())) * (1u64 << n) as f64;
        let explicit_psd = explicit >= -tol * scale;
        let blocks_psd = blocks >= -tol * scale;
        if explicit_psd {
            report.psd_cases += 1;
        }
        if explicit_psd != blocks_psd {
            report.disagreements += 1;
        }
        report.max_eigenvalue_gap = report.max_eigenvalue_gap.max((explicit - blocks).abs() / scale);
    }
    Ok(report)
}
