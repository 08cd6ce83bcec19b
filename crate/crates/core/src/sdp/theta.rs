//! The symmetry-reduced ϑ′ program for codes inside the Hamming ball.
//!
//! The graph has the words of weight at most `w` as vertices and joins words
//! at distance `1..d-1`; its ϑ′ number bounds `L(n,d,w)`. An `S_n`-invariant
//! feasible matrix is described by orbit values `x(u,v,t)`. The program is
//! written in the mass variables
//!
//! ```text
//! y(u,v,t) = m · |orbit(u,v,t)| · x(u,v,t),   m = 2 if u < v else 1
//! ```
//!
//! so the objective is `Σ y`, the trace condition reads `Σ_u y(u,u,0) = 1`,
//! and block `k` is congruence-scaled by `diag(sqrt C(n,i))`. The variable
//! `y(0,0,0)` is eliminated through the trace condition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::sdp::blocks::beta;
use crate::sdp::orbit::{is_valid_triple, orbit_size};
use crate::sdp::problem::{BlockKind, SdpProblem, VariableBound};

/// Coefficient of `y(u,v,t)` in entry `(u,v)` of the scaled block `k`.
fn scaled_coefficient(n: u32, k: u32, u: u32, v: u32, t: u32) -> Result<f64> {
    let s = (u + v - t) / 2;
    let b = beta(n, u, v, k, s);
    if b.is_zero() {
        return Ok(0.0);
    }
    let orbit = BigInt::from(orbit_size(n, u, v, t)?);
    let mult = if u == v { 1 } else { 2 };
    let den = BigInt::from(binomial((n - 2 * k) as u64, (u - k) as u64) * binomial((n - 2 * k) as u64, (v - k) as u64))
        * &orbit
        * &orbit
        * BigInt::from(mult * mult);
    let num = &b * &b * BigInt::from(binomial(n as u64, u as u64) * binomial(n as u64, v as u64));
    let mag = BigRational::new(num, den).to_f64().unwrap_or(f64::INFINITY).sqrt();
    Ok(if b.is_negative() { -mag } else { mag })
}

/// Variables of the ϑ′ program, in construction order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaLayout {
    pub n: u32,
    pub d: u32,
    pub w: u32,
    /// `(u, v, t)` with `u <= v`, excluding the eliminated `(0,0,0)`.
    pub triples: Vec<(u32, u32, u32)>,
}

/// Builds the ϑ′ program for `L(n,d,w)`. Maximising gives an upper bound.
pub fn build_theta_prime_sdp(n: u32, d: u32, w: u32) -> Result<(SdpProblem, ThetaLayout)> {
    if n == 0 || n > 64 || d == 0 || d > n || w > n {
        return Err(Error::InvalidParameters(format!("theta program needs 1 <= d <= n <= 64, w <= n; got ({n},{d},{w})")));
    }
    let mut triples = Vec::new();
    for u in 0..=w {
        if u > 0 {
            triples.push((u, u, 0));
        }
        for v in u..=w {
            for t in d.max(1)..=n {
                if is_valid_triple(n, u, v, t) {
                    triples.push((u, v, t));
                }
            }
        }
    }

    let mut p = SdpProblem::new();
    let mut psd = Vec::new();
    for k in 0..=w.min(n / 2) {
        let top = w.min(n - k);
        psd.push(p.add_block(format!("k={k}"), (top - k + 1) as usize, BlockKind::Psd));
    }
    let lp = p.add_block("nonnegativity", triples.len() + 1, BlockKind::Diagonal);

    // y(0,0,0) = 1 - Σ_{u>=1} y(u,u,0) sits at entry (0,0) of block 0 only
    let origin = scaled_coefficient(n, 0, 0, 0, 0)?;
    p.add_constant(psd[0], 0, 0, origin);
    p.add_constant(lp, triples.len(), triples.len(), 1.0);

    for (idx, &(u, v, t)) in triples.iter().enumerate() {
        let diagonal = t == 0;
        let var = p.add_variable(format!("y({u},{v},{t})"), if diagonal { 0.0 } else { 1.0 });
        for (k, &blk) in psd.iter().enumerate() {
            let k = k as u32;
            if u < k || v > n - k {
                continue;
            }
            let c = scaled_coefficient(n, k, u, v, t)?;
            p.add_coefficient(var, blk, (u - k) as usize, (v - k) as usize, c);
        }
        if diagonal {
            p.add_coefficient(var, psd[0], 0, 0, -origin);
            p.add_coefficient(var, lp, triples.len(), triples.len(), -1.0);
        }
        p.add_coefficient(var, lp, idx, idx, 1.0);
    }
    p.offset = 1.0;
    // every y is nonnegative and Σ y <= objective, so |y_i| <= objective
    p.bounds = VariableBound::RelativeToObjective(vec![1.0; triples.len()]);
    p.canonicalize();
    Ok((p, ThetaLayout { n, d, w, triples }))
}
