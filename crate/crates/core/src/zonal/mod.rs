//! Zonal polynomials `Z_k(u,v,t)` of the `S_n`-isotypic components and the
//! closed-form bounds built from them.
//!
//! `Z_k(x,y)` depends only on `u = wt(x)`, `v = wt(y)`, `t = d(x,y)` and is a
//! positive semidefinite kernel on `{0,1}^n`. Normalisation: the coefficient
//! of `t^k` is `±1`, with the sign fixed by `Z_k(u,u,0) >= 0`.

pub mod bounds;
pub mod poly;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
pub use poly::{int, rat, PolyUVT, Rational};

/// Largest `k` accepted by [`zonal_general`] unless a limit is passed explicitly.
pub const DEFAULT_MAX_K: u32 = 5;

/// `Z_0, Z_1, Z_2` from their explicit formulas.
pub fn zonal_closed_form(k: u32, n: u32) -> Result<PolyUVT> {
    let (u, v, t) = (PolyUVT::u(n), PolyUVT::v(n), PolyUVT::t(n));
    let c = |x: Rational| PolyUVT::constant(n, x);
    let ni = n as i64;
    match k {
        0 => Ok(c(Rational::one())),
        1 => {
            if n == 0 {
                return Err(Error::InvalidParameters("Z_1 needs n >= 1".into()));
            }
            let uv = &u * &v;
            Ok(&(&(&(-&t) + &u) + &v) - &uv.scale(&rat(2, ni)))
        }
        2 => {
            if n < 3 {
                return Err(Error::InvalidParameters("Z_2 needs n >= 3".into()));
            }
            let uv = &u * &v;
            let lin = &(&(&c(int(ni)) - &u.scale(&int(ni))) - &v.scale(&int(ni))) + &uv.scale(&int(2));
            let t_term = &lin * &t;
            let u2 = u.pow(2);
            let v2 = v.pow(2);
            let mut rest = (&u2 * &v2).scale(&int(4));
            rest = &rest - &(&(&u2 * &v) + &(&u * &v2)).scale(&int(4 * ni));
            rest = &rest + &(&u2 + &v2).scale(&int((ni + 2) * (ni - 1)));
            rest = &rest + &uv.scale(&int(2 * ni * (ni + 1)));
            rest = &rest - &(&u + &v).scale(&int(2 * ni * (ni - 1)));
            let z = &(&t.pow(2) + &t_term.scale(&rat(2, ni - 2))) + &rest.scale(&rat(1, (ni - 1) * (ni - 2)));
            Ok(z)
        }
        _ => Err(Error::InvalidParameters(format!("closed form available for k <= 2, got {k}"))),
    }
}

/// Falling factorial `p (p-1) ... (p-j+1)`.
fn falling(p: &PolyUVT, j: u32) -> PolyUVT {
    let mut acc = PolyUVT::constant(p.n, Rational::one());
    for i in 0..j {
        acc = &acc * &(p - &PolyUVT::constant(p.n, int(i as i64)));
    }
    acc
}

fn factorial(j: u32) -> BigInt {
    (1..=j as u64).fold(BigInt::one(), |a, b| a * b)
}

/// All ways to write `total` as an ordered sum of four nonnegative parts.
fn compositions4(total: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..=total {
        for b in 0..=total - a {
            for c in 0..=total - a - b {
                out.push([a, b, c, total - a - b - c]);
            }
        }
    }
    out
}

/// `K_s(x,y) = Σ χ_a(x) χ_b(y)` over `|a| = |b| = k`, `|a ∩ b| = s`, as a
/// polynomial in `(u,v,t)`.
///
/// A coordinate of type `(x_i, y_i)` contributes the factors `(xy, x, y)` to
/// positions in `a∩b`, `a\b`, `b\a` with signs `00: (+,+,+)`, `01: (-,+,-)`,
/// `10: (-,-,+)`, `11: (+,-,-)`; the number of coordinates of each type is
/// linear in `(u,v,t)`.
fn pair_kernel(n: u32, k: u32, s: u32) -> PolyUVT {
    let (u, v, t) = (PolyUVT::u(n), PolyUVT::v(n), PolyUVT::t(n));
    let half = rat(1, 2);
    let counts = [
        &PolyUVT::constant(n, int(n as i64)) - &(&(&u + &v) + &t).scale(&half),
        (&(&v - &u) + &t).scale(&half),
        (&(&u - &v) + &t).scale(&half),
        (&(&u + &v) - &t).scale(&half),
    ];
    let signs: [[i64; 3]; 4] = [[1, 1, 1], [-1, 1, -1], [-1, -1, 1], [1, -1, -1]];
    let m = k - s;
    // group allocations by the number of positions used per type
    let mut weights: HashMap<[u32; 4], Rational> = HashMap::new();
    for sa in compositions4(s) {
        for xa in compositions4(m) {
            for ya in compositions4(m) {
                let mut coef = Rational::one();
                let mut used = [0u32; 4];
                for tau in 0..4 {
                    let sign = signs[tau][0].pow(sa[tau]) * signs[tau][1].pow(xa[tau]) * signs[tau][2].pow(ya[tau]);
                    let den = factorial(sa[tau]) * factorial(xa[tau]) * factorial(ya[tau]);
                    coef *= Rational::new(BigInt::from(sign), den);
                    used[tau] = sa[tau] + xa[tau] + ya[tau];
                }
                *weights.entry(used).or_insert_with(Rational::zero) += coef;
            }
        }
    }
    let mut cache: HashMap<(usize, u32), PolyUVT> = HashMap::new();
    let mut keys: Vec<_> = weights.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    keys.sort_by_key(|a| a.0);
    let mut out = PolyUVT::zero(n);
    for (used, c) in keys {
        let mut term = PolyUVT::constant(n, c);
        for (tau, &j) in used.iter().enumerate() {
            let f = cache.entry((tau, j)).or_insert_with(|| falling(&counts[tau], j));
            term = &term * f;
        }
        out = &out + &term;
    }
    out
}

/// Kernel of a rational matrix by Gauss-Jordan elimination.
fn kernel(mut m: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut vec = vec![Rational::zero(); cols];
            vec[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                vec[pc] = -m[row][f].clone();
            }
            vec
        })
        .collect()
}

/// `Z_k` for any `k <= n/2`, as the invariant kernel annihilated by the
/// down operator `d`. Limited to `k <= DEFAULT_MAX_K`.
pub fn zonal_general(k: u32, n: u32) -> Result<PolyUVT> {
    zonal_general_with_limit(k, n, DEFAULT_MAX_K)
}

pub fn zonal_general_with_limit(k: u32, n: u32, max_k: u32) -> Result<PolyUVT> {
    if 2 * k > n {
        return Err(Error::InvalidParameters(format!("Z_{k} needs 2k <= n, got n={n}")));
    }
    if k > max_k {
        return Err(Error::InvalidParameters(format!("k={k} exceeds the configured limit {max_k}")));
    }
    if k == 0 {
        return Ok(PolyUVT::constant(n, Rational::one()));
    }
    // d_x K_s = (k-s+1) L_{s-1} + (n-2k+1+s) L_s, where L_r pairs (k-1)-sets with k-sets meeting in r
    let mut dm = vec![vec![Rational::zero(); (k + 1) as usize]; k as usize];
    for s in 0..=k {
        if s >= 1 {
            dm[(s - 1) as usize][s as usize] = int((k - s + 1) as i64);
        }
        if s < k {
            dm[s as usize][s as usize] = int((n - 2 * k + 1 + s) as i64);
        }
    }
    let ker = kernel(dm, (k + 1) as usize);
    if ker.len() != 1 {
        return Err(Error::Solver(format!("kernel of d has dimension {} (expected 1)", ker.len())));
    }
    let mut z = PolyUVT::zero(n);
    for (s, c) in ker[0].iter().enumerate() {
        if !c.is_zero() {
            z = &z + &pair_kernel(n, k, s as u32).scale(c);
        }
    }
    normalize(z)
}

/// Scales so the `t^k` coefficient is `±1` and `Z(u,u,0) >= 0`.
fn normalize(z: PolyUVT) -> Result<PolyUVT> {
    let n = z.n;
    let deg = z.total_degree().unwrap_or(0);
    let lead = (0..=deg)
        .rev()
        .map(|k| z.coeff(0, 0, k))
        .find(|c| !c.is_zero())
        .ok_or_else(|| Error::Solver("zonal polynomial has no pure t terms".into()))?;
    let mut z = z.scale(&(Rational::one() / lead.abs()));
    let diag: Vec<Rational> = (0..=n).map(|u| z.eval_int(u, u, 0)).collect();
    if diag.iter().any(|x| x.is_negative()) {
        z = -&z;
        if (0..=n).any(|u| z.eval_int(u, u, 0).is_negative()) {
            return Err(Error::Solver("Z(u,u,0) changes sign".into()));
        }
    }
    Ok(z)
}
