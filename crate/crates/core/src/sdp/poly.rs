//! Polynomial SDP: search for `P(u,v,t) = Σ_k Σ_{i,j} (F_k)_{ij} u^i v^j Z_k`
//! with `P - f_0 ⪰ 0`, `P <= 0` on Ω(n,d,w) and `P(u,u,0) <= 1`, which gives
//! `L(n,d,w) <= 1/f_0`.
//!
//! The basis uses `(u/n)^i` and `Z_k / n^k` for conditioning. The numerical
//! optimum is turned into an exact certificate: the matrices are rounded to
//! rationals and shifted to be positive definite (checked by exact pivots),
//! then the constant is lowered until `P <= 0` on Ω and everything is scaled
//! so that `max_u P(u,u,0) = 1`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sdp::orbit::omega;
use crate::sdp::problem::{BlockKind, SdpProblem};
use crate::sdp::solver::{solve, SolveReport, SolverOptions};
use crate::zonal::{int, zonal_closed_form, PolyUVT, Rational};

/// One matrix entry `(F_k)_{ij}` (with `i <= j`) and the polynomial it multiplies.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyBasisEntry {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub poly: PolyUVT,
}

#[derive(Clone, Debug)]
pub struct PolySdp {
    pub n: u32,
    pub d: u32,
    pub w: u32,
    pub degree: u32,
    pub problem: SdpProblem,
    /// Basis for every variable except the last one, which is `f_0`.
    pub basis: Vec<PolyBasisEntry>,
    pub block_dims: Vec<usize>,
    /// Points where `P <= 0` is imposed (Ω up to the `u <-> v` symmetry).
    pub omega_points: Vec<(u32, u32, u32)>,
}

/// Builds the program. `degree` is 1 or 2.
pub fn build_poly_sdp(n: u32, d: u32, w: u32, degree: u32) -> Result<PolySdp> {
    if !(1..=2).contains(&degree) {
        return Err(Error::InvalidParameters(format!("polynomial degree must be 1 or 2, got {degree}")));
    }
    if n == 0 || d == 0 || d > n || w > n {
        return Err(Error::InvalidParameters(format!("need 1 <= d <= n, w <= n; got ({n},{d},{w})")));
    }
    let s_u = PolyUVT::u(n).scale(&Rational::new(1.into(), n.into()));
    let s_v = PolyUVT::v(n).scale(&Rational::new(1.into(), n.into()));
    let mut basis = Vec::new();
    let mut block_dims = Vec::new();
    for k in 0..=degree {
        if 2 * k > n || (k == 2 && n < 3) {
            break;
        }
        let nk = Rational::from_integer(num_bigint::BigInt::from(n).pow(k));
        let z = zonal_closed_form(k, n)?.scale(&(Rational::one() / nk));
        let dim = (degree - k + 1) as usize;
        block_dims.push(dim);
        for i in 0..dim {
            for j in i..dim {
                let mono = if i == j {
                    &s_u.pow(i as u32) * &s_v.pow(i as u32)
                } else {
                    &(&s_u.pow(i as u32) * &s_v.pow(j as u32)) + &(&s_u.pow(j as u32) * &s_v.pow(i as u32))
                };
                basis.push(PolyBasisEntry { k: k as usize, i, j, poly: &mono * &z });
            }
        }
    }
    let omega_points: Vec<_> = omega(n, d, w).triples.into_iter().filter(|&(u, v, _)| u <= v).collect();

    let mut p = SdpProblem::new();
    let blocks: Vec<usize> = block_dims
        .iter()
        .enumerate()
        .map(|(k, &dim)| p.add_block(format!("F{k}"), dim, BlockKind::Psd))
        .collect();
    let rows = omega_points.len() + (w as usize + 1);
    let lp = p.add_block("pointwise", rows, BlockKind::Diagonal);
    for u in 0..=w as usize {
        p.add_constant(lp, omega_points.len() + u, omega_points.len() + u, 1.0);
    }
    for b in &basis {
        let var = p.add_variable(format!("F{}[{},{}]", b.k, b.i, b.j), 0.0);
        p.add_coefficient(var, blocks[b.k], b.i, b.j, 1.0);
        for (row, &(u, v, t)) in omega_points.iter().enumerate() {
            let val = b.poly.eval_f64(u as f64, v as f64, t as f64);
            p.add_coefficient(var, lp, row, row, -val);
        }
        for u in 0..=w {
            let row = omega_points.len() + u as usize;
            p.add_coefficient(var, lp, row, row, -b.poly.eval_f64(u as f64, u as f64, 0.0));
        }
    }
    let f0 = p.add_variable("f0", 1.0);
    p.add_coefficient(f0, blocks[0], 0, 0, -1.0);
    p.canonicalize();
    Ok(PolySdp { n, d, w, degree, problem: p, basis, block_dims, omega_points })
}

#[derive(Clone, Debug)]
pub struct PolyBound {
    /// Exact certified `f_0` after repair.
    pub f0: Rational,
    /// Exact certified upper bound `1/f_0` on `L(n,d,w)`.
    pub bound: Rational,
    pub polynomial: PolyUVT,
    pub report: SolveReport,
}

impl PolyBound {
    /// `bound` as a float, rounded upwards.
    pub fn bound_f64(&self) -> f64 {
        let b = self.bound.to_f64().unwrap_or(f64::INFINITY);
        b + b.abs() * 4.0 * f64::EPSILON
    }
}

fn to_rational(x: f64) -> Rational {
    BigRational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Positive definiteness by exact Gaussian elimination.
fn is_positive_definite(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    for c in 0..n {
        if !a[c][c].is_positive() {
            return false;
        }
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for j in c..n {
                let sub = &f * &a[c][j];
                a[r][j] -= sub;
            }
        }
    }
    true
}

/// Solves the program and certifies the result exactly.
pub fn solve_poly_sdp(sdp: &PolySdp, opts: &SolverOptions) -> Result<PolyBound> {
    let report = solve(&sdp.problem, opts)?;
    let y = &report.y;
    let nb = sdp.basis.len();
    let f0 = to_rational(y[nb]);

    // G_k = F_k - f_0 e_0 e_0^T (k = 0) rounded, then shifted to be positive definite
    let mut g: Vec<Vec<Vec<Rational>>> =
        sdp.block_dims.iter().map(|&dim| vec![vec![Rational::zero(); dim]; dim]).collect();
    for (idx, b) in sdp.basis.iter().enumerate() {
        let v = to_rational(y[idx]);
        g[b.k][b.i][b.j] = v.clone();
        g[b.k][b.j][b.i] = v;
    }
    g[0][0][0] -= &f0;
    for gk in g.iter_mut() {
        let dim = gk.len();
        let approx = DMatrix::from_fn(dim, dim, |i, j| gk[i][j].to_f64().unwrap_or(0.0));
        let lam = SymmetricEigen::new(approx.clone()).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        let scale = approx.abs().max().max(1e-300);
        let mut shift = (-lam).max(0.0) + 1e-12 * scale;
        let mut attempt = 0;
        loop {
            let mut shifted = gk.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] += to_rational(shift);
            }
            if is_positive_definite(&shifted) {
                *gk = shifted;
                break;
            }
            attempt += 1;
            if attempt > 40 {
                return Err(Error::NotCertified("could not make a coefficient block positive definite".into()));
            }
            shift = shift * 2.0 + 1e-15 * scale;
        }
    }

    // P from the repaired coefficients
    let mut poly = PolyUVT::zero(sdp.n);
    for b in &sdp.basis {
        let mut c = g[b.k][b.i][b.j].clone();
        if b.k == 0 && b.i == 0 && b.j == 0 {
            c += &f0;
        }
        poly = &poly + &b.poly.scale(&c);
    }
    let worst = sdp
        .omega_points
        .iter()
        .map(|&(u, v, t)| poly.eval_int(u, v, t))
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let f0_shifted = &f0 - &worst;
    let poly = &poly - &PolyUVT::constant(sdp.n, worst);
    let diag_max = (0..=sdp.w)
        .map(|u| poly.eval_int(u, u, 0))
        .fold(None::<Rational>, |a, b| Some(match a { Some(a) if a >= b => a, _ => b }))
        .unwrap_or_else(|| int(1));
    if !f0_shifted.is_positive() || !diag_max.is_positive() {
        return Err(Error::NotCertified(format!(
            "repaired point has f0 = {} and max P(u,u,0) = {}",
            f0_shifted.to_f64().unwrap_or(f64::NAN),
            diag_max.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let f0_final = &f0_shifted / &diag_max;
    let polynomial = poly.scale(&(Rational::one() / &diag_max));
    Ok(PolyBound { bound: Rational::one() / &f0_final, f0: f0_final, polynomial, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zonal::bounds::{degree2_bound, elias_degree1};

    fn bound(n: u32, d: u32, w: u32, degree: u32) -> f64 {
        let sdp = build_poly_sdp(n, d, w, degree).unwrap();
        solve_poly_sdp(&sdp, &SolverOptions::default()).unwrap().bound_f64()
    }

    #[test]
    fn degree_two_at_most_closed_form() {
        let b = bound(12, 6, 6, 2);
        assert!(b <= 23.0 + 1e-6, "{b}");
        let b = bound(16, 8, 8, 2);
        assert!(b <= 31.0 + 1e-6, "{b}");
    }

    #[test]
    fn degree_one_matches_elias() {
        let e = elias_degree1(10, 4, 1).unwrap().to_f64().unwrap();
        let b = bound(10, 4, 1, 2);
        assert!(b <= e + 1e-6, "{b} vs {e}");
        let b1 = bound(16, 8, 4, 1);
        assert!((b1 - 4.0).abs() < 1e-5, "{b1}");
    }

    #[test]
    fn empty_omega_gives_one() {
        let b = bound(7, 3, 0, 2);
        assert!((b - 1.0).abs() < 1e-6, "{b}");
    }

    #[test]
    fn certificate_is_exactly_valid() {
        let sdp = build_poly_sdp(12, 6, 6, 2).unwrap();
        let r = solve_poly_sdp(&sdp, &SolverOptions::default()).unwrap();
        for &(u, v, t) in &sdp.omega_points {
            assert!(!r.polynomial.eval_int(u, v, t).is_positive());
        }
        for u in 0..=6 {
            assert!(r.polynomial.eval_int(u, u, 0) <= int(1));
        }
        assert!(r.polynomial.is_symmetric_uv());
        assert_eq!(degree2_bound(12, 6, 6), Some(int(23)));
    }
}
