//! Primal-dual interior-point method for [`SdpProblem`].
//!
//! Infeasible-start path following with the HKM search direction and a
//! Mehrotra predictor-corrector. Internally the problem is put in the standard
//! pair
//!
//! ```text
//! (P) minimize <C,X>  s.t. <A_i,X> = b'_i, X ⪰ 0
//! (D) maximize b'^T y' s.t. Z = C - Σ y'_i A_i ⪰ 0
//! ```
//!
//! with `A_i = G_i`, `b' = -b`, `y' = -y`, so (D) is the user's problem.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::sdp::problem::{BlockKind, Entry, SdpProblem, VariableBound};

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iterations: usize,
    /// Print one line per iteration to stderr.
    pub progress: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-8, max_iterations: 200, progress: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    /// Stopped early; the point is the last iterate and may be inaccurate.
    MaxIterations,
    Stalled,
    /// A factorisation failed; the best earlier iterate is returned.
    NumericalBreakdown,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// `offset + b^T y` at the returned `y` (the maximisation side).
    pub primal_value: f64,
    /// `offset + <C, X>` at the returned `X` (the minimisation side).
    pub dual_value: f64,
    pub gap: f64,
    /// Largest violation among `Z(y) ⪰ 0` (negated min eigenvalue) and `<G_i,X> = -b_i`.
    pub max_violation: f64,
    /// Smallest eigenvalue over the blocks of `Z(y)`.
    pub min_eigenvalue: f64,
    /// Rigorous upper bound on the optimum, when the problem carries variable bounds.
    pub certified_bound: Option<f64>,
    /// How `certified_bound` was obtained.
    pub certificate: String,
    pub iterations: usize,
    pub y: Vec<f64>,
}

#[derive(Clone, Debug)]
enum Mat {
    Dense(DMatrix<f64>),
    Diag(DVector<f64>),
}

type Blocks = Vec<Mat>;

fn zeros(p: &SdpProblem) -> Blocks {
    p.blocks
        .iter()
        .map(|b| match b.kind {
            BlockKind::Psd => Mat::Dense(DMatrix::zeros(b.dim, b.dim)),
            BlockKind::Diagonal => Mat::Diag(DVector::zeros(b.dim)),
        })
        .collect()
}

fn scaled_identity(p: &SdpProblem, s: f64) -> Blocks {
    p.blocks
        .iter()
        .map(|b| match b.kind {
            BlockKind::Psd => Mat::Dense(DMatrix::identity(b.dim, b.dim) * s),
            BlockKind::Diagonal => Mat::Diag(DVector::from_element(b.dim, s)),
        })
        .collect()
}

fn add_entries(m: &mut Blocks, entries: &[Entry], scale: f64) {
    for e in entries {
        match &mut m[e.block] {
            Mat::Dense(d) => {
                d[(e.row, e.col)] += scale * e.value;
                if e.row != e.col {
                    d[(e.col, e.row)] += scale * e.value;
                }
            }
            Mat::Diag(v) => v[e.row] += scale * e.value,
        }
    }
}

/// `<A, K>` for a symmetric sparse `A` and any `K`.
fn dot_entries(entries: &[Entry], k: &Blocks) -> f64 {
    entries
        .iter()
        .map(|e| match &k[e.block] {
            Mat::Dense(d) => {
                if e.row == e.col {
                    e.value * d[(e.row, e.col)]
                } else {
                    e.value * (d[(e.row, e.col)] + d[(e.col, e.row)])
                }
            }
            Mat::Diag(v) => e.value * v[e.row],
        })
        .sum()
}

fn inner(a: &Blocks, b: &Blocks) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| match (x, y) {
            (Mat::Dense(x), Mat::Dense(y)) => x.dot(y),
            (Mat::Diag(x), Mat::Diag(y)) => x.dot(y),
            _ => unreachable!("block kinds agree"),
        })
        .sum()
}

fn norm(a: &Blocks) -> f64 {
    inner(a, a).sqrt()
}

fn axpy(a: &mut Blocks, s: f64, b: &Blocks) {
    for (x, y) in a.iter_mut().zip(b) {
        match (x, y) {
            (Mat::Dense(x), Mat::Dense(y)) => *x += y * s,
            (Mat::Diag(x), Mat::Diag(y)) => *x += y * s,
            _ => unreachable!("block kinds agree"),
        }
    }
}

fn mul(a: &Blocks, b: &Blocks) -> Blocks {
    a.iter()
        .zip(b)
        .map(|(x, y)| match (x, y) {
            (Mat::Dense(x), Mat::Dense(y)) => Mat::Dense(x * y),
            (Mat::Diag(x), Mat::Diag(y)) => Mat::Diag(x.component_mul(y)),
            _ => unreachable!("block kinds agree"),
        })
        .collect()
}

fn symmetrize(a: &mut Blocks) {
    for x in a.iter_mut() {
        if let Mat::Dense(d) = x {
            let t = d.transpose();
            *d = (&*d + t) * 0.5;
        }
    }
}

fn inverse(a: &Blocks) -> Result<Blocks> {
    a.iter()
        .map(|x| match x {
            Mat::Dense(d) => d
                .clone()
                .cholesky()
                .map(|c| Mat::Dense(c.inverse()))
                .ok_or_else(|| Error::Solver("slack block lost positive definiteness".into())),
            Mat::Diag(v) => {
                if v.iter().all(|&t| t > 0.0) {
                    Ok(Mat::Diag(v.map(|t| 1.0 / t)))
                } else {
                    Err(Error::Solver("diagonal slack lost positivity".into()))
                }
            }
        })
        .collect()
}

fn min_eig(d: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(d.clone()).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// A problem without variables: feasible iff `C ⪰ 0`, and then `X = 0` certifies `offset`.
fn constant_report(p: &SdpProblem, c: &Blocks) -> SolveReport {
    let lam = min_eigenvalue(c);
    let feasible = lam >= 0.0;
    SolveReport {
        status: SolveStatus::Optimal,
        primal_value: p.offset,
        dual_value: p.offset,
        gap: 0.0,
        max_violation: (-lam).max(0.0),
        min_eigenvalue: lam,
        certified_bound: feasible.then_some(p.offset),
        certificate: if feasible { "no variables: X = 0".into() } else { "no variables and C is not PSD".into() },
        iterations: 0,
        y: Vec::new(),
    }
}

fn min_eigenvalue(a: &Blocks) -> f64 {
    a.iter()
        .map(|x| match x {
            Mat::Dense(d) => min_eig(d),
            Mat::Diag(v) => v.iter().cloned().fold(f64::INFINITY, f64::min),
        })
        .fold(f64::INFINITY, f64::min)
}

/// Largest `α` with `x + α dx ⪰ 0`, or infinity.
fn max_step(x: &Blocks, dx: &Blocks) -> f64 {
    let mut alpha = f64::INFINITY;
    for (a, b) in x.iter().zip(dx) {
        match (a, b) {
            (Mat::Dense(a), Mat::Dense(b)) => {
                let Some(ch) = a.clone().cholesky() else {
                    return 0.0;
                };
                let l = ch.l();
                let Some(t) = l.solve_lower_triangular(b) else {
                    return 0.0;
                };
                let Some(s) = l.solve_lower_triangular(&t.transpose()) else {
                    return 0.0;
                };
                let s = (&s + s.transpose()) * 0.5;
                let lam = min_eig(&s);
                if lam < 0.0 {
                    alpha = alpha.min(-1.0 / lam);
                }
            }
            (Mat::Diag(a), Mat::Diag(b)) => {
                for (p, q) in a.iter().zip(b.iter()) {
                    if *q < 0.0 {
                        alpha = alpha.min(-p / q);
                    }
                }
            }
            _ => unreachable!("block kinds agree"),
        }
    }
    alpha
}

struct Layout {
    /// Per dense block: `(variable, entries in that block)`, sorted by variable.
    dense: Vec<Vec<(usize, Vec<Entry>)>>,
    /// Per diagonal block and position: `(variable, coefficient)`.
    diag: Vec<Vec<Vec<(usize, f64)>>>,
}

fn layout(p: &SdpProblem) -> Layout {
    let mut dense = vec![Vec::new(); p.blocks.len()];
    let mut diag: Vec<Vec<Vec<(usize, f64)>>> = p.blocks.iter().map(|b| vec![Vec::new(); b.dim]).collect();
    for (i, entries) in p.coefficients.iter().enumerate() {
        let mut per_block: std::collections::BTreeMap<usize, Vec<Entry>> = Default::default();
        for e in entries {
            match p.blocks[e.block].kind {
                BlockKind::Psd => per_block.entry(e.block).or_default().push(*e),
                BlockKind::Diagonal => diag[e.block][e.row].push((i, e.value)),
            }
        }
        for (b, es) in per_block {
            dense[b].push((i, es));
        }
    }
    Layout { dense, diag }
}

/// Schur complement `M_ij = tr(A_i X A_j Z^{-1})`.
fn schur(p: &SdpProblem, lay: &Layout, x: &Blocks, zinv: &Blocks) -> DMatrix<f64> {
    let m = p.num_variables();
    let mut out = DMatrix::<f64>::zeros(m, m);
    for (b, vars) in lay.dense.iter().enumerate() {
        if vars.is_empty() {
            continue;
        }
        let (Mat::Dense(xb), Mat::Dense(zb)) = (&x[b], &zinv[b]) else {
            unreachable!("dense layout on dense block")
        };
        let dim = xb.nrows();
        for (pos, (i, ei)) in vars.iter().enumerate() {
            // W = Z^{-1} A_i X
            let mut w = DMatrix::<f64>::zeros(dim, dim);
            for e in ei {
                w.ger(e.value, &zb.column(e.row), &xb.row(e.col).transpose(), 1.0);
                if e.row != e.col {
                    w.ger(e.value, &zb.column(e.col), &xb.row(e.row).transpose(), 1.0);
                }
            }
            for (j, ej) in &vars[pos..] {
                let mut acc = 0.0;
                for e in ej {
                    acc += if e.row == e.col {
                        e.value * w[(e.row, e.row)]
                    } else {
                        e.value * (w[(e.col, e.row)] + w[(e.row, e.col)])
                    };
                }
                out[(*i, *j)] += acc;
            }
        }
    }
    for (b, positions) in lay.diag.iter().enumerate() {
        let (Mat::Diag(xb), Mat::Diag(zb)) = (&x[b], &zinv[b]) else {
            continue;
        };
        for (q, list) in positions.iter().enumerate() {
            let s = xb[q] * zb[q];
            for (a, &(i, vi)) in list.iter().enumerate() {
                for &(j, vj) in &list[a..] {
                    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                    out[(lo, hi)] += s * vi * vj;
                }
            }
        }
    }
    for i in 0..m {
        for j in 0..i {
            out[(i, j)] = out[(j, i)];
        }
    }
    out
}

struct Factor {
    chol: nalgebra::Cholesky<f64, nalgebra::Dyn>,
}

fn factor(mut m: DMatrix<f64>) -> Result<Factor> {
    let scale = m.diagonal().iter().cloned().fold(0.0f64, f64::max).max(1e-300);
    for attempt in 0..6 {
        if let Some(chol) = m.clone().cholesky() {
            return Ok(Factor { chol });
        }
        let reg = scale * 1e-14 * 10f64.powi(2 * attempt);
        for i in 0..m.nrows() {
            m[(i, i)] += reg;
        }
    }
    Err(Error::Solver("Schur complement is not positive definite".into()))
}

fn apply_a(p: &SdpProblem, k: &Blocks) -> DVector<f64> {
    DVector::from_iterator(p.num_variables(), p.coefficients.iter().map(|e| dot_entries(e, k)))
}

fn apply_at(p: &SdpProblem, y: &DVector<f64>) -> Blocks {
    let mut out = zeros(p);
    for (i, e) in p.coefficients.iter().enumerate() {
        if y[i] != 0.0 {
            add_entries(&mut out, e, y[i]);
        }
    }
    out
}

fn total_dim(p: &SdpProblem) -> f64 {
    p.blocks.iter().map(|b| b.dim as f64).sum()
}

/// Solves the problem. See the module documentation for the formulation.
pub fn solve(p: &SdpProblem, opts: &SolverOptions) -> Result<SolveReport> {
    p.validate()?;
    let m = p.num_variables();
    let bp = DVector::from_iterator(m, p.objective.iter().map(|b| -b));
    let mut c = zeros(p);
    add_entries(&mut c, &p.constant, 1.0);
    if m == 0 {
        return Ok(constant_report(p, &c));
    }
    let lay = layout(p);
    let nn = total_dim(p);

    let a_norms: Vec<f64> = p
        .coefficients
        .iter()
        .map(|e| e.iter().map(|x| if x.row == x.col { x.value * x.value } else { 2.0 * x.value * x.value }).sum::<f64>().sqrt())
        .collect();
    let max_a = a_norms.iter().cloned().fold(0.0f64, f64::max);
    let c_norm = norm(&c);
    let b_norm = bp.norm();
    let ratio = (0..m).map(|i| (1.0 + bp[i].abs()) / (1.0 + a_norms[i])).fold(0.0f64, f64::max);
    let xi = (nn * ratio).max(nn.sqrt()).max(10.0);
    let eta = (1.0 + max_a.max(c_norm)).max(nn.sqrt()).max(10.0);

    let mut x = scaled_identity(p, xi);
    let mut z = scaled_identity(p, eta);
    let mut y = DVector::<f64>::zeros(m);
    let mut status = SolveStatus::MaxIterations;
    let mut iterations = 0;
    let mut stall = 0;
    let mut best: Option<(f64, Blocks, DVector<f64>)> = None;
    let mut since_best = 0;

    for iter in 0..opts.max_iterations {
        iterations = iter;
        let ax = apply_a(p, &x);
        let rp = &bp - &ax;
        let mut rd = c.clone();
        axpy(&mut rd, -1.0, &z);
        axpy(&mut rd, -1.0, &apply_at(p, &y));
        let mu = inner(&x, &z) / nn;
        let pobj = inner(&c, &x);
        let dobj = bp.dot(&y);
        let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        let pinf = rp.norm() / (1.0 + b_norm);
        let dinf = norm(&rd) / (1.0 + c_norm);
        if opts.progress {
            eprintln!(
                "iter {iter:3}  primal {:+.10e}  dual {:+.10e}  gap {gap:.2e}  pinf {pinf:.2e}  dinf {dinf:.2e}",
                p.offset + dobj,
                p.offset + pobj
            );
        }
        let merit = gap.max(pinf).max(dinf);
        if best.as_ref().is_none_or(|b| merit < 0.9 * b.0) {
            since_best = 0;
        } else {
            since_best += 1;
        }
        if best.as_ref().is_none_or(|b| merit <= b.0) {
            best = Some((merit, x.clone(), y.clone()));
        }
        if gap < opts.tol && pinf < opts.tol && dinf < opts.tol {
            status = SolveStatus::Optimal;
            break;
        }
        if since_best >= 10 {
            status = SolveStatus::Stalled;
            break;
        }

        let Ok(zinv) = inverse(&z) else {
            status = SolveStatus::NumericalBreakdown;
            break;
        };
        let Ok(f) = factor(schur(p, &lay, &x, &zinv)) else {
            status = SolveStatus::NumericalBreakdown;
            break;
        };
        let x_rd_zinv = mul(&mul(&x, &rd), &zinv);

        // predictor: K = -X - X Rd Z^{-1}
        let mut k = x.clone();
        for blk in k.iter_mut() {
            match blk {
                Mat::Dense(d) => *d *= -1.0,
                Mat::Diag(v) => *v *= -1.0,
            }
        }
        axpy(&mut k, -1.0, &x_rd_zinv);
        let direction = |k: &Blocks| -> (DVector<f64>, Blocks, Blocks) {
            let rhs = &rp - apply_a(p, k);
            let dy = f.chol.solve(&rhs);
            let mut dz = rd.clone();
            axpy(&mut dz, -1.0, &apply_at(p, &dy));
            // dX = K + X Rd Z^{-1} - X dZ Z^{-1}
            let mut dx = k.clone();
            axpy(&mut dx, 1.0, &x_rd_zinv);
            axpy(&mut dx, -1.0, &mul(&mul(&x, &dz), &zinv));
            symmetrize(&mut dx);
            (dy, dx, dz)
        };
        let (_, dxa, dza) = direction(&k);
        let ap = max_step(&x, &dxa).min(1.0);
        let ad = max_step(&z, &dza).min(1.0);
        let mut xa = x.clone();
        axpy(&mut xa, ap, &dxa);
        let mut za = z.clone();
        axpy(&mut za, ad, &dza);
        let mu_aff = inner(&xa, &za) / nn;
        let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);

        // corrector: K = σμ Z^{-1} - X - dXa dZa Z^{-1} - X Rd Z^{-1}
        let mut k = zinv.clone();
        for blk in k.iter_mut() {
            match blk {
                Mat::Dense(d) => *d *= sigma * mu,
                Mat::Diag(v) => *v *= sigma * mu,
            }
        }
        axpy(&mut k, -1.0, &x);
        axpy(&mut k, -1.0, &mul(&mul(&dxa, &dza), &zinv));
        axpy(&mut k, -1.0, &x_rd_zinv);
        let (dy, dx, dz) = direction(&k);
        let gamma = 0.9 + 0.09 * ap.min(ad);
        let ap = (gamma * max_step(&x, &dx)).min(1.0);
        let ad = (gamma * max_step(&z, &dz)).min(1.0);
        if ap < 1e-10 && ad < 1e-10 {
            stall += 1;
            if stall >= 3 {
                status = SolveStatus::Stalled;
                break;
            }
        } else {
            stall = 0;
        }
        axpy(&mut x, ap, &dx);
        y += &dy * ad;
        axpy(&mut z, ad, &dz);
        iterations = iter + 1;
    }

    if let Some((_, bx, by)) = best {
        x = bx;
        y = by;
    }
    // user variables y = -y'
    let y_user: Vec<f64> = y.iter().map(|v| -v).collect();
    let z_user = p.slack(&y_user);
    let min_eigenvalue_z = z_user
        .iter()
        .zip(&p.blocks)
        .map(|(d, b)| match b.kind {
            BlockKind::Psd => min_eig(d),
            BlockKind::Diagonal => d.diagonal().iter().cloned().fold(f64::INFINITY, f64::min),
        })
        .fold(f64::INFINITY, f64::min);
    let primal_value = p.objective_value(&y_user);
    let dual_value = p.offset + inner(&c, &x);
    let ax = apply_a(p, &x);
    let eq_violation = (&bp - &ax).amax();
    let (certified_bound, certificate) = certify(p, &lay, &x, &c, &bp);
    Ok(SolveReport {
        status,
        primal_value,
        dual_value,
        gap: (dual_value - primal_value).abs(),
        max_violation: eq_violation.max(-min_eigenvalue_z).max(0.0),
        min_eigenvalue: min_eigenvalue_z,
        certified_bound,
        certificate,
        iterations,
        y: y_user,
    })
}

/// Bound from the minimisation side: shift `X` to be PSD, absorb equality
/// residuals into diagonal-block entries owned by a single variable where that
/// keeps them nonnegative, then account for the remaining residuals
/// `r = b' - A(X)` using the problem's variable bounds.
///
/// For any feasible `y`, `offset + b^T y <= offset + <C,X> + Σ |r_i| |y_i|`.
fn certify(p: &SdpProblem, lay: &Layout, x: &Blocks, c: &Blocks, bp: &DVector<f64>) -> (Option<f64>, String) {
    let mut xs = x.clone();
    let mut shift = 0.0f64;
    for blk in xs.iter_mut() {
        match blk {
            Mat::Dense(d) => {
                let lam = min_eig(d);
                if lam < 0.0 {
                    let s = -lam * (1.0 + 1e-9) + f64::MIN_POSITIVE;
                    shift = shift.max(s);
                    for i in 0..d.nrows() {
                        d[(i, i)] += s;
                    }
                }
            }
            Mat::Diag(v) => {
                for t in v.iter_mut() {
                    if *t < 0.0 {
                        shift = shift.max(-*t);
                        *t = 0.0;
                    }
                }
            }
        }
    }
    let r = bp - apply_a(p, &xs);
    let mut absorbed = 0usize;
    for (b, positions) in lay.diag.iter().enumerate() {
        let Mat::Diag(v) = &mut xs[b] else {
            continue;
        };
        for (q, list) in positions.iter().enumerate() {
            if let [(i, coef)] = list[..] {
                let t = v[q] + r[i] / coef;
                if t >= 0.0 {
                    v[q] = t;
                    absorbed += 1;
                }
            }
        }
    }
    let r = bp - apply_a(p, &xs);
    let base = p.offset + inner(c, &xs);
    // floating-point evaluation slack on the inner products
    let fp = 1e-12 * (1.0 + base.abs());
    match &p.bounds {
        VariableBound::None => (None, "no variable bounds: uncertified".into()),
        VariableBound::Absolute(cb) => {
            let corr: f64 = r.iter().zip(cb).map(|(ri, ci)| ri.abs() * ci).sum();
            (
                Some(base + corr + fp),
                format!("<C,X> + offset with X shifted by {shift:.3e}, {absorbed} residuals absorbed, plus sum |r_i| ybar_i = {corr:.3e}"),
            )
        }
        VariableBound::RelativeToObjective(cb) => {
            let s: f64 = r.iter().zip(cb).map(|(ri, ci)| ri.abs() * ci).sum();
            if s >= 1.0 || base < 0.0 {
                return (None, format!("residual factor {s:.3e} too large to certify"));
            }
            (
                Some(base / (1.0 - s) + fp),
                format!("(<C,X> + offset) / (1 - {s:.3e}) with X shifted by {shift:.3e}, {absorbed} residuals absorbed"),
            )
        }
    }
}

/// `⌊certified + 1e-6⌋`.
pub fn integer_bound(report: &SolveReport) -> Result<u128> {
    let c = report
        .certified_bound
        .ok_or_else(|| Error::NotCertified(format!("no certified bound ({})", report.certificate)))?;
    Ok(floor_with_margin(c))
}

pub fn floor_with_margin(value: f64) -> u128 {
    (value + 1e-6).floor().max(0.0) as u128
}

#[cfg(test)]
mod tests {
    use super::*;

    /// max y s.t. 1 - y >= 0
    fn trivial() -> SdpProblem {
        let mut p = SdpProblem::new();
        let b = p.add_block("lp", 1, BlockKind::Diagonal);
        let y = p.add_variable("y", 1.0);
        p.add_constant(b, 0, 0, 1.0);
        p.add_coefficient(y, b, 0, 0, -1.0);
        p.bounds = VariableBound::Absolute(vec![10.0]);
        p
    }

    #[test]
    fn solves_trivial_lp() {
        let r = solve(&trivial(), &SolverOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!((r.primal_value - 1.0).abs() < 1e-7, "{r:?}");
        let c = r.certified_bound.unwrap();
        assert!((1.0 - 1e-12..1.0 + 1e-6).contains(&c), "{c}");
        assert_eq!(integer_bound(&r).unwrap(), 1);
    }

    #[test]
    fn max_eigenvalue_problem() {
        // max y s.t. A - y I ⪰ 0 → λ_min(A)
        let a = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0]);
        let lam = min_eig(&a);
        let mut p = SdpProblem::new();
        let b = p.add_block("psd", 3, BlockKind::Psd);
        let y = p.add_variable("y", 1.0);
        for i in 0..3 {
            for j in i..3 {
                p.add_constant(b, i, j, a[(i, j)]);
            }
            p.add_coefficient(y, b, i, i, -1.0);
        }
        p.bounds = VariableBound::Absolute(vec![10.0]);
        let r = solve(&p, &SolverOptions::default()).unwrap();
        assert!((r.primal_value - lam).abs() < 1e-7, "{} vs {lam}", r.primal_value);
        assert!(r.certified_bound.unwrap() >= lam - 1e-12);
    }

    #[test]
    fn integer_bound_margin() {
        assert_eq!(floor_with_margin(141.0000003), 141);
        assert_eq!(floor_with_margin(36.99999992), 37);
        assert_eq!(floor_with_margin(5.0), 5);
    }
}
