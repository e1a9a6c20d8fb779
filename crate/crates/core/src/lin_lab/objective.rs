//! Penalty objective for recovering an edge-commuting normal family `b`
//! near a given family `a`:
//!
//! ```text
//! f(b) = sum_v ||a_v - b_v||^2
//!      + lambda * ( sum_{(v,w) in E} ||[b_v, b_w]||^2 + sum_v ||[b_v, b_v*]||^2 )
//! ```
//!
//! The normality sum is present only for [`Kind::Normal`]: self-adjoint
//! iterates are normal by construction and unitary ones are kept on the
//! unitary group by retraction.
//!
//! Gradients use the real-inner-product convention `df = Re tr(G* dB)`, so
//! for `lambda = 0` the gradient at vertex `v` is `2 (b_v - a_v) / n`.

use num_complex::Complex64;

use super::norms::comm;
use super::{CMatrix, Kind, LinError, MatrixFamily};

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub(crate) fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * real(0.5)
}

/// Objective on raw matrices; `edges` index into `a` and `b`.
pub(crate) fn value(
    a: &[CMatrix],
    b: &[CMatrix],
    edges: &[(usize, usize)],
    lambda: f64,
    kind: Kind,
) -> f64 {
    let n = b[0].nrows() as f64;
    let distance: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_squared()).sum();
    let mut penalty: f64 = edges
        .iter()
        .map(|&(v, w)| comm(&b[v], &b[w]).norm_squared())
        .sum();
    if kind == Kind::Normal {
        penalty += b
            .iter()
            .map(|m| comm(m, &m.adjoint()).norm_squared())
            .sum::<f64>();
    }
    (distance + lambda * penalty) / n
}

/// `value(b_new) - value(b)` evaluated from differences, so that changes far
/// below the objective's own rounding error keep their sign.
pub(crate) fn value_change(
    a: &[CMatrix],
    b: &[CMatrix],
    b_new: &[CMatrix],
    edges: &[(usize, usize)],
    lambda: f64,
    kind: Kind,
) -> f64 {
    let n = b[0].nrows() as f64;
    let re_dot = |x: &CMatrix, y: &CMatrix| -> f64 {
        x.iter().zip(y.iter()).map(|(p, q)| (p.conj() * q).re).sum()
    };
    // ||a - b'||^2 - ||a - b||^2 = <d, d + 2 (b - a)> with d = b' - b
    let distance: f64 = a
        .iter()
        .zip(b)
        .zip(b_new)
        .map(|((x, old), new)| {
            let d = new - old;
            re_dot(&d, &(&d + (old - x) * real(2.0)))
        })
        .sum();
    // ||C + D||^2 - ||C||^2 = <D, 2C + D>, with D expanded in the step so it
    // never comes from subtracting two rounded commutators.
    let squares_change = |c: CMatrix, d: CMatrix| re_dot(&d, &(c * real(2.0) + &d));
    let steps: Vec<CMatrix> = b.iter().zip(b_new).map(|(old, new)| new - old).collect();
    let mut penalty: f64 = edges
        .iter()
        .map(|&(v, w)| {
            let (dv, dw) = (&steps[v], &steps[w]);
            let delta = comm(dv, &b[w]) + comm(&b[v], dw) + comm(dv, dw);
            squares_change(comm(&b[v], &b[w]), delta)
        })
        .sum();
    if kind == Kind::Normal {
        penalty += b
            .iter()
            .zip(&steps)
            .map(|(m, d)| {
                let (m_adj, d_adj) = (m.adjoint(), d.adjoint());
                let delta = comm(d, &m_adj) + comm(m, &d_adj) + comm(d, &d_adj);
                squares_change(comm(m, &m_adj), delta)
            })
            .sum::<f64>();
    }
    (distance + lambda * penalty) / n
}

pub(crate) fn value_gradient(
    a: &[CMatrix],
    b: &[CMatrix],
    edges: &[(usize, usize)],
    lambda: f64,
    kind: Kind,
) -> Vec<CMatrix> {
    let n = b[0].nrows() as f64;
    let two = real(2.0 / n);
    let mut grad: Vec<CMatrix> = a.iter().zip(b).map(|(x, y)| (y - x) * two).collect();
    if lambda > 0.0 {
        let weight = real(2.0 * lambda / n);
        for &(v, w) in edges {
            let c = comm(&b[v], &b[w]);
            let (bv_adj, bw_adj) = (b[v].adjoint(), b[w].adjoint());
            grad[v] += comm(&c, &bw_adj) * weight;
            grad[w] += comm(&bv_adj, &c) * weight;
        }
        if kind == Kind::Normal {
            for (g, m) in grad.iter_mut().zip(b) {
                let normality = comm(m, &m.adjoint());
                *g += comm(&normality, m) * (weight * real(2.0));
            }
        }
    }
    if kind == Kind::SelfAdjoint {
        for g in &mut grad {
            *g = hermitian_part(g);
        }
    }
    grad
}

/// Directional derivative of [`value_gradient`] at `b` along `dir`.
pub(crate) fn value_hessian_apply(
    b: &[CMatrix],
    dir: &[CMatrix],
    edges: &[(usize, usize)],
    lambda: f64,
    kind: Kind,
) -> Vec<CMatrix> {
    let n = b[0].nrows() as f64;
    let two = real(2.0 / n);
    let mut out: Vec<CMatrix> = dir.iter().map(|d| d * two).collect();
    if lambda > 0.0 {
        let weight = real(2.0 * lambda / n);
        for &(v, w) in edges {
            let c = comm(&b[v], &b[w]);
            let dc = comm(&dir[v], &b[w]) + comm(&b[v], &dir[w]);
            let (bv_adj, bw_adj) = (b[v].adjoint(), b[w].adjoint());
            out[v] += (comm(&dc, &bw_adj) + comm(&c, &dir[w].adjoint())) * weight;
            out[w] += (comm(&dir[v].adjoint(), &c) + comm(&bv_adj, &dc)) * weight;
        }
        if kind == Kind::Normal {
            for ((h, m), d) in out.iter_mut().zip(b).zip(dir) {
                let normality = comm(m, &m.adjoint());
                let dn = comm(d, &m.adjoint()) + comm(m, &d.adjoint());
                *h += (comm(&dn, m) + comm(&normality, d)) * (weight * real(2.0));
            }
        }
    }
    if kind == Kind::SelfAdjoint {
        for h in &mut out {
            *h = hermitian_part(h);
        }
    }
    out
}

fn check_pair(a: &MatrixFamily, b: &MatrixFamily, lambda: f64) -> Result<(), LinError> {
    if !(std::ptr::eq(a.graph(), b.graph()) || a.graph() == b.graph()) {
        return Err(LinError::GraphMismatch);
    }
    if a.dim() != b.dim() {
        return Err(LinError::DimensionMismatch(a.dim(), b.dim()));
    }
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(LinError::BadLambda(lambda));
    }
    Ok(())
}

pub fn objective(
    a: &MatrixFamily,
    b: &MatrixFamily,
    lambda: f64,
    kind: Kind,
) -> Result<f64, LinError> {
    check_pair(a, b, lambda)?;
    if a.matrices().is_empty() {
        return Ok(0.0);
    }
    let edges: Vec<_> = a.graph().edge_indices().collect();
    Ok(value(a.matrices(), b.matrices(), &edges, lambda, kind))
}

/// Gradient of [`objective`] with respect to each `b_v`; Hermitian-projected
/// for [`Kind::SelfAdjoint`].
pub fn gradient<'g>(
    a: &MatrixFamily<'g>,
    b: &MatrixFamily<'g>,
    lambda: f64,
    kind: Kind,
) -> Result<MatrixFamily<'g>, LinError> {
    check_pair(a, b, lambda)?;
    if a.matrices().is_empty() {
        return Ok(b.clone());
    }
    let edges: Vec<_> = a.graph().edge_indices().collect();
    Ok(MatrixFamily::from_parts(
        b.graph(),
        b.dim(),
        value_gradient(a.matrices(), b.matrices(), &edges, lambda, kind),
    ))
}
