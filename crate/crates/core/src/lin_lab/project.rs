//! Penalty-method descent towards an edge-commuting family.
//!
//! Each stage minimises the objective at a fixed penalty weight with Armijo
//! backtracking, warm-started from the previous stage. Search directions are
//! truncated Newton (conjugate gradients on exact Hessian products) for the
//! flat kinds and L-BFGS on the unitary group. Accepted steps never increase
//! the stage objective.

use std::collections::VecDeque;

use num_complex::Complex64;

use super::norms::hs;
use super::objective::{hermitian_part, value, value_change, value_gradient, value_hessian_apply};
use super::{gamma_defect, CMatrix, DefectReport, Kind, LinError, MatrixFamily};

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectOptions {
    pub lambda_start: f64,
    pub lambda_growth: f64,
    pub lambda_max: f64,
    /// Stage stops once the gradient's HS norm is at most this.
    pub grad_tol: f64,
    pub max_iters_per_stage: usize,
    /// Edge defect a converged result must meet.
    pub edge_tolerance: f64,
}

impl Default for ProjectOptions {
    fn default() -> Self {
        Self {
            lambda_start: 1.0,
            lambda_growth: 10.0,
            lambda_max: 1e6,
            grad_tol: 1e-9,
            max_iters_per_stage: 10_000,
            edge_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageLog {
    pub lambda: f64,
    pub iterations: usize,
    pub grad_norm: f64,
    pub converged: bool,
    /// Objective after each accepted step, starting with the initial value.
    pub objective: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Projection<'g> {
    pub family: MatrixFamily<'g>,
    pub before: DefectReport,
    pub after: DefectReport,
    /// `sum_v ||a_v - b_v||_2`
    pub epsilon: f64,
    pub iterations: usize,
    pub converged: bool,
    pub stages: Vec<StageLog>,
}

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-30;
const MEMORY: usize = 10;
const MAX_CG: usize = 500;

type Memory = VecDeque<(Vec<CMatrix>, Vec<CMatrix>, f64)>;

/// Maps a point back onto the feasible set of `kind`.
fn retract(kind: Kind, m: CMatrix) -> CMatrix {
    match kind {
        Kind::Normal => m,
        Kind::SelfAdjoint => hermitian_part(&m),
        Kind::Unitary => {
            let svd = m.svd(true, true);
            let (u, v_t) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
            u * v_t
        }
    }
}

/// Projects a Euclidean gradient onto the tangent space at `b`.
fn tangent(kind: Kind, b: &CMatrix, g: CMatrix) -> CMatrix {
    match kind {
        Kind::Unitary => {
            let x = b.adjoint() * &g;
            b * (&x - x.adjoint()) * Complex64::new(0.5, 0.0)
        }
        _ => g,
    }
}

fn inner(x: &[CMatrix], y: &[CMatrix]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(p, q)| {
            p.iter()
                .zip(q.iter())
                .map(|(s, t)| (s.conj() * t).re)
                .sum::<f64>()
        })
        .sum()
}

struct Stage<'a> {
    a: &'a [CMatrix],
    edges: &'a [(usize, usize)],
    lambda: f64,
    kind: Kind,
}

impl Stage<'_> {
    fn value(&self, b: &[CMatrix]) -> f64 {
        value(self.a, b, self.edges, self.lambda, self.kind)
    }

    fn change(&self, b: &[CMatrix], b_new: &[CMatrix]) -> f64 {
        value_change(self.a, b, b_new, self.edges, self.lambda, self.kind)
    }

    fn gradient(&self, b: &[CMatrix]) -> Vec<CMatrix> {
        value_gradient(self.a, b, self.edges, self.lambda, self.kind)
            .into_iter()
            .zip(b)
            .map(|(g, m)| tangent(self.kind, m, g))
            .collect()
    }

    fn hessian_apply(&self, b: &[CMatrix], dir: &[CMatrix]) -> Vec<CMatrix> {
        value_hessian_apply(b, dir, self.edges, self.lambda, self.kind)
    }

    fn step(&self, b: &[CMatrix], g: &[CMatrix], t: f64) -> Vec<CMatrix> {
        let t = Complex64::new(t, 0.0);
        b.iter()
            .zip(g)
            .map(|(m, d)| retract(self.kind, m - d * t))
            .collect()
    }
}

fn grad_norm(g: &[CMatrix]) -> f64 {
    g.iter().map(|m| hs(m).powi(2)).sum::<f64>().sqrt()
}

/// Finds a family near `a` that is normal (or of the requested `kind`) and
/// commutes along the edges of `a`'s graph.
pub fn project_to_gamma_commuting<'g>(
    a: &MatrixFamily<'g>,
    kind: Kind,
    options: &ProjectOptions,
) -> Result<Projection<'g>, LinError> {
    for lambda in [options.lambda_start, options.lambda_max] {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(LinError::BadLambda(lambda));
        }
    }
    let before = gamma_defect(a);
    let edges: Vec<_> = a.graph().edge_indices().collect();
    let mut b: Vec<CMatrix> = a
        .matrices()
        .iter()
        .map(|m| retract(kind, m.clone()))
        .collect();
    let mut stages = Vec::new();
    let mut iterations = 0;
    let mut lambda = options.lambda_start;
    let mut stage_index = 0;
    while !b.is_empty() {
        let stage = Stage {
            a: a.matrices(),
            edges: &edges,
            lambda,
            kind,
        };
        let log = run_stage(&stage, &mut b, options, stage_index)?;
        iterations += log.iterations;
        stages.push(log);
        if lambda >= options.lambda_max || options.lambda_growth <= 1.0 {
            break;
        }
        lambda = (lambda * options.lambda_growth).min(options.lambda_max);
        stage_index += 1;
    }
    let family = MatrixFamily::from_parts(a.graph(), a.dim(), b);
    let after = gamma_defect(&family);
    let epsilon = a
        .matrices()
        .iter()
        .zip(family.matrices())
        .map(|(x, y)| hs(&(x - y)))
        .sum();
    let converged = stages.last().is_none_or(|s| s.converged)
        && after.max_edge_commutator <= options.edge_tolerance;
    Ok(Projection {
        family,
        before,
        after,
        epsilon,
        iterations,
        converged,
        stages,
    })
}

fn axpy(y: &[CMatrix], alpha: f64, x: &[CMatrix]) -> Vec<CMatrix> {
    let alpha = Complex64::new(alpha, 0.0);
    y.iter().zip(x).map(|(p, q)| p + q * alpha).collect()
}

/// Two-loop recursion: approximate inverse Hessian applied to `g`.
fn quasi_newton(g: &[CMatrix], memory: &Memory) -> Vec<CMatrix> {
    let mut q = g.to_vec();
    let mut alphas = Vec::with_capacity(memory.len());
    for (s, y, rho) in memory.iter().rev() {
        let alpha = rho * inner(s, &q);
        q = axpy(&q, -alpha, y);
        alphas.push(alpha);
    }
    if let Some((s, y, _)) = memory.back() {
        let gamma = inner(s, y) / inner(y, y);
        q = q.iter().map(|m| m * Complex64::new(gamma, 0.0)).collect();
    }
    for ((s, y, rho), alpha) in memory.iter().zip(alphas.into_iter().rev()) {
        let beta = rho * inner(y, &q);
        q = axpy(&q, alpha - beta, s);
    }
    q
}

/// Approximately solves `H d = g` by conjugate gradients, stopping early at
/// negative curvature.
fn newton_cg(stage: &Stage, b: &[CMatrix], g: &[CMatrix]) -> Vec<CMatrix> {
    let g_norm = inner(g, g).sqrt();
    let target = g_norm * g_norm.sqrt().min(0.5);
    let mut d: Vec<CMatrix> = g.iter().map(|m| m * Complex64::new(0.0, 0.0)).collect();
    let mut r = g.to_vec();
    let mut p = r.clone();
    let mut rr = inner(&r, &r);
    for i in 0..MAX_CG {
        let hp = stage.hessian_apply(b, &p);
        let curvature = inner(&p, &hp);
        if curvature.is_nan() || curvature <= 0.0 {
            return if i == 0 { g.to_vec() } else { d };
        }
        let alpha = rr / curvature;
        d = axpy(&d, alpha, &p);
        r = axpy(&r, -alpha, &hp);
        let rr_new = inner(&r, &r);
        if rr_new.sqrt() <= target {
            break;
        }
        p = axpy(&r, rr_new / rr, &p);
        rr = rr_new;
    }
    d
}

fn run_stage(
    stage: &Stage,
    b: &mut Vec<CMatrix>,
    options: &ProjectOptions,
    stage_index: usize,
) -> Result<StageLog, LinError> {
    let non_finite = |iteration| LinError::NonFinite {
        stage: stage_index,
        iteration,
    };
    let mut f = stage.value(b);
    let mut g = stage.gradient(b);
    let mut history = vec![f];
    let mut memory = Memory::new();
    let mut iterations = 0;
    let mut converged = false;
    loop {
        if !f.is_finite() {
            return Err(non_finite(iterations));
        }
        let gn = grad_norm(&g);
        if !gn.is_finite() {
            return Err(non_finite(iterations));
        }
        if gn <= options.grad_tol {
            converged = true;
            break;
        }
        if iterations >= options.max_iters_per_stage {
            break;
        }
        let mut direction: Vec<CMatrix> = match stage.kind {
            Kind::Unitary => quasi_newton(&g, &memory)
                .into_iter()
                .zip(b.iter())
                .map(|(d, m)| tangent(stage.kind, m, d))
                .collect(),
            _ => newton_cg(stage, b, &g),
        };
        let mut slope = inner(&g, &direction);
        if slope.is_nan() || slope <= 0.0 {
            memory.clear();
            direction = g.clone();
            slope = inner(&g, &g);
        }
        let mut t = 1.0;
        let accepted = loop {
            let candidate = stage.step(b, &direction, t);
            let change = stage.change(b, &candidate);
            if change.is_finite() && change <= -ARMIJO * t * slope && change <= 0.0 {
                break Some((candidate, f + change));
            }
            t *= 0.5;
            if t < MIN_STEP {
                break None;
            }
        };
        let Some((candidate, fc)) = accepted else {
            if memory.is_empty() {
                // No representable decrease left along the gradient.
                break;
            }
            memory.clear();
            continue;
        };
        let g_new = stage.gradient(&candidate);
        let s: Vec<CMatrix> = candidate.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
        let y: Vec<CMatrix> = g_new.iter().zip(&g).map(|(x, y)| x - y).collect();
        let sy = inner(&s, &y);
        if sy > 1e-300 {
            if memory.len() == MEMORY {
                memory.pop_front();
            }
            memory.push_back((s, y, 1.0 / sy));
        }
        *b = candidate;
        g = g_new;
        f = fc;
        history.push(f);
        iterations += 1;
    }
    Ok(StageLog {
        lambda: stage.lambda,
        iterations,
        grad_norm: grad_norm(&g),
        converged,
        objective: history,
    })
}
