use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    generate_gamma_family_capped, perturb, project_to_gamma_commuting, DefectReport, Kind,
    LinError, ProjectOptions, DEFAULT_DIMENSION_CAP,
};
use crate::graph::SimplicialGraph;

pub const CSV_HEADER: &str = "delta,trial,seed,pre_edge_defect,pre_normality,epsilon,post_edge_defect,post_normality,iterations,converged";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub leg_dim: usize,
    pub max_dim: usize,
    pub project: ProjectOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            leg_dim: 2,
            max_dim: DEFAULT_DIMENSION_CAP,
            project: ProjectOptions::default(),
        }
    }
}

/// One perturb-then-project trial.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub delta: f64,
    pub trial: usize,
    pub seed: u64,
    pub before: DefectReport,
    /// `sum_v ||a_v - b_v||_2`
    pub epsilon: f64,
    pub after: DefectReport,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Serialize)]
struct CsvRow {
    delta: f64,
    trial: usize,
    seed: u64,
    pre_edge_defect: f64,
    pre_normality: f64,
    epsilon: f64,
    post_edge_defect: f64,
    post_normality: f64,
    iterations: usize,
    converged: bool,
}

/// Seed of trial `trial`; shared by every delta so that each trial perturbs
/// the same exact family in the same direction.
pub fn trial_seed(base_seed: u64, trial: usize) -> u64 {
    // splitmix64 finaliser
    let mut z = base_seed.wrapping_add((trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs every `(delta, trial)` pair and returns records ordered by delta
/// descending, then trial ascending. Trials run in parallel; the output does
/// not depend on scheduling.
pub fn sweep(
    g: &SimplicialGraph,
    deltas: &[f64],
    trials: usize,
    base_seed: u64,
    kind: Kind,
    options: &SweepOptions,
) -> Result<Vec<ExperimentRecord>, LinError> {
    if let Some(&bad) = deltas.iter().find(|d| !d.is_finite() || **d <= 0.0) {
        return Err(LinError::BadDelta(bad));
    }
    let mut ordered = deltas.to_vec();
    ordered.sort_by(|a, b| b.total_cmp(a));
    let jobs: Vec<(f64, usize)> = ordered
        .iter()
        .flat_map(|&d| (0..trials).map(move |t| (d, t)))
        .collect();
    jobs.into_par_iter()
        .map(|(delta, trial)| {
            let seed = trial_seed(base_seed, trial);
            let exact =
                generate_gamma_family_capped(g, options.leg_dim, seed, kind, options.max_dim)?;
            let a = perturb(&exact, delta, seed)?;
            let out = project_to_gamma_commuting(&a, kind, &options.project)?;
            Ok(ExperimentRecord {
                delta,
                trial,
                seed,
                before: out.before,
                epsilon: out.epsilon,
                after: out.after,
                iterations: out.iterations,
                converged: out.converged,
            })
        })
        .collect()
}

/// Writes records as CSV with the [`CSV_HEADER`] columns; reals use the
/// shortest decimal form that round-trips.
pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<(), csv::Error> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(CsvRow {
            delta: r.delta,
            trial: r.trial,
            seed: r.seed,
            pre_edge_defect: r.before.max_edge_commutator,
            pre_normality: r.before.max_normality,
            epsilon: r.epsilon,
            post_edge_defect: r.after.max_edge_commutator,
            post_normality: r.after.max_normality,
            iterations: r.iterations,
            converged: r.converged,
        })?;
    }
    if records.is_empty() {
        writer.write_record(CSV_HEADER.split(','))?;
    }
    writer.flush()?;
    Ok(())
}
