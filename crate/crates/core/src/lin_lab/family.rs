use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::norms::operator_norm;
use super::{CMatrix, Kind, LinError};
use crate::graph::SimplicialGraph;

/// Largest total dimension the generator produces unless told otherwise.
pub const DEFAULT_DIMENSION_CAP: usize = 63;

const GENERATOR_STREAM: u64 = 0;
const PERTURBATION_STREAM: u64 = 1;

/// One complex `n x n` matrix per vertex, indexed like `graph.vertices()`.
#[derive(Clone, PartialEq)]
pub struct MatrixFamily<'g> {
    graph: &'g SimplicialGraph,
    dim: usize,
    mats: Vec<CMatrix>,
}

impl<'g> MatrixFamily<'g> {
    pub fn new(graph: &'g SimplicialGraph, mats: Vec<CMatrix>) -> Result<Self, LinError> {
        if mats.len() != graph.vertex_count() {
            return Err(LinError::VertexCount {
                expected: graph.vertex_count(),
                found: mats.len(),
            });
        }
        let dim = mats.first().map_or(1, |m| m.nrows());
        for m in &mats {
            if !m.is_square() {
                return Err(LinError::NonSquare {
                    rows: m.nrows(),
                    cols: m.ncols(),
                });
            }
            if m.nrows() != dim {
                return Err(LinError::DimensionMismatch(dim, m.nrows()));
            }
        }
        if dim == 0 {
            return Err(LinError::DimensionMismatch(1, 0));
        }
        if mats
            .iter()
            .any(|m| m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()))
        {
            return Err(LinError::NonFinite {
                stage: 0,
                iteration: 0,
            });
        }
        Ok(Self { graph, dim, mats })
    }

    pub(crate) fn from_parts(graph: &'g SimplicialGraph, dim: usize, mats: Vec<CMatrix>) -> Self {
        Self { graph, dim, mats }
    }

    pub fn graph(&self) -> &'g SimplicialGraph {
        self.graph
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    pub fn get(&self, vertex: &str) -> Option<&CMatrix> {
        self.graph.index_of(vertex).map(|i| &self.mats[i])
    }

    /// Parses `matrix <vertex> <n>` blocks, each followed by `n` rows of `n`
    /// entries written `a+bi`. Every vertex must appear exactly once.
    pub fn parse(graph: &'g SimplicialGraph, text: &str) -> Result<Self, LinError> {
        let mut found: BTreeMap<usize, CMatrix> = BTreeMap::new();
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, msg: String| LinError::Parse { line, msg };
        while let Some((line, header)) = lines.next() {
            let tokens: Vec<&str> = header.split_whitespace().collect();
            let ["matrix", vertex, n] = tokens.as_slice() else {
                return Err(err(
                    line,
                    format!("expected `matrix <vertex> <n>`, got `{header}`"),
                ));
            };
            let v = graph
                .index_of(vertex)
                .ok_or_else(|| err(line, format!("unknown vertex `{vertex}`")))?;
            let n: usize = n
                .parse()
                .map_err(|_| err(line, format!("bad dimension `{n}`")))?;
            let mut entries = Vec::with_capacity(n * n);
            for _ in 0..n {
                let (row_line, row) = lines
                    .next()
                    .ok_or_else(|| err(line, format!("matrix `{vertex}` is missing rows")))?;
                let row: Vec<Complex64> = row
                    .split_whitespace()
                    .map(|t| {
                        parse_complex(t).ok_or_else(|| err(row_line, format!("bad entry `{t}`")))
                    })
                    .collect::<Result<_, _>>()?;
                if row.len() != n {
                    return Err(err(
                        row_line,
                        format!("expected {n} entries, got {}", row.len()),
                    ));
                }
                entries.extend(row);
            }
            if found
                .insert(v, CMatrix::from_row_slice(n, n, &entries))
                .is_some()
            {
                return Err(err(line, format!("vertex `{vertex}` appears twice")));
            }
        }
        if let Some(missing) = (0..graph.vertex_count()).find(|i| !found.contains_key(i)) {
            return Err(err(
                text.lines().count().max(1),
                format!("no matrix for vertex `{}`", graph.vertices()[missing]),
            ));
        }
        Self::new(graph, found.into_values().collect())
    }
}

impl fmt::Display for MatrixFamily<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, m) in self.graph.vertices().iter().zip(&self.mats) {
            writeln!(f, "matrix {v} {}", self.dim)?;
            for r in 0..self.dim {
                let row: Vec<String> = (0..self.dim).map(|c| format_complex(m[(r, c)])).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixFamily<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixFamily(dim {}, {:?})", self.dim, self.graph)
    }
}

fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Accepts `a+bi`, `a-bi`, a bare real `a`, or a bare imaginary `bi`.
fn parse_complex(token: &str) -> Option<Complex64> {
    let Some(body) = token.strip_suffix('i') else {
        return token.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    // The split is the last sign that is neither leading nor an exponent sign.
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re: f64 = body[..k].parse().ok()?;
            let im: f64 = body[k..].parse().ok()?;
            Some(Complex64::new(re, im))
        }
        None => body.parse().ok().map(|im| Complex64::new(0.0, im)),
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    // Unit variance: E|z|^2 = 1.
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re * s, im * s)
}

/// Haar-distributed unitary from the QR factorisation of a Ginibre matrix.
pub(crate) fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

fn random_of_kind(n: usize, kind: Kind, rng: &mut ChaCha8Rng) -> CMatrix {
    let u = random_unitary(n, rng);
    let eigenvalues: Vec<Complex64> = (0..n)
        .map(|_| match kind {
            Kind::Normal => {
                let r = rng.gen::<f64>().sqrt();
                Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
            }
            Kind::SelfAdjoint => Complex64::new(rng.gen_range(-1.0..=1.0), 0.0),
            Kind::Unitary => Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)),
        })
        .collect();
    let m = &u * CMatrix::from_diagonal(&DVector::from_vec(eigenvalues)) * u.adjoint();
    match kind {
        Kind::SelfAdjoint => (&m + m.adjoint()) * Complex64::new(0.5, 0.0),
        _ => m,
    }
}

/// Tensor legs and, for each vertex, the legs it acts on.
///
/// Legs are the unordered vertex pairs `{v, w}` that are not edges, loops
/// `{v, v}` included. Vertex `v` acts on the legs containing it, so two
/// vertices share a leg exactly when they are not adjacent.
pub fn leg_supports(g: &SimplicialGraph) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let n = g.vertex_count();
    let legs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i == j || !g.adjacent(i, j))
        .collect();
    let supports = (0..n)
        .map(|v| {
            legs.iter()
                .enumerate()
                .filter(|(_, &(i, j))| i == v || j == v)
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    (legs, supports)
}

/// `local` acting on the legs in `support`, identity on the others.
fn embed(local: &CMatrix, support: &[usize], leg_dim: usize, legs: usize) -> CMatrix {
    let total = leg_dim.pow(legs as u32);
    let digits = |mut index: usize| {
        let mut d = vec![0usize; legs];
        for k in (0..legs).rev() {
            d[k] = index % leg_dim;
            index /= leg_dim;
        }
        d
    };
    let local_index = |d: &[usize]| support.iter().fold(0, |acc, &k| acc * leg_dim + d[k]);
    let all_digits: Vec<Vec<usize>> = (0..total).map(digits).collect();
    let off_support: Vec<usize> = (0..legs).filter(|k| !support.contains(k)).collect();
    CMatrix::from_fn(total, total, |r, c| {
        let (dr, dc) = (&all_digits[r], &all_digits[c]);
        if off_support.iter().all(|&k| dr[k] == dc[k]) {
            local[(local_index(dr), local_index(dc))]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Random family commuting exactly along the edges of `g` and generically
/// nowhere else. Uses [`DEFAULT_DIMENSION_CAP`].
pub fn generate_gamma_family(
    g: &SimplicialGraph,
    leg_dim: usize,
    seed: u64,
    kind: Kind,
) -> Result<MatrixFamily<'_>, LinError> {
    generate_gamma_family_capped(g, leg_dim, seed, kind, DEFAULT_DIMENSION_CAP)
}

pub fn generate_gamma_family_capped(
    g: &SimplicialGraph,
    leg_dim: usize,
    seed: u64,
    kind: Kind,
    max_dim: usize,
) -> Result<MatrixFamily<'_>, LinError> {
    if leg_dim < 2 {
        return Err(LinError::LegDim(leg_dim));
    }
    let (legs, supports) = leg_supports(g);
    let dim = u32::try_from(legs.len())
        .ok()
        .and_then(|l| leg_dim.checked_pow(l))
        .filter(|&d| d <= max_dim)
        .ok_or(LinError::DimensionCap {
            dim: leg_dim.saturating_pow(legs.len().min(64) as u32),
            cap: max_dim,
        })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(GENERATOR_STREAM);
    let mats = supports
        .iter()
        .map(|support| {
            let local = random_of_kind(leg_dim.pow(support.len() as u32), kind, &mut rng);
            embed(&local, support, leg_dim, legs.len())
        })
        .collect();
    Ok(MatrixFamily::from_parts(g, dim, mats))
}

/// `a_v <- (a_v + delta G_v) / max(1, ||a_v + delta G_v||_op)` with `G_v`
/// complex Gaussian, entries of variance `1/n`.
pub fn perturb<'g>(
    fam: &MatrixFamily<'g>,
    delta: f64,
    seed: u64,
) -> Result<MatrixFamily<'g>, LinError> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(LinError::BadDelta(delta));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(PERTURBATION_STREAM);
    let n = fam.dim;
    let scale = delta / (n as f64).sqrt();
    let mats = fam
        .mats
        .iter()
        .map(|a| {
            let noise = CMatrix::from_fn(n, n, |_, _| gaussian(&mut rng));
            let moved = a + noise * Complex64::new(scale, 0.0);
            let norm = operator_norm(&moved).max(1.0);
            moved.unscale(norm)
        })
        .collect();
    Ok(MatrixFamily::from_parts(fam.graph, n, mats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, edgeless_graph, path_graph};
    use crate::lin_lab::{gamma_defect, hs_norm};

    #[test]
    fn supports_for_k2_and_edgeless() {
        let k2 = complete_graph(2).unwrap();
        assert_eq!(
            leg_supports(&k2),
            (vec![(0, 0), (1, 1)], vec![vec![0], vec![1]])
        );
        let free = edgeless_graph(2);
        assert_eq!(
            leg_supports(&free),
            (vec![(0, 0), (0, 1), (1, 1)], vec![vec![0, 1], vec![1, 2]])
        );
    }

    #[test]
    fn k2_family_commutes_exactly() {
        let k2 = complete_graph(2).unwrap();
        for kind in [Kind::Normal, Kind::SelfAdjoint, Kind::Unitary] {
            let fam = generate_gamma_family(&k2, 2, 11, kind).unwrap();
            assert_eq!(fam.dim(), 4);
            assert!(gamma_defect(&fam).max_edge_commutator <= 1e-14);
        }
    }

    #[test]
    fn edgeless_family_does_not_commute() {
        let free = edgeless_graph(2);
        let hits = (0..20)
            .filter(|&seed| {
                let fam = generate_gamma_family(&free, 2, seed, Kind::Normal).unwrap();
                let [a, b] = fam.matrices() else {
                    unreachable!()
                };
                hs_norm(&(a * b - b * a)).unwrap() > 1e-3
            })
            .count();
        assert!(hits >= 19, "{hits}");
    }

    #[test]
    fn kinds_have_their_shape() {
        let p3 = path_graph(3).unwrap();
        let normal = gamma_defect(&generate_gamma_family(&p3, 2, 3, Kind::Normal).unwrap());
        assert!(normal.max_normality <= 1e-12);
        let herm = gamma_defect(&generate_gamma_family(&p3, 2, 3, Kind::SelfAdjoint).unwrap());
        assert!(herm.max_selfadjoint <= 1e-12 && herm.max_normality <= 1e-12);
        let unitary = gamma_defect(&generate_gamma_family(&p3, 2, 3, Kind::Unitary).unwrap());
        assert!(unitary.max_unitary <= 1e-12);
        for fam in [
            generate_gamma_family(&p3, 2, 3, Kind::Normal).unwrap(),
            generate_gamma_family(&p3, 2, 3, Kind::SelfAdjoint).unwrap(),
        ] {
            for m in fam.matrices() {
                assert!(operator_norm(m) <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn generator_errors() {
        let p3 = path_graph(3).unwrap();
        assert_eq!(
            generate_gamma_family(&p3, 1, 0, Kind::Normal).unwrap_err(),
            LinError::LegDim(1)
        );
        // Three isolated vertices need six legs: 2^6 = 64.
        let free3 = edgeless_graph(3);
        assert_eq!(
            generate_gamma_family(&free3, 2, 0, Kind::Normal).unwrap_err(),
            LinError::DimensionCap { dim: 64, cap: 63 }
        );
        assert!(generate_gamma_family_capped(&free3, 2, 0, Kind::Normal, 64).is_ok());
    }

    #[test]
    fn generation_is_deterministic() {
        let p3 = path_graph(3).unwrap();
        let a = generate_gamma_family(&p3, 2, 5, Kind::Normal).unwrap();
        let b = generate_gamma_family(&p3, 2, 5, Kind::Normal).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_gamma_family(&p3, 2, 6, Kind::Normal).unwrap());
    }

    #[test]
    fn perturbation_properties() {
        let p3 = path_graph(3).unwrap();
        let exact = generate_gamma_family(&p3, 2, 9, Kind::Normal).unwrap();
        assert_eq!(perturb(&exact, 0.0, 1).unwrap(), exact);
        for delta in [1e-3, 1e-1, 3.0] {
            let moved = perturb(&exact, delta, 4).unwrap();
            for m in moved.matrices() {
                assert!(operator_norm(m) <= 1.0 + 1e-12);
            }
        }
        assert_eq!(
            perturb(&exact, -1.0, 0).unwrap_err(),
            LinError::BadDelta(-1.0)
        );
        assert!(perturb(&exact, f64::NAN, 0).is_err());
    }

    #[test]
    fn perturbed_edge_defect_scales_with_delta() {
        // Observed constant across 20 seeds; logged to stdout under --nocapture.
        let p3 = path_graph(3).unwrap();
        let mut worst: f64 = 0.0;
        for seed in 0..20 {
            let exact = generate_gamma_family(&p3, 2, seed, Kind::Normal).unwrap();
            let moved = perturb(&exact, 1e-3, seed).unwrap();
            worst = worst.max(gamma_defect(&moved).max_edge_commutator / 1e-3);
        }
        println!("edge defect / delta, worst of 20 seeds: {worst:.4}");
        assert!(worst > 0.0 && worst < 10.0, "{worst}");
    }

    #[test]
    fn complex_tokens() {
        let z = |re, im| Some(Complex64::new(re, im));
        assert_eq!(parse_complex("1+2i"), z(1.0, 2.0));
        assert_eq!(parse_complex("-1.5-0.25i"), z(-1.5, -0.25));
        assert_eq!(parse_complex("1e-3+2E+2i"), z(1e-3, 200.0));
        assert_eq!(parse_complex("3"), z(3.0, 0.0));
        assert_eq!(parse_complex("-2i"), z(0.0, -2.0));
        assert_eq!(parse_complex("1+i"), None);
        assert_eq!(parse_complex("x"), None);
        assert_eq!(format_complex(Complex64::new(0.5, -0.0)), "0.5-0i");
    }

    #[test]
    fn family_text_round_trip() {
        let p3 = path_graph(3).unwrap();
        let fam = perturb(
            &generate_gamma_family(&p3, 2, 2, Kind::Normal).unwrap(),
            0.1,
            2,
        )
        .unwrap();
        let text = fam.to_string();
        assert!(text.starts_with("matrix 1 16\n"));
        assert_eq!(MatrixFamily::parse(&p3, &text).unwrap(), fam);
    }

    #[test]
    fn family_parse_errors() {
        let k2 = complete_graph(2).unwrap();
        let one = "matrix 1 1\n1+0i\n";
        assert!(matches!(
            MatrixFamily::parse(&k2, one),
            Err(LinError::Parse { .. })
        ));
        let bad_entry = "matrix 1 1\nfoo\nmatrix 2 1\n1\n";
        assert!(matches!(
            MatrixFamily::parse(&k2, bad_entry),
            Err(LinError::Parse { line: 2, .. })
        ));
        let mixed = "matrix 1 1\n1\nmatrix 2 2\n1 0\n0 1\n";
        assert_eq!(
            MatrixFamily::parse(&k2, mixed).unwrap_err(),
            LinError::DimensionMismatch(1, 2)
        );
        let twice = "matrix 1 1\n1\nmatrix 1 1\n1\n";
        assert!(MatrixFamily::parse(&k2, twice).is_err());
        let short_row = "matrix 1 2\n1 0\n0\nmatrix 2 2\n1 0\n0 1\n";
        assert!(matches!(
            MatrixFamily::parse(&k2, short_row),
            Err(LinError::Parse { line: 3, .. })
        ));
    }
}
