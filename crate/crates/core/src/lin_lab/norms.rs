use serde::Serialize;

use super::{CMatrix, LinError, MatrixFamily};

/// `||x||_2` without the squareness check.
pub(crate) fn hs(m: &CMatrix) -> f64 {
    (m.norm_squared() / m.nrows() as f64).sqrt()
}

pub(crate) fn comm(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Normalized Hilbert-Schmidt norm `sqrt(tr(A* A) / n)`.
pub fn hs_norm(a: &CMatrix) -> Result<f64, LinError> {
    if !a.is_square() {
        return Err(LinError::NonSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if a.nrows() == 0 {
        return Ok(0.0);
    }
    Ok(hs(a))
}

/// `AB - BA`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix, LinError> {
    for m in [a, b] {
        if !m.is_square() {
            return Err(LinError::NonSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
    }
    if a.nrows() != b.nrows() {
        return Err(LinError::DimensionMismatch(a.nrows(), b.nrows()));
    }
    Ok(comm(a, b))
}

/// Largest singular value.
pub fn operator_norm(a: &CMatrix) -> f64 {
    a.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Worst-case defects of a family, each measured in `||.||_2`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct DefectReport {
    /// max over edges `(v, w)` of `||[a_v, a_w]||`
    pub max_edge_commutator: f64,
    /// max over vertices of `||[a_v, a_v*]||`
    pub max_normality: f64,
    /// max over vertices of `||a_v - a_v*||`
    pub max_selfadjoint: f64,
    /// max over vertices of `||1 - a_v a_v*||`
    pub max_unitary: f64,
}

pub fn gamma_defect(fam: &MatrixFamily) -> DefectReport {
    let mats = fam.matrices();
    let mut report = DefectReport::default();
    for (v, w) in fam.graph().edge_indices() {
        report.max_edge_commutator = report
            .max_edge_commutator
            .max(hs(&comm(&mats[v], &mats[w])));
    }
    for a in mats {
        let adj = a.adjoint();
        report.max_normality = report.max_normality.max(hs(&comm(a, &adj)));
        report.max_selfadjoint = report.max_selfadjoint.max(hs(&(a - &adj)));
        let id = CMatrix::identity(a.nrows(), a.ncols());
        report.max_unitary = report.max_unitary.max(hs(&(id - a * &adj)));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lin_lab::family::random_unitary;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(n, n, |_, _| {
            c(
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            )
        })
    }

    #[test]
    fn hs_norm_examples() {
        for n in 1..6 {
            assert!((hs_norm(&CMatrix::identity(n, n)).unwrap() - 1.0).abs() < 1e-15);
            assert_eq!(hs_norm(&CMatrix::zeros(n, n)).unwrap(), 0.0);
        }
        let d =
            CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(3.0, 0.0), c(4.0, 0.0)]));
        assert!((hs_norm(&d).unwrap() - (25.0f64 / 2.0).sqrt()).abs() < 1e-15);
        assert!(matches!(
            hs_norm(&CMatrix::zeros(2, 3)),
            Err(LinError::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn commutator_examples() {
        let a = random_matrix(3, 1);
        assert_eq!(commutator(&a, &a).unwrap(), CMatrix::zeros(3, 3));
        assert!(hs(&commutator(&a, &CMatrix::identity(3, 3)).unwrap()) < 1e-15);
        let mut e12 = CMatrix::zeros(2, 2);
        e12[(0, 1)] = c(1.0, 0.0);
        let e21 = e12.transpose();
        let expected = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, 0.0),
            c(-1.0, 0.0),
        ]));
        assert_eq!(commutator(&e12, &e21).unwrap(), expected);
        assert_eq!(
            commutator(&a, &CMatrix::zeros(2, 2)),
            Err(LinError::DimensionMismatch(3, 2))
        );
    }

    proptest! {
        #[test]
        fn hs_norm_properties(n in 1usize..6, seed in any::<u64>()) {
            let a = random_matrix(n, seed);
            let b = random_matrix(n, seed ^ 0xdead_beef);
            let na = hs_norm(&a).unwrap();
            prop_assert!(hs_norm(&(&a + &b)).unwrap() <= na + hs_norm(&b).unwrap() + 1e-12);
            let u = random_unitary(n, &mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(7)));
            let conj = &u * &a * u.adjoint();
            prop_assert!((hs_norm(&conj).unwrap() - na).abs() <= 1e-12 * na.max(1.0));
            prop_assert!(na <= operator_norm(&a) * (1.0 + 1e-12));
        }
    }
}
