//! Truncated geometric series `I + A + A² + …` as an independent check on the
//! LU-based Leontief inverse. Nothing here calls into the inversion code.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{multiply, Matrix, Vector};
use crate::requirements::{legacy_indirect, LegacyVariant};
use crate::system::IoSystem;

/// Hard cap on accumulated terms in [`verify_system`].
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub terms_used: usize,
    pub residual_inf_norm: f64,
    pub converged: bool,
    /// Worst ∞-norm gap between the `E1`/`E3` closed forms and their series.
    pub legacy_residual_inf_norm: f64,
}

/// `Σ_{k=0}^{n_terms−1} Aᵏ`, accumulated with one running power.
pub fn truncated_leontief(a: &Matrix, n_terms: usize) -> Result<Matrix> {
    let n = a.require_square()?;
    if n_terms == 0 {
        return Err(Error::DimensionMismatch("at least one series term is required".into()));
    }
    let mut power = Matrix::identity(n);
    let mut sum = power.clone();
    for _ in 1..n_terms {
        power = multiply(&power, a)?;
        sum = sum.add(&power)?;
    }
    Ok(sum)
}

/// `(Aⁿ·f̂, Aⁿ·f)`: the demand distribution and gross outputs of round `n`.
pub fn propagation_round(sys: &IoSystem, n: usize) -> (Matrix, Vector) {
    let a = sys.coefficients();
    let mut power = Matrix::identity(sys.n());
    for _ in 0..n {
        power = multiply(&power, a).expect("square");
    }
    let dist = power
        .scale_columns(sys.final_demand())
        .expect("system dimensions are consistent");
    let outputs = dist.row_sums();
    (dist, outputs)
}

/// Adds series terms until the partial sum is within `tol` of `L` in the
/// ∞-norm, then checks the series forms `E1 = Σ_{k≥1}Aᵏ` and `E3 = Σ_{k≥2}Aᵏ`
/// against the closed forms at the same depth.
pub fn verify_system(sys: &IoSystem, tol: f64) -> Result<SeriesReport> {
    let a = sys.coefficients();
    let l = sys.leontief();
    let n = sys.n();

    let mut power = Matrix::identity(n);
    let mut sum = power.clone();
    let mut terms = 1;
    let mut residual = sum.sub(l)?.norm_inf();
    while residual >= tol {
        if terms >= MAX_TERMS {
            return Err(Error::NoConvergence { terms, residual });
        }
        power = multiply(&power, a)?;
        sum = sum.add(&power)?;
        terms += 1;
        residual = sum.sub(l)?.norm_inf();
    }

    let series_e1 = sum.minus_identity()?;
    let series_e3 = series_e1.sub(a)?;
    let legacy = [
        (LegacyVariant::E1, series_e1),
        (LegacyVariant::E3, series_e3),
    ]
    .into_iter()
    .map(|(variant, series)| {
        let gap = legacy_indirect(sys, variant).sub(&series)?.norm_inf();
        if gap >= tol {
            return Err(Error::OracleMismatch(format!(
                "{variant} series differs from its closed form by {gap:e}"
            )));
        }
        Ok(gap)
    })
    .collect::<Result<Vec<f64>>>()?;

    Ok(SeriesReport {
        terms_used: terms,
        residual_inf_norm: residual,
        converged: true,
        legacy_residual_inf_norm: legacy.into_iter().fold(0.0, f64::max),
    })
}
