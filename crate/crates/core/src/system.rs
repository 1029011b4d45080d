//! Input-output systems: transactions, final demands, gross outputs and the
//! derived technical-coefficients and Leontief matrices.
//!
//! Orientation is row-to-column throughout: `z[(i, k)]` is the flow from
//! producing sector `i` to consuming sector `k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{invert, spectral_radius_bound, Lu, Matrix, Vector};

/// Construction switches. The defaults enforce the usual nonnegativity of
/// final demand; real tables sometimes carry negative inventory changes.
#[derive(Debug, Clone, Copy, Default)]
pub struct SystemOptions {
    pub allow_negative_demand: bool,
}

/// A validated economy with its derived matrices cached.
#[derive(Debug, Clone)]
pub struct IoSystem {
    sector_names: Vec<String>,
    z: Matrix,
    f: Vector,
    x: Vector,
    a: Matrix,
    l: Matrix,
    l_diag: Vector,
    spectral_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViabilityReport {
    pub spectral_radius: f64,
    pub hawkins_simon_minors_positive: bool,
    pub leontief_nonnegative: bool,
}

impl ViabilityReport {
    pub fn is_viable(&self) -> bool {
        self.spectral_radius < 1.0
    }
}

/// Default labels `S1..Sn` when the caller supplies none.
pub fn default_sector_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("S{i}")).collect()
}

fn check_names(names: Vec<String>, n: usize) -> Result<Vec<String>> {
    if names.is_empty() {
        return Ok(default_sector_names(n));
    }
    if names.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} sector names for {n} sectors",
            names.len()
        )));
    }
    Ok(names)
}

fn check_nonnegative(m: &Matrix, what: &'static str) -> Result<()> {
    match m.first_negative() {
        Some((row, col, value)) => Err(Error::Negative {
            what,
            row,
            col,
            value,
        }),
        None => Ok(()),
    }
}

fn check_demand(f: &Vector, n: usize, opts: &SystemOptions) -> Result<()> {
    if f.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "final demand of length {} for {n} sectors",
            f.len()
        )));
    }
    if !opts.allow_negative_demand {
        if let Some(i) = f.as_slice().iter().position(|&v| v < 0.0) {
            return Err(Error::Negative {
                what: "final demand",
                row: i,
                col: 0,
                value: f[i],
            });
        }
    }
    Ok(())
}

/// Spectral radius check followed by `L = (I − A)⁻¹`.
fn leontief(a: &Matrix) -> Result<(Matrix, f64)> {
    let rho = spectral_radius_bound(a)?;
    if rho >= 1.0 {
        return Err(Error::NotViable(rho));
    }
    Ok((invert(&a.identity_minus()?)?, rho))
}

impl IoSystem {
    /// Builds a system from intermediate transactions `z` and final demand `f`,
    /// with `x = Z·𝟙 + f` and `A = Z·x̂⁻¹`.
    pub fn from_transactions(z: Matrix, f: Vector, names: Vec<String>) -> Result<Self> {
        Self::from_transactions_with(z, f, names, SystemOptions::default())
    }

    pub fn from_transactions_with(
        z: Matrix,
        f: Vector,
        names: Vec<String>,
        opts: SystemOptions,
    ) -> Result<Self> {
        let n = z.require_square()?;
        let names = check_names(names, n)?;
        check_nonnegative(&z, "transactions matrix")?;
        check_demand(&f, n, &opts)?;

        let x = z.row_sums().add(&f)?;
        if let Some(i) = x.as_slice().iter().position(|&v| v <= 0.0) {
            return Err(Error::NonPositiveOutput {
                what: "gross output",
                index: i,
                name: names[i].clone(),
                value: x[i],
            });
        }
        let a = z.divide_columns(&x)?;
        let (l, rho) = leontief(&a)?;
        let l_diag = l.diagonal()?;
        Ok(Self {
            sector_names: names,
            z,
            f,
            x,
            a,
            l,
            l_diag,
            spectral_radius: rho,
        })
    }

    /// Builds a system from technical coefficients `a` and final demand `f`,
    /// with `x = L·f` and `Z = A·x̂`.
    pub fn from_coefficients(a: Matrix, f: Vector, names: Vec<String>) -> Result<Self> {
        Self::from_coefficients_with(a, f, names, SystemOptions::default())
    }

    pub fn from_coefficients_with(
        a: Matrix,
        f: Vector,
        names: Vec<String>,
        opts: SystemOptions,
    ) -> Result<Self> {
        let n = a.require_square()?;
        let names = check_names(names, n)?;
        check_nonnegative(&a, "coefficients matrix")?;
        check_demand(&f, n, &opts)?;

        let (l, rho) = leontief(&a)?;
        let x = l.mul_vec(&f)?;
        if opts.allow_negative_demand {
            if let Some(i) = x.as_slice().iter().position(|&v| v < 0.0) {
                return Err(Error::NonPositiveOutput {
                    what: "gross output",
                    index: i,
                    name: names[i].clone(),
                    value: x[i],
                });
            }
        }
        let z = a.scale_columns(&x)?;
        let l_diag = l.diagonal()?;
        Ok(Self {
            sector_names: names,
            z,
            f,
            x,
            a,
            l,
            l_diag,
            spectral_radius: rho,
        })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn sector_names(&self) -> &[String] {
        &self.sector_names
    }

    /// Intermediate transactions `Z`.
    pub fn transactions(&self) -> &Matrix {
        &self.z
    }

    pub fn final_demand(&self) -> &Vector {
        &self.f
    }

    pub fn gross_output(&self) -> &Vector {
        &self.x
    }

    /// Technical coefficients `A`.
    pub fn coefficients(&self) -> &Matrix {
        &self.a
    }

    /// Leontief inverse `L = (I − A)⁻¹`.
    pub fn leontief(&self) -> &Matrix {
        &self.l
    }

    /// Diagonal of `L` (the entries of `L̂`).
    pub fn leontief_diagonal(&self) -> &Vector {
        &self.l_diag
    }

    pub fn spectral_radius(&self) -> f64 {
        self.spectral_radius
    }

    /// Same structure with a different final demand vector.
    pub fn with_final_demand(&self, f: Vector) -> Result<Self> {
        Self::from_coefficients(self.a.clone(), f, self.sector_names.clone())
    }
}

/// Diagnostics for `A`: spectral radius, Hawkins–Simon minors of `I − A`,
/// and the sign of `(I − A)⁻¹`. Never fails on a square nonnegative input.
pub fn viability(a: &Matrix) -> Result<ViabilityReport> {
    let n = a.require_square()?;
    let spectral_radius = spectral_radius_bound(a)?;
    let i_minus_a = a.identity_minus()?;

    let hawkins_simon_minors_positive = (1..=n).all(|k| {
        i_minus_a
            .leading_block(k)
            .ok()
            .and_then(|b| Lu::factor(&b).ok())
            .is_some_and(|lu| lu.determinant() > 0.0)
    });
    let leontief_nonnegative = invert(&i_minus_a)
        .map(|l| l.as_slice().iter().all(|&v| v >= -1e-12))
        .unwrap_or(false);

    Ok(ViabilityReport {
        spectral_radius,
        hawkins_simon_minors_positive,
        leontief_nonnegative,
    })
}
