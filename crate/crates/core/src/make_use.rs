//! Requirements from use and make tables under the industry-based technology
//! assumption. Results are industry-by-industry.

use crate::error::{Error, Result};
use crate::matrix::{invert, multiply, Matrix, Vector};
use crate::requirements::{Frame, Kind, RequirementsMatrix};
use crate::system::{default_sector_names, IoSystem};

/// Use table `U` (commodities × industries) and make table `V`
/// (industries × commodities).
#[derive(Debug, Clone)]
pub struct MakeUseTables {
    use_table: Matrix,
    make_table: Matrix,
    commodity_names: Vec<String>,
    industry_names: Vec<String>,
}

/// Market shares `D = V·diag(V'·𝟙)⁻¹` and absorption coefficients
/// `B = U·diag(V·𝟙)⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct TechnologyMatrices {
    pub market_shares: Matrix,
    pub absorption: Matrix,
}

impl MakeUseTables {
    /// Validates shapes, signs and that every industry and commodity has
    /// positive total output. Empty name lists get `C1..`/`I1..` defaults.
    pub fn new(
        use_table: Matrix,
        make_table: Matrix,
        commodity_names: Vec<String>,
        industry_names: Vec<String>,
    ) -> Result<Self> {
        let (c, m) = (use_table.rows(), use_table.cols());
        if make_table.rows() != m || make_table.cols() != c {
            return Err(Error::DimensionMismatch(format!(
                "use table is {c}x{m}, so the make table must be {m}x{c}, got {}x{}",
                make_table.rows(),
                make_table.cols()
            )));
        }
        for (table, what) in [(&use_table, "use table"), (&make_table, "make table")] {
            if let Some((row, col, value)) = table.first_negative() {
                return Err(Error::Negative {
                    what,
                    row,
                    col,
                    value,
                });
            }
        }
        let commodity_names = names_or_default(commodity_names, c, "C", "commodity")?;
        let industry_names = names_or_default(industry_names, m, "I", "industry")?;

        let industry_out = make_table.row_sums();
        let commodity_out = make_table.col_sums();
        for (totals, names, what) in [
            (&industry_out, &industry_names, "industry output"),
            (&commodity_out, &commodity_names, "commodity output"),
        ] {
            if let Some(i) = totals.as_slice().iter().position(|&v| v <= 0.0) {
                return Err(Error::NonPositiveOutput {
                    what,
                    index: i,
                    name: names[i].clone(),
                    value: totals[i],
                });
            }
        }
        Ok(Self {
            use_table,
            make_table,
            commodity_names,
            industry_names,
        })
    }

    pub fn use_table(&self) -> &Matrix {
        &self.use_table
    }

    pub fn make_table(&self) -> &Matrix {
        &self.make_table
    }

    pub fn commodity_names(&self) -> &[String] {
        &self.commodity_names
    }

    pub fn industry_names(&self) -> &[String] {
        &self.industry_names
    }

    /// Industry-by-industry system for a final demand given in industry terms.
    pub fn into_system(&self, industry_final_demand: Vector) -> Result<IoSystem> {
        IoSystem::from_coefficients(
            coefficients_from_make_use(self)?,
            industry_final_demand,
            self.industry_names.clone(),
        )
    }
}

fn names_or_default(
    names: Vec<String>,
    n: usize,
    prefix: &str,
    what: &str,
) -> Result<Vec<String>> {
    if names.is_empty() {
        return Ok(default_sector_names(n)
            .into_iter()
            .map(|s| s.replacen('S', prefix, 1))
            .collect());
    }
    if names.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} {what} names for {n} {what} rows/columns",
            names.len()
        )));
    }
    Ok(names)
}

pub fn technology(tables: &MakeUseTables) -> Result<TechnologyMatrices> {
    let v = tables.make_table();
    Ok(TechnologyMatrices {
        market_shares: v.divide_columns(&v.col_sums())?,
        absorption: tables.use_table().divide_columns(&v.row_sums())?,
    })
}

/// `A = D·B`, industry-by-industry.
pub fn coefficients_from_make_use(tables: &MakeUseTables) -> Result<Matrix> {
    let tech = technology(tables)?;
    multiply(&tech.market_shares, &tech.absorption)
}

/// Requirements written directly in terms of `D·B`:
///
/// * composite direct `D·B`, composite transfer `((I − DB)⁻¹ − I)·diag((I − DB)⁻¹)⁻¹`
/// * simple transfer `(I − DB)⁻¹ − I`, simple direct `D·B·diag((I − DB)⁻¹)`
/// * indirect is transfer minus direct in either frame.
///
/// The simple direct entry multiplies by the Leontief diagonal, matching the
/// transactions route; the printed make-use table divides by it instead,
/// which contradicts the worked example values.
pub fn requirements_from_make_use(
    tables: &MakeUseTables,
    kind: Kind,
    frame: Frame,
) -> Result<RequirementsMatrix> {
    let db = coefficients_from_make_use(tables)?;
    let viability = crate::system::viability(&db)?;
    if !viability.is_viable() {
        return Err(Error::NotViable(viability.spectral_radius));
    }
    let total = invert(&db.identity_minus()?)?;
    let total_diag = total.diagonal()?;

    let transfer = match frame {
        Frame::Simple => total.minus_identity()?,
        Frame::Composite => total.minus_identity()?.divide_columns(&total_diag)?,
    };
    let direct = match frame {
        Frame::Simple => db.scale_columns(&total_diag)?,
        Frame::Composite => db,
    };
    let values = match kind {
        Kind::Direct => direct,
        Kind::Transfer => transfer,
        Kind::Indirect => transfer.sub(&direct)?,
    };
    Ok(RequirementsMatrix {
        kind,
        frame,
        values,
    })
}
