//! Input-output economics: the Leontief model, classical indirect-effects
//! matrices, and the simple/composite direct, indirect and transfer
//! requirements with their transactions, gross outputs and impact analysis.
//!
//! Matrices are row-to-column: entry `(i, j)` is a flow from producing sector
//! `i` to consuming sector `j`.
//!
//! ```
//! use diact::{requirements, Frame, IoSystem, Kind, Matrix, Vector};
//!
//! let a = Matrix::from_rows(&[[0.0, 0.1, 0.0], [0.0, 0.0, 0.2], [0.3, 0.0, 0.0]])?;
//! let sys = IoSystem::from_coefficients(a, Vector::new(vec![10.0, 20.0, 30.0])?, vec![])?;
//! let ni = requirements(&sys, Kind::Indirect, Frame::Simple);
//! assert!((ni.values[(0, 2)] - 0.0201).abs() < 5e-5);
//! # Ok::<(), diact::Error>(())
//! ```

pub mod csv_format;
pub mod datasets;
pub mod error;
pub mod heatmap;
pub mod impact;
pub mod make_use;
pub mod matrix;
pub mod report;
pub mod requirements;
pub mod series;
pub mod system;

pub use error::{Error, Result};
pub use impact::{final_demand_impact, gross_output_impact, impact, DemandSegment, ImpactKind, ImpactResult};
pub use make_use::{coefficients_from_make_use, requirements_from_make_use, MakeUseTables};
pub use matrix::{invert, multiply, spectral_radius_bound, Lu, Matrix, Vector};
pub use report::AnalysisReport;
pub use requirements::{
    cycling_coefficients, diact_gross_outputs, legacy_indirect, requirements, subthroughflow,
    transactions, Frame, Kind, LegacyVariant, RequirementsMatrix, TransactionsMatrix,
};
pub use series::{propagation_round, truncated_leontief, verify_system, SeriesReport};
pub use system::{viability, IoSystem, SystemOptions, ViabilityReport};
