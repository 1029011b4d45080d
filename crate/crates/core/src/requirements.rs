//! Simple and composite direct, indirect and transfer (total) requirements
//! and transactions, the subthroughflow matrix, diact gross outputs, and the
//! classical indirect-effects matrices they are contrasted with.
//!
//! All quantities are built from the `(A, L, L̂)` triple cached on
//! [`IoSystem`]:
//!
//! | kind     | simple (per unit final demand) | composite (per unit gross output) |
//! |----------|--------------------------------|-----------------------------------|
//! | transfer | `L − I`                        | `(L − I)·L̂⁻¹`                     |
//! | direct   | `A·L̂`                          | `A`                               |
//! | indirect | transfer − direct              | transfer − direct                 |
//!
//! Transactions scale the columns of a requirements matrix by `f̂` (simple)
//! or `x̂` (composite).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{diag_of, Matrix, Vector};
use crate::system::IoSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Direct,
    Indirect,
    Transfer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Simple,
    Composite,
}

/// The four classical indirect-effects matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LegacyVariant {
    /// `L − I`
    E1,
    /// `L − A`
    E2,
    /// `L − I − A`
    E3,
    /// `L − L̂`
    E4,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Direct, Kind::Indirect, Kind::Transfer];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Direct => "direct",
            Kind::Indirect => "indirect",
            Kind::Transfer => "transfer",
        }
    }
}

impl Frame {
    pub const ALL: [Frame; 2] = [Frame::Simple, Frame::Composite];

    pub fn as_str(self) -> &'static str {
        match self {
            Frame::Simple => "simple",
            Frame::Composite => "composite",
        }
    }
}

impl LegacyVariant {
    pub const ALL: [LegacyVariant; 4] = [
        LegacyVariant::E1,
        LegacyVariant::E2,
        LegacyVariant::E3,
        LegacyVariant::E4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LegacyVariant::E1 => "e1",
            LegacyVariant::E2 => "e2",
            LegacyVariant::E3 => "e3",
            LegacyVariant::E4 => "e4",
        }
    }
}

macro_rules! display_from_str {
    ($ty:ty, $what:literal, [$($variant:expr),+]) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                let lower = s.to_ascii_lowercase();
                [$($variant),+]
                    .into_iter()
                    .find(|v| v.as_str() == lower)
                    .ok_or_else(|| Error::Parse(format!("unknown {} '{s}'", $what)))
            }
        }
    };
}

display_from_str!(Kind, "kind", [Kind::Direct, Kind::Indirect, Kind::Transfer]);
display_from_str!(Frame, "frame", [Frame::Simple, Frame::Composite]);
display_from_str!(
    LegacyVariant,
    "legacy variant",
    [LegacyVariant::E1, LegacyVariant::E2, LegacyVariant::E3, LegacyVariant::E4]
);

/// A dimensionless coefficient matrix tagged with its kind and frame.
#[derive(Debug, Clone, PartialEq)]
pub struct RequirementsMatrix {
    pub kind: Kind,
    pub frame: Frame,
    pub values: Matrix,
}

/// A monetary flow matrix tagged with its kind and frame.
#[derive(Debug, Clone, PartialEq)]
pub struct TransactionsMatrix {
    pub kind: Kind,
    pub frame: Frame,
    pub values: Matrix,
}

/// `T = L·f̂` with its diagonal `𝖳 = L̂·f̂`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subthroughflow {
    pub values: Matrix,
    pub diag: Vector,
}

pub fn subthroughflow(sys: &IoSystem) -> Subthroughflow {
    let values = sys
        .leontief()
        .scale_columns(sys.final_demand())
        .expect("system dimensions are consistent");
    let diag = values.diagonal().expect("square");
    Subthroughflow { values, diag }
}

/// Transfer and direct requirements of one frame; indirect is their difference.
fn transfer_and_direct(sys: &IoSystem, frame: Frame) -> (Matrix, Matrix) {
    let l_minus_i = sys.leontief().minus_identity().expect("square");
    let l_diag = sys.leontief_diagonal();
    let a = sys.coefficients();
    // L̂ has diagonal entries ≥ 1 for nonnegative A, so the division is safe.
    match frame {
        Frame::Simple => (l_minus_i, a.scale_columns(l_diag).expect("square")),
        Frame::Composite => (l_minus_i.divide_columns(l_diag).expect("square"), a.clone()),
    }
}

fn build(sys: &IoSystem, kind: Kind, frame: Frame) -> Matrix {
    let (transfer, direct) = transfer_and_direct(sys, frame);
    match kind {
        Kind::Transfer => transfer,
        Kind::Direct => direct,
        Kind::Indirect => transfer.sub(&direct).expect("same shape"),
    }
}

/// Requirements relative to gross outputs: `A`, `(L − I)·L̂⁻¹`, and their difference.
pub fn composite_requirements(sys: &IoSystem, kind: Kind) -> RequirementsMatrix {
    RequirementsMatrix {
        kind,
        frame: Frame::Composite,
        values: build(sys, kind, Frame::Composite),
    }
}

/// Requirements relative to final demands: `A·L̂`, `L − I`, and their difference.
pub fn simple_requirements(sys: &IoSystem, kind: Kind) -> RequirementsMatrix {
    RequirementsMatrix {
        kind,
        frame: Frame::Simple,
        values: build(sys, kind, Frame::Simple),
    }
}

pub fn requirements(sys: &IoSystem, kind: Kind, frame: Frame) -> RequirementsMatrix {
    match frame {
        Frame::Simple => simple_requirements(sys, kind),
        Frame::Composite => composite_requirements(sys, kind),
    }
}

/// The normalising vector of a frame: `f` for simple, `x` for composite.
pub fn frame_basis(sys: &IoSystem, frame: Frame) -> &Vector {
    match frame {
        Frame::Simple => sys.final_demand(),
        Frame::Composite => sys.gross_output(),
    }
}

/// Requirements right-multiplied by `f̂` (simple) or `x̂` (composite).
///
/// Composite direct transactions are the system's own `Z`.
pub fn transactions(sys: &IoSystem, kind: Kind, frame: Frame) -> TransactionsMatrix {
    let values = if kind == Kind::Direct && frame == Frame::Composite {
        sys.transactions().clone()
    } else {
        requirements(sys, kind, frame)
            .values
            .scale_columns(frame_basis(sys, frame))
            .expect("system dimensions are consistent")
    };
    TransactionsMatrix {
        kind,
        frame,
        values,
    }
}

/// Gross outputs induced by one kind of transaction: `T*·𝟙`.
pub fn diact_gross_outputs(sys: &IoSystem, kind: Kind, frame: Frame) -> Vector {
    transactions(sys, kind, frame).values.row_sums()
}

pub fn legacy_indirect(sys: &IoSystem, variant: LegacyVariant) -> Matrix {
    let l = sys.leontief();
    match variant {
        LegacyVariant::E1 => l.minus_identity(),
        LegacyVariant::E2 => l.sub(sys.coefficients()),
        LegacyVariant::E3 => l.minus_identity().and_then(|m| m.sub(sys.coefficients())),
        LegacyVariant::E4 => diag_of(l).and_then(|lhat| l.sub(&lhat)),
    }
    .expect("system dimensions are consistent")
}

/// Diagonal of the indirect requirements of a frame: each sector's flow
/// returning to itself through other sectors.
pub fn cycling_coefficients(sys: &IoSystem, frame: Frame) -> Vector {
    build(sys, Kind::Indirect, frame)
        .diagonal()
        .expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::multiply;

    fn hypothetical() -> IoSystem {
        let a = Matrix::from_rows(&[[0.0, 0.1, 0.0], [0.0, 0.0, 0.2], [0.3, 0.0, 0.0]]).unwrap();
        IoSystem::from_coefficients(a, Vector::new(vec![10.0, 20.0, 30.0]).unwrap(), vec![])
            .unwrap()
    }

    fn zero_system() -> IoSystem {
        IoSystem::from_coefficients(Matrix::zeros(3, 3), Vector::ones(3), vec![]).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 5e-5
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("Indirect".parse::<Kind>().unwrap(), Kind::Indirect);
        assert_eq!("composite".parse::<Frame>().unwrap(), Frame::Composite);
        assert_eq!("E3".parse::<LegacyVariant>().unwrap(), LegacyVariant::E3);
        assert!("total".parse::<Kind>().is_err());
        assert_eq!(Kind::Transfer.to_string(), "transfer");
    }

    #[test]
    fn subthroughflow_entries() {
        let sys = hypothetical();
        let t = subthroughflow(&sys);
        assert!(close(t.values[(1, 2)], 6.0362));
        assert!(close(t.values[(0, 0)], 10.0604));
        assert!(close(t.values[(2, 2)], 30.1811));
        assert!(t.values.row_sums().max_abs_diff(sys.gross_output()).unwrap() < 1e-12);
        let lhat_fhat = diag_of(sys.leontief())
            .unwrap()
            .scale_columns(sys.final_demand())
            .unwrap();
        assert_eq!(t.diag, lhat_fhat.diagonal().unwrap());

        let t0 = subthroughflow(&zero_system());
        assert_eq!(t0.values, Matrix::identity(3));
    }

    #[test]
    fn composite_entries() {
        let sys = hypothetical();
        let ni = composite_requirements(&sys, Kind::Indirect).values;
        assert!(close(ni[(2, 1)], 0.0300));
        assert!(close(ni[(0, 2)], 0.0200));
        let nt = composite_requirements(&sys, Kind::Transfer).values;
        assert!(close(nt[(2, 0)], 0.3000));
        assert_eq!(&composite_requirements(&sys, Kind::Direct).values, sys.coefficients());
    }

    #[test]
    fn simple_entries() {
        let sys = hypothetical();
        let ni = simple_requirements(&sys, Kind::Indirect).values;
        assert!(close(ni[(0, 2)], 0.0201));
        assert!(ni[(0, 1)].abs() < 1e-12);
        for i in 0..3 {
            assert!(close(ni[(i, i)], 0.0060));
        }
        let nd = simple_requirements(&sys, Kind::Direct).values;
        assert!(close(nd[(2, 0)], 0.3018));
        let nt = simple_requirements(&sys, Kind::Transfer).values;
        assert_eq!(nt, sys.leontief().minus_identity().unwrap());
    }

    #[test]
    fn zero_coefficients_give_zero_requirements() {
        let sys = zero_system();
        for frame in Frame::ALL {
            for kind in Kind::ALL {
                assert_eq!(requirements(&sys, kind, frame).values, Matrix::zeros(3, 3));
                assert_eq!(diact_gross_outputs(&sys, kind, frame), Vector::zeros(3));
            }
            assert_eq!(cycling_coefficients(&sys, frame), Vector::zeros(3));
        }
    }

    #[test]
    fn transactions_entries() {
        let sys = hypothetical();
        let ti = transactions(&sys, Kind::Indirect, Frame::Simple).values;
        assert!(close(ti[(2, 1)], 0.6036));
        assert!(ti[(0, 1)].abs() < 1e-12);
        let td = transactions(&sys, Kind::Direct, Frame::Composite).values;
        assert_eq!(&td, sys.transactions());
        assert!(close(td[(1, 2)], 6.7606));

        let quiet = sys.with_final_demand(Vector::zeros(3)).unwrap();
        for kind in Kind::ALL {
            assert_eq!(
                transactions(&quiet, kind, Frame::Simple).values,
                Matrix::zeros(3, 3)
            );
        }
    }

    #[test]
    fn gross_output_routes_agree() {
        let sys = hypothetical();
        let xi = diact_gross_outputs(&sys, Kind::Indirect, Frame::Simple);
        for (got, want) in xi.as_slice().iter().zip([0.6640, 0.7243, 0.7847]) {
            assert!(close(*got, want));
        }
        for frame in Frame::ALL {
            let mut sum = Vector::zeros(3);
            for kind in Kind::ALL {
                let via_t = diact_gross_outputs(&sys, kind, frame);
                let via_n = requirements(&sys, kind, frame)
                    .values
                    .mul_vec(frame_basis(&sys, frame))
                    .unwrap();
                assert!(via_t.max_abs_diff(&via_n).unwrap() < 1e-12);
                if kind != Kind::Transfer {
                    sum = sum.add(&via_t).unwrap();
                }
            }
            let total = diact_gross_outputs(&sys, Kind::Transfer, frame);
            assert!(sum.max_abs_diff(&total).unwrap() < 1e-12);
        }
    }

    #[test]
    fn legacy_matrices() {
        let sys = hypothetical();
        let e3 = legacy_indirect(&sys, LegacyVariant::E3);
        assert!(close(e3[(0, 1)], 0.0006));
        assert_eq!(
            legacy_indirect(&sys, LegacyVariant::E1),
            simple_requirements(&sys, Kind::Transfer).values
        );
        let e4 = legacy_indirect(&sys, LegacyVariant::E4);
        assert_eq!(e4.diagonal().unwrap(), Vector::zeros(3));
        assert!(close(e4[(0, 1)], 0.1006));

        let z = zero_system();
        assert_eq!(legacy_indirect(&z, LegacyVariant::E1), Matrix::zeros(3, 3));
        assert_eq!(legacy_indirect(&z, LegacyVariant::E2), Matrix::identity(3));
        assert_eq!(legacy_indirect(&z, LegacyVariant::E3), Matrix::zeros(3, 3));
        assert_eq!(legacy_indirect(&z, LegacyVariant::E4), Matrix::zeros(3, 3));
    }

    #[test]
    fn cycling_single_loop() {
        let c = cycling_coefficients(&hypothetical(), Frame::Simple);
        for v in c.as_slice() {
            assert!(close(*v, 0.0060));
        }
    }

    #[test]
    fn acyclic_systems_have_no_cycling() {
        let a = Matrix::from_rows(&[
            [0.0, 0.2, 0.1, 0.05],
            [0.0, 0.0, 0.3, 0.2],
            [0.0, 0.0, 0.0, 0.4],
            [0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        let sys = IoSystem::from_coefficients(a, Vector::ones(4), vec![]).unwrap();
        // no cycles: L̂ = I exactly, so L − I − A·L̂ has a zero diagonal
        assert_eq!(sys.leontief_diagonal(), &Vector::ones(4));
        for frame in Frame::ALL {
            assert!(cycling_coefficients(&sys, frame).max_abs() < 1e-15);
        }
    }

    #[test]
    fn frame_bridge() {
        let sys = hypothetical();
        let lhat = diag_of(sys.leontief()).unwrap();
        for kind in [Kind::Direct, Kind::Indirect] {
            let simple = simple_requirements(&sys, kind).values;
            let bridged = multiply(&composite_requirements(&sys, kind).values, &lhat).unwrap();
            assert!(simple.max_abs_diff(&bridged).unwrap() < 1e-12);
        }
        let diff = composite_requirements(&sys, Kind::Transfer)
            .values
            .sub(&composite_requirements(&sys, Kind::Indirect).values)
            .unwrap();
        assert!(diff.max_abs_diff(sys.coefficients()).unwrap() < 1e-15);
    }
}
