//! Demand distributions induced by disaggregated segments of final demand
//! (simple frame) or of gross output (composite frame).
//!
//! A segment is a portion of the existing demand, not an exogenous shock, so
//! negative entries are refused unless explicitly allowed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::requirements::{requirements, Frame, Kind};
use crate::system::IoSystem;

/// A requirements kind, or the cumulative distribution `L·Δf̂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImpactKind {
    Direct,
    Indirect,
    Transfer,
    Cumulative,
}

impl ImpactKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ImpactKind::Direct => "direct",
            ImpactKind::Indirect => "indirect",
            ImpactKind::Transfer => "transfer",
            ImpactKind::Cumulative => "cumulative",
        }
    }

    fn requirements_kind(self) -> Option<Kind> {
        match self {
            ImpactKind::Direct => Some(Kind::Direct),
            ImpactKind::Indirect => Some(Kind::Indirect),
            ImpactKind::Transfer => Some(Kind::Transfer),
            ImpactKind::Cumulative => None,
        }
    }
}

impl From<Kind> for ImpactKind {
    fn from(kind: Kind) -> Self {
        match kind {
            Kind::Direct => ImpactKind::Direct,
            Kind::Indirect => ImpactKind::Indirect,
            Kind::Transfer => ImpactKind::Transfer,
        }
    }
}

impl fmt::Display for ImpactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ImpactKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cumulative" => Ok(ImpactKind::Cumulative),
            other => other.parse::<Kind>().map(Into::into),
        }
    }
}

/// `Δf` (simple frame) or `Δx` (composite frame).
#[derive(Debug, Clone, PartialEq)]
pub struct DemandSegment {
    frame: Frame,
    delta: Vector,
}

impl DemandSegment {
    pub fn new(frame: Frame, delta: Vector) -> Result<Self> {
        Self::with_negative(frame, delta, false)
    }

    /// Like [`DemandSegment::new`]; `allow_negative` admits negative entries,
    /// which fall outside the segment-of-existing-demand reading.
    pub fn with_negative(frame: Frame, delta: Vector, allow_negative: bool) -> Result<Self> {
        if !allow_negative {
            if let Some(i) = delta.as_slice().iter().position(|&v| v < 0.0) {
                return Err(Error::Negative {
                    what: "demand segment",
                    row: i,
                    col: 0,
                    value: delta[i],
                });
            }
        }
        Ok(Self { frame, delta })
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn delta(&self) -> &Vector {
        &self.delta
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImpactResult {
    pub kind: ImpactKind,
    pub frame: Frame,
    /// `ΔT*`: column `k` is the demand distribution induced by segment entry `k`.
    pub delta_t: Matrix,
    /// `Δx* = ΔT*·𝟙`
    pub delta_x: Vector,
}

fn check_len(sys: &IoSystem, seg: &DemandSegment) -> Result<()> {
    if seg.delta.len() != sys.n() {
        return Err(Error::DimensionMismatch(format!(
            "segment of length {} for {} sectors",
            seg.delta.len(),
            sys.n()
        )));
    }
    Ok(())
}

fn distribute(coefficients: &Matrix, seg: &DemandSegment, kind: ImpactKind) -> ImpactResult {
    let delta_t = coefficients
        .scale_columns(&seg.delta)
        .expect("segment length checked");
    let delta_x = delta_t.row_sums();
    ImpactResult {
        kind,
        frame: seg.frame,
        delta_t,
        delta_x,
    }
}

/// `ΔT = L·Δf̂` (cumulative) or `ΔT* = N*·Δf̂` with simple requirements.
pub fn final_demand_impact(
    sys: &IoSystem,
    seg: &DemandSegment,
    kind: ImpactKind,
) -> Result<ImpactResult> {
    if seg.frame != Frame::Simple {
        return Err(Error::Unsupported(
            "final-demand impact needs a simple-frame segment (Δf)".into(),
        ));
    }
    check_len(sys, seg)?;
    let coefficients = match kind.requirements_kind() {
        None => sys.leontief().clone(),
        Some(k) => requirements(sys, k, Frame::Simple).values,
    };
    Ok(distribute(&coefficients, seg, kind))
}

/// `Δ𝑻* = 𝑵*·Δx̂` with composite requirements.
pub fn gross_output_impact(sys: &IoSystem, seg: &DemandSegment, kind: Kind) -> Result<ImpactResult> {
    if seg.frame != Frame::Composite {
        return Err(Error::Unsupported(
            "gross-output impact needs a composite-frame segment (Δx)".into(),
        ));
    }
    check_len(sys, seg)?;
    let coefficients = requirements(sys, kind, Frame::Composite).values;
    Ok(distribute(&coefficients, seg, kind.into()))
}

/// Dispatches on the segment's frame. The cumulative kind exists only in the
/// simple frame.
pub fn impact(sys: &IoSystem, seg: &DemandSegment, kind: ImpactKind) -> Result<ImpactResult> {
    match (seg.frame, kind.requirements_kind()) {
        (Frame::Simple, _) => final_demand_impact(sys, seg, kind),
        (Frame::Composite, Some(k)) => gross_output_impact(sys, seg, k),
        (Frame::Composite, None) => Err(Error::Unsupported(
            "cumulative impact is defined only for the simple frame".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::requirements::{subthroughflow, transactions};

    fn hypothetical() -> IoSystem {
        let a = Matrix::from_rows(&[[0.0, 0.1, 0.0], [0.0, 0.0, 0.2], [0.3, 0.0, 0.0]]).unwrap();
        IoSystem::from_coefficients(a, Vector::new(vec![10.0, 20.0, 30.0]).unwrap(), vec![])
            .unwrap()
    }

    fn seg(frame: Frame, v: &[f64]) -> DemandSegment {
        DemandSegment::new(frame, Vector::new(v.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn zero_segment() {
        let sys = hypothetical();
        let r = impact(&sys, &seg(Frame::Simple, &[0.0; 3]), ImpactKind::Indirect).unwrap();
        assert_eq!(r.delta_t, Matrix::zeros(3, 3));
        assert_eq!(r.delta_x, Vector::zeros(3));
        let r = impact(&sys, &seg(Frame::Composite, &[0.0; 3]), ImpactKind::Transfer).unwrap();
        assert_eq!(r.delta_x, Vector::zeros(3));
    }

    #[test]
    fn full_demand_reproduces_subthroughflow() {
        let sys = hypothetical();
        let s = DemandSegment::new(Frame::Simple, sys.final_demand().clone()).unwrap();
        let r = final_demand_impact(&sys, &s, ImpactKind::Cumulative).unwrap();
        assert_eq!(r.delta_t, subthroughflow(&sys).values);
        assert!(r.delta_x.max_abs_diff(sys.gross_output()).unwrap() < 1e-12);
    }

    #[test]
    fn full_output_reproduces_transactions() {
        let sys = hypothetical();
        let s = DemandSegment::new(Frame::Composite, sys.gross_output().clone()).unwrap();
        let r = gross_output_impact(&sys, &s, Kind::Direct).unwrap();
        assert!(r.delta_t.max_abs_diff(sys.transactions()).unwrap() < 1e-12);
        let ti = transactions(&sys, Kind::Indirect, Frame::Composite).values;
        let r = gross_output_impact(&sys, &s, Kind::Indirect).unwrap();
        assert_eq!(r.delta_t, ti);
    }

    #[test]
    fn unit_output_segment_extracts_columns() {
        let sys = hypothetical();
        let ni = requirements(&sys, Kind::Indirect, Frame::Composite).values;
        for k in 0..3 {
            let s = DemandSegment::new(Frame::Composite, Vector::unit(3, k)).unwrap();
            let r = gross_output_impact(&sys, &s, Kind::Indirect).unwrap();
            for i in 0..3 {
                assert_eq!(r.delta_x[i], ni[(i, k)]);
            }
        }
    }

    #[test]
    fn rejects_bad_segments() {
        let sys = hypothetical();
        assert!(matches!(
            impact(&sys, &seg(Frame::Composite, &[1.0; 3]), ImpactKind::Cumulative),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            final_demand_impact(&sys, &seg(Frame::Composite, &[1.0; 3]), ImpactKind::Direct),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            gross_output_impact(&sys, &seg(Frame::Simple, &[1.0; 3]), Kind::Direct),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            impact(&sys, &seg(Frame::Simple, &[1.0; 2]), ImpactKind::Direct),
            Err(Error::DimensionMismatch(_))
        ));
        let neg = Vector::new(vec![1.0, -1.0, 0.0]).unwrap();
        assert!(DemandSegment::new(Frame::Simple, neg.clone()).is_err());
        let s = DemandSegment::with_negative(Frame::Simple, neg, true).unwrap();
        let r = impact(&sys, &s, ImpactKind::Transfer).unwrap();
        assert!(r.delta_x[0] < 0.0 || r.delta_x.as_slice().iter().any(|v| *v < 0.0));
    }

    #[test]
    fn parse_kind() {
        assert_eq!("cumulative".parse::<ImpactKind>().unwrap(), ImpactKind::Cumulative);
        assert_eq!("Indirect".parse::<ImpactKind>().unwrap(), ImpactKind::Indirect);
        assert!("other".parse::<ImpactKind>().is_err());
    }
}
