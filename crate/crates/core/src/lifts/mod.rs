//! Lift operators: closed forms transcribed as printed, definitional lifts
//! recovered by the determined-lift solver, and horizontal lifts built on an
//! adapted frame.

pub mod frames;
pub mod functions;
pub mod oneforms;
pub mod solver;
pub mod tensors;
pub mod vectors;

use std::fmt;

use crate::error::{Error, Result};

pub use frames::{adapted_frame, of_horizontal, vf_horizontal, AdaptedFrame};
pub use functions::{
    fn_complete, fn_complete_step, fn_complete_vertical, fn_horizontal, fn_vertical,
    gamma_gradient,
};
pub use oneforms::{of_complete_paper, of_cv_paper, of_lift_solve, of_vertical_closed};
pub use solver::{Certificate, SolveOptions, Solved};
pub use tensors::{t02_lift_solve, t11_lift_solve, t11_lift_solve_with, ClauseStatus, EndoRhs, TensorLift};
pub use vectors::{vf_complete_paper, vf_cv_paper, vf_lift_solve, vf_vertical_closed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftKind {
    Vertical,
    Complete,
    CompleteVertical { r: u32, s: u32 },
    Horizontal,
}

impl LiftKind {
    /// `(r, s)` such that the lift is `c^r v^s` on an order-`k` chart.
    pub fn orders(&self, k: u32) -> Result<(u32, u32)> {
        match *self {
            LiftKind::Vertical => Ok((0, k)),
            LiftKind::Complete => Ok((k, 0)),
            LiftKind::CompleteVertical { r, s } if r + s == k => Ok((r, s)),
            LiftKind::CompleteVertical { r, s } => Err(Error::OrderMismatch { r, s, k }),
            LiftKind::Horizontal => Err(Error::Domain(
                "horizontal lifts are built from an adapted frame, not solved".into(),
            )),
        }
    }

    /// Superscript text such as `v^2`, `c^1v^1`, `H^3`.
    pub fn superscript(&self, k: u32) -> String {
        match *self {
            LiftKind::Vertical => format!("v^{k}"),
            LiftKind::Complete => format!("c^{k}"),
            LiftKind::CompleteVertical { r, s } => format!("c^{r}v^{s}"),
            LiftKind::Horizontal => format!("H^{k}"),
        }
    }
}

impl fmt::Display for LiftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftKind::Vertical => f.write_str("vertical"),
            LiftKind::Complete => f.write_str("complete"),
            LiftKind::CompleteVertical { r, s } => write!(f, "complete-vertical({r},{s})"),
            LiftKind::Horizontal => f.write_str("horizontal"),
        }
    }
}
