//! The collapsing map, its insertion inverses, and the renormalization `ρ`
//! of the curve dynamics.

mod collapse;
mod rho;

pub use collapse::{
    collapse, collapsibility, insert, is_kept, Collapsibility, CollapseWitness, InsertionRule,
    Side, Unbounded, SCAN_LIMIT,
};
pub use rho::{
    collapsed_step_counts, collapsed_steps_row, first_return, renormalize,
    renormalize_with_doubling, repeated_renormalize, return_block, rho, zero_collapsible,
    LevelOutcome, LevelReport, RenormConfig, RenormTrace, Renormalized, ReturnBlock,
};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Omega,
    OmegaPrime,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Omega => write!(f, "ω"),
            Component::OmegaPrime => write!(f, "ω′"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenormError {
    #[error("index 0 is removed by the collapse")]
    NotZeroCollapsible,
    #[error("no kept index beyond ±{horizon}/2 ({status})")]
    HorizonExhausted { horizon: u64, status: Unbounded },
    #[error("insertion count at {index} is 0 before a collapsed −+")]
    InvariantViolation { index: i64 },
    #[error("{component} is not collapsible: {reason}")]
    NotRenormalizable {
        component: Component,
        reason: Box<RenormError>,
    },
    #[error("no return within {budget} steps")]
    BudgetExhausted { budget: u64 },
    #[error("the curve closes after four squares")]
    P4Detected,
}

impl RenormError {
    pub(crate) fn in_component(self, component: Component) -> RenormError {
        RenormError::NotRenormalizable {
            component,
            reason: Box::new(self),
        }
    }

    pub fn is_horizon_exhausted(&self) -> bool {
        match self {
            RenormError::HorizonExhausted { .. } => true,
            RenormError::NotRenormalizable { reason, .. } => reason.is_horizon_exhausted(),
            _ => false,
        }
    }
}
