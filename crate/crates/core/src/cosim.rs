//! Lock-step co-simulation of a Turing machine and its compiled particle
//! method, with per-step invariant checks.

use crate::engine::{EngineError, PmState};
use crate::turing::{Configuration, InputError, InvalidMachine};
use thiserror::Error;

/// First invariant breach found during a co-simulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    /// 1-based trace index of the offending state pair.
    pub step: u64,
    /// Stable name of the violated criterion.
    pub criterion: &'static str,
    pub detail: String,
}

/// Paired traces plus the verdict of a co-simulated run.
///
/// `tm_trace[t-1]` and `pm_trace[t-1]` describe the same instant `t`. The
/// traces end at the first divergence, at the halting step, or at the step
/// cap, whichever comes first.
#[derive(Clone, Debug)]
pub struct CosimReport<G, P> {
    pub tm_trace: Vec<Configuration>,
    pub pm_trace: Vec<PmState<G, P>>,
    /// Step at which both sides halted; `None` when the cap cut the run short.
    pub halted_at: Option<u64>,
    pub divergence: Option<Divergence>,
}

impl<G, P> CosimReport<G, P> {
    /// True when every checked step satisfied every criterion.
    pub fn ok(&self) -> bool {
        self.divergence.is_none()
    }

    pub fn steps_checked(&self) -> u64 {
        self.tm_trace.len() as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosimError {
    #[error(transparent)]
    Machine(#[from] InvalidMachine),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}
