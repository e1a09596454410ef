//! Halting decider for finite-state, non-producing particle methods.
//!
//! With finite value spaces and an evolve function that never emits more
//! than one particle, at most `|G| * sum_{j=0..m} |P|^j` states are
//! reachable from an instance with `m` particles. The decider walks the
//! deterministic transition sequence, keyed by canonical state renderings,
//! and reports either the halting step or the entry point and length of the
//! cycle it must otherwise fall into.

use crate::check::{check_t3, DomainSampler};
use crate::engine::{self, Domain, EngineError, ParticleMethod, PmState};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HaltError {
    #[error("value domains must be nonempty")]
    DegenerateDomain,
    #[error("state bound overflows")]
    BoundOverflow,
    #[error("decidability preconditions not met: {0}")]
    PreconditionFailed(String),
    #[error("bound unrepresentable and no explicit cap given")]
    CapRequired,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// The reachable-state count for an instance with `initial_particles`
/// particles over the given domain sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateBound {
    pub global_values: u64,
    pub particle_values: u64,
    pub initial_particles: u64,
    /// `global_values * sum_{j=0..initial_particles} particle_values^j`.
    pub bound: u128,
}

/// Computes the reachable-state bound with checked arithmetic.
pub fn state_bound(
    global_values: u64,
    particle_values: u64,
    initial_particles: u64,
) -> Result<StateBound, HaltError> {
    if global_values == 0 || particle_values == 0 {
        return Err(HaltError::DegenerateDomain);
    }
    let mut tuples: u128 = 0;
    let mut power: u128 = 1;
    for j in 0..=initial_particles {
        tuples = tuples.checked_add(power).ok_or(HaltError::BoundOverflow)?;
        if j < initial_particles {
            power = power
                .checked_mul(particle_values as u128)
                .ok_or(HaltError::BoundOverflow)?;
        }
    }
    let bound = (global_values as u128)
        .checked_mul(tuples)
        .ok_or(HaltError::BoundOverflow)?;
    Ok(StateBound {
        global_values,
        particle_values,
        initial_particles,
        bound,
    })
}

/// Decided fate of one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaltingVerdict {
    /// The stopping condition held after exactly `steps` transition steps.
    Halts { steps: u64 },
    /// The run revisits the state it had after `prefix_length` steps every
    /// `cycle_length` further steps; the stopping condition never holds.
    Loops {
        prefix_length: u64,
        cycle_length: u64,
    },
    /// The step cap ran out first. Unreachable when the preconditions hold
    /// and the cap is the state bound.
    Exhausted { visited: u64, cap: u64 },
}

/// Verdict plus the bookkeeping that justifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: HaltingVerdict,
    /// Distinct states stored before the verdict fired.
    pub visited: u64,
    pub bound: Option<StateBound>,
    pub precheck_overridden: bool,
}

/// Decides halting for the given instance.
///
/// The decidability restrictions (finite domains, non-producing evolve) are
/// enforced up front via [`check_t3`] over the declared enumerations;
/// `override_precheck` skips the enforcement for experiments and is recorded
/// in the decision. The cap defaults to the state bound and must be given
/// explicitly when the bound is unrepresentable.
pub fn decide<M: ParticleMethod>(
    pm: &M,
    instance: &PmState<M::Global, M::Particle>,
    cap: Option<u64>,
    override_precheck: bool,
) -> Result<Decision, HaltError> {
    let (globals, particles) = match (pm.global_domain(), pm.particle_domain()) {
        (Domain::Finite(g), Domain::Finite(p)) => (g, p),
        _ => (Vec::new(), Vec::new()),
    };
    let precheck = check_t3(pm, &DomainSampler::exhaustive(globals.clone(), particles.clone()));
    let precheck_ok = precheck.all_ok();
    if !precheck_ok && !override_precheck {
        let failing: Vec<String> = precheck
            .entries
            .iter()
            .filter(|e| !e.verdict.is_ok())
            .map(|e| e.name.to_string())
            .collect();
        return Err(HaltError::PreconditionFailed(failing.join(", ")));
    }

    let bound = if globals.is_empty() || particles.is_empty() {
        None
    } else {
        state_bound(
            globals.len() as u64,
            particles.len() as u64,
            instance.len() as u64,
        )
        .ok()
    };
    let effective_cap = match cap {
        Some(c) => c,
        None => bound
            .and_then(|b| u64::try_from(b.bound).ok())
            .ok_or(HaltError::CapRequired)?,
    };

    let mut visited: HashMap<String, u64> = HashMap::new();
    let mut state = instance.clone();
    let mut step: u64 = 0;
    let verdict = loop {
        if pm.stop(&state.global) {
            break HaltingVerdict::Halts { steps: step };
        }
        let key = engine::render_state(pm, &state);
        if let Some(&first_seen) = visited.get(&key) {
            break HaltingVerdict::Loops {
                prefix_length: first_seen,
                cycle_length: step - first_seen,
            };
        }
        if step >= effective_cap {
            break HaltingVerdict::Exhausted {
                visited: visited.len() as u64,
                cap: effective_cap,
            };
        }
        visited.insert(key, step);
        let next = engine::transition_step(pm, &state)?;
        if precheck_ok {
            assert!(
                next.len() <= state.len(),
                "non-producing evolve grew the particle tuple"
            );
        }
        state = next;
        step += 1;
    };
    Ok(Decision {
        verdict,
        visited: visited.len() as u64,
        bound,
        precheck_overridden: override_precheck && !precheck_ok,
    })
}
