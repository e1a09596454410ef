//! Literal nested-loop reference engine.
//!
//! This is a line-by-line imperative transcription of the state transition
//! procedure: a while-loop over the stop condition, an index loop with
//! in-place pair assignment for the interaction sweep, and an accumulating
//! loop for the evolution sweep. It exists solely as an independent route
//! for differential testing against the fold-based engine in [`crate::engine`]
//! and is kept free of any shared helpers from it.

use crate::engine::{EngineError, ParticleMethod, PmState, RunStatus};

/// Run status plus the full trace, instance first.
pub type LoopRun<M> = (
    RunStatus,
    Vec<PmState<<M as ParticleMethod>::Global, <M as ParticleMethod>::Particle>>,
);

/// Runs the nested-loop transcription and returns the status plus the full
/// trace (instance first). Traces must be byte-identical, once rendered, to
/// those of [`crate::engine::run`] on the same inputs.
pub fn run_nested_loop<M: ParticleMethod>(
    pm: &M,
    instance: &PmState<M::Global, M::Particle>,
    max_steps: u64,
) -> Result<LoopRun<M>, EngineError> {
    let mut g = instance.global.clone();
    let mut p = instance.particles.clone();
    let mut trace = vec![PmState::new(g.clone(), p.clone())];
    let mut steps: u64 = 0;

    while !pm.stop(&g) {
        if steps == max_steps {
            return Ok((RunStatus::CapExceeded, trace));
        }

        for j in 1..=p.len() {
            let view = PmState::new(g.clone(), p.clone());
            let neighbors = pm.neighborhood(&view, j);
            for k in neighbors {
                if k == 0 || k > p.len() {
                    return Err(EngineError::NeighborOutOfRange { j, k, len: p.len() });
                }
                if k == j {
                    return Err(EngineError::SelfPair { j });
                }
                let (pj, pk) = pm.interact(&g, &p[j - 1], &p[k - 1]);
                p[j - 1] = pj;
                p[k - 1] = pk;
            }
        }

        let mut q = Vec::new();
        for j in 1..=p.len() {
            let (g_next, emitted) = pm.evolve(&g, &p[j - 1]);
            g = g_next;
            q.extend(emitted);
        }
        p = q;
        g = pm.evolve_global(&g);

        steps += 1;
        trace.push(PmState::new(g.clone(), p.clone()));
    }

    Ok((RunStatus::Stopped { steps }, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;
    use crate::fixtures;

    #[test]
    fn agrees_with_the_fold_engine_on_the_counter() {
        let pm = fixtures::counter3_stop();
        let instance = PmState::new(0u8, vec![]);
        let (status, trace) = run_nested_loop(&pm, &instance, 100).expect("no errors");
        let out = engine::run(&pm, instance, 100).expect("no errors");
        assert_eq!(status, out.status);
        assert_eq!(trace, out.trace);
    }

    #[test]
    fn agrees_with_the_fold_engine_on_a_neighbor_heavy_method() {
        let pm = fixtures::marker_shuttle();
        let instance = PmState::new(0u8, vec![1u8, 0, 2, 0, 3]);
        let (status, trace) = run_nested_loop(&pm, &instance, 12).expect("no errors");
        let out = engine::run(&pm, instance, 12).expect("no errors");
        assert_eq!(status, out.status);
        assert_eq!(trace, out.trace);
    }
}
