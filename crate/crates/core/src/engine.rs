//! Generic particle-method execution engine.
//!
//! A particle method is a pair of value spaces (per-particle and global)
//! together with five behaviors: a neighborhood function `u`, a stopping
//! condition `f`, a pairwise interact function `i`, a per-particle evolve
//! function `e` that may create or destroy particles, and a global evolve
//! function `eg`. One transition step is: for each particle in order,
//! evaluate `u` once on the current state and fold `i` over the returned
//! neighbor indices; then thread the global value through `e` over all
//! particles, concatenating the emitted particles into the next tuple;
//! finally apply `eg`. A run repeats transition steps until `f` holds on the
//! global value, checking `f` before every step (so an instance can be final
//! with zero steps).
//!
//! All particle indices at this API surface are 1-based, matching the
//! neighborhood function's codomain.

use std::fmt;
use thiserror::Error;

/// A full engine state: global value plus finite particle tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PmState<G, P> {
    pub global: G,
    pub particles: Vec<P>,
}

impl<G, P> PmState<G, P> {
    pub fn new(global: G, particles: Vec<P>) -> Self {
        PmState { global, particles }
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }
}

/// Declared extent of a value space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain<T> {
    /// Finitely enumerable; the vector lists every value exactly once.
    Finite(Vec<T>),
    /// Unbounded (or not practically enumerable).
    Infinite,
}

impl<T> Domain<T> {
    pub fn size(&self) -> Option<u64> {
        match self {
            Domain::Finite(v) => Some(v.len() as u64),
            Domain::Infinite => None,
        }
    }
}

/// Behaviors and domain metadata of one particle method.
///
/// Behaviors must be deterministic: equal arguments give equal results. The
/// engine does not enforce this, but the restriction checker detects
/// violations by repeated invocation. `render_global`/`render_particle`
/// must be injective on the declared domains; the rendering doubles as the
/// state identity for cycle detection.
pub trait ParticleMethod {
    type Global: Clone + PartialEq;
    type Particle: Clone + PartialEq;

    /// Neighbor indices (1-based) of particle `j` in the given state.
    fn neighborhood(&self, state: &PmState<Self::Global, Self::Particle>, j: usize) -> Vec<usize>;

    /// Stopping condition on the global value.
    fn stop(&self, g: &Self::Global) -> bool;

    /// Pairwise interaction; returns the replacements for `(p_j, p_k)`.
    fn interact(
        &self,
        g: &Self::Global,
        pj: &Self::Particle,
        pk: &Self::Particle,
    ) -> (Self::Particle, Self::Particle);

    /// Per-particle evolution; returns the new global value and the
    /// particles (zero or more) replacing `p_j`.
    fn evolve(&self, g: &Self::Global, pj: &Self::Particle)
        -> (Self::Global, Vec<Self::Particle>);

    /// Evolution of the global value, applied once at the end of each step.
    fn evolve_global(&self, g: &Self::Global) -> Self::Global;

    /// Comma-separated field list of the global value, no delimiters.
    fn render_global(&self, g: &Self::Global) -> String;

    /// Comma-separated field list of one particle, no delimiters.
    fn render_particle(&self, p: &Self::Particle) -> String;

    fn global_domain(&self) -> Domain<Self::Global> {
        Domain::Infinite
    }

    fn particle_domain(&self) -> Domain<Self::Particle> {
        Domain::Infinite
    }

    fn may_create_particles(&self) -> bool {
        true
    }

    fn may_destroy_particles(&self) -> bool {
        true
    }
}

/// Default bound on transition steps for open-ended runs.
pub const DEFAULT_STEP_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("neighborhood index {k} out of range for particle {j} (tuple length {len})")]
    NeighborOutOfRange { j: usize, k: usize, len: usize },
    #[error("particle {j} listed as its own neighbor")]
    SelfPair { j: usize },
}

/// Cumulative behavior invocation counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CallCounts {
    pub u: u64,
    pub f: u64,
    pub i: u64,
    pub e: u64,
    pub eg: u64,
}

/// Snapshot of one trace state: particle count, rendered sizes in bits, and
/// the cumulative call counts at the moment the state was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRow {
    /// 1-based state index; `t = 1` is the instance.
    pub t: u64,
    pub particles: usize,
    pub global_bits: u64,
    pub particle_bits: Vec<u64>,
    pub max_particle_bits: u64,
    pub calls: CallCounts,
}

/// Per-run resource measurements: one row per trace state plus totals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepCounters {
    pub rows: Vec<StepRow>,
    pub total: CallCounts,
}

impl StepCounters {
    fn record<M: ParticleMethod>(&mut self, pm: &M, state: &PmState<M::Global, M::Particle>) {
        let particle_bits: Vec<u64> = state
            .particles
            .iter()
            .map(|p| 8 * pm.render_particle(p).len() as u64)
            .collect();
        self.rows.push(StepRow {
            t: self.rows.len() as u64 + 1,
            particles: state.len(),
            global_bits: 8 * pm.render_global(&state.global).len() as u64,
            max_particle_bits: particle_bits.iter().copied().max().unwrap_or(0),
            particle_bits,
            calls: self.total,
        });
    }
}

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    /// The stopping condition held after `steps` transition steps.
    Stopped { steps: u64 },
    /// The step cap was reached before the stopping condition held.
    CapExceeded,
}

/// Outcome of [`run`]: the trace (instance first), the final status, and
/// resource counters.
#[derive(Clone, Debug)]
pub struct RunOutcome<G, P> {
    pub status: RunStatus,
    pub trace: Vec<PmState<G, P>>,
    pub counters: StepCounters,
}

impl<G, P> RunOutcome<G, P> {
    pub fn final_state(&self) -> &PmState<G, P> {
        self.trace.last().expect("trace contains at least the instance")
    }
}

fn replace_pair<M: ParticleMethod>(
    pm: &M,
    g: &M::Global,
    particles: Vec<M::Particle>,
    j: usize,
    k: usize,
) -> Result<Vec<M::Particle>, EngineError> {
    let len = particles.len();
    if j == 0 || j > len || k == 0 || k > len {
        return Err(EngineError::NeighborOutOfRange { j, k, len });
    }
    if j == k {
        return Err(EngineError::SelfPair { j });
    }
    let (pj, pk) = pm.interact(g, &particles[j - 1], &particles[k - 1]);
    let mut out = particles;
    out[j - 1] = pj;
    out[k - 1] = pk;
    Ok(out)
}

/// One pairwise interaction: returns the particle tuple with positions `j`
/// and `k` replaced by the interact result, everything else unchanged.
pub fn interact_pair<M: ParticleMethod>(
    pm: &M,
    state: &PmState<M::Global, M::Particle>,
    j: usize,
    k: usize,
) -> Result<Vec<M::Particle>, EngineError> {
    replace_pair(pm, &state.global, state.particles.clone(), j, k)
}

fn interact_all_counted<M: ParticleMethod>(
    pm: &M,
    state: &PmState<M::Global, M::Particle>,
    counts: &mut CallCounts,
) -> Result<Vec<M::Particle>, EngineError> {
    let g = &state.global;
    (1..=state.len()).try_fold(state.particles.clone(), |acc, j| {
        // The neighborhood is evaluated exactly once per particle, on the
        // current, partially interacted tuple.
        let view = PmState::new(g.clone(), acc);
        counts.u += 1;
        let neighbors = pm.neighborhood(&view, j);
        neighbors.into_iter().try_fold(view.particles, |acc, k| {
            counts.i += 1;
            replace_pair(pm, g, acc, j, k)
        })
    })
}

/// Interaction sweep: every particle interacts with all of its neighbors,
/// in index order. Preserves the particle count.
pub fn interact_all<M: ParticleMethod>(
    pm: &M,
    state: &PmState<M::Global, M::Particle>,
) -> Result<Vec<M::Particle>, EngineError> {
    interact_all_counted(pm, state, &mut CallCounts::default())
}

fn evolve_all_counted<M: ParticleMethod>(
    pm: &M,
    state: &PmState<M::Global, M::Particle>,
    counts: &mut CallCounts,
) -> PmState<M::Global, M::Particle> {
    let seed = (state.global.clone(), Vec::new());
    let (global, particles) = state.particles.iter().fold(seed, |(g, mut q), pj| {
        counts.e += 1;
        let (g, emitted) = pm.evolve(&g, pj);
        q.extend(emitted);
        (g, q)
    });
    PmState::new(global, particles)
}

/// Evolution sweep: threads the global value through `e` over all particles
/// in order and concatenates the emitted particles into a fresh tuple.
pub fn evolve_all<M: ParticleMethod>(
    pm: &M,
    state: &PmState<M::Global, M::Particle>,
) -> PmState<M::Global, M::Particle> {
    evolve_all_counted(pm, state, &mut CallCounts::default())
}

fn transition_step_counted<M: ParticleMethod>(
    pm: &M,
    state: &PmState<M::Global, M::Particle>,
    counts: &mut CallCounts,
) -> Result<PmState<M::Global, M::Particle>, EngineError> {
    let interacted = PmState::new(state.global.clone(), interact_all_counted(pm, state, counts)?);
    let evolved = evolve_all_counted(pm, &interacted, counts);
    counts.eg += 1;
    Ok(PmState::new(pm.evolve_global(&evolved.global), evolved.particles))
}

/// One full transition step: interaction sweep, evolution sweep, global
/// evolve.
pub fn transition_step<M: ParticleMethod>(
    pm: &M,
    state: &PmState<M::Global, M::Particle>,
) -> Result<PmState<M::Global, M::Particle>, EngineError> {
    transition_step_counted(pm, state, &mut CallCounts::default())
}

/// Advances the instance until the stopping condition holds or `max_steps`
/// transition steps were taken. The stop check precedes every step, so an
/// instance whose global value already satisfies it is final as-is.
pub fn run<M: ParticleMethod>(
    pm: &M,
    instance: PmState<M::Global, M::Particle>,
    max_steps: u64,
) -> Result<RunOutcome<M::Global, M::Particle>, EngineError> {
    let mut counters = StepCounters::default();
    counters.record(pm, &instance);
    let mut trace = vec![instance];
    let status = loop {
        let current = trace.last().expect("trace is never empty");
        counters.total.f += 1;
        if pm.stop(&current.global) {
            break RunStatus::Stopped {
                steps: trace.len() as u64 - 1,
            };
        }
        if trace.len() as u64 > max_steps {
            break RunStatus::CapExceeded;
        }
        let next = transition_step_counted(pm, current, &mut counters.total)?;
        counters.record(pm, &next);
        trace.push(next);
    };
    Ok(RunOutcome {
        status,
        trace,
        counters,
    })
}

/// Canonical one-line rendering of a state:
/// `g=(<fields>) p=[(<fields>);(<fields>);...]`.
///
/// Injective whenever the per-value renderings are, since field lists never
/// contain the delimiters.
pub fn render_state<M: ParticleMethod>(
    pm: &M,
    state: &PmState<M::Global, M::Particle>,
) -> String {
    let particles: Vec<String> = state
        .particles
        .iter()
        .map(|p| format!("({})", pm.render_particle(p)))
        .collect();
    format!(
        "g=({}) p=[{}]",
        pm.render_global(&state.global),
        particles.join(";")
    )
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunStatus::Stopped { steps } => write!(f, "stopped steps={steps}"),
            RunStatus::CapExceeded => write!(f, "cap-exceeded"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, CounterPm};

    /// Two-counter toy with a pull interact: `p_j` takes `p_k`'s value.
    struct PullPm;

    impl ParticleMethod for PullPm {
        type Global = u8;
        type Particle = u8;

        fn neighborhood(&self, _state: &PmState<u8, u8>, _j: usize) -> Vec<usize> {
            Vec::new()
        }

        fn stop(&self, _g: &u8) -> bool {
            true
        }

        fn interact(&self, _g: &u8, _pj: &u8, pk: &u8) -> (u8, u8) {
            (*pk, *pk)
        }

        fn evolve(&self, g: &u8, pj: &u8) -> (u8, Vec<u8>) {
            (*g, vec![*pj])
        }

        fn evolve_global(&self, g: &u8) -> u8 {
            *g
        }

        fn render_global(&self, g: &u8) -> String {
            g.to_string()
        }

        fn render_particle(&self, p: &u8) -> String {
            p.to_string()
        }
    }

    #[test]
    fn interact_pair_updates_only_the_named_positions() {
        let pm = PullPm;
        let state = PmState::new(0u8, vec![3u8, 7, 9]);
        let out = interact_pair(&pm, &state, 1, 3).expect("indices valid");
        assert_eq!(out, vec![9, 7, 9]);

        assert_eq!(
            interact_pair(&pm, &state, 1, 4),
            Err(EngineError::NeighborOutOfRange { j: 1, k: 4, len: 3 })
        );
        assert_eq!(
            interact_pair(&pm, &state, 2, 2),
            Err(EngineError::SelfPair { j: 2 })
        );
    }

    #[test]
    fn empty_neighborhood_means_no_interactions() {
        let pm = PullPm;
        let state = PmState::new(0u8, vec![3u8, 7, 9]);
        assert_eq!(interact_all(&pm, &state).expect("no errors"), state.particles);

        let single = PmState::new(0u8, vec![5u8]);
        assert_eq!(interact_all(&pm, &single).expect("no errors"), single.particles);
    }

    #[test]
    fn interaction_sweep_preserves_particle_count() {
        struct ChainPm;
        impl ParticleMethod for ChainPm {
            type Global = u8;
            type Particle = u8;
            fn neighborhood(&self, state: &PmState<u8, u8>, j: usize) -> Vec<usize> {
                (1..=state.len()).filter(|&k| k != j).collect()
            }
            fn stop(&self, _g: &u8) -> bool {
                false
            }
            fn interact(&self, _g: &u8, pj: &u8, pk: &u8) -> (u8, u8) {
                (pj.wrapping_add(*pk), *pk)
            }
            fn evolve(&self, g: &u8, pj: &u8) -> (u8, Vec<u8>) {
                (*g, vec![*pj])
            }
            fn evolve_global(&self, g: &u8) -> u8 {
                *g
            }
            fn render_global(&self, g: &u8) -> String {
                g.to_string()
            }
            fn render_particle(&self, p: &u8) -> String {
                p.to_string()
            }
        }
        for n in 0..6 {
            let state = PmState::new(0u8, (0..n).collect());
            let out = interact_all(&ChainPm, &state).expect("indices valid");
            assert_eq!(out.len(), n as usize);
        }
    }

    #[test]
    fn evolution_honors_creation_and_destruction() {
        struct SplitPm;
        impl ParticleMethod for SplitPm {
            type Global = u8;
            type Particle = u8;
            fn neighborhood(&self, _state: &PmState<u8, u8>, _j: usize) -> Vec<usize> {
                Vec::new()
            }
            fn stop(&self, _g: &u8) -> bool {
                false
            }
            fn interact(&self, _g: &u8, pj: &u8, pk: &u8) -> (u8, u8) {
                (*pj, *pk)
            }
            fn evolve(&self, g: &u8, pj: &u8) -> (u8, Vec<u8>) {
                match pj {
                    0 => (*g, vec![]),
                    p => (g + 1, vec![*p, p + 10]),
                }
            }
            fn evolve_global(&self, g: &u8) -> u8 {
                *g
            }
            fn render_global(&self, g: &u8) -> String {
                g.to_string()
            }
            fn render_particle(&self, p: &u8) -> String {
                p.to_string()
            }
        }
        let out = evolve_all(&SplitPm, &PmState::new(0u8, vec![1u8, 0, 2]));
        assert_eq!(out.particles, vec![1, 11, 2, 12]);
        assert_eq!(out.global, 2);

        let gone = evolve_all(&SplitPm, &PmState::new(0u8, vec![0u8, 0]));
        assert!(gone.particles.is_empty());
    }

    #[test]
    fn identity_evolution_is_a_fixed_point() {
        let pm = PullPm;
        let state = PmState::new(4u8, vec![1u8, 2]);
        assert_eq!(evolve_all(&pm, &state), state);
    }

    #[test]
    fn counter_transition_increments_modulo() {
        let pm = fixtures::counter3();
        let state = PmState::new(0u8, vec![]);
        let next = transition_step(&pm, &state).expect("no errors");
        assert_eq!(next, PmState::new(1u8, vec![]));
    }

    #[test]
    fn counter_run_stops_at_the_requested_value() {
        let pm = fixtures::counter3_stop();
        let out = run(&pm, PmState::new(0u8, vec![]), 100).expect("no errors");
        assert_eq!(out.status, RunStatus::Stopped { steps: 2 });
        assert_eq!(out.final_state(), &PmState::new(2u8, vec![]));
    }

    #[test]
    fn run_returns_the_instance_when_already_stopped() {
        let pm = CounterPm {
            modulus: 3,
            stop_value: Some(0),
        };
        let instance = PmState::new(0u8, vec![]);
        let out = run(&pm, instance.clone(), 100).expect("no errors");
        assert_eq!(out.status, RunStatus::Stopped { steps: 0 });
        assert_eq!(out.trace, vec![instance]);
    }

    #[test]
    fn run_reports_cap_exceeded() {
        let pm = fixtures::counter3();
        let out = run(&pm, PmState::new(0u8, vec![]), 5).expect("no errors");
        assert_eq!(out.status, RunStatus::CapExceeded);
        assert_eq!(out.trace.len(), 6);
    }

    #[test]
    fn rendering_is_injective_on_the_counter_domain() {
        let pm = fixtures::counter3();
        let lines: Vec<String> = (0..3)
            .map(|g| render_state(&pm, &PmState::new(g, vec![])))
            .collect();
        assert_eq!(lines[0], "g=(0) p=[]");
        for (i, a) in lines.iter().enumerate() {
            for b in lines.iter().skip(i + 1) {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn neighborhood_is_evaluated_once_per_particle_per_step() {
        let pm = fixtures::marker_shuttle();
        let instance = PmState::new(0u8, vec![1u8, 0, 0]);
        let out = run(&pm, instance, 6).expect("no errors");
        let rows = &out.counters.rows;
        for w in rows.windows(2) {
            let u_delta = w[1].calls.u - w[0].calls.u;
            assert_eq!(u_delta, w[0].particles as u64);
            let e_delta = w[1].calls.e - w[0].calls.e;
            assert_eq!(e_delta, w[0].particles as u64);
            assert_eq!(w[1].calls.eg - w[0].calls.eg, 1);
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let pm = fixtures::marker_shuttle();
        let instance = PmState::new(0u8, vec![1u8, 0, 0, 0]);
        let a = run(&pm, instance.clone(), 9).expect("no errors");
        let b = run(&pm, instance, 9).expect("no errors");
        let ra: Vec<String> = a.trace.iter().map(|s| render_state(&pm, s)).collect();
        let rb: Vec<String> = b.trace.iter().map(|s| render_state(&pm, s)).collect();
        assert_eq!(ra, rb);
    }
}
