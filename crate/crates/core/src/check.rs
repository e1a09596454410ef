//! Restriction checker: verifies the equational restrictions that the two
//! compilation targets and the halting decider rely on, by exhaustive
//! enumeration or seeded sampling over supplied value pools.
//!
//! Equational restrictions get pass/fail verdicts with replayable
//! counterexamples; growth restrictions are never passed or failed, only
//! measured, since no finite run can witness an asymptotic claim.

use crate::engine::{self, Domain, ParticleMethod, PmState, StepCounters};
use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

pub const DEFAULT_TUPLE_CAP: u64 = 10_000_000;
pub const DEFAULT_MAX_STATE_LEN: usize = 5;

/// How value tuples are drawn from the pools.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplerMode {
    /// Every combination, bounded by the tuple cap.
    Exhaustive,
    /// `samples` seeded draws; equal seeds give equal reports.
    Randomized { seed: u64, samples: u64 },
}

/// Value pools plus sampling parameters for one checker invocation.
///
/// The pools bound what the checker quantifies over; for compiled bundles
/// the construction modules provide pools covering the step-reachable
/// sub-domain (see their `checker_domain` functions).
#[derive(Clone, Debug)]
pub struct DomainSampler<G, P> {
    pub mode: SamplerMode,
    pub globals: Vec<G>,
    pub particles: Vec<P>,
    pub max_state_len: usize,
    pub tuple_cap: u64,
}

impl<G, P> DomainSampler<G, P> {
    pub fn exhaustive(globals: Vec<G>, particles: Vec<P>) -> Self {
        DomainSampler {
            mode: SamplerMode::Exhaustive,
            globals,
            particles,
            max_state_len: DEFAULT_MAX_STATE_LEN,
            tuple_cap: DEFAULT_TUPLE_CAP,
        }
    }

    pub fn randomized(seed: u64, samples: u64, globals: Vec<G>, particles: Vec<P>) -> Self {
        DomainSampler {
            mode: SamplerMode::Randomized { seed, samples },
            globals,
            particles,
            max_state_len: DEFAULT_MAX_STATE_LEN,
            tuple_cap: DEFAULT_TUPLE_CAP,
        }
    }

    pub fn with_max_state_len(mut self, len: usize) -> Self {
        self.max_state_len = len;
        self
    }

    pub fn with_tuple_cap(mut self, cap: u64) -> Self {
        self.tuple_cap = cap;
        self
    }
}

/// Verdict for a single restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// The stored counterexample was re-evaluated before being reported.
    Fail { counterexample: String },
    /// Growth restriction: reported, never passed or failed.
    Measured { summary: String },
    NotCheckable { reason: String },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Pass | Verdict::Measured { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionEntry {
    pub number: u8,
    pub name: &'static str,
    pub verdict: Verdict,
    pub tuples: u64,
}

/// Per-restriction verdicts for one profile (`t1`, `t2`, or `t3`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub profile: &'static str,
    pub entries: Vec<RestrictionEntry>,
}

impl RestrictionReport {
    pub fn entry(&self, number: u8) -> &RestrictionEntry {
        self.entries
            .iter()
            .find(|e| e.number == number)
            .expect("restriction numbers are fixed per profile")
    }

    pub fn tuples_evaluated(&self) -> u64 {
        self.entries.iter().map(|e| e.tuples).sum()
    }

    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.is_ok())
    }
}

enum Scan {
    Clean { tuples: u64 },
    Violated { tuples: u64, counterexample: String },
    NotCheckable { reason: String },
}

impl Scan {
    fn into_entry(self, number: u8, name: &'static str) -> RestrictionEntry {
        let (verdict, tuples) = match self {
            Scan::Clean { tuples } => (Verdict::Pass, tuples),
            Scan::Violated {
                tuples,
                counterexample,
            } => (Verdict::Fail { counterexample }, tuples),
            Scan::NotCheckable { reason } => (Verdict::NotCheckable { reason }, 0),
        };
        RestrictionEntry {
            number,
            name,
            verdict,
            tuples,
        }
    }
}

/// Evaluates `holds` over (global, particle^arity) tuples. On a violation
/// the equation is evaluated a second time on the stored tuple; a flapping
/// result is reported as nondeterministic behavior.
fn scan_tuples<G, P>(
    s: &DomainSampler<G, P>,
    arity: usize,
    mut holds: impl FnMut(&G, &[&P]) -> bool,
    mut show: impl FnMut(&G, &[&P]) -> String,
) -> Scan {
    if s.globals.is_empty() || s.particles.is_empty() {
        return Scan::NotCheckable {
            reason: "empty value pool".to_string(),
        };
    }
    let mut tuples = 0u64;
    let mut check = |g: &G, ps: &[&P], tuples: u64| -> Option<Scan> {
        if holds(g, ps) {
            return None;
        }
        let counterexample = if holds(g, ps) {
            format!("{} (second evaluation disagreed: behavior nondeterministic)", show(g, ps))
        } else {
            show(g, ps)
        };
        Some(Scan::Violated {
            tuples,
            counterexample,
        })
    };
    match s.mode {
        SamplerMode::Exhaustive => {
            let product = (s.particles.len() as u64)
                .checked_pow(arity as u32)
                .and_then(|n| n.checked_mul(s.globals.len() as u64));
            match product {
                Some(n) if n <= s.tuple_cap => {}
                _ => {
                    return Scan::NotCheckable {
                        reason: format!(
                            "exhaustive product exceeds the tuple cap of {}",
                            s.tuple_cap
                        ),
                    }
                }
            }
            let pool = s.particles.len() as u64;
            let combos = pool.pow(arity as u32);
            let mut ps: Vec<&P> = Vec::with_capacity(arity);
            for g in &s.globals {
                for combo in 0..combos {
                    ps.clear();
                    let mut rest = combo;
                    for _ in 0..arity {
                        ps.push(&s.particles[(rest % pool) as usize]);
                        rest /= pool;
                    }
                    tuples += 1;
                    if let Some(v) = check(g, &ps, tuples) {
                        return v;
                    }
                }
            }
            Scan::Clean { tuples }
        }
        SamplerMode::Randomized { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let g = &s.globals[(rng.next_u64() % s.globals.len() as u64) as usize];
                let ps: Vec<&P> = (0..arity)
                    .map(|_| &s.particles[(rng.next_u64() % s.particles.len() as u64) as usize])
                    .collect();
                tuples += 1;
                if let Some(v) = check(g, &ps, tuples) {
                    return v;
                }
            }
            Scan::Clean { tuples }
        }
    }
}

/// Builds the probe states for the neighborhood checks: uniform fills over
/// the particle pool plus single-position substitutions into a base fill,
/// paired with every global value and particle index.
fn scan_states<G: Clone, P: Clone>(
    s: &DomainSampler<G, P>,
    mut visit: impl FnMut(&PmState<G, P>, usize) -> Result<(), String>,
) -> Scan {
    if s.globals.is_empty() || s.particles.is_empty() {
        return Scan::NotCheckable {
            reason: "empty value pool".to_string(),
        };
    }
    let mut tuples = 0u64;
    match s.mode {
        SamplerMode::Exhaustive => {
            for len in 1..=s.max_state_len {
                for g in &s.globals {
                    let mut states = Vec::new();
                    for v in &s.particles {
                        states.push(vec![v.clone(); len]);
                    }
                    let base = vec![s.particles[0].clone(); len];
                    for pos in 0..len {
                        for v in &s.particles {
                            let mut p = base.clone();
                            p[pos] = v.clone();
                            states.push(p);
                        }
                    }
                    for particles in states {
                        let state = PmState::new(g.clone(), particles);
                        for j in 1..=len {
                            tuples += 1;
                            if tuples > s.tuple_cap {
                                return Scan::NotCheckable {
                                    reason: format!(
                                        "state probes exceed the tuple cap of {}",
                                        s.tuple_cap
                                    ),
                                };
                            }
                            if let Err(counterexample) = visit(&state, j) {
                                return Scan::Violated {
                                    tuples,
                                    counterexample,
                                };
                            }
                        }
                    }
                }
            }
            Scan::Clean { tuples }
        }
        SamplerMode::Randomized { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            for _ in 0..samples {
                let len = (rng.next_u64() % s.max_state_len as u64) as usize + 1;
                let g = s.globals[(rng.next_u64() % s.globals.len() as u64) as usize].clone();
                let particles: Vec<P> = (0..len)
                    .map(|_| s.particles[(rng.next_u64() % s.particles.len() as u64) as usize].clone())
                    .collect();
                let j = (rng.next_u64() % len as u64) as usize + 1;
                let state = PmState::new(g, particles);
                tuples += 1;
                if let Err(counterexample) = visit(&state, j) {
                    return Scan::Violated {
                        tuples,
                        counterexample,
                    };
                }
            }
            Scan::Clean { tuples }
        }
    }
}

fn show_state<M: ParticleMethod>(pm: &M, state: &PmState<M::Global, M::Particle>) -> String {
    engine::render_state(pm, state)
}

fn show_tuple<M: ParticleMethod>(pm: &M, g: &M::Global, ps: &[&M::Particle]) -> String {
    let parts: Vec<String> = ps.iter().map(|p| format!("({})", pm.render_particle(p))).collect();
    format!("g=({}) {}", pm.render_global(g), parts.join(" "))
}

fn finite_domains_entry<M: ParticleMethod>(pm: &M, number: u8) -> RestrictionEntry {
    let verdict = match (pm.global_domain(), pm.particle_domain()) {
        (Domain::Finite(_), Domain::Finite(_)) => Verdict::Pass,
        (g, p) => {
            let mut unbounded = Vec::new();
            if matches!(g, Domain::Infinite) {
                unbounded.push("global");
            }
            if matches!(p, Domain::Infinite) {
                unbounded.push("particle");
            }
            Verdict::Fail {
                counterexample: format!("{} value space declared unbounded", unbounded.join(" and ")),
            }
        }
    };
    RestrictionEntry {
        number,
        name: "finite-domains",
        verdict,
        tuples: 0,
    }
}

fn size_summary<M: ParticleMethod>(pm: &M, s: &DomainSampler<M::Global, M::Particle>) -> String {
    let max_g = s
        .globals
        .iter()
        .map(|g| 8 * pm.render_global(g).len() as u64)
        .max()
        .unwrap_or(0);
    let max_p = s
        .particles
        .iter()
        .map(|p| 8 * pm.render_particle(p).len() as u64)
        .max()
        .unwrap_or(0);
    format!("max-g-bits={max_g} max-p-bits={max_p} over the sampled pools; per-step curves via measure_resources")
}

fn evolve_order_independence<M: ParticleMethod>(
    pm: &M,
    s: &DomainSampler<M::Global, M::Particle>,
) -> Scan {
    scan_tuples(
        s,
        2,
        |g, ps| {
            let ab = pm.evolve(&pm.evolve(g, ps[0]).0, ps[1]).0;
            let ba = pm.evolve(&pm.evolve(g, ps[1]).0, ps[0]).0;
            ab == ba
        },
        |g, ps| show_tuple(pm, g, ps),
    )
}

fn evolve_previous_independence<M: ParticleMethod>(
    pm: &M,
    s: &DomainSampler<M::Global, M::Particle>,
) -> Scan {
    scan_tuples(
        s,
        2,
        |g, ps| {
            let direct = pm.evolve(g, ps[0]).1;
            let after = pm.evolve(&pm.evolve(g, ps[1]).0, ps[0]).1;
            direct == after
        },
        |g, ps| show_tuple(pm, g, ps),
    )
}

/// Checks the restriction set of construction t1: empty neighborhood,
/// identity interaction, and order/previous independence of the evolve
/// function; particle and global growth is measured, not judged.
pub fn check_t1<M: ParticleMethod>(
    pm: &M,
    s: &DomainSampler<M::Global, M::Particle>,
) -> RestrictionReport {
    let mut entries = Vec::new();

    entries.push(
        scan_states(s, |state, j| {
            if pm.neighborhood(state, j).is_empty() {
                Ok(())
            } else {
                Err(format!("u nonempty at j={j} in {}", show_state(pm, state)))
            }
        })
        .into_entry(1, "empty-neighborhood"),
    );

    entries.push(
        scan_tuples(
            s,
            2,
            |g, ps| pm.interact(g, ps[0], ps[1]) == (ps[0].clone(), ps[1].clone()),
            |g, ps| show_tuple(pm, g, ps),
        )
        .into_entry(2, "identity-interact"),
    );

    entries.push(evolve_order_independence(pm, s).into_entry(3, "evolve-order-independence"));
    entries.push(evolve_previous_independence(pm, s).into_entry(4, "evolve-previous-independence"));

    entries.push(RestrictionEntry {
        number: 5,
        name: "resource-growth",
        verdict: Verdict::Measured {
            summary: size_summary(pm, s),
        },
        tuples: 0,
    });

    RestrictionReport {
        profile: "t1",
        entries,
    }
}

/// Checks the restriction set of construction t2: finite declared domains,
/// pull-only interaction, order/previous independence of both interaction
/// and evolution, and a neighborhood that depends only on the index and the
/// particle count; call and size growth is measured, not judged.
pub fn check_t2<M: ParticleMethod>(
    pm: &M,
    s: &DomainSampler<M::Global, M::Particle>,
) -> RestrictionReport {
    let mut entries = Vec::new();

    entries.push(finite_domains_entry(pm, 1));

    entries.push(
        scan_tuples(
            s,
            2,
            |g, ps| pm.interact(g, ps[0], ps[1]).1 == *ps[1],
            |g, ps| show_tuple(pm, g, ps),
        )
        .into_entry(2, "pull-interaction"),
    );

    let pull = |g: &M::Global, pj: &M::Particle, pk: &M::Particle| pm.interact(g, pj, pk).0;

    entries.push(
        scan_tuples(
            s,
            3,
            |g, ps| {
                let altered = pull(g, ps[1], ps[2]);
                pull(g, ps[0], &altered) == pull(g, ps[0], ps[1])
            },
            |g, ps| show_tuple(pm, g, ps),
        )
        .into_entry(3, "interact-previous-independence"),
    );

    entries.push(
        scan_tuples(
            s,
            3,
            |g, ps| {
                let kj = pull(g, &pull(g, ps[0], ps[1]), ps[2]);
                let jk = pull(g, &pull(g, ps[0], ps[2]), ps[1]);
                kj == jk
            },
            |g, ps| show_tuple(pm, g, ps),
        )
        .into_entry(4, "interact-order-independence"),
    );

    entries.push(evolve_order_independence(pm, s).into_entry(5, "evolve-order-independence"));
    entries.push(evolve_previous_independence(pm, s).into_entry(6, "evolve-previous-independence"));

    // Restriction 7: the neighborhood admits an index-only form. The
    // reference per (length, j) comes from a base state; every probe with
    // the same length must agree, and the result must be an ascending
    // subsequence of 1..=length.
    let mut references: Vec<Vec<Vec<usize>>> = Vec::new();
    if !s.globals.is_empty() && !s.particles.is_empty() {
        for len in 1..=s.max_state_len {
            let base = PmState::new(s.globals[0].clone(), vec![s.particles[0].clone(); len]);
            references.push((1..=len).map(|j| pm.neighborhood(&base, j)).collect());
        }
    }
    entries.push(
        scan_states(s, |state, j| {
            let u = pm.neighborhood(state, j);
            let ascending_in_range = u.windows(2).all(|w| w[0] < w[1])
                && u.iter().all(|&k| k >= 1 && k <= state.len());
            if !ascending_in_range {
                return Err(format!(
                    "u at j={j} is not an ascending index subsequence in {}",
                    show_state(pm, state)
                ));
            }
            let expected = &references[state.len() - 1][j - 1];
            if u != *expected {
                return Err(format!(
                    "u at j={j} depends on more than (j, particle count) in {}",
                    show_state(pm, state)
                ));
            }
            Ok(())
        })
        .into_entry(7, "neighborhood-form"),
    );

    // Restriction 8: a single prior pairwise interaction anywhere in the
    // tuple leaves every neighborhood unchanged.
    entries.push(
        scan_states(s, |state, j| {
            let len = state.len();
            if len < 2 {
                return Ok(());
            }
            let before = pm.neighborhood(state, j);
            for k1 in 1..=len {
                for k2 in 1..=len {
                    if k1 == k2 {
                        continue;
                    }
                    let interacted = engine::interact_pair(pm, state, k1, k2)
                        .expect("indices are in range by construction");
                    let altered = PmState::new(state.global.clone(), interacted);
                    if pm.neighborhood(&altered, j) != before {
                        return Err(format!(
                            "u at j={j} changed after interacting ({k1},{k2}) in {}",
                            show_state(pm, state)
                        ));
                    }
                }
            }
            Ok(())
        })
        .into_entry(8, "neighborhood-interaction-independence"),
    );

    entries.push(RestrictionEntry {
        number: 9,
        name: "constant-time",
        verdict: Verdict::Measured {
            summary: "per-step behavior call counts via measure_resources; the neighborhood \
                      lookup is exempt from the constant bound (its result names indices)"
                .to_string(),
        },
        tuples: 0,
    });
    entries.push(RestrictionEntry {
        number: 10,
        name: "constant-space",
        verdict: Verdict::Measured {
            summary: size_summary(pm, s),
        },
        tuples: 0,
    });

    RestrictionReport {
        profile: "t2",
        entries,
    }
}

/// Checks the decidability restriction set: finite declared domains, total
/// behaviors, and an evolve function that never emits more than one
/// particle.
pub fn check_t3<M: ParticleMethod>(
    pm: &M,
    s: &DomainSampler<M::Global, M::Particle>,
) -> RestrictionReport {
    let mut entries = Vec::new();
    entries.push(finite_domains_entry(pm, 1));

    // Behaviors are total functions of their arguments; there is nothing to
    // run, so this holds by construction.
    entries.push(RestrictionEntry {
        number: 2,
        name: "total-behaviors",
        verdict: Verdict::Pass,
        tuples: 0,
    });

    // Prefer the declared enumerations; fall back to the sampler pools when
    // a domain is unbounded.
    let scan = match (pm.global_domain(), pm.particle_domain()) {
        (Domain::Finite(globals), Domain::Finite(particles)) => {
            let declared = DomainSampler::exhaustive(globals, particles).with_tuple_cap(s.tuple_cap);
            scan_tuples(
                &declared,
                1,
                |g, ps| pm.evolve(g, ps[0]).1.len() <= 1,
                |g, ps| show_tuple(pm, g, ps),
            )
        }
        _ => scan_tuples(
            s,
            1,
            |g, ps| pm.evolve(g, ps[0]).1.len() <= 1,
            |g, ps| show_tuple(pm, g, ps),
        ),
    };
    entries.push(scan.into_entry(3, "non-producing-evolve"));

    RestrictionReport {
        profile: "t3",
        entries,
    }
}

/// Runs the instance and returns the per-step resource table: particle
/// count, rendered sizes of the global value and every particle, and
/// cumulative behavior call counts.
pub fn measure_resources<M: ParticleMethod>(
    pm: &M,
    instance: PmState<M::Global, M::Particle>,
    max_steps: u64,
) -> Result<StepCounters, engine::EngineError> {
    engine::run(pm, instance, max_steps).map(|outcome| outcome.counters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::t1::{self, compile_t1};
    use crate::t2::{self, compile_t2};

    fn m0() -> crate::turing::TuringMachine {
        fixtures::seek_blank()
    }

    #[test]
    fn t1_bundle_passes_its_own_restrictions() {
        let tm = m0();
        let pm = compile_t1(&tm).expect("valid machine");
        let (globals, particles) = t1::checker_domain(&tm, 4);
        let report = check_t1(&pm, &DomainSampler::exhaustive(globals, particles));
        for n in 1..=4 {
            assert_eq!(report.entry(n).verdict, Verdict::Pass, "restriction {n}");
        }
        assert!(matches!(report.entry(5).verdict, Verdict::Measured { .. }));
    }

    #[test]
    fn t2_bundle_fails_the_empty_neighborhood_restriction() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let (globals, particles) = t2::checker_domain(&tm);
        let report = check_t1(&pm, &DomainSampler::exhaustive(globals, particles).with_max_state_len(3));
        assert!(matches!(report.entry(1).verdict, Verdict::Fail { .. }));
    }

    #[test]
    fn t2_bundle_passes_its_own_restrictions() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let (globals, particles) = t2::checker_domain(&tm);
        // Smaller bounds here; the acceptance suite runs the full domain.
        let s = DomainSampler::randomized(7, 20_000, globals, particles).with_max_state_len(4);
        let report = check_t2(&pm, &s);
        for n in 1..=8 {
            assert_eq!(report.entry(n).verdict, Verdict::Pass, "restriction {n}");
        }
    }

    #[test]
    fn t1_bundle_under_the_t2_profile_fails_only_finiteness() {
        let tm = m0();
        let pm = compile_t1(&tm).expect("valid machine");
        let (globals, particles) = t1::checker_domain(&tm, 4);
        let report = check_t2(&pm, &DomainSampler::exhaustive(globals, particles).with_max_state_len(3));
        assert!(matches!(report.entry(1).verdict, Verdict::Fail { .. }));
        for n in 2..=8 {
            assert_eq!(report.entry(n).verdict, Verdict::Pass, "restriction {n}");
        }
    }

    #[test]
    fn push_style_interaction_is_caught() {
        struct PushPm;
        impl ParticleMethod for PushPm {
            type Global = u8;
            type Particle = u8;
            fn neighborhood(&self, _s: &PmState<u8, u8>, _j: usize) -> Vec<usize> {
                Vec::new()
            }
            fn stop(&self, _g: &u8) -> bool {
                true
            }
            fn interact(&self, _g: &u8, pj: &u8, pk: &u8) -> (u8, u8) {
                (*pj, pk.wrapping_add(1))
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
        let s = DomainSampler::exhaustive(vec![0u8], vec![0u8, 1]);
        let t2_report = check_t2(&PushPm, &s);
        assert!(matches!(t2_report.entry(2).verdict, Verdict::Fail { .. }));
        let t1_report = check_t1(&PushPm, &s);
        assert!(matches!(t1_report.entry(2).verdict, Verdict::Fail { .. }));
    }

    #[test]
    fn t3_profile_clears_the_counter_and_flags_both_compilers() {
        let counter = fixtures::counter3();
        let s = DomainSampler::exhaustive(vec![0u8, 1, 2], vec![()]);
        let report = check_t3(&counter, &s);
        assert!(report.all_ok(), "{report:?}");

        let tm = m0();
        let pm2 = compile_t2(&tm).expect("valid machine");
        let (globals, particles) = t2::checker_domain(&tm);
        let report = check_t3(&pm2, &DomainSampler::exhaustive(globals, particles));
        assert_eq!(report.entry(1).verdict, Verdict::Pass);
        let Verdict::Fail { counterexample } = &report.entry(3).verdict else {
            panic!("fresh-cell creation must be caught");
        };
        assert!(counterexample.contains("g=("));

        let pm1 = compile_t1(&tm).expect("valid machine");
        let (globals, particles) = t1::checker_domain(&tm, 4);
        let report = check_t3(&pm1, &DomainSampler::exhaustive(globals, particles));
        assert!(matches!(report.entry(1).verdict, Verdict::Fail { .. }));
        assert!(matches!(report.entry(3).verdict, Verdict::Fail { .. }));
    }

    #[test]
    fn equal_seeds_give_identical_reports() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let (globals, particles) = t2::checker_domain(&tm);
        let a = check_t2(
            &pm,
            &DomainSampler::randomized(3, 500, globals.clone(), particles.clone()),
        );
        let b = check_t2(&pm, &DomainSampler::randomized(3, 500, globals, particles));
        assert_eq!(a, b);
    }

    #[test]
    fn exhaustive_mode_respects_the_tuple_cap() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let (globals, particles) = t2::checker_domain(&tm);
        let s = DomainSampler::exhaustive(globals, particles).with_tuple_cap(100);
        let report = check_t2(&pm, &s);
        assert!(matches!(
            report.entry(3).verdict,
            Verdict::NotCheckable { .. }
        ));
    }

    #[test]
    fn resource_measurement_reports_constant_t2_sizes() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let input = tm.input_from_str("aaaa").expect("valid input");
        let machine_cfg = tm.start_config(&input).expect("valid input");
        let state = t2::translate(&machine_cfg).expect("translatable");
        let counters = measure_resources(&pm, state, 100).expect("no engine errors");
        let grows = counters
            .rows
            .windows(2)
            .any(|w| w[1].max_particle_bits > w[0].max_particle_bits + 8);
        assert!(!grows, "particle renderings must stay within a constant band");
    }

    #[test]
    fn resource_measurement_ties_t1_growth_to_index_widths() {
        let tm = m0();
        let pm = compile_t1(&tm).expect("valid machine");
        let input = tm.input_from_str(&"a".repeat(30)).expect("valid input");
        let machine_cfg = tm.start_config(&input).expect("valid input");
        let instance = t1::translate(&machine_cfg);
        let counters = measure_resources(&pm, instance.clone(), 1000).expect("no engine errors");
        let trace = crate::engine::run(&pm, instance, 1000)
            .expect("no engine errors")
            .trace;
        // The global rendering may only grow on steps where the decimal
        // width of the head index or the cell count grows, or on the final
        // step where the state name changes.
        let width = |n: usize| n.to_string().len() as u64;
        let index_width = |g: &crate::t1::T1Global| width(g.head) + width(g.cells);
        for (w, states) in counters.rows.windows(2).zip(trace.windows(2)) {
            if w[1].global_bits > w[0].global_bits {
                let widened = index_width(&states[1].global) > index_width(&states[0].global);
                let accepting = pm.stop(&states[1].global);
                assert!(widened || accepting, "unexplained growth at t={}", w[1].t);
            }
        }
    }

    #[test]
    fn resource_measurement_is_flat_for_the_counter() {
        let pm = fixtures::counter3();
        let counters = measure_resources(&pm, PmState::new(0u8, vec![]), 50)
            .expect("no engine errors");
        assert!(counters
            .rows
            .iter()
            .all(|r| r.global_bits == counters.rows[0].global_bits));
        assert!(counters.rows.iter().all(|r| r.max_particle_bits == 0));
    }
}
