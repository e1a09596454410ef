//! Construction t2: compiles a Turing machine into a particle method with
//! constant-size particles and a two-field global value.
//!
//! No particle knows its index. The head is a marker walking along the
//! particle chain: the particle with `head = Here` is the current head
//! position and the particle with `head = Prev` is where the head was one
//! step ago, adjacent on the side recorded in the head particle's
//! `last_move`. Interactions between neighbors pass the marker: the head
//! particle raises `handed_off` when some neighbor will take the marker, and
//! the receiving particle raises `gets_head` and accumulates the arrival
//! direction in `next_move`. The evolve function then rewrites the marks,
//! applies the transition rule on the head particle, and creates a fresh
//! blank-bearing head particle when the marker could not be handed to any
//! neighbor (the head ran off the right end). `max` accumulators keep both
//! phases order-independent.

use crate::cosim::{CosimError, CosimReport, Divergence};
use crate::engine::{self, Domain, ParticleMethod, PmState};
use crate::turing::{
    ConfigError, Configuration, Dir, InvalidMachine, StateId, Symbol, TuringMachine,
};
use thiserror::Error;

/// Head marker value carried by each particle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeadMark {
    /// The head was here one step ago.
    Prev,
    /// No head information.
    Plain,
    /// The head is here now.
    Here,
}

impl HeadMark {
    pub fn value(self) -> i8 {
        match self {
            HeadMark::Prev => -1,
            HeadMark::Plain => 0,
            HeadMark::Here => 1,
        }
    }
}

/// One tape cell: symbol plus the head-walk bookkeeping fields.
///
/// At step boundaries on translated runs, `gets_head` and `handed_off` are
/// clear and `next_move` is `Left` on every particle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct T2Particle {
    pub symbol: Symbol,
    pub head: HeadMark,
    /// Pending-head flag: this particle holds the head after the next evolve.
    pub gets_head: bool,
    /// Direction of the move that brought the head here (meaningful on the
    /// head particle: the previous position sits on the opposite side).
    pub last_move: Dir,
    /// Accumulator for the direction of the incoming head.
    pub next_move: Dir,
    /// Raised on the head particle once a neighbor agreed to take the head.
    pub handed_off: bool,
}

impl T2Particle {
    /// A plain cell with cleared markers, as the translation lays them out.
    pub fn plain(symbol: Symbol) -> T2Particle {
        T2Particle {
            symbol,
            head: HeadMark::Plain,
            gets_head: false,
            last_move: Dir::Left,
            next_move: Dir::Left,
            handed_off: false,
        }
    }
}

/// Global value: machine state plus the state accumulator, which is the
/// start state at step boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct T2Global {
    pub state: StateId,
    pub state_acc: StateId,
}

/// The compiled bundle; holds the validated machine it emulates.
#[derive(Clone, Debug)]
pub struct T2Pm {
    tm: TuringMachine,
}

impl T2Pm {
    pub fn machine(&self) -> &TuringMachine {
        &self.tm
    }

    fn rule(&self, state: StateId, symbol: Symbol) -> &crate::turing::Rule {
        self.tm
            .rule(state, symbol)
            .expect("compiled machines have a total transition table")
    }
}

/// Validates the machine and wraps it as a particle method.
pub fn compile_t2(tm: &TuringMachine) -> Result<T2Pm, InvalidMachine> {
    let report = tm.validate();
    if !report.is_ok() {
        return Err(InvalidMachine(report));
    }
    Ok(T2Pm { tm: tm.clone() })
}

impl ParticleMethod for T2Pm {
    type Global = T2Global;
    type Particle = T2Particle;

    fn neighborhood(&self, state: &PmState<T2Global, T2Particle>, j: usize) -> Vec<usize> {
        [j.wrapping_sub(1), j + 1]
            .into_iter()
            .filter(|&k| k >= 1 && k <= state.len())
            .collect()
    }

    fn stop(&self, g: &T2Global) -> bool {
        self.tm.is_halting(g.state)
    }

    fn interact(
        &self,
        g: &T2Global,
        pj: &T2Particle,
        pk: &T2Particle,
    ) -> (T2Particle, T2Particle) {
        // The head particle's rule decides whether the head moves on (toward
        // the plain side) or back (toward the previous position).
        if pk.head == HeadMark::Here {
            let dir = self.rule(g.state, pk.symbol).dir;
            let takes = match pj.head {
                HeadMark::Prev => dir != pk.last_move,
                HeadMark::Plain => dir == pk.last_move,
                HeadMark::Here => false,
            };
            if takes {
                let receiver = T2Particle {
                    gets_head: true,
                    next_move: pj.next_move.max(dir),
                    ..*pj
                };
                return (receiver, *pk);
            }
        }
        if pj.head == HeadMark::Here {
            let dir = self.rule(g.state, pj.symbol).dir;
            let gives = match pk.head {
                HeadMark::Prev => dir != pj.last_move,
                HeadMark::Plain => dir == pj.last_move,
                HeadMark::Here => false,
            };
            if gives {
                let giver = T2Particle {
                    handed_off: true,
                    ..*pj
                };
                return (giver, *pk);
            }
        }
        (*pj, *pk)
    }

    fn evolve(&self, g: &T2Global, pj: &T2Particle) -> (T2Global, Vec<T2Particle>) {
        if pj.gets_head {
            let promoted = T2Particle {
                symbol: pj.symbol,
                head: HeadMark::Here,
                gets_head: false,
                last_move: pj.next_move,
                next_move: Dir::Left,
                handed_off: false,
            };
            return (*g, vec![promoted]);
        }
        if pj.head == HeadMark::Prev {
            return (*g, vec![T2Particle::plain(pj.symbol)]);
        }
        if pj.head == HeadMark::Here {
            let rule = self.rule(g.state, pj.symbol);
            let accumulated = T2Global {
                state: g.state,
                state_acc: g.state_acc.max(rule.next),
            };
            let demoted = T2Particle {
                symbol: rule.write,
                head: HeadMark::Prev,
                gets_head: false,
                last_move: Dir::Left,
                next_move: Dir::Left,
                handed_off: false,
            };
            if pj.handed_off {
                return (accumulated, vec![demoted]);
            }
            // No neighbor took the head: it moves onto a fresh blank cell.
            let fresh = T2Particle {
                symbol: Symbol::BLANK,
                head: HeadMark::Here,
                gets_head: false,
                last_move: rule.dir,
                next_move: Dir::Left,
                handed_off: false,
            };
            return (accumulated, vec![demoted, fresh]);
        }
        (*g, vec![*pj])
    }

    fn evolve_global(&self, g: &T2Global) -> T2Global {
        T2Global {
            state: g.state_acc,
            state_acc: StateId::from_rank(0),
        }
    }

    fn render_global(&self, g: &T2Global) -> String {
        format!(
            "{},{}",
            self.tm.state_name(g.state),
            self.tm.state_name(g.state_acc)
        )
    }

    fn render_particle(&self, p: &T2Particle) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.tm.symbol_token(p.symbol),
            p.head.value(),
            p.gets_head as u8,
            p.last_move,
            p.next_move,
            p.handed_off as u8
        )
    }

    fn global_domain(&self) -> Domain<T2Global> {
        let mut values = Vec::new();
        for state in self.tm.states() {
            for state_acc in self.tm.states() {
                values.push(T2Global { state, state_acc });
            }
        }
        Domain::Finite(values)
    }

    fn particle_domain(&self) -> Domain<T2Particle> {
        Domain::Finite(particle_values(&self.tm))
    }

    fn may_destroy_particles(&self) -> bool {
        false
    }
}

/// Every particle value over the machine's tape alphabet.
fn particle_values(tm: &TuringMachine) -> Vec<T2Particle> {
    let mut values = Vec::new();
    for symbol in tm.tape_symbols() {
        for head in [HeadMark::Prev, HeadMark::Plain, HeadMark::Here] {
            for gets_head in [false, true] {
                for last_move in [Dir::Left, Dir::Right] {
                    for next_move in [Dir::Left, Dir::Right] {
                        for handed_off in [false, true] {
                            values.push(T2Particle {
                                symbol,
                                head,
                                gets_head,
                                last_move,
                                next_move,
                                handed_off,
                            });
                        }
                    }
                }
            }
        }
    }
    values
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum T2TranslationError {
    /// The head sits beyond the materialized tape prefix; no particle could
    /// carry the marker.
    #[error("untranslatable head position {head} on a prefix of length {prefix}")]
    UntranslatableHead { head: usize, prefix: usize },
    /// A back-translation needs exactly one head marker.
    #[error("{found} particles carry the head marker, expected exactly 1")]
    HeadMarkerCount { found: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Translates a configuration into the emulating state: one particle per
/// prefix cell, the head marker on cell `n`, and the previous-position
/// marker on cell `n+1` as if the head had just moved left onto `n`.
///
/// When the head sits on the last prefix cell the previous-position marker
/// falls outside the prefix and is simply absent, matching the layout of a
/// one-cell start configuration. Heads beyond the prefix are rejected.
pub fn translate(c: &Configuration) -> Result<PmState<T2Global, T2Particle>, T2TranslationError> {
    let n = c.head();
    let prefix = c.tape().len();
    if n > prefix {
        return Err(T2TranslationError::UntranslatableHead { head: n, prefix });
    }
    let particles = c
        .tape()
        .iter()
        .enumerate()
        .map(|(i, &symbol)| {
            let head = if i + 1 == n {
                HeadMark::Here
            } else if i == n {
                HeadMark::Prev
            } else {
                HeadMark::Plain
            };
            T2Particle {
                head,
                ..T2Particle::plain(symbol)
            }
        })
        .collect();
    Ok(PmState::new(
        T2Global {
            state: c.state(),
            state_acc: StateId::from_rank(0),
        },
        particles,
    ))
}

/// Reads a configuration back out of an emulating state: the tape is the
/// symbol sequence and the head position is the unique head-marked particle.
pub fn back_translate(
    state: &PmState<T2Global, T2Particle>,
) -> Result<Configuration, T2TranslationError> {
    let marked: Vec<usize> = state
        .particles
        .iter()
        .enumerate()
        .filter(|(_, p)| p.head == HeadMark::Here)
        .map(|(i, _)| i + 1)
        .collect();
    if marked.len() != 1 {
        return Err(T2TranslationError::HeadMarkerCount {
            found: marked.len(),
        });
    }
    let tape = state.particles.iter().map(|p| p.symbol).collect();
    Ok(Configuration::new(state.global.state, tape, marked[0])?)
}

/// Per-step criteria for construction t2: back-translation equality, marker
/// layout (one head at the machine's position, the previous marker adjacent
/// on the recorded side, everything else plain), cleared per-step flags, a
/// reset state accumulator, and agreement of the two stopping conditions.
fn t2_criteria<M>(
    pm: &M,
    tm: &TuringMachine,
    machine_cfg: &Configuration,
    state: &PmState<T2Global, T2Particle>,
    step: u64,
) -> Option<Divergence>
where
    M: ParticleMethod<Global = T2Global, Particle = T2Particle>,
{
    let diverged = |criterion: &'static str, detail: String| {
        Some(Divergence {
            step,
            criterion,
            detail,
        })
    };
    match back_translate(state) {
        Err(e @ T2TranslationError::HeadMarkerCount { .. }) => {
            return diverged("head-marker", e.to_string())
        }
        Err(e) => return diverged("back-translation", e.to_string()),
        Ok(back) => {
            if back != *machine_cfg {
                return diverged(
                    "back-translation",
                    format!(
                        "back-translation {} != machine {}",
                        tm.render_config(&back),
                        tm.render_config(machine_cfg)
                    ),
                );
            }
        }
    }
    let n = machine_cfg.head();
    if n > state.len() || state.particles[n - 1].head != HeadMark::Here {
        return diverged("head-marker", format!("no head marker at position {n}"));
    }
    let prev_at = n as isize - state.particles[n - 1].last_move.offset();
    for (i, p) in state.particles.iter().enumerate() {
        let position = (i + 1) as isize;
        let expected = if position == n as isize {
            HeadMark::Here
        } else if position == prev_at {
            HeadMark::Prev
        } else {
            HeadMark::Plain
        };
        if p.head != expected {
            return diverged(
                "prev-marker",
                format!(
                    "particle {} carries mark {} where {} was expected",
                    i + 1,
                    p.head.value(),
                    expected.value()
                ),
            );
        }
    }
    for (i, p) in state.particles.iter().enumerate() {
        if p.gets_head || p.next_move != Dir::Left || p.handed_off {
            return diverged(
                "flag-reset",
                format!("particle {} has unreset step flags", i + 1),
            );
        }
    }
    if state.global.state_acc != StateId::from_rank(0) {
        return diverged(
            "state-acc-reset",
            format!(
                "state accumulator is {}",
                tm.state_name(state.global.state_acc)
            ),
        );
    }
    let tm_halted = tm.is_halting(machine_cfg.state());
    if pm.stop(&state.global) != tm_halted {
        return diverged(
            "stop-equiv",
            format!(
                "stop condition {} vs machine halted {}",
                pm.stop(&state.global),
                tm_halted
            ),
        );
    }
    None
}

/// Runs the machine and an arbitrary bundle over t2's value spaces in lock
/// step, checking every per-step criterion.
pub fn cosim_t2_with<M>(
    pm: &M,
    tm: &TuringMachine,
    input: &[Symbol],
    max_steps: u64,
) -> Result<CosimReport<T2Global, T2Particle>, CosimError>
where
    M: ParticleMethod<Global = T2Global, Particle = T2Particle>,
{
    let mut machine_cfg = tm.start_config(input)?;
    let mut state = translate(&machine_cfg).expect("start configurations always translate");
    let mut report = CosimReport {
        tm_trace: vec![machine_cfg.clone()],
        pm_trace: vec![state.clone()],
        halted_at: None,
        divergence: None,
    };
    let mut step: u64 = 1;
    loop {
        if let Some(d) = t2_criteria(pm, tm, &machine_cfg, &state, step) {
            report.divergence = Some(d);
            break;
        }
        if tm.is_halting(machine_cfg.state()) {
            report.halted_at = Some(step);
            break;
        }
        if step > max_steps {
            break;
        }
        machine_cfg = tm.step(&machine_cfg);
        state = engine::transition_step(pm, &state)?;
        report.tm_trace.push(machine_cfg.clone());
        report.pm_trace.push(state.clone());
        step += 1;
    }
    Ok(report)
}

/// Compiles the machine and co-simulates it against itself from the start
/// configuration for the given input.
pub fn cosim_t2(
    tm: &TuringMachine,
    input: &[Symbol],
    max_steps: u64,
) -> Result<CosimReport<T2Global, T2Particle>, CosimError> {
    let pm = compile_t2(tm)?;
    cosim_t2_with(&pm, tm, input, max_steps)
}

/// Enumerates the sub-domain used by the restriction checker: globals with
/// the accumulator at its boundary value and the full particle space.
pub fn checker_domain(tm: &TuringMachine) -> (Vec<T2Global>, Vec<T2Particle>) {
    let globals = tm
        .states()
        .map(|state| T2Global {
            state,
            state_acc: StateId::from_rank(0),
        })
        .collect();
    (globals, particle_values(tm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{interact_all, interact_pair, transition_step};
    use crate::fixtures;

    fn m0() -> TuringMachine {
        fixtures::seek_blank()
    }

    fn state_of(tm: &TuringMachine, name: &str) -> StateId {
        tm.state_by_name(name).expect("state exists")
    }

    fn part(
        symbol: Symbol,
        head: HeadMark,
        gets_head: bool,
        last_move: Dir,
        next_move: Dir,
        handed_off: bool,
    ) -> T2Particle {
        T2Particle {
            symbol,
            head,
            gets_head,
            last_move,
            next_move,
            handed_off,
        }
    }

    fn start_state(tm: &TuringMachine, input: &str) -> (Configuration, PmState<T2Global, T2Particle>) {
        let syms = tm.input_from_str(input).expect("valid input");
        let machine_cfg = tm.start_config(&syms).expect("valid input");
        let state = translate(&machine_cfg).expect("translatable");
        (machine_cfg, state)
    }

    #[test]
    fn translation_lays_out_the_markers() {
        let tm = m0();
        let (_, state) = start_state(&tm, "a");
        let a = tm.symbol_by_token("a").unwrap();
        assert_eq!(
            state.global,
            T2Global {
                state: state_of(&tm, "s"),
                state_acc: state_of(&tm, "s"),
            }
        );
        assert_eq!(
            state.particles,
            vec![
                part(Symbol::END_MARKER, HeadMark::Here, false, Dir::Left, Dir::Left, false),
                part(a, HeadMark::Prev, false, Dir::Left, Dir::Left, false),
            ]
        );

        // Round trip on the start layout.
        let (machine_cfg, state) = start_state(&tm, "a");
        assert_eq!(back_translate(&state).expect("one marker"), machine_cfg);
    }

    #[test]
    fn translation_places_the_previous_marker_right_of_the_head() {
        let tm = fixtures::even_palindrome();
        let a = tm.symbol_by_token("a").unwrap();
        let b = tm.symbol_by_token("b").unwrap();
        let c = Configuration::new(state_of(&tm, "rd"), vec![Symbol::END_MARKER, a, b], 2)
            .expect("well-formed");
        let state = translate(&c).expect("translatable");
        assert_eq!(state.particles[0].head, HeadMark::Plain);
        assert_eq!(state.particles[1].head, HeadMark::Here);
        assert_eq!(state.particles[2].head, HeadMark::Prev);

        let beyond = Configuration::new(state_of(&tm, "rd"), vec![Symbol::END_MARKER, a], 3)
            .expect("well-formed");
        assert_eq!(
            translate(&beyond),
            Err(T2TranslationError::UntranslatableHead { head: 3, prefix: 2 })
        );
    }

    #[test]
    fn back_translation_requires_exactly_one_head_marker() {
        let tm = m0();
        let a = tm.symbol_by_token("a").unwrap();
        let g = T2Global {
            state: state_of(&tm, "s"),
            state_acc: state_of(&tm, "s"),
        };

        let none = PmState::new(g, vec![T2Particle::plain(Symbol::END_MARKER)]);
        assert_eq!(
            back_translate(&none),
            Err(T2TranslationError::HeadMarkerCount { found: 0 })
        );

        let two = PmState::new(
            g,
            vec![
                part(Symbol::END_MARKER, HeadMark::Here, false, Dir::Left, Dir::Left, false),
                part(a, HeadMark::Here, false, Dir::Left, Dir::Left, false),
            ],
        );
        assert_eq!(
            back_translate(&two),
            Err(T2TranslationError::HeadMarkerCount { found: 2 })
        );

        // A post-step marker layout reads back with the head on the second
        // cell.
        let after = PmState::new(
            g,
            vec![
                part(Symbol::END_MARKER, HeadMark::Prev, false, Dir::Left, Dir::Left, false),
                part(a, HeadMark::Here, false, Dir::Right, Dir::Left, false),
            ],
        );
        let c = back_translate(&after).expect("one marker");
        assert_eq!(c.head(), 2);
        assert_eq!(c.state(), state_of(&tm, "s"));
    }

    #[test]
    fn interaction_sweep_passes_the_marker() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let (_, state) = start_state(&tm, "a");
        let a = tm.symbol_by_token("a").unwrap();
        let out = interact_all(&pm, &state).expect("no errors");
        // The head particle handed off; its right neighbor will take the
        // head with arrival direction Right.
        assert_eq!(
            out,
            vec![
                part(Symbol::END_MARKER, HeadMark::Here, false, Dir::Left, Dir::Left, true),
                part(a, HeadMark::Prev, true, Dir::Left, Dir::Right, false),
            ]
        );
    }

    #[test]
    fn receive_fires_when_the_head_moves_back_onto_the_previous_cell() {
        // In the start layout the head on the end marker is forced right,
        // which is a move back onto the previous-position particle.
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let (_, state) = start_state(&tm, "a");
        let out = interact_pair(&pm, &state, 2, 1).expect("indices valid");
        assert!(out[1].gets_head);
        assert_eq!(out[1].next_move, Dir::Right);
        assert_eq!(out[0], state.particles[0]);
    }

    #[test]
    fn single_particle_state_has_no_interactions() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let (_, state) = start_state(&tm, "");
        assert_eq!(state.len(), 1);
        assert_eq!(interact_all(&pm, &state).expect("no errors"), state.particles);
    }

    #[test]
    fn evolve_promotes_demotes_and_rewrites() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let a = tm.symbol_by_token("a").unwrap();
        let g = T2Global {
            state: state_of(&tm, "s"),
            state_acc: state_of(&tm, "s"),
        };

        // Pending head becomes the head; arrival direction lands in
        // last_move and the accumulator resets.
        let pending = part(a, HeadMark::Prev, true, Dir::Left, Dir::Right, false);
        let (g1, out) = pm.evolve(&g, &pending);
        assert_eq!(g1, g);
        assert_eq!(
            out,
            vec![part(a, HeadMark::Here, false, Dir::Right, Dir::Left, false)]
        );

        // A plain particle is untouched.
        let plain = T2Particle::plain(a);
        assert_eq!(pm.evolve(&g, &plain), (g, vec![plain]));

        // A handed-off head writes the rule's symbol and becomes Prev.
        let head = part(a, HeadMark::Here, false, Dir::Right, Dir::Left, true);
        let (g2, out) = pm.evolve(&g, &head);
        assert_eq!(g2.state_acc, state_of(&tm, "s"));
        assert_eq!(
            out,
            vec![part(a, HeadMark::Prev, false, Dir::Left, Dir::Left, false)]
        );

        // A stranded head spawns a fresh blank head cell.
        let stranded = part(a, HeadMark::Here, false, Dir::Right, Dir::Left, false);
        let (_, out) = pm.evolve(&g, &stranded);
        assert_eq!(
            out,
            vec![
                part(a, HeadMark::Prev, false, Dir::Left, Dir::Left, false),
                part(Symbol::BLANK, HeadMark::Here, false, Dir::Right, Dir::Left, false),
            ]
        );
    }

    #[test]
    fn transition_step_tracks_the_machine_step() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let (machine_cfg, state) = start_state(&tm, "a");
        let a = tm.symbol_by_token("a").unwrap();
        let next = transition_step(&pm, &state).expect("no errors");
        assert_eq!(
            next.particles,
            vec![
                part(Symbol::END_MARKER, HeadMark::Prev, false, Dir::Left, Dir::Left, false),
                part(a, HeadMark::Here, false, Dir::Right, Dir::Left, false),
            ]
        );
        assert_eq!(
            next.global,
            T2Global {
                state: state_of(&tm, "s"),
                state_acc: state_of(&tm, "s"),
            }
        );
        assert_eq!(back_translate(&next).expect("one marker"), tm.step(&machine_cfg));
    }

    #[test]
    fn cosim_holds_and_exercises_fresh_cell_creation() {
        let tm = m0();
        let input = tm.input_from_str("a").expect("valid input");
        let report = cosim_t2(&tm, &input, 100).expect("setup ok");
        assert!(report.ok(), "divergence: {:?}", report.divergence);
        assert_eq!(report.halted_at, Some(4));
        // The head walked onto fresh blanks: more particles than prefix
        // cells at the end.
        assert!(report.pm_trace.last().unwrap().len() > report.tm_trace.last().unwrap().tape().len());

        let report = cosim_t2(&tm, &[], 100).expect("setup ok");
        assert!(report.ok(), "divergence: {:?}", report.divergence);
        assert_eq!(report.halted_at, Some(3));
    }

    /// Wrapper whose global evolve keeps the accumulator instead of
    /// resetting it.
    struct StickyAccumulator(T2Pm);

    impl ParticleMethod for StickyAccumulator {
        type Global = T2Global;
        type Particle = T2Particle;

        fn neighborhood(&self, s: &PmState<T2Global, T2Particle>, j: usize) -> Vec<usize> {
            self.0.neighborhood(s, j)
        }
        fn stop(&self, g: &T2Global) -> bool {
            self.0.stop(g)
        }
        fn interact(
            &self,
            g: &T2Global,
            pj: &T2Particle,
            pk: &T2Particle,
        ) -> (T2Particle, T2Particle) {
            self.0.interact(g, pj, pk)
        }
        fn evolve(&self, g: &T2Global, pj: &T2Particle) -> (T2Global, Vec<T2Particle>) {
            self.0.evolve(g, pj)
        }
        fn evolve_global(&self, g: &T2Global) -> T2Global {
            T2Global {
                state: g.state_acc,
                state_acc: g.state_acc,
            }
        }
        fn render_global(&self, g: &T2Global) -> String {
            self.0.render_global(g)
        }
        fn render_particle(&self, p: &T2Particle) -> String {
            self.0.render_particle(p)
        }
    }

    #[test]
    fn unreset_accumulator_is_flagged() {
        let tm = m0();
        let broken = StickyAccumulator(compile_t2(&tm).expect("valid machine"));
        let report = cosim_t2_with(&broken, &tm, &[], 100).expect("setup ok");
        let d = report.divergence.expect("must diverge");
        assert_eq!(d.criterion, "state-acc-reset");
        assert_eq!(d.step, 3);
    }

    #[test]
    fn interact_is_a_pull_on_the_reachable_domain() {
        let tm = m0();
        let pm = compile_t2(&tm).expect("valid machine");
        let (globals, particles) = checker_domain(&tm);
        for g in &globals {
            for pj in &particles {
                for pk in &particles {
                    let (_, second) = pm.interact(g, pj, pk);
                    assert_eq!(second, *pk);
                }
            }
        }
    }
}
