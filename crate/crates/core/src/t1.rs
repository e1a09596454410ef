//! Construction t1: compiles a Turing machine into a particle method with
//! one particle per tape cell, addressed by an explicit cell index.
//!
//! The neighborhood is empty and the interact function is the identity; all
//! work happens in the evolve function, which fires only on the particle the
//! head points to. State and direction updates go through `max` accumulators
//! in the global value so that evolving the particles in any order gives the
//! same result, and the global evolve moves the accumulated state into
//! place, advances the head, and resets the accumulators.

use crate::cosim::{CosimError, CosimReport, Divergence};
use crate::engine::{self, ParticleMethod, PmState};
use crate::turing::{
    ConfigError, Configuration, Dir, InvalidMachine, StateId, Symbol, TuringMachine,
};
use thiserror::Error;

/// One tape cell: its 1-based index and the symbol it holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct T1Particle {
    pub cell: usize,
    pub symbol: Symbol,
}

/// Global value: machine state, state accumulator, direction accumulator,
/// head index, and total cell count.
///
/// At step boundaries on translated runs the accumulators are reset:
/// `state_acc` is the start state and `dir` is `Left`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct T1Global {
    pub state: StateId,
    pub state_acc: StateId,
    pub dir: Dir,
    pub head: usize,
    pub cells: usize,
}

/// The compiled bundle; holds the validated machine it emulates.
#[derive(Clone, Debug)]
pub struct T1Pm {
    tm: TuringMachine,
}

impl T1Pm {
    pub fn machine(&self) -> &TuringMachine {
        &self.tm
    }
}

/// Validates the machine and wraps it as a particle method.
pub fn compile_t1(tm: &TuringMachine) -> Result<T1Pm, InvalidMachine> {
    let report = tm.validate();
    if !report.is_ok() {
        return Err(InvalidMachine(report));
    }
    Ok(T1Pm { tm: tm.clone() })
}

impl ParticleMethod for T1Pm {
    type Global = T1Global;
    type Particle = T1Particle;

    fn neighborhood(&self, _state: &PmState<T1Global, T1Particle>, _j: usize) -> Vec<usize> {
        Vec::new()
    }

    fn stop(&self, g: &T1Global) -> bool {
        self.tm.is_halting(g.state)
    }

    fn interact(
        &self,
        _g: &T1Global,
        pj: &T1Particle,
        pk: &T1Particle,
    ) -> (T1Particle, T1Particle) {
        (*pj, *pk)
    }

    fn evolve(&self, g: &T1Global, pj: &T1Particle) -> (T1Global, Vec<T1Particle>) {
        if pj.cell != g.head {
            return (*g, vec![*pj]);
        }
        let rule = self
            .tm
            .rule(g.state, pj.symbol)
            .expect("compiled machines have a total transition table");
        let accumulated = T1Global {
            state: g.state,
            state_acc: g.state_acc.max(rule.next),
            dir: g.dir.max(rule.dir),
            head: g.head,
            cells: g.cells,
        };
        let target = g
            .head
            .checked_add_signed(rule.dir.offset())
            .expect("head index overflow");
        let written = T1Particle {
            cell: pj.cell,
            symbol: rule.write,
        };
        if target > g.cells {
            let fresh = T1Particle {
                cell: pj.cell + 1,
                symbol: Symbol::BLANK,
            };
            (accumulated, vec![written, fresh])
        } else {
            (accumulated, vec![written])
        }
    }

    fn evolve_global(&self, g: &T1Global) -> T1Global {
        let target = g
            .head
            .checked_add_signed(g.dir.offset())
            .expect("head index overflow");
        let start = StateId::from_rank(0);
        if target > g.cells {
            T1Global {
                state: g.state_acc,
                state_acc: start,
                dir: Dir::Left,
                head: target,
                cells: g.cells + 1,
            }
        } else {
            T1Global {
                state: g.state_acc,
                state_acc: start,
                dir: Dir::Left,
                head: target.max(1),
                cells: g.cells,
            }
        }
    }

    fn render_global(&self, g: &T1Global) -> String {
        format!(
            "{},{},{},{},{}",
            self.tm.state_name(g.state),
            self.tm.state_name(g.state_acc),
            g.dir,
            g.head,
            g.cells
        )
    }

    fn render_particle(&self, p: &T1Particle) -> String {
        format!("{},{}", p.cell, self.tm.symbol_token(p.symbol))
    }

    fn may_destroy_particles(&self) -> bool {
        false
    }
}

/// Translates a configuration into the emulating state: one particle per
/// prefix cell and the head position mirrored into the global value. Total
/// on canonical configurations; the head may point beyond the prefix.
pub fn translate(c: &Configuration) -> PmState<T1Global, T1Particle> {
    let particles = c
        .tape()
        .iter()
        .enumerate()
        .map(|(i, &symbol)| T1Particle {
            cell: i + 1,
            symbol,
        })
        .collect();
    PmState::new(
        T1Global {
            state: c.state(),
            state_acc: StateId::from_rank(0),
            dir: Dir::Left,
            head: c.head(),
            cells: c.tape().len(),
        },
        particles,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum T1TranslationError {
    /// Some particle's stored cell index disagrees with its position; the
    /// emulation is corrupted and no configuration can be read back.
    #[error("cell index integrity violated: particle {position} carries cell index {cell}")]
    CellIndexIntegrity { position: usize, cell: usize },
    #[error("particle tuple is empty")]
    EmptyTape,
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Reads a configuration back out of an emulating state.
///
/// Requires particle `j` to carry cell index `j`; anything else is reported
/// rather than repaired.
pub fn back_translate(
    state: &PmState<T1Global, T1Particle>,
) -> Result<Configuration, T1TranslationError> {
    if state.particles.is_empty() {
        return Err(T1TranslationError::EmptyTape);
    }
    for (i, p) in state.particles.iter().enumerate() {
        if p.cell != i + 1 {
            return Err(T1TranslationError::CellIndexIntegrity {
                position: i + 1,
                cell: p.cell,
            });
        }
    }
    let tape = state.particles.iter().map(|p| p.symbol).collect();
    Ok(Configuration::new(
        state.global.state,
        tape,
        state.global.head,
    )?)
}

/// Per-step criteria for construction t1: back-translation equality, cell
/// bookkeeping, accumulator resets, cell-index integrity, and agreement of
/// the two stopping conditions.
fn t1_criteria<M>(
    pm: &M,
    tm: &TuringMachine,
    machine_cfg: &Configuration,
    state: &PmState<T1Global, T1Particle>,
    step: u64,
) -> Option<Divergence>
where
    M: ParticleMethod<Global = T1Global, Particle = T1Particle>,
{
    let diverged = |criterion: &'static str, detail: String| {
        Some(Divergence {
            step,
            criterion,
            detail,
        })
    };
    match back_translate(state) {
        Err(e) => return diverged("cell-index", e.to_string()),
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
    let g = &state.global;
    if g.cells != state.len() {
        return diverged(
            "particle-count",
            format!("global counts {} cells, tuple has {}", g.cells, state.len()),
        );
    }
    if g.head > g.cells {
        return diverged(
            "head-range",
            format!("head {} beyond cell count {}", g.head, g.cells),
        );
    }
    if g.dir != Dir::Left {
        return diverged("dir-reset", format!("direction accumulator is {}", g.dir));
    }
    if g.state_acc != StateId::from_rank(0) {
        return diverged(
            "state-acc-reset",
            format!("state accumulator is {}", tm.state_name(g.state_acc)),
        );
    }
    let tm_halted = tm.is_halting(machine_cfg.state());
    if pm.stop(g) != tm_halted {
        return diverged(
            "stop-equiv",
            format!("stop condition {} vs machine halted {}", pm.stop(g), tm_halted),
        );
    }
    None
}

/// Runs the machine and an arbitrary bundle over t1's value spaces in lock
/// step, checking every per-step criterion; used directly by the mutation
/// tests and via [`cosim_t1`] for compiled bundles.
pub fn cosim_t1_with<M>(
    pm: &M,
    tm: &TuringMachine,
    input: &[Symbol],
    max_steps: u64,
) -> Result<CosimReport<T1Global, T1Particle>, CosimError>
where
    M: ParticleMethod<Global = T1Global, Particle = T1Particle>,
{
    let mut machine_cfg = tm.start_config(input)?;
    let mut state = translate(&machine_cfg);
    let mut report = CosimReport {
        tm_trace: vec![machine_cfg.clone()],
        pm_trace: vec![state.clone()],
        halted_at: None,
        divergence: None,
    };
    let mut step: u64 = 1;
    loop {
        if let Some(d) = t1_criteria(pm, tm, &machine_cfg, &state, step) {
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
pub fn cosim_t1(
    tm: &TuringMachine,
    input: &[Symbol],
    max_steps: u64,
) -> Result<CosimReport<T1Global, T1Particle>, CosimError> {
    let pm = compile_t1(tm)?;
    cosim_t1_with(&pm, tm, input, max_steps)
}

/// Enumerates the bounded sub-domain used by the restriction checker: all
/// states and accumulator values, head and cell counts in `1..=index_bound`,
/// and particles over every tape symbol with cell indices in the same range.
pub fn checker_domain(
    tm: &TuringMachine,
    index_bound: usize,
) -> (Vec<T1Global>, Vec<T1Particle>) {
    let mut globals = Vec::new();
    for state in tm.states() {
        for state_acc in tm.states() {
            for dir in [Dir::Left, Dir::Right] {
                for head in 1..=index_bound {
                    for cells in 1..=index_bound {
                        globals.push(T1Global {
                            state,
                            state_acc,
                            dir,
                            head,
                            cells,
                        });
                    }
                }
            }
        }
    }
    let mut particles = Vec::new();
    for cell in 1..=index_bound {
        for symbol in tm.tape_symbols() {
            particles.push(T1Particle { cell, symbol });
        }
    }
    (globals, particles)
}
