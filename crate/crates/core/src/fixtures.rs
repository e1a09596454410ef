//! Embedded machines and small particle methods used by the command-line
//! tool and the test suites.

use crate::engine::{Domain, ParticleMethod, PmState};
use crate::turing::{Dir, TuringMachine};

/// Smallest machine exercising the end-marker rule, head movement, blank
/// extension, and acceptance: it walks right over the input and accepts on
/// the first blank.
pub fn seek_blank() -> TuringMachine {
    TuringMachine::builder()
        .states(["s", "acc", "rej"])
        .start("s")
        .accept("acc")
        .reject("rej")
        .input_symbols(["a"])
        .tape_symbols(["a"])
        .rule("s", "|-", "s", "|-", Dir::Right)
        .rule("s", "a", "s", "a", Dir::Right)
        .rule("s", "_", "acc", "_", Dir::Right)
        .rule("acc", "|-", "acc", "|-", Dir::Right)
        .rule("acc", "a", "acc", "a", Dir::Right)
        .rule("acc", "_", "acc", "_", Dir::Right)
        .rule("rej", "|-", "rej", "|-", Dir::Right)
        .rule("rej", "a", "rej", "a", Dir::Right)
        .rule("rej", "_", "rej", "_", Dir::Right)
        .build()
        .expect("fixture machine builds")
}

/// Appends one `1` to a unary numeral and accepts. Writes a non-blank onto
/// a blank cell, which no other fixture does.
pub fn unary_successor() -> TuringMachine {
    TuringMachine::builder()
        .states(["s", "acc", "rej"])
        .start("s")
        .accept("acc")
        .reject("rej")
        .input_symbols(["1"])
        .tape_symbols(["1"])
        .rule("s", "|-", "s", "|-", Dir::Right)
        .rule("s", "1", "s", "1", Dir::Right)
        .rule("s", "_", "acc", "1", Dir::Right)
        .rule("acc", "|-", "acc", "|-", Dir::Right)
        .rule("acc", "1", "acc", "1", Dir::Right)
        .rule("acc", "_", "acc", "_", Dir::Right)
        .rule("rej", "|-", "rej", "|-", Dir::Right)
        .rule("rej", "1", "rej", "1", Dir::Right)
        .rule("rej", "_", "rej", "_", Dir::Right)
        .build()
        .expect("fixture machine builds")
}

/// Accepts exactly the even-length palindromes over `{a, b}`.
///
/// Each round erases the first remaining symbol, walks to the last remaining
/// symbol, and erases it if it matches; `bk` walks back to the left edge of
/// the remainder. Odd-length inputs strand a single symbol, detected by
/// `fa`/`fb` landing on a blank. Head movement in both directions makes this
/// the fixture that exercises left moves.
pub fn even_palindrome() -> TuringMachine {
    let b = TuringMachine::builder()
        .states(["rd", "wa", "wb", "fa", "fb", "bk", "acc", "rej"])
        .start("rd")
        .accept("acc")
        .reject("rej")
        .input_symbols(["a", "b"])
        .tape_symbols(["a", "b"])
        // rd: read the leftmost remaining symbol.
        .rule("rd", "|-", "rd", "|-", Dir::Right)
        .rule("rd", "_", "acc", "_", Dir::Right)
        .rule("rd", "a", "wa", "_", Dir::Right)
        .rule("rd", "b", "wb", "_", Dir::Right)
        // wa/wb: walk right to the blank after the remainder.
        .rule("wa", "|-", "rej", "|-", Dir::Right)
        .rule("wa", "a", "wa", "a", Dir::Right)
        .rule("wa", "b", "wa", "b", Dir::Right)
        .rule("wa", "_", "fa", "_", Dir::Left)
        .rule("wb", "|-", "rej", "|-", Dir::Right)
        .rule("wb", "a", "wb", "a", Dir::Right)
        .rule("wb", "b", "wb", "b", Dir::Right)
        .rule("wb", "_", "fb", "_", Dir::Left)
        // fa/fb: compare the rightmost remaining symbol.
        .rule("fa", "|-", "rej", "|-", Dir::Right)
        .rule("fa", "a", "bk", "_", Dir::Left)
        .rule("fa", "b", "rej", "b", Dir::Right)
        .rule("fa", "_", "rej", "_", Dir::Right)
        .rule("fb", "|-", "rej", "|-", Dir::Right)
        .rule("fb", "a", "rej", "a", Dir::Right)
        .rule("fb", "b", "bk", "_", Dir::Left)
        .rule("fb", "_", "rej", "_", Dir::Right)
        // bk: walk back to the blank left of the remainder.
        .rule("bk", "|-", "rej", "|-", Dir::Right)
        .rule("bk", "a", "bk", "a", Dir::Left)
        .rule("bk", "b", "bk", "b", Dir::Left)
        .rule("bk", "_", "rd", "_", Dir::Right)
        .rule("acc", "|-", "acc", "|-", Dir::Right)
        .rule("acc", "a", "acc", "a", Dir::Right)
        .rule("acc", "b", "acc", "b", Dir::Right)
        .rule("acc", "_", "acc", "_", Dir::Right)
        .rule("rej", "|-", "rej", "|-", Dir::Right)
        .rule("rej", "a", "rej", "a", Dir::Right)
        .rule("rej", "b", "rej", "b", Dir::Right)
        .rule("rej", "_", "rej", "_", Dir::Right);
    b.build().expect("fixture machine builds")
}

/// The three embedded corpus machines, keyed by fixture name.
pub fn machine(name: &str) -> Option<TuringMachine> {
    match name {
        "m0" => Some(seek_blank()),
        "succ" => Some(unary_successor()),
        "palin" => Some(even_palindrome()),
        _ => None,
    }
}

/// A particle-free modular counter: the global value cycles through
/// `0..modulus`, stopping at `stop_value` if one is set.
#[derive(Clone, Debug)]
pub struct CounterPm {
    pub modulus: u8,
    pub stop_value: Option<u8>,
}

impl ParticleMethod for CounterPm {
    type Global = u8;
    type Particle = ();

    fn neighborhood(&self, _state: &PmState<u8, ()>, _j: usize) -> Vec<usize> {
        Vec::new()
    }

    fn stop(&self, g: &u8) -> bool {
        self.stop_value == Some(*g)
    }

    fn interact(&self, _g: &u8, _pj: &(), _pk: &()) -> ((), ()) {
        ((), ())
    }

    fn evolve(&self, g: &u8, _pj: &()) -> (u8, Vec<()>) {
        (*g, vec![()])
    }

    fn evolve_global(&self, g: &u8) -> u8 {
        (g + 1) % self.modulus
    }

    fn render_global(&self, g: &u8) -> String {
        g.to_string()
    }

    fn render_particle(&self, _p: &()) -> String {
        String::new()
    }

    fn global_domain(&self) -> Domain<u8> {
        Domain::Finite((0..self.modulus).collect())
    }

    fn particle_domain(&self) -> Domain<()> {
        Domain::Finite(vec![()])
    }

    fn may_create_particles(&self) -> bool {
        false
    }

    fn may_destroy_particles(&self) -> bool {
        false
    }
}

/// Modulo-3 counter with no stopping condition; loops forever.
pub fn counter3() -> CounterPm {
    CounterPm {
        modulus: 3,
        stop_value: None,
    }
}

/// Modulo-3 counter that stops when the global value reaches 2.
pub fn counter3_stop() -> CounterPm {
    CounterPm {
        modulus: 3,
        stop_value: Some(2),
    }
}

/// Small neighbor-coupled method used to exercise nonempty neighborhoods:
/// adjacent particles blend values during interaction and rotate during
/// evolution. Never stops on its own.
#[derive(Clone, Debug)]
pub struct MarkerShuttle;

impl ParticleMethod for MarkerShuttle {
    type Global = u8;
    type Particle = u8;

    fn neighborhood(&self, state: &PmState<u8, u8>, j: usize) -> Vec<usize> {
        [j.wrapping_sub(1), j + 1]
            .into_iter()
            .filter(|&k| k >= 1 && k <= state.len())
            .collect()
    }

    fn stop(&self, _g: &u8) -> bool {
        false
    }

    fn interact(&self, _g: &u8, pj: &u8, pk: &u8) -> (u8, u8) {
        ((pj.wrapping_add(*pk)) & 7, *pk)
    }

    fn evolve(&self, g: &u8, pj: &u8) -> (u8, Vec<u8>) {
        (g.wrapping_add(*pj) & 31, vec![pj.rotate_left(1) & 7])
    }

    fn evolve_global(&self, g: &u8) -> u8 {
        g.wrapping_add(1) & 31
    }

    fn render_global(&self, g: &u8) -> String {
        g.to_string()
    }

    fn render_particle(&self, p: &u8) -> String {
        p.to_string()
    }

    fn global_domain(&self) -> Domain<u8> {
        Domain::Finite((0..32).collect())
    }

    fn particle_domain(&self) -> Domain<u8> {
        Domain::Finite((0..8).collect())
    }

    fn may_create_particles(&self) -> bool {
        false
    }

    fn may_destroy_particles(&self) -> bool {
        false
    }
}

pub fn marker_shuttle() -> MarkerShuttle {
    MarkerShuttle
}
