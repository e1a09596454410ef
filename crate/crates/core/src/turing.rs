//! Deterministic one-tape Turing machines over a semi-infinite tape.
//!
//! Cell 1 always holds the end marker `|-`; the head can neither overwrite
//! it nor move left of it. The input starts in cell 2, and every unwritten
//! cell beyond the finite prefix reads as blank `_`. Configurations are kept
//! canonical (no trailing blanks), so equality on `Configuration` matches
//! equality of the semi-infinite tape contents.

use std::fmt;
use thiserror::Error;

/// Identifies a tape symbol by its index in the machine's alphabet table.
///
/// Indices 0 and 1 are reserved for the end marker and the blank.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Symbol(u16);

impl Symbol {
    /// Tape-start marker, rendered `|-`.
    pub const END_MARKER: Symbol = Symbol(0);
    /// Blank, rendered `_`.
    pub const BLANK: Symbol = Symbol(1);

    pub(crate) fn from_index(i: usize) -> Symbol {
        Symbol(u16::try_from(i).expect("alphabet too large"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_reserved(self) -> bool {
        self.0 < 2
    }
}

/// Identifies a machine state by its rank in the machine's total state order.
///
/// The start state has rank 0 and is strictly minimal. `Ord` on `StateId`
/// realizes the order that `max` reductions over states rely on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StateId(u16);

impl StateId {
    pub(crate) fn from_rank(i: usize) -> StateId {
        StateId(u16::try_from(i).expect("state set too large"))
    }

    pub fn rank(self) -> usize {
        self.0 as usize
    }
}

/// Head movement. `Left < Right`, matching the numeric order on the offsets
/// -1 and +1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Dir {
    Left,
    Right,
}

impl Dir {
    pub fn offset(self) -> isize {
        match self {
            Dir::Left => -1,
            Dir::Right => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Dir::Left => 'L',
            Dir::Right => 'R',
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.offset())
    }
}

/// One entry of the transition table: next state, written symbol, head move.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rule {
    pub next: StateId,
    pub write: Symbol,
    pub dir: Dir,
}

/// Error from assembling a structurally broken machine description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("missing {0} declaration")]
    MissingDeclaration(&'static str),
    #[error("unknown state token {0}")]
    UnknownState(String),
    #[error("unknown symbol token {0}")]
    UnknownSymbol(String),
    #[error("duplicate state token {0}")]
    DuplicateState(String),
    #[error("duplicate symbol token {0}")]
    DuplicateSymbol(String),
    #[error("duplicate delta entry at ({state},{symbol})")]
    DuplicateRule { state: String, symbol: String },
}

/// Error from feeding a machine an input it cannot start on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("symbol {0} not in input alphabet")]
    SymbolNotInInputAlphabet(String),
}

/// A deterministic one-tape Turing machine.
///
/// States are ordered by declaration with the start state forced to rank 0;
/// the transition table is stored densely over states x tape alphabet.
/// Missing entries are permitted at construction time and reported by
/// [`TuringMachine::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    state_names: Vec<String>,
    symbol_tokens: Vec<String>,
    input_symbols: Vec<Symbol>,
    start: StateId,
    accept: StateId,
    reject: StateId,
    rules: Vec<Option<Rule>>,
}

impl TuringMachine {
    pub fn builder() -> TmBuilder {
        TmBuilder::default()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn accept(&self) -> StateId {
        self.accept
    }

    pub fn reject(&self) -> StateId {
        self.reject
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_names.len()).map(StateId::from_rank)
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.state_names[q.rank()]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.state_names
            .iter()
            .position(|n| n == name)
            .map(StateId::from_rank)
    }

    pub fn symbol_count(&self) -> usize {
        self.symbol_tokens.len()
    }

    /// All tape symbols, reserved ones first.
    pub fn tape_symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbol_tokens.len()).map(Symbol::from_index)
    }

    pub fn input_symbols(&self) -> &[Symbol] {
        &self.input_symbols
    }

    pub fn symbol_token(&self, s: Symbol) -> &str {
        &self.symbol_tokens[s.index()]
    }

    pub fn symbol_by_token(&self, token: &str) -> Option<Symbol> {
        self.symbol_tokens
            .iter()
            .position(|t| t == token)
            .map(Symbol::from_index)
    }

    pub fn is_halting(&self, q: StateId) -> bool {
        q == self.accept || q == self.reject
    }

    pub fn rule(&self, q: StateId, s: Symbol) -> Option<&Rule> {
        self.rules[q.rank() * self.symbol_tokens.len() + s.index()].as_ref()
    }

    /// Checks every machine invariant and returns the violations found.
    ///
    /// Violations are data, not failures: an empty report means the machine
    /// is well-formed and its transition table is total.
    pub fn validate(&self) -> ValidityReport {
        let mut violations = Vec::new();
        if self.accept == self.reject {
            violations.push(Violation::AcceptEqualsReject);
        }
        for &s in &self.input_symbols {
            if s.is_reserved() {
                violations.push(Violation::ReservedInInputAlphabet {
                    symbol: self.symbol_token(s).to_string(),
                });
            }
        }
        for q in self.states() {
            for s in self.tape_symbols() {
                let Some(rule) = self.rule(q, s) else {
                    violations.push(Violation::MissingRule {
                        state: self.state_name(q).to_string(),
                        symbol: self.symbol_token(s).to_string(),
                    });
                    continue;
                };
                if s == Symbol::END_MARKER {
                    if rule.dir == Dir::Left {
                        violations.push(Violation::LeftMoveOnEndMarker {
                            state: self.state_name(q).to_string(),
                        });
                    }
                    if rule.write != Symbol::END_MARKER {
                        violations.push(Violation::EndMarkerOverwritten {
                            state: self.state_name(q).to_string(),
                            written: self.symbol_token(rule.write).to_string(),
                        });
                    }
                }
                if q == self.accept && rule.next != self.accept {
                    violations.push(Violation::AcceptNotAbsorbing {
                        state: self.state_name(q).to_string(),
                        symbol: self.symbol_token(s).to_string(),
                    });
                }
                if q == self.reject && rule.next != self.reject {
                    violations.push(Violation::RejectNotAbsorbing {
                        state: self.state_name(q).to_string(),
                        symbol: self.symbol_token(s).to_string(),
                    });
                }
            }
        }
        ValidityReport { violations }
    }

    /// Builds the start configuration for the given input string.
    pub fn start_config(&self, input: &[Symbol]) -> Result<Configuration, InputError> {
        for &s in input {
            if !self.input_symbols.contains(&s) {
                return Err(InputError::SymbolNotInInputAlphabet(
                    self.symbol_token(s).to_string(),
                ));
            }
        }
        let mut tape = Vec::with_capacity(input.len() + 1);
        tape.push(Symbol::END_MARKER);
        tape.extend_from_slice(input);
        Ok(Configuration::new(self.start, tape, 1).expect("start configuration is well-formed"))
    }

    /// Resolves an input string character by character against the input
    /// alphabet. Each character must name a single-character input symbol.
    pub fn input_from_str(&self, input: &str) -> Result<Vec<Symbol>, InputError> {
        input
            .chars()
            .map(|c| {
                let token = c.to_string();
                self.symbol_by_token(&token)
                    .filter(|s| self.input_symbols.contains(s))
                    .ok_or(InputError::SymbolNotInInputAlphabet(token))
            })
            .collect()
    }

    /// Applies the transition table once.
    ///
    /// Requires a total table (run [`TuringMachine::validate`] first); the
    /// end-marker rule of a valid machine guarantees the head never leaves
    /// the tape.
    pub fn step(&self, c: &Configuration) -> Configuration {
        let scanned = c.symbol_at(c.head());
        let rule = self
            .rule(c.state(), scanned)
            .expect("transition table must be total; validate() reports the missing entries");
        let mut tape = c.tape().to_vec();
        if c.head() > tape.len() {
            tape.resize(c.head(), Symbol::BLANK);
        }
        tape[c.head() - 1] = rule.write;
        let head = c
            .head()
            .checked_add_signed(rule.dir.offset())
            .expect("head position overflow");
        Configuration::new(rule.next, tape, head)
            .expect("head moved left of cell 1; machine violates the end-marker rule")
    }

    /// Runs until accept/reject or until `max_steps` transitions were taken.
    ///
    /// `trace[0]` is the start configuration; each later entry is one step.
    pub fn run(&self, input: &[Symbol], max_steps: u64) -> Result<TmRun, InputError> {
        let mut trace = vec![self.start_config(input)?];
        loop {
            let current = trace.last().expect("trace is never empty");
            let t = trace.len() as u64;
            if current.state() == self.accept {
                return Ok(TmRun {
                    verdict: RunVerdict::Accepted { step: t },
                    trace,
                });
            }
            if current.state() == self.reject {
                return Ok(TmRun {
                    verdict: RunVerdict::Rejected { step: t },
                    trace,
                });
            }
            if t > max_steps {
                return Ok(TmRun {
                    verdict: RunVerdict::Running,
                    trace,
                });
            }
            let next = self.step(current);
            trace.push(next);
        }
    }

    /// Renders a configuration as `q=<name> n=<pos> tape=<tokens>`.
    pub fn render_config(&self, c: &Configuration) -> String {
        let tape: String = c.tape().iter().map(|&s| self.symbol_token(s)).collect();
        format!("q={} n={} tape={}", self.state_name(c.state()), c.head(), tape)
    }
}

/// Outcome of [`TuringMachine::run`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmRun {
    pub verdict: RunVerdict,
    pub trace: Vec<Configuration>,
}

/// Verdict of a bounded machine run. `step` is the 1-based trace position
/// at which the halting state was first reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunVerdict {
    Accepted { step: u64 },
    Rejected { step: u64 },
    Running,
}

/// A single machine invariant violation, named after the offending entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingRule { state: String, symbol: String },
    LeftMoveOnEndMarker { state: String },
    EndMarkerOverwritten { state: String, written: String },
    AcceptNotAbsorbing { state: String, symbol: String },
    RejectNotAbsorbing { state: String, symbol: String },
    ReservedInInputAlphabet { symbol: String },
    AcceptEqualsReject,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingRule { state, symbol } => {
                write!(f, "missing delta entry at ({state},{symbol})")
            }
            Violation::LeftMoveOnEndMarker { state } => {
                write!(f, "left move on end marker at ({state},|-)")
            }
            Violation::EndMarkerOverwritten { state, written } => {
                write!(f, "end marker overwritten with {written} at ({state},|-)")
            }
            Violation::AcceptNotAbsorbing { state, symbol } => {
                write!(f, "accept not absorbing at ({state},{symbol})")
            }
            Violation::RejectNotAbsorbing { state, symbol } => {
                write!(f, "reject not absorbing at ({state},{symbol})")
            }
            Violation::ReservedInInputAlphabet { symbol } => {
                write!(f, "reserved symbol {symbol} in input alphabet")
            }
            Violation::AcceptEqualsReject => write!(f, "accept equals reject"),
        }
    }
}

/// Result of [`TuringMachine::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

/// Error wrapper for operations that require a valid machine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid machine: {0}")]
pub struct InvalidMachine(pub ValidityReport);

/// Error from assembling a malformed configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("tape must begin with the end marker")]
    MissingEndMarker,
    #[error("head position must be at least 1")]
    HeadBeforeTape,
}

/// An instantaneous machine description: state, finite tape prefix, and
/// 1-based head position.
///
/// The prefix always starts with the end marker and carries no trailing
/// blanks; the head may point beyond the prefix (into the blank region).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    state: StateId,
    tape: Vec<Symbol>,
    head: usize,
}

impl Configuration {
    /// Canonicalizes (trims trailing blanks) and checks the tape invariants.
    pub fn new(state: StateId, mut tape: Vec<Symbol>, head: usize) -> Result<Self, ConfigError> {
        if tape.first() != Some(&Symbol::END_MARKER) {
            return Err(ConfigError::MissingEndMarker);
        }
        if head == 0 {
            return Err(ConfigError::HeadBeforeTape);
        }
        while tape.len() > 1 && *tape.last().expect("tape is nonempty") == Symbol::BLANK {
            tape.pop();
        }
        Ok(Configuration { state, tape, head })
    }

    pub fn state(&self) -> StateId {
        self.state
    }

    /// Canonical finite prefix, including the end marker.
    pub fn tape(&self) -> &[Symbol] {
        &self.tape
    }

    pub fn head(&self) -> usize {
        self.head
    }

    /// Symbol in the given 1-based cell; blank beyond the finite prefix.
    pub fn symbol_at(&self, pos: usize) -> Symbol {
        assert!(pos >= 1, "cells are numbered from 1");
        self.tape.get(pos - 1).copied().unwrap_or(Symbol::BLANK)
    }
}

/// Incremental description of a machine; `build` resolves tokens and packs
/// the dense transition table.
#[derive(Default, Clone, Debug)]
pub struct TmBuilder {
    states: Vec<String>,
    start: Option<String>,
    accept: Option<String>,
    reject: Option<String>,
    input: Vec<String>,
    tape: Vec<String>,
    rules: Vec<(String, String, String, String, Dir)>,
}

impl TmBuilder {
    pub fn states<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.states.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn start(mut self, name: &str) -> Self {
        self.start = Some(name.to_string());
        self
    }

    pub fn accept(mut self, name: &str) -> Self {
        self.accept = Some(name.to_string());
        self
    }

    pub fn reject(mut self, name: &str) -> Self {
        self.reject = Some(name.to_string());
        self
    }

    /// Declares the input alphabet. Reserved tokens are resolvable here but
    /// flagged later by `validate`.
    pub fn input_symbols<I, S>(mut self, tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.input.extend(tokens.into_iter().map(Into::into));
        self
    }

    /// Declares the tape alphabet beyond the implicit end marker and blank.
    pub fn tape_symbols<I, S>(mut self, tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.tape.extend(tokens.into_iter().map(Into::into));
        self
    }

    pub fn rule(mut self, state: &str, scan: &str, next: &str, write: &str, dir: Dir) -> Self {
        self.rules.push((
            state.to_string(),
            scan.to_string(),
            next.to_string(),
            write.to_string(),
            dir,
        ));
        self
    }

    pub fn build(self) -> Result<TuringMachine, BuildError> {
        let start = self.start.ok_or(BuildError::MissingDeclaration("start"))?;
        let accept = self.accept.ok_or(BuildError::MissingDeclaration("accept"))?;
        let reject = self.reject.ok_or(BuildError::MissingDeclaration("reject"))?;
        if self.states.is_empty() {
            return Err(BuildError::MissingDeclaration("states"));
        }

        // Start state takes rank 0; the rest keep declaration order.
        let mut state_names = vec![start.clone()];
        for name in &self.states {
            if *name == start {
                continue;
            }
            if state_names.contains(name) {
                return Err(BuildError::DuplicateState(name.clone()));
            }
            state_names.push(name.clone());
        }
        if !self.states.contains(&start) {
            return Err(BuildError::UnknownState(start));
        }

        let mut symbol_tokens = vec!["|-".to_string(), "_".to_string()];
        for token in &self.tape {
            if symbol_tokens.contains(token) {
                return Err(BuildError::DuplicateSymbol(token.clone()));
            }
            symbol_tokens.push(token.clone());
        }

        let state_id = |name: &str| -> Result<StateId, BuildError> {
            state_names
                .iter()
                .position(|n| n == name)
                .map(StateId::from_rank)
                .ok_or_else(|| BuildError::UnknownState(name.to_string()))
        };
        let symbol_id = |token: &str| -> Result<Symbol, BuildError> {
            symbol_tokens
                .iter()
                .position(|t| t == token)
                .map(Symbol::from_index)
                .ok_or_else(|| BuildError::UnknownSymbol(token.to_string()))
        };

        let accept = state_id(&accept)?;
        let reject = state_id(&reject)?;
        let mut input_symbols = Vec::new();
        for token in &self.input {
            let s = symbol_id(token)?;
            if input_symbols.contains(&s) {
                return Err(BuildError::DuplicateSymbol(token.clone()));
            }
            input_symbols.push(s);
        }

        let n_syms = symbol_tokens.len();
        let mut rules: Vec<Option<Rule>> = vec![None; state_names.len() * n_syms];
        for (state, scan, next, write, dir) in &self.rules {
            let q = state_id(state)?;
            let s = symbol_id(scan)?;
            let slot = &mut rules[q.rank() * n_syms + s.index()];
            if slot.is_some() {
                return Err(BuildError::DuplicateRule {
                    state: state.clone(),
                    symbol: scan.clone(),
                });
            }
            *slot = Some(Rule {
                next: state_id(next)?,
                write: symbol_id(write)?,
                dir: *dir,
            });
        }

        Ok(TuringMachine {
            state_names,
            symbol_tokens,
            input_symbols,
            start: StateId::from_rank(0),
            accept,
            reject,
            rules,
        })
    }
}
