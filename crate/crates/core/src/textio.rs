//! Machine description files and the line formats for traces, reports, and
//! verdicts.
//!
//! The machine file grammar is ASCII and line-oriented; `#` starts a
//! comment. Declarations:
//!
//! ```text
//! states: s acc rej
//! start: s
//! accept: acc
//! reject: rej
//! input_alphabet: a
//! tape_alphabet: a
//! delta: s a -> s a R
//! ```
//!
//! The end marker `|-` and the blank `_` are implicit tape symbols and may
//! appear in `delta` lines. Tokens are `[A-Za-z0-9]+` apart from the two
//! reserved spellings. Parsing resolves tokens and table shape only; the
//! semantic machine invariants are the business of
//! [`TuringMachine::validate`].

use crate::check::{RestrictionReport, Verdict};
use crate::cosim::CosimReport;
use crate::engine::{render_state, ParticleMethod, PmState};
use crate::halt::{Decision, HaltingVerdict};
use crate::turing::{Configuration, Dir, RunVerdict, TmRun, TuringMachine};
use std::fmt;
use thiserror::Error;

/// One parser finding, tied to a source line when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Every problem found in one parsing pass.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseDiagnostics {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ParseDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.diagnostics.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric())
}

fn is_symbol_token(s: &str) -> bool {
    s == "|-" || s == "_" || is_token(s)
}

struct RawRule {
    line: usize,
    state: String,
    scan: String,
    next: String,
    write: String,
    dir: Dir,
}

/// Parses a machine description file. All diagnostics are collected before
/// giving up; a machine is returned only from a clean parse.
pub fn parse_tm_file(text: &str) -> Result<TuringMachine, ParseDiagnostics> {
    let mut diags: Vec<Diagnostic> = Vec::new();
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut start: Option<(usize, String)> = None;
    let mut accept: Option<(usize, String)> = None;
    let mut reject: Option<(usize, String)> = None;
    let mut input_alphabet: Option<(usize, Vec<String>)> = None;
    let mut tape_alphabet: Option<(usize, Vec<String>)> = None;
    let mut rules: Vec<RawRule> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            diags.push(Diagnostic {
                line: Some(line_no),
                message: format!("syntax error: expected `<keyword>: ...`, got `{line}`"),
            });
            continue;
        };
        let rest = rest.trim();
        let mut diag = |message: String| {
            diags.push(Diagnostic {
                line: Some(line_no),
                message,
            })
        };
        match key.trim() {
            "states" => {
                let tokens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for t in &tokens {
                    if !is_token(t) {
                        diag(format!("bad state token `{t}`"));
                    }
                }
                if states.replace((line_no, tokens)).is_some() {
                    diag("duplicate states declaration".to_string());
                }
            }
            "start" | "accept" | "reject" => {
                if !is_token(rest) {
                    diag(format!("bad state token `{rest}`"));
                    continue;
                }
                let slot = match key.trim() {
                    "start" => &mut start,
                    "accept" => &mut accept,
                    _ => &mut reject,
                };
                if slot.replace((line_no, rest.to_string())).is_some() {
                    diag(format!("duplicate {} declaration", key.trim()));
                }
            }
            "input_alphabet" | "tape_alphabet" => {
                let tokens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for t in &tokens {
                    if key.trim() == "tape_alphabet" && (t == "|-" || t == "_") {
                        diag(format!("reserved symbol `{t}` is implicit and cannot be redeclared"));
                    } else if !is_symbol_token(t) {
                        diag(format!("bad symbol token `{t}`"));
                    }
                }
                let slot = if key.trim() == "input_alphabet" {
                    &mut input_alphabet
                } else {
                    &mut tape_alphabet
                };
                if slot.replace((line_no, tokens)).is_some() {
                    diag(format!("duplicate {} declaration", key.trim()));
                }
            }
            "delta" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let ok = parts.len() == 6
                    && parts[2] == "->"
                    && is_token(parts[0])
                    && is_symbol_token(parts[1])
                    && is_token(parts[3])
                    && is_symbol_token(parts[4])
                    && matches!(parts[5], "L" | "R");
                if !ok {
                    diag(format!(
                        "syntax error: expected `delta: q sym -> q' sym' L|R`, got `{rest}`"
                    ));
                    continue;
                }
                rules.push(RawRule {
                    line: line_no,
                    state: parts[0].to_string(),
                    scan: parts[1].to_string(),
                    next: parts[3].to_string(),
                    write: parts[4].to_string(),
                    dir: if parts[5] == "L" { Dir::Left } else { Dir::Right },
                });
            }
            other => diag(format!("unknown declaration `{other}`")),
        }
    }

    for (is_missing, name) in [
        (states.is_none(), "states"),
        (start.is_none(), "start"),
        (accept.is_none(), "accept"),
        (reject.is_none(), "reject"),
    ] {
        if is_missing {
            diags.push(Diagnostic {
                line: None,
                message: format!("missing {name} declaration"),
            });
        }
    }
    if !diags.is_empty() {
        return Err(ParseDiagnostics { diagnostics: diags });
    }

    let (_, state_tokens) = states.expect("checked above");
    let (start_line, start_token) = start.expect("checked above");
    let tape_tokens = tape_alphabet.map(|(_, t)| t).unwrap_or_default();
    let input_tokens = input_alphabet.map(|(_, t)| t).unwrap_or_default();

    // Token-level resolution with line information.
    let known_state = |t: &String| state_tokens.contains(t);
    let known_symbol =
        |t: &String| t == "|-" || t == "_" || tape_tokens.contains(t);
    if !known_state(&start_token) {
        diags.push(Diagnostic {
            line: Some(start_line),
            message: format!("unknown state token `{start_token}`"),
        });
    }
    for (line, token) in [accept.as_ref().unwrap(), reject.as_ref().unwrap()] {
        if !known_state(token) {
            diags.push(Diagnostic {
                line: Some(*line),
                message: format!("unknown state token `{token}`"),
            });
        }
    }
    for t in &input_tokens {
        if !known_symbol(t) {
            diags.push(Diagnostic {
                line: None,
                message: format!("unknown symbol token `{t}` in input_alphabet"),
            });
        }
    }
    let mut seen: Vec<(&String, &String)> = Vec::new();
    for r in &rules {
        for (token, kind) in [(&r.state, "state"), (&r.next, "state")] {
            if !known_state(token) {
                diags.push(Diagnostic {
                    line: Some(r.line),
                    message: format!("unknown {kind} token `{token}`"),
                });
            }
        }
        for token in [&r.scan, &r.write] {
            if !known_symbol(token) {
                diags.push(Diagnostic {
                    line: Some(r.line),
                    message: format!("unknown symbol token `{token}`"),
                });
            }
        }
        if seen.contains(&(&r.state, &r.scan)) {
            diags.push(Diagnostic {
                line: Some(r.line),
                message: format!("duplicate delta entry at ({},{})", r.state, r.scan),
            });
        } else {
            seen.push((&r.state, &r.scan));
        }
    }
    if !diags.is_empty() {
        return Err(ParseDiagnostics { diagnostics: diags });
    }

    let mut builder = TuringMachine::builder()
        .states(state_tokens)
        .start(&start_token)
        .accept(&accept.expect("checked above").1)
        .reject(&reject.expect("checked above").1)
        .input_symbols(input_tokens)
        .tape_symbols(tape_tokens);
    for r in &rules {
        builder = builder.rule(&r.state, &r.scan, &r.next, &r.write, r.dir);
    }
    builder.build().map_err(|e| ParseDiagnostics {
        diagnostics: vec![Diagnostic {
            line: None,
            message: e.to_string(),
        }],
    })
}

/// Canonical file form of a machine: declarations in fixed order, delta
/// rows sorted by state rank then symbol index. `parse . render` is the
/// identity on machines.
pub fn render_tm_file(tm: &TuringMachine) -> String {
    let mut out = String::new();
    let state_names: Vec<&str> = tm.states().map(|q| tm.state_name(q)).collect();
    out.push_str(&format!("states: {}\n", state_names.join(" ")));
    out.push_str(&format!("start: {}\n", tm.state_name(tm.start())));
    out.push_str(&format!("accept: {}\n", tm.state_name(tm.accept())));
    out.push_str(&format!("reject: {}\n", tm.state_name(tm.reject())));
    let input: Vec<&str> = tm.input_symbols().iter().map(|&s| tm.symbol_token(s)).collect();
    out.push_str(&format!("input_alphabet: {}\n", input.join(" ")));
    let tape: Vec<&str> = tm
        .tape_symbols()
        .filter(|s| !s.is_reserved())
        .map(|s| tm.symbol_token(s))
        .collect();
    out.push_str(&format!("tape_alphabet: {}\n", tape.join(" ")));
    for q in tm.states() {
        for s in tm.tape_symbols() {
            if let Some(rule) = tm.rule(q, s) {
                out.push_str(&format!(
                    "delta: {} {} -> {} {} {}\n",
                    tm.state_name(q),
                    tm.symbol_token(s),
                    tm.state_name(rule.next),
                    tm.symbol_token(rule.write),
                    rule.dir.letter()
                ));
            }
        }
    }
    out
}

/// One machine trace line: `t=<t> q=<name> n=<pos> tape=<tokens>`.
pub fn render_tm_trace_line(tm: &TuringMachine, t: u64, c: &Configuration) -> String {
    format!("t={t} {}", tm.render_config(c))
}

pub fn render_tm_trace(tm: &TuringMachine, trace: &[Configuration]) -> String {
    trace
        .iter()
        .enumerate()
        .map(|(i, c)| render_tm_trace_line(tm, i as u64 + 1, c))
        .collect::<Vec<_>>()
        .join("\n")
}

/// One engine trace line: `t=<t> g=(..) p=[..]`.
pub fn render_pm_trace_line<M: ParticleMethod>(
    pm: &M,
    t: u64,
    state: &PmState<M::Global, M::Particle>,
) -> String {
    format!("t={t} {}", render_state(pm, state))
}

pub fn render_pm_trace<M: ParticleMethod>(
    pm: &M,
    trace: &[PmState<M::Global, M::Particle>],
) -> String {
    trace
        .iter()
        .enumerate()
        .map(|(i, s)| render_pm_trace_line(pm, i as u64 + 1, s))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Machine run verdict line.
pub fn render_tm_run(run: &TmRun) -> String {
    match run.verdict {
        RunVerdict::Accepted { step } => format!("verdict=accepted t={step}"),
        RunVerdict::Rejected { step } => format!("verdict=rejected t={step}"),
        RunVerdict::Running => "verdict=running".to_string(),
    }
}

/// Interleaved co-simulation listing: `TM ...` and `PM ...` line pairs,
/// closed by `COSIM ok` or `COSIM divergence t=<t> criterion=<name>`.
pub fn render_cosim<M: ParticleMethod>(
    pm: &M,
    tm: &TuringMachine,
    report: &CosimReport<M::Global, M::Particle>,
) -> String {
    let mut lines = Vec::new();
    for (i, (c, s)) in report.tm_trace.iter().zip(&report.pm_trace).enumerate() {
        let t = i as u64 + 1;
        lines.push(format!("TM {}", render_tm_trace_line(tm, t, c)));
        lines.push(format!("PM {}", render_pm_trace_line(pm, t, s)));
    }
    match &report.divergence {
        None => lines.push("COSIM ok".to_string()),
        Some(d) => lines.push(format!("COSIM divergence t={} criterion={}", d.step, d.criterion)),
    }
    lines.join("\n")
}

/// Deterministic ASCII table for a restriction report.
pub fn render_check_report(report: &RestrictionReport) -> String {
    let mut lines = Vec::new();
    for e in &report.entries {
        let line = match &e.verdict {
            Verdict::Pass => format!(
                "restriction {} {}: pass tuples={}",
                e.number, e.name, e.tuples
            ),
            Verdict::Fail { counterexample } => format!(
                "restriction {} {}: fail tuples={} counterexample: {}",
                e.number, e.name, e.tuples, counterexample
            ),
            Verdict::Measured { summary } => {
                format!("restriction {} {}: measured {}", e.number, e.name, summary)
            }
            Verdict::NotCheckable { reason } => {
                format!("restriction {} {}: not-checkable reason: {}", e.number, e.name, reason)
            }
        };
        lines.push(line);
    }
    lines.push(format!(
        "profile={} tuples={} verdict={}",
        report.profile,
        report.tuples_evaluated(),
        if report.all_ok() { "pass" } else { "fail" }
    ));
    lines.join("\n")
}

/// Halting verdict line.
pub fn render_decision(decision: &Decision) -> String {
    match decision.verdict {
        HaltingVerdict::Halts { steps } => format!("verdict=halts t={steps}"),
        HaltingVerdict::Loops {
            prefix_length,
            cycle_length,
        } => format!("verdict=loops mu={prefix_length} lambda={cycle_length}"),
        HaltingVerdict::Exhausted { visited, .. } => {
            format!("verdict=exhausted visited={visited}")
        }
    }
}
