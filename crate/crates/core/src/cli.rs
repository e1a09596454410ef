//! Command-line surface.
//!
//! ```text
//! pmtk tm validate <file>
//! pmtk tm run <file> [--input S] [--max-steps N] [--trace]
//! pmtk pm compile <file> --construction t1|t2 [--input S]
//! pmtk pm cosim <file> --construction t1|t2 [--input S] [--max-steps N]
//! pmtk pm check <file> --construction t1|t2 [--exhaustive | --samples N --seed K]
//! pmtk pm decide-halt --fixture <name> [--cap N]
//! ```
//!
//! Exit status 0 on success or pass, 1 on divergence, failure, or an
//! inconclusive run, 2 on usage or parse errors. Output is ASCII and
//! byte-identical across repeated invocations with equal arguments.

use crate::check::{check_t1, check_t2, DomainSampler};
use crate::engine::{DEFAULT_STEP_CAP, PmState};
use crate::fixtures;
use crate::halt::decide;
use crate::t1::{self, compile_t1};
use crate::t2::{self, compile_t2};
use crate::textio::{
    parse_tm_file, render_check_report, render_cosim, render_decision, render_pm_trace_line,
    render_tm_run, render_tm_trace,
};
use crate::turing::{RunVerdict, Symbol, TuringMachine};
use std::io::Write;

const USAGE: &str = "\
usage:
  pmtk tm validate <file>
  pmtk tm run <file> [--input S] [--max-steps N] [--trace]
  pmtk pm compile <file> --construction t1|t2 [--input S]
  pmtk pm cosim <file> --construction t1|t2 [--input S] [--max-steps N]
  pmtk pm check <file> --construction t1|t2 [--exhaustive | --samples N --seed K]
  pmtk pm decide-halt --fixture <name> [--cap N]

fixtures for decide-halt: counter3, counter3-stop
machine files are line-oriented ASCII; see the repository README";

/// Construction selector for the compile/cosim/check subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Construction {
    T1,
    T2,
}

#[derive(Clone, Debug, Default)]
struct Flags {
    input: Option<String>,
    max_steps: Option<u64>,
    trace: bool,
    construction: Option<Construction>,
    exhaustive: bool,
    samples: Option<u64>,
    seed: Option<u64>,
    fixture: Option<String>,
    cap: Option<u64>,
}

fn parse_flags(args: &[String]) -> Result<Flags, String> {
    let mut flags = Flags::default();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut value = |name: &str| -> Result<String, String> {
            it.next()
                .cloned()
                .ok_or_else(|| format!("{name} expects a value"))
        };
        match arg.as_str() {
            "--input" => flags.input = Some(value("--input")?),
            "--max-steps" => {
                flags.max_steps = Some(parse_count(&value("--max-steps")?, "--max-steps")?)
            }
            "--trace" => flags.trace = true,
            "--construction" => {
                flags.construction = Some(match value("--construction")?.as_str() {
                    "t1" => Construction::T1,
                    "t2" => Construction::T2,
                    other => return Err(format!("unknown construction `{other}`")),
                })
            }
            "--exhaustive" => flags.exhaustive = true,
            "--samples" => flags.samples = Some(parse_count(&value("--samples")?, "--samples")?),
            "--seed" => flags.seed = Some(parse_count(&value("--seed")?, "--seed")?),
            "--fixture" => flags.fixture = Some(value("--fixture")?),
            "--cap" => flags.cap = Some(parse_count(&value("--cap")?, "--cap")?),
            other => return Err(format!("unknown flag `{other}`")),
        }
    }
    Ok(flags)
}

fn parse_count(text: &str, flag: &str) -> Result<u64, String> {
    text.parse::<u64>()
        .map_err(|_| format!("{flag} expects a nonnegative integer, got `{text}`"))
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn usage(&mut self, message: &str) -> i32 {
        let _ = writeln!(self.err, "error: {message}");
        let _ = writeln!(self.err, "{USAGE}");
        2
    }

    fn print(&mut self, text: &str) {
        let _ = writeln!(self.out, "{text}");
    }

    fn fail(&mut self, message: &str) -> i32 {
        let _ = writeln!(self.err, "error: {message}");
        1
    }
}

fn load_machine(path: &str, ctx: &mut Ctx) -> Result<TuringMachine, i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ctx.usage(&format!("cannot read {path}: {e}")))?;
    parse_tm_file(&text).map_err(|diags| {
        let _ = writeln!(ctx.err, "parse errors in {path}:");
        for d in &diags.diagnostics {
            let _ = writeln!(ctx.err, "  {d}");
        }
        2
    })
}

fn resolve_input(tm: &TuringMachine, flags: &Flags, ctx: &mut Ctx) -> Result<Vec<Symbol>, i32> {
    let text = flags.input.clone().unwrap_or_default();
    tm.input_from_str(&text)
        .map_err(|e| ctx.usage(&e.to_string()))
}

/// Runs one invocation against the given output streams and returns the
/// process exit status.
pub fn cli_main(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut ctx = Ctx { out, err };
    let words: Vec<&str> = args.iter().map(String::as_str).collect();
    match words.as_slice() {
        ["tm", "validate", file] => {
            let tm = match load_machine(file, &mut ctx) {
                Ok(tm) => tm,
                Err(code) => return code,
            };
            let report = tm.validate();
            if report.is_ok() {
                ctx.print("ok");
                0
            } else {
                for v in &report.violations {
                    ctx.print(&format!("violation: {v}"));
                }
                1
            }
        }
        ["tm", "run", file, rest @ ..] => {
            let flags = match parse_flags(&args_from(rest)) {
                Ok(f) => f,
                Err(m) => return ctx.usage(&m),
            };
            let tm = match load_machine(file, &mut ctx) {
                Ok(tm) => tm,
                Err(code) => return code,
            };
            let report = tm.validate();
            if !report.is_ok() {
                return ctx.fail(&format!("invalid machine: {report}"));
            }
            let input = match resolve_input(&tm, &flags, &mut ctx) {
                Ok(i) => i,
                Err(code) => return code,
            };
            let run = tm
                .run(&input, flags.max_steps.unwrap_or(DEFAULT_STEP_CAP))
                .expect("input already resolved");
            if flags.trace {
                ctx.print(&render_tm_trace(&tm, &run.trace));
            }
            ctx.print(&render_tm_run(&run));
            match run.verdict {
                RunVerdict::Accepted { .. } | RunVerdict::Rejected { .. } => 0,
                RunVerdict::Running => 1,
            }
        }
        ["pm", "compile", file, rest @ ..] => {
            let flags = match parse_flags(&args_from(rest)) {
                Ok(f) => f,
                Err(m) => return ctx.usage(&m),
            };
            let Some(construction) = flags.construction else {
                return ctx.usage("--construction is required");
            };
            let tm = match load_machine(file, &mut ctx) {
                Ok(tm) => tm,
                Err(code) => return code,
            };
            let input = match resolve_input(&tm, &flags, &mut ctx) {
                Ok(i) => i,
                Err(code) => return code,
            };
            let machine_cfg = tm.start_config(&input).expect("input already resolved");
            match construction {
                Construction::T1 => {
                    let pm = match compile_t1(&tm) {
                        Ok(pm) => pm,
                        Err(e) => return ctx.fail(&e.to_string()),
                    };
                    ctx.print(&render_pm_trace_line(&pm, 1, &t1::translate(&machine_cfg)));
                }
                Construction::T2 => {
                    let pm = match compile_t2(&tm) {
                        Ok(pm) => pm,
                        Err(e) => return ctx.fail(&e.to_string()),
                    };
                    let state = t2::translate(&machine_cfg).expect("start configurations translate");
                    ctx.print(&render_pm_trace_line(&pm, 1, &state));
                }
            }
            0
        }
        ["pm", "cosim", file, rest @ ..] => {
            let flags = match parse_flags(&args_from(rest)) {
                Ok(f) => f,
                Err(m) => return ctx.usage(&m),
            };
            let Some(construction) = flags.construction else {
                return ctx.usage("--construction is required");
            };
            let tm = match load_machine(file, &mut ctx) {
                Ok(tm) => tm,
                Err(code) => return code,
            };
            let input = match resolve_input(&tm, &flags, &mut ctx) {
                Ok(i) => i,
                Err(code) => return code,
            };
            let max_steps = flags.max_steps.unwrap_or(DEFAULT_STEP_CAP);
            let ok = match construction {
                Construction::T1 => {
                    let pm = match compile_t1(&tm) {
                        Ok(pm) => pm,
                        Err(e) => return ctx.fail(&e.to_string()),
                    };
                    let report = match t1::cosim_t1(&tm, &input, max_steps) {
                        Ok(r) => r,
                        Err(e) => return ctx.fail(&e.to_string()),
                    };
                    ctx.print(&render_cosim(&pm, &tm, &report));
                    report.ok()
                }
                Construction::T2 => {
                    let pm = match compile_t2(&tm) {
                        Ok(pm) => pm,
                        Err(e) => return ctx.fail(&e.to_string()),
                    };
                    let report = match t2::cosim_t2(&tm, &input, max_steps) {
                        Ok(r) => r,
                        Err(e) => return ctx.fail(&e.to_string()),
                    };
                    ctx.print(&render_cosim(&pm, &tm, &report));
                    report.ok()
                }
            };
            if ok {
                0
            } else {
                1
            }
        }
        ["pm", "check", file, rest @ ..] => {
            let flags = match parse_flags(&args_from(rest)) {
                Ok(f) => f,
                Err(m) => return ctx.usage(&m),
            };
            let Some(construction) = flags.construction else {
                return ctx.usage("--construction is required");
            };
            if flags.exhaustive && (flags.samples.is_some() || flags.seed.is_some()) {
                return ctx.usage("--exhaustive excludes --samples/--seed");
            }
            let tm = match load_machine(file, &mut ctx) {
                Ok(tm) => tm,
                Err(code) => return code,
            };
            let seed = flags.seed.unwrap_or(1);
            let samples = flags.samples.unwrap_or(100_000);
            let report = match construction {
                Construction::T1 => {
                    let pm = match compile_t1(&tm) {
                        Ok(pm) => pm,
                        Err(e) => return ctx.fail(&e.to_string()),
                    };
                    // Exhaustive index bounds stay small; the sampled mode
                    // ranges further out.
                    let bound = if flags.exhaustive { 6 } else { 16 };
                    let (globals, particles) = t1::checker_domain(&tm, bound);
                    let sampler = if flags.exhaustive {
                        DomainSampler::exhaustive(globals, particles)
                    } else {
                        DomainSampler::randomized(seed, samples, globals, particles)
                    };
                    check_t1(&pm, &sampler)
                }
                Construction::T2 => {
                    let pm = match compile_t2(&tm) {
                        Ok(pm) => pm,
                        Err(e) => return ctx.fail(&e.to_string()),
                    };
                    let (globals, particles) = t2::checker_domain(&tm);
                    let sampler = if flags.exhaustive {
                        DomainSampler::exhaustive(globals, particles)
                    } else {
                        DomainSampler::randomized(seed, samples, globals, particles)
                    };
                    check_t2(&pm, &sampler)
                }
            };
            ctx.print(&render_check_report(&report));
            if report.all_ok() {
                0
            } else {
                1
            }
        }
        ["pm", "decide-halt", rest @ ..] => {
            let flags = match parse_flags(&args_from(rest)) {
                Ok(f) => f,
                Err(m) => return ctx.usage(&m),
            };
            let Some(fixture) = flags.fixture.as_deref() else {
                return ctx.usage("--fixture is required");
            };
            let pm = match fixture {
                "counter3" => fixtures::counter3(),
                "counter3-stop" => fixtures::counter3_stop(),
                other => {
                    return ctx.usage(&format!(
                        "unknown fixture `{other}`; available: counter3, counter3-stop"
                    ))
                }
            };
            let instance = PmState::new(0u8, Vec::new());
            let decision = match decide(&pm, &instance, flags.cap, false) {
                Ok(d) => d,
                Err(e) => return ctx.fail(&e.to_string()),
            };
            ctx.print(&render_decision(&decision));
            match decision.verdict {
                crate::halt::HaltingVerdict::Exhausted { .. } => 1,
                _ => 0,
            }
        }
        _ => ctx.usage("unknown or incomplete subcommand"),
    }
}

fn args_from(rest: &[&str]) -> Vec<String> {
    rest.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let code = cli_main(&args, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).expect("ascii output"),
            String::from_utf8(err).expect("ascii output"),
        )
    }

    #[test]
    fn usage_errors_exit_with_two() {
        let (code, _, err) = run_cli(&["pm", "frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("usage:"));

        let (code, _, _) = run_cli(&[]);
        assert_eq!(code, 2);
    }

    #[test]
    fn decide_halt_fixture_runs() {
        let (code, out, _) = run_cli(&["pm", "decide-halt", "--fixture", "counter3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "verdict=loops mu=0 lambda=3\n");

        let (code, out, _) = run_cli(&["pm", "decide-halt", "--fixture", "counter3-stop"]);
        assert_eq!(code, 0);
        assert_eq!(out, "verdict=halts t=2\n");

        let (code, _, err) = run_cli(&["pm", "decide-halt", "--fixture", "nope"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown fixture"));
    }
}
