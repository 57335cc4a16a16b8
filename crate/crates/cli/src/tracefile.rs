//! Counterexample trace files: a key=value header carrying the full
//! configuration, then one line per step:
//!
//! ```text
//! step-index | actor | rule | message | local-variable changes
//! ```
//!
//! The format is line-oriented so traces diff cleanly and can be audited by
//! eye; `replay` re-applies one against the transition relation and checks
//! that it really ends in a violation.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use paxos_explorer::TraceStep;
use paxos_model::{
    describe_transition, enabled_transitions, initial_state, Config, GlobalState,
};

use crate::opts;

pub fn render_trace(cfg: &Config, steps: &[TraceStep]) -> String {
    let mut out = String::new();
    out.push_str("# counterexample trace; verify with: paxos-mc replay --trace <this file>\n");
    out.push_str(&opts::render_config(cfg));
    out.push('\n');
    for (i, step) in steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "{i} | {} | {} | {} | {}",
            step.actor, step.rule, step.message, step.locals
        );
    }
    out
}

pub fn write_trace(path: &Path, cfg: &Config, steps: &[TraceStep]) -> Result<()> {
    std::fs::write(path, render_trace(cfg, steps))
        .with_context(|| format!("cannot write trace file {}", path.display()))
}

/// One step as read back from a file. The numeric index is checked during
/// parsing and is therefore the position in the vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedStep {
    pub actor: String,
    pub rule: String,
    pub message: String,
    pub locals: String,
}

impl fmt::Display for ParsedStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {} | {}", self.actor, self.rule, self.message, self.locals)
    }
}

pub fn parse_trace(text: &str) -> Result<(Config, Vec<ParsedStep>)> {
    let mut pairs = HashMap::new();
    let mut steps: Vec<ParsedStep> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.contains('|') {
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            if parts.len() != 5 {
                bail!("line {}: expected 5 |-separated fields, got {}", lineno + 1, parts.len());
            }
            let index: usize = parts[0]
                .parse()
                .with_context(|| format!("line {}: bad step index {:?}", lineno + 1, parts[0]))?;
            if index != steps.len() {
                bail!("line {}: step index {index} out of order (expected {})", lineno + 1, steps.len());
            }
            steps.push(ParsedStep {
                actor: parts[1].to_string(),
                rule: parts[2].to_string(),
                message: parts[3].to_string(),
                locals: parts[4].to_string(),
            });
        } else {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value or a step", lineno + 1))?;
            pairs.insert(key.trim().to_string(), value.trim().to_string());
        }
    }
    let cfg = opts::config_from_pairs(&pairs)
        .with_context(|| "trace header does not describe a valid configuration")?;
    Ok((cfg, steps))
}

/// A step that matched no enabled transition during replay.
#[derive(Debug)]
pub struct StepMismatch {
    pub step: usize,
    pub wanted: String,
    pub enabled: Vec<String>,
}

impl fmt::Display for StepMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "step {}: no enabled transition matches", self.step)?;
        writeln!(f, "  wanted:  {}", self.wanted)?;
        const SHOWN: usize = 8;
        for line in self.enabled.iter().take(SHOWN) {
            writeln!(f, "  enabled: {line}")?;
        }
        if self.enabled.len() > SHOWN {
            writeln!(f, "  … and {} more", self.enabled.len() - SHOWN)?;
        }
        Ok(())
    }
}

impl std::error::Error for StepMismatch {}

/// Re-apply a parsed trace from the initial state. Each step must match an
/// enabled transition on all four descriptive fields; ties (identical
/// copies of one message in different slots) lead to the same successor, so
/// the first match is taken.
pub fn replay_steps(cfg: &Config, steps: &[ParsedStep]) -> Result<GlobalState, Box<StepMismatch>> {
    let mut state = initial_state(cfg).expect("configuration was validated during parsing");
    for (i, step) in steps.iter().enumerate() {
        let mut seen = Vec::new();
        let mut found = None;
        for tid in enabled_transitions(&state, cfg) {
            let (desc, succ) =
                describe_transition(&state, cfg, tid).expect("enumerated transitions apply");
            if desc.actor == step.actor
                && desc.rule == step.rule
                && desc.message == step.message
                && desc.locals == step.locals
            {
                found = Some(succ);
                break;
            }
            seen.push(format!(
                "{} | {} | {} | {}",
                desc.actor, desc.rule, desc.message, desc.locals
            ));
        }
        match found {
            Some(next) => state = next,
            None => {
                return Err(Box::new(StepMismatch {
                    step: i,
                    wanted: step.to_string(),
                    enabled: seen,
                }))
            }
        }
    }
    Ok(state)
}
