//! The machine-readable result schema. One row describes one checked
//! instance and its outcome; every row parses back into the configuration
//! and report figures it came from.

use anyhow::{anyhow, bail, Context, Result};
use paxos_explorer::{Report, Verdict};
use paxos_model::Config;

use crate::opts::{parse_receive, parse_variant, receive_name, variant_name};

pub const HEADER: &str = "proposers,acceptors,channel_cap,maj,variant,receive_mode,verdict,\
                          states,transitions,max_depth,time_ms";

pub fn row(cfg: &Config, report: &Report) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        cfg.proposers,
        cfg.acceptors,
        cfg.channel_cap,
        cfg.maj,
        variant_name(cfg.variant),
        receive_name(cfg.receive_mode),
        report.verdict,
        report.states_explored,
        report.transitions_fired,
        report.max_depth,
        report.wall_time_ms,
    )
}

/// A row read back: the configuration it describes (learner mode and
/// channel order are not part of the schema and take their defaults) and
/// the reported figures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedRow {
    pub cfg: Config,
    pub verdict: Verdict,
    pub states: u64,
    pub transitions: u64,
    pub max_depth: u64,
    pub time_ms: u64,
}

pub fn parse_verdict(s: &str) -> Result<Verdict> {
    match s {
        "safe" => Ok(Verdict::Safe),
        "unsafe" => Ok(Verdict::Unsafe),
        "limit-exceeded" => Ok(Verdict::LimitExceeded),
        _ => bail!("unknown verdict {s:?}"),
    }
}

pub fn parse_row(line: &str) -> Result<ParsedRow> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 11 {
        bail!("expected 11 comma-separated fields, got {}: {line:?}", fields.len());
    }
    let num = |i: usize, what: &str| -> Result<u64> {
        fields[i].trim().parse().with_context(|| format!("bad {what} in row {line:?}"))
    };
    let mut cfg = Config::new(
        u8::try_from(num(0, "proposers")?).map_err(|_| anyhow!("proposers out of range"))?,
        u8::try_from(num(1, "acceptors")?).map_err(|_| anyhow!("acceptors out of range"))?,
    );
    cfg.channel_cap =
        u16::try_from(num(2, "channel_cap")?).map_err(|_| anyhow!("channel_cap out of range"))?;
    cfg = cfg
        .with_maj(u8::try_from(num(3, "maj")?).map_err(|_| anyhow!("maj out of range"))?)
        .with_variant(parse_variant(fields[4].trim())?)
        .with_receive(parse_receive(fields[5].trim())?);
    Ok(ParsedRow {
        cfg,
        verdict: parse_verdict(fields[6].trim())?,
        states: num(7, "states")?,
        transitions: num(8, "transitions")?,
        max_depth: num(9, "max_depth")?,
        time_ms: num(10, "time_ms")?,
    })
}
