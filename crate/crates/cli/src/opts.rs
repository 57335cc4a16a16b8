//! Option resolution shared by the subcommands: value syntax for the
//! semantic knobs, flat key=value config files, and the merge rule
//! (command line overrides file, file overrides defaults).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use paxos_explorer::Limits;
use paxos_model::{ChannelOrder, Config, LearnerMode, ReceiveMode, Variant};

pub fn parse_variant(s: &str) -> Result<Variant> {
    match s {
        "baseline" => Ok(Variant::Baseline),
        "optimized" => Ok(Variant::Optimized),
        _ => bail!("unknown variant {s:?} (expected baseline|optimized)"),
    }
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Baseline => "baseline",
        Variant::Optimized => "optimized",
    }
}

pub fn parse_learners(s: &str) -> Result<LearnerMode> {
    if s == "abstract" {
        return Ok(LearnerMode::Abstract);
    }
    if let Some(n) = s.strip_prefix("concrete:") {
        let n: u8 = n.parse().with_context(|| format!("bad learner count in {s:?}"))?;
        return Ok(LearnerMode::Concrete(n));
    }
    bail!("unknown learner mode {s:?} (expected abstract|concrete:N)")
}

pub fn learners_name(mode: LearnerMode) -> String {
    match mode {
        LearnerMode::Abstract => "abstract".to_string(),
        LearnerMode::Concrete(n) => format!("concrete:{n}"),
    }
}

pub fn parse_receive(s: &str) -> Result<ReceiveMode> {
    match s {
        "first" => Ok(ReceiveMode::FirstMatch),
        "any" => Ok(ReceiveMode::AnyMatch),
        _ => bail!("unknown receive mode {s:?} (expected first|any)"),
    }
}

pub fn receive_name(mode: ReceiveMode) -> &'static str {
    match mode {
        ReceiveMode::FirstMatch => "first",
        ReceiveMode::AnyMatch => "any",
    }
}

pub fn parse_order(s: &str) -> Result<ChannelOrder> {
    match s {
        "sorted" => Ok(ChannelOrder::Sorted),
        "fifo" => Ok(ChannelOrder::Fifo),
        _ => bail!("unknown channel order {s:?} (expected sorted|fifo)"),
    }
}

pub fn order_name(order: ChannelOrder) -> &'static str {
    match order {
        ChannelOrder::Sorted => "sorted",
        ChannelOrder::Fifo => "fifo",
    }
}

/// Channel capacity: an explicit size, or `auto` = acceptors × proposers
/// (room for every message the instance can ever send, so blocking sends
/// never bite).
pub fn parse_cap(s: &str, proposers: u8, acceptors: u8) -> Result<u16> {
    if s == "auto" {
        return Ok(u16::from(acceptors) * u16::from(proposers));
    }
    s.parse().with_context(|| format!("bad channel capacity {s:?} (expected auto|number)"))
}

pub fn parse_bool(s: &str) -> Result<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => bail!("bad boolean {s:?} (expected true|false)"),
    }
}

/// Comma-separated u8 list; an empty string is an empty list.
pub fn parse_u8_list(s: &str) -> Result<Vec<u8>> {
    s.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| part.parse().with_context(|| format!("bad number {part:?} in list")))
        .collect()
}

/// Flat key=value file mirroring the flags. `#` starts a comment; blank
/// lines are ignored. Returns the raw pairs for [`Settings::merge_file`].
pub fn load_key_values(path: &Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    parse_key_values(&text)
}

pub fn parse_key_values(text: &str) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected key = value, got {raw:?}", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// One instance plus search bounds, assembled from defaults, then an
/// optional config file, then the command line — later sources win.
#[derive(Clone, Debug)]
pub struct Settings {
    pub proposers: Option<u8>,
    pub acceptors: Option<u8>,
    pub maj: Option<u8>,
    pub cap: Option<String>,
    pub variant: Option<Variant>,
    pub learners: Option<LearnerMode>,
    pub receive: Option<ReceiveMode>,
    pub order: Option<ChannelOrder>,
    pub faithful_optimized_acceptor: bool,
    pub workers: Option<usize>,
    pub max_states: Option<u64>,
    pub max_depth: Option<u64>,
    pub time_budget: Option<u64>,
}

impl Settings {
    pub fn empty() -> Settings {
        Settings {
            proposers: None,
            acceptors: None,
            maj: None,
            cap: None,
            variant: None,
            learners: None,
            receive: None,
            order: None,
            faithful_optimized_acceptor: false,
            workers: None,
            max_states: None,
            max_depth: None,
            time_budget: None,
        }
    }

    /// Fill every field the command line left unset from the file pairs.
    /// Unknown keys are errors: a typo silently ignored would change the
    /// checked instance.
    pub fn merge_file(&mut self, pairs: &HashMap<String, String>) -> Result<()> {
        for (key, value) in pairs {
            match key.as_str() {
                "proposers" => fill(&mut self.proposers, value.parse().ok(), key, value)?,
                "acceptors" => fill(&mut self.acceptors, value.parse().ok(), key, value)?,
                "maj" => fill(&mut self.maj, value.parse().ok(), key, value)?,
                "cap" => fill(&mut self.cap, Some(value.clone()), key, value)?,
                "variant" => fill(&mut self.variant, parse_variant(value).ok(), key, value)?,
                "learners" => fill(&mut self.learners, parse_learners(value).ok(), key, value)?,
                "receive" => fill(&mut self.receive, parse_receive(value).ok(), key, value)?,
                "order" => fill(&mut self.order, parse_order(value).ok(), key, value)?,
                "faithful-optimized-acceptor" => {
                    self.faithful_optimized_acceptor |= parse_bool(value)?;
                }
                "workers" => fill(&mut self.workers, value.parse().ok(), key, value)?,
                "max-states" => fill(&mut self.max_states, value.parse().ok(), key, value)?,
                "max-depth" => fill(&mut self.max_depth, value.parse().ok(), key, value)?,
                "time-budget" => fill(&mut self.time_budget, value.parse().ok(), key, value)?,
                _ => bail!("unknown config key {key:?}"),
            }
        }
        Ok(())
    }

    /// Resolve to a validated configuration plus limits. Requires the
    /// instance size to be pinned down by now.
    pub fn resolve(&self) -> Result<(Config, Limits)> {
        let proposers =
            self.proposers.ok_or_else(|| anyhow!("--proposers is required (flag or config file)"))?;
        let acceptors =
            self.acceptors.ok_or_else(|| anyhow!("--acceptors is required (flag or config file)"))?;
        let mut cfg = Config::new(proposers, acceptors);
        if let Some(maj) = self.maj {
            cfg = cfg.with_maj(maj);
        }
        if let Some(cap) = &self.cap {
            cfg.channel_cap = parse_cap(cap, proposers, acceptors)?;
        }
        if let Some(variant) = self.variant {
            cfg = cfg.with_variant(variant);
        }
        if let Some(learners) = self.learners {
            cfg = cfg.with_learners(learners);
        }
        if let Some(receive) = self.receive {
            cfg = cfg.with_receive(receive);
        }
        if let Some(order) = self.order {
            cfg = cfg.with_order(order);
        }
        cfg.faithful_optimized_acceptor = self.faithful_optimized_acceptor;
        cfg.validate()?;
        let limits = Limits {
            max_states: self.max_states.unwrap_or(0),
            max_depth: self.max_depth.unwrap_or(0),
            time_budget_secs: self.time_budget.unwrap_or(0),
        };
        Ok((cfg, limits))
    }
}

fn fill<T>(slot: &mut Option<T>, parsed: Option<T>, key: &str, value: &str) -> Result<()> {
    let parsed = parsed.ok_or_else(|| anyhow!("bad value {value:?} for config key {key:?}"))?;
    if slot.is_none() {
        *slot = Some(parsed);
    }
    Ok(())
}

/// The configuration as config-file / trace-header lines, the inverse of
/// [`Settings::merge_file`] + [`Settings::resolve`].
pub fn render_config(cfg: &Config) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "proposers = {}", cfg.proposers);
    let _ = writeln!(out, "acceptors = {}", cfg.acceptors);
    let _ = writeln!(out, "maj = {}", cfg.maj);
    let _ = writeln!(out, "cap = {}", cfg.channel_cap);
    let _ = writeln!(out, "variant = {}", variant_name(cfg.variant));
    let _ = writeln!(out, "learners = {}", learners_name(cfg.learner_mode));
    let _ = writeln!(out, "receive = {}", receive_name(cfg.receive_mode));
    let _ = writeln!(out, "order = {}", order_name(cfg.order));
    if cfg.faithful_optimized_acceptor {
        let _ = writeln!(out, "faithful-optimized-acceptor = true");
    }
    out
}

/// Rebuild a configuration from config-file pairs alone (used by trace
/// replay, where the file header is the only source).
pub fn config_from_pairs(pairs: &HashMap<String, String>) -> Result<Config> {
    let mut settings = Settings::empty();
    settings.merge_file(pairs)?;
    let (cfg, _) = settings.resolve()?;
    Ok(cfg)
}
