//! Wire messages for the four protocol channels, and the receive patterns
//! used to select them.

use std::fmt;
use std::str::FromStr;

/// A protocol message. Each channel carries exactly one variant, but a shared
/// enum keeps the canonical total order (variant tag, then field tuple,
/// lexicographically — exactly what the derived `Ord` gives) in one place for
/// sorted-channel insertion.
///
/// Field conventions: rounds are ≥ 1 and owned by a single proposer;
/// `acceptor_id` ranges over `0..acceptors`; the signed fields use −1 as the
/// "undefined" sentinel, and `vrnd == -1` iff `vval == -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Message {
    /// Phase-1 announcement of `round`, addressed to one acceptor.
    Prepare { acceptor_id: u8, round: u8 },
    /// An acceptor's vote for `round`, carrying the highest previously
    /// accepted (round, value) pair, or (−1, −1) if it has accepted nothing.
    Promise { round: u8, vrnd: i16, vval: i16 },
    /// Phase-2 proposal of `value` in `round`, addressed to one acceptor.
    Accept { acceptor_id: u8, round: u8, value: i16 },
    /// Notification that `acceptor_id` accepted (`round`, `value`).
    Learn { acceptor_id: u8, round: u8, value: i16 },
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Message::Prepare { acceptor_id, round } => {
                write!(f, "Prepare(acceptor={acceptor_id}, round={round})")
            }
            Message::Promise { round, vrnd, vval } => {
                write!(f, "Promise(round={round}, vrnd={vrnd}, vval={vval})")
            }
            Message::Accept { acceptor_id, round, value } => {
                write!(f, "Accept(acceptor={acceptor_id}, round={round}, value={value})")
            }
            Message::Learn { acceptor_id, round, value } => {
                write!(f, "Learn(acceptor={acceptor_id}, round={round}, value={value})")
            }
        }
    }
}

/// Error from [`Message::from_str`]: the text is not a rendered message.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse message from {text:?}")]
pub struct ParseMessageError {
    pub text: String,
}

impl FromStr for Message {
    type Err = ParseMessageError;

    /// Parses the exact format produced by `Display` (used when replaying
    /// trace files). Whitespace around fields is tolerated.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseMessageError { text: s.to_owned() };
        let s = s.trim();
        let open = s.find('(').ok_or_else(err)?;
        let close = s.strip_suffix(')').ok_or_else(err)?;
        let kind = &s[..open];
        let mut fields = std::collections::HashMap::new();
        for part in close[open + 1..].split(',') {
            let (key, value) = part.split_once('=').ok_or_else(err)?;
            let value: i32 = value.trim().parse().map_err(|_| err())?;
            fields.insert(key.trim().to_owned(), value);
        }
        let get = |key: &str| fields.get(key).copied().ok_or_else(err);
        let msg = match kind {
            "Prepare" => Message::Prepare {
                acceptor_id: u8::try_from(get("acceptor")?).map_err(|_| err())?,
                round: u8::try_from(get("round")?).map_err(|_| err())?,
            },
            "Promise" => Message::Promise {
                round: u8::try_from(get("round")?).map_err(|_| err())?,
                vrnd: i16::try_from(get("vrnd")?).map_err(|_| err())?,
                vval: i16::try_from(get("vval")?).map_err(|_| err())?,
            },
            "Accept" => Message::Accept {
                acceptor_id: u8::try_from(get("acceptor")?).map_err(|_| err())?,
                round: u8::try_from(get("round")?).map_err(|_| err())?,
                value: i16::try_from(get("value")?).map_err(|_| err())?,
            },
            "Learn" => Message::Learn {
                acceptor_id: u8::try_from(get("acceptor")?).map_err(|_| err())?,
                round: u8::try_from(get("round")?).map_err(|_| err())?,
                value: i16::try_from(get("value")?).map_err(|_| err())?,
            },
            _ => return Err(err()),
        };
        Ok(msg)
    }
}

/// A receive pattern: fixes some message fields and leaves the rest free,
/// like Spin's `ch??eval(x),y` selectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// Any `Prepare` addressed to this acceptor.
    PrepareFor { acceptor_id: u8 },
    /// Any `Promise` for this round.
    PromiseFor { round: u8 },
    /// Any `Accept` addressed to this acceptor.
    AcceptFor { acceptor_id: u8 },
    /// Any `Learn` message.
    AnyLearn,
}

impl Pattern {
    /// Whether `m` matches the fixed fields of this pattern.
    pub fn matches(&self, m: &Message) -> bool {
        match (*self, *m) {
            (Pattern::PrepareFor { acceptor_id }, Message::Prepare { acceptor_id: a, .. }) => {
                a == acceptor_id
            }
            (Pattern::PromiseFor { round }, Message::Promise { round: r, .. }) => r == round,
            (Pattern::AcceptFor { acceptor_id }, Message::Accept { acceptor_id: a, .. }) => {
                a == acceptor_id
            }
            (Pattern::AnyLearn, Message::Learn { .. }) => true,
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_lexicographic_over_variant_then_fields() {
        let p01 = Message::Prepare { acceptor_id: 0, round: 1 };
        let p02 = Message::Prepare { acceptor_id: 0, round: 2 };
        let p11 = Message::Prepare { acceptor_id: 1, round: 1 };
        assert!(p01 < p02);
        assert!(p02 < p11);
        // Variant tag dominates: every Prepare sorts before every Promise.
        let pr = Message::Promise { round: 1, vrnd: -1, vval: -1 };
        assert!(p11 < pr);
        // Undefined (−1, −1) promises sort before valued ones of the same round.
        let pr_valued = Message::Promise { round: 1, vrnd: 1, vval: 7 };
        assert!(pr < pr_valued);
    }

    #[test]
    fn patterns_fix_the_address_fields_only() {
        let prepare = Message::Prepare { acceptor_id: 1, round: 3 };
        assert!(Pattern::PrepareFor { acceptor_id: 1 }.matches(&prepare));
        assert!(!Pattern::PrepareFor { acceptor_id: 0 }.matches(&prepare));
        assert!(!Pattern::AnyLearn.matches(&prepare));

        let promise = Message::Promise { round: 2, vrnd: 1, vval: 1 };
        assert!(Pattern::PromiseFor { round: 2 }.matches(&promise));
        assert!(!Pattern::PromiseFor { round: 1 }.matches(&promise));

        let learn = Message::Learn { acceptor_id: 0, round: 1, value: 1 };
        assert!(Pattern::AnyLearn.matches(&learn));
        assert!(!Pattern::AcceptFor { acceptor_id: 0 }.matches(&learn));
    }

    #[test]
    fn display_round_trips_through_from_str() {
        let messages = [
            Message::Prepare { acceptor_id: 0, round: 1 },
            Message::Promise { round: 2, vrnd: -1, vval: -1 },
            Message::Promise { round: 1, vrnd: 3, vval: 7 },
            Message::Accept { acceptor_id: 3, round: 2, value: 2 },
            Message::Learn { acceptor_id: 1, round: 1, value: 1 },
        ];
        for m in messages {
            let rendered = m.to_string();
            assert_eq!(rendered.parse::<Message>().unwrap(), m, "through {rendered:?}");
        }
        assert!("Prepare(acceptor=0)".parse::<Message>().is_err());
        assert!("Garbage(x=1)".parse::<Message>().is_err());
    }
}
