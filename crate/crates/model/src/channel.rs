//! Bounded message channels with a canonical (sorted) or FIFO representation.

use crate::message::{Message, Pattern};

/// How a channel arranges its contents.
///
/// `Sorted` models Spin's ordered insertion `!!`: contents stay nondecreasing
/// under the message order, so states that differ only in arrival order of
/// the same multiset collapse to one representation. `Fifo` models plain `!`
/// and keeps arrival order, distinguishing permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelOrder {
    Sorted,
    Fifo,
}

/// Which matching messages a receive may take.
///
/// `FirstMatch` is Spin's `??`: the oldest message (in queue order) matching
/// the pattern. `AnyMatch` lets the transition enumerator fan out one branch
/// per *distinct* matching message, modelling fully unordered reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReceiveMode {
    FirstMatch,
    AnyMatch,
}

/// A bounded multiset of messages. A full channel never drops or errors; it
/// disables the sending transition instead (Spin's blocking-send semantics).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Channel {
    contents: Vec<Message>,
    capacity: usize,
    order: ChannelOrder,
}

impl Channel {
    pub fn new(capacity: usize, order: ChannelOrder) -> Self {
        Channel { contents: Vec::new(), capacity, order }
    }

    pub fn len(&self) -> usize {
        self.contents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contents.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.contents.len() >= self.capacity
    }

    /// Free slots left before the channel blocks senders.
    pub fn free(&self) -> usize {
        self.capacity - self.contents.len()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn order(&self) -> ChannelOrder {
        self.order
    }

    /// Contents in queue order (sorted order for `Sorted` channels).
    pub fn contents(&self) -> &[Message] {
        &self.contents
    }

    /// Inserts `m`, or returns `None` when the channel is full.
    pub fn insert(&self, m: Message) -> Option<Channel> {
        let mut next = self.clone();
        next.insert_in_place(m).then_some(next)
    }

    /// In-place insert used by the transition functions; `false` means full.
    pub(crate) fn insert_in_place(&mut self, m: Message) -> bool {
        if self.is_full() {
            return false;
        }
        match self.order {
            ChannelOrder::Fifo => self.contents.push(m),
            ChannelOrder::Sorted => {
                let at = self.contents.partition_point(|x| x <= &m);
                self.contents.insert(at, m);
            }
        }
        true
    }

    /// Removes and returns the first message matching `pattern`, or `None`
    /// when nothing matches (the receiving transition is disabled).
    pub fn receive(&self, pattern: Pattern) -> Option<(Message, Channel)> {
        let at = self.first_match(pattern)?;
        let mut next = self.clone();
        let m = next.remove_at(at);
        Some((m, next))
    }

    /// Returns the first message matching `pattern` without removing it.
    pub fn peek(&self, pattern: Pattern) -> Option<Message> {
        self.first_match(pattern).map(|at| self.contents[at])
    }

    /// Index of the oldest message matching `pattern`.
    pub fn first_match(&self, pattern: Pattern) -> Option<usize> {
        self.contents.iter().position(|m| pattern.matches(m))
    }

    /// Indices a receive of `pattern` may take under `mode`: the single
    /// oldest match for `FirstMatch`, or the first occurrence of every
    /// distinct matching message for `AnyMatch` (equal copies are
    /// interchangeable in a multiset, so one branch each suffices).
    pub fn match_indices(&self, pattern: Pattern, mode: ReceiveMode) -> Vec<usize> {
        match mode {
            ReceiveMode::FirstMatch => self.first_match(pattern).into_iter().collect(),
            ReceiveMode::AnyMatch => self.distinct_match_indices(pattern),
        }
    }

    /// First occurrence index of each distinct message matching `pattern`,
    /// ascending.
    pub fn distinct_match_indices(&self, pattern: Pattern) -> Vec<usize> {
        let mut seen: Vec<Message> = Vec::new();
        let mut indices = Vec::new();
        for (at, m) in self.contents.iter().enumerate() {
            if pattern.matches(m) && !seen.contains(m) {
                seen.push(*m);
                indices.push(at);
            }
        }
        indices
    }

    /// Removes the message at `index` (from a prior match enumeration).
    pub(crate) fn remove_at(&mut self, index: usize) -> Message {
        self.contents.remove(index)
    }
}
