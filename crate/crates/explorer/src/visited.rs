//! Exact visited-state storage: a flat arena of fixed-stride encodings plus
//! an open-addressing index. Lookups compare full encodings on hash
//! collisions, so the set is exact — no probabilistic compaction, and a hash
//! collision can never merge two distinct states.

use std::hash::{Hash, Hasher};

const EMPTY: u32 = u32::MAX;

/// Insert-if-absent set of fixed-length byte strings. Inserted strings get
/// dense ids `0, 1, 2, …` in insertion order, which the search uses both as
/// frontier handles and as indices into its predecessor table.
pub struct VisitedSet {
    stride: usize,
    /// Encoding `id` lives at `arena[id * stride .. (id + 1) * stride]`.
    arena: Vec<u8>,
    /// Open-addressing table: slot -> id of the entry probing there.
    ids: Vec<u32>,
    /// Cached hash per occupied slot, so growth never rehashes encodings.
    hashes: Vec<u64>,
    len: u32,
}

impl VisitedSet {
    pub fn new(stride: usize) -> VisitedSet {
        assert!(stride > 0);
        let slots = 1 << 16;
        VisitedSet {
            stride,
            arena: Vec::new(),
            ids: vec![EMPTY; slots],
            hashes: vec![0; slots],
            len: 0,
        }
    }

    pub fn len(&self) -> u64 {
        u64::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The encoding stored under `id`.
    pub fn bytes_of(&self, id: u32) -> &[u8] {
        let start = id as usize * self.stride;
        &self.arena[start..start + self.stride]
    }

    /// Insert `bytes` if absent. Returns its id and whether it was new.
    pub fn get_or_insert(&mut self, bytes: &[u8]) -> (u32, bool) {
        debug_assert_eq!(bytes.len(), self.stride);
        if (self.len as usize + 1) * 10 >= self.ids.len() * 7 {
            self.grow();
        }
        let hash = hash_bytes(bytes);
        let mask = self.ids.len() - 1;
        let mut slot = hash as usize & mask;
        loop {
            let id = self.ids[slot];
            if id == EMPTY {
                let new_id = self.len;
                self.ids[slot] = new_id;
                self.hashes[slot] = hash;
                self.arena.extend_from_slice(bytes);
                self.len += 1;
                return (new_id, true);
            }
            if self.hashes[slot] == hash && self.bytes_of(id) == bytes {
                return (id, false);
            }
            slot = (slot + 1) & mask;
        }
    }

    fn grow(&mut self) {
        let new_slots = self.ids.len() * 2;
        let mask = new_slots - 1;
        let mut ids = vec![EMPTY; new_slots];
        let mut hashes = vec![0u64; new_slots];
        for (old_slot, &id) in self.ids.iter().enumerate() {
            if id == EMPTY {
                continue;
            }
            let hash = self.hashes[old_slot];
            let mut slot = hash as usize & mask;
            while ids[slot] != EMPTY {
                slot = (slot + 1) & mask;
            }
            ids[slot] = id;
            hashes[slot] = hash;
        }
        self.ids = ids;
        self.hashes = hashes;
    }
}

fn hash_bytes(bytes: &[u8]) -> u64 {
    // The std hasher is keyed with fixed constants via `new()`, so hashes —
    // and therefore probe sequences — are identical across runs.
    let mut h = std::collections::hash_map::DefaultHasher::new();
    bytes.hash(&mut h);
    h.finish()
}
