//! Predecessor strings.
//!
//! `pred(S)[j]` is the distance back to the previous occurrence of `S[j]`, or
//! 0 if there is none. Two equal-length strings parameterize-match exactly
//! when their predecessor strings are equal.
//!
//! Offline predecessor strings use plain `usize` with 0 for "no previous
//! occurrence". Streaming values are global (relative to the start of the
//! stream) and use [`Pred`], which keeps "never seen" apart from any finite
//! distance so that the window comparison can treat it as infinitely far back.

use crate::error::{Error, Result};

/// Global predecessor distance of a stream position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pred(u64);

impl Pred {
    /// The symbol has not occurred before.
    pub const NEVER: Pred = Pred(u64::MAX);

    pub fn distance(d: u64) -> Pred {
        debug_assert!(d > 0 && d < u64::MAX);
        Pred(d)
    }

    pub fn finite(self) -> Option<u64> {
        (self != Pred::NEVER).then_some(self.0)
    }

    /// Value as it appears in a predecessor string: 0 for never seen.
    #[inline]
    pub fn value(self) -> u64 {
        if self == Pred::NEVER {
            0
        } else {
            self.0
        }
    }

    /// Distance with never-seen read as infinity.
    #[inline]
    pub fn raw(self) -> u64 {
        self.0
    }
}

/// Predecessor string of a whole sequence.
pub fn pred_string<T: Copy + Eq + std::hash::Hash>(s: &[T]) -> Vec<usize> {
    let mut last = std::collections::HashMap::with_capacity(s.len().min(1 << 16));
    s.iter()
        .enumerate()
        .map(|(j, &c)| match last.insert(c, j) {
            Some(prev) => j - prev,
            None => 0,
        })
        .collect()
}

/// Most recent absolute index of each symbol of a dense alphabet.
#[derive(Debug, Clone)]
pub struct LastOccurrence {
    table: Vec<u64>,
}

const UNSEEN: u64 = u64::MAX;

impl LastOccurrence {
    pub fn new(alphabet: usize) -> Self {
        LastOccurrence {
            table: vec![UNSEEN; alphabet],
        }
    }

    pub fn alphabet(&self) -> usize {
        self.table.len()
    }

    /// Global predecessor of symbol `sym` arriving at index `i`, recording
    /// the arrival.
    #[inline]
    pub fn step(&mut self, sym: u32, i: u64) -> Result<Pred> {
        let alphabet = self.table.len();
        let slot = self.table.get_mut(sym as usize).ok_or(Error::Alphabet {
            index: i,
            symbol: sym as u64,
            alphabet,
        })?;
        let prev = std::mem::replace(slot, i);
        Ok(if prev == UNSEEN {
            Pred::NEVER
        } else {
            Pred::distance(i - prev)
        })
    }
}

/// Reinterpret a global predecessor at offset `j` of a window: anything
/// pointing before the window start reads as 0.
#[inline]
pub fn window_relative(global: Pred, j: usize) -> usize {
    match global.finite() {
        Some(d) if d <= j as u64 => d as usize,
        _ => 0,
    }
}

/// Does the text position with global predecessor `global_t` extend a
/// length-`r` match whose next pattern predecessor is `pred_p`?
#[inline]
pub fn pmatch_compare(pred_p: usize, global_t: Pred, r: usize) -> bool {
    pred_p == window_relative(global_t, r)
}
