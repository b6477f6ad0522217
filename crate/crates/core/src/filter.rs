//! Online reduction from an arbitrary symbol type to a dense alphabet.
//!
//! A pattern with `k` distinct symbols can only p-match a window with at most
//! `k` distinct symbols. The filter keeps the `k + 1` most recently seen
//! distinct symbols of the last `m` arrivals in a recency list and hands each
//! one a code in `0..=k`. Windows with at most `k` distinct symbols keep their
//! predecessor string; larger windows come out with `k + 1` distinct codes and
//! so still cannot match.
//!
//! List slots double as codes, so a slot is reused together with its code.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::field::FieldWord;
use crate::stream::{MatcherConfig, StreamMatcher};

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Slot {
    symbol: u64,
    time: u64,
    prev: u32,
    next: u32,
}

#[derive(Debug, Clone)]
pub struct AlphabetFilter {
    window: u64,
    slots: Vec<Slot>,
    head: u32,
    tail: u32,
    index: HashMap<u64, u32>,
    free: Vec<u32>,
    clock: u64,
}

impl AlphabetFilter {
    /// Filter for patterns with `distinct` distinct symbols and length `window`.
    pub fn new(distinct: usize, window: usize) -> Result<Self> {
        if distinct == 0 || window == 0 {
            return Err(Error::Config("filter needs a non-empty pattern".into()));
        }
        let codes = distinct + 1;
        if codes > NIL as usize {
            return Err(Error::Config(format!(
                "{distinct} distinct symbols is too many"
            )));
        }
        Ok(AlphabetFilter {
            window: window as u64,
            slots: vec![
                Slot {
                    symbol: 0,
                    time: 0,
                    prev: NIL,
                    next: NIL,
                };
                codes
            ],
            head: NIL,
            tail: NIL,
            index: HashMap::with_capacity(codes),
            free: (0..codes as u32).rev().collect(),
            clock: 0,
        })
    }

    /// Size of the output alphabet.
    pub fn codes(&self) -> usize {
        self.slots.len()
    }

    pub fn window(&self) -> usize {
        self.window as usize
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Code currently held by `symbol`, if it is live.
    pub fn code_of(&self, symbol: u64) -> Option<u32> {
        self.index.get(&symbol).copied()
    }

    /// Live `(symbol, last arrival)` pairs, oldest first.
    pub fn live(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::with_capacity(self.len());
        let mut at = self.head;
        while at != NIL {
            let s = self.slots[at as usize];
            out.push((s.symbol, s.time));
            at = s.next;
        }
        out
    }

    /// Slots, dictionary entries and the scalars.
    pub fn live_words(&self) -> usize {
        4 * self.slots.len() + 2 * self.index.len() + self.free.len() + 5
    }

    fn unlink(&mut self, at: u32) {
        let Slot { prev, next, .. } = self.slots[at as usize];
        match prev {
            NIL => self.head = next,
            p => self.slots[p as usize].next = next,
        }
        match next {
            NIL => self.tail = prev,
            n => self.slots[n as usize].prev = prev,
        }
    }

    fn link_tail(&mut self, at: u32) {
        let slot = &mut self.slots[at as usize];
        slot.prev = self.tail;
        slot.next = NIL;
        match self.tail {
            NIL => self.head = at,
            t => self.slots[t as usize].next = at,
        }
        self.tail = at;
    }

    fn evict_head(&mut self) {
        let at = self.head;
        self.unlink(at);
        self.index.remove(&self.slots[at as usize].symbol);
        self.free.push(at);
    }

    /// Map the next raw symbol to its code.
    pub fn step(&mut self, raw: u64) -> u32 {
        let t = self.clock;
        self.clock += 1;
        // arrival times are distinct, so at most one entry leaves the window per step
        if self.head != NIL && self.slots[self.head as usize].time + self.window <= t {
            self.evict_head();
        }
        if let Some(&at) = self.index.get(&raw) {
            self.unlink(at);
            self.slots[at as usize].time = t;
            self.link_tail(at);
            return at;
        }
        if self.free.is_empty() {
            self.evict_head();
        }
        let at = self.free.pop().expect("an evicted slot is free");
        self.slots[at as usize].symbol = raw;
        self.slots[at as usize].time = t;
        self.link_tail(at);
        self.index.insert(raw, at);
        at
    }
}

/// Relabel `pattern` to `0..k` in order of first occurrence; returns the
/// relabelled pattern and `k`.
pub fn dense_pattern<T: Copy + Eq + Hash>(pattern: &[T]) -> (Vec<u32>, usize) {
    let mut ids: HashMap<T, u32> = HashMap::new();
    let dense = pattern
        .iter()
        .map(|c| {
            let n = ids.len() as u32;
            *ids.entry(*c).or_insert(n)
        })
        .collect();
    (dense, ids.len())
}

/// A filter feeding a [`StreamMatcher`], for streams over any `u64` symbols.
#[derive(Debug, Clone)]
pub struct FilteredMatcher<W: FieldWord = u64> {
    filter: AlphabetFilter,
    matcher: StreamMatcher<W>,
}

impl<W: FieldWord> FilteredMatcher<W> {
    pub fn new(pattern: &[u64], config: &MatcherConfig) -> Result<Self> {
        let (dense, k) = dense_pattern(pattern);
        let filter = AlphabetFilter::new(k, pattern.len())?;
        let matcher = StreamMatcher::new(&dense, filter.codes(), config)?;
        Ok(FilteredMatcher { filter, matcher })
    }

    pub fn filter(&self) -> &AlphabetFilter {
        &self.filter
    }

    pub fn matcher(&self) -> &StreamMatcher<W> {
        &self.matcher
    }

    pub fn step(&mut self, raw: u64) -> Result<bool> {
        let code = self.filter.step(raw);
        self.matcher.step(code)
    }

    /// Start positions of all matches in `text`.
    pub fn run(&mut self, text: &[u64]) -> Result<Vec<u64>> {
        let m = self.matcher.pattern_len() as u64;
        let mut out = Vec::new();
        for &c in text {
            if self.step(c)? {
                out.push(self.matcher.clock() - m);
            }
        }
        Ok(out)
    }
}
