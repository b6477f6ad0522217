//! Deterministic streaming matcher for patterns with small p-period.
//!
//! A parameterized KMP: the state is the length `r` of the longest pattern
//! prefix that p-matches the processed text suffix. On a mismatch the prefix
//! is shifted by its p-period. The prefix table is kept run-length encoded and
//! `pred(P)` is kept as residue columns, so the streaming state is
//! `O(|Σ| + ρ)` words.
//!
//! Inside a run of equal prefix periods the candidate lengths form an
//! arithmetic progression, and along it the pattern predecessor stays
//! constant until it drops to zero. A failed comparison therefore rules out
//! whole stretches of the run at once; the next candidate worth testing is
//! computed in `O(1)`.
//!
//! Work per arrival is capped (two shifts, four steps). Whatever does not fit
//! is deferred to a FIFO of pending predecessor values and reported as a
//! non-match; the cap is large enough that the FIFO is always drained before
//! the next true match completes.

use std::collections::VecDeque;

use crate::analysis::{CompressedPred, FirstOccurrenceList, PatternProfile, RunLengthPeriodTable};
use crate::error::Result;
use crate::pred::{pmatch_compare, LastOccurrence, Pred};

/// Pattern shifts allowed per arrival.
pub const SHIFT_BUDGET: usize = 2;
/// Comparisons, shifts and cursor moves allowed per arrival.
pub const STEP_BUDGET: usize = 4;

/// Counters for one deterministic matcher.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DetStats {
    pub arrivals: u64,
    pub total_shifts: u64,
    pub max_shifts: usize,
    pub max_steps: usize,
    pub max_pending: usize,
    pub peak_words: usize,
    pub violations: u64,
}

/// The matcher without its own last-occurrence table; it is fed global
/// predecessor values.
#[derive(Debug, Clone)]
pub struct DetCore {
    m: usize,
    pred: CompressedPred,
    runs: RunLengthPeriodTable,
    firsts: FirstOccurrenceList,
    r: usize,
    cursor: usize,
    pending: VecDeque<Pred>,
    last_steps: usize,
    stats: DetStats,
}

impl DetCore {
    pub fn new(profile: &PatternProfile) -> Self {
        DetCore {
            m: profile.len(),
            pred: profile.compressed.clone(),
            runs: profile.runs.clone(),
            firsts: profile.firsts.clone(),
            r: 0,
            cursor: 0,
            pending: VecDeque::new(),
            last_steps: 0,
            stats: DetStats::default(),
        }
    }

    pub fn pattern_len(&self) -> usize {
        self.m
    }

    /// Current matched prefix length.
    pub fn matched(&self) -> usize {
        self.r
    }

    pub fn pending(&self) -> usize {
        self.pending.len()
    }

    pub fn stats(&self) -> DetStats {
        self.stats
    }

    /// Steps spent on the most recent arrival.
    pub fn last_steps(&self) -> usize {
        self.last_steps
    }

    /// Words held by the streaming state, pattern encodings included.
    pub fn live_words(&self) -> usize {
        self.pred.words() + self.runs.words() + self.firsts.words() + self.pending.len() + 6
    }

    #[inline]
    fn run(&self) -> crate::analysis::PeriodRun {
        self.runs.runs()[self.cursor]
    }

    fn set_candidate(&mut self, r: usize) {
        self.r = r;
        if r == 0 {
            self.cursor = 0;
        }
    }

    /// Next candidate after the comparison at the current length failed
    /// against the text predecessor `g`.
    fn next_candidate(&self, g: Pred) -> usize {
        let c = self.r;
        let run = self.run();
        let rho = run.period;
        if c == run.end {
            return c - rho;
        }
        // c + 1 shares the period, so along c, c - rho, ... (within the run)
        // the pattern predecessor is v while it fits and 0 below it
        let v = self.pred.at(c);
        let t = if v == 0 {
            g.finite()
                .expect("a zero predecessor only fails against a finite one") as usize
        } else {
            v.min(g.finite().map_or(usize::MAX, |d| d as usize))
        };
        let k = (c - t) / rho + 1;
        if k * rho <= c && c - k * rho >= run.start {
            let pos = c - k * rho;
            debug_assert!(self.pred.at(pos) == 0 && self.firsts.contains(pos));
            return pos;
        }
        let lowest = run.start + (c - run.start) % rho;
        lowest - rho
    }

    /// Feed one global predecessor value; true if a match ends here.
    pub fn push_pred(&mut self, g: Pred) -> bool {
        self.pending.push_back(g);
        let mut shifts = 0;
        let mut steps = 0;
        let mut matched = false;
        while let Some(&front) = self.pending.front() {
            if steps == STEP_BUDGET {
                break;
            }
            if self.r > 0 && self.run().start > self.r {
                self.cursor -= 1;
                steps += 1;
                continue;
            }
            if self.r == self.m {
                if shifts == SHIFT_BUDGET {
                    break;
                }
                let rho = self.run().period;
                self.set_candidate(self.m - rho);
                shifts += 1;
                steps += 1;
                continue;
            }
            if pmatch_compare(self.pred.at(self.r), front, self.r) {
                self.pending.pop_front();
                self.r += 1;
                steps += 1;
                if self.r > self.run().end {
                    self.cursor += 1;
                }
                if self.r == self.m {
                    if self.pending.is_empty() {
                        matched = true;
                    } else {
                        self.stats.violations += 1;
                    }
                }
            } else {
                if shifts == SHIFT_BUDGET {
                    break;
                }
                let next = self.next_candidate(front);
                self.set_candidate(next);
                shifts += 1;
                steps += 1;
            }
        }
        let st = &mut self.stats;
        st.arrivals += 1;
        st.total_shifts += shifts as u64;
        st.max_shifts = st.max_shifts.max(shifts);
        st.max_steps = st.max_steps.max(steps);
        st.max_pending = st.max_pending.max(self.pending.len());
        self.last_steps = steps;
        let words = self.live_words();
        self.stats.peak_words = self.stats.peak_words.max(words);
        matched
    }
}

/// Standalone deterministic matcher over a dense alphabet.
#[derive(Debug, Clone)]
pub struct DetMatcher {
    core: DetCore,
    last: LastOccurrence,
    clock: u64,
}

impl DetMatcher {
    pub fn new(pattern: &[u32], alphabet: usize) -> Result<Self> {
        Ok(Self::from_profile(&PatternProfile::new(pattern, alphabet)?))
    }

    pub fn from_profile(profile: &PatternProfile) -> Self {
        DetMatcher {
            core: DetCore::new(profile),
            last: LastOccurrence::new(profile.alphabet),
            clock: 0,
        }
    }

    /// Process one text symbol; true if a p-match of the pattern ends here.
    pub fn step(&mut self, symbol: u32) -> Result<bool> {
        let g = self.last.step(symbol, self.clock)?;
        self.clock += 1;
        Ok(self.core.push_pred(g))
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn core(&self) -> &DetCore {
        &self.core
    }

    pub fn stats(&self) -> DetStats {
        let mut s = self.core.stats();
        s.peak_words += self.last.alphabet() + 1;
        s
    }

    pub fn live_words(&self) -> usize {
        self.core.live_words() + self.last.alphabet() + 1
    }
}
