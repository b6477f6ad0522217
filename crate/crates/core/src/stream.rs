//! The streaming matcher.
//!
//! Patterns with a short length or a small p-period go to [`DetCore`]
//! directly. Everything else runs the fingerprint ladder: matches of the
//! prefix `P_0` come from a deterministic sub-matcher, each longer prefix
//! `P_ℓ` is confirmed by comparing a window fingerprint against the
//! pattern's, and the last few symbols are compared one by one.
//!
//! Per arrival the work is, in order:
//!
//! * update the running prefix fingerprint `Φ` and the history rings;
//! * Process A: the `P_0` sub-matcher plus its final-symbol test;
//! * Process Bδ: collect positions whose predecessor points far back and
//!   hand one of them down one level of the zeroing queues;
//! * Process Bφ: one step of the check for level `1 + (i mod s)`;
//! * Process C: up to five tail comparisons for a `P_s` candidate.
//!
//! A breached runtime bound is counted and, in strict mode, returned as an
//! error.

use std::collections::VecDeque;

use crate::analysis::{LadderMode, PatternFingerprints, PatternProfile};
use crate::det::DetCore;
use crate::error::{Error, Result, Violation, ViolationCounts};
use crate::field::{FieldContext, FieldWord, ZeroEntry, DEFAULT_PRIME_BITS};
use crate::pred::{pmatch_compare, LastOccurrence, Pred};
use crate::queue::MatchQueue;

/// Zeroing-queue entries scanned per level turn.
pub const SCAN_BATCH: usize = 13;
/// Tail comparisons per arrival.
pub const TAIL_BUDGET: usize = 5;

/// Construction options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatcherConfig {
    pub prime_bits: u32,
    pub seed: u64,
    /// Force an algorithm; `None` picks from the pattern.
    pub mode: Option<LadderMode>,
    /// Return the first structural violation as an error.
    pub strict: bool,
    /// Record every prefix check.
    pub trace: bool,
}

impl Default for MatcherConfig {
    fn default() -> Self {
        MatcherConfig {
            prime_bits: DEFAULT_PRIME_BITS,
            seed: 0,
            mode: None,
            strict: true,
            trace: false,
        }
    }
}

/// Instrumentation, read-only for callers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StreamStats {
    pub arrivals: u64,
    pub matches: u64,
    /// Field multiplications plus buffer touches.
    pub total_ops: u64,
    pub max_ops: u64,
    pub peak_words: usize,
    pub max_pending: usize,
    pub max_zero_queue: usize,
    pub max_segments: usize,
    pub max_shifts: usize,
    pub violations: ViolationCounts,
}

/// One recorded event of the ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEvent<W> {
    /// `P_0` matches at `start`.
    Prefix { start: u64 },
    /// A far-reaching position was handed to the zeroing queue of `level`.
    Zero { level: usize, position: u64 },
    /// Level check for `P_level` at `start`; `value` is the computed
    /// fingerprint of the window-relative block.
    Check {
        level: usize,
        start: u64,
        value: W,
        accepted: bool,
    },
    /// Tail comparison finished for a `P_s` candidate.
    Tail { start: u64, matched: bool },
}

#[derive(Debug, Clone)]
struct History<W> {
    phi: Vec<W>,
    neg: Vec<W>,
    pred: Vec<Pred>,
}

impl<W: FieldWord> History<W> {
    fn new(cap: usize) -> Self {
        History {
            phi: vec![W::zero(); cap],
            neg: vec![W::zero(); cap],
            pred: vec![Pred::NEVER; cap],
        }
    }

    fn cap(&self) -> u64 {
        self.phi.len() as u64
    }

    /// Ring slot of `pos` if it is still held at clock `now`.
    fn slot(&self, now: u64, pos: u64) -> Option<usize> {
        (pos <= now && now - pos < self.cap()).then(|| (pos % self.cap()) as usize)
    }
}

#[derive(Debug, Clone, Copy)]
struct Zero<W> {
    seq: u64,
    entry: ZeroEntry<W>,
}

#[derive(Debug, Clone)]
struct ZeroQueue<W> {
    items: VecDeque<Zero<W>>,
    next_seq: u64,
}

#[derive(Debug, Clone, Copy)]
enum LevelPhase<W> {
    Idle,
    Waiting {
        start: u64,
        fp_prev: W,
    },
    Scanning {
        start: u64,
        acc: W,
        scale: W,
        fp_top: W,
        cursor: u64,
    },
}

#[derive(Debug, Clone, Copy)]
enum TailPhase {
    Idle,
    Checking { start: u64, k: usize },
}

#[derive(Debug, Clone)]
struct Ladder<W> {
    ctx: FieldContext<W>,
    sigma: usize,
    delta: u64,
    lengths: Vec<u64>,
    targets: Vec<W>,
    lifts: Vec<W>,
    p0_last: usize,
    tail: Vec<usize>,
    sub: DetCore,
    sub_matched: bool,
    phi: W,
    hist: History<W>,
    queues: Vec<MatchQueue<W>>,
    pending: VecDeque<ZeroEntry<W>>,
    inflight: Option<(ZeroEntry<W>, usize)>,
    zeros: Vec<ZeroQueue<W>>,
    zero_cap: usize,
    levels: Vec<LevelPhase<W>>,
    tail_phase: TailPhase,
    ops: u64,
    violations: ViolationCounts,
    fresh: Option<Violation>,
    trace: Option<Vec<TraceEvent<W>>>,
}

#[derive(Debug, Clone)]
enum Engine<W> {
    Det(Box<DetCore>),
    Ladder(Box<Ladder<W>>),
}

/// Streaming parameterized matcher over a dense alphabet.
#[derive(Debug, Clone)]
pub struct StreamMatcher<W: FieldWord = u64> {
    m: usize,
    last: LastOccurrence,
    clock: u64,
    strict: bool,
    engine: Engine<W>,
    stats: StreamStats,
}

impl<W: FieldWord> StreamMatcher<W> {
    pub fn new(pattern: &[u32], alphabet: usize, config: &MatcherConfig) -> Result<Self> {
        let profile = PatternProfile::new(pattern, alphabet)?;
        let ctx = FieldContext::<W>::new(config.prime_bits, config.seed)?;
        let p = ctx.modulus().as_u64();
        if p <= alphabet as u64 || p <= pattern.len() as u64 {
            return Err(Error::Config(format!(
                "modulus {p} must exceed both the alphabet size {alphabet} and the pattern length {}",
                pattern.len()
            )));
        }
        let mode = match config.mode {
            None => profile.ladder.mode,
            Some(LadderMode::Deterministic) => LadderMode::Deterministic,
            Some(LadderMode::Randomized) => {
                if profile.ladder.mode != LadderMode::Randomized {
                    return Err(Error::Config(
                        "pattern is too short or too periodic for the randomized matcher".into(),
                    ));
                }
                LadderMode::Randomized
            }
        };
        let engine = match mode {
            LadderMode::Deterministic => Engine::Det(Box::new(DetCore::new(&profile))),
            LadderMode::Randomized => {
                Engine::Ladder(Box::new(Ladder::new(pattern, &profile, ctx, config.trace)?))
            }
        };
        Ok(StreamMatcher {
            m: pattern.len(),
            last: LastOccurrence::new(alphabet),
            clock: 0,
            strict: config.strict,
            engine,
            stats: StreamStats::default(),
        })
    }

    pub fn mode(&self) -> LadderMode {
        match self.engine {
            Engine::Det(_) => LadderMode::Deterministic,
            Engine::Ladder(_) => LadderMode::Randomized,
        }
    }

    pub fn pattern_len(&self) -> usize {
        self.m
    }

    pub fn alphabet(&self) -> usize {
        self.last.alphabet()
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn stats(&self) -> StreamStats {
        self.stats
    }

    /// Prefix lengths `m_0..=m_s` of the ladder, empty in deterministic mode.
    pub fn ladder_lengths(&self) -> Vec<usize> {
        match &self.engine {
            Engine::Det(_) => Vec::new(),
            Engine::Ladder(l) => l.lengths.iter().map(|&v| v as usize).collect(),
        }
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent<W>> {
        match &mut self.engine {
            Engine::Ladder(l) => l.trace.as_mut().map(std::mem::take).unwrap_or_default(),
            Engine::Det(_) => Vec::new(),
        }
    }

    /// Process one symbol; true if a p-match of the whole pattern ends here.
    pub fn step(&mut self, symbol: u32) -> Result<bool> {
        let i = self.clock;
        let g = self.last.step(symbol, i)?;
        self.clock += 1;
        let st = &mut self.stats;
        st.arrivals += 1;
        let (matched, ops, words) = match &mut self.engine {
            Engine::Det(core) => {
                let hit = core.push_pred(g);
                let ds = core.stats();
                st.max_shifts = ds.max_shifts;
                st.max_pending = st.max_pending.max(core.pending());
                if ds.violations > st.violations.get(Violation::DeferredMatch) {
                    st.violations.record(Violation::DeferredMatch);
                }
                (hit, 1 + core.last_steps() as u64, core.live_words())
            }
            Engine::Ladder(l) => {
                let hit = l.step(i, g);
                st.max_shifts = l.sub.stats().max_shifts;
                st.max_pending = st
                    .max_pending
                    .max(l.pending.len() + l.inflight.is_some() as usize);
                st.max_zero_queue = st
                    .max_zero_queue
                    .max(l.zeros.iter().map(|z| z.items.len()).max().unwrap_or(0));
                st.max_segments = st
                    .max_segments
                    .max(l.queues.iter().map(|q| q.segments()).max().unwrap_or(0));
                st.violations = l.violations;
                (hit, 1 + l.ops, l.live_words())
            }
        };
        st.total_ops += ops;
        st.max_ops = st.max_ops.max(ops);
        st.peak_words = st.peak_words.max(words + self.last.alphabet() + 2);
        st.matches += matched as u64;
        if self.strict {
            let fresh = match &mut self.engine {
                Engine::Ladder(l) => l.fresh.take(),
                Engine::Det(_) => st.violations.first(),
            };
            if let Some(v) = fresh {
                return Err(Error::Structural(v));
            }
        }
        Ok(matched)
    }

    /// Run over a whole text and collect match start positions.
    pub fn run(&mut self, text: &[u32]) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for &c in text {
            if self.step(c)? {
                out.push(self.clock - self.m as u64);
            }
        }
        Ok(out)
    }
}

impl<W: FieldWord> Ladder<W> {
    fn new(
        pattern: &[u32],
        profile: &PatternProfile,
        ctx: FieldContext<W>,
        trace: bool,
    ) -> Result<Self> {
        let ladder = &profile.ladder;
        let sigma = profile.alphabet;
        let delta = ladder.delta as u64;
        let lengths: Vec<u64> = ladder.lengths.iter().map(|&v| v as u64).collect();
        let fps = PatternFingerprints::build(&profile.pred, ladder, &ctx);
        let lifts = lengths
            .windows(2)
            .map(|w| ctx.pow(w[1] - 1 - w[0]))
            .collect();
        let sub_profile = PatternProfile::new(&pattern[..ladder.m0() - 1], sigma)?;
        // matches queued at one level span a few windows of the prefix length
        let budget = 4 * (6 * sigma + 1);
        let queues = ladder
            .lengths
            .iter()
            .map(|&len| MatchQueue::new(profile.periods.get(len), budget, &ctx))
            .collect();
        let s = ladder.s();
        Ok(Ladder {
            sigma,
            delta,
            targets: fps.levels,
            lifts,
            p0_last: fps.p0_last,
            tail: fps.tail,
            sub: DetCore::new(&sub_profile),
            sub_matched: false,
            phi: W::zero(),
            hist: History::new(4 * ladder.delta),
            queues,
            pending: VecDeque::new(),
            inflight: None,
            zeros: (0..s)
                .map(|_| ZeroQueue {
                    items: VecDeque::new(),
                    next_seq: 0,
                })
                .collect(),
            zero_cap: 12 * sigma,
            levels: vec![LevelPhase::Idle; s],
            tail_phase: TailPhase::Idle,
            ops: 0,
            violations: ViolationCounts::default(),
            fresh: None,
            trace: trace.then(Vec::new),
            lengths,
            ctx,
        })
    }

    fn s(&self) -> usize {
        self.lengths.len() - 1
    }

    fn violate(&mut self, v: Violation) {
        self.violations.record(v);
        self.fresh.get_or_insert(v);
    }

    fn record(&mut self, e: TraceEvent<W>) {
        if let Some(t) = self.trace.as_mut() {
            t.push(e);
        }
    }

    fn live_words(&self) -> usize {
        let s = self.s();
        3 * self.hist.phi.len()
            + self.sub.live_words()
            + self.tail.len()
            + 4 * s
            + 3 * (self.pending.len() + 2)
            + self
                .zeros
                .iter()
                .map(|z| 4 * z.items.len() + 1)
                .sum::<usize>()
            + self.queues.iter().map(|q| q.live_words()).sum::<usize>()
            + 6 * s
            + 3
            + 12
    }

    fn step(&mut self, i: u64, g: Pred) -> bool {
        self.ops = 0;
        let ctx = &self.ctx;
        let pw = ctx.powers();
        debug_assert_eq!(pw.index(), i);
        self.phi = ctx.add(self.phi, ctx.mul(ctx.reduce(g.value()), pw.pos()));
        let slot = (i % self.hist.cap()) as usize;
        self.hist.phi[slot] = self.phi;
        self.hist.neg[slot] = pw.neg();
        self.hist.pred[slot] = g;
        self.ops += 5;

        self.process_a(i, g);
        if self.s() > 0 {
            self.process_bdelta(i, g, pw.pos());
            let level = 1 + (i % self.s() as u64) as usize;
            self.process_bphi(i, level);
        }
        let hit = self.process_c(i, g);
        self.ctx.advance();
        self.ops += 2;
        hit
    }

    fn process_a(&mut self, i: u64, g: Pred) {
        let m0 = self.lengths[0];
        if self.sub_matched && pmatch_compare(self.p0_last, g, m0 as usize - 1) {
            let start = i + 1 - m0;
            self.record(TraceEvent::Prefix { start });
            let r = self.queues[0].push(start, self.phi, &self.ctx);
            self.ops += self.queues[0].take_ops();
            if let Err(Error::Structural(v)) = r {
                self.violate(v);
            }
        }
        self.sub_matched = self.sub.push_pred(g);
        self.ops += 1 + self.sub.last_steps() as u64;
        if self.sub.stats().violations > self.violations.get(Violation::DeferredMatch) {
            self.violate(Violation::DeferredMatch);
        }
    }

    fn process_bdelta(&mut self, i: u64, g: Pred, r_pow: W) {
        if let Some(d) = g.finite() {
            if d > self.lengths[0] {
                self.pending.push_back(ZeroEntry {
                    position: i,
                    value: d,
                    r_pow,
                });
                self.ops += 1;
                if self.pending.len() + self.inflight.is_some() as usize > self.sigma {
                    self.violate(Violation::BufferOverflow);
                }
            }
        }
        if self.inflight.is_none() {
            if let Some(e) = self.pending.pop_front() {
                self.inflight = Some((e, 1));
                self.ops += 1;
            }
        }
        let Some((e, level)) = self.inflight else {
            return;
        };
        if e.value <= self.lengths[level - 1] {
            // thresholds grow with the level, so no deeper level wants it
            self.inflight = None;
            return;
        }
        let q = &mut self.zeros[level - 1];
        let seq = q.next_seq;
        q.next_seq += 1;
        q.items.push_back(Zero { seq, entry: e });
        self.ops += 1;
        if q.items.len() > self.zero_cap {
            let old = q.items.pop_front().unwrap();
            self.ops += 1;
            if self.still_needed(level, old) {
                self.violate(Violation::ZeroEvicted);
            }
        }
        self.record(TraceEvent::Zero {
            level,
            position: e.position,
        });
        self.inflight = (level < self.s()).then_some((e, level + 1));
    }

    /// Whether the level check in progress still has to look at `z`.
    fn still_needed(&self, level: usize, z: Zero<W>) -> bool {
        let (start, unscanned) = match self.levels[level - 1] {
            LevelPhase::Idle => return false,
            LevelPhase::Waiting { start, .. } => (start, true),
            LevelPhase::Scanning { start, cursor, .. } => (start, z.seq >= cursor),
        };
        unscanned && self.relevant(level, start, z.entry)
    }

    fn relevant(&self, level: usize, start: u64, e: ZeroEntry<W>) -> bool {
        let lo = start + self.lengths[level - 1];
        let hi = start + self.lengths[level] - 1;
        (lo..=hi).contains(&e.position) && e.value > e.position - start
    }

    /// No position up to `upto` is still waiting to be offered to `level`.
    fn distributed(&self, level: usize, upto: u64) -> bool {
        if let Some((e, next)) = self.inflight {
            if e.position <= upto && next <= level {
                return false;
            }
        }
        self.pending.front().is_none_or(|e| e.position > upto)
    }

    fn process_bphi(&mut self, i: u64, level: usize) {
        let m_lo = self.lengths[level - 1];
        let m_hi = self.lengths[level];
        loop {
            match self.levels[level - 1] {
                LevelPhase::Idle => {
                    let popped = self.queues[level - 1].pop(&self.ctx);
                    self.ops += self.queues[level - 1].take_ops();
                    match popped {
                        Some((start, fp_prev)) => {
                            self.levels[level - 1] = LevelPhase::Waiting { start, fp_prev }
                        }
                        None => return,
                    }
                }
                LevelPhase::Waiting { start, fp_prev } => {
                    if i <= start + m_hi + self.delta {
                        return;
                    }
                    let at = start + m_hi - 1;
                    let Some(slot) = self.hist.slot(i, at) else {
                        self.violate(Violation::HistoryLookback);
                        self.levels[level - 1] = LevelPhase::Idle;
                        return;
                    };
                    let ctx = &self.ctx;
                    let fp_top = self.hist.phi[slot];
                    let acc = ctx.sub(fp_top, fp_prev);
                    let scale = ctx.mul(self.hist.neg[slot], self.lifts[level - 1]);
                    self.ops += 3;
                    let q = &self.zeros[level - 1];
                    let cursor = q.items.front().map_or(q.next_seq, |z| z.seq);
                    self.levels[level - 1] = LevelPhase::Scanning {
                        start,
                        acc,
                        scale,
                        fp_top,
                        cursor,
                    };
                }
                LevelPhase::Scanning {
                    start,
                    mut acc,
                    scale,
                    fp_top,
                    mut cursor,
                } => {
                    let lo = start + m_lo;
                    let hi = start + m_hi - 1;
                    let mut reached_end = false;
                    let mut budget = SCAN_BATCH;
                    while budget > 0 {
                        let q = &mut self.zeros[level - 1];
                        let Some(front_seq) = q.items.front().map(|z| z.seq) else {
                            cursor = q.next_seq;
                            break;
                        };
                        cursor = cursor.max(front_seq);
                        let Some(z) = q.items.get((cursor - front_seq) as usize).copied() else {
                            break;
                        };
                        budget -= 1;
                        self.ops += 1;
                        let e = z.entry;
                        if e.position > hi {
                            reached_end = true;
                            break;
                        }
                        if e.position < lo {
                            // older than this candidate, so older than every later one
                            q.items.pop_front();
                        } else if e.value > e.position - start {
                            let ctx = &self.ctx;
                            acc = ctx.sub(acc, ctx.mul(ctx.reduce(e.value), e.r_pow));
                            self.ops += 1;
                        }
                        cursor = z.seq + 1;
                    }
                    let q = &self.zeros[level - 1];
                    let caught_up = reached_end || cursor == q.next_seq;
                    if !(caught_up && self.distributed(level, hi)) {
                        self.levels[level - 1] = LevelPhase::Scanning {
                            start,
                            acc,
                            scale,
                            fp_top,
                            cursor,
                        };
                        return;
                    }
                    let value = self.ctx.mul(acc, scale);
                    self.ops += 1;
                    let accepted = value == self.targets[level - 1];
                    self.record(TraceEvent::Check {
                        level,
                        start,
                        value,
                        accepted,
                    });
                    if i >= start + m_hi + 3 * self.delta {
                        self.violate(Violation::Deadline);
                    }
                    if accepted {
                        let r = self.queues[level].push(start, fp_top, &self.ctx);
                        self.ops += self.queues[level].take_ops();
                        if let Err(Error::Structural(v)) = r {
                            self.violate(v);
                        }
                    }
                    self.levels[level - 1] = LevelPhase::Idle;
                    return;
                }
            }
        }
    }

    fn process_c(&mut self, i: u64, g: Pred) -> bool {
        let s = self.s();
        if let TailPhase::Idle = self.tail_phase {
            let popped = self.queues[s].pop(&self.ctx);
            self.ops += self.queues[s].take_ops();
            match popped {
                Some((start, _)) => self.tail_phase = TailPhase::Checking { start, k: 0 },
                None => return false,
            }
        }
        let TailPhase::Checking { start, mut k } = self.tail_phase else {
            return false;
        };
        let top = self.lengths[s];
        let end = start + top + self.tail.len() as u64 - 1;
        for _ in 0..TAIL_BUDGET {
            if k == self.tail.len() {
                break;
            }
            let pos = start + top + k as u64;
            if pos > i {
                break;
            }
            let gp = if pos == i {
                g
            } else {
                match self.hist.slot(i, pos) {
                    Some(slot) => self.hist.pred[slot],
                    None => {
                        self.violate(Violation::HistoryLookback);
                        self.tail_phase = TailPhase::Idle;
                        return false;
                    }
                }
            };
            self.ops += 1;
            if !pmatch_compare(self.tail[k], gp, top as usize + k) {
                self.record(TraceEvent::Tail {
                    start,
                    matched: false,
                });
                self.tail_phase = TailPhase::Idle;
                return false;
            }
            k += 1;
        }
        if k < self.tail.len() {
            if i >= end {
                self.violate(Violation::Deadline);
                self.tail_phase = TailPhase::Idle;
            } else {
                self.tail_phase = TailPhase::Checking { start, k };
            }
            return false;
        }
        self.tail_phase = TailPhase::Idle;
        if i == end {
            self.record(TraceEvent::Tail {
                start,
                matched: true,
            });
            return true;
        }
        self.violate(Violation::Deadline);
        false
    }
}
