//! Compressed FIFO of prefix-match positions with their fingerprints.
//!
//! Matches of a prefix with p-period `ρ` that lie close together form an
//! arithmetic progression of difference `ρ`, and along such a progression the
//! predecessor block appended from one element to the next is the same. So
//! the fingerprint difference between neighbours is multiplied by `r^ρ` at
//! every step, and a whole progression is stored as its first element, the
//! first difference and the step factor.
//!
//! Whether a new position really continues the progression is decided by
//! checking its supplied fingerprint against the derived one; if the two
//! disagree the position opens a fresh explicit segment instead.

use std::collections::VecDeque;

use crate::error::{Error, Result, Violation};
use crate::field::{FieldContext, FieldWord};

/// A run of queued positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchSegment<W> {
    Explicit {
        position: u64,
        fp: W,
    },
    Progression {
        /// Next position to emit.
        start: u64,
        diff: u64,
        count: u64,
        /// Fingerprint of `start`.
        first: W,
        /// Fingerprint of the element after `start` minus `first`.
        delta: W,
        /// `r^diff`.
        step: W,
        /// Fingerprint of the last element and the difference leading to it.
        last: W,
        last_delta: W,
    },
}

impl<W: FieldWord> MatchSegment<W> {
    fn last_position(&self) -> u64 {
        match *self {
            MatchSegment::Explicit { position, .. } => position,
            MatchSegment::Progression {
                start, diff, count, ..
            } => start + diff * (count - 1),
        }
    }
}

/// Per-queue counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueueStats {
    pub pushed: u64,
    pub max_segments: usize,
    pub budget_overflows: u64,
    pub rejected_extensions: u64,
}

#[derive(Debug, Clone)]
pub struct MatchQueue<W> {
    diff: u64,
    step: W,
    budget: usize,
    segments: VecDeque<MatchSegment<W>>,
    stats: QueueStats,
    ops: u64,
    #[cfg(debug_assertions)]
    shadow: VecDeque<(u64, W)>,
}

/// Words per stored segment.
const SEGMENT_WORDS: usize = 8;

impl<W: FieldWord> MatchQueue<W> {
    /// Queue for positions of a prefix with p-period `diff`.
    pub fn new(diff: usize, budget: usize, ctx: &FieldContext<W>) -> Self {
        MatchQueue {
            diff: diff as u64,
            step: ctx.pow(diff as u64),
            budget,
            segments: VecDeque::new(),
            stats: QueueStats::default(),
            ops: 0,
            #[cfg(debug_assertions)]
            shadow: VecDeque::new(),
        }
    }

    pub fn diff(&self) -> u64 {
        self.diff
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn segments(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn stats(&self) -> QueueStats {
        self.stats
    }

    /// Field multiplications and segment touches since the last call.
    pub fn take_ops(&mut self) -> u64 {
        std::mem::take(&mut self.ops)
    }

    pub fn live_words(&self) -> usize {
        SEGMENT_WORDS * self.segments.len() + 4
    }

    pub fn iter_segments(&self) -> impl Iterator<Item = &MatchSegment<W>> {
        self.segments.iter()
    }

    /// Append `(pos, fp)`. Field work is constant: at most one multiplication.
    ///
    /// Exceeding the segment budget stores the entry anyway and reports a
    /// structural violation.
    pub fn push(&mut self, pos: u64, fp: W, ctx: &FieldContext<W>) -> Result<()> {
        if let Some(tail) = self.segments.back() {
            if pos <= tail.last_position() {
                return Err(Error::Usage(format!(
                    "position {pos} does not follow {}",
                    tail.last_position()
                )));
            }
        }
        self.stats.pushed += 1;
        self.ops += 1;
        #[cfg(debug_assertions)]
        self.shadow.push_back((pos, fp));
        let (diff, step) = (self.diff, self.step);
        match self.segments.back_mut() {
            Some(&mut MatchSegment::Explicit { position, fp: prev }) if pos == position + diff => {
                let delta = ctx.sub(fp, prev);
                *self.segments.back_mut().unwrap() = MatchSegment::Progression {
                    start: position,
                    diff,
                    count: 2,
                    first: prev,
                    delta,
                    step,
                    last: fp,
                    last_delta: delta,
                };
                return Ok(());
            }
            Some(MatchSegment::Progression {
                start,
                count,
                last,
                last_delta,
                ..
            }) if pos == *start + diff * *count => {
                let next_delta = ctx.mul(*last_delta, step);
                self.ops += 1;
                if ctx.add(*last, next_delta) == fp {
                    *count += 1;
                    *last = fp;
                    *last_delta = next_delta;
                    return Ok(());
                }
                self.stats.rejected_extensions += 1;
            }
            _ => {}
        }
        self.segments
            .push_back(MatchSegment::Explicit { position: pos, fp });
        self.stats.max_segments = self.stats.max_segments.max(self.segments.len());
        if self.segments.len() > self.budget {
            self.stats.budget_overflows += 1;
            return Err(Error::Structural(Violation::QueueBudget));
        }
        Ok(())
    }

    /// Oldest queued position and its fingerprint.
    pub fn pop(&mut self, ctx: &FieldContext<W>) -> Option<(u64, W)> {
        let front = self.segments.front_mut()?;
        self.ops += 1;
        let out = match front {
            MatchSegment::Explicit { position, fp } => {
                let out = (*position, *fp);
                self.segments.pop_front();
                out
            }
            MatchSegment::Progression {
                start,
                diff,
                count,
                first,
                delta,
                step,
                last,
                ..
            } => {
                let out = (*start, *first);
                if *count == 2 {
                    *front = MatchSegment::Explicit {
                        position: *start + *diff,
                        fp: *last,
                    };
                } else {
                    *start += *diff;
                    *count -= 1;
                    *first = ctx.add(*first, *delta);
                    *delta = ctx.mul(*delta, *step);
                    self.ops += 1;
                }
                out
            }
        };
        #[cfg(debug_assertions)]
        debug_assert_eq!(self.shadow.pop_front(), Some(out));
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FieldContext<u64> {
        FieldContext::new(61, 3).unwrap()
    }

    #[test]
    fn progression_absorbs_regular_pushes() {
        let ctx = ctx();
        let mut q = MatchQueue::new(3, 8, &ctx);
        // fingerprints following a constant block: fp_k = a + b * (1 + s + ... + s^(k-1))
        let s = ctx.pow(3);
        let mut fps = vec![11u64];
        let mut d = 5u64;
        for _ in 0..3 {
            let next = ctx.add(*fps.last().unwrap(), d);
            fps.push(next);
            d = ctx.mul(d, s);
        }
        for (k, &fp) in fps.iter().enumerate() {
            q.push(100 + 3 * k as u64, fp, &ctx).unwrap();
        }
        assert_eq!(q.segments(), 1);
        assert!(matches!(
            q.iter_segments().next(),
            Some(MatchSegment::Progression {
                start: 100,
                diff: 3,
                count: 4,
                ..
            })
        ));
        for (k, &fp) in fps.iter().enumerate() {
            assert_eq!(q.pop(&ctx), Some((100 + 3 * k as u64, fp)));
        }
        assert_eq!(q.pop(&ctx), None);
    }

    #[test]
    fn gaps_make_explicit_segments() {
        let ctx = ctx();
        let mut q = MatchQueue::new(3, 8, &ctx);
        q.push(5, 1, &ctx).unwrap();
        q.push(11, 2, &ctx).unwrap();
        assert_eq!(q.segments(), 2);
        assert_eq!(q.pop(&ctx), Some((5, 1)));
        assert_eq!(q.pop(&ctx), Some((11, 2)));
    }

    #[test]
    fn inconsistent_extension_is_kept_explicit() {
        let ctx = ctx();
        let mut q = MatchQueue::new(2, 8, &ctx);
        q.push(0, 10, &ctx).unwrap();
        q.push(2, 20, &ctx).unwrap();
        q.push(4, 7, &ctx).unwrap();
        assert_eq!(q.segments(), 2);
        assert_eq!(q.stats().rejected_extensions, 1);
        assert_eq!(q.pop(&ctx), Some((0, 10)));
        assert_eq!(q.pop(&ctx), Some((2, 20)));
        assert_eq!(q.pop(&ctx), Some((4, 7)));
    }

    #[test]
    fn budget_and_order_checks() {
        let ctx = ctx();
        let mut q = MatchQueue::new(5, 2, &ctx);
        q.push(0, 1, &ctx).unwrap();
        q.push(1, 1, &ctx).unwrap();
        assert_eq!(
            q.push(2, 1, &ctx),
            Err(Error::Structural(Violation::QueueBudget))
        );
        assert_eq!(q.segments(), 3);
        assert!(q.push(2, 1, &ctx).is_err());
    }

    #[test]
    fn single_round_trip() {
        let ctx = ctx();
        let mut q = MatchQueue::new(4, 2, &ctx);
        assert_eq!(q.pop(&ctx), None);
        q.push(9, 42, &ctx).unwrap();
        assert_eq!(q.pop(&ctx), Some((9, 42)));
        assert!(q.is_empty());
    }
}
