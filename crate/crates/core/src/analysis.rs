//! Pattern preprocessing.
//!
//! Everything here runs once, before the stream starts, and may use `O(m)`
//! space. The matchers keep only the compressed products: the residue-column
//! encoding of `pred(P)`, the run-length table of prefix p-periods, the list
//! of first occurrences, and the prefix ladder with its fingerprints.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldWord};
use crate::pred::pred_string;

#[inline]
fn relative(d: usize, j: usize) -> usize {
    if d <= j {
        d
    } else {
        0
    }
}

/// `⌈log₂ m⌉`, never below 1.
pub fn ceil_log2(m: usize) -> usize {
    if m <= 2 {
        1
    } else {
        (usize::BITS - (m - 1).leading_zeros()) as usize
    }
}

/// P-period of every prefix: entry `r - 1` is the p-period of `P[0..r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixPeriods(Vec<usize>);

impl PrefixPeriods {
    /// P-period of the prefix of length `len` (1-based).
    pub fn get(&self, len: usize) -> usize {
        self.0[len - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Prefix p-periods through the parameterized failure function.
///
/// The border of `P[0..=q]` is extended the usual KMP way, except that a
/// candidate border of length `k` accepts position `q` when `pred(P)[k]`
/// equals `pred(P)[q]` read relative to a window of length `k`.
pub fn compute_prefix_pperiods(pred: &[usize]) -> PrefixPeriods {
    let m = pred.len();
    let mut fail = vec![0usize; m];
    let mut k = 0usize;
    for q in 1..m {
        while k > 0 && pred[k] != relative(pred[q], k) {
            k = fail[k - 1];
        }
        if pred[k] == relative(pred[q], k) {
            k += 1;
        }
        fail[q] = k;
    }
    PrefixPeriods(fail.iter().enumerate().map(|(q, &b)| q + 1 - b).collect())
}

/// `pred(P)` in `O(ρ)` words: residue column `j` is zero for its first
/// `k_j` entries and the constant `c_j` afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedPred {
    m: usize,
    period: usize,
    first_repeat: Vec<usize>,
    value: Vec<usize>,
}

impl CompressedPred {
    pub fn build(pred: &[usize], period: usize) -> Result<Self> {
        let m = pred.len();
        if period == 0 || (m > 0 && period > m) {
            return Err(Error::Usage(format!(
                "period {period} invalid for length {m}"
            )));
        }
        let mut first_repeat = Vec::with_capacity(period);
        let mut value = Vec::with_capacity(period);
        for j in 0..period {
            let column: Vec<usize> = pred.iter().skip(j).step_by(period).copied().collect();
            let k = column.iter().position(|&v| v != 0).unwrap_or(column.len());
            let c = column.get(k).copied().unwrap_or(0);
            if column[k..].iter().any(|&v| v != c) {
                return Err(Error::Usage(format!(
                    "residue {j} of the predecessor string is not zeros-then-constant under period {period}"
                )));
            }
            first_repeat.push(k);
            value.push(c);
        }
        Ok(CompressedPred {
            m,
            period,
            first_repeat,
            value,
        })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// `(k_j, c_j)` for residue `j`.
    pub fn column(&self, j: usize) -> (usize, usize) {
        (self.first_repeat[j], self.value[j])
    }

    pub fn pred_access(&self, i: usize) -> Result<usize> {
        if i >= self.m {
            return Err(Error::Usage(format!(
                "index {i} outside pattern of length {}",
                self.m
            )));
        }
        Ok(self.at(i))
    }

    #[inline]
    pub(crate) fn at(&self, i: usize) -> usize {
        debug_assert!(i < self.m);
        let j = i % self.period;
        if i / self.period < self.first_repeat[j] {
            0
        } else {
            self.value[j]
        }
    }

    pub fn words(&self) -> usize {
        2 * self.period + 2
    }
}

/// Lengths `start..=end` share the p-period `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodRun {
    pub period: usize,
    pub start: usize,
    pub end: usize,
}

/// Run-length encoded prefix table, ascending in both length and period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthPeriodTable {
    runs: Vec<PeriodRun>,
}

impl RunLengthPeriodTable {
    pub fn from_periods(periods: &PrefixPeriods) -> Self {
        let mut runs: Vec<PeriodRun> = Vec::new();
        for (idx, &period) in periods.as_slice().iter().enumerate() {
            let len = idx + 1;
            match runs.last_mut() {
                Some(run) if run.period == period => run.end = len,
                _ => runs.push(PeriodRun {
                    period,
                    start: len,
                    end: len,
                }),
            }
        }
        RunLengthPeriodTable { runs }
    }

    pub fn runs(&self) -> &[PeriodRun] {
        &self.runs
    }

    pub fn expand(&self) -> Vec<usize> {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.period, r.end + 1 - r.start))
            .collect()
    }

    pub fn words(&self) -> usize {
        3 * self.runs.len() + 1
    }
}

/// Ascending positions `j` with `pred(P)[j] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOccurrenceList(Vec<usize>);

impl FirstOccurrenceList {
    pub fn from_pred(pred: &[usize]) -> Self {
        FirstOccurrenceList(
            pred.iter()
                .enumerate()
                .filter(|(_, &v)| v == 0)
                .map(|(j, _)| j)
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn words(&self) -> usize {
        self.0.len() + 1
    }
}

/// Which streaming algorithm a pattern needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderMode {
    /// Short pattern or small p-period: the deterministic matcher alone.
    Deterministic,
    /// The fingerprint ladder.
    Randomized,
}

/// Geometrically growing prefix lengths `m_0 < m_1 < ... < m_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixLadder {
    pub mode: LadderMode,
    /// Scheduling slack `|Σ|·⌈log₂ m⌉`.
    pub delta: usize,
    /// `m_0..=m_s`; empty in deterministic mode.
    pub lengths: Vec<usize>,
}

impl PrefixLadder {
    /// Number of levels above `P_0`.
    pub fn s(&self) -> usize {
        self.lengths.len().saturating_sub(1)
    }

    pub fn m0(&self) -> usize {
        self.lengths[0]
    }

    /// Length of the longest ladder prefix; the remaining tail is checked directly.
    pub fn top(&self) -> usize {
        *self.lengths.last().expect("randomized ladder is non-empty")
    }
}

/// Build the prefix ladder for a pattern of length `m` over an alphabet of
/// size `sigma`.
pub fn build_ladder(periods: &PrefixPeriods, sigma: usize) -> PrefixLadder {
    let m = periods.len();
    let delta = sigma.max(1) * ceil_log2(m);
    let deterministic = PrefixLadder {
        mode: LadderMode::Deterministic,
        delta,
        lengths: Vec::new(),
    };
    if m == 0 || m <= 14 * delta || periods.get(m) <= 3 * delta {
        return deterministic;
    }
    // periods are non-decreasing, so the first qualifying length is found by bisection
    let p = periods.as_slice();
    let m0 = p.partition_point(|&rho| rho <= 3 * delta) + 1;
    let tail = m - 4 * delta;
    let mut lengths = vec![m0];
    if 2 * m0 <= m {
        while 4 * lengths.last().unwrap() <= m {
            let next = 2 * lengths.last().unwrap();
            lengths.push(next);
        }
        lengths.push(tail);
    } else if m0 < tail {
        lengths.push(tail);
    }
    PrefixLadder {
        mode: LadderMode::Randomized,
        delta,
        lengths,
    }
}

/// Pattern-side fingerprints the randomized matcher compares against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternFingerprints<W> {
    /// `φ(pred(P)[m_{ℓ-1}..m_ℓ))` for `ℓ = 1..=s` (index `ℓ - 1`).
    pub levels: Vec<W>,
    /// `pred(P)[m_0 - 1]`.
    pub p0_last: usize,
    /// `pred(P)[m_s..m)`.
    pub tail: Vec<usize>,
}

impl<W: FieldWord> PatternFingerprints<W> {
    pub fn build(pred: &[usize], ladder: &PrefixLadder, ctx: &FieldContext<W>) -> Self {
        let as_u64 = |s: &[usize]| s.iter().map(|&v| v as u64).collect::<Vec<_>>();
        let levels = ladder
            .lengths
            .windows(2)
            .map(|w| ctx.fingerprint(&as_u64(&pred[w[0]..w[1]])).value)
            .collect();
        PatternFingerprints {
            levels,
            p0_last: pred[ladder.m0() - 1],
            tail: pred[ladder.top()..].to_vec(),
        }
    }
}

/// All offline products for one pattern.
#[derive(Debug, Clone)]
pub struct PatternProfile {
    pub alphabet: usize,
    pub pred: Vec<usize>,
    pub periods: PrefixPeriods,
    pub compressed: CompressedPred,
    pub runs: RunLengthPeriodTable,
    pub firsts: FirstOccurrenceList,
    pub ladder: PrefixLadder,
}

impl PatternProfile {
    /// Preprocess a pattern over the dense alphabet `0..alphabet`.
    pub fn new(pattern: &[u32], alphabet: usize) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::Usage("pattern is empty".into()));
        }
        if alphabet == 0 {
            return Err(Error::Config("alphabet size must be positive".into()));
        }
        if let Some((index, &symbol)) = pattern
            .iter()
            .enumerate()
            .find(|(_, &c)| c as usize >= alphabet)
        {
            return Err(Error::Alphabet {
                index: index as u64,
                symbol: symbol as u64,
                alphabet,
            });
        }
        let pred = pred_string(pattern);
        let periods = compute_prefix_pperiods(&pred);
        let compressed = CompressedPred::build(&pred, periods.get(pattern.len()))?;
        let runs = RunLengthPeriodTable::from_periods(&periods);
        let firsts = FirstOccurrenceList::from_pred(&pred);
        let ladder = build_ladder(&periods, alphabet);
        Ok(PatternProfile {
            alphabet,
            pred,
            periods,
            compressed,
            runs,
            firsts,
            ladder,
        })
    }

    pub fn len(&self) -> usize {
        self.pred.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pred.is_empty()
    }

    /// P-period of the whole pattern.
    pub fn period(&self) -> usize {
        self.periods.get(self.len())
    }
}
