use std::fmt;

use thiserror::Error;

/// Errors raised by the matching engine and its building blocks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Bad construction parameters (prime width, alphabet size, modulus).
    #[error("configuration error: {0}")]
    Config(String),

    /// A symbol outside the declared dense alphabet.
    #[error("symbol {symbol} at index {index} is outside the alphabet of size {alphabet}")]
    Alphabet {
        index: u64,
        symbol: u64,
        alphabet: usize,
    },

    /// An operation was called with arguments that violate its contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// A runtime bound that must hold by construction did not.
    #[error("structural violation: {0}")]
    Structural(Violation),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The bound that was breached when a structural violation is raised.
///
/// At a 61-bit prime none of these should ever occur; a non-zero count
/// means either a fingerprint false positive or a scheduling bug.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    /// The zeroing buffer held more entries than the alphabet size.
    BufferOverflow,
    /// A match queue exceeded its segment budget.
    QueueBudget,
    /// A zero-candidate was evicted before the level that needed it scanned it.
    ZeroEvicted,
    /// A zero-candidate had not reached its level queue when the check began.
    ZeroLate,
    /// A prefix check finished after its reporting deadline.
    Deadline,
    /// A value needed from the history ring had already been overwritten.
    HistoryLookback,
    /// The deterministic matcher completed a match while input was still deferred.
    DeferredMatch,
}

impl Violation {
    pub const ALL: [Violation; 7] = [
        Violation::BufferOverflow,
        Violation::QueueBudget,
        Violation::ZeroEvicted,
        Violation::ZeroLate,
        Violation::Deadline,
        Violation::HistoryLookback,
        Violation::DeferredMatch,
    ];

    /// Short machine-readable name.
    pub fn key(self) -> &'static str {
        match self {
            Violation::BufferOverflow => "buffer_overflow",
            Violation::QueueBudget => "queue_budget",
            Violation::ZeroEvicted => "zero_evicted",
            Violation::ZeroLate => "zero_late",
            Violation::Deadline => "deadline",
            Violation::HistoryLookback => "history_lookback",
            Violation::DeferredMatch => "deferred_match",
        }
    }
}

/// Occurrence count of each violation kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ViolationCounts([u64; 7]);

impl ViolationCounts {
    pub fn record(&mut self, v: Violation) {
        self.0[v as usize] += 1;
    }

    pub fn get(&self, v: Violation) -> u64 {
        self.0[v as usize]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// First kind with a non-zero count.
    pub fn first(&self) -> Option<Violation> {
        Violation::ALL.into_iter().find(|&v| self.get(v) > 0)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Violation::BufferOverflow => "zeroing buffer exceeded alphabet size",
            Violation::QueueBudget => "match queue exceeded segment budget",
            Violation::ZeroEvicted => "zero candidate evicted before scan",
            Violation::ZeroLate => "zero candidate not distributed before check",
            Violation::Deadline => "prefix check missed its deadline",
            Violation::HistoryLookback => "history ring lookback exceeded",
            Violation::DeferredMatch => "match completed on deferred input",
        };
        f.write_str(s)
    }
}
