//! Streaming parameterized string matching.
//!
//! Two strings p-match when one turns into the other under a bijective
//! relabelling of symbols. [`StreamMatcher`] reads a text one symbol at a
//! time and reports, after each arrival, whether the last `m` symbols p-match
//! the pattern, with constant work per symbol and memory that grows with the
//! alphabet and `log m` rather than with `m`.
//!
//! ```
//! use pstream::{MatcherConfig, RandomizedMatcher};
//!
//! // abbca against bddcb
//! let mut sm = RandomizedMatcher::new(&[0, 1, 1, 2, 0], 4, &MatcherConfig::default()).unwrap();
//! assert_eq!(sm.run(&[1, 3, 3, 2, 1]).unwrap(), vec![0]);
//! ```
//!
//! Field arithmetic is generic over [`FieldWord`] (`u64` with primes up to
//! 63 bits, `u32` up to 31 bits); the aliases below fix the common choices.

pub mod analysis;
pub mod det;
pub mod error;
pub mod field;
pub mod filter;
pub mod instance;
pub mod oracle;
pub mod pred;
pub mod queue;
pub mod stream;

pub use analysis::{LadderMode, PatternProfile, PrefixLadder};
pub use det::{DetCore, DetMatcher};
pub use error::{Error, Result, Violation, ViolationCounts};
pub use field::{FieldContext, FieldWord, Fingerprint};
pub use filter::{dense_pattern, AlphabetFilter, FilteredMatcher};
pub use pred::{pred_string, Pred};
pub use queue::MatchQueue;
pub use stream::{MatcherConfig, StreamMatcher, StreamStats, TraceEvent};

pub type FieldContext64 = FieldContext<u64>;
pub type FieldContext32 = FieldContext<u32>;
pub type Fingerprint64 = Fingerprint<u64>;
pub type Fingerprint32 = Fingerprint<u32>;
pub type RandomizedMatcher = StreamMatcher<u64>;
pub type RandomizedMatcher32 = StreamMatcher<u32>;
pub type GeneralMatcher = FilteredMatcher<u64>;
