//! Seeded instance generators for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A pattern, a text and the dense alphabet they are drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub pattern: Vec<u32>,
    pub text: Vec<u32>,
    pub alphabet: usize,
}

/// Shapes of generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Independent uniform pattern and text.
    Random,
    /// Uniform text with relabelled copies of a uniform pattern written in.
    Planted,
    /// Pattern and text both repeat one block, so matches overlap heavily.
    Periodic,
    /// Uniform pattern with a large p-period, planted in a text that repeats
    /// the pattern's head so prefix matches pile up.
    HighPeriod,
    Unary,
    /// Pattern of pairwise distinct symbols.
    AllDistinct,
    /// Text whose symbols keep coming back after long absences.
    LongGap,
}

impl Regime {
    pub const ALL: [Regime; 7] = [
        Regime::Random,
        Regime::Planted,
        Regime::Periodic,
        Regime::HighPeriod,
        Regime::Unary,
        Regime::AllDistinct,
        Regime::LongGap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Random => "random",
            Regime::Planted => "planted",
            Regime::Periodic => "periodic",
            Regime::HighPeriod => "high-period",
            Regime::Unary => "unary",
            Regime::AllDistinct => "all-distinct",
            Regime::LongGap => "long-gap",
        }
    }

    pub fn parse(s: &str) -> Option<Regime> {
        Regime::ALL.into_iter().find(|r| r.name() == s)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_string<R: Rng>(rng: &mut R, n: usize, alphabet: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..alphabet as u32)).collect()
}

/// Apply a uniformly random permutation of `0..alphabet`.
pub fn relabel<R: Rng>(rng: &mut R, s: &[u32], alphabet: usize) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..alphabet as u32).collect();
    perm.shuffle(rng);
    s.iter().map(|&c| perm[c as usize]).collect()
}

/// Overwrite `copies` windows of `text` with relabelled copies of `pattern`.
pub fn plant<R: Rng>(
    rng: &mut R,
    text: &mut [u32],
    pattern: &[u32],
    alphabet: usize,
    copies: usize,
) {
    if pattern.len() > text.len() {
        return;
    }
    for _ in 0..copies {
        let at = rng.gen_range(0..=text.len() - pattern.len());
        let copy = relabel(rng, pattern, alphabet);
        text[at..at + pattern.len()].copy_from_slice(&copy);
    }
}

/// `block` repeated and cut to length `n`.
pub fn repeat_block(block: &[u32], n: usize) -> Vec<u32> {
    block.iter().copied().cycle().take(n).collect()
}

/// Each symbol reappears after roughly `gap` arrivals: a long run of one
/// filler symbol, then a burst of every other symbol, with the filler
/// rotating from burst to burst.
pub fn long_gap_text(n: usize, alphabet: usize, gap: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    let mut filler = 0u32;
    while out.len() < n {
        out.extend(std::iter::repeat_n(filler, gap.max(1)));
        out.extend((0..alphabet as u32).filter(|&c| c != filler));
        filler = (filler + 1) % alphabet as u32;
    }
    out.truncate(n);
    out
}

/// Deterministic instance for a regime.
pub fn generate(regime: Regime, m: usize, n: usize, alphabet: usize, seed: u64) -> Instance {
    let mut r = rng(seed);
    let sigma = alphabet.max(1);
    let (pattern, text) = match regime {
        Regime::Random => (
            random_string(&mut r, m, sigma),
            random_string(&mut r, n, sigma),
        ),
        Regime::Planted => {
            let p = random_string(&mut r, m, sigma);
            let mut t = random_string(&mut r, n, sigma);
            let copies = (n / m.max(1)).clamp(1, 8);
            plant(&mut r, &mut t, &p, sigma, copies);
            (p, t)
        }
        Regime::Periodic => {
            let len = r.gen_range(1..=(m / 3).max(1));
            let block = random_string(&mut r, len, sigma);
            let p = repeat_block(&block, m);
            let mut t = relabel(&mut r, &repeat_block(&block, n), sigma);
            // a few point mutations break the run into several stretches
            for _ in 0..r.gen_range(0..4) {
                if n > 0 {
                    let at = r.gen_range(0..n);
                    t[at] = r.gen_range(0..sigma as u32);
                }
            }
            (p, t)
        }
        Regime::HighPeriod => {
            let p = random_string(&mut r, m, sigma);
            let head = r.gen_range(1..=m.max(2) / 2);
            let mut t = repeat_block(&relabel(&mut r, &p[..head.min(m)], sigma), n);
            plant(&mut r, &mut t, &p, sigma, 2);
            (p, t)
        }
        Regime::Unary => (vec![0; m], random_string(&mut r, n, sigma)),
        Regime::AllDistinct => {
            let p: Vec<u32> = (0..m as u32).map(|c| c % sigma as u32).collect();
            let mut t = random_string(&mut r, n, sigma);
            plant(&mut r, &mut t, &p, sigma, 2);
            (p, t)
        }
        Regime::LongGap => {
            let p = random_string(&mut r, m, sigma);
            let gap = r.gen_range(m / 8 + 1..=m / 2 + 2);
            let mut t = long_gap_text(n, sigma, gap);
            plant(&mut r, &mut t, &p, sigma, 2);
            (p, t)
        }
    };
    Instance {
        pattern,
        text,
        alphabet: sigma,
    }
}
