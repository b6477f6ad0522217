//! Rabin-Karp fingerprints over a prime field.
//!
//! A fingerprint of a sequence `S` is `sum S[k] * r^k mod p` together with the
//! number of contributing positions. Besides construction and streaming
//! append, two operations carry the matcher: *splitting* (the fingerprint of a
//! suffix span from two prefix fingerprints) and *zeroing* (the fingerprint as
//! if selected positions held 0).
//!
//! Arithmetic is generic over the machine word holding a residue. `u64`
//! supports primes up to 63 bits; `u32` supports primes up to 31 bits and is
//! handy for small-modulus experiments.

use std::fmt;
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Unsigned word used to store residues mod `p`.
///
/// Every residue is kept strictly below `p < 2^(BITS-1)`, so a sum of two
/// residues never overflows the word.
pub trait FieldWord:
    PrimInt + Unsigned + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Widest prime the word can hold with one spare bit.
    const MAX_PRIME_BITS: u32;

    /// `a * b mod p` through the double-width product.
    fn mul_mod(a: Self, b: Self, p: Self) -> Self;

    fn from_u64(v: u64) -> Self;

    fn as_u64(self) -> u64;
}

impl FieldWord for u32 {
    const MAX_PRIME_BITS: u32 = 31;

    #[inline]
    fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
        ((a as u64 * b as u64) % p as u64) as u32
    }

    #[inline]
    fn from_u64(v: u64) -> u32 {
        v as u32
    }

    #[inline]
    fn as_u64(self) -> u64 {
        self as u64
    }
}

impl FieldWord for u64 {
    const MAX_PRIME_BITS: u32 = 63;

    #[inline]
    fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    #[inline]
    fn from_u64(v: u64) -> u64 {
        v
    }

    #[inline]
    fn as_u64(self) -> u64 {
        self
    }
}

#[inline]
pub(crate) fn add_mod<W: FieldWord>(a: W, b: W, p: W) -> W {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod<W: FieldWord>(a: W, b: W, p: W) -> W {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub(crate) fn pow_mod<W: FieldWord>(mut base: W, mut exp: u64, p: W) -> W {
    let mut acc = W::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = W::mul_mod(acc, base, p);
        }
        base = W::mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The largest prime below `2^bits`. For 61 bits this is the Mersenne prime `2^61 - 1`.
pub fn prime_for_bits(bits: u32) -> u64 {
    assert!((2..=63).contains(&bits));
    let mut candidate = (1u64 << bits) - 1;
    while !is_prime(candidate) {
        candidate -= 1;
    }
    candidate
}

/// Default prime width.
pub const DEFAULT_PRIME_BITS: u32 = 61;
pub const MIN_PRIME_BITS: u32 = 16;

/// A fingerprint value with the number of positions it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fingerprint<W> {
    pub value: W,
    pub len: u64,
}

impl<W: FieldWord> Fingerprint<W> {
    pub fn empty() -> Self {
        Fingerprint {
            value: W::zero(),
            len: 0,
        }
    }
}

impl<W: FieldWord> Default for Fingerprint<W> {
    fn default() -> Self {
        Self::empty()
    }
}

/// A position to zero: its absolute index, the value currently contributing
/// there, and `r^position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroEntry<W> {
    pub position: u64,
    pub value: u64,
    pub r_pow: W,
}

/// Incremental `r^i` and `r^-i` as the clock `i` advances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerState<W> {
    index: u64,
    pos: W,
    neg: W,
}

impl<W: FieldWord> PowerState<W> {
    pub fn index(&self) -> u64 {
        self.index
    }

    /// `r^index mod p`
    pub fn pos(&self) -> W {
        self.pos
    }

    /// `r^-index mod p`
    pub fn neg(&self) -> W {
        self.neg
    }
}

/// Prime modulus, random base and the running power state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext<W> {
    p: W,
    r: W,
    r_inv: W,
    powers: PowerState<W>,
}

impl<W: FieldWord> FieldContext<W> {
    /// Fixed prime of the requested width, base drawn from a seeded ChaCha stream.
    pub fn new(prime_bits: u32, seed: u64) -> Result<Self> {
        if !(MIN_PRIME_BITS..=W::MAX_PRIME_BITS).contains(&prime_bits) {
            return Err(Error::Config(format!(
                "prime width {prime_bits} outside supported range {MIN_PRIME_BITS}..={}",
                W::MAX_PRIME_BITS
            )));
        }
        let p = prime_for_bits(prime_bits);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(1..p);
        Self::with_params(W::from_u64(p), W::from_u64(r))
    }

    /// Explicit modulus and base. `p` must be prime and `r` in `[1, p-1]`.
    pub fn with_params(p: W, r: W) -> Result<Self> {
        if p.as_u64() >= 1u64 << W::MAX_PRIME_BITS || !is_prime(p.as_u64()) {
            return Err(Error::Config(format!(
                "modulus {p} is not a supported prime"
            )));
        }
        if r.is_zero() || r >= p {
            return Err(Error::Config(format!("base {r} not in [1, {p})")));
        }
        let r_inv = pow_mod(r, p.as_u64() - 2, p);
        Ok(FieldContext {
            p,
            r,
            r_inv,
            powers: PowerState {
                index: 0,
                pos: W::one(),
                neg: W::one(),
            },
        })
    }

    pub fn modulus(&self) -> W {
        self.p
    }

    pub fn base(&self) -> W {
        self.r
    }

    pub fn base_inv(&self) -> W {
        self.r_inv
    }

    pub fn powers(&self) -> PowerState<W> {
        self.powers
    }

    /// Move the power state from `i` to `i + 1`.
    #[inline]
    pub fn advance(&mut self) {
        let p = self.p;
        self.powers.pos = W::mul_mod(self.powers.pos, self.r, p);
        self.powers.neg = W::mul_mod(self.powers.neg, self.r_inv, p);
        self.powers.index += 1;
    }

    /// Residue of an arbitrary non-negative integer.
    #[inline]
    pub fn reduce(&self, v: u64) -> W {
        W::from_u64(v % self.p.as_u64())
    }

    #[inline]
    pub fn mul(&self, a: W, b: W) -> W {
        W::mul_mod(a, b, self.p)
    }

    #[inline]
    pub fn add(&self, a: W, b: W) -> W {
        add_mod(a, b, self.p)
    }

    #[inline]
    pub fn sub(&self, a: W, b: W) -> W {
        sub_mod(a, b, self.p)
    }

    /// `r^e` by repeated squaring; used only off the per-symbol path.
    pub fn pow(&self, e: u64) -> W {
        pow_mod(self.r, e, self.p)
    }

    /// `r^-e` by repeated squaring.
    pub fn pow_neg(&self, e: u64) -> W {
        pow_mod(self.r_inv, e, self.p)
    }

    /// Fingerprint of a whole sequence.
    pub fn fingerprint(&self, seq: &[u64]) -> Fingerprint<W> {
        let mut value = W::zero();
        let mut pw = W::one();
        for &v in seq {
            value = self.add(value, self.mul(self.reduce(v), pw));
            pw = self.mul(pw, self.r);
        }
        Fingerprint {
            value,
            len: seq.len() as u64,
        }
    }

    /// Extend the fingerprint of `S[0..i)` by `v` at index `i`. The power
    /// state must sit at `i`.
    pub fn append(&self, fp: Fingerprint<W>, v: u64, i: u64) -> Result<Fingerprint<W>> {
        if self.powers.index != i || fp.len != i {
            return Err(Error::Usage(format!(
                "append at index {i} but power state is at {} and fingerprint covers {}",
                self.powers.index, fp.len
            )));
        }
        Ok(Fingerprint {
            value: self.add(fp.value, self.mul(self.reduce(v), self.powers.pos)),
            len: i + 1,
        })
    }

    /// `whole` covers `S[0..=b]`, `prefix` covers `S[0..=a]`, `neg_pow` is
    /// `r^-(a+1)`. Returns the fingerprint of `S[a+1..=b]`.
    pub fn split(
        &self,
        whole: Fingerprint<W>,
        prefix: Fingerprint<W>,
        neg_pow: W,
    ) -> Result<Fingerprint<W>> {
        if prefix.len >= whole.len {
            return Err(Error::Usage(format!(
                "split of a {}-length prefix from a {}-length fingerprint leaves nothing",
                prefix.len, whole.len
            )));
        }
        Ok(Fingerprint {
            value: self.mul(self.sub(whole.value, prefix.value), neg_pow),
            len: whole.len - prefix.len,
        })
    }

    /// Zero the listed positions of a fingerprint whose first position sits
    /// at absolute index `base`.
    pub fn zero(
        &self,
        fp: Fingerprint<W>,
        zeros: &[ZeroEntry<W>],
        base: u64,
    ) -> Result<Fingerprint<W>> {
        let shift = self.pow_neg(base);
        let mut value = fp.value;
        for z in zeros {
            if z.position < base || z.position >= base + fp.len {
                return Err(Error::Usage(format!(
                    "zero position {} outside span [{base}, {})",
                    z.position,
                    base + fp.len
                )));
            }
            let term = self.mul(self.mul(self.reduce(z.value), z.r_pow), shift);
            value = self.sub(value, term);
        }
        Ok(Fingerprint { value, len: fp.len })
    }
}
