//! Brute-force ground truth.
//!
//! Nothing here touches the engine's predecessor code: p-matches are decided
//! by building the relabelling map directly, and predecessor strings are
//! recomputed with an ordered map.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Predecessor string, computed independently of [`crate::pred`].
pub fn oracle_pred<T: Ord + Copy>(s: &[T]) -> Vec<usize> {
    let mut last: BTreeMap<T, usize> = BTreeMap::new();
    let mut out = Vec::with_capacity(s.len());
    for (j, &c) in s.iter().enumerate() {
        out.push(last.get(&c).map_or(0, |&prev| j - prev));
        last.insert(c, j);
    }
    out
}

fn bijective<T: Ord + Copy>(a: &[T], b: &[T]) -> bool {
    let mut fwd: BTreeMap<T, T> = BTreeMap::new();
    let mut back: BTreeMap<T, T> = BTreeMap::new();
    for (&x, &y) in a.iter().zip(b) {
        if *fwd.entry(x).or_insert(y) != y || *back.entry(y).or_insert(x) != x {
            return false;
        }
    }
    true
}

/// Is there an injective relabelling taking `a` to `b`?
pub fn naive_pmatch<T: Ord + Copy>(a: &[T], b: &[T]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::Usage(format!(
            "lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(bijective(a, b))
}

/// Start positions of every window of `t` that p-matches `p`.
pub fn naive_all_matches(p: &[u32], t: &[u32]) -> Vec<usize> {
    let m = p.len();
    if m == 0 || m > t.len() {
        return Vec::new();
    }
    // relabel both to first-occurrence order so the per-window maps are small arrays
    let dense = |s: &[u32]| -> (Vec<usize>, usize) {
        let mut ids: BTreeMap<u32, usize> = BTreeMap::new();
        let v = s
            .iter()
            .map(|c| {
                let n = ids.len();
                *ids.entry(*c).or_insert(n)
            })
            .collect();
        (v, ids.len())
    };
    let (pd, pk) = dense(p);
    let (td, tk) = dense(t);
    const NONE: usize = usize::MAX;
    let mut fwd = vec![NONE; pk];
    let mut back = vec![NONE; tk];
    let mut out = Vec::new();
    for start in 0..=t.len() - m {
        let mut touched = 0;
        let mut ok = true;
        for k in 0..m {
            let (x, y) = (pd[k], td[start + k]);
            touched = k + 1;
            if fwd[x] == NONE && back[y] == NONE {
                fwd[x] = y;
                back[y] = x;
            } else if fwd[x] != y || back[y] != x {
                ok = false;
                break;
            }
        }
        for k in 0..touched {
            fwd[pd[k]] = NONE;
            back[td[start + k]] = NONE;
        }
        if ok {
            out.push(start);
        }
    }
    out
}

/// Smallest shift under which `p` p-matches itself.
pub fn naive_pperiod<T: Ord + Copy>(p: &[T]) -> usize {
    let m = p.len();
    (1..=m)
        .find(|&r| bijective(&p[..m - r], &p[r..]))
        .unwrap_or(m)
}

/// The split of the matches near a known match into stragglers and a
/// progression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchStructure {
    pub period: usize,
    pub y: Vec<usize>,
    pub a: Vec<usize>,
}

/// Why a window of matches does not have the expected structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    TooManyStragglers { found: usize, limit: usize },
    BrokenProgression { position: usize },
    BlockMismatch { position: usize },
}

/// Split the matches starting in `[i_left, i_left + m/2]` into an explicit
/// part `Y` and a progression `A` of difference `ρ(P)`.
///
/// Let `α` be the position of the last first occurrence in `P`. When
/// `ρ > m/8` or `α ≥ m/4` every match goes to `Y`. Otherwise `Y` holds the
/// matches up to `i_left + α` and `A` the rest; `A` must then be a gapless
/// progression and the global predecessor values of the last `ρ` window
/// positions must coincide across it. `|Y|` is limited to `6·|Σ_P|` in both
/// cases.
pub fn verify_match_structure(
    p: &[u32],
    t: &[u32],
    i_left: usize,
) -> Result<std::result::Result<MatchStructure, StructureViolation>> {
    let m = p.len();
    if i_left + m > t.len() || !bijective(p, &t[i_left..i_left + m]) {
        return Err(Error::Usage(format!("no p-match at {i_left}")));
    }
    let rho = naive_pperiod(p);
    let pred = oracle_pred(p);
    let alpha = pred.iter().rposition(|&v| v == 0).unwrap_or(0);
    let hi = (i_left + m / 2).min(t.len() - m);
    let matches: Vec<usize> = (i_left..=hi)
        .filter(|&i| bijective(p, &t[i..i + m]))
        .collect();
    let split = if 8 * rho > m || 4 * alpha >= m {
        matches.len()
    } else {
        matches.partition_point(|&i| i <= i_left + alpha)
    };
    let (y, a) = matches.split_at(split);
    let (y, a) = (y.to_vec(), a.to_vec());
    let limit = 6 * pred.iter().filter(|&&v| v == 0).count();
    if y.len() > limit {
        return Ok(Err(StructureViolation::TooManyStragglers {
            found: y.len(),
            limit,
        }));
    }
    if let Some(w) = a.windows(2).find(|w| w[1] - w[0] != rho) {
        return Ok(Err(StructureViolation::BrokenProgression {
            position: w[1],
        }));
    }
    if a.len() >= 2 {
        let global = oracle_pred(t);
        let block = |i: usize| &global[i + m - rho..i + m];
        if let Some(&bad) = a.iter().find(|&&i| block(i) != block(a[0])) {
            return Ok(Err(StructureViolation::BlockMismatch { position: bad }));
        }
    }
    Ok(Ok(MatchStructure { period: rho, y, a }))
}
