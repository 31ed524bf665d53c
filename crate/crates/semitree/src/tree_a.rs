//! The abstract label tree A and its generalized level recursion.
//!
//! Level g of the tree is a multiset of labels built from level g-1: every
//! label m spawns {0, ..., m-1}, a fresh label g+1 is added, and one copy of
//! g-2 is struck out. Level sizes are exactly twice the Fibonacci numbers,
//! and the same holds eventually for any admissible starting multiset, which
//! is the recursion simulated here with exact big-integer counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeAError {
    #[error("seed must hold labels <= l-2 plus exactly one l-1 and one l+1")]
    BadSeed,
}

/// A multiset of non-negative labels with arbitrary-precision counts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelMultiset {
    counts: BTreeMap<u64, BigUint>,
}

impl LabelMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Self {
        let mut set = Self::new();
        for &(label, count) in pairs {
            set.add(label, BigUint::from(count));
        }
        set
    }

    pub fn add(&mut self, label: u64, count: BigUint) {
        if !count.is_zero() {
            *self.counts.entry(label).or_default() += count;
        }
    }

    /// Removes exactly one copy of `label`. Removing an absent label is a
    /// hard error: the recursion's hypothesis guarantees presence, so
    /// absence signals a bug rather than a condition to tolerate.
    fn remove_one(&mut self, label: u64) {
        let count = self
            .counts
            .get_mut(&label)
            .unwrap_or_else(|| panic!("label {label} absent at strike-out"));
        if count.is_one() {
            self.counts.remove(&label);
        } else {
            *count -= 1u32;
        }
    }

    pub fn count(&self, label: u64) -> BigUint {
        self.counts.get(&label).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn max_label(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    /// (label, count) pairs in ascending label order.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.counts.iter().map(|(&l, c)| (l, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl fmt::Display for LabelMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().map(|(l, c)| format!("{l}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// One step of the level recursion: every label m spawns {0..m-1}, the label
/// k+1 joins, one copy of k-2 is struck.
fn step(prev: &LabelMultiset, k: u64) -> LabelMultiset {
    let mut next = LabelMultiset::new();
    if let Some(max) = prev.max_label() {
        // Count of x in the union is the number of labels above x, taken
        // with multiplicity: a suffix sum over the previous level.
        let mut running = BigUint::zero();
        for x in (0..max).rev() {
            running += prev.count(x + 1);
            next.add(x, running.clone());
        }
    }
    next.add(k + 1, BigUint::one());
    next.remove_one(k - 2);
    next
}

/// Level g of tree A.
pub fn a_level(g: u64) -> LabelMultiset {
    let mut level = LabelMultiset::from_pairs(&[(1, 1)]);
    if g == 0 {
        return level;
    }
    level = LabelMultiset::from_pairs(&[(2, 1)]);
    for k in 2..=g {
        level = step(&level, k);
    }
    level
}

/// Runs the generalized recursion from an admissible seed at level `l` up to
/// `k_max`, returning levels l..=k_max. The seed must consist of labels at
/// most l-2 with arbitrary multiplicities plus exactly one l-1 and one l+1.
pub fn l_recursion(
    l: u64,
    seed: &LabelMultiset,
    k_max: u64,
) -> Result<Vec<LabelMultiset>, TreeAError> {
    if l < 2 {
        return Err(TreeAError::BadSeed);
    }
    let valid = seed.pairs().all(|(label, count)| {
        if label == l - 1 || label == l + 1 {
            count.is_one()
        } else {
            label <= l.saturating_sub(2)
        }
    }) && seed.count(l - 1).is_one()
        && seed.count(l + 1).is_one();
    if !valid {
        return Err(TreeAError::BadSeed);
    }
    let mut out = vec![seed.clone()];
    for k in l + 1..=k_max {
        let next = step(out.last().unwrap(), k);
        out.push(next);
    }
    Ok(out)
}

/// Fibonacci numbers with F_1 = F_2 = 1, exact.
pub fn fibonacci(n: u64) -> BigUint {
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// Hall-style multiset domination: `sub` embeds into `sup` with each label
/// matched to one at least as large, which holds exactly when for every
/// threshold t the tail count of `sub` at t is at most that of `sup`.
pub fn dominated_by(sub: &LabelMultiset, sup: &LabelMultiset) -> bool {
    let mut thresholds: Vec<u64> = sub
        .pairs()
        .map(|(l, _)| l)
        .chain(sup.pairs().map(|(l, _)| l))
        .collect();
    thresholds.sort_unstable();
    thresholds.dedup();
    for &t in &thresholds {
        let tail = |set: &LabelMultiset| -> BigUint {
            set.pairs().filter(|&(l, _)| l >= t).map(|(_, c)| c).sum()
        };
        if tail(sub) > tail(sup) {
            return false;
        }
    }
    true
}
