//! Infinite-chain analysis.
//!
//! An infinite chain is an infinite root-to-depth path in the genus tree.
//! Whether a semigroup lies in one is governed by d, the gcd of its nonzero
//! members below the conductor: d = 1 means the subtree below it is finite,
//! composite d means it lies in infinitely many chains, and prime d means
//! finitely many. In the prime case each chain corresponds to a semigroup
//! whose members below ceil(c/d) are exactly the small members divided by d;
//! those witnesses are enumerated exhaustively here.

use thiserror::Error;

use crate::semigroup::Semigroup;
use crate::tree::{self, Strength, TreeNode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("the trivial semigroup is not analyzed")]
    TrivialSemigroup,
    #[error("chain scale must be at least 2, got {d}")]
    BadParameter { d: u64 },
    #[error("bounds apply only when d > 1")]
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainVerdict {
    /// d = 1: the subtree is finite and `deepest` is its unique node of
    /// largest genus.
    FiniteSubtree { deepest: Semigroup, max_genus: u64 },
    /// d prime: the chains through the node, one per witness. The literal
    /// count of tree descendants of the base semigroup is reported alongside
    /// for comparison; `None` marks an infinite descendant set.
    FinitelyManyChains {
        count: u64,
        witnesses: Vec<Semigroup>,
        base_descendants: Option<u64>,
    },
    /// d composite, or the node is ordinary.
    InfinitelyManyChains,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainAnalysis {
    /// gcd of the nonzero members below the conductor; 0 for ordinary
    /// semigroups, which have no such member.
    pub d: u64,
    pub verdict: ChainVerdict,
}

/// Outcome of the generator lower-bound checks for nodes with d > 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorBounds {
    /// Every member in [c, c+multiplicity) not divisible by d is a minimal
    /// generator, and there are at least multiplicity - multiplicity/d
    /// effective generators.
    pub effective_lb_ok: bool,
    /// With two or more small members: every member in [c, c+d) not
    /// divisible by d is strong and at least d-1 strong generators exist.
    /// With exactly one small member: at least one of c, c+1 is strong.
    pub strong_lb_ok: bool,
}

/// gcd of the nonzero members below the conductor. Returns the 0 sentinel
/// for ordinary semigroups, which have none.
pub fn small_element_gcd(s: &Semigroup) -> Result<u64, ChainError> {
    if s.is_trivial() {
        return Err(ChainError::TrivialSemigroup);
    }
    Ok(s.small_members()
        .iter()
        .fold(0u64, |acc, &x| num_integer::gcd(acc, x)))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Full chain verdict for a non-trivial semigroup.
pub fn analyze(s: &Semigroup) -> Result<ChainAnalysis, ChainError> {
    let d = small_element_gcd(s)?;
    if d == 0 {
        // Ordinary: the whole tree hangs below it.
        return Ok(ChainAnalysis {
            d,
            verdict: ChainVerdict::InfinitelyManyChains,
        });
    }
    let verdict = if d == 1 {
        let deepest =
            Semigroup::from_generators(&s.small_members()).expect("small members are coprime");
        ChainVerdict::FiniteSubtree {
            max_genus: deepest.genus(),
            deepest,
        }
    } else if !is_prime(d) {
        ChainVerdict::InfinitelyManyChains
    } else {
        let witnesses = enumerate_witnesses(s, d);
        ChainVerdict::FinitelyManyChains {
            count: witnesses.len() as u64,
            base_descendants: literal_base_descendants(s, d),
            witnesses,
        }
    };
    Ok(ChainAnalysis { d, verdict })
}

/// All semigroups whose members below ceil(c/d) are exactly the small
/// members of `s` divided by d. Sorted ascending by genus, then gap set.
fn enumerate_witnesses(s: &Semigroup, d: u64) -> Vec<Semigroup> {
    let scaled: Vec<u64> = s.small_members().iter().map(|x| x / d).collect();
    let generated = Semigroup::from_generators(&scaled).expect("scaled members are coprime");
    let m = s.conductor().div_ceil(d);
    // Closure of s forces the generated semigroup to introduce nothing new
    // below m.
    debug_assert!((1..m).filter(|&x| generated.contains(x)).eq(scaled.iter().copied()));
    let horizon = generated.conductor();
    let optional: Vec<u64> = generated.gaps().into_iter().filter(|&x| x >= m).collect();
    let mut membership: Vec<bool> = (0..horizon).map(|n| generated.contains(n)).collect();
    let mut chosen: Vec<u64> = Vec::new();
    let mut witnesses = Vec::new();
    collect_witnesses(
        &generated,
        &optional,
        0,
        &mut membership,
        &mut chosen,
        &mut witnesses,
    );
    witnesses.sort();
    witnesses
}

/// Forced-inclusion DFS over the optional positions: by the time position x
/// is decided, every pair summing to x has been decided, so x is either
/// forced in (it is a sum of two members) or free.
fn collect_witnesses(
    generated: &Semigroup,
    optional: &[u64],
    idx: usize,
    membership: &mut Vec<bool>,
    chosen: &mut Vec<u64>,
    witnesses: &mut Vec<Semigroup>,
) {
    if idx == optional.len() {
        let gaps: Vec<u64> = generated
            .gaps()
            .into_iter()
            .filter(|x| !chosen.contains(x))
            .collect();
        let witness = Semigroup::from_gaps(&gaps).expect("closure is enforced during the search");
        witnesses.push(witness);
        return;
    }
    let x = optional[idx];
    let forced = (1..=x / 2).any(|a| membership[a as usize] && membership[(x - a) as usize]);
    if !forced {
        collect_witnesses(generated, optional, idx + 1, membership, chosen, witnesses);
    }
    membership[x as usize] = true;
    chosen.push(x);
    collect_witnesses(generated, optional, idx + 1, membership, chosen, witnesses);
    chosen.pop();
    membership[x as usize] = false;
}

/// Literal reading of the chain count: tree descendants (node included) of
/// the base semigroup {small members / d} with everything from ceil(c/d) on.
/// `None` when that set is infinite, which happens exactly when the base's
/// own subtree is infinite.
fn literal_base_descendants(s: &Semigroup, d: u64) -> Option<u64> {
    let m = s.conductor().div_ceil(d);
    let scaled: Vec<u64> = s.small_members().iter().map(|x| x / d).collect();
    let base_gaps: Vec<u64> = (1..m).filter(|x| !scaled.contains(x)).collect();
    let base = Semigroup::from_gaps(&base_gaps).expect("base trace set is closed");
    if base.is_ordinary() {
        return None;
    }
    let base_gcd = base
        .small_members()
        .iter()
        .fold(0u64, |acc, &x| num_integer::gcd(acc, x));
    if base_gcd != 1 {
        return None;
    }
    let deepest =
        Semigroup::from_generators(&base.small_members()).expect("coprime small members");
    let mut count = 0u64;
    tree::walk_subtree(
        TreeNode::from_semigroup(&base),
        deepest.genus(),
        false,
        |_| count += 1,
    );
    Some(count)
}

/// The infinite chain obtained from d·base by deleting repetitions in
/// d·base ∪ [j, ∞), truncated to entries of genus at most `max_genus`.
/// Consecutive entries satisfy the parent relation.
pub fn chain_prefix(
    d: u64,
    base: &Semigroup,
    max_genus: u64,
) -> Result<Vec<Semigroup>, ChainError> {
    if d < 2 {
        return Err(ChainError::BadParameter { d });
    }
    let mut out: Vec<Semigroup> = Vec::new();
    for j in 0.. {
        let gaps: Vec<u64> = (1..j)
            .filter(|&x| x % d != 0 || !base.contains(x / d))
            .collect();
        if gaps.len() as u64 > max_genus {
            break;
        }
        let entry = Semigroup::from_gaps(&gaps).expect("scaled union is closed");
        if out.last() != Some(&entry) {
            out.push(entry);
        }
    }
    Ok(out)
}

/// Lower-bound checks on effective and strong generators for nodes lying in
/// an infinite chain (d > 1).
pub fn effective_generator_bounds_check(s: &Semigroup) -> Result<GeneratorBounds, ChainError> {
    let d = small_element_gcd(s)?;
    if d <= 1 {
        return Err(ChainError::NotApplicable);
    }
    let c = s.conductor();
    let m = s.multiplicity();
    let gens = s.minimal_generators();
    let effective = tree::effective_generators(s);

    let mut effective_lb_ok = (c..c + m)
        .filter(|x| x % d != 0)
        .all(|x| gens.binary_search(&x).is_ok());
    effective_lb_ok &= effective.len() as u64 >= m - m / d;

    let strong = |e: u64| {
        effective.contains(&e) && tree::classify(s, e).expect("effective gen") == Strength::Strong
    };
    let small_count = s.small_members().len();
    let strong_lb_ok = if small_count >= 2 {
        let window_ok = (c..c + d).filter(|x| x % d != 0).all(strong);
        let strong_total = effective.iter().filter(|&&e| strong(e)).count() as u64;
        window_ok && strong_total >= d - 1
    } else {
        strong(c) || strong(c + 1)
    };

    Ok(GeneratorBounds {
        effective_lb_ok,
        strong_lb_ok,
    })
}
