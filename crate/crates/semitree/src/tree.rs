//! The genus tree: parent/child navigation, effective-generator extraction,
//! weak/strong classification, and an exhaustive walker.
//!
//! Removing a minimal generator at or above the conductor (an *effective*
//! generator) raises the genus by one; every semigroup of genus g+1 arises
//! this way from exactly one parent. For non-ordinary parents the child's
//! effective generators are either the tail of the parent's list or that
//! tail plus `e + multiplicity`, which is what makes an incremental walk
//! possible: the walker inherits the tail and appends the extra element
//! exactly when the removed generator is strong.

use rayon::prelude::*;
use thiserror::Error;

use crate::semigroup::Semigroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("the trivial semigroup has no parent")]
    RootHasNoParent,
    #[error("{e} is not an effective generator")]
    NotEffective { e: u64 },
    #[error("strength is defined for non-ordinary semigroups only")]
    OrdinaryInput,
    #[error("expected an ordinary semigroup")]
    NotOrdinary,
}

/// Strength of an effective generator: removing a strong one hands the child
/// the extra generator `e + multiplicity`, removing a weak one does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strength {
    Weak,
    Strong,
}

impl Strength {
    pub fn suffix(self) -> char {
        match self {
            Strength::Strong => '+',
            Strength::Weak => '-',
        }
    }
}

/// Node shape by number of children.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Stick,
    Bush,
}

impl NodeKind {
    pub fn letter(self) -> char {
        match self {
            NodeKind::Leaf => 'L',
            NodeKind::Stick => 'S',
            NodeKind::Bush => 'B',
        }
    }
}

/// A semigroup decorated with its ordered effective generators and their
/// strengths; the DFS frame of the walker.
///
/// For ordinary nodes, where strength is not defined, the flag records the
/// extra-generator convention instead: a generator whose removal hands the
/// child generators beyond the parent's tail is marked strong-like.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub semigroup: Semigroup,
    pub effective: Vec<(u64, Strength)>,
}

impl TreeNode {
    /// The root of the tree: the trivial semigroup.
    pub fn root() -> Self {
        Self::from_semigroup(&Semigroup::trivial())
    }

    /// Builds a node from scratch: effective generators recomputed from the
    /// definition, strengths via the nu-based fast path (or the
    /// extra-generator convention for ordinary nodes).
    pub fn from_semigroup(s: &Semigroup) -> Self {
        Self::build(s, false)
    }

    /// Like [`TreeNode::from_semigroup`] but classifying strengths by the
    /// definitional child-set comparison instead of the fast path.
    pub fn from_semigroup_definitional(s: &Semigroup) -> Self {
        Self::build(s, true)
    }

    fn build(s: &Semigroup, definitional: bool) -> Self {
        let values = effective_generators(s);
        let effective = if s.is_ordinary() {
            values
                .iter()
                .map(|&e| {
                    let extra = classify_ordinary(s, e).expect("ordinary node");
                    let st = if extra.is_empty() {
                        Strength::Weak
                    } else {
                        Strength::Strong
                    };
                    (e, st)
                })
                .collect()
        } else {
            values
                .iter()
                .map(|&e| {
                    let st = if definitional {
                        classify(s, e).expect("effective generator of non-ordinary node")
                    } else {
                        classify_fast(s, e)
                    };
                    (e, st)
                })
                .collect()
        };
        TreeNode {
            semigroup: s.clone(),
            effective,
        }
    }

    pub fn genus(&self) -> u64 {
        self.semigroup.genus()
    }

    pub fn kind(&self) -> NodeKind {
        match self.effective.len() {
            0 => NodeKind::Leaf,
            1 => NodeKind::Stick,
            _ => NodeKind::Bush,
        }
    }

    pub fn strong_count(&self) -> u64 {
        self.effective
            .iter()
            .filter(|(_, st)| *st == Strength::Strong)
            .count() as u64
    }

    /// One line of the node dump: genus, canonical form, effective
    /// generators with strength suffix, kind letter. TAB-separated.
    pub fn dump_line(&self) -> String {
        let gens: Vec<String> = self
            .effective
            .iter()
            .map(|(v, st)| format!("{v}{}", st.suffix()))
            .collect();
        format!(
            "{}\t{}\t{}\t{}",
            self.genus(),
            self.semigroup.canonical_string(),
            gens.join(" "),
            self.kind().letter()
        )
    }
}

/// Parent in the tree: the semigroup with its Frobenius number added back.
pub fn parent(s: &Semigroup) -> Result<Semigroup, TreeError> {
    if s.is_trivial() {
        return Err(TreeError::RootHasNoParent);
    }
    Ok(s.add_frobenius())
}

/// Children in ascending order of removed generator.
pub fn children(s: &Semigroup) -> Vec<Semigroup> {
    effective_generators(s)
        .into_iter()
        .map(|e| s.remove_member(e))
        .collect()
}

/// Minimal generators at or above the conductor, ascending.
pub fn effective_generators(s: &Semigroup) -> Vec<u64> {
    s.minimal_generators()
        .into_iter()
        .filter(|&g| g >= s.conductor())
        .collect()
}

/// Definitional strength classification of an effective generator of a
/// non-ordinary semigroup: compare the child's effective generators against
/// the two shapes allowed by the inheritance dichotomy.
pub fn classify(s: &Semigroup, e: u64) -> Result<Strength, TreeError> {
    if s.is_ordinary() {
        return Err(TreeError::OrdinaryInput);
    }
    let eff = effective_generators(s);
    if !eff.contains(&e) {
        return Err(TreeError::NotEffective { e });
    }
    let child = s.remove_member(e);
    let child_eff = effective_generators(&child);
    let later: Vec<u64> = eff.iter().copied().filter(|&v| v > e).collect();
    let mut with_extra = later.clone();
    let extra = e + s.multiplicity();
    let pos = with_extra.partition_point(|&v| v < extra);
    with_extra.insert(pos, extra);
    if child_eff == with_extra {
        Ok(Strength::Strong)
    } else {
        assert_eq!(
            child_eff, later,
            "inheritance dichotomy violated at {s} removing {e}"
        );
        Ok(Strength::Weak)
    }
}

/// Fast strength test: `e` is strong exactly when `e + multiplicity` splits
/// within the semigroup in only the trivial ways 0 + t and m + e, i.e. its
/// nu value is 4. Scanning the lower halves of unordered splits suffices:
/// the upper trivial halves e and t both exceed t/2.
pub fn classify_fast(s: &Semigroup, e: u64) -> Strength {
    debug_assert!(!s.is_ordinary());
    debug_assert!(e >= s.conductor());
    let m = s.multiplicity();
    let t = e + m;
    for x in 1..=t / 2 {
        if x == m {
            continue;
        }
        if s.contains(x) && s.contains(t - x) {
            return Strength::Weak;
        }
    }
    Strength::Strong
}

/// For an ordinary semigroup, the child generators that appear beyond the
/// parent's tail when removing `e`. Size 0, 1, or 2.
pub fn classify_ordinary(s: &Semigroup, e: u64) -> Result<Vec<u64>, TreeError> {
    if !s.is_ordinary() {
        return Err(TreeError::NotOrdinary);
    }
    let eff = effective_generators(s);
    if !eff.contains(&e) {
        return Err(TreeError::NotEffective { e });
    }
    let child = s.remove_member(e);
    let later: Vec<u64> = eff.iter().copied().filter(|&v| v > e).collect();
    Ok(effective_generators(&child)
        .into_iter()
        .filter(|v| !later.contains(v))
        .collect())
}

/// Walker configuration.
#[derive(Debug, Clone)]
pub struct WalkOptions {
    /// Deepest genus to visit, inclusive.
    pub max_genus: u64,
    /// Recompute every child's generator list and strength from scratch
    /// instead of inheriting; the cross-checking mode.
    pub recompute: bool,
    pub workers: usize,
    /// Genus at which the frontier is partitioned across workers.
    pub split_genus: u64,
}

impl WalkOptions {
    pub fn new(max_genus: u64) -> Self {
        WalkOptions {
            max_genus,
            recompute: false,
            workers: 1,
            split_genus: 9,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn recompute(mut self) -> Self {
        self.recompute = true;
        self
    }
}

/// Children of a node, ascending by removed generator.
pub fn expand(node: &TreeNode, recompute: bool) -> Vec<TreeNode> {
    let s = &node.semigroup;
    let ordinary = s.is_ordinary();
    let m = s.multiplicity();
    node.effective
        .iter()
        .map(|&(e, strength)| {
            let child_sg = s.remove_member(e);
            if recompute {
                TreeNode::from_semigroup_definitional(&child_sg)
            } else if ordinary {
                // One node per level; recompute rather than special-case the
                // ordinary-to-ordinary transition.
                TreeNode::from_semigroup(&child_sg)
            } else {
                let mut values: Vec<u64> = node
                    .effective
                    .iter()
                    .map(|p| p.0)
                    .filter(|&v| v > e)
                    .collect();
                if strength == Strength::Strong {
                    let extra = e + m;
                    let pos = values.partition_point(|&v| v < extra);
                    values.insert(pos, extra);
                }
                let effective = values
                    .into_iter()
                    .map(|v| (v, classify_fast(&child_sg, v)))
                    .collect();
                TreeNode {
                    semigroup: child_sg,
                    effective,
                }
            }
        })
        .collect()
}

/// Depth-first preorder visit of the subtree under `root`, children in
/// ascending removed-generator order, stopping at `max_genus` inclusive.
pub fn walk_subtree<F: FnMut(&TreeNode)>(root: TreeNode, max_genus: u64, recompute: bool, mut f: F) {
    let mut stack: Vec<TreeNode> = vec![root];
    while let Some(node) = stack.pop() {
        if node.genus() > max_genus {
            continue;
        }
        if node.genus() < max_genus {
            let mut kids = expand(&node, recompute);
            kids.reverse();
            stack.extend(kids);
        }
        f(&node);
    }
}

/// Serial walk of the whole tree up to `max_genus`, visiting every semigroup
/// of genus at most `max_genus` exactly once.
pub fn walk<F: FnMut(&TreeNode)>(max_genus: u64, f: F) {
    walk_subtree(TreeNode::root(), max_genus, false, f);
}

/// Fold over the tree with optional work partitioning.
///
/// The accumulator must behave like a monoid with `visit` the action of a
/// single node: merging two partial results in traversal order must equal
/// visiting the nodes in one pass. Under that contract the result is
/// identical for every worker count, byte for byte when the accumulator
/// renders text.
pub fn walk_reduce<A, I, V, M>(opts: &WalkOptions, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &TreeNode) + Sync,
    M: Fn(A, A) -> A,
{
    let workers = opts.workers.max(1);
    if workers == 1 || opts.max_genus <= opts.split_genus {
        let mut acc = init();
        walk_subtree(TreeNode::root(), opts.max_genus, opts.recompute, |n| {
            visit(&mut acc, n)
        });
        return acc;
    }

    enum Event {
        Own(TreeNode),
        Subtree(usize),
    }
    let mut events = Vec::new();
    let mut frontier = Vec::new();
    let mut stack = vec![TreeNode::root()];
    while let Some(node) = stack.pop() {
        if node.genus() == opts.split_genus {
            events.push(Event::Subtree(frontier.len()));
            frontier.push(node);
            continue;
        }
        let mut kids = expand(&node, opts.recompute);
        kids.reverse();
        stack.extend(kids);
        events.push(Event::Own(node));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool");
    let results: Vec<A> = pool.install(|| {
        frontier
            .into_par_iter()
            .map(|node| {
                let mut acc = init();
                walk_subtree(node, opts.max_genus, opts.recompute, |n| {
                    visit(&mut acc, n)
                });
                acc
            })
            .collect()
    });

    let mut results: Vec<Option<A>> = results.into_iter().map(Some).collect();
    let mut acc = init();
    for event in events {
        match event {
            Event::Own(node) => visit(&mut acc, &node),
            Event::Subtree(i) => acc = merge(acc, results[i].take().expect("consumed once")),
        }
    }
    acc
}

/// Number of semigroups per genus, indexed by genus.
pub fn genus_counts(opts: &WalkOptions) -> Vec<u64> {
    walk_reduce(
        opts,
        || vec![0u64; opts.max_genus as usize + 1],
        |acc, node| acc[node.genus() as usize] += 1,
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )
}

/// Full node dump for golden comparisons, one line per node in walk order.
pub fn dump(opts: &WalkOptions) -> String {
    walk_reduce(
        opts,
        String::new,
        |acc, node| {
            acc.push_str(&node.dump_line());
            acc.push('\n');
        },
        |mut a, b| {
            a.push_str(&b);
            a
        },
    )
}
