//! Finite representation of a numerical semigroup.
//!
//! A numerical semigroup is a subset of the non-negative integers that
//! contains 0, is closed under addition, and has a finite complement (the
//! *gaps*). Membership is stored as a bitmask over `[0, bound)` with
//! `bound = conductor + 2 * multiplicity`; every integer at or above the
//! conductor is a member, so the mask is all that is ever needed. All values
//! are immutable after construction.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;
use thiserror::Error;

type Words = SmallVec<[u64; 4]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generators have gcd {gcd}, the complement would be infinite")]
    GcdNotOne { gcd: u64 },
    #[error("complement is not additively closed: {a} + {b} = {} is a gap", a + b)]
    NotClosed { a: u64, b: u64 },
    #[error("0 cannot be a gap")]
    ZeroGap,
    #[error("{n} is not a member")]
    NotMember { n: u64 },
    #[error("lambda_{index} = {value} lies below the conductor {conductor}")]
    IndexBelowConductor {
        index: u64,
        value: u64,
        conductor: u64,
    },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// A numerical semigroup with membership materialized up to
/// `conductor + 2 * multiplicity`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    words: Words,
    bound: u64,
    conductor: u64,
    genus: u64,
    multiplicity: u64,
}

/// Machine-readable record for a semigroup. Field order is fixed.
#[derive(Debug, Clone, Serialize)]
pub struct SemigroupRecord {
    pub gens: Vec<u64>,
    pub gaps: Vec<u64>,
    pub c: u64,
    pub g: u64,
    pub m: u64,
}

#[inline]
fn word_index(n: u64) -> (usize, u64) {
    ((n / 64) as usize, n % 64)
}

impl Semigroup {
    /// The trivial semigroup, all non-negative integers. Conductor and genus
    /// are 0 and the multiplicity is reported as 1.
    pub fn trivial() -> Self {
        let mut words: Words = SmallVec::new();
        words.push(0b11);
        Semigroup {
            words,
            bound: 2,
            conductor: 0,
            genus: 0,
            multiplicity: 1,
        }
    }

    /// Builds a semigroup from raw membership bits over `[0, raw_bound)`.
    ///
    /// The caller guarantees the bit set is additively closed, contains 0,
    /// and is all-ones from some point on within the range. The mask is
    /// re-sliced to the canonical `conductor + 2 * multiplicity` bound so
    /// that equal member sets compare equal.
    fn from_raw_bits(raw: &[u64], raw_bound: u64) -> Self {
        debug_assert!(raw_bound >= 1 && raw[0] & 1 == 1);
        let bit = |n: u64| -> bool {
            let (w, b) = word_index(n);
            raw[w] >> b & 1 == 1
        };
        let mut conductor = 0;
        for n in (0..raw_bound).rev() {
            if !bit(n) {
                conductor = n + 1;
                break;
            }
        }
        let mut genus = 0;
        let mut multiplicity = 0;
        for n in 1..conductor {
            if bit(n) {
                if multiplicity == 0 {
                    multiplicity = n;
                }
            } else {
                genus += 1;
            }
        }
        if multiplicity == 0 {
            // No nonzero member below the conductor: ordinary (or trivial).
            multiplicity = if conductor == 0 { 1 } else { conductor };
        }
        let bound = conductor + 2 * multiplicity;
        let nwords = (bound as usize).div_ceil(64);
        let mut words: Words = SmallVec::with_capacity(nwords);
        words.resize(nwords, 0);
        for n in 0..bound.min(raw_bound) {
            if bit(n) {
                let (w, b) = word_index(n);
                words[w] |= 1 << b;
            }
        }
        // Everything at or past raw_bound is a member by cofiniteness.
        for n in raw_bound..bound {
            let (w, b) = word_index(n);
            words[w] |= 1 << b;
        }
        Semigroup {
            words,
            bound,
            conductor,
            genus,
            multiplicity,
        }
    }

    /// Smallest additively closed subset of the non-negative integers
    /// containing 0 and all of `gens`.
    ///
    /// The generators must be positive and the list nonempty; their gcd must
    /// be 1, otherwise the complement would be infinite.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        assert!(!gens.is_empty(), "generator list must be nonempty");
        assert!(gens.iter().all(|&a| a > 0), "generators must be positive");
        let gcd = gens.iter().fold(0u64, |acc, &a| num_integer::gcd(acc, a));
        if gcd != 1 {
            return Err(SemigroupError::GcdNotOne { gcd });
        }
        let lo = *gens.iter().min().unwrap();
        let hi = *gens.iter().max().unwrap();
        // Start from the two-generator Frobenius bound and double until the
        // sieve shows a run of `lo` consecutive members: once [x, x+lo) are
        // all members, every larger integer reduces into the run modulo lo.
        let mut raw_bound = ((lo - 1) * (hi - 1) + lo + 1).max(hi + 2).max(2);
        loop {
            let nwords = (raw_bound as usize).div_ceil(64);
            let mut raw = vec![0u64; nwords];
            raw[0] |= 1;
            for &a in gens {
                if a < raw_bound {
                    let (w, b) = word_index(a);
                    raw[w] |= 1 << b;
                }
            }
            for n in 1..raw_bound {
                let (w, b) = word_index(n);
                if raw[w] >> b & 1 == 0 {
                    continue;
                }
                for &a in gens {
                    let s = n + a;
                    if s < raw_bound {
                        let (ws, bs) = word_index(s);
                        raw[ws] |= 1 << bs;
                    }
                }
            }
            let run_complete = (raw_bound - lo..raw_bound).all(|n| {
                let (w, b) = word_index(n);
                raw[w] >> b & 1 == 1
            });
            if run_complete {
                return Ok(Self::from_raw_bits(&raw, raw_bound));
            }
            raw_bound *= 2;
        }
    }

    /// Complement of the given gap set, if it is additively closed.
    pub fn from_gaps(gaps: &[u64]) -> Result<Self, SemigroupError> {
        if gaps.is_empty() {
            return Ok(Self::trivial());
        }
        if gaps.contains(&0) {
            return Err(SemigroupError::ZeroGap);
        }
        let conductor = gaps.iter().max().unwrap() + 1;
        let raw_bound = conductor + 1;
        let nwords = (raw_bound as usize).div_ceil(64);
        let mut raw = vec![!0u64; nwords];
        for &l in gaps {
            let (w, b) = word_index(l);
            raw[w] &= !(1 << b);
        }
        // Closure check: members a <= b below the conductor whose sum is
        // still below the conductor must themselves be members.
        let bit = |n: u64| -> bool {
            let (w, b) = word_index(n);
            raw[w] >> b & 1 == 1
        };
        for a in 1..conductor {
            if !bit(a) {
                continue;
            }
            for b in a..conductor {
                if !bit(b) {
                    continue;
                }
                let s = a + b;
                if s < conductor && !bit(s) {
                    return Err(SemigroupError::NotClosed { a, b });
                }
            }
        }
        Ok(Self::from_raw_bits(&raw, raw_bound))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// Exclusive upper end of the materialized bitmask.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Largest gap, if any.
    pub fn frobenius(&self) -> Option<u64> {
        if self.conductor == 0 {
            None
        } else {
            Some(self.conductor - 1)
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 0
    }

    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        if n >= self.conductor {
            return true;
        }
        let (w, b) = word_index(n);
        self.words[w] >> b & 1 == 1
    }

    /// Gaps in ascending order.
    pub fn gaps(&self) -> Vec<u64> {
        (1..self.conductor).filter(|&n| !self.contains(n)).collect()
    }

    /// Nonzero members strictly below the conductor, ascending.
    pub fn small_members(&self) -> Vec<u64> {
        (1..self.conductor).filter(|&n| self.contains(n)).collect()
    }

    /// The i-th member under the increasing enumeration (lambda_0 = 0).
    pub fn lambda(&self, i: u64) -> u64 {
        // conductor - genus counts the members below the conductor, so the
        // conductor itself sits at that index and everything past it is
        // index + genus.
        let small_count = self.conductor - self.genus;
        if i >= small_count {
            return i + self.genus;
        }
        let mut seen = 0;
        for n in 0..self.conductor {
            if self.contains(n) {
                if seen == i {
                    return n;
                }
                seen += 1;
            }
        }
        unreachable!("enumeration index {i} not resolved")
    }

    /// Index of a member under the enumeration; inverse of [`lambda`].
    ///
    /// [`lambda`]: Semigroup::lambda
    pub fn lambda_index(&self, n: u64) -> Result<u64, SemigroupError> {
        if !self.contains(n) {
            return Err(SemigroupError::NotMember { n });
        }
        if n >= self.conductor {
            return Ok(n - self.genus);
        }
        Ok((0..n).filter(|&x| self.contains(x)).count() as u64)
    }

    /// View of the increasing enumeration of members.
    pub fn enumeration(&self) -> Enumeration<'_> {
        Enumeration { s: self }
    }

    /// Minimal generators: nonzero members that are not the sum of two
    /// nonzero members. Ascending.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let mut gens = Vec::new();
        for x in 1..self.bound.max(2) {
            if !self.contains(x) {
                continue;
            }
            if !self.is_sum_of_two_members(x) {
                gens.push(x);
            }
        }
        gens
    }

    /// True when `x` decomposes as a sum of two nonzero members.
    #[inline]
    pub(crate) fn is_sum_of_two_members(&self, x: u64) -> bool {
        let m = self.multiplicity;
        if x < 2 * m {
            return false;
        }
        for a in m..=x / 2 {
            if self.contains(a) && self.contains(x - a) {
                return true;
            }
        }
        false
    }

    /// D(i): gaps `l` such that `lambda_i - l` is also a gap.
    pub fn d_set(&self, i: u64) -> Vec<u64> {
        let v = self.lambda(i);
        (1..self.conductor.min(v))
            .filter(|&l| !self.contains(l) && !self.contains(v - l))
            .collect()
    }

    /// nu_i: the number of indices j with `lambda_i - lambda_j` a member.
    pub fn nu(&self, i: u64) -> u64 {
        let v = self.lambda(i);
        (0..=v)
            .filter(|&x| self.contains(x) && self.contains(v - x))
            .count() as u64
    }

    /// Generator test for members at or above the conductor: `lambda_i` is a
    /// minimal generator if and only if `#D(i) = g - i + 1`.
    pub fn is_generator_above_conductor(&self, i: u64) -> Result<bool, SemigroupError> {
        let value = self.lambda(i);
        if value < self.conductor {
            return Err(SemigroupError::IndexBelowConductor {
                index: i,
                value,
                conductor: self.conductor,
            });
        }
        if i > self.genus + 1 {
            // #D(i) >= 0 can never equal the negative g - i + 1.
            return Ok(false);
        }
        Ok(self.d_set(i).len() as u64 == self.genus + 1 - i)
    }

    /// Removes an effective generator, producing the child semigroup in the
    /// genus tree. The caller must pass a minimal generator at or above the
    /// conductor; this is debug-asserted, not checked.
    pub(crate) fn remove_member(&self, e: u64) -> Semigroup {
        debug_assert!(self.contains(e) && e >= self.conductor);
        debug_assert!(!self.is_sum_of_two_members(e));
        let conductor = e + 1;
        let multiplicity = if e == self.multiplicity {
            e + 1
        } else {
            self.multiplicity
        };
        let bound = conductor + 2 * multiplicity;
        let nwords = (bound as usize).div_ceil(64);
        let mut words = self.words.clone();
        words.resize(nwords, 0);
        for n in self.bound..bound {
            let (w, b) = word_index(n);
            words[w] |= 1 << b;
        }
        // Mask off anything past the new bound carried over from the parent.
        let tail = bound % 64;
        if tail != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << tail) - 1;
        }
        let (w, b) = word_index(e);
        words[w] &= !(1 << b);
        Semigroup {
            words,
            bound,
            conductor,
            genus: self.genus + 1,
            multiplicity,
        }
    }

    /// Adds the Frobenius number back, producing the parent in the genus
    /// tree. Only the trivial semigroup has no parent.
    pub(crate) fn add_frobenius(&self) -> Semigroup {
        debug_assert!(!self.is_trivial());
        let f = self.conductor - 1;
        let nwords = (self.bound as usize).div_ceil(64);
        let mut raw = self.words.clone();
        raw.resize(nwords, 0);
        let (w, b) = word_index(f);
        raw[w] |= 1 << b;
        Semigroup::from_raw_bits(&raw, self.bound)
    }

    /// Canonical text form: minimal generators in angle brackets.
    pub fn canonical_string(&self) -> String {
        let gens: Vec<String> = self
            .minimal_generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        format!("<{}>", gens.join(","))
    }

    /// Parses either the generator form `<a1,a2,...>` or the gap form
    /// `G:{g1,g2,...}`.
    pub fn parse(text: &str) -> Result<Self, SemigroupError> {
        let t = text.trim();
        if let Some(body) = t.strip_prefix('<') {
            let body = body.strip_suffix('>').ok_or_else(|| SemigroupError::Parse {
                position: text.len(),
                message: "expected closing '>'".into(),
            })?;
            let gens = parse_number_list(body, t.find('<').unwrap_or(0) + 1)?;
            if gens.is_empty() {
                return Err(SemigroupError::Parse {
                    position: 1,
                    message: "generator list must be nonempty".into(),
                });
            }
            if let Some(pos) = gens.iter().position(|&g| g == 0) {
                return Err(SemigroupError::Parse {
                    position: pos,
                    message: "generators must be positive".into(),
                });
            }
            return Self::from_generators(&gens);
        }
        if let Some(body) = t.strip_prefix("G:{") {
            let body = body.strip_suffix('}').ok_or_else(|| SemigroupError::Parse {
                position: text.len(),
                message: "expected closing '}'".into(),
            })?;
            let gaps = parse_number_list(body, 3)?;
            return Self::from_gaps(&gaps);
        }
        Err(SemigroupError::Parse {
            position: 0,
            message: "expected '<gens>' or 'G:{gaps}'".into(),
        })
    }

    /// Machine-readable record with fixed field order.
    pub fn record(&self) -> SemigroupRecord {
        SemigroupRecord {
            gens: self.minimal_generators(),
            gaps: self.gaps(),
            c: self.conductor,
            g: self.genus,
            m: self.multiplicity,
        }
    }
}

fn parse_number_list(body: &str, offset: usize) -> Result<Vec<u64>, SemigroupError> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pos = offset;
    for piece in body.split(',') {
        let v = piece
            .trim()
            .parse::<u64>()
            .map_err(|e| SemigroupError::Parse {
                position: pos,
                message: format!("bad number {piece:?}: {e}"),
            })?;
        out.push(v);
        pos += piece.len() + 1;
    }
    Ok(out)
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl PartialOrd for Semigroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Semigroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.genus
            .cmp(&other.genus)
            .then_with(|| self.gaps().cmp(&other.gaps()))
    }
}

/// The unique increasing bijection from indices onto the members.
pub struct Enumeration<'a> {
    s: &'a Semigroup,
}

impl Enumeration<'_> {
    pub fn value(&self, i: u64) -> u64 {
        self.s.lambda(i)
    }

    pub fn index_of(&self, n: u64) -> Result<u64, SemigroupError> {
        self.s.lambda_index(n)
    }

    /// Iterates members in increasing order, without end.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..).filter(|&n| self.s.contains(n))
    }
}
