//! Class predicates: ordinary, symmetric, pseudo-symmetric, hyperelliptic,
//! Arf, irreducible, plus the two explicit pseudo-symmetric families with
//! multiplicity 3.

use serde::Serialize;
use thiserror::Error;

use crate::semigroup::Semigroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("family is defined for genus >= 3, got {g}")]
    BadGenus { g: u64 },
    #[error("family parameter must be >= 1, got {k}")]
    BadParameter { k: u64 },
}

/// Class membership flags, in fixed reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub ordinary: bool,
    pub symmetric: bool,
    pub pseudo_symmetric: bool,
    pub hyperelliptic: bool,
    pub arf: bool,
    pub irreducible: bool,
}

impl ClassFlags {
    pub fn of(s: &Semigroup) -> Self {
        let symmetric = s.is_symmetric();
        let pseudo_symmetric = s.is_pseudo_symmetric();
        ClassFlags {
            ordinary: s.is_ordinary(),
            symmetric,
            pseudo_symmetric,
            hyperelliptic: s.is_hyperelliptic(),
            arf: s.is_arf(),
            irreducible: symmetric || pseudo_symmetric,
        }
    }

    /// Names of the set flags, in fixed order.
    pub fn set_names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.ordinary {
            out.push("ordinary");
        }
        if self.symmetric {
            out.push("symmetric");
        }
        if self.pseudo_symmetric {
            out.push("pseudo_symmetric");
        }
        if self.hyperelliptic {
            out.push("hyperelliptic");
        }
        if self.arf {
            out.push("arf");
        }
        if self.irreducible {
            out.push("irreducible");
        }
        out
    }
}

impl Semigroup {
    /// Ordinary: {0} together with everything from the conductor on. The
    /// trivial semigroup counts as ordinary.
    pub fn is_ordinary(&self) -> bool {
        self.is_trivial() || self.multiplicity() == self.conductor()
    }

    /// Symmetric: conductor equals twice the genus.
    pub fn is_symmetric(&self) -> bool {
        self.conductor() == 2 * self.genus()
    }

    /// Pseudo-symmetric: conductor equals twice the genus minus one.
    pub fn is_pseudo_symmetric(&self) -> bool {
        self.genus() > 0 && self.conductor() == 2 * self.genus() - 1
    }

    /// Hyperelliptic: generated by 2 and an odd number, i.e. multiplicity 2.
    pub fn is_hyperelliptic(&self) -> bool {
        self.multiplicity() == 2
    }

    /// Irreducible: not an intersection of two strictly larger semigroups,
    /// which happens exactly for symmetric and pseudo-symmetric ones.
    pub fn is_irreducible(&self) -> bool {
        self.is_symmetric() || self.is_pseudo_symmetric()
    }

    /// Arf: lambda_i + lambda_j - lambda_k is a member for all i >= j >= k.
    ///
    /// Only triples with lambda_i below the conductor need checking: for
    /// lambda_i >= c the combination is at least lambda_i and hence a member.
    pub fn is_arf(&self) -> bool {
        let small: Vec<u64> = (0..self.conductor()).filter(|&n| self.contains(n)).collect();
        for (ii, &a) in small.iter().enumerate() {
            for (jj, &b) in small[..=ii].iter().enumerate() {
                for &c in &small[..=jj] {
                    if !self.contains(a + b - c) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Mirror formulation of symmetry: i is a gap iff c-1-i is a member, for
/// every i below the conductor. Kept separate from [`Semigroup::is_symmetric`]
/// so the two formulations can be asserted against each other.
pub fn symmetric_by_mirror(s: &Semigroup) -> bool {
    let c = s.conductor();
    (0..c).all(|i| s.contains(i) != s.contains(c - 1 - i))
}

/// Mirror formulation of pseudo-symmetry: the conductor is odd and i is a
/// gap iff c-1-i is a member, for every i below the conductor other than
/// (c-1)/2.
pub fn pseudo_symmetric_by_mirror(s: &Semigroup) -> bool {
    let c = s.conductor();
    if c == 0 || c.is_multiple_of(2) {
        return false;
    }
    let mid = (c - 1) / 2;
    (0..c).all(|i| i == mid || s.contains(i) != s.contains(c - 1 - i))
}

/// Number of maximal runs of consecutive members strictly between 0 and the
/// conductor.
pub fn nongap_intervals_below_conductor(s: &Semigroup) -> u64 {
    let mut runs = 0;
    let mut in_run = false;
    for n in 1..s.conductor() {
        if s.contains(n) {
            if !in_run {
                runs += 1;
                in_run = true;
            }
        } else {
            in_run = false;
        }
    }
    runs
}

/// The unique pseudo-symmetric semigroup of genus g with a single interval
/// of non-gaps below the conductor: {0, g, ..., 2g-3} plus everything from
/// 2g-1 on.
pub fn ps_family(g: u64) -> Result<Semigroup, ClassError> {
    if g < 3 {
        return Err(ClassError::BadGenus { g });
    }
    let mut gaps: Vec<u64> = (1..g).collect();
    gaps.push(2 * g - 2);
    let s = Semigroup::from_gaps(&gaps).expect("family member is closed");
    assert!(s.is_pseudo_symmetric() && s.genus() == g);
    Ok(s)
}

/// The two families of pseudo-symmetric semigroups with multiplicity 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsMult3Variant {
    /// Genus 3k.
    A,
    /// Genus 3k+2.
    B,
}

pub fn ps_mult3_family(k: u64, variant: PsMult3Variant) -> Result<Semigroup, ClassError> {
    if k == 0 {
        return Err(ClassError::BadParameter { k });
    }
    let mut members: Vec<u64> = (0..=k).map(|i| 3 * i).collect();
    let conductor = match variant {
        PsMult3Variant::A => {
            for i in k + 1..=2 * k - 1 {
                members.push(3 * i - 1);
                members.push(3 * i);
            }
            3 * (2 * k - 1) + 2
        }
        PsMult3Variant::B => {
            for i in k + 1..=2 * k {
                members.push(3 * i);
                members.push(3 * i + 1);
            }
            3 * (2 * k) + 3
        }
    };
    let gaps: Vec<u64> = (1..conductor).filter(|n| !members.contains(n)).collect();
    let s = Semigroup::from_gaps(&gaps).expect("family member is closed");
    let expected_genus = match variant {
        PsMult3Variant::A => 3 * k,
        PsMult3Variant::B => 3 * k + 2,
    };
    assert!(
        s.is_pseudo_symmetric() && s.multiplicity() == 3 && s.genus() == expected_genus,
        "family construction is off for k={k} {variant:?}"
    );
    Ok(s)
}
