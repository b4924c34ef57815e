//! How many framings of a knot are pairwise non-isotopic.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::loop_calculus::{delta, delta_aslk, LoopError, LoopGenerator, LoopWord, MapValue};
use crate::manifold_groups::{ConnectedSumDescriptor, GroupElement, ManifoldError};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("inconsistent knot flags: {0}")]
    InconsistentFlags(String),
    #[error("twist difference {0} is odd")]
    OddDifference(i128),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// A knot, up to what the classifier needs: its free-homotopy class and
/// two geometric flags supplied by the caller.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnotDescriptor {
    pub class: Option<GroupElement>,
    /// Meets one of the nonseparating spheres of an S¹×S² summand in a
    /// single transverse point.
    pub crosses_nonseparating_sphere_once: bool,
    /// Realizes an orientation-reversing loop (nonorientable ambient only).
    pub orientation_reversing: bool,
}

impl KnotDescriptor {
    pub fn validate(&self, m: &ConnectedSumDescriptor) -> Result<(), ClassifyError> {
        if self.crosses_nonseparating_sphere_once && m.s1xs2_count() == 0 {
            return Err(ClassifyError::InconsistentFlags(
                "sphere-crossing knot needs an s1xs2 summand".into(),
            ));
        }
        if self.orientation_reversing && m.orientable {
            return Err(ClassifyError::InconsistentFlags(
                "orientation-reversing knot in an orientable manifold".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FramingCount {
    Infinite,
    Exactly2,
    Unknown,
}

impl fmt::Display for FramingCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FramingCount::Infinite => "infinite",
            FramingCount::Exactly2 => "exactly-2",
            FramingCount::Unknown => "unknown",
        })
    }
}

/// Which rule produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    NoNonseparatingSphere,
    SphereCrossing,
    OrientationReversing,
    DoubleCover,
    Open,
}

impl Rule {
    pub fn justification(self) -> &'static str {
        match self {
            Rule::NoNonseparatingSphere => {
                "orientable and not a connected sum with S1xS2: the self-linking invariant separates every pair of framings"
            }
            Rule::SphereCrossing => {
                "the knot crosses a nonseparating sphere once: sliding over it adds two twists, and spin parity separates the two residues"
            }
            Rule::OrientationReversing => {
                "an orientation-reversing knot: traversing it flips the framing, so twists collapse mod 2, and spin parity separates the two residues"
            }
            Rule::DoubleCover => {
                "orientation-preserving knot whose orientation double cover has no S1xS2 summand: lifts are separated there"
            }
            Rule::Open => "no rule applies; the count is not determined",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FramingVerdict {
    pub count: FramingCount,
    pub rule: Rule,
    pub justification: &'static str,
}

impl FramingVerdict {
    fn new(count: FramingCount, rule: Rule) -> Self {
        Self { count, rule, justification: rule.justification() }
    }
}

/// Number of isotopy classes among the framings `K_f^i`, rules tried in order:
/// (i) orientable without S¹×S² summand; (ii) sphere-crossing knot in an
/// orientable manifold; (iii) orientation-reversing knot; (iv) orientation
/// preserving knot with a supplied double cover lacking S¹×S².
pub fn framing_classes(m: &ConnectedSumDescriptor, k: &KnotDescriptor) -> Result<FramingVerdict, ClassifyError> {
    m.validate()?;
    k.validate(m)?;
    let verdict = if m.orientable {
        if m.excludes_s1xs2() {
            FramingVerdict::new(FramingCount::Infinite, Rule::NoNonseparatingSphere)
        } else if k.crosses_nonseparating_sphere_once {
            FramingVerdict::new(FramingCount::Exactly2, Rule::SphereCrossing)
        } else {
            FramingVerdict::new(FramingCount::Unknown, Rule::Open)
        }
    } else if k.orientation_reversing {
        FramingVerdict::new(FramingCount::Exactly2, Rule::OrientationReversing)
    } else {
        match &m.double_cover {
            Some(cover) if cover.excludes_s1xs2() => FramingVerdict::new(FramingCount::Infinite, Rule::DoubleCover),
            _ => FramingVerdict::new(FramingCount::Unknown, Rule::Open),
        }
    };
    Ok(verdict)
}

/// Framings differing by an odd number of twists lie in different
/// components of the space of framed curves.
pub fn spin_parity_distinct(i: i64, j: i64) -> bool {
    i.rem_euclid(2) != j.rem_euclid(2)
}

/// Groups twist counts into the classes that remain when twists collapse
/// in steps of two: evens first, then odds; empty classes are omitted.
pub fn even_collapse_classes(twists: &[i64]) -> Vec<Vec<i64>> {
    let mut even: Vec<i64> = twists.iter().copied().filter(|t| t.rem_euclid(2) == 0).collect();
    let mut odd: Vec<i64> = twists.iter().copied().filter(|t| t.rem_euclid(2) == 1).collect();
    for class in [&mut even, &mut odd] {
        class.sort_unstable();
        class.dedup();
    }
    [even, odd].into_iter().filter(|c| !c.is_empty()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Separation {
    /// The self-linking values differ by `gap`, so the framings are distinct.
    Separated { gap: i64 },
    /// Equal framings: there is nothing to separate.
    Equal,
    /// The invariant is not available here. This is not a proof of isotopy.
    NoCertificate { reason: String },
}

/// Whether the self-linking invariant certifies that `K_f^i` and `K_f^j`
/// (with `j - i = 2k` even) are not isotopic. The gap is read off as
/// `Delta_aslk(g2^k)`, cross-checked against `delta`.
pub fn aslk_separates(
    i: i64,
    j: i64,
    m: &ConnectedSumDescriptor,
    k: &KnotDescriptor,
) -> Result<Separation, ClassifyError> {
    let diff = i128::from(j) - i128::from(i);
    if diff % 2 != 0 {
        return Err(ClassifyError::OddDifference(diff));
    }
    if diff == 0 {
        return Ok(Separation::Equal);
    }
    let verdict = framing_classes(m, k)?;
    if verdict.count != FramingCount::Infinite {
        return Ok(Separation::NoCertificate {
            reason: format!("self-linking invariant unavailable ({} case)", verdict.count),
        });
    }
    let half = i64::try_from(diff / 2).map_err(|_| LoopError::Overflow)?;
    let word = LoopWord::power(LoopGenerator::Kink, half);
    let d = delta(&word)?;
    match delta_aslk(&word)? {
        MapValue::Defined(gap) if gap == d => Ok(Separation::Separated { gap }),
        other => Ok(Separation::NoCertificate { reason: format!("jump map gave {other}, delta gave {d}") }),
    }
}
