use std::fmt;

use serde::{Deserialize, Serialize};

use super::loop_word::{LoopGenerator, LoopWord};
use super::LoopError;
use crate::manifold_groups::{GroupElement, ManifoldGroup};
use crate::Sign;

/// Whether the fiber-slide values of `Delta~_aslk` are established for the
/// knot. They are when the projection of `K` to the base orbifold has no
/// double point splitting it into two orientation-reversing loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiberSlideCase {
    #[default]
    Unspecified,
    NoReversingSplit,
    ReversingSplit,
}

/// Hypotheses that gate individual generator values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ContextFlags {
    /// `K` is homotopic into one irreducible summand.
    pub in_irreducible_summand: bool,
    pub fiber_slide: FiberSlideCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnavailableReason {
    /// The untilded invariant has no established fiber-slide value.
    FiberSlideUntabulated,
    /// The untilded invariant has no established value on the auxiliary loop.
    AlphaSquaredUntabulated,
    /// The sphere-slide value of the tilded invariant needs `K` inside an
    /// irreducible summand.
    SphereSlideNeedsIrreducibleSummand,
    /// The fiber-slide value of the tilded invariant needs the
    /// no-reversing-split case.
    FiberSlideCaseNotEstablished,
}

impl fmt::Display for UnavailableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::FiberSlideUntabulated => "no fiber-slide value for the untilded invariant",
            Self::AlphaSquaredUntabulated => "no auxiliary-loop value for the untilded invariant",
            Self::SphereSlideNeedsIrreducibleSummand => "sphere slide requires the knot in an irreducible summand",
            Self::FiberSlideCaseNotEstablished => "fiber slide requires the no-reversing-split case",
        })
    }
}

/// Value of a homomorphism to Z, or the reason it is not defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapValue {
    Defined(i64),
    Unavailable(UnavailableReason),
}

impl MapValue {
    pub fn defined(self) -> Option<i64> {
        match self {
            MapValue::Defined(v) => Some(v),
            MapValue::Unavailable(_) => None,
        }
    }
}

impl fmt::Display for MapValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapValue::Defined(v) => write!(f, "{v}"),
            MapValue::Unavailable(r) => write!(f, "unavailable ({r})"),
        }
    }
}

fn evaluate<F>(w: &LoopWord, table: F) -> Result<MapValue, LoopError>
where
    F: Fn(LoopGenerator) -> MapValue,
{
    let mut total = 0i64;
    for &(g, e) in w.letters() {
        match table(g) {
            MapValue::Defined(v) => {
                let term = v.checked_mul(e).ok_or(LoopError::Overflow)?;
                total = total.checked_add(term).ok_or(LoopError::Overflow)?;
            }
            unavailable => return Ok(unavailable),
        }
    }
    Ok(MapValue::Defined(total))
}

fn kink_only(g: LoopGenerator) -> i64 {
    if g == LoopGenerator::Kink {
        2
    } else {
        0
    }
}

/// Framing-change counter: 2 on the kink loop, 0 on every other generator.
pub fn delta(w: &LoopWord) -> Result<i64, LoopError> {
    match evaluate(w, |g| MapValue::Defined(kink_only(g)))? {
        MapValue::Defined(v) => Ok(v),
        MapValue::Unavailable(_) => unreachable!("delta is defined on every generator"),
    }
}

pub fn delta_aslk(w: &LoopWord) -> Result<MapValue, LoopError> {
    evaluate(w, |g| match g {
        LoopGenerator::FiberSlide(_) => MapValue::Unavailable(UnavailableReason::FiberSlideUntabulated),
        LoopGenerator::AlphaSquared => MapValue::Unavailable(UnavailableReason::AlphaSquaredUntabulated),
        other => MapValue::Defined(kink_only(other)),
    })
}

pub fn delta_aslk_tilde(w: &LoopWord, flags: &ContextFlags) -> Result<MapValue, LoopError> {
    evaluate(w, |g| match g {
        LoopGenerator::SphereSlide(_) if !flags.in_irreducible_summand => {
            MapValue::Unavailable(UnavailableReason::SphereSlideNeedsIrreducibleSummand)
        }
        LoopGenerator::FiberSlide(_) if flags.fiber_slide != FiberSlideCase::NoReversingSplit => {
            MapValue::Unavailable(UnavailableReason::FiberSlideCaseNotEstablished)
        }
        other => MapValue::Defined(kink_only(other)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum IdentityVerdict {
    /// Every available map agrees with `delta`.
    Holds,
    /// A defined value differs from `delta`.
    Fails { map: String, delta: i64, value: i64 },
    /// Neither map is defined on the word; nothing was compared.
    Unverifiable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// Cyclic normal form of the evaluated word.
    pub word: String,
    pub delta: i64,
    pub aslk: MapValue,
    pub aslk_tilde: MapValue,
    pub verdict: IdentityVerdict,
}

/// Compares `delta` with whichever of the two invariants' jump maps is
/// defined on `w`.
pub fn verify_identity(w: &LoopWord, flags: &ContextFlags) -> Result<IdentityReport, LoopError> {
    let normal = w.cyclic_normal_form()?;
    let d = delta(&normal)?;
    let aslk = delta_aslk(&normal)?;
    let aslk_tilde = delta_aslk_tilde(&normal, flags)?;
    let mut compared = false;
    let mut verdict = IdentityVerdict::Holds;
    for (name, value) in [("aslk", aslk), ("aslk_tilde", aslk_tilde)] {
        if let MapValue::Defined(v) = value {
            compared = true;
            if v != d && verdict == IdentityVerdict::Holds {
                verdict = IdentityVerdict::Fails { map: name.into(), delta: d, value: v };
            }
        }
    }
    if !compared {
        verdict = IdentityVerdict::Unverifiable;
    }
    Ok(IdentityReport { word: normal.to_string(), delta: d, aslk, aslk_tilde, verdict })
}

/// One crossing of the discriminant along a path of knots: its sign and the
/// class of one of the two loops of the singular knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantCrossing {
    pub sign: Sign,
    pub loop_class: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathRecord {
    pub crossings: Vec<DiscriminantCrossing>,
}

impl PathRecord {
    pub fn sign_sum(&self) -> Result<i64, LoopError> {
        self.crossings
            .iter()
            .try_fold(0i64, |acc, c| acc.checked_add(c.sign.value()).ok_or(LoopError::Overflow))
    }
}

/// `sum 2 sigma_j` over every crossing.
pub fn path_delta_aslk(rec: &PathRecord) -> Result<i64, LoopError> {
    rec.sign_sum()?.checked_mul(2).ok_or(LoopError::Overflow)
}

/// `sum 2 sigma_j` over the crossings whose loop is contractible.
pub fn path_delta_aslk_tilde(rec: &PathRecord, group: &ManifoldGroup) -> Result<i64, LoopError> {
    let mut total = 0i64;
    for c in &rec.crossings {
        if !group.owns(&c.loop_class) {
            return Err(LoopError::ForeignElement(c.loop_class.to_string()));
        }
        if c.loop_class.is_identity() {
            total = total.checked_add(2 * c.sign.value()).ok_or(LoopError::Overflow)?;
        }
    }
    Ok(total)
}
