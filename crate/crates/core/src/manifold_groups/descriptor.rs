use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix2;
use super::seifert::SeifertPresentation;
use super::ManifoldError;
use crate::words::{Order, PresentedGroup};

/// One prime summand of a connected sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Summand {
    S3,
    Lens {
        p: u32,
        q: i64,
    },
    Seifert {
        presentation: SeifertPresentation,
    },
    TorusBundle {
        monodromy: IntMatrix2,
    },
    #[serde(rename = "s1xs2")]
    S1xS2,
    /// An irreducible summand given without further structure.
    OpaqueIrreducible {
        #[serde(default)]
        label: Option<String>,
    },
    /// A prime summand not known to be irreducible (it may be S¹×S²).
    OpaquePrime {
        #[serde(default)]
        label: Option<String>,
    },
}

fn default_true() -> bool {
    true
}

/// A 3-manifold given as a connected sum of declared summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectedSumDescriptor {
    pub summands: Vec<Summand>,
    #[serde(default = "default_true")]
    pub orientable: bool,
    /// Orientation double cover, for nonorientable manifolds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double_cover: Option<Box<ConnectedSumDescriptor>>,
}

/// The fundamental group of a descriptor, when it is one the word
/// machinery handles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldGroup {
    Presented(Arc<PresentedGroup>),
    TorusBundle(IntMatrix2),
}

impl ConnectedSumDescriptor {
    pub fn orientable(summands: Vec<Summand>) -> Self {
        Self { summands, orientable: true, double_cover: None }
    }

    pub fn validate(&self) -> Result<(), ManifoldError> {
        if self.summands.is_empty() {
            return Err(ManifoldError::InvalidDescriptor("connected sum has no summands".into()));
        }
        for s in &self.summands {
            match s {
                Summand::Lens { p, q } => {
                    if *p == 0 {
                        return Err(ManifoldError::InvalidDescriptor("lens(0, q) is s1xs2; use that family".into()));
                    }
                    if i64::from(*p).gcd(q) != 1 {
                        return Err(ManifoldError::InvalidDescriptor(format!("lens({p}, {q}) needs gcd(p, q) = 1")));
                    }
                }
                Summand::TorusBundle { monodromy } if !monodromy.is_unimodular() => {
                    return Err(ManifoldError::NotUnimodular(*monodromy));
                }
                _ => {}
            }
        }
        match (&self.double_cover, self.orientable) {
            (Some(_), true) => Err(ManifoldError::InvalidDescriptor(
                "double_cover is only meaningful for nonorientable manifolds".into(),
            )),
            (Some(cover), false) => {
                if !cover.orientable {
                    return Err(ManifoldError::InvalidDescriptor("orientation double cover must be orientable".into()));
                }
                cover.validate()
            }
            (None, _) => Ok(()),
        }
    }

    pub fn s1xs2_count(&self) -> usize {
        self.summands.iter().filter(|s| matches!(s, Summand::S1xS2)).count()
    }

    /// True when no summand is, or may be, S¹×S²: the manifold contains no
    /// nonseparating sphere.
    pub fn excludes_s1xs2(&self) -> bool {
        !self.summands.iter().any(|s| matches!(s, Summand::S1xS2 | Summand::OpaquePrime { .. }))
    }

    /// Fundamental group for the supported shapes: a single Seifert summand
    /// with boundary, a single torus bundle, or a sum of S³, lens spaces and
    /// S¹×S² (a free product of cyclic groups on `c_i` and `d_i`).
    pub fn fundamental_group(&self) -> Result<ManifoldGroup, ManifoldError> {
        self.validate()?;
        if !self.orientable {
            return Err(ManifoldError::Unsupported("nonorientable ambient manifold".into()));
        }
        let nontrivial: Vec<&Summand> = self.summands.iter().filter(|s| !matches!(s, Summand::S3)).collect();
        match nontrivial.as_slice() {
            [Summand::Seifert { presentation }] => return Ok(ManifoldGroup::Presented(presentation.seifert_group()?)),
            [Summand::TorusBundle { monodromy }] => return Ok(ManifoldGroup::TorusBundle(*monodromy)),
            _ => {}
        }
        let mut factors: Vec<(String, Order)> = Vec::new();
        let (mut lens, mut handles) = (0, 0);
        for s in nontrivial {
            match s {
                Summand::Lens { p: 1, .. } => {}
                Summand::Lens { p, .. } => {
                    lens += 1;
                    factors.push((format!("c{lens}"), Order::Finite(*p)));
                }
                Summand::S1xS2 => {
                    handles += 1;
                    factors.push((format!("d{handles}"), Order::Infinite));
                }
                other => {
                    return Err(ManifoldError::Unsupported(format!(
                        "no word problem for a connected sum containing {}",
                        summand_name(other)
                    )))
                }
            }
        }
        Ok(ManifoldGroup::Presented(Arc::new(PresentedGroup::free_product(&factors)?)))
    }
}

fn summand_name(s: &Summand) -> &'static str {
    match s {
        Summand::S3 => "s3",
        Summand::Lens { .. } => "lens",
        Summand::Seifert { .. } => "seifert",
        Summand::TorusBundle { .. } => "torus-bundle",
        Summand::S1xS2 => "s1xs2",
        Summand::OpaqueIrreducible { .. } => "opaque-irreducible",
        Summand::OpaquePrime { .. } => "opaque-prime",
    }
}
