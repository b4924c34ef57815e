use std::fmt;

use super::descriptor::ManifoldGroup;
use super::semidirect::{semidirect_inverse, semidirect_mul, semidirect_power, SemidirectElement};
use super::ManifoldError;
use crate::words::{GroupKind, GroupWord};

/// An element of a [`ManifoldGroup`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupElement {
    Word(GroupWord),
    Semidirect(SemidirectElement),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Word(w) => w.fmt(f),
            GroupElement::Semidirect(s) => s.fmt(f),
        }
    }
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Word(w) => w.is_identity(),
            GroupElement::Semidirect(s) => s.is_identity(),
        }
    }
}

fn mismatch() -> ManifoldError {
    ManifoldError::Unsupported("element does not belong to this group".into())
}

impl ManifoldGroup {
    pub fn identity(&self) -> GroupElement {
        match self {
            ManifoldGroup::Presented(g) => GroupElement::Word(GroupWord::identity(g)),
            ManifoldGroup::TorusBundle(_) => GroupElement::Semidirect(SemidirectElement::IDENTITY),
        }
    }

    /// The class of the regular fiber, when the group has one.
    pub fn fiber(&self) -> Option<GroupElement> {
        match self {
            ManifoldGroup::Presented(g) => GroupWord::fiber(g).ok().map(GroupElement::Word),
            ManifoldGroup::TorusBundle(_) => Some(GroupElement::Semidirect(SemidirectElement::fiber(1))),
        }
    }

    pub fn has_fiber(&self) -> bool {
        match self {
            ManifoldGroup::Presented(g) => g.kind() == GroupKind::FiberExtension,
            ManifoldGroup::TorusBundle(_) => true,
        }
    }

    pub fn parse(&self, text: &str) -> Result<GroupElement, ManifoldError> {
        match self {
            ManifoldGroup::Presented(g) => Ok(GroupElement::Word(GroupWord::parse(g, text)?)),
            ManifoldGroup::TorusBundle(d) => Ok(GroupElement::Semidirect(SemidirectElement::parse(text, d)?)),
        }
    }

    pub fn owns(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (ManifoldGroup::Presented(g), GroupElement::Word(w)) => **w.group() == **g,
            (ManifoldGroup::TorusBundle(_), GroupElement::Semidirect(_)) => true,
            _ => false,
        }
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, ManifoldError> {
        match (self, x, y) {
            (ManifoldGroup::Presented(_), GroupElement::Word(u), GroupElement::Word(v)) => {
                Ok(GroupElement::Word(u.multiply(v)?))
            }
            (ManifoldGroup::TorusBundle(d), GroupElement::Semidirect(u), GroupElement::Semidirect(v)) => {
                Ok(GroupElement::Semidirect(semidirect_mul(u, v, d)?))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement, ManifoldError> {
        match (self, x) {
            (ManifoldGroup::Presented(_), GroupElement::Word(u)) => Ok(GroupElement::Word(u.inverse())),
            (ManifoldGroup::TorusBundle(d), GroupElement::Semidirect(u)) => {
                Ok(GroupElement::Semidirect(semidirect_inverse(u, d)?))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn pow(&self, x: &GroupElement, n: i64) -> Result<GroupElement, ManifoldError> {
        match (self, x) {
            (ManifoldGroup::Presented(_), GroupElement::Word(u)) => Ok(GroupElement::Word(u.pow(n)?)),
            (ManifoldGroup::TorusBundle(d), GroupElement::Semidirect(u)) => {
                Ok(GroupElement::Semidirect(semidirect_power(u, n, d)?))
            }
            _ => Err(mismatch()),
        }
    }

    pub fn commutes(&self, x: &GroupElement, y: &GroupElement) -> Result<bool, ManifoldError> {
        Ok(self.multiply(x, y)? == self.multiply(y, x)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold_groups::{IntMatrix2, SeifertPresentation};

    #[test]
    fn arithmetic_dispatches_by_group() {
        let seifert = SeifertPresentation::new(&[(2, 1), (3, 1)], 1).unwrap();
        let g = ManifoldGroup::Presented(seifert.seifert_group().unwrap());
        let x = g.parse("c1 c2").unwrap();
        let f = g.fiber().unwrap();
        assert!(g.commutes(&x, &f).unwrap());
        assert_eq!(g.pow(&x, 0).unwrap(), g.identity());

        let t = ManifoldGroup::TorusBundle(IntMatrix2::C);
        let k = t.parse("m f").unwrap();
        assert_eq!(t.pow(&k, 3).unwrap().to_string(), "f^3");
        assert!(t.multiply(&k, &x).is_err());
        assert!(!t.owns(&x));
    }
}
