use std::sync::Arc;

use serde::Serialize;

use super::group::{GeneratorId, GroupKind, Order, PresentedGroup};
use super::word::{GroupWord, Letter};
use super::WordError;

fn require_free_product(group: &PresentedGroup) -> Result<(), WordError> {
    match group.kind() {
        GroupKind::Free | GroupKind::FreeProductOfCyclics => Ok(()),
        GroupKind::FiberExtension => Err(WordError::NotFreeProduct),
    }
}

/// Writes `w = conjugator · core · conjugator^-1` with `core` cyclically
/// reduced: its first and last base letters use different generators.
pub fn cyclic_reduce(w: &GroupWord) -> Result<(GroupWord, GroupWord), WordError> {
    let group = w.group();
    let mut core = w.clone();
    let mut conjugator = GroupWord::identity(group);
    loop {
        let base = core.base_letters();
        let n = base.len();
        if n < 2 || base[0].generator != base[n - 1].generator {
            break;
        }
        let h = GroupWord::reduce(group, [base[0]])?;
        core = h.inverse().multiply(&core)?.multiply(&h)?;
        conjugator = conjugator.multiply(&h)?;
    }
    Ok((core, conjugator))
}

/// Smallest period `p` of `letters` with `p | len`.
fn period(letters: &[Letter]) -> usize {
    let n = letters.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (p..n).all(|i| letters[i] == letters[i - p]))
        .unwrap_or(n)
}

/// Writes `w = root^exponent` with `exponent` maximal.
pub fn primitive_root(w: &GroupWord) -> Result<(GroupWord, u64), WordError> {
    let group = w.group();
    require_free_product(group)?;
    if w.is_identity() {
        return Err(WordError::IdentityElement);
    }
    let (core, conjugator) = cyclic_reduce(w)?;
    let letters = core.letters();
    let (root_core, exponent) = if letters.len() == 1 {
        let l = letters[0];
        if group.order(l.generator).is_finite() {
            return Err(WordError::Torsion);
        }
        let root = GroupWord::reduce(group, [Letter::new(l.generator, l.exponent.signum())])?;
        (root, l.exponent.unsigned_abs())
    } else {
        let p = period(letters);
        let root = GroupWord::reduce(group, letters[..p].iter().copied())?;
        (root, (letters.len() / p) as u64)
    };
    Ok((root_core.conjugate_by(&conjugator)?, exponent))
}

/// If `g` is conjugate into a single free factor, returns that factor and a
/// witness `h` with `h^-1 g h` in the factor. The identity yields `None`.
pub fn is_conjugate_into_factor(g: &GroupWord) -> Result<Option<(usize, GroupWord)>, WordError> {
    require_free_product(g.group())?;
    let (core, conjugator) = cyclic_reduce(g)?;
    match core.letters() {
        [single] => Ok(Some((single.generator.0, conjugator))),
        _ => Ok(None),
    }
}

/// Centralizer of a nontrivial element of a free product of cyclic groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralizerDescription {
    /// `Z(g) = <root>`, with `root` not a proper power.
    InfiniteCyclic { root: GroupWord },
    /// `Z(g) = conjugator · <factor generator> · conjugator^-1`.
    ConjugatedFactor { conjugator: GroupWord, factor: usize },
    /// The group is a single cyclic factor.
    WholeGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum CentralizerSummary {
    InfiniteCyclic { root: String },
    ConjugatedFactor { conjugator: String, factor: usize, generator: String },
    WholeGroup,
}

impl CentralizerDescription {
    pub fn summary(&self, group: &PresentedGroup) -> CentralizerSummary {
        match self {
            Self::InfiniteCyclic { root } => CentralizerSummary::InfiniteCyclic { root: root.to_string() },
            Self::ConjugatedFactor { conjugator, factor } => CentralizerSummary::ConjugatedFactor {
                conjugator: conjugator.to_string(),
                factor: *factor,
                generator: group.symbol(GeneratorId(*factor)).to_string(),
            },
            Self::WholeGroup => CentralizerSummary::WholeGroup,
        }
    }

    /// Exact membership test.
    pub fn contains(&self, h: &GroupWord) -> Result<bool, WordError> {
        match self {
            Self::WholeGroup => Ok(true),
            Self::ConjugatedFactor { conjugator, factor } => {
                let x = conjugator.inverse().multiply(h)?.multiply(conjugator)?;
                Ok(match x.letters() {
                    [] => true,
                    [l] => l.generator.0 == *factor,
                    _ => false,
                })
            }
            Self::InfiniteCyclic { root } => Ok(cyclic_exponent(root, h)?.is_some()),
        }
    }

    /// A finite sample of elements: root powers `|k| <= radius`, or the
    /// conjugated factor elements with exponents bounded by `radius`.
    pub fn sample(&self, group: &Arc<PresentedGroup>, radius: i64) -> Result<Vec<GroupWord>, WordError> {
        match self {
            Self::InfiniteCyclic { root } => (-radius..=radius).map(|k| root.pow(k)).collect(),
            Self::ConjugatedFactor { conjugator, factor } => {
                let id = GeneratorId(*factor);
                let range = match group.order(id) {
                    Order::Finite(n) => 0..=i64::from(n) - 1,
                    Order::Infinite => -radius..=radius,
                };
                range
                    .map(|e| GroupWord::reduce(group, [Letter::new(id, e)])?.conjugate_by(conjugator))
                    .collect()
            }
            Self::WholeGroup => {
                let mut out = vec![GroupWord::identity(group)];
                for (i, g) in group.generators().iter().enumerate() {
                    let range = match g.order {
                        Order::Finite(n) => 1..=i64::from(n) - 1,
                        Order::Infinite => 1..=radius,
                    };
                    for e in range {
                        out.push(GroupWord::reduce(group, [Letter::new(GeneratorId(i), e)])?);
                    }
                }
                Ok(out)
            }
        }
    }
}

/// The `k` with `h = root^k`, if any. `root` must be a nontrivial element
/// of infinite order.
pub fn cyclic_exponent(root: &GroupWord, h: &GroupWord) -> Result<Option<i64>, WordError> {
    if root.is_identity() {
        return Err(WordError::IdentityElement);
    }
    let (core, conj) = cyclic_reduce(root)?;
    let x = conj.inverse().multiply(h)?.multiply(&conj)?;
    if x.is_identity() {
        return Ok(Some(0));
    }
    let unit = core.letters();
    let xs = x.letters();
    if let [u] = unit {
        return Ok(match xs {
            [l] if l.generator == u.generator && l.exponent % u.exponent == 0 => Some(l.exponent / u.exponent),
            _ => None,
        });
    }
    let repeats = |u: &[Letter]| xs.len() % u.len() == 0 && xs.chunks(u.len()).all(|c| c == u);
    let count = (xs.len() / unit.len()) as i64;
    if repeats(unit) {
        Ok(Some(count))
    } else if repeats(core.inverse().letters()) {
        Ok(Some(-count))
    } else {
        Ok(None)
    }
}

/// Centralizer of `g != 1` in a free product of cyclic groups (free groups
/// included): infinite cyclic on the primitive root unless `g` is conjugate
/// into a factor, in which case it is that conjugated factor.
pub fn centralizer_free_product(g: &GroupWord) -> Result<CentralizerDescription, WordError> {
    require_free_product(g.group())?;
    if g.is_identity() {
        return Err(WordError::IdentityElement);
    }
    match is_conjugate_into_factor(g)? {
        Some(_) if g.group().rank() == 1 => Ok(CentralizerDescription::WholeGroup),
        Some((factor, conjugator)) => Ok(CentralizerDescription::ConjugatedFactor { conjugator, factor }),
        None => {
            let (root, _) = primitive_root(g)?;
            Ok(CentralizerDescription::InfiniteCyclic { root })
        }
    }
}

/// All normal forms with at most `max_syllables` letters. Finite-order
/// generators take every exponent in `[1, n-1]`; infinite-order ones take
/// `±1..=±exponent_bound`.
pub fn enumerate_words(
    group: &Arc<PresentedGroup>,
    max_syllables: usize,
    exponent_bound: i64,
) -> Result<Vec<GroupWord>, WordError> {
    require_free_product(group)?;
    let mut syllables: Vec<Letter> = Vec::new();
    for (i, g) in group.generators().iter().enumerate() {
        let id = GeneratorId(i);
        match g.order {
            Order::Finite(n) => syllables.extend((1..i64::from(n)).map(|e| Letter::new(id, e))),
            Order::Infinite => {
                for e in 1..=exponent_bound {
                    syllables.push(Letter::new(id, e));
                    syllables.push(Letter::new(id, -e));
                }
            }
        }
    }
    let mut out = vec![GroupWord::identity(group)];
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_syllables {
        let mut next = Vec::new();
        for word in &frontier {
            for s in &syllables {
                if word.last().is_some_and(|l| l.generator == s.generator) {
                    continue;
                }
                let mut w = word.clone();
                w.push(*s);
                next.push(w);
            }
        }
        for w in &next {
            out.push(GroupWord::reduce(group, w.iter().copied())?);
        }
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_ab() -> Arc<PresentedGroup> {
        Arc::new(PresentedGroup::free(&["a", "b"]).unwrap())
    }

    fn z2_z3() -> Arc<PresentedGroup> {
        Arc::new(PresentedGroup::free_product(&[("c1", Order::Finite(2)), ("c2", Order::Finite(3))]).unwrap())
    }

    fn w(g: &Arc<PresentedGroup>, s: &str) -> GroupWord {
        GroupWord::parse(g, s).unwrap()
    }

    #[test]
    fn cyclic_reduce_examples() {
        let g = free_ab();
        let (core, conj) = cyclic_reduce(&w(&g, "b a b^-1")).unwrap();
        assert_eq!((core.to_string(), conj.to_string()), ("a".into(), "b".into()));
        let (core, conj) = cyclic_reduce(&w(&g, "a b")).unwrap();
        assert_eq!((core.to_string(), conj.to_string()), ("a b".into(), "e".into()));
        let (core, conj) = cyclic_reduce(&w(&g, "b a b^-1 b a b^-1")).unwrap();
        assert_eq!((core.to_string(), conj.to_string()), ("a^2".into(), "b".into()));
    }

    #[test]
    fn cyclic_reduce_merges_ends() {
        let g = free_ab();
        let input = w(&g, "a b a^2");
        let (core, conj) = cyclic_reduce(&input).unwrap();
        assert_eq!(core.len(), 2);
        assert_eq!(core.conjugate_by(&conj).unwrap(), input);
    }

    #[test]
    fn primitive_root_examples() {
        let g = free_ab();
        let (root, e) = primitive_root(&w(&g, "a b a b a b")).unwrap();
        assert_eq!((root.to_string(), e), ("a b".into(), 3));
        let (root, e) = primitive_root(&w(&g, "a")).unwrap();
        assert_eq!((root.to_string(), e), ("a".into(), 1));
        let (root, e) = primitive_root(&w(&g, "a^-4")).unwrap();
        assert_eq!((root.to_string(), e), ("a^-1".into(), 4));
        // b (ab)^2 b^-1 reduces to (ba)^2
        let input = w(&g, "b a b a b b^-1");
        let (root, e) = primitive_root(&input).unwrap();
        assert_eq!((root.to_string(), e), ("b a".into(), 2));
        assert_eq!(root, w(&g, "a b").conjugate_by(&w(&g, "b")).unwrap());
        assert_eq!(root.pow(2).unwrap(), input);
        let input = w(&g, "b^2 a b a b b^-2");
        let (root, e) = primitive_root(&input).unwrap();
        assert_eq!((root.to_string(), e), ("b^2 a b^-1".into(), 2));
        assert_eq!(root.pow(2).unwrap(), input);
        let (root, e) = primitive_root(&w(&g, "a b a^-1 b^-1")).unwrap();
        assert_eq!((root.to_string(), e), ("a b a^-1 b^-1".into(), 1));
    }

    #[test]
    fn primitive_root_errors() {
        let g = z2_z3();
        assert_eq!(primitive_root(&GroupWord::identity(&g)), Err(WordError::IdentityElement));
        assert_eq!(primitive_root(&w(&g, "c2 c1 c2^2")), Err(WordError::Torsion));
    }

    #[test]
    fn conjugate_into_factor_examples() {
        let g = z2_z3();
        let (factor, conj) = is_conjugate_into_factor(&w(&g, "c2 c1 c2^-1")).unwrap().unwrap();
        assert_eq!(factor, 0);
        assert_eq!(conj.to_string(), "c2");
        assert!(is_conjugate_into_factor(&w(&g, "c1 c2")).unwrap().is_none());
        assert!(is_conjugate_into_factor(&w(&g, "c2 c1 c2")).unwrap().is_none());
    }

    #[test]
    fn centralizer_examples() {
        let g = z2_z3();
        let c = centralizer_free_product(&w(&g, "c1 c2")).unwrap();
        assert_eq!(c, CentralizerDescription::InfiniteCyclic { root: w(&g, "c1 c2") });
        let c = centralizer_free_product(&w(&g, "c2 c1 c2^-1")).unwrap();
        assert_eq!(c, CentralizerDescription::ConjugatedFactor { conjugator: w(&g, "c2"), factor: 0 });
        let c = centralizer_free_product(&w(&g, "c1 c2 c1 c2")).unwrap();
        assert_eq!(c, CentralizerDescription::InfiniteCyclic { root: w(&g, "c1 c2") });
        assert_eq!(centralizer_free_product(&GroupWord::identity(&g)), Err(WordError::IdentityElement));
    }

    #[test]
    fn single_factor_group_is_whole_group() {
        let g = Arc::new(PresentedGroup::free_product(&[("c1", Order::Finite(5))]).unwrap());
        assert_eq!(centralizer_free_product(&w(&g, "c1^2")).unwrap(), CentralizerDescription::WholeGroup);
    }

    #[test]
    fn membership_matches_powers() {
        let g = z2_z3();
        let c = centralizer_free_product(&w(&g, "c2 c1 c2 c1 c2^2 c1")).unwrap();
        let CentralizerDescription::InfiniteCyclic { root } = &c else { panic!("expected cyclic") };
        for k in -5..=5 {
            assert!(c.contains(&root.pow(k).unwrap()).unwrap());
        }
        assert!(!c.contains(&w(&g, "c1")).unwrap());
    }

    #[test]
    fn cyclic_exponent_recovers_powers() {
        let g = free_ab();
        let root = w(&g, "b a b^-1 a^2 b");
        for k in -4..=4 {
            assert_eq!(cyclic_exponent(&root, &root.pow(k).unwrap()).unwrap(), Some(k));
        }
        assert_eq!(cyclic_exponent(&root, &w(&g, "a")).unwrap(), None);
        let a2 = w(&g, "a^2");
        assert_eq!(cyclic_exponent(&a2, &w(&g, "a^6")).unwrap(), Some(3));
        assert_eq!(cyclic_exponent(&a2, &w(&g, "a^3")).unwrap(), None);
    }

    #[test]
    fn enumeration_counts() {
        let g = z2_z3();
        // lengths 0..=3 contribute 1, 3, 4 and 6 normal forms
        let words = enumerate_words(&g, 3, 1).unwrap();
        assert_eq!(words.len(), 1 + 3 + 4 + 6);
        let unique: std::collections::HashSet<_> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(unique.len(), words.len());
    }
}
