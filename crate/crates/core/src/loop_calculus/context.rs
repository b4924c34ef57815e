use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::loop_word::{LoopGenerator, LoopWord};
use super::maps::{ContextFlags, FiberSlideCase};
use super::LoopError;
use crate::manifold_groups::{semidirect_power, GroupElement, IntMatrix2, ManifoldGroup, SemidirectElement};
use crate::words::{
    centralizer_free_product, cyclic_exponent, CentralizerDescription, GroupKind, GroupWord, Order, PresentedGroup,
};

/// Where loop words are evaluated: the ambient group, the free-homotopy class
/// of the base knot and the hypotheses that gate generator values.
#[derive(Debug, Clone)]
pub struct EvaluationContext {
    group: ManifoldGroup,
    knot: GroupElement,
    contractible: bool,
    flags: ContextFlags,
    spheres: u32,
    alpha_squared: Option<GroupElement>,
}

impl EvaluationContext {
    /// A nontrivial `knot` class must not be marked contractible and the
    /// identity must be.
    pub fn new(group: ManifoldGroup, knot: GroupElement, contractible: bool) -> Result<Self, LoopError> {
        if !group.owns(&knot) {
            return Err(LoopError::ForeignElement(knot.to_string()));
        }
        if knot.is_identity() != contractible {
            return Err(LoopError::InvalidContext(if contractible {
                format!("knot class `{knot}` is marked contractible")
            } else {
                "trivial knot class must be marked contractible".into()
            }));
        }
        Ok(Self { group, knot, contractible, flags: ContextFlags::default(), spheres: 0, alpha_squared: None })
    }

    pub fn with_flags(mut self, flags: ContextFlags) -> Result<Self, LoopError> {
        if flags.fiber_slide != FiberSlideCase::Unspecified && !self.group.has_fiber() {
            return Err(LoopError::InvalidContext("fiber-slide case given for a group without a fiber".into()));
        }
        self.flags = flags;
        Ok(self)
    }

    /// Number of reducing spheres available to `gs(i)`.
    pub fn with_spheres(mut self, spheres: u32) -> Self {
        self.spheres = spheres;
        self
    }

    /// Trace of the auxiliary isotopy loop `gA2`.
    pub fn with_alpha_squared(mut self, value: GroupElement) -> Result<Self, LoopError> {
        if !self.group.owns(&value) {
            return Err(LoopError::ForeignElement(value.to_string()));
        }
        self.alpha_squared = Some(value);
        Ok(self)
    }

    pub fn group(&self) -> &ManifoldGroup {
        &self.group
    }

    pub fn knot(&self) -> &GroupElement {
        &self.knot
    }

    pub fn contractible(&self) -> bool {
        self.contractible
    }

    pub fn flags(&self) -> &ContextFlags {
        &self.flags
    }

    pub fn spheres(&self) -> u32 {
        self.spheres
    }

    pub fn alpha_squared(&self) -> Option<&GroupElement> {
        self.alpha_squared.as_ref()
    }

    pub fn check_generator(&self, g: LoopGenerator) -> Result<(), LoopError> {
        let ok = match g {
            LoopGenerator::Rotation | LoopGenerator::Kink => true,
            LoopGenerator::FiberSlide(id) => id == 0 && self.group.has_fiber(),
            LoopGenerator::SphereSlide(id) => id < self.spheres,
            LoopGenerator::AlphaSquared => self.alpha_squared.is_some(),
        };
        if ok {
            Ok(())
        } else {
            Err(LoopError::InvalidGenerator(g.to_string()))
        }
    }

    pub fn check_word(&self, w: &LoopWord) -> Result<(), LoopError> {
        w.letters().iter().try_for_each(|&(g, _)| self.check_generator(g))
    }

    /// Image of a single generator under the trace map.
    pub fn trace_generator(&self, g: LoopGenerator) -> Result<GroupElement, LoopError> {
        self.check_generator(g)?;
        Ok(match g {
            LoopGenerator::Rotation => self.knot.clone(),
            LoopGenerator::Kink | LoopGenerator::SphereSlide(_) => self.group.identity(),
            LoopGenerator::FiberSlide(_) => self.group.fiber().expect("checked above"),
            LoopGenerator::AlphaSquared => self.alpha_squared.clone().expect("checked above"),
        })
    }
}

/// Evaluates the trace map `t` homomorphically.
pub fn t_value(w: &LoopWord, ctx: &EvaluationContext) -> Result<GroupElement, LoopError> {
    let group = ctx.group();
    let mut acc = group.identity();
    for &(g, e) in w.letters() {
        let image = group.pow(&ctx.trace_generator(g)?, e)?;
        acc = group.multiply(&acc, &image)?;
    }
    Ok(acc)
}

/// `t(alpha)^i = K^j f^k` with `i > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

/// Finds the smallest `i > 0` with `t_alpha^i = K^j f^k`, and checks the
/// answer by group arithmetic before returning it.
pub fn decompose_power(t_alpha: &GroupElement, ctx: &EvaluationContext) -> Result<Decomposition, LoopError> {
    let group = ctx.group();
    let knot = ctx.knot();
    if !group.owns(t_alpha) {
        return Err(LoopError::ForeignElement(t_alpha.to_string()));
    }
    if !group.commutes(t_alpha, knot)? {
        return Err(LoopError::NotInCentralizer(t_alpha.to_string()));
    }
    let result = match (group, t_alpha, knot) {
        (ManifoldGroup::Presented(g), GroupElement::Word(t), GroupElement::Word(kw)) => match g.kind() {
            GroupKind::FiberExtension => decompose_fibered(g, t, kw)?,
            _ => {
                let (i, j) = cyclic_relation(t, kw)?;
                Decomposition { i, j, k: 0 }
            }
        },
        (ManifoldGroup::TorusBundle(d), GroupElement::Semidirect(t), GroupElement::Semidirect(kk)) => {
            decompose_semidirect(t, kk, d)?
        }
        _ => return Err(LoopError::ForeignElement(t_alpha.to_string())),
    };
    verify(group, t_alpha, knot, result)?;
    Ok(result)
}

fn verify(group: &ManifoldGroup, t: &GroupElement, knot: &GroupElement, d: Decomposition) -> Result<(), LoopError> {
    let lhs = group.pow(t, d.i)?;
    let mut rhs = group.pow(knot, d.j)?;
    if d.k != 0 {
        let fiber = group.fiber().ok_or(LoopError::NoPowerRelation)?;
        rhs = group.multiply(&rhs, &group.pow(&fiber, d.k)?)?;
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err(LoopError::NoPowerRelation)
    }
}

/// Smallest `i > 0` and some `j` with `t^i = K^j` in a free product of cyclic
/// groups, given that `t` and `K` commute.
fn cyclic_relation(t: &GroupWord, knot: &GroupWord) -> Result<(i64, i64), LoopError> {
    let group = t.group();
    if t.is_identity() {
        return Ok((1, 0));
    }
    if knot.is_identity() {
        // Only torsion elements have a power equal to K^j = 1.
        return match centralizer_free_product(t)? {
            CentralizerDescription::InfiniteCyclic { .. } => Err(LoopError::NoPowerRelation),
            CentralizerDescription::ConjugatedFactor { conjugator, factor } => {
                let e = factor_exponent(&conjugator, factor, t)?;
                match group.order(crate::words::GeneratorId(factor)) {
                    Order::Finite(n) => Ok((i64::from(n) / e.gcd(&i64::from(n)), 0)),
                    Order::Infinite => Err(LoopError::NoPowerRelation),
                }
            }
            CentralizerDescription::WholeGroup => {
                let e = factor_exponent(&GroupWord::identity(group), 0, t)?;
                match group.order(crate::words::GeneratorId(0)) {
                    Order::Finite(n) => Ok((i64::from(n) / e.gcd(&i64::from(n)), 0)),
                    Order::Infinite => Err(LoopError::NoPowerRelation),
                }
            }
        };
    }
    match centralizer_free_product(knot)? {
        CentralizerDescription::InfiniteCyclic { root } => {
            let d = cyclic_exponent(&root, knot)?.ok_or(LoopError::NoPowerRelation)?;
            let e = cyclic_exponent(&root, t)?.ok_or_else(|| LoopError::NotInCentralizer(t.to_string()))?;
            Ok(infinite_relation(d, e))
        }
        CentralizerDescription::ConjugatedFactor { conjugator, factor } => {
            factor_relation(group, &conjugator, factor, t, knot)
        }
        CentralizerDescription::WholeGroup => factor_relation(group, &GroupWord::identity(group), 0, t, knot),
    }
}

/// Exponent of `x` in `conjugator^-1 x conjugator = c_factor^e`.
fn factor_exponent(conjugator: &GroupWord, factor: usize, x: &GroupWord) -> Result<i64, LoopError> {
    let y = conjugator.inverse().multiply(x)?.multiply(conjugator)?;
    match y.letters() {
        [] => Ok(0),
        [l] if l.generator.0 == factor => Ok(l.exponent),
        _ => Err(LoopError::NotInCentralizer(x.to_string())),
    }
}

/// `t = g^e`, `K = g^d` with `g` of infinite order, `d != 0`.
fn infinite_relation(d: i64, e: i64) -> (i64, i64) {
    if e == 0 {
        return (1, 0);
    }
    let g = d.gcd(&e);
    let (i, j) = (d / g, e / g);
    if i < 0 {
        (-i, -j)
    } else {
        (i, j)
    }
}

fn factor_relation(
    group: &Arc<PresentedGroup>,
    conjugator: &GroupWord,
    factor: usize,
    t: &GroupWord,
    knot: &GroupWord,
) -> Result<(i64, i64), LoopError> {
    let d = factor_exponent(conjugator, factor, knot)?;
    let e = factor_exponent(conjugator, factor, t)?;
    match group.order(crate::words::GeneratorId(factor)) {
        Order::Infinite => Ok(infinite_relation(d, e)),
        Order::Finite(n) => {
            // Work in Z/n: <d> = <a> with a = gcd(d, n); the least i with
            // i*e in <a> is a / gcd(a, e), then solve j*d = i*e mod n.
            let n = i64::from(n);
            let a = d.gcd(&n);
            let i = a / a.gcd(&e);
            let target = (i * e).rem_euclid(n) / a;
            let (d1, n1) = (d / a, n / a);
            let inv = d1.extended_gcd(&n1).x.rem_euclid(n1.max(1));
            let j = (target * inv).rem_euclid(n1.max(1));
            Ok((i, j))
        }
    }
}

fn decompose_fibered(group: &Arc<PresentedGroup>, t: &GroupWord, knot: &GroupWord) -> Result<Decomposition, LoopError> {
    let quotient = Arc::new(group.base_quotient());
    let tq = t.project(&quotient)?;
    let kq = knot.project(&quotient)?;
    let (i, j) = cyclic_relation(&tq, &kq)?;
    let rest = t.pow(i)?.multiply(&knot.pow(j)?.inverse())?;
    let (base, k) = rest.fiber_normal_form()?;
    if !base.is_identity() {
        return Err(LoopError::NoPowerRelation);
    }
    Ok(Decomposition { i, j, k })
}

fn decompose_semidirect(
    t: &SemidirectElement,
    knot: &SemidirectElement,
    d: &IntMatrix2,
) -> Result<Decomposition, LoopError> {
    if knot.k == 0 {
        return Err(LoopError::Unsupported("knot class lies in the fiber torus".into()));
    }
    let (p, q) = (knot.k, t.k);
    if q == 0 {
        return if t.is_identity() { Ok(Decomposition { i: 1, j: 0, k: 0 }) } else { Err(LoopError::NoPowerRelation) };
    }
    // Fiber coordinates force (i, j) = s (i0, j0). Since t and K commute,
    // t^(s i0) K^(-s j0) = (t^i0 K^-j0)^s, a lattice vector times s, so
    // either s = 1 works or nothing does.
    let g = p.gcd(&q);
    let (i, j) = if p < 0 { (-p / g, -q / g) } else { (p / g, q / g) };
    if semidirect_power(t, i, d)? == semidirect_power(knot, j, d)? {
        return Ok(Decomposition { i, j, k: 0 });
    }
    Err(LoopError::NoPowerRelation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold_groups::SeifertPresentation;
    use crate::words::PresentedGroup;

    fn z2z3() -> ManifoldGroup {
        ManifoldGroup::Presented(Arc::new(
            PresentedGroup::free_product(&[("c1", Order::Finite(2)), ("c2", Order::Finite(3))]).unwrap(),
        ))
    }

    fn ctx(group: ManifoldGroup, knot: &str) -> EvaluationContext {
        let k = group.parse(knot).unwrap();
        let trivial = k.is_identity();
        EvaluationContext::new(group, k, trivial).unwrap()
    }

    fn lw(s: &str) -> LoopWord {
        LoopWord::parse(s).unwrap()
    }

    #[test]
    fn trace_examples() {
        let c = ctx(z2z3(), "c1 c2");
        assert_eq!(t_value(&lw("g1^2 g2^5"), &c).unwrap().to_string(), "c1 c2 c1 c2");
        let c = c.with_spheres(1);
        assert!(t_value(&lw("gs(0) g2^-1"), &c).unwrap().is_identity());
        assert!(matches!(t_value(&lw("g3(0)"), &c), Err(LoopError::InvalidGenerator(_))));
        assert!(matches!(t_value(&lw("gs(1)"), &c), Err(LoopError::InvalidGenerator(_))));
        assert!(matches!(t_value(&lw("gA2"), &c), Err(LoopError::InvalidGenerator(_))));

        let s = SeifertPresentation::new(&[(2, 1), (3, 1)], 1).unwrap();
        let c = ctx(ManifoldGroup::Presented(s.seifert_group().unwrap()), "c1 c2");
        assert_eq!(t_value(&lw("g1 g3(0)"), &c).unwrap().to_string(), "c1 c2 f");
    }

    #[test]
    fn context_validation() {
        let g = z2z3();
        let e = g.identity();
        assert!(EvaluationContext::new(g.clone(), e.clone(), false).is_err());
        assert!(EvaluationContext::new(g.clone(), e, true).is_ok());
        let flags = ContextFlags { fiber_slide: FiberSlideCase::NoReversingSplit, ..Default::default() };
        assert!(ctx(g, "c1").with_flags(flags).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let g = z2z3();
        let c = ctx(g.clone(), "c1 c2 c1 c2");
        let t = g.parse("c1 c2 c1 c2 c1 c2").unwrap();
        assert_eq!(decompose_power(&t, &c).unwrap(), Decomposition { i: 2, j: 3, k: 0 });
        assert_eq!(decompose_power(c.knot(), &c).unwrap(), Decomposition { i: 1, j: 1, k: 0 });
        let stranger = g.parse("c1").unwrap();
        assert!(matches!(decompose_power(&stranger, &c), Err(LoopError::NotInCentralizer(_))));

        let s = SeifertPresentation::new(&[(2, 1), (3, 1)], 1).unwrap();
        let sg = ManifoldGroup::Presented(s.seifert_group().unwrap());
        let c = ctx(sg.clone(), "c1 c2");
        let t = sg.parse("c1 c2 f^2").unwrap();
        assert_eq!(decompose_power(&t, &c).unwrap(), Decomposition { i: 1, j: 1, k: 2 });
    }

    #[test]
    fn decomposition_in_finite_factor() {
        let g = ManifoldGroup::Presented(Arc::new(
            PresentedGroup::free_product(&[("a", Order::Finite(6)), ("b", Order::Infinite)]).unwrap(),
        ));
        let c = ctx(g.clone(), "b a^2 b^-1");
        let t = g.parse("b a^3 b^-1").unwrap();
        // <a^2> = {1, a^2, a^4}; a^3 first lands there at i = 2: a^6 = 1 = K^0.
        assert_eq!(decompose_power(&t, &c).unwrap(), Decomposition { i: 2, j: 0, k: 0 });
        let t = g.parse("b a^4 b^-1").unwrap();
        assert_eq!(decompose_power(&t, &c).unwrap(), Decomposition { i: 1, j: 2, k: 0 });
    }

    #[test]
    fn decomposition_in_torus_bundle() {
        let g = ManifoldGroup::TorusBundle(IntMatrix2::C);
        let c = ctx(g.clone(), "m f");
        let t = g.parse("m f").unwrap();
        let d = decompose_power(&t, &c).unwrap();
        assert_eq!((d.i, d.j), (1, 1));
        let c = ctx(g.clone(), "f^2");
        let t = g.parse("f^3").unwrap();
        assert_eq!(decompose_power(&t, &c).unwrap(), Decomposition { i: 2, j: 3, k: 0 });
        // Z^3 with K = f and t = m: they commute but share no power.
        let flat = ManifoldGroup::TorusBundle(IntMatrix2::IDENTITY);
        let c = ctx(flat.clone(), "f");
        let t = flat.parse("m").unwrap();
        assert!(matches!(decompose_power(&t, &c), Err(LoopError::NoPowerRelation)));
    }
}
