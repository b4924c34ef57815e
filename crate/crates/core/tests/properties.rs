//! Property tests. The word problem is checked against faithful matrix and
//! semidirect-product models that share no code with the normalizer.

use std::sync::Arc;

use aslk_core::classify::{aslk_separates, framing_classes, spin_parity_distinct, FramingCount, KnotDescriptor, Separation};
use aslk_core::framed_gauss::{apply_move, local_sites, resolutions, GaussCode, Move, Passage, Strand, Visit};
use aslk_core::loop_calculus::{
    delta, delta_aslk, delta_aslk_tilde, path_delta_aslk, t_value, ContextFlags, DiscriminantCrossing,
    EvaluationContext, FiberSlideCase, LoopGenerator, LoopWord, MapValue, PathRecord,
};
use aslk_core::manifold_groups::{
    semidirect_inverse, semidirect_mul, semidirect_power, ConnectedSumDescriptor, GroupElement, IntMatrix2,
    ManifoldGroup, SeifertPresentation, SemidirectElement, Summand,
};
use aslk_core::words::{centralizer_free_product, Generator, GeneratorId, GroupWord, Letter, Order, PresentedGroup};
use aslk_core::Sign;
use proptest::prelude::*;

type M = [[i128; 2]; 2];

fn mul(x: M, y: M) -> M {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

fn mat_pow(x: M, inv: M, e: i64) -> M {
    let base = if e < 0 { inv } else { x };
    (0..e.unsigned_abs()).fold([[1, 0], [0, 1]], |acc, _| mul(acc, base))
}

fn image(letters: &[(usize, i64)], gens: &[(M, M)]) -> M {
    letters.iter().fold([[1, 0], [0, 1]], |acc, &(g, e)| mul(acc, mat_pow(gens[g].0, gens[g].1, e)))
}

fn is_pm_identity(m: M) -> bool {
    m == [[1, 0], [0, 1]] || m == [[-1, 0], [0, -1]]
}

/// PSL(2, Z) = Z2 * Z3 via S and U = ST.
const PSL_GENS: [(M, M); 2] = [([[0, -1], [1, 0]], [[0, 1], [-1, 0]]), ([[0, -1], [1, 1]], [[1, 1], [-1, 0]])];
/// Sanov's faithful representation of the free group of rank two.
const SANOV: [(M, M); 2] = [([[1, 2], [0, 1]], [[1, -2], [0, 1]]), ([[1, 0], [2, 1]], [[1, 0], [-2, 1]])];

fn z2z3() -> Arc<PresentedGroup> {
    Arc::new(PresentedGroup::free_product(&[("c1", Order::Finite(2)), ("c2", Order::Finite(3))]).unwrap())
}

fn word(group: &Arc<PresentedGroup>, letters: &[(usize, i64)]) -> GroupWord {
    GroupWord::reduce(group, letters.iter().map(|&(g, e)| Letter::new(GeneratorId(g), e))).unwrap()
}

fn letters(rank: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..rank, -4i64..=4), 0..14)
}

/// Images in the quotient `Z ⋊ Z` of `<g, f | g f g^-1 = f^-1>`: `g^a f^b`.
fn klein(letters: &[(usize, i64)]) -> (i64, i64) {
    letters.iter().fold((0, 0), |(a, b), &(g, e)| {
        if g == 0 {
            (a + e, if e % 2 == 0 { b } else { -b })
        } else {
            (a, b + e)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn free_product_identity_matches_psl2(ls in letters(2)) {
        let w = word(&z2z3(), &ls);
        prop_assert_eq!(w.is_identity(), is_pm_identity(image(&ls, &PSL_GENS)));
    }

    #[test]
    fn free_group_identity_matches_sanov(ls in letters(2)) {
        let g = Arc::new(PresentedGroup::free(&["a", "b"]).unwrap());
        let w = word(&g, &ls);
        prop_assert_eq!(w.is_identity(), image(&ls, &SANOV) == [[1, 0], [0, 1]]);
    }

    #[test]
    fn equality_matches_psl2(x in letters(2), y in letters(2)) {
        let g = z2z3();
        let same = word(&g, &x) == word(&g, &y);
        let (mx, my) = (image(&x, &PSL_GENS), image(&y, &PSL_GENS));
        let neg = [[-my[0][0], -my[0][1]], [-my[1][0], -my[1][1]]];
        prop_assert_eq!(same, mx == my || mx == neg);
    }

    #[test]
    fn group_laws(x in letters(2), y in letters(2), z in letters(2)) {
        let g = z2z3();
        let (a, b, c) = (word(&g, &x), word(&g, &y), word(&g, &z));
        prop_assert_eq!(a.multiply(&b).unwrap().multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
        prop_assert!(a.multiply(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(GroupWord::reduce(&g, a.letters().iter().copied()).unwrap(), a.clone());
        prop_assert_eq!(GroupWord::parse(&g, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn orientation_reversing_fiber_matches_semidirect_model(ls in letters(2), ms in letters(2)) {
        let g = Arc::new(PresentedGroup::fiber_extension(
            vec![Generator { symbol: "g".into(), order: Order::Infinite, fiber_power: 0, orientation: -1 }],
            "f",
        ).unwrap());
        let (u, v) = (word(&g, &ls), word(&g, &ms));
        let (ka, kb) = (klein(&ls), klein(&ms));
        prop_assert_eq!(u == v, ka == kb);
        let (base, k) = u.fiber_normal_form().unwrap();
        prop_assert_eq!((base.letters().first().map_or(0, |l| l.exponent), k), ka);
        prop_assert_eq!(base.multiply(&GroupWord::fiber(&g).unwrap().pow(k).unwrap()).unwrap(), u);
    }

    #[test]
    fn seifert_word_problem_matches_braid_model(ls in letters(3)) {
        // c1^2 = c2^3 = f: the trefoil group, detected by its PSL(2, Z)
        // image together with the abelianization c1 -> 3, c2 -> 2, f -> 6.
        let g = SeifertPresentation::new(&[(2, 1), (3, 1)], 1).unwrap().seifert_group().unwrap();
        let w = word(&g, &ls);
        let in_quotient: Vec<(usize, i64)> = ls.iter().filter(|l| l.0 < 2).copied().collect();
        let m = image(&in_quotient, &PSL_GENS);
        let weight: i64 = ls.iter().map(|&(i, e)| [3, 2, 6][i] * e).sum();
        prop_assert_eq!(w.is_identity(), is_pm_identity(m) && weight == 0);
    }

    #[test]
    fn centralizer_elements_commute(ls in letters(2), radius in 1i64..4) {
        let g = z2z3();
        let w = word(&g, &ls);
        prop_assume!(!w.is_identity());
        let c = centralizer_free_product(&w).unwrap();
        prop_assert!(c.contains(&w).unwrap());
        for h in c.sample(&g, radius).unwrap() {
            prop_assert!(h.commutes_with(&w).unwrap());
        }
    }

    #[test]
    fn semidirect_laws(
        d in prop::sample::select(vec![IntMatrix2::A, IntMatrix2::B, IntMatrix2::C, IntMatrix2::IDENTITY]),
        xs in prop::array::uniform3((-20i64..20, -20i64..20, -6i64..6)),
        n in -8i64..8,
    ) {
        let [x, y, z] = xs.map(|(a, b, k)| SemidirectElement::new([a, b], k));
        let xy_z = semidirect_mul(&semidirect_mul(&x, &y, &d).unwrap(), &z, &d).unwrap();
        let x_yz = semidirect_mul(&x, &semidirect_mul(&y, &z, &d).unwrap(), &d).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert!(semidirect_mul(&x, &semidirect_inverse(&x, &d).unwrap(), &d).unwrap().is_identity());
        let mut acc = SemidirectElement::IDENTITY;
        let step = if n < 0 { semidirect_inverse(&x, &d).unwrap() } else { x };
        for _ in 0..n.unsigned_abs() {
            acc = semidirect_mul(&acc, &step, &d).unwrap();
        }
        prop_assert_eq!(semidirect_power(&x, n, &d).unwrap(), acc);
    }
}

fn loop_gen() -> impl Strategy<Value = LoopGenerator> {
    prop_oneof![
        Just(LoopGenerator::Rotation),
        Just(LoopGenerator::Kink),
        Just(LoopGenerator::FiberSlide(0)),
        (0u32..2).prop_map(LoopGenerator::SphereSlide),
        Just(LoopGenerator::AlphaSquared),
    ]
}

fn loop_word() -> impl Strategy<Value = LoopWord> {
    prop::collection::vec((loop_gen(), -5i64..=5), 0..12).prop_map(|ls| LoopWord::reduce(ls).unwrap())
}

const GATES: ContextFlags = ContextFlags { in_irreducible_summand: true, fiber_slide: FiberSlideCase::NoReversingSplit };

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn loop_maps_are_homomorphisms(u in loop_word(), v in loop_word()) {
        let uv = u.multiply(&v).unwrap();
        prop_assert_eq!(delta(&uv).unwrap(), delta(&u).unwrap() + delta(&v).unwrap());
        prop_assert_eq!(delta(&u.inverse()).unwrap(), -delta(&u).unwrap());
        let tilde = |w: &LoopWord| delta_aslk_tilde(w, &GATES).unwrap();
        prop_assert_eq!(tilde(&uv), MapValue::Defined(delta(&uv).unwrap()));
        prop_assert_eq!(delta(&uv).unwrap() % 2, 0);
        if let (MapValue::Defined(a), MapValue::Defined(b)) = (delta_aslk(&u).unwrap(), delta_aslk(&v).unwrap()) {
            prop_assert_eq!(delta_aslk(&uv).unwrap(), MapValue::Defined(a + b));
        }
    }

    #[test]
    fn values_are_conjugation_invariant(u in loop_word(), h in loop_word()) {
        let c = u.conjugate_by(&h).unwrap();
        prop_assert_eq!(c.cyclic_normal_form().unwrap(), u.cyclic_normal_form().unwrap());
        prop_assert_eq!(delta(&c).unwrap(), delta(&u).unwrap());
        prop_assert_eq!(delta_aslk_tilde(&c, &GATES).unwrap(), delta_aslk_tilde(&u, &GATES).unwrap());
    }

    #[test]
    fn trace_is_a_homomorphism(u in loop_word(), v in loop_word()) {
        let g = SeifertPresentation::new(&[(2, 1), (3, 1)], 1).unwrap().seifert_group().unwrap();
        let group = ManifoldGroup::Presented(g);
        let knot = group.parse("c1 c2").unwrap();
        let alpha = group.parse("c2 c1 f").unwrap();
        let ctx = EvaluationContext::new(group.clone(), knot, false).unwrap()
            .with_spheres(2)
            .with_alpha_squared(alpha).unwrap();
        let lhs = t_value(&u.multiply(&v).unwrap(), &ctx).unwrap();
        let rhs = group.multiply(&t_value(&u, &ctx).unwrap(), &t_value(&v, &ctx).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn path_sum_is_delta_of_kink_power(signs in prop::collection::vec(any::<bool>(), 0..30)) {
        let group = ManifoldGroup::TorusBundle(IntMatrix2::C);
        let crossings: Vec<DiscriminantCrossing> = signs.iter().map(|&s| DiscriminantCrossing {
            sign: if s { Sign::Positive } else { Sign::Negative },
            loop_class: GroupElement::Semidirect(SemidirectElement::IDENTITY),
        }).collect();
        let rec = PathRecord { crossings };
        let sum: i64 = signs.iter().map(|&s| if s { 1 } else { -1 }).sum();
        let kink = LoopWord::power(LoopGenerator::Kink, sum);
        prop_assert_eq!(MapValue::Defined(path_delta_aslk(&rec).unwrap()), delta_aslk(&kink).unwrap());
        prop_assert_eq!(aslk_core::loop_calculus::path_delta_aslk_tilde(&rec, &group).unwrap(), 2 * sum);
    }
}

/// A random well-formed code: `n` crossings and `d` double points placed by
/// a shuffled sequence.
fn gauss_code() -> impl Strategy<Value = GaussCode> {
    (0u32..5, 0u32..3, -3i64..=3)
        .prop_flat_map(|(n, d, framing)| {
            let len = 2 * (n + d) as usize;
            (
                Just((n, d, framing)),
                Just((0..len).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec((any::<bool>(), any::<bool>()), n as usize),
            )
        })
        .prop_map(|((n, d, framing), order, choices)| {
            let mut slots: Vec<Option<Passage>> = vec![None; order.len()];
            for id in 1..=n {
                let (over_first, positive) = choices[(id - 1) as usize];
                let sign = if positive { Sign::Positive } else { Sign::Negative };
                let (i, j) = (order[2 * (id - 1) as usize], order[2 * (id - 1) as usize + 1]);
                let (first, second) = (i.min(j), i.max(j));
                let (s1, s2) = if over_first { (Strand::Over, Strand::Under) } else { (Strand::Under, Strand::Over) };
                slots[first] = Some(Passage::Crossing { id, strand: s1, sign });
                slots[second] = Some(Passage::Crossing { id, strand: s2, sign });
            }
            for k in 0..d {
                let base = 2 * (n + k) as usize;
                let (i, j) = (order[base], order[base + 1]);
                slots[i.min(j)] = Some(Passage::DoublePoint { id: k + 1, visit: Visit::First });
                slots[i.max(j)] = Some(Passage::DoublePoint { id: k + 1, visit: Visit::Second });
            }
            GaussCode::new(slots.into_iter().map(Option::unwrap).collect(), framing).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gauss_round_trip(code in gauss_code()) {
        prop_assert_eq!(GaussCode::parse(&code.to_string()).unwrap(), code);
    }

    #[test]
    fn switch_changes_slk_by_two(code in gauss_code()) {
        prop_assume!(!code.is_singular());
        for (id, sign) in code.crossings() {
            let switched = code.switch_crossing(id).unwrap();
            prop_assert_eq!(switched.slk().unwrap() - code.slk().unwrap(), -2 * sign.value());
            prop_assert_eq!(switched.switch_crossing(id).unwrap(), code.clone());
        }
    }

    #[test]
    fn resolutions_are_balanced(code in gauss_code()) {
        let n = code.double_points().len();
        prop_assume!(n > 0);
        let rs = resolutions(&code).unwrap();
        prop_assert_eq!(rs.len(), 1 << n);
        prop_assert_eq!(rs.iter().map(|r| r.0.overall.value()).sum::<i64>(), 0);
        for (_, c) in &rs {
            prop_assert!(!c.is_singular());
            prop_assert_eq!(c.crossings().len(), code.crossings().len() + n);
        }
    }

    #[test]
    fn moves_preserve_slk(code in gauss_code(), picks in prop::collection::vec((any::<u8>(), any::<u16>(), any::<u16>(), any::<bool>()), 1..20)) {
        prop_assume!(!code.is_singular());
        let slk = code.slk().unwrap();
        let mut cur = code;
        for (kind, x, y, flag) in picks {
            let len = cur.passages().len() + 1;
            let sign = if flag { Sign::Positive } else { Sign::Negative };
            let m = match kind % 3 {
                0 => Move::R1Add { at: x as usize % len, over_first: y % 2 == 0, sign },
                1 => Move::R2Add { over_at: x as usize % len, under_at: y as usize % len, sign, reversed: flag },
                _ => {
                    let sites = local_sites(&cur);
                    if sites.is_empty() { continue; }
                    sites[x as usize % sites.len()]
                }
            };
            cur = apply_move(&cur, &m).unwrap();
            prop_assert_eq!(GaussCode::parse(&cur.to_string()).unwrap(), cur.clone());
            prop_assert_eq!(cur.slk().unwrap(), slk);
        }
    }

    #[test]
    fn spin_parity_is_symmetric_and_translation_invariant(i in -1000i64..1000, j in -1000i64..1000, n in -1000i64..1000) {
        prop_assert_eq!(spin_parity_distinct(i, j), spin_parity_distinct(j, i));
        prop_assert_eq!(spin_parity_distinct(i, j), spin_parity_distinct(i + n, j + n));
    }

    #[test]
    fn aslk_separates_where_framings_are_infinite(
        i in -50i64..50,
        k in -25i64..25,
        summands in prop::collection::vec(prop_oneof![
            Just(Summand::S3),
            (2u32..9).prop_map(|p| Summand::Lens { p, q: 1 }),
            Just(Summand::TorusBundle { monodromy: IntMatrix2::B }),
            Just(Summand::OpaqueIrreducible { label: None }),
        ], 1..4),
    ) {
        let m = ConnectedSumDescriptor::orientable(summands);
        let knot = KnotDescriptor::default();
        prop_assert_eq!(framing_classes(&m, &knot).unwrap().count, FramingCount::Infinite);
        let sep = aslk_separates(i, i + 2 * k, &m, &knot).unwrap();
        if k == 0 {
            prop_assert_eq!(sep, Separation::Equal);
        } else {
            prop_assert_eq!(sep, Separation::Separated { gap: 2 * k });
        }
    }
}
