//! Self-check suites behind `aslk verify`. Each compares library output with
//! a direct computation and counts disagreements.

use std::str::FromStr;
use std::sync::Arc;

use aslk_core::framed_gauss::{
    apply_move, local_sites, vassiliev_defect, GaussCode, Move, Passage, Strand, Visit,
};
use aslk_core::loop_calculus::{
    delta, delta_aslk, delta_aslk_tilde, ContextFlags, FiberSlideCase, LoopGenerator, LoopWord, MapValue,
};
use aslk_core::manifold_groups::{fixed_lattice, triangle_classify, Geometry, IntMatrix2, MatrixOrder};
use aslk_core::words::{centralizer_free_product, enumerate_words, GroupWord, Letter, GeneratorId, Order, PresentedGroup};
use aslk_core::Sign;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{CliError, Outcome, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Matrices,
    Triangle,
    Centralizer,
    LoopIdentities,
    Gauss,
    FixedLattice,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Matrices,
        Suite::Triangle,
        Suite::Centralizer,
        Suite::LoopIdentities,
        Suite::Gauss,
        Suite::FixedLattice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Matrices => "matrices",
            Suite::Triangle => "triangle",
            Suite::Centralizer => "centralizer",
            Suite::LoopIdentities => "loop-identities",
            Suite::Gauss => "gauss",
            Suite::FixedLattice => "fixed-lattice",
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Input(format!("unknown suite `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

#[derive(Debug, Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

/// Runs a suite. `radius` is the centralizer oracle radius (default 6).
pub fn run(suite: Suite, seed: u64, radius: Option<usize>) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    match suite {
        Suite::Matrices => matrices(&mut t)?,
        Suite::Triangle => triangle(&mut t)?,
        Suite::Centralizer => centralizer(&mut t, &mut rng, radius.unwrap_or(6))?,
        Suite::LoopIdentities => loop_identities(&mut t, &mut rng)?,
        Suite::Gauss => gauss(&mut t, &mut rng)?,
        Suite::FixedLattice => lattice(&mut t)?,
    }
    let mut report = Report::new("verify");
    report.insert("suite", suite.name());
    report.insert("seed", seed);
    report.insert("checks", t.checks);
    report.insert("failures", t.failures.len());
    let shown: Vec<String> = t.failures.iter().filter(|f| !f.is_empty()).cloned().collect();
    if !shown.is_empty() {
        report.insert("failed", json!(shown));
    }
    report.insert("notes", json!(t.notes));
    report.insert("status", if t.failures.is_empty() { "pass" } else { "fail" });
    Ok(Outcome { failed: !t.failures.is_empty(), report })
}

fn matrices(t: &mut Tally) -> Result<(), CliError> {
    for (name, m, n) in [("A", IntMatrix2::A, 6), ("B", IntMatrix2::B, 4), ("C", IntMatrix2::C, 3)] {
        let order = m.order();
        t.check(order == MatrixOrder::Finite(n), || format!("order of {name} is {order:?}, expected {n}"));
        // Brute force: first k with m^k = I, by repeated multiplication.
        let mut p = m;
        let mut k = 1;
        while p != IntMatrix2::IDENTITY && k < 100 {
            p = p.checked_mul(&m)?;
            k += 1;
        }
        t.check(k == n, || format!("repeated products of {name} return to I after {k} steps"));
    }
    let c = IntMatrix2::C;
    let sum = IntMatrix2::IDENTITY.checked_add(&c)?.checked_add(&c.checked_mul(&c)?)?;
    t.check(sum == IntMatrix2::ZERO, || format!("I + C + C^2 = {:?}", sum.entries));
    t.notes.push("orders of A, B, C are 6, 4, 3; I + C + C^2 = 0".into());

    // Every unimodular matrix with small entries: finite orders divide 12.
    let mut finite = 0;
    for e in 0..9i64.pow(4) {
        let d = |i: u32| (e / 9i64.pow(i)) % 9 - 4;
        let m = IntMatrix2 { entries: [[d(0), d(1)], [d(2), d(3)]] };
        if !m.is_unimodular() {
            continue;
        }
        let brute = (1..=24).find(|&k| m.pow(k).map(|p| p == IntMatrix2::IDENTITY).unwrap_or(false));
        let order = m.order();
        let expected = brute.map_or(MatrixOrder::Infinite, |k| MatrixOrder::Finite(k as u32));
        finite += usize::from(brute.is_some());
        t.check(order == expected, || format!("{:?}: order {order:?}, brute force {expected:?}", m.entries));
        t.check(brute.map_or(true, |k| 12 % k == 0), || format!("{:?}: order does not divide 12", m.entries));
    }
    t.notes.push(format!("{finite} finite-order unimodular matrices with entries in [-4, 4]"));
    Ok(())
}

fn triangle(t: &mut Tally) -> Result<(), CliError> {
    for ((r, s, q), g) in [((2, 3, 5), Geometry::Spherical), ((2, 3, 6), Geometry::Euclidean), ((2, 3, 7), Geometry::Hyperbolic)] {
        let got = triangle_classify(r, s, q)?.geometry;
        t.check(got == g, || format!("({r},{s},{q}) classified {got:?}"));
    }
    // Compare 1/r + 1/s + 1/t with 1 over the common denominator 27720.
    const L: u64 = 27720;
    let mut euclidean = Vec::new();
    for r in 2..=12u64 {
        for s in r..=12 {
            for q in s..=12 {
                let total = L / r + L / s + L / q;
                let expected = match total.cmp(&L) {
                    std::cmp::Ordering::Greater => Geometry::Spherical,
                    std::cmp::Ordering::Equal => Geometry::Euclidean,
                    std::cmp::Ordering::Less => Geometry::Hyperbolic,
                };
                let got = triangle_classify(r, s, q)?.geometry;
                t.check(got == expected, || format!("({r},{s},{q}): {got:?}, expected {expected:?}"));
                if got == Geometry::Euclidean {
                    euclidean.push((r, s, q));
                }
            }
        }
    }
    t.check(euclidean == [(2, 3, 6), (2, 4, 4), (3, 3, 3)], || format!("euclidean set {euclidean:?}"));
    t.notes.push(format!("euclidean triples up to 12: {euclidean:?}"));
    Ok(())
}

pub(crate) fn random_word(group: &Arc<PresentedGroup>, rng: &mut ChaCha8Rng, max_letters: usize) -> Result<GroupWord, CliError> {
    let n = rng.gen_range(1..=max_letters);
    let letters: Vec<Letter> = (0..n)
        .map(|_| {
            let g = rng.gen_range(0..group.rank());
            let e = match group.order(GeneratorId(g)) {
                Order::Finite(k) => rng.gen_range(1..i64::from(k)),
                Order::Infinite => *[-2, -1, 1, 2].choose(rng).expect("nonempty"),
            };
            Letter::new(GeneratorId(g), e)
        })
        .collect();
    Ok(GroupWord::reduce(group, letters)?)
}

fn centralizer(t: &mut Tally, rng: &mut ChaCha8Rng, radius: usize) -> Result<(), CliError> {
    let groups = [
        PresentedGroup::free_product(&[("c1", Order::Finite(2)), ("c2", Order::Finite(3))])?,
        PresentedGroup::free_product(&[("c1", Order::Finite(2)), ("c2", Order::Finite(2)), ("d1", Order::Infinite)])?,
    ];
    for group in groups.map(Arc::new) {
        let ball = enumerate_words(&group, radius, 2)?;
        let mut tested = 0;
        while tested < 25 {
            let g = random_word(&group, rng, 6)?;
            if g.is_identity() {
                continue;
            }
            tested += 1;
            let desc = centralizer_free_product(&g)?;
            for h in &ball {
                let commutes = h.commutes_with(&g)?;
                let member = desc.contains(h)?;
                t.check(commutes == member, || format!("{group}: g = {g}, h = {h}: commutes {commutes}, member {member}"));
            }
        }
        t.notes.push(format!("{group}: 25 elements against {} words of at most {radius} syllables", ball.len()));
    }
    Ok(())
}

fn random_loop(rng: &mut ChaCha8Rng, pool: &[LoopGenerator]) -> Result<LoopWord, CliError> {
    let n = rng.gen_range(0..=10);
    let letters: Vec<(LoopGenerator, i64)> = (0..n)
        .map(|_| {
            let g = *pool.choose(rng).expect("nonempty pool");
            let e = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (g, e)
        })
        .collect();
    Ok(LoopWord::reduce(letters)?)
}

fn loop_identities(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    use LoopGenerator::*;
    let flags = ContextFlags { in_irreducible_summand: true, fiber_slide: FiberSlideCase::NoReversingSplit };
    let untilded = [Rotation, Kink, SphereSlide(0), SphereSlide(1)];
    let tilded = [Rotation, Kink, FiberSlide(0), SphereSlide(0), AlphaSquared];
    for (pool, tilde) in [(&untilded[..], false), (&tilded[..], true)] {
        for _ in 0..1000 {
            let u = random_loop(rng, pool)?;
            let v = random_loop(rng, pool)?;
            let eval = |w: &LoopWord| -> Result<(i64, MapValue), CliError> {
                let m = if tilde { delta_aslk_tilde(w, &flags)? } else { delta_aslk(w)? };
                Ok((delta(w)?, m))
            };
            let (du, mu) = eval(&u)?;
            let (dv, _) = eval(&v)?;
            let (duv, muv) = eval(&u.multiply(&v)?)?;
            let (dinv, _) = eval(&u.inverse())?;
            t.check(mu == MapValue::Defined(du), || format!("{u}: delta {du}, jump map {mu}"));
            t.check(duv == du + dv && muv == MapValue::Defined(duv), || format!("({u})({v}) not additive"));
            t.check(dinv == -du, || format!("{u}: inverse gives {dinv}"));
            t.check(du % 2 == 0, || format!("{u}: odd value {du}"));
        }
    }
    t.notes.push("delta agrees with both jump maps on 2000 seeded words".into());
    Ok(())
}

/// All codes with `crossings` crossings and `doubles` double points, one per
/// relabelling class: ids in order of first appearance, `a` before `b`.
pub fn enumerate_codes(crossings: u32, doubles: u32) -> Vec<GaussCode> {
    fn pairings(c: u32, d: u32, len: usize, seq: &mut Vec<(bool, u32)>, out: &mut Vec<Vec<(bool, u32)>>) {
        if seq.len() == len {
            out.push(seq.clone());
            return;
        }
        let count = |dp: bool, id: u32| seq.iter().filter(|&&x| x == (dp, id)).count();
        let opened_c = seq.iter().filter(|x| !x.0).map(|x| x.1).max().unwrap_or(0);
        let opened_d = seq.iter().filter(|x| x.0).map(|x| x.1).max().unwrap_or(0);
        let mut options: Vec<(bool, u32)> = Vec::new();
        options.extend((1..=opened_c).filter(|&i| count(false, i) == 1).map(|i| (false, i)));
        options.extend((1..=opened_d).filter(|&i| count(true, i) == 1).map(|i| (true, i)));
        if opened_c < c {
            options.push((false, opened_c + 1));
        }
        if opened_d < d {
            options.push((true, opened_d + 1));
        }
        for o in options {
            seq.push(o);
            pairings(c, d, len, seq, out);
            seq.pop();
        }
    }
    let mut shapes = Vec::new();
    pairings(crossings, doubles, 2 * (crossings + doubles) as usize, &mut Vec::new(), &mut shapes);
    let mut out = Vec::new();
    for shape in shapes {
        for over_mask in 0..1u32 << crossings {
            for sign_mask in 0..1u32 << crossings {
                let mut seen = vec![false; crossings as usize + 1];
                let mut seen_d = vec![false; doubles as usize + 1];
                let passages = shape
                    .iter()
                    .map(|&(dp, id)| {
                        if dp {
                            let visit = if seen_d[id as usize] { Visit::Second } else { Visit::First };
                            seen_d[id as usize] = true;
                            return Passage::DoublePoint { id, visit };
                        }
                        let bit = 1 << (id - 1);
                        let first_over = over_mask & bit == 0;
                        let first = !seen[id as usize];
                        seen[id as usize] = true;
                        let strand = if first == first_over { Strand::Over } else { Strand::Under };
                        let sign = if sign_mask & bit == 0 { Sign::Positive } else { Sign::Negative };
                        Passage::Crossing { id, strand, sign }
                    })
                    .collect();
                out.push(GaussCode::new(passages, 0).expect("enumerated codes are well formed"));
            }
        }
    }
    out
}

/// One random framed Reidemeister move, biased towards simplification once
/// the code has more than `cap` passages.
pub fn random_move(code: &GaussCode, rng: &mut ChaCha8Rng, cap: usize) -> Move {
    let len = code.passages().len();
    let local = local_sites(code);
    let simplify = len > cap || rng.gen_bool(0.4);
    if simplify && !local.is_empty() {
        return *local.choose(rng).expect("nonempty");
    }
    let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
    if rng.gen_bool(0.5) {
        Move::R1Add { at: rng.gen_range(0..=len), over_first: rng.gen_bool(0.5), sign }
    } else {
        Move::R2Add {
            over_at: rng.gen_range(0..=len),
            under_at: rng.gen_range(0..=len),
            sign,
            reversed: rng.gen_bool(0.5),
        }
    }
}

fn gauss(t: &mut Tally, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let slk = |c: &GaussCode| c.slk();
    let mut counted = [0usize; 2];
    for crossings in 0..=3 {
        for code in enumerate_codes(crossings, 2) {
            let d = vassiliev_defect(slk, &code)?;
            t.check(d == 0, || format!("{code}: defect {d}"));
            counted[1] += 1;
        }
        for code in enumerate_codes(crossings, 1) {
            let d = vassiliev_defect(slk, &code)?;
            t.check(d == 2, || format!("{code}: one-point defect {d}"));
            counted[0] += 1;
        }
    }
    t.notes.push(format!(
        "defect 0 on {} two-point codes and 2 on {} one-point codes (up to 3 crossings)",
        counted[1], counted[0]
    ));

    let seeds = ["O1+ U2+ O3+ U1+ O2+ U3+ ; framing=0", "O1+ U2+ O3- U4- O2+ U1+ O4- U3- ; framing=0"];
    for text in seeds {
        let mut code = GaussCode::parse(text)?;
        let slk0 = code.slk()?;
        for _ in 0..5000 {
            let m = random_move(&code, rng, 24);
            code = apply_move(&code, &m)?;
            let now = code.slk()?;
            t.check(now == slk0, || format!("{m:?} changed slk to {now}"));
            let ids: Vec<(u32, Sign)> = code.crossings().into_iter().collect();
            if let Some(&(id, sign)) = ids.choose(rng) {
                let switched = code.switch_crossing(id)?.slk()?;
                t.check(switched - now == -2 * sign.value(), || format!("switching {id} in {code}"));
            }
        }
    }
    t.notes.push("slk preserved by 10000 random framed moves".into());
    Ok(())
}

fn lattice(t: &mut Tally) -> Result<(), CliError> {
    for (name, m) in [("A", IntMatrix2::A), ("B", IntMatrix2::B), ("C", IntMatrix2::C)] {
        for n in 1..=12 {
            let lat = fixed_lattice(&m, n)?;
            let dn = m.pow(n)?;
            for x in -10..=10 {
                for y in -10..=10 {
                    let fixed = dn.apply([x, y])? == [x, y];
                    t.check(lat.contains([x, y]) == fixed, || format!("{name}^{n}: membership of ({x}, {y})"));
                }
            }
        }
    }
    let c = IntMatrix2::C;
    t.check(fixed_lattice(&c, 1)?.is_zero() && fixed_lattice(&c, 2)?.is_zero(), || "C, C^2 fix a vector".into());
    t.check(fixed_lattice(&c, 3)?.rank() == 2, || "C^3 does not fix Z^2".into());
    t.notes.push("fixed lattices of A, B, C powers 1..12 match the box [-10, 10]^2".into());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        // (2n-1)!! matchings of n = c + d pairs, C(n, c) ways to pick the
        // crossings, 4 orientation/sign choices per crossing.
        assert_eq!(enumerate_codes(0, 1).len(), 1);
        assert_eq!(enumerate_codes(1, 0).len(), 4);
        assert_eq!(enumerate_codes(0, 2).len(), 3);
        assert_eq!(enumerate_codes(1, 1).len(), 3 * 2 * 4);
        assert_eq!(enumerate_codes(2, 2).len(), 105 * 6 * 16);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
