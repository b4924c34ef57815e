use super::code::{GaussCode, Passage, Strand};
use super::GaussError;
use crate::Sign;

/// A framed Reidemeister move. Positions index the gaps of the passage
/// sequence (`0..=len`); adjacency is cyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Inserts a kink at gap `at`, compensating the framing by `-sign`.
    R1Add { at: usize, over_first: bool, sign: Sign },
    /// Removes the kink at `crossing`, compensating the framing.
    R1Remove { crossing: u32 },
    /// Inserts two crossings of opposite signs: over passages at gap
    /// `over_at`, under passages at gap `under_at` (in reverse order if
    /// `reversed`). With equal gaps the over pair comes first.
    R2Add { over_at: usize, under_at: usize, sign: Sign, reversed: bool },
    /// Deletes a cancelling pair.
    R2Remove { first: u32, second: u32 },
    /// Slides the strand under `c` across crossing `a`/`b`: requires
    /// `O_a O_b`, `U_a O_c` and `U_b U_c` adjacent; each pair is swapped.
    R3 { a: u32, b: u32, c: u32 },
}

fn position(code: &GaussCode, id: u32, strand: Strand) -> Option<usize> {
    code.passages().iter().position(|p| matches!(*p, Passage::Crossing { id: c, strand: s, .. } if c == id && s == strand))
}

fn sign_of(code: &GaussCode, id: u32) -> Option<Sign> {
    code.crossings().get(&id).copied()
}

/// Cyclic adjacency `i` immediately followed by `j`.
fn follows(len: usize, i: usize, j: usize) -> bool {
    (i + 1) % len == j
}

fn adjacent(len: usize, i: usize, j: usize) -> bool {
    follows(len, i, j) || follows(len, j, i)
}

fn inapplicable(m: &Move) -> GaussError {
    GaussError::Inapplicable(format!("{m:?}"))
}

pub fn apply_move(code: &GaussCode, m: &Move) -> Result<GaussCode, GaussError> {
    let len = code.passages().len();
    let mut passages = code.passages().to_vec();
    match *m {
        Move::R1Add { at, over_first, sign } => {
            if at > len {
                return Err(inapplicable(m));
            }
            let id = code.next_crossing_id();
            let (first, second) = if over_first {
                (Passage::over(id, sign), Passage::under(id, sign))
            } else {
                (Passage::under(id, sign), Passage::over(id, sign))
            };
            passages.splice(at..at, [first, second]);
            let framing = code.framing().checked_sub(sign.value()).ok_or(GaussError::Overflow)?;
            Ok(GaussCode::new_unchecked(passages, framing))
        }
        Move::R1Remove { crossing } => {
            let sign = sign_of(code, crossing).ok_or(GaussError::MissingCrossing(crossing))?;
            let o = position(code, crossing, Strand::Over).expect("validated code");
            let u = position(code, crossing, Strand::Under).expect("validated code");
            if !adjacent(len, o, u) {
                return Err(inapplicable(m));
            }
            passages.retain(|p| p.crossing_id() != Some(crossing));
            let framing = code.framing().checked_add(sign.value()).ok_or(GaussError::Overflow)?;
            Ok(GaussCode::new_unchecked(passages, framing))
        }
        Move::R2Add { over_at, under_at, sign, reversed } => {
            if over_at > len || under_at > len {
                return Err(inapplicable(m));
            }
            let a = code.next_crossing_id();
            let b = a + 1;
            let overs = [Passage::over(a, sign), Passage::over(b, sign.flip())];
            let mut unders = [Passage::under(a, sign), Passage::under(b, sign.flip())];
            if reversed {
                unders.reverse();
            }
            // Insert at the later gap first so the earlier index stays valid.
            if under_at > over_at {
                passages.splice(under_at..under_at, unders);
                passages.splice(over_at..over_at, overs);
            } else {
                passages.splice(over_at..over_at, overs);
                passages.splice(under_at..under_at, unders);
                if under_at == over_at {
                    // Unders went in front of the overs; put the overs first.
                    passages[over_at..over_at + 4].rotate_left(2);
                }
            }
            Ok(GaussCode::new_unchecked(passages, code.framing()))
        }
        Move::R2Remove { first, second } => {
            let (sa, sb) = match (sign_of(code, first), sign_of(code, second)) {
                (Some(sa), Some(sb)) => (sa, sb),
                (None, _) => return Err(GaussError::MissingCrossing(first)),
                (_, None) => return Err(GaussError::MissingCrossing(second)),
            };
            let pos = |id, s| position(code, id, s).expect("validated code");
            if first == second
                || sa == sb
                || !adjacent(len, pos(first, Strand::Over), pos(second, Strand::Over))
                || !adjacent(len, pos(first, Strand::Under), pos(second, Strand::Under))
            {
                return Err(inapplicable(m));
            }
            passages.retain(|p| p.crossing_id() != Some(first) && p.crossing_id() != Some(second));
            Ok(GaussCode::new_unchecked(passages, code.framing()))
        }
        Move::R3 { a, b, c } => {
            for id in [a, b, c] {
                sign_of(code, id).ok_or(GaussError::MissingCrossing(id))?;
            }
            if a == b || b == c || a == c {
                return Err(inapplicable(m));
            }
            let pos = |id, s| position(code, id, s).expect("validated code");
            let pairs = [
                (pos(a, Strand::Over), pos(b, Strand::Over)),
                (pos(a, Strand::Under), pos(c, Strand::Over)),
                (pos(b, Strand::Under), pos(c, Strand::Under)),
            ];
            if !pairs.iter().all(|&(i, j)| adjacent(len, i, j)) {
                return Err(inapplicable(m));
            }
            for (i, j) in pairs {
                passages.swap(i, j);
            }
            Ok(GaussCode::new_unchecked(passages, code.framing()))
        }
    }
}

/// Every applicable move on `code`: all insertions plus [`local_sites`].
pub fn move_sites(code: &GaussCode) -> Vec<Move> {
    let len = code.passages().len();
    let mut out = Vec::new();
    for at in 0..=len {
        for over_first in [true, false] {
            for sign in [Sign::Positive, Sign::Negative] {
                out.push(Move::R1Add { at, over_first, sign });
            }
        }
    }
    for over_at in 0..=len {
        for under_at in 0..=len {
            for sign in [Sign::Positive, Sign::Negative] {
                for reversed in [false, true] {
                    out.push(Move::R2Add { over_at, under_at, sign, reversed });
                }
            }
        }
    }
    out.extend(local_sites(code));
    out
}

/// The applicable moves that do not add crossings: kink and bigon removals
/// and triangle moves. Found by scanning cyclically adjacent passages.
pub fn local_sites(code: &GaussCode) -> Vec<Move> {
    let p = code.passages();
    let len = p.len();
    let mut candidates = Vec::new();
    for i in 0..len {
        let j = (i + 1) % len;
        let (Passage::Crossing { id: a, strand: sa, .. }, Passage::Crossing { id: b, strand: sb, .. }) = (p[i], p[j])
        else {
            continue;
        };
        if a == b {
            candidates.push(Move::R1Remove { crossing: a });
            continue;
        }
        if sa == Strand::Over && sb == Strand::Over {
            candidates.push(Move::R2Remove { first: a, second: b });
            candidates.push(Move::R2Remove { first: b, second: a });
            for (x, y) in [(a, b), (b, a)] {
                let u = position(code, x, Strand::Under).expect("validated code");
                for n in [(u + 1) % len, (u + len - 1) % len] {
                    if let Passage::Crossing { id: c, strand: Strand::Over, .. } = p[n] {
                        candidates.push(Move::R3 { a: x, b: y, c });
                    }
                }
            }
        }
    }
    candidates.sort_by_key(|m| format!("{m:?}"));
    candidates.dedup();
    candidates.retain(|m| apply_move(code, m).is_ok());
    candidates
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> GaussCode {
        GaussCode::parse(s).unwrap()
    }

    #[test]
    fn framed_r1() {
        let unknot = GaussCode::unknot(0);
        let kinked = apply_move(&unknot, &Move::R1Add { at: 0, over_first: true, sign: Sign::Positive }).unwrap();
        assert_eq!((kinked.writhe(), kinked.framing(), kinked.slk().unwrap()), (1, -1, 0));
        assert_eq!(apply_move(&kinked, &Move::R1Remove { crossing: 1 }).unwrap(), unknot);
        // Wrap-around kink.
        let wrapped = code("U1- O2+ U2+ O1-");
        assert_eq!(apply_move(&wrapped, &Move::R1Remove { crossing: 1 }).unwrap().to_string(), "O2+ U2+ ; framing=-1");
        let trefoil = code("O1+ U2+ O3+ U1+ O2+ U3+");
        assert!(apply_move(&trefoil, &Move::R1Remove { crossing: 1 }).is_err());
    }

    #[test]
    fn r2_round_trip() {
        let trefoil = code("O1+ U2+ O3+ U1+ O2+ U3+");
        for (over_at, under_at) in [(0, 3), (4, 1), (2, 2), (6, 0)] {
            for reversed in [false, true] {
                let m = Move::R2Add { over_at, under_at, sign: Sign::Negative, reversed };
                let bigger = apply_move(&trefoil, &m).unwrap();
                assert_eq!(bigger.slk(), trefoil.slk());
                let back = apply_move(&bigger, &Move::R2Remove { first: 4, second: 5 }).unwrap();
                assert_eq!(back, trefoil);
            }
        }
        let same_sign = code("O1+ O2+ U1+ U2+");
        assert!(apply_move(&same_sign, &Move::R2Remove { first: 1, second: 2 }).is_err());
    }

    #[test]
    fn r3_swaps_pairs() {
        // Top strand over 1, 2; middle under 1 over 3; bottom under 2, 3.
        let c = code("O1+ O2- U1+ O3+ U2- U3+");
        let moved = apply_move(&c, &Move::R3 { a: 1, b: 2, c: 3 }).unwrap();
        assert_eq!(moved.to_string(), "O2- O1+ O3+ U1+ U3+ U2- ; framing=0");
        assert_eq!(moved.slk(), c.slk());
        assert_eq!(apply_move(&moved, &Move::R3 { a: 1, b: 2, c: 3 }).unwrap(), c);
    }

    #[test]
    fn sites_preserve_slk() {
        let trefoil = code("O1+ U2+ O3+ U1+ O2+ U3+");
        let sites = move_sites(&trefoil);
        assert!(sites.iter().all(|m| apply_move(&trefoil, m).unwrap().slk() == trefoil.slk()));
        assert!(!sites.iter().any(|m| matches!(m, Move::R3 { .. } | Move::R1Remove { .. })));
    }

    #[test]
    fn local_sites_match_exhaustive_search() {
        for text in ["O1+ O2- U1+ O3+ U2- U3+", "O1+ U1+", "U1- O2+ U2+ O1-", "O1+ O2- U1+ U2- O3+ U3+"] {
            let c = code(text);
            let ids: Vec<u32> = c.crossings().keys().copied().collect();
            let mut brute = Vec::new();
            for &a in &ids {
                brute.push(Move::R1Remove { crossing: a });
                for &b in &ids {
                    brute.push(Move::R2Remove { first: a, second: b });
                    for &x in &ids {
                        brute.push(Move::R3 { a, b, c: x });
                    }
                }
            }
            brute.retain(|m| apply_move(&c, m).is_ok());
            let mut fast = local_sites(&c);
            let key = |m: &Move| format!("{m:?}");
            brute.sort_by_key(key);
            fast.sort_by_key(key);
            assert_eq!(fast, brute, "{text}");
        }
    }
}
