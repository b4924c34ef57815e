use std::collections::BTreeMap;

use super::code::{GaussCode, Passage, Strand, Visit};
use super::GaussError;
use crate::Sign;

/// A choice of sign at every double point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    /// `(double point id, sign)` in increasing id order.
    pub signs: Vec<(u32, Sign)>,
    /// Positive iff an even number of double points resolve negatively.
    pub overall: Sign,
}

/// All `2^n` resolutions of a code with `n >= 1` double points, the first
/// double point varying slowest. Double point `d` becomes a crossing with a
/// fresh id; in its positive resolution the first visit passes over.
pub fn resolutions(code: &GaussCode) -> Result<Vec<(Resolution, GaussCode)>, GaussError> {
    let points = code.double_points();
    let n = points.len();
    if n == 0 {
        return Err(GaussError::NoDoublePoints);
    }
    if n >= 32 {
        return Err(GaussError::Overflow);
    }
    let base = code.next_crossing_id();
    let fresh: BTreeMap<u32, u32> = points.iter().enumerate().map(|(k, &d)| (d, base + k as u32)).collect();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let signs: Vec<(u32, Sign)> = points
            .iter()
            .enumerate()
            .map(|(k, &d)| (d, if mask >> (n - 1 - k) & 1 == 1 { Sign::Negative } else { Sign::Positive }))
            .collect();
        let overall = if mask.count_ones() % 2 == 0 { Sign::Positive } else { Sign::Negative };
        let by_id: BTreeMap<u32, Sign> = signs.iter().copied().collect();
        let passages = code
            .passages()
            .iter()
            .map(|p| match *p {
                Passage::DoublePoint { id, visit } => {
                    let sign = by_id[&id];
                    let first_over = sign == Sign::Positive;
                    let strand = if (visit == Visit::First) == first_over { Strand::Over } else { Strand::Under };
                    Passage::Crossing { id: fresh[&id], strand, sign }
                }
                other => other,
            })
            .collect();
        out.push((Resolution { signs, overall }, GaussCode::new_unchecked(passages, code.framing())));
    }
    Ok(out)
}

/// Signed sum of `invariant` over all resolutions.
pub fn vassiliev_defect<F, E>(invariant: F, code: &GaussCode) -> Result<i64, E>
where
    F: Fn(&GaussCode) -> Result<i64, E>,
    E: From<GaussError>,
{
    let mut total = 0i64;
    for (r, resolved) in resolutions(code)? {
        let v = invariant(&resolved)?;
        let term = v.checked_mul(r.overall.value()).ok_or(GaussError::Overflow)?;
        total = total.checked_add(term).ok_or(GaussError::Overflow)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> GaussCode {
        GaussCode::parse(s).unwrap()
    }

    #[test]
    fn counts_and_signs() {
        let one = resolutions(&code("D1a D1b")).unwrap();
        assert_eq!(one.iter().map(|r| r.0.overall).collect::<Vec<_>>(), [Sign::Positive, Sign::Negative]);
        assert_eq!(one[0].1.to_string(), "O1+ U1+ ; framing=0");
        assert_eq!(one[1].1.to_string(), "U1- O1- ; framing=0");
        let two = resolutions(&code("O1+ D1a U1+ D2a D1b D2b")).unwrap();
        use Sign::{Negative as N, Positive as P};
        assert_eq!(two.iter().map(|r| r.0.overall).collect::<Vec<_>>(), [P, N, N, P]);
        assert_eq!(two[1].1.to_string(), "O1+ O2+ U1+ U3- U2+ O3- ; framing=0");
        assert_eq!(resolutions(&code("O1+ U1+")), Err(GaussError::NoDoublePoints));
    }

    #[test]
    fn slk_jump() {
        let r = resolutions(&code("O1+ D1a U2- U1+ D1b O2- ; framing=1")).unwrap();
        assert_eq!(r[0].1.slk().unwrap() - r[1].1.slk().unwrap(), 2);
    }

    #[test]
    fn defects() {
        let slk = |c: &GaussCode| c.slk();
        assert_eq!(vassiliev_defect(slk, &code("O1+ D1a U1+ D2a D1b D2b")), Ok(0));
        assert_eq!(vassiliev_defect(slk, &code("D1a O1- D1b U1-")), Ok(2));
        let constant = |_: &GaussCode| Ok::<i64, GaussError>(7);
        assert_eq!(vassiliev_defect(constant, &code("D1a D1b")), Ok(0));
    }
}
