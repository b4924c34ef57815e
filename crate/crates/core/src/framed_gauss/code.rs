use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::GaussError;
use crate::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn opposite(self) -> Strand {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }
}

/// Which of the two visits to a double point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Visit {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Passage {
    Crossing { id: u32, strand: Strand, sign: Sign },
    DoublePoint { id: u32, visit: Visit },
}

impl Passage {
    pub fn over(id: u32, sign: Sign) -> Self {
        Passage::Crossing { id, strand: Strand::Over, sign }
    }

    pub fn under(id: u32, sign: Sign) -> Self {
        Passage::Crossing { id, strand: Strand::Under, sign }
    }

    pub fn crossing_id(&self) -> Option<u32> {
        match *self {
            Passage::Crossing { id, .. } => Some(id),
            Passage::DoublePoint { .. } => None,
        }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Passage::Crossing { id, strand, sign } => {
                let s = if strand == Strand::Over { 'O' } else { 'U' };
                write!(f, "{s}{id}{sign}")
            }
            Passage::DoublePoint { id, visit } => {
                write!(f, "D{id}{}", if visit == Visit::First { 'a' } else { 'b' })
            }
        }
    }
}

impl FromStr for Passage {
    type Err = GaussError;

    fn from_str(token: &str) -> Result<Self, GaussError> {
        let bad = || GaussError::Parse(format!("bad passage `{token}`"));
        let mut chars = token.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let last = rest.chars().last().ok_or_else(bad)?;
        let digits = &rest[..rest.len() - last.len_utf8()];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || (digits.len() > 1 && digits.starts_with('0')) {
            return Err(bad());
        }
        let id: u32 = digits.parse().map_err(|_| bad())?;
        match kind {
            'O' | 'U' => {
                let sign = match last {
                    '−' => Sign::Negative,
                    c => Sign::from_char(c).ok_or_else(bad)?,
                };
                let strand = if kind == 'O' { Strand::Over } else { Strand::Under };
                Ok(Passage::Crossing { id, strand, sign })
            }
            'D' => match last {
                'a' => Ok(Passage::DoublePoint { id, visit: Visit::First }),
                'b' => Ok(Passage::DoublePoint { id, visit: Visit::Second }),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

/// A framed, possibly singular, Gauss code. Codes are always well formed:
/// every constructor validates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussCode {
    passages: Vec<Passage>,
    framing: i64,
}

impl GaussCode {
    pub fn new(passages: Vec<Passage>, framing: i64) -> Result<Self, GaussError> {
        validate(&passages)?;
        Ok(Self { passages, framing })
    }

    pub(crate) fn new_unchecked(passages: Vec<Passage>, framing: i64) -> Self {
        debug_assert_eq!(validate(&passages), Ok(()));
        Self { passages, framing }
    }

    pub fn unknot(framing: i64) -> Self {
        Self { passages: Vec::new(), framing }
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn framing(&self) -> i64 {
        self.framing
    }

    pub fn with_framing(&self, framing: i64) -> Self {
        Self { passages: self.passages.clone(), framing }
    }

    /// Crossing ids with their signs, in increasing id order.
    pub fn crossings(&self) -> BTreeMap<u32, Sign> {
        self.passages
            .iter()
            .filter_map(|p| match *p {
                Passage::Crossing { id, sign, .. } => Some((id, sign)),
                Passage::DoublePoint { .. } => None,
            })
            .collect()
    }

    /// Double point ids in increasing order.
    pub fn double_points(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .passages
            .iter()
            .filter_map(|p| match *p {
                Passage::DoublePoint { id, visit: Visit::First } => Some(id),
                _ => None,
            })
            .collect();
        ids.sort_unstable();
        ids
    }

    pub fn is_singular(&self) -> bool {
        self.passages.iter().any(|p| matches!(p, Passage::DoublePoint { .. }))
    }

    pub(crate) fn next_crossing_id(&self) -> u32 {
        self.passages.iter().filter_map(Passage::crossing_id).max().map_or(1, |m| m + 1)
    }

    /// Sum of crossing signs, each crossing once. Double points are ignored.
    pub fn writhe(&self) -> i64 {
        // Every crossing has exactly one over passage.
        self.passages
            .iter()
            .map(|p| match *p {
                Passage::Crossing { strand: Strand::Over, sign, .. } => sign.value(),
                _ => 0,
            })
            .sum()
    }

    /// Self-linking number: writhe plus the extra framing twists.
    pub fn slk(&self) -> Result<i64, GaussError> {
        if self.is_singular() {
            return Err(GaussError::Singular);
        }
        self.writhe().checked_add(self.framing).ok_or(GaussError::Overflow)
    }

    /// Changes crossing `id`: flips its sign and swaps over and under.
    pub fn switch_crossing(&self, id: u32) -> Result<Self, GaussError> {
        let mut found = false;
        let passages = self
            .passages
            .iter()
            .map(|p| match *p {
                Passage::Crossing { id: c, strand, sign } if c == id => {
                    found = true;
                    Passage::Crossing { id: c, strand: strand.opposite(), sign: sign.flip() }
                }
                other => other,
            })
            .collect();
        if found {
            Ok(Self::new_unchecked(passages, self.framing))
        } else {
            Err(GaussError::MissingCrossing(id))
        }
    }

    pub fn parse(text: &str) -> Result<Self, GaussError> {
        let (body, framing) = match text.split_once(';') {
            Some((body, tail)) => {
                let value = tail
                    .trim()
                    .strip_prefix("framing=")
                    .ok_or_else(|| GaussError::Parse(format!("expected `framing=N`, got `{}`", tail.trim())))?;
                let framing = value.parse().map_err(|_| GaussError::Parse(format!("bad framing `{value}`")))?;
                (body, framing)
            }
            None => (text, 0),
        };
        let passages = body.split_whitespace().map(str::parse).collect::<Result<Vec<_>, _>>()?;
        Self::new(passages, framing)
    }
}

impl FromStr for GaussCode {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, GaussError> {
        Self::parse(s)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.passages {
            write!(f, "{p} ")?;
        }
        write!(f, "; framing={}", self.framing)
    }
}

fn validate(passages: &[Passage]) -> Result<(), GaussError> {
    let mut crossings: BTreeMap<u32, Vec<(Strand, Sign)>> = BTreeMap::new();
    let mut doubles: BTreeMap<u32, Vec<Visit>> = BTreeMap::new();
    for p in passages {
        match *p {
            Passage::Crossing { id, strand, sign } => crossings.entry(id).or_default().push((strand, sign)),
            Passage::DoublePoint { id, visit } => doubles.entry(id).or_default().push(visit),
        }
    }
    for (id, visits) in crossings {
        match visits.as_slice() {
            [(s1, g1), (s2, g2)] => {
                if s1 == s2 {
                    return Err(GaussError::Pairing(id));
                }
                if g1 != g2 {
                    return Err(GaussError::SignMismatch(id));
                }
            }
            _ => return Err(GaussError::Unpaired(id)),
        }
    }
    for (id, visits) in doubles {
        if visits != [Visit::First, Visit::Second] {
            return Err(GaussError::DoublePointPairing(id));
        }
    }
    Ok(())
}
