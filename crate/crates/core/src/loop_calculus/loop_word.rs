use std::fmt;

use super::LoopError;

/// Generator loops in the space of curves through a knot `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LoopGenerator {
    /// Reparametrizing rotation of the circle; traces `K`. Written `g1`.
    Rotation,
    /// Small kink passing through a double point twice; written `g2`.
    Kink,
    /// Slide of a small arc around the fiber of a fibration; written `g3(i)`.
    FiberSlide(u32),
    /// Slide of a small arc around an embedded sphere; written `gs(i)`.
    SphereSlide(u32),
    /// The auxiliary isotopy loop whose trace is supplied by the context;
    /// written `gA2`.
    AlphaSquared,
}

impl fmt::Display for LoopGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopGenerator::Rotation => f.write_str("g1"),
            LoopGenerator::Kink => f.write_str("g2"),
            LoopGenerator::FiberSlide(i) => write!(f, "g3({i})"),
            LoopGenerator::SphereSlide(i) => write!(f, "gs({i})"),
            LoopGenerator::AlphaSquared => f.write_str("gA2"),
        }
    }
}

impl LoopGenerator {
    fn parse(token: &str) -> Result<Self, LoopError> {
        let indexed = |prefix: &str| -> Result<Option<u32>, LoopError> {
            let Some(rest) = token.strip_prefix(prefix) else { return Ok(None) };
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| LoopError::Parse(format!("expected `{prefix}(index)`, got `{token}`")))?;
            inner
                .parse::<u32>()
                .map(Some)
                .map_err(|_| LoopError::Parse(format!("bad index in `{token}`")))
        };
        match token {
            "g1" => return Ok(LoopGenerator::Rotation),
            "g2" => return Ok(LoopGenerator::Kink),
            "gA2" => return Ok(LoopGenerator::AlphaSquared),
            _ => {}
        }
        if let Some(i) = indexed("g3")? {
            return Ok(LoopGenerator::FiberSlide(i));
        }
        if let Some(i) = indexed("gs")? {
            return Ok(LoopGenerator::SphereSlide(i));
        }
        Err(LoopError::Parse(format!("unknown loop generator `{token}`")))
    }
}

/// A freely reduced word in the generator loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LoopWord {
    letters: Vec<(LoopGenerator, i64)>,
}

impl LoopWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(g: LoopGenerator) -> Self {
        Self { letters: vec![(g, 1)] }
    }

    pub fn power(g: LoopGenerator, n: i64) -> Self {
        if n == 0 {
            Self::identity()
        } else {
            Self { letters: vec![(g, n)] }
        }
    }

    pub fn reduce<I>(letters: I) -> Result<Self, LoopError>
    where
        I: IntoIterator<Item = (LoopGenerator, i64)>,
    {
        let mut out: Vec<(LoopGenerator, i64)> = Vec::new();
        for (g, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((top, exp)) if *top == g => {
                    *exp = exp.checked_add(e).filter(|v| *v != i64::MIN).ok_or(LoopError::Overflow)?;
                    if *exp == 0 {
                        out.pop();
                    }
                }
                _ => {
                    if e == i64::MIN {
                        return Err(LoopError::Overflow);
                    }
                    out.push((g, e));
                }
            }
        }
        Ok(Self { letters: out })
    }

    pub fn letters(&self) -> &[(LoopGenerator, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &LoopWord) -> Result<LoopWord, LoopError> {
        Self::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> LoopWord {
        LoopWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Result<LoopWord, LoopError> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = LoopWord::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(&base)?;
        }
        Ok(acc)
    }

    pub fn conjugate_by(&self, h: &LoopWord) -> Result<LoopWord, LoopError> {
        h.multiply(self)?.multiply(&h.inverse())
    }

    /// Canonical representative of the conjugacy class: cyclically reduced,
    /// then the least rotation.
    pub fn cyclic_normal_form(&self) -> Result<LoopWord, LoopError> {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 && letters[0].0 == letters[letters.len() - 1].0 {
            let (_, first) = letters.remove(0);
            let last = letters.last_mut().expect("at least one letter remains");
            last.1 = last.1.checked_add(first).ok_or(LoopError::Overflow)?;
            if last.1 == 0 {
                letters.pop();
            }
        }
        let best = (0..letters.len().max(1))
            .map(|r| {
                let mut rotated = letters.clone();
                rotated.rotate_left(r.min(letters.len()));
                rotated
            })
            .min()
            .unwrap_or_default();
        Ok(LoopWord { letters: best })
    }

    /// Sum of the exponents of `g`.
    pub fn exponent_sum(&self, g: LoopGenerator) -> Result<i64, LoopError> {
        self.letters
            .iter()
            .filter(|(h, _)| *h == g)
            .try_fold(0i64, |acc, (_, e)| acc.checked_add(*e).ok_or(LoopError::Overflow))
    }

    /// Parses `g1^3 g2^-1 gs(1) g3(0) gA2`; `e` or the empty string is the
    /// identity.
    pub fn parse(text: &str) -> Result<LoopWord, LoopError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "e" {
                continue;
            }
            let (gen, exp) = match token.split_once('^') {
                Some((g, e)) => (
                    g,
                    e.parse::<i64>()
                        .map_err(|_| LoopError::Parse(format!("bad exponent in `{token}`")))?,
                ),
                None => (token, 1),
            };
            letters.push((LoopGenerator::parse(gen)?, exp));
        }
        Self::reduce(letters)
    }
}

impl fmt::Display for LoopWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}
