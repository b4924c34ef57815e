use std::fmt;
use std::sync::Arc;

use super::group::{GeneratorId, GroupKind, Order, PresentedGroup};
use super::WordError;

/// A generator raised to a nonzero power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: GeneratorId,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: GeneratorId, exponent: i64) -> Self {
        Self { generator, exponent }
    }
}

/// An element of a [`PresentedGroup`] stored in its unique normal form.
///
/// Base letters are freely reduced, adjacent letters never share a
/// generator, finite-order exponents lie in `[1, n-1]`, and in a fiber
/// extension every power of the fiber is collected in a single trailing
/// letter. Equality of normal forms is equality in the group.
#[derive(Debug, Clone)]
pub struct GroupWord {
    letters: Vec<Letter>,
    group: Arc<PresentedGroup>,
}

impl PartialEq for GroupWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_group(&self.group, &other.group)
    }
}

impl Eq for GroupWord {}

impl std::hash::Hash for GroupWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

pub(crate) fn same_group(a: &Arc<PresentedGroup>, b: &Arc<PresentedGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

// i64::MIN is excluded so that every stored exponent can be negated.
fn checked_add(a: i64, b: i64) -> Result<i64, WordError> {
    match a.checked_add(b) {
        Some(v) if v != i64::MIN => Ok(v),
        _ => Err(WordError::Overflow),
    }
}

/// Accumulates letters into normal form: `base · f^fiber`.
struct Normalizer<'g> {
    group: &'g PresentedGroup,
    base: Vec<Letter>,
    fiber: i64,
}

impl<'g> Normalizer<'g> {
    fn new(group: &'g PresentedGroup) -> Self {
        Self { group, base: Vec::new(), fiber: 0 }
    }

    /// Splits `g^e` into `g^r · f^s` with `r` in the normal range.
    fn normalize(&self, generator: GeneratorId, exponent: i64) -> Result<(i64, i64), WordError> {
        match self.group.order(generator) {
            Order::Infinite => Ok((exponent, 0)),
            Order::Finite(n) => {
                let n = i64::from(n);
                let r = exponent.rem_euclid(n);
                let q = exponent.div_euclid(n);
                let beta = self.group.generators()[generator.0].fiber_power;
                Ok((r, q.checked_mul(beta).ok_or(WordError::Overflow)?))
            }
        }
    }

    fn push(&mut self, letter: Letter) -> Result<(), WordError> {
        if letter.exponent == 0 {
            return Ok(());
        }
        if letter.exponent == i64::MIN {
            return Err(WordError::Overflow);
        }
        if !self.group.contains(letter.generator) {
            return Err(WordError::UnknownGenerator(format!("#{}", letter.generator.0)));
        }
        if self.group.is_fiber(letter.generator) {
            self.fiber = checked_add(self.fiber, letter.exponent)?;
            return Ok(());
        }
        // f^k g^e = g^e f^{k w(g)^e}
        if self.group.orientation(letter.generator) == -1 && letter.exponent % 2 != 0 {
            self.fiber = -self.fiber;
        }
        let total = match self.base.last() {
            Some(top) if top.generator == letter.generator => {
                let e = checked_add(top.exponent, letter.exponent)?;
                self.base.pop();
                e
            }
            _ => letter.exponent,
        };
        let (r, s) = self.normalize(letter.generator, total)?;
        if r != 0 {
            self.base.push(Letter::new(letter.generator, r));
        }
        self.fiber = checked_add(self.fiber, s)?;
        Ok(())
    }

    fn finish(mut self, group: Arc<PresentedGroup>) -> GroupWord {
        if self.fiber != 0 {
            let f = group.fiber().expect("fiber exponent only arises in fiber extensions");
            self.base.push(Letter::new(f, self.fiber));
        }
        GroupWord { letters: self.base, group }
    }
}

impl GroupWord {
    pub fn identity(group: &Arc<PresentedGroup>) -> Self {
        Self { letters: Vec::new(), group: Arc::clone(group) }
    }

    /// Reduces raw letters to normal form.
    pub fn reduce<I>(group: &Arc<PresentedGroup>, letters: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut acc = Normalizer::new(group);
        for letter in letters {
            acc.push(letter)?;
        }
        Ok(acc.finish(Arc::clone(group)))
    }

    pub fn generator(group: &Arc<PresentedGroup>, generator: GeneratorId) -> Result<Self, WordError> {
        Self::reduce(group, [Letter::new(generator, 1)])
    }

    pub fn from_symbol(group: &Arc<PresentedGroup>, symbol: &str, exponent: i64) -> Result<Self, WordError> {
        let id = group.lookup(symbol)?;
        Self::reduce(group, [Letter::new(id, exponent)])
    }

    /// The fiber element `f`, when the group has one.
    pub fn fiber(group: &Arc<PresentedGroup>) -> Result<Self, WordError> {
        let id = group.fiber().ok_or(WordError::NotFiberExtension)?;
        Self::generator(group, id)
    }

    pub fn group(&self) -> &Arc<PresentedGroup> {
        &self.group
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters, counting a trailing fiber power as one letter.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters that are not fiber powers.
    pub fn base_letters(&self) -> &[Letter] {
        match self.letters.last() {
            Some(last) if self.group.is_fiber(last.generator) => &self.letters[..self.letters.len() - 1],
            _ => &self.letters,
        }
    }

    pub fn fiber_exponent(&self) -> i64 {
        match self.letters.last() {
            Some(last) if self.group.is_fiber(last.generator) => last.exponent,
            _ => 0,
        }
    }

    fn check_context(&self, other: &GroupWord) -> Result<(), WordError> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(WordError::ContextMismatch)
        }
    }

    pub fn multiply(&self, other: &GroupWord) -> Result<GroupWord, WordError> {
        self.check_context(other)?;
        Self::reduce(&self.group, self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter::new(l.generator, -l.exponent));
        Self::reduce(&self.group, letters).expect("inverse of a normal form is well defined")
    }

    pub fn pow(&self, n: i64) -> Result<GroupWord, WordError> {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut n = n.unsigned_abs();
        let mut acc = GroupWord::identity(&self.group);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.multiply(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn conjugate_by(&self, h: &GroupWord) -> Result<GroupWord, WordError> {
        h.multiply(self)?.multiply(&h.inverse())
    }

    pub fn commutes_with(&self, other: &GroupWord) -> Result<bool, WordError> {
        Ok(self.multiply(other)? == other.multiply(self)?)
    }

    /// Splits an element of a fiber extension as `base · f^k`, where the
    /// base word contains no fiber letters.
    pub fn fiber_normal_form(&self) -> Result<(GroupWord, i64), WordError> {
        if self.group.kind() != GroupKind::FiberExtension {
            return Err(WordError::NotFiberExtension);
        }
        let base = GroupWord {
            letters: self.base_letters().to_vec(),
            group: Arc::clone(&self.group),
        };
        Ok((base, self.fiber_exponent()))
    }

    /// Image in `target` under the map sending each base generator to the
    /// generator with the same symbol and the fiber to the identity.
    pub fn project(&self, target: &Arc<PresentedGroup>) -> Result<GroupWord, WordError> {
        let mut out = Vec::with_capacity(self.letters.len());
        for l in self.base_letters() {
            let id = target.lookup(self.group.symbol(l.generator))?;
            out.push(Letter::new(id, l.exponent));
        }
        Self::reduce(target, out)
    }

    /// Parses whitespace-separated `symbol` or `symbol^exp` tokens; `e` and
    /// `1` denote the identity.
    pub fn parse(group: &Arc<PresentedGroup>, text: &str) -> Result<GroupWord, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "e" || token == "1" {
                continue;
            }
            let (symbol, exponent) = match token.split_once('^') {
                Some((s, e)) => {
                    let exp = e
                        .parse::<i64>()
                        .map_err(|_| WordError::Parse(format!("bad exponent in `{token}`")))?;
                    (s, exp)
                }
                None => (token, 1),
            };
            letters.push(Letter::new(group.lookup(symbol)?, exponent));
        }
        Self::reduce(group, letters)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.group.symbol(l.generator))?;
            if l.exponent != 1 {
                write!(f, "^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}
