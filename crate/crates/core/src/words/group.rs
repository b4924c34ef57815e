use std::fmt;

use serde::{Deserialize, Serialize};

use super::WordError;

/// Index of a generator inside its [`PresentedGroup`].
///
/// Base generators occupy `0..n`; in a fiber extension the fiber symbol is
/// the generator with index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId(pub usize);

/// Order of a cyclic factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    Free,
    FreeProductOfCyclics,
    FiberExtension,
}

/// A base generator.
///
/// Every base generator spans its own cyclic free factor. For fiber
/// extensions `order` is the order of the generator's image in the quotient
/// by the fiber, and the relation reads `g^order = f^fiber_power`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub symbol: String,
    pub order: Order,
    pub fiber_power: i64,
    /// Orientation character: `g f g^-1 = f^orientation`.
    pub orientation: i8,
}

/// A group with decidable word problem: a free group, a free product of
/// cyclic groups, or an extension of one of those by a fiber `f` subject to
/// `g f = f^{w(g)} g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PresentedGroup {
    kind: GroupKind,
    generators: Vec<Generator>,
    fiber: Option<String>,
}

fn check_symbol(symbol: &str) -> Result<(), WordError> {
    let ok = !symbol.is_empty()
        && symbol != "e"
        && symbol.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && symbol.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(WordError::InvalidSymbol(symbol.to_string()))
    }
}

impl PresentedGroup {
    /// Free group on the given symbols.
    pub fn free<S: AsRef<str>>(symbols: &[S]) -> Result<Self, WordError> {
        let generators = symbols
            .iter()
            .map(|s| Generator {
                symbol: s.as_ref().to_string(),
                order: Order::Infinite,
                fiber_power: 0,
                orientation: 1,
            })
            .collect();
        Self::build(GroupKind::Free, generators, None)
    }

    /// Free product of cyclic groups `Z_{n_1} * ... * Z_{n_k}` (with `Infinite`
    /// factors standing for `Z`).
    pub fn free_product<S: AsRef<str>>(factors: &[(S, Order)]) -> Result<Self, WordError> {
        let generators = factors
            .iter()
            .map(|(s, order)| Generator {
                symbol: s.as_ref().to_string(),
                order: *order,
                fiber_power: 0,
                orientation: 1,
            })
            .collect();
        Self::build(GroupKind::FreeProductOfCyclics, generators, None)
    }

    /// Extension of a free product of cyclic groups by the fiber symbol.
    ///
    /// A generator with orientation `-1` must either have infinite order or
    /// an even order with `fiber_power == 0`; otherwise the relations force
    /// the fiber to have finite order.
    pub fn fiber_extension(generators: Vec<Generator>, fiber: &str) -> Result<Self, WordError> {
        Self::build(GroupKind::FiberExtension, generators, Some(fiber.to_string()))
    }

    fn build(kind: GroupKind, generators: Vec<Generator>, fiber: Option<String>) -> Result<Self, WordError> {
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            check_symbol(&g.symbol)?;
            if !seen.insert(g.symbol.as_str()) {
                return Err(WordError::DuplicateSymbol(g.symbol.clone()));
            }
            if let Order::Finite(n) = g.order {
                if n < 2 {
                    return Err(WordError::InvalidOrder(g.symbol.clone(), n));
                }
            }
            if g.orientation != 1 && g.orientation != -1 {
                return Err(WordError::InvalidOrientation(g.symbol.clone()));
            }
            if kind != GroupKind::FiberExtension && (g.fiber_power != 0 || g.orientation != 1) {
                return Err(WordError::InvalidOrientation(g.symbol.clone()));
            }
            if g.orientation == -1 {
                let consistent = match g.order {
                    Order::Infinite => true,
                    Order::Finite(n) => n % 2 == 0 && g.fiber_power == 0,
                };
                if !consistent {
                    return Err(WordError::InvalidOrientation(g.symbol.clone()));
                }
            }
            if g.order == Order::Infinite && g.fiber_power != 0 {
                return Err(WordError::InvalidOrder(g.symbol.clone(), 0));
            }
        }
        if let Some(f) = &fiber {
            check_symbol(f)?;
            if seen.contains(f.as_str()) {
                return Err(WordError::DuplicateSymbol(f.clone()));
            }
        }
        Ok(Self { kind, generators, fiber })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// Base generators (the fiber is not included).
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The fiber generator, if this is a fiber extension.
    pub fn fiber(&self) -> Option<GeneratorId> {
        self.fiber.as_ref().map(|_| GeneratorId(self.generators.len()))
    }

    pub fn is_fiber(&self, id: GeneratorId) -> bool {
        self.fiber.is_some() && id.0 == self.generators.len()
    }

    pub fn generator(&self, id: GeneratorId) -> Result<&Generator, WordError> {
        self.generators.get(id.0).ok_or(WordError::UnknownGenerator(format!("#{}", id.0)))
    }

    pub fn order(&self, id: GeneratorId) -> Order {
        self.generators.get(id.0).map_or(Order::Infinite, |g| g.order)
    }

    /// Orientation character of a base generator (`+1` for the fiber).
    pub fn orientation(&self, id: GeneratorId) -> i8 {
        self.generators.get(id.0).map_or(1, |g| g.orientation)
    }

    pub fn symbol(&self, id: GeneratorId) -> &str {
        if self.is_fiber(id) {
            return self.fiber.as_deref().unwrap_or("f");
        }
        self.generators.get(id.0).map_or("?", |g| g.symbol.as_str())
    }

    pub fn lookup(&self, symbol: &str) -> Result<GeneratorId, WordError> {
        if self.fiber.as_deref() == Some(symbol) {
            return Ok(GeneratorId(self.generators.len()));
        }
        self.generators
            .iter()
            .position(|g| g.symbol == symbol)
            .map(GeneratorId)
            .ok_or_else(|| WordError::UnknownGenerator(symbol.to_string()))
    }

    pub fn contains(&self, id: GeneratorId) -> bool {
        id.0 < self.generators.len() || self.is_fiber(id)
    }

    /// The group obtained by killing the fiber: relations `g^order = 1`.
    pub fn base_quotient(&self) -> PresentedGroup {
        match self.kind {
            GroupKind::FiberExtension => {
                let generators = self
                    .generators
                    .iter()
                    .map(|g| Generator {
                        symbol: g.symbol.clone(),
                        order: g.order,
                        fiber_power: 0,
                        orientation: 1,
                    })
                    .collect();
                PresentedGroup {
                    kind: GroupKind::FreeProductOfCyclics,
                    generators,
                    fiber: None,
                }
            }
            _ => self.clone(),
        }
    }
}

impl fmt::Display for PresentedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .generators
            .iter()
            .map(|g| match g.order {
                Order::Infinite => format!("Z<{}>", g.symbol),
                Order::Finite(n) => format!("Z{n}<{}>", g.symbol),
            })
            .collect();
        let base = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join(" * ")
        };
        match &self.fiber {
            Some(fib) => write!(f, "({base}) ext <{fib}>"),
            None => f.write_str(&base),
        }
    }
}
