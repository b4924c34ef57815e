use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ManifoldError;
use crate::words::{Generator, Order, PresentedGroup};

/// An exceptional fiber of index `alpha` with invariant `beta` normalized to
/// `[1, alpha-1]`; the input invariant was `beta + twist * alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExceptionalFiber {
    pub alpha: u32,
    pub beta: i64,
    pub twist: i64,
}

impl ExceptionalFiber {
    pub fn raw_beta(&self) -> i64 {
        self.beta + self.twist * i64::from(self.alpha)
    }
}

/// Seifert invariants over a sphere with `holes` boundary components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeifertSpec", into = "SeifertSpec")]
pub struct SeifertPresentation {
    fibers: Vec<ExceptionalFiber>,
    holes: u32,
}

/// Wire form: `{"fibers": [[alpha, beta], ...], "holes": m}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertSpec {
    pub fibers: Vec<(i64, i64)>,
    pub holes: u32,
}

impl TryFrom<SeifertSpec> for SeifertPresentation {
    type Error = ManifoldError;

    fn try_from(spec: SeifertSpec) -> Result<Self, ManifoldError> {
        SeifertPresentation::new(&spec.fibers, spec.holes)
    }
}

impl From<SeifertPresentation> for SeifertSpec {
    fn from(p: SeifertPresentation) -> Self {
        SeifertSpec {
            fibers: p.fibers.iter().map(|f| (i64::from(f.alpha), f.raw_beta())).collect(),
            holes: p.holes,
        }
    }
}

impl SeifertPresentation {
    pub fn new(fibers: &[(i64, i64)], holes: u32) -> Result<Self, ManifoldError> {
        let fibers = fibers
            .iter()
            .map(|&(alpha, beta)| {
                if alpha < 2 || alpha > i64::from(u32::MAX) || alpha.gcd(&beta) != 1 {
                    return Err(ManifoldError::InvalidFiber { alpha, beta });
                }
                Ok(ExceptionalFiber {
                    alpha: alpha as u32,
                    beta: beta.rem_euclid(alpha),
                    twist: beta.div_euclid(alpha),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { fibers, holes })
    }

    pub fn fibers(&self) -> &[ExceptionalFiber] {
        &self.fibers
    }

    pub fn holes(&self) -> u32 {
        self.holes
    }

    fn require_boundary(&self) -> Result<(), ManifoldError> {
        if self.holes == 0 {
            Err(ManifoldError::ClosedSeifert)
        } else {
            Ok(())
        }
    }

    /// `<c_1..c_l, d_1..d_{m-1}, f | f central, c_j^{alpha_j} = f^{beta_j}>`.
    pub fn seifert_group(&self) -> Result<Arc<PresentedGroup>, ManifoldError> {
        self.require_boundary()?;
        let mut generators: Vec<Generator> = self
            .fibers
            .iter()
            .enumerate()
            .map(|(j, fib)| Generator {
                symbol: format!("c{}", j + 1),
                order: Order::Finite(fib.alpha),
                fiber_power: fib.beta,
                orientation: 1,
            })
            .collect();
        generators.extend((1..self.holes).map(|j| Generator {
            symbol: format!("d{j}"),
            order: Order::Infinite,
            fiber_power: 0,
            orientation: 1,
        }));
        Ok(Arc::new(PresentedGroup::fiber_extension(generators, "f")?))
    }

    /// `Z_{alpha_1} * ... * Z_{alpha_l} * F_{m-1}`.
    pub fn quotient_by_fiber(&self) -> Result<Arc<PresentedGroup>, ManifoldError> {
        Ok(Arc::new(self.seifert_group()?.base_quotient()))
    }
}

pub fn seifert_group(p: &SeifertPresentation) -> Result<Arc<PresentedGroup>, ManifoldError> {
    p.seifert_group()
}

pub fn quotient_by_fiber(p: &SeifertPresentation) -> Result<Arc<PresentedGroup>, ManifoldError> {
    p.quotient_by_fiber()
}
