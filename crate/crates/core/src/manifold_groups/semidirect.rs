use std::fmt;

use serde::Serialize;

use super::matrix::{solve, IntMatrix2, MatrixOrder, Sublattice};
use super::ManifoldError;

/// Element `(m^i l^j, f^k)` of `Z² ⋊ Z`, stored additively as `a = (i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct SemidirectElement {
    pub a: [i64; 2],
    pub k: i64,
}

fn add(u: [i64; 2], v: [i64; 2]) -> Result<[i64; 2], ManifoldError> {
    Ok([
        u[0].checked_add(v[0]).ok_or(ManifoldError::Overflow)?,
        u[1].checked_add(v[1]).ok_or(ManifoldError::Overflow)?,
    ])
}

impl SemidirectElement {
    pub const IDENTITY: Self = Self { a: [0, 0], k: 0 };

    pub const fn new(a: [i64; 2], k: i64) -> Self {
        Self { a, k }
    }

    pub const fn fiber(k: i64) -> Self {
        Self { a: [0, 0], k }
    }

    pub const fn lattice(a: [i64; 2]) -> Self {
        Self { a, k: 0 }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Parses a product of `m`, `l`, `f` powers such as `m^2 l^-1 f^3`.
    pub fn parse(text: &str, monodromy: &IntMatrix2) -> Result<Self, ManifoldError> {
        let mut acc = Self::IDENTITY;
        for token in text.split_whitespace() {
            if token == "e" || token == "1" {
                continue;
            }
            let (symbol, exp) = match token.split_once('^') {
                Some((s, e)) => (
                    s,
                    e.parse::<i64>()
                        .map_err(|_| ManifoldError::Parse(format!("bad exponent in `{token}`")))?,
                ),
                None => (token, 1),
            };
            let g = match symbol {
                "m" => Self::lattice([1, 0]),
                "l" => Self::lattice([0, 1]),
                "f" => Self::fiber(1),
                other => return Err(ManifoldError::Parse(format!("unknown symbol `{other}`"))),
            };
            acc = semidirect_mul(&acc, &semidirect_power(&g, exp, monodromy)?, monodromy)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("m", self.a[0]), ("l", self.a[1]), ("f", self.k)]
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|(s, e)| if e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        if parts.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// `(a, f^i)(a', f^j) = (a + D^i a', f^{i+j})`.
pub fn semidirect_mul(
    g: &SemidirectElement,
    h: &SemidirectElement,
    d: &IntMatrix2,
) -> Result<SemidirectElement, ManifoldError> {
    let moved = d.pow(g.k)?.apply(h.a)?;
    Ok(SemidirectElement {
        a: add(g.a, moved)?,
        k: g.k.checked_add(h.k).ok_or(ManifoldError::Overflow)?,
    })
}

pub fn semidirect_inverse(g: &SemidirectElement, d: &IntMatrix2) -> Result<SemidirectElement, ManifoldError> {
    let neg_k = g.k.checked_neg().ok_or(ManifoldError::Overflow)?;
    let back = d.pow(neg_k)?.apply(g.a)?;
    Ok(SemidirectElement {
        a: [
            back[0].checked_neg().ok_or(ManifoldError::Overflow)?,
            back[1].checked_neg().ok_or(ManifoldError::Overflow)?,
        ],
        k: neg_k,
    })
}

pub fn semidirect_commutes(g: &SemidirectElement, h: &SemidirectElement, d: &IntMatrix2) -> Result<bool, ManifoldError> {
    Ok(semidirect_mul(g, h, d)? == semidirect_mul(h, g, d)?)
}

pub fn semidirect_power(g: &SemidirectElement, n: i64, d: &IntMatrix2) -> Result<SemidirectElement, ManifoldError> {
    let mut base = if n < 0 { semidirect_inverse(g, d)? } else { *g };
    let mut e = n.unsigned_abs();
    let mut acc = SemidirectElement::IDENTITY;
    while e > 0 {
        if e & 1 == 1 {
            acc = semidirect_mul(&acc, &base, d)?;
        }
        e >>= 1;
        if e > 0 {
            base = semidirect_mul(&base, &base, d)?;
        }
    }
    Ok(acc)
}

/// The elements `(a', f^q)` with `q ≡ residue (mod d)` commuting with `K`:
/// either none, or the coset `particular + span(basis)` of lattice parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueConstraint {
    pub residue: u32,
    pub solutions: Option<LatticeCoset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeCoset {
    pub particular: [i64; 2],
    pub directions: Sublattice,
}

impl LatticeCoset {
    pub fn contains(&self, v: [i64; 2]) -> bool {
        let diff = [i128::from(v[0]) - i128::from(self.particular[0]), i128::from(v[1]) - i128::from(self.particular[1])];
        match (i64::try_from(diff[0]), i64::try_from(diff[1])) {
            (Ok(x), Ok(y)) => self.directions.contains([x, y]),
            _ => false,
        }
    }
}

/// Constraint data on the centralizer of `K = (a, f^p)` in `Z² ⋊_D Z`.
///
/// `(a', f^q)` commutes with `K` iff `(D^p - I) a' = (D^q - I) a`. The
/// right-hand side depends on `q` only modulo the order of `D`, so the
/// centralizer is described by one solution coset per residue class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemidirectCentralizer {
    pub knot: SemidirectElement,
    pub monodromy_order: u32,
    /// `fixed_lattice(D, p)`: lattice parts allowed when `q ≡ 0`.
    pub fixed: Sublattice,
    pub residues: Vec<ResidueConstraint>,
}

impl SemidirectCentralizer {
    /// Whether `(a', f^q)` satisfies the recorded constraint.
    pub fn admits(&self, h: &SemidirectElement) -> bool {
        let r = h.k.rem_euclid(i64::from(self.monodromy_order)) as usize;
        self.residues[r]
            .solutions
            .as_ref()
            .is_some_and(|coset| coset.contains(h.a))
    }
}

pub fn centralizer_semidirect(k: &SemidirectElement, d: &IntMatrix2) -> Result<SemidirectCentralizer, ManifoldError> {
    let order = match d.order() {
        MatrixOrder::Finite(n) => n,
        MatrixOrder::Infinite => return Err(ManifoldError::InfiniteOrderMonodromy(*d)),
    };
    if k.is_identity() {
        return Err(ManifoldError::IdentityElement);
    }
    let lhs = d.pow(k.k)?.checked_sub(&IntMatrix2::IDENTITY)?;
    let fixed = d.fixed_lattice(k.k)?;
    let residues = (0..order)
        .map(|r| {
            let rhs = d.pow(i64::from(r))?.checked_sub(&IntMatrix2::IDENTITY)?.apply(k.a)?;
            let solutions = solve(&lhs, rhs).map(|(particular, directions)| LatticeCoset { particular, directions });
            Ok(ResidueConstraint { residue: r, solutions })
        })
        .collect::<Result<Vec<_>, ManifoldError>>()?;
    Ok(SemidirectCentralizer { knot: *k, monodromy_order: order, fixed, residues })
}

#[cfg(test)]
mod tests {
    use super::*;

    const C: IntMatrix2 = IntMatrix2::C;

    #[test]
    fn mul_examples() {
        let g = SemidirectElement::new([1, 0], 1);
        let h = SemidirectElement::new([0, 1], 1);
        assert_eq!(semidirect_mul(&g, &h, &C).unwrap(), SemidirectElement::new([0, -1], 2));
        let p = SemidirectElement::lattice([2, 3]);
        let q = SemidirectElement::lattice([-1, 5]);
        assert_eq!(semidirect_mul(&p, &q, &C).unwrap(), SemidirectElement::lattice([1, 8]));
        assert_eq!(semidirect_mul(&SemidirectElement::IDENTITY, &g, &C).unwrap(), g);
    }

    #[test]
    fn commutation_examples() {
        let m = SemidirectElement::lattice([1, 0]);
        let l = SemidirectElement::lattice([0, 1]);
        assert!(semidirect_commutes(&m, &l, &IntMatrix2::A).unwrap());
        assert!(!semidirect_commutes(&SemidirectElement::fiber(1), &m, &C).unwrap());
        assert!(semidirect_commutes(&SemidirectElement::fiber(3), &m, &C).unwrap());
    }

    #[test]
    fn power_examples() {
        let g = SemidirectElement::new([1, 0], 1);
        assert_eq!(semidirect_power(&g, 3, &C).unwrap(), SemidirectElement::fiber(3));
        assert_eq!(semidirect_power(&g, 0, &C).unwrap(), SemidirectElement::IDENTITY);
        let m = SemidirectElement::lattice([1, 0]);
        assert_eq!(semidirect_power(&m, 5, &C).unwrap(), SemidirectElement::lattice([5, 0]));
        let inv = semidirect_power(&g, -1, &C).unwrap();
        assert_eq!(semidirect_mul(&g, &inv, &C).unwrap(), SemidirectElement::IDENTITY);
    }

    #[test]
    fn centralizer_examples() {
        let data = centralizer_semidirect(&SemidirectElement::new([1, 0], 1), &C).unwrap();
        assert!(data.fixed.is_zero());
        let zero = data.residues[0].solutions.as_ref().unwrap();
        assert_eq!(zero.particular, [0, 0]);
        assert!(zero.directions.is_zero());

        let data = centralizer_semidirect(&SemidirectElement::fiber(3), &C).unwrap();
        assert_eq!(data.fixed.rank(), 2);
        assert!(data.admits(&SemidirectElement::lattice([4, -7])));

        let data = centralizer_semidirect(&SemidirectElement::lattice([1, 0]), &C).unwrap();
        assert_eq!(data.residues[0].solutions.as_ref().unwrap().directions.rank(), 2);
        assert!(data.residues[1].solutions.is_none());
        assert!(data.residues[2].solutions.is_none());
    }

    #[test]
    fn centralizer_errors() {
        let shear = IntMatrix2::new(1, 1, 0, 1);
        assert!(matches!(
            centralizer_semidirect(&SemidirectElement::fiber(1), &shear),
            Err(ManifoldError::InfiniteOrderMonodromy(_))
        ));
        assert_eq!(
            centralizer_semidirect(&SemidirectElement::IDENTITY, &C),
            Err(ManifoldError::IdentityElement)
        );
    }

    #[test]
    fn parse_and_print() {
        let g = SemidirectElement::parse("m^2 l^-1 f^3", &C).unwrap();
        assert_eq!(g, SemidirectElement::new([2, -1], 3));
        assert_eq!(g.to_string(), "m^2 l^-1 f^3");
        assert_eq!(SemidirectElement::parse(&g.to_string(), &C).unwrap(), g);
        // f m = (C (1,0), f)
        assert_eq!(SemidirectElement::parse("f m", &C).unwrap(), SemidirectElement::new([0, 1], 1));
        assert_eq!(SemidirectElement::IDENTITY.to_string(), "e");
    }
}
