use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ManifoldError;

/// A 2×2 integer matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 4]", into = "[i64; 4]")]
pub struct IntMatrix2 {
    pub entries: [[i64; 2]; 2],
}

impl From<[i64; 4]> for IntMatrix2 {
    fn from(e: [i64; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }
}

impl From<IntMatrix2> for [i64; 4] {
    fn from(m: IntMatrix2) -> Self {
        let [[a, b], [c, d]] = m.entries;
        [a, b, c, d]
    }
}

/// Finite order or infinite order of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixOrder {
    Finite(u32),
    Infinite,
}

/// Orders of finite-order elements of GL(2, Z) divide 12.
pub const MAX_FINITE_ORDER: u32 = 12;

impl IntMatrix2 {
    pub const IDENTITY: Self = Self::new(1, 0, 0, 1);
    pub const ZERO: Self = Self::new(0, 0, 0, 0);
    /// Monodromy of the (2,3,6) torus bundle; order 6.
    pub const A: Self = Self::new(0, -1, 1, 1);
    /// Monodromy of the (2,4,4) torus bundle; order 4.
    pub const B: Self = Self::new(0, 1, -1, 0);
    /// Monodromy of the (3,3,3) torus bundle; order 3.
    pub const C: Self = Self::new(0, -1, 1, -1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { entries: [[a, b], [c, d]] }
    }

    /// Resolves the named constants `A`, `B`, `C` (and `I`).
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "A" => Some(Self::A),
            "B" => Some(Self::B),
            "C" => Some(Self::C),
            "I" => Some(Self::IDENTITY),
            _ => None,
        }
    }

    pub fn determinant(&self) -> Result<i64, ManifoldError> {
        let [[a, b], [c, d]] = self.entries;
        let ad = a.checked_mul(d).ok_or(ManifoldError::Overflow)?;
        let bc = b.checked_mul(c).ok_or(ManifoldError::Overflow)?;
        ad.checked_sub(bc).ok_or(ManifoldError::Overflow)
    }

    pub fn trace(&self) -> Result<i64, ManifoldError> {
        self.entries[0][0].checked_add(self.entries[1][1]).ok_or(ManifoldError::Overflow)
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), Ok(1) | Ok(-1))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ManifoldError> {
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = 0i64;
                for k in 0..2 {
                    let term = self.entries[i][k]
                        .checked_mul(other.entries[k][j])
                        .ok_or(ManifoldError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(ManifoldError::Overflow)?;
                }
                *cell = acc;
            }
        }
        Ok(Self { entries: out })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ManifoldError> {
        let mut out = self.entries;
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = out[i][j].checked_add(other.entries[i][j]).ok_or(ManifoldError::Overflow)?;
            }
        }
        Ok(Self { entries: out })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ManifoldError> {
        let mut out = self.entries;
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = out[i][j].checked_sub(other.entries[i][j]).ok_or(ManifoldError::Overflow)?;
            }
        }
        Ok(Self { entries: out })
    }

    pub fn apply(&self, v: [i64; 2]) -> Result<[i64; 2], ManifoldError> {
        let row = |r: [i64; 2]| -> Result<i64, ManifoldError> {
            let x = r[0].checked_mul(v[0]).ok_or(ManifoldError::Overflow)?;
            let y = r[1].checked_mul(v[1]).ok_or(ManifoldError::Overflow)?;
            x.checked_add(y).ok_or(ManifoldError::Overflow)
        };
        Ok([row(self.entries[0])?, row(self.entries[1])?])
    }

    /// Inverse over the integers; requires determinant ±1.
    pub fn inverse(&self) -> Result<Self, ManifoldError> {
        let det = self.determinant()?;
        if det != 1 && det != -1 {
            return Err(ManifoldError::NotUnimodular(*self));
        }
        let [[a, b], [c, d]] = self.entries;
        // det = ±1, so dividing the adjugate is multiplying by det
        let scale = |x: i64| x.checked_mul(det).ok_or(ManifoldError::Overflow);
        let neg = |x: i64| x.checked_neg().ok_or(ManifoldError::Overflow);
        Ok(Self::new(scale(d)?, scale(neg(b)?)?, scale(neg(c)?)?, scale(a)?))
    }

    /// Exact power `D^k`; negative `k` needs a unimodular matrix.
    pub fn pow(&self, k: i64) -> Result<Self, ManifoldError> {
        let mut base = if k < 0 { self.inverse()? } else { *self };
        let mut n = k.unsigned_abs();
        let mut acc = Self::IDENTITY;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Least `k >= 1` with `D^k = I`.
    pub fn order(&self) -> MatrixOrder {
        if !self.is_unimodular() {
            return MatrixOrder::Infinite;
        }
        // det 1 with |trace| >= 3 is hyperbolic
        if self.determinant() == Ok(1) && self.trace().map_or(true, |t| t.abs() >= 3) {
            return MatrixOrder::Infinite;
        }
        let mut power = *self;
        for k in 1..=MAX_FINITE_ORDER {
            if power == Self::IDENTITY {
                return MatrixOrder::Finite(k);
            }
            power = match power.checked_mul(self) {
                Ok(p) => p,
                Err(_) => return MatrixOrder::Infinite,
            };
        }
        MatrixOrder::Infinite
    }

    /// Integer basis of `{v : D^k v = v}`.
    pub fn fixed_lattice(&self, k: i64) -> Result<Sublattice, ManifoldError> {
        let m = self.pow(k)?.checked_sub(&Self::IDENTITY)?;
        Ok(kernel(&m))
    }
}

pub fn matrix_power(d: &IntMatrix2, k: i64) -> Result<IntMatrix2, ManifoldError> {
    d.pow(k)
}

pub fn matrix_order(d: &IntMatrix2) -> MatrixOrder {
    d.order()
}

pub fn fixed_lattice(d: &IntMatrix2, k: i64) -> Result<Sublattice, ManifoldError> {
    d.fixed_lattice(k)
}

impl Mul for IntMatrix2 {
    type Output = IntMatrix2;

    /// Panics on overflow; use [`IntMatrix2::checked_mul`] for untrusted input.
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("matrix product overflow")
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// A sublattice of Z² given by 0, 1 or 2 basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sublattice {
    pub basis: Vec<[i64; 2]>,
}

impl Sublattice {
    pub fn zero() -> Self {
        Self { basis: Vec::new() }
    }

    pub fn full() -> Self {
        Self { basis: vec![[1, 0], [0, 1]] }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: [i64; 2]) -> bool {
        match self.basis.as_slice() {
            [] => v == [0, 0],
            [b] => {
                // v = t b for integer t
                let cross = i128::from(v[0]) * i128::from(b[1]) - i128::from(v[1]) * i128::from(b[0]);
                if cross != 0 {
                    return false;
                }
                let (num, den) = if b[0] != 0 { (v[0], b[0]) } else { (v[1], b[1]) };
                num % den == 0
            }
            [b1, b2] => {
                let det = i128::from(b1[0]) * i128::from(b2[1]) - i128::from(b1[1]) * i128::from(b2[0]);
                let x = i128::from(v[0]) * i128::from(b2[1]) - i128::from(v[1]) * i128::from(b2[0]);
                let y = i128::from(b1[0]) * i128::from(v[1]) - i128::from(b1[1]) * i128::from(v[0]);
                det != 0 && x % det == 0 && y % det == 0
            }
            _ => false,
        }
    }
}

/// Primitive row direction `w` and column `c` with `m = c wᵀ`, for a
/// nonzero matrix of rank one.
fn rank_one_factor(m: &IntMatrix2) -> ([i64; 2], [i64; 2]) {
    let rows = m.entries;
    let pivot = if rows[0] != [0, 0] { rows[0] } else { rows[1] };
    let g = pivot[0].gcd(&pivot[1]);
    let w = [pivot[0] / g, pivot[1] / g];
    let coeff = |r: [i64; 2]| if w[0] != 0 { r[0] / w[0] } else { r[1] / w[1] };
    (w, [coeff(rows[0]), coeff(rows[1])])
}

fn kernel(m: &IntMatrix2) -> Sublattice {
    if *m == IntMatrix2::ZERO {
        return Sublattice::full();
    }
    let det = i128::from(m.entries[0][0]) * i128::from(m.entries[1][1])
        - i128::from(m.entries[0][1]) * i128::from(m.entries[1][0]);
    if det != 0 {
        return Sublattice::zero();
    }
    let (w, _) = rank_one_factor(m);
    let mut v = [-w[1], w[0]];
    if v[0] < 0 || (v[0] == 0 && v[1] < 0) {
        v = [-v[0], -v[1]];
    }
    Sublattice { basis: vec![v] }
}

/// Solutions of `m x = b` over the integers: `None`, or a particular
/// solution together with the kernel lattice.
pub fn solve(m: &IntMatrix2, b: [i64; 2]) -> Option<([i64; 2], Sublattice)> {
    if *m == IntMatrix2::ZERO {
        return (b == [0, 0]).then(|| ([0, 0], Sublattice::full()));
    }
    let [[p, q], [r, s]] = m.entries.map(|row| row.map(i128::from));
    let (b0, b1) = (i128::from(b[0]), i128::from(b[1]));
    let det = p * s - q * r;
    if det != 0 {
        let x = s * b0 - q * b1;
        let y = p * b1 - r * b0;
        if x % det != 0 || y % det != 0 {
            return None;
        }
        let x = i64::try_from(x / det).ok()?;
        let y = i64::try_from(y / det).ok()?;
        return Some(([x, y], Sublattice::zero()));
    }
    let (w, c) = rank_one_factor(m);
    // m x = c (w · x); need b = c t for an integer t
    let t = if c[0] != 0 {
        if b[0] % c[0] != 0 {
            return None;
        }
        b[0] / c[0]
    } else {
        if b[1] % c[1] != 0 {
            return None;
        }
        b[1] / c[1]
    };
    if [c[0].checked_mul(t)?, c[1].checked_mul(t)?] != b {
        return None;
    }
    let ext = w[0].extended_gcd(&w[1]);
    // w primitive, so ext.gcd = ±1
    let x0 = [ext.x * ext.gcd, ext.y * ext.gcd];
    let x = [x0[0].checked_mul(t)?, x0[1].checked_mul(t)?];
    Some((x, kernel(m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_matrices_have_stated_orders() {
        assert_eq!(IntMatrix2::C.order(), MatrixOrder::Finite(3));
        assert_eq!(IntMatrix2::A.order(), MatrixOrder::Finite(6));
        assert_eq!(IntMatrix2::B.order(), MatrixOrder::Finite(4));
        assert_eq!(IntMatrix2::new(1, 1, 0, 1).order(), MatrixOrder::Infinite);
        assert_eq!(IntMatrix2::new(2, 1, 1, 1).order(), MatrixOrder::Infinite);
        assert_eq!(IntMatrix2::new(2, 0, 0, 1).order(), MatrixOrder::Infinite);
        assert_eq!(IntMatrix2::new(1, 0, 0, -1).order(), MatrixOrder::Finite(2));
        assert_eq!(IntMatrix2::IDENTITY.order(), MatrixOrder::Finite(1));
    }

    #[test]
    fn powers_of_c() {
        assert_eq!(IntMatrix2::C.pow(1).unwrap(), IntMatrix2::new(0, -1, 1, -1));
        assert_eq!(IntMatrix2::C.pow(3).unwrap(), IntMatrix2::IDENTITY);
        assert_eq!(IntMatrix2::C.pow(0).unwrap(), IntMatrix2::IDENTITY);
        assert_eq!(IntMatrix2::C.pow(-1).unwrap(), IntMatrix2::C.pow(2).unwrap());
        let sum = IntMatrix2::IDENTITY
            .checked_add(&IntMatrix2::C)
            .unwrap()
            .checked_add(&IntMatrix2::C.pow(2).unwrap())
            .unwrap();
        assert_eq!(sum, IntMatrix2::ZERO);
    }

    #[test]
    fn negative_power_needs_unimodular() {
        let m = IntMatrix2::new(2, 0, 0, 1);
        assert!(matches!(m.pow(-1), Err(ManifoldError::NotUnimodular(_))));
        assert_eq!(m.pow(3).unwrap(), IntMatrix2::new(8, 0, 0, 1));
    }

    #[test]
    fn fixed_lattice_examples() {
        assert!(IntMatrix2::C.fixed_lattice(1).unwrap().is_zero());
        assert_eq!(IntMatrix2::C.fixed_lattice(3).unwrap().rank(), 2);
        assert!(IntMatrix2::B.fixed_lattice(2).unwrap().is_zero());
        let shear = IntMatrix2::new(1, 1, 0, 1);
        assert_eq!(shear.fixed_lattice(5).unwrap().basis, vec![[1, 0]]);
        let swap = IntMatrix2::new(0, 1, 1, 0);
        assert_eq!(swap.fixed_lattice(1).unwrap().basis, vec![[1, 1]]);
    }

    #[test]
    fn solve_rank_one_and_two() {
        let m = IntMatrix2::new(2, 4, 1, 2);
        let (x, ker) = solve(&m, [6, 3]).unwrap();
        assert_eq!(m.apply(x).unwrap(), [6, 3]);
        assert_eq!(ker.basis, vec![[2, -1]]);
        assert!(solve(&m, [1, 1]).is_none());
        assert!(solve(&m, [2, 2]).is_none());
        let m = IntMatrix2::new(2, 0, 0, 2);
        assert!(solve(&m, [1, 0]).is_none());
        assert_eq!(solve(&m, [4, -2]).unwrap().0, [2, -1]);
    }

    #[test]
    fn serde_uses_row_major_arrays() {
        let m: IntMatrix2 = serde_json::from_str("[0, -1, 1, -1]").unwrap();
        assert_eq!(m, IntMatrix2::C);
    }
}
