use std::fmt;

use serde::Serialize;

use super::matrix::IntMatrix2;
use super::ManifoldError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Spherical => "spherical",
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TriangleType {
    pub r: u64,
    pub s: u64,
    pub t: u64,
    pub geometry: Geometry,
}

impl TriangleType {
    /// Monodromy of the zero-Euler-number torus bundle for the Euclidean
    /// triples (2,3,6), (2,4,4), (3,3,3), in any order.
    pub fn euclidean_monodromy(&self) -> Option<IntMatrix2> {
        let mut v = [self.r, self.s, self.t];
        v.sort_unstable();
        match v {
            [2, 3, 6] => Some(IntMatrix2::A),
            [2, 4, 4] => Some(IntMatrix2::B),
            [3, 3, 3] => Some(IntMatrix2::C),
            _ => None,
        }
    }
}

/// Sign of `1/r + 1/s + 1/t - 1`, computed as `st + rt + rs` against `rst`.
pub fn triangle_classify(r: u64, s: u64, t: u64) -> Result<TriangleType, ManifoldError> {
    if r < 2 || s < 2 || t < 2 {
        return Err(ManifoldError::InvalidTriangle(r, s, t));
    }
    let (r2, s2, t2) = (u128::from(r), u128::from(s), u128::from(t));
    let lhs = s2 * t2 + r2 * t2 + r2 * s2;
    let rhs = r2.checked_mul(s2).and_then(|x| x.checked_mul(t2)).ok_or(ManifoldError::Overflow)?;
    let geometry = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => Geometry::Spherical,
        std::cmp::Ordering::Equal => Geometry::Euclidean,
        std::cmp::Ordering::Less => Geometry::Hyperbolic,
    };
    Ok(TriangleType { r, s, t, geometry })
}
