use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// `p ↦ A·p + b` with `A = [[a11, a12], [a21, a22]]` acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 6]", into = "[f64; 6]")]
pub struct AffineMap {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
    pub b1: f64,
    pub b2: f64,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        a11: 1.0,
        a12: 0.0,
        a21: 0.0,
        a22: 1.0,
        b1: 0.0,
        b2: 0.0,
    };

    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64, b1: f64, b2: f64) -> Result<Self> {
        let m = AffineMap {
            a11,
            a12,
            a21,
            a22,
            b1,
            b2,
        };
        let entries = m.to_array();
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Degenerate("affine map has non-finite entries".into()));
        }
        let det = m.det();
        let scale = a11.abs().max(a12.abs()).max(a21.abs()).max(a22.abs());
        if det == 0.0 || det.abs() <= 1e-14 * scale * scale {
            return Err(Error::Degenerate(format!("affine map has determinant {det}")));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self::IDENTITY
    }

    pub fn translation(b1: f64, b2: f64) -> Self {
        AffineMap {
            b1,
            b2,
            ..Self::IDENTITY
        }
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn apply(&self, p: Point) -> Point {
        let [x, y] = self.linear(p);
        [x + self.b1, y + self.b2]
    }

    /// `A·v`, ignoring the translation.
    pub fn linear(&self, v: Point) -> Point {
        [
            self.a11 * v[0] + self.a12 * v[1],
            self.a21 * v[0] + self.a22 * v[1],
        ]
    }

    /// `Aᵀ·u`; supports transform as `h_{ψ(K)}(u) = ⟨u, b⟩ + h_K(Aᵀu)`.
    pub fn transpose_linear(&self, u: Point) -> Point {
        [
            self.a11 * u[0] + self.a21 * u[1],
            self.a12 * u[0] + self.a22 * u[1],
        ]
    }

    pub fn translation_part(&self) -> Point {
        [self.b1, self.b2]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let [b1, b2] = self.apply(inner.translation_part());
        AffineMap {
            a11: self.a11 * inner.a11 + self.a12 * inner.a21,
            a12: self.a11 * inner.a12 + self.a12 * inner.a22,
            a21: self.a21 * inner.a11 + self.a22 * inner.a21,
            a22: self.a21 * inner.a12 + self.a22 * inner.a22,
            b1,
            b2,
        }
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Degenerate("singular affine map".into()));
        }
        let a11 = self.a22 / det;
        let a12 = -self.a12 / det;
        let a21 = -self.a21 / det;
        let a22 = self.a11 / det;
        Ok(AffineMap {
            a11,
            a12,
            a21,
            a22,
            b1: -(a11 * self.b1 + a12 * self.b2),
            b2: -(a21 * self.b1 + a22 * self.b2),
        })
    }

    /// The unique affine map sending `src[k]` to `dst[k]` for `k = 0, 1, 2`.
    pub fn from_triangles(src: [Point; 3], dst: [Point; 3]) -> Result<AffineMap> {
        let frame = |t: [Point; 3]| AffineMap {
            a11: t[1][0] - t[0][0],
            a12: t[2][0] - t[0][0],
            a21: t[1][1] - t[0][1],
            a22: t[2][1] - t[0][1],
            b1: t[0][0],
            b2: t[0][1],
        };
        let s = frame(src);
        let d = frame(dst);
        let s = AffineMap::new(s.a11, s.a12, s.a21, s.a22, s.b1, s.b2)?;
        let d = AffineMap::new(d.a11, d.a12, d.a21, d.a22, d.b1, d.b2)?;
        Ok(d.compose(&s.inverse()?))
    }

    /// Largest singular value of the linear part.
    pub fn operator_norm(&self) -> f64 {
        let s = self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22;
        let d = self.det();
        let disc = (s * s - 4.0 * d * d).max(0.0).sqrt();
        (0.5 * (s + disc)).sqrt()
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.a11, self.a12, self.a21, self.a22, self.b1, self.b2]
    }

    pub fn from_array(v: [f64; 6]) -> Result<Self> {
        AffineMap::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }

    /// Largest absolute entry-wise difference.
    pub fn distance(&self, other: &AffineMap) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl Default for AffineMap {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl TryFrom<[f64; 6]> for AffineMap {
    type Error = Error;

    fn try_from(v: [f64; 6]) -> Result<Self> {
        AffineMap::from_array(v)
    }
}

impl From<AffineMap> for [f64; 6] {
    fn from(m: AffineMap) -> [f64; 6] {
        m.to_array()
    }
}
