//! Real quaternions and their similarity classes.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance for quaternion comparisons, scaled by magnitude.
pub const QTOL: f64 = 1e-12;

/// `q0 + q1 i + q2 j + q3 k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Quaternion { q0, q1, q2, q3 }
    }

    pub const fn real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q0, self.q1, self.q2, self.q3]
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn re(self) -> f64 {
        self.q0
    }

    /// `|Im q|`.
    pub fn im_norm(self) -> f64 {
        (self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3).sqrt()
    }

    pub fn is_zero(self) -> bool {
        self.q0 == 0.0 && self.q1 == 0.0 && self.q2 == 0.0 && self.q3 == 0.0
    }

    pub fn is_real(self) -> bool {
        self.q1 == 0.0 && self.q2 == 0.0 && self.q3 == 0.0
    }

    pub fn scale(self, r: f64) -> Self {
        Quaternion::new(self.q0 * r, self.q1 * r, self.q2 * r, self.q3 * r)
    }

    pub fn inv(self) -> Result<Self> {
        qinv(self)
    }

    /// Equality within `QTOL * max(1, |self|, |other|)`.
    pub fn approx_eq(self, other: Self) -> bool {
        let scale = 1.0_f64.max(self.norm()).max(other.norm());
        (self - other).norm() <= QTOL * scale
    }
}

/// Hamilton product.
pub fn qmul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion::new(
        p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
        p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
        p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
        p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0,
    )
}

pub fn qinv(q: Quaternion) -> Result<Quaternion> {
    let n2 = q.norm_sqr();
    if n2 == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok(q.conj().scale(1.0 / n2))
}

/// `s⁻¹ q s`.
pub fn conjugate_by(q: Quaternion, s: Quaternion) -> Result<Quaternion> {
    let si = qinv(s)?;
    Ok(si * q * s)
}

/// Similarity class `{re + rad·I : I² = -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereClass {
    pub re: f64,
    pub rad: f64,
}

impl SphereClass {
    pub fn new(re: f64, rad: f64) -> Self {
        SphereClass { re, rad: rad.abs() }
    }

    /// Canonical member `re + rad·i`.
    pub fn representative(self) -> Quaternion {
        Quaternion::new(self.re, self.rad, 0.0, 0.0)
    }

    pub fn contains(self, p: Quaternion) -> bool {
        let scale = 1.0_f64.max(p.norm()).max(self.re.abs() + self.rad);
        (p.re() - self.re).abs() <= QTOL * scale && (p.im_norm() - self.rad).abs() <= QTOL * scale
    }

    /// `|Δre| + |Δrad|`.
    pub fn distance(self, other: SphereClass) -> f64 {
        (self.re - other.re).abs() + (self.rad - other.rad).abs()
    }
}

pub fn sphere_rep(q: Quaternion) -> SphereClass {
    SphereClass::new(q.re(), q.im_norm())
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.q0 + o.q0, self.q1 + o.q1, self.q2 + o.q2, self.q3 + o.q3)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.q0 - o.q0, self.q1 - o.q1, self.q2 - o.q2, self.q3 - o.q3)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        qmul(self, o)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: f64) -> Quaternion {
        self.scale(r)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Quaternion) {
        *self = *self * o;
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Quaternion::real(r)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.q0, self.q1, self.q2, self.q3)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(d).map(Quaternion::from_array)
    }
}
