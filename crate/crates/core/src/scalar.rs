//! Quaternions, dual numbers and dual quaternions.
//!
//! All three types are small `Copy` values with the usual operator
//! overloads. Multiplication of quaternions (and therefore of dual
//! quaternions) is noncommutative; dual numbers commute with everything.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Absolute tolerance used for "is this component zero" decisions.
pub const ZERO_TOL: f64 = 1e-10;

/// A real quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product of the component vectors, i.e. `Re(self* other)`.
    pub fn dot(self, other: Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn max_abs(self) -> f64 {
        self.w
            .abs()
            .max(self.x.abs())
            .max(self.y.abs())
            .max(self.z.abs())
    }

    pub fn is_zero(self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// `q⁻¹ = q* / |q|²`; `None` for the zero quaternion.
    pub fn inverse(self) -> Option<Quaternion> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            None
        } else {
            Some(self.conj() * (1.0 / n2))
        }
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
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

pub fn quaternion_multiply(a: Quaternion, b: Quaternion) -> Quaternion {
    a * b
}

/// A dual number `s + d ε` with `ε² = 0`.
///
/// Ordering is lexicographic: the standard part decides, the dual part
/// breaks ties. This is the only ring order extending the reals with a
/// positive infinitesimal `ε`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct DualNumber {
    pub s: f64,
    pub d: f64,
}

impl DualNumber {
    pub const ZERO: DualNumber = DualNumber::new(0.0, 0.0);
    pub const ONE: DualNumber = DualNumber::new(1.0, 0.0);
    pub const EPSILON: DualNumber = DualNumber::new(0.0, 1.0);

    pub const fn new(s: f64, d: f64) -> Self {
        DualNumber { s, d }
    }

    pub const fn real(s: f64) -> Self {
        DualNumber::new(s, 0.0)
    }

    pub fn is_appreciable(self) -> bool {
        self.s.abs() > ZERO_TOL
    }

    pub fn is_zero(self, tol: f64) -> bool {
        self.s.abs() <= tol && self.d.abs() <= tol
    }

    /// Magnitude: `|s| + sgn(s) d ε` when appreciable, `|d| ε` otherwise.
    pub fn abs(self) -> DualNumber {
        if self.is_appreciable() {
            DualNumber::new(self.s.abs(), self.s.signum() * self.d)
        } else {
            DualNumber::new(0.0, self.d.abs())
        }
    }

    /// `√(a + bε) = √a + b/(2√a) ε`, defined for `a > 0`. Returns `None`
    /// for non-positive standard parts.
    pub fn sqrt(self) -> Option<DualNumber> {
        if self.s > 0.0 {
            let r = self.s.sqrt();
            Some(DualNumber::new(r, self.d / (2.0 * r)))
        } else {
            None
        }
    }

    /// Reciprocal of an appreciable dual number.
    pub fn recip(self) -> Option<DualNumber> {
        if self.s == 0.0 {
            None
        } else {
            Some(DualNumber::new(1.0 / self.s, -self.d / (self.s * self.s)))
        }
    }

    pub fn powi(self, k: u32) -> DualNumber {
        (0..k).fold(DualNumber::ONE, |acc, _| acc * self)
    }

    pub fn to_dq(self) -> DualQuaternion {
        DualQuaternion::from(self)
    }
}

/// Lexicographic total order on dual numbers.
pub fn dual_compare(a: DualNumber, b: DualNumber) -> Ordering {
    a.s.partial_cmp(&b.s)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.d.partial_cmp(&b.d).unwrap_or(Ordering::Equal))
}

impl PartialOrd for DualNumber {
    fn partial_cmp(&self, other: &DualNumber) -> Option<Ordering> {
        Some(dual_compare(*self, *other))
    }
}

impl From<[f64; 2]> for DualNumber {
    fn from(a: [f64; 2]) -> Self {
        DualNumber::new(a[0], a[1])
    }
}

impl From<DualNumber> for [f64; 2] {
    fn from(v: DualNumber) -> Self {
        [v.s, v.d]
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d < 0.0 {
            write!(f, "{} - {}ε", self.s, -self.d)
        } else {
            write!(f, "{} + {}ε", self.s, self.d)
        }
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.s + o.s, self.d + o.d)
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.s - o.s, self.d - o.d)
    }
}

impl Neg for DualNumber {
    type Output = DualNumber;
    fn neg(self) -> DualNumber {
        DualNumber::new(-self.s, -self.d)
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.s * o.s, self.s * o.d + self.d * o.s)
    }
}

impl Mul<f64> for DualNumber {
    type Output = DualNumber;
    fn mul(self, k: f64) -> DualNumber {
        DualNumber::new(self.s * k, self.d * k)
    }
}

impl AddAssign for DualNumber {
    fn add_assign(&mut self, o: DualNumber) {
        *self = *self + o;
    }
}

impl Sum for DualNumber {
    fn sum<I: Iterator<Item = DualNumber>>(iter: I) -> DualNumber {
        iter.fold(DualNumber::ZERO, |a, b| a + b)
    }
}

/// A dual quaternion `q_s + q_d ε`.
///
/// Serialized as the 8-tuple `[s0, s1, s2, s3, d0, d1, d2, d3]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 8]", into = "[f64; 8]")]
pub struct DualQuaternion {
    pub std: Quaternion,
    pub dual: Quaternion,
}

impl DualQuaternion {
    pub const ZERO: DualQuaternion = DualQuaternion::new(Quaternion::ZERO, Quaternion::ZERO);
    pub const ONE: DualQuaternion = DualQuaternion::new(Quaternion::ONE, Quaternion::ZERO);

    pub const fn new(std: Quaternion, dual: Quaternion) -> Self {
        DualQuaternion { std, dual }
    }

    pub const fn from_std(std: Quaternion) -> Self {
        DualQuaternion::new(std, Quaternion::ZERO)
    }

    pub const fn real(s: f64) -> Self {
        DualQuaternion::new(Quaternion::real(s), Quaternion::ZERO)
    }

    /// `e ε` for a quaternion `e`.
    pub const fn infinitesimal(dual: Quaternion) -> Self {
        DualQuaternion::new(Quaternion::ZERO, dual)
    }

    pub fn from_array(a: [f64; 8]) -> Self {
        DualQuaternion::new(
            Quaternion::new(a[0], a[1], a[2], a[3]),
            Quaternion::new(a[4], a[5], a[6], a[7]),
        )
    }

    pub fn to_array(self) -> [f64; 8] {
        let (s, d) = (self.std, self.dual);
        [s.w, s.x, s.y, s.z, d.w, d.x, d.y, d.z]
    }

    pub fn conj(self) -> Self {
        DualQuaternion::new(self.std.conj(), self.dual.conj())
    }

    /// Appreciable iff the standard part has a component above [`ZERO_TOL`].
    pub fn is_appreciable(self) -> bool {
        !self.std.is_zero(ZERO_TOL)
    }

    pub fn max_abs(self) -> f64 {
        self.std.max_abs().max(self.dual.max_abs())
    }

    pub fn is_zero(self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn is_finite(self) -> bool {
        self.std.is_finite() && self.dual.is_finite()
    }

    /// Real part of both components, as a dual number.
    pub fn re(self) -> DualNumber {
        DualNumber::new(self.std.w, self.dual.w)
    }

    /// Largest imaginary component over both parts.
    pub fn imag_max_abs(self) -> f64 {
        let (s, d) = (self.std, self.dual);
        [s.x, s.y, s.z, d.x, d.y, d.z]
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// The dual number this value represents, if all imaginary components
    /// are within `tol`.
    pub fn as_dual_number(self, tol: f64) -> Option<DualNumber> {
        (self.imag_max_abs() <= tol).then(|| self.re())
    }

    /// Magnitude as a nonnegative dual number:
    /// `|p_s| + (p_s* p_d + p_d* p_s)/(2|p_s|) ε` for appreciable `p`,
    /// `|p_d| ε` otherwise.
    pub fn magnitude(self) -> DualNumber {
        if self.is_appreciable() {
            let ns = self.std.norm();
            // p_s* p_d + p_d* p_s = 2 Re(p_s* p_d)
            DualNumber::new(ns, self.std.dot(self.dual) / ns)
        } else {
            DualNumber::new(0.0, self.dual.norm())
        }
    }

    /// `q q*` as a dual number; equals `|q|²` and is smooth across the
    /// appreciable/infinitesimal boundary.
    pub fn magnitude_sqr(self) -> DualNumber {
        DualNumber::new(self.std.norm_sqr(), 2.0 * self.std.dot(self.dual))
    }

    /// `q⁻¹ = q_s⁻¹ − q_s⁻¹ q_d q_s⁻¹ ε`, defined for appreciable `q`.
    pub fn inverse(self) -> Option<DualQuaternion> {
        if !self.is_appreciable() {
            return None;
        }
        let si = self.std.inverse()?;
        Some(DualQuaternion::new(si, -(si * self.dual * si)))
    }

    pub fn scale(self, k: f64) -> Self {
        DualQuaternion::new(self.std * k, self.dual * k)
    }
}

pub fn dq_multiply(a: DualQuaternion, b: DualQuaternion) -> DualQuaternion {
    a * b
}

pub fn dq_conjugate(q: DualQuaternion) -> DualQuaternion {
    q.conj()
}

pub fn dq_magnitude(p: DualQuaternion) -> DualNumber {
    p.magnitude()
}

/// 2-norm of a dual quaternion vector.
///
/// Appreciable vectors get `√(Σ|xᵢ|²)` in dual arithmetic; infinitesimal
/// ones get `‖x_d‖ ε`.
pub fn vector_norm2(x: &[DualQuaternion]) -> DualNumber {
    let appreciable = x.iter().any(|v| v.is_appreciable());
    if appreciable {
        let sum: DualNumber = x.iter().map(|v| v.magnitude_sqr()).sum();
        sum.sqrt().unwrap_or(DualNumber::ZERO)
    } else {
        let d2: f64 = x.iter().map(|v| v.dual.norm_sqr()).sum();
        DualNumber::new(0.0, d2.sqrt())
    }
}

impl From<[f64; 8]> for DualQuaternion {
    fn from(a: [f64; 8]) -> Self {
        DualQuaternion::from_array(a)
    }
}

impl From<DualQuaternion> for [f64; 8] {
    fn from(q: DualQuaternion) -> Self {
        q.to_array()
    }
}

impl From<DualNumber> for DualQuaternion {
    fn from(v: DualNumber) -> Self {
        DualQuaternion::new(Quaternion::real(v.s), Quaternion::real(v.d))
    }
}

impl From<Quaternion> for DualQuaternion {
    fn from(q: Quaternion) -> Self {
        DualQuaternion::from_std(q)
    }
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.std + o.std, self.dual + o.dual)
    }
}

impl Sub for DualQuaternion {
    type Output = DualQuaternion;
    fn sub(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.std - o.std, self.dual - o.dual)
    }
}

impl Neg for DualQuaternion {
    type Output = DualQuaternion;
    fn neg(self) -> DualQuaternion {
        DualQuaternion::new(-self.std, -self.dual)
    }
}

impl Mul for DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.std * o.std, self.std * o.dual + self.dual * o.std)
    }
}

impl Mul<DualNumber> for DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, o: DualNumber) -> DualQuaternion {
        self * DualQuaternion::from(o)
    }
}

impl AddAssign for DualQuaternion {
    fn add_assign(&mut self, o: DualQuaternion) {
        *self = *self + o;
    }
}

impl SubAssign for DualQuaternion {
    fn sub_assign(&mut self, o: DualQuaternion) {
        *self = *self - o;
    }
}

impl Sum for DualQuaternion {
    fn sum<I: Iterator<Item = DualQuaternion>>(iter: I) -> DualQuaternion {
        iter.fold(DualQuaternion::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i + {}j + {}k)", self.w, self.x, self.y, self.z)
    }
}

impl fmt::Display for DualQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.std, self.dual)
    }
}

/// Relative distance between two dual numbers, taken per part with a
/// floor of 1 on the denominator.
pub fn dual_rel_err(a: DualNumber, b: DualNumber) -> f64 {
    let part = |x: f64, y: f64| (x - y).abs() / 1.0_f64.max(x.abs()).max(y.abs());
    part(a.s, b.s).max(part(a.d, b.d))
}

/// Relative distance between two dual quaternions, component-wise, with a
/// floor of 1 on the denominator.
pub fn dq_rel_err(a: DualQuaternion, b: DualQuaternion) -> f64 {
    let (x, y) = (a.to_array(), b.to_array());
    x.iter()
        .zip(y.iter())
        .map(|(p, q)| (p - q).abs() / 1.0_f64.max(p.abs()).max(q.abs()))
        .fold(0.0, f64::max)
}
