//! Fixed-size real multivectors over the Clifford algebra Cl(3,0).
//!
//! The eight basis blades are stored in the order
//! `{1, e1, e2, e3, e23, e31, e12, e123}`. Grade-2 coefficients are kept as
//! the dual vector `(t1, t2, t3)` meaning `t1*e23 + t2*e31 + t3*e12`, which
//! equals `e123 * (t1*e1 + t2*e2 + t3*e3)`. With that layout the duality map
//! `v -> i*v` between vectors and bivectors is a plain component copy.
//!
//! The geometric product is table driven: a precomputed 8x8 table of
//! `(target index, sign)` pairs generated from the generator relations
//! `e_k^2 = 1`, `e_i e_j = -e_j e_i`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance for coefficient comparisons.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Basis blade labels in storage order.
pub const BASIS_LABELS: [&str; 8] = ["1", "e1", "e2", "e3", "e23", "e31", "e12", "e123"];

// Bit encoding of the blades: e1 -> bit 0, e2 -> bit 1, e3 -> bit 2.
const BLADE_BITS: [u32; 8] = [0b000, 0b001, 0b010, 0b100, 0b110, 0b101, 0b011, 0b111];

// Orientation of each stored blade relative to index-ascending factor order.
// Only e31 = e3 e1 is stored against the ascending order (e31 = -e13).
const BLADE_ORIENT: [i32; 8] = [1, 1, 1, 1, 1, -1, 1, 1];

// Map from the bit encoding back to the storage index.
const BITS_TO_INDEX: [usize; 8] = [0, 1, 2, 6, 3, 5, 4, 7];

/// Sign acquired when sorting the concatenated factors of two bit-encoded
/// blades into ascending order. Every generator in `b` moves left past the
/// generators of `a` with a strictly higher index; squares contract to +1.
const fn reorder_sign(a: u32, b: u32) -> i32 {
    let mut swaps = 0u32;
    let mut j = 0u32;
    while j < 3 {
        if b & (1 << j) != 0 {
            swaps += (a >> (j + 1)).count_ones();
        }
        j += 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

const fn build_blade_table() -> [[(usize, i32); 8]; 8] {
    let mut table = [[(0usize, 0i32); 8]; 8];
    let mut row = 0;
    while row < 8 {
        let mut col = 0;
        while col < 8 {
            let bits = BLADE_BITS[row] ^ BLADE_BITS[col];
            let idx = BITS_TO_INDEX[bits as usize];
            let sign = BLADE_ORIENT[row]
                * BLADE_ORIENT[col]
                * reorder_sign(BLADE_BITS[row], BLADE_BITS[col])
                * BLADE_ORIENT[idx];
            table[row][col] = (idx, sign);
            col += 1;
        }
        row += 1;
    }
    table
}

/// `BLADE_TABLE[a][b] = (index, sign)` such that `basis[a] * basis[b] =
/// sign * basis[index]`.
pub const BLADE_TABLE: [[(usize, i32); 8]; 8] = build_blade_table();

/// A grade-1 element of Cl(3,0): an ordinary Cartesian three-vector.
#[derive(Copy, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector3(pub [f64; 3]);

impl Vector3 {
    pub const ZERO: Vector3 = Vector3([0.0, 0.0, 0.0]);
    pub const E1: Vector3 = Vector3([1.0, 0.0, 0.0]);
    pub const E2: Vector3 = Vector3([0.0, 1.0, 0.0]);
    pub const E3: Vector3 = Vector3([0.0, 0.0, 1.0]);

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vector3([x, y, z])
    }

    /// Scalar product u.v; the symmetric part of the geometric product.
    pub fn dot(&self, other: &Vector3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    /// Classical cross product u x v.
    pub fn cross(&self, other: &Vector3) -> Vector3 {
        let (u, v) = (&self.0, &other.0);
        Vector3([
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ])
    }

    /// Wedge product u ^ v: the antisymmetric part of the geometric product,
    /// a pure bivector equal to i*(u x v).
    pub fn wedge(&self, other: &Vector3) -> Multivector {
        Multivector::from_bivector_dual(self.cross(other))
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Inverse vector v / v^2, so that v * v^{-1} = 1.
    pub fn inverse(&self) -> Result<Vector3> {
        let n2 = self.norm_sq();
        if n2 <= 0.0 || !n2.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(*self * (1.0 / n2))
    }

    pub fn normalized(&self) -> Result<Vector3> {
        let n = self.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(*self * (1.0 / n))
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Add for Vector3 {
    type Output = Vector3;
    fn add(self, rhs: Vector3) -> Vector3 {
        Vector3([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

impl Sub for Vector3 {
    type Output = Vector3;
    fn sub(self, rhs: Vector3) -> Vector3 {
        Vector3([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
        ])
    }
}

impl Neg for Vector3 {
    type Output = Vector3;
    fn neg(self) -> Vector3 {
        Vector3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vector3 {
    type Output = Vector3;
    fn mul(self, rhs: f64) -> Vector3 {
        Vector3([self.0[0] * rhs, self.0[1] * rhs, self.0[2] * rhs])
    }
}

/// Extracting the grade-1 part of a general multivector fails unless all
/// other grades vanish (within `DEFAULT_TOL`).
impl TryFrom<Multivector> for Vector3 {
    type Error = Error;

    fn try_from(m: Multivector) -> Result<Vector3> {
        let off = m.s.abs().max(m.p.abs()).max(
            m.b.iter().fold(0.0f64, |acc, c| acc.max(c.abs())),
        );
        if off > DEFAULT_TOL {
            return Err(Error::InvalidArgument(format!(
                "multivector is not grade 1 (off-grade magnitude {off:.3e})"
            )));
        }
        Ok(Vector3(m.v))
    }
}

/// A general element of Cl(3,0) with eight real coefficients.
///
/// `s` is the scalar, `v` the vector (e1, e2, e3), `b` the bivector stored as
/// its dual vector (coefficients of e23, e31, e12), and `p` the trivector
/// (e123, the pseudoscalar `i`).
#[derive(Copy, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Multivector {
    pub s: f64,
    pub v: [f64; 3],
    pub b: [f64; 3],
    pub p: f64,
}

impl Multivector {
    pub const ZERO: Multivector = Multivector {
        s: 0.0,
        v: [0.0; 3],
        b: [0.0; 3],
        p: 0.0,
    };

    pub const ONE: Multivector = Multivector {
        s: 1.0,
        v: [0.0; 3],
        b: [0.0; 3],
        p: 0.0,
    };

    /// The pseudoscalar i = e1 e2 e3.
    pub const I: Multivector = Multivector {
        s: 0.0,
        v: [0.0; 3],
        b: [0.0; 3],
        p: 1.0,
    };

    pub fn new(s: f64, v: [f64; 3], b: [f64; 3], p: f64) -> Self {
        Multivector { s, v, b, p }
    }

    pub fn scalar(s: f64) -> Self {
        Multivector { s, ..Self::ZERO }
    }

    pub fn from_vector(v: Vector3) -> Self {
        Multivector {
            v: v.0,
            ..Self::ZERO
        }
    }

    /// Bivector from its dual vector: i*t = t1*e23 + t2*e31 + t3*e12.
    pub fn from_bivector_dual(t: Vector3) -> Self {
        Multivector {
            b: t.0,
            ..Self::ZERO
        }
    }

    pub fn trivector(p: f64) -> Self {
        Multivector { p, ..Self::ZERO }
    }

    /// The nth basis blade in storage order.
    pub fn basis(index: usize) -> Result<Self> {
        if index >= 8 {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range 0..8"
            )));
        }
        let mut c = [0.0; 8];
        c[index] = 1.0;
        Ok(Self::from_coefficients(c))
    }

    /// Coefficients in basis order {1, e1, e2, e3, e23, e31, e12, e123}.
    pub fn coefficients(&self) -> [f64; 8] {
        [
            self.s, self.v[0], self.v[1], self.v[2], self.b[0], self.b[1], self.b[2], self.p,
        ]
    }

    pub fn from_coefficients(c: [f64; 8]) -> Self {
        Multivector {
            s: c[0],
            v: [c[1], c[2], c[3]],
            b: [c[4], c[5], c[6]],
            p: c[7],
        }
    }

    /// Project onto grade k. The four projections partition the coefficients,
    /// so summing grades 0..=3 reconstructs the multivector exactly.
    pub fn grade(&self, k: usize) -> Result<Multivector> {
        match k {
            0 => Ok(Multivector::scalar(self.s)),
            1 => Ok(Multivector::from_vector(Vector3(self.v))),
            2 => Ok(Multivector::from_bivector_dual(Vector3(self.b))),
            3 => Ok(Multivector::trivector(self.p)),
            _ => Err(Error::InvalidGrade(k)),
        }
    }

    pub fn scalar_part(&self) -> f64 {
        self.s
    }

    pub fn vector_part(&self) -> Vector3 {
        Vector3(self.v)
    }

    /// Dual vector of the bivector part: the t in i*t.
    pub fn bivector_dual(&self) -> Vector3 {
        Vector3(self.b)
    }

    pub fn trivector_part(&self) -> f64 {
        self.p
    }

    /// Reversion: flips the factor order of every blade, negating grades 2
    /// and 3. `m * m.reverse()` has a nonnegative scalar part.
    pub fn reverse(&self) -> Multivector {
        Multivector {
            s: self.s,
            v: self.v,
            b: [-self.b[0], -self.b[1], -self.b[2]],
            p: -self.p,
        }
    }

    /// The grade involution negating the odd part (grades 1 and 3).
    pub fn star(&self) -> Multivector {
        Multivector {
            s: self.s,
            v: [-self.v[0], -self.v[1], -self.v[2]],
            b: self.b,
            p: -self.p,
        }
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.coefficients()
            .iter()
            .fold(0.0f64, |acc, c| acc.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_finite())
    }

    /// Coefficient-wise comparison with an absolute tolerance.
    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        self.coefficients()
            .iter()
            .zip(other.coefficients().iter())
            .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// CSV row of the eight coefficients in basis order.
    pub fn csv_row(&self) -> String {
        self.coefficients()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_csv_row(row: &str) -> Result<Multivector> {
        let fields: Vec<&str> = row.trim().split(',').collect();
        if fields.len() != 8 {
            return Err(Error::InvalidArgument(format!(
                "expected 8 comma-separated coefficients, got {}",
                fields.len()
            )));
        }
        let mut c = [0.0; 8];
        for (slot, field) in c.iter_mut().zip(fields.iter()) {
            *slot = field.trim().parse::<f64>().map_err(|e| {
                Error::InvalidArgument(format!("bad coefficient {field:?}: {e}"))
            })?;
        }
        Ok(Multivector::from_coefficients(c))
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        let (a, b) = (self.coefficients(), rhs.coefficients());
        let mut c = [0.0; 8];
        for i in 0..8 {
            c[i] = a[i] + b[i];
        }
        Multivector::from_coefficients(c)
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        let (a, b) = (self.coefficients(), rhs.coefficients());
        let mut c = [0.0; 8];
        for i in 0..8 {
            c[i] = a[i] - b[i];
        }
        Multivector::from_coefficients(c)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        let mut c = self.coefficients();
        for x in &mut c {
            *x *= rhs;
        }
        Multivector::from_coefficients(c)
    }
}

/// Geometric product, driven by the blade table.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        let a = self.coefficients();
        let b = rhs.coefficients();
        let mut c = [0.0; 8];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                let (idx, sign) = BLADE_TABLE[i][j];
                c[idx] += sign as f64 * ca * cb;
            }
        }
        Multivector::from_coefficients(c)
    }
}

/// Checked geometric product: rejects non-finite results (overflow, or NaN
/// from non-finite inputs).
pub fn geometric_product(u: &Multivector, v: &Multivector) -> Result<Multivector> {
    let product = *u * *v;
    if !product.is_finite() {
        return Err(Error::NonFinite {
            context: "geometric product",
        });
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(c: [f64; 8]) -> Multivector {
        Multivector::from_coefficients(c)
    }

    #[test]
    fn generator_squares_are_one() {
        for k in 1..=3 {
            let e = Multivector::basis(k).unwrap();
            assert_eq!(e * e, Multivector::ONE, "basis {k} squared");
        }
    }

    #[test]
    fn distinct_generators_anticommute() {
        let e1 = Multivector::basis(1).unwrap();
        let e2 = Multivector::basis(2).unwrap();
        let e12 = Multivector::basis(6).unwrap();
        assert_eq!(e1 * e2, e12);
        assert_eq!(e2 * e1, -e12);
    }

    #[test]
    fn pseudoscalar_squares_to_minus_one() {
        let i = Multivector::I;
        assert_eq!(i * i, Multivector::scalar(-1.0));
    }

    #[test]
    fn pseudoscalar_commutes_with_all_blades() {
        for k in 0..8 {
            let blade = Multivector::basis(k).unwrap();
            assert_eq!(Multivector::I * blade, blade * Multivector::I, "blade {k}");
        }
    }

    #[test]
    fn spot_check_bivector_products() {
        let e23 = Multivector::basis(4).unwrap();
        let e31 = Multivector::basis(5).unwrap();
        let e12 = Multivector::basis(6).unwrap();
        // e23 e31 = e2 e3 e3 e1 = e2 e1 = -e12
        assert_eq!(e23 * e31, -e12);
        assert_eq!(e31 * e23, e12);
        assert_eq!(e23 * e23, Multivector::scalar(-1.0));
        assert_eq!(e31 * e31, Multivector::scalar(-1.0));
        assert_eq!(e12 * e12, Multivector::scalar(-1.0));
    }

    #[test]
    fn duality_is_component_copy() {
        let t = Vector3::new(0.4, -1.5, 2.0);
        let lifted = Multivector::I * Multivector::from_vector(t);
        assert_eq!(lifted, Multivector::from_bivector_dual(t));
    }

    #[test]
    fn grade_projection_partitions() {
        let m = mv([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let mut sum = Multivector::ZERO;
        for k in 0..=3 {
            sum = sum + m.grade(k).unwrap();
        }
        assert_eq!(sum, m);
        assert!(m.grade(4).is_err());
    }

    #[test]
    fn grade_extracts_vector() {
        let m = Multivector::scalar(3.0)
            + Multivector::from_vector(Vector3::E1)
            + Multivector::basis(6).unwrap();
        assert_eq!(
            m.grade(1).unwrap(),
            Multivector::from_vector(Vector3::E1)
        );
    }

    #[test]
    fn reverse_negates_grades_two_and_three() {
        let e12 = Multivector::basis(6).unwrap();
        assert_eq!(e12.reverse(), -e12);
        assert_eq!(Multivector::I.reverse(), -Multivector::I);
        let e1 = Multivector::basis(1).unwrap();
        assert_eq!(e1.reverse(), e1);
    }

    #[test]
    fn star_is_an_involution() {
        let m = mv([1.0, -2.0, 0.5, 3.0, -1.0, 0.25, 4.0, -0.75]);
        assert_eq!(m.star().star(), m);
        let e1 = Multivector::basis(1).unwrap();
        let e12 = Multivector::basis(6).unwrap();
        assert_eq!(e1.star(), -e1);
        assert_eq!(e12.star(), e12);
        assert_eq!(Multivector::I.star(), -Multivector::I);
    }

    #[test]
    fn dot_and_wedge_of_basis_vectors() {
        assert_eq!(Vector3::E1.dot(&Vector3::E2), 0.0);
        assert_eq!(
            Vector3::E1.wedge(&Vector3::E2),
            Multivector::basis(6).unwrap()
        );
        let u = Vector3::new(1.0, -2.0, 0.5);
        assert!((u.dot(&u) - u.norm_sq()).abs() < 1e-15);
    }

    #[test]
    fn vector_inverse() {
        let v = Vector3::new(2.0, 0.0, 0.0);
        let inv = v.inverse().unwrap();
        assert_eq!(inv, Vector3::new(0.5, 0.0, 0.0));

        let w = Vector3::new(1.0, 1.0, 0.0);
        let winv = w.inverse().unwrap();
        assert_eq!(winv, Vector3::new(0.5, 0.5, 0.0));

        assert!(matches!(
            Vector3::ZERO.inverse(),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn checked_product_rejects_overflow() {
        let huge = Multivector::scalar(f64::MAX);
        let two = Multivector::scalar(2.0);
        assert!(matches!(
            geometric_product(&huge, &two),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn vector3_tryfrom_rejects_mixed_grades() {
        let m = Multivector::scalar(1.0) + Multivector::from_vector(Vector3::E1);
        assert!(Vector3::try_from(m).is_err());
        let pure = Multivector::from_vector(Vector3::new(1.0, 2.0, 3.0));
        assert_eq!(Vector3::try_from(pure).unwrap(), Vector3::new(1.0, 2.0, 3.0));
    }

    #[test]
    fn csv_round_trip() {
        let m = mv([1.5, -2.0, 3.25, 0.0, -0.5, 6.0, -7.125, 8.0]);
        let row = m.csv_row();
        assert_eq!(Multivector::from_csv_row(&row).unwrap(), m);
        assert!(Multivector::from_csv_row("1,2,3").is_err());
        assert!(Multivector::from_csv_row("a,b,c,d,e,f,g,h").is_err());
    }

    #[test]
    fn json_matches_documented_schema() {
        let m = mv([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let json = serde_json::to_value(m).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"s": 1.0, "v": [2.0, 3.0, 4.0], "b": [5.0, 6.0, 7.0], "p": 8.0})
        );
    }
}
