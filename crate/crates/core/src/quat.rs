//! Quaternion arithmetic and the Cayley parametrization of `SO(3, Q)`.
//!
//! Coordinates are stored doubled, so Lipschitz quaternions (all integer
//! components) and the half-integer Hurwitz quaternions share one integral
//! representation.  A primitive Lipschitz quaternion `q` acts on imaginary
//! space by `x -> q x q^{-1}`; the matrix has denominator `|q|^2` and the
//! coincidence index of the rotation equals the odd part of `|q|^2`.

use crate::arith;
use crate::error::{Error, Result};
use crate::mat::{Rat, RatMat};
use num_bigint::BigInt;
use num_rational::Ratio;
use std::fmt;

/// A Hurwitz quaternion in doubled coordinates: all four entries even
/// (Lipschitz) or all four odd (half-integer).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Quaternion {
    twice: [i64; 4],
}

impl Quaternion {
    /// Lipschitz quaternion from integer components.
    pub fn new(q0: i64, q1: i64, q2: i64, q3: i64) -> Self {
        Quaternion { twice: [2 * q0, 2 * q1, 2 * q2, 2 * q3] }
    }

    /// From doubled coordinates; they must be all even or all odd.
    pub fn from_doubled(twice: [i64; 4]) -> Result<Self> {
        let even = twice.iter().filter(|c| *c % 2 == 0).count();
        if even != 0 && even != 4 {
            return Err(Error::invalid(
                "doubled coordinates must be all even or all odd",
            ));
        }
        Ok(Quaternion { twice })
    }

    pub fn zero() -> Self {
        Quaternion::new(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Quaternion::new(1, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.twice == [0; 4]
    }

    pub fn is_lipschitz(&self) -> bool {
        self.twice.iter().all(|c| c % 2 == 0)
    }

    /// Integer components, for Lipschitz quaternions.
    pub fn components(&self) -> Option<[i64; 4]> {
        if self.is_lipschitz() {
            Some([self.twice[0] / 2, self.twice[1] / 2, self.twice[2] / 2, self.twice[3] / 2])
        } else {
            None
        }
    }

    pub fn doubled(&self) -> [i64; 4] {
        self.twice
    }

    /// Lipschitz with coprime components.
    pub fn is_primitive(&self) -> bool {
        match self.components() {
            None => false,
            Some(c) => {
                let g = c.iter().fold(0i64, |acc, &x| arith::gcd_i64(acc, x));
                g == 1
            }
        }
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.twice;
        Quaternion { twice: [a, -b, -c, -d] }
    }

    pub fn neg(&self) -> Self {
        let [a, b, c, d] = self.twice;
        Quaternion { twice: [-a, -b, -c, -d] }
    }

    /// Hamilton product; exact on the Hurwitz order.
    pub fn mul(&self, o: &Quaternion) -> Quaternion {
        let [a0, a1, a2, a3] = self.twice.map(i128::from);
        let [b0, b1, b2, b3] = o.twice.map(i128::from);
        let t = [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ];
        // doubled product = (doubled a * doubled b) / 2, exact by closure
        let twice = t.map(|x| {
            debug_assert!(x % 2 == 0, "Hurwitz order is closed under products");
            i64::try_from(x / 2).expect("quaternion product overflow")
        });
        Quaternion { twice }
    }

    /// `|q|^2 = q conj(q)`, an integer for every Hurwitz quaternion.
    pub fn norm(&self) -> i64 {
        let s: i128 = self.twice.iter().map(|&c| i128::from(c) * i128::from(c)).sum();
        debug_assert!(s % 4 == 0);
        i64::try_from(s / 4).expect("quaternion norm overflow")
    }

    /// Standard scalar product on `R^4`, exact rational.
    pub fn inner(&self, o: &Quaternion) -> Ratio<i64> {
        let s: i64 = self.twice.iter().zip(&o.twice).map(|(&a, &b)| a * b).sum();
        Ratio::new(s, 4)
    }

    /// Representative of the pair `{q, -q}`: first nonzero component
    /// positive.
    pub fn canonical_sign(&self) -> Self {
        for &c in &self.twice {
            if c > 0 {
                return *self;
            }
            if c < 0 {
                return self.neg();
            }
        }
        *self
    }

    /// Odd part of the norm: the coincidence index of `R_q` on the cubic
    /// lattices.
    pub fn coincidence_index(&self) -> Result<u64> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        Ok(arith::odd_part(self.norm() as u64))
    }

    /// The exact rotation matrix of `x -> q x q^{-1}` on imaginary space.
    pub fn cayley_matrix(&self) -> Result<RatMat> {
        if self.is_zero() {
            return Err(Error::ZeroQuaternion);
        }
        if !self.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let [q0, q1, q2, q3] = self.components().expect("primitive is Lipschitz");
        let n = BigInt::from(self.norm());
        let e = |v: i64| Rat::new(BigInt::from(v), n.clone());
        let rows = vec![
            vec![
                e(q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3),
                e(-2 * q0 * q3 + 2 * q1 * q2),
                e(2 * q0 * q2 + 2 * q1 * q3),
            ],
            vec![
                e(2 * q0 * q3 + 2 * q1 * q2),
                e(q0 * q0 - q1 * q1 + q2 * q2 - q3 * q3),
                e(-2 * q0 * q1 + 2 * q2 * q3),
            ],
            vec![
                e(-2 * q0 * q2 + 2 * q1 * q3),
                e(2 * q0 * q1 + 2 * q2 * q3),
                e(q0 * q0 - q1 * q1 - q2 * q2 + q3 * q3),
            ],
        ];
        Ok(RatMat::from_rows(rows).expect("rectangular"))
    }

    /// Matrix of the rotoreflection `T_q = -R_q`.
    pub fn rotoreflection_matrix(&self) -> Result<RatMat> {
        Ok(self.cayley_matrix()?.neg())
    }

    pub fn parse(s: &str) -> Result<Quaternion> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::parse(0, "quaternion literal must have four components"));
        }
        let mut c = [0i64; 4];
        let mut offset = 0usize;
        for (i, p) in parts.iter().enumerate() {
            c[i] = p
                .parse::<i64>()
                .map_err(|_| Error::parse(offset, format!("invalid integer {p:?}")))?;
            offset += p.len() + 1;
        }
        Ok(Quaternion::new(c[0], c[1], c[2], c[3]))
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.components() {
            Some([a, b, c, d]) => write!(f, "{a},{b},{c},{d}"),
            None => {
                let [a, b, c, d] = self.twice;
                write!(f, "{a}/2,{b}/2,{c}/2,{d}/2")
            }
        }
    }
}

/// One primitive Lipschitz quaternion per `{q, -q}` pair with norm at most
/// `max_norm`, sorted by norm and then lexicographically descending (so the
/// identity-like representatives lead each norm shell).
pub fn enumerate_primitive(max_norm: i64) -> Vec<Quaternion> {
    let mut out = Vec::new();
    if max_norm < 1 {
        return out;
    }
    let bound = (max_norm as f64).sqrt() as i64 + 1;
    for a in 0..=bound {
        let a2 = a * a;
        if a2 > max_norm {
            break;
        }
        let brange = if a > 0 { -bound..=bound } else { 0..=bound };
        for b in brange {
            let ab = a2 + b * b;
            if ab > max_norm {
                continue;
            }
            let crange = if a > 0 || b > 0 { -bound..=bound } else { 0..=bound };
            for c in crange {
                let abc = ab + c * c;
                if abc > max_norm {
                    continue;
                }
                let drange = if a > 0 || b > 0 || c > 0 { -bound..=bound } else { 1..=bound };
                for d in drange {
                    let n = abc + d * d;
                    if n > max_norm || n == 0 {
                        continue;
                    }
                    let q = Quaternion::new(a, b, c, d);
                    if q.is_primitive() {
                        out.push(q);
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| {
        (x.norm(), [-x.twice[0], -x.twice[1], -x.twice[2], -x.twice[3]])
            .cmp(&(y.norm(), [-y.twice[0], -y.twice[1], -y.twice[2], -y.twice[3]]))
    });
    out
}
