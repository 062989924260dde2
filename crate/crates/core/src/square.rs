//! Linear coincidence isometries of the square lattice `Z^2 = Z[i]`.
//!
//! A coincidence rotation acts as multiplication by `e * z / conj(z)` where
//! `e` is a unit and the numerator `z` is coprime to its conjugate; a
//! coincidence reflection is such a rotation composed with complex
//! conjugation.  The coincidence index is `N(z)`, the CSL is the ideal
//! `z Z[i]`, and numerators are exactly the products of split-prime powers
//! taking one member of each conjugate pair.
//!
//! Canonical numerator: the associate with odd, positive real part.  Exactly
//! two associates have odd real part and they are negatives of each other,
//! so the form is unique and composition can renormalize deterministically.

use crate::arith;
use crate::error::{Error, Result};
use crate::gaussian::{self, GaussianInt, Unit};
use crate::lattice::RationalLattice;
use crate::mat::{Rat, RatMat};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// A coincidence isometry `R_{z,e}` (rotation) or `T_{z,e} = R_{z,e} T_r`
/// (reflection) of the square lattice, in canonical numerator form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlanarCoincidence {
    numerator: GaussianInt,
    unit: Unit,
    reflection: bool,
}

impl PlanarCoincidence {
    /// Validating constructor: the numerator must already be canonical
    /// (odd positive real part, coprime to its conjugate).
    pub fn new(numerator: GaussianInt, unit: Unit, reflection: bool) -> Result<Self> {
        if !gaussian::is_odd_visible(&numerator) {
            return Err(Error::invalid(format!(
                "numerator {numerator} is not coprime to its conjugate"
            )));
        }
        let canonical = numerator
            .numerator_associate()
            .map(|(c, _)| c == numerator)
            .unwrap_or(false);
        if !canonical {
            return Err(Error::invalid(format!(
                "numerator {numerator} is not in canonical form (odd, positive real part)"
            )));
        }
        Ok(PlanarCoincidence { numerator, unit, reflection })
    }

    /// Build from an arbitrary ratio `u * w / conj(w)`: cancels the common
    /// factor of `w` and `conj(w)` and renormalizes to the canonical
    /// associate, adjusting the unit.
    pub fn from_ratio(w: &GaussianInt, unit: Unit, reflection: bool) -> Result<Self> {
        if w.is_zero() {
            return Err(Error::invalid("zero numerator"));
        }
        let g = gaussian::gcd(w, &w.conj())?;
        let h = g.div_exact(w).expect("gcd divides");
        // g and conj(g) are associates, so the quotient is a unit.
        let gq = g.conj().div_exact(&g).expect("self-conjugate up to unit");
        let u2 = Unit::from_gaussian(&gq).expect("quotient of associates is a unit");
        let (hc, u) = h
            .numerator_associate()
            .expect("numerator coprime to conjugate has odd norm");
        let unit = unit.times(u2).times(u.square());
        PlanarCoincidence::new(hc, unit, reflection)
    }

    pub fn identity() -> Self {
        PlanarCoincidence { numerator: GaussianInt::one(), unit: Unit::One, reflection: false }
    }

    /// The point-group rotation `R_{1,e}`.
    pub fn symmetry_rotation(unit: Unit) -> Self {
        PlanarCoincidence { numerator: GaussianInt::one(), unit, reflection: false }
    }

    /// The point-group reflection `T_{1,e}` (for `e = 1` the real-axis
    /// reflection `T_r`).
    pub fn symmetry_reflection(unit: Unit) -> Self {
        PlanarCoincidence { numerator: GaussianInt::one(), unit, reflection: true }
    }

    pub fn numerator(&self) -> &GaussianInt {
        &self.numerator
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn is_reflection(&self) -> bool {
        self.reflection
    }

    pub fn is_identity(&self) -> bool {
        !self.reflection && self.unit == Unit::One && self.numerator == GaussianInt::one()
    }

    /// Coincidence index `N(z)`.
    pub fn sigma(&self) -> BigInt {
        self.numerator.norm()
    }

    pub fn sigma_u64(&self) -> u64 {
        self.sigma().to_u64().expect("coincidence index fits u64")
    }

    /// `e*z - conj(z)` in closed form, split by the unit.
    pub fn unit_combination(&self) -> GaussianInt {
        ezmcz(self.unit, &self.numerator)
    }

    /// The rotation factor `e * z^2 / N(z)` as an exact complex rational,
    /// returned as the pair of matrix columns of the full isometry
    /// (conjugation applied first for reflections).
    pub fn matrix(&self) -> RatMat {
        let n = self.sigma();
        let z2 = self.unit.apply(&self.numerator.pow(2));
        let a = Rat::new(z2.re.clone(), n.clone());
        let b = Rat::new(z2.im.clone(), n);
        if self.reflection {
            RatMat::from_rows(vec![vec![a.clone(), b.clone()], vec![b, -a]]).unwrap()
        } else {
            RatMat::from_rows(vec![vec![a.clone(), -b.clone()], vec![b, a]]).unwrap()
        }
    }

    /// The coincidence site lattice `z Z[i]` as a rank-2 lattice.
    pub fn csl(&self) -> RationalLattice {
        let z = &self.numerator;
        let iz = z.mul_i();
        RationalLattice::from_generators(
            2,
            &[gaussian_to_vec(z), gaussian_to_vec(&iz)],
        )
        .expect("ideal basis is full rank")
    }

    /// The DSC lattice `(1/conj(z)) Z[i]`, which contains `Z^2` with index
    /// `N(z)`.
    pub fn dsc(&self) -> RationalLattice {
        let n = self.sigma();
        let z = &self.numerator;
        let col1 = vec![Rat::new(z.re.clone(), n.clone()), Rat::new(z.im.clone(), n.clone())];
        let iz = z.mul_i();
        let col2 = vec![Rat::new(iz.re.clone(), n.clone()), Rat::new(iz.im.clone(), n)];
        RationalLattice::from_generators(2, &[col1, col2]).expect("full rank")
    }

    /// `self ∘ other` (apply `other` first), renormalized to canonical form.
    pub fn compose(&self, other: &Self) -> Self {
        let (unit, w) = if self.reflection {
            (self.unit.times(other.unit.conj()), self.numerator.mul_ref(&other.numerator.conj()))
        } else {
            (self.unit.times(other.unit), self.numerator.mul_ref(&other.numerator))
        };
        let reflection = self.reflection != other.reflection;
        PlanarCoincidence::from_ratio(&w, unit, reflection)
            .expect("product of coincidence ratios reduces to canonical form")
    }

    pub fn inverse(&self) -> Self {
        if self.reflection {
            // reflections are involutions
            self.clone()
        } else {
            PlanarCoincidence::from_ratio(&self.numerator.conj(), self.unit.conj(), false)
                .expect("conjugate numerator stays canonicalizable")
        }
    }

    /// Deterministic sort key: (index, numerator, unit, reflection).
    pub fn sort_key(&self) -> (BigInt, BigInt, BigInt, u8, bool) {
        (
            self.sigma(),
            self.numerator.re.clone(),
            self.numerator.im.clone(),
            match self.unit {
                Unit::One => 0,
                Unit::I => 1,
                Unit::MinusOne => 2,
                Unit::MinusI => 3,
            },
            self.reflection,
        )
    }
}

impl fmt::Display for PlanarCoincidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.reflection { "T" } else { "R" };
        write!(f, "{kind}[{};{}]", self.numerator, self.unit)
    }
}

pub fn gaussian_to_vec(z: &GaussianInt) -> Vec<Rat> {
    vec![Rat::from_integer(z.re.clone()), Rat::from_integer(z.im.clone())]
}

/// `e*z - conj(z)` via the closed forms per unit.
pub fn ezmcz(unit: Unit, z: &GaussianInt) -> GaussianInt {
    match unit {
        Unit::One => GaussianInt::new(BigInt::zero(), BigInt::from(2) * &z.im),
        Unit::MinusOne => GaussianInt::new(BigInt::from(-2) * &z.re, BigInt::zero()),
        Unit::I => {
            let s = &z.re + &z.im;
            GaussianInt::new(-s.clone(), s)
        }
        Unit::MinusI => {
            let d = &z.re - &z.im;
            GaussianInt::new(-d.clone(), -d)
        }
    }
}

/// All canonical numerators with norm at most `max_norm`, generated from
/// split-prime powers (one member of each conjugate pair), sorted by
/// `(N(z), re, im)`.  Includes `z = 1`.
pub fn enumerate_numerators(max_norm: u64) -> Vec<GaussianInt> {
    let mut splits: Vec<(u64, GaussianInt)> = Vec::new();
    for p in arith::primes_up_to(max_norm) {
        if p % 4 == 1 {
            splits.push((p, gaussian::split_prime(&BigInt::from(p))));
        }
    }
    let mut out: Vec<GaussianInt> = Vec::new();
    let mut stack: Vec<(usize, u64, GaussianInt)> = vec![(0, 1, GaussianInt::one())];
    while let Some((idx, norm, z)) = stack.pop() {
        if idx == splits.len() {
            out.push(z);
            continue;
        }
        let (p, ref omega) = splits[idx];
        // skip this prime entirely
        stack.push((idx + 1, norm, z.clone()));
        for side in [omega.clone(), omega.conj()] {
            let mut n = norm;
            let mut acc = z.clone();
            loop {
                let Some(next) = n.checked_mul(p) else { break };
                if next > max_norm {
                    break;
                }
                n = next;
                acc = acc.mul_ref(&side);
                stack.push((idx + 1, n, acc.clone()));
            }
        }
    }
    let mut out: Vec<GaussianInt> = out
        .into_iter()
        .map(|z| z.numerator_associate().expect("odd-norm product").0)
        .collect();
    out.sort_by(|a, b| (a.norm(), &a.re, &a.im).cmp(&(b.norm(), &b.re, &b.im)));
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    out
}

/// All coincidence isometries with index at most `max_index`: every
/// canonical numerator combined with the four units, optionally including
/// reflections.  Deterministically ordered.
pub fn enumerate_coincidences(max_index: u64, include_reflections: bool) -> Vec<PlanarCoincidence> {
    let mut out = Vec::new();
    for z in enumerate_numerators(max_index) {
        for unit in Unit::ALL {
            out.push(PlanarCoincidence::new(z.clone(), unit, false).expect("canonical numerator"));
            if include_reflections {
                out.push(PlanarCoincidence::new(z.clone(), unit, true).expect("canonical numerator"));
            }
        }
    }
    out.sort_by_key(|c| c.sort_key());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::gi;
    use crate::lattice;
    use crate::mat::rat;

    #[test]
    fn numerators_small_norms() {
        assert_eq!(enumerate_numerators(4), vec![GaussianInt::one()]);
        assert_eq!(enumerate_numerators(5), vec![gi(1, 0), gi(1, -2), gi(1, 2)]);
        let count65 = enumerate_numerators(65)
            .iter()
            .filter(|z| z.norm() == BigInt::from(65))
            .count();
        assert_eq!(count65, 4);
    }

    #[test]
    fn numerators_are_valid_and_unique() {
        let zs = enumerate_numerators(200);
        for z in &zs {
            assert!(gaussian::is_odd_visible(z), "{z} not coprime to conjugate");
            assert_eq!(z.numerator_associate().unwrap().0, *z);
        }
        // Every prime factor of N(z) splits
        for z in &zs {
            for (p, _) in arith::factorize_bigint(&z.norm()) {
                assert_eq!(&p % BigInt::from(4), BigInt::from(1));
            }
        }
    }

    #[test]
    fn matrices_exact() {
        let quarter = PlanarCoincidence::symmetry_rotation(Unit::I).matrix();
        assert_eq!(quarter, RatMat::from_i64_rows(&[&[0, -1], &[1, 0]]));

        let c = PlanarCoincidence::new(gi(1, 2), Unit::One, false).unwrap();
        let m = c.matrix();
        assert_eq!(
            m,
            RatMat::from_rows(vec![
                vec![rat(-3, 5), rat(-4, 5)],
                vec![rat(4, 5), rat(-3, 5)],
            ])
            .unwrap()
        );
        assert!(m.is_orthogonal());

        let tr = PlanarCoincidence::symmetry_reflection(Unit::One).matrix();
        assert_eq!(tr, RatMat::from_i64_rows(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(PlanarCoincidence::identity().sigma_u64(), 1);
        let c = PlanarCoincidence::new(gi(1, 2), Unit::One, false).unwrap();
        assert_eq!(c.sigma_u64(), 5);
        let c = PlanarCoincidence::new(gi(3, 2), Unit::I, false).unwrap();
        assert_eq!(c.sigma_u64(), 13);
    }

    #[test]
    fn csl_and_dsc_bases() {
        let id = PlanarCoincidence::identity();
        assert_eq!(id.csl(), RationalLattice::standard(2));
        assert_eq!(id.dsc(), RationalLattice::standard(2));

        let c = PlanarCoincidence::new(gi(1, 2), Unit::One, false).unwrap();
        let z2 = RationalLattice::standard(2);
        assert_eq!(c.csl().index_in(&z2).unwrap(), BigInt::from(5));
        assert_eq!(z2.index_in(&c.dsc()).unwrap(), BigInt::from(5));

        // engine agreement
        let csl_engine = lattice::csl_lattice(&z2, &c.matrix()).unwrap();
        assert_eq!(c.csl(), csl_engine);
        let dsc_engine = lattice::dsc_lattice(&z2, &c.matrix()).unwrap();
        assert_eq!(c.dsc(), dsc_engine);
    }

    #[test]
    fn dsc_is_dual_of_dual_csl() {
        let z2 = RationalLattice::standard(2);
        for z in enumerate_numerators(50) {
            let c = PlanarCoincidence::new(z, Unit::One, false).unwrap();
            let dual_csl = lattice::csl_lattice(&z2.dual(), &c.matrix()).unwrap();
            assert_eq!(dual_csl.dual(), c.dsc());
        }
    }

    #[test]
    fn ezmcz_matches_direct_computation() {
        for re in -5i64..=5 {
            for im in -5i64..=5 {
                let z = gi(re, im);
                for unit in Unit::ALL {
                    let direct = unit.apply(&z) - z.conj();
                    assert_eq!(ezmcz(unit, &z), direct);
                }
            }
        }
    }

    #[test]
    fn composition_group_law() {
        let cs = enumerate_coincidences(25, true);
        // closure: composing coincidences yields valid coincidences with
        // multiplicative factor structure
        for a in &cs {
            for b in &cs {
                let p = a.compose(b);
                // matrix homomorphism check pins the reduction
                assert_eq!(p.matrix(), a.matrix().mul(&b.matrix()), "compose {a} {b}");
            }
        }
    }

    #[test]
    fn inverses() {
        for c in enumerate_coincidences(30, true) {
            let inv = c.inverse();
            assert!(c.compose(&inv).is_identity(), "{c}");
            assert!(inv.compose(&c).is_identity(), "{c}");
        }
    }

    #[test]
    fn validation_rejects_bad_numerators() {
        assert!(PlanarCoincidence::new(gi(2, 1), Unit::One, false).is_err()); // even re
        assert!(PlanarCoincidence::new(gi(-1, 2), Unit::One, false).is_err()); // negative re
        assert!(PlanarCoincidence::new(gi(1, 1), Unit::One, false).is_err()); // 1+i divides
        assert!(PlanarCoincidence::new(gi(3, 3), Unit::One, false).is_err()); // common factor
        assert!(PlanarCoincidence::new(gi(5, 0), Unit::One, false).is_err()); // rational prime
    }

    #[test]
    fn matrix_denominators_divide_sigma() {
        for c in enumerate_coincidences(100, true) {
            let m = c.matrix();
            let n = c.sigma();
            for i in 0..2 {
                for j in 0..2 {
                    let den = m.at(i, j).denom().clone();
                    assert!((&n % den).is_zero());
                }
            }
        }
    }
}
