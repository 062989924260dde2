//! Coincidence isometries of shifted square lattices `x + Z[i]`.
//!
//! For rational shifts `x = p/q` (reduced) a rotation `R_{z,e}` survives the
//! shift exactly when `q` divides `e*z - conj(z)`, and a reflection
//! `T_{z,e}` exactly when `e*z*conj(x) - conj(z)*x` is integral.  Shifts
//! with an irrational component admit at most two coincidence isometries,
//! obtained symbolically; they are never represented in floating point.

use crate::arith;
use crate::error::{Error, Result};
use crate::gaussian::{
    self, euclid_divide, gi, GaussianInt, GaussianRational, Unit,
};
use crate::mat::Rat;
use crate::par::{self, ExecMode};
use crate::square::{ezmcz, PlanarCoincidence};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

// ---------------------------------------------------------------------------
// shift classes

/// A shift of the square lattice, exact: rational shifts carry the reduced
/// fraction, irrational shifts are represented symbolically by the rational
/// data that decides membership.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ShiftClass {
    /// `x in Q(i)`, reduced.
    Rational(GaussianRational),
    /// `x = a + b i` with `a` irrational, `b` rational.
    IrrationalRe { b: Rat },
    /// `x = a + b i` with `a` rational, `b` irrational.
    IrrationalIm { a: Rat },
    /// `1`, `a`, `b` rationally independent.
    Independent,
    /// both irrational with `a = p1/q1 + (p2/q2) b`, fractions reduced.
    Dependent { p1: i64, q1: i64, p2: i64, q2: i64 },
}

impl ShiftClass {
    pub fn rational(x: GaussianRational) -> Self {
        ShiftClass::Rational(x)
    }

    /// Normalizing constructor for the dependent class: reduces both
    /// fractions and makes the denominators positive.
    pub fn dependent(p1: i64, q1: i64, p2: i64, q2: i64) -> Result<Self> {
        if q1 == 0 || q2 == 0 {
            return Err(Error::invalid("zero denominator in dependent shift"));
        }
        let norm = |p: i64, q: i64| -> (i64, i64) {
            let g = arith::gcd_i64(p, q).max(1);
            let (mut p, mut q) = (p / g, q / g);
            if q < 0 {
                p = -p;
                q = -q;
            }
            (p, q)
        };
        let (p1, q1) = norm(p1, q1);
        let (p2, q2) = norm(p2, q2);
        Ok(ShiftClass::Dependent { p1, q1, p2, q2 })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ShiftClass::Rational(_))
    }
}

/// Structure of `OC(x + L)` as far as it can be stated in closed form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ShiftedOcKind {
    /// Only the identity.
    Trivial,
    /// The two-element group generated by one coincidence reflection.
    SingleReflection(PlanarCoincidence),
    /// Rational shift: membership decided pointwise by [`is_member`].
    Membership(GaussianRational),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftedOcDescription {
    pub kind: ShiftedOcKind,
    /// `Some(true)` when the set provably forms a group, `None` if unknown
    /// at this level (bounded closure checks may still decide it).
    pub is_group: Option<bool>,
}

// ---------------------------------------------------------------------------
// membership

fn is_member_rational(c: &PlanarCoincidence, x: &GaussianRational) -> bool {
    let z = c.numerator();
    if c.is_reflection() {
        // e*z*conj(x) - conj(z)*x integral
        let t = x
            .conj()
            .mul_int(z)
            .mul_unit(c.unit())
            .sub(&x.mul_int(&z.conj()));
        t.is_integral()
    } else {
        let d = ezmcz(c.unit(), z);
        x.mul_int(&d).is_integral()
    }
}

/// Exact membership of a coincidence isometry in `OC(x + L)`.
pub fn is_member(c: &PlanarCoincidence, x: &ShiftClass) -> bool {
    match x {
        ShiftClass::Rational(x) => is_member_rational(c, x),
        _ => {
            if c.is_identity() {
                return true;
            }
            match classify_irrational(x) {
                Ok(d) => match d.kind {
                    ShiftedOcKind::SingleReflection(t) => *c == t,
                    _ => false,
                },
                Err(_) => false,
            }
        }
    }
}

/// The closed-form description of `OC(x + L)` for a shift with an
/// irrational component: the trivial group or one reflection generator.
pub fn classify_irrational(x: &ShiftClass) -> Result<ShiftedOcDescription> {
    let single = |c: PlanarCoincidence| ShiftedOcDescription {
        kind: ShiftedOcKind::SingleReflection(c),
        is_group: Some(true),
    };
    let trivial = ShiftedOcDescription { kind: ShiftedOcKind::Trivial, is_group: Some(true) };
    match x {
        ShiftClass::Rational(_) => Err(Error::invalid(
            "classify_irrational applies to irrational shift classes only",
        )),
        ShiftClass::IrrationalRe { b } => {
            if (b * Rat::from_integer(BigInt::from(2))).is_integer() {
                Ok(single(PlanarCoincidence::symmetry_reflection(Unit::One)))
            } else {
                Ok(trivial)
            }
        }
        ShiftClass::IrrationalIm { a } => {
            if (a * Rat::from_integer(BigInt::from(2))).is_integer() {
                Ok(single(PlanarCoincidence::symmetry_reflection(Unit::MinusOne)))
            } else {
                Ok(trivial)
            }
        }
        ShiftClass::Independent => Ok(trivial),
        ShiftClass::Dependent { p1: _, q1, p2, q2 } => {
            if (p2 * q2) % 2 == 0 {
                if (2 * q2) % q1 == 0 {
                    let gen = PlanarCoincidence::from_ratio(&gi(*p2, *q2), Unit::One, true)?;
                    Ok(single(gen))
                } else {
                    Ok(trivial)
                }
            } else if q2 % q1 == 0 {
                let z = gi((p2 + q2) / 2, -(p2 - q2) / 2);
                let gen = PlanarCoincidence::from_ratio(&z, Unit::I, true)?;
                Ok(single(gen))
            } else {
                Ok(trivial)
            }
        }
    }
}

/// The unit `e` for which the point-group reflection `T_{1,e}` fixes
/// `x + L`, when one exists.  Conditions are scanned in the fixed order
/// `1, -1, i, -i`.
pub fn reflection_symmetry_generator(x: &GaussianRational) -> Option<Unit> {
    let two = Rat::from_integer(BigInt::from(2));
    let re = x.re();
    let im = x.im();
    if (&im * &two).is_integer() {
        return Some(Unit::One);
    }
    if (&re * &two).is_integer() {
        return Some(Unit::MinusOne);
    }
    if (&re - &im).is_integer() {
        return Some(Unit::I);
    }
    if (&re + &im).is_integer() {
        return Some(Unit::MinusI);
    }
    None
}

/// Divisibility route for rotations and shifts `1/q`: membership in
/// `SOC(1/q + L)` is `q | (e*z - conj(z))`.
pub fn soc_membership_rational(c: &PlanarCoincidence, q: &GaussianInt) -> Result<bool> {
    if c.is_reflection() {
        return Err(Error::invalid("soc membership applies to rotations"));
    }
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(q.divides(&ezmcz(c.unit(), c.numerator())))
}

/// Remainder route for odd rational `q > 1`: with `z = k q + r` and
/// `N(r) < N(q)/2`, membership is `conj(r) = e r`.
pub fn soc_membership_euclid(c: &PlanarCoincidence, q: &GaussianInt) -> Result<bool> {
    if c.is_reflection() {
        return Err(Error::invalid("soc membership applies to rotations"));
    }
    if !q.im.is_zero() || q.re <= BigInt::one() || q.re.is_even() {
        return Err(Error::invalid("euclidean route requires an odd rational q > 1"));
    }
    let (_, r) = euclid_divide(c.numerator(), q)?;
    Ok(r.conj() == c.unit().apply(&r))
}

// ---------------------------------------------------------------------------
// enumeration of members and their cosets

/// A member of `OC(x + L)` with the representative of its coset
/// `(x + l) + z Z[i]`, reduced into the fundamental cell of the CSL.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftedMember {
    pub coincidence: PlanarCoincidence,
    pub coset_rep: GaussianRational,
}

/// Apply a coincidence isometry to a point of `Q(i)`.
pub fn apply(c: &PlanarCoincidence, x: &GaussianRational) -> GaussianRational {
    let base = if c.is_reflection() { x.conj() } else { x.clone() };
    let z = c.numerator();
    GaussianRational::new(c.unit().apply(&base.num().mul_ref(z)), base.den().mul_ref(&z.conj()))
        .expect("nonzero denominator")
}

/// Reduce a point modulo the ideal `z Z[i]` into the fundamental cell
/// spanned by `z` and `iz`.
pub fn reduce_mod_ideal(v: &GaussianRational, z: &GaussianInt) -> GaussianRational {
    let q = v
        .div(&GaussianRational::from_int(z.clone()))
        .expect("nonzero ideal generator");
    let frac = |r: Rat| -> Rat { &r - r.floor() };
    let w = GaussianRational::from_components(frac(q.re()), frac(q.im()));
    w.mul_int(z)
}

/// The canonical representative of the coset `(x+L) ∩ c(x+L)` for a member
/// `c` of `OC(x + L)`.
pub fn coset_representative(x: &GaussianRational, c: &PlanarCoincidence) -> GaussianRational {
    let z = c.numerator();
    let w = apply(c, x).sub(x);
    // w lies in (1/conj(z)) Z[i]; pull back to the integers
    let g = w
        .mul_int(&z.conj())
        .to_integer()
        .expect("member displacement lies in the DSC lattice");
    // solve l * conj(z) = g (mod z)
    let l = if z.is_unit() {
        GaussianInt::zero()
    } else {
        let inv = gaussian::inverse_mod(&z.conj(), z).expect("z coprime to its conjugate");
        let (_, l) = euclid_divide(&g.mul_ref(&inv), z).expect("nonzero modulus");
        l
    };
    debug_assert!(
        w.sub(&GaussianRational::from_int(l.clone()))
            .mul_int(&z.conj())
            .div(&GaussianRational::from_int(z.clone()))
            .map(|t| t.is_integral())
            .unwrap_or(false),
        "coset solve: w - l must lie in R applied to the lattice"
    );
    reduce_mod_ideal(&x.add(&GaussianRational::from_int(l)), z)
}

/// All members of `OC(x + L)` with index at most `max_index`, each paired
/// with its canonical coset representative.  Deterministically ordered.
pub fn enumerate_shifted(
    x: &GaussianRational,
    max_index: u64,
    mode: ExecMode,
) -> Vec<ShiftedMember> {
    let all = crate::square::enumerate_coincidences(max_index, true);
    let hits = par::map_vec(mode, all, |c| {
        if is_member_rational(&c, x) {
            let rep = coset_representative(x, &c);
            Some(ShiftedMember { coincidence: c, coset_rep: rep })
        } else {
            None
        }
    });
    hits.into_iter().flatten().collect()
}

/// Deduplicated CSLs among the members: coset equality is lattice equality
/// (same canonical numerator) plus representative equality after reduction.
pub fn distinct_csls(members: &[ShiftedMember]) -> Vec<(GaussianInt, GaussianRational)> {
    let mut set: BTreeSet<(GaussianInt, GaussianRational)> = BTreeSet::new();
    for m in members {
        set.insert((m.coincidence.numerator().clone(), m.coset_rep.clone()));
    }
    set.into_iter().collect()
}

// ---------------------------------------------------------------------------
// bounded closure check

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureOutcome {
    /// Closed under composition for all pairs with indices up to the bound.
    Closed { bound: u64 },
    /// A concrete pair whose product leaves the set.
    Counterexample {
        first: PlanarCoincidence,
        second: PlanarCoincidence,
        product: PlanarCoincidence,
    },
}

/// Compose all pairs of members with indices at most `max_index` and report
/// the first product that fails membership.  A `Closed` answer is a
/// statement about the tested range only.
pub fn group_closure_check(x: &GaussianRational, max_index: u64) -> ClosureOutcome {
    let members: Vec<PlanarCoincidence> =
        enumerate_shifted(x, max_index, ExecMode::Sequential)
            .into_iter()
            .map(|m| m.coincidence)
            .collect();
    for first in &members {
        for second in &members {
            let product = second.compose(first);
            if !is_member_rational(&product, x) {
                return ClosureOutcome::Counterexample {
                    first: first.clone(),
                    second: second.clone(),
                    product,
                };
            }
        }
    }
    ClosureOutcome::Closed { bound: max_index }
}

// ---------------------------------------------------------------------------
// visible-point grid counting (odd rational q)

/// Count CSLs of `1/q + L` per index through the visible-point picture:
/// one quarter of the odd-visible points on the grid of lines `t`, `it`,
/// `(1+i)t`, `(1-i)t` modulo `q`.
pub fn grid_csl_count(q: u64, max_index: u64) -> Result<Vec<u64>> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::invalid("grid counting requires an odd rational q > 1"));
    }
    let mut counts = vec![0u64; max_index as usize + 1];
    let bound = (max_index as f64).sqrt() as i64 + 1;
    let qi = q as i64;
    for a in -bound..=bound {
        for b in -bound..=bound {
            let n = (a * a + b * b) as u64;
            if n == 0 || n > max_index {
                continue;
            }
            let am = a.rem_euclid(qi);
            let bm = b.rem_euclid(qi);
            let on_grid = bm == 0 || am == 0 || am == bm || (am + bm) % qi == 0;
            if !on_grid {
                continue;
            }
            if !gaussian::is_odd_visible(&gi(a, b)) {
                continue;
            }
            counts[n as usize] += 1;
        }
    }
    for c in counts.iter_mut() {
        debug_assert!(*c % 4 == 0, "grid points come in quartets under i-rotation");
        *c /= 4;
    }
    Ok(counts)
}

// ---------------------------------------------------------------------------

/// Description of `OC(x + L)` for a rational shift: membership is decided
/// pointwise; group structure is settled when a reflection symmetry exists
/// or when no prime factor of `N(q)` splits.
pub fn classify_rational(x: &GaussianRational) -> ShiftedOcDescription {
    let is_group = if reflection_symmetry_generator(x).is_some() {
        Some(true)
    } else {
        let nq = x.den().norm();
        let split_free = arith::factorize_bigint(&nq)
            .iter()
            .all(|(p, _)| (p % BigInt::from(4u32)) != BigInt::from(1u32));
        if split_free {
            Some(true)
        } else {
            None
        }
    };
    ShiftedOcDescription { kind: ShiftedOcKind::Membership(x.clone()), is_group }
}
