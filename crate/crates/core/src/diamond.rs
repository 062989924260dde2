//! Coincidences of the diamond packing: the union of a face-centered cubic
//! lattice with its translate by half the cube diagonal.
//!
//! The f.c.c. lattice is realized as the integer points with even
//! coordinate sum and the shift is `(1/2, 1/2, 1/2)`.  Membership of a
//! rotation in the shifted-lattice coincidence set depends only on
//! `|q|^2 mod 4`; the full index and coset structure per isometry follows a
//! closed case table which is cross-checked against the generic
//! multilattice engine.

pub use crate::series::f_diamond;

use crate::error::{Error, Result};
use crate::lattice::{
    self, CosetLattice, CsmlDescription, Multilattice, RationalLattice, ShiftedLattice,
};
use crate::mat::{rat, Rat, RatMat};
use crate::par::{self, ExecMode};
use crate::quat::{self, Quaternion};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// The f.c.c. lattice of the diamond construction.
pub fn fcc_lattice() -> RationalLattice {
    crate::cubic::CubicLatticeKind::FaceCentered.lattice()
}

/// The half-diagonal shift between the two f.c.c. copies.
pub fn diamond_shift() -> Vec<Rat> {
    vec![rat(1, 2), rat(1, 2), rat(1, 2)]
}

/// The diamond packing as a two-point multilattice.
pub fn diamond_multilattice() -> Multilattice {
    Multilattice::new(fcc_lattice(), vec![vec![rat(0, 1); 3], diamond_shift()])
        .expect("valid construction")
}

/// `|q|^2 mod 4` classification of a primitive quaternion (8 never divides
/// the norm of a primitive quaternion).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NormClass {
    Odd,
    TwoMod4,
    ZeroMod4,
}

impl NormClass {
    pub fn of(q: &Quaternion) -> Self {
        match q.norm() % 4 {
            1 | 3 => NormClass::Odd,
            2 => NormClass::TwoMod4,
            _ => NormClass::ZeroMod4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            NormClass::Odd => "odd",
            NormClass::TwoMod4 => "2 mod 4",
            NormClass::ZeroMod4 => "0 mod 4",
        }
    }
}

/// A coincidence isometry of the diamond packing: `R_q` or the
/// rotoreflection `T_q = -R_q`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DiamondIsometry {
    q: Quaternion,
    improper: bool,
}

impl DiamondIsometry {
    pub fn new(q: Quaternion, improper: bool) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroQuaternion);
        }
        if !q.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        Ok(DiamondIsometry { q: q.canonical_sign(), improper })
    }

    pub fn quaternion(&self) -> &Quaternion {
        &self.q
    }

    pub fn is_improper(&self) -> bool {
        self.improper
    }

    pub fn matrix(&self) -> RatMat {
        let m = self.q.cayley_matrix().expect("validated primitive");
        if self.improper {
            m.neg()
        } else {
            m
        }
    }
}

/// Closed-form membership in `OC(x + fcc)`: rotations survive exactly when
/// `|q|^2` is not `2 mod 4`, rotoreflections exactly when it is.
pub fn shifted_fcc_member(q: &Quaternion, improper: bool) -> Result<bool> {
    if !q.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let two_mod_4 = NormClass::of(q) == NormClass::TwoMod4;
    Ok(if improper { two_mod_4 } else { !two_mod_4 })
}

/// Engine route for the same membership question, through the generic
/// shifted-lattice machinery; kept separate so the closed form has an
/// independent check.
pub fn shifted_fcc_member_engine(q: &Quaternion, improper: bool) -> Result<bool> {
    let iso = DiamondIsometry::new(*q, improper)?;
    let s = ShiftedLattice::new(fcc_lattice(), diamond_shift())?;
    Ok(lattice::shifted_coincidence(&s, &iso.matrix())?.is_some())
}

/// The result of intersecting the diamond packing with its image: exact
/// index, the coset union, and the norm class that selected the case.
#[derive(Clone, Debug)]
pub struct DiamondResult {
    pub index: Rat,
    pub cosets: CsmlDescription,
    pub norm_class: NormClass,
}

/// Exact index and coset structure of `D ∩ iso(D)` by the closed case
/// table; the second coset representative is solved through the engine
/// decomposition of `iso(x) - x` in `fcc + R fcc`.
pub fn diamond_coincidence(iso: &DiamondIsometry) -> Result<DiamondResult> {
    let fcc = fcc_lattice();
    let r = iso.matrix();
    let csl = lattice::csl_lattice(&fcc, &r)?;
    let sigma = csl.index_in(&fcc)?;
    let norm = BigInt::from(iso.q.norm());
    let class = NormClass::of(&iso.q);

    let (index, two_cosets): (Rat, bool) = if !iso.improper {
        match class {
            NormClass::TwoMod4 => (Rat::from_integer(norm), false),
            NormClass::Odd => (Rat::from_integer(norm), true),
            NormClass::ZeroMod4 => (Rat::new(norm, BigInt::from(4)), true),
        }
    } else {
        match class {
            NormClass::Odd => (Rat::from_integer(norm * BigInt::from(2)), false),
            NormClass::ZeroMod4 => (Rat::new(norm, BigInt::from(2)), false),
            NormClass::TwoMod4 => (Rat::new(norm, BigInt::from(2)), true),
        }
    };
    debug_assert_eq!(
        {
            let m = if two_cosets { 1 } else { 2 };
            Rat::from_integer(BigInt::from(m) * &sigma)
        },
        index.clone(),
        "index table must match m * sigma / |pairs|"
    );

    let mut cosets = vec![CosetLattice::new(vec![rat(0, 1); 3], csl.clone())];
    if two_cosets {
        let x = diamond_shift();
        let w = crate::mat::vec_sub(&r.mul_vec(&x), &x);
        let rfcc = fcc.transform(&r)?;
        let Some((lvec, _)) = lattice::decompose_in_sum(&w, &fcc, &rfcc)? else {
            return Err(Error::NotACoincidence);
        };
        cosets.push(CosetLattice::new(crate::mat::vec_add(&x, &lvec), csl));
    }
    Ok(DiamondResult {
        index: index.clone(),
        cosets: CsmlDescription { cosets, index },
        norm_class: class,
    })
}

/// Count distinct coincidence site multilattices of the diamond packing
/// per index by sweeping all isometries with `|q|^2 <= 4 * max_index`.
pub fn count_csmls(max_index: u64, mode: ExecMode) -> Vec<u64> {
    let quats = quat::enumerate_primitive((4 * max_index) as i64);
    let jobs: Vec<(Quaternion, bool)> = quats
        .into_iter()
        .flat_map(|q| [(q, false), (q, true)])
        .collect();
    let entries: Vec<Option<(u64, Vec<(Vec<Rat>, Vec<Rat>)>)>> = par::map_vec(mode, jobs, |(q, improper)| {
        let iso = DiamondIsometry::new(q, improper).expect("enumerated primitives");
        let res = diamond_coincidence(&iso).expect("valid isometry");
        if !res.index.is_integer() {
            return None;
        }
        let m: u64 = res.index.to_integer().try_into().ok()?;
        if m == 0 || m > max_index {
            return None;
        }
        let mut key: Vec<(Vec<Rat>, Vec<Rat>)> =
            res.cosets.cosets.iter().map(|c| c.key()).collect();
        key.sort();
        Some((m, key))
    });
    let mut seen: BTreeMap<u64, std::collections::BTreeSet<Vec<(Vec<Rat>, Vec<Rat>)>>> =
        BTreeMap::new();
    for (m, key) in entries.into_iter().flatten() {
        seen.entry(m).or_default().insert(key);
    }
    let mut counts = vec![0u64; max_index as usize + 1];
    for (m, set) in seen {
        counts[m as usize] = set.len() as u64;
    }
    counts
}
