//! Coincidence site lattices of the cubic lattices.
//!
//! The primitive, body-centered and face-centered lattices share the same
//! coincidence isometries and indices, so the quaternion parametrization of
//! `SO(3, Q)` drives everything.  For the b.c.c. lattice the CSL has an
//! explicit spanning set built from `Im q`, `Im(q i)`, `Im(q j)`, `Im(q k)`
//! split by `|q|^2 mod 4`; the other kinds go through the generic engine.

use crate::error::Result;
use crate::lattice::{self, RationalLattice};
use crate::mat::{rat, Rat};
use crate::par::{self, ExecMode};
use crate::quat::{self, Quaternion};
use num_bigint::BigInt;
use num_traits::Signed;
use std::collections::BTreeMap;

/// The three cubic Bravais lattices with fixed basis conventions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CubicLatticeKind {
    /// `Z^3`.
    Primitive,
    /// `Z^3` together with its half-diagonal translate; equals the
    /// imaginary Hurwitz quaternions.
    BodyCentered,
    /// Integer points with even coordinate sum (the dual of body-centered).
    FaceCentered,
}

impl CubicLatticeKind {
    pub fn lattice(self) -> RationalLattice {
        match self {
            CubicLatticeKind::Primitive => RationalLattice::standard(3),
            CubicLatticeKind::BodyCentered => RationalLattice::from_generators(
                3,
                &[
                    vec![rat(1, 1), rat(0, 1), rat(0, 1)],
                    vec![rat(0, 1), rat(1, 1), rat(0, 1)],
                    vec![rat(1, 2), rat(1, 2), rat(1, 2)],
                ],
            )
            .expect("full rank"),
            CubicLatticeKind::FaceCentered => RationalLattice::from_generators(
                3,
                &[
                    vec![rat(1, 1), rat(1, 1), rat(0, 1)],
                    vec![rat(0, 1), rat(1, 1), rat(1, 1)],
                    vec![rat(1, 1), rat(0, 1), rat(1, 1)],
                ],
            )
            .expect("full rank"),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CubicLatticeKind::Primitive => "primitive",
            CubicLatticeKind::BodyCentered => "body-centered",
            CubicLatticeKind::FaceCentered => "face-centered",
        }
    }
}

/// The four integer vectors `Im q`, `Im(q i)`, `Im(q j)`, `Im(q k)`.
pub fn spanset_vectors(q: &Quaternion) -> Result<[[i64; 3]; 4]> {
    if !q.is_primitive() {
        return Err(crate::error::Error::NotPrimitive);
    }
    let [q0, q1, q2, q3] = q.components().expect("primitive is Lipschitz");
    Ok([
        [q1, q2, q3],
        [q0, q3, -q2],
        [-q3, q0, q1],
        [q2, -q1, q0],
    ])
}

/// CSL of the body-centered lattice under `R_q`, from the span-set
/// generators split by `|q|^2 mod 4`, returned in canonical Hermite form.
pub fn csl_bcc_basis(q: &Quaternion) -> Result<RationalLattice> {
    let r = spanset_vectors(q)?;
    let rv = |v: [i64; 3]| -> Vec<Rat> { v.iter().map(|&x| rat(x, 1)).collect() };
    let half = |v: Vec<Rat>| -> Vec<Rat> { v.iter().map(|x| x / rat(2, 1)).collect() };
    let add = |a: [i64; 3], b: [i64; 3]| -> [i64; 3] { [a[0] + b[0], a[1] + b[1], a[2] + b[2]] };
    let gens: Vec<Vec<Rat>> = match q.norm() % 4 {
        1 | 3 => {
            let s = add(add(r[0], r[1]), add(r[2], r[3]));
            vec![rv(r[0]), rv(r[1]), rv(r[2]), rv(r[3]), half(rv(s))]
        }
        2 => vec![
            rv(r[0]),
            half(rv(add(r[0], r[1]))),
            half(rv(add(r[0], r[2]))),
            half(rv(add(r[0], r[3]))),
        ],
        _ => vec![half(rv(r[0])), half(rv(r[1])), half(rv(r[2])), half(rv(r[3]))],
    };
    RationalLattice::from_generators(3, &gens)
}

/// CSL of the chosen cubic lattice under `R_q` (or `T_q`; rotoreflections
/// give the same intersection), by the generic engine.
pub fn csl_cubic(kind: CubicLatticeKind, q: &Quaternion) -> Result<RationalLattice> {
    let r = q.cayley_matrix()?;
    lattice::csl_lattice(&kind.lattice(), &r)
}

/// DSC lattice of the chosen cubic lattice under `R_q`: the dual of the CSL
/// of the dual lattice.
pub fn dsc_cubic(kind: CubicLatticeKind, q: &Quaternion) -> Result<RationalLattice> {
    let r = q.cayley_matrix()?;
    let dual = kind.lattice().dual();
    Ok(lattice::csl_lattice(&dual, &r)?.dual())
}

/// Coincidence index of `R_q` on any cubic lattice: the odd part of the
/// quaternion norm.
pub fn sigma_cubic(q: &Quaternion) -> Result<u64> {
    q.coincidence_index()
}

/// Count distinct CSLs of `Z^3` per index `1..=max_index` by sweeping all
/// primitive quaternions with `|q|^2 <= 4 * max_index` and deduplicating
/// the intersections in Hermite form.
pub fn count_csls(max_index: u64, mode: ExecMode) -> Vec<u64> {
    let z3 = RationalLattice::standard(3);
    let quats = quat::enumerate_primitive((4 * max_index) as i64);
    let entries: Vec<Option<(u64, Vec<Rat>)>> = par::map_vec(mode, quats, |q| {
        let sigma = q.coincidence_index().expect("enumerated primitives");
        if sigma > max_index {
            return None;
        }
        let csl = lattice::csl_lattice(&z3, &q.cayley_matrix().expect("primitive")).expect("3d");
        Some((sigma, csl.basis().key()))
    });
    let mut seen: BTreeMap<u64, std::collections::BTreeSet<Vec<Rat>>> = BTreeMap::new();
    for e in entries.into_iter().flatten() {
        seen.entry(e.0).or_default().insert(e.1);
    }
    let mut counts = vec![0u64; max_index as usize + 1];
    for (sigma, set) in seen {
        counts[sigma as usize] = set.len() as u64;
    }
    counts
}

/// A representative quaternion (first in enumeration order) per distinct
/// CSL of `Z^3` with index at most `max_index`.
pub fn csl_representatives(max_index: u64, mode: ExecMode) -> Vec<(Quaternion, u64, RationalLattice)> {
    let z3 = RationalLattice::standard(3);
    let quats = quat::enumerate_primitive((4 * max_index) as i64);
    let entries: Vec<Option<(Quaternion, u64, RationalLattice)>> =
        par::map_vec(mode, quats, |q| {
            let sigma = q.coincidence_index().expect("enumerated primitives");
            if sigma > max_index {
                return None;
            }
            let csl =
                lattice::csl_lattice(&z3, &q.cayley_matrix().expect("primitive")).expect("3d");
            Some((q, sigma, csl))
        });
    let mut seen: std::collections::BTreeSet<Vec<Rat>> = Default::default();
    let mut out = Vec::new();
    for (q, sigma, csl) in entries.into_iter().flatten() {
        if seen.insert(csl.basis().key()) {
            out.push((q, sigma, csl));
        }
    }
    out.sort_by_key(|(q, sigma, csl)| (*sigma, csl.basis().key(), q.doubled()));
    out
}

/// Index of a sublattice in the body-centered lattice by determinant ratio.
pub fn index_in_bcc(sub: &RationalLattice) -> Result<BigInt> {
    sub.index_in(&CubicLatticeKind::BodyCentered.lattice())
}

/// Sanity helper: `|det|` ratio of two lattices as an exact rational.
pub fn det_ratio(sub: &RationalLattice, sup: &RationalLattice) -> Rat {
    let r = sub.covolume() / sup.covolume();
    if r.is_negative() {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    #[test]
    fn lattice_conventions() {
        let p = CubicLatticeKind::Primitive.lattice();
        let b = CubicLatticeKind::BodyCentered.lattice();
        let f = CubicLatticeKind::FaceCentered.lattice();
        assert_eq!(p.covolume(), rat(1, 1));
        assert_eq!(b.covolume(), rat(1, 2));
        assert_eq!(f.covolume(), rat(2, 1));
        // duality: F = B*, B = F*
        assert_eq!(b.dual(), f);
        assert_eq!(f.dual(), b);
        // B contains the half-diagonal
        assert!(b.member(&vec![rat(1, 2), rat(1, 2), rat(1, 2)]));
        assert!(f.member(&vec![rat(1, 1), rat(1, 1), rat(0, 1)]));
        assert!(!f.member(&vec![rat(1, 1), rat(0, 1), rat(0, 1)]));
    }

    #[test]
    fn spanset_examples() {
        assert_eq!(
            spanset_vectors(&q(1, 1, 1, 0)).unwrap(),
            [[1, 1, 0], [1, 0, -1], [0, 1, 1], [1, -1, 1]]
        );
        assert_eq!(
            spanset_vectors(&q(1, 0, 0, 0)).unwrap(),
            [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
        );
        assert_eq!(
            spanset_vectors(&q(0, 1, 1, 0)).unwrap(),
            [[1, 1, 0], [0, 0, -1], [0, 0, 1], [1, -1, 0]]
        );
        assert!(spanset_vectors(&q(2, 0, 0, 0)).is_err());
    }

    #[test]
    fn bcc_csl_examples() {
        let bcc = CubicLatticeKind::BodyCentered.lattice();

        // identity: whole lattice
        let l = csl_bcc_basis(&Quaternion::one()).unwrap();
        assert_eq!(l, bcc);

        // |q|^2 = 3: index 3, contains (3/2, 1/2, 1/2)
        let l = csl_bcc_basis(&q(1, 1, 1, 0)).unwrap();
        assert_eq!(l.index_in(&bcc).unwrap(), BigInt::from(3));
        assert!(l.member(&vec![rat(3, 2), rat(1, 2), rat(1, 2)]));

        // |q|^2 = 2: symmetry rotation, index 1
        let l = csl_bcc_basis(&q(1, 1, 0, 0)).unwrap();
        assert_eq!(l.index_in(&bcc).unwrap(), BigInt::from(1));
    }

    #[test]
    fn spanset_equals_engine_intersection() {
        let bcc = CubicLatticeKind::BodyCentered.lattice();
        for qq in quat::enumerate_primitive(40) {
            let closed = csl_bcc_basis(&qq).unwrap();
            let engine = lattice::csl_lattice(&bcc, &qq.cayley_matrix().unwrap()).unwrap();
            assert_eq!(closed, engine, "q={qq}");
            let sigma = qq.coincidence_index().unwrap();
            assert_eq!(closed.index_in(&bcc).unwrap(), BigInt::from(sigma), "q={qq}");
        }
    }

    #[test]
    fn indices_agree_across_kinds() {
        for qq in quat::enumerate_primitive(30) {
            let sigma = BigInt::from(qq.coincidence_index().unwrap());
            for kind in [
                CubicLatticeKind::Primitive,
                CubicLatticeKind::BodyCentered,
                CubicLatticeKind::FaceCentered,
            ] {
                let csl = csl_cubic(kind, &qq).unwrap();
                assert_eq!(csl.index_in(&kind.lattice()).unwrap(), sigma, "{kind:?} q={qq}");
                let dsc = dsc_cubic(kind, &qq).unwrap();
                assert_eq!(kind.lattice().index_in(&dsc).unwrap(), sigma, "{kind:?} q={qq}");
            }
        }
    }

    #[test]
    fn dsc_of_identity() {
        let l = dsc_cubic(CubicLatticeKind::Primitive, &Quaternion::one()).unwrap();
        assert_eq!(l, RationalLattice::standard(3));
    }

    #[test]
    fn rotoreflections_share_csls() {
        let z3 = RationalLattice::standard(3);
        for qq in quat::enumerate_primitive(20) {
            let r = qq.cayley_matrix().unwrap();
            let t = qq.rotoreflection_matrix().unwrap();
            assert_eq!(t.det(), rat(-1, 1));
            assert_eq!(
                lattice::csl_lattice(&z3, &r).unwrap(),
                lattice::csl_lattice(&z3, &t).unwrap()
            );
        }
    }

    #[test]
    fn csl_counts_match_multiplicative_rule() {
        let counts = count_csls(25, ExecMode::auto());
        for m in 1..=25u64 {
            assert_eq!(counts[m as usize], series::f_z3(m), "m={m}");
        }
    }

    #[test]
    fn all_indices_odd() {
        for qq in quat::enumerate_primitive(60) {
            assert_eq!(qq.coincidence_index().unwrap() % 2, 1);
        }
    }

    #[test]
    fn representatives_cover_counts() {
        let reps = csl_representatives(9, ExecMode::auto());
        let at = |m: u64| reps.iter().filter(|(_, s, _)| *s == m).count() as u64;
        assert_eq!(at(1), 1);
        assert_eq!(at(3), series::f_z3(3));
        assert_eq!(at(5), series::f_z3(5));
        assert_eq!(at(7), series::f_z3(7));
        assert_eq!(at(9), series::f_z3(9));
    }
}
