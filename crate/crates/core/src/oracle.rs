//! Independent verification layer: exact Hermite/Smith lattice algebra and
//! geometric point-set enumeration.
//!
//! [`coset_intersect`] solves the linear Diophantine system
//! `x1 + B1 a = x2 + B2 b` directly, so it shares no code path with the
//! duality-based intersection of the engine or with any closed form; every
//! CSL, ACSL and CSML produced elsewhere can be replayed against it.  Box
//! counting uses windows that are whole periods of the coarse lattice, so
//! the empirical index is an exact equality check rather than an estimate.

pub use crate::mat::{hnf, hnf_with_transform, snf_with_transforms, solve_diophantine};

use crate::error::{Error, Result};
use crate::lattice::{CosetLattice, Multilattice, RationalLattice, ShiftedLattice};
use crate::mat::{self, Rat, RatMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// Diagonal of the Smith normal form of `sub` relative to `sup`: the cyclic
/// structure of `sup / sub`.
pub fn snf_diagonal(sub: &RationalLattice, sup: &RationalLattice) -> Result<Vec<BigInt>> {
    let rel = sub.relative_matrix(sup)?;
    let (d, _, _) = snf_with_transforms(&rel);
    Ok((0..rel.rows()).map(|i| d.at(i, i).clone()).collect())
}

/// Index `[sup : sub]` as the product of the Smith diagonal; an independent
/// route to the determinant-ratio index.
pub fn index_by_snf(sub: &RationalLattice, sup: &RationalLattice) -> Result<BigInt> {
    Ok(snf_diagonal(sub, sup)?.into_iter().product())
}

/// Intersection of two shifted lattices by solving `x1 + B1 a = x2 + B2 b`
/// over the integers: the empty set or an exact coset, never a partial
/// answer.
pub fn coset_intersect(
    c1: &ShiftedLattice,
    c2: &ShiftedLattice,
) -> Result<Option<CosetLattice>> {
    let d = c1.lattice().dim();
    if c2.lattice().dim() != d {
        return Err(Error::DimensionMismatch(d, c2.lattice().dim()));
    }
    let b1 = c1.lattice().basis();
    let b2 = c2.lattice().basis();
    let stacked = b1.hcat(&b2.neg());
    let diff = mat::vec_sub(c2.shift(), c1.shift());
    // common scale for the matrix and the right-hand side
    let mut scale = BigInt::one();
    for j in 0..stacked.cols() {
        for x in stacked.col(j) {
            scale = scale.lcm(x.denom());
        }
    }
    for x in &diff {
        scale = scale.lcm(x.denom());
    }
    let sf = mat::rat_from_big(scale.clone());
    let (a_int, rem) = stacked.scale(&sf).clear_denominators();
    debug_assert!(rem.is_one());
    let rhs: Vec<BigInt> = diff.iter().map(|x| (x * &sf).to_integer()).collect();
    let Some((part, kernel)) = solve_diophantine(&a_int, &rhs) else {
        return Ok(None);
    };
    debug_assert_eq!(kernel.len(), d, "full-rank pair has d-dimensional kernel");
    let gens: Vec<Vec<Rat>> = kernel
        .iter()
        .map(|k| {
            let a: Vec<Rat> = k[..d].iter().map(|x| mat::rat_from_big(x.clone())).collect();
            b1.mul_vec(&a)
        })
        .collect();
    let lat = RationalLattice::from_generators(d, &gens)?;
    let a: Vec<Rat> = part[..d].iter().map(|x| mat::rat_from_big(x.clone())).collect();
    let point = mat::vec_add(c1.shift(), &b1.mul_vec(&a));
    Ok(Some(CosetLattice::new(point, lat)))
}

// ---------------------------------------------------------------------------
// point enumeration

/// A half-open axis-aligned box `[lo, hi)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Window {
    lo: Vec<Rat>,
    hi: Vec<Rat>,
}

impl Window {
    pub fn new(lo: Vec<Rat>, hi: Vec<Rat>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::DegenerateWindow);
        }
        if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Err(Error::DegenerateWindow);
        }
        Ok(Window { lo, hi })
    }

    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![mat::rat_int(lo); dim], vec![mat::rat_int(hi); dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }
}

/// Finite, deduplicated point set inside a window.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub points: Vec<Vec<Rat>>,
    pub window: Window,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn enumerate_into(
    lattice: &RationalLattice,
    shift: &[Rat],
    w: &Window,
    out: &mut BTreeSet<Vec<Rat>>,
) {
    // The HNF basis is lower triangular, so coordinate i depends only on
    // the first i+1 integer coefficients: enumerate digit by digit.
    let d = lattice.dim();
    let b = lattice.basis();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); d];
    fn rec(
        b: &RatMat,
        shift: &[Rat],
        w: &Window,
        depth: usize,
        coeffs: &mut Vec<BigInt>,
        out: &mut BTreeSet<Vec<Rat>>,
    ) {
        let d = b.rows();
        let mut partial = shift[depth].clone();
        for j in 0..depth {
            partial += b.at(depth, j) * mat::rat_from_big(coeffs[j].clone());
        }
        let diag = b.at(depth, depth);
        let lo = mat::rat_ceil_int(&((&w.lo[depth] - &partial) / diag));
        let hi_twice = (&w.hi[depth] - &partial) / diag;
        let hi = mat::rat_ceil_int(&hi_twice) - BigInt::one();
        let mut m = lo;
        while m <= hi {
            coeffs[depth] = m.clone();
            if depth + 1 == d {
                let cs: Vec<Rat> =
                    coeffs.iter().map(|c| mat::rat_from_big(c.clone())).collect();
                let p = mat::vec_add(shift, &b.mul_vec(&cs));
                out.insert(p);
            } else {
                rec(b, shift, w, depth + 1, coeffs, out);
            }
            m += BigInt::one();
        }
    }
    rec(b, shift, w, 0, &mut coeffs, out);
}

pub fn enumerate_points_shifted(s: &ShiftedLattice, w: &Window) -> Result<PointSet> {
    if w.dim() != s.lattice().dim() {
        return Err(Error::DimensionMismatch(w.dim(), s.lattice().dim()));
    }
    let mut out = BTreeSet::new();
    enumerate_into(s.lattice(), s.shift(), w, &mut out);
    Ok(PointSet { points: out.into_iter().collect(), window: w.clone() })
}

pub fn enumerate_points_multilattice(m: &Multilattice, w: &Window) -> Result<PointSet> {
    if w.dim() != m.lattice().dim() {
        return Err(Error::DimensionMismatch(w.dim(), m.lattice().dim()));
    }
    let mut out = BTreeSet::new();
    for shift in m.shifts() {
        enumerate_into(m.lattice(), shift, w, &mut out);
    }
    Ok(PointSet { points: out.into_iter().collect(), window: w.clone() })
}

/// `|A| / |A ∩ B|` as an exact rational; on windows that are whole periods
/// of all the sets involved this equals the coincidence index exactly.
pub fn empirical_index(a: &PointSet, b: &PointSet) -> Result<Rat> {
    let bset: BTreeSet<&Vec<Rat>> = b.points.iter().collect();
    let common = a.points.iter().filter(|p| bset.contains(p)).count();
    if common == 0 {
        return Err(Error::invalid("empty intersection in the window"));
    }
    Ok(Rat::new(BigInt::from(a.len()), BigInt::from(common)))
}

// ---------------------------------------------------------------------------
// verification suites

pub mod verify {
    use super::*;
    use crate::gaussian::{parse_gaussian_rational, GaussianRational};
    use crate::lattice::{self, AffineIsometry};
    use crate::par::ExecMode;
    use crate::quat::{self, Quaternion};
    use crate::shifted::{self, ShiftedMember};
    use crate::square::{self, PlanarCoincidence};
    use crate::{cubic, diamond};
    use serde_json::{json, Value};

    #[derive(Clone, Debug)]
    pub struct Check {
        pub name: String,
        pub pass: bool,
        pub detail: String,
    }

    #[derive(Clone, Debug)]
    pub struct Report {
        pub suite: String,
        pub bound: u64,
        pub checks: Vec<Check>,
    }

    impl Report {
        pub fn passed(&self) -> bool {
            self.checks.iter().all(|c| c.pass)
        }

        pub fn to_json(&self) -> Value {
            json!({
                "suite": self.suite,
                "bound": self.bound,
                "passed": self.passed(),
                "checks": self.checks.iter().map(|c| json!({
                    "name": c.name,
                    "pass": c.pass,
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            })
        }
    }

    fn check(name: &str, total: usize, failures: Vec<String>) -> Check {
        let pass = failures.is_empty();
        let detail = if pass {
            format!("{total} cases")
        } else {
            format!("{} of {total} cases failed; first: {}", failures.len(), failures[0])
        };
        Check { name: name.to_string(), pass, detail }
    }

    /// The shifts exercised by the shifted suite.
    pub fn standard_shifts() -> Vec<GaussianRational> {
        ["(1+1i)/2", "1/2", "(1+1i)/3", "(2+1i)/4", "1/5", "2/5", "(2+1i)/5", "(2+1i)/6"]
            .iter()
            .map(|s| parse_gaussian_rational(s).expect("valid literal"))
            .collect()
    }

    /// Square-lattice identities: closed-form CSL/DSC bases against the
    /// engine and the Diophantine oracle, and both index routes.
    pub fn suite_square(bound: u64, mode: ExecMode) -> Report {
        let z2 = RationalLattice::standard(2);
        let all = square::enumerate_coincidences(bound, true);
        let rows: Vec<Vec<String>> = crate::par::map_vec(mode, all, |c| {
            let mut fails = Vec::new();
            let m = c.matrix();
            if !m.is_orthogonal() {
                fails.push(format!("matrix not orthogonal for {c}"));
            }
            let csl = c.csl();
            let engine = lattice::csl_lattice(&z2, &m).expect("2d");
            if csl != engine {
                fails.push(format!("csl mismatch (engine) for {c}"));
            }
            let zero = ShiftedLattice::new(z2.clone(), mat::vec_zero(2)).expect("shift");
            let rot = ShiftedLattice::new(z2.transform(&m).expect("2d"), mat::vec_zero(2))
                .expect("shift");
            match coset_intersect(&zero, &rot) {
                Ok(Some(coset)) => {
                    if coset.sublattice() != &csl || !mat::vec_is_zero(coset.rep()) {
                        fails.push(format!("csl mismatch (oracle) for {c}"));
                    }
                }
                _ => fails.push(format!("oracle found no intersection for {c}")),
            }
            let sigma = BigInt::from(c.sigma_u64());
            if csl.index_in(&z2).ok() != Some(sigma.clone()) {
                fails.push(format!("determinant index mismatch for {c}"));
            }
            if index_by_snf(&csl, &z2).ok() != Some(sigma) {
                fails.push(format!("smith index mismatch for {c}"));
            }
            let dsc = c.dsc();
            if lattice::dsc_lattice(&z2, &m).expect("2d") != dsc {
                fails.push(format!("dsc mismatch (sum) for {c}"));
            }
            let dual_route = lattice::csl_lattice(&z2.dual(), &m).expect("2d").dual();
            if dual_route != dsc {
                fails.push(format!("dsc mismatch (duality) for {c}"));
            }
            fails
        });
        let total = rows.len();
        let failures: Vec<String> = rows.into_iter().flatten().collect();
        Report {
            suite: "square".into(),
            bound,
            checks: vec![check(
                "csl/dsc bases, oracle intersection and both index routes",
                total,
                failures,
            )],
        }
    }

    /// Shifted-square identities: member cosets against the oracle, empty
    /// intersections for non-members, engine agreement, inverse closure and
    /// coprime-index products.
    pub fn suite_shifted(bound: u64, mode: ExecMode) -> Report {
        let z2 = RationalLattice::standard(2);
        let mut checks = Vec::new();
        for x in standard_shifts() {
            let xv = x.to_vec();
            let sc = shifted::ShiftClass::rational(x.clone());
            let all = square::enumerate_coincidences(bound, true);
            let rows: Vec<Vec<String>> = crate::par::map_vec(mode, all, |c| {
                let mut fails = Vec::new();
                let m = c.matrix();
                let member = shifted::is_member(&c, &sc);
                let left = ShiftedLattice::new(z2.clone(), xv.clone()).expect("shift");
                let right = ShiftedLattice::new(
                    z2.transform(&m).expect("2d"),
                    m.mul_vec(&xv),
                )
                .expect("shift");
                let oracle = coset_intersect(&left, &right).expect("solver");
                if member {
                    let rep = shifted::coset_representative(&x, &c);
                    let expected = CosetLattice::new(rep.to_vec(), c.csl());
                    if oracle.as_ref() != Some(&expected) {
                        fails.push(format!("oracle coset mismatch for {c} at x={x}"));
                    }
                } else if oracle.is_some() {
                    fails.push(format!("oracle found coset for non-member {c} at x={x}"));
                }
                // engine agreement
                let s = ShiftedLattice::new(z2.clone(), xv.clone()).expect("shift");
                let engine = lattice::shifted_coincidence(&s, &m).expect("engine");
                if engine.is_some() != member {
                    fails.push(format!("engine membership mismatch for {c} at x={x}"));
                } else if let Some(coset) = engine {
                    let rep = shifted::coset_representative(&x, &c);
                    if coset != CosetLattice::new(rep.to_vec(), c.csl()) {
                        fails.push(format!("engine coset mismatch for {c} at x={x}"));
                    }
                }
                // inverse closure
                if member && !shifted::is_member(&c.inverse(), &sc) {
                    fails.push(format!("inverse of member {c} leaves the set at x={x}"));
                }
                fails
            });
            let total = rows.len();
            let failures: Vec<String> = rows.into_iter().flatten().collect();
            checks.push(check(
                &format!("oracle/engine/inverse agreement at x = {x}"),
                total,
                failures,
            ));

            // coprime-index products
            let members: Vec<PlanarCoincidence> =
                shifted::enumerate_shifted(&x, bound.min(100), ExecMode::Sequential)
                    .into_iter()
                    .map(|m: ShiftedMember| m.coincidence)
                    .collect();
            let mut fails = Vec::new();
            let mut pairs = 0usize;
            for a in &members {
                for b in &members {
                    let (sa, sb) = (a.sigma_u64(), b.sigma_u64());
                    if crate::arith::gcd_u64(sa, sb) == 1 {
                        pairs += 1;
                        let p = b.compose(a);
                        if !shifted::is_member(&p, &sc) {
                            fails.push(format!("coprime product {a} then {b} at x={x}"));
                        }
                    }
                }
            }
            checks.push(check(&format!("coprime-index products at x = {x}"), pairs, fails));
        }
        Report { suite: "shifted".into(), bound, checks }
    }

    /// Cubic identities: span-set basis against engine and oracle, index
    /// routes, equality across the three kinds, duality of the DSC, and
    /// rotoreflection invariance.
    pub fn suite_cubic(bound: u64, mode: ExecMode) -> Report {
        let bcc = cubic::CubicLatticeKind::BodyCentered.lattice();
        let quats = quat::enumerate_primitive(bound as i64);
        let rows: Vec<Vec<String>> = crate::par::map_vec(mode, quats, |q| {
            let mut fails = Vec::new();
            let r = q.cayley_matrix().expect("primitive");
            let closed = cubic::csl_bcc_basis(&q).expect("primitive");
            let engine = lattice::csl_lattice(&bcc, &r).expect("3d");
            if closed != engine {
                fails.push(format!("span-set basis mismatch (engine) for q={q}"));
            }
            let zero = ShiftedLattice::new(bcc.clone(), mat::vec_zero(3)).expect("shift");
            let rot = ShiftedLattice::new(bcc.transform(&r).expect("3d"), mat::vec_zero(3))
                .expect("shift");
            match coset_intersect(&zero, &rot) {
                Ok(Some(coset)) => {
                    if coset.sublattice() != &closed {
                        fails.push(format!("span-set basis mismatch (oracle) for q={q}"));
                    }
                }
                _ => fails.push(format!("oracle found no intersection for q={q}")),
            }
            let sigma = BigInt::from(q.coincidence_index().expect("primitive"));
            if closed.index_in(&bcc).ok() != Some(sigma.clone()) {
                fails.push(format!("determinant index mismatch for q={q}"));
            }
            if index_by_snf(&closed, &bcc).ok() != Some(sigma.clone()) {
                fails.push(format!("smith index mismatch for q={q}"));
            }
            for kind in [
                cubic::CubicLatticeKind::Primitive,
                cubic::CubicLatticeKind::FaceCentered,
            ] {
                let l = kind.lattice();
                let csl = cubic::csl_cubic(kind, &q).expect("primitive");
                if csl.index_in(&l).ok() != Some(sigma.clone()) {
                    fails.push(format!("{} index mismatch for q={q}", kind.label()));
                }
                let dsc = cubic::dsc_cubic(kind, &q).expect("primitive");
                if lattice::dsc_lattice(&l, &r).expect("3d") != dsc {
                    fails.push(format!("{} dsc duality mismatch for q={q}", kind.label()));
                }
            }
            let t = q.rotoreflection_matrix().expect("primitive");
            let z3 = cubic::CubicLatticeKind::Primitive.lattice();
            if lattice::csl_lattice(&z3, &t).expect("3d")
                != lattice::csl_lattice(&z3, &r).expect("3d")
            {
                fails.push(format!("rotoreflection csl mismatch for q={q}"));
            }
            fails
        });
        let total = rows.len();
        let failures: Vec<String> = rows.into_iter().flatten().collect();
        Report {
            suite: "cubic".into(),
            bound,
            checks: vec![check(
                "span-set bases, oracle intersections, index routes and duality",
                total,
                failures,
            )],
        }
    }

    /// Diamond identities: the closed case table against the multilattice
    /// engine and the pairwise oracle, the excluded translations, and exact
    /// box counting on periodic windows.
    pub fn suite_diamond(bound: u64, mode: ExecMode) -> Report {
        let ml = diamond::diamond_multilattice();
        let fcc = diamond::fcc_lattice();
        let x = diamond::diamond_shift();
        let quats = quat::enumerate_primitive(bound as i64);
        let jobs: Vec<(Quaternion, bool)> =
            quats.into_iter().flat_map(|q| [(q, false), (q, true)]).collect();
        let rows: Vec<Vec<String>> = crate::par::map_vec(mode, jobs, |(q, improper)| {
            let mut fails = Vec::new();
            let iso = diamond::DiamondIsometry::new(q, improper).expect("primitive");
            let closed = diamond::diamond_coincidence(&iso).expect("valid");
            let engine =
                lattice::multilattice_coincidence(&ml, &iso.matrix(), ExecMode::Sequential)
                    .expect("engine")
                    .expect("every orthogonal rational matrix is a coincidence");
            if closed.index != engine.index {
                fails.push(format!("index mismatch for q={q} improper={improper}"));
            }
            let mut a: Vec<_> = closed.cosets.cosets.iter().map(|c| c.key()).collect();
            let mut b: Vec<_> = engine.cosets.iter().map(|c| c.key()).collect();
            a.sort();
            b.sort();
            if a != b {
                fails.push(format!("coset mismatch for q={q} improper={improper}"));
            }
            // pairwise oracle: every engine coset reappears as a pair
            // intersection
            let m = iso.matrix();
            for (j, xj) in ml.shifts().iter().enumerate() {
                for (k, xk) in ml.shifts().iter().enumerate() {
                    let left =
                        ShiftedLattice::new(fcc.clone(), xk.clone()).expect("shift");
                    let right = ShiftedLattice::new(
                        fcc.transform(&m).expect("3d"),
                        m.mul_vec(xj),
                    )
                    .expect("shift");
                    let oracle = coset_intersect(&left, &right).expect("solver");
                    if let Some(coset) = oracle {
                        if !b.contains(&coset.key()) {
                            fails.push(format!(
                                "oracle coset ({j},{k}) missing for q={q} improper={improper}"
                            ));
                        }
                    }
                }
            }
            if !improper {
                let dsc = lattice::dsc_lattice(&fcc, &m).expect("3d");
                if dsc.member(&x) || dsc.member(&m.mul_vec(&x)) {
                    fails.push(format!("x or Rx inside the DSC lattice for q={q}"));
                }
            }
            fails
        });
        let total = rows.len();
        let failures: Vec<String> = rows.into_iter().flatten().collect();
        let mut checks = vec![check(
            "case table vs engine, pairwise oracle, excluded translations",
            total,
            failures,
        )];

        // exact box counting on periodic windows
        let mut fails = Vec::new();
        let mut cases = 0usize;
        for (q, improper) in [
            (Quaternion::new(1, 1, 0, 0), false),
            (Quaternion::new(1, 1, 1, 0), false),
            (Quaternion::new(1, 1, 1, 0), true),
            (Quaternion::new(1, 1, 1, 1), false),
        ] {
            cases += 1;
            let iso = diamond::DiamondIsometry::new(q, improper).expect("primitive");
            let res = diamond::diamond_coincidence(&iso).expect("valid");
            let period = 2 * q.norm();
            let w = Window::cube(3, 0, period).expect("window");
            let a = enumerate_points_multilattice(&ml, &w).expect("points");
            let m = iso.matrix();
            let image = Multilattice::new(
                fcc.transform(&m).expect("3d"),
                vec![vec![mat::rat_int(0); 3], m.mul_vec(&x)],
            )
            .expect("image multilattice");
            let b = enumerate_points_multilattice(&image, &w).expect("points");
            match empirical_index(&a, &b) {
                Ok(ratio) => {
                    if ratio != res.index {
                        fails.push(format!(
                            "box count {ratio} vs index {} for q={q} improper={improper}",
                            res.index
                        ));
                    }
                }
                Err(_) => fails.push(format!("empty box intersection for q={q}")),
            }
        }
        checks.push(check("box counting on periodic windows", cases, fails));
        Report { suite: "diamond".into(), bound, checks }
    }

    /// Engine identities on general multilattices: duality, the affine
    /// composition-failure witness, and the sigma-scan index formula.
    pub fn suite_multilattice(bound: u64, _mode: ExecMode) -> Report {
        let mut checks = Vec::new();

        // duality identities on sample lattices
        let mut fails = Vec::new();
        let samples: Vec<RationalLattice> = vec![
            RationalLattice::standard(2),
            cubic::CubicLatticeKind::BodyCentered.lattice(),
            cubic::CubicLatticeKind::FaceCentered.lattice(),
            RationalLattice::from_generators(
                2,
                &[vec![mat::rat(1, 2), mat::rat(1, 3)], vec![mat::rat(0, 1), mat::rat(1, 1)]],
            )
            .expect("full rank"),
        ];
        let mut cases = 0usize;
        for a in &samples {
            for b in &samples {
                if a.dim() != b.dim() {
                    continue;
                }
                cases += 1;
                let inter = a.intersect(b).expect("commensurate");
                let via_dual = a.dual().sum(&b.dual()).expect("sum").dual();
                if inter != via_dual {
                    fails.push(format!("duality identity failed on a sample pair"));
                }
            }
        }
        checks.push(check("intersection equals dual of sum of duals", cases, fails));

        // affine witness: inverses stay inside, one concrete product leaves
        let mut fails = Vec::new();
        let z2 = RationalLattice::standard(2);
        let r1 = PlanarCoincidence::new(crate::gaussian::gi(1, 2), crate::gaussian::Unit::One, false)
            .expect("canonical")
            .matrix();
        let iso1 = AffineIsometry::new(r1.clone(), vec![mat::rat(1, 5), mat::rat(2, 5)])
            .expect("orthogonal");
        let iso2 = AffineIsometry::new(r1.transpose(), vec![mat::rat(1, 5), mat::rat(-2, 5)])
            .expect("orthogonal");
        let ok = lattice::is_affine_coincidence(&z2, &iso1).expect("2d")
            && lattice::is_affine_coincidence(&z2, &iso2).expect("2d")
            && lattice::is_affine_coincidence(&z2, &iso1.inverse()).expect("2d")
            && !lattice::is_affine_coincidence(&z2, &iso2.compose(&iso1)).expect("2d");
        if !ok {
            fails.push("affine witness failed".to_string());
        }
        checks.push(check("affine inverse closure and composition failure", 1, fails));

        // sigma scan on a three-point multilattice
        let mut fails = Vec::new();
        let ml = Multilattice::new(
            z2.clone(),
            vec![
                mat::vec_zero(2),
                vec![mat::rat(1, 2), mat::rat(0, 1)],
                vec![mat::rat(1, 5), mat::rat(2, 5)],
            ],
        )
        .expect("valid");
        let mut cases = 0usize;
        for c in square::enumerate_coincidences(bound.min(50), true) {
            cases += 1;
            let m = c.matrix();
            let out = lattice::multilattice_coincidence(&ml, &m, ExecMode::Sequential)
                .expect("engine")
                .expect("coincidence");
            let pairs = out.coset_count();
            let mpts = ml.point_count();
            if pairs < 1 || pairs > mpts * mpts {
                fails.push(format!("pair count out of range for {c}"));
            }
            let sigma = BigInt::from(c.sigma_u64());
            let lhs = out.index.clone() * mat::rat_int(pairs as i64);
            let rhs = mat::rat_from_big(BigInt::from(mpts) * sigma);
            if lhs != rhs {
                fails.push(format!("index formula failed for {c}"));
            }
        }
        checks.push(check("pair-scan bounds and exact index formula", cases, fails));

        Report { suite: "multilattice".into(), bound, checks }
    }
}
