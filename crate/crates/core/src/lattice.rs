//! Lattice-agnostic engine for affine coincidences, shifted lattices and
//! multilattices over exact rational column bases in dimensions 2 to 4.
//!
//! Sums of commensurate lattices are Hermite forms of concatenated
//! generators; intersections go through duality,
//! `A ∩ B = (A* + B*)*`.  Membership, coset representatives and the
//! decomposition `v = l + g` with `l ∈ A`, `g ∈ B` all reduce to integer
//! linear algebra on the scaled bases.

use crate::error::{Error, Result};
use crate::mat::{
    self, hnf_square_basis, hnf_with_transform, rat_to_string, IntMat, Rat, RatMat,
};
use crate::par::{self, ExecMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

// ---------------------------------------------------------------------------
// lattices

/// A full-rank lattice with exact rational column basis, stored in canonical
/// Hermite normal form so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalLattice {
    dim: usize,
    basis: RatMat,
    inv: RatMat,
}

impl RationalLattice {
    fn check_dim(dim: usize) -> Result<()> {
        if !(2..=4).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(())
    }

    /// Build from a square column-basis matrix.
    pub fn from_basis(cols: RatMat) -> Result<Self> {
        if !cols.is_square() {
            return Err(Error::DimensionMismatch(cols.rows(), cols.cols()));
        }
        Self::check_dim(cols.rows())?;
        if cols.det().is_zero() {
            return Err(Error::RankDeficient);
        }
        Self::canonicalize(cols)
    }

    /// Build from a finite generating set (columns spanning the lattice).
    pub fn from_generators(dim: usize, gens: &[Vec<Rat>]) -> Result<Self> {
        Self::check_dim(dim)?;
        if gens.iter().any(|g| g.len() != dim) {
            return Err(Error::invalid("generator of wrong dimension"));
        }
        let m = RatMat::from_cols(gens.to_vec())?;
        let (im, scale) = m.clear_denominators();
        let h = hnf_square_basis(&im)?;
        let basis = RatMat::from_int(&h).div_big(&scale);
        let inv = basis.inverse().ok_or(Error::RankDeficient)?;
        Ok(RationalLattice { dim, basis, inv })
    }

    fn canonicalize(cols: RatMat) -> Result<Self> {
        let dim = cols.rows();
        let (im, scale) = cols.clear_denominators();
        let h = hnf_square_basis(&im)?;
        let basis = RatMat::from_int(&h).div_big(&scale);
        let inv = basis.inverse().ok_or(Error::RankDeficient)?;
        Ok(RationalLattice { dim, basis, inv })
    }

    /// The integer lattice `Z^dim`.
    pub fn standard(dim: usize) -> Self {
        Self::from_basis(RatMat::identity(dim)).expect("identity basis")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical HNF column basis.
    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    /// Covolume `|det(basis)|`.
    pub fn covolume(&self) -> Rat {
        let d = self.basis.det();
        if d.is_negative() {
            -d
        } else {
            d
        }
    }

    /// Dual lattice: columns of the inverse transpose of the basis.
    pub fn dual(&self) -> Self {
        let b = self.inv.transpose();
        Self::canonicalize(b).expect("dual of nonsingular basis")
    }

    /// Image under an invertible rational matrix.
    pub fn transform(&self, r: &RatMat) -> Result<Self> {
        if r.rows() != self.dim || r.cols() != self.dim {
            return Err(Error::DimensionMismatch(r.rows(), self.dim));
        }
        Self::from_basis(r.mul(&self.basis))
    }

    pub fn scale(&self, k: &Rat) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::RankDeficient);
        }
        Self::from_basis(self.basis.scale(k))
    }

    /// Coordinates of `v` with respect to the basis.
    pub fn coords(&self, v: &[Rat]) -> Vec<Rat> {
        self.inv.mul_vec(v)
    }

    pub fn member(&self, v: &[Rat]) -> bool {
        mat::vec_is_integral(&self.coords(v))
    }

    /// Canonical representative of `v` modulo the lattice (inside the
    /// fundamental parallelepiped of the HNF basis).
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let c = self.coords(v);
        let frac: Vec<Rat> = c.iter().map(|x| x - x.floor()).collect();
        self.basis.mul_vec(&frac)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut gens: Vec<Vec<Rat>> = Vec::new();
        for j in 0..self.dim {
            gens.push(self.basis.col(j));
        }
        for j in 0..other.dim {
            gens.push(other.basis.col(j));
        }
        Self::from_generators(self.dim, &gens)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn is_sublattice_of(&self, sup: &Self) -> bool {
        (0..self.dim).all(|j| sup.member(&self.basis.col(j)))
    }

    /// Index `[sup : self]`; requires `self` to be a sublattice of `sup`.
    pub fn index_in(&self, sup: &Self) -> Result<BigInt> {
        if !self.is_sublattice_of(sup) {
            return Err(Error::invalid("index_in: not a sublattice"));
        }
        let r = self.covolume() / sup.covolume();
        debug_assert!(r.denom().is_one());
        Ok(r.to_integer())
    }

    /// The integer coordinate matrix of `self` in the basis of `sup`.
    pub fn relative_matrix(&self, sup: &Self) -> Result<IntMat> {
        let m = sup.inv.mul(&self.basis);
        if !m.is_integral() {
            return Err(Error::invalid("relative_matrix: not a sublattice"));
        }
        let (im, scale) = m.clear_denominators();
        debug_assert!(scale.is_one());
        Ok(im)
    }
}

// ---------------------------------------------------------------------------
// shifted lattices, multilattices, isometries, cosets

/// A translated lattice `x + L` with the shift stored reduced modulo `L`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftedLattice {
    lattice: RationalLattice,
    shift: Vec<Rat>,
}

impl ShiftedLattice {
    pub fn new(lattice: RationalLattice, shift: Vec<Rat>) -> Result<Self> {
        if shift.len() != lattice.dim() {
            return Err(Error::DimensionMismatch(shift.len(), lattice.dim()));
        }
        let shift = lattice.reduce(&shift);
        Ok(ShiftedLattice { lattice, shift })
    }

    pub fn lattice(&self) -> &RationalLattice {
        &self.lattice
    }

    pub fn shift(&self) -> &[Rat] {
        &self.shift
    }
}

/// A finite union of translates of one lattice; the first shift is zero and
/// shifts are pairwise distinct modulo the lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multilattice {
    lattice: RationalLattice,
    shifts: Vec<Vec<Rat>>,
}

impl Multilattice {
    pub fn new(lattice: RationalLattice, shifts: Vec<Vec<Rat>>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::invalid("multilattice needs at least one shift"));
        }
        if shifts.iter().any(|s| s.len() != lattice.dim()) {
            return Err(Error::invalid("shift of wrong dimension"));
        }
        if !mat::vec_is_zero(&shifts[0]) {
            return Err(Error::invalid("first shift must be zero"));
        }
        let reduced: Vec<Vec<Rat>> = shifts.iter().map(|s| lattice.reduce(s)).collect();
        for i in 0..reduced.len() {
            for j in i + 1..reduced.len() {
                if reduced[i] == reduced[j] {
                    return Err(Error::invalid("shifts must be distinct modulo the lattice"));
                }
            }
        }
        Ok(Multilattice { lattice, shifts: reduced })
    }

    pub fn lattice(&self) -> &RationalLattice {
        &self.lattice
    }

    pub fn shifts(&self) -> &[Vec<Rat>] {
        &self.shifts
    }

    pub fn point_count(&self) -> usize {
        self.shifts.len()
    }
}

/// `x -> v + R x` with exactly orthogonal rational `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineIsometry {
    linear: RatMat,
    translation: Vec<Rat>,
}

impl AffineIsometry {
    pub fn new(linear: RatMat, translation: Vec<Rat>) -> Result<Self> {
        if !linear.is_orthogonal() {
            return Err(Error::NotOrthogonal);
        }
        if translation.len() != linear.rows() {
            return Err(Error::DimensionMismatch(translation.len(), linear.rows()));
        }
        Ok(AffineIsometry { linear, translation })
    }

    pub fn linear_part(r: RatMat) -> Result<Self> {
        let d = r.rows();
        Self::new(r, mat::vec_zero(d))
    }

    pub fn linear(&self) -> &RatMat {
        &self.linear
    }

    pub fn translation(&self) -> &[Rat] {
        &self.translation
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        mat::vec_add(&self.translation, &self.linear.mul_vec(v))
    }

    /// `(v, R)^{-1} = (-R^{-1} v, R^{-1})`; for orthogonal `R` the inverse
    /// is the transpose.
    pub fn inverse(&self) -> Self {
        let rinv = self.linear.transpose();
        let v = mat::vec_neg(&rinv.mul_vec(&self.translation));
        AffineIsometry { linear: rinv, translation: v }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        AffineIsometry {
            linear: self.linear.mul(&other.linear),
            translation: mat::vec_add(&self.translation, &self.linear.mul_vec(&other.translation)),
        }
    }
}

/// A coset `rep + L'` of a finite-index sublattice, representative reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetLattice {
    rep: Vec<Rat>,
    sublattice: RationalLattice,
}

impl CosetLattice {
    pub fn new(rep: Vec<Rat>, sublattice: RationalLattice) -> Self {
        let rep = sublattice.reduce(&rep);
        CosetLattice { rep, sublattice }
    }

    pub fn rep(&self) -> &[Rat] {
        &self.rep
    }

    pub fn sublattice(&self) -> &RationalLattice {
        &self.sublattice
    }

    /// Deterministic ordering/deduplication key.
    pub fn key(&self) -> (Vec<Rat>, Vec<Rat>) {
        (self.rep.clone(), self.sublattice.basis().key())
    }
}

/// A finite disjoint union of cosets of one sublattice with its coincidence
/// index, which need not be an integer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CsmlDescription {
    pub cosets: Vec<CosetLattice>,
    pub index: Rat,
}

impl CsmlDescription {
    pub fn coset_count(&self) -> usize {
        self.cosets.len()
    }
}

// ---------------------------------------------------------------------------
// engine operations

/// `L1 + L2`.
pub fn lattice_sum(l1: &RationalLattice, l2: &RationalLattice) -> Result<RationalLattice> {
    l1.sum(l2)
}

/// `L1 ∩ L2`, through duality.
pub fn lattice_intersect(l1: &RationalLattice, l2: &RationalLattice) -> Result<RationalLattice> {
    l1.intersect(l2)
}

/// `L ∩ RL` for an orthogonal rational matrix.
///
/// Uses `(RL)* = R L*` to skip one dualization; the general
/// [`lattice_intersect`] stays available for arbitrary pairs.
pub fn csl_lattice(l: &RationalLattice, r: &RatMat) -> Result<RationalLattice> {
    if !r.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let ld = l.dual();
    Ok(ld.sum(&ld.transform(r)?)?.dual())
}

/// `L + RL`, the lattice of admissible translations for `R`.
pub fn dsc_lattice(l: &RationalLattice, r: &RatMat) -> Result<RationalLattice> {
    l.sum(&l.transform(r)?)
}

/// Coincidence index `[L : L ∩ RL]`.
pub fn sigma_index(l: &RationalLattice, r: &RatMat) -> Result<BigInt> {
    csl_lattice(l, r)?.index_in(l)
}

/// The reusable part of splitting vectors over a fixed sum `L1 + L2`: one
/// Hermite reduction with transform serves any number of right-hand sides.
pub struct SumDecomposition {
    dim: usize,
    scale: BigInt,
    basis1: RatMat,
    lead_inv: RatMat,
    transform: IntMat,
}

impl SumDecomposition {
    pub fn prepare(l1: &RationalLattice, l2: &RationalLattice) -> Result<Self> {
        if l1.dim() != l2.dim() {
            return Err(Error::DimensionMismatch(l1.dim(), l2.dim()));
        }
        let d = l1.dim();
        let stacked = l1.basis().hcat(l2.basis());
        let (a, scale) = stacked.clear_denominators();
        let (h, u) = hnf_with_transform(&a);
        let lead = IntMat::from_fn(d, d, |i, j| h.at(i, j).clone());
        for i in 0..d {
            if lead.at(i, i).is_zero() {
                return Err(Error::RankDeficient);
            }
        }
        let lead_inv = RatMat::from_int(&lead).inverse().ok_or(Error::RankDeficient)?;
        Ok(SumDecomposition {
            dim: d,
            scale,
            basis1: l1.basis().clone(),
            lead_inv,
            transform: u,
        })
    }

    /// `v = l + g` with `l ∈ L1`, `g ∈ L2`, or `None` when `v ∉ L1 + L2`.
    pub fn solve(&self, v: &[Rat]) -> Option<(Vec<Rat>, Vec<Rat>)> {
        let d = self.dim;
        let sf = mat::rat_from_big(self.scale.clone());
        let sv: Vec<Rat> = v.iter().map(|x| x * &sf).collect();
        // members of the sum have denominators dividing the scale
        if !mat::vec_is_integral(&sv) {
            return None;
        }
        let c = self.lead_inv.mul_vec(&sv);
        if !mat::vec_is_integral(&c) {
            return None;
        }
        let mut chat = vec![BigInt::zero(); self.transform.rows()];
        for i in 0..d {
            chat[i] = c[i].to_integer();
        }
        let w = self.transform.mul_vec(&chat);
        let m: Vec<Rat> = w[..d].iter().map(|x| mat::rat_from_big(x.clone())).collect();
        let lvec = self.basis1.mul_vec(&m);
        let g = mat::vec_sub(v, &lvec);
        Some((lvec, g))
    }
}

/// Split `v = l + g` with `l ∈ L1` and `g ∈ L2`, if `v ∈ L1 + L2`.
pub fn decompose_in_sum(
    v: &[Rat],
    l1: &RationalLattice,
    l2: &RationalLattice,
) -> Result<Option<(Vec<Rat>, Vec<Rat>)>> {
    if v.len() != l1.dim() {
        return Err(Error::DimensionMismatch(v.len(), l1.dim()));
    }
    Ok(SumDecomposition::prepare(l1, l2)?.solve(v))
}

/// Affine coincidence test: `R` commensurates the lattice and the
/// translation lies in `L + RL`.
pub fn is_affine_coincidence(l: &RationalLattice, iso: &AffineIsometry) -> Result<bool> {
    let rl = l.transform(iso.linear())?;
    // Rational data is always commensurate; the index is finite iff the
    // covolume ratio is finite, which holds for any nonsingular pair.
    let sum = l.sum(&rl)?;
    Ok(sum.member(iso.translation()))
}

/// The intersection `L ∩ (v,R)L` as a coset `l + (L ∩ RL)`.
pub fn acsl(l: &RationalLattice, iso: &AffineIsometry) -> Result<CosetLattice> {
    let rl = l.transform(iso.linear())?;
    let Some((lvec, _)) = decompose_in_sum(iso.translation(), l, &rl)? else {
        return Err(Error::NotACoincidence);
    };
    let csl = l.intersect(&rl)?;
    Ok(CosetLattice::new(lvec, csl))
}

/// The coincidence site lattice of the shifted lattice `x + L` under `R`,
/// or `None` when `Rx - x` is not in `L + RL`.
pub fn shifted_coincidence(s: &ShiftedLattice, r: &RatMat) -> Result<Option<CosetLattice>> {
    if !r.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let l = s.lattice();
    let rl = l.transform(r)?;
    let x = s.shift();
    let w = mat::vec_sub(&r.mul_vec(x), x);
    let Some((lvec, _)) = decompose_in_sum(&w, l, &rl)? else {
        return Ok(None);
    };
    let csl = l.intersect(&rl)?;
    Ok(Some(CosetLattice::new(mat::vec_add(x, &lvec), csl)))
}

/// Coincidence site multilattice of `L = U (x_k + G)` under orthogonal `R`:
/// the full pair scan, the coset union, and the exact rational index
/// `m * sigma / |pairs|`.
pub fn multilattice_coincidence(
    ml: &Multilattice,
    r: &RatMat,
    mode: ExecMode,
) -> Result<Option<CsmlDescription>> {
    if !r.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let g = ml.lattice();
    let rg = g.transform(r)?;
    let csl = g.intersect(&rg)?;
    let sigma = csl.index_in(g)?;
    let m = ml.point_count();
    let pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|j| (0..m).map(move |k| (j, k))).collect();
    let shifts = ml.shifts();
    let hits: Vec<Option<CosetLattice>> = par::map_vec(mode, pairs, |(j, k)| {
        let w = mat::vec_sub(&r.mul_vec(&shifts[j]), &shifts[k]);
        match decompose_in_sum(&w, g, &rg) {
            Ok(Some((lvec, _))) => {
                Some(CosetLattice::new(mat::vec_add(&shifts[k], &lvec), csl.clone()))
            }
            _ => None,
        }
    });
    let cosets: Vec<CosetLattice> = hits.into_iter().flatten().collect();
    if cosets.is_empty() {
        return Ok(None);
    }
    let index = Rat::new(BigInt::from(m) * sigma, BigInt::from(cosets.len()));
    Ok(Some(CsmlDescription { cosets, index }))
}

// ---------------------------------------------------------------------------
// JSON interfaces

pub fn lattice_to_json(l: &RationalLattice) -> Value {
    let cols: Vec<Vec<String>> = (0..l.dim())
        .map(|j| l.basis().col(j).iter().map(rat_to_string).collect())
        .collect();
    json!({ "basis": cols, "hnf": true })
}

pub fn vec_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(rat_to_string(x))).collect())
}

pub fn coset_to_json(c: &CosetLattice) -> Value {
    json!({ "rep": vec_to_json(c.rep()), "lattice": lattice_to_json(c.sublattice()) })
}

pub fn csml_to_json(c: &CsmlDescription) -> Value {
    json!({
        "index": rat_to_string(&c.index),
        "cosets": c.cosets.iter().map(coset_to_json).collect::<Vec<_>>(),
    })
}

fn json_rat(v: &Value, ctx: &str) -> Result<Rat> {
    match v {
        Value::String(s) => mat::rat_from_str(s),
        Value::Number(n) => n
            .as_i64()
            .map(|k| mat::rat_int(k))
            .ok_or_else(|| Error::invalid(format!("{ctx}: non-integer number"))),
        _ => Err(Error::invalid(format!("{ctx}: expected rational string"))),
    }
}

fn json_vec(v: &Value, ctx: &str) -> Result<Vec<Rat>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::invalid(format!("{ctx}: expected array")))?;
    arr.iter().map(|x| json_rat(x, ctx)).collect()
}

fn json_matrix_cols(v: &Value, ctx: &str) -> Result<RatMat> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::invalid(format!("{ctx}: expected array of columns")))?;
    let cols: Result<Vec<Vec<Rat>>> = arr.iter().map(|c| json_vec(c, ctx)).collect();
    RatMat::from_cols(cols?)
}

/// Multilattice file schema: `{"dim": d, "basis": [[rat]], "shifts": [[rat]]}`
/// with the basis given by columns.
pub fn multilattice_from_json(text: &str) -> Result<Multilattice> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad JSON: {e}")))?;
    let dim = v["dim"]
        .as_u64()
        .ok_or_else(|| Error::invalid("missing \"dim\""))? as usize;
    let basis = json_matrix_cols(&v["basis"], "basis")?;
    if basis.rows() != dim || basis.cols() != dim {
        return Err(Error::DimensionMismatch(basis.rows(), dim));
    }
    let lattice = RationalLattice::from_basis(basis)?;
    let shifts_v = v["shifts"]
        .as_array()
        .ok_or_else(|| Error::invalid("missing \"shifts\""))?;
    let shifts: Result<Vec<Vec<Rat>>> = shifts_v.iter().map(|s| json_vec(s, "shifts")).collect();
    Multilattice::new(lattice, shifts?)
}

/// Isometry schema: `{"R": [[rat]], "v": [rat]}`; `R` by columns, `v`
/// optional (defaults to zero).
pub fn isometry_from_json(text: &str) -> Result<AffineIsometry> {
    let val: Value =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad JSON: {e}")))?;
    let r = json_matrix_cols(&val["R"], "R")?;
    let v = if val["v"].is_null() {
        mat::vec_zero(r.rows())
    } else {
        json_vec(&val["v"], "v")?
    };
    AffineIsometry::new(r, v)
}
