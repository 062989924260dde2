//! Exact small-matrix algebra: rational matrices for lattice bases and
//! isometries, integer matrices with column-style Hermite normal form and
//! Smith normal form, and a Smith-based linear Diophantine solver.
//!
//! HNF convention: column operations only, result lower triangular with
//! positive diagonal, and in every pivot row the entries left of the pivot
//! are reduced into `[0, diag)`.  This makes the form canonical, so lattice
//! equality is structural equality of bases.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_from_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Render as `p` or `p/q` (the form the JSON interfaces use).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str, off: usize| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::parse(off, format!("invalid integer {t:?}")))
    };
    match s.find('/') {
        None => Ok(Rat::from_integer(parse_int(s, 0)?)),
        Some(k) => {
            let num = parse_int(&s[..k], 0)?;
            let den = parse_int(&s[k + 1..], k + 1)?;
            if den.is_zero() {
                return Err(Error::parse(k + 1, "zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

pub fn rat_floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

pub fn rat_ceil_int(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

// ---------------------------------------------------------------------------
// vectors

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(a: &[Rat], k: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * k).collect()
}

pub fn vec_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |s, t| s + t)
}

pub fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn vec_is_integral(a: &[Rat]) -> bool {
    a.iter().all(|x| x.denom().is_one())
}

pub fn vec_from_i64(a: &[i64]) -> Vec<Rat> {
    a.iter().map(|&x| rat_int(x)).collect()
}

pub fn vec_zero(d: usize) -> Vec<Rat> {
    vec![Rat::zero(); d]
}

// ---------------------------------------------------------------------------
// rational matrices

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        Ok(RatMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Result<Self> {
        let m = Self::from_rows(cols)?;
        Ok(m.transpose())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| vec_from_i64(r)).collect()).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        RatMat::from_fn(self.rows, other.cols, |i, j| {
            let mut s = Rat::zero();
            for k in 0..self.cols {
                s += self.at(i, k) * other.at(k, j);
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for k in 0..self.cols {
                    s += self.at(i, k) * &v[k];
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn neg(&self) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    pub fn scale(&self, k: &Rat) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * k)
    }

    pub fn hcat(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.rows, other.rows);
        RatMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == RatMat::identity(self.rows)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.transpose().mul(self).is_identity()
    }

    /// Determinant by fraction-full Gaussian elimination (dims here are <= 8).
    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero());
            let Some(p) = pivot else {
                return Rat::zero();
            };
            if p != col {
                for j in 0..n {
                    let t = a.at(p, j).clone();
                    a.set(p, j, a.at(col, j).clone());
                    a.set(col, j, t);
                }
                det = -det;
            }
            let d = a.at(col, col).clone();
            det *= &d;
            for r in col + 1..n {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col) / &d;
                for j in col..n {
                    let v = a.at(r, j) - &f * a.at(col, j);
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn is_lower_triangular(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if !self.at(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse; lower-triangular matrices (the canonical lattice bases) go
    /// through forward substitution, everything else through Gauss-Jordan.
    pub fn inverse(&self) -> Option<RatMat> {
        if self.is_lower_triangular() {
            return self.inverse_lower_triangular();
        }
        self.inverse_general()
    }

    fn inverse_lower_triangular(&self) -> Option<RatMat> {
        let n = self.rows;
        for i in 0..n {
            if self.at(i, i).is_zero() {
                return None;
            }
        }
        let mut inv = RatMat::zeros(n, n);
        for j in 0..n {
            inv.set(j, j, Rat::one() / self.at(j, j));
            for i in j + 1..n {
                let mut s = Rat::zero();
                for k in j..i {
                    s += self.at(i, k) * inv.at(k, j);
                }
                inv.set(i, j, -s / self.at(i, i));
            }
        }
        Some(inv)
    }

    fn inverse_general(&self) -> Option<RatMat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if p != col {
                for j in 0..n {
                    let t = a.at(p, j).clone();
                    a.set(p, j, a.at(col, j).clone());
                    a.set(col, j, t);
                    let t = inv.at(p, j).clone();
                    inv.set(p, j, inv.at(col, j).clone());
                    inv.set(col, j, t);
                }
            }
            let d = a.at(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.at(col, j) / &d);
                inv.set(col, j, inv.at(col, j) / &d);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(r, j) - &f * a.at(col, j);
                    a.set(r, j, v);
                    let v = inv.at(r, j) - &f * inv.at(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    /// Smallest positive integer `s` with `s * self` integral, plus the
    /// scaled integer matrix.
    pub fn clear_denominators(&self) -> (IntMat, BigInt) {
        let mut l = BigInt::one();
        for x in &self.data {
            l = l.lcm(x.denom());
        }
        let m = IntMat::from_fn(self.rows, self.cols, |i, j| {
            let v = self.at(i, j) * Rat::from_integer(l.clone());
            debug_assert!(v.denom().is_one());
            v.to_integer()
        });
        (m, l)
    }

    pub fn from_int(m: &IntMat) -> RatMat {
        RatMat::from_fn(m.rows, m.cols, |i, j| Rat::from_integer(m.at(i, j).clone()))
    }

    pub fn div_big(&self, k: &BigInt) -> RatMat {
        let f = Rat::new(BigInt::one(), k.clone());
        self.scale(&f)
    }

    /// Flattened entries, row major; usable as a deterministic map key.
    pub fn key(&self) -> Vec<Rat> {
        self.data.clone()
    }
}

// ---------------------------------------------------------------------------
// integer matrices

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        IntMat::from_fn(self.rows, other.cols, |i, j| {
            let mut s = BigInt::zero();
            for k in 0..self.cols {
                s += self.at(i, k) * other.at(k, j);
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for k in 0..self.cols {
                    s += self.at(i, k) * &v[k];
                }
                s
            })
            .collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, c).clone();
            self.set(i, c, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            self.set(r, j, v);
        }
    }

    /// `col[dst] += k * col[src]`
    fn addmul_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, dst) + k * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    /// `row[dst] += k * row[src]`
    fn addmul_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(dst, j) + k * self.at(src, j);
            self.set(dst, j, v);
        }
    }
}

/// Column-style Hermite normal form together with the unimodular column
/// transform: returns `(h, u)` with `a * u = h`.
///
/// Pivot columns come first; columns beyond the rank are zero.
pub fn hnf_with_transform(a: &IntMat) -> (IntMat, IntMat) {
    let mut h = a.clone();
    let mut u = IntMat::identity(a.cols);
    let mut pivot = 0usize;
    for row in 0..h.rows {
        if pivot >= h.cols {
            break;
        }
        // Column-op gcd elimination on this row, right of `pivot`.
        loop {
            let mut best: Option<usize> = None;
            for c in pivot..h.cols {
                if h.at(row, c).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(c),
                    Some(b) if h.at(row, c).abs() < h.at(row, b).abs() => Some(c),
                    keep => keep,
                };
            }
            let Some(b) = best else { break };
            h.swap_cols(pivot, b);
            u.swap_cols(pivot, b);
            let mut cleared = true;
            for c in pivot + 1..h.cols {
                if h.at(row, c).is_zero() {
                    continue;
                }
                let q = h.at(row, c).div_floor(h.at(row, pivot));
                h.addmul_col(c, pivot, &(-&q));
                u.addmul_col(c, pivot, &(-&q));
                if !h.at(row, c).is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h.at(row, pivot).is_zero() {
            continue; // no pivot in this row
        }
        if h.at(row, pivot).is_negative() {
            h.negate_col(pivot);
            u.negate_col(pivot);
        }
        // Reduce entries left of the pivot into [0, diag).
        for c in 0..pivot {
            let q = h.at(row, c).div_floor(h.at(row, pivot));
            if !q.is_zero() {
                h.addmul_col(c, pivot, &(-&q));
                u.addmul_col(c, pivot, &(-&q));
            }
        }
        pivot += 1;
    }
    (h, u)
}

pub fn hnf(a: &IntMat) -> IntMat {
    hnf_with_transform(a).0
}

/// Rank of an integer matrix as the number of HNF pivots.
pub fn int_rank(a: &IntMat) -> usize {
    let h = hnf(a);
    let mut rank = 0;
    for c in 0..h.cols {
        if (0..h.rows).any(|r| !h.at(r, c).is_zero()) {
            rank += 1;
        }
    }
    rank
}

/// First `rows` columns of the HNF, for a full-row-rank input.
pub fn hnf_square_basis(a: &IntMat) -> Result<IntMat> {
    if a.cols < a.rows {
        return Err(Error::RankDeficient);
    }
    let h = hnf(a);
    for i in 0..a.rows {
        if h.at(i, i).is_zero() {
            return Err(Error::RankDeficient);
        }
    }
    for c in a.rows..a.cols {
        for r in 0..a.rows {
            if !h.at(r, c).is_zero() {
                return Err(Error::RankDeficient);
            }
        }
    }
    Ok(IntMat::from_fn(a.rows, a.rows, |i, j| h.at(i, j).clone()))
}

/// Smith normal form with transforms: returns `(d, u, v)` with
/// `u * a * v = d`, `u`, `v` unimodular, `d` diagonal with non-negative
/// entries satisfying `d[0] | d[1] | ...`.
pub fn snf_with_transforms(a: &IntMat) -> (IntMat, IntMat, IntMat) {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);
    let mut t = 0usize;
    while t < n {
        // Find the entry of minimal absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if d.at(i, j).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some((i, j)),
                    Some((bi, bj)) if d.at(i, j).abs() < d.at(bi, bj).abs() => Some((i, j)),
                    keep => keep,
                };
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);

        let mut dirty = false;
        for i in t + 1..d.rows {
            if d.at(i, t).is_zero() {
                continue;
            }
            let q = d.at(i, t).div_floor(d.at(t, t));
            d.addmul_row(i, t, &(-&q));
            u.addmul_row(i, t, &(-&q));
            if !d.at(i, t).is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..d.cols {
            if d.at(t, j).is_zero() {
                continue;
            }
            let q = d.at(t, j).div_floor(d.at(t, t));
            d.addmul_col(j, t, &(-&q));
            v.addmul_col(j, t, &(-&q));
            if !d.at(t, j).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // Enforce divisibility of the trailing block by the pivot.
        let piv = d.at(t, t).clone();
        let mut fixed = true;
        'scan: for i in t + 1..d.rows {
            for j in t + 1..d.cols {
                if !(d.at(i, j) % &piv).is_zero() {
                    d.addmul_row(t, i, &BigInt::one());
                    u.addmul_row(t, i, &BigInt::one());
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }
    for i in 0..n {
        if d.at(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }
    (d, u, v)
}

/// Integer solutions of `a x = b`: a particular solution and a basis of the
/// integer kernel, or `None` when no integer solution exists.
pub fn solve_diophantine(a: &IntMat, b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    assert_eq!(a.rows, b.len());
    let (d, u, v) = snf_with_transforms(a);
    let y = u.mul_vec(b);
    let n = a.rows.min(a.cols);
    let mut xhat = vec![BigInt::zero(); a.cols];
    let mut rank = 0usize;
    for i in 0..a.rows {
        if i < n && !d.at(i, i).is_zero() {
            let (q, r) = y[i].div_rem(d.at(i, i));
            if !r.is_zero() {
                return None;
            }
            xhat[i] = q;
            rank += 1;
        } else if !y[i].is_zero() {
            return None;
        }
    }
    let particular = v.mul_vec(&xhat);
    let kernel = (rank..a.cols).map(|j| v.col(j)).collect();
    Some((particular, kernel))
}
