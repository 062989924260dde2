//! Arithmetic in `Z[i]` and `Q(i)`: exact Gaussian integers and rationals,
//! Euclidean division, greatest common divisors, factorization into Gaussian
//! primes, and the visibility predicates used by numerator enumeration.
//!
//! Canonical associate: among `{w, iw, -w, -iw}` exactly one lies in the
//! half-open quadrant `re > 0, im >= 0`; `gcd` and `factor` normalize their
//! outputs to it.

use crate::arith;
use crate::error::{Error, Result};
use crate::mat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

// ---------------------------------------------------------------------------
// units

/// The four units of `Z[i]`, closed under multiplication and conjugation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Unit {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::MinusOne, Unit::MinusI];

    /// Exponent `k` with `self = i^k`.
    fn power(self) -> u8 {
        match self {
            Unit::One => 0,
            Unit::I => 1,
            Unit::MinusOne => 2,
            Unit::MinusI => 3,
        }
    }

    fn from_power(k: u8) -> Unit {
        match k % 4 {
            0 => Unit::One,
            1 => Unit::I,
            2 => Unit::MinusOne,
            _ => Unit::MinusI,
        }
    }

    pub fn times(self, other: Unit) -> Unit {
        Unit::from_power(self.power() + other.power())
    }

    pub fn conj(self) -> Unit {
        Unit::from_power(4 - self.power())
    }

    pub fn inverse(self) -> Unit {
        self.conj()
    }

    pub fn square(self) -> Unit {
        self.times(self)
    }

    pub fn gaussian(self) -> GaussianInt {
        match self {
            Unit::One => gi(1, 0),
            Unit::I => gi(0, 1),
            Unit::MinusOne => gi(-1, 0),
            Unit::MinusI => gi(0, -1),
        }
    }

    pub fn from_gaussian(z: &GaussianInt) -> Option<Unit> {
        let one = BigInt::one();
        if z.im.is_zero() {
            if z.re == one {
                return Some(Unit::One);
            }
            if z.re == -&one {
                return Some(Unit::MinusOne);
            }
        } else if z.re.is_zero() {
            if z.im == one {
                return Some(Unit::I);
            }
            if z.im == -&one {
                return Some(Unit::MinusI);
            }
        }
        None
    }

    /// Multiply a Gaussian integer by this unit.
    pub fn apply(self, z: &GaussianInt) -> GaussianInt {
        match self {
            Unit::One => z.clone(),
            Unit::I => z.mul_i(),
            Unit::MinusOne => -z.clone(),
            Unit::MinusI => -z.mul_i(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Unit::One => "1",
            Unit::I => "i",
            Unit::MinusOne => "-1",
            Unit::MinusI => "-i",
        }
    }

    pub fn parse(s: &str) -> Result<Unit> {
        match s.trim() {
            "1" | "+1" => Ok(Unit::One),
            "i" | "+i" | "1i" => Ok(Unit::I),
            "-1" => Ok(Unit::MinusOne),
            "-i" | "-1i" => Ok(Unit::MinusI),
            other => Err(Error::invalid(format!("not a unit: {other:?}"))),
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

// ---------------------------------------------------------------------------
// Gaussian integers

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

/// Shorthand constructor from machine integers.
pub fn gi(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(BigInt::from(re), BigInt::from(im))
}

impl GaussianInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussianInt { re, im }
    }

    pub fn zero() -> Self {
        gi(0, 0)
    }

    pub fn one() -> Self {
        gi(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        Unit::from_gaussian(self).is_some()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> GaussianInt {
        GaussianInt::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> GaussianInt {
        GaussianInt::new(-self.im.clone(), self.re.clone())
    }

    pub fn mul_ref(&self, o: &GaussianInt) -> GaussianInt {
        GaussianInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn pow(&self, e: u32) -> GaussianInt {
        let mut acc = GaussianInt::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// The associate in the quadrant `re > 0, im >= 0`, together with the
    /// unit `u` such that the result equals `u * self`.
    pub fn canonical_associate(&self) -> (GaussianInt, Unit) {
        assert!(!self.is_zero(), "zero has no canonical associate");
        let mut w = self.clone();
        let mut u = Unit::One;
        for _ in 0..4 {
            if w.re.is_positive() && !w.im.is_negative() {
                return (w, u);
            }
            w = w.mul_i();
            u = Unit::I.times(u);
        }
        unreachable!("one associate lies in the canonical quadrant");
    }

    /// The associate with odd, positive real part (exists exactly when the
    /// components have different parity, i.e. the norm is odd), with the
    /// unit mapping `self` onto it.
    pub fn numerator_associate(&self) -> Option<(GaussianInt, Unit)> {
        if self.is_zero() || (self.norm()).is_even() {
            return None;
        }
        let (w, u) = if self.re.is_odd() {
            (self.clone(), Unit::One)
        } else {
            (self.mul_i(), Unit::I)
        };
        if w.re.is_positive() {
            Some((w, u))
        } else {
            Some((-w, Unit::MinusOne.times(u)))
        }
    }

    pub fn divides(&self, other: &GaussianInt) -> bool {
        self.div_exact(other).is_some()
    }

    /// `other / self` when the division is exact.
    pub fn div_exact(&self, other: &GaussianInt) -> Option<GaussianInt> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let t = other.mul_ref(&self.conj());
        let (qr, rr) = t.re.div_rem(&n);
        let (qi, ri) = t.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GaussianInt::new(qr, qi))
        } else {
            None
        }
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, o: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, o: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, o: GaussianInt) -> GaussianInt {
        self.mul_ref(&o)
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

// ---------------------------------------------------------------------------
// Euclidean structure

/// Euclidean division: `a = k*b + r` with `N(r) <= N(b)/2`.
///
/// Each rational coordinate of `a/b` is rounded to the nearest integer with
/// ties toward minus infinity, which makes the quotient deterministic.
pub fn euclid_divide(a: &GaussianInt, b: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = b.norm();
    let t = a.mul_ref(&b.conj());
    // nearest integer to x/n, ties toward -inf: ceil((2x - n) / (2n))
    let round = |x: &BigInt| -> BigInt {
        let num = BigInt::from(2) * x - &n;
        let den = BigInt::from(2) * &n;
        // ceil(num/den) = -floor(-num/den)
        -((-num).div_floor(&den))
    };
    let k = GaussianInt::new(round(&t.re), round(&t.im));
    let r = a.clone() - k.mul_ref(b);
    debug_assert!(BigInt::from(2) * r.norm() <= b.norm(), "euclidean remainder too large");
    Ok((k, r))
}

/// Greatest common divisor in canonical associate form.
pub fn gcd(a: &GaussianInt, b: &GaussianInt) -> Result<GaussianInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = euclid_divide(&x, &y)?;
        x = y;
        y = r;
    }
    Ok(x.canonical_associate().0)
}

/// Extended gcd: `(g, s, t)` with `s*a + t*b = g` and `g` canonical.
pub fn ext_gcd(a: &GaussianInt, b: &GaussianInt) -> Result<(GaussianInt, GaussianInt, GaussianInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (GaussianInt::one(), GaussianInt::zero());
    let (mut t0, mut t1) = (GaussianInt::zero(), GaussianInt::one());
    while !r1.is_zero() {
        let (k, r) = euclid_divide(&r0, &r1)?;
        let s = s0 - k.mul_ref(&s1);
        let t = t0 - k.mul_ref(&t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let (g, u) = r0.canonical_associate();
    Ok((g, u.apply(&s0), u.apply(&t0)))
}

/// Inverse of `a` modulo `m`, defined when `gcd(a, m)` is a unit.
pub fn inverse_mod(a: &GaussianInt, m: &GaussianInt) -> Result<GaussianInt> {
    let (g, s, _) = ext_gcd(a, m)?;
    let u = Unit::from_gaussian(&g)
        .ok_or_else(|| Error::invalid("element not invertible modulo m"))?;
    // s*a = g (mod m); multiply by g^{-1} = u^{-1} since g is a unit.
    let inv = u.inverse().apply(&s);
    let (_, r) = euclid_divide(&inv, m)?;
    Ok(r)
}

// ---------------------------------------------------------------------------
// factorization

/// Factorization `unit * prod(prime^e)` with canonical-associate primes,
/// sorted by (norm, re, im).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianFactorization {
    pub unit: Unit,
    pub factors: Vec<(GaussianInt, u32)>,
}

impl GaussianFactorization {
    pub fn product(&self) -> GaussianInt {
        let mut acc = self.unit.gaussian();
        for (p, e) in &self.factors {
            acc = acc.mul_ref(&p.pow(*e));
        }
        acc
    }
}

/// A square root of `-1` modulo the prime `p = 1 (mod 4)`.
fn sqrt_minus_one_mod(p: &BigInt) -> BigInt {
    let e = (p - BigInt::one()) >> 2;
    let pm1 = p - BigInt::one();
    let mut a = BigInt::from(2);
    loop {
        let c = a.modpow(&e, p);
        if (&c * &c) % p == pm1 {
            return c;
        }
        a += BigInt::one();
    }
}

/// The Gaussian prime over a rational prime `p = 1 (mod 4)`, canonical form.
pub fn split_prime(p: &BigInt) -> GaussianInt {
    let s = sqrt_minus_one_mod(p);
    let g = gcd(&GaussianInt::new(p.clone(), BigInt::zero()), &GaussianInt::new(s, BigInt::one()))
        .expect("nonzero arguments");
    debug_assert_eq!(g.norm(), *p);
    g
}

/// Exact factorization of a non-zero Gaussian integer.
///
/// Rational primes `p = 1 (mod 4)` split, `p = 3 (mod 4)` stay inert, and 2
/// ramifies through `(1+i)^2`.
pub fn factor(z: &GaussianInt) -> Result<GaussianFactorization> {
    if z.is_zero() {
        return Err(Error::FactorZero);
    }
    let mut rest = z.clone();
    let mut factors: Vec<(GaussianInt, u32)> = Vec::new();
    let norm = z.norm();
    let divide_out = |rest: &mut GaussianInt, p: &GaussianInt| -> u32 {
        let mut e = 0;
        while let Some(q) = p.div_exact(rest) {
            *rest = q;
            e += 1;
        }
        e
    };
    for (p, en) in arith::factorize_bigint(&norm) {
        if p == BigInt::from(2) {
            let pi = gi(1, 1);
            let e = divide_out(&mut rest, &pi);
            debug_assert_eq!(e, en);
            factors.push((pi, e));
        } else if (&p % BigInt::from(4)) == BigInt::from(3) {
            debug_assert!(en % 2 == 0, "inert prime has even norm exponent");
            let pi = GaussianInt::new(p.clone(), BigInt::zero());
            let e = divide_out(&mut rest, &pi);
            debug_assert_eq!(e, en / 2);
            factors.push((pi, e));
        } else {
            let w = split_prime(&p);
            let e1 = divide_out(&mut rest, &w);
            if e1 > 0 {
                factors.push((w.clone(), e1));
            }
            let wbar = w.conj().canonical_associate().0;
            let e2 = divide_out(&mut rest, &wbar);
            if e2 > 0 {
                factors.push((wbar, e2));
            }
            debug_assert_eq!(e1 + e2, en);
        }
    }
    let unit = Unit::from_gaussian(&rest).expect("cofactor after dividing out all primes is a unit");
    factors.sort_by(|a, b| {
        (a.0.norm(), &a.0.re, &a.0.im).cmp(&(b.0.norm(), &b.0.re, &b.0.im))
    });
    Ok(GaussianFactorization { unit, factors })
}

// ---------------------------------------------------------------------------
// visibility

/// Visible (primitive) point: coprime real and imaginary parts.
pub fn is_visible(z: &GaussianInt) -> bool {
    z.re.gcd(&z.im).is_one()
}

/// Visible and not divisible by `1+i` (equivalently, components of
/// different parity).
pub fn is_odd_visible(z: &GaussianInt) -> bool {
    is_visible(z) && (&z.re + &z.im).is_odd()
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// A reduced fraction of Gaussian integers with canonical-associate
/// denominator, so equality of shifts is structural.  The derived ordering
/// is lexicographic on the components and only serves deterministic keys.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GaussianRational {
    num: GaussianInt,
    den: GaussianInt,
}

impl GaussianRational {
    pub fn new(num: GaussianInt, den: GaussianInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(GaussianRational { num, den: GaussianInt::one() });
        }
        let g = gcd(&num, &den)?;
        let num = g.div_exact(&num).expect("gcd divides");
        let den = g.div_exact(&den).expect("gcd divides");
        let (den, u) = den.canonical_associate();
        Ok(GaussianRational { num: u.apply(&num), den })
    }

    pub fn from_int(z: GaussianInt) -> Self {
        GaussianRational { num: z, den: GaussianInt::one() }
    }

    pub fn from_components(re: Rat, im: Rat) -> Self {
        let q = re.denom().lcm(im.denom());
        let num = GaussianInt::new(
            (re * Rat::from_integer(q.clone())).to_integer(),
            (im * Rat::from_integer(q.clone())).to_integer(),
        );
        GaussianRational::new(num, GaussianInt::new(q, BigInt::zero())).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Self::from_int(GaussianInt::zero())
    }

    pub fn num(&self) -> &GaussianInt {
        &self.num
    }

    pub fn den(&self) -> &GaussianInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn re(&self) -> Rat {
        let t = self.num.mul_ref(&self.den.conj());
        Rat::new(t.re, self.den.norm())
    }

    pub fn im(&self) -> Rat {
        let t = self.num.mul_ref(&self.den.conj());
        Rat::new(t.im, self.den.norm())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.num.conj(), self.den.conj()).expect("nonzero denominator")
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_unit()
    }

    pub fn to_integer(&self) -> Option<GaussianInt> {
        if self.is_integral() {
            self.den.div_exact(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let num =
            self.num.mul_ref(&o.den).clone() + o.num.mul_ref(&self.den);
        GaussianRational::new(num, self.den.mul_ref(&o.den)).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        GaussianRational { num: -self.num.clone(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussianRational::new(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
            .expect("nonzero denominator")
    }

    pub fn mul_int(&self, z: &GaussianInt) -> Self {
        GaussianRational::new(self.num.mul_ref(z), self.den.clone()).expect("nonzero denominator")
    }

    pub fn mul_unit(&self, u: Unit) -> Self {
        GaussianRational { num: u.apply(&self.num), den: self.den.clone() }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        GaussianRational::new(self.num.mul_ref(&o.den), self.den.mul_ref(&o.num))
    }

    /// Coordinates as a length-2 rational vector `(re, im)`.
    pub fn to_vec(&self) -> Vec<Rat> {
        vec![self.re(), self.im()]
    }

    pub fn from_vec(v: &[Rat]) -> Self {
        assert_eq!(v.len(), 2);
        Self::from_components(v[0].clone(), v[1].clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compound = |z: &GaussianInt| !z.re.is_zero() && !z.im.is_zero();
        if self.den.is_unit() && self.den == GaussianInt::one() {
            return write!(f, "{}", self.num);
        }
        if compound(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        if compound(&self.den) {
            write!(f, "({})", self.den)
        } else {
            write!(f, "{}", self.den)
        }
    }
}

// ---------------------------------------------------------------------------
// parsing

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { bytes: s.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).ok()?.parse().ok()
    }

    fn done(&self) -> bool {
        self.pos >= self.bytes.len()
    }
}

/// One signed term of a Gaussian literal: either `n`, `ni`, or `i`.
fn parse_term(c: &mut Cursor, sign: i8) -> Result<(BigInt, bool)> {
    let s = BigInt::from(sign);
    if c.eat(b'i') {
        return Ok((s, true));
    }
    let pos = c.pos;
    let Some(d) = c.digits() else {
        return Err(Error::parse(pos, "expected digits or 'i'"));
    };
    if c.eat(b'i') {
        Ok((s * d, true))
    } else {
        Ok((s * d, false))
    }
}

fn parse_sign(c: &mut Cursor) -> i8 {
    if c.eat(b'-') {
        -1
    } else {
        c.eat(b'+');
        1
    }
}

fn parse_gaussian_body(c: &mut Cursor) -> Result<GaussianInt> {
    let sign = parse_sign(c);
    let (v1, im1) = parse_term(c, sign)?;
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    if im1 {
        im = v1;
    } else {
        re = v1;
    }
    if matches!(c.peek(), Some(b'+') | Some(b'-')) {
        let pos = c.pos;
        let sign = parse_sign(c);
        let (v2, im2) = parse_term(c, sign)?;
        if im2 == im1 {
            return Err(Error::parse(pos, "duplicate real or imaginary term"));
        }
        if im2 {
            im = v2;
        } else {
            re = v2;
        }
    }
    Ok(GaussianInt::new(re, im))
}

/// Parse a Gaussian integer literal such as `1+2i`, `-3`, `4i`, or `i`.
pub fn parse_gaussian_int(s: &str) -> Result<GaussianInt> {
    let mut c = Cursor::new(s.trim());
    let z = parse_gaussian_body(&mut c)?;
    if !c.done() {
        return Err(Error::parse(c.pos, "trailing input after Gaussian integer"));
    }
    Ok(z)
}

/// A quotient atom: a parenthesized Gaussian literal or a single signed term.
fn parse_atom(c: &mut Cursor) -> Result<GaussianInt> {
    if c.eat(b'(') {
        let z = parse_gaussian_body(c)?;
        if !c.eat(b')') {
            return Err(Error::parse(c.pos, "expected ')'"));
        }
        return Ok(z);
    }
    let sign = parse_sign(c);
    let (v, is_im) = parse_term(c, sign)?;
    Ok(if is_im {
        GaussianInt::new(BigInt::zero(), v)
    } else {
        GaussianInt::new(v, BigInt::zero())
    })
}

/// A signed rational coefficient `p` or `p/q`.
fn parse_rat_term(c: &mut Cursor, sign: i8) -> Result<(Rat, bool)> {
    if c.eat(b'i') {
        return Ok((Rat::from_integer(BigInt::from(sign)), true));
    }
    let pos = c.pos;
    let Some(p) = c.digits() else {
        return Err(Error::parse(pos, "expected digits or 'i'"));
    };
    let mut val = Rat::from_integer(BigInt::from(sign) * p);
    if c.eat(b'/') {
        let pos = c.pos;
        let Some(q) = c.digits() else {
            return Err(Error::parse(pos, "expected denominator digits"));
        };
        if q.is_zero() {
            return Err(Error::parse(pos, "zero denominator"));
        }
        val /= Rat::from_integer(q);
    }
    let is_im = c.eat(b'i');
    Ok((val, is_im))
}

/// Parse a point of `Q(i)`.
///
/// Accepted forms: a quotient of Gaussian-integer literals with compound
/// parts parenthesized, e.g. `(2+1i)/5`, `i/(1-1i)`, `1+2i`; or rational
/// components, e.g. `1/3+1/6i`, `-1/2i`.
pub fn parse_gaussian_rational(s: &str) -> Result<GaussianRational> {
    let trimmed = s.trim();
    // Quotient form first.
    let quotient = (|| -> Result<GaussianRational> {
        let mut c = Cursor::new(trimmed);
        let num = parse_atom(&mut c)?;
        let out = if c.eat(b'/') {
            let den = parse_atom(&mut c)?;
            GaussianRational::new(num, den)?
        } else {
            GaussianRational::from_int(num)
        };
        if !c.done() {
            return Err(Error::parse(c.pos, "trailing input"));
        }
        Ok(out)
    })();
    if let Ok(v) = quotient {
        return Ok(v);
    }
    // Component form.
    let mut c = Cursor::new(trimmed);
    let sign = parse_sign(&mut c);
    let (v1, im1) = parse_rat_term(&mut c, sign)?;
    let (mut re, mut im) = (Rat::zero(), Rat::zero());
    if im1 {
        im = v1;
    } else {
        re = v1;
    }
    if matches!(c.peek(), Some(b'+') | Some(b'-')) {
        let pos = c.pos;
        let sign = parse_sign(&mut c);
        let (v2, im2) = parse_rat_term(&mut c, sign)?;
        if im2 == im1 {
            return Err(Error::parse(pos, "duplicate real or imaginary term"));
        }
        if im2 {
            im = v2;
        } else {
            re = v2;
        }
    }
    if !c.done() {
        return Err(Error::parse(c.pos, "trailing input"));
    }
    Ok(GaussianRational::from_components(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_is_multiplicative() {
        let a = gi(3, -7);
        let b = gi(-2, 5);
        assert_eq!(a.mul_ref(&b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn canonical_associate_quadrant() {
        for (z, want) in [
            (gi(0, 3), gi(3, 0)),
            (gi(-1, 2), gi(2, 1)),
            (gi(1, -2), gi(2, 1)),
            (gi(5, 0), gi(5, 0)),
            (gi(1, 1), gi(1, 1)),
        ] {
            let (c, u) = z.canonical_associate();
            assert_eq!(c, want);
            assert_eq!(u.apply(&z), c);
        }
    }

    #[test]
    fn euclid_divide_examples() {
        let (k, r) = euclid_divide(&gi(3, 2), &gi(5, 0)).unwrap();
        assert_eq!((k, r), (gi(1, 0), gi(-2, 2)));
        let (k, r) = euclid_divide(&gi(6, 0), &gi(2, 0)).unwrap();
        assert_eq!((k, r), (gi(3, 0), gi(0, 0)));
        let (k, r) = euclid_divide(&gi(1, 1), &gi(3, 0)).unwrap();
        assert_eq!((k, r), (gi(0, 0), gi(1, 1)));
        assert!(euclid_divide(&gi(1, 1), &GaussianInt::zero()).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&gi(1, 2), &gi(1, -2)).unwrap(), gi(1, 0));
        assert_eq!(gcd(&gi(5, 0), &gi(1, 2)).unwrap(), gi(1, 2).canonical_associate().0);
        assert_eq!(gcd(&GaussianInt::zero(), &gi(3, 1)).unwrap(), gi(3, 1));
        assert!(gcd(&GaussianInt::zero(), &GaussianInt::zero()).is_err());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = gi(12, 5);
        let b = gi(3, -7);
        let (g, s, t) = ext_gcd(&a, &b).unwrap();
        assert_eq!(s.mul_ref(&a) + t.mul_ref(&b), g);
        assert_eq!(g, gcd(&a, &b).unwrap());
    }

    #[test]
    fn factor_examples() {
        let f = factor(&gi(5, 0)).unwrap();
        assert_eq!(f.product(), gi(5, 0));
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|(p, e)| p.norm() == BigInt::from(5) && *e == 1));

        let f = factor(&gi(2, 0)).unwrap();
        assert_eq!(f.product(), gi(2, 0));
        assert_eq!(f.factors, vec![(gi(1, 1), 2)]);
        assert_eq!(f.unit, Unit::MinusI);

        let f = factor(&gi(3, 0)).unwrap();
        assert_eq!(f.factors, vec![(gi(3, 0), 1)]);
        assert_eq!(f.unit, Unit::One);

        assert!(factor(&GaussianInt::zero()).is_err());
    }

    #[test]
    fn factor_round_trip_grid() {
        for re in -6i64..=6 {
            for im in -6i64..=6 {
                if re == 0 && im == 0 {
                    continue;
                }
                let z = gi(re, im);
                let f = factor(&z).unwrap();
                assert_eq!(f.product(), z, "round trip failed for {z}");
                // primes pairwise non-associate
                for i in 0..f.factors.len() {
                    for j in i + 1..f.factors.len() {
                        let (a, b) = (&f.factors[i].0, &f.factors[j].0);
                        assert_ne!(a.canonical_associate().0, b.canonical_associate().0);
                    }
                }
            }
        }
    }

    #[test]
    fn visibility() {
        assert!(!is_visible(&gi(2, 4)));
        assert!(is_visible(&gi(1, 2)));
        assert!(!is_odd_visible(&gi(1, 1)));
        assert!(is_odd_visible(&gi(1, 2)));
        assert!(!is_odd_visible(&gi(3, 3)));
    }

    #[test]
    fn rational_reduction_and_parts() {
        let x = GaussianRational::new(gi(2, 4), gi(2, 0)).unwrap();
        assert_eq!(x, GaussianRational::from_int(gi(1, 2)));
        let y = GaussianRational::new(gi(0, 1), gi(1, 2)).unwrap();
        // i/(1+2i) = (2+i)/5
        assert_eq!(y.re(), Rat::new(BigInt::from(2), BigInt::from(5)));
        assert_eq!(y.im(), Rat::new(BigInt::from(1), BigInt::from(5)));
        assert!(!y.is_integral());
        assert!(GaussianRational::new(gi(1, 0), GaussianInt::zero()).is_err());
    }

    #[test]
    fn rational_arithmetic() {
        let a = GaussianRational::new(gi(1, 0), gi(2, 0)).unwrap();
        let b = GaussianRational::new(gi(0, 1), gi(2, 0)).unwrap();
        let s = a.add(&b);
        assert_eq!(s, GaussianRational::new(gi(1, 1), gi(2, 0)).unwrap());
        let p = s.mul(&s.conj());
        assert_eq!(p, GaussianRational::new(gi(1, 0), gi(2, 0)).unwrap());
    }

    #[test]
    fn display_forms() {
        assert_eq!(gi(1, 2).to_string(), "1+2i");
        assert_eq!(gi(-3, 0).to_string(), "-3");
        assert_eq!(gi(3, -4).to_string(), "3-4i");
        assert_eq!(gi(0, -1).to_string(), "-1i");
        let x = GaussianRational::new(gi(2, 1), gi(3, 0)).unwrap();
        assert_eq!(x.to_string(), "(2+1i)/3");
        // reduction through a split denominator: 5 = (2+i)(2-i)
        let y = GaussianRational::new(gi(2, 1), gi(5, 0)).unwrap();
        assert_eq!(y.to_string(), "1i/(1+2i)");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_gaussian_int("1+2i").unwrap(), gi(1, 2));
        assert_eq!(parse_gaussian_int("-3").unwrap(), gi(-3, 0));
        assert_eq!(parse_gaussian_int(" i ").unwrap(), gi(0, 1));
        assert_eq!(parse_gaussian_int("-i").unwrap(), gi(0, -1));
        assert_eq!(parse_gaussian_int("2i-5").unwrap(), gi(-5, 2));
        assert!(parse_gaussian_int("1+2i+3").is_err());
        assert!(parse_gaussian_int("1+2j").is_err());

        let x = parse_gaussian_rational("(2+1i)/5").unwrap();
        assert_eq!(x, GaussianRational::new(gi(2, 1), gi(5, 0)).unwrap());
        let y = parse_gaussian_rational("1/3+1/6i").unwrap();
        assert_eq!(y, GaussianRational::new(gi(2, 1), gi(6, 0)).unwrap());
        let z = parse_gaussian_rational("i/(1+2i)").unwrap();
        assert_eq!(z, GaussianRational::new(gi(0, 1), gi(1, 2)).unwrap());
        let w = parse_gaussian_rational("1/2").unwrap();
        assert_eq!(w, GaussianRational::new(gi(1, 0), gi(2, 0)).unwrap());
        assert!(parse_gaussian_rational("(2+i/5").is_err());
        assert!(parse_gaussian_rational("1/0").is_err());
    }

    #[test]
    fn parse_display_round_trip() {
        for re in [-3i64, 0, 1, 7] {
            for im in [-2i64, 0, 1, 5] {
                let z = gi(re, im);
                assert_eq!(parse_gaussian_int(&z.to_string()).unwrap(), z);
            }
        }
        for (n, d) in [((1, 2), (2, 0)), ((2, 1), (5, 0)), ((0, 1), (1, -2)), ((-3, 4), (7, 1))] {
            let x = GaussianRational::new(gi(n.0, n.1), gi(d.0, d.1)).unwrap();
            assert_eq!(parse_gaussian_rational(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn numerator_associate_form() {
        let (z, u) = gi(2, 1).numerator_associate().unwrap();
        assert_eq!(z, gi(1, -2));
        assert_eq!(u.apply(&gi(2, 1)), z);
        assert!(gi(1, 1).numerator_associate().is_none());
        let (z, _) = gi(-3, 4).numerator_associate().unwrap();
        assert_eq!(z, gi(3, -4));
    }

    #[test]
    fn inverse_mod_works() {
        let z = gi(1, 2);
        let inv = inverse_mod(&gi(1, -2), &z).unwrap();
        let prod = inv.mul_ref(&gi(1, -2));
        // prod = 1 (mod z)
        let (_, r) = euclid_divide(&(prod - gi(1, 0)), &z).unwrap();
        assert!(r.is_zero());
    }
}
