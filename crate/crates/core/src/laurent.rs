//! Exact integer Laurent polynomials.
//!
//! A [`LaurentPoly`] is a finite map from signed exponents to nonzero `i64`
//! coefficients. Every arithmetic operation is checked: overflow surfaces as
//! [`LaurentError::Overflow`] and is never wrapped.
//!
//! Two renderings are part of the public contract:
//!
//! * text, terms in ascending exponent order: `1 - t + t^3 - t^4`,
//!   `-2t^-1 + 3`, `0` for the zero polynomial;
//! * structured, [`DensePoly`]: `{"min_exp": e, "coeffs": [..]}` with the
//!   dense coefficient list running upward from `min_exp`. The zero
//!   polynomial is `{"min_exp": 0, "coeffs": []}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("integer overflow in Laurent polynomial arithmetic")]
    Overflow,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no exact quotient exists over the integers")]
    NotDivisible,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
}

type Result<T> = std::result::Result<T, LaurentError>;

/// Dense buffers are used for multiplication and division only while the
/// exponent span stays below this many slots.
const DENSE_SPAN_LIMIT: i64 = 1 << 22;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

/// Structured rendering of a Laurent polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensePoly {
    pub min_exp: i64,
    pub coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `coeff * t^exp`; a zero coefficient gives the zero polynomial.
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Sums the given `(exponent, coefficient)` pairs; repeated exponents
    /// accumulate.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_unsorted(terms.into_iter().filter(|&(_, c)| c != 0).collect())
    }

    fn from_unsorted(mut terms: Vec<(i64, i64)>) -> Result<Self> {
        terms.sort_unstable_by_key(|&(e, _)| e);
        let mut merged: Vec<(i64, i64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == e => {
                    *acc = acc.checked_add(c).ok_or(LaurentError::Overflow)?;
                }
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        Ok(Self {
            terms: merged.into_iter().collect(),
        })
    }

    /// Builds `sum coeffs[i] * t^(min_exp + i)`.
    pub fn from_dense(min_exp: i64, coeffs: &[i64]) -> Result<Self> {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, &c)| {
                i64::try_from(i)
                    .ok()
                    .and_then(|i| min_exp.checked_add(i))
                    .map(|e| (e, c))
                    .ok_or(LaurentError::Overflow)
            })
            .collect::<Result<_>>()?;
        Ok(Self { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, or `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn to_dense(&self) -> DensePoly {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut coeffs = vec![0; (hi - lo) as usize + 1];
                for (e, c) in self.terms() {
                    coeffs[(e - lo) as usize] = c;
                }
                DensePoly { min_exp: lo, coeffs }
            }
            _ => DensePoly {
                min_exp: 0,
                coeffs: Vec::new(),
            },
        }
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let terms = self
            .terms()
            .map(|(e, c)| c.checked_neg().map(|c| (e, c)).ok_or(LaurentError::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self { terms })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut terms = self.terms.clone();
        for (e, c) in other.terms() {
            let slot = terms.entry(e).or_insert(0);
            *slot = slot.checked_add(c).ok_or(LaurentError::Overflow)?;
            if *slot == 0 {
                terms.remove(&e);
            }
        }
        Ok(Self { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut terms = self.terms.clone();
        for (e, c) in other.terms() {
            let slot = terms.entry(e).or_insert(0);
            *slot = slot.checked_sub(c).ok_or(LaurentError::Overflow)?;
            if *slot == 0 {
                terms.remove(&e);
            }
        }
        Ok(Self { terms })
    }

    /// Multiplication by `t^n`.
    pub fn shift(&self, n: i64) -> Result<Self> {
        let terms = self
            .terms()
            .map(|(e, c)| e.checked_add(n).map(|e| (e, c)).ok_or(LaurentError::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self { terms })
    }

    pub fn scale(&self, factor: i64) -> Result<Self> {
        if factor == 0 {
            return Ok(Self::zero());
        }
        let terms = self
            .terms()
            .map(|(e, c)| c.checked_mul(factor).map(|c| (e, c)).ok_or(LaurentError::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self { terms })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (Some(a_lo), Some(a_hi), Some(b_lo), Some(b_hi)) =
            (self.min_exp(), self.max_exp(), other.min_exp(), other.max_exp())
        else {
            return Ok(Self::zero());
        };
        let lo = a_lo.checked_add(b_lo).ok_or(LaurentError::Overflow)?;
        let hi = a_hi.checked_add(b_hi).ok_or(LaurentError::Overflow)?;
        let span = hi.checked_sub(lo).ok_or(LaurentError::Overflow)?;
        let pairs = (self.num_terms() as i64).saturating_mul(other.num_terms() as i64);
        if span < DENSE_SPAN_LIMIT && span <= pairs.saturating_mul(8).saturating_add(64) {
            let mut acc = vec![0i64; span as usize + 1];
            for (ea, ca) in self.terms() {
                for (eb, cb) in other.terms() {
                    let slot = &mut acc[(ea - a_lo + eb - b_lo) as usize];
                    let prod = ca.checked_mul(cb).ok_or(LaurentError::Overflow)?;
                    *slot = slot.checked_add(prod).ok_or(LaurentError::Overflow)?;
                }
            }
            Self::from_dense(lo, &acc)
        } else {
            let mut acc = Vec::with_capacity(pairs as usize);
            for (ea, ca) in self.terms() {
                for (eb, cb) in other.terms() {
                    acc.push((ea + eb, ca.checked_mul(cb).ok_or(LaurentError::Overflow)?));
                }
            }
            Self::from_unsorted(acc)
        }
    }

    /// Substitutes `t -> t^-1`.
    pub fn reciprocal(&self) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms() {
            terms.insert(e.checked_neg().ok_or(LaurentError::Overflow)?, c);
        }
        Ok(Self { terms })
    }

    /// Value at `t = 1`, i.e. the coefficient sum.
    pub fn eval_at_one(&self) -> Result<i64> {
        self.terms()
            .try_fold(0i64, |acc, (_, c)| acc.checked_add(c))
            .ok_or(LaurentError::Overflow)
    }
}

/// Exact product of two Laurent polynomials.
pub fn mul(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    a.checked_mul(b)
}

/// Returns `q` with `num = den * q`, or [`LaurentError::NotDivisible`] when
/// no such `q` with integer coefficients exists.
pub fn exact_divide(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    let (Some(d_lo), Some(d_hi)) = (den.min_exp(), den.max_exp()) else {
        return Err(LaurentError::DivisionByZero);
    };
    let (Some(n_lo), Some(n_hi)) = (num.min_exp(), num.max_exp()) else {
        return Ok(LaurentPoly::zero());
    };
    if n_hi - n_lo < d_hi - d_lo {
        return Err(LaurentError::NotDivisible);
    }
    // t^a [h]: divide num (1 - t) by t^a (1 - t^h) instead, two terms per step.
    let h = d_hi - d_lo + 1;
    if h > 2 && den.num_terms() as i64 == h && den.terms().all(|(_, c)| c == 1) {
        let num = mul(num, &LaurentPoly::from_terms([(0, 1), (1, -1)])?)?;
        let den = LaurentPoly::from_terms([(d_lo, 1), (d_lo + h, -1)])?;
        return exact_divide(&num, &den);
    }
    if n_hi.checked_sub(n_lo).is_some_and(|s| s < DENSE_SPAN_LIMIT) {
        divide_dense(num, den)
    } else {
        divide_sparse(num, den)
    }
}

fn divide_dense(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    let dense = num.to_dense();
    let mut rem = dense.coeffs;
    let d_lo = den.min_exp().expect("nonzero divisor");
    let d_span = (den.max_exp().expect("nonzero divisor") - d_lo) as usize;
    let lead = den.coeff(d_lo + d_span as i64);
    let den_terms: Vec<(usize, i64)> = den.terms().map(|(e, c)| ((e - d_lo) as usize, c)).collect();
    let q_lo = dense.min_exp.checked_sub(d_lo).ok_or(LaurentError::Overflow)?;

    let mut quotient = Vec::new();
    for top in (d_span..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        if c % lead != 0 {
            return Err(LaurentError::NotDivisible);
        }
        let qc = c / lead;
        let base = top - d_span;
        for &(off, dc) in &den_terms {
            let prod = qc.checked_mul(dc).ok_or(LaurentError::Overflow)?;
            let slot = &mut rem[base + off];
            *slot = slot.checked_sub(prod).ok_or(LaurentError::Overflow)?;
        }
        quotient.push((q_lo + base as i64, qc));
    }
    if rem[..d_span].iter().any(|&c| c != 0) {
        return Err(LaurentError::NotDivisible);
    }
    Ok(LaurentPoly {
        terms: quotient.into_iter().rev().collect(),
    })
}

fn divide_sparse(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    let d_lo = den.min_exp().expect("nonzero divisor");
    let d_hi = den.max_exp().expect("nonzero divisor");
    let lead = den.coeff(d_hi);
    // Any exact quotient has lowest exponent n_lo - d_lo.
    let q_floor = num
        .min_exp()
        .expect("nonzero dividend")
        .checked_sub(d_lo)
        .ok_or(LaurentError::Overflow)?;

    let mut rem = num.terms.clone();
    let mut quotient = BTreeMap::new();
    while let Some((&top, &c)) = rem.iter().next_back() {
        let shift = top.checked_sub(d_hi).ok_or(LaurentError::Overflow)?;
        if shift < q_floor || c % lead != 0 {
            return Err(LaurentError::NotDivisible);
        }
        let qc = c / lead;
        for (e, dc) in den.terms() {
            let prod = qc.checked_mul(dc).ok_or(LaurentError::Overflow)?;
            let slot = rem.entry(e + shift).or_insert(0);
            *slot = slot.checked_sub(prod).ok_or(LaurentError::Overflow)?;
            if *slot == 0 {
                rem.remove(&(e + shift));
            }
        }
        quotient.insert(shift, qc);
    }
    Ok(LaurentPoly { terms: quotient })
}

/// The representative of `a` up to units `±t^n`: lowest exponent 0 and
/// positive lowest coefficient.
///
/// # Panics
///
/// If the lowest coefficient is negative and some coefficient is `i64::MIN`.
pub fn canonicalize(a: &LaurentPoly) -> LaurentPoly {
    let Some((lo, lead)) = a.terms().next() else {
        return LaurentPoly::zero();
    };
    let negate = lead < 0;
    let terms = a
        .terms()
        .map(|(e, c)| {
            let c = if negate {
                c.checked_neg().expect("i64::MIN coefficient cannot be negated")
            } else {
                c
            };
            (e - lo, c)
        })
        .collect();
    LaurentPoly { terms }
}

/// Equality up to multiplication by a unit `±t^n`.
pub fn equal_up_to_unit(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    canonicalize(a) == canonicalize(b)
}

/// `[h]^n = t^((h-1)n) + ... + t^n + 1`.
///
/// # Panics
///
/// If `h` or `n` is zero, or `(h-1)n` does not fit in an `i64`.
pub fn bracket(h: u32, n: u32) -> LaurentPoly {
    assert!(h >= 1 && n >= 1, "bracket needs h >= 1 and n >= 1");
    let step = i64::from(n);
    let terms = (0..i64::from(h)).map(|j| (j.checked_mul(step).expect("exponent overflow"), 1)).collect();
    LaurentPoly { terms }
}

/// The primitive gcd of `a` and `b` in the integer Laurent ring, in canonical
/// form.
///
/// Runs the Euclidean algorithm over the rationals, keeping each remainder as
/// its primitive integer multiple. Powers of `t` are units and are stripped
/// first. The computation tries `i128` and restarts with big integers if a
/// coefficient escapes that range.
pub fn gcd_primitive(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(LaurentError::GcdOfZeros),
        (false, true) => return primitive_canonical(a),
        (true, false) => return primitive_canonical(b),
        _ => {}
    }
    let da = a.to_dense().coeffs;
    let db = b.to_dense().coeffs;

    let fast: Option<Vec<i128>> = euclid_primitive(
        da.iter().map(|&c| i128::from(c)).collect(),
        db.iter().map(|&c| i128::from(c)).collect(),
    );
    let coeffs: Vec<i64> = match fast {
        Some(g) => g
            .into_iter()
            .map(|c| i64::try_from(c).map_err(|_| LaurentError::Overflow))
            .collect::<Result<_>>()?,
        None => {
            let g: Vec<BigInt> = euclid_primitive(
                da.iter().map(|&c| BigInt::from(c)).collect(),
                db.iter().map(|&c| BigInt::from(c)).collect(),
            )
            .expect("big-integer arithmetic does not overflow");
            g.into_iter()
                .map(|c| c.to_i64().ok_or(LaurentError::Overflow))
                .collect::<Result<_>>()?
        }
    };
    Ok(canonicalize(&LaurentPoly::from_dense(0, &coeffs)?))
}

fn primitive_canonical(a: &LaurentPoly) -> Result<LaurentPoly> {
    let content = a
        .terms()
        .fold(0i64, |g, (_, c)| g.gcd(&c));
    let terms = a.terms().map(|(e, c)| (e, c / content)).collect();
    Ok(canonicalize(&LaurentPoly { terms }))
}

trait EuclidCoeff: Clone + Integer + Signed + CheckedMul + CheckedSub {}
impl<T: Clone + Integer + Signed + CheckedMul + CheckedSub> EuclidCoeff for T {}

fn trim<T: EuclidCoeff>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn make_primitive<T: EuclidCoeff>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = c.div_floor(&g);
        }
    }
}

/// Primitive remainder of `a` modulo `b`, i.e. the remainder of the rational
/// division scaled to a primitive integer polynomial. `None` on overflow.
fn primitive_remainder<T: EuclidCoeff>(mut a: Vec<T>, b: &[T]) -> Option<Vec<T>> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    trim(&mut a);
    while a.len() > db && !a.is_empty() {
        let top = a.len() - 1;
        let la = a[top].clone();
        let g = la.gcd(&lb);
        let scale_a = lb.div_floor(&g);
        let scale_b = la.div_floor(&g);
        let shift = top - db;
        if !scale_a.is_one() {
            for c in a.iter_mut() {
                *c = c.checked_mul(&scale_a)?;
            }
        }
        for (i, bc) in b.iter().enumerate() {
            let prod = bc.checked_mul(&scale_b)?;
            a[shift + i] = a[shift + i].checked_sub(&prod)?;
        }
        trim(&mut a);
        make_primitive(&mut a);
    }
    Some(a)
}

fn euclid_primitive<T: EuclidCoeff>(mut a: Vec<T>, mut b: Vec<T>) -> Option<Vec<T>> {
    trim(&mut a);
    trim(&mut b);
    make_primitive(&mut a);
    make_primitive(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return Some(vec![T::one()]);
        }
        let r = primitive_remainder(a, &b)?;
        a = b;
        b = r;
    }
    Some(a)
}

impl From<&LaurentPoly> for DensePoly {
    fn from(p: &LaurentPoly) -> Self {
        p.to_dense()
    }
}

impl From<LaurentPoly> for DensePoly {
    fn from(p: LaurentPoly) -> Self {
        p.to_dense()
    }
}

impl TryFrom<DensePoly> for LaurentPoly {
    type Error = LaurentError;

    fn try_from(d: DensePoly) -> Result<Self> {
        LaurentPoly::from_dense(d.min_exp, &d.coeffs)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_dense().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dense = DensePoly::deserialize(d)?;
        LaurentPoly::try_from(dense).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (idx, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

// Operator sugar. These panic on overflow; library code uses the checked
// methods.

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        self.checked_add(rhs).expect("Laurent polynomial overflow")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        self.checked_sub(rhs).expect("Laurent polynomial overflow")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        self.checked_mul(rhs).expect("Laurent polynomial overflow")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("Laurent polynomial overflow")
    }
}
