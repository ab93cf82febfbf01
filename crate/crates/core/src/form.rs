//! The alternating form `1 + sum_{i=1}^{m} (-1)^i (t^{n_i} + t^{-n_i})` with
//! `0 < n_1 < ... < n_m`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDecomposition {
    pub m: usize,
    pub n_seq: Vec<i64>,
}

/// The property that ruled out the alternating form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormDefect {
    ZeroPolynomial,
    OddSpan,
    MissingCenterTerm,
    CoefficientNotUnit,
    NotReciprocal,
    NotAlternating,
    EvenTermCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("NotAlternatingForm: {0:?}")]
pub struct NotAlternatingForm(pub FormDefect);

/// Recenters `delta` about exponent 0 and fixes the sign so the constant
/// coefficient is positive. Returns `None` for zero or odd-span input.
pub fn symmetric_normalization(delta: &LaurentPoly) -> Option<LaurentPoly> {
    let (lo, hi) = (delta.min_exp()?, delta.max_exp()?);
    if (hi - lo) % 2 != 0 {
        return None;
    }
    let center = lo + (hi - lo) / 2;
    let sign = if delta.coeff(center) < 0 { -1 } else { 1 };
    delta.shift(-center).and_then(|d| d.scale(sign)).ok()
}

/// Extracts `m` and `n_1 < ... < n_m`.
///
/// The overall sign is chosen by the center coefficient: the trefoil's
/// `1 - t + t^2` becomes `-t^-1 + 1 - t` before matching.
pub fn form_decomposition(delta: &LaurentPoly) -> Result<FormDecomposition, NotAlternatingForm> {
    use FormDefect::*;
    let fail = |d| Err(NotAlternatingForm(d));

    let Some(span) = delta.span() else {
        return fail(ZeroPolynomial);
    };
    if span % 2 != 0 {
        return fail(OddSpan);
    }
    let sym = symmetric_normalization(delta).expect("even span checked above");

    if sym.terms().any(|(_, c)| c.abs() != 1) {
        return fail(CoefficientNotUnit);
    }
    if sym.coeff(0) != 1 {
        return fail(MissingCenterTerm);
    }
    if sym.terms().any(|(e, c)| sym.coeff(-e) != c) {
        return fail(NotReciprocal);
    }
    let coeffs: Vec<i64> = sym.terms().map(|(_, c)| c).collect();
    if coeffs.windows(2).any(|w| w[0] == w[1]) {
        return fail(NotAlternating);
    }
    if coeffs.len().is_multiple_of(2) {
        return fail(EvenTermCount);
    }

    let n_seq: Vec<i64> = sym.exponents().filter(|&e| e > 0).collect();
    Ok(FormDecomposition {
        m: n_seq.len(),
        n_seq,
    })
}

/// `1 + sum (-1)^i (t^{n_i} + t^{-n_i})`.
pub fn reconstruct(form: &FormDecomposition) -> LaurentPoly {
    let terms = std::iter::once((0, 1)).chain(form.n_seq.iter().enumerate().flat_map(|(i, &n)| {
        let sign = if i % 2 == 0 { -1 } else { 1 };
        [(n, sign), (-n, sign)]
    }));
    LaurentPoly::from_terms(terms).expect("unit coefficients")
}
