//! Closed formulas for the Alexander polynomial of a doubly primitive knot.
//!
//! With `c(i)` and the hit indices from [`SequenceTables`]:
//!
//! * `F(t)   = sum_{i=0}^{k-1} t^(Phi(i)p - Psi(i)k)`
//! * `F_X(t) = sum_{i=1}^{p} t^c(i)`
//! * `F_Y(t) = sum_{j=1}^{k} t^(c(i_j) - p)`
//!
//! and the Alexander polynomial is `F_Y / [k] = F_X / [p] = F / [k]` up to a
//! unit `±t^n`. Knot genus is half the span of the result, since these knots
//! are fibered.

use thiserror::Error;

use crate::laurent::{bracket, canonicalize, exact_divide, LaurentError, LaurentPoly};
use crate::params::SequenceTables;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("NotDivisible: {0} has no exact quotient")]
    NotDivisible(Quotient),
    #[error("CrossCheckMismatch: F_Y/[k] gives {via_y} but F_X/[p] gives {via_x}")]
    CrossCheckMismatch { via_y: LaurentPoly, via_x: LaurentPoly },
    #[error(transparent)]
    Arithmetic(#[from] LaurentError),
}

/// Which of the three divisions failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quotient {
    FyByK,
    FxByP,
    FByK,
}

impl std::fmt::Display for Quotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Quotient::FyByK => "F_Y/[k]",
            Quotient::FxByP => "F_X/[p]",
            Quotient::FByK => "F/[k]",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("the zero polynomial has no genus")]
    ZeroPolynomial,
    #[error("OddSpan: span {0} is odd, so this is not an Alexander polynomial of a knot")]
    OddSpan(i64),
}

fn sum_of_monomials(exps: impl IntoIterator<Item = i64>) -> LaurentPoly {
    LaurentPoly::from_terms(exps.into_iter().map(|e| (e, 1)))
        .expect("a sum of at most p unit monomials cannot overflow")
}

/// `F(t)`, built from `Psi` and `Phi`.
pub fn f_formula(tables: &SequenceTables) -> LaurentPoly {
    let (p, k) = (tables.p(), tables.k());
    sum_of_monomials(
        (0..k as usize).map(|i| i64::from(tables.phi(i)) * p - i64::from(tables.psi(i)) * k),
    )
}

/// `F_X(t) = sum t^c(i)`.
pub fn f_x_closed(tables: &SequenceTables) -> LaurentPoly {
    sum_of_monomials(tables.c_values().iter().copied())
}

/// `F_Y(t) = sum t^(c(i_j) - p)`.
pub fn f_y_closed(tables: &SequenceTables) -> LaurentPoly {
    let p = tables.p();
    sum_of_monomials(tables.hit_indices().iter().map(|&i| tables.c(i) - p))
}

/// `F_X` again, through the permutation: `sum_{i=0}^{p-1} t^((1-Psi(i))k + Phi(i)p)`.
pub fn f_x_from_permutation(tables: &SequenceTables) -> LaurentPoly {
    let (p, k) = (tables.p(), tables.k());
    sum_of_monomials(
        (0..p as usize)
            .map(|i| (1 - i64::from(tables.psi(i))) * k + i64::from(tables.phi(i)) * p),
    )
}

/// The three raw quotients, before any normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotients {
    /// `F_Y / [k]`.
    pub via_y: LaurentPoly,
    /// `F_X / [p]`.
    pub via_x: LaurentPoly,
    /// `F / [k]`.
    pub via_f: LaurentPoly,
}

impl Quotients {
    /// Whether all three agree up to a unit.
    pub fn agree(&self) -> bool {
        let y = canonicalize(&self.via_y);
        y == canonicalize(&self.via_x) && y == canonicalize(&self.via_f)
    }
}

fn divide(num: &LaurentPoly, h: i64, which: Quotient) -> Result<LaurentPoly, AlexanderError> {
    let den = bracket(h as u32, 1);
    exact_divide(num, &den).map_err(|e| match e {
        LaurentError::NotDivisible => AlexanderError::NotDivisible(which),
        other => AlexanderError::Arithmetic(other),
    })
}

pub fn quotients(tables: &SequenceTables) -> Result<Quotients, AlexanderError> {
    Ok(Quotients {
        via_y: divide(&f_y_closed(tables), tables.k(), Quotient::FyByK)?,
        via_x: divide(&f_x_closed(tables), tables.p(), Quotient::FxByP)?,
        via_f: divide(&f_formula(tables), tables.k(), Quotient::FByK)?,
    })
}

/// The canonical Alexander polynomial `F_Y / [k]`.
///
/// `F_X / [p]` is always computed alongside it and must agree up to a unit;
/// otherwise the result is [`AlexanderError::CrossCheckMismatch`].
pub fn alexander_polynomial(tables: &SequenceTables) -> Result<LaurentPoly, AlexanderError> {
    let via_y = canonicalize(&divide(&f_y_closed(tables), tables.k(), Quotient::FyByK)?);
    let via_x = canonicalize(&divide(&f_x_closed(tables), tables.p(), Quotient::FxByP)?);
    if via_y != via_x {
        return Err(AlexanderError::CrossCheckMismatch { via_y, via_x });
    }
    Ok(via_y)
}

/// Half the span of `delta`.
pub fn genus(delta: &LaurentPoly) -> Result<u64, GenusError> {
    let span = delta.span().ok_or(GenusError::ZeroPolynomial)?;
    if span % 2 != 0 {
        return Err(GenusError::OddSpan(span));
    }
    Ok((span / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{compute_tables, validate_triple};

    fn tables(p: i64, q: i64, k: i64) -> SequenceTables {
        compute_tables(&validate_triple(p, q, k).unwrap())
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied()).unwrap()
    }

    fn dense(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_dense(0, coeffs).unwrap()
    }

    #[test]
    fn f_formula_examples() {
        assert_eq!(f_formula(&tables(5, 4, 2)), poly(&[(-5, 1), (-8, 1)]));
        let pretzel = poly(&[(16, 1), (13, 1), (11, 1), (8, 1), (5, 1), (3, 1), (0, 1)])
            .shift(-23)
            .unwrap();
        assert_eq!(f_formula(&tables(18, 5, 7)), pretzel);
        assert_eq!(f_formula(&tables(7, 2, 3)), poly(&[(-3, 1), (-5, 1), (-7, 1)]));
    }

    #[test]
    fn closed_forms_for_trefoil() {
        let t = tables(5, 4, 2);
        assert_eq!(f_x_closed(&t), poly(&[(0, 1), (-2, 1), (-3, 1), (-4, 1), (-6, 1)]));
        assert_eq!(f_y_closed(&t), poly(&[(-5, 1), (-8, 1)]));
        assert_eq!(f_x_from_permutation(&t), f_x_closed(&t));
    }

    #[test]
    fn k_one_gives_single_term() {
        for (p, q) in [(2, 1), (7, 3), (12, 5)] {
            let t = tables(p, q, 1);
            assert_eq!(f_y_closed(&t), LaurentPoly::monomial(-p, 1));
            assert_eq!(alexander_polynomial(&t).unwrap(), LaurentPoly::one());
        }
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander_polynomial(&tables(5, 4, 2)).unwrap(), dense(&[1, -1, 1]));
        assert_eq!(
            alexander_polynomial(&tables(18, 5, 7)).unwrap(),
            dense(&[1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1])
        );
        assert_eq!(alexander_polynomial(&tables(7, 2, 3)).unwrap(), dense(&[1, -1, 1]));
    }

    #[test]
    fn raw_quotients_for_trefoil() {
        let q = quotients(&tables(5, 4, 2)).unwrap();
        assert_eq!(q.via_y, poly(&[(-8, 1), (-7, -1), (-6, 1)]));
        assert!(q.agree());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&dense(&[1, -1, 1])), Ok(1));
        assert_eq!(genus(&dense(&[1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1])), Ok(5));
        assert_eq!(genus(&LaurentPoly::one()), Ok(0));
        assert_eq!(genus(&dense(&[1, 1])), Err(GenusError::OddSpan(1)));
        assert_eq!(genus(&LaurentPoly::zero()), Err(GenusError::ZeroPolynomial));
    }

    #[test]
    fn invariants_on_small_triples() {
        for p in 2..=30i64 {
            for q in 1..p {
                for k in 1..p {
                    let Ok(triple) = validate_triple(p, q, k) else { continue };
                    let t = compute_tables(&triple);
                    let f = f_formula(&t);
                    assert_eq!(f.num_terms(), k as usize);
                    assert_eq!(f.coeff(-p), 1, "F must contain t^-p for {triple}");
                    assert_eq!(f, f_y_closed(&t));
                    assert_eq!(f_x_from_permutation(&t), f_x_closed(&t));

                    let mut residues: Vec<i64> = f.exponents().map(|e| e.rem_euclid(k)).collect();
                    residues.sort_unstable();
                    assert_eq!(residues, (0..k).collect::<Vec<_>>());

                    let q = quotients(&t).unwrap();
                    assert!(q.agree());
                    let delta = alexander_polynomial(&t).unwrap();
                    assert_eq!(delta.eval_at_one().unwrap().abs(), 1);
                    assert_eq!(canonicalize(&delta.reciprocal().unwrap()), delta);
                    assert!(genus(&delta).is_ok());
                }
            }
        }
    }
}
