//! Fox free differential calculus on the two-generator presentation
//! `<X, Y | R>` with `R = prod_{i=1}^{p} X Y^{E(i)}`.
//!
//! This is an independent route to the Alexander polynomial: derivatives are
//! taken letter by letter from the Fox axioms, abelianized on the fly by
//! `X -> t^-k`, `Y -> t^p`, and the gcd of the two entries of the Alexander
//! matrix is returned. Nothing here reads the closed formulas.

use std::fmt;

use crate::laurent::{gcd_primitive, LaurentError, LaurentPoly};
use crate::params::SequenceTables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

/// A freely reduced word: adjacent letters always have distinct generators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (Generator, i64)>) -> Self {
        let mut w = Self::new();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^exponent`, merging with the last letter and cancelling.
    pub fn push(&mut self, generator: Generator, exponent: i64) {
        if exponent == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.generator == generator => {
                last.exponent += exponent;
                if last.exponent == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(Letter { generator, exponent }),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn total_exponent(&self, generator: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| l.exponent)
            .sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.iter().all(|l| l.exponent != 0)
            && self.letters.windows(2).all(|w| w[0].generator != w[1].generator)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let g = match l.generator {
                Generator::X => "X",
                Generator::Y => "Y",
            };
            if l.exponent == 1 {
                f.write_str(g)?;
            } else {
                write!(f, "{g}^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}

/// Exponents of `t` assigned to `X` and `Y` by abelianization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbelianizationWeights {
    pub weight_x: i64,
    pub weight_y: i64,
}

impl AbelianizationWeights {
    /// `X -> t^-k`, `Y -> t^p`.
    pub fn for_tables(tables: &SequenceTables) -> Self {
        Self {
            weight_x: -tables.k(),
            weight_y: tables.p(),
        }
    }

    pub fn weight(&self, g: Generator) -> i64 {
        match g {
            Generator::X => self.weight_x,
            Generator::Y => self.weight_y,
        }
    }

    /// Abelianized image of a whole word, as an exponent of `t`.
    pub fn word_weight(&self, w: &FreeWord) -> i64 {
        w.letters().iter().map(|l| l.exponent * self.weight(l.generator)).sum()
    }
}

/// The relator `prod_{i=1}^{p} X Y^{E(i)}`.
pub fn relator(tables: &SequenceTables) -> FreeWord {
    let mut w = FreeWord::new();
    for &hit in tables.e_values() {
        w.push(Generator::X, 1);
        if hit {
            w.push(Generator::Y, 1);
        }
    }
    w
}

/// The abelianized Fox derivative `a(dw/dg)`.
///
/// Walks the word once. With `u` the prefix before a letter `h^n`, the
/// product rule `d(uv) = du + u dv` reduces everything to powers:
/// `d(g^n)/dg = 1 + g + ... + g^(n-1)` for `n > 0`,
/// `d(g^n)/dg = -(g^-1 + ... + g^n)` for `n < 0`, and `d(h^n)/dg = 0` for
/// `h != g`.
pub fn fox_derivative_abelianized(
    w: &FreeWord,
    generator: Generator,
    weights: &AbelianizationWeights,
) -> Result<LaurentPoly, LaurentError> {
    let wg = weights.weight(generator);
    let mut prefix = 0i64;
    let mut terms: Vec<(i64, i64)> = Vec::new();
    for l in w.letters() {
        if l.generator == generator {
            if l.exponent > 0 {
                for r in 0..l.exponent {
                    terms.push((prefix + r * wg, 1));
                }
            } else {
                for r in 1..=-l.exponent {
                    terms.push((prefix - r * wg, -1));
                }
            }
        }
        prefix += l.exponent * weights.weight(l.generator);
    }
    LaurentPoly::from_terms(terms)
}

/// Both entries `(F_X, F_Y)` of the Alexander matrix, via Fox calculus.
pub fn alexander_matrix(tables: &SequenceTables) -> Result<(LaurentPoly, LaurentPoly), LaurentError> {
    let w = relator(tables);
    let weights = AbelianizationWeights::for_tables(tables);
    Ok((
        fox_derivative_abelianized(&w, Generator::X, &weights)?,
        fox_derivative_abelianized(&w, Generator::Y, &weights)?,
    ))
}

/// `gcd(F_X, F_Y)` in canonical form.
pub fn oracle_alexander(tables: &SequenceTables) -> Result<LaurentPoly, LaurentError> {
    let (fx, fy) = alexander_matrix(tables)?;
    gcd_primitive(&fx, &fy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::mul;
    use crate::params::{compute_tables, validate_triple};
    use proptest::prelude::*;
    use Generator::{X, Y};

    fn tables(p: i64, q: i64, k: i64) -> SequenceTables {
        compute_tables(&validate_triple(p, q, k).unwrap())
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied()).unwrap()
    }

    #[test]
    fn trefoil_relator() {
        let w = relator(&tables(5, 4, 2));
        assert_eq!(w, FreeWord::from_letters([(X, 4), (Y, 1), (X, 1), (Y, 1)]));
        assert_eq!(w.to_string(), "X^4 Y X Y");
    }

    #[test]
    fn k_one_relator() {
        for (p, q) in [(3, 1), (8, 3), (11, 7)] {
            let w = relator(&tables(p, q, 1));
            assert_eq!(w, FreeWord::from_letters([(X, p), (Y, 1)]));
        }
    }

    #[test]
    fn pretzel_relator_counts() {
        let w = relator(&tables(18, 5, 7));
        assert!(w.is_reduced());
        assert_eq!(w.total_exponent(X), 18);
        assert_eq!(w.total_exponent(Y), 7);
    }

    #[test]
    fn derivative_axioms() {
        let weights = AbelianizationWeights { weight_x: -2, weight_y: 5 };
        let xy = FreeWord::from_letters([(X, 1), (Y, 1)]);
        assert_eq!(fox_derivative_abelianized(&xy, X, &weights).unwrap(), LaurentPoly::one());
        assert_eq!(fox_derivative_abelianized(&xy, Y, &weights).unwrap(), LaurentPoly::monomial(-2, 1));
        let x_inv = FreeWord::from_letters([(X, -1)]);
        assert_eq!(fox_derivative_abelianized(&x_inv, X, &weights).unwrap(), LaurentPoly::monomial(2, -1));
        assert!(fox_derivative_abelianized(&x_inv, Y, &weights).unwrap().is_zero());
    }

    #[test]
    fn trefoil_derivatives() {
        let (fx, fy) = alexander_matrix(&tables(5, 4, 2)).unwrap();
        assert_eq!(fx, poly(&[(0, 1), (-2, 1), (-3, 1), (-4, 1), (-6, 1)]));
        assert_eq!(fy, poly(&[(-5, 1), (-8, 1)]));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_alexander(&tables(5, 4, 2)).unwrap(), LaurentPoly::from_dense(0, &[1, -1, 1]).unwrap());
        assert_eq!(
            oracle_alexander(&tables(18, 5, 7)).unwrap(),
            LaurentPoly::from_dense(0, &[1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1]).unwrap()
        );
        assert_eq!(oracle_alexander(&tables(13, 5, 1)).unwrap(), LaurentPoly::one());
    }

    fn word() -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((any::<bool>(), -3i64..=3), 0..12)
            .prop_map(|v| FreeWord::from_letters(v.into_iter().map(|(b, e)| (if b { X } else { Y }, e))))
    }

    proptest! {
        // a(w) - 1 = (a(X) - 1) dw/dX + (a(Y) - 1) dw/dY
        #[test]
        fn fundamental_identity(w in word(), wx in -6i64..6, wy in -6i64..6) {
            prop_assert!(w.is_reduced());
            let weights = AbelianizationWeights { weight_x: wx, weight_y: wy };
            let dx = fox_derivative_abelianized(&w, X, &weights).unwrap();
            let dy = fox_derivative_abelianized(&w, Y, &weights).unwrap();
            let gx = poly(&[(wx, 1), (0, -1)]);
            let gy = poly(&[(wy, 1), (0, -1)]);
            let rhs = &mul(&gx, &dx).unwrap() + &mul(&gy, &dy).unwrap();
            let lhs = poly(&[(weights.word_weight(&w), 1), (0, -1)]);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
