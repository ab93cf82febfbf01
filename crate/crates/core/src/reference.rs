//! The two worked examples with their published tables: the right-handed
//! trefoil as `K(L(5,4); 2)` and the `(-2,3,7)` pretzel knot as
//! `K(L(18,5); 7)`.

use serde::Serialize;

use crate::alexander::{alexander_polynomial, f_formula, genus};
use crate::laurent::LaurentPoly;
use crate::params::{compute_tables, validate_triple};

#[derive(Debug, Clone, Copy)]
pub struct ReferenceExample {
    pub name: &'static str,
    pub p: i64,
    pub q: i64,
    pub k: i64,
    /// `Psi(i)` for `i = 0..k`.
    pub psi: &'static [u32],
    /// `Phi(i)` for `i = 0..k`.
    pub phi: &'static [u32],
    /// `Phi(i)p - Psi(i)k` for `i = 0..k`.
    pub exponents: &'static [i64],
    /// Canonical Alexander polynomial, dense from `t^0`.
    pub delta: &'static [i64],
    pub genus: u64,
}

pub const TREFOIL: ReferenceExample = ReferenceExample {
    name: "right-handed trefoil",
    p: 5,
    q: 4,
    k: 2,
    psi: &[5, 4],
    phi: &[1, 0],
    exponents: &[-5, -8],
    delta: &[1, -1, 1],
    genus: 1,
};

pub const PRETZEL: ReferenceExample = ReferenceExample {
    name: "(-2,3,7)-pretzel knot",
    p: 18,
    q: 5,
    k: 7,
    psi: &[18, 11, 4, 15, 8, 1, 12],
    phi: &[6, 3, 1, 5, 2, 0, 4],
    exponents: &[-18, -23, -10, -15, -20, -7, -12],
    delta: &[1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1],
    genus: 5,
};

pub const ALL: [ReferenceExample; 2] = [TREFOIL, PRETZEL];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldComparison {
    pub field: &'static str,
    pub expected: String,
    pub actual: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Replay {
    pub name: &'static str,
    pub triple: (i64, i64, i64),
    pub fields: Vec<FieldComparison>,
}

impl Replay {
    pub fn matches(&self) -> bool {
        self.fields.iter().all(|f| f.matches)
    }
}

fn compare<T: std::fmt::Debug + PartialEq>(field: &'static str, expected: T, actual: T) -> FieldComparison {
    FieldComparison {
        field,
        matches: expected == actual,
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
    }
}

impl ReferenceExample {
    /// Recomputes every tabulated value and compares it with the stored one.
    pub fn replay(&self) -> Replay {
        let triple = validate_triple(self.p, self.q, self.k).expect("reference triples are valid");
        let t = compute_tables(&triple);
        let k = self.k as usize;
        let exps: Vec<i64> = (0..k)
            .map(|i| i64::from(t.phi(i)) * t.p() - i64::from(t.psi(i)) * t.k())
            .collect();
        let expected_f = LaurentPoly::from_terms(self.exponents.iter().map(|&e| (e, 1))).expect("unit terms");
        let expected_delta = LaurentPoly::from_dense(0, self.delta).expect("small polynomial");
        let delta = alexander_polynomial(&t);
        let g = delta.as_ref().ok().and_then(|d| genus(d).ok());

        let fields = vec![
            compare("Psi", self.psi, &t.psi_values()[..k]),
            compare("Phi", self.phi, &t.phi_values()[..k]),
            compare("exponents", self.exponents, &exps[..]),
            FieldComparison {
                field: "F",
                expected: expected_f.to_string(),
                actual: f_formula(&t).to_string(),
                matches: expected_f == f_formula(&t),
            },
            FieldComparison {
                field: "delta",
                expected: expected_delta.to_string(),
                actual: match &delta {
                    Ok(d) => d.to_string(),
                    Err(e) => e.to_string(),
                },
                matches: delta.as_ref() == Ok(&expected_delta),
            },
            compare("genus", Some(self.genus), g),
        ];
        Replay {
            name: self.name,
            triple: (self.p, self.q, self.k),
            fields,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_examples_replay() {
        for ex in ALL {
            let r = ex.replay();
            assert!(r.matches(), "{r:#?}");
        }
    }
}
