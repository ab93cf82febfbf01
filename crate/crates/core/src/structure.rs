//! Degree-sequence structure behind the closed formulas.
//!
//! Shifting `F_X` and `F_Y` so their lowest exponents are 0 gives
//! `G_X = t^-d F_X` and `G_Y = t^-e F_Y`. Each exponent of `G_Y` splits as
//! `d(i_j) + m(i_j) k` with `0 <= d(i_j) < k`; `m(i_j)` is the multiplicity.
//! Terms of `G_X` whose exponent reaches `p` are excessive, and they are
//! partitioned into levels `W(h) = {i : hp <= c(i) - d < (h+1)p}`.
//!
//! [`structure_analysis`] computes all of this and checks every identity
//! linking the pieces, including
//!
//! ```text
//! G_Y / [k] = G_X / [p] = 1 + (t-1) sum_{m(i_j)>0} t^{d(i_j)} [m(i_j)]^k
//! ```
//!
//! A failed identity is an [`IdentityViolation`]; it would mean a bug, not a
//! property of the input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alexander::{f_x_closed, f_y_closed};
use crate::laurent::{bracket, exact_divide, mul, LaurentError, LaurentPoly};
use crate::params::SequenceTables;

/// Per hit index `i_j`: the residue `d(i_j)` and multiplicity `m(i_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitEntry {
    pub index: usize,
    pub residue: i64,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    /// `d = min c(i)`.
    pub d_min: i64,
    /// `e = min (c(i_j) - p)`.
    pub e_min: i64,
    pub entries: Vec<HitEntry>,
    /// Level `h >= 1` to the indices in `W(h)`, ascending; empty levels omitted.
    pub excess_partition: BTreeMap<i64, Vec<usize>>,
    /// Highest nonempty level, 0 when nothing is excessive.
    pub ell: i64,
    pub product_form: LaurentPoly,
    /// Whether every excessive index lies in `W(1)`.
    pub w1_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `d = e + k`.
    MinimumShift,
    /// `{d(i_j)} = {0, ..., k-1}`.
    ResidueSet,
    /// Some `m(i_j)` is zero.
    ZeroMultiplicity,
    /// `ell <= k - 1`.
    HeightBound,
    /// `c(i_j) - d - nk >= p` iff `n <= m(i_j) - 1`.
    ImpactCriterion,
    /// An excessive `i` lies in `W(h)` iff exactly `h` intervals
    /// `[i_j, i_j + m(i_j) - 1]` contain it.
    ExcessMembership,
    /// `G_Y / [k]` equals the product form.
    ProductFormY,
    /// `G_X / [p]` equals the product form.
    ProductFormX,
    /// `sum_h [h]^p sum_{i in W(h)} t^(c(i)-d-hp) = sum t^{d(i_j)} [m(i_j)]^k`.
    LevelSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("IdentityViolation: {identity:?} fails for (p, q, k) = {triple}: {detail}")]
    IdentityViolation {
        identity: Identity,
        triple: String,
        detail: String,
    },
    #[error(transparent)]
    Arithmetic(#[from] LaurentError),
}

/// Just the excess height: `ell = floor((max c - min c) / p)`.
///
/// Cheap enough for bulk conjecture scans.
pub fn excess_height(tables: &SequenceTables) -> i64 {
    let c = tables.c_values();
    let lo = c.iter().copied().min().expect("p >= 2");
    let hi = c.iter().copied().max().expect("p >= 2");
    (hi - lo) / tables.p()
}

pub fn structure_analysis(tables: &SequenceTables) -> Result<StructureReport, StructureError> {
    let (p, k) = (tables.p(), tables.k());
    let pu = p as usize;
    let violation = |identity, detail: String| StructureError::IdentityViolation {
        identity,
        triple: tables.triple().to_string(),
        detail,
    };

    let d_min = tables.c_values().iter().copied().min().expect("p >= 2");
    let e_min = tables
        .hit_indices()
        .iter()
        .map(|&i| tables.c(i) - p)
        .min()
        .expect("k >= 1");
    if d_min != e_min + k {
        return Err(violation(Identity::MinimumShift, format!("d = {d_min}, e = {e_min}")));
    }

    let entries: Vec<HitEntry> = tables
        .hit_indices()
        .iter()
        .map(|&i| {
            let g = tables.c(i) - p - e_min;
            HitEntry {
                index: i,
                residue: g % k,
                multiplicity: g / k,
            }
        })
        .collect();

    let mut residues: Vec<i64> = entries.iter().map(|h| h.residue).collect();
    residues.sort_unstable();
    if residues.iter().copied().ne(0..k) {
        return Err(violation(Identity::ResidueSet, format!("{residues:?}")));
    }
    if entries.iter().all(|h| h.multiplicity > 0) {
        return Err(violation(Identity::ZeroMultiplicity, String::new()));
    }

    // Levels of every index; 0 means not excessive.
    let level: Vec<i64> = tables.c_values().iter().map(|c| (c - d_min) / p).collect();
    let mut excess_partition: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (offset, &h) in level.iter().enumerate() {
        if h >= 1 {
            excess_partition.entry(h).or_default().push(offset + 1);
        }
    }
    let ell = excess_partition.keys().next_back().copied().unwrap_or(0);
    if ell > k - 1 {
        return Err(violation(Identity::HeightBound, format!("ell = {ell}, k = {k}")));
    }

    for h in entries.iter().filter(|h| h.multiplicity > 0) {
        let c = tables.c(h.index);
        for n in 0..=h.multiplicity + 1 {
            if (c - d_min - n * k >= p) != (n < h.multiplicity) {
                return Err(violation(
                    Identity::ImpactCriterion,
                    format!("i_j = {}, m = {}, n = {n}", h.index, h.multiplicity),
                ));
            }
        }
    }

    // Count, for each i, the cyclic intervals [i_j, i_j + m(i_j) - 1] holding it.
    let mut cover = vec![0i64; pu + 1];
    for h in entries.iter().filter(|h| h.multiplicity > 0) {
        if h.multiplicity >= p {
            cover.iter_mut().skip(1).for_each(|c| *c += 1);
            continue;
        }
        for n in 0..h.multiplicity as usize {
            let i = (h.index - 1 + n) % pu + 1;
            cover[i] += 1;
        }
    }
    for (offset, &h) in level.iter().enumerate() {
        let i = offset + 1;
        if h >= 1 && cover[i] != h {
            return Err(violation(
                Identity::ExcessMembership,
                format!("i = {i} is in W({h}) but lies in {} intervals", cover[i]),
            ));
        }
    }

    // sum_{m>0} t^{d(i_j)} [m(i_j)]^k
    let mut excess_sum = LaurentPoly::zero();
    for h in entries.iter().filter(|h| h.multiplicity > 0) {
        let piece = bracket(h.multiplicity as u32, k as u32).shift(h.residue)?;
        excess_sum = excess_sum.checked_add(&piece)?;
    }
    let product_form = LaurentPoly::one()
        .checked_add(&excess_sum.shift(1)?)?
        .checked_sub(&excess_sum)?;

    let g_y = f_y_closed(tables).shift(-e_min)?;
    let via_y = exact_divide(&g_y, &bracket(k as u32, 1));
    if via_y.as_ref() != Ok(&product_form) {
        return Err(violation(Identity::ProductFormY, format!("{via_y:?} vs {product_form}")));
    }
    let g_x = f_x_closed(tables).shift(-d_min)?;
    let via_x = exact_divide(&g_x, &bracket(p as u32, 1));
    if via_x.as_ref() != Ok(&product_form) {
        return Err(violation(Identity::ProductFormX, format!("{via_x:?} vs {product_form}")));
    }

    let mut level_sum = LaurentPoly::zero();
    for (&h, members) in &excess_partition {
        let inner = LaurentPoly::from_terms(members.iter().map(|&i| (tables.c(i) - d_min - h * p, 1)))?;
        level_sum = level_sum.checked_add(&mul(&bracket(h as u32, p as u32), &inner)?)?;
    }
    if level_sum != excess_sum {
        return Err(violation(Identity::LevelSum, format!("{level_sum} vs {excess_sum}")));
    }

    Ok(StructureReport {
        d_min,
        e_min,
        entries,
        excess_partition,
        ell,
        product_form,
        w1_only: ell <= 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::alexander_polynomial;
    use crate::params::{compute_tables, validate_triple};

    fn tables(p: i64, q: i64, k: i64) -> SequenceTables {
        compute_tables(&validate_triple(p, q, k).unwrap())
    }

    #[test]
    fn trefoil_structure() {
        let r = structure_analysis(&tables(5, 4, 2)).unwrap();
        assert_eq!((r.d_min, r.e_min), (-6, -8));
        let pairs: Vec<(i64, i64)> = r.entries.iter().map(|h| (h.residue, h.multiplicity)).collect();
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
        assert_eq!(r.excess_partition, BTreeMap::from([(1, vec![5])]));
        assert_eq!(r.ell, 1);
        assert_eq!(r.product_form, LaurentPoly::from_dense(0, &[1, -1, 1]).unwrap());
        assert!(r.w1_only);
    }

    #[test]
    fn k_one_is_trivial() {
        for (p, q) in [(2, 1), (9, 4), (13, 6)] {
            let r = structure_analysis(&tables(p, q, 1)).unwrap();
            assert!(r.entries.iter().all(|h| h.multiplicity == 0));
            assert_eq!(r.product_form, LaurentPoly::one());
            assert!(r.excess_partition.is_empty());
            assert_eq!(r.ell, 0);
        }
    }

    #[test]
    fn pretzel_product_form_is_delta() {
        let t = tables(18, 5, 7);
        let r = structure_analysis(&t).unwrap();
        assert_eq!(r.product_form, alexander_polynomial(&t).unwrap());
    }

    #[test]
    fn excess_height_matches_partition() {
        for (p, q, k) in [(5, 4, 2), (18, 5, 7), (10, 3, 7), (23, 7, 11), (31, 12, 17)] {
            let t = tables(p, q, k);
            assert_eq!(excess_height(&t), structure_analysis(&t).unwrap().ell);
        }
    }

    #[test]
    fn identities_hold_on_small_triples() {
        for p in 2..=25i64 {
            for q in 1..p {
                for k in 1..p {
                    if let Ok(triple) = validate_triple(p, q, k) {
                        structure_analysis(&compute_tables(&triple)).unwrap();
                    }
                }
            }
        }
    }
}
