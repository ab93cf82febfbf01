//! Full invariant suite for a single triple.

use serde::Serialize;

use crate::alexander::{alexander_polynomial, f_formula, f_x_closed, f_x_from_permutation, f_y_closed, genus, quotients};
use crate::form::{form_decomposition, reconstruct, symmetric_normalization};
use crate::fox::{alexander_matrix, oracle_alexander};
use crate::laurent::{canonicalize, LaurentPoly};
use crate::params::{compute_tables, SaitoCheck, SequenceTables, SurgeryTriple};
use crate::structure::structure_analysis;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub triple: SurgeryTriple,
    pub saito: SaitoCheck,
    pub delta: Option<LaurentPoly>,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Collector(Vec<CheckOutcome>);

impl Collector {
    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckOutcome {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

fn table_invariants(t: &SequenceTables) -> Result<(), String> {
    let (p, k) = (t.p(), t.k());
    let pu = p as usize;
    let mut perm: Vec<u32> = t.psi_values()[1..=pu].to_vec();
    perm.sort_unstable();
    if perm.iter().copied().ne(1..=p as u32) {
        return Err("Psi is not a permutation of 1..p".into());
    }
    if t.hit_indices().len() != k as usize || t.hit_indices().last() != Some(&pu) {
        return Err(format!("hit indices {:?}", t.hit_indices()));
    }
    if i64::from(t.s(pu)) != k || t.c(pu) != 0 {
        return Err(format!("s(p) = {}, c(p) = {}", t.s(pu), t.c(pu)));
    }
    let mut residues: Vec<i64> = t.c_values().iter().map(|c| c.rem_euclid(p)).collect();
    residues.sort_unstable();
    if residues.iter().copied().ne(0..p) {
        return Err("c(i) mod p is not a complete residue system".into());
    }
    Ok(())
}

pub fn verify_triple(triple: &SurgeryTriple) -> VerificationReport {
    let t = compute_tables(triple);
    let (p, k) = (t.p(), t.k());
    let mut out = Collector(Vec::new());

    match table_invariants(&t) {
        Ok(()) => out.check("tables", true, ""),
        Err(e) => out.check("tables", false, e),
    }

    let f = f_formula(&t);
    let fx = f_x_closed(&t);
    let fy = f_y_closed(&t);
    out.check("F = F_Y", f == fy, format!("F = {f}"));
    out.check("F_X permutation form", f_x_from_permutation(&t) == fx, "");
    out.check("F contains t^-p", f.coeff(-p) == 1, "");
    let mut residues: Vec<i64> = fy.exponents().map(|e| e.rem_euclid(k)).collect();
    residues.sort_unstable();
    out.check(
        "F_Y exponents cover residues mod k",
        fy.num_terms() == k as usize && residues.iter().copied().eq(0..k),
        "",
    );

    match quotients(&t) {
        Ok(q) => {
            out.check("divisibility", true, "");
            out.check("quotients agree", q.agree(), "");
        }
        Err(e) => out.check("divisibility", false, e.to_string()),
    }

    match alexander_matrix(&t) {
        Ok((ox, oy)) => out.check("Fox derivatives match closed forms", ox == fx && oy == fy, ""),
        Err(e) => out.check("Fox derivatives match closed forms", false, e.to_string()),
    }

    let delta = alexander_polynomial(&t);
    if let Ok(d) = &delta {
        match oracle_alexander(&t) {
            Ok(o) => out.check("gcd oracle", &o == d, format!("gcd = {o}")),
            Err(e) => out.check("gcd oracle", false, e.to_string()),
        }
        let at_one = d.eval_at_one().unwrap_or(0);
        out.check("delta(1) = ±1", at_one.abs() == 1, format!("delta(1) = {at_one}"));
        let recip = d.reciprocal().map(|r| canonicalize(&r) == *d).unwrap_or(false);
        out.check("reciprocity", recip, "");
        match genus(d) {
            Ok(g) => out.check("genus", true, format!("{g}")),
            Err(e) => out.check("genus", false, e.to_string()),
        }
        match form_decomposition(d) {
            Ok(form) => {
                let ok = Some(reconstruct(&form)) == symmetric_normalization(d);
                out.check("alternating form", ok, format!("n = {:?}", form.n_seq));
            }
            Err(e) => out.check("alternating form", false, e.to_string()),
        }
        match structure_analysis(&t) {
            Ok(r) => out.check(
                "structure identities",
                &r.product_form == d,
                format!("ell = {}, w1_only = {}", r.ell, r.w1_only),
            ),
            Err(e) => out.check("structure identities", false, e.to_string()),
        }
    } else if let Err(e) = &delta {
        out.check("alexander polynomial", false, e.to_string());
    }

    VerificationReport {
        triple: *triple,
        saito: t.saito(),
        delta: delta.ok(),
        checks: out.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_triple;

    #[test]
    fn examples_verify_cleanly() {
        for (p, q, k) in [(5, 4, 2), (18, 5, 7), (7, 2, 2), (2, 1, 1)] {
            let report = verify_triple(&validate_triple(p, q, k).unwrap());
            assert!(report.all_passed(), "{report:#?}");
            assert!(report.checks.len() >= 12);
        }
    }
}
