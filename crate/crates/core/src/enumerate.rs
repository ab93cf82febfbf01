//! Bounded enumeration of surgery triples, bulk verification and catalog
//! output.
//!
//! Triples are visited in lexicographic `(p, q, k)` order. Work for one `p`
//! is spread over the rayon pool and gathered back in order before anything
//! is emitted, so output is byte-identical from run to run.

use std::collections::BTreeMap;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alexander::{genus, quotients, AlexanderError};
use crate::form::form_decomposition;
use crate::fox::oracle_alexander;
use crate::laurent::{canonicalize, LaurentPoly};
use crate::params::{compute_tables, validate_triple, SurgeryTriple};
use crate::structure::{excess_height, structure_analysis};

/// Default largest `p` for which the Fox-calculus oracle runs.
pub const DEFAULT_ORACLE_LIMIT: i64 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchFilter {
    All,
    SaitoOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub p_max: i64,
    pub filter: SearchFilter,
    pub oracle_limit: i64,
}

impl SearchConfig {
    pub fn new(p_max: i64, filter: SearchFilter) -> Self {
        Self {
            p_max,
            filter,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checks {
    /// `[k] | F_Y`, `[p] | F_X` and `[k] | F`.
    pub divisibility: CheckStatus,
    /// The three quotients agree up to a unit.
    pub cross_check: CheckStatus,
    /// Fox-calculus gcd equals delta; skipped above the oracle limit.
    pub oracle: CheckStatus,
    /// Structure identities hold and the product form equals delta.
    pub structure: CheckStatus,
}

/// One catalog line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRecord {
    pub p: i64,
    pub q: i64,
    pub k: i64,
    pub saito_value: i64,
    pub saito_pass: bool,
    /// Canonical Alexander polynomial; `null` when a division failed.
    pub delta: Option<LaurentPoly>,
    pub delta_text: Option<String>,
    pub genus: Option<u64>,
    /// Set when the Saito condition fails, so the genus is only formal.
    pub formal_genus: bool,
    /// Empty when the alternating-form check fails.
    pub n_seq: Vec<i64>,
    pub form_pass: bool,
    pub w1_only: bool,
    pub checks: Checks,
}

impl CatalogRecord {
    pub fn triple(&self) -> SurgeryTriple {
        validate_triple(self.p, self.q, self.k).expect("records hold valid triples")
    }

    /// Every check that ran passed.
    pub fn all_checks_pass(&self) -> bool {
        let c = &self.checks;
        [c.divisibility, c.cross_check, c.oracle, c.structure]
            .iter()
            .all(|s| *s != CheckStatus::Fail)
    }
}

/// Computes every field of the record for one triple. Failures become
/// statuses.
pub fn evaluate_triple(triple: &SurgeryTriple, oracle_limit: i64) -> CatalogRecord {
    let tables = compute_tables(triple);
    let saito = tables.saito();
    let p = tables.p();

    let (divisibility, cross_check, delta) = match quotients(&tables) {
        Ok(q) => {
            let agree = q.agree();
            (CheckStatus::Pass, CheckStatus::from_bool(agree), Some(canonicalize(&q.via_y)))
        }
        Err(AlexanderError::NotDivisible(_)) => (CheckStatus::Fail, CheckStatus::Skipped, None),
        Err(_) => (CheckStatus::Fail, CheckStatus::Fail, None),
    };

    let oracle = match &delta {
        Some(d) if p <= oracle_limit => {
            CheckStatus::from_bool(oracle_alexander(&tables).as_ref() == Ok(d))
        }
        _ => CheckStatus::Skipped,
    };
    let structure = match (&delta, structure_analysis(&tables)) {
        (Some(d), Ok(report)) => CheckStatus::from_bool(&report.product_form == d),
        (None, Ok(_)) => CheckStatus::Skipped,
        (_, Err(_)) => CheckStatus::Fail,
    };

    let genus = delta.as_ref().and_then(|d| genus(d).ok());
    let form = delta.as_ref().map(form_decomposition);
    let (n_seq, form_pass) = match form {
        Some(Ok(f)) => (f.n_seq, true),
        _ => (Vec::new(), false),
    };

    CatalogRecord {
        p,
        q: tables.q(),
        k: tables.k(),
        saito_value: saito.value,
        saito_pass: saito.passes,
        delta_text: delta.as_ref().map(ToString::to_string),
        delta,
        genus,
        formal_genus: !saito.passes,
        n_seq,
        form_pass,
        w1_only: excess_height(&tables) <= 1,
        checks: Checks {
            divisibility,
            cross_check,
            oracle,
            structure,
        },
    }
}

/// Valid triples with first entry `p`, in `(q, k)` order.
pub fn triples_for_p(p: i64) -> Vec<SurgeryTriple> {
    (1..p)
        .flat_map(|q| (1..p).map(move |k| (q, k)))
        .filter_map(|(q, k)| validate_triple(p, q, k).ok())
        .collect()
}

/// All valid triples with `p <= p_max`, lexicographically.
pub fn triples(p_max: i64) -> impl Iterator<Item = SurgeryTriple> {
    (2..=p_max).flat_map(triples_for_p)
}

/// Streams records to `sink` in canonical order.
pub fn search_each<F>(config: &SearchConfig, mut sink: F)
where
    F: FnMut(CatalogRecord),
{
    for p in 2..=config.p_max {
        let batch: Vec<CatalogRecord> = triples_for_p(p)
            .into_par_iter()
            .filter(|t| config.filter == SearchFilter::All || compute_tables(t).saito().passes)
            .map(|t| evaluate_triple(&t, config.oracle_limit))
            .collect();
        batch.into_iter().for_each(&mut sink);
    }
}

pub fn search(config: &SearchConfig) -> Vec<CatalogRecord> {
    let mut out = Vec::new();
    search_each(config, |r| out.push(r));
    out
}

/// Aggregate counts over a search.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub records: u64,
    pub saito_pass: u64,
    pub form_pass: u64,
    pub w1_only_false: u64,
    /// Check name to number of failing records.
    pub failures: BTreeMap<String, u64>,
    /// Saito-passing records without the alternating form.
    pub saito_form_violations: u64,
}

impl SearchSummary {
    pub fn add(&mut self, r: &CatalogRecord) {
        self.records += 1;
        self.saito_pass += u64::from(r.saito_pass);
        self.form_pass += u64::from(r.form_pass);
        self.w1_only_false += u64::from(!r.w1_only);
        if r.saito_pass && !r.form_pass {
            self.saito_form_violations += 1;
        }
        let c = &r.checks;
        for (name, status) in [
            ("divisibility", c.divisibility),
            ("cross_check", c.cross_check),
            ("oracle", c.oracle),
            ("structure", c.structure),
        ] {
            if status == CheckStatus::Fail {
                *self.failures.entry(name.to_string()).or_default() += 1;
            }
        }
    }

    pub fn clean(&self) -> bool {
        self.failures.is_empty() && self.saito_form_violations == 0
    }
}

/// Writes the catalog as JSONL, one record per line.
pub fn write_catalog<W: Write>(config: &SearchConfig, out: &mut W) -> io::Result<SearchSummary> {
    let mut summary = SearchSummary::default();
    let mut err = None;
    search_each(config, |r| {
        if err.is_some() {
            return;
        }
        summary.add(&r);
        let line = serde_json::to_string(&r).expect("records serialize");
        if let Err(e) = writeln!(out, "{line}") {
            err = Some(e);
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(summary),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct W1Counterexample {
    pub p: i64,
    pub q: i64,
    pub k: i64,
    /// Highest nonempty excess level.
    pub ell: i64,
}

/// Outcome of checking whether all excessive terms sit in `W(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct W1Report {
    pub p_max: i64,
    pub scanned: u64,
    pub saito_scanned: u64,
    /// Triples (any Saito status) with an excessive index above `W(1)`.
    pub counterexamples: u64,
    /// The same, restricted to Saito-passing triples.
    pub saito_counterexamples: u64,
    pub max_ell: i64,
    /// Every Saito-passing counterexample, in lexicographic order.
    pub saito_counterexample_list: Vec<W1Counterexample>,
}

/// Scans every valid triple with `p <= p_max`. Counterexamples are reported,
/// never treated as errors.
pub fn scan_w1(p_max: i64) -> W1Report {
    let mut report = W1Report {
        p_max,
        scanned: 0,
        saito_scanned: 0,
        counterexamples: 0,
        saito_counterexamples: 0,
        max_ell: 0,
        saito_counterexample_list: Vec::new(),
    };
    for p in 2..=p_max {
        let rows: Vec<(SurgeryTriple, bool, i64)> = triples_for_p(p)
            .into_par_iter()
            .map(|t| {
                let tables = compute_tables(&t);
                (t, tables.saito().passes, excess_height(&tables))
            })
            .collect();
        for (t, saito, ell) in rows {
            report.scanned += 1;
            report.saito_scanned += u64::from(saito);
            report.max_ell = report.max_ell.max(ell);
            if ell > 1 {
                report.counterexamples += 1;
                if saito {
                    report.saito_counterexamples += 1;
                    report.saito_counterexample_list.push(W1Counterexample {
                        p: t.p().into(),
                        q: t.q().into(),
                        k: t.k().into(),
                        ell,
                    });
                }
            }
        }
    }
    report
}
