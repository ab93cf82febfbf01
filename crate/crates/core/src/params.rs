//! Surgery triples `(p, q, k)` and the combinatorial tables derived from them.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("range error: {0}")]
    Range(String),
    #[error("NotCoprimePQ: gcd(p, q) = {gcd} for p = {p}, q = {q}")]
    NotCoprimePQ { p: i64, q: i64, gcd: i64 },
    #[error("NotCoprimePK: gcd(p, k) = {gcd} for p = {p}, k = {k}")]
    NotCoprimePK { p: i64, k: i64, gcd: i64 },
}

/// A validated parameter triple: `0 < q < p`, `1 <= k < p`, with `p`
/// coprime to both `q` and `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTriple", into = "RawTriple")]
pub struct SurgeryTriple {
    p: u32,
    q: u32,
    k: u32,
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    p: i64,
    q: i64,
    k: i64,
}

impl TryFrom<RawTriple> for SurgeryTriple {
    type Error = ParamError;
    fn try_from(r: RawTriple) -> Result<Self, ParamError> {
        validate_triple(r.p, r.q, r.k)
    }
}

impl From<SurgeryTriple> for RawTriple {
    fn from(t: SurgeryTriple) -> Self {
        RawTriple {
            p: t.p.into(),
            q: t.q.into(),
            k: t.k.into(),
        }
    }
}

impl SurgeryTriple {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Same as [`validate_triple`].
    pub fn new(p: i64, q: i64, k: i64) -> Result<Self, ParamError> {
        validate_triple(p, q, k)
    }
}

impl std::fmt::Display for SurgeryTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.k)
    }
}

/// Largest accepted `p`; keeps every exponent `|c(i)| <= p^2` inside `i64`.
pub const MAX_P: i64 = i32::MAX as i64;

/// Checks ranges first, then coprimality of `(p, q)`, then of `(p, k)`.
///
/// `q` is not reduced modulo `p`; out-of-range values are rejected.
pub fn validate_triple(p: i64, q: i64, k: i64) -> Result<SurgeryTriple, ParamError> {
    if !(2..=MAX_P).contains(&p) {
        return Err(ParamError::Range(format!("p = {p} must satisfy 2 <= p <= {MAX_P}")));
    }
    if q <= 0 || q >= p {
        return Err(ParamError::Range(format!("q = {q} must satisfy 0 < q < p = {p}")));
    }
    if k < 1 || k >= p {
        return Err(ParamError::Range(format!("k = {k} must satisfy 1 <= k < p = {p}")));
    }
    let g = p.gcd(&q);
    if g != 1 {
        return Err(ParamError::NotCoprimePQ { p, q, gcd: g });
    }
    let g = p.gcd(&k);
    if g != 1 {
        return Err(ParamError::NotCoprimePK { p, k, gcd: g });
    }
    Ok(SurgeryTriple {
        p: p as u32,
        q: q as u32,
        k: k as u32,
    })
}

/// All arrays the closed formulas consume, for one triple.
///
/// `psi` and `phi` are indexed by `i = 0..=p`. `e`, `s` and `c` are indexed
/// by `i = 1..=p`; use the accessors rather than raw slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTables {
    triple: SurgeryTriple,
    psi: Vec<u32>,
    phi: Vec<u32>,
    // Slot 0 of the next three is padding so that index i means i.
    e_ind: Vec<bool>,
    s_partial: Vec<u32>,
    c_val: Vec<i64>,
    hit_indices: Vec<usize>,
}

/// Builds every table in one pass over the basic sequence `n*q mod p`.
pub fn compute_tables(triple: &SurgeryTriple) -> SequenceTables {
    let p = triple.p as usize;
    let q = u64::from(triple.q);
    let k = triple.k;

    let mut psi = vec![0u32; p + 1];
    let mut phi = vec![0u32; p + 1];
    // Number of basic-sequence entries in 1..k seen so far.
    let mut small_seen = 0u32;
    for n in 1..=p {
        let v = ((n as u64 * q) % p as u64) as usize;
        psi[v] = n as u32;
        phi[v] = small_seen;
        if v >= 1 && (v as u32) < k {
            small_seen += 1;
        }
    }
    psi[p] = p as u32;
    phi[p] = k - 1;

    let mut e_ind = vec![false; p + 1];
    let mut s_partial = vec![0u32; p + 1];
    let mut c_val = vec![0i64; p + 1];
    let mut hit_indices = Vec::with_capacity(k as usize);
    let (pi, ki) = (p as i64, i64::from(k));
    for i in 1..=p {
        let hit = ((i as u64 * q) % p as u64) < u64::from(k);
        e_ind[i] = hit;
        s_partial[i] = s_partial[i - 1] + u32::from(hit);
        c_val[i] = -(i as i64) * ki + pi * i64::from(s_partial[i]);
        if hit {
            hit_indices.push(i);
        }
    }

    SequenceTables {
        triple: *triple,
        psi,
        phi,
        e_ind,
        s_partial,
        c_val,
        hit_indices,
    }
}

impl SequenceTables {
    pub fn triple(&self) -> &SurgeryTriple {
        &self.triple
    }

    pub fn p(&self) -> i64 {
        i64::from(self.triple.p)
    }

    pub fn q(&self) -> i64 {
        i64::from(self.triple.q)
    }

    pub fn k(&self) -> i64 {
        i64::from(self.triple.k)
    }

    /// Position of `i` in the basic sequence, for `0 <= i <= p`.
    pub fn psi(&self, i: usize) -> u32 {
        self.psi[i]
    }

    /// Number of `j` in `1..k` that precede `i` in the basic sequence, for
    /// `0 <= i <= p`.
    pub fn phi(&self, i: usize) -> u32 {
        self.phi[i]
    }

    pub fn psi_values(&self) -> &[u32] {
        &self.psi
    }

    pub fn phi_values(&self) -> &[u32] {
        &self.phi
    }

    /// Whether `i*q mod p < k`, for `1 <= i <= p`.
    pub fn e(&self, i: usize) -> bool {
        assert!(i >= 1, "E is indexed from 1");
        self.e_ind[i]
    }

    /// `E(1), ..., E(p)`.
    pub fn e_values(&self) -> &[bool] {
        &self.e_ind[1..]
    }

    pub fn s(&self, i: usize) -> u32 {
        self.s_partial[i]
    }

    /// `c(i) = -ik + p*s(i)`, for `1 <= i <= p`.
    pub fn c(&self, i: usize) -> i64 {
        assert!(i >= 1, "c is indexed from 1");
        self.c_val[i]
    }

    /// `c(1), ..., c(p)`.
    pub fn c_values(&self) -> &[i64] {
        &self.c_val[1..]
    }

    /// `i_1 < ... < i_k`, the indices with `E(i) = 1`.
    pub fn hit_indices(&self) -> &[usize] {
        &self.hit_indices
    }

    pub fn saito(&self) -> SaitoCheck {
        let k = self.triple.k as usize;
        let value = self.p() * i64::from(self.phi[k]) - self.k() * i64::from(self.psi[k]);
        let p = self.p();
        SaitoCheck {
            value,
            passes: [1, -1, 1 - p, -1 - p].contains(&value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaitoCheck {
    /// `p * Phi(k) - k * Psi(k)`.
    pub value: i64,
    /// Whether the value is one of `1, -1, 1 - p, -1 - p`.
    pub passes: bool,
}

/// The necessary (not sufficient) condition for `K(L(p,q); k)` to have an
/// integral surgery to the 3-sphere.
pub fn saito_condition(triple: &SurgeryTriple) -> SaitoCheck {
    compute_tables(triple).saito()
}
