//! Multigraded Betti numbers of squarefree monomial ideals via upper Koszul
//! simplicial complexes, plus the closed forms available for special
//! generating sets.
//!
//! For a squarefree degree `b`, `β_{i,b}(I)` is the dimension of
//! `H̃_{i-1}(K^b(I))` where `K^b(I) = { τ ⊆ supp(b) : x^b / x^τ ∈ I }`. These
//! are nonzero only when `b` is the lcm of some generators, so only the lcm
//! closure of the minimal generators is visited.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{FieldTag, HomologyCache, SimplicialComplex};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Upper Koszul complex of `ideal` at multidegree `b`.
///
/// Its facets are `b / g` for the generators `g` dividing `b`; the empty face
/// is present exactly when `b ∈ I`.
pub fn upper_koszul(ideal: &MonomialIdeal, b: &Monomial) -> Result<SimplicialComplex> {
    ideal.require_proper_nonzero()?;
    Ok(koszul_unchecked(ideal, b))
}

fn koszul_unchecked(ideal: &MonomialIdeal, b: &Monomial) -> SimplicialComplex {
    let faces = ideal
        .gens()
        .iter()
        .filter(|g| g.divides(b))
        .map(|g| b.mask() & !g.mask());
    SimplicialComplex::from_faces(b.mask(), faces)
}

/// Every lcm of a nonempty subset of the minimal generators.
pub fn lcm_closure(ideal: &MonomialIdeal) -> BTreeSet<Monomial> {
    let mut seen: BTreeSet<Monomial> = ideal.gens().iter().copied().collect();
    let mut frontier: Vec<Monomial> = seen.iter().copied().collect();
    while let Some(m) = frontier.pop() {
        for g in ideal.gens() {
            let l = m.lcm(g);
            if seen.insert(l) {
                frontier.push(l);
            }
        }
    }
    seen
}

/// Fine (multigraded) and coarse Betti numbers of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    n: u32,
    fine: BTreeMap<(usize, Monomial), usize>,
    coarse: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    /// Builds a table from fine entries, dropping zeros and aggregating the
    /// coarse `(i, j)` grading.
    pub fn from_fine(
        n: u32,
        entries: impl IntoIterator<Item = ((usize, Monomial), usize)>,
    ) -> Self {
        let mut fine = BTreeMap::new();
        for (key, r) in entries {
            if r > 0 {
                *fine.entry(key).or_insert(0) += r;
            }
        }
        let mut coarse = BTreeMap::new();
        for (&(i, b), &r) in &fine {
            *coarse.entry((i, b.degree())).or_insert(0) += r;
        }
        BettiTable { n, fine, coarse }
    }

    pub fn neurons(&self) -> u32 {
        self.n
    }

    pub fn fine(&self) -> &BTreeMap<(usize, Monomial), usize> {
        &self.fine
    }

    pub fn coarse(&self) -> &BTreeMap<(usize, u32), usize> {
        &self.coarse
    }

    pub fn fine_at(&self, i: usize, b: &Monomial) -> usize {
        self.fine.get(&(i, *b)).copied().unwrap_or(0)
    }

    pub fn coarse_at(&self, i: usize, j: u32) -> usize {
        self.coarse.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Largest homological index with a nonzero entry.
    pub fn pd(&self) -> usize {
        self.coarse.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Largest `j - i` over nonzero entries.
    pub fn reg(&self) -> u32 {
        self.coarse
            .keys()
            .map(|&(i, j)| j - i as u32)
            .max()
            .unwrap_or(0)
    }

    /// `Σ_i (-1)^i β_{i,b}` for each multidegree `b`, zeros dropped.
    pub fn euler_polynomial(&self) -> BTreeMap<Monomial, i64> {
        let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (&(i, b), &r) in &self.fine {
            let signed = if i % 2 == 0 { r as i64 } else { -(r as i64) };
            *out.entry(b).or_insert(0) += signed;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Serializable view; `pd` and `reg` are included.
    pub fn to_json(&self) -> BettiJson {
        BettiJson {
            fine: self
                .fine
                .iter()
                .map(|(&(i, b), &rank)| FineEntry { i, b, rank })
                .collect(),
            coarse: self
                .coarse
                .iter()
                .map(|(&(i, j), &rank)| CoarseEntry { i, j, rank })
                .collect(),
            pd: self.pd(),
            reg: self.reg(),
        }
    }

    /// Human-readable coarse table in the usual `j - i` by `i` layout.
    pub fn render_coarse(&self) -> String {
        let pd = self.pd();
        let lo = self
            .coarse
            .keys()
            .map(|&(i, j)| j - i as u32)
            .min()
            .unwrap_or(0);
        let hi = self.reg();
        let width = 6;
        let mut out = format!("{:>width$}", "");
        for i in 0..=pd {
            out.push_str(&format!("{i:>width$}"));
        }
        out.push('\n');
        for row in lo..=hi {
            out.push_str(&format!("{:>width$}", format!("{row}:")));
            for i in 0..=pd {
                let r = self.coarse_at(i, row + i as u32);
                let cell = if r == 0 {
                    "-".to_string()
                } else {
                    r.to_string()
                };
                out.push_str(&format!("{cell:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FineEntry {
    pub i: usize,
    pub b: Monomial,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoarseEntry {
    pub i: usize,
    pub j: u32,
    pub rank: usize,
}

/// JSON shape of a Betti table.
#[derive(Debug, Clone, Serialize)]
pub struct BettiJson {
    pub fine: Vec<FineEntry>,
    pub coarse: Vec<CoarseEntry>,
    pub pd: usize,
    pub reg: u32,
}

/// Full Betti table over `field`.
pub fn betti_table(ideal: &MonomialIdeal, field: FieldTag) -> Result<BettiTable> {
    let mut cache = HomologyCache::new(field);
    betti_table_cached(ideal, &mut cache)
}

/// As [`betti_table`], reusing a caller-owned homology cache. The cache's
/// field decides the coefficients.
pub fn betti_table_cached(ideal: &MonomialIdeal, cache: &mut HomologyCache) -> Result<BettiTable> {
    ideal.require_proper_nonzero()?;
    let mut entries = Vec::new();
    for b in lcm_closure(ideal) {
        let k = koszul_unchecked(ideal, &b);
        for (dim, rank) in cache.ranks(&k) {
            entries.push((((dim + 1) as usize, b), rank));
        }
    }
    Ok(BettiTable::from_fine(ideal.neurons(), entries))
}

/// Projective dimension and regularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub pd: usize,
    pub reg: u32,
}

pub fn invariants(ideal: &MonomialIdeal, field: FieldTag) -> Result<Invariants> {
    let t = betti_table(ideal, field)?;
    Ok(Invariants {
        pd: t.pd(),
        reg: t.reg(),
    })
}

/// Outcome of a linear-resolution query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LinearStatus {
    Linear,
    NotLinear,
    /// Linear resolution is only defined for equigenerated ideals.
    NotEquigenerated,
}

impl LinearStatus {
    pub fn is_linear(self) -> bool {
        self == LinearStatus::Linear
    }
}

pub fn linear_status(ideal: &MonomialIdeal, field: FieldTag) -> Result<LinearStatus> {
    ideal.require_proper_nonzero()?;
    let Some(d) = ideal.equigenerated_degree()? else {
        return Ok(LinearStatus::NotEquigenerated);
    };
    let reg = betti_table(ideal, field)?.reg();
    Ok(if reg == d {
        LinearStatus::Linear
    } else {
        LinearStatus::NotLinear
    })
}

/// `reg I = d` for an ideal generated in degree `d`; false when the ideal
/// is not equigenerated.
pub fn has_linear_resolution(ideal: &MonomialIdeal, field: FieldTag) -> Result<bool> {
    linear_status(ideal, field).map(LinearStatus::is_linear)
}

/// Linear-resolution test against an already computed table.
pub(crate) fn table_is_linear(ideal: &MonomialIdeal, table: &BettiTable) -> bool {
    matches!(ideal.equigenerated_degree(), Ok(Some(d)) if table.reg() == d)
}

/// `1 + max { deg lcm(A) - |A| : ∅ ≠ A ⊆ mingens(I) }`, an upper bound on
/// the regularity.
///
/// For each reachable lcm only the smallest subset size matters, so this
/// runs a subset-size minimization over the lcm closure instead of visiting
/// all `2^q` subsets.
pub fn reg_upper_bound_lcm(ideal: &MonomialIdeal) -> Result<u32> {
    ideal.require_proper_nonzero()?;
    let mut best: HashMap<u64, u32> = HashMap::new();
    for g in ideal.gens() {
        let snapshot: Vec<(u64, u32)> = best.iter().map(|(&m, &c)| (m, c)).collect();
        let e = best.entry(g.mask()).or_insert(1);
        *e = (*e).min(1);
        for (m, c) in snapshot {
            let e = best.entry(m | g.mask()).or_insert(c + 1);
            *e = (*e).min(c + 1);
        }
    }
    let top = best
        .iter()
        .map(|(m, &c)| m.count_ones() as i64 - c as i64)
        .max()
        .expect("nonzero ideal");
    Ok((top + 1) as u32)
}

/// Each generator paired with a private variable that divides it and no
/// other generator, or `None` if the generating set is not dominant.
pub fn dominant_check(ideal: &MonomialIdeal) -> Option<Vec<(Monomial, Monomial)>> {
    let gens = ideal.gens();
    if gens.is_empty() {
        return None;
    }
    let mut witness = Vec::with_capacity(gens.len());
    for (k, g) in gens.iter().enumerate() {
        let others = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .fold(0u64, |acc, (_, h)| acc | h.mask());
        let private = g.mask() & !others;
        if private == 0 {
            return None;
        }
        let v = Monomial::raw(ideal.neurons(), 1 << private.trailing_zeros());
        witness.push((*g, v));
    }
    Some(witness)
}

/// Closed-form `(q - 1, deg lcm - q + 1)` for a dominant generating set of
/// size `q`.
pub fn dominant_invariants(ideal: &MonomialIdeal) -> Result<Invariants> {
    ideal.require_proper_nonzero()?;
    if dominant_check(ideal).is_none() {
        return Err(Error::NotDominant);
    }
    let q = ideal.len() as u32;
    Ok(Invariants {
        pd: (q - 1) as usize,
        reg: ideal.lcm_all().degree() + 1 - q,
    })
}

/// `Σ_{∅≠A⊆mingens} (-1)^{|A|+1} t^{lcm A}` by direct subset enumeration.
/// Agrees with [`BettiTable::euler_polynomial`] for any correct table.
pub fn inclusion_exclusion_lcm(ideal: &MonomialIdeal) -> BTreeMap<Monomial, i64> {
    let gens = ideal.gens();
    let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
    fn walk(
        gens: &[Monomial],
        from: usize,
        acc: Monomial,
        size: usize,
        out: &mut BTreeMap<Monomial, i64>,
    ) {
        for k in from..gens.len() {
            let l = acc.lcm(&gens[k]);
            *out.entry(l).or_insert(0) += if size.is_multiple_of(2) { 1 } else { -1 };
            walk(gens, k + 1, l, size + 1, out);
        }
    }
    walk(gens, 0, Monomial::one(ideal.neurons()), 0, &mut out);
    out.retain(|_, c| *c != 0);
    out
}
