//! Exhaustive and sampled verification of the structural results over
//! polarized neural ideals, either those generated in degree `n` or all of
//! them.
//!
//! Every ideal is run through each suite; a suite either passes, fails
//! (recording a counterexample), or does not apply. Field disagreements and
//! linear-resolution-without-linear-quotients witnesses are reported as
//! findings rather than failures.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::{
    betti_table_cached, dominant_check, dominant_invariants, inclusion_exclusion_lcm, lcm_closure,
    reg_upper_bound_lcm, table_is_linear, BettiTable,
};
use crate::code::{code_to_polarized_ideal, vanishing_generators, Codeword, NeuralCode};
use crate::error::{Error, Result};
use crate::homology::{FieldTag, HomologyCache};
use crate::ideal::{MonomialIdeal, PolarizedNeuralIdeal};
use crate::monomial::{Monomial, Var};
use crate::structure::{
    betti_splitting_predict_cached, is_linear_quotient_order, linear_quotients_search,
    recursive_linear_check, recursive_linear_check_with, split_at_neuron, PivotRule,
    SplitCriterion,
};

/// Largest `n` for exhaustive degree-`n` enumeration (`2^(2^n) - 1` ideals).
pub const MAX_EXHAUSTIVE_N: u32 = 3;
/// Largest `n` for sampling; the degree-`n` universe must fit in a `u64`.
pub const MAX_SAMPLE_N: u32 = 5;

/// The `2^n` squarefree degree-`n` monomials with one variable from each
/// pair, in canonical order.
pub fn degree_n_universe(n: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..1u64 << n)
        .map(|choice| {
            Monomial::from_vars(
                n,
                (1..=n).map(|i| {
                    if choice >> (i - 1) & 1 == 1 {
                        Var::Y(i)
                    } else {
                        Var::X(i)
                    }
                }),
            )
        })
        .collect();
    out.sort();
    out
}

fn ideal_from_subset(n: u32, universe: &[Monomial], subset: u64) -> PolarizedNeuralIdeal {
    let gens = universe
        .iter()
        .enumerate()
        .filter(|(k, _)| subset >> k & 1 == 1)
        .map(|(_, m)| *m);
    MonomialIdeal::minimalize(gens, n)
        .validate_polarized()
        .expect("degree-n universe avoids pairs")
}

/// Every nonempty subset of the degree-`n` universe, in subset-mask order.
pub fn enumerate_degree_n(n: u32) -> Result<Vec<PolarizedNeuralIdeal>> {
    check_range(n, MAX_EXHAUSTIVE_N)?;
    let universe = degree_n_universe(n);
    let total = 1u64 << universe.len();
    Ok((1..total)
        .map(|s| ideal_from_subset(n, &universe, s))
        .collect())
}

/// Uniform sample of nonempty subsets of the degree-`n` universe.
pub fn sample_degree_n(n: u32, seed: u64, count: usize) -> Result<Vec<PolarizedNeuralIdeal>> {
    check_range(n, MAX_SAMPLE_N)?;
    let universe = degree_n_universe(n);
    let width = universe.len() as u32;
    let mask = if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let s = rng.gen::<u64>() & mask;
        if s != 0 {
            out.push(ideal_from_subset(n, &universe, s));
        }
    }
    Ok(out)
}

fn check_range(n: u32, hi: u32) -> Result<()> {
    if n == 0 || n > hi {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as i64,
            lo: 1,
            hi: hi as i64,
        });
    }
    Ok(())
}

/// The `3^n - 1` nonunit monomials with no `x_i y_i` factor, in canonical
/// order.
pub fn pair_free_universe(n: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (1..3u64.pow(n))
        .map(|mut code| {
            let mut vars = Vec::new();
            for i in 1..=n {
                match code % 3 {
                    1 => vars.push(Var::X(i)),
                    2 => vars.push(Var::Y(i)),
                    _ => {}
                }
                code /= 3;
            }
            Monomial::from_vars(n, vars)
        })
        .collect();
    out.sort();
    out
}

/// Every proper nonzero polarized neural ideal on `n` neurons, one per
/// antichain of [`pair_free_universe`].
pub fn enumerate_polarized(n: u32) -> Result<Vec<PolarizedNeuralIdeal>> {
    check_range(n, MAX_EXHAUSTIVE_N)?;
    fn extend(
        universe: &[Monomial],
        from: usize,
        chosen: &mut Vec<Monomial>,
        n: u32,
        out: &mut Vec<PolarizedNeuralIdeal>,
    ) {
        for idx in from..universe.len() {
            let m = universe[idx];
            // Canonical order lists divisors first, so only `chosen | m` can occur.
            if chosen.iter().any(|g| g.divides(&m)) {
                continue;
            }
            chosen.push(m);
            out.push(
                MonomialIdeal::minimalize(chosen.iter().copied(), n)
                    .validate_polarized()
                    .expect("pair-free generators"),
            );
            extend(universe, idx + 1, chosen, n, out);
            chosen.pop();
        }
    }
    let universe = pair_free_universe(n);
    let mut out = Vec::new();
    extend(&universe, 0, &mut Vec::new(), n, &mut out);
    Ok(out)
}

/// Random polarized neural ideals with up to `2n` generators drawn from
/// [`pair_free_universe`]; duplicates are possible.
pub fn sample_polarized(n: u32, seed: u64, count: usize) -> Result<Vec<PolarizedNeuralIdeal>> {
    check_range(n, MAX_SAMPLE_N)?;
    let universe = pair_free_universe(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let q = rng.gen_range(1..=2 * n as usize);
            let gens = (0..q).map(|_| universe[rng.gen_range(0..universe.len())]);
            MonomialIdeal::minimalize(gens.collect::<Vec<_>>(), n)
                .validate_polarized()
                .expect("pair-free generators")
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Alternating fine Betti sum equals the lcm inclusion-exclusion, and
    /// the degree-0 row is the generator set.
    EulerIdentity,
    /// `reg ≥` largest generator degree.
    GeneratorDegreeFloor,
    /// `reg ≤ 1 + max (deg lcm(A) - |A|)`.
    LcmRegularityBound,
    /// `pd ∈ [0, 2n-1]`, `reg ∈ [1, 2n-1]`.
    GlobalBounds,
    /// `pd ≤ n` and `reg ≥ n` in degree `n`.
    DegreeNBounds,
    /// Recursive check = oracle linear resolution = linear quotients found.
    ThreeWayLinearity,
    /// Both pivot rules give the same verdict.
    PivotIndependence,
    /// A containment verdict of `true` implies linear resolution.
    ContainmentSufficient,
    /// The intersection criterion matches the oracle under both pivot rules.
    IntersectionLinearity,
    /// Linear quotients imply linear resolution.
    LqImpliesLr,
    /// Linear resolution passes to every restriction `I^{≤m}`.
    LrRestriction,
    /// Linear quotients pass to every restriction `I^{≤m}`.
    LqRestriction,
    /// Termwise Betti-splitting identity and max-formulas at every pivot
    /// whose x-branch has a linear resolution.
    BettiSplitting,
    /// Closed-form invariants of dominant generating sets.
    DominantFormula,
    /// `pd(uI) = pd I` and `reg(uI) = reg I + deg u`.
    Scaling,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::EulerIdentity,
        Suite::GeneratorDegreeFloor,
        Suite::LcmRegularityBound,
        Suite::GlobalBounds,
        Suite::DegreeNBounds,
        Suite::ThreeWayLinearity,
        Suite::PivotIndependence,
        Suite::ContainmentSufficient,
        Suite::IntersectionLinearity,
        Suite::LqImpliesLr,
        Suite::LrRestriction,
        Suite::LqRestriction,
        Suite::BettiSplitting,
        Suite::DominantFormula,
        Suite::Scaling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::EulerIdentity => "euler-identity",
            Suite::GeneratorDegreeFloor => "generator-degree-floor",
            Suite::LcmRegularityBound => "lcm-regularity-bound",
            Suite::GlobalBounds => "global-bounds",
            Suite::DegreeNBounds => "degree-n-bounds",
            Suite::ThreeWayLinearity => "three-way-linearity",
            Suite::PivotIndependence => "pivot-independence",
            Suite::ContainmentSufficient => "containment-sufficient",
            Suite::IntersectionLinearity => "intersection-linearity",
            Suite::LqImpliesLr => "lq-implies-lr",
            Suite::LrRestriction => "lr-restriction",
            Suite::LqRestriction => "lq-restriction",
            Suite::BettiSplitting => "betti-splitting",
            Suite::DominantFormula => "dominant-formula",
            Suite::Scaling => "scaling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SuiteCount {
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

impl SuiteCount {
    pub fn total(&self) -> usize {
        self.passed + self.failed + self.not_applicable
    }

    fn record(&mut self, o: Outcome) {
        match o {
            Outcome::Pass => self.passed += 1,
            Outcome::Fail => self.failed += 1,
            Outcome::NotApplicable => self.not_applicable += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub suite: String,
    pub ideal: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub kind: String,
    pub ideal: Vec<String>,
    pub detail: String,
}

fn gens_text(i: &MonomialIdeal) -> Vec<String> {
    i.gens().iter().map(|g| g.to_string()).collect()
}

/// Which ideals a run ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Collection {
    /// Nonempty sets of degree-`n` monomials, one variable per neuron.
    #[default]
    DegreeN,
    /// Every proper nonzero polarized neural ideal on `n` neurons.
    AllPolarized,
}

impl Collection {
    pub fn name(self) -> &'static str {
        match self {
            Collection::DegreeN => "degree-n",
            Collection::AllPolarized => "all-polarized",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Scope {
    Exhaustive,
    Sample { seed: u64, count: usize },
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n: u32,
    pub collection: Collection,
    pub scope: Scope,
    pub field: FieldTag,
    /// Also compute every table over the other field and report differences.
    pub field_check: bool,
    /// Seed and sizes for the randomized auxiliary suites; `None` skips them.
    pub random: Option<RandomSuites>,
    /// Search degree-`d < n` ideals for linear resolution without linear
    /// quotients.
    pub lr_lq_search: bool,
}

impl VerifyConfig {
    pub fn exhaustive(n: u32) -> Self {
        VerifyConfig {
            n,
            collection: Collection::DegreeN,
            scope: Scope::Exhaustive,
            field: FieldTag::F2,
            field_check: n <= MAX_EXHAUSTIVE_N,
            random: None,
            lr_lq_search: false,
        }
    }

    pub fn sample(n: u32, seed: u64, count: usize) -> Self {
        VerifyConfig {
            n,
            collection: Collection::DegreeN,
            scope: Scope::Sample { seed, count },
            field: FieldTag::F2,
            field_check: false,
            random: None,
            lr_lq_search: false,
        }
    }
}

/// Sizes of the randomized suites that do not range over the main ideal
/// collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RandomSuites {
    pub seed: u64,
    pub codes: usize,
    pub dominant_sets: usize,
    pub scaling_pairs: usize,
}

impl RandomSuites {
    pub fn standard(seed: u64) -> Self {
        RandomSuites {
            seed,
            codes: 100,
            dominant_sets: 200,
            scaling_pairs: 100,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub n: u32,
    pub collection: Collection,
    pub scope: Scope,
    pub field: FieldTag,
    pub examined: usize,
    pub distinct: usize,
    pub suites: BTreeMap<String, SuiteCount>,
    pub random_suites: BTreeMap<String, SuiteCount>,
    pub counterexamples: Vec<Counterexample>,
    pub findings: Vec<Finding>,
    /// Seconds per phase. Omitted unless requested, so that JSON output is
    /// reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn suite(&self, s: Suite) -> SuiteCount {
        self.suites.get(s.name()).copied().unwrap_or_default()
    }
}

struct IdealResult {
    outcomes: Vec<(Suite, Outcome)>,
    counterexamples: Vec<Counterexample>,
    findings: Vec<Finding>,
    time: BTreeMap<Suite, Duration>,
}

struct Checker<'a> {
    ideal: &'a PolarizedNeuralIdeal,
    out: IdealResult,
}

impl Checker<'_> {
    fn record(
        &mut self,
        suite: Suite,
        started: Instant,
        result: std::result::Result<bool, String>,
    ) {
        *self.out.time.entry(suite).or_default() += started.elapsed();
        let outcome = match result {
            Ok(true) => Outcome::Pass,
            Ok(false) => Outcome::NotApplicable,
            Err(detail) => {
                self.out.counterexamples.push(Counterexample {
                    suite: suite.name().to_string(),
                    ideal: gens_text(self.ideal),
                    detail,
                });
                Outcome::Fail
            }
        };
        self.out.outcomes.push((suite, outcome));
    }
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> std::result::Result<bool, String> {
    if cond {
        Ok(true)
    } else {
        Err(detail())
    }
}

fn lr_of(ideal: &MonomialIdeal, cache: &mut HomologyCache) -> bool {
    betti_table_cached(ideal, cache)
        .map(|t| table_is_linear(ideal, &t))
        .unwrap_or(false)
}

/// Runs every suite on one ideal. Suites return `Ok(true)` on pass,
/// `Ok(false)` when not applicable, and `Err(detail)` on failure.
fn check_ideal(ideal: &PolarizedNeuralIdeal, cfg: &VerifyConfig) -> IdealResult {
    let n = cfg.n;
    let mut cache = HomologyCache::new(cfg.field);
    let mut c = Checker {
        ideal,
        out: IdealResult {
            outcomes: Vec::with_capacity(Suite::ALL.len()),
            counterexamples: Vec::new(),
            findings: Vec::new(),
            time: BTreeMap::new(),
        },
    };
    let t0 = Instant::now();
    let table = betti_table_cached(ideal, &mut cache).expect("enumerated ideals are proper");
    let (pd, reg) = (table.pd(), table.reg());
    let q = ideal.len();

    c.record(Suite::EulerIdentity, t0, {
        let euler = table.euler_polynomial() == inclusion_exclusion_lcm(ideal);
        let row0: usize = table
            .fine()
            .iter()
            .filter(|((i, _), _)| *i == 0)
            .map(|(_, r)| r)
            .sum();
        let gens_ok = ideal.gens().iter().all(|g| table.fine_at(0, g) == 1);
        ensure(euler && row0 == q && gens_ok, || {
            format!("euler={euler} row0={row0} generators={q}")
        })
    });

    let t = Instant::now();
    let max_deg = ideal.max_degree().unwrap_or(0);
    c.record(
        Suite::GeneratorDegreeFloor,
        t,
        ensure(reg >= max_deg, || {
            format!("reg {reg} < max degree {max_deg}")
        }),
    );

    let t = Instant::now();
    let bound = reg_upper_bound_lcm(ideal).expect("proper");
    c.record(
        Suite::LcmRegularityBound,
        t,
        ensure(reg <= bound, || format!("reg {reg} > lcm bound {bound}")),
    );

    let t = Instant::now();
    c.record(
        Suite::GlobalBounds,
        t,
        ensure(pd < 2 * n as usize && reg >= 1 && reg < 2 * n, || {
            format!(
                "pd {pd}, reg {reg} outside [0,{}] x [1,{}]",
                2 * n - 1,
                2 * n - 1
            )
        }),
    );

    let t = Instant::now();
    let degree_n = ideal.equigenerated_degree() == Ok(Some(n));
    c.record(
        Suite::DegreeNBounds,
        t,
        if degree_n {
            ensure(pd <= n as usize && reg >= n, || {
                format!("pd {pd} > {n} or reg {reg} < {n}")
            })
        } else {
            Ok(false)
        },
    );

    let t = Instant::now();
    let lr = table_is_linear(ideal, &table);
    let lq_order = linear_quotients_search(ideal).expect("proper");
    let lq = lq_order.is_some();
    let lq_valid = lq_order
        .as_ref()
        .is_none_or(|o| is_linear_quotient_order(ideal, &o.order));
    let rec_last = recursive_linear_check(ideal, PivotRule::Last).ok();
    let rec_small = recursive_linear_check(ideal, PivotRule::Smallest).ok();
    c.record(
        Suite::ThreeWayLinearity,
        t,
        match rec_last {
            Some(rec) => ensure(rec == lr && lr == lq && lq_valid, || {
                format!("recursive={rec} oracle-lr={lr} lq={lq} order-valid={lq_valid}")
            }),
            None => Ok(false),
        },
    );
    c.record(
        Suite::PivotIndependence,
        Instant::now(),
        match (rec_last, rec_small) {
            (Some(a), Some(b)) => ensure(a == b, || format!("last={a} smallest={b}")),
            _ => Ok(false),
        },
    );
    c.record(
        Suite::ContainmentSufficient,
        Instant::now(),
        match (rec_last, rec_small) {
            (Some(a), Some(b)) if a || b => ensure(lr, || {
                format!("containment last={a} smallest={b} but oracle-lr=false")
            }),
            _ => Ok(false),
        },
    );
    let t = Instant::now();
    let inter = [PivotRule::Last, PivotRule::Smallest]
        .map(|r| recursive_linear_check_with(ideal, r, SplitCriterion::Intersection).ok());
    c.record(
        Suite::IntersectionLinearity,
        t,
        match inter {
            [Some(a), Some(b)] => ensure(a == lr && b == lr, || {
                format!("intersection last={a} smallest={b} oracle-lr={lr}")
            }),
            _ => Ok(false),
        },
    );

    let t = Instant::now();
    let equi = ideal.equigenerated_degree().ok().flatten().is_some();
    c.record(
        Suite::LqImpliesLr,
        t,
        if lq && equi {
            ensure(lr, || {
                "linear quotients found but resolution is not linear".into()
            })
        } else {
            Ok(false)
        },
    );

    let closure = lcm_closure(ideal);
    let restrictions: BTreeSet<Vec<Monomial>> = closure
        .iter()
        .map(|m| ideal.restrict(m).gens().to_vec())
        .collect();
    let restricted = || {
        restrictions
            .iter()
            .map(|g| MonomialIdeal::minimalize(g.iter().copied(), n))
    };

    let t = Instant::now();
    c.record(
        Suite::LrRestriction,
        t,
        if lr {
            let bad: Vec<MonomialIdeal> = restricted().filter(|r| !lr_of(r, &mut cache)).collect();
            ensure(bad.is_empty(), || {
                format!("restriction {} lacks linear resolution", bad[0])
            })
        } else {
            Ok(false)
        },
    );

    let t = Instant::now();
    c.record(
        Suite::LqRestriction,
        t,
        if lq && equi {
            let bad: Vec<MonomialIdeal> = restricted()
                .filter(|r| !matches!(linear_quotients_search(r), Ok(Some(_))))
                .collect();
            ensure(bad.is_empty(), || {
                format!("restriction {} lacks linear quotients", bad[0])
            })
        } else {
            Ok(false)
        },
    );

    let t = Instant::now();
    let mut applied = false;
    let mut failure: Option<String> = None;
    for pivot in 1..=n {
        let Ok(split) = split_at_neuron(ideal, pivot) else {
            continue;
        };
        match betti_splitting_predict_cached(&split, &mut cache) {
            Ok(pred) => {
                applied = true;
                if pred.table != table || pred.invariants.pd != pd || pred.invariants.reg != reg {
                    failure.get_or_insert(format!(
                        "pivot {pivot}: predicted pd {} reg {} (table match {}), actual pd {pd} reg {reg}",
                        pred.invariants.pd,
                        pred.invariants.reg,
                        pred.table == table
                    ));
                }
            }
            Err(Error::JNotLinear) | Err(Error::UnitOrZeroIdeal) => {}
            Err(e) => {
                failure.get_or_insert(format!("pivot {pivot}: {e}"));
            }
        }
    }
    c.record(
        Suite::BettiSplitting,
        t,
        match failure {
            Some(f) => Err(f),
            None => Ok(applied),
        },
    );

    let t = Instant::now();
    c.record(
        Suite::DominantFormula,
        t,
        if dominant_check(ideal).is_some() {
            let inv = dominant_invariants(ideal).expect("dominant");
            ensure(inv.pd == pd && inv.reg == reg, || {
                format!(
                    "closed form ({}, {}) vs oracle ({pd}, {reg})",
                    inv.pd, inv.reg
                )
            })
        } else {
            Ok(false)
        },
    );

    let t = Instant::now();
    c.record(
        Suite::Scaling,
        t,
        check_scaling_in_fresh_neuron(ideal, &mut cache),
    );

    if cfg.field_check {
        let other = match cfg.field {
            FieldTag::F2 => FieldTag::Rationals,
            FieldTag::Rationals => FieldTag::F2,
        };
        let mut alt = HomologyCache::new(other);
        let alt_table = betti_table_cached(ideal, &mut alt).expect("proper");
        if alt_table != table {
            c.out.findings.push(Finding {
                kind: "field-dependence".into(),
                ideal: gens_text(ideal),
                detail: format!(
                    "{:?}: pd {pd} reg {reg}; {:?}: pd {} reg {}",
                    cfg.field,
                    other,
                    alt_table.pd(),
                    alt_table.reg()
                ),
            });
        }
    }
    c.out
}

/// Scales by `x_{n+1}`, `y_{n+1}` and `x_{n+1} y_{n+1}` after adding a
/// fresh neuron, and compares invariants.
fn check_scaling_in_fresh_neuron(
    ideal: &MonomialIdeal,
    cache: &mut HomologyCache,
) -> std::result::Result<bool, String> {
    let n = ideal.neurons();
    if n >= crate::error::MAX_NEURONS {
        return Ok(false);
    }
    let lifted = ideal.lift(n + 1);
    let base = betti_table_cached(&lifted, cache).expect("proper");
    let fresh = n + 1;
    let multipliers = [
        Monomial::var(fresh, Var::X(fresh)),
        Monomial::var(fresh, Var::Y(fresh)),
        Monomial::from_vars(fresh, [Var::X(fresh), Var::Y(fresh)]),
    ];
    for u in multipliers {
        scaling_contract(&lifted, &base, &u, cache)?;
    }
    Ok(true)
}

fn scaling_contract(
    ideal: &MonomialIdeal,
    base: &BettiTable,
    u: &Monomial,
    cache: &mut HomologyCache,
) -> std::result::Result<(), String> {
    let scaled = ideal.scale(u).map_err(|e| e.to_string())?;
    let t = betti_table_cached(&scaled, cache).map_err(|e| e.to_string())?;
    if t.pd() == base.pd() && t.reg() == base.reg() + u.degree() {
        Ok(())
    } else {
        Err(format!(
            "u = {u}: pd {} -> {}, reg {} -> {} (expected +{})",
            base.pd(),
            t.pd(),
            base.reg(),
            t.reg(),
            u.degree()
        ))
    }
}

/// Runs the configured verification.
pub fn run(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut timings = BTreeMap::new();
    let started = Instant::now();
    let ideals = match (cfg.collection, cfg.scope) {
        (Collection::DegreeN, Scope::Exhaustive) => enumerate_degree_n(cfg.n)?,
        (Collection::DegreeN, Scope::Sample { seed, count }) => {
            sample_degree_n(cfg.n, seed, count)?
        }
        (Collection::AllPolarized, Scope::Exhaustive) => enumerate_polarized(cfg.n)?,
        (Collection::AllPolarized, Scope::Sample { seed, count }) => {
            sample_polarized(cfg.n, seed, count)?
        }
    };
    timings.insert("enumerate".to_string(), started.elapsed().as_secs_f64());

    let started = Instant::now();
    let results: Vec<IdealResult> = ideals.par_iter().map(|i| check_ideal(i, cfg)).collect();
    timings.insert("check".to_string(), started.elapsed().as_secs_f64());

    let mut suites: BTreeMap<String, SuiteCount> = Suite::ALL
        .iter()
        .map(|s| (s.name().to_string(), SuiteCount::default()))
        .collect();
    let mut counterexamples = Vec::new();
    let mut findings = Vec::new();
    let mut per_suite: BTreeMap<Suite, Duration> = BTreeMap::new();
    for r in results {
        for (s, o) in r.outcomes {
            suites.get_mut(s.name()).expect("known suite").record(o);
        }
        for (s, d) in r.time {
            *per_suite.entry(s).or_default() += d;
        }
        counterexamples.extend(r.counterexamples);
        findings.extend(r.findings);
    }
    for (s, d) in per_suite {
        timings.insert(format!("suite:{}", s.name()), d.as_secs_f64());
    }

    let mut random_suites = BTreeMap::new();
    if let Some(rs) = cfg.random {
        let started = Instant::now();
        let mut run_random = |name: &str, r: RandomResult| {
            random_suites.insert(name.to_string(), r.count);
            counterexamples.extend(r.counterexamples);
        };
        run_random("code-pipeline", verify_code_pipeline(rs.seed, rs.codes, 4));
        run_random(
            "dominant-random",
            verify_dominant_sets(rs.seed, rs.dominant_sets, 4, cfg.field),
        );
        run_random(
            "scaling-random",
            verify_scaling_pairs(rs.seed, rs.scaling_pairs, 3, cfg.field),
        );
        timings.insert("random".to_string(), started.elapsed().as_secs_f64());
    }

    if cfg.lr_lq_search {
        let started = Instant::now();
        findings.extend(search_lr_without_lq(cfg.n, cfg.field));
        timings.insert("lr-lq-search".to_string(), started.elapsed().as_secs_f64());
    }

    let distinct = ideals
        .iter()
        .map(|i| i.gens().to_vec())
        .collect::<BTreeSet<_>>()
        .len();
    Ok(VerificationReport {
        schema: 1,
        n: cfg.n,
        collection: cfg.collection,
        scope: cfg.scope,
        field: cfg.field,
        examined: ideals.len(),
        distinct,
        suites,
        random_suites,
        counterexamples,
        findings,
        timings: Some(timings),
    })
}

/// Counts and counterexamples of one randomized suite.
#[derive(Debug, Clone, Default)]
pub struct RandomResult {
    pub count: SuiteCount,
    pub counterexamples: Vec<Counterexample>,
}

impl RandomResult {
    fn push(&mut self, suite: &str, ideal: &MonomialIdeal, r: std::result::Result<(), String>) {
        match r {
            Ok(()) => self.count.passed += 1,
            Err(detail) => {
                self.count.failed += 1;
                self.counterexamples.push(Counterexample {
                    suite: suite.into(),
                    ideal: gens_text(ideal),
                    detail,
                });
            }
        }
    }
}

/// A random pair-free monomial: each neuron contributes nothing, `x_i`, or
/// `y_i` with equal probability, restricted to the variables in `allowed`.
fn random_pair_free(rng: &mut ChaCha8Rng, n: u32, allowed: u64) -> Monomial {
    let vars = (1..=n).filter_map(|i| match rng.gen_range(0..3) {
        1 => Some(Var::X(i)),
        2 => Some(Var::Y(i)),
        _ => None,
    });
    let m = Monomial::from_vars(n, vars.collect::<Vec<_>>());
    Monomial::from_mask(n, m.mask() & allowed).expect("in range")
}

fn random_polarized(rng: &mut ChaCha8Rng, n: u32, max_gens: usize, allowed: u64) -> MonomialIdeal {
    loop {
        let q = rng.gen_range(1..=max_gens);
        let gens: Vec<Monomial> = (0..q).map(|_| random_pair_free(rng, n, allowed)).collect();
        let ideal = MonomialIdeal::minimalize(gens, n);
        if ideal.is_proper_nonzero() {
            return ideal;
        }
    }
}

/// Random codes on `1..=max_n` neurons: every emitted pseudomonomial
/// vanishes on the code and not at its own non-codeword, and the polarized
/// ideal is valid, generated in degree `n`, with `2^n - |C|` generators.
pub fn verify_code_pipeline(seed: u64, count: usize, max_n: u32) -> RandomResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0DE);
    let mut out = RandomResult::default();
    while out.count.total() < count {
        let n = rng.gen_range(1..=max_n);
        let words: Vec<Codeword> = (0..1u32 << n)
            .filter(|_| rng.gen_bool(0.5))
            .map(|b| Codeword::new(n, b).expect("in range"))
            .collect();
        let code = NeuralCode::new(n, words).expect("lengths agree");
        if code.len() == 1 << n {
            continue;
        }
        let all_words: Vec<Codeword> = (0..1u32 << n)
            .map(|b| Codeword::new(n, b).expect("in range"))
            .collect();
        let pseudos = vanishing_generators(&code);
        let mut problems = Vec::new();
        for p in &pseudos {
            if code.words().any(|c| p.evaluate(c) != Ok(false)) {
                problems.push(format!("{p} does not vanish on the code"));
            }
            let own = Codeword::new(n, p.sigma()).expect("in range");
            if p.evaluate(&own) != Ok(true) || code.contains(&own) {
                problems.push(format!("{p} is not the indicator of a non-codeword"));
            }
            let support = all_words
                .iter()
                .filter(|w| p.evaluate(w) == Ok(true))
                .count();
            if support != 1 {
                problems.push(format!("{p} is nonzero at {support} words"));
            }
        }
        let ideal = code_to_polarized_ideal(&code);
        let expected = (1usize << n) - code.len();
        if pseudos.len() != expected || ideal.len() != expected {
            problems.push(format!(
                "{} pseudomonomials, {} generators, expected {expected}",
                pseudos.len(),
                ideal.len()
            ));
        }
        if ideal.equigenerated_degree() != Ok(Some(n)) {
            problems.push("ideal is not generated in degree n".into());
        }
        if ideal.clone().into_inner().validate_polarized().is_err() {
            problems.push("ideal violates pair exclusion".into());
        }
        let r = if problems.is_empty() {
            Ok(())
        } else {
            Err(format!(
                "code {:?}: {}",
                code.words().map(|w| w.to_string()).collect::<Vec<_>>(),
                problems.join("; ")
            ))
        };
        out.push("code-pipeline", &ideal, r);
    }
    out
}

/// Random dominant generating sets on `1..=max_n` neurons: the closed-form
/// `(pd, reg)` matches the oracle.
pub fn verify_dominant_sets(seed: u64, count: usize, max_n: u32, field: FieldTag) -> RandomResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xD0);
    let mut out = RandomResult::default();
    while out.count.total() < count {
        let n = rng.gen_range(1..=max_n);
        let ideal = random_polarized(&mut rng, n, 2 * n as usize, Monomial::top(n).mask());
        if dominant_check(&ideal).is_none() {
            continue;
        }
        let closed = dominant_invariants(&ideal).expect("dominant");
        let mut cache = HomologyCache::new(field);
        let t = betti_table_cached(&ideal, &mut cache).expect("proper");
        let r = if closed.pd == t.pd() && closed.reg == t.reg() {
            Ok(())
        } else {
            Err(format!(
                "closed form ({}, {}) vs oracle ({}, {})",
                closed.pd,
                closed.reg,
                t.pd(),
                t.reg()
            ))
        };
        out.push("dominant-random", &ideal, r);
    }
    out
}

/// Random `(u, I)` on `1..=max_n` neurons with `u` built from variables no
/// generator uses: `pd(uI) = pd I`, `reg(uI) = reg I + deg u`.
pub fn verify_scaling_pairs(seed: u64, count: usize, max_n: u32, field: FieldTag) -> RandomResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5CA1E);
    let mut out = RandomResult::default();
    while out.count.total() < count {
        let n = rng.gen_range(1..=max_n);
        let top = Monomial::top(n).mask();
        // Reserve a random set of variables for the multiplier.
        let reserved = rng.gen::<u64>() & top;
        if reserved == 0 || reserved == top {
            continue;
        }
        let ideal = random_polarized(&mut rng, n, 3, top & !reserved);
        let u_mask = rng.gen::<u64>() & reserved;
        if u_mask == 0 {
            continue;
        }
        let u = Monomial::from_mask(n, u_mask).expect("in range");
        let mut cache = HomologyCache::new(field);
        let base = betti_table_cached(&ideal, &mut cache).expect("proper");
        let r = scaling_contract(&ideal, &base, &u, &mut cache);
        out.push("scaling-random", &ideal, r);
    }
    out
}

/// Looks for equigenerated polarized neural ideals of degree `d < n` with a
/// linear resolution but no linear-quotients order, over every `d` whose
/// universe of pair-free degree-`d` monomials has at most 16 members.
pub fn search_lr_without_lq(n: u32, field: FieldTag) -> Vec<Finding> {
    let mut findings = Vec::new();
    for d in 1..n {
        let universe: Vec<Monomial> = (0..1u64 << (2 * n))
            .map(|mask| Monomial::from_mask(n, mask).expect("in range"))
            .filter(|m| m.degree() == d && m.pair_violation().is_none())
            .collect();
        if universe.len() > 16 {
            continue;
        }
        let witnesses: Vec<Finding> = (1u64..1 << universe.len())
            .into_par_iter()
            .filter_map(|s| {
                let ideal = MonomialIdeal::minimalize(
                    universe
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| s >> k & 1 == 1)
                        .map(|(_, m)| *m),
                    n,
                );
                let mut cache = HomologyCache::new(field);
                let lr = lr_of(&ideal, &mut cache);
                let lq = matches!(linear_quotients_search(&ideal), Ok(Some(_)));
                (lr != lq).then(|| Finding {
                    kind: "lr-lq-mismatch".into(),
                    ideal: gens_text(&ideal),
                    detail: format!("degree {d}: linear resolution {lr}, linear quotients {lq}"),
                })
            })
            .collect();
        findings.extend(witnesses);
    }
    findings
}
