//! Neuron splits `I = x_i J + y_i K`, Betti-splitting predictions, and the
//! two homology-free tests for linearity: a backtracking search for a
//! linear-quotients order and the recursive split criterion for ideals
//! generated in degree `n`.

use std::collections::HashSet;

use serde::Serialize;

use crate::betti::{betti_table_cached, table_is_linear, BettiTable, Invariants};
use crate::error::{Error, Result};
use crate::homology::{FieldTag, HomologyCache};
use crate::ideal::{MonomialIdeal, PolarizedNeuralIdeal};
use crate::monomial::{Monomial, Var};

/// `I = x_pivot * J + y_pivot * K`. `J` and `K` live in the same ring as `I`
/// and never involve the pivot pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeuronSplit {
    pub pivot: u32,
    pub j: MonomialIdeal,
    pub k: MonomialIdeal,
}

impl NeuronSplit {
    pub fn x(&self) -> Monomial {
        Monomial::var(self.j.neurons(), Var::X(self.pivot))
    }

    pub fn y(&self) -> Monomial {
        Monomial::var(self.j.neurons(), Var::Y(self.pivot))
    }

    /// `x_pivot * J + y_pivot * K`.
    pub fn reconstruct(&self) -> MonomialIdeal {
        let xj = self.j.scale(&self.x()).expect("J avoids the pivot pair");
        let yk = self.k.scale(&self.y()).expect("K avoids the pivot pair");
        xj.sum(&yk)
    }
}

/// Splits at `pivot`. Every generator must be divisible by exactly one of
/// `x_pivot`, `y_pivot`.
pub fn split_at_neuron(ideal: &PolarizedNeuralIdeal, pivot: u32) -> Result<NeuronSplit> {
    split_unchecked(ideal, pivot)
}

fn split_unchecked(ideal: &MonomialIdeal, pivot: u32) -> Result<NeuronSplit> {
    let n = ideal.neurons();
    if pivot == 0 || pivot > n {
        return Err(Error::OutOfRange {
            name: "pivot",
            value: pivot as i64,
            lo: 1,
            hi: n as i64,
        });
    }
    let (x, y) = (
        Monomial::var(n, Var::X(pivot)),
        Monomial::var(n, Var::Y(pivot)),
    );
    let (mut j, mut k) = (Vec::new(), Vec::new());
    for g in ideal.gens() {
        match (x.divides(g), y.divides(g)) {
            (true, false) => j.push(g.colon(&x)),
            (false, true) => k.push(g.colon(&y)),
            _ => {
                return Err(Error::NotSplittable {
                    pivot,
                    generator: *g,
                })
            }
        }
    }
    Ok(NeuronSplit {
        pivot,
        j: MonomialIdeal::minimalize(j, n),
        k: MonomialIdeal::minimalize(k, n),
    })
}

/// Betti numbers of `I = xJ + yK` predicted from those of `J`, `K` and
/// `J ∩ K`, valid when `J` has a linear resolution.
#[derive(Debug, Clone)]
pub struct SplittingPrediction {
    /// `pd I = max{pd J, pd K, pd(J∩K) + 1}` and
    /// `reg I = max{reg J + 1, reg K + 1, reg(J∩K) + 1}`.
    pub invariants: Invariants,
    /// `β_{i,b}(I) = β_{i,b}(xJ) + β_{i,b}(yK) + β_{i-1,b}(xJ ∩ yK)`.
    pub table: BettiTable,
}

/// Predicts the Betti table of `split.reconstruct()` from its pieces.
/// Refuses with [`Error::JNotLinear`] unless `J` has a linear resolution.
pub fn betti_splitting_predict(
    split: &NeuronSplit,
    field: FieldTag,
) -> Result<SplittingPrediction> {
    let mut cache = HomologyCache::new(field);
    betti_splitting_predict_cached(split, &mut cache)
}

pub(crate) fn betti_splitting_predict_cached(
    split: &NeuronSplit,
    cache: &mut HomologyCache,
) -> Result<SplittingPrediction> {
    split.j.require_proper_nonzero()?;
    split.k.require_proper_nonzero()?;
    let tj = betti_table_cached(&split.j, cache)?;
    if !table_is_linear(&split.j, &tj) {
        return Err(Error::JNotLinear);
    }
    let tk = betti_table_cached(&split.k, cache)?;
    let both = split.j.intersect(&split.k);
    let tjk = betti_table_cached(&both, cache)?;

    let invariants = Invariants {
        pd: tj.pd().max(tk.pd()).max(tjk.pd() + 1),
        reg: (tj.reg() + 1).max(tk.reg() + 1).max(tjk.reg() + 1),
    };
    let (x, y) = (split.x(), split.y());
    let xy = x.lcm(&y);
    let entries = tj
        .fine()
        .iter()
        .map(|(&(i, b), &r)| ((i, b.lcm(&x)), r))
        .chain(tk.fine().iter().map(|(&(i, b), &r)| ((i, b.lcm(&y)), r)))
        .chain(
            tjk.fine()
                .iter()
                .map(|(&(i, b), &r)| ((i + 1, b.lcm(&xy)), r)),
        );
    Ok(SplittingPrediction {
        invariants,
        table: BettiTable::from_fine(split.j.neurons(), entries),
    })
}

/// An ordering of the minimal generators in which every colon ideal
/// `(m_1, …, m_k) : m_{k+1}` is generated by variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearQuotientOrder {
    pub order: Vec<Monomial>,
}

fn colon_is_linear(prefix: &[Monomial], next: &Monomial, n: u32) -> bool {
    let colon = MonomialIdeal::minimalize(prefix.iter().map(|m| m.colon(next)), n);
    colon.gens().iter().all(|g| g.degree() == 1)
}

/// Checks a proposed order against the definition.
pub fn is_linear_quotient_order(ideal: &MonomialIdeal, order: &[Monomial]) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != ideal.gens() {
        return false;
    }
    (1..order.len()).all(|k| colon_is_linear(&order[..k], &order[k], ideal.neurons()))
}

/// Backtracking search for a linear-quotients order.
///
/// Candidates are tried in canonical generator order, so the first order
/// found is the lexicographically least admissible one. Whether a prefix
/// can be extended depends only on its set of generators, so dead sets are
/// memoized.
pub fn linear_quotients_search(ideal: &MonomialIdeal) -> Result<Option<LinearQuotientOrder>> {
    ideal.require_proper_nonzero()?;
    let gens = ideal.gens();
    let words = gens.len().div_ceil(64);
    let mut used = vec![0u64; words];
    let mut order: Vec<Monomial> = Vec::with_capacity(gens.len());
    let mut dead: HashSet<Vec<u64>> = HashSet::new();

    fn extend(
        gens: &[Monomial],
        n: u32,
        used: &mut Vec<u64>,
        order: &mut Vec<Monomial>,
        dead: &mut HashSet<Vec<u64>>,
    ) -> bool {
        if order.len() == gens.len() {
            return true;
        }
        if dead.contains(used) {
            return false;
        }
        for (idx, g) in gens.iter().enumerate() {
            let (w, bit) = (idx / 64, 1u64 << (idx % 64));
            if used[w] & bit != 0 || !colon_is_linear(order, g, n) {
                continue;
            }
            used[w] |= bit;
            order.push(*g);
            if extend(gens, n, used, order, dead) {
                return true;
            }
            order.pop();
            used[w] &= !bit;
        }
        dead.insert(used.clone());
        false
    }

    Ok(
        extend(gens, ideal.neurons(), &mut used, &mut order, &mut dead)
            .then_some(LinearQuotientOrder { order }),
    )
}

/// How [`recursive_linear_check`] picks the neuron to split at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum PivotRule {
    /// Always the last neuron.
    #[default]
    Last,
    /// The neuron whose smaller branch has the fewest generators (ties go
    /// to the lowest index). An empty branch needs no containment test.
    Smallest,
}

/// The condition imposed on the two branches `J`, `K` of a split when both
/// are nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SplitCriterion {
    /// One generator set contains the other. Sufficient for linearity but
    /// not necessary: `(x1x2x3, x1y2x3, x1x2y3, y1x2y3)` has linear
    /// quotients while its branches at neuron 3 are incomparable.
    #[default]
    Containment,
    /// `J ∩ K` is generated by the common generators of `J` and `K`, and
    /// that ideal passes recursively. Since `J` linear makes the split a
    /// Betti splitting, this is equivalent to `reg(J ∩ K) = n - 1`.
    Intersection,
}

/// Recursive linearity test for an ideal generated in degree `n`, using no
/// homology: split at a neuron, require both branches to pass, and apply
/// `criterion` to the pair. An empty branch reduces to the other one, since
/// multiplying by a variable preserves linearity.
pub fn recursive_linear_check_with(
    ideal: &PolarizedNeuralIdeal,
    rule: PivotRule,
    criterion: SplitCriterion,
) -> Result<bool> {
    let n = ideal.neurons();
    ideal.require_proper_nonzero()?;
    if ideal.equigenerated_degree()? != Some(n) {
        return Err(Error::NotEquigeneratedDegreeN { expected: n });
    }
    Ok(recurse(ideal, rule, criterion))
}

/// [`recursive_linear_check_with`] under [`SplitCriterion::Containment`].
pub fn recursive_linear_check(ideal: &PolarizedNeuralIdeal, rule: PivotRule) -> Result<bool> {
    recursive_linear_check_with(ideal, rule, SplitCriterion::Containment)
}

fn recurse(ideal: &MonomialIdeal, rule: PivotRule, criterion: SplitCriterion) -> bool {
    let n = ideal.neurons();
    if n == 1 {
        return true;
    }
    let split = match rule {
        PivotRule::Last => split_unchecked(ideal, n),
        PivotRule::Smallest => (1..=n)
            .map(|p| split_unchecked(ideal, p))
            .min_by_key(|s| {
                s.as_ref()
                    .map(|s| s.j.len().min(s.k.len()))
                    .unwrap_or(usize::MAX)
            })
            .expect("n >= 1"),
    }
    .expect("degree-n generators use every neuron exactly once");
    let j = split.j.drop_neuron(split.pivot);
    let k = split.k.drop_neuron(split.pivot);
    match (j.is_zero(), k.is_zero()) {
        (true, _) => recurse(&k, rule, criterion),
        (_, true) => recurse(&j, rule, criterion),
        _ => {
            if !(recurse(&j, rule, criterion) && recurse(&k, rule, criterion)) {
                return false;
            }
            match criterion {
                SplitCriterion::Containment => j.gens_subset_of(&k) || k.gens_subset_of(&j),
                SplitCriterion::Intersection => {
                    let common = MonomialIdeal::minimalize(
                        j.gens().iter().filter(|g| k.gens().contains(g)).copied(),
                        j.neurons(),
                    );
                    !common.is_zero()
                        && j.intersect(&k) == common
                        && recurse(&common, rule, criterion)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::{betti_table, has_linear_resolution};

    fn ideal(text: &str, n: u32) -> MonomialIdeal {
        MonomialIdeal::parse(text, Some(n)).unwrap()
    }

    fn pol(text: &str, n: u32) -> PolarizedNeuralIdeal {
        ideal(text, n).validate_polarized().unwrap()
    }

    #[test]
    fn containment_is_not_necessary() {
        let i = pol("x1*x2*x3\nx1*y2*x3\nx1*x2*y3\ny1*x2*y3", 3);
        let order: Vec<Monomial> = i.gens().to_vec();
        assert!(is_linear_quotient_order(&i, &order));
        assert!(has_linear_resolution(&i, FieldTag::F2).unwrap());
        let s = split_at_neuron(&i, 3).unwrap();
        assert!(!s.j.gens_subset_of(&s.k) && !s.k.gens_subset_of(&s.j));
        assert!(!recursive_linear_check(&i, PivotRule::Last).unwrap());
        for rule in [PivotRule::Last, PivotRule::Smallest] {
            assert!(recursive_linear_check_with(&i, rule, SplitCriterion::Intersection).unwrap());
        }
    }

    #[test]
    fn split_examples() {
        let s = split_at_neuron(&pol("x1*x2\ny1*x2\nx1*y2", 2), 2).unwrap();
        assert_eq!(s.j, ideal("x1\ny1", 2));
        assert_eq!(s.k, ideal("x1", 2));
        let s = split_at_neuron(&pol("x1*x2\ny1*y2", 2), 2).unwrap();
        assert_eq!((s.j, s.k), (ideal("x1", 2), ideal("y1", 2)));
        assert!(matches!(
            split_at_neuron(&pol("x1*x2\ny1", 2), 2),
            Err(Error::NotSplittable { pivot: 2, .. })
        ));
    }

    #[test]
    fn reconstruct_round_trip() {
        let i = pol("x1*x2*y3\ny1*x2*x3\nx1*y2*x3", 3);
        for p in 1..=3 {
            assert_eq!(split_at_neuron(&i, p).unwrap().reconstruct(), *i);
        }
    }

    #[test]
    fn prediction_examples() {
        let i2 = pol("x1*x2\nx1*y2\ny1*x2\ny1*y2", 2);
        let s = split_at_neuron(&i2, 2).unwrap();
        let p = betti_splitting_predict(&s, FieldTag::F2).unwrap();
        assert_eq!(p.invariants.pd, 2);
        assert_eq!(p.table, betti_table(&i2, FieldTag::F2).unwrap());

        let i = pol("x1*x2\ny1*x2\nx1*y2", 2);
        let s = split_at_neuron(&i, 2).unwrap();
        let p = betti_splitting_predict(&s, FieldTag::F2).unwrap();
        assert_eq!(p.invariants.reg, 2);
        assert_eq!(p.table, betti_table(&i, FieldTag::F2).unwrap());

        let i = pol("x1*x2\ny1*y2", 2);
        let s = split_at_neuron(&i, 2).unwrap();
        let p = betti_splitting_predict(&s, FieldTag::F2).unwrap();
        assert_eq!(p.invariants.reg, 3);
        assert_eq!(
            p.invariants.reg,
            betti_table(&i, FieldTag::F2).unwrap().reg()
        );
    }

    #[test]
    fn prediction_refuses_nonlinear_j() {
        // J = (x1*y2, y1*x2) has reg 3 in degree 2.
        let i = pol("x1*y2*x3\ny1*x2*x3\nx1*x2*y3", 3);
        let s = split_at_neuron(&i, 3).unwrap();
        assert!(matches!(
            betti_splitting_predict(&s, FieldTag::F2),
            Err(Error::JNotLinear)
        ));
        let i = pol("x1*x2", 2);
        let s = split_at_neuron(&i, 2).unwrap();
        assert_eq!(
            betti_splitting_predict(&s, FieldTag::F2).unwrap_err(),
            Error::UnitOrZeroIdeal
        );
    }

    #[test]
    fn lq_search_examples() {
        let i = ideal("x1*x2\ny1*x2", 2);
        let o = linear_quotients_search(&i).unwrap().unwrap();
        assert_eq!(o.order, i.gens());
        assert_eq!(i.gens()[0].to_string(), "x1*x2");
        assert!(linear_quotients_search(&ideal("x1*y2\ny1*x2", 2))
            .unwrap()
            .is_none());
        let p = ideal("x1*y2", 2);
        assert_eq!(
            linear_quotients_search(&p).unwrap().unwrap().order,
            p.gens()
        );
        assert_eq!(
            linear_quotients_search(&MonomialIdeal::zero(2)),
            Err(Error::UnitOrZeroIdeal)
        );
    }

    #[test]
    fn lq_search_path_ideal() {
        let i = ideal("x1*x2\nx3*x4\nx2*x3", 4);
        let o = linear_quotients_search(&i).unwrap().unwrap();
        assert!(is_linear_quotient_order(&i, &o.order));
        assert_eq!(o.order[1].to_string(), "x2*x3");
    }

    #[test]
    fn recursive_examples() {
        for rule in [PivotRule::Last, PivotRule::Smallest] {
            assert!(recursive_linear_check(&pol("x1*x2\ny1*x2\nx1*y2", 2), rule).unwrap());
            assert!(!recursive_linear_check(&pol("x1*x2\ny1*y2", 2), rule).unwrap());
            assert!(recursive_linear_check(&pol("x1*y2*x3", 3), rule).unwrap());
        }
        assert!(has_linear_resolution(&ideal("x1*x2\ny1*x2\nx1*y2", 2), FieldTag::F2).unwrap());
        assert_eq!(
            recursive_linear_check(&pol("x1\ny1*x2", 2), PivotRule::Last),
            Err(Error::NotEquigeneratedDegreeN { expected: 2 })
        );
        assert_eq!(
            recursive_linear_check(&pol("x1", 2), PivotRule::Last),
            Err(Error::NotEquigeneratedDegreeN { expected: 2 })
        );
    }
}
