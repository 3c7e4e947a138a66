//! Squarefree monomial ideals stored by their minimal generators.

use std::fmt;
use std::ops::Deref;

use crate::error::{check_neurons, Error, Result};
use crate::monomial::{parse_vars, Monomial, Var};

/// A squarefree monomial ideal in `2n` variables.
///
/// `gens` is always the minimal generating set: an antichain under
/// divisibility, sorted by (degree, mask) with no duplicates. The zero ideal
/// has no generators; the unit ideal is the single generator `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: u32,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Reduces an arbitrary generating set to its minimal generators.
    pub fn minimalize(gens: impl IntoIterator<Item = Monomial>, n: u32) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        debug_assert!(all.iter().all(|g| g.neurons() == n));
        all.sort_unstable();
        all.dedup();
        // Divisors sort no later than their multiples, so one forward pass
        // against the kept prefix is enough.
        let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
        for g in all {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        MonomialIdeal { n, gens: kept }
    }

    pub fn zero(n: u32) -> Self {
        MonomialIdeal {
            n,
            gens: Vec::new(),
        }
    }

    pub fn unit(n: u32) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal {
            n: m.neurons(),
            gens: vec![m],
        }
    }

    pub fn neurons(&self) -> u32 {
        self.n
    }

    /// The minimal generators in canonical order.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Number of minimal generators.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// No generators, i.e. the zero ideal.
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    /// Nonzero and not the unit ideal.
    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub(crate) fn require_proper_nonzero(&self) -> Result<()> {
        if self.is_proper_nonzero() {
            Ok(())
        } else {
            Err(Error::UnitOrZeroIdeal)
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `mingens(self) ⊆ mingens(other)` as sets.
    pub fn gens_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens
            .iter()
            .all(|g| other.gens.binary_search(g).is_ok())
    }

    /// Least common multiple of every generator; `1` for the zero ideal.
    pub fn lcm_all(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.n), |acc, g| acc.lcm(g))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    /// `I : u`, generated by `m / gcd(u, m)` over the minimal generators.
    pub fn colon(&self, u: &Monomial) -> MonomialIdeal {
        MonomialIdeal::minimalize(self.gens.iter().map(|g| g.colon(u)), self.n)
    }

    /// `I ∩ J`, generated by the pairwise lcms of minimal generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        debug_assert_eq!(self.n, other.n);
        let lcms = self
            .gens
            .iter()
            .flat_map(|g| other.gens.iter().map(move |h| g.lcm(h)));
        MonomialIdeal::minimalize(lcms, self.n)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        debug_assert_eq!(self.n, other.n);
        MonomialIdeal::minimalize(self.gens.iter().chain(&other.gens).copied(), self.n)
    }

    /// `u * I` for a multiplier sharing no variable with any generator.
    pub fn scale(&self, u: &Monomial) -> Result<MonomialIdeal> {
        let mut out = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            out.push(g.checked_mul(u).ok_or(Error::NonSquarefreeProduct {
                multiplier: *u,
                generator: *g,
            })?);
        }
        Ok(MonomialIdeal::minimalize(out, self.n))
    }

    /// `I^{≤m}`: the ideal of minimal generators dividing `m`.
    pub fn restrict(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal {
            n: self.n,
            gens: self.gens.iter().filter(|g| g.divides(m)).copied().collect(),
        }
    }

    /// The common generator degree, if there is one.
    pub fn equigenerated_degree(&self) -> Result<Option<u32>> {
        let first = self.gens.first().ok_or(Error::ZeroIdeal)?.degree();
        Ok(self
            .gens
            .iter()
            .all(|g| g.degree() == first)
            .then_some(first))
    }

    pub fn validate_polarized(self) -> Result<PolarizedNeuralIdeal> {
        for g in &self.gens {
            if let Some(pair) = g.pair_violation() {
                return Err(Error::PairViolation {
                    pair,
                    generator: *g,
                });
            }
        }
        Ok(PolarizedNeuralIdeal(self))
    }

    /// Re-embeds in a ring with `m >= n` neurons.
    pub fn lift(&self, m: u32) -> MonomialIdeal {
        MonomialIdeal::minimalize(self.gens.iter().map(|g| g.lift(m)), m)
    }

    /// Removes an unused neuron and renumbers the later ones.
    pub(crate) fn drop_neuron(&self, pivot: u32) -> MonomialIdeal {
        MonomialIdeal::minimalize(self.gens.iter().map(|g| g.drop_neuron(pivot)), self.n - 1)
    }

    /// Text form: a `# neurons: n` header, then one generator per line.
    pub fn render(&self) -> String {
        let mut out = format!("# neurons: {}\n", self.n);
        for g in &self.gens {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the line-oriented ideal format.
    ///
    /// The neuron count comes from `n` if given, else from a `# neurons: k`
    /// header, else from the largest variable index that appears.
    pub fn parse(text: &str, n: Option<u32>) -> Result<MonomialIdeal> {
        let mut declared: Option<u32> = None;
        let mut lines: Vec<(usize, Vec<Var>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let (body, comment) = match raw.find('#') {
                Some(p) => (&raw[..p], Some(&raw[p + 1..])),
                None => (raw, None),
            };
            if let Some(k) = comment.and_then(neuron_header) {
                let k = k.map_err(|m| Error::parse(lineno, m))?;
                declared = Some(k);
            }
            if body.trim().is_empty() {
                continue;
            }
            let vars = parse_vars(body).map_err(|m| Error::parse(lineno, m))?;
            lines.push((lineno, vars));
        }
        let inferred = lines
            .iter()
            .flat_map(|(_, vs)| vs.iter().map(|v| v.neuron()))
            .max();
        let n = match (n, declared) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::parse(
                    0,
                    format!("neuron count {a} conflicts with header value {b}"),
                ))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => inferred.ok_or_else(|| {
                Error::parse(0, "cannot infer the neuron count of an empty ideal")
            })?,
        };
        check_neurons(n)?;
        let mut gens = Vec::with_capacity(lines.len());
        for (lineno, vars) in lines {
            if let Some(v) = vars.iter().find(|v| v.neuron() > n) {
                return Err(Error::parse(
                    lineno,
                    format!("variable {v} exceeds neuron count {n}"),
                ));
            }
            gens.push(Monomial::from_vars(n, vars));
        }
        Ok(MonomialIdeal::minimalize(gens, n))
    }
}

fn neuron_header(comment: &str) -> Option<std::result::Result<u32, String>> {
    let rest = comment.trim().strip_prefix("neurons:")?;
    Some(
        rest.trim()
            .parse()
            .map_err(|_| format!("bad neuron count `{}`", rest.trim())),
    )
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// A monomial ideal none of whose minimal generators is divisible by any
/// `x_i * y_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolarizedNeuralIdeal(MonomialIdeal);

impl PolarizedNeuralIdeal {
    pub fn into_inner(self) -> MonomialIdeal {
        self.0
    }
}

impl Deref for PolarizedNeuralIdeal {
    type Target = MonomialIdeal;

    fn deref(&self) -> &MonomialIdeal {
        &self.0
    }
}

impl AsRef<MonomialIdeal> for PolarizedNeuralIdeal {
    fn as_ref(&self) -> &MonomialIdeal {
        &self.0
    }
}

impl fmt::Display for PolarizedNeuralIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str, n: u32) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn ideal(gens: &[&str], n: u32) -> MonomialIdeal {
        MonomialIdeal::minimalize(gens.iter().map(|s| m(s, n)), n)
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(&["x1", "x1*x2"], 2).gens(), &[m("x1", 2)]);
        assert_eq!(ideal(&["x1*y2", "y1*x2"], 2).len(), 2);
        assert_eq!(ideal(&["x1*x2", "x2", "y1*x2"], 2).gens(), &[m("x2", 2)]);
        assert!(MonomialIdeal::minimalize(Vec::new(), 3).is_zero());
    }

    #[test]
    fn colon_examples() {
        let i = ideal(&["x1*x2", "x1*y2"], 2);
        assert_eq!(i.colon(&m("x1", 2)), ideal(&["x2", "y2"], 2));
        let p = ideal(&["x1"], 1);
        assert_eq!(p.colon(&m("y1", 1)), p);
        assert!(p.colon(&m("x1", 1)).is_unit());
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(
            ideal(&["x1"], 1).intersect(&ideal(&["y1"], 1)),
            ideal(&["x1*y1"], 1)
        );
        let i = ideal(&["x1", "y1"], 1);
        assert_eq!(i.intersect(&i), i);
        assert_eq!(
            ideal(&["x1*x2"], 2).intersect(&ideal(&["y1"], 2)),
            ideal(&["x1*x2*y1"], 2)
        );
    }

    #[test]
    fn scale_examples() {
        let i = ideal(&["x2", "y2"], 2);
        assert_eq!(i.scale(&m("x1", 2)).unwrap(), ideal(&["x1*x2", "x1*y2"], 2));
        assert_eq!(i.scale(&Monomial::one(2)).unwrap(), i);
        assert!(matches!(
            ideal(&["x1"], 1).scale(&m("x1", 1)),
            Err(Error::NonSquarefreeProduct { .. })
        ));
    }

    #[test]
    fn restrict_examples() {
        let i = ideal(&["x1*y2", "y1*x2", "x1*x2"], 2);
        assert_eq!(i.restrict(&m("x1*x2*y2", 2)), ideal(&["x1*y2", "x1*x2"], 2));
        assert!(i.restrict(&Monomial::one(2)).is_zero());
        assert_eq!(i.restrict(&Monomial::top(2)), i);
        assert_eq!(i.restrict(&i.lcm_all()), i);
    }

    #[test]
    fn validate_examples() {
        assert_eq!(
            ideal(&["x1*y1"], 1).validate_polarized().unwrap_err(),
            Error::PairViolation {
                pair: 1,
                generator: m("x1*y1", 1)
            }
        );
        assert!(ideal(&["x1*y2"], 2).validate_polarized().is_ok());
        assert!(matches!(
            ideal(&["x1*x2*y2"], 2).validate_polarized(),
            Err(Error::PairViolation { pair: 2, .. })
        ));
    }

    #[test]
    fn equigenerated_examples() {
        assert_eq!(
            ideal(&["x1*y2", "y1*x2"], 2).equigenerated_degree(),
            Ok(Some(2))
        );
        assert_eq!(ideal(&["x1", "y1*x2"], 2).equigenerated_degree(), Ok(None));
        assert_eq!(ideal(&["x1"], 1).equigenerated_degree(), Ok(Some(1)));
        assert_eq!(
            MonomialIdeal::zero(2).equigenerated_degree(),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn parse_and_render() {
        let text = "# comment\nx1*y2\n\ny1 x2  # trailing\n";
        let i = MonomialIdeal::parse(text, None).unwrap();
        assert_eq!(i, ideal(&["x1*y2", "y1*x2"], 2));
        let padded = MonomialIdeal::parse("x1\n", Some(3)).unwrap();
        assert_eq!(padded.neurons(), 3);
        assert_eq!(
            MonomialIdeal::parse(&padded.render(), None).unwrap(),
            padded
        );
        let zero = MonomialIdeal::zero(2);
        assert_eq!(MonomialIdeal::parse(&zero.render(), None).unwrap(), zero);
        assert!(MonomialIdeal::parse("x1*x1\n", None).is_err());
        assert!(MonomialIdeal::parse("", None).is_err());
        assert!(MonomialIdeal::parse("# neurons: 2\nx3\n", None).is_err());
        assert!(MonomialIdeal::parse("# neurons: 2\nx1\n", Some(3)).is_err());
    }

    fn arb_monomial(n: u32) -> impl Strategy<Value = Monomial> {
        (0u64..(1 << (2 * n))).prop_map(move |mask| Monomial::from_mask(n, mask).unwrap())
    }

    fn arb_gens() -> impl Strategy<Value = Vec<Monomial>> {
        prop::collection::vec(arb_monomial(4), 0..8)
    }

    fn all_monomials(n: u32) -> impl Iterator<Item = Monomial> {
        (0u64..(1 << (2 * n))).map(move |mask| Monomial::from_mask(n, mask).unwrap())
    }

    proptest! {
        #[test]
        fn minimalize_idempotent_and_order_free(mut gens in arb_gens()) {
            let a = MonomialIdeal::minimalize(gens.clone(), 4);
            let b = MonomialIdeal::minimalize(a.gens().to_vec(), 4);
            prop_assert_eq!(&a, &b);
            gens.reverse();
            prop_assert_eq!(&a, &MonomialIdeal::minimalize(gens, 4));
            for (i, g) in a.gens().iter().enumerate() {
                for h in &a.gens()[i + 1..] {
                    prop_assert!(!g.divides(h) && !h.divides(g));
                }
            }
        }

        #[test]
        fn colon_matches_membership(gens in arb_gens(), u in arb_monomial(4)) {
            let i = MonomialIdeal::minimalize(gens, 4);
            let q = i.colon(&u);
            for w in all_monomials(4) {
                // w*u ∈ I only depends on the squarefree lcm, since I is squarefree.
                prop_assert_eq!(q.contains(&w), i.contains(&w.lcm(&u)));
            }
        }

        #[test]
        fn intersect_matches_membership(a in arb_gens(), b in arb_gens()) {
            let i = MonomialIdeal::minimalize(a, 4);
            let j = MonomialIdeal::minimalize(b, 4);
            let k = i.intersect(&j);
            for w in all_monomials(4) {
                prop_assert_eq!(k.contains(&w), i.contains(&w) && j.contains(&w));
            }
        }

        #[test]
        fn restrict_is_exact_subset(gens in arb_gens(), cut in arb_monomial(4)) {
            let i = MonomialIdeal::minimalize(gens, 4);
            let r = i.restrict(&cut);
            let expected: Vec<Monomial> = i.gens().iter().filter(|g| g.divides(&cut)).copied().collect();
            prop_assert_eq!(r.gens(), expected.as_slice());
        }

        #[test]
        fn polarized_generators_have_degree_at_most_n(gens in arb_gens()) {
            if let Ok(p) = MonomialIdeal::minimalize(gens, 4).validate_polarized() {
                prop_assert!(p.gens().iter().all(|g| g.degree() <= 4));
            }
        }

        #[test]
        fn render_parse_round_trip(gens in arb_gens()) {
            let i = MonomialIdeal::minimalize(gens, 4);
            prop_assert_eq!(MonomialIdeal::parse(&i.render(), None).unwrap(), i);
        }
    }
}
