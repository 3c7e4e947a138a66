//! Squarefree monomials in `x_1..x_n, y_1..y_n` packed into a single machine word.
//!
//! Bit `i - 1` holds `x_i` and bit `n + i - 1` holds `y_i`. A bit set cannot
//! record an exponent above one, so every value is squarefree by construction.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{check_neurons, Error, Result};

/// A single variable, identified by its 1-based neuron index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(u32),
    Y(u32),
}

impl Var {
    pub fn neuron(self) -> u32 {
        match self {
            Var::X(i) | Var::Y(i) => i,
        }
    }

    /// Bit position of this variable in a ring with `n` neurons.
    pub fn bit(self, n: u32) -> u32 {
        match self {
            Var::X(i) => i - 1,
            Var::Y(i) => n + i - 1,
        }
    }

    fn from_bit(bit: u32, n: u32) -> Var {
        if bit < n {
            Var::X(bit + 1)
        } else {
            Var::Y(bit - n + 1)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Y(i) => write!(f, "y{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    mask: u64,
    n: u32,
}

fn ring_mask(n: u32) -> u64 {
    if 2 * n >= 64 {
        u64::MAX
    } else {
        (1u64 << (2 * n)) - 1
    }
}

fn x_block(n: u32) -> u64 {
    ring_mask(n) >> n
}

impl Monomial {
    /// Builds a monomial from a raw mask. Fails if `n` is out of range or the
    /// mask has bits beyond position `2n - 1`.
    pub fn from_mask(n: u32, mask: u64) -> Result<Self> {
        check_neurons(n)?;
        if mask & !ring_mask(n) != 0 {
            return Err(Error::OutOfRange {
                name: "mask",
                value: mask as i64,
                lo: 0,
                hi: ring_mask(n) as i64,
            });
        }
        Ok(Monomial { mask, n })
    }

    pub(crate) fn raw(n: u32, mask: u64) -> Self {
        debug_assert!(mask & !ring_mask(n) == 0);
        Monomial { mask, n }
    }

    pub fn one(n: u32) -> Self {
        Monomial { mask: 0, n }
    }

    pub fn var(n: u32, v: Var) -> Self {
        debug_assert!(v.neuron() >= 1 && v.neuron() <= n);
        Monomial {
            mask: 1 << v.bit(n),
            n,
        }
    }

    pub fn from_vars(n: u32, vars: impl IntoIterator<Item = Var>) -> Self {
        let mask = vars.into_iter().fold(0, |acc, v| acc | (1u64 << v.bit(n)));
        Monomial { mask, n }
    }

    /// The product of every variable in the ring.
    pub fn top(n: u32) -> Self {
        Monomial {
            mask: ring_mask(n),
            n,
        }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn neurons(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_one(&self) -> bool {
        self.mask == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.mask & !other.mask == 0
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n, other.n);
        Monomial {
            mask: self.mask | other.mask,
            n: self.n,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n, other.n);
        Monomial {
            mask: self.mask & other.mask,
            n: self.n,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    /// `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n, other.n);
        Monomial {
            mask: self.mask & !other.mask,
            n: self.n,
        }
    }

    /// Squarefree product; `None` when the factors share a variable.
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        if self.is_coprime(other) {
            Some(self.lcm(other))
        } else {
            None
        }
    }

    /// First neuron `i` with `x_i * y_i` dividing this monomial.
    pub fn pair_violation(&self) -> Option<u32> {
        let both = self.mask & (self.mask >> self.n) & x_block(self.n);
        if both == 0 {
            None
        } else {
            Some(both.trailing_zeros() + 1)
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.mask >> v.bit(self.n) & 1 == 1
    }

    /// Variables in bit order (`x_1..x_n`, then `y_1..y_n`).
    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        BitIter(self.mask).map(move |b| Var::from_bit(b, self.n))
    }

    /// Re-embeds the monomial in a ring with `m >= n` neurons.
    pub fn lift(&self, m: u32) -> Monomial {
        debug_assert!(m >= self.n);
        Monomial::from_vars(m, self.vars())
    }

    /// Deletes neuron `pivot` and renumbers the later neurons down by one.
    /// The monomial must not involve `x_pivot` or `y_pivot`.
    pub fn drop_neuron(&self, pivot: u32) -> Monomial {
        debug_assert!(!self.contains(Var::X(pivot)) && !self.contains(Var::Y(pivot)));
        let renumber = |i: u32| if i > pivot { i - 1 } else { i };
        Monomial::from_vars(
            self.n - 1,
            self.vars().map(|v| match v {
                Var::X(i) => Var::X(renumber(i)),
                Var::Y(i) => Var::Y(renumber(i)),
            }),
        )
    }

    /// Parses `x1*y2*x3`, `x1 y2 x3` or the literal `1`.
    pub fn parse(s: &str, n: u32) -> Result<Monomial> {
        check_neurons(n)?;
        let vars = parse_vars(s).map_err(|m| Error::parse(1, m))?;
        let mut mask = 0u64;
        for v in vars {
            if v.neuron() > n {
                return Err(Error::parse(
                    1,
                    format!("variable {v} exceeds neuron count {n}"),
                ));
            }
            mask |= 1 << v.bit(n);
        }
        Ok(Monomial { mask, n })
    }
}

/// Tokenizes a monomial, rejecting repeated variables.
pub(crate) fn parse_vars(s: &str) -> std::result::Result<Vec<Var>, String> {
    let tokens: Vec<&str> = s
        .split(|c: char| c == '*' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err("empty monomial".into());
    }
    if tokens == ["1"] {
        return Ok(Vec::new());
    }
    let mut vars = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let (kind, idx) = tok.split_at(1);
        let i: u32 = idx
            .parse()
            .ok()
            .filter(|&i| i >= 1)
            .ok_or_else(|| format!("bad variable token `{tok}`"))?;
        let v = match kind {
            "x" => Var::X(i),
            "y" => Var::Y(i),
            _ => return Err(format!("bad variable token `{tok}`")),
        };
        if vars.contains(&v) {
            return Err(format!(
                "variable {v} repeated; monomials must be squarefree"
            ));
        }
        vars.push(v);
    }
    Ok(vars)
}

/// Canonical order: degree first, then the mask as an integer.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.mask, self.n).cmp(&(other.degree(), other.mask, other.n))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for i in 1..=self.n {
            for v in [Var::X(i), Var::Y(i)] {
                if self.contains(v) {
                    if !first {
                        f.write_str("*")?;
                    }
                    write!(f, "{v}")?;
                    first = false;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Iterates over set bit positions, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_and_degree() {
        let m = Monomial::parse("x1*y2*x3", 3).unwrap();
        assert_eq!(m.mask(), 0b010_101);
        assert_eq!(m.degree(), 3);
        assert!(Monomial::one(3).is_one());
        assert_eq!(Monomial::parse("1", 2).unwrap(), Monomial::one(2));
    }

    #[test]
    fn display_orders_by_neuron() {
        let m = Monomial::parse("x2 y1", 2).unwrap();
        assert_eq!(m.to_string(), "y1*x2");
        assert_eq!(Monomial::one(4).to_string(), "1");
    }

    #[test]
    fn pair_violation_reports_first_pair() {
        assert_eq!(
            Monomial::parse("x1*y1", 1).unwrap().pair_violation(),
            Some(1)
        );
        assert_eq!(
            Monomial::parse("x1*x2*y2", 2).unwrap().pair_violation(),
            Some(2)
        );
        assert_eq!(Monomial::parse("x1*y2", 2).unwrap().pair_violation(), None);
        assert_eq!(Monomial::top(32).pair_violation(), Some(1));
    }

    #[test]
    fn parse_errors() {
        assert!(Monomial::parse("x1*x1", 2).is_err());
        assert!(Monomial::parse("x3", 2).is_err());
        assert!(Monomial::parse("z1", 2).is_err());
        assert!(Monomial::parse("x0", 2).is_err());
        assert!(Monomial::parse("", 2).is_err());
        assert_eq!(Monomial::parse("x1", 33), Err(Error::NeuronCount(33)));
    }

    #[test]
    fn drop_and_lift() {
        let m = Monomial::parse("x1*y3", 3).unwrap();
        assert_eq!(m.drop_neuron(2), Monomial::parse("x1*y2", 2).unwrap());
        assert_eq!(m.lift(4), Monomial::parse("x1*y3", 4).unwrap());
    }

    #[test]
    fn canonical_order() {
        let a = Monomial::parse("y1", 2).unwrap();
        let b = Monomial::parse("x1*x2", 2).unwrap();
        let c = Monomial::parse("x1", 2).unwrap();
        let mut v = vec![b, a, c];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }
}
