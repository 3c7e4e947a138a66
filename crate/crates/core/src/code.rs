//! Neural codes, their pseudomonomial vanishing generators, and polarization.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{check_neurons, Error, Result};
use crate::ideal::{MonomialIdeal, PolarizedNeuralIdeal};
use crate::monomial::{BitIter, Monomial, Var};

/// A binary word `c_1 c_2 … c_n`; bit `i - 1` of `bits` holds `c_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    bits: u32,
    len: u32,
}

impl Codeword {
    pub fn new(len: u32, bits: u32) -> Result<Self> {
        check_neurons(len)?;
        if len < 32 && bits >> len != 0 {
            return Err(Error::LengthMismatch {
                expected: len,
                found: 32 - bits.leading_zeros(),
            });
        }
        Ok(Codeword { bits, len })
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The set of firing neurons as a mask.
    pub fn support(&self) -> u32 {
        self.bits
    }

    /// `c_i` for a 1-based neuron index.
    pub fn get(&self, i: u32) -> bool {
        self.bits >> (i - 1) & 1 == 1
    }

    /// Parses a string such as `0110`; the leftmost character is `c_1`.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let len = s.len() as u32;
        if len == 0 || len > 32 {
            return Err(format!("codeword `{s}` must have 1 to 32 characters"));
        }
        let mut bits = 0u32;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(format!("codeword `{s}` contains `{ch}`")),
            }
        }
        Ok(Codeword { bits, len })
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A set of codewords on `n` neurons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeuralCode {
    n: u32,
    words: BTreeSet<Codeword>,
}

impl NeuralCode {
    pub fn new(n: u32, words: impl IntoIterator<Item = Codeword>) -> Result<Self> {
        check_neurons(n)?;
        let mut set = BTreeSet::new();
        for w in words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
            set.insert(w);
        }
        Ok(NeuralCode { n, words: set })
    }

    pub fn neurons(&self) -> u32 {
        self.n
    }

    pub fn words(&self) -> impl Iterator<Item = &Codeword> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, c: &Codeword) -> bool {
        self.words.contains(c)
    }

    /// Every word of length `n`, the code whose neural ideal is zero.
    pub fn full(n: u32) -> Result<Self> {
        check_neurons(n)?;
        let words = (0..1u64 << n).map(|b| Codeword {
            bits: b as u32,
            len: n,
        });
        NeuralCode::new(n, words)
    }

    /// Parses one binary string per line; `#` starts a comment and blank
    /// lines are skipped. All words must share a length.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<u32> = None;
        let mut words = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let w = Codeword::parse(body).map_err(|m| Error::parse(idx + 1, m))?;
            match n {
                None => n = Some(w.len()),
                Some(k) if k != w.len() => {
                    return Err(Error::parse(
                        idx + 1,
                        format!("codeword has length {}, expected {k}", w.len()),
                    ))
                }
                _ => {}
            }
            words.push(w);
        }
        let n = n.ok_or_else(|| Error::parse(0, "code file has no codewords"))?;
        NeuralCode::new(n, words)
    }
}

/// `∏_{i∈σ} x_i ∏_{j∈τ} (1 - x_j)` with `σ ∩ τ = ∅`, stored as neuron masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pseudomonomial {
    n: u32,
    sigma: u32,
    tau: u32,
}

impl Pseudomonomial {
    pub fn new(n: u32, sigma: u32, tau: u32) -> Result<Self> {
        check_neurons(n)?;
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        if (sigma | tau) & !full != 0 {
            return Err(Error::OutOfRange {
                name: "neuron",
                value: (32 - (sigma | tau).leading_zeros()) as i64,
                lo: 1,
                hi: n as i64,
            });
        }
        if sigma & tau != 0 {
            return Err(Error::PairViolation {
                pair: (sigma & tau).trailing_zeros() + 1,
                generator: Pseudomonomial { n, sigma, tau }.polarize(),
            });
        }
        Ok(Pseudomonomial { n, sigma, tau })
    }

    /// Builds from 1-based neuron index lists.
    pub fn from_sets(n: u32, sigma: &[u32], tau: &[u32]) -> Result<Self> {
        let to_mask = |s: &[u32]| -> Result<u32> {
            s.iter().try_fold(0u32, |acc, &i| {
                if i == 0 || i > n {
                    Err(Error::OutOfRange {
                        name: "neuron",
                        value: i as i64,
                        lo: 1,
                        hi: n as i64,
                    })
                } else {
                    Ok(acc | 1 << (i - 1))
                }
            })
        };
        Pseudomonomial::new(n, to_mask(sigma)?, to_mask(tau)?)
    }

    pub fn neurons(&self) -> u32 {
        self.n
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    /// Value over F2 at a codeword.
    pub fn evaluate(&self, c: &Codeword) -> Result<bool> {
        if c.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: c.len(),
            });
        }
        Ok(self.sigma & !c.bits == 0 && self.tau & c.bits == 0)
    }

    /// `σ_p ⊆ σ_q` and `τ_p ⊆ τ_q`.
    pub fn divides(&self, other: &Pseudomonomial) -> bool {
        self.sigma & !other.sigma == 0 && self.tau & !other.tau == 0
    }

    /// Replaces each factor `1 - x_j` by `y_j`.
    pub fn polarize(&self) -> Monomial {
        let n = self.n;
        Monomial::from_vars(
            n,
            BitIter(self.sigma as u64)
                .map(|b| Var::X(b + 1))
                .chain(BitIter(self.tau as u64).map(|b| Var::Y(b + 1))),
        )
    }

    /// Parses products of `x<i>` and `(1-x<i>)` factors, e.g. `x1*(1-x3)`,
    /// or the constant `1`.
    pub fn parse(s: &str, n: u32) -> std::result::Result<Self, String> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err("empty pseudomonomial".into());
        }
        if compact == "1" {
            return Pseudomonomial::new(n, 0, 0).map_err(|e| e.to_string());
        }
        let (mut sigma, mut tau) = (Vec::new(), Vec::new());
        for tok in compact.split('*') {
            let (negated, idx) =
                if let Some(inner) = tok.strip_prefix("(1-x").and_then(|t| t.strip_suffix(')')) {
                    (true, inner)
                } else if let Some(inner) = tok.strip_prefix('x') {
                    (false, inner)
                } else {
                    return Err(format!("bad factor `{tok}`"));
                };
            let i: u32 = idx.parse().map_err(|_| format!("bad factor `{tok}`"))?;
            if sigma.contains(&i) || tau.contains(&i) {
                return Err(format!("neuron {i} appears twice"));
            }
            if negated {
                tau.push(i)
            } else {
                sigma.push(i)
            }
        }
        Pseudomonomial::from_sets(n, &sigma, &tau).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Pseudomonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sigma | self.tau == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for i in 0..self.n {
            let factor = if self.sigma >> i & 1 == 1 {
                format!("x{}", i + 1)
            } else if self.tau >> i & 1 == 1 {
                format!("(1-x{})", i + 1)
            } else {
                continue;
            };
            if !first {
                f.write_str("*")?;
            }
            f.write_str(&factor)?;
            first = false;
        }
        Ok(())
    }
}

/// One indicator pseudomonomial `ρ_v` for each word `v` outside the code.
pub fn vanishing_generators(code: &NeuralCode) -> Vec<Pseudomonomial> {
    let n = code.neurons();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    (0..=full as u64)
        .map(|b| Codeword {
            bits: b as u32,
            len: n,
        })
        .filter(|v| !code.contains(v))
        .map(|v| Pseudomonomial {
            n,
            sigma: v.bits,
            tau: full & !v.bits,
        })
        .collect()
}

/// Keeps only the pseudomonomials not divisible by another one in the set.
pub fn minimize_pseudos(ps: &[Pseudomonomial]) -> Vec<Pseudomonomial> {
    let mut sorted: Vec<Pseudomonomial> = ps.to_vec();
    sorted.sort_by_key(|p| ((p.sigma | p.tau).count_ones(), p.sigma, p.tau));
    sorted.dedup();
    let mut kept: Vec<Pseudomonomial> = Vec::with_capacity(sorted.len());
    for p in sorted {
        if !kept.iter().any(|k| k.divides(&p)) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

/// Polarizes a set of pseudomonomials into a polarized neural ideal.
pub fn polarize_all(n: u32, ps: &[Pseudomonomial]) -> PolarizedNeuralIdeal {
    let ideal = MonomialIdeal::minimalize(ps.iter().map(Pseudomonomial::polarize), n);
    ideal
        .validate_polarized()
        .expect("polarization of disjoint (σ, τ) never contains a pair")
}

/// Vanishing generators, reduced, polarized, and validated.
pub fn code_to_polarized_ideal(code: &NeuralCode) -> PolarizedNeuralIdeal {
    let gens = minimize_pseudos(&vanishing_generators(code));
    polarize_all(code.neurons(), &gens)
}
