//! Explicit polarized neural ideals realizing every attainable projective
//! dimension and regularity.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_neurons, Error, Result};
use crate::ideal::{MonomialIdeal, PolarizedNeuralIdeal};
use crate::monomial::{Monomial, Var};

fn in_range(name: &'static str, value: u32, lo: u32, hi: u32) -> Result<()> {
    if value < lo || value > hi {
        Err(Error::OutOfRange {
            name,
            value: value as i64,
            lo: lo as i64,
            hi: hi as i64,
        })
    } else {
        Ok(())
    }
}

fn build(n: u32, gens: Vec<Monomial>) -> PolarizedNeuralIdeal {
    MonomialIdeal::minimalize(gens, n)
        .validate_polarized()
        .expect("family generators avoid every x_i*y_i")
}

/// `(m_1, …, m_k)` with `m_l = x_l * ∏_{j≠l} y_j`; projective dimension `k - 1`.
pub fn family_prop32(n: u32, k: u32) -> Result<PolarizedNeuralIdeal> {
    check_neurons(n)?;
    in_range("k", k, 1, n)?;
    let gens = (1..=k)
        .map(|l| {
            Monomial::from_vars(
                n,
                std::iter::once(Var::X(l)).chain((1..=n).filter(|&j| j != l).map(Var::Y)),
            )
        })
        .collect();
    Ok(build(n, gens))
}

/// `(x_1⋯x_n, y_1⋯y_k x_{k+1}⋯x_n)`; regularity `n + k - 1`.
pub fn family_prop33(n: u32, k: u32) -> Result<PolarizedNeuralIdeal> {
    check_neurons(n)?;
    in_range("k", k, 1, n)?;
    let all_x = Monomial::from_vars(n, (1..=n).map(Var::X));
    let mixed = Monomial::from_vars(
        n,
        (1..=n).map(|i| if i <= k { Var::Y(i) } else { Var::X(i) }),
    );
    Ok(build(n, vec![all_x, mixed]))
}

/// The first `i + 1` variables in the order `x_1..x_n, y_1..y_n`;
/// projective dimension `i`.
pub fn family_prop34_pd(n: u32, i: u32) -> Result<PolarizedNeuralIdeal> {
    check_neurons(n)?;
    in_range("i", i, 0, 2 * n - 1)?;
    let vars = (1..=n).map(Var::X).chain((1..=n).map(Var::Y));
    let gens = vars
        .take(i as usize + 1)
        .map(|v| Monomial::var(n, v))
        .collect();
    Ok(build(n, gens))
}

/// A polarized neural ideal of regularity exactly `j`.
///
/// For `j <= n` this is the principal ideal `(x_1⋯x_j)`. A squarefree
/// monomial avoiding every `x_i*y_i` has degree at most `n`, so for
/// `j > n` no principal choice exists; the two-generator ideal
/// `family_prop33(n, j - n + 1)` is used instead.
pub fn family_prop34_reg(n: u32, j: u32) -> Result<PolarizedNeuralIdeal> {
    check_neurons(n)?;
    in_range("j", j, 1, 2 * n - 1)?;
    if j <= n {
        Ok(build(n, vec![Monomial::from_vars(n, (1..=j).map(Var::X))]))
    } else {
        family_prop33(n, j - n + 1)
    }
}

/// `(x_1, y_1)(x_2, y_2)⋯(x_k, y_k)` expanded into its `2^k` generators;
/// projective dimension and regularity both `k`.
pub fn family_thm36(n: u32, k: u32) -> Result<PolarizedNeuralIdeal> {
    check_neurons(n)?;
    in_range("k", k, 1, n)?;
    let gens = (0..1u64 << k)
        .map(|choice| {
            Monomial::from_vars(
                n,
                (1..=k).map(|l| {
                    if choice >> (l - 1) & 1 == 1 {
                        Var::Y(l)
                    } else {
                        Var::X(l)
                    }
                }),
            )
        })
        .collect();
    Ok(build(n, gens))
}

/// The named families with the invariant each one pins down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Prop32,
    Prop33,
    Prop34Pd,
    Prop34Reg,
    Thm36,
}

/// The invariant values a family member is constructed to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Expected {
    pub pd: Option<usize>,
    pub reg: Option<u32>,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Prop32,
        Family::Prop33,
        Family::Prop34Pd,
        Family::Prop34Reg,
        Family::Thm36,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Prop32 => "prop32",
            Family::Prop33 => "prop33",
            Family::Prop34Pd => "prop34-pd",
            Family::Prop34Reg => "prop34-reg",
            Family::Thm36 => "thm36",
        }
    }

    /// Name of the integer parameter besides `n`.
    pub fn param(self) -> &'static str {
        match self {
            Family::Prop32 | Family::Prop33 | Family::Thm36 => "k",
            Family::Prop34Pd => "i",
            Family::Prop34Reg => "j",
        }
    }

    pub fn build(self, n: u32, p: u32) -> Result<PolarizedNeuralIdeal> {
        match self {
            Family::Prop32 => family_prop32(n, p),
            Family::Prop33 => family_prop33(n, p),
            Family::Prop34Pd => family_prop34_pd(n, p),
            Family::Prop34Reg => family_prop34_reg(n, p),
            Family::Thm36 => family_thm36(n, p),
        }
    }

    pub fn expected(self, n: u32, p: u32) -> Expected {
        match self {
            Family::Prop32 => Expected {
                pd: Some(p as usize - 1),
                reg: None,
            },
            Family::Prop33 => Expected {
                pd: None,
                reg: Some(n + p - 1),
            },
            Family::Prop34Pd => Expected {
                pd: Some(p as usize),
                reg: None,
            },
            Family::Prop34Reg => Expected {
                pd: None,
                reg: Some(p),
            },
            Family::Thm36 => Expected {
                pd: Some(p as usize),
                reg: Some(p),
            },
        }
    }

    /// Valid parameter range for `n` neurons.
    pub fn params(self, n: u32) -> std::ops::RangeInclusive<u32> {
        match self {
            Family::Prop32 | Family::Prop33 | Family::Thm36 => 1..=n,
            Family::Prop34Pd => 0..=2 * n - 1,
            Family::Prop34Reg => 1..=2 * n - 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}
