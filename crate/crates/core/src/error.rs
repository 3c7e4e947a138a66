use thiserror::Error;

use crate::monomial::Monomial;

/// Largest supported neuron count: 2n variables must fit in one `u64`.
pub const MAX_NEURONS: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("neuron count {0} is out of range (must be between 1 and {MAX_NEURONS})")]
    NeuronCount(u32),

    #[error(
        "{multiplier} shares a variable with generator {generator}; the product is not squarefree"
    )]
    NonSquarefreeProduct {
        multiplier: Monomial,
        generator: Monomial,
    },

    #[error("generator {generator} is divisible by x{pair}*y{pair}")]
    PairViolation { pair: u32, generator: Monomial },

    #[error("the zero ideal has no generators")]
    ZeroIdeal,

    #[error("operation requires a proper nonzero ideal")]
    UnitOrZeroIdeal,

    #[error("minimal generators do not form a dominant set")]
    NotDominant,

    #[error("generator {generator} is divisible by neither x{pivot} nor y{pivot}")]
    NotSplittable { pivot: u32, generator: Monomial },

    #[error("the x-branch of the split does not have a linear resolution")]
    JNotLinear,

    #[error("ideal is not generated in degree {expected} (the neuron count)")]
    NotEquigeneratedDegreeN { expected: u32 },

    #[error("{name} parameter {value} is out of range {lo}..={hi}")]
    OutOfRange {
        name: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("codeword has length {found}, expected {expected}")]
    LengthMismatch { expected: u32, found: u32 },

    #[error("ideals live in different rings ({0} vs {1} neurons)")]
    RingMismatch(u32, u32),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_neurons(n: u32) -> Result<()> {
    if n == 0 || n > MAX_NEURONS {
        Err(Error::NeuronCount(n))
    } else {
        Ok(())
    }
}
