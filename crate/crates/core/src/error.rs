use std::sync::OnceLock;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("element {element} out of range for universe of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("congruences belong to universes of different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("containment violated: {0}")]
    NotContained(String),
    #[error("a disjunction must have at least one equation")]
    EmptyDisjunction,
    #[error("generated subuniverse is empty")]
    EmptySubuniverse,
    #[error("subset contains points outside the ground set")]
    ForeignPoints,
    #[error("congruence is not a point of the spectrum")]
    NotAPoint,
    #[error("congruence is not radical")]
    NotRadical,
    #[error("class of algebras must be nonempty")]
    EmptyClass,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

/// Resource guards shared by every enumerating operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe accepted by homomorphism and congruence enumeration.
    pub max_size: usize,
    /// Largest raw search space (homomorphism candidates, product sizes, models).
    pub max_search: u128,
    /// Largest closed family produced by topologization.
    pub max_family: usize,
}

pub const DEFAULT_MAX_SIZE: usize = 32;
pub const DEFAULT_MAX_SEARCH: u128 = 100_000_000;
pub const DEFAULT_MAX_FAMILY: usize = 1 << 16;

/// Environment variable that overrides [`Limits::max_search`].
pub const BUDGET_ENV: &str = "CS_MAX_BUDGET";

impl Limits {
    pub const fn fixed() -> Self {
        Limits {
            max_size: DEFAULT_MAX_SIZE,
            max_search: DEFAULT_MAX_SEARCH,
            max_family: DEFAULT_MAX_FAMILY,
        }
    }

    /// The process-wide limits: defaults, with `CS_MAX_BUDGET` applied when set.
    pub fn current() -> Self {
        static CURRENT: OnceLock<Limits> = OnceLock::new();
        *CURRENT.get_or_init(|| {
            let mut limits = Limits::fixed();
            if let Ok(raw) = std::env::var(BUDGET_ENV) {
                if let Ok(budget) = raw.trim().parse::<u128>() {
                    limits.max_search = budget;
                }
            }
            limits
        })
    }

    pub(crate) fn check_size(&self, size: usize, what: &str) -> Result<()> {
        if size > self.max_size {
            return Err(Error::Resource(format!(
                "{what}: universe of size {size} exceeds limit {}",
                self.max_size
            )));
        }
        Ok(())
    }

    pub(crate) fn check_search(&self, space: u128, what: &str) -> Result<()> {
        if space > self.max_search {
            return Err(Error::Resource(format!(
                "{what}: search space {space} exceeds budget {}",
                self.max_search
            )));
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::current()
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}
