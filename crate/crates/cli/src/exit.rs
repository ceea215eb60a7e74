//! Exit codes: 1 parse, 2 validation, 3 cap exceeded, 4 coefficient
//! mismatch, 5 failed check.

use bredon_core::character::CharacterError;
use bredon_core::coefficients::CoefficientError;
use bredon_core::complex::ComplexError;
use bredon_core::group::GroupError;
use bredon_core::homology::HomologyError;
use bredon_core::marks::MarksError;
use bredon_core::theorems::TheoremError;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        CliError { code: 1, message }
    }

    pub fn validation(message: String) -> Self {
        CliError { code: 2, message }
    }

    pub fn cap(message: String) -> Self {
        CliError { code: 3, message }
    }

    pub fn check(message: String) -> Self {
        CliError { code: 5, message }
    }

    pub fn from_complex(file: &str, e: &ComplexError) -> Self {
        let code = if e.is_cap() { 3 } else { 1 };
        CliError { code, message: format!("{file}: {e}") }
    }

    pub fn from_coefficient(e: &CoefficientError) -> Self {
        let code = match e {
            CoefficientError::Character(CharacterError::CapExceeded { .. })
            | CoefficientError::Marks(MarksError::CapExceeded { .. })
            | CoefficientError::Group(GroupError::ClosureExceedsCap { .. }) => 3,
            _ => 4,
        };
        CliError { code, message: e.to_string() }
    }

    pub fn from_homology(e: HomologyError) -> Self {
        match e {
            HomologyError::Coefficient(c) => Self::from_coefficient(&c),
            other => Self::validation(other.to_string()),
        }
    }

    pub fn from_theorem(e: TheoremError) -> Self {
        match e {
            TheoremError::Homology(h) => Self::from_homology(h),
            TheoremError::Coefficient(c) => Self::from_coefficient(&c),
            TheoremError::Complex(c) => Self::from_complex("product", &c),
            e @ TheoremError::ConditionDViolated { .. } => CliError { code: 4, message: e.to_string() },
        }
    }
}
