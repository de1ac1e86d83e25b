//! Error classes and the exit codes they map to.

use std::fmt;

use linkhom::diagrams::DiagramError;
use linkhom::grid::GridError;
use linkhom::khovanov::KhError;
use linkhom::mutation::MutationError;
use linkhom::skein::SkeinError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments or unreadable input.
    Input(String),
    /// The computation would exceed a size guard.
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Guard(_) => EXIT_GUARD,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Guard(m) => write!(f, "size guard: {m}"),
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        match e {
            GridError::TooLarge { .. } => CliError::Guard(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<KhError> for CliError {
    fn from(e: KhError) -> Self {
        match e {
            KhError::TooLarge(_) | KhError::Boundary(_) => CliError::Guard(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SkeinError> for CliError {
    fn from(e: SkeinError) -> Self {
        match e {
            SkeinError::Grid(g) => g.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<MutationError> for CliError {
    fn from(e: MutationError) -> Self {
        match e {
            MutationError::Grid(g) => g.into(),
            MutationError::Kh(k) => k.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guards_map_to_three() {
        let g: CliError = GridError::TooLarge { n: 12, limit: 9 }.into();
        assert_eq!(g.exit_code(), EXIT_GUARD);
        let k: CliError = KhError::TooLarge(40).into();
        assert_eq!(k.exit_code(), EXIT_GUARD);
        let p: CliError = GridError::Parse("x".into()).into();
        assert_eq!(p.exit_code(), EXIT_INPUT);
    }
}
