use thiserror::Error;

use crate::game::ValidationReport;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Reference(String),
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid game:\n{0}")]
    Invalid(ValidationReport),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Format(#[from] FormatError),
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("activity mask is not monotone on edge {from} -> {to} (coordinate {coordinate})")]
    NonMonotoneMask {
        from: usize,
        to: usize,
        coordinate: usize,
    },
    #[error("coordinate {coordinate} out of range (arena has {width})")]
    Coordinate { coordinate: usize, width: usize },
    #[error("malformed arena: {0}")]
    Malformed(String),
    #[error("solver produced a witness that failed re-verification: {0}")]
    UnverifiedWitness(String),
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("witness for player {player} failed to replay: {detail}")]
    WitnessReplay { player: String, detail: String },
}
