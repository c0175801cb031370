use std::fmt;
use std::process::ExitCode;

use csd_core::CsdError;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_GUARDRAIL: u8 = 4;
pub const EXIT_PROFILE: u8 = 5;
pub const EXIT_PARAMS: u8 = 6;
pub const EXIT_IO: u8 = 7;
pub const EXIT_DIAGNOSTIC: u8 = 8;

#[derive(Debug)]
pub enum Failure {
    Core(CsdError),
    Io { path: String, source: std::io::Error },
    Usage(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io { .. } => EXIT_IO,
            Failure::Core(e) => match e {
                CsdError::Parse { .. }
                | CsdError::VertexOutOfRange { .. }
                | CsdError::SelfLoop(_)
                | CsdError::DuplicateEdge(..)
                | CsdError::Disconnected(_)
                | CsdError::EmptyGraph
                | CsdError::NotATree(_) => EXIT_INPUT,
                CsdError::ThetaCap { .. } => EXIT_GUARDRAIL,
                CsdError::InvalidStrategy(_) | CsdError::EmptySet | CsdError::InvalidIndex { .. } => EXIT_PROFILE,
                CsdError::LambdaOutOfRange { .. } | CsdError::InvalidParams(_) => EXIT_PARAMS,
                CsdError::Lp(_) | CsdError::Diagnostic(_) => EXIT_DIAGNOSTIC,
            },
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io { path, source } => write!(f, "{path}: {source}"),
            Failure::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<CsdError> for Failure {
    fn from(e: CsdError) -> Self {
        Failure::Core(e)
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub fn read(path: &str) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|source| Failure::Io {
        path: path.to_string(),
        source,
    })
}

pub fn write(path: &str, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| Failure::Io {
        path: path.to_string(),
        source,
    })
}

/// Hex SHA-256 over the given byte strings, each length-prefixed.
pub fn digest<'a>(parts: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: &'static str,
    pub input_digest: String,
    pub results: Value,
    pub timing_ms: f64,
}
