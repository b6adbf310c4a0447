use std::fs;
use std::path::Path;
use std::str::FromStr;

use gassmann::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed};

pub const OK: u8 = 0;
pub const FAILS: u8 = 1;
pub const PARSE: u8 = 2;
pub const BOUND: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: PARSE,
            message: message.into(),
        }
    }

    pub fn fails(message: impl Into<String>) -> Self {
        Failure {
            code: FAILS,
            message: message.into(),
        }
    }

    /// Prefixes the message with the stage that failed.
    pub fn at(self, stage: &str) -> Self {
        Failure {
            code: self.code,
            message: format!("{stage}: {}", self.message),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::BoundExceeded { .. } => BOUND,
            Error::Parse(_)
            | Error::NotAPermutation(_)
            | Error::PointOutOfRange { .. }
            | Error::DegreeMismatch { .. }
            | Error::InvalidSystem(_)
            | Error::Io(_)
            | Error::Json(_) => PARSE,
            _ => FAILS,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub fn require_file(path: &Path) -> CliResult<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::parse(format!("{}: no such file", path.display())))
    }
}

/// The directory an output file goes into must already exist.
pub fn require_parent(path: &Path) -> CliResult<()> {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() && !p.is_dir() => {
            Err(Failure::parse(format!("{}: no such directory", p.display())))
        }
        _ => Ok(()),
    }
}

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::fails(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to stdout without one.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `1/64`, `64` or an exact decimal such as `0.015625`.
pub fn parse_spacing(s: &str) -> CliResult<BigRational> {
    let bad = || Failure::parse(format!("bad grid spacing {s:?}"));
    let s = s.trim();
    let h = if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        BigRational::new(num, BigInt::from(10).pow(frac.len()))
    } else {
        BigRational::from_str(s).map_err(|_| bad())?
    };
    if !h.is_positive() {
        return Err(bad());
    }
    Ok(h)
}

pub fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
