//! 1-based cycle notation used in spec files, e.g. `(1 2)(3 4 5)`.

use super::perm::Permutation;
use crate::error::{Error, Result};

/// Parses juxtaposed 1-based cycles into a permutation of the given degree.
/// `()` and the empty string denote the identity.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut chars = s.trim().chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '(' => {
                let mut body = String::new();
                loop {
                    match chars.next() {
                        Some(')') => break,
                        Some('(') | None => {
                            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")))
                        }
                        Some(ch) => body.push(ch),
                    }
                }
                let mut cycle = Vec::new();
                for tok in body.split(|ch: char| ch.is_whitespace() || ch == ',') {
                    if tok.is_empty() {
                        continue;
                    }
                    let v: usize = tok
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad point {tok:?} in {s:?}")))?;
                    if v == 0 || v > degree {
                        return Err(Error::Parse(format!(
                            "point {v} out of range 1..={degree} in {s:?}"
                        )));
                    }
                    cycle.push(v - 1);
                }
                cycles.push(cycle);
            }
            ch if ch.is_whitespace() => {}
            other => return Err(Error::Parse(format!("unexpected {other:?} in {s:?}"))),
        }
    }
    Permutation::from_cycles(degree, &cycles)
}

pub fn parse_generator_list(gens: &[String], degree: usize) -> Result<Vec<Permutation>> {
    gens.iter().map(|g| parse_cycles(g, degree)).collect()
}

pub fn format_generator_list(gens: &[Permutation]) -> Vec<String> {
    gens.iter().map(Permutation::to_cycle_string).collect()
}
