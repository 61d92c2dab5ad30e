//! Shared helpers for the line-oriented text formats.

use std::fmt::Display;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Non-empty lines with `#` and `c ` comments stripped, paired with their
/// 1-based line numbers, split on whitespace.
pub(crate) fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() || fields[0] == "c" {
            None
        } else {
            Some((i + 1, fields))
        }
    })
}

pub(crate) fn field<T>(line: usize, fields: &[&str], i: usize, what: &str) -> Result<T, ParseError>
where
    T: FromStr,
    T::Err: Display,
{
    let raw = fields
        .get(i)
        .ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    raw.parse()
        .map_err(|e| ParseError::new(line, format!("bad {what} {raw:?}: {e}")))
}

pub(crate) fn expect_arity(line: usize, fields: &[&str], n: usize) -> Result<(), ParseError> {
    if fields.len() != n {
        return Err(ParseError::new(
            line,
            format!(
                "`{}` takes {} fields, found {}",
                fields[0],
                n - 1,
                fields.len() - 1
            ),
        ));
    }
    Ok(())
}
