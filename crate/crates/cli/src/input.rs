//! Streaming readers for the two input formats.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use crate::CliError;

/// Open a file, or standard input for `-`.
pub fn open(path: &Path) -> Result<Box<dyn BufRead>, CliError> {
    if path == Path::new("-") {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(Box::new(BufReader::new(f)))
}

/// Symbols of a stream, one at a time.
pub enum Symbols {
    Tokens { inner: Box<dyn BufRead>, index: u64 },
    Bytes(io::Bytes<Box<dyn BufRead>>),
}

impl Symbols {
    pub fn new(inner: Box<dyn BufRead>, raw: bool) -> Self {
        if raw {
            Symbols::Bytes(inner.bytes())
        } else {
            Symbols::Tokens { inner, index: 0 }
        }
    }

    pub fn collect_all(self) -> Result<Vec<u64>, CliError> {
        self.collect()
    }
}

fn next_token(inner: &mut dyn BufRead, index: u64) -> Option<Result<u64, CliError>> {
    let mut acc: Option<u64> = None;
    loop {
        let buf = match inner.fill_buf() {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Some(Err(CliError::Input(e.to_string()))),
        };
        if buf.is_empty() {
            return acc.map(Ok);
        }
        let mut used = 0;
        let mut done = false;
        for &b in buf {
            used += 1;
            if b.is_ascii_whitespace() {
                if acc.is_some() {
                    done = true;
                    break;
                }
            } else if b.is_ascii_digit() {
                let next = acc
                    .unwrap_or(0)
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(u64::from(b - b'0')));
                match next {
                    Some(v) => acc = Some(v),
                    None => {
                        return Some(Err(CliError::Input(format!(
                            "token at index {index} does not fit in 64 bits"
                        ))))
                    }
                }
            } else {
                return Some(Err(CliError::Input(format!(
                    "token at index {index} is not an unsigned integer (byte {b:#04x})"
                ))));
            }
        }
        inner.consume(used);
        if done {
            return acc.map(Ok);
        }
    }
}

impl Iterator for Symbols {
    type Item = Result<u64, CliError>;

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            Symbols::Tokens { inner, index } => {
                let out = next_token(inner.as_mut(), *index);
                *index += 1;
                out
            }
            Symbols::Bytes(bytes) => bytes
                .next()
                .map(|b| b.map(u64::from).map_err(|e| CliError::Input(e.to_string()))),
        }
    }
}
