//! Value files: one line `v f(v)` per vertex.

use std::io::{BufRead, Write};

use super::ValueFunction;
use crate::{Error, Result};

pub fn write_values<W: Write>(f: &ValueFunction, mut out: W) -> Result<()> {
    for (v, value) in f.values().iter().enumerate() {
        writeln!(out, "{v} {value}")?;
    }
    Ok(())
}

/// Parses a value file for a graph with `n` vertices. Every vertex must
/// appear exactly once.
pub fn read_values<R: BufRead>(reader: R, n: usize) -> Result<ValueFunction> {
    let lines = reader.lines().collect::<std::io::Result<Vec<_>>>()?;
    parse_lines(lines.iter().map(String::as_str), n)
}

pub fn parse_values(text: &str, n: usize) -> Result<ValueFunction> {
    parse_lines(text.lines(), n)
}

fn parse_lines<'a>(lines: impl Iterator<Item = &'a str>, n: usize) -> Result<ValueFunction> {
    let mut values: Vec<Option<u64>> = vec![None; n];
    let mut last = 0;
    for (i, line) in lines.enumerate() {
        let lineno = i + 1;
        last = lineno;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(v), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(lineno, "expected `v f(v)`"));
        };
        let v: usize = v
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad vertex id {v:?}")))?;
        let value: u64 = value
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad value {value:?}")))?;
        let slot = values
            .get_mut(v)
            .ok_or_else(|| Error::parse(lineno, format!("vertex {v} out of range 0..{n}")))?;
        if slot.replace(value).is_some() {
            return Err(Error::parse(lineno, format!("vertex {v} listed twice")));
        }
    }
    if let Some(missing) = values.iter().position(Option::is_none) {
        return Err(Error::parse(last + 1, format!("no value for vertex {missing}")));
    }
    Ok(ValueFunction::new(values.into_iter().flatten().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let f = ValueFunction::new(vec![4, 0, 17, 3]);
        let mut buf = Vec::new();
        write_values(&f, &mut buf).unwrap();
        assert_eq!(read_values(buf.as_slice(), 4).unwrap(), f);
    }

    #[test]
    fn order_of_lines_is_free() {
        let f = parse_values("1 5\n0 2\n", 2).unwrap();
        assert_eq!(f.values(), &[2, 5]);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(parse_values("0 1\n0 2\n", 2), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_values("0 1\n", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_values("0 -1\n1 2\n", 2), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_values("0 1\n5 2\n", 2), Err(Error::Parse { line: 2, .. })));
    }
}
