//! Text format:
//!
//! ```text
//! n m g
//! u v            (m lines, u < v)
//! ROTATIONS      (optional)
//! w1 w2 ...      (n lines, cyclic neighbor order of each vertex)
//! GRID rows cols (optional)
//! ```

use std::io::{BufRead, Write};

use super::{Graph, VertexId};
use crate::{Error, Result};

pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {} {}", g.order(), g.edge_count(), g.genus_bound())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    if g.has_embedding() {
        writeln!(out, "ROTATIONS")?;
        for v in 0..g.order() {
            let rot = g.rotation(v).unwrap_or_default();
            let line: Vec<String> = rot.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
    }
    if let Some(layout) = g.grid_layout() {
        writeln!(out, "GRID {} {}", layout.rows(), layout.cols())?;
    }
    Ok(())
}

pub fn read_graph<R: BufRead>(reader: R) -> Result<Graph> {
    let lines = reader.lines().collect::<std::io::Result<Vec<_>>>()?;
    parse_lines(&lines)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let lines: Vec<String> = text.lines().map(str::to_owned).collect();
    parse_lines(&lines)
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("expected a non-negative integer, got {tok:?}")))
        })
        .collect()
}

fn parse_lines(lines: &[String]) -> Result<Graph> {
    let mut cursor = lines
        .iter()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lineno, header) = cursor
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `n m g`"))?;
    let header = numbers(header, lineno)?;
    let [n, m, genus] = header[..] else {
        return Err(Error::parse(lineno, "header must be `n m g`"));
    };
    let genus = u32::try_from(genus).map_err(|_| Error::parse(lineno, "genus bound too large"))?;

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = cursor
            .next()
            .ok_or_else(|| Error::parse(lines.len() + 1, format!("expected {m} edge lines")))?;
        let pair = numbers(line, lineno)?;
        let [u, v] = pair[..] else {
            return Err(Error::parse(lineno, "edge line must be `u v`"));
        };
        if u >= v {
            return Err(Error::parse(lineno, "edge endpoints must satisfy u < v"));
        }
        if v >= n {
            return Err(Error::parse(lineno, format!("vertex {v} out of range 0..{n}")));
        }
        edges.push((u, v));
    }
    let mut g = Graph::from_edges(n, edges, genus).map_err(|e| Error::parse(1, e.to_string()))?;

    // Rotation lines may be empty (isolated vertices), so walk raw lines here.
    let rest: Vec<(usize, &str)> = cursor.collect();
    let mut idx = 0;
    while idx < rest.len() {
        let (lineno, line) = rest[idx];
        if line == "ROTATIONS" {
            let start = lineno; // 1-based number of the ROTATIONS line
            let mut rotation: Vec<Vec<VertexId>> = Vec::with_capacity(n);
            for k in 0..n {
                let raw = lines
                    .get(start + k)
                    .ok_or_else(|| Error::parse(start + k + 1, format!("expected {n} rotation lines")))?;
                rotation.push(numbers(raw, start + k + 1)?);
            }
            g = g
                .with_rotation(rotation)
                .map_err(|e| Error::parse(start, e.to_string()))?;
            let last = start + n;
            while idx < rest.len() && rest[idx].0 <= last {
                idx += 1;
            }
        } else if let Some(dims) = line.strip_prefix("GRID") {
            let dims = numbers(dims, lineno)?;
            let [rows, cols] = dims[..] else {
                return Err(Error::parse(lineno, "expected `GRID rows cols`"));
            };
            g = g
                .with_grid_layout(rows, cols)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
            idx += 1;
        } else {
            return Err(Error::parse(lineno, format!("unexpected line {line:?}")));
        }
    }

    // only planar labels are gated: complete graphs at their true genus
    // already exceed 3n - 6 + 2g (K6 has 15 edges at genus 1)
    if genus == 0 && n >= 3 && !g.check_edge_bound()? {
        return Err(Error::parse(
            1,
            format!(
                "{} edges exceed 3n - 6 = {} for a planar graph",
                g.edge_count(),
                3 * n - 6
            ),
        ));
    }
    Ok(g)
}
