use crate::{Error, Result};

/// Separator size guaranteed for graphs of genus `g`:
/// `6 sqrt(g n) + 2 sqrt(2 n) + 1`.
pub fn ght_size_bound(n: usize, genus: u32) -> f64 {
    let n = n as f64;
    let g = f64::from(genus);
    6.0 * (g * n).sqrt() + 2.0 * (2.0 * n).sqrt() + 1.0
}

/// Size of a separator augmented with every vertex of degree above
/// `sqrt(n)`:
/// `(6 + 2 sqrt(2) - 12/n + 6 sqrt(g) + 4g/n + 1/sqrt(n)) * sqrt(n)`.
pub fn strong_size_bound(n: usize, genus: u32) -> Result<f64> {
    if n < 3 {
        return Err(Error::invalid(format!("strong bound needs n >= 3, got {n}")));
    }
    let nf = n as f64;
    let g = f64::from(genus);
    let root = nf.sqrt();
    Ok((6.0 + 2.0 * 2f64.sqrt() - 12.0 / nf + 6.0 * g.sqrt() + 4.0 * g / nf + 1.0 / root) * root)
}

/// Upper bound on the number of vertices of degree above `sqrt(n)` when
/// `|E| <= 3n - 6 + 2g`: `(6n - 12 + 4g) / sqrt(n)`.
pub fn high_degree_bound(n: usize, genus: u32) -> Result<f64> {
    if n < 3 {
        return Err(Error::invalid(format!("degree bound needs n >= 3, got {n}")));
    }
    let nf = n as f64;
    Ok((6.0 * nf - 12.0 + 4.0 * f64::from(genus)) / nf.sqrt())
}
