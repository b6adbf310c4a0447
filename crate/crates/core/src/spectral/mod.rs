//! Discrete Dirichlet spectra of rasterized drums: the 5-point Laplacian on
//! grid nodes strictly inside the domain, with missing neighbors set to zero.

mod raster;
mod solver;

use std::f64::consts::PI;

use serde::Serialize;

pub use raster::{rasterize, GridMask};
pub use solver::{largest_eigenvalues, Envelope, SolverOptions};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub k: usize,
    pub h: f64,
    pub nodes: usize,
}

/// Row-major numbering of the occupied nodes; `None` for empty cells.
fn numbering(mask: &GridMask) -> (Vec<Option<usize>>, usize) {
    let mut next = 0;
    let ids = mask
        .cells
        .iter()
        .map(|&c| {
            c.then(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    (ids, next)
}

/// Lower triangle of `−Δ_h`, scaled by `1/h²`.
pub fn laplacian(mask: &GridMask) -> Vec<Vec<(usize, f64)>> {
    let (ids, n) = numbering(mask);
    let s = 1.0 / mask.h_f64().powi(2);
    let w = mask.width;
    let mut rows = vec![Vec::new(); n];
    for (cell, id) in ids.iter().enumerate() {
        let Some(r) = *id else { continue };
        rows[r].push((r, 4.0 * s));
        if cell % w > 0 {
            if let Some(c) = ids[cell - 1] {
                rows[r].push((c, -s));
            }
        }
        if cell >= w {
            if let Some(c) = ids[cell - w] {
                rows[r].push((c, -s));
            }
        }
    }
    rows
}

/// The `k` smallest eigenvalues of `−Δ_h` on the mask.
pub fn dirichlet_eigenvalues(mask: &GridMask, k: usize, seed: u64) -> Result<SpectrumResult> {
    let rows = laplacian(mask);
    let n = rows.len();
    if k > n {
        return Err(Error::Numerical(format!("k = {k} exceeds the {n} grid nodes")));
    }
    let chol = Envelope::new(&rows).cholesky()?;
    let opts = SolverOptions {
        seed,
        ..SolverOptions::default()
    };
    let top = largest_eigenvalues(n, k, |v| chol.solve(v), &opts)?;
    let eigenvalues: Vec<f64> = top.iter().map(|t| 1.0 / t).collect();
    Ok(SpectrumResult {
        eigenvalues,
        k,
        h: mask.h_f64(),
        nodes: n,
    })
}

/// `|a_i − b_i| / max(a_i, b_i)` for each index present in both.
pub fn relative_gaps(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / x.max(*y)).collect()
}

/// Weyl estimates of the counting function `N(E)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WeylCheck {
    pub energy: f64,
    pub count: usize,
    /// `area·E/4π`.
    pub one_term: f64,
    /// `area·E/4π − perimeter·√E/4π`.
    pub two_term: f64,
}

impl WeylCheck {
    pub fn new(area: f64, perimeter: f64, energy: f64, count: usize) -> Self {
        let one_term = area * energy / (4.0 * PI);
        WeylCheck {
            energy,
            count,
            one_term,
            two_term: one_term - perimeter * energy.sqrt() / (4.0 * PI),
        }
    }

    /// At the largest computed eigenvalue of `spectrum`.
    pub fn at_top(spectrum: &SpectrumResult, area: f64, perimeter: f64) -> Option<Self> {
        let e = *spectrum.eigenvalues.last()?;
        Some(WeylCheck::new(area, perimeter, e, spectrum.eigenvalues.len()))
    }

    pub fn one_term_error(&self) -> f64 {
        (self.one_term - self.count as f64).abs() / self.count as f64
    }

    pub fn two_term_error(&self) -> f64 {
        (self.two_term - self.count as f64).abs() / self.count as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drums::{Point, Polygon};
    use num_rational::BigRational;

    fn rect(w: i64, h: i64) -> Polygon<BigRational> {
        let p = |x: i64, y: i64| Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()));
        Polygon::new(vec![p(0, 0), p(w, 0), p(w, h), p(0, h)]).unwrap()
    }

    fn h(d: i64) -> BigRational {
        BigRational::new(1.into(), d.into())
    }

    #[test]
    fn square_node_counts() {
        assert_eq!(rasterize(&rect(1, 1), &h(4)).unwrap().count(), 9);
        assert_eq!(rasterize(&rect(1, 1), &h(8)).unwrap().count(), 49);
    }

    #[test]
    fn square_matches_discrete_formula() {
        // eigenvalues (4/h²)(sin²(pπh/2) + sin²(qπh/2))
        let n = 16;
        let mask = rasterize(&rect(1, 1), &h(n)).unwrap();
        let r = dirichlet_eigenvalues(&mask, 6, 0).unwrap();
        let hh = 1.0 / n as f64;
        let f = |p: f64| (p * PI * hh / 2.0).sin().powi(2) * 4.0 / (hh * hh);
        let mut exact: Vec<f64> = (1..n).flat_map(|p| (1..n).map(move |q| (p, q))).map(|(p, q)| f(p as f64) + f(q as f64)).collect();
        exact.sort_by(f64::total_cmp);
        for (x, e) in r.eigenvalues.iter().zip(&exact) {
            assert!((x - e).abs() < 1e-8 * e, "{x} vs {e}");
        }
    }

    #[test]
    fn rectangle_ground_state() {
        let mask = rasterize(&rect(1, 2), &h(32)).unwrap();
        let r = dirichlet_eigenvalues(&mask, 1, 0).unwrap();
        let exact = PI * PI * 1.25;
        assert!((r.eigenvalues[0] - exact).abs() / exact < 0.005);
    }

    #[test]
    fn weyl_terms() {
        // square, twentieth eigenvalue 32π²
        let w = WeylCheck::new(1.0, 4.0, 32.0 * PI * PI, 20);
        assert!(w.one_term_error() > 0.2);
        assert!(w.two_term_error() < 0.05);
    }
}
