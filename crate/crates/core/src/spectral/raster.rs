use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::drums::{ExactField, Polygon};
use crate::error::{Error, Result};

/// Grid nodes `(i·h, j·h)` strictly inside a polygon. Node `(i, j)` is stored
/// at `(j − j0)·width + (i − i0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridMask {
    pub h: BigRational,
    pub i0: i64,
    pub j0: i64,
    pub width: usize,
    pub height: usize,
    pub cells: Vec<bool>,
}

impl GridMask {
    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn get(&self, i: i64, j: i64) -> bool {
        let (di, dj) = (i - self.i0, j - self.j0);
        if di < 0 || dj < 0 || di as usize >= self.width || dj as usize >= self.height {
            return false;
        }
        self.cells[dj as usize * self.width + di as usize]
    }

    pub fn h_f64(&self) -> f64 {
        self.h.to_f64().unwrap_or(f64::NAN)
    }

    /// `count · h²`.
    pub fn area(&self) -> f64 {
        self.count() as f64 * self.h_f64().powi(2)
    }
}

fn scaled<F: ExactField>(i: i64, h: &BigRational) -> F {
    F::from_rational(h * BigRational::from_integer(i.into()))
}

/// Least `i` with `i·h > x`.
fn first_above<F: ExactField>(x: &F, h: &BigRational) -> i64 {
    let mut i = (x.approx() / h.to_f64().unwrap_or(1.0)).floor() as i64;
    while scaled::<F>(i, h).cmp_value(x) == Ordering::Greater {
        i -= 1;
    }
    while scaled::<F>(i, h).cmp_value(x) != Ordering::Greater {
        i += 1;
    }
    i
}

/// Greatest `i` with `i·h < x`.
fn last_below<F: ExactField>(x: &F, h: &BigRational) -> i64 {
    let mut i = (x.approx() / h.to_f64().unwrap_or(1.0)).ceil() as i64;
    while scaled::<F>(i, h).cmp_value(x) == Ordering::Less {
        i += 1;
    }
    while scaled::<F>(i, h).cmp_value(x) != Ordering::Less {
        i -= 1;
    }
    i
}

/// Exact scanline rasterization: a node is kept only if it lies strictly
/// inside, never on the boundary.
pub fn rasterize<F: ExactField>(poly: &Polygon<F>, h: &BigRational) -> Result<GridMask> {
    if !h.is_positive() {
        return Err(Error::Geometry("grid spacing must be positive".into()));
    }
    if poly.area().vanishes() {
        return Err(Error::Geometry("degenerate polygon".into()));
    }
    let hf = h.to_f64().unwrap_or(f64::NAN);
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in &poly.vertices {
        let (x, y) = p.to_f64();
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let i0 = (xmin / hf).floor() as i64 - 1;
    let i1 = (xmax / hf).ceil() as i64 + 1;
    let j0 = (ymin / hf).floor() as i64 - 1;
    let j1 = (ymax / hf).ceil() as i64 + 1;
    let width = (i1 - i0 + 1) as usize;
    let height = (j1 - j0 + 1) as usize;
    let mut cells = vec![false; width * height];
    let edges: Vec<_> = poly.edges().collect();
    for j in j0..=j1 {
        let y: F = scaled(j, h);
        let mut xs: Vec<F> = Vec::new();
        // points of the boundary on this row that are not crossings
        let mut spans: Vec<(F, F)> = Vec::new();
        for (a, b) in &edges {
            let (ca, cb) = (a.y.cmp_value(&y), b.y.cmp_value(&y));
            if ca == Ordering::Equal && cb == Ordering::Equal {
                let (l, r) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
                spans.push((l.clone(), r.clone()));
                continue;
            }
            if ca == Ordering::Equal {
                spans.push((a.x.clone(), a.x.clone()));
            }
            // half-open rule: count the edge if y ∈ [min, max)
            let (lo, hi) = if a.y <= b.y { (a, b) } else { (b, a) };
            if lo.y.cmp_value(&y) != Ordering::Greater && hi.y.cmp_value(&y) == Ordering::Greater {
                let t = y.sub(&a.y).div(&b.y.sub(&a.y));
                xs.push(a.x.add(&t.mul(&b.x.sub(&a.x))));
            }
        }
        xs.sort();
        if xs.len() % 2 != 0 {
            return Err(Error::Geometry("polygon is not closed".into()));
        }
        let row = (j - j0) as usize * width;
        for pair in xs.chunks(2) {
            let (lo, hi) = (first_above(&pair[0], h), last_below(&pair[1], h));
            for i in lo..=hi {
                let x: F = scaled(i, h);
                let on_boundary = spans
                    .iter()
                    .any(|(l, r)| l.cmp_value(&x) != Ordering::Greater && x.cmp_value(r) != Ordering::Greater);
                if !on_boundary {
                    cells[row + (i - i0) as usize] = true;
                }
            }
        }
    }
    if cells.iter().all(|c| !c) {
        return Err(Error::Geometry("no grid node lies inside the polygon".into()));
    }
    Ok(GridMask {
        h: h.clone(),
        i0,
        j0,
        width,
        height,
        cells,
    })
}
