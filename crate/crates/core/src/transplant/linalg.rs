//! Exact integer linear algebra: fraction-free elimination, nullspaces and
//! Bareiss determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn normalize(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
    if let Some(lead) = row.iter().find(|x| !x.is_zero()) {
        if lead.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Row echelon form built one equation at a time. Rows are integer vectors
/// reduced with integer-preserving row operations and divided by their content.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds an equation row; returns true if it increased the rank.
    pub fn push(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (pc, prow) in &self.rows {
            if row[*pc].is_zero() {
                continue;
            }
            let a = prow[*pc].clone();
            let b = row[*pc].clone();
            for (x, p) in row.iter_mut().zip(prow) {
                *x = &a * &*x - &b * p;
            }
            normalize(&mut row);
        }
        match row.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pc) => {
                normalize(&mut row);
                let at = self.rows.partition_point(|(c, _)| *c < pc);
                self.rows.insert(at, (pc, row));
                true
            }
        }
    }

    /// Primitive integer basis of `{x : Ax = 0}`, one vector per free column,
    /// in increasing free-column order.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        // Back-eliminate to reduced form.
        let mut rows = self.rows.clone();
        for i in (0..rows.len()).rev() {
            let (pc, prow) = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                let row = &mut row.1;
                if row[pc].is_zero() {
                    continue;
                }
                let a = prow[pc].clone();
                let b = row[pc].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x = &a * &*x - &b * p;
                }
                normalize(row);
            }
        }
        let pivots: Vec<usize> = rows.iter().map(|(c, _)| *c).collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivots.contains(&f) {
                continue;
            }
            // x_f = L, x_p = -row_p[f] * L / row_p[p].
            let l = rows
                .iter()
                .filter(|(_, r)| !r[f].is_zero())
                .fold(BigInt::one(), |acc, (p, r)| acc.lcm(&r[*p]));
            let mut v = vec![BigInt::zero(); self.cols];
            v[f] = l.clone();
            for (p, r) in &rows {
                if !r[f].is_zero() {
                    v[*p] = -(&r[f] * &l) / &r[*p];
                }
            }
            normalize(&mut v);
            basis.push(v);
        }
        basis
    }
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}
