//! Smallest eigenvalues of a sparse SPD matrix: envelope Cholesky for
//! `A⁻¹`, then Lanczos with full reorthogonalization, locking converged
//! vectors and restarting until a restart turns up nothing new above the
//! k-th value. Restarts catch multiple eigenvalues that a single Krylov space
//! sees only once.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Symmetric matrix in envelope (skyline) storage: row `r` holds columns
/// `first[r]..=r`.
pub struct Envelope {
    first: Vec<usize>,
    start: Vec<usize>,
    values: Vec<f64>,
}

impl Envelope {
    /// `entries[r]` lists `(c, a_rc)` for `c ≤ r`.
    pub fn new(entries: &[Vec<(usize, f64)>]) -> Self {
        let n = entries.len();
        let mut first = Vec::with_capacity(n);
        let mut start = Vec::with_capacity(n + 1);
        let mut total = 0;
        for (r, row) in entries.iter().enumerate() {
            let f = row.iter().map(|&(c, _)| c).min().unwrap_or(r).min(r);
            first.push(f);
            start.push(total);
            total += r - f + 1;
        }
        start.push(total);
        let mut values = vec![0.0; total];
        for (r, row) in entries.iter().enumerate() {
            for &(c, v) in row {
                values[start[r] + c - first[r]] += v;
            }
        }
        Envelope { first, start, values }
    }

    pub fn n(&self) -> usize {
        self.first.len()
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.values[self.start[r] + c - self.first[r]]
    }

    /// In-place `A = L·Lᵀ`; the envelope is closed under the factorization.
    pub fn cholesky(mut self) -> Result<Self> {
        let n = self.n();
        for r in 0..n {
            let fr = self.first[r];
            for c in fr..=r {
                let fc = self.first[c];
                let lo = fr.max(fc);
                let (sr, sc) = (self.start[r], self.start[c]);
                let mut s = self.values[sr + c - fr];
                for k in lo..c {
                    s -= self.values[sr + k - fr] * self.values[sc + k - fc];
                }
                if c == r {
                    if s <= 0.0 {
                        return Err(Error::Numerical("matrix is not positive definite".into()));
                    }
                    self.values[sr + r - fr] = s.sqrt();
                } else {
                    self.values[sr + c - fr] = s / self.values[sc + c - fc];
                }
            }
        }
        Ok(self)
    }

    /// Solves `L·Lᵀ·x = b` with `self` holding `L`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y = b.to_vec();
        for r in 0..n {
            let fr = self.first[r];
            let mut s = y[r];
            for (k, yk) in y.iter().enumerate().take(r).skip(fr) {
                s -= self.at(r, k) * yk;
            }
            y[r] = s / self.at(r, r);
        }
        for r in (0..n).rev() {
            y[r] /= self.at(r, r);
            let yr = y[r];
            for k in self.first[r]..r {
                y[k] -= self.at(r, k) * yr;
            }
        }
        y
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    // twice is enough (Kahan–Parlett)
    for _ in 0..2 {
        for q in basis {
            let c = dot(v, q);
            axpy(v, -c, q);
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub seed: u64,
    pub max_rounds: usize,
    /// Residual tolerance relative to the Ritz value.
    pub tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            seed: 0,
            max_rounds: 40,
            tol: 1e-10,
        }
    }
}

/// The `k` largest eigenvalues of the SPD operator `op` on `R^n`, descending.
pub fn largest_eigenvalues(
    n: usize,
    k: usize,
    op: impl Fn(&[f64]) -> Vec<f64>,
    opts: &SolverOptions,
) -> Result<Vec<f64>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    if k > n {
        return Err(Error::Numerical(format!("asked for {k} eigenvalues of a {n}×{n} operator")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut locked_vecs: Vec<Vec<f64>> = Vec::new();
    let mut locked: Vec<f64> = Vec::new();
    let mut steps = (2 * k + 40).max(80);
    for _ in 0..opts.max_rounds {
        let room = n - locked_vecs.len();
        if room == 0 {
            break;
        }
        let m = steps.min(room);
        let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        orthogonalize(&mut v, &locked_vecs);
        let nv = dot(&v, &v).sqrt();
        v.iter_mut().for_each(|x| *x /= nv);
        let mut basis: Vec<Vec<f64>> = vec![v];
        let mut alpha = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        let mut last_beta = 0.0;
        for j in 0..m {
            let mut w = op(&basis[j]);
            orthogonalize(&mut w, &locked_vecs);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            orthogonalize(&mut w, &basis);
            let b = dot(&w, &w).sqrt();
            last_beta = b;
            if j + 1 == m || b <= 1e-14 * a.abs().max(1e-300) {
                break;
            }
            beta.push(b);
            w.iter_mut().for_each(|x| *x /= b);
            basis.push(w);
        }
        let dim = alpha.len();
        let mut t = DMatrix::<f64>::zeros(dim, dim);
        for i in 0..dim {
            t[(i, i)] = alpha[i];
            if i + 1 < dim {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let converged = |i: usize| {
            let theta = eig.eigenvalues[i];
            (last_beta * eig.eigenvectors[(dim - 1, i)]).abs() <= opts.tol * theta.abs()
        };
        let prefix: Vec<usize> = order.iter().copied().take_while(|&i| converged(i)).collect();
        if locked.len() >= k {
            let mut sorted = locked.clone();
            sorted.sort_by(|a, b| b.total_cmp(a));
            let kth = sorted[k - 1];
            match prefix.first() {
                Some(&i) if eig.eigenvalues[i] < kth * (1.0 - 1e-9) => {
                    return Ok(sorted.into_iter().take(k).collect());
                }
                _ => {}
            }
        }
        if prefix.is_empty() {
            steps = (steps * 2).min(n);
            continue;
        }
        for &i in prefix.iter().take(k + 8) {
            let s = eig.eigenvectors.column(i);
            let mut y = vec![0.0; n];
            for (c, q) in basis.iter().enumerate().take(dim) {
                axpy(&mut y, s[c], q);
            }
            orthogonalize(&mut y, &locked_vecs);
            let ny = dot(&y, &y).sqrt();
            if ny < 0.5 {
                // already represented by a locked vector
                continue;
            }
            y.iter_mut().for_each(|x| *x /= ny);
            locked_vecs.push(y);
            locked.push(eig.eigenvalues[i]);
        }
        if locked_vecs.len() == n {
            break;
        }
    }
    if locked.len() >= k && locked_vecs.len() == n {
        let mut sorted = locked;
        sorted.sort_by(|a, b| b.total_cmp(a));
        return Ok(sorted.into_iter().take(k).collect());
    }
    Err(Error::Numerical(format!(
        "eigensolver did not settle after {} restarts",
        opts.max_rounds
    )))
}
