//! Solving `T·M(μ) = N(μ)·T` exactly and searching for permutation solutions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::linalg::{determinant, mat_mul, Echelon};
use super::system::InvolutionSystem;
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

/// Groups larger than this are not enumerated when trying to prove that no
/// invertible intertwiner exists.
const CHARACTER_PROOF_BOUND: u128 = 200_000;

/// Coefficients tried, in order, when combining basis vectors.
const COEFFICIENTS: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invertibility {
    /// `matrix` is an invertible intertwiner.
    Invertible,
    /// The representations have different characters on the group generated
    /// by the paired sides, so every intertwiner is singular.
    ProvedSingular { class_witness: Permutation },
    /// No invertible combination with coefficients in −3..3 was found, and no
    /// proof of singularity was available.
    SearchExhausted,
}

#[derive(Clone, Debug)]
pub struct TransplantationSolution {
    /// An invertible intertwiner when one was found, otherwise the first
    /// basis vector.
    pub matrix: Vec<Vec<BigInt>>,
    /// Basis of the intertwiner space, each as a `Λ×Λ` matrix.
    pub basis: Vec<Vec<Vec<BigInt>>>,
    pub status: Invertibility,
    pub determinant: BigInt,
    /// A tile bijection intertwining the systems, if the domains are congruent
    /// tile by tile.
    pub permutation_solution: Option<Permutation>,
}

impl TransplantationSolution {
    pub fn invertible(&self) -> bool {
        self.status == Invertibility::Invertible
    }
}

fn as_matrix(v: &[BigInt], n: usize) -> Vec<Vec<BigInt>> {
    v.chunks(n).map(<[BigInt]>::to_vec).collect()
}

fn perm_matrix(m: &Permutation) -> Vec<Vec<BigInt>> {
    let n = m.degree();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if m.apply(j) == i { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Exact re-check of `T·M(μ) = N(μ)·T` for every side.
pub fn intertwines(t: &[Vec<BigInt>], a: &InvolutionSystem, b: &InvolutionSystem) -> bool {
    a.involutions().iter().zip(b.involutions()).all(|(m, n)| {
        mat_mul(t, &perm_matrix(m)) == mat_mul(&perm_matrix(n), t)
    })
}

/// Basis of all `T` with `T·M(μ) = N(μ)·T`, as flattened row-major vectors.
pub fn intertwiner_basis(a: &InvolutionSystem, b: &InvolutionSystem) -> Result<Vec<Vec<BigInt>>> {
    let n = a.n_tiles();
    if n != b.n_tiles() || a.sides() != b.sides() {
        return Err(Error::InvalidSystem(format!(
            "systems differ in size: {}×{} vs {}×{}",
            a.n_tiles(),
            a.sides(),
            b.n_tiles(),
            b.sides()
        )));
    }
    let mut ech = Echelon::new(n * n);
    // (T M)_{ij} = T[i][m(j)] and (N T)_{ij} = T[n(i)][j].
    for (m, nn) in a.involutions().iter().zip(b.involutions()) {
        for i in 0..n {
            for j in 0..n {
                let lhs = i * n + m.apply(j);
                let rhs = nn.apply(i) * n + j;
                if lhs == rhs {
                    continue;
                }
                let mut row = vec![BigInt::zero(); n * n];
                row[lhs] += 1;
                row[rhs] -= 1;
                ech.push(row);
            }
        }
    }
    Ok(ech.nullspace())
}

/// Solves the transplantation equation. `None` when only `T = 0` solves it.
pub fn find_transplantation(
    a: &InvolutionSystem,
    b: &InvolutionSystem,
) -> Result<Option<TransplantationSolution>> {
    let n = a.n_tiles();
    let basis = intertwiner_basis(a, b)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let permutation_solution = detect_isometry(a, b);
    let basis_m: Vec<Vec<Vec<BigInt>>> = basis.iter().map(|v| as_matrix(v, n)).collect();

    let mut found = None;
    for m in &basis_m {
        let d = determinant(m);
        if !d.is_zero() {
            found = Some((m.clone(), d));
            break;
        }
    }
    if found.is_none() && basis.len() > 1 {
        found = search_combinations(&basis, n);
    }
    let solution = match found {
        Some((matrix, det)) => TransplantationSolution {
            matrix,
            basis: basis_m,
            status: Invertibility::Invertible,
            determinant: det,
            permutation_solution,
        },
        None => {
            let status = match character_mismatch(a, b) {
                Some(w) => Invertibility::ProvedSingular { class_witness: w },
                None => Invertibility::SearchExhausted,
            };
            TransplantationSolution {
                matrix: basis_m[0].clone(),
                basis: basis_m,
                status,
                determinant: BigInt::zero(),
                permutation_solution,
            }
        }
    };
    Ok(Some(solution))
}

/// Combinations `Σ c_k v_k` with coefficients from `COEFFICIENTS`, in
/// odometer order with the first basis vector varying slowest.
fn search_combinations(basis: &[Vec<BigInt>], n: usize) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
    let k = basis.len();
    let cap = 7usize.checked_pow(k as u32).unwrap_or(usize::MAX).min(50_000);
    let mut idx = vec![0usize; k];
    for _ in 0..cap {
        // advance odometer (skips the all-zero start)
        let mut pos = k;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < COEFFICIENTS.len() {
                break;
            }
            idx[pos] = 0;
        }
        let mut v = vec![BigInt::zero(); n * n];
        for (c, b) in idx.iter().zip(basis) {
            let c = COEFFICIENTS[*c];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += y * c;
                }
            }
        }
        let m = as_matrix(&v, n);
        let d = determinant(&m);
        if !d.is_zero() {
            return Some((m, d));
        }
    }
    None
}

/// Pairs side `μ` of `a` with side `μ` of `b` and compares fixed-point counts
/// over the classes of the generated group. Returns an element on which the
/// two permutation characters differ.
pub fn character_mismatch(a: &InvolutionSystem, b: &InvolutionSystem) -> Option<Permutation> {
    let n = a.n_tiles();
    let gens: Vec<Permutation> = a
        .involutions()
        .iter()
        .zip(b.involutions())
        .map(|(m, nn)| m.direct_sum(nn))
        .collect();
    let d = PermGroup::new(2 * n, gens).ok()?;
    if d.order() > CHARACTER_PROOF_BOUND {
        return None;
    }
    let classes = d.conjugacy_classes(CHARACTER_PROOF_BOUND).ok()?;
    classes.into_iter().map(|c| c[0].clone()).find(|g| {
        let left = (0..n).filter(|&i| g.apply(i) == i).count();
        let right = (n..2 * n).filter(|&i| g.apply(i) == i).count();
        left != right
    })
}

/// A tile bijection `p` with `p∘M(μ) = N(μ)∘p` for every side. Since systems
/// are connected, the image of tile 0 determines `p`.
pub fn detect_isometry(a: &InvolutionSystem, b: &InvolutionSystem) -> Option<Permutation> {
    let n = a.n_tiles();
    if n != b.n_tiles() || a.sides() != b.sides() {
        return None;
    }
    'start: for v in 0..n {
        let mut p = vec![usize::MAX; n];
        let mut used = vec![false; n];
        p[0] = v;
        used[v] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for (m, nn) in a.involutions().iter().zip(b.involutions()) {
                let j = m.apply(i);
                let target = nn.apply(p[i]);
                if p[j] == usize::MAX {
                    if used[target] {
                        continue 'start;
                    }
                    p[j] = target;
                    used[target] = true;
                    stack.push(j);
                } else if p[j] != target {
                    continue 'start;
                }
            }
        }
        return Permutation::from_images(p).ok();
    }
    None
}

/// The permutation matrix of a tile bijection, in the orientation used by
/// the transplantation equation.
pub fn isometry_matrix(p: &Permutation) -> Vec<Vec<BigInt>> {
    perm_matrix(p)
}
