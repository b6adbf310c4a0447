//! Projective spaces over small fields and the triples `(PSL_n(q), point
//! stabilizer, hyperplane stabilizer)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};
use crate::triples::Triple;

/// The `(n, q)` pairs listed as known planar examples.
pub const FLAGSHIP: [(usize, usize); 4] = [(3, 2), (3, 3), (4, 2), (3, 4)];

/// Arithmetic in `F_q` for `q ∈ {2, 3, 4}` and other small primes.
/// `F_4 = F_2[x]/(x² + x + 1)` with elements `0, 1, x, x + 1` coded `0..4`.
#[derive(Clone, Debug)]
pub struct Field {
    q: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
}

impl Field {
    pub fn new(q: usize) -> Result<Self> {
        let (add, mul): (Vec<Vec<u8>>, Vec<Vec<u8>>) = if q == 4 {
            let add = (0..4).map(|a| (0..4).map(|b| (a ^ b) as u8).collect()).collect();
            // x·x = x + 1, x·(x+1) = 1, (x+1)² = x
            let m = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
            let mul = m.iter().map(|r| r.iter().map(|&v| v as u8).collect()).collect();
            (add, mul)
        } else if (2..=13).contains(&q) && (2..q).all(|d| q % d != 0) {
            let add = (0..q).map(|a| (0..q).map(|b| ((a + b) % q) as u8).collect()).collect();
            let mul = (0..q).map(|a| (0..q).map(|b| ((a * b) % q) as u8).collect()).collect();
            (add, mul)
        } else {
            return Err(Error::InvalidConstruction(format!(
                "unsupported field size {q} (primes up to 13 and 4)"
            )));
        };
        Ok(Field { q, add, mul })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        (0..self.q as u8).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert_ne!(a, 0);
        (1..self.q as u8).find(|&b| self.mul(a, b) == 1).unwrap()
    }
}

/// `PG(n − 1, q)`: points and hyperplanes are nonzero vectors of `F_q^n` up to
/// scalars, normalized so the first nonzero coordinate is 1. Hyperplane `i`
/// is `{x : v_i · x = 0}` for the same list of vectors.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    pub n: usize,
    pub field: Field,
    pub points: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl ProjectiveSpace {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConstruction(format!("dimension {n} too small")));
        }
        let field = Field::new(q)?;
        let mut points = Vec::new();
        let total = q.pow(n as u32);
        for code in 1..total {
            let mut v = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                v.push((c % q) as u8);
                c /= q;
            }
            v.reverse();
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                points.push(v);
            }
        }
        let index = points.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(ProjectiveSpace {
            n,
            field,
            points,
            index,
        })
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    fn normalize(&self, v: &[u8]) -> Vec<u8> {
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
        let s = self.field.inv(lead);
        v.iter().map(|&x| self.field.mul(s, x)).collect()
    }

    pub fn index_of(&self, v: &[u8]) -> usize {
        self.index[&self.normalize(v)]
    }

    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.field.add(acc, self.field.mul(x, y)))
    }

    /// Point `p` lies on hyperplane `h`.
    pub fn incident(&self, p: usize, h: usize) -> bool {
        self.dot(&self.points[p], &self.points[h]) == 0
    }

    fn apply(&self, m: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
        m.iter().map(|row| self.dot(row, v)).collect()
    }

    /// The permutation of points ⊔ hyperplanes induced by the matrix `m`;
    /// hyperplanes move by the inverse transpose `mt_inv`.
    fn action(&self, m: &[Vec<u8>], mt_inv: &[Vec<u8>]) -> Permutation {
        let p = self.point_count();
        let mut images = Vec::with_capacity(2 * p);
        for v in &self.points {
            images.push(self.index_of(&self.apply(m, v)));
        }
        for v in &self.points {
            images.push(p + self.index_of(&self.apply(mt_inv, v)));
        }
        Permutation::from_images(images).expect("matrix acts bijectively")
    }

    /// Elementary transvections `I + a·E_ij` together with their inverse
    /// transposes `I − a·E_ji`.
    fn transvections(&self) -> Vec<(Vec<Vec<u8>>, Vec<Vec<u8>>)> {
        let n = self.n;
        let f = &self.field;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for a in 1..f.size() as u8 {
                    let mut m = vec![vec![0u8; n]; n];
                    let mut t = vec![vec![0u8; n]; n];
                    for d in 0..n {
                        m[d][d] = 1;
                        t[d][d] = 1;
                    }
                    m[i][j] = a;
                    t[j][i] = f.neg(a);
                    out.push((m, t));
                }
            }
        }
        out
    }
}

/// `G` is the image of `SL_n(q)` acting on points (indices `0..P`) and
/// hyperplanes (indices `P..2P`); `H` fixes point 0 and `K` fixes hyperplane 0.
pub fn psl_triple(n: usize, q: usize) -> Result<Triple> {
    let space = ProjectiveSpace::new(n, q)?;
    let p = space.point_count();
    let gens: Vec<Permutation> = space
        .transvections()
        .iter()
        .map(|(m, t)| space.action(m, t))
        .collect();
    let mut uniq = gens.clone();
    uniq.sort();
    uniq.dedup();
    let g = PermGroup::new(2 * p, uniq)?;
    let h = g.stabilizer(0)?;
    let k = g.stabilizer(p)?;
    Triple::new(format!("PSL({n},{q})"), g, h, k)
}

/// The same triple restricted to the point set (degree `P`). The action on
/// points is faithful, so nothing is lost; `K` becomes the setwise
/// stabilizer of a hyperplane.
pub fn psl_triple_on_points(n: usize, q: usize) -> Result<Triple> {
    let t = psl_triple(n, q)?;
    let p = t.degree() / 2;
    let restrict = |g: &PermGroup| -> Result<PermGroup> {
        PermGroup::new(p, g.generators().iter().map(|x| x.restrict(0, p)).collect())
    };
    Triple::new(format!("PSL({n},{q}) on points"), restrict(t.g())?, restrict(t.h())?, restrict(t.k())?)
}

/// The permutation swapping point `i` with hyperplane `i`.
pub fn duality(n: usize, q: usize) -> Result<Permutation> {
    let p = ProjectiveSpace::new(n, q)?.point_count();
    let images: Vec<usize> = (0..2 * p).map(|i| if i < p { i + p } else { i - p }).collect();
    Permutation::from_images(images)
}

/// Images of the generators of `psl_triple(n, q).g()` under the inverse
/// transpose automorphism, realized as conjugation by [`duality`].
pub fn duality_automorphism(n: usize, q: usize) -> Result<Vec<Permutation>> {
    let t = psl_triple(n, q)?;
    let d = duality(n, q)?;
    Ok(t.g().generators().iter().map(|g| g.conjugate_by(&d)).collect())
}

/// For `a, b` stabilizing a common hyperplane, the least point `y` with
/// `a(y) = b(y)`. `a⁻¹b` also stabilizes the hyperplane, and every such
/// element fixes a point.
pub fn model_fixed_coset(n: usize, q: usize, a: &Permutation, b: &Permutation) -> Result<usize> {
    let p = ProjectiveSpace::new(n, q)?.point_count();
    let same_hyperplane = (p..2 * p).any(|h| a.fixes(h) && b.fixes(h));
    if !same_hyperplane {
        return Err(Error::InvalidConstruction("elements share no fixed hyperplane".into()));
    }
    (0..p)
        .find(|&y| a.apply(y) == b.apply(y))
        .ok_or_else(|| Error::NoFixedCoset("no point with a(y) = b(y)".into()))
}
