//! Brute-force oracles and a corpus of small triples shared by the
//! integration tests. The oracles work on raw image vectors and never call
//! the library's group algorithms.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use gassmann::catalog::{psl_triple, psl_triple_on_points};
use gassmann::constructions::{add_kernel, direct_power};
use gassmann::permgroup::{PermGroup, Permutation};
use gassmann::triples::Triple;
use gassmann::Bounds;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Img = Vec<usize>;

pub fn img(p: &Permutation) -> Img {
    p.image_vec()
}

/// `x` first, then `y`.
pub fn then(x: &Img, y: &Img) -> Img {
    x.iter().map(|&i| y[i]).collect()
}

pub fn inv(x: &Img) -> Img {
    let mut out = vec![0; x.len()];
    for (i, &j) in x.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// Every element, by breadth-first closure under right multiplication.
pub fn closure(degree: usize, gens: &[Permutation]) -> Vec<Img> {
    let gens: Vec<Img> = gens.iter().map(img).collect();
    let id: Img = (0..degree).collect();
    let mut seen: HashSet<Img> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = then(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}

/// Class index of each element: orbits under conjugation by the generators.
pub fn classes(elements: &[Img], gens: &[Permutation]) -> HashMap<Img, usize> {
    let gens: Vec<(Img, Img)> = gens.iter().map(|g| (img(g), inv(&img(g)))).collect();
    let mut class: HashMap<Img, usize> = HashMap::new();
    let mut next = 0;
    for e in elements {
        if class.contains_key(e) {
            continue;
        }
        let mut stack = vec![e.clone()];
        class.insert(e.clone(), next);
        while let Some(x) = stack.pop() {
            for (g, gi) in &gens {
                let y = then(&then(gi, &x), g);
                if !class.contains_key(&y) {
                    class.insert(y.clone(), next);
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    class
}

pub struct Oracle {
    pub h_counts: HashMap<usize, usize>,
    pub k_counts: HashMap<usize, usize>,
}

impl Oracle {
    pub fn new(t: &Triple) -> Self {
        let g = closure(t.degree(), t.g().generators());
        let cls = classes(&g, t.g().generators());
        let count = |x: &PermGroup| {
            let mut m: HashMap<usize, usize> = HashMap::new();
            for e in closure(t.degree(), x.generators()) {
                *m.entry(cls[&e]).or_default() += 1;
            }
            m
        };
        Oracle {
            h_counts: count(t.h()),
            k_counts: count(t.k()),
        }
    }

    pub fn ac(&self) -> bool {
        self.h_counts == self.k_counts
    }

    pub fn ec(&self) -> bool {
        let a: HashSet<_> = self.h_counts.keys().collect();
        let b: HashSet<_> = self.k_counts.keys().collect();
        a == b
    }
}

pub fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn group(n: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(n, gens).unwrap()
}

/// `x ↦ u·x + b` on `Z/8`.
fn affine8(u: usize, b: usize) -> Permutation {
    Permutation::from_images((0..8).map(|x| (u * x + b) % 8).collect()).unwrap()
}

/// `(A_4, ⟨(1 2)(3 4)⟩, V_4)`.
pub fn a4_triple() -> Triple {
    let g = PermGroup::alternating(4);
    let h = group(4, vec![perm(4, &[&[0, 1], &[2, 3]])]);
    let k = group(4, vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])]);
    Triple::new("A4", g, h, k).unwrap()
}

/// Hand-picked triples with `|G| ≤ 5000`: Gassmann pairs that are not
/// conjugate, EC-only pairs, plain negatives, and constructed triples.
pub fn fixed_corpus() -> Vec<Triple> {
    let b = Bounds::default();
    let mut out = vec![
        psl_triple(3, 2).unwrap(),
        psl_triple_on_points(3, 2).unwrap(),
        a4_triple(),
    ];
    // the affine group of Z/8 with x ↦ ux and x ↦ ux + 4(u − 1)/2
    let g = group(8, vec![affine8(1, 1), affine8(3, 0), affine8(5, 0), affine8(7, 0)]);
    let h = group(8, vec![affine8(3, 0), affine8(5, 0)]);
    let k = group(8, vec![affine8(3, 4), affine8(5, 0)]);
    out.push(Triple::new("AGL1(Z/8)", g, h, k).unwrap());
    // S_4 with a transposition against a double transposition
    let s4 = PermGroup::symmetric(4);
    out.push(
        Triple::new(
            "S4 t/dt",
            s4.clone(),
            group(4, vec![perm(4, &[&[0, 1]])]),
            group(4, vec![perm(4, &[&[0, 1], &[2, 3]])]),
        )
        .unwrap(),
    );
    // S_6 with a point stabilizer against PGL(2,5) on the projective line
    // (x ↦ x + 1, x ↦ −1/x, x ↦ 2x with 5 standing for ∞)
    let s6 = PermGroup::symmetric(6);
    let pgl = group(6, vec![perm(6, &[&[0, 1, 2, 3, 4]]), perm(6, &[&[0, 5], &[1, 4]]), perm(6, &[&[1, 2, 4, 3]])]);
    assert_eq!(pgl.order(), 120);
    out.push(Triple::new("S6 S5/PGL2(5)", s6.clone(), s6.stabilizer(0).unwrap(), pgl).unwrap());
    // conjugate subgroups: trivially Gassmann
    out.push(Triple::new("S5 conj", PermGroup::symmetric(5), PermGroup::symmetric(5).stabilizer(0).unwrap(), PermGroup::symmetric(5).stabilizer(3).unwrap()).unwrap());
    out.push(add_kernel(&psl_triple(3, 2).unwrap(), &PermGroup::cyclic(2), &b).unwrap());
    out.push(direct_power(&a4_triple(), 2, &b).unwrap());
    out
}

/// Random triples inside `S_5`, `S_6` and `S_7`: two random elements
/// generate `G` (kept when `|G| ≤ 5000`), `H` is generated by random
/// elements of `G`, and `K` is either another random subgroup or a conjugate
/// of `H`. Both indices are at most 16.
pub fn random_corpus(count: usize, seed: u64) -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.random_range(5..=7usize);
        let sym = PermGroup::symmetric(n);
        let g = group(n, vec![sym.random_element(&mut rng), sym.random_element(&mut rng)]);
        if g.order() > 5000 || g.order() < 4 {
            continue;
        }
        let sub = |rng: &mut ChaCha8Rng| {
            let m = rng.random_range(1..=2usize);
            group(n, (0..m).map(|_| g.random_element(rng)).collect())
        };
        let h = sub(&mut rng);
        let k = if rng.random_bool(0.4) {
            let x = g.random_element(&mut rng);
            group(n, h.generators().iter().map(|y| y.conjugate_by(&x)).collect())
        } else {
            sub(&mut rng)
        };
        // keep the coset spaces small enough for exact intertwiner solving
        if g.order() / h.order() > 16 || g.order() / k.order() > 16 {
            continue;
        }
        let label = format!("random {}", out.len());
        out.push(Triple::new(label, g, h, k).unwrap());
    }
    out
}

/// A set of involutions of `G` that generates it, if one exists.
pub fn involution_generators(g: &PermGroup, bound: u128) -> Option<Vec<Permutation>> {
    let invs: Vec<Permutation> = g.elements(bound).ok()?.into_iter().filter(Permutation::is_involution).collect();
    let mut chosen: Vec<Permutation> = Vec::new();
    let mut order = 1;
    for x in invs {
        let next = group(g.degree(), chosen.iter().cloned().chain([x.clone()]).collect());
        if next.order() > order {
            order = next.order();
            chosen.push(x);
            if order == g.order() {
                return Some(chosen);
            }
        }
    }
    None
}
