//! Base and strong generating set via the deterministic Schreier–Sims algorithm.

use super::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: usize,
    /// Orbit of the base point under the level's strong generators, in discovery order.
    pub orbit: Vec<usize>,
    /// `transversal[y]` maps the base point to `y`.
    pub transversal: Vec<Option<Permutation>>,
    pub inverse: Vec<Option<Permutation>>,
}

/// A stabilizer chain: base points `b_0, b_1, …` and a strong generating set
/// such that the generators fixing `b_0..b_i` generate the pointwise stabilizer
/// of those points.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Runs Schreier–Sims on `gens`. The base starts with `base_prefix` (which may
    /// include points the group fixes) and is extended as needed.
    pub fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> StabChain {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = base_prefix.to_vec();
        for g in &strong {
            if base.iter().all(|&b| g.fixes(b)) {
                base.push(g.first_moved_point().expect("nonidentity"));
            }
        }
        let mut chain = StabChain {
            degree,
            strong,
            levels: Vec::new(),
        };
        chain.levels = base
            .iter()
            .map(|&b| Level {
                base_point: b,
                orbit: Vec::new(),
                transversal: Vec::new(),
                inverse: Vec::new(),
            })
            .collect();
        for i in 0..chain.levels.len() {
            chain.rebuild_level(i);
        }

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let gens = chain.level_generators(lvl);
            let orbit = chain.levels[lvl].orbit.clone();
            for &delta in &orbit {
                for s in &gens {
                    let u = chain.levels[lvl].transversal[delta].as_ref().unwrap();
                    let image = s.apply(delta);
                    let v_inv = chain.levels[lvl].inverse[image].as_ref().unwrap();
                    let schreier = u.then(s).then(v_inv);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, drop) = chain.sift_from(&schreier, lvl + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if drop == chain.levels.len() {
                        let b = residue.first_moved_point().expect("nonidentity residue");
                        chain.levels.push(Level {
                            base_point: b,
                            orbit: Vec::new(),
                            transversal: Vec::new(),
                            inverse: Vec::new(),
                        });
                    }
                    chain.strong.push(residue);
                    for l in lvl + 1..=drop {
                        chain.rebuild_level(l);
                    }
                    i = drop as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
        chain
    }

    fn rebuild_level(&mut self, lvl: usize) {
        let gens = self.level_generators(lvl);
        let b = self.levels[lvl].base_point;
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        let mut orbit = vec![b];
        transversal[b] = Some(Permutation::identity(self.degree));
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &gens {
                let y = g.apply(x);
                if transversal[y].is_none() {
                    let u = transversal[x].as_ref().unwrap().then(g);
                    transversal[y] = Some(u);
                    orbit.push(y);
                }
            }
        }
        let inverse = transversal
            .iter()
            .map(|t| t.as_ref().map(Permutation::inverse))
            .collect();
        let level = &mut self.levels[lvl];
        level.orbit = orbit;
        level.transversal = transversal;
        level.inverse = inverse;
    }

    /// Strong generators fixing the first `lvl` base points.
    pub(crate) fn level_generators(&self, lvl: usize) -> Vec<Permutation> {
        let prefix: Vec<usize> = self.levels[..lvl].iter().map(|l| l.base_point).collect();
        self.strong
            .iter()
            .filter(|g| prefix.iter().all(|&b| g.fixes(b)))
            .cloned()
            .collect()
    }

    /// Sifts `g` through levels `from..`. Returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it passed every level).
    pub(crate) fn sift_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (idx, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base_point);
            match &level.inverse[beta] {
                Some(inv) => h = h.then(inv),
                None => return (h, idx),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).0.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// The chain of the pointwise stabilizer of the first `from` base points.
    pub fn tail(&self, from: usize) -> StabChain {
        let prefix: Vec<usize> = self.levels[..from].iter().map(|l| l.base_point).collect();
        StabChain {
            degree: self.degree,
            strong: self
                .strong
                .iter()
                .filter(|g| prefix.iter().all(|&b| g.fixes(b)))
                .cloned()
                .collect(),
            levels: self.levels[from..].to_vec(),
        }
    }

    /// A uniformly random element: one random transversal element per level.
    pub fn random_element<R: rand::RngExt + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let y = level.orbit[rng.random_range(0..level.orbit.len())];
            g = g.then(level.transversal[y].as_ref().unwrap());
        }
        g
    }

    /// All elements, generated as products of transversal elements. The caller
    /// is responsible for bounding the order first.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &y in &level.orbit {
                let u = level.transversal[y].as_ref().unwrap();
                for h in &out {
                    next.push(h.then(u));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7usize {
            let mut cyc: Vec<usize> = (1..n).collect();
            cyc.push(0);
            let mut tr: Vec<usize> = (0..n).collect();
            tr.swap(0, 1);
            let chain = StabChain::build(n, &[perm(&cyc), perm(&tr)], &[]);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(chain.order(), fact);
        }
    }

    #[test]
    fn elements_are_distinct_members() {
        let chain = StabChain::build(4, &[perm(&[1, 2, 0, 3]), perm(&[0, 2, 3, 1])], &[]);
        let els = chain.elements();
        assert_eq!(els.len() as u128, chain.order());
        let set: std::collections::HashSet<_> = els.iter().cloned().collect();
        assert_eq!(set.len(), els.len());
        assert!(els.iter().all(|g| chain.contains(g)));
    }

    #[test]
    fn prefix_with_fixed_points_is_kept() {
        let chain = StabChain::build(5, &[perm(&[1, 0, 2, 3, 4])], &[4, 3]);
        assert_eq!(chain.base()[..2], [4, 3]);
        assert_eq!(chain.order(), 2);
    }
}
