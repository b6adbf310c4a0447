use std::collections::HashMap;
use std::sync::OnceLock;

use super::chain::StabChain;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Default cap on the number of elements any operation will enumerate.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1_000_000;
/// Default cap on the index of a subgroup when building coset tables.
pub const DEFAULT_INDEX_BOUND: usize = 10_000;

/// A finitely generated permutation group. The stabilizer chain is built on
/// first use and never changes afterwards.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub(crate) fn from_chain(chain: StabChain) -> Self {
        let gens = chain.strong_generators().to_vec();
        let cell = OnceLock::new();
        let degree = chain.degree();
        let _ = cell.set(chain);
        PermGroup {
            degree,
            generators: gens,
            chain: cell,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut cyc: Vec<usize> = (1..n).collect();
            cyc.push(0);
            gens.push(Permutation::from_images(cyc).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        if n <= 1 {
            return PermGroup::trivial(n);
        }
        let mut cyc: Vec<usize> = (1..n).collect();
        cyc.push(0);
        PermGroup::new(n, vec![Permutation::from_images(cyc).unwrap()]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn require_member(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        if !self.contains(g) {
            return Err(Error::NotMember(g.to_cycle_string()));
        }
        Ok(())
    }

    /// True if every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn require_subgroup_of(&self, parent: &PermGroup) -> Result<()> {
        if self.degree != parent.degree {
            return Err(Error::DegreeMismatch {
                left: parent.degree,
                right: self.degree,
            });
        }
        for g in &self.generators {
            if !parent.contains(g) {
                return Err(Error::NotSubgroup(format!(
                    "generator {g} is not in the parent group"
                )));
            }
        }
        Ok(())
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !assigned[x] {
                let o = self.orbit(x).unwrap();
                for &y in &o {
                    assigned[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Pointwise stabilizer of the given points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &x in points {
            if x >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: self.degree,
                });
            }
        }
        let chain = StabChain::build(self.degree, self.chain().strong_generators(), points);
        Ok(PermGroup::from_chain(chain.tail(points.len())))
    }

    pub fn stabilizer(&self, x: usize) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[x])
    }

    fn check_enumeration(&self, bound: u128) -> Result<()> {
        let order = self.order();
        if order > bound {
            return Err(Error::bound(format!("group order {order}"), bound));
        }
        Ok(())
    }

    pub fn random_element<R: rand::RngExt + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// All elements, sorted lexicographically by image table.
    pub fn elements(&self, bound: u128) -> Result<Vec<Permutation>> {
        self.check_enumeration(bound)?;
        let mut els = self.chain().elements();
        els.sort_unstable();
        Ok(els)
    }

    /// The subgroup generated by `self` together with extra elements.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// Conjugacy classes as sorted element lists, ordered by their least
    /// element; the least element is the class representative.
    pub fn conjugacy_classes(&self, bound: u128) -> Result<Vec<Vec<Permutation>>> {
        let els = self.elements(bound)?;
        let index: HashMap<&Permutation, usize> =
            els.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut class_of = vec![usize::MAX; els.len()];
        let mut classes = Vec::new();
        for start in 0..els.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let x = &els[members[head]];
                head += 1;
                for g in &self.generators {
                    let y = x.conjugate_by(g);
                    let j = index[&y];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members.into_iter().map(|i| els[i].clone()).collect());
        }
        Ok(classes)
    }

    /// Smallest normal subgroup of `self` containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<PermGroup> {
        for e in elements {
            self.require_member(e)?;
        }
        let mut gens: Vec<Permutation> =
            elements.iter().filter(|e| !e.is_identity()).cloned().collect();
        let mut closure = PermGroup::new(self.degree, gens.clone())?;
        let mut i = 0;
        while i < gens.len() {
            let n = gens[i].clone();
            i += 1;
            for g in &self.generators {
                let c = n.conjugate_by(g);
                if !closure.contains(&c) {
                    gens.push(c);
                    closure = PermGroup::new(self.degree, gens.clone())?;
                }
            }
        }
        Ok(closure)
    }

    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        self.is_subgroup_of(parent)
            && self
                .generators
                .iter()
                .all(|h| parent.generators.iter().all(|g| self.contains(&h.conjugate_by(g))))
    }

    /// Simple: nontrivial, and the normal closure of every nonidentity class
    /// representative is the whole group.
    pub fn is_simple(&self, bound: u128) -> Result<bool> {
        let order = self.order();
        if order <= 1 {
            return Ok(false);
        }
        for class in self.conjugacy_classes(bound)? {
            let rep = &class[0];
            if rep.is_identity() {
                continue;
            }
            if self.normal_closure(std::slice::from_ref(rep))?.order() != order {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &PermGroup) -> PermGroup {
        let id_a = self.identity();
        let id_b = other.identity();
        let mut gens: Vec<Permutation> =
            self.generators.iter().map(|g| g.direct_sum(&id_b)).collect();
        gens.extend(other.generators.iter().map(|g| id_a.direct_sum(g)));
        PermGroup::new(self.degree + other.degree, gens).unwrap()
    }
}
