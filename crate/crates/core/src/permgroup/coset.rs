//! Coset tables, coset actions, cores, and maximality.
//!
//! With products applying the left factor first, the coset of `g` is the set
//! `{h·g : h ∈ H}` (as functions: `g ∘ h`), and `x` acts by sending it to the
//! coset of `g·x`. This is left translation on left cosets written in the
//! left-first convention; the trivial coset `H` is always index 0.

use std::collections::HashMap;

use super::chain::StabChain;
use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CosetTable {
    parent: PermGroup,
    subgroup: PermGroup,
    representatives: Vec<Permutation>,
    index_of: HashMap<Vec<u32>, usize>,
    key_base: Vec<usize>,
}

impl CosetTable {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Canonical representative of the coset `{h·g}`: the element whose images
    /// of the subgroup's base points are lexicographically least.
    fn canonical(&self, g: &Permutation) -> Permutation {
        canonical_rep(self.subgroup.chain(), g)
    }

    fn key(&self, g: &Permutation) -> Vec<u32> {
        let c = self.canonical(g);
        self.key_base.iter().map(|&b| c.apply(b) as u32).collect()
    }

    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: &Permutation) -> usize {
        self.index_of[&self.key(g)]
    }

    /// The permutation of cosets induced by `x`.
    pub fn action_of(&self, x: &Permutation) -> Permutation {
        let images = self
            .representatives
            .iter()
            .map(|r| self.coset_of(&r.then(x)) as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

fn canonical_rep(chain: &StabChain, g: &Permutation) -> Permutation {
    let mut cur = g.clone();
    for level in chain.levels() {
        let best = level
            .orbit
            .iter()
            .copied()
            .min_by_key(|&d| cur.apply(d))
            .expect("orbit contains the base point");
        if best != level.base_point {
            cur = level.transversal[best].as_ref().unwrap().then(&cur);
        }
    }
    cur
}

impl PermGroup {
    /// Enumerates the cosets of `subgroup` by breadth-first search from the
    /// trivial coset.
    pub fn left_cosets(&self, subgroup: &PermGroup, index_bound: usize) -> Result<CosetTable> {
        subgroup.require_subgroup_of(self)?;
        let index = self.order() / subgroup.order();
        if index > index_bound as u128 {
            return Err(Error::bound(format!("subgroup index {index}"), index_bound as u128));
        }
        let mut table = CosetTable {
            parent: self.clone(),
            subgroup: subgroup.clone(),
            representatives: Vec::new(),
            index_of: HashMap::new(),
            key_base: self.chain().base(),
        };
        let id = self.identity();
        table.index_of.insert(table.key(&id), 0);
        table.representatives.push(id);
        let mut head = 0;
        while head < table.representatives.len() {
            let r = table.representatives[head].clone();
            head += 1;
            for x in self.generators() {
                let g = r.then(x);
                let key = table.key(&g);
                if !table.index_of.contains_key(&key) {
                    table.index_of.insert(key, table.representatives.len());
                    table.representatives.push(g);
                }
            }
        }
        debug_assert_eq!(table.representatives.len() as u128, index);
        Ok(table)
    }

    /// The action on the cosets of `subgroup`: image group of degree
    /// `[G:H]` and the images of the parent's generators.
    pub fn coset_action(&self, subgroup: &PermGroup, index_bound: usize) -> Result<CosetAction> {
        let table = self.left_cosets(subgroup, index_bound)?;
        let images: Vec<Permutation> = self.generators().iter().map(|x| table.action_of(x)).collect();
        let image = PermGroup::new(table.len(), images.clone())?;
        Ok(CosetAction {
            table,
            generator_images: images,
            image,
        })
    }

    /// Largest normal subgroup of `self` inside `subgroup`: the join of the
    /// normal closures of those subgroup class representatives whose closure
    /// stays inside the subgroup.
    pub fn core(&self, subgroup: &PermGroup, bound: u128) -> Result<PermGroup> {
        subgroup.require_subgroup_of(self)?;
        if subgroup.order() == self.order() {
            return Ok(self.clone());
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut found = PermGroup::trivial(self.degree());
        for class in subgroup.conjugacy_classes(bound)? {
            let rep = &class[0];
            if rep.is_identity() || found.contains(rep) {
                continue;
            }
            if let Some(closure) = self.closure_within(rep, subgroup) {
                gens.extend(closure.generators().iter().cloned());
                found = PermGroup::new(self.degree(), gens.clone())?;
            }
        }
        Ok(found)
    }

    /// Normal closure of `x`, abandoned as soon as it leaves `container`.
    fn closure_within(&self, x: &Permutation, container: &PermGroup) -> Option<PermGroup> {
        let mut gens = vec![x.clone()];
        let mut closure = PermGroup::new(self.degree(), gens.clone()).ok()?;
        let mut i = 0;
        while i < gens.len() {
            let n = gens[i].clone();
            i += 1;
            for g in self.generators() {
                let c = n.conjugate_by(g);
                if !container.contains(&c) {
                    return None;
                }
                if !closure.contains(&c) {
                    gens.push(c);
                    closure = PermGroup::new(self.degree(), gens.clone()).ok()?;
                }
            }
        }
        Some(closure)
    }

    /// Maximality of a proper subgroup, decided as primitivity of the coset
    /// action: the minimal block containing the trivial coset and a
    /// representative of each suborbit must be everything.
    pub fn is_maximal(&self, subgroup: &PermGroup, index_bound: usize) -> Result<bool> {
        let table = self.left_cosets(subgroup, index_bound)?;
        let m = table.len();
        if m <= 1 {
            return Ok(false);
        }
        let gens: Vec<Permutation> = self.generators().iter().map(|x| table.action_of(x)).collect();
        let sub_gens: Vec<Permutation> = subgroup
            .generators()
            .iter()
            .map(|x| table.action_of(x))
            .collect();
        let stab = PermGroup::new(m, sub_gens)?;
        for orbit in stab.orbits() {
            let alpha = orbit[0];
            if alpha == 0 {
                continue;
            }
            if minimal_block_size(&gens, m, alpha) < m {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Size of the smallest block of imprimitivity containing points 0 and `alpha`.
fn minimal_block_size(gens: &[Permutation], m: usize, alpha: usize) -> usize {
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut queue = vec![(0usize, alpha)];
    let r0 = find(&mut parent, 0);
    let ra = find(&mut parent, alpha);
    parent[ra] = r0;
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let u = find(&mut parent, g.apply(x));
            let v = find(&mut parent, g.apply(y));
            if u != v {
                parent[v] = u;
                queue.push((u, v));
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..m).filter(|&x| find(&mut parent, x) == root).count()
}

/// The action of a group on the cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub table: CosetTable,
    pub generator_images: Vec<Permutation>,
    pub image: PermGroup,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.table.len()
    }

    pub fn image_of(&self, g: &Permutation) -> Permutation {
        self.table.action_of(g)
    }

    /// Kernel of the action, computed as the pointwise stabilizer of all cosets
    /// in the group generated by the pairs `(g, image(g))`.
    pub fn kernel(&self) -> PermGroup {
        let parent = self.table.parent();
        let n = parent.degree();
        let m = self.degree();
        let gens: Vec<Permutation> = parent
            .generators()
            .iter()
            .zip(&self.generator_images)
            .map(|(g, img)| g.direct_sum(img))
            .collect();
        let prefix: Vec<usize> = (n..n + m).collect();
        let chain = StabChain::build(n + m, &gens, &prefix);
        let tail = chain.tail(m);
        let kernel_gens: Vec<Permutation> = tail
            .strong_generators()
            .iter()
            .map(|g| g.restrict(0, n))
            .collect();
        PermGroup::new(n, kernel_gens).unwrap()
    }
}
