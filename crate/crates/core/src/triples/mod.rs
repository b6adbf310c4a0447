//! Triples `(G, H, K)` and the predicates AC, EC, FF, MAX, PAIR and INV.

mod inv;
mod pair;
mod report;
mod spec;

use std::collections::BTreeMap;

use crate::config::Bounds;
use crate::error::Result;
use crate::permgroup::{ClassIndex, PermGroup, Permutation};

pub use inv::{check_inv, has_involution_fixing_over_third, InvWitness};
pub use pair::{check_pair, Automorphism, PairOutcome, PairStatus};
pub use report::{verify, PropertyReport, VerifyOptions};
pub use spec::{ConstructStanza, GroupSpec, TripleSpec};

#[derive(Clone, Debug)]
pub struct Triple {
    pub label: String,
    g: PermGroup,
    h: PermGroup,
    k: PermGroup,
}

impl Triple {
    /// Checks that the generators of `h` and `k` lie in `g`.
    pub fn new(label: impl Into<String>, g: PermGroup, h: PermGroup, k: PermGroup) -> Result<Self> {
        h.require_subgroup_of(&g)?;
        k.require_subgroup_of(&g)?;
        Ok(Triple {
            label: label.into(),
            g,
            h,
            k,
        })
    }

    pub fn g(&self) -> &PermGroup {
        &self.g
    }

    pub fn h(&self) -> &PermGroup {
        &self.h
    }

    pub fn k(&self) -> &PermGroup {
        &self.k
    }

    pub fn degree(&self) -> usize {
        self.g.degree()
    }

    pub fn index_h(&self) -> u128 {
        self.g.order() / self.h.order()
    }

    pub fn index_k(&self) -> u128 {
        self.g.order() / self.k.order()
    }

    /// The same triple with `H` and `K` exchanged.
    pub fn swapped(&self) -> Triple {
        Triple {
            label: self.label.clone(),
            g: self.g.clone(),
            h: self.k.clone(),
            k: self.h.clone(),
        }
    }
}

/// How the `G`-classes meet `H` and `K`: for each `G`-class id, the number of
/// elements of `H` and of `K` in it, plus the least element of `H` (resp. `K`)
/// found in that class.
#[derive(Clone, Debug, Default)]
pub struct ClassProfile {
    pub h_counts: BTreeMap<usize, u128>,
    pub k_counts: BTreeMap<usize, u128>,
    h_least: BTreeMap<usize, Permutation>,
    k_least: BTreeMap<usize, Permutation>,
}

impl ClassProfile {
    pub fn compute(t: &Triple, bounds: &Bounds) -> Result<Self> {
        let mut index = ClassIndex::new(&t.g, bounds.enumeration)?;
        let mut prof = ClassProfile::default();
        let same = t.h.same_group(&t.k);
        for class in t.h.conjugacy_classes(bounds.enumeration)? {
            let id = index.class_of(&class[0]);
            *prof.h_counts.entry(id).or_default() += class.len() as u128;
            let least = prof.h_least.entry(id).or_insert_with(|| class[0].clone());
            if class[0] < *least {
                *least = class[0].clone();
            }
        }
        if same {
            prof.k_counts = prof.h_counts.clone();
            prof.k_least = prof.h_least.clone();
            return Ok(prof);
        }
        for class in t.k.conjugacy_classes(bounds.enumeration)? {
            let id = index.class_of(&class[0]);
            *prof.k_counts.entry(id).or_default() += class.len() as u128;
            let least = prof.k_least.entry(id).or_insert_with(|| class[0].clone());
            if class[0] < *least {
                *least = class[0].clone();
            }
        }
        Ok(prof)
    }

    pub fn is_ac(&self) -> bool {
        self.h_counts == self.k_counts
    }

    pub fn is_ec(&self) -> bool {
        self.h_counts.keys().eq(self.k_counts.keys())
    }

    /// The least element of `H` or `K` whose `G`-class misses the other
    /// subgroup, or for AC the least element of a class met unequally.
    pub fn ec_witness(&self) -> Option<Permutation> {
        let a = self
            .h_least
            .iter()
            .filter(|(id, _)| !self.k_counts.contains_key(id))
            .map(|(_, g)| g);
        let b = self
            .k_least
            .iter()
            .filter(|(id, _)| !self.h_counts.contains_key(id))
            .map(|(_, g)| g);
        a.chain(b).min().cloned()
    }

    pub fn ac_witness(&self) -> Option<Permutation> {
        let ids: std::collections::BTreeSet<usize> =
            self.h_counts.keys().chain(self.k_counts.keys()).copied().collect();
        ids.into_iter()
            .filter(|id| self.h_counts.get(id) != self.k_counts.get(id))
            .filter_map(|id| {
                let a = self.h_least.get(&id);
                let b = self.k_least.get(&id);
                match (a, b) {
                    (Some(x), Some(y)) => Some(x.min(y).clone()),
                    (Some(x), None) | (None, Some(x)) => Some(x.clone()),
                    (None, None) => None,
                }
            })
            .min()
    }
}

/// Every `G`-class meets `H` and `K` in equally many elements.
pub fn is_ac(t: &Triple, bounds: &Bounds) -> Result<bool> {
    if t.h.order() != t.k.order() {
        return Ok(false);
    }
    if t.h.same_group(&t.k) {
        return Ok(true);
    }
    Ok(ClassProfile::compute(t, bounds)?.is_ac())
}

/// Every element of `H` is `G`-conjugate into `K` and vice versa.
pub fn is_ec(t: &Triple, bounds: &Bounds) -> Result<bool> {
    if t.h.same_group(&t.k) {
        return Ok(true);
    }
    Ok(ClassProfile::compute(t, bounds)?.is_ec())
}

/// FF: both cores are trivial. On failure returns the nontrivial core.
pub fn check_ff(t: &Triple, bounds: &Bounds) -> Result<std::result::Result<(), PermGroup>> {
    for sub in [&t.h, &t.k] {
        let core = t.g.core(sub, bounds.enumeration)?;
        if core.order() > 1 {
            return Ok(Err(core));
        }
    }
    Ok(Ok(()))
}

/// MAX: both subgroups are maximal.
pub fn check_max(t: &Triple, bounds: &Bounds) -> Result<bool> {
    Ok(t.g.is_maximal(&t.h, bounds.index)? && t.g.is_maximal(&t.k, bounds.index)?)
}

/// Fixed-coset counts on `G/H`, one entry per `G`-class, keyed by the class's
/// least element.
pub fn permutation_character(
    g: &PermGroup,
    h: &PermGroup,
    bounds: &Bounds,
) -> Result<Vec<(Permutation, usize)>> {
    let table = g.left_cosets(h, bounds.index)?;
    let classes = g.conjugacy_classes(bounds.enumeration)?;
    Ok(classes
        .into_iter()
        .map(|c| {
            let rep = c[0].clone();
            let fix = table.action_of(&rep).fixed_point_count();
            (rep, fix)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    pub(crate) fn a4_triple() -> Triple {
        let a4 = PermGroup::alternating(4);
        let c2 = PermGroup::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]])]).unwrap();
        let v4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])]).unwrap();
        Triple::new("A4", a4, c2, v4).unwrap()
    }

    #[test]
    fn a4_is_ec_not_ac() {
        let t = a4_triple();
        let b = Bounds::default();
        assert!(is_ec(&t, &b).unwrap());
        assert!(!is_ac(&t, &b).unwrap());
        assert!(!check_max(&t, &b).unwrap());
    }

    #[test]
    fn equal_subgroups_are_ac() {
        let s4 = PermGroup::symmetric(4);
        let h = s4.stabilizer(0).unwrap();
        let t = Triple::new("S4", s4, h.clone(), h).unwrap();
        let b = Bounds::default();
        assert!(is_ac(&t, &b).unwrap());
        assert!(is_ec(&t, &b).unwrap());
    }

    #[test]
    fn whole_group_is_not_ff() {
        let s3 = PermGroup::symmetric(3);
        let t = Triple::new("S3", s3.clone(), s3.clone(), s3).unwrap();
        let core = check_ff(&t, &Bounds::default()).unwrap().unwrap_err();
        assert_eq!(core.order(), 6);
    }

    #[test]
    fn non_subgroup_rejected() {
        let a4 = PermGroup::alternating(4);
        let t = PermGroup::new(4, vec![cyc(4, &[&[0, 1]])]).unwrap();
        assert!(Triple::new("bad", a4.clone(), t, a4).is_err());
    }

    #[test]
    fn identity_character_is_index() {
        let s4 = PermGroup::symmetric(4);
        let h = s4.stabilizer(0).unwrap();
        let chi = permutation_character(&s4, &h, &Bounds::default()).unwrap();
        let id = chi.iter().find(|(g, _)| g.is_identity()).unwrap();
        assert_eq!(id.1, 4);
    }
}
