//! Conjugacy testing by backtracking over the stabilizer chain.

use std::collections::HashMap;

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::Result;

/// For each point: (cycle index, position in the cycle); plus the cycles.
struct CycleMap {
    cycles: Vec<Vec<usize>>,
    of_point: Vec<(usize, usize)>,
}

impl CycleMap {
    fn new(p: &Permutation) -> Self {
        let cycles = p.cycles();
        let mut of_point = vec![(0, 0); p.degree()];
        for (ci, c) in cycles.iter().enumerate() {
            for (pos, &x) in c.iter().enumerate() {
                of_point[x] = (ci, pos);
            }
        }
        CycleMap { cycles, of_point }
    }
}

struct Search<'a> {
    group: &'a PermGroup,
    a: &'a Permutation,
    b: &'a Permutation,
    ca: CycleMap,
    cb: CycleMap,
    required: Vec<Option<usize>>,
    used_b_cycle: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, level: usize, prefix: &Permutation) -> Option<Permutation> {
        let levels = self.group.chain().levels();
        if level == levels.len() {
            return (self.a.conjugate_by(prefix) == *self.b).then(|| prefix.clone());
        }
        let lvl = &levels[level];
        let bp = lvl.base_point;
        let prefix_inv = prefix.inverse();
        let mut candidates: Vec<(usize, usize)> = match self.required[bp] {
            Some(r) => {
                let delta = prefix_inv.apply(r);
                if lvl.transversal[delta].is_some() {
                    vec![(r, delta)]
                } else {
                    return None;
                }
            }
            None => lvl.orbit.iter().map(|&d| (prefix.apply(d), d)).collect(),
        };
        candidates.sort_unstable();
        for (img, delta) in candidates {
            let mut assigned = None;
            if self.required[bp].is_none() {
                let (ca_idx, pos) = self.ca.of_point[bp];
                let (cb_idx, bpos) = self.cb.of_point[img];
                let len = self.ca.cycles[ca_idx].len();
                if self.used_b_cycle[cb_idx] || self.cb.cycles[cb_idx].len() != len {
                    continue;
                }
                for m in 0..len {
                    let x = self.ca.cycles[ca_idx][(pos + m) % len];
                    let y = self.cb.cycles[cb_idx][(bpos + m) % len];
                    self.required[x] = Some(y);
                }
                self.used_b_cycle[cb_idx] = true;
                assigned = Some((ca_idx, cb_idx));
            }
            let u = lvl.transversal[delta].as_ref().unwrap();
            let next = u.then(prefix);
            let found = self.run(level + 1, &next);
            if let Some((ca_idx, cb_idx)) = assigned {
                for &x in &self.ca.cycles[ca_idx] {
                    self.required[x] = None;
                }
                self.used_b_cycle[cb_idx] = false;
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

impl PermGroup {
    /// Finds `g` in the group with `g⁻¹ a g = b`, or `None` if `a` and `b` are
    /// not conjugate. Both must be members.
    pub fn is_conjugate(&self, a: &Permutation, b: &Permutation) -> Result<Option<Permutation>> {
        self.require_member(a)?;
        self.require_member(b)?;
        Ok(self.conjugator_unchecked(a, b))
    }

    pub(crate) fn conjugator_unchecked(&self, a: &Permutation, b: &Permutation) -> Option<Permutation> {
        if a == b {
            return Some(self.identity());
        }
        if a.cycle_type() != b.cycle_type() {
            return None;
        }
        let ca = CycleMap::new(a);
        let cb = CycleMap::new(b);
        let used_b_cycle = vec![false; cb.cycles.len()];
        let mut search = Search {
            group: self,
            a,
            b,
            ca,
            cb,
            required: vec![None; self.degree()],
            used_b_cycle,
        };
        search.run(0, &self.identity())
    }
}

/// Assigns G-conjugacy class ids to elements. Small groups are handled by
/// enumerating their classes; larger ones by comparing against stored
/// representatives with the backtracking test.
pub struct ClassIndex<'a> {
    group: &'a PermGroup,
    table: Option<HashMap<Permutation, usize>>,
    reps: Vec<Permutation>,
    by_type: HashMap<Vec<usize>, Vec<usize>>,
}

/// Groups up to this order have their classes enumerated outright.
pub const CLASS_TABLE_LIMIT: u128 = 200_000;

impl<'a> ClassIndex<'a> {
    pub fn new(group: &'a PermGroup, bound: u128) -> Result<Self> {
        let limit = CLASS_TABLE_LIMIT.min(bound);
        let table = if group.order() <= limit {
            let classes = group.conjugacy_classes(limit)?;
            let mut table = HashMap::new();
            for (i, class) in classes.into_iter().enumerate() {
                for g in class {
                    table.insert(g, i);
                }
            }
            Some(table)
        } else {
            None
        };
        Ok(ClassIndex {
            group,
            table,
            reps: Vec::new(),
            by_type: HashMap::new(),
        })
    }

    /// Backtracking only, regardless of group size.
    pub fn without_table(group: &'a PermGroup) -> Self {
        ClassIndex {
            group,
            table: None,
            reps: Vec::new(),
            by_type: HashMap::new(),
        }
    }

    /// Class id of a member of the group.
    pub fn class_of(&mut self, g: &Permutation) -> usize {
        if let Some(t) = &self.table {
            return t[g];
        }
        let ct = g.cycle_type();
        let bucket = self.by_type.entry(ct).or_default();
        for &id in bucket.iter() {
            if self.group.conjugator_unchecked(&self.reps[id], g).is_some() {
                return id;
            }
        }
        let id = self.reps.len();
        self.reps.push(g.clone());
        bucket.push(id);
        id
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_conjugate_to_itself() {
        let s4 = PermGroup::symmetric(4);
        let id = s4.identity();
        assert_eq!(s4.is_conjugate(&id, &id).unwrap(), Some(id));
    }

    #[test]
    fn different_cycle_types_are_not_conjugate() {
        let s4 = PermGroup::symmetric(4);
        let a = cyc(4, &[&[0, 1]]);
        let b = cyc(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(s4.is_conjugate(&a, &b).unwrap(), None);
    }

    #[test]
    fn double_transpositions_conjugate_in_a4() {
        let a4 = PermGroup::alternating(4);
        let a = cyc(4, &[&[0, 1], &[2, 3]]);
        let b = cyc(4, &[&[0, 2], &[1, 3]]);
        let g = a4.is_conjugate(&a, &b).unwrap().expect("conjugate");
        assert!(a4.contains(&g));
        assert_eq!(a.conjugate_by(&g), b);
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn three_cycles_split_in_a4() {
        let a4 = PermGroup::alternating(4);
        let a = cyc(4, &[&[0, 1, 2]]);
        let b = cyc(4, &[&[0, 2, 1]]);
        assert_eq!(a4.is_conjugate(&a, &b).unwrap(), None);
        assert!(PermGroup::symmetric(4).is_conjugate(&a, &b).unwrap().is_some());
    }

    #[test]
    fn non_members_are_rejected() {
        let a4 = PermGroup::alternating(4);
        let t = cyc(4, &[&[0, 1]]);
        assert!(a4.is_conjugate(&t, &t).is_err());
    }

    #[test]
    fn class_index_agrees_with_and_without_table() {
        let s5 = PermGroup::symmetric(5);
        let els = s5.elements(1000).unwrap();
        let mut with = ClassIndex::new(&s5, 1000).unwrap();
        let mut without = ClassIndex::without_table(&s5);
        let mut pairs = HashMap::new();
        for g in &els {
            let a = with.class_of(g);
            let b = without.class_of(g);
            assert_eq!(*pairs.entry(a).or_insert(b), b);
        }
        assert_eq!(pairs.len(), 7);
    }
}
