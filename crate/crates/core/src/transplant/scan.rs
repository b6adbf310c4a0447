//! Bounded census of transplantable, non-congruent system pairs coming from
//! one triple.

use std::collections::BTreeMap;

use super::intertwine::{find_transplantation, TransplantationSolution};
use super::system::InvolutionSystem;
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};
use crate::triples::Triple;

/// Largest tile count the census accepts.
pub const SCAN_TILE_LIMIT: usize = 13;

#[derive(Clone, Debug)]
pub struct ScanPair {
    /// The involutions of `G`, in side order.
    pub elements: Vec<Permutation>,
    /// Gluing on the cosets of `H`.
    pub a: InvolutionSystem,
    /// Gluing on the cosets of `K`.
    pub b: InvolutionSystem,
    pub solution: TransplantationSolution,
}

impl ScanPair {
    pub fn key(&self) -> (Vec<u32>, Vec<u32>) {
        (self.a.canonical_key(), self.b.canonical_key())
    }
}

/// Every ordered choice of `r` distinct involutions of `G` that generates
/// `G`, acts as a tree on both coset spaces, and yields an invertible
/// transplantation with no tile-wise congruence. Pairs are deduplicated up to
/// tile relabeling and returned sorted by canonical key.
pub fn okada_shudo_scan(t: &Triple, n_max: usize, r: usize, bounds: &Bounds) -> Result<Vec<ScanPair>> {
    if n_max > SCAN_TILE_LIMIT {
        return Err(Error::bound(format!("tile bound {n_max}"), SCAN_TILE_LIMIT as u128));
    }
    if t.index_h() != t.index_k() || t.index_h() > n_max as u128 {
        return Err(Error::bound(format!("indices {} and {}", t.index_h(), t.index_k()), n_max as u128));
    }
    let g = t.g();
    let act_h = g.coset_action(t.h(), bounds.index)?;
    let act_k = g.coset_action(t.k(), bounds.index)?;
    let invs: Vec<Permutation> = g
        .elements(bounds.enumeration)?
        .into_iter()
        .filter(Permutation::is_involution)
        .collect();

    let mut found: BTreeMap<(Vec<u32>, Vec<u32>), ScanPair> = BTreeMap::new();
    let mut visited: u64 = 0;
    let mut subset: Vec<usize> = (0..r).collect();
    if invs.len() < r {
        return Ok(Vec::new());
    }
    loop {
        visited += 1;
        if visited > bounds.involution_sets {
            return Err(Error::bound("involution subsets examined", bounds.involution_sets as u128));
        }
        let chosen: Vec<Permutation> = subset.iter().map(|&i| invs[i].clone()).collect();
        if PermGroup::new(g.degree(), chosen.clone())?.order() == g.order() {
            for order in permutations(r) {
                let els: Vec<Permutation> = order.iter().map(|&i| chosen[i].clone()).collect();
                let a_gens: Vec<Permutation> = els.iter().map(|x| act_h.image_of(x)).collect();
                let b_gens: Vec<Permutation> = els.iter().map(|x| act_k.image_of(x)).collect();
                let (Ok(a), Ok(b)) = (
                    InvolutionSystem::new(act_h.degree(), a_gens),
                    InvolutionSystem::new(act_k.degree(), b_gens),
                ) else {
                    continue;
                };
                if !a.is_tree() || !b.is_tree() {
                    continue;
                }
                let key = (a.canonical_key(), b.canonical_key());
                if found.contains_key(&key) {
                    continue;
                }
                let Some(solution) = find_transplantation(&a, &b)? else {
                    continue;
                };
                if solution.invertible() && solution.permutation_solution.is_none() {
                    found.insert(
                        key,
                        ScanPair {
                            elements: els,
                            a,
                            b,
                            solution,
                        },
                    );
                }
            }
        }
        if !next_subset(&mut subset, invs.len()) {
            break;
        }
    }
    Ok(found.into_values().collect())
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let r = s.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if s[i] < n - r + i {
            s[i] += 1;
            for j in i + 1..r {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All orderings of `0..r`, lexicographically.
fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..r.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..r).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_and_orderings_are_complete() {
        let mut s = vec![0, 1];
        let mut count = 1;
        while next_subset(&mut s, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }

    #[test]
    fn index_two_has_no_pairs() {
        let s3 = PermGroup::symmetric(3);
        let a3 = PermGroup::alternating(3);
        let t = Triple::new("S3/A3", s3, a3.clone(), a3).unwrap();
        assert!(okada_shudo_scan(&t, 7, 3, &Bounds::default()).unwrap().is_empty());
    }

    #[test]
    fn cyclic_group_has_no_pairs() {
        let c = PermGroup::cyclic(5);
        let t = Triple::new("C5", c.clone(), PermGroup::trivial(5), PermGroup::trivial(5)).unwrap();
        assert!(okada_shudo_scan(&t, 7, 3, &Bounds::default()).unwrap().is_empty());
    }
}
