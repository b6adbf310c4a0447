//! INV: `r` involutions of the coset action that glue `Λ = [G:H]` tiles into
//! a connected system satisfying `(r − 2)·Λ = Σ Fix − 2`.

use std::collections::BTreeMap;

use super::Triple;
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::permgroup::{CosetAction, Permutation};
use crate::transplant::InvolutionSystem;

#[derive(Clone, Debug)]
pub struct InvWitness {
    /// Elements of `G` whose images on `G/H` are the chosen involutions.
    pub elements: Vec<Permutation>,
    /// The gluing of the `Λ` tiles on the cosets of `H`.
    pub system: InvolutionSystem,
    pub fixed_counts: Vec<usize>,
}

/// Involutions of the image of `G` on `G/H`, each with the least element of
/// `G` mapping to it. Ordered by descending fixed-point count, then image.
pub(crate) fn image_involutions(
    t: &Triple,
    action: &CosetAction,
    bounds: &Bounds,
) -> Result<Vec<(Permutation, Permutation)>> {
    let mut least: BTreeMap<Permutation, Permutation> = BTreeMap::new();
    for g in t.g().elements(bounds.enumeration)? {
        let img = action.image_of(&g);
        if img.is_involution() {
            // elements come in increasing order, so the first preimage is least
            least.entry(img).or_insert(g);
        }
    }
    let mut out: Vec<(Permutation, Permutation)> = least.into_iter().collect();
    out.sort_by(|(a, _), (b, _)| {
        b.fixed_point_count()
            .cmp(&a.fixed_point_count())
            .then_with(|| a.cmp(b))
    });
    Ok(out)
}

/// Searches `r`-subsets of the image involutions, lexicographically in the
/// order of [`image_involutions`], for a connected system satisfying the
/// fixed-point identity (and forming a tree if `tree_required`). `Ok(None)`
/// means the search finished without a witness; running past
/// `bounds.involution_sets` visited subsets is an error.
pub fn check_inv(t: &Triple, r: usize, tree_required: bool, bounds: &Bounds) -> Result<Option<InvWitness>> {
    if r < 3 {
        return Err(Error::InvalidSystem(format!("need at least 3 sides, got {r}")));
    }
    let action = t.g().coset_action(t.h(), bounds.index)?;
    let lambda = action.degree();
    let invs = image_involutions(t, &action, bounds)?;
    let fix: Vec<i64> = invs.iter().map(|(p, _)| p.fixed_point_count() as i64).collect();
    let target = (r as i64 - 2) * lambda as i64 + 2;

    let mut search = SubsetSearch {
        fix: &fix,
        r,
        target,
        visited: 0,
        limit: bounds.involution_sets,
        chosen: Vec::with_capacity(r),
    };
    let mut accept = |idx: &[usize]| -> Option<InvWitness> {
        let gens: Vec<Permutation> = idx.iter().map(|&i| invs[i].0.clone()).collect();
        let sys = InvolutionSystem::new(lambda, gens).ok()?;
        if tree_required && !sys.is_tree() {
            return None;
        }
        Some(InvWitness {
            elements: idx.iter().map(|&i| invs[i].1.clone()).collect(),
            fixed_counts: sys.traces(),
            system: sys,
        })
    };
    search.run(0, 0, &mut accept)
}

struct SubsetSearch<'a> {
    fix: &'a [i64],
    r: usize,
    target: i64,
    visited: u64,
    limit: u64,
    chosen: Vec<usize>,
}

impl SubsetSearch<'_> {
    fn run<F>(&mut self, start: usize, sum: i64, accept: &mut F) -> Result<Option<InvWitness>>
    where
        F: FnMut(&[usize]) -> Option<InvWitness>,
    {
        let left = self.r - self.chosen.len();
        if left == 0 {
            self.visited += 1;
            if self.visited > self.limit {
                return Err(Error::bound("involution subsets examined", self.limit as u128));
            }
            return Ok(if sum == self.target { accept(&self.chosen) } else { None });
        }
        let n = self.fix.len();
        if n < start + left {
            return Ok(None);
        }
        // Values are sorted descending: the largest completion after picking
        // `i` takes the next entries, the smallest takes the last ones.
        let min_rest: i64 = self.fix[n - (left - 1)..].iter().sum();
        for i in start..=n - left {
            let max_here: i64 = self.fix[i..i + left].iter().sum();
            if sum + max_here < self.target {
                break;
            }
            if sum + self.fix[i] + min_rest > self.target {
                continue;
            }
            self.chosen.push(i);
            let found = self.run(i + 1, sum + self.fix[i], accept)?;
            self.chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Some involution of the system fixes more than a third of the tiles.
pub fn has_involution_fixing_over_third(sys: &InvolutionSystem) -> bool {
    sys.involutions()
        .iter()
        .any(|m| 3 * m.fixed_point_count() > sys.n_tiles())
}
