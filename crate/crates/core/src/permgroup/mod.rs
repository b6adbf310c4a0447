//! Permutation groups: products, stabilizer chains, orbits, conjugacy,
//! cosets, cores and maximality.

mod chain;
mod conjugacy;
mod coset;
mod group;
mod notation;
mod perm;

pub use chain::StabChain;
pub use conjugacy::{ClassIndex, CLASS_TABLE_LIMIT};
pub use coset::{CosetAction, CosetTable};
pub use group::{PermGroup, DEFAULT_ENUMERATION_BOUND, DEFAULT_INDEX_BOUND};
pub use notation::{format_generator_list, parse_cycles, parse_generator_list};
pub use perm::Permutation;

/// Evaluates a map defined by generator images. Built from the group generated
/// by the pairs `(g, φ(g))`; the map is a well-defined homomorphism exactly
/// when that group has the same order as the source.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    src_degree: usize,
    dst_degree: usize,
    chain: StabChain,
    source_order: u128,
}

impl Homomorphism {
    /// Returns `None` when the generator images do not define a homomorphism.
    pub fn new(source: &PermGroup, images: &[Permutation], dst_degree: usize) -> Option<Self> {
        assert_eq!(source.generators().len(), images.len());
        let n = source.degree();
        let gens: Vec<Permutation> = source
            .generators()
            .iter()
            .zip(images)
            .map(|(g, h)| g.direct_sum(h))
            .collect();
        let prefix: Vec<usize> = (0..n).collect();
        let chain = StabChain::build(n + dst_degree, &gens, &prefix);
        if chain.order() != source.order() {
            return None;
        }
        Some(Homomorphism {
            src_degree: n,
            dst_degree,
            chain,
            source_order: source.order(),
        })
    }

    /// Image of a member of the source group.
    pub fn apply(&self, x: &Permutation) -> Permutation {
        let pair = x.direct_sum(&Permutation::identity(self.dst_degree));
        let (residue, _) = self.chain.sift_from(&pair, 0);
        debug_assert!(residue.restrict(0, self.src_degree).is_identity());
        residue.restrict(self.src_degree, self.dst_degree).inverse()
    }

    pub fn source_order(&self) -> u128 {
        self.source_order
    }
}
