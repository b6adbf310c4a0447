//! PAIR: an automorphism exchanging `H` and `K` whose square is inner on `H`.

use serde::Serialize;

use super::Triple;
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::permgroup::{Homomorphism, PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatus {
    Confirmed,
    WeakEvidence,
    Failed,
}

#[derive(Clone, Debug)]
pub struct PairOutcome {
    pub status: PairStatus,
    pub detail: String,
    /// For a confirmed pair, the element `c ∈ H` with `σ²(h) = c⁻¹hc`.
    pub inner_by: Option<Permutation>,
}

/// Checks an automorphism candidate given by the images of `G`'s generators.
/// Without a candidate, only the order test is available.
pub fn check_pair(t: &Triple, candidate: Option<&[Permutation]>, bounds: &Bounds) -> Result<PairOutcome> {
    let (h, k) = (t.h(), t.k());
    if h.order() != k.order() {
        return Ok(PairOutcome {
            status: PairStatus::Failed,
            detail: format!("|H| = {} but |K| = {}", h.order(), k.order()),
            inner_by: None,
        });
    }
    let Some(images) = candidate else {
        return Ok(PairOutcome {
            status: PairStatus::WeakEvidence,
            detail: "|H| = |K|; no automorphism supplied".into(),
            inner_by: None,
        });
    };
    let sigma = Automorphism::new(t.g(), images)?;

    let h_img: Vec<Permutation> = h.generators().iter().map(|x| sigma.apply(x)).collect();
    let maps_h_to_k = h_img.iter().all(|x| k.contains(x))
        && PermGroup::new(t.degree(), h_img)?.order() == k.order();
    if !maps_h_to_k {
        return Ok(PairOutcome {
            status: PairStatus::WeakEvidence,
            detail: "supplied automorphism does not map H onto K; |H| = |K|".into(),
            inner_by: None,
        });
    }
    // σ² restricted to H must be conjugation by an element of H.
    let targets: Vec<Permutation> = h
        .generators()
        .iter()
        .map(|x| sigma.apply(&sigma.apply(x)))
        .collect();
    let inner = h
        .elements(bounds.enumeration)?
        .into_iter()
        .find(|c| h.generators().iter().zip(&targets).all(|(x, y)| x.conjugate_by(c) == *y));
    Ok(match inner {
        Some(c) => PairOutcome {
            status: PairStatus::Confirmed,
            detail: format!("σ(H) = K and σ² acts on H as conjugation by {c}"),
            inner_by: Some(c),
        },
        None => PairOutcome {
            status: PairStatus::WeakEvidence,
            detail: "σ(H) = K but σ² is not inner on H".into(),
            inner_by: None,
        },
    })
}

/// An automorphism of a permutation group given by generator images, checked
/// exactly: the images lie in the group, define a homomorphism, and generate
/// the whole group.
pub struct Automorphism {
    map: Homomorphism,
}

impl Automorphism {
    pub fn new(g: &PermGroup, images: &[Permutation]) -> Result<Self> {
        if images.len() != g.generators().len() {
            return Err(Error::NotAutomorphism(format!(
                "{} images for {} generators",
                images.len(),
                g.generators().len()
            )));
        }
        for x in images {
            if x.degree() != g.degree() || !g.contains(x) {
                return Err(Error::NotAutomorphism(format!("image {x} is not in G")));
            }
        }
        let map = Homomorphism::new(g, images, g.degree())
            .ok_or_else(|| Error::NotAutomorphism("generator images violate a relation".into()))?;
        if PermGroup::new(g.degree(), images.to_vec())?.order() != g.order() {
            return Err(Error::NotAutomorphism("map is not surjective".into()));
        }
        Ok(Automorphism { map })
    }

    pub fn apply(&self, x: &Permutation) -> Permutation {
        self.map.apply(x)
    }
}
