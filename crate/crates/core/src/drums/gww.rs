//! The seven-tile isospectral pair from the Fano plane.

use num_rational::BigRational;

use super::{boundary_polygon, unfold, BaseTile, Polygon, TiledDomain};
use crate::catalog::psl_triple;
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::transplant::{okada_shudo_scan, ScanPair};

pub struct DrumPair {
    pub scan: ScanPair,
    pub a: TiledDomain<BigRational>,
    pub b: TiledDomain<BigRational>,
    pub boundary_a: Polygon<BigRational>,
    pub boundary_b: Polygon<BigRational>,
}

/// Unfolds both systems of a scan pair with the half-square tile; `None` if
/// either domain overlaps itself or has a non-simple boundary, or if the two
/// shapes are congruent (the tile's own mirror symmetry can make a pair with
/// no tile-wise congruence congruent as drums).
pub fn realize_pair(scan: &ScanPair) -> Result<Option<DrumPair>> {
    let tile = BaseTile::half_square();
    let a = unfold(&scan.a, &tile)?;
    let b = unfold(&scan.b, &tile)?;
    if a.overlap || b.overlap {
        return Ok(None);
    }
    let (Ok(pa), Ok(pb)) = (boundary_polygon(&a), boundary_polygon(&b)) else {
        return Ok(None);
    };
    if pa.congruent(&pb) {
        return Ok(None);
    }
    Ok(Some(DrumPair {
        scan: scan.clone(),
        a,
        b,
        boundary_a: pa,
        boundary_b: pb,
    }))
}

/// The first pair, in census order, from the `(3, 2)` triple whose
/// half-square unfoldings are non-congruent simple polygons.
pub fn gww_pair(bounds: &Bounds) -> Result<DrumPair> {
    let t = psl_triple(3, 2)?;
    for scan in okada_shudo_scan(&t, 7, 3, bounds)? {
        if let Some(p) = realize_pair(&scan)? {
            return Ok(p);
        }
    }
    Err(Error::Geometry("no scan pair unfolds to two non-congruent simple drums".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drums::field::q;

    #[test]
    fn census_candidates() {
        let t = psl_triple(3, 2).unwrap();
        let scans = okada_shudo_scan(&t, 7, 3, &Bounds::default()).unwrap();
        let tile = BaseTile::half_square();
        let mut simple = 0;
        let mut distinct = 0;
        for s in &scans {
            let a = unfold(&s.a, &tile).unwrap();
            let b = unfold(&s.b, &tile).unwrap();
            if !a.overlap && !b.overlap {
                if let (Ok(pa), Ok(pb)) = (boundary_polygon(&a), boundary_polygon(&b)) {
                    simple += 1;
                    if !pa.congruent(&pb) {
                        distinct += 1;
                    }
                }
            }
        }
        // frozen census of the (3, 2) triple at r = 3
        assert_eq!((scans.len(), simple, distinct), (14, 6, 4));
    }

    #[test]
    fn gww_domains_are_seven_half_squares() {
        let p = gww_pair(&Bounds::default()).unwrap();
        assert_eq!(p.a.n_tiles(), 7);
        assert_eq!(p.boundary_a.area(), q(7, 2));
        assert_eq!(p.boundary_b.area(), q(7, 2));
        assert_eq!(p.boundary_a.perimeter().unwrap(), p.boundary_b.perimeter().unwrap());
        assert!(!p.boundary_a.congruent(&p.boundary_b));
    }
}
