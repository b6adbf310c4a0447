//! Domain files (JSON with exact coordinates) and SVG drawings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{boundary_polygon, ExactField, PlacedTile, Point, Polygon, TiledDomain};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TileRecord {
    /// Three `[x, y]` pairs; each coordinate is `[num, den]`, or
    /// `{"a": [num, den], "b": [num, den]}` for `a + b√3`.
    pub vertices: Vec<[Value; 2]>,
    pub orientation: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DomainFile {
    pub field: String,
    pub tiles: Vec<TileRecord>,
    #[serde(default)]
    pub adjacency: Vec<(usize, usize, usize)>,
    #[serde(default)]
    pub boundary_sides: Vec<(usize, usize)>,
    #[serde(default)]
    pub overlap: bool,
    /// Boundary polygon vertices, absent for overlapping domains.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<[Value; 2]>>,
}

fn point_json<F: ExactField>(p: &Point<F>) -> [Value; 2] {
    [p.x.to_json(), p.y.to_json()]
}

fn point_from_json<F: ExactField>(v: &[Value; 2]) -> Result<Point<F>> {
    Ok(Point::new(F::from_json(&v[0])?, F::from_json(&v[1])?))
}

impl DomainFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("domain file: {e}")))
    }

    pub fn domain<F: ExactField>(&self) -> Result<TiledDomain<F>> {
        if self.field != F::NAME {
            return Err(Error::Parse(format!("domain field is {}, expected {}", self.field, F::NAME)));
        }
        let tiles = self
            .tiles
            .iter()
            .map(|t| {
                let v: Vec<Point<F>> = t.vertices.iter().map(point_from_json).collect::<Result<_>>()?;
                let vertices: [Point<F>; 3] = v
                    .try_into()
                    .map_err(|_| Error::Parse("a tile needs exactly 3 vertices".into()))?;
                Ok(PlacedTile {
                    vertices,
                    orientation: t.orientation,
                    parent: t.parent,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if tiles.is_empty() {
            return Err(Error::Parse("domain has no tiles".into()));
        }
        Ok(TiledDomain {
            tiles,
            adjacency: self.adjacency.clone(),
            boundary_sides: self.boundary_sides.clone(),
            overlap: self.overlap,
        })
    }

    pub fn boundary<F: ExactField>(&self) -> Result<Option<Polygon<F>>> {
        self.boundary
            .as_ref()
            .map(|b| Polygon::new(b.iter().map(point_from_json).collect::<Result<_>>()?))
            .transpose()
    }
}

/// JSON text for a domain, including its boundary polygon when it is a
/// simple polygon.
pub fn domain_to_json<F: ExactField>(d: &TiledDomain<F>) -> Result<String> {
    // overlapping tiles or a self-touching boundary leave this out
    let boundary = if d.overlap {
        None
    } else {
        boundary_polygon(d).ok().map(|p| p.vertices.iter().map(point_json).collect())
    };
    let file = DomainFile {
        field: F::NAME.to_string(),
        tiles: d
            .tiles
            .iter()
            .map(|t| TileRecord {
                vertices: t.vertices.iter().map(point_json).collect(),
                orientation: t.orientation,
                parent: t.parent,
            })
            .collect(),
        adjacency: d.adjacency.clone(),
        boundary_sides: d.boundary_sides.clone(),
        overlap: d.overlap,
        boundary,
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn domain_from_json<F: ExactField>(text: &str) -> Result<TiledDomain<F>> {
    DomainFile::parse(text)?.domain()
}

/// SVG drawing: one path per tile plus the boundary polygon if there is one.
pub fn export_svg<F: ExactField>(d: &TiledDomain<F>) -> String {
    let pts: Vec<(f64, f64)> = d.tiles.iter().flat_map(|t| t.vertices.iter().map(Point::to_f64)).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let scale = 100.0;
    let pad = 10.0;
    let w = (x1 - x0) * scale + 2.0 * pad;
    let h = (y1 - y0) * scale + 2.0 * pad;
    // flip y so the drawing matches the usual axes
    let map = |(x, y): (f64, f64)| ((x - x0) * scale + pad, (y1 - y) * scale + pad);
    let path = |vs: &[(f64, f64)]| {
        let mut s = String::new();
        for (i, &p) in vs.iter().enumerate() {
            let (x, y) = map(p);
            let _ = write!(s, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
        }
        s.push('Z');
        s
    };
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    for (i, t) in d.tiles.iter().enumerate() {
        let vs: Vec<(f64, f64)> = t.vertices.iter().map(Point::to_f64).collect();
        let _ = writeln!(
            out,
            r##"  <path id="tile{i}" d="{}" fill="#dde6f0" stroke="#8899aa" stroke-width="1"/>"##,
            path(&vs)
        );
    }
    if !d.overlap {
        if let Ok(poly) = boundary_polygon(d) {
            let vs: Vec<(f64, f64)> = poly.vertices.iter().map(Point::to_f64).collect();
            let _ = writeln!(
                out,
                r##"  <path id="boundary" d="{}" fill="none" stroke="#000000" stroke-width="2"/>"##,
                path(&vs)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::{unfold, BaseTile, Sqrt3};
    use super::*;
    use crate::permgroup::Permutation;
    use crate::transplant::InvolutionSystem;
    use num_rational::BigRational;

    fn strip() -> InvolutionSystem {
        let p = |c: Vec<Vec<usize>>| Permutation::from_cycles(3, &c).unwrap();
        InvolutionSystem::new(3, vec![p(vec![vec![0, 1]]), p(vec![vec![1, 2]]), p(vec![])]).unwrap()
    }

    #[test]
    fn json_round_trip_is_exact() {
        let d = unfold(&strip(), &BaseTile::half_square()).unwrap();
        let text = domain_to_json(&d).unwrap();
        let back: TiledDomain<BigRational> = domain_from_json(&text).unwrap();
        assert_eq!(back.tiles, d.tiles);
        assert_eq!(domain_to_json(&back).unwrap(), text);

        let e = unfold(&strip(), &BaseTile::equilateral()).unwrap();
        let back: TiledDomain<Sqrt3> = domain_from_json(&domain_to_json(&e).unwrap()).unwrap();
        assert_eq!(back.tiles, e.tiles);
    }

    #[test]
    fn field_mismatch_rejected() {
        let d = unfold(&strip(), &BaseTile::half_square()).unwrap();
        let text = domain_to_json(&d).unwrap();
        assert!(domain_from_json::<Sqrt3>(&text).is_err());
    }

    #[test]
    fn svg_has_a_path_per_tile_and_boundary() {
        let d = unfold(&strip(), &BaseTile::half_square()).unwrap();
        let svg = export_svg(&d);
        assert_eq!(svg.matches("<path").count(), 4);
        assert!(svg.contains(r#"id="boundary""#));
    }
}
