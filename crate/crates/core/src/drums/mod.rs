//! Unfolding involution systems into planar drums with exact coordinates.
//!
//! Side `μ` of a triangle is the side opposite vertex `μ`. Tile 0 is the base
//! tile; every other tile is the mirror image of its tree parent across the
//! shared side, with vertex labels carried along by the reflection.

mod export;
mod gww;
mod field;

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use export::{domain_from_json, domain_to_json, export_svg, DomainFile};
pub use field::{ExactField, Sqrt3};
pub use gww::{gww_pair, realize_pair, DrumPair};

use crate::error::{Error, Result};
use crate::transplant::InvolutionSystem;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<F> {
    pub x: F,
    pub y: F,
}

impl<F: ExactField> Point<F> {
    pub fn new(x: F, y: F) -> Self {
        Point { x, y }
    }

    fn sub(&self, o: &Self) -> Self {
        Point::new(self.x.sub(&o.x), self.y.sub(&o.y))
    }

    fn dot(&self, o: &Self) -> F {
        self.x.mul(&o.x).add(&self.y.mul(&o.y))
    }

    fn cross(&self, o: &Self) -> F {
        self.x.mul(&o.y).sub(&self.y.mul(&o.x))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.approx(), self.y.approx())
    }

    /// Mirror image across the line through `p` and `q`.
    pub fn reflect(&self, p: &Self, q: &Self) -> Self {
        let d = q.sub(p);
        let v = self.sub(p);
        let t = v.dot(&d).div(&d.dot(&d));
        let two = F::from_rational(BigRational::from_integer(2.into()));
        // foot = p + t·d; image = 2·foot − self
        let fx = p.x.add(&t.mul(&d.x));
        let fy = p.y.add(&t.mul(&d.y));
        Point::new(two.mul(&fx).sub(&self.x), two.mul(&fy).sub(&self.y))
    }
}

/// Twice the signed area of `(a, b, c)`; positive when counterclockwise.
pub fn orient<F: ExactField>(a: &Point<F>, b: &Point<F>, c: &Point<F>) -> F {
    b.sub(a).cross(&c.sub(a))
}

/// Base triangle with side `μ` opposite vertex `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTile<F> {
    pub vertices: [Point<F>; 3],
}

impl<F: ExactField> BaseTile<F> {
    pub fn new(vertices: [Point<F>; 3]) -> Result<Self> {
        if orient(&vertices[0], &vertices[1], &vertices[2]).vanishes() {
            return Err(Error::Geometry("degenerate base triangle".into()));
        }
        Ok(BaseTile { vertices })
    }

    /// Exact area.
    pub fn area(&self) -> F {
        let v = &self.vertices;
        let a = orient(&v[0], &v[1], &v[2]);
        let half = F::from_rational(BigRational::new(1.into(), 2.into()));
        let a = if a.sign() == Ordering::Less { F::zero_value().sub(&a) } else { a };
        a.mul(&half)
    }
}

impl BaseTile<BigRational> {
    /// Right isosceles triangle with legs 1: right angle at vertex 0, so
    /// side 0 is the hypotenuse.
    pub fn half_square() -> Self {
        let p = |x: i64, y: i64| Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()));
        BaseTile {
            vertices: [p(0, 0), p(1, 0), p(0, 1)],
        }
    }
}

impl BaseTile<Sqrt3> {
    /// Unit equilateral triangle.
    pub fn equilateral() -> Self {
        let r = |n: i64, d: i64| Sqrt3::from_rational(field::q(n, d));
        BaseTile {
            vertices: [
                Point::new(r(0, 1), r(0, 1)),
                Point::new(r(1, 1), r(0, 1)),
                Point::new(r(1, 2), Sqrt3::new(field::q(0, 1), field::q(1, 2))),
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedTile<F> {
    pub vertices: [Point<F>; 3],
    /// `+1` if the tile has the base tile's orientation.
    pub orientation: i8,
    /// `(parent tile, side)` whose reflection produced this tile.
    pub parent: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct TiledDomain<F> {
    pub tiles: Vec<PlacedTile<F>>,
    /// Tree edges `(i, j, μ)`.
    pub adjacency: Vec<(usize, usize, usize)>,
    /// `(tile, side)` pairs on the boundary, in tile then side order.
    pub boundary_sides: Vec<(usize, usize)>,
    pub overlap: bool,
}

fn side_endpoints(mu: usize) -> (usize, usize) {
    ((mu + 1) % 3, (mu + 2) % 3)
}

/// Places the tiles of a tree system breadth-first from tile 0.
pub fn unfold<F: ExactField>(sys: &InvolutionSystem, base: &BaseTile<F>) -> Result<TiledDomain<F>> {
    if sys.sides() != 3 {
        return Err(Error::Geometry(format!(
            "triangular tiles need 3 sides, system has {}",
            sys.sides()
        )));
    }
    if !sys.is_tree() {
        return Err(Error::NotATree);
    }
    let n = sys.n_tiles();
    let mut tiles: Vec<Option<PlacedTile<F>>> = vec![None; n];
    tiles[0] = Some(PlacedTile {
        vertices: base.vertices.clone(),
        orientation: 1,
        parent: None,
    });
    let mut queue = VecDeque::from([0usize]);
    let mut adjacency = Vec::new();
    while let Some(i) = queue.pop_front() {
        let tile = tiles[i].clone().expect("queued tiles are placed");
        for mu in 0..3 {
            let j = sys.involution(mu).apply(i);
            if j == i || tiles[j].is_some() {
                continue;
            }
            let (a, b) = side_endpoints(mu);
            let (p, q) = (&tile.vertices[a], &tile.vertices[b]);
            let vertices = [0, 1, 2].map(|v| tile.vertices[v].reflect(p, q));
            tiles[j] = Some(PlacedTile {
                vertices,
                orientation: -tile.orientation,
                parent: Some((i, mu)),
            });
            adjacency.push((i.min(j), i.max(j), mu));
            queue.push_back(j);
        }
    }
    let tiles: Vec<PlacedTile<F>> = tiles.into_iter().map(|t| t.expect("tree is connected")).collect();
    let mut boundary_sides = Vec::new();
    for (i, _) in tiles.iter().enumerate() {
        for mu in 0..3 {
            if sys.involution(mu).fixes(i) {
                boundary_sides.push((i, mu));
            }
        }
    }
    adjacency.sort_unstable();
    let overlap = (0..n).any(|i| (i + 1..n).any(|j| interiors_meet(&tiles[i].vertices, &tiles[j].vertices)));
    Ok(TiledDomain {
        tiles,
        adjacency,
        boundary_sides,
        overlap,
    })
}

/// Open interiors of two triangles intersect: no side line of either
/// triangle has the other on its closed outer half-plane.
pub fn interiors_meet<F: ExactField>(s: &[Point<F>; 3], t: &[Point<F>; 3]) -> bool {
    let separates = |a: &[Point<F>; 3], b: &[Point<F>; 3]| {
        (0..3).any(|e| {
            let (p, q, r) = (&a[e], &a[(e + 1) % 3], &a[(e + 2) % 3]);
            let inner = orient(p, q, r).sign();
            b.iter().all(|v| {
                let s = orient(p, q, v).sign();
                s == Ordering::Equal || s != inner
            })
        })
    };
    !(separates(s, t) || separates(t, s))
}

impl<F: ExactField> TiledDomain<F> {
    pub fn n_tiles(&self) -> usize {
        self.tiles.len()
    }

    /// Sum of tile areas.
    pub fn tile_area(&self) -> F {
        self.tiles.iter().fold(F::zero_value(), |acc, t| {
            let a = orient(&t.vertices[0], &t.vertices[1], &t.vertices[2]);
            let a = if a.sign() == Ordering::Less { F::zero_value().sub(&a) } else { a };
            acc.add(&a.mul(&F::from_rational(BigRational::new(1.into(), 2.into()))))
        })
    }

    /// Boundary edges oriented with the domain on their left.
    fn boundary_edges(&self) -> Vec<(Point<F>, Point<F>)> {
        self.boundary_sides
            .iter()
            .map(|&(i, mu)| {
                let t = &self.tiles[i];
                let (a, b) = side_endpoints(mu);
                let ccw = orient(&t.vertices[0], &t.vertices[1], &t.vertices[2]).sign() == Ordering::Greater;
                let (p, q) = (t.vertices[a].clone(), t.vertices[b].clone());
                if ccw {
                    (p, q)
                } else {
                    (q, p)
                }
            })
            .collect()
    }
}

/// Closed counterclockwise polygon; collinear intermediate vertices removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon<F> {
    pub vertices: Vec<Point<F>>,
}

impl<F: ExactField> Polygon<F> {
    pub fn new(vertices: Vec<Point<F>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Geometry("polygon needs at least 3 vertices".into()));
        }
        Ok(Polygon { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (&Point<F>, &Point<F>)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Signed area (shoelace).
    pub fn area(&self) -> F {
        let twice = self.edges().fold(F::zero_value(), |acc, (a, b)| acc.add(&a.cross(b)));
        twice.mul(&F::from_rational(BigRational::new(1.into(), 2.into())))
    }

    /// Exact perimeter as a sum of surds. Fails if some squared edge length
    /// is irrational.
    pub fn perimeter(&self) -> Result<Surd> {
        let mut s = Surd::default();
        for (a, b) in self.edges() {
            let d = b.sub(a);
            let l2 = d.dot(&d).as_rational().ok_or_else(|| {
                Error::Geometry("edge with irrational squared length".into())
            })?;
            s.add_sqrt(&l2)?;
        }
        Ok(s)
    }

    /// Congruent by a rigid motion, reflections included.
    pub fn congruent(&self, other: &Polygon<F>) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let target = signature(&other.vertices);
        let mirrored: Vec<Point<F>> = self
            .vertices
            .iter()
            .rev()
            .map(|p| Point::new(F::zero_value().sub(&p.x), p.y.clone()))
            .collect();
        [signature(&self.vertices), signature(&mirrored)]
            .iter()
            .any(|sig| (0..sig.len()).any(|s| sig[s..].iter().chain(&sig[..s]).eq(target.iter())))
    }
}

/// Per vertex: squared length of the outgoing edge and the dot and cross
/// products with the next edge. Determines a polygon up to rotation and
/// translation.
fn signature<F: ExactField>(v: &[Point<F>]) -> Vec<(F, F, F)> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let e = v[(i + 1) % n].sub(&v[i]);
            let f = v[(i + 2) % n].sub(&v[(i + 1) % n]);
            (e.dot(&e), e.dot(&f), e.cross(&f))
        })
        .collect()
}

/// The outer boundary of a non-overlapping domain.
pub fn boundary_polygon<F: ExactField>(d: &TiledDomain<F>) -> Result<Polygon<F>> {
    if d.overlap {
        return Err(Error::Geometry("tiles overlap".into()));
    }
    let edges = d.boundary_edges();
    let mut next: BTreeMap<Point<F>, Point<F>> = BTreeMap::new();
    for (p, q) in &edges {
        if next.insert(p.clone(), q.clone()).is_some() {
            return Err(Error::Geometry("non-manifold boundary vertex".into()));
        }
    }
    let start = edges[0].0.clone();
    let mut walk = vec![start.clone()];
    let mut cur = next[&start].clone();
    while cur != start {
        if walk.len() > edges.len() {
            return Err(Error::Geometry("boundary does not close".into()));
        }
        walk.push(cur.clone());
        cur = next
            .get(&cur)
            .cloned()
            .ok_or_else(|| Error::Geometry("open boundary chain".into()))?;
    }
    if walk.len() != edges.len() {
        return Err(Error::Geometry("boundary has several components".into()));
    }
    let n = walk.len();
    let kept: Vec<Point<F>> = (0..n)
        .filter(|&i| !orient(&walk[(i + n - 1) % n], &walk[i], &walk[(i + 1) % n]).vanishes())
        .map(|i| walk[i].clone())
        .collect();
    Polygon::new(kept)
}

/// `Σ c_s·√s` over squarefree `s`, with rational `c_s`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Surd {
    pub terms: BTreeMap<u64, BigRational>,
}

fn squarefree_split(mut n: u64) -> (u64, u64) {
    // n = m²·s with s squarefree
    let (mut m, mut s) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        m *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    (m, s * n)
}

impl Surd {
    /// Adds `√r` for a non-negative rational `r`.
    pub fn add_sqrt(&mut self, r: &BigRational) -> Result<()> {
        if r.is_negative() {
            return Err(Error::Geometry("square root of a negative number".into()));
        }
        if r.is_zero() {
            return Ok(());
        }
        // √(p/q) = √(p·q)/q
        let pq: BigInt = r.numer() * r.denom();
        let pq = pq
            .to_u64()
            .ok_or_else(|| Error::Geometry("squared length too large for exact perimeter".into()))?;
        let (m, s) = squarefree_split(pq);
        let c = BigRational::new(BigInt::from(m), r.denom().clone());
        let e = self.terms.entry(s).or_insert_with(BigRational::zero);
        *e += c;
        Ok(())
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(s, c)| ToPrimitive::to_f64(c).unwrap_or(f64::NAN) * (*s as f64).sqrt())
            .sum()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let c = if c.denom().is_one() { c.numer().to_string() } else { c.to_string() };
                if *s == 1 {
                    c
                } else {
                    format!("{c}√{s}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
