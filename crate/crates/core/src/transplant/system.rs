//! Involution systems: `r` involutions on `Λ` tiles. A fixed point of color
//! `μ` at tile `i` means side `μ` of tile `i` lies on the boundary.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvolutionSystem {
    n_tiles: usize,
    involutions: Vec<Permutation>,
}

impl InvolutionSystem {
    /// Validates that every generator is an involution (or the identity) on
    /// `n_tiles` points and that together they act transitively.
    pub fn new(n_tiles: usize, involutions: Vec<Permutation>) -> Result<Self> {
        if n_tiles == 0 {
            return Err(Error::InvalidSystem("no tiles".into()));
        }
        if involutions.is_empty() {
            return Err(Error::InvalidSystem("no sides".into()));
        }
        for (mu, m) in involutions.iter().enumerate() {
            if m.degree() != n_tiles {
                return Err(Error::DegreeMismatch {
                    left: m.degree(),
                    right: n_tiles,
                });
            }
            if !(m.is_identity() || m.is_involution()) {
                return Err(Error::InvalidSystem(format!(
                    "side {} is not an involution: {m}",
                    mu + 1
                )));
            }
        }
        let sys = InvolutionSystem {
            n_tiles,
            involutions,
        };
        if !sys.is_connected() {
            return Err(Error::InvalidSystem("gluing graph is not connected".into()));
        }
        Ok(sys)
    }

    pub fn n_tiles(&self) -> usize {
        self.n_tiles
    }

    pub fn sides(&self) -> usize {
        self.involutions.len()
    }

    pub fn involutions(&self) -> &[Permutation] {
        &self.involutions
    }

    pub fn involution(&self, mu: usize) -> &Permutation {
        &self.involutions[mu]
    }

    /// The 0/1 matrix of side `mu`: entry `(i, j)` is 1 iff side `mu` glues
    /// tile `i` to tile `j`, with diagonal ones marking boundary sides.
    pub fn matrix(&self, mu: usize) -> Vec<Vec<u8>> {
        let m = &self.involutions[mu];
        (0..self.n_tiles)
            .map(|i| (0..self.n_tiles).map(|j| u8::from(m.apply(j) == i)).collect())
            .collect()
    }

    pub fn trace(&self, mu: usize) -> usize {
        self.involutions[mu].fixed_point_count()
    }

    pub fn traces(&self) -> Vec<usize> {
        (0..self.sides()).map(|mu| self.trace(mu)).collect()
    }

    /// Gluing edges `(i, j, μ)` with `i < j`, ordered by color then tile.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (mu, m) in self.involutions.iter().enumerate() {
            for i in 0..self.n_tiles {
                let j = m.apply(i);
                if i < j {
                    out.push((i, j, mu));
                }
            }
        }
        out
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n_tiles];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for m in &self.involutions {
                let w = m.apply(v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n_tiles
    }

    /// Connected and acyclic, counting parallel edges of different colors as
    /// a cycle.
    pub fn is_tree(&self) -> bool {
        let edges = self.edges();
        if edges.len() + 1 != self.n_tiles {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n_tiles).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, j, _) in edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// The fixed-point identity `(r − 2)·Λ = Σ trace − 2`.
    pub fn fixeq_check(&self) -> bool {
        let lhs = (self.sides() as i64 - 2) * self.n_tiles as i64;
        let rhs = self.traces().iter().sum::<usize>() as i64 - 2;
        lhs == rhs
    }

    /// The same gluing with tiles renamed by `p` (tile `i` becomes `p(i)`).
    pub fn relabel(&self, p: &Permutation) -> InvolutionSystem {
        let inv = p.inverse();
        InvolutionSystem {
            n_tiles: self.n_tiles,
            involutions: self
                .involutions
                .iter()
                .map(|m| inv.then(m).then(p))
                .collect(),
        }
    }

    /// Canonical relabeling key: breadth-first numbering from each start tile,
    /// exploring colors in order, minimized over the start tile. Two systems
    /// share a key iff they differ by a tile relabeling.
    pub fn canonical_key(&self) -> Vec<u32> {
        (0..self.n_tiles)
            .map(|s| self.bfs_key(s))
            .min()
            .expect("at least one tile")
    }

    fn bfs_key(&self, start: usize) -> Vec<u32> {
        let n = self.n_tiles;
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[start] = 0;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for m in &self.involutions {
                let w = m.apply(v);
                if label[w] == u32::MAX {
                    label[w] = order.len() as u32;
                    order.push(w);
                }
            }
        }
        let mut key = Vec::with_capacity(n * self.sides());
        for m in &self.involutions {
            for &v in &order {
                key.push(label[m.apply(v)]);
            }
        }
        key
    }

    /// Text form: `tiles:`, `sides:`, then one line per side listing the
    /// swapped pairs and the boundary tiles, all 1-based.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "tiles: {}", self.n_tiles);
        let _ = writeln!(s, "sides: {}", self.sides());
        for (mu, m) in self.involutions.iter().enumerate() {
            let _ = write!(s, "side {}:", mu + 1);
            for i in 0..self.n_tiles {
                let j = m.apply(i);
                if i < j {
                    let _ = write!(s, " ({} {})", i + 1, j + 1);
                }
            }
            let _ = write!(s, " ; boundary:");
            for i in m.fixed_points() {
                let _ = write!(s, " {}", i + 1);
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = |line: Option<&str>, key: &str| -> Result<usize> {
            let line = line.ok_or_else(|| Error::Parse(format!("missing `{key}:` line")))?;
            let rest = line
                .strip_prefix(key)
                .and_then(|r| r.trim_start().strip_prefix(':'))
                .ok_or_else(|| Error::Parse(format!("expected `{key}:`, found {line:?}")))?;
            rest.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad count in {line:?}")))
        };
        let n = header(lines.next(), "tiles")?;
        let r = header(lines.next(), "sides")?;
        let mut invs = Vec::with_capacity(r);
        for mu in 0..r {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing line for side {}", mu + 1)))?;
            let prefix = format!("side {}:", mu + 1);
            let body = line
                .strip_prefix(&prefix)
                .ok_or_else(|| Error::Parse(format!("expected `{prefix}`, found {line:?}")))?;
            let (pairs, boundary) = body
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("missing `; boundary:` in {line:?}")))?;
            let boundary = boundary
                .trim()
                .strip_prefix("boundary:")
                .ok_or_else(|| Error::Parse(format!("missing `boundary:` in {line:?}")))?;
            let mut images: Vec<Option<usize>> = vec![None; n];
            let point = |tok: &str| -> Result<usize> {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad tile {tok:?} in {line:?}")))?;
                if v == 0 || v > n {
                    return Err(Error::Parse(format!("tile {v} out of range in {line:?}")));
                }
                Ok(v - 1)
            };
            let set = |i: usize, j: usize, images: &mut Vec<Option<usize>>| -> Result<()> {
                if images[i].is_some() {
                    return Err(Error::Parse(format!("tile {} listed twice in {line:?}", i + 1)));
                }
                images[i] = Some(j);
                Ok(())
            };
            for chunk in pairs.split('(').skip(1) {
                let inner = chunk
                    .split_once(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced pair in {line:?}")))?
                    .0;
                let toks: Vec<&str> = inner.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(Error::Parse(format!("pair must have two tiles in {line:?}")));
                }
                let (i, j) = (point(toks[0])?, point(toks[1])?);
                if i == j {
                    return Err(Error::Parse(format!("degenerate pair in {line:?}")));
                }
                set(i, j, &mut images)?;
                set(j, i, &mut images)?;
            }
            for tok in boundary.split_whitespace() {
                let i = point(tok)?;
                set(i, i, &mut images)?;
            }
            let images: Option<Vec<usize>> = images.into_iter().collect();
            let images = images
                .ok_or_else(|| Error::Parse(format!("side {} does not cover every tile", mu + 1)))?;
            invs.push(Permutation::from_images(images)?);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing line {extra:?}")));
        }
        InvolutionSystem::new(n, invs)
    }

    /// The group generated by the side involutions.
    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.n_tiles, self.involutions.clone()).expect("degrees checked")
    }
}

/// The system of tiles `0..Λ` under the given involutions, as they act on
/// `Λ` points (usually the image of a coset action).
pub fn schreier_system(group: &PermGroup, gens: &[Permutation]) -> Result<InvolutionSystem> {
    if !group.is_transitive() {
        return Err(Error::InvalidSystem("group is not transitive".into()));
    }
    for g in gens {
        group.require_member(g)?;
    }
    InvolutionSystem::new(group.degree(), gens.to_vec())
}
