//! Wreath products `S ≀ T` with the multiplication
//! `(g, p)·(g′, p′) = (g·p(g′), p·p′)`, where `p(g′)_ω = g′_{p⁻¹(ω)}` and
//! products are composition of maps (right factor acts first).

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub base: Vec<Permutation>,
    pub top: Permutation,
}

/// `a ∘ b` as maps: apply `b`, then `a`.
fn after(a: &Permutation, b: &Permutation) -> Permutation {
    b.then(a)
}

impl WreathElement {
    pub fn new(base: Vec<Permutation>, top: Permutation) -> Result<Self> {
        if base.len() != top.degree() {
            return Err(Error::DegreeMismatch {
                left: base.len(),
                right: top.degree(),
            });
        }
        if let Some(d) = base.first().map(Permutation::degree) {
            if let Some(bad) = base.iter().find(|g| g.degree() != d) {
                return Err(Error::DegreeMismatch {
                    left: d,
                    right: bad.degree(),
                });
            }
        }
        Ok(WreathElement { base, top })
    }

    pub fn identity(n: usize, d: usize) -> Self {
        WreathElement {
            base: vec![Permutation::identity(d); n],
            top: Permutation::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// `p(g)`: coordinates moved by `p`, so `p(g)_ω = g_{p⁻¹(ω)}`.
    fn shift(p: &Permutation, g: &[Permutation]) -> Vec<Permutation> {
        let pinv = p.inverse();
        (0..g.len()).map(|w| g[pinv.apply(w)].clone()).collect()
    }

    pub fn mul(&self, other: &WreathElement) -> WreathElement {
        let moved = Self::shift(&self.top, &other.base);
        WreathElement {
            base: self.base.iter().zip(&moved).map(|(a, b)| after(a, b)).collect(),
            top: after(&self.top, &other.top),
        }
    }

    pub fn inverse(&self) -> WreathElement {
        let pinv = self.top.inverse();
        let ginv: Vec<Permutation> = self.base.iter().map(Permutation::inverse).collect();
        WreathElement {
            base: Self::shift(&pinv, &ginv),
            top: pinv,
        }
    }

    /// `w⁻¹·self·w`.
    pub fn conjugate_by(&self, w: &WreathElement) -> WreathElement {
        w.inverse().mul(self).mul(w)
    }

    /// The imprimitive action on `n·d` points: `(ω, x) ↦ (p(ω), g_{p(ω)}(x))`,
    /// point `(ω, x)` being `ω·d + x`. As maps,
    /// `realize(u·v) = realize(u) ∘ realize(v)`.
    pub fn realize(&self) -> Permutation {
        let n = self.n();
        let d = self.base.first().map_or(0, Permutation::degree);
        let mut images = Vec::with_capacity(n * d);
        for w in 0..n {
            let pw = self.top.apply(w);
            for x in 0..d {
                images.push(pw * d + self.base[pw].apply(x));
            }
        }
        Permutation::from_images(images).expect("block action is bijective")
    }

    /// Inverse of [`realize`](Self::realize) for block-preserving permutations.
    pub fn from_realized(p: &Permutation, n: usize, d: usize) -> Option<WreathElement> {
        if p.degree() != n * d {
            return None;
        }
        let mut top = Vec::with_capacity(n);
        let mut base = vec![Permutation::identity(d); n];
        for w in 0..n {
            let pw = p.apply(w * d) / d;
            let mut block = Vec::with_capacity(d);
            for x in 0..d {
                let y = p.apply(w * d + x);
                if y / d != pw {
                    return None;
                }
                block.push(y % d);
            }
            top.push(pw);
            base[pw] = Permutation::from_images(block).ok()?;
        }
        Some(WreathElement {
            base,
            top: Permutation::from_images(top).ok()?,
        })
    }
}

/// `s` acting on block `i` of `n` blocks of size `s.degree()`.
pub fn embed_in_block(s: &Permutation, i: usize, n: usize) -> Permutation {
    let d = s.degree();
    let mut base = vec![Permutation::identity(d); n];
    base[i] = s.clone();
    WreathElement {
        base,
        top: Permutation::identity(n),
    }
    .realize()
}

/// `t` permuting `t.degree()` blocks of size `d` rigidly.
pub fn embed_top(t: &Permutation, d: usize) -> Permutation {
    WreathElement {
        base: vec![Permutation::identity(d); t.degree()],
        top: t.clone(),
    }
    .realize()
}

/// `S ≀ T` realized on `n·deg(S)` points, `n = deg(T)`.
#[derive(Clone, Debug)]
pub struct WreathGroup {
    pub base_group: PermGroup,
    pub top_group: PermGroup,
    pub realized: PermGroup,
}

impl WreathGroup {
    pub fn new(s: &PermGroup, t: &PermGroup) -> Result<Self> {
        if !t.is_transitive() {
            return Err(Error::InvalidConstruction("top group is not transitive".into()));
        }
        let n = t.degree();
        let d = s.degree();
        let mut gens: Vec<Permutation> = s.generators().iter().map(|g| embed_in_block(g, 0, n)).collect();
        gens.extend(
            t.generators()
                .iter()
                .filter(|g| !g.is_identity())
                .map(|g| embed_top(g, d)),
        );
        Ok(WreathGroup {
            base_group: s.clone(),
            top_group: t.clone(),
            realized: PermGroup::new(n * d, gens)?,
        })
    }

    pub fn n(&self) -> usize {
        self.top_group.degree()
    }

    /// `|S|^n·|T|`.
    pub fn expected_order(&self) -> u128 {
        self.base_group.order().pow(self.n() as u32) * self.top_group.order()
    }
}
