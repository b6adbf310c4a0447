//! New triples from old: adding a kernel, direct powers, and the three
//! wreath product constructions, plus the explicit conjugators behind EC for
//! wreath products.

mod wreath;

pub use wreath::{embed_in_block, embed_top, WreathElement, WreathGroup};

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};
use crate::triples::{check_ff, is_ec, Automorphism, ConstructStanza, Triple};

fn require_ec(t: &Triple, bounds: &Bounds) -> Result<()> {
    if !is_ec(t, bounds)? {
        return Err(Error::InvalidConstruction(format!("{} is not an EC triple", t.label)));
    }
    Ok(())
}

fn require_ff(t: &Triple, bounds: &Bounds) -> Result<()> {
    if check_ff(t, bounds)?.is_err() {
        return Err(Error::InvalidConstruction(format!("{} is not FF", t.label)));
    }
    Ok(())
}

/// `(G × E, H × E, K × E)`.
pub fn add_kernel(t: &Triple, e: &PermGroup, bounds: &Bounds) -> Result<Triple> {
    require_ec(t, bounds)?;
    Triple::new(
        format!("{} x kernel({})", t.label, e.order()),
        t.g().direct_product(e),
        t.h().direct_product(e),
        t.k().direct_product(e),
    )
}

fn power(g: &PermGroup, k: usize) -> PermGroup {
    (1..k).fold(g.clone(), |acc, _| acc.direct_product(g))
}

/// `(G^k, H^k, K^k)` on `k·deg(G)` points. EC is required; FF is inherited
/// but not demanded, so non-FF inputs give non-FF outputs.
pub fn direct_power(t: &Triple, k: usize, bounds: &Bounds) -> Result<Triple> {
    if k == 0 {
        return Err(Error::InvalidConstruction("power must be positive".into()));
    }
    if k == 1 {
        return Ok(t.clone());
    }
    require_ec(t, bounds)?;
    let order = t.g().order().checked_pow(k as u32);
    if order.is_none_or(|o| o > bounds.enumeration.saturating_mul(bounds.enumeration)) {
        return Err(Error::bound("direct power order", bounds.enumeration));
    }
    Triple::new(
        format!("{}^{k}", t.label),
        power(t.g(), k),
        power(t.h(), k),
        power(t.k(), k),
    )
}

/// `{(α_1(s), …, α_n(s)) : s ∈ S}` on `n·deg(S)` points, with each `α_i`
/// given by the images of `S`'s generators (`None` is the identity).
pub fn diagonal(s: &PermGroup, twists: &[Option<Vec<Permutation>>]) -> Result<PermGroup> {
    let n = twists.len();
    let d = s.degree();
    let maps: Vec<Option<Automorphism>> = twists
        .iter()
        .map(|t| t.as_ref().map(|imgs| Automorphism::new(s, imgs)).transpose())
        .collect::<Result<_>>()?;
    let gens = s
        .generators()
        .iter()
        .map(|g| {
            let base: Vec<Permutation> = maps
                .iter()
                .map(|m| m.as_ref().map_or_else(|| g.clone(), |m| m.apply(g)))
                .collect();
            WreathElement {
                base,
                top: Permutation::identity(n),
            }
            .realize()
        })
        .collect();
    PermGroup::new(n * d, gens)
}

/// Type I: `(S ≀ T, L ≀ T, L′ ≀ T)` for an EC base with FF.
pub fn type1(base: &Triple, t: &PermGroup, bounds: &Bounds) -> Result<Triple> {
    if t.is_trivial() && t.degree() == 1 {
        return Ok(base.clone());
    }
    if !t.is_transitive() {
        return Err(Error::InvalidConstruction("T is not transitive".into()));
    }
    require_ec(base, bounds)?;
    require_ff(base, bounds)?;
    let n = t.degree();
    let g = WreathGroup::new(base.g(), t)?;
    let sub = |l: &PermGroup| -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = l.generators().iter().map(|x| embed_in_block(x, 0, n)).collect();
        gens.extend(
            t.generators()
                .iter()
                .filter(|x| !x.is_identity())
                .map(|x| embed_top(x, base.degree())),
        );
        PermGroup::new(n * base.degree(), gens)
    };
    let tri = Triple::new(
        format!("TypeI({}, n={n}, |T|={})", base.label, t.order()),
        g.realized.clone(),
        sub(base.h())?,
        sub(base.k())?,
    )?;
    debug_assert_eq!(tri.g().order(), g.expected_order());
    Ok(tri)
}

fn require_simple(s: &PermGroup, bounds: &Bounds) -> Result<()> {
    if !s.is_simple(bounds.enumeration)? {
        return Err(Error::InvalidConstruction("base group is not simple".into()));
    }
    Ok(())
}

/// True if `x` preserves every block of size `d` without moving blocks.
fn is_base_element(x: &Permutation, d: usize) -> bool {
    (0..x.degree()).all(|p| x.apply(p) / d == p / d)
}

/// `x` lies in `S^n` acting blockwise.
fn in_base_power(x: &Permutation, s: &PermGroup) -> bool {
    let d = s.degree();
    is_base_element(x, d) && (0..x.degree() / d).all(|i| s.contains(&x.restrict(i * d, d)))
}

fn check_diagonal_input(l: &PermGroup, s: &PermGroup, blocks: usize, name: &str) -> Result<()> {
    if l.degree() != blocks * s.degree() {
        return Err(Error::DegreeMismatch {
            left: blocks * s.degree(),
            right: l.degree(),
        });
    }
    if let Some(x) = l.generators().iter().find(|x| !in_base_power(x, s)) {
        return Err(Error::InvalidConstruction(format!(
            "{name} generator {x} is not in the base power"
        )));
    }
    Ok(())
}

/// `conj` normalizes `l`.
fn is_stable(l: &PermGroup, conj: &[Permutation]) -> bool {
    conj.iter()
        .all(|t| l.generators().iter().all(|x| l.contains(&x.conjugate_by(t))))
}

/// Type II: `(S ≀ T, L ⋊ T, L′ ⋊ T)` for simple `S` and `T`-stable subgroups
/// `L, L′ ≤ S^n` given on `n·deg(S)` points.
pub fn type2(s: &PermGroup, l: &PermGroup, lp: &PermGroup, t: &PermGroup, bounds: &Bounds) -> Result<Triple> {
    let n = t.degree();
    if n < 2 {
        return Err(Error::InvalidConstruction(
            "Type II needs n ≥ 2 (a diagonal of S^1 is S itself)".into(),
        ));
    }
    if !t.is_transitive() {
        return Err(Error::InvalidConstruction("T is not transitive".into()));
    }
    require_simple(s, bounds)?;
    check_diagonal_input(l, s, n, "L")?;
    check_diagonal_input(lp, s, n, "L'")?;
    let d = s.degree();
    let tops: Vec<Permutation> = t
        .generators()
        .iter()
        .filter(|x| !x.is_identity())
        .map(|x| embed_top(x, d))
        .collect();
    for (sub, name) in [(l, "L"), (lp, "L'")] {
        if !is_stable(sub, &tops) {
            return Err(Error::InvalidConstruction(format!("{name} is not stable under T")));
        }
    }
    let g = WreathGroup::new(s, t)?;
    let semi = |sub: &PermGroup| sub.join(&tops);
    let tri = Triple::new(
        format!("TypeII(n={n}, |S|={}, |T|={})", s.order(), t.order()),
        g.realized,
        semi(l)?,
        semi(lp)?,
    )?;
    for (sub, x) in [(l, tri.h()), (lp, tri.k())] {
        if x.order() != sub.order() * t.order() {
            return Err(Error::InvalidConstruction("size law |L ⋊ T| = |L|·|T| fails".into()));
        }
    }
    Ok(tri)
}

/// Images of the blocks `{ik, …, ik + k − 1}` under `x`, or `None` if `x`
/// does not permute them.
fn block_image(x: &Permutation, k: usize) -> Option<Permutation> {
    let l = x.degree() / k;
    let mut images = Vec::with_capacity(l);
    for b in 0..l {
        let target = x.apply(b * k) / k;
        if (b * k..(b + 1) * k).any(|p| x.apply(p) / k != target) {
            return None;
        }
        images.push(target);
    }
    Permutation::from_images(images).ok()
}

/// Elements of `t` mapping block 0 to itself, restricted to block 0.
fn block_stabilizer_on_block(t: &PermGroup, k: usize) -> Result<PermGroup> {
    let lk = t.degree();
    let l = lk / k;
    let gens: Vec<Permutation> = t
        .generators()
        .iter()
        .map(|x| x.direct_sum(&block_image(x, k).expect("checked block system")))
        .collect();
    let paired = PermGroup::new(lk + l, gens)?;
    let stab = paired.stabilizer(lk)?;
    PermGroup::new(k, stab.generators().iter().map(|x| x.restrict(0, k)).collect())
}

/// Type III: `(S ≀ T, L^l ⋊ T, L′^l ⋊ T)` with `T` transitive on `l·k`
/// points preserving the blocks `{ik, …, ik + k − 1}`, and `L, L′` diagonal
/// copies of `S` in `S^k` given on `k·deg(S)` points.
pub fn type3(
    s: &PermGroup,
    l_sub: &PermGroup,
    lp_sub: &PermGroup,
    (l, k): (usize, usize),
    t: &PermGroup,
    bounds: &Bounds,
) -> Result<Triple> {
    if l < 2 || k < 2 {
        return Err(Error::InvalidConstruction(format!(
            "Type III needs l, k ≥ 2 (got l = {l}, k = {k})"
        )));
    }
    if t.degree() != l * k {
        return Err(Error::DegreeMismatch {
            left: l * k,
            right: t.degree(),
        });
    }
    if !t.is_transitive() {
        return Err(Error::InvalidConstruction("T is not transitive".into()));
    }
    if t.generators().iter().any(|x| block_image(x, k).is_none()) {
        return Err(Error::InvalidConstruction(format!(
            "T does not preserve the blocks of size {k}"
        )));
    }
    require_simple(s, bounds)?;
    check_diagonal_input(l_sub, s, k, "L")?;
    check_diagonal_input(lp_sub, s, k, "L'")?;
    for (sub, name) in [(l_sub, "L"), (lp_sub, "L'")] {
        if sub.order() != s.order() {
            return Err(Error::InvalidConstruction(format!("{name} is not a diagonal copy of S")));
        }
    }
    let d = s.degree();
    let t0 = block_stabilizer_on_block(t, k)?;
    let t0_tops: Vec<Permutation> = t0.generators().iter().map(|x| embed_top(x, d)).collect();
    for (sub, name) in [(l_sub, "L"), (lp_sub, "L'")] {
        if !is_stable(sub, &t0_tops) {
            return Err(Error::InvalidConstruction(format!(
                "{name} is not stable under the block stabilizer"
            )));
        }
    }
    let n = l * k;
    let g = WreathGroup::new(s, t)?;
    let tops: Vec<Permutation> = t
        .generators()
        .iter()
        .filter(|x| !x.is_identity())
        .map(|x| embed_top(x, d))
        .collect();
    let pad = Permutation::identity((n - k) * d);
    let semi = |sub: &PermGroup| -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = sub.generators().iter().map(|x| x.direct_sum(&pad)).collect();
        gens.extend(tops.iter().cloned());
        PermGroup::new(n * d, gens)
    };
    let tri = Triple::new(
        format!("TypeIII(l={l}, k={k}, |S|={}, |T|={})", s.order(), t.order()),
        g.realized,
        semi(l_sub)?,
        semi(lp_sub)?,
    )?;
    let expected = s.order().pow(l as u32) * t.order();
    for x in [tri.h(), tri.k()] {
        if x.order() != expected {
            return Err(Error::InvalidConstruction(format!(
                "size law |S|^l·|T| = {expected} fails (got {})",
                x.order()
            )));
        }
    }
    Ok(tri)
}

/// Builds the triple described by a construction stanza over `base`.
pub fn from_stanza(base: &Triple, c: &ConstructStanza, bounds: &Bounds) -> Result<Triple> {
    let t = c.t.to_group()?;
    let s = base.g();
    let diag = |gens: &Option<Vec<String>>, blocks: usize, name: &str| -> Result<PermGroup> {
        let gens = gens
            .as_ref()
            .ok_or_else(|| Error::InvalidConstruction(format!("missing `{name}` generators")))?;
        let deg = blocks * s.degree();
        PermGroup::new(deg, crate::permgroup::parse_generator_list(gens, deg)?)
    };
    match c.variant.as_str() {
        "I" | "1" => {
            if let Some(n) = c.n {
                if n != t.degree() {
                    return Err(Error::InvalidConstruction(format!("n = {n} but T has degree {}", t.degree())));
                }
            }
            type1(base, &t, bounds)
        }
        "II" | "2" => {
            let n = c.n.unwrap_or(t.degree());
            if n != t.degree() {
                return Err(Error::InvalidConstruction(format!("n = {n} but T has degree {}", t.degree())));
            }
            if n < 2 {
                return Err(Error::InvalidConstruction(
                    "Type II needs n ≥ 2 (a diagonal of S^1 is S itself)".into(),
                ));
            }
            type2(s, &diag(&c.l_gens, n, "L")?, &diag(&c.l_prime_gens, n, "L'")?, &t, bounds)
        }
        "III" | "3" => {
            let (l, k) = match (c.l, c.k) {
                (Some(l), Some(k)) => (l, k),
                _ => return Err(Error::InvalidConstruction("Type III needs `l` and `k`".into())),
            };
            if l < 2 || k < 2 {
                return Err(Error::InvalidConstruction(format!(
                    "Type III needs l, k ≥ 2 (got l = {l}, k = {k})"
                )));
            }
            type3(s, &diag(&c.l_gens, k, "L")?, &diag(&c.l_prime_gens, k, "L'")?, (l, k), &t, bounds)
        }
        other => Err(Error::InvalidConstruction(format!("unknown variant {other:?}"))),
    }
}

/// Conjugators for `(ā, γ)` with `ā ∈ K^n`: returns `l = (l_1, …, l_n)` in
/// `S^n` such that `(l, 1)⁻¹·(ā, γ)·(l, 1)` lies in `H^n ⋊ ⟨γ⟩`.
///
/// Along each cycle `c_0 → c_1 → … ` of `γ` the cosets satisfy
/// `y_{c_{j+1}} = a_{c_{j+1}}(y_{c_j})`; closing the cycle needs a coset of `H`
/// fixed by the cycle product, which exists exactly when that product is
/// conjugate into `H`. `l_i` is the coset representative sending `H` to `y_i`.
pub fn ec_witness(base: &Triple, gamma: &Permutation, a: &[Permutation], bounds: &Bounds) -> Result<Vec<Permutation>> {
    let n = gamma.degree();
    if a.len() != n {
        return Err(Error::DegreeMismatch { left: n, right: a.len() });
    }
    for x in a {
        base.k().require_member(x)?;
    }
    let table = base.g().left_cosets(base.h(), bounds.index)?;
    let mut y = vec![usize::MAX; n];
    for cycle in gamma.cycles() {
        // cycle = [c_0, γ(c_0), …]; product applies a_{c_1}, …, a_{c_{m-1}}, a_{c_0}
        let m = cycle.len();
        let mut prod = Permutation::identity(base.degree());
        for j in 1..=m {
            prod = prod.then(&a[cycle[j % m]]);
        }
        let act = table.action_of(&prod);
        let start = (0..table.len()).find(|&c| act.fixes(c)).ok_or_else(|| {
            Error::NoFixedCoset(format!(
                "cycle product {prod} fixes no coset, so it is not conjugate into H"
            ))
        })?;
        y[cycle[0]] = start;
        for j in 1..m {
            let prev = y[cycle[j - 1]];
            y[cycle[j]] = table.action_of(&a[cycle[j]]).apply(prev);
        }
    }
    let l: Vec<Permutation> = y.iter().map(|&c| table.representatives()[c].clone()).collect();
    let w = WreathElement {
        base: l.clone(),
        top: Permutation::identity(n),
    };
    let h = WreathElement {
        base: a.to_vec(),
        top: gamma.clone(),
    };
    let r = h.conjugate_by(&w);
    if r.top != *gamma || !r.base.iter().all(|x| base.h().contains(x)) {
        return Err(Error::NoFixedCoset("conjugation identity failed".into()));
    }
    Ok(l)
}
