use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{check_ff, check_inv, check_max, check_pair, ClassProfile, PairStatus, Triple};
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::permgroup::{format_generator_list, Permutation};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub ac: bool,
    pub ec: bool,
    pub ff: bool,
    pub max: bool,
    pub pair: bool,
    pub inv: bool,
    /// Side count for INV.
    pub r: usize,
    pub tree_required: bool,
    pub pair_candidate: Option<Vec<Permutation>>,
    pub bounds: Bounds,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            ac: true,
            ec: true,
            ff: true,
            max: true,
            pair: true,
            inv: true,
            r: 3,
            tree_required: true,
            pair_candidate: None,
            bounds: Bounds::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvReport {
    pub elements: Vec<String>,
    pub fixed_counts: Vec<usize>,
    pub tree: bool,
    pub fixeq: bool,
    pub system: String,
}

/// Outcome of the property suite. A property left as `None` was either not
/// requested or not decided; undecided ones carry a reason in `undecided`.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub schema: u32,
    pub label: String,
    pub degree: usize,
    pub order: u128,
    pub index_h: u128,
    pub index_k: u128,
    pub ac: Option<bool>,
    pub ec: Option<bool>,
    pub ff: Option<bool>,
    pub max: Option<bool>,
    pub pair: Option<PairStatus>,
    pub pair_detail: Option<String>,
    /// `Some(None)` when INV was searched exhaustively without success.
    pub inv: Option<Option<InvReport>>,
    pub witnesses: BTreeMap<String, String>,
    pub undecided: BTreeMap<String, String>,
}

fn settle<T>(r: Result<T>, name: &str, undecided: &mut BTreeMap<String, String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_bound_exceeded() => {
            undecided.insert(name.into(), e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn describe_group(gens: &[Permutation], order: u128) -> String {
    format!("order {order} generated by {}", format_generator_list(gens).join(", "))
}

/// Runs the requested checks. Bound overruns are recorded per property;
/// other errors abort.
pub fn verify(t: &Triple, opts: &VerifyOptions) -> Result<PropertyReport> {
    let b = &opts.bounds;
    let mut rep = PropertyReport {
        schema: 1,
        label: t.label.clone(),
        degree: t.degree(),
        order: t.g().order(),
        index_h: t.index_h(),
        index_k: t.index_k(),
        ac: None,
        ec: None,
        ff: None,
        max: None,
        pair: None,
        pair_detail: None,
        inv: None,
        witnesses: BTreeMap::new(),
        undecided: BTreeMap::new(),
    };

    if opts.ac || opts.ec {
        let same = t.h().same_group(t.k());
        let profile = if same {
            None
        } else {
            settle(ClassProfile::compute(t, b), "classes", &mut rep.undecided)?
        };
        let decided = same || profile.is_some();
        if decided {
            if opts.ac {
                let ac = same || (t.h().order() == t.k().order() && profile.as_ref().unwrap().is_ac());
                rep.ac = Some(ac);
                if !ac {
                    let w = if t.h().order() != t.k().order() {
                        format!("|H| = {} but |K| = {}", t.h().order(), t.k().order())
                    } else {
                        let g = profile.as_ref().unwrap().ac_witness().unwrap();
                        format!("class of {g} meets H and K unequally")
                    };
                    rep.witnesses.insert("ac".into(), w);
                }
            }
            if opts.ec {
                let ec = same || profile.as_ref().unwrap().is_ec();
                rep.ec = Some(ec);
                if !ec {
                    let g = profile.as_ref().unwrap().ec_witness().unwrap();
                    rep.witnesses
                        .insert("ec".into(), format!("{g} is not conjugate into the other subgroup"));
                }
            }
        } else {
            for (flag, name) in [(opts.ac, "ac"), (opts.ec, "ec")] {
                if flag {
                    let why = rep.undecided["classes"].clone();
                    rep.undecided.insert(name.into(), why);
                }
            }
            rep.undecided.remove("classes");
        }
    }

    if opts.ff {
        if let Some(r) = settle(check_ff(t, b), "ff", &mut rep.undecided)? {
            rep.ff = Some(r.is_ok());
            if let Err(core) = r {
                rep.witnesses.insert(
                    "ff".into(),
                    format!("normal subgroup inside a point stabilizer: {}", describe_group(core.generators(), core.order())),
                );
            }
        }
    }

    if opts.max {
        rep.max = settle(check_max(t, b), "max", &mut rep.undecided)?;
        if rep.max == Some(false) {
            let which = if !t.g().is_maximal(t.h(), b.index)? { "H" } else { "K" };
            rep.witnesses
                .insert("max".into(), format!("{which} is not a maximal subgroup"));
        }
    }

    if opts.pair {
        if let Some(out) = settle(
            check_pair(t, opts.pair_candidate.as_deref(), b),
            "pair",
            &mut rep.undecided,
        )? {
            rep.pair = Some(out.status);
            rep.pair_detail = Some(out.detail);
        }
    }

    if opts.inv {
        if let Some(w) = settle(check_inv(t, opts.r, opts.tree_required, b), "inv", &mut rep.undecided)? {
            rep.inv = Some(w.map(|w| InvReport {
                elements: format_generator_list(&w.elements),
                fixed_counts: w.fixed_counts.clone(),
                tree: w.system.is_tree(),
                fixeq: w.system.fixeq_check(),
                system: w.system.to_text(),
            }));
            if matches!(rep.inv, Some(None)) {
                rep.witnesses
                    .insert("inv".into(), format!("no {}-subset of involutions qualifies", opts.r));
            }
        }
    }
    Ok(rep)
}

impl PropertyReport {
    /// Every decided property holds. PAIR counts as holding unless it failed.
    pub fn all_hold(&self) -> bool {
        [self.ac, self.ec, self.ff, self.max].iter().all(|p| *p != Some(false))
            && self.pair != Some(PairStatus::Failed)
            && !matches!(self.inv, Some(None))
    }

    pub fn any_undecided(&self) -> bool {
        !self.undecided.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(Error::from)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "triple {}: |G| = {}, degree {}, [G:H] = {}, [G:K] = {}",
            self.label, self.order, self.degree, self.index_h, self.index_k);
        let mut line = |name: &str, key: &str, v: Option<String>| {
            let shown = match v {
                Some(v) => v,
                None => match self.undecided.get(key) {
                    Some(why) => format!("undecided ({why})"),
                    None => return,
                },
            };
            let _ = write!(s, "{name:<5}{shown}");
            if let Some(w) = self.witnesses.get(key) {
                let _ = write!(s, "  [{w}]");
            }
            s.push('\n');
        };
        let yn = |b: Option<bool>| b.map(|b| if b { "yes".to_string() } else { "no".to_string() });
        line("AC", "ac", yn(self.ac));
        line("EC", "ec", yn(self.ec));
        line("FF", "ff", yn(self.ff));
        line("MAX", "max", yn(self.max));
        line(
            "PAIR",
            "pair",
            self.pair.map(|p| {
                let name = match p {
                    PairStatus::Confirmed => "confirmed",
                    PairStatus::WeakEvidence => "weak evidence",
                    PairStatus::Failed => "failed",
                };
                match &self.pair_detail {
                    Some(d) => format!("{name} ({d})"),
                    None => name.to_string(),
                }
            }),
        );
        line(
            "INV",
            "inv",
            self.inv.as_ref().map(|w| match w {
                Some(w) => format!(
                    "found: {} with fixed points {:?} (tree {}, identity {})",
                    w.elements.join(" "),
                    w.fixed_counts,
                    w.tree,
                    w.fixeq
                ),
                None => "none".to_string(),
            }),
        );
        s
    }
}
