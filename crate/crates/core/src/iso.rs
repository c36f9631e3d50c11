//! Γ-isomorphism search and canonical forms.
//!
//! Both rest on an isomorphism-invariant labelling of elements (orbit size,
//! idempotency, stabiliser and image sizes, position in the pre-order, the
//! shape of the cyclic subsemigroup, refined once by the labels of all sums
//! and action images). Candidate bijections only ever match elements with
//! equal labels.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::action::GammaStructure;
use crate::elemset::ElemSet;
use crate::{Elem, Error, Limits, Result};

type BaseLabel = [usize; 10];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Label {
    base: BaseLabel,
    sums: Vec<(BaseLabel, BaseLabel)>,
    images: Vec<BaseLabel>,
}

fn base_label(gs: &GammaStructure, a: Elem) -> BaseLabel {
    let m = gs.monoid();
    let n = gs.size();
    let stabiliser = (0..n).filter(|&x| m.add(a, x) == a).count();
    let image: ElemSet = (0..n).map(|x| m.add(a, x)).collect();
    let above = (0..n).filter(|&x| m.is_leq(a, x)).count();
    // index and period of a, 2a, 3a, ...
    let mut seen = vec![usize::MAX; n];
    let mut k = 1;
    let mut cur = a;
    while seen[cur] == usize::MAX {
        seen[cur] = k;
        cur = m.add(cur, a);
        k += 1;
    }
    let index = seen[cur];
    let period = k - seen[cur];
    [
        usize::from(a != 0),
        gs.orbit(a).len(),
        usize::from(m.add(a, a) == a),
        stabiliser,
        image.len(),
        m.below(a).len(),
        above,
        index,
        period,
        usize::from(m.is_leq(a, 0)),
    ]
}

fn labels(gs: &GammaStructure) -> Vec<Label> {
    let n = gs.size();
    let m = gs.monoid();
    let base: Vec<BaseLabel> = (0..n).map(|a| base_label(gs, a)).collect();
    (0..n)
        .map(|a| {
            let mut sums: Vec<_> = (0..n).map(|b| (base[b], base[m.add(a, b)])).collect();
            sums.sort();
            let images = (0..gs.group().order()).map(|g| base[gs.act(g, a)]).collect();
            Label {
                base: base[a],
                sums,
                images,
            }
        })
        .collect()
}

/// A bijection `f` from `gs1` to `gs2` with `f(a+b) = f(a)+f(b)`, `f(0) = 0`
/// and `f(αa) = αf(a)`, if one exists.
pub fn find_gamma_isomorphism(
    gs1: &GammaStructure,
    gs2: &GammaStructure,
    limits: &Limits,
) -> Result<Option<Vec<Elem>>> {
    if gs1.group() != gs2.group() {
        return Err(Error::GroupMismatch);
    }
    let n = gs1.size();
    if n > limits.max_iso {
        return Err(Error::SizeLimit {
            what: "isomorphism search",
            size: n,
            limit: limits.max_iso,
        });
    }
    if n != gs2.size() {
        return Ok(None);
    }
    let l1 = labels(gs1);
    let l2 = labels(gs2);
    let mut s1 = l1.clone();
    let mut s2 = l2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }
    let mut search = IsoSearch {
        gs1,
        gs2,
        l1: &l1,
        l2: &l2,
        map: vec![usize::MAX; n],
        used: ElemSet::EMPTY,
    };
    search.map[0] = 0;
    search.used.insert(0);
    if !search.consistent(0) {
        return Ok(None);
    }
    Ok(search.extend(1).then_some(search.map))
}

struct IsoSearch<'a> {
    gs1: &'a GammaStructure,
    gs2: &'a GammaStructure,
    l1: &'a [Label],
    l2: &'a [Label],
    map: Vec<Elem>,
    used: ElemSet,
}

impl IsoSearch<'_> {
    fn extend(&mut self, next: Elem) -> bool {
        let n = self.gs1.size();
        if next == n {
            return true;
        }
        for target in 0..n {
            if self.used.contains(target) || self.l1[next] != self.l2[target] {
                continue;
            }
            self.map[next] = target;
            if self.consistent(next) {
                self.used.insert(target);
                if self.extend(next + 1) {
                    return true;
                }
                self.used.remove(target);
            }
        }
        self.map[next] = usize::MAX;
        false
    }

    fn consistent(&self, a: Elem) -> bool {
        let (m1, m2) = (self.gs1.monoid(), self.gs2.monoid());
        let f = &self.map;
        let unset = usize::MAX;
        for b in 0..=a {
            let s = m1.add(a, b);
            if f[s] != unset && f[s] != m2.add(f[a], f[b]) {
                return false;
            }
        }
        for x in 0..a {
            for y in x..a {
                if m1.add(x, y) == a && f[a] != m2.add(f[x], f[y]) {
                    return false;
                }
            }
        }
        for g in 0..self.gs1.group().order() {
            let img = self.gs1.act(g, a);
            if f[img] != unset && f[img] != self.gs2.act(g, f[a]) {
                return false;
            }
            let pre = self.gs1.act(self.gs1.group().inverse(g), a);
            if f[pre] != unset && f[a] != self.gs2.act(g, f[pre]) {
                return false;
            }
        }
        true
    }
}

/// A complete invariant of a Γ-monoid up to Γ-isomorphism: the
/// lexicographically least relabelled table and action among the element
/// orders compatible with the invariant labelling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalKey {
    pub size: usize,
    pub group: Vec<Elem>,
    pub table: Vec<Elem>,
    pub action: Vec<Elem>,
}

fn digits(f: &mut fmt::Formatter<'_>, xs: &[Elem]) -> fmt::Result {
    for &x in xs {
        match std::char::from_digit(x as u32, 36) {
            Some(c) if x < 36 => write!(f, "{c}")?,
            _ => write!(f, "({x})")?,
        }
    }
    Ok(())
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}:g", self.size)?;
        digits(f, &self.group)?;
        write!(f, ":t")?;
        digits(f, &self.table)?;
        write!(f, ":a")?;
        digits(f, &self.action)
    }
}

impl CanonicalKey {
    /// Rebuilds a Γ-monoid with this key (names are the indices).
    pub fn to_structure(&self) -> Result<GammaStructure> {
        let n = self.size;
        let m = self.group.len().isqrt();
        let group = crate::group::Group::with_options(
            self.group.chunks(m).map(|r| r.to_vec()).collect(),
            true,
        )?;
        let monoid = crate::monoid::Monoid::from_table(self.table.chunks(n).map(|r| r.to_vec()).collect())?;
        Ok(GammaStructure::new(
            monoid,
            group,
            self.action.chunks(n).map(|r| r.to_vec()).collect(),
        )?)
    }
}

/// Canonical key of `gs`, exact up to Γ-isomorphism.
pub fn canonical_form(gs: &GammaStructure, limits: &Limits) -> Result<CanonicalKey> {
    let n = gs.size();
    if n > limits.max_canonical {
        return Err(Error::SizeLimit {
            what: "canonical form",
            size: n,
            limit: limits.max_canonical,
        });
    }
    Ok(canonical_form_unchecked(gs))
}

pub(crate) fn canonical_form_unchecked(gs: &GammaStructure) -> CanonicalKey {
    let n = gs.size();
    let labs = labels(gs);
    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by(|&a, &b| labs[a].cmp(&labs[b]).then(a.cmp(&b)));
    let classes: Vec<Vec<Elem>> = order
        .iter()
        .copied()
        .chunk_by(|&a| labs[a].clone())
        .into_iter()
        .map(|(_, g)| g.collect())
        .collect();
    let group: Vec<Elem> = gs.group().rows().into_iter().flatten().collect();
    let mut best: Option<CanonicalKey> = None;
    let mut current = Vec::with_capacity(n);
    visit_orderings(&classes, 0, &mut current, &mut |ordering| {
        let key = relabel(gs, ordering, &group);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.expect("at least one ordering")
}

fn visit_orderings(
    classes: &[Vec<Elem>],
    i: usize,
    current: &mut Vec<Elem>,
    visit: &mut dyn FnMut(&[Elem]),
) {
    if i == classes.len() {
        visit(current);
        return;
    }
    let k = classes[i].len();
    for perm in classes[i].iter().copied().permutations(k) {
        let len = current.len();
        current.extend(perm);
        visit_orderings(classes, i + 1, current, visit);
        current.truncate(len);
    }
}

fn relabel(gs: &GammaStructure, order: &[Elem], group: &[Elem]) -> CanonicalKey {
    let n = order.len();
    let mut pos = vec![0; n];
    for (i, &a) in order.iter().enumerate() {
        pos[a] = i;
    }
    let m = gs.monoid();
    let mut table = Vec::with_capacity(n * n);
    for &a in order {
        for &b in order {
            table.push(pos[m.add(a, b)]);
        }
    }
    let mut action = Vec::with_capacity(n * gs.group().order());
    for g in 0..gs.group().order() {
        for &a in order {
            action.push(pos[gs.act(g, a)]);
        }
    }
    CanonicalKey {
        size: n,
        group: group.to_vec(),
        table,
        action,
    }
}
