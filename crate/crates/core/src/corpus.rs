//! Small instances: exhaustive enumeration of commutative monoids, actions
//! from automorphism subgroups, and named families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::action::{automorphism_group, GammaStructure};
use crate::group::Group;
use crate::iso::{canonical_form_unchecked, CanonicalKey};
use crate::monoid::Monoid;
use crate::{Elem, Error, Limits, Result};

const UNSET: usize = usize::MAX;

/// All commutative monoids of size `n` up to isomorphism, each in its
/// canonical labelling, sorted by canonical key.
pub fn enumerate_monoids(n: usize, limits: &Limits) -> Result<Vec<Monoid>> {
    if n == 0 || n > limits.max_enumeration {
        return Err(Error::SizeLimit {
            what: "monoid enumeration",
            size: n,
            limit: limits.max_enumeration,
        });
    }
    let mut table = vec![vec![UNSET; n]; n];
    for (a, row) in table.iter_mut().enumerate() {
        row[0] = a;
    }
    table[0] = (0..n).collect();
    let cells: Vec<(Elem, Elem)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut found = BTreeMap::new();
    fill(&mut table, &cells, 0, &mut found);
    Ok(found.into_values().collect())
}

fn fill(table: &mut Vec<Vec<Elem>>, cells: &[(Elem, Elem)], k: usize, found: &mut BTreeMap<CanonicalKey, Monoid>) {
    if k == cells.len() {
        let m = Monoid::from_table(table.clone()).expect("complete table is a monoid");
        let key = canonical_form_unchecked(&GammaStructure::trivial(m));
        found.entry(key.clone()).or_insert_with(|| {
            Monoid::from_table(key.table.chunks(key.size).map(|r| r.to_vec()).collect()).expect("canonical table")
        });
        return;
    }
    let (a, b) = cells[k];
    let n = table.len();
    for v in 0..n {
        table[a][b] = v;
        table[b][a] = v;
        if associative_so_far(table, a, b) {
            fill(table, cells, k + 1, found);
        }
    }
    table[a][b] = UNSET;
    table[b][a] = UNSET;
}

/// Checks `(x+y)+z = x+(y+z)` on every triple whose four lookups are
/// defined. Only triples touching the newest cell `(a, b)` can be new.
fn associative_so_far(t: &[Vec<Elem>], a: Elem, b: Elem) -> bool {
    let n = t.len();
    let get = |x: Elem, y: Elem| if x == UNSET || y == UNSET { UNSET } else { t[x][y] };
    let is_cell = |x: Elem, y: Elem| (x == a && y == b) || (x == b && y == a);
    for x in 1..n {
        for y in 1..n {
            let xy = get(x, y);
            for z in 1..n {
                let yz = get(y, z);
                if !(is_cell(x, y) || is_cell(y, z) || is_cell(xy, z) || is_cell(x, yz)) {
                    continue;
                }
                let (l, r) = (get(xy, z), get(x, yz));
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// Where group actions come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionSource {
    /// Only the trivial group.
    Trivial,
    /// The trivial group plus each cyclic subgroup of the automorphism group.
    Cyclic,
    /// Every abelian subgroup of the automorphism group.
    Full,
}

impl FromStr for ActionSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(ActionSource::Trivial),
            "cyclic" => Ok(ActionSource::Cyclic),
            "full" => Ok(ActionSource::Full),
            _ => Err(Error::BadParams(format!("unknown action source {s:?}"))),
        }
    }
}

fn subgroup_elements(gens: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut elements = Group::from_permutations(gens).1;
    elements.sort();
    elements
}

fn commute(p: &[Elem], q: &[Elem]) -> bool {
    p.iter().all(|&x| p[q[x]] == q[p[x]])
}

/// Γ-structures on `m` from subgroups of its automorphism group, the
/// trivial one first. Subgroups are listed in order of their sorted
/// element lists.
pub fn attach_actions(m: &Monoid, source: ActionSource) -> Vec<GammaStructure> {
    let mut out = vec![GammaStructure::trivial(m.clone())];
    if source == ActionSource::Trivial {
        return out;
    }
    let aut = automorphism_group(m);
    let mut subgroups: BTreeMap<Vec<Vec<Elem>>, Vec<Vec<Elem>>> = BTreeMap::new();
    for g in aut.iter().skip(1) {
        subgroups
            .entry(subgroup_elements(std::slice::from_ref(g)))
            .or_insert_with(|| vec![g.clone()]);
    }
    if source == ActionSource::Full {
        let mut frontier: Vec<Vec<Vec<Elem>>> = subgroups.values().cloned().collect();
        while let Some(gens) = frontier.pop() {
            for g in aut.iter().skip(1) {
                if gens.contains(g) || !gens.iter().all(|h| commute(g, h)) {
                    continue;
                }
                let mut more = gens.clone();
                more.push(g.clone());
                let elements = subgroup_elements(&more);
                if elements.len() > subgroup_elements(&gens).len() && !subgroups.contains_key(&elements) {
                    subgroups.insert(elements, more.clone());
                    frontier.push(more);
                }
            }
        }
    }
    for gens in subgroups.values() {
        let gs = if gens.len() == 1 {
            GammaStructure::from_generator(m.clone(), &gens[0])
        } else {
            let (group, rows) = Group::from_permutations(gens);
            GammaStructure::new(m.clone(), group, rows)
        };
        out.push(gs.expect("automorphisms act"));
    }
    out
}

/// Monoid properties used to filter the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    Refinement,
    Conical,
    Cancellative,
}

impl Filter {
    pub fn accepts(self, m: &Monoid) -> bool {
        match self {
            Filter::Refinement => m.is_refinement(),
            Filter::Conical => m.is_conical(),
            Filter::Cancellative => m.is_cancellative(),
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "refinement" => Ok(Filter::Refinement),
            "conical" => Ok(Filter::Conical),
            "cancellative" => Ok(Filter::Cancellative),
            _ => Err(Error::BadParams(format!("unknown filter {s:?}"))),
        }
    }
}

/// What to put in a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    /// Enumerate every monoid of size `1..=max_size`.
    pub max_size: usize,
    pub filters: Vec<Filter>,
    pub actions: ActionSource,
    /// Builtin names added after the enumerated monoids.
    pub families: Vec<String>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_size: 4,
            filters: Vec::new(),
            actions: ActionSource::Cyclic,
            families: Vec::new(),
        }
    }
}

/// A named corpus instance.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub structure: GammaStructure,
}

impl CorpusEntry {
    /// `name  key  n=..  group=..  refinement=..  conical=..  cancellative=..`
    pub fn manifest_line(&self) -> String {
        let m = self.structure.monoid();
        format!(
            "{}\t{}\tn={}\tgroup={}\trefinement={}\tconical={}\tcancellative={}",
            self.name,
            canonical_form_unchecked(&self.structure),
            m.size(),
            self.structure.group().order(),
            m.is_refinement(),
            m.is_conical(),
            m.is_cancellative()
        )
    }
}

pub fn build_corpus(spec: &CorpusSpec, limits: &Limits) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let keep = |m: &Monoid| spec.filters.iter().all(|f| f.accepts(m));
    for n in 1..=spec.max_size {
        for (i, m) in enumerate_monoids(n, limits)?.into_iter().enumerate() {
            if !keep(&m) {
                continue;
            }
            for (k, gs) in attach_actions(&m, spec.actions).into_iter().enumerate() {
                out.push(CorpusEntry {
                    name: format!("m{n}-{i}-a{k}"),
                    structure: gs,
                });
            }
        }
    }
    for family in &spec.families {
        let gs = builtin(family)?;
        if keep(gs.monoid()) {
            out.push(CorpusEntry {
                name: family.clone(),
                structure: gs,
            });
        }
    }
    Ok(out)
}

/// The seven-element monoid `{0, 1, x, y, z, s, b}` whose ideals
/// `{0, 1, x}` and `{0, y, z}` have a sum that is not an ideal.
pub fn t7_monoid() -> Monoid {
    let names = ["0", "1", "x", "y", "z", "s", "b"];
    let rows = [
        "0 1 x y z s b",
        "1 1 1 s s s b",
        "x 1 1 s s s b",
        "y s s y y s b",
        "z s s y y s b",
        "s s s s s s b",
        "b b b b b b s",
    ];
    let idx = |t: &str| names.iter().position(|n| *n == t).expect("name");
    let table = rows
        .iter()
        .map(|r| r.split_whitespace().map(idx).collect())
        .collect();
    Monoid::new(names.iter().map(|s| s.to_string()).collect(), table).expect("valid table")
}

/// `{0, ..., k}` with `a + b = min(a + b, k)`.
pub fn truncated_naturals(k: usize) -> Result<Monoid> {
    let n = k + 1;
    let table = (0..n).map(|a| (0..n).map(|b| (a + b).min(k)).collect()).collect();
    Ok(Monoid::from_table(table)?)
}

/// Down-sets of a poset on `k` points under union. `below` lists pairs
/// `(i, j)` with `i < j`. Points are named `a`, `b`, ...; a down-set is
/// named by its points and the empty one is `0`.
pub fn semilattice_from_poset(k: usize, below: &[(usize, usize)]) -> Result<Monoid> {
    if k > 6 || below.iter().any(|&(i, j)| i >= k || j >= k || i == j) {
        return Err(Error::BadParams(format!("bad poset on {k} points: {below:?}")));
    }
    let mut le = vec![vec![false; k]; k];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in below {
        le[i][j] = true;
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if le[i][m] && le[m][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    if (0..k).any(|i| (0..k).any(|j| i != j && le[i][j] && le[j][i])) {
        return Err(Error::BadParams("relation has a cycle".into()));
    }
    let mut downsets: Vec<u32> = (0u32..1 << k)
        .filter(|&s| (0..k).all(|j| s >> j & 1 == 0 || (0..k).all(|i| !le[i][j] || s >> i & 1 == 1)))
        .collect();
    downsets.sort_by_key(|&s| (s.count_ones(), s.reverse_bits()));
    let pos = |s: u32| downsets.iter().position(|&d| d == s).expect("closed under union");
    let table = downsets
        .iter()
        .map(|&a| downsets.iter().map(|&b| pos(a | b)).collect())
        .collect();
    let names = downsets
        .iter()
        .map(|&s| {
            if s == 0 {
                "0".to_string()
            } else {
                (0..k).filter(|i| s >> i & 1 == 1).map(|i| (b'a' + i as u8) as char).collect()
            }
        })
        .collect();
    Ok(Monoid::new(names, table)?)
}

/// `truncated_naturals(k)^d` with `Z/order` acting by the coordinate shift
/// `(c_0, ..., c_{d-1}) ↦ (c_{d-1}, c_0, ..., c_{d-2})`. `order` must be a
/// multiple of `d`.
pub fn shifted_power(k: usize, d: usize, order: usize) -> Result<GammaStructure> {
    let base = k + 1;
    let n = base.checked_pow(d as u32).filter(|&n| n <= crate::monoid::DEFAULT_MAX_SIZE);
    let n = match n {
        Some(n) if d > 0 => n,
        _ => {
            return Err(Error::BadParams(format!(
                "shifted-power({k},{d}) has more than {} elements",
                crate::monoid::DEFAULT_MAX_SIZE
            )))
        }
    };
    if order == 0 || !order.is_multiple_of(d) {
        return Err(Error::BadParams(format!("group order {order} is not a multiple of {d}")));
    }
    let digits = |x: usize| -> Vec<usize> { (0..d).map(|i| x / base.pow(i as u32) % base).collect() };
    let index = |c: &[usize]| -> usize { c.iter().enumerate().map(|(i, &v)| v * base.pow(i as u32)).sum() };
    let table = (0..n)
        .map(|a| {
            let ca = digits(a);
            (0..n)
                .map(|b| {
                    let s: Vec<usize> = ca.iter().zip(digits(b)).map(|(x, y)| (x + y).min(k)).collect();
                    index(&s)
                })
                .collect()
        })
        .collect();
    let names = (0..n)
        .map(|a| {
            if a == 0 {
                "0".to_string()
            } else {
                let c: Vec<String> = digits(a).iter().map(|v| v.to_string()).collect();
                format!("({})", c.join(","))
            }
        })
        .collect();
    let monoid = Monoid::new(names, table)?;
    let shift: Vec<Elem> = (0..n)
        .map(|a| {
            let c = digits(a);
            let s: Vec<usize> = (0..d).map(|i| c[(i + d - 1) % d]).collect();
            index(&s)
        })
        .collect();
    let gs = if d == 1 {
        let rows = vec![(0..n).collect::<Vec<_>>(); order];
        GammaStructure::new(monoid, Group::cyclic(order), rows)
    } else {
        GammaStructure::from_generator_with_order(monoid, &shift, order)
    };
    Ok(gs?)
}

/// A named instance, e.g. `paper-T7`, `truncated-naturals(3)`,
/// `semilattice-from-poset(3: 0<1 0<2)`, `direct-sum(truncated-naturals(1),
/// paper-T7)` or `shifted-power(1,4)` / `shifted-power(1,4,8)`.
///
/// Direct sums carry the trivial action.
pub fn builtin(spec: &str) -> Result<GammaStructure> {
    let spec = spec.trim();
    let (name, args) = match spec.find('(') {
        Some(p) if spec.ends_with(')') => (&spec[..p], Some(&spec[p + 1..spec.len() - 1])),
        Some(_) => return Err(Error::BadParams(format!("unbalanced parentheses in {spec:?}"))),
        None => (spec, None),
    };
    let bad = || Error::BadParams(format!("cannot parse {spec:?}"));
    let numbers = |a: &str| -> Result<Vec<usize>> {
        a.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    };
    match (name.trim(), args) {
        ("paper-T7", None) => Ok(GammaStructure::trivial(t7_monoid())),
        ("truncated-naturals", Some(a)) => match numbers(a)?[..] {
            [k] => Ok(GammaStructure::trivial(truncated_naturals(k)?)),
            _ => Err(bad()),
        },
        ("semilattice-from-poset", Some(a)) => {
            let (k, rel) = a.split_once(':').unwrap_or((a, ""));
            let k = k.trim().parse().map_err(|_| bad())?;
            let pairs = rel
                .split_whitespace()
                .map(|r| {
                    let (i, j) = r.split_once('<').ok_or_else(bad)?;
                    Ok((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GammaStructure::trivial(semilattice_from_poset(k, &pairs)?))
        }
        ("shifted-power", Some(a)) => match numbers(a)?[..] {
            [k, d] => shifted_power(k, d, d),
            [k, d, order] => shifted_power(k, d, order),
            _ => Err(bad()),
        },
        ("direct-sum", Some(a)) => {
            let parts = split_top_level(a);
            let mut acc: Option<Monoid> = None;
            for p in parts {
                let m = builtin(p)?.monoid().clone();
                acc = Some(match acc {
                    None => m,
                    Some(prev) => prev.direct_sum(&m)?,
                });
            }
            acc.map(GammaStructure::trivial).ok_or_else(bad)
        }
        _ => Err(Error::BadParams(format!("unknown builtin {spec:?}"))),
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts.retain(|p| !p.is_empty());
    parts
}

/// Builtin names accepted by [`builtin`], with example parameters.
pub const BUILTIN_EXAMPLES: &[&str] = &[
    "paper-T7",
    "truncated-naturals(3)",
    "semilattice-from-poset(3: 0<1 0<2)",
    "direct-sum(truncated-naturals(1), truncated-naturals(1))",
    "shifted-power(1,4)",
    "shifted-power(1,4,8)",
];

impl fmt::Display for ActionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionSource::Trivial => "trivial",
            ActionSource::Cyclic => "cyclic",
            ActionSource::Full => "full",
        })
    }
}
