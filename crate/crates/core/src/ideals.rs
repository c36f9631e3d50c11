//! Γ-order-ideals: recognition, generation, and the lattice they form.
//!
//! A Γ-order-ideal `I` satisfies `α(a) + β(b) ∈ I ⟺ a, b ∈ I` for all group
//! elements `α, β`. Equivalently it is a submonoid that is closed under the
//! action and hereditary for the algebraic pre-order. [`is_order_ideal`]
//! evaluates both forms and insists they agree.
//!
//! The least ideal is `{x : x <= 0}`, the group of units. In a conical monoid
//! that is `{0}`; in general `{0}` itself is not hereditary, so the lattice
//! bottom (and the first term of every series) is the unit group.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::action::GammaStructure;
use crate::elemset::ElemSet;
use crate::monoid::Monoid;
use crate::{Elem, Error, Limits, Result};

/// Why a set fails to be a Γ-order-ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IdealViolation {
    Empty,
    MissingZero,
    /// `a, b` in the set but `a + b = sum` is not.
    NotClosed { a: Elem, b: Elem, sum: Elem },
    /// `a` in the set but `alpha(a)` is not.
    NotActionClosed { alpha: Elem, a: Elem },
    /// `a + c = b` with `b` in the set and `a` outside.
    NotHereditary { a: Elem, b: Elem, c: Elem },
    /// `alpha(a) + beta(b) = sum`, and membership of `sum` disagrees with
    /// membership of both `a` and `b`.
    Biconditional {
        alpha: Elem,
        beta: Elem,
        a: Elem,
        b: Elem,
        sum: Elem,
        sum_inside: bool,
    },
}

impl fmt::Display for IdealViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealViolation::Empty => write!(f, "empty set"),
            IdealViolation::MissingZero => write!(f, "0 is missing"),
            IdealViolation::NotClosed { a, b, sum } => {
                write!(f, "{a}+{b}={sum} leaves the set")
            }
            IdealViolation::NotActionClosed { alpha, a } => {
                write!(f, "group element {alpha} moves {a} out of the set")
            }
            IdealViolation::NotHereditary { a, b, c } => {
                write!(f, "{a}+{c}={b} is inside but {a} is not")
            }
            IdealViolation::Biconditional {
                alpha,
                beta,
                a,
                b,
                sum,
                sum_inside,
            } => {
                if *sum_inside {
                    write!(f, "^{alpha}{a}+^{beta}{b}={sum} is inside but {a} or {b} is not")
                } else {
                    write!(f, "{a},{b} inside but ^{alpha}{a}+^{beta}{b}={sum} is not")
                }
            }
        }
    }
}

impl IdealViolation {
    /// Like the `Display` form, with element names from `m`.
    pub fn describe(&self, m: &Monoid) -> String {
        let n = |a: &Elem| m.name(*a);
        match self {
            IdealViolation::Empty | IdealViolation::MissingZero => self.to_string(),
            IdealViolation::NotClosed { a, b, sum } => {
                format!("{}+{}={} leaves the set", n(a), n(b), n(sum))
            }
            IdealViolation::NotActionClosed { alpha, a } => {
                format!("group element {alpha} moves {} out of the set", n(a))
            }
            IdealViolation::NotHereditary { a, b, c } => {
                format!("{}+{}={} is inside but {} is not", n(a), n(c), n(b), n(a))
            }
            IdealViolation::Biconditional {
                alpha,
                beta,
                a,
                b,
                sum,
                sum_inside,
            } => {
                if *sum_inside {
                    format!(
                        "^{alpha}{}+^{beta}{}={} is inside but {} or {} is not",
                        n(a),
                        n(b),
                        n(sum),
                        n(a),
                        n(b)
                    )
                } else {
                    format!(
                        "{},{} inside but ^{alpha}{}+^{beta}{}={} is not",
                        n(a),
                        n(b),
                        n(a),
                        n(b),
                        n(sum)
                    )
                }
            }
        }
    }
}

/// Verdicts of both characterizations of Γ-order-ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCheck {
    /// First failure of `α(a)+β(b) ∈ S ⟺ a,b ∈ S` (with `S` nonempty).
    pub biconditional: Option<IdealViolation>,
    /// First failure of: contains 0, closed, action-closed, hereditary.
    pub structural: Option<IdealViolation>,
}

impl IdealCheck {
    pub fn is_ideal(&self) -> bool {
        self.structural.is_none()
    }

    /// The violation to show a user: the structural one, which names the
    /// property that breaks.
    pub fn violation(&self) -> Option<&IdealViolation> {
        self.structural.as_ref().or(self.biconditional.as_ref())
    }
}

/// Evaluates both characterizations of Γ-order-ideal on `s`.
///
/// # Panics
///
/// If the two characterizations disagree, which would contradict their
/// equivalence.
pub fn is_order_ideal(gs: &GammaStructure, s: ElemSet) -> IdealCheck {
    let check = IdealCheck {
        biconditional: biconditional_violation(gs, s),
        structural: structural_violation(gs, s),
    };
    assert_eq!(
        check.biconditional.is_none(),
        check.structural.is_none(),
        "ideal characterizations disagree on {s:?}: {check:?}"
    );
    check
}

pub fn biconditional_violation(gs: &GammaStructure, s: ElemSet) -> Option<IdealViolation> {
    if s.is_empty() {
        return Some(IdealViolation::Empty);
    }
    let m = gs.monoid();
    let n = gs.size();
    let g = gs.group().order();
    for alpha in 0..g {
        for beta in 0..g {
            for a in 0..n {
                for b in 0..n {
                    let sum = m.add(gs.act(alpha, a), gs.act(beta, b));
                    let sum_inside = s.contains(sum);
                    if sum_inside != (s.contains(a) && s.contains(b)) {
                        return Some(IdealViolation::Biconditional {
                            alpha,
                            beta,
                            a,
                            b,
                            sum,
                            sum_inside,
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn structural_violation(gs: &GammaStructure, s: ElemSet) -> Option<IdealViolation> {
    let m = gs.monoid();
    if s.is_empty() {
        return Some(IdealViolation::Empty);
    }
    if !s.contains(0) {
        return Some(IdealViolation::MissingZero);
    }
    for a in s.iter() {
        for b in s.iter() {
            let sum = m.add(a, b);
            if !s.contains(sum) {
                return Some(IdealViolation::NotClosed { a, b, sum });
            }
        }
    }
    for alpha in 0..gs.group().order() {
        for a in s.iter() {
            if !s.contains(gs.act(alpha, a)) {
                return Some(IdealViolation::NotActionClosed { alpha, a });
            }
        }
    }
    for b in s.iter() {
        if let Some(a) = m.below(b).difference(s).min() {
            let c = m.leq(a, b).expect("a <= b");
            return Some(IdealViolation::NotHereditary { a, b, c });
        }
    }
    None
}

/// First `(x, y)` with `x, x+y ∈ s` and `y ∉ s`.
pub fn normality_violation(m: &Monoid, s: ElemSet) -> Option<(Elem, Elem)> {
    for x in s.iter() {
        for y in 0..m.size() {
            if s.contains(m.add(x, y)) && !s.contains(y) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_normal(m: &Monoid, s: ElemSet) -> bool {
    normality_violation(m, s).is_none()
}

/// A verified Γ-order-ideal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ideal(ElemSet);

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.0)
    }
}

impl Ideal {
    /// Checks `s` and wraps it.
    pub fn verify(gs: &GammaStructure, s: ElemSet) -> Result<Ideal> {
        match is_order_ideal(gs, s).structural {
            None => Ok(Ideal(s)),
            Some(violation) => Err(Error::NotAnIdeal {
                elements: s.to_vec(),
                violation,
            }),
        }
    }

    /// Wraps a set known to be an ideal by construction.
    pub(crate) fn trusted(s: ElemSet) -> Ideal {
        Ideal(s)
    }

    pub fn elements(self) -> ElemSet {
        self.0
    }

    pub fn contains(self, a: Elem) -> bool {
        self.0.contains(a)
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn to_vec(self) -> Vec<Elem> {
        self.0.to_vec()
    }

    pub fn is_subset(self, other: Ideal) -> bool {
        self.0.is_subset(other.0)
    }
}

/// The smallest Γ-order-ideal containing `seed`.
pub fn generated_ideal(gs: &GammaStructure, seed: ElemSet) -> Ideal {
    let m = gs.monoid();
    let mut s = seed.union(ElemSet::singleton(0));
    loop {
        let closed = m.down_closure(gs.action_closure(s));
        let next = closed.union(m.sum_set(closed, closed));
        if next == s {
            return Ideal(s);
        }
        s = next;
    }
}

/// `{x : x <= k·σ for some k >= 1}` where `σ` is the sum of the orbit images
/// of `a` over the whole group. This is the ideal generated by `a`.
pub fn principal_ideal_formula(gs: &GammaStructure, a: Elem) -> ElemSet {
    let m = gs.monoid();
    let sigma = gs.orbit_sum(a);
    let mut out = ElemSet::EMPTY;
    let mut seen = ElemSet::EMPTY;
    let mut multiple = sigma;
    while seen.insert(multiple) {
        out = out.union(m.below(multiple));
        multiple = m.add(multiple, sigma);
    }
    out
}

/// `{x : x <= σ}` for the orbit sum `σ` of `a`, without taking multiples.
/// Agrees with the generated ideal only when that down-set is closed under
/// addition (e.g. when `σ` is idempotent).
pub fn orbit_sum_downset(gs: &GammaStructure, a: Elem) -> ElemSet {
    gs.monoid().below(gs.orbit_sum(a))
}

/// Elementwise sum `A + B` and its ideal verdict.
///
/// # Panics
///
/// If the monoid is a refinement monoid and the sum fails to be an ideal.
pub fn ideal_sum(gs: &GammaStructure, a: Ideal, b: Ideal) -> (ElemSet, IdealCheck) {
    let sum = gs.monoid().sum_set(a.0, b.0);
    let check = is_order_ideal(gs, sum);
    if gs.monoid().is_refinement() {
        assert!(
            check.is_ideal(),
            "sum of ideals {a:?} + {b:?} is not an ideal in a refinement monoid"
        );
    }
    (sum, check)
}

/// `A + B` as an ideal; requires the result to be one.
pub fn ideal_sum_checked(gs: &GammaStructure, a: Ideal, b: Ideal) -> Result<Ideal> {
    let (sum, check) = ideal_sum(gs, a, b);
    match check.structural {
        None => Ok(Ideal(sum)),
        Some(violation) => Err(Error::NotAnIdeal {
            elements: sum.to_vec(),
            violation,
        }),
    }
}

/// `A ∩ B`, which is always an ideal.
///
/// # Panics
///
/// If the intersection fails the ideal check.
pub fn ideal_intersect(gs: &GammaStructure, a: Ideal, b: Ideal) -> Ideal {
    let meet = a.0.intersection(b.0);
    assert!(
        is_order_ideal(gs, meet).is_ideal(),
        "intersection {meet:?} is not an ideal"
    );
    Ideal(meet)
}

/// The least ideal, `{x : x <= 0}`.
pub fn zero_ideal(gs: &GammaStructure) -> Ideal {
    generated_ideal(gs, ElemSet::EMPTY)
}

/// Whether `k` is a Γ-order-ideal of the Γ-monoid `j` (both subsets of `gs`).
pub fn is_ideal_of_ideal(gs: &GammaStructure, j: Ideal, k: ElemSet) -> Result<bool> {
    if !k.is_subset(j.0) {
        return Ok(false);
    }
    let sub = gs.restrict(j.0)?;
    Ok(is_order_ideal(&sub.structure, sub.pull(k)).is_ideal())
}

/// All Γ-order-ideals with their inclusion covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealLattice {
    ideals: Vec<Ideal>,
    covers: Vec<(usize, usize)>,
}

impl IdealLattice {
    /// Ideals sorted by size, then lexicographically.
    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    /// Pairs `(i, j)` where `ideals[j]` covers `ideals[i]`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn bottom(&self) -> Ideal {
        self.ideals[0]
    }

    pub fn top(&self) -> Ideal {
        *self.ideals.last().expect("nonempty lattice")
    }

    pub fn position(&self, s: ElemSet) -> Option<usize> {
        self.ideals.iter().position(|i| i.0 == s)
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.covers.contains(&(i, j))
    }

    pub fn upper_covers(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.0 == i).map(|c| c.1)
    }

    pub fn lower_covers(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.1 == j).map(|c| c.0)
    }

    /// Ideals covering the bottom: the minimal nonzero ideals.
    pub fn atoms(&self) -> Vec<Ideal> {
        self.upper_covers(0).map(|j| self.ideals[j]).collect()
    }

    /// Number of proper inclusions in the longest chain.
    pub fn height(&self) -> usize {
        let mut longest = vec![0usize; self.ideals.len()];
        // sorted by size, so every cover goes forward
        for j in 0..self.ideals.len() {
            for i in self.lower_covers(j) {
                longest[j] = longest[j].max(longest[i] + 1);
            }
        }
        longest.last().copied().unwrap_or(0)
    }

    /// All maximal chains from bottom to top, as index lists.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![0];
        self.extend_chains(&mut path, &mut out);
        out
    }

    fn extend_chains(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("nonempty");
        if last == self.ideals.len() - 1 {
            out.push(path.clone());
            return;
        }
        let ups: Vec<usize> = self.upper_covers(last).collect();
        for j in ups {
            path.push(j);
            self.extend_chains(path, out);
            path.pop();
        }
    }

    fn from_ideals(mut ideals: Vec<Ideal>) -> Self {
        ideals.sort_by(|a, b| a.0.size_lex_cmp(b.0));
        ideals.dedup();
        let k = ideals.len();
        let mut covers = Vec::new();
        for j in 0..k {
            for i in 0..j {
                if !ideals[i].0.is_proper_subset(ideals[j].0) {
                    continue;
                }
                let between = (i + 1..j).any(|t| {
                    ideals[i].0.is_proper_subset(ideals[t].0)
                        && ideals[t].0.is_proper_subset(ideals[j].0)
                });
                if !between {
                    covers.push((i, j));
                }
            }
        }
        covers.sort();
        IdealLattice { ideals, covers }
    }
}

/// The lattice of all Γ-order-ideals, found by closing the principal ideals
/// under joins (every ideal is the join of the principal ideals below it).
pub fn all_order_ideals(gs: &GammaStructure) -> IdealLattice {
    let n = gs.size();
    let principals: Vec<ElemSet> = (0..n)
        .map(|a| generated_ideal(gs, ElemSet::singleton(a)).0)
        .collect();
    let bottom = zero_ideal(gs).0;
    let mut seen: HashSet<ElemSet> = HashSet::from([bottom]);
    let mut queue = vec![bottom];
    while let Some(current) = queue.pop() {
        for &p in &principals {
            if p.is_subset(current) {
                continue;
            }
            let joined = generated_ideal(gs, current.union(p)).0;
            if seen.insert(joined) {
                queue.push(joined);
            }
        }
    }
    IdealLattice::from_ideals(seen.into_iter().map(Ideal).collect())
}

/// Ground truth: every subset of the carrier that passes the ideal test.
pub fn all_order_ideals_exhaustive(gs: &GammaStructure, limits: &Limits) -> Result<IdealLattice> {
    let n = gs.size();
    if n > limits.max_exhaustive_ideals {
        return Err(Error::SizeLimit {
            what: "exhaustive ideal filter",
            size: n,
            limit: limits.max_exhaustive_ideals,
        });
    }
    let m = gs.monoid();
    let orbits: Vec<ElemSet> = (0..n).map(|a| gs.orbit(a)).collect();
    let mut found = Vec::new();
    for bits in 0u128..(1u128 << n) {
        let s = ElemSet::from_bits(bits);
        if !s.contains(0) {
            continue;
        }
        let ok = s.iter().all(|b| {
            m.below(b).is_subset(s)
                && orbits[b].is_subset(s)
                && s.iter().all(|a| s.contains(m.add(a, b)))
        });
        if ok {
            found.push(Ideal(s));
        }
    }
    Ok(IdealLattice::from_ideals(found))
}

/// Whether the Γ-monoid has no ideals besides the least one and itself.
/// A one-element monoid counts as simple.
pub fn is_simple(gs: &GammaStructure) -> bool {
    all_order_ideals(gs).len() <= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::{b2, b2_swap};
    use crate::monoid::tests::t7;

    fn set(v: &[Elem]) -> ElemSet {
        v.iter().copied().collect()
    }

    // 0,1,x,y,z,s,b
    const A: [Elem; 3] = [0, 1, 2];
    const B: [Elem; 3] = [0, 3, 4];

    fn t7g() -> GammaStructure {
        GammaStructure::trivial(t7())
    }

    #[test]
    fn t7_ideals_a_and_b() {
        let gs = t7g();
        assert!(is_order_ideal(&gs, set(&A)).is_ideal());
        assert!(is_order_ideal(&gs, set(&B)).is_ideal());
        assert!(is_order_ideal(&gs, gs.monoid().all()).is_ideal());
    }

    #[test]
    fn t7_sum_is_not_an_ideal() {
        let gs = t7g();
        let a = Ideal::verify(&gs, set(&A)).unwrap();
        let b = Ideal::verify(&gs, set(&B)).unwrap();
        let (sum, check) = ideal_sum(&gs, a, b);
        assert_eq!(sum.to_vec(), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(
            check.structural,
            Some(IdealViolation::NotHereditary { a: 6, b: 5, c: 6 })
        );
        assert_eq!(
            check.biconditional,
            Some(IdealViolation::Biconditional {
                alpha: 0,
                beta: 0,
                a: 6,
                b: 6,
                sum: 5,
                sum_inside: true
            })
        );
        let zero = zero_ideal(&gs);
        let (s, c) = ideal_sum(&gs, a, zero);
        assert_eq!(s, a.elements());
        assert!(c.is_ideal());
    }

    #[test]
    fn b2_sum_of_coordinate_ideals() {
        let gs = GammaStructure::trivial(b2());
        let l = Ideal::verify(&gs, set(&[0, 1])).unwrap();
        let r = Ideal::verify(&gs, set(&[0, 2])).unwrap();
        let (sum, check) = ideal_sum(&gs, l, r);
        assert_eq!(sum, gs.monoid().all());
        assert!(check.is_ideal());
    }

    #[test]
    fn intersections() {
        let gs = t7g();
        let a = Ideal::verify(&gs, set(&A)).unwrap();
        let b = Ideal::verify(&gs, set(&B)).unwrap();
        let t = Ideal::verify(&gs, gs.monoid().all()).unwrap();
        assert_eq!(ideal_intersect(&gs, a, b).to_vec(), vec![0]);
        assert_eq!(ideal_intersect(&gs, a, a), a);
        assert_eq!(ideal_intersect(&gs, a, t), a);
    }

    #[test]
    fn normality() {
        let m = t7();
        assert!(is_normal(&m, set(&A)));
        assert!(is_normal(&m, set(&[0])));
        // {0,1}: submonoid, and x,x+y in {0,1} forces y in {0,1}: 1+x = 1
        // gives the counterexample (1, x)
        assert_eq!(normality_violation(&m, set(&[0, 1])), Some((1, 2)));
    }

    #[test]
    fn generation() {
        let gs = t7g();
        assert_eq!(generated_ideal(&gs, set(&[5])).elements(), gs.monoid().all());
        assert_eq!(generated_ideal(&gs, ElemSet::EMPTY).to_vec(), vec![0]);
        assert_eq!(generated_ideal(&gs, set(&[0])).to_vec(), vec![0]);
        assert_eq!(generated_ideal(&gs, set(&[1])).to_vec(), A.to_vec());
        for a in 0..7 {
            assert_eq!(
                generated_ideal(&gs, ElemSet::singleton(a)).elements(),
                principal_ideal_formula(&gs, a)
            );
        }
    }

    #[test]
    fn orbit_sum_downset_needs_multiples() {
        // {0,1,2} with a+b = min(a+b, 2): the down-set of 1 misses 1+1 = 2
        let m = Monoid::from_table(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]).unwrap();
        let gs = GammaStructure::trivial(m);
        assert_eq!(orbit_sum_downset(&gs, 1).to_vec(), vec![0, 1]);
        assert_eq!(generated_ideal(&gs, ElemSet::singleton(1)).to_vec(), vec![0, 1, 2]);
        assert_eq!(principal_ideal_formula(&gs, 1).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn lattices() {
        let gs = t7g();
        let lat = all_order_ideals(&gs);
        let got: Vec<Vec<Elem>> = lat.ideals().iter().map(|i| i.to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![0], A.to_vec(), B.to_vec(), vec![0, 1, 2, 3, 4, 5, 6]]
        );
        assert_eq!(lat.covers(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(lat, all_order_ideals_exhaustive(&gs, &Limits::default()).unwrap());
        assert_eq!(lat.atoms().len(), 2);
        assert_eq!(lat.height(), 2);
        assert!(!is_simple(&gs));

        let triv = GammaStructure::trivial(Monoid::trivial());
        assert_eq!(all_order_ideals(&triv).len(), 1);
        assert!(is_simple(&triv));

        let swap = b2_swap();
        let lat = all_order_ideals(&swap);
        assert_eq!(lat.len(), 2);
        assert!(is_simple(&swap));
        assert_eq!(lat.atoms(), vec![lat.top()]);

        let plain = GammaStructure::trivial(b2());
        let lat = all_order_ideals(&plain);
        assert_eq!(
            lat.atoms().iter().map(|i| i.to_vec()).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![0, 2]]
        );
        assert!(!is_simple(&plain));
    }

    #[test]
    fn units_form_the_bottom() {
        let z2 = GammaStructure::trivial(Monoid::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap());
        assert!(!is_order_ideal(&z2, set(&[0])).is_ideal());
        let lat = all_order_ideals(&z2);
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.bottom().to_vec(), vec![0, 1]);
        assert!(is_simple(&z2));
    }

    #[test]
    fn exhaustive_filter_size_limit() {
        let gs = t7g();
        let limits = Limits {
            max_exhaustive_ideals: 5,
            ..Limits::default()
        };
        assert!(matches!(
            all_order_ideals_exhaustive(&gs, &limits),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn empty_set_is_never_an_ideal() {
        let check = is_order_ideal(&t7g(), ElemSet::EMPTY);
        assert_eq!(check.structural, Some(IdealViolation::Empty));
        assert_eq!(check.biconditional, Some(IdealViolation::Empty));
    }
}
