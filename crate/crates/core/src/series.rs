//! Γ-series, composition series and the Jordan-Hölder machinery.
//!
//! A series runs from the least ideal (the units, which is `{0}` in a
//! conical monoid) up to the whole monoid.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::action::GammaStructure;
use crate::elemset::ElemSet;
use crate::ideals::{
    all_order_ideals, ideal_intersect, ideal_sum_checked, is_order_ideal, is_simple, zero_ideal, Ideal,
    IdealLattice, IdealViolation,
};
use crate::iso::{canonical_form, find_gamma_isomorphism, CanonicalKey};
use crate::quotient::{quotient, quotient_of_ideals};
use crate::theorems::require_refinement;
use crate::{Elem, Error, Limits, Result};

/// Why a chain is not a Γ-series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeriesViolation {
    Empty,
    BadStart { found: Vec<Elem>, expected: Vec<Elem> },
    BadEnd { found: Vec<Elem> },
    NotIdeal { position: usize, violation: IdealViolation },
    NotIncreasing { position: usize },
}

impl fmt::Display for SeriesViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesViolation::Empty => write!(f, "empty chain"),
            SeriesViolation::BadStart { found, expected } => {
                write!(f, "starts at {found:?} instead of {expected:?}")
            }
            SeriesViolation::BadEnd { found } => write!(f, "ends at {found:?}, not the whole monoid"),
            SeriesViolation::NotIdeal { position, violation } => {
                write!(f, "term {position} is not an ideal: {violation}")
            }
            SeriesViolation::NotIncreasing { position } => {
                write!(f, "term {position} does not contain term {}", position - 1)
            }
        }
    }
}

/// First reason `chain` fails to be a Γ-series, if any.
pub fn series_violation(gs: &GammaStructure, chain: &[ElemSet]) -> Option<SeriesViolation> {
    let (first, last) = match (chain.first(), chain.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => return Some(SeriesViolation::Empty),
    };
    let bottom = zero_ideal(gs).elements();
    if first != bottom {
        return Some(SeriesViolation::BadStart {
            found: first.to_vec(),
            expected: bottom.to_vec(),
        });
    }
    if last != gs.monoid().all() {
        return Some(SeriesViolation::BadEnd { found: last.to_vec() });
    }
    for (position, &s) in chain.iter().enumerate() {
        if let Some(violation) = is_order_ideal(gs, s).violation() {
            return Some(SeriesViolation::NotIdeal {
                position,
                violation: violation.clone(),
            });
        }
        if position > 0 && !chain[position - 1].is_subset(s) {
            return Some(SeriesViolation::NotIncreasing { position });
        }
    }
    None
}

pub fn is_gamma_series(gs: &GammaStructure, chain: &[ElemSet]) -> bool {
    series_violation(gs, chain).is_none()
}

/// A verified Γ-series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    chain: Vec<Ideal>,
}

impl Series {
    pub fn new(gs: &GammaStructure, chain: Vec<ElemSet>) -> Result<Self> {
        if let Some(v) = series_violation(gs, &chain) {
            return Err(Error::NotGammaSeries(v.to_string()));
        }
        Ok(Series {
            chain: chain.into_iter().map(Ideal::trusted).collect(),
        })
    }

    pub fn terms(&self) -> &[Ideal] {
        &self.chain
    }

    pub fn sets(&self) -> Vec<ElemSet> {
        self.chain.iter().map(|i| i.elements()).collect()
    }

    /// Number of proper inclusions.
    pub fn length(&self) -> usize {
        self.chain.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// The same series with repeated terms removed.
    pub fn collapsed(&self) -> Series {
        let mut chain = self.chain.clone();
        chain.dedup();
        Series { chain }
    }

    /// The strict steps `(lower, upper)`.
    pub fn steps(&self) -> Vec<(Ideal, Ideal)> {
        self.chain
            .windows(2)
            .filter(|w| w[0] != w[1])
            .map(|w| (w[0], w[1]))
            .collect()
    }

    /// Quotients `I_{k+1} / I_k` over the strict steps.
    pub fn factors(&self, gs: &GammaStructure) -> Result<Vec<GammaStructure>> {
        self.steps()
            .into_iter()
            .map(|(lo, hi)| Ok(quotient_of_ideals(gs, hi, lo)?.quotient))
            .collect()
    }

    /// First step whose quotient is not simple, or a repeated term.
    pub fn composition_violation(&self, gs: &GammaStructure) -> Result<Option<String>> {
        if let Some(k) = self.chain.windows(2).position(|w| w[0] == w[1]) {
            return Ok(Some(format!("terms {k} and {} are equal", k + 1)));
        }
        for (k, f) in self.factors(gs)?.iter().enumerate() {
            if !is_simple(f) {
                return Ok(Some(format!("factor {k} is not simple")));
            }
        }
        Ok(None)
    }

    pub fn is_composition_series(&self, gs: &GammaStructure) -> Result<bool> {
        Ok(self.composition_violation(gs)?.is_none())
    }

    fn require_composition(&self, gs: &GammaStructure) -> Result<()> {
        match self.composition_violation(gs)? {
            None => Ok(()),
            Some(why) => Err(Error::NotCompositionSeries(why)),
        }
    }
}

/// Type of a simple Γ-monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeTag {
    Cyclic,
    Comparable,
    Noncomparable,
    Unclassified,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::Cyclic => "cyclic",
            TypeTag::Comparable => "comparable",
            TypeTag::Noncomparable => "noncomparable",
            TypeTag::Unclassified => "unclassified",
        })
    }
}

/// Type of a composition series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesType {
    /// All factors share the tag. A series with no factors is `Uniform`
    /// of the tag of the trivial monoid.
    Uniform(TypeTag),
    /// Tag of each factor, in order.
    Mixed(Vec<TypeTag>),
}

impl fmt::Display for SeriesType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesType::Uniform(t) => write!(f, "{t}"),
            SeriesType::Mixed(ts) => {
                write!(f, "mixed(")?;
                for (k, t) in ts.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Classifies a simple Γ-monoid. Group elements range over the
/// non-identity ones and units are skipped. The tests are tried in the
/// order cyclic, comparable, noncomparable.
///
/// * cyclic: every `x` is fixed by some `α ≠ 0`;
/// * comparable: every `x` has some `α ≠ 0` with `αx > x`;
/// * noncomparable: `αx ∥ x` for every `x` and every `α ≠ 0`.
///
/// With a trivial group only the last one can hold.
pub fn classify_simple(gs: &GammaStructure) -> TypeTag {
    let m = gs.monoid();
    let units = m.units();
    let xs: Vec<Elem> = (0..gs.size()).filter(|&x| !units.contains(x)).collect();
    let alphas = 1..gs.group().order();
    let strictly_above = |x: Elem, y: Elem| m.is_leq(x, y) && !m.is_leq(y, x);
    if xs
        .iter()
        .all(|&x| alphas.clone().any(|a| gs.act(a, x) == x))
    {
        TypeTag::Cyclic
    } else if xs
        .iter()
        .all(|&x| alphas.clone().any(|a| strictly_above(x, gs.act(a, x))))
    {
        TypeTag::Comparable
    } else if xs
        .iter()
        .all(|&x| alphas.clone().all(|a| m.incomparable(gs.act(a, x), x)))
    {
        TypeTag::Noncomparable
    } else {
        TypeTag::Unclassified
    }
}

/// Isomorphism class of a simple factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorDescriptor {
    pub key: CanonicalKey,
    pub size: usize,
    pub tag: TypeTag,
}

impl FactorDescriptor {
    pub fn of(factor: &GammaStructure, limits: &Limits) -> Result<Self> {
        Ok(FactorDescriptor {
            key: canonical_form(factor, limits)?,
            size: factor.size(),
            tag: classify_simple(factor),
        })
    }
}

impl PartialOrd for FactorDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FactorDescriptor {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.size, &self.key).cmp(&(other.size, &other.key))
    }
}

pub fn classify_series(gs: &GammaStructure, series: &Series) -> Result<SeriesType> {
    series.require_composition(gs)?;
    let tags: Vec<TypeTag> = series.factors(gs)?.iter().map(classify_simple).collect();
    Ok(match tags.first() {
        None => SeriesType::Uniform(classify_simple(gs)),
        Some(&t) if tags.iter().all(|&u| u == t) => SeriesType::Uniform(t),
        Some(_) => SeriesType::Mixed(tags),
    })
}

fn series_of(lattice: &IdealLattice, chain: &[usize]) -> Series {
    Series {
        chain: chain.iter().map(|&k| lattice.ideals()[k]).collect(),
    }
}

/// Every composition series, one per maximal chain of the ideal lattice.
///
/// # Panics
///
/// If for some pair `I ⊊ J` of ideals the quotient `J/I` is simple but `J`
/// does not cover `I`, or the other way round.
pub fn all_composition_series(gs: &GammaStructure) -> Result<Vec<Series>> {
    let lattice = all_order_ideals(gs);
    let ideals = lattice.ideals();
    for (j, &hi) in ideals.iter().enumerate() {
        for (i, &lo) in ideals.iter().enumerate().take(j) {
            if !lo.elements().is_proper_subset(hi.elements()) {
                continue;
            }
            let simple = is_simple(&quotient_of_ideals(gs, hi, lo)?.quotient);
            assert_eq!(
                simple,
                lattice.is_cover(i, j),
                "{:?}/{:?}: simple quotient and cover disagree",
                hi.to_vec(),
                lo.to_vec()
            );
        }
    }
    Ok(lattice
        .maximal_chains()
        .iter()
        .map(|c| series_of(&lattice, c))
        .collect())
}

/// A composition series built from the top by repeatedly taking the
/// maximal proper ideal with the lexicographically least element set.
pub fn one_composition_series(gs: &GammaStructure) -> Series {
    let lattice = all_order_ideals(gs);
    let mut chain = vec![lattice.len() - 1];
    while *chain.last().expect("nonempty") != 0 {
        let current = *chain.last().expect("nonempty");
        let next = lattice
            .lower_covers(current)
            .min_by(|&a, &b| {
                lattice.ideals()[a]
                    .elements()
                    .lex_cmp(lattice.ideals()[b].elements())
            })
            .expect("a non-bottom ideal has a lower cover");
        chain.push(next);
    }
    chain.reverse();
    series_of(&lattice, &chain)
}

/// Matching of two factor lists under Γ-isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `pairing[k]` is the factor of the second series matched with factor
    /// `k` of the first, when equivalent.
    pub pairing: Vec<usize>,
    /// The isomorphism for each matched pair.
    pub isomorphisms: Vec<Vec<Elem>>,
}

/// Greedy matching of factors, which is exact because Γ-isomorphism is an
/// equivalence relation.
pub fn match_factors(
    left: &[GammaStructure],
    right: &[GammaStructure],
    limits: &Limits,
) -> Result<Equivalence> {
    let fail = Equivalence {
        equivalent: false,
        pairing: Vec::new(),
        isomorphisms: Vec::new(),
    };
    if left.len() != right.len() {
        return Ok(fail);
    }
    let mut used = vec![false; right.len()];
    let mut pairing = Vec::new();
    let mut isomorphisms = Vec::new();
    for f in left {
        let mut found = None;
        for (k, g) in right.iter().enumerate() {
            if used[k] {
                continue;
            }
            if let Some(iso) = find_gamma_isomorphism(f, g, limits)? {
                found = Some((k, iso));
                break;
            }
        }
        match found {
            Some((k, iso)) => {
                used[k] = true;
                pairing.push(k);
                isomorphisms.push(iso);
            }
            None => return Ok(fail),
        }
    }
    Ok(Equivalence {
        equivalent: true,
        pairing,
        isomorphisms,
    })
}

/// Whether two composition series have Γ-isomorphic factors up to order.
pub fn series_equivalent(gs: &GammaStructure, s1: &Series, s2: &Series, limits: &Limits) -> Result<Equivalence> {
    s1.require_composition(gs)?;
    s2.require_composition(gs)?;
    match_factors(&s1.factors(gs)?, &s2.factors(gs)?, limits)
}

/// Factor descriptors of a composition series, sorted.
pub fn factor_multiset(gs: &GammaStructure, series: &Series, limits: &Limits) -> Result<Vec<FactorDescriptor>> {
    let mut out = series
        .factors(gs)?
        .iter()
        .map(|f| FactorDescriptor::of(f, limits))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// The sorted factor multiset of [`one_composition_series`].
///
/// # Panics
///
/// In a refinement monoid, if some other composition series has a
/// different factor multiset.
pub fn jordan_holder_factors(gs: &GammaStructure, limits: &Limits) -> Result<Vec<FactorDescriptor>> {
    let factors = factor_multiset(gs, &one_composition_series(gs), limits)?;
    if gs.monoid().is_refinement() {
        for s in all_composition_series(gs)? {
            assert_eq!(
                factor_multiset(gs, &s, limits)?,
                factors,
                "composition series {:?} has different factors",
                s.sets()
            );
        }
    }
    Ok(factors)
}

/// One positional pair of the Schreier refinements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPair {
    pub i: usize,
    pub j: usize,
    /// `G(i, j) ⊆ G(i, j+1)`.
    pub first: (ElemSet, ElemSet),
    /// `H(j, i) ⊆ H(j, i+1)`.
    pub second: (ElemSet, ElemSet),
    pub isomorphism: Option<Vec<Elem>>,
}

impl FactorPair {
    pub fn is_trivial(&self) -> bool {
        self.first.0 == self.first.1 && self.second.0 == self.second.1
    }
}

/// Schreier refinements of two series with the factor pairing.
#[derive(Debug, Clone)]
pub struct SchreierRefinement {
    /// `G(i, j) = G_i + (G_{i+1} ∩ H_j)`, `i` outer, `j` inner; `n·m + 1`
    /// terms before repeated terms are removed.
    pub first: Series,
    /// `H(j, i) = H_j + (H_{j+1} ∩ G_i)`, `j` outer, `i` inner.
    pub second: Series,
    pub pairs: Vec<FactorPair>,
    /// Pairs dropped because both sides were trivial.
    pub collapsed: usize,
}

impl SchreierRefinement {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(|p| p.isomorphism.is_some())
            && self.first.collapsed().length() == self.second.collapsed().length()
    }
}

fn interleave(gs: &GammaStructure, outer: &[Ideal], inner: &[Ideal]) -> Result<Vec<Vec<Ideal>>> {
    let mut grid = Vec::new();
    for i in 0..outer.len() - 1 {
        let mut row = Vec::new();
        for &h in inner {
            row.push(ideal_sum_checked(gs, outer[i], ideal_intersect(gs, outer[i + 1], h))?);
        }
        grid.push(row);
    }
    Ok(grid)
}

/// Refines two Γ-series of a refinement Γ-monoid to series whose factors
/// correspond, and checks each correspondence by isomorphism search.
pub fn schreier_refinement(
    gs: &GammaStructure,
    s1: &Series,
    s2: &Series,
    limits: &Limits,
) -> Result<SchreierRefinement> {
    require_refinement(gs)?;
    let (g, h) = (s1.terms(), s2.terms());
    let (n, m) = (g.len() - 1, h.len() - 1);
    let gg = interleave(gs, g, h)?;
    let hh = interleave(gs, h, g)?;

    let flatten = |grid: &Vec<Vec<Ideal>>, inner: usize| {
        let mut chain = vec![grid.first().map_or(g[0], |r| r[0]).elements()];
        for row in grid {
            chain.extend(row[1..=inner].iter().map(|i| i.elements()));
        }
        chain
    };
    let mut first_chain = flatten(&gg, m);
    let mut second_chain = flatten(&hh, n);
    if n == 0 {
        first_chain = vec![g[0].elements()];
    }
    if m == 0 {
        second_chain = vec![h[0].elements()];
    }
    let first = Series::new(gs, first_chain)?;
    let second = Series::new(gs, second_chain)?;

    let mut pairs = Vec::new();
    let mut collapsed = 0;
    for i in 0..n {
        for j in 0..m {
            let (a0, a1) = (gg[i][j], gg[i][j + 1]);
            let (b0, b1) = (hh[j][i], hh[j][i + 1]);
            let mut pair = FactorPair {
                i,
                j,
                first: (a0.elements(), a1.elements()),
                second: (b0.elements(), b1.elements()),
                isomorphism: None,
            };
            if pair.is_trivial() {
                collapsed += 1;
                continue;
            }
            let left = quotient_of_ideals(gs, a1, a0)?.quotient;
            let right = quotient_of_ideals(gs, b1, b0)?.quotient;
            pair.isomorphism = find_gamma_isomorphism(&left, &right, limits)?;
            pairs.push(pair);
        }
    }
    Ok(SchreierRefinement {
        first,
        second,
        pairs,
        collapsed,
    })
}

/// Finite chain conditions read off the ideal lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainConditionReport {
    /// Longest strict chain of ideals.
    pub height: usize,
    pub noetherian: bool,
    pub artinian: bool,
    pub composition_series: usize,
    pub shortest_composition: usize,
    pub longest_composition: usize,
}

impl ChainConditionReport {
    /// A composition series exists, all have the same length, and that
    /// length bounds every Γ-series.
    pub fn holds(&self) -> bool {
        self.composition_series > 0
            && self.shortest_composition == self.height
            && self.longest_composition == self.height
    }
}

pub fn chain_condition_report(gs: &GammaStructure) -> Result<ChainConditionReport> {
    let lattice = all_order_ideals(gs);
    let lengths: Vec<usize> = lattice.maximal_chains().iter().map(|c| c.len() - 1).collect();
    Ok(ChainConditionReport {
        height: lattice.height(),
        noetherian: true,
        artinian: true,
        composition_series: lengths.len(),
        shortest_composition: lengths.iter().copied().min().unwrap_or(0),
        longest_composition: lengths.iter().copied().max().unwrap_or(0),
    })
}

/// Splicing series of `I` and `T/I`, and restricting series of `T` to `I`.
#[derive(Debug, Clone)]
pub struct SplitReport {
    /// Composition series of `I` followed by preimages of one of `T/I`.
    pub spliced: Vec<ElemSet>,
    pub splice_violation: Option<String>,
    /// For each composition series of `T`, its intersection with `I` with
    /// repeats removed, and why that fails to be a composition series of `I`.
    pub restrictions: Vec<(Vec<ElemSet>, Option<String>)>,
}

impl SplitReport {
    pub fn holds(&self) -> bool {
        self.splice_violation.is_none() && self.restrictions.iter().all(|r| r.1.is_none())
    }
}

fn violation_of(gs: &GammaStructure, chain: Vec<ElemSet>) -> Result<Option<String>> {
    match Series::new(gs, chain) {
        Ok(s) => s.composition_violation(gs),
        Err(e) => Ok(Some(e.to_string())),
    }
}

pub fn split_and_reassemble(gs: &GammaStructure, i: Ideal) -> Result<SplitReport> {
    let sub = gs.restrict(i.elements())?;
    let inner: Vec<ElemSet> = one_composition_series(&sub.structure)
        .sets()
        .into_iter()
        .map(|s| sub.push(s))
        .collect();
    let q = quotient(gs, i)?;
    let outer: Vec<ElemSet> = one_composition_series(&q.quotient)
        .sets()
        .into_iter()
        .map(|s| q.classes.preimage(s))
        .collect();
    let mut spliced = inner;
    spliced.extend(outer.into_iter().skip(1));
    let splice_violation = violation_of(gs, spliced.clone())?;

    let mut restrictions = Vec::new();
    for s in all_composition_series(gs)? {
        let mut chain: Vec<ElemSet> = s.sets().iter().map(|t| sub.pull(t.intersection(i.elements()))).collect();
        chain.dedup();
        let why = violation_of(&sub.structure, chain.clone())?;
        restrictions.push((chain.into_iter().map(|t| sub.push(t)).collect(), why));
    }
    Ok(SplitReport {
        spliced,
        splice_violation,
        restrictions,
    })
}

/// Partial sums of distinct atoms, checked against the atoms.
#[derive(Debug, Clone)]
pub struct MinimalIdealSeries {
    /// The sum of the atoms, as a Γ-monoid.
    pub sum: ElemSet,
    /// `U ⊆ I_1 ⊆ I_1 + I_2 ⊆ ...`, in the indices of `gs`.
    pub chain: Vec<ElemSet>,
    pub composition_violation: Option<String>,
    /// For each step, an isomorphism from the factor onto `I_t / U`, where
    /// `U` is the least ideal.
    pub isomorphisms: Vec<Option<Vec<Elem>>>,
    pub tag: SeriesType,
}

impl MinimalIdealSeries {
    pub fn holds(&self) -> bool {
        self.composition_violation.is_none() && self.isomorphisms.iter().all(Option::is_some)
    }
}

/// The series `U ⊊ I_1 ⊊ I_1 + I_2 ⊊ ...` of the Γ-monoid `I_1 + ... + I_k`
/// for distinct atoms `I_t` of a refinement Γ-monoid.
pub fn minimal_ideal_series(gs: &GammaStructure, atoms: &[Ideal], limits: &Limits) -> Result<MinimalIdealSeries> {
    require_refinement(gs)?;
    let lattice = all_order_ideals(gs);
    let real_atoms = lattice.atoms();
    for (k, a) in atoms.iter().enumerate() {
        if !real_atoms.contains(a) || atoms[..k].contains(a) {
            return Err(Error::NotAtom(k));
        }
    }
    let bottom = zero_ideal(gs);
    let mut partial = vec![bottom];
    for &a in atoms {
        let next = ideal_sum_checked(gs, *partial.last().expect("nonempty"), a)?;
        partial.push(next);
    }
    let total = *partial.last().expect("nonempty");
    let sub = gs.restrict(total.elements())?;
    let local: Vec<ElemSet> = partial.iter().map(|p| sub.pull(p.elements())).collect();
    let composition_violation = violation_of(&sub.structure, local.clone())?;

    let mut isomorphisms = Vec::new();
    for (t, &a) in atoms.iter().enumerate() {
        let factor = quotient_of_ideals(gs, partial[t + 1], partial[t])?.quotient;
        let atom = quotient_of_ideals(gs, a, bottom)?.quotient;
        isomorphisms.push(find_gamma_isomorphism(&factor, &atom, limits)?);
    }
    let tag = match &composition_violation {
        None => classify_series(&sub.structure, &Series::new(&sub.structure, local)?)?,
        Some(_) => SeriesType::Mixed(Vec::new()),
    };
    Ok(MinimalIdealSeries {
        sum: total.elements(),
        chain: partial.iter().map(|p| p.elements()).collect(),
        composition_violation,
        isomorphisms,
        tag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::{b2, b2_swap};
    use crate::monoid::tests::t7;

    fn set(v: &[Elem]) -> ElemSet {
        v.iter().copied().collect()
    }

    fn series(gs: &GammaStructure, v: &[&[Elem]]) -> Series {
        Series::new(gs, v.iter().map(|s| set(s)).collect()).unwrap()
    }

    #[test]
    fn gamma_series_checks() {
        let gs = GammaStructure::trivial(t7());
        let all: &[Elem] = &[0, 1, 2, 3, 4, 5, 6];
        assert!(is_gamma_series(&gs, &[set(&[0]), set(&[0, 1, 2]), set(all)]));
        assert!(is_gamma_series(&gs, &[set(&[0]), set(all)]));
        assert!(matches!(
            series_violation(&gs, &[set(&[0]), set(&[0, 1]), set(all)]),
            Some(SeriesViolation::NotIdeal { position: 1, .. })
        ));
        assert_eq!(series_violation(&gs, &[]), Some(SeriesViolation::Empty));
        assert!(matches!(
            series_violation(&gs, &[set(&[0]), set(&[0, 1, 2])]),
            Some(SeriesViolation::BadEnd { .. })
        ));
        let s = series(&gs, &[&[0], &[0], &[0, 1, 2], all]);
        assert_eq!(s.length(), 2);
        assert!(!s.is_composition_series(&gs).unwrap());
        assert!(s.collapsed().is_composition_series(&gs).unwrap());
    }

    #[test]
    fn t7_composition_series() {
        let gs = GammaStructure::trivial(t7());
        let l = Limits::default();
        let all = all_composition_series(&gs).unwrap();
        let sets: Vec<Vec<ElemSet>> = all.iter().map(Series::sets).collect();
        assert_eq!(
            sets,
            vec![
                vec![set(&[0]), set(&[0, 1, 2]), gs.monoid().all()],
                vec![set(&[0]), set(&[0, 3, 4]), gs.monoid().all()],
            ]
        );
        assert_eq!(one_composition_series(&gs), all[0]);
        let eq = series_equivalent(&gs, &all[0], &all[1], &l).unwrap();
        assert!(eq.equivalent);
        assert_eq!(eq.pairing, vec![0, 1]);
        let jh = jordan_holder_factors(&gs, &l).unwrap();
        assert_eq!(jh.len(), 2);
        assert_eq!(jh[0].size, 3);
        assert_ne!(jh[0].key, jh[1].key);
        let short = series(&gs, &[&[0], &[0, 1, 2, 3, 4, 5, 6]]);
        assert!(matches!(
            series_equivalent(&gs, &all[0], &short, &l),
            Err(Error::NotCompositionSeries(_))
        ));
        let r = chain_condition_report(&gs).unwrap();
        assert_eq!((r.height, r.composition_series), (2, 2));
        assert!(r.holds());
    }

    #[test]
    fn b2_series() {
        let gs = GammaStructure::trivial(b2());
        let l = Limits::default();
        let all = all_composition_series(&gs).unwrap();
        assert_eq!(all.len(), 2);
        let jh = jordan_holder_factors(&gs, &l).unwrap();
        assert_eq!(jh.len(), 2);
        assert_eq!(jh[0], jh[1]);
        assert_eq!(jh[0].tag, TypeTag::Noncomparable);
        assert_eq!(
            classify_series(&gs, &all[0]).unwrap(),
            SeriesType::Uniform(TypeTag::Noncomparable)
        );

        let r = schreier_refinement(&gs, &all[0], &all[1], &l).unwrap();
        assert!(r.holds());
        assert_eq!(r.first.length(), 2);
        assert_eq!(r.pairs.len() + r.collapsed, 4);
        assert_eq!(r.pairs.len(), 2);

        let same = schreier_refinement(&gs, &all[0], &all[0], &l).unwrap();
        assert!(same.holds());
        assert_eq!(same.first.collapsed(), all[0]);
        let trivial = series(&gs, &[&[0], &[0, 1, 2, 3]]);
        let r = schreier_refinement(&gs, &all[0], &trivial, &l).unwrap();
        assert!(r.holds());
        assert_eq!(r.first.collapsed(), all[0]);
    }

    #[test]
    fn schreier_needs_refinement() {
        let gs = GammaStructure::trivial(t7());
        let all = all_composition_series(&gs).unwrap();
        assert_eq!(
            schreier_refinement(&gs, &all[0], &all[1], &Limits::default()).unwrap_err(),
            Error::NotRefinementMonoid([1, 1, 2, 2])
        );
    }

    #[test]
    fn classification() {
        assert_eq!(classify_simple(&b2_swap()), TypeTag::Unclassified);
        let s = one_composition_series(&b2_swap());
        assert_eq!(s.length(), 1);
        let z2 = GammaStructure::trivial(crate::action::tests::semilattice2());
        assert_eq!(classify_simple(&z2), TypeTag::Noncomparable);
        let one = GammaStructure::trivial(crate::Monoid::trivial());
        assert_eq!(one_composition_series(&one).length(), 0);
    }

    #[test]
    fn split_and_minimal() {
        let gs = GammaStructure::trivial(t7());
        let a = Ideal::verify(&gs, set(&[0, 1, 2])).unwrap();
        let r = split_and_reassemble(&gs, a).unwrap();
        assert!(r.holds());
        assert_eq!(r.spliced, vec![set(&[0]), set(&[0, 1, 2]), gs.monoid().all()]);

        let gs = GammaStructure::trivial(b2());
        let l = Limits::default();
        let atoms = all_order_ideals(&gs).atoms();
        let r = minimal_ideal_series(&gs, &atoms, &l).unwrap();
        assert!(r.holds());
        assert_eq!(r.chain, vec![set(&[0]), set(&[0, 1]), set(&[0, 1, 2, 3])]);
        let r = minimal_ideal_series(&gs, &atoms[..1], &l).unwrap();
        assert!(r.holds());
        assert_eq!(r.sum, set(&[0, 1]));
        let top = Ideal::verify(&gs, gs.monoid().all()).unwrap();
        assert_eq!(
            minimal_ideal_series(&gs, &[atoms[0], top], &l).unwrap_err(),
            Error::NotAtom(1)
        );
    }
}
