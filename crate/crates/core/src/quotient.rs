//! Quotients by the coset-overlap relation, and Γ-homomorphisms.
//!
//! For a submonoid `H`, `x ~ y` when `(x + H) ∩ (y + H)` is nonempty. The
//! relation is reflexive and symmetric; for arbitrary submonoids it is made
//! transitive by closure, while for Γ-order-ideals the raw relation is
//! checked to be transitive already.

use crate::action::GammaStructure;
use crate::elemset::ElemSet;
use crate::ideals::Ideal;
use crate::monoid::Monoid;
use crate::{Elem, Error, Result};

/// A partition of `0..n` into blocks ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<ElemSet>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Builds the partition from a class label per element.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let n = labels.len();
        let mut class_of = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut block = ElemSet::EMPTY;
            for b in a..n {
                if labels[b] == labels[a] {
                    block.insert(b);
                    class_of[b] = blocks.len();
                }
            }
            blocks.push(block);
        }
        Partition { blocks, class_of }
    }

    pub fn blocks(&self) -> &[ElemSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    #[inline]
    pub fn class_of(&self, a: Elem) -> usize {
        self.class_of[a]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    /// Least element of each block.
    pub fn representatives(&self) -> Vec<Elem> {
        self.blocks.iter().map(|b| b.min().expect("nonempty block")).collect()
    }

    /// Image of a set of elements as a set of block indices.
    pub fn image(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|a| self.class_of[a]).collect()
    }

    /// Union of the blocks whose index lies in `classes`.
    pub fn preimage(&self, classes: ElemSet) -> ElemSet {
        classes
            .iter()
            .fold(ElemSet::EMPTY, |acc, c| acc.union(self.blocks[c]))
    }
}

/// Result of building the coset-overlap partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoPartition {
    pub partition: Partition,
    /// Whether the raw overlap relation was already transitive.
    pub raw_transitive: bool,
}

/// `x ~ y ⟺ (x + H) ∩ (y + H) ≠ ∅`, closed transitively.
pub fn rho_partition(m: &Monoid, h: ElemSet) -> Result<RhoPartition> {
    if !m.is_submonoid(h) {
        return Err(Error::NotSubmonoid(h.to_vec()));
    }
    let n = m.size();
    let cosets: Vec<ElemSet> = (0..n).map(|x| m.sum_set(ElemSet::singleton(x), h)).collect();
    let related = |x: Elem, y: Elem| !cosets[x].intersection(cosets[y]).is_empty();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for x in 0..n {
        for y in x + 1..n {
            if related(x, y) {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let partition = Partition::from_labels(&roots);
    let raw_transitive = partition.blocks().iter().all(|block| {
        block
            .iter()
            .all(|x| block.iter().all(|y| related(x, y)))
    });
    Ok(RhoPartition {
        partition,
        raw_transitive,
    })
}

/// A quotient Γ-monoid together with the data that produced it.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    pub base: GammaStructure,
    /// The submonoid that was factored out.
    pub ideal: ElemSet,
    pub classes: Partition,
    /// The quotient, whose element `i` is block `i`.
    pub quotient: GammaStructure,
}

impl QuotientPresentation {
    /// Block index of each base element.
    pub fn projection(&self) -> &[usize] {
        self.classes.labels()
    }

    /// The projection as a Γ-homomorphism.
    pub fn projection_hom(&self) -> HomMap {
        HomMap::new(
            self.base.clone(),
            self.quotient.clone(),
            self.projection().to_vec(),
        )
        .expect("projection is a homomorphism")
    }
}

/// `T / I` for a verified Γ-order-ideal `I`.
///
/// Beyond building the quotient this checks that the overlap relation needs
/// no transitive closure, that block 0 is exactly `I`, and that the
/// quotient is a single block exactly when `I` is everything.
pub fn quotient(gs: &GammaStructure, ideal: Ideal) -> Result<QuotientPresentation> {
    let rho = rho_partition(gs.monoid(), ideal.elements())?;
    if !rho.raw_transitive {
        return Err(Error::WellDefinednessFailure(format!(
            "coset overlap is not transitive for the ideal {:?}",
            ideal.to_vec()
        )));
    }
    if rho.partition.blocks()[0] != ideal.elements() {
        return Err(Error::WellDefinednessFailure(format!(
            "class of 0 is {:?}, expected the ideal {:?}",
            rho.partition.blocks()[0].to_vec(),
            ideal.to_vec()
        )));
    }
    let q = build_quotient(gs, ideal.elements(), rho.partition)?;
    let everything = ideal.len() == gs.size();
    if everything != (q.quotient.size() == 1) {
        return Err(Error::WellDefinednessFailure(
            "single-block quotient does not match I = T".into(),
        ));
    }
    Ok(q)
}

/// `T / H` for any sub-Γ-monoid `H`, using the transitive closure of the
/// overlap relation.
pub fn quotient_by_submonoid(gs: &GammaStructure, h: ElemSet) -> Result<QuotientPresentation> {
    if !gs.is_action_closed(h) {
        return Err(Error::NotSubmonoid(h.to_vec()));
    }
    let rho = rho_partition(gs.monoid(), h)?;
    build_quotient(gs, h, rho.partition)
}

/// `J / I` for ideals `I ⊆ J` of `gs`, computed inside `J` as a Γ-monoid.
/// Quotient element names come from `J`'s element names.
pub fn quotient_of_ideals(gs: &GammaStructure, outer: Ideal, inner: Ideal) -> Result<QuotientPresentation> {
    if !inner.is_subset(outer) {
        return Err(Error::HypothesisViolated(format!(
            "{:?} is not contained in {:?}",
            inner.to_vec(),
            outer.to_vec()
        )));
    }
    let sub = gs.restrict(outer.elements())?;
    let inner_sub = Ideal::verify(&sub.structure, sub.pull(inner.elements()))?;
    quotient(&sub.structure, inner_sub)
}

fn build_quotient(gs: &GammaStructure, h: ElemSet, classes: Partition) -> Result<QuotientPresentation> {
    let m = gs.monoid();
    let k = classes.len();
    let reps = classes.representatives();
    let mut table = vec![vec![usize::MAX; k]; k];
    for x in 0..gs.size() {
        for y in 0..gs.size() {
            let (cx, cy) = (classes.class_of(x), classes.class_of(y));
            let cs = classes.class_of(m.add(x, y));
            let cell = &mut table[cx][cy];
            if *cell == usize::MAX {
                *cell = cs;
            } else if *cell != cs {
                return Err(Error::WellDefinednessFailure(format!(
                    "[{}]+[{}] has two values",
                    m.name(x),
                    m.name(y)
                )));
            }
        }
    }
    let g = gs.group().order();
    let mut rows = vec![vec![usize::MAX; k]; g];
    for (alpha, row) in rows.iter_mut().enumerate() {
        for x in 0..gs.size() {
            let c = classes.class_of(gs.act(alpha, x));
            let cell = &mut row[classes.class_of(x)];
            if *cell == usize::MAX {
                *cell = c;
            } else if *cell != c {
                return Err(Error::WellDefinednessFailure(format!(
                    "action of {} on [{}] has two values",
                    alpha,
                    m.name(x)
                )));
            }
        }
    }
    let names = reps.iter().map(|&r| format!("[{}]", m.name(r))).collect();
    let monoid = Monoid::with_limit(names, table, crate::elemset::MAX_ELEMS)?;
    let quotient = GammaStructure::new(monoid, gs.group().clone(), rows)?;
    Ok(QuotientPresentation {
        base: gs.clone(),
        ideal: h,
        classes,
        quotient,
    })
}

/// A map between Γ-monoids with the same acting group that is unital,
/// additive and equivariant.
#[derive(Debug, Clone)]
pub struct HomMap {
    pub source: GammaStructure,
    pub target: GammaStructure,
    pub map: Vec<Elem>,
}

impl HomMap {
    pub fn new(source: GammaStructure, target: GammaStructure, map: Vec<Elem>) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::GroupMismatch);
        }
        if map.len() != source.size() || map.iter().any(|&v| v >= target.size()) {
            return Err(Error::NotHomomorphism("map has the wrong shape".into()));
        }
        if map[0] != 0 {
            return Err(Error::NotHomomorphism("0 is not sent to 0".into()));
        }
        let (ms, mt) = (source.monoid(), target.monoid());
        for a in 0..source.size() {
            for b in 0..source.size() {
                if map[ms.add(a, b)] != mt.add(map[a], map[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "f({a}+{b}) != f({a})+f({b})"
                    )));
                }
            }
        }
        for alpha in 0..source.group().order() {
            for a in 0..source.size() {
                if map[source.act(alpha, a)] != target.act(alpha, map[a]) {
                    return Err(Error::NotHomomorphism(format!(
                        "f(^{alpha}{a}) != ^{alpha}f({a})"
                    )));
                }
            }
        }
        Ok(HomMap { source, target, map })
    }

    pub fn identity(gs: GammaStructure) -> Self {
        let map = (0..gs.size()).collect();
        HomMap::new(gs.clone(), gs, map).expect("identity")
    }

    /// Preimage of the target identity.
    pub fn kernel(&self) -> ElemSet {
        (0..self.source.size()).filter(|&a| self.map[a] == 0).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.map.iter().copied().collect::<ElemSet>() == self.target.monoid().all()
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().copied().collect::<ElemSet>().len() == self.source.size()
    }
}

/// Outcome of factoring a surjective homomorphism through its kernel.
#[derive(Debug, Clone)]
pub struct FirstIsoReport {
    pub kernel: ElemSet,
    /// Classes of the overlap relation of the kernel.
    pub kernel_classes: Partition,
    /// Classes of "same image".
    pub fiber_classes: Partition,
    pub partitions_equal: bool,
    /// The induced map on kernel classes, block index to target element.
    pub induced: Vec<Elem>,
    pub induced_is_isomorphism: bool,
}

/// Factors `f` as `source → source/ρ_Ker f → target` and compares the two
/// ways of deciding whether the induced map is an isomorphism.
///
/// # Panics
///
/// If the induced map is an isomorphism but the partitions differ, or the
/// other way round.
pub fn first_iso_check(f: &HomMap) -> Result<FirstIsoReport> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let kernel = f.kernel();
    let presentation = quotient_by_submonoid(&f.source, kernel)?;
    let kernel_classes = presentation.classes.clone();
    let fiber_classes = Partition::from_labels(&f.map);
    let mut induced = vec![usize::MAX; kernel_classes.len()];
    for a in 0..f.source.size() {
        let c = kernel_classes.class_of(a);
        if induced[c] == usize::MAX {
            induced[c] = f.map[a];
        } else if induced[c] != f.map[a] {
            return Err(Error::WellDefinednessFailure(
                "induced map is not constant on kernel classes".into(),
            ));
        }
    }
    let induced_hom = HomMap::new(presentation.quotient.clone(), f.target.clone(), induced.clone())?;
    let induced_is_isomorphism = induced_hom.is_injective() && induced_hom.is_surjective();
    let partitions_equal = kernel_classes == fiber_classes;
    assert_eq!(
        partitions_equal, induced_is_isomorphism,
        "isomorphism criterion disagrees with the induced map"
    );
    Ok(FirstIsoReport {
        kernel,
        kernel_classes,
        fiber_classes,
        partitions_equal,
        induced,
        induced_is_isomorphism,
    })
}
