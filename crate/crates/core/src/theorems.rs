//! Executable isomorphism theorems.
//!
//! Each check builds both sides as Γ-monoids and searches for an explicit
//! Γ-isomorphism between them. A hypothesis that does not hold is reported
//! as an error, never as a false verdict.

use crate::action::GammaStructure;
use crate::elemset::ElemSet;
use crate::ideals::{all_order_ideals, ideal_intersect, ideal_sum_checked, is_order_ideal, Ideal};
use crate::iso::find_gamma_isomorphism;
use crate::quotient::{first_iso_check, quotient, quotient_by_submonoid, quotient_of_ideals, FirstIsoReport, HomMap};
use crate::{Elem, Error, Limits, Result};

/// Two Γ-monoids claimed isomorphic and the isomorphism found, if any.
#[derive(Debug, Clone)]
pub struct IsoVerdict {
    pub left: GammaStructure,
    pub right: GammaStructure,
    pub isomorphism: Option<Vec<Elem>>,
}

impl IsoVerdict {
    fn search(left: GammaStructure, right: GammaStructure, limits: &Limits) -> Result<Self> {
        let isomorphism = find_gamma_isomorphism(&left, &right, limits)?;
        Ok(IsoVerdict {
            left,
            right,
            isomorphism,
        })
    }

    pub fn holds(&self) -> bool {
        self.isomorphism.is_some()
    }
}

/// Fails with the first unrefinable quadruple unless the monoid refines.
pub fn require_refinement(gs: &GammaStructure) -> Result<()> {
    match gs.monoid().refinement_violation() {
        None => Ok(()),
        Some(w) => Err(Error::NotRefinementMonoid(w)),
    }
}

fn require_subset(inner: Ideal, outer: Ideal) -> Result<()> {
    if inner.is_subset(outer) {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(format!(
            "{:?} is not contained in {:?}",
            inner.to_vec(),
            outer.to_vec()
        )))
    }
}

fn sum(gs: &GammaStructure, a: Ideal, b: Ideal) -> Result<Ideal> {
    ideal_sum_checked(gs, a, b)
}

/// `(A + B) / A ≅ B` for ideals with `A ∩ B = {0}` in a refinement monoid.
pub fn check_lemma_sum_quotient(gs: &GammaStructure, a: Ideal, b: Ideal, limits: &Limits) -> Result<IsoVerdict> {
    require_refinement(gs)?;
    let meet = ideal_intersect(gs, a, b);
    if meet.elements() != ElemSet::singleton(0) {
        return Err(Error::HypothesisViolated(format!(
            "A ∩ B = {:?}, expected {{0}}",
            meet.to_vec()
        )));
    }
    let ab = sum(gs, a, b)?;
    let left = quotient_of_ideals(gs, ab, a)?.quotient;
    let right = gs.restrict(b.elements())?.structure;
    IsoVerdict::search(left, right, limits)
}

/// Outcome of the third isomorphism theorem for `I ⊆ J`.
#[derive(Debug, Clone)]
pub struct ThirdIsoReport {
    /// `(T/I)/(J/I)` against `T/J`.
    pub verdict: IsoVerdict,
    /// The natural map `T/I → T/J` factored through its kernel.
    pub factorization: FirstIsoReport,
    /// Whether the kernel of the natural map is the image of `J`.
    pub kernel_is_image: bool,
}

impl ThirdIsoReport {
    pub fn holds(&self) -> bool {
        self.verdict.holds() && self.factorization.induced_is_isomorphism && self.kernel_is_image
    }
}

/// `(T/I)/(J/I) ≅ T/J` for ideals `I ⊆ J`.
pub fn check_third_isomorphism(gs: &GammaStructure, i: Ideal, j: Ideal, limits: &Limits) -> Result<ThirdIsoReport> {
    require_subset(i, j)?;
    let ti = quotient(gs, i)?;
    let tj = quotient(gs, j)?;
    let image = ti.classes.image(j.elements());
    let j_over_i = Ideal::verify(&ti.quotient, image)?;
    let left = quotient(&ti.quotient, j_over_i)?.quotient;
    let verdict = IsoVerdict::search(left, tj.quotient.clone(), limits)?;

    let mut map = vec![usize::MAX; ti.quotient.size()];
    for x in 0..gs.size() {
        map[ti.classes.class_of(x)] = tj.classes.class_of(x);
    }
    let f = HomMap::new(ti.quotient.clone(), tj.quotient.clone(), map)?;
    let kernel_is_image = f.kernel() == image;
    let factorization = first_iso_check(&f)?;
    Ok(ThirdIsoReport {
        verdict,
        factorization,
        kernel_is_image,
    })
}

/// Ideals of `T/I` against images of ideals `J ⊇ I`.
#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    /// Each `J ⊇ I` with its image in `T/I`.
    pub pairs: Vec<(ElemSet, ElemSet)>,
    /// Ideals of `T/I` that are not the image of any `J ⊇ I`.
    pub unmatched: Vec<ElemSet>,
    /// Images that are not ideals of `T/I`.
    pub non_ideal_images: Vec<ElemSet>,
    /// Pairs of distinct `J` with the same image.
    pub collisions: usize,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.unmatched.is_empty() && self.non_ideal_images.is_empty() && self.collisions == 0
    }
}

/// Enumerates both sides of the correspondence between ideals of `T/I`
/// and ideals of `T` containing `I`.
pub fn check_ideal_correspondence(gs: &GammaStructure, i: Ideal) -> Result<CorrespondenceReport> {
    let q = quotient(gs, i)?;
    let upstairs = all_order_ideals(gs);
    let downstairs = all_order_ideals(&q.quotient);
    let pairs: Vec<(ElemSet, ElemSet)> = upstairs
        .ideals()
        .iter()
        .filter(|j| i.is_subset(**j))
        .map(|j| (j.elements(), q.classes.image(j.elements())))
        .collect();
    let non_ideal_images = pairs
        .iter()
        .map(|&(_, img)| img)
        .filter(|&img| !is_order_ideal(&q.quotient, img).is_ideal())
        .collect();
    let mut collisions = 0;
    for (x, p) in pairs.iter().enumerate() {
        collisions += pairs[x + 1..].iter().filter(|r| r.1 == p.1).count();
    }
    let unmatched = downstairs
        .ideals()
        .iter()
        .map(|h| h.elements())
        .filter(|h| !pairs.iter().any(|p| p.1 == *h))
        .collect();
    Ok(CorrespondenceReport {
        pairs,
        unmatched,
        non_ideal_images,
        collisions,
    })
}

/// `Q/(L + (Q ∩ N)) ≅ (Q + N)/(L + N)` for ideals `L ⊆ Q` and `N` of a
/// refinement Γ-monoid.
pub fn check_zassenhaus(gs: &GammaStructure, q: Ideal, l: Ideal, n: Ideal, limits: &Limits) -> Result<IsoVerdict> {
    require_refinement(gs)?;
    require_subset(l, q)?;
    let qn = ideal_intersect(gs, q, n);
    let left_den = sum(gs, l, qn)?;
    let left = quotient_of_ideals(gs, q, left_den)?.quotient;
    let right_num = sum(gs, q, n)?;
    let right_den = sum(gs, l, n)?;
    let right = quotient_of_ideals(gs, right_num, right_den)?.quotient;
    IsoVerdict::search(left, right, limits)
}

fn butterfly_side(gs: &GammaStructure, top: Ideal, low: Ideal, base: Ideal) -> Result<GammaStructure> {
    let num = sum(gs, top, base)?;
    let den = sum(gs, low, base)?;
    Ok(quotient_of_ideals(gs, num, den)?.quotient)
}

/// `((A∩B)+B')/((A'∩B)+B') ≅ ((A∩B)+A')/((A∩B')+A')` for `A' ⊆ A` and
/// `B' ⊆ B` in a refinement Γ-monoid.
pub fn check_butterfly(
    gs: &GammaStructure,
    a: Ideal,
    a1: Ideal,
    b: Ideal,
    b1: Ideal,
    limits: &Limits,
) -> Result<IsoVerdict> {
    require_refinement(gs)?;
    require_subset(a1, a)?;
    require_subset(b1, b)?;
    let ab = ideal_intersect(gs, a, b);
    let left = butterfly_side(gs, ab, ideal_intersect(gs, a1, b), b1)?;
    let right = butterfly_side(gs, ab, ideal_intersect(gs, a, b1), a1)?;
    IsoVerdict::search(left, right, limits)
}

/// The variant whose right-hand denominator is `(A'∩B)+A'` instead of
/// `(A∩B')+A'`. Kept to exhibit that it fails.
pub fn check_butterfly_swapped_denominator(
    gs: &GammaStructure,
    a: Ideal,
    a1: Ideal,
    b: Ideal,
    b1: Ideal,
    limits: &Limits,
) -> Result<IsoVerdict> {
    require_refinement(gs)?;
    require_subset(a1, a)?;
    require_subset(b1, b)?;
    let ab = ideal_intersect(gs, a, b);
    let a1b = ideal_intersect(gs, a1, b);
    let left = butterfly_side(gs, ab, a1b, b1)?;
    let right = butterfly_side(gs, ab, a1b, a1)?;
    IsoVerdict::search(left, right, limits)
}

/// Whether the cosets `x + H` are pairwise disjoint for distinct `x`.
pub fn cosets_disjoint(gs: &GammaStructure, h: ElemSet) -> bool {
    let m = gs.monoid();
    let cosets: Vec<ElemSet> = (0..m.size())
        .map(|x| m.sum_set(ElemSet::singleton(x), h))
        .collect();
    (0..m.size()).all(|x| (x + 1..m.size()).all(|y| cosets[x].intersection(cosets[y]).is_empty()))
}

/// Lifts the induced action on `T/H` back to `T` when the cosets of `H`
/// are pairwise disjoint. The lifted action is validated and returned.
pub fn lift_action(gs: &GammaStructure, h: ElemSet) -> Result<GammaStructure> {
    if !cosets_disjoint(gs, h) {
        return Err(Error::HypothesisViolated(format!(
            "cosets of {:?} are not pairwise disjoint",
            h.to_vec()
        )));
    }
    let q = quotient_by_submonoid(gs, h)?;
    let n = gs.size();
    let mut element_of = vec![usize::MAX; q.quotient.size()];
    for x in 0..n {
        let c = q.classes.class_of(x);
        if element_of[c] != usize::MAX {
            return Err(Error::WellDefinednessFailure(format!(
                "class {c} has more than one element"
            )));
        }
        element_of[c] = x;
    }
    let rows = (0..gs.group().order())
        .map(|alpha| {
            (0..n)
                .map(|x| element_of[q.quotient.act(alpha, q.classes.class_of(x))])
                .collect()
        })
        .collect();
    Ok(GammaStructure::new(gs.monoid().clone(), gs.group().clone(), rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::tests::{b2, b2_swap};
    use crate::ideals::zero_ideal;
    use crate::monoid::tests::t7;

    fn ideal(gs: &GammaStructure, v: &[Elem]) -> Ideal {
        Ideal::verify(gs, v.iter().copied().collect()).unwrap()
    }

    #[test]
    fn sum_quotient_on_b2() {
        let gs = GammaStructure::trivial(b2());
        let l = Limits::default();
        let a = ideal(&gs, &[0, 1]);
        let b = ideal(&gs, &[0, 2]);
        let v = check_lemma_sum_quotient(&gs, a, b, &l).unwrap();
        assert!(v.holds());
        assert_eq!(v.left.size(), 2);
        let z = zero_ideal(&gs);
        assert!(check_lemma_sum_quotient(&gs, z, b, &l).unwrap().holds());
        assert!(check_lemma_sum_quotient(&gs, a, z, &l).unwrap().holds());
        assert!(matches!(
            check_lemma_sum_quotient(&gs, a, a, &l),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn t7_is_rejected() {
        let gs = GammaStructure::trivial(t7());
        let a = ideal(&gs, &[0, 1, 2]);
        let b = ideal(&gs, &[0, 3, 4]);
        assert_eq!(
            check_lemma_sum_quotient(&gs, a, b, &Limits::default()).unwrap_err(),
            Error::NotRefinementMonoid([1, 1, 2, 2])
        );
    }

    #[test]
    fn third_isomorphism_on_t7() {
        let gs = GammaStructure::trivial(t7());
        let l = Limits::default();
        let z = ideal(&gs, &[0]);
        let a = ideal(&gs, &[0, 1, 2]);
        let t = ideal(&gs, &[0, 1, 2, 3, 4, 5, 6]);
        for (i, j) in [(z, a), (a, t), (z, t), (a, a)] {
            let r = check_third_isomorphism(&gs, i, j, &l).unwrap();
            assert!(r.holds(), "{i:?} {j:?}");
        }
        assert!(check_third_isomorphism(&gs, a, z, &l).is_err());
    }

    #[test]
    fn correspondence_on_t7() {
        let gs = GammaStructure::trivial(t7());
        for v in [&[0][..], &[0, 1, 2], &[0, 3, 4]] {
            let r = check_ideal_correspondence(&gs, ideal(&gs, v)).unwrap();
            assert!(r.holds());
        }
        let r = check_ideal_correspondence(&gs, ideal(&gs, &[0, 1, 2])).unwrap();
        assert_eq!(r.pairs.len(), 2);
    }

    #[test]
    fn zassenhaus_and_butterfly_on_b2() {
        let gs = GammaStructure::trivial(b2());
        let l = Limits::default();
        let z = ideal(&gs, &[0]);
        let a = ideal(&gs, &[0, 1]);
        let b = ideal(&gs, &[0, 2]);
        let t = ideal(&gs, &[0, 1, 2, 3]);
        let v = check_zassenhaus(&gs, t, a, b, &l).unwrap();
        assert!(v.holds());
        assert_eq!(v.left.size(), 1);
        assert!(check_zassenhaus(&gs, t, z, a, &l).unwrap().holds());
        assert!(check_zassenhaus(&gs, a, t, b, &l).is_err());

        assert!(check_butterfly(&gs, t, z, t, b, &l).unwrap().holds());
        assert!(check_butterfly(&gs, a, z, t, b, &l).unwrap().holds());
        let literal = check_butterfly_swapped_denominator(&gs, t, z, t, b, &l).unwrap();
        assert!(!literal.holds());
        assert_eq!((literal.left.size(), literal.right.size()), (2, 4));
    }

    #[test]
    fn lifting_needs_disjoint_cosets() {
        let gs = b2_swap();
        let lifted = lift_action(&gs, ElemSet::singleton(0)).unwrap();
        assert_eq!(lifted.action_rows(), gs.action_rows());
        assert!(!cosets_disjoint(&gs, [0, 1].into_iter().collect()));
        assert!(matches!(
            lift_action(&gs, [0, 1, 2, 3].into_iter().collect()),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
