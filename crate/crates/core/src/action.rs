//! Group actions on monoids and the resulting Γ-monoids.

use thiserror::Error;

use crate::elemset::ElemSet;
use crate::group::Group;
use crate::monoid::Monoid;
use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("malformed action table: {0}")]
    BadShape(String),
    #[error("identity does not act trivially on element {0}")]
    IdentityLaw(Elem),
    #[error("composition law fails for group elements ({0},{1}) at element {2}")]
    CompositionLaw(Elem, Elem, Elem),
    #[error("group element {0} is not additive on ({1},{2})")]
    AdditivityLaw(Elem, Elem, Elem),
    #[error("group element {0} does not act as a permutation")]
    NotPermutation(Elem),
}

/// A commutative monoid with a finite group acting by additive bijections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaStructure {
    monoid: Monoid,
    group: Group,
    /// `action[alpha * n + a]` is the image of `a` under `alpha`.
    action: Vec<Elem>,
}

impl GammaStructure {
    /// Validates `action_rows[alpha][a]` against the action laws.
    pub fn new(
        monoid: Monoid,
        group: Group,
        action_rows: Vec<Vec<Elem>>,
    ) -> Result<Self, ActionError> {
        let n = monoid.size();
        let m = group.order();
        if action_rows.len() != m {
            return Err(ActionError::BadShape(format!(
                "{} rows for a group of order {}",
                action_rows.len(),
                m
            )));
        }
        for (alpha, row) in action_rows.iter().enumerate() {
            if row.len() != n || row.iter().any(|&v| v >= n) {
                return Err(ActionError::BadShape(format!(
                    "row {} must hold {} indices below {}",
                    alpha, n, n
                )));
            }
        }
        let action: Vec<Elem> = action_rows.into_iter().flatten().collect();
        let act = |alpha: Elem, a: Elem| action[alpha * n + a];
        for a in 0..n {
            if act(0, a) != a {
                return Err(ActionError::IdentityLaw(a));
            }
        }
        for alpha in 0..m {
            for beta in 0..m {
                let ab = group.mul(alpha, beta);
                for a in 0..n {
                    if act(ab, a) != act(alpha, act(beta, a)) {
                        return Err(ActionError::CompositionLaw(alpha, beta, a));
                    }
                }
            }
        }
        for alpha in 0..m {
            for a in 0..n {
                for b in 0..n {
                    if act(alpha, monoid.add(a, b)) != monoid.add(act(alpha, a), act(alpha, b)) {
                        return Err(ActionError::AdditivityLaw(alpha, a, b));
                    }
                }
            }
        }
        for alpha in 0..m {
            let image: ElemSet = (0..n).map(|a| act(alpha, a)).collect();
            if image.len() != n {
                return Err(ActionError::NotPermutation(alpha));
            }
        }
        Ok(GammaStructure {
            monoid,
            group,
            action,
        })
    }

    /// The trivial group acting identically.
    pub fn trivial(monoid: Monoid) -> Self {
        let row = (0..monoid.size()).collect();
        Self::new(monoid, Group::trivial(), vec![row]).expect("trivial action")
    }

    /// The cyclic group generated by an automorphism `generator`, acting
    /// through its powers. The group order is the order of the permutation.
    pub fn from_generator(monoid: Monoid, generator: &[Elem]) -> Result<Self, ActionError> {
        let n = monoid.size();
        if generator.len() != n || generator.iter().any(|&v| v >= n) {
            return Err(ActionError::BadShape(format!(
                "generator must be a list of {} indices",
                n
            )));
        }
        let identity: Vec<Elem> = (0..n).collect();
        let mut rows = vec![identity.clone()];
        loop {
            let last = rows.last().expect("nonempty");
            let next: Vec<Elem> = last.iter().map(|&x| generator[x]).collect();
            if next == identity {
                break;
            }
            if rows.len() > n.pow(2).max(720) || rows.contains(&next) {
                return Err(ActionError::NotPermutation(1));
            }
            rows.push(next);
        }
        let k = rows.len();
        Self::new(monoid, Group::cyclic(k), rows)
    }

    /// `Z/order` acting through the powers of `generator`; `order` must be a
    /// multiple of the generator's order. Non-faithful when it is larger.
    pub fn from_generator_with_order(
        monoid: Monoid,
        generator: &[Elem],
        order: usize,
    ) -> Result<Self, ActionError> {
        let base = Self::from_generator(monoid, generator)?;
        let k = base.group.order();
        if order == 0 || !order.is_multiple_of(k) {
            return Err(ActionError::BadShape(format!(
                "group order {} is not a multiple of the generator order {}",
                order, k
            )));
        }
        let rows = (0..order).map(|i| base.row(i % k).to_vec()).collect();
        Self::new(base.monoid, Group::cyclic(order), rows)
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    #[inline]
    pub fn act(&self, alpha: Elem, a: Elem) -> Elem {
        self.action[alpha * self.monoid.size() + a]
    }

    pub fn row(&self, alpha: Elem) -> &[Elem] {
        let n = self.monoid.size();
        &self.action[alpha * n..(alpha + 1) * n]
    }

    pub fn action_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.group.order()).map(|g| self.row(g).to_vec()).collect()
    }

    /// Whether every group element acts as the identity.
    pub fn acts_trivially(&self) -> bool {
        (0..self.group.order()).all(|g| self.row(g).iter().enumerate().all(|(a, &b)| a == b))
    }

    /// `O(a) = { alpha(a) : alpha in Γ }`.
    pub fn orbit(&self, a: Elem) -> ElemSet {
        (0..self.group.order()).map(|g| self.act(g, a)).collect()
    }

    /// The orbits, ordered by least element.
    pub fn orbits(&self) -> Vec<ElemSet> {
        let mut seen = ElemSet::EMPTY;
        let mut out = Vec::new();
        for a in 0..self.size() {
            if !seen.contains(a) {
                let o = self.orbit(a);
                seen = seen.union(o);
                out.push(o);
            }
        }
        out
    }

    /// Image of a set under every group element.
    pub fn action_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, a| acc.union(self.orbit(a)))
    }

    pub fn is_action_closed(&self, s: ElemSet) -> bool {
        self.action_closure(s) == s
    }

    /// Sum over the whole group of the images of `a`.
    pub fn orbit_sum(&self, a: Elem) -> Elem {
        self.monoid
            .sum((0..self.group.order()).map(|g| self.act(g, a)))
    }

    /// The same Γ-monoid with elements relabelled (new `i` is old `order[i]`).
    pub fn permuted(&self, order: &[Elem]) -> Result<Self, crate::Error> {
        let mut pos = vec![0; order.len()];
        for (i, &old) in order.iter().enumerate() {
            pos[old] = i;
        }
        let monoid = self.monoid.permuted(order)?;
        let rows = (0..self.group.order())
            .map(|g| order.iter().map(|&a| pos[self.act(g, a)]).collect())
            .collect();
        Ok(Self::new(monoid, self.group.clone(), rows)?)
    }

    /// The sub-Γ-monoid on `set`, which must contain 0 and be closed under
    /// addition and the action.
    pub fn restrict(&self, set: ElemSet) -> Result<SubStructure, crate::Error> {
        if !self.monoid.is_submonoid(set) || !self.is_action_closed(set) {
            return Err(crate::Error::NotSubmonoid(set.to_vec()));
        }
        let embedding = set.to_vec();
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &a) in embedding.iter().enumerate() {
            pos[a] = i;
        }
        let names = embedding
            .iter()
            .map(|&a| self.monoid.name(a).to_string())
            .collect();
        let table = embedding
            .iter()
            .map(|&a| embedding.iter().map(|&b| pos[self.monoid.add(a, b)]).collect())
            .collect();
        let monoid = Monoid::with_limit(names, table, crate::elemset::MAX_ELEMS)?;
        let rows = (0..self.group.order())
            .map(|g| embedding.iter().map(|&a| pos[self.act(g, a)]).collect())
            .collect();
        let structure = GammaStructure::new(monoid, self.group.clone(), rows)?;
        Ok(SubStructure {
            structure,
            embedding,
            position: pos,
        })
    }
}

/// A sub-Γ-monoid together with its embedding into the parent.
#[derive(Debug, Clone)]
pub struct SubStructure {
    pub structure: GammaStructure,
    /// Sub index to parent index.
    pub embedding: Vec<Elem>,
    position: Vec<usize>,
}

impl SubStructure {
    /// Parent-indexed set (contained in the carrier) to sub indices.
    pub fn pull(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .map(|a| {
                let p = self.position[a];
                assert!(p != usize::MAX, "element {a} is outside the substructure");
                p
            })
            .collect()
    }

    /// Sub-indexed set to parent indices.
    pub fn push(&self, set: ElemSet) -> ElemSet {
        set.iter().map(|i| self.embedding[i]).collect()
    }

    pub fn carrier(&self) -> ElemSet {
        self.embedding.iter().copied().collect()
    }
}

/// All automorphisms of `m`, each as the image list of `0..n`, in
/// lexicographic order (so the identity comes first).
pub fn automorphism_group(m: &Monoid) -> Vec<Vec<Elem>> {
    let n = m.size();
    let sig: Vec<_> = (0..n).map(|a| element_signature(m, a)).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = ElemSet::EMPTY;
    image[0] = 0;
    used.insert(0);
    let mut out = Vec::new();
    extend_automorphism(m, &sig, 1, &mut image, &mut used, &mut out);
    out
}

fn element_signature(m: &Monoid, a: Elem) -> (usize, usize, bool, usize) {
    let above = (0..m.size()).filter(|&b| m.is_leq(a, b)).count();
    let distinct: ElemSet = (0..m.size()).map(|b| m.add(a, b)).collect();
    (m.below(a).len(), above, m.add(a, a) == a, distinct.len())
}

fn extend_automorphism(
    m: &Monoid,
    sig: &[(usize, usize, bool, usize)],
    next: Elem,
    image: &mut Vec<Elem>,
    used: &mut ElemSet,
    out: &mut Vec<Vec<Elem>>,
) {
    let n = m.size();
    if next == n {
        out.push(image.clone());
        return;
    }
    for target in 0..n {
        if used.contains(target) || sig[target] != sig[next] {
            continue;
        }
        image[next] = target;
        if consistent_with(m, image, next) {
            used.insert(target);
            extend_automorphism(m, sig, next + 1, image, used, out);
            used.remove(target);
        }
        image[next] = usize::MAX;
    }
}

fn consistent_with(m: &Monoid, image: &[Elem], newest: Elem) -> bool {
    for b in 0..=newest {
        let s = m.add(newest, b);
        if image[s] != usize::MAX && image[s] != m.add(image[newest], image[b]) {
            return false;
        }
    }
    // the newest element may also be the sum of two earlier ones
    for a in 0..newest {
        for b in a..newest {
            if m.add(a, b) == newest && image[newest] != m.add(image[a], image[b]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::monoid::tests::t7;

    pub(crate) fn semilattice2() -> Monoid {
        Monoid::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    /// `{00, 01, 10, 11}` as indices 0..4 with componentwise join.
    pub(crate) fn b2() -> Monoid {
        let sl = semilattice2();
        sl.direct_sum(&sl).unwrap()
    }

    pub(crate) fn b2_swap() -> GammaStructure {
        GammaStructure::new(b2(), Group::cyclic(2), vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]])
            .unwrap()
    }

    #[test]
    fn trivial_action_on_t7() {
        let gs = GammaStructure::trivial(t7());
        assert!(gs.acts_trivially());
        for a in 0..7 {
            assert_eq!(gs.orbit(a).to_vec(), vec![a]);
        }
    }

    #[test]
    fn swap_on_b2() {
        let gs = b2_swap();
        assert_eq!(gs.orbit(1).to_vec(), vec![1, 2]);
        assert_eq!(gs.orbit(0).to_vec(), vec![0]);
        assert_eq!(gs.orbits().len(), 3);
    }

    #[test]
    fn non_additive_involution_is_rejected() {
        // swaps 01 and 11: ^1(01+10) = 01 but ^1(01) + ^1(10) = 11
        let err = GammaStructure::new(b2(), Group::cyclic(2), vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]])
            .unwrap_err();
        assert_eq!(err, ActionError::AdditivityLaw(1, 1, 2));
    }

    #[test]
    fn action_law_errors() {
        let g = Group::cyclic(2);
        assert_eq!(
            GammaStructure::new(b2(), g.clone(), vec![vec![0, 2, 1, 3], vec![0, 2, 1, 3]]).unwrap_err(),
            ActionError::IdentityLaw(1)
        );
        // Z/3 cannot act through a transposition
        assert_eq!(
            GammaStructure::new(
                b2(),
                Group::cyclic(3),
                vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3], vec![0, 2, 1, 3]]
            )
            .unwrap_err(),
            ActionError::CompositionLaw(1, 1, 1)
        );
        assert!(matches!(
            GammaStructure::new(b2(), g, vec![vec![0, 1, 2, 3]]),
            Err(ActionError::BadShape(_))
        ));
    }

    #[test]
    fn automorphisms() {
        assert_eq!(automorphism_group(&Monoid::trivial()), vec![vec![0]]);
        assert_eq!(
            automorphism_group(&b2()),
            vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]
        );
        // Aut(T7) = {id, (1 y)(x z)}
        assert_eq!(
            automorphism_group(&t7()),
            vec![vec![0, 1, 2, 3, 4, 5, 6], vec![0, 3, 4, 1, 2, 5, 6]]
        );
    }

    #[test]
    fn generator_builds_cyclic_group() {
        let gs = GammaStructure::from_generator(b2(), &[0, 2, 1, 3]).unwrap();
        assert_eq!(gs.group().order(), 2);
        assert_eq!(gs, b2_swap());
        let gs4 = GammaStructure::from_generator_with_order(b2(), &[0, 2, 1, 3], 4).unwrap();
        assert_eq!(gs4.group().order(), 4);
        assert_eq!(gs4.row(2), &[0, 1, 2, 3]);
        assert!(GammaStructure::from_generator_with_order(b2(), &[0, 2, 1, 3], 3).is_err());
    }

    #[test]
    fn restrict_to_ideal() {
        let gs = GammaStructure::trivial(t7());
        let a: ElemSet = [0, 1, 2].into_iter().collect();
        let sub = gs.restrict(a).unwrap();
        assert_eq!(sub.structure.size(), 3);
        assert_eq!(sub.structure.monoid().names(), &["0", "1", "x"]);
        assert_eq!(sub.push(sub.pull(a)), a);
        let bad: ElemSet = [0, 1, 3].into_iter().collect();
        assert!(gs.restrict(bad).is_err());
    }
}
