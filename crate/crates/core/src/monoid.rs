//! Finite commutative monoids given by Cayley tables.
//!
//! Elements are indices `0..n` and the identity is always index 0. Besides the
//! table itself a validated [`Monoid`] caches the algebraic pre-order
//! `a <= b  iff  b = a + c for some c`, which almost every other module needs.

use std::sync::OnceLock;

use thiserror::Error;

use crate::elemset::{ElemSet, MAX_ELEMS};
use crate::Elem;

/// Default upper bound on the carrier size accepted by [`Monoid::new`].
pub const DEFAULT_MAX_SIZE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("malformed table: {0}")]
    BadShape(String),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("monoid of size {size} exceeds the configured limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("index 0 is not an identity: 0+{0} or {0}+0 differs from {0}")]
    NotIdentity(Elem),
    #[error("not commutative: {0}+{1} != {1}+{0}")]
    NotCommutative(Elem, Elem),
    #[error("not associative: ({0}+{1})+{2} != {0}+({1}+{2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("refinement precondition violated: {0}+{1} != {2}+{3}")]
    PreconditionViolated(Elem, Elem, Elem, Elem),
}

/// Which reading of minimality [`Monoid::minimal_elements`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalityMode {
    /// `a` is minimal when `b <= a` implies `a <= b`, for every `b`.
    Literal,
    /// Same test restricted to elements that are not below 0, and `a` itself
    /// must not be below 0.
    Nonzero,
}

/// A validated finite commutative monoid.
#[derive(Clone)]
pub struct Monoid {
    n: usize,
    names: Vec<String>,
    table: Vec<Elem>,
    /// `below[b]` is the set of `a` with `a <= b`.
    below: Vec<ElemSet>,
    refinement: OnceLock<Option<[Elem; 4]>>,
}

impl PartialEq for Monoid {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.table == other.table
    }
}

impl Eq for Monoid {}

impl std::fmt::Debug for Monoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Monoid")
            .field("names", &self.names)
            .field("rows", &self.rows())
            .finish()
    }
}

impl Monoid {
    /// Validates a Cayley table with the default size limit.
    pub fn new(names: Vec<String>, table: Vec<Vec<Elem>>) -> Result<Self, MonoidError> {
        Self::with_limit(names, table, DEFAULT_MAX_SIZE)
    }

    /// Validates a table whose element names are just the indices.
    pub fn from_table(table: Vec<Vec<Elem>>) -> Result<Self, MonoidError> {
        let names = (0..table.len()).map(|i| i.to_string()).collect();
        Self::new(names, table)
    }

    /// Validates `names` and `table`, reporting the first violated axiom.
    ///
    /// Checks run in the order shape, names, identity, commutativity,
    /// associativity; witnesses are the lexicographically first failure.
    pub fn with_limit(
        names: Vec<String>,
        table: Vec<Vec<Elem>>,
        limit: usize,
    ) -> Result<Self, MonoidError> {
        let n = table.len();
        if n == 0 {
            return Err(MonoidError::BadShape("empty table".into()));
        }
        let limit = limit.min(MAX_ELEMS);
        if n > limit {
            return Err(MonoidError::TooLarge { size: n, limit });
        }
        if names.len() != n {
            return Err(MonoidError::BadShape(format!(
                "{} names for {} elements",
                names.len(),
                n
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(MonoidError::BadShape(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(MonoidError::BadShape(format!(
                    "row {} contains out-of-range index {}",
                    i, bad
                )));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(MonoidError::DuplicateName(name.clone()));
            }
        }
        let flat: Vec<Elem> = table.into_iter().flatten().collect();
        let at = |a: Elem, b: Elem| flat[a * n + b];
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(MonoidError::NotIdentity(a));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if at(a, b) != at(b, a) {
                    return Err(MonoidError::NotCommutative(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(MonoidError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut below = vec![ElemSet::EMPTY; n];
        for a in 0..n {
            for c in 0..n {
                below[at(a, c)].insert(a);
            }
        }
        Ok(Monoid {
            n,
            names,
            table: flat,
            below,
            refinement: OnceLock::new(),
        })
    }

    /// The one-element monoid `{0}`.
    pub fn trivial() -> Self {
        Self::from_table(vec![vec![0]]).expect("trivial monoid")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.n + b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    /// Index of the element called `name`.
    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name)
    }

    /// The Cayley table as rows.
    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    /// Sum of a sequence of elements; the empty sum is 0.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// `k·a`.
    pub fn multiple(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    /// Elementwise sum set `{a + b : a in s, b in t}`.
    pub fn sum_set(&self, s: ElemSet, t: ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for a in s.iter() {
            for b in t.iter() {
                out.insert(self.add(a, b));
            }
        }
        out
    }

    /// Least `c` with `a + c = b`, if `a <= b`.
    pub fn leq(&self, a: Elem, b: Elem) -> Option<Elem> {
        (0..self.n).find(|&c| self.add(a, c) == b)
    }

    #[inline]
    pub fn is_leq(&self, a: Elem, b: Elem) -> bool {
        self.below[b].contains(a)
    }

    /// Neither `a <= b` nor `b <= a`.
    pub fn incomparable(&self, a: Elem, b: Elem) -> bool {
        !self.is_leq(a, b) && !self.is_leq(b, a)
    }

    /// `{a : a <= b}`.
    pub fn below(&self, b: Elem) -> ElemSet {
        self.below[b]
    }

    /// Downward closure of a set under the pre-order.
    pub fn down_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, b| acc.union(self.below[b]))
    }

    /// Elements below 0, i.e. the invertible ones.
    pub fn units(&self) -> ElemSet {
        self.below[0]
    }

    /// Whether `s` contains 0 and is closed under `+`.
    pub fn is_submonoid(&self, s: ElemSet) -> bool {
        s.contains(0) && self.sum_set(s, s).is_subset(s)
    }

    /// First pair `(a, b)` of nonzero elements with `a + b = 0`.
    pub fn conical_violation(&self) -> Option<(Elem, Elem)> {
        for a in 0..self.n {
            for b in 0..self.n {
                if (a, b) != (0, 0) && self.add(a, b) == 0 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_conical(&self) -> bool {
        self.conical_violation().is_none()
    }

    /// First `(a, b, c)` with `a + b = a + c` and `b != c`.
    pub fn cancellative_violation(&self) -> Option<(Elem, Elem, Elem)> {
        for a in 0..self.n {
            let mut first_preimage = vec![None; self.n];
            for b in 0..self.n {
                let s = self.add(a, b);
                match first_preimage[s] {
                    Some(prev) => return Some((a, prev, b)),
                    None => first_preimage[s] = Some(b),
                }
            }
        }
        None
    }

    pub fn is_cancellative(&self) -> bool {
        self.cancellative_violation().is_none()
    }

    /// Lexicographically least `(e1, e2, e3, e4)` with `a = e1+e2`,
    /// `b = e3+e4`, `c = e1+e3`, `d = e2+e4`.
    pub fn refinement_witness(
        &self,
        a: Elem,
        b: Elem,
        c: Elem,
        d: Elem,
    ) -> Result<Option<[Elem; 4]>, MonoidError> {
        if self.add(a, b) != self.add(c, d) {
            return Err(MonoidError::PreconditionViolated(a, b, c, d));
        }
        Ok(self.search_refinement(a, b, c, d))
    }

    fn search_refinement(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> Option<[Elem; 4]> {
        let n = self.n;
        for e1 in 0..n {
            if !self.is_leq(e1, a) || !self.is_leq(e1, c) {
                continue;
            }
            for e2 in (0..n).filter(|&e2| self.add(e1, e2) == a) {
                if !self.is_leq(e2, d) {
                    continue;
                }
                for e3 in (0..n).filter(|&e3| self.add(e1, e3) == c) {
                    for e4 in 0..n {
                        if self.add(e2, e4) == d && self.add(e3, e4) == b {
                            return Some([e1, e2, e3, e4]);
                        }
                    }
                }
            }
        }
        None
    }

    /// First `(a, b, c, d)` with `a + b = c + d` that admits no refinement.
    /// Computed once and cached.
    pub fn refinement_violation(&self) -> Option<[Elem; 4]> {
        *self.refinement.get_or_init(|| self.scan_refinement())
    }

    fn scan_refinement(&self) -> Option<[Elem; 4]> {
        let n = self.n;
        let mut pairs_by_sum = vec![Vec::new(); n];
        for c in 0..n {
            for d in 0..n {
                pairs_by_sum[self.add(c, d)].push((c, d));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for &(c, d) in &pairs_by_sum[self.add(a, b)] {
                    if self.search_refinement(a, b, c, d).is_none() {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
        None
    }

    pub fn is_refinement(&self) -> bool {
        self.refinement_violation().is_none()
    }

    pub fn minimal_elements(&self, mode: MinimalityMode) -> ElemSet {
        let units = self.units();
        let candidates = match mode {
            MinimalityMode::Literal => self.all(),
            MinimalityMode::Nonzero => self.all().difference(units),
        };
        candidates
            .iter()
            .filter(|&a| {
                self.below[a]
                    .intersection(candidates)
                    .iter()
                    .all(|b| self.is_leq(a, b))
            })
            .collect()
    }

    /// The same monoid with elements relabelled: new index `i` is old index
    /// `order[i]`. `order[0]` must be the identity.
    pub fn permuted(&self, order: &[Elem]) -> Result<Self, MonoidError> {
        let mut pos = vec![0; self.n];
        for (i, &old) in order.iter().enumerate() {
            pos[old] = i;
        }
        let names = order.iter().map(|&o| self.names[o].clone()).collect();
        let table = order
            .iter()
            .map(|&a| order.iter().map(|&b| pos[self.add(a, b)]).collect())
            .collect();
        Self::with_limit(names, table, MAX_ELEMS)
    }

    /// Direct sum with componentwise addition; element `(a, b)` gets index
    /// `a * other.size() + b`.
    pub fn direct_sum(&self, other: &Monoid) -> Result<Self, MonoidError> {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = vec![vec![0; n]; n];
        for (x, row) in table.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                let (a1, b1) = (x / n2, x % n2);
                let (a2, b2) = (y / n2, y % n2);
                *cell = self.add(a1, a2) * n2 + other.add(b1, b2);
            }
        }
        let names = (0..n)
            .map(|x| {
                if x == 0 {
                    "0".to_string()
                } else {
                    format!("({},{})", self.names[x / n2], other.names[x % n2])
                }
            })
            .collect();
        Self::with_limit(names, table, MAX_ELEMS)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn t7() -> Monoid {
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
        let idx = |t: &str| names.iter().position(|n| *n == t).unwrap();
        let table = rows
            .iter()
            .map(|r| r.split_whitespace().map(idx).collect())
            .collect();
        Monoid::new(names.iter().map(|s| s.to_string()).collect(), table).unwrap()
    }

    fn z2() -> Monoid {
        Monoid::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn semilattice2() -> Monoid {
        Monoid::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    // 0,1,x,y,z,s,b
    const ONE: Elem = 1;
    const X: Elem = 2;
    const Y: Elem = 3;
    const Z: Elem = 4;
    const S: Elem = 5;
    const B: Elem = 6;

    #[test]
    fn t7_validates() {
        let m = t7();
        assert_eq!(m.size(), 7);
        assert_eq!(m.add(B, B), S);
    }

    #[test]
    fn trivial_validates() {
        assert_eq!(Monoid::trivial().size(), 1);
    }

    #[test]
    fn t7_with_b_plus_b_equal_b_is_still_a_monoid() {
        // Scan result recorded: replacing b+b=s by b+b=b keeps all axioms.
        let m = t7();
        let mut rows = m.rows();
        rows[B][B] = B;
        let mutated = Monoid::new(m.names().to_vec(), rows).unwrap();
        assert!(mutated.is_leq(S, B));
        assert!(!mutated.is_leq(B, S));
    }

    #[test]
    fn validation_errors() {
        let m = t7();
        let mut rows = m.rows();
        rows[1][0] = 2;
        assert_eq!(
            Monoid::new(m.names().to_vec(), rows).unwrap_err(),
            MonoidError::NotIdentity(1)
        );
        let mut rows = m.rows();
        rows[1][2] = S;
        assert_eq!(
            Monoid::new(m.names().to_vec(), rows).unwrap_err(),
            MonoidError::NotCommutative(1, 2)
        );
        let mut rows = m.rows();
        rows[ONE][ONE] = X;
        let err = Monoid::new(m.names().to_vec(), rows).unwrap_err();
        assert!(matches!(err, MonoidError::NotAssociative(..)), "{err:?}");
        assert!(matches!(
            Monoid::from_table(vec![vec![0, 1], vec![1]]),
            Err(MonoidError::BadShape(_))
        ));
        assert!(matches!(
            Monoid::from_table(vec![]),
            Err(MonoidError::BadShape(_))
        ));
        assert_eq!(
            Monoid::new(
                vec!["0".into(), "0".into()],
                vec![vec![0, 1], vec![1, 1]]
            )
            .unwrap_err(),
            MonoidError::DuplicateName("0".into())
        );
        let big: Vec<Vec<Elem>> = (0..5).map(|_| vec![0; 5]).collect();
        assert!(matches!(
            Monoid::with_limit(vec!["a".into(); 5], big, 4),
            Err(MonoidError::TooLarge { size: 5, limit: 4 })
        ));
    }

    #[test]
    fn leq_witnesses() {
        let m = t7();
        assert_eq!(m.leq(ONE, S), Some(Y));
        assert_eq!(m.leq(B, S), Some(B));
        assert_eq!(m.leq(S, B), Some(B));
        for a in 0..m.size() {
            assert_eq!(m.leq(a, a), Some(0));
            assert_eq!(m.leq(0, a), Some(a));
        }
        assert_eq!(m.leq(S, ONE), None);
        assert!(m.incomparable(X, Y));
    }

    #[test]
    fn conical_and_cancellative() {
        assert!(t7().is_conical());
        assert!(Monoid::trivial().is_conical());
        assert_eq!(z2().conical_violation(), Some((1, 1)));
        // lexicographically first witness: 1+0 = 1 = 1+1
        assert_eq!(t7().cancellative_violation(), Some((ONE, 0, ONE)));
        let m = t7();
        assert_eq!(m.add(ONE, ONE), m.add(ONE, X));
        assert!(Monoid::trivial().is_cancellative());
        assert!(z2().is_cancellative());
    }

    #[test]
    fn refinement() {
        let m = t7();
        assert_eq!(m.refinement_witness(ONE, ONE, X, X), Ok(None));
        assert_eq!(m.refinement_violation(), Some([ONE, ONE, X, X]));
        for a in 0..m.size() {
            for b in 0..m.size() {
                // (a,0,0,b) always works; the search returns the least solution
                let w = m.refinement_witness(a, b, a, b).unwrap().unwrap();
                assert!(w <= [a, 0, 0, b]);
                let [e1, e2, e3, e4] = w;
                assert_eq!((m.add(e1, e2), m.add(e3, e4), m.add(e1, e3), m.add(e2, e4)), (a, b, a, b));
            }
        }
        assert_eq!(
            m.refinement_witness(ONE, 0, Y, 0),
            Err(MonoidError::PreconditionViolated(ONE, 0, Y, 0))
        );
        // brute force over the 2^4 quadruples: (0,1,1,0) is the least of
        // several solutions, (1,1,1,1) is another
        let sl = semilattice2();
        assert_eq!(sl.refinement_witness(1, 1, 1, 1), Ok(Some([0, 1, 1, 0])));
        let [e1, e2, e3, e4] = [1, 1, 1, 1];
        assert!(sl.add(e1, e2) == 1 && sl.add(e3, e4) == 1 && sl.add(e1, e3) == 1 && sl.add(e2, e4) == 1);
        assert!(Monoid::trivial().is_refinement());
        let b2 = sl.direct_sum(&sl).unwrap();
        assert!(b2.is_refinement());
    }

    #[test]
    fn minimal_elements_both_modes() {
        let triv = Monoid::trivial();
        assert_eq!(triv.minimal_elements(MinimalityMode::Literal).to_vec(), vec![0]);
        // no element outside the units, so nothing is minimal-nonzero
        assert!(triv.minimal_elements(MinimalityMode::Nonzero).is_empty());
        let m = t7();
        assert_eq!(m.minimal_elements(MinimalityMode::Literal).to_vec(), vec![0]);
        assert_eq!(m.minimal_elements(MinimalityMode::Nonzero).to_vec(), vec![X, Z]);
        let sl = semilattice2();
        assert_eq!(sl.minimal_elements(MinimalityMode::Nonzero).to_vec(), vec![1]);
        assert_eq!(sl.minimal_elements(MinimalityMode::Literal).to_vec(), vec![0]);
    }

    #[test]
    fn permuted_preserves_structure() {
        let m = t7();
        let order = [0, 6, 5, 4, 3, 2, 1];
        let p = m.permuted(&order).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(order[p.add(i, j)], m.add(order[i], order[j]));
            }
        }
    }
}
