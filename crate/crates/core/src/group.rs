//! Finite groups given by Cayley tables, identity at index 0.

use thiserror::Error;

use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed group table: {0}")]
    BadShape(String),
    #[error("index 0 is not the group identity (fails at {0})")]
    NoIdentity(Elem),
    #[error("group operation not associative at ({0},{1},{2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("element {0} has no inverse")]
    NoInverse(Elem),
    #[error("group is not abelian: {0}*{1} != {1}*{0}")]
    NotAbelian(Elem, Elem),
}

/// A validated finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    m: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    abelian: bool,
}

impl Group {
    /// Validates a Cayley table and requires the group to be abelian.
    pub fn new(table: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        Self::with_options(table, false)
    }

    /// Like [`Group::new`]; with `allow_nonabelian` a non-commuting pair is
    /// recorded in [`Group::is_abelian`] instead of being an error.
    pub fn with_options(table: Vec<Vec<Elem>>, allow_nonabelian: bool) -> Result<Self, GroupError> {
        let m = table.len();
        if m == 0 {
            return Err(GroupError::BadShape("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(GroupError::BadShape(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    m
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= m) {
                return Err(GroupError::BadShape(format!(
                    "row {} contains out-of-range index {}",
                    i, bad
                )));
            }
        }
        let flat: Vec<Elem> = table.into_iter().flatten().collect();
        let at = |a: Elem, b: Elem| flat[a * m + b];
        for a in 0..m {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::NoIdentity(a));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(m);
        for a in 0..m {
            match (0..m).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => inverse.push(b),
                None => return Err(GroupError::NoInverse(a)),
            }
        }
        let mut abelian = true;
        'outer: for a in 0..m {
            for b in a + 1..m {
                if at(a, b) != at(b, a) {
                    if !allow_nonabelian {
                        return Err(GroupError::NotAbelian(a, b));
                    }
                    abelian = false;
                    break 'outer;
                }
            }
        }
        Ok(Group {
            m,
            table: flat,
            inverse,
            abelian,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/k` with addition mod `k`.
    pub fn cyclic(k: usize) -> Self {
        assert!(k > 0);
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        Self::new(table).expect("cyclic group")
    }

    /// The group generated by permutations of `0..n` under composition, as an
    /// abstract group. Element 0 is the identity permutation; the others are
    /// listed in the order returned alongside the group.
    ///
    /// `mul(a, b)` corresponds to applying `b` first and then `a`.
    pub fn from_permutations(perms: &[Vec<Elem>]) -> (Self, Vec<Vec<Elem>>) {
        let n = perms.first().map_or(0, |p| p.len());
        let identity: Vec<Elem> = (0..n).collect();
        let mut elements = vec![identity];
        let mut i = 0;
        while i < elements.len() {
            for g in perms {
                let prod: Vec<Elem> = elements[i].iter().map(|&x| g[x]).collect();
                if !elements.contains(&prod) {
                    elements.push(prod);
                }
            }
            i += 1;
        }
        let compose = |a: &[Elem], b: &[Elem]| -> Vec<Elem> { b.iter().map(|&x| a[x]).collect() };
        let table = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let ab = compose(a, b);
                        elements.iter().position(|e| *e == ab).expect("closed")
                    })
                    .collect()
            })
            .collect();
        let group = Self::with_options(table, true).expect("permutation group");
        (group, elements)
    }

    pub fn order(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.m + b]
    }

    pub fn inverse(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inverse
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_trivial(&self) -> bool {
        self.m == 1
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.m).map(|r| r.to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_table() -> Vec<Vec<Elem>> {
        let perms: Vec<Vec<Elem>> = vec![vec![1, 0, 2], vec![0, 2, 1]];
        Group::from_permutations(&perms).0.rows()
    }

    #[test]
    fn trivial_and_cyclic() {
        let g = Group::new(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let z4 = Group::cyclic(4);
        assert_eq!(z4.inverses(), &[0, 3, 2, 1]);
        assert!(z4.is_abelian());
    }

    #[test]
    fn s3_is_rejected_unless_allowed() {
        let table = s3_table();
        assert_eq!(table.len(), 6);
        let err = Group::new(table.clone()).unwrap_err();
        assert!(matches!(err, GroupError::NotAbelian(..)), "{err:?}");
        // first non-commuting pair in scan order
        let flat = |a: usize, b: usize| table[a][b];
        let (a, b) = (0..6)
            .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
            .find(|&(a, b)| flat(a, b) != flat(b, a))
            .unwrap();
        assert_eq!(err, GroupError::NotAbelian(a, b));
        let g = Group::with_options(table, true).unwrap();
        assert!(!g.is_abelian());
    }

    #[test]
    fn errors() {
        assert!(matches!(Group::new(vec![]), Err(GroupError::BadShape(_))));
        assert_eq!(
            Group::new(vec![vec![1, 0], vec![0, 1]]).unwrap_err(),
            GroupError::NoIdentity(0)
        );
        // identity present but 1*1 = 1 leaves 1 without inverse
        assert_eq!(
            Group::new(vec![vec![0, 1], vec![1, 1]]).unwrap_err(),
            GroupError::NoInverse(1)
        );
        let bad_assoc = vec![
            vec![0, 1, 2],
            vec![1, 0, 0],
            vec![2, 0, 1],
        ];
        assert!(matches!(
            Group::new(bad_assoc),
            Err(GroupError::NotAssociative(..))
        ));
    }
}
