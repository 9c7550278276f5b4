use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::Rational;

/// Incremental row echelon form over the rationals, for rank computations.
#[derive(Debug, Default)]
pub(crate) struct Echelon {
    // pivot column -> row whose leading entry is 1 at that column
    pivots: HashMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether the rank went up.
    pub(crate) fn insert(&mut self, mut row: BTreeMap<usize, Rational>) -> bool {
        row.retain(|_, c| !c.is_zero());
        while let Some((&col, lead)) = row.iter().next() {
            let Some(pivot) = self.pivots.get(&col) else {
                let inv = Rational::one() / lead;
                for c in row.values_mut() {
                    *c *= &inv;
                }
                self.pivots.insert(col, row);
                return true;
            };
            let factor = lead.clone();
            for (k, v) in pivot {
                let slot = row.entry(*k).or_insert_with(Rational::zero);
                *slot -= &factor * v;
                if slot.is_zero() {
                    row.remove(k);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> BTreeMap<usize, Rational> {
        entries.iter().map(|&(k, v)| (k, Rational::from_integer(v.into()))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 1), (1, 2)])));
        assert!(e.insert(row(&[(1, 1), (2, 1)])));
        assert!(!e.insert(row(&[(0, 2), (1, 5), (2, 1)])));
        assert!(!e.insert(row(&[(3, 0)])));
        assert_eq!(e.rank(), 2);
        assert!(e.insert(row(&[(2, 3)])));
        assert_eq!(e.rank(), 3);
    }
}
