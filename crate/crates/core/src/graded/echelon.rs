use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Sparse row echelon form over the rationals, keyed by pivot column.
///
/// Every stored row has a unit pivot and no entries left of it.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn eliminate(
        &self,
        row: &mut BTreeMap<usize, Rational>,
        c: usize,
        prow: &BTreeMap<usize, Rational>,
    ) {
        let f = row.remove(&c).expect("entry present");
        for (&j, v) in prow.range(c + 1..) {
            let e = row.entry(j).or_insert_with(Rational::zero);
            *e -= &f * v;
            if e.is_zero() {
                row.remove(&j);
            }
        }
    }

    /// Adds a row. Returns true if it increased the rank.
    pub fn insert(&mut self, mut row: BTreeMap<usize, Rational>) -> bool {
        row.retain(|_, v| !v.is_zero());
        let mut from = 0;
        loop {
            let Some(c) = row.range(from..).next().map(|(&c, _)| c) else {
                return false;
            };
            match self.rows.get(&c) {
                Some(prow) => {
                    self.eliminate(&mut row, c, prow);
                    from = c + 1;
                }
                None => {
                    let inv = Rational::one() / &row[&c];
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.rows.insert(c, row);
                    return true;
                }
            }
        }
    }

    /// Fully reduces a vector against all pivots. The result is supported on
    /// non-pivot columns only.
    pub fn reduce(&self, mut row: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        row.retain(|_, v| !v.is_zero());
        let mut from = 0;
        while let Some(c) = row.range(from..).next().map(|(&c, _)| c) {
            if let Some(prow) = self.rows.get(&c) {
                self.eliminate(&mut row, c, prow);
            }
            from = c + 1;
        }
        row
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[(usize, i64)]) -> BTreeMap<usize, Rational> {
        v.iter()
            .map(|&(c, x)| (c, Rational::from_integer(x.into())))
            .collect()
    }

    #[test]
    fn rank_and_reduction() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(row(&[(0, 2), (2, 4)])));
        assert!(e.insert(row(&[(0, 1), (1, 1)])));
        assert!(!e.insert(row(&[(0, 4), (1, 2), (2, 4)])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots().collect::<Vec<_>>(), vec![0, 1]);
        // x0 ≡ -2 x2 and x1 ≡ 2 x2
        let r = e.reduce(row(&[(0, 1), (1, 1)]));
        assert!(r.is_empty());
        let r = e.reduce(row(&[(0, 1)]));
        assert_eq!(r, row(&[(2, -2)]));
    }
}
