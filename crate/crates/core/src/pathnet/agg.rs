//! Semigroup channels and inverse-free range aggregation.

/// A commutative semigroup over `i64`. Empty aggregates are `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semigroup {
    Sum,
    Max,
    Min,
}

impl Semigroup {
    #[inline]
    pub fn combine(self, a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(match self {
                Semigroup::Sum => x + y,
                Semigroup::Max => x.max(y),
                Semigroup::Min => x.min(y),
            }),
        }
    }

    pub fn fold(self, it: impl IntoIterator<Item = Option<i64>>) -> Option<i64> {
        it.into_iter().fold(None, |acc, x| self.combine(acc, x))
    }
}

/// Per-channel accumulator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agg {
    pub vals: Vec<Option<i64>>,
}

impl Agg {
    pub fn empty(channels: usize) -> Self {
        Agg {
            vals: vec![None; channels],
        }
    }

    pub fn add(&mut self, ops: &[Semigroup], other: &[Option<i64>]) {
        for (i, op) in ops.iter().enumerate() {
            self.vals[i] = op.combine(self.vals[i], other[i]);
        }
    }
}

/// Disjoint sparse table: any range `[lo, hi)` in O(1) combines, no inverses.
#[derive(Clone, Debug)]
pub struct RangeTable {
    op: Semigroup,
    len: usize,
    levels: Vec<Vec<Option<i64>>>,
    base: Vec<Option<i64>>,
}

impl RangeTable {
    pub fn new(op: Semigroup, vals: &[Option<i64>]) -> Self {
        let len = vals.len();
        let mut levels = Vec::new();
        let mut h = 1;
        while (1usize << (h - 1)) < len {
            let half = 1usize << (h - 1);
            let block = 1usize << h;
            let mut lv = vec![None; len];
            let mut start = 0;
            while start < len {
                let mid = (start + half).min(len);
                // suffixes of the left half, prefixes of the right half
                let mut acc = None;
                for i in (start..mid).rev() {
                    acc = op.combine(vals[i], acc);
                    lv[i] = acc;
                }
                let mut acc = None;
                for (i, slot) in lv.iter_mut().enumerate().take((start + block).min(len)).skip(mid) {
                    acc = op.combine(acc, vals[i]);
                    *slot = acc;
                }
                start += block;
            }
            levels.push(lv);
            h += 1;
        }
        RangeTable {
            op,
            len,
            levels,
            base: vals.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Aggregate over `[lo, hi)`.
    pub fn query(&self, lo: usize, hi: usize) -> Option<i64> {
        debug_assert!(hi <= self.len);
        if lo >= hi {
            return None;
        }
        let r = hi - 1;
        if lo == r {
            return self.base[lo];
        }
        let h = (usize::BITS - (lo ^ r).leading_zeros()) as usize;
        let lv = &self.levels[h - 1];
        self.op.combine(lv[lo], lv[r])
    }
}

/// Prefix aggregates `pre[i]` over the first `i` values.
pub fn prefixes(op: Semigroup, vals: impl IntoIterator<Item = Option<i64>>) -> Vec<Option<i64>> {
    let mut out = vec![None];
    let mut acc = None;
    for v in vals {
        acc = op.combine(acc, v);
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn range_table_matches_fold(vals in prop::collection::vec(prop::option::of(-50i64..50), 0..70), lo in 0usize..70, hi in 0usize..70) {
            for op in [Semigroup::Sum, Semigroup::Max, Semigroup::Min] {
                let t = RangeTable::new(op, &vals);
                let (lo, hi) = (lo.min(vals.len()), hi.min(vals.len()));
                let want = if lo < hi { op.fold(vals[lo..hi].iter().copied()) } else { None };
                prop_assert_eq!(t.query(lo, hi), want);
            }
        }
    }

    #[test]
    fn empty_is_none() {
        assert_eq!(Semigroup::Max.fold([None, None]), None);
        assert_eq!(Semigroup::Sum.combine(Some(2), None), Some(2));
    }
}
