/// Lexicographic bijection between 2-subsets `{i, j}` of `0..m` (`i < j`)
/// and `0..C(m, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairIndexer {
    m: usize,
}

impl PairIndexer {
    pub fn new(m: usize) -> Self {
        PairIndexer { m }
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    /// `C(m, 2)`.
    pub fn len(&self) -> usize {
        self.m * self.m.saturating_sub(1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of the first pair whose smaller element is `i`.
    #[inline]
    fn start(&self, i: usize) -> usize {
        i * (2 * self.m - i - 1) / 2
    }

    /// Rank of `{i, j}`; the arguments may come in either order.
    #[inline]
    pub fn rank(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        debug_assert!(
            i != j && j < self.m,
            "invalid pair ({i},{j}) for m={}",
            self.m
        );
        self.start(i) + (j - i - 1)
    }

    pub fn unrank(&self, r: usize) -> (usize, usize) {
        assert!(r < self.len(), "rank {r} out of range for m={}", self.m);
        // Largest i with start(i) <= r; start(m - 1) = len > r.
        let (mut lo, mut hi) = (0, self.m - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.start(mid) <= r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, r - self.start(lo) + lo + 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> {
        let m = self.m;
        (0..m).flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_bijection_up_to_100() {
        for m in 0..=100 {
            let idx = PairIndexer::new(m);
            let mut count = 0;
            for (r, (i, j)) in idx.iter().enumerate() {
                assert_eq!(idx.rank(i, j), r);
                assert_eq!(idx.rank(j, i), r);
                assert_eq!(idx.unrank(r), (i, j));
                count += 1;
            }
            assert_eq!(count, idx.len());
        }
    }

    #[test]
    fn small_ranks() {
        let idx = PairIndexer::new(4);
        let pairs: Vec<_> = (0..idx.len()).map(|r| idx.unrank(r)).collect();
        assert_eq!(pairs, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn large_ground_set() {
        let idx = PairIndexer::new(1 << 20);
        let last = idx.len() - 1;
        assert_eq!(idx.unrank(last), ((1 << 20) - 2, (1 << 20) - 1));
        assert_eq!(idx.unrank(idx.rank(12345, 999_999)), (12345, 999_999));
    }
}
