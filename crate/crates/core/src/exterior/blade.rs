/// Strictly increasing coordinate-index tuple, stored as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(pub(crate) u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn full(dim: usize) -> Blade {
        if dim >= 32 {
            Blade(u32::MAX)
        } else {
            Blade((1u32 << dim) - 1)
        }
    }

    pub fn single(index: usize) -> Blade {
        Blade(1 << index)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    /// Indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    pub fn is_subset_of(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn without(self, other: Blade) -> Blade {
        Blade(self.0 & !other.0)
    }

    /// Number of members strictly below `index`.
    pub(crate) fn count_below(self, index: usize) -> u32 {
        (self.0 & ((1u32 << index) - 1)).count_ones()
    }

    /// Sign and blade of `e_self ∧ e_other`, or `None` when they share an index.
    pub fn merge(self, other: Blade) -> Option<(bool, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in other.indices() {
            swaps += (self.0 >> j).count_ones();
        }
        Some((swaps % 2 == 1, Blade(self.0 | other.0)))
    }

    /// Sign of removing `inner`'s indices one at a time, smallest first,
    /// from `self`; each removal of index `j` contributes `(-1)^(members below j)`.
    pub(crate) fn removal_sign(self, inner: Blade) -> bool {
        let mut cur = self;
        let mut odd = false;
        for j in inner.indices() {
            odd ^= cur.count_below(j) % 2 == 1;
            cur = Blade(cur.0 & !(1 << j));
        }
        odd
    }
}

/// Sort an index list into a blade, tracking the permutation parity.
/// Returns `None` if an index repeats.
pub fn sort_indices(indices: &[usize]) -> Option<(bool, Blade)> {
    let mut acc = (false, Blade::EMPTY);
    for &i in indices {
        let (s, b) = acc.1.merge(Blade::single(i))?;
        acc = (acc.0 ^ s, b);
    }
    Some(acc)
}
