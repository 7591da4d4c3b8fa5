use super::weight::Weight;

/// Table `Γ_i` of one node: for every `ℓ ∈ 0..=|F_i|` and every subset
/// mask `S` over the bag positions, the best cut made of `S` and `ℓ`
/// forgotten vertices, as `(count, weight)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable<W> {
    pub(crate) bag: Vec<usize>,
    pub(crate) forgotten: usize,
    pub(crate) counts: Vec<u32>,
    pub(crate) weights: Vec<W>,
}

impl<W: Weight> DpTable<W> {
    pub(crate) fn with_capacity(bag: Vec<usize>, forgotten: usize) -> Self {
        let len = (forgotten + 1) << bag.len();
        DpTable {
            bag,
            forgotten,
            counts: Vec::with_capacity(len),
            weights: Vec::with_capacity(len),
        }
    }

    pub fn bag(&self) -> &[usize] {
        &self.bag
    }

    /// `|F_i|`.
    pub fn forgotten(&self) -> usize {
        self.forgotten
    }

    pub fn subsets(&self) -> usize {
        1 << self.bag.len()
    }

    /// Number of entries, `(|F_i| + 1) · 2^{|X_i|}`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    #[inline]
    pub(crate) fn index(&self, level: usize, mask: usize) -> usize {
        (level << self.bag.len()) | mask
    }

    /// The stored `(count, scaled weight)` for `(ℓ, S)`.
    #[inline]
    pub fn get(&self, level: usize, mask: usize) -> (usize, &W) {
        let i = self.index(level, mask);
        (self.counts[i] as usize, &self.weights[i])
    }

    #[inline]
    pub(crate) fn push(&mut self, count: usize, weight: W) {
        self.counts.push(count as u32);
        self.weights.push(weight);
    }

    /// Bag vertices selected by `mask`.
    pub fn members(&self, mask: usize) -> impl Iterator<Item = usize> + '_ {
        self.bag
            .iter()
            .enumerate()
            .filter(move |(p, _)| mask >> p & 1 == 1)
            .map(|(_, &v)| v)
    }

    /// Checks `count = ℓ + |S|` for every entry.
    pub fn counts_consistent(&self) -> bool {
        let k = self.bag.len();
        self.counts
            .iter()
            .enumerate()
            .all(|(i, &c)| c as usize == (i >> k) + (i & ((1 << k) - 1)).count_ones() as usize)
    }
}

/// Inserts a bit with value `bit` at position `pos`, shifting higher bits up.
#[inline]
pub(crate) fn insert_bit(mask: usize, pos: usize, bit: bool) -> usize {
    let low = mask & ((1 << pos) - 1);
    ((mask >> pos) << (pos + 1)) | ((bit as usize) << pos) | low
}

/// Removes the bit at `pos`, shifting higher bits down.
#[inline]
pub(crate) fn remove_bit(mask: usize, pos: usize) -> usize {
    let low = mask & ((1 << pos) - 1);
    ((mask >> (pos + 1)) << pos) | low
}
