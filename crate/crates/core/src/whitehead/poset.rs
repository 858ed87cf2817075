//! Finite posets stored as dense up-set bitsets.

use fixedbitset::FixedBitSet;

/// A finite poset on `0..len()`. Row `x` of `up` is `{y : x ≤ y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    /// Index of an adjoined global maximum, if one was added.
    pub adjoined_top: Option<usize>,
    /// Whether the order has been reversed relative to its source.
    pub dualized: bool,
}

impl Poset {
    /// Build from a predicate `leq(x, y)`. The predicate is trusted; call
    /// [`Poset::is_partial_order`] to check it.
    pub fn from_fn(size: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Self {
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..size {
                if leq(x, y) {
                    row.insert(y);
                }
            }
        }
        Self::from_up_sets(up)
    }

    pub fn from_up_sets(up: Vec<FixedBitSet>) -> Self {
        let size = up.len();
        let mut down = vec![FixedBitSet::with_capacity(size); size];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        Poset {
            up,
            down,
            adjoined_top: None,
            dualized: false,
        }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Reflexive, antisymmetric and transitive.
    pub fn is_partial_order(&self) -> bool {
        (0..self.len()).all(|x| {
            self.leq(x, x)
                && self.up[x]
                    .ones()
                    .all(|y| (y == x || !self.leq(y, x)) && self.up[y].is_subset(&self.up[x]))
        })
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.up[x]
            .ones()
            .filter(|&y| y != x && self.up[x].intersection(&self.down[y]).count() == 2)
            .collect()
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.down[x]
            .ones()
            .filter(|&y| y != x && self.down[x].intersection(&self.up[y]).count() == 2)
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.down[x].count_ones(..) == 1).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].count_ones(..) == 1).collect()
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up[x].count_ones(..) == self.len())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.down[x].count_ones(..) == self.len())
    }

    pub fn is_bounded(&self) -> bool {
        self.minimum().is_some() && self.maximum().is_some()
    }

    /// Elements covering the global minimum; empty if there is none.
    pub fn atoms(&self) -> Vec<usize> {
        match self.minimum() {
            Some(m) => self.upper_covers(m),
            None => Vec::new(),
        }
    }

    /// The reversed order.
    pub fn dual(&self) -> Poset {
        Poset {
            up: self.down.clone(),
            down: self.up.clone(),
            adjoined_top: None,
            dualized: !self.dualized,
        }
    }

    /// A copy with a new global maximum appended as the last index.
    pub fn adjoin_top(&self) -> Poset {
        let size = self.len() + 1;
        let top = size - 1;
        let mut up: Vec<FixedBitSet> = self
            .up
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.grow(size);
                r.insert(top);
                r
            })
            .collect();
        let mut last = FixedBitSet::with_capacity(size);
        last.insert(top);
        up.push(last);
        let mut p = Self::from_up_sets(up);
        p.adjoined_top = Some(top);
        p.dualized = self.dualized;
        p
    }

    /// The induced subposet on `elements` (in the given order).
    pub fn subposet(&self, elements: &[usize]) -> Poset {
        Poset::from_fn(elements.len(), |a, b| self.leq(elements[a], elements[b]))
    }

    /// Elements of the closed interval `[x, y]`, ascending.
    pub fn interval_elements(&self, x: usize, y: usize) -> Vec<usize> {
        self.up[x].intersection(&self.down[y]).collect()
    }

    /// The closed interval `[x, y]` as a poset, with its element indices.
    pub fn interval(&self, x: usize, y: usize) -> (Poset, Vec<usize>) {
        let elems = self.interval_elements(x, y);
        (self.subposet(&elems), elems)
    }

    /// Open upper interval `(x, ∞)`.
    pub fn strict_up(&self, x: usize) -> Vec<usize> {
        self.up[x].ones().filter(|&y| y != x).collect()
    }

    /// Length (number of covers) of every maximal chain.
    pub fn maximal_chain_lengths(&self) -> Vec<usize> {
        let mut memo: Vec<Option<Vec<usize>>> = vec![None; self.len()];
        let mut out = Vec::new();
        for m in self.minimal_elements() {
            out.extend(self.chain_lengths_from(m, &mut memo));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn chain_lengths_from(&self, x: usize, memo: &mut Vec<Option<Vec<usize>>>) -> Vec<usize> {
        if let Some(v) = &memo[x] {
            return v.clone();
        }
        let covers = self.upper_covers(x);
        let mut lens = Vec::new();
        if covers.is_empty() {
            lens.push(0);
        }
        for c in covers {
            lens.extend(self.chain_lengths_from(c, memo).into_iter().map(|l| l + 1));
        }
        lens.sort_unstable();
        lens.dedup();
        memo[x] = Some(lens.clone());
        lens
    }

    /// Every maximal chain has the same length.
    pub fn is_graded(&self) -> bool {
        self.maximal_chain_lengths().len() <= 1
    }

    /// Longest chain length (number of covers).
    pub fn length(&self) -> usize {
        self.maximal_chain_lengths().last().copied().unwrap_or(0)
    }

    /// Greatest lower bound of `x` and `y`, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lower = self.down[x].intersection(&self.down[y]).collect::<FixedBitSet>();
        lower.ones().find(|&g| lower.is_subset(&self.down[g]))
    }

    /// Least upper bound of `x` and `y`, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let upper = self.up[x].intersection(&self.up[y]).collect::<FixedBitSet>();
        upper.ones().find(|&g| upper.is_subset(&self.up[g]))
    }
}
