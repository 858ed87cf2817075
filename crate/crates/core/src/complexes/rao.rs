//! Recursive atom orderings of bounded graded posets.
//!
//! A bounded graded poset `P` of length 1 admits one trivially. Otherwise an
//! ordering `a_1, ..., a_t` of its atoms is recursive when
//!
//! 1. each upper interval `[a_j, 1̂]` admits a recursive atom ordering in
//!    which the atoms covering some earlier `a_i` come first, and
//! 2. whenever `i < j` and `a_i, a_j < y`, there are `k < j` and an atom `z`
//!    of `[a_j, 1̂]` with `a_k < z ≤ y`.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::whitehead::Poset;

use super::ComplexError;

/// Key of one recursive step: the bottom element of the upper interval and
/// the atoms that must come first (sorted).
pub type IntervalKey = (usize, Vec<usize>);

#[derive(Clone, Debug)]
pub struct RecursiveAtomOrdering {
    pub bottom: usize,
    pub top: usize,
    orderings: HashMap<IntervalKey, Vec<usize>>,
}

impl RecursiveAtomOrdering {
    /// The ordering of the atoms of the whole poset.
    pub fn atoms(&self) -> &[usize] {
        &self.orderings[&(self.bottom, Vec::new())]
    }

    pub fn ordering(&self, bottom: usize, first: &[usize]) -> Option<&[usize]> {
        self.orderings.get(&(bottom, first.to_vec())).map(Vec::as_slice)
    }

    /// Number of upper intervals carrying an ordering.
    pub fn interval_count(&self) -> usize {
        self.orderings.len()
    }
}

struct Graded<'a> {
    p: &'a Poset,
    top: usize,
    rank: Vec<usize>,
    covers: Vec<Vec<usize>>,
}

fn graded(p: &Poset) -> Result<Graded<'_>, ComplexError> {
    let (Some(bottom), Some(top)) = (p.minimum(), p.maximum()) else {
        return Err(ComplexError::NotBoundedGraded("poset is not bounded".into()));
    };
    if !p.is_graded() {
        return Err(ComplexError::NotBoundedGraded("maximal chains differ in length".into()));
    }
    let covers: Vec<Vec<usize>> = (0..p.len()).map(|x| p.upper_covers(x)).collect();
    let mut rank = vec![usize::MAX; p.len()];
    rank[bottom] = 0;
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| p.down_set(x).count_ones(..));
    for &x in &order {
        for &y in &covers[x] {
            rank[y] = rank[x] + 1;
        }
    }
    Ok(Graded { p, top, rank, covers })
}

impl Graded<'_> {
    fn length_above(&self, x: usize) -> usize {
        self.rank[self.top] - self.rank[x]
    }
}

/// Search for a recursive atom ordering. Candidates are tried in order of
/// (number of upper covers, index); failed prefixes are memoized by the set
/// of atoms already placed, since the remaining conditions only see that set.
pub fn find_rao(p: &Poset) -> Result<Option<RecursiveAtomOrdering>, ComplexError> {
    let g = graded(p)?;
    let bottom = p.minimum().expect("checked bounded");
    let mut memo: HashMap<IntervalKey, Option<Vec<usize>>> = HashMap::new();
    let found = search(&g, bottom, Vec::new(), &mut memo);
    if found.is_none() {
        return Ok(None);
    }
    // keep only intervals reachable from the root
    let mut orderings = HashMap::new();
    collect(&g, (bottom, Vec::new()), &memo, &mut orderings);
    Ok(Some(RecursiveAtomOrdering {
        bottom,
        top: g.top,
        orderings,
    }))
}

fn collect(
    g: &Graded,
    key: IntervalKey,
    memo: &HashMap<IntervalKey, Option<Vec<usize>>>,
    out: &mut HashMap<IntervalKey, Vec<usize>>,
) {
    if out.contains_key(&key) {
        return;
    }
    let ord = memo[&key].clone().expect("reachable intervals succeeded");
    out.insert(key.clone(), ord.clone());
    if g.length_above(key.0) <= 1 {
        return;
    }
    let mut placed = FixedBitSet::with_capacity(g.p.len());
    for &a in &ord {
        let first: Vec<usize> = g.covers[a].iter().copied().filter(|&z| placed.contains(z)).collect();
        collect(g, (a, first), memo, out);
        placed.union_with(g.p.up_set(a));
    }
}

fn search(
    g: &Graded,
    x: usize,
    first: Vec<usize>,
    memo: &mut HashMap<IntervalKey, Option<Vec<usize>>>,
) -> Option<Vec<usize>> {
    let key = (x, first);
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let mut atoms = g.covers[x].clone();
    atoms.sort_by_key(|&a| (g.covers[a].len(), a));
    let result = if g.length_above(x) <= 1 {
        Some(atoms)
    } else {
        let mut state = Search {
            atoms: &atoms,
            first: &key.1,
            chosen: Vec::new(),
            dead: HashSet::new(),
        };
        let mut up = FixedBitSet::with_capacity(g.p.len());
        if extend(g, &mut state, &mut up, memo) {
            Some(state.chosen)
        } else {
            None
        }
    };
    memo.insert(key, result.clone());
    result
}

struct Search<'a> {
    atoms: &'a [usize],
    first: &'a [usize],
    chosen: Vec<usize>,
    dead: HashSet<Vec<usize>>,
}

/// `up` is the union of the up-sets of the atoms placed so far.
fn extend(
    g: &Graded,
    s: &mut Search,
    up: &mut FixedBitSet,
    memo: &mut HashMap<IntervalKey, Option<Vec<usize>>>,
) -> bool {
    if s.chosen.len() == s.atoms.len() {
        return true;
    }
    let mut placed_key = s.chosen.clone();
    placed_key.sort_unstable();
    if s.dead.contains(&placed_key) {
        return false;
    }
    let in_first = s.chosen.len() < s.first.len();
    for k in 0..s.atoms.len() {
        let a = s.atoms[k];
        if s.chosen.contains(&a) || (in_first && !s.first.contains(&a)) {
            continue;
        }
        let z: Vec<usize> = g.covers[a].iter().copied().filter(|&c| up.contains(c)).collect();
        // condition 2: every y > a above an earlier atom lies above some z
        let mut reach = FixedBitSet::with_capacity(g.p.len());
        for &c in &z {
            reach.union_with(g.p.up_set(c));
        }
        let ok2 =
            g.p.up_set(a)
                .ones()
                .all(|y| y == a || !up.contains(y) || reach.contains(y));
        if !ok2 {
            continue;
        }
        if search(g, a, z, memo).is_none() {
            continue;
        }
        let saved = up.clone();
        up.union_with(g.p.up_set(a));
        s.chosen.push(a);
        if extend(g, s, up, memo) {
            return true;
        }
        s.chosen.pop();
        *up = saved;
    }
    s.dead.insert(placed_key);
    false
}

/// Check an ordering against the definition, condition by condition.
pub fn verify_rao(p: &Poset, rao: &RecursiveAtomOrdering) -> Result<bool, ComplexError> {
    let g = graded(p)?;
    if p.minimum() != Some(rao.bottom) || g.top != rao.top {
        return Ok(false);
    }
    let mut done: HashMap<IntervalKey, bool> = HashMap::new();
    Ok(verify_node(&g, rao, (rao.bottom, Vec::new()), &mut done))
}

fn verify_node(
    g: &Graded,
    rao: &RecursiveAtomOrdering,
    key: IntervalKey,
    done: &mut HashMap<IntervalKey, bool>,
) -> bool {
    if let Some(&r) = done.get(&key) {
        return r;
    }
    let ok = verify_uncached(g, rao, &key, done);
    done.insert(key, ok);
    ok
}

fn verify_uncached(
    g: &Graded,
    rao: &RecursiveAtomOrdering,
    key: &IntervalKey,
    done: &mut HashMap<IntervalKey, bool>,
) -> bool {
    let (x, first) = key;
    let Some(ord) = rao.orderings.get(key) else {
        return false;
    };
    // a permutation of the atoms of [x, 1̂]
    let mut sorted = ord.clone();
    sorted.sort_unstable();
    let mut atoms = g.covers[*x].clone();
    atoms.sort_unstable();
    if sorted != atoms {
        return false;
    }
    // the required atoms form an initial segment
    let mut head = ord[..first.len().min(ord.len())].to_vec();
    head.sort_unstable();
    if head != *first {
        return false;
    }
    if g.length_above(*x) <= 1 {
        return true;
    }
    let p = g.p;
    for j in 0..ord.len() {
        let aj = ord[j];
        for &ai in &ord[..j] {
            for y in p.up_set(ai).intersection(p.up_set(aj)) {
                let witnessed = ord[..j]
                    .iter()
                    .any(|&ak| g.covers[aj].iter().any(|&z| p.lt(ak, z) && p.leq(z, y)));
                if !witnessed {
                    return false;
                }
            }
        }
        let fj: Vec<usize> = g.covers[aj]
            .iter()
            .copied()
            .filter(|&z| ord[..j].iter().any(|&ai| g.covers[ai].contains(&z)))
            .collect();
        if !verify_node(g, rao, (aj, fj), done) {
            return false;
        }
    }
    true
}
