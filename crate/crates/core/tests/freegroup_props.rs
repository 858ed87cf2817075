use mccool_core::freegroup::{commutes, compose, reduce, whitehead_aut, Letter, PureSymAut, WhiteheadSymbol};
use mccool_core::LabelSet;
use proptest::prelude::*;

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let n = n as Letter;
    prop::collection::vec(
        (1..=n, any::<bool>()).prop_map(|(i, inv)| if inv { -i } else { i }),
        0..=max_len,
    )
}

fn rank_and_pair() -> impl Strategy<Value = (usize, Vec<Letter>, Vec<Letter>)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), word(n, 40), word(n, 40)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduction_is_confluent((n, u, v) in rank_and_pair()) {
        let uv: Vec<Letter> = u.iter().chain(&v).copied().collect();
        let direct = reduce(n, &uv).unwrap();
        let ru = reduce(n, &u).unwrap();
        let rv = reduce(n, &v).unwrap();
        let staged: Vec<Letter> = ru.letters().iter().chain(rv.letters()).copied().collect();
        prop_assert_eq!(&direct, &reduce(n, &staged).unwrap());
        prop_assert_eq!(direct, ru.mul(&rv).unwrap());
    }
}

fn aut(n: usize, base: usize, moved: LabelSet, e: i64) -> PureSymAut {
    whitehead_aut(n, &WhiteheadSymbol::new(base, moved, e)).unwrap()
}

fn product(n: usize, factors: impl IntoIterator<Item = PureSymAut>) -> PureSymAut {
    factors
        .into_iter()
        .fold(PureSymAut::identity(n), |acc, f| compose(&acc, &f).unwrap())
}

#[test]
fn same_base_symbols_multiply_by_union() {
    for n in 2..=5 {
        for j in 1..=n {
            let rest = LabelSet::full(n).without(j);
            for i_set in rest.subsets() {
                for k_set in (rest - i_set).subsets() {
                    for e in [-1, 1, 2] {
                        let lhs = compose(&aut(n, j, i_set, e), &aut(n, j, k_set, e)).unwrap();
                        assert_eq!(lhs, aut(n, j, i_set | k_set, e), "n={n} j={j} I={i_set} K={k_set}");
                    }
                }
            }
        }
    }
}

fn tuples(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (-bound..=bound).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

#[test]
fn products_of_full_conjugations_are_inner() {
    for n in 1..=4 {
        for c in tuples(n, 2) {
            let p = product(n, (1..=n).map(|j| aut(n, j, LabelSet::full(n).without(j), c[j - 1])));
            assert!(p.is_inner(), "n={n} c={c:?} gives {p}");
        }
    }
}

#[test]
fn single_base_product_is_inner_iff_exponents_agree() {
    for n in 2..=4 {
        for j in 1..=n {
            let others: Vec<usize> = (1..=n).filter(|&i| i != j).collect();
            for c in tuples(others.len(), 2) {
                let p = product(
                    n,
                    others
                        .iter()
                        .zip(&c)
                        .map(|(&i, &e)| aut(n, j, LabelSet::singleton(i), e)),
                );
                let equal = c.iter().all(|&x| x == c[0]);
                assert_eq!(p.is_inner(), equal, "n={n} j={j} c={c:?}");
            }
        }
    }
}

#[test]
fn commuting_symbol_pairs() {
    for n in 2..=4 {
        let all = LabelSet::full(n);
        for j in 1..=n {
            for i_set in all.without(j).subsets().filter(|s| !s.is_empty()) {
                let a = aut(n, j, i_set, 1);
                for m in 1..=n {
                    for k_set in all.without(m).subsets().filter(|s| !s.is_empty()) {
                        let b = aut(n, m, k_set, 1);
                        let same_base = m == j;
                        let disjoint = i_set.with(j).is_disjoint(k_set.with(m));
                        if same_base || disjoint {
                            assert!(commutes(&a, &b).unwrap(), "n={n} ({i_set},{j}) ({k_set},{m})");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn opposite_pair_does_not_commute() {
    for n in 2..=5 {
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                let a = aut(n, j, LabelSet::singleton(i), 1);
                let b = aut(n, i, LabelSet::singleton(j), 1);
                assert!(!commutes(&a, &b).unwrap());
            }
        }
    }
}
