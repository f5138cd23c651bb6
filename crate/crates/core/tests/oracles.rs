//! Independent brute-force oracles for counts and canonical forms.

use std::collections::BTreeSet;

use degroot::census::{
    canonicalize, enumerate_preorders, enumerate_preorders_by_extension, naive_enumerate_topologies,
};
use degroot::topology::alexandrov_from_preorder;
use degroot::{FiniteTopology, PointSet, Preorder};

/// Every relation on n points as an n×n boolean matrix, kept when reflexive
/// and transitive. Shares nothing with the pruned enumerator.
fn brute_force_preorders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let cells = n * n;
    let mut out = Vec::new();
    for mask in 0u64..(1 << cells) {
        let rel: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| mask & (1 << (i * n + j)) != 0).collect())
            .collect();
        let reflexive = (0..n).all(|i| rel[i][i]);
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(rel[i][j] && rel[j][k]) || rel[i][k]))
        });
        if reflexive && transitive {
            out.push(rel);
        }
    }
    out
}

fn as_matrix(p: &Preorder) -> Vec<Vec<bool>> {
    let n = p.carrier();
    (0..n).map(|i| (0..n).map(|j| p.leq(i, j)).collect()).collect()
}

/// Bell numbers by counting symmetric brute-force preorders.
fn equivalence_relation_count(n: usize) -> usize {
    brute_force_preorders(n)
        .iter()
        .filter(|r| (0..n).all(|i| (0..n).all(|j| r[i][j] == r[j][i])))
        .count()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Minimum over every permutation, no pruning.
fn brute_canonical(t: &FiniteTopology) -> Vec<u32> {
    all_permutations(t.carrier())
        .iter()
        .map(|perm| t.relabel(perm).opens().iter().map(|o| o.bits()).collect::<Vec<u32>>())
        .min()
        .unwrap()
}

#[test]
fn preorder_counts_match_brute_force() {
    for n in 0..=4 {
        let oracle: BTreeSet<_> = brute_force_preorders(n).into_iter().collect();
        let fast: BTreeSet<_> = enumerate_preorders(n, 7).unwrap().iter().map(as_matrix).collect();
        assert_eq!(fast, oracle, "n = {n}");
        assert_eq!(enumerate_preorders(n, 7).unwrap().len(), oracle.len());
    }
    assert_eq!(brute_force_preorders(2).len(), 4);
    assert_eq!(brute_force_preorders(3).len(), 29);
}

#[test]
fn extension_enumerator_agrees_setwise() {
    for n in 0..=5 {
        let a: BTreeSet<Preorder> = enumerate_preorders(n, 7).unwrap().into_iter().collect();
        let b: Vec<Preorder> = enumerate_preorders_by_extension(n, 7).unwrap();
        let b_set: BTreeSet<Preorder> = b.iter().cloned().collect();
        assert_eq!(b.len(), b_set.len(), "duplicates at n = {n}");
        assert_eq!(a, b_set, "n = {n}");
    }
}

#[test]
fn naive_topology_counts() {
    let counts: Vec<usize> = (0..=4).map(|n| naive_enumerate_topologies(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 4, 29, 355]);
}

#[test]
fn bell_numbers_from_equivalence_relations() {
    let bell: Vec<usize> = (1..=4).map(equivalence_relation_count).collect();
    assert_eq!(bell, vec![1, 2, 5, 15]);
}

#[test]
fn canonical_forms_match_full_permutation_search() {
    for n in 0..=4 {
        let spaces: Vec<FiniteTopology> = enumerate_preorders(n, 7)
            .unwrap()
            .iter()
            .map(alexandrov_from_preorder)
            .collect();
        let pruned: BTreeSet<Vec<u32>> = spaces
            .iter()
            .map(|t| canonicalize(t).opens().iter().map(|o| o.bits()).collect())
            .collect();
        let brute: BTreeSet<Vec<u32>> = spaces.iter().map(brute_canonical).collect();
        assert_eq!(pruned.len(), brute.len(), "n = {n}");
        if n == 3 {
            assert_eq!(brute.len(), 9);
        }
    }
}

#[test]
fn closure_oracle_on_sierpinski() {
    // closed sets of {∅,{0},X} are {X,{1},∅}; the smallest holding 0 is X
    let s = FiniteTopology::sierpinski();
    let closed: Vec<PointSet> = s.opens().iter().map(|o| o.complement()).collect();
    let zero = PointSet::singleton(2, 0);
    let smallest = closed
        .iter()
        .filter(|c| zero.is_subset(**c))
        .min_by_key(|c| c.len())
        .unwrap();
    assert_eq!(s.closure(zero).unwrap(), *smallest);
    assert_eq!(*smallest, PointSet::full(2));
}
