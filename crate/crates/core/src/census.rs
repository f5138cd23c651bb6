//! Exhaustive enumeration of finite topologies through their specialization
//! preorders, isomorph rejection, and the census that runs every law check
//! over a whole carrier size.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::classify_finite;
use crate::dual::dual;
use crate::error::{Error, Result};
use crate::laws::{examine_finite, SpaceReport};
use crate::point_set::{PointSet, MAX_CARRIER};
use crate::preorder::Preorder;
use crate::topology::{alexandrov_from_preorder, FiniteTopology};

/// Default carrier cap for full censuses.
pub const DEFAULT_CENSUS_CAP: usize = 5;

/// Largest carrier the powerset-filter oracle accepts.
pub const NAIVE_CAP: usize = 4;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_CARRIER);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// A partially decided relation: pairs `pairs[..idx]` are fixed, `above`
/// is transitively closed, and `forbid` records pairs decided false.
#[derive(Clone, Copy, Debug)]
pub struct PreorderPrefix {
    n: usize,
    idx: usize,
    above: [u32; MAX_CARRIER],
    forbid: [u32; MAX_CARRIER],
}

fn off_diagonal_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect()
}

impl PreorderPrefix {
    fn root(n: usize) -> Self {
        let mut above = [0; MAX_CARRIER];
        for (x, row) in above.iter_mut().enumerate().take(n) {
            *row = 1 << x;
        }
        PreorderPrefix { n, idx: 0, above, forbid: [0; MAX_CARRIER] }
    }

    /// Children in deterministic order: `false` first, then `true`.
    fn children(&self, pairs: &[(usize, usize)]) -> impl Iterator<Item = PreorderPrefix> {
        let (i, j) = pairs[self.idx];
        let forced = self.above[i] & (1 << j) != 0;
        let without = (!forced).then(|| {
            let mut next = *self;
            next.forbid[i] |= 1 << j;
            next.idx += 1;
            next
        });
        let with = {
            let mut next = *self;
            // adding i ≤ j closes to ↓i × ↑j
            let up_j = next.above[j];
            let mut ok = true;
            for a in 0..self.n {
                if next.above[a] & (1 << i) != 0 {
                    next.above[a] |= up_j;
                    ok &= next.above[a] & next.forbid[a] == 0;
                }
            }
            next.idx += 1;
            ok.then_some(next)
        };
        without.into_iter().chain(with)
    }

    fn walk(&self, pairs: &[(usize, usize)], visit: &mut impl FnMut(Preorder)) {
        if self.idx == pairs.len() {
            visit(Preorder::from_rows_unchecked(self.n, self.above[..self.n].to_vec()));
            return;
        }
        for child in self.children(pairs) {
            child.walk(pairs, visit);
        }
    }
}

/// Splits the search tree after `depth` decisions into independent blocks,
/// in enumeration order.
pub fn preorder_blocks(n: usize, depth: usize) -> Result<Vec<PreorderPrefix>> {
    check_cap(n, MAX_CARRIER)?;
    let pairs = off_diagonal_pairs(n);
    let depth = depth.min(pairs.len());
    let mut frontier = vec![PreorderPrefix::root(n)];
    for _ in 0..depth {
        frontier = frontier.iter().flat_map(|p| p.children(&pairs)).collect();
    }
    Ok(frontier)
}

/// Every preorder below `block`, in enumeration order.
pub fn visit_block(block: &PreorderPrefix, mut visit: impl FnMut(Preorder)) {
    let pairs = off_diagonal_pairs(block.n);
    block.walk(&pairs, &mut visit);
}

/// Streams every preorder on `n` points exactly once.
///
/// Off-diagonal pairs are decided in row-major order. Setting a pair adds
/// its transitive consequences at once, and a branch dies when those
/// consequences hit a pair already decided false.
pub fn for_each_preorder(n: usize, cap: usize, visit: impl FnMut(Preorder)) -> Result<()> {
    check_cap(n, cap)?;
    visit_block(&PreorderPrefix::root(n), visit);
    Ok(())
}

pub fn enumerate_preorders(n: usize, cap: usize) -> Result<Vec<Preorder>> {
    let mut out = Vec::new();
    for_each_preorder(n, cap, |p| out.push(p))?;
    Ok(out)
}

/// Second enumeration strategy: grow preorders one point at a time.
///
/// A new top-index point `p` is attached to a preorder on the other points
/// by choosing a down-set `D` (points below `p`) and an up-set `U` (points
/// above `p`) with every member of `D` below every member of `U`.
pub fn enumerate_preorders_by_extension(n: usize, cap: usize) -> Result<Vec<Preorder>> {
    check_cap(n, cap)?;
    let mut level: Vec<Vec<u32>> = vec![Vec::new()];
    for m in 0..n {
        let mut next = Vec::new();
        for rows in &level {
            let old = Preorder::from_rows_unchecked(m, rows.clone());
            let subsets: Vec<PointSet> = PointSet::all_subsets(m).collect();
            let downs: Vec<PointSet> = subsets.iter().copied().filter(|&d| old.down_set(d) == d).collect();
            let ups: Vec<PointSet> = subsets.iter().copied().filter(|&u| old.up_set(u) == u).collect();
            for &d in &downs {
                for &u in &ups {
                    if !d.points().all(|x| u.is_subset(old.above(x))) {
                        continue;
                    }
                    let mut grown: Vec<u32> = rows.clone();
                    for x in d.points() {
                        grown[x] |= 1 << m;
                    }
                    grown.push(u.bits() | 1 << m);
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|rows| Preorder::from_rows_unchecked(n, rows))
        .collect())
}

/// Independent oracle: every family of subsets that passes the topology
/// axioms. Walks all `2^(2^n)` families, so `n ≤ 4`.
pub fn naive_enumerate_topologies(n: usize) -> Result<Vec<FiniteTopology>> {
    check_cap(n, NAIVE_CAP)?;
    let subsets: Vec<PointSet> = PointSet::all_subsets(n).collect();
    let families: u64 = 1 << subsets.len();
    let mut out = Vec::new();
    for mask in 0..families {
        let members = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &s)| s);
        if let Ok(t) = FiniteTopology::validate(n, members) {
            out.push(t);
        }
    }
    Ok(out)
}

/// Least relabeling of `t` under the order of sorted open-set masks.
///
/// Only permutations that list points by ascending (out, in) degree of the
/// specialization digraph are tried. That restriction is itself invariant
/// under relabeling, so the minimum is still a complete invariant.
pub fn canonicalize(t: &FiniteTopology) -> FiniteTopology {
    let n = t.carrier();
    let degrees = t.specialization().degrees();
    let mut points: Vec<usize> = (0..n).collect();
    points.sort_by_key(|&x| degrees[x]);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &x in &points {
        match blocks.last_mut() {
            Some(b) if degrees[b[0]] == degrees[x] => b.push(x),
            _ => blocks.push(vec![x]),
        }
    }

    let mut best: Option<Vec<PointSet>> = None;
    search_orders(&blocks, 0, &mut Vec::with_capacity(n), t, &mut best);
    FiniteTopology::from_sorted_unchecked(n, best.unwrap_or_default())
}

/// Tries every point order that permutes within degree blocks; `order[pos]`
/// is the old point sent to `pos`.
fn search_orders(
    blocks: &[Vec<usize>],
    bi: usize,
    order: &mut Vec<usize>,
    t: &FiniteTopology,
    best: &mut Option<Vec<PointSet>>,
) {
    let Some(block) = blocks.get(bi) else {
        let mut perm = vec![0usize; order.len()];
        for (pos, &x) in order.iter().enumerate() {
            perm[x] = pos;
        }
        let mut opens: Vec<PointSet> = t.opens().iter().map(|o| o.relabel(&perm)).collect();
        opens.sort_unstable();
        if best.as_ref().is_none_or(|b| opens < *b) {
            *best = Some(opens);
        }
        return;
    };
    permute_block(block, &mut vec![false; block.len()], order, &mut |order| {
        search_orders(blocks, bi + 1, order, t, best)
    });
}

fn permute_block(
    block: &[usize],
    used: &mut [bool],
    order: &mut Vec<usize>,
    then: &mut dyn FnMut(&mut Vec<usize>),
) {
    if used.iter().all(|&u| u) {
        then(order);
        return;
    }
    for k in 0..block.len() {
        if used[k] {
            continue;
        }
        used[k] = true;
        order.push(block[k]);
        permute_block(block, used, order, then);
        order.pop();
        used[k] = false;
    }
}

/// Aggregated census results for one carrier size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub labeled_count: usize,
    pub homeo_count: usize,
    /// Keyed by `"<n-generative>:<flag pattern>"`.
    pub class_counts: BTreeMap<String, usize>,
    pub partition_count: usize,
    /// Spaces in `G₂a ∖ G₁`.
    pub g2a_only: usize,
    /// Labeled count from the one-point-extension enumerator.
    pub extension_count: usize,
    /// Total number of individual law checks that passed.
    pub law_checks: usize,
}

impl CensusRow {
    pub fn g1_count(&self) -> usize {
        self.class_counts
            .iter()
            .filter(|(k, _)| k.starts_with("1:"))
            .map(|(_, v)| v)
            .sum()
    }

    pub fn cross_validated(&self) -> bool {
        self.labeled_count == self.extension_count
    }

    pub const CSV_HEADER: &'static str = "n,labeled,homeo,g1,g2a_only,partition";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.labeled_count,
            self.homeo_count,
            self.g1_count(),
            self.g2a_only,
            self.partition_count
        )
    }
}

#[derive(Default)]
struct Tally {
    labeled: usize,
    canon: BTreeSet<Vec<u32>>,
    classes: BTreeMap<String, usize>,
    g1: usize,
    symmetric: usize,
    g2a_only: usize,
    law_checks: usize,
}

impl Tally {
    fn add(&mut self, r: SpaceReport) {
        self.labeled += 1;
        self.canon.insert(r.canonical);
        let key = format!("{}:{}", r.record.n_generative, r.record.flags.pattern());
        *self.classes.entry(key).or_default() += 1;
        self.g1 += usize::from(r.record.flags.g1);
        self.symmetric += usize::from(r.symmetric_order);
        self.g2a_only += usize::from(r.record.flags.g2a && !r.record.flags.g1);
        self.law_checks += r.law_checks;
    }

    /// Associative, commutative merge.
    fn merge(mut self, other: Tally) -> Tally {
        self.labeled += other.labeled;
        self.canon.extend(other.canon);
        for (k, v) in other.classes {
            *self.classes.entry(k).or_default() += v;
        }
        self.g1 += other.g1;
        self.symmetric += other.symmetric;
        self.g2a_only += other.g2a_only;
        self.law_checks += other.law_checks;
        self
    }
}

/// Search-tree depth used to cut the enumeration into parallel blocks.
const BLOCK_DEPTH: usize = 8;

pub(crate) fn run_blocks<T: Send>(
    n: usize,
    jobs: usize,
    per_block: impl Fn(&PreorderPrefix) -> T + Sync + Send,
) -> Result<Vec<T>> {
    let blocks = preorder_blocks(n, BLOCK_DEPTH)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("worker pool: {e}")))?;
    Ok(pool.install(|| blocks.par_iter().map(&per_block).collect()))
}

/// Classifies and law-checks every labeled topology on `n` points.
///
/// Aborts with [`Error::VerificationFailure`] on the first counterexample in
/// enumeration order, independent of `jobs`.
pub fn census(n: usize, cap: usize, jobs: usize) -> Result<CensusRow> {
    check_cap(n, cap)?;
    let results = run_blocks(n, jobs, |block| -> Result<Tally> {
        let mut tally = Tally::default();
        let mut failure = None;
        visit_block(block, |p| {
            if failure.is_some() {
                return;
            }
            let t = alexandrov_from_preorder(&p);
            match examine_finite(&t) {
                Ok(report) => tally.add(report),
                Err(e) => failure = Some(e),
            }
        });
        failure.map_or(Ok(tally), Err)
    })?;
    let mut total = Tally::default();
    for r in results {
        total = total.merge(r?);
    }
    if total.g1 != total.symmetric {
        return Err(Error::VerificationFailure {
            law: "self-dual spaces are the partition topologies".into(),
            counterexample: format!("{} self-dual vs {} partition spaces", total.g1, total.symmetric),
        });
    }
    let extension_count = enumerate_preorders_by_extension(n, cap)?.len();
    Ok(CensusRow {
        n,
        labeled_count: total.labeled,
        homeo_count: total.canon.len(),
        class_counts: total.classes,
        partition_count: total.symmetric,
        g2a_only: total.g2a_only,
        extension_count,
        law_checks: total.law_checks,
    })
}

/// Which topologies on `n` points arise as duals, against their classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualImageReport {
    pub n: usize,
    pub labeled_count: usize,
    pub labeled_in_image: usize,
    pub homeo_count: usize,
    pub homeo_in_image: usize,
    /// Per n-generative value: (spaces in the class, of those arising as duals).
    pub by_class: BTreeMap<usize, (usize, usize)>,
}

pub fn dual_image_report(n: usize, cap: usize) -> Result<DualImageReport> {
    let preorders = enumerate_preorders(n, cap)?;
    let spaces: Vec<FiniteTopology> = preorders.iter().map(alexandrov_from_preorder).collect();
    let image: BTreeSet<FiniteTopology> = spaces.iter().map(dual).collect();
    let canon_all: BTreeSet<FiniteTopology> = spaces.iter().map(canonicalize).collect();
    let canon_image: BTreeSet<FiniteTopology> = image.iter().map(canonicalize).collect();
    let mut by_class: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for t in &spaces {
        let k = classify_finite(t)?.n_generative;
        let entry = by_class.entry(k).or_default();
        entry.0 += 1;
        entry.1 += usize::from(image.contains(t));
    }
    Ok(DualImageReport {
        n,
        labeled_count: spaces.len(),
        labeled_in_image: spaces.iter().filter(|t| image.contains(t)).count(),
        homeo_count: canon_all.len(),
        homeo_in_image: canon_image.len(),
        by_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_counts_small() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_preorders(n, 7).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate_preorders(6, 5), Err(Error::CapExceeded { n: 6, cap: 5 }));
        assert!(matches!(naive_enumerate_topologies(5), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn enumeration_order_is_deterministic() {
        assert_eq!(enumerate_preorders(3, 7).unwrap(), enumerate_preorders(3, 7).unwrap());
        let blocks = preorder_blocks(3, 3).unwrap();
        let mut stitched = Vec::new();
        for b in &blocks {
            visit_block(b, |p| stitched.push(p));
        }
        assert_eq!(stitched, enumerate_preorders(3, 7).unwrap());
    }

    #[test]
    fn canonical_forms_examples() {
        let s = FiniteTopology::sierpinski();
        assert_eq!(canonicalize(&s), canonicalize(&s.relabel(&[1, 0])));
        assert_eq!(canonicalize(&FiniteTopology::discrete(3)), FiniteTopology::discrete(3));
    }

    #[test]
    fn census_one_and_two() {
        let one = census(1, 5, 1).unwrap();
        assert_eq!((one.labeled_count, one.g1_count()), (1, 1));
        let two = census(2, 5, 2).unwrap();
        assert_eq!(two.labeled_count, 4);
        assert_eq!(two.homeo_count, 3);
        assert_eq!(two.partition_count, 2);
        assert!(two.cross_validated());
    }

    #[test]
    fn dual_image_small() {
        let r = dual_image_report(2, 5).unwrap();
        assert_eq!((r.labeled_count, r.labeled_in_image), (4, 4));
        let r = dual_image_report(1, 5).unwrap();
        assert_eq!((r.labeled_count, r.labeled_in_image), (1, 1));
    }
}
