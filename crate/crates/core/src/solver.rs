//! Exact solvers for the Roman, global Roman and plain domination numbers.
//!
//! The Roman searches enumerate only the set `D` of label-2 vertices. Given
//! `D`, the cheapest completion labels 1 exactly the vertices outside `D`
//! that `D` leaves uncovered, so a labeling of weight `w` always has a
//! label-2 set with `2|D| <= w` whose completion weighs at most `w`. Sets are
//! visited by increasing cardinality, lexicographically within a
//! cardinality, which makes the first optimum found the reported witness.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::labeling::{Mode, RomanLabeling};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("search did not finish within {budget_ms} ms")]
    DidNotFinish { budget_ms: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Objective {
    #[serde(rename = "RD")]
    Rd,
    #[serde(rename = "GRD")]
    Grd,
    #[serde(rename = "DS")]
    Ds,
}

impl From<Mode> for Objective {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Rd => Objective::Rd,
            Mode::Grd => Objective::Grd,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    Labeling(RomanLabeling),
    Vertices(Vec<usize>),
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct SearchStats {
    pub candidates: u64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub objective: Objective,
    pub optimum: usize,
    pub witness: Witness,
    pub stats: SearchStats,
}

impl SolveResult {
    pub fn labeling(&self) -> Option<&RomanLabeling> {
        match &self.witness {
            Witness::Labeling(f) => Some(f),
            Witness::Vertices(_) => None,
        }
    }

    pub fn vertices(&self) -> Option<&[usize]> {
        match &self.witness {
            Witness::Vertices(s) => Some(s),
            Witness::Labeling(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(RomanLabeling),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn witness(&self) -> Option<&RomanLabeling> {
        match self {
            Decision::Yes(f) => Some(f),
            Decision::No => None,
        }
    }
}

/// Search limits. `jobs <= 1` runs on the calling thread.
#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    pub time_budget: Option<Duration>,
    pub jobs: usize,
}

impl SolverConfig {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }
}

/// Weight of the cheapest labeling whose label-2 set is exactly `d2`,
/// together with the vertices that completion must label 1.
pub fn cost_given_two_set(g: &Graph, d2: &BitSet, mode: Mode) -> (usize, BitSet) {
    let mut forced = BitSet::new(g.n());
    let total = d2.len();
    for u in (0..g.n()).filter(|&u| !d2.contains(u)) {
        if !covered(g, d2, total, u, mode) {
            forced.insert(u);
        }
    }
    (2 * total + forced.len(), forced)
}

#[inline]
fn covered(g: &Graph, d2: &BitSet, total: usize, u: usize, mode: Mode) -> bool {
    let inside = g.row(u).intersection_len(d2);
    inside > 0 && (mode == Mode::Rd || total > inside)
}

#[inline]
fn cost_only(g: &Graph, d2: &BitSet, total: usize, mode: Mode) -> usize {
    let forced = (0..g.n())
        .filter(|&u| !d2.contains(u) && !covered(g, d2, total, u, mode))
        .count();
    2 * total + forced
}

const CLOCK_STRIDE: u64 = 1 << 12;

struct Search<'a> {
    g: &'a Graph,
    deadline: Option<Instant>,
    budget_ms: u64,
    timed_out: AtomicBool,
    candidates: AtomicU64,
    pool: Option<rayon::ThreadPool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, cfg: &SolverConfig) -> Self {
        let pool = (cfg.jobs > 1).then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.jobs)
                .build()
                .expect("thread pool")
        });
        Self {
            g,
            deadline: cfg.time_budget.map(|b| Instant::now() + b),
            budget_ms: cfg.time_budget.map_or(0, |b| b.as_millis() as u64),
            timed_out: AtomicBool::new(false),
            candidates: AtomicU64::new(0),
            pool,
        }
    }

    fn check_clock(&self, visited: u64) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return false;
        }
        if (visited - 1).is_multiple_of(CLOCK_STRIDE) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        true
    }

    fn bail(&self) -> Result<(), SolveError> {
        if self.timed_out.load(Ordering::Relaxed) {
            Err(SolveError::DidNotFinish {
                budget_ms: self.budget_ms,
            })
        } else {
            Ok(())
        }
    }

    /// Runs `visit` over every `c`-subset of `0..n`, split into blocks by
    /// the least element. Each block carries its own state; `visit` returns
    /// true to stop its block early. Block states come back in
    /// lexicographic block order.
    fn per_block<T, F>(&self, c: usize, visit: F) -> Vec<Option<T>>
    where
        T: Send,
        F: Fn(&[usize], &BitSet, &mut Option<T>) -> bool + Sync,
    {
        let n = self.g.n();
        let run = |first: Option<usize>| -> Option<T> {
            let mut comb = match first {
                None => Combination::empty(),
                Some(f) => Combination::with_first(f, c, n)?,
            };
            let mut set = BitSet::new(n);
            let mut state = None;
            let mut visited = 0u64;
            loop {
                visited += 1;
                if !self.check_clock(visited) {
                    break;
                }
                comb.fill(&mut set);
                if visit(&comb.idx, &set, &mut state) || !comb.advance() {
                    break;
                }
            }
            self.candidates.fetch_add(visited, Ordering::Relaxed);
            state
        };
        if c == 0 {
            return vec![run(None)];
        }
        let firsts: Vec<usize> = (0..=n - c).collect();
        match &self.pool {
            Some(pool) => pool.install(|| firsts.par_iter().map(|&f| run(Some(f))).collect()),
            None => firsts.iter().map(|&f| run(Some(f))).collect(),
        }
    }

    fn stats(&self, start: Instant) -> SearchStats {
        SearchStats {
            candidates: self.candidates.load(Ordering::Relaxed),
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Lexicographic `c`-subsets of `0..n` whose least element is fixed.
struct Combination {
    idx: Vec<usize>,
    n: usize,
}

impl Combination {
    fn empty() -> Self {
        Self { idx: vec![], n: 0 }
    }

    fn with_first(first: usize, c: usize, n: usize) -> Option<Self> {
        if first + c > n {
            return None;
        }
        Some(Self {
            idx: (first..first + c).collect(),
            n,
        })
    }

    fn fill(&self, set: &mut BitSet) {
        set.clear();
        for &i in &self.idx {
            set.insert(i);
        }
    }

    /// Advances positions 1.. only; position 0 is the block key.
    fn advance(&mut self) -> bool {
        let c = self.idx.len();
        if c <= 1 {
            return false;
        }
        let mut i = c - 1;
        loop {
            if self.idx[i] < self.n - (c - i) {
                self.idx[i] += 1;
                for j in i + 1..c {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return true;
            }
            if i == 1 {
                return false;
            }
            i -= 1;
        }
    }
}

pub fn solve_exact(g: &Graph, mode: Mode) -> SolveResult {
    solve_exact_with(g, mode, &SolverConfig::default()).expect("no time budget set")
}

pub fn solve_exact_with(g: &Graph, mode: Mode, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let search = Search::new(g, cfg);
    let n = g.n();
    let mut best: Option<(usize, BitSet)> = None;
    for c in 0..=n {
        if best.as_ref().is_some_and(|(w, _)| 2 * c >= *w) {
            break;
        }
        let class_best = best_in_class(&search, c, mode);
        search.bail()?;
        if let Some((w, set)) = class_best {
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, set));
            }
        }
    }
    let (optimum, d2) = best.expect("cardinality 0 always yields a candidate");
    let (w, forced) = cost_given_two_set(g, &d2, mode);
    debug_assert_eq!(w, optimum);
    Ok(SolveResult {
        objective: mode.into(),
        optimum,
        witness: Witness::Labeling(RomanLabeling::from_sets(n, d2.iter(), forced.iter())),
        stats: search.stats(start),
    })
}

fn best_in_class(search: &Search<'_>, c: usize, mode: Mode) -> Option<(usize, BitSet)> {
    let g = search.g;
    let floor = 2 * c;
    let blocks = search.per_block(c, |_, set, best: &mut Option<(usize, BitSet)>| {
        let w = cost_only(g, set, c, mode);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            *best = Some((w, set.clone()));
        }
        w == floor
    });
    blocks
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<(usize, BitSet)>, (w, s)| match acc {
            Some((bw, bs)) if bw <= w => Some((bw, bs)),
            _ => Some((w, s)),
        })
}

pub fn decide(g: &Graph, mode: Mode, budget: usize) -> Decision {
    decide_with(g, mode, budget, &SolverConfig::default()).expect("no time budget set")
}

pub fn decide_with(g: &Graph, mode: Mode, budget: usize, cfg: &SolverConfig) -> Result<Decision, SolveError> {
    let search = Search::new(g, cfg);
    let n = g.n();
    for c in 0..=(budget / 2).min(n) {
        let blocks = search.per_block(c, |_, set, hit| {
            if cost_only(g, set, c, mode) <= budget {
                *hit = Some(set.clone());
            }
            hit.is_some()
        });
        search.bail()?;
        if let Some(d2) = blocks.into_iter().flatten().next() {
            let (_, forced) = cost_given_two_set(g, &d2, mode);
            return Ok(Decision::Yes(RomanLabeling::from_sets(n, d2.iter(), forced.iter())));
        }
    }
    Ok(Decision::No)
}

pub fn is_dominating_set(g: &Graph, s: &[usize]) -> bool {
    let mut dom = BitSet::new(g.n());
    for &u in s {
        if u >= g.n() {
            return false;
        }
        dom.insert(u);
        dom.union_with(g.row(u));
    }
    dom.len() == g.n()
}

/// Greedy dominating set: repeatedly take the vertex whose closed
/// neighbourhood covers the most undominated vertices (least id on ties).
pub fn greedy_dominating_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let closed: Vec<BitSet> = (0..n).map(|u| g.closed_row(u)).collect();
    let mut undominated = BitSet::full(n);
    let mut picked = Vec::new();
    while !undominated.is_empty() {
        let u = (0..n)
            .max_by_key(|&u| (closed[u].intersection_len(&undominated), std::cmp::Reverse(u)))
            .expect("non-empty graph");
        for v in closed[u].iter() {
            undominated.remove(v);
        }
        picked.push(u);
    }
    picked.sort_unstable();
    picked
}

pub fn solve_ds(g: &Graph) -> SolveResult {
    solve_ds_with(g, &SolverConfig::default()).expect("no time budget set")
}

pub fn solve_ds_with(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let search = Search::new(g, cfg);
    let n = g.n();
    let closed: Vec<BitSet> = (0..n).map(|u| g.closed_row(u)).collect();
    let greedy = greedy_dominating_set(g);
    let mut found = None;
    for c in 0..greedy.len() {
        let blocks = search.per_block(c, |idx, _, hit| {
            let mut dom = BitSet::new(n);
            for &i in idx {
                dom.union_with(&closed[i]);
            }
            if dom.len() == n {
                *hit = Some(idx.to_vec());
            }
            hit.is_some()
        });
        search.bail()?;
        if let Some(s) = blocks.into_iter().flatten().next() {
            found = Some(s);
            break;
        }
    }
    let s = found.unwrap_or(greedy);
    Ok(SolveResult {
        objective: Objective::Ds,
        optimum: s.len(),
        witness: Witness::Vertices(s),
        stats: search.stats(start),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::check;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    #[test]
    fn kernel_examples() {
        let c4 = Graph::cycle(4);
        let (w, ones) = cost_given_two_set(&c4, &BitSet::new(4), Mode::Rd);
        assert_eq!((w, ones.to_vec()), (4, vec![0, 1, 2, 3]));
        let (w, ones) = cost_given_two_set(&c4, &BitSet::from_iter_with_capacity(4, [0]), Mode::Rd);
        assert_eq!((w, ones.to_vec()), (3, vec![2]));
        let k2 = Graph::complete(2);
        let (w, ones) = cost_given_two_set(&k2, &BitSet::from_iter_with_capacity(2, [0]), Mode::Grd);
        assert_eq!((w, ones.to_vec()), (3, vec![1]));
    }

    #[test]
    fn small_optima() {
        let k1 = Graph::empty(1);
        assert_eq!(solve_exact(&k1, Mode::Rd).optimum, 1);
        assert_eq!(solve_exact(&k1, Mode::Grd).optimum, 1);
        assert_eq!(solve_exact(&Graph::empty(0), Mode::Grd).optimum, 0);
        // values for C4 frozen from exhausting all 3^4 labelings
        let c4 = Graph::cycle(4);
        assert_eq!(solve_exact(&c4, Mode::Rd).optimum, 3);
        assert_eq!(solve_exact(&c4, Mode::Grd).optimum, 4);
    }

    #[test]
    fn ds_examples() {
        assert_eq!(solve_ds(&Graph::complete(4)).optimum, 1);
        assert_eq!(solve_ds(&Graph::cycle(4)).optimum, 2);
        let p = solve_ds(&Graph::petersen());
        assert_eq!(p.optimum, 3);
        assert!(is_dominating_set(&Graph::petersen(), p.vertices().unwrap()));
        let isolated = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let r = solve_ds(&isolated);
        assert_eq!(r.optimum, 2);
        assert!(r.vertices().unwrap().contains(&2));
    }

    #[test]
    fn witness_is_lexicographically_first() {
        // P3: both {1} with nothing forced is the unique weight-2 labeling
        let r = solve_exact(&Graph::path(3), Mode::Rd);
        assert_eq!(r.labeling().unwrap().values(), &[0, 2, 0]);
        // C4 RD: d2={0}, vertex 2 forced
        let r = solve_exact(&Graph::cycle(4), Mode::Rd);
        assert_eq!(r.labeling().unwrap().values(), &[2, 0, 1, 0]);
    }

    #[test]
    fn zero_time_budget_does_not_finish() {
        let g = Graph::petersen();
        let cfg = SolverConfig::default().with_time_budget(Duration::ZERO);
        assert!(matches!(
            solve_exact_with(&g, Mode::Grd, &cfg),
            Err(SolveError::DidNotFinish { .. })
        ));
    }

    #[test]
    fn worker_count_does_not_change_answers() {
        let g = Graph::petersen();
        for mode in [Mode::Rd, Mode::Grd] {
            let a = solve_exact(&g, mode);
            let b = solve_exact_with(&g, mode, &SolverConfig::default().with_jobs(4)).unwrap();
            assert_eq!(a.optimum, b.optimum);
            assert_eq!(a.witness, b.witness);
            let da = decide(&g, mode, a.optimum);
            let db = decide_with(&g, mode, a.optimum, &SolverConfig::default().with_jobs(3)).unwrap();
            assert_eq!(da, db);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decide_brackets_optimum(g in arb_graph(9)) {
            for mode in [Mode::Rd, Mode::Grd] {
                let r = solve_exact(&g, mode);
                let f = r.labeling().unwrap();
                prop_assert!(check(&g, f, mode).unwrap().is_valid());
                prop_assert_eq!(f.weight(), r.optimum);
                let yes = decide(&g, mode, r.optimum);
                prop_assert!(check(&g, yes.witness().unwrap(), mode).unwrap().is_valid());
                prop_assert!(yes.witness().unwrap().weight() <= r.optimum);
                if r.optimum > 0 {
                    prop_assert_eq!(decide(&g, mode, r.optimum - 1), Decision::No);
                }
            }
        }

        #[test]
        fn domination_chain(g in arb_graph(10)) {
            let ds = solve_ds(&g);
            prop_assert!(is_dominating_set(&g, ds.vertices().unwrap()));
            let rd = solve_exact(&g, Mode::Rd).optimum;
            let grd = solve_exact(&g, Mode::Grd).optimum;
            prop_assert!(ds.optimum <= rd);
            prop_assert!(rd <= grd);
            prop_assert!(grd <= g.n());
        }
    }
}
