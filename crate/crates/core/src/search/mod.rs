//! Exhaustive depth-first search for splitter sets.
//!
//! Candidate sets are built in ascending element order, so each unordered set
//! is visited once. For every partial set the search keeps all sums `e . S`
//! of weight at most `t`; appending `s` only adds the sums whose support
//! contains `s`, and any repeated or zero sum prunes the whole subtree, since
//! a failure of the weak condition persists in every superset.

mod checkpoint;

use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checkpoint::Checkpoint;

use crate::abelian::{groups_of_order, AbelianGroup};
use crate::ball::BallParams;
use crate::error::{Error, Result};
use crate::splitting::{verify_splitting, CoefficientSet, SplitMode, SplitterSet};

/// Largest group for which a full Cayley table is precomputed.
const CAYLEY_TABLE_MAX: u64 = 2048;

/// How often (in nodes) a worker publishes progress and checks for stops.
const FLUSH_EVERY: u64 = 1 << 12;

/// Minimum interval between checkpoint writes.
const CHECKPOINT_INTERVAL: Duration = Duration::from_secs(2);

/// Which searches a caller is prepared to pay for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// Cyclic groups and groups of order below 128.
    #[default]
    Basic,
    /// Every group.
    Extended,
}

impl Tier {
    pub fn admits(self, g: &AbelianGroup) -> bool {
        match self {
            Tier::Basic => g.is_cyclic() || g.order() < 128,
            Tier::Extended => true,
        }
    }
}

impl std::str::FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(Tier::Basic),
            "extended" => Ok(Tier::Extended),
            other => Err(Error::Precondition(format!(
                "unknown tier {other:?}, expected basic or extended"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SplitMode,
    /// Restrict to ascending `S`. Turning this off explores every ordering.
    pub canonical_only: bool,
    /// For cyclic groups, fix `s_1` up to multiplication by units.
    pub orbit_pruning: bool,
    /// Worker threads; 1 gives a reproducible node count.
    pub jobs: usize,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub checkpoint: Option<PathBuf>,
    /// In full mode, fail instead of returning `exhausted_none` when
    /// `|B(n,t,k+,k-)| != |G|`.
    pub assert_size_identity: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            mode: SplitMode::Full,
            canonical_only: true,
            orbit_pruning: false,
            jobs: 1,
            node_budget: None,
            time_budget: None,
            checkpoint: None,
            assert_size_identity: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    pub group: AbelianGroup,
    pub coeffs: CoefficientSet,
    pub t: usize,
    pub n: usize,
    pub options: SearchOptions,
}

impl SearchProblem {
    pub fn new(group: AbelianGroup, coeffs: CoefficientSet, t: usize, n: usize) -> Result<Self> {
        BallParams::new(n, t, coeffs.k_plus, coeffs.k_minus)?;
        Ok(Self {
            group,
            coeffs,
            t,
            n,
            options: SearchOptions::default(),
        })
    }

    pub fn with_options(mut self, options: SearchOptions) -> Self {
        self.options = options;
        self
    }

    pub fn ball(&self) -> BallParams {
        BallParams::new(self.n, self.t, self.coeffs.k_plus, self.coeffs.k_minus)
            .expect("validated on construction")
    }

    /// Everything that determines the search tree, for checkpoint matching.
    fn fingerprint(&self) -> String {
        let o = &self.options;
        format!(
            "group={:?} k+={} k-={} t={} n={} mode={:?} canonical={} orbits={}",
            self.group.orders(),
            self.coeffs.k_plus,
            self.coeffs.k_minus,
            self.t,
            self.n,
            o.mode,
            o.canonical_only,
            o.orbit_pruning && self.group.rank() == 1
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<SplitterSet>,
    pub nodes_explored: u64,
}

/// Group arithmetic on element indices (mixed radix, last digit fastest).
struct Arith {
    order: u32,
    add: Add,
    /// `mul[j][x]` = `values[j] * x`
    mul: Vec<Vec<u32>>,
}

enum Add {
    Cyclic,
    Table(Vec<u32>),
    Digits { orders: Vec<u32>, digits: Vec<u32> },
}

impl Arith {
    fn new(g: &AbelianGroup, coeffs: &CoefficientSet) -> Self {
        let order = g.order() as u32;
        let rank = g.rank();
        let orders: Vec<u32> = g.orders().iter().map(|&o| o as u32).collect();
        let mut digits = vec![0u32; order as usize * rank];
        for x in 0..order {
            let mut rem = x;
            for k in (0..rank).rev() {
                digits[x as usize * rank + k] = rem % orders[k];
                rem /= orders[k];
            }
        }
        let digit_add = |a: u32, b: u32| -> u32 {
            let (a, b) = (a as usize * rank, b as usize * rank);
            (0..rank).fold(0u32, |acc, k| {
                acc * orders[k] + (digits[a + k] + digits[b + k]) % orders[k]
            })
        };
        let mul = coeffs
            .values()
            .iter()
            .map(|&m| {
                (0..order)
                    .map(|x| {
                        let el = g.scale(m, &g.element_at(x as u64)).expect("valid element");
                        g.index_of(&el) as u32
                    })
                    .collect()
            })
            .collect();
        let add = if rank <= 1 {
            Add::Cyclic
        } else if u64::from(order) <= CAYLEY_TABLE_MAX {
            let mut table = vec![0u32; (order as usize).pow(2)];
            for a in 0..order {
                for b in 0..order {
                    table[a as usize * order as usize + b as usize] = digit_add(a, b);
                }
            }
            Add::Table(table)
        } else {
            Add::Digits { orders, digits }
        };
        Self { order, add, mul }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add {
            Add::Cyclic => {
                let s = a + b;
                if s >= self.order {
                    s - self.order
                } else {
                    s
                }
            }
            Add::Table(t) => t[a as usize * self.order as usize + b as usize],
            Add::Digits { orders, digits } => {
                let rank = orders.len();
                let (a, b) = (a as usize * rank, b as usize * rank);
                (0..rank).fold(0u32, |acc, k| {
                    acc * orders[k] + (digits[a + k] + digits[b + k]) % orders[k]
                })
            }
        }
    }
}

/// Per-worker search state: the chosen prefix and all sums it produces.
struct State {
    used: Vec<bool>,
    /// `levels[w]` holds the sums of weight exactly `w`, for `w < t`.
    levels: Vec<Vec<u32>>,
    marked: Vec<u32>,
    chosen: Vec<u32>,
    /// Per pushed element: the `marked` length, then the `t` level lengths.
    undo: Vec<usize>,
    t: usize,
}

impl State {
    fn new(order: u32, t: usize) -> Self {
        let mut used = vec![false; order as usize];
        used[0] = true;
        let mut levels = vec![Vec::new(); t];
        levels[0].push(0);
        Self {
            used,
            levels,
            marked: Vec::new(),
            chosen: Vec::new(),
            undo: Vec::new(),
            t,
        }
    }

    /// Appends `s` if no new sum repeats an existing one or vanishes.
    fn push(&mut self, ar: &Arith, s: u32) -> bool {
        if self.used[s as usize] {
            return false;
        }
        let base = self.undo.len();
        self.undo.push(self.marked.len());
        for level in &self.levels {
            self.undo.push(level.len());
        }
        for w in 1..=self.t {
            for i in 0..self.undo[base + w] {
                let x = self.levels[w - 1][i];
                for mul in &ar.mul {
                    let y = ar.add(x, mul[s as usize]);
                    if self.used[y as usize] {
                        self.rollback();
                        return false;
                    }
                    self.used[y as usize] = true;
                    self.marked.push(y);
                    if w < self.t {
                        self.levels[w].push(y);
                    }
                }
            }
        }
        self.chosen.push(s);
        true
    }

    fn pop(&mut self) {
        self.chosen.pop().expect("pop without push");
        self.rollback();
    }

    /// Undoes the most recent (possibly partial) push.
    fn rollback(&mut self) {
        let base = self.undo.len() - self.t - 1;
        for y in self.marked.drain(self.undo[base]..) {
            self.used[y as usize] = false;
        }
        for (level, &len) in self.levels.iter_mut().zip(&self.undo[base + 1..]) {
            level.truncate(len);
        }
        self.undo.truncate(base);
    }
}

/// Shared stop signals and counters.
struct Control {
    found: AtomicBool,
    out_of_budget: AtomicBool,
    nodes: AtomicU64,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
}

impl Control {
    fn should_stop(&self) -> bool {
        self.found.load(Ordering::Relaxed) || self.out_of_budget.load(Ordering::Relaxed)
    }

    fn flush(&self, c: &mut Counter) {
        let total = self.nodes.fetch_add(c.pending, Ordering::Relaxed) + c.pending;
        c.total += c.pending;
        c.pending = 0;
        let over_nodes = self.node_budget.is_some_and(|b| total >= b);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.out_of_budget.store(true, Ordering::Relaxed);
        }
    }
}

/// Nodes counted by one worker in one branch.
#[derive(Default)]
struct Counter {
    pending: u64,
    total: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Found,
    Stop,
}

/// Search shape shared by all workers.
struct Tree<'a> {
    ar: &'a Arith,
    n: usize,
    canonical: bool,
    /// With orbit pruning on a cyclic group: `min_gcd[x]` is `gcd(x, |G|)`.
    orbit_gcd: Option<Vec<u32>>,
}

impl Tree<'_> {
    /// Candidates for the next element after the current prefix.
    fn candidates(&self, st: &State) -> std::ops::Range<u32> {
        let lo = if self.canonical {
            st.chosen.last().map_or(1, |&l| l + 1)
        } else {
            1
        };
        let remaining = (self.n - st.chosen.len()) as u32;
        let hi = if self.canonical {
            (self.ar.order + 1).saturating_sub(remaining)
        } else {
            self.ar.order
        };
        lo..hi.max(lo)
    }

    fn admissible(&self, st: &State, s: u32) -> bool {
        let Some(g) = &self.orbit_gcd else {
            return true;
        };
        match st.chosen.first() {
            // s_1 is a divisor of |G|: the smallest element of its orbit
            None => g[s as usize] == s,
            Some(&first) => g[s as usize] >= first,
        }
    }

    fn dfs(&self, st: &mut State, ctl: &Control, c: &mut Counter) -> Flow {
        if st.chosen.len() == self.n {
            return Flow::Found;
        }
        for s in self.candidates(st) {
            if !self.admissible(st, s) {
                continue;
            }
            c.pending += 1;
            if c.pending >= FLUSH_EVERY {
                ctl.flush(c);
                if ctl.should_stop() {
                    return Flow::Stop;
                }
            }
            if st.push(self.ar, s) {
                match self.dfs(st, ctl, c) {
                    Flow::Continue => st.pop(),
                    other => return other,
                }
            }
        }
        Flow::Continue
    }

    /// Valid prefixes of length `depth`, in DFS order. Returns the nodes spent.
    fn frontier(&self, st: &mut State, depth: usize, out: &mut Vec<Vec<u32>>) -> u64 {
        if st.chosen.len() == depth {
            out.push(st.chosen.clone());
            return 0;
        }
        let mut nodes = 0;
        for s in self.candidates(st) {
            if !self.admissible(st, s) {
                continue;
            }
            nodes += 1;
            if st.push(self.ar, s) {
                nodes += self.frontier(st, depth, out);
                st.pop();
            }
        }
        nodes
    }
}

struct BranchResult {
    index: usize,
    flow: Flow,
    witness: Option<Vec<u32>>,
    nodes: u64,
}

/// Searches for `S` with `G = M <>_t S` (or the weak form, per the options).
pub fn search_splitting(prob: &SearchProblem) -> Result<SearchOutcome> {
    let opts = &prob.options;
    let order = prob.group.order();
    if opts.mode == SplitMode::Full && prob.ball().size() != BigUint::from(order) {
        if opts.assert_size_identity {
            return Err(Error::Precondition(format!(
                "|{}| = {} but |G| = {order}",
                prob.ball(),
                prob.ball().size()
            )));
        }
        return Ok(SearchOutcome {
            status: SearchStatus::ExhaustedNone,
            witness: None,
            nodes_explored: 0,
        });
    }
    if (prob.n as u64) >= order {
        // n distinct non-zero elements cannot fit
        return Ok(SearchOutcome {
            status: SearchStatus::ExhaustedNone,
            witness: None,
            nodes_explored: 0,
        });
    }

    let ar = Arith::new(&prob.group, &prob.coeffs);
    let orbit_gcd = (opts.orbit_pruning && prob.group.rank() == 1).then(|| {
        (0..order)
            .map(|x| x.gcd(&order) as u32)
            .collect::<Vec<u32>>()
    });
    let tree = Tree {
        ar: &ar,
        n: prob.n,
        canonical: opts.canonical_only,
        orbit_gcd,
    };

    let depth = prob.n.min(2);
    let mut frontier = Vec::new();
    let frontier_nodes = tree.frontier(&mut State::new(ar.order, prob.t), depth, &mut frontier);

    let fingerprint = prob.fingerprint();
    let mut cp = match &opts.checkpoint {
        Some(path) => Checkpoint::load(path, &fingerprint, frontier.len())?
            .unwrap_or_else(|| Checkpoint::new(fingerprint.clone(), frontier.len())),
        None => Checkpoint::new(fingerprint.clone(), frontier.len()),
    };
    let todo: Vec<usize> = (0..frontier.len())
        .filter(|i| !cp.completed.contains(i))
        .collect();

    let ctl = Control {
        found: AtomicBool::new(false),
        out_of_budget: AtomicBool::new(false),
        nodes: AtomicU64::new(frontier_nodes + cp.branch_nodes),
        node_budget: opts.node_budget,
        deadline: opts.time_budget.map(|d| Instant::now() + d),
    };
    let last_save = Mutex::new(Instant::now());
    let cp_shared = Mutex::new(&mut cp);

    let run_branch = |index: usize| -> Result<BranchResult> {
        if ctl.should_stop() {
            return Ok(BranchResult {
                index,
                flow: Flow::Stop,
                witness: None,
                nodes: 0,
            });
        }
        let mut st = State::new(ar.order, prob.t);
        for &s in &frontier[index] {
            let ok = st.push(&ar, s);
            debug_assert!(ok);
        }
        let mut counter = Counter::default();
        let flow = tree.dfs(&mut st, &ctl, &mut counter);
        ctl.flush(&mut counter);
        let witness = (flow == Flow::Found).then(|| st.chosen.clone());
        if flow == Flow::Found {
            ctl.found.store(true, Ordering::Relaxed);
        }
        let r = BranchResult {
            index,
            flow,
            witness,
            nodes: counter.total,
        };
        // finished branches are recorded so an interrupted run can resume
        if r.flow == Flow::Continue {
            let mut cp = cp_shared.lock().expect("checkpoint lock");
            cp.completed.insert(r.index);
            cp.branch_nodes += r.nodes;
            if let Some(path) = &opts.checkpoint {
                let mut last = last_save.lock().expect("save lock");
                if last.elapsed() >= CHECKPOINT_INTERVAL {
                    cp.save(path)?;
                    *last = Instant::now();
                }
            }
        }
        Ok(r)
    };

    let results: Vec<BranchResult> = if opts.jobs <= 1 {
        let mut out = Vec::new();
        for &i in &todo {
            let r = run_branch(i)?;
            let stop = r.flow != Flow::Continue;
            out.push(r);
            if stop {
                break;
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        pool.install(|| {
            todo.par_iter()
                .map(|&i| run_branch(i))
                .collect::<Result<Vec<_>>>()
        })?
    };

    let nodes_explored = ctl.nodes.load(Ordering::Relaxed);
    let best = results
        .iter()
        .filter_map(|r| r.witness.as_ref())
        .min()
        .cloned();
    let all_done = cp.completed.len() == frontier.len();
    if let Some(path) = &opts.checkpoint {
        cp.save(path)?;
    }

    let (status, witness) = match best {
        Some(chosen) => {
            let sp = to_splitter_set(prob, &chosen)?;
            let report = verify_splitting(&sp, opts.mode)?;
            if !report.valid {
                return Err(Error::Inconsistent(format!(
                    "search produced {:?}, which fails verification",
                    chosen
                )));
            }
            (SearchStatus::Found, Some(sp))
        }
        None if all_done => (SearchStatus::ExhaustedNone, None),
        None => (SearchStatus::BudgetExceeded, None),
    };
    Ok(SearchOutcome {
        status,
        witness,
        nodes_explored,
    })
}

fn to_splitter_set(prob: &SearchProblem, chosen: &[u32]) -> Result<SplitterSet> {
    let s = chosen
        .iter()
        .map(|&x| prob.group.element_at(x as u64))
        .collect();
    SplitterSet::new(prob.group.clone(), s, prob.coeffs, prob.t)
}

/// Runs [`search_splitting`] over every abelian group of the given order.
pub fn search_all_groups(
    order: u64,
    coeffs: CoefficientSet,
    t: usize,
    n: usize,
    options: &SearchOptions,
) -> Result<Vec<(AbelianGroup, SearchOutcome)>> {
    groups_of_order(order)?
        .into_iter()
        .map(|g| {
            let prob = SearchProblem::new(g.clone(), coeffs, t, n)?.with_options(SearchOptions {
                checkpoint: None,
                ..options.clone()
            });
            Ok((g, search_splitting(&prob)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(orders: &[u64], kp: u32, km: u32, t: usize, n: usize) -> SearchProblem {
        SearchProblem::new(
            AbelianGroup::new(orders.to_vec()).unwrap(),
            CoefficientSet::new(kp, km).unwrap(),
            t,
            n,
        )
        .unwrap()
    }

    fn residues(sp: &SplitterSet) -> Vec<Vec<u64>> {
        sp.elements()
            .iter()
            .map(|e| e.residues().to_vec())
            .collect()
    }

    #[test]
    fn z7_is_found() {
        let out = search_splitting(&problem(&[7], 1, 0, 2, 3)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(
            residues(out.witness.as_ref().unwrap()),
            vec![vec![1], vec![2], vec![4]]
        );
    }

    #[test]
    fn known_nonexistence() {
        for (orders, kp) in [(&[16u64][..], 1), (&[51][..], 2)] {
            let out = search_splitting(&problem(orders, kp, 0, 2, 5)).unwrap();
            assert_eq!(out.status, SearchStatus::ExhaustedNone, "{orders:?}");
        }
    }

    #[test]
    fn z4_f2_f2_splits() {
        let out = search_splitting(&problem(&[4, 2, 2], 1, 0, 2, 5)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(
            residues(out.witness.as_ref().unwrap()),
            vec![
                vec![1, 0, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0],
                vec![3, 1, 1]
            ]
        );
    }

    #[test]
    fn z19_and_f2_4() {
        let out = search_splitting(&problem(&[19], 2, 0, 2, 3)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        let out = search_splitting(&problem(&[2, 2, 2, 2], 1, 0, 2, 5)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
    }

    #[test]
    fn size_mismatch() {
        let out = search_splitting(&problem(&[8], 1, 0, 2, 3)).unwrap();
        assert_eq!(out.status, SearchStatus::ExhaustedNone);
        assert_eq!(out.nodes_explored, 0);
        let mut p = problem(&[8], 1, 0, 2, 3);
        p.options.assert_size_identity = true;
        assert!(search_splitting(&p).is_err());
    }

    #[test]
    fn weak_mode_finds_packings() {
        let mut p = problem(&[13], 1, 0, 2, 3);
        p.options.mode = SplitMode::Weak;
        let out = search_splitting(&p).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert!(
            verify_splitting(out.witness.as_ref().unwrap(), SplitMode::Weak)
                .unwrap()
                .valid
        );
    }

    #[test]
    fn budget_is_reported() {
        let mut p = problem(&[73], 2, 0, 2, 6);
        p.options.node_budget = Some(10);
        let out = search_splitting(&p).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExceeded);
        assert!(out.witness.is_none());
    }

    #[test]
    fn deterministic_single_worker() {
        let a = search_splitting(&problem(&[51], 2, 0, 2, 5)).unwrap();
        let b = search_splitting(&problem(&[51], 2, 0, 2, 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_agrees_with_sequential() {
        for (orders, kp, n) in [
            (&[19u64][..], 2, 3),
            (&[51][..], 2, 5),
            (&[2, 2, 2, 2][..], 1, 5),
        ] {
            let seq = search_splitting(&problem(orders, kp, 0, 2, n)).unwrap();
            let mut p = problem(orders, kp, 0, 2, n);
            p.options.jobs = 4;
            let par = search_splitting(&p).unwrap();
            assert_eq!(seq.status, par.status);
            if seq.status == SearchStatus::ExhaustedNone {
                assert_eq!(seq.nodes_explored, par.nodes_explored);
            }
        }
    }

    #[test]
    fn orbit_pruning_agrees() {
        for n in 3..=31u64 {
            for kp in [1, 2] {
                let mut p = problem(&[n], kp, 0, 2, 3);
                p.options.mode = SplitMode::Weak;
                let base = search_splitting(&p).unwrap();
                p.options.orbit_pruning = true;
                let pruned = search_splitting(&p).unwrap();
                assert_eq!(base.status, pruned.status, "Z_{n}, k+={kp}");
                assert!(pruned.nodes_explored <= base.nodes_explored);
            }
        }
    }

    #[test]
    fn unordered_search_agrees() {
        for n in [7u64, 13, 19] {
            let mut p = problem(&[n], 1, 0, 1, 3);
            p.options.mode = SplitMode::Weak;
            let a = search_splitting(&p).unwrap();
            p.options.canonical_only = false;
            let b = search_splitting(&p).unwrap();
            assert_eq!(a.status, b.status);
            assert!(b.nodes_explored >= a.nodes_explored);
        }
    }

    #[test]
    fn checkpoint_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z51.json");
        let mut p = problem(&[51], 2, 0, 2, 5);
        p.options.checkpoint = Some(path.clone());
        p.options.node_budget = Some(5_000);
        let first = search_splitting(&p).unwrap();
        assert_eq!(first.status, SearchStatus::BudgetExceeded);
        let saved = std::fs::read_to_string(&path).unwrap();
        let saved: Checkpoint = serde_json::from_str(&saved).unwrap();
        assert!(!saved.completed.is_empty() && saved.completed.len() < saved.frontier);
        p.options.node_budget = None;
        let resumed = search_splitting(&p).unwrap();
        assert_eq!(resumed.status, SearchStatus::ExhaustedNone);
        let fresh = search_splitting(&problem(&[51], 2, 0, 2, 5)).unwrap();
        assert_eq!(resumed.nodes_explored, fresh.nodes_explored);

        // a checkpoint for another problem is refused
        let mut other = problem(&[73], 2, 0, 2, 6);
        other.options.checkpoint = Some(path);
        assert!(matches!(
            search_splitting(&other),
            Err(Error::Checkpoint(_))
        ));
    }

    #[test]
    fn all_groups_of_order_16() {
        let res = search_all_groups(
            16,
            CoefficientSet::new(1, 0).unwrap(),
            2,
            5,
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(res.len(), 5);
        let found: Vec<_> = res
            .iter()
            .filter(|(_, o)| o.status == SearchStatus::Found)
            .map(|(g, _)| g.orders().to_vec())
            .collect();
        assert_eq!(found, vec![vec![2, 2, 2, 2], vec![4, 2, 2]]);
        let res = search_all_groups(
            11,
            CoefficientSet::new(1, 0).unwrap(),
            2,
            4,
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].1.status, SearchStatus::ExhaustedNone);
    }

    #[test]
    fn tier_rule() {
        let g = |o: &[u64]| AbelianGroup::new(o.to_vec()).unwrap();
        assert!(Tier::Basic.admits(&g(&[243])));
        assert!(Tier::Basic.admits(&g(&[4, 2, 2])));
        assert!(!Tier::Basic.admits(&g(&[9, 3, 3, 3])));
        assert!(Tier::Extended.admits(&g(&[9, 3, 3, 3])));
        assert_eq!("extended".parse::<Tier>().unwrap(), Tier::Extended);
        assert!("fast".parse::<Tier>().is_err());
    }
}
