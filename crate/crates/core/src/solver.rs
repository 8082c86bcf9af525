//! Exact retrograde solver for the spy game.
//!
//! The game on a graph `G` with parameters `(s, d, k)` is a finite
//! two-player zero-sum game of perfect information, so each configuration is
//! either winning for the spy or winning for the guards. The solver computes
//! the spy's winning region as a least fixpoint by backward induction over
//! the configuration digraph:
//!
//! * spy-to-move configurations where every guard is farther than `d` from
//!   the spy are immediately winning (rank 0);
//! * a guards-to-move configuration is winning for the spy iff **all** of its
//!   successors are;
//! * a spy-to-move configuration is winning for the spy iff it is immediately
//!   winning or **some** successor is.
//!
//! Everything outside the fixpoint is winning for the guards: from there the
//! guards can forever pick a successor outside the spy's region, and since
//! configurations are finite the play eventually repeats, which is the
//! guards' win condition.
//!
//! Guards are interchangeable, so guard placements are canonicalized to
//! sorted multisets; with `T = C(n+k-1, k)` tuple ranks the whole space has
//! exactly `2 * n * T` configurations, laid out as
//! `id = turn * n*T + spy * T + tuple_rank`. The fixpoint is computed by a
//! FIFO traversal with per-configuration successor counters, which labels
//! every winning configuration with its breadth-first `rank`: the number of
//! half-moves the spy needs to force a win. Ranks are a function of the game
//! alone (not of traversal order), so results are deterministic.

use crate::error::{Error, Result};
use crate::game::{is_spy_winning, Configuration, GameParams, Turn};
use crate::graph::{DistanceMatrix, Graph};

/// Default cap on the number of configurations a single solve may
/// materialize.
pub const DEFAULT_STATE_BUDGET: u64 = 50_000_000;

/// Environment variable the CLI reads to override the state budget.
pub const STATE_BUDGET_ENV: &str = "SPYGAME_STATE_BUDGET";

/// Guard counts above this are rejected outright; they could only pass the
/// state budget on degenerate graphs where the game is trivial anyway.
pub const MAX_GUARDS: usize = 1024;

/// Cap on stored guard-tuple transitions (the one solver table whose size is
/// not proportional to the configuration count).
const MAX_TRANSITIONS: usize = 200_000_000;

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub state_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { state_budget: DEFAULT_STATE_BUDGET }
    }
}

/// Reads the state-budget override from the environment, if present and
/// parseable.
pub fn env_state_budget() -> Option<u64> {
    std::env::var(STATE_BUDGET_ENV).ok()?.trim().parse().ok()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub enum Winner {
    Spy,
    Guards,
}

/// Who commits to their placement first. The placement phase is sequential:
/// whoever places second sees the first placement.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveOrder {
    /// The spy picks her start, then the guards place in response.
    SpyFirst,
    /// The guards place, then the spy picks her start in response.
    GuardsFirst,
}

/// Rank/unrank for sorted guard multisets over `0..n`, via the combinadic:
/// a sorted tuple `g_0 <= ... <= g_{k-1}` maps to the strictly increasing
/// combination `c_i = g_i + i`, whose colexicographic rank is
/// `sum_i C(c_i, i+1)`.
struct TupleCodec {
    n: usize,
    k: usize,
    /// Pascal table, `binom[c * (k+1) + j] = C(c, j)`, saturating. Entries
    /// that could saturate are never reachable from valid ranks.
    binom: Vec<u64>,
    count: usize,
}

impl TupleCodec {
    fn new(n: usize, k: usize, count: usize) -> TupleCodec {
        let rows = n + k; // c ranges over 0 ..= n+k-2
        let cols = k + 1;
        let mut binom = vec![0u64; rows * cols];
        for c in 0..rows {
            binom[c * cols] = 1;
            for j in 1..cols.min(c + 2) {
                let above = if c == 0 { 0 } else { binom[(c - 1) * cols + j] };
                let diag = if c == 0 || j == 0 { 0 } else { binom[(c - 1) * cols + j - 1] };
                binom[c * cols + j] = above.saturating_add(diag);
            }
        }
        TupleCodec { n, k, binom, count }
    }

    #[inline]
    fn c(&self, c: usize, j: usize) -> u64 {
        self.binom[c * (self.k + 1) + j]
    }

    fn rank(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.k);
        let mut r = 0u64;
        for (i, &g) in tuple.iter().enumerate() {
            debug_assert!(g < self.n);
            debug_assert!(i == 0 || tuple[i - 1] <= g);
            r += self.c(g + i, i + 1);
        }
        r as usize
    }

    fn unrank(&self, rank: usize, out: &mut Vec<usize>) {
        debug_assert!(rank < self.count);
        out.clear();
        out.resize(self.k, 0);
        let mut r = rank as u64;
        for i in (0..self.k).rev() {
            let mut c = self.n - 1 + i;
            while self.c(c, i + 1) > r {
                c -= 1;
            }
            out[i] = c - i;
            r -= self.c(c, i + 1);
        }
        debug_assert_eq!(r, 0);
    }
}

/// Exact number of sorted k-multisets over `0..n`, as a saturating u128.
fn multiset_count(n: usize, k: usize) -> u128 {
    // C(n+k-1, k), multiplied out so intermediate values stay exact.
    let mut res: u128 = 1;
    for i in 1..=k {
        let Some(num) = res.checked_mul((n - 1 + i) as u128) else {
            return u128::MAX;
        };
        res = num / i as u128;
    }
    res
}

/// Layout of the configuration space for one solve.
struct ConfigSpace {
    n: usize,
    t: usize,
    codec: TupleCodec,
}

impl ConfigSpace {
    #[inline]
    fn id(&self, turn: Turn, spy: usize, trank: usize) -> usize {
        let base = match turn {
            Turn::SpyToMove => 0,
            Turn::GuardsToMove => self.n * self.t,
        };
        base + spy * self.t + trank
    }

    fn decode(&self, id: usize) -> (Turn, usize, usize) {
        let half = self.n * self.t;
        let (turn, rest) = if id < half { (Turn::SpyToMove, id) } else { (Turn::GuardsToMove, id - half) };
        (turn, rest / self.t, rest % self.t)
    }
}

/// Enumerates the distinct sorted successor tuples of one guard tuple:
/// every guard independently stays or crosses one edge. When two guards
/// share a vertex their choice lists coincide, so the second one only scans
/// from the first one's pick onward — that prunes permutation duplicates at
/// the source. Remaining duplicates are filtered through a generation-
/// stamped table indexed by tuple rank.
struct TupleMoves {
    /// Sorted closed neighborhoods, one per vertex.
    closed: Vec<Vec<usize>>,
    stamp: Vec<u32>,
    generation: u32,
    chosen: Vec<usize>,
    picks: Vec<usize>,
    sorted: Vec<usize>,
}

impl TupleMoves {
    fn new(g: &Graph, k: usize, tuple_count: usize) -> TupleMoves {
        let closed = (0..g.n())
            .map(|v| {
                let mut l = g.neighbors(v).to_vec();
                let pos = l.partition_point(|&w| w < v);
                l.insert(pos, v);
                l
            })
            .collect();
        TupleMoves {
            closed,
            stamp: vec![0; tuple_count],
            generation: 0,
            chosen: vec![0; k],
            picks: vec![0; k],
            sorted: vec![0; k],
        }
    }

    fn for_each_successor(&mut self, tuple: &[usize], codec: &TupleCodec, mut f: impl FnMut(usize)) {
        if self.generation == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 0;
        }
        self.generation += 1;
        self.descend(tuple, codec, 0, &mut f);
    }

    fn descend(&mut self, tuple: &[usize], codec: &TupleCodec, i: usize, f: &mut impl FnMut(usize)) {
        if i == tuple.len() {
            self.sorted.clone_from_slice(&self.chosen);
            self.sorted.sort_unstable();
            let r = codec.rank(&self.sorted);
            if self.stamp[r] != self.generation {
                self.stamp[r] = self.generation;
                f(r);
            }
            return;
        }
        let start = if i > 0 && tuple[i] == tuple[i - 1] { self.picks[i - 1] } else { 0 };
        let len = self.closed[tuple[i]].len();
        for idx in start..len {
            self.picks[i] = idx;
            self.chosen[i] = self.closed[tuple[i]][idx];
            self.descend(tuple, codec, i + 1, f);
        }
    }
}

/// Outcome of one exact solve: the spy's winning region over every
/// configuration, breadth-first ranks, and placement witnesses.
pub struct SolveResult {
    pub params: GameParams,
    pub n: usize,
    /// Number of distinct guard tuples, `C(n+k-1, k)`.
    pub tuple_count: usize,
    /// Total configurations, `2 * n * tuple_count`.
    pub config_count: u64,
    /// How many configurations are winning for the spy.
    pub marked_count: u64,
    /// Least spy start that beats every guard placement, if any.
    pub spy_witness: Option<usize>,
    /// Lexicographically least guard placement that beats every spy start,
    /// if any.
    pub guard_witness: Option<Vec<usize>>,
    space: ConfigSpace,
    marked: Vec<u64>,
    rank: Vec<u32>,
    dist: DistanceMatrix,
}

impl SolveResult {
    /// Winner of the full game (placements included) under the given
    /// placement order, with both sides playing perfectly.
    pub fn winner(&self, order: MoveOrder) -> Winner {
        match order {
            MoveOrder::SpyFirst => {
                if self.spy_witness.is_some() {
                    Winner::Spy
                } else {
                    Winner::Guards
                }
            }
            MoveOrder::GuardsFirst => {
                if self.guard_witness.is_some() {
                    Winner::Guards
                } else {
                    Winner::Spy
                }
            }
        }
    }

    fn id_of(&self, cfg: &Configuration) -> Result<usize> {
        cfg.validate_against(self.n, self.params.k)?;
        Ok(self.space.id(cfg.turn, cfg.spy, self.space.codec.rank(cfg.guards())))
    }

    /// True when the configuration is winning for the spy.
    pub fn is_marked(&self, cfg: &Configuration) -> Result<bool> {
        let id = self.id_of(cfg)?;
        Ok(self.marked[id / 64] >> (id % 64) & 1 == 1)
    }

    /// Breadth-first rank of a configuration: 0 on immediately winning
    /// configurations, otherwise one more than the best (spy) or worst
    /// (guards) successor. `None` on guard-winning configurations.
    pub fn rank_of(&self, cfg: &Configuration) -> Result<Option<u32>> {
        let id = self.id_of(cfg)?;
        Ok(if self.marked[id / 64] >> (id % 64) & 1 == 1 { Some(self.rank[id]) } else { None })
    }

    /// The distance table of the solved graph.
    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    /// All spy-winning configurations with the given turn, in configuration-id
    /// order, together with their ranks.
    pub fn marked_configurations(&self, turn: Turn) -> Vec<(Configuration, u32)> {
        let mut out = Vec::new();
        let mut tuple = Vec::new();
        let half = self.n * self.space.t;
        let base = match turn {
            Turn::SpyToMove => 0,
            Turn::GuardsToMove => half,
        };
        for local in 0..half {
            let id = base + local;
            if self.marked[id / 64] >> (id % 64) & 1 == 1 {
                let (t, spy, trank) = self.space.decode(id);
                self.space.codec.unrank(trank, &mut tuple);
                out.push((Configuration::new(t, spy, tuple.clone()), self.rank[id]));
            }
        }
        out
    }
}

impl Configuration {
    fn validate_against(&self, n: usize, k: usize) -> Result<()> {
        if self.spy >= n {
            return Err(Error::InvalidParam(format!("spy vertex {} out of range", self.spy)));
        }
        if self.guards().len() != k {
            return Err(Error::InvalidParam(format!(
                "configuration has {} guards, solve used k = {k}",
                self.guards().len()
            )));
        }
        if let Some(&v) = self.guards().iter().find(|&&v| v >= n) {
            return Err(Error::InvalidParam(format!("guard vertex {v} out of range")));
        }
        Ok(())
    }
}

/// Runs the solver with default options.
pub fn solve_attractor(g: &Graph, params: &GameParams) -> Result<SolveResult> {
    solve_attractor_with(g, params, &SolveOptions::default())
}

/// Runs the solver. Fails with [`Error::BudgetExceeded`] before allocating
/// anything if the configuration space is larger than the state budget.
pub fn solve_attractor_with(g: &Graph, params: &GameParams, opts: &SolveOptions) -> Result<SolveResult> {
    let n = g.n();
    let k = params.k;
    if k > MAX_GUARDS {
        return Err(Error::InvalidParam(format!("guard count {k} exceeds the supported maximum of {MAX_GUARDS}")));
    }

    let t128 = multiset_count(n, k);
    let total128 = t128.saturating_mul(2 * n as u128);
    if total128 > opts.state_budget as u128 {
        return Err(Error::BudgetExceeded {
            required: u64::try_from(total128).unwrap_or(u64::MAX),
            budget: opts.state_budget,
        });
    }
    let t = t128 as usize;
    let total = 2 * n * t;

    let codec = TupleCodec::new(n, k, t);
    let space = ConfigSpace { n, t, codec };
    let dist = g.all_pairs_distances();

    // Spy move balls of radius s, flattened.
    let mut ball_off = Vec::with_capacity(n + 1);
    let mut balls: Vec<usize> = Vec::new();
    ball_off.push(0);
    for v in 0..n {
        balls.extend(crate::game::spy_moves(g, params.s, v));
        ball_off.push(balls.len());
    }

    // Guard tuple transition table in compressed sparse rows. The relation is
    // symmetric (each guard's move is reversible), so rows double as
    // predecessor lists.
    let mut moves = TupleMoves::new(g, k, t);
    let mut outdeg = vec![0u32; t];
    let mut tuple = Vec::new();
    let mut transitions = 0usize;
    for tr in 0..t {
        space.codec.unrank(tr, &mut tuple);
        let mut deg = 0u32;
        moves.for_each_successor(&tuple, &space.codec, |_| deg += 1);
        outdeg[tr] = deg;
        transitions += deg as usize;
    }
    if transitions > MAX_TRANSITIONS {
        return Err(Error::InvalidParam(format!(
            "guard transition table needs {transitions} entries (limit {MAX_TRANSITIONS}); use fewer guards or a smaller graph"
        )));
    }
    let mut row_off = Vec::with_capacity(t + 1);
    row_off.push(0usize);
    for tr in 0..t {
        row_off.push(row_off[tr] + outdeg[tr] as usize);
    }
    let mut rows = vec![0u32; transitions];
    {
        let mut fill = row_off.clone();
        for tr in 0..t {
            space.codec.unrank(tr, &mut tuple);
            moves.for_each_successor(&tuple, &space.codec, |succ| {
                rows[fill[tr]] = succ as u32;
                fill[tr] += 1;
            });
        }
    }

    // Remaining-unmarked-successor counters for guards-to-move
    // configurations: (spy v, tuple tr) has one successor per element of
    // row tr.
    let mut counter = vec![0u32; n * t];
    for v in 0..n {
        counter[v * t..(v + 1) * t].copy_from_slice(&outdeg);
    }

    let mut marked = vec![0u64; total.div_ceil(64)];
    let mut rank = vec![u32::MAX; total];
    let mut queue: Vec<u32> = Vec::new();

    // Seed: spy-to-move configurations that are already wins.
    for tr in 0..t {
        space.codec.unrank(tr, &mut tuple);
        for v in 0..n {
            if is_spy_winning(&dist, params.d, v, &tuple) {
                let id = space.id(Turn::SpyToMove, v, tr);
                marked[id / 64] |= 1 << (id % 64);
                rank[id] = 0;
                queue.push(id as u32);
            }
        }
    }

    // Backward induction: propagate marks to predecessors. FIFO order makes
    // every configuration's rank the length of the spy's forced win.
    let mut head = 0;
    let half = n * t;
    while head < queue.len() {
        let id = queue[head] as usize;
        head += 1;
        let next_rank = rank[id] + 1;
        let (turn, v, tr) = space.decode(id);
        match turn {
            Turn::SpyToMove => {
                // Predecessors: guards-to-move configs (v, tr') with
                // tr reachable from tr' — by symmetry, tr' in rows[tr].
                for &p in &rows[row_off[tr]..row_off[tr + 1]] {
                    let ptr = p as usize;
                    let pid = half + v * t + ptr;
                    if marked[pid / 64] >> (pid % 64) & 1 == 0 {
                        let c = &mut counter[v * t + ptr];
                        *c -= 1;
                        if *c == 0 {
                            marked[pid / 64] |= 1 << (pid % 64);
                            rank[pid] = next_rank;
                            queue.push(pid as u32);
                        }
                    }
                }
            }
            Turn::GuardsToMove => {
                // Predecessors: spy-to-move configs (u, tr) with v in the
                // spy's ball around u — by symmetry, u in the ball around v.
                for &u in &balls[ball_off[v]..ball_off[v + 1]] {
                    let pid = u * t + tr;
                    if marked[pid / 64] >> (pid % 64) & 1 == 0 {
                        marked[pid / 64] |= 1 << (pid % 64);
                        rank[pid] = next_rank;
                        queue.push(pid as u32);
                    }
                }
            }
        }
    }

    let marked_count = marked.iter().map(|w| w.count_ones() as u64).sum();

    // Spy witness: least start winning against every placement.
    let mut spy_witness = None;
    'spy: for v in 0..n {
        for tr in 0..t {
            let id = v * t + tr;
            if marked[id / 64] >> (id % 64) & 1 == 0 {
                continue 'spy;
            }
        }
        spy_witness = Some(v);
        break;
    }

    // Guard witness: lexicographically least placement unbeaten by every
    // start. (Tuple-rank order is colexicographic, so scan all and compare.)
    let mut guard_witness: Option<Vec<usize>> = None;
    'guards: for tr in 0..t {
        for v in 0..n {
            let id = v * t + tr;
            if marked[id / 64] >> (id % 64) & 1 == 1 {
                continue 'guards;
            }
        }
        space.codec.unrank(tr, &mut tuple);
        match &guard_witness {
            Some(best) if *best <= tuple => {}
            _ => guard_witness = Some(tuple.clone()),
        }
    }

    Ok(SolveResult {
        params: *params,
        n,
        tuple_count: t,
        config_count: total as u64,
        marked_count,
        spy_witness,
        guard_witness,
        space,
        marked,
        rank,
        dist,
    })
}

/// Full-game winner under the given placement order, default options.
pub fn decide(g: &Graph, params: &GameParams, order: MoveOrder) -> Result<Winner> {
    Ok(solve_attractor(g, params)?.winner(order))
}

/// Winner with play started at an explicit configuration (placements
/// already made).
pub fn decide_from(g: &Graph, params: &GameParams, cfg: &Configuration) -> Result<Winner> {
    let res = solve_attractor(g, params)?;
    Ok(if res.is_marked(cfg)? { Winner::Spy } else { Winner::Guards })
}

/// Smallest `k <= max_k` for which the guards win the game (spy places
/// first), or `None` if the spy beats even `max_k` guards.
pub fn guard_number(g: &Graph, s: usize, d: usize, max_k: usize) -> Result<Option<usize>> {
    guard_number_with(g, s, d, max_k, &SolveOptions::default())
}

pub fn guard_number_with(g: &Graph, s: usize, d: usize, max_k: usize, opts: &SolveOptions) -> Result<Option<usize>> {
    for k in 1..=max_k {
        let params = GameParams::new(s, d, k)?;
        if solve_attractor_with(g, &params, opts)?.winner(MoveOrder::SpyFirst) == Winner::Guards {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{guard_moves, spy_moves};
    use crate::graph::{complete_graph, cycle_graph, path_graph, Graph};
    use std::collections::HashSet;

    /// All sorted k-tuples over 0..n, ascending lexicographically.
    fn all_sorted_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in lo..n {
                cur.push(v);
                rec(n, k, v, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 0, &mut cur, &mut out);
        out
    }

    /// All ordered k-tuples over 0..n (base-n counting).
    fn all_ordered_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mut code in 0..n.pow(k as u32) {
            let mut t = vec![0usize; k];
            for slot in t.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            out.push(t);
        }
        out
    }

    /// Tuple codec is a bijection onto 0..C(n+k-1, k).
    #[test]
    fn tuple_codec_bijection() {
        for (n, k) in [(1, 1), (3, 2), (4, 3), (5, 1), (2, 5)] {
            let count = multiset_count(n, k) as usize;
            let codec = TupleCodec::new(n, k, count);
            let tuples = all_sorted_tuples(n, k);
            assert_eq!(tuples.len(), count);
            let mut seen = vec![false; count];
            for tuple in &tuples {
                let r = codec.rank(tuple);
                assert!(!seen[r], "rank collision for n={n} k={k}");
                seen[r] = true;
                let mut back = Vec::new();
                codec.unrank(r, &mut back);
                assert_eq!(&back, tuple);
            }
            assert!(seen.iter().all(|&b| b), "missing ranks for n={n} k={k}");
        }
    }

    /// Independent fixpoint oracle over *ordered* guard tuples, with its own
    /// move generation, used to cross-check the production solver.
    fn oracle_marked(g: &Graph, params: &GameParams) -> HashSet<(Turn, usize, Vec<usize>)> {
        let n = g.n();
        let dist = g.all_pairs_distances();
        let mut states: Vec<(Turn, usize, Vec<usize>)> = Vec::new();
        for ordered in all_ordered_tuples(n, params.k) {
            for spy in 0..n {
                states.push((Turn::SpyToMove, spy, ordered.clone()));
                states.push((Turn::GuardsToMove, spy, ordered.clone()));
            }
        }
        let spy_win = |spy: usize, guards: &[usize]| {
            guards.iter().all(|&gv| dist.get(spy, gv) as usize > params.d)
        };
        let mut marked: HashSet<(Turn, usize, Vec<usize>)> = HashSet::new();
        loop {
            let mut changed = false;
            for st in &states {
                if marked.contains(st) {
                    continue;
                }
                let (turn, spy, guards) = st;
                let win = match turn {
                    Turn::SpyToMove => {
                        spy_win(*spy, guards)
                            || spy_moves(g, params.s, *spy).into_iter().any(|u| {
                                marked.contains(&(Turn::GuardsToMove, u, guards.clone()))
                            })
                    }
                    Turn::GuardsToMove => {
                        // Every ordered joint move leads into the marked set.
                        let mut all = true;
                        let mut choice = guards.clone();
                        fn rec(
                            g: &Graph,
                            guards: &[usize],
                            i: usize,
                            choice: &mut Vec<usize>,
                            spy: usize,
                            marked: &HashSet<(Turn, usize, Vec<usize>)>,
                            all: &mut bool,
                        ) {
                            if !*all {
                                return;
                            }
                            if i == guards.len() {
                                if !marked.contains(&(Turn::SpyToMove, spy, choice.clone())) {
                                    *all = false;
                                }
                                return;
                            }
                            choice[i] = guards[i];
                            rec(g, guards, i + 1, choice, spy, marked, all);
                            for &w in g.neighbors(guards[i]) {
                                choice[i] = w;
                                rec(g, guards, i + 1, choice, spy, marked, all);
                            }
                        }
                        rec(g, guards, 0, &mut choice, *spy, &marked, &mut all);
                        all
                    }
                };
                if win {
                    marked.insert(st.clone());
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        marked
    }

    fn assert_matches_oracle(g: &Graph, params: &GameParams) {
        let res = solve_attractor(g, params).unwrap();
        let oracle = oracle_marked(g, params);
        for ordered in all_ordered_tuples(g.n(), params.k) {
            for spy in 0..g.n() {
                for turn in [Turn::SpyToMove, Turn::GuardsToMove] {
                    let cfg = Configuration::new(turn, spy, ordered.clone());
                    assert_eq!(
                        res.is_marked(&cfg).unwrap(),
                        oracle.contains(&(turn, spy, ordered.clone())),
                        "disagreement at {cfg} on {g:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn c4_single_guard_matches_bruteforce_fixpoint() {
        // 32 ordered configurations; a fast spy beats one guard everywhere.
        let c4 = cycle_graph(4).unwrap();
        let params = GameParams::new(2, 0, 1).unwrap();
        let res = solve_attractor(&c4, &params).unwrap();
        assert_eq!(res.config_count, 32);
        assert_eq!(res.winner(MoveOrder::SpyFirst), Winner::Spy);
        assert_eq!(res.spy_witness, Some(0));
        let marked = oracle_marked(&c4, &params);
        for spy in 0..4 {
            for g0 in 0..4 {
                assert!(marked.contains(&(Turn::SpyToMove, spy, vec![g0])));
            }
        }
        assert_matches_oracle(&c4, &params);
    }

    #[test]
    fn solver_agrees_with_oracle_on_assorted_small_games() {
        let cases: Vec<(Graph, usize, usize, usize)> = vec![
            (path_graph(4).unwrap(), 2, 0, 1),
            (path_graph(4).unwrap(), 2, 0, 2),
            (path_graph(5).unwrap(), 2, 1, 1),
            (cycle_graph(4).unwrap(), 2, 0, 2),
            (cycle_graph(5).unwrap(), 3, 1, 2),
            (complete_graph(4).unwrap(), 2, 0, 1),
            (complete_graph(1).unwrap(), 2, 1, 2),
            (
                path_graph(2).unwrap().disjoint_union(&path_graph(3).unwrap()).unwrap(),
                2,
                0,
                1,
            ),
            (Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(), 2, 1, 1),
        ];
        for (g, s, d, k) in &cases {
            assert_matches_oracle(g, &GameParams::new(*s, *d, *k).unwrap());
        }
    }

    #[test]
    fn single_vertex_is_always_contained() {
        let k1 = complete_graph(1).unwrap();
        let res = solve_attractor(&k1, &GameParams::new(3, 0, 2).unwrap()).unwrap();
        assert_eq!(res.marked_count, 0);
        assert_eq!(res.winner(MoveOrder::SpyFirst), Winner::Guards);
        assert_eq!(res.winner(MoveOrder::GuardsFirst), Winner::Guards);
        assert_eq!(res.guard_witness, Some(vec![0, 0]));
    }

    #[test]
    fn one_guard_contains_a_slow_spy_on_p5() {
        // s = 2, d = 1: the path formula gives 1 guard for P5.
        let p5 = path_graph(5).unwrap();
        let params = GameParams::new(2, 1, 1).unwrap();
        let res = solve_attractor(&p5, &params).unwrap();
        assert_eq!(res.winner(MoveOrder::SpyFirst), Winner::Guards);
        // Placing first is worse for the guards: no single placement is
        // within distance 1 of every possible spy start on P5, so when the
        // spy places second she just starts far away.
        assert_eq!(res.winner(MoveOrder::GuardsFirst), Winner::Spy);
        assert_eq!(res.guard_witness, None);
        // An adjacent guard contains a spy start at the path's end.
        let cfg = Configuration::new(Turn::SpyToMove, 0, vec![1]);
        assert!(!res.is_marked(&cfg).unwrap());
        assert_eq!(res.rank_of(&cfg).unwrap(), None);
    }

    #[test]
    fn ranks_are_zero_exactly_on_immediate_wins() {
        let p5 = path_graph(5).unwrap();
        let params = GameParams::new(2, 1, 1).unwrap();
        let res = solve_attractor(&p5, &params).unwrap();
        let dist = p5.all_pairs_distances();
        for spy in 0..5 {
            for gv in 0..5 {
                let cfg = Configuration::new(Turn::SpyToMove, spy, vec![gv]);
                let r = res.rank_of(&cfg).unwrap();
                if dist.get(spy, gv) > 1 {
                    assert_eq!(r, Some(0));
                } else {
                    assert_ne!(r, Some(0));
                }
            }
        }
    }

    #[test]
    fn guard_number_examples() {
        let p5 = path_graph(5).unwrap();
        assert_eq!(guard_number(&p5, 2, 1, 5).unwrap(), Some(1));
        assert_eq!(guard_number(&p5, 4, 1, 5).unwrap(), Some(2));
        assert_eq!(guard_number(&complete_graph(5).unwrap(), 2, 0, 5).unwrap(), Some(1));
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(guard_number(&c4, 2, 0, 4).unwrap(), Some(2));
        // max_k too small: unresolved.
        assert_eq!(guard_number(&c4, 2, 0, 1).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced_with_exact_requirement() {
        let c4 = cycle_graph(4).unwrap();
        let params = GameParams::new(2, 0, 1).unwrap();
        let opts = SolveOptions { state_budget: 31 };
        match solve_attractor_with(&c4, &params, &opts) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 32);
                assert_eq!(budget, 31);
            }
            other => panic!("expected budget error, got {:?}", other.map(|r| r.config_count)),
        }
        assert!(solve_attractor_with(&c4, &params, &SolveOptions { state_budget: 32 }).is_ok());
    }

    #[test]
    fn guard_permutation_gives_the_same_configuration() {
        let res = solve_attractor(&path_graph(4).unwrap(), &GameParams::new(2, 0, 3).unwrap()).unwrap();
        let a = Configuration::new(Turn::SpyToMove, 0, vec![1, 3, 2]);
        let b = Configuration::new(Turn::SpyToMove, 0, vec![3, 2, 1]);
        assert_eq!(res.is_marked(&a).unwrap(), res.is_marked(&b).unwrap());
        assert_eq!(res.rank_of(&a).unwrap(), res.rank_of(&b).unwrap());
    }

    #[test]
    fn mismatched_configurations_are_rejected() {
        let res = solve_attractor(&path_graph(4).unwrap(), &GameParams::new(2, 0, 2).unwrap()).unwrap();
        assert!(res.is_marked(&Configuration::new(Turn::SpyToMove, 0, vec![1])).is_err());
        assert!(res.is_marked(&Configuration::new(Turn::SpyToMove, 9, vec![1, 2])).is_err());
        assert!(res.is_marked(&Configuration::new(Turn::SpyToMove, 0, vec![1, 9])).is_err());
    }

    #[test]
    fn marked_configuration_listing_is_consistent() {
        let c4 = cycle_graph(4).unwrap();
        let params = GameParams::new(2, 0, 1).unwrap();
        let res = solve_attractor(&c4, &params).unwrap();
        let listed = res.marked_configurations(Turn::SpyToMove);
        assert_eq!(listed.len(), 16); // every spy-turn configuration is a spy win
        for (cfg, r) in &listed {
            assert_eq!(res.rank_of(cfg).unwrap(), Some(*r));
        }
        let total_marked: usize = res.marked_configurations(Turn::SpyToMove).len()
            + res.marked_configurations(Turn::GuardsToMove).len();
        assert_eq!(total_marked as u64, res.marked_count);
    }

    /// decide_from agrees with guard_moves/spy_moves one-step expansion.
    #[test]
    fn one_step_consistency_on_a_small_game() {
        let g = path_graph(4).unwrap();
        let params = GameParams::new(2, 0, 1).unwrap();
        let res = solve_attractor(&g, &params).unwrap();
        for spy in 0..4 {
            for gv in 0..4 {
                let gcfg = Configuration::new(Turn::GuardsToMove, spy, vec![gv]);
                let all_marked = guard_moves(&g, &[gv]).into_iter().all(|t| {
                    res.is_marked(&Configuration::new(Turn::SpyToMove, spy, t)).unwrap()
                });
                assert_eq!(res.is_marked(&gcfg).unwrap(), all_marked);
            }
        }
    }
}
