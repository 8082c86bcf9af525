//! Strategies and play: policies, winning-strategy extraction from solver
//! output, and a referee that runs games move by move.
//!
//! A *policy* answers two questions: where do I place at the start, and what
//! do I play in a given configuration. The table policies read answers off a
//! [`SolveResult`] and are guaranteed wins on their winning regions; the
//! greedy policies give a losing side something sensible to do (stall via
//! ranks, or chase distance); the random and scripted policies are opponents
//! for tests and demos.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{guard_moves, is_spy_winning, spy_moves, Configuration, GameParams, Turn};
use crate::graph::Graph;
use crate::solver::SolveResult;

/// Decision procedure for the spy's side.
pub trait SpyPolicy {
    /// The spy's initial vertex (she places before seeing the guards).
    fn place(&mut self, g: &Graph) -> Result<usize>;
    /// The spy's move in a spy-to-move configuration.
    fn step(&mut self, g: &Graph, cfg: &Configuration) -> Result<usize>;
}

/// Decision procedure for the guards' side.
pub trait GuardPolicy {
    /// The guards' initial placement, knowing the spy's start.
    fn place(&mut self, g: &Graph, spy: usize) -> Result<Vec<usize>>;
    /// The guards' joint move in a guards-to-move configuration.
    fn step(&mut self, g: &Graph, cfg: &Configuration) -> Result<Vec<usize>>;
}

/// Enumerates sorted guard tuples in lexicographic order until `accept`
/// returns true; yields that tuple.
fn first_tuple_such_that(n: usize, k: usize, mut accept: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    fn rec(n: usize, k: usize, lo: usize, cur: &mut Vec<usize>, accept: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return accept(cur);
        }
        for v in lo..n {
            cur.push(v);
            if rec(n, k, v, cur, accept) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(k);
    rec(n, k, 0, &mut cur, &mut accept).then_some(cur)
}

/// The spy's optimal strategy read off a solve: from any spy-winning
/// configuration it moves to a successor of strictly smaller rank, so the
/// escape happens within the starting configuration's rank.
pub struct SpyTablePolicy<'a> {
    res: &'a SolveResult,
}

/// Extracts the spy's winning strategy table. Queries fail on
/// configurations the spy loses.
pub fn extract_spy_strategy(res: &SolveResult) -> SpyTablePolicy<'_> {
    SpyTablePolicy { res }
}

impl SpyPolicy for SpyTablePolicy<'_> {
    fn place(&mut self, _g: &Graph) -> Result<usize> {
        self.res
            .spy_witness
            .ok_or_else(|| Error::PolicyQuery("the spy has no start that wins against every placement".into()))
    }

    fn step(&mut self, g: &Graph, cfg: &Configuration) -> Result<usize> {
        let rank = self
            .res
            .rank_of(cfg)?
            .ok_or_else(|| Error::PolicyQuery(format!("spy strategy queried at a losing configuration: {cfg}")))?;
        if rank == 0 {
            // Already winning on the spot; staying put is as good as anything.
            return Ok(cfg.spy);
        }
        for u in spy_moves(g, self.res.params.s, cfg.spy) {
            let succ = Configuration::new(Turn::GuardsToMove, u, cfg.guards().to_vec());
            if let Some(r) = self.res.rank_of(&succ)? {
                if r < rank {
                    return Ok(u);
                }
            }
        }
        Err(Error::PolicyQuery(format!("no rank-decreasing move at {cfg}; solve result is inconsistent")))
    }
}

/// The guards' optimal strategy read off a solve: it keeps play inside the
/// guards' winning region (the unmarked configurations) forever.
pub struct GuardTablePolicy<'a> {
    res: &'a SolveResult,
}

/// Extracts the guards' winning strategy table. Queries fail on
/// configurations the guards lose.
pub fn extract_guard_strategy(res: &SolveResult) -> GuardTablePolicy<'_> {
    GuardTablePolicy { res }
}

impl GuardPolicy for GuardTablePolicy<'_> {
    fn place(&mut self, _g: &Graph, spy: usize) -> Result<Vec<usize>> {
        let res = self.res;
        first_tuple_such_that(res.n, res.params.k, |t| {
            !res.is_marked(&Configuration::new(Turn::SpyToMove, spy, t.to_vec())).unwrap_or(true)
        })
        .ok_or_else(|| Error::PolicyQuery(format!("every placement loses against a spy starting at {spy}")))
    }

    fn step(&mut self, g: &Graph, cfg: &Configuration) -> Result<Vec<usize>> {
        if self.res.is_marked(cfg)? {
            return Err(Error::PolicyQuery(format!(
                "guard strategy queried at a configuration the guards lose: {cfg}"
            )));
        }
        for t in guard_moves(g, cfg.guards()) {
            let succ = Configuration::new(Turn::SpyToMove, cfg.spy, t.clone());
            if !self.res.is_marked(&succ)? {
                return Ok(t);
            }
        }
        Err(Error::PolicyQuery(format!("no safe guard response at {cfg}; solve result is inconsistent")))
    }
}

/// Rank-greedy spy for positions she loses: grab a win if one is in reach,
/// otherwise maximize the distance to the nearest guard.
pub struct GreedySpyPolicy<'a> {
    res: &'a SolveResult,
}

impl<'a> GreedySpyPolicy<'a> {
    pub fn new(res: &'a SolveResult) -> Self {
        GreedySpyPolicy { res }
    }
}

impl SpyPolicy for GreedySpyPolicy<'_> {
    fn place(&mut self, g: &Graph) -> Result<usize> {
        if let Some(v) = self.res.spy_witness {
            return Ok(v);
        }
        // Most remote vertex: maximize the sum of finite distances.
        let dist = self.res.distances();
        Ok((0..g.n())
            .max_by_key(|&v| {
                (0..g.n())
                    .map(|u| if dist.is_finite(v, u) { dist.get(v, u) as u64 } else { 0 })
                    .sum::<u64>()
            })
            .unwrap_or(0))
    }

    fn step(&mut self, g: &Graph, cfg: &Configuration) -> Result<usize> {
        let moves = spy_moves(g, self.res.params.s, cfg.spy);
        let mut best_win: Option<(u32, usize)> = None;
        for &u in &moves {
            let succ = Configuration::new(Turn::GuardsToMove, u, cfg.guards().to_vec());
            if let Some(r) = self.res.rank_of(&succ)? {
                if best_win.is_none_or(|(br, _)| r < br) {
                    best_win = Some((r, u));
                }
            }
        }
        if let Some((_, u)) = best_win {
            return Ok(u);
        }
        let dist = self.res.distances();
        let nearest = |u: usize| cfg.guards().iter().map(|&gv| dist.get(u, gv)).min().unwrap();
        Ok(moves.into_iter().max_by_key(|&u| (nearest(u), std::cmp::Reverse(u))).unwrap())
    }
}

/// Rank-greedy guards for positions they lose: hold an unmarked successor if
/// one exists, otherwise stall by picking the successor of maximal rank.
pub struct GreedyGuardPolicy<'a> {
    res: &'a SolveResult,
}

impl<'a> GreedyGuardPolicy<'a> {
    pub fn new(res: &'a SolveResult) -> Self {
        GreedyGuardPolicy { res }
    }
}

impl GuardPolicy for GreedyGuardPolicy<'_> {
    fn place(&mut self, _g: &Graph, spy: usize) -> Result<Vec<usize>> {
        let res = self.res;
        if let Some(t) = first_tuple_such_that(res.n, res.params.k, |t| {
            !res.is_marked(&Configuration::new(Turn::SpyToMove, spy, t.to_vec())).unwrap_or(true)
        }) {
            return Ok(t);
        }
        // Everything loses; stall from the placement of maximal rank.
        let mut best: Option<(u32, Vec<usize>)> = None;
        first_tuple_such_that(res.n, res.params.k, |t| {
            let cfg = Configuration::new(Turn::SpyToMove, spy, t.to_vec());
            if let Ok(Some(r)) = res.rank_of(&cfg) {
                if best.as_ref().is_none_or(|(br, _)| r > *br) {
                    best = Some((r, t.to_vec()));
                }
            }
            false // keep scanning
        });
        Ok(best.expect("every configuration has a rank when all are marked").1)
    }

    fn step(&mut self, g: &Graph, cfg: &Configuration) -> Result<Vec<usize>> {
        let mut best_loss: Option<(u32, Vec<usize>)> = None;
        for t in guard_moves(g, cfg.guards()) {
            let succ = Configuration::new(Turn::SpyToMove, cfg.spy, t.clone());
            match self.res.rank_of(&succ)? {
                None => return Ok(t),
                Some(r) => {
                    if best_loss.as_ref().is_none_or(|(br, _)| r > *br) {
                        best_loss = Some((r, t));
                    }
                }
            }
        }
        Ok(best_loss.expect("guards always have at least the stay-put move").1)
    }
}

/// Uniformly random spy, reproducible from a seed.
pub struct RandomSpyPolicy {
    s: usize,
    rng: ChaCha8Rng,
}

impl RandomSpyPolicy {
    pub fn new(s: usize, seed: u64) -> Self {
        RandomSpyPolicy { s, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl SpyPolicy for RandomSpyPolicy {
    fn place(&mut self, g: &Graph) -> Result<usize> {
        Ok(self.rng.gen_range(0..g.n()))
    }

    fn step(&mut self, g: &Graph, cfg: &Configuration) -> Result<usize> {
        let moves = spy_moves(g, self.s, cfg.spy);
        Ok(moves[self.rng.gen_range(0..moves.len())])
    }
}

/// Uniformly random guards (uniform over canonical joint moves),
/// reproducible from a seed.
pub struct RandomGuardPolicy {
    k: usize,
    rng: ChaCha8Rng,
}

impl RandomGuardPolicy {
    pub fn new(k: usize, seed: u64) -> Self {
        RandomGuardPolicy { k, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl GuardPolicy for RandomGuardPolicy {
    fn place(&mut self, g: &Graph, _spy: usize) -> Result<Vec<usize>> {
        Ok((0..self.k).map(|_| self.rng.gen_range(0..g.n())).collect())
    }

    fn step(&mut self, g: &Graph, cfg: &Configuration) -> Result<Vec<usize>> {
        let moves = guard_moves(g, cfg.guards());
        Ok(moves[self.rng.gen_range(0..moves.len())].clone())
    }
}

/// Spy that replays a fixed script, staying put when the script runs out.
pub struct ScriptedSpyPolicy {
    pub start: usize,
    pub moves: std::collections::VecDeque<usize>,
}

impl SpyPolicy for ScriptedSpyPolicy {
    fn place(&mut self, _g: &Graph) -> Result<usize> {
        Ok(self.start)
    }

    fn step(&mut self, _g: &Graph, cfg: &Configuration) -> Result<usize> {
        Ok(self.moves.pop_front().unwrap_or(cfg.spy))
    }
}

/// Guards that replay a fixed script, staying put when the script runs out.
pub struct ScriptedGuardPolicy {
    pub placement: Vec<usize>,
    pub moves: std::collections::VecDeque<Vec<usize>>,
}

impl GuardPolicy for ScriptedGuardPolicy {
    fn place(&mut self, _g: &Graph, _spy: usize) -> Result<Vec<usize>> {
        Ok(self.placement.clone())
    }

    fn step(&mut self, _g: &Graph, cfg: &Configuration) -> Result<Vec<usize>> {
        Ok(self.moves.pop_front().unwrap_or_else(|| cfg.guards().to_vec()))
    }
}

/// True when the sorted multiset `to` is reachable from `from` in one
/// guards' half-move: some pairing moves every guard within its closed
/// neighborhood. Checked by backtracking over pairings.
pub fn tuple_move_legal(g: &Graph, from: &[usize], to: &[usize]) -> bool {
    if from.len() != to.len() {
        return false;
    }
    fn rec(g: &Graph, from: &[usize], to: &[usize], i: usize, used: &mut [bool]) -> bool {
        if i == from.len() {
            return true;
        }
        for (j, &t) in to.iter().enumerate() {
            // Skip used slots and duplicate targets (sorted input makes
            // equal targets adjacent).
            if used[j] || (j > 0 && to[j - 1] == t && used[j - 1]) {
                continue;
            }
            if t == from[i] || g.has_edge(from[i], t) {
                used[j] = true;
                if rec(g, from, to, i + 1, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; to.len()];
    rec(g, from, to, 0, &mut used)
}

/// One recorded half-move.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum TraceMove {
    Spy { to: usize },
    Guards { to: Vec<usize> },
}

/// How a simulated game ended.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Outcome {
    /// The spy reached distance greater than `d` from every guard (possibly
    /// already at placement).
    SpyEscaped,
    /// A spy-to-move configuration repeated, so the guards contain forever.
    GuardsByRepetition,
    /// The round limit was hit without a decision.
    TurnLimit,
}

/// Record of one simulated game: the initial configuration, every half-move
/// in order, and the outcome.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Trace {
    pub s: usize,
    pub d: usize,
    pub k: usize,
    pub start: Configuration,
    pub moves: Vec<TraceMove>,
    pub outcome: Outcome,
}

impl Trace {
    /// Replays the trace: every configuration in order, starting with
    /// `start` (spy to move) and alternating after each half-move.
    pub fn configurations(&self) -> Vec<Configuration> {
        let mut out = vec![self.start.clone()];
        let mut spy = self.start.spy;
        let mut guards = self.start.guards().to_vec();
        for mv in &self.moves {
            match mv {
                TraceMove::Spy { to } => {
                    spy = *to;
                    out.push(Configuration::new(Turn::GuardsToMove, spy, guards.clone()));
                }
                TraceMove::Guards { to } => {
                    guards = to.clone();
                    out.push(Configuration::new(Turn::SpyToMove, spy, guards.clone()));
                }
            }
        }
        out
    }
}

/// Plays placements then up to `max_rounds` full rounds (one spy half-move
/// plus one guards' half-move each), refereeing legality throughout:
/// illegal policy answers abort with [`Error::IllegalMove`]. The game ends
/// when the spy is farther than `d` from every guard after a guards'
/// half-move (or at placement), or when a spy-to-move configuration repeats.
pub fn simulate(
    g: &Graph,
    params: &GameParams,
    spy: &mut dyn SpyPolicy,
    guards: &mut dyn GuardPolicy,
    max_rounds: usize,
) -> Result<Trace> {
    let dist = g.all_pairs_distances();
    let spy_start = spy.place(g)?;
    if spy_start >= g.n() {
        return Err(Error::IllegalMove(format!("spy placement {spy_start} out of range")));
    }
    let placement = guards.place(g, spy_start)?;
    if placement.len() != params.k {
        return Err(Error::IllegalMove(format!(
            "guard placement has {} guards, expected {}",
            placement.len(),
            params.k
        )));
    }
    if let Some(&v) = placement.iter().find(|&&v| v >= g.n()) {
        return Err(Error::IllegalMove(format!("guard placement vertex {v} out of range")));
    }

    let start = Configuration::new(Turn::SpyToMove, spy_start, placement);
    let mut trace = Trace {
        s: params.s,
        d: params.d,
        k: params.k,
        start: start.clone(),
        moves: Vec::new(),
        outcome: Outcome::TurnLimit,
    };
    if is_spy_winning(&dist, params.d, start.spy, start.guards()) {
        trace.outcome = Outcome::SpyEscaped;
        return Ok(trace);
    }

    let mut seen: HashSet<Configuration> = HashSet::new();
    seen.insert(start.clone());
    let mut cfg = start;
    for _ in 0..max_rounds {
        // Spy half-move.
        let to = spy.step(g, &cfg)?;
        if to >= g.n() || dist.get(cfg.spy, to) as usize > params.s {
            return Err(Error::IllegalMove(format!("spy cannot reach {to} from {} at speed {}", cfg.spy, params.s)));
        }
        trace.moves.push(TraceMove::Spy { to });
        cfg = Configuration::new(Turn::GuardsToMove, to, cfg.guards().to_vec());

        // Guards' half-move.
        let resp = guards.step(g, &cfg)?;
        if resp.iter().any(|&v| v >= g.n()) {
            return Err(Error::IllegalMove(format!("guard move {resp:?} out of range")));
        }
        let next = Configuration::new(Turn::SpyToMove, cfg.spy, resp);
        if !tuple_move_legal(g, cfg.guards(), next.guards()) {
            return Err(Error::IllegalMove(format!(
                "guards cannot reach {:?} from {:?} in one half-move",
                next.guards(),
                cfg.guards()
            )));
        }
        trace.moves.push(TraceMove::Guards { to: next.guards().to_vec() });
        cfg = next;

        if is_spy_winning(&dist, params.d, cfg.spy, cfg.guards()) {
            trace.outcome = Outcome::SpyEscaped;
            return Ok(trace);
        }
        if !seen.insert(cfg.clone()) {
            trace.outcome = Outcome::GuardsByRepetition;
            return Ok(trace);
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph};
    use crate::solver::{solve_attractor, MoveOrder, Winner};

    #[test]
    fn tuple_move_legality() {
        let p3 = path_graph(3).unwrap();
        assert!(tuple_move_legal(&p3, &[0, 2], &[1, 1]));
        assert!(tuple_move_legal(&p3, &[0, 2], &[0, 2]));
        assert!(tuple_move_legal(&p3, &[1, 1], &[0, 2]));
        assert!(!tuple_move_legal(&p3, &[0, 0], &[2, 2]));
        assert!(!tuple_move_legal(&p3, &[0, 0], &[0, 2]));
        assert!(!tuple_move_legal(&p3, &[0], &[0, 1]));
        // The pairing matters: (0,1) -> (0,1) by everyone staying, and
        // (0,1) -> (1,2) by both advancing.
        assert!(tuple_move_legal(&p3, &[0, 1], &[1, 2]));
        assert!(!tuple_move_legal(&p3, &[0, 1], &[2, 2]));
    }

    #[test]
    fn guard_table_contains_on_p5() {
        let p5 = path_graph(5).unwrap();
        let params = GameParams::new(2, 1, 1).unwrap();
        let res = solve_attractor(&p5, &params).unwrap();
        assert_eq!(res.winner(MoveOrder::SpyFirst), Winner::Guards);
        for seed in 0..10 {
            let mut spy = RandomSpyPolicy::new(params.s, seed);
            let mut guards = extract_guard_strategy(&res);
            let trace = simulate(&p5, &params, &mut spy, &mut guards, 200).unwrap();
            assert_ne!(trace.outcome, Outcome::SpyEscaped, "seed {seed}: {trace:?}");
            // Containment holds after every guards' half-move.
            let dist = p5.all_pairs_distances();
            for cfg in trace.configurations() {
                if cfg.turn == Turn::SpyToMove {
                    assert!(!is_spy_winning(&dist, params.d, cfg.spy, cfg.guards()));
                }
            }
        }
    }

    #[test]
    fn spy_table_escapes_within_rank_on_c4() {
        let c4 = cycle_graph(4).unwrap();
        let params = GameParams::new(2, 0, 1).unwrap();
        let res = solve_attractor(&c4, &params).unwrap();
        assert_eq!(res.winner(MoveOrder::SpyFirst), Winner::Spy);
        let mut spy = extract_spy_strategy(&res);
        let mut guards = GreedyGuardPolicy::new(&res);
        let trace = simulate(&c4, &params, &mut spy, &mut guards, 200).unwrap();
        assert_eq!(trace.outcome, Outcome::SpyEscaped);
        let start_rank = res.rank_of(&trace.start).unwrap().expect("start is spy-winning");
        assert!(trace.moves.len() as u32 <= start_rank, "{} > {start_rank}", trace.moves.len());
        // Against random guards the escape can only be faster or equal.
        for seed in 0..10 {
            let mut spy = extract_spy_strategy(&res);
            let mut guards = RandomGuardPolicy::new(params.k, seed);
            let trace = simulate(&c4, &params, &mut spy, &mut guards, 200).unwrap();
            assert_eq!(trace.outcome, Outcome::SpyEscaped);
        }
    }

    #[test]
    fn repetition_ends_the_stalemate() {
        let k1 = complete_graph(1).unwrap();
        let params = GameParams::new(2, 0, 1).unwrap();
        let mut spy = ScriptedSpyPolicy { start: 0, moves: Default::default() };
        let mut guards = ScriptedGuardPolicy { placement: vec![0], moves: Default::default() };
        let trace = simulate(&k1, &params, &mut spy, &mut guards, 50).unwrap();
        assert_eq!(trace.outcome, Outcome::GuardsByRepetition);
        assert_eq!(trace.moves.len(), 2); // one stay-put round, then repetition
    }

    #[test]
    fn illegal_moves_are_rejected_with_context() {
        let p5 = path_graph(5).unwrap();
        let params = GameParams::new(2, 1, 1).unwrap();
        // Spy teleport: distance 4 > s = 2.
        let mut spy = ScriptedSpyPolicy { start: 0, moves: [4].into() };
        let mut guards = ScriptedGuardPolicy { placement: vec![1], moves: Default::default() };
        match simulate(&p5, &params, &mut spy, &mut guards, 10) {
            Err(Error::IllegalMove(msg)) => assert!(msg.contains("cannot reach 4"), "{msg}"),
            other => panic!("expected illegal spy move, got {other:?}"),
        }
        // Guard sprint: 1 -> 3 is two edges.
        let mut spy = ScriptedSpyPolicy { start: 0, moves: [2].into() };
        let mut guards = ScriptedGuardPolicy { placement: vec![1], moves: [vec![3]].into() };
        match simulate(&p5, &params, &mut spy, &mut guards, 10) {
            Err(Error::IllegalMove(msg)) => assert!(msg.contains("one half-move"), "{msg}"),
            other => panic!("expected illegal guard move, got {other:?}"),
        }
        // Wrong guard count at placement.
        let mut spy = ScriptedSpyPolicy { start: 0, moves: Default::default() };
        let mut guards = ScriptedGuardPolicy { placement: vec![1, 2], moves: Default::default() };
        assert!(matches!(simulate(&p5, &params, &mut spy, &mut guards, 10), Err(Error::IllegalMove(_))));
    }

    #[test]
    fn immediate_escape_at_placement() {
        // Guards are forced to place somewhere; a scripted placement far from
        // the spy ends the game before any move.
        let p5 = path_graph(5).unwrap();
        let params = GameParams::new(2, 1, 1).unwrap();
        let mut spy = ScriptedSpyPolicy { start: 0, moves: Default::default() };
        let mut guards = ScriptedGuardPolicy { placement: vec![4], moves: Default::default() };
        let trace = simulate(&p5, &params, &mut spy, &mut guards, 10).unwrap();
        assert_eq!(trace.outcome, Outcome::SpyEscaped);
        assert!(trace.moves.is_empty());
    }

    #[test]
    fn table_policies_refuse_losing_queries() {
        let p5 = path_graph(5).unwrap();
        let params = GameParams::new(2, 1, 1).unwrap();
        let res = solve_attractor(&p5, &params).unwrap();
        // Guards win overall: the spy table has no placement...
        let mut spy = extract_spy_strategy(&res);
        assert!(spy.place(&p5).is_err());
        // ... and refuses configurations she loses.
        let contained = Configuration::new(Turn::SpyToMove, 0, vec![1]);
        assert!(spy.step(&p5, &contained).is_err());
        // The guard table refuses configurations the guards lose.
        let mut guards = extract_guard_strategy(&res);
        let lost = Configuration::new(Turn::GuardsToMove, 4, vec![0]);
        assert!(res.is_marked(&lost).unwrap());
        assert!(guards.step(&p5, &lost).is_err());
        // And answers on configurations they win.
        let held = Configuration::new(Turn::GuardsToMove, 0, vec![1]);
        assert!(!res.is_marked(&held).unwrap());
        let resp = guards.step(&p5, &held).unwrap();
        assert!(tuple_move_legal(&p5, &[1], &resp));
    }

    #[test]
    fn guard_placement_is_lex_least_containing() {
        let p5 = path_graph(5).unwrap();
        let params = GameParams::new(2, 1, 1).unwrap();
        let res = solve_attractor(&p5, &params).unwrap();
        let mut guards = extract_guard_strategy(&res);
        // Spy at 0: a guard at 0 starts a step behind and loses the chase,
        // so the least containing placement is 1.
        assert_eq!(guards.place(&p5, 0).unwrap(), vec![1]);
        // Spy in the middle: only the co-located guard keeps both exits shut.
        assert_eq!(guards.place(&p5, 2).unwrap(), vec![2]);
    }

    #[test]
    fn traces_serialize_round_trip() {
        let c4 = cycle_graph(4).unwrap();
        let params = GameParams::new(2, 0, 2).unwrap();
        let res = solve_attractor(&c4, &params).unwrap();
        let mut spy = RandomSpyPolicy::new(params.s, 7);
        let mut guards = extract_guard_strategy(&res);
        let trace = simulate(&c4, &params, &mut spy, &mut guards, 50).unwrap();
        let json = serde_json::to_string(&trace).unwrap();
        let back: Trace = serde_json::from_str(&json).unwrap();
        assert_eq!(trace, back);
    }
}
