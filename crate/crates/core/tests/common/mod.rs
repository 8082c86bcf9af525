//! A deliberately simple reference solver used to cross-check the main
//! attractor on small instances. It shares no code with the production
//! path: plain hash-map states, its own BFS distances, and chaotic
//! iteration to the fixpoint instead of ranked BFS.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use spygame::graph::Graph;

/// (spy_to_move, spy, sorted guard multiset)
pub type State = (bool, usize, Vec<usize>);

fn bfs_distances(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut dist = vec![vec![usize::MAX; n]; n];
    for start in 0..n {
        let mut queue = std::collections::VecDeque::from([start]);
        dist[start][start] = 0;
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[start][w] == usize::MAX {
                    dist[start][w] = dist[start][v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

fn sorted_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..n {
            cur.push(v);
            rec(n, k, v, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// All joint guard moves: each guard steps within its closed neighborhood;
/// results are sorted multisets, deduplicated.
fn joint_guard_moves(g: &Graph, guards: &[usize]) -> Vec<Vec<usize>> {
    let mut results = HashSet::new();
    let mut choice = vec![0usize; guards.len()];
    let options: Vec<Vec<usize>> = guards
        .iter()
        .map(|&v| {
            let mut o = vec![v];
            o.extend(g.neighbors(v).iter().copied());
            o
        })
        .collect();
    loop {
        let mut tuple: Vec<usize> =
            choice.iter().enumerate().map(|(i, &c)| options[i][c]).collect();
        tuple.sort_unstable();
        results.insert(tuple);
        let mut i = 0;
        loop {
            if i == choice.len() {
                let mut out: Vec<Vec<usize>> = results.into_iter().collect();
                out.sort();
                return out;
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// The full marked set (states from which the spy forces an escape) for the
/// (s, d) game with k guards, by chaotic iteration.
pub struct NaiveSolution {
    pub n: usize,
    pub marked: HashSet<State>,
    dist: Vec<Vec<usize>>,
    tuples: Vec<Vec<usize>>,
}

pub fn naive_solve(g: &Graph, s: usize, d: usize, k: usize) -> NaiveSolution {
    let n = g.n();
    let dist = bfs_distances(g);
    let tuples = sorted_tuples(n, k);
    assert!(n * tuples.len() <= 200_000, "naive oracle is for small instances");

    let mut marked: HashSet<State> = HashSet::new();
    // A spy checked at distance > d from every guard has already won.
    for spy in 0..n {
        for t in &tuples {
            if t.iter().all(|&gv| dist[spy][gv] > d) {
                marked.insert((true, spy, t.clone()));
            }
        }
    }

    let spy_balls: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&u| dist[v][u] <= s).collect())
        .collect();

    let mut changed = true;
    while changed {
        changed = false;
        for spy in 0..n {
            for t in &tuples {
                if !marked.contains(&(true, spy, t.clone())) {
                    // Spy to move: marked as soon as one successor is marked.
                    if spy_balls[spy].iter().any(|&u| marked.contains(&(false, u, t.clone()))) {
                        marked.insert((true, spy, t.clone()));
                        changed = true;
                    }
                }
                if !marked.contains(&(false, spy, t.clone())) {
                    // Guards to move: marked once every response is marked.
                    if joint_guard_moves(g, t).iter().all(|t2| marked.contains(&(true, spy, t2.clone()))) {
                        marked.insert((false, spy, t.clone()));
                        changed = true;
                    }
                }
            }
        }
    }
    NaiveSolution { n, marked, dist, tuples }
}

impl NaiveSolution {
    /// Does the spy escape from this spy-to-move position?
    pub fn spy_wins_from(&self, spy: usize, guards: &[usize]) -> bool {
        let mut t = guards.to_vec();
        t.sort_unstable();
        self.marked.contains(&(true, spy, t))
    }

    /// Spy placed first, guards respond: spy wins iff some placement
    /// defeats every guard response.
    pub fn spy_wins_placed_first(&self) -> bool {
        (0..self.n).any(|spy| self.tuples.iter().all(|t| self.marked.contains(&(true, spy, t.clone()))))
    }
}

/// Minimum number of guards that win the spy-placed-first game, trying
/// k = 1..=max_k.
pub fn naive_guard_number(g: &Graph, s: usize, d: usize, max_k: usize) -> Option<usize> {
    (1..=max_k).find(|&k| !naive_solve(g, s, d, k).spy_wins_placed_first())
}
