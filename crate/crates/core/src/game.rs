//! Rules of the (s,d)-spy game: parameters, configurations, and legal moves.
//!
//! One round has two halves. First the spy walks along at most `s` edges;
//! then every guard moves along at most one edge (guards may stack on a
//! vertex, and may stand on the spy's vertex). The spy wins if, at her
//! initial placement or after any guards' half-move, her distance to every
//! guard exceeds `d`; the guards win by containing her forever.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Game parameters: spy speed `s >= 1`, surveillance distance `d >= 0`,
/// and guard count `k >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GameParams {
    pub s: usize,
    pub d: usize,
    pub k: usize,
}

impl GameParams {
    pub fn new(s: usize, d: usize, k: usize) -> Result<GameParams> {
        if s < 1 {
            return Err(Error::InvalidParam("spy speed s must be at least 1".into()));
        }
        if k < 1 {
            return Err(Error::InvalidParam("guard count k must be at least 1".into()));
        }
        Ok(GameParams { s, d, k })
    }
}

/// Whose half-move comes next.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Turn {
    SpyToMove,
    GuardsToMove,
}

/// A game position: whose turn it is, the spy's vertex, and the guards'
/// vertices as a sorted multiset (guards are interchangeable, so two
/// placements that differ only by a permutation are the same configuration).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(from = "RawConfiguration")]
pub struct Configuration {
    pub turn: Turn,
    pub spy: usize,
    guards: Vec<usize>,
}

/// Mirror of [`Configuration`] used to re-canonicalize on deserialization.
#[derive(Deserialize)]
struct RawConfiguration {
    turn: Turn,
    spy: usize,
    guards: Vec<usize>,
}

impl From<RawConfiguration> for Configuration {
    fn from(raw: RawConfiguration) -> Configuration {
        Configuration::new(raw.turn, raw.spy, raw.guards)
    }
}

impl Configuration {
    /// Builds a configuration, sorting the guard tuple into canonical order.
    pub fn new(turn: Turn, spy: usize, mut guards: Vec<usize>) -> Configuration {
        guards.sort_unstable();
        Configuration { turn, spy, guards }
    }

    /// The guard tuple, always sorted ascending.
    pub fn guards(&self) -> &[usize] {
        &self.guards
    }

    /// Checks that every vertex is in range and the guard count matches.
    pub fn validate(&self, g: &Graph, params: &GameParams) -> Result<()> {
        if self.spy >= g.n() {
            return Err(Error::InvalidParam(format!("spy vertex {} out of range", self.spy)));
        }
        if self.guards.len() != params.k {
            return Err(Error::InvalidParam(format!(
                "configuration has {} guards, parameters say k = {}",
                self.guards.len(),
                params.k
            )));
        }
        if let Some(&v) = self.guards.iter().find(|&&v| v >= g.n()) {
            return Err(Error::InvalidParam(format!("guard vertex {v} out of range")));
        }
        Ok(())
    }
}

impl std::fmt::Display for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let turn = match self.turn {
            Turn::SpyToMove => "spy to move",
            Turn::GuardsToMove => "guards to move",
        };
        write!(f, "spy @ {}, guards @ {:?} ({turn})", self.spy, self.guards)
    }
}

/// Every vertex the spy may move to from `v`: the ball of radius `s`
/// around `v` (staying put included), ascending. Computed by a depth-capped
/// BFS, so it is correct on disconnected graphs too.
pub fn spy_moves(g: &Graph, s: usize, v: usize) -> Vec<usize> {
    let mut depth = vec![usize::MAX; g.n()];
    depth[v] = 0;
    let mut queue = vec![v];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        if depth[u] == s {
            continue;
        }
        for &w in g.neighbors(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                queue.push(w);
            }
        }
    }
    queue.sort_unstable();
    queue
}

/// Every canonical guard tuple reachable in one guards' half-move from the
/// sorted tuple `guards` (each guard stays or crosses one edge), in ascending
/// lexicographic order.
pub fn guard_moves(g: &Graph, guards: &[usize]) -> Vec<Vec<usize>> {
    let mut out = std::collections::BTreeSet::new();
    let mut current = vec![0usize; guards.len()];
    fn rec(
        g: &Graph,
        guards: &[usize],
        i: usize,
        current: &mut Vec<usize>,
        out: &mut std::collections::BTreeSet<Vec<usize>>,
    ) {
        if i == guards.len() {
            let mut t = current.clone();
            t.sort_unstable();
            out.insert(t);
            return;
        }
        current[i] = guards[i];
        rec(g, guards, i + 1, current, out);
        for &w in g.neighbors(guards[i]) {
            current[i] = w;
            rec(g, guards, i + 1, current, out);
        }
    }
    rec(g, guards, 0, &mut current, &mut out);
    out.into_iter().collect()
}

/// True when the spy is farther than `d` from every guard — the spy's
/// winning test, applied at her initial placement and after each guards'
/// half-move.
pub fn is_spy_winning(dist: &DistanceMatrix, d: usize, spy: usize, guards: &[usize]) -> bool {
    guards.iter().all(|&gv| dist.get(spy, gv) as usize > d)
}
