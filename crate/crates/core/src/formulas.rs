//! Closed-form guard numbers for structured graphs, and the product
//! construction that combines factor strategies into a strategy on the
//! strong product.
//!
//! Each formula is cross-checkable against the exact solver; the test suite
//! and the acceptance suite both do so on small sweeps.

use crate::error::{Error, Result};
use crate::game::{Configuration, Turn};
use crate::graph::{Graph, SpiderKind};
use crate::strategy::GuardPolicy;

/// The shape data of a spider that the guard-number formula depends on: its
/// kind, the clique size `p`, and whether the head `R` is empty. The
/// internal structure of the head never matters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpiderShape {
    pub kind: SpiderKind,
    pub clique_size: usize,
    pub head_empty: bool,
}

impl SpiderShape {
    pub fn new(kind: SpiderKind, clique_size: usize, head_empty: bool) -> Result<Self> {
        if clique_size < 2 {
            return Err(Error::InvalidParam(format!(
                "a spider's clique has at least 2 vertices, got {clique_size}"
            )));
        }
        Ok(SpiderShape { kind, clique_size, head_empty })
    }
}

/// Exact guard number of the path `P_n` for spy speed `s ≥ 2`:
/// `⌈ n / (2d + 2 + ⌊2d/(s−1)⌋) ⌉`.
pub fn gn_path(n: usize, s: usize, d: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidParam("path formula needs at least one vertex".into()));
    }
    if s < 2 {
        return Err(Error::InvalidParam(format!(
            "path formula is stated for spy speed at least 2, got {s}"
        )));
    }
    let denom = 2 * d + 2 + (2 * d) / (s - 1);
    Ok(n.div_ceil(denom))
}

/// Guard number of a disjoint union from its parts: the maximum, since play
/// never crosses between components.
pub fn gn_union(gn1: usize, gn2: usize) -> usize {
    gn1.max(gn2)
}

/// Guard number of the join of two graphs: one guard suffices when `d ≥ 1`
/// (everything is within distance 2 of everything) or when the join is
/// complete; otherwise exactly two.
pub fn gn_join(g1: &Graph, g2: &Graph, d: usize) -> usize {
    if d >= 1 || (g1.is_complete() && g2.is_complete()) {
        1
    } else {
        2
    }
}

/// Guard number of a spider from its shape. For `d ≥ 1` one guard on the
/// clique covers everything; at `d = 0` a thin spider needs a guard per leg
/// (plus one for the head if present) while a thick spider needs two (plus
/// one for the head).
pub fn gn_spider(shape: &SpiderShape, d: usize) -> usize {
    if d >= 1 {
        return 1;
    }
    let base = match shape.kind {
        SpiderKind::Thin => shape.clique_size,
        SpiderKind::Thick => 2,
    };
    base + usize::from(!shape.head_empty)
}

/// Guard number of the lexicographic product `G1 · G2` at distance `d ≥ 2`,
/// from the factor guard numbers: `gn1` when `G1` has no isolated vertex,
/// otherwise `max(gn1, gn2)` (isolated vertices of `G1` carry untouched
/// copies of `G2`).
pub fn gn_lex(gn1: usize, gn2: usize, g1_has_isolated: bool, d: usize) -> Result<usize> {
    if d < 2 {
        return Err(Error::InvalidParam(format!(
            "the lexicographic formula is stated for d at least 2, got {d}"
        )));
    }
    Ok(if g1_has_isolated { gn1.max(gn2) } else { gn1 })
}

/// Upper bound `gn1 · gn2` on the guard number of the strong product; exact
/// whenever either factor's guard number is 1.
pub fn strong_upper(gn1: usize, gn2: usize) -> usize {
    gn1 * gn2
}

/// A guard policy on `G1 ⊠ G2` assembled from one policy per factor: the
/// product runs one guard for every pair of factor guards, and moves each
/// pair componentwise against the projections of the spy. If each factor
/// policy contains its projected spy within `d`, the pair of nearest factor
/// guards is within `d` of the product spy because strong-product distance
/// is the maximum of factor distances.
pub struct CombinedGuardPolicy<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    p1: Box<dyn GuardPolicy + 'a>,
    p2: Box<dyn GuardPolicy + 'a>,
    t1: Vec<usize>,
    t2: Vec<usize>,
}

/// Combines winning guard policies on the factors into a guard policy on
/// the strong product with `k1 · k2` guards.
pub fn combine_strong_strategies<'a>(
    g1: &'a Graph,
    g2: &'a Graph,
    p1: Box<dyn GuardPolicy + 'a>,
    p2: Box<dyn GuardPolicy + 'a>,
) -> CombinedGuardPolicy<'a> {
    CombinedGuardPolicy { g1, g2, p1, p2, t1: Vec::new(), t2: Vec::new() }
}

impl CombinedGuardPolicy<'_> {
    fn project(&self, spy: usize) -> (usize, usize) {
        (spy / self.g2.n(), spy % self.g2.n())
    }

    /// Row-major grid of the current factor tuples; sorted because both
    /// factors are.
    fn grid(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.t1.len() * self.t2.len());
        for &a in &self.t1 {
            for &b in &self.t2 {
                out.push(a * self.g2.n() + b);
            }
        }
        out
    }
}

impl GuardPolicy for CombinedGuardPolicy<'_> {
    fn place(&mut self, _g: &Graph, spy: usize) -> Result<Vec<usize>> {
        let (u1, u2) = self.project(spy);
        self.t1 = self.p1.place(self.g1, u1)?;
        self.t2 = self.p2.place(self.g2, u2)?;
        self.t1.sort_unstable();
        self.t2.sort_unstable();
        Ok(self.grid())
    }

    fn step(&mut self, _g: &Graph, cfg: &Configuration) -> Result<Vec<usize>> {
        if cfg.guards() != self.grid() {
            return Err(Error::PolicyQuery(
                "combined policy queried at a configuration that does not match its internal factor state".into(),
            ));
        }
        let (u1, u2) = self.project(cfg.spy);
        let q1 = self.p1.step(self.g1, &Configuration::new(Turn::GuardsToMove, u1, self.t1.clone()))?;
        let q2 = self.p2.step(self.g2, &Configuration::new(Turn::GuardsToMove, u2, self.t2.clone()))?;
        self.t1 = q1;
        self.t2 = q2;
        self.t1.sort_unstable();
        self.t2.sort_unstable();
        Ok(self.grid())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameParams;
    use crate::graph::{complete_graph, path_graph, spider_graph, strong_product};
    use crate::solver::{guard_number, solve_attractor, MoveOrder, Winner};
    use crate::strategy::{
        extract_guard_strategy, simulate, Outcome, RandomSpyPolicy, ScriptedSpyPolicy, TraceMove,
    };

    #[test]
    fn path_formula_values() {
        assert_eq!(gn_path(5, 2, 1).unwrap(), 1);
        assert_eq!(gn_path(5, 4, 1).unwrap(), 2);
        assert_eq!(gn_path(10, 5, 1).unwrap(), 3);
        assert_eq!(gn_path(1, 2, 0).unwrap(), 1);
        assert!(matches!(gn_path(5, 1, 1), Err(Error::InvalidParam(_))));
        assert!(matches!(gn_path(0, 2, 1), Err(Error::InvalidParam(_))));
    }

    #[test]
    fn path_formula_matches_solver_small() {
        // The acceptance suite sweeps n <= 8; keep a fast slice here.
        for n in 1..=6 {
            let g = path_graph(n).unwrap();
            for s in [2, 3] {
                for d in [0, 1] {
                    let expect = gn_path(n, s, d).unwrap();
                    let got = guard_number(&g, s, d, n).unwrap();
                    assert_eq!(got, Some(expect), "P{n} at ({s},{d})");
                }
            }
        }
    }

    #[test]
    fn union_is_max_and_solver_agrees() {
        assert_eq!(gn_union(1, 1), 1);
        assert_eq!(gn_union(2, 3), 3);
        let p5 = path_graph(5).unwrap();
        let p7 = path_graph(7).unwrap();
        let u = p5.disjoint_union(&p7).unwrap();
        let expect = gn_union(gn_path(5, 4, 1).unwrap(), gn_path(7, 4, 1).unwrap());
        assert_eq!(expect, 2);
        assert_eq!(guard_number(&u, 4, 1, 4).unwrap(), Some(2));
    }

    #[test]
    fn join_formula_and_solver() {
        let k3 = complete_graph(3).unwrap();
        let k2 = complete_graph(2).unwrap();
        let p3 = path_graph(3).unwrap();
        assert_eq!(gn_join(&k3, &k2, 0), 1);
        assert_eq!(gn_join(&p3, &p3, 0), 2);
        assert_eq!(gn_join(&p3, &p3, 1), 1);
        // join(K3, K2) = K5: one guard pins the spy at d = 0.
        let j = k3.join(&k2).unwrap();
        assert!(j.is_complete());
        assert_eq!(guard_number(&j, 2, 0, 3).unwrap(), Some(1));
        let jp = p3.join(&p3).unwrap();
        assert_eq!(guard_number(&jp, 2, 0, 3).unwrap(), Some(2));
        assert_eq!(guard_number(&jp, 2, 1, 3).unwrap(), Some(1));
    }

    #[test]
    fn spider_formula_and_solver() {
        let thin3 = SpiderShape::new(SpiderKind::Thin, 3, true).unwrap();
        assert_eq!(gn_spider(&thin3, 0), 3);
        assert_eq!(gn_spider(&thin3, 2), 1);
        let thick3_head = SpiderShape::new(SpiderKind::Thick, 3, false).unwrap();
        assert_eq!(gn_spider(&thick3_head, 0), 3);
        assert!(SpiderShape::new(SpiderKind::Thin, 1, true).is_err());

        // Thin spider with p = 2 and no head is P4.
        let g = spider_graph(None, 2, SpiderKind::Thin).unwrap();
        let shape = SpiderShape::new(SpiderKind::Thin, 2, true).unwrap();
        assert_eq!(gn_spider(&shape, 0), 2);
        assert_eq!(guard_number(&g, 2, 0, 4).unwrap(), Some(2));

        // Thick spider with p = 3 and a K1 head.
        let head = complete_graph(1).unwrap();
        let g = spider_graph(Some(&head), 3, SpiderKind::Thick).unwrap();
        let shape = SpiderShape::new(SpiderKind::Thick, 3, false).unwrap();
        assert_eq!(gn_spider(&shape, 0), 3);
        assert_eq!(guard_number(&g, 2, 0, 4).unwrap(), Some(3));
        assert_eq!(gn_spider(&shape, 1), 1);
        assert_eq!(guard_number(&g, 2, 1, 4).unwrap(), Some(1));
    }

    #[test]
    fn lex_formula_values() {
        assert_eq!(gn_lex(2, 5, false, 2).unwrap(), 2);
        assert_eq!(gn_lex(1, 3, true, 2).unwrap(), 3);
        assert_eq!(gn_lex(1, 1, false, 2).unwrap(), 1);
        assert!(matches!(gn_lex(1, 1, false, 1), Err(Error::InvalidParam(_))));
    }

    #[test]
    fn strong_upper_values() {
        assert_eq!(strong_upper(2, 2), 4);
        assert_eq!(strong_upper(1, 7), 7);
        assert_eq!(strong_upper(3, 1), 3);
    }

    #[test]
    fn combined_policy_contains_on_the_king_grid() {
        // One guard per P5 factor at (2,1) combines to one guard on P5 x P5
        // under the strong product; containment holds turn after turn.
        let p5 = path_graph(5).unwrap();
        let params = GameParams::new(2, 1, 1).unwrap();
        let res = solve_attractor(&p5, &params).unwrap();
        assert_eq!(res.winner(MoveOrder::SpyFirst), Winner::Guards);
        let prod = strong_product(&p5, &p5).unwrap();
        let prod_params = GameParams::new(2, 1, 1).unwrap();
        let d1 = p5.all_pairs_distances();
        let dp = prod.all_pairs_distances();
        for seed in 0..5 {
            let mut spy = RandomSpyPolicy::new(2, seed);
            let mut guards = combine_strong_strategies(
                &p5,
                &p5,
                Box::new(extract_guard_strategy(&res)),
                Box::new(extract_guard_strategy(&res)),
            );
            let trace = simulate(&prod, &prod_params, &mut spy, &mut guards, 200).unwrap();
            assert_ne!(trace.outcome, Outcome::SpyEscaped, "seed {seed}");
            for cfg in trace.configurations() {
                if cfg.turn != Turn::SpyToMove {
                    continue;
                }
                // Factor containment, and the product law: the nearest
                // product guard is exactly max of the nearest projections.
                let (u1, u2) = (cfg.spy / 5, cfg.spy % 5);
                let near1 = cfg.guards().iter().map(|&g| d1.get(u1, g / 5)).min().unwrap();
                let near2 = cfg.guards().iter().map(|&g| d1.get(u2, g % 5)).min().unwrap();
                let near_prod = cfg.guards().iter().map(|&g| dp.get(cfg.spy, g)).min().unwrap();
                assert!(near1 <= 1 && near2 <= 1);
                assert!(near_prod <= 1);
                assert_eq!(near_prod, near1.max(near2));
            }
        }
    }

    #[test]
    fn combined_policy_with_k1_factor_reduces_to_the_other() {
        let p5 = path_graph(5).unwrap();
        let k1 = complete_graph(1).unwrap();
        let params = GameParams::new(2, 1, 1).unwrap();
        let res5 = solve_attractor(&p5, &params).unwrap();
        let res1 = solve_attractor(&k1, &params).unwrap();
        // P5 x K1 under the strong product is P5 with the same vertex ids.
        let prod = strong_product(&p5, &k1).unwrap();
        assert_eq!(prod.edges(), p5.edges());

        let script = [2usize, 4, 2, 0, 0, 2];
        let mut spy = ScriptedSpyPolicy { start: 0, moves: script.into() };
        let mut guards = combine_strong_strategies(
            &p5,
            &k1,
            Box::new(extract_guard_strategy(&res5)),
            Box::new(extract_guard_strategy(&res1)),
        );
        let combined = simulate(&prod, &params, &mut spy, &mut guards, 10).unwrap();

        let mut spy = ScriptedSpyPolicy { start: 0, moves: script.into() };
        let mut guards = extract_guard_strategy(&res5);
        let direct = simulate(&p5, &params, &mut spy, &mut guards, 10).unwrap();

        let guard_moves = |t: &crate::strategy::Trace| {
            t.moves
                .iter()
                .filter_map(|m| match m {
                    TraceMove::Guards { to } => Some(to.clone()),
                    _ => None,
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(combined.start, direct.start);
        assert_eq!(guard_moves(&combined), guard_moves(&direct));
    }

    #[test]
    fn combined_policy_four_guards_on_p7_squared() {
        // gn at (4,1) on P7 is 2; four combined guards contain on P7 x P7.
        let p7 = path_graph(7).unwrap();
        assert_eq!(gn_path(7, 4, 1).unwrap(), 2);
        let params = GameParams::new(4, 1, 2).unwrap();
        let res = solve_attractor(&p7, &params).unwrap();
        assert_eq!(res.winner(MoveOrder::SpyFirst), Winner::Guards);
        let prod = strong_product(&p7, &p7).unwrap();
        let prod_params = GameParams::new(4, 1, 4).unwrap();
        for seed in 0..3 {
            let mut spy = RandomSpyPolicy::new(4, seed);
            let mut guards = combine_strong_strategies(
                &p7,
                &p7,
                Box::new(extract_guard_strategy(&res)),
                Box::new(extract_guard_strategy(&res)),
            );
            let trace = simulate(&prod, &prod_params, &mut spy, &mut guards, 200).unwrap();
            assert_ne!(trace.outcome, Outcome::SpyEscaped, "seed {seed}");
        }
    }
}
