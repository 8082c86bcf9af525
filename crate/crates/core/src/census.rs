//! Exhaustive small-graph censuses (one representative per isomorphism
//! class) and seeded random cographs, for oracle-equivalence sweeps.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{complete_graph, Graph};

/// Largest vertex count the census enumerates; 7 keeps the canonical-form
/// search (n! permutations per candidate) well under a second.
pub const MAX_CENSUS_VERTICES: usize = 7;

/// Index of the unordered pair {i, j}, i < j, in colex order.
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// The minimum edge bitmask over all relabelings.
fn canonical_mask(n: usize, mask: u32, perms: &[Vec<usize>]) -> u32 {
    let mut best = u32::MAX;
    for perm in perms {
        let mut relabeled = 0u32;
        for j in 1..n {
            for i in 0..j {
                if mask >> pair_index(i, j) & 1 == 1 {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    relabeled |= 1 << pair_index(a, b);
                }
            }
        }
        best = best.min(relabeled);
        if best == 0 {
            break;
        }
    }
    best
}

fn mask_to_graph(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_index(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("census masks are simple graphs")
}

fn canonical_masks(n: usize) -> Result<Vec<u32>> {
    if n == 0 || n > MAX_CENSUS_VERTICES {
        return Err(Error::InvalidParam(format!(
            "the census covers 1..={MAX_CENSUS_VERTICES} vertices, got {n}"
        )));
    }
    // Grow canonical representatives one vertex at a time: every graph on
    // k+1 vertices is some graph on k vertices plus a vertex with some
    // neighborhood, so augmenting every representative with every
    // neighborhood and re-canonicalizing reaches every class.
    let mut level: Vec<u32> = vec![0]; // the one graph on a single vertex
    for k in 2..=n {
        let perms = permutations(k);
        let mut next = std::collections::BTreeSet::new();
        for &parent in &level {
            for nbhd in 0u32..(1 << (k - 1)) {
                let mut mask = parent;
                for i in 0..k - 1 {
                    if nbhd >> i & 1 == 1 {
                        mask |= 1 << pair_index(i, k - 1);
                    }
                }
                next.insert(canonical_mask(k, mask, &perms));
            }
        }
        level = next.into_iter().collect();
    }
    Ok(level)
}

/// Every graph on exactly n vertices, one per isomorphism class, in a
/// deterministic order.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(canonical_masks(n)?.into_iter().map(|m| mask_to_graph(n, m)).collect())
}

/// Every connected graph on exactly n vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?.into_iter().filter(|g| g.is_connected()).collect())
}

/// Every connected graph with 1..=n vertices, one per isomorphism class.
pub fn connected_graphs_up_to(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(connected_graphs(k)?);
    }
    Ok(out)
}

/// A random cograph on exactly n vertices, built as a random cotree: each
/// internal node unions or joins a random split of its leaves.
pub fn random_cograph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1, "a cograph needs at least one vertex");
    if n == 1 {
        return complete_graph(1).expect("K1 exists");
    }
    let children = rng.gen_range(2..=n.min(3));
    let mut remaining = n;
    let mut parts = Vec::with_capacity(children);
    for i in 0..children - 1 {
        let slack = remaining - (children - 1 - i);
        let part = rng.gen_range(1..=slack);
        parts.push(part);
        remaining -= part;
    }
    parts.push(remaining);
    let join = rng.gen_bool(0.5);
    let mut acc = random_cograph(parts[0], rng);
    for &part in &parts[1..] {
        let next = random_cograph(part, rng);
        acc = if join { acc.join(&next) } else { acc.disjoint_union(&next) }
            .expect("cotree combination stays within bounds");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn census_counts_match_the_literature() {
        // Unlabeled graphs: 1, 2, 4, 11, 34, 156; connected: 1, 1, 2, 6, 21, 112.
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(all, [1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(conn, [1, 1, 2, 6, 21, 112]);
        assert!(all_graphs(8).is_err());
        assert!(all_graphs(0).is_err());
    }

    #[test]
    fn seven_vertex_census_is_complete() {
        assert_eq!(all_graphs(7).unwrap().len(), 1044);
        let conn = connected_graphs_up_to(7).unwrap();
        assert_eq!(conn.len(), 996);
        assert!(conn.iter().all(|g| g.is_connected()));
        assert_eq!(conn.iter().filter(|g| g.n() == 7).count(), 853);
    }

    #[test]
    fn every_labeled_graph_maps_onto_exactly_one_representative() {
        use std::collections::BTreeSet;
        let reps: BTreeSet<u32> = canonical_masks(4).unwrap().into_iter().collect();
        let perms = permutations(4);
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << 6) {
            let canon = canonical_mask(4, mask, &perms);
            assert!(reps.contains(&canon), "mask {mask:b} canonicalizes outside the census");
            seen.insert(canon);
        }
        assert_eq!(seen, reps);
    }

    #[test]
    fn random_cographs_have_no_induced_p4_and_are_reproducible() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut connected = 0;
        for trial in 0..100 {
            let n = 1 + (trial % 9);
            let g = random_cograph(n, &mut rng);
            assert_eq!(g.n(), n);
            assert!(crate::primeval::induced_p4s(&g).is_empty(), "trial {trial} built a P4");
            if g.is_connected() {
                connected += 1;
            }
        }
        // Both cotree root operations actually occur.
        assert!(connected > 10 && connected < 95, "got {connected} connected cographs");

        let g1 = random_cograph(9, &mut rand_chacha::ChaCha8Rng::seed_from_u64(42));
        let g2 = random_cograph(9, &mut rand_chacha::ChaCha8Rng::seed_from_u64(42));
        assert_eq!(g1.edges(), g2.edges());
    }
}
