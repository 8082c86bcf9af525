//! Finite simple graphs: constructors, products, and shortest-path tables.
//!
//! A [`Graph`] is immutable once built: every constructor validates its input
//! and the adjacency structure never changes afterwards. Vertices are the
//! integers `0..n`. An optional role label can be attached to each vertex;
//! labels are cosmetic (they never influence adjacency or the game) but the
//! reduction and spider constructors use them to document which gadget a
//! vertex belongs to.

use crate::error::{Error, Result};

/// Hard cap on vertex counts. The adjacency bit-matrix is `n*n` bits, so this
/// keeps a single graph under ~32 MB while leaving plenty of room for every
/// instance the solver's state budget could ever admit.
pub const MAX_VERTICES: usize = 16_384;

/// Distance value standing for "no path".
pub const INFINITY: u16 = u16::MAX;

/// An undirected simple graph on vertices `0..n`, `n >= 1`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    /// Sorted neighbor lists.
    adj: Vec<Vec<usize>>,
    /// Row-major adjacency bit-matrix, `n` rows of `words_per_row` words.
    bits: Vec<u64>,
    words_per_row: usize,
    edge_count: usize,
    labels: Vec<Option<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count)
    }
}

impl PartialEq for Graph {
    /// Equality of labeled graphs: same vertex count and same edge set.
    /// Role labels are cosmetic and do not take part.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}
impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an explicit edge list. Rejects `n == 0`, vertices
    /// out of range, self edges, and duplicate edges (in either orientation).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let words_per_row = n.div_ceil(64);
        let mut g = Graph {
            n,
            adj: vec![Vec::new(); n],
            bits: vec![0u64; n * words_per_row],
            words_per_row,
            edge_count: 0,
            labels: vec![None; n],
        };
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self edge at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            g.set_edge(u, v);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words_per_row + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words_per_row + u / 64] |= 1 << (u % 64);
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
    }

    /// Attaches role labels. `labels` must have one entry per vertex.
    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "label vector has {} entries for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    /// Neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn label(&self, u: usize) -> Option<&str> {
        self.labels[u].as_deref()
    }

    /// All edges as `(u, v)` pairs with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            let mut comp = vec![root];
            seen[root] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// True when every pair of distinct vertices is adjacent. `K1` counts.
    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * (self.n - 1) / 2
    }

    /// Vertices of degree zero, ascending.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adj[u].is_empty()).collect()
    }

    /// The complement graph. Labels are kept (vertex identity is unchanged).
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(self.n, &edges).expect("complement of a valid graph is valid");
        g.with_labels(self.labels.clone()).expect("same vertex count")
    }

    /// Induced subgraph on `verts` (no duplicates, all in range). New vertex
    /// `i` is old vertex `verts[i]`; labels of kept vertices survive.
    pub fn induced_subgraph(&self, verts: &[usize]) -> Result<Graph> {
        if verts.is_empty() {
            return Err(Error::InvalidGraph("induced subgraph needs at least one vertex".into()));
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            if v >= self.n {
                return Err(Error::InvalidGraph(format!("vertex {v} out of range")));
            }
            if index[v] != usize::MAX {
                return Err(Error::InvalidGraph(format!("vertex {v} listed twice")));
            }
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(verts.len(), &edges)?;
        g.with_labels(verts.iter().map(|&v| self.labels[v].clone()).collect())
    }

    /// Disjoint union; the second operand's vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut edges = self.edges();
        edges.extend(other.edges().iter().map(|&(u, v)| (u + self.n, v + self.n)));
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Graph::from_edges(n, &edges)?.with_labels(labels)
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut edges = self.edges();
        edges.extend(other.edges().iter().map(|&(u, v)| (u + self.n, v + self.n)));
        for u in 0..self.n {
            for v in 0..other.n {
                edges.push((u, self.n + v));
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Graph::from_edges(n, &edges)?.with_labels(labels)
    }

    /// BFS distances from every vertex, as 16-bit saturating hop counts with
    /// [`INFINITY`] for unreachable pairs.
    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.n;
        let mut dist = vec![INFINITY; n * n];
        let mut queue = Vec::with_capacity(n);
        for src in 0..n {
            let row = &mut dist[src * n..(src + 1) * n];
            row[src] = 0;
            queue.clear();
            queue.push(src);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                let du = row[u];
                // Saturate one short of INFINITY so the sentinel stays unique.
                let dv = du.saturating_add(1).min(INFINITY - 1);
                for &v in &self.adj[u] {
                    if row[v] == INFINITY {
                        row[v] = dv;
                        queue.push(v);
                    }
                }
            }
        }
        DistanceMatrix { n, dist }
    }
}

/// Dense all-pairs shortest-path table produced by
/// [`Graph::all_pairs_distances`].
#[derive(Clone)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u16>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Hop count from `u` to `v`; [`INFINITY`] when there is no path.
    pub fn get(&self, u: usize, v: usize) -> u16 {
        self.dist[u * self.n + v]
    }

    pub fn is_finite(&self, u: usize, v: usize) -> bool {
        self.get(u, v) != INFINITY
    }
}

/// The path `P_n`: vertices `0..n`, edges `i — i+1`.
pub fn path_graph(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// The cycle `C_n`, `n >= 3`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParam(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::from_edges(n, &edges)
}

/// The complete graph `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Leg pattern of a spider: see [`spider_graph`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpiderKind {
    /// Leg `s_i` is adjacent to exactly `c_i`.
    Thin,
    /// Leg `s_i` is adjacent to every clique vertex except `c_i`.
    Thick,
}

/// Builds a spider: a clique `C = {c_1..c_p}`, a stable set `S = {s_1..s_p}`
/// wired to it by `kind`, and an optional head `R` adjacent to all of `C` and
/// none of `S`. Vertex layout is `C` first (`0..p`), then `S` (`p..2p`), then
/// the head; the head keeps its internal edges. Requires `p >= 2`.
pub fn spider_graph(head: Option<&Graph>, p: usize, kind: SpiderKind) -> Result<Graph> {
    if p < 2 {
        return Err(Error::InvalidParam(format!("spider needs p >= 2, got {p}")));
    }
    let r = head.map_or(0, Graph::n);
    let n = 2 * p + r;
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            edges.push((i, j)); // clique
        }
    }
    for i in 0..p {
        match kind {
            SpiderKind::Thin => edges.push((i, p + i)),
            SpiderKind::Thick => {
                for j in 0..p {
                    if j != i {
                        edges.push((j, p + i));
                    }
                }
            }
        }
    }
    if let Some(h) = head {
        for &(u, v) in &h.edges() {
            edges.push((2 * p + u, 2 * p + v));
        }
        for u in 0..r {
            for c in 0..p {
                edges.push((2 * p + u, c));
            }
        }
    }
    let mut labels: Vec<Option<String>> = Vec::with_capacity(n);
    labels.extend((1..=p).map(|i| Some(format!("c{i}"))));
    labels.extend((1..=p).map(|i| Some(format!("s{i}"))));
    labels.extend((1..=r).map(|i| Some(format!("r{i}"))));
    Graph::from_edges(n, &edges)?.with_labels(labels)
}

fn product_size(g1: &Graph, g2: &Graph) -> Result<usize> {
    let n = g1.n() * g2.n();
    if n > MAX_VERTICES {
        return Err(Error::InvalidGraph(format!(
            "product has {n} vertices, exceeding the supported maximum of {MAX_VERTICES}"
        )));
    }
    Ok(n)
}

/// Cartesian product `G1 □ G2` on vertex pairs `(a, b) -> a*n2 + b`:
/// `(a,b) ~ (a',b')` iff one coordinate is equal and the other adjacent.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n = product_size(g1, g2)?;
    let n2 = g2.n();
    let mut edges = Vec::new();
    for a in 0..g1.n() {
        for &(b, b2) in &g2.edges() {
            edges.push((a * n2 + b, a * n2 + b2));
        }
    }
    for &(a, a2) in &g1.edges() {
        for b in 0..n2 {
            edges.push((a * n2 + b, a2 * n2 + b));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Strong product `G1 ⊠ G2`: the cartesian edges plus the diagonal edges
/// where both coordinates move along an edge.
pub fn strong_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n = product_size(g1, g2)?;
    let n2 = g2.n();
    let mut edges = cartesian_product(g1, g2)?.edges();
    for &(a, a2) in &g1.edges() {
        for &(b, b2) in &g2.edges() {
            edges.push((a * n2 + b, a2 * n2 + b2));
            edges.push((a * n2 + b2, a2 * n2 + b));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Lexicographic product `G1 · G2`: `(a,b) ~ (a',b')` iff `a ~ a'`, or
/// `a = a'` and `b ~ b'`.
pub fn lexicographic_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n = product_size(g1, g2)?;
    let n2 = g2.n();
    let mut edges = Vec::new();
    for a in 0..g1.n() {
        for &(b, b2) in &g2.edges() {
            edges.push((a * n2 + b, a * n2 + b2));
        }
    }
    for &(a, a2) in &g1.edges() {
        for b in 0..n2 {
            for b2 in 0..n2 {
                edges.push((a * n2 + b, a2 * n2 + b2));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Parses the plain text graph format:
///
/// ```text
/// # comment lines and blank lines are skipped
/// n 4
/// 0 1
/// 1 2
/// ```
///
/// The first significant line declares the vertex count; every following
/// significant line is one edge. Self edges and duplicates are rejected.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match n {
            None => {
                if parts.next() != Some("n") {
                    return Err(Error::GraphFormat {
                        line: lineno,
                        msg: "expected vertex count line `n <count>`".into(),
                    });
                }
                let count = parts
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(Error::GraphFormat {
                        line: lineno,
                        msg: "expected vertex count line `n <count>`".into(),
                    })?;
                if parts.next().is_some() {
                    return Err(Error::GraphFormat {
                        line: lineno,
                        msg: "trailing tokens after vertex count".into(),
                    });
                }
                n = Some(count);
            }
            Some(_) => {
                let (u, v) = match (
                    parts.next().and_then(|t| t.parse::<usize>().ok()),
                    parts.next().and_then(|t| t.parse::<usize>().ok()),
                    parts.next(),
                ) {
                    (Some(u), Some(v), None) => (u, v),
                    _ => {
                        return Err(Error::GraphFormat {
                            line: lineno,
                            msg: "expected edge line `u v`".into(),
                        })
                    }
                };
                edges.push((u, v));
                edge_lines.push(lineno);
            }
        }
    }
    let n = n.ok_or(Error::GraphFormat { line: 1, msg: "empty input".into() })?;
    // Re-run edge validation one edge at a time so errors carry line numbers.
    let mut ok: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    for (&e, &lineno) in edges.iter().zip(&edge_lines) {
        ok.push(e);
        if let Err(err) = Graph::from_edges(n, &ok) {
            return Err(Error::GraphFormat { line: lineno, msg: err.to_string() });
        }
    }
    Graph::from_edges(n, &edges)
}

/// Writes the text format read by [`parse_graph`]. Output is deterministic:
/// the vertex count line, then edges sorted with `u < v`.
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
