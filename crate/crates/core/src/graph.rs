//! Framed graphs: simple graphs with a vertex framing bit, canonical under
//! framing-preserving relabeling, plus the transient multigraph form used by
//! the chromatic recursion.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default bound on vertex count for canonicalization.
pub const DEFAULT_VERTEX_BOUND: usize = 10;

/// A framed simple graph in canonical form.
///
/// Vertices are ordered black (framing 0) first, white (framing 1) last, and
/// the adjacency encoding is minimized over all framing-preserving
/// permutations, so isomorphic framed graphs compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FramedGraph {
    framing: Vec<u8>,
    adj: Vec<u16>,
}

impl FramedGraph {
    /// The empty graph.
    pub fn empty() -> Self {
        FramedGraph {
            framing: Vec::new(),
            adj: Vec::new(),
        }
    }

    /// Builds a canonical framed graph from framing bits and an edge list
    /// (0-based, loops and duplicates rejected).
    pub fn from_parts(framing: Vec<u8>, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_parts_bounded(framing, edges, DEFAULT_VERTEX_BOUND)
    }

    /// As [`from_parts`](Self::from_parts) with an explicit vertex bound.
    pub fn from_parts_bounded(
        framing: Vec<u8>,
        edges: &[(usize, usize)],
        bound: usize,
    ) -> Result<Self> {
        let n = framing.len();
        if n > bound || n > 16 {
            return Err(Error::VertexBound {
                n,
                bound: bound.min(16),
            });
        }
        for (i, &b) in framing.iter().enumerate() {
            if b > 1 {
                return Err(Error::Parse {
                    msg: format!("framing bit of vertex {} is not 0/1", i + 1),
                    pos: None,
                });
            }
        }
        let mut adj = vec![0u16; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parse {
                    msg: format!("edge {}-{} out of range", u + 1, v + 1),
                    pos: None,
                });
            }
            if u == v {
                return Err(Error::Parse {
                    msg: format!("loop at vertex {} not allowed in a simple graph", u + 1),
                    pos: None,
                });
            }
            if adj[u] >> v & 1 == 1 {
                return Err(Error::Parse {
                    msg: format!("duplicate edge {}-{}", u + 1, v + 1),
                    pos: None,
                });
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let (framing, adj) = canonical_parts(&framing, &adj);
        Ok(FramedGraph { framing, adj })
    }

    /// Parses the textual graph code `n;f1…fn;u1-v1,…`, e.g. `2;01;1-2`.
    /// The empty graph is `0;;`. Non-canonical input is canonicalized.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                msg: "graph code must contain exactly two ';'".into(),
                pos: None,
            });
        }
        let n: usize = parts[0].trim().parse().map_err(|_| Error::Parse {
            msg: format!("bad vertex count `{}`", parts[0]),
            pos: Some(0),
        })?;
        let mut framing = Vec::new();
        for (i, ch) in parts[1].trim().chars().enumerate() {
            match ch {
                '0' => framing.push(0),
                '1' => framing.push(1),
                _ => {
                    return Err(Error::Parse {
                        msg: format!("bad framing character `{ch}`"),
                        pos: Some(i),
                    })
                }
            }
        }
        if framing.len() != n {
            return Err(Error::Parse {
                msg: format!("framing has {} bits, expected {}", framing.len(), n),
                pos: None,
            });
        }
        let mut edges = Vec::new();
        let edge_part = parts[2].trim();
        if !edge_part.is_empty() {
            for (i, tok) in edge_part.split(',').enumerate() {
                let (a, b) = tok.trim().split_once('-').ok_or_else(|| Error::Parse {
                    msg: format!("bad edge `{tok}`"),
                    pos: Some(i),
                })?;
                let u: usize = a.trim().parse().map_err(|_| Error::Parse {
                    msg: format!("bad vertex `{a}`"),
                    pos: Some(i),
                })?;
                let v: usize = b.trim().parse().map_err(|_| Error::Parse {
                    msg: format!("bad vertex `{b}`"),
                    pos: Some(i),
                })?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::Parse {
                        msg: format!("edge {u}-{v} out of range"),
                        pos: Some(i),
                    });
                }
                edges.push((u - 1, v - 1));
            }
        }
        Self::from_parts(framing, &edges)
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.framing.len()
    }

    /// Framing bits in canonical vertex order (blacks first).
    pub fn framing(&self) -> &[u8] {
        &self.framing
    }

    pub fn framing_of(&self, v: usize) -> u8 {
        self.framing[v]
    }

    /// True when every vertex is black (includes the empty graph).
    pub fn is_black(&self) -> bool {
        self.framing.iter().all(|&b| b == 0)
    }

    /// True when every vertex is white (includes the empty graph).
    pub fn is_white(&self) -> bool {
        self.framing.iter().all(|&b| b == 1)
    }

    pub fn black_count(&self) -> usize {
        self.framing.iter().filter(|&&b| b == 0).count()
    }

    pub fn white_count(&self) -> usize {
        self.framing.iter().filter(|&&b| b == 1).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbors of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u16 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges as sorted 0-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Textual graph code `n;f1…fn;u1-v1,…` (1-based vertices, edges sorted).
    pub fn code(&self) -> String {
        let framing = self
            .framing
            .iter()
            .map(|b| b.to_string())
            .collect::<String>();
        let edges = self
            .edges()
            .iter()
            .map(|&(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect::<Vec<_>>()
            .join(",");
        format!("{};{};{}", self.n(), framing, edges)
    }

    /// Disjoint union, canonicalized.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let n1 = self.n();
        let mut framing = self.framing.clone();
        framing.extend_from_slice(&other.framing);
        let mut edges = self.edges();
        edges.extend(other.edges().iter().map(|&(u, v)| (u + n1, v + n1)));
        Self::from_parts(framing, &edges)
    }

    /// Vertex-induced subgraph on `keep`, canonicalized.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut set = vec![false; n];
        for &v in keep {
            if v >= n {
                return Err(Error::ChordIndex { index: v, order: n });
            }
            set[v] = true;
        }
        self.restrict(&set)
    }

    /// Induced subgraph on the flagged vertices.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Result<Self> {
        let verts: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        let framing: Vec<u8> = verts.iter().map(|&v| self.framing[v]).collect();
        let mut edges = Vec::new();
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Self::from_parts(framing, &edges)
    }

    /// Deletes one copy of an edge, producing a multigraph.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<FramedMultigraph> {
        self.to_multigraph().delete_edge(u, v)
    }

    /// Contracts an edge, producing a multigraph (loops and parallel edges
    /// can appear). The merged vertex is black iff both endpoints were.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<FramedMultigraph> {
        self.to_multigraph().contract_edge(u, v)
    }

    /// The same graph as a multigraph.
    pub fn to_multigraph(&self) -> FramedMultigraph {
        let n = self.n();
        let mut mult = vec![0u8; n * n];
        for (u, v) in self.edges() {
            mult[u * n + v] = 1;
            mult[v * n + u] = 1;
        }
        FramedMultigraph {
            framing: self.framing.clone(),
            mult,
        }
    }

    /// All canonical framed (or all-black) graphs on `n` vertices, sorted.
    pub fn enumerate(n: usize, framed: bool) -> Vec<Self> {
        assert!(n <= 8, "graph enumeration is sized for n <= 8");
        let mut level: BTreeSet<FramedGraph> = BTreeSet::new();
        level.insert(FramedGraph::empty());
        for k in 1..=n {
            let mut next = BTreeSet::new();
            for g in &level {
                let edges = g.edges();
                for mask in 0u32..(1 << (k - 1)) {
                    let mut new_edges = edges.clone();
                    for w in 0..k - 1 {
                        if mask >> w & 1 == 1 {
                            new_edges.push((w, k - 1));
                        }
                    }
                    for fr_new in 0..=(framed as u8) {
                        let mut framing = g.framing.clone();
                        framing.push(fr_new);
                        next.insert(
                            FramedGraph::from_parts(framing, &new_edges).expect("valid graph"),
                        );
                    }
                }
            }
            level = next;
        }
        level.into_iter().collect()
    }
}

impl fmt::Display for FramedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

/// Canonical form: order vertices blacks-first, then minimize the
/// column-major upper-triangular adjacency encoding over all permutations
/// preserving the color classes, by depth-first search with prefix pruning.
fn canonical_parts(framing: &[u8], adj: &[u16]) -> (Vec<u8>, Vec<u16>) {
    let n = framing.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let blacks: Vec<usize> = (0..n).filter(|&v| framing[v] == 0).collect();
    let whites: Vec<usize> = (0..n).filter(|&v| framing[v] == 1).collect();
    let b = blacks.len();
    let sorted_framing: Vec<u8> = (0..n).map(|i| u8::from(i >= b)).collect();

    let mut search = CanonSearch {
        n,
        b,
        blacks,
        whites,
        adj,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        cur: Vec::with_capacity(n * n / 2),
        best: None,
    };
    search.go(true);
    let best_perm = search.best.expect("nonempty search").1;

    let mut new_adj = vec![0u16; n];
    for i in 0..n {
        for j in i + 1..n {
            if adj[best_perm[i]] >> best_perm[j] & 1 == 1 {
                new_adj[i] |= 1 << j;
                new_adj[j] |= 1 << i;
            }
        }
    }
    (sorted_framing, new_adj)
}

struct CanonSearch<'a> {
    n: usize,
    b: usize,
    blacks: Vec<usize>,
    whites: Vec<usize>,
    adj: &'a [u16],
    perm: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl CanonSearch<'_> {
    /// `tight` is true while the current prefix equals the best prefix, so
    /// the per-level comparison is a sound prune; once a branch goes
    /// strictly below (or no best exists yet) the leaf does a full compare.
    fn go(&mut self, tight: bool) {
        let slot = self.perm.len();
        if slot == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| self.cur < *b) {
                self.best = Some((self.cur.clone(), self.perm.clone()));
            }
            return;
        }
        let pool: Vec<usize> = if slot < self.b {
            self.blacks
                .iter()
                .copied()
                .filter(|&v| !self.used[v])
                .collect()
        } else {
            self.whites
                .iter()
                .copied()
                .filter(|&v| !self.used[v])
                .collect()
        };
        let off = self.cur.len();
        for v in pool {
            let mut bits = Vec::with_capacity(slot);
            for i in 0..slot {
                bits.push((self.adj[self.perm[i]] >> v & 1) as u8);
            }
            let mut next_tight = false;
            if tight {
                if let Some((best, _)) = &self.best {
                    let seg = &best[off..off + slot];
                    match bits.as_slice().cmp(seg) {
                        std::cmp::Ordering::Greater => continue,
                        std::cmp::Ordering::Less => {}
                        std::cmp::Ordering::Equal => next_tight = true,
                    }
                }
            }
            self.perm.push(v);
            self.used[v] = true;
            self.cur.extend_from_slice(&bits);
            self.go(next_tight);
            self.cur.truncate(off);
            self.used[v] = false;
            self.perm.pop();
        }
    }
}

/// A framed multigraph: loops and parallel edges allowed. Used transiently
/// by the chromatic recursion; never a basis element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FramedMultigraph {
    framing: Vec<u8>,
    /// Symmetric `n x n` multiplicity matrix; the diagonal counts loops.
    mult: Vec<u8>,
}

impl FramedMultigraph {
    pub fn n(&self) -> usize {
        self.framing.len()
    }

    pub fn framing(&self) -> &[u8] {
        &self.framing
    }

    pub fn framing_of(&self, v: usize) -> u8 {
        self.framing[v]
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u8 {
        self.mult[u * self.n() + v]
    }

    pub fn loops_at(&self, v: usize) -> u8 {
        self.mult[v * self.n() + v]
    }

    pub fn has_loop(&self) -> bool {
        (0..self.n()).any(|v| self.loops_at(v) > 0)
    }

    /// True when there are no edges at all (loops included).
    pub fn is_edgeless(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Non-loop edges with multiplicity, as `(u, v, k)` with `u < v`.
    pub fn edges_with_multiplicity(&self) -> Vec<(usize, usize, u8)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let m = self.multiplicity(u, v);
                if m > 0 {
                    out.push((u, v, m));
                }
            }
        }
        out
    }

    /// Removes one copy of the edge `u - v`.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<FramedMultigraph> {
        let n = self.n();
        if u >= n || v >= n || u == v || self.multiplicity(u, v) == 0 {
            return Err(Error::MissingEdge { u, v });
        }
        let mut out = self.clone();
        out.mult[u * n + v] -= 1;
        out.mult[v * n + u] -= 1;
        Ok(out)
    }

    /// Contracts one copy of the edge `u - v`: the endpoints merge, all other
    /// incidences are kept (parallel copies of `u - v` become loops), and the
    /// merged vertex is black iff both endpoints were black.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<FramedMultigraph> {
        let n = self.n();
        if u >= n || v >= n || u == v || self.multiplicity(u, v) == 0 {
            return Err(Error::MissingEdge { u, v });
        }
        let (a, b) = (u.min(v), u.max(v));
        // New vertex order: 0..n without b; a absorbs b.
        let keep: Vec<usize> = (0..n).filter(|&w| w != b).collect();
        let m = n - 1;
        let mut framing = Vec::with_capacity(m);
        for &w in &keep {
            if w == a {
                framing.push(self.framing[a] | self.framing[b]);
            } else {
                framing.push(self.framing[w]);
            }
        }
        let mut mult = vec![0u8; m * m];
        let pos = |w: usize| keep.iter().position(|&x| x == w).unwrap();
        let pa = pos(a);
        for (i, &w1) in keep.iter().enumerate() {
            for (j, &w2) in keep.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (x, y) = (if w1 == a { a } else { w1 }, if w2 == a { a } else { w2 });
                let mut k = self.multiplicity(x, y);
                if w1 == a {
                    k += self.multiplicity(b, y);
                }
                if w2 == a {
                    k += self.multiplicity(x, b);
                }
                mult[i * m + j] = k;
            }
        }
        // Loops at the merged vertex: both old loop counts plus the parallel
        // copies of u-v beyond the contracted one.
        let merged_loops = self.loops_at(a) + self.loops_at(b) + (self.multiplicity(a, b) - 1);
        mult[pa * m + pa] = merged_loops;
        for (i, &w) in keep.iter().enumerate() {
            if w != a {
                mult[i * m + i] = self.loops_at(w);
            }
        }
        Ok(FramedMultigraph { framing, mult })
    }

    /// Replaces every parallel class by a single edge and drops loops is NOT
    /// done here; this is the exact multigraph canonical key (framing plus
    /// multiplicity matrix minimized over framing-preserving permutations).
    pub fn canonical_key(&self) -> Vec<u8> {
        let (framing, mult, _) = self.canonical_data();
        let mut key = Vec::with_capacity(2 + framing.len() + mult.len());
        key.push(self.n() as u8);
        key.extend_from_slice(&framing);
        key.extend_from_slice(&mult);
        key
    }

    /// Canonical representative (relabeled copy realizing the minimal code).
    pub fn canonical_form(&self) -> FramedMultigraph {
        let (framing, _, perm) = self.canonical_data();
        let n = self.n();
        let mut mult = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                mult[i * n + j] = self.multiplicity(perm[i], perm[j]);
            }
        }
        FramedMultigraph { framing, mult }
    }

    /// (sorted framing, minimal column-major code, permutation slots->orig).
    fn canonical_data(&self) -> (Vec<u8>, Vec<u8>, Vec<usize>) {
        let n = self.n();
        if n == 0 {
            return (Vec::new(), Vec::new(), Vec::new());
        }
        let blacks: Vec<usize> = (0..n).filter(|&v| self.framing[v] == 0).collect();
        let whites: Vec<usize> = (0..n).filter(|&v| self.framing[v] == 1).collect();
        let b = blacks.len();
        let sorted_framing: Vec<u8> = (0..n).map(|i| u8::from(i >= b)).collect();
        let mut search = MultiCanonSearch {
            n,
            b,
            blacks,
            whites,
            mg: self,
            perm: Vec::with_capacity(n),
            used: vec![false; n],
            cur: Vec::new(),
            best: None,
        };
        search.go(true);
        let (code, perm) = search.best.expect("nonempty search");
        (sorted_framing, code, perm)
    }
}

struct MultiCanonSearch<'a> {
    n: usize,
    b: usize,
    blacks: Vec<usize>,
    whites: Vec<usize>,
    mg: &'a FramedMultigraph,
    perm: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl MultiCanonSearch<'_> {
    fn go(&mut self, tight: bool) {
        let slot = self.perm.len();
        if slot == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| self.cur < *b) {
                self.best = Some((self.cur.clone(), self.perm.clone()));
            }
            return;
        }
        let pool: Vec<usize> = if slot < self.b {
            self.blacks
                .iter()
                .copied()
                .filter(|&v| !self.used[v])
                .collect()
        } else {
            self.whites
                .iter()
                .copied()
                .filter(|&v| !self.used[v])
                .collect()
        };
        let off = self.cur.len();
        for v in pool {
            // Column entries: loop count first, then multiplicities against
            // the already placed vertices.
            let mut col = Vec::with_capacity(slot + 1);
            col.push(self.mg.loops_at(v));
            for i in 0..slot {
                col.push(self.mg.multiplicity(self.perm[i], v));
            }
            let mut next_tight = false;
            if tight {
                if let Some((best, _)) = &self.best {
                    let seg = &best[off..off + slot + 1];
                    match col.as_slice().cmp(seg) {
                        std::cmp::Ordering::Greater => continue,
                        std::cmp::Ordering::Less => {}
                        std::cmp::Ordering::Equal => next_tight = true,
                    }
                }
            }
            self.perm.push(v);
            self.used[v] = true;
            self.cur.extend_from_slice(&col);
            self.go(next_tight);
            self.cur.truncate(off);
            self.used[v] = false;
            self.perm.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn g(code: &str) -> FramedGraph {
        FramedGraph::parse(code).unwrap()
    }

    #[test]
    fn parse_and_code() {
        assert_eq!(g("2;01;1-2").code(), "2;01;1-2");
        assert_eq!(g("0;;").code(), "0;;");
        assert_eq!(g("1;0;").code(), "1;0;");
        // Whites-first input gets normalized to blacks-first.
        assert_eq!(g("2;10;1-2").code(), "2;01;1-2");
        assert!(FramedGraph::parse("2;01;1-1").is_err());
        assert!(FramedGraph::parse("2;0;1-2").is_err());
        assert!(FramedGraph::parse("2;01;1-2,1-2").is_err());
        assert!(FramedGraph::parse("2;01;1-3").is_err());
    }

    #[test]
    fn single_black_vertex_canonical() {
        {
            let code = "1;0;";
            assert_eq!(g(code).code(), "1;0;");
        }
    }

    #[test]
    fn path_isomorphism_invariance() {
        // Path u-v-w framed 0,1,0 under every labeling of the three vertices.
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut codes = BTreeSet::new();
        for p in perms {
            // Middle vertex (index mapped from 1) is white.
            let mut framing = vec![0u8; 3];
            framing[p[1]] = 1;
            let edges = [(p[0], p[1]), (p[1], p[2])];
            codes.insert(FramedGraph::from_parts(framing, &edges).unwrap());
        }
        assert_eq!(codes.len(), 1);
    }

    #[test]
    fn random_permutation_invariance() {
        // 100 random framing-preserving relabelings per graph: every framed
        // graph for n <= 5, a deterministic sample at n = 6.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 0..=6usize {
            let pool = if n <= 5 {
                FramedGraph::enumerate(n, true)
            } else {
                sample_graphs(n, 120)
            };
            for g in pool {
                for _ in 0..100 {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.shuffle(&mut rng);
                    let framing: Vec<u8> = (0..n).map(|i| g.framing_of(perm[i])).collect();
                    let edges: Vec<(usize, usize)> = g
                        .edges()
                        .iter()
                        .map(|&(u, v)| {
                            let iu = perm.iter().position(|&x| x == u).unwrap();
                            let iv = perm.iter().position(|&x| x == v).unwrap();
                            (iu.min(iv), iu.max(iv))
                        })
                        .collect();
                    let h = FramedGraph::from_parts(framing, &edges).unwrap();
                    assert_eq!(g, h);
                }
            }
        }
    }

    fn sample_graphs(n: usize, take: usize) -> Vec<FramedGraph> {
        let all = FramedGraph::enumerate(n, true);
        let step = (all.len() / take).max(1);
        all.into_iter().step_by(step).collect()
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(FramedGraph::enumerate(1, true).len(), 2);
        assert_eq!(FramedGraph::enumerate(2, true).len(), 6);
        // Sloane A000088: 1, 1, 2, 4, 11, 34, 156 simple unlabeled graphs.
        let unframed = [1usize, 1, 2, 4, 11, 34, 156];
        for (n, &expect) in unframed.iter().enumerate() {
            assert_eq!(FramedGraph::enumerate(n, false).len(), expect, "n = {n}");
        }
    }

    #[test]
    fn enumerate_unframed_matches_brute_force_small() {
        // Independent oracle at n = 3: all 8 edge subsets, dedup by
        // exhaustive permutation comparison.
        let mut reps: Vec<Vec<(usize, usize)>> = Vec::new();
        let all_edges = [(0, 1), (0, 2), (1, 2)];
        'outer: for mask in 0u32..8 {
            let edges: BTreeSet<(usize, usize)> = all_edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let perms = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            for rep in &reps {
                let rep_set: BTreeSet<(usize, usize)> = rep.iter().copied().collect();
                for p in perms {
                    let mapped: BTreeSet<(usize, usize)> = edges
                        .iter()
                        .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                        .collect();
                    if mapped == rep_set {
                        continue 'outer;
                    }
                }
            }
            reps.push(edges.into_iter().collect());
        }
        assert_eq!(reps.len(), 4);
        assert_eq!(FramedGraph::enumerate(3, false).len(), 4);
    }

    #[test]
    fn union_and_induced() {
        let k2 = g("2;00;1-2");
        assert_eq!(k2.disjoint_union(&FramedGraph::empty()).unwrap(), k2);
        let k3 = g("3;000;1-2,1-3,2-3");
        assert_eq!(k3.induced_subgraph(&[0, 1]).unwrap(), k2);
        // Path 0,1,0: endpoints induce two isolated black vertices. In the
        // canonical labeling the black endpoints are vertices 0 and 1.
        let path = g("3;010;1-2,2-3");
        let path_b = FramedGraph::from_parts(vec![0, 1, 0], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path, path_b);
        assert_eq!(path.code(), "3;001;1-3,2-3");
        let ends = path_b.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(ends.code(), "2;00;");
    }

    #[test]
    fn union_commutative_associative() {
        let graphs = FramedGraph::enumerate(2, true);
        for a in &graphs {
            for b in &graphs {
                assert_eq!(a.disjoint_union(b).unwrap(), b.disjoint_union(a).unwrap());
                for c in &graphs {
                    assert_eq!(
                        a.disjoint_union(b).unwrap().disjoint_union(c).unwrap(),
                        a.disjoint_union(&b.disjoint_union(c).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn induced_complement_counts() {
        for gr in FramedGraph::enumerate(4, true).iter().step_by(7) {
            for mask in 0u32..16 {
                let keep: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
                let rest: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 0).collect();
                let a = gr.induced_subgraph(&keep).unwrap();
                let b = gr.induced_subgraph(&rest).unwrap();
                assert_eq!(a.n() + b.n(), 4);
            }
        }
    }

    #[test]
    fn contraction_examples() {
        // Black-black K2 contracts to a single black vertex.
        let k2 = g("2;00;1-2");
        let c = k2.contract_edge(0, 1).unwrap();
        assert_eq!(c.n(), 1);
        assert_eq!(c.framing(), &[0]);
        assert!(c.is_edgeless());

        // Black-white K2 contracts to a single white vertex.
        let bw = g("2;01;1-2");
        let c = bw.contract_edge(0, 1).unwrap();
        assert_eq!(c.framing(), &[1]);

        // Contracting one edge of a black triangle leaves a double edge.
        let k3 = g("3;000;1-2,1-3,2-3");
        let c = k3.contract_edge(0, 1).unwrap();
        assert_eq!(c.n(), 2);
        assert!(!c.has_loop());
        assert_eq!(c.edges_with_multiplicity(), vec![(0, 1, 2)]);

        // Contracting a parallel copy creates a loop.
        let cc = c.contract_edge(0, 1).unwrap();
        assert_eq!(cc.n(), 1);
        assert_eq!(cc.loops_at(0), 1);
        assert!(k2.delete_edge(0, 1).unwrap().is_edgeless());
        assert!(k2.to_multigraph().delete_edge(1, 1).is_err());
    }

    #[test]
    fn multigraph_canonical_key_stable() {
        let k3 = g("3;010;1-2,1-3,2-3");
        let a = k3.contract_edge(0, 1).unwrap();
        let b = k3.contract_edge(0, 2).unwrap();
        // Both contractions merge a black vertex into the white one; the
        // results are isomorphic multigraphs.
        assert_eq!(a.canonical_key(), b.canonical_key());
        let cf = a.canonical_form();
        assert_eq!(cf.canonical_key(), a.canonical_key());
    }
}
