//! Four-term relation generators for framed chord diagrams and framed
//! graphs, emitted as exact linear combinations over the canonical bases.

use std::collections::BTreeSet;

use crate::diagram::FramedChordDiagram;
use crate::graph::FramedGraph;
use crate::lincomb::LinComb;
use crate::qi;

/// Which relation family a [`RelationSet`] holds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationKind {
    DiagramFramed,
    DiagramUnframed,
    GraphFramed,
    GraphUnframed,
}

/// Homogeneous relation vectors of one order, deduplicated up to scalar
/// multiples (each vector is stored in primitive integer form with positive
/// leading coefficient).
#[derive(Clone, Debug)]
pub struct RelationSet<K: Ord + Clone> {
    pub order: usize,
    pub kind: RelationKind,
    pub vectors: Vec<LinComb<K>>,
    /// Number of (diagram, jumping endpoint, side) resp. (graph, ordered
    /// adjacent pair) configurations visited before any deduplication.
    pub generated: usize,
    /// Configurations that produced a nonzero vector (before dedup).
    pub nonzero: usize,
}

impl<K: Ord + Clone> RelationSet<K> {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Four-term relations among order-`n` framed chord diagrams.
///
/// For every canonical diagram, every endpoint `m` of a chord `a` (the
/// jumping chord) and each of the two circular neighbors of `m` belonging to
/// a different chord `b` (the fixed chord), the generator emits the relation
/// tying the four placements of `m` next to the endpoints of `b`:
///
/// * fixed chord oriented: `D(after p1) - D(before p1) - D(before p2) +
///   D(after p2)` with every framing carried unchanged;
/// * fixed chord disorienting: `D(after p1) - D(before p1) + D(before p2) -
///   D(after p2)`, where the jumping chord keeps its framing next to `p1`
///   and has it flipped next to `p2`.
///
/// Over-generation is deliberate; duplicates (up to scalar) are removed.
pub fn fourt_diagram_relations(n: usize, framed: bool) -> RelationSet<FramedChordDiagram> {
    let kind = if framed {
        RelationKind::DiagramFramed
    } else {
        RelationKind::DiagramUnframed
    };
    let mut generated = 0usize;
    let mut nonzero = 0usize;
    let mut set: BTreeSet<LinComb<FramedChordDiagram>> = BTreeSet::new();
    if n >= 2 {
        for d in FramedChordDiagram::enumerate(n, framed) {
            let word = d.word();
            let len = word.len();
            for i in 0..len {
                for step in [1usize, len - 1] {
                    let j = (i + step) % len;
                    let a = word[i] as usize;
                    let b = word[j] as usize;
                    if a == b {
                        continue;
                    }
                    generated += 1;
                    let vec = diagram_relation_instance(&d, i, j);
                    if let Some(v) = vec.primitive_normal_form() {
                        nonzero += 1;
                        set.insert(v);
                    }
                }
            }
        }
    }
    RelationSet {
        order: n,
        kind,
        vectors: set.into_iter().collect(),
        generated,
        nonzero,
    }
}

/// Builds the single 4T vector in which the given diagram occupies the slot
/// "mobile endpoint at position `i`, adjacent to the fixed-chord endpoint at
/// position `j`".
fn diagram_relation_instance(
    d: &FramedChordDiagram,
    i: usize,
    j: usize,
) -> LinComb<FramedChordDiagram> {
    let word = d.word();
    let len = word.len();
    let a = word[i];
    let b = word[j] as usize;
    let fixed_framing = d.framing_of(b);
    let eps = d.framing_of(a as usize);

    // Background: the word with the mobile endpoint removed.
    let mut background = Vec::with_capacity(len - 1);
    for (k, &c) in word.iter().enumerate() {
        if k != i {
            background.push(c);
        }
    }
    let shift = |k: usize| if k < i { k } else { k - 1 };
    let p1 = shift(j);
    let p2 = {
        let other = (0..len)
            .find(|&k| k != j && word[k] as usize == b)
            .expect("second endpoint");
        shift(other)
    };

    let place = |at: usize, jumper_framing: u8| -> FramedChordDiagram {
        let mut w = background.clone();
        w.insert(at, a);
        let mut framing = d.framing().to_vec();
        framing[a as usize] = jumper_framing;
        FramedChordDiagram::from_parts(w, framing).expect("valid placement")
    };

    let far = if fixed_framing == 0 { eps } else { 1 - eps };
    let sigma = if fixed_framing == 0 { qi(1) } else { qi(-1) };

    let mut v = LinComb::zero();
    v.add_term(place(p1 + 1, eps), qi(1)); // after p1
    v.add_term(place(p1, eps), qi(-1)); // before p1
    v.add_term(place(p2, far), -sigma.clone()); // before p2
    v.add_term(place(p2 + 1, far), sigma); // after p2
    v
}

/// Four-term relations among order-`n` framed graphs: for every canonical
/// graph and every ordered adjacent pair `(u, v)`,
/// `G - G'_uv - (-1)^{f(v)} (G~_uv - G~'_uv)`, where `G'` deletes the edge
/// `uv`, `G~` toggles the adjacency of `u` to every other neighbor of `v`
/// and adds `f(v)` to the framing of `u`, and `G~'` also deletes `uv`.
pub fn fourt_graph_relations(n: usize, framed: bool) -> RelationSet<FramedGraph> {
    let kind = if framed {
        RelationKind::GraphFramed
    } else {
        RelationKind::GraphUnframed
    };
    let mut generated = 0usize;
    let mut nonzero = 0usize;
    let mut set: BTreeSet<LinComb<FramedGraph>> = BTreeSet::new();
    if n >= 2 {
        for g in FramedGraph::enumerate(n, framed) {
            for (x, y) in g.edges() {
                for (u, v) in [(x, y), (y, x)] {
                    generated += 1;
                    let vec = graph_relation_instance(&g, u, v);
                    if let Some(vv) = vec.primitive_normal_form() {
                        nonzero += 1;
                        set.insert(vv);
                    }
                }
            }
        }
    }
    RelationSet {
        order: n,
        kind,
        vectors: set.into_iter().collect(),
        generated,
        nonzero,
    }
}

fn graph_relation_instance(g: &FramedGraph, u: usize, v: usize) -> LinComb<FramedGraph> {
    debug_assert!(g.has_edge(u, v), "relation instance needs an adjacent pair");
    let n = g.n();
    let framing = g.framing().to_vec();
    let edges = g.edges();

    let without_uv = |edges: &[(usize, usize)]| -> Vec<(usize, usize)> {
        edges
            .iter()
            .copied()
            .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)))
            .collect()
    };

    // Toggled edge set: flip u-w for every neighbor w of v other than u.
    let mut toggled: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    for w in 0..n {
        if w != u && w != v && g.has_edge(v, w) {
            let key = (u.min(w), u.max(w));
            if !toggled.remove(&key) {
                toggled.insert(key);
            }
        }
    }
    let toggled: Vec<(usize, usize)> = toggled.into_iter().collect();
    let mut tilde_framing = framing.clone();
    tilde_framing[u] = (framing[u] + framing[v]) % 2;

    let build = |fr: &[u8], es: &[(usize, usize)]| -> FramedGraph {
        FramedGraph::from_parts(fr.to_vec(), es).expect("valid graph")
    };

    let sigma = if g.framing_of(v) == 0 { qi(1) } else { qi(-1) };
    let mut out = LinComb::zero();
    out.add_term(build(&framing, &edges), qi(1));
    out.add_term(build(&framing, &without_uv(&edges)), qi(-1));
    out.add_term(build(&tilde_framing, &toggled), -sigma.clone());
    out.add_term(build(&tilde_framing, &without_uv(&toggled)), sigma);
    out
}

/// Sparse triplet export: header `rows cols`, lines `row col num/den`
/// (1-based), terminated by `0 0 0`.
pub fn relations_to_triplet_text<K: Ord + Clone>(
    vectors: &[LinComb<K>],
    basis: &[K],
    cols: usize,
) -> String {
    use std::collections::BTreeMap;
    let index: BTreeMap<&K, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut out = format!("{} {}\n", vectors.len(), cols);
    for (r, v) in vectors.iter().enumerate() {
        for (k, c) in v.iter() {
            let col = index[k];
            out.push_str(&format!(
                "{} {} {}/{}\n",
                r + 1,
                col + 1,
                c.numer(),
                c.denom()
            ));
        }
    }
    out.push_str("0 0 0\n");
    out
}

/// Index file contents: `col<TAB>code` lines, 1-based columns.
pub fn basis_index_text<K>(basis: &[K], code: impl Fn(&K) -> String) -> String {
    basis
        .iter()
        .enumerate()
        .map(|(i, k)| format!("{}\t{}\n", i + 1, code(k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn d(code: &str) -> FramedChordDiagram {
        FramedChordDiagram::parse(code).unwrap()
    }

    #[test]
    fn no_relations_below_order_two() {
        assert!(fourt_diagram_relations(1, true).is_empty());
        assert!(fourt_diagram_relations(0, true).is_empty());
        assert!(fourt_graph_relations(1, true).is_empty());
    }

    #[test]
    fn unframed_order_two_relations_all_degenerate() {
        // Jumps along an oriented chord with nothing between its endpoints
        // cancel: both placements near either endpoint agree.
        let rels = fourt_diagram_relations(2, false);
        assert!(rels.generated > 0);
        assert_eq!(rels.len(), 0);
    }

    #[test]
    fn framed_order_two_single_relation() {
        // The only order-2 relation identifies the crossing and the parallel
        // pictures with mixed framings: X01 - N01 + X11 - N11 (up to sign).
        let rels = fourt_diagram_relations(2, true);
        assert_eq!(rels.len(), 1);
        let v = &rels.vectors[0];
        assert_eq!(v.len(), 4);
        let x01 = d("1 2 1 2;01");
        let n01 = d("1 1 2 2;01");
        let x11 = d("1 2 1 2;11");
        let n11 = d("1 1 2 2;11");
        let sign = v.coeff(&x01);
        assert!(!sign.is_zero());
        assert_eq!(v.coeff(&n01), -sign.clone());
        assert_eq!(v.coeff(&x11), sign.clone());
        assert_eq!(v.coeff(&n11), -sign);
    }

    #[test]
    fn graph_k2_relation_collapses() {
        // For K2 the toggle does nothing, so the black-black relation is 0.
        let rels = fourt_graph_relations(2, false);
        assert_eq!(rels.len(), 0);
        assert_eq!(rels.generated, 2);
    }

    #[test]
    fn path_relation_is_its_own_witness() {
        // The relation seeded at a 4-vertex path vanishes in the quotient by
        // construction.
        let basis = FramedGraph::enumerate(4, false);
        let rels = fourt_graph_relations(4, false);
        let oracle = crate::linalg::SpanOracle::new(&basis, &rels.vectors);
        let path = FramedGraph::from_parts(vec![0; 4], &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (u, v) = path.edges()[0];
        let vector = graph_relation_instance(&path, u, v)
            .primitive_normal_form()
            .unwrap();
        assert!(oracle.contains(&vector));
    }

    #[test]
    fn graph_framed_sign_and_framing_transport() {
        // Black u adjacent to white v with one more black vertex adjacent to
        // v: the tilde terms flip u's framing and enter with sign -(-1).
        // Canonically the path with a white center is `3;001;1-3,2-3`, so
        // u = 0 (a black endpoint), v = 2 (the white center).
        let g = FramedGraph::from_parts(vec![0, 1, 0], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.code(), "3;001;1-3,2-3");
        let v = graph_relation_instance(&g, 0, 2)
            .primitive_normal_form()
            .unwrap();
        let g_del = FramedGraph::from_parts(vec![0, 0, 1], &[(1, 2)]).unwrap();
        let g_tilde = FramedGraph::from_parts(vec![1, 0, 1], &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let g_tilde_del = FramedGraph::from_parts(vec![1, 0, 1], &[(0, 1), (1, 2)]).unwrap();
        let lead = v.coeff(&g);
        assert!(!lead.is_zero());
        assert_eq!(v.coeff(&g_del), -lead.clone());
        assert_eq!(v.coeff(&g_tilde), lead.clone());
        assert_eq!(v.coeff(&g_tilde_del), -lead);
    }

    #[test]
    fn relation_vectors_are_homogeneous_and_normalized() {
        for rels in [fourt_diagram_relations(3, true)] {
            for v in &rels.vectors {
                for (k, c) in v.iter() {
                    assert_eq!(k.order(), 3);
                    assert_eq!(c.denom(), &num_bigint::BigInt::from(1));
                }
                let lead = v.iter().next().unwrap().1;
                assert!(lead > &crate::qi(0));
            }
        }
    }

    #[test]
    fn oriented_fixed_chord_instances_restrict_to_classical() {
        // Forcing all framings to zero in a relation whose fixed chord is
        // oriented lands in the classical 4T span (the framings ride along
        // unchanged, so the four placements become a classical instance).
        for n in 2..=3usize {
            let black_basis = FramedChordDiagram::enumerate(n, false);
            let classical = fourt_diagram_relations(n, false);
            let oracle = crate::linalg::SpanOracle::new(&black_basis, &classical.vectors);
            for d in FramedChordDiagram::enumerate(n, true) {
                let word = d.word();
                let len = word.len();
                for i in 0..len {
                    for step in [1usize, len - 1] {
                        let j = (i + step) % len;
                        let (a, b) = (word[i] as usize, word[j] as usize);
                        if a == b || d.framing_of(b) != 0 {
                            continue;
                        }
                        let v = diagram_relation_instance(&d, i, j);
                        let blackened = v.map(|k| {
                            LinComb::singleton(
                                FramedChordDiagram::from_parts(
                                    k.word().to_vec(),
                                    vec![0; k.order()],
                                )
                                .unwrap(),
                            )
                        });
                        assert!(
                            blackened.is_zero() || oracle.contains(&blackened),
                            "zero-framed type-(a) instance escapes the classical span"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn every_generator_lies_in_its_own_span() {
        // Tautological, but exercises canonicalization end to end.
        let basis = FramedChordDiagram::enumerate(3, true);
        let rels = fourt_diagram_relations(3, true);
        let oracle = crate::linalg::SpanOracle::new(&basis, &rels.vectors);
        for v in &rels.vectors {
            assert!(oracle.contains(v));
        }
    }

    #[test]
    fn triplet_export_roundtrip_shape() {
        let rels = fourt_diagram_relations(2, true);
        let basis = FramedChordDiagram::enumerate(2, true);
        let text = relations_to_triplet_text(&rels.vectors, &basis, basis.len());
        assert!(text.starts_with("1 6\n"));
        assert!(text.ends_with("0 0 0\n"));
        let idx = basis_index_text(&basis, |k| k.code());
        assert_eq!(idx.lines().count(), 6);
    }
}
