//! The intersection-graph map from framed chord diagrams to framed graphs:
//! one vertex per chord, an edge when two chords interlace, framings
//! inherited.

use crate::diagram::FramedChordDiagram;
use crate::graph::FramedGraph;
use crate::lincomb::LinComb;

/// Intersection graph of a framed chord diagram. Two chords interlace when
/// their endpoints alternate around the circle.
pub fn intersection_graph(d: &FramedChordDiagram) -> FramedGraph {
    let n = d.order();
    let word = d.word();
    let mut first = vec![usize::MAX; n];
    let mut second = vec![usize::MAX; n];
    for (pos, &c) in word.iter().enumerate() {
        if first[c as usize] == usize::MAX {
            first[c as usize] = pos;
        } else {
            second[c as usize] = pos;
        }
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let inside = |p: usize| first[a] < p && p < second[a];
            if inside(first[b]) != inside(second[b]) {
                edges.push((a, b));
            }
        }
    }
    FramedGraph::from_parts(d.framing().to_vec(), &edges).expect("chords form a simple graph")
}

/// Linear extension of the intersection-graph map.
pub fn intersection_lincomb(v: &LinComb<FramedChordDiagram>) -> LinComb<FramedGraph> {
    v.map(|d| LinComb::singleton(intersection_graph(d)))
}
