//! Rewriting framed diagrams and framed graphs as combinations of
//! black-by-white products, with a strictly decreasing complexity measure
//! driving termination.
//!
//! For diagrams the measure is `5^b (b-1)!/w! * sum_h r_p(h)` where `r_p(h)`
//! is the remoteness of an oriented endpoint `h` from the base point `p`;
//! for graphs it is `2^b (b-1)!/w! * N` with `N` the number of edges joining
//! vertices of different framing. Monochrome inputs bypass the formula.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::diagram::FramedChordDiagram;
use crate::error::{Error, Result};
use crate::graph::FramedGraph;
use crate::lincomb::LinComb;
use crate::{qi, Q};

/// One rewrite event: the complexity before, the complexity of one emitted
/// child, and an identifier of the relation applied.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub before: Q,
    pub after: Q,
    pub relation: String,
}

/// Result of reducing a framed chord diagram: the output combination (every
/// term a black-by-white product) together with the rewrite trace and the
/// factorization of each term.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub input: FramedChordDiagram,
    pub steps: Vec<TraceStep>,
    pub output: LinComb<FramedChordDiagram>,
    pub factors: Vec<(Q, FramedChordDiagram, FramedChordDiagram)>,
}

/// Graph counterpart of [`ReductionTrace`]; output terms factor as disjoint
/// unions of a black graph and a white graph.
#[derive(Clone, Debug)]
pub struct GraphReductionTrace {
    pub input: FramedGraph,
    pub steps: Vec<TraceStep>,
    pub output: LinComb<FramedGraph>,
    pub factors: Vec<(Q, FramedGraph, FramedGraph)>,
}

/// Step lines `before -> after : relation`, then the output combination in
/// the standard serialization.
pub fn trace_text(steps: &[TraceStep], output_text: &str) -> String {
    let mut out = String::new();
    for s in steps {
        out.push_str(&format!(
            "{} -> {} : {}\n",
            rational_str(&s.before),
            rational_str(&s.after),
            s.relation
        ));
    }
    out.push_str(output_text);
    out.push('\n');
    out
}

fn rational_str(q: &Q) -> String {
    if q.denom() == &BigInt::one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// ---------------------------------------------------------------------------
// Diagram side.

/// Remoteness of the endpoint at position `h` from the base point sitting in
/// the gap before position `gap`: the number of disorienting-chord endpoints
/// met strictly between `h` and the gap when traveling with the orientation.
pub fn remoteness(d: &FramedChordDiagram, gap: usize, h: usize) -> Result<usize> {
    let len = d.word().len();
    if h >= len {
        return Err(Error::ChordIndex {
            index: h,
            order: d.order(),
        });
    }
    if d.framing_of(d.word()[h] as usize) != 0 {
        return Err(Error::NotOrientedEndpoint { position: h });
    }
    Ok(remoteness_raw(d.word(), d.framing(), gap % len.max(1), h))
}

fn remoteness_raw(word: &[u8], framing: &[u8], gap: usize, h: usize) -> usize {
    let len = word.len();
    let mut count = 0;
    let mut k = (h + 1) % len;
    while k != gap {
        if framing[word[k] as usize] == 1 {
            count += 1;
        }
        k = (k + 1) % len;
    }
    count
}

/// Complexity of a diagram with respect to the base point in the gap before
/// position `gap`. Zero when there are no oriented chords (the formula does
/// not apply) and zero exactly when every oriented endpoint has remoteness
/// zero.
pub fn complexity_diagram(d: &FramedChordDiagram, gap: usize) -> Q {
    complexity_raw(d.word(), d.framing(), gap)
}

fn complexity_raw(word: &[u8], framing: &[u8], gap: usize) -> Q {
    let b = framing.iter().filter(|&&f| f == 0).count();
    let w = framing.len() - b;
    if b == 0 {
        return Q::zero();
    }
    let mut total = 0usize;
    for (pos, &c) in word.iter().enumerate() {
        if framing[c as usize] == 0 {
            total += remoteness_raw(word, framing, gap % word.len(), pos);
        }
    }
    unit_complexity(b, w) * qi(total as i64)
}

/// `5^b (b-1)! / w!`, the minimal nonzero complexity for the given counts.
pub fn unit_complexity(b: usize, w: usize) -> Q {
    assert!(b >= 1, "complexity formula needs an oriented chord");
    let mut num = BigInt::one();
    for _ in 0..b {
        num *= 5;
    }
    for k in 2..b {
        num *= k;
    }
    let mut den = BigInt::one();
    for k in 2..=w.max(1) {
        den *= k;
    }
    Q::new(num, den)
}

/// Rewrites a framed diagram as a combination of black-by-white products.
/// The base point is the start of the canonical code and is inherited by
/// every child; each rewrite uses the relation that jumps the last oriented
/// endpoint of positive remoteness across the disorienting endpoint right
/// after it, which decreases the complexity strictly (asserted at runtime).
pub fn reduce_diagram(d: &FramedChordDiagram) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut output = LinComb::zero();
    let mut factors: BTreeMap<(FramedChordDiagram, FramedChordDiagram), Q> = BTreeMap::new();
    reduce_pointed(
        d.word().to_vec(),
        d.framing().to_vec(),
        Q::one(),
        &mut steps,
        &mut output,
        &mut factors,
    );
    let factors = factors
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((black, white), c)| (c, black, white))
        .collect();
    ReductionTrace {
        input: d.clone(),
        steps,
        output,
        factors,
    }
}

fn reduce_pointed(
    word: Vec<u8>,
    framing: Vec<u8>,
    coeff: Q,
    steps: &mut Vec<TraceStep>,
    output: &mut LinComb<FramedChordDiagram>,
    factors: &mut BTreeMap<(FramedChordDiagram, FramedChordDiagram), Q>,
) {
    let complexity = complexity_raw(&word, &framing, 0);
    if complexity.is_zero() {
        // All oriented endpoints precede the base point without disorienting
        // endpoints after them: the word splits as (white arc)(black arc).
        let diagram = FramedChordDiagram::from_parts(word, framing).expect("valid pointed diagram");
        let n = diagram.order();
        let oriented: Vec<bool> = (0..n).map(|k| diagram.framing_of(k) == 0).collect();
        let disorienting: Vec<bool> = oriented.iter().map(|&b| !b).collect();
        let black = diagram.restrict(&oriented).expect("valid restriction");
        let white = diagram.restrict(&disorienting).expect("valid restriction");
        output.add_term(diagram, coeff.clone());
        let entry = factors.entry((black, white)).or_insert_with(Q::zero);
        *entry += coeff;
        return;
    }

    // The last oriented endpoint with positive remoteness is immediately
    // followed by a disorienting endpoint.
    let len = word.len();
    let i = (0..len - 1)
        .rev()
        .find(|&i| framing[word[i] as usize] == 0 && framing[word[i + 1] as usize] == 1)
        .expect("positive complexity forces an oriented-disorienting adjacency");
    let jumper = word[i];
    let fixed = word[i + 1];
    let relation = format!("4Tb@{}:chord{}-over-chord{}", i, jumper + 1, fixed + 1);

    // Child 1: jump across the near endpoint of the fixed chord; the jumper
    // stays oriented and its remoteness drops by one.
    let mut w1 = word.clone();
    w1.swap(i, i + 1);
    let f1 = framing.clone();

    // Children 2 and 3: the jumper moves next to the far endpoint of the
    // fixed chord and becomes disorienting.
    let far = (0..len)
        .find(|&k| k != i + 1 && word[k] == fixed)
        .expect("second endpoint of the fixed chord");
    let mut background = word.clone();
    background.remove(i);
    let far_bg = if far > i { far - 1 } else { far };
    let mut flipped = framing.clone();
    flipped[jumper as usize] = 1;

    let mut w2 = background.clone();
    w2.insert(far_bg, jumper); // just before the far endpoint
    let mut w3 = background;
    w3.insert(far_bg + 1, jumper); // just after the far endpoint

    let children: [(Vec<u8>, Vec<u8>, Q); 3] = [
        (w1, f1, coeff.clone()),
        (w2, flipped.clone(), coeff.clone()),
        (w3, flipped, -coeff),
    ];
    for (w, f, c) in children {
        let child_complexity = complexity_raw(&w, &f, 0);
        assert!(
            child_complexity < complexity,
            "complexity must decrease strictly: {} -> {} via {}",
            complexity,
            child_complexity,
            relation
        );
        steps.push(TraceStep {
            before: complexity.clone(),
            after: child_complexity,
            relation: relation.clone(),
        });
        reduce_pointed(w, f, c, steps, output, factors);
    }
}

// ---------------------------------------------------------------------------
// Graph side.

/// Complexity `2^b (b-1)!/w! * N` with `N` the number of edges joining
/// vertices of different framings; zero for all-white graphs where the
/// formula does not apply.
pub fn complexity_graph(g: &FramedGraph) -> Q {
    let b = g.black_count();
    let w = g.white_count();
    if b == 0 {
        return Q::zero();
    }
    let bichromatic = g
        .edges()
        .iter()
        .filter(|&&(u, v)| g.framing_of(u) != g.framing_of(v))
        .count();
    graph_unit_complexity(b, w) * qi(bichromatic as i64)
}

/// `2^b (b-1)! / w!`.
pub fn graph_unit_complexity(b: usize, w: usize) -> Q {
    assert!(b >= 1);
    let mut num = BigInt::one();
    for _ in 0..b {
        num *= 2;
    }
    for k in 2..b {
        num *= k;
    }
    let mut den = BigInt::one();
    for k in 2..=w.max(1) {
        den *= k;
    }
    Q::new(num, den)
}

/// Rewrites a framed graph as a combination of disjoint unions of a black
/// graph and a white graph, applying the relation at a bichromatic edge with
/// the white endpoint as the fixed vertex.
pub fn reduce_graph(g: &FramedGraph) -> GraphReductionTrace {
    let mut steps = Vec::new();
    let mut output = LinComb::zero();
    let mut factors: BTreeMap<(FramedGraph, FramedGraph), Q> = BTreeMap::new();
    reduce_graph_rec(g.clone(), Q::one(), &mut steps, &mut output, &mut factors);
    let factors = factors
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((black, white), c)| (c, black, white))
        .collect();
    GraphReductionTrace {
        input: g.clone(),
        steps,
        output,
        factors,
    }
}

fn reduce_graph_rec(
    g: FramedGraph,
    coeff: Q,
    steps: &mut Vec<TraceStep>,
    output: &mut LinComb<FramedGraph>,
    factors: &mut BTreeMap<(FramedGraph, FramedGraph), Q>,
) {
    let complexity = complexity_graph(&g);
    let bichromatic = g
        .edges()
        .into_iter()
        .find(|&(u, v)| g.framing_of(u) != g.framing_of(v));
    let Some((e1, e2)) = bichromatic else {
        // No black-white edges: the graph splits as (black part) u (white
        // part).
        let n = g.n();
        let blacks: Vec<bool> = (0..n).map(|v| g.framing_of(v) == 0).collect();
        let whites: Vec<bool> = blacks.iter().map(|&b| !b).collect();
        let black = g.restrict(&blacks).expect("valid restriction");
        let white = g.restrict(&whites).expect("valid restriction");
        output.add_term(g, coeff.clone());
        let entry = factors.entry((black, white)).or_insert_with(Q::zero);
        *entry += coeff;
        return;
    };

    // Jumper u is the black endpoint, fixed v the white one.
    let (u, v) = if g.framing_of(e1) == 0 {
        (e1, e2)
    } else {
        (e2, e1)
    };
    let relation = format!("4Tg:{}-over-{}", u + 1, v + 1);

    let n = g.n();
    let framing = g.framing().to_vec();
    let edges = g.edges();
    let minus_uv: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)))
        .collect();
    let mut toggled: std::collections::BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    for w in 0..n {
        if w != u && w != v && g.has_edge(v, w) {
            let key = (u.min(w), u.max(w));
            if !toggled.remove(&key) {
                toggled.insert(key);
            }
        }
    }
    let toggled: Vec<(usize, usize)> = toggled.into_iter().collect();
    let toggled_minus_uv: Vec<(usize, usize)> = toggled
        .iter()
        .copied()
        .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)))
        .collect();
    let mut white_framing = framing.clone();
    white_framing[u] = 1;

    // G = G' - G~ + G~' for a white fixed vertex.
    let children = [
        (
            FramedGraph::from_parts(framing, &minus_uv).expect("valid"),
            coeff.clone(),
        ),
        (
            FramedGraph::from_parts(white_framing.clone(), &toggled).expect("valid"),
            -coeff.clone(),
        ),
        (
            FramedGraph::from_parts(white_framing, &toggled_minus_uv).expect("valid"),
            coeff,
        ),
    ];
    for (child, c) in children {
        let child_complexity = complexity_graph(&child);
        assert!(
            child_complexity < complexity,
            "graph complexity must decrease strictly: {} -> {} via {}",
            complexity,
            child_complexity,
            relation
        );
        steps.push(TraceStep {
            before: complexity.clone(),
            after: child_complexity,
            relation: relation.clone(),
        });
        reduce_graph_rec(child, c, steps, output, factors);
    }
}
