//! Algebra, coalgebra, module and comodule structure maps on the diagram
//! and graph spaces, the discoloration operator, the graph antipode, and
//! framed weight-system constructors.
//!
//! Tensors are encoded as linear combinations over ordered pairs of
//! canonical codes; nothing deeper than two legs is ever needed except for
//! the coassociativity checks, which nest pairs.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::chromatic::{BivarPoly, ChromaticEngine};
use crate::diagram::FramedChordDiagram;
use crate::error::{Error, Result};
use crate::graph::FramedGraph;
use crate::intersection::intersection_graph;
use crate::lincomb::LinComb;
use crate::{qi, Q};

pub type DiagramPair = (FramedChordDiagram, FramedChordDiagram);
pub type GraphPair = (FramedGraph, FramedGraph);

// ---------------------------------------------------------------------------
// Products.

/// Glues a black diagram `c` to a framed diagram `d`: both circles are cut
/// just before the first position of their canonical words and the arcs are
/// concatenated, `c` first. Well-defined in the quotient regardless of the
/// cut points; this convention makes the representative deterministic.
pub fn glue_diagrams(c: &FramedChordDiagram, d: &FramedChordDiagram) -> Result<FramedChordDiagram> {
    if !c.is_black() {
        return Err(Error::NonBlackFactor);
    }
    let k = c.order() as u8;
    let mut word: Vec<u8> = c.word().to_vec();
    word.extend(d.word().iter().map(|&l| l + k));
    let mut framing = c.framing().to_vec();
    framing.extend_from_slice(d.framing());
    FramedChordDiagram::from_parts(word, framing)
}

/// Gluing at arbitrary cut points (rotations of the two factors); used to
/// check that the product is independent of the convention in the quotient.
pub fn glue_diagrams_at(
    c: &FramedChordDiagram,
    d: &FramedChordDiagram,
    cut_c: usize,
    cut_d: usize,
) -> Result<FramedChordDiagram> {
    if !c.is_black() {
        return Err(Error::NonBlackFactor);
    }
    let k = c.order() as u8;
    let lc = c.word().len();
    let ld = d.word().len();
    let mut word = Vec::with_capacity(lc + ld);
    for i in 0..lc {
        word.push(c.word()[(cut_c + i) % lc]);
    }
    for i in 0..ld {
        word.push(d.word()[(cut_d + i) % ld] + k);
    }
    let mut framing = c.framing().to_vec();
    framing.extend_from_slice(d.framing());
    FramedChordDiagram::from_parts(word, framing)
}

/// Bilinear extension of the black-by-framed product.
pub fn module_mul_diagram(
    c: &LinComb<FramedChordDiagram>,
    d: &LinComb<FramedChordDiagram>,
) -> Result<LinComb<FramedChordDiagram>> {
    let mut out = LinComb::zero();
    for (ck, cc) in c.iter() {
        for (dk, dc) in d.iter() {
            out.add_term(glue_diagrams(ck, dk)?, cc * dc);
        }
    }
    Ok(out)
}

/// Product on graphs: disjoint union, bilinear.
pub fn graph_mul(a: &FramedGraph, b: &FramedGraph) -> FramedGraph {
    a.disjoint_union(b).expect("union within bounds")
}

pub fn graph_mul_lincomb(
    a: &LinComb<FramedGraph>,
    b: &LinComb<FramedGraph>,
) -> LinComb<FramedGraph> {
    let mut out = LinComb::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            out.add_term(graph_mul(ka, kb), ca * cb);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Coproducts.

/// Coproduct on diagrams: sum of `d_I (x) d_J` over all splits of the chord
/// set into complementary subsets.
pub fn coproduct_diagram(d: &FramedChordDiagram) -> LinComb<DiagramPair> {
    let n = d.order();
    let mut out = LinComb::zero();
    for mask in 0u32..(1 << n) {
        let keep: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
        let complement: Vec<bool> = keep.iter().map(|&b| !b).collect();
        let left = d.restrict(&keep).expect("valid subset");
        let right = d.restrict(&complement).expect("valid subset");
        out.add_term((left, right), Q::one());
    }
    out
}

/// Coproduct on graphs over vertex-set splits, with induced subgraphs.
pub fn coproduct_graph(g: &FramedGraph) -> LinComb<GraphPair> {
    let n = g.n();
    let mut out = LinComb::zero();
    for mask in 0u32..(1 << n) {
        let keep: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
        let complement: Vec<bool> = keep.iter().map(|&b| !b).collect();
        let left = g.restrict(&keep).expect("valid subset");
        let right = g.restrict(&complement).expect("valid subset");
        out.add_term((left, right), Q::one());
    }
    out
}

// ---------------------------------------------------------------------------
// Projections and comodule maps.

/// Keeps only the all-black basis terms.
pub fn project_black_diagram(v: &LinComb<FramedChordDiagram>) -> LinComb<FramedChordDiagram> {
    LinComb::from_terms(
        v.iter()
            .filter(|(k, _)| k.is_black())
            .map(|(k, c)| (k.clone(), c.clone())),
    )
}

pub fn project_black_graph(v: &LinComb<FramedGraph>) -> LinComb<FramedGraph> {
    LinComb::from_terms(
        v.iter()
            .filter(|(k, _)| k.is_black())
            .map(|(k, c)| (k.clone(), c.clone())),
    )
}

/// Comodule map on diagrams: `(Pr (x) id) . Delta`, realized directly as the
/// sum over subsets of the oriented chords.
pub fn delta_diagram(d: &FramedChordDiagram) -> LinComb<DiagramPair> {
    let n = d.order();
    let oriented: Vec<usize> = (0..n).filter(|&k| d.framing_of(k) == 0).collect();
    let mut out = LinComb::zero();
    for mask in 0u32..(1 << oriented.len()) {
        let mut keep = vec![false; n];
        for (bit, &chord) in oriented.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                keep[chord] = true;
            }
        }
        let complement: Vec<bool> = keep.iter().map(|&b| !b).collect();
        let left = d.restrict(&keep).expect("valid subset");
        let right = d.restrict(&complement).expect("valid subset");
        out.add_term((left, right), Q::one());
    }
    out
}

/// Comodule map on graphs: sum over subsets of the black vertices.
pub fn delta_graph(g: &FramedGraph) -> LinComb<GraphPair> {
    let n = g.n();
    let blacks: Vec<usize> = (0..n).filter(|&v| g.framing_of(v) == 0).collect();
    let mut out = LinComb::zero();
    for mask in 0u32..(1 << blacks.len()) {
        let mut keep = vec![false; n];
        for (bit, &v) in blacks.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                keep[v] = true;
            }
        }
        let complement: Vec<bool> = keep.iter().map(|&b| !b).collect();
        let left = g.restrict(&keep).expect("valid subset");
        let right = g.restrict(&complement).expect("valid subset");
        out.add_term((left, right), Q::one());
    }
    out
}

// ---------------------------------------------------------------------------
// Discoloration.

/// `D(d) = (-1)^w d'` where `w` counts disorienting chords and `d'` has all
/// framings set to zero; linearly extended.
pub fn discolor(v: &LinComb<FramedChordDiagram>) -> LinComb<FramedChordDiagram> {
    let mut out = LinComb::zero();
    for (d, c) in v.iter() {
        let w = d.disorienting_count();
        let black = FramedChordDiagram::from_parts(d.word().to_vec(), vec![0; d.order()])
            .expect("valid diagram");
        let sign = if w % 2 == 0 { qi(1) } else { qi(-1) };
        out.add_term(black, c * sign);
    }
    out
}

/// The second comodule map `(D (x) id) . Delta`: every chord subset
/// contributes, with the left factor discolored.
pub fn delta_prime_diagram(d: &FramedChordDiagram) -> LinComb<DiagramPair> {
    let mut out = LinComb::zero();
    for ((left, right), c) in coproduct_diagram(d)
        .iter()
        .map(|(k, c)| (k.clone(), c.clone()))
    {
        let w = left.disorienting_count();
        let sign = if w % 2 == 0 { qi(1) } else { qi(-1) };
        let black = FramedChordDiagram::from_parts(left.word().to_vec(), vec![0; left.order()])
            .expect("valid diagram");
        out.add_term((black, right), c * sign);
    }
    out
}

// ---------------------------------------------------------------------------
// Unit and counit.

/// Coefficient of the empty element.
pub fn counit_diagram(v: &LinComb<FramedChordDiagram>) -> Q {
    v.coeff(&FramedChordDiagram::empty())
}

pub fn counit_graph(v: &LinComb<FramedGraph>) -> Q {
    v.coeff(&FramedGraph::empty())
}

/// `scalar * (empty element)`.
pub fn unit_diagram(scalar: &Q) -> LinComb<FramedChordDiagram> {
    LinComb::singleton(FramedChordDiagram::empty()).scale(scalar)
}

pub fn unit_graph(scalar: &Q) -> LinComb<FramedGraph> {
    LinComb::singleton(FramedGraph::empty()).scale(scalar)
}

// ---------------------------------------------------------------------------
// Antipode on the graph Hopf algebra.

/// Antipode by the connected graded recursion: `S(empty) = empty` and
/// `S(G) = -G - sum S(G_I) . G_J` over proper nonempty vertex splits.
pub fn antipode_graph(g: &FramedGraph) -> LinComb<FramedGraph> {
    let mut memo = HashMap::new();
    antipode_memo(g, &mut memo)
}

pub fn antipode_graph_lincomb(v: &LinComb<FramedGraph>) -> LinComb<FramedGraph> {
    let mut memo = HashMap::new();
    let mut out = LinComb::zero();
    for (g, c) in v.iter() {
        out = out.add(&antipode_memo(g, &mut memo).scale(c));
    }
    out
}

fn antipode_memo(
    g: &FramedGraph,
    memo: &mut HashMap<FramedGraph, LinComb<FramedGraph>>,
) -> LinComb<FramedGraph> {
    if g.n() == 0 {
        return LinComb::singleton(FramedGraph::empty());
    }
    if let Some(hit) = memo.get(g) {
        return hit.clone();
    }
    let n = g.n();
    let mut acc = LinComb::singleton(g.clone()).neg();
    for mask in 1u32..((1 << n) - 1) {
        let keep: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
        let complement: Vec<bool> = keep.iter().map(|&b| !b).collect();
        let left = g.restrict(&keep).expect("valid subset");
        let right = g.restrict(&complement).expect("valid subset");
        let s_left = antipode_memo(&left, memo);
        for (k, c) in s_left.iter() {
            acc.add_term(graph_mul(k, &right), -c.clone());
        }
    }
    memo.insert(g.clone(), acc.clone());
    acc
}

// ---------------------------------------------------------------------------
// The module structure on tensors.

/// The action of a black diagram `c` on pair terms: with `Delta(c) = sum
/// c_I (x) c_J`, each term `h (x) v` goes to `sum (c_I h) (x) (c_J v)`.
pub fn tensor_action_diagram(
    c: &FramedChordDiagram,
    t: &LinComb<DiagramPair>,
) -> Result<LinComb<DiagramPair>> {
    if !c.is_black() {
        return Err(Error::NonBlackFactor);
    }
    let split = coproduct_diagram(c);
    let mut out = LinComb::zero();
    for ((h, v), tc) in t.iter().map(|(k, c)| (k.clone(), c.clone())) {
        for ((ci, cj), sc) in split.iter().map(|(k, c)| (k.clone(), c.clone())) {
            let left = glue_diagrams(&ci, &h)?;
            let right = glue_diagrams(&cj, &v)?;
            out.add_term((left, right), &tc * &sc);
        }
    }
    Ok(out)
}

/// Graph version of the tensor action, with disjoint unions.
pub fn tensor_action_graph(c: &FramedGraph, t: &LinComb<GraphPair>) -> Result<LinComb<GraphPair>> {
    if !c.is_black() {
        return Err(Error::NonBlackFactor);
    }
    let split = coproduct_graph(c);
    let mut out = LinComb::zero();
    for ((h, v), tc) in t.iter().map(|(k, c)| (k.clone(), c.clone())) {
        for ((ci, cj), sc) in split.iter().map(|(k, c)| (k.clone(), c.clone())) {
            out.add_term((graph_mul(&ci, &h), graph_mul(&cj, &v)), &tc * &sc);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Weight systems.

/// Value of a weight system: a rational scalar, a bivariate polynomial, or a
/// formal combination over an opaque basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WsValue {
    Scalar(Q),
    Poly(BivarPoly),
    Formal(LinComb<String>),
}

impl WsValue {
    pub fn zero_scalar() -> Self {
        WsValue::Scalar(Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            WsValue::Scalar(q) => q.is_zero(),
            WsValue::Poly(p) => p.is_zero(),
            WsValue::Formal(v) => v.is_zero(),
        }
    }

    pub fn scale(&self, f: &Q) -> Self {
        match self {
            WsValue::Scalar(q) => WsValue::Scalar(q * f),
            WsValue::Poly(p) => WsValue::Poly(p.scale(f)),
            WsValue::Formal(v) => WsValue::Formal(v.scale(f)),
        }
    }

    /// Addition. A zero scalar acts as the neutral element for every value
    /// kind, so linear extensions can start from it.
    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (WsValue::Scalar(a), WsValue::Scalar(b)) => WsValue::Scalar(a + b),
            (WsValue::Poly(a), WsValue::Poly(b)) => WsValue::Poly(a.add(b)),
            (WsValue::Formal(a), WsValue::Formal(b)) => WsValue::Formal(a.add(b)),
            (WsValue::Scalar(a), other) if a.is_zero() => other.clone(),
            (other, WsValue::Scalar(b)) if b.is_zero() => other.clone(),
            _ => panic!("mixed weight-system value kinds"),
        }
    }

    /// Extracts a scalar; panics on non-scalar values.
    pub fn expect_scalar(&self) -> Q {
        match self {
            WsValue::Scalar(q) => q.clone(),
            _ => panic!("expected a scalar weight-system value"),
        }
    }
}

/// Domain tag for a weight system.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WsDomain {
    ChordAlgebra,
    FramedDiagrams,
    GraphAlgebra,
    FramedGraphs,
}

/// A linear functional on one of the four spaces, given by its values on
/// canonical basis elements and extended linearly. Well-definedness on the
/// quotient (vanishing on the relation vectors) is a testable property, not
/// an invariant enforced here.
#[derive(Clone)]
pub struct WeightSystem<B: Ord + Clone> {
    pub domain: WsDomain,
    eval: Rc<dyn Fn(&B) -> WsValue>,
}

impl<B: Ord + Clone> WeightSystem<B> {
    pub fn from_fn(domain: WsDomain, f: impl Fn(&B) -> WsValue + 'static) -> Self {
        WeightSystem {
            domain,
            eval: Rc::new(f),
        }
    }

    pub fn eval_basis(&self, b: &B) -> WsValue {
        (self.eval)(b)
    }

    pub fn eval(&self, v: &LinComb<B>) -> WsValue {
        let mut acc = WsValue::zero_scalar();
        for (k, c) in v.iter() {
            acc = acc.add(&self.eval_basis(k).scale(c));
        }
        acc
    }
}

/// The counit as a weight system on diagrams (1 on the empty diagram).
pub fn counit_ws_diagram(domain: WsDomain) -> WeightSystem<FramedChordDiagram> {
    WeightSystem::from_fn(domain, |d: &FramedChordDiagram| {
        WsValue::Scalar(if d.order() == 0 { Q::one() } else { Q::zero() })
    })
}

/// Lifts a weight system on the chord-diagram algebra to framed diagrams by
/// precomposing with discoloration.
pub fn ws_from_discoloration(
    w: &WeightSystem<FramedChordDiagram>,
) -> WeightSystem<FramedChordDiagram> {
    let w = w.clone();
    WeightSystem::from_fn(WsDomain::FramedDiagrams, move |d: &FramedChordDiagram| {
        w.eval(&discolor(&LinComb::singleton(d.clone())))
    })
}

/// Pulls a linear map on framed graphs back to framed diagrams along the
/// intersection-graph map.
pub fn ws_from_graph_map(w: &WeightSystem<FramedGraph>) -> WeightSystem<FramedChordDiagram> {
    let w = w.clone();
    WeightSystem::from_fn(WsDomain::FramedDiagrams, move |d: &FramedChordDiagram| {
        w.eval_basis(&intersection_graph(d))
    })
}

/// The framed chromatic polynomial as a polynomial-valued weight system.
pub fn chromatic_ws() -> WeightSystem<FramedGraph> {
    let engine = std::cell::RefCell::new(ChromaticEngine::new());
    WeightSystem::from_fn(WsDomain::FramedGraphs, move |g: &FramedGraph| {
        WsValue::Poly(engine.borrow_mut().chromatic(g))
    })
}

/// Convolution of a scalar-valued weight system on the chord algebra with a
/// framed weight system, through the comodule map:
/// `d -> sum w(d_I) * w'(d'_I)` over subsets of oriented chords.
pub fn convolution_ws(
    w: &WeightSystem<FramedChordDiagram>,
    w_framed: &WeightSystem<FramedChordDiagram>,
) -> WeightSystem<FramedChordDiagram> {
    let w = w.clone();
    let w_framed = w_framed.clone();
    WeightSystem::from_fn(WsDomain::FramedDiagrams, move |d: &FramedChordDiagram| {
        let mut acc = WsValue::zero_scalar();
        for ((left, right), c) in delta_diagram(d).iter().map(|(k, c)| (k.clone(), c.clone())) {
            let scalar = w.eval_basis(&left).expect_scalar();
            acc = acc.add(&w_framed.eval_basis(&right).scale(&(scalar * c)));
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(code: &str) -> FramedChordDiagram {
        FramedChordDiagram::parse(code).unwrap()
    }

    fn single(code: &str) -> LinComb<FramedChordDiagram> {
        LinComb::singleton(d(code))
    }

    #[test]
    fn glue_examples() {
        let empty = FramedChordDiagram::empty();
        assert_eq!(
            glue_diagrams(&empty, &d("1 2 1 2;01")).unwrap(),
            d("1 2 1 2;01")
        );
        assert_eq!(
            glue_diagrams(&d("1 1;0"), &d("1 1;1")).unwrap(),
            d("1 1 2 2;01")
        );
        assert_eq!(
            glue_diagrams(&d("1 2 1 2;00"), &d("1 1;1")).unwrap(),
            d("1 2 1 2 3 3;001")
        );
        assert!(glue_diagrams(&d("1 1;1"), &d("1 1;0")).is_err());
    }

    #[test]
    fn coproduct_crossing() {
        let dd = d("1 2 1 2;01");
        let cp = coproduct_diagram(&dd);
        assert_eq!(cp.len(), 4);
        let e = FramedChordDiagram::empty();
        assert_eq!(cp.coeff(&(dd.clone(), e.clone())), qi(1));
        assert_eq!(cp.coeff(&(e.clone(), dd.clone())), qi(1));
        assert_eq!(cp.coeff(&(d("1 1;0"), d("1 1;1"))), qi(1));
        assert_eq!(cp.coeff(&(d("1 1;1"), d("1 1;0"))), qi(1));
    }

    #[test]
    fn coproduct_single_chord() {
        let c = d("1 1;0");
        let cp = coproduct_diagram(&c);
        let e = FramedChordDiagram::empty();
        assert_eq!(cp.len(), 2);
        assert_eq!(cp.coeff(&(c.clone(), e.clone())), qi(1));
        assert_eq!(cp.coeff(&(e, c.clone())), qi(1));
    }

    #[test]
    fn coproduct_graph_edge() {
        let g = FramedGraph::parse("2;01;1-2").unwrap();
        let cp = coproduct_graph(&g);
        assert_eq!(cp.len(), 4);
        let e = FramedGraph::empty();
        let b = FramedGraph::parse("1;0;").unwrap();
        let w = FramedGraph::parse("1;1;").unwrap();
        assert_eq!(cp.coeff(&(g.clone(), e.clone())), qi(1));
        assert_eq!(cp.coeff(&(e, g.clone())), qi(1));
        assert_eq!(cp.coeff(&(b.clone(), w.clone())), qi(1));
        assert_eq!(cp.coeff(&(w, b)), qi(1));
    }

    #[test]
    fn projection() {
        assert_eq!(
            project_black_diagram(&single("1 1 2 2;00")),
            single("1 1 2 2;00")
        );
        assert!(project_black_diagram(&single("1 1 2 2;11")).is_zero());
        assert!(project_black_diagram(&single("1 2 1 2;01")).is_zero());
    }

    #[test]
    fn delta_examples() {
        // White diagrams are covariant: delta(w) = empty (x) w.
        let w = d("1 1 2 2;11");
        let dp = delta_diagram(&w);
        assert_eq!(dp.len(), 1);
        assert_eq!(dp.coeff(&(FramedChordDiagram::empty(), w.clone())), qi(1));

        let c = d("1 1;0");
        let dc = delta_diagram(&c);
        assert_eq!(dc.len(), 2);

        let mixed = d("1 2 1 2;01");
        let dm = delta_diagram(&mixed);
        assert_eq!(dm.len(), 2);
        assert_eq!(
            dm.coeff(&(FramedChordDiagram::empty(), mixed.clone())),
            qi(1)
        );
        assert_eq!(dm.coeff(&(d("1 1;0"), d("1 1;1"))), qi(1));
    }

    #[test]
    fn discoloration_examples() {
        assert_eq!(discolor(&single("1 1 2 2;00")), single("1 1 2 2;00"));
        assert_eq!(discolor(&single("1 1;1")), single("1 1;0").neg());
        assert_eq!(discolor(&single("1 2 1 2;11")), single("1 2 1 2;00"));
    }

    #[test]
    fn delta_prime_examples() {
        let w = d("1 1;1");
        let dp = delta_prime_diagram(&w);
        assert_eq!(dp.coeff(&(d("1 1;0"), FramedChordDiagram::empty())), qi(-1));
        assert_eq!(dp.coeff(&(FramedChordDiagram::empty(), w.clone())), qi(1));
        assert_eq!(dp.len(), 2);

        let c = d("1 1;0");
        assert_eq!(delta_prime_diagram(&c), delta_diagram(&c));

        let e = FramedChordDiagram::empty();
        let de = delta_prime_diagram(&e);
        assert_eq!(de.coeff(&(e.clone(), e.clone())), qi(1));
        assert_eq!(de.len(), 1);
    }

    #[test]
    fn counit_unit() {
        let e = LinComb::singleton(FramedChordDiagram::empty());
        assert_eq!(counit_diagram(&e), qi(1));
        assert_eq!(counit_diagram(&single("1 1;0")), qi(0));
        let q = crate::qr(3, 7);
        assert_eq!(counit_diagram(&unit_diagram(&q)), q);
    }

    #[test]
    fn antipode_small() {
        let e = FramedGraph::empty();
        assert_eq!(antipode_graph(&e), LinComb::singleton(e.clone()));
        let v = FramedGraph::parse("1;0;").unwrap();
        assert_eq!(antipode_graph(&v), LinComb::singleton(v.clone()).neg());
        // Two isolated black vertices: S(G) = -G - 2 S(pt) pt = -G + 2 pt^2
        // and pt^2 = G, so S(G) = G.
        let g2 = FramedGraph::parse("2;00;").unwrap();
        assert_eq!(antipode_graph(&g2), LinComb::singleton(g2.clone()));
    }

    #[test]
    fn antipode_defining_identity_small() {
        for n in 0..=3 {
            for g in FramedGraph::enumerate(n, true) {
                let mut acc: LinComb<FramedGraph> = LinComb::zero();
                for ((l, r), c) in coproduct_graph(&g)
                    .iter()
                    .map(|(k, c)| (k.clone(), c.clone()))
                {
                    for (k, sc) in antipode_graph(&l).iter() {
                        acc.add_term(graph_mul(k, &r), sc * &c);
                    }
                }
                let expected = unit_graph(&counit_graph(&LinComb::singleton(g.clone())));
                assert_eq!(acc, expected, "antipode identity fails on {}", g.code());
            }
        }
    }

    #[test]
    fn tensor_action_unit() {
        let e = FramedChordDiagram::empty();
        let t = LinComb::singleton((d("1 1;0"), d("1 1;1")));
        assert_eq!(tensor_action_diagram(&e, &t).unwrap(), t);
    }

    #[test]
    fn compatibility_instance() {
        // delta(m(c, d)) = m_tensor(c, delta(d)) for c = "1 1;0", d = "1 1;1".
        let c = d("1 1;0");
        let dd = d("1 1;1");
        let left = delta_diagram(&glue_diagrams(&c, &dd).unwrap());
        let right = tensor_action_diagram(&c, &delta_diagram(&dd)).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn convolution_counit_recovers() {
        let eps = counit_ws_diagram(WsDomain::ChordAlgebra);
        let chrom = ws_from_graph_map(&chromatic_ws());
        let conv = convolution_ws(&eps, &chrom);
        for code in ["1 2 1 2;01", "1 1 2 2;11", "1 2 1 2;00", ";"] {
            assert_eq!(conv.eval_basis(&d(code)), chrom.eval_basis(&d(code)));
        }
        // Both counits convolve to the counit.
        let eps_m = counit_ws_diagram(WsDomain::FramedDiagrams);
        let conv2 = convolution_ws(&eps, &eps_m);
        assert_eq!(
            conv2.eval_basis(&FramedChordDiagram::empty()),
            WsValue::Scalar(qi(1))
        );
        assert_eq!(conv2.eval_basis(&d("1 1;1")), WsValue::Scalar(qi(0)));
        assert_eq!(conv2.eval_basis(&d("1 1;0")), WsValue::Scalar(qi(0)));
    }

    #[test]
    fn chromatic_pullback_on_crossing() {
        // The intersection graph of the black crossing is K2, whose
        // chromatic polynomial is x^2 - x.
        let ws = ws_from_graph_map(&chromatic_ws());
        match ws.eval_basis(&d("1 2 1 2;00")) {
            WsValue::Poly(p) => assert_eq!(p.to_string(), "x^2 - x"),
            other => panic!("unexpected value {other:?}"),
        }
    }

    #[test]
    fn discoloration_lift_of_counit() {
        let eps = counit_ws_diagram(WsDomain::ChordAlgebra);
        let lifted = ws_from_discoloration(&eps);
        assert_eq!(
            lifted.eval_basis(&FramedChordDiagram::empty()),
            WsValue::Scalar(qi(1))
        );
        assert_eq!(lifted.eval_basis(&d("1 1;1")), WsValue::Scalar(qi(0)));
    }

    /// `d -> 2^order` kills the unframed relations (the four terms cancel in
    /// pairs), so it is a weight system on the chord algebra.
    fn doubling_ws() -> WeightSystem<FramedChordDiagram> {
        WeightSystem::from_fn(WsDomain::ChordAlgebra, |d: &FramedChordDiagram| {
            WsValue::Scalar(qi(1 << d.order()))
        })
    }

    #[test]
    fn constructed_weight_systems_vanish_on_relations() {
        use crate::relations::fourt_diagram_relations;
        let pullback = ws_from_graph_map(&chromatic_ws());
        let lifted = ws_from_discoloration(&doubling_ws());
        let conv = convolution_ws(&doubling_ws(), &pullback);
        for n in 2..=3 {
            for v in &fourt_diagram_relations(n, true).vectors {
                assert!(pullback.eval(v).is_zero(), "chromatic pullback at n = {n}");
                assert!(lifted.eval(v).is_zero(), "discoloration lift at n = {n}");
                assert!(conv.eval(v).is_zero(), "convolution at n = {n}");
            }
        }
        // And the ingredients vanish on their own relation sets.
        for v in &fourt_diagram_relations(3, false).vectors {
            assert!(doubling_ws().eval(v).is_zero());
        }
    }

    #[test]
    fn convolution_on_white_inputs() {
        // delta(white) = empty (x) white, so any convolution with a framed
        // system reduces to w(empty) times that system on white inputs.
        let w = doubling_ws();
        let pullback = ws_from_graph_map(&chromatic_ws());
        let conv = convolution_ws(&w, &pullback);
        for code in ["1 1;1", "1 2 1 2;11", "1 1 2 2;11"] {
            let white = d(code);
            // w(empty) = 2^0 = 1 here.
            let expected = pullback.eval_basis(&white);
            assert_eq!(conv.eval_basis(&white), expected);
        }
    }

    #[test]
    fn tensor_action_single_chord_on_unit_pair() {
        let c = d("1 1;0");
        let e = FramedChordDiagram::empty();
        let t = LinComb::singleton((e.clone(), e.clone()));
        let acted = tensor_action_diagram(&c, &t).unwrap();
        assert_eq!(acted.len(), 2);
        assert_eq!(acted.coeff(&(c.clone(), e.clone())), qi(1));
        assert_eq!(acted.coeff(&(e, c)), qi(1));
    }
}
