//! The framed chromatic polynomial: a linear map from framed graphs to
//! exact bivariate polynomials, defined by a signed deletion-contraction
//! skein with `x` counting isolated black vertices and `y` isolated white
//! ones. Graphs with loops evaluate to zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{FramedGraph, FramedMultigraph};
use crate::lincomb::LinComb;
use crate::Q;

/// Polynomial in two commuting variables `x`, `y` with exact rational
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    /// The monomial `x^a y^b`.
    pub fn monomial(a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, Q::one());
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1)
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Q {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in other.terms() {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in other.terms() {
            out.add_term(a, b, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::zero().sub(self)
    }

    pub fn scale(&self, f: &Q) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c * f)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1), c1) in self.terms() {
            for (&(a2, b2), c2) in other.terms() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    /// Exact evaluation at rational `x`, `y`.
    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        let mut acc = Q::zero();
        for (&(a, b), c) in self.terms() {
            let mut term = c.clone();
            for _ in 0..a {
                term *= x;
            }
            for _ in 0..b {
                term *= y;
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for BivarPoly {
    /// Terms `c*x^a*y^b` with zero exponent parts omitted and `c*` omitted
    /// when `|c| = 1`, sorted by total degree descending then `x`-degree
    /// descending, joined with ` + `; negative coefficients render as ` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| std::cmp::Reverse((a + b, a)));
        let mut out = String::new();
        for (i, &(a, b)) in keys.iter().enumerate() {
            let c = &self.terms[&(a, b)];
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (a, b) == (0, 0) {
                parts.push(rational_str(&mag));
            }
            if a == 1 {
                parts.push("x".into());
            } else if a > 1 {
                parts.push(format!("x^{a}"));
            }
            if b == 1 {
                parts.push("y".into());
            } else if b > 1 {
                parts.push(format!("y^{b}"));
            }
            out.push_str(&parts.join("*"));
        }
        f.write_str(&out)
    }
}

fn rational_str(q: &Q) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Deletion-contraction evaluator with memoization keyed on canonical
/// multigraph form; parallel classes are kept as-is so the recursion follows
/// the skein literally.
#[derive(Default)]
pub struct ChromaticEngine {
    memo: HashMap<Vec<u8>, BivarPoly>,
}

impl ChromaticEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn chromatic(&mut self, g: &FramedGraph) -> BivarPoly {
        self.chromatic_multi(&g.to_multigraph())
    }

    /// The skein: zero on loops; `x^b y^w` on edgeless graphs; otherwise
    /// `ch(delete e) - (-1)^{f(u) f(v)} ch(contract e)` on the first edge of
    /// the canonical form. The contraction enters with a minus sign unless
    /// both endpoints are white; that is the unique sign rule that restricts
    /// to the classical chromatic polynomial, does not depend on the edge
    /// order, and vanishes on the graph relations.
    pub fn chromatic_multi(&mut self, mg: &FramedMultigraph) -> BivarPoly {
        if mg.has_loop() {
            return BivarPoly::zero();
        }
        if mg.is_edgeless() {
            let blacks = mg.framing().iter().filter(|&&b| b == 0).count() as u32;
            let whites = mg.n() as u32 - blacks;
            return BivarPoly::monomial(blacks, whites);
        }
        let canon = mg.canonical_form();
        let key = canon.canonical_key();
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let (u, v, _) = canon.edges_with_multiplicity()[0];
        let deleted = canon.delete_edge(u, v).expect("edge present");
        let contracted = canon.contract_edge(u, v).expect("edge present");
        let mut result = self.chromatic_multi(&deleted);
        let contracted_part = self.chromatic_multi(&contracted);
        if canon.framing_of(u) == 1 && canon.framing_of(v) == 1 {
            result = result.add(&contracted_part);
        } else {
            result = result.sub(&contracted_part);
        }
        self.memo.insert(key, result.clone());
        result
    }

    /// Linear extension over canonical framed graphs.
    pub fn chromatic_lincomb(&mut self, v: &LinComb<FramedGraph>) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (g, c) in v.iter() {
            out = out.add(&self.chromatic(g).scale(c));
        }
        out
    }
}

/// One-shot evaluation with a fresh memo table.
pub fn framed_chromatic(g: &FramedGraph) -> BivarPoly {
    ChromaticEngine::new().chromatic(g)
}

/// Same recursion with a randomized edge choice and no memoization; used to
/// check that the result does not depend on the elimination order.
pub fn framed_chromatic_random_order(g: &FramedGraph, rng: &mut impl Rng) -> BivarPoly {
    fn go(mg: &FramedMultigraph, rng: &mut impl Rng) -> BivarPoly {
        if mg.has_loop() {
            return BivarPoly::zero();
        }
        let edges = mg.edges_with_multiplicity();
        if edges.is_empty() {
            let blacks = mg.framing().iter().filter(|&&b| b == 0).count() as u32;
            let whites = mg.n() as u32 - blacks;
            return BivarPoly::monomial(blacks, whites);
        }
        let (u, v, _) = edges[rng.gen_range(0..edges.len())];
        let del = go(&mg.delete_edge(u, v).unwrap(), rng);
        let con = go(&mg.contract_edge(u, v).unwrap(), rng);
        if mg.framing_of(u) == 1 && mg.framing_of(v) == 1 {
            del.add(&con)
        } else {
            del.sub(&con)
        }
    }
    go(&g.to_multigraph(), rng)
}

/// Counts proper vertex colorings of an all-black simple graph with `k`
/// colors by exhaustive backtracking over assignments. Independent of the
/// skein evaluator.
pub fn classical_chromatic_oracle(g: &FramedGraph, k: u64) -> Result<u64> {
    if !g.is_black() {
        return Err(Error::FramedInput);
    }
    let n = g.n();
    if n > 8 {
        return Err(Error::VertexBound { n, bound: 8 });
    }
    fn rec(g: &FramedGraph, colors: &mut Vec<u64>, v: usize, k: u64) -> u64 {
        if v == g.n() {
            return 1;
        }
        let mut count = 0;
        'next_color: for c in 0..k {
            for (w, &used) in colors.iter().enumerate() {
                if g.has_edge(v, w) && used == c {
                    continue 'next_color;
                }
            }
            colors.push(c);
            count += rec(g, colors, v + 1, k);
            colors.pop();
        }
        count
    }
    Ok(rec(g, &mut Vec::with_capacity(n), 0, k))
}

/// Linear extension with a fresh memo table.
pub fn chromatic_on_lincomb(v: &LinComb<FramedGraph>) -> BivarPoly {
    ChromaticEngine::new().chromatic_lincomb(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;
    use rand::SeedableRng;

    fn g(code: &str) -> FramedGraph {
        FramedGraph::parse(code).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(framed_chromatic(&FramedGraph::empty()).to_string(), "1");
        assert_eq!(framed_chromatic(&g("1;1;")).to_string(), "y");
        assert_eq!(framed_chromatic(&g("1;0;")).to_string(), "x");
    }

    #[test]
    fn k2_black() {
        assert_eq!(framed_chromatic(&g("2;00;1-2")).to_string(), "x^2 - x");
    }

    #[test]
    fn k2_mixed() {
        // Deleting gives x*y; the contracted white vertex is subtracted, as
        // for any edge with at least one black endpoint.
        assert_eq!(framed_chromatic(&g("2;01;1-2")).to_string(), "x*y - y");
    }

    #[test]
    fn k2_white() {
        // For a white-white edge the contraction is added.
        assert_eq!(framed_chromatic(&g("2;11;1-2")).to_string(), "y^2 + y");
    }

    #[test]
    fn vanishes_on_order_two_relation() {
        // ch(BW edge) - ch(B u W) + ch(WW edge) - ch(W u W) = 0.
        let mut e = ChromaticEngine::new();
        let sum = e
            .chromatic(&g("2;01;1-2"))
            .sub(&e.chromatic(&g("2;01;")))
            .add(&e.chromatic(&g("2;11;1-2")))
            .sub(&e.chromatic(&g("2;11;")));
        assert!(sum.is_zero());
    }

    #[test]
    fn k3_black_matches_falling_factorial() {
        let p = framed_chromatic(&g("3;000;1-2,1-3,2-3"));
        assert_eq!(p.to_string(), "x^3 - 3*x^2 + 2*x");
        for k in 0..=4u64 {
            let count = classical_chromatic_oracle(&g("3;000;1-2,1-3,2-3"), k).unwrap();
            assert_eq!(p.eval(&qi(k as i64), &qi(0)), qi(count as i64));
        }
    }

    #[test]
    fn loops_vanish() {
        // Contract one edge of a doubled pair: the second copy becomes a loop.
        let doubled = g("3;000;1-2,1-3,2-3").contract_edge(0, 1).unwrap();
        let with_loop = doubled.contract_edge(0, 1).unwrap();
        assert!(with_loop.has_loop());
        assert!(ChromaticEngine::new().chromatic_multi(&with_loop).is_zero());
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(
            classical_chromatic_oracle(&g("3;000;1-2,1-3,2-3"), 3).unwrap(),
            6
        );
        assert_eq!(classical_chromatic_oracle(&g("2;00;"), 2).unwrap(), 4);
        // C4 with 2 colors has exactly the 2 alternating colorings.
        assert_eq!(
            classical_chromatic_oracle(&g("4;0000;1-2,2-3,3-4,1-4"), 2).unwrap(),
            2
        );
        assert!(classical_chromatic_oracle(&g("1;1;"), 2).is_err());
    }

    #[test]
    fn degree_and_leading_coefficient() {
        for n in 0..=4 {
            for gr in FramedGraph::enumerate(n, true).iter().step_by(3) {
                let p = framed_chromatic(gr);
                assert_eq!(p.total_degree() as usize, n);
                assert_eq!(
                    p.coeff(gr.black_count() as u32, gr.white_count() as u32),
                    qi(1)
                );
            }
        }
    }

    #[test]
    fn random_order_agrees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for gr in FramedGraph::enumerate(4, true).iter().step_by(5) {
            let reference = framed_chromatic(gr);
            for _ in 0..10 {
                assert_eq!(framed_chromatic_random_order(gr, &mut rng), reference);
            }
        }
    }

    #[test]
    fn parallel_collapse() {
        // A parallel class behaves like a single edge: contracting one copy
        // loops the rest away.
        let two = g("3;000;1-2,1-3,2-3").contract_edge(0, 1).unwrap();
        let p = ChromaticEngine::new().chromatic_multi(&two);
        assert_eq!(p.to_string(), "x^2 - x");
    }

    #[test]
    fn parallel_classes_collapse_on_all_small_contractions() {
        // Every multigraph arising from one contraction of a 4-vertex graph
        // evaluates like the simple graph with each parallel class replaced
        // by a single edge.
        let mut engine = ChromaticEngine::new();
        for gr in FramedGraph::enumerate(4, true) {
            for (u, v) in gr.edges() {
                let mg = gr.contract_edge(u, v).unwrap();
                if mg.has_loop() {
                    assert!(engine.chromatic_multi(&mg).is_zero());
                    continue;
                }
                let simple_edges: Vec<(usize, usize)> = mg
                    .edges_with_multiplicity()
                    .iter()
                    .map(|&(a, b, _)| (a, b))
                    .collect();
                let simple = FramedGraph::from_parts(mg.framing().to_vec(), &simple_edges).unwrap();
                assert_eq!(engine.chromatic_multi(&mg), engine.chromatic(&simple));
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn poly_arithmetic_distributes(
            a in proptest::collection::vec((0u32..4, 0u32..4, -4i64..=4), 0..5),
            b in proptest::collection::vec((0u32..4, 0u32..4, -4i64..=4), 0..5),
            c in proptest::collection::vec((0u32..4, 0u32..4, -4i64..=4), 0..5),
        ) {
            let build = |terms: &[(u32, u32, i64)]| {
                let mut p = BivarPoly::zero();
                for &(x, y, q) in terms {
                    p.add_term(x, y, qi(q));
                }
                p
            };
            let (pa, pb, pc) = (build(&a), build(&b), build(&c));
            proptest::prop_assert_eq!(pa.add(&pb).mul(&pc), pa.mul(&pc).add(&pb.mul(&pc)));
            proptest::prop_assert_eq!(pa.mul(&pb), pb.mul(&pa));
            let (x, y) = (crate::qr(3, 2), qi(-2));
            proptest::prop_assert_eq!(pa.mul(&pb).eval(&x, &y), pa.eval(&x, &y) * pb.eval(&x, &y));
        }
    }

    #[test]
    fn display_formats() {
        assert_eq!(BivarPoly::zero().to_string(), "0");
        let p = BivarPoly::constant(qi(-2)).add(&BivarPoly::monomial(2, 1).scale(&qi(3)));
        assert_eq!(p.to_string(), "3*x^2*y - 2");
        let q = BivarPoly::x().sub(&BivarPoly::y());
        assert_eq!(q.to_string(), "x - y");
        assert_eq!(
            BivarPoly::monomial(2, 0).sub(&BivarPoly::x()).to_string(),
            "x^2 - x"
        );
    }
}
