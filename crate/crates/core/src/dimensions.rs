//! Dimension computations for the graded pieces of the diagram and graph
//! spaces, their covariant submodules, and the primitive subspace of the
//! graph covariants, plus the cross-checking consistency identities.

use std::fmt;

use num_traits::Zero;

use crate::diagram::FramedChordDiagram;
use crate::error::{Error, Result};
use crate::graph::FramedGraph;
use crate::linalg::{primes_from, EchelonModP, EchelonQ, SpanOracle, SparseExactMatrix};
use crate::lincomb::LinComb;
use crate::relations::{fourt_diagram_relations, fourt_graph_relations, RelationSet};
use crate::Q;

/// The spaces whose graded dimensions the crate computes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpaceTag {
    /// Chord diagrams modulo 4T (all-black).
    A,
    /// Framed chord diagrams modulo framed 4T.
    M,
    /// Graphs modulo graph 4T (all-black).
    G,
    /// Framed graphs modulo framed graph 4T.
    H,
    /// Covariants of M (spanned by white diagrams).
    CoM,
    /// Covariants of H (spanned by white graphs).
    CoH,
    /// Primitive subspace of the covariants of H.
    PCoH,
}

impl SpaceTag {
    pub fn parse_str(s: &str) -> Option<Self> {
        match s {
            "A" => Some(SpaceTag::A),
            "M" => Some(SpaceTag::M),
            "G" => Some(SpaceTag::G),
            "H" => Some(SpaceTag::H),
            "CoM" => Some(SpaceTag::CoM),
            "CoH" => Some(SpaceTag::CoH),
            "PCoH" => Some(SpaceTag::PCoH),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceTag::A => "A",
            SpaceTag::M => "M",
            SpaceTag::G => "G",
            SpaceTag::H => "H",
            SpaceTag::CoM => "CoM",
            SpaceTag::CoH => "CoH",
            SpaceTag::PCoH => "PCoH",
        };
        f.write_str(s)
    }
}

/// Runtime configuration shared by the dimension pipeline, the verification
/// suites and the CLI.
#[derive(Clone, Debug)]
pub struct Config {
    /// Largest order computed by default.
    pub max_order: usize,
    /// Primes used for modular ranks (certified by agreement).
    pub primes: Vec<u64>,
    /// Orders up to this bound use rational elimination (cross-checked
    /// against the primes); larger orders use multi-prime agreement only.
    pub exact_max_order: usize,
    /// Force rational elimination at every order.
    pub force_exact: bool,
    /// Seed for all randomized property sampling.
    pub seed: u64,
    /// Vertex bound for graph canonicalization.
    pub vertex_bound: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_order: 5,
            primes: crate::linalg::default_primes(),
            exact_max_order: 4,
            force_exact: false,
            seed: 2017,
            vertex_bound: crate::graph::DEFAULT_VERTEX_BOUND,
        }
    }
}

/// Everything one dimension computation produced, reproducible bit-for-bit
/// for a fixed configuration.
#[derive(Clone, Debug)]
pub struct DimensionReport {
    pub space: SpaceTag,
    pub order: usize,
    pub basis_size: usize,
    pub relations_generated: usize,
    pub relations_dedup: usize,
    pub rank: usize,
    pub dim: usize,
    pub primes: Vec<u64>,
    pub exact: bool,
}

impl DimensionReport {
    /// Structured key-value record, one line.
    pub fn record(&self) -> String {
        let primes = if self.primes.is_empty() {
            "-".to_string()
        } else {
            self.primes
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "space={} n={} basis={} relations_generated={} relations_dedup={} rank={} dim={} primes={} exact={}",
            self.space,
            self.order,
            self.basis_size,
            self.relations_generated,
            self.relations_dedup,
            self.rank,
            self.dim,
            primes,
            self.exact
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    Diagram,
    Graph,
}

/// Rank data for one (family, order) pair: the relation rank and the rank
/// increment contributed by the white elements, which is the covariant
/// dimension.
struct RankOutcome {
    rank: usize,
    white_image: usize,
    primes: Vec<u64>,
    exact: bool,
}

fn certified_ranks(
    relations: &SparseExactMatrix,
    whites: &[Vec<(u32, Q)>],
    order: usize,
    cfg: &Config,
) -> Result<RankOutcome> {
    let use_exact = cfg.force_exact || order <= cfg.exact_max_order;
    let exact_result = if use_exact {
        let mut ech = EchelonQ::new();
        for row in relations.row_iter() {
            ech.insert(row.clone());
        }
        let rank = ech.rank();
        for row in whites {
            ech.insert(row.clone());
        }
        Some((rank, ech.rank() - rank))
    } else {
        None
    };

    // Modular ranks, retried on fresh primes until three agree (and match
    // the exact answer when one is available).
    let mut primes = cfg.primes.clone();
    if primes.is_empty() {
        primes = crate::linalg::default_primes();
    }
    for _round in 0..5 {
        let mut outcomes: Vec<Result<(usize, usize)>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = primes
                .iter()
                .map(|&p| {
                    scope.spawn(move || -> Result<(usize, usize)> {
                        let mut ech = EchelonModP::new(relations.cols(), p);
                        for row in relations.row_iter() {
                            ech.insert_row(row)?;
                        }
                        let rank = ech.rank();
                        for row in whites {
                            ech.insert_row(row)?;
                        }
                        Ok((rank, ech.rank() - rank))
                    })
                })
                .collect();
            for h in handles {
                outcomes.push(h.join().expect("rank thread panicked"));
            }
        });
        let mut values = Vec::new();
        let mut ok = true;
        for o in outcomes {
            match o {
                Ok(v) => values.push(v),
                Err(_) => ok = false,
            }
        }
        let agreed = ok && values.windows(2).all(|w| w[0] == w[1]);
        let matches_exact = exact_result.is_none_or(|e| values.first() == Some(&e));
        if agreed && matches_exact && !values.is_empty() {
            let (rank, white_image) = exact_result.unwrap_or(values[0]);
            return Ok(RankOutcome {
                rank,
                white_image,
                primes,
                exact: use_exact,
            });
        }
        // Bad prime suspected: move to fresh primes.
        let next_start = primes.iter().copied().max().unwrap_or(1 << 30) + 1;
        primes = primes_from(next_start, primes.len().max(3));
    }
    Err(Error::BadPrime {
        p: *primes.last().expect("nonempty prime list"),
    })
}

/// Basis, white rows and relation set for one family and order.
struct SpaceData {
    basis_size: usize,
    whites: Vec<Vec<(u32, Q)>>,
    relations: SparseExactMatrix,
    generated: usize,
    dedup: usize,
}

fn space_data(family: Family, n: usize, framed: bool) -> SpaceData {
    match family {
        Family::Diagram => {
            let basis = FramedChordDiagram::enumerate(n, framed);
            let rels = fourt_diagram_relations(n, framed);
            build_space_data(&basis, &rels, |d| d.is_white())
        }
        Family::Graph => {
            let basis = FramedGraph::enumerate(n, framed);
            let rels = fourt_graph_relations(n, framed);
            build_space_data(&basis, &rels, |g| g.is_white())
        }
    }
}

fn build_space_data<K: Ord + Clone>(
    basis: &[K],
    rels: &RelationSet<K>,
    is_white: impl Fn(&K) -> bool,
) -> SpaceData {
    let relations = SparseExactMatrix::from_lincombs(&rels.vectors, basis);
    let whites: Vec<Vec<(u32, Q)>> = basis
        .iter()
        .enumerate()
        .filter(|(_, k)| is_white(k))
        .map(|(i, _)| vec![(i as u32, Q::from_integer(1.into()))])
        .collect();
    SpaceData {
        basis_size: basis.len(),
        whites,
        relations,
        generated: rels.generated,
        dedup: rels.vectors.len(),
    }
}

/// Dimension of one graded piece of A, M, G or H.
pub fn dim_space(tag: SpaceTag, n: usize, cfg: &Config) -> Result<DimensionReport> {
    let (space_report, _) = space_and_covariants(tag, n, cfg)?;
    Ok(space_report)
}

/// Dimension of the covariants of M or H at order `n`, as the image of the
/// white elements in the quotient.
pub fn dim_covariants(tag: SpaceTag, n: usize, cfg: &Config) -> Result<DimensionReport> {
    let (full_tag, co_tag) = match tag {
        SpaceTag::M | SpaceTag::CoM => (SpaceTag::M, SpaceTag::CoM),
        SpaceTag::H | SpaceTag::CoH => (SpaceTag::H, SpaceTag::CoH),
        _ => {
            return Err(Error::Parse {
                msg: format!("covariants are defined for M and H, not {tag}"),
                pos: None,
            })
        }
    };
    let (_, co) = space_and_covariants(full_tag, n, cfg)?;
    let mut co = co.expect("framed family has covariants");
    co.space = co_tag;
    Ok(co)
}

/// One elimination pass computing both the space dimension and (for the
/// framed families) the covariant dimension.
fn space_and_covariants(
    tag: SpaceTag,
    n: usize,
    cfg: &Config,
) -> Result<(DimensionReport, Option<DimensionReport>)> {
    if n > cfg.max_order {
        return Err(Error::OrderBound {
            n,
            bound: cfg.max_order,
        });
    }
    let (family, framed) = match tag {
        SpaceTag::A => (Family::Diagram, false),
        SpaceTag::M => (Family::Diagram, true),
        SpaceTag::G => (Family::Graph, false),
        SpaceTag::H => (Family::Graph, true),
        _ => {
            return Err(Error::Parse {
                msg: format!("dim_space expects A, M, G or H, got {tag}"),
                pos: None,
            })
        }
    };
    let data = space_data(family, n, framed);
    let outcome = certified_ranks(&data.relations, &data.whites, n, cfg)?;
    let space_report = DimensionReport {
        space: tag,
        order: n,
        basis_size: data.basis_size,
        relations_generated: data.generated,
        relations_dedup: data.dedup,
        rank: outcome.rank,
        dim: data.basis_size - outcome.rank,
        primes: outcome.primes.clone(),
        exact: outcome.exact,
    };
    let co_report = framed.then(|| DimensionReport {
        space: if family == Family::Diagram {
            SpaceTag::CoM
        } else {
            SpaceTag::CoH
        },
        order: n,
        basis_size: data.whites.len(),
        relations_generated: data.generated,
        relations_dedup: data.dedup,
        rank: outcome.rank,
        dim: outcome.white_image,
        primes: outcome.primes,
        exact: outcome.exact,
    });
    Ok((space_report, co_report))
}

// ---------------------------------------------------------------------------
// Covariant coordinates and the primitive subspace of Co_H.

/// White-graph coordinates in one graded piece of Co_H: a choice of basis
/// among the white graphs and an exact solver expressing any white graph's
/// class in that basis.
struct CoHCoordinates {
    /// Indices into `whites` of the chosen representatives.
    reps: Vec<usize>,
    whites: Vec<FramedGraph>,
    /// Echelon of the relation span.
    relations: SpanOracle<FramedGraph>,
    /// Augmented echelon over reduced representatives for coordinates.
    solver: EchelonQ,
    residue_cols: usize,
}

impl CoHCoordinates {
    fn new(n: usize) -> Self {
        let basis = FramedGraph::enumerate(n, true);
        let rels = fourt_graph_relations(n, true);
        let relations = SpanOracle::new(&basis, &rels.vectors);
        let whites: Vec<FramedGraph> = basis.iter().filter(|g| g.is_white()).cloned().collect();
        let index: std::collections::BTreeMap<&FramedGraph, u32> = basis
            .iter()
            .enumerate()
            .map(|(i, k)| (k, i as u32))
            .collect();
        let residue_cols = basis.len();

        let mut reps = Vec::new();
        let mut solver = EchelonQ::new();
        let mut probe = SpanOracle::new(&basis, &rels.vectors);
        for (w_idx, w) in whites.iter().enumerate() {
            let row = vec![(index[w], Q::from_integer(1.into()))];
            if probe.insert(&LinComb::singleton(w.clone())) {
                // Independent in the quotient: a new representative. Store
                // its reduced residue with an augmentation marker.
                let mut residue = relations.reduce_row(row);
                let rep_no = reps.len();
                residue.push((
                    residue_cols as u32 + rep_no as u32,
                    Q::from_integer(1.into()),
                ));
                solver.insert(residue);
                reps.push(w_idx);
            }
        }
        CoHCoordinates {
            reps,
            whites,
            relations,
            solver,
            residue_cols,
        }
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a white graph's class in the representative basis.
    fn coords(&self, g: &FramedGraph) -> Vec<Q> {
        let row = self.relations.to_row(&LinComb::singleton(g.clone()));
        let residue = self.relations.reduce_row(row);
        let rem = self.solver.reduce(residue);
        // The residue part must vanish; what is left lives in the augment
        // columns and encodes minus the coordinates.
        let mut out = vec![Q::zero(); self.dim()];
        for (c, q) in rem {
            assert!(
                (c as usize) >= self.residue_cols,
                "white graph class not expressible in the representative basis"
            );
            out[c as usize - self.residue_cols] = -q;
        }
        out
    }
}

/// Dimension of the primitive subspace of Co_H in degree `n`: the kernel of
/// the reduced coproduct expressed in quotient coordinates (white graphs
/// have white induced subgraphs, so the reduced coproduct stays within
/// white-by-white tensors).
pub fn dim_primitives_co_h(n: usize, cfg: &Config) -> Result<DimensionReport> {
    if n > cfg.max_order {
        return Err(Error::OrderBound {
            n,
            bound: cfg.max_order,
        });
    }
    let coords: Vec<CoHCoordinates> = (0..=n).map(CoHCoordinates::new).collect();
    let d_n = coords[n].dim();

    // Column layout: for each split k | n-k (1 <= k <= n-1), a block of
    // d_k * d_{n-k} columns.
    let mut offsets = vec![0usize; n];
    let mut total_cols = 0usize;
    for k in 1..n {
        offsets[k] = total_cols;
        total_cols += coords[k].dim() * coords[n - k].dim();
    }

    let mut ech = EchelonQ::new();
    let mut rank = 0usize;
    for &rep_idx in &coords[n].reps {
        let g = &coords[n].whites[rep_idx];
        let mut row: std::collections::BTreeMap<u32, Q> = std::collections::BTreeMap::new();
        let verts = g.n();
        for mask in 1u32..((1 << verts) - 1) {
            let keep: Vec<bool> = (0..verts).map(|k| mask >> k & 1 == 1).collect();
            let complement: Vec<bool> = keep.iter().map(|&b| !b).collect();
            let left = g.restrict(&keep).expect("valid subset");
            let right = g.restrict(&complement).expect("valid subset");
            let k = left.n();
            let cl = coords[k].coords(&left);
            let cr = coords[n - k].coords(&right);
            let d_r = coords[n - k].dim();
            for (s, qs) in cl.iter().enumerate() {
                if qs.is_zero() {
                    continue;
                }
                for (t, qt) in cr.iter().enumerate() {
                    if qt.is_zero() {
                        continue;
                    }
                    let col = (offsets[k] + s * d_r + t) as u32;
                    let entry = row.entry(col).or_insert_with(Q::zero);
                    *entry += qs * qt;
                }
            }
        }
        let row: Vec<(u32, Q)> = row.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        if ech.insert(row) {
            rank += 1;
        }
    }
    let _ = total_cols;

    Ok(DimensionReport {
        space: SpaceTag::PCoH,
        order: n,
        basis_size: d_n,
        relations_generated: 0,
        relations_dedup: 0,
        rank,
        dim: d_n - rank,
        primes: Vec::new(),
        exact: true,
    })
}

/// Computes one report for any space tag.
pub fn dim_report(tag: SpaceTag, n: usize, cfg: &Config) -> Result<DimensionReport> {
    match tag {
        SpaceTag::A | SpaceTag::M | SpaceTag::G | SpaceTag::H => dim_space(tag, n, cfg),
        SpaceTag::CoM | SpaceTag::CoH => dim_covariants(tag, n, cfg),
        SpaceTag::PCoH => dim_primitives_co_h(n, cfg),
    }
}

/// Dimension tables for every space up to `max`, computing each elimination
/// once.
pub struct Tables {
    pub a: Vec<DimensionReport>,
    pub m: Vec<DimensionReport>,
    pub co_m: Vec<DimensionReport>,
    pub g: Vec<DimensionReport>,
    pub h: Vec<DimensionReport>,
    pub co_h: Vec<DimensionReport>,
    pub pco_h: Vec<DimensionReport>,
}

impl Tables {
    pub fn dims(reports: &[DimensionReport]) -> Vec<usize> {
        reports.iter().map(|r| r.dim).collect()
    }
}

pub fn compute_tables(cfg: &Config, max: usize) -> Result<Tables> {
    let mut t = Tables {
        a: Vec::new(),
        m: Vec::new(),
        co_m: Vec::new(),
        g: Vec::new(),
        h: Vec::new(),
        co_h: Vec::new(),
        pco_h: Vec::new(),
    };
    for n in 0..=max {
        t.a.push(dim_space(SpaceTag::A, n, cfg)?);
        let (m, co_m) = space_and_covariants(SpaceTag::M, n, cfg)?;
        t.m.push(m);
        t.co_m.push(co_m.expect("framed"));
        t.g.push(dim_space(SpaceTag::G, n, cfg)?);
        let (h, co_h) = space_and_covariants(SpaceTag::H, n, cfg)?;
        t.h.push(h);
        t.co_h.push(co_h.expect("framed"));
        t.pco_h.push(dim_primitives_co_h(n, cfg)?);
    }
    Ok(t)
}

/// The freeness and polynomial-algebra identities tying the tables together.
pub struct ConsistencyReport {
    pub checks: Vec<(String, bool, String)>,
}

impl ConsistencyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }
}

/// Verifies, from a computed table set:
/// (i) dim M^n = sum_k dim A^k * dim Co_M^{n-k},
/// (ii) dim H^n = sum_k dim G^k * dim Co_H^{n-k},
/// (iii) the Co_H dimensions match the free graded-commutative algebra on
/// the PCo_H dimensions.
pub fn consistency_checks(t: &Tables) -> ConsistencyReport {
    let max = t.m.len() - 1;
    let mut checks = Vec::new();

    let a: Vec<usize> = Tables::dims(&t.a);
    let m: Vec<usize> = Tables::dims(&t.m);
    let co_m: Vec<usize> = Tables::dims(&t.co_m);
    let g: Vec<usize> = Tables::dims(&t.g);
    let h: Vec<usize> = Tables::dims(&t.h);
    let co_h: Vec<usize> = Tables::dims(&t.co_h);
    let pco_h: Vec<usize> = Tables::dims(&t.pco_h);

    for n in 0..=max {
        let lhs = m[n];
        let rhs: usize = (0..=n).map(|k| a[k] * co_m[n - k]).sum();
        checks.push((
            format!("freeness M at n={n}"),
            lhs == rhs,
            format!("dim M^{n} = {lhs}, sum A^k * Co_M^(n-k) = {rhs}"),
        ));
    }
    for n in 0..=max {
        let lhs = h[n];
        let rhs: usize = (0..=n).map(|k| g[k] * co_h[n - k]).sum();
        checks.push((
            format!("freeness H at n={n}"),
            lhs == rhs,
            format!("dim H^{n} = {lhs}, sum G^k * Co_H^(n-k) = {rhs}"),
        ));
    }

    // Free graded-commutative (polynomial) algebra on pco_h generators.
    let mut free = vec![0usize; max + 1];
    free[0] = 1;
    for d in 1..=max {
        for _ in 0..pco_h[d] {
            for i in d..=max {
                free[i] += free[i - d];
            }
        }
    }
    for n in 1..=max {
        checks.push((
            format!("polynomial algebra Co_H at n={n}"),
            free[n] == co_h[n],
            format!("free algebra dim = {}, dim Co_H^{n} = {}", free[n], co_h[n]),
        ));
    }
    ConsistencyReport { checks }
}

/// Computes the tables and runs the consistency identities.
pub fn consistency_suite(cfg: &Config) -> Result<(Tables, ConsistencyReport)> {
    let t = compute_tables(cfg, cfg.max_order)?;
    let report = consistency_checks(&t);
    Ok((t, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg(max: usize) -> Config {
        Config {
            max_order: max,
            ..Config::default()
        }
    }

    #[test]
    fn dims_m_low_orders() {
        let cfg = small_cfg(3);
        assert_eq!(dim_space(SpaceTag::M, 0, &cfg).unwrap().dim, 1);
        assert_eq!(dim_space(SpaceTag::M, 1, &cfg).unwrap().dim, 2);
        assert_eq!(dim_space(SpaceTag::M, 2, &cfg).unwrap().dim, 5);
        assert_eq!(dim_space(SpaceTag::M, 3, &cfg).unwrap().dim, 12);
    }

    #[test]
    fn dims_a_low_orders() {
        let cfg = small_cfg(4);
        let dims: Vec<usize> = (1..=4)
            .map(|n| dim_space(SpaceTag::A, n, &cfg).unwrap().dim)
            .collect();
        assert_eq!(dims, vec![1, 2, 3, 6]);
    }

    #[test]
    fn dims_h_low_orders() {
        let cfg = small_cfg(3);
        assert_eq!(dim_space(SpaceTag::H, 1, &cfg).unwrap().dim, 2);
        assert_eq!(dim_space(SpaceTag::H, 2, &cfg).unwrap().dim, 5);
        assert_eq!(dim_space(SpaceTag::H, 3, &cfg).unwrap().dim, 11);
    }

    #[test]
    fn covariants_low_orders() {
        let cfg = small_cfg(3);
        assert_eq!(dim_covariants(SpaceTag::M, 1, &cfg).unwrap().dim, 1);
        assert_eq!(dim_covariants(SpaceTag::M, 2, &cfg).unwrap().dim, 2);
        assert_eq!(dim_covariants(SpaceTag::H, 2, &cfg).unwrap().dim, 2);
        assert_eq!(dim_covariants(SpaceTag::H, 3, &cfg).unwrap().dim, 4);
    }

    #[test]
    fn white_diagrams_free_up_to_degree_three() {
        // No relations among white diagrams below degree 4: the covariant
        // dimension equals the white-diagram count (1, 2, 5).
        let cfg = small_cfg(3);
        for (n, count) in [(1usize, 1usize), (2, 2), (3, 5)] {
            let r = dim_covariants(SpaceTag::M, n, &cfg).unwrap();
            assert_eq!(r.basis_size, count);
            assert_eq!(r.dim, count);
        }
    }

    #[test]
    fn white_relation_space_in_degree_four() {
        // 18 white diagrams span a 12-dimensional image, leaving a
        // 6-dimensional relation space among them.
        let cfg = small_cfg(4);
        let r = dim_covariants(SpaceTag::M, 4, &cfg).unwrap();
        assert_eq!(r.basis_size, 18);
        assert_eq!(r.dim, 12);
        assert_eq!(r.basis_size - r.dim, 6);
    }

    #[test]
    fn primitives_low_orders() {
        let cfg = small_cfg(3);
        assert_eq!(dim_primitives_co_h(1, &cfg).unwrap().dim, 1);
        assert_eq!(dim_primitives_co_h(2, &cfg).unwrap().dim, 1);
        assert_eq!(dim_primitives_co_h(3, &cfg).unwrap().dim, 2);
    }

    #[test]
    fn order_bound_enforced() {
        let cfg = small_cfg(2);
        assert!(dim_space(SpaceTag::M, 3, &cfg).is_err());
    }

    #[test]
    fn rank_exact_and_modular_agree_on_relation_matrix() {
        let basis = FramedChordDiagram::enumerate(3, true);
        let rels = fourt_diagram_relations(3, true);
        let m = SparseExactMatrix::from_lincombs(&rels.vectors, &basis);
        let exact = crate::linalg::rank_exact(&m);
        for p in crate::linalg::default_primes() {
            assert_eq!(crate::linalg::rank_mod_p(&m, p).unwrap(), exact);
        }
    }
}
