//! Exact sparse linear algebra: rank over prime fields and over the
//! rationals, span membership, quotient and relative image dimensions.
//!
//! No floating point anywhere. Small matrices go through rational
//! elimination; the large relation matrices are ranked modulo several 30-bit
//! primes and certified by agreement.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::Q;

/// Sparse matrix with exact rational entries. Rows are relation vectors,
/// columns are canonical basis elements.
#[derive(Clone, Debug)]
pub struct SparseExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, Q)>>,
}

impl SparseExactMatrix {
    pub fn new(cols: usize) -> Self {
        SparseExactMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    /// Assembles rows from linear combinations over an indexed basis.
    /// Panics if a key is missing from the basis; callers pass the full
    /// enumeration of the relevant order.
    pub fn from_lincombs<K: Ord + Clone>(vectors: &[LinComb<K>], basis: &[K]) -> Self {
        let index: BTreeMap<&K, u32> = basis
            .iter()
            .enumerate()
            .map(|(i, k)| (k, i as u32))
            .collect();
        let mut m = SparseExactMatrix::new(basis.len());
        for v in vectors {
            let mut row: Vec<(u32, Q)> = v
                .iter()
                .map(|(k, c)| (*index.get(k).expect("basis element missing"), c.clone()))
                .collect();
            row.sort_by_key(|&(c, _)| c);
            m.push_row(row);
        }
        m
    }

    pub fn push_row(&mut self, mut row: Vec<(u32, Q)>) {
        row.retain(|(_, c)| !c.is_zero());
        row.sort_by_key(|&(c, _)| c);
        for &(c, _) in &row {
            assert!((c as usize) < self.cols, "column out of range");
        }
        self.data.push(row);
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(u32, Q)] {
        &self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &Vec<(u32, Q)>> {
        self.data.iter()
    }

    /// Sparse triplet text: `rows cols` header, 1-based `row col num/den`
    /// lines, `0 0 0` terminator.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, q) in row {
                out.push_str(&format!(
                    "{} {} {}/{}\n",
                    r + 1,
                    c + 1,
                    q.numer(),
                    q.denom()
                ));
            }
        }
        out.push_str("0 0 0\n");
        out
    }

    pub fn parse_triplet_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse {
            msg: "empty matrix file".into(),
            pos: None,
        })?;
        let mut it = header.split_whitespace();
        let rows: usize = parse_num(it.next(), "row count")?;
        let cols: usize = parse_num(it.next(), "column count")?;
        let mut data = vec![Vec::new(); rows];
        let mut terminated = false;
        for (lineno, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let r: usize = parse_num(it.next(), "row index")?;
            let c: usize = parse_num(it.next(), "column index")?;
            let val = it.next().ok_or_else(|| Error::Parse {
                msg: "missing entry value".into(),
                pos: Some(lineno + 1),
            })?;
            if r == 0 && c == 0 && val == "0" {
                terminated = true;
                break;
            }
            if r == 0 || r > rows || c == 0 || c > cols {
                return Err(Error::Parse {
                    msg: format!("entry ({r}, {c}) out of range"),
                    pos: Some(lineno + 1),
                });
            }
            let (n, d) = val.split_once('/').ok_or_else(|| Error::Parse {
                msg: format!("bad rational `{val}`"),
                pos: Some(lineno + 1),
            })?;
            let numer: BigInt = n.parse().map_err(|_| Error::Parse {
                msg: format!("bad numerator `{n}`"),
                pos: Some(lineno + 1),
            })?;
            let denom: BigInt = d.parse().map_err(|_| Error::Parse {
                msg: format!("bad denominator `{d}`"),
                pos: Some(lineno + 1),
            })?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    msg: "zero denominator".into(),
                    pos: Some(lineno + 1),
                });
            }
            data[r - 1].push((c as u32 - 1, Q::new(numer, denom)));
        }
        if !terminated {
            return Err(Error::Parse {
                msg: "missing 0 0 0 terminator".into(),
                pos: None,
            });
        }
        let mut m = SparseExactMatrix::new(cols);
        for row in data {
            m.push_row(row);
        }
        Ok(m)
    }
}

fn parse_num(tok: Option<&str>, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse {
        msg: format!("missing {what}"),
        pos: None,
    })?
    .parse()
    .map_err(|_| Error::Parse {
        msg: format!("bad {what}"),
        pos: None,
    })
}

// ---------------------------------------------------------------------------
// Rational echelon forms.

/// Incremental row echelon form over the rationals. Pivot rows are kept
/// sparse with leading coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct EchelonQ {
    pivots: BTreeMap<u32, Vec<(u32, Q)>>,
}

impl EchelonQ {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; the returned remainder is
    /// either empty (row was in the span) or has a fresh leading column.
    pub fn reduce(&self, mut row: Vec<(u32, Q)>) -> Vec<(u32, Q)> {
        loop {
            let Some((lead, lead_coeff)) = row.first().map(|(c, q)| (*c, q.clone())) else {
                return row;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                return row;
            };
            row = sub_scaled(&row, pivot, &lead_coeff);
        }
    }

    /// Inserts a row; returns true when it enlarged the span.
    pub fn insert(&mut self, row: Vec<(u32, Q)>) -> bool {
        let rem = self.reduce(row);
        match rem.first() {
            None => false,
            Some((lead, coeff)) => {
                let lead = *lead;
                let inv = coeff.clone();
                let norm: Vec<(u32, Q)> = rem.into_iter().map(|(c, q)| (c, q / &inv)).collect();
                self.pivots.insert(lead, norm);
                true
            }
        }
    }
}

/// `a - f * b` on sorted sparse rows.
fn sub_scaled(a: &[(u32, Q)], b: &[(u32, Q)], f: &Q) -> Vec<(u32, Q)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, qa)), Some((cb, qb))) if ca == cb => {
                let v = qa - &(f * qb);
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, qa)), Some((cb, _))) if ca < cb => {
                out.push((*ca, qa.clone()));
                i += 1;
            }
            (Some(_), Some((cb, qb))) => {
                let v = -(f * qb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (Some((ca, qa)), None) => {
                out.push((*ca, qa.clone()));
                i += 1;
            }
            (None, Some((cb, qb))) => {
                let v = -(f * qb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Rank over the rationals by fraction-exact elimination.
pub fn rank_exact(m: &SparseExactMatrix) -> usize {
    let mut ech = EchelonQ::new();
    for row in m.row_iter() {
        ech.insert(row.clone());
    }
    ech.rank()
}

// ---------------------------------------------------------------------------
// Prime fields.

/// Arithmetic modulo a prime below 2^31, with Barrett reduction.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
    binv: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p > 1 && p < (1 << 31), "prime must fit in 31 bits");
        Fp {
            p,
            binv: ((1u128 << 64) / p as u128) as u64,
        }
    }

    /// Reduces any `x < 2^63`.
    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        let q = ((x as u128 * self.binv as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }
}

fn bigint_mod_p(x: &BigInt, p: u64) -> u64 {
    let m = (x % BigInt::from(p)).to_i64().expect("reduced value fits");
    if m < 0 {
        (m + p as i64) as u64
    } else {
        m as u64
    }
}

/// Maps a rational to the prime field; fails when `p` divides the
/// denominator.
pub fn q_mod_p(q: &Q, fp: Fp) -> Result<u64> {
    let den = bigint_mod_p(q.denom(), fp.p);
    if den == 0 {
        return Err(Error::BadPrime { p: fp.p });
    }
    let num = bigint_mod_p(q.numer(), fp.p);
    Ok(fp.mul(num, fp.inv(den)))
}

/// Incremental echelon form over `F_p` with dense pivot rows, sized for the
/// large relation matrices.
pub struct EchelonModP {
    fp: Fp,
    cols: usize,
    pivots: Vec<Option<Box<[u64]>>>,
    rank: usize,
    buf: Vec<u64>,
}

impl EchelonModP {
    pub fn new(cols: usize, p: u64) -> Self {
        EchelonModP {
            fp: Fp::new(p),
            cols,
            pivots: vec![None; cols],
            rank: 0,
            buf: vec![0; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn prime(&self) -> u64 {
        self.fp.p
    }

    /// Inserts a sparse rational row; true when the rank grew.
    pub fn insert_row(&mut self, row: &[(u32, Q)]) -> Result<bool> {
        self.buf.iter_mut().for_each(|x| *x = 0);
        for (c, q) in row {
            self.buf[*c as usize] = q_mod_p(q, self.fp)?;
        }
        Ok(self.eliminate_buf())
    }

    fn eliminate_buf(&mut self) -> bool {
        let mut c = 0;
        while c < self.cols {
            if self.buf[c] == 0 {
                c += 1;
                continue;
            }
            match &self.pivots[c] {
                Some(prow) => {
                    let neg = self.fp.p - self.buf[c];
                    let fp = self.fp;
                    for (slot, &pv) in self.buf[c..].iter_mut().zip(prow.iter()) {
                        if pv != 0 {
                            *slot = fp.reduce(*slot + neg * pv);
                        }
                    }
                    debug_assert_eq!(self.buf[c], 0);
                    c += 1;
                }
                None => {
                    let inv = self.fp.inv(self.buf[c]);
                    let row: Box<[u64]> =
                        self.buf[c..].iter().map(|&x| self.fp.mul(x, inv)).collect();
                    self.pivots[c] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Rank of the matrix modulo `p`.
pub fn rank_mod_p(m: &SparseExactMatrix, p: u64) -> Result<usize> {
    let mut ech = EchelonModP::new(m.cols(), p);
    for row in m.row_iter() {
        ech.insert_row(row)?;
    }
    Ok(ech.rank())
}

// ---------------------------------------------------------------------------
// Primes.

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The first `count` primes not below `start`.
pub fn primes_from(start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = start;
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Default certification primes: the first three 31-bit primes above 2^30.
pub fn default_primes() -> Vec<u64> {
    primes_from(1 << 30, 3)
}

// ---------------------------------------------------------------------------
// Quotients and span membership.

/// `basis_size - rank`.
pub fn quotient_dim(basis_size: usize, rank: usize) -> usize {
    basis_size
        .checked_sub(rank)
        .expect("rank exceeds basis size")
}

/// Exact span membership and relative image computations over a fixed basis.
pub struct SpanOracle<K: Ord + Clone> {
    index: BTreeMap<K, u32>,
    ech: EchelonQ,
}

impl<K: Ord + Clone> SpanOracle<K> {
    /// Builds the rational echelon of the given vectors over the basis.
    pub fn new(basis: &[K], vectors: &[LinComb<K>]) -> Self {
        let index: BTreeMap<K, u32> = basis
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i as u32))
            .collect();
        let mut oracle = SpanOracle {
            index,
            ech: EchelonQ::new(),
        };
        for v in vectors {
            oracle.insert(v);
        }
        oracle
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Sparse row of a combination in basis coordinates.
    pub fn to_row(&self, v: &LinComb<K>) -> Vec<(u32, Q)> {
        let mut row: Vec<(u32, Q)> = v
            .iter()
            .map(|(k, c)| {
                (
                    *self.index.get(k).expect("element outside basis"),
                    c.clone(),
                )
            })
            .collect();
        row.sort_by_key(|&(c, _)| c);
        row
    }

    /// Remainder of a row after reduction against the span.
    pub fn reduce_row(&self, row: Vec<(u32, Q)>) -> Vec<(u32, Q)> {
        self.ech.reduce(row)
    }

    /// Exact membership in the rational span.
    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.ech.reduce(self.to_row(v)).is_empty()
    }

    /// Adds a vector; true when it enlarged the span.
    pub fn insert(&mut self, v: &LinComb<K>) -> bool {
        let row = self.to_row(v);
        self.ech.insert(row)
    }
}

/// Exact membership of `v` in the rational span of `vectors`.
pub fn in_span<K: Ord + Clone>(v: &LinComb<K>, vectors: &[LinComb<K>], basis: &[K]) -> bool {
    SpanOracle::new(basis, vectors).contains(v)
}

/// Dimension of the image of `span(vectors)` in the quotient by
/// `span(relations)`: rank(relations ∪ vectors) − rank(relations), exactly.
pub fn image_dim_exact<K: Ord + Clone>(
    vectors: &[LinComb<K>],
    relations: &[LinComb<K>],
    basis: &[K],
) -> usize {
    let mut oracle = SpanOracle::new(basis, relations);
    let before = oracle.rank();
    for v in vectors {
        oracle.insert(v);
    }
    oracle.rank() - before
}
