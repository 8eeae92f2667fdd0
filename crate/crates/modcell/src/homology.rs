//! Integer cellular chain complexes of product-of-simplices cell families,
//! Smith normal form and homology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::radial::CombinatorialType;
use crate::sullivan::SullivanDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("family is not closed under faces; missing {0:?}")]
    MissingCells(Vec<String>),
    #[error("boundary of degree {0} composed with degree {1} is nonzero")]
    BoundaryCheck(usize, usize),
    #[error("matrix shape {rows}x{cols} does not match cell counts")]
    Shape { rows: usize, cols: usize },
}

/// A cell of a product of simplices `Delta^{q_1} x ... x Delta^{q_k}` whose
/// faces are again cells of the same family.
pub trait Cell: Clone + Ord + Send + Sync {
    fn axes(&self) -> Vec<usize>;
    /// Canonical form of face `j` on axis `i`.
    fn face_cell(&self, i: usize, j: usize) -> Self;
    fn id(&self) -> String;
    fn degree(&self) -> usize {
        self.axes().iter().sum()
    }
}

/// Unilevel types: only the radial axes carry cells.
impl Cell for CombinatorialType {
    fn axes(&self) -> Vec<usize> {
        self.multi_degree().radial
    }
    fn face_cell(&self, i: usize, j: usize) -> Self {
        self.face(i, j).expect("face in range").canonicalize()
    }
    fn id(&self) -> String {
        self.to_compact()
    }
}

impl Cell for SullivanDiagram {
    fn axes(&self) -> Vec<usize> {
        self.degrees()
    }
    fn face_cell(&self, i: usize, j: usize) -> Self {
        self.face(i, j).expect("face in range").canonical()
    }
    fn id(&self) -> String {
        self.to_compact()
    }
}

/// Full radial types with the annular axis after the radial ones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FullType(pub CombinatorialType);

impl Cell for FullType {
    fn axes(&self) -> Vec<usize> {
        let md = self.0.multi_degree();
        let mut out = md.radial;
        out.push(md.annular);
        out
    }
    fn face_cell(&self, i: usize, j: usize) -> Self {
        FullType(self.0.face(i, j).expect("face in range").canonicalize())
    }
    fn id(&self) -> String {
        self.0.to_compact()
    }
}

/// Column-sparse integer matrix; serializes as `{rows, cols, entries}` with
/// `[row, col, value]` triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `columns[c]` maps row to nonzero entry.
    pub columns: Vec<BTreeMap<usize, i64>>,
}

impl Serialize for SparseMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<(usize, usize, i64)> =
            self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(&r, &v)| (r, c, v))).collect();
        let mut st = s.serialize_struct("SparseMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![BTreeMap::new(); cols] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.columns[j].insert(i, v);
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, &v) in col {
                out[i][j] = BigInt::from(v);
            }
        }
        out
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    /// `self * other`, or `None` on overflow.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        let mut out = SparseMatrix::zero(self.rows, other.cols);
        for (j, col) in other.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (&k, &b) in col {
                for (&i, &a) in &self.columns[k] {
                    let e = acc.entry(i).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            acc.retain(|_, v| *v != 0);
            out.columns[j] = acc;
        }
        Some(out)
    }
}

/// Cells by degree with boundaries `boundaries[k]: C_k -> C_{k-1}`;
/// `boundaries[0]` is the zero map to the empty degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainComplex {
    pub cells: Vec<Vec<String>>,
    pub boundaries: Vec<SparseMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl ChainComplex {
    /// Complex from explicit boundary matrices `d_1, d_2, ...` with
    /// anonymous cells.
    pub fn from_matrices(counts: &[usize], boundaries: Vec<SparseMatrix>) -> Result<Self, HomologyError> {
        let mut all = vec![SparseMatrix::zero(0, counts.first().copied().unwrap_or(0))];
        for (k, m) in boundaries.into_iter().enumerate() {
            if m.rows != counts[k] || m.cols != counts.get(k + 1).copied().unwrap_or(usize::MAX) {
                return Err(HomologyError::Shape { rows: m.rows, cols: m.cols });
            }
            all.push(m);
        }
        while all.len() < counts.len() {
            let k = all.len();
            all.push(SparseMatrix::zero(counts[k - 1], counts[k]));
        }
        let cells = counts.iter().enumerate().map(|(k, &c)| (0..c).map(|i| format!("e{k}_{i}")).collect()).collect();
        Ok(ChainComplex { cells, boundaries: all })
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(k, c)| if k % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) }).sum()
    }

    /// `d_{k-1} d_k = 0` for every `k`.
    pub fn boundary_check(&self) -> bool {
        (2..self.boundaries.len()).all(|k| match self.boundaries[k - 1].mul(&self.boundaries[k]) {
            Some(p) => p.nonzeros() == 0,
            None => dense_product_is_zero(&self.boundaries[k - 1], &self.boundaries[k]),
        })
    }

    pub fn homology(&self) -> Result<Vec<HomologyGroup>, HomologyError> {
        if let Some(k) = (2..self.boundaries.len())
            .find(|&k| self.boundaries[k - 1].mul(&self.boundaries[k]).is_some_and(|p| p.nonzeros() != 0))
        {
            return Err(HomologyError::BoundaryCheck(k - 1, k));
        }
        let invariants: Vec<Vec<BigInt>> = self.boundaries.par_iter().map(invariant_factors).collect();
        let mut out = Vec::new();
        for k in 0..self.cells.len() {
            let rank_out = invariants[k].len();
            let (rank_in, torsion) = match invariants.get(k + 1) {
                Some(f) => (f.len(), f.iter().filter(|d| !d.is_one()).cloned().collect()),
                None => (0, Vec::new()),
            };
            out.push(HomologyGroup { betti: self.cells[k].len() - rank_out - rank_in, torsion });
        }
        Ok(out)
    }

    /// The complex with the cells of every degree reordered by `perms[k]`
    /// (new position `i` holds old cell `perms[k][i]`).
    pub fn permuted(&self, perms: &[Vec<usize>]) -> ChainComplex {
        let inverse: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (new, &old) in p.iter().enumerate() {
                    inv[old] = new;
                }
                inv
            })
            .collect();
        let cells = self.cells.iter().zip(perms).map(|(c, p)| p.iter().map(|&old| c[old].clone()).collect()).collect();
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mut out = SparseMatrix::zero(m.rows, m.cols);
                for (new_c, &old_c) in perms[k].iter().enumerate() {
                    out.columns[new_c] = if k == 0 {
                        BTreeMap::new()
                    } else {
                        m.columns[old_c].iter().map(|(&r, &v)| (inverse[k - 1][r], v)).collect()
                    };
                }
                out
            })
            .collect();
        ChainComplex { cells, boundaries }
    }
}

fn dense_product_is_zero(a: &SparseMatrix, b: &SparseMatrix) -> bool {
    let (da, db) = (a.to_dense(), b.to_dense());
    (0..a.rows).all(|i| (0..b.cols).all(|j| (0..a.cols).map(|k| &da[i][k] * &db[k][j]).sum::<BigInt>().is_zero()))
}

/// The cellular chain complex of a face-closed family, with boundary sign
/// `(-1)^(q_1 + ... + q_{i-1} + j)` for face `j` on axis `i`.
pub fn build_complex<C: Cell>(family: &[C]) -> Result<ChainComplex, HomologyError> {
    let mut by_degree: Vec<Vec<C>> = Vec::new();
    for c in family {
        let d = c.degree();
        if by_degree.len() <= d {
            by_degree.resize(d + 1, Vec::new());
        }
        by_degree[d].push(c.clone());
    }
    for cells in &mut by_degree {
        cells.sort();
        cells.dedup();
    }
    let index: Vec<HashMap<String, usize>> =
        by_degree.iter().map(|cells| cells.iter().enumerate().map(|(i, c)| (c.id(), i)).collect()).collect();
    let mut boundaries = vec![SparseMatrix::zero(0, by_degree.first().map_or(0, Vec::len))];
    let mut missing = Vec::new();
    for k in 1..by_degree.len() {
        let columns: Vec<Result<BTreeMap<usize, i64>, Vec<String>>> = by_degree[k]
            .par_iter()
            .map(|c| {
                let mut col: BTreeMap<usize, i64> = BTreeMap::new();
                let mut lost = Vec::new();
                let mut offset = 0;
                for (i, q) in c.axes().into_iter().enumerate() {
                    if q > 0 {
                        for j in 0..=q {
                            let f = c.face_cell(i, j);
                            let sign = if (offset + j) % 2 == 0 { 1 } else { -1 };
                            match index[k - 1].get(&f.id()) {
                                Some(&r) => *col.entry(r).or_insert(0) += sign,
                                None => lost.push(f.id()),
                            }
                        }
                    }
                    offset += q;
                }
                col.retain(|_, v| *v != 0);
                if lost.is_empty() {
                    Ok(col)
                } else {
                    Err(lost)
                }
            })
            .collect();
        let mut m = SparseMatrix::zero(by_degree[k - 1].len(), by_degree[k].len());
        for (j, col) in columns.into_iter().enumerate() {
            match col {
                Ok(col) => m.columns[j] = col,
                Err(lost) => missing.extend(lost),
            }
        }
        boundaries.push(m);
    }
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        return Err(HomologyError::MissingCells(missing));
    }
    let cells = by_degree.iter().map(|cs| cs.iter().map(Cell::id).collect()).collect();
    Ok(ChainComplex { cells, boundaries })
}

/// `U M V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

/// Dense Smith normal form, pivoting on the least absolute value.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = least_entry(&a, t..rows, t..cols) else {
            break;
        };
        swap_rows(&mut a, &mut u, t, pi);
        swap_cols(&mut a, &mut v, t, pj);
        loop {
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    add_row(&mut a, &mut u, i, t, &-q);
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    add_col(&mut a, &mut v, j, t, &-q);
                }
            }
            let col_left = (t + 1..rows).find(|&i| !a[i][t].is_zero());
            let row_left = (t + 1..cols).find(|&j| !a[t][j].is_zero());
            if col_left.is_some() || row_left.is_some() {
                let (pi, pj) = least_cross(&a, t);
                swap_rows(&mut a, &mut u, t, pi);
                swap_cols(&mut a, &mut v, t, pj);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => add_row(&mut a, &mut u, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -&*x;
            }
        }
        diagonal.push(a[t][t].clone());
    }
    SmithForm { diagonal, left: u, right: v }
}

fn least_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Least nonzero entry in row `t` and column `t`.
fn least_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let cells = (t..a.len()).map(|i| (i, t)).chain((t..a[0].len()).map(|j| (t, j)));
    for (i, j) in cells {
        let cur = &a[best.0][best.1];
        if !a[i][j].is_zero() && (cur.is_zero() || a[i][j].abs() < cur.abs()) {
            best = (i, j);
        }
    }
    best
}

fn swap_rows(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    a.swap(i, j);
    u.swap(i, j);
}

fn swap_cols(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in v.iter_mut() {
        row.swap(i, j);
    }
}

/// `row_i += q row_k`
fn add_row(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    for m in [a, u] {
        let src = m[k].clone();
        for (x, s) in m[i].iter_mut().zip(&src) {
            *x += q * s;
        }
    }
}

/// `col_j += q col_k`
fn add_col(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for m in [a, v] {
        for row in m.iter_mut() {
            let add = q * &row[k];
            row[j] += add;
        }
    }
}

/// Nonzero invariant factors of a sparse matrix. Unit pivots are eliminated
/// in machine integers; the remainder, or the whole matrix on overflow, goes
/// through the dense Smith form.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    match eliminate_units(m) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::one(); units];
            out.extend(smith_normal_form(&rest).diagonal);
            out
        }
        None => smith_normal_form(&m.to_dense()).diagonal,
    }
}

/// Repeatedly pivots on a `+-1` entry in the sparsest row, clearing its
/// column by row operations; the pivot row then splits off by column
/// operations. Returns the number of pivots and the dense remainder.
fn eliminate_units(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); m.cols];
    for (j, col) in m.columns.iter().enumerate() {
        for (&i, &v) in col {
            rows[i].insert(j, v);
            col_rows[j].insert(i, ());
        }
    }
    let mut alive_row = vec![true; m.rows];
    let mut alive_col = vec![true; m.cols];
    let mut units = 0;
    loop {
        let pivot = (0..m.rows)
            .filter(|&i| alive_row[i])
            .filter_map(|i| {
                rows[i]
                    .iter()
                    .filter(|(_, v)| v.abs() == 1)
                    .min_by_key(|(j, _)| col_rows[**j].len())
                    .map(|(&j, _)| (rows[i].len() * col_rows[j].len(), i, j))
            })
            .min();
        let Some((_, pi, pj)) = pivot else {
            break;
        };
        let p = rows[pi][&pj];
        let prow = rows[pi].clone();
        let others: Vec<usize> = col_rows[pj].keys().copied().filter(|&i| i != pi).collect();
        for i in others {
            let factor = rows[i][&pj] * p;
            for (&j, &v) in &prow {
                let e = rows[i].entry(j).or_insert(0);
                *e = e.checked_sub(factor.checked_mul(v)?)?;
                if *e == 0 {
                    rows[i].remove(&j);
                    col_rows[j].remove(&i);
                } else {
                    col_rows[j].insert(i, ());
                }
            }
        }
        for &j in prow.keys() {
            col_rows[j].remove(&pi);
        }
        rows[pi].clear();
        alive_row[pi] = false;
        alive_col[pj] = false;
        units += 1;
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| alive_row[i] && !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| alive_col[j] && !col_rows[j].is_empty()).collect();
    let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let rest = live_rows
        .iter()
        .map(|&i| {
            let mut row = vec![BigInt::zero(); live_cols.len()];
            for (&j, &v) in &rows[i] {
                row[col_pos[&j]] = BigInt::from(v);
            }
            row
        })
        .collect();
    Some((units, rest))
}
