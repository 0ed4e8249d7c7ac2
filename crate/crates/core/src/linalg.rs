//! Exact sparse linear algebra over the rationals.
//!
//! Two independent elimination routes live here: [`SparseMatrix::rank`] runs
//! fraction-free elimination on primitive integer rows, while [`Echelon`]
//! maintains a fully reduced row echelon basis over `Q` and is used for
//! kernels, span membership and coordinates. Tests cross-check both against a
//! dense textbook elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cochain::BasisIndex;
use crate::rational::Q;

pub type SparseVec = BTreeMap<usize, Q>;

/// `acc += c * v`, dropping entries that cancel.
pub fn add_scaled(acc: &mut SparseVec, v: &SparseVec, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in v {
        add_entry(acc, k, &(x * c));
    }
}

pub fn add_entry(acc: &mut SparseVec, k: usize, c: &Q) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(k).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&k);
    }
}

pub fn scaled(v: &SparseVec, c: &Q) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&k, x)| (k, x * c)).collect()
}

pub fn unit(k: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(k, Q::one());
    v
}

/// A sparse rational matrix stored row-major with basis labels on both axes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    #[serde(skip)]
    row_labels: Vec<BasisIndex>,
    #[serde(skip)]
    col_labels: Vec<BasisIndex>,
    #[serde(skip)]
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn labeled(row_labels: Vec<BasisIndex>, col_labels: Vec<BasisIndex>) -> Self {
        let mut m = Self::zeros(row_labels.len(), col_labels.len());
        m.row_labels = row_labels;
        m.col_labels = col_labels;
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Q::one());
        }
        m
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, x) in col {
                m.add(i, j, x);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, mut r) in rows.into_iter().enumerate() {
            r.retain(|_, x| !x.is_zero());
            debug_assert!(r.keys().all(|&j| j < cols));
            m.data[i] = r;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[BasisIndex] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[BasisIndex] {
        &self.col_labels
    }

    pub fn with_labels(mut self, row_labels: Vec<BasisIndex>, col_labels: Vec<BasisIndex>) -> Self {
        assert_eq!(row_labels.len(), self.rows);
        assert_eq!(col_labels.len(), self.cols);
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i].get(&j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&mut self, i: usize, j: usize, c: &Q) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of bounds");
        add_entry(&mut self.data[i], j, c);
    }

    pub fn set_row(&mut self, i: usize, mut row: SparseVec) {
        row.retain(|_, x| !x.is_zero());
        self.data[i] = row;
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (&j, x) in r {
                cols[j].insert(i, x.clone());
            }
        }
        cols
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&j).map(|x| (i, x.clone())))
            .collect()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.cols, self.rows);
        t.data = self.columns();
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = Q::zero();
            // iterate over the sparser side
            if r.len() <= v.len() {
                for (j, x) in r {
                    if let Some(y) = v.get(j) {
                        acc += x * y;
                    }
                }
            } else {
                for (j, y) in v {
                    if let Some(x) = r.get(j) {
                        acc += x * y;
                    }
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (&k, x) in r {
                add_scaled(&mut acc, &other.data[k], x);
            }
            out.data[i] = acc;
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, r) in other.data.iter().enumerate() {
            add_scaled(&mut out.data[i], r, &-Q::one());
        }
        out
    }

    /// Same entries, ignoring labels.
    pub fn same_entries(&self, other: &SparseMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (i, r) in self.data.iter().enumerate() {
            for (&j, x) in r {
                out.data[row_perm[i]].insert(col_perm[j], x.clone());
            }
        }
        out
    }

    /// Exact rank by fraction-free elimination on primitive integer rows.
    pub fn rank(&self) -> usize {
        fraction_free_rank(self.data.iter())
    }

    /// Kernel basis in reduced echelon form, leading coefficient 1, ordered by leading index.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::new();
        for r in &self.data {
            ech.insert(r, None);
        }
        let mut raw = Vec::new();
        for f in 0..self.cols {
            if ech.is_pivot(f) {
                continue;
            }
            let mut v = unit(f);
            for (p, row) in ech.pivot_rows() {
                if let Some(x) = row.get(&f) {
                    v.insert(p, -x.clone());
                }
            }
            raw.push(v);
        }
        let mut k = Echelon::new();
        for v in &raw {
            k.insert(v, None);
        }
        k.basis()
    }
}

type IntRow = BTreeMap<usize, BigInt>;

fn primitive_int_row(r: &SparseVec) -> Option<IntRow> {
    if r.is_empty() {
        return None;
    }
    let lcm = r.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut row: IntRow = r
        .iter()
        .map(|(&k, x)| (k, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut row);
    Some(row)
}

fn make_primitive(row: &mut IntRow) {
    let g = row.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.values_mut() {
            *x /= &g;
        }
    }
}

fn fraction_free_rank<'a>(rows: impl Iterator<Item = &'a SparseVec>) -> usize {
    let mut pending: Vec<IntRow> = rows.filter_map(primitive_int_row).collect();
    let mut rank = 0;
    while !pending.is_empty() {
        let lead_col = pending
            .iter()
            .map(|r| *r.keys().next().unwrap())
            .min()
            .unwrap();
        // partial pivoting: smallest leading magnitude among rows at this column
        let pivot_pos = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| *r.keys().next().unwrap() == lead_col)
            .min_by(|(_, a), (_, b)| a[&lead_col].abs().cmp(&b[&lead_col].abs()))
            .map(|(i, _)| i)
            .unwrap();
        let pivot = pending.swap_remove(pivot_pos);
        rank += 1;
        let p = &pivot[&lead_col];
        let mut next = Vec::with_capacity(pending.len());
        for mut r in pending.into_iter() {
            if *r.keys().next().unwrap() == lead_col {
                let c = r[&lead_col].clone();
                let g = p.gcd(&c);
                let (mp, mc) = (p / &g, &c / &g);
                for x in r.values_mut() {
                    *x *= &mp;
                }
                for (&k, y) in &pivot {
                    let e = r.entry(k).or_insert_with(BigInt::zero);
                    *e -= &mc * y;
                    if e.is_zero() {
                        r.remove(&k);
                    }
                }
                if r.is_empty() {
                    continue;
                }
                make_primitive(&mut r);
            }
            next.push(r);
        }
        pending = next;
    }
    rank
}

#[derive(Clone, Debug)]
struct EchelonRow {
    vec: SparseVec,
    prov: SparseVec,
}

/// A fully reduced row echelon basis over `Q`, with optional provenance tags.
///
/// Each inserted vector may carry a tag; stored rows remember their expansion
/// in tagged inputs (untagged inputs contribute nothing), so
/// [`Echelon::coordinates`] recovers the tagged part of any vector in the span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, EchelonRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(&p, r)| (p, &r.vec))
    }

    /// The reduced basis, ordered by pivot.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.values().map(|r| r.vec.clone()).collect()
    }

    fn reduce_with_prov(&self, v: &SparseVec, mut prov: SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        for (p, c) in v.iter() {
            if let Some(row) = self.rows.get(p) {
                let c = -c.clone();
                add_scaled(&mut res, &row.vec, &c);
                add_scaled(&mut prov, &row.prov, &c);
            }
        }
        (res, prov)
    }

    /// The residual of `v` after reduction; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with_prov(v, SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns `true` if it was independent of the current span.
    pub fn insert(&mut self, v: &SparseVec, tag: Option<usize>) -> bool {
        let prov = tag.map(unit).unwrap_or_default();
        let (res, prov) = self.reduce_with_prov(v, prov);
        let Some((&pc, lead)) = res.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row = EchelonRow {
            vec: scaled(&res, &inv),
            prov: scaled(&prov, &inv),
        };
        for other in self.rows.values_mut() {
            if let Some(c) = other.vec.get(&pc).cloned() {
                let c = -c;
                add_scaled(&mut other.vec, &row.vec, &c);
                add_scaled(&mut other.prov, &row.prov, &c);
            }
        }
        self.rows.insert(pc, row);
        true
    }

    /// Tagged coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut prov = SparseVec::new();
        for (p, c) in v.iter() {
            if let Some(row) = self.rows.get(p) {
                add_scaled(&mut prov, &row.prov, c);
            }
        }
        if self.contains(v) {
            Some(prov)
        } else {
            None
        }
    }
}

/// A small dense rational matrix, used for maps between cohomology groups.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    #[serde(skip)]
    pub data: Vec<Vec<Q>>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn from_columns(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (&i, x) in c {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for r in &self.data {
            let v: SparseVec = r
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect();
            e.insert(&v, None);
        }
        e.rank()
    }
}
