//! Graded block matrices over graded series. Rows and columns are partitioned
//! into blocks indexed by the degree chain; a matrix of weight w has its
//! (k,u) block filled with homogeneous entries of degree gamma_k + gamma_u + w.
//! Everything in this engine has weight zero.

use std::fmt;
use std::sync::Arc;

use num::BigRational;
use serde_json::{json, Value};

use crate::algebra::{same_table, GeneratorTable, GradedSeries, Poly, RationalFunction};
use crate::error::{Error, Result};
use crate::grading::{DegreeVector, Grading};

/// Per-degree sizes (d_0, ..., d_q), indexed by the degree chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDims {
    sizes: Vec<usize>,
}

impl BlockDims {
    pub fn new(grading: &Grading, sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() != grading.count() {
            return Err(Error::InvalidShape(format!(
                "expected {} block sizes, got {}",
                grading.count(),
                sizes.len()
            )));
        }
        Ok(BlockDims { sizes })
    }

    pub fn from_sizes(sizes: Vec<usize>) -> Self {
        BlockDims { sizes }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn blocks(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, block: usize) -> usize {
        self.sizes[block]
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn offset(&self, block: usize) -> usize {
        self.sizes[..block].iter().sum()
    }

    /// Degree-block of a global index.
    pub fn block_of(&self, global: usize) -> usize {
        let mut acc = 0;
        for (b, &s) in self.sizes.iter().enumerate() {
            acc += s;
            if global < acc {
                return b;
            }
        }
        panic!("global index {global} out of range");
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.sizes.iter().map(|&s| Value::from(s)).collect())
    }
}

impl fmt::Display for BlockDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Ascending column subsets per degree block, selecting the minor of a chart.
/// Entries are 1-based as in the block sizes m_i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KIndex {
    sets: Vec<Vec<usize>>,
}

impl KIndex {
    pub fn new(sets: Vec<Vec<usize>>) -> Result<Self> {
        for s in &sets {
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidShape(
                    "index sets must be strictly ascending".into(),
                ));
            }
            if s.iter().any(|&x| x == 0) {
                return Err(Error::InvalidShape("indices are 1-based".into()));
            }
        }
        Ok(KIndex { sets })
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, block: usize) -> &[usize] {
        &self.sets[block]
    }

    pub fn blocks(&self) -> usize {
        self.sets.len()
    }

    pub fn contains(&self, block: usize, pos: usize) -> bool {
        self.sets[block].binary_search(&pos).is_ok()
    }

    /// Checks the index selects k_i of the m_i columns in every block.
    pub fn validate(&self, k: &BlockDims, m: &BlockDims) -> Result<()> {
        if self.sets.len() != m.blocks() {
            return Err(Error::InvalidShape(format!(
                "index has {} blocks, shape has {}",
                self.sets.len(),
                m.blocks()
            )));
        }
        for (b, s) in self.sets.iter().enumerate() {
            if s.len() != k.size(b) {
                return Err(Error::InvalidShape(format!(
                    "block {b}: index selects {} columns, k is {}",
                    s.len(),
                    k.size(b)
                )));
            }
            if s.iter().any(|&x| x > m.size(b)) {
                return Err(Error::IndexOutOfRange(format!(
                    "block {b}: index exceeds m = {}",
                    m.size(b)
                )));
            }
        }
        Ok(())
    }

    /// Global column numbers (0-based) selected by this index, blockwise.
    pub fn global_columns(&self, m: &BlockDims) -> Vec<usize> {
        let mut cols = Vec::new();
        for (b, s) in self.sets.iter().enumerate() {
            let off = m.offset(b);
            cols.extend(s.iter().map(|&p| off + p - 1));
        }
        cols
    }

    /// Complementary global column numbers, ascending per block.
    pub fn complement_columns(&self, m: &BlockDims) -> Vec<usize> {
        let mut cols = Vec::new();
        for b in 0..self.sets.len() {
            let off = m.offset(b);
            for p in 1..=m.size(b) {
                if !self.contains(b, p) {
                    cols.push(off + p - 1);
                }
            }
        }
        cols
    }

    /// Text form: blocks joined by '|', entries by ','; an empty block prints
    /// as an empty segment, e.g. "1|1,2|1|2".
    pub fn parse(text: &str) -> Result<Self> {
        let sets = text
            .split(['|', ':'])
            .map(|blk| {
                blk.split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Config(format!("bad index entry {s:?}")))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        KIndex::new(sets)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sets
                .iter()
                .map(|s| Value::Array(s.iter().map(|&x| Value::from(x)).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("index must be an array of arrays".into()))?;
        let sets = arr
            .iter()
            .map(|s| {
                s.as_array()
                    .ok_or_else(|| Error::Json("index block must be an array".into()))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|v| v as usize)
                            .ok_or_else(|| Error::Json("index entries must be integers".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        KIndex::new(sets)
    }
}

impl fmt::Display for KIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Dense block matrix over graded series with prescribed block dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    grading: Arc<Grading>,
    table: Arc<GeneratorTable>,
    trunc: u32,
    row_dims: BlockDims,
    col_dims: BlockDims,
    weight: DegreeVector,
    entries: Vec<Vec<GradedSeries>>,
}

impl SuperMatrix {
    pub fn new(
        grading: Arc<Grading>,
        table: Arc<GeneratorTable>,
        trunc: u32,
        row_dims: BlockDims,
        col_dims: BlockDims,
        weight: DegreeVector,
        entries: Vec<Vec<GradedSeries>>,
    ) -> Result<Self> {
        if entries.len() != row_dims.total()
            || entries.iter().any(|r| r.len() != col_dims.total())
        {
            return Err(Error::DimensionMismatch(format!(
                "entry grid must be {} x {}",
                row_dims.total(),
                col_dims.total()
            )));
        }
        let m = SuperMatrix {
            grading,
            table,
            trunc,
            row_dims,
            col_dims,
            weight,
            entries,
        };
        if !m.is_zero_weight_for(&m.weight) {
            return Err(Error::DegreeMismatch(
                "entries must be homogeneous of their block degree".into(),
            ));
        }
        Ok(m)
    }

    pub fn zeros(
        grading: Arc<Grading>,
        table: Arc<GeneratorTable>,
        trunc: u32,
        row_dims: BlockDims,
        col_dims: BlockDims,
    ) -> Self {
        let entries = vec![
            vec![GradedSeries::zero(table.clone(), trunc); col_dims.total()];
            row_dims.total()
        ];
        let weight = DegreeVector::zero(grading.n());
        SuperMatrix {
            grading,
            table,
            trunc,
            row_dims,
            col_dims,
            weight,
            entries,
        }
    }

    pub fn identity(
        grading: Arc<Grading>,
        table: Arc<GeneratorTable>,
        trunc: u32,
        dims: BlockDims,
    ) -> Self {
        let mut m = Self::zeros(grading, table.clone(), trunc, dims.clone(), dims);
        for i in 0..m.rows() {
            m.entries[i][i] = GradedSeries::one(table.clone(), trunc);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.row_dims.total()
    }

    pub fn cols(&self) -> usize {
        self.col_dims.total()
    }

    pub fn row_dims(&self) -> &BlockDims {
        &self.row_dims
    }

    pub fn col_dims(&self) -> &BlockDims {
        &self.col_dims
    }

    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn weight(&self) -> &DegreeVector {
        &self.weight
    }

    pub fn entry(&self, r: usize, c: usize) -> &GradedSeries {
        &self.entries[r][c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, v: GradedSeries) {
        self.entries[r][c] = v;
    }

    /// Degree a (row r, col c) entry must have: gamma_rb + gamma_cb + weight.
    pub fn cell_degree(&self, r: usize, c: usize) -> DegreeVector {
        let rb = self.row_dims.block_of(r);
        let cb = self.col_dims.block_of(c);
        self.grading
            .degree(rb)
            .add(self.grading.degree(cb))
            .expect("same n")
            .add(&self.weight)
            .expect("same n")
    }

    fn is_zero_weight_for(&self, weight: &DegreeVector) -> bool {
        for r in 0..self.rows() {
            let rb = self.row_dims.block_of(r);
            for c in 0..self.cols() {
                let cb = self.col_dims.block_of(c);
                let want = self
                    .grading
                    .degree(rb)
                    .add(self.grading.degree(cb))
                    .expect("same n")
                    .add(weight)
                    .expect("same n");
                if !self.entries[r][c].is_homogeneous_of(&want) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every entry in block (k,u) is homogeneous of degree
    /// gamma_k + gamma_u, or zero.
    pub fn is_zero_weight(&self) -> bool {
        self.is_zero_weight_for(&DegreeVector::zero(self.grading.n()))
    }

    pub fn is_identity(&self) -> bool {
        if self.rows() != self.cols() {
            return false;
        }
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                let e = &self.entries[r][c];
                if r == c {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn compat(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        Ok(())
    }

    /// Matrix product over the graded ring. Result weight is the sum of the
    /// factors' weights; block homogeneity is preserved.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        if self.col_dims != other.row_dims {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        let mut out = Self::zeros(
            self.grading.clone(),
            self.table.clone(),
            self.trunc,
            self.row_dims.clone(),
            other.col_dims.clone(),
        );
        out.weight = self.weight.add(&other.weight)?;
        for r in 0..self.rows() {
            for c in 0..other.cols() {
                let mut acc = GradedSeries::zero(self.table.clone(), self.trunc);
                for k in 0..self.cols() {
                    let a = &self.entries[r][k];
                    let b = &other.entries[k][c];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                out.entries[r][c] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        if self.row_dims != other.row_dims || self.col_dims != other.col_dims {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let mut out = self.clone();
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.entries[r][c] = self.entries[r][c].add(&other.entries[r][c])?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for row in &mut out.entries {
            for e in row {
                *e = e.neg();
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let rf = RationalFunction::constant(self.table.n_central(), c.clone());
        let mut out = self.clone();
        for row in &mut out.entries {
            for e in row {
                *e = e.scale(&rf);
            }
        }
        out
    }

    /// M_I(A): keep, for each degree block, exactly the columns selected by
    /// the index (ascending), concatenated blockwise.
    pub fn extract_minor(&self, index: &KIndex) -> Result<Self> {
        self.check_index(index)?;
        let cols = index.global_columns(&self.col_dims);
        let sizes = index.sets().iter().map(|s| s.len()).collect();
        self.select_columns(&cols, BlockDims::from_sizes(sizes))
    }

    /// D_I(A): the complementary columns, ascending per block.
    pub fn delete_minor(&self, index: &KIndex) -> Result<Self> {
        self.check_index(index)?;
        let cols = index.complement_columns(&self.col_dims);
        let sizes = index
            .sets()
            .iter()
            .enumerate()
            .map(|(b, s)| self.col_dims.size(b) - s.len())
            .collect();
        self.select_columns(&cols, BlockDims::from_sizes(sizes))
    }

    fn check_index(&self, index: &KIndex) -> Result<()> {
        if index.blocks() != self.col_dims.blocks() {
            return Err(Error::InvalidShape(format!(
                "index has {} blocks, matrix has {}",
                index.blocks(),
                self.col_dims.blocks()
            )));
        }
        for (b, s) in index.sets().iter().enumerate() {
            if s.iter().any(|&p| p > self.col_dims.size(b)) {
                return Err(Error::IndexOutOfRange(format!(
                    "block {b} has {} columns",
                    self.col_dims.size(b)
                )));
            }
        }
        Ok(())
    }

    fn select_columns(&self, cols: &[usize], col_dims: BlockDims) -> Result<Self> {
        let entries: Vec<Vec<GradedSeries>> = (0..self.rows())
            .map(|r| cols.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect();
        Ok(SuperMatrix {
            grading: self.grading.clone(),
            table: self.table.clone(),
            trunc: self.trunc,
            row_dims: self.row_dims.clone(),
            col_dims,
            weight: self.weight.clone(),
            entries,
        })
    }

    /// Entrywise body over the rational-function field.
    pub fn body_matrix(&self) -> Vec<Vec<RationalFunction>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.body()).collect())
            .collect()
    }

    /// Determinant of the body matrix, computed fraction-free after clearing
    /// row denominators. Exact over the rational-function field.
    pub fn body_det(&self) -> Result<RationalFunction> {
        if self.rows() != self.cols() {
            return Err(Error::DimensionMismatch("determinant of non-square".into()));
        }
        let body = self.body_matrix();
        let nv = self.table.n_central();
        let mut cleared: Vec<Vec<Poly>> = Vec::with_capacity(body.len());
        let mut scale = RationalFunction::one(nv);
        for row in &body {
            let mut d = Poly::one(nv);
            for e in row {
                d = d.mul(e.den());
            }
            // row * d has polynomial entries
            let drf = RationalFunction::from_poly(d.clone());
            cleared.push(
                row.iter()
                    .map(|e| {
                        let p = e.mul(&drf);
                        debug_assert!(p.den().is_one());
                        p.num().clone()
                    })
                    .collect(),
            );
            scale = scale.mul(&RationalFunction::from_poly(d));
        }
        let det = bareiss_det(cleared, nv);
        RationalFunction::from_poly(det).div(&scale)
    }

    /// Inverse over the truncated graded ring: the body matrix is inverted by
    /// fraction-free elimination over the rational-function field, then the
    /// seed is refined by Newton-Schulz X <- X(2I - AX) for
    /// ceil(log2(N+1)) + 1 rounds. The first residual has zero body, so it is
    /// nilpotent modulo truncation and the rounds converge exactly.
    pub fn invert(&self) -> Result<Self> {
        if self.rows() != self.cols() {
            return Err(Error::DimensionMismatch("inverse of non-square".into()));
        }
        if !self.is_zero_weight() {
            return Err(Error::DegreeMismatch(
                "inverse requires a zero-weight matrix".into(),
            ));
        }
        let body_inv = invert_field_matrix(self.body_matrix(), self.table.n_central())?;
        let mut x = Self::zeros(
            self.grading.clone(),
            self.table.clone(),
            self.trunc,
            self.col_dims.clone(),
            self.row_dims.clone(),
        );
        for r in 0..x.rows() {
            for c in 0..x.cols() {
                x.entries[r][c] =
                    GradedSeries::from_coeff(self.table.clone(), self.trunc, body_inv[r][c].clone());
            }
        }
        let id = Self::identity(
            self.grading.clone(),
            self.table.clone(),
            self.trunc,
            self.row_dims.clone(),
        );
        let two = id.add(&id)?;
        let rounds = u32::BITS - self.trunc.leading_zeros() + 1; // ceil(log2(N+1)) + 1
        for _ in 0..rounds {
            x = x.matmul(&two.sub(&self.matmul(&x)?)?)?;
        }
        debug_assert!(self.matmul(&x)?.is_identity());
        Ok(x)
    }

    /// Lift a numeric (rational) matrix to constant series over the table.
    /// Zero weight demands block-diagonal support; entries elsewhere must be 0.
    pub fn lift_rational(
        grading: Arc<Grading>,
        table: Arc<GeneratorTable>,
        trunc: u32,
        dims: BlockDims,
        values: &[Vec<BigRational>],
    ) -> Result<Self> {
        use num::Zero;
        let mut m = Self::zeros(grading, table.clone(), trunc, dims.clone(), dims);
        if values.len() != m.rows() || values.iter().any(|r| r.len() != m.cols()) {
            return Err(Error::DimensionMismatch("numeric matrix shape".into()));
        }
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if values[r][c].is_zero() {
                    continue;
                }
                if !m.cell_degree(r, c).is_zero() {
                    return Err(Error::DegreeMismatch(format!(
                        "numeric entry at ({r},{c}) sits in a nonzero-degree block"
                    )));
                }
                m.entries[r][c] =
                    GradedSeries::constant(table.clone(), trunc, values[r][c].clone());
            }
        }
        Ok(m)
    }

    /// Schema: {"rowDims": [...], "colDims": [...], "entries": [[series...]]}
    pub fn to_json(&self) -> Value {
        json!({
            "rowDims": self.row_dims.to_json(),
            "colDims": self.col_dims.to_json(),
            "entries": self
                .entries
                .iter()
                .map(|row| Value::Array(row.iter().map(|e| e.to_json()).collect()))
                .collect::<Vec<Value>>(),
        })
    }
}

/// Bareiss fraction-free determinant of a polynomial matrix.
fn bareiss_det(mut m: Vec<Vec<Poly>>, nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    let mut sign_flip = false;
    let mut prev = Poly::one(nvars);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Poly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Exact inverse of a matrix over the rational-function field. Denominators
/// are cleared per row, the elimination phase is fraction-free (Bareiss) on
/// the polynomial matrix, and back-substitution runs over the field.
fn invert_field_matrix(
    body: Vec<Vec<RationalFunction>>,
    nvars: usize,
) -> Result<Vec<Vec<RationalFunction>>> {
    let n = body.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    // clear denominators: row i of C = D_i * row i of B, polynomial entries
    let mut c: Vec<Vec<Poly>> = Vec::with_capacity(n);
    let mut aug: Vec<Vec<Poly>> = Vec::with_capacity(n); // starts as diag(D_i)
    for (i, row) in body.iter().enumerate() {
        let mut d = Poly::one(nvars);
        for e in row {
            d = d.mul(e.den());
        }
        let drf = RationalFunction::from_poly(d.clone());
        c.push(
            row.iter()
                .map(|e| {
                    let p = e.mul(&drf);
                    debug_assert!(p.den().is_one());
                    p.num().clone()
                })
                .collect(),
        );
        let mut ar = vec![Poly::zero(nvars); n];
        ar[i] = d;
        aug.push(ar);
    }
    // fraction-free forward elimination on [C | aug]
    let mut prev = Poly::one(nvars);
    for k in 0..n {
        if c[k][k].is_zero() {
            match (k + 1..n).find(|&r| !c[r][k].is_zero()) {
                Some(r) => {
                    c.swap(k, r);
                    aug.swap(k, r);
                }
                None => return Err(Error::SingularBody),
            }
        }
        for i in k + 1..n {
            for j in 0..n {
                if j > k {
                    let num = c[i][j].mul(&c[k][k]).sub(&c[i][k].mul(&c[k][j]));
                    c[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                let num = aug[i][j].mul(&c[k][k]).sub(&c[i][k].mul(&aug[k][j]));
                aug[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            c[i][k] = Poly::zero(nvars);
        }
        prev = c[k][k].clone();
    }
    // back-substitution over the field, one augmented column at a time
    let mut out = vec![vec![RationalFunction::zero(nvars); n]; n];
    for col in 0..n {
        for i in (0..n).rev() {
            let mut acc = RationalFunction::from_poly(aug[i][col].clone());
            for j in i + 1..n {
                acc = acc.sub(&RationalFunction::from_poly(c[i][j].clone()).mul(&out[j][col]));
            }
            out[i][col] = acc.div(&RationalFunction::from_poly(c[i][i].clone()))?;
        }
    }
    Ok(out)
}
