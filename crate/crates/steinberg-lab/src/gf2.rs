//! Bit-packed linear algebra over GF(2).
//!
//! Matrices are row-major with 64 columns per word. A matrix acts on column
//! vectors, so an `r x c` matrix is a map `F2^c -> F2^r`. Bit `j` of a row
//! (word `j / 64`, position `j % 64`) is the entry in column `j`.
//!
//! Signs never appear: every coefficient lives in GF(2).

use std::fmt;

use crate::error::{Error, Result};

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// XOR `src` into `dst` word by word.
#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Index of the lowest set bit, if any.
#[inline]
#[must_use]
pub fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline]
#[must_use]
pub fn get_bit(words: &[u64], j: usize) -> bool {
    (words[j / 64] >> (j % 64)) & 1 == 1
}

#[inline]
pub fn set_bit(words: &mut [u64], j: usize, value: bool) {
    let mask = 1u64 << (j % 64);
    if value {
        words[j / 64] |= mask;
    } else {
        words[j / 64] &= !mask;
    }
}

/// Iterator over the set bits of a packed row, in increasing order.
pub fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            }
        })
    })
}

/// Dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl GF2Matrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries.
    ///
    /// # Errors
    /// Ragged rows or entries other than 0/1.
    pub fn from_bits(rows: &[Vec<u8>], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &b) in r.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => {
                        return Err(Error::Shape(format!("entry ({i},{j}) is {other}, not a bit")))
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose rows are small bitmasks (`cols <= 64`).
    #[must_use]
    pub fn from_masks(masks: &[u64], cols: usize) -> Self {
        assert!(cols <= 64, "from_masks needs cols <= 64");
        let mut m = Self::zeros(masks.len(), cols);
        for (i, &mask) in masks.iter().enumerate() {
            let clipped = if cols == 64 { mask } else { mask & ((1u64 << cols) - 1) };
            if cols > 0 {
                m.data[i * m.stride] = clipped;
            }
        }
        m
    }

    /// Builds a matrix from packed rows of the right stride.
    #[must_use]
    pub fn from_packed_rows(rows: &[Vec<u64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let s = m.stride;
            m.row_mut(i).copy_from_slice(&r[..s]);
        }
        m
    }

    #[must_use]
    pub const fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub const fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub const fn stride(&self) -> usize {
        self.stride
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        get_bit(self.row(i), j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let stride = self.stride;
        set_bit(&mut self.data[i * stride..(i + 1) * stride], j, value);
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        let v = self.get(i, j);
        self.set(i, j, !v);
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        let s = self.stride;
        &mut self.data[i * s..(i + 1) * s]
    }

    /// Row `i` as an owned packed vector.
    #[must_use]
    pub fn row_vec(&self, i: usize) -> Vec<u64> {
        self.row(i).to_vec()
    }

    /// Column `j` as a packed vector of length `rows`.
    #[must_use]
    pub fn col_vec(&self, j: usize) -> Vec<u64> {
        let mut v = vec![0; words_for(self.rows)];
        for i in 0..self.rows {
            if self.get(i, j) {
                set_bit(&mut v, i, true);
            }
        }
        v
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Number of nonzero entries.
    #[must_use]
    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in ones(self.row(i)) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product `self * other`.
    ///
    /// # Panics
    /// Panics on a shape mismatch.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        let s = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * s..(i + 1) * s];
            for k in ones(self.row(i)) {
                xor_into(dst, other.row(k));
            }
        }
        out
    }

    /// Applies the matrix to a packed column vector of length `cols`.
    #[must_use]
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0; words_for(self.rows)];
        for i in 0..self.rows {
            let parity = self
                .row(i)
                .iter()
                .zip(v)
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                & 1;
            if parity == 1 {
                set_bit(&mut out, i, true);
            }
        }
        out
    }

    /// Entrywise sum.
    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let mut out = self.clone();
        xor_into(&mut out.data, &other.data);
        out
    }

    /// Kronecker product, row index `(i, k) -> i * other.rows + k`.
    #[must_use]
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in ones(self.row(i)) {
                out.set_block(i * other.rows, j * other.cols, other);
            }
        }
        out
    }

    /// XORs `block` into the submatrix whose top-left corner is `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in ones(block.row(i)) {
                self.flip(r0 + i, c0 + j);
            }
        }
    }

    /// Extracts the submatrix of the given row and column ranges.
    #[must_use]
    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Stacks `other` under `self`.
    #[must_use]
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend_from_slice(&other.data);
        out
    }

    /// Puts `other` to the right of `self`.
    #[must_use]
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    /// Keeps the listed rows, in order.
    #[must_use]
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            out.row_mut(k).copy_from_slice(self.row(i));
        }
        out
    }

    /// Appends a packed row.
    pub fn push_row(&mut self, row: &[u64]) {
        assert!(row.len() >= self.stride);
        self.data.extend_from_slice(&row[..self.stride]);
        self.rows += 1;
    }

    /// Rows as vectors of 0/1, for serialization.
    #[must_use]
    pub fn to_bits(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        rref(self).1
    }

    /// True if the matrix is square and invertible.
    #[must_use]
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows.min(32) {
            let s: String = (0..self.cols.min(96))
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form: `(reduced, rank, pivot columns)`.
///
/// The reduced matrix keeps only its `rank` nonzero rows.
#[must_use]
pub fn rref(m: &GF2Matrix) -> (GF2Matrix, usize, Vec<usize>) {
    let mut a = m.clone();
    let stride = a.stride;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let word = c / 64;
        let mask = 1u64 << (c % 64);
        let Some(p) = (r..a.rows).find(|&i| a.data[i * stride + word] & mask != 0) else {
            continue;
        };
        if p != r {
            for w in 0..stride {
                a.data.swap(p * stride + w, r * stride + w);
            }
        }
        let pivot_row: Vec<u64> = a.row(r).to_vec();
        for i in 0..a.rows {
            if i != r && a.data[i * stride + word] & mask != 0 {
                xor_into(&mut a.data[i * stride..(i + 1) * stride], &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.data.truncate(r * stride);
    a.rows = r;
    (a, r, pivots)
}

/// Basis of `{v : m v = 0}`, one vector per row; `cols - rank` rows.
///
/// Row `t` corresponds to the `t`-th free column `f`: it has a 1 at `f` and
/// at the pivots whose reduced row meets `f`.
#[must_use]
pub fn kernel_basis(m: &GF2Matrix) -> GF2Matrix {
    let (red, rank, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = GF2Matrix::zeros(free.len(), m.cols);
    for (t, &f) in free.iter().enumerate() {
        k.set(t, f, true);
        for (i, &p) in pivots.iter().enumerate().take(rank) {
            if red.get(i, f) {
                k.set(t, p, true);
            }
        }
    }
    k
}

/// Basis of the column space of `m`, as rows (rref of the transpose).
#[must_use]
pub fn image_basis(m: &GF2Matrix) -> GF2Matrix {
    rref(&m.transpose()).0
}

/// Solutions of `a x = b` for a matrix right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// `particular` has shape `a.cols x b.cols`; `kernel` rows span `ker a`.
    Consistent { particular: GF2Matrix, kernel: GF2Matrix },
    /// Column of `b` that lies outside the column space of `a`.
    Inconsistent { column: usize },
}

/// Solves `a x = b`.
///
/// # Panics
/// Panics if `a` and `b` have different row counts.
#[must_use]
pub fn solve_linear_system(a: &GF2Matrix, b: &GF2Matrix) -> Solution {
    assert_eq!(a.rows, b.rows, "solve: row mismatch");
    let aug = a.hstack(b);
    let (red, rank, pivots) = rref(&aug);
    if let Some(&p) = pivots.iter().find(|&&p| p >= a.cols) {
        // The first row with a pivot in b names an inconsistent column.
        return Solution::Inconsistent { column: p - a.cols };
    }
    let mut x = GF2Matrix::zeros(a.cols, b.cols);
    for (i, &p) in pivots.iter().enumerate().take(rank) {
        for j in 0..b.cols {
            if red.get(i, a.cols + j) {
                x.set(p, j, true);
            }
        }
    }
    Solution::Consistent {
        particular: x,
        kernel: kernel_basis(a),
    }
}

/// Incremental echelon basis keyed by lowest set bit.
///
/// Each stored row carries a tag recording which inserted vectors it
/// combines, so coordinates can be read back after reduction.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<u64>>,
    tags: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
    inserted: usize,
    tag_width: usize,
}

impl Echelon {
    /// `tag_width` bounds the number of tagged insertions.
    #[must_use]
    pub fn new(width: usize, tag_width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_row: vec![None; width],
            inserted: 0,
            tag_width,
        }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub const fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` in place; returns the accumulated tag.
    pub fn reduce(&self, v: &mut [u64]) -> Vec<u64> {
        let mut tag = vec![0; words_for(self.tag_width)];
        let mut start = 0;
        while let Some(p) = lowest_bit_from(v, start) {
            if let Some(r) = self.pivot_row[p] {
                xor_into(v, &self.rows[r]);
                xor_into(&mut tag, &self.tags[r]);
            }
            start = p + 1;
        }
        tag
    }

    /// Inserts `v` with its own tag bit when `tagged`; returns whether it was independent.
    pub fn insert(&mut self, v: &[u64], tagged: bool) -> bool {
        let mut w = v.to_vec();
        let mut tag = self.reduce(&mut w);
        if tagged {
            assert!(self.inserted < self.tag_width, "echelon tag capacity exceeded");
            let old = get_bit(&tag, self.inserted);
            set_bit(&mut tag, self.inserted, !old);
            self.inserted += 1;
        }
        match lowest_bit(&w) {
            None => false,
            Some(p) => {
                self.pivot_row[p] = Some(self.rows.len());
                self.rows.push(w);
                self.tags.push(tag);
                true
            }
        }
    }

    /// True if `v` lies in the span.
    #[must_use]
    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }
}

fn lowest_bit_from(words: &[u64], start: usize) -> Option<usize> {
    let mut wi = start / 64;
    if wi >= words.len() {
        return None;
    }
    let first = words[wi] & (!0u64 << (start % 64));
    if first != 0 {
        return Some(wi * 64 + first.trailing_zeros() as usize);
    }
    wi += 1;
    while wi < words.len() {
        if words[wi] != 0 {
            return Some(wi * 64 + words[wi].trailing_zeros() as usize);
        }
        wi += 1;
    }
    None
}

/// Cochain complex `C^s -> C^{s+1} -> ...` of finite GF(2)-spaces.
///
/// `diffs[i]` maps degree `start + i` to `start + i + 1` and has shape
/// `dims[i+1] x dims[i]`. Composition-zero is checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    start: i32,
    dims: Vec<usize>,
    diffs: Vec<GF2Matrix>,
}

impl CochainComplex {
    /// # Errors
    /// Shape mismatches or `d∘d != 0`.
    pub fn new(start: i32, dims: Vec<usize>, diffs: Vec<GF2Matrix>) -> Result<Self> {
        if !dims.is_empty() && diffs.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} spaces need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(Error::Shape(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    start + i as i32,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].mul(&diffs[i - 1]).is_zero() {
                return Err(Error::NotAComplex(start + i as i32 - 1));
            }
        }
        Ok(Self { start, dims, diffs })
    }

    /// The zero complex with no terms.
    #[must_use]
    pub fn empty() -> Self {
        Self {
            start: 0,
            dims: Vec::new(),
            diffs: Vec::new(),
        }
    }

    #[must_use]
    pub const fn start(&self) -> i32 {
        self.start
    }

    /// Last degree carrying a term (`start - 1` when empty).
    #[must_use]
    pub fn end(&self) -> i32 {
        self.start + self.dims.len() as i32 - 1
    }

    #[must_use]
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[must_use]
    pub fn diffs(&self) -> &[GF2Matrix] {
        &self.diffs
    }

    /// Dimension in degree `k` (0 outside the support).
    #[must_use]
    pub fn dim(&self, k: i32) -> usize {
        self.index(k).map_or(0, |i| self.dims[i])
    }

    fn index(&self, k: i32) -> Option<usize> {
        let i = k - self.start;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    /// `d_k : C^k -> C^{k+1}`, with zero maps outside the support.
    #[must_use]
    pub fn diff(&self, k: i32) -> GF2Matrix {
        match self.index(k) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => GF2Matrix::zeros(self.dim(k + 1), self.dim(k)),
        }
    }

    /// Homology dimensions for every supported degree, from ranks only.
    #[must_use]
    pub fn homology_dims(&self) -> Vec<usize> {
        use rayon::prelude::*;
        let ranks: Vec<usize> = self.diffs.par_iter().map(GF2Matrix::rank).collect();
        (0..self.dims.len())
            .map(|i| {
                let out = if i < ranks.len() { ranks[i] } else { 0 };
                let inc = if i > 0 { ranks[i - 1] } else { 0 };
                self.dims[i] - out - inc
            })
            .collect()
    }

    #[must_use]
    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().iter().all(|&h| h == 0)
    }

    /// Alternating sum of the dimensions.
    #[must_use]
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let sign = if (self.start as i64 + i as i64).rem_euclid(2) == 0 { 1 } else { -1 };
                sign * d as i64
            })
            .sum()
    }
}

/// Cohomology in one degree with a deterministic basis.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i32,
    pub dim: usize,
    /// Rows are cocycles whose classes form a basis.
    pub basis: GF2Matrix,
    ambient: usize,
    echelon: Echelon,
    boundary_rank: usize,
}

impl Homology {
    /// Coordinates of the class of a cocycle, or `None` for a non-cocycle
    /// vector outside `Z^k`.
    #[must_use]
    pub fn class_of(&self, cocycle: &[u64]) -> Option<Vec<bool>> {
        let mut w = cocycle.to_vec();
        let tag = self.echelon.reduce(&mut w);
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        Some((0..self.dim).map(|i| get_bit(&tag, i)).collect())
    }

    /// Cocycle representing a coordinate vector (pivot-greedy lift).
    #[must_use]
    pub fn lift(&self, coords: &[bool]) -> Vec<u64> {
        let mut v = vec![0; words_for(self.ambient)];
        for (i, &c) in coords.iter().enumerate() {
            if c {
                xor_into(&mut v, self.basis.row(i));
            }
        }
        v
    }

    /// Dimension of the coboundary space in this degree.
    #[must_use]
    pub const fn boundary_rank(&self) -> usize {
        self.boundary_rank
    }

    /// Matrix of a cochain map on cohomology, given the target homology.
    ///
    /// `map` sends this degree to the target's ambient space.
    ///
    /// # Errors
    /// If an image is not a cocycle in the target.
    pub fn induced(&self, map: &GF2Matrix, target: &Homology) -> Result<GF2Matrix> {
        let mut out = GF2Matrix::zeros(target.dim, self.dim);
        for i in 0..self.dim {
            let img = map.apply(self.basis.row(i));
            let coords = target
                .class_of(&img)
                .ok_or_else(|| Error::Invariant("image of a cocycle is not a cocycle".into()))?;
            for (r, c) in coords.into_iter().enumerate() {
                if c {
                    out.set(r, i, true);
                }
            }
        }
        Ok(out)
    }
}

/// Cohomology of `c` in degree `k`.
///
/// Representatives are chosen greedily: kernel vectors (in their rref order)
/// that are independent modulo coboundaries and the earlier choices.
///
/// # Errors
/// Only if the complex is malformed, which construction already rules out.
pub fn homology(c: &CochainComplex, k: i32) -> Result<Homology> {
    let n = c.dim(k);
    let d_out = c.diff(k);
    let d_in = c.diff(k - 1);
    if !d_out.mul(&d_in).is_zero() {
        return Err(Error::NotAComplex(k - 1));
    }
    let z = rref(&kernel_basis(&d_out)).0;
    let b = image_basis(&d_in);
    let dim_guess = z.rows().saturating_sub(b.rows());
    let mut ech = Echelon::new(n, dim_guess);
    for i in 0..b.rows() {
        ech.insert(b.row(i), false);
    }
    let boundary_rank = ech.rank();
    let mut basis = GF2Matrix::zeros(0, n);
    for i in 0..z.rows() {
        if basis.rows() == dim_guess {
            break;
        }
        if !ech.contains(z.row(i)) {
            ech.insert(z.row(i), true);
            basis.push_row(z.row(i));
        }
    }
    Ok(Homology {
        degree: k,
        dim: basis.rows(),
        basis,
        ambient: n,
        echelon: ech,
        boundary_rank,
    })
}
