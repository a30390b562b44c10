//! Subspaces of `F2^n`, the lattices built from them, and `GL_n(F2)`.
//!
//! A vector of `F2^n` is a bitmask: bit `i` is the `i`-th coordinate.
//! A [`Subspace`] is stored as its reduced row-echelon basis where the pivot
//! of a row is its lowest set bit; rows are sorted by pivot. Equal subspaces
//! have equal encodings.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, GF2Matrix};

/// Largest ambient dimension accepted by [`enumerate_subspaces`].
pub const ENUMERATION_CAP: usize = 6;
/// Largest `n` for which [`enumerate_gl`] lists the whole group by default.
pub const GL_FULL_CAP: usize = 3;

#[inline]
fn low(v: u32) -> u32 {
    v & v.wrapping_neg()
}

/// Parity of `popcount(a & b)`: the pairing of a form with a vector.
#[inline]
#[must_use]
pub fn pairing(a: u32, b: u32) -> bool {
    (a & b).count_ones() % 2 == 1
}

/// Linear subspace of `F2^n` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSubspace")]
pub struct Subspace {
    n: usize,
    rows: Vec<u32>,
}

#[derive(Deserialize)]
struct RawSubspace {
    n: usize,
    rows: Vec<u32>,
}

impl TryFrom<RawSubspace> for Subspace {
    type Error = Error;
    fn try_from(raw: RawSubspace) -> Result<Self> {
        Subspace::from_canonical_rows(raw.n, raw.rows)
    }
}

impl Ord for Subspace {
    /// Dimension first, then the row list: a linear extension of inclusion.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.rows.len(), &self.rows).cmp(&(other.n, other.rows.len(), &other.rows))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            for i in 0..self.n {
                write!(f, "{}", r >> i & 1)?;
            }
        }
        write!(f, ">")
    }
}

impl Subspace {
    /// Span of arbitrary vectors.
    ///
    /// # Panics
    /// Panics if a vector has bits at or above `n`.
    #[must_use]
    pub fn span(n: usize, vectors: &[u32]) -> Self {
        assert!(n <= 31, "ambient dimension {n} too large");
        let mut rows: Vec<u32> = Vec::new();
        for &v0 in vectors {
            assert!(v0 >> n == 0, "vector {v0:#b} outside F2^{n}");
            let mut v = v0;
            for &r in &rows {
                if v & low(r) != 0 {
                    v ^= r;
                }
            }
            if v != 0 {
                let p = low(v);
                for r in &mut rows {
                    if *r & p != 0 {
                        *r ^= v;
                    }
                }
                rows.push(v);
            }
        }
        rows.sort_by_key(|r| r.trailing_zeros());
        Self { n, rows }
    }

    /// Accepts rows only if they already are the canonical encoding.
    ///
    /// # Errors
    /// Rows not in canonical form, or bits outside `F2^n`.
    pub fn from_canonical_rows(n: usize, rows: Vec<u32>) -> Result<Self> {
        if n > 31 || rows.iter().any(|r| *r >> n != 0) {
            return Err(Error::Invalid(format!("rows {rows:?} do not fit in F2^{n}")));
        }
        let s = Self::span(n, &rows);
        if s.rows != rows {
            return Err(Error::Invalid(format!(
                "rows {rows:?} are not a canonical basis (expected {:?})",
                s.rows
            )));
        }
        Ok(s)
    }

    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self { n, rows: Vec::new() }
    }

    #[must_use]
    pub fn full(n: usize) -> Self {
        Self::span(n, &(0..n).map(|i| 1u32 << i).collect::<Vec<_>>())
    }

    #[must_use]
    pub const fn ambient(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn codim(&self) -> usize {
        self.n - self.rows.len()
    }

    #[must_use]
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Re-canonicalizes; a no-op on valid values.
    #[must_use]
    pub fn canonicalize(&self) -> Self {
        Self::span(self.n, &self.rows)
    }

    #[must_use]
    pub fn contains_vec(&self, v: u32) -> bool {
        let mut v = v;
        for &r in &self.rows {
            if v & low(r) != 0 {
                v ^= r;
            }
        }
        v == 0
    }

    /// True if `other ⊆ self`.
    #[must_use]
    pub fn contains(&self, other: &Self) -> bool {
        other.rows.iter().all(|&r| self.contains_vec(r))
    }

    /// All `2^dim` vectors, in the order of the binary combinations of rows.
    #[must_use]
    pub fn vectors(&self) -> Vec<u32> {
        (0u32..1 << self.dim())
            .map(|mask| {
                self.rows
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0, |acc, (_, r)| acc ^ r)
            })
            .collect()
    }

    /// # Errors
    /// Ambient mismatch.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut v = self.rows.clone();
        v.extend_from_slice(&other.rows);
        Ok(Self::span(self.n, &v))
    }

    /// Intersection through the kernel of `[rows(self) | rows(other)]`.
    ///
    /// # Errors
    /// Ambient mismatch.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let k1 = self.dim();
        let all: Vec<u32> = self.rows.iter().chain(&other.rows).copied().collect();
        // columns are the basis vectors of both spaces
        let m = GF2Matrix::from_fn(self.n, all.len(), |i, j| all[j] >> i & 1 == 1);
        let ker = kernel_basis(&m);
        let vecs: Vec<u32> = (0..ker.rows())
            .map(|t| {
                (0..k1)
                    .filter(|&j| ker.get(t, j))
                    .fold(0, |acc, j| acc ^ self.rows[j])
            })
            .collect();
        Ok(Self::span(self.n, &vecs))
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::Ambient(self.n, other.n))
        }
    }

    /// Linear forms (bitmasks) vanishing on the subspace.
    #[must_use]
    pub fn annihilator(&self) -> Self {
        let forms: Vec<u32> = (1u32..1 << self.n)
            .filter(|&u| self.rows.iter().all(|&r| !pairing(u, r)))
            .collect();
        Self::span(self.n, &forms)
    }

    /// Compact key `[r1,r2,...]` used in functor files.
    #[must_use]
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses a key: either `[r1,...]` or the object form `{"n":..,"rows":[..]}`.
    ///
    /// # Errors
    /// Malformed key or non-canonical rows.
    pub fn parse_key(n: usize, key: &str) -> Result<Self> {
        let key = key.trim();
        if key.starts_with('{') {
            let s: Subspace = serde_json::from_str(key)?;
            if s.n != n {
                return Err(Error::Ambient(n, s.n));
            }
            return Ok(s);
        }
        let rows: Vec<u32> = serde_json::from_str(key)
            .map_err(|e| Error::Invalid(format!("subspace key {key:?}: {e}")))?;
        Self::from_canonical_rows(n, rows)
    }
}

/// Number of `k`-dimensional subspaces of `F2^n` (Gaussian binomial at q = 2).
#[must_use]
pub fn gaussian_binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << n) - (1u128 << i);
        den *= (1u128 << k) - (1u128 << i);
    }
    (num / den) as u64
}

/// All subspaces of `F2^n`, sorted, optionally of one dimension.
///
/// # Errors
/// `n` above [`ENUMERATION_CAP`].
pub fn enumerate_subspaces(n: usize, dim_filter: Option<usize>) -> Result<Vec<Subspace>> {
    if n > ENUMERATION_CAP {
        return Err(Error::Cap {
            what: "ambient dimension",
            value: n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut layers: Vec<BTreeSet<Subspace>> = vec![BTreeSet::from([Subspace::zero(n)])];
    for k in 0..n {
        let mut next = BTreeSet::new();
        for s in &layers[k] {
            for v in 1u32..1 << n {
                if !s.contains_vec(v) {
                    let mut rows = s.rows.clone();
                    rows.push(v);
                    next.insert(Subspace::span(n, &rows));
                }
            }
        }
        layers.push(next);
    }
    Ok(layers
        .into_iter()
        .enumerate()
        .filter(|(k, _)| dim_filter.is_none_or(|d| d == *k))
        .flat_map(|(_, l)| l.into_iter())
        .collect())
}

/// Coordinates on `F2^n / W`.
///
/// The complement of `W` is the greedy (lexicographically least) set of
/// standard basis vectors completing a basis of `W`.
#[derive(Clone, Debug)]
pub struct QuotientChart {
    pub w: Subspace,
    /// Indices `i` of the standard vectors `e_i` spanning the complement.
    pub complement: Vec<usize>,
    /// `(n - dim W) x n`; kernel exactly `W`.
    pub proj: GF2Matrix,
    /// `n x (n - dim W)`; `proj * section = id`.
    pub section: GF2Matrix,
    proj_cols: Vec<u32>,
}

impl QuotientChart {
    #[must_use]
    pub fn new(w: &Subspace) -> Self {
        let n = w.n;
        let mut basis = w.rows.clone();
        let mut complement = Vec::new();
        for i in 0..n {
            let e = 1u32 << i;
            if !Subspace::span(n, &basis).contains_vec(e) {
                basis.push(e);
                complement.push(i);
            }
        }
        let k = w.dim();
        let q = n - k;
        // coordinates of e_j in the basis (rows of W, complement)
        let bm = GF2Matrix::from_fn(n, n, |i, j| basis[j] >> i & 1 == 1);
        let inv = match crate::gf2::solve_linear_system(&bm, &GF2Matrix::identity(n)) {
            crate::gf2::Solution::Consistent { particular, .. } => particular,
            crate::gf2::Solution::Inconsistent { .. } => unreachable!("basis is invertible"),
        };
        let proj = inv.block(k, q, 0, n);
        let section = GF2Matrix::from_fn(n, q, |i, j| complement[j] == i);
        let proj_cols = (0..n)
            .map(|j| (0..q).filter(|&r| proj.get(r, j)).fold(0u32, |a, r| a | 1 << r))
            .collect();
        Self {
            w: w.clone(),
            complement,
            proj,
            section,
            proj_cols,
        }
    }

    #[must_use]
    pub fn quotient_dim(&self) -> usize {
        self.w.n - self.w.dim()
    }

    /// Image of a vector in quotient coordinates.
    #[must_use]
    pub fn project(&self, v: u32) -> u32 {
        (0..self.w.n)
            .filter(|&j| v >> j & 1 == 1)
            .fold(0, |acc, j| acc ^ self.proj_cols[j])
    }

    /// Image of a subspace in `F2^{n - dim W}`.
    #[must_use]
    pub fn project_subspace(&self, x: &Subspace) -> Subspace {
        let v: Vec<u32> = x.rows.iter().map(|&r| self.project(r)).collect();
        Subspace::span(self.quotient_dim(), &v)
    }

    /// Preimage of a quotient subspace: a subspace containing `W`.
    #[must_use]
    pub fn lift_subspace(&self, y: &Subspace) -> Subspace {
        let mut v: Vec<u32> = self.w.rows.clone();
        for &r in &y.rows {
            v.push(
                (0..self.quotient_dim())
                    .filter(|&j| r >> j & 1 == 1)
                    .fold(0, |acc, j| acc ^ (1u32 << self.complement[j])),
            );
        }
        Subspace::span(self.w.n, &v)
    }
}

/// Shorthand for [`QuotientChart::new`].
#[must_use]
pub fn quotient_chart(w: &Subspace) -> QuotientChart {
    QuotientChart::new(w)
}

/// Invertible `n x n` matrix, stored by the images of the standard basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GLElement {
    n: usize,
    cols: Vec<u32>,
}

impl fmt::Debug for GLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GL{:?}", self.cols)
    }
}

impl GLElement {
    /// # Errors
    /// Non-invertible columns.
    pub fn from_columns(n: usize, cols: Vec<u32>) -> Result<Self> {
        if cols.len() != n || Subspace::span(n, &cols).dim() != n {
            return Err(Error::Invalid(format!("columns {cols:?} are not invertible")));
        }
        Ok(Self { n, cols })
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            cols: (0..n).map(|i| 1u32 << i).collect(),
        }
    }

    #[must_use]
    pub const fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn columns(&self) -> &[u32] {
        &self.cols
    }

    #[must_use]
    pub fn apply(&self, v: u32) -> u32 {
        (0..self.n)
            .filter(|&j| v >> j & 1 == 1)
            .fold(0, |acc, j| acc ^ self.cols[j])
    }

    /// `self ∘ other`.
    #[must_use]
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            cols: other.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut cols = vec![0u32; self.n];
        for v in 1u32..1 << self.n {
            let img = self.apply(v);
            if img.is_power_of_two() {
                cols[img.trailing_zeros() as usize] = v;
            }
        }
        Self { n: self.n, cols }
    }

    #[must_use]
    pub fn matrix(&self) -> GF2Matrix {
        GF2Matrix::from_fn(self.n, self.n, |i, j| self.cols[j] >> i & 1 == 1)
    }

    /// Image of a subspace; a left action.
    #[must_use]
    pub fn act(&self, w: &Subspace) -> Subspace {
        let v: Vec<u32> = w.rows.iter().map(|&r| self.apply(r)).collect();
        Subspace::span(w.n, &v)
    }

    /// Dual action on linear forms: `u ↦ u ∘ g^{-1}`.
    #[must_use]
    pub fn act_on_form(&self, u: u32) -> u32 {
        let inv = self.inverse();
        (0..self.n)
            .filter(|&j| pairing(u, inv.cols[j]))
            .fold(0, |acc, j| acc | 1 << j)
    }
}

/// Shorthand for [`GLElement::act`].
#[must_use]
pub fn act(g: &GLElement, w: &Subspace) -> Subspace {
    g.act(w)
}

/// Every element of `GL_n(F2)` in lexicographic order of columns.
///
/// # Errors
/// `n > 3` unless `allow_large` (then up to 4).
pub fn enumerate_gl(n: usize, allow_large: bool) -> Result<Vec<GLElement>> {
    let cap = if allow_large { 4 } else { GL_FULL_CAP };
    if n > cap {
        return Err(Error::Cap {
            what: "GL enumeration dimension",
            value: n,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(n);
    fn rec(n: usize, cols: &mut Vec<u32>, out: &mut Vec<GLElement>) {
        if cols.len() == n {
            out.push(GLElement { n, cols: cols.clone() });
            return;
        }
        let span = Subspace::span(n, cols);
        for v in 1u32..1 << n {
            if !span.contains_vec(v) {
                cols.push(v);
                rec(n, cols, out);
                cols.pop();
            }
        }
    }
    rec(n, &mut cols, &mut out);
    Ok(out)
}

/// Two generators of `GL_n(F2)`: the transvection `e_0 ↦ e_0 + e_1`
/// and the cyclic shift `e_j ↦ e_{j+1}`. For `n <= 1` only the identity.
#[must_use]
pub fn gl_generators(n: usize) -> Vec<GLElement> {
    if n <= 1 {
        return vec![GLElement::identity(n)];
    }
    let mut t = GLElement::identity(n);
    t.cols[0] = 0b11;
    let c = GLElement {
        n,
        cols: (0..n).map(|j| 1u32 << ((j + 1) % n)).collect(),
    };
    vec![t, c]
}

/// Closure of a set of elements under composition.
#[must_use]
pub fn generated_group(gens: &[GLElement]) -> Vec<GLElement> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let mut seen: BTreeSet<GLElement> = BTreeSet::from([GLElement::identity(first.n)]);
    let mut frontier: Vec<GLElement> = seen.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Which subposet of the subspace lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PosetKind {
    /// All subspaces.
    All,
    /// All nonzero subspaces.
    NonZero,
    /// `dim >= d` and `codim >= c`.
    Bounded { d: usize, c: usize },
}

impl PosetKind {
    #[must_use]
    pub fn admits(self, w: &Subspace) -> bool {
        match self {
            Self::All => true,
            Self::NonZero => w.dim() > 0,
            Self::Bounded { d, c } => w.dim() >= d && w.codim() >= c,
        }
    }

    /// Name in functor files: `W`, `W0`, `B(d,c)`.
    #[must_use]
    pub fn label(self) -> String {
        match self {
            Self::All => "W".into(),
            Self::NonZero => "W0".into(),
            Self::Bounded { d, c } => format!("B({d},{c})"),
        }
    }

    /// # Errors
    /// Unknown label.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "W" => Ok(Self::All),
            "W0" => Ok(Self::NonZero),
            _ => {
                let inner = t
                    .strip_prefix("B(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Invalid(format!("poset {s:?}")))?;
                let mut it = inner.split(',');
                let parse = |x: Option<&str>| -> Result<usize> {
                    x.and_then(|v| v.parse().ok())
                        .ok_or_else(|| Error::Invalid(format!("poset {s:?}")))
                };
                let d = parse(it.next())?;
                let c = parse(it.next())?;
                if it.next().is_some() {
                    return Err(Error::Invalid(format!("poset {s:?}")));
                }
                Ok(Self::Bounded { d, c })
            }
        }
    }
}

/// Finite subposet of the subspace lattice, ordered by inclusion.
///
/// Elements are sorted by dimension then rows, which is a linear extension
/// of inclusion, so every chain is an increasing index sequence.
#[derive(Clone, Debug)]
pub struct Poset {
    kind: PosetKind,
    n: usize,
    elements: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    leq: Vec<bool>,
    above: Vec<Vec<usize>>,
    covers: Vec<Vec<usize>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.n == other.n
    }
}

impl Poset {
    /// # Errors
    /// `n` above the enumeration cap.
    pub fn new(kind: PosetKind, n: usize) -> Result<Self> {
        let elements: Vec<Subspace> = enumerate_subspaces(n, None)?
            .into_iter()
            .filter(|w| kind.admits(w))
            .collect();
        Ok(Self::from_elements(kind, n, elements))
    }

    fn from_elements(kind: PosetKind, n: usize, elements: Vec<Subspace>) -> Self {
        let m = elements.len();
        let index = elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut leq = vec![false; m * m];
        let mut above = vec![Vec::new(); m];
        let mut covers = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..m {
                if elements[j].contains(&elements[i]) {
                    leq[i * m + j] = true;
                    if i != j {
                        above[i].push(j);
                        if elements[j].dim() == elements[i].dim() + 1 {
                            covers[i].push(j);
                        }
                    }
                }
            }
        }
        Self {
            kind,
            n,
            elements,
            index,
            leq,
            above,
            covers,
        }
    }

    /// The lattice of all subspaces of `F2^n`.
    ///
    /// # Errors
    /// Cap exceeded.
    pub fn lattice(n: usize) -> Result<Self> {
        Self::new(PosetKind::All, n)
    }

    /// Nonzero subspaces of `F2^n`.
    ///
    /// # Errors
    /// Cap exceeded.
    pub fn nonzero(n: usize) -> Result<Self> {
        Self::new(PosetKind::NonZero, n)
    }

    #[must_use]
    pub const fn kind(&self) -> PosetKind {
        self.kind
    }

    #[must_use]
    pub const fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[must_use]
    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    #[must_use]
    pub fn element(&self, i: usize) -> &Subspace {
        &self.elements[i]
    }

    #[must_use]
    pub fn index_of(&self, w: &Subspace) -> Option<usize> {
        self.index.get(w).copied()
    }

    #[must_use]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.elements.len() + j]
    }

    /// Elements strictly above `i`.
    #[must_use]
    pub fn above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    /// Elements covering `i`.
    #[must_use]
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// All covering pairs `(i, j)`, `i ⋖ j`, sorted.
    #[must_use]
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.covers[i].iter().map(move |&j| (i, j)))
            .collect()
    }

    /// `k`-simplices of the order complex: chains of `k + 1` elements.
    #[must_use]
    pub fn chains(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k + 1);
        for i in 0..self.len() {
            cur.push(i);
            self.extend_chains(k, &mut cur, &mut out);
            cur.pop();
        }
        out
    }

    fn extend_chains(&self, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().expect("nonempty chain");
        for &j in &self.above[last] {
            cur.push(j);
            self.extend_chains(k, cur, out);
            cur.pop();
        }
    }

    /// Saturated chains from `i` up to `j` (inclusive), in lexicographic order.
    #[must_use]
    pub fn saturated_chains(&self, i: usize, j: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if !self.leq(i, j) {
            return out;
        }
        let mut cur = vec![i];
        self.sat_rec(j, &mut cur, &mut out);
        out
    }

    fn sat_rec(&self, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *cur.last().expect("nonempty");
        if last == j {
            out.push(cur.clone());
            return;
        }
        for &c in &self.covers[last] {
            if self.leq(c, j) {
                cur.push(c);
                self.sat_rec(j, cur, out);
                cur.pop();
            }
        }
    }

    /// Permutation of elements induced by `g`, or `None` if `g` does not
    /// preserve the poset.
    #[must_use]
    pub fn automorphism(&self, g: &GLElement) -> Option<Vec<usize>> {
        self.elements
            .iter()
            .map(|w| self.index_of(&g.act(w)))
            .collect()
    }

    /// Checks that `perm` is an order automorphism.
    #[must_use]
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let m = self.len();
        if perm.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &p in perm {
            if p >= m || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..m).all(|i| (0..m).all(|j| self.leq(i, j) == self.leq(perm[i], perm[j])))
    }
}
