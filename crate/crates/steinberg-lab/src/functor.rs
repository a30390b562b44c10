//! Functors from subspace posets to finite GF(2)-spaces and their derived
//! limits.
//!
//! A functor stores matrices on covering pairs only; the map attached to an
//! arbitrary pair `U <= U'` is composed along the lexicographically least
//! saturated chain and cached at construction.
//!
//! Derived limits are the cohomology of the simplicial complex
//! `L^k(F) = ⊕_{σ k-simplex} F(sup σ)` whose coboundary block for a face
//! `σ ⊂ τ` is `F(sup σ <= sup τ)`. No signs are needed over GF(2).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf2::{homology, kernel_basis, rref, solve_linear_system, CochainComplex, GF2Matrix, Homology, Solution};
use crate::subspace::{GLElement, Poset, PosetKind, Subspace};

/// Exhaustive chain comparison is used up to this many elements.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 70;

/// Functor on a finite subspace poset.
#[derive(Clone, Debug)]
pub struct PosetFunctor {
    poset: Arc<Poset>,
    dims: Vec<usize>,
    covers: BTreeMap<(usize, usize), GF2Matrix>,
    maps: Vec<Option<GF2Matrix>>,
}

impl PartialEq for PosetFunctor {
    fn eq(&self, other: &Self) -> bool {
        *self.poset == *other.poset && self.dims == other.dims && self.covers == other.covers
    }
}

impl PosetFunctor {
    /// Builds a functor from its covering maps and checks functoriality.
    ///
    /// A missing covering map is read as zero, which is only allowed when
    /// the source or the target is zero.
    ///
    /// # Errors
    /// Shape mismatch, a missing nonzero map, or a failure of functoriality.
    pub fn new(
        poset: Arc<Poset>,
        dims: Vec<usize>,
        mut covers: BTreeMap<(usize, usize), GF2Matrix>,
    ) -> Result<Self> {
        if dims.len() != poset.len() {
            return Err(Error::Shape(format!(
                "{} dimensions for {} poset elements",
                dims.len(),
                poset.len()
            )));
        }
        for (i, j) in poset.covering_pairs() {
            match covers.get(&(i, j)) {
                Some(m) => {
                    if m.rows() != dims[j] || m.cols() != dims[i] {
                        return Err(Error::Shape(format!(
                            "map {:?}<{:?} is {}x{}, expected {}x{}",
                            poset.element(i),
                            poset.element(j),
                            m.rows(),
                            m.cols(),
                            dims[j],
                            dims[i]
                        )));
                    }
                }
                None => {
                    if dims[i] != 0 && dims[j] != 0 {
                        return Err(Error::Invalid(format!(
                            "missing map {}<{} between nonzero spaces",
                            poset.element(i).key(),
                            poset.element(j).key()
                        )));
                    }
                    covers.insert((i, j), GF2Matrix::zeros(dims[j], dims[i]));
                }
            }
        }
        if let Some(&(i, j)) = covers.keys().find(|(i, j)| !poset.covers(*i).contains(j)) {
            return Err(Error::Invalid(format!("pair ({i},{j}) is not a covering pair")));
        }
        let mut f = Self {
            maps: Vec::new(),
            poset,
            dims,
            covers,
        };
        f.compose_all();
        f.check_functoriality()?;
        Ok(f)
    }

    fn compose_all(&mut self) {
        let m = self.poset.len();
        let mut maps: Vec<Option<GF2Matrix>> = vec![None; m * m];
        // process targets from the top so maps[c][j] exists before use
        for j in (0..m).rev() {
            maps[j * m + j] = Some(GF2Matrix::identity(self.dims[j]));
            for i in (0..j).rev() {
                if !self.poset.leq(i, j) {
                    continue;
                }
                let c = *self
                    .poset
                    .covers(i)
                    .iter()
                    .find(|&&c| self.poset.leq(c, j))
                    .expect("a saturated chain exists");
                let tail = maps[c * m + j].as_ref().expect("computed").clone();
                maps[i * m + j] = Some(tail.mul(&self.covers[&(i, c)]));
            }
        }
        self.maps = maps;
    }

    /// Compares every saturated chain with the canonical composite
    /// (all chains up to [`EXHAUSTIVE_CHECK_LIMIT`] elements; length-two
    /// diamonds beyond that).
    ///
    /// # Errors
    /// The first pair where two chains disagree.
    pub fn check_functoriality(&self) -> Result<()> {
        let m = self.poset.len();
        for i in 0..m {
            for j in self.poset.above(i).to_vec() {
                let rank_gap = self.poset.element(j).dim() - self.poset.element(i).dim();
                if m > EXHAUSTIVE_CHECK_LIMIT && rank_gap != 2 {
                    continue;
                }
                let canonical = self.map(i, j);
                for chain in self.poset.saturated_chains(i, j) {
                    let mut acc = GF2Matrix::identity(self.dims[i]);
                    for w in chain.windows(2) {
                        acc = self.covers[&(w[0], w[1])].mul(&acc);
                    }
                    if acc != *canonical {
                        return Err(Error::Invariant(format!(
                            "functoriality fails between {:?} and {:?}",
                            self.poset.element(i),
                            self.poset.element(j)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    #[must_use]
    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    #[must_use]
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[must_use]
    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    /// Dimension at a subspace (0 if absent from the poset).
    #[must_use]
    pub fn dim_at(&self, w: &Subspace) -> usize {
        self.poset.index_of(w).map_or(0, |i| self.dims[i])
    }

    /// `F(i <= j)`.
    ///
    /// # Panics
    /// Panics if `i` is not below `j`.
    #[must_use]
    pub fn map(&self, i: usize, j: usize) -> &GF2Matrix {
        self.maps[i * self.poset.len() + j]
            .as_ref()
            .unwrap_or_else(|| panic!("no map from element {i} to element {j}"))
    }

    #[must_use]
    pub fn covering_maps(&self) -> &BTreeMap<(usize, usize), GF2Matrix> {
        &self.covers
    }

    #[must_use]
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Restriction to a subposet (elements looked up by subspace).
    ///
    /// # Errors
    /// If the subposet has an element missing here.
    pub fn restrict(&self, target: Arc<Poset>) -> Result<Self> {
        let idx: Vec<usize> = target
            .elements()
            .iter()
            .map(|w| {
                self.poset
                    .index_of(w)
                    .ok_or_else(|| Error::Invalid(format!("{w:?} not in source poset")))
            })
            .collect::<Result<_>>()?;
        let dims = idx.iter().map(|&i| self.dims[i]).collect();
        let covers = target
            .covering_pairs()
            .into_iter()
            .map(|(a, b)| ((a, b), self.map(idx[a], idx[b]).clone()))
            .collect();
        Self::new(target, dims, covers)
    }

    /// Direct sum.
    ///
    /// # Errors
    /// Different posets.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if *self.poset != *other.poset {
            return Err(Error::Invalid("direct sum over different posets".into()));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let covers = self
            .covers
            .iter()
            .map(|(&k, a)| {
                let b = &other.covers[&k];
                let mut m = GF2Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                m.set_block(0, 0, a);
                m.set_block(a.rows(), a.cols(), b);
                (k, m)
            })
            .collect();
        Self::new(self.poset.clone(), dims, covers)
    }

    /// Serializes to the functor file format.
    #[must_use]
    pub fn to_json(&self) -> Value {
        let mut dims = serde_json::Map::new();
        for (i, w) in self.poset.elements().iter().enumerate() {
            if self.dims[i] > 0 {
                dims.insert(w.key(), json!(self.dims[i]));
            }
        }
        let mut maps = serde_json::Map::new();
        for (&(i, j), m) in &self.covers {
            if self.dims[i] > 0 && self.dims[j] > 0 {
                let key = format!("{}<{}", self.poset.element(i).key(), self.poset.element(j).key());
                maps.insert(key, json!(m.to_bits()));
            }
        }
        json!({
            "poset": self.poset.kind().label(),
            "n": self.poset.n(),
            "dims": dims,
            "maps": maps,
        })
    }

    /// Parses the functor file format.
    ///
    /// # Errors
    /// Any malformed field; the message names it.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("functor: expected an object".into()))?;
        let kind = PosetKind::parse(
            obj.get("poset")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Invalid("functor: field \"poset\" missing or not a string".into()))?,
        )?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Invalid("functor: field \"n\" missing or not an integer".into()))?
            as usize;
        let poset = Arc::new(Poset::new(kind, n)?);
        let mut dims = vec![0; poset.len()];
        let dims_obj = obj
            .get("dims")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Invalid("functor: field \"dims\" missing or not an object".into()))?;
        for (key, d) in dims_obj {
            let w = Subspace::parse_key(n, key)?;
            let i = poset
                .index_of(&w)
                .ok_or_else(|| Error::Invalid(format!("functor: dims key {key} not in poset")))?;
            dims[i] = d
                .as_u64()
                .ok_or_else(|| Error::Invalid(format!("functor: dims[{key}] is not an integer")))?
                as usize;
        }
        let mut covers = BTreeMap::new();
        if let Some(maps) = obj.get("maps") {
            let maps = maps
                .as_object()
                .ok_or_else(|| Error::Invalid("functor: field \"maps\" is not an object".into()))?;
            for (key, m) in maps {
                let (a, b) = key
                    .split_once('<')
                    .ok_or_else(|| Error::Invalid(format!("functor: map key {key:?} lacks '<'")))?;
                let (wa, wb) = (Subspace::parse_key(n, a)?, Subspace::parse_key(n, b)?);
                let i = poset
                    .index_of(&wa)
                    .ok_or_else(|| Error::Invalid(format!("functor: map key {key} not in poset")))?;
                let j = poset
                    .index_of(&wb)
                    .ok_or_else(|| Error::Invalid(format!("functor: map key {key} not in poset")))?;
                if !poset.covers(i).contains(&j) {
                    return Err(Error::Invalid(format!("functor: map key {key} is not a covering pair")));
                }
                let rows: Vec<Vec<u8>> = serde_json::from_value(m.clone())
                    .map_err(|e| Error::Invalid(format!("functor: maps[{key}]: {e}")))?;
                if rows.len() != dims[j] {
                    return Err(Error::Invalid(format!(
                        "functor: maps[{key}] has {} rows, expected {}",
                        rows.len(),
                        dims[j]
                    )));
                }
                let mat = GF2Matrix::from_bits(&rows, dims[i])
                    .map_err(|e| Error::Invalid(format!("functor: maps[{key}]: {e}")))?;
                covers.insert((i, j), mat);
            }
        }
        Self::new(poset, dims, covers)
    }
}

/// The standard functors.
#[derive(Clone, Debug)]
pub enum StandardKind {
    /// Constant functor with value `F2^dim`.
    Constant { dim: usize },
    /// `F2` at one element, zero elsewhere.
    Simple(Subspace),
    /// `F2` on the elements containing `W`.
    Projective(Subspace),
    /// `F2` on the elements contained in `W`.
    Injective(Subspace),
    /// `F2^dim` on the elements below `gamma` (the co-induced functor of `F2^dim` at `gamma`).
    CoInduced { gamma: Subspace, dim: usize },
}

/// Builds a standard functor; transition maps are identities where both
/// ends are nonzero.
///
/// # Errors
/// A parameter subspace outside the poset.
pub fn make_standard_functor(poset: &Arc<Poset>, kind: &StandardKind) -> Result<PosetFunctor> {
    let locate = |w: &Subspace| -> Result<usize> {
        poset
            .index_of(w)
            .ok_or_else(|| Error::Invalid(format!("{w:?} is not an element of the poset")))
    };
    let m = poset.len();
    let dims: Vec<usize> = match kind {
        StandardKind::Constant { dim } => vec![*dim; m],
        StandardKind::Simple(w) => {
            let k = locate(w)?;
            (0..m).map(|i| usize::from(i == k)).collect()
        }
        StandardKind::Projective(w) => {
            let k = locate(w)?;
            (0..m).map(|i| usize::from(poset.leq(k, i))).collect()
        }
        StandardKind::Injective(w) => {
            let k = locate(w)?;
            (0..m).map(|i| usize::from(poset.leq(i, k))).collect()
        }
        StandardKind::CoInduced { gamma, dim } => {
            let k = locate(gamma)?;
            (0..m).map(|i| if poset.leq(i, k) { *dim } else { 0 }).collect()
        }
    };
    let covers = poset
        .covering_pairs()
        .into_iter()
        .map(|(i, j)| {
            let mat = if dims[i] == dims[j] {
                GF2Matrix::identity(dims[i])
            } else {
                GF2Matrix::zeros(dims[j], dims[i])
            };
            ((i, j), mat)
        })
        .collect();
    PosetFunctor::new(poset.clone(), dims, covers)
}

/// Simplices of the order complex, indexed for fast face lookup.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    pub simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl OrderComplex {
    #[must_use]
    pub fn new(poset: &Poset) -> Self {
        let mut simplices = Vec::new();
        let mut index = Vec::new();
        for k in 0.. {
            let s = poset.chains(k);
            if s.is_empty() {
                break;
            }
            index.push(s.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect());
            simplices.push(s);
        }
        Self { simplices, index }
    }

    /// Number of nonempty degrees.
    #[must_use]
    pub fn top(&self) -> usize {
        self.simplices.len()
    }

    #[must_use]
    pub fn position(&self, k: usize, simplex: &[usize]) -> Option<usize> {
        self.index.get(k)?.get(simplex).copied()
    }
}

/// `L•(F)` with its simplex layout.
#[derive(Clone, Debug)]
pub struct LComplex {
    pub order: Arc<OrderComplex>,
    /// `offsets[k][s]`: first coordinate of simplex `s` in `L^k`.
    pub offsets: Vec<Vec<usize>>,
    pub complex: CochainComplex,
}

impl LComplex {
    /// Block of simplex `s` in degree `k`, as a coordinate range.
    #[must_use]
    pub fn block(&self, k: usize, s: usize) -> std::ops::Range<usize> {
        self.offsets[k][s]..self.offsets[k][s + 1]
    }
}

/// Builds `L•(F)`.
#[must_use]
pub fn l_complex(f: &PosetFunctor) -> LComplex {
    l_complex_with(f, Arc::new(OrderComplex::new(f.poset())))
}

/// Builds `L•(F)` reusing a precomputed order complex of the same poset.
#[must_use]
pub fn l_complex_with(f: &PosetFunctor, order: Arc<OrderComplex>) -> LComplex {
    let top = order.top();
    let offsets: Vec<Vec<usize>> = order
        .simplices
        .iter()
        .map(|s| {
            let mut acc = vec![0];
            for c in s {
                acc.push(acc.last().expect("nonempty") + f.dim(*c.last().expect("nonempty simplex")));
            }
            acc
        })
        .collect();
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().expect("nonempty")).collect();
    let mut diffs = Vec::with_capacity(top.saturating_sub(1));
    for k in 0..top.saturating_sub(1) {
        let mut d = GF2Matrix::zeros(dims[k + 1], dims[k]);
        for (t, tau) in order.simplices[k + 1].iter().enumerate() {
            let sup_t = *tau.last().expect("nonempty");
            for drop in 0..tau.len() {
                let sigma: Vec<usize> = tau
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, &x)| x)
                    .collect();
                let s = order.position(k, &sigma).expect("face of a chain is a chain");
                let sup_s = *sigma.last().expect("nonempty");
                let block = f.map(sup_s, sup_t);
                d.set_block(offsets[k + 1][t], offsets[k][s], block);
            }
        }
        diffs.push(d);
    }
    let complex = CochainComplex::new(0, dims, diffs).expect("L(F) is a cochain complex");
    LComplex { order, offsets, complex }
}

/// `lim^k F` with a deterministic basis.
///
/// # Errors
/// Never for a valid functor.
pub fn derived_limit(f: &PosetFunctor, k: usize) -> Result<Homology> {
    homology(&l_complex(f).complex, k as i32)
}

/// `dim lim^k F` for `k = 0..=top`, where higher values vanish.
#[must_use]
pub fn derived_limit_dims(f: &PosetFunctor) -> Vec<usize> {
    l_complex(f).complex.homology_dims()
}

/// `dim lim F` as the kernel of `⊕_U F(U) -> ⊕_{U⋖U'} F(U')`,
/// `x ↦ F(U<U')x_U + x_U'`: the equalizer description.
#[must_use]
pub fn limit_by_equalizer(f: &PosetFunctor) -> usize {
    let m = f.poset().len();
    let mut off = vec![0];
    for i in 0..m {
        off.push(off[i] + f.dim(i));
    }
    let pairs = f.poset().covering_pairs();
    let mut row_off = vec![0];
    for &(_, j) in &pairs {
        row_off.push(row_off.last().expect("nonempty") + f.dim(j));
    }
    let mut e = GF2Matrix::zeros(*row_off.last().expect("nonempty"), off[m]);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        e.set_block(row_off[p], off[i], f.map(i, j));
        e.set_block(row_off[p], off[j], &GF2Matrix::identity(f.dim(j)));
    }
    off[m] - e.rank()
}

/// The cochain map `λ_φ : L•(F) -> L•(F∘φ)`, `(λx)_σ = x_{φσ}`, together
/// with `F∘φ`.
///
/// # Errors
/// `perm` is not an order automorphism, or the result fails to commute
/// with the coboundaries.
pub fn lambda_phi(f: &PosetFunctor, perm: &[usize]) -> Result<(PosetFunctor, Vec<GF2Matrix>)> {
    let poset = f.poset().clone();
    if !poset.is_automorphism(perm) {
        return Err(Error::Invalid("permutation is not an order automorphism".into()));
    }
    let dims: Vec<usize> = (0..poset.len()).map(|i| f.dim(perm[i])).collect();
    let covers = poset
        .covering_pairs()
        .into_iter()
        .map(|(i, j)| ((i, j), f.map(perm[i], perm[j]).clone()))
        .collect();
    let g = PosetFunctor::new(poset.clone(), dims, covers)?;
    let lf = l_complex(f);
    let lg = l_complex_with(&g, lf.order.clone());
    let mut mats = Vec::new();
    for k in 0..lf.order.top() {
        let mut lam = GF2Matrix::zeros(lg.complex.dim(k as i32), lf.complex.dim(k as i32));
        for (s, sigma) in lf.order.simplices[k].iter().enumerate() {
            let mut image: Vec<usize> = sigma.iter().map(|&x| perm[x]).collect();
            image.sort_unstable();
            let t = lf.order.position(k, &image).expect("image of a chain is a chain");
            let rows = lg.block(k, s);
            let cols = lf.block(k, t);
            lam.set_block(rows.start, cols.start, &GF2Matrix::identity(cols.len()));
        }
        mats.push(lam);
    }
    for k in 0..mats.len().saturating_sub(1) {
        let lhs = mats[k + 1].mul(&lf.complex.diff(k as i32));
        let rhs = lg.complex.diff(k as i32).mul(&mats[k]);
        if lhs != rhs {
            return Err(Error::Invariant(format!("λ_φ is not a cochain map in degree {k}")));
        }
    }
    Ok((g, mats))
}

/// Matrix of `λ_g` on `lim^k F` in the homology basis, for `F∘g = F`.
///
/// # Errors
/// `g` does not preserve the poset or does not fix `F`.
pub fn gl_action_on_limit(f: &PosetFunctor, g: &GLElement, k: usize) -> Result<GF2Matrix> {
    let perm = f
        .poset()
        .automorphism(g)
        .ok_or_else(|| Error::Invalid("group element does not preserve the poset".into()))?;
    let (fg, lam) = lambda_phi(f, &perm)?;
    if fg != *f {
        return Err(Error::Invalid("functor is not invariant under the group element".into()));
    }
    let h = derived_limit(f, k)?;
    match lam.get(k) {
        Some(m) => h.induced(m, &h),
        None => Ok(GF2Matrix::zeros(0, 0)),
    }
}

/// A subfunctor together with its inclusion.
#[derive(Clone, Debug)]
pub struct SubFunctor {
    pub functor: PosetFunctor,
    /// `inclusion[i]` has shape `dim F(i) x dim G(i)`.
    pub inclusion: Vec<GF2Matrix>,
}

/// The two decreasing filtrations on functors over the full lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filtration {
    /// Keeps `F(U)` for `dim U >= p`.
    ByDimension,
    /// `⋂_{codim W < p} ker(F(U) -> F(U + W))`.
    ByKernels,
}

/// Level `p` of a filtration, as a checked subfunctor.
///
/// # Errors
/// The poset is not the full lattice, or restriction fails (which would
/// mean the subspaces do not form a subfunctor).
pub fn filtration(f: &PosetFunctor, p: usize, which: Filtration) -> Result<SubFunctor> {
    let poset = f.poset().clone();
    if poset.kind() != PosetKind::All {
        return Err(Error::Invalid("filtrations are defined on the full lattice".into()));
    }
    let m = poset.len();
    let bases: Vec<GF2Matrix> = (0..m)
        .map(|i| match which {
            Filtration::ByDimension => {
                if poset.element(i).dim() >= p {
                    GF2Matrix::identity(f.dim(i))
                } else {
                    GF2Matrix::zeros(0, f.dim(i))
                }
            }
            Filtration::ByKernels => {
                let u = poset.element(i);
                let mut stacked = GF2Matrix::zeros(0, f.dim(i));
                for w in poset.elements() {
                    if w.codim() < p {
                        let j = poset.index_of(&u.sum(w).expect("same ambient")).expect("sum in lattice");
                        stacked = stacked.vstack(f.map(i, j));
                    }
                }
                rref(&kernel_basis(&stacked)).0
            }
        })
        .collect();
    sub_functor_from_bases(f, &bases)
}

/// Subfunctor spanned pointwise by the rows of `bases[i]` (rref rows).
///
/// # Errors
/// A transition leaves the proposed subspaces.
pub fn sub_functor_from_bases(f: &PosetFunctor, bases: &[GF2Matrix]) -> Result<SubFunctor> {
    let poset = f.poset().clone();
    let inclusion: Vec<GF2Matrix> = bases.iter().map(GF2Matrix::transpose).collect();
    let dims: Vec<usize> = bases.iter().map(GF2Matrix::rows).collect();
    let mut covers = BTreeMap::new();
    for (i, j) in poset.covering_pairs() {
        let img = f.map(i, j).mul(&inclusion[i]);
        let coords = match solve_linear_system(&inclusion[j], &img) {
            Solution::Consistent { particular, .. } => particular,
            Solution::Inconsistent { .. } => {
                return Err(Error::Invariant(format!(
                    "subspaces are not stable under the map {:?} -> {:?}",
                    poset.element(i),
                    poset.element(j)
                )))
            }
        };
        covers.insert((i, j), coords);
    }
    Ok(SubFunctor {
        functor: PosetFunctor::new(poset, dims, covers)?,
        inclusion,
    })
}

/// Random functor: the image of a random natural transformation from a sum
/// of projectives to a sum of injectives, followed by a random change of
/// basis at every element.
///
/// # Errors
/// Never for a nonempty poset.
pub fn random_functor<R: Rng>(poset: &Arc<Poset>, rng: &mut R, max_summands: usize) -> Result<PosetFunctor> {
    let m = poset.len();
    if m == 0 {
        return PosetFunctor::new(poset.clone(), Vec::new(), BTreeMap::new());
    }
    let a = rng.gen_range(1..=max_summands.max(1));
    let b = rng.gen_range(1..=max_summands.max(1));
    let src: Vec<usize> = (0..a).map(|_| rng.gen_range(0..m)).collect();
    let dst: Vec<usize> = (0..b).map(|_| rng.gen_range(0..m)).collect();
    // t[j][i] allowed when src_i <= dst_j
    let t = GF2Matrix::from_fn(b, a, |j, i| poset.leq(src[i], dst[j]) && rng.gen_bool(0.6));
    let mut bases = Vec::with_capacity(m);
    let mut active_dst = Vec::with_capacity(m);
    for u in 0..m {
        let ps: Vec<usize> = (0..a).filter(|&i| poset.leq(src[i], u)).collect();
        let is: Vec<usize> = (0..b).filter(|&j| poset.leq(u, dst[j])).collect();
        let tu = GF2Matrix::from_fn(is.len(), ps.len(), |r, c| t.get(is[r], ps[c]));
        let (basis, _, _) = rref(&tu.transpose());
        bases.push(basis);
        active_dst.push(is);
    }
    let dims: Vec<usize> = bases.iter().map(GF2Matrix::rows).collect();
    let mut covers = BTreeMap::new();
    for (u, v) in poset.covering_pairs() {
        // I(u) -> I(v) keeps the injective summands still active at v
        let proj = GF2Matrix::from_fn(active_dst[v].len(), active_dst[u].len(), |r, c| {
            active_dst[v][r] == active_dst[u][c]
        });
        let img = proj.mul(&bases[u].transpose());
        let coords = match solve_linear_system(&bases[v].transpose(), &img) {
            Solution::Consistent { particular, .. } => particular,
            Solution::Inconsistent { .. } => {
                return Err(Error::Invariant("image functor is not natural".into()))
            }
        };
        covers.insert((u, v), coords);
    }
    let f = PosetFunctor::new(poset.clone(), dims, covers)?;
    Ok(twist_bases(&f, rng))
}

/// Conjugates every value by a random invertible matrix.
pub fn twist_bases<R: Rng>(f: &PosetFunctor, rng: &mut R) -> PosetFunctor {
    let poset = f.poset().clone();
    let (g, ginv): (Vec<GF2Matrix>, Vec<GF2Matrix>) = f.dims().iter().map(|&d| random_invertible(d, rng)).unzip();
    let covers = f
        .covering_maps()
        .iter()
        .map(|(&(i, j), m)| ((i, j), g[j].mul(m).mul(&ginv[i])))
        .collect();
    PosetFunctor::new(poset, f.dims().to_vec(), covers).expect("conjugate of a functor is a functor")
}

/// Random invertible matrix and its inverse.
pub fn random_invertible<R: Rng>(d: usize, rng: &mut R) -> (GF2Matrix, GF2Matrix) {
    loop {
        let m = GF2Matrix::from_fn(d, d, |_, _| rng.gen_bool(0.5));
        if m.is_invertible() {
            let inv = match solve_linear_system(&m, &GF2Matrix::identity(d)) {
                Solution::Consistent { particular, .. } => particular,
                Solution::Inconsistent { .. } => unreachable!("invertible"),
            };
            return (m, inv);
        }
    }
}

/// Coordinates of the vector `v` in a list of packed rows (rref basis).
#[must_use]
pub fn coordinates_in_rref(basis: &GF2Matrix, pivots: &[usize], v: &[u64]) -> Option<Vec<bool>> {
    let coords: Vec<bool> = pivots.iter().map(|&p| crate::gf2::get_bit(v, p)).collect();
    let mut rebuilt = vec![0u64; v.len()];
    for (r, &c) in coords.iter().enumerate() {
        if c {
            crate::gf2::xor_into(&mut rebuilt, basis.row(r));
        }
    }
    (rebuilt == v).then_some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn chain_poset() -> Arc<Poset> {
        // the lattice of F2^1 is the chain 0 < V
        Arc::new(Poset::lattice(1).unwrap())
    }

    #[test]
    fn l_complex_examples() {
        let p = chain_poset();
        let f = make_standard_functor(&p, &StandardKind::Constant { dim: 1 }).unwrap();
        let l = l_complex(&f);
        assert_eq!(l.complex.dims(), &[2, 1]);

        let w0 = Arc::new(Poset::nonzero(2).unwrap());
        let sv = make_standard_functor(&w0, &StandardKind::Simple(Subspace::full(2))).unwrap();
        assert_eq!(l_complex(&sv).complex.dims(), &[1, 3]);

        let empty = Arc::new(Poset::nonzero(0).unwrap());
        let z = PosetFunctor::new(empty, vec![], BTreeMap::new()).unwrap();
        assert!(l_complex(&z).complex.dims().is_empty());
    }

    #[test]
    fn derived_limit_examples() {
        for n in 1..=3 {
            let w0 = Arc::new(Poset::nonzero(n).unwrap());
            let c = make_standard_functor(&w0, &StandardKind::Constant { dim: 1 }).unwrap();
            let dims = derived_limit_dims(&c);
            assert_eq!(dims[0], 1);
            assert!(dims[1..].iter().all(|&d| d == 0));
            for gamma in w0.elements() {
                let j = make_standard_functor(&w0, &StandardKind::CoInduced { gamma: gamma.clone(), dim: 2 }).unwrap();
                let d = derived_limit_dims(&j);
                assert!(d[1..].iter().all(|&x| x == 0), "{gamma:?}: {d:?}");
            }
        }
        let w = Arc::new(Poset::lattice(2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let f = random_functor(&w, &mut rng, 3).unwrap();
            let d = derived_limit_dims(&f);
            assert_eq!(d[0], f.dim(0));
            assert!(d[1..].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn equalizer_matches_l_complex() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            let w0 = Arc::new(Poset::nonzero(n).unwrap());
            for _ in 0..8 {
                let f = random_functor(&w0, &mut rng, 4).unwrap();
                assert_eq!(limit_by_equalizer(&f), derived_limit_dims(&f)[0]);
            }
        }
    }

    #[test]
    fn standard_functor_shapes() {
        let w = Arc::new(Poset::lattice(2).unwrap());
        let sv = make_standard_functor(&w, &StandardKind::Simple(Subspace::full(2))).unwrap();
        assert_eq!(sv.dims(), &[0, 0, 0, 0, 1]);
        let p0 = make_standard_functor(&w, &StandardKind::Projective(Subspace::zero(2))).unwrap();
        assert_eq!(p0, make_standard_functor(&w, &StandardKind::Constant { dim: 1 }).unwrap());
        let i0 = make_standard_functor(&w, &StandardKind::Injective(Subspace::zero(2))).unwrap();
        assert_eq!(i0.dims(), &[1, 0, 0, 0, 0]);
        assert!(make_standard_functor(&Arc::new(Poset::nonzero(2).unwrap()), &StandardKind::Simple(Subspace::zero(2))).is_err());
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = Arc::new(Poset::lattice(2).unwrap());
        let f = random_functor(&w, &mut rng, 3).unwrap();
        let back = PosetFunctor::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let bad = json!({"poset":"W0","n":2,"dims":{"[1]":1,"[1,2]":1},"maps":{}});
        let err = PosetFunctor::from_json(&bad).unwrap_err().to_string();
        assert!(err.contains("missing map"), "{err}");
        let ok = json!({"poset":"W0","n":2,"dims":{"[1,2]":1},"maps":{}});
        assert!(PosetFunctor::from_json(&ok).is_ok());
    }

    #[test]
    fn lambda_identity_and_right_action() {
        let w0 = Arc::new(Poset::nonzero(2).unwrap());
        let c = make_standard_functor(&w0, &StandardKind::Constant { dim: 1 }).unwrap();
        let id: Vec<usize> = (0..w0.len()).collect();
        let (g, mats) = lambda_phi(&c, &id).unwrap();
        assert_eq!(g, c);
        for m in &mats {
            assert_eq!(*m, GF2Matrix::identity(m.rows()));
        }
        let group = crate::subspace::enumerate_gl(2, false).unwrap();
        for g in &group {
            assert_eq!(gl_action_on_limit(&c, g, 0).unwrap(), GF2Matrix::identity(1));
        }
    }

    #[test]
    fn filtration_examples() {
        let w = Arc::new(Poset::lattice(2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_functor(&w, &mut rng, 3).unwrap();
        assert_eq!(filtration(&f, 0, Filtration::ByDimension).unwrap().functor, f);
        assert_eq!(filtration(&f, 3, Filtration::ByDimension).unwrap().functor.total_dim(), 0);
        for wsub in w.elements() {
            let iw = make_standard_functor(&w, &StandardKind::Injective(wsub.clone())).unwrap();
            let f1 = filtration(&iw, 1, Filtration::ByKernels).unwrap();
            assert_eq!(f1.functor.dim(0), usize::from(wsub.codim() >= 1));
        }
    }
}
