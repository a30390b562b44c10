//! Steinberg modules, the restriction maps `r` and `s`, and both Lusztig
//! complexes.
//!
//! A Steinberg module is attached to an interval `W ⊆ Z` of subspaces of
//! `F2^n`: with `m = dim Z/W >= 1` it is the top reduced homology
//! `H̃_{m-2}` of the order complex of the open interval `{X : W ⊊ X ⊊ Z}`,
//! which is isomorphic to the building of `Z/W`. Chains are augmented, so
//! for `m = 1` the open interval is empty and the module is `F2` spanned by
//! the empty flag. For `m = 0` the module is `F2` by convention.
//!
//! Since `m - 2` is the top degree, the module is the space of cycles on
//! complete flags `W ⊊ X_1 ⊊ ... ⊊ X_{m-1} ⊊ Z`. Its basis is the rref of
//! that cycle space and coordinates are read at pivot columns.
//!
//! * `r` to a hyperplane `H` (with `W ⊆ H ⊊ Z`) keeps the flags whose last
//!   step is `H` and deletes it.
//! * `s` to a line `D` over `W` keeps the flags whose first step is `D` and
//!   deletes it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functor::coordinates_in_rref;
use crate::gf2::{kernel_basis, rref, CochainComplex, GF2Matrix};
use crate::subspace::{enumerate_subspaces, gaussian_binomial, quotient_chart, GLElement, Poset, PosetKind, Subspace};

/// Default cap on the ambient dimension for Steinberg computations.
pub const STEINBERG_CAP: usize = 4;

/// Steinberg module of an interval `lo ⊆ hi`.
#[derive(Clone, Debug)]
pub struct SteinbergModule {
    lo: Subspace,
    hi: Subspace,
    /// Interior steps `X_1, ..., X_{m-1}` of every complete flag.
    flags: Vec<Vec<Subspace>>,
    flag_index: HashMap<Vec<Subspace>, usize>,
    basis: GF2Matrix,
    pivots: Vec<usize>,
}

fn boundary_matrix(m: usize, flags: &[Vec<Subspace>]) -> GF2Matrix {
    if m <= 1 {
        return GF2Matrix::zeros(0, flags.len());
    }
    let mut faces: HashMap<Vec<Subspace>, usize> = HashMap::new();
    let mut entries = Vec::new();
    for (c, f) in flags.iter().enumerate() {
        for drop in 0..f.len() {
            let mut face = f.clone();
            face.remove(drop);
            let next = faces.len();
            let r = *faces.entry(face).or_insert(next);
            entries.push((r, c));
        }
    }
    let mut b = GF2Matrix::zeros(faces.len(), flags.len());
    for (r, c) in entries {
        b.flip(r, c);
    }
    b
}

fn complete_flags(lo: &Subspace, hi: &Subspace) -> Vec<Vec<Subspace>> {
    let m = hi.dim() - lo.dim();
    if m <= 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(x: &Subspace, hi: &Subspace, steps: usize, cur: &mut Vec<Subspace>, out: &mut Vec<Vec<Subspace>>) {
        if cur.len() == steps {
            out.push(cur.clone());
            return;
        }
        for y in next_steps(x, hi) {
            cur.push(y.clone());
            rec(&y, hi, steps, cur, out);
            cur.pop();
        }
    }
    rec(lo, hi, m - 1, &mut cur, &mut out);
    out
}

/// Subspaces `Y` with `X ⊂ Y ⊆ hi` and `dim Y = dim X + 1`, sorted.
fn next_steps(x: &Subspace, hi: &Subspace) -> Vec<Subspace> {
    let mut ys: Vec<Subspace> = hi
        .vectors()
        .into_iter()
        .filter(|&v| !x.contains_vec(v))
        .map(|v| {
            let mut rows = x.rows().to_vec();
            rows.push(v);
            Subspace::span(x.ambient(), &rows)
        })
        .collect();
    ys.sort();
    ys.dedup();
    ys
}

impl SteinbergModule {
    /// Builds the module of the interval `lo ⊆ hi`.
    ///
    /// # Errors
    /// `lo` is not contained in `hi`.
    pub fn new(lo: &Subspace, hi: &Subspace) -> Result<Self> {
        if !hi.contains(lo) {
            return Err(Error::Invalid(format!("{lo:?} is not contained in {hi:?}")));
        }
        let flags = complete_flags(lo, hi);
        let flag_index: HashMap<Vec<Subspace>, usize> =
            flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let boundary = boundary_matrix(hi.dim() - lo.dim(), &flags);
        let (basis, _, pivots) = rref(&kernel_basis(&boundary));
        Ok(Self {
            lo: lo.clone(),
            hi: hi.clone(),
            flags,
            flag_index,
            basis,
            pivots,
        })
    }

    /// Rebuilds a module from stored cycles, checking that they are cycles
    /// spanning a space of the expected dimension `2^{m(m-1)/2}`.
    ///
    /// # Errors
    /// The rows fail either check.
    pub fn from_cycles(lo: &Subspace, hi: &Subspace, cycles: &GF2Matrix) -> Result<Self> {
        if !hi.contains(lo) {
            return Err(Error::Invalid(format!("{lo:?} is not contained in {hi:?}")));
        }
        let m = hi.dim() - lo.dim();
        let flags = complete_flags(lo, hi);
        if cycles.cols() != flags.len() {
            return Err(Error::Shape(format!("{} columns for {} flags", cycles.cols(), flags.len())));
        }
        let boundary = boundary_matrix(m, &flags);
        if !boundary.mul(&cycles.transpose()).is_zero() {
            return Err(Error::Invariant("stored rows are not cycles".into()));
        }
        let expected = 1usize << (m * m.saturating_sub(1) / 2);
        let (basis, rank, pivots) = rref(cycles);
        if rank != expected {
            return Err(Error::Invariant(format!("stored rank {rank}, expected {expected}")));
        }
        let flag_index = flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Ok(Self {
            lo: lo.clone(),
            hi: hi.clone(),
            flags,
            flag_index,
            basis,
            pivots,
        })
    }

    #[must_use]
    pub fn lo(&self) -> &Subspace {
        &self.lo
    }

    #[must_use]
    pub fn hi(&self) -> &Subspace {
        &self.hi
    }

    /// `dim hi / lo`.
    #[must_use]
    pub fn rank(&self) -> usize {
        self.hi.dim() - self.lo.dim()
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Rows are the basis cycles written on [`Self::flags`].
    #[must_use]
    pub fn cycle_basis(&self) -> &GF2Matrix {
        &self.basis
    }

    #[must_use]
    pub fn flags(&self) -> &[Vec<Subspace>] {
        &self.flags
    }

    /// Coordinates of a cycle given as a set of flags (a GF(2) chain).
    ///
    /// # Errors
    /// The chain is not a cycle or mentions an unknown flag.
    pub fn coordinates(&self, chain: &[Vec<Subspace>]) -> Result<Vec<bool>> {
        let mut v = vec![0u64; self.flags.len().div_ceil(64)];
        for f in chain {
            let i = *self
                .flag_index
                .get(f)
                .ok_or_else(|| Error::Invariant(format!("{f:?} is not a flag of the interval")))?;
            v[i / 64] ^= 1 << (i % 64);
        }
        coordinates_in_rref(&self.basis, &self.pivots, &v)
            .ok_or_else(|| Error::Invariant("chain is not a cycle of the Steinberg complex".into()))
    }

    /// Flags (with multiplicity mod 2 already applied) of basis cycle `i`.
    #[must_use]
    pub fn cycle(&self, i: usize) -> Vec<Vec<Subspace>> {
        crate::gf2::ones(self.basis.row(i)).map(|c| self.flags[c].clone()).collect()
    }

    /// Matrix of a flag-level transformation, expressed in `target`'s basis.
    fn transport(
        &self,
        target: &SteinbergModule,
        mut on_flag: impl FnMut(&[Subspace]) -> Option<Vec<Subspace>>,
    ) -> Result<GF2Matrix> {
        let mut out = GF2Matrix::zeros(target.dim(), self.dim());
        for i in 0..self.dim() {
            let image: Vec<Vec<Subspace>> = self.cycle(i).iter().filter_map(|f| on_flag(f)).collect();
            let coords = target.coordinates(&image)?;
            for (r, c) in coords.into_iter().enumerate() {
                if c {
                    out.set(r, i, true);
                }
            }
        }
        Ok(out)
    }

    /// Left action of `g` on the module of `(lo, hi)`, which must be
    /// `g`-stable.
    ///
    /// # Errors
    /// `g` moves the interval.
    pub fn left_action(&self, g: &GLElement) -> Result<GF2Matrix> {
        if g.act(&self.lo) != self.lo || g.act(&self.hi) != self.hi {
            return Err(Error::Invalid("group element moves the interval".into()));
        }
        self.transport(self, |f| Some(f.iter().map(|x| g.act(x)).collect()))
    }
}

type Cache = Mutex<HashMap<(Subspace, Subspace), Arc<SteinbergModule>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached Steinberg module of `lo ⊆ hi`.
///
/// # Errors
/// `lo` not contained in `hi`.
pub fn interval_module(lo: &Subspace, hi: &Subspace) -> Result<Arc<SteinbergModule>> {
    let key = (lo.clone(), hi.clone());
    if let Some(m) = cache().lock().expect("cache lock").get(&key) {
        return Ok(m.clone());
    }
    let m = Arc::new(match crate::cache::load_steinberg(lo, hi) {
        Some(loaded) => loaded,
        None => SteinbergModule::new(lo, hi)?,
    });
    cache().lock().expect("cache lock").insert(key, m.clone());
    Ok(m)
}

/// `St` of `F2^n`.
///
/// # Errors
/// `n` above [`STEINBERG_CAP`].
pub fn steinberg(n: usize) -> Result<Arc<SteinbergModule>> {
    steinberg_capped(n, STEINBERG_CAP)
}

/// `St` of `F2^n` with an explicit cap.
///
/// # Errors
/// `n` above `cap`.
pub fn steinberg_capped(n: usize, cap: usize) -> Result<Arc<SteinbergModule>> {
    if n > cap {
        return Err(Error::Cap {
            what: "Steinberg dimension",
            value: n,
            cap,
        });
    }
    interval_module(&Subspace::zero(n), &Subspace::full(n))
}

/// `r : St(lo, hi) -> St(lo, h)` for a hyperplane `h` of `hi` containing `lo`.
///
/// # Errors
/// `h` is not such a hyperplane.
pub fn r_interval(lo: &Subspace, hi: &Subspace, h: &Subspace) -> Result<GF2Matrix> {
    if !(hi.contains(h) && h.contains(lo) && h.dim() + 1 == hi.dim()) {
        return Err(Error::Invalid(format!("{h:?} is not a hyperplane of {hi:?} over {lo:?}")));
    }
    let src = interval_module(lo, hi)?;
    let dst = interval_module(lo, h)?;
    if src.rank() == 1 {
        return Ok(GF2Matrix::identity(1));
    }
    src.transport(&dst, |f| {
        (f.last() == Some(h)).then(|| f[..f.len() - 1].to_vec())
    })
}

/// `s : St(lo, hi) -> St(d, hi)` for a line `d` over `lo` inside `hi`.
///
/// # Errors
/// `d` is not such a line.
pub fn s_interval(lo: &Subspace, hi: &Subspace, d: &Subspace) -> Result<GF2Matrix> {
    if !(hi.contains(d) && d.contains(lo) && lo.dim() + 1 == d.dim()) {
        return Err(Error::Invalid(format!("{d:?} is not a line of {hi:?} over {lo:?}")));
    }
    let src = interval_module(lo, hi)?;
    let dst = interval_module(d, hi)?;
    if src.rank() == 1 {
        return Ok(GF2Matrix::identity(1));
    }
    src.transport(&dst, |f| (f.first() == Some(d)).then(|| f[1..].to_vec()))
}

/// `r_{V,H} : St_V -> St_H` for `V = F2^n`.
///
/// # Errors
/// `h` is not a hyperplane.
pub fn r_map(n: usize, h: &Subspace) -> Result<GF2Matrix> {
    r_interval(&Subspace::zero(n), &Subspace::full(n), h)
}

/// `s_{V,V/D} : St_V -> St_{V/D}` with `V/D` identified with `F2^{n-1}`
/// through [`quotient_chart`].
///
/// # Errors
/// `d` is not a line.
pub fn s_map(n: usize, d: &Subspace) -> Result<GF2Matrix> {
    let v = Subspace::full(n);
    let s = s_interval(&Subspace::zero(n), &v, d)?;
    let chart = quotient_chart(d);
    let over_d = interval_module(d, &v)?;
    let target = steinberg_capped(n - 1, n)?;
    let transport = over_d.transport(&target, |f| {
        Some(f.iter().map(|x| chart.project_subspace(x)).collect())
    })?;
    Ok(transport.mul(&s))
}

/// Right action `R(g)` on `St` of `F2^n`: the chain `c` goes to `g^{-1}c`,
/// so a coefficient at `σ` becomes the coefficient at `gσ`. Satisfies
/// `R(gh) = R(h) R(g)`.
///
/// # Errors
/// Cap exceeded.
pub fn gl_on_steinberg(g: &GLElement) -> Result<GF2Matrix> {
    steinberg(g.n())?.left_action(&g.inverse())
}

/// Which Lusztig complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LusztigVariant {
    /// Terms `⊕_{dim W = p} St_W`, boundary blocks `r`.
    Subspaces = 1,
    /// Terms `⊕_{codim W = p} St_{V/W}`, boundary blocks `s`.
    Quotients = 2,
}

impl LusztigVariant {
    /// # Errors
    /// Anything but 1 or 2.
    pub fn from_index(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Self::Subspaces),
            2 => Ok(Self::Quotients),
            _ => Err(Error::Invalid(format!("variant must be 1 or 2, got {v}"))),
        }
    }
}

/// Lusztig complex `Lu_n -> ... -> Lu_0`, stored as a chain complex.
#[derive(Clone, Debug)]
pub struct LusztigComplex {
    pub n: usize,
    pub variant: LusztigVariant,
    /// `summands[p]`: the subspaces indexing `Lu_p`.
    pub summands: Vec<Vec<Subspace>>,
    /// `offsets[p][i]`: first coordinate of summand `i` in `Lu_p`.
    pub offsets: Vec<Vec<usize>>,
    /// `boundaries[p - 1] = d_p : Lu_p -> Lu_{p-1}` for `p = 1..=n`.
    pub boundaries: Vec<GF2Matrix>,
}

impl LusztigComplex {
    /// `dim Lu_p` for `p = 0..=n`.
    #[must_use]
    pub fn dims(&self) -> Vec<usize> {
        self.offsets.iter().map(|o| *o.last().expect("nonempty")).collect()
    }

    /// As a cochain complex in degrees `-n..=0` (degree `-p` holds `Lu_p`).
    ///
    /// # Errors
    /// `d∘d != 0`.
    pub fn to_cochain(&self) -> Result<CochainComplex> {
        let dims: Vec<usize> = self.dims().into_iter().rev().collect();
        let diffs: Vec<GF2Matrix> = self.boundaries.iter().rev().cloned().collect();
        CochainComplex::new(-(self.n as i32), dims, diffs)
    }

    /// Homology dimensions `H_p` for `p = 0..=n`.
    ///
    /// # Errors
    /// `d∘d != 0`.
    pub fn homology_dims(&self) -> Result<Vec<usize>> {
        Ok(self.to_cochain()?.homology_dims().into_iter().rev().collect())
    }

    /// Euler characteristic `Σ (-1)^p dim Lu_p`.
    #[must_use]
    pub fn euler_characteristic(&self) -> i64 {
        self.dims()
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// `Ok` when `d∘d = 0` and every homology group vanishes; otherwise a
    /// description of the first failure.
    pub fn verify(&self) -> std::result::Result<(), String> {
        match self.homology_dims() {
            Err(e) => Err(e.to_string()),
            Ok(h) => match h.iter().position(|&x| x != 0) {
                None => Ok(()),
                Some(p) => Err(format!("H_{p} has dimension {}", h[p])),
            },
        }
    }
}

/// Builds a Lusztig complex of `F2^n`.
///
/// # Errors
/// `n` is 0 or above the cap.
pub fn lusztig_complex(n: usize, variant: LusztigVariant) -> Result<LusztigComplex> {
    if n == 0 {
        return Err(Error::Invalid("the Lusztig complex needs n >= 1".into()));
    }
    if n > STEINBERG_CAP {
        return Err(Error::Cap {
            what: "Lusztig dimension",
            value: n,
            cap: STEINBERG_CAP,
        });
    }
    let zero = Subspace::zero(n);
    let full = Subspace::full(n);
    let summands: Vec<Vec<Subspace>> = (0..=n)
        .map(|p| {
            let d = match variant {
                LusztigVariant::Subspaces => p,
                LusztigVariant::Quotients => n - p,
            };
            enumerate_subspaces(n, Some(d))
        })
        .collect::<Result<_>>()?;
    let module = |w: &Subspace| -> Result<Arc<SteinbergModule>> {
        match variant {
            LusztigVariant::Subspaces => interval_module(&zero, w),
            LusztigVariant::Quotients => interval_module(w, &full),
        }
    };
    let mut offsets = Vec::new();
    for layer in &summands {
        let mut acc = vec![0];
        for w in layer {
            acc.push(acc.last().expect("nonempty") + module(w)?.dim());
        }
        offsets.push(acc);
    }
    let mut boundaries = Vec::new();
    for p in 1..=n {
        let rows = *offsets[p - 1].last().expect("nonempty");
        let cols = *offsets[p].last().expect("nonempty");
        let mut d = GF2Matrix::zeros(rows, cols);
        for (j, w) in summands[p].iter().enumerate() {
            for (i, w2) in summands[p - 1].iter().enumerate() {
                let block = match variant {
                    LusztigVariant::Subspaces if w.contains(w2) => Some(r_interval(&zero, w, w2)?),
                    LusztigVariant::Quotients if w2.contains(w) => Some(s_interval(w, &full, w2)?),
                    _ => None,
                };
                if let Some(b) = block {
                    d.set_block(offsets[p - 1][i], offsets[p][j], &b);
                }
            }
        }
        boundaries.push(d);
    }
    Ok(LusztigComplex {
        n,
        variant,
        summands,
        offsets,
        boundaries,
    })
}

/// `dim St_n` from the vanishing Euler characteristic of the Lusztig
/// complex: `Σ_p (-1)^p [n choose p]_2 dim St_p = 0`, `dim St_0 = 1`.
#[must_use]
pub fn euler_recursion_dims(max_n: usize) -> Vec<i64> {
    let mut st = vec![1i64];
    for n in 1..=max_n {
        let mut s = 0i64;
        for (p, &d) in st.iter().enumerate() {
            let term = gaussian_binomial(n, p) as i64 * d;
            s += if p % 2 == 0 { term } else { -term };
        }
        // (-1)^n dim St_n = -s
        st.push(if n % 2 == 0 { -s } else { s });
    }
    st
}

/// Reduced homology of the order complex of the proper nonzero subspaces
/// of `F2^n`, indexed by degree `k + 1` for `k = -1..=n-2`.
///
/// # Errors
/// `n` above the enumeration cap.
pub fn building_reduced_homology(n: usize) -> Result<Vec<usize>> {
    let p = Poset::new(PosetKind::Bounded { d: 1, c: 1 }, n)?;
    let mut chains: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for k in 0.. {
        let c = p.chains(k);
        if c.is_empty() {
            break;
        }
        chains.push(c);
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> = chains
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    // homological boundary C_j -> C_{j-1}, with C_{-1} the empty simplex
    let mut diffs = Vec::new();
    for j in 1..chains.len() {
        let mut d = GF2Matrix::zeros(chains[j - 1].len(), chains[j].len());
        for (c, s) in chains[j].iter().enumerate() {
            for drop in 0..s.len() {
                let mut f = s.clone();
                f.remove(drop);
                let r = index[j - 1][&f];
                d.flip(r, c);
            }
        }
        diffs.push(d);
    }
    let dims: Vec<usize> = chains.iter().map(Vec::len).rev().collect();
    let cochain = CochainComplex::new(-(dims.len() as i32) + 1, dims, diffs.into_iter().rev().collect())?;
    Ok(cochain.homology_dims().into_iter().rev().collect())
}

/// Flips one entry of a Lusztig boundary.
#[must_use]
pub fn mutate(lu: &LusztigComplex, boundary: usize, row: usize, col: usize) -> LusztigComplex {
    let mut out = lu.clone();
    out.boundaries[boundary].flip(row, col);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::enumerate_gl;

    #[test]
    fn small_dimensions() {
        assert_eq!(steinberg(0).unwrap().dim(), 1);
        assert_eq!(steinberg(1).unwrap().dim(), 1);
        // oracle: reduced H_0 of three isolated points is the kernel of the
        // 1x3 augmentation, rank 1, so dimension 2
        let aug = GF2Matrix::from_masks(&[0b111], 3);
        assert_eq!(3 - aug.rank(), 2);
        assert_eq!(steinberg(2).unwrap().dim(), 2);
        assert_eq!(steinberg(3).unwrap().dim(), 8);
        assert_eq!(euler_recursion_dims(4), vec![1, 1, 2, 8, 64]);
        assert!(steinberg(5).is_err());
    }

    #[test]
    fn r_and_s_examples() {
        let v1 = Subspace::full(1);
        assert_eq!(r_map(1, &Subspace::zero(1)).unwrap(), GF2Matrix::identity(1));
        assert_eq!(s_map(1, &v1).unwrap(), GF2Matrix::identity(1));
        for h in enumerate_subspaces(2, Some(1)).unwrap() {
            assert_eq!(r_map(2, &h).unwrap().rank(), 1);
            assert_eq!(s_map(2, &h).unwrap().rank(), 1);
        }
        for n in 2..=3 {
            let total: usize = enumerate_subspaces(n, Some(n - 1))
                .unwrap()
                .iter()
                .map(|h| r_map(n, h).unwrap().rank())
                .sum();
            assert!(total > 0);
        }
    }

    #[test]
    fn r_and_s_commute() {
        let n = 3;
        let zero = Subspace::zero(n);
        let v = Subspace::full(n);
        for d in enumerate_subspaces(n, Some(1)).unwrap() {
            for h in enumerate_subspaces(n, Some(2)).unwrap() {
                if !h.contains(&d) {
                    continue;
                }
                let lhs = s_interval(&zero, &h, &d).unwrap().mul(&r_interval(&zero, &v, &h).unwrap());
                let rhs = r_interval(&d, &v, &h).unwrap().mul(&s_interval(&zero, &v, &d).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lusztig_small() {
        let lu = lusztig_complex(2, LusztigVariant::Subspaces).unwrap();
        assert_eq!(lu.dims(), vec![1, 3, 2]);
        assert_eq!(lu.homology_dims().unwrap(), vec![0, 0, 0]);
        let lu2 = lusztig_complex(2, LusztigVariant::Quotients).unwrap();
        assert_eq!(lu2.dims(), vec![1, 3, 2]);
        assert!(lu2.verify().is_ok());
        let lu3 = lusztig_complex(3, LusztigVariant::Subspaces).unwrap();
        assert_eq!(lu3.dims(), vec![1, 7, 14, 8]);
        assert!(lu3.verify().is_ok());
        assert_eq!(lu3.euler_characteristic(), 0);
    }

    #[test]
    fn right_action_law() {
        let g2 = enumerate_gl(2, false).unwrap();
        for g in &g2 {
            for h in &g2 {
                let lhs = gl_on_steinberg(&g.compose(h)).unwrap();
                let rhs = gl_on_steinberg(h).unwrap().mul(&gl_on_steinberg(g).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        let three_cycle = GLElement::from_columns(2, vec![0b10, 0b11]).unwrap();
        let r = gl_on_steinberg(&three_cycle).unwrap();
        assert_ne!(r, GF2Matrix::identity(2));
        assert_eq!(r.mul(&r).mul(&r), GF2Matrix::identity(2));
    }

    #[test]
    fn folkman_vanishing_small() {
        for n in 1..=3 {
            let h = building_reduced_homology(n).unwrap();
            let top = h.len() - 1;
            for (i, &d) in h.iter().enumerate() {
                if i < top {
                    assert_eq!(d, 0, "n={n}, degree {}", i as i64 - 1);
                }
            }
            assert_eq!(h[top], steinberg(n).unwrap().dim());
        }
    }
}
