//! Derived functors of the finite part of `(e^h)·H*V`, the modules
//! `M(V;h)`, and the checks built on them.
//!
//! For each degree `d` the functor `Ψ_d` on the full lattice sends `W` to the
//! degree-`d` part of `(e_W)^h·H*V`. Multiplication by `(e_W)^h` is
//! injective, so `Ψ_d(W)` is stored as `H^{d - h·deg e_W}`, and the
//! transition `W ⊆ W'` multiplies by the cofactor `(e_W / e_{W'})^h`.
//!
//! `R^k Pf` in degree `d` is `H^k` of the complex `T` with `T^0 = Ψ_d(0)`
//! and `T^{j+1} = L^j(Ψ_d` restricted to the nonzero subspaces`)`, where
//! `T^0 -> T^1` sends `x` to its images at all vertices. The cross-check
//! computes `Ext^k(S_0, Ψ_d)` with the Steinberg complex.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functor::{gl_action_on_limit, l_complex, LComplex, PosetFunctor};
use crate::gf2::{homology, kernel_basis, CochainComplex, GF2Matrix, Homology};
use crate::resolutions::ext_dims;
use crate::steenrod::{ideal_basis, FormProduct, Poly, TruncatedPolyAlgebra};
use crate::steinberg::steinberg;
use crate::subspace::{enumerate_gl, GLElement, Poset, Subspace};

/// Default cap on `n` for the `M(V;h)` pipeline.
pub const PF_DIMENSION_CAP: usize = 3;

/// `Ψ_d` for `d = 0..=cap`.
#[derive(Clone, Debug)]
pub struct IdealFunctorFamily {
    pub e: FormProduct,
    pub h: usize,
    pub algebra: TruncatedPolyAlgebra,
    /// `functors[d]`, on the full lattice.
    pub functors: Vec<PosetFunctor>,
}

impl IdealFunctorFamily {
    /// `h·deg e_W`.
    #[must_use]
    pub fn shift(&self, w: &Subspace) -> usize {
        self.h * self.e.e_sub(w).degree()
    }

    /// `Ψ_d(W)` as polynomials (rref rows in `H^d V`).
    ///
    /// # Errors
    /// `d` above the cap.
    pub fn value_basis(&self, w: &Subspace, d: usize) -> Result<GF2Matrix> {
        ideal_basis(&self.algebra, &self.e.e_sub(w).power(self.h), d)
    }
}

/// `Ψ_d` on the full lattice of `F2^n`.
///
/// # Errors
/// `d` above the algebra's cap.
pub fn psi_functor(alg: &TruncatedPolyAlgebra, e: &FormProduct, h: usize, d: usize, poset: &Arc<Poset>) -> Result<PosetFunctor> {
    let shift = |w: &Subspace| h * e.e_sub(w).degree();
    let dims: Vec<usize> = poset
        .elements()
        .iter()
        .map(|w| d.checked_sub(shift(w)).map_or(0, |k| alg.dim(k)))
        .collect();
    let mut covers = std::collections::BTreeMap::new();
    for (i, j) in poset.covering_pairs() {
        let (wi, wj) = (poset.element(i), poset.element(j));
        let m = match d.checked_sub(shift(wi)) {
            Some(k) => {
                let cofactor = e.e_sub(wi).divide(&e.e_sub(wj)).expect("e_W' divides e_W").power(h);
                alg.mul_matrix(&cofactor.polynomial(), k)?
            }
            None => GF2Matrix::zeros(dims[j], 0),
        };
        covers.insert((i, j), m);
    }
    PosetFunctor::new(poset.clone(), dims, covers)
}

/// `Ψ(e^h)` degree by degree up to `cap`.
///
/// # Errors
/// Ambient mismatch or caps.
pub fn psi_of_ideal(e: &FormProduct, h: usize, cap: usize) -> Result<IdealFunctorFamily> {
    let n = e.n();
    let poset = Arc::new(Poset::lattice(n)?);
    let algebra = TruncatedPolyAlgebra::new(n, cap);
    let functors = (0..=cap)
        .into_par_iter()
        .map(|d| psi_functor(&algebra, e, h, d, &poset))
        .collect::<Result<_>>()?;
    Ok(IdealFunctorFamily {
        e: e.clone(),
        h,
        algebra,
        functors,
    })
}

/// The complex `T` computing `R^• Pf` in one degree.
#[derive(Clone, Debug)]
pub struct PfComplex {
    pub complex: CochainComplex,
    /// `L•` of the restriction to the nonzero subspaces.
    pub limits: Option<LComplex>,
    /// Full-lattice index of the top element of each vertex of `L•`.
    pub sub_to_full: Vec<usize>,
}

/// Builds `T` for a functor on the full lattice.
///
/// # Errors
/// The functor is not on the full lattice.
pub fn pf_complex(psi: &PosetFunctor) -> Result<PfComplex> {
    let poset = psi.poset();
    let n = poset.n();
    let zero = poset.index_of(&Subspace::zero(n)).ok_or_else(|| Error::Invalid("expected the full lattice".into()))?;
    if n == 0 {
        return Ok(PfComplex {
            complex: CochainComplex::new(0, vec![psi.dim(zero)], Vec::new())?,
            limits: None,
            sub_to_full: Vec::new(),
        });
    }
    let sub = Arc::new(Poset::nonzero(n)?);
    let sub_to_full: Vec<usize> = sub
        .elements()
        .iter()
        .map(|w| poset.index_of(w).expect("nonzero subspace of the lattice"))
        .collect();
    let restricted = psi.restrict(sub)?;
    let lc = l_complex(&restricted);
    let mut rho = GF2Matrix::zeros(lc.complex.dim(0), psi.dim(zero));
    for (s, simplex) in lc.order.simplices[0].iter().enumerate() {
        rho.set_block(lc.block(0, s).start, 0, psi.map(zero, sub_to_full[simplex[0]]));
    }
    let mut dims = vec![psi.dim(zero)];
    dims.extend_from_slice(lc.complex.dims());
    let mut diffs = vec![rho];
    diffs.extend_from_slice(lc.complex.diffs());
    Ok(PfComplex {
        complex: CochainComplex::new(0, dims, diffs)?,
        limits: Some(lc),
        sub_to_full,
    })
}

fn padded(mut v: Vec<usize>, len: usize) -> Vec<usize> {
    v.resize(len.max(v.len()), 0);
    v
}

/// `dim R^k Pf` for `k = 0..=n+1`, from `T`.
///
/// # Errors
/// The functor is not on the full lattice.
pub fn rpf_dims_via_limits(psi: &PosetFunctor) -> Result<Vec<usize>> {
    let n = psi.poset().n();
    Ok(padded(pf_complex(psi)?.complex.homology_dims(), n + 2))
}

/// `dim Ext^k(S_0, Ψ)` for `k = 0..=n+1`.
///
/// # Errors
/// The functor is not on the full lattice.
pub fn rpf_dims_via_ext(psi: &PosetFunctor) -> Result<Vec<usize>> {
    let n = psi.poset().n();
    Ok(padded(ext_dims(psi)?, n + 2))
}

/// `dim R^k Pf((e^h)·H*V)` in degrees `0..=cap`, computed both ways.
///
/// # Errors
/// The two computations disagree.
pub fn r_pf(e: &FormProduct, h: usize, k: usize, cap: usize) -> Result<Vec<usize>> {
    Ok(rpf_table(e, h, cap)?.into_iter().map(|row| row.get(k).copied().unwrap_or(0)).collect())
}

/// `table[d][k] = dim R^k Pf` in degree `d`, `k = 0..=n+1`, checked
/// against `Ext(S_0, Ψ_d)`.
///
/// # Errors
/// The two computations disagree.
pub fn rpf_table(e: &FormProduct, h: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let family = psi_of_ideal(e, h, cap)?;
    family
        .functors
        .par_iter()
        .enumerate()
        .map(|(d, psi)| {
            let a = rpf_dims_via_limits(psi)?;
            let b = rpf_dims_via_ext(psi)?;
            if a != b {
                return Err(Error::Invariant(format!(
                    "degree {d}: derived limits give {a:?}, Ext(S_0, -) gives {b:?}"
                )));
            }
            Ok(a)
        })
        .collect()
}

/// Graded dimensions of `M(V;h) = R^n Pf(c_V^h·H*V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MTable {
    pub n: usize,
    pub h: usize,
    pub dims: Vec<usize>,
}

fn check_n(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::Cap {
            what: "dimension n",
            value: n,
            cap,
        })
    } else {
        Ok(())
    }
}

/// `dim M^d(V;h)` for `d = 0..=cap`, from `T`.
///
/// # Errors
/// `n` above [`PF_DIMENSION_CAP`].
pub fn m_of_v(n: usize, h: usize, cap: usize) -> Result<MTable> {
    m_of_v_capped(n, h, cap, PF_DIMENSION_CAP)
}

/// As [`m_of_v`] with an explicit cap on `n`.
///
/// # Errors
/// `n` above `n_cap`.
pub fn m_of_v_capped(n: usize, h: usize, cap: usize, n_cap: usize) -> Result<MTable> {
    check_n(n, n_cap)?;
    let family = psi_of_ideal(&FormProduct::c_v(n), h, cap)?;
    let dims = family
        .functors
        .par_iter()
        .map(|psi| Ok(pf_complex(psi)?.complex.homology_dims().get(n).copied().unwrap_or(0)))
        .collect::<Result<_>>()?;
    Ok(MTable { n, h, dims })
}

/// Chain map `T_d -> T_{d+1}` induced by multiplication by the form `u`.
fn multiplication_chain_map(
    family: &IdealFunctorFamily,
    d: usize,
    u: u32,
    src: &PfComplex,
    dst: &PfComplex,
) -> Result<Vec<GF2Matrix>> {
    let alg = &family.algebra;
    let n = alg.n();
    let form = Poly::form(n, u);
    let poset = family.functors[d].poset();
    let mul_at = |w: &Subspace| -> Result<GF2Matrix> {
        let s = family.shift(w);
        match d.checked_sub(s) {
            Some(k) => alg.mul_matrix(&form, k),
            None => {
                let rows = (d + 1).checked_sub(s).map_or(0, |k| alg.dim(k));
                Ok(GF2Matrix::zeros(rows, 0))
            }
        }
    };
    let mut maps = vec![mul_at(&Subspace::zero(n))?];
    if let (Some(ls), Some(ld)) = (&src.limits, &dst.limits) {
        for (k, layer) in ls.order.simplices.iter().enumerate() {
            let mut m = GF2Matrix::zeros(ld.complex.dim(k as i32), ls.complex.dim(k as i32));
            for (s, simplex) in layer.iter().enumerate() {
                let top = poset.element(src.sub_to_full[*simplex.last().expect("nonempty")]);
                m.set_block(ld.block(k, s).start, ls.block(k, s).start, &mul_at(top)?);
            }
            maps.push(m);
        }
    }
    for k in 0..maps.len().saturating_sub(1) {
        let lhs = maps[k + 1].mul(&src.complex.diff(k as i32));
        let rhs = dst.complex.diff(k as i32).mul(&maps[k]);
        if lhs != rhs {
            return Err(Error::Invariant(format!(
                "multiplication by form {u} does not commute with d in degree {k}"
            )));
        }
    }
    Ok(maps)
}

/// Outcome of the generation check.
#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub n: usize,
    pub h: usize,
    pub dims: Vec<usize>,
    /// Rank of `Σ_i x_i·M^{d-1}` inside `M^d`.
    pub spanned: Vec<usize>,
    pub first_failure: Option<usize>,
}

impl GenerationReport {
    #[must_use]
    pub fn ok(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks degreewise that `M(V;h)` is generated by its degree-0 part.
///
/// # Errors
/// `n` above the cap, or a multiplication map is not a chain map.
pub fn generation_check(n: usize, h: usize, cap: usize) -> Result<GenerationReport> {
    check_n(n, PF_DIMENSION_CAP)?;
    let family = psi_of_ideal(&FormProduct::c_v(n), h, cap)?;
    let complexes: Vec<PfComplex> = family.functors.par_iter().map(pf_complex).collect::<Result<_>>()?;
    let tops: Vec<Homology> = complexes
        .iter()
        .map(|c| homology(&c.complex, n as i32))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = tops.iter().map(|h| h.dim).collect();
    let mut spanned = vec![dims[0]];
    let mut first_failure = None;
    for d in 1..=cap {
        let mut image = GF2Matrix::zeros(0, dims[d]);
        for i in 0..n {
            let maps = multiplication_chain_map(&family, d - 1, 1 << i, &complexes[d - 1], &complexes[d])?;
            let induced = tops[d - 1].induced(&maps[n], &tops[d])?;
            image = image.vstack(&induced.transpose());
        }
        let r = image.rank();
        spanned.push(r);
        if r != dims[d] && first_failure.is_none() {
            first_failure = Some(d);
        }
    }
    Ok(GenerationReport {
        n,
        h,
        dims,
        spanned,
        first_failure,
    })
}

/// Group elements with the right-action matrices of `λ_g` on `M^0(V;h)`.
///
/// # Errors
/// `n` above the full-enumeration cap.
pub fn gl_on_m0(n: usize, h: usize) -> Result<Vec<(GLElement, GF2Matrix)>> {
    check_n(n, PF_DIMENSION_CAP)?;
    if n == 0 {
        return Ok(vec![(GLElement::identity(0), GF2Matrix::identity(1))]);
    }
    let psi0 = psi_of_ideal(&FormProduct::c_v(n), h, 0)?.functors.remove(0);
    let sub = Arc::new(Poset::nonzero(n)?);
    let restricted = psi0.restrict(sub)?;
    enumerate_gl(n, false)?
        .into_iter()
        .map(|g| {
            let m = gl_action_on_limit(&restricted, &g, n - 1)?;
            Ok((g, m))
        })
        .collect()
}

/// An invertible `T` with `T·R_M(g) = R_{St*}(g)·T` for every `g`, where
/// `R_{St*}(g)` is the transpose of the left action on `St`.
///
/// # Errors
/// No invertible solution (or dimensions differ).
pub fn steinberg_dual_intertwiner(n: usize, h: usize) -> Result<GF2Matrix> {
    let actions = gl_on_m0(n, h)?;
    let st = steinberg(n)?;
    let a = st.dim();
    let b = actions.first().map_or(0, |(_, m)| m.rows());
    if a != b {
        return Err(Error::Invariant(format!("dim M^0 = {b} but dim St = {a}")));
    }
    // unknown T (a x b), variable (i, j) at index i*b + j
    let mut eqs = GF2Matrix::zeros(0, a * b);
    for (g, rm) in &actions {
        let rs = st.left_action(g)?.transpose();
        for i in 0..a {
            for j in 0..b {
                let mut row = vec![0u64; (a * b).div_ceil(64).max(1)];
                for k in 0..b {
                    if rm.get(k, j) {
                        row[(i * b + k) / 64] ^= 1 << ((i * b + k) % 64);
                    }
                }
                for k in 0..a {
                    if rs.get(i, k) {
                        row[(k * b + j) / 64] ^= 1 << ((k * b + j) % 64);
                    }
                }
                eqs.push_row(&row);
            }
        }
    }
    let kernel = kernel_basis(&eqs);
    let k = kernel.rows();
    if k > 20 {
        return Err(Error::Cap {
            what: "intertwiner space dimension",
            value: k,
            cap: 20,
        });
    }
    // Gray-code walk through the solution space
    let mut current = vec![0u64; (a * b).div_ceil(64).max(1)];
    for step in 1u64..(1 << k) {
        let flip = step.trailing_zeros() as usize;
        crate::gf2::xor_into(&mut current, kernel.row(flip));
        let t = GF2Matrix::from_fn(a, b, |i, j| crate::gf2::get_bit(&current, i * b + j));
        if t.is_invertible() {
            return Ok(t);
        }
    }
    Err(Error::Invariant(format!(
        "no invertible intertwiner among {} solutions",
        (1u64 << k) - 1
    )))
}

/// Result of the doubling identity check.
#[derive(Clone, Debug, Serialize)]
pub struct DoublingReport {
    pub n: usize,
    pub h: usize,
    /// `dim M^d(V;2h)`.
    pub doubled: Vec<usize>,
    /// Coefficients of `(1+t)^n P_{M(V;h)}(t^2)`.
    pub predicted: Vec<usize>,
}

impl DoublingReport {
    #[must_use]
    pub fn ok(&self) -> bool {
        self.doubled == self.predicted
    }
}

/// Compares `P_{M(V;2h)}(t)` with `(1+t)^n P_{M(V;h)}(t^2)` up to `cap`.
///
/// # Errors
/// `n` above the cap.
pub fn ephi_doubling_check(n: usize, h: usize, cap: usize) -> Result<DoublingReport> {
    let base = m_of_v(n, h, cap / 2)?;
    let doubled = m_of_v(n, 2 * h, cap)?.dims;
    let binom = |k: usize| -> usize { (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1)) };
    let predicted = (0..=cap)
        .map(|d| {
            (0..=n.min(d))
                .filter(|j| (d - j) % 2 == 0)
                .map(|j| binom(j) * base.dims[(d - j) / 2])
                .sum()
        })
        .collect();
    Ok(DoublingReport {
        n,
        h,
        doubled,
        predicted,
    })
}

/// Graded module `⊕_U H*V ⊗_{H*(V/U)} N_U`, recorded through its summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EFiniteModule {
    pub n: usize,
    /// `(U, graded dimensions of N_U)`.
    pub summands: Vec<(Subspace, Vec<usize>)>,
}

impl EFiniteModule {
    /// # Errors
    /// A summand with the wrong ambient dimension.
    pub fn new(n: usize, summands: Vec<(Subspace, Vec<usize>)>) -> Result<Self> {
        if let Some((u, _)) = summands.iter().find(|(u, _)| u.ambient() != n) {
            return Err(Error::Ambient(u.ambient(), n));
        }
        Ok(Self { n, summands })
    }

    fn keep(&self, pred: impl Fn(&Subspace) -> bool) -> Self {
        Self {
            n: self.n,
            summands: self.summands.iter().filter(|(u, _)| pred(u)).cloned().collect(),
        }
    }

    /// `EFix_{(V,W)}`: the summands with `W ⊆ U`.
    #[must_use]
    pub fn efix(&self, w: &Subspace) -> Self {
        self.keep(|u| u.contains(w))
    }

    /// `F^p`: the summands with `codim U >= p`.
    #[must_use]
    pub fn filtration(&self, p: usize) -> Self {
        self.keep(|u| u.codim() >= p)
    }

    /// `Gr^p`: the summands with `codim U = p`.
    #[must_use]
    pub fn graded_piece(&self, p: usize) -> Self {
        self.keep(|u| u.codim() == p)
    }

    /// `Pf = F^n`: the summand at `U = 0`.
    #[must_use]
    pub fn finite_part(&self) -> Self {
        self.filtration(self.n)
    }

    /// Coefficients of `Σ_U N_U(t) / (1-t)^{dim U}` up to `cap`.
    #[must_use]
    pub fn poincare(&self, cap: usize) -> Vec<usize> {
        let mut out = vec![0usize; cap + 1];
        for (u, nu) in &self.summands {
            let k = u.dim();
            // coefficient of t^j in 1/(1-t)^k is C(j+k-1, k-1)
            let series = |j: usize| -> usize {
                if k == 0 {
                    usize::from(j == 0)
                } else {
                    (1..k).fold(1usize, |acc, i| acc * (j + i) / i)
                }
            };
            for (a, &c) in nu.iter().enumerate() {
                for (d, slot) in out.iter_mut().enumerate().skip(a) {
                    *slot += c * series(d - a);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_examples() {
        let one = FormProduct::one(2);
        let fam = psi_of_ideal(&one, 1, 3).unwrap();
        for (d, f) in fam.functors.iter().enumerate() {
            assert!(f.dims().iter().all(|&x| x == d + 1));
        }
        let cv = FormProduct::c_v(2);
        let fam = psi_of_ideal(&cv, 1, 2).unwrap();
        let top = fam.functors[0].poset().index_of(&Subspace::full(2)).unwrap();
        for (i, &x) in fam.functors[0].dims().iter().enumerate() {
            assert_eq!(x, usize::from(i == top));
        }
        let ker_u1 = Subspace::span(2, &[0b10]);
        let b = fam.value_basis(&ker_u1, 1).unwrap();
        assert_eq!(b.rows(), 1);
        assert_eq!(fam.algebra.from_vector(b.row(0), 1), Poly::form(2, 1));
    }

    #[test]
    fn rpf_examples() {
        for n in 1..=2 {
            let free = r_pf(&FormProduct::one(n), 1, n, 4).unwrap();
            assert!(free.iter().all(|&x| x == 0));
        }
        assert_eq!(r_pf(&FormProduct::c_v(1), 1, 1, 4).unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(r_pf(&FormProduct::c_v(2), 1, 2, 0).unwrap(), vec![2]);
    }

    #[test]
    fn m_tables_small() {
        for h in 1..=3 {
            assert_eq!(m_of_v(0, h, 4).unwrap().dims, vec![1, 0, 0, 0, 0]);
        }
        assert_eq!(m_of_v(1, 1, 4).unwrap().dims, vec![1, 0, 0, 0, 0]);
        // for n = 1 the module is F2[u]/(u^h)
        assert_eq!(m_of_v(1, 3, 4).unwrap().dims, vec![1, 1, 1, 0, 0]);
        assert_eq!(m_of_v(2, 1, 0).unwrap().dims, vec![2]);
    }

    #[test]
    fn action_and_intertwiner_n2() {
        let acts = gl_on_m0(2, 1).unwrap();
        for (g, rg) in &acts {
            for (h, rh) in &acts {
                let gh = g.compose(h);
                let rgh = &acts.iter().find(|(x, _)| *x == gh).unwrap().1;
                assert_eq!(*rgh, rh.mul(rg));
            }
        }
        let t = steinberg_dual_intertwiner(2, 1).unwrap();
        assert!(t.is_invertible());
        assert_eq!(steinberg_dual_intertwiner(1, 1).unwrap(), GF2Matrix::identity(1));
    }

    #[test]
    fn generation_and_doubling_n2() {
        let g = generation_check(2, 1, 5).unwrap();
        assert!(g.ok(), "{g:?}");
        let r = ephi_doubling_check(2, 1, 6).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn efinite_examples() {
        let n = 2;
        let m = EFiniteModule::new(n, vec![(Subspace::full(n), vec![1, 2]), (Subspace::zero(n), vec![3])]).unwrap();
        for w in crate::subspace::enumerate_subspaces(n, None).unwrap() {
            let top_only = EFiniteModule::new(n, vec![(Subspace::full(n), vec![1])]).unwrap();
            assert_eq!(top_only.efix(&w), top_only);
            let bottom = EFiniteModule::new(n, vec![(Subspace::zero(n), vec![1])]).unwrap();
            assert_eq!(bottom.efix(&w).summands.is_empty(), w.dim() > 0);
        }
        assert_eq!(m.filtration(1).summands.len(), 1);
        assert_eq!(m.graded_piece(0).summands[0].0, Subspace::full(n));
        assert_eq!(m.finite_part().summands, vec![(Subspace::zero(n), vec![3])]);
        // (1 + 2t)/(1-t)^2 + 3
        assert_eq!(m.poincare(3), vec![4, 4, 7, 10]);
    }
}
