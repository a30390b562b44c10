//! Polynomials over `F2`, Steenrod squares, ideals generated by products of
//! linear forms, and the stability and radical checks.
//!
//! Linear forms are bitmasks: bit `j` is the coefficient of `x_{j+1}`, and
//! a form `u` evaluates on a vector `v` as `parity(u & v)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, rref, GF2Matrix};
use crate::subspace::{pairing, Subspace};

/// Default degree cap for algebras built by the CLI.
pub const DEFAULT_DEGREE_CAP: usize = 12;
/// Largest internal degree used by the radical check.
pub const RADICAL_DEGREE_CAP: usize = 64;

/// Exponent vector.
pub type Monomial = Vec<u16>;

/// Polynomial over `F2` as a set of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    n: usize,
    terms: BTreeSet<Monomial>,
}

impl Poly {
    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeSet::new() }
    }

    #[must_use]
    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n])
    }

    #[must_use]
    pub fn monomial(exponents: Monomial) -> Self {
        let n = exponents.len();
        let mut terms = BTreeSet::new();
        terms.insert(exponents);
        Self { n, terms }
    }

    /// `x_{i+1}`.
    #[must_use]
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e)
    }

    /// The linear form with bitmask `u`.
    #[must_use]
    pub fn form(n: usize, u: u32) -> Self {
        let mut p = Self::zero(n);
        for i in 0..n {
            if u >> i & 1 == 1 {
                p.toggle(Self::var(n, i).terms.into_iter().next().expect("one term"));
            }
        }
        p
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    /// Degree of a homogeneous polynomial (`None` for zero or mixed degrees).
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.iter().map(degree);
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    #[must_use]
    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(degree).max().unwrap_or(0)
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(m.clone());
        }
        out
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        out
    }

    #[must_use]
    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `p^{2^m}`, computed through the Frobenius on monomials.
    #[must_use]
    pub fn frobenius(&self, m: u32) -> Self {
        let mut out = Self::zero(self.n);
        for t in &self.terms {
            out.toggle(t.iter().map(|&e| e << m).collect());
        }
        out
    }

    /// Value at a point of `F2^n` (bit `i` of `v` is the coordinate `x_{i+1}`).
    #[must_use]
    pub fn eval(&self, v: u32) -> bool {
        self.terms
            .iter()
            .filter(|m| m.iter().enumerate().all(|(i, &e)| e == 0 || v >> i & 1 == 1))
            .count()
            % 2
            == 1
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|m| {
                let s: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                    .collect();
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s.join("")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn degree(m: &Monomial) -> usize {
    m.iter().map(|&e| usize::from(e)).sum()
}

/// Exponent vectors of total degree `d` in `n` variables, in descending
/// lexicographic order.
#[must_use]
pub fn monomials(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, d: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == n {
            cur.push(d as u16);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e as u16);
            rec(n, d - e, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `Sq^i` of a monomial, by Cartan and `Sq(x^a) = Σ_k C(a,k) x^{a+k}`.
fn sq_monomial(i: usize, m: &Monomial, out: &mut Poly) {
    fn rec(i: usize, m: &Monomial, pos: usize, cur: &mut Monomial, out: &mut Poly) {
        if pos == m.len() {
            if i == 0 {
                out.toggle(cur.clone());
            }
            return;
        }
        let a = m[pos];
        for k in 0..=usize::from(a).min(i) {
            let k16 = k as u16;
            // Lucas: C(a, k) is odd iff the bits of k are among those of a
            if k16 & a == k16 {
                cur.push(a + k16);
                rec(i - k, m, pos + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(i, m, 0, &mut Vec::with_capacity(m.len()), out);
}

/// `Sq^i p` without a degree cap.
#[must_use]
pub fn sq_uncapped(i: usize, p: &Poly) -> Poly {
    let mut out = Poly::zero(p.n);
    for m in &p.terms {
        sq_monomial(i, m, &mut out);
    }
    out
}

/// Degree-truncated polynomial algebra `F2[x_1..x_n]` in degrees `0..=cap`.
#[derive(Clone, Debug)]
pub struct TruncatedPolyAlgebra {
    n: usize,
    cap: usize,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl TruncatedPolyAlgebra {
    #[must_use]
    pub fn new(n: usize, cap: usize) -> Self {
        let bases: Vec<Vec<Monomial>> = (0..=cap).map(|d| monomials(n, d)).collect();
        let index = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        Self { n, cap, bases, index }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Monomial basis of degree `d`.
    #[must_use]
    pub fn basis(&self, d: usize) -> &[Monomial] {
        &self.bases[d]
    }

    #[must_use]
    pub fn dim(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, Vec::len)
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.cap {
            Err(Error::Cap {
                what: "polynomial degree",
                value: d,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Coordinates of the degree-`d` part of `p`.
    ///
    /// # Errors
    /// `d` above the cap.
    pub fn to_vector(&self, p: &Poly, d: usize) -> Result<Vec<u64>> {
        self.check_degree(d)?;
        let mut v = vec![0u64; self.dim(d).div_ceil(64).max(1)];
        for m in p.terms.iter().filter(|m| degree(m) == d) {
            let i = self.index[d][m];
            v[i / 64] ^= 1 << (i % 64);
        }
        Ok(v)
    }

    /// Polynomial with the given coordinates in degree `d`.
    #[must_use]
    pub fn from_vector(&self, v: &[u64], d: usize) -> Poly {
        let mut p = Poly::zero(self.n);
        for i in crate::gf2::ones(v) {
            if i < self.dim(d) {
                p.toggle(self.bases[d][i].clone());
            }
        }
        p
    }

    /// Matrix of multiplication by `p` (homogeneous of degree `k`) from
    /// degree `d` to `d + k`.
    ///
    /// # Errors
    /// `p` is not homogeneous, or `d + k` is above the cap.
    pub fn mul_matrix(&self, p: &Poly, d: usize) -> Result<GF2Matrix> {
        let k = if p.is_zero() { 0 } else { p.degree().ok_or_else(|| Error::Invalid("inhomogeneous multiplier".into()))? };
        self.check_degree(d + k)?;
        let mut m = GF2Matrix::zeros(self.dim(d + k), self.dim(d));
        for (c, mono) in self.bases[d].iter().enumerate() {
            let prod = p.mul(&Poly::monomial(mono.clone()));
            for t in &prod.terms {
                m.flip(self.index[d + k][t], c);
            }
        }
        Ok(m)
    }

    /// `Sq^i p`.
    ///
    /// # Errors
    /// The result would exceed the degree cap.
    pub fn sq(&self, i: usize, p: &Poly) -> Result<Poly> {
        self.check_degree(p.max_degree() + i)?;
        Ok(sq_uncapped(i, p))
    }

    /// Matrix of `Sq^i` from degree `d` to `d + i`.
    ///
    /// # Errors
    /// `d + i` above the cap.
    pub fn sq_matrix(&self, i: usize, d: usize) -> Result<GF2Matrix> {
        self.check_degree(d + i)?;
        let mut m = GF2Matrix::zeros(self.dim(d + i), self.dim(d));
        for (c, mono) in self.bases[d].iter().enumerate() {
            for t in &sq_uncapped(i, &Poly::monomial(mono.clone())).terms {
                m.flip(self.index[d + i][t], c);
            }
        }
        Ok(m)
    }

    /// Matrix of restriction to the subspace `w`, degree `d`, with `w`'s
    /// canonical rows as coordinates on `w`.
    ///
    /// # Errors
    /// Ambient mismatch or degree above the cap.
    pub fn restriction_matrix(&self, w: &Subspace, d: usize) -> Result<GF2Matrix> {
        if w.ambient() != self.n {
            return Err(Error::Ambient(w.ambient(), self.n));
        }
        self.check_degree(d)?;
        let k = w.dim();
        let target = TruncatedPolyAlgebra::new(k, d);
        // x_j restricts to Σ_i (bit j of row i) y_i
        let images: Vec<Poly> = (0..self.n)
            .map(|j| {
                let mask = w
                    .rows()
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &r)| acc | ((r >> j & 1) << i));
                Poly::form(k, mask)
            })
            .collect();
        let mut m = GF2Matrix::zeros(target.dim(d), self.dim(d));
        for (c, mono) in self.bases[d].iter().enumerate() {
            let mut img = Poly::one(k);
            for (j, &e) in mono.iter().enumerate() {
                img = img.mul(&images[j].pow(usize::from(e)));
            }
            for t in &img.terms {
                m.flip(target.index[d][t], c);
            }
        }
        Ok(m)
    }
}

/// Product of nonzero linear forms (a multiset of bitmasks).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForms", into = "RawForms")]
pub struct FormProduct {
    n: usize,
    forms: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawForms {
    n: usize,
    forms: Vec<u32>,
}

impl TryFrom<RawForms> for FormProduct {
    type Error = Error;
    fn try_from(r: RawForms) -> Result<Self> {
        Self::new(r.n, r.forms)
    }
}

impl From<FormProduct> for RawForms {
    fn from(f: FormProduct) -> Self {
        Self { n: f.n, forms: f.forms }
    }
}

impl FormProduct {
    /// # Errors
    /// A zero form or a form outside `F2^n`.
    pub fn new(n: usize, mut forms: Vec<u32>) -> Result<Self> {
        if let Some(&u) = forms.iter().find(|&&u| u == 0 || (n < 32 && u >> n != 0)) {
            return Err(Error::Invalid(format!("{u} is not a nonzero linear form on F2^{n}")));
        }
        forms.sort_unstable();
        Ok(Self { n, forms })
    }

    /// The empty product.
    #[must_use]
    pub fn one(n: usize) -> Self {
        Self { n, forms: Vec::new() }
    }

    /// Parses `[1,2,3]`.
    ///
    /// # Errors
    /// Malformed list or invalid forms.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let forms: Vec<u32> = serde_json::from_str(s)?;
        Self::new(n, forms)
    }

    /// `c_V`: product of all nonzero forms.
    #[must_use]
    pub fn c_v(n: usize) -> Self {
        Self {
            n,
            forms: (1..1u32 << n).collect(),
        }
    }

    /// `c_{(V,W)}`: product of the nonzero forms vanishing on `w`.
    #[must_use]
    pub fn c_vw(w: &Subspace) -> Self {
        Self::c_v(w.ambient()).e_sub(w)
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn forms(&self) -> &[u32] {
        &self.forms
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.forms.len()
    }

    /// Forms pairwise distinct.
    #[must_use]
    pub fn is_squarefree(&self) -> bool {
        self.forms.windows(2).all(|w| w[0] != w[1])
    }

    /// `e_W`: the product of the forms of `e` vanishing on `w`.
    #[must_use]
    pub fn e_sub(&self, w: &Subspace) -> Self {
        Self {
            n: self.n,
            forms: self
                .forms
                .iter()
                .copied()
                .filter(|&u| w.rows().iter().all(|&r| !pairing(u, r)))
                .collect(),
        }
    }

    /// Multiset product.
    #[must_use]
    pub fn times(&self, other: &Self) -> Self {
        let mut forms = self.forms.clone();
        forms.extend_from_slice(&other.forms);
        forms.sort_unstable();
        Self { n: self.n, forms }
    }

    /// `e^h`.
    #[must_use]
    pub fn power(&self, h: usize) -> Self {
        let mut forms: Vec<u32> = self.forms.iter().flat_map(|&u| std::iter::repeat_n(u, h)).collect();
        forms.sort_unstable();
        Self { n: self.n, forms }
    }

    /// Removes the forms of `d` (as a multiset). `None` if `d` does not divide.
    #[must_use]
    pub fn divide(&self, d: &Self) -> Option<Self> {
        let mut forms = self.forms.clone();
        for u in &d.forms {
            let pos = forms.iter().position(|x| x == u)?;
            forms.remove(pos);
        }
        Some(Self { n: self.n, forms })
    }

    /// The product polynomial.
    #[must_use]
    pub fn polynomial(&self) -> Poly {
        self.forms.iter().fold(Poly::one(self.n), |acc, &u| acc.mul(&Poly::form(self.n, u)))
    }
}

/// Basis (rref rows) of `(e)` in degree `d`.
///
/// # Errors
/// `d` above the algebra's cap.
pub fn ideal_basis(alg: &TruncatedPolyAlgebra, e: &FormProduct, d: usize) -> Result<GF2Matrix> {
    if d < e.degree() {
        alg.check_degree(d)?;
        return Ok(GF2Matrix::zeros(0, alg.dim(d)));
    }
    let m = alg.mul_matrix(&e.polynomial(), d - e.degree())?;
    Ok(rref(&m.transpose()).0)
}

/// Basis of `P_W = ker(H*V -> H*W)` in degree `d`.
///
/// # Errors
/// Degree above the cap.
pub fn prime_ideal_p_w(alg: &TruncatedPolyAlgebra, w: &Subspace, d: usize) -> Result<GF2Matrix> {
    Ok(rref(&kernel_basis(&alg.restriction_matrix(w, d)?)).0)
}

/// How an ideal was specified.
#[derive(Clone, Debug)]
pub enum IdealGenerators {
    Principal(FormProduct),
    Prime(Subspace),
    Explicit(Vec<Poly>),
}

/// Homogeneous ideal described degreewise up to a cap.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    pub generators: IdealGenerators,
    /// `bases[d]`: rref rows spanning the degree-`d` part.
    pub bases: Vec<GF2Matrix>,
}

impl GradedIdeal {
    /// `(e)` up to the algebra's cap.
    ///
    /// # Errors
    /// Never for a valid algebra.
    pub fn principal(alg: &TruncatedPolyAlgebra, e: &FormProduct) -> Result<Self> {
        let bases = (0..=alg.cap()).map(|d| ideal_basis(alg, e, d)).collect::<Result<_>>()?;
        Ok(Self {
            generators: IdealGenerators::Principal(e.clone()),
            bases,
        })
    }

    /// `P_W` up to the algebra's cap.
    ///
    /// # Errors
    /// Ambient mismatch.
    pub fn prime(alg: &TruncatedPolyAlgebra, w: &Subspace) -> Result<Self> {
        let bases = (0..=alg.cap()).map(|d| prime_ideal_p_w(alg, w, d)).collect::<Result<_>>()?;
        Ok(Self {
            generators: IdealGenerators::Prime(w.clone()),
            bases,
        })
    }

    /// Ideal generated by homogeneous polynomials, truncated at the cap.
    ///
    /// # Errors
    /// An inhomogeneous generator.
    pub fn generated(alg: &TruncatedPolyAlgebra, gens: Vec<Poly>) -> Result<Self> {
        let mut bases = Vec::new();
        for d in 0..=alg.cap() {
            let mut rows = GF2Matrix::zeros(0, alg.dim(d));
            for g in &gens {
                let k = g.degree().ok_or_else(|| Error::Invalid("inhomogeneous generator".into()))?;
                if k <= d {
                    rows = rows.vstack(&alg.mul_matrix(g, d - k)?.transpose());
                }
            }
            bases.push(rref(&rows).0);
        }
        Ok(Self {
            generators: IdealGenerators::Explicit(gens),
            bases,
        })
    }

    #[must_use]
    pub fn dim(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, GF2Matrix::rows)
    }

    /// Membership of a homogeneous degree-`d` vector.
    #[must_use]
    pub fn contains_vector(&self, d: usize, v: &[u64]) -> bool {
        let b = &self.bases[d];
        b.vstack(&GF2Matrix::from_packed_rows(&[v.to_vec()], b.cols())).rank() == b.rows()
    }

    /// Closure under multiplication by every variable, degreewise.
    #[must_use]
    pub fn is_ideal(&self, alg: &TruncatedPolyAlgebra) -> bool {
        (0..self.bases.len().saturating_sub(1)).all(|d| {
            (0..alg.n()).all(|i| {
                let m = alg.mul_matrix(&Poly::var(alg.n(), i), d).expect("within cap");
                let img = self.bases[d].mul(&m.transpose());
                (0..img.rows()).all(|r| self.contains_vector(d + 1, img.row(r)))
            })
        })
    }
}

/// One failure of Steenrod stability.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityViolation {
    pub degree: usize,
    pub square: usize,
    pub element: String,
    pub image: String,
}

/// Checks `Sq^i I_d ⊆ I_{d+i}` for `d + i <= dmax`.
///
/// # Errors
/// `dmax` above the algebra's or the ideal's cap.
pub fn a_stability_check(alg: &TruncatedPolyAlgebra, ideal: &GradedIdeal, dmax: usize) -> Result<Vec<StabilityViolation>> {
    alg.check_degree(dmax)?;
    if dmax >= ideal.bases.len() {
        return Err(Error::Cap {
            what: "ideal degree",
            value: dmax,
            cap: ideal.bases.len().saturating_sub(1),
        });
    }
    let mut out = Vec::new();
    for d in 0..=dmax {
        for i in 1..=dmax - d {
            let sq = alg.sq_matrix(i, d)?;
            let img = ideal.bases[d].mul(&sq.transpose());
            for r in 0..img.rows() {
                if !ideal.contains_vector(d + i, img.row(r)) {
                    out.push(StabilityViolation {
                        degree: d,
                        square: i,
                        element: format!("{:?}", alg.from_vector(ideal.bases[d].row(r), d)),
                        image: format!("{:?}", alg.from_vector(img.row(r), d + i)),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Result of the degreewise radical comparison.
#[derive(Clone, Debug, Serialize)]
pub struct RadicalReport {
    pub degree: usize,
    /// `dim ⋂_{u | e} P_{ker u}` in the given degree.
    pub intersection_dim: usize,
    /// `dim {x : x^{2^m} ∈ (e)}` for `m = 0..=m_max`.
    pub power_dims: Vec<usize>,
    /// Both sides are the same subspace (for `m = m_max`).
    pub equal: bool,
}

/// Compares `⋂_{u | e} P_{ker u}` with `{x : x^{2^m} ∈ (e), m <= m_max}` in
/// degree `d`.
///
/// # Errors
/// Repeated forms, or `d·2^{m_max}` above [`RADICAL_DEGREE_CAP`].
pub fn serre_radical_check(e: &FormProduct, d: usize, m_max: u32) -> Result<RadicalReport> {
    if !e.is_squarefree() {
        return Err(Error::Invalid("the forms of e must be pairwise distinct".into()));
    }
    let top = d << m_max;
    if top > RADICAL_DEGREE_CAP {
        return Err(Error::Cap {
            what: "radical check degree d·2^m",
            value: top,
            cap: RADICAL_DEGREE_CAP,
        });
    }
    let n = e.n();
    let alg = TruncatedPolyAlgebra::new(n, top);
    // left side: common kernel of the restrictions to every ker u
    let mut stacked = GF2Matrix::zeros(0, alg.dim(d));
    for &u in e.forms() {
        let hyper = Subspace::span(n, &[u]).annihilator();
        stacked = stacked.vstack(&alg.restriction_matrix(&hyper, d)?);
    }
    let (lhs, lhs_dim, _) = rref(&kernel_basis(&stacked));
    let mut power_dims = Vec::new();
    let mut rhs = GF2Matrix::zeros(0, alg.dim(d));
    for m in 0..=m_max {
        let dd = d << m;
        let frob = GF2Matrix::from_fn(alg.dim(dd), alg.dim(d), |r, c| {
            alg.basis(dd)[r] == alg.basis(d)[c].iter().map(|&x| x << m).collect::<Monomial>()
        });
        let ideal = ideal_basis(&alg, e, dd)?;
        // x with frob(x) in span(ideal): kernel of [frob | ideal^T]
        let rel = kernel_basis(&frob.hstack(&ideal.transpose()));
        let xs = GF2Matrix::from_fn(rel.rows(), alg.dim(d), |r, c| rel.get(r, c));
        let (basis, rank, _) = rref(&xs);
        power_dims.push(rank);
        rhs = basis;
    }
    let equal = lhs_dim == rhs.rows() && lhs.vstack(&rhs).rank() == lhs_dim;
    Ok(RadicalReport {
        degree: d,
        intersection_dim: lhs_dim,
        power_dims,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn squares_examples() {
        let a = TruncatedPolyAlgebra::new(2, 6);
        let x1 = x(2, 0);
        let y = x(2, 1);
        assert_eq!(a.sq(1, &x1).unwrap(), x1.mul(&x1));
        assert!(a.sq(2, &x1).unwrap().is_zero());
        let xy = x1.mul(&y);
        assert_eq!(a.sq(1, &xy).unwrap(), x1.mul(&x1).mul(&y).add(&x1.mul(&y).mul(&y)));
        assert_eq!(a.sq(0, &xy).unwrap(), xy);
        assert!(a.sq(6, &xy).is_err());
    }

    #[test]
    fn monomial_order_and_dims() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let a = TruncatedPolyAlgebra::new(3, 5);
        for d in 0..=5 {
            // C(d + 2, 2)
            assert_eq!(a.dim(d), (d + 1) * (d + 2) / 2);
        }
    }

    #[test]
    fn ideal_examples() {
        let a = TruncatedPolyAlgebra::new(2, 5);
        assert_eq!(ideal_basis(&a, &FormProduct::one(2), 3).unwrap().rows(), 4);
        let cv = FormProduct::c_v(2);
        assert_eq!(ideal_basis(&a, &cv, 3).unwrap().rows(), 1);
        assert_eq!(ideal_basis(&a, &cv, 4).unwrap().rows(), 2);
        let a1 = TruncatedPolyAlgebra::new(1, 5);
        let u = FormProduct::new(1, vec![1]).unwrap();
        for d in 1..=5 {
            assert_eq!(ideal_basis(&a1, &u, d).unwrap().rows(), 1);
        }
    }

    #[test]
    fn e_sub_examples() {
        let e = FormProduct::c_v(2);
        let ker_u1 = Subspace::span(2, &[0b10]);
        assert_eq!(e.e_sub(&ker_u1).forms(), &[1]);
        assert_eq!(e.e_sub(&Subspace::zero(2)), e);
        assert_eq!(e.e_sub(&Subspace::full(2)), FormProduct::one(2));
        for n in 1..=3 {
            for w in crate::subspace::enumerate_subspaces(n, None).unwrap() {
                assert_eq!(FormProduct::c_vw(&w).degree(), (1 << w.codim()) - 1);
            }
        }
    }

    #[test]
    fn prime_examples() {
        let a = TruncatedPolyAlgebra::new(2, 4);
        for d in 0..=4 {
            assert_eq!(prime_ideal_p_w(&a, &Subspace::full(2), d).unwrap().rows(), 0);
            let all = if d == 0 { 0 } else { a.dim(d) };
            assert_eq!(prime_ideal_p_w(&a, &Subspace::zero(2), d).unwrap().rows(), all);
        }
        let ker_u1 = Subspace::span(2, &[0b10]);
        let p1 = prime_ideal_p_w(&a, &ker_u1, 1).unwrap();
        assert_eq!(a.from_vector(p1.row(0), 1), x(2, 0));
        assert_eq!(p1.rows(), 1);
    }

    #[test]
    fn stability_examples() {
        let a = TruncatedPolyAlgebra::new(2, 6);
        let cv = GradedIdeal::principal(&a, &FormProduct::c_v(2)).unwrap();
        assert!(a_stability_check(&a, &cv, 6).unwrap().is_empty());
        for w in crate::subspace::enumerate_subspaces(2, None).unwrap() {
            let p = GradedIdeal::prime(&a, &w).unwrap();
            assert!(p.is_ideal(&a));
            assert!(a_stability_check(&a, &p, 6).unwrap().is_empty());
        }
        let (x1, y) = (x(2, 0), x(2, 1));
        // x^2 + xy = x(x + y) is a product of forms, hence stable
        let split = GradedIdeal::generated(&a, vec![x1.mul(&x1).add(&x1.mul(&y))]).unwrap();
        assert!(a_stability_check(&a, &split, 6).unwrap().is_empty());
        let irreducible = GradedIdeal::generated(&a, vec![x1.mul(&x1).add(&x1.mul(&y)).add(&y.mul(&y))]).unwrap();
        let v = a_stability_check(&a, &irreducible, 6).unwrap();
        assert!(v.iter().any(|v| v.degree == 2 && v.square == 1));
    }

    #[test]
    fn radical_examples() {
        let u = FormProduct::new(1, vec![1]).unwrap();
        let r = serre_radical_check(&u, 1, 2).unwrap();
        assert!(r.equal && r.intersection_dim == 1);
        let r = serre_radical_check(&FormProduct::c_v(2), 1, 2).unwrap();
        assert!(r.equal && r.intersection_dim == 0);
        let e = FormProduct::new(2, vec![1, 2]).unwrap();
        let r = serre_radical_check(&e, 2, 2).unwrap();
        assert!(r.equal && r.intersection_dim == 1, "{r:?}");
        assert!(serre_radical_check(&FormProduct::new(2, vec![1, 1]).unwrap(), 1, 1).is_err());
        assert!(serre_radical_check(&e, 9, 3).is_err());
    }
}
