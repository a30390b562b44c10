use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steinberg_lab::functor::{derived_limit_dims, make_standard_functor, random_functor, PosetFunctor, StandardKind};
use steinberg_lab::pf::{
    ephi_doubling_check, generation_check, gl_on_m0, m_of_v, r_pf, steinberg_dual_intertwiner,
};
use steinberg_lab::resolutions::{
    ext_dims, inj_resolution_simple, klim_bridge, oliver_complex, proj_resolution_simple, tot_resolution,
};
use steinberg_lab::steenrod::{
    a_stability_check, monomials, serre_radical_check, sq_uncapped, FormProduct, GradedIdeal, Poly,
    TruncatedPolyAlgebra,
};
use steinberg_lab::steinberg::{lusztig_complex, mutate, steinberg, LusztigVariant};
use steinberg_lab::subspace::{enumerate_subspaces, Poset};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn gaussian(n: usize, k: usize) -> i64 {
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..k {
        num *= (1i64 << (n - i)) - 1;
        den *= (1i64 << (i + 1)) - 1;
    }
    num / den
}

fn st_dim(w: usize) -> usize {
    1 << (w * w.saturating_sub(1) / 2)
}

fn lattice(n: usize, nonzero: bool) -> Arc<Poset> {
    Arc::new(if nonzero { Poset::nonzero(n) } else { Poset::lattice(n) }.expect("poset"))
}

/// The first `count` nonzero random functors drawn from consecutive seeds,
/// cycling through n = 1..=3.
fn random_functors(count: usize, nonzero: bool, salt: u64) -> Vec<PosetFunctor> {
    let posets: Vec<Arc<Poset>> = (1..=3).map(|n| lattice(n, nonzero)).collect();
    let mut out = Vec::new();
    let mut seed = salt;
    while out.len() < count {
        let poset = &posets[out.len() % 3];
        let f = random_functor(poset, &mut ChaCha8Rng::seed_from_u64(seed), 6).expect("random functor");
        if f.total_dim() > 0 {
            out.push(f);
        }
        seed += 1;
    }
    out
}

fn criterion_1() -> Outcome {
    // dim St_n from Σ_p (-1)^p [n,p]_2 dim St_p = 0 (acyclicity of Lusztig)
    let mut euler = vec![1i64];
    for n in 1..=4 {
        let lower: i64 = (0..n).map(|p| if p % 2 == 0 { 1 } else { -1 } * gaussian(n, p) * euler[p]).sum();
        euler.push(if n % 2 == 0 { -lower } else { lower });
    }
    ensure!(euler == vec![1, 1, 2, 8, 64], "Euler recursion oracle gave {euler:?}");
    let mut dims = Vec::new();
    let mut t4 = Duration::ZERO;
    for n in 0..=4 {
        let t = Instant::now();
        dims.push(ok(steinberg(n))?.dim() as i64);
        if n == 4 {
            t4 = t.elapsed();
        }
    }
    ensure!(dims == euler, "steinberg dims {dims:?} vs Euler recursion {euler:?}");
    ensure!(t4 < Duration::from_secs(60), "n = 4 took {}", secs(t4));
    Ok(format!("dims {dims:?} equal the Euler recursion; n = 4 in {}", secs(t4)))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    for n in 1..=4 {
        for variant in [LusztigVariant::Subspaces, LusztigVariant::Quotients] {
            let lu = ok(lusztig_complex(n, variant))?;
            for p in 1..lu.boundaries.len() {
                ensure!(lu.boundaries[p - 1].mul(&lu.boundaries[p]).is_zero(), "n = {n} {variant:?}: d∘d != 0 at {p}");
            }
            let h = ok(lu.homology_dims())?;
            ensure!(h.iter().all(|&x| x == 0), "n = {n} {variant:?}: homology {h:?}");
        }
    }
    Ok(format!("both variants acyclic with d∘d = 0 for n = 1..4 in {}", secs(t.elapsed())))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for n in 0..=3 {
        let poset = lattice(n, false);
        for w in ok(enumerate_subspaces(n, None))? {
            let s = ok(make_standard_functor(&poset, &StandardKind::Simple(w.clone())))?;
            let e = ok(ext_dims(&s))?;
            let expected: Vec<usize> = (0..e.len()).map(|k| if k == w.dim() { st_dim(k) } else { 0 }).collect();
            ensure!(e.len() > w.dim(), "n = {n}, W = {}: Ext has only {} degrees", w.key(), e.len());
            ensure!(e == expected, "n = {n}, W = {}: Ext {e:?} vs {expected:?}", w.key());
            count += 1;
        }
    }
    Ok(format!("Ext(S_0, S_W) = St_W in degree dim W for all {count} simples, n <= 3"))
}

fn criterion_4() -> Outcome {
    let mut functors = Vec::new();
    for n in 1..=3 {
        let w0 = lattice(n, true);
        let full = lattice(n, false);
        for w in ok(enumerate_subspaces(n, None))? {
            if w.dim() > 0 {
                functors.push(ok(make_standard_functor(&w0, &StandardKind::Simple(w.clone())))?);
            }
            for kind in [StandardKind::Projective(w.clone()), StandardKind::Injective(w.clone())] {
                functors.push(ok(ok(make_standard_functor(&full, &kind))?.restrict(w0.clone()))?);
            }
        }
    }
    let standard = functors.len();
    functors.extend(random_functors(50, true, 4_000));
    for (i, f) in functors.iter().enumerate() {
        let by_chains = derived_limit_dims(f);
        let oliver = ok(oliver_complex(f))?.homology_dims();
        ensure!(by_chains == oliver, "functor #{i} (n = {}): L {by_chains:?} vs Oliver {oliver:?}", f.poset().n());
    }
    Ok(format!("Oliver = L-complex on {standard} standard and 50 random functors"))
}

fn criterion_5() -> Outcome {
    let mut nontrivial = 0;
    for (i, f) in random_functors(30, false, 5_000).iter().enumerate() {
        let n = f.poset().n();
        let ext = ok(ext_dims(f))?;
        let lim = derived_limit_dims(&ok(f.restrict(lattice(n, true)))?);
        for k in 1..lim.len().max(ext.len()) {
            let (l, e) = (lim.get(k).copied().unwrap_or(0), ext.get(k + 1).copied().unwrap_or(0));
            ensure!(l == e, "functor #{i} (n = {n}): lim^{k} = {l} but Ext^{} = {e}", k + 1);
            nontrivial += usize::from(l > 0);
        }
        let report = ok(klim_bridge(f))?;
        ensure!(report.ok(), "functor #{i}: {:?}", report.mismatches);
    }
    Ok(format!("lim^k(F∘i) = Ext^(k+1)(S_0, F) on 30 random functors ({nontrivial} nonzero groups)"))
}

fn criterion_6() -> Outcome {
    let mut simples = 0;
    for n in 1..=3 {
        for w in ok(enumerate_subspaces(n, None))? {
            for c in [ok(proj_resolution_simple(&w))?, ok(inj_resolution_simple(&w))?] {
                ok(c.check_natural())?;
                ok(c.check_exact())?;
                for u in 0..c.poset().len() {
                    let aug = ok(c.augmented_at(u))?;
                    ensure!(aug.homology_dims().iter().all(|&x| x == 0), "n = {n}, W = {}: not exact at {u}", w.key());
                }
            }
            simples += 1;
        }
    }
    for (i, f) in random_functors(20, false, 6_000).iter().enumerate() {
        let tot = ok(tot_resolution(f))?;
        ok(tot.check_natural())?;
        for u in 0..f.poset().len() {
            let aug = ok(tot.augmented_at(u))?;
            ensure!(aug.homology_dims().iter().all(|&x| x == 0), "functor #{i}: Tot not exact at {u}");
        }
    }
    Ok(format!("projective and injective resolutions of {simples} simples and Tot of 20 random functors are exact"))
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    // (a) M(V) = F2 for n = 0, 1
    let mut trivial = vec![1usize];
    trivial.resize(13, 0);
    for h in 1..=3 {
        let m = ok(m_of_v(0, h, 12))?;
        ensure!(m.dims == trivial, "(a) n = 0, h = {h}: {:?}", m.dims);
    }
    let m = ok(m_of_v(1, 1, 12))?;
    ensure!(m.dims == trivial, "(a) n = 1, h = 1: {:?}", m.dims);
    // (b) dim M^0(V;h) = dim St_V
    for n in 0..=3 {
        for h in 1..=3 {
            let m0 = ok(m_of_v(n, h, 0))?.dims[0];
            ensure!(m0 == st_dim(n), "(b) n = {n}, h = {h}: dim M^0 = {m0}, dim St = {}", st_dim(n));
        }
    }
    // (c) T R_M(g) = R_St*(g) T for every g, T invertible
    for n in 0..=3 {
        let tmat = ok(steinberg_dual_intertwiner(n, 1))?;
        ensure!(tmat.is_invertible(), "(c) n = {n}: intertwiner not invertible");
        let st = ok(steinberg(n))?;
        for (g, rm) in ok(gl_on_m0(n, 1))? {
            let rs = if n == 0 { rm.clone() } else { ok(st.left_action(&g))?.transpose() };
            ensure!(tmat.mul(&rm) == rs.mul(&tmat), "(c) n = {n}: not equivariant at {g:?}");
        }
    }
    // (d) R^n Pf(H*V) = 0
    for n in 1..=3 {
        let r = ok(r_pf(&FormProduct::one(n), 1, n, 12))?;
        ensure!(r.iter().all(|&x| x == 0), "(d) n = {n}: {r:?}");
    }
    let elapsed = t.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {}", secs(elapsed));
    Ok(format!("(a) trivial tables, (b) M^0 = St, (c) St* intertwiners, (d) free vanishing to D = 12; {}", secs(elapsed)))
}

fn criterion_8() -> Outcome {
    for (n, cap) in [(2usize, 8usize), (3, 4)] {
        let base = ok(m_of_v(n, 1, cap / 2))?.dims;
        let doubled = ok(m_of_v(n, 2, cap))?.dims;
        // (1+t)^n P(t^2), by repeated multiplication by (1+t)
        let mut poly = vec![0usize; cap + 1];
        for (i, &b) in base.iter().enumerate() {
            if 2 * i <= cap {
                poly[2 * i] = b;
            }
        }
        for _ in 0..n {
            for d in (1..=cap).rev() {
                poly[d] += poly[d - 1];
            }
        }
        ensure!(doubled == poly, "n = {n}: M(V;2) {doubled:?} vs {poly:?}");
        let report = ok(ephi_doubling_check(n, 1, cap))?;
        ensure!(report.ok(), "n = {n}: library check {:?} vs {:?}", report.doubled, report.predicted);
    }
    Ok("P_M(V;2)(t) = (1+t)^n P_M(V;1)(t^2) for n = 2 to D = 8 and n = 3 to D = 4".into())
}

fn criterion_9() -> Outcome {
    let mut tables = Vec::new();
    for (n, cap) in [(2usize, 8usize), (3, 6)] {
        for h in 1..=2 {
            let g = ok(generation_check(n, h, cap))?;
            ensure!(g.ok(), "n = {n}, h = {h}: fails in degree {:?} ({:?} vs {:?})", g.first_failure, g.spanned, g.dims);
            ensure!(g.spanned[1..] == g.dims[1..], "n = {n}, h = {h}: spanned {:?} vs {:?}", g.spanned, g.dims);
            tables.push(format!("n{n}h{h}={:?}", g.dims));
        }
    }
    Ok(format!("generated by degree 0: {}", tables.join(" ")))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: usize) -> Poly {
    let mut p = Poly::zero(n);
    for d in 0..=max_deg {
        for m in monomials(n, d) {
            if rng.gen_bool(0.3) {
                p = p.add(&Poly::monomial(m));
            }
        }
    }
    p
}

fn squarefree_products(n: usize, max_forms: usize) -> Vec<FormProduct> {
    let forms: Vec<u32> = (1..1u32 << n).collect();
    (0u32..1 << forms.len())
        .filter(|mask| mask.count_ones() as usize <= max_forms)
        .map(|mask| {
            let chosen = forms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &u)| u).collect();
            FormProduct::new(n, chosen).expect("distinct forms")
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..100 {
        let n = 1 + i % 3;
        let (p, q) = (random_poly(&mut rng, n, 3), random_poly(&mut rng, n, 3));
        let pq = p.mul(&q);
        for k in 0..=pq.max_degree() + 1 {
            let lhs = sq_uncapped(k, &pq);
            let rhs = (0..=k).fold(Poly::zero(n), |acc, j| acc.add(&sq_uncapped(j, &p).mul(&sq_uncapped(k - j, &q))));
            ensure!(lhs == rhs, "Cartan fails for Sq^{k} on pair #{i}: {p:?}, {q:?}");
        }
        for d in 0..=4 {
            let h = random_poly_homogeneous(&mut rng, n, d);
            ensure!(sq_uncapped(d, &h) == h.mul(&h), "Sq^{d} of {h:?} is not its square");
            for j in d + 1..=d + 3 {
                ensure!(sq_uncapped(j, &h).is_zero(), "Sq^{j} of {h:?} (degree {d}) is nonzero");
            }
        }
    }
    let mut stable = 0;
    for n in 1..=3 {
        let alg = TruncatedPolyAlgebra::new(n, 8);
        let mut products = if n <= 2 { squarefree_products(n, 3) } else { squarefree_products(n, 2) };
        products.push(FormProduct::c_v(n));
        products.push(FormProduct::c_v(n).power(2));
        for w in ok(enumerate_subspaces(n, None))? {
            products.push(FormProduct::c_vw(&w));
            let prime = ok(GradedIdeal::prime(&alg, &w))?;
            let v = ok(a_stability_check(&alg, &prime, 8))?;
            ensure!(v.is_empty(), "P_{} not stable: {:?}", w.key(), v[0]);
            stable += 1;
        }
        for e in &products {
            let ideal = ok(GradedIdeal::principal(&alg, e))?;
            let v = ok(a_stability_check(&alg, &ideal, 8))?;
            ensure!(v.is_empty(), "({:?}) not stable: {:?}", e.polynomial(), v[0]);
            stable += 1;
        }
    }
    let mut radical = 0;
    for n in 1..=2 {
        for e in squarefree_products(n, 3) {
            for d in 0..=3 {
                let r = ok(serre_radical_check(&e, d, 2))?;
                ensure!(r.equal, "radical check fails for {:?} in degree {d}: {r:?}", e.forms());
                radical += 1;
            }
        }
    }
    Ok(format!("Cartan and instability on 100 pairs; {stable} stable ideals to D = 8; {radical} radical checks"))
}

fn random_poly_homogeneous(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Poly {
    monomials(n, d)
        .into_iter()
        .filter(|_| rng.gen_bool(0.5))
        .fold(Poly::zero(n), |acc, m| acc.add(&Poly::monomial(m)))
}

fn criterion_11() -> Outcome {
    let base: Vec<_> = [LusztigVariant::Subspaces, LusztigVariant::Quotients]
        .into_iter()
        .map(|v| lusztig_complex(2, v))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for lu in &base {
        ensure!(lu.verify().is_ok(), "unmutated {:?} complex fails", lu.variant);
    }
    let mut detected = 0;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lu = &base[rng.gen_range(0..base.len())];
        let b = rng.gen_range(0..lu.boundaries.len());
        let (rows, cols) = (lu.boundaries[b].rows(), lu.boundaries[b].cols());
        let (r, c) = (rng.gen_range(0..rows), rng.gen_range(0..cols));
        if mutate(lu, b, r, c).verify().is_err() {
            detected += 1;
        }
    }
    ensure!(detected == 50, "detected {detected} of 50 mutations");
    Ok("50 of 50 seeded single-bit mutations detected".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("Steinberg dimensions", criterion_1),
        ("Lusztig acyclicity", criterion_2),
        ("Ext of simples", criterion_3),
        ("Oliver vs L-complex", criterion_4),
        ("Klim bridge", criterion_5),
        ("exact resolutions", criterion_6),
        ("M(V;h) pipeline", criterion_7),
        ("doubling identity", criterion_8),
        ("generation by degree 0", criterion_9),
        ("Steenrod suite", criterion_10),
        ("mutation sensitivity", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    for h in 2..=3 {
        if let Ok(m) = m_of_v(1, h, 6) {
            println!("info: M(F2^1;{h}) = {:?}", m.dims);
        }
    }
    if failed > 0 {
        println!("{failed} of 11 criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
