// Graded dimensions of M(V;h), generation by degree 0, and the doubling
// identity P_{M(V;2h)}(t) = (1+t)^n P_{M(V;h)}(t^2).

use steinberg_lab::pf::{ephi_doubling_check, generation_check, m_of_v, r_pf, EFiniteModule};
use steinberg_lab::steenrod::FormProduct;
use steinberg_lab::subspace::Subspace;

pub fn run_example() -> anyhow::Result<Vec<usize>> {
    for n in 0..=3 {
        let t = m_of_v(n, 1, 6)?;
        println!("M(F2^{n};1): {:?}", t.dims);
    }
    println!("R^2 Pf(H*V), n = 2: {:?}", r_pf(&FormProduct::one(2), 1, 2, 6)?);
    let g = generation_check(2, 2, 8)?;
    println!("M(F2^2;2) = {:?}, spanned from degree 0: {:?}", g.dims, g.spanned);
    anyhow::ensure!(g.ok());
    let d = ephi_doubling_check(3, 1, 4)?;
    println!("doubling n = 3: {:?} vs {:?}", d.doubled, d.predicted);
    anyhow::ensure!(d.ok());

    let m = EFiniteModule::new(2, vec![(Subspace::full(2), vec![1]), (Subspace::zero(2), vec![2, 1])])?;
    println!("e-finite example: series {:?}, finite part {:?}", m.poincare(4), m.finite_part().poincare(4));
    Ok(g.dims)
}

fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
