// Projective and injective resolutions of simple functors, and the total
// complex of I^{p,q}F as an injective resolution of an arbitrary F.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steinberg_lab::functor::random_functor;
use steinberg_lab::resolutions::{inj_resolution_simple, proj_resolution_simple, tot_resolution};
use steinberg_lab::subspace::{enumerate_subspaces, Poset, Subspace};

pub fn run_example() -> anyhow::Result<usize> {
    let n = 2;
    let proj = proj_resolution_simple(&Subspace::zero(n))?;
    for (w, dims) in proj.poset().elements().iter().zip(proj.dim_table()) {
        println!("P(S_0) at {:<7} {dims:?}", w.key());
    }
    let mut exact = 0;
    for w in enumerate_subspaces(n, None)? {
        for c in [proj_resolution_simple(&w)?, inj_resolution_simple(&w)?] {
            c.check_natural()?;
            c.check_exact()?;
            exact += 1;
        }
    }
    let poset = Arc::new(Poset::lattice(n)?);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = random_functor(&poset, &mut rng, 3)?;
    let tot = tot_resolution(&f)?;
    tot.check_exact()?;
    println!("Tot I(F) for F with dims {:?}: exact, lengths at 0 = {:?}", f.dims(), tot.dim_table()[0]);
    Ok(exact + 1)
}

fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
