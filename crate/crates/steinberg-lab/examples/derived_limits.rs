// Higher limits over the nonzero subspaces, computed from the order
// complex and from the much smaller Oliver complex.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steinberg_lab::functor::{derived_limit_dims, make_standard_functor, random_functor, StandardKind};
use steinberg_lab::resolutions::oliver_complex;
use steinberg_lab::subspace::{Poset, Subspace};

pub fn run_example() -> anyhow::Result<Vec<usize>> {
    let poset = Arc::new(Poset::nonzero(2)?);
    let constant = make_standard_functor(&poset, &StandardKind::Constant { dim: 1 })?;
    println!("constant F2 on W0(2): lim = {:?}", derived_limit_dims(&constant));
    let top = make_standard_functor(&poset, &StandardKind::Simple(Subspace::full(2)))?;
    let dims = derived_limit_dims(&top);
    println!("F2 at V only:        lim = {dims:?}");

    let poset3 = Arc::new(Poset::nonzero(3)?);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..5 {
        let f = random_functor(&poset3, &mut rng, 4)?;
        let by_chains = derived_limit_dims(&f);
        let oliver = oliver_complex(&f)?;
        println!(
            "random functor, total dim {:>3}: L-complex {:?} (size {}), Oliver {:?} (size {})",
            f.total_dim(),
            by_chains,
            steinberg_lab::functor::l_complex(&f).complex.dims().iter().sum::<usize>(),
            oliver.homology_dims(),
            oliver.dims().iter().sum::<usize>()
        );
        anyhow::ensure!(by_chains == oliver.homology_dims());
    }
    Ok(dims)
}

fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
