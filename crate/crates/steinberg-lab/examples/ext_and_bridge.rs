// Ext(S_0, F) from the Steinberg complex, compared with higher limits of
// F restricted to the nonzero subspaces, and the E_1 pages of B(F).

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steinberg_lab::functor::{make_standard_functor, random_functor, StandardKind};
use steinberg_lab::resolutions::{be1_check, ext_dims, klim_bridge};
use steinberg_lab::subspace::{enumerate_subspaces, Poset};

pub fn run_example() -> anyhow::Result<usize> {
    let n = 3;
    let poset = Arc::new(Poset::lattice(n)?);
    for w in enumerate_subspaces(n, None)?.iter().filter(|w| w.rows().len() < 2 || w.dim() == n) {
        let s = make_standard_functor(&poset, &StandardKind::Simple(w.clone()))?;
        println!("Ext(S_0, S_{:<9}) = {:?}", w.key(), ext_dims(&s)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut agreed = 0;
    for _ in 0..5 {
        let f = random_functor(&poset, &mut rng, 4)?;
        let r = klim_bridge(&f)?;
        println!("Ext {:?}  lim {:?}  rho rank {}", r.ext, r.lim, r.rho_rank);
        anyhow::ensure!(r.ok(), "{:?}", r.mismatches);
        agreed += 1;
    }
    let p2 = Arc::new(Poset::lattice(2)?);
    let f = random_functor(&p2, &mut rng, 3)?;
    let e1 = be1_check(&f)?;
    println!("E1 (p,q) -> dim: {:?}", e1.vertical);
    anyhow::ensure!(e1.ok());
    Ok(agreed)
}

fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
