// Both Lusztig complexes, their homology, and what a single flipped entry
// does to them.

use steinberg_lab::steinberg::{lusztig_complex, mutate, LusztigVariant};

pub fn run_example() -> anyhow::Result<usize> {
    let mut checked = 0;
    for n in 1..=4 {
        for variant in [LusztigVariant::Subspaces, LusztigVariant::Quotients] {
            let lu = lusztig_complex(n, variant)?;
            let h = lu.homology_dims()?;
            println!("n = {n} {variant:?}: terms {:?}, homology {h:?}", lu.dims());
            anyhow::ensure!(lu.verify().is_ok());
            checked += 1;
        }
    }
    let lu = lusztig_complex(2, LusztigVariant::Subspaces)?;
    let broken = mutate(&lu, 0, 0, 0);
    println!("after flipping one entry: {:?}", broken.verify());
    anyhow::ensure!(broken.verify().is_err());
    Ok(checked)
}

fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
