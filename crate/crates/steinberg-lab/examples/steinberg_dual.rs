// The GL(V) action on M^0(V;1) and an explicit isomorphism with the dual
// Steinberg module.

use steinberg_lab::pf::{gl_on_m0, steinberg_dual_intertwiner};
use steinberg_lab::steinberg::gl_on_steinberg;

pub fn run_example() -> anyhow::Result<usize> {
    let mut found = 0;
    for n in 0..=3 {
        let t = steinberg_dual_intertwiner(n, 1)?;
        anyhow::ensure!(t.is_invertible());
        println!("n = {n}: invertible intertwiner of size {}", t.rows());
        found += 1;
    }
    let actions = gl_on_m0(2, 1)?;
    for (g, m) in actions.iter().take(3) {
        println!("g = {:?}\n  on M^0: {:?}  on St: {:?}", g.columns(), m, gl_on_steinberg(g)?);
    }
    Ok(found)
}

fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
