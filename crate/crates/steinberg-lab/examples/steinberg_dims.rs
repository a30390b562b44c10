// Steinberg modules of F2^n for n = 0..=4, checked against the dimensions
// forced by the Euler characteristic of the Lusztig complex.
//
// ```bash
// cargo run --example steinberg_dims
// ```

use steinberg_lab::steinberg::{euler_recursion_dims, steinberg};

pub fn run_example() -> anyhow::Result<Vec<usize>> {
    let mut dims = Vec::new();
    for (n, predicted) in euler_recursion_dims(4).into_iter().enumerate() {
        let st = steinberg(n)?;
        anyhow::ensure!(st.dim() as i64 == predicted, "n = {n}: {} vs {predicted}", st.dim());
        println!("dim St(F2^{n}) = {:>3}   ({} complete flags)", st.dim(), st.flags().len());
        dims.push(st.dim());
    }
    Ok(dims)
}

fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
