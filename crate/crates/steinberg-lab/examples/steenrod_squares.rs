// Steenrod squares on F2[x, y], stability of ideals generated by products
// of linear forms, and the degreewise radical comparison.

use steinberg_lab::steenrod::{
    a_stability_check, serre_radical_check, FormProduct, GradedIdeal, Poly, TruncatedPolyAlgebra,
};

pub fn run_example() -> anyhow::Result<usize> {
    let alg = TruncatedPolyAlgebra::new(2, 8);
    let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
    let xy = x.mul(&y);
    for i in 0..=3 {
        println!("Sq^{i}(xy) = {:?}", alg.sq(i, &xy)?);
    }
    let cv = FormProduct::c_v(2);
    let ideal = GradedIdeal::principal(&alg, &cv)?;
    println!("(c_V) dims by degree: {:?}", (0..=8).map(|d| ideal.dim(d)).collect::<Vec<_>>());
    anyhow::ensure!(a_stability_check(&alg, &ideal, 8)?.is_empty());

    let q = x.mul(&x).add(&xy).add(&y.mul(&y));
    let bad = GradedIdeal::generated(&alg, vec![q])?;
    let violations = a_stability_check(&alg, &bad, 8)?;
    println!("(x^2+xy+y^2) fails first at Sq^{} of {}", violations[0].square, violations[0].element);

    let e = FormProduct::new(2, vec![0b01, 0b10])?;
    let r = serre_radical_check(&e, 2, 2)?;
    println!("radical of (xy) in degree 2: {r:?}");
    anyhow::ensure!(r.equal);
    Ok(violations.len())
}

fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
