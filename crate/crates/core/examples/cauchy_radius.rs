//! Cauchy radii from the scalar equation and from matrix polynomials under
//! each norm.

use polybound::{cauchy_radius, solve_cauchy_scalar, MatrixPoly, NormKind, ScalarBoundPoly};

fn main() -> polybound::Result<()> {
    // z² − 3z − 4 has roots 4 and −1: the bound is attained.
    let eq = ScalarBoundPoly::new(vec![4.0, 3.0, 1.0], NormKind::One)?;
    println!("scalar radius: {}", solve_cauchy_scalar(&eq));

    let p = polybound::generate_sample(&polybound::BenchConfig::class_one(), 0);
    for kind in NormKind::ALL {
        let step = cauchy_radius(&p, kind)?;
        println!(
            "{kind:>3}-norm radius of a 4×4 degree-18 sample: {:.4}",
            step.radius
        );
    }

    let q = MatrixPoly::from_scalars(&[-6.0, 2.0])?;
    println!("2z − 6: {}", cauchy_radius(&q, NormKind::Two)?.radius);
    Ok(())
}
