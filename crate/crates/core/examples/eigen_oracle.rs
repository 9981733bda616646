//! Spectrum of a matrix polynomial and validation of a bound report.

use polybound::{bound, eigenvalues, validate_bounds, BoundOptions, MatrixPoly, Side};

fn main() -> polybound::Result<()> {
    // (z − 1)(z − 2)(z + 3)
    let p = MatrixPoly::from_scalars(&[6.0, -7.0, 0.0, 1.0])?;
    let spectrum = eigenvalues(&p)?;
    println!("eigenvalues: {:?}", spectrum.values);
    println!("spot-check residual: {:.1e}", spectrum.spot_check(&p, 3));

    let report = bound(
        &p,
        &BoundOptions {
            sides: vec![Side::Left; 3],
            lower: true,
            ..BoundOptions::default()
        },
    )?;
    let v = validate_bounds(&p, &report)?;
    println!("radii {:?}, lower {:?}", report.radii(), report.lower);
    println!("valid: {}", v.passed);
    Ok(())
}
