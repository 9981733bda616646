//! Build a 2×2 quadratic, evaluate it, reverse it, make it monic and
//! round-trip it through JSON.

use num_complex::Complex64;
use polybound::{ComplexMatrix, MatrixPoly, MonicSide};

fn main() -> polybound::Result<()> {
    let a0 = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, -1.0]])?;
    let a1 = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])?;
    let a2 = ComplexMatrix::from_real_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]])?;
    let p = MatrixPoly::new(vec![a0, a1, a2])?;

    let z = Complex64::new(0.5, -1.0);
    println!("P({z}) = {:?}", p.evaluate(z).rows());
    println!(
        "leading coefficient of the reverse (A_0): {:?}",
        p.reverse().leading().rows()
    );

    let monic = p.make_monic(MonicSide::Pre)?;
    println!("monic: {}", monic.is_monic());

    let json = p.to_json()?;
    let back = MatrixPoly::from_json(&json)?;
    println!("JSON round trip exact: {}", back == p);
    Ok(())
}
