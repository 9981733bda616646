//! ℓ-ifications of a degree-6 scalar polynomial for every divisor `k`, with
//! the determinant check against the original.

use num_complex::Complex64;
use polybound::lification::{det_equivalence_check, divisors};
use polybound::{frobenius_companion, lify, MatrixPoly};

fn main() -> polybound::Result<()> {
    let p = MatrixPoly::from_scalars(&[2.0, -1.0, 0.5, 3.0, -2.0, 1.0, 1.0])?;
    let zs = [Complex64::new(0.3, 0.7), Complex64::new(-1.2, 0.1)];

    for k in divisors(p.degree()) {
        let l = lify(&p, k)?;
        println!(
            "k={k}: degree {} with {}×{} coefficients, det gap {:.1e}",
            l.q(),
            l.poly().m(),
            l.poly().m(),
            det_equivalence_check(&p, &l, &zs)
        );
    }

    let c = frobenius_companion(&p)?;
    println!("companion first row: {:?}", c.rows()[0]);
    Ok(())
}
