//! Two-sided annulus for the eigenvalues from the reverse polynomial.

use polybound::{bound, eigenvalues, generate_sample, BenchConfig, BoundOptions, Side};

fn main() -> polybound::Result<()> {
    let mut cfg = BenchConfig::custom(6, 3);
    cfg.seed = 5;
    let p = generate_sample(&cfg, 0);
    let spectrum = eigenvalues(&p)?;

    for k in [1, 3, 6] {
        let opts = BoundOptions {
            k,
            sides: vec![Side::Left; 2],
            lower: true,
            ..BoundOptions::default()
        };
        let report = bound(&p, &opts)?;
        println!(
            "k={k}: {:.4} ≤ |λ| ≤ {:.4}",
            report.lower.unwrap_or(0.0),
            report.upper()
        );
    }
    println!(
        "actual: {:.4} ≤ |λ| ≤ {:.4}",
        spectrum.min_modulus, spectrum.max_modulus
    );
    Ok(())
}
