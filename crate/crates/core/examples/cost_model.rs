//! Multiplication work along enhancement ladders for a degree-18 sample.

use polybound::bounds::{cost_estimate, CostContext};
use polybound::lification::divisors;
use polybound::{enhance, generate_sample, lify, BenchConfig, Side};

fn main() -> polybound::Result<()> {
    let cfg = BenchConfig::class_one();
    let p = generate_sample(&cfg, 0);
    let m = p.m();
    println!("s²/(νkm) of the input: {:.2}", cost_estimate(&p, 1, m)?);

    for k in divisors(p.degree()).into_iter().rev() {
        let ctx = CostContext::new(&p, k)?;
        let mut current = lify(&p, k)?.into_poly();
        let mut total = 0.0;
        let mut cells = Vec::new();
        for _ in 0..3 {
            total += ctx.normalized_work(&current)?;
            current = enhance(&current, Side::Left)?;
            cells.push(format!("{total:.2}"));
        }
        println!("q={:>2}: {}", p.degree() / k, cells.join(" | "));
    }
    Ok(())
}
