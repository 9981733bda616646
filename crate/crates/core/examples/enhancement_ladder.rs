//! Enhancement ladders of one random sample for every q, plus the identity
//! between one left step on the companion linearization and ‖C_P²‖^{1/2}.

use polybound::lification::divisors;
use polybound::{bound, frobenius_companion, generate_sample, BenchConfig, BoundOptions};
use polybound::{NormKind, Side};

fn main() -> polybound::Result<()> {
    let cfg = BenchConfig::class_one();
    let p = generate_sample(&cfg, 0);
    let n = p.degree();

    for k in divisors(n).into_iter().rev() {
        let opts = BoundOptions {
            k,
            sides: vec![Side::Left, Side::Right, Side::Left],
            ..BoundOptions::default()
        };
        let report = bound(&p, &opts)?;
        let ladder: Vec<String> = report
            .steps
            .iter()
            .map(|s| format!("{:.3} ({})", s.radius, s.equation_degree))
            .collect();
        println!("q={:>2}: {}", n / k, ladder.join(" → "));
    }

    let c = frobenius_companion(&p)?;
    let squared = &c * &c;
    let opts = BoundOptions {
        k: n,
        norm: NormKind::Two,
        sides: vec![Side::Left],
        lower: false,
    };
    let enhanced = bound(&p, &opts)?.upper();
    println!(
        "one left step on the linearization: {enhanced:.12}, ‖C²‖^(1/2) = {:.12}, ‖C‖ = {:.6}",
        squared.norm(NormKind::Two).sqrt(),
        c.norm(NormKind::Two)
    );
    Ok(())
}
