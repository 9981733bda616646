//! Mean ratio and cost tables for a random class.
//!
//! `cargo run --release --example class_tables -- [I|II|III] [samples]`

use polybound::{emit_table, run_experiment, BenchConfig, ClassId, TableFormat};

fn main() -> polybound::Result<()> {
    let mut args = std::env::args().skip(1);
    let class: ClassId = args.next().as_deref().unwrap_or("I").parse()?;
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);

    let mut cfg = BenchConfig::for_class(class, false);
    cfg.samples = samples;
    let table = run_experiment(&cfg)?;
    print!("{}", emit_table(&table, TableFormat::Markdown)?);
    Ok(())
}
