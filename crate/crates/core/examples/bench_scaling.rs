//! Doubling ratios for multiplication and order bases.
//!
//! `cargo run --release --example bench_scaling -- 16,32,64 5`

use polymat::bench::{self, BenchOp};
use polymat::PrimeField;

fn main() -> polymat::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let grid = bench::parse_grid(args.first().map_or("16,32,64", String::as_str))?;
    let reps = args.get(1).and_then(|r| r.parse().ok()).unwrap_or(3);
    let field = PrimeField::default();
    for op in [BenchOp::Mul, BenchOp::Mbasis] {
        let report = bench::run(op, &grid, reps, &field, 0)?;
        print!("{}", report.table());
    }
    Ok(())
}
