//! Tally (p-rank, a-number) over random genus-2 curves, in parallel,
//! and print the CSV plus the frequency diagnostics.
//!
//!     cargo run --release --example census_run -- 7 2000

use ptorsion::cartier::Model;
use ptorsion::census::{self, Mode, SampleSpec};

fn main() -> ptorsion::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let p = args.next().unwrap_or(7);
    let n = args.next().unwrap_or(2000);

    let spec = SampleSpec {
        p,
        m: 1,
        g: 2,
        model: Model::OddPPoly,
        mode: Mode::Random { n, seed: 1 },
        jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let outcome = census::run(&spec)?;
    census::write_csv(&outcome.records, std::io::stdout().lock(), true)?;
    println!("\n{} drawn, {} singular", outcome.processed, outcome.invalid);
    println!("{:>2} {:>2} {:>10} {:>10}", "f", "a", "observed", "p^-(g-f)");
    for row in census::diagnostics(&outcome.records) {
        println!("{:>2} {:>2} {:>10.4} {:>10.4}", row.f, row.a, row.frequency, row.reference);
    }
    Ok(())
}
