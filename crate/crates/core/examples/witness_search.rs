//! Search for curves with prescribed p-rank and a-number.
//!
//!     cargo run --release --example witness_search

use ptorsion::cartier::Model;
use ptorsion::census::{self, Mode, SampleSpec, SearchOutcome};

fn main() -> ptorsion::Result<()> {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let targets = [(5, 1, 2, (0, 2)), (5, 1, 2, (0, 1)), (5, 1, 2, (1, 1)), (3, 1, 3, (0, 1)), (3, 1, 3, (0, 3))];
    for (p, m, g, (f, a)) in targets {
        let spec = SampleSpec { p, m, g, model: Model::OddPPoly, mode: Mode::Exhaustive, jobs };
        match census::search(&spec, f, a, census::DEFAULT_BUDGET)? {
            SearchOutcome::Found(w) => {
                println!("p={p} g={g} (f,a)=({f},{a}): f(x) coefficients {:?}, re-verified: {}", w.coeffs, w.verify()?)
            }
            SearchOutcome::Exhausted { examined } => {
                println!("p={p} g={g} (f,a)=({f},{a}): none among {examined} curves")
            }
        }
    }
    Ok(())
}
