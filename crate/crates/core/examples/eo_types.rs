//! Ekedahl-Oort types: enumeration, p-rank and a-number, stratum dimensions.
//!
//!     cargo run --example eo_types -- 4

use ptorsion::eo;

fn main() -> ptorsion::Result<()> {
    let g: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);

    println!("genus {g}: {} types", 1u64 << g);
    println!("{:<20} {:>2} {:>2} {:>4}", "nu", "f", "a", "dim");
    for t in eo::iter_types(g)? {
        println!("{:<20} {:>2} {:>2} {:>4}", t.to_string(), t.p_rank(), t.a_number(), t.stratum_dim());
    }

    println!("\ntypes per p-rank:");
    for (f, n) in eo::count_by_p_rank(g)? {
        println!("  f = {f}: {n}");
    }

    let ir = eo::EoType::of_ir(g)?;
    println!("\nthe only type with f = 0 and a = 1: {ir}");
    Ok(())
}
