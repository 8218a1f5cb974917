//! Dieudonne modules of BT1 group schemes: the I_r family, I_{3,2}, direct sums,
//! canonical filtrations.
//!
//!     cargo run --example dieudonne_modules

use ptorsion::algebra::FieldSpec;
use ptorsion::dieudonne::{Block, DieudonneModule, Operator};

fn describe(name: &str, d: &DieudonneModule) -> ptorsion::Result<()> {
    let dims: Vec<usize> = d.canonical_filtration()?.iter().map(|s| s.dim).collect();
    println!(
        "{name:<12} g={} f={} a={} eo={} filtration dims {:?}",
        d.genus(),
        d.p_rank()?,
        d.a_number()?,
        d.eo_type()?,
        dims
    );
    Ok(())
}

fn main() -> ptorsion::Result<()> {
    let k = FieldSpec::prime(2)?;

    for r in 1..=5 {
        describe(&format!("I_{r}"), &DieudonneModule::ir(&k, r)?)?;
    }
    let i2 = DieudonneModule::ir(&k, 2)?;
    println!("dim ker V^k on I_2: {:?}", (1..=3).map(|n| i2.kernel_power(Operator::V, n)).collect::<Vec<_>>());

    // Same p-rank and a-number, different EO types
    let i32m = DieudonneModule::i32(&k);
    describe("I_3,2", &i32m)?;
    describe("I_2 + I_1", &DieudonneModule::from_blocks(&k, &[Block::Ir(2), Block::Ir(1)])?)?;
    let (s1, s2) = DieudonneModule::i32_summands(&k);
    println!("I_3,2 summands indecomposable: {} {}", s1.is_indecomposable()?, s2.is_indecomposable()?);

    describe("ord + I_2", &DieudonneModule::from_blocks(&k, &[Block::Ordinary, Block::Ir(2)])?)?;
    describe("(I_1)^3", &DieudonneModule::from_blocks(&k, &[Block::Ir(1); 3])?)?;

    let json = serde_json::to_string(&i32m.to_description()).expect("serializable");
    println!("I_3,2 as JSON: {json}");
    Ok(())
}
