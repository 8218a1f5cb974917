//! Finite fields, polynomials and semilinear maps.
//!
//!     cargo run --example finite_fields

use ptorsion::algebra::{FieldSpec, Matrix, Poly, SemilinearMap};

fn main() -> ptorsion::Result<()> {
    // F_9 = F_3[t]/(t^2 + 1); elements print as coordinates "c0:c1"
    let k = FieldSpec::new(3, 2)?;
    println!("F_9 modulus (leading first): {:?}", k.modulus());
    let w = k.parse_element("0:1")?;
    println!(
        "w = {}, w^2 = {}, sigma(w) = {}",
        k.format_element(w),
        k.format_element(k.mul(w, w)),
        k.format_element(k.frobenius(w, 1))
    );
    let inv = k.inv(k.add(w, k.one())).unwrap();
    println!("1/(1 + w) = {}", k.format_element(inv));

    // (x^3 + 1)^2 over F_5
    let f5 = FieldSpec::prime(5)?;
    let f = Poly::new([1, 0, 0, 1].iter().map(|&c| f5.from_int(c)).collect());
    let sq: Vec<u64> = f.pow(2, &f5).coeffs().iter().map(|c| c.index()).collect();
    println!("(x^3 + 1)^2 over F_5, low to high: {sq:?}");
    println!("x^3 + 1 squarefree: {}, irreducible: {}", f.is_squarefree(&f5), f.is_irreducible(&f5));

    // A 1/p-linear nilpotent-plus-identity map: rank vs stable rank
    let a = Matrix::from_ints(&k, &[&[1, 0, 0], &[0, 0, 1], &[0, 0, 0]])?;
    let c = SemilinearMap::new(k.clone(), a, -1)?;
    println!("rank {}, stable rank {}, dim ker C^2 = {}", c.rank(), c.stable_rank(6), c.kernel_power_dim(2));
    Ok(())
}
