//! Characteristic 2: the Cartier operator on y^2 - y = f(x).
//!
//!     cargo run --example artin_schreier

use ptorsion::algebra::{FieldSpec, Fq, Poly};
use ptorsion::cartier::ArtinSchreierCurve;

fn main() -> ptorsion::Result<()> {
    let k = FieldSpec::new(2, 2)?;
    let w = k.parse_element("0:1")?;

    // a = floor((g + 1) / 2) whatever the coefficients
    for g in 1..=6 {
        let mut coeffs = vec![w; 2 * g + 1];
        coeffs.push(Fq::ONE);
        let c = ArtinSchreierCurve::poly(&k, &Poly::new(coeffs))?;
        let inv = c.invariants()?;
        println!("deg {:>2}: g={g} f={} a={}", 2 * g + 1, inv.p_rank, inv.a_number);
    }

    // The two genus-3 families with a pole at 0
    let (c1, c2, c3) = (w, Fq::ONE, k.mul(w, w));
    for (name, c) in [
        ("x^5 + c1 x^3 + c2 x + c3/x", ArtinSchreierCurve::gamma1(&k, c1, c2, c3)?),
        ("x^3 + c1 x + c2/x + c3/x^3", ArtinSchreierCurve::gamma2(&k, c1, c2, c3)?),
    ] {
        let inv = c.invariants()?;
        let m: Vec<Vec<u64>> =
            inv.cartier_matrix.matrix().to_rows().iter().map(|r| r.iter().map(|x| x.index()).collect()).collect();
        println!("y^2 - y = {name}: basis x^{:?} dx, C = {m:?}, f={} a={}", c.basis(), inv.p_rank, inv.a_number);
    }
    Ok(())
}
