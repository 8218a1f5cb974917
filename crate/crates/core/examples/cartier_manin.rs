//! Cartier-Manin matrices of hyperelliptic curves y^2 = f(x) in odd characteristic.
//!
//!     cargo run --example cartier_manin

use ptorsion::algebra::{FieldSpec, Fq};
use ptorsion::cartier::HyperellipticCurve;

fn curve(k: &FieldSpec, coeffs: &[i64]) -> ptorsion::Result<HyperellipticCurve> {
    let f: Vec<Fq> = coeffs.iter().map(|&c| k.from_int(c)).collect();
    HyperellipticCurve::from_coeffs(k, &f)
}

fn main() -> ptorsion::Result<()> {
    let k5 = FieldSpec::prime(5)?;
    for (label, coeffs) in [
        ("x^3 + 1", &[1, 0, 0, 1][..]),
        ("x^3 + x + 1", &[1, 1, 0, 1]),
        ("x^5 + x", &[0, 1, 0, 0, 0, 1]),
        ("x^5 + 2x^2 + 1", &[1, 0, 2, 0, 0, 1]),
    ] {
        let c = curve(&k5, coeffs)?;
        let inv = c.invariants();
        let rows: Vec<Vec<u64>> =
            inv.cartier_matrix.matrix().to_rows().iter().map(|r| r.iter().map(|x| x.index()).collect()).collect();
        println!("F_5  y^2 = {label:<16} g={} A={rows:?} f={} a={}", c.genus(), inv.p_rank, inv.a_number);
    }

    // Supersingular j-invariants show up as A = 0
    for p in [7i64, 11, 13] {
        let k = FieldSpec::prime(p as u64)?;
        let ss: Vec<(i64, i64)> = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b)))
            .filter(|&(a, b)| curve(&k, &[b, a, 0, 1]).is_ok_and(|c| c.invariants().p_rank == 0))
            .collect();
        println!("F_{p}: {} supersingular short Weierstrass curves, e.g. {:?}", ss.len(), &ss[..ss.len().min(4)]);
    }
    Ok(())
}
