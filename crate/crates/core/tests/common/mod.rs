//! Independent oracles for the integration tests. Plain integer arithmetic
//! only; nothing here goes through the crate's field or polynomial code.

#![allow(dead_code)]

use ptorsion::algebra::{FieldSpec, Fq};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Legendre symbol by Euler's criterion, as -1, 0, 1.
pub fn legendre(a: u64, p: u64) -> i64 {
    match pow_mod(a % p, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Evaluate a polynomial with integer coefficients (lowest first) mod p.
pub fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Projective point count of `y^2 = f(x)` over F_p for `f` of odd degree
/// (one point at infinity).
pub fn count_points_odd_degree(coeffs: &[u64], p: u64) -> u64 {
    let affine: i64 = (0..p).map(|x| 1 + legendre(eval_mod(coeffs, x, p), p)).sum();
    affine as u64 + 1
}

/// Discriminant of `x^3 + b x^2 + c x + d` mod p.
pub fn cubic_discriminant(b: u64, c: u64, d: u64, p: u64) -> u64 {
    let (b, c, d, p) = (b as i128, c as i128, d as i128, p as i128);
    let disc = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
    disc.rem_euclid(p) as u64
}

/// Uniform random element.
pub fn random_element(k: &FieldSpec, rng: &mut ChaCha8Rng) -> Fq {
    k.element(rng.gen_range(0..k.order() as u64) as u128).unwrap()
}

pub fn random_nonzero(k: &FieldSpec, rng: &mut ChaCha8Rng) -> Fq {
    k.element(rng.gen_range(1..k.order() as u64) as u128).unwrap()
}
