mod common;

use proptest::prelude::*;
use ptorsion::algebra::{FieldSpec, Fq, Matrix, Poly, SemilinearMap};

fn fields() -> Vec<FieldSpec> {
    [
        (2, 1),
        (3, 1),
        (7, 1),
        (2, 2),
        (2, 3),
        (3, 2),
        (5, 2),
        (3, 5),
        (2, 16),
        (2, 20),
        (65_537, 2),
        ((1 << 31) - 1, 2),
        ((1 << 61) - 1, 1),
    ]
    .iter()
    .map(|&(p, m)| FieldSpec::new(p, m).unwrap())
    .collect()
}

#[test]
fn field_axioms_on_random_triples() {
    let mut rng = common::rng(1);
    for k in fields() {
        let m = k.degree() as i64;
        let p = k.characteristic() as u128;
        for _ in 0..1000 {
            let [a, b, c] = [(); 3].map(|_| common::random_element(&k, &mut rng));
            assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
            assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
            assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
            assert_eq!(k.add(a, b), k.add(b, a));
            assert_eq!(k.mul(a, b), k.mul(b, a));
            assert_eq!(k.sub(k.add(a, b), b), a);
            assert_eq!(k.add(a, k.neg(a)), Fq::ZERO);
            if let Some(ai) = k.inv(a) {
                assert_eq!(k.mul(a, ai), Fq::ONE);
            } else {
                assert!(a.is_zero());
            }
            assert_eq!(k.frobenius(k.add(a, b), 1), k.add(k.frobenius(a, 1), k.frobenius(b, 1)));
            assert_eq!(k.frobenius(k.mul(a, b), 1), k.mul(k.frobenius(a, 1), k.frobenius(b, 1)));
            assert_eq!(k.frobenius(a, 1), k.pow(a, p));
            assert_eq!(k.frobenius(a, m), a);
            assert_eq!(k.frobenius(k.frobenius(a, 1), -1), a);
        }
    }
}

#[test]
fn element_encoding_round_trips() {
    let mut rng = common::rng(2);
    for k in fields() {
        for _ in 0..200 {
            let a = common::random_element(&k, &mut rng);
            assert_eq!(k.parse_element(&k.format_element(a)).unwrap(), a);
            assert_eq!(k.from_coords(&k.coords(a)).unwrap(), a);
        }
    }
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![(2u64, 1u32), (5, 1), (2, 2), (3, 2), (7, 1), (2, 3)])
        .prop_map(|(p, m)| FieldSpec::new(p, m).unwrap())
}

fn elements(k: &FieldSpec, n: usize) -> impl Strategy<Value = Vec<Fq>> {
    let k = k.clone();
    prop::collection::vec(0..k.order() as u64, n)
        .prop_map(move |v| v.into_iter().map(|i| k.element(i as u128).unwrap()).collect())
}

fn matrix(k: &FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    elements(k, rows * cols)
        .prop_map(move |v| Matrix::from_rows(cols, v.chunks(cols.max(1)).map(<[Fq]>::to_vec).collect()).unwrap())
}

fn semilinear(k: &FieldSpec, n: usize) -> impl Strategy<Value = SemilinearMap> {
    let k = k.clone();
    (matrix(&k, n, n), -3i64..=3).prop_map(move |(a, t)| SemilinearMap::new(k.clone(), a, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_pow_is_additive_in_exponent(
        (k, coeffs) in field_strategy().prop_flat_map(|k| { let c = elements(&k, 5); (Just(k), c) }),
        a in 0u64..=8,
        b in 0u64..=8,
    ) {
        let f = Poly::new(coeffs);
        prop_assert_eq!(f.pow(a + b, &k), f.pow(a, &k).mul(&f.pow(b, &k), &k));
    }

    #[test]
    fn poly_pow_matches_repeated_multiplication(
        (k, coeffs) in field_strategy().prop_flat_map(|k| { let c = elements(&k, 4); (Just(k), c) }),
        e in 0u64..=8,
    ) {
        let f = Poly::new(coeffs);
        let naive = (0..e).fold(Poly::one(), |acc, _| acc.mul(&f, &k));
        prop_assert_eq!(f.pow(e, &k), naive);
    }

    #[test]
    fn division_identity(
        (k, a, b) in field_strategy().prop_flat_map(|k| { let a = elements(&k, 7); let b = elements(&k, 4); (Just(k), a, b) }),
    ) {
        let (a, b) = (Poly::new(a), Poly::new(b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b, &k);
        prop_assert_eq!(q.mul(&b, &k).add(&r, &k), a);
        prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn rank_invariant_under_row_operations(
        (k, m, ops) in field_strategy().prop_flat_map(|k| {
            let m = (1usize..=6, 1usize..=6).prop_flat_map({ let k = k.clone(); move |(r, c)| matrix(&k, r, c) });
            let ops = prop::collection::vec((0usize..6, 0usize..6, 1u64..k.order() as u64, 0u8..3), 0..20);
            (Just(k), m, ops)
        }),
    ) {
        let mut rows = m.to_rows();
        let n = rows.len();
        for (i, j, c, kind) in ops {
            let (i, j) = (i % n, j % n);
            let c = k.element(c as u128).unwrap();
            match kind {
                0 => rows.swap(i, j),
                1 => rows[i].iter_mut().for_each(|x| *x = k.mul(c, *x)),
                _ if i != j => {
                    let src = rows[j].clone();
                    rows[i].iter_mut().zip(src).for_each(|(x, y)| *x = k.add(*x, k.mul(c, y)));
                }
                _ => {}
            }
        }
        let moved = Matrix::from_rows(m.cols(), rows).unwrap();
        prop_assert_eq!(moved.rank(&k), m.rank(&k));
        prop_assert_eq!(m.rank(&k) + m.kernel(&k).rows(), m.cols());
    }

    #[test]
    fn compose_is_associative(
        (a, b, c) in field_strategy().prop_flat_map(|k| (1usize..=4).prop_flat_map(move |n| {
            (semilinear(&k, n), semilinear(&k, n), semilinear(&k, n))
        })),
        x in prop::collection::vec(0u64..4, 4),
    ) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let k = a.field().clone();
        let x: Vec<Fq> = x[..a.dim()].iter().map(|&i| k.element(i as u128 % k.order()).unwrap()).collect();
        prop_assert_eq!(left.apply(&x), a.apply(&b.apply(&c.apply(&x))));
    }

    #[test]
    fn stable_rank_stabilizes(
        a in field_strategy().prop_flat_map(|k| (1usize..=6).prop_flat_map(move |n| semilinear(&k, n))),
    ) {
        let n = a.dim();
        let ranks: Vec<usize> = (1..=2 * n + 1).map(|i| a.power(i).rank()).collect();
        prop_assert!(ranks.windows(2).all(|w| w[1] <= w[0]), "{:?}", ranks);
        prop_assert!(ranks[n - 1..].iter().all(|&r| r == ranks[n - 1]), "{:?}", ranks);
        prop_assert_eq!(a.stable_rank(n), ranks[n - 1]);
        prop_assert_eq!(a.stable_rank(2 * n), ranks[n - 1]);
        for i in 1..=n {
            prop_assert_eq!(a.kernel_power_dim(i), n - ranks[i - 1]);
        }
    }

    #[test]
    fn image_and_preimage_are_adjoint(
        (a, w) in field_strategy().prop_flat_map(|k| (1usize..=4).prop_flat_map(move |n| {
            (semilinear(&k, n), (1usize..=n).prop_flat_map({ let k = k.clone(); move |r| matrix(&k, r, n) }))
        })),
    ) {
        let k = a.field().clone();
        let w = ptorsion::algebra::Subspace::span(&w, &k);
        let pre = a.preimage(&w).unwrap();
        prop_assert!(w.contains(&a.image(&pre).unwrap(), &k).unwrap());
        prop_assert!(pre.contains(&a.kernel(), &k).unwrap());
        let back = a.preimage(&a.image(&w).unwrap()).unwrap();
        prop_assert!(back.contains(&w, &k).unwrap());
    }
}
