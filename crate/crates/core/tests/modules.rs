mod common;

use ptorsion::algebra::FieldSpec;
use ptorsion::dieudonne::{Block, DieudonneModule, ModuleDescription};
use ptorsion::eo::{self, EoType};
use rand::Rng;

const LIBRARY: [Block; 7] =
    [Block::Ordinary, Block::Ir(1), Block::Ir(2), Block::Ir(3), Block::Ir(4), Block::Ir(5), Block::I32];

fn random_sums(k: &FieldSpec, count: usize, seed: u64) -> Vec<(Vec<Block>, DieudonneModule)> {
    let mut rng = common::rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let blocks: Vec<Block> = (0..n).map(|_| LIBRARY[rng.gen_range(0..LIBRARY.len())]).collect();
            let d = DieudonneModule::from_blocks(k, &blocks).unwrap();
            (blocks, d)
        })
        .collect()
}

#[test]
fn eo_bounds_for_all_types() {
    for g in 1..=16 {
        for t in eo::iter_types(g).unwrap() {
            let (f, a) = (t.p_rank(), t.a_number());
            assert!(f <= g && a <= g - f, "{t}");
            // a >= 1 exactly off the ordinary locus
            assert_eq!(a == 0, f == g, "{t}");
        }
    }
}

#[test]
fn eo_text_and_json_round_trip() {
    for t in eo::enumerate(5).unwrap() {
        assert_eq!(t.to_string().parse::<EoType>().unwrap(), t);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<EoType>(&json).unwrap(), t);
    }
    assert!(serde_json::from_str::<EoType>("[0,2]").is_err());
}

#[test]
fn direct_sum_adds_invariants() {
    let k = FieldSpec::new(2, 1).unwrap();
    let sums = random_sums(&k, 60, 11);
    for pair in sums.windows(2) {
        let (x, y) = (&pair[0].1, &pair[1].1);
        let s = x.direct_sum(y).unwrap();
        let t = s.eo_type().unwrap();
        assert_eq!(t.p_rank(), x.p_rank().unwrap() + y.p_rank().unwrap(), "{:?} + {:?}", pair[0].0, pair[1].0);
        assert_eq!(t.a_number(), x.a_number().unwrap() + y.a_number().unwrap(), "{:?} + {:?}", pair[0].0, pair[1].0);
        assert_eq!(t.p_rank(), s.p_rank().unwrap());
        assert_eq!(t.a_number(), s.a_number().unwrap());
    }
}

#[test]
fn ir_matches_combinatorics() {
    for p in [2, 3, 5] {
        let k = FieldSpec::new(p, 1).unwrap();
        for r in 1..=10 {
            assert_eq!(DieudonneModule::ir(&k, r).unwrap().eo_type().unwrap(), EoType::of_ir(r).unwrap());
        }
    }
}

#[test]
fn filtration_is_a_full_chain() {
    let k = FieldSpec::new(3, 1).unwrap();
    for (blocks, d) in random_sums(&k, 80, 12) {
        let steps = d.canonical_filtration().unwrap();
        let g = d.genus();
        assert_eq!(steps.first().unwrap().dim, 0, "{blocks:?}");
        let top = steps.last().unwrap();
        assert_eq!((top.dim, top.image_dim_under_v), (2 * g, g), "{blocks:?}");
        assert!(steps.windows(2).all(|w| w[0].dim < w[1].dim));
        assert!(steps.windows(2).all(|w| w[0].image_dim_under_v <= w[1].image_dim_under_v));
    }
}

/// Multisets of library blocks with total genus `r`.
fn block_sums(r: usize, from: usize) -> Vec<Vec<Block>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, b) in LIBRARY.iter().enumerate().skip(from) {
        if b.genus() <= r {
            for mut rest in block_sums(r - b.genus(), i) {
                rest.insert(0, *b);
                out.push(rest);
            }
        }
    }
    out
}

#[test]
fn ir_is_the_unique_local_local_with_a_one() {
    let k = FieldSpec::new(2, 1).unwrap();
    for r in 1..=4 {
        let hits: Vec<Vec<Block>> = block_sums(r, 0)
            .into_iter()
            .filter(|bs| {
                let d = DieudonneModule::from_blocks(&k, bs).unwrap();
                d.p_rank().unwrap() == 0 && d.a_number().unwrap() == 1
            })
            .collect();
        assert_eq!(hits, vec![vec![Block::Ir(r)]], "r = {r}");
    }
}

#[test]
fn i32_is_not_i2_plus_i1() {
    let k = FieldSpec::new(2, 1).unwrap();
    let i32m = DieudonneModule::i32(&k);
    let split = DieudonneModule::from_blocks(&k, &[Block::Ir(2), Block::Ir(1)]).unwrap();
    assert_eq!((i32m.p_rank().unwrap(), i32m.a_number().unwrap()), (0, 2));
    assert_eq!((split.p_rank().unwrap(), split.a_number().unwrap()), (0, 2));
    assert_ne!(i32m.eo_type().unwrap(), split.eo_type().unwrap());
}

#[test]
fn module_description_round_trips() {
    let k = FieldSpec::new(3, 2).unwrap();
    for (_, d) in random_sums(&k, 20, 13) {
        let json = serde_json::to_string(&d.to_description()).unwrap();
        let back: ModuleDescription = serde_json::from_str(&json).unwrap();
        assert_eq!(DieudonneModule::from_description(&back).unwrap(), d);
    }
}

#[test]
fn non_bt1_input_is_rejected() {
    let k = FieldSpec::new(2, 1).unwrap();
    let id = ptorsion::algebra::Matrix::identity(2);
    let err = DieudonneModule::from_matrices(&k, id.clone(), id);
    assert!(err.is_err() || err.unwrap().eo_type().is_err());
}
