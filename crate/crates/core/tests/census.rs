mod common;

use ptorsion::cartier::Model;
use ptorsion::census::{self, CensusRecord, Mode, SampleSpec, SearchOutcome};
use ptorsion::Error;

fn spec(p: u64, m: u32, g: usize, model: Model, mode: Mode) -> SampleSpec {
    SampleSpec { p, m, g, model, mode, jobs: 2 }
}

#[test]
fn exhaustive_genus_one_matches_point_counts() {
    let p = 5;
    let out = census::run(&spec(p, 1, 1, Model::OddPPoly, Mode::Exhaustive)).unwrap();
    let (mut singular, mut supersingular, mut ordinary) = (0, 0, 0);
    for d in 0..p {
        for c in 0..p {
            for b in 0..p {
                if common::cubic_discriminant(b, c, d, p) == 0 {
                    singular += 1;
                } else if common::count_points_odd_degree(&[d, c, b, 1], p) % p == 1 {
                    supersingular += 1;
                } else {
                    ordinary += 1;
                }
            }
        }
    }
    assert_eq!(out.processed, p * p * p);
    assert_eq!(out.invalid, singular);
    let count = |f: usize, a: usize| out.records.iter().find(|r| (r.f, r.a) == (f, a)).map_or(0, |r| r.count);
    assert_eq!(count(0, 1), supersingular);
    assert_eq!(count(1, 0), ordinary);
    assert_eq!(out.records.len(), 2);
}

#[test]
fn counts_are_conserved() {
    let cases = [
        spec(3, 1, 2, Model::OddPPoly, Mode::Random { n: 500, seed: 1 }),
        spec(2, 2, 3, Model::As2Poly, Mode::Random { n: 300, seed: 2 }),
        spec(2, 2, 3, Model::As2Gamma1, Mode::Exhaustive),
        spec(2, 3, 3, Model::As2Gamma2, Mode::Random { n: 200, seed: 3 }),
    ];
    for s in cases {
        let out = census::run(&s).unwrap();
        let total: u64 = out.records.iter().map(|r| r.count).sum();
        assert_eq!(total, out.valid(), "{s:?}");
        if let Mode::Random { n, .. } = s.mode {
            assert_eq!(out.processed, n);
        }
        for r in &out.records {
            assert!(r.a <= r.g - r.f);
        }
    }
}

#[test]
fn gamma_exhaustive_rejects_exactly_c3_zero() {
    let out = census::run(&spec(2, 2, 3, Model::As2Gamma2, Mode::Exhaustive)).unwrap();
    assert_eq!(out.processed, 64);
    assert_eq!(out.invalid, 16);
    assert!(out.records.iter().all(|r| r.a == 2));
}

#[test]
fn records_are_sorted_and_job_independent() {
    let base = spec(7, 1, 2, Model::OddPPoly, Mode::Random { n: 800, seed: 99 });
    let runs: Vec<_> =
        [1, 3, 8].into_iter().map(|jobs| census::run(&SampleSpec { jobs, ..base.clone() }).unwrap()).collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
    let keys: Vec<(std::cmp::Reverse<usize>, usize)> =
        runs[0].records.iter().map(|r| (std::cmp::Reverse(r.f), r.a)).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let other_seed = census::run(&SampleSpec { mode: Mode::Random { n: 800, seed: 100 }, ..base }).unwrap();
    assert_ne!(other_seed, runs[0]);
}

#[test]
fn csv_round_trip() {
    let out = census::run(&spec(5, 1, 2, Model::OddPPoly, Mode::Random { n: 300, seed: 4 })).unwrap();
    let mut buf = Vec::new();
    census::write_csv(&out.records, &mut buf, true).unwrap();
    assert!(buf.starts_with(b"p,m,g,model,f,a,count\n"));
    let back: Vec<CensusRecord> = census::read_csv(buf.as_slice()).unwrap();
    assert_eq!(back, out.records);
}

#[test]
fn ordinary_fraction_for_p5_and_p7() {
    for p in [5, 7] {
        let out = census::run(&spec(p, 1, 2, Model::OddPPoly, Mode::Random { n: 2000, seed: 5 })).unwrap();
        let ordinary: u64 = out.records.iter().filter(|r| r.f == 2).map(|r| r.count).sum();
        assert!(ordinary as f64 >= 0.5 * out.valid() as f64, "p={p}");
    }
}

#[test]
fn diagnostics_frequencies_sum_to_one() {
    let out = census::run(&spec(3, 1, 2, Model::OddPPoly, Mode::Exhaustive)).unwrap();
    let rows = census::diagnostics(&out.records);
    let total: f64 = rows.iter().map(|r| r.frequency).sum();
    assert!((total - 1.0).abs() < 1e-12);
    for r in rows {
        assert!((r.reference - 3f64.powi(-(2 - r.f as i32))).abs() < 1e-12);
    }
}

#[test]
fn witnesses_reverify() {
    let s = spec(5, 1, 2, Model::OddPPoly, Mode::Random { n: 100_000, seed: 6 });
    for (f, a) in [(2, 0), (1, 1), (0, 1), (0, 2)] {
        match census::search(&s, f, a, census::DEFAULT_BUDGET).unwrap() {
            SearchOutcome::Found(w) => {
                assert_eq!((w.f, w.a), (f, a));
                assert!(w.verify().unwrap());
                assert_eq!(w.coeffs.len(), 6);
                assert_eq!(*w.coeffs.last().unwrap(), 1);
            }
            SearchOutcome::Exhausted { .. } => panic!("({f},{a}) not found"),
        }
    }
}

#[test]
fn search_order_is_reproducible() {
    let s = spec(3, 1, 2, Model::OddPPoly, Mode::Exhaustive);
    let first = census::search(&s, 0, 1, 1000).unwrap();
    let again = census::search(&SampleSpec { jobs: 5, ..s }, 0, 1, 1000).unwrap();
    assert_eq!(first, again);
}

#[test]
fn search_can_run_out_of_budget() {
    let s = spec(5, 1, 2, Model::OddPPoly, Mode::Exhaustive);
    assert_eq!(census::search(&s, 0, 2, 3).unwrap(), SearchOutcome::Exhausted { examined: 3 });
}

#[test]
fn invalid_specs_are_rejected() {
    let bad = [
        spec(2, 1, 2, Model::OddPPoly, Mode::Exhaustive),
        spec(3, 1, 2, Model::As2Poly, Mode::Exhaustive),
        spec(2, 1, 2, Model::As2Gamma1, Mode::Exhaustive),
        SampleSpec { jobs: 0, ..spec(3, 1, 1, Model::OddPPoly, Mode::Exhaustive) },
        spec(7, 1, 8, Model::OddPPoly, Mode::Exhaustive),
    ];
    for s in bad {
        assert!(matches!(census::run(&s), Err(Error::InvalidSpec(_))), "{s:?}");
    }
    let s = spec(5, 1, 2, Model::OddPPoly, Mode::Exhaustive);
    assert!(matches!(census::search(&s, 2, 1, 10), Err(Error::InfeasibleTarget { .. })));
    assert!(matches!(census::search(&s, 3, 0, 10), Err(Error::InfeasibleTarget { .. })));
}
