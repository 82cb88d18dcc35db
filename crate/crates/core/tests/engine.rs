use equipart_core::engine::{
    certificate_oracle, classify_points, enumerate_partitions, find_all_equipartitions, has_equipartition, search,
    verify_record, CanonicalPartition, PointSet, SearchOptions,
};
use equipart_core::exact::{Point3, Sign};
use equipart_core::moment::{counterexample_set, MomentParams};
use equipart_core::plant::plant_321;
use equipart_core::solver::SupportTriple;
use equipart_core::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_set(rng: &mut ChaCha8Rng, size: usize) -> PointSet {
    let pts = (0..size)
        .map(|_| {
            Point3::new(
                rng.random_range(0..1 << 20),
                rng.random_range(0..1 << 20),
                rng.random_range(0..1 << 20),
            )
        })
        .collect();
    PointSet::new(pts).unwrap()
}

fn partitions(x: &PointSet) -> Vec<CanonicalPartition> {
    find_all_equipartitions(x)
        .unwrap()
        .into_iter()
        .map(|r| r.partition)
        .collect()
}

fn transformed(x: &PointSet, f: impl Fn([i64; 3]) -> [i64; 3]) -> PointSet {
    PointSet::new(
        x.points()
            .iter()
            .map(|p| Point3::from(f(p.to_i64().unwrap())))
            .collect(),
    )
    .unwrap()
}

#[test]
fn visits_every_support() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let out = search(&random_set(&mut rng, 8), &SearchOptions::default()).unwrap();
    assert_eq!(out.stats.support_triples_321, 1680);
    assert_eq!(out.stats.support_triples_222, 420);
}

#[test]
fn octant_configuration_found() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut pts = Vec::new();
    for label in 0..8 {
        let s = |k: usize| if label >> k & 1 == 1 { -1 } else { 1 };
        pts.push(Point3::new(
            s(0) * (1000 + rng.random_range(0..100)),
            s(1) * (2000 + rng.random_range(0..100)),
            s(2) * (3000 + rng.random_range(0..100)),
        ));
    }
    let x = PointSet::new(pts).unwrap();
    let singletons = CanonicalPartition((0..8).map(|i| vec![i]).collect());
    assert_eq!(partitions(&x), vec![singletons.clone()]);
    assert!(certificate_oracle(&x, 100_000, 1).unwrap().contains(&singletons));
}

#[test]
fn moment_sets_have_none() {
    for step in 1..=3 {
        for count in [8, 16] {
            let x = counterexample_set(&MomentParams::new(2, step, count).unwrap()).unwrap();
            assert!(
                find_all_equipartitions(&x).unwrap().is_empty(),
                "step {step} count {count}"
            );
        }
    }
    let x = counterexample_set(&MomentParams::new(2, 1, 8).unwrap()).unwrap();
    assert!(certificate_oracle(&x, 100_000, 5).unwrap().is_empty());
}

#[test]
fn wrong_size_rejected() {
    let pts: Vec<Point3> = (0..12).map(|i| Point3::new(i, i * i, i * i * i)).collect();
    assert_eq!(PointSet::new(pts), Err(Error::InputSizeError(12)));
}

#[test]
#[should_panic(expected = "at least one trial")]
fn oracle_needs_trials() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let _ = certificate_oracle(&random_set(&mut rng, 8), 0, 0);
}

#[test]
fn coplanar_points_reported() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let x = random_set(&mut rng, 8);
    let mut pts = x.points().to_vec();
    let v: Vec<[i64; 3]> = pts.iter().map(|p| p.to_i64().unwrap()).collect();
    pts[3] = Point3::from(std::array::from_fn(|k| v[1][k] + v[2][k] - v[0][k]));
    let err = find_all_equipartitions(&PointSet::new(pts).unwrap()).unwrap_err();
    assert!(matches!(err, Error::GeneralPositionViolation { .. }), "{err}");
}

#[test]
fn planted_support_has_64_completions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = plant_321(&mut rng);
    let mut pts: Vec<Point3> = p.supports.iter().flatten().cloned().collect();
    pts.push(Point3::new(7_777_777, -3_333_333, 1_234_567));
    pts.push(Point3::new(-5_555_555, 4_444_444, -2_222_222));
    let x = PointSet::new(pts).unwrap();
    let support = SupportTriple::three_two_one([0, 1, 2], [3, 4], 5);
    let m = classify_points(&x, &p.planes, Some(&support)).unwrap();
    for (idx, row) in m.rows().iter().enumerate() {
        for (k, s) in row.iter().enumerate() {
            assert_eq!(*s == Sign::Zero, support.plane_of(idx) == Some(k));
        }
    }
    let parts = enumerate_partitions(&m);
    assert_eq!(parts.len(), 64);
    assert!(parts.iter().all(|q| q.parts().iter().map(Vec::len).sum::<usize>() == 8));
    assert!(classify_points(&x, &p.planes, None).is_err());
}

#[test]
fn records_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for size in [8, 8, 8, 8, 8, 16] {
        let x = random_set(&mut rng, size);
        for r in find_all_equipartitions(&x).unwrap() {
            assert!(!r.certificates.is_empty());
            assert!(verify_record(&x, &r));
        }
    }
}

#[test]
fn oracle_partitions_are_found() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for size in [8, 8, 8, 8, 8, 8, 8, 8, 16] {
        let x = random_set(&mut rng, size);
        let all = partitions(&x);
        for p in certificate_oracle(&x, 20_000, rng.random()).unwrap() {
            assert!(all.contains(&p), "oracle partition {p} missing");
        }
    }
}

#[test]
fn affine_and_symmetry_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let x = random_set(&mut rng, 16);
    let base = partitions(&x);
    assert!(!base.is_empty());
    assert_eq!(partitions(&transformed(&x, |[a, b, c]| [a + 17, b - 400, c + 9])), base);
    assert_eq!(partitions(&transformed(&x, |p| p.map(|c| 3 * c))), base);
    assert_eq!(partitions(&transformed(&x, |[a, b, c]| [c, a, b])), base);
    assert_eq!(partitions(&transformed(&x, |[a, b, c]| [-a, b, c])), base);
}

#[test]
fn point_order_only_relabels() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let x = random_set(&mut rng, 16);
    let mut perm: Vec<usize> = (0..16).collect();
    perm.shuffle(&mut rng);
    let y = PointSet::new(perm.iter().map(|&i| x.points()[i].clone()).collect()).unwrap();
    let mut mapped: Vec<CanonicalPartition> = partitions(&y)
        .into_iter()
        .map(|c| {
            let mut parts: Vec<Vec<usize>> = c
                .parts()
                .iter()
                .map(|p| {
                    let mut q: Vec<usize> = p.iter().map(|&i| perm[i]).collect();
                    q.sort_unstable();
                    q
                })
                .collect();
            parts.sort();
            CanonicalPartition(parts)
        })
        .collect();
    mapped.sort();
    assert_eq!(mapped, partitions(&x));
}

#[test]
fn early_exit_agrees_with_full_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = 0;
    for _ in 0..500 {
        let x = random_set(&mut rng, 8);
        let found = has_equipartition(&x).unwrap();
        assert_eq!(found, !find_all_equipartitions(&x).unwrap().is_empty());
        failures += usize::from(!found);
    }
    assert!(failures < 10);
}

#[test]
fn workers_and_filter_do_not_change_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for size in [8, 8, 8, 16] {
        let x = random_set(&mut rng, size);
        for first_only in [false, true] {
            let base = search(
                &x,
                &SearchOptions {
                    first_only,
                    ..Default::default()
                },
            )
            .unwrap();
            let parallel = search(
                &x,
                &SearchOptions {
                    first_only,
                    workers: 4,
                    ..Default::default()
                },
            )
            .unwrap();
            let exact = search(
                &x,
                &SearchOptions {
                    first_only,
                    float_filter: false,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(base, parallel);
            assert_eq!(base, exact);
        }
    }
}
