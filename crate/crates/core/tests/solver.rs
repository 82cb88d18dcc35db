use equipart_core::exact::{Point3, QuadExt, Vec3};
use equipart_core::moment::moment_point;
use equipart_core::plant::{plant_222, plant_321};
use equipart_core::solver::{
    planes_222, planes_222_with_aux, planes_321, solver_coefficients, validate_triple, PlaneTriple,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pairs_of(s: &[Vec<Point3>; 3]) -> [[&Point3; 2]; 3] {
    std::array::from_fn(|k| [&s[k][0], &s[k][1]])
}

#[test]
fn planted_321_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let p = plant_321(&mut rng);
        let s = &p.supports;
        let t = planes_321([&s[0][0], &s[0][1], &s[0][2]], [&s[1][0], &s[1][1]], &s[2][0]).unwrap();
        assert!(validate_triple(&t, p.support_refs()));
        assert!(t.same_planes(&p.planes));
    }
}

#[test]
fn planted_222_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let p = plant_222(&mut rng);
        let [a, b, c] = pairs_of(&p.supports);
        let sols = planes_222(a, b, c).unwrap();
        assert!((1..=2).contains(&sols.len()));
        assert!(sols.iter().all(|t| validate_triple(t, p.support_refs())));
        assert!(sols.iter().any(|t| t.same_planes(&p.planes)));
    }
}

fn same_solution_sets(x: &[PlaneTriple], y: &[PlaneTriple]) -> bool {
    x.len() == y.len() && x.iter().all(|t| y.iter().any(|u| t.same_planes(u)))
}

#[test]
fn auxiliary_vectors_do_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let p = plant_222(&mut rng);
        let [a, b, c] = pairs_of(&p.supports);
        let base = planes_222(a, b, c).unwrap();
        let u = Vec3::<BigInt>::from_i64(rng.random_range(-5..5), rng.random_range(-5..5), 1);
        let w = Vec3::<BigInt>::from_i64(1, rng.random_range(-5..5), rng.random_range(-5..5));
        if let Ok(other) = planes_222_with_aux(a, b, c, &u, &w) {
            assert!(same_solution_sets(&base, &other));
        }
    }
}

#[test]
fn roles_can_be_permuted() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..30 {
        let p = plant_222(&mut rng);
        let [a, b, c] = pairs_of(&p.supports);
        let base = planes_222(a, b, c).unwrap();
        let rotated = planes_222(b, c, a).unwrap();
        let swapped = planes_222([a[1], a[0]], b, c).unwrap();
        assert!(same_solution_sets(&base, &swapped));
        assert_eq!(base.len(), rotated.len());
        for t in &rotated {
            let [h2, h3, h1] = t.planes().clone();
            let back = PlaneTriple::new([h1, h2, h3], t.case());
            assert!(base.iter().any(|u| u.same_planes(&back)));
        }
    }
}

#[test]
fn discriminant_is_shared() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..200 {
        let v: [Vec3<BigInt>; 3] = std::array::from_fn(|_| {
            Vec3::<BigInt>::from_i64(
                rng.random_range(-50..50),
                rng.random_range(-50..50),
                rng.random_range(-50..50),
            )
        });
        let a = Vec3::<BigInt>::from_i64(1, 0, 0);
        let b = Vec3::<BigInt>::from_i64(0, 1, 0);
        let av = std::array::from_fn(|i| a.cross(&v[i]));
        let bv = std::array::from_fn(|i| b.cross(&v[i]));
        let co = solver_coefficients(&av, &bv);
        for i in 0..3 {
            let d = &co.r[i] * &co.r[i] - BigInt::from(4) * &co.s[i] * &co.t[i];
            assert_eq!(d, co.q);
        }
    }
}

/// With `u1 ⟂ v1`, the rest of the frame is forced: `u2 ∥ u1 × v2` and
/// `u3 ∥ u1 × u2`. The last incidence `u3 ⟂ v3` then reads
/// `(u1·v2)(u1·v3) = |u1|²(v2·v3)`.
fn dual_route_holds(t: &PlaneTriple, v: &[Vec3<BigInt>; 3]) -> bool {
    let u1 = t.planes()[0].normal();
    let field = u1.x.field().clone();
    let vq: Vec<Vec3<QuadExt>> = v.iter().map(|vi| vi.to_quad(&field)).collect();
    let lhs = &u1.dot(&vq[1]) * &u1.dot(&vq[2]);
    let rhs = &u1.norm_squared() * &vq[1].dot(&vq[2]);
    u1.dot(&vq[0]).is_zero() && (&lhs - &rhs).is_zero()
}

#[test]
fn solutions_satisfy_dual_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let mut checked = 0;
    for _ in 0..200 {
        let pts: Vec<Point3> = (0..6)
            .map(|_| {
                Point3::new(
                    rng.random_range(-40..40),
                    rng.random_range(-40..40),
                    rng.random_range(-40..40),
                )
            })
            .collect();
        let v: [Vec3<BigInt>; 3] = std::array::from_fn(|k| pts[2 * k + 1].to_vec().sub(&pts[2 * k].to_vec()));
        let Ok(sols) = planes_222([&pts[0], &pts[1]], [&pts[2], &pts[3]], [&pts[4], &pts[5]]) else {
            continue;
        };
        for t in &sols {
            assert!(dual_route_holds(t, &v));
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn no_real_solution_on_curve_tail() {
    let p: Vec<Point3> = (2..8).map(moment_point).collect();
    let sols = planes_222([&p[0], &p[1]], [&p[2], &p[3]], [&p[4], &p[5]]).unwrap();
    assert!(sols.is_empty());
}
