use quadloci::maxellipse::{area_of, golden_section, max_inscribed_ellipse, stationary_params};
use quadloci::sample::{random_affine, random_quads, stream_rng, QuadKind};
use quadloci::{CentralConic, Quad, SymMat2, TangentFamily, Vec2};
use rand::Rng;

fn p22() -> Quad {
    Quad::from_coords([[0.0, 0.0], [1.0, 0.0], [2.0, 2.0], [0.0, 1.0]]).unwrap()
}

/// Root of `f'` on `[lo, hi]` by bisection on its sign.
fn bisect_derivative<F: Fn(f64) -> f64>(df: F, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if df(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn closed_form_against_independent_searches() {
    let fam = TangentFamily::build(&p22()).unwrap();
    let t_star = (-2.0 + 13.0_f64.sqrt()) / 3.0;
    let closed = stationary_params(&fam);
    assert_eq!(closed.len(), 1);
    assert!((closed[0] - t_star).abs() <= 1e-9);

    // -t^3 - 2t^2 + 3t up to the factor 1/4
    let bis = bisect_derivative(|t| -3.0 * t * t - 4.0 * t + 3.0, 0.0, 1.0);
    assert!((bis - t_star).abs() <= 1e-12);

    let gold = golden_section(|t| fam.det_factored(t), 0.0, 1.0, 1e-12);
    assert!((gold - t_star).abs() <= 1e-7);

    let n = 1_000_000;
    let (mut best_t, mut best) = (0.0, f64::NEG_INFINITY);
    for i in 1..n {
        let t = i as f64 / n as f64;
        let v = fam.det_factored(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    assert!((best_t - t_star).abs() <= 1e-6);
}

#[test]
fn area_examples() {
    let circle = CentralConic::new(Vec2::ZERO, SymMat2::IDENTITY).unwrap();
    assert!((area_of(&circle).unwrap() - std::f64::consts::PI).abs() < 1e-15);
    let e = CentralConic::new(Vec2::new(1.0, -2.0), SymMat2::diag(0.25, 1.0)).unwrap();
    assert!((area_of(&e).unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-14);
    let h = CentralConic::new(Vec2::ZERO, SymMat2::diag(1.0, -1.0)).unwrap();
    assert!(area_of(&h).is_err());
}

#[test]
fn area_matches_monte_carlo() {
    let sol = max_inscribed_ellipse(&p22()).unwrap();
    let k = sol.ellipse;
    let (lo, hi) = (Vec2::new(-0.1, -0.1), Vec2::new(2.1, 2.1));
    let mut rng = stream_rng(42, 0);
    let n = 1_000_000;
    let inside = (0..n)
        .filter(|_| {
            let x = Vec2::new(rng.random_range(lo.x1..hi.x1), rng.random_range(lo.x2..hi.x2));
            k.evaluate(x) <= 0.0
        })
        .count();
    let box_area = (hi.x1 - lo.x1) * (hi.x2 - lo.x2);
    let mc = box_area * inside as f64 / n as f64;
    assert!((mc - sol.area).abs() <= 0.01 * sol.area, "{mc} vs {}", sol.area);
}

#[test]
fn optimum_dominates_the_family() {
    for (i, q) in random_quads(9, 200, QuadKind::StrictlyConvex).into_iter().enumerate() {
        let fam = TangentFamily::build(&q).unwrap();
        let sol = max_inscribed_ellipse(&q).unwrap();
        assert!(sol.t > 0.0 && sol.t < 1.0);
        let mut rng = stream_rng(10, i as u64);
        for _ in 0..1000 {
            let t: f64 = rng.random_range(0.0..1.0);
            let Ok(k) = fam.conic_at(t) else { continue };
            assert!(area_of(&k).unwrap() <= sol.area * (1.0 + 1e-12), "quad {i}, t {t}");
        }
        for (x, (a, b)) in sol.touching_points.iter().zip(q.side_segments()) {
            let s = (*x - a).dot(b - a) / (b - a).norm_sq();
            assert!((-1e-9..=1.0 + 1e-9).contains(&s));
        }
    }
}

#[test]
fn optimum_is_affine_covariant() {
    let quads = random_quads(21, 50, QuadKind::StrictlyConvex);
    for (i, q) in quads.iter().enumerate() {
        let phi = random_affine(&mut stream_rng(22, i as u64));
        let mapped = q.map(&phi).unwrap();
        let a = max_inscribed_ellipse(q).unwrap();
        let b = max_inscribed_ellipse(&mapped).unwrap();
        assert!((a.t - b.t).abs() <= 1e-9, "quad {i}: {a:?} {b:?}");
        let jac = phi.linear().det().abs();
        assert!((b.area - jac * a.area).abs() <= 1e-9 * b.area, "quad {i}");
        assert!(phi.apply(a.center).dist(b.center) <= 1e-9 * mapped.diameter());
    }
}

#[test]
fn trapezoid_in_either_orientation() {
    let upright = Quad::from_coords([[0.0, 0.0], [1.0, 0.0], [1.0, 2.0], [0.0, 1.0]]).unwrap();
    // Same trapezoid listed from another vertex, so the parallel pair is q1q2 || q3q4.
    let turned = upright.rotated(1);
    for q in [upright, turned] {
        let sol = max_inscribed_ellipse(&q).unwrap();
        assert!(sol.center.dist(Vec2::new(0.5, 0.75)) < 1e-12, "{q:?}");
    }
}
