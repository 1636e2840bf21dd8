use super::*;
use crate::geom::{hausdorff_distance, RankTracker};
use crate::measures::area_measure;
use crate::random::{random_polytope, rng_for};
use crate::scalar::Rat;
use crate::solver::solve_minkowski;

fn rv(coords: &[i64]) -> Vector<Rat> {
    coords.iter().map(|&c| Rat::from_int(c)).collect()
}

fn unit_square() -> Polytope<Rat> {
    Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])])
}

fn triangle() -> Polytope<Rat> {
    Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1])])
}

fn unit_cube() -> Polytope<Rat> {
    let mut pts = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                pts.push(rv(&[x, y, z]));
            }
        }
    }
    Polytope::from_vertices(pts)
}

fn octahedron() -> Polytope<Rat> {
    Polytope::from_vertices(vec![
        rv(&[1, 0, 0]),
        rv(&[-1, 0, 0]),
        rv(&[0, 1, 0]),
        rv(&[0, -1, 0]),
        rv(&[0, 0, 1]),
        rv(&[0, 0, -1]),
    ])
}

#[test]
fn homothety_detector_positive_and_negative() {
    let k = triangle();
    let l = k.scale_translate(&Rat::from_int(3), &rv(&[5, -7])).unwrap();
    let hit = detect_homothety(&k, &l).unwrap();
    let (lambda, t) = hit.expect("dilate must be detected");
    assert!((lambda - 3.0).abs() < 1e-9);
    assert!((t[0] - 5.0).abs() < 1e-9 && (t[1] + 7.0).abs() < 1e-9);
    assert!(detect_homothety(&k, &unit_square()).unwrap().is_none());
    // Same normal fan but different shape must be rejected.
    let stretched = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[4, 0]), rv(&[0, 1]), rv(&[4, 1])]);
    assert!(detect_homothety(&unit_square(), &stretched).unwrap().is_none());
}

#[test]
fn brunn_minkowski_cases() {
    let k = unit_square();
    let self_report = check_brunn_minkowski(&k, &k).unwrap();
    assert!(self_report.pass && self_report.equality);

    let strict = check_brunn_minkowski(&k, &triangle()).unwrap();
    assert!(strict.pass && !strict.equality && strict.slack > 0.0);

    let dilate = k.scale_translate(&Rat::from_int(2), &rv(&[3, 1])).unwrap();
    let homothetic = check_brunn_minkowski(&k, &dilate).unwrap();
    assert!(homothetic.pass && homothetic.equality);
    assert_eq!(homothetic.witnesses["homothetic"], serde_json::Value::Bool(true));
}

#[test]
fn kneser_suss_cases() {
    let opts = SolverOptions::default();
    let c = unit_cube();
    let self_report = check_kneser_suss(&c, &c, &opts).unwrap();
    assert!(self_report.pass && self_report.equality);

    let strict = check_kneser_suss(&c, &octahedron(), &opts).unwrap();
    assert!(strict.pass && !strict.equality && strict.slack > 0.0);

    // In the plane the Blaschke sum is the Minkowski sum, so the check
    // reduces to Brunn-Minkowski (with the (n-1)/n exponent).
    let sq = unit_square();
    let tr = triangle();
    let plane = check_kneser_suss(&sq, &tr, &opts).unwrap();
    assert!(plane.pass && !plane.equality);
    let s = sq.minkowski_sum(&tr).unwrap();
    let expect = s.volume().to_f64().powf(0.5);
    assert!((plane.lhs - expect).abs() < 1e-6 * expect);
}

#[test]
fn diskant_cases() {
    let k = unit_square();
    let self_report = check_diskant_bound(&k, &k).unwrap();
    assert!(self_report.pass);
    assert!((self_report.lhs - 1.0).abs() < 1e-12);
    assert!((self_report.rhs - 0.5).abs() < 1e-12);

    let double = k.scale_translate(&Rat::from_int(2), &rv(&[0, 0])).unwrap();
    let r2 = check_diskant_bound(&double, &k).unwrap();
    assert!((r2.lhs - 2.0).abs() < 1e-12);
    assert!((r2.rhs - 1.0).abs() < 1e-12);

    for i in 0..10 {
        let a: Polytope<f64> = random_polytope(&mut rng_for(31, "diskant", i), 2, 6);
        let b: Polytope<f64> = random_polytope(&mut rng_for(31, "diskant", i + 50), 2, 6);
        assert!(check_diskant_bound(&a, &b).unwrap().pass, "instance {i}");
    }
}

#[test]
fn morse_box_example() {
    // K = [0,3]^2, L = [0,1]^2: rhs = 9 - 2*3 = 3, difference class is
    // a 2x2 box, lhs = 4.
    let k = unit_square().scale_translate(&Rat::from_int(3), &rv(&[0, 0])).unwrap();
    let l = unit_square();
    let r = check_morse(&k, &l).unwrap();
    assert!(r.pass);
    assert!((r.rhs - 3.0).abs() < 1e-12, "rhs {}", r.rhs);
    assert!((r.lhs - 4.0).abs() < 1e-9, "lhs {}", r.lhs);
    assert_eq!(r.witnesses["positivity_witnessed"], serde_json::Value::Bool(true));
}

#[test]
fn morse_vacuous_cases() {
    let k = unit_square();
    let r = check_morse(&k, &k).unwrap();
    assert!(r.pass);
    assert!(r.rhs < 0.0);
    assert_eq!(r.witnesses["vacuous"], serde_json::Value::Bool(true));

    let big_triangle = triangle().scale_translate(&Rat::from_int(5), &rv(&[0, 0])).unwrap();
    let r2 = check_morse(&k, &big_triangle).unwrap();
    assert!(r2.pass && r2.rhs < 0.0);
}

#[test]
fn reverse_kt_cases() {
    let k = unit_square();
    let r = check_reverse_kt(&k, &k, &k, 1).unwrap();
    assert!(r.pass);
    // vol(L)^2 >= (1/2) vol(L)^2 with strict factor.
    assert!(r.slack > 0.0);

    // Proposition-style rearrangement on boxes, n = 2, k = 1:
    // 2 V(B, A) V(A, C) >= vol(A) V(B, C) with closed-form values.
    let a = unit_square();
    let b = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[3, 0]), rv(&[0, 2]), rv(&[3, 2])]);
    let c = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 4]), rv(&[1, 4])]);
    let r2 = check_reverse_kt(&b, &a, &c, 1).unwrap();
    assert!(r2.pass);
    let v_ba = (3.0 + 2.0) / 2.0;
    let v_ac = (4.0 + 1.0) / 2.0;
    let v_bc = (3.0 * 4.0 + 2.0 * 1.0) / 2.0;
    assert!((r2.lhs - v_ba * v_ac).abs() < 1e-12);
    assert!((r2.rhs - 0.5 * 1.0 * v_bc).abs() < 1e-12);

    for i in 0..10 {
        let x: Polytope<f64> = random_polytope(&mut rng_for(33, "rkt", i), 3, 6);
        let y: Polytope<f64> = random_polytope(&mut rng_for(33, "rkt", i + 50), 3, 6);
        let z: Polytope<f64> = random_polytope(&mut rng_for(33, "rkt", i + 100), 3, 6);
        for k_pow in 1..3 {
            assert!(check_reverse_kt(&x, &y, &z, k_pow).unwrap().pass, "i {i} k {k_pow}");
        }
    }
}

#[test]
fn reverse_kt_factor_is_not_slack() {
    // Thin crossed boxes drive the ratio to 1, so no uniform factor 1.5x
    // can be inserted.
    let mut violated = false;
    for i in 1..10 {
        let eps = i as f64 / 100.0;
        let denom = 100i64;
        let e = (eps * denom as f64) as i64;
        let k = Polytope::from_vertices(vec![
            rv(&[0, 0]),
            vec![Rat::from_int(1), Rat::zero()],
            vec![Rat::zero(), Rat::new(e, denom)],
            vec![Rat::from_int(1), Rat::new(e, denom)],
        ]);
        let m = Polytope::from_vertices(vec![
            rv(&[0, 0]),
            vec![Rat::new(e, denom), Rat::zero()],
            vec![Rat::zero(), Rat::from_int(1)],
            vec![Rat::new(e, denom), Rat::from_int(1)],
        ]);
        let l = unit_square();
        let r = check_reverse_kt(&k, &l, &m, 1).unwrap();
        assert!(r.pass);
        if r.lhs < 1.5 * r.rhs {
            violated = true;
        }
    }
    assert!(violated, "factor 1.5 never violated on the thin-box family");
}

#[test]
fn loomis_whitney_cases() {
    let cube = unit_cube();
    let r = check_loomis_whitney(&cube).unwrap();
    assert!(r.pass && r.equality);
    assert_eq!(r.witnesses["axis_box"], serde_json::Value::Bool(true));

    let tr = triangle();
    let r2 = check_loomis_whitney(&tr).unwrap();
    // (1/2)^1 <= 1 * 1 strictly.
    assert!(r2.pass && !r2.equality && r2.slack > 0.0);

    for i in 0..10 {
        let p: Polytope<f64> = random_polytope(&mut rng_for(35, "lw", i), 3, 7);
        assert!(check_loomis_whitney(&p).unwrap().pass, "instance {i}");
    }
}

#[test]
fn box_bound_cases() {
    let b = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[2, 0]), rv(&[0, 5]), rv(&[2, 5])]);
    let r = check_box_bound(&b).unwrap();
    assert!(r.pass && r.equality);

    let diamond =
        Polytope::from_vertices(vec![rv(&[1, 0]), rv(&[-1, 0]), rv(&[0, 1]), rv(&[0, -1])]);
    let r2 = check_box_bound(&diamond).unwrap();
    assert!(r2.pass && !r2.equality);
    assert!((r2.lhs - 4.0).abs() < 1e-12 && (r2.rhs - 2.0).abs() < 1e-12);

    for i in 0..10 {
        let p: Polytope<f64> = random_polytope(&mut rng_for(37, "bb", i), 3, 7);
        assert!(check_box_bound(&p).unwrap().pass, "instance {i}");
    }
}

#[test]
fn mixed_body_volume_cases() {
    let opts = SolverOptions::default();
    let c = unit_cube();
    let r = check_mixed_body_volume(&[&c, &c], &opts).unwrap();
    assert!(r.pass && r.equality);

    let dilated = c.scale_translate(&Rat::from_int(2), &rv(&[1, 1, 1])).unwrap();
    let r2 = check_mixed_body_volume(&[&c, &dilated], &opts).unwrap();
    assert!(r2.pass && r2.equality, "{r2:?}");

    let r3 = check_mixed_body_volume(&[&c, &octahedron()], &opts).unwrap();
    assert!(r3.pass && !r3.equality && r3.slack > 0.0);
}

#[test]
fn improved_bm_cases() {
    let opts = SolverOptions::default();
    let c = unit_cube();
    let r = check_improved_bm(&c, &c, &opts).unwrap();
    assert!(r.pass && r.equality, "{r:?}");
    let second = r.witnesses["second_slack"].as_f64().unwrap();
    assert!(second.abs() <= EQUALITY_SOLVER * r.rhs.max(1.0));

    let dilated = c.scale_translate(&Rat::from_int(3), &rv(&[0, 2, 0])).unwrap();
    let rh = check_improved_bm(&c, &dilated, &opts).unwrap();
    assert!(rh.pass && rh.equality, "{rh:?}");

    let ro = check_improved_bm(&c, &octahedron(), &opts).unwrap();
    assert!(ro.pass && !ro.equality && ro.slack > 0.0, "{ro:?}");
    assert!(ro.witnesses["second_slack"].as_f64().unwrap() > 0.0);

    // In the plane, the middle term collapses onto the right end: both ends
    // of the chain still hold, with the first inequality strict.
    let sq = unit_square();
    let tr = triangle();
    let rp = check_improved_bm(&sq, &tr, &opts).unwrap();
    assert!(rp.pass && !rp.equality && rp.slack > 0.0, "{rp:?}");
    assert!(rp.witnesses["second_slack"].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn log_concavity_cases() {
    let opts = SolverOptions::default();
    let c = unit_cube();
    let dilated = c.scale_translate(&Rat::from_int(2), &rv(&[0, 0, 0])).unwrap();
    let r = check_log_concavity(&c, &dilated, &opts).unwrap();
    assert!(r.pass && r.equality, "{r:?}");
    // Endpoints of the sequence are vol(K) and vol(L).
    let seq: Vec<f64> =
        r.witnesses["sequence"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert!((seq[0] - 1.0).abs() < 1e-6);
    assert!((seq[2] - 8.0).abs() < 2e-5 * 8.0);

    let r2 = check_log_concavity(&c, &octahedron(), &opts).unwrap();
    assert!(r2.pass && !r2.equality, "{r2:?}");

    let sq = unit_square();
    assert!(check_log_concavity(&sq, &sq, &opts).is_err(), "n = 2 must be rejected");
}

#[test]
fn mixed_volume_linearity_cases() {
    let k = unit_square();
    let l1 = triangle();
    let l2 = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[2, 1]), rv(&[1, 2]), rv(&[2, 2])]);
    let r = check_mixed_volume_linearity(&k, &l1, &l2).unwrap();
    assert!(r.pass && r.equality);
    assert_eq!(r.witnesses["exact_equal"], serde_json::Value::Bool(true));

    // Adding a point translates: additivity against a point is exact too.
    let point = Polytope::from_vertices(vec![rv(&[4, -1])]);
    let r2 = check_mixed_volume_linearity(&k, &l1, &point).unwrap();
    assert!(r2.pass && r2.witnesses["exact_equal"] == serde_json::Value::Bool(true));

    for i in 0..5 {
        let a: Polytope<Rat> = random_polytope(&mut rng_for(39, "lin", i), 3, 6);
        let b: Polytope<Rat> = random_polytope(&mut rng_for(39, "lin", i + 50), 3, 6);
        let c: Polytope<Rat> = random_polytope(&mut rng_for(39, "lin", i + 100), 3, 6);
        let rr = check_mixed_volume_linearity(&a, &b, &c).unwrap();
        assert!(rr.witnesses["exact_equal"] == serde_json::Value::Bool(true), "instance {i}");
    }
}

#[test]
fn triangles_are_indecomposable() {
    // Any support-number split of a triangle produces homothetic summands
    // that recompose exactly, and the centroid-zero cone over its three
    // normals is one-dimensional, so Blaschke splits are proportional too.
    let t = Polytope::from_vertices(vec![rv(&[0, 0]), rv(&[2, 0]), rv(&[0, 2])]);
    let facets = t.facets().unwrap();
    let h: Vec<Rat> = facets.iter().map(|f| f.support.clone()).collect();

    let mut rng = rng_for(41, "indecomp", 0);
    for _ in 0..10 {
        use rand::Rng;
        let s_num = rng.gen_range(1..99i64);
        let s = Rat::new(s_num, 100);
        let m_vals: Vec<Rat> = h.iter().map(|x| x.clone() * s.clone()).collect();
        let d_vals: Vec<Rat> =
            h.iter().zip(&m_vals).map(|(x, m)| x.clone() - m.clone()).collect();
        let sys_m = crate::geom::HalfspaceSystem::new(
            2,
            facets.iter().map(|f| f.area_vector.clone()).zip(m_vals).collect(),
        );
        let sys_d = crate::geom::HalfspaceSystem::new(
            2,
            facets.iter().map(|f| f.area_vector.clone()).zip(d_vals).collect(),
        );
        let m_body = crate::geom::halfspace_intersection(&sys_m).unwrap();
        let d_body = crate::geom::halfspace_intersection(&sys_d).unwrap();
        assert!(detect_homothety(&t, &m_body).unwrap().is_some());
        assert!(detect_homothety(&t, &d_body).unwrap().is_some());
        let sum = m_body.minkowski_sum(&d_body).unwrap();
        assert_eq!(sum.volume(), t.volume());
    }

    // Centroid-zero weights over the triangle's normals form a ray.
    let mut tracker = RankTracker::<Rat>::new();
    for f in &facets {
        tracker.try_extend(f.area_vector.clone());
    }
    assert_eq!(tracker.rank(), 2, "normals span the plane");
    // Kernel dimension of the 2x3 centroid map is 1: the area-vector ray.

    // Blaschke splits of the triangle's measure solve to homothets.
    let measure = area_measure(&t).unwrap();
    let half = measure.scale(&Rat::new(1, 3));
    let (body, _) = solve_minkowski(&half, &SolverOptions::default()).unwrap();
    let expect = t
        .map_scalar::<f64>()
        .scale_translate(&(1.0f64 / 3.0), &vec![0.0, 0.0])
        .unwrap()
        .centered();
    let d = hausdorff_distance(&body, &expect).unwrap();
    assert!(d <= 1e-6 * expect.diameter_f64());
}
