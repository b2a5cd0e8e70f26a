//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//! The randomized criteria draw from the deterministic sampler; set
//! `CHLAB_SEED` to vary the corpus.

use chlab::complex3::{angle_dist, CMat3, CVec3};
use chlab::decompose::{
    chart_sample, component_chart, construct_decomposition, decomposability_report,
    deform_to_reducible, irreducible_config, mirror_degeneracy_witness, su_normalized_triple,
    AlphaInterval, Decomposition, DecompositionKind, EllipticTriple,
};
use chlab::figures::{deltoid_csv, deltoid_svg, skeleton_csv, skeleton_svg, trace_curves_csv};
use chlab::hermitian::{herm_inner, HermitianForm, PointType};
use chlab::isometry::{
    angle_pair, goldman_discriminant, omega_dist, su21_lift, AnglePair, IsometryClass,
};
use chlab::momentum::{
    reducible_skeleton, skeleton_membership, spherical_reducible_pair, totally_reducible_vertices,
    SkeletonMembership,
};
use chlab::reflections::{reflection_matrix, MirrorRelation, ReflectionTriple};
use chlab::sampling::{
    random_loxodromic, random_regular_elliptic, random_regular_pair, random_spherical_triangle,
    Rng,
};
use chlab::trace_geometry::{tangent_foot, tangents_through, trace_product, TangentLine};
use chlab::triangle_groups::{
    exotic_chart_45_20, rfuchsian_chart, trace_curve, CurveLevel, PQRSignature,
};
use num_complex::Complex64 as C;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

fn canon() -> HermitianForm {
    HermitianForm::canonical()
}

/// Two-mirror oracle: reflections about explicit polar vectors with the
/// prescribed relation, trace of the matrix product, SU-normalized on the
/// branch fixing the common point / line.
fn matrix_trace_oracle(theta1: f64, theta2: f64, relation: MirrorRelation) -> C {
    let f = canon();
    let c1 = CVec3::from_reals(1.0, 0.0, 0.0);
    let c2 = match relation {
        MirrorRelation::Intersecting(phi) => {
            let r = phi.cos();
            CVec3::from_reals(r, (1.0 - r * r).sqrt(), 0.0)
        }
        MirrorRelation::Ultraparallel(l) => {
            let r = (l / 2.0).cosh();
            CVec3::from_reals(r, 0.0, (r * r - 1.0).sqrt())
        }
    };
    let r1 = reflection_matrix(&c1, C::from_polar(1.0, theta1), &f).unwrap();
    let r2inv = reflection_matrix(&c2, C::from_polar(1.0, -theta2), &f).unwrap();
    (r1 * r2inv).trace() * C::from_polar(1.0, (theta2 - theta1) / 3.0)
}

#[test]
fn acceptance_1_trace_formula_oracle() {
    let start = Instant::now();
    let mut rng = Rng::from_env();
    for case in 0..1000 {
        let t1 = rng.uniform(0.05, TAU - 0.05);
        let t2 = rng.uniform(0.05, TAU - 0.05);
        let relation = if case < 500 {
            MirrorRelation::Intersecting(rng.uniform(0.05, PI / 2.0))
        } else {
            MirrorRelation::Ultraparallel(rng.uniform(0.05, 2.5))
        };
        let formula = trace_product(t1, t2, relation).unwrap();
        let oracle = matrix_trace_oracle(t1, t2, relation);
        assert!(
            omega_dist(formula, oracle) < 1e-9,
            "case {case}: formula {formula} vs oracle {oracle}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("acceptance 1 (trace-formula oracle, 1000 cases, {elapsed:?}): PASS");
}

#[test]
fn acceptance_2_theorem_3_4_equivalence() {
    let mut rng = Rng::from_env();
    // 300 constructed decomposable triples: all three criteria hold
    for case in 0..300 {
        let (r, alpha, thetas) = random_spherical_triangle(&mut rng);
        let etas = [
            C::from_polar(1.0, thetas[0]),
            C::from_polar(1.0, thetas[1]),
            C::from_polar(1.0, thetas[2]),
        ];
        let rt = ReflectionTriple::from_cosines(r, alpha, etas).unwrap();
        let t = su_normalized_triple(&rt, thetas[1] - thetas[0], thetas[2] - thetas[0]).unwrap();
        let cfg = irreducible_config(&t, [PointType::Negative; 3]).unwrap();
        let rep = decomposability_report(&t, &cfg);
        assert!(rep.lambda_ok, "case {case}: (iii) failed, {:?}", rep.cubed);
        assert_eq!(rep.cross_ratio_ok, Some(true), "case {case}: (ii) failed");
        let dec = construct_decomposition(&t, &cfg);
        assert!(dec.is_ok(), "case {case}: (i) failed: {dec:?}");
    }
    // 300 generic triples: all three criteria fail
    let mut done = 0;
    while done < 300 {
        let a = random_regular_elliptic(&mut rng).0;
        let b = random_regular_elliptic(&mut rng).0;
        let t = match EllipticTriple::from_pair(a, b) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let cfg = match irreducible_config(&t, [PointType::Negative; 3]) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let rep = decomposability_report(&t, &cfg);
        assert!(!rep.lambda_ok, "case {done}: (iii) unexpectedly holds");
        assert_eq!(rep.cross_ratio_ok, Some(false), "case {done}: (ii) unexpectedly holds");
        assert!(
            construct_decomposition(&t, &cfg).is_err(),
            "case {done}: (i) unexpectedly succeeds"
        );
        done += 1;
    }
    println!("acceptance 2 (Theorem 3.4 three-way equivalence, 300 + 300): PASS");
}

#[test]
fn acceptance_3_rfuchsian_334_component() {
    let sig = PQRSignature::new(3, 3, 4).unwrap();
    let chart = rfuchsian_chart(&sig).unwrap();
    assert!(chart.beta.abs() < 1e-9 && chart.gamma.abs() < 1e-9);
    assert_eq!(chart.theta_domain.len(), 1);
    let (lo, hi) = chart.theta_domain[0];
    assert!((lo - 2.0 * PI / 3.0).abs() < 1e-9, "lo = {lo}");
    assert!((hi - 4.0 * PI / 3.0).abs() < 1e-9, "hi = {hi}");
    for i in 0..16 {
        let theta = lo + (hi - lo) * (i as f64 + 0.5) / 16.0;
        let g = chart.sin2_phi(theta);
        let s2 = (theta / 2.0).sin().powi(2);
        assert!((g[0] - 3.0 / (4.0 * s2)).abs() < 1e-9);
        assert!((g[2] - 3.0 / (4.0 * s2)).abs() < 1e-9);
        assert!((g[1] - 1.0 / (2.0 * s2)).abs() < 1e-9);
    }
    // 16 x 16 grid of samples
    let mut sampled = 0;
    for i in 0..16 {
        let theta = lo + (hi - lo) * (i as f64 + 0.5) / 16.0;
        let (alo, ahi) = match chart.alpha_interval(theta) {
            AlphaInterval::Arc { lo, hi } => (lo, hi),
            AlphaInterval::Full => (0.0, TAU),
            AlphaInterval::Empty => continue,
        };
        for j in 0..16 {
            let alpha = alo + (ahi - alo) * (j as f64 + 0.5) / 16.0;
            let s = chart_sample(&chart, theta, alpha).unwrap();
            let scalar_dist = |m: &CMat3| -> f64 {
                let s = m.trace() / C::new(3.0, 0.0);
                m.dist(&CMat3::identity().scale(s))
            };
            assert!(scalar_dist(s.triple.a.pow(3).matrix()) < 1e-8);
            assert!(scalar_dist(s.triple.b.pow(3).matrix()) < 1e-8);
            assert!(scalar_dist(s.triple.c.pow(4).matrix()) < 1e-8);
            let abc = s.triple.a.compose(&s.triple.b).compose(&s.triple.c);
            assert!(scalar_dist(abc.matrix()) < 1e-8);
            assert!(omega_dist(s.triple.a.trace(), C::new(0.0, 0.0)) < 1e-8);
            assert!(omega_dist(s.triple.b.trace(), C::new(0.0, 0.0)) < 1e-8);
            assert!(omega_dist(s.triple.c.trace(), C::new(1.0, 0.0)) < 1e-8);
            // chart samples reproduce the defining classes across the grid
            let classes = s.triple.classes().unwrap();
            assert!(classes[0].approx_eq(&chart.classes[0], 1e-8));
            assert!(classes[1].approx_eq(&chart.classes[1], 1e-8));
            assert!(classes[2].approx_eq(&chart.classes[2], 1e-8));
            sampled += 1;
        }
    }
    assert!(sampled >= 16 * 16 / 2, "only {sampled} grid samples admissible");
    println!("acceptance 3 ((3,3,4) R-Fuchsian component, {sampled} samples): PASS");
}

#[test]
fn acceptance_4_exotic_45_20_component() {
    let chart = exotic_chart_45_20().unwrap();
    assert!(angle_dist(chart.beta, -PI / 2.0) < 1e-9, "beta = {}", chart.beta);
    assert!(
        angle_dist(chart.gamma, -21.0 * PI / 10.0) < 1e-9,
        "gamma = {}",
        chart.gamma
    );
    assert_eq!(chart.theta_domain.len(), 1);
    let (lo, hi) = chart.theta_domain[0];
    assert!((lo - PI).abs() < 1e-9, "lo = {lo}");
    assert!((hi - 1.5 * PI).abs() < 1e-9, "hi = {hi}");

    let exact_order = |m: &chlab::isometry::SU21Element, n: u32| {
        let scalar_dist = |m: &CMat3| -> f64 {
            let s = m.trace() / C::new(3.0, 0.0);
            m.dist(&CMat3::identity().scale(s))
        };
        if scalar_dist(m.pow(n).matrix()) > 1e-8 {
            return false;
        }
        (1..n).all(|k| scalar_dist(m.pow(k).matrix()) > 1e-6)
    };

    let mut sampled = 0;
    for i in 0..16 {
        let theta = lo + (hi - lo) * (i as f64 + 0.5) / 16.0;
        let (alo, ahi) = match chart.alpha_interval(theta) {
            AlphaInterval::Arc { lo, hi } => (lo, hi),
            AlphaInterval::Full => (0.0, TAU),
            AlphaInterval::Empty => continue,
        };
        for j in 0..16 {
            let alpha = alo + (ahi - alo) * (j as f64 + 0.5) / 16.0;
            let s = chart_sample(&chart, theta, alpha).unwrap();
            assert!(exact_order(&s.triple.a, 4), "A order != 4 at ({theta}, {alpha})");
            assert!(exact_order(&s.triple.b, 5), "B order != 5 at ({theta}, {alpha})");
            assert!(exact_order(&s.triple.c, 20), "C order != 20 at ({theta}, {alpha})");
            sampled += 1;
        }
    }
    assert!(sampled >= 16 * 16 / 2);

    // the inverse of the C-class lies on the spherical segment of the
    // momentum skeleton for the (A, B) classes
    let c_inv = AnglePair::new(8.0 * PI / 5.0, 3.0 * PI / 10.0).inverse_class();
    let m = skeleton_membership(
        &c_inv,
        &AnglePair::new(1.5 * PI, PI),
        &AnglePair::new(1.2 * PI, 0.4 * PI),
    )
    .unwrap();
    assert_eq!(m, SkeletonMembership::Spherical);
    println!("acceptance 4 ((4,5,20) exotic component, {sampled} samples): PASS");
}

/// Class-level decomposability criterion for the triple
/// `(A, B, (AB)^{-1})`: the cubed product of the negative-type eigenvalues
/// depends only on the angle-pair sums.
fn class_lambda_cubed(c1: &AnglePair, c2: &AnglePair, product_class: &AnglePair) -> C {
    let sum = (c1.alpha1 + c1.alpha2) + (c2.alpha1 + c2.alpha2)
        - (product_class.alpha1 + product_class.alpha2);
    C::from_polar(1.0, -sum)
}

#[test]
fn acceptance_5_skeleton_decomposability() {
    let mut rng = Rng::from_env();
    let one = C::new(1.0, 0.0);
    // 200 class pairs x 20 on-segment points
    for pair_idx in 0..200 {
        let c1 = random_regular_pair(&mut rng);
        let c2 = random_regular_pair(&mut rng);
        for k in 0..20 {
            let s = (k as f64 + 0.5) / 20.0;
            let (_, c3) = match spherical_reducible_pair(&c1, &c2, s) {
                Ok(v) => v,
                Err(_) => continue, // product special elliptic at this s
            };
            if !c3.is_regular() {
                continue;
            }
            let m = skeleton_membership(&c3, &c1, &c2).unwrap();
            assert!(
                m == SkeletonMembership::Spherical || m == SkeletonMembership::Vertex,
                "pair {pair_idx}, s = {s}: membership {m:?}"
            );
            let lam3 = class_lambda_cubed(&c1, &c2, &c3);
            assert!(
                (lam3 - one).norm() < 1e-8,
                "pair {pair_idx}: on-segment class fails the eigenvalue criterion"
            );
        }
    }
    // 200 off-skeleton classes: both sides reject
    let mut done = 0;
    while done < 200 {
        let c1 = random_regular_pair(&mut rng);
        let c2 = random_regular_pair(&mut rng);
        let c3 = random_regular_pair(&mut rng);
        if skeleton_membership(&c3, &c1, &c2).unwrap() != SkeletonMembership::NotOnSkeleton {
            continue;
        }
        let lam3 = class_lambda_cubed(&c1, &c2, &c3);
        assert!(
            (lam3 - one).norm() > 1e-7,
            "off-skeleton class passes the eigenvalue criterion"
        );
        done += 1;
    }
    // matrix-level agreement on a subsample: build irreducible
    // representatives in the fiber through the chart and run the full test
    let mut full_checks = 0;
    let mut attempts = 0;
    while full_checks < 10 && attempts < 400 {
        attempts += 1;
        let c1 = random_regular_pair(&mut rng);
        let c2 = random_regular_pair(&mut rng);
        let s = rng.uniform(0.1, 0.9);
        let (_, c3) = match spherical_reducible_pair(&c1, &c2, s) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if !c3.is_regular() {
            continue;
        }
        let chart = match component_chart(
            &c1,
            &c2,
            &c3.inverse_class(),
            [PointType::Negative; 3],
        ) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let theta = match chart.theta_domain.first() {
            Some((lo, hi)) => 0.5 * (lo + hi),
            None => continue,
        };
        let alpha = match chart.alpha_interval(theta).midpoint() {
            Some(a) => a,
            None => continue,
        };
        let sample = match chart_sample(&chart, theta, alpha) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let cfg = irreducible_config(&sample.triple, [PointType::Negative; 3]).unwrap();
        let rep = decomposability_report(&sample.triple, &cfg);
        assert!(rep.lambda_ok && rep.cross_ratio_ok == Some(true));
        assert!(construct_decomposition(&sample.triple, &cfg).is_ok());
        full_checks += 1;
    }
    assert!(full_checks >= 5, "too few full fiber checks ({full_checks})");
    println!(
        "acceptance 5 (skeleton <-> decomposability, 200x20 + 200, {full_checks} matrix-level): PASS"
    );
}

#[test]
fn acceptance_6_tangent_geometry() {
    let mut rng = Rng::from_env();
    // 500 interior points: sums and residuals
    let mut done = 0;
    while done < 500 {
        let pair = random_regular_pair(&mut rng);
        let m = chlab::isometry::elliptic_from_angle_pair(&pair);
        let z = m.trace();
        if goldman_discriminant(z) >= -1e-6 {
            continue;
        }
        let lines = tangents_through(z).unwrap();
        let sum: f64 = lines.iter().map(|l| l.foot_theta).sum();
        assert!(angle_dist(sum, 0.0) < 1e-9, "sum of parameters {sum}");
        for l in &lines {
            assert!(l.residual(z) < 1e-9, "point off its tangent line");
        }
        done += 1;
    }
    // feet of random reflection products: the trace lies on the tangent
    // line at 2 lambda + lambda^{-2} for lambda = e^{i (t2 - t1)/3}
    for _ in 0..200 {
        let t1 = rng.uniform(0.05, TAU - 0.05);
        let t2 = rng.uniform(0.05, TAU - 0.05);
        let phi = rng.uniform(0.05, PI / 2.0);
        let z = trace_product(t1, t2, MirrorRelation::Intersecting(phi)).unwrap();
        let lambda = C::from_polar(1.0, (t2 - t1) / 3.0);
        let foot = tangent_foot(lambda).unwrap();
        let line = TangentLine::at((t2 - t1) / 3.0);
        assert!((line.foot - foot).norm() < 1e-12);
        assert!(line.residual(z) < 1e-9);
    }
    println!("acceptance 6 (tangent geometry, 500 + 200): PASS");
}

#[test]
fn acceptance_7_deltoid_classification() {
    let mut rng = Rng::from_env();
    for case in 0..500 {
        let (m, _) = random_regular_elliptic(&mut rng);
        assert_eq!(
            m.classify(),
            IsometryClass::RegularElliptic,
            "elliptic case {case} misclassified"
        );
    }
    for case in 0..500 {
        let (m, eigs) = random_loxodromic(&mut rng);
        assert_eq!(
            m.classify(),
            IsometryClass::Loxodromic,
            "loxodromic case {case} misclassified (eigs {eigs:?})"
        );
    }
    println!("acceptance 7 (deltoid classification, 1000 lifts): PASS");
}

#[test]
fn acceptance_8_deformation_lemmas() {
    // spherical: a (3,3,4) chart point deformed to concurrent mirrors
    let sig = PQRSignature::new(3, 3, 4).unwrap();
    let chart = rfuchsian_chart(&sig).unwrap();
    let s = chart_sample(&chart, PI, 0.8 * PI).unwrap();
    let path = deform_to_reducible(&s.triple, &s.decomposition, 16).unwrap();
    assert_eq!(path.len(), 17);
    let classes0 = path[0].triple.classes().unwrap();
    for step in &path {
        for (c0, c1) in classes0.iter().zip(step.triple.classes().unwrap().iter()) {
            assert!(c0.approx_eq(c1, 1e-8), "class drift along the path");
        }
    }
    let end = path.last().unwrap();
    assert!(
        mirror_degeneracy_witness(&end.reflection_triple) < 1e-6,
        "spherical endpoint witness"
    );
    // the endpoint's pairwise mirror intersection points coincide
    let f = canon();
    let pts: Vec<CVec3> = [(0, 1), (1, 2), (2, 0)]
        .iter()
        .map(|(i, j)| {
            chlab::hermitian::polar_of_pair(
                &end.reflection_triple.polars[*i],
                &end.reflection_triple.polars[*j],
                &f,
            )
        })
        .collect();
    for i in 0..3 {
        let d = chlab::hermitian::hyperbolic_distance(&pts[i], &pts[(i + 1) % 3], &f).unwrap();
        assert!(d < 1e-6, "intersection points spread {d}");
    }

    // hyperbolic: ultraparallel mirrors deformed to a common orthogonal line
    let ths = [0.1, 5.7, 2.9];
    let etas = [
        C::from_polar(1.0, ths[0]),
        C::from_polar(1.0, ths[1]),
        C::from_polar(1.0, ths[2]),
    ];
    let r = [(0.3f64).cosh(); 3];
    let rt = ReflectionTriple::from_cosines(r, PI, etas).unwrap();
    let t = su_normalized_triple(&rt, ths[1] - ths[0], ths[2] - ths[0]).unwrap();
    let dec = Decomposition {
        reflections: rt.reflections().unwrap(),
        kind: DecompositionKind::Hyperbolic,
    };
    let path = deform_to_reducible(&t, &dec, 16).unwrap();
    let classes0 = path[0].triple.classes().unwrap();
    for step in &path {
        for (c0, c1) in classes0.iter().zip(step.triple.classes().unwrap().iter()) {
            assert!(c0.approx_eq(c1, 1e-8), "class drift along the path");
        }
    }
    let end = path.last().unwrap();
    assert!(
        mirror_degeneracy_witness(&end.reflection_triple) < 1e-6,
        "hyperbolic endpoint witness"
    );
    println!("acceptance 8 (deformation to reducible, 2 x 17 samples): PASS");
}

#[test]
fn acceptance_9_figure_reproduction() {
    let start = Instant::now();
    let fig3 = (
        AnglePair::new(1.5 * PI, PI),
        AnglePair::new(1.2 * PI, 0.4 * PI),
    );
    let fig4 = (
        AnglePair::new(1.6 * PI, 1.2 * PI),
        AnglePair::new(PI, 0.5 * PI),
    );
    for (name, (c1, c2)) in [("fig3", fig3), ("fig4", fig4)] {
        let sk = reducible_skeleton(&c1, &c2, 512).unwrap();
        let csv = skeleton_csv(&sk);
        let svg = skeleton_svg(&sk);
        assert_eq!(csv, skeleton_csv(&sk), "{name} CSV must be deterministic");
        assert_eq!(svg, skeleton_svg(&sk), "{name} SVG must be deterministic");
        // vertices in the CSV match totally_reducible_vertices to 1e-9
        let vertices = totally_reducible_vertices(&c1, &c2).unwrap();
        let mut found = 0;
        for line in csv.lines().skip(1) {
            let cells: Vec<&str> = line.split(',').collect();
            if cells[0] == "vertex" {
                let x: f64 = cells[2].parse().unwrap();
                let y: f64 = cells[3].parse().unwrap();
                assert!(vertices
                    .iter()
                    .any(|v| (v.x - x).abs() < 1e-9 && (v.y - y).abs() < 1e-9));
                found += 1;
            }
        }
        assert_eq!(found, 2, "{name}: expected two vertices in the CSV");
        // radians round-trip through the CSV
        for line in csv.lines().skip(1).take(50) {
            let cells: Vec<&str> = line.split(',').collect();
            let x: f64 = cells[2].parse().unwrap();
            assert_eq!(format!("{x}"), cells[2]);
        }
    }

    // deltoid and tangent figures
    let csv = deltoid_csv(1024);
    assert_eq!(csv, deltoid_csv(1024));
    let svg = deltoid_svg(1024, Some(C::new(0.4, 0.3)));
    assert_eq!(svg, deltoid_svg(1024, Some(C::new(0.4, 0.3))));
    assert!(svg.matches("<polyline").count() >= 4); // curve + three tangents

    // trace-curve families for the two built-in charts
    let sig = PQRSignature::new(3, 3, 4).unwrap();
    let chart334 = rfuchsian_chart(&sig).unwrap();
    let chart4520 = exotic_chart_45_20().unwrap();
    let mut curves = Vec::new();
    for k in 0..5 {
        let theta = 2.0 * PI / 3.0 + (2.0 * PI / 3.0) * (k as f64 + 0.5) / 5.0;
        if let Ok(c) = trace_curve(&chart334, CurveLevel::Theta(theta), 24) {
            curves.push((format!("334_theta_{k}"), c));
        }
        if let Ok(c) = trace_curve(&chart334, CurveLevel::Alpha(PI - 0.4 + 0.2 * k as f64), 24) {
            curves.push((format!("334_alpha_{k}"), c));
        }
        let theta = PI + 0.5 * PI * (k as f64 + 0.5) / 5.0;
        if let Ok(c) = trace_curve(&chart4520, CurveLevel::Theta(theta), 24) {
            curves.push((format!("4520_theta_{k}"), c));
        }
    }
    assert!(curves.len() >= 12, "only {} curves produced", curves.len());
    let csv = trace_curves_csv(&curves);
    assert_eq!(csv, trace_curves_csv(&curves));
    assert!(csv.lines().count() > 200);

    // a fixed-alpha boundary curve collapses to the reducible point:
    // all samples share one trace value
    let (lo, hi) = chart334.theta_domain[0];
    let theta = 0.5 * (lo + hi);
    if let AlphaInterval::Arc { lo: alo, .. } = chart334.alpha_interval(theta) {
        let eps = 1e-8;
        let s1 = chart_sample(&chart334, theta, alo + eps).unwrap();
        let s2 = chart_sample(&chart334, theta - 0.2, {
            match chart334.alpha_interval(theta - 0.2) {
                AlphaInterval::Arc { lo, .. } => lo + eps,
                _ => alo + eps,
            }
        })
        .unwrap();
        let t1 = s1.triple.a.inverse().compose(&s1.triple.b).trace();
        let t2 = s2.triple.a.inverse().compose(&s2.triple.b).trace();
        assert!(
            omega_dist(t1, t2) < 1e-3,
            "boundary samples should share the reducible trace: {t1} vs {t2}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0);
    println!("acceptance 9 (figure reproduction, {elapsed:?}): PASS");
}

/// The invariants bundle: conjugation invariance of classification and
/// angle pairs, the characteristic polynomial identity, and the negative
/// eigenvalue of reflection products.
#[test]
fn acceptance_invariants_bundle() {
    let mut rng = Rng::from_env();
    let f = canon();
    // classify and angle_pair are conjugation invariant
    for _ in 0..500 {
        let (m, pair) = random_regular_elliptic(&mut rng);
        let p = chlab::sampling::random_su21(&mut rng);
        let mc = m.conjugate_by(&p);
        assert_eq!(mc.classify(), IsometryClass::RegularElliptic);
        let q = angle_pair(&mc).unwrap();
        assert!(pair.approx_eq(&q, 1e-9), "{pair:?} vs {q:?}");
    }
    // characteristic polynomial of SU(2,1) elements
    for _ in 0..50 {
        let m = chlab::sampling::random_su21(&mut rng);
        let es = m.eigen().unwrap();
        let tr = m.trace();
        for _ in 0..10 {
            let z = C::from_polar(rng.uniform(0.3, 2.0), rng.angle());
            let direct = (z - es.values()[0]) * (z - es.values()[1]) * (z - es.values()[2]);
            let formula = z * z * z - tr * z * z + tr.conj() * z - C::new(1.0, 0.0);
            assert!((direct - formula).norm() < 1e-9 * (1.0 + z.norm().powi(3)));
        }
    }
    // negative-type eigenvalue of products of intersecting-mirror
    // reflections is e^{i (t2 - t1)/3} up to omega
    for _ in 0..200 {
        let t1 = rng.uniform(0.1, TAU - 0.1);
        let t2 = rng.uniform(0.1, TAU - 0.1);
        let phi = rng.uniform(0.2, PI / 2.0 - 0.02);
        let c1 = CVec3::from_reals(1.0, 0.0, 0.0);
        let rr = phi.cos();
        let c2 = CVec3::from_reals(rr, (1.0 - rr * rr).sqrt(), 0.0);
        let r1 = reflection_matrix(&c1, C::from_polar(1.0, t1), &f).unwrap();
        let r2inv = reflection_matrix(&c2, C::from_polar(1.0, -t2), &f).unwrap();
        let lifts = su21_lift(&(r1 * r2inv), &f).unwrap();
        let m = lifts[0];
        if m.classify() != IsometryClass::RegularElliptic {
            continue;
        }
        let lam = chlab::isometry::negative_type_eigenvalue(&m).unwrap();
        assert!(
            omega_dist(lam, C::from_polar(1.0, (t2 - t1) / 3.0)) < 1e-9,
            "negative eigenvalue branch"
        );
    }
    // box product orthogonality and inner-product symmetry on random data
    for _ in 0..200 {
        let u = CVec3::new(
            C::from_polar(rng.uniform(0.1, 2.0), rng.angle()),
            C::from_polar(rng.uniform(0.1, 2.0), rng.angle()),
            C::from_polar(rng.uniform(0.1, 2.0), rng.angle()),
        );
        let v = CVec3::new(
            C::from_polar(rng.uniform(0.1, 2.0), rng.angle()),
            C::from_polar(rng.uniform(0.1, 2.0), rng.angle()),
            C::from_polar(rng.uniform(0.1, 2.0), rng.angle()),
        );
        let b = chlab::hermitian::box_product(&u, &v);
        let scale = u.norm() * v.norm();
        assert!(herm_inner(&b, &u, &f).norm() < 1e-12 * scale * u.norm().max(1.0) * 10.0);
        assert!(herm_inner(&b, &v, &f).norm() < 1e-12 * scale * v.norm().max(1.0) * 10.0);
        let lhs = herm_inner(&u, &v, &f);
        let rhs = herm_inner(&v, &u, &f).conj();
        assert!((lhs - rhs).norm() < 1e-12 * scale.max(1.0));
    }
    println!("acceptance invariants (conjugation, char poly, eigen branch): PASS");
}
