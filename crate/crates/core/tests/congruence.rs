use threeform::congruence::*;
use threeform::degeneracy::{build_m, rank_at};
use threeform::exterior::{decompose_bivector, random_tensor};
use threeform::form_analysis::lambda_omega;
use threeform::{catalog, Ambient, AlternatingTensor, FieldSpec, LinearSubspace, Scalar, SpaceContext, Variance};

fn p(v: u64) -> FieldSpec {
    FieldSpec::prime(v).unwrap()
}

/// The point of the line meeting the plane where coordinates `zero` vanish.
fn meets(l: &AlternatingTensor, zero: &[usize]) -> bool {
    let (e, f) = decompose_bivector(l).unwrap();
    let rows: Vec<Vec<Scalar>> = zero.iter().map(|&i| vec![e[i].clone(), f[i].clone()]).collect();
    threeform::Matrix::from_rows(e[0].field(), rows).rank() < 2
}

#[test]
fn membership_examples() {
    let (w, _) = catalog::get("n5").unwrap();
    let c = w.ctx();
    assert!(member_x(&w, &AlternatingTensor::vector(c, &[0, 3])).unwrap());
    assert!(!member_x(&w, &AlternatingTensor::vector(c, &[0, 1])).unwrap());
    let not_a_line = AlternatingTensor::vector(c, &[0, 3]).add(&AlternatingTensor::vector(c, &[1, 4])).unwrap();
    assert!(!member_x(&w, &not_a_line).unwrap());
    assert!(!member_x(&AlternatingTensor::zero(c, 3, Variance::Form), &not_a_line).unwrap());
}

#[test]
fn lines_through_points() {
    let (w, _) = catalog::get_in("n5", p(101)).unwrap();
    let c = w.ctx();
    let generic: Vec<Scalar> = [3, 1, 4, 1, 5, 9].iter().map(|&v| c.scalar(v)).collect();
    assert_eq!(lines_through(&w, &generic).unwrap().star_dim(), 0);
    let mut e3 = vec![c.zero(); 6];
    e3[3] = c.one();
    let star = lines_through(&w, &e3).unwrap();
    assert_eq!(star.star_dim(), 2);
    // The star at e3 sweeps the opposite plane <e0, e1, e2>.
    let plane = LinearSubspace::from_vectors(
        c,
        Ambient::POINTS,
        &(0..3).map(|i| (0..6).map(|j| if i == j { c.one() } else { c.zero() }).collect()).collect::<Vec<_>>(),
    );
    let joined = plane.join(&LinearSubspace::from_vectors(c, Ambient::POINTS, &[e3.clone()])).unwrap();
    assert!(joined.contains(&star.kernel).unwrap());

    let (w6, _) = catalog::get_in("n6-g2", p(101)).unwrap();
    let generic: Vec<Scalar> = [3, 1, 4, 1, 5, 9, 2].iter().map(|&v| w6.ctx().scalar(v)).collect();
    assert_eq!(lines_through(&w6, &generic).unwrap().star_dim(), -1);
}

#[test]
fn order_of_catalog_forms() {
    for (name, expected) in [("n4", 0), ("n7-ozeki", 1), ("n8-family", 0)] {
        let (w, _) = catalog::get_in(name, p(101)).unwrap();
        let o = order(&w, 100, 5).unwrap();
        assert_eq!((o.order, o.agreeing), (expected, 100), "{name}");
    }
    let (w, _) = catalog::get("n5").unwrap();
    assert!(order(&w, 10, 0).is_err());
}

#[test]
fn sampled_lines() {
    let (w, _) = catalog::get_in("n7-ozeki", p(1009)).unwrap();
    let l = sample_line_on_x(&w, 1).unwrap();
    assert!(member_x(&w, &l).unwrap());
    assert_eq!(sample_line_on_x(&w, 1).unwrap(), l);

    let (w, _) = catalog::get_in("n5", p(1009)).unwrap();
    for seed in 0..5 {
        let l = sample_line_on_x(&w, seed).unwrap();
        assert!(meets(&l, &[0, 1, 2]) && meets(&l, &[3, 4, 5]));
    }

    let (w, _) = catalog::get_in("n6-g2", p(1009)).unwrap();
    let m = build_m(&w).unwrap();
    for seed in 0..3 {
        let (e, f) = decompose_bivector(&sample_line_on_x(&w, seed).unwrap()).unwrap();
        for t in 0..10 {
            let pt: Vec<Scalar> = e.iter().zip(&f).map(|(a, b)| a + &(&w.ctx().scalar(t) * b)).collect();
            assert!(rank_at(&m, &pt) <= 4);
        }
    }
}

#[test]
fn tangent_certificates() {
    for (name, expected) in [("n5", 4), ("n7-ozeki", 6), ("n4", 3)] {
        let (w, _) = catalog::get_in(name, p(1009)).unwrap();
        let l = sample_line_on_x(&w, 2).unwrap();
        let cert = tangent_certificate(&w, &l).unwrap();
        assert!(cert.on_x, "{name}");
        assert_eq!(cert.tangent_dim, expected, "{name}");
        assert!(cert.smooth_of_expected_dim, "{name}");
    }
}

#[test]
fn quadrics_through_the_span() {
    for (name, dim) in [("n5", 6), ("n6-g2", 7), ("n7-ozeki", 8)] {
        let (w, _) = catalog::get(name).unwrap();
        let q = quadrics_through_span(&w).unwrap();
        assert_eq!((q.dimension, q.matches_q_omega), (dim, true), "{name}");
    }
}

#[test]
fn recovering_the_form() {
    for (name, dim) in [("n5", 2), ("n6-g2", 1), ("n7-ozeki", 1)] {
        let (w, _) = catalog::get(name).unwrap();
        let rec = recover_forms(&lambda_omega(&w).unwrap()).unwrap();
        assert_eq!(rec.dim(), dim, "{name}");
        assert!(rec.contains_tensor(&w));
    }
    let c = SpaceContext::new(5, FieldSpec::Rational).unwrap();
    let all = recover_forms(&LinearSubspace::zero(c, Ambient::BIVECTORS)).unwrap();
    assert_eq!(all.dim(), 20);
}

#[test]
fn union_decomposition_over_small_fields() {
    let (w, _) = catalog::get_in("n5", p(2)).unwrap();
    let x0 = AlternatingTensor::form(w.ctx(), &[0]);
    let rep = classify_linear_section(&w, &x0).unwrap();
    assert_eq!((rep.neither, rep.overlap_violations), (0, 0));
    assert!(rep.heuristic_small_characteristic);
    assert!(rep.only_x_omega > 0 && rep.only_x_omega_x > 0 && rep.both > 0);

    let within = classify_points_of(&w, &x0, &lambda_omega(&w).unwrap()).unwrap();
    assert_eq!(within.only_x_omega_x + within.neither, 0);
    assert_eq!(within.only_x_omega + within.both, within.grassmannian_points);
}

#[test]
fn random_forms_of_even_dimension_have_order_zero() {
    let c = SpaceContext::new(6, p(101)).unwrap();
    let w = random_tensor(c, 3, Variance::Form, 11).unwrap();
    assert_eq!(order(&w, 50, 0).unwrap().order, 0);
}
