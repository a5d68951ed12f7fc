use threeform::congruence::sample_line_on_x;
use threeform::degeneracy::*;
use threeform::exterior::decompose_bivector;
use threeform::poly::{poly_gcd_all, UniPoly};
use threeform::verify::random_gc2_form;
use threeform::{catalog, AlternatingTensor, FieldSpec, Scalar};

fn p(v: u64) -> FieldSpec {
    FieldSpec::prime(v).unwrap()
}

fn point(field: FieldSpec, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&c| Scalar::from_i64(field, c)).collect()
}

#[test]
fn m_omega_examples() {
    let (w, _) = catalog::get("n5").unwrap();
    let m = build_m(&w).unwrap();
    let at_e0 = m.eval(&point(FieldSpec::Rational, &[1, 0, 0, 0, 0, 0]));
    assert_eq!(at_e0.rank(), 2);
    let nonzero: Vec<(usize, usize)> =
        (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).filter(|&(i, j)| !at_e0.get(i, j).is_zero()).collect();
    assert_eq!(nonzero, vec![(1, 2), (2, 1)]);
    assert_eq!(rank_at(&m, &point(FieldSpec::Rational, &[1, 2, 3, 4, 5, 7])), 4);
    assert!(m.inner().is_skew());
}

#[test]
fn generic_ranks() {
    let (w, _) = catalog::get_in("n6-g2", p(101)).unwrap();
    assert_eq!(rank_at(&build_m(&w).unwrap(), &point(p(101), &[3, 1, 4, 1, 5, 9, 2])), 6);
    let (w, _) = catalog::get_in("n7-ozeki", p(101)).unwrap();
    assert_eq!(rank_at(&build_m(&w).unwrap(), &point(p(101), &[3, 1, 4, 1, 5, 9, 2, 6])), 6);
    assert_eq!(expected_generic_rank(6), 6);
    assert_eq!(expected_generic_rank(7), 6);
}

#[test]
fn stratification() {
    let (w, _) = catalog::get_in("n6-g2", p(101)).unwrap();
    let s = stratify(&w, 10_000, 1).unwrap();
    assert_eq!(s.generic_rank, 6);
    assert!(!s.strata_hits.is_empty());
    assert!(s.strata_hits.keys().all(|&r| r == 4));

    let w = random_gc2_form(9, p(1009), 4).unwrap();
    let s = stratify(&w, 500, 1).unwrap();
    assert_eq!(s.generic_rank, 8);
    assert!(s.strata_hits.keys().all(|&r| r == 6));
    assert!(s.strata_hits.contains_key(&6));

    let (w, _) = catalog::get_in("n3", p(101)).unwrap();
    let s = stratify(&w, 1000, 1).unwrap();
    assert_eq!(s.rank_histogram.keys().copied().collect::<Vec<_>>(), vec![2]);
    assert_eq!(rank_at(&build_m(&w).unwrap(), &point(p(101), &[1, 0, 0, 0])), 0);
}

#[test]
fn gcd_of_subpfaffians_on_a_line() {
    let (w, _) = catalog::get_in("n6-g2", p(1009)).unwrap();
    let m = build_m(&w).unwrap();
    let p0 = point(p(1009), &[3, 1, 4, 1, 5, 9, 2]);
    let p1 = point(p(1009), &[2, 7, 1, 8, 2, 8, 1]);
    let pf = principal_subpfaffians(&m.on_line(&p0, &p1));
    assert_eq!(pf.len(), 7);
    let g = poly_gcd_all(p(1009), pf.iter()).unwrap();
    assert_eq!(g.degree(), Some(2));
    assert_eq!(fundamental_poly_on_line(&m, &p0, &p1).unwrap(), g);
}

#[test]
fn fundamental_hypersurfaces() {
    for (name, d) in [("n4", 1), ("n6-g2", 2), ("n8-family", 3)] {
        let (w, _) = catalog::get_in(name, p(1009)).unwrap();
        assert_eq!(hypersurface_degree(&w).unwrap(), d, "{name}");
    }
    let (w, _) = catalog::get_in("n5", p(1009)).unwrap();
    assert!(hypersurface_degree(&w).is_err());
}

#[test]
fn n8_family_members() {
    // Another member of the dense family behaves the same way.
    let w = catalog::n8_family([1, 2, 3, 5]).form(p(1009)).unwrap();
    assert_eq!(hypersurface_degree(&w).unwrap(), 3);
}

#[test]
fn secant_pencils() {
    let (w, _) = catalog::get_in("n7-ozeki", p(1009)).unwrap();
    let s = secant_pencil(&w, &sample_line_on_x(&w, 3).unwrap()).unwrap();
    assert_eq!(s.degree, 3);
    assert!(!s.poly.is_zero());

    let w = random_gc2_form(9, p(1009), 2).unwrap();
    let s = secant_pencil(&w, &sample_line_on_x(&w, 3).unwrap()).unwrap();
    assert_eq!(s.degree, 4);

    let (w, _) = catalog::get_in("n5", p(1009)).unwrap();
    let l = AlternatingTensor::vector(w.ctx(), &[0, 3]);
    let s = secant_pencil(&w, &l).unwrap();
    assert_eq!((s.degree, s.distinct_roots), (2, 2));
    let (e, f) = decompose_bivector(&l).unwrap();
    let mut roots: Vec<Vec<Scalar>> = s.root_points().unwrap().iter().map(|v| threeform::exterior::normalize_point(v)).collect();
    let mut direct = vec![threeform::exterior::normalize_point(&e), threeform::exterior::normalize_point(&f)];
    roots.sort_by_key(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    direct.sort_by_key(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    assert_eq!(roots, direct);

    assert!(secant_pencil(&w, &AlternatingTensor::vector(w.ctx(), &[0, 1])).is_err());
}

#[test]
fn exhaustive_examples() {
    let (w, _) = catalog::get_in("n5", p(3)).unwrap();
    let s = exhaustive_strata(&w).unwrap();
    assert_eq!(s.total_points, 364);
    assert_eq!(s.rank_counts.get(&2), Some(&26));
    let (w, _) = catalog::get_in("n4", p(3)).unwrap();
    let s = exhaustive_strata(&w).unwrap();
    assert_eq!(s.rank_counts.get(&2), Some(&40));
    assert!(s.points[&2].iter().all(|pt| pt[0] == 0));
    let (w, _) = catalog::get_in("n3", p(5)).unwrap();
    let s = exhaustive_strata(&w).unwrap();
    assert_eq!(s.rank_counts.get(&0), Some(&1));
    let (w, _) = catalog::get_in("n7-ozeki", p(101)).unwrap();
    assert!(matches!(exhaustive_strata(&w), Err(threeform::Error::Budget(_))));
    let _ = UniPoly::zero(p(3));
}
