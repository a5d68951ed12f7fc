use threeform::exterior::contract;
use threeform::form_analysis::*;
use threeform::{catalog, AlternatingTensor, FieldSpec, SpaceContext};

fn q(n: usize) -> SpaceContext {
    SpaceContext::new(n, FieldSpec::Rational).unwrap()
}

#[test]
fn j_rank_examples() {
    let c = q(5);
    assert_eq!(j_rank(&AlternatingTensor::form(c, &[0, 1, 2]), 1).unwrap(), 3);
    let beta = AlternatingTensor::form(c, &[2, 3]).add(&AlternatingTensor::form(c, &[4, 5])).unwrap();
    let eta = beta.wedge(&AlternatingTensor::form(c, &[0, 1])).unwrap();
    assert_eq!(j_rank(&eta, 2).unwrap(), 10);
    assert_eq!(quadric_of(&eta).unwrap().rank, 10);
    let w = AlternatingTensor::form(c, &[1, 2, 3]).add(&AlternatingTensor::form(c, &[1, 4, 5])).unwrap();
    let x0 = AlternatingTensor::form(c, &[0]);
    assert_eq!(restricted_rank(&w, &[&x0]).unwrap(), 5);
    assert_eq!(j_rank(&w.wedge(&x0).unwrap(), 2).unwrap(), 10);
}

#[test]
fn genericity_examples() {
    let (w, _) = catalog::get("n5").unwrap();
    let g = genericity(&w, GenericityOptions { samples: 100, ..Default::default() }).unwrap();
    assert!(g.gc1 && g.gc2);

    // x0 ∧ β with β of full rank on the complement.
    let c = q(6);
    let beta = AlternatingTensor::form(c, &[1, 2])
        .add(&AlternatingTensor::form(c, &[3, 4]))
        .unwrap()
        .add(&AlternatingTensor::form(c, &[5, 6]))
        .unwrap();
    let w = AlternatingTensor::form(c, &[0]).wedge(&beta).unwrap();
    let g = genericity(&w, GenericityOptions { samples: 10, ..Default::default() }).unwrap();
    assert!(g.gc2 && !g.gc1);

    let (w, _) = catalog::get_in("n6-g2", FieldSpec::prime(101).unwrap()).unwrap();
    let g = genericity(&w, GenericityOptions { samples: 10_000, exhaustive: false, seed: 3 }).unwrap();
    assert!(g.gc3.holds());
}

#[test]
fn gc3_is_falsified_exhaustively_for_the_n5_form() {
    // The planes of rank-2 points have F_3-points.
    let (w, _) = catalog::get_in("n5", FieldSpec::prime(3).unwrap()).unwrap();
    let g = genericity(&w, GenericityOptions { samples: 0, exhaustive: true, seed: 0 }).unwrap();
    assert!(!g.gc3.holds());
}

#[test]
fn quadric_examples() {
    let c = q(3);
    assert_eq!(quadric_of(&AlternatingTensor::form(c, &[0, 1, 2, 3])).unwrap().rank, 6);
    let zero = quadric_of(&AlternatingTensor::zero(c, 4, threeform::Variance::Form)).unwrap();
    assert_eq!((zero.rank, zero.singular_locus.dim()), (0, 6));

    let (w, _) = catalog::get("n6-g2").unwrap();
    let x0 = AlternatingTensor::form(w.ctx(), &[0]);
    assert_eq!(restricted_rank(&w, &[&x0]).unwrap(), 6);
    let qa = quadric_of(&w.wedge(&x0).unwrap()).unwrap();
    assert_eq!(qa.rank, 12);
    assert_eq!(qa.singular_locus.proj_dim(), 8);
    assert!(qa.polarity_checked);
}

#[test]
fn singular_locus_is_lambda_omega_x() {
    let (w, _) = catalog::get("n6-g2").unwrap();
    let x0 = AlternatingTensor::form(w.ctx(), &[0]);
    let sing = quadric_of(&w.wedge(&x0).unwrap()).unwrap().singular_locus;
    assert!(sing.equals(&lambda_omega_x(&w, &x0).unwrap()).unwrap());
}

#[test]
fn quadric_depends_on_the_restriction_only() {
    let (w, _) = catalog::get("n7-ozeki").unwrap();
    let c = w.ctx();
    let x = AlternatingTensor::form(c, &[2]).add(&AlternatingTensor::form(c, &[5])).unwrap();
    let gamma = AlternatingTensor::form(c, &[0, 6]).add(&AlternatingTensor::form(c, &[1, 3])).unwrap();
    let shifted = w.add(&gamma.wedge(&x).unwrap()).unwrap();
    let a = quadric_of(&w.wedge(&x).unwrap()).unwrap();
    let b = quadric_of(&shifted.wedge(&x).unwrap()).unwrap();
    assert_eq!(a.rho, b.rho);
}

#[test]
fn span_lattice_examples() {
    let (w, _) = catalog::get("n5").unwrap();
    let c = w.ctx();
    let x0 = AlternatingTensor::form(c, &[0]);
    let x4 = AlternatingTensor::form(c, &[4]);
    let s = span_lattice(&w, &x0, &x4).unwrap();
    assert_eq!(restricted_rank(&w, &[&x0]).unwrap(), 3);
    assert_eq!(s.codims().lambda_omega_x, 8);
    assert_eq!(s.codims().lambda_omega, 6);
    assert!(s.containments_hold().unwrap());

    let w = AlternatingTensor::form(c, &[0, 1, 2]);
    let x3 = AlternatingTensor::form(c, &[3]);
    assert!(lambda_x(&w, &x3).unwrap().equals(&lambda_omega(&w).unwrap()).unwrap());
    assert!(span_lattice(&w, &x3, &x3).is_err());
}

#[test]
fn lambda_x_elements_lie_on_the_quadric() {
    let (w, _) = catalog::get("n6-g2").unwrap();
    let c = w.ctx();
    let x = AlternatingTensor::form(c, &[1]).add(&AlternatingTensor::form(c, &[4])).unwrap();
    let eta = w.wedge(&x).unwrap();
    for l in lambda_x(&w, &x).unwrap().basis_tensors() {
        assert!(q_eta(&eta, &l).unwrap().is_zero());
        assert!(contract(&w, &l).unwrap().wedge(&x).unwrap().is_zero());
    }
}
