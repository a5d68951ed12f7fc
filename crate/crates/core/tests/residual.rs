use threeform::congruence::{member_x, sample_line_on_x};
use threeform::exterior::decompose_bivector;
use threeform::residual::*;
use threeform::verify::random_gc2_form;
use threeform::{catalog, AlternatingTensor, FieldSpec, Matrix, Scalar, Variance};

fn p(v: u64) -> FieldSpec {
    FieldSpec::prime(v).unwrap()
}

fn form(name: &str, field: FieldSpec) -> AlternatingTensor {
    catalog::get_in(name, field).unwrap().0
}

fn point(field: FieldSpec, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&c| Scalar::from_i64(field, c)).collect()
}

#[test]
fn membership_in_y() {
    let w = form("n7-ozeki", p(1009));
    let c = w.ctx();
    let l = sample_line_on_x(&w, 3).unwrap();
    let (e, f) = decompose_bivector(&l).unwrap();
    // A covector vanishing on L puts L on the Schubert hyperplane.
    let x = Matrix::from_rows(c.field(), vec![e, f]).kernel().columns().swap_remove(0);
    let x = AlternatingTensor::from_coords(c, Variance::Form, &x);
    let y = AlternatingTensor::form(c, &[0]).add(&AlternatingTensor::form(c, &[5])).unwrap();
    let h = ResidualHandle::new(&w, &x, &y).unwrap();
    assert!(l.pair(&x.wedge(&y).unwrap()).unwrap().is_zero());
    assert!(member_y(&h, &l).unwrap());

    let h = ResidualHandle::random(&w, 9).unwrap();
    let on_y = (0..20).filter(|&s| member_y(&h, &sample_line_on_x(&w, s).unwrap()).unwrap()).count();
    assert_eq!(on_y, 0);
    assert!(!member_y(&h, &AlternatingTensor::zero(c, 2, Variance::Vector)).unwrap());
}

#[test]
fn handle_preconditions() {
    let w = form("n5", p(101));
    let x = AlternatingTensor::form(w.ctx(), &[0]);
    assert!(ResidualHandle::new(&w, &x, &x.scale(&w.ctx().scalar(2))).is_err());
    assert!(ResidualHandle::new(&w, &x, &w).is_err());
}

#[test]
fn sampled_lines_on_y() {
    for name in ["n5", "n6-g2"] {
        let w = form(name, p(1009));
        let h = ResidualHandle::random(&w, 4).unwrap();
        let mut pencil = std::collections::BTreeSet::new();
        for seed in 0..12 {
            let s = sample_line_on_y(&h, seed).unwrap();
            assert!(member_y(&h, &s.line).unwrap(), "{name}");
            assert!(s.line.pair(&h.x.wedge(&h.y).unwrap()).unwrap().is_zero());
            let z = h.x.scale(&s.a).add(&h.y.scale(&s.b)).unwrap();
            let (e, f) = decompose_bivector(&s.line).unwrap();
            for v in [e, f] {
                assert!(z.pair(&AlternatingTensor::from_coords(h.ctx(), Variance::Vector, &v)).unwrap().is_zero());
            }
            assert!(member_x(&s.local_form, &s.local_line).unwrap());
            let ratio = if s.a.is_zero() { None } else { Some(&s.b * &s.a.inv().unwrap()) };
            pencil.insert(format!("{ratio:?}"));
        }
        assert!(pencil.len() > 3, "{name}");
    }
}

#[test]
fn singular_locus_dimensions() {
    for (name, d) in [("n5", 0), ("n6-g2", 1), ("n7-ozeki", 2)] {
        let w = form(name, p(101));
        let h = ResidualHandle::random(&w, 21).unwrap();
        let s = sing_y_dimension(&h, 3).unwrap();
        assert_eq!((s.dimension, s.expected), (d, d as isize), "{name}");
        assert!(member_y(&h, &s.line).unwrap());
    }
}

#[test]
fn line_systems_at_points() {
    let w = form("n7-ozeki", p(1009));
    let h = ResidualHandle::random(&w, 2).unwrap();
    let g = g_membership(&h, &point(p(1009), &[3, 1, 4, 1, 5, 9, 2, 6])).unwrap();
    assert_eq!((g.kernel_dim, g.on_g), (1, false));
    let sys = line_system(&h, &point(p(1009), &[3, 1, 4, 1, 5, 9, 2, 6])).unwrap();
    assert_eq!(sys.matrix.cols(), 8);

    let w = form("n6-g2", p(1009));
    let h = ResidualHandle::random(&w, 2).unwrap();
    let g = g_membership(&h, &point(p(1009), &[3, 1, 4, 1, 5, 9, 2])).unwrap();
    assert_eq!((g.kernel_dim, g.on_g), (2, false));
    let on_pi = h.pi.combine(&point(p(1009), &[1, 2, 3, 4, 5]));
    assert!(g_membership(&h, &on_pi).unwrap().on_g);
}

#[test]
fn g_degrees() {
    for (name, d) in [("n5", 2), ("n7-ozeki", 3)] {
        let w = form(name, p(1009));
        let h = ResidualHandle::random(&w, 5).unwrap();
        let g = g_degree_odd(&h, 1).unwrap();
        assert_eq!(g.degree, d, "{name}");
        assert_eq!(g.pi_points_on_g, g.points_checked);
    }
    let w = random_gc2_form(9, p(1009), 3).unwrap();
    assert_eq!(g_degree_odd(&ResidualHandle::random(&w, 5).unwrap(), 1).unwrap().degree, 4);
    let w = form("n6-g2", p(1009));
    assert!(g_degree_odd(&ResidualHandle::random(&w, 5).unwrap(), 1).is_err());
}

#[test]
fn secancy_of_y() {
    for (name, k) in [("n4", 1), ("n6-g2", 2), ("n8-family", 3)] {
        let w = form(name, p(1009));
        let h = ResidualHandle::random(&w, 6).unwrap();
        let s = y_secancy_even(&h, 2).unwrap();
        assert_eq!((s.secant_count, s.meets_pi), (k, true), "{name}");
    }
}
