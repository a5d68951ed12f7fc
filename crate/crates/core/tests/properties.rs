use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use threeform::congruence::{lines_through, member_x};
use threeform::degeneracy::build_m;
use threeform::exterior::{contract, is_decomposable, random_coords, random_tensor, split_along_covector};
use threeform::formfile::{parse_form, write_form};
use threeform::pfaffian::pfaffian;
use threeform::{AlternatingTensor, FieldSpec, Matrix, Scalar, SpaceContext, Variance};

fn field(p: bool) -> FieldSpec {
    if p {
        FieldSpec::Prime { p: 101 }
    } else {
        FieldSpec::Rational
    }
}

fn tensor(ctx: SpaceContext, k: usize, variance: Variance, seed: u64) -> AlternatingTensor {
    random_tensor(ctx, k, variance, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contraction_is_adjoint_to_wedge(n in 3usize..8, k in 1usize..4, prime: bool, seed: u64) {
        let c = SpaceContext::new(n, field(prime)).unwrap();
        let f = tensor(c, k + 1, Variance::Form, seed);
        let v = tensor(c, 1, Variance::Vector, seed ^ 1);
        let w = tensor(c, k, Variance::Vector, seed ^ 2);
        let lhs = contract(&f, &v).unwrap().pair(&w).unwrap();
        let rhs = f.pair(&v.wedge(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative(n in 3usize..8, p in 0usize..4, q in 0usize..4, seed: u64) {
        prop_assume!(p + q <= n + 1);
        let c = SpaceContext::new(n, field(true)).unwrap();
        let a = tensor(c, p, Variance::Form, seed);
        let b = tensor(c, q, Variance::Form, seed ^ 7);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, if p * q % 2 == 0 { ba } else { ba.neg() });
    }

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..5, prime: bool, seed: u64) {
        let size = 2 * half;
        let f = field(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = Matrix::zeros(f, size, size);
        for i in 0..size {
            for j in i + 1..size {
                let v = Scalar::from_i64(f, rng.gen_range(-9..=9));
                m.set(j, i, -&v);
                m.set(i, j, v);
            }
        }
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(&pf * &pf, m.determinant().unwrap());
    }

    #[test]
    fn decomposable_bivectors(n in 3usize..8, seed: u64) {
        let c = SpaceContext::new(n, field(true)).unwrap();
        let u = tensor(c, 1, Variance::Vector, seed);
        let v = tensor(c, 1, Variance::Vector, seed ^ 3);
        let l = u.wedge(&v).unwrap();
        prop_assert!(l.is_zero() || is_decomposable(&l).unwrap());
        let w = tensor(c, 1, Variance::Vector, seed ^ 4);
        let x = tensor(c, 1, Variance::Vector, seed ^ 5);
        let sum = l.add(&w.wedge(&x).unwrap()).unwrap();
        let spans_four = u.wedge(&v).unwrap().wedge(&w).unwrap().wedge(&x).unwrap().is_zero();
        prop_assert_eq!(is_decomposable(&sum).unwrap() || sum.is_zero(), spans_four);
    }

    #[test]
    fn m_omega_kills_its_point(n in 3usize..9, seed: u64) {
        let c = SpaceContext::new(n, field(true)).unwrap();
        let w = tensor(c, 3, Variance::Form, seed);
        let m = build_m(&w).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pt = random_coords(c, &mut rng);
        let mp = m.eval(&pt);
        prop_assert!(mp.is_skew());
        prop_assert!(mp.mul_vec(&pt).iter().all(Scalar::is_zero));
    }

    #[test]
    fn lines_of_the_star_lie_on_x(n in 3usize..8, seed: u64) {
        let c = SpaceContext::new(n, field(true)).unwrap();
        let w = tensor(c, 3, Variance::Form, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pt = random_coords(c, &mut rng);
        prop_assume!(pt.iter().any(|s| !s.is_zero()));
        let star = lines_through(&w, &pt).unwrap();
        let p = AlternatingTensor::from_coords(c, Variance::Vector, &pt);
        for f in star.directions.basis_vectors() {
            let l = p.wedge(&AlternatingTensor::from_coords(c, Variance::Vector, &f)).unwrap();
            prop_assert!(member_x(&w, &l).unwrap());
        }
        prop_assert!(star.kernel.contains_vector(&pt));
    }

    #[test]
    fn split_reassembles(n in 3usize..8, prime: bool, seed: u64) {
        let c = SpaceContext::new(n, field(prime)).unwrap();
        let w = tensor(c, 3, Variance::Form, seed);
        let x = tensor(c, 1, Variance::Form, seed ^ 9);
        prop_assume!(!x.is_zero());
        let s = split_along_covector(&w, &x).unwrap();
        prop_assert_eq!(s.omega_x.add(&s.beta_x.wedge(&x).unwrap()).unwrap(), w);
        prop_assert!(contract(&s.omega_x, &s.e).unwrap().is_zero());
        prop_assert!(contract(&s.beta_x, &s.e).unwrap().is_zero());
    }

    #[test]
    fn form_files_round_trip(n in 3usize..10, prime: bool, seed: u64) {
        let c = SpaceContext::new(n, field(prime)).unwrap();
        let w = tensor(c, 3, Variance::Form, seed);
        prop_assert_eq!(parse_form(&write_form(&w).unwrap()).unwrap(), w);
    }
}
