//! Verification suites. Each suite checks a family of claims and returns a report.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{self, Source};
use crate::congruence;
use crate::degeneracy;
use crate::enumerative::{self, TriangleKind};
use crate::error::{Error, Result};
use crate::exterior::{contract, decompose_bivector, normalize_point, random_coords, random_tensor_with, AlternatingTensor, SpaceContext, Variance};
use crate::field::{FieldSpec, Scalar};
use crate::form_analysis;
use crate::matrix::Matrix;
use crate::report::VerificationReport;
use crate::residual::{self, ResidualHandle};
use crate::seeds::derive_seed;

pub const SUITES: [&str; 19] = [
    "enumerative",
    "chern",
    "rank-laws",
    "order",
    "span-lattice",
    "quadrics",
    "recovery",
    "fundamental-even",
    "exhaustive",
    "secancy",
    "decomposition",
    "residual-sampling",
    "residual-odd",
    "residual-even",
    "residual-sing",
    "residual",
    "conventions",
    "catalog",
    "all",
];

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Overrides the per-suite sample count.
    pub samples: Option<usize>,
    /// Overrides the per-suite field of the sampling suites.
    pub field: Option<FieldSpec>,
}

impl SuiteOptions {
    fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn field_or(&self, p: u64) -> FieldSpec {
        self.field.unwrap_or(FieldSpec::Prime { p })
    }
}

pub fn run(suite: &str, opts: &SuiteOptions) -> Result<VerificationReport> {
    match suite {
        "enumerative" => enumerative_suite(opts),
        "chern" => chern_suite(opts),
        "rank-laws" => rank_laws(opts),
        "order" => order_suite(opts),
        "span-lattice" => span_lattice_suite(opts),
        "quadrics" => quadrics_suite(opts),
        "recovery" => recovery_suite(opts),
        "fundamental-even" => fundamental_even(opts),
        "exhaustive" => exhaustive_suite(opts),
        "secancy" => secancy_suite(opts),
        "decomposition" => decomposition_suite(opts),
        "residual-sampling" => residual_sampling(opts),
        "residual-odd" => residual_odd(opts),
        "residual-even" => residual_even(opts),
        "residual-sing" => residual_sing(opts),
        "residual" => aggregate("residual", &SUITES[11..15], opts),
        "conventions" => conventions(opts),
        "catalog" => catalog_suite(opts),
        "all" => aggregate("all", &SUITES[..15].iter().chain(&SUITES[16..18]).copied().collect::<Vec<_>>(), opts),
        _ => Err(Error::Unknown(format!("suite '{suite}' (known: {})", SUITES.join(", ")))),
    }
}

fn aggregate(name: &str, parts: &[&str], opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(name, opts.seed, opts.field);
    for part in parts {
        report.absorb(run(part, opts)?);
    }
    Ok(report)
}

fn ints(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small integer")).collect()
}

fn rows(v: &[&[i64]]) -> Vec<Vec<i64>> {
    v.iter().map(|r| r.to_vec()).collect()
}

const TRIANGLE_A: [&[i64]; 10] = [
    &[1],
    &[0, 0],
    &[1, 1, 1],
    &[0, 1, 2, 2],
    &[1, 2, 4, 6, 6],
    &[0, 2, 6, 12, 18, 18],
    &[1, 3, 9, 21, 39, 57, 57],
    &[0, 3, 12, 33, 72, 129, 186, 186],
    &[1, 4, 16, 49, 121, 250, 436, 622, 622],
    &[0, 4, 20, 69, 190, 440, 876, 1498, 2120, 2120],
];

const TRIANGLE_B: [&[i64]; 10] = [
    &[1],
    &[1, 1],
    &[1, 2, 2],
    &[1, 3, 5, 5],
    &[1, 4, 9, 14, 14],
    &[1, 5, 14, 28, 42, 42],
    &[1, 6, 20, 48, 90, 132, 132],
    &[1, 7, 27, 75, 165, 297, 429, 429],
    &[1, 8, 35, 110, 275, 572, 1001, 1430, 1430],
    &[1, 9, 44, 154, 429, 1001, 2002, 3432, 4862, 4862],
];

const TRIANGLE_C: [&[i64]; 10] = [
    &[0],
    &[1, 1],
    &[0, 1, 1],
    &[1, 2, 3, 3],
    &[0, 2, 5, 8, 8],
    &[1, 3, 8, 16, 24, 24],
    &[0, 3, 11, 27, 51, 75, 75],
    &[1, 4, 15, 42, 93, 168, 243, 243],
    &[0, 4, 19, 61, 154, 322, 565, 808, 808],
    &[1, 5, 24, 85, 239, 561, 1126, 1934, 2742, 2742],
];

const MULTIDEG_X: [&[i64]; 7] =
    [&[1, 0], &[0, 1], &[1, 1, 1], &[0, 2, 2], &[1, 2, 4, 2], &[0, 3, 6, 6], &[1, 3, 9, 12, 6]];
const MULTIDEG_Y: [&[i64]; 7] =
    [&[0, 1], &[1, 1], &[0, 2, 1], &[1, 2, 3], &[0, 3, 5, 3], &[1, 3, 8, 8], &[0, 4, 11, 16, 8]];

fn catalan(k: i64) -> BigInt {
    enumerative::binom(2 * k, k) / BigInt::from(k + 1)
}

/// Fine numbers from `2 F_k + F_{k-1} = C_k`.
fn fine_numbers(count: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::from(1)];
    for k in 1..count as i64 {
        let prev = f.last().unwrap().clone();
        f.push((catalan(k) - prev) / BigInt::from(2));
    }
    f
}

fn enumerative_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("enumerative", opts.seed, None);
    for (id, kind, printed) in [
        ("triangle_a", TriangleKind::A, &TRIANGLE_A),
        ("triangle_b", TriangleKind::B, &TRIANGLE_B),
        ("triangle_c", TriangleKind::C, &TRIANGLE_C),
    ] {
        let t = enumerative::triangle(kind, 10)?;
        let computed: Vec<Vec<i64>> = t.rows.iter().map(|row| ints(row)).collect();
        r.check(id, "rows 0..9 of the printed triangle", Source::Reference, rows(printed), computed);
    }
    let a = enumerative::triangle(TriangleKind::A, 10)?;
    r.check("fine_diagonal", "diagonal of a is the Fine sequence", Source::Oracle, ints(&fine_numbers(10)), ints(&a.diagonal()));
    let b = enumerative::triangle(TriangleKind::B, 15)?;
    let cat: Vec<BigInt> = (0..15).map(catalan).collect();
    r.check("catalan_diagonal", "diagonal of b is the Catalan sequence through row 14", Source::Oracle, ints(&cat), ints(&b.diagonal()));

    let md: Vec<enumerative::Multidegrees> = (3..=9).map(enumerative::multidegrees).collect::<Result<_>>()?;
    r.check(
        "deg_x",
        "deg X for n = 3..9",
        Source::Reference,
        vec![1, 2, 6, 18, 57, 186, 622],
        md.iter().map(|m| m.deg_x.to_i64().unwrap()).collect(),
    );
    r.check(
        "deg_y",
        "deg Y for n = 3..9",
        Source::Reference,
        vec![1, 3, 8, 24, 75, 243, 808],
        md.iter().map(|m| m.deg_y.to_i64().unwrap()).collect(),
    );
    r.check(
        "multidegree_x",
        "multidegrees of X for n = 3..9",
        Source::Reference,
        rows(&MULTIDEG_X),
        md.iter().map(|m| ints(&m.x)).collect(),
    );
    r.check(
        "multidegree_y",
        "multidegrees of Y for n = 3..9",
        Source::Reference,
        rows(&MULTIDEG_Y),
        md.iter().map(|m| ints(&m.y)).collect(),
    );
    let closed: Vec<BigInt> =
        (3..=15i64).map(|n| enumerative::binom(2 * n - 2, n) / BigInt::from(n - 1)).collect();
    let deg_b = (3..=15).map(|n| enumerative::multidegrees(n).map(|m| m.deg_b)).collect::<Result<Vec<_>>>()?;
    r.check("deg_b", "deg B(n) = C(2n-2, n)/(n-1) for n = 3..15", Source::Reference, ints(&closed), ints(&deg_b));
    Ok(r)
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn chern_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("chern", opts.seed, None);
    let mut printed = Vec::new();
    let mut computed = Vec::new();
    let mut agree = true;
    for n in 4..=12i64 {
        let c = enumerative::chern(n as usize);
        agree &= c == enumerative::chern_by_binomial_sum(n as usize);
        printed.push(vec![
            rat(n - 2, 2).to_string(),
            rat(n * n - 5 * n + 12, 8).to_string(),
            rat(n * n * n - 9 * n * n + 44 * n - 108, 48).to_string(),
        ]);
        computed.push((1..=3).map(|k| c.get(k).to_string()).collect::<Vec<_>>());
    }
    r.check("c1_c2_c3", "c1, c2, c3 for n = 4..12", Source::Reference, printed, computed);
    r.check("binomial_sum", "product expansion agrees with the binomial sum", Source::Trivial, true, agree);

    let even: Vec<usize> = (4..=14).step_by(2).collect();
    r.check_result(
        "deg_f_even",
        "degree of the rank-(n-2) stratum is (n-2)/2 for even n = 4..14",
        Source::Reference,
        even.iter().map(|n| ((n - 2) / 2) as i64).collect::<Vec<_>>(),
        even.iter().map(|&n| enumerative::stratum_degree(n, n - 2).map(|d| d.to_i64().unwrap())).collect(),
    );
    r.check_result(
        "deg_f_odd",
        "degree of the rank-(n-3) stratum for n = 5, 7, 9",
        Source::Reference,
        vec![2i64, 6, 15],
        [5, 7, 9].iter().map(|&n| enumerative::stratum_degree(n, n - 3).map(|d| d.to_i64().unwrap())).collect(),
    );
    let odd_formula: Vec<BigInt> =
        (5..=15i64).step_by(2).map(|n| enumerative::binom(n - 1, 3) / BigInt::from(4) + 1).collect();
    r.check_result(
        "deg_f_odd_formula",
        "degree of the rank-(n-3) stratum is C(n-1,3)/4 + 1 for odd n = 5..15",
        Source::Reference,
        ints(&odd_formula),
        (5..=15).step_by(2).map(|n| enumerative::stratum_degree(n, n - 3).map(|d| d.to_i64().unwrap())).collect(),
    );
    r.check_result(
        "codim6_n10",
        "degree of the rank-(n-4) stratum at n = 10",
        Source::Reference,
        99i64,
        enumerative::stratum_degree(10, 6).map(|d| d.to_i64().unwrap()),
    );
    let pts6 = [6i64, 8, 10, 12, 14];
    r.check_result(
        "codim6_closed_form",
        "rank-(n-4) stratum degree equals the closed polynomial at n = 6..14 even",
        Source::Reference,
        pts6.iter().map(|&n| enumerative::closed_form_codim6(n).to_string()).collect::<Vec<_>>(),
        pts6.iter().map(|&n| enumerative::stratum_class_degree(n as usize, n as usize - 4).map(|q| q.to_string())).collect(),
    );
    let pts10 = [7i64, 9, 11, 13, 15];
    r.check_result(
        "codim10_closed_form",
        "rank-(n-5) stratum degree equals the closed polynomial at n = 7..15 odd",
        Source::Reference,
        pts10.iter().map(|&n| enumerative::closed_form_codim10(n).to_string()).collect::<Vec<_>>(),
        pts10.iter().map(|&n| enumerative::stratum_class_degree(n as usize, n as usize - 5).map(|q| q.to_string())).collect(),
    );
    Ok(r)
}

fn random_covector<R: Rng>(ctx: SpaceContext, rng: &mut R) -> AlternatingTensor {
    AlternatingTensor::from_coords(ctx, Variance::Form, &random_coords(ctx, rng))
}

/// Sum of `terms` random products of `k` covectors.
fn sum_of_decomposables<R: Rng>(ctx: SpaceContext, k: usize, terms: usize, rng: &mut R) -> Result<AlternatingTensor> {
    let mut acc = AlternatingTensor::zero(ctx, k, Variance::Form);
    for _ in 0..terms {
        let mut t = random_covector(ctx, rng);
        for _ in 1..k {
            t = t.wedge(&random_covector(ctx, rng))?;
        }
        acc = acc.add(&t)?;
    }
    Ok(acc)
}

fn rank_laws(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field.unwrap_or(FieldSpec::Rational);
    let count = opts.samples_or(20);
    let mut r = VerificationReport::new("rank-laws", opts.seed, Some(field));
    for n in 5..=7usize {
        let ctx = SpaceContext::new(n, field)?;
        let mut shapes: [(Vec<usize>, Vec<usize>); 3] = Default::default();
        let mut i = 0u64;
        let mut done = [0usize; 3];
        while done.iter().any(|&d| d < count) && i < 50 * count as u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, (n as u64) << 32 | i));
            i += 1;
            let s = (i % 3) as usize;
            if done[s] >= count {
                continue;
            }
            let (eta, expected) = match s {
                0 => (sum_of_decomposables(ctx, 4, 1, &mut rng)?, 6),
                1 => {
                    let beta = sum_of_decomposables(ctx, 2, rng.gen_range(1..=3), &mut rng)?;
                    let x = random_covector(ctx, &mut rng);
                    let x2 = random_covector(ctx, &mut rng);
                    let rk = form_analysis::restricted_rank(&beta, &[&x, &x2])?;
                    (beta.wedge(&x)?.wedge(&x2)?, 2 * rk + 2)
                }
                _ => {
                    let omega = sum_of_decomposables(ctx, 3, rng.gen_range(1..=4), &mut rng)?;
                    let x = random_covector(ctx, &mut rng);
                    let rk = form_analysis::restricted_rank(&omega, &[&x])?;
                    (omega.wedge(&x)?, 2 * rk)
                }
            };
            // The formulas describe nonzero forms only.
            if eta.is_zero() {
                continue;
            }
            done[s] += 1;
            shapes[s].0.push(expected);
            shapes[s].1.push(form_analysis::quadric_of(&eta)?.rank);
        }
        for (s, (expected, computed)) in shapes.into_iter().enumerate() {
            let (id, text) = [
                ("decomposable", "rank of the quadric of a product of four covectors is 6"),
                ("beta_x_x", "rank of the quadric of β∧x∧x' is 2 rk β_{x,x'} + 2"),
                ("omega_x", "rank of the quadric of ω∧x is 2 rk ω_x"),
            ][s];
            r.check(&format!("{id}/n{n}"), text, Source::Reference, expected, computed);
        }
    }
    Ok(r)
}

/// Seeded random 3-form with `j_1 = n + 1`.
pub fn random_gc2_form(n: usize, field: FieldSpec, seed: u64) -> Result<AlternatingTensor> {
    let ctx = SpaceContext::new(n, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let w = random_tensor_with(ctx, 3, Variance::Form, &mut rng);
        if form_analysis::j_rank(&w, 1)? == ctx.dim() {
            return Ok(w);
        }
    }
    Err(Error::Budget("no random form of full rank".into()))
}

/// Evaluates one catalog claim; exact claims use `exact`, sampled ones `sampled`.
fn catalog_claim(exact: &AlternatingTensor, sampled: &AlternatingTensor, claim: &str, samples: usize, seed: u64) -> Result<i64> {
    let value = match claim {
        "rank" => form_analysis::j_rank(exact, 1)?,
        "span_codim" => form_analysis::lambda_omega(exact)?.codim(),
        "quadrics_through_span" => congruence::quadrics_through_span(exact)?.dimension,
        "recover_dim" => congruence::recover_forms(&form_analysis::lambda_omega(exact)?)?.dim(),
        "order" => congruence::order(sampled, samples, seed)?.order,
        "fundamental_degree" => degeneracy::hypersurface_degree_seeded(sampled, seed)?,
        "secant_degree" => {
            let l = congruence::sample_line_on_x(sampled, seed)?;
            degeneracy::secant_pencil(sampled, &l)?.degree
        }
        "tangent_dim" => {
            let l = congruence::sample_line_on_x(sampled, seed)?;
            congruence::tangent_certificate(sampled, &l)?.tangent_dim
        }
        _ => return Err(Error::Unknown(format!("catalog claim '{claim}'"))),
    };
    Ok(value as i64)
}

fn catalog_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field_or(1009);
    let samples = opts.samples_or(100);
    let mut r = VerificationReport::new("catalog", opts.seed, Some(field));
    for (k, name) in catalog::list().into_iter().enumerate() {
        let entry = catalog::entry(name)?;
        let exact = entry.form(FieldSpec::Rational)?;
        let sampled = entry.form(field)?;
        let text = crate::formfile::write_form(&exact)?;
        r.check(
            &format!("{name}/form_file"),
            "the form survives a form file round trip",
            Source::Trivial,
            true,
            crate::formfile::parse_form(&text)? == exact,
        );
        for (i, (claim, e)) in entry.expected.iter().enumerate() {
            let seed = derive_seed(opts.seed, 100 * k as u64 + i as u64);
            r.check_result(
                &format!("{name}/{claim}"),
                "catalog claim recomputed from the form",
                e.source,
                e.value,
                catalog_claim(&exact, &sampled, claim, samples, seed),
            );
        }
    }
    Ok(r)
}

fn order_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field_or(101);
    let samples = opts.samples_or(200);
    let mut r = VerificationReport::new("order", opts.seed, Some(field));
    for name in ["n3", "n4", "n5", "n6-g2", "n7-ozeki", "n7-djokovic", "n8-family"] {
        let (w, e) = catalog::get_in(name, field)?;
        let expected = e.expected("order").unwrap() as usize;
        let computed = congruence::order(&w, samples, derive_seed(opts.seed, e.n as u64)).map(|o| (o.order, o.agreeing));
        r.check_result(name, "lines through a general point", Source::Reference, (expected, samples), computed);
    }
    for n in 5..=9usize {
        let computed: Result<Vec<(usize, usize)>> = (0..10u64)
            .map(|k| {
                let s = derive_seed(opts.seed, 1000 * n as u64 + k);
                let w = random_gc2_form(n, field, s)?;
                congruence::order(&w, samples, s ^ 1).map(|o| (o.order, o.agreeing))
            })
            .collect();
        r.check_result(
            &format!("random/n{n}"),
            "lines through a general point for 10 random forms of full rank",
            Source::Reference,
            vec![(n % 2, samples); 10],
            computed,
        );
    }
    Ok(r)
}

fn lattice_claims(
    r: &mut VerificationReport,
    id: &str,
    omega: &AlternatingTensor,
    seed: u64,
) -> Result<()> {
    let ctx = omega.ctx();
    let n = ctx.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x, y) = loop {
        let x = random_covector(ctx, &mut rng);
        let y = random_covector(ctx, &mut rng);
        if !x.wedge(&y)?.is_zero() {
            break (x, y);
        }
    };
    let lattice = form_analysis::span_lattice(omega, &x, &y)?;
    let rk = form_analysis::restricted_rank(omega, &[&x])?;
    r.check(
        &format!("{id}/codims"),
        "codimensions of Λ_ω, Λ^x, Λ^{xy}, Λ_{ω_x}, Λ_{ω,x∧y}",
        Source::Reference,
        form_analysis::SpanCodims {
            lambda_omega: n + 1,
            lambda_x: n,
            lambda_xy: n - 1,
            lambda_omega_x: n + rk,
            lambda_omega_xy: n,
        },
        lattice.codims(),
    );
    r.check(&format!("{id}/containments"), "containment lattice", Source::Trivial, true, lattice.containments_hold()?);
    let eta = omega.wedge(&x)?;
    let mut on_quadric = true;
    for _ in 0..8 {
        let coeffs: Vec<Scalar> = (0..lattice.lambda_x.dim()).map(|_| Scalar::random(ctx.field(), &mut rng)).collect();
        let l = AlternatingTensor::from_dense(ctx, 2, Variance::Vector, &lattice.lambda_x.combine(&coeffs));
        on_quadric &= form_analysis::q_eta(&eta, &l)?.is_zero();
    }
    r.check(&format!("{id}/lambda_x_on_quadric"), "random elements of Λ^x lie on Q_{ω∧x}", Source::Reference, true, on_quadric);
    Ok(())
}

fn span_lattice_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field.unwrap_or(FieldSpec::Rational);
    let mut r = VerificationReport::new("span-lattice", opts.seed, Some(field));
    for (k, name) in ["n5", "n6-g2", "n7-ozeki"].iter().enumerate() {
        let (w, _) = catalog::get_in(name, field)?;
        lattice_claims(&mut r, name, &w, derive_seed(opts.seed, k as u64))?;
    }
    for n in 5..=7usize {
        for k in 0..2u64 {
            let s = derive_seed(opts.seed, 100 * n as u64 + k);
            let w = random_gc2_form(n, field, s)?;
            lattice_claims(&mut r, &format!("random/n{n}/{k}"), &w, s ^ 1)?;
        }
    }
    // x outside the image of ω on bivectors.
    let ctx = SpaceContext::new(5, field)?;
    let w = AlternatingTensor::form(ctx, &[0, 1, 2]);
    let x = AlternatingTensor::form(ctx, &[3]);
    r.check(
        "outside_image",
        "Λ^x = Λ_ω when x is outside the image of ω",
        Source::Reference,
        true,
        form_analysis::lambda_x(&w, &x)?.equals(&form_analysis::lambda_omega(&w)?)?,
    );
    Ok(r)
}

fn quadrics_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field.unwrap_or(FieldSpec::Rational);
    let mut r = VerificationReport::new("quadrics", opts.seed, Some(field));
    for name in ["n5", "n6-g2", "n7-ozeki"] {
        let (w, e) = catalog::get_in(name, field)?;
        let expected = e.expected("quadrics_through_span").unwrap() as usize;
        r.check_result(
            name,
            "dimension of the quadrics through Λ_ω, and equality with {ω∧x}",
            Source::Reference,
            (expected, true),
            congruence::quadrics_through_span(&w).map(|q| (q.dimension, q.matches_q_omega)),
        );
    }
    Ok(r)
}

fn recovery_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field.unwrap_or(FieldSpec::Rational);
    let mut r = VerificationReport::new("recovery", opts.seed, Some(field));
    for name in ["n5", "n6-g2", "n7-ozeki"] {
        let (w, e) = catalog::get_in(name, field)?;
        let source = e.expected.get("recover_dim").unwrap().source;
        let rec = congruence::recover_forms(&form_analysis::lambda_omega(&w)?)?;
        r.check(name, "dimension of the 3-forms vanishing on Λ_ω", source, e.expected("recover_dim").unwrap() as usize, rec.dim());
        if name == "n5" {
            let ctx = w.ctx();
            let parts = [AlternatingTensor::form(ctx, &[0, 1, 2]), AlternatingTensor::form(ctx, &[3, 4, 5])];
            r.check(
                "n5/summands",
                "both decomposable summands vanish on Λ_ω",
                Source::Oracle,
                true,
                parts.iter().all(|t| rec.contains_tensor(t)),
            );
        }
    }
    Ok(r)
}

fn fundamental_even(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field_or(1009);
    let mut r = VerificationReport::new("fundamental-even", opts.seed, Some(field));
    for name in ["n4", "n6-g2", "n8-family"] {
        let (w, e) = catalog::get_in(name, field)?;
        let expected = e.expected("fundamental_degree").unwrap() as usize;
        r.check_result(
            name,
            "degree of the fundamental hypersurface, equal on 3 random lines",
            Source::Reference,
            expected,
            degeneracy::hypersurface_degree_seeded(&w, derive_seed(opts.seed, e.n as u64)),
        );
        r.check_result(
            &format!("{name}/formula"),
            "agrees with the enumerative degree",
            Source::Reference,
            expected as i64,
            enumerative::fundamental_locus_degrees(e.n).map(|d| d.deg_f),
        );
    }
    Ok(r)
}

fn exhaustive_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("exhaustive", opts.seed, None);
    let low = |s: &degeneracy::ExhaustiveStrata, max: usize| -> Vec<Vec<u64>> {
        s.points.iter().filter(|(k, _)| **k <= max).flat_map(|(_, v)| v.clone()).collect()
    };

    let (w, _) = catalog::get_in("n5", FieldSpec::prime(3)?)?;
    let s = degeneracy::exhaustive_strata(&w)?;
    let pts = low(&s, 2);
    let in_a = pts.iter().filter(|p| p[3..].iter().all(|&c| c == 0)).count();
    let in_b = pts.iter().filter(|p| p[..3].iter().all(|&c| c == 0)).count();
    r.check("n5/count", "points of rank at most 2 over F_3", Source::Oracle, 26, pts.len());
    r.check("n5/planes", "they fill the planes <e0,e1,e2> and <e3,e4,e5>, 13 points each", Source::Oracle, (13, 13), (in_a, in_b));

    let (w, _) = catalog::get_in("n4", FieldSpec::prime(3)?)?;
    let s = degeneracy::exhaustive_strata(&w)?;
    let pts = low(&s, 2);
    r.check(
        "n4/hyperplane",
        "points of rank at most 2 over F_3 are the 40 points of {x0 = 0}",
        Source::Oracle,
        (40, 40),
        (pts.len(), pts.iter().filter(|p| p[0] == 0).count()),
    );

    let (w, _) = catalog::get_in("n3", FieldSpec::prime(5)?)?;
    let s = degeneracy::exhaustive_strata(&w)?;
    r.check(
        "n3/vertex",
        "the only rank-0 point over F_5 is e0",
        Source::Oracle,
        vec![vec![1u64, 0, 0, 0]],
        s.points.get(&0).cloned().unwrap_or_default(),
    );
    Ok(r)
}

/// The point of the line through `e`, `f` on which coordinates `zero` vanish.
fn line_meets(e: &[Scalar], f: &[Scalar], zero: &[usize]) -> Option<Vec<Scalar>> {
    let field = e[0].field();
    let rows: Vec<Vec<Scalar>> = zero.iter().map(|&i| vec![e[i].clone(), f[i].clone()]).collect();
    let k = Matrix::from_rows(field, rows).kernel();
    if k.cols() != 1 {
        return None;
    }
    let (s, t) = (k.get(0, 0), k.get(1, 0));
    Some(e.iter().zip(f).map(|(a, b)| &(s * a) + &(t * b)).collect())
}

fn secancy_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field_or(1009);
    let lines = opts.samples_or(20);
    let mut r = VerificationReport::new("secancy", opts.seed, Some(field));
    let forms = [
        ("n5".to_string(), catalog::get_in("n5", field)?.0),
        ("n7-ozeki".to_string(), catalog::get_in("n7-ozeki", field)?.0),
        ("random/n9".to_string(), random_gc2_form(9, field, derive_seed(opts.seed, 9))?),
    ];
    for (name, w) in &forms {
        let n = w.ctx().n();
        let m = (n - 1) / 2;
        let mr = degeneracy::build_m(w)?;
        let results: Vec<Result<(usize, usize, bool, bool)>> = (0..lines as u64)
            .into_par_iter()
            .map(|i| {
                let l = congruence::sample_line_on_x(w, derive_seed(opts.seed ^ 0x5345_4341, 100 * n as u64 + i))?;
                let pencil = degeneracy::secant_pencil(w, &l)?;
                let roots = pencil.root_points()?;
                let on_f = roots.iter().all(|p| degeneracy::rank_at(&mr, p) <= n - 3);
                let matches = if n == 5 {
                    let found: BTreeSet<Vec<String>> = roots.iter().map(|p| key(p)).collect();
                    let direct: BTreeSet<Vec<String>> = [[0usize, 1, 2], [3, 4, 5]]
                        .iter()
                        .filter_map(|z| line_meets(&pencil.e, &pencil.f, z))
                        .map(|p| key(&p))
                        .collect();
                    found == direct && direct.len() == 2
                } else {
                    true
                };
                Ok((pencil.degree, pencil.distinct_roots, on_f, matches))
            })
            .collect();
        let results: Result<Vec<_>> = results.into_iter().collect();
        let v = match results {
            Ok(v) => v,
            Err(e) => {
                r.error(name, "secant pencil on sampled lines", Source::Reference, m.into(), &e);
                continue;
            }
        };
        r.check(
            name,
            "degree and distinct roots of the secant pencil on sampled lines",
            Source::Reference,
            vec![(m, m); lines],
            v.iter().map(|t| (t.0, t.1)).collect(),
        );
        {
            r.check(
                &format!("{name}/rank_drop"),
                "every rational root point has rank at most n - 3",
                Source::Trivial,
                true,
                v.iter().all(|t| t.2),
            );
            if n == 5 {
                r.check(
                    "n5/planes",
                    "roots are the intersections of the line with the two planes",
                    Source::Oracle,
                    true,
                    v.iter().all(|t| t.3),
                );
            }
        }
    }
    Ok(r)
}

fn key(p: &[Scalar]) -> Vec<String> {
    normalize_point(p).iter().map(|c| c.to_string()).collect()
}

fn decomposition_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("decomposition", opts.seed, None);
    for (id, p, x_idx) in [("f2/x0", 2u64, vec![0usize]), ("f2/x0+x3", 2, vec![0, 3]), ("f3/x0", 3, vec![0])] {
        let field = FieldSpec::prime(p)?;
        let (w, _) = catalog::get_in("n5", field)?;
        let ctx = w.ctx();
        let mut x = AlternatingTensor::zero(ctx, 1, Variance::Form);
        for i in x_idx {
            x = x.add(&AlternatingTensor::form(ctx, &[i]))?;
        }
        let rep = congruence::classify_linear_section(&w, &x)?;
        r.check(
            id,
            "lines of Λ^x lie in X_ω or X_{ω_x}; common lines satisfy β_x = 0",
            Source::Reference,
            (0u64, 0u64, true),
            (rep.neither, rep.overlap_violations, rep.heuristic_small_characteristic),
        );
        r.check(
            &format!("{id}/exhaustive"),
            "buckets partition the lines of Λ^x",
            Source::Trivial,
            rep.grassmannian_points,
            rep.only_x_omega + rep.only_x_omega_x + rep.both + rep.neither,
        );
    }
    Ok(r)
}

fn residual_forms(field: FieldSpec, names: &[&str]) -> Result<Vec<(String, AlternatingTensor)>> {
    names.iter().map(|n| Ok((n.to_string(), catalog::get_in(n, field)?.0))).collect()
}

fn residual_sampling(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field_or(1009);
    let samples = opts.samples_or(50);
    let mut r = VerificationReport::new("residual-sampling", opts.seed, Some(field));
    for (name, w) in residual_forms(field, &["n5", "n6-g2", "n7-ozeki", "n8-family"])? {
        let n = w.ctx().n();
        let h = ResidualHandle::random(&w, derive_seed(opts.seed, n as u64))?;
        let draws: Result<Vec<residual::YSample>> = (0..samples as u64)
            .into_par_iter()
            .map(|i| residual::sample_line_on_y(&h, derive_seed(opts.seed ^ 0x59, 1000 * n as u64 + i)))
            .collect();
        match draws {
            Ok(ys) => {
                let ok = ys
                    .iter()
                    .map(|s| {
                        let z = h.x.scale(&s.a).add(&h.y.scale(&s.b))?;
                        let (e, f) = decompose_bivector(&s.line)?;
                        let vec = |c: &[Scalar]| AlternatingTensor::from_coords(h.ctx(), Variance::Vector, c);
                        let in_h = z.pair(&vec(&e))?.is_zero() && z.pair(&vec(&f))?.is_zero();
                        Ok(residual::member_y(&h, &s.line)? && in_h)
                    })
                    .collect::<Result<Vec<bool>>>()?;
                r.check(
                    &format!("{name}/member_y"),
                    "sampled lines lie in Y and in their pencil hyperplane",
                    Source::Reference,
                    vec![true; samples],
                    ok,
                );
                let members: BTreeSet<Vec<String>> =
                    ys.iter().map(|s| key(&[s.a.clone(), s.b.clone()])).collect();
                r.check(
                    &format!("{name}/pencil_spread"),
                    "samples come from more than one hyperplane of the pencil",
                    Source::Trivial,
                    true,
                    members.len() > 1,
                );
            }
            Err(e) => r.error(&format!("{name}/member_y"), "sampled lines lie in Y", Source::Reference, true.into(), &e),
        }
        r.check_result(
            &format!("{name}/pencil_quadrics"),
            "Λ_{ω,x∧y} lies on every quadric Q_{ω∧(cx+dy)}",
            Source::Reference,
            true,
            residual::span_in_pencil_quadrics(&h, samples, derive_seed(opts.seed, 77)),
        );
    }
    // Over F_p a hypersurface of degree d holds about d/p of the points, so
    // the histogram uses a large prime.
    let big = opts.field.unwrap_or(FieldSpec::Prime { p: 1_000_003 });
    let points = opts.samples.map(|s| 20 * s).unwrap_or(1000);
    for (name, w) in residual_forms(big, &["n5", "n6-g2", "n7-ozeki", "n8-family"])? {
        let n = w.ctx().n();
        let h = ResidualHandle::random(&w, derive_seed(opts.seed, n as u64))?;
        let generic = if n % 2 == 1 { 1 } else { 2 };
        r.check_result(
            &format!("{name}/phi_kernel"),
            "kernel dimension of Φ_P at random points",
            Source::Reference,
            BTreeMap::from([(generic, points)]),
            residual::phi_kernel_histogram(&h, points, derive_seed(opts.seed, 5)),
        );
        let phi = residual::line_system_matrix(&h)?;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, 6));
        let kills = (0..50).all(|_| {
            let p = random_coords(h.ctx(), &mut rng);
            phi.eval(&p).mul_vec(&p).iter().all(Scalar::is_zero)
        });
        r.check(&format!("{name}/phi_point"), "Φ_P(P) = 0", Source::Trivial, true, kills);
    }
    Ok(r)
}

fn residual_odd(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field_or(1009);
    let mut r = VerificationReport::new("residual-odd", opts.seed, Some(field));
    let mut forms = residual_forms(field, &["n5", "n7-ozeki"])?;
    forms.push(("random/n9".into(), random_gc2_form(9, field, derive_seed(opts.seed, 9))?));
    for (name, w) in forms {
        let n = w.ctx().n();
        let h = ResidualHandle::random(&w, derive_seed(opts.seed, n as u64))?;
        match residual::g_degree_odd(&h, derive_seed(opts.seed, 11)) {
            Ok(g) => {
                r.check(&name, "degree of the hypersurface G", Source::Reference, (n - 1) / 2, g.degree);
                r.check(
                    &format!("{name}/contains"),
                    "sampled points of Π and of F_ω lie on G",
                    Source::Reference,
                    (g.points_checked, g.points_checked),
                    (g.pi_points_on_g, g.f_points_on_g),
                );
            }
            Err(e) => r.error(&name, "degree of the hypersurface G", Source::Reference, ((n - 1) / 2).into(), &e),
        }
    }
    Ok(r)
}

fn residual_even(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field_or(1009);
    let samples = opts.samples_or(5);
    let mut r = VerificationReport::new("residual-even", opts.seed, Some(field));
    for (name, w) in residual_forms(field, &["n4", "n6-g2", "n8-family"])? {
        let n = w.ctx().n();
        let h = ResidualHandle::random(&w, derive_seed(opts.seed, n as u64))?;
        let computed: Result<Vec<(usize, bool)>> = (0..samples as u64)
            .map(|i| residual::y_secancy_even(&h, derive_seed(opts.seed ^ 0x4556, i)).map(|s| (s.secant_count, s.meets_pi)))
            .collect();
        r.check_result(
            &name,
            "a line of Y meets F_ω in (n-2)/2 points and meets Π",
            Source::Reference,
            vec![((n - 2) / 2, true); samples],
            computed,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, 12));
        let pi_on_g = (0..8)
            .map(|_| {
                let coeffs: Vec<Scalar> = (0..h.pi.dim()).map(|_| Scalar::random(field, &mut rng)).collect();
                residual::g_membership(&h, &h.pi.combine(&coeffs)).map(|g| g.on_g)
            })
            .collect::<Result<Vec<bool>>>();
        r.check_result(&format!("{name}/pi_on_g"), "points of Π lie on G", Source::Reference, vec![true; 8], pi_on_g);
    }
    Ok(r)
}

fn residual_sing(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field_or(101);
    let mut r = VerificationReport::new("residual-sing", opts.seed, Some(field));
    for (name, w) in residual_forms(field, &["n5", "n6-g2", "n7-ozeki"])? {
        let n = w.ctx().n();
        let h = ResidualHandle::random(&w, derive_seed(opts.seed, n as u64))?;
        r.check_result(
            &name,
            "dimension of the singular locus of Y at a sampled point",
            Source::Reference,
            n - 5,
            residual::sing_y_dimension(&h, derive_seed(opts.seed, 13)).map(|s| s.dimension),
        );
    }
    Ok(r)
}

/// Outcome of one randomized convention check.
fn property<F>(count: usize, seed: u64, f: F) -> Result<usize>
where
    F: Fn(&mut ChaCha8Rng) -> Result<bool> + Sync,
{
    let failures: Result<Vec<bool>> = (0..count as u64)
        .into_par_iter()
        .map(|i| f(&mut ChaCha8Rng::seed_from_u64(derive_seed(seed, i))))
        .collect();
    Ok(failures?.iter().filter(|ok| !**ok).count())
}

fn conventions(opts: &SuiteOptions) -> Result<VerificationReport> {
    let field = opts.field_or(10007);
    let count = opts.samples_or(1000);
    let mut r = VerificationReport::new("conventions", opts.seed, Some(field));
    let ctx_of = |rng: &mut ChaCha8Rng, lo: usize| SpaceContext::new(rng.gen_range(lo..=8), field);

    let adj = property(count, derive_seed(opts.seed, 1), |rng| {
        let ctx = ctx_of(rng, 3)?;
        let k = rng.gen_range(1..=4.min(ctx.dim()));
        let j = rng.gen_range(0..=k);
        let f = random_tensor_with(ctx, k, Variance::Form, rng);
        let v = random_tensor_with(ctx, j, Variance::Vector, rng);
        let w = random_tensor_with(ctx, k - j, Variance::Vector, rng);
        Ok(contract(&f, &v)?.pair(&w)? == f.pair(&v.wedge(&w)?)?)
    })?;
    r.check("adjunction", "<contract(f, v), w> = <f, v∧w>", Source::Trivial, 0, adj);

    let pf = property(count, derive_seed(opts.seed, 2), |rng| {
        let d = 2 * rng.gen_range(1..=4);
        let mut m = Matrix::zeros(field, d, d);
        for i in 0..d {
            for j in i + 1..d {
                let c = Scalar::random(field, rng);
                m.set(j, i, -&c);
                m.set(i, j, c);
            }
        }
        let p = crate::pfaffian::pfaffian(&m)?;
        Ok(&p * &p == m.determinant()?)
    })?;
    r.check("pfaffian_square", "Pf(A)^2 = det A", Source::Trivial, 0, pf);

    if field.characteristic() != 2 {
        let half = Scalar::from_i64(field, 2).inv().unwrap();
        let q = property(count, derive_seed(opts.seed, 3), |rng| {
            let ctx = ctx_of(rng, 3)?;
            let eta = random_tensor_with(ctx, 4, Variance::Form, rng);
            let l = random_tensor_with(ctx, 2, Variance::Vector, rng);
            let rho = form_analysis::polarity_matrix(&eta);
            let dense = l.to_dense();
            let quad = degeneracy::dot(&rho.mul_vec(&dense), &dense);
            Ok(form_analysis::q_eta(&eta, &l)? == &half * &quad)
        })?;
        r.check("polarity", "q_η(L) = ½ Lᵀ ρ_η L", Source::Trivial, 0, q);
    }

    let mp = property(count, derive_seed(opts.seed, 4), |rng| {
        let ctx = ctx_of(rng, 3)?;
        let w = random_tensor_with(ctx, 3, Variance::Form, rng);
        let p = random_coords(ctx, rng);
        Ok(degeneracy::build_m(&w)?.eval(&p).mul_vec(&p).iter().all(Scalar::is_zero))
    })?;
    r.check("m_kills_point", "M_ω(P) P = 0", Source::Trivial, 0, mp);

    // Sparse sums of decomposables reach the lower strata.
    let star = property(count, derive_seed(opts.seed, 5), |rng| {
        let ctx = ctx_of(rng, 3)?;
        let w = if rng.gen_bool(0.5) {
            random_tensor_with(ctx, 3, Variance::Form, rng)
        } else {
            let terms = rng.gen_range(1..=3);
            sum_of_decomposables(ctx, 3, terms, rng)?
        };
        let p = random_coords(ctx, rng);
        let rank = degeneracy::rank_at(&degeneracy::build_m(&w)?, &p);
        let star = congruence::lines_through(&w, &p)?;
        let pt = AlternatingTensor::from_coords(ctx, Variance::Vector, &p);
        let lines_ok = star
            .directions
            .basis_vectors()
            .iter()
            .map(|f| congruence::member_x(&w, &pt.wedge(&AlternatingTensor::from_coords(ctx, Variance::Vector, f))?))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        Ok(lines_ok && star.star_dim() == ctx.n() as isize - 1 - rank as isize)
    })?;
    r.check("star_dimension", "lines through P form a P^{n-1-rk M_ω(P)}", Source::Trivial, 0, star);
    Ok(r)
}
