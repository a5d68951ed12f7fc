//! One-shot summary of a 3-form: ranks, genericity, spans, and the sampled invariants.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::congruence::{self, OrderReport};
use crate::degeneracy;
use crate::error::{Error, Result};
use crate::exterior::{random_tensor_with, AlternatingTensor, Variance};
use crate::field::FieldSpec;
use crate::form_analysis::{self, GenericityOptions, GenericityReport, SpanCodims};
use crate::report::SCHEMA_VERSION;
use crate::seeds::derive_seed;

#[derive(Clone, Debug, Serialize)]
pub struct SecantSummary {
    pub line: AlternatingTensor,
    pub degree: usize,
    pub distinct_roots: usize,
    pub rational_root_points: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub schema_version: u32,
    pub n: usize,
    pub field: FieldSpec,
    pub seed: u64,
    /// `j_1` and `j_2`: ranks of contraction by vectors and by bivectors.
    pub rank: usize,
    pub rank_bivectors: usize,
    pub genericity: GenericityReport,
    /// Codimensions for the seeded random pair `x`, `y`.
    pub span_codims: SpanCodims,
    pub rank_omega_x: usize,
    pub order: Option<OrderReport>,
    pub generic_m_rank: Option<usize>,
    pub m_rank_histogram: Option<BTreeMap<usize, usize>>,
    pub hypersurface_degree: Option<usize>,
    pub secant: Option<SecantSummary>,
    /// Sampled quantities that could not be computed, with the reason.
    pub skipped: BTreeMap<String, String>,
}

pub fn analyze(omega: &AlternatingTensor, samples: usize, seed: u64) -> Result<Analysis> {
    if omega.variance() != Variance::Form || omega.degree() != 3 {
        return Err(Error::Degree("analysis needs a 3-form".into()));
    }
    let ctx = omega.ctx();
    let n = ctx.n();
    let genericity = form_analysis::genericity(omega, GenericityOptions { samples: samples.max(10_000), exhaustive: true, seed })?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0));
    let (x, y) = loop {
        let x = random_tensor_with(ctx, 1, Variance::Form, &mut rng);
        let y = random_tensor_with(ctx, 1, Variance::Form, &mut rng);
        if !x.wedge(&y)?.is_zero() {
            break (x, y);
        }
    };
    let span_codims = form_analysis::span_lattice(omega, &x, &y)?.codims();
    let mut a = Analysis {
        schema_version: SCHEMA_VERSION,
        n,
        field: ctx.field(),
        seed,
        rank: genericity.rank_omega,
        rank_bivectors: form_analysis::j_rank(omega, 2)?,
        genericity,
        span_codims,
        rank_omega_x: form_analysis::restricted_rank(omega, &[&x])?,
        order: None,
        generic_m_rank: None,
        m_rank_histogram: None,
        hypersurface_degree: None,
        secant: None,
        skipped: BTreeMap::new(),
    };
    let mut skip = |key: &str, e: Error| {
        a.skipped.insert(key.to_string(), e.to_string());
    };
    match congruence::order(omega, samples, derive_seed(seed, 1)) {
        Ok(o) => a.order = Some(o),
        Err(e) => skip("order", e),
    }
    match degeneracy::stratify(omega, samples, derive_seed(seed, 2)) {
        Ok(s) => {
            a.generic_m_rank = Some(s.generic_rank);
            a.m_rank_histogram = Some(s.rank_histogram);
        }
        Err(e) => skip("m_rank", e),
    }
    if n % 2 == 0 {
        if ctx.field().modulus().is_none() {
            skip("hypersurface_degree", Error::NeedsPrimeField(2));
        } else {
            match degeneracy::hypersurface_degree_seeded(omega, derive_seed(seed, 3)) {
                Ok(d) => a.hypersurface_degree = Some(d),
                Err(e) => skip("hypersurface_degree", e),
            }
        }
    } else {
        let secant = congruence::sample_line_on_x(omega, derive_seed(seed, 4)).and_then(|l| {
            let p = degeneracy::secant_pencil(omega, &l)?;
            let rational_root_points = p
                .root_points()?
                .iter()
                .map(|v| crate::exterior::normalize_point(v).iter().map(|c| c.to_string()).collect())
                .collect();
            Ok(SecantSummary { line: l, degree: p.degree, distinct_roots: p.distinct_roots, rational_root_points })
        });
        match secant {
            Ok(s) => a.secant = Some(s),
            Err(e) => skip("secant", e),
        }
    }
    Ok(a)
}
