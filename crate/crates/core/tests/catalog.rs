use threeform::catalog::{self, Source};
use threeform::form_analysis::{genericity, j_rank, GenericityOptions};
use threeform::formfile::{parse_form, write_form};
use threeform::verify::{run, SuiteOptions};
use threeform::{exterior::random_tensor, FieldSpec, SpaceContext, Variance};

#[test]
fn named_entries() {
    let (w, e) = catalog::get("n6-g2").unwrap();
    assert_eq!((e.expected("order"), e.expected("fundamental_degree")), (Some(0), Some(2)));
    assert_eq!(w.num_terms(), 5);

    let (w, e) = catalog::get("n3").unwrap();
    assert_eq!(w.coeff_of(&[1, 2, 3]), w.ctx().one());
    assert_eq!((j_rank(&w, 1).unwrap(), e.expected("rank")), (3, Some(3)));

    let (_, e) = catalog::get("n8-family").unwrap();
    assert_eq!(e.terms.len(), 12);
    assert_eq!(catalog::n8_family([1, 0, 2, 0]).terms.len(), 6);
    assert!(matches!(catalog::get("n42"), Err(threeform::Error::Unknown(_))));
}

#[test]
fn every_entry_round_trips_through_a_form_file() {
    for name in catalog::list() {
        for field in [FieldSpec::Rational, FieldSpec::Prime { p: 101 }] {
            let (w, _) = catalog::get_in(name, field).unwrap();
            let text = write_form(&w).unwrap();
            let back = parse_form(&text).unwrap();
            assert_eq!(back, w, "{name}");
            assert_eq!(write_form(&back).unwrap(), text, "{name}");
        }
    }
}

#[test]
fn every_claim_is_checked_by_the_catalog_suite() {
    let report = run("catalog", &SuiteOptions { seed: 3, ..Default::default() }).unwrap();
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    for name in catalog::list() {
        let entry = catalog::entry(name).unwrap();
        for claim in entry.expected.keys() {
            let id = format!("{name}/{claim}");
            assert!(report.claims.iter().any(|c| c.id == id), "{id}");
        }
    }
    let sources: Vec<Source> = report.claims.iter().map(|c| c.source).collect();
    assert!(sources.contains(&Source::Reference) && sources.contains(&Source::Trivial));
}

#[test]
fn random_forms_of_dimension_nine_have_full_rank() {
    let c = SpaceContext::new(9, FieldSpec::Prime { p: 1009 }).unwrap();
    let full = (0..100u64)
        .filter(|&s| {
            let w = random_tensor(c, 3, Variance::Form, s).unwrap();
            let g = genericity(&w, GenericityOptions { samples: 0, exhaustive: false, seed: s }).unwrap();
            g.gc2
        })
        .count();
    assert_eq!(full, 100);
}
