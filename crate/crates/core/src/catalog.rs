//! Named 3-forms with the claims the verification suites check against them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{AlternatingTensor, SpaceContext, Variance};
use crate::field::{FieldSpec, Scalar};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated in the reference literature for this form.
    Reference,
    /// Immediate from the definitions.
    Trivial,
    /// Computed by an independent oracle.
    Oracle,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub value: i64,
    pub source: Source,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    /// Sorted index triples with integer coefficients.
    pub terms: Vec<([usize; 3], i64)>,
    pub expected: BTreeMap<String, Expected>,
}

impl CatalogEntry {
    pub fn expected(&self, claim: &str) -> Option<i64> {
        self.expected.get(claim).map(|e| e.value)
    }

    pub fn form(&self, field: FieldSpec) -> Result<AlternatingTensor> {
        let ctx = SpaceContext::new(self.n, field)?;
        let mut t = AlternatingTensor::zero(ctx, 3, Variance::Form);
        for (idx, c) in &self.terms {
            let m = AlternatingTensor::monomial(ctx, Variance::Form, idx)?.scale(&Scalar::from_i64(field, *c));
            t = t.add(&m)?;
        }
        Ok(t)
    }
}

const NAMES: [&str; 11] =
    ["n3", "n4", "n5", "n5-tangent", "n6-g2", "n7-ozeki", "n7-djokovic", "n8-family", "gen9", "gen10", "gen11"];

pub fn list() -> Vec<&'static str> {
    NAMES.to_vec()
}

fn triples(ts: &[[usize; 3]]) -> Vec<([usize; 3], i64)> {
    ts.iter().map(|t| (*t, 1)).collect()
}

fn claims(list: &[(&str, i64, Source)]) -> BTreeMap<String, Expected> {
    list.iter().map(|(k, v, s)| (k.to_string(), Expected { value: *v, source: *s })).collect()
}

/// Claims shared by every general form of dimension n.
fn general_claims(n: usize) -> Vec<(&'static str, i64, Source)> {
    let n_i = n as i64;
    let mut c = vec![
        ("rank", n_i + 1, Source::Reference),
        ("order", (n % 2) as i64, Source::Reference),
        ("span_codim", n_i + 1, Source::Reference),
    ];
    if n % 2 == 0 {
        c.push(("fundamental_degree", n_i / 2 - 1, Source::Reference));
    } else {
        c.push(("secant_degree", (n_i - 1) / 2, Source::Reference));
    }
    if (5..=7).contains(&n) {
        c.push(("quadrics_through_span", n_i + 1, Source::Reference));
    }
    c
}

/// The four-parameter family for n = 8.
pub fn n8_family(lambda: [i64; 4]) -> CatalogEntry {
    let p: [[[usize; 3]; 3]; 4] = [
        [[0, 1, 2], [3, 4, 5], [6, 7, 8]],
        [[0, 3, 6], [1, 4, 7], [2, 5, 8]],
        [[0, 4, 8], [1, 5, 6], [2, 3, 7]],
        [[0, 5, 7], [1, 3, 8], [2, 4, 6]],
    ];
    let terms = p
        .iter()
        .zip(lambda)
        .filter(|(_, l)| *l != 0)
        .flat_map(|(ts, l)| ts.iter().map(move |t| (*t, l)))
        .collect();
    CatalogEntry { name: "n8-family".into(), n: 8, terms, expected: claims(&general_claims(8)) }
}

/// The standard representative of a form with `j_2(ω) = n + 1`, chosen by `n + 1 mod 3`.
pub fn general_representative(n: usize) -> Result<CatalogEntry> {
    let blocks = |last: usize| (0..last / 3).map(|k| [3 * k, 3 * k + 1, 3 * k + 2]).collect::<Vec<_>>();
    let ts = match (n + 1) % 3 {
        0 => blocks(n + 1),
        1 if n > 3 => {
            let mut t = blocks(n);
            t.push([0, 3, n]);
            t
        }
        2 if n > 4 => {
            let mut t = blocks(n - 1);
            t.push([0, 3, n - 1]);
            t.push([1, 4, n]);
            t
        }
        _ => return Err(Error::Unknown(format!("standard representative for n = {n}"))),
    };
    // These sparse representatives have the full rank but fail the stronger
    // pointwise genericity, so only rank and span claims apply.
    let n_i = n as i64;
    let list = [("rank", n_i + 1, Source::Reference), ("span_codim", n_i + 1, Source::Reference)];
    Ok(CatalogEntry { name: format!("gen{n}"), n, terms: triples(&ts), expected: claims(&list) })
}

pub fn get(name: &str) -> Result<(AlternatingTensor, CatalogEntry)> {
    let entry = entry(name)?;
    Ok((entry.form(FieldSpec::Rational)?, entry))
}

/// As [`get`], with coefficients read in `field`.
pub fn get_in(name: &str, field: FieldSpec) -> Result<(AlternatingTensor, CatalogEntry)> {
    let entry = entry(name)?;
    Ok((entry.form(field)?, entry))
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    use Source::*;
    let make = |n: usize, ts: &[[usize; 3]], list: Vec<(&str, i64, Source)>| CatalogEntry {
        name: name.to_string(),
        n,
        terms: triples(ts),
        expected: claims(&list),
    };
    Ok(match name {
        "n3" => make(3, &[[1, 2, 3]], vec![("rank", 3, Reference), ("order", 1, Reference)]),
        "n4" => make(
            4,
            &[[0, 1, 2], [0, 3, 4]],
            vec![
                ("rank", 5, Reference),
                ("order", 0, Reference),
                ("fundamental_degree", 1, Reference),
                ("tangent_dim", 3, Reference),
            ],
        ),
        "n5" => {
            let mut c = general_claims(5);
            c.push(("recover_dim", 2, Oracle));
            c.push(("tangent_dim", 4, Reference));
            make(5, &[[0, 1, 2], [3, 4, 5]], c)
        }
        "n5-tangent" => make(5, &[[0, 1, 2], [2, 3, 4], [0, 4, 5]], vec![("rank", 6, Reference)]),
        "n6-g2" => {
            let mut c = general_claims(6);
            c.push(("recover_dim", 1, Reference));
            make(6, &[[1, 2, 3], [4, 5, 6], [0, 1, 4], [0, 2, 5], [0, 3, 6]], c)
        }
        "n7-ozeki" => {
            let mut c = general_claims(7);
            c.push(("recover_dim", 1, Reference));
            c.push(("tangent_dim", 6, Reference));
            make(7, &[[0, 1, 2], [0, 3, 4], [1, 3, 5], [1, 6, 7], [2, 3, 6], [2, 5, 7], [4, 5, 6]], c)
        }
        "n7-djokovic" => {
            make(7, &[[0, 1, 3], [0, 2, 3], [1, 4, 5], [2, 6, 7], [0, 4, 6], [3, 5, 7]], general_claims(7))
        }
        "n8-family" => n8_family([1, 1, 1, 1]),
        _ => match name.strip_prefix("gen").and_then(|s| s.parse::<usize>().ok()) {
            Some(n) if (9..=11).contains(&n) => general_representative(n)?,
            _ => return Err(Error::Unknown(format!("catalog form '{name}'"))),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing() {
        let l = list();
        assert!(l.contains(&"n5") && l.contains(&"n7-ozeki") && l.len() >= 9);
        for name in l {
            let (w, e) = get(name).unwrap();
            assert_eq!(w.ctx().n(), e.n);
            assert_eq!(w.num_terms(), e.terms.len());
        }
        assert!(get("n99").is_err());
    }

    #[test]
    fn standard_representatives() {
        let g = general_representative(10).unwrap();
        assert_eq!(g.terms.last().unwrap().0, [1, 4, 10]);
        let g = general_representative(9).unwrap();
        assert_eq!(g.terms.last().unwrap().0, [0, 3, 9]);
        assert_eq!(general_representative(11).unwrap().terms.len(), 4);
    }
}
