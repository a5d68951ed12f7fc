//! JSON form files:
//! `{"n": 5, "field": {"kind": "rational"}, "terms": [{"indices": [0,1,2], "coeff": "1"}]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{AlternatingTensor, IndexSet, SpaceContext, Variance};
use crate::field::{FieldSpec, Scalar};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Text(String),
    Int(i64),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Term {
    indices: Vec<usize>,
    coeff: Coeff,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    n: usize,
    field: FieldSpec,
    terms: Vec<Term>,
}

/// Parses a form file into a 3-form. Errors name the offending term.
pub fn parse_form(text: &str) -> Result<AlternatingTensor> {
    let file: FormFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let ctx = SpaceContext::new(file.n, file.field)?;
    let mut omega = AlternatingTensor::zero(ctx, 3, Variance::Form);
    let mut seen = std::collections::BTreeSet::new();
    for (k, term) in file.terms.iter().enumerate() {
        let idx = &term.indices;
        let name = format!("term {k} (indices {idx:?})");
        if idx.len() != 3 {
            return Err(Error::Parse(format!("{name}: expected 3 indices")));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("{name}: indices must be strictly increasing")));
        }
        if idx[2] > file.n {
            return Err(Error::Parse(format!("{name}: index out of range 0..={}", file.n)));
        }
        if !seen.insert(idx.clone()) {
            return Err(Error::Parse(format!("{name}: repeated term")));
        }
        let c = match &term.coeff {
            Coeff::Text(s) => Scalar::parse(file.field, s),
            Coeff::Int(i) => Ok(Scalar::from_i64(file.field, *i)),
        }
        .map_err(|e| Error::Parse(format!("{name}: {e}")))?;
        let m = AlternatingTensor::from_terms(ctx, 3, Variance::Form, [(idx.clone(), c)])?;
        omega = omega.add(&m)?;
    }
    Ok(omega)
}

/// Canonical form-file text: terms in basis order, coefficients in canonical form.
pub fn write_form(omega: &AlternatingTensor) -> Result<String> {
    if omega.variance() != Variance::Form || omega.degree() != 3 {
        return Err(Error::Degree("form files hold 3-forms".into()));
    }
    let ctx = omega.ctx();
    let terms = omega
        .terms()
        .map(|(set, c): (&IndexSet, &Scalar)| Term { indices: set.indices(), coeff: Coeff::Text(c.to_string()) })
        .collect();
    let file = FormFile { n: ctx.n(), field: ctx.field(), terms };
    let mut s = serde_json::to_string_pretty(&file).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Reads a rational form in another field; a form already in `field` is returned unchanged.
pub fn change_field(omega: &AlternatingTensor, field: FieldSpec) -> Result<AlternatingTensor> {
    let ctx = omega.ctx();
    if ctx.field() == field {
        return Ok(omega.clone());
    }
    if ctx.field() != FieldSpec::Rational {
        return Err(Error::FieldMismatch(ctx.field(), field));
    }
    let target = SpaceContext::new(ctx.n(), field)?;
    let terms = omega
        .terms()
        .map(|(set, c)| Ok((set.indices(), Scalar::from_rational(field, c.as_rational().unwrap())?)))
        .collect::<Result<Vec<_>>>()?;
    AlternatingTensor::from_terms(target, omega.degree(), omega.variance(), terms)
}

pub fn read_form_file(path: &std::path::Path) -> Result<AlternatingTensor> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_form(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeated_indices_by_term() {
        let text = r#"{"n": 5, "field": {"kind": "rational"},
            "terms": [{"indices": [0,1,2], "coeff": "1"}, {"indices": [3,3,4], "coeff": "2"}]}"#;
        let err = parse_form(text).unwrap_err().to_string();
        assert!(err.contains("term 1") && err.contains("[3, 3, 4]"), "{err}");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_form("{\"n\": 5,\n \"field\": }").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn round_trip() {
        let text = r#"{"n": 4, "field": {"kind": "prime", "p": 101},
            "terms": [{"indices": [0,3,4], "coeff": "-1"}, {"indices": [0,1,2], "coeff": "1/2"}]}"#;
        let w = parse_form(text).unwrap();
        assert_eq!(w.coeff_of(&[0, 3, 4]).to_string(), "100");
        assert_eq!(w.coeff_of(&[0, 1, 2]).to_string(), "51");
        let out = write_form(&w).unwrap();
        assert_eq!(parse_form(&out).unwrap(), w);
        assert_eq!(write_form(&parse_form(&out).unwrap()).unwrap(), out);
    }

    #[test]
    fn reduction_mod_p() {
        let text = r#"{"n": 3, "field": {"kind": "rational"}, "terms": [{"indices": [1,2,3], "coeff": "-1/3"}]}"#;
        let w = parse_form(text).unwrap();
        let r = change_field(&w, FieldSpec::prime(7).unwrap()).unwrap();
        assert_eq!(r.coeff_of(&[1, 2, 3]).to_string(), "2");
        assert!(change_field(&r, FieldSpec::prime(5).unwrap()).is_err());
        let bad = parse_form(r#"{"n": 3, "field": {"kind": "rational"}, "terms": [{"indices": [1,2,3], "coeff": "1/7"}]}"#);
        assert!(change_field(&bad.unwrap(), FieldSpec::prime(7).unwrap()).is_err());
    }
}
