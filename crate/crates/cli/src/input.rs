//! Reading polynomials, weights and family files from the command line.

use std::fs;
use std::path::Path;

use canweight::{parse_json_polynomial, parse_polynomial, Error, ParseOptions, PolynomialSupport, WeightVector};
use serde::Deserialize;

/// Largest `i` with a variable `x<i>` in the text, plus one.
pub fn infer_dim(text: &str) -> Option<usize> {
    let b = text.as_bytes();
    let mut best = None;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[start..j].parse::<usize>() {
                best = best.max(Some(k + 1));
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

/// Strip `#` comment lines. A `# dim: N` line sets the dimension.
fn strip_comments(text: &str) -> (String, Option<usize>) {
    let mut dim = None;
    let mut body = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(c) = t.strip_prefix('#') {
            if let Some(v) = c.trim().strip_prefix("dim:") {
                dim = v.trim().parse().ok();
            }
        } else if !t.is_empty() {
            body.push(t);
        }
    }
    (body.join(" "), dim)
}

/// A polynomial as typed: text with an explicit or inferred dimension.
pub fn polynomial_from_text(text: &str, dim: Option<usize>) -> Result<PolynomialSupport, Error> {
    let (body, header) = strip_comments(text);
    let dim = dim
        .or(header)
        .or_else(|| infer_dim(&body))
        .ok_or_else(|| Error::InvalidInput("cannot infer the dimension; pass --dim".into()))?;
    parse_polynomial(&body, dim)
}

/// `INPUT` is a file path when such a file exists, otherwise polynomial text.
/// Files ending in `.json` use the JSON polynomial format.
pub fn load_polynomial(input: &str, dim: Option<usize>) -> Result<PolynomialSupport, Error> {
    let path = Path::new(input);
    if path.is_file() {
        load_polynomial_file(path, dim)
    } else {
        polynomial_from_text(input, dim)
    }
}

pub fn load_polynomial_file(path: &Path, dim: Option<usize>) -> Result<PolynomialSupport, Error> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        let f = parse_json_polynomial(&text, ParseOptions::default())?;
        if let Some(d) = dim.filter(|&d| d != f.dim()) {
            return Err(Error::DimensionMismatch { expected: d, found: f.dim() });
        }
        Ok(f)
    } else {
        polynomial_from_text(&text, dim)
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// `2,1,2,1`, optionally wrapped in parentheses or brackets.
pub fn parse_weight(s: &str) -> Result<WeightVector, Error> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let coords = t
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("malformed weight {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    WeightVector::new(coords)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyField {
    Text(String),
    Json(canweight::parse::JsonPolynomial),
}

#[derive(Deserialize)]
struct RawMember {
    label: String,
    poly: PolyField,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    members: Vec<RawMember>,
    weight: Vec<i64>,
}

pub struct FamilyFile {
    pub members: Vec<(String, PolynomialSupport)>,
    pub weight: WeightVector,
}

/// `{"members":[{"label":"f","poly":...}],"weight":[...]}`. A `poly` is
/// either polynomial text or a JSON polynomial object.
pub fn load_family(path: &Path, dim: Option<usize>) -> Result<FamilyFile, Error> {
    let text = read(path)?;
    let raw: RawFamily =
        serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("family JSON: {e}")))?;
    let weight = WeightVector::new(raw.weight)?;
    let dim = dim.unwrap_or(weight.dim());
    let members = raw
        .members
        .into_iter()
        .map(|m| {
            let f = match m.poly {
                PolyField::Text(s) => parse_polynomial(&s, dim)?,
                PolyField::Json(j) => j.into_support(ParseOptions::default())?,
            };
            Ok((m.label, f))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(FamilyFile { members, weight })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_inference() {
        assert_eq!(infer_dim("x0^2 + x1^3 + x3"), Some(4));
        assert_eq!(infer_dim("x10"), Some(11));
        assert_eq!(infer_dim("3"), None);
        assert_eq!(polynomial_from_text("# dim: 5\nx0^2", None).unwrap().dim(), 5);
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weight("(2,1,2,1)").unwrap().coords(), &[2, 1, 2, 1]);
        assert_eq!(parse_weight(" 3, 2 ,1").unwrap().coords(), &[3, 2, 1]);
        assert!(parse_weight("2,a").is_err());
        assert!(parse_weight("").is_err());
    }
}
