//! JSON input documents and exact rational serialization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntVector;
use crate::poly::Poly;
use crate::zonotope::{make_zonotope, Zonotope};

/// `{"dim": 3, "generators": [[1,1,0], ...], "translate": ["1/2", ...], "merge_parallel": false}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZonotopeDocument {
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translate: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub merge_parallel: Option<bool>,
}

impl ZonotopeDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    /// Builds the zonotope; `force_merge` merges parallel generators even when
    /// the document does not ask for it.
    pub fn to_zonotope(&self, force_merge: bool) -> Result<Zonotope> {
        if self.dim == 0 {
            return Err(Error::arg("dim must be positive"));
        }
        let generators = self
            .generators
            .iter()
            .map(|g| {
                if g.len() != self.dim {
                    Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: g.len(),
                    })
                } else {
                    Ok(IntVector::from_i64s(g))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let translate = self
            .translate
            .as_ref()
            .map(|t| t.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .transpose()?;
        make_zonotope(
            self.dim,
            generators,
            translate,
            force_merge || self.merge_parallel.unwrap_or(false),
        )
    }

    /// The translate is written only when nonzero.
    pub fn from_zonotope(z: &Zonotope) -> Result<Self> {
        let generators = z
            .generator_list()
            .iter()
            .map(IntVector::to_i64s)
            .collect::<Result<Vec<_>>>()?;
        let translate = z
            .translate()
            .iter()
            .any(|t| !t.is_zero())
            .then(|| rationals_to_strings(z.translate()));
        Ok(ZonotopeDocument {
            dim: z.dim(),
            generators,
            translate,
            merge_parallel: None,
        })
    }
}

/// Parses `"p"` or `"p/q"` with `q != 0`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let parse_int = |t: &str| -> Result<BigInt> {
        if t.is_empty() || t.starts_with('+') || t.contains(char::is_whitespace) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
    }
}

/// Canonical strings: reduced, positive denominator, `"p"` when integral.
pub fn rationals_to_strings(xs: &[BigRational]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// Ascending coefficients `c_0, ..., c_len-1`, padded with zeros.
pub fn poly_to_strings(p: &Poly, len: usize) -> Vec<String> {
    (0..len.max(p.coeffs().len())).map(|k| p.coeff(k).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("6/4").unwrap().to_string(), "3/2");
        assert_eq!(parse_rational("3/-6").unwrap().to_string(), "-1/2");
        assert_eq!(parse_rational("-7").unwrap().to_string(), "-7");
        assert_eq!(parse_rational("0/5").unwrap().to_string(), "0");
        for bad in ["", "1/0", "a", "1/2/3", " 1", "+1", "1/"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn document_round_trip() {
        let text = r#"{"dim":3,"generators":[[1,1,0],[-1,1,0],[1,1,2]],"translate":["1/2","0","-3"]}"#;
        let doc = ZonotopeDocument::from_json(text).unwrap();
        assert_eq!(doc.to_json(), text);
        let z = doc.to_zonotope(false).unwrap();
        assert_eq!(ZonotopeDocument::from_zonotope(&z).unwrap(), doc);
    }

    #[test]
    fn document_errors() {
        assert!(matches!(ZonotopeDocument::from_json("{"), Err(Error::Parse(_))));
        assert!(ZonotopeDocument::from_json(r#"{"dim":2,"generators":[],"extra":1}"#).is_err());
        let doc = ZonotopeDocument::from_json(r#"{"dim":2,"generators":[[1,0,0]]}"#).unwrap();
        assert!(matches!(doc.to_zonotope(false), Err(Error::DimensionMismatch { .. })));
        let doc = ZonotopeDocument::from_json(r#"{"dim":1,"generators":[[1]],"translate":["x"]}"#).unwrap();
        assert!(matches!(doc.to_zonotope(false), Err(Error::Parse(_))));
    }

    #[test]
    fn merge_flag() {
        let doc = ZonotopeDocument::from_json(r#"{"dim":1,"generators":[[2],[-1]],"merge_parallel":true}"#).unwrap();
        let z = doc.to_zonotope(false).unwrap();
        assert_eq!(z.num_generators(), 1);
        assert_eq!(z.translate()[0], BigRational::from_integer((-1).into()));
        assert_eq!(poly_to_strings(&Poly::from_i64s(&[1, 3]), 3), ["1", "3", "0"]);
    }
}
