use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::Model;
use crate::error::{Error, Result};
use crate::exact_arith::{format_rational, parse_rational, CycEntry, CyclotomicField, CyclotomicNumber};
use crate::fusion::FusionRing;
use crate::matrix::CycMatrix;
use crate::modular::ModularData;

/// On-disk model description. Rationals are strings "p" or "p/q".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub rank: usize,
    pub labels: Vec<String>,
    /// Sparse `[i, j, k, N_ij^k]`; missing entries are zero.
    pub fusion: Vec<(usize, usize, usize, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_charge: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_order: Option<usize>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<CycEntry>>>,
}

impl ModelFile {
    pub fn from_model(m: &Model) -> Self {
        let fusion = m
            .ring
            .quadruples()
            .into_iter()
            .map(|(i, j, k, v)| (i, j, k, u64::try_from(v).expect("multiplicity fits in u64")))
            .collect();
        let mut out = ModelFile {
            name: m.name.clone(),
            rank: m.rank(),
            labels: m.ring.labels().to_vec(),
            fusion,
            central_charge: None,
            weights: None,
            ambient_order: None,
            s: None,
        };
        if let Some(md) = &m.modular {
            out.central_charge = Some(format_rational(md.central_charge()));
            out.weights = Some(md.weights().iter().map(format_rational).collect());
            out.ambient_order = Some(md.ambient_order());
            out.s = Some(md.s().rows().map(|r| r.iter().map(CyclotomicNumber::to_entry).collect()).collect());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file serializes")
    }

    /// Builds the structures without running any verification.
    fn assemble(&self) -> Result<(FusionRing, Option<ModularData>)> {
        let n = self.rank;
        if self.labels.len() != n {
            return Err(Error::Parse(format!("rank is {n} but {} labels given", self.labels.len())));
        }
        let quads: Vec<(usize, usize, usize, BigInt)> =
            self.fusion.iter().map(|&(i, j, k, v)| (i, j, k, BigInt::from(v))).collect();
        let ring = FusionRing::from_quadruples(self.labels.clone(), &quads).map_err(|e| match e {
            Error::IndexOutOfRange { index, rank } => {
                Error::Parse(format!("fusion index {index} out of range for rank {rank}"))
            }
            other => other,
        })?;

        let Some(s_rows) = &self.s else {
            if self.weights.is_some() || self.central_charge.is_some() {
                return Err(Error::Parse("weights and central_charge require S".into()));
            }
            return Ok((ring, None));
        };
        let order = self.ambient_order.ok_or_else(|| Error::Parse("S requires ambient_order".into()))?;
        if order == 0 {
            return Err(Error::Parse("ambient_order must be positive".into()));
        }
        let c = self.central_charge.as_deref().ok_or_else(|| Error::Parse("S requires central_charge".into()))?;
        let c = parse_rational(c)?;
        let weights = self
            .weights
            .as_ref()
            .ok_or_else(|| Error::Parse("S requires weights".into()))?
            .iter()
            .map(|w| parse_rational(w))
            .collect::<Result<Vec<_>>>()?;
        if s_rows.len() != n || s_rows.iter().any(|r| r.len() != n) || weights.len() != n {
            return Err(Error::Parse(format!("S and weights must have size {n}")));
        }
        let f = CyclotomicField::new(order);
        let rows = s_rows
            .iter()
            .map(|r| r.iter().map(|e| CyclotomicNumber::from_entry(e, &f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let s = CycMatrix::from_rows(&f, rows)?;
        let md = ModularData::new(&f, s, c, weights).map_err(|e| Error::Parse(e.to_string()))?;
        Ok((ring, Some(md)))
    }

    pub fn into_model(self) -> Result<Model> {
        let (ring, md) = self.assemble()?;
        Model::verified(self.name, ring, md)
    }
}

/// Parses and fully verifies a model. Malformed input gives `Error::Parse`;
/// a well-formed model failing a check gives `Error::Verification`.
pub fn load_model<R: Read>(reader: R) -> Result<Model> {
    let file: ModelFile = serde_json::from_reader(reader)?;
    file.into_model()
}

pub fn load_model_from_path(path: impl AsRef<Path>) -> Result<Model> {
    let f = std::fs::File::open(path.as_ref())?;
    load_model(std::io::BufReader::new(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Builtin;

    #[test]
    fn every_builtin_round_trips() {
        for b in Builtin::all() {
            let m = b.build().unwrap();
            let json = ModelFile::from_model(&m).to_json();
            let back = load_model(json.as_bytes()).unwrap();
            assert_eq!(back, m, "{b}");
        }
    }

    #[test]
    fn broken_unit_law_is_a_verification_failure() {
        let json = r#"{"name":"bad","rank":2,"labels":["1","x"],
            "fusion":[[0,0,0,1],[0,0,1,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]]}"#;
        match load_model(json.as_bytes()) {
            Err(Error::Verification(rep)) => assert!(!rep.check("unit").unwrap().passed),
            other => panic!("expected verification failure, got {other:?}"),
        }
    }

    #[test]
    fn truncated_json_is_a_parse_error() {
        let json = r#"{"name":"bad","rank":2,"labels":["1","#;
        assert!(matches!(load_model(json.as_bytes()), Err(Error::Parse(_))));
    }

    #[test]
    fn schema_violations_are_parse_errors() {
        let cases = [
            r#"{"name":"x","rank":2,"labels":["1"],"fusion":[]}"#,
            r#"{"name":"x","rank":1,"labels":["1"],"fusion":[[0,0,3,1]]}"#,
            r#"{"name":"x","rank":1,"labels":["1"],"fusion":[[0,0,0,-1]]}"#,
            r#"{"name":"x","rank":1,"labels":["1"],"fusion":[[0,0,0,1]],"S":[[{"zeta_pow":0,"scale":"1"}]]}"#,
            r#"{"name":"x","rank":1,"labels":["1"],"fusion":[[0,0,0,1]],"ambient_order":4,
                "central_charge":"0","weights":["0"],"S":[[{"order":3,"coeffs":["1","0"]}]]}"#,
            r#"{"name":"x","rank":1,"labels":["1"],"fusion":[[0,0,0,1]],"ambient_order":1,
                "central_charge":"0.5","weights":["0"],"S":[[{"zeta_pow":0,"scale":"1"}]]}"#,
        ];
        for c in cases {
            assert!(matches!(load_model(c.as_bytes()), Err(Error::Parse(_))), "{c}");
        }
    }

    #[test]
    fn monomial_shorthand_and_smaller_orders_embed() {
        let json = r#"{"name":"one","rank":1,"labels":["1"],"fusion":[[0,0,0,1]],
            "central_charge":"0","weights":["0"],"ambient_order":24,
            "S":[[{"zeta_pow":0,"scale":"1"}]]}"#;
        let m = load_model(json.as_bytes()).unwrap();
        assert_eq!(m.modular.unwrap().ambient_order(), 24);
    }

    #[test]
    fn bad_s_is_a_verification_failure() {
        let json = r#"{"name":"one","rank":1,"labels":["1"],"fusion":[[0,0,0,1]],
            "central_charge":"0","weights":["0"],"ambient_order":4,
            "S":[[{"zeta_pow":0,"scale":"2"}]]}"#;
        assert!(matches!(load_model(json.as_bytes()), Err(Error::Verification(_))));
    }
}
