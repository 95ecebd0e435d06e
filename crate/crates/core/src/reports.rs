//! JSON bodies for the command-line reports.
//!
//! Every exact quantity is a string: integers, "p/q" rationals, and
//! cyclotomic numbers as `{"order", "coeffs"}`. Floating-point values appear
//! only under an `approx` key. Objects are `serde_json::Map`, which keeps keys
//! sorted, so equal inputs give byte-identical output.

use serde_json::{json, Value};

use crate::catalog::Model;
use crate::error::Result;
use crate::exact_arith::{cyc_to_float, format_rational, CyclotomicNumber};
use crate::fusion::{fusion_matrix, quantum_dimensions, verify_fusion_ring, FusionRing};
use crate::kk::{kasparov_product, kk_from_sector, properness_witness, verify_theorem2, KKClass};
use crate::matrix::{CycMatrix, IntMatrix};
use crate::modular::{
    check_modular_invariant, dimension_eigen_relation, verify_modular_data, verlinde_fusion, Classification,
    VACUUM_CONVENTION,
};
use crate::verify::VerificationReport;

pub fn int_matrix(m: &IntMatrix) -> Value {
    json!(m.to_string_rows())
}

pub fn kk_class(c: &KKClass) -> Value {
    int_matrix(c.matrix())
}

pub fn cyclotomic(x: &CyclotomicNumber) -> Value {
    json!({
        "order": x.order().to_string(),
        "coeffs": x.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

pub fn cyc_matrix(m: &CycMatrix) -> Value {
    Value::Array(m.rows().map(|r| Value::Array(r.iter().map(cyclotomic).collect())).collect())
}

pub fn report(r: &VerificationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let mut o = json!({
                "name": c.name,
                "passed": c.passed,
                "instances": c.instances.to_string(),
                "failures": c.failures.to_string(),
            });
            if let Some(w) = &c.witness {
                let w: serde_json::Map<String, Value> =
                    w.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect();
                o["witness"] = Value::Object(w);
            }
            if let Some(d) = &c.detail {
                o["detail"] = json!(d);
            }
            o
        })
        .collect();
    json!({ "subject": r.subject, "passed": r.passed, "checks": checks })
}

fn model_header(m: &Model) -> Value {
    json!({ "name": m.name, "n": m.rank().to_string(), "labels": m.ring.labels() })
}

fn tensor(ring: &FusionRing) -> Value {
    Value::Array(
        ring.quadruples()
            .into_iter()
            .map(|(i, j, k, v)| json!([i.to_string(), j.to_string(), k.to_string(), v.to_string()]))
            .collect(),
    )
}

/// Result of a command: the data body and whether every check passed.
pub struct Outcome {
    pub data: Value,
    pub passed: bool,
}

pub fn verify(m: &Model) -> Result<Outcome> {
    let fusion = verify_fusion_ring(&m.ring);
    let mut passed = fusion.passed;
    let dims = quantum_dimensions(&m.ring);
    let mut data = json!({
        "model": model_header(m),
        "fusion": report(&fusion),
        "approx": {
            "quantum_dimensions": dims.iter().map(|d| d.mid_f64()).collect::<Vec<_>>(),
        },
    });
    if let Some(md) = &m.modular {
        let modular = verify_modular_data(md);
        let eigen = dimension_eigen_relation(&m.ring, md)?;
        passed &= modular.passed && eigen.passed;
        let d = md.dimensions()?;
        data["modular"] = json!({
            "ambient_order": md.ambient_order().to_string(),
            "central_charge": format_rational(md.central_charge()),
            "weights": md.weights().iter().map(format_rational).collect::<Vec<_>>(),
            "dimensions": d.iter().map(cyclotomic).collect::<Vec<_>>(),
            "report": report(&modular),
            "dimension_eigen_relation": report(&eigen),
        });
        data["approx"]["dimensions_from_s"] =
            json!(d.iter().map(|x| cyc_to_float(x, 64).re_f64()).collect::<Vec<_>>());
    }
    Ok(Outcome { data, passed })
}

pub fn eta(m: &Model, sector: usize) -> Result<Outcome> {
    let mat = fusion_matrix(&m.ring, sector)?;
    Ok(Outcome {
        data: json!({
            "model": model_header(m),
            "sector": m.ring.label(sector),
            "index": sector.to_string(),
            "convention": "(M_i)[k][j] = N_ij^k, acting on column vectors",
            "matrix": kk_class(&mat),
        }),
        passed: true,
    })
}

pub struct KkRequest {
    pub product: Option<(usize, usize)>,
    pub theorem2: bool,
    pub properness: bool,
}

pub fn kk(m: &Model, req: &KkRequest) -> Result<Outcome> {
    let n = m.rank();
    let classes: Vec<KKClass> = (0..n).map(|i| kk_from_sector(&m.ring, i)).collect::<Result<_>>()?;
    let mut passed = true;
    let mut data = json!({
        "model": model_header(m),
        "convention": "a x b = matrix(b) * matrix(a); x x a = matrix(a) * x",
        "classes": classes
            .iter()
            .enumerate()
            .map(|(i, c)| json!({ "sector": m.ring.label(i), "matrix": kk_class(c) }))
            .collect::<Vec<_>>(),
    });
    if let Some((a, b)) = req.product {
        let p = kasparov_product(&classes[a], &classes[b])?;
        data["product"] = json!({
            "a": m.ring.label(a),
            "b": m.ring.label(b),
            "matrix": kk_class(&p),
        });
    }
    if req.theorem2 {
        let r = verify_theorem2(&m.ring)?;
        passed &= r.passed;
        data["theorem2"] = report(&r);
    }
    if req.properness {
        data["properness"] = match properness_witness(&m.ring)? {
            None => Value::Null,
            Some(w) => {
                passed &= w.image_commutes && w.a_times_b != w.b_times_a;
                json!({
                    "a": kk_class(&w.a),
                    "b": kk_class(&w.b),
                    "a_times_b": kk_class(&w.a_times_b),
                    "b_times_a": kk_class(&w.b_times_a),
                    "image_commutes": w.image_commutes,
                })
            }
        };
    }
    Ok(Outcome { data, passed })
}

pub fn verlinde(m: &Model) -> Result<Outcome> {
    let md = m.require_modular()?;
    let v = verlinde_fusion(md)?;
    let n = m.rank();
    let mut diff = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, b) = (m.ring.multiplicity(i, j, k), v.multiplicity(i, j, k));
                if a != b {
                    diff.push(json!({
                        "i": i.to_string(), "j": j.to_string(), "k": k.to_string(),
                        "catalog": a.to_string(), "verlinde": b.to_string(),
                    }));
                }
            }
        }
    }
    let passed = diff.is_empty();
    Ok(Outcome {
        data: json!({
            "model": model_header(m),
            "verlinde_tensor": tensor(&v),
            "diff": diff,
            "matches_catalog": passed,
        }),
        passed,
    })
}

pub fn invariants(m: &Model, c: &Classification) -> Result<Outcome> {
    let md = m.require_modular()?;
    let mut passed = true;
    let list: Vec<Value> = c
        .invariants
        .iter()
        .map(|inv| {
            let r = check_modular_invariant(md, inv.matrix())?;
            passed &= r.passed;
            Ok(json!({
                "matrix": int_matrix(inv.matrix()),
                "kk_class": kk_class(&inv.kk_class()),
                "verified": r.passed,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(Outcome {
        data: json!({
            "model": model_header(m),
            "commutant_dim": c.commutant_dim.to_string(),
            "bound_multiplier": format_rational(&c.bound_multiplier),
            "bounds": int_matrix(&c.bounds),
            "vacuum_convention": VACUUM_CONVENTION,
            "count": c.invariants.len().to_string(),
            "invariants": list,
        }),
        passed,
    })
}

pub fn invariants_csv(m: &Model, c: &Classification) -> String {
    format!("model,invariant_count\n{},{}\n", m.name, c.invariants.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Builtin;
    use crate::modular::{enumerate_modular_invariants, EnumerationOptions};

    #[test]
    fn verify_body_has_only_string_numbers_outside_approx() {
        let m = Builtin::Ising.build().unwrap();
        let mut o = verify(&m).unwrap();
        assert!(o.passed);
        o.data.as_object_mut().unwrap().remove("approx");
        fn walk(v: &Value) {
            match v {
                Value::Number(n) => panic!("bare number {n}"),
                Value::Array(a) => a.iter().for_each(walk),
                Value::Object(o) => o.values().for_each(walk),
                _ => {}
            }
        }
        walk(&o.data);
    }

    #[test]
    fn eta_sigma_matrix() {
        let m = Builtin::Ising.build().unwrap();
        let o = eta(&m, 2).unwrap();
        assert_eq!(o.data["matrix"], json!([["0", "0", "1"], ["0", "0", "1"], ["1", "1", "0"]]));
    }

    #[test]
    fn invariants_csv_line() {
        let m = Builtin::Su2(4).build().unwrap();
        let c = enumerate_modular_invariants(m.modular.as_ref().unwrap(), &EnumerationOptions::default()).unwrap();
        assert_eq!(invariants_csv(&m, &c), "model,invariant_count\nsu2_4,2\n");
        let o = invariants(&m, &c).unwrap();
        assert!(o.passed);
        assert_eq!(o.data["count"], "2");
    }

    #[test]
    fn verlinde_matches_for_fibonacci() {
        let o = verlinde(&Builtin::Fibonacci.build().unwrap()).unwrap();
        assert!(o.passed);
        assert_eq!(o.data["diff"], json!([]));
    }
}
