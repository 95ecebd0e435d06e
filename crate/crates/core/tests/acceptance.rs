//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use fusion_kk::catalog::{Builtin, Model, SU2_LEVELS};
use fusion_kk::fusion::fusion_matrix;
use fusion_kk::kk::{kasparov_product, properness_witness, verify_theorem2};
use fusion_kk::modular::{
    dimension_eigen_relation, enumerate_modular_invariants, verify_modular_data, verlinde_fusion, Classification,
    EnumerationOptions,
};
use fusion_kk::reports;
use num_rational::BigRational;

type Verdict = Result<String, String>;

fn catalog() -> Vec<Model> {
    Builtin::all().into_iter().map(|b| b.build().expect("builtin builds")).collect()
}

fn theorem2(models: &[Model]) -> Verdict {
    let mut slowest = Duration::ZERO;
    for m in models {
        let t = Instant::now();
        let r = verify_theorem2(&m.ring).map_err(|e| format!("{}: {e}", m.name))?;
        slowest = slowest.max(t.elapsed());
        if !r.passed || r.checks.len() != 5 {
            return Err(format!("{}: {}", m.name, r.summary()));
        }
    }
    if slowest > Duration::from_secs(1) {
        return Err(format!("slowest model took {slowest:?}"));
    }
    Ok(format!("{} models, 5 checks each, slowest {slowest:?}", models.len()))
}

fn properness(models: &[Model]) -> Verdict {
    for m in models {
        let w = properness_witness(&m.ring).map_err(|e| e.to_string())?;
        match (m.rank(), w) {
            (1, None) => {}
            (1, Some(_)) => return Err(format!("{}: witness for rank 1", m.name)),
            (_, None) => return Err(format!("{}: no witness", m.name)),
            (n, Some(w)) => {
                if w.a_times_b == w.b_times_a || !w.image_commutes {
                    return Err(format!("{}: bad witness", m.name));
                }
                let j: Vec<_> = (0..n).map(|i| fusion_matrix(&m.ring, i).unwrap()).collect();
                for x in 0..n {
                    for y in 0..n {
                        if kasparov_product(&j[x], &j[y]).unwrap() != kasparov_product(&j[y], &j[x]).unwrap() {
                            return Err(format!("{}: j({x}) and j({y}) do not commute", m.name));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{} models", models.len()))
}

fn sl2z(models: &[Model]) -> Verdict {
    const NEEDED: [&str; 5] = ["s_symmetric", "s_unitary", "charge_conjugation", "modular_relation", "t_diagonal"];
    for m in models {
        let md = m.modular.as_ref().ok_or_else(|| format!("{}: no modular data", m.name))?;
        let r = verify_modular_data(md);
        for name in NEEDED {
            if !r.check(name).is_some_and(|c| c.passed) {
                return Err(format!("{}: {name} failed", m.name));
            }
        }
    }
    Ok(format!("{} models", models.len()))
}

fn verlinde_round_trip(models: &[Model]) -> Verdict {
    let wanted = |m: &Model| m.name == "ising" || m.name == "fibonacci" || m.name.starts_with("su2_");
    let mut count = 0;
    for m in models.iter().filter(|m| wanted(m)) {
        let v = verlinde_fusion(m.modular.as_ref().unwrap()).map_err(|e| format!("{}: {e}", m.name))?;
        if v.tensor() != m.ring.tensor() {
            return Err(format!("{}: tensors differ", m.name));
        }
        count += 1;
    }
    if count != 2 + SU2_LEVELS.count() {
        return Err(format!("only {count} models checked"));
    }
    Ok(format!("{count} models"))
}

fn classify(b: Builtin, mult: i64, jobs: usize) -> Classification {
    let m = b.build().unwrap();
    let opts = EnumerationOptions { bound_multiplier: BigRational::from_integer(mult.into()), jobs };
    enumerate_modular_invariants(m.modular.as_ref().unwrap(), &opts).unwrap()
}

const COUNTS: [(Builtin, usize); 5] =
    [(Builtin::Ising, 1), (Builtin::Fibonacci, 1), (Builtin::Su2(2), 1), (Builtin::Su2(4), 2), (Builtin::Su2(10), 3)];

fn invariant_counts() -> Verdict {
    let mut parts = Vec::new();
    for (b, expected) in COUNTS {
        let t = Instant::now();
        let c = classify(b, 1, 1);
        if c.invariants.len() != expected {
            return Err(format!("{b}: {} invariants, expected {expected}", c.invariants.len()));
        }
        let md = b.build().unwrap().modular.unwrap();
        for inv in &c.invariants {
            let r = fusion_kk::modular::check_modular_invariant(&md, inv.matrix()).unwrap();
            if !r.passed {
                return Err(format!("{b}: {}", r.summary()));
            }
        }
        parts.push(format!("{b}={} ({:?})", expected, t.elapsed()));
    }
    Ok(parts.join(", "))
}

fn stability() -> Verdict {
    for (b, _) in COUNTS {
        let one = classify(b, 1, 1);
        let two = classify(b, 2, 1);
        if one.invariants != two.invariants {
            return Err(format!("{b}: multiplier 2 changes the set"));
        }
    }
    Ok("bound multiplier 1 and 2 agree".into())
}

fn eigen_relation(models: &[Model]) -> Verdict {
    for m in models {
        let r = dimension_eigen_relation(&m.ring, m.modular.as_ref().unwrap()).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("{}: {}", m.name, r.summary()));
        }
    }
    Ok(format!("{} models", models.len()))
}

fn determinism() -> Verdict {
    let m = Builtin::Su2(10).build().unwrap();
    let body = |jobs| {
        let c = classify(Builtin::Su2(10), 1, jobs);
        serde_json::to_string(&reports::invariants(&m, &c).unwrap().data).unwrap()
    };
    let (a, b) = (body(1), body(8));
    if a != b {
        return Err("jobs 1 and jobs 8 differ".into());
    }
    Ok(format!("{} identical bytes", a.len()))
}

fn main() {
    let models = catalog();
    let results: Vec<(&str, Verdict)> = vec![
        ("1 homomorphism suite", theorem2(&models)),
        ("2 properness", properness(&models)),
        ("3 SL(2,Z) relations", sl2z(&models)),
        ("4 Verlinde round trip", verlinde_round_trip(&models)),
        ("5 modular invariant counts", invariant_counts()),
        ("6 enumeration stability", stability()),
        ("7 dimension eigen-relation", eigen_relation(&models)),
        ("8 determinism across jobs", determinism()),
    ];
    let mut all = true;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS  {name}: {msg}"),
            Err(msg) => {
                all = false;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    if !all {
        eprintln!("acceptance criteria failed");
        std::process::exit(1);
    }
}
