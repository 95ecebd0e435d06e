use fusion_kk::catalog::{Builtin, Model, ModelFile};
use fusion_kk::exact_arith::cyc_to_float;
use fusion_kk::fusion::{dual, fusion_matrix, KRingElement};
use fusion_kk::kk::{act, kasparov_product, kk_from_element, KKClass};
use fusion_kk::matrix::IntMatrix;
use fusion_kk::modular::{commutant_basis, enumerate_modular_invariants, EnumerationOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn catalog() -> Vec<Model> {
    Builtin::all().into_iter().map(|b| b.build().unwrap()).collect()
}

#[test]
fn fusion_matrices_multiply_like_sectors() {
    for m in catalog() {
        let n = m.rank();
        let mats: Vec<IntMatrix> = (0..n).map(|i| fusion_matrix(&m.ring, i).unwrap().into_matrix()).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = mats[i].mul(&mats[j]).unwrap();
                let mut rhs = IntMatrix::zeros(n);
                for (k, mk) in mats.iter().enumerate() {
                    rhs = rhs.add(&mk.scale(m.ring.multiplicity(i, j, k))).unwrap();
                }
                assert_eq!(lhs, rhs, "{} i={i} j={j}", m.name);
                assert_eq!(lhs, mats[j].mul(&mats[i]).unwrap(), "{} commutativity", m.name);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                assert_ne!(mats[i], mats[j], "{} faithfulness", m.name);
            }
        }
    }
}

#[test]
fn frobenius_reciprocity() {
    for m in catalog() {
        let n = m.rank();
        for i in 0..n {
            let di = dual(&m.ring, i).unwrap();
            for j in 0..n {
                for k in 0..n {
                    assert_eq!(m.ring.multiplicity(i, j, k), m.ring.multiplicity(di, k, j), "{}", m.name);
                }
            }
        }
    }
}

#[test]
fn every_builtin_survives_serialization() {
    for m in catalog() {
        let json = ModelFile::from_model(&m).to_json();
        assert_eq!(fusion_kk::catalog::load_model(json.as_bytes()).unwrap(), m);
    }
}

#[test]
fn shipped_ising_file_matches_builtin() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/ising.json");
    let m = fusion_kk::catalog::load_model_from_path(path).unwrap();
    assert_eq!(m, Builtin::Ising.build().unwrap());
}

#[test]
fn commutant_against_floating_point() {
    let expected = [1, 1, 1, 2, 1, 2, 1, 2, 1, 3];
    for (k, want) in (1..=10).zip(expected) {
        let md = Builtin::Su2(k).build().unwrap().modular.unwrap();
        let basis = commutant_basis(&md);
        assert_eq!(basis.len(), want, "k = {k}");
        let n = md.rank();
        let to_c = |x: &fusion_kk::exact_arith::CyclotomicNumber| {
            let z = cyc_to_float(x, 64);
            (z.re_f64(), z.im_f64())
        };
        let s: Vec<Vec<(f64, f64)>> = md.s().rows().map(|r| r.iter().map(to_c).collect()).collect();
        let t: Vec<Vec<(f64, f64)>> = md.t().rows().map(|r| r.iter().map(to_c).collect()).collect();
        for b in &basis {
            let z: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| num_traits::ToPrimitive::to_f64(b.get(i, j)).unwrap()).collect())
                .collect();
            for m in [&s, &t] {
                for i in 0..n {
                    for j in 0..n {
                        let (mut re, mut im) = (0.0, 0.0);
                        for c in 0..n {
                            re += z[i][c] * m[c][j].0 - m[i][c].0 * z[c][j];
                            im += z[i][c] * m[c][j].1 - m[i][c].1 * z[c][j];
                        }
                        assert!(re.abs() < 1e-9 && im.abs() < 1e-9, "k = {k}");
                    }
                }
            }
        }
    }
}

#[test]
fn invariants_are_closed_under_transpose() {
    for b in [Builtin::Su2(4), Builtin::Su2(10), Builtin::Z(5), Builtin::Z(12)] {
        let md = b.build().unwrap().modular.unwrap();
        let c = enumerate_modular_invariants(&md, &EnumerationOptions::default()).unwrap();
        let set: Vec<&IntMatrix> = c.invariants.iter().map(|i| i.matrix()).collect();
        for z in &set {
            assert!(set.contains(&&z.transpose()), "{b}");
        }
    }
}

#[test]
fn invariants_ignore_global_phase_of_t() {
    for b in [Builtin::Ising, Builtin::Su2(4), Builtin::Z(6)] {
        let md = b.build().unwrap().modular.unwrap();
        let base = enumerate_modular_invariants(&md, &EnumerationOptions::default()).unwrap();
        for k in [1, 5, -3] {
            let shifted = enumerate_modular_invariants(&md.with_global_phase(k), &EnumerationOptions::default()).unwrap();
            assert_eq!(base.invariants, shifted.invariants, "{b} phase {k}");
        }
    }
}

#[test]
fn enumeration_is_stable_under_larger_bounds() {
    for b in Builtin::all() {
        let md = b.build().unwrap().modular.unwrap();
        let one = enumerate_modular_invariants(&md, &EnumerationOptions::default()).unwrap();
        let opts = EnumerationOptions { bound_multiplier: BigRational::from_integer(2.into()), jobs: 2 };
        let two = enumerate_modular_invariants(&md, &opts).unwrap();
        assert_eq!(one.invariants, two.invariants, "{b}");
    }
}

fn small_matrix(n: usize) -> impl Strategy<Value = KKClass> {
    prop::collection::vec(-4i64..5, n * n).prop_map(move |v| {
        let rows: Vec<Vec<BigInt>> = v.chunks(n).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        KKClass::new(IntMatrix::from_rows(&rows).unwrap())
    })
}

fn small_vector(n: usize) -> impl Strategy<Value = KRingElement> {
    prop::collection::vec(-4i64..5, n).prop_map(|v| KRingElement::from_i64(&v))
}

proptest! {
    #[test]
    fn kasparov_product_is_associative(a in small_matrix(3), b in small_matrix(3), c in small_matrix(3)) {
        let left = kasparov_product(&kasparov_product(&a, &b).unwrap(), &c).unwrap();
        let right = kasparov_product(&a, &kasparov_product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn action_is_compatible_with_product(x in small_vector(3), a in small_matrix(3), b in small_matrix(3)) {
        let lhs = act(&act(&x, &a).unwrap(), &b).unwrap();
        let rhs = act(&x, &kasparov_product(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn j_is_injective_on_effective_classes(
        model in 0usize..24,
        x in prop::collection::vec(0i64..4, 13),
        y in prop::collection::vec(0i64..4, 13),
    ) {
        let m = Builtin::all()[model].build().unwrap();
        let n = m.rank();
        let (x, y) = (KRingElement::from_i64(&x[..n]), KRingElement::from_i64(&y[..n]));
        let (jx, jy) = (kk_from_element(&m.ring, &x).unwrap(), kk_from_element(&m.ring, &y).unwrap());
        prop_assert_eq!(x == y, jx == jy);
        // the vacuum column of j(x) recovers x
        let col: Vec<BigInt> = (0..n).map(|k| jx.matrix().get(k, 0).clone()).collect();
        prop_assert_eq!(col.as_slice(), x.coords());
        prop_assert!(jx.matrix().entries().iter().all(|v| v >= &BigInt::zero()));
    }
}
