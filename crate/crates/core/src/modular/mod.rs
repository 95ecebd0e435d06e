//! Exact modular data, the Verlinde formula and modular invariants.
//!
//! Sector indices are 0-based with the vacuum at 0, so the vacuum
//! normalization of a modular invariant reads Z_00 = 1.

mod commutant;
mod enumerate;

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use commutant::commutant_basis;
pub use enumerate::{enumerate_modular_invariants, Classification, EnumerationOptions, ModularInvariant};

use crate::error::{Error, Result};
use crate::exact_arith::{real_sign, root_of_unity, CyclotomicField, CyclotomicNumber};
use crate::fusion::{fusion_matrix, verify_fusion_ring, FusionRing, VACUUM};
use crate::matrix::{CycMatrix, IntMatrix};
use crate::verify::{Check, VerificationReport};

/// Stated in every report that mentions modular invariants.
pub const VACUUM_CONVENTION: &str = "0-indexed sectors; vacuum is index 0, so the vacuum condition is Z[0][0] = 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularData {
    field: Arc<CyclotomicField>,
    s: CycMatrix,
    t: CycMatrix,
    central_charge: BigRational,
    weights: Vec<BigRational>,
}

/// e^(2 pi i (h - c/24)).
fn t_entry(field: &Arc<CyclotomicField>, h: &BigRational, c: &BigRational) -> Result<CyclotomicNumber> {
    root_of_unity(field, &(h - c / BigRational::from_integer(24.into())))
}

impl ModularData {
    /// Builds T from the conformal weights and central charge; S is embedded
    /// into the ambient field.
    pub fn new(
        field: &Arc<CyclotomicField>,
        s: CycMatrix,
        central_charge: BigRational,
        weights: Vec<BigRational>,
    ) -> Result<Self> {
        let n = s.dim();
        if weights.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: weights.len() });
        }
        let s = CycMatrix::from_rows(field, s.rows().map(|r| r.to_vec()).collect())?;
        let diag = weights
            .iter()
            .map(|h| t_entry(field, h, &central_charge))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidModularData(e.to_string()))?;
        let t = CycMatrix::diagonal(field, diag)?;
        Ok(Self { field: field.clone(), s, t, central_charge, weights })
    }

    /// Assembles modular data from explicit S and T without deriving T.
    pub fn from_parts(
        s: CycMatrix,
        t: CycMatrix,
        central_charge: BigRational,
        weights: Vec<BigRational>,
    ) -> Result<Self> {
        let n = s.dim();
        for found in [t.dim(), weights.len()] {
            if found != n {
                return Err(Error::DimensionMismatch { expected: n, found });
            }
        }
        if s.field().order() != t.field().order() {
            return Err(Error::OrderMismatch(s.field().order(), t.field().order()));
        }
        Ok(Self { field: s.field().clone(), s, t, central_charge, weights })
    }

    pub fn rank(&self) -> usize {
        self.s.dim()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn ambient_order(&self) -> usize {
        self.field.order()
    }

    pub fn s(&self) -> &CycMatrix {
        &self.s
    }

    pub fn t(&self) -> &CycMatrix {
        &self.t
    }

    pub fn central_charge(&self) -> &BigRational {
        &self.central_charge
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    /// Same data with T multiplied by zeta_N^k.
    pub fn with_global_phase(&self, k: i64) -> Self {
        let phase = CyclotomicNumber::zeta_pow(&self.field, k);
        Self { t: self.t.scale(&phase).expect("same field"), ..self.clone() }
    }

    /// d_i = S_i0 / S_00.
    pub fn dimensions(&self) -> Result<Vec<CyclotomicNumber>> {
        let s00 = self.s.get(VACUUM, VACUUM).inv().map_err(|_| {
            Error::InvalidModularData("S_00 vanishes".into())
        })?;
        Ok((0..self.rank()).map(|i| self.s.get(i, VACUUM) * &s00).collect())
    }
}

fn compare_matrices(check: &mut Check, a: &CycMatrix, b: &CycMatrix) {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            check.record(a.get(i, j) == b.get(i, j), || vec![("i", i), ("j", j)]);
        }
    }
}

/// Checks every modular-data invariant exactly in Q(zeta_N).
pub fn verify_modular_data(md: &ModularData) -> VerificationReport {
    let n = md.rank();
    let f = &md.field;
    let s = &md.s;
    let t = &md.t;
    let id = CycMatrix::identity(f, n);

    let mut sym = Check::new("s_symmetric");
    compare_matrices(&mut sym, s, &s.transpose());

    let mut unitary = Check::new("s_unitary");
    compare_matrices(&mut unitary, &s.mul(&s.conj().transpose()).unwrap(), &id);

    let mut invertible = Check::new("s_invertible");
    let rank = s.rank();
    invertible.record(rank == n, Vec::new);
    let invertible = if rank == n { invertible } else { invertible.detail(format!("rank {rank} < {n}")) };

    let mut diag = Check::new("t_diagonal");
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            diag.record(t.get(i, j).is_zero(), || vec![("i", i), ("j", j)]);
        }
    }

    let mut weights = Check::new("t_weights");
    for (i, h) in md.weights.iter().enumerate() {
        match t_entry(f, h, &md.central_charge) {
            Ok(expect) => weights.record(*t.get(i, i) == expect, || vec![("i", i)]),
            Err(e) => weights.fail_with(format!("sector {i}: {e}")),
        }
    }

    let s2 = s.mul(s).unwrap();
    let mut conj = Check::new("charge_conjugation");
    for i in 0..n {
        let mut ones = 0;
        for j in 0..n {
            let x = s2.get(i, j);
            let ok = x.is_zero() || x.is_one();
            ones += x.is_one() as usize;
            conj.record(ok, || vec![("i", i), ("j", j)]);
        }
        conj.record(ones == 1, || vec![("row", i)]);
    }
    for j in 0..n {
        let ones = (0..n).filter(|&i| s2.get(i, j).is_one()).count();
        conj.record(ones == 1, || vec![("column", j)]);
    }
    compare_matrices(&mut conj, &s2.mul(&s2).unwrap(), &id);

    let mut modular = Check::new("modular_relation");
    let st = s.mul(t).unwrap();
    let st3 = st.mul(&st).unwrap().mul(&st).unwrap();
    compare_matrices(&mut modular, &st3, &s2);

    let mut positive = Check::new("positive_dimensions");
    let s00 = s.get(VACUUM, VACUUM);
    positive.record(real_sign(s00) == Some(Ordering::Greater), || vec![("i", VACUUM)]);
    match s00.inv() {
        Ok(inv) => {
            for i in 0..n {
                let d = s.get(i, VACUUM) * &inv;
                let excess = &d - &CyclotomicNumber::one(f);
                let ok = matches!(real_sign(&excess), Some(Ordering::Greater | Ordering::Equal));
                positive.record(ok, || vec![("i", i)]);
            }
        }
        Err(_) => positive.fail_with("S_00 vanishes"),
    }

    VerificationReport::new(
        format!("modular data (rank {n}, Q(zeta_{}))", f.order()),
        vec![
            sym.finish(),
            unitary.finish(),
            invertible.finish(),
            diag.finish(),
            weights.finish(),
            conj.finish(),
            modular.finish(),
            positive.finish(),
        ],
    )
}

/// Fusion rules from S: N_ij^k = sum_l S_il S_jl conj(S_kl) / S_0l.
///
/// Sector labels are the indices "0".."n-1". Fails unless every coefficient is
/// a nonnegative integer and the result is a valid fusion ring.
pub fn verlinde_fusion(md: &ModularData) -> Result<FusionRing> {
    let n = md.rank();
    let s = &md.s;
    let inv0: Vec<CyclotomicNumber> = (0..n)
        .map(|l| {
            s.get(VACUUM, l)
                .inv()
                .map_err(|_| Error::InvalidModularData(format!("S_0{l} vanishes")))
        })
        .collect::<Result<_>>()?;
    let scaled: Vec<Vec<CyclotomicNumber>> =
        (0..n).map(|j| (0..n).map(|l| s.get(j, l) * &inv0[l]).collect()).collect();
    let conj: Vec<Vec<CyclotomicNumber>> =
        (0..n).map(|k| (0..n).map(|l| s.get(k, l).conj()).collect()).collect();

    let mut tensor = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let q: Vec<CyclotomicNumber> = (0..n).map(|l| s.get(i, l) * &scaled[j][l]).collect();
            for k in 0..n {
                let sum = (0..n)
                    .filter(|&l| !q[l].is_zero())
                    .fold(CyclotomicNumber::zero(&md.field), |acc, l| &acc + &(&q[l] * &conj[k][l]));
                match sum.to_integer() {
                    Some(v) if !v.is_negative() => tensor.push(v),
                    _ => {
                        return Err(Error::InvalidModularData(format!(
                            "Verlinde coefficient N_{i}{j}^{k} = {sum} is not a nonnegative integer"
                        )))
                    }
                }
            }
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let ring = FusionRing::new(labels, tensor)?;
    let report = verify_fusion_ring(&ring);
    if !report.passed {
        return Err(Error::InvalidModularData(format!("Verlinde output: {}", report.summary())));
    }
    Ok(ring)
}

/// Modular invariance (ZS = SZ, ZT = TZ), positivity and Z_00 = 1.
pub fn check_modular_invariant(md: &ModularData, z: &IntMatrix) -> Result<VerificationReport> {
    let n = md.rank();
    if z.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: z.dim() });
    }
    let zc = z.to_cyclotomic(&md.field);
    let mut invariance = Check::new("modular_invariance");
    let mut first_failure = None;
    for (name, m) in [("S", &md.s), ("T", &md.t)] {
        let lhs = zc.mul(m)?;
        let rhs = m.mul(&zc)?;
        for i in 0..n {
            for j in 0..n {
                let ok = lhs.get(i, j) == rhs.get(i, j);
                if !ok && first_failure.is_none() {
                    first_failure = Some(name);
                }
                invariance.record(ok, || vec![("i", i), ("j", j)]);
            }
        }
    }
    if let Some(name) = first_failure {
        invariance = invariance.detail(format!("fails to commute with {name}"));
    }

    let mut positivity = Check::new("positivity");
    for i in 0..n {
        for j in 0..n {
            positivity.record(!z.get(i, j).is_negative(), || vec![("i", i), ("j", j)]);
        }
    }

    let mut vacuum = Check::new("vacuum");
    let z00 = z.get(VACUUM, VACUUM);
    vacuum.record(z00 == &BigInt::from(1), || vec![("i", VACUUM), ("j", VACUUM)]);
    if z00 != &BigInt::from(1) {
        vacuum = vacuum.detail(format!("Z[0][0] = {z00}"));
    }

    Ok(VerificationReport::new(
        format!("modular invariant ({VACUUM_CONVENTION})"),
        vec![invariance.finish(), positivity.finish(), vacuum.finish()],
    ))
}

/// M_i d = d_i d with d_j = S_j0 / S_00, for every sector i.
pub fn dimension_eigen_relation(ring: &FusionRing, md: &ModularData) -> Result<VerificationReport> {
    let n = ring.rank();
    if md.rank() != n {
        return Err(Error::DimensionMismatch { expected: n, found: md.rank() });
    }
    let d = md.dimensions()?;
    let mut check = Check::new("dimension_eigen_relation");
    for i in 0..n {
        let m = fusion_matrix(ring, i)?;
        for k in 0..n {
            let lhs = (0..n).fold(CyclotomicNumber::zero(&md.field), |acc, j| {
                let c = m.matrix().get(k, j);
                if c.is_zero() {
                    acc
                } else {
                    &acc + &d[j].scale_int(c)
                }
            });
            check.record(lhs == &d[i] * &d[k], || vec![("i", i), ("k", k)]);
        }
    }
    Ok(VerificationReport::new(format!("dimension eigenvectors (rank {n})"), vec![check.finish()]))
}
