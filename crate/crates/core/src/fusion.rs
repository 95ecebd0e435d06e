//! Fusion rings and the action of sectors on K_0 = Z^n.
//!
//! A sector i acts on K_0 by left multiplication with its fusion matrix,
//! `(M_i)_{kj} = N_{ij}^k`, on column vectors. The Grothendieck ring is Z^n
//! itself with the bilinearly extended fusion product, so virtual classes are
//! just vectors with negative coordinates.

use std::collections::BTreeSet;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::RealInterval;
use crate::kk::KKClass;
use crate::matrix::IntMatrix;
use crate::verify::{Check, VerificationReport};

/// Index of the vacuum sector in every ring.
pub const VACUUM: usize = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    /// N_{ij}^k at index (i * n + j) * n + k.
    tensor: Vec<BigInt>,
}

impl FusionRing {
    /// Builds a ring from a dense tensor. No axioms are checked here; see
    /// [`verify_fusion_ring`].
    pub fn new(labels: Vec<String>, tensor: Vec<BigInt>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if tensor.len() != n * n * n {
            return Err(Error::DimensionMismatch { expected: n * n * n, found: tensor.len() });
        }
        if let Some(pos) = tensor.iter().position(|x| x.is_negative()) {
            return Err(Error::Parse(format!("negative fusion multiplicity at flat index {pos}")));
        }
        Ok(Self { labels, tensor })
    }

    /// Builds a ring from sparse `(i, j, k, N_ij^k)` entries; absent entries are 0.
    pub fn from_quadruples(labels: Vec<String>, entries: &[(usize, usize, usize, BigInt)]) -> Result<Self> {
        let n = labels.len();
        let mut tensor = vec![BigInt::zero(); n * n * n];
        let mut seen = BTreeSet::new();
        for (i, j, k, v) in entries {
            for idx in [*i, *j, *k] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, rank: n });
                }
            }
            if !seen.insert((*i, *j, *k)) {
                return Err(Error::Parse(format!("duplicate fusion entry ({i}, {j}, {k})")));
            }
            tensor[(i * n + j) * n + k] = v.clone();
        }
        Self::new(labels, tensor)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn sector(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownSector(label.into()))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// N_{ij}^k.
    pub fn multiplicity(&self, i: usize, j: usize, k: usize) -> &BigInt {
        let n = self.rank();
        &self.tensor[(i * n + j) * n + k]
    }

    pub fn tensor(&self) -> &[BigInt] {
        &self.tensor
    }

    /// Nonzero entries in (i, j, k) order.
    pub fn quadruples(&self) -> Vec<(usize, usize, usize, BigInt)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.multiplicity(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }
}

/// Element of K_0 = Z^n in the sector basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KRingElement {
    coords: Vec<BigInt>,
}

impl KRingElement {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self { coords: coords.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        Self { coords: vec![BigInt::zero(); rank] }
    }

    /// The class of sector `i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut x = Self::zero(rank);
        x.coords[i] = BigInt::one();
        x
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_effective(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }
}

impl Add for &KRingElement {
    type Output = KRingElement;
    fn add(self, rhs: &KRingElement) -> KRingElement {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        KRingElement { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &KRingElement {
    type Output = KRingElement;
    fn sub(self, rhs: &KRingElement) -> KRingElement {
        self + &(-rhs)
    }
}

impl Neg for &KRingElement {
    type Output = KRingElement;
    fn neg(self) -> KRingElement {
        KRingElement { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

/// Checks unit law, commutativity, associativity and duality.
pub fn verify_fusion_ring(ring: &FusionRing) -> VerificationReport {
    let n = ring.rank();
    let nn = |i, j, k| ring.multiplicity(i, j, k);

    let mut unit = Check::new("unit");
    for j in 0..n {
        for k in 0..n {
            let expect = if j == k { BigInt::one() } else { BigInt::zero() };
            unit.record(*nn(VACUUM, j, k) == expect, || vec![("j", j), ("k", k)]);
        }
    }

    let mut comm = Check::new("commutativity");
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                comm.record(nn(i, j, k) == nn(j, i, k), || vec![("i", i), ("j", j), ("k", k)]);
            }
        }
    }

    let mut assoc = Check::new("associativity");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let left: BigInt = (0..n).map(|m| nn(i, j, m) * nn(m, k, l)).sum();
                    let right: BigInt = (0..n).map(|m| nn(j, k, m) * nn(i, m, l)).sum();
                    assoc.record(left == right, || vec![("i", i), ("j", j), ("k", k), ("l", l)]);
                }
            }
        }
    }

    let mut duality = Check::new("duality");
    let mut duals = vec![None; n];
    for i in 0..n {
        let hits: Vec<usize> = (0..n).filter(|&j| !nn(i, j, VACUUM).is_zero()).collect();
        match hits.as_slice() {
            [j] if nn(i, *j, VACUUM).is_one() => {
                duals[i] = Some(*j);
                duality.record(true, Vec::new);
            }
            [j] => duality.record(false, || vec![("i", i), ("j", *j)]),
            [] => duality.record(false, || vec![("i", i)]),
            [a, b, ..] => duality.record(false, || vec![("i", i), ("dual_a", *a), ("dual_b", *b)]),
        }
    }
    for i in 0..n {
        if let Some(d) = duals[i] {
            if let Some(dd) = duals[d] {
                duality.record(dd == i, || vec![("i", i), ("dual", d)]);
            }
        }
    }

    VerificationReport::new(
        format!("fusion ring (rank {n})"),
        vec![unit.finish(), comm.finish(), assoc.finish(), duality.finish()],
    )
}

/// The matrix of eta_[i] on K_0: `(M_i)_{kj} = N_{ij}^k`.
pub fn fusion_matrix(ring: &FusionRing, i: usize) -> Result<KKClass> {
    ring.check_index(i)?;
    let n = ring.rank();
    let mut m = IntMatrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            m.set(k, j, ring.multiplicity(i, j, k).clone());
        }
    }
    Ok(KKClass::new(m))
}

/// Fusion product extended bilinearly: (xy)_k = sum_{i,j} x_i y_j N_{ij}^k.
pub fn ring_multiply(ring: &FusionRing, x: &KRingElement, y: &KRingElement) -> Result<KRingElement> {
    let n = ring.rank();
    for v in [x, y] {
        if v.rank() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.rank() });
        }
    }
    let mut out = vec![BigInt::zero(); n];
    for i in (0..n).filter(|&i| !x.coords[i].is_zero()) {
        for j in (0..n).filter(|&j| !y.coords[j].is_zero()) {
            let c = &x.coords[i] * &y.coords[j];
            for (k, o) in out.iter_mut().enumerate() {
                let m = ring.multiplicity(i, j, k);
                if !m.is_zero() {
                    *o += &c * m;
                }
            }
        }
    }
    Ok(KRingElement { coords: out })
}

/// The conjugate sector i*, the unique sector with N_{i i*}^0 = 1.
pub fn dual(ring: &FusionRing, i: usize) -> Result<usize> {
    ring.check_index(i)?;
    (0..ring.rank())
        .find(|&j| ring.multiplicity(i, j, VACUUM).is_one())
        .ok_or_else(|| Error::Parse(format!("sector {i} has no dual")))
}

/// Perron-Frobenius dimensions as certified intervals.
///
/// Power iteration on the sum of all fusion matrices gives an approximate
/// common Perron vector x > 0; Collatz-Wielandt then brackets the spectral
/// radius of each M_i between min_k and max_k of (M_i x)_k / x_k, evaluated
/// exactly.
pub fn quantum_dimensions(ring: &FusionRing) -> Vec<RealInterval> {
    let n = ring.rank();
    let mats: Vec<IntMatrix> =
        (0..n).map(|i| fusion_matrix(ring, i).expect("index in range").into_matrix()).collect();
    let sum = mats.iter().skip(1).fold(mats[0].clone(), |acc, m| acc.add(m).unwrap());
    let dense: Vec<f64> = sum.entries().iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect();

    let mut x = vec![1.0f64; n];
    for _ in 0..2000 {
        let mut y: Vec<f64> = (0..n).map(|r| (0..n).map(|c| dense[r * n + c] * x[c]).sum()).collect();
        let norm = y.iter().cloned().fold(0.0, f64::max);
        if !(norm.is_finite() && norm > 0.0) {
            break;
        }
        y.iter_mut().for_each(|v| *v /= norm);
        let delta = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if delta < 1e-15 {
            break;
        }
    }

    let exact: Option<Vec<BigRational>> = x
        .iter()
        .map(|&v| if v > 0.0 { BigRational::from_float(v) } else { None })
        .collect();

    mats.iter()
        .enumerate()
        .map(|(i, m)| {
            if i == VACUUM {
                return RealInterval::point(BigRational::one());
            }
            match &exact {
                Some(x) => collatz_wielandt(m, x),
                None => row_sum_bound(m),
            }
        })
        .collect()
}

fn collatz_wielandt(m: &IntMatrix, x: &[BigRational]) -> RealInterval {
    let ratios: Vec<BigRational> = m
        .rows()
        .zip(x)
        .map(|(row, xk)| {
            let y: BigRational =
                row.iter().zip(x).map(|(a, b)| BigRational::from_integer(a.clone()) * b).sum();
            y / xk
        })
        .collect();
    let lo = ratios.iter().min().unwrap().clone();
    let hi = ratios.iter().max().unwrap().clone();
    RealInterval { lo, hi }
}

fn row_sum_bound(m: &IntMatrix) -> RealInterval {
    let hi = m.rows().map(|r| r.iter().sum::<BigInt>()).max().unwrap_or_default();
    RealInterval { lo: BigRational::zero(), hi: BigRational::from_integer(hi) }
}
