//! Built-in rational models and model files.

mod file;

pub use file::{load_model, load_model_from_path, ModelFile};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{sin_pi_rational, sqrt_rational, CyclotomicField, CyclotomicNumber};
use crate::fusion::{verify_fusion_ring, FusionRing};
use crate::matrix::CycMatrix;
use crate::modular::{verify_modular_data, ModularData};

/// A verified fusion ring, optionally with modular data in the same sector order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub name: String,
    pub ring: FusionRing,
    pub modular: Option<ModularData>,
}

impl Model {
    /// Runs every check and refuses to build a model that fails one.
    pub fn verified(name: impl Into<String>, ring: FusionRing, modular: Option<ModularData>) -> Result<Self> {
        let report = verify_fusion_ring(&ring);
        if !report.passed {
            return Err(Error::Verification(Box::new(report)));
        }
        if let Some(md) = &modular {
            if md.rank() != ring.rank() {
                return Err(Error::DimensionMismatch { expected: ring.rank(), found: md.rank() });
            }
            let report = verify_modular_data(md);
            if !report.passed {
                return Err(Error::Verification(Box::new(report)));
            }
        }
        Ok(Self { name: name.into(), ring, modular })
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn require_modular(&self) -> Result<&ModularData> {
        self.modular
            .as_ref()
            .ok_or_else(|| Error::InvalidModularData(format!("model `{}` carries no modular data", self.name)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    Trivial,
    Ising,
    Fibonacci,
    /// SU(2) at level k, 1 <= k <= 10.
    Su2(u32),
    /// Z_n pointed model (SU(n) at level 1), 2 <= n <= 12.
    Z(u32),
}

pub const SU2_LEVELS: std::ops::RangeInclusive<u32> = 1..=10;
pub const Z_ORDERS: std::ops::RangeInclusive<u32> = 2..=12;

impl Builtin {
    /// Accepts `su2` with `k`, `z` with `n`, and the inline forms `su2_4`, `z_5`.
    pub fn parse(name: &str, k: Option<u32>, n: Option<u32>) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let (base, inline) = match lower.split_once('_') {
            Some((b, p)) => {
                let v = p.parse::<u32>().map_err(|_| Error::UnknownModel(name.into()))?;
                (b.to_string(), Some(v))
            }
            None => (lower.clone(), None),
        };
        let b = match base.as_str() {
            "trivial" => Builtin::Trivial,
            "ising" => Builtin::Ising,
            "fibonacci" | "fib" => Builtin::Fibonacci,
            "su2" => {
                let k = inline.or(k).ok_or_else(|| Error::ParamOutOfRange("su2 needs a level k".into()))?;
                Builtin::Su2(k)
            }
            "z" | "zn" => {
                let n = inline.or(n).ok_or_else(|| Error::ParamOutOfRange("z needs an order n".into()))?;
                Builtin::Z(n)
            }
            _ => return Err(Error::UnknownModel(name.into())),
        };
        if inline.is_some() && !matches!(b, Builtin::Su2(_) | Builtin::Z(_)) {
            return Err(Error::UnknownModel(name.into()));
        }
        b.check_range()?;
        Ok(b)
    }

    fn check_range(self) -> Result<()> {
        match self {
            Builtin::Su2(k) if !SU2_LEVELS.contains(&k) => {
                Err(Error::ParamOutOfRange(format!("su2 level k = {k} outside 1..=10")))
            }
            Builtin::Z(n) if !Z_ORDERS.contains(&n) => {
                Err(Error::ParamOutOfRange(format!("z order n = {n} outside 2..=12")))
            }
            _ => Ok(()),
        }
    }

    /// Every built-in model.
    pub fn all() -> Vec<Builtin> {
        let mut v = vec![Builtin::Trivial, Builtin::Ising, Builtin::Fibonacci];
        v.extend(SU2_LEVELS.map(Builtin::Su2));
        v.extend(Z_ORDERS.map(Builtin::Z));
        v
    }

    pub fn build(self) -> Result<Model> {
        self.check_range()?;
        let (ring, md) = match self {
            Builtin::Trivial => trivial()?,
            Builtin::Ising => ising()?,
            Builtin::Fibonacci => fibonacci()?,
            Builtin::Su2(k) => su2(k as usize)?,
            Builtin::Z(n) => zn(n as usize)?,
        };
        Model::verified(self.to_string(), ring, Some(md))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Trivial => write!(f, "trivial"),
            Builtin::Ising => write!(f, "ising"),
            Builtin::Fibonacci => write!(f, "fibonacci"),
            Builtin::Su2(k) => write!(f, "su2_{k}"),
            Builtin::Z(n) => write!(f, "z_{n}"),
        }
    }
}

/// Shorthand for `Builtin::parse(name, k, n)?.build()`.
pub fn builtin(name: &str, k: Option<u32>, n: Option<u32>) -> Result<Model> {
    Builtin::parse(name, k, n)?.build()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn ones(entries: &[(usize, usize, usize)]) -> Vec<(usize, usize, usize, BigInt)> {
    entries.iter().map(|&(i, j, k)| (i, j, k, BigInt::one())).collect()
}

/// Smallest N such that Q(zeta_N) contains sqrt(m) for a positive integer m.
fn sqrt_conductor(m: u64) -> usize {
    let mut rest = m;
    let mut free = 1u64;
    let mut p = 2;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
        }
        if rest % p == 0 {
            free *= p;
            rest /= p;
        }
        p += 1;
    }
    free *= rest;
    (if free % 4 == 1 { free } else { 4 * free }) as usize
}

/// Ambient order holding every T phase exp(2 pi i (h - c/24)) plus the extra
/// orders the S entries need.
fn ambient_order(c: &BigRational, weights: &[BigRational], extra: &[usize]) -> usize {
    let c24 = c / BigRational::from_integer(24.into());
    let mut n = extra.iter().fold(1usize, |l, e| l.lcm(e));
    for h in weights {
        let d: usize = (h - &c24).denom().try_into().expect("small denominator");
        n = n.lcm(&d);
    }
    n
}

type Parts = (FusionRing, ModularData);

fn trivial() -> Result<Parts> {
    let f = CyclotomicField::new(1);
    let ring = FusionRing::from_quadruples(vec!["1".into()], &ones(&[(0, 0, 0)]))?;
    let md = ModularData::new(&f, CycMatrix::identity(&f, 1), BigRational::zero(), vec![BigRational::zero()])?;
    Ok((ring, md))
}

fn ising() -> Result<Parts> {
    let c = q(1, 2);
    let weights = vec![q(0, 1), q(1, 2), q(1, 16)];
    let f = CyclotomicField::new(ambient_order(&c, &weights, &[8]));
    let half = CyclotomicNumber::from_rational(&f, &q(1, 2));
    let hr2 = &half * &sqrt_rational(&f, &q(2, 1))?;
    let s = CycMatrix::from_rows(
        &f,
        vec![
            vec![half.clone(), half.clone(), hr2.clone()],
            vec![half.clone(), half, -&hr2],
            vec![hr2.clone(), -&hr2, CyclotomicNumber::zero(&f)],
        ],
    )?;
    let ring = FusionRing::from_quadruples(
        vec!["1".into(), "psi".into(), "sigma".into()],
        &ones(&[
            (0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1), (2, 0, 2),
            (1, 1, 0), (1, 2, 2), (2, 1, 2), (2, 2, 0), (2, 2, 1),
        ]),
    )?;
    Ok((ring, ModularData::new(&f, s, c, weights)?))
}

fn fibonacci() -> Result<Parts> {
    let c = q(14, 5);
    let weights = vec![q(0, 1), q(2, 5)];
    let f = CyclotomicField::new(ambient_order(&c, &weights, &[20]));
    // 2 / sqrt(5) = 2 sqrt(5) / 5
    let pre = sqrt_rational(&f, &q(5, 1))?.scale(&q(2, 5));
    let s1 = &pre * &sin_pi_rational(&f, &q(1, 5))?;
    let s2 = &pre * &sin_pi_rational(&f, &q(2, 5))?;
    let s = CycMatrix::from_rows(&f, vec![vec![s1.clone(), s2.clone()], vec![s2, -&s1]])?;
    let ring = FusionRing::from_quadruples(
        vec!["1".into(), "tau".into()],
        &ones(&[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]),
    )?;
    Ok((ring, ModularData::new(&f, s, c, weights)?))
}

/// Truncated Clebsch-Gordan rule at level k.
pub fn su2_fusion(k: usize) -> Result<FusionRing> {
    let n = k + 1;
    let mut e = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a.abs_diff(b) <= c && c <= (a + b).min(2 * k - a - b) && (a + b + c) % 2 == 0 {
                    e.push((a, b, c));
                }
            }
        }
    }
    FusionRing::from_quadruples(labels(n), &ones(&e))
}

fn su2(k: usize) -> Result<Parts> {
    let n = k + 1;
    let kk = (k + 2) as i64;
    let c = q(3 * k as i64, kk);
    let weights: Vec<BigRational> = (0..n as i64).map(|a| q(a * (a + 2), 4 * kk)).collect();
    let f = CyclotomicField::new(ambient_order(
        &c,
        &weights,
        &[4, 2 * (k + 2), sqrt_conductor(2 * (k as u64 + 2))],
    ));
    let pre = sqrt_rational(&f, &q(2, kk))?;
    let mut rows = Vec::with_capacity(n);
    for a in 0..n as i64 {
        let row = (0..n as i64)
            .map(|b| Ok(&pre * &sin_pi_rational(&f, &q((a + 1) * (b + 1), kk))?))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let s = CycMatrix::from_rows(&f, rows)?;
    Ok((su2_fusion(k)?, ModularData::new(&f, s, c, weights)?))
}

fn zn(n: usize) -> Result<Parts> {
    let ni = n as i64;
    let c = q(ni - 1, 1);
    let weights: Vec<BigRational> = (0..ni).map(|a| q(a * (ni - a), 2 * ni)).collect();
    let f: Arc<CyclotomicField> =
        CyclotomicField::new(ambient_order(&c, &weights, &[n, sqrt_conductor(n as u64)]));
    let inv_sqrt = sqrt_rational(&f, &q(1, ni))?;
    let step = (f.order() / n) as i64;
    let rows = (0..ni)
        .map(|a| (0..ni).map(|b| &CyclotomicNumber::zeta_pow(&f, step * ((a * b) % ni)) * &inv_sqrt).collect())
        .collect();
    let s = CycMatrix::from_rows(&f, rows)?;
    let mut e = Vec::new();
    for a in 0..n {
        for b in 0..n {
            e.push((a, b, (a + b) % n));
        }
    }
    let ring = FusionRing::from_quadruples(labels(n), &ones(&e))?;
    Ok((ring, ModularData::new(&f, s, c, weights)?))
}
