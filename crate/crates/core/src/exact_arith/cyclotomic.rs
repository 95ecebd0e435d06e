use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{content_gcd, cyclotomic_polynomial, QPoly};
use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

pub fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The field Q(zeta_N) with its reduction data.
///
/// `powers[e]` holds x^e reduced modulo Phi_N for 0 <= e < N, stored sparsely.
pub struct CyclotomicField {
    order: usize,
    degree: usize,
    modulus: Vec<BigInt>,
    powers: Vec<Vec<(usize, BigInt)>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

impl CyclotomicField {
    pub fn new(order: usize) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..order {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect(),
            );
            let top = cur.pop().unwrap();
            cur.insert(0, BigInt::zero());
            if !top.is_zero() {
                for (c, m) in cur.iter_mut().zip(&modulus) {
                    *c -= &top * m;
                }
            }
        }
        Arc::new(Self { order, degree, modulus, powers })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Euler totient of the order; the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn reduced_power(&self, e: usize) -> &[(usize, BigInt)] {
        &self.powers[e % self.order]
    }
}

/// An element of Q(zeta_N) in canonical form.
///
/// Stored as integer numerators over one positive common denominator, with
/// gcd(numerators, denominator) = 1. Coefficients are over the power basis
/// 1, zeta, ..., zeta^(phi(N)-1).
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    nums: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.nums == other.nums
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.nums.hash(state);
        self.den.hash(state);
    }
}

impl CyclotomicNumber {
    fn from_raw(field: &Arc<CyclotomicField>, mut nums: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(nums.len(), field.degree);
        if nums.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else {
            if den.is_negative() {
                den = -den;
                nums.iter_mut().for_each(|x| *x = -&*x);
            }
            let g = content_gcd(nums.iter(), den.clone());
            if !g.is_one() {
                nums.iter_mut().for_each(|x| *x /= &g);
                den /= &g;
            }
        }
        Self { field: field.clone(), nums, den }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self { field: field.clone(), nums: vec![BigInt::zero(); field.degree], den: BigInt::one() }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integer(field, BigInt::one())
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, n: BigInt) -> Self {
        let mut nums = vec![BigInt::zero(); field.degree];
        nums[0] = n;
        Self { field: field.clone(), nums, den: BigInt::one() }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: &BigRational) -> Self {
        let mut nums = vec![BigInt::zero(); field.degree];
        nums[0] = q.numer().clone();
        Self::from_raw(field, nums, q.denom().clone())
    }

    /// zeta_N^k for any integer k.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order as i64) as usize;
        let mut nums = vec![BigInt::zero(); field.degree];
        for (i, c) in field.reduced_power(e) {
            nums[*i] = c.clone();
        }
        Self { field: field.clone(), nums, den: BigInt::one() }
    }

    /// Canonical form of sum(c * zeta^e) over the given terms; exponents are
    /// reduced mod N first.
    pub fn from_terms(field: &Arc<CyclotomicField>, terms: &[(i64, BigRational)]) -> Self {
        let den = terms.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let mut nums = vec![BigInt::zero(); field.degree];
        for (e, q) in terms {
            if q.is_zero() {
                continue;
            }
            let scaled = q.numer() * (&den / q.denom());
            let e = e.rem_euclid(field.order as i64) as usize;
            for (i, c) in field.reduced_power(e) {
                nums[*i] += &scaled * c;
            }
        }
        Self::from_raw(field, nums, den)
    }

    /// Builds from power-basis coefficients; the length must be phi(N).
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() != field.degree {
            return Err(Error::DimensionMismatch { expected: field.degree, found: coeffs.len() });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let nums = coeffs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Ok(Self::from_raw(field, nums, den))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.nums.iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.nums[0].is_one() && self.nums[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.nums[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.nums[0].clone(), self.den.clone()))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.field.order == other.field.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.field.order, other.field.order))
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let nums = self
            .nums
            .iter()
            .zip(&other.nums)
            .map(|(a, b)| {
                let b = b * &fb;
                let a = a * &fa;
                if negate {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Self::from_raw(&self.field, nums, l)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let phi = self.field.degree;
        let nz = |v: &[BigInt]| -> Vec<usize> { (0..v.len()).filter(|&i| !v[i].is_zero()).collect() };
        let (ia, ib) = (nz(&self.nums), nz(&other.nums));
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for &i in &ia {
            for &j in &ib {
                raw[i + j] += &self.nums[i] * &other.nums[j];
            }
        }
        let high = raw.split_off(phi);
        for (off, c) in high.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (idx, m) in self.field.reduced_power(phi + off) {
                raw[*idx] += c * m;
            }
        }
        Ok(Self::from_raw(&self.field, raw, &self.den * &other.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(&self.field, &q.recip()));
        }
        let a = QPoly::from_ints(&self.nums);
        let m = QPoly::from_ints(&self.field.modulus);
        let (g, s) = QPoly::gcd_inverse(&a, &m);
        debug_assert_eq!(g.0.len(), 1, "Phi_N is irreducible");
        let mut coeffs = s.0;
        coeffs.resize(self.field.degree, BigRational::zero());
        let den = BigRational::from_integer(self.den.clone());
        let coeffs: Vec<_> = coeffs.into_iter().map(|c| c * &den).collect();
        Self::from_coeffs(&self.field, &coeffs)
    }

    /// Image under zeta -> zeta^(-1); complex conjugation for the standard embedding.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Image under zeta -> zeta^k, for k coprime to N.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.field.order as i64;
        debug_assert_eq!(k.rem_euclid(n).gcd(&n), 1);
        let mut nums = vec![BigInt::zero(); self.field.degree];
        for (j, c) in self.nums.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (k * j as i64).rem_euclid(n) as usize;
            for (idx, m) in self.field.reduced_power(e) {
                nums[*idx] += c * m;
            }
        }
        Self::from_raw(&self.field, nums, self.den.clone())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let nums = self.nums.iter().map(|x| x * q.numer()).collect();
        Self::from_raw(&self.field, nums, &self.den * q.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let nums = self.nums.iter().map(|x| x * k).collect();
        Self::from_raw(&self.field, nums, self.den.clone())
    }

    /// Re-expresses this element in Q(zeta_M) for a multiple M of its order.
    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Result<Self> {
        let (m, big) = (self.field.order, target.order);
        if big % m != 0 {
            return Err(Error::OrderMismatch(m, big));
        }
        if m == big {
            return Ok(Self { field: target.clone(), ..self.clone() });
        }
        let step = big / m;
        let mut nums = vec![BigInt::zero(); target.degree];
        for (j, c) in self.nums.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (idx, p) in target.reduced_power(j * step) {
                nums[*idx] += c * p;
            }
        }
        Ok(Self::from_raw(target, nums, self.den.clone()))
    }

    pub fn to_entry(&self) -> CycEntry {
        CycEntry::Coeffs {
            order: self.field.order,
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
    }

    /// Parses a serialized entry into the ambient field. Entries may use any
    /// order dividing the ambient order.
    pub fn from_entry(entry: &CycEntry, ambient: &Arc<CyclotomicField>) -> Result<Self> {
        match entry {
            CycEntry::Coeffs { order, coeffs } => {
                if *order == 0 || ambient.order % order != 0 {
                    return Err(Error::Parse(format!(
                        "entry order {order} does not divide ambient order {}",
                        ambient.order
                    )));
                }
                let coeffs = coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                if *order == ambient.order {
                    Self::from_coeffs(ambient, &coeffs)
                        .map_err(|_| Error::Parse(format!("expected {} coefficients", ambient.degree)))
                } else {
                    let small = CyclotomicField::new(*order);
                    let x = Self::from_coeffs(&small, &coeffs).map_err(|_| {
                        Error::Parse(format!("expected {} coefficients", small.degree))
                    })?;
                    x.embed(ambient)
                }
            }
            CycEntry::Monomial { zeta_pow, scale } => {
                Ok(Self::zeta_pow(ambient, *zeta_pow).scale(&parse_rational(scale)?))
            }
        }
    }
}

/// Serialized cyclotomic entry: full coefficient list or a scaled monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CycEntry {
    Coeffs { order: usize, coeffs: Vec<String> },
    Monomial { zeta_pow: i64, scale: String },
}

/// Embeds both operands into Q(zeta_lcm).
pub fn embed_common(
    a: &CyclotomicNumber,
    b: &CyclotomicNumber,
) -> (CyclotomicNumber, CyclotomicNumber) {
    let l = a.order().lcm(&b.order());
    let field = if a.order() == l {
        a.field.clone()
    } else if b.order() == l {
        b.field.clone()
    } else {
        CyclotomicField::new(l)
    };
    (a.embed(&field).unwrap(), b.embed(&field).unwrap())
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, q) in self.coeffs().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let sign = if q.is_negative() { "-" } else { "+" };
            if first {
                if q.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = format_rational(&q.abs());
            match (j, abs.as_str()) {
                (0, a) => write!(f, "{a}")?,
                (_, "1") => write!(f, "z{}^{j}", self.field.order)?,
                (_, a) => write!(f, "{a}*z{}^{j}", self.field.order)?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            /// Panics on mismatched orders; use the `checked_` form for fallible use.
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            nums: self.nums.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn terms(field: &Arc<CyclotomicField>, t: &[(i64, i64)]) -> CyclotomicNumber {
        let t: Vec<_> = t.iter().map(|&(e, c)| (e, q(c, 1))).collect();
        CyclotomicNumber::from_terms(field, &t)
    }

    // Independent floating evaluation: sum c * exp(2 pi i e / N) over the power basis.
    fn eval(x: &CyclotomicNumber) -> (f64, f64) {
        let n = x.order() as f64;
        x.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let c = c.numer().to_string().parse::<f64>().unwrap()
                / c.denom().to_string().parse::<f64>().unwrap();
            let t = 2.0 * std::f64::consts::PI * j as f64 / n;
            (re + c * t.cos(), im + c * t.sin())
        })
    }

    #[test]
    fn totient() {
        let expect = [(1, 1), (2, 1), (8, 4), (12, 4), (48, 16), (60, 16), (96, 32), (105, 48)];
        for (n, p) in expect {
            assert_eq!(euler_phi(n), p);
            assert_eq!(CyclotomicField::new(n).degree(), p);
        }
    }

    #[test]
    fn normalize_examples() {
        let f4 = CyclotomicField::new(4);
        assert_eq!(terms(&f4, &[(2, 1)]), CyclotomicNumber::from_integer(&f4, (-1).into()));
        let f5 = CyclotomicField::new(5);
        assert!(terms(&f5, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]).is_zero());
        let f8 = CyclotomicField::new(8);
        let z8 = terms(&f8, &[(1, 1)]);
        assert_eq!(z8.coeffs(), vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)]);
        // Negative and large exponents reduce mod N.
        assert_eq!(terms(&f8, &[(-7, 1)]), z8);
        assert_eq!(terms(&f8, &[(17, 1)]), z8);
    }

    #[test]
    fn mul_examples() {
        let f8 = CyclotomicField::new(8);
        let r2 = terms(&f8, &[(1, 1), (7, 1)]);
        assert_eq!(&r2 * &r2, CyclotomicNumber::from_integer(&f8, 2.into()));
        assert_eq!(&r2 * &CyclotomicNumber::one(&f8), r2);

        let f3 = CyclotomicField::new(3);
        let a = terms(&f3, &[(0, 1), (1, 1)]);
        let b = terms(&f3, &[(0, 1), (2, 1)]);
        let p = &a * &b;
        assert!(p.is_one());
        // Floating cross-check of the same product.
        let ((ar, ai), (br, bi)) = (eval(&a), eval(&b));
        let (pr, pi) = (ar * br - ai * bi, ar * bi + ai * br);
        assert!((pr - 1.0).abs() < 1e-12 && pi.abs() < 1e-12);
    }

    #[test]
    fn mul_order_mismatch_is_an_error() {
        let a = CyclotomicNumber::one(&CyclotomicField::new(3));
        let b = CyclotomicNumber::one(&CyclotomicField::new(4));
        assert!(matches!(a.checked_mul(&b), Err(Error::OrderMismatch(3, 4))));
        let (a, b) = embed_common(&a, &b);
        assert_eq!(a.order(), 12);
        assert!(a.checked_mul(&b).unwrap().is_one());
    }

    #[test]
    fn inv_examples() {
        for n in [1usize, 2, 5, 8, 12, 48] {
            let f = CyclotomicField::new(n);
            let z = CyclotomicNumber::zeta_pow(&f, 1);
            assert_eq!(z.inv().unwrap(), CyclotomicNumber::zeta_pow(&f, n as i64 - 1));
        }
        let f = CyclotomicField::new(7);
        let two = CyclotomicNumber::from_integer(&f, 2.into());
        assert_eq!(two.inv().unwrap(), CyclotomicNumber::from_rational(&f, &q(1, 2)));
        let f3 = CyclotomicField::new(3);
        assert_eq!(terms(&f3, &[(0, 1), (1, 1)]).inv().unwrap(), terms(&f3, &[(0, 1), (2, 1)]));
        assert!(matches!(CyclotomicNumber::zero(&f3).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn conj_examples() {
        let f8 = CyclotomicField::new(8);
        assert_eq!(terms(&f8, &[(1, 1)]).conj(), terms(&f8, &[(7, 1)]));
        let r2 = terms(&f8, &[(1, 1), (7, 1)]);
        assert_eq!(r2.conj(), r2);
    }

    #[test]
    fn embedding_preserves_value() {
        let f8 = CyclotomicField::new(8);
        let f48 = CyclotomicField::new(48);
        let r2 = terms(&f8, &[(1, 1), (7, 1)]);
        let e = r2.embed(&f48).unwrap();
        assert_eq!(&e * &e, CyclotomicNumber::from_integer(&f48, 2.into()));
        assert_eq!(e, terms(&f48, &[(6, 1), (42, 1)]));
        assert!(r2.embed(&CyclotomicField::new(12)).is_err());
    }

    #[test]
    fn entry_round_trip() {
        let f = CyclotomicField::new(48);
        let x = CyclotomicNumber::from_terms(&f, &[(3, q(1, 2)), (11, q(-5, 3))]);
        let entry = x.to_entry();
        assert_eq!(CyclotomicNumber::from_entry(&entry, &f).unwrap(), x);
        let json = serde_json::to_string(&entry).unwrap();
        let back: CycEntry = serde_json::from_str(&json).unwrap();
        assert_eq!(back, entry);
        let mono: CycEntry = serde_json::from_str(r#"{"zeta_pow": 3, "scale": "1/2"}"#).unwrap();
        assert_eq!(
            CyclotomicNumber::from_entry(&mono, &f).unwrap(),
            CyclotomicNumber::from_terms(&f, &[(3, q(1, 2))])
        );
        let small = CycEntry::Coeffs { order: 8, coeffs: vec!["0".into(), "1".into(), "0".into(), "0".into()] };
        assert_eq!(CyclotomicNumber::from_entry(&small, &f).unwrap(), CyclotomicNumber::zeta_pow(&f, 6));
        let short = CycEntry::Coeffs { order: 48, coeffs: vec!["1".into()] };
        assert!(CyclotomicNumber::from_entry(&short, &f).is_err());
    }

    fn arb_element(span: i64) -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
        prop::collection::vec((-span..span * 2, -6i64..=6, 1i64..=4), 0..6)
    }

    fn build(field: &Arc<CyclotomicField>, t: &[(i64, i64, i64)]) -> CyclotomicNumber {
        let t: Vec<_> = t.iter().map(|&(e, n, d)| (e, q(n, d))).collect();
        CyclotomicNumber::from_terms(field, &t)
    }

    proptest! {
        #[test]
        fn field_axioms(
            order in prop::sample::select(vec![1usize, 3, 5, 8, 12, 20, 48]),
            x in arb_element(48), y in arb_element(48), z in arb_element(48),
        ) {
            let f = CyclotomicField::new(order);
            let (a, b, c) = (build(&f, &x), build(&f, &y), build(&f, &z));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_form_is_sound(order in prop::sample::select(vec![4usize, 6, 9, 15, 24]),
                                   x in arb_element(24), y in arb_element(24)) {
            let f = CyclotomicField::new(order);
            let (a, b) = (build(&f, &x), build(&f, &y));
            prop_assert_eq!(a == b, (&a - &b).is_zero());
            // Equal values evaluate to the same complex number.
            if a == b {
                let (ea, eb) = (eval(&a), eval(&b));
                prop_assert!((ea.0 - eb.0).abs() < 1e-9 && (ea.1 - eb.1).abs() < 1e-9);
            }
        }
    }
}
