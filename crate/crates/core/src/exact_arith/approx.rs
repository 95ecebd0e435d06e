//! Certified enclosures of cyclotomic numbers.
//!
//! All arithmetic is fixed point over integers scaled by 2^w, carrying an
//! explicit error radius in units of 2^-w. Every rounding step widens the
//! radius, so the final enclosure always contains the exact value.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::CyclotomicNumber;

/// Closed real interval with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealInterval {
    pub fn point(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn mid_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Disc in the complex plane: |z - (re + i im)| <= radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: BigRational,
    pub im: BigRational,
    pub radius: BigRational,
}

impl ComplexInterval {
    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }

    pub fn radius_f64(&self) -> f64 {
        to_f64(&self.radius)
    }

    pub fn real_part(&self) -> RealInterval {
        RealInterval { lo: &self.re - &self.radius, hi: &self.re + &self.radius }
    }

    pub fn imag_part(&self) -> RealInterval {
        RealInterval { lo: &self.im - &self.radius, hi: &self.im + &self.radius }
    }
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug)]
struct Ball {
    mid: BigInt,
    rad: BigInt,
}

impl Ball {
    fn exact(mid: BigInt) -> Self {
        Ball { mid, rad: BigInt::zero() }
    }

    fn from_rational(q: &BigRational, w: usize) -> Self {
        let (mid, rem) = (q.numer() << w).div_mod_floor(q.denom());
        let rad = if rem.is_zero() { BigInt::zero() } else { BigInt::one() };
        Ball { mid, rad }
    }

    fn upper_abs(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    fn add(&self, o: &Ball) -> Ball {
        Ball { mid: &self.mid + &o.mid, rad: &self.rad + &o.rad }
    }

    fn sub(&self, o: &Ball) -> Ball {
        Ball { mid: &self.mid - &o.mid, rad: &self.rad + &o.rad }
    }

    fn mul(&self, o: &Ball, w: usize) -> Ball {
        let mid = (&self.mid * &o.mid) >> w;
        let err = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        let rad = ceil_shift(&err, w) + 1;
        Ball { mid, rad }
    }

    fn div_small(&self, d: u64) -> Ball {
        let d = BigInt::from(d);
        Ball { mid: self.mid.div_floor(&d), rad: self.rad.div_ceil(&d) + 1 }
    }
}

fn ceil_shift(x: &BigInt, w: usize) -> BigInt {
    -((-x) >> w)
}

/// sum_{k} (-1)^k / ((2k+1) m^(2k+1)), i.e. atan(1/m) for m >= 2.
fn atan_inv(m: u64, w: usize) -> Ball {
    let one = Ball::exact(BigInt::one() << w);
    let mut power = one.div_small(m);
    let m2 = m * m;
    let mut sum = Ball::exact(BigInt::zero());
    let mut k = 0u64;
    loop {
        let term = power.div_small(2 * k + 1);
        if term.upper_abs() <= BigInt::from(2) {
            // Alternating with decreasing terms: the tail is bounded by this term.
            sum.rad += term.upper_abs();
            return sum;
        }
        sum = if k % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        power = power.div_small(m2);
        k += 1;
    }
}

fn pi_ball(w: usize) -> Ball {
    let a = atan_inv(5, w);
    let b = atan_inv(239, w);
    let a16 = Ball { mid: &a.mid * 16, rad: &a.rad * 16 };
    let b4 = Ball { mid: &b.mid * 4, rad: &b.rad * 4 };
    a16.sub(&b4)
}

/// cos and sin of x for |x| <= 4.
fn cos_sin(x: &Ball, w: usize) -> (Ball, Ball) {
    let mut cos = Ball::exact(BigInt::one() << w);
    let mut sin = Ball::exact(BigInt::zero());
    let mut term = cos.clone();
    let mut n = 1u64;
    loop {
        term = term.mul(x, w).div_small(n);
        if n >= 9 && term.upper_abs() <= BigInt::from(2) {
            // |x|/(n+1) <= 1/2 from here on, so the tail is at most twice this term.
            let tail = term.upper_abs() * 2;
            cos.rad += &tail;
            sin.rad += &tail;
            return (cos, sin);
        }
        match n % 4 {
            0 => cos = cos.add(&term),
            1 => sin = sin.add(&term),
            2 => cos = cos.sub(&term),
            _ => sin = sin.sub(&term),
        }
        n += 1;
    }
}

fn evaluate(a: &CyclotomicNumber, w: usize) -> (Ball, Ball) {
    let n = a.order() as i64;
    let pi = pi_ball(w);
    let mut re = Ball::exact(BigInt::zero());
    let mut im = Ball::exact(BigInt::zero());
    for (j, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = Ball::from_rational(c, w);
        if j == 0 {
            re = re.add(&c);
            continue;
        }
        // Angle 2*pi*j/N reduced to (-pi, pi].
        let mut k = j as i64 % n;
        if 2 * k > n {
            k -= n;
        }
        let scaled = Ball { mid: &pi.mid * (2 * k), rad: &pi.rad * (2 * k.abs()) };
        let theta = Ball {
            mid: scaled.mid.div_floor(&BigInt::from(n)),
            rad: scaled.rad.div_ceil(&BigInt::from(n)) + 1,
        };
        let (cs, sn) = cos_sin(&theta, w);
        re = re.add(&c.mul(&cs, w));
        im = im.add(&c.mul(&sn, w));
    }
    (re, im)
}

/// Certified complex enclosure of `a` with radius at most 2^-precision.
///
/// Precision below 32 bits is raised to 32.
pub fn cyc_to_float(a: &CyclotomicNumber, precision: usize) -> ComplexInterval {
    let precision = precision.max(32);
    if a.is_zero() {
        let z = BigRational::zero();
        return ComplexInterval { re: z.clone(), im: z.clone(), radius: z };
    }
    let target = BigRational::new(BigInt::one(), BigInt::one() << precision);
    let mut guard = 24;
    loop {
        let w = precision + guard;
        let (re, im) = evaluate(a, w);
        let scale = BigInt::one() << w;
        let radius = BigRational::new(&re.rad + &im.rad, scale.clone());
        if radius <= target {
            return ComplexInterval {
                re: BigRational::new(re.mid, scale.clone()),
                im: BigRational::new(im.mid, scale),
                radius,
            };
        }
        guard += 32;
    }
}

/// Sign of a real cyclotomic number, refining precision until the enclosure
/// excludes zero. Returns `None` if `a` is not real.
pub fn real_sign(a: &CyclotomicNumber) -> Option<Ordering> {
    if a.conj() != *a {
        return None;
    }
    if a.is_zero() {
        return Some(Ordering::Equal);
    }
    if let Some(q) = a.to_rational() {
        return Some(q.numer().sign().cmp_zero());
    }
    let mut precision = 64;
    loop {
        let iv = cyc_to_float(a, precision).real_part();
        if iv.lo.is_positive() {
            return Some(Ordering::Greater);
        }
        if iv.hi.is_negative() {
            return Some(Ordering::Less);
        }
        // A nonzero algebraic number is eventually separated from zero.
        precision *= 2;
    }
}

trait SignCmp {
    fn cmp_zero(self) -> Ordering;
}

impl SignCmp for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::CyclotomicField;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    // Independent high-precision reference values (50 digits).
    const SQRT2: &str = "1.41421356237309504880168872420969807856967187537694";
    const GOLDEN: &str = "1.61803398874989484820458683436563811772030917980576";

    fn decimal(s: &str) -> BigRational {
        let (int, frac) = s.split_once('.').unwrap();
        let den = BigInt::from(10).pow(frac.len() as u32);
        let num: BigInt = format!("{int}{frac}").parse().unwrap();
        BigRational::new(num, den)
    }

    fn assert_encloses(iv: &ComplexInterval, re: &BigRational, precision: usize) {
        let dist = (&iv.re - re).abs() + iv.im.abs();
        // Reference values are good to 1e-50, far below any tested radius.
        let slack = BigRational::new(BigInt::one(), BigInt::from(10).pow(49));
        assert!(dist <= &iv.radius + &slack, "enclosure misses reference at {precision} bits");
        assert!(iv.radius <= BigRational::new(BigInt::one(), BigInt::one() << precision));
    }

    #[test]
    fn sqrt2_from_zeta8() {
        let f = CyclotomicField::new(8);
        let r2 = CyclotomicNumber::from_terms(&f, &[(1, q(1, 1)), (7, q(1, 1))]);
        for p in [32, 64, 100, 150] {
            let iv = cyc_to_float(&r2, p);
            assert_encloses(&iv, &decimal(SQRT2), p);
        }
        assert!((cyc_to_float(&r2, 32).re_f64() - std::f64::consts::SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn golden_ratio_from_zeta5() {
        let f = CyclotomicField::new(5);
        let x = -CyclotomicNumber::from_terms(&f, &[(2, q(1, 1)), (3, q(1, 1))]);
        for p in [32, 64, 128] {
            assert_encloses(&cyc_to_float(&x, p), &decimal(GOLDEN), p);
        }
    }

    #[test]
    fn zero_is_exact() {
        let f = CyclotomicField::new(12);
        let iv = cyc_to_float(&CyclotomicNumber::zero(&f), 32);
        assert!(iv.re.is_zero() && iv.im.is_zero() && iv.radius.is_zero());
    }

    #[test]
    fn rationals_are_enclosed() {
        let f = CyclotomicField::new(7);
        for (n, d) in [(1, 3), (-22, 7), (5, 1), (123456789, 1024)] {
            let x = CyclotomicNumber::from_rational(&f, &q(n, d));
            for p in [32, 48, 96] {
                let iv = cyc_to_float(&x, p);
                assert!(iv.real_part().contains(&q(n, d)));
            }
        }
    }

    #[test]
    fn radius_shrinks_with_precision() {
        let f = CyclotomicField::new(48);
        let x = CyclotomicNumber::from_terms(&f, &[(5, q(3, 7)), (13, q(-2, 1)), (40, q(1, 1))]);
        let r: Vec<_> = [32, 64, 128].iter().map(|&p| cyc_to_float(&x, p).radius).collect();
        assert!(r[1] < r[0] && r[2] < r[1]);
    }

    #[test]
    fn signs() {
        let f = CyclotomicField::new(8);
        let r2 = CyclotomicNumber::from_terms(&f, &[(1, q(1, 1)), (7, q(1, 1))]);
        assert_eq!(real_sign(&r2), Some(Ordering::Greater));
        assert_eq!(real_sign(&-&r2), Some(Ordering::Less));
        let diff = &r2 - &CyclotomicNumber::from_rational(&f, &q(141421, 100000));
        assert_eq!(real_sign(&diff), Some(Ordering::Greater));
        assert_eq!(real_sign(&CyclotomicNumber::zeta_pow(&f, 1)), None);
    }
}
