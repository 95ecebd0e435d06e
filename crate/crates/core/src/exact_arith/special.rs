//! Closed forms for the algebraic numbers that appear in modular data:
//! square roots of rationals (via quadratic Gauss sums) and trigonometric
//! values at rational multiples of pi.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::approx::real_sign;
use super::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};

fn require_divides(d: usize, field: &Arc<CyclotomicField>, what: impl Fn() -> String) -> Result<()> {
    if field.order() % d == 0 {
        Ok(())
    } else {
        Err(Error::NotInField { what: what(), order: field.order() })
    }
}

/// e^(2 pi i r).
pub fn root_of_unity(field: &Arc<CyclotomicField>, r: &BigRational) -> Result<CyclotomicNumber> {
    let scaled = r * BigRational::from_integer(field.order().into());
    if !scaled.is_integer() {
        return Err(Error::NotInField { what: format!("exp(2 pi i * {r})"), order: field.order() });
    }
    let n = BigInt::from(field.order());
    let e = scaled.to_integer().mod_floor(&n).to_i64().unwrap();
    Ok(CyclotomicNumber::zeta_pow(field, e))
}

/// zeta_{2 den}^num = e^(i pi num/den), checking containment.
fn half_turn(field: &Arc<CyclotomicField>, r: &BigRational) -> Result<CyclotomicNumber> {
    root_of_unity(field, &(r / BigRational::from_integer(2.into())))
}

/// cos(pi r) = (z + z^-1) / 2 with z = e^(i pi r).
pub fn cos_pi_rational(field: &Arc<CyclotomicField>, r: &BigRational) -> Result<CyclotomicNumber> {
    let z = half_turn(field, r)?;
    Ok((&z + &z.conj()).scale(&BigRational::new(1.into(), 2.into())))
}

/// sin(pi r) = (z - z^-1) / (2i) with z = e^(i pi r).
pub fn sin_pi_rational(field: &Arc<CyclotomicField>, r: &BigRational) -> Result<CyclotomicNumber> {
    let z = half_turn(field, r)?;
    require_divides(4, field, || format!("sin(pi * {r})"))?;
    let minus_i_half = CyclotomicNumber::zeta_pow(field, -(field.order() as i64) / 4)
        .scale(&BigRational::new(1.into(), 2.into()));
    Ok(&(&z - &z.conj()) * &minus_i_half)
}

/// sqrt(p) for a prime p, from the quadratic Gauss sum
/// g = sum_a (a/p) zeta_p^a, which satisfies g^2 = (-1)^((p-1)/2) p.
fn sqrt_prime(field: &Arc<CyclotomicField>, p: u64) -> Result<CyclotomicNumber> {
    let n = field.order() as i64;
    if p == 2 {
        require_divides(8, field, || "sqrt(2)".into())?;
        let e = n / 8;
        return Ok(&CyclotomicNumber::zeta_pow(field, e) + &CyclotomicNumber::zeta_pow(field, -e));
    }
    let needs_i = p % 4 == 3;
    let order = if needs_i { 4 * p } else { p } as usize;
    require_divides(order, field, || format!("sqrt({p})"))?;
    let step = n / p as i64;
    let squares: Vec<bool> = {
        let mut s = vec![false; p as usize];
        for a in 1..p {
            s[((a * a) % p) as usize] = true;
        }
        s
    };
    let terms: Vec<(i64, BigRational)> = (1..p)
        .map(|a| {
            let sign = if squares[a as usize] { 1 } else { -1 };
            (a as i64 * step, BigRational::from_integer(sign.into()))
        })
        .collect();
    let g = CyclotomicNumber::from_terms(field, &terms);
    if needs_i {
        // g = i sqrt(p)
        Ok(&g * &CyclotomicNumber::zeta_pow(field, -n / 4))
    } else {
        Ok(g)
    }
}

/// Positive square root of a nonnegative rational, if it lies in the field.
pub fn sqrt_rational(field: &Arc<CyclotomicField>, q: &BigRational) -> Result<CyclotomicNumber> {
    if q.is_negative() {
        return Err(Error::NotInField { what: format!("sqrt({q}) (negative)"), order: field.order() });
    }
    if q.is_zero() {
        return Ok(CyclotomicNumber::zero(field));
    }
    // sqrt(a/b) = sqrt(a b) / b
    let m = q.numer() * q.denom();
    let mut rest = m.to_u64().ok_or_else(|| Error::NotInField {
        what: format!("sqrt({q}) (radicand too large to factor)"),
        order: field.order(),
    })?;
    let mut square_part = BigInt::one();
    let mut result = CyclotomicNumber::one(field);
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        square_part *= BigInt::from(p).pow(e / 2);
        if e % 2 == 1 {
            result = &result * &sqrt_prime(field, p)?;
        }
        p += 1;
    }
    if rest > 1 {
        result = &result * &sqrt_prime(field, rest)?;
    }
    let result = result.scale(&BigRational::new(square_part, q.denom().clone()));
    match real_sign(&result) {
        Some(Ordering::Less) => Ok(-result),
        _ => Ok(result),
    }
}
