use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
///
/// Computed by dividing x^N - 1 by Phi_d for every proper divisor d of N.
pub fn cyclotomic_polynomial(order: usize) -> Vec<BigInt> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut cache: Vec<Option<Vec<BigInt>>> = vec![None; order + 1];
    for d in (1..=order).filter(|d| order % d == 0) {
        let mut p = vec![BigInt::zero(); d + 1];
        p[0] = -BigInt::one();
        p[d] = BigInt::one();
        for e in (1..d).filter(|e| d % e == 0) {
            p = exact_div_monic(&p, cache[e].as_ref().unwrap());
        }
        cache[d] = Some(p);
    }
    cache[order].take().unwrap()
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Dense polynomial over Q, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct QPoly(pub Vec<BigRational>);

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero());
        let mut rem = self.0.clone();
        if rem.len() < d.0.len() {
            return (QPoly(Vec::new()), self.clone());
        }
        let lead = d.0.last().unwrap();
        let dd = d.degree();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Returns (g, s) with s*a = g mod m, g = gcd(a, m) normalized monic.
    pub fn gcd_inverse(a: &QPoly, m: &QPoly) -> (QPoly, QPoly) {
        let (mut r0, mut r1) = (m.clone(), a.clone());
        let (mut s0, mut s1) = (QPoly(Vec::new()), QPoly(vec![BigRational::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if let Some(lead) = r0.0.last().cloned() {
            let inv = lead.recip();
            r0 = QPoly(r0.0.iter().map(|c| c * &inv).collect());
            s0 = QPoly(s0.0.iter().map(|c| c * &inv).collect());
        }
        (r0, s0)
    }
}

pub(crate) fn content_gcd<'a>(it: impl Iterator<Item = &'a BigInt>, init: BigInt) -> BigInt {
    let mut g = init;
    for x in it {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        // Smallest order whose cyclotomic polynomial has a coefficient outside {-1,0,1}.
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len(), 49);
        assert!(p.contains(&BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in [6usize, 12, 30, 48] {
            let mut prod = QPoly(vec![BigRational::one()]);
            for d in (1..=n).filter(|d| n % d == 0) {
                prod = prod.mul(&QPoly::from_ints(&cyclotomic_polynomial(d)));
            }
            let mut expect = vec![BigInt::zero(); n + 1];
            expect[0] = BigInt::from(-1);
            expect[n] = BigInt::one();
            assert_eq!(prod, QPoly::from_ints(&expect));
        }
    }
}
