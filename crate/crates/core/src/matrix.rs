//! Dense square matrices over Z, Q and Q(zeta_N), row-major.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{CyclotomicField, CyclotomicNumber};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Matrix unit E_ij.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.data[i * n + j] = BigInt::one();
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self { n, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, found: other.n })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { n: self.n, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        Ok(self.rows().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Rows as decimal strings, for reports.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.rows().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn to_cyclotomic(&self, field: &Arc<CyclotomicField>) -> CycMatrix {
        CycMatrix {
            n: self.n,
            field: field.clone(),
            data: self.data.iter().map(|x| CyclotomicNumber::from_integer(field, x.clone())).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Square matrix over Q(zeta_N), all entries in one field.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    n: usize,
    field: Arc<CyclotomicField>,
    data: Vec<CyclotomicNumber>,
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

impl CycMatrix {
    pub fn zeros(field: &Arc<CyclotomicField>, n: usize) -> Self {
        Self { n, field: field.clone(), data: vec![CyclotomicNumber::zero(field); n * n] }
    }

    pub fn identity(field: &Arc<CyclotomicField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n);
        for i in 0..n {
            m.data[i * n + i] = CyclotomicNumber::one(field);
        }
        m
    }

    pub fn diagonal(field: &Arc<CyclotomicField>, diag: Vec<CyclotomicNumber>) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(field, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d)?;
        }
        Ok(m)
    }

    /// Entries are embedded into `field`; errors if any order does not divide it.
    pub fn from_rows(field: &Arc<CyclotomicField>, rows: Vec<Vec<CyclotomicNumber>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            for x in r {
                data.push(x.embed(field)?);
            }
        }
        Ok(Self { n, field: field.clone(), data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) -> Result<()> {
        self.data[i * self.n + j] = v.embed(&self.field)?;
        Ok(())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CyclotomicNumber]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.field.order() != other.field.order() {
            return Err(Error::OrderMismatch(self.field.order(), other.field.order()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let mut out = Self::zeros(&self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] = &out.data[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            n: self.n,
            field: self.field.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        Self { n, field: self.field.clone(), data }
    }

    pub fn conj(&self) -> Self {
        Self { n: self.n, field: self.field.clone(), data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Result<Self> {
        let c = c.embed(&self.field)?;
        Ok(Self { n: self.n, field: self.field.clone(), data: self.data.iter().map(|x| x * &c).collect() })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Rank by Gaussian elimination over the field.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut rows: Vec<Vec<CyclotomicNumber>> = self.rows().map(|r| r.to_vec()).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else { continue };
            rows.swap(rank, p);
            let inv = rows[rank][col].inv().expect("nonzero pivot");
            let pivot: Vec<_> = rows[rank].iter().map(|x| x * &inv).collect();
            for r in (rank + 1)..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = rows[r][col].clone();
                for c in col..n {
                    rows[r][c] = &rows[r][c] - &(&f * &pivot[c]);
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }
}

/// Square matrix over Q; used for commutant bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_flat(n: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        self.data
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(|data| IntMatrix { n: self.n, data })
    }

    pub fn to_cyclotomic(&self, field: &Arc<CyclotomicField>) -> CycMatrix {
        CycMatrix {
            n: self.n,
            field: field.clone(),
            data: self.data.iter().map(|q| CyclotomicNumber::from_rational(field, q)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_units_do_not_commute() {
        let (a, b) = (IntMatrix::unit(2, 0, 1), IntMatrix::unit(2, 1, 0));
        assert_eq!(a.mul(&b).unwrap(), IntMatrix::unit(2, 0, 0));
        assert_eq!(b.mul(&a).unwrap(), IntMatrix::unit(2, 1, 1));
    }

    #[test]
    fn dimension_errors() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::identity(3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.mul_vec(&[BigInt::one()]).is_err());
        assert!(IntMatrix::from_i64(&[&[1, 2], &[3]]).is_err());
    }

    #[test]
    fn cyclotomic_rank() {
        let f = CyclotomicField::new(8);
        let z = |k| CyclotomicNumber::zeta_pow(&f, k);
        let m = CycMatrix::from_rows(&f, vec![vec![z(0), z(1)], vec![z(2), z(3)]]).unwrap();
        assert_eq!(m.rank(), 1);
        let m = CycMatrix::from_rows(&f, vec![vec![z(0), z(1)], vec![z(1), z(0)]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(CycMatrix::zeros(&f, 3).rank(), 0);
    }
}
