//! Rational commutant of {S, T} by fraction-free elimination.
//!
//! The conditions ZS = SZ and ZT = TZ are linear in the n^2 entries of Z
//! with coefficients in Q(zeta_N). Expanding each coefficient over the power
//! basis turns every cyclotomic equation into phi(N) rational equations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ModularData;
use crate::exact_arith::CyclotomicNumber;
use crate::matrix::{CycMatrix, RatMatrix};

/// Integer row echelon form built one row at a time. Rows are kept primitive
/// with a positive leading entry; `pivots[c]` holds the row leading at c.
struct Echelon {
    ncols: usize,
    pivots: Vec<Option<Vec<BigInt>>>,
    rank: usize,
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|x| *x /= &g);
    }
    if row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        row.iter_mut().for_each(|x| *x = -&*x);
    }
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Self { ncols, pivots: vec![None; ncols], rank: 0 }
    }

    fn is_full(&self) -> bool {
        self.rank == self.ncols
    }

    fn insert(&mut self, mut row: Vec<BigInt>) {
        make_primitive(&mut row);
        loop {
            let Some(c) = row.iter().position(|x| !x.is_zero()) else { return };
            let Some(p) = &self.pivots[c] else {
                self.pivots[c] = Some(row);
                self.rank += 1;
                return;
            };
            // row <- a*row - b*p with a/b = p[c]/row[c] in lowest terms.
            let g = p[c].gcd(&row[c]);
            let a = &p[c] / &g;
            let b = &row[c] / &g;
            for j in c..self.ncols {
                if !a.is_one() {
                    row[j] *= &a;
                }
                if !p[j].is_zero() {
                    row[j] -= &b * &p[j];
                }
            }
            make_primitive(&mut row);
        }
    }

    /// One nullspace vector per free column, by back substitution.
    fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let free: Vec<usize> = (0..self.ncols).filter(|&c| self.pivots[c].is_none()).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                for c in (0..self.ncols).rev() {
                    let Some(p) = &self.pivots[c] else { continue };
                    let s: BigRational = ((c + 1)..self.ncols)
                        .filter(|&j| !p[j].is_zero() && !x[j].is_zero())
                        .map(|j| BigRational::from_integer(p[j].clone()) * &x[j])
                        .sum();
                    x[c] = -s / BigRational::from_integer(p[c].clone());
                }
                x
            })
            .collect()
    }
}

/// Reduced row echelon form over Q; zero rows dropped.
pub(crate) fn rref(mut rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        rows[r].iter_mut().for_each(|x| *x *= &inv);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Rows of the rational system expressing ZM = MZ, one per (equation, basis power).
fn commutator_rows(m: &CycMatrix) -> Vec<Vec<BigInt>> {
    let n = m.dim();
    let phi = m.field().degree();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            // sum_c Z_ac M_cb - sum_c M_ac Z_cb
            let mut coeffs: BTreeMap<usize, CyclotomicNumber> = BTreeMap::new();
            for c in 0..n {
                let x = m.get(c, b);
                if !x.is_zero() {
                    let e = coeffs.entry(a * n + c).or_insert_with(|| CyclotomicNumber::zero(m.field()));
                    *e = &*e + x;
                }
                let y = m.get(a, c);
                if !y.is_zero() {
                    let e = coeffs.entry(c * n + b).or_insert_with(|| CyclotomicNumber::zero(m.field()));
                    *e = &*e - y;
                }
            }
            coeffs.retain(|_, v| !v.is_zero());
            if coeffs.is_empty() {
                continue;
            }
            let expanded: Vec<(usize, Vec<BigRational>)> =
                coeffs.iter().map(|(u, v)| (*u, v.coeffs())).collect();
            for t in 0..phi {
                let den = expanded.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c[t].denom()));
                let mut row = vec![BigInt::zero(); n * n];
                let mut any = false;
                for (u, c) in &expanded {
                    if !c[t].is_zero() {
                        row[*u] = c[t].numer() * (&den / c[t].denom());
                        any = true;
                    }
                }
                if any {
                    out.push(row);
                }
            }
        }
    }
    out
}

/// Basis over Q of {Z : ZS = SZ, ZT = TZ}, in reduced echelon form with
/// respect to the row-major ordering of the entries of Z.
pub fn commutant_basis(md: &ModularData) -> Vec<RatMatrix> {
    let n = md.rank();
    let mut ech = Echelon::new(n * n);
    // T first: for diagonal T its equations pin most entries to zero at once.
    for row in commutator_rows(md.t()).into_iter().chain(commutator_rows(md.s())) {
        if ech.is_full() {
            break;
        }
        ech.insert(row);
    }
    let null = ech.nullspace();
    if null.is_empty() {
        return Vec::new();
    }
    rref(null).into_iter().map(|v| RatMatrix::from_flat(n, v)).collect()
}
