//! Bounded enumeration of modular invariants over the commutant lattice.
//!
//! The commutant basis is in reduced echelon form, so each basis matrix B_t
//! has a leading entry 1 at a position where every other basis matrix is 0.
//! An integer Z = sum c_t B_t therefore has integer coordinates c_t equal to
//! its entries at those positions, and the search walks c_t within the entry
//! bounds instead of the full n^2-dimensional box.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{check_modular_invariant, commutant_basis, verlinde_fusion, ModularData};
use crate::error::{Error, Result};
use crate::fusion::{quantum_dimensions, VACUUM};
use crate::kk::KKClass;
use crate::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    /// Entries are bounded by ceil(multiplier * d_i * d_j).
    pub bound_multiplier: BigRational,
    /// Worker threads; the output does not depend on this.
    pub jobs: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { bound_multiplier: BigRational::one(), jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModularInvariant {
    z: IntMatrix,
}

impl ModularInvariant {
    pub fn matrix(&self) -> &IntMatrix {
        &self.z
    }

    /// The same integer matrix read as an element of KK(K_A, K_A).
    pub fn kk_class(&self) -> KKClass {
        KKClass::new(self.z.clone())
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub commutant_dim: usize,
    pub bound_multiplier: BigRational,
    /// Upper bound used for each entry.
    pub bounds: IntMatrix,
    /// Sorted lexicographically by row-major entries.
    pub invariants: Vec<ModularInvariant>,
}

struct Search {
    n2: usize,
    scale: BigInt,
    /// scale * B_t, integral.
    basis: Vec<Vec<BigInt>>,
    ranges: Vec<(BigInt, BigInt)>,
    lower: Vec<BigInt>,
    upper: Vec<BigInt>,
    /// Per depth t: componentwise min / max of sum_{s >= t} c_s W_s over the box.
    suffix_min: Vec<Vec<BigInt>>,
    suffix_max: Vec<Vec<BigInt>>,
}

impl Search {
    fn feasible(&self, depth: usize, partial: &[BigInt]) -> bool {
        (0..self.n2).all(|e| {
            let lo = &partial[e] + &self.suffix_min[depth][e];
            let hi = &partial[e] + &self.suffix_max[depth][e];
            lo <= &self.upper[e] * &self.scale && hi >= &self.lower[e] * &self.scale
        })
    }

    fn extend(&self, partial: &[BigInt], t: usize, c: &BigInt) -> Vec<BigInt> {
        partial
            .iter()
            .zip(&self.basis[t])
            .map(|(p, w)| if w.is_zero() || c.is_zero() { p.clone() } else { p + c * w })
            .collect()
    }

    fn finish(&self, partial: &[BigInt]) -> Option<Vec<BigInt>> {
        partial
            .iter()
            .enumerate()
            .map(|(e, v)| {
                let (q, r) = v.div_rem(&self.scale);
                (r.is_zero() && q >= self.lower[e] && q <= self.upper[e]).then_some(q)
            })
            .collect()
    }

    fn dfs(&self, depth: usize, partial: Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
        if depth == self.basis.len() {
            if let Some(z) = self.finish(&partial) {
                out.push(z);
            }
            return;
        }
        let (lo, hi) = &self.ranges[depth];
        let mut c = lo.clone();
        while &c <= hi {
            let next = self.extend(&partial, depth, &c);
            if self.feasible(depth + 1, &next) {
                self.dfs(depth + 1, next, out);
            }
            c += 1;
        }
    }

    /// Feasible partial assignments at a depth with enough branches to share out.
    fn prefixes(&self, want: usize) -> (usize, Vec<Vec<BigInt>>) {
        let mut depth = 0;
        let mut frontier = vec![vec![BigInt::zero(); self.n2]];
        while depth < self.basis.len() && frontier.len() < want {
            let (lo, hi) = &self.ranges[depth];
            let mut next = Vec::new();
            for p in &frontier {
                let mut c = lo.clone();
                while &c <= hi {
                    let q = self.extend(p, depth, &c);
                    if self.feasible(depth + 1, &q) {
                        next.push(q);
                    }
                    c += 1;
                }
            }
            frontier = next;
            depth += 1;
        }
        (depth, frontier)
    }
}

fn ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// All nonnegative integer Z in the commutant of {S, T} with Z_00 = 1 and
/// Z_ij <= ceil(m * d_i * d_j), sorted, each re-verified exactly.
pub fn enumerate_modular_invariants(md: &ModularData, opts: &EnumerationOptions) -> Result<Classification> {
    let n = md.rank();
    if md.s().rank() < n {
        return Err(Error::DegenerateBraiding);
    }
    if !opts.bound_multiplier.is_positive() {
        return Err(Error::ParamOutOfRange("bound multiplier must be positive".into()));
    }
    let ring = verlinde_fusion(md)?;
    let dims = quantum_dimensions(&ring);

    let mut bounds = IntMatrix::zeros(n);
    let mut lower = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let b = ceil(&(&opts.bound_multiplier * &dims[i].hi * &dims[j].hi));
            bounds.set(i, j, b);
        }
    }
    let mut upper: Vec<BigInt> = bounds.entries().to_vec();
    lower[VACUUM * n + VACUUM] = BigInt::one();
    upper[VACUUM * n + VACUUM] = BigInt::one();

    let basis = commutant_basis(md);
    let scale = basis
        .iter()
        .flat_map(|b| b.entries().iter())
        .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let scaled: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|b| b.entries().iter().map(|q| (q * BigRational::from_integer(scale.clone())).to_integer()).collect())
        .collect();
    let ranges: Vec<(BigInt, BigInt)> = basis
        .iter()
        .map(|b| {
            let lead = b.entries().iter().position(|q| !q.is_zero()).expect("nonzero basis vector");
            (lower[lead].clone(), upper[lead].clone())
        })
        .collect();

    let m = scaled.len();
    let n2 = n * n;
    let mut suffix_min = vec![vec![BigInt::zero(); n2]; m + 1];
    let mut suffix_max = vec![vec![BigInt::zero(); n2]; m + 1];
    for t in (0..m).rev() {
        let (lo, hi) = &ranges[t];
        for e in 0..n2 {
            let (a, b) = (lo * &scaled[t][e], hi * &scaled[t][e]);
            let (mn, mx) = if a <= b { (a, b) } else { (b, a) };
            suffix_min[t][e] = &suffix_min[t + 1][e] + mn;
            suffix_max[t][e] = &suffix_max[t + 1][e] + mx;
        }
    }

    let search = Search { n2, scale, basis: scaled, ranges, lower, upper, suffix_min, suffix_max };
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    if m > 0 && search.feasible(0, &vec![BigInt::zero(); n2]) {
        let jobs = opts.jobs.max(1);
        let (depth, prefixes) = search.prefixes(jobs * 4);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::ParamOutOfRange(format!("thread pool: {e}")))?;
        found = pool.install(|| {
            prefixes
                .into_par_iter()
                .map(|p| {
                    let mut out = Vec::new();
                    search.dfs(depth, p, &mut out);
                    out
                })
                .flatten()
                .collect()
        });
    }

    let mut invariants = Vec::with_capacity(found.len());
    for flat in found {
        let rows: Vec<Vec<BigInt>> = flat.chunks(n).map(<[BigInt]>::to_vec).collect();
        let z = IntMatrix::from_rows(&rows)?;
        let report = check_modular_invariant(md, &z)?;
        if !report.passed {
            return Err(Error::InvalidModularData(format!(
                "enumerated matrix failed re-verification: {}",
                report.summary()
            )));
        }
        invariants.push(ModularInvariant { z });
    }
    invariants.sort();
    invariants.dedup();

    Ok(Classification {
        commutant_dim: m,
        bound_multiplier: opts.bound_multiplier.clone(),
        bounds,
        invariants,
    })
}
