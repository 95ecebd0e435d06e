//! Matrix model of KK(K_A, K_A) = End(K_0(K_A)) = M_n(Z).
//!
//! A class acts on K_0 = KK(C, K_A) on the right in the Kasparov sense,
//! `x × a`, which in the column convention is the matrix-vector product
//! `a · x`. Consequently the Kasparov product reverses the order of matrix
//! multiplication: `a × b = b · a`, so that the class of psi followed by the
//! class of phi is the class of phi ∘ psi.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::{fusion_matrix, ring_multiply, FusionRing, KRingElement, VACUUM};
use crate::matrix::IntMatrix;
use crate::verify::{Check, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KKClass(IntMatrix);

impl KKClass {
    pub fn new(m: IntMatrix) -> Self {
        Self(m)
    }

    /// The unit {id}.
    pub fn identity(n: usize) -> Self {
        Self(IntMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn add(&self, other: &KKClass) -> Result<KKClass> {
        Ok(Self(self.0.add(&other.0)?))
    }
}

/// j([i]): the class of the sector's endomorphism, i.e. its fusion matrix.
pub fn kk_from_sector(ring: &FusionRing, i: usize) -> Result<KKClass> {
    fusion_matrix(ring, i)
}

/// j on a direct sum of sectors, given by nonnegative multiplicities.
pub fn kk_from_element(ring: &FusionRing, x: &KRingElement) -> Result<KKClass> {
    if let Some(pos) = x.coords().iter().position(|c| c < &BigInt::zero()) {
        return Err(Error::NegativeCoordinate(pos));
    }
    kk_from_virtual(ring, x)
}

/// The ring extension of j to virtual classes (formal differences of sectors).
pub fn kk_from_virtual(ring: &FusionRing, x: &KRingElement) -> Result<KKClass> {
    let n = ring.rank();
    if x.rank() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.rank() });
    }
    let mut acc = IntMatrix::zeros(n);
    for (i, c) in x.coords().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&fusion_matrix(ring, i)?.into_matrix().scale(c))?;
        }
    }
    Ok(KKClass(acc))
}

/// a × b, the Kasparov product; equals matrix(b) · matrix(a).
pub fn kasparov_product(a: &KKClass, b: &KKClass) -> Result<KKClass> {
    Ok(KKClass(b.0.mul(&a.0)?))
}

/// x × a for x in K_0 = KK(C, K_A); equals matrix(a) · x.
pub fn act(x: &KRingElement, a: &KKClass) -> Result<KRingElement> {
    Ok(KRingElement::new(a.0.mul_vec(x.coords())?))
}

/// Exhaustive check over the sector basis that j is an injective unital
/// semiring homomorphism satisfying x × j([rho]) = eta_[rho](x).
///
/// The right-hand side eta_[rho](x) is evaluated as the fusion product
/// [rho]·x straight from the tensor, independently of the matrix route.
pub fn verify_theorem2(ring: &FusionRing) -> Result<VerificationReport> {
    let n = ring.rank();
    let j: Vec<KKClass> = (0..n).map(|i| kk_from_sector(ring, i)).collect::<Result<_>>()?;
    let e = |i| KRingElement::basis(n, i);

    let mut mult = Check::new("multiplicativity");
    let mut add = Check::new("additivity");
    for a in 0..n {
        for b in 0..n {
            let product = ring_multiply(ring, &e(a), &e(b))?;
            let lhs = kk_from_element(ring, &product)?;
            let rhs = kasparov_product(&j[a], &j[b])?;
            mult.record(lhs == rhs, || vec![("rho1", a), ("rho2", b)]);

            let sum = kk_from_element(ring, &(&e(a) + &e(b)))?;
            add.record(sum == j[a].add(&j[b])?, || vec![("rho1", a), ("rho2", b)]);
        }
    }

    let mut unital = Check::new("unitality");
    unital.record(j[VACUUM] == KKClass::identity(n), || vec![("sector", VACUUM)]);

    let mut injective = Check::new("injectivity");
    for a in 0..n {
        for b in (a + 1)..n {
            injective.record(j[a] != j[b], || vec![("rho1", a), ("rho2", b)]);
        }
    }

    let mut eq1 = Check::new("kasparov_action");
    for rho in 0..n {
        for m in 0..n {
            let lhs = act(&e(m), &j[rho])?;
            let rhs = ring_multiply(ring, &e(rho), &e(m))?;
            eq1.record(lhs == rhs, || vec![("rho", rho), ("x", m)]);
        }
    }

    Ok(VerificationReport::new(
        format!("KK homomorphism j (rank {n})"),
        vec![mult.finish(), add.finish(), unital.finish(), injective.finish(), eq1.finish()],
    ))
}

/// Two classes whose Kasparov products in the two orders differ, showing that
/// the commutative image of j is a proper subring of M_n(Z).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperWitness {
    #[serde(serialize_with = "ser_class")]
    pub a: KKClass,
    #[serde(serialize_with = "ser_class")]
    pub b: KKClass,
    #[serde(serialize_with = "ser_class")]
    pub a_times_b: KKClass,
    #[serde(serialize_with = "ser_class")]
    pub b_times_a: KKClass,
    pub image_commutes: bool,
}

fn ser_class<S: serde::Serializer>(c: &KKClass, s: S) -> std::result::Result<S::Ok, S::Error> {
    c.0.to_string_rows().serialize(s)
}

/// `None` for rank 1, where M_1(Z) = Z is commutative.
pub fn properness_witness(ring: &FusionRing) -> Result<Option<ProperWitness>> {
    let n = ring.rank();
    if n < 2 {
        return Ok(None);
    }
    let a = KKClass(IntMatrix::unit(n, 0, 1));
    let b = KKClass(IntMatrix::unit(n, 1, 0));
    let a_times_b = kasparov_product(&a, &b)?;
    let b_times_a = kasparov_product(&b, &a)?;
    debug_assert_ne!(a_times_b, b_times_a);

    let j: Vec<KKClass> = (0..n).map(|i| kk_from_sector(ring, i)).collect::<Result<_>>()?;
    let mut image_commutes = true;
    'outer: for x in 0..n {
        for y in (x + 1)..n {
            if kasparov_product(&j[x], &j[y])? != kasparov_product(&j[y], &j[x])? {
                image_commutes = false;
                break 'outer;
            }
        }
    }
    Ok(Some(ProperWitness { a, b, a_times_b, b_times_a, image_commutes }))
}

/// Entry-wise view used for the identity check in reports.
pub fn is_unit(a: &KKClass) -> bool {
    let n = a.dim();
    (0..n).all(|i| (0..n).all(|j| *a.0.get(i, j) == if i == j { BigInt::one() } else { BigInt::zero() }))
}
