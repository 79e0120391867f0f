//! The symplectic homology lattice `H_1(Σ_g) ≅ Z^{2g}`.
//!
//! Coefficients are ordered `(a1, b1, a2, b2, …)` and the pairing is fixed
//! once: `⟨a_i, b_i⟩ = +1`, every other basis pairing is zero.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface_core::matrix::IntegerMatrix;
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    genus: usize,
    coeffs: Vec<BigInt>,
}

impl HomologyClass {
    pub fn zero(genus: usize) -> Self {
        HomologyClass {
            genus,
            coeffs: vec![BigInt::zero(); 2 * genus],
        }
    }

    pub fn new(genus: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != 2 * genus {
            return Err(Error::GenusMismatch {
                expected: 2 * genus,
                found: coeffs.len(),
            });
        }
        Ok(HomologyClass { genus, coeffs })
    }

    pub fn from_i64(genus: usize, coeffs: &[i64]) -> Result<Self> {
        HomologyClass::new(genus, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `p·a_h + q·b_h` for a 1-based handle `h`.
    pub fn slope(genus: usize, handle: usize, p: i64, q: i64) -> Self {
        let mut c = HomologyClass::zero(genus);
        c.coeffs[2 * (handle - 1)] = p.into();
        c.coeffs[2 * (handle - 1) + 1] = q.into();
        c
    }

    pub fn a(genus: usize, handle: usize) -> Self {
        HomologyClass::slope(genus, handle, 1, 0)
    }

    pub fn b(genus: usize, handle: usize) -> Self {
        HomologyClass::slope(genus, handle, 0, 1)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lossy view for tests and small displays; panics if a coefficient exceeds `i64`.
    pub fn to_i64(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| i64::try_from(c).expect("coefficient fits i64"))
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        HomologyClass {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// 1-based handles with a non-zero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.genus)
            .filter(|h| !self.coeffs[2 * h].is_zero() || !self.coeffs[2 * h + 1].is_zero())
            .map(|h| h + 1)
            .collect()
    }

    /// The `(a_h, b_h)` coefficient pair.
    pub fn handle_coeffs(&self, handle: usize) -> (&BigInt, &BigInt) {
        (&self.coeffs[2 * (handle - 1)], &self.coeffs[2 * (handle - 1) + 1])
    }

    pub fn reindex(&self, new_genus: usize, map: impl Fn(usize) -> usize) -> Self {
        let mut out = HomologyClass::zero(new_genus);
        for h in 1..=self.genus {
            let (a, b) = self.handle_coeffs(h);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let t = map(h);
            out.coeffs[2 * (t - 1)] = a.clone();
            out.coeffs[2 * (t - 1) + 1] = b.clone();
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_genus(self, other)?;
        Ok(HomologyClass {
            genus: self.genus,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }
}

fn same_genus(u: &HomologyClass, v: &HomologyClass) -> Result<()> {
    if u.genus != v.genus {
        return Err(Error::GenusMismatch {
            expected: u.genus,
            found: v.genus,
        });
    }
    Ok(())
}

impl Add for &HomologyClass {
    type Output = HomologyClass;
    fn add(self, rhs: &HomologyClass) -> HomologyClass {
        self.checked_add(rhs).expect("genus mismatch in homology addition")
    }
}

impl Sub for &HomologyClass {
    type Output = HomologyClass;
    fn sub(self, rhs: &HomologyClass) -> HomologyClass {
        self + &(-rhs)
    }
}

impl Neg for &HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        HomologyClass {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = format!("{}{}", if i % 2 == 0 { 'a' } else { 'b' }, i / 2 + 1);
            terms.push(match c {
                c if *c == BigInt::from(1) => name,
                c if *c == BigInt::from(-1) => format!("-{name}"),
                c => format!("{c}{name}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// `uᵀ J v` for the standard symplectic form.
pub fn algebraic_intersection(u: &HomologyClass, v: &HomologyClass) -> Result<BigInt> {
    same_genus(u, v)?;
    let mut total = BigInt::zero();
    for h in 0..u.genus {
        let (ua, ub) = (&u.coeffs[2 * h], &u.coeffs[2 * h + 1]);
        let (va, vb) = (&v.coeffs[2 * h], &v.coeffs[2 * h + 1]);
        total += ua * vb - ub * va;
    }
    Ok(total)
}

/// `2g × n` matrix whose columns are the given classes.
pub fn classes_matrix(genus: usize, classes: &[HomologyClass]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(2 * genus, classes.len());
    for (j, c) in classes.iter().enumerate() {
        for (i, x) in c.coeffs.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

/// Which homological condition a list of classes fails, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LagrangianFailure {
    WrongCount { expected: usize, found: usize },
    NonzeroPairing { i: usize, j: usize, value: BigInt },
    NotPrimitive { factor: BigInt },
}

impl fmt::Display for LagrangianFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LagrangianFailure::WrongCount { expected, found } => {
                write!(f, "expected {expected} classes, found {found}")
            }
            LagrangianFailure::NonzeroPairing { i, j, value } => {
                write!(f, "classes {} and {} pair to {value}", i + 1, j + 1)
            }
            LagrangianFailure::NotPrimitive { factor } => {
                write!(f, "span is not a direct summand (invariant factor {factor})")
            }
        }
    }
}

/// Recomputes the Lagrangian conditions; `None` means all hold.
pub fn lagrangian_failure(genus: usize, classes: &[HomologyClass]) -> Result<Option<LagrangianFailure>> {
    for c in classes {
        if c.genus != genus {
            return Err(Error::GenusMismatch {
                expected: genus,
                found: c.genus,
            });
        }
    }
    if classes.len() != genus {
        return Ok(Some(LagrangianFailure::WrongCount {
            expected: genus,
            found: classes.len(),
        }));
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let value = algebraic_intersection(&classes[i], &classes[j])?;
            if !value.is_zero() {
                return Ok(Some(LagrangianFailure::NonzeroPairing { i, j, value }));
            }
        }
    }
    let factors = classes_matrix(genus, classes).smith_normal_form().invariant_factors();
    let one = BigInt::from(1);
    if factors.len() < genus {
        return Ok(Some(LagrangianFailure::NotPrimitive { factor: BigInt::zero() }));
    }
    if let Some(d) = factors.iter().find(|d| **d != one) {
        return Ok(Some(LagrangianFailure::NotPrimitive { factor: d.clone() }));
    }
    Ok(None)
}

/// Homological test for a complete disk system: `g` classes spanning a
/// rank-`g` isotropic direct summand.
pub fn lagrangian_verdict(classes: &[HomologyClass], genus: usize) -> Result<Verdict> {
    let failure = lagrangian_failure(genus, classes)?;
    let witness = Witness::Lagrangian {
        genus,
        classes: classes.to_vec(),
    };
    Ok(match failure {
        None => Verdict::verified("isotropic primitive rank-g sublattice", witness),
        Some(f) => Verdict::refuted(f.to_string(), witness),
    })
}
