//! Cyclic trigonal curves (p = 3) with level-3 structure.
//!
//! Components of the moduli space are indexed by pairs `(m_1, m_2)`; each
//! index contributes `|Sp(2g, F_3)| / |A_m|` components, where `A_m` is the
//! group of relabellings of the branch points that give the same curve.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::branch::MultiplicityVector;
use crate::divisor::DivisorLattice;
use crate::error::{Error, Result};
use crate::exact::Prime;
use crate::hyperelliptic::factorial;
use crate::perm::{closure, Permutation};
use crate::symplectic::{divide_exact, sp_group_order, FpMatrix};
use crate::{BigCount, ExactRational};

const P: Prime = Prime::THREE;

/// Largest `|A_m|` for which [`psi_subgroup`] enumerates the image.
pub const PSI_ENUMERATION_BOUND: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigonalIndex {
    pub g: u32,
    pub m: u64,
    pub vectors: Vec<MultiplicityVector>,
}

/// The index set for genus `g`: `(m - 3i - r, 3i + r)` where `m = g + 2`,
/// `r = -m mod 3` and `0 <= 6i <= m - 2r`.
pub fn trigonal_indexing_set(g: u32) -> Result<TrigonalIndex> {
    if g == 0 {
        return Err(Error::Precondition("genus must be positive".into()));
    }
    let m = g as u64 + 2;
    let r = (3 - m % 3) % 3;
    let mut vectors = Vec::new();
    let mut i = 0;
    while 6 * i + 2 * r <= m {
        let second = 3 * i + r;
        vectors.push(MultiplicityVector::new(vec![m - second, second], P)?);
        i += 1;
    }
    Ok(TrigonalIndex { g, m, vectors })
}

/// `A_m` as a permutation group on the `m` branch points (0-based, block
/// order: exponent-1 points first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    pub m_vector: MultiplicityVector,
    pub order: BigCount,
    pub generators: Vec<Permutation>,
}

fn check_trigonal(m_vector: &MultiplicityVector) -> Result<(usize, usize)> {
    if m_vector.prime() != P {
        return Err(Error::InvalidVector(format!("{m_vector} is not a p = 3 vector")));
    }
    let c = m_vector.counts();
    if m_vector.total() < 3 {
        return Err(Error::InvalidVector(format!(
            "{m_vector} has fewer than 3 branch points"
        )));
    }
    Ok((c[0] as usize, c[1] as usize))
}

pub fn aut_group(m_vector: &MultiplicityVector) -> Result<AutGroup> {
    let (m1, m2) = check_trigonal(m_vector)?;
    let m = m1 + m2;
    let mut order = factorial(m1 as u64) * factorial(m2 as u64);
    let mut generators: Vec<Permutation> = (0..m - 1)
        .filter(|&i| (i + 1 < m1) || i >= m1)
        .map(|i| Permutation::transposition(m, i, i + 1))
        .collect();
    if m1 == m2 {
        order *= 2u32;
        // zeta = 2 swaps the two blocks, keeping positions inside each block
        let swap = (0..m).map(|k| (k + m1) % m).collect();
        generators.push(Permutation::from_images(swap)?);
    }
    Ok(AutGroup {
        m_vector: m_vector.clone(),
        order,
        generators,
    })
}

impl AutGroup {
    /// Every element, by closure in `S_m`.
    pub fn elements(&self, limit: usize) -> Result<HashSet<Permutation>> {
        let m = self.m_vector.total() as usize;
        closure(Permutation::identity(m), &self.generators, |a, b| a * b, limit)
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }
}

/// Image of a relabelling: the action on `D_1..D_g` and its symplectic
/// extension `blockdiag(A, (A^T)^{-1})` on `(D_1..D_g, E_1..E_g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiImage {
    pub delta_block: FpMatrix,
    pub full_matrix: FpMatrix,
}

fn lattice_for(m_vector: &MultiplicityVector) -> Result<(DivisorLattice, u32)> {
    let mut ks = m_vector.block_exponents();
    let base = ks.pop().expect("m >= 3");
    Ok((DivisorLattice::new(ks, P)?, base))
}

/// `Psi(sigma)` for any `sigma` in `A_m`.
pub fn psi_image(m_vector: &MultiplicityVector, sigma: &Permutation) -> Result<PsiImage> {
    check_trigonal(m_vector)?;
    let (lattice, base) = lattice_for(m_vector)?;
    let delta_block = lattice.relabel_action(base, sigma)?;
    let inv = delta_block
        .inverse()
        .ok_or_else(|| Error::Precondition(format!("Psi({sigma}) is singular on the span")))?;
    let full_matrix = delta_block.block_diag(&inv.transpose());
    Ok(PsiImage {
        delta_block,
        full_matrix,
    })
}

/// `Psi` on one of the generators returned by [`aut_group`].
pub fn psi_generator_image(m_vector: &MultiplicityVector, generator: &Permutation) -> Result<PsiImage> {
    let aut = aut_group(m_vector)?;
    if !aut.generators.contains(generator) {
        return Err(Error::UnknownGenerator(format!("{generator} for {m_vector}")));
    }
    psi_image(m_vector, generator)
}

/// Closure of the generator images, without checking its order.
pub fn psi_image_closure(m_vector: &MultiplicityVector, limit: usize) -> Result<HashSet<FpMatrix>> {
    let aut = aut_group(m_vector)?;
    let gens = aut
        .generators
        .iter()
        .map(|s| psi_image(m_vector, s).map(|im| im.full_matrix))
        .collect::<Result<Vec<_>>>()?;
    let n = 2 * (m_vector.total() as usize - 2);
    closure(FpMatrix::identity(n, P), &gens, |a, b| a * b, limit)
}

/// `Psi(A_m)` inside Sp(2g, F_3). Its order must equal `|A_m|`; a smaller
/// image is reported as `NotInjective`.
pub fn psi_subgroup(m_vector: &MultiplicityVector) -> Result<Vec<FpMatrix>> {
    let aut = aut_group(m_vector)?;
    let order = match aut.order_u64() {
        Some(o) if o <= PSI_ENUMERATION_BOUND => o,
        _ => {
            return Err(Error::TooLarge(format!(
                "|A_m| = {} for {m_vector} exceeds {PSI_ENUMERATION_BOUND}",
                aut.order
            )))
        }
    };
    let image = psi_image_closure(m_vector, order as usize + 1)?;
    if image.len() as u64 != order {
        return Err(Error::NotInjective {
            m_vector: m_vector.to_string(),
            expected: order,
            found: image.len() as u64,
        });
    }
    Ok(image.into_iter().collect())
}

/// Closed formula for the number of components of the level-3 moduli
/// space, evaluated in exact rational arithmetic.
pub fn component_count_formula(g: u32) -> Result<BigCount> {
    if g == 0 {
        return Err(Error::Precondition("genus must be positive".into()));
    }
    let m = g as i64 + 2;
    // g + 2 = 3n - k with 0 <= k <= 2
    let k = (3 - m % 3) % 3;
    let bound = ExactRational::new(BigInt::from(m - 2 * k), BigInt::from(6)).ceil();
    let upper = bound.to_integer().to_i64().expect("small");
    let mut sum = ExactRational::zero();
    for i in 0..upper.max(0) {
        let a = 3 * i + k;
        let den = factorial(a as u64) * factorial((m - a) as u64);
        sum += ExactRational::new(BigInt::from(1), BigInt::from(den));
    }
    if g.is_multiple_of(2) {
        let half = g as u64 / 2 + 1;
        let f = factorial(half);
        sum += ExactRational::new(BigInt::from(1), BigInt::from(2u32 * &f * &f));
    }
    let total = sum * ExactRational::from_integer(BigInt::from(sp_group_order(g, P)));
    if !total.is_integer() {
        return Err(Error::NonIntegral(format!("formula at g = {g} gives {total}")));
    }
    total
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::NonIntegral(format!("negative count at g = {g}")))
}

/// One index's contribution to the census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub m_vector: MultiplicityVector,
    pub aut_order: BigCount,
    pub components: BigCount,
}

pub fn census_rows(g: u32) -> Result<Vec<CensusRow>> {
    let sp = sp_group_order(g, P);
    trigonal_indexing_set(g)?
        .vectors
        .into_iter()
        .map(|v| {
            let aut = aut_group(&v)?;
            let components = divide_exact(&sp, &aut.order, &format!("|Sp(2g,F_3)| / |A_{v}|"))?;
            Ok(CensusRow {
                m_vector: v,
                aut_order: aut.order,
                components,
            })
        })
        .collect()
}

/// `sum over m of |Sp(2g, F_3)| / |A_m|`.
pub fn census_sum(g: u32) -> Result<BigCount> {
    Ok(census_rows(g)?.into_iter().map(|r| r.components).sum())
}
