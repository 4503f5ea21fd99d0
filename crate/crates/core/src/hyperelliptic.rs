//! Level-2 structure on hyperelliptic curves: the symplectic basis built from
//! ramification classes and the induced `S_{2g+2} -> Sp(2g, F_2)`.

use crate::divisor::{pairing_exponent, DivisorClass, DivisorLattice};
use crate::error::{Error, Result};
use crate::exact::Prime;
use crate::perm::Permutation;
use crate::symplectic::{divide_exact, sp_group_order, FpMatrix};
use crate::BigCount;

/// `(A_1, ..., A_g, B_1, ..., B_g)` with `A_i = D_{2i-1} + D_{2i}` and
/// `B_i = D_{2i} + ... + D_{2g+1}`, stored in normal form over
/// `D_1, ..., D_{2g}`.
#[derive(Debug, Clone)]
pub struct HyperellipticBasis {
    g: usize,
    lattice: DivisorLattice,
    a_vectors: Vec<DivisorClass>,
    b_vectors: Vec<DivisorClass>,
}

fn lattice(g: usize) -> DivisorLattice {
    DivisorLattice::new(vec![1; 2 * g + 1], Prime::TWO).expect("all-one exponents")
}

pub fn build_basis(g: usize) -> Result<HyperellipticBasis> {
    if g == 0 {
        return Err(Error::Precondition("genus must be positive".into()));
    }
    let lattice = lattice(g);
    let len = 2 * g + 1;
    let mut a_vectors = Vec::with_capacity(g);
    let mut b_vectors = Vec::with_capacity(g);
    for i in 1..=g {
        let mut a = vec![0i64; len];
        a[2 * i - 2] = 1;
        a[2 * i - 1] = 1;
        a_vectors.push(lattice.normal_form(&a)?);
        let mut b = vec![0i64; len];
        for slot in b.iter_mut().skip(2 * i - 1) {
            *slot = 1;
        }
        b_vectors.push(lattice.normal_form(&b)?);
    }
    Ok(HyperellipticBasis {
        g,
        lattice,
        a_vectors,
        b_vectors,
    })
}

impl HyperellipticBasis {
    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn lattice(&self) -> &DivisorLattice {
        &self.lattice
    }

    pub fn a_vectors(&self) -> &[DivisorClass] {
        &self.a_vectors
    }

    pub fn b_vectors(&self) -> &[DivisorClass] {
        &self.b_vectors
    }

    /// Basis vectors in order `A_1..A_g, B_1..B_g`.
    pub fn vectors(&self) -> impl Iterator<Item = &DivisorClass> {
        self.a_vectors.iter().chain(&self.b_vectors)
    }

    /// Gram matrix of pairing exponents; equals the standard form.
    pub fn gram_matrix(&self) -> Result<FpMatrix> {
        let basis: Vec<&DivisorClass> = self.vectors().collect();
        let n = basis.len();
        let mut m = FpMatrix::zero(n, Prime::TWO);
        for (r, x) in basis.iter().enumerate() {
            for (c, y) in basis.iter().enumerate() {
                m.set(r, c, pairing_exponent(x, y)?.value as i64);
            }
        }
        Ok(m)
    }

    /// Columns are the basis vectors in `D_1..D_{2g}` coordinates.
    pub fn change_of_basis(&self) -> FpMatrix {
        let cols: Vec<Vec<u32>> = self.vectors().map(|v| v.basis_coords().to_vec()).collect();
        FpMatrix::from_columns(&cols, Prime::TWO).expect("square")
    }
}

/// Matrix in the `(A, B)` basis of relabelling the branch points by `sigma`
/// (degree `2g+2`, the last point is `Q_inf`). Defined for every `g >= 1`;
/// only for `g >= 2` is the resulting map injective.
pub fn hyperelliptic_action(basis: &HyperellipticBasis, sigma: &Permutation) -> Result<FpMatrix> {
    let on_d = basis.lattice.relabel_action(1, sigma)?;
    let p = basis.change_of_basis();
    let p_inv = p
        .inverse()
        .ok_or_else(|| Error::Precondition("basis is singular".into()))?;
    Ok(&(&p_inv * &on_d) * &p)
}

/// `S_{2g+2} -> Sp(2g, F_2)` for `g > 1`.
pub fn embed_symmetric_group(g: usize, sigma: &Permutation) -> Result<FpMatrix> {
    if g < 2 {
        return Err(Error::DomainWarning(g as u64));
    }
    hyperelliptic_action(&build_basis(g)?, sigma)
}

/// Components of `Hyp_g[2]`: `|Sp(2g, F_2)| / (2g+2)!`.
pub fn hyp_component_count(g: u32) -> Result<BigCount> {
    if g < 2 {
        return Err(Error::DomainWarning(g as u64));
    }
    let sp = sp_group_order(g, Prime::TWO);
    let fact = factorial(2 * g as u64 + 2);
    divide_exact(&sp, &fact, "|Sp(2g,F_2)| / (2g+2)!")
}

pub(crate) fn factorial(n: u64) -> BigCount {
    (1..=n).fold(BigCount::from(1u32), |acc, k| acc * BigCount::from(k))
}
