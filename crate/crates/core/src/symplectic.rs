//! Square matrices over F_p and the symplectic group Sp(2g, F_p).
//!
//! The standard form is `J = [[0, I_g], [-I_g, 0]]` in the basis order
//! `(e_1, ..., e_g, f_1, ..., f_g)`.

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{FieldScalar, Prime};
use crate::BigCount;

/// Dense `n x n` matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    n: usize,
    modulus: Prime,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(n: usize, modulus: Prime) -> Self {
        FpMatrix {
            n,
            modulus,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, modulus: Prime) -> Self {
        let mut m = Self::zero(n, modulus);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_rows(rows: &[Vec<i64>], modulus: Prime) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&v| modulus.reduce(v)));
        }
        Ok(FpMatrix { n, modulus, entries })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<u32>], modulus: Prime) -> Result<Self> {
        let n = columns.len();
        let mut m = Self::zero(n, modulus);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
            for (i, &v) in col.iter().enumerate() {
                m.entries[i * n + j] = v % modulus.get();
            }
        }
        Ok(m)
    }

    pub(crate) fn from_raw(n: usize, modulus: Prime, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        FpMatrix { n, modulus, entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldScalar {
        FieldScalar::new(self.entries[i * self.n + j] as i64, self.modulus)
    }

    #[inline]
    pub fn raw(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = self.modulus.reduce(v);
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.n).map(|i| self.raw(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.modulus)
    }

    pub fn try_mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), rhs.modulus.get()));
        }
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        let n = self.n;
        let p = self.modulus.get() as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = ((out[idx] as u64 + a * rhs.entries[k * n + j] as u64) % p) as u32;
                }
            }
        }
        Ok(FpMatrix::from_raw(n, self.modulus, out))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.modulus.get() as u64;
        (0..self.n)
            .map(|i| (0..self.n).fold(0u64, |acc, j| (acc + self.raw(i, j) as u64 * v[j] as u64) % p) as u32)
            .collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let n = self.n;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.entries[i * n + j];
            }
        }
        FpMatrix::from_raw(n, self.modulus, out)
    }

    pub fn scale(&self, c: i64) -> FpMatrix {
        let p = self.modulus;
        let c = p.reduce(c) as u64;
        let entries = self
            .entries
            .iter()
            .map(|&v| ((v as u64 * c) % p.get() as u64) as u32)
            .collect();
        FpMatrix::from_raw(self.n, p, entries)
    }

    /// Row reduction to echelon form; returns (rank, determinant).
    fn eliminate(&self) -> (usize, u32) {
        let n = self.n;
        let p = self.modulus;
        let pm = p.get() as u64;
        let mut a = self.entries.clone();
        let mut det = 1u64;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                }
                det = (pm - det) % pm;
            }
            let pv = a[rank * n + col];
            det = det * pv as u64 % pm;
            let inv = p.inv(pv).expect("nonzero pivot") as u64;
            for r in rank + 1..n {
                let f = a[r * n + col] as u64 * inv % pm;
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = f * a[rank * n + j] as u64 % pm;
                    a[r * n + j] = ((a[r * n + j] as u64 + pm - sub) % pm) as u32;
                }
            }
            rank += 1;
        }
        (rank, if rank == n { det as u32 } else { 0 })
    }

    pub fn determinant(&self) -> FieldScalar {
        FieldScalar::new(self.eliminate().1 as i64, self.modulus)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        let n = self.n;
        let p = self.modulus;
        let pm = p.get() as u64;
        let w = 2 * n;
        let mut a = vec![0u32; n * w];
        for i in 0..n {
            a[i * w..i * w + n].copy_from_slice(&self.entries[i * n..(i + 1) * n]);
            a[i * w + n + i] = 1;
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * w + col] != 0)?;
            if piv != col {
                for j in 0..w {
                    a.swap(piv * w + j, col * w + j);
                }
            }
            let inv = p.inv(a[col * w + col]).ok()? as u64;
            for j in 0..w {
                a[col * w + j] = (a[col * w + j] as u64 * inv % pm) as u32;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * w + col] as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..w {
                    let sub = f * a[col * w + j] as u64 % pm;
                    a[r * w + j] = ((a[r * w + j] as u64 + pm - sub) % pm) as u32;
                }
            }
        }
        let entries = (0..n).flat_map(|i| a[i * w + n..(i + 1) * w].to_vec()).collect();
        Some(FpMatrix::from_raw(n, p, entries))
    }

    /// `blockdiag(self, other)`.
    pub fn block_diag(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.modulus, other.modulus);
        let (a, b) = (self.n, other.n);
        let n = a + b;
        let mut m = FpMatrix::zero(n, self.modulus);
        for i in 0..a {
            for j in 0..a {
                m.entries[i * n + j] = self.raw(i, j);
            }
        }
        for i in 0..b {
            for j in 0..b {
                m.entries[(a + i) * n + a + j] = other.raw(i, j);
            }
        }
        m
    }
}

impl Mul for &FpMatrix {
    type Output = FpMatrix;
    fn mul(self, rhs: &FpMatrix) -> FpMatrix {
        self.try_mul(rhs).expect("incompatible matrices")
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The standard symplectic form on F_p^{2g}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    g: usize,
    matrix: FpMatrix,
}

impl SymplecticForm {
    pub fn standard(g: usize, p: Prime) -> Self {
        let n = 2 * g;
        let mut j = FpMatrix::zero(n, p);
        for i in 0..g {
            j.set(i, g + i, 1);
            j.set(g + i, i, -1);
        }
        SymplecticForm { g, matrix: j }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn modulus(&self) -> Prime {
        self.matrix.modulus
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    /// `x^T J y`.
    pub fn pair(&self, x: &[u32], y: &[u32]) -> u32 {
        let jy = self.matrix.apply(y);
        let p = self.modulus().get() as u64;
        x.iter()
            .zip(&jy)
            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p) as u32
    }
}

/// `M^T J M == J`.
pub fn is_symplectic(m: &FpMatrix, form: &SymplecticForm) -> Result<bool> {
    if m.dim() != form.matrix.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.matrix.dim(),
            found: m.dim(),
        });
    }
    if m.modulus() != form.modulus() {
        return Err(Error::ModulusMismatch(form.modulus().get(), m.modulus().get()));
    }
    let lhs = &(&m.transpose() * &form.matrix) * m;
    Ok(lhs == form.matrix)
}

/// Inverse of a symplectic matrix via `J^{-1} M^T J`.
pub fn symplectic_inverse(m: &FpMatrix, form: &SymplecticForm) -> FpMatrix {
    // J^{-1} = -J
    let j_inv = form.matrix.scale(-1);
    &(&j_inv * &m.transpose()) * &form.matrix
}

/// `|Sp(2g, F_p)| = p^{g^2} * prod_{i=1..g} (p^{2i} - 1)`.
pub fn sp_group_order(g: u32, p: Prime) -> BigCount {
    let pb = BigUint::from(p.get());
    let mut order = num_traits::pow(pb.clone(), (g * g) as usize);
    for i in 1..=g {
        order *= num_traits::pow(pb.clone(), (2 * i) as usize) - BigUint::one();
    }
    order
}

/// Upper bound on `p^{(2g)^2}` accepted by [`enumerate_sp`].
pub const ENUMERATION_BOUND: u64 = 10_000_000;

/// Every element of Sp(2g, F_p) by exhaustive scan of all `p^{4g^2}`
/// matrices. Only the tiny cases fit under [`ENUMERATION_BOUND`].
pub fn enumerate_sp(g: usize, p: Prime) -> Result<Vec<FpMatrix>> {
    let n = 2 * g;
    let cells = (n * n) as u32;
    let space = (p.get() as u64).checked_pow(cells);
    match space {
        Some(s) if s <= ENUMERATION_BOUND => {}
        _ => {
            return Err(Error::TooLarge(format!(
                "{}^{} candidate matrices for Sp({n}, F_{p})",
                p, cells
            )))
        }
    }
    let form = SymplecticForm::standard(g, p);
    let total = space.unwrap();
    let pm = p.get() as u64;
    let mut out = Vec::new();
    let mut entries = vec![0u32; n * n];
    for code in 0..total {
        let mut c = code;
        for e in entries.iter_mut() {
            *e = (c % pm) as u32;
            c /= pm;
        }
        let m = FpMatrix::from_raw(n, p, entries.clone());
        if is_symplectic(&m, &form)? {
            out.push(m);
        }
    }
    Ok(out)
}

fn check_closed(set: &HashSet<FpMatrix>, what: &str) -> Result<()> {
    for a in set {
        for b in set {
            if !set.contains(&(a * b)) {
                return Err(Error::NotSubgroup(format!("{what} is not closed under multiplication")));
            }
        }
    }
    Ok(())
}

/// Partition of `group` into left cosets `gH` of `subgroup`.
pub fn left_coset_partition(subgroup: &[FpMatrix], group: &[FpMatrix]) -> Vec<Vec<FpMatrix>> {
    let mut covered: HashSet<FpMatrix> = HashSet::new();
    let mut cosets = Vec::new();
    for g in group {
        if covered.contains(g) {
            continue;
        }
        let coset: Vec<FpMatrix> = subgroup.iter().map(|h| g * h).collect();
        covered.extend(coset.iter().cloned());
        cosets.push(coset);
    }
    cosets
}

/// `[group : subgroup]` computed by Lagrange division and by explicit left
/// coset partitioning; the two must agree.
pub fn left_coset_count(subgroup: &[FpMatrix], group: &[FpMatrix]) -> Result<BigCount> {
    let h: HashSet<FpMatrix> = subgroup.iter().cloned().collect();
    let g: HashSet<FpMatrix> = group.iter().cloned().collect();
    if h.is_empty() || !h.is_subset(&g) {
        return Err(Error::NotSubgroup(
            "subgroup is empty or not contained in the group".into(),
        ));
    }
    check_closed(&h, "subgroup")?;
    check_closed(&g, "group")?;
    if !g.len().is_multiple_of(h.len()) {
        return Err(Error::NotSubgroup("order does not divide the group order".into()));
    }
    let lagrange = g.len() / h.len();
    let hv: Vec<FpMatrix> = h.into_iter().collect();
    let gv: Vec<FpMatrix> = g.into_iter().collect();
    let explicit = left_coset_partition(&hv, &gv).len();
    if explicit != lagrange {
        return Err(Error::NotSubgroup(format!(
            "coset partition gave {explicit} cosets but Lagrange gives {lagrange}"
        )));
    }
    Ok(BigCount::from(lagrange))
}

/// The symplectic transvection `x -> x + c * <x, v> * v`.
pub fn transvection(v: &[u32], c: i64, form: &SymplecticForm) -> FpMatrix {
    let n = v.len();
    let p = form.modulus();
    let c = p.reduce(c);
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0u32; n];
        e[j] = 1;
        let s = (form.pair(&e, v) as u64 * c as u64 % p.get() as u64) as u32;
        let col: Vec<u32> = (0..n)
            .map(|i| ((e[i] as u64 + s as u64 * v[i] as u64) % p.get() as u64) as u32)
            .collect();
        columns.push(col);
    }
    FpMatrix::from_columns(&columns, p).expect("square")
}

/// A random element of Sp(2g, F_p) built as a product of transvections.
pub fn random_symplectic<R: Rng + ?Sized>(rng: &mut R, form: &SymplecticForm, factors: usize) -> FpMatrix {
    let n = 2 * form.genus();
    let p = form.modulus();
    let mut m = FpMatrix::identity(n, p);
    for _ in 0..factors {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p.get())).collect();
        let c = rng.gen_range(1..p.get()) as i64;
        m = &m * &transvection(&v, c, form);
    }
    m
}

pub(crate) fn divide_exact(num: &BigCount, den: &BigCount, what: &str) -> Result<BigCount> {
    if den.is_zero() || !(num % den).is_zero() {
        return Err(Error::NonIntegral(format!("{what}: {den} does not divide {num}")));
    }
    Ok(num / den)
}
