//! The subgroup of `Jac(C)[p]` spanned by ramification classes
//! `D_i = [Q_i - Q_inf]`, its single horizontal relation
//! `sum k_i D_i = 0`, and the pairing data on it.

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::branch::BranchConfiguration;
use crate::error::{Error, Result};
use crate::exact::{field_pow, poly_from_roots, rational_eval_poly, sign_pow, FieldElement, Prime};
use crate::perm::Permutation;
use crate::symplectic::FpMatrix;

/// Rank of the span of `D_1, ..., D_{m-1}`: the relation leaves `m - 2`.
pub fn delta_rank(m: usize, _p: Prime) -> usize {
    m.saturating_sub(2)
}

/// The lattice of ramification classes for a fixed exponent pattern
/// `k_1, ..., k_{m-1}` (the base point `Q_m` carries the remaining
/// exponent and has class zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorLattice {
    p: Prime,
    exponents: Vec<u32>,
}

impl DivisorLattice {
    pub fn new(exponents: Vec<u32>, p: Prime) -> Result<Self> {
        let last = *exponents
            .last()
            .ok_or_else(|| Error::Precondition("need at least one finite ramification class".into()))?;
        if last % p.get() == 0 {
            return Err(Error::NonInvertibleLeading(p.get()));
        }
        Ok(DivisorLattice {
            p,
            exponents: exponents.iter().map(|&k| k % p.get()).collect(),
        })
    }

    /// Lattice for a configuration, taking infinity as the base point.
    pub fn of_configuration<T: FieldElement>(config: &BranchConfiguration<T>) -> Result<Self> {
        if !config.branched_at_infinity() {
            return Err(Error::NotNormalized(
                "the base point must be the branch point at infinity".into(),
            ));
        }
        Self::new(config.exponents().to_vec(), config.prime())
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Number of branch points `m` (finite classes plus the base).
    pub fn branch_count(&self) -> usize {
        self.exponents.len() + 1
    }

    pub fn rank(&self) -> usize {
        delta_rank(self.branch_count(), self.p)
    }

    /// Substitutes `D_{m-1} = -k_{m-1}^{-1} sum_{i<m-1} k_i D_i`.
    pub fn normal_form(&self, raw: &[i64]) -> Result<DivisorClass> {
        let len = self.exponents.len();
        if raw.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: raw.len(),
            });
        }
        let p = self.p;
        let pm = p.get() as u64;
        let mut coeffs: Vec<u32> = raw.iter().map(|&v| p.reduce(v)).collect();
        let c = coeffs[len - 1] as u64;
        if c != 0 {
            let inv = p.inv(self.exponents[len - 1])? as u64;
            for (x, &k) in coeffs.iter_mut().zip(&self.exponents).take(len - 1) {
                let sub = c * inv % pm * k as u64 % pm;
                *x = ((*x as u64 + pm - sub) % pm) as u32;
            }
            coeffs[len - 1] = 0;
        }
        Ok(DivisorClass {
            lattice: self.clone(),
            coeffs,
        })
    }

    /// `D_i` for `i` in `1..=m`; `D_m` (the base point) is zero.
    pub fn generator(&self, i: usize) -> Result<DivisorClass> {
        let len = self.exponents.len();
        if i == 0 || i > len + 1 {
            return Err(Error::Precondition(format!("D_{i} out of range 1..={}", len + 1)));
        }
        let mut raw = vec![0i64; len];
        if i <= len {
            raw[i - 1] = 1;
        }
        self.normal_form(&raw)
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass {
            lattice: self.clone(),
            coeffs: vec![0; self.exponents.len()],
        }
    }

    /// Class from coordinates on the basis `D_1, ..., D_{m-2}`.
    pub fn from_basis_coords(&self, coords: &[u32]) -> Result<DivisorClass> {
        let mut raw: Vec<i64> = coords.iter().map(|&c| c as i64).collect();
        if raw.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: raw.len(),
            });
        }
        raw.push(0);
        self.normal_form(&raw)
    }

    /// Matrix (columns = images of `D_1..D_{m-2}`) of the relabelling
    /// `Q_i -> Q_{sigma(i)}`, which sends `D_j` to `D_{sigma(j)} - D_{sigma(m)}`.
    ///
    /// `sigma` acts on `{1, ..., m}` (0-based here) with the base point last.
    /// It must carry the exponent pattern to a unit multiple of itself,
    /// otherwise the relation is not preserved.
    pub fn relabel_action(&self, base_exponent: u32, sigma: &Permutation) -> Result<FpMatrix> {
        let m = self.branch_count();
        if sigma.degree() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: sigma.degree(),
            });
        }
        let p = self.p;
        let mut full = self.exponents.clone();
        full.push(base_exponent % p.get());
        let ratio = p.inv(full[0])? as u64 * full[sigma.apply(0)] as u64 % p.get() as u64;
        let preserved = (0..m).all(|i| full[sigma.apply(i)] as u64 == ratio * full[i] as u64 % p.get() as u64);
        if ratio == 0 || !preserved {
            return Err(Error::NotAnAutomorphism(sigma.to_string()));
        }
        let base_image = sigma.apply(m - 1);
        let mut columns = Vec::with_capacity(m - 2);
        for j in 0..m - 2 {
            let mut raw = vec![0i64; m - 1];
            let target = sigma.apply(j);
            if target < m - 1 {
                raw[target] += 1;
            }
            if base_image < m - 1 {
                raw[base_image] -= 1;
            }
            columns.push(self.normal_form(&raw)?.basis_coords().to_vec());
        }
        FpMatrix::from_columns(&columns, p)
    }
}

/// An element of the span, kept in normal form (slot `m-1` zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    lattice: DivisorLattice,
    coeffs: Vec<u32>,
}

impl DivisorClass {
    pub fn lattice(&self) -> &DivisorLattice {
        &self.lattice
    }

    /// All `m - 1` coefficients; the last is always zero.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coordinates on `D_1, ..., D_{m-2}`.
    pub fn basis_coords(&self) -> &[u32] {
        &self.coeffs[..self.coeffs.len() - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        if self.lattice != other.lattice {
            return Err(Error::ConfigMismatch);
        }
        let raw: Vec<i64> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a as i64 + b as i64)
            .collect();
        self.lattice.normal_form(&raw)
    }

    pub fn scale(&self, c: i64) -> DivisorClass {
        let raw: Vec<i64> = self.coeffs.iter().map(|&a| a as i64 * c).collect();
        self.lattice.normal_form(&raw).expect("same length")
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// Free-function form of [`DivisorLattice::normal_form`].
pub fn normal_form(raw: &[i64], exponents: &[u32], p: Prime) -> Result<DivisorClass> {
    DivisorLattice::new(exponents.to_vec(), p)?.normal_form(raw)
}

/// Exponent `e` of the Weil pairing value `zeta_p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairingExponent {
    pub value: u32,
    pub modulus: Prime,
}

/// Pairing exponents on the span: identically zero for odd `p`; for `p = 2`
/// the bilinear extension of `e(D_i, D_j) = 1` (`i != j`), `e(D_i, D_i) = 0`.
pub fn pairing_exponent(x: &DivisorClass, y: &DivisorClass) -> Result<PairingExponent> {
    if x.lattice != y.lattice {
        return Err(Error::ConfigMismatch);
    }
    let p = x.lattice.p;
    if p.get() != 2 {
        return Ok(PairingExponent { value: 0, modulus: p });
    }
    // sum_{i != j} x_i y_j = (sum x)(sum y) - sum x_i y_i
    let sx: u32 = x.coeffs.iter().sum();
    let sy: u32 = y.coeffs.iter().sum();
    let diag: u32 = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a * b).sum();
    Ok(PairingExponent {
        value: (sx * sy + diag) % 2,
        modulus: p,
    })
}

/// Intermediate quantities of the explicit Weil-pairing evaluation on
/// `E_i = Q_i - Q_inf` against `F_j = E_j + (u - v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeilEvaluation<T> {
    /// `n` with `deg f = pn - 1`.
    pub n: u64,
    /// `G(a_i)` for `G(t) = f(t) - t^{p(n-1)}`.
    pub g_at_ai: T,
    /// `psi(E_i) = (a_i - a_j) / (-a_i)^p`.
    pub psi_e: T,
    /// `phi(F_j) = (a_j - a_i) prod (b - a_i)^lambda / (-a_i)^{pn}`.
    pub phi_f: T,
    /// `psi(E_i) / phi(F_j)`.
    pub ratio: T,
}

/// Evaluates the Weil pairing of two ramification classes exactly.
///
/// The model must be branched at infinity with `kappa = 1` and have no
/// branch point at 0. `i` and `j` are 0-based indices of finite points.
/// The roots `b` of `G` are never computed: `prod (a_i - b)^lambda = G(a_i)`
/// because `G` is monic.
pub fn weil_evaluation<T: FieldElement>(
    config: &BranchConfiguration<T>,
    i: usize,
    j: usize,
) -> Result<WeilEvaluation<T>> {
    if i == j {
        return Err(Error::EqualIndices(i));
    }
    let pts = config.points();
    if i >= pts.len() || j >= pts.len() {
        return Err(Error::Precondition(format!("index out of range 0..{}", pts.len())));
    }
    if config.kappa() != 1 {
        return Err(Error::NotNormalized(format!("kappa = {}, expected 1", config.kappa())));
    }
    if pts.iter().any(|a| a.is_zero()) {
        return Err(Error::NotNormalized("a branch point sits at 0".into()));
    }
    let p = config.prime().get() as u64;
    let deg = config.degree();
    let n = (deg + 1) / p;
    debug_assert_eq!(p * n, deg + 1);

    let roots: Vec<(T, u32)> = pts.iter().cloned().zip(config.exponents().iter().copied()).collect();
    let mut g = poly_from_roots(&roots);
    let shift = (p * (n - 1)) as usize;
    g[shift] = g[shift].clone() - T::one();
    let deg_g = deg; // monic of degree pn - 1

    let (ai, aj) = (pts[i].clone(), pts[j].clone());
    let g_at_ai = rational_eval_poly(&g, &ai);
    let neg_ai = -ai.clone();

    let psi_e = (ai.clone() - aj.clone()) / field_pow(&neg_ai, p);
    let prod_b_minus_ai = sign_pow::<T>(deg_g) * g_at_ai.clone();
    let phi_f = (aj - ai) * prod_b_minus_ai / field_pow(&neg_ai, p * n);
    let ratio = psi_e.clone() / phi_f.clone();
    Ok(WeilEvaluation {
        n,
        g_at_ai,
        psi_e,
        phi_f,
        ratio,
    })
}

/// `w([E_i], [F_j])`; equals `(-1)^{p-1}` on every valid model.
pub fn weil_ratio_ramified<T: FieldElement>(config: &BranchConfiguration<T>, i: usize, j: usize) -> Result<T> {
    weil_evaluation(config, i, j).map(|w| w.ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExactRational;
    use num_traits::One;
    use proptest::prelude::*;

    fn q(n: i64) -> ExactRational {
        ExactRational::from_integer(n.into())
    }

    fn p3() -> Prime {
        Prime::THREE
    }

    /// Independent check: `raw - nf` must be a multiple of the relation vector.
    fn differs_by_relation(raw: &[i64], nf: &[u32], ks: &[u32], p: u32) -> bool {
        let p = p as i64;
        let diff: Vec<i64> = raw
            .iter()
            .zip(nf)
            .map(|(&r, &n)| (r - n as i64).rem_euclid(p))
            .collect();
        (0..p).any(|c| diff.iter().zip(ks).all(|(&d, &k)| d == (c * k as i64) % p))
    }

    #[test]
    fn normal_form_mixed_exponents() {
        let ks = [1, 1, 1, 1, 2];
        let nf = normal_form(&[0, 0, 0, 0, 1], &ks, p3()).unwrap();
        assert_eq!(nf.coeffs(), &[1, 1, 1, 1, 0]);
        assert!(differs_by_relation(&[0, 0, 0, 0, 1], nf.coeffs(), &ks, 3));
    }

    #[test]
    fn normal_form_all_ones() {
        // m = 6, every k_i = 1: D_5 = 2 (D_1 + ... + D_4)
        let nf = normal_form(&[0, 0, 0, 0, 1], &[1; 5], p3()).unwrap();
        assert_eq!(nf.coeffs(), &[2, 2, 2, 2, 0]);
    }

    #[test]
    fn normal_form_zero_and_errors() {
        assert!(normal_form(&[0, 0, 0], &[1, 2, 1], p3()).unwrap().is_zero());
        assert_eq!(normal_form(&[1, 0], &[1, 3], p3()), Err(Error::NonInvertibleLeading(3)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(delta_rank(6, p3()), 4);
        assert_eq!(delta_rank(6, Prime::TWO), 4);
        assert_eq!(delta_rank(3, p3()), 1);
    }

    #[test]
    fn pairing_examples() {
        let l3 = DivisorLattice::new(vec![1, 2, 1, 1, 1], p3()).unwrap();
        for a in 1..=5 {
            for b in 1..=5 {
                let e = pairing_exponent(&l3.generator(a).unwrap(), &l3.generator(b).unwrap()).unwrap();
                assert_eq!(e.value, 0);
            }
        }
        let l2 = DivisorLattice::new(vec![1; 5], Prime::TWO).unwrap();
        let (d1, d2) = (l2.generator(1).unwrap(), l2.generator(2).unwrap());
        assert_eq!(pairing_exponent(&d1, &d2).unwrap().value, 1);
        assert_eq!(pairing_exponent(&d1, &d1).unwrap().value, 0);
        assert_eq!(
            pairing_exponent(&d1, &l3.generator(1).unwrap()),
            Err(Error::ConfigMismatch)
        );
    }

    #[test]
    fn pairing_table_survives_the_relation() {
        // D_{m-1} is stored through the relation but must still pair to 1
        // against every other generator.
        let l2 = DivisorLattice::new(vec![1; 7], Prime::TWO).unwrap();
        for a in 1..=7 {
            for b in 1..=7 {
                let e = pairing_exponent(&l2.generator(a).unwrap(), &l2.generator(b).unwrap()).unwrap();
                assert_eq!(e.value, u32::from(a != b), "D_{a}, D_{b}");
            }
        }
    }

    #[test]
    fn serializes_as_residue_array() {
        let nf = normal_form(&[0, 0, 0, 0, 1], &[1; 5], p3()).unwrap();
        assert_eq!(serde_json::to_string(&nf).unwrap(), "[2,2,2,2,0]");
    }

    #[test]
    fn weil_examples() {
        let cfg = BranchConfiguration::new(p3(), (1..=5).map(q).collect(), vec![1; 5], 1).unwrap();
        let w = weil_evaluation(&cfg, 0, 1).unwrap();
        assert_eq!(w.n, 2);
        assert_eq!(w.ratio, q(1));
        // intermediate value phi(F_j) = (a_j - a_i)/a_i^p = (2 - 1)/1
        assert_eq!(w.phi_f, q(1));
        assert_eq!(w.g_at_ai, -q(1));

        let cfg = BranchConfiguration::new(Prime::TWO, (1..=3).map(q).collect(), vec![1; 3], 1).unwrap();
        assert_eq!(weil_ratio_ramified(&cfg, 0, 1).unwrap(), q(-1));
        assert_eq!(weil_ratio_ramified(&cfg, 1, 1), Err(Error::EqualIndices(1)));

        let bad = BranchConfiguration::new(p3(), (1..=4).map(q).collect(), vec![1; 4], 2).unwrap();
        assert!(matches!(weil_ratio_ramified(&bad, 0, 1), Err(Error::NotNormalized(_))));
        let zero = BranchConfiguration::new(Prime::TWO, (0..3).map(q).collect(), vec![1; 3], 1).unwrap();
        assert!(matches!(weil_ratio_ramified(&zero, 1, 2), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn weil_works_over_other_exact_fields() {
        use num_rational::Ratio;
        let pts: Vec<Ratio<i64>> = (1..=3).map(Ratio::from_integer).collect();
        let cfg = BranchConfiguration::new(Prime::TWO, pts, vec![1; 3], 1).unwrap();
        assert_eq!(weil_ratio_ramified(&cfg, 2, 0).unwrap(), -Ratio::one());
    }

    #[test]
    fn relabel_rejects_exponent_breaking_permutations() {
        let l = DivisorLattice::new(vec![1, 1, 2], p3()).unwrap();
        let swap = Permutation::transposition(4, 1, 2);
        assert!(matches!(l.relabel_action(2, &swap), Err(Error::NotAnAutomorphism(_))));
        let ok = Permutation::transposition(4, 2, 3);
        assert!(l.relabel_action(2, &ok).is_ok());
    }

    fn lattice_and_vectors() -> impl Strategy<Value = (u32, Vec<u32>, Vec<i64>, Vec<i64>)> {
        (prop::sample::select(vec![2u32, 3, 5]), 2usize..9).prop_flat_map(|(p, len)| {
            (
                Just(p),
                prop::collection::vec(1..p, len),
                prop::collection::vec(-20i64..20, len),
                prop::collection::vec(-20i64..20, len),
            )
        })
    }

    proptest! {
        #[test]
        fn normal_form_is_linear_and_idempotent((p, ks, x, y) in lattice_and_vectors()) {
            let prime = Prime::new(p).unwrap();
            let l = DivisorLattice::new(ks.clone(), prime).unwrap();
            let nx = l.normal_form(&x).unwrap();
            let ny = l.normal_form(&y).unwrap();
            let again: Vec<i64> = nx.coeffs().iter().map(|&c| c as i64).collect();
            prop_assert_eq!(&l.normal_form(&again).unwrap(), &nx);
            let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            prop_assert_eq!(l.normal_form(&sum).unwrap(), nx.add(&ny).unwrap());
            prop_assert!(differs_by_relation(&x, nx.coeffs(), &ks, p));
        }

        #[test]
        fn binary_pairing_is_symmetric_with_zero_diagonal(coeffs in prop::collection::vec(0i64..2, 2..12), other in prop::collection::vec(0i64..2, 12)) {
            let len = coeffs.len();
            let l = DivisorLattice::new(vec![1; len], Prime::TWO).unwrap();
            let x = l.normal_form(&coeffs).unwrap();
            let y = l.normal_form(&other[..len]).unwrap();
            prop_assert_eq!(pairing_exponent(&x, &y).unwrap(), pairing_exponent(&y, &x).unwrap());
            prop_assert_eq!(pairing_exponent(&x, &x).unwrap().value, 0);
        }
    }
}
