//! Branch data of a cyclic degree-p cover of the projective line.
//!
//! A configuration is the affine model `s^p = prod (t - a_i)^{k_i}` together
//! with the exponent `kappa` of the branch point at infinity.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{FieldElement, Prime};
use crate::perm::Permutation;
use crate::ExactRational;

/// Number of branch points of a genus-`g` cyclic p-cover, `2g/(p-1) + 2`.
pub fn ramification_count(g: u64, p: Prime) -> Result<u64> {
    let d = (p.get() - 1) as u64;
    if g == 0 || !(2 * g).is_multiple_of(d) {
        return Err(Error::Infeasible { g, p: p.get() });
    }
    Ok(2 * g / d + 2)
}

/// Genus from the branch count, `(p-1)(m-2)/2`.
pub fn genus_from_branch_count(m: u64, p: Prime) -> u64 {
    (p.get() as u64 - 1) * m.saturating_sub(2) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchConfiguration<T> {
    p: Prime,
    points: Vec<T>,
    exponents: Vec<u32>,
    kappa: u32,
}

impl<T: FieldElement> BranchConfiguration<T> {
    pub fn new(p: Prime, points: Vec<T>, exponents: Vec<u32>, kappa: u32) -> Result<Self> {
        if points.len() != exponents.len() {
            return Err(Error::InvalidConfiguration(format!(
                "{} points but {} exponents",
                points.len(),
                exponents.len()
            )));
        }
        if let Some(k) = exponents.iter().find(|&&k| k == 0 || k >= p.get()) {
            return Err(Error::InvalidConfiguration(format!(
                "exponent {k} outside 1..={}",
                p.get() - 1
            )));
        }
        if kappa >= p.get() {
            return Err(Error::InvalidConfiguration(format!(
                "kappa {kappa} outside 0..{}",
                p.get()
            )));
        }
        for (i, a) in points.iter().enumerate() {
            if points[..i].contains(a) {
                return Err(Error::DuplicatePoints(format!("{a:?}")));
            }
        }
        let total: u64 = exponents.iter().map(|&k| k as u64).sum::<u64>() + kappa as u64;
        if !total.is_multiple_of(p.get() as u64) {
            return Err(Error::InvalidConfiguration(format!(
                "kappa + sum k_i = {total} is not divisible by {p}"
            )));
        }
        let cfg = BranchConfiguration {
            p,
            points,
            exponents,
            kappa,
        };
        if cfg.branch_count() < 2 {
            return Err(Error::InvalidConfiguration("fewer than two branch points".into()));
        }
        Ok(cfg)
    }

    /// Builds a configuration whose `kappa` is the residue that balances the
    /// finite exponents.
    pub fn balanced(p: Prime, points: Vec<T>, exponents: Vec<u32>) -> Result<Self> {
        let sum: u64 = exponents.iter().map(|&k| k as u64).sum();
        let kappa = p.reduce(-((sum % p.get() as u64) as i64));
        Self::new(p, points, exponents, kappa)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn branched_at_infinity(&self) -> bool {
        self.kappa != 0
    }

    /// All branch points, counting infinity when `kappa != 0`.
    pub fn branch_count(&self) -> usize {
        self.points.len() + usize::from(self.branched_at_infinity())
    }

    /// `deg f = sum k_i`.
    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&k| k as u64).sum()
    }

    /// Exponents of every branch point, with infinity last when present.
    pub fn full_exponents(&self) -> Vec<u32> {
        let mut v = self.exponents.clone();
        if self.branched_at_infinity() {
            v.push(self.kappa);
        }
        v
    }

    /// Multiplies every exponent by `zeta` (mod p); an equivalent model.
    pub fn scale_exponents(&self, zeta: u32) -> Result<Self> {
        let p = self.p;
        if zeta.is_multiple_of(p.get()) {
            return Err(Error::Precondition("zeta must be a unit".into()));
        }
        let scale = |k: u32| ((k as u64 * zeta as u64) % p.get() as u64) as u32;
        Self::new(
            p,
            self.points.clone(),
            self.exponents.iter().map(|&k| scale(k)).collect(),
            scale(self.kappa),
        )
    }

    /// Applies `t -> 1/(t - a_index)`: the chosen point goes to infinity and
    /// the old point at infinity (if branched) lands at 0.
    pub fn move_to_infinity(&self, index: usize) -> Result<Self> {
        let a = self
            .points
            .get(index)
            .ok_or_else(|| Error::Precondition(format!("no finite point {index}")))?
            .clone();
        let mut points = Vec::new();
        let mut exponents = Vec::new();
        for (i, (b, &k)) in self.points.iter().zip(&self.exponents).enumerate() {
            if i != index {
                points.push(T::one() / (b.clone() - a.clone()));
                exponents.push(k);
            }
        }
        if self.branched_at_infinity() {
            points.push(T::zero());
            exponents.push(self.kappa);
        }
        Self::new(self.p, points, exponents, self.exponents[index])
    }

    /// Applies `t -> t + shift`.
    pub fn translate(&self, shift: &T) -> Result<Self> {
        Self::new(
            self.p,
            self.points.iter().map(|a| a.clone() + shift.clone()).collect(),
            self.exponents.clone(),
            self.kappa,
        )
    }
}

impl BranchConfiguration<ExactRational> {
    /// Brings the model into the shape used by the Weil verifier: branched at
    /// infinity with `kappa = 1` and no branch point at 0.
    pub fn normalized_for_pairing(&self) -> Result<Self> {
        let mut cfg = if self.branched_at_infinity() {
            self.clone()
        } else {
            self.move_to_infinity(self.points.len() - 1)?
        };
        if cfg.kappa != 1 {
            let zeta = cfg.p.inv(cfg.kappa)?;
            cfg = cfg.scale_exponents(zeta)?;
        }
        if cfg.points.iter().any(|a| *a == ExactRational::from_integer(0.into())) {
            let bound = cfg.points.iter().fold(ExactRational::from_integer(1.into()), |acc, a| {
                acc + num_traits::Signed::abs(a)
            });
            cfg = cfg.translate(&bound)?;
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> ConfigJson {
        ConfigJson {
            p: self.p.get(),
            points: self
                .points
                .iter()
                .zip(&self.exponents)
                .map(|(a, &k)| PointJson {
                    num: a.numer().to_string(),
                    den: a.denom().to_string(),
                    exp: k,
                })
                .collect(),
            kappa: self.kappa,
        }
    }

    pub fn from_json(json: &ConfigJson) -> Result<Self> {
        let p = Prime::new(json.p)?;
        let mut points = Vec::with_capacity(json.points.len());
        let mut exponents = Vec::with_capacity(json.points.len());
        for pt in &json.points {
            let parse = |s: &str| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::InvalidConfiguration(format!("bad integer {s:?}: {e}")))
            };
            let (num, den) = (parse(&pt.num)?, parse(&pt.den)?);
            if den == BigInt::from(0) {
                return Err(Error::InvalidConfiguration("zero denominator".into()));
            }
            points.push(ExactRational::new(num, den));
            exponents.push(pt.exp);
        }
        Self::new(p, points, exponents, json.kappa)
    }
}

/// Wire form `{p, points: [{num, den, exp}], kappa}`. Numerators and
/// denominators are decimal strings so arbitrary sizes survive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub p: u32,
    pub points: Vec<PointJson>,
    pub kappa: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub num: String,
    pub den: String,
    pub exp: u32,
}

/// Genus of the cover, `(p-1)(m-2)/2` with `m` counting infinity when
/// branched there.
pub fn genus_of<T: FieldElement>(config: &BranchConfiguration<T>) -> u64 {
    genus_from_branch_count(config.branch_count() as u64, config.prime())
}

/// `(m_1, ..., m_{p-1})`: how many branch points carry each exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityVector {
    p: Prime,
    counts: Vec<u64>,
}

fn weighted_sum_ok(counts: &[u64], p: Prime) -> bool {
    let s: u64 = counts.iter().enumerate().map(|(i, &c)| (i as u64 + 1) * c).sum();
    s.is_multiple_of(p.get() as u64)
}

/// `zeta . m = (m_{zeta*1}, ..., m_{zeta*(p-1)})`.
pub fn zeta_action(counts: &[u64], zeta: u32, p: Prime) -> Vec<u64> {
    let pm = p.get() as u64;
    (1..pm).map(|k| counts[((zeta as u64 * k) % pm) as usize - 1]).collect()
}

impl MultiplicityVector {
    /// Accepts only canonical vectors: weighted sum `== 0 mod p` and first
    /// entry maximal.
    pub fn new(counts: Vec<u64>, p: Prime) -> Result<Self> {
        if counts.len() != p.get() as usize - 1 {
            return Err(Error::InvalidVector(format!(
                "expected {} entries, got {}",
                p.get() - 1,
                counts.len()
            )));
        }
        if !weighted_sum_ok(&counts, p) {
            return Err(Error::InvalidVector(format!(
                "sum k*m_k of {counts:?} is not 0 mod {p}"
            )));
        }
        if counts.iter().any(|&c| c > counts[0]) {
            return Err(Error::InvalidVector(format!(
                "{counts:?} is not canonical (m_1 not maximal)"
            )));
        }
        Ok(MultiplicityVector { p, counts })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total number of branch points `m`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Exponent of each point in block order: `m_1` ones, then `m_2` twos, ...
    pub fn block_exponents(&self) -> Vec<u32> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i as u32 + 1, c as usize))
            .collect()
    }

    /// Units `zeta` with `zeta . m = m`.
    pub fn stabilizer(&self) -> Vec<u32> {
        (1..self.p.get())
            .filter(|&z| zeta_action(&self.counts, z, self.p) == self.counts)
            .collect()
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Canonical representative of the F_p^* orbit of `raw`: first entry
/// maximal, ties broken by the lexicographically greatest translate.
pub fn normalize_multiplicity_vector(raw: &[u64], p: Prime) -> Result<MultiplicityVector> {
    if raw.len() != p.get() as usize - 1 {
        return Err(Error::InvalidVector(format!(
            "expected {} entries, got {}",
            p.get() - 1,
            raw.len()
        )));
    }
    if !weighted_sum_ok(raw, p) {
        return Err(Error::InvalidVector(format!("sum k*m_k of {raw:?} is not 0 mod {p}")));
    }
    let best = (1..p.get())
        .map(|z| zeta_action(raw, z, p))
        .max_by(|a, b| a[0].cmp(&b[0]).then_with(|| a.cmp(b)))
        .expect("p >= 2");
    MultiplicityVector::new(best, p)
}

/// Builds `s^p = prod (t - a_i)^{k_i}` with points assigned exponents in
/// blocks following `m`.
pub fn affine_model<T: FieldElement>(points: Vec<T>, m: &MultiplicityVector) -> Result<BranchConfiguration<T>> {
    if points.len() as u64 != m.total() {
        return Err(Error::InvalidConfiguration(format!(
            "{} points for a vector of total {}",
            points.len(),
            m.total()
        )));
    }
    BranchConfiguration::balanced(m.prime(), points, m.block_exponents())
}

/// Local monodromy at each branch point acting on the sheets `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyDatum {
    pub cycles: Vec<Permutation>,
}

impl MonodromyDatum {
    /// Product of all cycles in list order.
    pub fn composite(&self) -> Option<Permutation> {
        let mut it = self.cycles.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, c| &acc * c))
    }
}

fn sheet_shift(p: Prime, k: u32) -> Permutation {
    let n = p.get() as usize;
    Permutation::from_images((0..n).map(|s| (s + k as usize) % n).collect()).expect("shift")
}

/// One sheet rotation `n -> n + k` per branch point, finite points first and
/// infinity last.
pub fn monodromy_cycles<T: FieldElement>(config: &BranchConfiguration<T>) -> MonodromyDatum {
    MonodromyDatum {
        cycles: config
            .full_exponents()
            .into_iter()
            .map(|k| sheet_shift(config.prime(), k))
            .collect(),
    }
}
