//! Seeded verification suites with counterexample dumps.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::branch::{BranchConfiguration, MultiplicityVector};
use crate::divisor::weil_ratio_ramified;
use crate::error::{Error, Result};
use crate::exact::Prime;
use crate::hyperelliptic::{build_basis, hyperelliptic_action};
use crate::perm::Permutation;
use crate::report::MAX_CENSUS_GENUS;
use crate::symplectic::{is_symplectic, FpMatrix, SymplecticForm};
use crate::trigonal::{
    aut_group, census_sum, component_count_formula, psi_image, psi_image_closure, trigonal_indexing_set,
    PSI_ENUMERATION_BOUND,
};
use crate::ExactRational;

pub const DEFAULT_SEED: u64 = 1;
pub const WEIL_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Weil,
    Psi,
    Embedding,
    Formula,
    All,
}

impl Suite {
    pub const EACH: [Suite; 4] = [Suite::Weil, Suite::Psi, Suite::Embedding, Suite::Formula];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weil => "weil",
            Suite::Psi => "psi",
            Suite::Embedding => "embedding",
            Suite::Formula => "formula",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weil" => Ok(Suite::Weil),
            "psi" => Ok(Suite::Psi),
            "embedding" => Ok(Suite::Embedding),
            "formula" => Ok(Suite::Formula),
            "all" => Ok(Suite::All),
            other => Err(Error::UnknownSuite(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    pub summary: String,
    pub counterexamples: Vec<String>,
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "[{status}] {}: {}", self.suite.name(), self.summary)?;
        for c in &self.counterexamples {
            writeln!(f, "  counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Runs one suite (or all four, in a fixed order).
pub fn run(suite: Suite, seed: u64) -> Vec<SuiteOutcome> {
    match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s, seed)).collect(),
        s => vec![run_one(s, seed)],
    }
}

fn run_one(suite: Suite, seed: u64) -> SuiteOutcome {
    match suite {
        Suite::Weil => weil_suite(seed),
        Suite::Psi => psi_suite(),
        Suite::Embedding => embedding_suite(seed),
        Suite::Formula => formula_suite(),
        Suite::All => unreachable!(),
    }
}

fn outcome(suite: Suite, summary: String, counterexamples: Vec<String>) -> SuiteOutcome {
    SuiteOutcome {
        suite,
        passed: counterexamples.is_empty(),
        summary,
        counterexamples,
    }
}

/// A random model with distinct rational points; `kappa` balances the
/// finite exponents and may be 0.
pub fn random_configuration<R: Rng + ?Sized>(rng: &mut R, p: Prime) -> BranchConfiguration<ExactRational> {
    loop {
        let count = rng.gen_range(3..=9);
        let mut points: Vec<ExactRational> = Vec::with_capacity(count);
        while points.len() < count {
            let a = ExactRational::new(
                BigInt::from(rng.gen_range(-60i64..=60)),
                BigInt::from(rng.gen_range(1i64..=12)),
            );
            if !points.contains(&a) {
                points.push(a);
            }
        }
        let exponents = (0..count).map(|_| rng.gen_range(1..p.get())).collect();
        if let Ok(cfg) = BranchConfiguration::balanced(p, points, exponents) {
            if cfg.branch_count() >= 3 {
                return cfg;
            }
        }
    }
}

/// Ratio `w(E_i, F_j)` on a random normalized model, with the model for the
/// counterexample dump.
pub fn random_weil_ratio<R: Rng + ?Sized>(
    rng: &mut R,
    p: Prime,
) -> Result<(ExactRational, BranchConfiguration<ExactRational>)> {
    let cfg = random_configuration(rng, p).normalized_for_pairing()?;
    let n = cfg.points().len();
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    Ok((weil_ratio_ramified(&cfg, i, j)?, cfg))
}

fn weil_suite(seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for (p, expected, label) in [
        (Prime::TWO, -ExactRational::one(), "\u{2212}1"),
        (Prime::THREE, ExactRational::one(), "1"),
    ] {
        let mut ok = 0;
        for _ in 0..WEIL_SAMPLES {
            match random_weil_ratio(&mut rng, p) {
                Ok((r, _)) if r == expected => ok += 1,
                Ok((r, cfg)) => bad.push(format!(
                    "p={p}: ratio {r} on {}",
                    serde_json::to_string(&cfg.to_json()).expect("json")
                )),
                Err(e) => bad.push(format!("p={p}: {e}")),
            }
        }
        parts.push(format!("p={p}: {ok}/{WEIL_SAMPLES} ratios = {label}"));
    }
    outcome(Suite::Weil, parts.join("; "), bad)
}

/// Generator words of length at most `len`, as permutations.
fn words(generators: &[Permutation], len: usize) -> Vec<Permutation> {
    let n = generators[0].degree();
    let mut all = vec![Permutation::identity(n)];
    let mut frontier = all.clone();
    for _ in 0..len {
        frontier = frontier
            .iter()
            .flat_map(|w| generators.iter().map(move |s| w * s))
            .collect();
        all.extend(frontier.iter().cloned());
    }
    all
}

/// Checks on one index vector: symplectic generator images, invertible
/// delta blocks, homomorphism on word pairs of length up to 2 each, and the
/// order of the generated subgroup. Returns the failures found.
pub fn check_psi(m_vector: &MultiplicityVector) -> Result<Vec<String>> {
    let aut = aut_group(m_vector)?;
    let g = m_vector.total() as usize - 2;
    let form = SymplecticForm::standard(g, Prime::THREE);
    let mut bad = Vec::new();
    for s in &aut.generators {
        let im = psi_image(m_vector, s)?;
        if !is_symplectic(&im.full_matrix, &form)? {
            bad.push(format!("{m_vector}: Psi({s}) is not symplectic"));
        }
    }
    let ws = words(&aut.generators, 2);
    let images = ws
        .iter()
        .map(|w| psi_image(m_vector, w).map(|im| im.full_matrix))
        .collect::<Result<Vec<FpMatrix>>>()?;
    'pairs: for (u, iu) in ws.iter().zip(&images) {
        for (v, iv) in ws.iter().zip(&images) {
            let direct = psi_image(m_vector, &(u * v))?.full_matrix;
            if direct != iu * iv {
                bad.push(format!("{m_vector}: Psi({u} {v}) != Psi({u}) Psi({v})"));
                break 'pairs;
            }
        }
    }
    let order = aut.order_u64().filter(|&o| o <= PSI_ENUMERATION_BOUND);
    if let Some(order) = order {
        let image = psi_image_closure(m_vector, order as usize + 1)?;
        if let Some(m) = image.iter().find(|m| !is_symplectic(m, &form).unwrap_or(false)) {
            bad.push(format!("{m_vector}: non-symplectic element {:?}", m.rows()));
        }
        if image.len() as u64 != order {
            let mut kernel: Vec<String> = aut
                .elements(order as usize)?
                .into_iter()
                .filter(|s| !s.is_identity())
                .filter(|s| {
                    psi_image(m_vector, s)
                        .map(|im| im.full_matrix.is_identity())
                        .unwrap_or(false)
                })
                .map(|s| s.to_string())
                .collect();
            kernel.sort();
            bad.push(format!(
                "{m_vector}: |A_m| = {order} but the image has order {}; kernel contains {}",
                image.len(),
                kernel.join(" ")
            ));
        }
    }
    Ok(bad)
}

pub const PSI_MAX_GENUS: u32 = 6;

fn psi_suite() -> SuiteOutcome {
    let mut total = 0;
    let mut ok = 0;
    let mut bad = Vec::new();
    for g in 1..=PSI_MAX_GENUS {
        for v in trigonal_indexing_set(g).expect("g >= 1").vectors {
            total += 1;
            match check_psi(&v) {
                Ok(found) if found.is_empty() => ok += 1,
                Ok(found) => bad.extend(found),
                Err(e) => bad.push(format!("{v}: {e}")),
            }
        }
    }
    outcome(
        Suite::Psi,
        format!("g=1..{PSI_MAX_GENUS}: {ok}/{total} index vectors pass"),
        bad,
    )
}

pub const EMBEDDING_SAMPLES: usize = 200;

/// Exhaustive for g = 2, 3; seeded samples of pairs for g = 4..6.
fn embedding_suite(seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for g in 1..=10 {
        let basis = build_basis(g).expect("g >= 1");
        if basis.gram_matrix().ok().as_ref() != Some(SymplecticForm::standard(g, Prime::TWO).matrix()) {
            bad.push(format!("g={g}: Gram matrix of (A, B) is not J"));
        }
    }
    parts.push("g=1..10 Gram = J".to_string());
    for g in 2..=3usize {
        let basis = build_basis(g).expect("g >= 1");
        let form = SymplecticForm::standard(g, Prime::TWO);
        let perms = Permutation::all(2 * g + 2);
        let mut seen = HashSet::with_capacity(perms.len());
        for s in &perms {
            match hyperelliptic_action(&basis, s) {
                Ok(m) => {
                    if !is_symplectic(&m, &form).unwrap_or(false) {
                        bad.push(format!("g={g}: image of {s} is not symplectic"));
                    }
                    seen.insert(m);
                }
                Err(e) => bad.push(format!("g={g}: {s}: {e}")),
            }
        }
        if seen.len() != perms.len() {
            bad.push(format!(
                "g={g}: {} distinct images of {} permutations",
                seen.len(),
                perms.len()
            ));
        }
        parts.push(format!("g={g}: {}/{} distinct", seen.len(), perms.len()));
    }
    for g in 2..=6usize {
        let basis = build_basis(g).expect("g >= 1");
        let form = SymplecticForm::standard(g, Prime::TWO);
        let mut ok = 0;
        for _ in 0..EMBEDDING_SAMPLES {
            let mut a: Vec<usize> = (0..2 * g + 2).collect();
            let mut b = a.clone();
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            let (s, t) = (
                Permutation::from_images(a).expect("shuffle"),
                Permutation::from_images(b).expect("shuffle"),
            );
            let check = || -> Result<bool> {
                let (ms, mt) = (hyperelliptic_action(&basis, &s)?, hyperelliptic_action(&basis, &t)?);
                let mst = hyperelliptic_action(&basis, &(&s * &t))?;
                Ok(mst == &ms * &mt && is_symplectic(&ms, &form)? && (s.is_identity() || !ms.is_identity()))
            };
            match check() {
                Ok(true) => ok += 1,
                Ok(false) => bad.push(format!("g={g}: sigma={s} tau={t}")),
                Err(e) => bad.push(format!("g={g}: {e}")),
            }
        }
        parts.push(format!("g={g}: {ok}/{EMBEDDING_SAMPLES} sampled pairs"));
    }
    outcome(Suite::Embedding, parts.join("; "), bad)
}

fn formula_suite() -> SuiteOutcome {
    let mut ok = 0;
    let mut bad = Vec::new();
    for g in 1..=MAX_CENSUS_GENUS {
        match (component_count_formula(g), census_sum(g)) {
            (Ok(f), Ok(c)) if f == c && f.bits() > 0 => ok += 1,
            (Ok(f), Ok(c)) => bad.push(format!("g={g}: formula {f} != census {c}")),
            (Err(e), _) | (_, Err(e)) => bad.push(format!("g={g}: {e}")),
        }
    }
    outcome(
        Suite::Formula,
        format!("g=1..{MAX_CENSUS_GENUS}: {ok}/{MAX_CENSUS_GENUS} identities hold"),
        bad,
    )
}
