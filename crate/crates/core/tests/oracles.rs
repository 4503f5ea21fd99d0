use std::collections::HashSet;

use num_traits::{One, Pow};
use superlevel::divisor::weil_evaluation;
use superlevel::symplectic::{left_coset_partition, sp_group_order};
use superlevel::trigonal::{psi_image, psi_image_closure};
use superlevel::{
    aut_group, enumerate_sp, is_symplectic, trigonal_indexing_set, BigCount, BranchConfiguration, ExactRational,
    FpMatrix, Prime, SymplecticForm,
};

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

/// `M^T J M = J` in plain integer arithmetic.
fn symplectic_by_hand(m: &FpMatrix) -> bool {
    let n = m.dim();
    let g = n / 2;
    let p = m.modulus().get() as i64;
    let j = |r: usize, c: usize| -> i64 {
        if r < g && c == r + g {
            1
        } else if r >= g && c + g == r {
            -1
        } else {
            0
        }
    };
    for r in 0..n {
        for c in 0..n {
            let mut s = 0i64;
            for a in 0..n {
                for b in 0..n {
                    s += m.raw(a, r) as i64 * j(a, b) * m.raw(b, c) as i64;
                }
            }
            if (s - j(r, c)).rem_euclid(p) != 0 {
                return false;
            }
        }
    }
    true
}

#[test]
fn enumeration_matches_order_formula() {
    for (g, p, order) in [(1, 2, 6u64), (1, 3, 24), (1, 5, 120), (1, 7, 336), (2, 2, 720)] {
        let p = Prime::new(p).unwrap();
        let all = enumerate_sp(g, p).unwrap();
        assert_eq!(all.len() as u64, order);
        assert_eq!(sp_group_order(g as u32, p), BigCount::from(order));
        assert!(all.iter().all(symplectic_by_hand));
        let distinct: HashSet<&FpMatrix> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }
}

#[test]
fn order_formula_against_known_values() {
    let three = Prime::THREE;
    assert_eq!(sp_group_order(3, three), BigCount::from(9170703360u64));
    assert_eq!(sp_group_order(4, three), BigCount::from(131569513308979200u64));
    let sp14: BigCount = "109777561863482259035023554842176139436811616256000".parse().unwrap();
    assert_eq!(sp_group_order(7, three), sp14);
    assert_eq!(sp_group_order(3, Prime::TWO), BigCount::from(1451520u32));
}

#[test]
fn psi_images_agree_with_integer_check_and_compose() {
    for g in 1..=6 {
        for v in trigonal_indexing_set(g).unwrap().vectors {
            let aut = aut_group(&v).unwrap();
            let elems = aut.elements(10_000).unwrap();
            let sample: Vec<_> = elems.iter().take(60).collect();
            for s in &sample {
                let ms = psi_image(&v, s).unwrap().full_matrix;
                assert!(symplectic_by_hand(&ms), "{v} {s}");
                for t in &sample {
                    let mt = psi_image(&v, t).unwrap().full_matrix;
                    let mst = psi_image(&v, &(*s * *t)).unwrap().full_matrix;
                    assert_eq!(mst, &ms * &mt, "{v}: {s} {t}");
                }
            }
        }
    }
}

#[test]
fn injective_psi_for_every_index_with_more_than_three_points() {
    for g in 2..=6 {
        for v in trigonal_indexing_set(g).unwrap().vectors {
            let aut = aut_group(&v).unwrap();
            let image = psi_image_closure(&v, 10_000).unwrap();
            assert_eq!(BigCount::from(image.len()), aut.order, "{v}");
        }
    }
}

#[test]
fn genus_one_cosets() {
    let group = enumerate_sp(1, Prime::THREE).unwrap();
    let v = trigonal_indexing_set(1).unwrap().vectors[0].clone();
    let image: Vec<FpMatrix> = psi_image_closure(&v, 100).unwrap().into_iter().collect();
    let form = SymplecticForm::standard(1, Prime::THREE);
    assert!(image.iter().all(|m| is_symplectic(m, &form).unwrap()));
    assert_eq!(left_coset_partition(&image, &group).len(), 24 / image.len());
}

#[test]
fn g_at_branch_point_is_minus_a_power() {
    // f(a_i) = 0, so G(a_i) = -a_i^{p(n-1)}
    let configs = [
        BranchConfiguration::new(
            Prime::THREE,
            vec![q(1, 1), q(-2, 3), q(5, 2), q(7, 1)],
            vec![1, 2, 1, 1],
            1,
        )
        .unwrap(),
        BranchConfiguration::new(Prime::TWO, vec![q(3, 1), q(-1, 4), q(9, 5)], vec![1, 1, 1], 1).unwrap(),
        BranchConfiguration::new(Prime::new(5).unwrap(), vec![q(2, 1), q(-3, 1)], vec![3, 1], 1).unwrap(),
    ];
    for cfg in configs {
        let p = cfg.prime().get() as u64;
        for i in 0..cfg.points().len() {
            let j = (i + 1) % cfg.points().len();
            let w = weil_evaluation(&cfg, i, j).unwrap();
            let a = cfg.points()[i].clone();
            let expected = -Pow::pow(a, (p * (w.n - 1)) as u32);
            assert_eq!(w.g_at_ai, expected);
            let sign = if p.is_multiple_of(2) {
                -ExactRational::one()
            } else {
                ExactRational::one()
            };
            assert_eq!(w.ratio, sign);
        }
    }
}
