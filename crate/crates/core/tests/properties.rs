mod common;

use freelie::algebra::{assoc_expand, normalize, BracketExpr};
use freelie::dims::dim_l_bigraded;
use freelie::families::{alpha, engel_product, razl_expansion, razl_rewrite};
use freelie::words::{is_lyndon, lyndon_bracket, lyndon_words, standard_factorization, Word};
use freelie::zlinalg::{hnf, kernel, rank, smith_invariants, IntMatrix};
use freelie::LyndonWord;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn lyndon(s: &str) -> LyndonWord {
    LyndonWord::new(s.parse::<Word>().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_expands_back(seed in any::<u64>(), weight in 1usize..=10) {
        let e = common::random_homogeneous(&mut rng(seed), weight);
        let x = normalize(&e).unwrap();
        prop_assert_eq!(assoc_expand(&e), assoc_expand(&x.to_expr()));
        prop_assert_eq!(x.to_assoc().unwrap(), assoc_expand(&e));
    }

    #[test]
    fn jacobi(seed in any::<u64>()) {
        let (x, y, z) = common::random_triple(&mut rng(seed), 9);
        let j = x.bracket(&y).bracket(&z)
            .add(&y.bracket(&z).bracket(&x))
            .add(&z.bracket(&x).bracket(&y));
        prop_assert!(normalize(&j).unwrap().is_zero());
    }

    #[test]
    fn antisymmetry(seed in any::<u64>()) {
        let (x, y, _) = common::random_triple(&mut rng(seed), 9);
        prop_assert!(normalize(&x.bracket(&y).add(&y.bracket(&x))).unwrap().is_zero());
        prop_assert!(normalize(&x.bracket(&x)).unwrap().is_zero());
    }

    #[test]
    fn normalize_is_linear(seed in any::<u64>(), weight in 2usize..=8, c in -5i64..=5) {
        let mut r = rng(seed);
        let e = common::random_homogeneous(&mut r, weight);
        let x = normalize(&e).unwrap();
        prop_assert_eq!(normalize(&e.scale(&BigInt::from(c))).unwrap().to_pairs(), x.scale(&BigInt::from(c)).to_pairs());
        prop_assert!(normalize(&e.clone().sub(&e)).unwrap().is_zero());
    }

    #[test]
    fn factorization_recomposes(bits in any::<u64>(), len in 2usize..=20) {
        let s: String = (0..len).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' }).collect();
        let w: Word = s.parse().unwrap();
        if is_lyndon(&w).unwrap() {
            let lw = LyndonWord::new(w).unwrap();
            let (u, v) = standard_factorization(&lw).unwrap();
            prop_assert_eq!(u.word().concat(v.word()), w);
            prop_assert!(u.word() < v.word());
            prop_assert!(is_lyndon(u.word()).unwrap() && is_lyndon(v.word()).unwrap());
            for i in 1..len {
                let suffix = w.slice(i, len);
                if i < len - v.len() {
                    prop_assert!(!is_lyndon(&suffix).unwrap(), "{} has a longer Lyndon suffix {}", w, suffix);
                }
            }
        }
    }

    #[test]
    fn hnf_reconstructs(entries in proptest::collection::vec(-5i64..=5, 64), r in 1usize..=8, c in 1usize..=8) {
        let rows: Vec<Vec<BigInt>> = (0..r).map(|i| (0..c).map(|j| BigInt::from(entries[i * 8 + j])).collect()).collect();
        let m = IntMatrix::from_rows(c, rows).unwrap();
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert_eq!((u.rows(), u.cols()), (r, r));
        let inv = smith_invariants(&u);
        prop_assert_eq!(inv.len(), r);
        prop_assert!(inv.iter().all(|x| x.is_one()));
        prop_assert_eq!(rank(&h), rank(&m));
    }

    #[test]
    fn kernel_fuzz(entries in proptest::collection::vec(-5i64..=5, 64), r in 1usize..=8, c in 1usize..=8) {
        let rows: Vec<Vec<BigInt>> = (0..r).map(|i| (0..c).map(|j| BigInt::from(entries[i * 8 + j])).collect()).collect();
        let m = IntMatrix::from_rows(c, rows).unwrap();
        let k = kernel(&m);
        prop_assert_eq!(k.rank(), c - rank(&m));
        for v in k.basis() {
            prop_assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
        }
        if k.rank() > 0 {
            let basis = IntMatrix::from_rows(c, k.basis().to_vec()).unwrap();
            prop_assert!(smith_invariants(&basis).iter().all(|x| x.is_one()), "kernel not pure");
        }
    }
}

#[test]
fn lyndon_counts_match_witt() {
    for n in 1..=14usize {
        for k in 0..=n {
            let l = n - k;
            assert_eq!(lyndon_words(k, l).unwrap().len() as u64, dim_l_bigraded(k as u64, l as u64).unwrap());
        }
    }
}

#[test]
fn basis_brackets_are_unitriangular() {
    for n in 1..=10usize {
        for k in 0..=n {
            for w in lyndon_words(k, n - k).unwrap() {
                let p = assoc_expand(&BracketExpr::tree(lyndon_bracket(&w)));
                assert_eq!(p.coeff(w.word()), BigInt::one(), "{w}");
                assert!(p.iter().all(|(u, _)| u >= w.word()), "{w}");
            }
        }
    }
}

#[test]
fn section_one_rewrite_rule() {
    let ab = |n: usize| format!("a{}", "b".repeat(n));
    for m in 1..=6 {
        for n in 0..m {
            let w = lyndon(&format!("{}{}", ab(n), ab(m)));
            let lhs = BracketExpr::tree(lyndon_bracket(&w)).bracket(&BracketExpr::b());
            let first = BracketExpr::tree(lyndon_bracket(&lyndon(&ab(n + 1))))
                .bracket(&BracketExpr::tree(lyndon_bracket(&lyndon(&ab(m)))));
            let second = BracketExpr::tree(lyndon_bracket(&lyndon(&format!("{}{}", ab(n), ab(m + 1)))));
            assert_eq!(normalize(&lhs).unwrap(), normalize(&first.add(&second)).unwrap(), "n={n} m={m}");
        }
    }
}

#[test]
fn razl_agrees_with_normalize() {
    let mut checked = 0;
    for k in 0..=9usize {
        for l in 0..k {
            for m in 0..=k {
                if k + l + m > 9 {
                    continue;
                }
                let direct = normalize(&engel_product(&[k, l, m]).bracket(&BracketExpr::b())).unwrap();
                assert_eq!(razl_rewrite(k, l, m).unwrap(), direct, "({k},{l},{m})");
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
    assert!(razl_expansion(1, 1, 0).is_err());
    assert!(razl_expansion(2, 0, 3).is_err());
}

#[test]
fn alpha_recurrences() {
    for i in 1..=50 {
        for j in 1..=50 {
            if i != j {
                assert_eq!(alpha(i - 1, j) + alpha(i, j - 1), alpha(i, j), "({i},{j})");
            }
        }
    }
    for i in 2..=50 {
        assert_eq!(alpha(i, i - 1), alpha(i, i));
    }
    for i in 1..=50 {
        assert_eq!(alpha(i, 0), BigInt::from(2));
    }
}

#[test]
fn commutator_expansion_by_b() {
    // [C_k, C_l, C_m, b] splits over the three Engel slots
    for k in 0..=6 {
        for l in 0..=6 {
            for m in 0..=6 {
                let lhs = engel_product(&[k, l, m]).bracket(&BracketExpr::b());
                let rhs = engel_product(&[k + 1, l, m]).add(&engel_product(&[k, l + 1, m])).add(&engel_product(&[
                    k,
                    l,
                    m + 1,
                ]));
                assert_eq!(normalize(&lhs).unwrap(), normalize(&rhs).unwrap(), "({k},{l},{m})");
            }
        }
    }
}
