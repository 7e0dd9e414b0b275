use num_traits::Zero;
use proptest::prelude::*;

use schubvan::oracle::{pschur_coeff, symbolic_vanishing};
use schubvan::weyl::all_elements;
use schubvan::{lr_vanishing, vanishing, Instance, LieType, Options, PartitionTriple, Verdict, WeylElement};

fn group(t: LieType, n: usize) -> Vec<WeylElement> {
    all_elements(t, n)
}

fn strict(max: usize) -> Vec<Vec<usize>> {
    (0u32..1 << max).map(|m| (1..=max).rev().filter(|&p| m >> (p - 1) & 1 == 1).collect()).collect()
}

#[test]
fn type_d_lr_matches_p_functions() {
    let parts = strict(3);
    let opts = Options::default();
    let mut checked = 0;
    for l in &parts {
        for m in &parts {
            for n in &parts {
                if l.iter().sum::<usize>() + m.iter().sum::<usize>() != n.iter().sum::<usize>() {
                    continue;
                }
                let t = PartitionTriple::new(l.clone(), m.clone(), n.clone());
                let got = lr_vanishing(&t, LieType::D, &opts, checked).unwrap().verdict == Verdict::Zero;
                assert_eq!(got, pschur_coeff(l, m, n).is_zero(), "{t:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

fn instance_strategy(t: LieType, n: usize, k: usize) -> impl Strategy<Value = (Vec<WeylElement>, u64)> {
    let g = group(t, n);
    (proptest::collection::vec(0..g.len(), k), any::<u64>())
        .prop_map(move |(idx, seed)| (idx.into_iter().map(|i| g[i].clone()).collect(), seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // the coefficient does not depend on the order of the words
    #[test]
    fn verdict_is_symmetric((words, seed) in instance_strategy(LieType::B, 3, 3), perm in 0usize..6) {
        let order = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][perm];
        let inst = Instance::new(LieType::B, 3, words).unwrap();
        let opts = Options::with_rounds(30);
        let a = vanishing(&inst, &opts, seed).unwrap();
        let b = vanishing(&inst.reordered(&order), &opts, seed).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn positive_verdicts_are_certain((words, seed) in instance_strategy(LieType::A, 4, 3)) {
        let inst = Instance::new(LieType::A, 4, words).unwrap();
        let d = vanishing(&inst, &Options::with_rounds(5), seed).unwrap();
        if d.verdict == Verdict::Positive {
            prop_assert!(d.certain);
            prop_assert!(!symbolic_vanishing(&inst).unwrap());
        }
    }

    #[test]
    fn type_c_matches_type_b((words, seed) in instance_strategy(LieType::C, 3, 3)) {
        let c = Instance::new(LieType::C, 3, words.clone()).unwrap();
        let b_words = words.iter().map(|w| w.relabel(LieType::B).unwrap()).collect();
        let b = Instance::new(LieType::B, 3, b_words).unwrap();
        let opts = Options::with_rounds(30);
        let dc = vanishing(&c, &opts, seed).unwrap();
        prop_assert_eq!(dc.verdict, vanishing(&b, &opts, seed).unwrap().verdict);
        prop_assert!(dc.exponent.is_some());
    }
}

#[test]
fn identity_words_do_not_matter() {
    let inst = Instance::parse(LieType::A, 4, &["3,2,1,4", "1,3,4,2", "1,2,3,4", "1,2,4,3"]).unwrap();
    assert_eq!(vanishing(&inst, &Options::default(), 1).unwrap().verdict, Verdict::Positive);
}
