mod common;

use common::CodeOracle;
use num_bigint::BigUint;
use para_core::numeration::{classify_code, code_for, Category};

#[test]
fn every_code_below_a_million_has_one_class_and_inverts() {
    let mut oracle = CodeOracle::default();
    for m in 1u64..=1_000_000 {
        let expected = oracle.next(m);
        let got = classify_code(&m).unwrap();
        assert_eq!(got, expected, "code {m}");
        if !matches!(got.0, Category::Terminal(_)) {
            assert_eq!(code_for(got.0, &got.1), Ok(m), "code {m}");
        }
    }
    assert_eq!(oracle.seen[&Category::SentenceText], 499_997);
}

#[test]
fn big_codes_agree_with_machine_words() {
    for m in (1u64..=200_000).step_by(37) {
        let (c, o) = classify_code(&m).unwrap();
        let (bc, bo) = classify_code(&BigUint::from(m)).unwrap();
        assert_eq!((c, BigUint::from(o)), (bc, bo));
    }
}

#[test]
fn sentence_codes_index_sentences() {
    for n in 1u64..100 {
        let x = 2 * n + 5;
        assert_eq!(classify_code(&x), Ok((Category::SentenceText, n)));
        assert_eq!((x - 1) / 2 - 2, n);
    }
}
