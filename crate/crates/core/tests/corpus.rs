mod common;

use common::{fixture, shape, Build};
use para_core::corpus::Corpus;
use para_core::fol::print_proto;
use proptest::prelude::*;

#[derive(Clone, Debug)]
enum Op {
    Add(common::Shape),
    Bad(u8),
    Delete(u8),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        4 => shape(3, true).prop_map(Op::Add),
        1 => any::<u8>().prop_map(Op::Bad),
        2 => any::<u8>().prop_map(Op::Delete),
    ]
}

const BAD: [&str; 4] = ["P(", "Q(a)", "forall Entity.x1", "P(a) &"];

/// Applies the ops, checking allocation, and returns the number of adds.
fn apply(c: &mut Corpus, ops: &[Op]) -> Result<u64, TestCaseError> {
    let dict = fixture();
    let build = Build { dict: &dict, iff: true, predicates: 4 };
    let mut adds = 0u64;
    for op in ops {
        match op {
            Op::Add(s) => {
                let text = print_proto(&build.formula(s), &dict).unwrap();
                let code = c.add_sentence(&text).unwrap();
                adds += 1;
                prop_assert_eq!(code, 2 * adds + 5);
            }
            Op::Bad(i) => {
                let before = c.clone();
                prop_assert!(c.add_sentence(BAD[*i as usize % BAD.len()]).is_err());
                prop_assert_eq!(&*c, &before);
            }
            Op::Delete(i) => {
                let codes: Vec<u64> = c.sentences().iter().map(|s| s.code).collect();
                if !codes.is_empty() {
                    let code = codes[*i as usize % codes.len()];
                    c.delete_sentence(code).unwrap();
                    prop_assert!(c.delete_sentence(code).is_err());
                }
            }
        }
    }
    Ok(adds)
}

fn seeded() -> Corpus {
    Corpus::with_dictionary(fixture())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn save_load_identity(ops in prop::collection::vec(op(), 0..12)) {
        let mut c = seeded();
        let adds = apply(&mut c, &ops)?;
        prop_assert_eq!(c.next_code(), 2 * adds + 7);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.json");
        c.save(&path).unwrap();
        let back = Corpus::load(&path).unwrap();
        prop_assert_eq!(&back, &c);
        back.save(&path).unwrap();
        prop_assert_eq!(std::fs::read_to_string(&path).unwrap(), c.to_json() + "\n");
    }

    #[test]
    fn failed_adds_leave_the_file_alone(ops in prop::collection::vec(op(), 1..8), bad in any::<u8>()) {
        let mut c = seeded();
        apply(&mut c, &ops)?;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.json");
        c.save(&path).unwrap();
        let before = std::fs::read(&path).unwrap();
        let mut loaded = Corpus::load(&path).unwrap();
        if loaded.add_sentence(BAD[bad as usize % BAD.len()]).is_ok() {
            loaded.save(&path).unwrap();
        }
        prop_assert_eq!(std::fs::read(&path).unwrap(), before);
    }
}

#[test]
fn codes_survive_deleting_the_newest_sentence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    let mut c = Corpus::new();
    c.add_sentence("Man(socrates)").unwrap();
    c.add_sentence("Man(plato)").unwrap();
    c.delete_sentence(9).unwrap();
    c.save(&path).unwrap();
    let mut back = Corpus::load(&path).unwrap();
    assert_eq!(back.add_sentence("Man(aristotle)"), Ok(11));
}

#[test]
fn even_code_in_file_is_rejected() {
    let text = r#"{
  "version": 1,
  "dictionary": {"version": 1, "sorts": [], "predicates": [], "functions": [], "constants": [], "variables": []},
  "sentences": [{"code": 8, "source_text": "R"}]
}"#;
    let err = Corpus::from_json(text).unwrap_err();
    assert_eq!(err.to_string(), "invalid corpus: 8 is not a sentence code");
}
