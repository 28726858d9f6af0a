use std::collections::BTreeMap;

use proptest::prelude::*;
use wordflow::distributional::{build_basis, meaning_vector, BasisSpec, Corpus, VectorSpaceModel};
use wordflow::Execution;

/// Direct pair count over every (word, context) position pair.
fn oracle_vector(corpus: &Corpus, word: &str, basis: &BasisSpec) -> Vec<f64> {
    let mut counts = vec![0u64; basis.len()];
    let mut occurrences = 0u64;
    for doc in corpus.documents() {
        for (p, tok) in doc.iter().enumerate() {
            if tok != word {
                continue;
            }
            occurrences += 1;
            for (q, ctx) in doc.iter().enumerate() {
                if q != p && p.abs_diff(q) <= basis.window() {
                    for (m, b) in basis.words().iter().enumerate() {
                        if b == ctx {
                            counts[m] += 1;
                        }
                    }
                }
            }
        }
    }
    counts.iter().map(|&c| c as f64 / occurrences as f64).collect()
}

fn corpus_strategy() -> impl Strategy<Value = Vec<Vec<String>>> {
    let token = prop::sample::select(vec!["a", "b", "c", "d", "e", "f"]).prop_map(String::from);
    prop::collection::vec(prop::collection::vec(token, 1..15), 1..8)
}

proptest! {
    #[test]
    fn vectors_match_pair_count_oracle(docs in corpus_strategy(), window in 1usize..4) {
        let corpus = Corpus::new(docs);
        let k = 2.min(corpus.frequencies().len());
        let basis = build_basis(&corpus, k, None).unwrap().with_window(window).unwrap();
        let model = VectorSpaceModel::build(&corpus, &basis);
        for word in corpus.frequencies().keys() {
            let expected = oracle_vector(&corpus, word, &basis);
            prop_assert_eq!(model.vector(word).unwrap().data(), expected.as_slice());
            let single = meaning_vector(&corpus, word, &basis).unwrap();
            prop_assert_eq!(single.data(), expected.as_slice());
            for &x in &expected {
                prop_assert!((0.0..=2.0 * window as f64).contains(&x));
            }
        }
    }

    #[test]
    fn document_order_does_not_matter(docs in corpus_strategy(), split in 0usize..8) {
        let corpus = Corpus::new(docs.clone());
        let basis = build_basis(&corpus, 3.min(corpus.frequencies().len()), None).unwrap();
        let forward = VectorSpaceModel::build(&corpus, &basis).to_text();

        let mut reversed = docs.clone();
        reversed.reverse();
        let backward = VectorSpaceModel::build_with(&Corpus::new(reversed), &basis, Execution::Sequential);
        prop_assert_eq!(&backward.to_text(), &forward);

        let k = split.min(docs.len());
        let (a, b) = docs.split_at(k);
        let (a, b) = (Corpus::new(a.to_vec()), Corpus::new(b.to_vec()));
        prop_assert_eq!(&VectorSpaceModel::build(&b.concat(&a), &basis).to_text(), &forward);
        prop_assert_eq!(build_basis(&b.concat(&a), basis.len(), None).unwrap(), basis);
    }
}

#[test]
fn duplicated_sentences_make_exact_synonyms() {
    let text = "alice sends a message to bob\n\nbob reads the message\n\n\
                alice and bob share a secret key\n\ncarol reads nothing";
    let corpus = Corpus::from_text(text);
    let mut docs: Vec<Vec<String>> = corpus.documents().to_vec();
    for doc in corpus.documents() {
        if doc.iter().any(|t| t == "alice") {
            docs.push(
                doc.iter()
                    .map(|t| if t == "alice" { "alicia".to_string() } else { t.clone() })
                    .collect(),
            );
        }
    }
    let corpus = Corpus::new(docs);
    let basis = build_basis(&corpus, 6, None).unwrap();
    let model = VectorSpaceModel::build(&corpus, &basis);
    let sim = model.similarity("alice", "alicia").unwrap();
    assert!((sim - 1.0).abs() <= 1e-12, "{sim}");
    assert_eq!(model.vector("alice").unwrap(), model.vector("alicia").unwrap());
}

#[test]
fn model_round_trips_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.txt");
    let corpus = Corpus::from_text("the cat sat on the mat\n\nthe dog sat on the log");
    let basis = build_basis(&corpus, 4, None).unwrap();
    let model = VectorSpaceModel::build(&corpus, &basis);
    std::fs::write(&path, model.to_text()).unwrap();
    let back = VectorSpaceModel::read(&path).unwrap();
    assert_eq!(back, model);
    let words: BTreeMap<&str, u64> = back.words().map(|w| (w, back.occurrences(w).unwrap())).collect();
    assert_eq!(words["the"], 4);
}
