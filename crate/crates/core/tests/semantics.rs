mod common;

use common::{random_sentence, random_tensor, sequence_of};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordflow::lexicon::{make_logical_does, make_logical_not};
use wordflow::pregroup::{enumerate_reductions, parse_type, reduce, PregroupType, ReductionDiagram};
use wordflow::semantics::{
    choi_embed, cosine, is_separable, meaning, meaning_batch, meaning_naive, meaning_with, snake_check,
    NaiveConfig, SpaceAssignment, Tensor, WordMeaning,
};
use wordflow::Execution;

fn word(name: &str, ty: &str, t: Tensor, sa: &SpaceAssignment) -> WordMeaning {
    WordMeaning::new(name, parse_type(ty).unwrap(), t, sa).unwrap()
}

fn canonical(words: &[WordMeaning]) -> ReductionDiagram {
    reduce(&sequence_of(words), &PregroupType::sentence()).unwrap()
}

fn eval(words: &[WordMeaning], sa: &SpaceAssignment) -> Tensor {
    meaning(words, &canonical(words), sa).unwrap()
}

#[test]
fn random_sentences_match_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let config = NaiveConfig::default();
    for _ in 0..150 {
        let (words, sa) = random_sentence(&mut rng, 5, 4, 100_000);
        let seq = sequence_of(&words);
        for d in enumerate_reductions(&seq, &PregroupType::sentence(), 8) {
            let naive = meaning_naive(&words, &d, &sa, &config).unwrap();
            for exec in [Execution::Sequential, Execution::Parallel] {
                let fast = meaning_with(&words, &d, &sa, exec).unwrap();
                assert!(fast.approx_eq_rel(&naive, 1e-9), "{seq} / {d}");
            }
        }
    }
}

#[test]
fn hates_example_matches_explicit_summation() {
    let sa = SpaceAssignment::new().with("n", 2).with("s", 2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let t = random_tensor(&mut rng, vec![2, 2, 2]);
    let alice = Tensor::vector(vec![1.0, 0.0]);
    let bob = Tensor::vector(vec![0.0, 1.0]);
    let words = [
        word("alice", "n", alice.clone(), &sa),
        word("hates", "n^r s n^l", t.clone(), &sa),
        word("bob", "n", bob.clone(), &sa),
    ];
    // Σ_{i,j} alice_i T[i,k,j] bob_j by brute force over all indices.
    let mut expected = [0.0; 2];
    for (k, e) in expected.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                *e += alice.get(&[i]) * t.get(&[i, k, j]) * bob.get(&[j]);
            }
        }
    }
    let got = eval(&words, &sa);
    assert_eq!(got.data(), &expected);
    assert_eq!(got.data(), &[t.get(&[0, 0, 1]), t.get(&[0, 1, 1])]);
}

#[test]
fn meaning_is_multilinear() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let (words, sa) = random_sentence(&mut rng, 5, 3, 20_000);
        let d = canonical(&words);
        let base = meaning(&words, &d, &sa).unwrap();
        let w = rng.random_range(0..words.len());
        let alpha: f64 = rng.random_range(-3.0..3.0);

        let mut scaled = words.clone();
        scaled[w].tensor = words[w].tensor.scale(alpha);
        let got = meaning(&scaled, &d, &sa).unwrap();
        assert!(got.approx_eq_rel(&base.scale(alpha), 1e-12) || got.max_abs_diff(&base.scale(alpha)) < 1e-12);

        let other = random_tensor(&mut rng, words[w].tensor.shape().to_vec());
        let mut second = words.clone();
        second[w].tensor = other.clone();
        let mut summed = words.clone();
        summed[w].tensor = words[w].tensor.add(&other);
        let lhs = meaning(&summed, &d, &sa).unwrap();
        let rhs = base.add(&meaning(&second, &d, &sa).unwrap());
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + rhs.norm_inf()));
    }
}

#[test]
fn snake_identity_for_small_dimensions() {
    for d in 1..=8 {
        assert_eq!(snake_check(d), Tensor::identity(d), "d = {d}");
    }
}

#[test]
fn choi_embedding_retracts_to_the_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (din, dout) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let sa = SpaceAssignment::new().with("n", din).with("s", dout);
        let f = random_tensor(&mut rng, vec![din, dout]);
        let v = random_tensor(&mut rng, vec![din]);
        let words = [
            word("subject", "n", v.clone(), &sa),
            word("verb", "n^r s", choi_embed(&f).unwrap(), &sa),
        ];
        let expected = Tensor::from_fn(vec![dout], |k| (0..din).map(|i| f.get(&[i, k[0]]) * v.get(&[i])).sum());
        assert!(eval(&words, &sa).max_abs_diff(&expected) <= 1e-12);
    }
    // Swap map sends e0 to e1.
    let sa = SpaceAssignment::new().with("n", 2).with("s", 2);
    let swap = Tensor::matrix(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let words = [
        word("subject", "n", Tensor::vector(vec![1.0, 0.0]), &sa),
        word("verb", "n^r s", choi_embed(&swap).unwrap(), &sa),
    ];
    let d = canonical(&words);
    assert_eq!(
        meaning_naive(&words, &d, &sa, &NaiveConfig::default()).unwrap().data(),
        &[0.0, 1.0]
    );
}

fn transitive(subject: &Tensor, verb: &Tensor, object: &Tensor, sa: &SpaceAssignment) -> Tensor {
    let words = [
        word("subj", "n", subject.clone(), sa),
        word("verb", "n^r s n^l", verb.clone(), sa),
        word("obj", "n", object.clone(), sa),
    ];
    eval(&words, sa)
}

fn parallel_or_zero(u: &Tensor, v: &Tensor) -> bool {
    match cosine(u, v) {
        Ok(c) => (c.abs() - 1.0).abs() <= 1e-9,
        Err(_) => u.norm() == 0.0 || v.norm() == 0.0,
    }
}

#[test]
fn product_verbs_ignore_their_arguments() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let sa = SpaceAssignment::new().with("n", 3).with("s", 3);
    for _ in 0..50 {
        let (a, m, b) = (
            random_tensor(&mut rng, vec![3]),
            random_tensor(&mut rng, vec![3]),
            random_tensor(&mut rng, vec![3]),
        );
        let verb = a.kron(&m).kron(&b);
        assert!(is_separable(&verb, 1, 1e-9) && is_separable(&verb, 2, 1e-9));
        let w = random_tensor(&mut rng, vec![3]);
        let u1 = random_tensor(&mut rng, vec![3]);
        let u2 = random_tensor(&mut rng, vec![3]);
        assert!(parallel_or_zero(
            &transitive(&u1, &verb, &w, &sa),
            &transitive(&u2, &verb, &w, &sa)
        ));
    }
}

#[test]
fn generic_verbs_are_word_order_sensitive() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let sa = SpaceAssignment::new().with("n", 3).with("s", 2);
    let basis = |i: usize| Tensor::from_fn(vec![3], |k| if k[0] == i { 1.0 } else { 0.0 });
    for _ in 0..50 {
        let verb = random_tensor(&mut rng, vec![3, 2, 3]);
        let asymmetric = (0..3).any(|i| (0..3).any(|j| (0..2).any(|k| verb.get(&[i, k, j]) != verb.get(&[j, k, i]))));
        assert!(asymmetric);
        let differs = (0..3).any(|i| {
            (0..3).any(|j| {
                let ab = transitive(&basis(i), &verb, &basis(j), &sa);
                let ba = transitive(&basis(j), &verb, &basis(i), &sa);
                ab != ba
            })
        });
        assert!(differs);
        let breaks = (0..3).any(|i| {
            (0..3).any(|j| !parallel_or_zero(
                &transitive(&basis(i), &verb, &basis(0), &sa),
                &transitive(&basis(j), &verb, &basis(0), &sa),
            ))
        });
        assert!(breaks);
    }
}

#[test]
fn negation_acts_on_the_sentence_wire() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..50 {
        let dn = rng.random_range(1..=4);
        let ds = rng.random_range(1..=4);
        let sa = SpaceAssignment::new().with("n", dn).with("s", ds);
        let a = random_tensor(&mut rng, vec![dn]);
        let l = random_tensor(&mut rng, vec![dn, ds, dn]);
        let b = random_tensor(&mut rng, vec![dn]);
        let neg = random_tensor(&mut rng, vec![ds, ds]);

        let does = make_logical_does(&sa).unwrap();
        let not = make_logical_not(&sa, &neg).unwrap();
        let likes = word("likes", "n^r s n^l", l.clone(), &sa);
        let alice = word("alice", "n", a, &sa);
        let bob = word("bob", "n", b, &sa);

        let plain = transitive(&alice.tensor, &l, &bob.tensor, &sa);
        let expected = neg.contract(&[1], &plain, &[0], Execution::Sequential);

        let negated = [alice.clone(), does.clone(), not.clone(), likes.clone(), bob.clone()];
        let d = canonical(&negated);
        assert_eq!(d.links(), &[(0, 1), (3, 6), (4, 5), (7, 10), (8, 9), (11, 12)]);
        let got = meaning(&negated, &d, &sa).unwrap();
        assert!(got.max_abs_diff(&expected) <= 1e-12);
        // The oracle is only affordable at the smaller dimensions.
        if dn * ds <= 4 {
            let naive = meaning_naive(&negated, &d, &sa, &NaiveConfig::default()).unwrap();
            assert!(naive.max_abs_diff(&expected) <= 1e-12);
        }

        // "does not not" composes the matrices.
        let twice = [alice, does, not.clone(), not, likes, bob];
        let expected2 = neg.contract(&[1], &expected, &[0], Execution::Sequential);
        let got2 = eval(&twice, &sa);
        assert!(got2.max_abs_diff(&expected2) <= 1e-12 * (1.0 + expected2.norm_inf()));
    }
}

#[test]
fn logical_words_are_connected() {
    let sa = SpaceAssignment::new().with("n", 3).with("s", 2);
    let swap = Tensor::matrix(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    for t in [make_logical_does(&sa).unwrap().tensor, make_logical_not(&sa, &swap).unwrap().tensor] {
        for split in 1..4 {
            assert!(!is_separable(&t, split, 1e-9));
        }
    }
}

#[test]
fn batch_evaluation_keeps_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let sa = SpaceAssignment::new().with("n", 3).with("s", 2);
    let sentences: Vec<(Vec<WordMeaning>, ReductionDiagram)> = (0..20)
        .map(|_| {
            let words = vec![
                word("a", "n", random_tensor(&mut rng, vec![3]), &sa),
                word("v", "n^r s n^l", random_tensor(&mut rng, vec![3, 2, 3]), &sa),
                word("b", "n", random_tensor(&mut rng, vec![3]), &sa),
            ];
            let d = canonical(&words);
            (words, d)
        })
        .collect();
    let seq = meaning_batch(&sentences, &sa, Execution::Sequential);
    let par = meaning_batch(&sentences, &sa, Execution::Parallel);
    for ((s, p), (words, d)) in seq.iter().zip(&par).zip(&sentences) {
        let expected = meaning(words, d, &sa).unwrap();
        assert_eq!(s.as_ref().unwrap(), &expected);
        assert_eq!(p.as_ref().unwrap(), &expected);
    }
}
