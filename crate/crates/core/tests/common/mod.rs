//! Helpers shared by integration tests: an exhaustive planar-matching oracle
//! and random sentence generators.
#![allow(dead_code)]

use rand::Rng;
use wordflow::pregroup::{BasicType, PregroupType, SimpleType};
use wordflow::semantics::{SpaceAssignment, Tensor, WordMeaning};

pub fn st(base: &str, z: i32) -> SimpleType {
    SimpleType::new(BasicType::new(base), z)
}

/// Every link set that reduces `seq` to `target`, found by trying all
/// partial matchings and filtering. Sorted lexicographically.
pub fn brute_force_witnesses(seq: &[SimpleType], target: &[SimpleType]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        p: usize,
        seq: &[SimpleType],
        target: &[SimpleType],
        used: &mut Vec<bool>,
        links: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let n = seq.len();
        if p == n {
            let through: Vec<usize> = (0..n).filter(|&q| !used[q]).collect();
            if through.len() != target.len()
                || through.iter().zip(target).any(|(&q, t)| &seq[q] != t)
            {
                return;
            }
            for &(i, j) in links.iter() {
                if links.iter().any(|&(k, l)| i < k && k < j && j < l) {
                    return;
                }
                if through.iter().any(|&w| i < w && w < j) {
                    return;
                }
            }
            let mut sorted = links.clone();
            sorted.sort();
            out.push(sorted);
            return;
        }
        if used[p] {
            return go(p + 1, seq, target, used, links, out);
        }
        go(p + 1, seq, target, used, links, out);
        for q in p + 1..n {
            if !used[q] && seq[p].base == seq[q].base && seq[q].adjoint == seq[p].adjoint + 1 {
                used[p] = true;
                used[q] = true;
                links.push((p, q));
                go(p + 1, seq, target, used, links, out);
                links.pop();
                used[p] = false;
                used[q] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, seq, target, &mut vec![false; seq.len()], &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn random_tensor<R: Rng>(rng: &mut R, shape: Vec<usize>) -> Tensor {
    let len: usize = shape.iter().product();
    Tensor::new(shape, (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
}

/// A random sequence that reduces to `s`: start from `s` and insert
/// adjacent contracting pairs at random positions.
pub fn random_reducible<R: Rng>(rng: &mut R, pairs: usize) -> Vec<SimpleType> {
    let mut seq = vec![st("s", 0)];
    for _ in 0..pairs {
        let base = if rng.random_bool(0.5) { "n" } else { "s" };
        let z = rng.random_range(-1..=1);
        let at = rng.random_range(0..=seq.len());
        seq.insert(at, st(base, z + 1));
        seq.insert(at, st(base, z));
    }
    seq
}

/// A random grammatical sentence of at most `max_words` words with dims in
/// `1..=max_dim` and total tensor product size at most `max_product`.
pub fn random_sentence<R: Rng>(
    rng: &mut R,
    max_words: usize,
    max_dim: usize,
    max_product: usize,
) -> (Vec<WordMeaning>, SpaceAssignment) {
    loop {
        let sa = SpaceAssignment::new()
            .with("n", rng.random_range(1..=max_dim))
            .with("s", rng.random_range(1..=max_dim));
        let pairs = rng.random_range(0..=5);
        let seq = random_reducible(rng, pairs);
        let words = rng.random_range(1..=max_words.min(seq.len()));
        // Cut points splitting the sequence into `words` non-empty groups.
        let mut cuts: Vec<usize> = (1..seq.len()).collect();
        for i in (1..cuts.len()).rev() {
            let j = rng.random_range(0..=i);
            cuts.swap(i, j);
        }
        let mut cuts: Vec<usize> = cuts.into_iter().take(words - 1).collect();
        cuts.sort();
        cuts.insert(0, 0);
        cuts.push(seq.len());

        let ty = PregroupType::from(seq.clone());
        let shape = sa.shape_of(&ty).unwrap();
        if shape.iter().product::<usize>() > max_product {
            continue;
        }
        let meanings = cuts
            .windows(2)
            .enumerate()
            .map(|(w, c)| {
                let ty = PregroupType::from(seq[c[0]..c[1]].to_vec());
                let t = random_tensor(rng, sa.shape_of(&ty).unwrap());
                WordMeaning::new(format!("w{w}"), ty, t, &sa).unwrap()
            })
            .collect();
        return (meanings, sa);
    }
}

pub fn sequence_of(words: &[WordMeaning]) -> PregroupType {
    words.iter().fold(PregroupType::unit(), |acc, w| acc.concat(&w.ty))
}

/// All sequences of length `len` over {n, s} × {-1, 0, 1}.
pub fn all_sequences(len: usize) -> impl Iterator<Item = Vec<SimpleType>> {
    let alphabet = [
        st("n", -1),
        st("n", 0),
        st("n", 1),
        st("s", -1),
        st("s", 0),
        st("s", 1),
    ];
    let total = 6usize.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut seq = Vec::with_capacity(len);
        for _ in 0..len {
            seq.push(alphabet[code % 6].clone());
            code /= 6;
        }
        seq
    })
}
