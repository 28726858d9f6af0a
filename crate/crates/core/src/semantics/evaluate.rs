use super::tensor::{increment, strides};
use super::{SemanticsError, SpaceAssignment, Tensor, WordMeaning, DEFAULT_NAIVE_CAP};
use crate::exec::Execution;
use crate::pregroup::{PregroupType, ReductionDiagram};

/// Settings for [`meaning_naive`].
#[derive(Debug, Clone, Copy)]
pub struct NaiveConfig {
    /// Largest tensor product, in entries, the evaluator will build.
    pub max_entries: usize,
    pub exec: Execution,
}

impl Default for NaiveConfig {
    fn default() -> Self {
        NaiveConfig {
            max_entries: DEFAULT_NAIVE_CAP,
            exec: Execution::default(),
        }
    }
}

/// Checks that the words line up with the diagram and returns the
/// concatenated type sequence.
fn check_inputs(
    words: &[WordMeaning],
    diagram: &ReductionDiagram,
    sa: &SpaceAssignment,
) -> Result<PregroupType, SemanticsError> {
    let seq = words
        .iter()
        .fold(PregroupType::unit(), |acc, w| acc.concat(&w.ty));
    if seq.len() != diagram.len() {
        return Err(SemanticsError::SequenceLength {
            words: seq.len(),
            diagram: diagram.len(),
        });
    }
    for w in words {
        let expected = sa.shape_of(&w.ty)?;
        if w.tensor.shape() != expected.as_slice() {
            return Err(SemanticsError::WordShape {
                word: w.word.clone(),
                expected,
                found: w.tensor.shape().to_vec(),
            });
        }
    }
    let survivors: PregroupType = diagram
        .through()
        .iter()
        .map(|&p| seq.simples()[p].clone())
        .collect();
    diagram.validate(&seq, &survivors)?;
    Ok(seq)
}

/// Reference evaluator: builds the full tensor product of the word tensors,
/// then applies the linear map made of one cap `Σ_i ⟨ii|` per link and an
/// identity per through wire.
pub fn meaning_naive(
    words: &[WordMeaning],
    diagram: &ReductionDiagram,
    sa: &SpaceAssignment,
    config: &NaiveConfig,
) -> Result<Tensor, SemanticsError> {
    let seq = check_inputs(words, diagram, sa)?;
    let shape = sa.shape_of(&seq)?;
    let entries = shape
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .unwrap_or(usize::MAX);
    if entries > config.max_entries {
        return Err(SemanticsError::SizeCap {
            entries,
            cap: config.max_entries,
        });
    }

    let product = words
        .iter()
        .fold(Tensor::scalar(1.0), |acc, w| acc.kron_with(&w.tensor, config.exec));
    debug_assert_eq!(product.shape(), shape.as_slice());

    let word_strides = strides(&shape);
    let out_shape: Vec<usize> = diagram.through().iter().map(|&p| shape[p]).collect();
    let out_strides: Vec<usize> = diagram.through().iter().map(|&p| word_strides[p]).collect();
    // Each cap index addresses both of its legs at once.
    let cap_shape: Vec<usize> = diagram.links().iter().map(|&(i, _)| shape[i]).collect();
    let cap_strides: Vec<usize> = diagram
        .links()
        .iter()
        .map(|&(i, j)| word_strides[i] + word_strides[j])
        .collect();
    let cap_terms: usize = cap_shape.iter().product();

    let out_len: usize = out_shape.iter().product();
    let mut out = vec![0.0; out_len];
    let chunk = (out_len / 64).max(1);
    config.exec.fill_chunks(&mut out, chunk, |offset, block| {
        let mut out_index = unflatten(offset, &out_shape);
        for slot in block.iter_mut() {
            let base: usize = out_index.iter().zip(&out_strides).map(|(i, s)| i * s).sum();
            let mut cap_index = vec![0; cap_shape.len()];
            let mut sum = 0.0;
            for _ in 0..cap_terms {
                let off: usize = cap_index.iter().zip(&cap_strides).map(|(i, s)| i * s).sum();
                sum += product.data()[base + off];
                increment(&mut cap_index, &cap_shape);
            }
            *slot = sum;
            increment(&mut out_index, &out_shape);
        }
    });
    Ok(Tensor::new(out_shape, out)?)
}

fn unflatten(mut flat: usize, shape: &[usize]) -> Vec<usize> {
    let mut index = vec![0; shape.len()];
    for k in (0..shape.len()).rev() {
        index[k] = flat % shape[k];
        flat /= shape[k];
    }
    index
}

/// Sentence meaning without building the full tensor product.
pub fn meaning(
    words: &[WordMeaning],
    diagram: &ReductionDiagram,
    sa: &SpaceAssignment,
) -> Result<Tensor, SemanticsError> {
    meaning_with(words, diagram, sa, Execution::default())
}

/// Like [`meaning`], with explicit control over parallelism.
///
/// Words are absorbed left to right. A cup whose legs both lie in the
/// incoming word is traced out first; each cup whose right leg lies in the
/// word and whose left leg is still open is then contracted against the
/// running tensor. Cups therefore close in order of their right endpoints,
/// which puts nested cups before the cups around them.
pub fn meaning_with(
    words: &[WordMeaning],
    diagram: &ReductionDiagram,
    sa: &SpaceAssignment,
    exec: Execution,
) -> Result<Tensor, SemanticsError> {
    check_inputs(words, diagram, sa)?;
    let mut partner = vec![None; diagram.len()];
    for &(i, j) in diagram.links() {
        partner[i] = Some(j);
        partner[j] = Some(i);
    }

    let mut current = Tensor::scalar(1.0);
    let mut open: Vec<usize> = Vec::new();
    let mut offset = 0;
    for word in words {
        let end = offset + word.ty.len();
        let mut tensor = word.tensor.clone();
        let mut axes: Vec<usize> = (offset..end).collect();

        // Cups internal to the word, closed by right endpoint.
        for (j, link) in partner.iter().enumerate().take(end).skip(offset) {
            if let Some(i) = link.filter(|&i| i >= offset && i < j) {
                let a = axes.iter().position(|&p| p == i).expect("open leg");
                let b = axes.iter().position(|&p| p == j).expect("open leg");
                tensor = tensor.trace(a, b);
                axes.retain(|&p| p != i && p != j);
            }
        }

        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (b, &j) in axes.iter().enumerate() {
            if let Some(i) = partner[j].filter(|&i| i < offset) {
                let a = open.iter().position(|&p| p == i).expect("open leg");
                left.push(a);
                right.push(b);
            }
        }
        current = current.contract(&left, &tensor, &right, exec);
        let kept_open = open
            .iter()
            .enumerate()
            .filter(|(a, _)| !left.contains(a))
            .map(|(_, &p)| p);
        let kept_new = axes
            .iter()
            .enumerate()
            .filter(|(b, _)| !right.contains(b))
            .map(|(_, &p)| p);
        open = kept_open.chain(kept_new).collect();
        offset = end;
    }
    debug_assert_eq!(open, diagram.through());
    Ok(current)
}

/// Evaluates many independent sentences, possibly in parallel. Results keep
/// input order.
pub fn meaning_batch(
    sentences: &[(Vec<WordMeaning>, ReductionDiagram)],
    sa: &SpaceAssignment,
    exec: Execution,
) -> Vec<Result<Tensor, SemanticsError>> {
    exec.map(sentences, |(words, diagram)| {
        meaning_with(words, diagram, sa, Execution::Sequential)
    })
}
