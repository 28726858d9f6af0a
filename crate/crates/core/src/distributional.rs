//! Count-based word vectors.
//!
//! A word's meaning vector has one coordinate per basis word: how often the
//! basis word appears within `window` tokens of the word, averaged over the
//! word's occurrences. Windows never cross document boundaries.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::exec::Execution;
use crate::semantics::{cosine, SemanticsError, Tensor};

pub const DEFAULT_WINDOW: usize = 2;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("asked for {requested} basis words but the corpus has only {available} eligible tokens")]
    BasisShortfall { requested: usize, available: usize },
    #[error("basis size must be at least 1")]
    EmptyBasis,
    #[error("window must be at least 1")]
    ZeroWindow,
    #[error("duplicate basis word `{0}`")]
    DuplicateBasis(String),
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("model file line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Lowercases and splits on every run of non-alphanumeric characters.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Tokenized documents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<Vec<String>>,
}

impl Corpus {
    /// Documents with no tokens are dropped.
    pub fn new(documents: Vec<Vec<String>>) -> Self {
        Corpus {
            documents: documents.into_iter().filter(|d| !d.is_empty()).collect(),
        }
    }

    /// Splits `text` into documents at blank lines and tokenizes each.
    pub fn from_text(text: &str) -> Self {
        let mut documents = Vec::new();
        let mut current = String::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                documents.push(tokenize(&current));
                current.clear();
            } else {
                current.push_str(line);
                current.push('\n');
            }
        }
        documents.push(tokenize(&current));
        Corpus::new(documents)
    }

    /// Reads each file as blank-line separated documents.
    pub fn read_files<P: AsRef<Path>>(paths: &[P]) -> Result<Self, CorpusError> {
        let mut documents = Vec::new();
        for path in paths {
            let path = path.as_ref();
            let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
                path: path.display().to_string(),
                source,
            })?;
            documents.extend(Corpus::from_text(&text).documents);
        }
        Ok(Corpus { documents })
    }

    pub fn documents(&self) -> &[Vec<String>] {
        &self.documents
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn concat(&self, other: &Corpus) -> Corpus {
        let mut documents = self.documents.clone();
        documents.extend_from_slice(&other.documents);
        Corpus { documents }
    }

    /// Token frequencies over the whole corpus.
    pub fn frequencies(&self) -> BTreeMap<&str, usize> {
        let mut freq = BTreeMap::new();
        for tok in self.documents.iter().flatten() {
            *freq.entry(tok.as_str()).or_insert(0) += 1;
        }
        freq
    }
}

/// Ordered context words plus the co-occurrence window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSpec {
    words: Vec<String>,
    window: usize,
}

impl BasisSpec {
    pub fn new(words: Vec<String>, window: usize) -> Result<Self, CorpusError> {
        if words.is_empty() {
            return Err(CorpusError::EmptyBasis);
        }
        if window == 0 {
            return Err(CorpusError::ZeroWindow);
        }
        let mut seen = BTreeSet::new();
        for w in &words {
            if !seen.insert(w.as_str()) {
                return Err(CorpusError::DuplicateBasis(w.clone()));
            }
        }
        Ok(BasisSpec { words, window })
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn with_window(mut self, window: usize) -> Result<Self, CorpusError> {
        if window == 0 {
            return Err(CorpusError::ZeroWindow);
        }
        self.window = window;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// The `k` most frequent tokens outside `stop`, ties broken
/// lexicographically, with the default window.
pub fn build_basis(
    corpus: &Corpus,
    k: usize,
    stop: Option<&BTreeSet<String>>,
) -> Result<BasisSpec, CorpusError> {
    if k == 0 {
        return Err(CorpusError::EmptyBasis);
    }
    let mut ranked: Vec<(&str, usize)> = corpus
        .frequencies()
        .into_iter()
        .filter(|(tok, _)| stop.is_none_or(|s| !s.contains(*tok)))
        .collect();
    if ranked.len() < k {
        return Err(CorpusError::BasisShortfall {
            requested: k,
            available: ranked.len(),
        });
    }
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let words = ranked[..k].iter().map(|(t, _)| t.to_string()).collect();
    BasisSpec::new(words, DEFAULT_WINDOW)
}

#[derive(Debug, Default)]
struct Counts {
    occurrences: HashMap<String, u64>,
    pairs: HashMap<String, Vec<u64>>,
}

fn count_document(doc: &[String], basis: &BasisSpec, index: &HashMap<&str, usize>) -> Counts {
    let mut counts = Counts::default();
    let w = basis.window;
    for (p, tok) in doc.iter().enumerate() {
        *counts.occurrences.entry(tok.clone()).or_insert(0) += 1;
        let row = counts
            .pairs
            .entry(tok.clone())
            .or_insert_with(|| vec![0; basis.len()]);
        let lo = p.saturating_sub(w);
        let hi = (p + w).min(doc.len() - 1);
        for (q, ctx) in doc.iter().enumerate().take(hi + 1).skip(lo) {
            if q == p {
                continue;
            }
            if let Some(&m) = index.get(ctx.as_str()) {
                row[m] += 1;
            }
        }
    }
    counts
}

/// Relative-frequency meaning vectors for every token of a corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSpaceModel {
    basis: BasisSpec,
    occurrences: BTreeMap<String, u64>,
    vectors: BTreeMap<String, Tensor>,
}

impl VectorSpaceModel {
    pub fn build(corpus: &Corpus, basis: &BasisSpec) -> Self {
        Self::build_with(corpus, basis, Execution::default())
    }

    /// Counts each document independently (in parallel when requested) and
    /// merges the integer counts in document order.
    pub fn build_with(corpus: &Corpus, basis: &BasisSpec, exec: Execution) -> Self {
        let index: HashMap<&str, usize> = basis
            .words
            .iter()
            .enumerate()
            .map(|(m, w)| (w.as_str(), m))
            .collect();
        let per_doc = exec.map(corpus.documents(), |doc| count_document(doc, basis, &index));

        let mut occurrences: BTreeMap<String, u64> = BTreeMap::new();
        let mut pairs: BTreeMap<String, Vec<u64>> = BTreeMap::new();
        for counts in per_doc {
            for (tok, n) in counts.occurrences {
                *occurrences.entry(tok).or_insert(0) += n;
            }
            for (tok, row) in counts.pairs {
                let total = pairs.entry(tok).or_insert_with(|| vec![0; basis.len()]);
                total.iter_mut().zip(row).for_each(|(t, r)| *t += r);
            }
        }

        let vectors = pairs
            .into_iter()
            .map(|(tok, row)| {
                let n = occurrences[&tok] as f64;
                let v = Tensor::vector(row.into_iter().map(|c| c as f64 / n).collect());
                (tok, v)
            })
            .collect();
        VectorSpaceModel {
            basis: basis.clone(),
            occurrences,
            vectors,
        }
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    pub fn vocabulary_size(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, word: &str) -> Result<&Tensor, CorpusError> {
        self.vectors
            .get(word)
            .ok_or_else(|| CorpusError::UnknownWord(word.to_string()))
    }

    pub fn occurrences(&self, word: &str) -> Option<u64> {
        self.occurrences.get(word).copied()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.vectors.keys().map(String::as_str)
    }

    /// Cosine of two words' meaning vectors.
    pub fn similarity(&self, w1: &str, w2: &str) -> Result<f64, CorpusError> {
        Ok(cosine(self.vector(w1)?, self.vector(w2)?)?)
    }

    /// Writes `#basis` and the basis words on the first line, then one line
    /// per word (sorted): token, occurrence count, coordinates.
    pub fn to_text(&self) -> String {
        let mut out = String::from("#basis");
        for w in &self.basis.words {
            out.push(' ');
            out.push_str(w);
        }
        out.push('\n');
        for (tok, v) in &self.vectors {
            let _ = write!(out, "{} {}", tok, self.occurrences[tok]);
            for x in v.data() {
                let _ = write!(out, " {x:?}");
            }
            out.push('\n');
        }
        out
    }

    /// Reads the format written by [`VectorSpaceModel::to_text`]. The file
    /// does not record the window, so the default window is assumed.
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        let mut lines = text.lines().enumerate();
        let fmt_err = |line: usize, message: String| CorpusError::Format {
            line: line + 1,
            message,
        };
        let (_, header) = lines
            .next()
            .ok_or_else(|| fmt_err(0, "empty model file".into()))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("#basis") {
            return Err(fmt_err(0, "first line must start with `#basis`".into()));
        }
        let basis = BasisSpec::new(fields.map(str::to_string).collect(), DEFAULT_WINDOW)?;

        let mut occurrences = BTreeMap::new();
        let mut vectors = BTreeMap::new();
        for (n, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let tok = fields.next().expect("non-empty line").to_string();
            let count: u64 = fields
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| fmt_err(n, format!("missing occurrence count for `{tok}`")))?;
            let coords = fields
                .map(|x| x.parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| fmt_err(n, format!("bad coordinate for `{tok}`")))?;
            if coords.len() != basis.len() {
                return Err(fmt_err(
                    n,
                    format!(
                        "`{tok}` has {} coordinates, basis has {}",
                        coords.len(),
                        basis.len()
                    ),
                ));
            }
            occurrences.insert(tok.clone(), count);
            vectors.insert(tok, Tensor::vector(coords));
        }
        Ok(VectorSpaceModel {
            basis,
            occurrences,
            vectors,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }
}

/// Meaning vector of a single word.
pub fn meaning_vector(corpus: &Corpus, word: &str, basis: &BasisSpec) -> Result<Tensor, CorpusError> {
    let docs: Vec<Vec<String>> = corpus
        .documents()
        .iter()
        .filter(|d| d.iter().any(|t| t == word))
        .cloned()
        .collect();
    let model = VectorSpaceModel::build_with(&Corpus::new(docs), basis, Execution::Sequential);
    model.vector(word).cloned()
}
