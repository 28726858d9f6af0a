//! Binding words to types and tensors.
//!
//! A lexicon file has one entry per line with three TAB-separated fields:
//! the word, its type in `^l`/`^r` notation, and where its tensor comes from:
//!
//! ```text
//! # word	type	source
//! alice	n	vector
//! hates	n^r s n^l	tensor:hates.tns
//! dreams	n^r s	choi:dreams.mat
//! does	n^r s s^l n	logical:does
//! not	n^r s s^l n	logical:not:swap.mat
//! ```
//!
//! Relative paths are resolved against the lexicon file's directory.
#![allow(clippy::tabs_in_doc_comments)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::distributional::{CorpusError, VectorSpaceModel};
use crate::pregroup::{parse_type, BasicType, PregroupType, SimpleType};
use crate::semantics::{choi_embed, SemanticsError, SpaceAssignment, Tensor, TensorError, WordMeaning};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("lexicon line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("lexicon line {line}: duplicate entry for `{word}`")]
    Duplicate { line: usize, word: String },
    #[error("word `{word}`: expected tensor shape {expected:?}, found {found:?}")]
    ShapeMismatch {
        word: String,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("word `{word}`: cannot load {path}: {source}")]
    DanglingFile {
        word: String,
        path: String,
        #[source]
        source: TensorError,
    },
    #[error("word `{0}` is vector-sourced but no model was supplied")]
    MissingModel(String),
    #[error("word `{word}`: {source}")]
    Model {
        word: String,
        #[source]
        source: CorpusError,
    },
    #[error("word `{word}`: logical words need type `{expected}`, found `{found}`")]
    LogicalType {
        word: String,
        expected: String,
        found: String,
    },
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("word `{word}`: {source}")]
    Semantics {
        word: String,
        #[source]
        source: SemanticsError,
    },
}

/// Where an entry's tensor comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// The word's meaning vector in the supplied model.
    Vector,
    /// A tensor file.
    Tensor(PathBuf),
    /// A matrix file, embedded as a bipartite state.
    Choi(PathBuf),
    /// The wiring-only auxiliary `does`.
    LogicalDoes,
    /// Wiring plus a matrix (from the file) on the sentence wire.
    LogicalNot(PathBuf),
}

impl Source {
    fn parse(spec: &str, base_dir: &Path) -> Option<Source> {
        let path = |p: &str| (!p.is_empty()).then(|| base_dir.join(p));
        match spec {
            "vector" => Some(Source::Vector),
            "logical:does" => Some(Source::LogicalDoes),
            _ => {
                if let Some(p) = spec.strip_prefix("tensor:") {
                    path(p).map(Source::Tensor)
                } else if let Some(p) = spec.strip_prefix("choi:") {
                    path(p).map(Source::Choi)
                } else if let Some(p) = spec.strip_prefix("logical:not:") {
                    path(p).map(Source::LogicalNot)
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub word: String,
    pub ty: PregroupType,
    pub source: Source,
}

/// The type shared by the logical auxiliaries: `n^r s s^l n`.
pub fn logical_type() -> PregroupType {
    let n = SimpleType::plain(BasicType::noun());
    let s = SimpleType::plain(BasicType::sentence());
    vec![n.right_adjoint(), s.clone(), s.left_adjoint(), n].into()
}

fn wiring_tensor(sa: &SpaceAssignment, sentence_map: &Tensor) -> Result<Tensor, SemanticsError> {
    let dn = sa.dim(&BasicType::noun())?;
    let ds = sa.dim(&BasicType::sentence())?;
    if sentence_map.shape() != [ds, ds] {
        return Err(SemanticsError::ShapeMismatch(
            vec![ds, ds],
            sentence_map.shape().to_vec(),
        ));
    }
    Ok(Tensor::from_fn(vec![dn, ds, ds, dn], |ix| {
        let (i, a, b, j) = (ix[0], ix[1], ix[2], ix[3]);
        if i == j {
            sentence_map.get(&[a, b])
        } else {
            0.0
        }
    }))
}

/// `does` as pure wiring: `D[i,a,b,j] = δ_ij δ_ab` on type `n^r s s^l n`.
/// The subject flows on to the following verb and the verb's sentence wire
/// comes back out unchanged.
pub fn make_logical_does(sa: &SpaceAssignment) -> Result<WordMeaning, SemanticsError> {
    let ds = sa.dim(&BasicType::sentence())?;
    let tensor = wiring_tensor(sa, &Tensor::identity(ds))?;
    WordMeaning::new("does", logical_type(), tensor, sa)
}

/// `not` as wiring with `negation` on the sentence wire:
/// `N[i,a,b,j] = δ_ij · negation[a,b]`, so the sentence coming back from the
/// verb is multiplied by `negation`.
pub fn make_logical_not(sa: &SpaceAssignment, negation: &Tensor) -> Result<WordMeaning, SemanticsError> {
    if negation.rank() != 2 {
        return Err(SemanticsError::Rank {
            expected: 2,
            found: negation.rank(),
        });
    }
    let tensor = wiring_tensor(sa, negation)?;
    WordMeaning::new("not", logical_type(), tensor, sa)
}

/// Extra inputs needed to resolve a lexicon.
#[derive(Debug, Clone, Default)]
pub struct LexiconContext<'a> {
    /// Dimensions that take precedence over anything inferred from files.
    pub dims: SpaceAssignment,
    pub model: Option<&'a VectorSpaceModel>,
}

/// Validated word bindings; every entry's tensor is resolved at load time.
#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: BTreeMap<String, LexEntry>,
    bound: BTreeMap<String, WordMeaning>,
    space: SpaceAssignment,
}

impl Lexicon {
    pub fn load(path: impl AsRef<Path>, ctx: &LexiconContext<'_>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base_dir = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base_dir, ctx)
    }

    pub fn parse(text: &str, base_dir: &Path, ctx: &LexiconContext<'_>) -> Result<Self, LexiconError> {
        let entries = parse_entries(text, base_dir)?;
        let mut space = SpaceAssignment::new();

        // File-backed sources first: their shapes fill in missing dimensions.
        let mut raw: BTreeMap<String, Tensor> = BTreeMap::new();
        for entry in &entries {
            let word = &entry.word;
            let load = |p: &PathBuf| {
                Tensor::read(p).map_err(|source| LexiconError::DanglingFile {
                    word: word.clone(),
                    path: p.display().to_string(),
                    source,
                })
            };
            let tensor = match &entry.source {
                Source::Vector => {
                    let model = ctx.model.ok_or_else(|| LexiconError::MissingModel(word.clone()))?;
                    let v = model.vector(word).map_err(|source| LexiconError::Model {
                        word: word.clone(),
                        source,
                    })?;
                    infer_dims(&mut space, &entry.ty, v.shape());
                    v.clone()
                }
                Source::Tensor(p) => {
                    let t = load(p)?;
                    infer_dims(&mut space, &entry.ty, t.shape());
                    t
                }
                Source::Choi(p) => {
                    let f = load(p)?;
                    let t = choi_embed(&f).map_err(|source| LexiconError::Semantics {
                        word: word.clone(),
                        source,
                    })?;
                    infer_dims(&mut space, &entry.ty, t.shape());
                    t
                }
                Source::LogicalNot(p) => {
                    check_logical(entry)?;
                    let m = load(p)?;
                    if let [d, _] = m.shape() {
                        if space.get(&BasicType::sentence()).is_none() {
                            space.set(BasicType::sentence(), *d);
                        }
                    }
                    m
                }
                Source::LogicalDoes => {
                    check_logical(entry)?;
                    continue;
                }
            };
            raw.insert(word.clone(), tensor);
        }
        space.merge(&ctx.dims);

        let mut bound = BTreeMap::new();
        for entry in &entries {
            let word = entry.word.clone();
            let sem = |source| LexiconError::Semantics {
                word: word.clone(),
                source,
            };
            let tensor = match &entry.source {
                Source::LogicalDoes => make_logical_does(&space).map_err(sem)?.tensor,
                Source::LogicalNot(_) => make_logical_not(&space, &raw[&word]).map_err(sem)?.tensor,
                _ => raw.remove(&word).expect("resolved above"),
            };
            let meaning = WordMeaning::new(word.clone(), entry.ty.clone(), tensor, &space)
                .map_err(|e| match e {
                    SemanticsError::WordShape {
                        word,
                        expected,
                        found,
                    } => LexiconError::ShapeMismatch {
                        word,
                        expected,
                        found,
                    },
                    other => sem(other),
                })?;
            bound.insert(word, meaning);
        }

        Ok(Lexicon {
            entries: entries.into_iter().map(|e| (e.word.clone(), e)).collect(),
            bound,
            space,
        })
    }

    pub fn space(&self) -> &SpaceAssignment {
        &self.space
    }

    pub fn entry(&self, word: &str) -> Option<&LexEntry> {
        self.entries.get(word)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// The bound meaning of `word` (matched case-insensitively).
    pub fn bind(&self, word: &str) -> Result<WordMeaning, LexiconError> {
        self.bound
            .get(&word.to_lowercase())
            .cloned()
            .ok_or_else(|| LexiconError::UnknownWord(word.to_string()))
    }

    /// Binds every token; the first unknown token is reported.
    pub fn bind_all<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Vec<WordMeaning>, LexiconError> {
        tokens.iter().map(|t| self.bind(t.as_ref())).collect()
    }
}

fn check_logical(entry: &LexEntry) -> Result<(), LexiconError> {
    let expected = logical_type();
    if entry.ty != expected {
        return Err(LexiconError::LogicalType {
            word: entry.word.clone(),
            expected: expected.to_string(),
            found: entry.ty.to_string(),
        });
    }
    Ok(())
}

fn infer_dims(space: &mut SpaceAssignment, ty: &PregroupType, shape: &[usize]) {
    if ty.len() != shape.len() {
        return;
    }
    for (t, &d) in ty.simples().iter().zip(shape) {
        if space.get(&t.base).is_none() && d >= 1 {
            space.set(t.base.clone(), d);
        }
    }
}

fn parse_entries(text: &str, base_dir: &Path) -> Result<Vec<LexEntry>, LexiconError> {
    let mut entries: Vec<LexEntry> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| LexiconError::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        let [word, ty, source] = fields[..] else {
            return Err(parse_err(format!(
                "expected 3 TAB-separated fields, found {}",
                fields.len()
            )));
        };
        let word = word.trim().to_lowercase();
        if word.is_empty() {
            return Err(parse_err("empty word".into()));
        }
        let ty = parse_type(ty).map_err(|e| parse_err(e.to_string()))?;
        let source = Source::parse(source.trim(), base_dir)
            .ok_or_else(|| parse_err(format!("unknown source `{}`", source.trim())))?;
        if entries.iter().any(|e| e.word == word) {
            return Err(LexiconError::Duplicate { line: line_no, word });
        }
        entries.push(LexEntry { word, ty, source });
    }
    Ok(entries)
}
