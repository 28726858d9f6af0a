use std::path::{Path, PathBuf};

use serde_json::json;
use thiserror::Error;
use wordflow::distributional::{build_basis, tokenize, Corpus, CorpusError, VectorSpaceModel};
use wordflow::lexicon::{Lexicon, LexiconContext, LexiconError};
use wordflow::pregroup::{reduce, PregroupType, ReductionDiagram};
use wordflow::semantics::{cosine, meaning as evaluate, snake_check, SemanticsError, SpaceAssignment, Tensor, WordMeaning};

use crate::format::{diagram_json, json_vector, sig, text_vector, with_raw_vector};
use crate::Common;

/// Process exit status for completed commands. Errors exit with 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success = 0,
    Rejected = 1,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("degenerate meaning: `{0}` has a zero sentence vector")]
    DegenerateMeaning(String),
}

type CmdResult = Result<Outcome, CliError>;

pub fn space_build(common: &Common, corpus: &[PathBuf], k: usize, window: usize, out: &Path) -> CmdResult {
    let corpus = Corpus::read_files(corpus)?;
    if corpus.is_empty() {
        return Err(CliError::Usage("corpus is empty".into()));
    }
    let basis = build_basis(&corpus, k, None)?.with_window(window)?;
    let model = VectorSpaceModel::build(&corpus, &basis);
    std::fs::write(out, model.to_text()).map_err(|source| CliError::Write {
        path: out.display().to_string(),
        source,
    })?;
    if common.json {
        println!(
            "{}",
            json!({
                "basis": basis.words(),
                "basis_size": basis.len(),
                "vocabulary_size": model.vocabulary_size(),
                "out": out.display().to_string(),
            })
        );
    } else {
        println!("basis size: {}", basis.len());
        println!("vocabulary size: {}", model.vocabulary_size());
    }
    Ok(Outcome::Success)
}

fn load_lexicon(common: &Common) -> Result<Lexicon, CliError> {
    let path = common
        .lexicon
        .as_ref()
        .ok_or_else(|| CliError::Usage("--lexicon is required".into()))?;
    let dims = match &common.dims {
        Some(spec) => spec.parse::<SpaceAssignment>()?,
        None => SpaceAssignment::new(),
    };
    let model = common.model.as_ref().map(VectorSpaceModel::read).transpose()?;
    let ctx = LexiconContext {
        dims,
        model: model.as_ref(),
    };
    Ok(Lexicon::load(path, &ctx)?)
}

struct Parsed {
    tokens: Vec<String>,
    words: Vec<WordMeaning>,
    sequence: PregroupType,
    diagram: Option<ReductionDiagram>,
}

fn parse_sentence(lexicon: &Lexicon, sentence: &str) -> Result<Parsed, CliError> {
    let tokens = tokenize(sentence);
    if tokens.is_empty() {
        return Err(CliError::Usage("empty sentence".into()));
    }
    let words = lexicon.bind_all(&tokens)?;
    let sequence = words
        .iter()
        .fold(PregroupType::unit(), |acc, w| acc.concat(&w.ty));
    let diagram = reduce(&sequence, &PregroupType::sentence());
    Ok(Parsed {
        tokens,
        words,
        sequence,
        diagram,
    })
}

fn word_types(p: &Parsed) -> Vec<String> {
    p.words.iter().map(|w| w.ty.to_string()).collect()
}

fn reject(common: &Common, p: &Parsed) -> CmdResult {
    if common.json {
        println!(
            "{}",
            json!({ "words": p.tokens, "types": word_types(p), "grammatical": false })
        );
    } else {
        println!("words: {}", p.tokens.join(" "));
        println!("types: {}", word_types(p).join(" | "));
        println!("no reduction to s");
    }
    Ok(Outcome::Rejected)
}

pub fn parse(common: &Common, sentence: &str) -> CmdResult {
    let lexicon = load_lexicon(common)?;
    let p = parse_sentence(&lexicon, sentence)?;
    let Some(diagram) = &p.diagram else {
        return reject(common, &p);
    };
    if common.json {
        println!(
            "{}",
            json!({
                "words": p.tokens,
                "types": word_types(&p),
                "grammatical": true,
                "diagram": diagram_json(diagram),
            })
        );
    } else {
        println!("words: {}", p.tokens.join(" "));
        println!("types: {}", word_types(&p).join(" | "));
        println!("{}", diagram.link_list());
        println!("{}", diagram.render_ascii(p.sequence.simples()));
    }
    Ok(Outcome::Success)
}

fn sentence_meaning(lexicon: &Lexicon, sentence: &str) -> Result<(Parsed, Option<Tensor>), CliError> {
    let p = parse_sentence(lexicon, sentence)?;
    let vector = match &p.diagram {
        Some(d) => Some(evaluate(&p.words, d, lexicon.space())?),
        None => None,
    };
    Ok((p, vector))
}

pub fn meaning(common: &Common, sentence: &str) -> CmdResult {
    let lexicon = load_lexicon(common)?;
    let (p, vector) = sentence_meaning(&lexicon, sentence)?;
    let (Some(diagram), Some(vector)) = (&p.diagram, vector) else {
        return reject(common, &p);
    };
    if common.json {
        let object = json!({ "words": p.tokens, "diagram": diagram_json(diagram) });
        println!("{}", with_raw_vector(object, &json_vector(vector.data())));
    } else {
        println!("words: {}", p.tokens.join(" "));
        println!("{}", diagram.link_list());
        println!("vector: {}", text_vector(vector.data()));
    }
    Ok(Outcome::Success)
}

pub fn compare(common: &Common, first: &str, second: &str) -> CmdResult {
    let lexicon = load_lexicon(common)?;
    let (p1, v1) = sentence_meaning(&lexicon, first)?;
    let (p2, v2) = sentence_meaning(&lexicon, second)?;
    let (v1, v2) = match (v1, v2) {
        (Some(a), Some(b)) => (a, b),
        (None, _) => return reject(common, &p1),
        (_, None) => return reject(common, &p2),
    };
    for (v, s) in [(&v1, first), (&v2, second)] {
        if v.norm() == 0.0 {
            return Err(CliError::DegenerateMeaning(s.to_string()));
        }
    }
    let c = cosine(&v1, &v2)?;
    if common.json {
        println!(
            "{}",
            json!({ "first": p1.tokens, "second": p2.tokens, "cosine": c })
        );
    } else {
        println!("cosine: {}", sig(c, 6));
    }
    Ok(Outcome::Success)
}

pub const SNAKE_TOLERANCE: f64 = 1e-12;

pub fn demo_snake(common: &Common, dim: usize) -> CmdResult {
    if !(1..=64).contains(&dim) {
        return Err(CliError::Usage(format!("dimension must be in 1..=64, got {dim}")));
    }
    let deviation = snake_check(dim).max_abs_diff(&Tensor::identity(dim));
    let pass = deviation < SNAKE_TOLERANCE;
    if common.json {
        println!(
            "{}",
            json!({ "dim": dim, "max_deviation": deviation, "pass": pass })
        );
    } else {
        println!("dimension: {dim}");
        println!("max deviation: {deviation:e}");
        println!("{}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { Outcome::Success } else { Outcome::Rejected })
}
