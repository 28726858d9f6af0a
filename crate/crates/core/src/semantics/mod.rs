//! Word meanings as tensors and sentence meanings as contractions.
//!
//! Every basic type is given a real vector space with a fixed orthonormal
//! basis, and adjoints live in the same space. A cup in a reduction diagram
//! then acts as the functional `Σ_i ⟨ii|` on the two legs it joins and every
//! through wire as the identity.

mod evaluate;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::pregroup::{BasicType, DiagramError, PregroupType};

pub use evaluate::{meaning, meaning_batch, meaning_naive, meaning_with, NaiveConfig};
pub use tensor::{Tensor, TensorError};

/// Default cap on the number of entries the naive evaluator may materialize.
pub const DEFAULT_NAIVE_CAP: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum SemanticsError {
    #[error("no dimension configured for basic type `{0}`")]
    MissingBase(String),
    #[error("bad dimension spec `{0}`: expected base:dim with dim >= 1")]
    BadDims(String),
    #[error("word `{word}` has tensor shape {found:?}, expected {expected:?} for its type")]
    WordShape {
        word: String,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("words supply {words} simple types but the diagram spans {diagram}")]
    SequenceLength { words: usize, diagram: usize },
    #[error("diagram does not fit the words' types: {0}")]
    Diagram(#[from] DiagramError),
    #[error("tensor product would have {entries} entries, over the cap of {cap}")]
    SizeCap { entries: usize, cap: usize },
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("expected a rank-{expected} tensor, got rank {found}")]
    Rank { expected: usize, found: usize },
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Dimension of the vector space attached to each basic type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpaceAssignment {
    dims: BTreeMap<BasicType, usize>,
}

impl SpaceAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if `dim` is zero.
    pub fn with(mut self, base: &str, dim: usize) -> Self {
        self.set(BasicType::new(base), dim);
        self
    }

    pub fn set(&mut self, base: BasicType, dim: usize) {
        assert!(dim >= 1, "dimensions must be positive");
        self.dims.insert(base, dim);
    }

    pub fn get(&self, base: &BasicType) -> Option<usize> {
        self.dims.get(base).copied()
    }

    pub fn dim(&self, base: &BasicType) -> Result<usize, SemanticsError> {
        self.get(base)
            .ok_or_else(|| SemanticsError::MissingBase(base.name().to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasicType, usize)> {
        self.dims.iter().map(|(b, &d)| (b, d))
    }

    /// Overwrites entries with those of `other`.
    pub fn merge(&mut self, other: &SpaceAssignment) {
        for (b, d) in other.iter() {
            self.dims.insert(b.clone(), d);
        }
    }

    /// Tensor shape of a type: one axis per simple type, sized by its base.
    pub fn shape_of(&self, ty: &PregroupType) -> Result<Vec<usize>, SemanticsError> {
        ty.simples().iter().map(|t| self.dim(&t.base)).collect()
    }
}

/// Free-function form of [`SpaceAssignment::shape_of`].
pub fn shape_of(ty: &PregroupType, sa: &SpaceAssignment) -> Result<Vec<usize>, SemanticsError> {
    sa.shape_of(ty)
}

impl FromStr for SpaceAssignment {
    type Err = SemanticsError;

    /// Parses `n:2,s:3`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut sa = SpaceAssignment::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || SemanticsError::BadDims(item.to_string());
            let (base, dim) = item.split_once(':').ok_or_else(bad)?;
            let base = base.trim();
            let dim: usize = dim.trim().parse().map_err(|_| bad())?;
            if base.is_empty() || dim == 0 || base.contains(['^', '.']) {
                return Err(bad());
            }
            sa.set(BasicType::new(base), dim);
        }
        Ok(sa)
    }
}

impl fmt::Display for SpaceAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(b, d)| format!("{b}:{d}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// A word with its grammatical type and a tensor shaped to match it.
#[derive(Debug, Clone, PartialEq)]
pub struct WordMeaning {
    pub word: String,
    pub ty: PregroupType,
    pub tensor: Tensor,
}

impl WordMeaning {
    pub fn new(
        word: impl Into<String>,
        ty: PregroupType,
        tensor: Tensor,
        sa: &SpaceAssignment,
    ) -> Result<Self, SemanticsError> {
        let word = word.into();
        let expected = sa.shape_of(&ty)?;
        if tensor.shape() != expected.as_slice() {
            return Err(SemanticsError::WordShape {
                word,
                expected,
                found: tensor.shape().to_vec(),
            });
        }
        Ok(WordMeaning { word, ty, tensor })
    }
}

/// `Σ_i |ii⟩` on a `d`-dimensional space, as a `[d, d]` tensor.
pub fn cup(d: usize) -> Tensor {
    assert!(d >= 1, "dimension must be positive");
    Tensor::identity(d)
}

/// Composes `(cap ⊗ Id) ∘ (Id ⊗ cup)` on a `d`-dimensional space by explicit
/// index summation and returns the resulting `[d, d]` matrix (output index
/// first). The snake identity says this is the identity matrix.
pub fn snake_check(d: usize) -> Tensor {
    let cap = cup(d);
    let cup = cup(d);
    // (Id ⊗ cup) sends |a⟩ to Σ_{y,z} |a⟩|y⟩|z⟩ cup[y,z]; the cap then pairs
    // legs (x = a, y) and leaves z.
    Tensor::from_fn(vec![d, d], |ix| {
        let (z, a) = (ix[0], ix[1]);
        let mut sum = 0.0;
        for x in 0..d {
            let id = if x == a { 1.0 } else { 0.0 };
            for y in 0..d {
                sum += cap.get(&[x, y]) * id * cup.get(&[y, z]);
            }
        }
        sum
    })
}

/// Bipartite state `(Id ⊗ f)(Σ_i |ii⟩)` for a matrix `f` of shape
/// `[d_in, d_out]`. Used as an intransitive verb, it sends a subject `v` to
/// `fᵀ v`.
pub fn choi_embed(f: &Tensor) -> Result<Tensor, SemanticsError> {
    if f.rank() != 2 {
        return Err(SemanticsError::Rank {
            expected: 2,
            found: f.rank(),
        });
    }
    let (d_in, d_out) = (f.shape()[0], f.shape()[1]);
    let c = cup(d_in);
    Ok(Tensor::from_fn(vec![d_in, d_out], |ix| {
        (0..d_in).map(|j| c.get(&[ix[0], j]) * f.get(&[j, ix[1]])).sum()
    }))
}

/// Whether `t` is a product state across the cut after axis `split_after`:
/// reshaped to a matrix across that cut, its second singular value is at
/// most `tol` times the first. The zero tensor counts as separable.
///
/// Panics unless `1 <= split_after < rank`.
pub fn is_separable(t: &Tensor, split_after: usize, tol: f64) -> bool {
    assert!(
        split_after >= 1 && split_after < t.rank(),
        "split must fall between two axes"
    );
    let rows: usize = t.shape()[..split_after].iter().product();
    let cols: usize = t.shape()[split_after..].iter().product();
    if rows.min(cols) <= 1 {
        return true;
    }
    let m = nalgebra::DMatrix::from_row_slice(rows, cols, t.data());
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let largest = sv[0];
    largest == 0.0 || sv[1] <= tol * largest
}

/// Cosine of the angle between two equally shaped tensors.
pub fn cosine(u: &Tensor, v: &Tensor) -> Result<f64, SemanticsError> {
    if u.shape() != v.shape() {
        return Err(SemanticsError::ShapeMismatch(
            u.shape().to_vec(),
            v.shape().to_vec(),
        ));
    }
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 || nv == 0.0 {
        return Err(SemanticsError::Degenerate("cosine of a zero vector"));
    }
    let dot: f64 = u.data().iter().zip(v.data()).map(|(a, b)| a * b).sum();
    Ok(dot / (nu * nv))
}
