use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::exec::Execution;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("shape {shape:?} needs {expected} values, found {found}")]
    DataLength {
        shape: Vec<usize>,
        expected: usize,
        found: usize,
    },
    #[error("tensor file line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("cannot read tensor file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Dense row-major tensor of `f64`. An empty shape is a scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self, TensorError> {
        let expected: usize = shape.iter().product();
        if expected != data.len() {
            return Err(TensorError::DataLength {
                shape,
                expected,
                found: data.len(),
            });
        }
        Ok(Tensor { shape, data })
    }

    pub fn scalar(value: f64) -> Self {
        Tensor {
            shape: Vec::new(),
            data: vec![value],
        }
    }

    pub fn vector(data: Vec<f64>) -> Self {
        Tensor {
            shape: vec![data.len()],
            data,
        }
    }

    /// Builds a rank-2 tensor from rows; panics on ragged input.
    pub fn matrix(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Tensor {
            shape: vec![rows.len(), cols],
            data: rows.concat(),
        }
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let len = shape.iter().product();
        Tensor {
            shape,
            data: vec![0.0; len],
        }
    }

    /// Fills a tensor by calling `f` with each multi-index in row-major order.
    pub fn from_fn(shape: Vec<usize>, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let len: usize = shape.iter().product();
        let mut data = Vec::with_capacity(len);
        let mut index = vec![0; shape.len()];
        for _ in 0..len {
            data.push(f(&index));
            increment(&mut index, &shape);
        }
        Tensor { shape, data }
    }

    pub fn identity(d: usize) -> Self {
        Tensor::from_fn(vec![d, d], |ix| if ix[0] == ix[1] { 1.0 } else { 0.0 })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.shape)
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        assert_eq!(index.len(), self.rank(), "index rank");
        let offset: usize = index
            .iter()
            .zip(&self.shape)
            .zip(self.strides())
            .map(|((&i, &d), s)| {
                assert!(i < d, "index {i} out of bounds for axis of size {d}");
                i * s
            })
            .sum();
        self.data[offset]
    }

    pub fn scale(&self, factor: f64) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// Elementwise sum; panics on shape mismatch.
    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.shape, other.shape, "shape mismatch in add");
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest absolute entrywise difference; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        if self.shape != other.shape {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `‖a − b‖∞ ≤ tol · max(‖a‖∞, ‖b‖∞)`; shapes must agree.
    pub fn approx_eq_rel(&self, other: &Tensor, tol: f64) -> bool {
        let scale = self.norm_inf().max(other.norm_inf());
        self.max_abs_diff(other) <= tol * scale
    }

    /// Tensor (Kronecker) product; the result's axes are `self`'s followed by
    /// `other`'s.
    pub fn kron(&self, other: &Tensor) -> Tensor {
        self.kron_with(other, Execution::Sequential)
    }

    pub fn kron_with(&self, other: &Tensor, exec: Execution) -> Tensor {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        let inner = other.data.len();
        let mut data = vec![0.0; self.data.len() * inner];
        if inner > 0 {
            exec.fill_chunks(&mut data, inner, |offset, block| {
                let a = self.data[offset / inner];
                for (out, b) in block.iter_mut().zip(&other.data) {
                    *out = a * b;
                }
            });
        }
        Tensor { shape, data }
    }

    /// Reorders axes so that axis `k` of the result is axis `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.rank(), "permutation rank");
        if perm.iter().enumerate().all(|(k, &p)| k == p) {
            return self.clone();
        }
        let src_strides = self.strides();
        let shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let gather: Vec<usize> = perm.iter().map(|&p| src_strides[p]).collect();
        let mut data = Vec::with_capacity(self.data.len());
        let mut index = vec![0; shape.len()];
        for _ in 0..self.data.len() {
            let offset: usize = index.iter().zip(&gather).map(|(i, s)| i * s).sum();
            data.push(self.data[offset]);
            increment(&mut index, &shape);
        }
        Tensor { shape, data }
    }

    /// Sums over the diagonal of axes `a` and `b` (which must have equal
    /// size), removing both. This applies the cap `Σ_i ⟨ii|` to those legs.
    pub fn trace(&self, a: usize, b: usize) -> Tensor {
        assert!(a != b && a < self.rank() && b < self.rank(), "trace axes");
        assert_eq!(self.shape[a], self.shape[b], "traced axes differ in size");
        let (a, b) = (a.min(b), a.max(b));
        let strides = self.strides();
        let keep: Vec<usize> = (0..self.rank()).filter(|&k| k != a && k != b).collect();
        let shape: Vec<usize> = keep.iter().map(|&k| self.shape[k]).collect();
        let gather: Vec<usize> = keep.iter().map(|&k| strides[k]).collect();
        let diag = strides[a] + strides[b];
        let len: usize = shape.iter().product();
        let mut data = Vec::with_capacity(len);
        let mut index = vec![0; shape.len()];
        for _ in 0..len {
            let base: usize = index.iter().zip(&gather).map(|(i, s)| i * s).sum();
            let sum = (0..self.shape[a]).map(|i| self.data[base + i * diag]).sum();
            data.push(sum);
            increment(&mut index, &shape);
        }
        Tensor { shape, data }
    }

    /// Contracts `self_axes[k]` of `self` against `other_axes[k]` of `other`
    /// for every `k`. Remaining axes of `self` come first, then those of
    /// `other`, each in their original order.
    pub fn contract(
        &self,
        self_axes: &[usize],
        other: &Tensor,
        other_axes: &[usize],
        exec: Execution,
    ) -> Tensor {
        assert_eq!(self_axes.len(), other_axes.len(), "paired axis count");
        for (&a, &b) in self_axes.iter().zip(other_axes) {
            assert_eq!(self.shape[a], other.shape[b], "contracted axes differ in size");
        }
        let free_a: Vec<usize> = (0..self.rank()).filter(|k| !self_axes.contains(k)).collect();
        let free_b: Vec<usize> = (0..other.rank()).filter(|k| !other_axes.contains(k)).collect();

        let perm_a: Vec<usize> = free_a.iter().chain(self_axes).copied().collect();
        let perm_b: Vec<usize> = other_axes.iter().chain(&free_b).copied().collect();
        let a = self.permute(&perm_a);
        let b = other.permute(&perm_b);

        let rows: usize = free_a.iter().map(|&k| self.shape[k]).product();
        let inner: usize = self_axes.iter().map(|&k| self.shape[k]).product();
        let cols: usize = free_b.iter().map(|&k| other.shape[k]).product();

        let mut data = vec![0.0; rows * cols];
        if cols > 0 {
            exec.fill_chunks(&mut data, cols, |offset, out_row| {
                let r = offset / cols;
                let a_row = &a.data[r * inner..(r + 1) * inner];
                for (k, &x) in a_row.iter().enumerate() {
                    let b_row = &b.data[k * cols..(k + 1) * cols];
                    for (o, &y) in out_row.iter_mut().zip(b_row) {
                        *o += x * y;
                    }
                }
            });
        }

        let shape = free_a
            .iter()
            .map(|&k| self.shape[k])
            .chain(free_b.iter().map(|&k| other.shape[k]))
            .collect();
        Tensor { shape, data }
    }

    /// Parses the plain-text tensor format: the first non-comment line holds
    /// the dimensions (empty for a scalar), every later line holds values in
    /// row-major order. Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Tensor, TensorError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.starts_with('#'));
        let (dims_line, dims) = lines.next().ok_or(TensorError::Format {
            line: 1,
            message: "missing dimension line".into(),
        })?;
        let shape = dims
            .split_whitespace()
            .map(|tok| match tok.parse::<usize>() {
                Ok(d) if d > 0 => Ok(d),
                _ => Err(TensorError::Format {
                    line: dims_line + 1,
                    message: format!("bad dimension `{tok}`"),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut data = Vec::new();
        for (n, line) in lines {
            for tok in line.split_whitespace() {
                let value = tok.parse::<f64>().map_err(|_| TensorError::Format {
                    line: n + 1,
                    message: format!("bad value `{tok}`"),
                })?;
                data.push(value);
            }
        }
        Tensor::new(shape, data)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Tensor, TensorError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| TensorError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Tensor::parse(&text)
    }

    /// Serializes in the format read by [`Tensor::parse`], one innermost row
    /// per line. Values use the shortest decimal form that reads back exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let dims: Vec<String> = self.shape.iter().map(usize::to_string).collect();
        out.push_str(&dims.join(" "));
        out.push('\n');
        let row = self.shape.last().copied().unwrap_or(1).max(1);
        for chunk in self.data.chunks(row) {
            let vals: Vec<String> = chunk.iter().map(|v| format!("{v:?}")).collect();
            let _ = writeln!(out, "{}", vals.join(" "));
        }
        out
    }
}

pub(crate) fn strides(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * shape[k + 1];
    }
    strides
}

/// Row-major odometer step; wraps to all zeros after the last index.
pub(crate) fn increment(index: &mut [usize], shape: &[usize]) {
    for k in (0..index.len()).rev() {
        index[k] += 1;
        if index[k] < shape[k] {
            return;
        }
        index[k] = 0;
    }
}
