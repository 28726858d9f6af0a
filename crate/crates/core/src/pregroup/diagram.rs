use std::fmt;

use thiserror::Error;

use super::types::{PregroupType, SimpleType};

/// A cup joining positions `left < right` of a type sequence.
pub type Link = (usize, usize);

/// Ways in which a candidate diagram can fail to witness a reduction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("diagram has length {diagram} but the sequence has {sequence} simple types")]
    LengthMismatch { diagram: usize, sequence: usize },
    #[error("link ({0}, {1}) is not an increasing pair inside the sequence")]
    BadLink(usize, usize),
    #[error("position {0} is used more than once")]
    Reused(usize),
    #[error("links ({0}, {1}) and ({2}, {3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("link ({0}, {1}) encloses the through wire at {2}")]
    EnclosesWire(usize, usize, usize),
    #[error("link ({0}, {1}) joins `{2}` and `{3}`, which do not contract")]
    NoContraction(usize, usize, String, String),
    #[error("through wires are not exactly the unlinked positions in order")]
    BadThrough,
    #[error("surviving wires read `{found}`, expected `{expected}`")]
    TargetMismatch { expected: String, found: String },
}

/// The planar wiring that witnesses a contraction-only type reduction: a set
/// of nested cups plus the wires that survive to the output type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReductionDiagram {
    length: usize,
    links: Vec<Link>,
    through: Vec<usize>,
}

impl ReductionDiagram {
    /// Builds a diagram from its links; the through wires are the unlinked
    /// positions. Links are stored sorted. Structural checks are left to
    /// [`ReductionDiagram::validate`].
    pub fn new(length: usize, mut links: Vec<Link>) -> Self {
        links.sort_unstable();
        let mut used = vec![false; length];
        for &(i, j) in &links {
            if i < length {
                used[i] = true;
            }
            if j < length {
                used[j] = true;
            }
        }
        let through = (0..length).filter(|&p| !used[p]).collect();
        ReductionDiagram {
            length,
            links,
            through,
        }
    }

    /// The do-nothing diagram on `length` wires.
    pub fn identity(length: usize) -> Self {
        ReductionDiagram::new(length, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    /// Links sorted by left endpoint.
    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn through(&self) -> &[usize] {
        &self.through
    }

    /// Checks every structural invariant against the sequence the diagram is
    /// meant to reduce and the type it is meant to reduce to.
    pub fn validate(&self, seq: &PregroupType, target: &PregroupType) -> Result<(), DiagramError> {
        let types = seq.simples();
        if types.len() != self.length {
            return Err(DiagramError::LengthMismatch {
                diagram: self.length,
                sequence: types.len(),
            });
        }
        let mut used = vec![false; self.length];
        for &(i, j) in &self.links {
            if !(i < j && j < self.length) {
                return Err(DiagramError::BadLink(i, j));
            }
            for p in [i, j] {
                if std::mem::replace(&mut used[p], true) {
                    return Err(DiagramError::Reused(p));
                }
            }
        }
        let unlinked: Vec<usize> = (0..self.length).filter(|&p| !used[p]).collect();
        if unlinked != self.through {
            return Err(DiagramError::BadThrough);
        }
        for (a, &(i, j)) in self.links.iter().enumerate() {
            for &(k, l) in &self.links[a + 1..] {
                if (i < k && k < j && j < l) || (k < i && i < l && l < j) {
                    return Err(DiagramError::Crossing(i, j, k, l));
                }
            }
            if let Some(&w) = self.through.iter().find(|&&w| i < w && w < j) {
                return Err(DiagramError::EnclosesWire(i, j, w));
            }
            if !types[i].contracts_with(&types[j]) {
                return Err(DiagramError::NoContraction(
                    i,
                    j,
                    types[i].to_string(),
                    types[j].to_string(),
                ));
            }
        }
        let survivors: PregroupType = self.through.iter().map(|&p| types[p].clone()).collect();
        if &survivors != target {
            return Err(DiagramError::TargetMismatch {
                expected: target.to_string(),
                found: survivors.to_string(),
            });
        }
        Ok(())
    }

    /// Renders the link list, e.g. `links: (0,1) (3,4)  through: [2]`.
    pub fn link_list(&self) -> String {
        let links: Vec<String> = self
            .links
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        let through: Vec<String> = self.through.iter().map(usize::to_string).collect();
        format!(
            "links: {}  through: [{}]",
            if links.is_empty() {
                "-".to_string()
            } else {
                links.join(" ")
            },
            through.join(",")
        )
    }

    /// Draws the type line followed by the cups as nested `\__/` arcs.
    ///
    /// Panics if `types` does not have one entry per position.
    pub fn render_ascii(&self, types: &[SimpleType]) -> String {
        assert_eq!(types.len(), self.length, "one type per diagram position");
        let labels: Vec<String> = types.iter().map(ToString::to_string).collect();
        let mut columns = Vec::with_capacity(labels.len());
        let mut header = String::new();
        for label in &labels {
            if !header.is_empty() {
                header.push(' ');
            }
            columns.push(header.chars().count());
            header.push_str(label);
        }

        let heights = self.heights();
        let rows = heights.iter().copied().max().unwrap_or(0);
        let width = header.chars().count();
        let mut grid = vec![vec![' '; width]; rows];
        for (&(i, j), &h) in self.links.iter().zip(&heights) {
            let (left, right) = (columns[i], columns[j]);
            for row in grid.iter_mut().take(h - 1) {
                row[left] = '|';
                row[right] = '|';
            }
            let row = &mut grid[h - 1];
            row[left] = '\\';
            row[left + 1..right].fill('_');
            row[right] = '/';
        }

        let mut out = header;
        for row in grid {
            out.push('\n');
            out.push_str(row.into_iter().collect::<String>().trim_end());
        }
        out
    }

    /// Arc height of each link: one more than the tallest link nested in it.
    fn heights(&self) -> Vec<usize> {
        let mut heights = vec![0; self.links.len()];
        // Inner links are shorter, so process by span.
        let mut order: Vec<usize> = (0..self.links.len()).collect();
        order.sort_by_key(|&a| self.links[a].1 - self.links[a].0);
        for &a in &order {
            let (i, j) = self.links[a];
            let inner = self
                .links
                .iter()
                .zip(&heights)
                .filter(|(&(k, l), _)| i < k && l < j)
                .map(|(_, &h)| h)
                .max()
                .unwrap_or(0);
            heights[a] = inner + 1;
        }
        heights
    }
}

impl fmt::Display for ReductionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.link_list())
    }
}
