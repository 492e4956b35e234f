use std::cmp::Ordering;

use serde::Serialize;

/// Index of a vertex (polygon) of the quiver.
pub type Vertex = usize;
/// Index of an arrow (`L`-block) of the quiver.
pub type ArrowIx = usize;

/// A path of the quiver. Arrows are stored in traversal order; the usual
/// rendering writes them right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Path {
    source: Vertex,
    target: Vertex,
    arrows: Vec<ArrowIx>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    /// Caller guarantees the arrows compose.
    pub fn from_parts(source: Vertex, target: Vertex, arrows: Vec<ArrowIx>) -> Self {
        Path { source, target, arrows }
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowIx] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`, if the endpoints match.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path { source: self.source, target: next.target, arrows })
    }

    /// The factor of traversal positions `start..end`, given the vertex sequence.
    pub fn factor(&self, start: usize, end: usize, vertices: &[Vertex]) -> Path {
        Path {
            source: vertices[start],
            target: vertices[end],
            arrows: self.arrows[start..end].to_vec(),
        }
    }

    pub fn contains_factor(&self, other: &Path) -> bool {
        if other.arrows.is_empty() {
            return false;
        }
        self.arrows.windows(other.arrows.len()).any(|w| w == other.arrows.as_slice())
    }
}

impl Ord for Path {
    /// Shortlex on the arrow word, then by endpoints for trivial paths.
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
