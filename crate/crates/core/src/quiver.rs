//! The quiver of a configuration: polygons as vertices, `L`-blocks as arrows.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{AngleId, Configuration};
use crate::path::{ArrowIx, Path, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    /// Index of the `L`-block in the full quiver.
    pub index: ArrowIx,
    pub id: AngleId,
    pub source: Vertex,
    pub target: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: Vec<AngleId>,
    /// Sorted by `index`.
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn from_config(c: &Configuration) -> Self {
        let vertices = c.polygons().iter().map(|p| c.name(p[0]).clone()).collect();
        let arrows = c
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, b)| Arrow {
                index: i,
                id: c.name(b[0]).clone(),
                source: c.polygon_of(b[0]),
                target: c.polygon_of(c.succ(b[0])),
            })
            .collect();
        Quiver { vertices, arrows }
    }

    /// The subquiver keeping only the listed arrows.
    pub fn restrict(&self, keep: &[ArrowIx]) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.iter().filter(|a| keep.contains(&a.index)).cloned().collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow(&self, index: ArrowIx) -> Option<&Arrow> {
        self.arrows
            .binary_search_by_key(&index, |a| a.index)
            .ok()
            .map(|i| &self.arrows[i])
    }

    pub fn out_arrows(&self, v: Vertex) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.source == v)
    }

    pub fn in_arrows(&self, v: Vertex) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.target == v)
    }

    pub fn vertex_index(&self, id: &str) -> Option<Vertex> {
        self.vertices.iter().position(|v| v.as_str() == id)
    }

    pub fn arrow_by_id(&self, id: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id.as_str() == id)
    }

    pub fn arrow_path(&self, index: ArrowIx) -> Path {
        let a = self.arrow(index).expect("arrow in quiver");
        Path::from_parts(a.source, a.target, vec![index])
    }

    /// The path through the given arrows in traversal order, if they compose.
    pub fn path(&self, arrows: &[ArrowIx]) -> Option<Path> {
        let first = self.arrow(*arrows.first()?)?;
        let mut at = first.source;
        for &ix in arrows {
            let a = self.arrow(ix)?;
            if a.source != at {
                return None;
            }
            at = a.target;
        }
        Some(Path::from_parts(first.source, at, arrows.to_vec()))
    }

    /// Parses the right-to-left rendering produced by [`Quiver::label`],
    /// e.g. `L(2)L(1)` or `1_3` for the trivial path at vertex `3`.
    pub fn parse_label(&self, text: &str) -> Option<Path> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("1_") {
            return self.vertex_index(v).map(Path::trivial);
        }
        let mut ids = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let inner = rest.strip_prefix("L(")?;
            let close = inner.find(')')?;
            ids.push(self.arrow_by_id(&inner[..close])?.index);
            rest = &inner[close + 1..];
        }
        ids.reverse();
        self.path(&ids)
    }

    /// Right-to-left rendering: `L(a_n)…L(a_1)`, or `1_x` for a trivial path.
    pub fn label(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("1_{}", self.vertices[p.source()]);
        }
        let mut out = String::new();
        for &a in p.arrows().iter().rev() {
            let _ = write!(out, "L({})", self.arrow(a).map_or("?", |a| a.id.as_str()));
        }
        out
    }

    /// Graphviz rendering with vertices and arrows in canonical order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertices[a.source], self.vertices[a.target], a.id
            );
        }
        out.push_str("}\n");
        out
    }

    /// All paths of length at most `max_len`.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = (0..self.num_vertices()).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.out_arrows(p.target()) {
                    next.push(p.then(&self.arrow_path(a.index)).expect("composable"));
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }
}
