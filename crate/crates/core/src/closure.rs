//! Congruence closure on a finite universe of paths with an absorbing zero.
//!
//! Paths outside the universe are resolved by a callback to either zero or
//! "unknown"; unknown images never produce merges, so a truncated universe
//! gives sound (possibly incomplete) answers.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use crate::path::{ArrowIx, Path, Vertex};

/// How a path outside the universe behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outside {
    Zero,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    At(usize),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    Left,
    Right,
}

pub struct Congruence {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    uf: UnionFind<usize>,
}

impl Congruence {
    /// Node `paths.len()` is the zero class.
    pub fn new(paths: Vec<Path>) -> Self {
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let uf = UnionFind::new(paths.len() + 1);
        Congruence { paths, index, uf }
    }

    pub fn zero(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn node_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn resolve(&self, p: &Path, outside: &impl Fn(&Path) -> Outside) -> Node {
        match self.index.get(p) {
            Some(&i) => Node::At(i),
            None => match outside(p) {
                Outside::Zero => Node::At(self.zero()),
                Outside::Unknown => Node::Unknown,
            },
        }
    }

    /// Merges the classes of two paths; a path outside the universe counts as
    /// whatever `outside` says.
    pub fn merge(&mut self, a: &Path, b: &Path, outside: &impl Fn(&Path) -> Outside) {
        if let (Node::At(x), Node::At(y)) = (self.resolve(a, outside), self.resolve(b, outside)) {
            self.uf.union(x, y);
        }
    }

    pub fn merge_zero(&mut self, a: &Path, outside: &impl Fn(&Path) -> Outside) {
        if let Node::At(x) = self.resolve(a, outside) {
            self.uf.union(x, self.zero());
        }
    }

    /// Closes under left and right multiplication by the given arrows
    /// `(index, source, target)` until nothing changes.
    pub fn close(&mut self, arrows: &[(ArrowIx, Vertex, Vertex)], outside: &impl Fn(&Path) -> Outside) {
        loop {
            let mut changed = false;
            let mut images: HashMap<(usize, ArrowIx, Side), usize> = HashMap::new();
            let zero = self.zero();
            for u in 0..self.paths.len() {
                let root = self.uf.find_mut(u);
                let is_zero = root == self.uf.find_mut(zero);
                for &(a, s, t) in arrows {
                    let arrow = Path::from_parts(s, t, vec![a]);
                    let candidates = [
                        (Side::Right, self.paths[u].then(&arrow)),
                        (Side::Left, arrow.then(&self.paths[u])),
                    ];
                    for (side, w) in candidates {
                        let Some(w) = w else { continue };
                        let Node::At(w) = self.resolve(&w, outside) else { continue };
                        if is_zero {
                            changed |= self.uf.union(w, zero);
                            continue;
                        }
                        match images.get(&(root, a, side)) {
                            Some(&other) => changed |= self.uf.union(w, other),
                            None => {
                                images.insert((root, a, side), w);
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.uf.find_mut(a) == self.uf.find_mut(b)
    }

    pub fn is_zero(&mut self, a: usize) -> bool {
        let z = self.zero();
        self.same(a, z)
    }

    /// Non-zero classes as lists of universe indices, each sorted by path order,
    /// the list sorted by representative.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let zero_root = self.uf.find_mut(self.zero());
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.paths.len() {
            let r = self.uf.find_mut(i);
            if r != zero_root {
                by_root.entry(r).or_default().push(i);
            }
        }
        let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
        for c in &mut classes {
            c.sort_by(|&x, &y| self.paths[x].cmp(&self.paths[y]));
        }
        classes.sort_by(|x, y| self.paths[x[0]].cmp(&self.paths[y[0]]));
        classes
    }
}
