//! Standard sequences, their complements and arrow words, realizability of
//! paths, and the two type-S tests.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::config::{Angle, Configuration};
use crate::path::Path;

/// `(g^{n-1}·e, …, g·e, e)` with `0 ≤ n ≤ d(e)`; `len == 0` is the trivial
/// sequence `()_e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StandardSequence {
    pub base: Angle,
    pub len: usize,
}

impl StandardSequence {
    pub fn new(base: Angle, len: usize) -> Self {
        StandardSequence { base, len }
    }

    pub fn is_trivial(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self, c: &Configuration) -> bool {
        self.len == c.degree(self.base)
    }

    /// `L(g^{n-1}·e)⋯L(e)`; the trivial path at `P(e)` when `n = 0`.
    pub fn word(&self, c: &Configuration) -> Path {
        let arrows = (0..self.len).map(|i| c.block_of(c.act(self.base, i as i64))).collect();
        Path::from_parts(
            c.polygon_of(self.base),
            c.polygon_of(c.act(self.base, self.len as i64)),
            arrows,
        )
    }

    /// `^p`, the sequence completing `p` to a full sequence on the left.
    pub fn left_complement(&self, c: &Configuration) -> Self {
        let d = c.degree(self.base);
        StandardSequence::new(c.act(self.base, self.len as i64), d - self.len)
    }

    /// `p^`, the sequence completing `p` to a full sequence on the right.
    pub fn right_complement(&self, c: &Configuration) -> Self {
        let d = c.degree(self.base) as i64;
        StandardSequence::new(c.act(self.base, self.len as i64 - d), (d as usize) - self.len)
    }

    /// Rendering `(g^{n-1}·e, …, e)`, or `()_e`.
    pub fn render(&self, c: &Configuration) -> String {
        if self.len == 0 {
            return format!("()_{}", c.name(self.base));
        }
        let names: Vec<&str> = (0..self.len)
            .rev()
            .map(|i| c.name(c.act(self.base, i as i64)).as_str())
            .collect();
        format!("({})", names.join(","))
    }
}

pub fn enumerate_standard_sequences(c: &Configuration) -> Vec<StandardSequence> {
    c.angles()
        .flat_map(|e| (0..=c.degree(e)).map(move |n| StandardSequence::new(e, n)))
        .collect()
}

/// All standard sequences with their words and the reverse index word → sequences.
#[derive(Debug, Clone)]
pub struct SequenceIndex {
    pub sequences: Vec<StandardSequence>,
    pub words: Vec<Path>,
    by_word: HashMap<Path, Vec<usize>>,
}

impl SequenceIndex {
    pub fn new(c: &Configuration) -> Self {
        let sequences = enumerate_standard_sequences(c);
        let words: Vec<Path> = sequences.iter().map(|p| p.word(c)).collect();
        let mut by_word: HashMap<Path, Vec<usize>> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            by_word.entry(w.clone()).or_default().push(i);
        }
        SequenceIndex { sequences, words, by_word }
    }

    /// Sequences whose word is `w`, i.e. the `≡`-class of any of them.
    pub fn with_word(&self, w: &Path) -> impl Iterator<Item = StandardSequence> + '_ {
        self.by_word.get(w).into_iter().flatten().map(|&i| self.sequences[i])
    }

    /// The set `𝓔` of words of standard sequences.
    pub fn distinct_words(&self) -> BTreeSet<Path> {
        self.by_word.keys().cloned().collect()
    }

    pub fn contains_word(&self, w: &Path) -> bool {
        self.by_word.contains_key(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PathKind {
    /// Realizable with `n ≤ d`: the path is a word in `𝓔`.
    E,
    /// Not realizable.
    B1,
    /// Realizable but longer than the degree.
    B2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathVerdict {
    pub kind: PathKind,
    /// Angles `e` with the path equal to `L(g^{n-1}·e)⋯L(e)`.
    pub witnesses: Vec<Angle>,
}

/// Decides realizability through the translated intersection
/// `⋂ g^{n-i}·L(e_i)`; witnesses are `g^{1-n}·h` for `h` in it.
pub fn is_realizable(c: &Configuration, path: &Path) -> PathVerdict {
    let n = path.len();
    if n == 0 {
        let witnesses = c.polygons()[path.source()].clone();
        return PathVerdict { kind: PathKind::E, witnesses };
    }
    let mut current: BTreeSet<Angle> = BTreeSet::new();
    for (i, &block) in path.arrows().iter().enumerate() {
        let shift = (n - 1 - i) as i64;
        let translated: BTreeSet<Angle> =
            c.blocks()[block].iter().map(|&e| c.act(e, shift)).collect();
        current = if i == 0 { translated } else { current.intersection(&translated).copied().collect() };
        if current.is_empty() {
            return PathVerdict { kind: PathKind::B1, witnesses: Vec::new() };
        }
    }
    let mut witnesses: Vec<Angle> = current.iter().map(|&h| c.act(h, 1 - n as i64)).collect();
    witnesses.sort_unstable();
    let kind = if n <= c.degree(witnesses[0]) { PathKind::E } else { PathKind::B2 };
    PathVerdict { kind, witnesses }
}

/// A failing pair for (f7) with the two differing sets of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSWitness {
    pub p: StandardSequence,
    pub q: StandardSequence,
    pub p_set: BTreeSet<Path>,
    pub q_set: BTreeSet<Path>,
}

impl TypeSWitness {
    pub fn render(&self, c: &Configuration) -> String {
        format!("p={}, q={}", self.p.render(c), self.q.render(c))
    }
}

/// Words of `[[^p]^]`: right complements of every sequence identical to `^p`.
fn double_complement_words(c: &Configuration, idx: &SequenceIndex, p: StandardSequence) -> BTreeSet<Path> {
    let lw = p.left_complement(c).word(c);
    idx.with_word(&lw).map(|r| r.right_complement(c).word(c)).collect()
}

/// Condition (f7). Pairs with `p` trivial or full are skipped.
pub fn check_type_s(c: &Configuration, idx: &SequenceIndex) -> Result<(), TypeSWitness> {
    for (i, &p) in idx.sequences.iter().enumerate() {
        if p.is_trivial() || p.is_full(c) {
            continue;
        }
        let p_set = double_complement_words(c, idx, p);
        for q in idx.with_word(&idx.words[i]) {
            if q == p {
                continue;
            }
            let q_set = double_complement_words(c, idx, q);
            if p_set != q_set {
                return Err(TypeSWitness { p, q, p_set, q_set });
            }
        }
    }
    Ok(())
}

/// Condition (f7′): for every `p`, the words `R`-related to `L(p)` are exactly
/// the words `L(p′)` with `^p ≡ ^p′`. Returns the first failing sequence.
pub fn check_type_s_via_f7prime(c: &Configuration, idx: &SequenceIndex) -> Result<(), StandardSequence> {
    let mut by_left: HashMap<Path, BTreeSet<Path>> = HashMap::new();
    for (i, p) in idx.sequences.iter().enumerate() {
        by_left
            .entry(p.left_complement(c).word(c))
            .or_default()
            .insert(idx.words[i].clone());
    }
    for (i, &p) in idx.sequences.iter().enumerate() {
        let u = &idx.words[i];
        let related: BTreeSet<Path> = idx
            .with_word(u)
            .flat_map(|r| by_left[&r.left_complement(c).word(c)].iter().cloned())
            .collect();
        let expected = &by_left[&p.left_complement(c).word(c)];
        if &related != expected {
            return Err(p);
        }
    }
    Ok(())
}
