//! The relation `R` on `𝓔` and the generators of the ideal `I_E`.

use std::collections::{BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;

use crate::closure::{Congruence, Outside};
use crate::config::Configuration;
use crate::error::AlgebraError;
use crate::path::Path;
use crate::quiver::Quiver;
use crate::seq::{check_type_s, is_realizable, PathKind, SequenceIndex, StandardSequence};

/// Partition of `𝓔` into `R`-classes. Each class is sorted; its first member is
/// the representative. Classes are sorted by representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RClasses {
    pub classes: Vec<Vec<Path>>,
    class_of: HashMap<Path, usize>,
}

impl RClasses {
    pub fn class_of(&self, p: &Path) -> Option<usize> {
        self.class_of.get(p).copied()
    }

    pub fn related(&self, a: &Path, b: &Path) -> bool {
        matches!((self.class_of(a), self.class_of(b)), (Some(x), Some(y)) if x == y)
    }
}

/// Groups the words of standard sequences by the word of their left complement.
fn left_groups(c: &Configuration, idx: &SequenceIndex) -> Vec<BTreeSet<Path>> {
    let mut groups: HashMap<Path, BTreeSet<Path>> = HashMap::new();
    for (i, p) in idx.sequences.iter().enumerate() {
        groups
            .entry(p.left_complement(c).word(c))
            .or_default()
            .insert(idx.words[i].clone());
    }
    let mut out: Vec<BTreeSet<Path>> = groups.into_values().collect();
    out.sort();
    out
}

/// Computes `R` as a partition. Refused unless the configuration is of type S;
/// transitivity is then verified.
pub fn relation_r(c: &Configuration, idx: &SequenceIndex) -> Result<RClasses, AlgebraError> {
    if let Err(w) = check_type_s(c, idx) {
        return Err(AlgebraError::NotTypeS(w.render(c)));
    }
    let words: Vec<Path> = idx.distinct_words().into_iter().collect();
    let pos: HashMap<&Path, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let groups = left_groups(c, idx);
    let mut uf = UnionFind::new(words.len());
    for g in &groups {
        let mut it = g.iter();
        if let Some(first) = it.next() {
            for w in it {
                uf.union(pos[first], pos[w]);
            }
        }
    }
    let mut comp: HashMap<usize, Vec<Path>> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        comp.entry(uf.find(i)).or_default().push(w.clone());
    }
    let mut classes: Vec<Vec<Path>> = comp.into_values().collect();
    for cl in &mut classes {
        cl.sort();
    }
    classes.sort();
    let class_of: HashMap<Path, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, cl)| cl.iter().map(move |w| (w.clone(), i)))
        .collect();

    // Transitive iff, for every word, the groups containing it cover its class.
    let mut reach: HashMap<&Path, BTreeSet<&Path>> = HashMap::new();
    for g in &groups {
        for w in g {
            reach.entry(w).or_default().extend(g.iter());
        }
    }
    for (w, r) in &reach {
        let class = &classes[class_of[*w]];
        if r.len() != class.len() {
            return Err(AlgebraError::NotTransitive(format!("{w:?}")));
        }
    }
    Ok(RClasses { classes, class_of })
}

/// A defining relation: a path, or a difference of two paths with the same
/// endpoints (stored in increasing order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Binomial(Path, Path),
    Monomial(Path),
}

impl Relation {
    pub fn binomial(a: Path, b: Path) -> Self {
        if a <= b {
            Relation::Binomial(a, b)
        } else {
            Relation::Binomial(b, a)
        }
    }

    pub fn max_len(&self) -> usize {
        match self {
            Relation::Monomial(p) => p.len(),
            Relation::Binomial(a, b) => a.len().max(b.len()),
        }
    }

    pub fn render(&self, q: &Quiver) -> String {
        match self {
            Relation::Monomial(p) => q.label(p),
            Relation::Binomial(a, b) => format!("{} - {}", q.label(a), q.label(b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGenerators {
    /// Pairs `(u, v)` with `u < v`.
    pub fr1: Vec<(Path, Path)>,
    pub fr2: Vec<Path>,
    pub fr3: Vec<Path>,
    pub length_bound: usize,
}

impl IdealGenerators {
    pub fn relations(&self) -> Vec<Relation> {
        let mut out: Vec<Relation> = self
            .fr1
            .iter()
            .map(|(a, b)| Relation::Binomial(a.clone(), b.clone()))
            .chain(self.fr2.iter().chain(&self.fr3).map(|p| Relation::Monomial(p.clone())))
            .collect();
        out.sort();
        out
    }
}

fn ordered(a: Path, b: Path) -> (Path, Path) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Binomials from the template `L(g^{d(e)-1-k}·e)⋯L(e) − L(g^{d(h)-1-k}·h)⋯L(h)`
/// with `P(e) = P(h)` and the last `k` letters of the two full words equal.
pub fn fr1_template(c: &Configuration) -> BTreeSet<(Path, Path)> {
    let mut out = BTreeSet::new();
    for e in c.angles() {
        let we = c.full_word(e);
        for h in c.angles() {
            if h <= e || c.polygon_of(e) != c.polygon_of(h) {
                continue;
            }
            let wh = c.full_word(h);
            let (de, dh) = (we.len(), wh.len());
            for k in 0..=de.min(dh) {
                if k > 0 && we[de - k] != wh[dh - k] {
                    break;
                }
                let u = StandardSequence::new(e, de - k).word(c);
                let v = StandardSequence::new(h, dh - k).word(c);
                if u != v {
                    out.insert(ordered(u, v));
                }
            }
        }
    }
    out
}

/// The same binomials from pairs of sequences with identical left complements.
pub fn fr1_via_complements(c: &Configuration, idx: &SequenceIndex) -> BTreeSet<(Path, Path)> {
    let mut out = BTreeSet::new();
    for g in left_groups(c, idx) {
        let members: Vec<&Path> = g.iter().collect();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                out.insert(ordered(members[i].clone(), members[j].clone()));
            }
        }
    }
    out
}

/// Realizable words of length at most `max_len` built only from `allowed`
/// arrows (all arrows when `allowed` is `None`).
pub(crate) fn realizable_words(c: &Configuration, max_len: usize, allowed: Option<&[usize]>) -> BTreeSet<Path> {
    let ok = |b: usize| allowed.is_none_or(|a| a.contains(&b));
    let mut out = BTreeSet::new();
    for e in c.angles() {
        for n in 0..=max_len {
            if n > 0 && !ok(c.block_of(c.act(e, n as i64 - 1))) {
                break;
            }
            out.insert(StandardSequence::new(e, n).word(c));
        }
    }
    out
}

/// Factor-minimal non-realizable paths and factor-minimal overlong realizable
/// paths of length at most `bound`, restricted to `allowed` arrows.
pub(crate) fn minimal_monomials(
    c: &Configuration,
    q: &Quiver,
    bound: usize,
    allowed: Option<&[usize]>,
) -> (Vec<Path>, Vec<Path>) {
    let realizable = realizable_words(c, bound, allowed);
    let mut b1 = BTreeSet::new();
    let mut b2 = Vec::new();
    for u in &realizable {
        if u.len() < bound {
            for a in q.out_arrows(u.target()) {
                if allowed.is_some_and(|al| !al.contains(&a.index)) {
                    continue;
                }
                let w = u.then(&q.arrow_path(a.index)).expect("composable");
                let suffix = match w.len() {
                    1 => Path::trivial(w.target()),
                    _ => q.path(&w.arrows()[1..]).expect("factor of a path"),
                };
                if is_realizable(c, &w).kind == PathKind::B1 && realizable.contains(&suffix) {
                    b1.insert(w);
                }
            }
        }
        if u.is_trivial() {
            continue;
        }
        if is_realizable(c, u).kind == PathKind::B2 {
            let n = u.len();
            let head = q.path(&u.arrows()[..n - 1]);
            let tail = q.path(&u.arrows()[1..]);
            let overlong = |p: Option<Path>| p.is_some_and(|p| is_realizable(c, &p).kind == PathKind::B2);
            if !overlong(head) && !overlong(tail) {
                b2.push(u.clone());
            }
        }
    }
    (b1.into_iter().collect(), b2)
}

pub fn ideal_generators(c: &Configuration, q: &Quiver) -> IdealGenerators {
    let bound = c.length_bound();
    let (fr2, fr3) = minimal_monomials(c, q, bound, None);
    IdealGenerators { fr1: fr1_template(c).into_iter().collect(), fr2, fr3, length_bound: bound }
}

/// Tests membership in the ideal generated by `relations`, by congruence
/// closure over paths up to `bound`. `None` means the universe was too big.
pub struct IdealMembership {
    cg: Congruence,
    monomials: Vec<Path>,
}

impl IdealMembership {
    pub fn new(q: &Quiver, relations: &[Relation], bound: usize, cap: usize) -> Option<Self> {
        let monomials: Vec<Path> = relations
            .iter()
            .filter_map(|r| match r {
                Relation::Monomial(p) => Some(p.clone()),
                Relation::Binomial(..) => None,
            })
            .collect();
        let has_monomial = |p: &Path| monomials.iter().any(|m| p.contains_factor(m));
        let mut universe: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
        let mut frontier = universe.clone();
        for _ in 0..bound {
            let mut next = Vec::new();
            for p in &frontier {
                for a in q.out_arrows(p.target()) {
                    let w = p.then(&q.arrow_path(a.index)).expect("composable");
                    if !has_monomial(&w) {
                        next.push(w);
                    }
                }
            }
            universe.extend(next.iter().cloned());
            if universe.len() > cap {
                return None;
            }
            frontier = next;
        }
        let mut cg = Congruence::new(universe);
        let outside = |p: &Path| if has_monomial(p) { Outside::Zero } else { Outside::Unknown };
        for r in relations {
            if let Relation::Binomial(a, b) = r {
                cg.merge(a, b, &outside);
            }
        }
        let arrows: Vec<_> = q.arrows.iter().map(|a| (a.index, a.source, a.target)).collect();
        cg.close(&arrows, &outside);
        Some(IdealMembership { cg, monomials })
    }

    fn node(&self, p: &Path) -> Option<usize> {
        if p.is_trivial() {
            return self.cg.node_of(p);
        }
        if self.monomials.iter().any(|m| p.contains_factor(m)) {
            return Some(self.cg.zero());
        }
        self.cg.node_of(p)
    }

    /// `true` only when membership has been derived.
    pub fn contains(&mut self, r: &Relation) -> bool {
        match r {
            Relation::Monomial(p) => match self.node(p) {
                Some(n) => self.cg.is_zero(n),
                None => false,
            },
            Relation::Binomial(a, b) => match (self.node(a), self.node(b)) {
                (Some(x), Some(y)) => self.cg.same(x, y),
                _ => false,
            },
        }
    }
}

/// Keeps each generator not implied by those kept before it, visiting them
/// by shortest term, then longest term, binomials first, then canonical
/// order. Returns the input unchanged if some membership universe exceeds
/// `cap` paths.
pub fn reduce_generators(q: &Quiver, relations: &[Relation], bound: usize, cap: usize) -> Vec<Relation> {
    let key = |r: &Relation| match r {
        Relation::Binomial(a, b) => (a.len().min(b.len()), a.len().max(b.len()), 0),
        Relation::Monomial(p) => (p.len(), p.len(), 1),
    };
    let mut order: Vec<Relation> = relations.to_vec();
    order.sort_by(|a, b| key(a).cmp(&key(b)).then_with(|| a.cmp(b)));
    order.dedup();
    let mut kept: Vec<Relation> = Vec::new();
    for r in order {
        let Some(mut m) = IdealMembership::new(q, &kept, bound, cap) else {
            let mut all = relations.to_vec();
            all.sort();
            all.dedup();
            return all;
        };
        if !m.contains(&r) {
            kept.push(r);
        }
    }
    kept.sort();
    kept
}
