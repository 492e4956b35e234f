//! The quotient algebra `kQ_E/I_E` as a table of path classes, computed either
//! by congruence closure or from the classes of `R`, plus its invariants.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::closure::{Congruence, Outside};
use crate::config::Configuration;
use crate::error::AlgebraError;
use crate::linalg;
use crate::path::{ArrowIx, Path, Vertex};
use crate::quiver::Quiver;
use crate::relations::{fr1_template, relation_r};
use crate::seq::{check_type_s, SequenceIndex};

/// A non-zero basis class. `members[0]` is the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisClass {
    pub members: Vec<Path>,
    pub source: Vertex,
    pub target: Vertex,
    /// Radical degree: the longest member.
    pub degree: usize,
}

impl BasisClass {
    pub fn rep(&self) -> &Path {
        &self.members[0]
    }
}

#[derive(Debug, Clone)]
pub struct AlgebraTable {
    num_vertices: usize,
    arrows: Vec<(ArrowIx, Vertex, Vertex)>,
    classes: Vec<BasisClass>,
    class_of: HashMap<Path, usize>,
    products: HashMap<(usize, usize), usize>,
    collapsed: Vec<Path>,
}

impl AlgebraTable {
    /// Builds the table from a partition of the non-zero paths. Paths not listed
    /// are zero. `collapsed` records paths that were expected non-zero but are not.
    pub fn from_partition(
        num_vertices: usize,
        arrows: Vec<(ArrowIx, Vertex, Vertex)>,
        partition: Vec<Vec<Path>>,
        collapsed: Vec<Path>,
    ) -> Self {
        let mut classes: Vec<BasisClass> = partition
            .into_iter()
            .map(|mut members| {
                members.sort();
                let degree = members.iter().map(Path::len).max().unwrap_or(0);
                BasisClass { source: members[0].source(), target: members[0].target(), degree, members }
            })
            .collect();
        classes.sort_by(|a, b| (a.source, a.target, a.rep()).cmp(&(b.source, b.target, b.rep())));
        let class_of: HashMap<Path, usize> = classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.members.iter().map(move |m| (m.clone(), i)))
            .collect();
        let mut products = HashMap::new();
        for (i, a) in classes.iter().enumerate() {
            for (j, b) in classes.iter().enumerate() {
                if a.target != b.source {
                    continue;
                }
                let w = a.rep().then(b.rep()).expect("endpoints match");
                if let Some(&k) = class_of.get(&w) {
                    products.insert((i, j), k);
                }
            }
        }
        AlgebraTable { num_vertices, arrows, classes, class_of, products, collapsed }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn arrows(&self) -> &[(ArrowIx, Vertex, Vertex)] {
        &self.arrows
    }

    pub fn classes(&self) -> &[BasisClass] {
        &self.classes
    }

    /// Class of a path, `None` when the path is zero.
    pub fn class_of(&self, p: &Path) -> Option<usize> {
        self.class_of.get(p).copied()
    }

    /// Product "`first`, then `second`" of two basis classes; `None` is zero.
    pub fn product(&self, first: usize, second: usize) -> Option<usize> {
        self.products.get(&(first, second)).copied()
    }

    pub fn arrow_class(&self, a: ArrowIx) -> Option<usize> {
        let &(_, s, t) = self.arrows.iter().find(|x| x.0 == a)?;
        self.class_of(&Path::from_parts(s, t, vec![a]))
    }

    pub fn identity(&self, x: Vertex) -> Option<usize> {
        self.class_of(&Path::trivial(x))
    }

    /// Paths that should have been non-zero but collapsed to zero.
    pub fn collapsed(&self) -> &[Path] {
        &self.collapsed
    }

    pub fn basis(&self, x: Vertex, y: Vertex) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].source == x && self.classes[i].target == y)
            .collect()
    }

    pub fn dim(&self, x: Vertex, y: Vertex) -> usize {
        self.classes.iter().filter(|c| c.source == x && c.target == y).count()
    }

    pub fn total_dim(&self) -> usize {
        self.classes.len()
    }

    /// Checks `(ab)c = a(bc)` on all composable basis triples.
    pub fn check_associativity(&self) -> Result<(), (usize, usize, usize)> {
        let n = self.classes.len();
        for a in 0..n {
            for b in 0..n {
                if self.classes[a].target != self.classes[b].source {
                    continue;
                }
                for c in 0..n {
                    if self.classes[b].target != self.classes[c].source {
                        continue;
                    }
                    let left = self.product(a, b).and_then(|ab| self.product(ab, c));
                    let right = self.product(b, c).and_then(|bc| self.product(a, bc));
                    if left != right {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that trivial paths act as local units.
    pub fn check_units(&self) -> Result<(), usize> {
        for (i, c) in self.classes.iter().enumerate() {
            let ok = match (self.identity(c.source), self.identity(c.target)) {
                (Some(s), Some(t)) => self.product(s, i) == Some(i) && self.product(i, t) == Some(i),
                _ => false,
            };
            if !ok {
                return Err(i);
            }
        }
        Ok(())
    }

    /// Checks that products do not depend on the chosen representatives.
    pub fn check_well_defined(&self) -> Result<(), (Path, Path)> {
        for (i, a) in self.classes.iter().enumerate() {
            for (j, b) in self.classes.iter().enumerate() {
                if a.target != b.source {
                    continue;
                }
                let expected = self.product(i, j);
                for u in &a.members {
                    for v in &b.members {
                        let w = u.then(v).expect("endpoints match");
                        if self.class_of(&w) != expected {
                            return Err((u.clone(), v.clone()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Least `n` with `J^n = 0`, where `J` is spanned by the classes of positive degree.
    pub fn radical_nilpotency(&self) -> usize {
        let radical: Vec<usize> = (0..self.classes.len()).filter(|&i| self.classes[i].degree > 0).collect();
        let mut power: BTreeSet<usize> = radical.iter().copied().collect();
        let mut n = 1;
        while !power.is_empty() {
            power = power
                .iter()
                .flat_map(|&a| radical.iter().filter_map(move |&b| self.product(a, b)))
                .collect();
            n += 1;
        }
        n
    }

    /// Compares class partitions and multiplication with another table.
    pub fn compare(&self, other: &AlgebraTable) -> Result<(), String> {
        if self.classes != other.classes {
            let diff = self
                .classes
                .iter()
                .zip(&other.classes)
                .find(|(a, b)| a != b)
                .map(|(a, b)| format!("{:?} vs {:?}", a.members, b.members))
                .unwrap_or_else(|| format!("{} vs {} classes", self.classes.len(), other.classes.len()));
            return Err(format!("class partitions differ: {diff}"));
        }
        if self.products != other.products {
            return Err("multiplication tables differ".into());
        }
        Ok(())
    }
}

fn arrow_triples(q: &Quiver) -> Vec<(ArrowIx, Vertex, Vertex)> {
    q.arrows.iter().map(|a| (a.index, a.source, a.target)).collect()
}

fn require_fbc(c: &Configuration) -> Result<(), AlgebraError> {
    let report = c.validate();
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(AlgebraError::NotFbc(format!("({}) {}", v.axiom, v.detail))),
    }
}

/// The algebra by congruence closure. Works for every valid configuration.
///
/// Only the words of standard sequences can be non-zero, so the universe is
/// `𝓔`; everything else is sent to zero.
pub fn congruence_closure(c: &Configuration) -> Result<AlgebraTable, AlgebraError> {
    require_fbc(c)?;
    let q = Quiver::from_config(c);
    let idx = SequenceIndex::new(c);
    let words: Vec<Path> = idx.distinct_words().into_iter().collect();
    let mut cg = Congruence::new(words);
    let outside = |_: &Path| Outside::Zero;
    for (u, v) in fr1_template(c) {
        cg.merge(&u, &v, &outside);
    }
    cg.close(&arrow_triples(&q), &outside);
    let mut collapsed = Vec::new();
    for i in 0..cg.paths().len() {
        if cg.is_zero(i) {
            collapsed.push(cg.paths()[i].clone());
        }
    }
    let partition: Vec<Vec<Path>> = cg
        .classes()
        .into_iter()
        .map(|cl| cl.into_iter().map(|i| cg.paths()[i].clone()).collect())
        .collect();
    Ok(AlgebraTable::from_partition(q.num_vertices(), arrow_triples(&q), partition, collapsed))
}

/// The algebra from the classes of `R`. Type S only.
pub fn type_s_basis(c: &Configuration) -> Result<AlgebraTable, AlgebraError> {
    require_fbc(c)?;
    let q = Quiver::from_config(c);
    let idx = SequenceIndex::new(c);
    let r = relation_r(c, &idx)?;
    Ok(AlgebraTable::from_partition(q.num_vertices(), arrow_triples(&q), r.classes, Vec::new()))
}

/// Runs both engines and fails on any disagreement.
pub fn both_engines(c: &Configuration) -> Result<AlgebraTable, AlgebraError> {
    let closure = congruence_closure(c)?;
    let fast = type_s_basis(c)?;
    closure.compare(&fast).map_err(AlgebraError::EngineMismatch)?;
    Ok(closure)
}

/// Entry `(x, y)` counts basis classes with source `x` and target `y`.
pub fn cartan_matrix(t: &AlgebraTable) -> Vec<Vec<usize>> {
    let n = t.num_vertices();
    (0..n).map(|x| (0..n).map(|y| t.dim(x, y)).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoewyDiagram {
    pub vertex: Vertex,
    /// Source vertices of the classes of each radical degree, sorted.
    pub layers: Vec<Vec<Vertex>>,
    pub socle: Vec<Vertex>,
    pub loewy_length: usize,
}

impl LoewyDiagram {
    pub fn dim(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

fn unit_matrix_rows(rows: &BTreeMap<(ArrowIx, usize), Vec<usize>>, cols: usize) -> linalg::Matrix {
    rows.values()
        .map(|hits| {
            let mut r = vec![BigRational::zero(); cols];
            for &c in hits {
                r[c] += BigRational::one();
            }
            r
        })
        .collect()
}

/// Kernel of "multiply by every arrow" on the span of `cols`.
/// With `before`, the arrow is traversed before the element, otherwise after.
fn annihilator(t: &AlgebraTable, cols: &[usize], before: bool) -> Vec<Vec<BigRational>> {
    let mut rows: BTreeMap<(ArrowIx, usize), Vec<usize>> = BTreeMap::new();
    for &(a, _, _) in t.arrows() {
        let Some(ac) = t.arrow_class(a) else { continue };
        for (j, &u) in cols.iter().enumerate() {
            let prod = if before { t.product(ac, u) } else { t.product(u, ac) };
            if let Some(w) = prod {
                rows.entry((a, w)).or_default().push(j);
            }
        }
    }
    linalg::kernel(unit_matrix_rows(&rows, cols.len()), cols.len())
}

/// A source vertex, the basis classes from it, and the kernel basis on their span.
type SoclePart = (Vertex, Vec<usize>, Vec<Vec<BigRational>>);

/// Socle of `P_x = Λ(−,x)`, one part per source vertex.
fn left_socle(t: &AlgebraTable, x: Vertex) -> Vec<SoclePart> {
    (0..t.num_vertices())
        .map(|y| {
            let cols = t.basis(y, x);
            let k = annihilator(t, &cols, true);
            (y, cols, k)
        })
        .collect()
}

/// Socle of `Λ(x,−)` as multiplicities per target vertex.
fn right_socle(t: &AlgebraTable, x: Vertex) -> Vec<(Vertex, usize)> {
    (0..t.num_vertices())
        .map(|y| (y, annihilator(t, &t.basis(x, y), false).len()))
        .collect()
}

fn multiset(pairs: impl IntoIterator<Item = (Vertex, usize)>) -> Vec<Vertex> {
    pairs.into_iter().flat_map(|(v, m)| std::iter::repeat_n(v, m)).collect()
}

pub fn loewy_diagrams(t: &AlgebraTable) -> Vec<LoewyDiagram> {
    (0..t.num_vertices())
        .map(|x| {
            let into_x: Vec<&BasisClass> = t.classes().iter().filter(|c| c.target == x).collect();
            let length = into_x.iter().map(|c| c.degree + 1).max().unwrap_or(0);
            let mut layers = vec![Vec::new(); length];
            for c in into_x {
                layers[c.degree].push(c.source);
            }
            for l in &mut layers {
                l.sort_unstable();
            }
            let socle = multiset(left_socle(t, x).into_iter().map(|(y, _, k)| (y, k.len())));
            LoewyDiagram { vertex: x, layers, socle, loewy_length: length }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusData {
    /// Vertex permutation `x ↦ σ(x)`, when one was found.
    pub nakayama: Option<Vec<Vertex>>,
    /// Per vertex, the class carrying the linear form.
    pub epsilon: Vec<Option<usize>>,
    /// Per `(x, y)`: rows indexed by `basis(y, σx)`, columns by `basis(x, y)`.
    pub pairing: BTreeMap<(Vertex, Vertex), Vec<Vec<u8>>>,
    pub frobenius: bool,
    pub symmetric: bool,
    pub self_injective: bool,
    pub witness: Option<String>,
}

impl FrobeniusData {
    fn failed(witness: String, epsilon: Vec<Option<usize>>) -> Self {
        FrobeniusData {
            nakayama: None,
            epsilon,
            pairing: BTreeMap::new(),
            frobenius: false,
            symmetric: false,
            self_injective: false,
            witness: Some(witness),
        }
    }
}

fn epsilon_value(t: &AlgebraTable, eps: &[Option<usize>], class: Option<usize>) -> bool {
    class.is_some_and(|c| eps[t.classes()[c].source] == Some(c))
}

fn symmetric_form(t: &AlgebraTable, eps: &[Option<usize>]) -> bool {
    let n = t.total_dim();
    (0..n).all(|a| {
        (0..n).all(|b| epsilon_value(t, eps, t.product(a, b)) == epsilon_value(t, eps, t.product(b, a)))
    })
}

fn is_permutation_matrix(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n && r.iter().map(|&x| x as usize).sum::<usize>() == 1)
        && (0..n).all(|j| m.iter().map(|r| r[j] as usize).sum::<usize>() == 1)
}

/// Frobenius form of a type-S algebra, built from full sequences.
fn frobenius_type_s(t: &AlgebraTable, c: &Configuration, ids: &[String]) -> FrobeniusData {
    let sigma = c.nakayama_map().polygons;
    let n = t.num_vertices();
    let mut epsilon = vec![None; n];
    for x in 0..n {
        let found: BTreeSet<Option<usize>> = c.polygons()[x]
            .iter()
            .map(|&e| t.class_of(&crate::seq::StandardSequence::new(e, c.degree(e)).word(c)))
            .collect();
        match found.into_iter().collect::<Vec<_>>().as_slice() {
            [Some(k)] if t.classes()[*k].target == sigma[x] => epsilon[x] = Some(*k),
            other => {
                return FrobeniusData::failed(
                    format!("vertex {}: full sequences give classes {other:?}", ids[x]),
                    epsilon,
                )
            }
        }
    }
    let mut pairing = BTreeMap::new();
    let mut frobenius = true;
    let mut witness = None;
    for x in 0..n {
        for y in 0..n {
            let cols = t.basis(x, y);
            let rows = t.basis(y, sigma[x]);
            let m: Vec<Vec<u8>> = rows
                .iter()
                .map(|&v| cols.iter().map(|&u| epsilon_value(t, &epsilon, t.product(u, v)) as u8).collect())
                .collect();
            if rows.len() != cols.len() || !is_permutation_matrix(&m) {
                frobenius = false;
                witness.get_or_insert_with(|| format!("pairing ({},{}) is degenerate", ids[x], ids[y]));
            }
            pairing.insert((x, y), m);
        }
    }
    let symmetric = frobenius && (0..n).all(|x| sigma[x] == x) && symmetric_form(t, &epsilon);
    FrobeniusData {
        nakayama: Some(sigma),
        epsilon,
        pairing,
        frobenius,
        symmetric,
        self_injective: frobenius,
        witness,
    }
}

/// Frobenius search for arbitrary algebras: socles must be simple and give a
/// permutation, and the form supported on the socle classes must be
/// non-degenerate.
fn frobenius_general(t: &AlgebraTable, ids: &[String]) -> FrobeniusData {
    let n = t.num_vertices();
    let mut socle_of = vec![0; n];
    let mut epsilon = vec![None; n];
    for z in 0..n {
        let soc = left_socle(t, z);
        let parts: Vec<&SoclePart> =
            soc.iter().filter(|(_, _, k)| !k.is_empty()).collect();
        let total: usize = parts.iter().map(|(_, _, k)| k.len()).sum();
        if total != 1 {
            let m: Vec<&str> =
                multiset(parts.iter().map(|(y, _, k)| (*y, k.len()))).iter().map(|&v| ids[v].as_str()).collect();
            return FrobeniusData::failed(format!("socle of P_{} is {m:?}, not simple", ids[z]), epsilon);
        }
        let (y, cols, k) = parts[0];
        socle_of[z] = *y;
        let support = cols
            .iter()
            .zip(&k[0])
            .filter(|(_, v)| !v.is_zero())
            .map(|(&c, _)| c)
            .max_by_key(|&c| (t.classes()[c].degree, c));
        epsilon[*y] = support;
    }
    for x in 0..n {
        let right = right_socle(t, x);
        let total: usize = right.iter().map(|(_, m)| m).sum();
        if total != 1 {
            return FrobeniusData::failed(
                format!(
                    "socle of the right projective at {} is {:?}, not simple",
                    ids[x],
                    multiset(right).iter().map(|&v| ids[v].as_str()).collect::<Vec<_>>()
                ),
                epsilon,
            );
        }
    }
    let mut sigma = vec![usize::MAX; n];
    for z in 0..n {
        if sigma[socle_of[z]] != usize::MAX {
            return FrobeniusData::failed(
                format!(
                    "P_{} and P_{} have the same socle S_{}",
                    ids[sigma[socle_of[z]]], ids[z], ids[socle_of[z]]
                ),
                epsilon,
            );
        }
        sigma[socle_of[z]] = z;
    }
    let dim = t.total_dim();
    let gram: Vec<Vec<i64>> = (0..dim)
        .map(|a| (0..dim).map(|b| epsilon_value(t, &epsilon, t.product(a, b)) as i64).collect())
        .collect();
    let frobenius = linalg::rank(linalg::from_integers(&gram)) == dim;
    let symmetric = frobenius && (0..n).all(|x| sigma[x] == x) && symmetric_form(t, &epsilon);
    FrobeniusData {
        nakayama: frobenius.then_some(sigma),
        epsilon,
        pairing: BTreeMap::new(),
        frobenius,
        symmetric,
        self_injective: frobenius,
        witness: (!frobenius).then(|| "form supported on socle classes is degenerate".to_string()),
    }
}

/// Frobenius verdicts. The type-S construction is used when the configuration
/// is of type S, the socle-based search otherwise.
pub fn frobenius_check(t: &AlgebraTable, c: &Configuration) -> FrobeniusData {
    let ids: Vec<String> = Quiver::from_config(c).vertices.iter().map(|v| v.to_string()).collect();
    if check_type_s(c, &SequenceIndex::new(c)).is_ok() {
        frobenius_type_s(t, c, &ids)
    } else {
        frobenius_general(t, &ids)
    }
}

/// Failure of the Nakayama identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NakayamaFailure {
    NotFrobenius,
    SigmaNotAClass(usize),
    DoubleComplement(usize),
    Pairing(usize, usize),
}

impl fmt::Display for NakayamaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NakayamaFailure::NotFrobenius => write!(f, "no Frobenius form"),
            NakayamaFailure::SigmaNotAClass(u) => write!(f, "σ of class {u} is zero"),
            NakayamaFailure::DoubleComplement(u) => write!(f, "σ(u) differs from ^^u for class {u}"),
            NakayamaFailure::Pairing(a, b) => write!(f, "ε(b·σ(a)) ≠ ε(a·b) for a={a}, b={b}"),
        }
    }
}

/// The class map induced by σ on arrows and vertices.
pub fn sigma_on_classes(t: &AlgebraTable, c: &Configuration) -> Vec<Option<usize>> {
    let nm = c.nakayama_map();
    t.classes()
        .iter()
        .map(|cl| {
            let r = cl.rep();
            let image = Path::from_parts(
                nm.polygons[r.source()],
                nm.polygons[r.target()],
                r.arrows().iter().map(|&a| nm.blocks[a]).collect(),
            );
            t.class_of(&image)
        })
        .collect()
}

/// Checks `ε(b·σ(a)) = ε(a·b)` on all basis pairs and `σ(u) = ^^u` on all classes.
/// Here `a·b` is the product traversing `a` first.
pub fn nakayama_consistency(t: &AlgebraTable, c: &Configuration, f: &FrobeniusData) -> Result<(), NakayamaFailure> {
    if !f.frobenius {
        return Err(NakayamaFailure::NotFrobenius);
    }
    let idx = SequenceIndex::new(c);
    let sigma = sigma_on_classes(t, c);
    let left_class = |u: usize| -> Option<usize> {
        let p = idx.with_word(t.classes()[u].rep()).next()?;
        t.class_of(&p.left_complement(c).word(c))
    };
    for (u, s) in sigma.iter().enumerate() {
        let Some(s) = *s else { return Err(NakayamaFailure::SigmaNotAClass(u)) };
        if left_class(u).and_then(left_class) != Some(s) {
            return Err(NakayamaFailure::DoubleComplement(u));
        }
    }
    let eps = |k: Option<usize>| epsilon_value(t, &f.epsilon, k);
    for (a, sa) in sigma.iter().enumerate() {
        let sa = sa.expect("checked above");
        for b in 0..t.total_dim() {
            if eps(t.product(b, sa)) != eps(t.product(a, b)) {
                return Err(NakayamaFailure::Pairing(a, b));
            }
        }
    }
    Ok(())
}

/// Cycle notation for a permutation, fixed points omitted, `()` for the identity.
pub fn cycle_notation(perm: &[usize], label: impl Fn(usize) -> String) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(label(x));
            x = perm[x];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
