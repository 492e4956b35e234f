//! Gabriel presentation of a type-S algebra, the special multiserial test,
//! conditions (D) and (C), and reconstruction of a configuration from socle paths.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::{loewy_diagrams, type_s_basis, AlgebraTable};
use crate::closure::{Congruence, Outside};
use crate::config::{AngleId, Configuration};
use crate::error::AlgebraError;
use crate::path::{ArrowIx, Path, Vertex};
use crate::quiver::Quiver;
use crate::relations::{ideal_generators, minimal_monomials, realizable_words, relation_r, RClasses, Relation};
use crate::seq::{check_type_s, SequenceIndex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedArrows {
    /// Arrows whose `R`-class contains a path of length at least 2.
    pub reduced: Vec<ArrowIx>,
    /// Least arrow of each `R`-class of non-reduced arrows.
    pub kept: Vec<ArrowIx>,
    /// Non-reduced arrows `R`-equivalent to a kept one.
    pub duplicates: Vec<ArrowIx>,
}

pub fn reduced_arrows(q: &Quiver, r: &RClasses) -> ReducedArrows {
    let mut reduced = Vec::new();
    let mut kept = Vec::new();
    let mut duplicates = Vec::new();
    let mut seen_class = BTreeSet::new();
    for a in &q.arrows {
        let p = q.arrow_path(a.index);
        let class = r.class_of(&p).expect("arrows are words of standard sequences");
        if r.classes[class].iter().any(|m| m.len() >= 2) {
            reduced.push(a.index);
        } else if seen_class.insert(class) {
            kept.push(a.index);
        } else {
            duplicates.push(a.index);
        }
    }
    ReducedArrows { reduced, kept, duplicates }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GabrielPresentation {
    pub quiver: Quiver,
    pub arrows: ReducedArrows,
    pub monomials: Vec<Path>,
    /// Pairs `(u, v)` of `R`-related paths of the reduced quiver, `u` the least.
    pub binomials: Vec<(Path, Path)>,
    /// `N_x` per vertex.
    pub vertex_bounds: Vec<usize>,
    pub admissible: bool,
    pub admissibility_witness: Option<String>,
}

impl GabrielPresentation {
    pub fn kept(&self) -> &[ArrowIx] {
        &self.arrows.kept
    }

    pub fn relations(&self) -> Vec<Relation> {
        let mut out: Vec<Relation> = self
            .binomials
            .iter()
            .map(|(a, b)| Relation::Binomial(a.clone(), b.clone()))
            .chain(self.monomials.iter().map(|m| Relation::Monomial(m.clone())))
            .collect();
        out.sort();
        out
    }

    /// Deterministic text listing of arrows and relations.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        for a in &self.quiver.arrows {
            out.push_str(&format!(
                "arrow L({}): {} -> {}\n",
                a.id, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            ));
        }
        for r in self.relations() {
            out.push_str(&format!("relation {}\n", r.render(&self.quiver)));
        }
        out
    }
}

fn has_factor(p: &Path, monomials: &[Path]) -> bool {
    monomials.iter().any(|m| p.contains_factor(m))
}

/// Paths of `q` that avoid every monomial, up to `max_len` arrows.
fn paths_avoiding(q: &Quiver, monomials: &[Path], max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.out_arrows(p.target()) {
                let w = p.then(&q.arrow_path(a.index)).expect("composable");
                if !has_factor(&w, monomials) {
                    next.push(w);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// First surviving path of length `len` starting (or ending) at `x`.
fn long_survivor(q: &Quiver, monomials: &[Path], x: Vertex, len: usize, from: bool) -> Option<Path> {
    let mut frontier = vec![Path::trivial(x)];
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &frontier {
            if from {
                for a in q.out_arrows(p.target()) {
                    let w = p.then(&q.arrow_path(a.index)).expect("composable");
                    if !has_factor(&w, monomials) {
                        next.push(w);
                    }
                }
            } else {
                for a in q.in_arrows(p.source()) {
                    let w = q.arrow_path(a.index).then(p).expect("composable");
                    if !has_factor(&w, monomials) {
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    frontier.into_iter().next()
}

fn require_type_s(c: &Configuration, idx: &SequenceIndex) -> Result<RClasses, AlgebraError> {
    if let Some(v) = c.validate().violations.first() {
        return Err(AlgebraError::NotFbc(format!("({}) {}", v.axiom, v.detail)));
    }
    if let Err(w) = check_type_s(c, idx) {
        return Err(AlgebraError::NotTypeS(w.render(c)));
    }
    relation_r(c, idx)
}

pub fn gabriel_presentation(c: &Configuration) -> Result<GabrielPresentation, AlgebraError> {
    let idx = SequenceIndex::new(c);
    let r = require_type_s(c, &idx)?;
    let full = Quiver::from_config(c);
    let arrows = reduced_arrows(&full, &r);
    let quiver = full.restrict(&arrows.kept);
    let bound = c.length_bound();
    let (b1, b2) = minimal_monomials(c, &full, bound, Some(&arrows.kept));
    let mut monomials: Vec<Path> = b1.into_iter().chain(b2).collect();
    monomials.sort();

    let uses_kept = |p: &Path| p.arrows().iter().all(|a| arrows.kept.contains(a));
    let mut binomials = Vec::new();
    for class in &r.classes {
        let members: Vec<&Path> = class.iter().filter(|p| uses_kept(p)).collect();
        for m in members.iter().skip(1) {
            binomials.push((members[0].clone(), (*m).clone()));
        }
    }

    let vertex_bounds: Vec<usize> = c
        .polygons()
        .iter()
        .map(|p| p.iter().map(|&e| c.degree(e)).max().unwrap_or(0) + 1)
        .collect();
    let mut witness = None;
    if let Some(short) = monomials.iter().find(|m| m.len() < 2) {
        witness = Some(format!("monomial {} has length < 2", quiver.label(short)));
    }
    if let Some((a, b)) = binomials.iter().find(|(a, b)| a.len() < 2 || b.len() < 2) {
        witness.get_or_insert_with(|| {
            format!("binomial {} - {} has a term of length < 2", quiver.label(a), quiver.label(b))
        });
    }
    for (x, &nx) in vertex_bounds.iter().enumerate() {
        for from in [true, false] {
            if let Some(p) = long_survivor(&quiver, &monomials, x, nx, from) {
                witness.get_or_insert_with(|| format!("path {} of length {nx} survives", quiver.label(&p)));
            }
        }
    }
    Ok(GabrielPresentation {
        quiver,
        arrows,
        monomials,
        binomials,
        vertex_bounds,
        admissible: witness.is_none(),
        admissibility_witness: witness,
    })
}

/// The algebra `kQ′/I′` recomputed from the presentation alone.
pub fn presented_algebra(p: &GabrielPresentation) -> AlgebraTable {
    let bound = p.vertex_bounds.iter().copied().max().unwrap_or(1);
    let universe = paths_avoiding(&p.quiver, &p.monomials, bound - 1);
    let mut cg = Congruence::new(universe);
    let outside = |_: &Path| Outside::Zero;
    for (a, b) in &p.binomials {
        cg.merge(a, b, &outside);
    }
    let arrows: Vec<(ArrowIx, Vertex, Vertex)> =
        p.quiver.arrows.iter().map(|a| (a.index, a.source, a.target)).collect();
    cg.close(&arrows, &outside);
    let partition = cg
        .classes()
        .into_iter()
        .map(|cl| cl.into_iter().map(|i| cg.paths()[i].clone()).collect())
        .collect();
    AlgebraTable::from_partition(p.quiver.num_vertices(), arrows, partition, Vec::new())
}

/// First pair of vertices whose dimensions differ between two tables.
pub fn dims_agree(a: &AlgebraTable, b: &AlgebraTable) -> Result<(), (Vertex, Vertex)> {
    let n = a.num_vertices();
    if n != b.num_vertices() {
        return Err((n, b.num_vertices()));
    }
    for x in 0..n {
        for y in 0..n {
            if a.dim(x, y) != b.dim(x, y) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiserialVerdict {
    pub holds: bool,
    /// `(α, β₁, β₂)`: two distinct arrows composing non-trivially with `α` on the same side.
    pub witnesses: Vec<(ArrowIx, ArrowIx, ArrowIx)>,
}

pub fn special_multiserial_check(p: &GabrielPresentation, t: &AlgebraTable) -> MultiserialVerdict {
    let q = &p.quiver;
    let mut witnesses = Vec::new();
    for a in &q.arrows {
        let alpha = q.arrow_path(a.index);
        let after: Vec<ArrowIx> = q
            .out_arrows(a.target)
            .filter(|b| t.class_of(&alpha.then(&q.arrow_path(b.index)).unwrap()).is_some())
            .map(|b| b.index)
            .collect();
        let before: Vec<ArrowIx> = q
            .in_arrows(a.source)
            .filter(|b| t.class_of(&q.arrow_path(b.index).then(&alpha).unwrap()).is_some())
            .map(|b| b.index)
            .collect();
        for side in [after, before] {
            if side.len() > 1 {
                witnesses.push((a.index, side[0], side[1]));
            }
        }
    }
    MultiserialVerdict { holds: witnesses.is_empty(), witnesses }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DcVerdict {
    pub d: bool,
    pub c: bool,
    pub witness: Option<String>,
}

/// Checks (D) through the span decomposition of `I′` and (C) exhaustively over
/// the non-zero paths of the reduced quiver.
pub fn check_conditions_dc(c: &Configuration, p: &GabrielPresentation, t: &AlgebraTable) -> Result<DcVerdict, AlgebraError> {
    let idx = SequenceIndex::new(c);
    let r = require_type_s(c, &idx)?;
    let q = &p.quiver;
    let e_prime: Vec<Path> = realizable_words(c, c.max_degree(), Some(p.kept()))
        .into_iter()
        .filter(|w| idx.contains_word(w))
        .collect();
    let mut witness: Option<String> = None;
    let fail = |w: &mut Option<String>, msg: String| {
        w.get_or_insert(msg);
    };

    let mut table_to_r: HashMap<usize, usize> = HashMap::new();
    let mut r_to_table: HashMap<usize, usize> = HashMap::new();
    let mut covered = BTreeSet::new();
    for w in &e_prime {
        let Some(k) = t.class_of(w) else {
            fail(&mut witness, format!("{} is zero", q.label(w)));
            continue;
        };
        covered.insert(k);
        let rc = r.class_of(w).expect("word of a standard sequence");
        if *table_to_r.entry(k).or_insert(rc) != rc || *r_to_table.entry(rc).or_insert(k) != k {
            fail(&mut witness, format!("classes of {} disagree with R", q.label(w)));
        }
    }
    if let Some(k) = (0..t.total_dim()).find(|k| !covered.contains(k)) {
        fail(&mut witness, format!("class of {} has no path in the reduced quiver", q.label(t.classes()[k].rep())));
    }
    if let Some(m) = p.monomials.iter().find(|m| t.class_of(m).is_some()) {
        fail(&mut witness, format!("monomial {} is non-zero", q.label(m)));
    }
    let d = witness.is_none();

    let mut c_ok = true;
    for (i, a) in e_prime.iter().enumerate() {
        for b in &e_prime[i + 1..] {
            if a.source() != b.source() || a.target() != b.target() || t.class_of(a) != t.class_of(b) {
                continue;
            }
            let (xa, xb) = (a.arrows(), b.arrows());
            let prefix = xa.iter().zip(xb).take_while(|(x, y)| x == y).count();
            let suffix = xa.iter().rev().zip(xb.iter().rev()).take_while(|(x, y)| x == y).count();
            let split = |p: &Path, lo: usize, hi: usize| -> Path {
                if lo == hi {
                    let v = if lo == 0 { p.source() } else { q.arrow(p.arrows()[lo - 1]).unwrap().target };
                    Path::trivial(v)
                } else {
                    q.path(&p.arrows()[lo..hi]).unwrap()
                }
            };
            for k in 1..=prefix {
                let (v, w) = (split(a, k, xa.len()), split(b, k, xb.len()));
                if t.class_of(&v) != t.class_of(&w) {
                    c_ok = false;
                    fail(&mut witness, format!("(C) fails: {} vs {}", q.label(&v), q.label(&w)));
                }
            }
            for k in 1..=suffix {
                let (v, w) = (split(a, 0, xa.len() - k), split(b, 0, xb.len() - k));
                if t.class_of(&v) != t.class_of(&w) {
                    c_ok = false;
                    fail(&mut witness, format!("(C) fails: {} vs {}", q.label(&v), q.label(&w)));
                }
            }
        }
    }
    Ok(DcVerdict { d, c: c_ok, witness })
}

/// A configuration rebuilt from the socle paths of an algebra, with the map
/// back to the algebra's quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructedConfiguration {
    pub config: Configuration,
    /// Socle path of each angle.
    pub socle_paths: Vec<Path>,
    /// Per polygon, the id of the vertex it maps to.
    pub vertex_map: Vec<AngleId>,
    /// Per `L`-block, the id of the arrow it maps to.
    pub arrow_map: Vec<AngleId>,
}

fn angle_name(q: &Quiver, p: &Path) -> String {
    let ids: Vec<&str> = p.arrows().iter().rev().map(|&a| q.arrow(a).unwrap().id.as_str()).collect();
    format!("e[{}]", ids.join(" "))
}

fn is_cycle_quiver(q: &Quiver) -> bool {
    let n = q.num_vertices();
    if q.arrows.len() != n || (0..n).any(|v| q.out_arrows(v).count() != 1 || q.in_arrows(v).count() != 1) {
        return false;
    }
    let mut v = 0;
    for step in 1..=n {
        v = q.out_arrows(v).next().unwrap().target;
        if v == 0 && step < n {
            return false;
        }
    }
    v == 0
}

/// Rebuilds a configuration whose angles are the socle paths of `t`.
pub fn reconstruct_configuration(t: &AlgebraTable, p: &GabrielPresentation) -> Result<ReconstructedConfiguration, AlgebraError> {
    let refuse = |m: String| Err(AlgebraError::Reconstruction(m));
    let q = &p.quiver;
    let loewy_length = t.classes().iter().map(|c| c.degree + 1).max().unwrap_or(0);
    if loewy_length < 2 {
        return refuse("algebra is semisimple".into());
    }
    if loewy_length == 2 && !is_cycle_quiver(q) {
        return refuse("Loewy length 2 and the quiver is not an oriented cycle".into());
    }
    for d in loewy_diagrams(t) {
        if d.socle.len() != 1 {
            return refuse(format!("socle of P_{} is {:?}", q.vertices[d.vertex], d.socle));
        }
    }
    let arrow_classes: Vec<usize> = match p.kept().iter().map(|&a| t.arrow_class(a)).collect::<Option<Vec<_>>>() {
        Some(v) => v,
        None => return refuse("an arrow of the reduced quiver is zero".into()),
    };
    let socle: BTreeSet<usize> = (0..t.total_dim())
        .filter(|&k| arrow_classes.iter().all(|&a| t.product(a, k).is_none() && t.product(k, a).is_none()))
        .collect();
    let kept = p.kept();
    let paths: Vec<Path> = socle
        .iter()
        .flat_map(|&k| t.classes()[k].members.iter())
        .filter(|m| !m.is_trivial() && m.arrows().iter().all(|a| kept.contains(a)))
        .cloned()
        .collect();
    let set: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, v)| (v, i)).collect();

    let shift = |v: &Path, forward: bool| -> Result<usize, AlgebraError> {
        let hits: Vec<usize> = if forward {
            let rest = &v.arrows()[1..];
            q.out_arrows(v.target())
                .filter_map(|b| {
                    let mut w = rest.to_vec();
                    w.push(b.index);
                    q.path(&w).and_then(|w| set.get(&w).copied())
                })
                .collect()
        } else {
            let rest = &v.arrows()[..v.len() - 1];
            q.in_arrows(v.source())
                .filter_map(|b| {
                    let mut w = vec![b.index];
                    w.extend_from_slice(rest);
                    q.path(&w).and_then(|w| set.get(&w).copied())
                })
                .collect()
        };
        match hits.as_slice() {
            [one] => Ok(*one),
            _ => Err(AlgebraError::Reconstruction(format!(
                "{} has {} one-arrow shifts",
                q.label(v),
                hits.len()
            ))),
        }
    };
    let mut succ = Vec::with_capacity(paths.len());
    for v in &paths {
        let next = shift(v, true)?;
        if shift(&paths[next], false)? != set[v] {
            return refuse(format!("shifts of {} are not inverse", q.label(v)));
        }
        succ.push(next);
    }

    let mut order: Vec<usize> = (0..paths.len()).collect();
    let names: Vec<String> = paths.iter().map(|v| angle_name(q, v)).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    let mut rank = vec![0; paths.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let sorted_names: Vec<AngleId> = order.iter().map(|&i| AngleId::new(names[i].clone()).unwrap()).collect();
    let sorted_paths: Vec<Path> = order.iter().map(|&i| paths[i].clone()).collect();
    let config = Configuration::from_indices(
        sorted_names,
        order.iter().map(|&i| rank[succ[i]]).collect(),
        &sorted_paths.iter().map(|v| v.source()).collect::<Vec<_>>(),
        &sorted_paths.iter().map(|v| v.arrows()[0]).collect::<Vec<_>>(),
        sorted_paths.iter().map(Path::len).collect(),
    );
    if let Some(v) = config.validate().violations.first() {
        return refuse(format!("result violates ({}): {}", v.axiom, v.detail));
    }
    if let Err(w) = check_type_s(&config, &SequenceIndex::new(&config)) {
        return refuse(format!("result is not of type S: {}", w.render(&config)));
    }
    let vertex_map = config
        .polygons()
        .iter()
        .map(|b| q.vertices[sorted_paths[b[0]].source()].clone())
        .collect();
    let arrow_map = config
        .blocks()
        .iter()
        .map(|b| q.arrow(sorted_paths[b[0]].arrows()[0]).unwrap().id.clone())
        .collect();
    Ok(ReconstructedConfiguration { config, socle_paths: sorted_paths, vertex_map, arrow_map })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub failure: Option<String>,
}

/// Checks that the explicit map from the reconstructed quiver to the reduced
/// quiver is an isomorphism, sends every defining relation of the
/// reconstruction into the original ideal and preserves all dimensions.
pub fn verify_isomorphism(t: &AlgebraTable, p: &GabrielPresentation, rec: &ReconstructedConfiguration) -> IsoVerdict {
    match check_isomorphism(t, p, rec) {
        Ok(()) => IsoVerdict { isomorphic: true, failure: None },
        Err(m) => IsoVerdict { isomorphic: false, failure: Some(m) },
    }
}

fn check_isomorphism(t: &AlgebraTable, p: &GabrielPresentation, rec: &ReconstructedConfiguration) -> Result<(), String> {
    let q = &p.quiver;
    let qr = Quiver::from_config(&rec.config);
    let vmap: Vec<Vertex> = rec
        .vertex_map
        .iter()
        .map(|id| q.vertex_index(id.as_str()).ok_or_else(|| format!("no vertex {id}")))
        .collect::<Result<_, _>>()?;
    let amap: Vec<ArrowIx> = rec
        .arrow_map
        .iter()
        .map(|id| q.arrow_by_id(id.as_str()).map(|a| a.index).ok_or_else(|| format!("no arrow {id}")))
        .collect::<Result<_, _>>()?;
    if vmap.iter().collect::<BTreeSet<_>>().len() != q.num_vertices() || vmap.len() != q.num_vertices() {
        return Err("vertex map is not a bijection".into());
    }
    if amap.iter().collect::<BTreeSet<_>>().len() != q.arrows.len() || amap.len() != q.arrows.len() {
        return Err("arrow map is not a bijection".into());
    }
    for a in &qr.arrows {
        let image = q.arrow(amap[a.index]).unwrap();
        if image.source != vmap[a.source] || image.target != vmap[a.target] {
            return Err(format!("arrow {} does not commute with endpoints", a.id));
        }
    }
    let transport = |path: &Path| -> Option<Path> {
        if path.is_trivial() {
            return Some(Path::trivial(vmap[path.source()]));
        }
        q.path(&path.arrows().iter().map(|&a| amap[a]).collect::<Vec<_>>())
    };
    for r in ideal_generators(&rec.config, &qr).relations() {
        let ok = match &r {
            Relation::Monomial(m) => transport(m).is_some_and(|m| t.class_of(&m).is_none()),
            Relation::Binomial(a, b) => match (transport(a), transport(b)) {
                (Some(a), Some(b)) => t.class_of(&a) == t.class_of(&b),
                _ => false,
            },
        };
        if !ok {
            return Err(format!("relation {} is not in the original ideal", r.render(&qr)));
        }
    }
    let rt = type_s_basis(&rec.config).map_err(|e| e.to_string())?;
    for x in 0..qr.num_vertices() {
        for y in 0..qr.num_vertices() {
            if rt.dim(x, y) != t.dim(vmap[x], vmap[y]) {
                return Err(format!("dim ({},{}) differs", qr.vertices[x], qr.vertices[y]));
            }
        }
    }
    Ok(())
}
