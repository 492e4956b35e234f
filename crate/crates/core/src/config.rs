//! Finite fractional Brauer configurations: the quadruple of angles, generator
//! action, polygon partition `P`, partition `L` and degree function `d`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Index of an angle inside a [`Configuration`]. Indices follow the lexicographic
/// order of the angle names.
pub type Angle = usize;

/// An angle name. Ordering is lexicographic on the token.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngleId(String);

impl AngleId {
    pub fn new(name: impl Into<String>) -> Result<Self, ConfigError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ConfigError::EmptyAngleName);
        }
        Ok(AngleId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AngleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// How degrees are supplied when building a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degrees {
    /// One value per angle; must then be checked against (f3).
    PerAngle(BTreeMap<String, i64>),
    /// One value per orbit, keyed by any angle of the orbit.
    PerOrbit(BTreeMap<String, i64>),
}

/// Which reading of "proper subsequence" axiom (f6) uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum F6Mode {
    /// Reject only containments aligned with either end of the longer word.
    #[default]
    EndAligned,
    /// Reject any contiguous occurrence.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::F1 => "f1",
            Axiom::F2 => "f2",
            Axiom::F3 => "f3",
            Axiom::F4 => "f4",
            Axiom::F5 => "f5",
            Axiom::F6 => "f6",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// The offending angles: a block, an orbit or a pair, depending on the axiom.
    pub angles: Vec<AngleId>,
    pub detail: String,
}

/// Result of checking (f1)–(f6). At most one witness is kept per axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn holds(&self, axiom: Axiom) -> bool {
        self.violations.iter().all(|v| v.axiom != axiom)
    }

    pub fn all_hold(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&AxiomViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

/// The Nakayama map `σ(e) = g^{d(e)}·e` together with its induced maps on
/// polygons and `L`-blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NakayamaMap {
    pub angles: Vec<Angle>,
    pub polygons: Vec<usize>,
    pub blocks: Vec<usize>,
}

/// A structurally valid finite configuration. Axioms are checked separately by
/// [`Configuration::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    names: Vec<AngleId>,
    index: HashMap<AngleId, Angle>,
    succ: Vec<Angle>,
    orbits: Vec<Vec<Angle>>,
    orbit_of: Vec<usize>,
    orbit_pos: Vec<usize>,
    polygons: Vec<Vec<Angle>>,
    polygon_of: Vec<usize>,
    blocks: Vec<Vec<Angle>>,
    block_of: Vec<usize>,
    degree: Vec<usize>,
}

fn partition_from_labels(labels: &[usize]) -> (Vec<Vec<Angle>>, Vec<usize>) {
    let mut by_label: BTreeMap<usize, Vec<Angle>> = BTreeMap::new();
    for (e, &l) in labels.iter().enumerate() {
        by_label.entry(l).or_default().push(e);
    }
    let mut blocks: Vec<Vec<Angle>> = by_label.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    let mut of = vec![0; labels.len()];
    for (i, b) in blocks.iter().enumerate() {
        for &e in b {
            of[e] = i;
        }
    }
    (blocks, of)
}

impl Configuration {
    /// Builds a configuration from named data, checking only structure.
    ///
    /// `cycles` lists the cycles of `g`; angles absent from every cycle are fixed.
    /// `blocks` of `None` means the trivial partition.
    pub fn new(
        angles: &[String],
        cycles: &[Vec<String>],
        polygons: &[Vec<String>],
        blocks: Option<&[Vec<String>]>,
        degrees: &Degrees,
    ) -> Result<Self, ConfigError> {
        if angles.is_empty() {
            return Err(ConfigError::Empty);
        }
        let mut names = Vec::with_capacity(angles.len());
        for a in angles {
            names.push(AngleId::new(a.clone())?);
        }
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(ConfigError::DuplicateAngle(w[0].0.clone()));
            }
        }
        let index: HashMap<AngleId, Angle> =
            names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        let lookup = |name: &str, context: &'static str| -> Result<Angle, ConfigError> {
            index
                .get(&AngleId(name.to_string()))
                .copied()
                .ok_or_else(|| ConfigError::UnknownAngle { name: name.to_string(), context })
        };

        let n = names.len();
        let mut succ: Vec<Option<Angle>> = vec![None; n];
        let mut seen = vec![false; n];
        for cycle in cycles {
            let ids = cycle
                .iter()
                .map(|a| lookup(a, "g"))
                .collect::<Result<Vec<_>, _>>()?;
            for &e in &ids {
                if seen[e] {
                    return Err(ConfigError::ActionNotBijective(names[e].0.clone()));
                }
                seen[e] = true;
            }
            for (i, &e) in ids.iter().enumerate() {
                succ[e] = Some(ids[(i + 1) % ids.len()]);
            }
        }
        let succ: Vec<Angle> = succ.iter().enumerate().map(|(e, s)| s.unwrap_or(e)).collect();

        let labels_of = |blocks: &[Vec<String>], partition: &'static str| -> Result<Vec<usize>, ConfigError> {
            let mut label: Vec<Option<usize>> = vec![None; n];
            for (i, block) in blocks.iter().enumerate() {
                if block.is_empty() {
                    return Err(ConfigError::EmptyBlock(partition));
                }
                for a in block {
                    let e = lookup(a, partition)?;
                    if label[e].is_some() {
                        return Err(ConfigError::OverlappingBlocks { name: a.clone(), partition });
                    }
                    label[e] = Some(i);
                }
            }
            label
                .iter()
                .enumerate()
                .map(|(e, l)| {
                    l.ok_or_else(|| ConfigError::UncoveredAngle { name: names[e].0.clone(), partition })
                })
                .collect()
        };
        let polygon_labels = labels_of(polygons, "P")?;
        let block_labels = match blocks {
            Some(b) => labels_of(b, "L")?,
            None => (0..n).collect(),
        };

        let mut partial = Self::assemble(names, succ, &polygon_labels, &block_labels, vec![0; n]);
        partial.degree = partial.resolve_degrees(degrees)?;
        Ok(partial)
    }

    /// Builds from index data. Angle names must already be sorted and distinct.
    pub(crate) fn from_indices(
        names: Vec<AngleId>,
        succ: Vec<Angle>,
        polygon_labels: &[usize],
        block_labels: &[usize],
        degree: Vec<usize>,
    ) -> Self {
        Self::assemble(names, succ, polygon_labels, block_labels, degree)
    }

    fn assemble(
        names: Vec<AngleId>,
        succ: Vec<Angle>,
        polygon_labels: &[usize],
        block_labels: &[usize],
        degree: Vec<usize>,
    ) -> Self {
        let n = names.len();
        let index = names.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let mut orbits = Vec::new();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbit_pos = vec![0; n];
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut e = start;
            loop {
                orbit_of[e] = id;
                orbit_pos[e] = orbit.len();
                orbit.push(e);
                e = succ[e];
                if e == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        let (polygons, polygon_of) = partition_from_labels(polygon_labels);
        let (blocks, block_of) = partition_from_labels(block_labels);
        Configuration {
            names,
            index,
            succ,
            orbits,
            orbit_of,
            orbit_pos,
            polygons,
            polygon_of,
            blocks,
            block_of,
            degree,
        }
    }

    fn resolve_degrees(&self, degrees: &Degrees) -> Result<Vec<usize>, ConfigError> {
        let n = self.names.len();
        let positive = |name: &str, v: i64| -> Result<usize, ConfigError> {
            if v <= 0 {
                Err(ConfigError::NonPositiveDegree(name.to_string()))
            } else {
                Ok(v as usize)
            }
        };
        match degrees {
            Degrees::PerAngle(map) => {
                let mut out = vec![0; n];
                for (name, &v) in map {
                    let e = self.lookup(name).ok_or_else(|| ConfigError::UnknownAngle {
                        name: name.clone(),
                        context: "d",
                    })?;
                    out[e] = positive(name, v)?;
                }
                if let Some(e) = out.iter().position(|&d| d == 0) {
                    return Err(ConfigError::MissingDegree(self.names[e].0.clone()));
                }
                Ok(out)
            }
            Degrees::PerOrbit(map) => {
                let mut per_orbit: Vec<Option<usize>> = vec![None; self.orbits.len()];
                for (name, &v) in map {
                    let e = self.lookup(name).ok_or_else(|| ConfigError::UnknownAngle {
                        name: name.clone(),
                        context: "d_orbit",
                    })?;
                    let o = self.orbit_of[e];
                    if per_orbit[o].is_some() {
                        return Err(ConfigError::DuplicateOrbitDegree(name.clone()));
                    }
                    per_orbit[o] = Some(positive(name, v)?);
                }
                (0..n)
                    .map(|e| {
                        per_orbit[self.orbit_of[e]]
                            .ok_or_else(|| ConfigError::MissingDegree(self.names[e].0.clone()))
                    })
                    .collect()
            }
        }
    }

    pub fn num_angles(&self) -> usize {
        self.names.len()
    }

    pub fn angles(&self) -> std::ops::Range<Angle> {
        0..self.names.len()
    }

    pub fn name(&self, e: Angle) -> &AngleId {
        &self.names[e]
    }

    pub fn names(&self) -> &[AngleId] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<Angle> {
        self.index.get(&AngleId(name.to_string())).copied()
    }

    /// `g·e`.
    pub fn succ(&self, e: Angle) -> Angle {
        self.succ[e]
    }

    /// `g^k·e` for any integer `k`.
    pub fn act(&self, e: Angle, k: i64) -> Angle {
        let orbit = &self.orbits[self.orbit_of[e]];
        let m = orbit.len() as i64;
        orbit[(self.orbit_pos[e] as i64 + k).rem_euclid(m) as usize]
    }

    pub fn degree(&self, e: Angle) -> usize {
        self.degree[e]
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// `N = max d + 1`; every path at least this long lies in the ideal.
    pub fn length_bound(&self) -> usize {
        self.max_degree() + 1
    }

    /// Orbits of `g`, each starting at its least angle, ordered by least angle.
    pub fn orbits(&self) -> &[Vec<Angle>] {
        &self.orbits
    }

    pub fn orbit_of(&self, e: Angle) -> usize {
        self.orbit_of[e]
    }

    /// Polygons (blocks of `P`), ordered by least angle.
    pub fn polygons(&self) -> &[Vec<Angle>] {
        &self.polygons
    }

    pub fn polygon_of(&self, e: Angle) -> usize {
        self.polygon_of[e]
    }

    /// Blocks of `L`, ordered by least angle.
    pub fn blocks(&self) -> &[Vec<Angle>] {
        &self.blocks
    }

    pub fn block_of(&self, e: Angle) -> usize {
        self.block_of[e]
    }

    pub fn l_is_trivial(&self) -> bool {
        self.blocks.len() == self.names.len()
    }

    /// `σ(e) = g^{d(e)}·e`.
    pub fn sigma(&self, e: Angle) -> Angle {
        self.act(e, self.degree[e] as i64)
    }

    pub fn nakayama_map(&self) -> NakayamaMap {
        let angles: Vec<Angle> = self.angles().map(|e| self.sigma(e)).collect();
        let polygons = self
            .polygons
            .iter()
            .map(|b| self.polygon_of[angles[b[0]]])
            .collect();
        let blocks = self.blocks.iter().map(|b| self.block_of[angles[b[0]]]).collect();
        NakayamaMap { angles, polygons, blocks }
    }

    /// `d(v)/|v|` for the orbit with the given index.
    pub fn f_degree(&self, orbit: usize) -> Ratio<u64> {
        let o = &self.orbits[orbit];
        Ratio::new(self.degree[o[0]] as u64, o.len() as u64)
    }

    /// Letters of the full sequence at `e` in traversal order:
    /// `L(e), L(g·e), …, L(g^{d-1}·e)`.
    pub fn full_word(&self, e: Angle) -> Vec<usize> {
        (0..self.degree[e]).map(|i| self.block_of[self.act(e, i as i64)]).collect()
    }

    /// The same configuration with `g` replaced by its inverse.
    pub fn reversed(&self) -> Configuration {
        let mut pred = vec![0; self.succ.len()];
        for (e, &s) in self.succ.iter().enumerate() {
            pred[s] = e;
        }
        let blocks: Vec<usize> = pred.iter().map(|&e| self.block_of[e]).collect();
        Self::assemble(self.names.clone(), pred, &self.polygon_of, &blocks, self.degree.clone())
    }

    fn ids(&self, angles: impl IntoIterator<Item = Angle>) -> Vec<AngleId> {
        angles.into_iter().map(|e| self.names[e].clone()).collect()
    }

    /// Checks (f1)–(f6) with the default reading of (f6).
    pub fn validate(&self) -> AxiomReport {
        self.validate_with(F6Mode::default())
    }

    pub fn validate_with(&self, mode: F6Mode) -> AxiomReport {
        let mut violations = Vec::new();
        let n = self.num_angles();

        if let Some(b) = self
            .blocks
            .iter()
            .find(|b| b.iter().any(|&e| self.polygon_of[e] != self.polygon_of[b[0]]))
        {
            violations.push(AxiomViolation {
                axiom: Axiom::F1,
                angles: self.ids(b.iter().copied()),
                detail: "L-block not contained in a polygon".into(),
            });
        }

        if let Some(b) = self.blocks.iter().find(|b| {
            b.iter()
                .any(|&e| self.polygon_of[self.succ[e]] != self.polygon_of[self.succ[b[0]]])
        }) {
            violations.push(AxiomViolation {
                axiom: Axiom::F2,
                angles: self.ids(b.iter().copied()),
                detail: "successors of an L-block lie in different polygons".into(),
            });
        }

        let f3_ok = if let Some(o) = self
            .orbits
            .iter()
            .find(|o| o.iter().any(|&e| self.degree[e] != self.degree[o[0]]))
        {
            violations.push(AxiomViolation {
                axiom: Axiom::F3,
                angles: self.ids(o.iter().copied()),
                detail: "degree not constant on the orbit".into(),
            });
            false
        } else {
            true
        };

        let sigma: Vec<Angle> = self.angles().map(|e| self.sigma(e)).collect();
        let pair_check = |of: &[usize]| -> Option<(Angle, Angle)> {
            for e1 in 0..n {
                for e2 in e1 + 1..n {
                    if (of[e1] == of[e2]) != (of[sigma[e1]] == of[sigma[e2]]) {
                        return Some((e1, e2));
                    }
                }
            }
            None
        };
        if let Some((a, b)) = pair_check(&self.polygon_of) {
            violations.push(AxiomViolation {
                axiom: Axiom::F4,
                angles: self.ids([a, b]),
                detail: "σ does not respect P on this pair".into(),
            });
        }
        if let Some((a, b)) = pair_check(&self.block_of) {
            violations.push(AxiomViolation {
                axiom: Axiom::F5,
                angles: self.ids([a, b]),
                detail: "σ does not respect L on this pair".into(),
            });
        }

        if f3_ok {
            if let Some((e, h)) = self.f6_witness(mode) {
                violations.push(AxiomViolation {
                    axiom: Axiom::F6,
                    angles: self.ids([e, h]),
                    detail: format!(
                        "full word of {} is a proper factor of the full word of {}",
                        self.names[e], self.names[h]
                    ),
                });
            }
        }

        AxiomReport { violations }
    }

    fn f6_witness(&self, mode: F6Mode) -> Option<(Angle, Angle)> {
        let words: Vec<Vec<usize>> = self.angles().map(|e| self.full_word(e)).collect();
        for e in self.angles() {
            for h in self.angles() {
                let (we, wh) = (&words[e], &words[h]);
                if we.len() >= wh.len() {
                    continue;
                }
                let hit = match mode {
                    F6Mode::EndAligned => wh.starts_with(we) || wh.ends_with(we),
                    F6Mode::Strict => wh.windows(we.len()).any(|w| w == we.as_slice()),
                };
                if hit {
                    return Some((e, h));
                }
            }
        }
        None
    }

    /// Canonical cycles of `g` as names; fixed points omitted.
    pub fn cycle_names(&self) -> Vec<Vec<String>> {
        self.orbits
            .iter()
            .filter(|o| o.len() > 1)
            .map(|o| o.iter().map(|&e| self.names[e].0.clone()).collect())
            .collect()
    }

    pub fn block_names(blocks: &[Vec<Angle>], names: &[AngleId]) -> Vec<Vec<String>> {
        blocks
            .iter()
            .map(|b| b.iter().map(|&e| names[e].0.clone()).collect())
            .collect()
    }

    /// Angles of a polygon as a set, for display.
    pub fn polygon_names(&self, p: usize) -> BTreeSet<&str> {
        self.polygons[p].iter().map(|&e| self.names[e].as_str()).collect()
    }
}
