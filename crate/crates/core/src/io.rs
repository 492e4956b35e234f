//! JSON documents for configurations and Brauer configuration presentations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::{Configuration, Degrees};
use crate::error::{BcError, ConfigError};

/// `"L": "trivial"` or a list of blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LSpec {
    Trivial,
    Blocks(Vec<Vec<String>>),
}

impl Serialize for LSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LSpec::Trivial => s.serialize_str("trivial"),
            LSpec::Blocks(b) => b.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for LSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Tag(String),
            Blocks(Vec<Vec<String>>),
        }
        match Raw::deserialize(d)? {
            Raw::Tag(t) if t == "trivial" => Ok(LSpec::Trivial),
            Raw::Tag(t) => Err(serde::de::Error::custom(ConfigError::BadTrivialTag(t))),
            Raw::Blocks(b) => Ok(LSpec::Blocks(b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub angles: Vec<String>,
    #[serde(default)]
    pub g: Vec<Vec<String>>,
    #[serde(rename = "P")]
    pub polygons: Vec<Vec<String>>,
    #[serde(rename = "L")]
    pub blocks: LSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_orbit: Option<BTreeMap<String, i64>>,
}

impl ConfigDocument {
    pub fn to_configuration(&self) -> Result<Configuration, ConfigError> {
        let degrees = match (&self.d, &self.d_orbit) {
            (Some(d), None) => Degrees::PerAngle(d.clone()),
            (None, Some(d)) => Degrees::PerOrbit(d.clone()),
            _ => return Err(ConfigError::DegreeSpec),
        };
        let blocks = match &self.blocks {
            LSpec::Trivial => None,
            LSpec::Blocks(b) => Some(b.as_slice()),
        };
        Configuration::new(&self.angles, &self.g, &self.polygons, blocks, &degrees)
    }

    /// Canonical document: sorted angles, cycles from their least angle, fixed
    /// points omitted, per-angle degrees.
    pub fn from_configuration(c: &Configuration) -> Self {
        let names = c.names();
        ConfigDocument {
            angles: names.iter().map(|a| a.as_str().to_string()).collect(),
            g: c.cycle_names(),
            polygons: Configuration::block_names(c.polygons(), names),
            blocks: if c.l_is_trivial() {
                LSpec::Trivial
            } else {
                LSpec::Blocks(Configuration::block_names(c.blocks(), names))
            },
            d: Some(c.angles().map(|e| (names[e].as_str().to_string(), c.degree(e) as i64)).collect()),
            d_orbit: None,
        }
    }
}

/// Errors reading a document.
#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Structure(#[from] ConfigError),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub fn parse_configuration(text: &str) -> Result<Configuration, DocumentError> {
    let doc: ConfigDocument = serde_json::from_str(text)?;
    Ok(doc.to_configuration()?)
}

pub fn configuration_to_json(c: &Configuration) -> String {
    let mut s = serde_json::to_string_pretty(&ConfigDocument::from_configuration(c)).expect("serializable");
    s.push('\n');
    s
}

/// A Brauer configuration given by vertices, the connection map `ζ` from angles
/// to vertices, polygons, an orientation and multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcDocument {
    pub vertices: Vec<String>,
    pub zeta: BTreeMap<String, String>,
    pub polygons: Vec<Vec<String>>,
    pub orientation: Vec<Vec<String>>,
    pub multiplicity: BTreeMap<String, i64>,
}

pub fn parse_bc(text: &str) -> Result<BcDocument, DocumentError> {
    Ok(serde_json::from_str(text)?)
}

impl BcDocument {
    /// Converts to a configuration with trivial `L` and
    /// `d(e) = ν(ζ(e))·|ζ^{-1}(ζ(e))|`.
    pub fn to_configuration(&self) -> Result<Configuration, BcError> {
        let mut vertices = BTreeSet::new();
        for v in &self.vertices {
            if !vertices.insert(v.as_str()) {
                return Err(BcError::DuplicateVertex(v.clone()));
            }
        }
        let angles: Vec<String> = self.zeta.keys().cloned().collect();
        let mut fibres: HashMap<&str, BTreeSet<&str>> = HashMap::new();
        for (a, v) in &self.zeta {
            if !vertices.contains(v.as_str()) {
                return Err(BcError::UnknownVertex(v.clone()));
            }
            fibres.entry(v.as_str()).or_default().insert(a.as_str());
        }
        for v in &self.vertices {
            if !fibres.contains_key(v.as_str()) {
                return Err(BcError::ConnectionNotSurjective(v.clone()));
            }
            if self.multiplicity.get(v).is_none_or(|&m| m <= 0) {
                return Err(BcError::Multiplicity(v.clone()));
            }
        }
        for v in self.multiplicity.keys() {
            if !vertices.contains(v.as_str()) {
                return Err(BcError::UnknownVertex(v.clone()));
            }
        }
        let degrees: BTreeMap<String, i64> = self
            .zeta
            .iter()
            .map(|(a, v)| (a.clone(), self.multiplicity[v] * fibres[v.as_str()].len() as i64))
            .collect();
        let c = Configuration::new(&angles, &self.orientation, &self.polygons, None, &Degrees::PerAngle(degrees))?;

        for e in c.angles() {
            let v = self.zeta[c.name(e).as_str()].as_str();
            let orbit: BTreeSet<&str> = c.orbits()[c.orbit_of(e)].iter().map(|&x| c.name(x).as_str()).collect();
            if orbit != fibres[v] {
                return Err(BcError::OrientationFibre { angle: c.name(e).to_string(), vertex: v.to_string() });
            }
        }
        for p in c.polygons() {
            let names: Vec<String> = p.iter().map(|&e| c.name(e).to_string()).collect();
            if p.len() < 2 {
                return Err(BcError::SmallPolygon(names));
            }
            if p.iter().all(|&e| c.degree(e) <= 1) {
                return Err(BcError::Condition7(names));
            }
        }
        Ok(c)
    }
}

/// Errors reading either kind of document.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("invalid Brauer configuration: {0}")]
    Bc(BcError),
}

/// Whether a document is a Brauer configuration presentation (it has `zeta`).
pub fn is_bc_document(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text).is_ok_and(|v| v.get("zeta").is_some())
}

/// Reads a configuration document, or converts a Brauer configuration presentation.
pub fn load_configuration(text: &str) -> Result<Configuration, LoadError> {
    if !is_bc_document(text) {
        return Ok(parse_configuration(text)?);
    }
    let bc = parse_bc(text)?;
    bc.to_configuration().map_err(|e| match e {
        BcError::Structure(c) => LoadError::Document(DocumentError::Structure(c)),
        other => LoadError::Bc(other),
    })
}
