//! Parametric corpus families and golden reports for corpus items.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{cartan_matrix, congruence_closure, frobenius_check, loewy_diagrams};
use crate::classify::classify;
use crate::config::{Configuration, Degrees};
use crate::gabriel::gabriel_presentation;
use crate::quiver::Quiver;

/// The family with angles `1, 1', 1'', 2, …, m`: `g` cycles
/// `1 → 1' → 2 → ⋯ → m → 1` and fixes `1''`; `P(1) = {1, 1', 1''}`,
/// `L(1) = {1, 1''}`; `d(1'') = 3` and `d = m + 1` elsewhere.
pub fn socle_family(m: usize) -> Configuration {
    assert!(m >= 1);
    let mut cycle = vec!["1".to_string(), "1'".to_string()];
    cycle.extend((2..=m).map(|i| i.to_string()));
    let mut angles = cycle.clone();
    angles.push("1''".into());
    let mut polygons = vec![vec!["1".to_string(), "1'".into(), "1''".into()]];
    polygons.extend((2..=m).map(|i| vec![i.to_string()]));
    let mut blocks = vec![vec!["1".to_string(), "1''".into()], vec!["1'".into()]];
    blocks.extend((2..=m).map(|i| vec![i.to_string()]));
    let degrees: BTreeMap<String, i64> = [("1".to_string(), m as i64 + 1), ("1''".to_string(), 3)].into();
    Configuration::new(&angles, &[cycle], &polygons, Some(&blocks), &Degrees::PerOrbit(degrees))
        .expect("well-formed family")
}

/// Expected invariants of a corpus item, compared field by field against a fresh run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenReport {
    pub f_bc: bool,
    pub type_s: bool,
    pub type_ms: bool,
    pub bc: bool,
    pub fs_bg: bool,
    pub fms_bg: bool,
    pub vertices: usize,
    pub arrows: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<GoldenAlgebra>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenAlgebra {
    pub total_dim: usize,
    pub cartan: Vec<Vec<usize>>,
    /// Per vertex id, the composition factors of each radical layer of `P_x`.
    pub loewy: BTreeMap<String, Vec<Vec<String>>>,
    pub frobenius: bool,
    pub symmetric: bool,
    pub self_injective: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gabriel_arrows: Option<usize>,
}

/// One manifest line: the document file and, optionally, its golden report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<GoldenReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<CorpusEntry>,
}

impl Manifest {
    /// Rejects duplicate ids.
    pub fn parse(text: &str) -> Result<Self, String> {
        let m: Manifest = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let mut seen = BTreeSet::new();
        for e in &m.entries {
            if !seen.insert(e.id.as_str()) {
                return Err(format!("duplicate corpus id `{}`", e.id));
            }
        }
        Ok(m)
    }
}

/// Computes the report for a configuration. The algebra part is present for f-BCs.
pub fn golden_report(c: &Configuration) -> GoldenReport {
    let r = classify(c);
    let q = Quiver::from_config(c);
    let algebra = if r.is_fbc { congruence_closure(c).ok() } else { None }.map(|t| {
        let label = |v: usize| q.vertices[v].to_string();
        let loewy = loewy_diagrams(&t)
            .iter()
            .map(|d| (label(d.vertex), d.layers.iter().map(|l| l.iter().map(|&v| label(v)).collect()).collect()))
            .collect();
        let f = frobenius_check(&t, c);
        GoldenAlgebra {
            total_dim: t.total_dim(),
            cartan: cartan_matrix(&t),
            loewy,
            frobenius: f.frobenius,
            symmetric: f.symmetric,
            self_injective: f.self_injective,
            gabriel_arrows: gabriel_presentation(c).ok().map(|p| p.kept().len()),
        }
    });
    GoldenReport {
        f_bc: r.is_fbc,
        type_s: r.is_type_s,
        type_ms: r.is_type_ms,
        bc: r.is_bc,
        fs_bg: r.is_fs_bg,
        fms_bg: r.is_fms_bg,
        vertices: q.num_vertices(),
        arrows: q.arrows.len(),
        algebra,
    }
}

/// Field paths where `got` differs from `want`.
pub fn report_differences(want: &GoldenReport, got: &GoldenReport) -> Vec<String> {
    let (a, b) = (serde_json::to_value(want).expect("serializable"), serde_json::to_value(got).expect("serializable"));
    let mut out = Vec::new();
    diff_values("", &a, &b, &mut out);
    out
}

fn diff_values(at: &str, a: &serde_json::Value, b: &serde_json::Value, out: &mut Vec<String>) {
    use serde_json::Value;
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            for k in keys {
                let (va, vb) = (x.get(k).unwrap_or(&Value::Null), y.get(k).unwrap_or(&Value::Null));
                diff_values(&format!("{at}.{k}"), va, vb, out);
            }
        }
        _ if a != b => out.push(format!("{at}: expected {a}, got {b}")),
        _ => {}
    }
}
